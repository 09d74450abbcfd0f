//! Tensor products over an algebra, `M ⊗_A N`, as explicit quotient spaces.
//!
//! The quotient is computed from a presentation of `N`: pick left generators
//! `p_1, …, p_g` of `N`, so that `A^g → N` is onto with kernel `K`. Then
//! `M ⊗_A N ≅ M^g / {(m·k_1, …, m·k_g) : k ∈ K}` and `m ⊗ n` is sent to
//! `(m·s(n)_1, …, m·s(n)_g)` for any section `s` of `A^g → N`. Every basis
//! vector of the quotient is the class of a pure tensor `e_m ⊗ p_i`.

use std::sync::Arc;

use crate::algebra::{Algebra, Module};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{axpy, cokernel_of_relations, flat_index, solve_many, unit_vec, Matrix, Quotient, Rref};

#[derive(Debug, Clone)]
pub struct TensorOverA<F> {
    pub left_dim: usize,
    pub right_dim: usize,
    /// Basis indices of the chosen left generators of `N`.
    pub generators: Vec<usize>,
    /// `twist[n][i]` is `m ↦ m·s(e_n)_i`.
    twist: Vec<Vec<Matrix<F>>>,
    quotient: Quotient<F>,
    /// No relations: the quotient is all of `M^g`.
    trivial: bool,
    /// Each quotient basis vector is the class of `e_m ⊗ e_n` for `reps[j] = (m, n)`.
    pub reps: Vec<(usize, usize)>,
    /// `M ⊗_A N` with the inherited left action of `M` and right action of `N`.
    pub module: Module<F>,
}

impl<F: Field> TensorOverA<F> {
    pub fn new(m: &Module<F>, n: &Module<F>) -> Result<Self> {
        if !m.same_base(n) {
            return Err(Error::invalid("tensor over A: modules over different algebras"));
        }
        let (Some(_), Some(left_n)) = (&m.right, &n.left) else {
            return Err(Error::invalid("tensor over A needs a right module and a left module"));
        };
        let a: &Arc<Algebra<F>> = &m.base;
        let da = a.dim();
        let (dm, dn) = (m.dim, n.dim);

        let generators = left_generators(left_n, dn);
        let g = generators.len();
        // φ: A^g → N, column i·da + a ↦ e_a · p_i
        let phi = Matrix::from_fn_cols(dn, g * da, |c| left_n[c % da].col(generators[c / da]));
        let sec = solve_many(&phi, &Matrix::identity(dn)).expect("generators span N");
        let twist: Vec<Vec<Matrix<F>>> = (0..dn)
            .map(|nb| (0..g).map(|i| m.right_by(&slot(&sec.col(nb), i, da))).collect())
            .collect();

        let kernel = phi.kernel();
        let rel_count = kernel.dim() * dm;
        let mut relations = Matrix::zeros(rel_count, g * dm);
        for k in 0..kernel.dim() {
            let kv = kernel.inclusion.col(k);
            let acts: Vec<Matrix<F>> = (0..g).map(|i| m.right_by(&slot(&kv, i, da))).collect();
            for mb in 0..dm {
                let row = k * dm + mb;
                for (i, act) in acts.iter().enumerate() {
                    for r in 0..dm {
                        let v = act.get(r, mb);
                        if !v.is_zero() {
                            relations.set(row, i * dm + r, v.clone());
                        }
                    }
                }
            }
        }
        let quotient = cokernel_of_relations(&relations, g * dm);
        let reps = (0..quotient.dim())
            .map(|j| {
                let c = (0..g * dm).find(|&r| !quotient.section.get(r, j).is_zero()).expect("unit section");
                (c % dm, generators[c / dm])
            })
            .collect();

        let mut t = TensorOverA {
            left_dim: dm,
            right_dim: dn,
            generators,
            twist,
            trivial: quotient.dim() == g * dm,
            quotient,
            reps,
            module: Module { dim: 0, base: a.clone(), left: None, right: None },
        };
        let dim = t.dim();
        let left = m.left.as_ref().map(|ls| {
            ls.iter()
                .map(|l| Matrix::from_fn_cols(dim, dim, |j| {
                    let (mb, nb) = t.reps[j];
                    t.project_pair(&l.col(mb), &unit_vec(dn, nb))
                }))
                .collect()
        });
        let right = n.right.as_ref().map(|rs| {
            rs.iter()
                .map(|r| Matrix::from_fn_cols(dim, dim, |j| {
                    let (mb, nb) = t.reps[j];
                    t.project_pair(&unit_vec(dm, mb), &r.col(nb))
                }))
                .collect()
        });
        t.module = Module { dim, base: a.clone(), left, right };
        Ok(t)
    }

    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    /// Class of `x ⊗ y` in the quotient.
    pub fn project_pair(&self, x: &[F], y: &[F]) -> Vec<F> {
        let dm = self.left_dim;
        let g = self.generators.len();
        let mut stacked = vec![F::zero(); g * dm];
        for (nb, c) in y.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for i in 0..g {
                let v = self.twist[nb][i].apply(x);
                axpy(&mut stacked[i * dm..(i + 1) * dm], c, &v);
            }
        }
        if self.trivial {
            stacked
        } else {
            self.quotient.projection.apply(&stacked)
        }
    }

    /// Class of a vector of `M ⊗ N`.
    pub fn project(&self, v: &[F]) -> Vec<F> {
        let (dm, dn) = (self.left_dim, self.right_dim);
        let mut out = vec![F::zero(); self.dim()];
        for mb in 0..dm {
            let y = &v[mb * dn..(mb + 1) * dn];
            if y.iter().all(F::is_zero) {
                continue;
            }
            let p = self.project_pair(&unit_vec(dm, mb), y);
            axpy(&mut out, &F::one(), &p);
        }
        out
    }

    /// `π_A: M ⊗ N → M ⊗_A N`
    pub fn projection(&self) -> Matrix<F> {
        let (dm, dn) = (self.left_dim, self.right_dim);
        Matrix::from_fn_cols(self.dim(), dm * dn, |c| {
            self.project_pair(&unit_vec(dm, c / dn), &unit_vec(dn, c % dn))
        })
    }

    /// `σ_A: M ⊗_A N → M ⊗ N`, sending each basis class to its pure representative.
    pub fn section(&self) -> Matrix<F> {
        let dn = self.right_dim;
        let mut s = Matrix::zeros(self.left_dim * dn, self.dim());
        for (j, &(m, n)) in self.reps.iter().enumerate() {
            s.set(m * dn + n, j, F::one());
        }
        s
    }
}

fn slot<F: Field>(v: &[F], i: usize, da: usize) -> Vec<F> {
    v[i * da..(i + 1) * da].to_vec()
}

/// Greedy choice of left generators among basis vectors.
fn left_generators<F: Field>(left: &[Matrix<F>], dn: usize) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut span: Vec<Vec<F>> = Vec::new();
    let mut rank = 0;
    for nb in 0..dn {
        let e = unit_vec(dn, nb);
        let mut probe = span.clone();
        probe.push(e);
        if rank_of(&probe, dn) == rank {
            continue;
        }
        gens.push(nb);
        for l in left {
            span.push(l.col(nb));
        }
        rank = rank_of(&span, dn);
        if rank == dn {
            break;
        }
    }
    gens
}

fn rank_of<F: Field>(vectors: &[Vec<F>], n: usize) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let m = Matrix::from_rows(vectors.to_vec());
    debug_assert_eq!(m.cols(), n);
    Rref::of(&m).pivots.len()
}

/// `M_1 ⊗_A M_2 ⊗_A … ⊗_A M_k`, nested to the left.
#[derive(Debug, Clone)]
pub struct TensorChain<F> {
    pub factors: Vec<Module<F>>,
    pub levels: Vec<TensorOverA<F>>,
}

impl<F: Field> TensorChain<F> {
    pub fn new(factors: &[&Module<F>]) -> Result<Self> {
        assert!(!factors.is_empty(), "empty tensor chain");
        let mut levels: Vec<TensorOverA<F>> = Vec::new();
        for k in 1..factors.len() {
            let left = levels.last().map_or(factors[0], |l| &l.module);
            levels.push(TensorOverA::new(left, factors[k])?);
        }
        Ok(TensorChain { factors: factors.iter().map(|m| (*m).clone()).collect(), levels })
    }

    /// The `n`-fold power `M ⊗_A … ⊗_A M`.
    pub fn power(m: &Module<F>, n: usize) -> Result<Self> {
        Self::new(&vec![m; n])
    }

    pub fn module(&self) -> &Module<F> {
        self.levels.last().map_or(&self.factors[0], |l| &l.module)
    }

    pub fn dim(&self) -> usize {
        self.module().dim
    }

    pub fn factor_dims(&self) -> Vec<usize> {
        self.factors.iter().map(|m| m.dim).collect()
    }

    /// Class of `v_1 ⊗ … ⊗ v_k`.
    pub fn project(&self, vectors: &[&[F]]) -> Vec<F> {
        assert_eq!(vectors.len(), self.factors.len(), "tensor chain arity");
        let mut x = vectors[0].to_vec();
        for (level, v) in self.levels.iter().zip(&vectors[1..]) {
            x = level.project_pair(&x, v);
        }
        x
    }

    /// Class of a pure tensor of basis vectors.
    pub fn project_basis(&self, idx: &[usize]) -> Vec<F> {
        let units: Vec<Vec<F>> = idx.iter().zip(&self.factors).map(|(&i, m)| unit_vec(m.dim, i)).collect();
        let refs: Vec<&[F]> = units.iter().map(Vec::as_slice).collect();
        self.project(&refs)
    }

    /// Basis indices `(i_1, …, i_k)` with basis vector `j` the class of `e_{i_1} ⊗ … ⊗ e_{i_k}`.
    pub fn rep(&self, j: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.factors.len());
        let mut cur = j;
        for level in self.levels.iter().rev() {
            let (m, n) = level.reps[cur];
            out.push(n);
            cur = m;
        }
        out.push(cur);
        out.reverse();
        out
    }

    /// Pure-tensor expansion of a vector: `(basis multi-index, coefficient)` pairs.
    pub fn terms(&self, v: &[F]) -> Vec<(Vec<usize>, F)> {
        v.iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(j, x)| (self.rep(j), x.clone()))
            .collect()
    }

    /// Projection from the ambient tensor product of the factors.
    pub fn projection(&self) -> Matrix<F> {
        let dims = self.factor_dims();
        let total: usize = dims.iter().product();
        Matrix::from_fn_cols(self.dim(), total, |c| self.project_basis(&crate::matrix::multi_index(c, &dims)))
    }

    /// Section into the ambient tensor product, via the pure representatives.
    pub fn section(&self) -> Matrix<F> {
        let dims = self.factor_dims();
        let total: usize = dims.iter().product();
        let mut s = Matrix::zeros(total, self.dim());
        for j in 0..self.dim() {
            s.set(flat_index(&self.rep(j), &dims), j, F::one());
        }
        s
    }

    /// `f_1 ⊗_A … ⊗_A f_k` into `target`. The outer maps must be one-sided
    /// linear and the inner ones bimodule maps; this is verified.
    pub fn induced(&self, maps: &[&Matrix<F>], target: &TensorChain<F>) -> Result<Matrix<F>> {
        let k = self.factors.len();
        assert_eq!(maps.len(), k, "induced map arity");
        for (i, f) in maps.iter().enumerate() {
            let (src, dst) = (&self.factors[i], &target.factors[i]);
            if f.shape() != (dst.dim, src.dim) {
                return Err(Error::Shape { context: format!("factor {i} of induced map"), left: f.shape(), right: (dst.dim, src.dim) });
            }
            if i + 1 < k {
                src.require_right_linear(dst, f, &format!("factor {i}"))?;
            }
            if i > 0 {
                src.require_left_linear(dst, f, &format!("factor {i}"))?;
            }
        }
        Ok(self.induced_unchecked(maps, target))
    }

    pub fn induced_unchecked(&self, maps: &[&Matrix<F>], target: &TensorChain<F>) -> Matrix<F> {
        Matrix::from_fn_cols(target.dim(), self.dim(), |j| {
            let idx = self.rep(j);
            let cols: Vec<Vec<F>> = idx.iter().zip(maps).map(|(&i, f)| f.col(i)).collect();
            let refs: Vec<&[F]> = cols.iter().map(Vec::as_slice).collect();
            target.project(&refs)
        })
    }
}

/// `f ⊗_A g: M ⊗_A N → M' ⊗_A N'` for right-linear `f` and left-linear `g`.
pub fn induce_map_over_a<F: Field>(
    src: &TensorChain<F>,
    f: &Matrix<F>,
    g: &Matrix<F>,
    target: &TensorChain<F>,
) -> Result<Matrix<F>> {
    src.induced(&[f, g], target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;
    use crate::matrix::cokernel;

    type Q = Rational;

    fn dual() -> Arc<Algebra<Q>> {
        Arc::new(Algebra::from_table(2, vec![Q::one(), Q::zero()], |i, j| {
            if i + j >= 2 { vec![Q::zero(), Q::zero()] } else { unit_vec(2, i + j) }
        }))
    }

    /// `A⊗A` with `a(x⊗y)b = ax⊗yb`.
    fn outer(a: &Arc<Algebra<Q>>) -> Module<Q> {
        let d = a.dim();
        let id = Matrix::identity(d);
        Module {
            dim: d * d,
            base: a.clone(),
            left: Some((0..d).map(|i| a.lmul(i).kron(&id)).collect()),
            right: Some((0..d).map(|i| id.kron(&a.rmul(i))).collect()),
        }
    }

    /// Cokernel of `act_M ⊗ N − M ⊗ act_N` on `M ⊗ A ⊗ N`.
    fn naive(m: &Module<Q>, n: &Module<Q>) -> Quotient<Q> {
        let da = m.base.dim();
        let rel = m.right_action().unwrap().kron(&Matrix::identity(n.dim))
            .minus(&Matrix::identity(m.dim).kron(&n.left_action().unwrap()));
        let _ = da;
        cokernel(&rel)
    }

    fn same_kernel(p: &Matrix<Q>, q: &Matrix<Q>) -> bool {
        p.rows() == q.rows() && p.vstack(q).rank() == p.rank() && p.rank() == q.rank()
    }

    #[test]
    fn regular_over_itself_is_a() {
        let a = dual();
        let r = a.regular();
        let t = TensorOverA::new(&r, &r).unwrap();
        assert_eq!(t.dim(), 2);
        assert!(same_kernel(&t.projection(), &naive(&r, &r).projection));
    }

    #[test]
    fn sweedler_square_has_dim_eight() {
        let a = dual();
        let c = outer(&a);
        let t = TensorOverA::new(&c, &c).unwrap();
        assert_eq!(t.dim(), 8);
        assert!(same_kernel(&t.projection(), &naive(&c, &c).projection));
        assert!(t.module.check().passed());
    }

    #[test]
    fn projection_kills_relations_and_section_splits() {
        let a = dual();
        let c = outer(&a);
        let r = a.regular();
        for (m, n) in [(&c, &r), (&r, &c), (&c, &c)] {
            let t = TensorOverA::new(m, n).unwrap();
            let p = t.projection();
            let rel = m.right_action().unwrap().kron(&Matrix::identity(n.dim))
                .minus(&Matrix::identity(m.dim).kron(&n.left_action().unwrap()));
            assert!(p.mul(&rel).is_zero());
            assert_eq!(p.mul(&t.section()), Matrix::identity(t.dim()));
        }
    }

    #[test]
    fn chain_is_associative_in_dimension() {
        let a = dual();
        let c = outer(&a);
        let left = TensorChain::new(&[&c, &c, &c]).unwrap();
        let inner = TensorChain::new(&[&c, &c]).unwrap();
        let right = TensorChain::new(&[&c, inner.module()]).unwrap();
        assert_eq!(left.dim(), right.dim());
        assert_eq!(left.dim(), 16);
        let p = left.projection();
        assert_eq!(p.mul(&left.section()), Matrix::identity(16));
    }

    #[test]
    fn induced_identity_is_identity() {
        let a = dual();
        let c = outer(&a);
        let t = TensorChain::new(&[&c, &c]).unwrap();
        let id = Matrix::identity(4);
        assert_eq!(t.induced(&[&id, &id], &t).unwrap(), Matrix::identity(t.dim()));
    }

    #[test]
    fn induced_rejects_non_linear_map() {
        let a = dual();
        let c = outer(&a);
        let t = TensorChain::new(&[&c, &c]).unwrap();
        let mut f = Matrix::identity(4);
        f.set(0, 3, Q::one());
        assert!(matches!(t.induced(&[&f, &Matrix::identity(4)], &t), Err(Error::NotLinear { .. })));
    }

    #[test]
    fn right_multiplication_factor_is_well_defined() {
        // f = right multiplication by x on the regular module is left-linear
        let a = dual();
        let r = a.regular();
        let t = TensorChain::new(&[&r, &r]).unwrap();
        let f = a.rmul(1);
        let g = t.induced(&[&Matrix::identity(2), &f], &t).unwrap();
        // acting after projecting
        let act = t.module().right.as_ref().unwrap()[1].clone();
        assert_eq!(g, act);
    }
}
