//! Cotensor products `M □_C N = ker(M⊗^Nρ − ρ^M⊗N)`.
//!
//! When one side is cofree (`N = C⊗V` with `^Nρ = Δ⊗V`, or `M = V⊗C` with
//! `ρ^M = V⊗Δ`) the kernel is read off directly: `M □_C (C⊗V) ≅ M⊗V` through
//! `ρ^M⊗V`, with retraction `M⊗ε⊗V`. Everything else goes through row reduction.

use crate::coalgebra::Comodule;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{kron_apply, kron_compose, unit_vec, Matrix, Subspace};

#[derive(Debug, Clone)]
pub struct Cotensor<F> {
    pub left_dim: usize,
    pub right_dim: usize,
    /// The subspace of `M⊗N`.
    pub sub: Subspace<F>,
    /// `M □_C N` with the left coaction of `M` and the right coaction of `N`, when present.
    pub comodule: Comodule<F>,
}

impl<F: Field> Cotensor<F> {
    pub fn new(m: &Comodule<F>, n: &Comodule<F>) -> Result<Self> {
        Self::validate(m, n)?;
        let sub = cofree_sub(m, n).unwrap_or_else(|| defining_map(m, n).kernel());
        Self::assemble(m, n, sub)
    }

    /// Always computes the kernel by row reduction.
    pub fn generic(m: &Comodule<F>, n: &Comodule<F>) -> Result<Self> {
        Self::validate(m, n)?;
        Self::assemble(m, n, defining_map(m, n).kernel())
    }

    fn validate(m: &Comodule<F>, n: &Comodule<F>) -> Result<()> {
        if !m.same_coalgebra(n) {
            return Err(Error::invalid("cotensor: comodules over different coalgebras"));
        }
        if m.right.is_none() || n.left.is_none() {
            return Err(Error::invalid("cotensor needs a right comodule and a left comodule"));
        }
        Ok(())
    }

    fn assemble(m: &Comodule<F>, n: &Comodule<F>, sub: Subspace<F>) -> Result<Self> {
        let dc = m.coalgebra.dim();
        let ic = Matrix::identity(dc);
        let left = match &m.left {
            Some(rho) => {
                let y = kron_compose(&[rho, &Matrix::identity(n.dim)], &sub.inclusion);
                let x = kron_compose(&[&ic, &sub.retraction], &y);
                if let Some(c) = kron_compose(&[&ic, &sub.inclusion], &x).first_differing_col(&y) {
                    return Err(Error::Containment { what: "induced left coaction on cotensor".into(), column: c });
                }
                Some(x)
            }
            None => None,
        };
        let right = match &n.right {
            Some(rho) => {
                let y = kron_compose(&[&Matrix::identity(m.dim), rho], &sub.inclusion);
                let x = kron_compose(&[&sub.retraction, &ic], &y);
                if let Some(c) = kron_compose(&[&sub.inclusion, &ic], &x).first_differing_col(&y) {
                    return Err(Error::Containment { what: "induced right coaction on cotensor".into(), column: c });
                }
                Some(x)
            }
            None => None,
        };
        let comodule = Comodule { dim: sub.dim(), coalgebra: m.coalgebra.clone(), right, left };
        Ok(Cotensor { left_dim: m.dim, right_dim: n.dim, sub, comodule })
    }

    pub fn dim(&self) -> usize {
        self.sub.dim()
    }
}

/// `M⊗^Nρ − ρ^M⊗N: M⊗N → M⊗C⊗N`
pub fn defining_map<F: Field>(m: &Comodule<F>, n: &Comodule<F>) -> Matrix<F> {
    let a = Matrix::identity(m.dim).kron(n.left_coaction());
    let b = m.right_coaction().kron(&Matrix::identity(n.dim));
    a.minus(&b)
}

fn counital_coassociative_right<F: Field>(m: &Comodule<F>) -> bool {
    let c = &*m.coalgebra;
    let rho = m.right_coaction();
    let im = Matrix::identity(m.dim);
    let ic = Matrix::identity(c.dim());
    kron_compose(&[rho, &ic], rho) == kron_compose(&[&im, &c.comul], rho)
        && kron_compose(&[&im, &c.counit], rho) == im
}

fn counital_coassociative_left<F: Field>(n: &Comodule<F>) -> bool {
    let c = &*n.coalgebra;
    let rho = n.left_coaction();
    let im = Matrix::identity(n.dim);
    let ic = Matrix::identity(c.dim());
    kron_compose(&[&ic, rho], rho) == kron_compose(&[&c.comul, &im], rho)
        && kron_compose(&[&c.counit, &im], rho) == im
}

fn cofree_sub<F: Field>(m: &Comodule<F>, n: &Comodule<F>) -> Option<Subspace<F>> {
    let c = &*m.coalgebra;
    let dc = c.dim();
    if dc == 0 {
        return None;
    }
    if n.dim.is_multiple_of(dc) {
        let v = n.dim / dc;
        let iv = Matrix::identity(v);
        if *n.left_coaction() == c.comul.kron(&iv) && counital_coassociative_right(m) {
            return Some(Subspace {
                inclusion: m.right_coaction().kron(&iv),
                retraction: Matrix::kron_all(&[&Matrix::identity(m.dim), &c.counit, &iv]),
            });
        }
    }
    if let Some(rho) = &m.right {
        if m.dim.is_multiple_of(dc) {
            let v = m.dim / dc;
            let iv = Matrix::identity(v);
            if *rho == iv.kron(&c.comul) && counital_coassociative_left(n) {
                return Some(Subspace {
                    inclusion: iv.kron(n.left_coaction()),
                    retraction: Matrix::kron_all(&[&iv, &c.counit, &Matrix::identity(n.dim)]),
                });
            }
        }
    }
    None
}

/// `M_1 □_C M_2 □_C … □_C M_k`, nested to the left.
#[derive(Debug, Clone)]
pub struct CotensorChain<F> {
    pub factors: Vec<Comodule<F>>,
    pub levels: Vec<Cotensor<F>>,
}

impl<F: Field> CotensorChain<F> {
    pub fn new(factors: &[&Comodule<F>]) -> Result<Self> {
        assert!(!factors.is_empty(), "empty cotensor chain");
        let mut levels: Vec<Cotensor<F>> = Vec::new();
        for k in 1..factors.len() {
            let left = levels.last().map_or(factors[0], |l| &l.comodule);
            levels.push(Cotensor::new(left, factors[k])?);
        }
        Ok(CotensorChain { factors: factors.iter().map(|m| (*m).clone()).collect(), levels })
    }

    pub fn power(m: &Comodule<F>, n: usize) -> Result<Self> {
        Self::new(&vec![m; n])
    }

    pub fn comodule(&self) -> &Comodule<F> {
        self.levels.last().map_or(&self.factors[0], |l| &l.comodule)
    }

    pub fn dim(&self) -> usize {
        self.comodule().dim
    }

    pub fn factor_dims(&self) -> Vec<usize> {
        self.factors.iter().map(|m| m.dim).collect()
    }

    pub fn ambient_dim(&self) -> usize {
        self.factor_dims().iter().product()
    }

    /// Image of a vector of the cotensor in the ambient tensor product.
    pub fn include(&self, x: &[F]) -> Vec<F> {
        let dims = self.factor_dims();
        let mut cur = x.to_vec();
        for (j, level) in self.levels.iter().enumerate().rev() {
            let rest: usize = dims[j + 2..].iter().product();
            cur = kron_apply(&[&level.sub.inclusion, &Matrix::identity(rest)], &cur);
        }
        cur
    }

    /// Retraction from the ambient tensor product.
    pub fn retract(&self, v: &[F]) -> Vec<F> {
        let dims = self.factor_dims();
        let mut cur = v.to_vec();
        for (k, level) in self.levels.iter().enumerate() {
            let rest: usize = dims[k + 2..].iter().product();
            cur = kron_apply(&[&level.sub.retraction, &Matrix::identity(rest)], &cur);
        }
        cur
    }

    pub fn inclusion(&self) -> Matrix<F> {
        let n = self.dim();
        Matrix::from_fn_cols(self.ambient_dim(), n, |j| self.include(&unit_vec(n, j)))
    }

    pub fn retraction(&self) -> Matrix<F> {
        let a = self.ambient_dim();
        Matrix::from_fn_cols(self.dim(), a, |j| self.retract(&unit_vec(a, j)))
    }

    /// Coordinates of ambient columns of `y`, verifying each lies in the cotensor.
    pub fn corestrict(&self, y: &Matrix<F>, what: &str) -> Result<Matrix<F>> {
        let mut x = Matrix::zeros(self.dim(), y.cols());
        for j in 0..y.cols() {
            let col = y.col(j);
            let c = self.retract(&col);
            if self.include(&c) != col {
                return Err(Error::Containment { what: what.into(), column: j });
            }
            x.set_col(j, &c);
        }
        Ok(x)
    }

    /// `f_1 □ … □ f_k` into `target`, with the image containment verified.
    pub fn induced(&self, maps: &[&Matrix<F>], target: &CotensorChain<F>) -> Result<Matrix<F>> {
        assert_eq!(maps.len(), self.factors.len(), "induced map arity");
        let n = self.dim();
        let y = Matrix::from_fn_cols(target.ambient_dim(), n, |j| kron_apply(maps, &self.include(&unit_vec(n, j))));
        target.corestrict(&y, "induced cotensor map")
    }

    /// A map out of the cotensor given on the ambient tensor product.
    pub fn restrict_ambient(&self, f: &Matrix<F>) -> Matrix<F> {
        let n = self.dim();
        Matrix::from_fn_cols(f.rows(), n, |j| f.apply(&self.include(&unit_vec(n, j))))
    }
}
