//! Unital associative algebras given by structure constants, and their modules.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{flip, Matrix};
use crate::report::Report;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Algebra<F> {
    /// `μ: A⊗A → A`
    pub mul: Matrix<F>,
    /// `ι: k → A`
    pub unit: Matrix<F>,
}

impl<F: Field> Algebra<F> {
    pub fn new(mul: Matrix<F>, unit: Matrix<F>) -> Result<Self> {
        let d = unit.rows();
        if unit.cols() != 1 || mul.shape() != (d, d * d) {
            return Err(Error::Shape { context: "algebra (mul vs unit)".into(), left: mul.shape(), right: unit.shape() });
        }
        Ok(Algebra { mul, unit })
    }

    /// The ground field as a one-dimensional algebra.
    pub fn ground() -> Self {
        Algebra { mul: Matrix::identity(1), unit: Matrix::identity(1) }
    }

    /// Builds an algebra from a basis product table `table(i, j) = e_i e_j`.
    pub fn from_table(dim: usize, one: Vec<F>, table: impl Fn(usize, usize) -> Vec<F>) -> Self {
        let mul = Matrix::from_fn_cols(dim, dim * dim, |c| table(c / dim, c % dim));
        Algebra { mul, unit: Matrix::column_vector(one) }
    }

    pub fn dim(&self) -> usize {
        self.unit.rows()
    }

    pub fn one(&self) -> Vec<F> {
        self.unit.col(0)
    }

    pub fn basis_product(&self, i: usize, j: usize) -> Vec<F> {
        self.mul.col(i * self.dim() + j)
    }

    pub fn product(&self, u: &[F], v: &[F]) -> Vec<F> {
        let d = self.dim();
        let mut out = vec![F::zero(); d];
        for (i, x) in u.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in v.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let xy = x.mul(y);
                for (r, o) in out.iter_mut().enumerate() {
                    o.add_mul(&xy, self.mul.get(r, i * d + j));
                }
            }
        }
        out
    }

    /// Matrix of `x ↦ e_i x`.
    pub fn lmul(&self, i: usize) -> Matrix<F> {
        let d = self.dim();
        Matrix::from_fn_cols(d, d, |j| self.mul.col(i * d + j))
    }

    /// Matrix of `x ↦ x e_i`.
    pub fn rmul(&self, i: usize) -> Matrix<F> {
        let d = self.dim();
        Matrix::from_fn_cols(d, d, |j| self.mul.col(j * d + i))
    }

    pub fn is_commutative(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| (0..d).all(|j| self.basis_product(i, j) == self.basis_product(j, i)))
    }

    pub fn check(&self) -> Report {
        let mut r = Report::new("algebra");
        let d = self.dim();
        let id = Matrix::identity(d);
        let lhs = self.mul.mul(&self.mul.kron(&id));
        let rhs = self.mul.mul(&id.kron(&self.mul));
        r.equal_maps("associativity", "μ∘(μ⊗A) = μ∘(A⊗μ)", &lhs, &rhs, &[d, d, d]);
        let left = self.mul.mul(&self.unit.kron(&id));
        r.equal_maps("left unit", "μ∘(ι⊗A) = A", &left, &id, &[d]);
        let right = self.mul.mul(&id.kron(&self.unit));
        r.equal_maps("right unit", "μ∘(A⊗ι) = A", &right, &id, &[d]);
        r
    }

    /// The regular bimodule.
    pub fn regular(self: &Arc<Self>) -> Module<F> {
        let d = self.dim();
        Module {
            dim: d,
            base: self.clone(),
            left: Some((0..d).map(|a| self.lmul(a)).collect()),
            right: Some((0..d).map(|a| self.rmul(a)).collect()),
        }
    }
}

/// Checks that `f: A → B` is a unital algebra map, or an anti-algebra map when `anti`.
pub fn check_algebra_morphism<F: Field>(a: &Algebra<F>, b: &Algebra<F>, f: &Matrix<F>, anti: bool) -> Report {
    let mut r = Report::new(if anti { "anti-algebra map" } else { "algebra map" });
    let da = a.dim();
    if f.shape() != (b.dim(), da) {
        r.record("shape", "f: A → B", false, None).note =
            Some(format!("expected {}x{}, got {}x{}", b.dim(), da, f.rows(), f.cols()));
        return r;
    }
    let lhs = f.mul(&a.mul);
    let mut rhs = b.mul.mul(&f.kron(f));
    if anti {
        rhs = rhs.mul(&flip(da, da));
    }
    let anchor = if anti { "f∘μ = μ∘(f⊗f)∘flip" } else { "f∘μ = μ∘(f⊗f)" };
    r.equal_maps("multiplicative", anchor, &lhs, &rhs, &[da, da]);
    r.equal_maps("unital", "f∘ι = ι", &f.mul(&a.unit), &b.unit, &[1]);
    r
}

/// A finite-dimensional module over `base`, stored as one action matrix per
/// basis element of the algebra. Either side may be absent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Module<F> {
    pub dim: usize,
    pub base: Arc<Algebra<F>>,
    /// `left[a]` is `m ↦ e_a m`.
    pub left: Option<Vec<Matrix<F>>>,
    /// `right[a]` is `m ↦ m e_a`.
    pub right: Option<Vec<Matrix<F>>>,
}

impl<F: Field> Module<F> {
    pub fn zero(base: &Arc<Algebra<F>>) -> Self {
        let d = base.dim();
        let z = vec![Matrix::zeros(0, 0); d];
        Module { dim: 0, base: base.clone(), left: Some(z.clone()), right: Some(z) }
    }

    /// From `M⊗A → M`, column `m·dim A + a`.
    pub fn from_right_action(base: &Arc<Algebra<F>>, act: &Matrix<F>) -> Result<Self> {
        let da = base.dim();
        let dm = act.rows();
        if act.cols() != dm * da {
            return Err(Error::Shape { context: "right action M⊗A→M".into(), left: act.shape(), right: (dm, dm * da) });
        }
        let right = (0..da).map(|a| Matrix::from_fn_cols(dm, dm, |m| act.col(m * da + a))).collect();
        Ok(Module { dim: dm, base: base.clone(), left: None, right: Some(right) })
    }

    /// From `A⊗M → M`, column `a·dim M + m`.
    pub fn from_left_action(base: &Arc<Algebra<F>>, act: &Matrix<F>) -> Result<Self> {
        let da = base.dim();
        let dm = act.rows();
        if act.cols() != dm * da {
            return Err(Error::Shape { context: "left action A⊗M→M".into(), left: act.shape(), right: (dm, dm * da) });
        }
        let left = (0..da).map(|a| Matrix::from_fn_cols(dm, dm, |m| act.col(a * dm + m))).collect();
        Ok(Module { dim: dm, base: base.clone(), left: Some(left), right: None })
    }

    pub fn with_left(mut self, other: &Module<F>) -> Self {
        self.left = other.left.clone();
        self
    }

    pub fn right_action(&self) -> Option<Matrix<F>> {
        let right = self.right.as_ref()?;
        let da = self.base.dim();
        Some(Matrix::from_fn_cols(self.dim, self.dim * da, |c| right[c % da].col(c / da)))
    }

    pub fn left_action(&self) -> Option<Matrix<F>> {
        let left = self.left.as_ref()?;
        let dm = self.dim;
        Some(Matrix::from_fn_cols(dm, dm * self.base.dim(), |c| left[c / dm].col(c % dm)))
    }

    /// `m ↦ m·a` for an algebra element `a`.
    pub fn right_by(&self, a: &[F]) -> Matrix<F> {
        combine(self.right.as_ref().expect("right module"), a, self.dim)
    }

    /// `m ↦ a·m` for an algebra element `a`.
    pub fn left_by(&self, a: &[F]) -> Matrix<F> {
        combine(self.left.as_ref().expect("left module"), a, self.dim)
    }

    pub fn is_right(&self) -> bool {
        self.right.is_some()
    }

    pub fn is_left(&self) -> bool {
        self.left.is_some()
    }

    pub fn check(&self) -> Report {
        let mut r = Report::new("module");
        let a = &*self.base;
        let da = a.dim();
        let id = Matrix::identity(self.dim);
        if let Some(right) = &self.right {
            if right.len() != da || right.iter().any(|m| m.shape() != (self.dim, self.dim)) {
                r.record("right shape", "", false, None);
            } else {
                let mut witness = None;
                'outer: for x in 0..da {
                    for y in 0..da {
                        let lhs = right[y].mul(&right[x]);
                        let rhs = self.right_by(&a.basis_product(x, y));
                        if let Some(m) = lhs.first_differing_col(&rhs) {
                            witness = Some(vec![m, x, y]);
                            break 'outer;
                        }
                    }
                }
                r.record("right associativity", "(m·a)·b = m·(ab)", witness.is_none(), witness);
                let u = self.right_by(&a.one());
                let w = u.first_differing_col(&id).map(|m| vec![m]);
                r.record("right unit", "m·1 = m", w.is_none(), w);
            }
        }
        if let Some(left) = &self.left {
            if left.len() != da || left.iter().any(|m| m.shape() != (self.dim, self.dim)) {
                r.record("left shape", "", false, None);
            } else {
                let mut witness = None;
                'outer2: for x in 0..da {
                    for y in 0..da {
                        let lhs = left[x].mul(&left[y]);
                        let rhs = self.left_by(&a.basis_product(x, y));
                        if let Some(m) = lhs.first_differing_col(&rhs) {
                            witness = Some(vec![x, y, m]);
                            break 'outer2;
                        }
                    }
                }
                r.record("left associativity", "a·(b·m) = (ab)·m", witness.is_none(), witness);
                let u = self.left_by(&a.one());
                let w = u.first_differing_col(&id).map(|m| vec![m]);
                r.record("left unit", "1·m = m", w.is_none(), w);
            }
        }
        if let (Some(left), Some(right)) = (&self.left, &self.right) {
            if left.len() == da && right.len() == da {
                let mut witness = None;
                'outer3: for x in 0..da {
                    for y in 0..da {
                        if let Some(m) = left[x].mul(&right[y]).first_differing_col(&right[y].mul(&left[x])) {
                            witness = Some(vec![x, m, y]);
                            break 'outer3;
                        }
                    }
                }
                r.record("bimodule", "(a·m)·b = a·(m·b)", witness.is_none(), witness);
            }
        }
        r
    }

    /// First basis index (m, a) where `f` fails to commute with the right action.
    pub fn right_linearity_defect(&self, target: &Module<F>, f: &Matrix<F>) -> Option<Vec<usize>> {
        let (src, dst) = (self.right.as_ref()?, target.right.as_ref()?);
        for (a, (s, d)) in src.iter().zip(dst).enumerate() {
            if let Some(m) = f.mul(s).first_differing_col(&d.mul(f)) {
                return Some(vec![m, a]);
            }
        }
        None
    }

    /// First basis index (a, m) where `f` fails to commute with the left action.
    pub fn left_linearity_defect(&self, target: &Module<F>, f: &Matrix<F>) -> Option<Vec<usize>> {
        let (src, dst) = (self.left.as_ref()?, target.left.as_ref()?);
        for (a, (s, d)) in src.iter().zip(dst).enumerate() {
            if let Some(m) = f.mul(s).first_differing_col(&d.mul(f)) {
                return Some(vec![a, m]);
            }
        }
        None
    }

    /// A basis of the right `A`-linear maps `self → target`.
    pub fn right_hom_basis(&self, target: &Module<F>) -> Vec<Matrix<F>> {
        let (ds, dt) = (self.dim, target.dim);
        let (Some(src), Some(dst)) = (&self.right, &target.right) else { return Vec::new() };
        let (is, it) = (Matrix::identity(ds), Matrix::identity(dt));
        let mut eqs = Matrix::zeros(0, dt * ds);
        for (s, d) in src.iter().zip(dst) {
            eqs = eqs.vstack(&d.kron(&is).minus(&it.kron(&s.transpose())));
        }
        let ker = eqs.kernel();
        (0..ker.dim()).map(|k| Matrix::from_vec(dt, ds, ker.inclusion.col(k))).collect()
    }

    pub fn require_right_linear(&self, target: &Module<F>, f: &Matrix<F>, what: &str) -> Result<()> {
        match self.right_linearity_defect(target, f) {
            None => Ok(()),
            Some(w) => Err(Error::NotLinear { property: format!("right A-linear ({what})"), witness: w }),
        }
    }

    pub fn require_left_linear(&self, target: &Module<F>, f: &Matrix<F>, what: &str) -> Result<()> {
        match self.left_linearity_defect(target, f) {
            None => Ok(()),
            Some(w) => Err(Error::NotLinear { property: format!("left A-linear ({what})"), witness: w }),
        }
    }

    pub fn direct_sum(&self, other: &Module<F>) -> Module<F> {
        let sum = |x: &Option<Vec<Matrix<F>>>, y: &Option<Vec<Matrix<F>>>| match (x, y) {
            (Some(x), Some(y)) => Some(x.iter().zip(y).map(|(p, q)| block_diag(p, q)).collect()),
            _ => None,
        };
        Module {
            dim: self.dim + other.dim,
            base: self.base.clone(),
            left: sum(&self.left, &other.left),
            right: sum(&self.right, &other.right),
        }
    }

    /// Submodule spanned by the columns of `inclusion`, with the given retraction.
    /// The span must be stable under the actions; returns the offending column otherwise.
    pub fn restrict(&self, inclusion: &Matrix<F>, retraction: &Matrix<F>) -> Result<Module<F>> {
        let restrict = |acts: &Option<Vec<Matrix<F>>>| -> Result<Option<Vec<Matrix<F>>>> {
            let Some(acts) = acts else { return Ok(None) };
            acts.iter()
                .map(|t| {
                    let y = t.mul(inclusion);
                    let x = retraction.mul(&y);
                    match inclusion.mul(&x).first_differing_col(&y) {
                        None => Ok(x),
                        Some(c) => Err(Error::Containment { what: "submodule action".into(), column: c }),
                    }
                })
                .collect::<Result<Vec<_>>>()
                .map(Some)
        };
        Ok(Module {
            dim: inclusion.cols(),
            base: self.base.clone(),
            left: restrict(&self.left)?,
            right: restrict(&self.right)?,
        })
    }

    /// Transports the actions along a projection `π: M → Q` with section `σ`.
    /// The kernel of `π` must be stable; this is not rechecked here.
    pub fn transport(&self, projection: &Matrix<F>, section: &Matrix<F>) -> Module<F> {
        let push = |acts: &Option<Vec<Matrix<F>>>| {
            acts.as_ref().map(|v| v.iter().map(|t| projection.mul(&t.mul(section))).collect())
        };
        Module { dim: projection.rows(), base: self.base.clone(), left: push(&self.left), right: push(&self.right) }
    }

    pub fn same_base(&self, other: &Module<F>) -> bool {
        Arc::ptr_eq(&self.base, &other.base) || *self.base == *other.base
    }
}

fn combine<F: Field>(mats: &[Matrix<F>], a: &[F], dim: usize) -> Matrix<F> {
    let mut out = Matrix::zeros(dim, dim);
    for (m, x) in mats.iter().zip(a) {
        if !x.is_zero() {
            out = out.plus(&m.scale(x));
        }
    }
    out
}

pub fn block_diag<F: Field>(p: &Matrix<F>, q: &Matrix<F>) -> Matrix<F> {
    let mut out = Matrix::zeros(p.rows() + q.rows(), p.cols() + q.cols());
    for r in 0..p.rows() {
        for c in 0..p.cols() {
            out.set(r, c, p.get(r, c).clone());
        }
    }
    for r in 0..q.rows() {
        for c in 0..q.cols() {
            out.set(p.rows() + r, p.cols() + c, q.get(r, c).clone());
        }
    }
    out
}

/// Checks `χ: A → k` is multiplicative and unital.
pub fn check_algebra_character<F: Field>(a: &Algebra<F>, chi: &Matrix<F>) -> Report {
    let mut r = check_algebra_morphism(a, &Algebra::ground(), chi, false);
    r.object = "algebra character".into();
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;
    use crate::matrix::unit_vec;

    type Q = Rational;

    fn dual_numbers() -> Algebra<Q> {
        // basis 1, x with x^2 = 0
        Algebra::from_table(2, vec![Q::one(), Q::zero()], |i, j| {
            if i + j >= 2 {
                vec![Q::zero(), Q::zero()]
            } else {
                unit_vec(2, i + j)
            }
        })
    }

    #[test]
    fn dual_numbers_pass() {
        assert!(dual_numbers().check().passed());
        assert!(Algebra::<Q>::ground().check().passed());
    }

    #[test]
    fn squaring_x_to_one_gives_another_valid_algebra() {
        // x·x = 1 is k[x]/(x²-1), still associative and unital
        let mut a = dual_numbers();
        a.mul.set(0, 3, Q::one());
        assert!(a.check().passed());
    }

    #[test]
    fn corrupted_unit_fails_with_witness() {
        let mut a = dual_numbers();
        a.mul.set(1, 1, Q::zero());
        let r = a.check();
        assert!(!r.passed());
        let w = r.failures().next().unwrap().witness.clone().unwrap();
        assert!(w.iter().all(|&i| i <= 1));
        assert!(w.contains(&1));
    }

    #[test]
    fn regular_bimodule_passes() {
        let a = Arc::new(dual_numbers());
        let m = a.regular();
        assert!(m.check().passed());
        let act = m.right_action().unwrap();
        assert_eq!(act, a.mul);
        let back = Module::from_right_action(&a, &act).unwrap();
        assert_eq!(back.right, m.right);
        assert_eq!(m.left_action().unwrap(), a.mul);
    }

    #[test]
    fn zero_module_passes_vacuously() {
        let a = Arc::new(dual_numbers());
        assert!(Module::zero(&a).check().passed());
    }

    #[test]
    fn identity_is_algebra_map() {
        let a = dual_numbers();
        assert!(check_algebra_morphism(&a, &a, &Matrix::identity(2), false).passed());
        assert!(check_algebra_morphism(&a, &a, &Matrix::identity(2), true).passed());
    }
}
