//! Coalgebras, comodules and cointegrals.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{kron_compose, unit_vec, Matrix, Subspace};
use crate::report::Report;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coalgebra<F> {
    /// `Δ: C → C⊗C`
    pub comul: Matrix<F>,
    /// `ε: C → k`
    pub counit: Matrix<F>,
}

impl<F: Field> Coalgebra<F> {
    pub fn new(comul: Matrix<F>, counit: Matrix<F>) -> Result<Self> {
        let d = counit.cols();
        if counit.rows() != 1 || comul.shape() != (d * d, d) {
            return Err(Error::Shape { context: "coalgebra (comul vs counit)".into(), left: comul.shape(), right: counit.shape() });
        }
        Ok(Coalgebra { comul, counit })
    }

    /// `span{e_1, …, e_n}` with every `e_i` group-like.
    pub fn grouplike(n: usize) -> Self {
        let comul = Matrix::from_fn_cols(n * n, n, |i| unit_vec(n * n, i * n + i));
        let counit = Matrix::from_fn_cols(1, n, |_| vec![F::one()]);
        Coalgebra { comul, counit }
    }

    pub fn dim(&self) -> usize {
        self.counit.cols()
    }

    pub fn is_cocommutative(&self) -> bool {
        let d = self.dim();
        crate::matrix::flip::<F>(d, d).mul(&self.comul) == self.comul
    }

    pub fn check(&self) -> Report {
        let mut r = Report::new("coalgebra");
        let d = self.dim();
        let id = Matrix::identity(d);
        let lhs = kron_compose(&[&self.comul, &id], &self.comul);
        let rhs = kron_compose(&[&id, &self.comul], &self.comul);
        r.equal_maps("coassociativity", "(Δ⊗C)∘Δ = (C⊗Δ)∘Δ", &lhs, &rhs, &[d]);
        let left = kron_compose(&[&self.counit, &id], &self.comul);
        r.equal_maps("left counit", "(ε⊗C)∘Δ = C", &left, &id, &[d]);
        let right = kron_compose(&[&id, &self.counit], &self.comul);
        r.equal_maps("right counit", "(C⊗ε)∘Δ = C", &right, &id, &[d]);
        r
    }

    /// `C⁺ = ker ε`.
    pub fn counit_kernel(&self) -> Result<Subspace<F>> {
        if self.counit.is_zero() {
            return Err(Error::invalid("counit is zero"));
        }
        Ok(self.counit.kernel())
    }

    /// `C` as a bicomodule over itself.
    pub fn regular(self: &Arc<Self>) -> Comodule<F> {
        Comodule { dim: self.dim(), coalgebra: self.clone(), right: Some(self.comul.clone()), left: Some(self.comul.clone()) }
    }

    /// `C ⊗ V` with left coaction `Δ ⊗ V` and no right coaction.
    pub fn cofree_left(self: &Arc<Self>, v: usize) -> Comodule<F> {
        Comodule {
            dim: self.dim() * v,
            coalgebra: self.clone(),
            right: None,
            left: Some(self.comul.kron(&Matrix::identity(v))),
        }
    }

    /// Checks `(δ⊗C)∘(C⊗Δ) = (C⊗δ)∘(Δ⊗C)` and `δ∘Δ = ε`.
    pub fn check_cointegral(&self, delta: &Matrix<F>) -> Report {
        let mut r = Report::new("cointegral");
        let d = self.dim();
        if delta.shape() != (1, d * d) {
            r.record("shape", "δ: C⊗C → k", false, None);
            return r;
        }
        let id = Matrix::identity(d);
        let lhs = delta.kron(&id).mul(&id.kron(&self.comul));
        let rhs = id.kron(delta).mul(&self.comul.kron(&id));
        r.equal_maps("colinearity", "(δ⊗C)∘(C⊗Δ) = (C⊗δ)∘(Δ⊗C)", &lhs, &rhs, &[d, d]);
        r.equal_maps("normalization", "δ∘Δ = ε", &delta.mul(&self.comul), &self.counit, &[d]);
        r
    }
}

/// `δ(e_i⊗e_j) = [i = j]` on the group-like coalgebra of dimension `n`.
pub fn grouplike_cointegral<F: Field>(n: usize) -> Matrix<F> {
    Matrix::from_fn_cols(1, n * n, |c| vec![if c / n == c % n { F::one() } else { F::zero() }])
}

/// A comodule over `coalgebra`; either coaction may be absent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Comodule<F> {
    pub dim: usize,
    pub coalgebra: Arc<Coalgebra<F>>,
    /// `ρ^M: M → M⊗C`
    pub right: Option<Matrix<F>>,
    /// `^Mρ: M → C⊗M`
    pub left: Option<Matrix<F>>,
}

impl<F: Field> Comodule<F> {
    pub fn right(coalgebra: &Arc<Coalgebra<F>>, rho: Matrix<F>) -> Self {
        let dim = rho.cols();
        Comodule { dim, coalgebra: coalgebra.clone(), right: Some(rho), left: None }
    }

    pub fn left(coalgebra: &Arc<Coalgebra<F>>, rho: Matrix<F>) -> Self {
        let dim = rho.cols();
        Comodule { dim, coalgebra: coalgebra.clone(), right: None, left: Some(rho) }
    }

    pub fn zero(coalgebra: &Arc<Coalgebra<F>>) -> Self {
        Comodule { dim: 0, coalgebra: coalgebra.clone(), right: Some(Matrix::zeros(0, 0)), left: Some(Matrix::zeros(0, 0)) }
    }

    pub fn right_coaction(&self) -> &Matrix<F> {
        self.right.as_ref().expect("right comodule")
    }

    pub fn left_coaction(&self) -> &Matrix<F> {
        self.left.as_ref().expect("left comodule")
    }

    pub fn same_coalgebra(&self, other: &Comodule<F>) -> bool {
        Arc::ptr_eq(&self.coalgebra, &other.coalgebra) || *self.coalgebra == *other.coalgebra
    }

    pub fn check(&self) -> Report {
        let mut r = Report::new("comodule");
        let c = &*self.coalgebra;
        let (dm, dc) = (self.dim, c.dim());
        let im = Matrix::identity(dm);
        let ic = Matrix::identity(dc);
        if let Some(rho) = &self.right {
            if rho.shape() != (dm * dc, dm) {
                r.record("right shape", "ρ: M → M⊗C", false, None);
            } else {
                let lhs = kron_compose(&[rho, &ic], rho);
                let rhs = kron_compose(&[&im, &c.comul], rho);
                r.equal_maps("right coassociativity", "(ρ⊗C)∘ρ = (M⊗Δ)∘ρ", &lhs, &rhs, &[dm]);
                let cu = kron_compose(&[&im, &c.counit], rho);
                r.equal_maps("right counit", "(M⊗ε)∘ρ = M", &cu, &im, &[dm]);
            }
        }
        if let Some(rho) = &self.left {
            if rho.shape() != (dc * dm, dm) {
                r.record("left shape", "ρ: M → C⊗M", false, None);
            } else {
                let lhs = kron_compose(&[&ic, rho], rho);
                let rhs = kron_compose(&[&c.comul, &im], rho);
                r.equal_maps("left coassociativity", "(C⊗ρ)∘ρ = (Δ⊗M)∘ρ", &lhs, &rhs, &[dm]);
                let cu = kron_compose(&[&c.counit, &im], rho);
                r.equal_maps("left counit", "(ε⊗M)∘ρ = M", &cu, &im, &[dm]);
            }
        }
        if let (Some(rr), Some(rl)) = (&self.right, &self.left) {
            if rr.shape() == (dm * dc, dm) && rl.shape() == (dc * dm, dm) {
                let lhs = kron_compose(&[rl, &ic], rr);
                let rhs = kron_compose(&[&ic, rr], rl);
                r.equal_maps("bicomodule", "(^Mρ⊗C)∘ρ^M = (C⊗ρ^M)∘^Mρ", &lhs, &rhs, &[dm]);
            }
        }
        r
    }

    /// First column where `f: M → N` fails `ρ^N∘f = (f⊗C)∘ρ^M`.
    pub fn right_colinearity_defect(&self, target: &Comodule<F>, f: &Matrix<F>) -> Option<usize> {
        let ic = Matrix::identity(self.coalgebra.dim());
        let lhs = target.right_coaction().mul(f);
        let rhs = kron_compose(&[f, &ic], self.right_coaction());
        lhs.first_differing_col(&rhs)
    }

    /// First column where `f: M → N` fails `^Nρ∘f = (C⊗f)∘^Mρ`.
    pub fn left_colinearity_defect(&self, target: &Comodule<F>, f: &Matrix<F>) -> Option<usize> {
        let ic = Matrix::identity(self.coalgebra.dim());
        let lhs = target.left_coaction().mul(f);
        let rhs = kron_compose(&[&ic, f], self.left_coaction());
        lhs.first_differing_col(&rhs)
    }

    pub fn require_right_colinear(&self, target: &Comodule<F>, f: &Matrix<F>, what: &str) -> Result<()> {
        match self.right_colinearity_defect(target, f) {
            None => Ok(()),
            Some(c) => Err(Error::NotLinear { property: format!("right colinear ({what})"), witness: vec![c] }),
        }
    }

    pub fn require_left_colinear(&self, target: &Comodule<F>, f: &Matrix<F>, what: &str) -> Result<()> {
        match self.left_colinearity_defect(target, f) {
            None => Ok(()),
            Some(c) => Err(Error::NotLinear { property: format!("left colinear ({what})"), witness: vec![c] }),
        }
    }

    pub fn direct_sum(&self, other: &Comodule<F>) -> Comodule<F> {
        let dc = self.coalgebra.dim();
        let (d1, d2) = (self.dim, other.dim);
        let right = match (&self.right, &other.right) {
            (Some(a), Some(b)) => Some(Matrix::from_fn_cols((d1 + d2) * dc, d1 + d2, |j| {
                let mut out = vec![F::zero(); (d1 + d2) * dc];
                if j < d1 {
                    for (k, v) in a.col(j).into_iter().enumerate() {
                        out[k] = v;
                    }
                } else {
                    for (k, v) in b.col(j - d1).into_iter().enumerate() {
                        out[d1 * dc + k] = v;
                    }
                }
                out
            })),
            _ => None,
        };
        let left = match (&self.left, &other.left) {
            (Some(a), Some(b)) => Some(Matrix::from_fn_cols(dc * (d1 + d2), d1 + d2, |j| {
                let mut out = vec![F::zero(); dc * (d1 + d2)];
                let (src, off, d) = if j < d1 { (a.col(j), 0, d1) } else { (b.col(j - d1), d1, d2) };
                for (k, v) in src.into_iter().enumerate() {
                    out[(k / d) * (d1 + d2) + off + k % d] = v;
                }
                out
            })),
            _ => None,
        };
        Comodule { dim: d1 + d2, coalgebra: self.coalgebra.clone(), right, left }
    }

    /// Sub-comodule on the columns of `inclusion`, verifying stability.
    pub fn restrict(&self, sub: &Subspace<F>) -> Result<Comodule<F>> {
        let ic = Matrix::identity(self.coalgebra.dim());
        let right = match &self.right {
            Some(rho) => {
                let y = rho.mul(&sub.inclusion);
                let x = kron_compose(&[&sub.retraction, &ic], &y);
                let back = kron_compose(&[&sub.inclusion, &ic], &x);
                if let Some(c) = back.first_differing_col(&y) {
                    return Err(Error::Containment { what: "right coaction of subcomodule".into(), column: c });
                }
                Some(x)
            }
            None => None,
        };
        let left = match &self.left {
            Some(rho) => {
                let y = rho.mul(&sub.inclusion);
                let x = kron_compose(&[&ic, &sub.retraction], &y);
                let back = kron_compose(&[&ic, &sub.inclusion], &x);
                if let Some(c) = back.first_differing_col(&y) {
                    return Err(Error::Containment { what: "left coaction of subcomodule".into(), column: c });
                }
                Some(x)
            }
            None => None,
        };
        Ok(Comodule { dim: sub.dim(), coalgebra: self.coalgebra.clone(), right, left })
    }
}
