//! Bialgebras and Hopf algebras with bijective antipode.

use std::sync::Arc;

use crate::algebra::{check_algebra_morphism, Algebra};
use crate::coalgebra::Coalgebra;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{flip, kron_compose, unit_vec, Matrix};
use crate::report::Report;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bialgebra<F> {
    pub algebra: Arc<Algebra<F>>,
    pub coalgebra: Arc<Coalgebra<F>>,
}

impl<F: Field> Bialgebra<F> {
    pub fn new(algebra: Algebra<F>, coalgebra: Coalgebra<F>) -> Result<Self> {
        if algebra.dim() != coalgebra.dim() {
            return Err(Error::invalid("algebra and coalgebra halves differ in dimension"));
        }
        Ok(Bialgebra { algebra: Arc::new(algebra), coalgebra: Arc::new(coalgebra) })
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// `(Δ⊗Δ)` followed by the middle flip: `H⊗H → (H⊗H)⊗(H⊗H)` with factors `a₁ b₁ a₂ b₂`.
    pub fn diagonal_coproduct(&self) -> Matrix<F> {
        let d = self.dim();
        let id = Matrix::identity(d);
        Matrix::kron_all(&[&id, &flip(d, d), &id]).mul(&self.coalgebra.comul.kron(&self.coalgebra.comul))
    }

    pub fn check(&self) -> Report {
        let mut r = Report::new("bialgebra");
        r.absorb("algebra", self.algebra.check());
        r.absorb("coalgebra", self.coalgebra.check());
        let d = self.dim();
        let (mu, delta, eps) = (&self.algebra.mul, &self.coalgebra.comul, &self.coalgebra.counit);
        let lhs = delta.mul(mu);
        let rhs = mu.kron(mu).mul(&self.diagonal_coproduct());
        r.equal_maps("comultiplicative", "Δ∘μ = (μ⊗μ)∘(H⊗flip⊗H)∘(Δ⊗Δ)", &lhs, &rhs, &[d, d]);
        r.equal_maps("unit is group-like", "Δ∘ι = ι⊗ι", &delta.mul(&self.algebra.unit), &self.algebra.unit.kron(&self.algebra.unit), &[1]);
        r.equal_maps("counit multiplicative", "ε∘μ = ε⊗ε", &eps.mul(mu), &eps.kron(eps), &[d, d]);
        r.equal_maps("counit unital", "ε∘ι = 1", &eps.mul(&self.algebra.unit), &Matrix::identity(1), &[1]);
        r
    }
}

/// `f: C → D` with `Δ∘f = (f⊗f)∘Δ` and `ε∘f = ε`; with `anti`, the flip is inserted.
pub fn check_coalgebra_morphism<F: Field>(c: &Coalgebra<F>, d: &Coalgebra<F>, f: &Matrix<F>, anti: bool) -> Report {
    let mut r = Report::new(if anti { "anti-coalgebra map" } else { "coalgebra map" });
    let dc = c.dim();
    if f.shape() != (d.dim(), dc) {
        r.record("shape", "f: C → D", false, None);
        return r;
    }
    let lhs = d.comul.mul(f);
    let mut rhs = kron_compose(&[f, f], &c.comul);
    if anti {
        rhs = flip(d.dim(), d.dim()).mul(&rhs);
    }
    let anchor = if anti { "Δ∘f = flip∘(f⊗f)∘Δ" } else { "Δ∘f = (f⊗f)∘Δ" };
    r.equal_maps("comultiplicative", anchor, &lhs, &rhs, &[dc]);
    r.equal_maps("counital", "ε∘f = ε", &d.counit.mul(f), &c.counit, &[dc]);
    r
}

/// Both halves of a (anti-)bialgebra endomorphism.
pub fn check_bialgebra_morphism<F: Field>(h: &Bialgebra<F>, f: &Matrix<F>, anti: bool) -> Report {
    let mut r = Report::new(if anti { "anti-bialgebra map" } else { "bialgebra map" });
    r.absorb("algebra", check_algebra_morphism(&h.algebra, &h.algebra, f, anti));
    r.absorb("coalgebra", check_coalgebra_morphism(&h.coalgebra, &h.coalgebra, f, anti));
    r
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hopf<F> {
    pub bialgebra: Bialgebra<F>,
    pub antipode: Matrix<F>,
    pub antipode_inv: Matrix<F>,
}

impl<F: Field> Hopf<F> {
    pub fn algebra(&self) -> &Arc<Algebra<F>> {
        &self.bialgebra.algebra
    }

    pub fn coalgebra(&self) -> &Arc<Coalgebra<F>> {
        &self.bialgebra.coalgebra
    }

    pub fn dim(&self) -> usize {
        self.bialgebra.dim()
    }

    /// `(Δ⊗H)∘Δ`
    pub fn double_coproduct(&self) -> Matrix<F> {
        let d = self.dim();
        let delta = &self.coalgebra().comul;
        kron_compose(&[delta, &Matrix::identity(d)], delta)
    }

    pub fn check(&self) -> Report {
        let mut r = Report::new("Hopf algebra");
        r.absorb("bialgebra", self.bialgebra.check());
        let d = self.dim();
        let id = Matrix::identity(d);
        if self.antipode.shape() != (d, d) || self.antipode_inv.shape() != (d, d) {
            r.record("shape", "S, S⁻¹: H → H", false, None);
            return r;
        }
        let (mu, delta) = (&self.algebra().mul, &self.coalgebra().comul);
        let unit_counit = self.algebra().unit.mul(&self.coalgebra().counit);
        let left = mu.mul(&kron_compose(&[&self.antipode, &id], delta));
        r.equal_maps("left antipode", "μ∘(S⊗H)∘Δ = ι∘ε", &left, &unit_counit, &[d]);
        let right = mu.mul(&kron_compose(&[&id, &self.antipode], delta));
        r.equal_maps("right antipode", "μ∘(H⊗S)∘Δ = ι∘ε", &right, &unit_counit, &[d]);
        r.equal_maps("antipode inverse", "S∘S⁻¹ = H", &self.antipode.mul(&self.antipode_inv), &id, &[d]);
        r.equal_maps("antipode inverse (other side)", "S⁻¹∘S = H", &self.antipode_inv.mul(&self.antipode), &id, &[d]);
        r
    }

    /// The group algebra of the cyclic group of order `n`, basis `1, g, …, g^{n-1}`.
    pub fn cyclic_group(n: usize) -> Self {
        let algebra = Algebra::from_table(n, unit_vec(n, 0), |i, j| unit_vec(n, (i + j) % n));
        let coalgebra = Coalgebra::grouplike(n);
        let antipode = Matrix::from_fn_cols(n, n, |i| unit_vec(n, (n - i) % n));
        Hopf {
            bialgebra: Bialgebra { algebra: Arc::new(algebra), coalgebra: Arc::new(coalgebra) },
            antipode_inv: antipode.clone(),
            antipode,
        }
    }

    /// Sweedler's four-dimensional Hopf algebra, basis `1, g, x, gx` with
    /// `g² = 1`, `x² = 0`, `xg = −gx`, `Δg = g⊗g`, `Δx = x⊗1 + g⊗x`, `S(x) = −gx`.
    pub fn sweedler_h4() -> Self {
        let q = |v: [i64; 4]| v.iter().map(|&x| F::from_i64(x)).collect::<Vec<F>>();
        // Products e_i e_j for the basis (1, g, x, gx).
        let table = [
            [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
            [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]],
            [[0, 0, 1, 0], [0, 0, 0, -1], [0, 0, 0, 0], [0, 0, 0, 0]],
            [[0, 0, 0, 1], [0, 0, -1, 0], [0, 0, 0, 0], [0, 0, 0, 0]],
        ];
        let algebra = Algebra::from_table(4, q([1, 0, 0, 0]), |i, j| q(table[i][j]));
        let pair = |a: usize, b: usize| unit_vec::<F>(16, a * 4 + b);
        let comul = Matrix::from_cols(16, &[
            pair(0, 0),
            pair(1, 1),
            crate::matrix::add_vec(&pair(2, 0), &pair(1, 2)),
            crate::matrix::add_vec(&pair(3, 1), &pair(0, 3)),
        ]);
        let coalgebra = Coalgebra { comul, counit: Matrix::from_i64(1, 4, &[1, 1, 0, 0]) };
        let antipode = Matrix::from_i64(4, 4, &[1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, -1, 0]);
        let antipode_inv = antipode.mul(&antipode).mul(&antipode);
        Hopf {
            bialgebra: Bialgebra { algebra: Arc::new(algebra), coalgebra: Arc::new(coalgebra) },
            antipode,
            antipode_inv,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;

    type Q = Rational;

    #[test]
    fn cyclic_groups_are_hopf() {
        for n in 1..=3 {
            let h = Hopf::<Q>::cyclic_group(n);
            assert!(h.check().passed(), "{}", h.check());
            assert!(h.coalgebra().is_cocommutative());
        }
    }

    #[test]
    fn h4_is_hopf_and_not_cocommutative() {
        let h = Hopf::<Q>::sweedler_h4();
        assert!(h.check().passed(), "{}", h.check());
        assert!(!h.coalgebra().is_cocommutative());
        assert!(!h.algebra().is_commutative());
    }

    #[test]
    fn h4_antipode_is_not_an_involution() {
        let mut h = Hopf::<Q>::sweedler_h4();
        h.antipode_inv = h.antipode.clone();
        let r = h.check();
        assert!(!r.get("antipode inverse").unwrap().passed);
        assert_eq!(r.get("antipode inverse").unwrap().witness, Some(vec![2]));
    }

    #[test]
    fn antipode_is_anti_bialgebra_map() {
        let h = Hopf::<Q>::sweedler_h4();
        assert!(check_bialgebra_morphism(&h.bialgebra, &h.antipode, true).passed());
        assert!(!check_bialgebra_morphism(&h.bialgebra, &Matrix::identity(4), true).passed());
        assert!(check_bialgebra_morphism(&h.bialgebra, &Matrix::identity(4), false).passed());
    }
}
