//! Entwining structures `(A, C, ψ)`, their corings and entwined modules.

use std::sync::Arc;

use crate::algebra::{Algebra, Module};
use crate::coalgebra::{Coalgebra, Comodule};
use crate::coring::{Coring, CoringComodule};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::hopf::{check_bialgebra_morphism, Bialgebra, Hopf};
use crate::matrix::{kron_compose, tensor_vec, unit_vec, Matrix};
use crate::report::Report;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entwining<F> {
    pub algebra: Arc<Algebra<F>>,
    pub coalgebra: Arc<Coalgebra<F>>,
    /// `ψ: C⊗A → A⊗C`
    pub psi: Matrix<F>,
}

/// A right `A`-module that is also a right `C`-comodule on the same space.
#[derive(Debug, Clone)]
pub struct EntwinedModule<F> {
    pub module: Module<F>,
    pub comodule: Comodule<F>,
}

impl<F: Field> EntwinedModule<F> {
    pub fn new(module: Module<F>, comodule: Comodule<F>) -> Result<Self> {
        if module.dim != comodule.dim || comodule.right.is_none() || module.right.is_none() {
            return Err(Error::invalid("entwined module needs a right action and a right coaction on one space"));
        }
        Ok(EntwinedModule { module, comodule })
    }

    pub fn dim(&self) -> usize {
        self.module.dim
    }
}

impl<F: Field> Entwining<F> {
    pub fn new(algebra: Arc<Algebra<F>>, coalgebra: Arc<Coalgebra<F>>, psi: Matrix<F>) -> Result<Self> {
        let (da, dc) = (algebra.dim(), coalgebra.dim());
        if psi.shape() != (da * dc, dc * da) {
            return Err(Error::Shape { context: "entwining map".into(), left: psi.shape(), right: (da * dc, dc * da) });
        }
        Ok(Entwining { algebra, coalgebra, psi })
    }

    /// The four identities of the bow-tie diagram, each with its own witness.
    pub fn check_bowtie(&self) -> Report {
        let mut r = Report::new("entwining");
        let (a, c) = (&*self.algebra, &*self.coalgebra);
        let (da, dc) = (a.dim(), c.dim());
        let (ia, ic) = (Matrix::identity(da), Matrix::identity(dc));
        let psi = &self.psi;

        let lhs = psi.mul(&ic.kron(&a.mul));
        let rhs = a.mul.kron(&ic).mul(&ia.kron(psi)).mul(&psi.kron(&ia));
        r.equal_maps("multiplicativity", "ψ∘(C⊗μ) = (μ⊗C)∘(A⊗ψ)∘(ψ⊗A)", &lhs, &rhs, &[dc, da, da]);

        let lhs = kron_compose(&[&ia, &c.comul], psi);
        let rhs = psi.kron(&ic).mul(&ic.kron(psi)).mul(&c.comul.kron(&ia));
        r.equal_maps("comultiplicativity", "(A⊗Δ)∘ψ = (ψ⊗C)∘(C⊗ψ)∘(Δ⊗A)", &lhs, &rhs, &[dc, da]);

        let lhs = kron_compose(&[&ia, &c.counit], psi);
        r.equal_maps("counitality", "(A⊗ε)∘ψ = ε⊗A", &lhs, &c.counit.kron(&ia), &[dc, da]);

        let lhs = psi.mul(&ic.kron(&a.unit));
        r.equal_maps("unitality", "ψ∘(C⊗ι) = ι⊗C", &lhs, &a.unit.kron(&ic), &[dc]);
        r
    }

    /// `A⊗C` with `a(a'⊗c) = aa'⊗c`, `(a'⊗c)a = a'ψ(c⊗a)`, `Δ = A⊗Δ`, `ε = A⊗ε`.
    pub fn coring(&self) -> Result<Coring<F>> {
        let bowtie = self.check_bowtie();
        if !bowtie.passed() {
            return Err(Error::invalid(format!("not an entwining: {}", bowtie.failed_axioms().join(", "))));
        }
        let (a, c) = (&*self.algebra, &*self.coalgebra);
        let (da, dc) = (a.dim(), c.dim());
        let (ia, ic) = (Matrix::identity(da), Matrix::identity(dc));
        let left = (0..da).map(|k| a.lmul(k).kron(&ic)).collect();
        let mu_c = a.mul.kron(&ic);
        let right = (0..da)
            .map(|k| {
                let psi_k = self.psi.mul(&ic.kron(&Matrix::column_vector(unit_vec(da, k))));
                mu_c.mul(&ia.kron(&psi_k))
            })
            .collect();
        let carrier = Module { dim: da * dc, base: self.algebra.clone(), left: Some(left), right: Some(right) };
        let insert_one = Matrix::kron_all(&[&ia, &ic, &a.unit, &ic]);
        let lift = insert_one.mul(&ia.kron(&c.comul));
        Coring::from_lift(carrier, &lift, ia.kron(&c.counit))
    }

    /// `1⊗e` for a group-like `e` of the coalgebra.
    pub fn coring_grouplike(&self, e: &[F]) -> Vec<F> {
        tensor_vec(&self.algebra.one(), e)
    }

    /// Module and comodule axioms together with
    /// `ρ^M∘ρ_M = (ρ_M⊗C)∘(M⊗ψ)∘(ρ^M⊗A)`.
    pub fn check_entwined(&self, m: &EntwinedModule<F>) -> Report {
        let mut r = Report::new("entwined module");
        let module = m.module.check();
        let comodule = m.comodule.check();
        let halves_ok = module.passed() && comodule.passed();
        r.absorb("module", module);
        r.absorb("comodule", comodule);
        let (dm, da, dc) = (m.dim(), self.algebra.dim(), self.coalgebra.dim());
        let act = m.module.right_action().expect("right module");
        let rho = m.comodule.right_coaction();
        let lhs = rho.mul(&act);
        let rhs = act
            .kron(&Matrix::identity(dc))
            .mul(&Matrix::identity(dm).kron(&self.psi))
            .mul(&rho.kron(&Matrix::identity(da)));
        r.equal_maps("compatibility", "ρ^M∘ρ_M = (ρ_M⊗C)∘(M⊗ψ)∘(ρ^M⊗A)", &lhs, &rhs, &[dm, da]);
        if !halves_ok {
            r.note("compatibility", "module or comodule half fails on its own");
        }
        r
    }

    /// The same data as a comodule of the associated coring: `m ↦ m₀ ⊗_A (1⊗m₁)`.
    pub fn to_coring_comodule(&self, coring: &Coring<F>, m: &EntwinedModule<F>) -> Result<CoringComodule<F>> {
        let (dm, dc) = (m.dim(), self.coalgebra.dim());
        let insert_one = Matrix::kron_all(&[&Matrix::identity(dm), &self.algebra.unit, &Matrix::identity(dc)]);
        let lift = insert_one.mul(m.comodule.right_coaction());
        let module = Module { left: None, ..m.module.clone() };
        CoringComodule::from_lift(coring, module, &lift, true)
    }

    /// `N⊗A` with `(n⊗a)a' = n⊗aa'` and coaction `(N⊗ψ)∘(ρ^N⊗A)`.
    pub fn induced(&self, n: &Comodule<F>) -> Result<EntwinedModule<F>> {
        let (a, dn) = (&self.algebra, n.dim);
        let da = a.dim();
        let idn = Matrix::identity(dn);
        let right = (0..da).map(|k| idn.kron(&a.rmul(k))).collect();
        let module = Module { dim: dn * da, base: a.clone(), left: None, right: Some(right) };
        let rho = idn.kron(&self.psi).mul(&n.right_coaction().kron(&Matrix::identity(da)));
        EntwinedModule::new(module, Comodule::right(&self.coalgebra, rho))
    }

    /// `ψ(c⊗a) = a₂ ⊗ S⁻¹(a₁)ca₃` on `A = C = H`.
    pub fn ayd(h: &Hopf<F>) -> Result<Self> {
        let check = h.check();
        if !check.passed() {
            return Err(Error::invalid(format!("not a Hopf algebra: {}", check.failed_axioms().join(", "))));
        }
        let d = h.dim();
        let a = h.algebra();
        let delta2 = h.double_coproduct();
        let psi = Matrix::from_fn_cols(d * d, d * d, |col| {
            let (c, x) = (col / d, col % d);
            let mut out = vec![F::zero(); d * d];
            for (t, coef) in delta2.col(x).iter().enumerate() {
                if coef.is_zero() {
                    continue;
                }
                let (x1, x2, x3) = (t / (d * d), (t / d) % d, t % d);
                let s = h.antipode_inv.col(x1);
                let mid = a.product(&a.product(&s, &unit_vec(d, c)), &unit_vec(d, x3));
                for (k, v) in mid.iter().enumerate() {
                    out[x2 * d + k].add_mul(coef, v);
                }
            }
            out
        });
        Self::new(a.clone(), h.coalgebra().clone(), psi)
    }
}

/// Data `(A, C, α, β)`: a bialgebra `A`, an `A`-bimodule coalgebra `C`, a bialgebra
/// map `α` and an anti-bialgebra map `β`.
#[derive(Debug, Clone)]
pub struct AlphaBetaDatum<F> {
    pub bialgebra: Bialgebra<F>,
    pub coalgebra: Arc<Coalgebra<F>>,
    /// `C` as an `A`-bimodule.
    pub actions: Module<F>,
    pub alpha: Matrix<F>,
    pub beta: Matrix<F>,
}

impl<F: Field> AlphaBetaDatum<F> {
    /// The regular datum `A = C = H` with the given maps.
    pub fn regular(h: &Bialgebra<F>, alpha: Matrix<F>, beta: Matrix<F>) -> Self {
        AlphaBetaDatum { bialgebra: h.clone(), coalgebra: h.coalgebra.clone(), actions: h.algebra.regular(), alpha, beta }
    }

    /// `A` acts on `C⊗C` through `Δ_A`: `a(c⊗c') = a₁c ⊗ a₂c'`.
    fn diagonal(&self, acts: &[Matrix<F>], a: usize) -> Matrix<F> {
        let dc = self.coalgebra.dim();
        let da = self.bialgebra.dim();
        let mut out = Matrix::zeros(dc * dc, dc * dc);
        for (t, coef) in self.bialgebra.coalgebra.comul.col(a).iter().enumerate() {
            if !coef.is_zero() {
                out = out.plus(&acts[t / da].kron(&acts[t % da]).scale(coef));
            }
        }
        out
    }

    /// Bialgebra, morphism and bimodule-coalgebra conditions. The bimodule
    /// coalgebra axioms are read as: `Δ_C` and `ε_C` are bimodule maps, with
    /// `A` acting diagonally on `C⊗C` and through `ε_A` on `k`.
    pub fn check(&self) -> Report {
        let mut r = Report::new("alpha-beta datum");
        r.absorb("bialgebra", self.bialgebra.check());
        r.absorb("coalgebra", self.coalgebra.check());
        r.absorb("module", self.actions.check());
        r.absorb("alpha", check_bialgebra_morphism(&self.bialgebra, &self.alpha, false));
        r.absorb("beta", check_bialgebra_morphism(&self.bialgebra, &self.beta, true));
        let (Some(left), Some(right)) = (&self.actions.left, &self.actions.right) else {
            r.record("bimodule", "C is an A-bimodule", false, None);
            return r;
        };
        let c = &*self.coalgebra;
        let eps_a = &self.bialgebra.coalgebra.counit;
        let da = self.bialgebra.dim();
        let mut ok_delta = None;
        let mut ok_eps = None;
        for (side, acts) in [(0usize, left), (1, right)] {
            for a in 0..da {
                let diag = self.diagonal(acts, a);
                if let Some(col) = c.comul.mul(&acts[a]).first_differing_col(&diag.mul(&c.comul)) {
                    ok_delta.get_or_insert(vec![side, a, col]);
                }
                let scaled = c.counit.scale(eps_a.get(0, a));
                if let Some(col) = c.counit.mul(&acts[a]).first_differing_col(&scaled) {
                    ok_eps.get_or_insert(vec![side, a, col]);
                }
            }
        }
        r.record("bimodule coalgebra: coproduct", "Δ_C(acb) = a₁c₁b₁ ⊗ a₂c₂b₂", ok_delta.is_none(), ok_delta);
        r.record("bimodule coalgebra: counit", "ε_C(acb) = ε(a)ε_C(c)ε(b)", ok_eps.is_none(), ok_eps);
        r.note("bimodule coalgebra: coproduct", "diagonal action on C⊗C through Δ_A");
        r
    }

    /// `ψ(c⊗a) = a₂ ⊗ β(a₁)cα(a₃)`, after the datum passes its checks.
    pub fn entwining(&self) -> Result<Entwining<F>> {
        let check = self.check();
        if !check.passed() {
            return Err(Error::invalid(format!("alpha-beta datum rejected: {}", check.failed_axioms().join(", "))));
        }
        let da = self.bialgebra.dim();
        let dc = self.coalgebra.dim();
        let delta = &self.bialgebra.coalgebra.comul;
        let delta2 = kron_compose(&[delta, &Matrix::identity(da)], delta);
        let psi = Matrix::from_fn_cols(da * dc, dc * da, |col| {
            let (c, x) = (col / da, col % da);
            let mut out = vec![F::zero(); da * dc];
            for (t, coef) in delta2.col(x).iter().enumerate() {
                if coef.is_zero() {
                    continue;
                }
                let (x1, x2, x3) = (t / (da * da), (t / da) % da, t % da);
                let v = self.actions.left_by(&self.beta.col(x1)).mul(&self.actions.right_by(&self.alpha.col(x3))).col(c);
                for (k, val) in v.iter().enumerate() {
                    out[x2 * dc + k].add_mul(coef, val);
                }
            }
            out
        });
        Entwining::new(self.bialgebra.algebra.clone(), self.coalgebra.clone(), psi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coring::Flavor;
    use crate::field::Rational;
    use crate::matrix::flip;

    type Q = Rational;

    #[test]
    fn ayd_over_group_algebras_is_the_flip() {
        for n in 2..=3 {
            let h = Hopf::<Q>::cyclic_group(n);
            let e = Entwining::ayd(&h).unwrap();
            assert!(e.check_bowtie().passed());
            assert_eq!(e.psi, flip(n, n));
        }
    }

    #[test]
    fn ayd_over_h4_passes_and_is_not_the_flip() {
        let h = Hopf::<Q>::sweedler_h4();
        let e = Entwining::ayd(&h).unwrap();
        assert!(e.check_bowtie().passed(), "{}", e.check_bowtie());
        assert_ne!(e.psi, flip(4, 4));
    }

    #[test]
    fn ayd_coring_right_action_matches_formula() {
        let h = Hopf::<Q>::sweedler_h4();
        let e = Entwining::ayd(&h).unwrap();
        let c = e.coring().unwrap();
        assert!(c.check().passed(), "{}", c.check());
        let g = e.coring_grouplike(&h.algebra().one());
        assert!(c.verify_grouplike(&g, Flavor::Grouplike).passed());
        // (b⊗c)a = ba₂ ⊗ S⁻¹(a₁)ca₃, evaluated independently.
        let a = h.algebra();
        let delta2 = h.double_coproduct();
        for x in 0..4 {
            for b in 0..4 {
                for cc in 0..4 {
                    let mut expect = vec![Q::zero(); 16];
                    for (t, coef) in delta2.col(x).iter().enumerate() {
                        if coef.is_zero() {
                            continue;
                        }
                        let (x1, x2, x3) = (t / 16, (t / 4) % 4, t % 4);
                        let left = a.basis_product(b, x2);
                        let right = a.product(&a.product(&h.antipode_inv.col(x1), &unit_vec(4, cc)), &unit_vec(4, x3));
                        let term = tensor_vec(&left, &right);
                        for (k, v) in term.iter().enumerate() {
                            expect[k].add_mul(coef, v);
                        }
                    }
                    assert_eq!(c.carrier.right_by(&unit_vec(4, x)).col(b * 4 + cc), expect);
                }
            }
        }
    }

    #[test]
    fn trivial_algebra_gives_the_coalgebra() {
        let c = Arc::new(Coalgebra::<Q>::grouplike(2));
        let e = Entwining::new(Arc::new(Algebra::ground()), c.clone(), Matrix::identity(2)).unwrap();
        assert!(e.check_bowtie().passed());
        let cor = e.coring().unwrap();
        assert!(cor.check().passed());
        assert_eq!(cor.cop, c.comul);
    }

    /// Bumps one entry of `μ`, `Δ`, `ε` or `ι`; each map occurs in exactly one axiom.
    fn mutate(e: &Entwining<Q>, which: usize, row: usize, col: usize) -> Entwining<Q> {
        let mut a = (*e.algebra).clone();
        let mut c = (*e.coalgebra).clone();
        let m = match which {
            0 => &mut a.mul,
            1 => &mut c.comul,
            2 => &mut c.counit,
            _ => &mut a.unit,
        };
        let v = m.get(row, col).add(&Q::one());
        m.set(row, col, v);
        Entwining { algebra: Arc::new(a), coalgebra: Arc::new(c), psi: e.psi.clone() }
    }

    #[test]
    fn structure_map_mutations_fail_exactly_their_axiom() {
        let axioms = ["multiplicativity", "comultiplicativity", "counitality", "unitality"];
        // The flip entwines any pair of structures, so only H4 is informative here.
        let e = Entwining::ayd(&Hopf::<Q>::sweedler_h4()).unwrap();
        let shapes = [e.algebra.mul.shape(), e.coalgebra.comul.shape(), e.coalgebra.counit.shape(), e.algebra.unit.shape()];
        for (which, axiom) in axioms.iter().enumerate() {
            let (rows, cols) = shapes[which];
            let hit = (0..rows * cols).find_map(|k| {
                let r = mutate(&e, which, k / cols, k % cols).check_bowtie();
                (!r.passed()).then_some(r)
            });
            let r = hit.expect("some single entry breaks the axiom");
            assert_eq!(r.failed_axioms(), vec![*axiom]);
            assert!(r.get(axiom).unwrap().witness.is_some());
        }
    }

    #[test]
    fn perturbed_psi_is_pinpointed() {
        let h = Hopf::<Q>::sweedler_h4();
        let mut e = Entwining::ayd(&h).unwrap();
        let v = e.psi.get(0, 0).add(&Q::one());
        e.psi.set(0, 0, v);
        let r = e.check_bowtie();
        assert!(!r.passed());
        assert!(r.failures().all(|c| c.witness.is_some()));
    }

    #[test]
    fn trivial_coaction_on_kc2_is_an_ayd_module() {
        let h = Hopf::<Q>::cyclic_group(2);
        let e = Entwining::ayd(&h).unwrap();
        let module = Module { left: None, ..h.algebra().regular() };
        let rho = Matrix::from_fn_cols(4, 2, |m| tensor_vec(&unit_vec(2, m), &h.algebra().one()));
        let m = EntwinedModule::new(module, Comodule::right(h.coalgebra(), rho)).unwrap();
        assert!(e.check_entwined(&m).passed());
        let coring = e.coring().unwrap();
        assert!(e.to_coring_comodule(&coring, &m).unwrap().check(&coring).passed());
    }

    #[test]
    fn regular_module_and_comodule_over_kc2_matches_brute_force() {
        let h = Hopf::<Q>::cyclic_group(2);
        let e = Entwining::ayd(&h).unwrap();
        let a = h.algebra();
        let module = Module { left: None, ..a.regular() };
        let m = EntwinedModule::new(module, Comodule::right(h.coalgebra(), h.coalgebra().comul.clone())).unwrap();
        // ρ(ma) = m₀a₂ ⊗ S⁻¹(a₁)m₁a₃ on group-likes: ρ(g^i g^j) = g^{i+j} ⊗ g^{i+j}
        // against g^{i+j} ⊗ g^{-j} g^i g^j = g^{i+j} ⊗ g^i.
        let brute = (0..2).all(|i| (0..2).all(|j| (i + j) % 2 == i));
        assert!(!brute);
        assert_eq!(e.check_entwined(&m).passed(), brute);
    }

    #[test]
    fn induced_modules_are_entwined() {
        let h = Hopf::<Q>::sweedler_h4();
        let e = Entwining::ayd(&h).unwrap();
        let m = e.induced(&h.coalgebra().regular()).unwrap();
        assert!(e.check_entwined(&m).passed(), "{}", e.check_entwined(&m));
    }

    #[test]
    fn alpha_beta_with_inverse_antipode_is_ayd() {
        let h = Hopf::<Q>::sweedler_h4();
        let datum = AlphaBetaDatum::regular(&h.bialgebra, Matrix::identity(4), h.antipode_inv.clone());
        let e = datum.entwining().unwrap();
        assert_eq!(e, Entwining::ayd(&h).unwrap());
    }

    #[test]
    fn alpha_beta_identity_on_kc2_and_rejected_on_h4() {
        let h = Hopf::<Q>::cyclic_group(2);
        let datum = AlphaBetaDatum::regular(&h.bialgebra, Matrix::identity(2), Matrix::identity(2));
        assert!(datum.entwining().unwrap().check_bowtie().passed());
        let h4 = Hopf::<Q>::sweedler_h4();
        let bad = AlphaBetaDatum::regular(&h4.bialgebra, Matrix::identity(4), Matrix::identity(4));
        assert!(bad.entwining().is_err());
        assert!(!bad.check().get("beta.algebra.multiplicative").unwrap().passed);
    }
}
