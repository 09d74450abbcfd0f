//! Corings over a finite-dimensional algebra, group-like elements and comodules.

use std::sync::Arc;

use crate::algebra::{Algebra, Module};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{axpy, tensor_vec, unit_vec, Matrix};
use crate::report::Report;
use crate::tensor::TensorChain;

/// An `A`-coring: a bimodule `C` with `Δ: C → C⊗_A C` and `ε: C → A`.
#[derive(Debug, Clone)]
pub struct Coring<F> {
    pub base: Arc<Algebra<F>>,
    pub carrier: Module<F>,
    /// `C ⊗_A C`
    pub cc: TensorChain<F>,
    /// `C ⊗_A C ⊗_A C`
    pub ccc: TensorChain<F>,
    /// `Δ_C`, with values in the basis of `cc`.
    pub cop: Matrix<F>,
    /// `ε_C: C → A`
    pub cou: Matrix<F>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Flavor {
    Grouplike,
    SemiGrouplike,
}

impl Flavor {
    pub fn as_str(self) -> &'static str {
        match self {
            Flavor::Grouplike => "grouplike",
            Flavor::SemiGrouplike => "semi_grouplike",
        }
    }
}

impl std::str::FromStr for Flavor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "grouplike" => Ok(Flavor::Grouplike),
            "semi_grouplike" => Ok(Flavor::SemiGrouplike),
            _ => Err(Error::invalid(format!("unknown group-like flavor '{s}'"))),
        }
    }
}

impl<F: Field> Coring<F> {
    pub fn tensor_data(carrier: &Module<F>) -> Result<(TensorChain<F>, TensorChain<F>)> {
        if carrier.left.is_none() || carrier.right.is_none() {
            return Err(Error::invalid("coring carrier must be a bimodule"));
        }
        Ok((TensorChain::power(carrier, 2)?, TensorChain::power(carrier, 3)?))
    }

    pub fn new(carrier: Module<F>, cop: Matrix<F>, cou: Matrix<F>) -> Result<Self> {
        let (cc, ccc) = Self::tensor_data(&carrier)?;
        if cop.shape() != (cc.dim(), carrier.dim) {
            return Err(Error::Shape { context: "coring coproduct".into(), left: cop.shape(), right: (cc.dim(), carrier.dim) });
        }
        Self::assemble(carrier, cc, ccc, cop, cou)
    }

    /// Builds the coring from a lift of `Δ_C` to `C ⊗ C`.
    pub fn from_lift(carrier: Module<F>, lift: &Matrix<F>, cou: Matrix<F>) -> Result<Self> {
        let (cc, ccc) = Self::tensor_data(&carrier)?;
        let d = carrier.dim;
        if lift.shape() != (d * d, d) {
            return Err(Error::Shape { context: "coring coproduct lift".into(), left: lift.shape(), right: (d * d, d) });
        }
        let cop = Matrix::from_fn_cols(cc.dim(), d, |j| cc.levels[0].project(&lift.col(j)));
        Self::assemble(carrier, cc, ccc, cop, cou)
    }

    pub(crate) fn assemble(carrier: Module<F>, cc: TensorChain<F>, ccc: TensorChain<F>, cop: Matrix<F>, cou: Matrix<F>) -> Result<Self> {
        let base = carrier.base.clone();
        if cou.shape() != (base.dim(), carrier.dim) {
            return Err(Error::Shape { context: "coring counit".into(), left: cou.shape(), right: (base.dim(), carrier.dim) });
        }
        Ok(Coring { base, carrier, cc, ccc, cop, cou })
    }

    pub fn dim(&self) -> usize {
        self.carrier.dim
    }

    /// `Δ_C` lifted to `C ⊗ C` through the pure representatives.
    pub fn cop_lift(&self) -> Matrix<F> {
        self.cc.section().mul(&self.cop)
    }

    /// The Sweedler coring `A⊗A` with `Δ(a⊗a') = (a⊗1)⊗_A(1⊗a')` and `ε = μ`.
    pub fn sweedler(a: &Arc<Algebra<F>>) -> Result<Self> {
        let d = a.dim();
        let id = Matrix::identity(d);
        let carrier = Module {
            dim: d * d,
            base: a.clone(),
            left: Some((0..d).map(|i| a.lmul(i).kron(&id)).collect()),
            right: Some((0..d).map(|i| id.kron(&a.rmul(i))).collect()),
        };
        let one = a.one();
        let lift = Matrix::from_fn_cols(d * d * d * d, d * d, |c| {
            let (x, y) = (unit_vec(d, c / d), unit_vec(d, c % d));
            tensor_vec(&tensor_vec(&x, &one), &tensor_vec(&one, &y))
        });
        Self::from_lift(carrier, &lift, a.mul.clone())
    }

    /// `1⊗1` in the Sweedler coring.
    pub fn sweedler_grouplike(a: &Algebra<F>) -> Vec<F> {
        tensor_vec(&a.one(), &a.one())
    }

    /// `A` as a coring over itself: `Δ(a) = 1 ⊗_A a`, `ε = id`.
    pub fn trivial(a: &Arc<Algebra<F>>) -> Result<Self> {
        let carrier = a.regular();
        let d = a.dim();
        let (cc, ccc) = Self::tensor_data(&carrier)?;
        let one = a.one();
        let cop = Matrix::from_fn_cols(cc.dim(), d, |j| cc.project(&[&one, &unit_vec(d, j)]));
        Self::assemble(carrier, cc, ccc, cop, Matrix::identity(d))
    }

    /// `(Δ⊗_A C)∘Δ` and `(C⊗_A Δ)∘Δ` as maps into `C⊗_A C⊗_A C`.
    fn coassociativity_sides(&self) -> (Matrix<F>, Matrix<F>) {
        let d = self.dim();
        let n = self.ccc.dim();
        let mut lhs = Matrix::zeros(n, d);
        let mut rhs = Matrix::zeros(n, d);
        for c in 0..d {
            let mut l = vec![F::zero(); n];
            let mut r = vec![F::zero(); n];
            for (idx, x) in self.cc.terms(&self.cop.col(c)) {
                let (m, p) = (idx[0], idx[1]);
                for (inner, y) in self.cc.terms(&self.cop.col(m)) {
                    axpy(&mut l, &x.mul(&y), &self.ccc.project_basis(&[inner[0], inner[1], p]));
                }
                for (inner, y) in self.cc.terms(&self.cop.col(p)) {
                    axpy(&mut r, &x.mul(&y), &self.ccc.project_basis(&[m, inner[0], inner[1]]));
                }
            }
            lhs.set_col(c, &l);
            rhs.set_col(c, &r);
        }
        (lhs, rhs)
    }

    /// `(ε⊗_A C)∘Δ` and `(C⊗_A ε)∘Δ` as endomorphisms of `C`.
    fn counit_sides(&self) -> (Matrix<F>, Matrix<F>) {
        let d = self.dim();
        let mut left = Matrix::zeros(d, d);
        let mut right = Matrix::zeros(d, d);
        for c in 0..d {
            let mut l = vec![F::zero(); d];
            let mut r = vec![F::zero(); d];
            for (idx, x) in self.cc.terms(&self.cop.col(c)) {
                let (m, p) = (idx[0], idx[1]);
                let lv = self.carrier.left_by(&self.cou.col(m)).col(p);
                axpy(&mut l, &x, &lv);
                let rv = self.carrier.right_by(&self.cou.col(p)).col(m);
                axpy(&mut r, &x, &rv);
            }
            left.set_col(c, &l);
            right.set_col(c, &r);
        }
        (left, right)
    }

    pub fn check(&self) -> Report {
        let mut r = Report::new("coring");
        let bim = self.carrier.check();
        let bim_ok = bim.passed();
        r.absorb("carrier", bim);
        if !bim_ok {
            return r;
        }
        let reg = self.base.regular();
        let d = self.dim();
        let w = self.carrier.left_linearity_defect(&reg, &self.cou)
            .or_else(|| self.carrier.right_linearity_defect(&reg, &self.cou));
        r.record("counit bimodule map", "ε_C(a c b) = a ε_C(c) b", w.is_none(), w);
        let cc_mod = self.cc.module();
        let w = self.carrier.left_linearity_defect(cc_mod, &self.cop)
            .or_else(|| self.carrier.right_linearity_defect(cc_mod, &self.cop));
        r.record("coproduct bimodule map", "Δ_C(a c b) = a Δ_C(c) b", w.is_none(), w);
        let (lhs, rhs) = self.coassociativity_sides();
        r.equal_maps("coassociativity", "(Δ_C⊗_A C)∘Δ_C = (C⊗_A Δ_C)∘Δ_C", &lhs, &rhs, &[d]);
        let (left, right) = self.counit_sides();
        let id = Matrix::identity(d);
        r.equal_maps("left counit", "(ε_C⊗_A C)∘Δ_C = C", &left, &id, &[d]);
        r.equal_maps("right counit", "(C⊗_A ε_C)∘Δ_C = C", &right, &id, &[d]);
        r
    }

    pub fn verify_grouplike(&self, g: &[F], flavor: Flavor) -> Report {
        let mut r = Report::new(format!("{} element", flavor.as_str()));
        if g.len() != self.dim() {
            r.record("shape", "g ∈ C", false, None);
            return r;
        }
        let lhs = self.cop.apply(g);
        let rhs = self.cc.project(&[g, g]);
        let w = first_diff(&lhs, &rhs);
        r.record("coproduct", "Δ_C(g) = g⊗_A g", w.is_none(), w);
        if flavor == Flavor::Grouplike {
            let w = first_diff(&self.cou.apply(g), &self.base.one());
            r.record("counit", "ε_C(g) = 1", w.is_none(), w);
        }
        r
    }

    /// Checks that `f: C → D` is a bijective morphism of corings over the same base.
    pub fn check_isomorphism(&self, target: &Coring<F>, f: &Matrix<F>) -> Report {
        let mut r = Report::new("coring isomorphism");
        let d = self.dim();
        if !self.carrier.same_base(&target.carrier) || f.shape() != (target.dim(), d) {
            r.record("shape", "f: C → D over one base", false, None);
            return r;
        }
        r.record("bijective", "f invertible", f.inverse().is_some(), None);
        let w = self.carrier.left_linearity_defect(&target.carrier, f)
            .or_else(|| self.carrier.right_linearity_defect(&target.carrier, f));
        r.record("bimodule map", "f(a c b) = a f(c) b", w.is_none(), w.clone());
        if w.is_some() {
            return r;
        }
        let ff = self.cc.induced_unchecked(&[f, f], &target.cc);
        r.equal_maps("coproduct", "Δ_D∘f = (f⊗_A f)∘Δ_C", &target.cop.mul(f), &ff.mul(&self.cop), &[d]);
        r.equal_maps("counit", "ε_D∘f = ε_C", &target.cou.mul(f), &self.cou, &[d]);
        r
    }
}

pub(crate) fn first_diff<F: Field>(a: &[F], b: &[F]) -> Option<Vec<usize>> {
    a.iter().zip(b).position(|(x, y)| x != y).map(|i| vec![i])
}

/// A right `C`-comodule: a right `A`-module `M` with `ρ^M: M → M⊗_A C`.
#[derive(Debug, Clone)]
pub struct CoringComodule<F> {
    pub module: Module<F>,
    /// `M ⊗_A C`
    pub mc: TensorChain<F>,
    /// `M ⊗_A C ⊗_A C`
    pub mcc: TensorChain<F>,
    pub coaction: Matrix<F>,
    pub counital: bool,
}

impl<F: Field> CoringComodule<F> {
    pub fn new(coring: &Coring<F>, module: Module<F>, coaction: Matrix<F>, counital: bool) -> Result<Self> {
        let mc = TensorChain::new(&[&module, &coring.carrier])?;
        let mcc = TensorChain::new(&[&module, &coring.carrier, &coring.carrier])?;
        if coaction.shape() != (mc.dim(), module.dim) {
            return Err(Error::Shape { context: "coring coaction".into(), left: coaction.shape(), right: (mc.dim(), module.dim) });
        }
        Ok(CoringComodule { module, mc, mcc, coaction, counital })
    }

    /// From a lift of the coaction to `M ⊗ C`.
    pub fn from_lift(coring: &Coring<F>, module: Module<F>, lift: &Matrix<F>, counital: bool) -> Result<Self> {
        let mc = TensorChain::new(&[&module, &coring.carrier])?;
        let coaction = Matrix::from_fn_cols(mc.dim(), module.dim, |j| mc.levels[0].project(&lift.col(j)));
        Self::new(coring, module, coaction, counital)
    }

    /// `M = A` with `ρ(a) = 1 ⊗_A x·a` for an element `x` of the coring.
    pub fn from_element(coring: &Coring<F>, x: &[F]) -> Result<Self> {
        let a = &coring.base;
        let module = Module { left: None, ..a.regular() };
        let one = a.one();
        let d = a.dim();
        let lift = Matrix::from_fn_cols(d * coring.dim(), d, |j| {
            tensor_vec(&one, &coring.carrier.right_by(&unit_vec(d, j)).apply(x))
        });
        Self::from_lift(coring, module, &lift, true)
    }

    /// `C` over itself with `ρ = Δ_C`.
    pub fn regular(coring: &Coring<F>) -> Result<Self> {
        let module = Module { left: None, ..coring.carrier.clone() };
        Self::new(coring, module, coring.cop.clone(), true)
    }

    pub fn lift(&self) -> Matrix<F> {
        self.mc.section().mul(&self.coaction)
    }

    pub fn direct_sum(&self, other: &Self, coring: &Coring<F>) -> Result<Self> {
        let module = self.module.direct_sum(&other.module);
        let dc = coring.dim();
        let (d1, d2) = (self.module.dim, other.module.dim);
        let (l1, l2) = (self.lift(), other.lift());
        let lift = Matrix::from_fn_cols((d1 + d2) * dc, d1 + d2, |j| {
            let mut out = vec![F::zero(); (d1 + d2) * dc];
            let (src, off) = if j < d1 { (l1.col(j), 0) } else { (l2.col(j - d1), d1 * dc) };
            for (k, v) in src.into_iter().enumerate() {
                out[off + k] = v;
            }
            out
        });
        Self::from_lift(coring, module, &lift, self.counital && other.counital)
    }

    /// `(ρ⊗_A C)∘ρ` and `(M⊗_A Δ_C)∘ρ`.
    pub fn square_sides(&self, coring: &Coring<F>) -> (Matrix<F>, Matrix<F>) {
        let d = self.module.dim;
        let n = self.mcc.dim();
        let mut lhs = Matrix::zeros(n, d);
        let mut rhs = Matrix::zeros(n, d);
        for m in 0..d {
            let mut l = vec![F::zero(); n];
            let mut r = vec![F::zero(); n];
            for (idx, x) in self.mc.terms(&self.coaction.col(m)) {
                let (mm, c) = (idx[0], idx[1]);
                l = add_scaled(l, &x, &self.mcc.levels[1].project_pair(&self.coaction.col(mm), &unit_vec(coring.dim(), c)));
                for (inner, y) in coring.cc.terms(&coring.cop.col(c)) {
                    axpy(&mut r, &x.mul(&y), &self.mcc.project_basis(&[mm, inner[0], inner[1]]));
                }
            }
            lhs.set_col(m, &l);
            rhs.set_col(m, &r);
        }
        (lhs, rhs)
    }

    /// `(M⊗_A ε_C)∘ρ` as an endomorphism of `M`.
    pub fn counit_side(&self, coring: &Coring<F>) -> Matrix<F> {
        let d = self.module.dim;
        Matrix::from_fn_cols(d, d, |m| {
            let mut out = vec![F::zero(); d];
            for (idx, x) in self.mc.terms(&self.coaction.col(m)) {
                let v = self.module.right_by(&coring.cou.col(idx[1])).col(idx[0]);
                axpy(&mut out, &x, &v);
            }
            out
        })
    }

    pub fn check(&self, coring: &Coring<F>) -> Report {
        let mut r = Report::new("coring comodule");
        let m = self.module.check();
        let ok = m.passed();
        r.absorb("module", m);
        if !ok {
            return r;
        }
        let d = self.module.dim;
        let w = self.module.right_linearity_defect(self.mc.module(), &self.coaction);
        r.record("right A-linear", "ρ(ma) = ρ(m)a", w.is_none(), w);
        let (lhs, rhs) = self.square_sides(coring);
        r.equal_maps("coassociativity", "(ρ⊗_A C)∘ρ = (M⊗_A Δ_C)∘ρ", &lhs, &rhs, &[d]);
        if self.counital {
            r.equal_maps("counit", "(M⊗_A ε_C)∘ρ = M", &self.counit_side(coring), &Matrix::identity(d), &[d]);
        }
        r
    }
}

fn add_scaled<F: Field>(mut acc: Vec<F>, s: &F, v: &[F]) -> Vec<F> {
    axpy(&mut acc, s, v);
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;

    type Q = Rational;

    fn dual() -> Arc<Algebra<Q>> {
        Arc::new(Algebra::from_table(2, vec![Q::one(), Q::zero()], |i, j| {
            if i + j >= 2 { vec![Q::zero(), Q::zero()] } else { unit_vec(2, i + j) }
        }))
    }

    fn c2() -> Arc<Algebra<Q>> {
        Arc::new(Algebra::from_table(2, vec![Q::one(), Q::zero()], |i, j| unit_vec(2, (i + j) % 2)))
    }

    #[test]
    fn algebra_is_a_coring_over_itself() {
        let c = Coring::trivial(&dual()).unwrap();
        assert!(c.check().passed(), "{}", c.check());
    }

    #[test]
    fn sweedler_corings_pass() {
        for a in [dual(), c2(), Arc::new(Algebra::ground())] {
            let c = Coring::sweedler(&a).unwrap();
            assert!(c.check().passed(), "{}", c.check());
            let g = Coring::sweedler_grouplike(&a);
            assert!(c.verify_grouplike(&g, Flavor::Grouplike).passed());
        }
    }

    #[test]
    fn sweedler_of_dual_numbers_has_counit_kernel_of_dim_two() {
        let c = Coring::sweedler(&dual()).unwrap();
        assert_eq!(c.dim(), 4);
        assert_eq!(c.cou.kernel().dim(), 2);
        assert_eq!(c.cc.dim(), 8);
    }

    #[test]
    fn zero_counit_breaks_counit_diagrams() {
        let mut c = Coring::sweedler(&dual()).unwrap();
        c.cou = Matrix::zeros(2, 4);
        let r = c.check();
        assert!(!r.get("left counit").unwrap().passed);
        assert!(!r.get("right counit").unwrap().passed);
    }

    #[test]
    fn zero_is_semi_grouplike_only() {
        let c = Coring::sweedler(&dual()).unwrap();
        let z = vec![Q::zero(); 4];
        assert!(c.verify_grouplike(&z, Flavor::SemiGrouplike).passed());
        assert!(!c.verify_grouplike(&z, Flavor::Grouplike).passed());
    }

    #[test]
    fn x_tensor_one_is_not_grouplike() {
        let a = dual();
        let c = Coring::sweedler(&a).unwrap();
        let x1 = tensor_vec(&unit_vec(2, 1), &a.one());
        assert!(!c.verify_grouplike(&x1, Flavor::Grouplike).passed());
    }

    #[test]
    fn grouplike_gives_comodule_structure_on_a() {
        let a = dual();
        let c = Coring::sweedler(&a).unwrap();
        let g = Coring::sweedler_grouplike(&a);
        let m = CoringComodule::from_element(&c, &g).unwrap();
        assert!(m.check(&c).passed(), "{}", m.check(&c));
        let reg = CoringComodule::regular(&c).unwrap();
        assert!(reg.check(&c).passed());
        assert!(m.direct_sum(&reg, &c).unwrap().check(&c).passed());
    }

    #[test]
    fn zero_coaction_is_square_only() {
        let a = dual();
        let c = Coring::sweedler(&a).unwrap();
        let m = CoringComodule::from_element(&c, &vec![Q::zero(); 4]).unwrap();
        let r = m.check(&c);
        assert!(r.get("coassociativity").unwrap().passed);
        assert!(!r.get("counit").unwrap().passed);
        let non_counital = CoringComodule { counital: false, ..m };
        assert!(non_counital.check(&c).passed());
    }

    #[test]
    fn identity_is_a_coring_isomorphism() {
        let c = Coring::sweedler(&c2()).unwrap();
        assert!(c.check_isomorphism(&c, &Matrix::identity(4)).passed());
    }
}
