//! Connections in right modules over a semi-free DGA, their curvature, and the
//! bijection between flat connections and comodules of the associated coring.

use crate::algebra::Module;
use crate::coring::{CoringComodule, Flavor};
use crate::dga::{Dga, Roiter};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{axpy, unit_vec, Matrix, Subspace};
use crate::report::Report;
use crate::tensor::TensorChain;

/// `∇: M → M ⊗_A Ω¹`.
#[derive(Debug, Clone)]
pub struct ModuleConnection<F> {
    pub module: Module<F>,
    /// `M ⊗_A Ω¹`
    pub m1: TensorChain<F>,
    /// `M ⊗_A Ω¹ ⊗_A Ω¹`, which is `M ⊗_A Ω²`.
    pub m2: TensorChain<F>,
    pub nabla: Matrix<F>,
}

#[derive(Debug, Clone)]
pub struct Curvature<F> {
    /// `F_∇: M → M ⊗_A Ω²`
    pub map: Matrix<F>,
    pub flat: bool,
    pub witness: Option<usize>,
}

impl<F: Field> ModuleConnection<F> {
    fn spaces(module: &Module<F>, dga: &Dga<F>) -> Result<(TensorChain<F>, TensorChain<F>)> {
        if dga.cap < 2 {
            return Err(Error::invalid("connections need forms up to degree 2"));
        }
        let omega = dga.one_forms();
        Ok((TensorChain::new(&[module, omega])?, TensorChain::new(&[module, omega, omega])?))
    }

    pub fn new(module: Module<F>, dga: &Dga<F>, nabla: Matrix<F>) -> Result<Self> {
        let (m1, m2) = Self::spaces(&module, dga)?;
        if nabla.shape() != (m1.dim(), module.dim) {
            return Err(Error::Shape { context: "connection".into(), left: nabla.shape(), right: (m1.dim(), module.dim) });
        }
        Ok(ModuleConnection { module, m1, m2, nabla })
    }

    /// `∇(m·a) = ∇(m)·a + m ⊗ da` on basis pairs.
    pub fn check_leibniz(&self, dga: &Dga<F>) -> Report {
        let mut r = Report::new("connection");
        let dm = self.module.dim;
        let da = dga.base.dim();
        let out = self.m1.module();
        let lhs = Matrix::from_fn_cols(self.m1.dim(), dm * da, |c| {
            let (m, a) = (c / da, c % da);
            self.nabla.apply(&self.module.right_by(&unit_vec(da, a)).col(m))
        });
        let rhs = Matrix::from_fn_cols(self.m1.dim(), dm * da, |c| {
            let (m, a) = (c / da, c % da);
            let mut v = out.right_by(&unit_vec(da, a)).apply(&self.nabla.col(m));
            axpy(&mut v, &F::one(), &self.m1.project(&[&unit_vec(dm, m), &dga.d[0].col(a)]));
            v
        });
        r.equal_maps("Leibniz rule", "∇(ma) = ∇(m)a + m⊗da", &lhs, &rhs, &[dm, da]);
        r
    }

    /// `∇` on `M ⊗_A Ω¹` by `∇(m⊗ω) = ∇(m)ω + m⊗dω`.
    pub fn extend(&self, dga: &Dga<F>) -> Matrix<F> {
        let dm = self.module.dim;
        let (omega, two) = (dga.one_forms(), &dga.chains[1]);
        Matrix::from_fn_cols(self.m2.dim(), self.m1.dim(), |j| {
            let idx = self.m1.rep(j);
            let (m, w) = (idx[0], idx[1]);
            let mut out = vec![F::zero(); self.m2.dim()];
            for (t, x) in self.m1.terms(&self.nabla.col(m)) {
                axpy(&mut out, &x, &self.m2.project(&[&unit_vec(dm, t[0]), &unit_vec(omega.dim, t[1]), &unit_vec(omega.dim, w)]));
            }
            for (t, x) in two.terms(&dga.d[1].col(w)) {
                axpy(&mut out, &x, &self.m2.project_basis(&[m, t[0], t[1]]));
            }
            out
        })
    }

    /// `F_∇ = ∇∘∇|_M`.
    pub fn curvature(&self, dga: &Dga<F>) -> Curvature<F> {
        let map = self.extend(dga).mul(&self.nabla);
        let witness = (0..map.cols()).find(|&c| map.col(c).iter().any(|x| !x.is_zero()));
        Curvature { flat: witness.is_none(), witness, map }
    }

    /// Leibniz rule, right `A`-linearity of the curvature, and flatness.
    pub fn check(&self, dga: &Dga<F>) -> Report {
        let mut r = self.check_leibniz(dga);
        let curv = self.curvature(dga);
        let w = self.module.right_linearity_defect(self.m2.module(), &curv.map);
        r.record("curvature right A-linear", "F_∇(ma) = F_∇(m)a", w.is_none(), w);
        r.record("flat", "F_∇ = 0", curv.flat, curv.witness.map(|c| vec![c]));
        r
    }

    /// `M ⊗_A Ω¹ → M ⊗_A C`, induced by the inclusion of `Ω¹`.
    fn forms_into_coring(&self, roiter: &Roiter<F>, mc: &TensorChain<F>) -> Matrix<F> {
        let id = Matrix::identity(self.module.dim);
        self.m1.induced_unchecked(&[&id, &roiter.sub.inclusion], mc)
    }

    /// `∇(m) = ρ(m) − m ⊗_A g`, corestricted to `M ⊗_A Ω¹`.
    ///
    /// The coaction is not required to be coassociative: a failure shows up as
    /// nonzero curvature.
    pub fn from_coaction(roiter: &Roiter<F>, comodule: &CoringComodule<F>) -> Result<Self> {
        let module = comodule.module.clone();
        let dm = module.dim;
        let (m1, m2) = Self::spaces(&module, &roiter.dga)?;
        let mut conn = ModuleConnection { nabla: Matrix::zeros(m1.dim(), dm), module, m1, m2 };
        let mc = &comodule.mc;
        let y = Matrix::from_fn_cols(mc.dim(), dm, |m| {
            let mut v = comodule.coaction.col(m);
            axpy(&mut v, &F::one().neg(), &mc.project(&[&unit_vec(dm, m), &roiter.g]));
            v
        });
        let sub = Subspace::from_injective(conn.forms_into_coring(roiter, mc))
            .ok_or_else(|| Error::invalid("M ⊗_A Ω¹ does not embed into M ⊗_A C"))?;
        conn.nabla = sub
            .corestrict(&y)
            .map_err(|column| Error::Containment { what: "connection from coaction".into(), column })?;
        Ok(conn)
    }

    /// `ρ(m) = ∇(m) + m ⊗_A g`. Fails with the curvature witness unless `∇` is flat.
    pub fn to_coaction(&self, roiter: &Roiter<F>) -> Result<CoringComodule<F>> {
        let curv = self.curvature(&roiter.dga);
        if let Some(column) = curv.witness {
            return Err(Error::Curvature { column });
        }
        self.to_coaction_unchecked(roiter)
    }

    pub fn to_coaction_unchecked(&self, roiter: &Roiter<F>) -> Result<CoringComodule<F>> {
        let dm = self.module.dim;
        let mc = TensorChain::new(&[&self.module, &roiter.coring.carrier])?;
        let mut coaction = self.forms_into_coring(roiter, &mc).mul(&self.nabla);
        for m in 0..dm {
            let v = mc.project(&[&unit_vec(dm, m), &roiter.g]);
            let mut col = coaction.col(m);
            axpy(&mut col, &F::one(), &v);
            coaction.set_col(m, &col);
        }
        CoringComodule::new(&roiter.coring, self.module.clone(), coaction, roiter.flavor == Flavor::Grouplike)
    }

    /// `∇ + δ` for a right `A`-linear `δ: M → M ⊗_A Ω¹`.
    pub fn perturbed(&self, delta: &Matrix<F>) -> Result<Self> {
        self.module.require_right_linear(self.m1.module(), delta, "connection perturbation")?;
        Ok(ModuleConnection { nabla: self.nabla.plus(delta), ..self.clone() })
    }
}

/// `A` with `ρ(a) = 1 ⊗_A g·a`, `C` with `ρ = Δ_C`, and direct sums of these.
pub fn comodule_family<F: Field>(roiter: &Roiter<F>) -> Result<Vec<(String, CoringComodule<F>)>> {
    let c = &roiter.coring;
    let a = CoringComodule::from_element(c, &roiter.g)?;
    let reg = CoringComodule::regular(c)?;
    let aa = a.direct_sum(&a, c)?;
    let ac = a.direct_sum(&reg, c)?;
    let aaa = aa.direct_sum(&a, c)?;
    Ok(vec![
        ("A".into(), a),
        ("C".into(), reg),
        ("A+A".into(), aa),
        ("A+C".into(), ac),
        ("A+A+A".into(), aaa),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::coring::Coring;
    use crate::field::Rational;
    use std::sync::Arc;

    type Q = Rational;

    fn dual() -> Arc<Algebra<Q>> {
        Arc::new(Algebra::from_table(2, vec![Q::one(), Q::zero()], |i, j| {
            if i + j >= 2 { vec![Q::zero(), Q::zero()] } else { unit_vec(2, i + j) }
        }))
    }

    fn sweedler_roiter() -> Roiter<Q> {
        let a = dual();
        let c = Coring::sweedler(&a).unwrap();
        let g = Coring::sweedler_grouplike(&a);
        Roiter::new(&c, &g, Flavor::Grouplike, 2).unwrap()
    }

    #[test]
    fn comodule_a_gives_the_differential() {
        let ro = sweedler_roiter();
        let m = CoringComodule::from_element(&ro.coring, &ro.g).unwrap();
        let conn = ModuleConnection::from_coaction(&ro, &m).unwrap();
        assert!(conn.check(&ro.dga).passed(), "{}", conn.check(&ro.dga));
        let one = ro.dga.base.one();
        let d_via_iso = Matrix::from_fn_cols(conn.m1.dim(), 2, |a| conn.m1.project(&[&one, &ro.dga.d[0].col(a)]));
        assert_eq!(conn.nabla, d_via_iso);
    }

    #[test]
    fn round_trips_are_identities() {
        let ro = sweedler_roiter();
        for (name, m) in comodule_family(&ro).unwrap() {
            assert!(m.check(&ro.coring).passed(), "{name}");
            let conn = ModuleConnection::from_coaction(&ro, &m).unwrap();
            assert!(conn.curvature(&ro.dga).flat, "{name}");
            let back = conn.to_coaction(&ro).unwrap();
            assert_eq!(back.coaction, m.coaction, "{name}");
            let again = ModuleConnection::from_coaction(&ro, &back).unwrap();
            assert_eq!(again.nabla, conn.nabla, "{name}");
        }
    }

    #[test]
    fn linear_perturbation_creates_curvature() {
        let ro = sweedler_roiter();
        let m = CoringComodule::from_element(&ro.coring, &ro.g).unwrap();
        let conn = ModuleConnection::from_coaction(&ro, &m).unwrap();
        let homs = conn.module.right_hom_basis(conn.m1.module());
        assert!(!homs.is_empty());
        let bent = homs.iter().map(|h| conn.perturbed(h).unwrap()).find(|c| !c.curvature(&ro.dga).flat);
        let bent = bent.expect("some perturbation is curved");
        assert!(bent.check_leibniz(&ro.dga).passed());
        let err = bent.to_coaction(&ro).unwrap_err();
        assert!(matches!(err, Error::Curvature { .. }));
        assert!(!bent.to_coaction_unchecked(&ro).unwrap().check(&ro.coring).passed());
    }

    #[test]
    fn non_linear_perturbation_is_rejected() {
        let ro = sweedler_roiter();
        let m = CoringComodule::from_element(&ro.coring, &ro.g).unwrap();
        let conn = ModuleConnection::from_coaction(&ro, &m).unwrap();
        let mut rejected = 0;
        for r in 0..conn.m1.dim() {
            for c in 0..2 {
                let mut delta = Matrix::zeros(conn.m1.dim(), 2);
                delta.set(r, c, Q::one());
                if conn.module.right_linearity_defect(conn.m1.module(), &delta).is_some() {
                    assert!(conn.perturbed(&delta).is_err());
                    rejected += 1;
                }
            }
        }
        assert!(rejected > 0);
    }
}
