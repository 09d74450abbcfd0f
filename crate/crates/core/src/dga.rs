//! Truncated semi-free differential graded algebras and the correspondence
//! between them and corings with a group-like element.
//!
//! `Ω^n` is stored as the `n`-fold tensor power of `Ω¹` over `A`. Every basis
//! vector of `Ω^n` is the class of a pure tensor of basis one-forms, so the
//! product of basis forms is concatenation of representatives.

use std::sync::Arc;

use crate::algebra::{block_diag, Algebra, Module};
use crate::coring::{Coring, Flavor};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{axpy, kron_apply, tensor_vec, unit_vec, Matrix, Subspace};
use crate::report::Report;
use crate::tensor::TensorChain;

#[derive(Debug, Clone)]
pub struct Dga<F> {
    pub base: Arc<Algebra<F>>,
    pub cap: usize,
    /// `A` as a bimodule over itself.
    pub zeroth: Module<F>,
    /// `chains[n - 1]` realizes `Ω^n`.
    pub chains: Vec<TensorChain<F>>,
    /// `d[n]: Ω^n → Ω^{n+1}` for `n < cap`.
    pub d: Vec<Matrix<F>>,
}

impl<F: Field> Dga<F> {
    fn graded(one_forms: &Module<F>, cap: usize) -> Result<(Module<F>, Vec<TensorChain<F>>)> {
        if cap == 0 {
            return Err(Error::invalid("degree cap must be at least 1"));
        }
        let zeroth = one_forms.base.regular();
        let chains = (1..=cap).map(|n| TensorChain::power(one_forms, n)).collect::<Result<_>>()?;
        Ok((zeroth, chains))
    }

    /// Reassembles a DGA from its one-forms and the differentials `d[0..cap]`.
    pub fn from_parts(one_forms: &Module<F>, d: Vec<Matrix<F>>) -> Result<Self> {
        if !one_forms.is_left() || !one_forms.is_right() {
            return Err(Error::invalid("one-forms must be a bimodule"));
        }
        let (zeroth, chains) = Self::graded(one_forms, d.len())?;
        let dga = Dga { base: one_forms.base.clone(), cap: d.len(), zeroth, chains, d };
        for (n, dn) in dga.d.iter().enumerate() {
            let want = (dga.dim(n + 1), dga.dim(n));
            if dn.shape() != want {
                return Err(Error::Shape { context: format!("differential in degree {n}"), left: dn.shape(), right: want });
            }
        }
        Ok(dga)
    }

    pub fn omega(&self, n: usize) -> &Module<F> {
        if n == 0 { &self.zeroth } else { self.chains[n - 1].module() }
    }

    pub fn dim(&self, n: usize) -> usize {
        self.omega(n).dim
    }

    pub fn one_forms(&self) -> &Module<F> {
        self.omega(1)
    }

    /// `Ω^p ⊗ Ω^q → Ω^{p+q}`, for `p + q ≤ cap`.
    pub fn product(&self, p: usize, q: usize) -> Matrix<F> {
        assert!(p + q <= self.cap, "product beyond the degree cap");
        match (p, q) {
            (0, 0) => self.base.mul.clone(),
            (0, _) => self.omega(q).left_action().expect("bimodule"),
            (_, 0) => self.omega(p).right_action().expect("bimodule"),
            _ => {
                let (dp, dq) = (self.dim(p), self.dim(q));
                let target = &self.chains[p + q - 1];
                Matrix::from_fn_cols(target.dim(), dp * dq, |c| {
                    let mut idx = self.chains[p - 1].rep(c / dq);
                    idx.extend(self.chains[q - 1].rep(c % dq));
                    target.project_basis(&idx)
                })
            }
        }
    }

    /// `d∘d = 0` and the graded Leibniz rule on every basis pair under the cap.
    pub fn check(&self) -> Report {
        let mut r = Report::new("differential graded algebra");
        for n in 0..self.cap.saturating_sub(1) {
            let dd = self.d[n + 1].mul(&self.d[n]);
            r.zero_map(&format!("d∘d = 0 in degree {n}"), "d∘d = 0", &dd, &[self.dim(n)]);
        }
        for total in 0..self.cap {
            for p in 0..=total {
                let q = total - p;
                let (dp, dq) = (self.dim(p), self.dim(q));
                let lhs = self.d[total].mul(&self.product(p, q));
                let left = self.product(p + 1, q).mul(&self.d[p].kron(&Matrix::identity(dq)));
                let mut right = self.product(p, q + 1).mul(&Matrix::identity(dp).kron(&self.d[q]));
                if p % 2 == 1 {
                    right = right.neg();
                }
                r.equal_maps(
                    &format!("Leibniz rule for degrees ({p}, {q})"),
                    "d(ωω') = d(ω)ω' + (-1)^p ω d(ω')",
                    &lhs,
                    &left.plus(&right),
                    &[dp, dq],
                );
            }
        }
        r
    }

    /// The universal differential envelope: `Ω¹ = ker μ ⊆ A⊗A` and
    /// `d(a) = 1⊗a − a⊗1`, higher `d` by alternating insertion of `1`.
    pub fn universal_envelope(a: &Arc<Algebra<F>>, cap: usize) -> Result<Self> {
        let da = a.dim();
        let sub = a.mul.kernel();
        let one_forms = outer_bimodule(a).restrict(&sub.inclusion, &sub.retraction)?;
        let (zeroth, chains) = Self::graded(&one_forms, cap)?;
        // Ω^n → A^{⊗(n+1)}, multiplying neighbouring factors.
        let mut embeddings = vec![Matrix::identity(da)];
        for chain in &chains {
            let n = chain.factors.len();
            let (mu, id) = (&a.mul, Matrix::identity(da));
            embeddings.push(Matrix::from_fn_cols(da.pow(n as u32 + 1), chain.dim(), |j| {
                let idx = chain.rep(j);
                let mut v = sub.inclusion.col(idx[0]);
                for (k, &i) in idx.iter().enumerate().skip(1) {
                    let pre = Matrix::identity(da.pow(k as u32));
                    let prod = tensor_vec(&v, &sub.inclusion.col(i));
                    v = kron_apply(&[&pre, mu, &id], &prod);
                }
                v
            }));
        }
        let mut d = Vec::with_capacity(cap);
        for n in 0..cap {
            let target = Subspace::from_injective(embeddings[n + 1].clone())
                .ok_or_else(|| Error::invalid("forms do not embed into tensor powers of A"))?;
            let y = insertion_differential(a, n).mul(&embeddings[n]);
            let dn = target
                .corestrict(&y)
                .map_err(|column| Error::Containment { what: format!("universal differential in degree {n}"), column })?;
            d.push(dn);
        }
        Ok(Dga { base: a.clone(), cap, zeroth, chains, d })
    }
}

/// `A⊗A` with `a(x⊗y)b = ax⊗yb`.
pub fn outer_bimodule<F: Field>(a: &Arc<Algebra<F>>) -> Module<F> {
    let d = a.dim();
    let id = Matrix::identity(d);
    Module {
        dim: d * d,
        base: a.clone(),
        left: Some((0..d).map(|i| a.lmul(i).kron(&id)).collect()),
        right: Some((0..d).map(|i| id.kron(&a.rmul(i))).collect()),
    }
}

/// `A^{⊗(n+1)} → A^{⊗(n+2)}`, the alternating sum of insertions of `1`.
fn insertion_differential<F: Field>(a: &Algebra<F>, n: usize) -> Matrix<F> {
    let da = a.dim();
    let unit = &a.unit;
    let mut out = Matrix::zeros(da.pow(n as u32 + 2), da.pow(n as u32 + 1));
    for i in 0..=n + 1 {
        let before = Matrix::identity(da.pow(i as u32));
        let after = Matrix::identity(da.pow((n + 1 - i) as u32));
        let term = before.kron(unit).kron(&after);
        out = if i % 2 == 0 { out.plus(&term) } else { out.minus(&term) };
    }
    out
}

/// The differential graded algebra of a coring with a (semi-)group-like element.
#[derive(Debug, Clone)]
pub struct Roiter<F> {
    pub coring: Coring<F>,
    pub g: Vec<F>,
    pub flavor: Flavor,
    /// `Ω¹` inside `C`: `ker ε_C` for a group-like, all of `C` otherwise.
    pub sub: Subspace<F>,
    pub dga: Dga<F>,
}

impl<F: Field> Roiter<F> {
    pub fn new(coring: &Coring<F>, g: &[F], flavor: Flavor, cap: usize) -> Result<Self> {
        let report = coring.verify_grouplike(g, flavor);
        if !report.passed() {
            return Err(Error::invalid(format!("element is not {}: {}", flavor.as_str(), report.failed_axioms().join(", "))));
        }
        let sub = match flavor {
            Flavor::Grouplike => coring.cou.kernel(),
            Flavor::SemiGrouplike => {
                let id = Matrix::identity(coring.dim());
                Subspace { inclusion: id.clone(), retraction: id }
            }
        };
        let carrier = &coring.carrier;
        let one_forms = carrier.restrict(&sub.inclusion, &sub.retraction)?;
        let (zeroth, chains) = Dga::graded(&one_forms, cap)?;
        let base = coring.base.clone();
        let da = base.dim();

        let mut powers = vec![TensorChain::power(carrier, 1)?, coring.cc.clone(), coring.ccc.clone()];
        for n in 4..=cap {
            powers.push(TensorChain::power(carrier, n)?);
        }
        let embeddings: Vec<Matrix<F>> = chains
            .iter()
            .enumerate()
            .map(|(k, chain)| chain.induced_unchecked(&vec![&sub.inclusion; k + 1], &powers[k]))
            .collect();

        let mut d = Vec::with_capacity(cap);
        let d0 = Matrix::from_fn_cols(coring.dim(), da, |a| {
            let e = unit_vec(da, a);
            let mut v = carrier.right_by(&e).apply(g);
            axpy(&mut v, &F::one().neg(), &carrier.left_by(&e).apply(g));
            v
        });
        let corestrict = |n: usize, y: &Matrix<F>| -> Result<Matrix<F>> {
            let target = Subspace::from_injective(embeddings[n].clone())
                .ok_or_else(|| Error::invalid("tensor powers of Ω¹ do not embed into those of C"))?;
            target
                .corestrict(y)
                .map_err(|column| Error::Containment { what: format!("Roiter differential in degree {n}"), column })
        };
        d.push(corestrict(0, &d0)?);
        for n in 1..cap {
            let (src, dst) = (&powers[n - 1], &powers[n]);
            let y = Matrix::from_fn_cols(dst.dim(), chains[n - 1].dim(), |j| {
                roiter_formula(coring, g, src, dst, &embeddings[n - 1].col(j))
            });
            d.push(corestrict(n, &y)?);
        }
        Ok(Roiter { coring: coring.clone(), g: g.to_vec(), flavor, sub, dga: Dga { base, cap, zeroth, chains, d } })
    }

    /// `Φ: Ag ⊕ Ω¹ → C`, `ag + ω ↦ a·g + ω`, and its inverse
    /// `Ψ: c ↦ ε_C(c) ⊕ (c − ε_C(c)·g)`.
    pub fn canonical_maps(&self) -> Result<(Matrix<F>, Matrix<F>)> {
        if self.flavor != Flavor::Grouplike {
            return Err(Error::invalid("canonical maps need a group-like element"));
        }
        let c = &self.coring;
        let da = c.base.dim();
        let ag = Matrix::from_fn_cols(c.dim(), da, |a| c.carrier.left_by(&unit_vec(da, a)).apply(&self.g));
        let phi = ag.hstack(&self.sub.inclusion);
        let proj = Matrix::identity(c.dim()).minus(&ag.mul(&c.cou));
        let psi = c.cou.vstack(&self.sub.retraction.mul(&proj));
        Ok((phi, psi))
    }
}

/// `g⊗c + (−1)^{n+1} c⊗g + Σ_i (−1)^i c¹⊗…⊗Δ_C(cⁱ)⊗…⊗cⁿ` for `c ∈ C^{⊗_A n}`.
fn roiter_formula<F: Field>(coring: &Coring<F>, g: &[F], src: &TensorChain<F>, dst: &TensorChain<F>, v: &[F]) -> Vec<F> {
    let n = src.factors.len();
    let dc = coring.dim();
    let mut out = vec![F::zero(); dst.dim()];
    let sign = |k: usize, x: &F| if k.is_multiple_of(2) { x.clone() } else { x.neg() };
    for (idx, x) in src.terms(v) {
        let units: Vec<Vec<F>> = idx.iter().map(|&i| unit_vec(dc, i)).collect();
        let mut front: Vec<&[F]> = vec![g];
        front.extend(units.iter().map(Vec::as_slice));
        axpy(&mut out, &x, &dst.project(&front));
        let mut back: Vec<&[F]> = units.iter().map(Vec::as_slice).collect();
        back.push(g);
        axpy(&mut out, &sign(n + 1, &x), &dst.project(&back));
        for i in 0..n {
            for (pq, y) in coring.cc.terms(&coring.cop.col(idx[i])) {
                let mut full = idx[..i].to_vec();
                full.extend(pq);
                full.extend_from_slice(&idx[i + 1..]);
                axpy(&mut out, &sign(i + 1, &x.mul(&y)), &dst.project_basis(&full));
            }
        }
    }
    out
}

/// `C = Ag ⊕ Ω¹` with `(ag + ω)a' = aa'g + a·da' + ωa'`,
/// `Δ(ag) = ag⊗g`, `Δ(ω) = g⊗ω + ω⊗g − dω` and `ε(ag + ω) = a`.
pub fn coring_from_dga<F: Field>(dga: &Dga<F>) -> Result<(Coring<F>, Vec<F>)> {
    if dga.cap < 2 {
        return Err(Error::invalid("a coring from a DGA needs forms up to degree 2"));
    }
    let a = &dga.base;
    let da = a.dim();
    let omega = dga.one_forms();
    let d1 = omega.dim;
    let dc = da + d1;
    let (ol, or) = (omega.left.as_ref().expect("bimodule"), omega.right.as_ref().expect("bimodule"));
    let left = (0..da).map(|k| block_diag(&a.lmul(k), &ol[k])).collect();
    let right = (0..da)
        .map(|k| {
            let d_ek = dga.d[0].col(k);
            Matrix::from_fn_cols(dc, dc, |c| {
                if c < da {
                    let mut v = a.rmul(k).col(c);
                    v.extend(ol[c].apply(&d_ek));
                    v
                } else {
                    let mut v = vec![F::zero(); da];
                    v.extend(or[k].col(c - da));
                    v
                }
            })
        })
        .collect();
    let carrier = Module { dim: dc, base: a.clone(), left: Some(left), right: Some(right) };
    let (cc, ccc) = Coring::tensor_data(&carrier)?;

    let mut g = a.one();
    g.resize(dc, F::zero());
    let forms = Matrix::zeros(da, d1).vstack(&Matrix::identity(d1));
    let two_forms = dga.chains[1].induced_unchecked(&[&forms, &forms], &cc);
    let d1_in_cc = two_forms.mul(&dga.d[1]);
    let cop = Matrix::from_fn_cols(cc.dim(), dc, |c| {
        let e = unit_vec(dc, c);
        if c < da {
            cc.project(&[&e, &g])
        } else {
            let mut v = cc.project(&[&g, &e]);
            axpy(&mut v, &F::one(), &cc.project(&[&e, &g]));
            axpy(&mut v, &F::one().neg(), &d1_in_cc.col(c - da));
            v
        }
    });
    let cou = Matrix::identity(da).hstack(&Matrix::zeros(da, d1));
    Ok((Coring::assemble(carrier, cc, ccc, cop, cou)?, g))
}

/// Checks that `φ¹: Ω¹ → Ω'¹` extends degreewise to an isomorphism of the
/// truncated DGAs: each `φ^n = φ¹⊗_A…⊗_A φ¹` is bijective and commutes with `d`
/// and the products. Degree zero is the identity of `A`.
pub fn check_dga_isomorphism<F: Field>(src: &Dga<F>, dst: &Dga<F>, phi1: &Matrix<F>) -> Report {
    let mut r = Report::new("DGA isomorphism");
    if src.cap != dst.cap || *src.base != *dst.base || phi1.shape() != (dst.dim(1), src.dim(1)) {
        r.record("shape", "φ¹: Ω¹ → Ω'¹ over one base and cap", false, None);
        return r;
    }
    let w = src.one_forms().left_linearity_defect(dst.one_forms(), phi1)
        .or_else(|| src.one_forms().right_linearity_defect(dst.one_forms(), phi1));
    r.record("bimodule map", "φ¹(aωb) = aφ¹(ω)b", w.is_none(), w);
    let mut phi = vec![Matrix::identity(src.base.dim())];
    for n in 1..=src.cap {
        let maps = vec![phi1; n];
        phi.push(src.chains[n - 1].induced_unchecked(&maps, &dst.chains[n - 1]));
    }
    for (n, p) in phi.iter().enumerate().skip(1) {
        r.record(format!("bijective in degree {n}"), "φ^n invertible", p.inverse().is_some(), None);
    }
    for n in 0..src.cap {
        r.equal_maps(
            &format!("commutes with d in degree {n}"),
            "d'∘φ^n = φ^{n+1}∘d",
            &dst.d[n].mul(&phi[n]),
            &phi[n + 1].mul(&src.d[n]),
            &[src.dim(n)],
        );
    }
    for p in 1..src.cap {
        for q in 1..=src.cap - p {
            r.equal_maps(
                &format!("multiplicative in degrees ({p}, {q})"),
                "φ^{p+q}(ωω') = φ^p(ω)φ^q(ω')",
                &phi[p + q].mul(&src.product(p, q)),
                &dst.product(p, q).mul(&phi[p].kron(&phi[q])),
                &[src.dim(p), src.dim(q)],
            );
        }
    }
    r
}
