//! C-rings (monoids among `C`-bicomodules), their characters and modules, the
//! coderivation complex of a C-ring with a character, and flat connections.

use std::sync::Arc;

use crate::algebra::{check_algebra_character, Algebra, Module};
use crate::coalgebra::{Coalgebra, Comodule};
use crate::comodule_connection::{Coderivation, ComoduleConnection, Side};
use crate::cotensor::CotensorChain;
use crate::entwining::{EntwinedModule, Entwining};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{kron_apply, solve_many, unit_vec, Matrix, Subspace};
use crate::report::Report;

#[derive(Debug, Clone)]
pub struct CRing<F> {
    /// The bicomodule `𝒜`.
    pub carrier: Comodule<F>,
    /// `𝒜□𝒜`
    pub square: CotensorChain<F>,
    /// `(𝒜□𝒜)□𝒜`
    pub cube: CotensorChain<F>,
    /// `μ: 𝒜□𝒜 → 𝒜`
    pub mul: Matrix<F>,
    /// `η: C → 𝒜`
    pub unit: Matrix<F>,
}

/// A right comodule `M` with `ρ_M: M□𝒜 → M`.
#[derive(Debug, Clone)]
pub struct CRingModule<F> {
    pub comodule: Comodule<F>,
    /// `M□𝒜`
    pub domain: CotensorChain<F>,
    pub action: Matrix<F>,
}

impl<F: Field> CRingModule<F> {
    pub fn new(ring: &CRing<F>, comodule: Comodule<F>, action: Matrix<F>) -> Result<Self> {
        if comodule.right.is_none() {
            return Err(Error::invalid("a C-ring module is a right comodule"));
        }
        let domain = CotensorChain::new(&[&comodule, &ring.carrier])?;
        if action.shape() != (comodule.dim, domain.dim()) {
            return Err(Error::Shape { context: "C-ring action".into(), left: action.shape(), right: (comodule.dim, domain.dim()) });
        }
        Ok(CRingModule { comodule, domain, action })
    }

    pub fn dim(&self) -> usize {
        self.comodule.dim
    }
}

fn bicomodule_of<F: Field>(c: &Arc<Coalgebra<F>>) -> Comodule<F> {
    Comodule { dim: c.dim(), coalgebra: c.clone(), right: Some(c.comul.clone()), left: Some(c.comul.clone()) }
}

impl<F: Field> CRing<F> {
    pub fn new(carrier: Comodule<F>, mul: Matrix<F>, unit: Matrix<F>) -> Result<Self> {
        if carrier.left.is_none() || carrier.right.is_none() {
            return Err(Error::invalid("a C-ring lives on a bicomodule"));
        }
        let square = CotensorChain::power(&carrier, 2)?;
        let cube = CotensorChain::power(&carrier, 3)?;
        let (da, dc) = (carrier.dim, carrier.coalgebra.dim());
        if mul.shape() != (da, square.dim()) {
            return Err(Error::Shape { context: "C-ring multiplication".into(), left: mul.shape(), right: (da, square.dim()) });
        }
        if unit.shape() != (da, dc) {
            return Err(Error::Shape { context: "C-ring unit".into(), left: unit.shape(), right: (da, dc) });
        }
        Ok(CRing { carrier, square, cube, mul, unit })
    }

    pub fn coalgebra(&self) -> &Arc<Coalgebra<F>> {
        &self.carrier.coalgebra
    }

    pub fn dim(&self) -> usize {
        self.carrier.dim
    }

    /// `μ` on the ambient `𝒜⊗𝒜`, valid on `𝒜□𝒜`.
    fn mul_ambient(&self) -> Matrix<F> {
        self.mul.mul(&self.square.retraction())
    }

    /// `C⊗C` with `c⊗c'⊗c'' ↦ ε(c')c⊗c''`, unit `Δ` and character `ε⊗ε`.
    pub fn cotensor_square(c: &Arc<Coalgebra<F>>) -> Result<(Self, Matrix<F>)> {
        let ic = Matrix::identity(c.dim());
        let carrier = Comodule { dim: c.dim() * c.dim(), coalgebra: c.clone(), right: Some(ic.kron(&c.comul)), left: Some(c.comul.kron(&ic)) };
        let square = CotensorChain::power(&carrier, 2)?;
        let mul = Matrix::kron_all(&[&ic, &c.counit, &c.counit, &ic]).mul(&square.inclusion());
        let ring = Self::new(carrier, mul, c.comul.clone())?;
        Ok((ring, c.counit.kron(&c.counit)))
    }

    /// `𝒜 = C⊗A` with `^𝒜ρ = Δ⊗A`, `ρ^𝒜 = (C⊗ψ)∘(Δ⊗A)`, `c⊗a⊗a' ↦ c⊗aa'` and
    /// `η(c) = c⊗1`. With a character `χ` of `A`, also `κ = ε⊗χ`.
    pub fn from_entwining(e: &Entwining<F>, chi: Option<&Matrix<F>>) -> Result<(Self, Option<Matrix<F>>)> {
        let bowtie = e.check_bowtie();
        if !bowtie.passed() {
            return Err(Error::invalid(format!("not an entwining: {}", bowtie.failed_axioms().join(", "))));
        }
        let (a, c) = (&*e.algebra, &e.coalgebra);
        let (ia, ic) = (Matrix::identity(a.dim()), Matrix::identity(c.dim()));
        let left = c.comul.kron(&ia);
        let right = ic.kron(&e.psi).mul(&left);
        let carrier = Comodule { dim: c.dim() * a.dim(), coalgebra: c.clone(), right: Some(right), left: Some(left) };
        let square = CotensorChain::power(&carrier, 2)?;
        let mul = ic.kron(&a.mul).mul(&Matrix::kron_all(&[&ic, &ia, &c.counit, &ia])).mul(&square.inclusion());
        let ring = Self::new(carrier, mul, ic.kron(&a.unit))?;
        let kappa = match chi {
            None => None,
            Some(chi) => {
                let r = check_algebra_character(a, chi);
                if !r.passed() {
                    return Err(Error::invalid(format!("not a character of A: {}", r.failed_axioms().join(", "))));
                }
                Some(c.counit.kron(chi))
            }
        };
        Ok((ring, kappa))
    }

    pub fn check(&self) -> Report {
        let mut r = Report::new("C-ring");
        r.absorb("bicomodule", self.carrier.check());
        let c = self.coalgebra();
        let da = self.dim();
        let sq = self.square.comodule();
        let left = sq.left_colinearity_defect(&self.carrier, &self.mul);
        let right = sq.right_colinearity_defect(&self.carrier, &self.mul);
        r.record("multiplication bicolinear", "μ is a bicomodule map", left.is_none() && right.is_none(), left.or(right).map(|k| vec![k]));
        let cc = bicomodule_of(c);
        let left = cc.left_colinearity_defect(&self.carrier, &self.unit);
        let right = cc.right_colinearity_defect(&self.carrier, &self.unit);
        r.record("unit bicolinear", "η is a bicomodule map", left.is_none() && right.is_none(), left.or(right).map(|k| vec![k]));

        let mu = self.mul_ambient();
        let ia = Matrix::identity(da);
        let n = self.cube.dim();
        let outer = self.square.corestrict(&self.mul.kron(&ia).mul(&self.cube.levels[1].sub.inclusion), "μ□𝒜");
        let inner = self.square.corestrict(&ia.kron(&mu).mul(&self.cube.inclusion()), "𝒜□μ");
        match (outer, inner) {
            (Ok(o), Ok(i)) => {
                r.equal_maps("associativity", "μ∘(μ□𝒜) = μ∘(𝒜□μ)", &self.mul.mul(&o), &self.mul.mul(&i), &[n]);
            }
            (Err(e), _) | (_, Err(e)) => {
                r.record("associativity", "μ∘(μ□𝒜) = μ∘(𝒜□μ)", false, None).note = Some(e.to_string());
            }
        }
        for (axiom, anchor, ambient) in [
            ("right unit", "μ∘(𝒜□η)∘ρ^𝒜 = 𝒜", ia.kron(&self.unit).mul(self.carrier.right_coaction())),
            ("left unit", "μ∘(η□𝒜)∘^𝒜ρ = 𝒜", self.unit.kron(&ia).mul(self.carrier.left_coaction())),
        ] {
            match self.square.corestrict(&ambient, axiom) {
                Ok(x) => {
                    r.equal_maps(axiom, anchor, &self.mul.mul(&x), &ia, &[da]);
                }
                Err(e) => r.record(axiom, anchor, false, None).note = Some(e.to_string()),
            }
        }
        r
    }

    /// `κ∘μ = κ□κ` and `κ∘η = ε`; `κ□κ` is `κ⊗κ` on the cotensor inclusion, read in `k⊗k = k`.
    pub fn check_character(&self, kappa: &Matrix<F>) -> Report {
        let mut r = Report::new("character");
        if kappa.shape() != (1, self.dim()) {
            r.record("shape", "κ: 𝒜 → k", false, None);
            return r;
        }
        let kk = kappa.kron(kappa).mul(&self.square.inclusion());
        r.equal_maps("multiplicative", "κ∘μ = κ□κ", &kappa.mul(&self.mul), &kk, &[self.square.dim()]);
        r.equal_maps("unital", "κ∘η = ε", &kappa.mul(&self.unit), &self.coalgebra().counit, &[self.coalgebra().dim()]);
        r.note("multiplicative", "κ□κ evaluated as κ⊗κ on the cotensor inclusion, k⊗k = k");
        r
    }

    /// `C` as a right module through `C□𝒜 ≅ 𝒜 → C`, `x ↦ (κ⊗C)∘ρ^𝒜(x)`.
    pub fn coalgebra_module(&self, kappa: &Matrix<F>) -> Result<CRingModule<F>> {
        let c = self.coalgebra();
        let regular = c.regular();
        let ic = Matrix::identity(c.dim());
        let domain = CotensorChain::new(&[&regular, &self.carrier])?;
        let to_a = c.counit.kron(&Matrix::identity(self.dim())).mul(&domain.inclusion());
        let action = kappa.kron(&ic).mul(self.carrier.right_coaction()).mul(&to_a);
        CRingModule::new(self, regular, action)
    }

    pub fn check_module(&self, m: &CRingModule<F>) -> Report {
        let mut r = Report::new("C-ring module");
        r.absorb("comodule", m.comodule.check());
        let dom = m.domain.comodule();
        let defect = dom.right_colinearity_defect(&m.comodule, &m.action);
        r.record("action colinear", "ρ^M∘ρ_M = (ρ_M⊗C)∘ρ^{M□𝒜}", defect.is_none(), defect.map(|k| vec![k]));

        let (dm, da) = (m.dim(), self.dim());
        let (im, ia) = (Matrix::identity(dm), Matrix::identity(da));
        let three = match CotensorChain::new(&[&m.comodule, &self.carrier, &self.carrier]) {
            Ok(t) => t,
            Err(e) => {
                r.record("associativity", "ρ_M∘(ρ_M□𝒜) = ρ_M∘(M□μ)", false, None).note = Some(e.to_string());
                return r;
            }
        };
        let outer = m.domain.corestrict(&m.action.kron(&ia).mul(&three.levels[1].sub.inclusion), "ρ_M□𝒜");
        let inner = m.domain.corestrict(&im.kron(&self.mul_ambient()).mul(&three.inclusion()), "M□μ");
        match (outer, inner) {
            (Ok(o), Ok(i)) => {
                r.equal_maps("associativity", "ρ_M∘(ρ_M□𝒜) = ρ_M∘(M□μ)", &m.action.mul(&o), &m.action.mul(&i), &[three.dim()]);
            }
            (Err(e), _) | (_, Err(e)) => r.record("associativity", "ρ_M∘(ρ_M□𝒜) = ρ_M∘(M□μ)", false, None).note = Some(e.to_string()),
        }
        let ambient = im.kron(&self.unit).mul(m.comodule.right_coaction());
        match m.domain.corestrict(&ambient, "M□η") {
            Ok(x) => {
                r.equal_maps("unit", "ρ_M∘(M□η)∘ρ^M = M", &m.action.mul(&x), &im, &[dm]);
            }
            Err(e) => r.record("unit", "ρ_M∘(M□η)∘ρ^M = M", false, None).note = Some(e.to_string()),
        }
        r
    }
}

/// An entwined module as a module over the C-ring of the entwining:
/// `M□(C⊗A) ≅ M⊗A` through `ρ^M⊗A`, then the `A`-action.
pub fn cring_module_from_entwined<F: Field>(ring: &CRing<F>, m: &EntwinedModule<F>) -> Result<CRingModule<F>> {
    let c = ring.coalgebra();
    let da = ring.dim() / c.dim().max(1);
    let act = m.module.right_action().ok_or_else(|| Error::invalid("entwined module without a right action"))?;
    let domain = CotensorChain::new(&[&m.comodule, &ring.carrier])?;
    let strip = Matrix::kron_all(&[&Matrix::identity(m.dim()), &c.counit, &Matrix::identity(da)]);
    let action = act.mul(&strip).mul(&domain.inclusion());
    CRingModule::new(ring, m.comodule.clone(), action)
}

/// The inverse of [`cring_module_from_entwined`].
pub fn entwined_from_cring_module<F: Field>(e: &Entwining<F>, m: &CRingModule<F>) -> Result<EntwinedModule<F>> {
    let da = e.algebra.dim();
    let spread = m.comodule.right_coaction().kron(&Matrix::identity(da));
    let act = m.action.mul(&m.domain.corestrict(&spread, "ρ^M⊗A")?);
    EntwinedModule::new(Module::from_right_action(&e.algebra, &act)?, m.comodule.clone())
}

/// `Ā = coker η` with `π`, a left colinear section `σ`, and the differentials
/// `λ_n: Ā^{□n} → Ā^{□n-1}` for `n ≤ cap` (with `Ā^{□0} = C`).
#[derive(Debug, Clone)]
pub struct CoderivationComplex<F> {
    pub quotient: Comodule<F>,
    /// `π: 𝒜 → Ā`
    pub projection: Matrix<F>,
    /// `σ: Ā → 𝒜`, with `σ∘π = 𝒜 − (η⊗κ)∘^𝒜ρ`.
    pub section: Matrix<F>,
    /// `Ā^{□n}` for `n = 1..=cap`.
    pub chains: Vec<CotensorChain<F>>,
    maps: Vec<Matrix<F>>,
    /// `(Ā, λ_1, λ_2)`
    pub coderivation: Coderivation<F>,
}

impl<F: Field> CoderivationComplex<F> {
    pub fn new(ring: &CRing<F>, kappa: &Matrix<F>, cap: usize) -> Result<Self> {
        if cap < 2 {
            return Err(Error::invalid("the coderivation complex needs degree 2 at least"));
        }
        for (what, r) in [("C-ring", ring.check()), ("character", ring.check_character(kappa))] {
            if !r.passed() {
                return Err(Error::invalid(format!("{what} rejected: {}", r.failed_axioms().join(", "))));
            }
        }
        let c = ring.coalgebra();
        let (da, dc) = (ring.dim(), c.dim());
        let (ia, ic) = (Matrix::identity(da), Matrix::identity(dc));
        let idem = ia.minus(&ring.unit.kron(kappa).mul(ring.carrier.left_coaction()));
        let sub = image(&idem);
        let projection = sub.retraction.mul(&idem);
        let section = sub.inclusion.clone();
        let rho_r = projection.kron(&ic).mul(ring.carrier.right_coaction()).mul(&section);
        let rho_l = ic.kron(&projection).mul(ring.carrier.left_coaction()).mul(&section);
        let quotient = Comodule { dim: sub.dim(), coalgebra: c.clone(), right: Some(rho_r), left: Some(rho_l) };

        let mut chains = Vec::with_capacity(cap);
        for n in 1..=cap {
            chains.push(CotensorChain::power(&quotient, n)?);
        }
        let first = kappa.kron(&ic).mul(ring.carrier.right_coaction()).minus(&ic.kron(kappa).mul(ring.carrier.left_coaction()));
        let mut maps = vec![first.mul(&section)];
        let mu = ring.mul_ambient();
        let pi_mu = projection.mul(&mu);
        for n in 2..=cap {
            let source = CotensorChain::power(&ring.carrier, n)?;
            let big_pi = source.induced(&vec![&projection; n], &chains[n - 1])?;
            if big_pi.rank() != chains[n - 1].dim() {
                return Err(Error::invalid(format!("π^{{□{n}}} is not onto")));
            }
            let count = source.dim();
            let amb = Matrix::from_fn_cols(chains[n - 2].ambient_dim(), count, |j| {
                let v = source.include(&unit_vec(count, j));
                let mut out = kron_apply(&prepend(kappa, &projection, n - 1), &v);
                for l in 1..n {
                    let mut factors: Vec<&Matrix<F>> = vec![&projection; l - 1];
                    factors.push(&pi_mu);
                    factors.extend(std::iter::repeat_n(&projection, n - l - 1));
                    let term = kron_apply(&factors, &v);
                    let sign = if l % 2 == 1 { F::one().neg() } else { F::one() };
                    crate::matrix::axpy(&mut out, &sign, &term);
                }
                let mut factors: Vec<&Matrix<F>> = vec![&projection; n - 1];
                factors.push(kappa);
                let sign = if n % 2 == 1 { F::one().neg() } else { F::one() };
                crate::matrix::axpy(&mut out, &sign, &kron_apply(&factors, &v));
                out
            });
            let rhs = chains[n - 2].corestrict(&amb, "alternating sum")?;
            let lam = solve_many(&big_pi.transpose(), &rhs.transpose())
                .ok_or_else(|| Error::invalid(format!("λ_{n} does not factor through π^{{□{n}}}")))?
                .transpose();
            if let Some(col) = lam.mul(&big_pi).first_differing_col(&rhs) {
                return Err(Error::Containment { what: format!("λ_{n}∘π^{{□{n}}}"), column: col });
            }
            maps.push(lam);
        }
        let coderivation = Coderivation::new(quotient.clone(), maps[0].clone(), Some(maps[1].clone()))?;
        Ok(CoderivationComplex { quotient, projection, section, chains, maps, coderivation })
    }

    pub fn cap(&self) -> usize {
        self.maps.len()
    }

    /// `λ_n: Ā^{□n} → Ā^{□n-1}` for `1 ≤ n ≤ cap`.
    pub fn lambda(&self, n: usize) -> &Matrix<F> {
        &self.maps[n - 1]
    }

    pub fn check(&self, ring: &CRing<F>, kappa: &Matrix<F>) -> Report {
        let mut r = Report::new("coderivation complex");
        let c = ring.coalgebra();
        let ia = Matrix::identity(ring.dim());
        let ic = Matrix::identity(c.dim());
        let idem = ia.minus(&ring.unit.kron(kappa).mul(ring.carrier.left_coaction()));
        r.equal_maps("section", "σ∘π = 𝒜 − (η⊗κ)∘^𝒜ρ", &self.section.mul(&self.projection), &idem, &[ring.dim()]);
        let left = self.quotient.left_coaction().mul(&self.projection);
        r.equal_maps("section left colinear", "^Āρ∘π = (C⊗π)∘^𝒜ρ", &left, &ic.kron(&self.projection).mul(ring.carrier.left_coaction()), &[ring.dim()]);
        let right = self.quotient.right_coaction().mul(&self.projection);
        r.equal_maps("π right colinear", "ρ^Ā∘π = (π⊗C)∘ρ^𝒜", &right, &self.projection.kron(&ic).mul(ring.carrier.right_coaction()), &[ring.dim()]);
        r.zero_map("ε∘λ = 0", "ε∘λ_1 = 0", &c.counit.mul(self.lambda(1)), &[self.quotient.dim]);
        for n in 2..=self.cap() {
            let axiom = format!("λ∘λ = 0 in degree {n}");
            r.zero_map(&axiom, "λ_{n-1}∘λ_n = 0", &self.lambda(n - 1).mul(self.lambda(n)), &[self.chains[n - 1].dim()]);
        }
        r.absorb("extended coderivation", self.coderivation.check());
        r
    }

    /// `M□π: M□𝒜 → M□Ā` and `M□κ: M□𝒜 → M`.
    fn module_maps(&self, m: &CRingModule<F>, kappa: &Matrix<F>) -> Result<(CotensorChain<F>, Matrix<F>, Matrix<F>)> {
        let target = CotensorChain::new(&[&m.comodule, &self.quotient])?;
        let im = Matrix::identity(m.dim());
        let m_pi = m.domain.induced(&[&im, &self.projection], &target)?;
        let m_kappa = im.kron(kappa).mul(&m.domain.inclusion());
        Ok((target, m_pi, m_kappa))
    }

    /// `∇` with `∇∘(M□π) = ρ_M − M□κ`; the factorisation is verified.
    pub fn connection_from_action(&self, kappa: &Matrix<F>, m: &CRingModule<F>) -> Result<ComoduleConnection<F>> {
        let (_, m_pi, m_kappa) = self.module_maps(m, kappa)?;
        let rhs = m.action.minus(&m_kappa);
        let nabla = solve_many(&m_pi.transpose(), &rhs.transpose())
            .ok_or_else(|| Error::invalid("ρ_M − M□κ does not factor through M□π"))?
            .transpose();
        if let Some(col) = nabla.mul(&m_pi).first_differing_col(&rhs) {
            return Err(Error::Containment { what: "∇∘(M□π) = ρ_M − M□κ".into(), column: col });
        }
        ComoduleConnection::new(Side::Right, m.comodule.clone(), &self.coderivation, nabla)
    }

    /// `ρ_M = ∇∘(M□π) + M□κ` for a flat connection.
    pub fn action_from_connection(&self, ring: &CRing<F>, kappa: &Matrix<F>, conn: &ComoduleConnection<F>) -> Result<CRingModule<F>> {
        if conn.side != Side::Right {
            return Err(Error::invalid("C-ring actions correspond to connections in right comodules"));
        }
        let curvature = conn.curvature(&self.coderivation)?;
        if let Some(column) = curvature.witness {
            return Err(Error::Curvature { column });
        }
        self.action_from_connection_unchecked(ring, kappa, conn)
    }

    /// The same formula without the flatness check, for probing non-flat connections.
    pub fn action_from_connection_unchecked(&self, ring: &CRing<F>, kappa: &Matrix<F>, conn: &ComoduleConnection<F>) -> Result<CRingModule<F>> {
        let domain = CotensorChain::new(&[&conn.comodule, &ring.carrier])?;
        let probe = CRingModule { comodule: conn.comodule.clone(), domain, action: Matrix::zeros(conn.comodule.dim, 0) };
        let (_, m_pi, m_kappa) = self.module_maps(&probe, kappa)?;
        CRingModule::new(ring, conn.comodule.clone(), conn.nabla.mul(&m_pi).plus(&m_kappa))
    }
}

fn prepend<'a, F>(head: &'a Matrix<F>, rest: &'a Matrix<F>, count: usize) -> Vec<&'a Matrix<F>> {
    let mut v = vec![head];
    v.extend(std::iter::repeat_n(rest, count));
    v
}

/// The column space of `m`, spanned by its pivot columns.
fn image<F: Field>(m: &Matrix<F>) -> Subspace<F> {
    let mut cols = Vec::new();
    let mut current = Matrix::zeros(m.rows(), 0);
    for j in 0..m.cols() {
        let next = current.hstack(&m.columns(&[j]));
        if next.rank() > current.rank() {
            cols.push(j);
            current = next;
        }
    }
    Subspace::from_injective(m.columns(&cols)).expect("pivot columns are independent")
}

/// The algebra `k` seen as the trivial entwining partner of `C`.
pub fn trivial_entwining<F: Field>(c: &Arc<Coalgebra<F>>) -> Entwining<F> {
    Entwining { algebra: Arc::new(Algebra::ground()), coalgebra: c.clone(), psi: Matrix::identity(c.dim()) }
}
