//! Coderivations, connections in comodules and bicomodules, torsion and curvature.

use std::sync::Arc;

use crate::coalgebra::{Coalgebra, Comodule};
use crate::cotensor::CotensorChain;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{kron_compose, solve, Matrix, Subspace};
use crate::report::Report;

/// A bicomodule `L` with `λ: L → C` and optionally `λ': L□L → L`.
#[derive(Debug, Clone)]
pub struct Coderivation<F> {
    pub bicomodule: Comodule<F>,
    pub lambda: Matrix<F>,
    /// `L □_C L`
    pub square: CotensorChain<F>,
    pub extension: Option<Matrix<F>>,
}

impl<F: Field> Coderivation<F> {
    pub fn new(bicomodule: Comodule<F>, lambda: Matrix<F>, extension: Option<Matrix<F>>) -> Result<Self> {
        if bicomodule.left.is_none() || bicomodule.right.is_none() {
            return Err(Error::invalid("a coderivation lives on a bicomodule"));
        }
        let (dl, dc) = (bicomodule.dim, bicomodule.coalgebra.dim());
        if lambda.shape() != (dc, dl) {
            return Err(Error::Shape { context: "coderivation".into(), left: lambda.shape(), right: (dc, dl) });
        }
        let square = CotensorChain::power(&bicomodule, 2)?;
        if let Some(ext) = &extension {
            if ext.shape() != (dl, square.dim()) {
                return Err(Error::Shape { context: "extended coderivation".into(), left: ext.shape(), right: (dl, square.dim()) });
            }
        }
        Ok(Coderivation { bicomodule, lambda, square, extension })
    }

    pub fn coalgebra(&self) -> &Arc<Coalgebra<F>> {
        &self.bicomodule.coalgebra
    }

    pub fn dim(&self) -> usize {
        self.bicomodule.dim
    }

    fn require_extension(&self) -> Result<&Matrix<F>> {
        self.extension.as_ref().ok_or_else(|| Error::invalid("this needs an extended coderivation"))
    }

    pub fn check(&self) -> Report {
        let mut r = Report::new("coderivation");
        r.absorb("bicomodule", self.bicomodule.check());
        let c = &**self.coalgebra();
        let (dl, dc) = (self.dim(), c.dim());
        let (il, ic) = (Matrix::identity(dl), Matrix::identity(dc));
        let (left, right) = (self.bicomodule.left_coaction(), self.bicomodule.right_coaction());
        let lam = &self.lambda;

        let lhs = c.comul.mul(lam);
        let rhs = kron_compose(&[&ic, lam], left).plus(&kron_compose(&[lam, &ic], right));
        r.equal_maps("coderivation", "Δ∘λ = (C⊗λ)∘^Lρ + (λ⊗C)∘ρ^L", &lhs, &rhs, &[dl]);
        r.zero_map("counit kills λ", "ε∘λ = 0", &c.counit.mul(lam), &[dl]);

        let Some(ext) = &self.extension else { return r };
        let sq = self.square.comodule();
        let incl = self.square.inclusion();
        let lhs = left.mul(ext);
        let rhs = kron_compose(&[&ic, ext], sq.left_coaction()).plus(&lam.kron(&il).mul(&incl));
        r.equal_maps("extension: left", "^Lρ∘λ' = (C⊗λ')∘(^Lρ□L) + λ□L", &lhs, &rhs, &[self.square.dim()]);
        let lhs = right.mul(ext);
        let rhs = kron_compose(&[ext, &ic], sq.right_coaction()).minus(&il.kron(lam).mul(&incl));
        r.equal_maps("extension: right", "ρ^L∘λ' = (λ'⊗C)∘(L□ρ^L) − L□λ", &lhs, &rhs, &[self.square.dim()]);
        r.zero_map("complex", "λ∘λ' = 0", &lam.mul(ext), &[self.square.dim()]);
        r
    }
}

/// `L(C) = C⊗C⁺` with `λ(c⊗d) = ε(c)d` and `λ'(c⊗c'⊗c'') = ε(c)c'⊗c''`.
#[derive(Debug, Clone)]
pub struct Universal<F> {
    pub coalgebra: Arc<Coalgebra<F>>,
    /// `C⁺ = ker ε`
    pub plus: Subspace<F>,
    pub coderivation: Coderivation<F>,
    /// `C⊗C → L(C)`, `c⊗d ↦ c⊗d − Δ(c)ε(d)`, which identifies `coker Δ` with `L(C)`.
    pub projection: Matrix<F>,
    /// `L□L → C⊗C⁺⊗C⁺`, the coordinates `c⊗c'⊗c''` read through `ρ^L⊗C⁺`.
    pub square_coords: Matrix<F>,
}

impl<F: Field> Universal<F> {
    pub fn new(c: &Arc<Coalgebra<F>>) -> Result<Self> {
        let plus = c.counit_kernel()?;
        let (dc, p) = (c.dim(), plus.dim());
        let (ic, ip) = (Matrix::identity(dc), Matrix::identity(p));
        let into_cc = ic.kron(&plus.inclusion);
        let left = c.comul.kron(&ip);
        let ambient = kron_compose(&[&ic, &c.comul], &into_cc).minus(&kron_compose(&[&c.comul, &ic], &into_cc));
        let target = Subspace { inclusion: Matrix::kron_all(&[&ic, &plus.inclusion, &ic]), retraction: Matrix::kron_all(&[&ic, &plus.retraction, &ic]) };
        let right = target
            .corestrict(&ambient)
            .map_err(|column| Error::Containment { what: "right coaction of L(C)".into(), column })?;
        let bicomodule = Comodule { dim: dc * p, coalgebra: c.clone(), right: Some(right), left: Some(left) };
        let lambda = c.counit.kron(&plus.inclusion);

        let square = CotensorChain::power(&bicomodule, 2)?;
        let square_coords = Matrix::kron_all(&[&ic, &ip, &c.counit, &ip]).mul(&square.inclusion());
        let extension = Matrix::kron_all(&[&c.counit, &plus.inclusion, &ip]).mul(&square_coords);
        let coderivation = Coderivation::new(bicomodule, lambda, Some(extension))?;

        let onto_plus = Subspace { inclusion: into_cc.clone(), retraction: ic.kron(&plus.retraction) };
        let raw = Matrix::identity(dc * dc).minus(&c.comul.kron(&c.counit));
        let projection = onto_plus
            .corestrict(&raw)
            .map_err(|column| Error::Containment { what: "projection onto L(C)".into(), column })?;
        Ok(Universal { coalgebra: c.clone(), plus, coderivation, projection, square_coords })
    }

    pub fn dim(&self) -> usize {
        self.coderivation.dim()
    }

    /// `L(C)` against `coker Δ`: the projection kills `im Δ`, restricts to the identity on
    /// `C⊗C⁺`, the two together span `C⊗C`, and `λ` becomes `c⊗d ↦ ε(c)d − cε(d)`.
    pub fn check_cokernel(&self) -> Report {
        let mut r = Report::new("L(C) = coker Δ");
        let c = &*self.coalgebra;
        let dc = c.dim();
        let ic = Matrix::identity(dc);
        let into_cc = ic.kron(&self.plus.inclusion);
        r.zero_map("kills the image of Δ", "π∘Δ = 0", &self.projection.mul(&c.comul), &[dc]);
        r.equal_maps("section", "π∘(C⊗C⁺ ⊂ C⊗C) = id", &self.projection.mul(&into_cc), &Matrix::identity(self.dim()), &[self.dim()]);
        let full = c.comul.hstack(&into_cc).rank() == dc * dc;
        r.record("bijective", "C ⊕ C⊗C⁺ → C⊗C is onto", full, None);
        let lam = c.counit.kron(&ic).minus(&ic.kron(&c.counit));
        r.equal_maps("λ on the cokernel", "λ(c⊗d) = ε(c)d − cε(d)", &self.coderivation.lambda.mul(&self.projection), &lam, &[dc, dc]);
        r
    }

    /// `∇ = σ∘(M□(ε⊗C⁺))` for a colinear retraction `σ` of the coaction.
    pub fn connection_from_retraction(&self, side: Side, m: &Comodule<F>, sigma: &Matrix<F>) -> Result<ComoduleConnection<F>> {
        let check = check_retraction(side, m, sigma);
        if !check.passed() {
            return Err(Error::invalid(format!("not a colinear retraction: {}", check.failed_axioms().join(", "))));
        }
        let eps_plus = self.coalgebra.counit.kron(&self.plus.inclusion);
        let im = Matrix::identity(m.dim);
        let domain = ComoduleConnection::domain(side, m, &self.coderivation)?;
        let nabla = match side {
            Side::Right => sigma.mul(&im.kron(&eps_plus)).mul(&domain.inclusion()),
            Side::Left => sigma.mul(&eps_plus.kron(&im)).mul(&domain.inclusion()),
        };
        ComoduleConnection::new(side, m.clone(), &self.coderivation, nabla)
    }

    /// `σ_r = M⊗ε + ∇∘(M⊗π)∘(ρ^M⊗C)` or `σ_l = ε⊗N − ∇∘(π⊗N)∘(C⊗^Nρ)`, verified.
    pub fn retraction_from_connection(&self, conn: &ComoduleConnection<F>) -> Result<Matrix<F>> {
        let check = conn.check(&self.coderivation);
        if !check.passed() {
            return Err(Error::invalid(format!("not a connection: {}", check.failed_axioms().join(", "))));
        }
        let c = &*self.coalgebra;
        let m = &conn.comodule;
        let (im, ic) = (Matrix::identity(m.dim), Matrix::identity(c.dim()));
        let sigma = match conn.side {
            Side::Right => {
                let y = kron_compose(&[&im, &self.projection], &m.right_coaction().kron(&ic));
                let x = conn.domain.corestrict(&y, "(M⊗π)∘(ρ^M⊗C)")?;
                im.kron(&c.counit).plus(&conn.nabla.mul(&x))
            }
            Side::Left => {
                let y = kron_compose(&[&self.projection, &im], &ic.kron(m.left_coaction()));
                let x = conn.domain.corestrict(&y, "(π⊗N)∘(C⊗^Nρ)")?;
                c.counit.kron(&im).minus(&conn.nabla.mul(&x))
            }
        };
        let check = check_retraction(conn.side, m, &sigma);
        if !check.passed() {
            return Err(Error::invalid(format!("derived map is not a colinear retraction: {}", check.failed_axioms().join(", "))));
        }
        Ok(sigma)
    }

    /// The right and left connections in `L(C)` built from a cointegral `δ`:
    /// `∇_r = (C⊗C⊗δ)∘(C⊗Δ⊗C⁺) − Δ⊗δ` and `∇_l = ε⊗C⁺⊗C⁺ + ∇_r`.
    pub fn coseparable_connections(&self, delta: &Matrix<F>) -> Result<(ComoduleConnection<F>, ComoduleConnection<F>)> {
        let c = &*self.coalgebra;
        let check = c.check_cointegral(delta);
        if !check.passed() {
            return Err(Error::invalid(format!("not a cointegral: {}", check.failed_axioms().join(", "))));
        }
        let (dc, p) = (c.dim(), self.plus.dim());
        let (ic, ip) = (Matrix::identity(dc), Matrix::identity(p));
        let incl = &self.plus.inclusion;
        let embed = Matrix::kron_all(&[&ic, incl, incl]);
        let first = Matrix::kron_all(&[&ic, &ic, delta]).mul(&Matrix::kron_all(&[&ic, &c.comul, &ic])).mul(&embed);
        let second = c.comul.kron(&delta.mul(&incl.kron(incl)));
        let onto_plus = Subspace { inclusion: ic.kron(incl), retraction: ic.kron(&self.plus.retraction) };
        let core = onto_plus
            .corestrict(&first.minus(&second))
            .map_err(|column| Error::Containment { what: "coseparable right connection".into(), column })?;
        let lam_ext = Matrix::kron_all(&[&c.counit, incl, &ip]);
        let nabla_r = core.mul(&self.square_coords);
        let nabla_l = lam_ext.plus(&core).mul(&self.square_coords);
        let l = &self.coderivation.bicomodule;
        Ok((
            ComoduleConnection::new(Side::Right, l.clone(), &self.coderivation, nabla_r)?,
            ComoduleConnection::new(Side::Left, l.clone(), &self.coderivation, nabla_l)?,
        ))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Right,
    Left,
}

/// `σ∘ρ = id` and colinearity of `σ: M⊗C → M` (right) or `σ: C⊗N → N` (left).
pub fn check_retraction<F: Field>(side: Side, m: &Comodule<F>, sigma: &Matrix<F>) -> Report {
    let mut r = Report::new("colinear retraction");
    let c = &*m.coalgebra;
    let (dm, dc) = (m.dim, c.dim());
    let (im, ic) = (Matrix::identity(dm), Matrix::identity(dc));
    if sigma.shape() != (dm, dm * dc) || side_coaction(side, m).is_none() {
        r.record("shape", "σ: M⊗C → M", false, None);
        return r;
    }
    match side {
        Side::Right => {
            let rho = m.right_coaction();
            r.equal_maps("retraction", "σ∘ρ^M = M", &sigma.mul(rho), &im, &[dm]);
            let lhs = rho.mul(sigma);
            let rhs = kron_compose(&[sigma, &ic], &im.kron(&c.comul));
            r.equal_maps("colinear", "ρ^M∘σ = (σ⊗C)∘(M⊗Δ)", &lhs, &rhs, &[dm, dc]);
        }
        Side::Left => {
            let rho = m.left_coaction();
            r.equal_maps("retraction", "σ∘^Nρ = N", &sigma.mul(rho), &im, &[dm]);
            let lhs = rho.mul(sigma);
            let rhs = kron_compose(&[&ic, sigma], &c.comul.kron(&im));
            r.equal_maps("colinear", "^Nρ∘σ = (C⊗σ)∘(Δ⊗N)", &lhs, &rhs, &[dc, dm]);
        }
    }
    r
}

fn side_coaction<F>(side: Side, m: &Comodule<F>) -> Option<&Matrix<F>> {
    match side {
        Side::Right => m.right.as_ref(),
        Side::Left => m.left.as_ref(),
    }
}

/// Coefficient matrix of the linear map `X ↦ eqs(X)` on `rows × cols` matrices,
/// acting on row-major vectorisations.
fn linear_system<F: Field>(rows: usize, cols: usize, eqs: impl Fn(&Matrix<F>) -> Vec<Matrix<F>>) -> Matrix<F> {
    Matrix::from_fn_cols(
        eqs(&Matrix::zeros(rows, cols)).iter().map(|m| m.rows() * m.cols()).sum(),
        rows * cols,
        |k| {
            let mut e = Matrix::zeros(rows, cols);
            e.set(k / cols, k % cols, F::one());
            eqs(&e).iter().flat_map(|m| m.row_vecs().into_iter().flatten()).collect()
        },
    )
}

/// A colinear retraction of the coaction, if one exists. `None` means the
/// comodule is not injective.
pub fn find_retraction<F: Field>(side: Side, m: &Comodule<F>) -> Option<Matrix<F>> {
    let rho = side_coaction(side, m)?;
    let c = &*m.coalgebra;
    let (dm, dc) = (m.dim, c.dim());
    let (im, ic) = (Matrix::identity(dm), Matrix::identity(dc));
    let split = match side {
        Side::Right => im.kron(&c.comul),
        Side::Left => c.comul.kron(&im),
    };
    let system = linear_system(dm, dm * dc, |s| {
        let moved = match side {
            Side::Right => kron_compose(&[s, &ic], &split),
            Side::Left => kron_compose(&[&ic, s], &split),
        };
        vec![s.mul(rho), rho.mul(s).minus(&moved)]
    });
    let mut rhs: Vec<F> = im.row_vecs().into_iter().flatten().collect();
    rhs.resize(system.rows(), F::zero());
    solve(&system, &rhs).map(|v| Matrix::from_vec(dm, dm * dc, v))
}

/// A basis of the bicomodule maps `src → dst`.
pub fn bicolinear_maps<F: Field>(src: &Comodule<F>, dst: &Comodule<F>) -> Vec<Matrix<F>> {
    let ic = Matrix::identity(src.coalgebra.dim());
    let system = linear_system(dst.dim, src.dim, |f| {
        vec![
            dst.right_coaction().mul(f).minus(&kron_compose(&[f, &ic], src.right_coaction())),
            dst.left_coaction().mul(f).minus(&kron_compose(&[&ic, f], src.left_coaction())),
        ]
    });
    let ker = system.kernel();
    (0..ker.dim()).map(|k| Matrix::from_vec(dst.dim, src.dim, ker.inclusion.col(k))).collect()
}

/// `∇: M□L → M` (right side) or `∇: L□N → N` (left side).
#[derive(Debug, Clone)]
pub struct ComoduleConnection<F> {
    pub side: Side,
    pub comodule: Comodule<F>,
    pub domain: CotensorChain<F>,
    pub nabla: Matrix<F>,
}

#[derive(Debug, Clone)]
pub struct ComoduleCurvature<F> {
    /// `F_∇ = ∇∘∇_λ`
    pub map: Matrix<F>,
    pub flat: bool,
    pub witness: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct Torsion<F> {
    /// `T = ∇_l − λ' − ∇_r: L□L → L`
    pub map: Matrix<F>,
    pub zero: bool,
    /// Left and right colinearity of `T`.
    pub bicolinear: Report,
}

impl<F: Field> ComoduleConnection<F> {
    fn domain(side: Side, m: &Comodule<F>, d: &Coderivation<F>) -> Result<CotensorChain<F>> {
        match side {
            Side::Right => CotensorChain::new(&[m, &d.bicomodule]),
            Side::Left => CotensorChain::new(&[&d.bicomodule, m]),
        }
    }

    pub fn new(side: Side, comodule: Comodule<F>, d: &Coderivation<F>, nabla: Matrix<F>) -> Result<Self> {
        let domain = Self::domain(side, &comodule, d)?;
        if nabla.shape() != (comodule.dim, domain.dim()) {
            return Err(Error::Shape { context: "comodule connection".into(), left: nabla.shape(), right: (comodule.dim, domain.dim()) });
        }
        Ok(ComoduleConnection { side, comodule, domain, nabla })
    }

    /// The defining identity, plus colinearity for the other coaction when `M` has one.
    pub fn check(&self, d: &Coderivation<F>) -> Report {
        let mut r = Report::new(match self.side {
            Side::Right => "right comodule connection",
            Side::Left => "left comodule connection",
        });
        let m = &self.comodule;
        let ic = Matrix::identity(m.coalgebra.dim());
        let im = Matrix::identity(m.dim);
        let incl = self.domain.inclusion();
        let dom = self.domain.comodule();
        let nd = self.domain.dim();
        match self.side {
            Side::Right => {
                let lhs = m.right_coaction().mul(&self.nabla);
                let rhs = kron_compose(&[&self.nabla, &ic], dom.right_coaction()).plus(&im.kron(&d.lambda).mul(&incl));
                r.equal_maps("connection", "ρ^M∘∇ = (∇⊗C)∘(M□ρ^L) + M□λ", &lhs, &rhs, &[nd]);
                if m.left.is_some() {
                    let defect = dom.left_colinearity_defect(m, &self.nabla);
                    r.record("left colinear", "^Mρ∘∇ = (C⊗∇)∘^{M□L}ρ", defect.is_none(), defect.map(|c| vec![c]));
                }
            }
            Side::Left => {
                let lhs = m.left_coaction().mul(&self.nabla);
                let rhs = kron_compose(&[&ic, &self.nabla], dom.left_coaction()).plus(&d.lambda.kron(&im).mul(&incl));
                r.equal_maps("connection", "^Nρ∘∇ = (C⊗∇)∘(^Lρ□N) + λ□N", &lhs, &rhs, &[nd]);
                if m.right.is_some() {
                    let defect = dom.right_colinearity_defect(m, &self.nabla);
                    r.record("right colinear", "ρ^N∘∇ = (∇⊗C)∘ρ^{L□N}", defect.is_none(), defect.map(|c| vec![c]));
                }
            }
        }
        r
    }

    /// `∇_λ = ∇□L + M□λ'` (right) or `λ'□N − L□∇` (left), corestricted to the
    /// domain of `∇` after verifying the image lands there.
    pub fn nabla_lambda(&self, d: &Coderivation<F>) -> Result<(CotensorChain<F>, Matrix<F>)> {
        let ext = d.require_extension()?;
        let l = &d.bicomodule;
        let m = &self.comodule;
        let il = Matrix::identity(l.dim);
        let im = Matrix::identity(m.dim);
        let sq_ret = d.square.retraction();
        let (three, y) = match self.side {
            Side::Right => {
                let three = CotensorChain::new(&[m, l, l])?;
                let outer = self.nabla.kron(&il).mul(&three.levels[1].sub.inclusion);
                let inner = im.kron(&ext.mul(&sq_ret)).mul(&three.inclusion());
                (three, outer.plus(&inner))
            }
            Side::Left => {
                let three = CotensorChain::new(&[l, l, m])?;
                let outer = ext.kron(&im).mul(&three.levels[1].sub.inclusion);
                let inner = il.kron(&self.nabla.mul(&self.domain.retraction())).mul(&three.inclusion());
                (three, outer.minus(&inner))
            }
        };
        let map = self.domain.corestrict(&y, "image of ∇_λ")?;
        Ok((three, map))
    }

    pub fn curvature(&self, d: &Coderivation<F>) -> Result<ComoduleCurvature<F>> {
        let (_, nl) = self.nabla_lambda(d)?;
        let map = self.nabla.mul(&nl);
        let witness = (0..map.cols()).find(|&j| map.col(j).iter().any(|x| !x.is_zero()));
        Ok(ComoduleCurvature { map, flat: witness.is_none(), witness })
    }
}

/// A particular solution and a basis of the homogeneous solutions.
pub type AffineSpace<F> = (Matrix<F>, Vec<Matrix<F>>);

/// All connections in `m` as `particular + span(homogeneous)`, or `None` if there are none.
pub fn connection_space<F: Field>(side: Side, m: &Comodule<F>, d: &Coderivation<F>) -> Result<Option<AffineSpace<F>>> {
    let domain = ComoduleConnection::domain(side, m, d)?;
    let dom = domain.comodule();
    let ic = Matrix::identity(m.coalgebra.dim());
    let im = Matrix::identity(m.dim);
    let (rows, cols) = (m.dim, domain.dim());
    let (system, target) = match side {
        Side::Right => (
            linear_system(rows, cols, |x| vec![m.right_coaction().mul(x).minus(&kron_compose(&[x, &ic], dom.right_coaction()))]),
            im.kron(&d.lambda).mul(&domain.inclusion()),
        ),
        Side::Left => (
            linear_system(rows, cols, |x| vec![m.left_coaction().mul(x).minus(&kron_compose(&[&ic, x], dom.left_coaction()))]),
            d.lambda.kron(&im).mul(&domain.inclusion()),
        ),
    };
    let rhs: Vec<F> = target.row_vecs().into_iter().flatten().collect();
    let Some(particular) = solve(&system, &rhs) else { return Ok(None) };
    let ker = system.kernel();
    let homogeneous = (0..ker.dim()).map(|k| Matrix::from_vec(rows, cols, ker.inclusion.col(k))).collect();
    Ok(Some((Matrix::from_vec(rows, cols, particular), homogeneous)))
}

/// `∇_l = λ' + ∇_r` for a right connection in `L`; the inverse is [`right_from_left`].
pub fn left_from_right<F: Field>(nabla_r: &ComoduleConnection<F>, d: &Coderivation<F>) -> Result<ComoduleConnection<F>> {
    if nabla_r.side != Side::Right || nabla_r.comodule != d.bicomodule {
        return Err(Error::invalid("expected a right connection in L"));
    }
    let nabla = d.require_extension()?.plus(&nabla_r.nabla);
    ComoduleConnection::new(Side::Left, d.bicomodule.clone(), d, nabla)
}

pub fn right_from_left<F: Field>(nabla_l: &ComoduleConnection<F>, d: &Coderivation<F>) -> Result<ComoduleConnection<F>> {
    if nabla_l.side != Side::Left || nabla_l.comodule != d.bicomodule {
        return Err(Error::invalid("expected a left connection in L"));
    }
    let nabla = nabla_l.nabla.minus(d.require_extension()?);
    ComoduleConnection::new(Side::Right, d.bicomodule.clone(), d, nabla)
}

/// `T = ∇_l − λ' − ∇_r`, with its bicolinearity checked.
pub fn torsion<F: Field>(nabla_l: &ComoduleConnection<F>, nabla_r: &ComoduleConnection<F>, d: &Coderivation<F>) -> Result<Torsion<F>> {
    if nabla_l.side != Side::Left || nabla_r.side != Side::Right || nabla_l.comodule != d.bicomodule || nabla_r.comodule != d.bicomodule {
        return Err(Error::invalid("torsion needs a left and a right connection in L"));
    }
    let map = nabla_l.nabla.minus(d.require_extension()?).minus(&nabla_r.nabla);
    let sq = d.square.comodule();
    let mut bicolinear = Report::new("torsion");
    let left = sq.left_colinearity_defect(&d.bicomodule, &map);
    bicolinear.record("left colinear", "^Lρ∘T = (C⊗T)∘^{L□L}ρ", left.is_none(), left.map(|c| vec![c]));
    let right = sq.right_colinearity_defect(&d.bicomodule, &map);
    bicolinear.record("right colinear", "ρ^L∘T = (T⊗C)∘ρ^{L□L}", right.is_none(), right.map(|c| vec![c]));
    Ok(Torsion { zero: map.is_zero(), map, bicolinear })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coalgebra::grouplike_cointegral;
    use crate::field::Rational;

    type Q = Rational;

    fn grouplike(n: usize) -> Arc<Coalgebra<Q>> {
        Arc::new(Coalgebra::grouplike(n))
    }

    /// `e1, e2, a` with `Δa = e1⊗a + a⊗e2`.
    fn one_arrow() -> Arc<Coalgebra<Q>> {
        let mut comul = Matrix::zeros(9, 3);
        comul.set(0, 0, Q::one());
        comul.set(4, 1, Q::one());
        comul.set(2, 2, Q::one());
        comul.set(7, 2, Q::one());
        Arc::new(Coalgebra::new(comul, Matrix::from_i64(1, 3, &[1, 1, 0])).unwrap())
    }

    #[test]
    fn universal_coderivation_passes_with_extension() {
        for c in [grouplike(2), grouplike(3), one_arrow()] {
            let u = Universal::new(&c).unwrap();
            let r = u.coderivation.check();
            assert!(r.passed(), "{r}");
            assert!(u.check_cokernel().passed(), "{}", u.check_cokernel());
        }
    }

    #[test]
    fn universal_dimensions() {
        assert_eq!(Universal::new(&grouplike(1)).unwrap().dim(), 0);
        let u = Universal::new(&grouplike(2)).unwrap();
        assert_eq!(u.dim(), 2);
        assert!(!u.coderivation.lambda.is_zero());
        assert_eq!(u.coderivation.square.dim(), 2);
    }

    #[test]
    fn flipped_sign_in_right_coaction_breaks_the_coderivation() {
        let c = grouplike(2);
        let u = Universal::new(&c).unwrap();
        let ic = Matrix::identity(2);
        let into_cc = ic.kron(&u.plus.inclusion);
        let wrong = kron_compose(&[&ic, &c.comul], &into_cc).plus(&kron_compose(&[&c.comul, &ic], &into_cc));
        let right = Matrix::kron_all(&[&ic, &u.plus.retraction, &ic]).mul(&wrong);
        let bicomodule = Comodule { right: Some(right), ..u.coderivation.bicomodule.clone() };
        let d = Coderivation::new(bicomodule, c.counit.kron(&u.plus.inclusion), None).unwrap();
        assert!(!d.check().get("coderivation").unwrap().passed);
    }

    #[test]
    fn zero_coderivation_is_fine_and_zero_connection_is_not() {
        let c = grouplike(2);
        let l = c.regular();
        let l = Comodule { left: Some(c.comul.clone()), ..l };
        let d = Coderivation::new(l, Matrix::zeros(2, 2), Some(Matrix::zeros(2, 2))).unwrap();
        assert!(d.check().passed());

        let u = Universal::new(&c).unwrap();
        let m = c.regular();
        let zero = ComoduleConnection::new(Side::Right, m.clone(), &u.coderivation, Matrix::zeros(2, 2)).unwrap();
        assert!(!zero.check(&u.coderivation).passed());
    }

    #[test]
    fn retraction_round_trip_on_both_sides() {
        let c = grouplike(3);
        let u = Universal::new(&c).unwrap();
        for side in [Side::Right, Side::Left] {
            let m = match side {
                Side::Right => c.regular(),
                Side::Left => Comodule::left(&c, c.comul.clone()),
            };
            let sigma = find_retraction(side, &m).unwrap();
            let conn = u.connection_from_retraction(side, &m, &sigma).unwrap();
            assert!(conn.check(&u.coderivation).passed(), "{}", conn.check(&u.coderivation));
            let back = u.retraction_from_connection(&conn).unwrap();
            assert!(check_retraction(side, &m, &back).passed());
            let again = u.connection_from_retraction(side, &m, &back).unwrap();
            assert_eq!(again.nabla, conn.nabla);
        }
    }

    #[test]
    fn one_arrow_socle_is_not_injective() {
        let c = one_arrow();
        let ic = Matrix::<Q>::identity(3);
        let e1 = Comodule::right(&c, Matrix::from_cols(3, &[ic.col(0)]));
        assert!(e1.check().passed());
        assert!(find_retraction(Side::Right, &e1).is_none());
        let e2 = Comodule::right(&c, Matrix::from_cols(3, &[ic.col(1)]));
        assert!(find_retraction(Side::Right, &e2).is_some());
        assert!(find_retraction(Side::Right, &c.regular()).is_some());
    }

    #[test]
    fn broken_connection_is_refused_by_the_retraction() {
        let c = grouplike(2);
        let u = Universal::new(&c).unwrap();
        let m = c.regular();
        let sigma = find_retraction(Side::Right, &m).unwrap();
        let mut conn = u.connection_from_retraction(Side::Right, &m, &sigma).unwrap();
        let v = conn.nabla.get(0, 0).add(&Q::one());
        conn.nabla.set(0, 0, v);
        assert!(u.retraction_from_connection(&conn).is_err());
        assert!(conn.curvature(&u.coderivation).is_err());
    }

    #[test]
    fn coseparable_pair_is_torsion_free() {
        for n in 2..=3 {
            let c = grouplike(n);
            let u = Universal::new(&c).unwrap();
            let d = &u.coderivation;
            let (nr, nl) = u.coseparable_connections(&grouplike_cointegral(n)).unwrap();
            assert!(nr.check(d).passed(), "{}", nr.check(d));
            assert!(nl.check(d).passed(), "{}", nl.check(d));
            let derived = left_from_right(&nr, d).unwrap();
            assert_eq!(derived.nabla, nl.nabla);
            assert_eq!(right_from_left(&derived, d).unwrap().nabla, nr.nabla);
            let t = torsion(&nl, &nr, d).unwrap();
            assert!(t.zero && t.bicolinear.passed());
        }
    }

    #[test]
    fn perturbed_pair_has_bicolinear_torsion() {
        // Over kC2 the bidegrees of L□L and L are disjoint, so torsion is forced to vanish.
        let u2 = Universal::new(&grouplike(2)).unwrap();
        assert!(bicolinear_maps(u2.coderivation.square.comodule(), &u2.coderivation.bicomodule).is_empty());

        let c = grouplike(3);
        let u = Universal::new(&c).unwrap();
        let d = &u.coderivation;
        let (nr, mut nl) = u.coseparable_connections(&grouplike_cointegral(3)).unwrap();
        let maps = bicolinear_maps(d.square.comodule(), &d.bicomodule);
        let bump = maps.iter().find(|f| !f.is_zero()).expect("a nonzero bicomodule map");
        nl.nabla = nl.nabla.plus(bump);
        assert!(nl.check(d).passed());
        let t = torsion(&nl, &nr, d).unwrap();
        assert!(!t.zero);
        assert!(t.bicolinear.passed());
        assert_eq!(&t.map, bump);
    }

    #[test]
    fn coseparable_right_connection_on_kc2_is_curved() {
        // With a = e0⊗u, b = e1⊗u, u = e0 − e1: ∇_r(a⊗b) = −a, ∇_r(b⊗a) = b and
        // λ'(a⊗b) = λ'(b⊗a) = a − b, so F(a⊗b⊗a) = a and F(b⊗a⊗b) = b.
        let c = grouplike(2);
        let u = Universal::new(&c).unwrap();
        let (nr, _) = u.coseparable_connections(&grouplike_cointegral(2)).unwrap();
        let f = nr.curvature(&u.coderivation).unwrap();
        assert!(!f.flat);
        assert_eq!(f.map.shape(), (2, 2));
        assert_eq!(f.map.rank(), 2);
    }

    #[test]
    fn trivial_coalgebra_is_vacuous() {
        let c = grouplike(1);
        let u = Universal::new(&c).unwrap();
        assert!(u.coderivation.check().passed());
        let (nr, nl) = u.coseparable_connections(&grouplike_cointegral(1)).unwrap();
        assert_eq!(nr.nabla.shape(), (0, 0));
        assert!(torsion(&nl, &nr, &u.coderivation).unwrap().zero);
    }
}
