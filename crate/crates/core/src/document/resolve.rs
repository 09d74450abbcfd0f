//! Turning document objects into library values.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::algebra::{Algebra, Module};
use crate::coalgebra::{Coalgebra, Comodule};
use crate::comodule_connection::{Coderivation, ComoduleConnection, Side};
use crate::connection::ModuleConnection;
use crate::coring::{Coring, Flavor};
use crate::cotensor::CotensorChain;
use crate::cring::{CRing, CRingModule};
use crate::dga::Dga;
use crate::entwining::Entwining;
use crate::error::Error;
use crate::field::Field;
use crate::hopf::{Bialgebra, Hopf};
use crate::matrix::Matrix;
use crate::report::Report;
use crate::tensor::TensorChain;

use super::{Document, Entry, Kind, Slot};

/// A resolution failure, located at an object and optionally one of its fields.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fault {
    pub object: String,
    pub field: Option<String>,
    pub message: String,
}

impl fmt::Display for Fault {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.field {
            Some(field) => write!(f, "object '{}', field '{field}': {}", self.object, self.message),
            None => write!(f, "object '{}': {}", self.object, self.message),
        }
    }
}

impl From<Fault> for Error {
    fn from(f: Fault) -> Self {
        Error::Invalid(f.to_string())
    }
}

type Res<T> = std::result::Result<T, Fault>;

/// A resolved object.
#[derive(Debug, Clone)]
pub enum Built<F> {
    Algebra(Arc<Algebra<F>>),
    Coalgebra(Arc<Coalgebra<F>>),
    Bialgebra(Bialgebra<F>),
    Hopf(Hopf<F>),
    Module(Module<F>),
    Comodule(Comodule<F>),
    Coring(Arc<Coring<F>>),
    Grouplike { coring: Arc<Coring<F>>, element: Vec<F>, flavor: Flavor },
    Entwining(Entwining<F>),
    CRing(Arc<CRing<F>>),
    Character { ring: Arc<CRing<F>>, kappa: Matrix<F> },
    Cointegral { coalgebra: Arc<Coalgebra<F>>, map: Matrix<F> },
    Coderivation(Arc<Coderivation<F>>),
    Dga(Arc<Dga<F>>),
    ModuleConnection { dga: Arc<Dga<F>>, connection: ModuleConnection<F> },
    ComoduleConnection { coderivation: Arc<Coderivation<F>>, connection: ComoduleConnection<F> },
    CRingModule { ring: Arc<CRing<F>>, module: CRingModule<F> },
}

impl<F: Field> Built<F> {
    /// Runs the checker for the object's kind.
    pub fn check(&self) -> Report {
        match self {
            Built::Algebra(a) => a.check(),
            Built::Coalgebra(c) => c.check(),
            Built::Bialgebra(b) => b.check(),
            Built::Hopf(h) => h.check(),
            Built::Module(m) => m.check(),
            Built::Comodule(m) => m.check(),
            Built::Coring(c) => c.check(),
            Built::Grouplike { coring, element, flavor } => coring.verify_grouplike(element, *flavor),
            Built::Entwining(e) => e.check_bowtie(),
            Built::CRing(r) => r.check(),
            Built::Character { ring, kappa } => ring.check_character(kappa),
            Built::Cointegral { coalgebra, map } => coalgebra.check_cointegral(map),
            Built::Coderivation(d) => d.check(),
            Built::Dga(d) => d.check(),
            Built::ModuleConnection { dga, connection } => {
                let mut r = connection.check(dga);
                let f = connection.curvature(dga);
                r.note("curvature", curvature_note(f.flat, f.witness));
                r
            }
            Built::ComoduleConnection { coderivation, connection } => {
                let mut r = connection.check(coderivation);
                match connection.curvature(coderivation) {
                    Ok(f) => r.note("curvature", curvature_note(f.flat, f.witness)),
                    Err(_) => r.note("curvature", "undefined without an extended coderivation"),
                }
                r
            }
            Built::CRingModule { ring, module } => ring.check_module(module),
        }
    }

    /// Checks the object and renames the report after it.
    pub fn report(&self, name: &str) -> Report {
        let mut r = self.check();
        r.object = format!("{name} ({})", r.object);
        r
    }
}

fn curvature_note(flat: bool, witness: Option<usize>) -> String {
    match witness {
        _ if flat => "flat".into(),
        Some(w) => format!("curved, first nonzero column {w}"),
        None => "curved".into(),
    }
}

/// Resolves objects on demand, sharing every intermediate value.
pub struct Resolver<'d, F> {
    doc: &'d Document<F>,
    cache: BTreeMap<String, Built<F>>,
    active: BTreeSet<String>,
}

struct Ctx<'a> {
    name: &'a str,
    fields: &'a BTreeMap<String, Entry>,
}

impl Ctx<'_> {
    fn fault(&self, field: Option<&str>, message: impl Into<String>) -> Fault {
        Fault { object: self.name.to_string(), field: field.map(str::to_string), message: message.into() }
    }

    fn one(&self, field: &str) -> Option<&str> {
        match self.fields.get(field) {
            Some(Entry::One(s)) => Some(s),
            _ => None,
        }
    }
}

impl<'d, F: Field> Resolver<'d, F> {
    pub fn new(doc: &'d Document<F>) -> Self {
        Resolver { doc, cache: BTreeMap::new(), active: BTreeSet::new() }
    }

    pub fn get(&mut self, name: &str) -> Res<Built<F>> {
        if let Some(b) = self.cache.get(name) {
            return Ok(b.clone());
        }
        let doc = self.doc;
        let object = doc.objects.get(name).ok_or_else(|| Fault {
            object: name.to_string(),
            field: None,
            message: "no such object".into(),
        })?;
        if !self.active.insert(name.to_string()) {
            return Err(Fault { object: name.to_string(), field: None, message: "reference cycle".into() });
        }
        let ctx = Ctx { name, fields: &object.fields };
        let result = self.validate(&ctx, object.kind).and_then(|()| self.build(&ctx, object.kind));
        self.active.remove(name);
        let built = result?;
        self.cache.insert(name.to_string(), built.clone());
        Ok(built)
    }

    /// Field names, entry shapes and the existence of every reference.
    fn validate(&mut self, ctx: &Ctx<'_>, kind: Kind) -> Res<()> {
        let schema = kind.schema();
        for (key, entry) in ctx.fields {
            let Some((_, slot, _)) = schema.iter().find(|(k, _, _)| k == key) else {
                return Err(ctx.fault(Some(key), format!("unknown field for a {}", kind.as_str())));
            };
            let names: Vec<&String> = match (slot, entry) {
                (Slot::Maps, Entry::Many(list)) => list.iter().collect(),
                (Slot::Maps, Entry::One(_)) => return Err(ctx.fault(Some(key), "expected a list of map names")),
                (_, Entry::Many(_)) => return Err(ctx.fault(Some(key), "expected a single name")),
                (_, Entry::One(s)) => vec![s],
            };
            for n in names {
                match slot {
                    Slot::Space if !self.doc.spaces.contains_key(n) => {
                        return Err(ctx.fault(Some(key), format!("dangling reference to space '{n}'")));
                    }
                    Slot::Map | Slot::Maps if !self.doc.maps.contains_key(n) => {
                        return Err(ctx.fault(Some(key), format!("dangling reference to map '{n}'")));
                    }
                    Slot::Object(kinds) => match self.doc.objects.get(n) {
                        None => return Err(ctx.fault(Some(key), format!("dangling reference to object '{n}'"))),
                        Some(o) if !kinds.contains(&o.kind) => {
                            let want: Vec<&str> = kinds.iter().map(|k| k.as_str()).collect();
                            return Err(ctx.fault(Some(key), format!("'{n}' has kind {}, expected {}", o.kind.as_str(), want.join(" or "))));
                        }
                        Some(_) => {}
                    },
                    Slot::Word(words) if !words.contains(&n.as_str()) => {
                        return Err(ctx.fault(Some(key), format!("'{n}' is not one of {}", words.join(", "))));
                    }
                    _ => {}
                }
            }
        }
        for (key, _, required) in schema {
            if *required && !ctx.fields.contains_key(*key) {
                return Err(ctx.fault(None, format!("missing field '{key}'")));
            }
        }
        Ok(())
    }

    fn sub(&mut self, ctx: &Ctx<'_>, field: &str) -> Res<Built<F>> {
        let target = ctx.one(field).expect("validated");
        self.get(target).map_err(|inner| {
            if inner.object == target {
                inner
            } else {
                ctx.fault(Some(field), inner.to_string())
            }
        })
    }

    fn space(&self, ctx: &Ctx<'_>) -> usize {
        self.doc.spaces[ctx.one("space").expect("validated")]
    }

    fn map_named(&self, ctx: &Ctx<'_>, field: &str, name: &str, shape: (usize, usize)) -> Res<Matrix<F>> {
        let m = &self.doc.maps[name].matrix;
        if m.shape() != shape {
            return Err(ctx.fault(
                Some(field),
                format!("map '{name}' has shape {}x{}, expected {}x{}", m.rows(), m.cols(), shape.0, shape.1),
            ));
        }
        Ok(m.clone())
    }

    fn map(&self, ctx: &Ctx<'_>, field: &str, shape: (usize, usize)) -> Res<Matrix<F>> {
        self.map_named(ctx, field, ctx.one(field).expect("validated"), shape)
    }

    fn opt_map(&self, ctx: &Ctx<'_>, field: &str, shape: (usize, usize)) -> Res<Option<Matrix<F>>> {
        match ctx.one(field) {
            None => Ok(None),
            Some(name) => self.map_named(ctx, field, name, shape).map(Some),
        }
    }

    fn algebra(&mut self, ctx: &Ctx<'_>, field: &str) -> Res<Arc<Algebra<F>>> {
        Ok(match self.sub(ctx, field)? {
            Built::Algebra(a) => a,
            Built::Bialgebra(b) => b.algebra,
            Built::Hopf(h) => h.bialgebra.algebra,
            _ => unreachable!("validated kind"),
        })
    }

    fn coalgebra(&mut self, ctx: &Ctx<'_>, field: &str) -> Res<Arc<Coalgebra<F>>> {
        Ok(match self.sub(ctx, field)? {
            Built::Coalgebra(c) => c,
            Built::Bialgebra(b) => b.coalgebra,
            Built::Hopf(h) => h.bialgebra.coalgebra,
            _ => unreachable!("validated kind"),
        })
    }

    fn module(&mut self, ctx: &Ctx<'_>, field: &str) -> Res<Module<F>> {
        match self.sub(ctx, field)? {
            Built::Module(m) => Ok(m),
            _ => unreachable!("validated kind"),
        }
    }

    fn comodule(&mut self, ctx: &Ctx<'_>, field: &str) -> Res<Comodule<F>> {
        match self.sub(ctx, field)? {
            Built::Comodule(m) => Ok(m),
            _ => unreachable!("validated kind"),
        }
    }

    fn cring(&mut self, ctx: &Ctx<'_>) -> Res<Arc<CRing<F>>> {
        match self.sub(ctx, "cring")? {
            Built::CRing(r) => Ok(r),
            _ => unreachable!("validated kind"),
        }
    }

    fn build(&mut self, ctx: &Ctx<'_>, kind: Kind) -> Res<Built<F>> {
        let lib = |e: Error| ctx.fault(None, e.to_string());
        Ok(match kind {
            Kind::Algebra => {
                let n = self.space(ctx);
                let mul = self.map(ctx, "mul", (n, n * n))?;
                let unit = self.map(ctx, "unit", (n, 1))?;
                Built::Algebra(Arc::new(Algebra::new(mul, unit).map_err(lib)?))
            }
            Kind::Coalgebra => {
                let n = self.space(ctx);
                let comul = self.map(ctx, "comul", (n * n, n))?;
                let counit = self.map(ctx, "counit", (1, n))?;
                Built::Coalgebra(Arc::new(Coalgebra::new(comul, counit).map_err(lib)?))
            }
            Kind::Bialgebra => {
                let algebra = self.algebra(ctx, "algebra")?;
                let coalgebra = self.coalgebra(ctx, "coalgebra")?;
                if algebra.dim() != coalgebra.dim() {
                    return Err(ctx.fault(None, "algebra and coalgebra differ in dimension"));
                }
                Built::Bialgebra(Bialgebra { algebra, coalgebra })
            }
            Kind::Hopf => {
                let Built::Bialgebra(bialgebra) = self.sub(ctx, "bialgebra")? else { unreachable!("validated kind") };
                let n = bialgebra.dim();
                let antipode = self.map(ctx, "antipode", (n, n))?;
                let antipode_inv = self.map(ctx, "antipode_inv", (n, n))?;
                Built::Hopf(Hopf { bialgebra, antipode, antipode_inv })
            }
            Kind::Module | Kind::Bimodule => {
                let base = self.algebra(ctx, "algebra")?;
                let (m, a) = (self.space(ctx), base.dim());
                let right = self.opt_map(ctx, "right", (m, m * a))?;
                let left = self.opt_map(ctx, "left", (m, a * m))?;
                let mut module = Module { dim: m, base: base.clone(), left: None, right: None };
                if let Some(act) = &right {
                    module.right = Module::from_right_action(&base, act).map_err(lib)?.right;
                }
                if let Some(act) = &left {
                    module.left = Module::from_left_action(&base, act).map_err(lib)?.left;
                }
                if module.left.is_none() && module.right.is_none() {
                    return Err(ctx.fault(None, "a module needs a left or a right action"));
                }
                Built::Module(module)
            }
            Kind::Comodule | Kind::Bicomodule => {
                let coalgebra = self.coalgebra(ctx, "coalgebra")?;
                let (m, c) = (self.space(ctx), coalgebra.dim());
                let right = self.opt_map(ctx, "right", (m * c, m))?;
                let left = self.opt_map(ctx, "left", (c * m, m))?;
                if left.is_none() && right.is_none() {
                    return Err(ctx.fault(None, "a comodule needs a left or a right coaction"));
                }
                Built::Comodule(Comodule { dim: m, coalgebra, right, left })
            }
            Kind::Coring => {
                let carrier = self.module(ctx, "carrier")?;
                let (c, a) = (carrier.dim, carrier.base.dim());
                let lift = self.map(ctx, "comul", (c * c, c))?;
                let counit = self.map(ctx, "counit", (a, c))?;
                Built::Coring(Arc::new(Coring::from_lift(carrier, &lift, counit).map_err(lib)?))
            }
            Kind::Grouplike => {
                let Built::Coring(coring) = self.sub(ctx, "coring")? else { unreachable!("validated kind") };
                let element = self.map(ctx, "element", (coring.dim(), 1))?.col(0);
                let flavor = match ctx.one("flavor") {
                    Some(f) => f.parse().map_err(lib)?,
                    None => Flavor::Grouplike,
                };
                Built::Grouplike { coring, element, flavor }
            }
            Kind::Entwining => {
                let algebra = self.algebra(ctx, "algebra")?;
                let coalgebra = self.coalgebra(ctx, "coalgebra")?;
                let (a, c) = (algebra.dim(), coalgebra.dim());
                let psi = self.map(ctx, "psi", (a * c, c * a))?;
                Built::Entwining(Entwining::new(algebra, coalgebra, psi).map_err(lib)?)
            }
            Kind::CRing => {
                let carrier = self.comodule(ctx, "carrier")?;
                let (r, c) = (carrier.dim, carrier.coalgebra.dim());
                let mul = self.map(ctx, "mul", (r, r * r))?;
                let unit = self.map(ctx, "unit", (r, c))?;
                let square = CotensorChain::power(&carrier, 2).map_err(lib)?;
                let ring = CRing::new(carrier, mul.mul(&square.inclusion()), unit).map_err(lib)?;
                Built::CRing(Arc::new(ring))
            }
            Kind::Character => {
                let ring = self.cring(ctx)?;
                let kappa = self.map(ctx, "map", (1, ring.dim()))?;
                Built::Character { ring, kappa }
            }
            Kind::Cointegral => {
                let coalgebra = self.coalgebra(ctx, "coalgebra")?;
                let c = coalgebra.dim();
                let map = self.map(ctx, "map", (1, c * c))?;
                Built::Cointegral { coalgebra, map }
            }
            Kind::Coderivation => {
                let bicomodule = self.comodule(ctx, "bicomodule")?;
                let (l, c) = (bicomodule.dim, bicomodule.coalgebra.dim());
                let lambda = self.map(ctx, "lambda", (c, l))?;
                let ext = self.opt_map(ctx, "extension", (l, l * l))?;
                let mut d = Coderivation::new(bicomodule, lambda, None).map_err(lib)?;
                d.extension = ext.map(|e| e.mul(&d.square.inclusion()));
                Built::Coderivation(Arc::new(d))
            }
            Kind::Dga => {
                let one_forms = self.module(ctx, "one_forms")?;
                let Some(Entry::Many(names)) = ctx.fields.get("d") else { unreachable!("validated") };
                let d = names.iter().map(|n| self.doc.maps[n].matrix.clone()).collect();
                let dga = Dga::from_parts(&one_forms, d).map_err(|e| ctx.fault(Some("d"), e.to_string()))?;
                Built::Dga(Arc::new(dga))
            }
            Kind::Connection => self.connection(ctx)?,
            Kind::CRingModule => {
                let ring = self.cring(ctx)?;
                let comodule = self.comodule(ctx, "comodule")?;
                let m = comodule.dim;
                let action = self.map(ctx, "action", (m, m * ring.dim()))?;
                let domain = CotensorChain::new(&[&comodule, &ring.carrier]).map_err(lib)?;
                let module = CRingModule::new(&ring, comodule, action.mul(&domain.inclusion())).map_err(lib)?;
                Built::CRingModule { ring, module }
            }
        })
    }

    fn connection(&mut self, ctx: &Ctx<'_>) -> Res<Built<F>> {
        let lib = |e: Error| ctx.fault(None, e.to_string());
        let has = |k: &str| ctx.fields.contains_key(k);
        match (has("module"), has("dga"), has("comodule"), has("coderivation")) {
            (true, true, false, false) => {
                if has("side") {
                    return Err(ctx.fault(Some("side"), "module connections have no side"));
                }
                let module = self.module(ctx, "module")?;
                let Built::Dga(dga) = self.sub(ctx, "dga")? else { unreachable!("validated kind") };
                if dga.cap < 2 {
                    return Err(ctx.fault(Some("dga"), "connections need forms up to degree 2"));
                }
                let w = dga.one_forms().dim;
                let lift = self.map(ctx, "nabla", (module.dim * w, module.dim))?;
                let m1 = TensorChain::new(&[&module, dga.one_forms()]).map_err(lib)?;
                let connection = ModuleConnection::new(module, &dga, m1.projection().mul(&lift)).map_err(lib)?;
                Ok(Built::ModuleConnection { dga, connection })
            }
            (false, false, true, true) => {
                let side = match ctx.one("side") {
                    Some("left") => Side::Left,
                    Some(_) => Side::Right,
                    None => return Err(ctx.fault(None, "missing field 'side'")),
                };
                let comodule = self.comodule(ctx, "comodule")?;
                let Built::Coderivation(d) = self.sub(ctx, "coderivation")? else { unreachable!("validated kind") };
                let ambient = self.map(ctx, "nabla", (comodule.dim, comodule.dim * d.dim()))?;
                let domain = match side {
                    Side::Right => CotensorChain::new(&[&comodule, &d.bicomodule]),
                    Side::Left => CotensorChain::new(&[&d.bicomodule, &comodule]),
                }
                .map_err(lib)?;
                let connection = ComoduleConnection::new(side, comodule, &d, ambient.mul(&domain.inclusion())).map_err(lib)?;
                Ok(Built::ComoduleConnection { coderivation: d, connection })
            }
            _ => Err(ctx.fault(None, "a connection takes either 'module' and 'dga' or 'comodule', 'coderivation' and 'side'")),
        }
    }
}
