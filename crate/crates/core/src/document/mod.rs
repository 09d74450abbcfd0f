//! The JSON interchange format.
//!
//! A document names vector spaces by dimension, linear maps between tensor
//! products of those spaces, and objects assembled from maps and other
//! objects. Every map is stored on plain tensor products over the ground
//! field: maps into a tensor product over an algebra are stored as lifts,
//! maps out of a cotensor product on the ambient tensor product.

mod resolve;
mod write;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use serde_json::value::RawValue;

use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};
use crate::matrix::Matrix;

pub use resolve::{Built, Fault, Resolver};

pub const VERSION: u64 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    Algebra,
    Coalgebra,
    Bialgebra,
    Hopf,
    Module,
    Bimodule,
    Comodule,
    Bicomodule,
    Coring,
    Grouplike,
    Entwining,
    CRing,
    Character,
    Cointegral,
    Coderivation,
    Dga,
    Connection,
    CRingModule,
}

impl Kind {
    pub const ALL: [Kind; 18] = [
        Kind::Algebra,
        Kind::Coalgebra,
        Kind::Bialgebra,
        Kind::Hopf,
        Kind::Module,
        Kind::Bimodule,
        Kind::Comodule,
        Kind::Bicomodule,
        Kind::Coring,
        Kind::Grouplike,
        Kind::Entwining,
        Kind::CRing,
        Kind::Character,
        Kind::Cointegral,
        Kind::Coderivation,
        Kind::Dga,
        Kind::Connection,
        Kind::CRingModule,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Algebra => "algebra",
            Kind::Coalgebra => "coalgebra",
            Kind::Bialgebra => "bialgebra",
            Kind::Hopf => "hopf",
            Kind::Module => "module",
            Kind::Bimodule => "bimodule",
            Kind::Comodule => "comodule",
            Kind::Bicomodule => "bicomodule",
            Kind::Coring => "coring",
            Kind::Grouplike => "grouplike",
            Kind::Entwining => "entwining",
            Kind::CRing => "cring",
            Kind::Character => "character",
            Kind::Cointegral => "cointegral",
            Kind::Coderivation => "coderivation",
            Kind::Dga => "dga",
            Kind::Connection => "connection",
            Kind::CRingModule => "cring_module",
        }
    }

    /// The fields an object of this kind may carry, and which are required.
    pub fn schema(self) -> &'static [(&'static str, Slot, bool)] {
        use Slot::*;
        const ALGEBRAS: &[Kind] = &[Kind::Algebra, Kind::Bialgebra, Kind::Hopf];
        const COALGEBRAS: &[Kind] = &[Kind::Coalgebra, Kind::Bialgebra, Kind::Hopf];
        const MODULES: &[Kind] = &[Kind::Module, Kind::Bimodule];
        const COMODULES: &[Kind] = &[Kind::Comodule, Kind::Bicomodule];
        const SIDES: &[&str] = &["right", "left"];
        match self {
            Kind::Algebra => &[("space", Space, true), ("mul", Map, true), ("unit", Map, true)],
            Kind::Coalgebra => &[("space", Space, true), ("comul", Map, true), ("counit", Map, true)],
            Kind::Bialgebra => &[("algebra", Object(&[Kind::Algebra]), true), ("coalgebra", Object(&[Kind::Coalgebra]), true)],
            Kind::Hopf => &[("bialgebra", Object(&[Kind::Bialgebra]), true), ("antipode", Map, true), ("antipode_inv", Map, true)],
            Kind::Module => &[("algebra", Object(ALGEBRAS), true), ("space", Space, true), ("left", Map, false), ("right", Map, false)],
            Kind::Bimodule => &[("algebra", Object(ALGEBRAS), true), ("space", Space, true), ("left", Map, true), ("right", Map, true)],
            Kind::Comodule => &[("coalgebra", Object(COALGEBRAS), true), ("space", Space, true), ("left", Map, false), ("right", Map, false)],
            Kind::Bicomodule => &[("coalgebra", Object(COALGEBRAS), true), ("space", Space, true), ("left", Map, true), ("right", Map, true)],
            Kind::Coring => &[("carrier", Object(&[Kind::Bimodule]), true), ("comul", Map, true), ("counit", Map, true)],
            Kind::Grouplike => &[
                ("coring", Object(&[Kind::Coring]), true),
                ("element", Map, true),
                ("flavor", Word(&["grouplike", "semi_grouplike"]), false),
            ],
            Kind::Entwining => &[("algebra", Object(ALGEBRAS), true), ("coalgebra", Object(COALGEBRAS), true), ("psi", Map, true)],
            Kind::CRing => &[("carrier", Object(&[Kind::Bicomodule]), true), ("mul", Map, true), ("unit", Map, true)],
            Kind::Character => &[("cring", Object(&[Kind::CRing]), true), ("map", Map, true)],
            Kind::Cointegral => &[("coalgebra", Object(COALGEBRAS), true), ("map", Map, true)],
            Kind::Coderivation => &[("bicomodule", Object(&[Kind::Bicomodule]), true), ("lambda", Map, true), ("extension", Map, false)],
            Kind::Dga => &[("one_forms", Object(&[Kind::Bimodule]), true), ("d", Maps, true)],
            Kind::Connection => &[
                ("module", Object(MODULES), false),
                ("dga", Object(&[Kind::Dga]), false),
                ("comodule", Object(COMODULES), false),
                ("coderivation", Object(&[Kind::Coderivation]), false),
                ("side", Word(SIDES), false),
                ("nabla", Map, true),
            ],
            Kind::CRingModule => &[("cring", Object(&[Kind::CRing]), true), ("comodule", Object(COMODULES), true), ("action", Map, true)],
        }
    }
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Kind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::invalid(format!("unknown object kind '{s}'")))
    }
}

/// What an object field refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Slot {
    Space,
    Map,
    /// A list of map names.
    Maps,
    Object(&'static [Kind]),
    Word(&'static [&'static str]),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapEntry<F> {
    /// Factors of the domain; empty means the ground field.
    pub src: Vec<String>,
    pub dst: Vec<String>,
    pub matrix: Matrix<F>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Entry {
    One(String),
    Many(Vec<String>),
}

impl Entry {
    pub fn one(s: impl Into<String>) -> Self {
        Entry::One(s.into())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Object {
    pub kind: Kind,
    pub fields: BTreeMap<String, Entry>,
}

/// A document over the field `F`. Names are kept in sorted order, which makes
/// the emitted text canonical.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document<F> {
    pub spaces: BTreeMap<String, usize>,
    pub maps: BTreeMap<String, MapEntry<F>>,
    pub objects: BTreeMap<String, Object>,
}

impl<F> Default for Document<F> {
    fn default() -> Self {
        Document { spaces: BTreeMap::new(), maps: BTreeMap::new(), objects: BTreeMap::new() }
    }
}

impl<F: Field> Document<F> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Product of the dimensions of `factors`, `None` if one is undeclared.
    pub fn dim_of(&self, factors: &[String]) -> Option<usize> {
        factors.iter().map(|s| self.spaces.get(s).copied()).product()
    }

    pub fn resolver(&self) -> Resolver<'_, F> {
        Resolver::new(self)
    }

    /// Builds the named object.
    pub fn build(&self, name: &str) -> Result<Built<F>> {
        self.resolver().get(name).map_err(Error::from)
    }

    /// Every object name with the given kind, in order.
    pub fn objects_of(&self, kind: Kind) -> Vec<&str> {
        self.objects.iter().filter(|(_, o)| o.kind == kind).map(|(n, _)| n.as_str()).collect()
    }
}

/// Reads the `field` entry without parsing the rest.
pub fn peek_field(text: &str) -> Result<FieldSpec> {
    let p = Parser { text };
    let top = p.top()?;
    let raw = top.get("field").ok_or_else(|| p.err_at(0, "missing key 'field'"))?;
    let s = p.string(raw)?;
    s.parse().map_err(|_| p.err(raw, format!("unknown field '{s}'")))
}

/// Parses and fully resolves a document whose `field` entry must name `F`.
pub fn parse<F: Field>(text: &str) -> Result<Document<F>> {
    parse_inner(text, true)
}

/// Like [`parse`], but reads the scalars into `F` whatever field the document declares.
pub fn parse_over<F: Field>(text: &str) -> Result<Document<F>> {
    parse_inner(text, false)
}

fn parse_inner<F: Field>(text: &str, strict: bool) -> Result<Document<F>> {
    let p = Parser { text };
    let top = p.top()?;
    for (key, raw) in &top {
        if !["version", "field", "spaces", "maps", "objects"].contains(&key.as_str()) {
            return Err(p.err(raw, format!("unknown key '{key}'")));
        }
    }
    let version = top.get("version").ok_or_else(|| p.err_at(0, "missing key 'version'"))?;
    if serde_json::from_str::<u64>(version.get()).ok() != Some(VERSION) {
        return Err(p.err(version, format!("unsupported version {}, expected {VERSION}", version.get())));
    }
    let field_raw = top.get("field").ok_or_else(|| p.err_at(0, "missing key 'field'"))?;
    let field_name = p.string(field_raw)?;
    let declared: FieldSpec = field_name.parse().map_err(|_| p.err(field_raw, format!("unknown field '{field_name}'")))?;
    if strict && declared != F::spec() {
        return Err(p.err(field_raw, format!("document is over {declared}, expected {}", F::spec())));
    }

    let mut doc = Document::<F>::new();
    if let Some(raw) = top.get("spaces") {
        for (name, v) in p.object(raw)? {
            let dim = serde_json::from_str::<usize>(v.get())
                .map_err(|_| p.err(v, format!("space '{name}' needs a non-negative integer dimension")))?;
            doc.spaces.insert(name, dim);
        }
    }
    if let Some(raw) = top.get("maps") {
        for (name, v) in p.object(raw)? {
            let entry = p.map_entry(&doc, &name, v)?;
            doc.maps.insert(name, entry);
        }
    }
    let mut positions = BTreeMap::new();
    if let Some(raw) = top.get("objects") {
        for (name, v) in p.object(raw)? {
            let fields = p.object(v)?;
            let kind_raw = fields.get("kind").ok_or_else(|| p.err(v, format!("object '{name}' has no 'kind'")))?;
            let kind_name = p.string(kind_raw)?;
            let kind: Kind = kind_name.parse().map_err(|e: Error| p.err(kind_raw, e.to_string()))?;
            let mut object = Object { kind, fields: BTreeMap::new() };
            positions.insert((name.clone(), None), p.offset(v));
            for (key, raw) in fields {
                if key == "kind" {
                    continue;
                }
                let entry = match serde_json::from_str::<String>(raw.get()) {
                    Ok(s) => Entry::One(s),
                    Err(_) => Entry::Many(
                        serde_json::from_str::<Vec<String>>(raw.get())
                            .map_err(|_| p.err(raw, format!("field '{key}' must be a name or a list of names")))?,
                    ),
                };
                positions.insert((name.clone(), Some(key.clone())), p.offset(raw));
                object.fields.insert(key, entry);
            }
            doc.objects.insert(name, object);
        }
    }

    let mut resolver = doc.resolver();
    for name in doc.objects.keys() {
        if let Err(fault) = resolver.get(name) {
            let at = positions
                .get(&(fault.object.clone(), fault.field.clone()))
                .or_else(|| positions.get(&(fault.object.clone(), None)))
                .copied()
                .unwrap_or(0);
            return Err(p.err_at(at, fault.to_string()));
        }
    }
    Ok(doc)
}

struct Parser<'t> {
    text: &'t str,
}

impl<'t> Parser<'t> {
    fn offset(&self, raw: &RawValue) -> usize {
        let start = raw.get().as_ptr() as usize;
        start.saturating_sub(self.text.as_ptr() as usize).min(self.text.len())
    }

    fn err_at(&self, offset: usize, message: impl Into<String>) -> Error {
        let before = &self.text[..offset];
        let line = before.matches('\n').count() + 1;
        let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        Error::Parse { line, col, message: message.into() }
    }

    fn err(&self, raw: &RawValue, message: impl Into<String>) -> Error {
        self.err_at(self.offset(raw), message)
    }

    fn syntax(&self, e: serde_json::Error) -> Error {
        Error::Parse { line: e.line().max(1), col: e.column().max(1), message: e.to_string() }
    }

    fn top(&self) -> Result<BTreeMap<String, &'t RawValue>> {
        serde_json::from_str::<BTreeMap<String, &'t RawValue>>(self.text).map_err(|e| self.syntax(e))
    }

    fn object(&self, raw: &'t RawValue) -> Result<BTreeMap<String, &'t RawValue>> {
        serde_json::from_str(raw.get()).map_err(|_| self.err(raw, "expected a JSON object"))
    }

    fn array(&self, raw: &'t RawValue) -> Result<Vec<&'t RawValue>> {
        serde_json::from_str(raw.get()).map_err(|_| self.err(raw, "expected a JSON array"))
    }

    fn string(&self, raw: &RawValue) -> Result<String> {
        serde_json::from_str(raw.get()).map_err(|_| self.err(raw, "expected a string"))
    }

    fn names(&self, raw: &RawValue) -> Result<Vec<String>> {
        serde_json::from_str(raw.get()).map_err(|_| self.err(raw, "expected a list of space names"))
    }

    fn map_entry<F: Field>(&self, doc: &Document<F>, name: &str, raw: &'t RawValue) -> Result<MapEntry<F>> {
        let fields = self.object(raw)?;
        for (key, v) in &fields {
            if !["src", "dst", "data"].contains(&key.as_str()) {
                return Err(self.err(v, format!("unknown key '{key}' in map '{name}'")));
            }
        }
        let side = |key: &str| -> Result<(Vec<String>, usize)> {
            let v = fields.get(key).ok_or_else(|| self.err(raw, format!("map '{name}' has no '{key}'")))?;
            let names = self.names(v)?;
            for s in &names {
                if !doc.spaces.contains_key(s) {
                    return Err(self.err(v, format!("map '{name}' refers to undeclared space '{s}'")));
                }
            }
            let dim = doc.dim_of(&names).expect("checked above");
            Ok((names, dim))
        };
        let (src, cols) = side("src")?;
        let (dst, rows) = side("dst")?;
        let data_raw = fields.get("data").ok_or_else(|| self.err(raw, format!("map '{name}' has no 'data'")))?;
        let data = self.array(data_raw)?;
        let expected = format!("{rows}x{cols} (dst [{}], src [{}])", dst.join(", "), src.join(", "));
        if data.len() != rows {
            return Err(self.err(data_raw, format!("map '{name}' has {} rows, expected shape {expected}", data.len())));
        }
        let mut entries = Vec::with_capacity(rows * cols);
        for row_raw in data {
            let row = self.array(row_raw)?;
            if row.len() != cols {
                return Err(self.err(row_raw, format!("map '{name}' has a row of length {}, expected shape {expected}", row.len())));
            }
            for cell in row {
                let text: String = serde_json::from_str(cell.get())
                    .map_err(|_| self.err(cell, format!("malformed scalar {} in map '{name}': scalars are strings", cell.get())))?;
                let x = F::parse(&text).ok_or_else(|| self.err(cell, format!("malformed scalar \"{text}\" in map '{name}'")))?;
                entries.push(x);
            }
        }
        Ok(MapEntry { src, dst, matrix: Matrix::from_vec(rows, cols, entries) })
    }
}

fn quote(s: &str) -> String {
    serde_json::to_string(s).expect("strings serialize")
}

fn quote_list(items: &[String]) -> String {
    let inner: Vec<String> = items.iter().map(|s| quote(s)).collect();
    format!("[{}]", inner.join(", "))
}

/// Canonical text: sorted names, one matrix row per line, scalars in lowest terms.
pub fn emit<F: Field>(doc: &Document<F>) -> String {
    let mut out = String::new();
    out.push_str("{\n");
    let _ = writeln!(out, "  \"version\": {VERSION},");
    let _ = writeln!(out, "  \"field\": {},", quote(&F::spec().to_string()));

    out.push_str("  \"spaces\": {");
    let spaces: Vec<String> = doc.spaces.iter().map(|(n, d)| format!("\n    {}: {d}", quote(n))).collect();
    out.push_str(&spaces.join(","));
    out.push_str(if spaces.is_empty() { "},\n" } else { "\n  },\n" });

    out.push_str("  \"maps\": {");
    let maps: Vec<String> = doc
        .maps
        .iter()
        .map(|(n, m)| {
            let mut s = format!("\n    {}: {{\n", quote(n));
            let _ = writeln!(s, "      \"src\": {},", quote_list(&m.src));
            let _ = writeln!(s, "      \"dst\": {},", quote_list(&m.dst));
            let rows: Vec<String> = (0..m.matrix.rows())
                .map(|r| {
                    let cells: Vec<String> = m.matrix.row(r).iter().map(|x| quote(&x.to_string())).collect();
                    format!("        [{}]", cells.join(", "))
                })
                .collect();
            if rows.is_empty() {
                s.push_str("      \"data\": []\n");
            } else {
                let _ = write!(s, "      \"data\": [\n{}\n      ]\n", rows.join(",\n"));
            }
            s.push_str("    }");
            s
        })
        .collect();
    out.push_str(&maps.join(","));
    out.push_str(if maps.is_empty() { "},\n" } else { "\n  },\n" });

    out.push_str("  \"objects\": {");
    let objects: Vec<String> = doc
        .objects
        .iter()
        .map(|(n, o)| {
            let mut lines = vec![format!("      \"kind\": {}", quote(o.kind.as_str()))];
            for (k, v) in &o.fields {
                let value = match v {
                    Entry::One(s) => quote(s),
                    Entry::Many(list) => quote_list(list),
                };
                lines.push(format!("      {}: {value}", quote(k)));
            }
            format!("\n    {}: {{\n{}\n    }}", quote(n), lines.join(",\n"))
        })
        .collect();
    out.push_str(&objects.join(","));
    out.push_str(if objects.is_empty() { "}\n" } else { "\n  }\n" });
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests;
