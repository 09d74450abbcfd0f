//! Adding library values to a document.
//!
//! Each `put_*` stores the value under `name`, its own space (if it has one)
//! under `name`, and its maps as `name.field`. Referenced objects must
//! already be present.

use std::collections::BTreeMap;

use crate::algebra::{Algebra, Module};
use crate::coalgebra::{Coalgebra, Comodule};
use crate::comodule_connection::{Coderivation, ComoduleConnection, Side};
use crate::connection::ModuleConnection;
use crate::coring::{Coring, Flavor};
use crate::cring::{CRing, CRingModule};
use crate::dga::Dga;
use crate::field::Field;
use crate::hopf::Hopf;
use crate::matrix::Matrix;

use super::{Document, Entry, Kind, MapEntry, Object};

impl<F: Field> Document<F> {
    pub fn put_space(&mut self, name: &str, dim: usize) {
        self.spaces.insert(name.to_string(), dim);
    }

    /// Stores a map between declared spaces.
    ///
    /// # Panics
    ///
    /// If a space is undeclared or the matrix shape disagrees with the spaces.
    pub fn put_map(&mut self, name: &str, src: &[&str], dst: &[&str], matrix: Matrix<F>) -> String {
        let src: Vec<String> = src.iter().map(|s| s.to_string()).collect();
        let dst: Vec<String> = dst.iter().map(|s| s.to_string()).collect();
        let shape = (self.dim_of(&dst).expect("declared dst spaces"), self.dim_of(&src).expect("declared src spaces"));
        assert_eq!(matrix.shape(), shape, "map '{name}' does not fit its spaces");
        self.maps.insert(name.to_string(), MapEntry { src, dst, matrix });
        name.to_string()
    }

    pub fn put_object(&mut self, name: &str, kind: Kind, fields: Vec<(&str, Entry)>) {
        let fields: BTreeMap<String, Entry> = fields.into_iter().map(|(k, v)| (k.to_string(), v)).collect();
        self.objects.insert(name.to_string(), Object { kind, fields });
    }

    /// The space underlying an object with a carrier.
    ///
    /// # Panics
    ///
    /// If `object` is missing or has no carrier space.
    pub fn space_of(&self, object: &str) -> String {
        let o = self.objects.get(object).unwrap_or_else(|| panic!("no object '{object}'"));
        let field = |k: &str| match o.fields.get(k) {
            Some(Entry::One(s)) => s.clone(),
            _ => panic!("object '{object}' has no '{k}'"),
        };
        match o.kind {
            Kind::Bialgebra => self.space_of(&field("algebra")),
            Kind::Hopf => self.space_of(&field("bialgebra")),
            Kind::Coring | Kind::CRing => self.space_of(&field("carrier")),
            Kind::Coderivation => self.space_of(&field("bicomodule")),
            _ => field("space"),
        }
    }

    pub fn put_algebra(&mut self, name: &str, space: &str, a: &Algebra<F>) {
        self.put_space(space, a.dim());
        let mul = self.put_map(&format!("{name}.mul"), &[space, space], &[space], a.mul.clone());
        let unit = self.put_map(&format!("{name}.unit"), &[], &[space], a.unit.clone());
        self.put_object(name, Kind::Algebra, vec![("space", Entry::one(space)), ("mul", Entry::One(mul)), ("unit", Entry::One(unit))]);
    }

    pub fn put_coalgebra(&mut self, name: &str, space: &str, c: &Coalgebra<F>) {
        self.put_space(space, c.dim());
        let comul = self.put_map(&format!("{name}.comul"), &[space], &[space, space], c.comul.clone());
        let counit = self.put_map(&format!("{name}.counit"), &[space], &[], c.counit.clone());
        self.put_object(
            name,
            Kind::Coalgebra,
            vec![("space", Entry::one(space)), ("comul", Entry::One(comul)), ("counit", Entry::One(counit))],
        );
    }

    /// A Hopf algebra with its halves stored as `name.algebra`, `name.coalgebra`
    /// and `name.bialgebra`, all on the space `name`.
    pub fn put_hopf(&mut self, name: &str, h: &Hopf<F>) {
        let (alg, coalg, bi) = (format!("{name}.algebra"), format!("{name}.coalgebra"), format!("{name}.bialgebra"));
        self.put_algebra(&alg, name, h.algebra());
        self.put_coalgebra(&coalg, name, h.coalgebra());
        self.put_object(&bi, Kind::Bialgebra, vec![("algebra", Entry::One(alg)), ("coalgebra", Entry::One(coalg))]);
        let s = self.put_map(&format!("{name}.antipode"), &[name], &[name], h.antipode.clone());
        let si = self.put_map(&format!("{name}.antipode_inv"), &[name], &[name], h.antipode_inv.clone());
        self.put_object(name, Kind::Hopf, vec![("bialgebra", Entry::One(bi)), ("antipode", Entry::One(s)), ("antipode_inv", Entry::One(si))]);
    }

    pub fn put_module(&mut self, name: &str, algebra: &str, m: &Module<F>) {
        let a = self.space_of(algebra);
        self.put_space(name, m.dim);
        let mut fields = vec![("algebra", Entry::one(algebra)), ("space", Entry::one(name))];
        if let Some(act) = m.right_action() {
            fields.push(("right", Entry::One(self.put_map(&format!("{name}.right"), &[name, &a], &[name], act))));
        }
        if let Some(act) = m.left_action() {
            fields.push(("left", Entry::One(self.put_map(&format!("{name}.left"), &[&a, name], &[name], act))));
        }
        let kind = if m.is_left() && m.is_right() { Kind::Bimodule } else { Kind::Module };
        self.put_object(name, kind, fields);
    }

    pub fn put_comodule(&mut self, name: &str, coalgebra: &str, m: &Comodule<F>) {
        let c = self.space_of(coalgebra);
        self.put_space(name, m.dim);
        let mut fields = vec![("coalgebra", Entry::one(coalgebra)), ("space", Entry::one(name))];
        if let Some(rho) = &m.right {
            fields.push(("right", Entry::One(self.put_map(&format!("{name}.right"), &[name], &[name, &c], rho.clone()))));
        }
        if let Some(rho) = &m.left {
            fields.push(("left", Entry::One(self.put_map(&format!("{name}.left"), &[name], &[&c, name], rho.clone()))));
        }
        let kind = if m.left.is_some() && m.right.is_some() { Kind::Bicomodule } else { Kind::Comodule };
        self.put_object(name, kind, fields);
    }

    /// The carrier goes to `name.carrier`.
    pub fn put_coring(&mut self, name: &str, algebra: &str, c: &Coring<F>) {
        let carrier = format!("{name}.carrier");
        self.put_module(&carrier, algebra, &c.carrier);
        let a = self.space_of(algebra);
        let lift = self.put_map(&format!("{name}.comul"), &[&carrier], &[&carrier, &carrier], c.cop_lift());
        let counit = self.put_map(&format!("{name}.counit"), &[&carrier], &[&a], c.cou.clone());
        self.put_object(name, Kind::Coring, vec![("carrier", Entry::One(carrier)), ("comul", Entry::One(lift)), ("counit", Entry::One(counit))]);
    }

    pub fn put_grouplike(&mut self, name: &str, coring: &str, g: &[F], flavor: Flavor) {
        let c = self.space_of(coring);
        let element = self.put_map(&format!("{name}.element"), &[], &[&c], Matrix::column_vector(g.to_vec()));
        let mut fields = vec![("coring", Entry::one(coring)), ("element", Entry::One(element))];
        if flavor != Flavor::Grouplike {
            fields.push(("flavor", Entry::one(flavor.as_str())));
        }
        self.put_object(name, Kind::Grouplike, fields);
    }

    pub fn put_entwining(&mut self, name: &str, algebra: &str, coalgebra: &str, psi: &Matrix<F>) {
        let (a, c) = (self.space_of(algebra), self.space_of(coalgebra));
        let psi = self.put_map(&format!("{name}.psi"), &[&c, &a], &[&a, &c], psi.clone());
        self.put_object(name, Kind::Entwining, vec![("algebra", Entry::one(algebra)), ("coalgebra", Entry::one(coalgebra)), ("psi", Entry::One(psi))]);
    }

    /// Multiplication is stored on the ambient `𝒜⊗𝒜`, zero off `𝒜□𝒜` up to the chosen complement.
    pub fn put_cring(&mut self, name: &str, coalgebra: &str, r: &CRing<F>) {
        let carrier = format!("{name}.carrier");
        self.put_comodule(&carrier, coalgebra, &r.carrier);
        let c = self.space_of(coalgebra);
        let mul = self.put_map(&format!("{name}.mul"), &[&carrier, &carrier], &[&carrier], r.mul.mul(&r.square.retraction()));
        let unit = self.put_map(&format!("{name}.unit"), &[&c], &[&carrier], r.unit.clone());
        self.put_object(name, Kind::CRing, vec![("carrier", Entry::One(carrier)), ("mul", Entry::One(mul)), ("unit", Entry::One(unit))]);
    }

    pub fn put_character(&mut self, name: &str, cring: &str, kappa: &Matrix<F>) {
        let r = self.space_of(cring);
        let map = self.put_map(&format!("{name}.map"), &[&r], &[], kappa.clone());
        self.put_object(name, Kind::Character, vec![("cring", Entry::one(cring)), ("map", Entry::One(map))]);
    }

    pub fn put_cointegral(&mut self, name: &str, coalgebra: &str, delta: &Matrix<F>) {
        let c = self.space_of(coalgebra);
        let map = self.put_map(&format!("{name}.map"), &[&c, &c], &[], delta.clone());
        self.put_object(name, Kind::Cointegral, vec![("coalgebra", Entry::one(coalgebra)), ("map", Entry::One(map))]);
    }

    /// The bicomodule goes to `name.bicomodule`.
    pub fn put_coderivation(&mut self, name: &str, coalgebra: &str, d: &Coderivation<F>) {
        let l = format!("{name}.bicomodule");
        self.put_comodule(&l, coalgebra, &d.bicomodule);
        let c = self.space_of(coalgebra);
        let lambda = self.put_map(&format!("{name}.lambda"), &[&l], &[&c], d.lambda.clone());
        let mut fields = vec![("bicomodule", Entry::One(l.clone())), ("lambda", Entry::One(lambda))];
        if let Some(ext) = &d.extension {
            let ext = self.put_map(&format!("{name}.extension"), &[&l, &l], &[&l], ext.mul(&d.square.retraction()));
            fields.push(("extension", Entry::One(ext)));
        }
        self.put_object(name, Kind::Coderivation, fields);
    }

    /// One-forms go to `name.one_forms`, higher degrees to spaces `name.omega{n}`.
    pub fn put_dga(&mut self, name: &str, algebra: &str, dga: &Dga<F>) {
        let one = format!("{name}.one_forms");
        self.put_module(&one, algebra, dga.one_forms());
        let mut spaces = vec![self.space_of(algebra), one.clone()];
        for n in 2..=dga.cap {
            let s = format!("{name}.omega{n}");
            self.put_space(&s, dga.dim(n));
            spaces.push(s);
        }
        let d = (0..dga.cap)
            .map(|n| self.put_map(&format!("{name}.d{n}"), &[&spaces[n]], &[&spaces[n + 1]], dga.d[n].clone()))
            .collect();
        self.put_object(name, Kind::Dga, vec![("one_forms", Entry::One(one)), ("d", Entry::Many(d))]);
    }

    /// `∇` is stored as a lift to `M⊗Ω¹` of the pure-tensor representatives.
    pub fn put_module_connection(&mut self, name: &str, module: &str, dga: &str, conn: &ModuleConnection<F>) {
        let m = self.space_of(module);
        let w = match self.objects.get(dga).and_then(|o| o.fields.get("one_forms")) {
            Some(Entry::One(one)) => self.space_of(one),
            _ => panic!("no DGA '{dga}'"),
        };
        let lift = conn.m1.section().mul(&conn.nabla);
        let nabla = self.put_map(&format!("{name}.nabla"), &[&m], &[&m, &w], lift);
        self.put_object(name, Kind::Connection, vec![("module", Entry::one(module)), ("dga", Entry::one(dga)), ("nabla", Entry::One(nabla))]);
    }

    pub fn put_comodule_connection(&mut self, name: &str, comodule: &str, coderivation: &str, conn: &ComoduleConnection<F>) {
        let m = self.space_of(comodule);
        let l = self.space_of(coderivation);
        let (src, side): (Vec<&str>, &str) = match conn.side {
            Side::Right => (vec![&m, &l], "right"),
            Side::Left => (vec![&l, &m], "left"),
        };
        let nabla = self.put_map(&format!("{name}.nabla"), &src, &[&m], conn.nabla.mul(&conn.domain.retraction()));
        self.put_object(
            name,
            Kind::Connection,
            vec![
                ("comodule", Entry::one(comodule)),
                ("coderivation", Entry::one(coderivation)),
                ("side", Entry::one(side)),
                ("nabla", Entry::One(nabla)),
            ],
        );
    }

    pub fn put_cring_module(&mut self, name: &str, cring: &str, comodule: &str, m: &CRingModule<F>) {
        let ms = self.space_of(comodule);
        let r = self.space_of(cring);
        let action = self.put_map(&format!("{name}.action"), &[&ms, &r], &[&ms], m.action.mul(&m.domain.retraction()));
        self.put_object(name, Kind::CRingModule, vec![("cring", Entry::one(cring)), ("comodule", Entry::one(comodule)), ("action", Entry::One(action))]);
    }
}
