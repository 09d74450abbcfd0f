//! Named example documents.
//!
//! Every object in every catalog document passes its own checker; the tests
//! below hold the catalog to that.

use std::sync::Arc;

use crate::algebra::{Algebra, Module};
use crate::coalgebra::{grouplike_cointegral, Coalgebra, Comodule};
use crate::coring::{Coring, Flavor};
use crate::cring::{cring_module_from_entwined, CRing};
use crate::document::Document;
use crate::entwining::{EntwinedModule, Entwining};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::hopf::Hopf;
use crate::matrix::{tensor_vec, unit_vec, Matrix};

pub const NAMES: &[&str] = &[
    "k",
    "dual_numbers",
    "kc2",
    "kc3",
    "h4",
    "grouplike1",
    "grouplike2",
    "grouplike3",
    "one_arrow",
    "ayd_kc2",
    "ayd_kc3",
    "ayd_h4",
];

/// `k[x]/(x²)` with basis `1, x`.
pub fn dual_numbers<F: Field>() -> Algebra<F> {
    Algebra::from_table(2, unit_vec(2, 0), |i, j| if i + j >= 2 { vec![F::zero(); 2] } else { unit_vec(2, i + j) })
}

/// The path coalgebra of `•→•`: basis `e1, e2, a` with `Δa = e1⊗a + a⊗e2`.
pub fn one_arrow<F: Field>() -> Coalgebra<F> {
    let mut comul = Matrix::zeros(9, 3);
    comul.set(0, 0, F::one());
    comul.set(4, 1, F::one());
    comul.set(2, 2, F::one());
    comul.set(7, 2, F::one());
    Coalgebra { comul, counit: Matrix::from_i64(1, 3, &[1, 1, 0]) }
}

/// The Hopf algebra behind an `ayd_*` entry.
pub fn ayd_hopf<F: Field>(name: &str) -> Option<Hopf<F>> {
    match name {
        "ayd_kc2" => Some(Hopf::cyclic_group(2)),
        "ayd_kc3" => Some(Hopf::cyclic_group(3)),
        "ayd_h4" => Some(Hopf::sweedler_h4()),
        _ => None,
    }
}

/// The regular right module with the trivial coaction `m ↦ m⊗1`.
pub fn trivial_ayd_module<F: Field>(h: &Hopf<F>) -> Result<EntwinedModule<F>> {
    let a = h.algebra();
    let module = Module { left: None, ..a.regular() };
    let n = h.dim();
    let rho = Matrix::from_fn_cols(n * n, n, |m| tensor_vec(&unit_vec(n, m), &a.one()));
    EntwinedModule::new(module, Comodule::right(h.coalgebra(), rho))
}

pub fn document<F: Field>(name: &str) -> Result<Document<F>> {
    let mut doc = Document::new();
    match name {
        "k" => doc.put_algebra("k", "k", &Algebra::ground()),
        "dual_numbers" => {
            let a = Arc::new(dual_numbers());
            doc.put_algebra("D", "D", &a);
            sweedler(&mut doc, "D", &a)?;
        }
        "kc2" | "kc3" | "h4" => {
            let (obj, h) = match name {
                "kc2" => ("kC2", Hopf::cyclic_group(2)),
                "kc3" => ("kC3", Hopf::cyclic_group(3)),
                _ => ("H4", Hopf::sweedler_h4()),
            };
            doc.put_hopf(obj, &h);
            if name == "kc2" {
                sweedler(&mut doc, "kC2.algebra", h.algebra())?;
            }
        }
        "grouplike1" | "grouplike2" | "grouplike3" => {
            let n: usize = name["grouplike".len()..].parse().expect("catalog name");
            let c = Arc::new(Coalgebra::grouplike(n));
            let obj = format!("G{n}");
            doc.put_coalgebra(&obj, &obj, &c);
            doc.put_cointegral("delta", &obj, &grouplike_cointegral(n));
            let regular = Comodule { left: Some(c.comul.clone()), ..c.regular() };
            doc.put_comodule("regular", &obj, &regular);
        }
        "one_arrow" => {
            let c = Arc::new(one_arrow());
            doc.put_coalgebra("P", "P", &c);
            let id = Matrix::<F>::identity(3);
            doc.put_comodule("socle", "P", &Comodule::right(&c, Matrix::from_cols(3, &[id.col(0)])));
            doc.put_comodule("top", "P", &Comodule::right(&c, Matrix::from_cols(3, &[id.col(1)])));
            doc.put_comodule("regular", "P", &c.regular());
        }
        "ayd_kc2" | "ayd_kc3" | "ayd_h4" => {
            let h = ayd_hopf::<F>(name).expect("ayd entry");
            let obj = match name {
                "ayd_kc2" => "kC2",
                "ayd_kc3" => "kC3",
                _ => "H4",
            };
            let (alg, coalg) = (format!("{obj}.algebra"), format!("{obj}.coalgebra"));
            doc.put_hopf(obj, &h);
            let e = Entwining::ayd(&h)?;
            doc.put_entwining("psi", &alg, &coalg, &e.psi);
            let coring = e.coring()?;
            doc.put_coring(name, &alg, &coring);
            doc.put_grouplike("g", name, &e.coring_grouplike(&h.algebra().one()), Flavor::Grouplike);
            let (ring, kappa) = CRing::from_entwining(&e, Some(&h.coalgebra().counit))?;
            let kappa = kappa.expect("character given");
            let ring_name = format!("{name}_cring");
            doc.put_cring(&ring_name, &coalg, &ring);
            doc.put_character("kappa", &ring_name, &kappa);
            if name != "ayd_h4" {
                let em = trivial_ayd_module(&h)?;
                doc.put_module("M.module", &alg, &em.module);
                doc.put_comodule("M.comodule", &coalg, &em.comodule);
                let m = cring_module_from_entwined(&ring, &em)?;
                doc.put_cring_module("M", &ring_name, "M.comodule", &m);
            }
        }
        _ => return Err(Error::invalid(format!("no catalog entry '{name}'; try one of {}", NAMES.join(", ")))),
    }
    Ok(doc)
}

fn sweedler<F: Field>(doc: &mut Document<F>, algebra: &str, a: &Arc<Algebra<F>>) -> Result<()> {
    let base = doc.space_of(algebra);
    let name = format!("sweedler_{base}");
    doc.put_coring(&name, algebra, &Coring::sweedler(a)?);
    doc.put_grouplike(&format!("{name}.one"), &name, &Coring::sweedler_grouplike(a), Flavor::Grouplike);
    Ok(())
}

/// The first catalog document with an object called `object`.
pub fn containing<F: Field>(object: &str) -> Option<(&'static str, Document<F>)> {
    NAMES.iter().find_map(|&n| {
        let doc = document::<F>(n).ok()?;
        doc.objects.contains_key(object).then_some((n, doc))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::document::{emit, parse};
    use crate::field::Rational;

    type Q = Rational;

    #[test]
    fn every_catalog_object_passes_its_checker() {
        for name in NAMES {
            let doc = document::<Q>(name).unwrap();
            let mut res = doc.resolver();
            for obj in doc.objects.keys() {
                let built = res.get(obj).unwrap_or_else(|f| panic!("{name}: {f}"));
                let r = built.report(obj);
                assert!(r.passed(), "{name}: {r}");
            }
        }
    }

    #[test]
    fn emit_then_parse_is_the_identity() {
        for name in NAMES {
            let doc = document::<Q>(name).unwrap();
            let text = emit(&doc);
            let back = parse::<Q>(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert_eq!(back, doc, "{name}");
            assert_eq!(emit(&back), text, "{name}");
        }
    }

    #[test]
    fn unknown_entry_lists_the_catalog() {
        let err = document::<Q>("nope").unwrap_err().to_string();
        assert!(err.contains("ayd_kc2"));
    }

    #[test]
    fn lookup_by_object_name() {
        let (entry, doc) = containing::<Q>("ayd_kc2_cring").unwrap();
        assert_eq!(entry, "ayd_kc2");
        assert!(doc.objects.contains_key("M"));
        assert!(containing::<Q>("nothing here").is_none());
    }
}
