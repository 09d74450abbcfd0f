use super::*;
use crate::field::{Fp, Rational};

type Q = Rational;

const MINIMAL: &str = r#"{
  "version": 1,
  "field": "rational",
  "spaces": {"k": 1},
  "maps": {
    "mul": {"src": ["k", "k"], "dst": ["k"], "data": [["1"]]},
    "unit": {"src": [], "dst": ["k"], "data": [["1"]]}
  },
  "objects": {
    "k": {"kind": "algebra", "space": "k", "mul": "mul", "unit": "unit"}
  }
}"#;

fn parse_err(text: &str) -> (usize, usize, String) {
    match parse::<Q>(text) {
        Err(Error::Parse { line, col, message }) => (line, col, message),
        other => panic!("expected a positioned diagnostic, got {other:?}"),
    }
}

#[test]
fn minimal_document_parses_and_checks() {
    let doc = parse::<Q>(MINIMAL).unwrap();
    assert_eq!(doc.spaces["k"], 1);
    let built = doc.build("k").unwrap();
    assert!(built.check().passed());
}

#[test]
fn wrong_shape_names_the_map_and_the_shape() {
    let text = MINIMAL.replace(r#""data": [["1"]]},"#, r#""data": [["1", "0"]]},"#);
    let (line, col, msg) = parse_err(&text);
    assert!(msg.contains("'mul'") && msg.contains("1x1"), "{msg}");
    assert_eq!(line, 6);
    assert!(col > 40, "{col}");
}

#[test]
fn object_shape_mismatch_points_at_the_field() {
    let text = MINIMAL
        .replace(r#""spaces": {"k": 1}"#, r#""spaces": {"k": 1, "V": 2}"#)
        .replace(r#""src": [], "dst": ["k"], "data": [["1"]]}"#, r#""src": [], "dst": ["V"], "data": [["1"], ["0"]]}"#);
    let (line, _, msg) = parse_err(&text);
    assert_eq!(line, 10);
    assert!(msg.contains("field 'unit'") && msg.contains("has shape 2x1, expected 1x1"), "{msg}");
}

#[test]
fn dangling_reference() {
    let text = MINIMAL.replace(r#""unit": "unit"}"#, r#""unit": "missing"}"#);
    let (line, _, msg) = parse_err(&text);
    assert_eq!(line, 10);
    assert!(msg.contains("dangling reference to map 'missing'"), "{msg}");
}

#[test]
fn undeclared_space_in_a_map() {
    let text = MINIMAL.replace(r#""src": [], "dst": ["k"]"#, r#""src": [], "dst": ["V"]"#);
    let (line, _, msg) = parse_err(&text);
    assert_eq!(line, 7);
    assert!(msg.contains("undeclared space 'V'"), "{msg}");
}

#[test]
fn unknown_kind() {
    let text = MINIMAL.replace(r#""kind": "algebra""#, r#""kind": "semiring""#);
    let (line, col, msg) = parse_err(&text);
    assert_eq!((line, col), (10, 19));
    assert!(msg.contains("unknown object kind 'semiring'"), "{msg}");
}

#[test]
fn malformed_scalars() {
    for bad in [r#""1/0""#, r#""one""#, "1"] {
        let text = MINIMAL.replace(r#""data": [["1"]]},"#, &format!(r#""data": [[{bad}]]}},"#));
        let (line, _, msg) = parse_err(&text);
        assert_eq!(line, 6);
        assert!(msg.contains("malformed scalar"), "{bad}: {msg}");
    }
}

#[test]
fn unknown_keys_are_rejected() {
    let text = MINIMAL.replace(r#""version": 1,"#, r#""version": 1, "comment": "x","#);
    assert!(parse_err(&text).2.contains("unknown key 'comment'"));
    let text = MINIMAL.replace(r#""unit": "unit"}"#, r#""unit": "unit", "colour": "red"}"#);
    let msg = parse_err(&text).2;
    assert!(msg.contains("field 'colour'") && msg.contains("unknown field"), "{msg}");
}

#[test]
fn version_and_field_are_mandatory() {
    let text = MINIMAL.replace(r#""version": 1,"#, "");
    assert!(parse_err(&text).2.contains("version"));
    let text = MINIMAL.replace(r#""version": 1,"#, r#""version": 2,"#);
    assert!(parse_err(&text).2.contains("unsupported version 2"));
    let text = MINIMAL.replace(r#""field": "rational","#, r#""field": "reals","#);
    assert!(parse_err(&text).2.contains("unknown field 'reals'"));
}

#[test]
fn syntax_errors_carry_the_parser_position() {
    let text = MINIMAL.replace(r#""k": 1}"#, r#""k": 1,}"#);
    let (line, _, _) = parse_err(&text);
    assert_eq!(line, 4);
}

#[test]
fn field_must_match_unless_reinterpreted() {
    let err = parse::<Fp<5>>(MINIMAL).unwrap_err();
    assert!(err.to_string().contains("expected prime:5"), "{err}");
    let doc = parse_over::<Fp<5>>(MINIMAL).unwrap();
    assert!(emit(&doc).contains("\"prime:5\""));
    assert_eq!(peek_field(MINIMAL).unwrap(), FieldSpec::Rational);
}

#[test]
fn rationals_are_normalized_on_emit() {
    let text = MINIMAL.replace(r#""data": [["1"]]},"#, r#""data": [["6/6"]]},"#);
    let doc = parse::<Q>(&text).unwrap();
    let out = emit(&doc);
    assert!(!out.contains("6/6"));
    assert_eq!(parse::<Q>(&out).unwrap(), doc);
}

#[test]
fn big_rationals_survive_the_round_trip() {
    let big = "123456789012345678901234567891/7";
    let text = MINIMAL.replace(r#""data": [["1"]]},"#, &format!(r#""data": [["{big}"]]}},"#));
    // Not an algebra any more, so only the map layer is exercised.
    let text = text.replace(r#""k": {"kind": "algebra", "space": "k", "mul": "mul", "unit": "unit"}"#, "");
    let doc = parse::<Q>(&text).unwrap();
    assert_eq!(doc.maps["mul"].matrix.get(0, 0).to_string(), big);
    assert_eq!(parse::<Q>(&emit(&doc)).unwrap(), doc);
}

#[test]
fn connections_need_a_consistent_pairing() {
    let mut doc = Document::<Q>::new();
    doc.put_algebra("k", "k", &crate::algebra::Algebra::ground());
    let nabla = doc.put_map("n", &["k"], &["k"], Matrix::identity(1));
    doc.put_object("c", Kind::Connection, vec![("module", Entry::one("k")), ("nabla", Entry::One(nabla))]);
    let err = doc.build("c").unwrap_err().to_string();
    assert!(err.contains("'k' has kind algebra, expected module or bimodule"), "{err}");
}
