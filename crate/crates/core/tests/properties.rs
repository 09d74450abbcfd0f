use proptest::prelude::*;

use coring_lab::coalgebra::Coalgebra;
use coring_lab::document::{emit, parse, Document};
use coring_lab::hopf::Hopf;
use coring_lab::matrix::{flip, solve, tensor_vec};
use coring_lab::{Field, Fp, Matrix, Rational};

type Q = Rational;
type F7 = Fp<7>;
type Big = Fp<2147483647>;

fn matrix<F: Field>(rows: usize, cols: usize) -> impl Strategy<Value = Matrix<F>> {
    proptest::collection::vec(-4i64..=4, rows * cols)
        .prop_map(move |v| Matrix::from_vec(rows, cols, v.into_iter().map(F::from_i64).collect()))
}

fn any_matrix<F: Field>() -> impl Strategy<Value = Matrix<F>> {
    (0usize..6, 0usize..6).prop_flat_map(|(r, c)| matrix::<F>(r, c))
}

fn rank_nullity<F: Field>(m: &Matrix<F>) -> Result<(), TestCaseError> {
    let ker = m.kernel();
    prop_assert_eq!(m.rank() + ker.dim(), m.cols());
    prop_assert!(m.mul(&ker.inclusion).is_zero());
    prop_assert_eq!(ker.inclusion.rank(), ker.dim());
    prop_assert_eq!(m.transpose().rank(), m.rank());
    Ok(())
}

proptest! {
    #[test]
    fn rank_nullity_over_q(m in any_matrix::<Q>()) {
        rank_nullity(&m)?;
    }

    #[test]
    fn rank_nullity_over_f7(m in any_matrix::<F7>()) {
        rank_nullity(&m)?;
    }

    #[test]
    fn rank_nullity_over_a_large_prime(m in any_matrix::<Big>()) {
        rank_nullity(&m)?;
    }

    #[test]
    fn kron_is_functorial(
        a in matrix::<Q>(2, 3), c in matrix::<Q>(3, 2),
        b in matrix::<Q>(3, 2), d in matrix::<Q>(2, 2),
    ) {
        prop_assert_eq!(a.kron(&b).mul(&c.kron(&d)), a.mul(&c).kron(&b.mul(&d)));
    }

    #[test]
    fn kron_acts_on_pure_tensors(a in matrix::<F7>(2, 3), b in matrix::<F7>(3, 2),
                                 x in proptest::collection::vec(-3i64..=3, 3),
                                 y in proptest::collection::vec(-3i64..=3, 2)) {
        let x: Vec<F7> = x.into_iter().map(F7::from_i64).collect();
        let y: Vec<F7> = y.into_iter().map(F7::from_i64).collect();
        prop_assert_eq!(a.kron(&b).apply(&tensor_vec(&x, &y)), tensor_vec(&a.apply(&x), &b.apply(&y)));
    }

    #[test]
    fn flip_swaps_factors(dv in 1usize..4, dw in 1usize..4,
                          x in proptest::collection::vec(-3i64..=3, 3),
                          y in proptest::collection::vec(-3i64..=3, 3)) {
        let x: Vec<Q> = x[..dv].iter().map(|&n| Q::from_i64(n)).collect();
        let y: Vec<Q> = y[..dw].iter().map(|&n| Q::from_i64(n)).collect();
        prop_assert_eq!(flip::<Q>(dv, dw).apply(&tensor_vec(&x, &y)), tensor_vec(&y, &x));
        prop_assert_eq!(flip::<Q>(dw, dv).mul(&flip(dv, dw)), Matrix::identity(dv * dw));
    }

    #[test]
    fn inverse_when_full_rank(m in (1usize..5).prop_flat_map(|n| matrix::<Q>(n, n))) {
        match m.inverse() {
            Some(inv) => {
                prop_assert_eq!(m.mul(&inv), Matrix::identity(m.rows()));
                prop_assert_eq!(inv.mul(&m), Matrix::identity(m.rows()));
            }
            None => prop_assert!(m.rank() < m.rows()),
        }
    }

    #[test]
    fn solve_finds_a_preimage(m in any_matrix::<Q>(), seed in proptest::collection::vec(-3i64..=3, 6)) {
        let x: Vec<Q> = seed[..m.cols()].iter().map(|&n| Q::from_i64(n)).collect();
        let y = m.apply(&x);
        let found = solve(&m, &y).expect("y lies in the image");
        prop_assert_eq!(m.apply(&found), y);
    }

    #[test]
    fn prime_field_distributes_and_inverts(a in 0u64..7, b in 0u64..7, c in 0u64..7) {
        let (a, b, c) = (F7::from_i64(a as i64), F7::from_i64(b as i64), F7::from_i64(c as i64));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        match a.inv() {
            Some(i) => prop_assert!(a.mul(&i).is_one()),
            None => prop_assert!(a.is_zero()),
        }
    }

    #[test]
    fn rationals_print_and_parse_back(n in -1_000_000i64..1_000_000, d in 1i64..1000) {
        let q = Q::new(n, d);
        prop_assert_eq!(Q::parse(&q.to_string()), Some(q));
    }

    #[test]
    fn documents_round_trip(dims in proptest::collection::vec(0usize..4, 1..4),
                            entries in proptest::collection::vec((-50i64..50, 1i64..9), 64)) {
        let mut doc = Document::<Q>::new();
        let names: Vec<String> = (0..dims.len()).map(|i| format!("V{i}")).collect();
        for (name, &dim) in names.iter().zip(&dims) {
            doc.put_space(name, dim);
        }
        let mut pool = entries.iter().cycle().map(|&(n, d)| Q::new(n, d));
        for (i, name) in names.iter().enumerate() {
            let src = &names[(i + 1) % names.len()];
            let (rows, cols) = (dims[i], dims[(i + 1) % dims.len()] * dims[i]);
            let data = (0..rows * cols).map(|_| pool.next().unwrap()).collect();
            doc.put_map(&format!("f{i}"), &[src.as_str(), name.as_str()], &[name.as_str()], Matrix::from_vec(rows, cols, data));
        }
        let text = emit(&doc);
        let back = parse::<Q>(&text).unwrap();
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(emit(&back), text);
    }
}

#[test]
fn small_hopf_and_grouplike_structures_pass() {
    for n in 1..=5 {
        assert!(Coalgebra::<Q>::grouplike(n).check().passed());
        let h = Hopf::<F7>::cyclic_group(n);
        assert!(h.check().passed(), "kC{n} mod 7: {}", h.check());
    }
    assert!(Hopf::<Fp<3>>::sweedler_h4().check().passed());
}
