use std::sync::OnceLock;

use num_bigint::BigInt;
use proptest::prelude::*;

use coxtwist::coxeter::{CoxeterSystem, DEFAULT_ELEMENT_BUDGET};
use coxtwist::intmatrix::IntMatrix;
use coxtwist::poset::{export_json, import_json, twisted_poset, TwistedSet};
use coxtwist::presets::{resolve_group, resolve_twisted};
use coxtwist::topology::{smith_normal_form, sparse_invariant_factors};
use coxtwist::twisted::{TwistedInvolutions, TwistedSystem};

const GROUPS: [&str; 5] = ["A4", "B3", "F4", "affineA2", "I2(7)"];
const TWISTED: [&str; 5] = ["A5:flip", "E6:flip", "D5:swap", "affineA2", "F4:flip"];

fn systems() -> &'static Vec<CoxeterSystem> {
    static CELL: OnceLock<Vec<CoxeterSystem>> = OnceLock::new();
    CELL.get_or_init(|| GROUPS.iter().map(|g| resolve_group(g).unwrap().system).collect())
}

fn twisted() -> &'static Vec<TwistedSystem> {
    static CELL: OnceLock<Vec<TwistedSystem>> = OnceLock::new();
    CELL.get_or_init(|| TWISTED.iter().map(|g| resolve_twisted(g).unwrap()).collect())
}

fn word(max_len: usize) -> impl Strategy<Value = (usize, Vec<usize>)> {
    (0..GROUPS.len(), prop::collection::vec(0usize..4, 0..max_len))
}

/// Determinant by cofactor expansion, independent of the elimination code.
fn det(m: &[Vec<i64>]) -> i64 {
    if m.is_empty() {
        return 1;
    }
    (0..m.len())
        .map(|j| {
            let minor: Vec<Vec<i64>> = m[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &x)| x).collect())
                .collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * m[0][j] * det(&minor)
        })
        .sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn descents_match_length((g, w) in word(14), s in 0usize..4) {
        let sys = &systems()[g];
        let w: Vec<usize> = w.into_iter().map(|x| x % sys.rank()).collect();
        let s = s % sys.rank();
        let x = sys.evaluate(&w);
        let l = sys.length(&x);
        let xs = sys.mul_gen(&x, s);
        let ls = sys.length(&xs);
        prop_assert_eq!(sys.is_right_descent(&x, s), ls < l);
        prop_assert!(ls == l + 1 || ls + 1 == l);
    }

    #[test]
    fn reduced_words_evaluate_back((g, w) in word(14)) {
        let sys = &systems()[g];
        let w: Vec<usize> = w.into_iter().map(|x| x % sys.rank()).collect();
        let x = sys.evaluate(&w);
        let r = sys.reduced_word(&x);
        prop_assert_eq!(r.len(), sys.length(&x));
        prop_assert!(r.len() <= w.len());
        prop_assert_eq!(sys.evaluate(&r.0), x.clone());
        let inv = sys.inverse(&x);
        prop_assert!(sys.is_identity(&sys.multiply(&x, &inv).unwrap()));
        prop_assert_eq!(sys.length(&inv), r.len());
    }

    #[test]
    fn twisted_action_is_an_involution(g in 0..TWISTED.len(), expr in prop::collection::vec(0usize..6, 0..10), s in 0usize..6) {
        let ts = &twisted()[g];
        let n = ts.rank();
        let mut w = ts.system().identity();
        for x in expr {
            w = ts.twisted_action(&w, x % n);
        }
        let s = s % n;
        prop_assert!(ts.is_twisted_involution(&w));
        let ws = ts.twisted_action(&w, s);
        prop_assert!(ts.is_twisted_involution(&ws));
        prop_assert_eq!(ts.twisted_action(&ws, s), w.clone());
        let (r, rs) = (ts.rho(&w).unwrap(), ts.rho(&ws).unwrap());
        prop_assert!(r + 1 == rs || rs + 1 == r);
        prop_assert_eq!(rs < r, ts.system().is_right_descent(&w, s));
        let expr = ts.canonical_sexpr(&w).unwrap();
        prop_assert_eq!(expr.len(), r);
        prop_assert_eq!(ts.eval_sexpr(&expr), w);
    }

    #[test]
    fn invariant_factors_multiply_to_the_determinant(entries in prop::collection::vec(-6i64..6, 9..=9)) {
        let rows: Vec<Vec<i64>> = entries.chunks(3).map(|c| c.to_vec()).collect();
        let big: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let factors = smith_normal_form(&big);
        let d = det(&rows);
        if d == 0 {
            prop_assert!(factors.len() < 3);
        } else {
            prop_assert_eq!(factors.len(), 3);
            prop_assert_eq!(factors.iter().product::<BigInt>(), BigInt::from(d.abs()));
        }
        for pair in factors.windows(2) {
            prop_assert_eq!(&pair[1] % &pair[0], BigInt::from(0));
        }
        let columns: Vec<Vec<(usize, i64)>> = (0..3)
            .map(|c| (0..3).filter(|&r| rows[r][c] != 0).map(|r| (r, rows[r][c])).collect())
            .collect();
        prop_assert_eq!(sparse_invariant_factors(3, &columns), factors);
    }

    #[test]
    fn rectangular_sparse_and_dense_agree(rows in 1usize..6, cols in 1usize..6, seed in prop::collection::vec(-3i64..4, 36)) {
        let m: Vec<Vec<i64>> = (0..rows).map(|r| (0..cols).map(|c| seed[r * 6 + c]).collect()).collect();
        let big: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let columns: Vec<Vec<(usize, i64)>> = (0..cols)
            .map(|c| (0..rows).filter(|&r| m[r][c] != 0).map(|r| (r, m[r][c])).collect())
            .collect();
        prop_assert_eq!(sparse_invariant_factors(rows, &columns), smith_normal_form(&big));
    }

    #[test]
    fn generator_matrices_are_involutions(g in 0..GROUPS.len()) {
        let sys = &systems()[g];
        let id = IntMatrix::identity(sys.rank());
        for m in sys.generator_matrices() {
            prop_assert_eq!(m.mul(&m), id.clone());
            let d = m.determinant();
            prop_assert_eq!(&d * &d, BigInt::from(1));
        }
    }
}

#[test]
fn mobius_inversion_on_twisted_posets() {
    for name in ["A5:flip", "E6:flip", "D5:swap"] {
        let ts = resolve_twisted(name).unwrap();
        let inv = TwistedInvolutions::enumerate(&ts, None, DEFAULT_ELEMENT_BUDGET).unwrap();
        for set in [TwistedSet::Identities, TwistedSet::Involutions] {
            let p = twisted_poset(&ts, &inv, set);
            for u in 0..p.len() {
                let row = p.mobius_row(u);
                for v in p.up_set(u).ones() {
                    let total: i64 = p.down_set(v).ones().filter(|&x| p.leq(u, x)).map(|x| row[x]).sum();
                    assert_eq!(total, i64::from(u == v), "{name}");
                }
            }
        }
    }
}

#[test]
fn json_round_trip_preserves_the_order() {
    for (name, max_rank) in [("A5:flip", None), ("affineA2", Some(4)), ("D4:swap", None)] {
        let ts = resolve_twisted(name).unwrap();
        let inv = TwistedInvolutions::enumerate(&ts, max_rank, DEFAULT_ELEMENT_BUDGET).unwrap();
        let p = twisted_poset(&ts, &inv, TwistedSet::Involutions);
        let back = import_json(&export_json(&p)).unwrap();
        assert_eq!(back.len(), p.len());
        assert_eq!(back.covers(), p.covers());
        for u in 0..p.len() {
            for v in 0..p.len() {
                assert_eq!(back.leq(u, v), p.leq(u, v));
            }
            assert_eq!(back.element(u).sexpr, p.element(u).sexpr);
            assert_eq!(back.rank(u), p.rank(u));
        }
        assert_eq!(export_json(&back), export_json(&p));
    }
}
