//! Cross-checks of library results against independent computations done
//! here from first principles.

use std::collections::HashSet;

use coxtwist::coxeter::{CoxeterSystem, GroupElement, DEFAULT_ELEMENT_BUDGET};
use coxtwist::poincare::{group_order, poincare_fix, poincare_iota, poincare_w_closed_form, IntPolynomial};
use coxtwist::poset::{bruhat_poset, twisted_poset, TwistedBruhat, TwistedSet};
use coxtwist::presets::{resolve_group, resolve_twisted};
use coxtwist::topology::{interval_homology, OrderComplex, SimplicialComplex};
use coxtwist::twisted::{SExpression, TwistedInvolutions};

const B: usize = DEFAULT_ELEMENT_BUDGET;

fn system(name: &str) -> CoxeterSystem {
    resolve_group(name).unwrap().system
}

/// Products of all subwords of `word`.
fn subword_products(sys: &CoxeterSystem, word: &[usize]) -> HashSet<GroupElement> {
    let mut out = HashSet::new();
    for mask in 0u32..1 << word.len() {
        let sub: Vec<usize> = (0..word.len()).filter(|&i| mask >> i & 1 == 1).map(|i| word[i]).collect();
        out.insert(sys.evaluate(&sub));
    }
    out
}

#[test]
fn bruhat_order_matches_subword_definition() {
    for name in ["A3", "B3", "I2(5)"] {
        let sys = system(name);
        let all = sys.enumerate(None, B).unwrap();
        for v in 0..all.len() {
            let below = subword_products(&sys, &all.words[v].0);
            for u in 0..all.len() {
                assert_eq!(
                    sys.bruhat_leq(&all.elements[u], &all.elements[v]),
                    below.contains(&all.elements[u]),
                    "{name}: {} <= {}",
                    all.words[u].format(sys.rank()),
                    all.words[v].format(sys.rank())
                );
            }
        }
    }
}

#[test]
fn group_orders_match_degree_products() {
    for (name, order) in [
        ("A1", 2u64),
        ("A3", 24),
        ("A5", 720),
        ("B3", 48),
        ("B4", 384),
        ("D4", 192),
        ("D5", 1920),
        ("F4", 1152),
        ("E6", 51840),
        ("I2(5)", 10),
        ("I2(7)", 14),
        ("I2(6)", 12),
    ] {
        let sys = system(name);
        assert_eq!(group_order(&sys, B).unwrap(), order.into(), "{name}");
        let closed = poincare_w_closed_form(&sys).unwrap();
        let counted = IntPolynomial::from_counts(&sys.enumerate(None, B).unwrap().length_profile());
        assert_eq!(closed, counted, "{name}");
    }
}

#[test]
fn braid_relations_hold() {
    for name in ["A4", "B3", "F4", "E6", "I2(5)", "affineA2", "I2(8)"] {
        let sys = system(name);
        for s in 0..sys.rank() {
            assert!(sys.is_identity(&sys.evaluate(&[s, s])));
            for t in s + 1..sys.rank() {
                let Some(m) = sys.matrix().m(s, t) else { continue };
                let word: Vec<usize> = (0..2 * m as usize).map(|i| if i % 2 == 0 { s } else { t }).collect();
                assert!(sys.is_identity(&sys.evaluate(&word)), "{name}: ({s}{t})^{m}");
                let shorter = &word[..2 * (m as usize - 1)];
                assert!(!sys.is_identity(&sys.evaluate(shorter)), "{name}: order of s{s}s{t} below {m}");
            }
        }
    }
}

/// Permutation of `{0..n}` for the generator `s_i = (i, i+1)`.
fn transposition(n: usize, i: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.swap(i, i + 1);
    p
}

fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    // (a b)(x) = a(b(x))
    b.iter().map(|&x| a[x]).collect()
}

fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in all_permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

#[test]
fn a5_flip_counts_in_the_permutation_model() {
    // θ is conjugation by w0, so w is a twisted involution iff w0 w is an
    // involution (or the identity); twisted identities correspond to the
    // conjugates of w0.
    let n = 6;
    let w0: Vec<usize> = (0..n).rev().collect();
    let perms = all_permutations(n);
    assert_eq!(perms.len(), 720);
    let identity: Vec<usize> = (0..n).collect();
    let involutions = perms.iter().filter(|p| compose(p, p) == identity).count();
    let conjugates: HashSet<Vec<usize>> = perms
        .iter()
        .map(|p| {
            let inv: Vec<usize> = {
                let mut q = vec![0; n];
                for (i, &x) in p.iter().enumerate() {
                    q[x] = i;
                }
                q
            };
            compose(&compose(p, &w0), &inv)
        })
        .collect();

    let ts = resolve_twisted("A5:flip").unwrap();
    let inv = TwistedInvolutions::enumerate(&ts, None, B).unwrap();
    assert_eq!(inv.len(), involutions);
    assert_eq!(inv.identities().len(), conjugates.len());

    let sys = ts.system();
    let mut images = HashSet::new();
    for e in inv.elements() {
        let word = sys.reduced_word(&e.element).0;
        let perm = word.iter().fold(identity.clone(), |acc, &s| compose(&acc, &transposition(n, s)));
        let x = compose(&w0, &perm);
        assert_eq!(compose(&x, &x), identity);
        assert_eq!(conjugates.contains(&x), e.is_twisted_identity());
        images.insert(perm);
    }
    assert_eq!(images.len(), inv.len());
}

#[test]
fn twisted_lifting_matches_subwords_and_recursion() {
    for (name, max_rank) in [("A3:flip", None), ("D4:swap", None), ("affineA2", Some(4)), ("I2(5):swap", None)] {
        let ts = resolve_twisted(name).unwrap();
        let inv = TwistedInvolutions::enumerate(&ts, max_rank, B).unwrap();
        let table = inv.leq_table();
        for v in 0..inv.len() {
            for u in 0..inv.len() {
                let lifted = table[v].contains(u);
                let (eu, ev) = (inv.get(u), inv.get(v));
                assert_eq!(lifted, ts.bruhat_leq_twisted(eu, ev).unwrap(), "{name}");
                assert_eq!(lifted, ts.subword_check_bruteforce(&eu.element, &ev.sexpr).unwrap(), "{name}");
            }
        }
    }
}

#[test]
fn twisted_order_is_induced_from_bruhat_order() {
    // on twisted involutions the twisted order agrees with ordinary Bruhat order
    for name in ["A4:flip", "B3:id", "D4:swap"] {
        let ts = resolve_twisted(name).unwrap();
        let inv = TwistedInvolutions::enumerate(&ts, None, B).unwrap();
        let table = inv.leq_table();
        let sys = ts.system();
        for v in 0..inv.len() {
            for u in 0..inv.len() {
                assert_eq!(table[v].contains(u), sys.bruhat_leq(&inv.get(u).element, &inv.get(v).element));
            }
        }
    }
}

#[test]
fn sexpressions_are_reduced() {
    for name in ["E6:flip", "F4:flip", "D5:swap"] {
        let ts = resolve_twisted(name).unwrap();
        let inv = TwistedInvolutions::enumerate(&ts, None, B).unwrap();
        for e in inv.elements() {
            assert_eq!(e.sexpr.len(), e.rho);
            assert_eq!(ts.eval_sexpr(&e.sexpr), e.element);
            assert_eq!(ts.system().length(&e.element), e.length());
        }
    }
}

#[test]
fn mobius_equals_reduced_euler_characteristic() {
    for (name, max_rank) in [("A4:flip", None), ("D4:swap", None), ("affineA2", Some(4))] {
        let tb = TwistedBruhat::new(resolve_twisted(name).unwrap(), max_rank, B).unwrap();
        let p = tb.iota();
        for u in 0..p.len() {
            let row = p.mobius_row(u);
            for v in p.up_set(u).ones().filter(|&v| v != u) {
                let oc = OrderComplex::new(p, u, v, 1_000_000).unwrap();
                let chi = oc.complex.reduced_euler_characteristic();
                assert_eq!(row[v], chi, "{name}");
                let h = interval_homology(p, u, v, 1_000_000).unwrap();
                assert_eq!(h.homology.euler_characteristic(), chi);
            }
        }
    }
}

#[test]
fn rank_two_intervals_of_twisted_involutions_have_two_elements() {
    for name in ["A5:flip", "D4:swap", "A4:flip", "affineA2"] {
        let max_rank = (name == "affineA2").then_some(5);
        let ts = resolve_twisted(name).unwrap();
        let inv = TwistedInvolutions::enumerate(&ts, max_rank, B).unwrap();
        let p = twisted_poset(&ts, &inv, TwistedSet::Involutions);
        for u in 0..p.len() {
            for v in p.up_set(u).ones().filter(|&v| p.rank(v) == p.rank(u) + 2) {
                assert_eq!(p.open_interval(u, v).len(), 2, "{name}");
            }
        }
    }
}

#[test]
fn order_complex_of_boolean_lattice_is_a_sphere() {
    // Br(A1 × A1 × A1) is the Boolean lattice B3; its proper part is S^1
    let sys = CoxeterSystem::new(coxtwist::coxeter::CoxeterMatrix::from_edges(3, &[])).unwrap();
    let all = sys.enumerate(None, B).unwrap();
    let p = bruhat_poset(&sys, &all);
    let top = p.maximal_elements()[0];
    let h = interval_homology(&p, 0, top, 1000).unwrap();
    assert_eq!(h.classification.to_string(), "SPHERE(1)");
    assert_eq!(h.f_vector, vec![6, 6]);
    // hand-built hexagon gives the same homology
    let hexagon = SimplicialComplex::from_facets(&(0..6).map(|i| vec![i, (i + 1) % 6]).collect::<Vec<_>>());
    assert_eq!(hexagon.chain_complex().reduced_homology().unwrap(), h.homology);
}

#[test]
fn fixed_point_subgroups_have_expected_series() {
    let q = IntPolynomial::q_integer;
    let b3 = &(&q(2) * &q(4)) * &q(6);
    let ts = resolve_twisted("A5:flip").unwrap();
    assert_eq!(poincare_fix(&ts, B).unwrap(), b3);
    let e6 = resolve_twisted("E6:flip").unwrap();
    let fix = poincare_fix(&e6, B).unwrap();
    assert_eq!(fix.eval_at_one(), 1152.into());
    assert_eq!(fix, IntPolynomial::from_degrees(&[2, 6, 8, 12]));
    assert_eq!(
        poincare_iota(&e6, None, B).unwrap().polynomial.eval_at_one(),
        (51840 / 1152).into()
    );
}

#[test]
fn cosets_of_the_fixed_subgroup_count_twisted_identities() {
    for name in ["A2:flip", "A3:flip", "A4:flip", "A5:flip", "D4:swap", "D5:swap", "E6:flip", "F4:flip", "I2(5):swap", "I2(6):swap", "B3", "square(A2)"] {
        let ts = resolve_twisted(name).unwrap();
        let iota = poincare_iota(&ts, None, B).unwrap().polynomial.eval_at_one();
        let fix = poincare_fix(&ts, B).unwrap().eval_at_one();
        assert_eq!(iota * fix, group_order(ts.system(), B).unwrap(), "{name}");
    }
}

#[test]
fn type_d_twisted_identities_are_chains() {
    for n in 4..=6 {
        let ts = resolve_twisted(&format!("D{n}:swap")).unwrap();
        let inv = TwistedInvolutions::enumerate(&ts, None, B).unwrap();
        let found: HashSet<GroupElement> =
            inv.identities().into_iter().map(|i| inv.get(i).element.clone()).collect();
        let chains: HashSet<GroupElement> = (1..=n)
            .map(|k| ts.eval_sexpr(&SExpression((1..k).collect())))
            .collect();
        assert_eq!(found, chains, "D{n}");
    }
}
