use cellspan::chain_complex::ChainComplex;
use cellspan::colorful::adin_tau;
use cellspan::cubical::{cube, mirror, SimplicialComplex, WeightVars};
use cellspan::spanning_trees::{
    conjecture_rhs, enumerate_trees, f_recurrence_check, is_apc, is_cst, tau_alternating, tau_cube_closed_form,
    tau_matrix_tree, verify_conjecture, weighted_tau_matrix_tree, DEFAULT_BRUTE_CAP,
};
use cellspan::verify::{minor_formulas, Case};
use cellspan::Error;
use num_bigint::BigInt;

fn int(c: &ChainComplex, k: usize) -> BigInt {
    tau_matrix_tree(c, k).unwrap().tau.as_int().unwrap().clone()
}

#[test]
fn tree_predicate() {
    let q2 = cube(2).unwrap().to_chain();
    let edges = q2.cells(1);
    assert_eq!(edges.len(), 4);
    for drop in 0..4 {
        let t: Vec<usize> = (0..4).filter(|&j| j != drop).collect();
        assert!(is_cst(&q2, 1, &t).unwrap().is_tree(), "path without {}", edges[drop]);
    }
    let all = is_cst(&q2, 1, &[0, 1, 2, 3]).unwrap();
    assert!(!all.right_size && !all.is_tree());

    let rp2 = ChainComplex::real_projective_plane();
    let c = is_cst(&rp2, 2, &[0]).unwrap();
    assert!(c.is_tree());
    assert_eq!(c.torsion, BigInt::from(2));
}

#[test]
fn apc_examples() {
    for n in 1..=4 {
        let q = cube(n).unwrap();
        for k in 0..=n as isize {
            assert!(is_apc(&q.skeleton(k).to_chain()), "skeleton {k} of Q_{n}");
        }
    }
    let path = SimplicialComplex::from_facets(vec![1, 2, 3], &[vec![1, 2], vec![1, 3]]).unwrap();
    assert!(!is_apc(&mirror(&path).to_chain()));
    assert!(is_apc(&ChainComplex::real_projective_plane()));
}

#[test]
fn engines_agree_on_small_cubes() {
    for n in 1..=3 {
        let q = cube(n).unwrap().to_chain();
        for k in 1..=n {
            let t = int(&q, k);
            assert_eq!(t, tau_cube_closed_form(n, k).unwrap(), "Q_{n}, k={k}");
            assert_eq!(t, tau_alternating(&q, k).unwrap(), "Q_{n}, k={k}");
            let b = enumerate_trees(&q, k, DEFAULT_BRUTE_CAP, None).unwrap();
            assert_eq!(b.tau.as_int(), Some(&t), "Q_{n}, k={k}");
        }
    }
    assert_eq!(tau_cube_closed_form(5, 5).unwrap(), BigInt::from(1));
    assert!(tau_cube_closed_form(3, 0).is_err());
}

#[test]
fn engines_reject_bad_input() {
    let path = SimplicialComplex::from_facets(vec![1, 2, 3], &[vec![1, 2], vec![1, 3]]).unwrap();
    let m = mirror(&path).to_chain();
    assert!(matches!(tau_matrix_tree(&m, 2), Err(Error::NotApc { .. })));
    let rp2 = ChainComplex::real_projective_plane();
    assert!(matches!(tau_alternating(&rp2, 2), Err(Error::Hypothesis(_))));
    let q4 = cube(4).unwrap().to_chain();
    assert!(matches!(enumerate_trees(&q4, 1, 10, None), Err(Error::CapExceeded { .. })));
}

#[test]
fn single_vertex() {
    let v = cube(0).unwrap().to_chain();
    assert_eq!(tau_alternating(&v, 0).unwrap(), BigInt::from(1));
}

#[test]
fn weighted_square() {
    let q2 = cube(2).unwrap();
    let w = WeightVars::new(q2.universe());
    let v = |c: char, d: u32| w.var(c, d).unwrap();
    let (q1, q2v, x1, x2, y1, y2) = (v('q', 1), v('q', 2), v('x', 1), v('x', 2), v('y', 1), v('y', 2));
    let a = &(&(&(&q1 * &q1) * &q2v) * &(&x2 * &y2)) * &(&x1 + &y1);
    let b = &(&(&(&q1 * &q2v) * &q2v) * &(&x1 * &y1)) * &(&x2 + &y2);
    let expect = &a + &b;
    let got = weighted_tau_matrix_tree(&q2, 1).unwrap();
    assert_eq!(got.tau.as_poly().unwrap(), &expect);
    assert_eq!(conjecture_rhs(2, 1).unwrap(), expect);
    let top = weighted_tau_matrix_tree(&q2, 2).unwrap();
    assert_eq!(top.tau.as_poly().unwrap(), &(&q1 * &q2v));
    assert_eq!(conjecture_rhs(2, 2).unwrap(), &q1 * &q2v);
    assert_eq!(conjecture_rhs(3, 1).unwrap().eval_ones(), BigInt::from(384));
}

#[test]
fn conjecture_small_cases() {
    for (n, k) in [(2, 1), (3, 2), (3, 1)] {
        let r = verify_conjecture(n, k, DEFAULT_BRUTE_CAP).unwrap();
        assert!(r.equal, "({n},{k})");
    }
    for (n, k) in [(3, 1), (3, 2), (4, 2)] {
        assert!(f_recurrence_check(n, k).unwrap().holds, "({n},{k})");
    }
}

#[test]
fn adin_examples() {
    assert_eq!(adin_tau(&[2, 2], 1).unwrap(), BigInt::from(4));
    assert_eq!(adin_tau(&[2, 2, 2], 1).unwrap(), BigInt::from(384));
    assert_eq!(adin_tau(&[2, 2, 2], 2).unwrap(), BigInt::from(8));
    assert_eq!(adin_tau(&[3, 3], 1).unwrap(), BigInt::from(81));
}

#[test]
fn minors_of_cube_skeleta() {
    for n in 2..=3 {
        let sk = cube(n).unwrap().skeleton(2).to_chain();
        for k in 1..=2 {
            assert!(matches!(minor_formulas(&sk, k).unwrap(), Case::Pass), "Q_{n}, k={k}");
        }
    }
}
