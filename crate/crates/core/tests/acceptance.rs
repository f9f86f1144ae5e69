//! Acceptance criteria, one PASS/FAIL line each. Runs as a plain binary so that every
//! criterion is reported even when an earlier one fails.

use std::collections::{BTreeMap, HashMap};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;

use cellspan::chain_complex::{ChainComplex, Family};
use cellspan::colorful::{adin_tau, cross_polytope_cube_duality};
use cellspan::corpus::{colorful_sizes, corpus, shifted_corpus, CorpusLimits};
use cellspan::cubical::{algebraic_boundaries, algebraic_laplacian, cube, cube_weighted_tot_eigenvalues, WeightVars};
use cellspan::exact_algebra::{binom_usize, char_poly_rational};
use cellspan::spanning_trees::{
    enumerate_trees, f_recurrence_check, tau_alternating, tau_cube_closed_form, tau_matrix_tree, verify_conjecture,
    DEFAULT_BRUTE_CAP,
};
use cellspan::verify::{
    adin_agrees, check_all, colorful_closed_forms, laplacian_integral, matroid_mirror_non_integral,
    mirror_of_path_not_apc, near_prism_betti, prism_identities, shifted_recursion, spectral_identities, Case, Check,
    CONJECTURE_CASES, RECURRENCE_CASES,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<(), String>;

fn ensure(ok: bool, why: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(why())
    }
}

fn from_check(c: Check) -> Outcome {
    ensure(c.passed, || format!("{}: {}", c.name, c.detail.unwrap_or_default()))
}

fn tau_int(c: &ChainComplex, k: usize) -> BigInt {
    tau_matrix_tree(c, k).unwrap().tau.as_int().unwrap().clone()
}

fn brute(c: &ChainComplex, k: usize) -> (BigInt, usize) {
    let r = enumerate_trees(c, k, DEFAULT_BRUTE_CAP, None).unwrap();
    (r.tau.as_int().unwrap().clone(), r.trees.unwrap())
}

/// Eigenvalue generating function `{exponent: multiplicity}` of a spectrum.
fn gf(c: &ChainComplex, k: isize, f: Family) -> BTreeMap<u64, usize> {
    c.spectrum(k, f).unwrap().generating_function().expect("integral spectrum")
}

fn cube_spectra() -> Outcome {
    for n in 1..=4usize {
        let q = cube(n).unwrap().to_chain();
        for k in 0..=n {
            let mut tot = BTreeMap::new();
            for j in 0..=n - k {
                tot.insert(2 * (k + j) as u64, binom_usize(n as i64, k as i64) * binom_usize((n - k) as i64, j as i64));
            }
            ensure(gf(&q, k as isize, Family::Tot) == tot, || format!("E^tot_{k}(Q_{n})"))?;
            let ud: BTreeMap<u64, usize> = (k + 1..=n)
                .map(|j| (2 * j as u64, binom_usize(n as i64, j as i64) * binom_usize(j as i64 - 1, k as i64)))
                .filter(|&(_, m)| m > 0)
                .collect();
            let mut direct = gf(&q, k as isize, Family::Ud);
            direct.remove(&0);
            ensure(direct == ud, || format!("E^ud_{k}(Q_{n})"))?;
        }
    }
    Ok(())
}

fn cube_trees() -> Outcome {
    let q2 = cube(2).unwrap().to_chain();
    let four = BigInt::from(4);
    ensure(brute(&q2, 1) == (four.clone(), 4), || "brute force on Q_2".into())?;
    ensure(tau_int(&q2, 1) == four, || "matrix-tree on Q_2".into())?;
    ensure(tau_alternating(&q2, 1).unwrap() == four, || "alternating product on Q_2".into())?;
    ensure(tau_cube_closed_form(2, 1).unwrap() == four, || "closed form on Q_2".into())?;
    let q3 = cube(3).unwrap().to_chain();
    let t = BigInt::from(384);
    ensure(tau_int(&q3, 1) == t && tau_cube_closed_form(3, 1).unwrap() == t, || "tau_1(Q_3)".into())?;
    ensure(brute(&q3, 1).0 == t && tau_alternating(&q3, 1).unwrap() == t, || "tau_1(Q_3) by brute force".into())?;
    ensure(brute(&q3, 2) == (BigInt::from(6), 6), || "tau_2(Q_3) by brute force".into())?;
    let q4 = cube(4).unwrap().to_chain();
    ensure(tau_int(&q4, 2) == BigInt::from(82944), || "tau_2(Q_4) by matrix-tree".into())?;
    ensure(tau_cube_closed_form(4, 2).unwrap() == BigInt::from(82944), || "tau_2(Q_4) closed form".into())?;
    ensure(tau_int(&q4, 3) == BigInt::from(8), || "tau_3(Q_4) by matrix-tree".into())?;
    ensure(tau_cube_closed_form(4, 3).unwrap() == BigInt::from(8), || "tau_3(Q_4) closed form".into())
}

fn torsion() -> Outcome {
    let rp2 = ChainComplex::real_projective_plane();
    let r = enumerate_trees(&rp2, 2, DEFAULT_BRUTE_CAP, None).unwrap();
    ensure(r.tau.as_int() == Some(&BigInt::from(4)), || format!("brute force gives {}", r.tau))?;
    ensure(r.per_tree.len() == 1 && r.per_tree[0].torsion == BigInt::from(2), || "torsion of the tree".into())?;
    ensure(tau_int(&rp2, 2) == BigInt::from(4), || "reduced Laplacian determinant".into())
}

fn identities() -> Outcome {
    let entries = corpus(CorpusLimits::default()).unwrap();
    from_check(check_all("spectral identities", &entries, |e| e.name.clone(), |e| spectral_identities(&e.chain)))
}

fn prism() -> Outcome {
    let entries = corpus(CorpusLimits::default()).unwrap();
    from_check(check_all("prism", &entries, |e| e.name.clone(), |e| prism_identities(&e.chain, e.cubical.as_ref())))?;
    let p = cube(1).unwrap().to_chain().product(&cube(2).unwrap().to_chain()).unwrap();
    let q3 = cube(3).unwrap().to_chain();
    for i in 0..=3 {
        for f in [Family::Ud, Family::Du, Family::Tot] {
            ensure(p.spectrum(i, f).unwrap() == q3.spectrum(i, f).unwrap(), || format!("product {f:?}_{i}"))?;
        }
    }
    Ok(())
}

/// Multiplies out `∏ (y − r)` as coefficients, lowest degree first.
fn from_roots(roots: &[BigRational]) -> Vec<BigRational> {
    let mut p = vec![BigRational::one()];
    for r in roots {
        let mut next = vec![BigRational::zero(); p.len() + 1];
        for (i, c) in p.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= c * r;
        }
        p = next;
    }
    p
}

fn weighted_cube() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for n in 1..=3usize {
        let x = cube(n).unwrap();
        for (k, pair) in algebraic_boundaries(&x).windows(2).enumerate() {
            if pair[0].ncols() > 0 && pair[1].ncols() > 0 {
                ensure(pair[0].mul(&pair[1]).unwrap().is_zero(), || format!("composition at {k} on Q_{n}"))?;
            }
        }
        let w = WeightVars::new(x.universe());
        for _ in 0..3 {
            let point: HashMap<String, BigRational> = w
                .vars()
                .iter()
                .map(|v| {
                    let num: i64 = rng.gen_range(1..=40);
                    let den: i64 = rng.gen_range(1..=40);
                    (v.clone(), BigRational::new(num.into(), den.into()))
                })
                .collect();
            for i in 0..=n {
                let l = algebraic_laplacian(&x, i, Family::Tot).unwrap().eval(&point).unwrap();
                let chi = char_poly_rational(&l).unwrap();
                let roots: Vec<BigRational> = cube_weighted_tot_eigenvalues(x.universe(), i)
                    .iter()
                    .flat_map(|(u, m)| std::iter::repeat(u.eval(&point).unwrap()).take(*m))
                    .collect();
                ensure(chi == from_roots(&roots), || format!("L^tot_{i}(Q_{n}) at a random point"))?;
            }
        }
    }
    Ok(())
}

fn conjecture() -> Outcome {
    for (n, k) in CONJECTURE_CASES {
        let r = verify_conjecture(n, k, DEFAULT_BRUTE_CAP).unwrap();
        ensure(r.equal, || format!("({n},{k}) differs at {:?}", r.difference))?;
    }
    for (n, k) in RECURRENCE_CASES {
        ensure(f_recurrence_check(n, k).unwrap().holds, || format!("F recurrence ({n},{k})"))?;
    }
    Ok(())
}

fn colorful() -> Outcome {
    for (a, k, t) in [(vec![2, 2], 1, 4), (vec![2, 2, 2], 1, 384), (vec![2, 2, 2], 2, 8), (vec![3, 3], 1, 81)] {
        ensure(adin_tau(&a, k).unwrap() == BigInt::from(t), || format!("adin_tau({a:?}, {k})"))?;
    }
    let small = colorful_sizes(8);
    from_check(check_all("Adin", &small, |a| format!("{a:?}"), |a| adin_agrees(a, DEFAULT_BRUTE_CAP)))?;
    let all = colorful_sizes(9);
    from_check(check_all("closed forms", &all, |a| format!("{a:?}"), |a| colorful_closed_forms(a)))
}

fn duality() -> Outcome {
    for n in 1..=3 {
        let r = cross_polytope_cube_duality(n, 200, 7, 6).unwrap();
        ensure(r.holds(), || format!("n={n}: {r:?}"))?;
        if n == 2 {
            ensure(r.complement_cases == 32, || "n=2 should be exhaustive".into())?;
        }
        if n == 3 {
            ensure(r.complement_cases == 200, || "n=3 should use 200 samples".into())?;
        }
    }
    Ok(())
}

fn shifted() -> Outcome {
    let family = shifted_corpus(4);
    from_check(check_all("recursion", &family, |p| p.0.clone(), |p| shifted_recursion(&p.1)))?;
    from_check(check_all("integrality", &family, |p| p.0.clone(), |p| {
        Ok(if laplacian_integral(&p.1.to_chain())? { Case::Pass } else { Case::Fail("non-integral".into()) })
    }))?;
    ensure(mirror_of_path_not_apc().unwrap(), || "mirror of the path 12, 13 is APC".into())?;
    ensure(matroid_mirror_non_integral().unwrap(), || {
        "mirror of 124, 125, 134, 135 is Laplacian integral (it is the prism over C4 x C4)".into()
    })
}

fn near_prism() -> Outcome {
    let family = shifted_corpus(4);
    from_check(check_all("Betti prediction", &family, |p| p.0.clone(), |p| near_prism_betti(&p.1)))
}

/// Criteria that cannot pass because the claim they test is false; each one still prints
/// FAIL, but does not fail the run.
const KNOWN_RED: &[(usize, &str)] = &[(
    10,
    "the stated non-integral mirror is the prism over C4 x C4, whose spectra are integral",
)];

fn main() -> ExitCode {
    let criteria: Vec<(usize, &str, fn() -> Outcome)> = vec![
        (1, "cube spectra", cube_spectra),
        (2, "cube tree counts", cube_trees),
        (3, "torsion in tree counts", torsion),
        (4, "spectral identities on the corpus", identities),
        (5, "prism and product spectra", prism),
        (6, "weighted cube spectra", weighted_cube),
        (7, "weighted tree enumerator formula", conjecture),
        (8, "colorful complexes", colorful),
        (9, "cube and cross-polytope duality", duality),
        (10, "shifted complexes", shifted),
        (11, "near-prism Betti numbers", near_prism),
    ];
    let mut unexpected = 0;
    for (id, name, f) in criteria {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(()) => println!("PASS {id:>2} {name}"),
            Err(why) => {
                let known = KNOWN_RED.iter().find(|(k, _)| *k == id);
                println!("FAIL {id:>2} {name}: {why}");
                match known {
                    Some((_, reason)) => println!("        known: {reason}"),
                    None => unexpected += 1,
                }
            }
        }
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
