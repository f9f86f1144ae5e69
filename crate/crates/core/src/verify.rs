//! Property suites over the built-in corpus. Each check reports pass or fail together with
//! the first offending case; conjecture checks are informational and never count as hard
//! failures.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::chain_complex::{ChainComplex, Family};
use crate::colorful::{
    adin_tau, colorful_complex, colorful_etot, colorful_omega, cross_polytope_cube_duality, weighted_duality_check,
};
use crate::corpus::{colorful_name, colorful_sizes, corpus, shifted_corpus, CorpusEntry, CorpusLimits};
use crate::cubical::{
    algebraic_boundaries, algebraic_laplacian, all_simplicial_complexes, cube, is_shifted, is_shifted_relaxed, mirror,
    near_prism_betti_check, shifted_spectrum_at, CubicalComplex, Face, SimplicialComplex,
};
use crate::error::{Error, Result};
use crate::exact_algebra::{det_exact, IntPoly, Spectrum};
use crate::spanning_trees::{
    enumerate_trees, f_recurrence_check, is_cst, tau_alternating, tau_cube_closed_form, tau_matrix_tree, tree_size,
    verify_conjecture, weighted_tau_matrix_tree, TauValue,
};

/// Default number of subsets a brute-force scan may visit inside a suite.
pub const SUITE_BRUTE_CAP: u64 = 20_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Identities,
    Engines,
    Duality,
    Shifted,
    Conjectures,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Identities,
        Suite::Engines,
        Suite::Duality,
        Suite::Shifted,
        Suite::Conjectures,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Identities => "identities",
            Suite::Engines => "engines",
            Suite::Duality => "duality",
            Suite::Shifted => "shifted",
            Suite::Conjectures => "conjectures",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Range(format!("unknown suite '{s}' (expected identities, engines, duality, shifted or conjectures)")))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Hard checks fail the run; soft ones (conjectures) are only reported.
    pub hard: bool,
    pub cases: usize,
    pub skipped: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    fn soft(mut self) -> Self {
        self.hard = false;
        self
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn hard_failures(&self) -> usize {
        self.checks.iter().filter(|c| c.hard && !c.passed).count()
    }
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub brute_cap: u64,
    pub seed: u64,
    pub limits: CorpusLimits,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            brute_cap: SUITE_BRUTE_CAP,
            seed: 0,
            limits: CorpusLimits::default(),
        }
    }
}

/// Outcome of one case: `Pass`, `Fail(reason)`, or `Skip` (a cap or hypothesis excluded it).
pub enum Case {
    Pass,
    Fail(String),
    Skip,
}

impl Case {
    fn from_bool(ok: bool, why: impl FnOnce() -> String) -> Case {
        if ok {
            Case::Pass
        } else {
            Case::Fail(why())
        }
    }
}

/// Runs `f` on every item in parallel and folds the outcomes into a [`Check`]. The reported
/// failure is the first one in item order, so the output does not depend on scheduling.
pub fn check_all<T: Sync>(
    name: &str,
    items: &[T],
    label: impl Fn(&T) -> String + Sync,
    f: impl Fn(&T) -> Result<Case> + Sync,
) -> Check {
    let outcomes: Vec<Case> = items
        .par_iter()
        .map(|it| match f(it) {
            Ok(c) => c,
            Err(Error::CapExceeded { .. }) => Case::Skip,
            Err(e) => Case::Fail(e.to_string()),
        })
        .collect();
    let mut skipped = 0;
    let mut detail = None;
    for (it, c) in items.iter().zip(&outcomes) {
        match c {
            Case::Skip => skipped += 1,
            Case::Fail(why) if detail.is_none() => detail = Some(format!("{}: {why}", label(it))),
            _ => {}
        }
    }
    Check {
        name: name.to_string(),
        passed: detail.is_none(),
        hard: true,
        cases: items.len() - skipped,
        skipped,
        detail,
    }
}

pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> Result<SuiteReport> {
    let checks = match suite {
        Suite::Identities => identities(opts)?,
        Suite::Engines => engines(opts)?,
        Suite::Duality => duality(opts),
        Suite::Shifted => shifted(opts),
        Suite::Conjectures => conjectures(opts),
    };
    Ok(SuiteReport {
        suite: suite.name().into(),
        checks,
    })
}

/// `L^ud`, `L^du` and `L^tot` spectra of a complex in every dimension from `min_dim` up.
pub struct Spectra {
    pub lo: isize,
    pub ud: Vec<Spectrum>,
    pub du: Vec<Spectrum>,
    pub tot: Vec<Spectrum>,
}

impl Spectra {
    pub fn of(c: &ChainComplex) -> Result<Self> {
        let lo = c.min_dim();
        let dims: Vec<isize> = (lo..=c.dim()).collect();
        let get = |f: Family| dims.iter().map(|&i| c.spectrum(i, f)).collect::<Result<Vec<_>>>();
        Ok(Spectra {
            lo,
            ud: get(Family::Ud)?,
            du: get(Family::Du)?,
            tot: get(Family::Tot)?,
        })
    }

    pub fn dims(&self) -> std::ops::Range<isize> {
        self.lo..self.lo + self.tot.len() as isize
    }

    fn at(v: &[Spectrum], lo: isize, i: isize) -> Option<&Spectrum> {
        usize::try_from(i - lo).ok().and_then(|j| v.get(j))
    }

    /// Nonzero part of the characteristic polynomial, `1` outside the stored range.
    fn nz(v: &[Spectrum], lo: isize, i: isize) -> IntPoly {
        Self::at(v, lo, i).map_or_else(IntPoly::one, Spectrum::nonzero_part)
    }
}

fn shift(p: &IntPoly, by: i64) -> IntPoly {
    p.taylor_shift(&BigInt::from(-by))
}

fn spectra_equal(a: &ChainComplex, b: &ChainComplex) -> Result<bool> {
    if a.min_dim() != b.min_dim() || a.dim() != b.dim() {
        return Ok(false);
    }
    for i in a.min_dim()..=a.dim() {
        for f in [Family::Ud, Family::Du, Family::Tot] {
            if a.spectrum(i, f)? != b.spectrum(i, f)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn q1() -> ChainComplex {
    cube(1).expect("cube(1) exists").to_chain()
}

// ---------------------------------------------------------------------------------------
// identities

/// Spectral identities on a single complex; returns the first violated one.
pub fn spectral_identities(c: &ChainComplex) -> Result<Case> {
    if let Some(v) = c.validate() {
        return Ok(Case::Fail(format!("invalid complex: {v:?}")));
    }
    let s = Spectra::of(c)?;
    let lo = s.lo;
    for i in s.dims() {
        let ud = Spectra::nz(&s.ud, lo, i);
        if ud != Spectra::nz(&s.du, lo, i + 1) {
            return Ok(Case::Fail(format!("E^ud_{i} differs from E^du_{}", i + 1)));
        }
        if Spectra::nz(&s.tot, lo, i) != &ud * &Spectra::nz(&s.du, lo, i) {
            return Ok(Case::Fail(format!("E^tot_{i} is not E^ud_{i} + E^du_{i}")));
        }
        // E^ud_i = Σ_{j≤i} (−1)^{i−j} E^tot_j, written multiplicatively
        let (mut plus, mut minus) = (IntPoly::one(), ud);
        for j in lo..=i {
            let t = Spectra::nz(&s.tot, lo, j);
            if (i - j) % 2 == 0 {
                plus = &plus * &t;
            } else {
                minus = &minus * &t;
            }
        }
        if plus != minus {
            return Ok(Case::Fail(format!("E^ud_{i} is not the alternating sum of E^tot_{{<={i}}}")));
        }
        let tot = &s.tot[(i - lo) as usize];
        let cells = c.num_cells(i);
        if tot.size() != cells || s.ud[(i - lo) as usize].size() != cells {
            return Ok(Case::Fail(format!("q=1 cardinality differs from |X_{i}| = {cells}")));
        }
        let augmented = usize::from(i == 0 && !c.has_empty_cell() && cells > 0);
        if tot.multiplicity_of_zero() != c.reduced_betti(i) + augmented {
            return Ok(Case::Fail(format!("kernel of L^tot_{i} differs from homology")));
        }
    }
    if !c.euler_check() {
        return Ok(Case::Fail("Euler characteristic mismatch".into()));
    }
    Ok(Case::Pass)
}

/// `ω_k = π_k π_{k+1}` for `k > 0`; at `k = 0`, `ω_0 = π_1`, or `π_0 π_1` with an empty cell.
pub fn omega_pi(c: &ChainComplex) -> Result<Case> {
    let d = c.dim();
    let pi = |k: isize| if k > d { Ok(BigInt::one()) } else { c.pi(k) };
    for k in 0..=d {
        let rhs = if k == 0 && !c.has_empty_cell() {
            pi(1)?
        } else {
            pi(k)? * pi(k + 1)?
        };
        if c.omega(k)? != rhs {
            return Ok(Case::Fail(format!("omega_{k} mismatch")));
        }
    }
    Ok(Case::Pass)
}

/// Prism formula `E^tot(PX) = (1 + q² + tq²) E^tot(X)` and the up-down recursion
/// `s^ud_i(PX) = s^ud_i(X) ∪ (s^tot_i(X) + 2)`, using the product with an edge as the prism.
/// For cubical complexes the product is also compared with the cubical prism.
pub fn prism_identities(c: &ChainComplex, cubical: Option<&CubicalComplex>) -> Result<Case> {
    if c.has_empty_cell() {
        return Ok(Case::Skip);
    }
    let p = c.product(&q1())?;
    if let Some(x) = cubical {
        if !spectra_equal(&x.prism_next().to_chain(), &p)? {
            return Ok(Case::Fail("cubical prism and product with an edge differ".into()));
        }
    }
    let s = Spectra::of(c)?;
    let sp = Spectra::of(&p)?;
    let full = |v: &[Spectrum], lo: isize, i: isize| Spectra::at(v, lo, i).map_or_else(IntPoly::one, |x| x.charpoly().clone());
    for i in sp.dims() {
        let tot = full(&s.tot, s.lo, i);
        let expect = &(&tot * &shift(&tot, 2)) * &shift(&full(&s.tot, s.lo, i - 1), 2);
        if full(&sp.tot, sp.lo, i) != expect {
            return Ok(Case::Fail(format!("prism total spectrum fails in dimension {i}")));
        }
        let ud = &Spectra::nz(&s.ud, s.lo, i) * &shift(&tot, 2);
        if Spectra::nz(&sp.ud, sp.lo, i) != ud {
            return Ok(Case::Fail(format!("prism up-down recursion fails in dimension {i}")));
        }
    }
    Ok(Case::Pass)
}

/// Algebraic boundaries compose to zero and specialize to the unweighted Laplacians.
pub fn algebraic_checks(x: &CubicalComplex) -> Result<Case> {
    let bs = algebraic_boundaries(x);
    for (k, pair) in bs.windows(2).enumerate() {
        if pair[0].ncols() > 0 && pair[1].ncols() > 0 && !pair[0].mul(&pair[1])?.is_zero() {
            return Ok(Case::Fail(format!("weighted boundaries do not compose to zero at {k}")));
        }
    }
    let c = x.to_chain();
    for k in 0..=x.dim().max(-1) {
        for f in [Family::Ud, Family::Du, Family::Tot] {
            let w = algebraic_laplacian(x, k as usize, f)?;
            let l = c.laplacian(k, f)?;
            let same = (0..l.rows()).all(|r| (0..l.cols()).all(|s| &w.get(r, s).eval_ones() == l.get(r, s)));
            if !same {
                return Ok(Case::Fail(format!("weighted {f:?}_{k} does not specialize")));
            }
        }
    }
    Ok(Case::Pass)
}

/// The five mirroring identities for one simplicial complex.
pub fn mirror_identities(d: &SimplicialComplex) -> Result<Case> {
    let m = mirror(d);
    let n = d.vertices().len();
    if !mirror(&d.cone()).same_faces(&m.prism_next()) {
        return Ok(Case::Fail("cone".into()));
    }
    for k in 0..=n {
        if !mirror(&d.size_skeleton(k)).same_faces(&m.skeleton(k as isize)) {
            return Ok(Case::Fail(format!("skeleton {k}")));
        }
    }
    for &i in d.vertices() {
        if !mirror(&d.deletion(i)?).same_faces(&m.deletion(i)?) {
            return Ok(Case::Fail(format!("deletion {i}")));
        }
        if !mirror(&d.link(i)?).same_faces(&m.link(i)?) {
            return Ok(Case::Fail(format!("link {i}")));
        }
    }
    Ok(Case::from_bool(mirror(&d.boundary()).same_faces(&m.boundary_complex()), || "boundary".into()))
}

fn identities(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let entries = corpus(opts.limits)?;
    let name = |e: &CorpusEntry| e.name.clone();
    let cubical: Vec<&CorpusEntry> = entries.iter().filter(|e| e.cubical.is_some()).collect();
    let simplicial: Vec<SimplicialComplex> = (1..=opts.limits.max_mirror_vertices)
        .flat_map(all_simplicial_complexes)
        .collect();
    let q3 = cube(3)?.to_chain();
    let product = q1().product(&cube(2)?.to_chain())?;
    Ok(vec![
        check_all("spectral identities", &entries, name, |e| spectral_identities(&e.chain)),
        check_all("omega from pi", &entries, name, |e| omega_pi(&e.chain)),
        check_all("prism spectra", &entries, name, |e| prism_identities(&e.chain, e.cubical.as_ref())),
        check_all("product Q1 x Q2 = Q3", &[()], |_| "product".into(), |_| {
            Ok(Case::from_bool(spectra_equal(&product, &q3)?, || "spectra differ".into()))
        }),
        check_all("algebraic weights", &cubical, |e| e.name.clone(), |e| {
            algebraic_checks(e.cubical.as_ref().expect("filtered"))
        }),
        check_all("mirroring", &simplicial, |d| format!("{:?}", d.facets()), mirror_identities),
    ])
}

// ---------------------------------------------------------------------------------------
// engines

fn tau_at(c: &ChainComplex, k: usize) -> Result<BigInt> {
    if k == 0 {
        return Ok(BigInt::from(c.num_cells(0)));
    }
    match tau_matrix_tree(c, k)?.tau {
        TauValue::Int(t) => Ok(t),
        TauValue::Poly(_) => unreachable!("unweighted engine"),
    }
}

fn apc_through(c: &ChainComplex, k: usize) -> bool {
    let sk = c.skeleton(k as isize);
    (-1..k as isize).all(|j| sk.reduced_betti(j) == 0)
}

/// Brute force, Matrix-Tree, alternating product and (for cubes) the closed form agree in
/// every dimension where their hypotheses hold; the greedy `U` has the right size.
pub fn engine_agreement(c: &ChainComplex, cube_n: Option<usize>, cap: u64) -> Result<Case> {
    for k in 1..=c.dim().max(0) as usize {
        if !apc_through(c, k) {
            continue;
        }
        let report = tau_matrix_tree(c, k)?;
        let tau = report.tau.as_int().expect("integer").clone();
        let u = report.u.as_ref().map_or(0, Vec::len);
        let sk = c.skeleton(k as isize);
        if c.num_cells(k as isize - 1) - u != c.num_cells(k as isize) - sk.reduced_betti(k as isize) {
            return Ok(Case::Fail(format!("greedy U has the wrong size at k={k}")));
        }
        match enumerate_trees(c, k, cap, None) {
            Ok(b) if b.tau.as_int() != Some(&tau) => {
                return Ok(Case::Fail(format!("brute force {} vs matrix-tree {tau} at k={k}", b.tau)));
            }
            Ok(_) | Err(Error::CapExceeded { .. }) => {}
            Err(e) => return Err(e),
        }
        if c.integrally_acyclic_below(k as isize) {
            let alt = tau_alternating(c, k)?;
            if alt != tau {
                return Ok(Case::Fail(format!("alternating product {alt} vs matrix-tree {tau} at k={k}")));
            }
        }
        if let Some(n) = cube_n {
            let cf = tau_cube_closed_form(n, k)?;
            if cf != tau {
                return Ok(Case::Fail(format!("closed form {cf} vs matrix-tree {tau} at k={k}")));
            }
        }
    }
    Ok(Case::Pass)
}

/// `π_d |H̃_{d−2}(X)|² = τ_d τ_{d−1}` for an APC complex, in every dimension `d ≥ 1`.
pub fn cmtt_part_one(c: &ChainComplex) -> Result<Case> {
    if !c.is_apc() {
        return Ok(Case::Skip);
    }
    for d in 1..=c.dim().max(0) as usize {
        let t = c.torsion(d as isize - 2);
        let lhs = c.pi(d as isize)? * &t * &t;
        let rhs = tau_at(c, d)? * tau_at(c, d - 1)?;
        if lhs != rhs {
            return Ok(Case::Fail(format!("d={d}: {lhs} vs {rhs}")));
        }
    }
    Ok(Case::Pass)
}

/// The weighted engine at `ξ ≡ 1` equals the unweighted one.
pub fn weighted_specializes(x: &CubicalComplex) -> Result<Case> {
    let c = x.to_chain();
    if !c.is_apc() {
        return Ok(Case::Skip);
    }
    for k in 1..=c.dim().max(0) as usize {
        let w = weighted_tau_matrix_tree(x, k)?;
        let p = w.tau.as_poly().expect("weighted engine yields a polynomial").eval_ones();
        let t = tau_at(&c, k)?;
        if p != t {
            return Ok(Case::Fail(format!("k={k}: {p} vs {t}")));
        }
    }
    Ok(Case::Pass)
}

/// Nonsingularity of square minors of `∂_k` and the torsion formula for their determinants,
/// over every pair of row and column sets of the right size.
pub fn minor_formulas(c: &ChainComplex, k: usize) -> Result<Case> {
    let bd = c.reduced_boundary(k as isize);
    let size = tree_size(c, k);
    let rows = c.num_cells(k as isize - 1);
    let t_x = c.torsion(k as isize - 2);
    for t in (0..bd.cols()).combinations(size) {
        let tree = is_cst(c, k, &t)?;
        for s in (0..rows).combinations(size) {
            let sbar: Vec<usize> = (0..rows).filter(|r| !s.contains(r)).collect();
            let det = det_exact(&bd.select(&s, &t))?.abs();
            let lower = is_cst(c, k - 1, &sbar)?;
            let both = tree.is_tree() && lower.is_tree();
            if det.is_zero() == both {
                return Ok(Case::Fail(format!("nonsingularity fails for T={t:?}, S={s:?}")));
            }
            if both && &det * &t_x != &tree.torsion * &lower.torsion {
                return Ok(Case::Fail(format!("determinant formula fails for T={t:?}, S={s:?}")));
            }
        }
    }
    Ok(Case::Pass)
}

fn engines(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let entries = corpus(opts.limits)?;
    let name = |e: &CorpusEntry| e.name.clone();
    let cap = opts.brute_cap;
    let cube_n = |e: &CorpusEntry| e.name.strip_prefix("cube:").and_then(|n| n.parse().ok());
    let cubical: Vec<&CorpusEntry> = entries
        .iter()
        .filter(|e| e.cubical.as_ref().is_some_and(|x| x.universe().len() <= 3))
        .collect();
    let adin_sizes: Vec<Vec<usize>> = colorful_sizes(opts.limits.max_colorful_sum.min(8));
    let etot_sizes: Vec<Vec<usize>> = colorful_sizes(opts.limits.max_colorful_sum);
    let bipartite: Vec<(usize, usize)> = (1..=5).cartesian_product(1..=5).collect();
    let mut minor_cases = Vec::new();
    for n in 2..=3 {
        let sk = cube(n)?.skeleton(2).to_chain();
        for k in 1..=2 {
            minor_cases.push((n, k, sk.clone()));
        }
    }
    Ok(vec![
        check_all("engine agreement", &entries, name, |e| engine_agreement(&e.chain, cube_n(e), cap)),
        check_all("matrix-tree part one", &entries, name, |e| cmtt_part_one(&e.chain)),
        check_all("weighted engine at unit weights", &cubical, |e| e.name.clone(), |e| {
            weighted_specializes(e.cubical.as_ref().expect("filtered"))
        }),
        check_all(
            "minor nonsingularity and determinant formula",
            &minor_cases,
            |(n, k, _)| format!("cube:{n} 2-skeleton, k={k}"),
            |(_, k, c)| minor_formulas(c, *k),
        ),
        check_all("Adin tree counts", &adin_sizes, |a| colorful_name(a), |a| adin_agrees(a, cap)),
        check_all("complete bipartite tree counts", &bipartite, |p| format!("{p:?}"), |&(m, n)| {
            let expect = BigInt::from(m).pow(n as u32 - 1) * BigInt::from(n).pow(m as u32 - 1);
            Ok(Case::from_bool(adin_tau(&[m, n], 1)? == expect, || "mismatch".into()))
        }),
        check_all("colorful closed forms", &etot_sizes, |a| colorful_name(a), |a| colorful_closed_forms(a)),
    ])
}

/// `adin_tau` against the Matrix-Tree engine (and brute force when under `cap`) for `k ≤ 2`.
pub fn adin_agrees(a: &[usize], cap: u64) -> Result<Case> {
    let c = colorful_complex(a)?;
    for k in 0..=(a.len() - 1).min(2) {
        let formula = adin_tau(a, k)?;
        let direct = tau_at(&c, k)?;
        if formula != direct {
            return Ok(Case::Fail(format!("k={k}: formula {formula} vs matrix-tree {direct}")));
        }
        if k > 0 {
            match enumerate_trees(&c, k, cap, None) {
                Ok(b) if b.tau.as_int() != Some(&formula) => {
                    return Ok(Case::Fail(format!("k={k}: formula {formula} vs brute force {}", b.tau)));
                }
                Ok(_) | Err(Error::CapExceeded { .. }) => {}
                Err(e) => return Err(e),
            }
        }
    }
    Ok(Case::Pass)
}

/// Closed-form total spectra and `ω` of a complete colorful complex against direct computation.
pub fn colorful_closed_forms(a: &[usize]) -> Result<Case> {
    let c = colorful_complex(a)?;
    for i in -1..=c.dim() {
        let s = c.spectrum(i, Family::Tot)?;
        let direct: Option<BTreeMap<u64, BigInt>> = s
            .generating_function()
            .map(|g| g.into_iter().map(|(e, m)| (e, BigInt::from(m))).collect());
        if direct.as_ref() != Some(&colorful_etot(a, i)?) {
            return Ok(Case::Fail(format!("E^tot_{i} mismatch")));
        }
        if i >= 0 && colorful_omega(a, i as usize)? != c.omega(i)? {
            return Ok(Case::Fail(format!("omega_{i} mismatch")));
        }
    }
    Ok(Case::Pass)
}

// ---------------------------------------------------------------------------------------
// duality

fn duality(opts: &VerifyOptions) -> Vec<Check> {
    let ns: Vec<usize> = (1..=3).collect();
    vec![
        check_all("cube and cross-polytope", &ns, |n| format!("n={n}"), |&n| {
            let r = cross_polytope_cube_duality(n, 200, opts.seed, 6)?;
            Ok(Case::from_bool(r.holds(), || format!("{r:?}")))
        }),
        check_all("weighted duality", &[2usize], |n| format!("n={n}"), |&n| {
            Ok(Case::from_bool(weighted_duality_check(n, 3, opts.seed)?, || "characteristic polynomials differ".into()))
        }),
    ]
}

// ---------------------------------------------------------------------------------------
// shifted

fn direct_ud(x: &CubicalComplex, j: usize) -> Result<Option<Vec<u64>>> {
    let y = x.pure_skeleton(j);
    let s = y.to_chain().spectrum(j as isize - 1, Family::Ud)?;
    Ok(s.nonzero_sequence().map(|v| v.iter().map(|e| u64::try_from(e).expect("nonnegative")).collect()))
}

/// The deletion/link recursion against the direct spectrum for every `j`.
pub fn shifted_recursion(x: &CubicalComplex) -> Result<Case> {
    for j in 1..=x.dim().max(0) as usize {
        let rec = shifted_spectrum_at(x, j)?;
        let direct = direct_ud(x, j)?;
        if direct.as_ref() != Some(&rec) {
            return Ok(Case::Fail(format!("j={j}: recursion {rec:?} vs direct {direct:?}")));
        }
    }
    Ok(Case::Pass)
}

pub fn laplacian_integral(c: &ChainComplex) -> Result<bool> {
    for i in c.min_dim()..=c.dim() {
        for f in [Family::Ud, Family::Du, Family::Tot] {
            if !c.spectrum(i, f)?.is_integral() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `X` is shifted iff it is a near-prism in its first direction whose deletion is shifted
/// and whose link is shifted apart from possibly missing edge directions.
pub fn near_prism_lemma(x: &CubicalComplex) -> Result<Case> {
    let Some(&i) = x.universe().first() else {
        return Ok(Case::Skip);
    };
    let rhs = x.is_near_prism(i)? && is_shifted(&x.deletion(i)?) && is_shifted_relaxed(&x.link(i)?);
    let lhs = is_shifted(x);
    Ok(Case::from_bool(lhs == rhs, || format!("shifted={lhs}, decomposition={rhs}")))
}

/// Every order ideal of `Q_n`, by brute force over face subsets (feasible for `n ≤ 2`).
pub fn all_order_ideals(n: usize) -> Result<Vec<CubicalComplex>> {
    let q = cube(n)?;
    let faces: Vec<Face> = q.faces().iter().cloned().collect();
    let universe: Vec<u32> = q.universe().to_vec();
    let mut out: Vec<CubicalComplex> = Vec::new();
    for mask in 0u64..1 << faces.len() {
        let gens: Vec<Face> = (0..faces.len()).filter(|b| mask >> b & 1 == 1).map(|b| faces[b].clone()).collect();
        let x = CubicalComplex::build(universe.clone(), gens)?;
        if x.faces().len() == mask.count_ones() as usize {
            out.push(x);
        }
    }
    Ok(out)
}

/// `count` order ideals of `Q_n` generated by random face sets.
pub fn random_order_ideals(n: usize, count: usize, seed: u64) -> Result<Vec<CubicalComplex>> {
    let q = cube(n)?;
    let faces: Vec<Face> = q.faces().iter().cloned().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let k = rng.gen_range(1..=4);
            let gens: Vec<Face> = (0..k).map(|_| faces[rng.gen_range(0..faces.len())].clone()).collect();
            CubicalComplex::build(q.universe().to_vec(), gens)
        })
        .collect()
}

/// The mirror of the path `2 – 1 – 3` is not APC although the path is contractible.
pub fn mirror_of_path_not_apc() -> Result<bool> {
    let path = SimplicialComplex::from_facets(vec![1, 2, 3], &[vec![1, 2], vec![1, 3]])?;
    Ok(!mirror(&path).to_chain().is_apc())
}

/// Whether the mirror of the matroid complex with facets `124, 125, 134, 135` has a
/// non-integral Laplacian. It does not: the complex is the cone over the join of two pairs
/// of points, so its mirror is the prism over a product of two 4-cycles.
pub fn matroid_mirror_non_integral() -> Result<bool> {
    let d = SimplicialComplex::from_facets(
        vec![1, 2, 3, 4, 5],
        &[vec![1, 2, 4], vec![1, 2, 5], vec![1, 3, 4], vec![1, 3, 5]],
    )?;
    Ok(!laplacian_integral(&mirror(&d).to_chain())?)
}

/// The Betti-level prediction for every near-prism direction of `x` (informational).
pub fn near_prism_betti(x: &CubicalComplex) -> Result<Case> {
    if x.is_empty() {
        return Ok(Case::Skip);
    }
    for &i in x.universe() {
        if x.is_near_prism(i)? {
            let r = near_prism_betti_check(x, i)?;
            if !r.holds {
                return Ok(Case::Fail(format!("direction {i}: {r:?}")));
            }
        }
    }
    Ok(Case::Pass)
}

fn shifted(opts: &VerifyOptions) -> Vec<Check> {
    let family = shifted_corpus(opts.limits.max_shifted_directions);
    let name = |p: &(String, CubicalComplex)| p.0.clone();
    let mut lemma_cases: Vec<(String, CubicalComplex)> = family.clone();
    let extra = all_order_ideals(2)
        .map(|v| v.into_iter().enumerate().map(|(j, x)| (format!("ideal:2#{j}"), x)).collect::<Vec<_>>())
        .and_then(|mut v| {
            let r = random_order_ideals(3, 200, opts.seed)?;
            v.extend(r.into_iter().enumerate().map(|(j, x)| (format!("ideal:3#{j}"), x)));
            Ok(v)
        });
    let mirrors = (1..=opts.limits.max_mirror_vertices)
        .flat_map(|n| all_simplicial_complexes(n).into_iter().enumerate().map(move |(j, d)| (format!("mirror:{n}#{j}"), mirror(&d))));
    lemma_cases.extend(mirrors);
    let mut checks = vec![
        check_all("shifted spectrum recursion", &family, name, |p| shifted_recursion(&p.1)),
        check_all("shifted complexes are Laplacian integral", &family, name, |p| {
            Ok(Case::from_bool(laplacian_integral(&p.1.to_chain())?, || "non-integral spectrum".into()))
        }),
        check_all("mirror of a contractible path is not APC", &[()], |_| "mirror of 12, 13".into(), |_| {
            Ok(Case::from_bool(mirror_of_path_not_apc()?, || "mirror is APC".into()))
        }),
        check_all("mirror of a matroid complex is not Laplacian integral", &[()], |_| "mirror of 124, 125, 134, 135".into(), |_| {
            Ok(Case::from_bool(matroid_mirror_non_integral()?, || {
                "every spectrum is integral (the mirror is the prism over C4 x C4)".into()
            }))
        })
        .soft(),
    ];
    match extra {
        Ok(v) => lemma_cases.extend(v),
        Err(e) => checks.push(Check {
            name: "order ideal generation".into(),
            passed: false,
            hard: true,
            cases: 0,
            skipped: 0,
            detail: Some(e.to_string()),
        }),
    }
    checks.push(check_all("near-prism decomposition of shifted complexes", &lemma_cases, name, |p| {
        near_prism_lemma(&p.1)
    }));
    checks.push(check_all("near-prism Betti prediction", &family, name, |p| near_prism_betti(&p.1)).soft());
    checks
}

// ---------------------------------------------------------------------------------------
// conjectures

/// `(n, k)` pairs compared against the conjectured weighted enumerator.
pub const CONJECTURE_CASES: [(usize, usize); 6] = [(2, 1), (2, 2), (3, 2), (3, 3), (3, 1), (4, 3)];
/// `(n, k)` pairs for the recurrence of the `q`-free factor.
pub const RECURRENCE_CASES: [(usize, usize); 4] = [(3, 1), (3, 2), (4, 2), (4, 3)];

fn conjectures(opts: &VerifyOptions) -> Vec<Check> {
    let cap = opts.brute_cap.max(crate::spanning_trees::DEFAULT_BRUTE_CAP);
    let others: Vec<(usize, usize)> = (2..=4).flat_map(|n| (1..n).map(move |k| (n, k))).filter(|p| !RECURRENCE_CASES.contains(p)).collect();
    vec![
        check_all("weighted tree enumerator formula", &CONJECTURE_CASES, |p| format!("{p:?}"), |&(n, k)| {
            let r = verify_conjecture(n, k, cap)?;
            Ok(Case::from_bool(r.equal, || format!("first difference {:?}", r.difference)))
        })
        .soft(),
        check_all("F recurrence", &RECURRENCE_CASES, |p| format!("{p:?}"), |&(n, k)| {
            Ok(Case::from_bool(f_recurrence_check(n, k)?.holds, || "recurrence fails".into()))
        })
        .soft(),
        check_all("F recurrence, remaining small cases", &others, |p| format!("{p:?}"), |&(n, k)| {
            Ok(Case::from_bool(f_recurrence_check(n, k)?.holds, || "recurrence fails".into()))
        })
        .soft(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn single_complex_checks() {
        let rp2 = ChainComplex::real_projective_plane();
        assert!(matches!(spectral_identities(&rp2).unwrap(), Case::Pass));
        assert!(matches!(omega_pi(&rp2).unwrap(), Case::Pass));
        assert!(matches!(prism_identities(&rp2, None).unwrap(), Case::Pass));
        let q2 = cube(2).unwrap();
        assert!(matches!(prism_identities(&q2.to_chain(), Some(&q2)).unwrap(), Case::Pass));
        assert!(matches!(engine_agreement(&q2.to_chain(), Some(2), 1000).unwrap(), Case::Pass));
        assert!(matches!(cmtt_part_one(&rp2).unwrap(), Case::Pass));
    }

    #[test]
    fn order_ideals_of_the_square() {
        // the empty complex, and every nonempty ideal of the square
        let ideals = all_order_ideals(2).unwrap();
        assert!(ideals.iter().all(CubicalComplex::is_order_ideal));
        assert!(ideals.iter().all(|x| matches!(near_prism_lemma(x).unwrap(), Case::Pass | Case::Skip)));
    }

    #[test]
    fn mirror_examples() {
        assert!(mirror_of_path_not_apc().unwrap());
        // the prism over C4 x C4 has spectra sums of integral spectra
        assert!(!matroid_mirror_non_integral().unwrap());
    }
}
