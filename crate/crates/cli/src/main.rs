//! Command-line front end: load a complex, run an engine or a verification suite, and print
//! deterministic JSON or an aligned table.

use std::path::Path;
use std::process::ExitCode;

use cellspan::chain_complex::{ChainComplex, Family};
use cellspan::colorful::{
    adin_tau, colorful_complex_with_cap, colorful_etot, colorful_omega, colorful_spec_poly, QPoly, DEFAULT_FACE_CAP,
};
use cellspan::cubical::{
    cube, is_shifted, mirror, near_prism_betti_check, shifted_spectrum, CubicalComplex, SimplicialComplex, WeightVars,
};
use cellspan::spanning_trees::{
    enumerate_trees, f_recurrence_check, tau_alternating, tau_cube_closed_form, tau_matrix_tree,
    verify_conjecture, weighted_tau_matrix_tree, TreeReport, DEFAULT_BRUTE_CAP,
};
use cellspan::verify::{run_suite, Suite, VerifyOptions};
use cellspan::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "cellspan", version, about = "Exact Laplacian spectra, homology and spanning-tree counts of cell complexes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Brute-force enumeration cap (number of candidate subsets).
    #[arg(long, env = "CELLSPAN_CAP")]
    cap: Option<u64>,
    /// Seed for randomized checks.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Ud,
    Du,
    Tot,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::Ud => Family::Ud,
            FamilyArg::Du => Family::Du,
            FamilyArg::Tot => Family::Tot,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Brute,
    MatrixTree,
    AlternatingProduct,
    ClosedForm,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Identities,
    Engines,
    Duality,
    Shifted,
    Conjectures,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Laplacian spectrum in one dimension (or all of them).
    Spectrum {
        /// `cube:N`, `colorful:A,B,…`, `rp2`, `mirror:FILE`, or a JSON file.
        #[arg(long)]
        input: String,
        #[arg(long, allow_negative_numbers = true)]
        dim: Option<isize>,
        #[arg(long, value_enum, default_value_t = FamilyArg::Tot)]
        family: FamilyArg,
        #[command(flatten)]
        common: Common,
    },
    /// Reduced Betti numbers and torsion orders.
    Homology {
        #[arg(long)]
        input: String,
        #[arg(long, allow_negative_numbers = true)]
        dim: Option<isize>,
        #[command(flatten)]
        common: Common,
    },
    /// Count cellular spanning trees in dimension `k`.
    Trees {
        #[arg(long)]
        input: String,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Method::MatrixTree)]
        method: Method,
        #[command(flatten)]
        common: Common,
    },
    /// Weighted tree enumerator of a cubical complex.
    WeightedTrees {
        #[arg(long)]
        input: String,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Method::MatrixTree)]
        method: Method,
        #[command(flatten)]
        common: Common,
    },
    /// Compare brute-force weighted enumeration of `Q_n` with the conjectured product formula.
    Conjecture {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Closed forms for a complete colorful complex.
    Colorful {
        /// `colorful:A,B,…` or `A,B,…`.
        #[arg(long)]
        input: String,
        #[command(flatten)]
        common: Common,
    },
    /// The dual complex.
    Dual {
        #[arg(long)]
        input: String,
        #[command(flatten)]
        common: Common,
    },
    /// Shiftedness, near-prism structure and the recursive spectrum of a cubical complex.
    ShiftedCheck {
        #[arg(long)]
        input: String,
        #[command(flatten)]
        common: Common,
    },
    /// Mirror of a simplicial complex given as `{"vertices": n, "facets": [...]}`.
    Mirror {
        #[arg(long)]
        input: String,
        #[command(flatten)]
        common: Common,
    },
    /// Run a property suite over the built-in corpus.
    Verify {
        #[arg(value_enum)]
        suite: SuiteArg,
        #[command(flatten)]
        common: Common,
    },
}

/// Failure of a command, with its exit code.
enum Failure {
    Validation(String),
    Cap(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::CapExceeded { .. } => Failure::Cap(e.to_string()),
            other => Failure::Validation(other.to_string()),
        }
    }
}

type CmdResult = Result<Output, Failure>;

/// A JSON value plus the same content as table rows.
struct Output {
    json: Value,
    table: Vec<Vec<String>>,
    failed: bool,
}

impl Output {
    fn new(json: Value, table: Vec<Vec<String>>) -> Self {
        Output {
            json,
            table,
            failed: false,
        }
    }
}

/// A loaded input complex together with what is known about how it was generated.
struct Loaded {
    chain: ChainComplex,
    cubical: Option<CubicalComplex>,
    cube_n: Option<usize>,
}

fn parse_sizes(s: &str) -> Result<Vec<usize>, Failure> {
    s.split(',')
        .map(|p| p.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| Failure::Validation(format!("bad color class sizes `{s}`")))
}

fn read(path: &str) -> Result<String, Failure> {
    std::fs::read_to_string(Path::new(path)).map_err(|e| Failure::Validation(format!("cannot read {path}: {e}")))
}

fn load(src: &str) -> Result<Loaded, Failure> {
    let cubical = |x: CubicalComplex, cube_n| Loaded {
        chain: x.to_chain(),
        cubical: Some(x),
        cube_n,
    };
    if let Some(n) = src.strip_prefix("cube:") {
        let n: usize = n.parse().map_err(|_| Failure::Validation(format!("bad cube dimension `{n}`")))?;
        return Ok(cubical(cube(n)?, Some(n)));
    }
    if let Some(a) = src.strip_prefix("colorful:") {
        let a = parse_sizes(a)?;
        return Ok(Loaded {
            chain: colorful_complex_with_cap(&a, DEFAULT_FACE_CAP)?,
            cubical: None,
            cube_n: None,
        });
    }
    if src == "rp2" {
        return Ok(Loaded {
            chain: ChainComplex::real_projective_plane(),
            cubical: None,
            cube_n: None,
        });
    }
    if let Some(path) = src.strip_prefix("mirror:") {
        let d = SimplicialComplex::from_mirror_json_str(&read(path)?)?;
        return Ok(cubical(mirror(&d), None));
    }
    let text = read(src)?;
    let v: Value = serde_json::from_str(&text).map_err(|e| Failure::Validation(format!("{src}: {e}")))?;
    if v.get("universe").is_some() {
        Ok(cubical(CubicalComplex::from_json_str(&text)?, None))
    } else {
        Ok(Loaded {
            chain: ChainComplex::from_json_str(&text)?,
            cubical: None,
            cube_n: None,
        })
    }
}

fn need_cubical(l: &Loaded) -> Result<&CubicalComplex, Failure> {
    l.cubical
        .as_ref()
        .ok_or_else(|| Failure::Validation("this command needs a cubical complex input".into()))
}

fn dims(c: &ChainComplex, dim: Option<isize>) -> Result<Vec<isize>, Failure> {
    match dim {
        Some(d) if d < c.min_dim() || d > c.dim() => Err(Failure::Validation(format!(
            "dimension {d} out of range {}..={}",
            c.min_dim(),
            c.dim()
        ))),
        Some(d) => Ok(vec![d]),
        None => Ok((c.min_dim()..=c.dim()).collect()),
    }
}

fn spectrum_cmd(input: &str, dim: Option<isize>, family: Family) -> CmdResult {
    let l = load(input)?;
    let mut table = vec![vec!["dim".into(), "eigenvalue".into(), "multiplicity".into()]];
    let mut per_dim = Vec::new();
    for i in dims(&l.chain, dim)? {
        let s = l.chain.spectrum(i, family)?;
        match s.pairs() {
            Some(pairs) => table.extend(pairs.iter().map(|(v, m)| vec![i.to_string(), v.to_string(), m.to_string()])),
            None => table.push(vec![i.to_string(), format!("not integral: {}", s.charpoly()), String::new()]),
        }
        per_dim.push((i, serde_json::to_value(s.to_json()).expect("serializable")));
    }
    let json = if dim.is_some() {
        per_dim.pop().expect("one dimension").1
    } else {
        Value::Array(
            per_dim
                .into_iter()
                .map(|(i, mut v)| {
                    v.as_object_mut().expect("object").insert("dim".into(), json!(i));
                    v
                })
                .collect(),
        )
    };
    Ok(Output::new(json, table))
}

fn homology_cmd(input: &str, dim: Option<isize>) -> CmdResult {
    let l = load(input)?;
    let mut rows = Vec::new();
    let mut table = vec![vec!["dim".into(), "betti".into(), "torsion".into()]];
    for i in dims(&l.chain, dim)? {
        let h = l.chain.reduced_homology(i);
        table.push(vec![i.to_string(), h.betti.to_string(), h.torsion.to_string()]);
        rows.push(json!({"dim": i, "betti": h.betti, "torsion": h.torsion.to_string()}));
    }
    let apc = l.chain.is_apc();
    table.push(vec!["apc".into(), apc.to_string(), String::new()]);
    Ok(Output::new(json!({"homology": rows, "apc": apc}), table))
}

fn report_table(r: &TreeReport) -> Vec<Vec<String>> {
    let mut t = vec![vec!["tau".into(), r.tau.to_string()], vec!["method".into(), r.method.clone()]];
    if let Some(n) = r.trees {
        t.push(vec!["trees".into(), n.to_string()]);
    }
    if let Some(u) = &r.u {
        t.push(vec!["U".into(), u.join(" ")]);
    }
    for rec in &r.per_tree {
        t.push(vec![format!("tree {}", rec.cells.join(" ")), format!("torsion {}", rec.torsion)]);
    }
    t
}

fn trees_cmd(input: &str, k: usize, method: Method, cap: u64) -> CmdResult {
    let l = load(input)?;
    let report = match method {
        Method::Brute => enumerate_trees(&l.chain, k, cap, None)?,
        Method::MatrixTree => tau_matrix_tree(&l.chain, k)?,
        Method::AlternatingProduct => {
            let tau = tau_alternating(&l.chain, k)?;
            return Ok(Output::new(
                json!({"tau": tau.to_string(), "method": "alternating-product"}),
                vec![vec!["tau".into(), tau.to_string()], vec!["method".into(), "alternating-product".into()]],
            ));
        }
        Method::ClosedForm => {
            let n = l
                .cube_n
                .ok_or_else(|| Failure::Validation("the closed form applies to cube:N inputs only".into()))?;
            let tau = tau_cube_closed_form(n, k)?;
            return Ok(Output::new(
                json!({"tau": tau.to_string(), "method": "closed-form"}),
                vec![vec!["tau".into(), tau.to_string()], vec!["method".into(), "closed-form".into()]],
            ));
        }
    };
    Ok(Output::new(report.to_json(), report_table(&report)))
}

fn weighted_trees_cmd(input: &str, k: usize, method: Method, cap: u64) -> CmdResult {
    let l = load(input)?;
    let x = need_cubical(&l)?;
    let report = match method {
        Method::Brute => {
            let w = WeightVars::new(x.universe());
            let weights: Vec<_> = x.faces_of_dim(k).into_iter().map(|f| w.xi(f)).collect();
            enumerate_trees(&l.chain, k, cap, Some(&weights))?
        }
        Method::MatrixTree => weighted_tau_matrix_tree(x, k)?,
        _ => return Err(Failure::Validation("weighted trees support the brute and matrix-tree methods".into())),
    };
    Ok(Output::new(report.to_json(), report_table(&report)))
}

fn conjecture_cmd(n: usize, k: usize, cap: u64) -> CmdResult {
    let r = verify_conjecture(n, k, cap)?;
    let status = if r.equal { "equal" } else { "differs" };
    let recurrence = if n >= 2 && k < n {
        Some(f_recurrence_check(n, k)?.holds)
    } else {
        None
    };
    let mut table = vec![
        vec!["n".into(), n.to_string()],
        vec!["k".into(), k.to_string()],
        vec!["trees".into(), r.trees.to_string()],
        vec!["status".into(), status.into()],
    ];
    let mut json = json!({"n": n, "k": k, "trees": r.trees, "status": status, "f_recurrence": recurrence});
    if let Some((m, a, b)) = &r.difference {
        table.push(vec!["first difference".into(), format!("{m}: {a} vs {b}")]);
        json["difference"] = json!({"monomial": m, "brute_force": a, "formula": b});
    }
    if let Some(h) = recurrence {
        table.push(vec!["F recurrence".into(), if h { "holds" } else { "fails" }.into()]);
    }
    Ok(Output::new(json, table))
}

fn qpoly_json(p: &QPoly) -> Value {
    Value::Array(p.iter().map(|(e, c)| json!([e, c.to_string()])).collect())
}

fn qpoly_text(p: &QPoly) -> String {
    if p.is_empty() {
        return "0".into();
    }
    p.iter()
        .rev()
        .map(|(e, c)| match (e, c.to_string().as_str()) {
            (0, c) => c.to_string(),
            (_, "1") => format!("q^{e}"),
            (_, c) => format!("{c}q^{e}"),
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

fn colorful_cmd(input: &str) -> CmdResult {
    let a = parse_sizes(input.strip_prefix("colorful:").unwrap_or(input))?;
    let n = a.len() as isize;
    let spec = colorful_spec_poly(&a)?;
    let mut table = vec![vec!["quantity".into(), "value".into()]];
    for (j, p) in spec.iter().enumerate() {
        table.push(vec![format!("spec t^{j}"), qpoly_text(p)]);
    }
    let mut etot = Vec::new();
    for i in -1..n {
        let p = colorful_etot(&a, i)?;
        table.push(vec![format!("E^tot_{i}"), qpoly_text(&p)]);
        etot.push(json!({"dim": i, "poly": qpoly_json(&p)}));
    }
    let mut omega = Vec::new();
    let mut tau = Vec::new();
    for i in 0..n as usize {
        let w = colorful_omega(&a, i)?;
        let t = adin_tau(&a, i)?;
        table.push(vec![format!("omega_{i}"), w.to_string()]);
        table.push(vec![format!("tau_{i}"), t.to_string()]);
        omega.push(w.to_string());
        tau.push(t.to_string());
    }
    let json = json!({
        "sizes": a,
        "spectrum_polynomial": spec.iter().map(qpoly_json).collect::<Vec<_>>(),
        "etot": etot,
        "omega": omega,
        "tau": tau,
    });
    Ok(Output::new(json, table))
}

fn dual_cmd(input: &str) -> CmdResult {
    let l = load(input)?;
    let d = l.chain.dual();
    let mut table = vec![vec!["dim".into(), "cells".into()]];
    for i in d.min_dim()..=d.dim() {
        table.push(vec![i.to_string(), d.num_cells(i).to_string()]);
    }
    let json = json!({"shift": l.chain.dual_shift(), "complex": serde_json::to_value(d.to_json()).expect("serializable")});
    Ok(Output::new(json, table))
}

fn shifted_cmd(input: &str) -> CmdResult {
    let l = load(input)?;
    let x = need_cubical(&l)?;
    let shifted = is_shifted(x);
    let mut table = vec![vec!["shifted".into(), shifted.to_string()]];
    let mut near = serde_json::Map::new();
    let mut betti = Vec::new();
    for &i in x.universe() {
        let np = x.is_near_prism(i)?;
        table.push(vec![format!("near-prism in direction {i}"), np.to_string()]);
        near.insert(i.to_string(), json!(np));
        if np && !x.is_empty() {
            let r = near_prism_betti_check(x, i)?;
            table.push(vec![format!("Betti prediction, direction {i}"), if r.holds { "holds" } else { "fails" }.into()]);
            betti.push(serde_json::to_value(&r).expect("serializable"));
        }
    }
    let spectrum = if x.is_pure() && !x.is_empty() {
        match shifted_spectrum(x) {
            Ok(s) => Some(s),
            Err(Error::Hypothesis(_)) => None,
            Err(e) => return Err(e.into()),
        }
    } else {
        None
    };
    if let Some(s) = &spectrum {
        let text: Vec<String> = s.iter().map(u64::to_string).collect();
        table.push(vec!["recursive spectrum".into(), text.join(" ")]);
    }
    let json = json!({"shifted": shifted, "near_prism": near, "betti_checks": betti, "shifted_spectrum": spectrum});
    Ok(Output::new(json, table))
}

fn mirror_cmd(input: &str) -> CmdResult {
    let path = input.strip_prefix("mirror:").unwrap_or(input);
    let d = SimplicialComplex::from_mirror_json_str(&read(path)?)?;
    let m = mirror(&d);
    let j = m.to_json();
    let table = vec![
        vec!["universe".into(), format!("{:?}", j.universe)],
        vec!["facets".into(), j.faces.join(" ")],
        vec!["f-vector".into(), format!("{:?}", m.f_vector())],
    ];
    let json = json!({"universe": j.universe, "faces": j.faces, "f_vector": m.f_vector()});
    Ok(Output::new(json, table))
}

fn verify_cmd(suite: SuiteArg, cap: Option<u64>, seed: u64) -> CmdResult {
    let suites: Vec<Suite> = match suite {
        SuiteArg::Identities => vec![Suite::Identities],
        SuiteArg::Engines => vec![Suite::Engines],
        SuiteArg::Duality => vec![Suite::Duality],
        SuiteArg::Shifted => vec![Suite::Shifted],
        SuiteArg::Conjectures => vec![Suite::Conjectures],
        SuiteArg::All => Suite::ALL.to_vec(),
    };
    let mut opts = VerifyOptions {
        seed,
        ..VerifyOptions::default()
    };
    if let Some(c) = cap {
        opts.brute_cap = c;
    }
    let mut table = vec![vec!["suite".into(), "check".into(), "status".into(), "cases".into(), "detail".into()]];
    let mut reports = Vec::new();
    let mut failed = false;
    for s in suites {
        let r = run_suite(s, &opts)?;
        failed |= r.hard_failures() > 0;
        for c in &r.checks {
            let status = match (c.passed, c.hard) {
                (true, _) => "PASS",
                (false, true) => "FAIL",
                (false, false) => "REPORTED",
            };
            table.push(vec![
                r.suite.clone(),
                c.name.clone(),
                status.into(),
                format!("{} (+{} skipped)", c.cases, c.skipped),
                c.detail.clone().unwrap_or_default(),
            ]);
        }
        reports.push(serde_json::to_value(&r).expect("serializable"));
    }
    let mut out = Output::new(json!({"suites": reports}), table);
    out.failed = failed;
    Ok(out)
}

fn render_table(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for r in rows {
        let line: Vec<String> = r
            .iter()
            .enumerate()
            .map(|(c, s)| format!("{s:<w$}", w = widths[c]))
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

fn run(cli: Cli) -> (CmdResult, Format) {
    let brute = |c: &Common| c.cap.unwrap_or(DEFAULT_BRUTE_CAP);
    match cli.command {
        Command::Spectrum { input, dim, family, common } => (spectrum_cmd(&input, dim, family.into()), common.format),
        Command::Homology { input, dim, common } => (homology_cmd(&input, dim), common.format),
        Command::Trees { input, k, method, common } => (trees_cmd(&input, k, method, brute(&common)), common.format),
        Command::WeightedTrees { input, k, method, common } => {
            (weighted_trees_cmd(&input, k, method, brute(&common)), common.format)
        }
        Command::Conjecture { n, k, common } => (conjecture_cmd(n, k, brute(&common)), common.format),
        Command::Colorful { input, common } => (colorful_cmd(&input), common.format),
        Command::Dual { input, common } => (dual_cmd(&input), common.format),
        Command::ShiftedCheck { input, common } => (shifted_cmd(&input), common.format),
        Command::Mirror { input, common } => (mirror_cmd(&input), common.format),
        Command::Verify { suite, common } => (verify_cmd(suite, common.cap, common.seed), common.format),
    }
}

fn main() -> ExitCode {
    let (result, format) = run(Cli::parse());
    match result {
        Ok(out) => {
            match format {
                Format::Json => println!("{}", out.json),
                Format::Table => print!("{}", render_table(&out.table)),
            }
            ExitCode::from(if out.failed { 4 } else { 0 })
        }
        Err(Failure::Validation(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Cap(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}
