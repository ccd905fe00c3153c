use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use relcomplex::bounds::{
    all_bounds, bound_thm42, bound_thm43, bound_thm44, bound_thm45, format_float, BoundReport,
};
use relcomplex::check::{run_checks_with, Fault};
use relcomplex::generators::{generate, Family};
use relcomplex::homology::relative_homology;
use relcomplex::io::{complex_to_json, load_pair, pair_to_json};
use relcomplex::random::{random_complex, random_flag_complex, random_subcomplex, seeded};
use relcomplex::spanning::{
    enumerate_forests, enumerate_trees, verify_matrix_tree_i, verify_matrix_tree_ii,
    CandidateSubcomplex, EnumOptions, Verdict, DEFAULT_BUDGET,
};
use relcomplex::spectra::{laplacian, spectral_gap, spectrum, LaplacianKind};
use relcomplex::{ComplexPair, Error};

#[derive(Parser, Debug)]
#[command(name = "relcomplex", version, about = "Laplacians, homology and spanning trees of simplicial pairs")]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for random generators.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Maximum number of candidate subsets per enumeration.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Print nothing; only the exit code reports the outcome.
    #[arg(long, short, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a generated complex (or pair) as JSON.
    Gen {
        #[arg(value_enum)]
        family: FamilyName,
        /// Family parameters, e.g. `d_path 1 2`.
        params: Vec<usize>,
        #[arg(long, default_value_t = 6)]
        vertices: usize,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        #[arg(long, default_value_t = 3, allow_negative_numbers = true)]
        max_dim: isize,
        /// Also draw a random subcomplex, keeping faces with this probability.
        #[arg(long)]
        subcomplex: Option<f64>,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Run the invariant suite on a pair.
    Check {
        pair: PathBuf,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Spectrum of a Laplacian of the pair.
    Spectrum {
        pair: PathBuf,
        #[arg(short, allow_negative_numbers = true)]
        k: isize,
        #[arg(long, value_enum, default_value_t = Part::Full)]
        part: Part,
        /// Print the characteristic polynomial.
        #[arg(long)]
        exact: bool,
        /// Print the integer matrix in plain-text form.
        #[arg(long)]
        dump_matrix: bool,
    },
    /// Smallest eigenvalue of L_k.
    Gap {
        pair: PathBuf,
        #[arg(short, allow_negative_numbers = true)]
        k: isize,
    },
    /// Integer relative homology.
    Homology {
        pair: PathBuf,
        #[arg(short, allow_negative_numbers = true, required_unless_present = "all")]
        k: Option<isize>,
        #[arg(long)]
        all: bool,
    },
    /// Relative spanning trees and the matrix-tree theorem.
    Trees {
        pair: PathBuf,
        #[arg(short, allow_negative_numbers = true)]
        k: isize,
        #[arg(long, group = "mode")]
        enumerate: bool,
        #[arg(long, group = "mode")]
        count: bool,
        #[arg(long, group = "mode")]
        verify_i: bool,
        #[arg(long, group = "mode")]
        verify_ii: bool,
        /// Cross-check every candidate against the homological definition.
        #[arg(long)]
        paranoid: bool,
    },
    /// Spectral gap lower bounds.
    Bounds {
        pair: PathBuf,
        #[arg(short, allow_negative_numbers = true)]
        k: isize,
        #[arg(long, value_enum, default_value_t = Theorem::All)]
        theorem: Theorem,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
#[value(rename_all = "snake_case")]
enum FamilyName {
    Simplex,
    SkeletonSimplex,
    DPath,
    DCircuit,
    DStar,
    ModelJoin,
    ProjectivePlane,
    Random,
    RandomFlag,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Part {
    Ud,
    Du,
    Full,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Theorem {
    #[value(name = "4.2")]
    MissingFace,
    #[value(name = "4.3")]
    Flag,
    #[value(name = "4.4")]
    PureBoundary,
    #[value(name = "4.5")]
    Comparison,
    All,
}

/// What a command produced: text and JSON renderings plus whether a
/// verified identity failed.
struct Output {
    text: String,
    json: Value,
    violated: bool,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Output {
            text,
            json,
            violated: false,
        }
    }
}

enum Failure {
    Input(String),
    Violation(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Invariant(_) => Failure::Violation(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

type CmdResult = Result<Output, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let quiet = cli.quiet;
    let as_json = cli.json;
    match run(&cli) {
        Ok(out) => {
            if !quiet {
                if as_json {
                    println!("{}", serde_json::to_string_pretty(&out.json).expect("serializable"));
                } else {
                    print!("{}", out.text);
                }
            }
            ExitCode::from(if out.violated { 2 } else { 0 })
        }
        Err(Failure::Input(msg)) => {
            if !quiet {
                eprintln!("error: {msg}");
            }
            ExitCode::from(1)
        }
        Err(Failure::Violation(msg)) => {
            if !quiet {
                eprintln!("violation: {msg}");
            }
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> CmdResult {
    match &cli.command {
        Command::Gen {
            family,
            params,
            vertices,
            density,
            max_dim,
            subcomplex,
            output,
        } => cmd_gen(
            cli,
            *family,
            params,
            (*vertices, *density, *max_dim),
            *subcomplex,
            output.as_deref(),
        ),
        Command::Check { pair, inject_fault } => cmd_check(&load(pair)?, *inject_fault),
        Command::Spectrum {
            pair,
            k,
            part,
            exact,
            dump_matrix,
        } => cmd_spectrum(&load(pair)?, *k, *part, *exact, *dump_matrix),
        Command::Gap { pair, k } => cmd_gap(&load(pair)?, *k),
        Command::Homology { pair, k, all } => {
            let pair = load(pair)?;
            let ks: Vec<isize> = if *all {
                (0..=pair.dim()).collect()
            } else {
                vec![k.expect("required unless --all")]
            };
            cmd_homology(&pair, &ks)
        }
        Command::Trees {
            pair,
            k,
            enumerate,
            verify_i,
            verify_ii,
            paranoid,
            ..
        } => {
            let opts = EnumOptions {
                budget: cli.budget,
                paranoid: *paranoid,
            };
            let pair = load(pair)?;
            if *verify_i {
                cmd_verify_i(&pair, *k, opts)
            } else if *verify_ii {
                cmd_verify_ii(&pair, *k, opts)
            } else {
                cmd_trees(&pair, *k, opts, *enumerate)
            }
        }
        Command::Bounds { pair, k, theorem } => cmd_bounds(&load(pair)?, *k, *theorem),
    }
}

fn load(path: &Path) -> Result<ComplexPair, Failure> {
    load_pair(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn param(params: &[usize], i: usize, name: &str) -> Result<usize, Failure> {
    params
        .get(i)
        .copied()
        .ok_or_else(|| Failure::Input(format!("missing parameter {name}")))
}

fn cmd_gen(
    cli: &Cli,
    family: FamilyName,
    params: &[usize],
    (vertices, density, max_dim): (usize, f64, isize),
    subcomplex: Option<f64>,
    output: Option<&Path>,
) -> CmdResult {
    let p = |i, name| param(params, i, name);
    let mut rng = seeded(cli.seed);
    let (x, name) = match family {
        FamilyName::Random => (
            random_complex(&mut rng, vertices, density, max_dim)?,
            format!("random n={vertices} p={density} seed={}", cli.seed),
        ),
        FamilyName::RandomFlag => (
            random_flag_complex(&mut rng, vertices, density, max_dim)?,
            format!("random_flag n={vertices} p={density} seed={}", cli.seed),
        ),
        _ => {
            let fam = match family {
                FamilyName::Simplex => Family::Simplex(p(0, "m")?),
                FamilyName::SkeletonSimplex => {
                    Family::SkeletonSimplex(p(0, "m")?, p(1, "p")? as isize)
                }
                FamilyName::DPath => Family::DPath(p(0, "d")?, p(1, "m")?),
                FamilyName::DCircuit => Family::DCircuit(p(0, "d")?, p(1, "m")?),
                FamilyName::DStar => Family::DStar(p(0, "d")?, p(1, "m")?),
                FamilyName::ModelJoin => Family::ModelJoin(p(0, "h")?, p(1, "n")?, p(2, "k")?),
                FamilyName::ProjectivePlane => Family::ProjectivePlane,
                FamilyName::Random | FamilyName::RandomFlag => unreachable!(),
            };
            let label = std::iter::once(family_name(family))
                .chain(params.iter().map(ToString::to_string))
                .collect::<Vec<_>>()
                .join(" ");
            (generate(fam)?, label)
        }
    };
    let text = match subcomplex {
        None => complex_to_json(&x, Some(&name)),
        Some(q) => {
            let a = random_subcomplex(&mut rng, &x, q)?;
            pair_to_json(&ComplexPair::new(x, a)?)
        }
    };
    let json: Value = serde_json::from_str(&text).expect("generated json parses");
    match output {
        Some(path) => {
            std::fs::write(path, &text)
                .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            Ok(Output::ok(
                format!("wrote {}\n", path.display()),
                json!({ "path": path.display().to_string() }),
            ))
        }
        None => Ok(Output::ok(text, json)),
    }
}

fn family_name(family: FamilyName) -> String {
    family
        .to_possible_value()
        .expect("no skipped variants")
        .get_name()
        .to_string()
}

fn cmd_check(pair: &ComplexPair, inject_fault: bool) -> CmdResult {
    let fault = if inject_fault {
        Fault::CorruptBoundary
    } else {
        Fault::None
    };
    let report = run_checks_with(pair, fault)?;
    let mut text = String::new();
    for c in &report.checks {
        let status = if c.passed { "PASS" } else { "FAIL" };
        text.push_str(&format!("{status} {}: {}\n", c.name, c.detail));
    }
    let passed = report.all_passed();
    text.push_str(&format!(
        "{} of {} checks passed\n",
        report.checks.iter().filter(|c| c.passed).count(),
        report.checks.len()
    ));
    Ok(Output {
        text,
        json: json!({ "passed": passed, "checks": report.checks }),
        violated: !passed,
    })
}

/// `x` to 12 significant digits with trailing zeros removed.
fn sig12(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format_float(x);
    }
    let mag = x.abs().log10().floor() as i32;
    let decimals = (11 - mag).max(0) as usize;
    let s = format!("{x:.decimals$}");
    let s = if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    };
    if s == "-0" {
        "0".into()
    } else {
        s
    }
}

fn cmd_spectrum(
    pair: &ComplexPair,
    k: isize,
    part: Part,
    exact: bool,
    dump_matrix: bool,
) -> CmdResult {
    let kind = match part {
        Part::Ud => LaplacianKind::UpDown,
        Part::Du => LaplacianKind::DownUp,
        Part::Full => LaplacianKind::Full,
    };
    let lap = laplacian(pair, k, kind)?;
    let rep = spectrum(&lap)?;
    let eig: Vec<String> = rep.eigenvalues.iter().map(|&x| sig12(x)).collect();
    let mut text = format!("eigenvalues: {}\n", eig.join(" "));
    text.push_str(&format!("rank: {}\n", rep.exact_rank));
    text.push_str(&format!("pseudo-determinant: {}\n", rep.pseudo_det));
    let charpoly: Vec<String> = rep.charpoly.iter().map(ToString::to_string).collect();
    if exact {
        text.push_str(&format!(
            "charpoly (ascending): {}\n",
            charpoly.join(" ")
        ));
    }
    if dump_matrix {
        text.push_str(&lap.matrix.to_text());
    }
    let mut json = json!({
        "k": k,
        "part": format!("{part:?}").to_lowercase(),
        "eigenvalues": rep.eigenvalues,
        "rank": rep.exact_rank,
        "zero_multiplicity": rep.zero_multiplicity,
        "pseudo_det": rep.pseudo_det.to_string(),
    });
    if exact {
        json["charpoly"] = json!(charpoly);
    }
    if dump_matrix {
        json["matrix"] = json!(lap.matrix.to_text());
    }
    Ok(Output::ok(text, json))
}

fn cmd_gap(pair: &ComplexPair, k: isize) -> CmdResult {
    let gap = spectral_gap(pair, k)?;
    let text = match gap {
        Some(g) => format!("gap={}\n", sig12(g)),
        None => "gap=none (no k-faces outside the subcomplex)\n".to_string(),
    };
    Ok(Output::ok(text, json!({ "k": k, "gap": gap })))
}

fn cmd_homology(pair: &ComplexPair, ks: &[isize]) -> CmdResult {
    let mut text = String::new();
    let mut groups = Vec::new();
    for &k in ks {
        let h = relative_homology(pair, k)?;
        text.push_str(&format!("H_{k} = {h}\n"));
        groups.push(json!({
            "k": k,
            "betti": h.betti,
            "torsion": h.torsion_factors.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "group": h.to_string(),
        }));
    }
    Ok(Output::ok(text, json!({ "homology": groups })))
}

fn candidate_json(c: &CandidateSubcomplex) -> Value {
    json!({
        "faces": c.faces.iter().map(|f| f.vertices().to_vec()).collect::<Vec<_>>(),
        "weight": c.weight.to_string(),
    })
}

fn cmd_trees(pair: &ComplexPair, k: isize, opts: EnumOptions, list: bool) -> CmdResult {
    let trees = enumerate_trees(pair, k, opts)?;
    let weighted: num_bigint::BigInt = trees.iter().map(|t| &t.weight * &t.weight).sum();
    let mut text = format!("trees={} weighted={weighted}\n", trees.len());
    if list {
        for t in &trees {
            let faces: Vec<String> = t.faces.iter().map(ToString::to_string).collect();
            text.push_str(&format!("{} weight={}\n", faces.join(" "), t.weight));
        }
    }
    let mut json = json!({ "k": k, "count": trees.len(), "weighted": weighted.to_string() });
    if list {
        json["trees"] = trees.iter().map(candidate_json).collect();
    }
    Ok(Output::ok(text, json))
}

fn cmd_verify_i(pair: &ComplexPair, k: isize, opts: EnumOptions) -> CmdResult {
    let r = verify_matrix_tree_i(pair, k, opts)?;
    let rhs = r.rhs_string();
    let text = format!("LHS={} RHS={rhs} {}\n", r.lhs, r.verdict);
    let json = json!({
        "k": k,
        "lhs": r.lhs.to_string(),
        "rhs": rhs,
        "verdict": r.verdict.to_string(),
        "tree_count": r.tree_count,
        "forest_count": r.forest_count,
    });
    Ok(Output {
        text,
        json,
        violated: r.verdict == Verdict::Violated,
    })
}

/// Runs the fixed-forest identity for every forest in dimension k−1.
fn cmd_verify_ii(pair: &ComplexPair, k: isize, opts: EnumOptions) -> CmdResult {
    let forests = enumerate_forests(pair, k, opts)?;
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut verdict = Verdict::Verified;
    for g in &forests {
        let r = verify_matrix_tree_ii(pair, k, g, opts)?;
        let faces: Vec<String> = g.faces.iter().map(ToString::to_string).collect();
        text.push_str(&format!(
            "forest [{}] det={} trees={} {}\n",
            faces.join(" "),
            r.det,
            r.tree_sum,
            r.verdict
        ));
        match r.verdict {
            Verdict::Violated => verdict = Verdict::Violated,
            Verdict::Vacuous if verdict == Verdict::Verified => verdict = Verdict::Vacuous,
            _ => {}
        }
        rows.push(json!({
            "forest": candidate_json(g),
            "det": r.det.to_string(),
            "tree_sum": r.tree_sum.to_string(),
            "verdict": r.verdict.to_string(),
        }));
    }
    text.push_str(&format!("forests={} {verdict}\n", forests.len()));
    Ok(Output {
        text,
        json: json!({ "k": k, "verdict": verdict.to_string(), "forests": rows }),
        violated: verdict == Verdict::Violated,
    })
}

fn cmd_bounds(pair: &ComplexPair, k: isize, theorem: Theorem) -> CmdResult {
    let reports: Vec<BoundReport> = match theorem {
        Theorem::MissingFace => {
            let r = bound_thm42(pair, k)?;
            vec![r.closed, r.refined]
        }
        Theorem::Flag => vec![bound_thm43(pair, k)?],
        Theorem::PureBoundary => vec![bound_thm44(pair.complex())?],
        Theorem::Comparison => vec![bound_thm45(pair, k)?],
        Theorem::All => all_bounds(pair, k)?,
    };
    let mut text = String::new();
    for r in &reports {
        let gap = r.gap.map_or_else(|| "none".to_string(), format_float);
        let mut line = format!("{} k={} bound={} ", r.name.label(), r.k, r.bound);
        if let Some(u) = r.upper {
            line.push_str(&format!("upper={u} "));
        }
        line.push_str(&format!("gap={gap} "));
        line.push_str(if r.holds { "holds" } else { "FAILS" });
        if r.equality {
            line.push_str(" equality");
        }
        if r.certificate {
            line.push_str(" certificate");
        }
        if !r.hypothesis_met {
            line.push_str(" (hypothesis not met)");
        }
        text.push_str(&line);
        text.push('\n');
    }
    let violated = reports.iter().any(|r| !r.holds);
    Ok(Output {
        text,
        json: json!({ "k": k, "bounds": reports }),
        violated,
    })
}
