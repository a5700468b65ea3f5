//! Command-line front end: certification, inspection, and solving.
//!
//! JSON report on stdout, human-readable summary on stderr.
//! Exit codes: 0 = positive result, 1 = negative result,
//! 2 = inconclusive, 3 = usage or validation error.

use clap::{Args, Parser, Subcommand};
use serde_json::json;
use smallcancel::conditions::{check_condition, Condition};
use smallcancel::diagram::{
    curvature_check, pe_weights, verify_weight_hypotheses, Diagram, WeightVariant,
};
use smallcancel::pieces::{compute_pieces, min_piece_decomposition};
use smallcancel::presentation::{parse_presentation, parse_word, validate, Presentation};
use smallcancel::report::{curvature_json, display_word, Report};
use smallcancel::solvers::{solve_conjugacy, solve_word, Caps};
use smallcancel::stargraph::build_star_graph;
use smallcancel::Rational;
use std::io::Read;

#[derive(Parser)]
#[command(name = "smallcancel", version, about = "Generalized small cancellation certifier and word/conjugacy solver")]
struct Cli {
    /// Presentation file in the grammar `<x, y | w1, w2, ...>`;
    /// `-` or omitted reads stdin.
    #[arg(global = true, long, short = 'p', default_value = "-")]
    presentation: String,
    /// Seed for any randomized behavior (reserved; current commands
    /// are deterministic).
    #[arg(global = true, long)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Certify the presentation against a small cancellation condition.
    Check(CheckArgs),
    /// Print the star graph (JSON, or DOT with --dot).
    Stargraph {
        #[arg(long)]
        dot: bool,
    },
    /// Print the piece table and minimal piece decompositions.
    Pieces,
    /// Enumerate reduced circuits in the star graph up to a length.
    Circuits {
        #[arg(long, default_value_t = 5)]
        max_len: usize,
    },
    /// Decide triviality of a word within area budgets.
    SolveWord(SolveWordArgs),
    /// Decide conjugacy of two words within budgets.
    SolveConj(SolveConjArgs),
    /// Validate a diagram JSON file over the presentation.
    DiagramVerify(DiagramVerifyArgs),
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long, value_enum)]
    condition: ConditionArg,
}

#[derive(Args)]
struct SolveWordArgs {
    #[arg(long)]
    word: String,
    #[arg(long, value_enum, default_value = "wstar")]
    condition: ConditionArg,
    /// Cap on the number of 2-cells (search depth).
    #[arg(long)]
    max_area: Option<u64>,
    /// Cap on intermediate word length.
    #[arg(long)]
    max_len: Option<usize>,
}

#[derive(Args)]
struct SolveConjArgs {
    #[arg(long)]
    u: String,
    #[arg(long)]
    v: String,
    #[arg(long, value_enum, default_value = "wstar")]
    condition: ConditionArg,
    /// Cap on conjugator length.
    #[arg(long)]
    max_conj_len: Option<usize>,
    /// Cap on the inner word searches.
    #[arg(long)]
    max_area: Option<u64>,
    #[arg(long)]
    max_len: Option<usize>,
}

#[derive(Args)]
struct DiagramVerifyArgs {
    /// Diagram JSON file.
    #[arg(long)]
    file: String,
    /// Also verify the weight-function hypotheses with the
    /// piecewise-Euclidean weights (ε = 1/903, N = 0).
    #[arg(long)]
    weights: bool,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum ConditionArg {
    Wstar,
    W,
    Vstar,
    V,
}

impl From<ConditionArg> for Condition {
    fn from(c: ConditionArg) -> Condition {
        match c {
            ConditionArg::Wstar => Condition::WStar,
            ConditionArg::W => Condition::W,
            ConditionArg::Vstar => Condition::VStar,
            ConditionArg::V => Condition::V,
        }
    }
}

fn fail(msg: &str) -> ! {
    eprintln!("error: {msg}");
    std::process::exit(3);
}

fn load_presentation(path: &str) -> Presentation {
    let text = if path == "-" {
        let mut buf = String::new();
        if std::io::stdin().read_to_string(&mut buf).is_err() {
            fail("cannot read presentation from stdin");
        }
        buf
    } else {
        match std::fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) => fail(&format!("cannot read {path}: {e}")),
        }
    };
    match parse_presentation(&text) {
        Ok(p) => p,
        Err(e) => fail(&format!("presentation: {e}")),
    }
}

fn emit(report: Report) -> ! {
    println!(
        "{}",
        serde_json::to_string_pretty(&serde_json::to_value(&report).expect("serializable"))
            .expect("printable")
    );
    eprintln!("{}", report.summary());
    std::process::exit(report.exit_code());
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // Help and version are not usage errors.
            use clap::error::ErrorKind::*;
            if matches!(e.kind(), DisplayHelp | DisplayVersion) {
                let _ = e.print();
                std::process::exit(0);
            }
            let _ = e.print();
            std::process::exit(3);
        }
    };
    let p = load_presentation(&cli.presentation);
    let names = p.generator_names().to_vec();
    match cli.command {
        Command::Check(args) => {
            let cond: Condition = args.condition.into();
            let outcome = check_condition(&p, cond);
            let warnings = validate(&p)
                .violations
                .iter()
                .map(|f| format!("{f:?}"))
                .collect();
            emit(Report::Check {
                presentation: p.display(),
                outcome,
                warnings,
            });
        }
        Command::Stargraph { dot } => {
            let g = build_star_graph(&p);
            if dot {
                print!("{}", g.to_dot(&names));
                eprintln!(
                    "star graph: {} vertices, {} edges",
                    g.n_vertices,
                    g.edges.len()
                );
                std::process::exit(0);
            }
            let vertex_names: Vec<String> = (0..g.n_vertices)
                .map(|v| {
                    let gen = (v / 2) as usize;
                    let sign = if v % 2 == 0 { "+" } else { "-" };
                    format!("{sign}{}", names.get(gen).cloned().unwrap_or_default())
                })
                .collect();
            let edges = g
                .edges
                .iter()
                .map(|e| {
                    json!({
                        "tail": e.tail,
                        "head": e.head,
                        "corner": e.provenance.map(|(root, pos)| json!({"root": root, "position": pos})),
                    })
                })
                .collect();
            emit(Report::Stargraph {
                presentation: p.display(),
                vertices: g.n_vertices,
                vertex_names,
                edges,
            });
        }
        Command::Pieces => {
            let table = compute_pieces(&p);
            let mut pieces: Vec<String> = table
                .pieces
                .iter()
                .map(|w| display_word(w, &names))
                .collect();
            pieces.sort();
            let min_decompositions = (0..p.relators().len())
                .map(|i| min_piece_decomposition(&p, &table, i))
                .collect();
            emit(Report::Pieces {
                presentation: p.display(),
                max_piece_length: table.max_len,
                pieces,
                min_decompositions,
            });
        }
        Command::Circuits { max_len } => {
            let g = build_star_graph(&p);
            let circuits = match g.enumerate_reduced_circuits(max_len) {
                Ok(c) => c,
                Err(e) => fail(&format!("{e:?}")),
            };
            let mut counts: Vec<(usize, usize)> = Vec::new();
            for l in 1..=max_len {
                counts.push((l, circuits.iter().filter(|c| c.len() == l).count()));
            }
            let circuit_json = circuits
                .iter()
                .map(|c| {
                    json!({
                        "darts": c.darts.iter().map(|d| json!({"edge": d.edge, "reversed": d.flip})).collect::<Vec<_>>(),
                        "vertices": c.vertices(&g),
                    })
                })
                .collect();
            emit(Report::Circuits {
                presentation: p.display(),
                max_len,
                counts,
                circuits: circuit_json,
            });
        }
        Command::SolveWord(args) => {
            let w = match parse_word(&p, &args.word) {
                Ok(w) => w,
                Err(e) => fail(&format!("word: {e}")),
            };
            let caps = Caps {
                max_area: args.max_area,
                max_intermediate_length: args.max_len,
                max_conj_length: None,
            };
            match solve_word(&p, &w, args.condition.into(), &caps) {
                Ok(report) => emit(Report::SolveWord {
                    presentation: p.display(),
                    word: display_word(&w, &names),
                    report,
                }),
                Err(e) => fail(&e.to_string()),
            }
        }
        Command::SolveConj(args) => {
            let u = match parse_word(&p, &args.u) {
                Ok(w) => w,
                Err(e) => fail(&format!("u: {e}")),
            };
            let v = match parse_word(&p, &args.v) {
                Ok(w) => w,
                Err(e) => fail(&format!("v: {e}")),
            };
            let caps = Caps {
                max_area: args.max_area,
                max_intermediate_length: args.max_len,
                max_conj_length: args.max_conj_len,
            };
            match solve_conjugacy(&p, &u, &v, args.condition.into(), &caps) {
                Ok(report) => emit(Report::SolveConj {
                    presentation: p.display(),
                    u: display_word(&u, &names),
                    v: display_word(&v, &names),
                    report,
                }),
                Err(e) => fail(&e.to_string()),
            }
        }
        Command::DiagramVerify(args) => {
            let text = match std::fs::read_to_string(&args.file) {
                Ok(t) => t,
                Err(e) => fail(&format!("cannot read {}: {e}", args.file)),
            };
            let value: serde_json::Value = match serde_json::from_str(&text) {
                Ok(v) => v,
                Err(e) => fail(&format!("diagram JSON: {e}")),
            };
            match Diagram::from_json(&p, &value) {
                Ok(m) => {
                    let g = build_star_graph(&p);
                    let pe = pe_weights(&m);
                    let (lhs, rhs) = curvature_check(&m, &pe);
                    let weights = args.weights.then(|| {
                        let eps = Rational::new(1.into(), 903.into());
                        let n0 = Rational::new(0.into(), 1.into());
                        let thm10 =
                            verify_weight_hypotheses(&m, &pe, &eps, &n0, WeightVariant::Thm10);
                        let thm11 =
                            verify_weight_hypotheses(&m, &pe, &eps, &n0, WeightVariant::Thm11);
                        json!({
                            "epsilon": "1/903",
                            "n_const": "0",
                            "thm10": {"holds": thm10.holds, "bound": thm10.bound.to_string(), "actual": thm10.actual},
                            "thm11": {"holds": thm11.holds, "bound": thm11.bound.to_string(), "actual": thm11.actual},
                        })
                    });
                    let (boundary_words, _) = m.boundary_data();
                    emit(Report::DiagramVerify {
                        presentation: p.display(),
                        valid: true,
                        error: None,
                        tau: Some(m.tau()),
                        chi: Some(m.chi()),
                        relator_faces: Some(m.relator_face_count()),
                        boundary_words: Some(
                            boundary_words
                                .iter()
                                .map(|w| display_word(w, &names))
                                .collect(),
                        ),
                        reduced: Some(m.is_reduced(&p, &g).is_ok()),
                        vertex_reduced: Some(m.is_vertex_reduced(&p, &g).is_ok()),
                        curvature: Some(curvature_json(&lhs, &rhs)),
                        weights,
                    });
                }
                Err(e) => emit(Report::DiagramVerify {
                    presentation: p.display(),
                    valid: false,
                    error: Some(e),
                    tau: None,
                    chi: None,
                    relator_faces: None,
                    boundary_words: None,
                    reduced: None,
                    vertex_reduced: None,
                    curvature: None,
                    weights: None,
                }),
            }
        }
    }
}
