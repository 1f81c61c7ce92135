use std::fmt;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hadamard_core::fiber::{claim_dimension, claim_ideal, torus_orbit_check, CLAIMED_DIMENSION};
use hadamard_core::groebner::{buchberger, dimension_from_basis, GroebnerConfig};
use hadamard_core::identify::{build_system, degeneracy_survey, SurveyOptions};
use hadamard_core::json::{
    matrix_to_json, parse_centers, parse_curve, parse_document, parse_ideal, parse_point, parse_poly,
    parse_quadric, point_to_json, poly_to_json, product_to_json, quadric_to_json, rational_to_json,
    rational_vec_to_json, scl_to_json, smoothness_to_json,
};
use hadamard_core::poly::MonomialOrder;
use hadamard_core::product::{implicitize, implicitize_by_elimination, morphism_check, ImplicitizeOptions, SurfaceImplicit};
use hadamard_core::quadric::{SectionStatus, Smoothness};
use hadamard_core::surface::{is_cone_with_vertex, section, section_is_singular, singular_locus_dimension, vertex_space};
use hadamard_core::verify::{run_checks, DEFAULT_SEED};

const AFTER_HELP: &str = "\
JSON arguments are given inline or as @path.
Rationals are strings \"p/q\"; points are arrays of four rationals.
Pluecker coordinates are ordered (p01, p02, p03, p12, p13, p23); a 1-based
label q_ij corresponds to p_(i-1)(j-1).
Set HS_GB_STEP_LIMIT to change the Groebner S-pair reduction limit.
Exit codes: 0 success, 1 computation or verification failure, 2 malformed input.";

#[derive(Parser)]
#[command(name = "hadamard", version, about = "Exact Hadamard products of lines and conics in P^3", after_help = AFTER_HELP)]
struct Cli {
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Oracle {
    Gb,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Order {
    Lex,
    Grevlex,
}

#[derive(Subcommand)]
enum Command {
    /// Implicitize and classify C1 * C2.
    Product {
        #[arg(long)]
        c1: String,
        #[arg(long)]
        c2: String,
        #[arg(long)]
        cap: Option<u32>,
        /// Also implicitize by Groebner elimination.
        #[arg(long, value_enum)]
        oracle: Option<Oracle>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Smoothness, adjugate diagonal, membership in Y and SCL of a quadric.
    Analyze {
        #[arg(long)]
        quadric: String,
    },
    /// Singular coordinate locus of a quadric.
    Scl {
        #[arg(long)]
        quadric: String,
    },
    /// Quadric singular on each section Q ∩ H_i at the given centers.
    Reconstruct {
        #[arg(long)]
        centers: String,
    },
    /// Chart ideal of line pairs with product in the Segre quadric.
    Fiber {
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Reduced Groebner basis and dimension of an ideal.
    Gb {
        #[arg(long)]
        ideal: String,
        #[arg(long, value_enum, default_value_t = Order::Grevlex)]
        order: Order,
    },
    /// Rank survey of the 12x10 reconstruction system.
    Survey {
        /// Generic draws.
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 20)]
        per_component: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Skip evaluating the 66 maximal minors.
        #[arg(long)]
        skip_minors: bool,
    },
    /// Singular locus, sections and cone test of a surface.
    Surface {
        #[arg(long)]
        equation: String,
        #[arg(long)]
        vertex: Option<String>,
    },
    /// Rerun every reproducible computation.
    VerifyPaper {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Only checks whose id starts with this prefix.
        #[arg(long)]
        only: Option<String>,
    },
}

enum CliError {
    Input(String),
    Failure(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "malformed input: {m}"),
            CliError::Failure(m) => write!(f, "error: {m}"),
        }
    }
}

fn input<E: fmt::Display>(e: E) -> CliError {
    CliError::Input(e.to_string())
}

fn failure<E: fmt::Display>(e: E) -> CliError {
    CliError::Failure(e.to_string())
}

/// Reads an inline JSON argument or `@path`.
fn read_arg(arg: &str, name: &str) -> Result<Value, CliError> {
    let text = match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("--{name}: {path}: {e}")))?,
        None => arg.to_string(),
    };
    parse_document(&text).map_err(|e| CliError::Input(format!("--{name}: {e}")))
}

struct Output {
    json: Value,
    text: String,
    ok: bool,
}

fn run(cli: &Cli) -> Result<Output, CliError> {
    match &cli.command {
        Command::Product { c1, c2, cap, oracle, seed } => {
            let a = parse_curve(&read_arg(c1, "c1")?, "$c1").map_err(input)?;
            let b = parse_curve(&read_arg(c2, "c2")?, "$c2").map_err(input)?;
            let c = implicitize(&a, &b, &ImplicitizeOptions { cap: *cap, seed: *seed }).map_err(failure)?;
            let morphism = morphism_check(&a, &b);
            let mut j = product_to_json(&c);
            j["morphism"] = json!(morphism.is_morphism());
            j["seed"] = json!(seed);
            let mut text = match c.surface() {
                Some(s) => format!("surface of degree {}: {}\n", s.degree(), s.equation()),
                None => format!("{}\n", j["image"]),
            };
            text.push_str(&format!("morphism: {}\n", morphism.is_morphism()));
            let mut ok = true;
            if oracle.is_some() {
                let elim = implicitize_by_elimination(&a, &b, &GroebnerConfig::from_env()).map_err(failure)?;
                let agrees = match c.surface() {
                    Some(s) => elim.len() == 1 && &elim[0] == s.equation(),
                    None => true,
                };
                ok = agrees;
                j["oracle"] = json!({
                    "generators": elim.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                    "agrees": agrees,
                });
                text.push_str(&format!(
                    "elimination: {}\n",
                    elim.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")
                ));
            }
            Ok(Output { json: j, text, ok })
        }
        Command::Analyze { quadric } => {
            let q = parse_quadric(&read_arg(quadric, "quadric")?, "$quadric").map_err(input)?;
            let sm = q.smoothness();
            let adj = q.adjugate_diagonal();
            let scl = q.scl();
            let j = json!({
                "quadric": quadric_to_json(&q),
                "smoothness": smoothness_to_json(&sm),
                "adjugate_diagonal": rational_vec_to_json(&adj),
                "in_y": q.in_closure_y(),
                "scl": scl_to_json(&scl),
            });
            let mut text = format!("quadric: {q}\n");
            text.push_str(&match &sm {
                Smoothness::Smooth => "smooth\n".to_string(),
                Smoothness::Cone { rank, .. } => match sm.vertex() {
                    Some(v) => format!("cone of rank {rank} with vertex {v}\n"),
                    None => format!("singular of rank {rank}\n"),
                },
            });
            text.push_str(&format!(
                "adjugate diagonal: ({})\nin Y: {}\n",
                adj.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "),
                q.in_closure_y()
            ));
            text.push_str(&scl_text(&scl));
            Ok(Output { json: j, text, ok: true })
        }
        Command::Scl { quadric } => {
            let q = parse_quadric(&read_arg(quadric, "quadric")?, "$quadric").map_err(input)?;
            let scl = q.scl();
            Ok(Output {
                json: scl_to_json(&scl),
                text: scl_text(&scl),
                ok: true,
            })
        }
        Command::Reconstruct { centers } => {
            let cs = parse_centers(&read_arg(centers, "centers")?, "$centers").map_err(input)?;
            let sys = build_system(&cs).map_err(input)?;
            let q = sys.quadric().map_err(failure)?;
            let j = json!({
                "quadric": quadric_to_json(&q),
                "rank": sys.rank,
                "kernel_dim": sys.kernel.len(),
                "degenerate_position": sys.degenerate_position,
                "matrix": matrix_to_json(&sys.matrix),
            });
            let text = format!(
                "quadric: {q}\nrank: {}\ndegenerate position: {}\n",
                sys.rank, sys.degenerate_position
            );
            Ok(Output { json: j, text, ok: true })
        }
        Command::Fiber { samples, seed } => {
            let ideal = claim_ideal();
            let names = hadamard_core::fiber::CHART_VARS;
            let report = claim_dimension(&GroebnerConfig::from_env()).map_err(failure)?;
            let orbit = torus_orbit_check(*samples, *seed).map_err(failure)?;
            let gens: Vec<String> = ideal.generators().iter().map(|g| g.display_with(&names)).collect();
            let j = json!({
                "generators": gens,
                "dimension": report.groebner_dimension,
                "oracle_dimension": report.oracle_dimension,
                "paper_claim": CLAIMED_DIMENSION,
                "in_domain_dimension": report.in_domain_dimension,
                "top_strata": report.top_strata.iter().map(|s| s.label()).collect::<Vec<_>>(),
                "discrepancy_note": report.discrepancy_note,
                "torus_orbit_check": { "seed": seed, "samples": orbit.samples, "matches": orbit.matches },
            });
            let text = format!(
                "generators: {}\ndimension: {} (oracle {}, claimed {})\n{}torus orbit: {}/{} match\n",
                gens.join(", "),
                report.groebner_dimension,
                report.oracle_dimension,
                CLAIMED_DIMENSION,
                report.discrepancy_note.as_ref().map_or(String::new(), |n| format!("note: {n}\n")),
                orbit.matches,
                orbit.samples
            );
            Ok(Output { json: j, text, ok: report.oracle_agrees() && orbit.all_match() })
        }
        Command::Gb { ideal, order } => {
            let i = parse_ideal(&read_arg(ideal, "ideal")?, "$ideal").map_err(input)?;
            let order = match order {
                Order::Lex => MonomialOrder::Lex,
                Order::Grevlex => MonomialOrder::GrevLex,
            };
            let gb = buchberger(&i, order, &GroebnerConfig::from_env()).map_err(failure)?;
            let dim = dimension_from_basis(&gb);
            let j = json!({
                "basis": gb.basis().iter().map(poly_to_json).collect::<Vec<_>>(),
                "basis_text": gb.basis().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                "dimension": dim,
            });
            let mut text: String = gb.basis().iter().map(|p| format!("{p}\n")).collect();
            text.push_str(&format!("dimension: {dim}\n"));
            Ok(Output { json: j, text, ok: true })
        }
        Command::Survey { samples, per_component, seed, skip_minors } => {
            let r = degeneracy_survey(&SurveyOptions {
                generic_samples: *samples,
                per_component: *per_component,
                seed: *seed,
                check_minors: !skip_minors,
            });
            let batch = |b: &hadamard_core::identify::SurveyBatch| {
                json!({ "label": b.label, "samples": b.samples, "rank_counts": b.rank_counts, "max_rank": b.max_rank })
            };
            let j = json!({
                "seed": r.seed,
                "generic": batch(&r.generic),
                "components": r.components.iter().map(batch).collect::<Vec<_>>(),
                "total_draws": r.total_draws,
                "full_rank_draws": r.full_rank_draws,
                "nonvanishing_minor_draws": r.nonvanishing_minor_draws,
                "schwartz_zippel_note": r.schwartz_zippel_note,
            });
            let mut text = format!("generic: {:?}\n", r.generic.rank_counts);
            for b in &r.components {
                text.push_str(&format!("{}: max rank {}\n", b.label, b.max_rank));
            }
            text.push_str(&format!("full-rank draws: {} of {}\n", r.full_rank_draws, r.total_draws));
            let ok = r.full_rank_draws == 0 && r.generic_all_rank_nine() && r.components_all_at_most_eight();
            Ok(Output { json: j, text, ok })
        }
        Command::Surface { equation, vertex } => {
            let f = parse_poly(&read_arg(equation, "equation")?, "$equation").map_err(input)?;
            let w = SurfaceImplicit::new(&f).map_err(input)?;
            let cfg = GroebnerConfig::from_env();
            let sing = singular_locus_dimension(&w, &cfg).map_err(failure)?;
            let mut sections = Vec::new();
            let mut text = format!("surface of degree {}: {}\nsingular locus dimension: {sing}\n", w.degree(), w.equation());
            for i in 0..4 {
                match section(&w, i) {
                    Ok(s) => {
                        let singular = section_is_singular(&s, &cfg).map_err(failure)?;
                        text.push_str(&format!("section x{i} = 0: singular {singular}\n"));
                        sections.push(json!({ "plane": i, "singular": singular }));
                    }
                    Err(e) => {
                        text.push_str(&format!("section x{i} = 0: {e}\n"));
                        sections.push(json!({ "plane": i, "error": e.to_string() }));
                    }
                }
            }
            let vertices = vertex_space(&w);
            text.push_str(&format!("vertex space dimension: {}\n", vertices.len()));
            let mut j = json!({
                "vertex_space": vertices.iter().map(|v| rational_vec_to_json(v)).collect::<Vec<_>>(),
                "degree": w.degree(),
                "equation": w.equation().to_string(),
                "singular_locus_dimension": sing,
                "sections": sections,
            });
            if let Some(v) = vertex {
                let p = parse_point(&read_arg(v, "vertex")?, "$vertex").map_err(input)?;
                let cone = is_cone_with_vertex(&w, &p);
                text.push_str(&format!("cone with vertex {p}: {cone}\n"));
                j["vertex"] = point_to_json(&p);
                j["cone_with_vertex"] = json!(cone);
            }
            Ok(Output { json: j, text, ok: true })
        }
        Command::VerifyPaper { seed, only } => {
            let r = run_checks(*seed, only.as_deref());
            if r.checks.is_empty() {
                return Err(CliError::Input(format!("no check id starts with {:?}", only.as_deref().unwrap_or(""))));
            }
            Ok(Output {
                json: r.to_json(),
                text: r.to_text(),
                ok: r.all_passed(),
            })
        }
    }
}

fn scl_text(r: &hadamard_core::quadric::SclResult) -> String {
    let mut out = String::new();
    for (i, s) in r.sections.iter().enumerate() {
        match s {
            SectionStatus::ReducibleConic(c) => out.push_str(&format!("H{i}: reducible conic, center {c}\n")),
            other => out.push_str(&format!("H{i}: {}\n", other.label().replace('_', " "))),
        }
    }
    out.push_str(&format!(
        "distinct: {}\noff other planes: {}\n",
        r.centers_distinct, r.off_other_planes
    ));
    if let Some(d) = &r.centers_det {
        out.push_str(&format!("centers determinant: {} (coplanar: {})\n", rational_to_json(d).as_str().unwrap_or(""), d == &num_zero()));
    }
    out
}

fn num_zero() -> hadamard_core::linalg::Rational {
    hadamard_core::linalg::rat(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("serializable")),
                Format::Text => print!("{}", out.text),
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("{e}");
            match e {
                CliError::Input(_) => ExitCode::from(2),
                CliError::Failure(_) => ExitCode::from(1),
            }
        }
    }
}
