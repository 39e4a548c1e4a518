use clap::{Args, Parser, Subcommand, ValueEnum};
use holant::classes::{self, ClassReport, Target};
use holant::classifier::{self, Outcome, Verdict};
use holant::constructions::{self, ConstructionError, GadgetScript};
use holant::factor::upf;
use holant::grid::{self, CspInstance, Grid, GridParams};
use holant::literal::format_scalar;
use holant::signature::parse_bitstring;
use holant::sigset::{random_sigset, SigSet};
use holant::transforms::{apply_holographic, hat, named_matrix, unhat, Mat2, Side};
use holant::{Field, Signature};
use serde::Serialize;
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "holant", version, about = "Holant signature algebra and dichotomy classifier")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Global {
    /// Override the field declared in the input files.
    #[arg(long, global = true, value_enum)]
    field: Option<FieldArg>,
    /// Tolerance for the approximate field.
    #[arg(long, global = true)]
    epsilon: Option<f64>,
    /// Worker threads for grid evaluation.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    /// JSON list of extra candidate matrices for transformability search.
    #[arg(long, global = true)]
    candidates: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FieldArg {
    Cyclo24,
    Approx,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide which dichotomy case a signature set falls in.
    Classify {
        set: PathBuf,
        #[arg(long, group = "problem")]
        with_delta0: bool,
        #[arg(long, group = "problem")]
        eo: bool,
        #[arg(long, group = "problem")]
        single_weighted: bool,
        #[arg(long, group = "problem")]
        csp: bool,
        #[arg(long, group = "problem")]
        csp2: bool,
        #[arg(long, group = "problem")]
        cspd: Option<u32>,
        #[arg(long, group = "problem")]
        holantc: bool,
    },
    /// Evaluate a closed grid (or CSP instance with --csp).
    Eval {
        set: PathBuf,
        grid: PathBuf,
        /// Sum over even-orientation assignments only.
        #[arg(long, conflicts_with = "csp")]
        eo: bool,
        #[arg(long)]
        csp: bool,
    },
    /// Realize an open grid as a signature.
    Gadget { set: PathBuf, grid: PathBuf },
    /// Unique prime factorization of one signature.
    Factor {
        set: PathBuf,
        #[arg(long)]
        sig: String,
    },
    /// Class membership with a replayable certificate.
    Check {
        class: String,
        set: PathBuf,
        #[arg(long)]
        sig: String,
        #[arg(long, default_value_t = 4)]
        d: u32,
        #[arg(long, default_value_t = 1)]
        r: u32,
    },
    /// Run a gadget construction and print the resulting script.
    Construct {
        construction: String,
        set: PathBuf,
        #[arg(long)]
        sig: String,
        /// Second signature, for `decomposition`.
        #[arg(long)]
        with: Option<String>,
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long)]
        beta: Option<String>,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        budget: usize,
    },
    /// Apply a named matrix to every signature of a set.
    Transform {
        matrix: String,
        set: PathBuf,
        #[arg(long, value_enum, default_value_t = SideArg::Column)]
        side: SideArg,
    },
    /// Seeded random grids and signature sets.
    Random {
        #[arg(value_enum)]
        kind: RandomKind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        vertices: usize,
        #[arg(long, default_value_t = 8)]
        edges: usize,
        #[arg(long, default_value_t = 4)]
        max_arity: usize,
        #[arg(long, default_value_t = 0)]
        dangling: usize,
        #[arg(long, default_value_t = 3)]
        count: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Column,
    Row,
    Hat,
    Unhat,
}

#[derive(Clone, Copy, ValueEnum)]
enum RandomKind {
    Grid,
    Bipartite,
    Set,
}

enum Fail {
    Parse(String),
    Precondition(String),
}

type Res<T> = Result<T, Fail>;

fn parse_err(e: impl std::fmt::Display) -> Fail {
    Fail::Parse(e.to_string())
}

fn pre_err(e: impl std::fmt::Display) -> Fail {
    Fail::Precondition(e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok((out, code)) => {
            use std::io::Write;
            let _ = writeln!(std::io::stdout(), "{}", serde_json::to_string_pretty(&out).expect("json"));
            ExitCode::from(code)
        }
        Err(Fail::Parse(m)) => {
            eprintln!("parse error: {}", m);
            ExitCode::from(2)
        }
        Err(Fail::Precondition(m)) => {
            eprintln!("precondition violated: {}", m);
            ExitCode::from(3)
        }
    }
}

fn override_field(g: &Global) -> Option<Field> {
    match g.field {
        Some(FieldArg::Cyclo24) => Some(Field::Cyclo24),
        Some(FieldArg::Approx) => Some(Field::Approx {
            eps: g.epsilon.unwrap_or(1e-9),
        }),
        None => g.epsilon.map(|eps| Field::Approx { eps }),
    }
}

fn read_json(p: &Path) -> Res<Value> {
    let s = std::fs::read_to_string(p).map_err(|e| Fail::Parse(format!("{}: {}", p.display(), e)))?;
    serde_json::from_str(&s).map_err(|e| Fail::Parse(format!("{}: {}", p.display(), e)))
}

fn load_set(g: &Global, p: &Path) -> Res<SigSet> {
    SigSet::from_json(&read_json(p)?, override_field(g)).map_err(parse_err)
}

fn pick(set: &SigSet, name: &str) -> Res<Signature> {
    set.get(name)
        .cloned()
        .ok_or_else(|| Fail::Parse(format!("no signature named {:?}", name)))
}

/// Candidates file: a JSON list whose items are matrix names or `[[a,b],[c,d]]`.
fn load_candidates(g: &Global, field: Field) -> Res<Vec<Mat2>> {
    let Some(p) = &g.candidates else { return Ok(vec![]) };
    let v = read_json(p)?;
    let items = v.as_array().ok_or_else(|| Fail::Parse("candidates must be a JSON list".into()))?;
    items
        .iter()
        .map(|it| match it {
            Value::String(name) => named_matrix(name, field).map_err(parse_err),
            Value::Array(rows) => {
                let cells: Vec<String> = rows
                    .iter()
                    .flat_map(|r| r.as_array().cloned().unwrap_or_default())
                    .map(|c| match c {
                        Value::String(s) => s,
                        other => other.to_string(),
                    })
                    .collect();
                if rows.len() != 2 || cells.len() != 4 {
                    return Err(Fail::Parse("candidate matrix must be 2x2".into()));
                }
                named_matrix(&format!("mat:{}", cells.join(",")), field).map_err(parse_err)
            }
            _ => Err(Fail::Parse("candidate must be a name or a 2x2 list".into())),
        })
        .collect()
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn bits(s: &Option<String>, what: &str, n: usize) -> Res<usize> {
    let s = s.as_deref().ok_or_else(|| Fail::Parse(format!("--{} is required", what)))?;
    if s.len() != n {
        return Err(Fail::Parse(format!("--{} must have {} bits", what, n)));
    }
    parse_bitstring(s).ok_or_else(|| Fail::Parse(format!("--{} is not a bitstring", what)))
}

fn script_json(s: &GadgetScript) -> Value {
    json!({ "script": to_value(s), "replay_hash": s.replay_hash(), "verified": s.verify() })
}

fn verdict_out(v: Verdict) -> (Value, u8) {
    let code = match v.outcome {
        Outcome::HardModuloSearch { .. } => 4,
        Outcome::NotApplicable { .. } => 3,
        _ => 0,
    };
    (to_value(&v), code)
}

fn run(cli: &Cli) -> Res<(Value, u8)> {
    let g = &cli.global;
    match &cli.cmd {
        Cmd::Classify {
            set,
            with_delta0,
            eo,
            single_weighted,
            csp,
            csp2,
            cspd,
            holantc,
        } => {
            let set = load_set(g, set)?;
            let fs = set.signatures();
            let extra = load_candidates(g, set.field)?;
            let v = if *with_delta0 {
                classifier::check_delta0(&fs, &extra)
            } else if *eo {
                classifier::check_eo(&fs).map_err(pre_err)?
            } else if *single_weighted {
                classifier::check_single_weighted(&fs).map_err(pre_err)?
            } else if *csp {
                classifier::check_csp(&fs)
            } else if *csp2 {
                classifier::check_csp2(&fs)
            } else if let Some(d) = cspd {
                classifier::check_cspd_neq(&fs, *d).map_err(pre_err)?
            } else if *holantc {
                classifier::check_holantc_conditions(&fs, &extra)
            } else {
                let names: Vec<String> = set.sigs.iter().map(|(n, _)| n.clone()).collect();
                classifier::check_pc_named(&fs, &names, &extra)
            };
            Ok(verdict_out(v))
        }
        Cmd::Eval { set, grid: gp, eo, csp } => {
            let sigs = load_set(g, set)?;
            let raw = read_json(gp)?;
            let value = if *csp {
                let inst: CspInstance = serde_json::from_value(raw).map_err(parse_err)?;
                grid::eval_csp(&inst, &sigs).map_err(pre_err)?
            } else {
                let gr: Grid = serde_json::from_value(raw).map_err(parse_err)?;
                if *eo {
                    grid::eval_eo(&gr, &sigs).map_err(pre_err)?
                } else {
                    grid::eval_holant_threads(&gr, &sigs, g.threads.max(1)).map_err(pre_err)?
                }
            };
            Ok((Value::String(format_scalar(&value)), 0))
        }
        Cmd::Gadget { set, grid: gp } => {
            let sigs = load_set(g, set)?;
            let gr: Grid = serde_json::from_value(read_json(gp)?).map_err(parse_err)?;
            let f = grid::realize_gadget(&gr, &sigs).map_err(pre_err)?;
            Ok((SigSet::from_sigs(vec![("gadget".into(), f)]).to_json(), 0))
        }
        Cmd::Factor { set, sig } => {
            let set = load_set(g, set)?;
            let f = pick(&set, sig)?;
            let fz = upf(&f).map_err(pre_err)?;
            let mut factors = SigSet::new(set.field);
            for (k, fac) in fz.factors.iter().enumerate() {
                factors.insert(format!("{}_{}", sig, k), fac.sig.clone());
            }
            Ok((
                json!({ "blocks": fz.blocks(), "factors": factors.to_json(), "scale": format_scalar(&fz.scale) }),
                0,
            ))
        }
        Cmd::Check { class, set, sig, d, r } => {
            let set = load_set(g, set)?;
            let f = pick(&set, sig)?;
            check(class, &f, *d, *r, &load_candidates(g, set.field)?)
        }
        Cmd::Construct {
            construction,
            set,
            sig,
            with,
            alpha,
            beta,
            n,
            budget,
        } => {
            let set = load_set(g, set)?;
            let f = pick(&set, sig)?;
            construct(construction, &set, sig, &f, with, alpha, beta, *n, *budget)
        }
        Cmd::Transform { matrix, set, side } => {
            let set = load_set(g, set)?;
            let out: Vec<(String, Signature)> = match side {
                SideArg::Hat => set.sigs.iter().map(|(n, f)| (n.clone(), hat(f))).collect(),
                SideArg::Unhat => set.sigs.iter().map(|(n, f)| (n.clone(), unhat(f))).collect(),
                SideArg::Column | SideArg::Row => {
                    let m = named_matrix(matrix, set.field).map_err(parse_err)?;
                    let s = if matches!(side, SideArg::Row) { Side::Row } else { Side::Column };
                    set.sigs.iter().map(|(n, f)| (n.clone(), apply_holographic(&m, f, s))).collect()
                }
            };
            let mut res = SigSet::from_sigs(out);
            res.field = set.field;
            Ok((res.to_json(), 0))
        }
        Cmd::Random {
            kind,
            seed,
            vertices,
            edges,
            max_arity,
            dangling,
            count,
        } => match kind {
            RandomKind::Grid => {
                let p = GridParams {
                    max_vertices: *vertices,
                    max_edges: *edges,
                    max_arity: *max_arity,
                    dangling: *dangling,
                    palette: vec![],
                };
                let gr = grid::random_grid(*seed, &p).ok_or_else(|| Fail::Precondition("no grid found for these parameters".into()))?;
                Ok((to_value(&gr), 0))
            }
            RandomKind::Bipartite => {
                let half = (*vertices).max(2) / 2;
                let gr = grid::random_bipartite_grid(*seed, half, *vertices - half, *edges, *max_arity);
                Ok((to_value(&gr), 0))
            }
            RandomKind::Set => Ok((random_sigset(*seed, *count, *max_arity).to_json(), 0)),
        },
    }
}

fn check(class: &str, f: &Signature, d: u32, r: u32, extra: &[Mat2]) -> Res<(Value, u8)> {
    let report: ClassReport = match class {
        "A" => classes::in_a(f),
        "P" => classes::in_p(f),
        "E" => classes::in_e(f),
        "M" => classes::in_m(f),
        "L" => classes::in_l_local_affine(f),
        "A2" => classes::in_a2(f),
        "Adr" => classes::in_a_dr(f, d, r).map_err(pre_err)?,
        "T" => classes::in_t_closure(f),
        "MC" => classes::in_m_closure(f),
        "XMC" => classes::in_xm_closure(f),
        "RC" => classes::in_r_closure(f),
        "EOMA" => classes::eo_pairing_class(f, classes::ClassId::A).map_err(pre_err)?,
        "EOMP" => classes::eo_pairing_class(f, classes::ClassId::P).map_err(pre_err)?,
        "Reb0" => classes::is_rebalancing(f, 0).map_err(pre_err)?,
        "Reb1" => classes::is_rebalancing(f, 1).map_err(pre_err)?,
        "A-trans" | "P-trans" | "L-trans" => {
            let target = match &class[..1] {
                "A" => Target::A,
                "P" => Target::P,
                _ => Target::L,
            };
            return Ok(match classes::transformable_search(std::slice::from_ref(f), target, extra) {
                Some(cert) => (json!({ "found": true, "certificate": to_value(&cert) }), 0),
                None => (json!({ "found": false }), 4),
            });
        }
        other => return Err(Fail::Parse(format!("unknown class {:?}", other))),
    };
    Ok((to_value(&report), 0))
}

#[allow(clippy::too_many_arguments)]
fn construct(
    construction: &str,
    set: &SigSet,
    fname: &str,
    f: &Signature,
    with: &Option<String>,
    alpha: &Option<String>,
    beta: &Option<String>,
    n: usize,
    budget: usize,
) -> Res<(Value, u8)> {
    let cons = |e: ConstructionError| match e {
        ConstructionError::SearchExhausted => Ok((json!({ "found": false }), 4)),
        e => Err(pre_err(e)),
    };
    let out = match construction {
        "selfloop-reduce" => constructions::selfloop_reduce(f, bits(alpha, "alpha", f.arity())?).map(|s| script_json(&s)),
        "arity-gap" => {
            let (a, b) = (bits(alpha, "alpha", f.arity())?, bits(beta, "beta", f.arity())?);
            constructions::reduce_arity_gap(f, a, b).map(|s| script_json(&s))
        }
        "delta-power" => constructions::extract_delta_power(f).map(|dp| {
            json!({ "c": dp.c, "r": dp.r, "lambda": format_scalar(&dp.lambda), "script": to_value(&dp.script), "replay_hash": dp.script.replay_hash() })
        }),
        "odd-route" => constructions::odd_arity_route(f).map(|steps| json!({ "steps": to_value(&steps) })),
        "ghz-normal-form" => constructions::ghz_normal_form_script(f).map(|s| script_json(&s)),
        "ghz-projective" => constructions::ghz_normal_form_projective(f).map(|m| json!({ "matrix": to_value(&m) })),
        "entanglement" => constructions::entanglement_class(f).and_then(|e| {
            let det = constructions::hyperdeterminant(f)?;
            Ok(json!({ "class": to_value(&e), "hyperdeterminant": format_scalar(&det) }))
        }),
        "nonvanishing-witness" => constructions::nonvanishing_witness(f).map(|w| to_value(&w)),
        "symmetrize" => constructions::symmetrize_search(f, budget).map(|s| script_json(&s)),
        "interpolation" => constructions::interpolation_iterates(f, n).map(|hs| {
            let named: Vec<(String, Signature)> = hs.into_iter().enumerate().map(|(k, h)| (format!("h{}", k + 1), h)).collect();
            SigSet::from_sigs(named).to_json()
        }),
        "decomposition" => {
            let gname = with.as_deref().ok_or_else(|| Fail::Parse("--with is required".into()))?;
            let gsig = pick(set, gname)?;
            let rest: Vec<(String, Signature)> = set.sigs.iter().filter(|(k, _)| k != gname && k != fname).cloned().collect();
            constructions::decomposition_route(&rest, f, &gsig).map(|r| to_value(&r))
        }
        other => return Err(Fail::Parse(format!("unknown construction {:?}", other))),
    };
    match out {
        Ok(v) => Ok((v, 0)),
        Err(e) => cons(e),
    }
}
