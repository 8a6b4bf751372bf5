//! Command line front end: argument parsing, configuration echo and JSON output.

use crate::acv::{asymptotic_critical_values, DEFAULT_CONFIDENCE};
use crate::bounds::{attained_bounds, constrained_bounds, newton_bounds, unconstrained_bounds, Scenario};
use crate::constrained::{constrained_infimum_toy, DEFAULT_SCALE_CAP};
use crate::newton::{bifurcation_superset_newton, PolyTuple};
use crate::optimize::{infimum, SearchBudget, DEFAULT_PRECISION};
use crate::polyring::{parse_poly, MPoly};
use crate::polytope::{tuple_facings_capped, PolytopeTuple, DEFAULT_AMBIENT_CAP};
use crate::{Error, Result};
use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};
use std::time::Instant;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Parser, Debug)]
#[command(name = "gcv", version, about = "Asymptotic critical values, infima and bounds for real polynomials")]
pub struct Cli {
    /// print the JSON schema of the output and exit
    #[arg(long, global = true)]
    pub json_schema: bool,
    /// add wall-clock timing to the output (breaks byte-identical reruns)
    #[arg(long, global = true)]
    pub timing: bool,
    /// write the JSON document to this file instead of standard output
    #[arg(long, global = true)]
    pub output: Option<String>,
    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Args, Debug, Clone)]
pub struct PolyArgs {
    /// polynomial text, or @file
    #[arg(long, allow_hyphen_values = true)]
    pub poly: String,
    /// comma separated variable names
    #[arg(long, value_delimiter = ',', required = true)]
    pub vars: Vec<String>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// sample-set constant c in |S| = 2 c n d^(n-1)
    #[arg(long, default_value_t = DEFAULT_CONFIDENCE)]
    pub confidence: u64,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Superset of the asymptotic critical values and the critical values
    Acv(PolyArgs),
    /// Global infimum over R^n
    Infimum {
        #[command(flatten)]
        p: PolyArgs,
        /// random starts per round of the fiber search
        #[arg(long, default_value_t = 64)]
        budget: usize,
        #[arg(long, default_value_t = 8)]
        rounds: usize,
        #[arg(long, default_value_t = 4)]
        growth: u32,
        #[arg(long, default_value_t = DEFAULT_PRECISION)]
        precision: u32,
    },
    /// Newton-polytope superset of the bifurcation values at infinity
    Newton {
        #[command(flatten)]
        p: PolyArgs,
        /// constraint polynomials separated by ';' (or @file)
        #[arg(long, allow_hyphen_values = true)]
        constraints: Option<String>,
    },
    /// Toy-scale constrained infimum candidates
    Constrained {
        #[arg(long, allow_hyphen_values = true)]
        objective: String,
        /// equality constraints g = 0 separated by ';' (or @file)
        #[arg(long, allow_hyphen_values = true)]
        constraints: String,
        /// inequality constraints g >= 0 separated by ';' (or @file)
        #[arg(long, allow_hyphen_values = true)]
        inequalities: Option<String>,
        #[arg(long, value_delimiter = ',', required = true)]
        vars: Vec<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// accepted for compatibility; the toy pipeline is the only one
        #[arg(long)]
        toy: bool,
        #[arg(long, default_value_t = DEFAULT_SCALE_CAP)]
        scale_cap: usize,
    },
    /// Closed-form degree and magnitude bounds
    Bounds {
        #[arg(long)]
        scenario: Scenario,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        d: u64,
        #[arg(long)]
        d1: Option<u64>,
        #[arg(long, default_value_t = 1)]
        tau: u64,
        #[arg(long, default_value_t = 0)]
        r: u64,
        #[arg(long, default_value_t = 0)]
        s: u64,
        #[arg(long = "H", default_value = "1")]
        h: String,
    },
    /// Facings of the Newton polytopes of a tuple (objective first, with the origin)
    Facings {
        /// polynomials separated by ';' (or @file)
        #[arg(long, allow_hyphen_values = true)]
        polys: String,
        #[arg(long, value_delimiter = ',', required = true)]
        vars: Vec<String>,
        #[arg(long, default_value_t = DEFAULT_AMBIENT_CAP)]
        cap: usize,
    },
}

fn read_text(arg: &str) -> Result<String> {
    match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path)
            .map(|s| s.trim().to_string())
            .map_err(|e| Error::InvalidInput(format!("cannot read {}: {}", path, e))),
        None => Ok(arg.to_string()),
    }
}

fn poly(arg: &str, vars: &[String]) -> Result<MPoly> {
    parse_poly(&read_text(arg)?, vars)
}

fn poly_list(arg: &str, vars: &[String]) -> Result<Vec<MPoly>> {
    read_text(arg)?
        .split(|c| c == ';' || c == '\n')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| parse_poly(s, vars))
        .collect()
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

/// Result payload and configuration echo for one command.
fn execute(cmd: &Command) -> Result<(&'static str, Value, Value)> {
    Ok(match cmd {
        Command::Acv(p) => {
            let f = poly(&p.poly, &p.vars)?;
            let rep = asymptotic_critical_values(&f, p.confidence, p.seed)?;
            let cfg = json!({"poly": f.to_string_with(&p.vars), "vars": p.vars, "seed": p.seed, "confidence": p.confidence});
            ("acv", cfg, to_value(&rep))
        }
        Command::Infimum { p, budget, rounds, growth, precision } => {
            let f = poly(&p.poly, &p.vars)?;
            let b = SearchBudget { starts: *budget, growth: *growth, rounds: *rounds };
            let rep = infimum(&f, p.confidence, p.seed, b, *precision)?;
            let cfg = json!({
                "poly": f.to_string_with(&p.vars), "vars": p.vars, "seed": p.seed, "confidence": p.confidence,
                "budget": budget, "rounds": rounds, "growth": growth, "precision": precision
            });
            ("infimum", cfg, to_value(&rep))
        }
        Command::Newton { p, constraints } => {
            let f = poly(&p.poly, &p.vars)?;
            let gs = match constraints {
                Some(c) => poly_list(c, &p.vars)?,
                None => vec![],
            };
            let t = PolyTuple::new(f.clone(), gs.clone())?;
            let rep = bifurcation_superset_newton(&t, p.seed)?;
            let cfg = json!({
                "poly": f.to_string_with(&p.vars),
                "constraints": gs.iter().map(|g| g.to_string_with(&p.vars)).collect::<Vec<_>>(),
                "vars": p.vars, "seed": p.seed
            });
            ("newton", cfg, to_value(&rep))
        }
        Command::Constrained { objective, constraints, inequalities, vars, seed, toy: _, scale_cap } => {
            let f = poly(objective, vars)?;
            let eqs = poly_list(constraints, vars)?;
            let ineqs = match inequalities {
                Some(c) => poly_list(c, vars)?,
                None => vec![],
            };
            let rep = constrained_infimum_toy(&f, &eqs, &ineqs, *seed, *scale_cap)?;
            let cfg = json!({
                "objective": f.to_string_with(vars),
                "constraints": eqs.iter().map(|g| g.to_string_with(vars)).collect::<Vec<_>>(),
                "inequalities": ineqs.iter().map(|g| g.to_string_with(vars)).collect::<Vec<_>>(),
                "vars": vars, "seed": seed, "scale_cap": scale_cap
            });
            ("constrained", cfg, to_value(&rep))
        }
        Command::Bounds { scenario, n, d, d1, tau, r, s, h } => {
            let hv: BigInt = h.parse().map_err(|_| Error::InvalidInput(format!("H must be an integer, got `{}`", h)))?;
            if hv < BigInt::from(1) {
                return Err(Error::InvalidInput("H must be at least 1".into()));
            }
            let rep = match scenario {
                Scenario::Attained => attained_bounds(*n, *d, &hv, *r, *s),
                Scenario::Unconstrained => unconstrained_bounds(*n, *d, *tau),
                Scenario::Newton => newton_bounds(*n, *d, *tau),
                Scenario::Constrained => constrained_bounds(*n, *d, d1.unwrap_or(*d), *tau, *r),
            };
            let cfg = json!({
                "scenario": scenario, "n": n, "d": d, "d1": d1.unwrap_or(*d), "tau": tau, "r": r, "s": s, "H": hv.to_string()
            });
            ("bounds", cfg, to_value(&rep))
        }
        Command::Facings { polys, vars, cap } => {
            let ps = poly_list(polys, vars)?;
            let Some((f, gs)) = ps.split_first() else {
                return Err(Error::InvalidInput("no polynomials given".into()));
            };
            let t = PolyTuple::new(f.clone(), gs.to_vec())?;
            let facings = tuple_facings_capped(&t.tuple, *cap)?;
            let tuple: &PolytopeTuple = &t.tuple;
            let cfg = json!({
                "polys": ps.iter().map(|g| g.to_string_with(vars)).collect::<Vec<_>>(), "vars": vars, "cap": cap
            });
            ("facings", cfg, json!({"tuple": tuple, "facings": facings}))
        }
    })
}

/// Runs the command line; returns the exit code and the text for standard output.
pub fn run<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, e.to_string());
        }
    };
    if cli.json_schema {
        return (0, serde_json::to_string_pretty(&schema()).expect("json") + "\n");
    }
    let Some(cmd) = &cli.command else {
        return (2, "error: a subcommand is required (acv, infimum, newton, constrained, bounds, facings)\n".into());
    };
    let start = Instant::now();
    let (name, config, result) = match execute(cmd) {
        Ok(v) => v,
        Err(e) => return (e.exit_code(), format!("error: {}\n", e)),
    };
    let mut doc = serde_json::Map::new();
    doc.insert("schema_version".into(), json!(SCHEMA_VERSION));
    doc.insert("command".into(), json!(name));
    doc.insert("config".into(), config);
    doc.insert("result".into(), result);
    if cli.timing {
        doc.insert("timing".into(), json!({"wall_ms": start.elapsed().as_millis() as u64}));
    }
    let text = serde_json::to_string_pretty(&Value::Object(doc)).expect("json") + "\n";
    if let Some(path) = &cli.output {
        if let Err(e) = std::fs::write(path, &text) {
            return (2, format!("error: cannot write {}: {}\n", path, e));
        }
        return (0, String::new());
    }
    (0, text)
}

/// JSON schema of the output document.
pub fn schema() -> Value {
    let alg = json!({
        "type": "object",
        "required": ["defining", "lo", "hi", "approx"],
        "properties": {
            "defining": {"type": "array", "items": {"type": "string"}},
            "lo": {"$ref": "#/$defs/rational"},
            "hi": {"$ref": "#/$defs/rational"},
            "approx": {"type": "string"}
        }
    });
    let algs = json!({"type": "array", "items": {"$ref": "#/$defs/algebraic"}});
    let upoly = json!({"type": "array", "items": {"$ref": "#/$defs/integer"}});
    let results = json!({
        "acv": {
            "type": "object",
            "required": ["nvars", "degree", "seed", "confidence", "attempts", "combos", "blocks", "h", "degree_bound", "asymptotic", "k0", "rabier_superset", "failures"],
            "properties": {
                "h": {"$ref": "#/$defs/upoly"},
                "degree_bound": {"$ref": "#/$defs/integer"},
                "asymptotic": {"$ref": "#/$defs/algebraics"},
                "rabier_superset": {"$ref": "#/$defs/algebraics"},
                "k0": {"type": "object", "required": ["values", "polynomial", "degenerate_resultant", "exact", "no_critical_points"]}
            }
        },
        "infimum": {
            "type": "object",
            "required": ["status", "value", "attained", "attainment_witness", "unbounded_witness", "candidates", "critical_values", "fiber_tests", "seed", "budget", "precision", "notes"],
            "properties": {
                "status": {"enum": ["finite", "unbounded-below", "constant"]},
                "value": {"anyOf": [{"type": "null"}, {"$ref": "#/$defs/algebraic"}]},
                "attained": {"type": "boolean"},
                "candidates": {"$ref": "#/$defs/algebraics"}
            }
        },
        "newton": {
            "type": "object",
            "required": ["facings", "origin_value", "superset", "seed", "disclaimer"],
            "properties": {"superset": {"$ref": "#/$defs/algebraics"}, "origin_value": {"$ref": "#/$defs/algebraic"}}
        },
        "constrained": {
            "type": "object",
            "required": ["nvars", "equalities", "inequalities", "seed", "scale_cap", "active_sets", "candidates", "sublevel_tests", "status", "value", "degree_ceiling", "max_degree", "bounds", "notes"],
            "properties": {
                "status": {"enum": ["finite", "unbounded-below", "undetermined", "bounds-only"]},
                "candidates": {"$ref": "#/$defs/algebraics"},
                "degree_ceiling": {"$ref": "#/$defs/integer"}
            }
        },
        "bounds": {
            "type": "object",
            "required": ["scenario", "degree_bound", "eta", "entries", "notes"],
            "properties": {
                "scenario": {"enum": ["attained", "unconstrained", "newton", "constrained"]},
                "degree_bound": {"anyOf": [{"type": "null"}, {"$ref": "#/$defs/integer"}]},
                "eta": {"anyOf": [{"type": "null"}, {"$ref": "#/$defs/rational"}]},
                "entries": {"type": "array", "items": {
                    "type": "object",
                    "required": ["name", "value", "formula", "asymptotic"],
                    "properties": {"value": {"$ref": "#/$defs/rational"}, "asymptotic": {"type": "boolean"}}
                }}
            }
        },
        "facings": {
            "type": "object",
            "required": ["tuple", "facings"],
            "properties": {"facings": {"type": "array", "items": {
                "type": "object",
                "required": ["indices", "faces", "normals", "dimension", "important", "origin"]
            }}}
        }
    });
    let one_of: Vec<Value> = ["acv", "infimum", "newton", "constrained", "bounds", "facings"]
        .iter()
        .map(|c| {
            json!({
                "properties": {"command": {"const": c}, "result": {"$ref": format!("#/$defs/result_{}", c)}}
            })
        })
        .collect();
    let mut defs = serde_json::Map::new();
    defs.insert("rational".into(), json!({"type": "string", "pattern": "^-?[0-9]+/[0-9]+$"}));
    defs.insert("integer".into(), json!({"type": "string", "pattern": "^-?[0-9]+$"}));
    defs.insert("algebraic".into(), alg);
    defs.insert("algebraics".into(), algs);
    defs.insert("upoly".into(), upoly);
    if let Value::Object(m) = results {
        for (k, v) in m {
            defs.insert(format!("result_{}", k), v);
        }
    }
    json!({
        "$schema": "https://json-schema.org/draft/2020-12/schema",
        "title": "gcv output",
        "type": "object",
        "required": ["schema_version", "command", "config", "result"],
        "properties": {
            "schema_version": {"const": SCHEMA_VERSION},
            "command": {"enum": ["acv", "infimum", "newton", "constrained", "bounds", "facings"]},
            "config": {"type": "object"},
            "result": {"type": "object"},
            "timing": {"type": "object", "required": ["wall_ms"]}
        },
        "oneOf": one_of,
        "$defs": Value::Object(defs)
    })
}
