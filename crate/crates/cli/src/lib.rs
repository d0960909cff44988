//! Command implementations behind the `lscsp` binary.
//!
//! Each command returns its result as data; printing and exit codes live in
//! `main.rs`.

pub mod bench;
pub mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use lscsp::gadgets::{
    derive_r_prime, gen_domset_reduction, gen_one_in_three_from_vc, gen_vc_ls_from_clique, gen_w1_reduction,
    neq_elimination, Gadget, Graph,
};
use lscsp::io::{read_instance, read_relations};
use lscsp::relation::common;
use lscsp::solve::language_verdict;
use lscsp::{
    brute_force_ls, classify_language, solve, Algorithm, Assignment, Formula, LsInstance, Relation, SolveConfig,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use report::{DecisionReport, RunReport, VerdictReport};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Core(#[from] lscsp::Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("{0}")]
    Usage(String),
    /// The chosen solver and the oracle disagree.
    #[error("solver answered {solver} but the oracle answered {oracle}")]
    Disagreement { solver: lscsp::Answer, oracle: lscsp::Answer },
}

impl CliError {
    pub fn is_budget(&self) -> bool {
        matches!(self, CliError::Core(lscsp::Error::BudgetExceeded { .. }))
    }
}

fn micros(start: Instant) -> u64 {
    start.elapsed().as_micros() as u64
}

/// Reads a file with parse errors prefixed by the path.
fn with_path<T>(path: &Path, r: lscsp::Result<T>) -> Result<T, CliError> {
    r.map_err(|e| match e {
        lscsp::Error::Io(io) => CliError::Usage(format!("{}: {io}", path.display())),
        other => CliError::Usage(format!("{}: {other}", path.display())),
    })
}

/// Classifies every relation declared in a relations (or instance) file.
pub fn cmd_classify(path: &Path, command: Vec<String>) -> Result<RunReport, CliError> {
    let start = Instant::now();
    let relations = with_path(path, read_relations(path))?;
    let verdict = classify_language(&relations)?;
    let refs: Vec<&Relation> = relations.iter().collect();
    Ok(RunReport {
        command,
        verdict: Some(VerdictReport::new(&verdict, &refs)),
        decision: None,
        wall_time_us: micros(start),
        oracle_agreement: None,
    })
}

#[derive(Clone, Debug)]
pub struct SolveOptions {
    pub algorithm: Option<Algorithm>,
    pub budget: u64,
    pub check_oracle: bool,
    pub deterministic: bool,
}

pub fn cmd_solve(path: &Path, opts: &SolveOptions, command: Vec<String>) -> Result<RunReport, CliError> {
    let (inst, _) = with_path(path, read_instance(path))?;
    let start = Instant::now();
    let f = inst.formula();
    let verdict = language_verdict(f);
    let used: Vec<&Relation> = f.used_relations().into_iter().map(|id| &f.relations[id]).collect();
    let cfg = SolveConfig {
        node_budget: opts.budget,
        deterministic: opts.deterministic,
        force_algorithm: opts.algorithm,
    };
    let d = solve(&inst, &cfg)?;
    d.verify(&inst)
        .map_err(|e| CliError::Usage(format!("internal error: invalid decision: {e}")))?;
    let oracle_agreement = if opts.check_oracle {
        let o = brute_force_ls(&inst, opts.budget)?;
        if o.answer != d.answer {
            return Err(CliError::Disagreement {
                solver: d.answer,
                oracle: o.answer,
            });
        }
        Some(true)
    } else {
        None
    };
    Ok(RunReport {
        command,
        verdict: Some(VerdictReport::new(&verdict, &used)),
        decision: Some(DecisionReport::new(&inst, &d)),
        wall_time_us: micros(start),
        oracle_agreement,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenKind {
    CliqueVc,
    W1,
    Domset,
    OneInThree,
}

#[derive(Clone, Debug, Default)]
pub struct GenOptions {
    pub graph: Option<PathBuf>,
    pub x: usize,
    pub t: Option<usize>,
    /// Source instance over `x ∨ y`; generated from `seed` when absent.
    pub source: Option<PathBuf>,
    pub vars: usize,
    pub k: usize,
    pub seed: u64,
    pub r1: Option<String>,
    pub r2: Option<String>,
    pub relation: Option<String>,
    /// Extra relation definitions looked up by name before the built-ins.
    pub relations: Option<PathBuf>,
    pub scale: Option<usize>,
    pub eliminate_neq: bool,
}

/// Built-in relations available by name to `gen`.
pub fn builtin_relation(name: &str) -> Option<Relation> {
    Some(match name {
        "OR" => common::or2(),
        "IMPL" => common::implication(),
        "NEQ" => common::neq(),
        "EQ" => common::eq(),
        "ONE_IN_THREE" => common::one_in_three(),
        "HORN3" => common::horn_core(),
        "NAND2" => common::nand(2),
        "NAND3" => common::nand(3),
        "XOR3_0" => common::parity(3, false),
        "XOR3_1" => common::parity(3, true),
        _ => return None,
    })
}

pub const BUILTIN_NAMES: &str = "OR, IMPL, NEQ, EQ, ONE_IN_THREE, HORN3, NAND2, NAND3, XOR3_0, XOR3_1";

fn lookup_relation(name: &str, opts: &GenOptions) -> Result<Relation, CliError> {
    if let Some(path) = &opts.relations {
        let rels = with_path(path, read_relations(path))?;
        if let Some(r) = rels.into_iter().find(|r| r.name() == name) {
            return Ok(r);
        }
    }
    builtin_relation(name)
        .ok_or_else(|| CliError::Usage(format!("unknown relation {name:?} (built-ins: {BUILTIN_NAMES})")))
}

fn read_graph(opts: &GenOptions) -> Result<Graph, CliError> {
    let path = opts
        .graph
        .as_ref()
        .ok_or_else(|| CliError::Usage("--graph is required".into()))?;
    let text = fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    with_path(path, Graph::parse(&text))
}

/// A random satisfiable instance over `x ∨ y`: each pair is an edge with
/// probability 1/2, and the base covers every edge.
pub fn random_or_source(vars: usize, k: usize, seed: u64) -> Result<LsInstance, CliError> {
    if vars < 2 {
        return Err(CliError::Usage("--vars must be at least 2".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut f = Formula::new();
    let or = f.add_relation(common::or2())?;
    for v in 0..vars {
        f.add_variable(format!("a{v}"))?;
    }
    let mut bits: Vec<bool> = (0..vars).map(|_| rng.random_bool(0.5)).collect();
    let mut any = false;
    for u in 0..vars {
        for v in u + 1..vars {
            if rng.random_bool(0.5) {
                f.add_constraint(or, vec![u, v])?;
                if !bits[u] && !bits[v] {
                    bits[if rng.random_bool(0.5) { u } else { v }] = true;
                }
                any = true;
            }
        }
    }
    if !any {
        f.add_constraint(or, vec![0, 1])?;
        bits[0] = true;
    }
    Ok(LsInstance::new(f, Assignment::new(bits), k)?)
}

fn source(opts: &GenOptions) -> Result<LsInstance, CliError> {
    match &opts.source {
        Some(path) => Ok(with_path(path, read_instance(path))?.0),
        None => random_or_source(opts.vars, opts.k, opts.seed),
    }
}

fn need_t(opts: &GenOptions) -> Result<usize, CliError> {
    opts.t.ok_or_else(|| CliError::Usage("--t is required".into()))
}

pub fn cmd_gen(kind: GenKind, opts: &GenOptions) -> Result<Gadget, CliError> {
    let g = match kind {
        GenKind::CliqueVc => {
            let t = need_t(opts)?;
            gen_vc_ls_from_clique(&read_graph(opts)?, opts.x, t)?
        }
        GenKind::Domset => {
            let t = need_t(opts)?;
            let r = lookup_relation(opts.relation.as_deref().unwrap_or("HORN3"), opts)?;
            let rp = derive_r_prime(&r)?;
            gen_domset_reduction(&read_graph(opts)?, t, &rp)?
        }
        GenKind::W1 => {
            let r1 = lookup_relation(opts.r1.as_deref().unwrap_or("OR"), opts)?;
            let r2 = lookup_relation(opts.r2.as_deref().unwrap_or("OR"), opts)?;
            gen_w1_reduction(&r1, &r2, &source(opts)?)?
        }
        GenKind::OneInThree => {
            let mut g = gen_one_in_three_from_vc(&source(opts)?, opts.scale)?;
            if opts.eliminate_neq {
                g.instance = neq_elimination(&g.instance)?;
                g.metadata["params"]["eliminate_neq"] = json!(true);
            }
            g
        }
    };
    Ok(g)
}
