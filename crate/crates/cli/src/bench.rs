//! Node-count tables for the bounded search tree algorithms.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use lscsp::families::{horn_cycle, planted_one_in_three};
use lscsp::solve::{bst_node_bound, flip_sep_bst, horn_bst};
use lscsp::{Answer, LsInstance, SolveConfig};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Horn,
    Flipsep,
    All,
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "horn" => Ok(Suite::Horn),
            "flipsep" => Ok(Suite::Flipsep),
            "all" => Ok(Suite::All),
            _ => Err(format!("unknown suite {s:?} (expected horn, flipsep or all)")),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Horn => "horn",
            Suite::Flipsep => "flipsep",
            Suite::All => "all",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BenchRow {
    pub family: String,
    pub n: usize,
    pub k: usize,
    pub r_max: usize,
    pub answer: Answer,
    pub nodes: u64,
    pub bound: u64,
    pub within_bound: bool,
    pub wall_time_us: u64,
}

#[derive(Clone, Debug)]
pub struct BenchParams {
    pub suite: Suite,
    pub kmax: usize,
    pub sizes: Vec<usize>,
    pub seed: u64,
}

fn row(family: &str, inst: &LsInstance, decide: impl Fn(&LsInstance) -> lscsp::Result<lscsp::Decision>) -> Result<BenchRow, CliError> {
    let start = Instant::now();
    let d = decide(inst)?;
    let wall_time_us = start.elapsed().as_micros() as u64;
    let r_max = inst.formula().max_arity();
    let bound = bst_node_bound(inst.num_variables(), r_max, inst.k());
    Ok(BenchRow {
        family: family.to_owned(),
        n: inst.num_variables(),
        k: inst.k(),
        r_max,
        answer: d.answer,
        nodes: d.stats.nodes,
        bound,
        within_bound: d.stats.nodes <= bound,
        wall_time_us,
    })
}

/// Horn chains (`horn_cycle`) and planted 1-in-3 instances for each size
/// and every `k` in `1..=kmax`. The search runs with an unlimited budget.
pub fn run_bench(p: &BenchParams) -> Result<Vec<BenchRow>, CliError> {
    let cfg = SolveConfig {
        node_budget: u64::MAX,
        ..SolveConfig::default()
    };
    let mut rows = Vec::new();
    if matches!(p.suite, Suite::Horn | Suite::All) {
        for &n in &p.sizes {
            for k in 1..=p.kmax {
                rows.push(row("horn-chain", &horn_cycle(n.max(3), k), |i| horn_bst(i, &cfg))?);
            }
        }
    }
    if matches!(p.suite, Suite::Flipsep | Suite::All) {
        for &n in &p.sizes {
            for k in 1..=p.kmax {
                let mut rng = ChaCha8Rng::seed_from_u64(p.seed ^ ((n as u64) << 32) ^ k as u64);
                let inst = planted_one_in_three(&mut rng, n.max(3), n.max(3), k);
                rows.push(row("planted-1in3", &inst, |i| flip_sep_bst(i, &cfg))?);
            }
        }
    }
    Ok(rows)
}

pub fn to_csv(rows: &[BenchRow]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

pub fn from_csv(text: &str) -> Result<Vec<BenchRow>, CliError> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    Ok(r.deserialize().collect::<Result<_, _>>()?)
}

pub fn to_text(rows: &[BenchRow]) -> String {
    let mut out = format!(
        "{:<14} {:>5} {:>3} {:>5} {:>4} {:>10} {:>12} {:>6} {:>10}\n",
        "family", "n", "k", "r_max", "ans", "nodes", "bound", "ok", "time_us"
    );
    for r in rows {
        out += &format!(
            "{:<14} {:>5} {:>3} {:>5} {:>4} {:>10} {:>12} {:>6} {:>10}\n",
            r.family, r.n, r.k, r.r_max, r.answer.to_string(), r.nodes, r.bound, r.within_bound, r.wall_time_us
        );
    }
    out
}
