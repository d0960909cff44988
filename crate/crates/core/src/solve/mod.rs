//! Algorithm dispatch for LS instances.
//!
//! Precedence follows the class inclusions: IHS-B− before Horn and width-2
//! affine before flip separable, since the polynomial procedures are the
//! cheaper special cases. Anything else falls back to the exhaustive oracle.

mod flipsep;
mod horn;
mod ihsb;
mod width2;

use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;

use crate::classify::{classify_language, LanguageVerdict, RelationClass};
use crate::decision::{Algorithm, Decision, SearchStats};
use crate::error::{Error, Result};
use crate::formula::{Assignment, Formula, LsInstance, VarId};
use crate::oracle::brute_force_ls;

pub use flipsep::flip_sep_bst;
pub use horn::horn_bst;
pub use ihsb::{ihsb_compile, ihsb_propagate, ihsb_propagate_compiled, IhsbClauses};
pub use width2::width2_components;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveConfig {
    /// Maximum number of search nodes (or oracle subsets) before giving up.
    pub node_budget: u64,
    /// Explore start variables sequentially in index order, so the witness
    /// is the canonical one. Otherwise start variables run in parallel.
    pub deterministic: bool,
    /// Skip the dispatcher and run this algorithm.
    pub force_algorithm: Option<Algorithm>,
}

impl Default for SolveConfig {
    fn default() -> Self {
        Self {
            node_budget: crate::oracle::DEFAULT_ORACLE_BUDGET,
            deterministic: true,
            force_algorithm: None,
        }
    }
}

impl SolveConfig {
    pub fn with_algorithm(algorithm: Algorithm) -> Self {
        Self {
            force_algorithm: Some(algorithm),
            ..Self::default()
        }
    }
}

/// Verdict over the relations that constraints actually use. A formula
/// without constraints gets the vacuous verdict.
pub fn language_verdict(formula: &Formula) -> LanguageVerdict {
    let used = formula.used_relations();
    if used.is_empty() {
        return LanguageVerdict::vacuous();
    }
    classify_language(used.iter().map(|&id| &formula.relations[id])).expect("non-empty language")
}

/// Decides `inst` with the algorithm its language admits.
pub fn solve(inst: &LsInstance, cfg: &SolveConfig) -> Result<Decision> {
    let algorithm = match cfg.force_algorithm {
        Some(a) => a,
        None => language_verdict(inst.formula()).algorithm,
    };
    match algorithm {
        Algorithm::Ihsb => ihsb_propagate(inst, cfg),
        Algorithm::Width2 => width2_components(inst, cfg),
        Algorithm::Horn => horn_bst(inst, cfg),
        Algorithm::FlipSep => flip_sep_bst(inst, cfg),
        Algorithm::Brute => brute_force_ls(inst, cfg.node_budget),
    }
}

/// Fails with `WrongAlgorithm` unless every used relation passes `test`.
pub(crate) fn require(
    inst: &LsInstance,
    algorithm: Algorithm,
    class: &str,
    test: fn(&RelationClass) -> bool,
) -> Result<()> {
    let verdict = language_verdict(inst.formula());
    if let Some((name, _)) = verdict.relations.iter().find(|(_, c)| !test(c)) {
        return Err(Error::WrongAlgorithm {
            algorithm,
            reason: format!("relation {name} is not {class}"),
        });
    }
    Ok(())
}

/// Shared node accounting; atomic so start variables can run in parallel.
pub(crate) struct Counter {
    nodes: AtomicU64,
    branch_points: AtomicU64,
    budget: u64,
}

impl Counter {
    fn new(budget: u64) -> Self {
        Self {
            nodes: AtomicU64::new(0),
            branch_points: AtomicU64::new(0),
            budget,
        }
    }

    pub(crate) fn visit(&self) -> Result<()> {
        let n = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if n > self.budget {
            return Err(Error::BudgetExceeded {
                budget: self.budget,
            });
        }
        Ok(())
    }

    pub(crate) fn branch(&self) {
        self.branch_points.fetch_add(1, Ordering::Relaxed);
    }

    fn stats(&self, algorithm: Algorithm) -> SearchStats {
        SearchStats {
            algorithm,
            nodes: self.nodes.load(Ordering::Relaxed),
            branch_points: self.branch_points.load(Ordering::Relaxed),
        }
    }
}

/// Runs `search` from every variable the base sets to 1, in index order
/// (or in parallel when `cfg.deterministic` is off), and reports the first
/// solution found.
pub(crate) fn search_from_ones<F>(
    inst: &LsInstance,
    cfg: &SolveConfig,
    algorithm: Algorithm,
    search: F,
) -> Result<Decision>
where
    F: Fn(VarId, &Counter) -> Result<Option<Assignment>> + Sync,
{
    let counter = Counter::new(cfg.node_budget);
    if inst.k() == 0 {
        return Ok(Decision::no(counter.stats(algorithm)));
    }
    let base = inst.base();
    let starts: Vec<VarId> = (0..inst.num_variables()).filter(|&v| base.get(v)).collect();
    let found = if cfg.deterministic {
        let mut found = None;
        for &x in &starts {
            if let Some(w) = search(x, &counter)? {
                found = Some(w);
                break;
            }
        }
        found
    } else {
        starts
            .par_iter()
            .find_map_any(|&x| search(x, &counter).transpose())
            .transpose()?
    };
    let stats = counter.stats(algorithm);
    Ok(match found {
        Some(w) => Decision::yes(w, stats),
        None => Decision::no(stats),
    })
}

/// Scope variables in first-occurrence order, without repeats.
pub(crate) fn distinct_scope(scope: &[VarId]) -> Vec<VarId> {
    let mut out = Vec::with_capacity(scope.len());
    for &v in scope {
        if !out.contains(&v) {
            out.push(v);
        }
    }
    out
}

/// `n · Σ_{i=0..k} r^i`, the search-tree size bound for the bounded search
/// tree algorithms; saturates instead of overflowing.
pub fn bst_node_bound(n: usize, r_max: usize, k: usize) -> u64 {
    let r = r_max.max(1) as u64;
    let mut sum: u64 = 0;
    let mut term: u64 = 1;
    for _ in 0..=k {
        sum = sum.saturating_add(term);
        term = term.saturating_mul(r);
    }
    sum.saturating_mul(n as u64)
}
