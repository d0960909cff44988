//! Bounded search tree for min-closed (Horn) languages.
//!
//! Because the language is min-closed, `min(f, f')` is a solution whenever
//! `f'` is, and it is no farther from `f`; so only 1→0 flips are needed.
//! Each node flips one 1-valued variable of the lowest-index violated
//! constraint, which bounds the fan-out by the maximum arity and the depth
//! by `k`.

use super::{distinct_scope, require, search_from_ones, Counter, SolveConfig};
use crate::decision::{Algorithm, Decision};
use crate::error::Result;
use crate::formula::{Assignment, Formula, LsInstance};

pub fn horn_bst(inst: &LsInstance, cfg: &SolveConfig) -> Result<Decision> {
    require(inst, Algorithm::Horn, "Horn", |c| c.horn)?;
    let formula = inst.formula();
    search_from_ones(inst, cfg, Algorithm::Horn, |x, counter| {
        let mut current = inst.base().clone();
        current.set(x, false);
        if descend(formula, &mut current, 1, inst.k(), counter)? {
            Ok(Some(current))
        } else {
            Ok(None)
        }
    })
}

fn descend(
    formula: &Formula,
    current: &mut Assignment,
    flips: usize,
    k: usize,
    counter: &Counter,
) -> Result<bool> {
    counter.visit()?;
    let Some(ci) = formula.first_violated(current) else {
        // Only 1→0 flips happened, so this is strictly lighter.
        return Ok(true);
    };
    if flips == k {
        return Ok(false);
    }
    let candidates: Vec<_> = distinct_scope(&formula.constraints[ci].scope)
        .into_iter()
        .filter(|&v| current.get(v))
        .collect();
    if candidates.len() > 1 {
        counter.branch();
    }
    for v in candidates {
        current.set(v, false);
        if descend(formula, current, flips + 1, k, counter)? {
            return Ok(true);
        }
        current.set(v, true);
    }
    Ok(false)
}
