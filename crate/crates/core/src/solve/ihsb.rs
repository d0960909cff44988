//! Polynomial procedure for IHS-B− languages.
//!
//! Each relation is compiled into positive units, implications and
//! negative clauses. Starting from a single 1→0 flip, a negative clause can
//! never become false, a falsified unit kills the start, and a falsified
//! implication `x_i → x_j` can only be repaired by also zeroing `x_i`. So
//! every start has exactly one candidate and no branching happens.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::{require, search_from_ones, SolveConfig};
use crate::classify::{clause_solutions, entailed_ihsb_clauses, is_ihsb_minus, Clause};
use crate::decision::{Algorithm, Decision};
use crate::error::{Error, Result};
use crate::formula::LsInstance;
use crate::relation::Relation;

/// Clause form of one relation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IhsbClauses {
    pub relation: String,
    pub arity: usize,
    pub clauses: Vec<Clause>,
}

/// Expresses `r` by IHS-B− clauses over its coordinates. Entailed clauses
/// are dropped greedily while the solution set stays equal to `r`.
pub fn ihsb_compile(r: &Relation) -> Result<IhsbClauses> {
    if !is_ihsb_minus(r) {
        return Err(Error::Precondition(format!("relation {} is not IHS-B-", r.name())));
    }
    let mut clauses = entailed_ihsb_clauses(r);
    let mut i = 0;
    while i < clauses.len() {
        let removed = clauses.remove(i);
        if clause_solutions(r.arity(), &clauses) != r.tuples() {
            clauses.insert(i, removed);
            i += 1;
        }
    }
    Ok(IhsbClauses {
        relation: r.name().to_string(),
        arity: r.arity(),
        clauses,
    })
}

pub fn ihsb_propagate(inst: &LsInstance, cfg: &SolveConfig) -> Result<Decision> {
    require(inst, Algorithm::Ihsb, "IHS-B-", |c| c.ihsb_minus)?;
    let formula = inst.formula();
    let compiled = formula
        .used_relations()
        .into_iter()
        .map(|id| ihsb_compile(&formula.relations[id]))
        .collect::<Result<Vec<_>>>()?;
    ihsb_propagate_compiled(inst, &compiled, cfg)
}

/// Like [`ihsb_propagate`] with precompiled clauses, matched to relations by
/// name. The clauses are trusted to express their relations.
pub fn ihsb_propagate_compiled(
    inst: &LsInstance,
    compiled: &[IhsbClauses],
    cfg: &SolveConfig,
) -> Result<Decision> {
    let formula = inst.formula();
    let mut by_relation: Vec<Option<&[Clause]>> = vec![None; formula.relations.len()];
    for id in formula.used_relations() {
        let r = &formula.relations[id];
        let c = compiled
            .iter()
            .find(|c| c.relation == r.name() && c.arity == r.arity())
            .ok_or_else(|| Error::Precondition(format!("no clauses for relation {}", r.name())))?;
        by_relation[id] = Some(&c.clauses);
    }
    let incidence = formula.incidence();
    let k = inst.k();
    search_from_ones(inst, cfg, Algorithm::Ihsb, |x, counter| {
        let mut current = inst.base().clone();
        let mut flips = 0;
        let mut queue = VecDeque::from([x]);
        current.set(x, false);
        while let Some(v) = queue.pop_front() {
            counter.visit()?;
            flips += 1;
            if flips > k {
                return Ok(None);
            }
            for &ci in &incidence[v] {
                let c = &formula.constraints[ci];
                let arity = c.scope.len();
                let t = formula.project(c, &current);
                for clause in by_relation[c.relation].expect("used relation") {
                    if clause.holds(t, arity) {
                        continue;
                    }
                    match *clause {
                        Clause::Impl(i, _) => {
                            let u = c.scope[i];
                            if current.get(u) {
                                current.set(u, false);
                                queue.push_back(u);
                            }
                        }
                        // Units and negative clauses cannot be repaired by
                        // zeroing more variables.
                        Clause::PosUnit(_) | Clause::Neg(_) => return Ok(None),
                    }
                }
            }
        }
        Ok(Some(current))
    })
}
