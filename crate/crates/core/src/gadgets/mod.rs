//! Hardness reductions as instance generators.
//!
//! Every generator returns a [`Gadget`]: a valid LS instance plus a JSON
//! metadata block naming the generator, its parameters and, when it is
//! cheap to determine from the source, the expected answer.

mod clique;
mod graph;
mod horn_hard;
mod one_in_three;
mod w1;

use serde_json::{json, Value};

use crate::decision::Answer;
use crate::error::{Error, Result};
use crate::formula::{Assignment, Formula, LsInstance, VarId};
use crate::oracle::brute_force_ls;
use crate::relation::{common, Relation};

pub use clique::gen_vc_ls_from_clique;
pub use graph::Graph;
pub use horn_hard::{
    derive_implication, derive_r_prime, gen_domset_reduction, gen_pad_rprime_to_r, ImplicationPattern, RPrime, Role,
};
pub use one_in_three::{gen_one_in_three_from_vc, neq_elimination, one_in_three_scale, safe_one_in_three_scale};
pub use w1::{find_non_flipsep_witness, find_non_horn_witness, gen_w1_reduction, Block, NonHornWitness, W1Case};

/// Oracle budget used to fill in `expected_answer` from a source instance.
const EXPECTED_BUDGET: u64 = 1_000_000;

#[derive(Clone, Debug)]
pub struct Gadget {
    pub instance: LsInstance,
    pub metadata: Value,
}

impl Gadget {
    fn new(instance: LsInstance, generator: &str, params: Value, expected: Option<Answer>) -> Self {
        Self {
            instance,
            metadata: json!({
                "generator": generator,
                "params": params,
                "expected_answer": expected,
            }),
        }
    }

    /// The `expected_answer` recorded in the metadata, if any.
    pub fn expected(&self) -> Option<Answer> {
        serde_json::from_value(self.metadata["expected_answer"].clone()).ok().flatten()
    }
}

/// Formula builder that hands out variables by name.
struct Builder {
    formula: Formula,
    base: Vec<bool>,
}

impl Builder {
    fn new() -> Self {
        Self {
            formula: Formula::new(),
            base: Vec::new(),
        }
    }

    fn relation(&mut self, r: Relation) -> Result<usize> {
        self.formula.add_relation(r)
    }

    fn var(&mut self, name: impl Into<String>, value: bool) -> Result<VarId> {
        let id = self.formula.add_variable(name)?;
        self.base.push(value);
        Ok(id)
    }

    fn constraint(&mut self, rel: usize, scope: Vec<VarId>) -> Result<()> {
        self.formula.add_constraint(rel, scope)
    }

    fn finish(self, k: usize) -> Result<LsInstance> {
        LsInstance::new(self.formula, Assignment::new(self.base), k)
    }
}

/// Source answer by the oracle, if it finishes within a small budget.
fn expected_from(src: &LsInstance) -> Option<Answer> {
    brute_force_ls(src, EXPECTED_BUDGET).ok().map(|d| d.answer)
}

/// Fails unless every constraint of `src` is `x ∨ y`.
fn require_or_language(src: &LsInstance) -> Result<()> {
    let or = common::or2();
    let f = src.formula();
    for id in f.used_relations() {
        if !f.relations[id].same_tuples(&or) {
            return Err(Error::Precondition(format!(
                "source relation {} is not x ∨ y",
                f.relations[id].name()
            )));
        }
    }
    Ok(())
}
