//! Bounded search tree for flip-separable languages.
//!
//! Take a lighter solution at minimum distance and a 1→0 variable `x` it
//! flips. Any violated constraint under the partial flip set has an
//! unflipped scope variable that the solution flips, so branching over the
//! unflipped scope variables finds it. Flip separability guarantees that
//! no proper subset of the solution's flip set already satisfies the
//! formula, so a satisfying node that is not lighter is a dead end.

use super::{distinct_scope, require, search_from_ones, Counter, SolveConfig};
use crate::decision::{Algorithm, Decision};
use crate::error::Result;
use crate::formula::{Assignment, LsInstance};

pub fn flip_sep_bst(inst: &LsInstance, cfg: &SolveConfig) -> Result<Decision> {
    require(inst, Algorithm::FlipSep, "flip separable", |c| c.flip_separable)?;
    let search = Search {
        inst,
        base_weight: inst.base().weight(),
    };
    search_from_ones(inst, cfg, Algorithm::FlipSep, |x, counter| {
        let mut current = inst.base().clone();
        let mut flipped = vec![false; inst.num_variables()];
        current.flip(x);
        flipped[x] = true;
        if search.descend(&mut current, &mut flipped, 1, counter)? {
            Ok(Some(current))
        } else {
            Ok(None)
        }
    })
}

struct Search<'a> {
    inst: &'a LsInstance,
    base_weight: usize,
}

impl Search<'_> {
    fn descend(
        &self,
        current: &mut Assignment,
        flipped: &mut [bool],
        flips: usize,
        counter: &Counter,
    ) -> Result<bool> {
        counter.visit()?;
        let formula = self.inst.formula();
        let mut violated = formula
            .constraints
            .iter()
            .filter(|c| !formula.constraint_holds(c, current))
            .peekable();
        if violated.peek().is_none() {
            return Ok(current.weight() < self.base_weight);
        }
        if flips == self.inst.k() {
            return Ok(false);
        }
        let Some(candidates) = violated
            .map(|c| -> Vec<_> {
                distinct_scope(&c.scope)
                    .into_iter()
                    .filter(|&v| !flipped[v])
                    .collect()
            })
            .find(|cand| !cand.is_empty())
        else {
            return Ok(false);
        };
        if candidates.len() > 1 {
            counter.branch();
        }
        for v in candidates {
            current.flip(v);
            flipped[v] = true;
            if self.descend(current, flipped, flips + 1, counter)? {
                return Ok(true);
            }
            flipped[v] = false;
            current.flip(v);
        }
        Ok(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decision::Answer;
    use crate::error::Error;
    use crate::oracle::{brute_force_ls, DEFAULT_ORACLE_BUDGET};
    use crate::relation::common;
    use crate::solve::bst_node_bound;
    use crate::solve::tests::build;

    #[test]
    fn one_in_three_shift_is_weight_neutral() {
        let inst = build(&[common::one_in_three()], 3, &[(0, &[0, 1, 2])], &[0, 1, 0], 2);
        let d = flip_sep_bst(&inst, &SolveConfig::default()).unwrap();
        assert_eq!(d.answer, Answer::No);
    }

    #[test]
    fn shared_variable_releases_two_ones() {
        // x1 sits in both triples; moving the one onto x1 frees x2 and x4.
        let cons: [(usize, &[usize]); 2] = [(0, &[0, 1, 2]), (0, &[0, 3, 4])];
        let inst = build(&[common::one_in_three()], 5, &cons, &[0, 1, 0, 1, 0], 3);
        let d = flip_sep_bst(&inst, &SolveConfig::default()).unwrap();
        assert_eq!(d.witness, Some(Assignment::from_bits(&[1, 0, 0, 0, 0])));
        d.verify(&inst).unwrap();
        let inst = inst.with_k(2);
        assert_eq!(flip_sep_bst(&inst, &SolveConfig::default()).unwrap().answer, Answer::No);
    }

    #[test]
    fn agrees_with_oracle_on_parity() {
        let x = common::parity(3, false);
        let cons: [(usize, &[usize]); 3] = [(0, &[0, 1, 2]), (0, &[2, 3, 4]), (0, &[0, 4, 5])];
        let base = [1, 1, 0, 1, 1, 0];
        for k in 0..=6 {
            let inst = build(std::slice::from_ref(&x), 6, &cons, &base, k);
            let d = flip_sep_bst(&inst, &SolveConfig::default()).unwrap();
            let o = brute_force_ls(&inst, DEFAULT_ORACLE_BUDGET).unwrap();
            assert_eq!(d.answer, o.answer, "k = {k}");
            assert!(d.stats.nodes <= bst_node_bound(6, 3, k));
        }
    }

    #[test]
    fn rejects_non_separable() {
        let inst = build(&[common::or2()], 2, &[(0, &[0, 1])], &[1, 1], 1);
        assert!(matches!(
            flip_sep_bst(&inst, &SolveConfig::default()),
            Err(Error::WrongAlgorithm { .. })
        ));
    }
}
