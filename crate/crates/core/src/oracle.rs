//! Exhaustive reference decision procedure.
//!
//! Enumerates flip sets of size `0..=k` in canonical order (by size, then
//! lexicographically by sorted variable index) and returns the first one
//! that yields a strictly lighter satisfying assignment. The witness is
//! therefore deterministic and of minimum distance.
//!
//! Variables are decided in index order, so once the search moves past the
//! last variable of a constraint that constraint is fixed; a violated fixed
//! constraint cuts the branch. This never skips a solution.

use crate::decision::{Algorithm, Decision, SearchStats};
use crate::error::{Error, Result};
use crate::formula::{Assignment, LsInstance, VarId};

/// Default cap on the number of flip sets the oracle will test.
pub const DEFAULT_ORACLE_BUDGET: u64 = 10_000_000;

/// Decides `inst` by enumeration, testing at most `budget` flip sets.
///
/// Flip sets that cannot lower the weight are skipped without being tested
/// or counted; skipping never changes which set is found first.
pub fn brute_force_ls(inst: &LsInstance, budget: u64) -> Result<Decision> {
    let formula = inst.formula();
    let n = inst.num_variables();
    let mut search = Enumeration {
        inst,
        incidence: formula.incidence(),
        by_last: constraints_by_last_variable(inst),
        current: inst.base().clone(),
        chosen: Vec::with_capacity(inst.k()),
        stats: SearchStats::new(Algorithm::Brute),
        budget,
    };
    for size in 1..=inst.k().min(n) {
        if search.choose(0, size, 0, 0)? {
            let witness = search.current.clone();
            return Ok(Decision::yes(witness, search.stats));
        }
    }
    Ok(Decision::no(search.stats))
}

/// `out[v]` lists the constraints whose highest scope variable is `v`.
fn constraints_by_last_variable(inst: &LsInstance) -> Vec<Vec<usize>> {
    let formula = inst.formula();
    let mut out = vec![Vec::new(); inst.num_variables()];
    for (ci, c) in formula.constraints.iter().enumerate() {
        if let Some(&last) = c.scope.iter().max() {
            out[last].push(ci);
        }
    }
    out
}

struct Enumeration<'a> {
    inst: &'a LsInstance,
    incidence: Vec<Vec<usize>>,
    by_last: Vec<Vec<usize>>,
    current: Assignment,
    chosen: Vec<VarId>,
    stats: SearchStats,
    budget: u64,
}

impl Enumeration<'_> {
    /// Extends `chosen` with `size - chosen.len()` more variables from
    /// `start..`. `down`/`up` count 1→0 and 0→1 flips so far. On success the
    /// flipped assignment is left in `current`.
    fn choose(&mut self, start: VarId, size: usize, down: usize, up: usize) -> Result<bool> {
        let remaining = size - self.chosen.len();
        if remaining == 0 {
            return self.test();
        }
        if down + remaining <= up {
            return Ok(false);
        }
        let n = self.current.len();
        for v in start..=(n - remaining) {
            // Skipping v - 1 fixes it at its base value.
            if v > start && !self.fixed_hold(v - 1) {
                break;
            }
            let was_one = self.current.get(v);
            self.current.flip(v);
            self.chosen.push(v);
            if self.fixed_hold(v) {
                let (d, u) = if was_one { (down + 1, up) } else { (down, up + 1) };
                if self.choose(v + 1, size, d, u)? {
                    return Ok(true);
                }
            }
            self.chosen.pop();
            self.current.flip(v);
        }
        Ok(false)
    }

    /// Whether the constraints ending at `v` hold in `current`.
    fn fixed_hold(&self, v: VarId) -> bool {
        let formula = self.inst.formula();
        self.by_last[v]
            .iter()
            .all(|&ci| formula.constraint_holds(&formula.constraints[ci], &self.current))
    }

    fn test(&mut self) -> Result<bool> {
        let base = self.inst.base();
        let down = self.chosen.iter().filter(|&&v| base.get(v)).count();
        if 2 * down <= self.chosen.len() {
            return Ok(false);
        }
        self.stats.nodes += 1;
        if self.stats.nodes > self.budget {
            return Err(Error::BudgetExceeded {
                budget: self.budget,
            });
        }
        // The base satisfies everything, so only constraints touching a
        // flipped variable can fail.
        let formula = self.inst.formula();
        let ok = self.chosen.iter().all(|&v| {
            self.incidence[v]
                .iter()
                .all(|&ci| formula.constraint_holds(&formula.constraints[ci], &self.current))
        });
        Ok(ok)
    }
}
