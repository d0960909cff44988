use serde::{Deserialize, Serialize};
use serde_json::json;

use super::{expected_from, require_or_language, Builder, Gadget};
use crate::classify::{flip_witness, horn_witness, FlipWitness};
use crate::error::{Error, Result};
use crate::formula::{LsInstance, VarId};
use crate::relation::{coord, Arg, Relation, Tuple};

/// Which argument of `R′1(x, y, w0, w1)` a coordinate of `R1` receives.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Block {
    X,
    Y,
    W0,
    W1,
}

impl Block {
    fn index(self) -> usize {
        self as usize
    }
}

/// Identification of the coordinates of a non-Horn relation into four
/// blocks such that the 4-ary relation `R′1` contains `0101` and `1001` but
/// not `0001`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonHornWitness {
    /// `a`, `b` in `R1` with `min(a, b)` missing.
    pub a: Tuple,
    pub b: Tuple,
    pub blocks: Vec<Block>,
}

impl NonHornWitness {
    /// 1-based coordinates of `R1` in `block`.
    pub fn coords(&self, block: Block) -> Vec<usize> {
        (0..self.blocks.len()).filter(|&i| self.blocks[i] == block).map(|i| i + 1).collect()
    }

    /// `R′1(x, y, w0, w1)`. A block without coordinates leaves its
    /// argument unconstrained.
    pub fn r1_prime(&self, r1: &Relation) -> Relation {
        let pattern: Vec<Arg> = self.blocks.iter().map(|b| Arg::Var(b.index())).collect();
        r1.substitute(format!("{}'", r1.name()), 4, &pattern).expect("blocks match arity")
    }

    /// Scope of the `R1` constraint that realizes `R′1(args)`.
    fn expand(&self, args: [VarId; 4]) -> Vec<VarId> {
        self.blocks.iter().map(|b| args[b.index()]).collect()
    }
}

pub fn find_non_horn_witness(r1: &Relation) -> Result<NonHornWitness> {
    let (a, b) = horn_witness(r1)
        .ok_or_else(|| Error::Precondition(format!("relation {} is Horn", r1.name())))?;
    let n = r1.arity();
    let blocks = (0..n)
        .map(|i| match (coord(a, i, n), coord(b, i, n)) {
            (true, false) => Block::X,
            (false, true) => Block::Y,
            (false, false) => Block::W0,
            (true, true) => Block::W1,
        })
        .collect();
    Ok(NonHornWitness { a, b, blocks })
}

pub fn find_non_flipsep_witness(r2: &Relation) -> Result<FlipWitness> {
    flip_witness(r2).ok_or_else(|| Error::Precondition(format!("relation {} is flip separable", r2.name())))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum W1Case {
    /// `R′1(x, y, 0, 1)` is `x ∨ y`.
    One,
    /// `R′1(x, y, 0, 1)` is `x ≠ y`; the OR constraints come from `R2`.
    Two,
}

/// Reduces LS over `{x ∨ y}` to LS over `{R1, R2}` for a non-Horn `R1` and
/// a non-flip-separable `R2`.
///
/// Constants are simulated by `q0_j`, `q1_j` for `j = 1..=k+1` (Case 1) or
/// `j = 1..=3k+1` (Case 2), tied together by `R′1(q1_a, q0_b, q0_b, q1_c)`
/// for all `a, b, c`. In Case 1 each `x ∨ y` becomes `R′1(x, y, q0_j, q1_1)`
/// and the budget stays `k`. In Case 2 each variable `x` is tripled into
/// `x_1 = x_2 ≠ x_3`, each `x ∨ y` becomes `R2` constraints built from the
/// flip-separability violation, and the budget is `3k`.
pub fn gen_w1_reduction(r1: &Relation, r2: &Relation, src: &LsInstance) -> Result<Gadget> {
    require_or_language(src)?;
    let hw = find_non_horn_witness(r1)?;
    let fw = find_non_flipsep_witness(r2)?;
    let r1p = hw.r1_prime(r1);
    let case = if r1p.contains(0b1101) { W1Case::One } else { W1Case::Two };
    let k = src.k();
    let (copies, budget) = match case {
        W1Case::One => (k + 1, k),
        W1Case::Two => (3 * k + 1, 3 * k),
    };

    let sf = src.formula();
    let base = src.base();
    let mut b = Builder::new();
    let rel1 = b.relation(r1.clone())?;

    // The constant copies come first so that exhaustive search, which
    // decides variables in index order, settles them early.
    let q0 = (1..=copies).map(|j| b.var(format!("q0_{j}"), false)).collect::<Result<Vec<_>>>()?;
    let q1 = (1..=copies).map(|j| b.var(format!("q1_{j}"), true)).collect::<Result<Vec<_>>>()?;

    // vars[v] = the copies standing for source variable v.
    let mut vars: Vec<Vec<VarId>> = Vec::with_capacity(sf.num_variables());
    for (v, name) in sf.variables.iter().enumerate() {
        let f = base.get(v);
        vars.push(match case {
            W1Case::One => vec![b.var(name.clone(), f)?],
            W1Case::Two => vec![
                b.var(format!("{name}_1"), f)?,
                b.var(format!("{name}_2"), f)?,
                b.var(format!("{name}_3"), !f)?,
            ],
        });
    }

    for a in 0..copies {
        for &qb in &q0 {
            for c in 0..copies {
                b.constraint(rel1, hw.expand([q1[a], qb, qb, q1[c]]))?;
            }
        }
    }

    match case {
        W1Case::One => {
            for con in &sf.constraints {
                let (x, y) = (vars[con.scope[0]][0], vars[con.scope[1]][0]);
                for &q in &q0 {
                    b.constraint(rel1, hw.expand([x, y, q, q1[0]]))?;
                }
            }
        }
        W1Case::Two => {
            for copies_of in &vars {
                for l in 0..2 {
                    for &q in &q0 {
                        b.constraint(rel1, hw.expand([copies_of[l], copies_of[2], q, q1[0]]))?;
                    }
                }
            }
            let rel2 = b.relation(r2.clone())?;
            let r = r2.arity();
            for con in &sf.constraints {
                let (x, y) = (&vars[con.scope[0]], &vars[con.scope[1]]);
                for &q in &q0 {
                    let scope = (0..r)
                        .map(|i| {
                            let s = coord(fw.tuple, i, r);
                            let in1 = coord(fw.s1, i, r);
                            let in2 = coord(fw.s2, i, r);
                            match (in1, in2, s) {
                                (true, _, false) => x[0],
                                (true, _, true) => x[2],
                                (false, true, true) => y[0],
                                (false, true, false) => y[2],
                                (false, false, true) => q1[0],
                                (false, false, false) => q,
                            }
                        })
                        .collect();
                    b.constraint(rel2, scope)?;
                }
            }
        }
    }

    let inst = b.finish(budget)?;
    Ok(Gadget::new(
        inst,
        "w1",
        json!({
            "r1": r1.name(),
            "r2": r2.name(),
            "case": case,
            "source_variables": sf.num_variables(),
            "source_constraints": sf.constraints.len(),
            "source_k": k,
            "k": budget,
        }),
        expected_from(src),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::is_flip_separable;
    use crate::decision::Answer;
    use crate::formula::{Assignment, Formula};
    use crate::oracle::{brute_force_ls, DEFAULT_ORACLE_BUDGET};
    use crate::relation::common;

    fn illustration() -> Relation {
        Relation::from_bitstrings("ILL", 4, ["0101", "1010", "1001"]).unwrap()
    }

    fn or_instance(n: usize, edges: &[(usize, usize)], base: &[u8], k: usize) -> LsInstance {
        let mut f = Formula::new();
        let or = f.add_relation(common::or2()).unwrap();
        for i in 0..n {
            f.add_variable(format!("a{i}")).unwrap();
        }
        for &(u, v) in edges {
            f.add_constraint(or, vec![u, v]).unwrap();
        }
        LsInstance::new(f, Assignment::from_bits(base), k).unwrap()
    }

    #[test]
    fn non_horn_blocks() {
        let w = find_non_horn_witness(&common::or2()).unwrap();
        assert_eq!(w.blocks, vec![Block::X, Block::Y]);
        let w = find_non_horn_witness(&common::one_in_three()).unwrap();
        assert_eq!(w.blocks, vec![Block::X, Block::Y, Block::W0]);
        assert_eq!(w.coords(Block::W0), vec![3]);
        let r1p = w.r1_prime(&common::one_in_three());
        assert!(r1p.contains(0b0101) && r1p.contains(0b1001) && !r1p.contains(0b0001));
        assert!(find_non_horn_witness(&common::implication()).is_err());
    }

    #[test]
    fn non_flipsep_witnesses() {
        let w = find_non_flipsep_witness(&common::or2()).unwrap();
        assert_eq!((w.tuple, w.s1, w.s2), (0b01, 0b10, 0b11));
        let w = find_non_flipsep_witness(&illustration()).unwrap();
        assert_eq!((w.tuple, w.s1, w.s2), (0b0101, 0b1100, 0b1111));
        assert!(find_non_flipsep_witness(&common::one_in_three()).is_err());
    }

    #[test]
    fn case_one_sizes_and_answer() {
        let src = or_instance(2, &[(0, 1)], &[1, 1], 1);
        let g = gen_w1_reduction(&common::or2(), &common::or2(), &src).unwrap();
        assert_eq!(g.metadata["params"]["case"], "One");
        assert_eq!(g.instance.num_variables(), 2 + 2 * 2);
        assert_eq!(g.instance.k(), 1);
        let got = brute_force_ls(&g.instance, DEFAULT_ORACLE_BUDGET).unwrap().answer;
        assert_eq!(got, brute_force_ls(&src, DEFAULT_ORACLE_BUDGET).unwrap().answer);
        assert_eq!(g.expected(), Some(got));
    }

    #[test]
    fn case_two_uses_illustration_pattern() {
        // R1 = 1-in-3 gives R′1(x, y, 0, 1) = x ≠ y.
        assert!(!is_flip_separable(&illustration()));
        let src = or_instance(2, &[(0, 1)], &[1, 0], 1);
        let g = gen_w1_reduction(&common::one_in_three(), &illustration(), &src).unwrap();
        assert_eq!(g.metadata["params"]["case"], "Two");
        assert_eq!(g.instance.k(), 3);
        let f = g.instance.formula();
        let ill = f.relation_id("ILL").unwrap();
        let c3: Vec<Vec<&str>> = f
            .constraints
            .iter()
            .filter(|c| c.relation == ill)
            .map(|c| c.scope.iter().map(|&v| f.variables[v].as_str()).collect())
            .collect();
        assert_eq!(c3.len(), 4);
        assert!(c3.iter().all(|s| s == &["a0_1", "a0_3", "a1_3", "a1_1"]));
        assert_eq!(brute_force_ls(&g.instance, DEFAULT_ORACLE_BUDGET).unwrap().answer, Answer::No);
    }

    #[test]
    fn rejects_non_or_source() {
        let mut f = Formula::new();
        let r = f.add_relation(common::implication()).unwrap();
        f.add_variable("a").unwrap();
        f.add_variable("b").unwrap();
        f.add_constraint(r, vec![0, 1]).unwrap();
        let src = LsInstance::new(f, Assignment::from_bits(&[1, 1]), 1).unwrap();
        assert!(matches!(
            gen_w1_reduction(&common::or2(), &common::or2(), &src),
            Err(Error::Precondition(_))
        ));
    }
}
