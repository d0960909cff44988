//! Seeded random instance families.
//!
//! Each family draws a small language of the named class, a random base
//! assignment, and then keeps random constraints that the base satisfies,
//! so every generated instance is valid.

use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::classify::{clause_solutions, Clause};
use crate::formula::{Assignment, Formula, LsInstance};
use crate::relation::{common, coord, coord_mask, full_mask, Relation, Tuple};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    Horn,
    Ihsb,
    Width2,
    FlipSep,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::Horn, Family::Ihsb, Family::Width2, Family::FlipSep];
}

/// Size limits for [`random_instance`].
#[derive(Clone, Copy, Debug)]
pub struct Shape {
    pub max_vars: usize,
    pub max_k: usize,
    pub max_arity: usize,
    pub max_constraints: usize,
}

impl Default for Shape {
    fn default() -> Self {
        Self {
            max_vars: 10,
            max_k: 6,
            max_arity: 4,
            max_constraints: 12,
        }
    }
}

/// Closes a tuple set under coordinatewise minimum.
fn min_closure(mut ts: Vec<Tuple>) -> Vec<Tuple> {
    ts.sort_unstable();
    ts.dedup();
    loop {
        let mut added = Vec::new();
        for (i, &a) in ts.iter().enumerate() {
            for &b in &ts[i + 1..] {
                let m = a & b;
                if ts.binary_search(&m).is_err() && !added.contains(&m) {
                    added.push(m);
                }
            }
        }
        if added.is_empty() {
            return ts;
        }
        ts.extend(added);
        ts.sort_unstable();
    }
}

pub fn random_horn_relation<R: Rng>(rng: &mut R, name: &str, arity: usize) -> Relation {
    let size = 1usize << arity;
    let picks = rng.random_range(1..=size.min(6));
    let ts = (0..picks).map(|_| rng.random_range(0..size) as Tuple).collect();
    Relation::new(name, arity, min_closure(ts)).expect("valid tuples")
}

/// Random conjunction of positive units, implications and negative
/// clauses; retried until the solution set is non-empty.
pub fn random_ihsb_relation<R: Rng>(rng: &mut R, name: &str, arity: usize) -> Relation {
    loop {
        let mut clauses = Vec::new();
        for _ in 0..rng.random_range(1..=arity + 1) {
            let clause = match rng.random_range(0..3) {
                0 => Clause::PosUnit(rng.random_range(0..arity)),
                1 if arity >= 2 => {
                    let i = rng.random_range(0..arity);
                    let j = (i + rng.random_range(1..arity)) % arity;
                    Clause::Impl(i, j)
                }
                _ => {
                    let width = rng.random_range(1..=arity);
                    let mut coords: Vec<usize> = (0..arity).collect();
                    coords.shuffle(rng);
                    Clause::Neg(coords[..width].iter().fold(0, |m, &i| m | coord_mask(i, arity)))
                }
            };
            clauses.push(clause);
        }
        let ts = clause_solutions(arity, &clauses);
        if !ts.is_empty() {
            return Relation::new(name, arity, ts).expect("valid tuples");
        }
    }
}

/// Each coordinate either starts a class or equals / differs from an
/// earlier one.
pub fn random_width2_relation<R: Rng>(rng: &mut R, name: &str, arity: usize) -> Relation {
    let mut link: Vec<Option<(usize, bool)>> = vec![None];
    for i in 1..arity {
        link.push(rng.random_bool(0.7).then(|| (rng.random_range(0..i), rng.random_bool(0.5))));
    }
    Relation::from_fn(name, arity, |t| {
        link.iter().enumerate().all(|(i, l)| match *l {
            None => true,
            Some((j, differ)) => (coord(t, i, arity) != coord(t, j, arity)) == differ,
        })
    })
    .expect("valid arity")
}

/// Random affine relation: solutions of a few random parity equations,
/// retried until non-empty.
pub fn random_affine_relation<R: Rng>(rng: &mut R, name: &str, arity: usize) -> Relation {
    loop {
        let eqs: Vec<(Tuple, bool)> = (0..rng.random_range(1..=arity))
            .map(|_| (rng.random_range(1..=full_mask(arity)), rng.random_bool(0.5)))
            .collect();
        let r = Relation::from_fn(name, arity, |t| {
            eqs.iter().all(|&(mask, b)| ((t & mask).count_ones() % 2 == 1) == b)
        })
        .expect("valid arity");
        if !r.is_empty() {
            return r;
        }
    }
}

/// p-in-q or affine, both flip separable.
pub fn random_flipsep_relation<R: Rng>(rng: &mut R, name: &str, arity: usize) -> Relation {
    if rng.random_bool(0.5) {
        let p = rng.random_range(1..=arity);
        common::p_in_q(p, arity).renamed(name)
    } else {
        random_affine_relation(rng, name, arity)
    }
}

pub fn random_relation<R: Rng>(rng: &mut R, family: Family, name: &str, arity: usize) -> Relation {
    match family {
        Family::Horn => random_horn_relation(rng, name, arity),
        Family::Ihsb => random_ihsb_relation(rng, name, arity),
        Family::Width2 => random_width2_relation(rng, name, arity),
        Family::FlipSep => random_flipsep_relation(rng, name, arity),
    }
}

/// A valid instance whose language lies in `family`.
pub fn random_instance<R: Rng>(rng: &mut R, family: Family, shape: Shape) -> LsInstance {
    let n = rng.random_range(1..=shape.max_vars);
    let k = rng.random_range(0..=shape.max_k);
    let mut f = Formula::new();
    for i in 0..rng.random_range(1..=3) {
        let arity = rng.random_range(1..=shape.max_arity.min(n).max(1));
        let r = random_relation(rng, family, &format!("R{i}"), arity);
        f.add_relation(r).expect("distinct names");
    }
    for v in 0..n {
        f.add_variable(format!("v{v}")).expect("distinct names");
    }
    let base = Assignment::new((0..n).map(|_| rng.random_bool(0.6)).collect());
    let target = rng.random_range(1..=shape.max_constraints);
    let vars: Vec<usize> = (0..n).collect();
    for _ in 0..target * 8 {
        if f.constraints.len() == target {
            break;
        }
        let rel = rng.random_range(0..f.relations.len());
        let arity = f.relations[rel].arity();
        let scope: Vec<usize> = vars.choose_multiple(rng, arity).copied().collect();
        let t = scope.iter().fold(0, |acc, &v| acc << 1 | Tuple::from(base.get(v)));
        if f.relations[rel].contains(t) {
            f.add_constraint(rel, scope).expect("valid scope");
        }
    }
    LsInstance::new(f, base, k).expect("base satisfies every kept constraint")
}

/// `x_i ∧ x_{i+1} → x_{i+2}` around a cycle of `n ≥ 3` variables, all
/// ones. Every lighter solution zeroes at least `n/2` variables.
pub fn horn_cycle(n: usize, k: usize) -> LsInstance {
    let mut f = Formula::new();
    let h = f
        .add_relation(Relation::from_fn("AND_IMPL", 3, |t| t != 0b110).expect("arity 3"))
        .expect("fresh formula");
    for i in 0..n {
        f.add_variable(format!("x{i}")).expect("distinct names");
    }
    for i in 0..n {
        f.add_constraint(h, vec![i, (i + 1) % n, (i + 2) % n]).expect("valid scope");
    }
    LsInstance::new(f, Assignment::ones(n), k).expect("all ones satisfies")
}

/// 1-in-3 constraints that a random planted assignment satisfies, each
/// with one variable set to 1 and two set to 0.
pub fn planted_one_in_three<R: Rng>(rng: &mut R, n: usize, m: usize, k: usize) -> LsInstance {
    assert!(n >= 3, "need three variables");
    let mut bits: Vec<bool> = (0..n).map(|_| rng.random_bool(0.4)).collect();
    if !bits.contains(&true) {
        bits[0] = true;
    }
    if bits.iter().filter(|&&b| !b).count() < 2 {
        bits[n - 1] = false;
        bits[n - 2] = false;
        bits[0] = true;
    }
    let ones: Vec<usize> = (0..n).filter(|&v| bits[v]).collect();
    let zeros: Vec<usize> = (0..n).filter(|&v| !bits[v]).collect();
    let mut f = Formula::new();
    let r = f.add_relation(common::one_in_three()).expect("fresh formula");
    for i in 0..n {
        f.add_variable(format!("x{i}")).expect("distinct names");
    }
    for _ in 0..m {
        let mut scope = vec![*ones.choose(rng).expect("non-empty")];
        scope.extend(zeros.choose_multiple(rng, 2));
        scope.shuffle(rng);
        f.add_constraint(r, scope).expect("valid scope");
    }
    LsInstance::new(f, Assignment::new(bits), k).expect("planted assignment satisfies")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::classify_relation;
    use crate::solve::language_verdict;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn relations_land_in_their_class() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let arity = rng.random_range(1..=4);
            assert!(classify_relation(&random_horn_relation(&mut rng, "H", arity)).horn);
            assert!(classify_relation(&random_ihsb_relation(&mut rng, "I", arity)).ihsb_minus);
            assert!(classify_relation(&random_width2_relation(&mut rng, "W", arity)).width2_affine);
            assert!(classify_relation(&random_flipsep_relation(&mut rng, "F", arity)).flip_separable);
        }
    }

    #[test]
    fn instances_are_valid_and_in_family() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for fam in Family::ALL {
            for _ in 0..50 {
                let inst = random_instance(&mut rng, fam, Shape::default());
                let v = language_verdict(inst.formula());
                let ok = match fam {
                    Family::Horn => v.all(|c| c.horn),
                    Family::Ihsb => v.all(|c| c.ihsb_minus),
                    Family::Width2 => v.all(|c| c.width2_affine),
                    Family::FlipSep => v.all(|c| c.flip_separable),
                };
                assert!(ok, "{fam:?}");
            }
        }
    }

    #[test]
    fn cycle_and_planted() {
        let inst = horn_cycle(6, 2);
        assert_eq!(inst.formula().constraints.len(), 6);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let p = planted_one_in_three(&mut rng, 8, 5, 3);
        assert_eq!(p.formula().constraints.len(), 5);
    }
}
