//! Reference checks shared by the integration tests. These are written
//! from the definitions, independently of the library's classifiers.

#![allow(dead_code)]

use lscsp::relation::{coord, full_mask, Relation, Tuple};
use lscsp::{Assignment, Formula, LsInstance};

/// LS by enumerating all `2^n` assignments.
pub fn ls_by_full_enumeration(inst: &LsInstance) -> bool {
    let n = inst.num_variables();
    assert!(n <= 24, "full enumeration is exponential");
    let base = inst.base();
    (0..1u64 << n).any(|m| {
        let a = Assignment::from_mask(m, n);
        a.weight() < base.weight()
            && a.distance(base).unwrap() <= inst.k()
            && inst.formula().satisfies(&a).unwrap()
    })
}

/// Every tuple of `arity` that satisfies all `preds` entailed by `r`, where
/// `preds` is a family of constraints over the coordinates.
fn closure_under<F>(r: &Relation, preds: &[F]) -> Vec<Tuple>
where
    F: Fn(Tuple) -> bool,
{
    let entailed: Vec<&F> = preds.iter().filter(|p| r.tuples().iter().all(|&t| p(t))).collect();
    (0..=full_mask(r.arity())).filter(|&t| entailed.iter().all(|p| p(t))).collect()
}

type Pred = Box<dyn Fn(Tuple) -> bool>;

/// All clauses with at most one positive literal.
fn horn_clauses(n: usize) -> Vec<Pred> {
    let mut out: Vec<Pred> = Vec::new();
    for neg in 0..=full_mask(n) {
        // No positive literal.
        if neg != 0 {
            out.push(Box::new(move |t: Tuple| t & neg != neg));
        }
        for p in 0..n {
            let pm = 1 << (n - 1 - p);
            if neg & pm == 0 {
                out.push(Box::new(move |t: Tuple| t & neg != neg || t & pm != 0));
            }
        }
    }
    out
}

/// Horn ⟺ equal to the conjunction of its entailed Horn clauses.
pub fn horn_by_clauses(r: &Relation) -> bool {
    closure_under(r, &horn_clauses(r.arity())) == r.tuples()
}

/// IHS-B− ⟺ equal to the conjunction of its entailed positive units,
/// implications and negative clauses.
pub fn ihsb_by_clauses(r: &Relation) -> bool {
    let n = r.arity();
    let mut preds: Vec<Pred> = Vec::new();
    for i in 0..n {
        preds.push(Box::new(move |t| coord(t, i, n)));
        for j in 0..n {
            preds.push(Box::new(move |t| !coord(t, i, n) || coord(t, j, n)));
        }
    }
    for neg in 1..=full_mask(n) {
        preds.push(Box::new(move |t: Tuple| t & neg != neg));
    }
    closure_under(r, &preds) == r.tuples()
}

/// Affine ⟺ equal to the solution set of its entailed parity equations.
/// The empty relation is `0 = 1`.
pub fn affine_by_equations(r: &Relation) -> bool {
    let n = r.arity();
    let mut preds: Vec<Pred> = Vec::new();
    for mask in 0..=full_mask(n) {
        for b in [false, true] {
            preds.push(Box::new(move |t: Tuple| ((t & mask).count_ones() % 2 == 1) == b));
        }
    }
    closure_under(r, &preds) == r.tuples()
}

/// Affine ⟺ closed under `x ⊕ y ⊕ z`.
pub fn affine_by_xor3(r: &Relation) -> bool {
    let ts = r.tuples();
    ts.iter().all(|&a| ts.iter().all(|&b| ts.iter().all(|&c| r.contains(a ^ b ^ c))))
}

/// Width-2 affine ⟺ equal to the conjunction of its entailed `x = y` and
/// `x ≠ y` constraints. Constants are not allowed, so the empty relation
/// only qualifies through a contradictory pair.
pub fn width2_by_pairs(r: &Relation) -> bool {
    let n = r.arity();
    let mut preds: Vec<Pred> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                preds.push(Box::new(move |t| coord(t, i, n) == coord(t, j, n)));
                preds.push(Box::new(move |t| coord(t, i, n) != coord(t, j, n)));
            }
        }
    }
    if r.is_empty() {
        return true;
    }
    closure_under(r, &preds) == r.tuples()
}

/// Flip separability straight from the definition.
pub fn flip_separable_by_definition(r: &Relation) -> bool {
    let n = r.arity();
    let all = full_mask(n);
    r.tuples().iter().all(|&t| {
        let is_flip = |s: Tuple| r.contains(t ^ s);
        (0..=all).all(|s1| {
            !is_flip(s1)
                || (0..=all)
                    .filter(|&s2| s2 != s1 && s1 & s2 == s1 && is_flip(s2))
                    .all(|s2| is_flip(s2 & !s1))
        })
    })
}

/// Min-closed straight from the definition.
pub fn min_closed(r: &Relation) -> bool {
    let ts = r.tuples();
    ts.iter().all(|&a| ts.iter().all(|&b| r.contains(a & b)))
}

/// Canonical form of a graph on `n ≤ 6` vertices with one marked vertex:
/// the smallest edge bitmask over all relabellings that fix the marking.
pub fn canonical_rooted(n: usize, edges: &[(usize, usize)], root: Option<usize>) -> (u64, Option<usize>) {
    let mut best: Option<u64> = None;
    let mut perm: Vec<usize> = (0..n).collect();
    permutations(&mut perm, 0, &mut |p| {
        if let Some(r) = root {
            if p[r] != 0 {
                return;
            }
        }
        let mask = edges.iter().fold(0u64, |m, &(u, v)| {
            let (a, b) = (p[u].min(p[v]), p[u].max(p[v]));
            m | 1 << pair_index(n, a, b)
        });
        best = Some(best.map_or(mask, |x| x.min(mask)));
    });
    (best.unwrap_or(0), root.map(|_| 0))
}

fn pair_index(n: usize, a: usize, b: usize) -> usize {
    // Pairs (0,1), (0,2), ..., (1,2), ... in order.
    a * (2 * n - a - 1) / 2 + (b - a - 1)
}

fn permutations(p: &mut Vec<usize>, i: usize, f: &mut impl FnMut(&[usize])) {
    if i == p.len() {
        f(p);
        return;
    }
    for j in i..p.len() {
        p.swap(i, j);
        permutations(p, i + 1, f);
        p.swap(i, j);
    }
}

/// Formula over one relation with the given scopes.
pub fn single_relation_instance(r: &Relation, n: usize, scopes: &[Vec<usize>], base: &Assignment, k: usize) -> LsInstance {
    let mut f = Formula::new();
    let id = f.add_relation(r.clone()).unwrap();
    for v in 0..n {
        f.add_variable(format!("v{v}")).unwrap();
    }
    for s in scopes {
        f.add_constraint(id, s.clone()).unwrap();
    }
    LsInstance::new(f, base.clone(), k).unwrap()
}
