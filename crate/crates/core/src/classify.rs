//! Decision procedures for the relation classes that drive the dichotomy,
//! and the language-level verdict built from them.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::decision::Algorithm;
use crate::error::{Error, Result};
use crate::relation::{coord, coord_mask, Relation, Tuple};

pub fn is_zero_valid(r: &Relation) -> bool {
    r.contains(0)
}

pub fn is_one_valid(r: &Relation) -> bool {
    r.contains(r.full_mask())
}

/// A pair `(a, b)` of tuples whose coordinatewise minimum is missing.
///
/// Pairs are scanned from the largest tuple down, so for `x ∨ y` the
/// witness is `(10, 01)`.
pub fn horn_witness(r: &Relation) -> Option<(Tuple, Tuple)> {
    let ts = r.tuples();
    for ai in (0..ts.len()).rev() {
        for bi in (0..ai).rev() {
            if !r.contains(ts[ai] & ts[bi]) {
                return Some((ts[ai], ts[bi]));
            }
        }
    }
    None
}

/// Horn ⟺ min-closed.
pub fn is_horn(r: &Relation) -> bool {
    horn_witness(r).is_none()
}

/// Affine ⟺ `R ⊕ t0` is a linear subspace for some (any) `t0 ∈ R`, which
/// holds iff `|R|` equals the size of the span of `R ⊕ t0`.
pub fn is_affine(r: &Relation) -> bool {
    let Some(&t0) = r.tuples().first() else {
        return true;
    };
    let mut basis: Vec<Tuple> = Vec::new();
    for &t in r.tuples() {
        let mut v = t ^ t0;
        for &b in &basis {
            v = v.min(v ^ b);
        }
        if v != 0 {
            basis.push(v);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    r.len() == 1usize << basis.len()
}

/// A binary constraint between two coordinates implied by a relation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct EntailedPair {
    /// 0-based coordinates, `i < j`.
    pub i: usize,
    pub j: usize,
    /// `true` for `x_i = x_j`, `false` for `x_i ≠ x_j`.
    pub equal: bool,
}

/// Every `=`/`≠` constraint between coordinate pairs that holds in all
/// tuples. An empty relation entails both for every pair.
pub fn entailed_pairs(r: &Relation) -> Vec<EntailedPair> {
    let n = r.arity();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut always_eq = true;
            let mut always_neq = true;
            for &t in r.tuples() {
                if r.coord(t, i) == r.coord(t, j) {
                    always_neq = false;
                } else {
                    always_eq = false;
                }
            }
            if always_eq {
                out.push(EntailedPair { i, j, equal: true });
            }
            if always_neq {
                out.push(EntailedPair { i, j, equal: false });
            }
        }
    }
    out
}

/// Width-2 affine ⟺ `R` is the solution set of its entailed `=`/`≠`
/// constraints. Constant columns disqualify; the empty relation qualifies
/// (`x ≠ x`).
pub fn is_width2_affine(r: &Relation) -> bool {
    if r.is_empty() {
        return true;
    }
    // Entailment is transitive, so a coordinate starts a new class exactly
    // when it is linked to no smaller coordinate.
    let pairs = entailed_pairs(r);
    let classes = (0..r.arity())
        .filter(|&j| !pairs.iter().any(|p| p.j == j))
        .count();
    r.len() == 1usize << classes
}

/// The clause shapes of IHS-B−, over 0-based coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Clause {
    /// `(x_i)`.
    PosUnit(usize),
    /// `(x_i → x_j)`.
    Impl(usize, usize),
    /// `(¬x_i ∨ ...)` over the coordinates set in the mask.
    Neg(Tuple),
}

impl Clause {
    pub fn holds(&self, t: Tuple, arity: usize) -> bool {
        match *self {
            Clause::PosUnit(i) => coord(t, i, arity),
            Clause::Impl(i, j) => !coord(t, i, arity) || coord(t, j, arity),
            Clause::Neg(s) => t & s != s,
        }
    }

    /// Human-readable form with 1-based coordinates.
    pub fn describe(&self, arity: usize) -> String {
        match *self {
            Clause::PosUnit(i) => format!("POS_UNIT({})", i + 1),
            Clause::Impl(i, j) => format!("IMPL({},{})", i + 1, j + 1),
            Clause::Neg(s) => {
                let coords: Vec<String> = coords_of(s, arity).iter().map(ToString::to_string).collect();
                format!("NEG({{{}}})", coords.join(","))
            }
        }
    }
}

/// `down[s]` is true iff the coordinate set `s` lies inside the support of
/// some tuple.
fn support_down_closure(r: &Relation) -> Vec<bool> {
    let size = 1usize << r.arity();
    let mut down = vec![false; size];
    for &t in r.tuples() {
        down[t as usize] = true;
    }
    for bit in 0..r.arity() {
        let b = 1usize << bit;
        for s in 0..size {
            if s & b != 0 && down[s] {
                down[s ^ b] = true;
            }
        }
    }
    down
}

/// All entailed positive units and implications, plus the subset-minimal
/// entailed negative clauses.
pub fn entailed_ihsb_clauses(r: &Relation) -> Vec<Clause> {
    let n = r.arity();
    let ts = r.tuples();
    let mut out = Vec::new();
    for i in 0..n {
        if ts.iter().all(|&t| r.coord(t, i)) {
            out.push(Clause::PosUnit(i));
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i != j && ts.iter().all(|&t| !r.coord(t, i) || r.coord(t, j)) {
                out.push(Clause::Impl(i, j));
            }
        }
    }
    let down = support_down_closure(r);
    let entailed_neg = |s: usize| s != 0 && !down[s];
    for s in 1..down.len() {
        if entailed_neg(s) && (0..n).all(|b| s >> b & 1 == 0 || !entailed_neg(s ^ (1 << b))) {
            out.push(Clause::Neg(s as Tuple));
        }
    }
    out
}

/// Solution set of a clause conjunction over `arity` coordinates.
pub fn clause_solutions(arity: usize, clauses: &[Clause]) -> Vec<Tuple> {
    (0..(1 as Tuple) << arity)
        .filter(|&t| clauses.iter().all(|c| c.holds(t, arity)))
        .collect()
}

/// IHS-B− ⟺ `R` equals the solution set of its entailed clauses of the
/// three allowed shapes.
pub fn is_ihsb_minus(r: &Relation) -> bool {
    let n = r.arity();
    let ts = r.tuples();
    let units: Tuple = (0..n)
        .filter(|&i| ts.iter().all(|&t| r.coord(t, i)))
        .fold(0, |m, i| m | r.coord_mask(i));
    let mut implied = vec![0 as Tuple; n];
    for (i, slot) in implied.iter_mut().enumerate() {
        for j in 0..n {
            if i != j && ts.iter().all(|&t| !r.coord(t, i) || r.coord(t, j)) {
                *slot |= r.coord_mask(j);
            }
        }
    }
    let down = support_down_closure(r);
    let count = (0..(1 as Tuple) << n)
        .filter(|&a| {
            a & units == units
                && down[a as usize]
                && (0..n).all(|i| !r.coord(a, i) || a & implied[i] == implied[i])
        })
        .count();
    count == r.len()
}

/// Every `S` (as a coordinate mask, ascending) such that flipping `S` in `t`
/// stays inside `R`. Always contains the empty set.
pub fn flip_sets(r: &Relation, t: Tuple) -> Result<Vec<Tuple>> {
    if !r.contains(t) {
        return Err(Error::Precondition(format!(
            "{} is not a tuple of {}",
            r.bitstring(t),
            r.name()
        )));
    }
    let mut sets: Vec<Tuple> = r.tuples().iter().map(|&u| u ^ t).collect();
    sets.sort_unstable();
    Ok(sets)
}

/// A tuple with flip sets `S1 ⊂ S2` for which `S2 ∖ S1` is not a flip set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FlipWitness {
    pub tuple: Tuple,
    pub s1: Tuple,
    pub s2: Tuple,
}

/// The first flip-separability violation in canonical order (tuple, then
/// `S1`, then `S2`, all ascending).
pub fn flip_witness(r: &Relation) -> Option<FlipWitness> {
    for &t in r.tuples() {
        let sets = flip_sets(r, t).expect("tuple of r");
        for &s1 in &sets {
            for &s2 in &sets {
                if s1 != s2 && s1 & !s2 == 0 && !r.contains(t ^ s1 ^ s2) {
                    return Some(FlipWitness { tuple: t, s1, s2 });
                }
            }
        }
    }
    None
}

pub fn is_flip_separable(r: &Relation) -> bool {
    flip_witness(r).is_none()
}

/// Class membership flags of one relation, with counterexamples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationClass {
    pub zero_valid: bool,
    pub one_valid: bool,
    pub horn: bool,
    pub affine: bool,
    pub width2_affine: bool,
    pub ihsb_minus: bool,
    pub flip_separable: bool,
    pub horn_witness: Option<(Tuple, Tuple)>,
    pub flip_witness: Option<FlipWitness>,
}

pub fn classify_relation(r: &Relation) -> RelationClass {
    let horn_witness = horn_witness(r);
    let flip_witness = flip_witness(r);
    RelationClass {
        zero_valid: is_zero_valid(r),
        one_valid: is_one_valid(r),
        horn: horn_witness.is_none(),
        affine: is_affine(r),
        width2_affine: is_width2_affine(r),
        ihsb_minus: is_ihsb_minus(r),
        flip_separable: flip_witness.is_none(),
        horn_witness,
        flip_witness,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LsClass {
    #[serde(rename = "P")]
    P,
    #[serde(rename = "FPT")]
    Fpt,
    #[serde(rename = "W1_HARD")]
    W1Hard,
}

impl fmt::Display for LsClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LsClass::P => "P",
            LsClass::Fpt => "FPT",
            LsClass::W1Hard => "W1_HARD",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MinOnesClass {
    #[serde(rename = "P")]
    P,
    #[serde(rename = "NP_COMPLETE")]
    NpComplete,
}

impl fmt::Display for MinOnesClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MinOnesClass::P => "P",
            MinOnesClass::NpComplete => "NP_COMPLETE",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LanguageVerdict {
    pub relations: Vec<(String, RelationClass)>,
    pub ls_class: LsClass,
    /// Classical hardness of the local-search problem.
    pub np_hard: bool,
    pub minones_class: MinOnesClass,
    /// What the dispatcher will run.
    pub algorithm: Algorithm,
}

impl LanguageVerdict {
    fn from_classes(relations: Vec<(String, RelationClass)>) -> Self {
        let all = |f: fn(&RelationClass) -> bool| relations.iter().all(|(_, c)| f(c));
        let ihsb = all(|c| c.ihsb_minus);
        let width2 = all(|c| c.width2_affine);
        let horn = all(|c| c.horn);
        let flip = all(|c| c.flip_separable);
        let ls_class = if ihsb || width2 {
            LsClass::P
        } else if horn || flip {
            LsClass::Fpt
        } else {
            LsClass::W1Hard
        };
        let minones_class = if all(|c| c.zero_valid) || horn || width2 {
            MinOnesClass::P
        } else {
            MinOnesClass::NpComplete
        };
        let algorithm = if ihsb {
            Algorithm::Ihsb
        } else if width2 {
            Algorithm::Width2
        } else if horn {
            Algorithm::Horn
        } else if flip {
            Algorithm::FlipSep
        } else {
            Algorithm::Brute
        };
        Self {
            relations,
            ls_class,
            np_hard: ls_class != LsClass::P,
            minones_class,
            algorithm,
        }
    }

    /// Verdict for a formula without constraints: every class holds.
    pub fn vacuous() -> Self {
        Self::from_classes(Vec::new())
    }

    pub fn all(&self, f: impl Fn(&RelationClass) -> bool) -> bool {
        self.relations.iter().all(|(_, c)| f(c))
    }
}

/// Classifies a finite constraint language.
pub fn classify_language<'a>(
    language: impl IntoIterator<Item = &'a Relation>,
) -> Result<LanguageVerdict> {
    let relations: Vec<(String, RelationClass)> = language
        .into_iter()
        .map(|r| (r.name().to_owned(), classify_relation(r)))
        .collect();
    if relations.is_empty() {
        return Err(Error::EmptyLanguage);
    }
    Ok(LanguageVerdict::from_classes(relations))
}

/// Coordinates of a mask, 1-based.
pub fn coords_of(mask: Tuple, arity: usize) -> Vec<usize> {
    (0..arity)
        .filter(|&i| mask & coord_mask(i, arity) != 0)
        .map(|i| i + 1)
        .collect()
}
