//! Explicit finite Boolean relations.
//!
//! A tuple of an `r`-ary relation is packed into a `u32`: coordinate 1 is the
//! most significant of the `r` low bits, so numeric order on codes coincides
//! with lexicographic order on the bitstring form (`"011"` < `"100"`).

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported arity; a relation's membership table has `2^arity` bits.
pub const ARITY_MAX: usize = 16;

/// A packed tuple, see the module docs for the bit layout.
pub type Tuple = u32;

#[derive(Clone, PartialEq, Eq)]
pub struct Relation {
    name: String,
    arity: usize,
    /// Sorted ascending, no duplicates.
    tuples: Vec<Tuple>,
    table: Vec<u64>,
}

impl Relation {
    /// Builds a relation, rejecting duplicate or out-of-range tuples.
    pub fn new(
        name: impl Into<String>,
        arity: usize,
        tuples: impl IntoIterator<Item = Tuple>,
    ) -> Result<Self> {
        let name = name.into();
        check_arity(&name, arity)?;
        let mut tuples: Vec<Tuple> = tuples.into_iter().collect();
        let limit = 1u64 << arity;
        if let Some(t) = tuples.iter().find(|&&t| u64::from(t) >= limit) {
            return Err(Error::InvalidRelation(format!(
                "{name}: tuple code {t} does not fit arity {arity}"
            )));
        }
        tuples.sort_unstable();
        if let Some(w) = tuples.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidRelation(format!(
                "{name}: duplicate tuple {}",
                to_bitstring(w[0], arity)
            )));
        }
        Ok(Self::from_sorted(name, arity, tuples))
    }

    /// Builds a relation from its characteristic predicate.
    pub fn from_fn(
        name: impl Into<String>,
        arity: usize,
        mut member: impl FnMut(Tuple) -> bool,
    ) -> Result<Self> {
        let name = name.into();
        check_arity(&name, arity)?;
        let tuples = (0..(1u32 << arity)).filter(|&t| member(t)).collect();
        Ok(Self::from_sorted(name, arity, tuples))
    }

    /// Builds a relation from bitstrings such as `"011"`.
    pub fn from_bitstrings<S: AsRef<str>>(
        name: impl Into<String>,
        arity: usize,
        rows: impl IntoIterator<Item = S>,
    ) -> Result<Self> {
        let name = name.into();
        check_arity(&name, arity)?;
        let tuples = rows
            .into_iter()
            .map(|s| {
                parse_bitstring(s.as_ref(), arity)
                    .map_err(|msg| Error::InvalidRelation(format!("{name}: {msg}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(name, arity, tuples)
    }

    fn from_sorted(name: String, arity: usize, tuples: Vec<Tuple>) -> Self {
        let mut table = vec![0u64; (1usize << arity).div_ceil(64)];
        for &t in &tuples {
            table[(t / 64) as usize] |= 1 << (t % 64);
        }
        Self {
            name,
            arity,
            tuples,
            table,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Tuples in ascending (lexicographic bitstring) order.
    pub fn tuples(&self) -> &[Tuple] {
        &self.tuples
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    #[inline]
    pub fn contains(&self, t: Tuple) -> bool {
        u64::from(t) < (1u64 << self.arity) && self.table[(t / 64) as usize] >> (t % 64) & 1 == 1
    }

    /// Mask with every coordinate set.
    pub fn full_mask(&self) -> Tuple {
        full_mask(self.arity)
    }

    /// Value of coordinate `i` (0-based) in `t`.
    #[inline]
    pub fn coord(&self, t: Tuple, i: usize) -> bool {
        coord(t, i, self.arity)
    }

    /// Mask selecting coordinate `i` (0-based).
    #[inline]
    pub fn coord_mask(&self, i: usize) -> Tuple {
        coord_mask(i, self.arity)
    }

    pub fn bitstring(&self, t: Tuple) -> String {
        to_bitstring(t, self.arity)
    }

    /// Same tuple set under a different name.
    pub fn renamed(&self, name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            ..self.clone()
        }
    }

    /// True when both relations have the same arity and tuple set.
    pub fn same_tuples(&self, other: &Relation) -> bool {
        self.arity == other.arity && self.tuples == other.tuples
    }

    /// Relation obtained by substituting the variables of `pattern` into the
    /// coordinates: coordinate `i` of `self` receives argument `pattern[i]`
    /// (an index into the new relation's coordinates) or a constant.
    pub fn substitute(&self, name: impl Into<String>, arity: usize, pattern: &[Arg]) -> Result<Self> {
        if pattern.len() != self.arity {
            return Err(Error::InvalidRelation(format!(
                "substitution pattern has {} entries, relation {} has arity {}",
                pattern.len(),
                self.name,
                self.arity
            )));
        }
        if let Some(Arg::Var(v)) = pattern.iter().find(|a| matches!(a, Arg::Var(v) if *v >= arity)) {
            return Err(Error::InvalidRelation(format!(
                "substitution refers to coordinate {v} of a {arity}-ary relation"
            )));
        }
        Self::from_fn(name, arity, |t| {
            let mut image = 0;
            for (i, arg) in pattern.iter().enumerate() {
                let bit = match *arg {
                    Arg::Var(v) => coord(t, v, arity),
                    Arg::Const(b) => b,
                };
                if bit {
                    image |= self.coord_mask(i);
                }
            }
            self.contains(image)
        })
    }
}

/// One argument position of a [`Relation::substitute`] pattern.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Arg {
    Var(usize),
    Const(bool),
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.tuples.iter().map(|&t| self.bitstring(t)).collect();
        write!(f, "{}/{}{{{}}}", self.name, self.arity, rows.join(","))
    }
}

fn check_arity(name: &str, arity: usize) -> Result<()> {
    if arity == 0 || arity > ARITY_MAX {
        return Err(Error::InvalidRelation(format!(
            "{name}: arity {arity} outside 1..={ARITY_MAX}"
        )));
    }
    Ok(())
}

#[inline]
pub fn full_mask(arity: usize) -> Tuple {
    (1u32 << arity) - 1
}

#[inline]
pub fn coord_mask(i: usize, arity: usize) -> Tuple {
    1 << (arity - 1 - i)
}

#[inline]
pub fn coord(t: Tuple, i: usize, arity: usize) -> bool {
    t >> (arity - 1 - i) & 1 == 1
}

/// Packs bits given in coordinate order.
pub fn pack(bits: impl IntoIterator<Item = bool>) -> Tuple {
    bits.into_iter().fold(0, |acc, b| acc << 1 | Tuple::from(b))
}

pub fn to_bitstring(t: Tuple, arity: usize) -> String {
    (0..arity)
        .map(|i| if coord(t, i, arity) { '1' } else { '0' })
        .collect()
}

pub fn parse_bitstring(s: &str, arity: usize) -> std::result::Result<Tuple, String> {
    if s.len() != arity {
        return Err(format!(
            "bitstring {s:?} has length {}, expected {arity}",
            s.len()
        ));
    }
    s.chars().try_fold(0, |acc, c| match c {
        '0' => Ok(acc << 1),
        '1' => Ok(acc << 1 | 1),
        _ => Err(format!("bitstring {s:?} contains {c:?}")),
    })
}

/// 1-based coordinate list of a mask, as used in reports.
pub fn mask_coords(mask: Tuple, arity: usize) -> Vec<usize> {
    (0..arity)
        .filter(|&i| coord(mask, i, arity))
        .map(|i| i + 1)
        .collect()
}

/// Relations that show up throughout the tests, generators and docs.
pub mod common {
    use super::*;

    /// `x ∨ y`.
    pub fn or2() -> Relation {
        Relation::from_bitstrings("OR", 2, ["01", "10", "11"]).unwrap()
    }

    /// `x → y`.
    pub fn implication() -> Relation {
        Relation::from_bitstrings("IMPL", 2, ["00", "01", "11"]).unwrap()
    }

    pub fn neq() -> Relation {
        Relation::from_bitstrings("NEQ", 2, ["01", "10"]).unwrap()
    }

    pub fn eq() -> Relation {
        Relation::from_bitstrings("EQ", 2, ["00", "11"]).unwrap()
    }

    /// The unary constant relation `{b}`.
    pub fn constant(b: bool) -> Relation {
        let name = if b { "ONE" } else { "ZERO" };
        Relation::new(name, 1, [Tuple::from(b)]).unwrap()
    }

    /// Exactly `p` of the `q` coordinates are 1.
    pub fn p_in_q(p: usize, q: usize) -> Relation {
        Relation::from_fn(format!("IN_{p}_OF_{q}"), q, |t| t.count_ones() as usize == p).unwrap()
    }

    pub fn one_in_three() -> Relation {
        p_in_q(1, 3).renamed("ONE_IN_THREE")
    }

    /// `x1 + ... + xr = b (mod 2)`.
    pub fn parity(r: usize, b: bool) -> Relation {
        Relation::from_fn(format!("XOR{r}_{}", u8::from(b)), r, |t| {
            (t.count_ones() % 2 == 1) == b
        })
        .unwrap()
    }

    /// Negative clause `¬x1 ∨ ... ∨ ¬xr`.
    pub fn nand(r: usize) -> Relation {
        let full = full_mask(r);
        Relation::from_fn(format!("NAND{r}"), r, |t| t != full).unwrap()
    }

    /// The canonical ternary Horn relation that is not IHS-B−: `x ∧ y → z`
    /// restricted to `{111, 010, 100, 000}`.
    pub fn horn_core() -> Relation {
        Relation::from_bitstrings("HORN3", 3, ["000", "010", "100", "111"]).unwrap()
    }
}
