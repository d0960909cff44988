//! Hardness for Horn languages that are not IHS-B−: a ternary relation
//! `R′` is carved out of `R` by substituting constants, dominating set is
//! reduced to LS over `{R′, →}`, and that in turn to LS over `{R}`.

use serde::{Deserialize, Serialize};
use serde_json::json;

use super::{Builder, Gadget, Graph};
use crate::classify::{is_horn, is_ihsb_minus};
use crate::decision::Answer;
use crate::error::{Error, Result};
use crate::formula::{LsInstance, VarId};
use crate::relation::{common, Arg, Relation};

/// What a coordinate of `R` receives in `R′(x, y, z)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Role {
    X,
    Y,
    Z,
    Zero,
    One,
}

const ROLES: [Role; 5] = [Role::X, Role::Y, Role::Z, Role::Zero, Role::One];

impl Role {
    fn arg(self) -> Arg {
        match self {
            Role::X => Arg::Var(0),
            Role::Y => Arg::Var(1),
            Role::Z => Arg::Var(2),
            Role::Zero => Arg::Const(false),
            Role::One => Arg::Const(true),
        }
    }
}

/// Ternary `R′` containing `111, 010, 100, 000` but not `110`, with the
/// role of every coordinate of the source relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RPrime {
    pub relation: Relation,
    pub roles: Vec<Role>,
}

impl RPrime {
    fn valid(r: &Relation) -> bool {
        [0b111, 0b010, 0b100, 0b000].iter().all(|&t| r.contains(t)) && !r.contains(0b110)
    }

    /// Scope of the `R` constraint realizing `R′(x, y, z)` with the given
    /// constant variables.
    pub fn expand(&self, xyz: [VarId; 3], zero: VarId, one: VarId) -> Vec<VarId> {
        self.roles
            .iter()
            .map(|role| match role {
                Role::X => xyz[0],
                Role::Y => xyz[1],
                Role::Z => xyz[2],
                Role::Zero => zero,
                Role::One => one,
            })
            .collect()
    }
}

/// First role assignment in lexicographic order (`X < Y < Z < 0 < 1` per
/// coordinate) that yields a valid `R′`.
pub fn derive_r_prime(r: &Relation) -> Result<RPrime> {
    if !is_horn(r) {
        return Err(Error::Precondition(format!("relation {} is not Horn", r.name())));
    }
    if is_ihsb_minus(r) {
        return Err(Error::Precondition(format!("relation {} is IHS-B-", r.name())));
    }
    let n = r.arity();
    let mut digits = vec![0usize; n];
    loop {
        let roles: Vec<Role> = digits.iter().map(|&d| ROLES[d]).collect();
        // X, Y and Z must all occur, otherwise 110 and 111 (or 010 and
        // 100) would coincide.
        if [Role::X, Role::Y, Role::Z].iter().all(|r| roles.contains(r)) {
            let pattern: Vec<Arg> = roles.iter().map(|r| r.arg()).collect();
            let rp = r.substitute(format!("{}'", r.name()), 3, &pattern)?;
            if RPrime::valid(&rp) {
                return Ok(RPrime { relation: rp, roles });
            }
        }
        // Odometer increment, most significant coordinate first.
        let mut i = n;
        loop {
            if i == 0 {
                return Err(Error::Precondition(format!(
                    "no R' found for Horn, non-IHS-B- relation {}",
                    r.name()
                )));
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < ROLES.len() {
                break;
            }
            digits[i] = 0;
        }
    }
}

/// Identification of `R′` arguments that yields `x → y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ImplicationPattern {
    /// `R′(x, x, y)`.
    Xxy,
    /// `R′(x, y, x)`.
    Xyx,
    /// `R′(y, x, x)`.
    Yxx,
}

impl ImplicationPattern {
    pub fn apply(self, x: VarId, y: VarId) -> [VarId; 3] {
        match self {
            ImplicationPattern::Xxy => [x, x, y],
            ImplicationPattern::Xyx => [x, y, x],
            ImplicationPattern::Yxx => [y, x, x],
        }
    }

    fn args(self) -> [Arg; 3] {
        let [a, b, c] = self.apply(0, 1);
        [Arg::Var(a), Arg::Var(b), Arg::Var(c)]
    }
}

/// `R′(x, x, y)` is tried first when `001 ∈ R′`, then `R′(x, y, x)` and
/// `R′(y, x, x)`.
pub fn derive_implication(rp: &RPrime) -> Result<ImplicationPattern> {
    let r = &rp.relation;
    let mut order = Vec::with_capacity(3);
    if r.contains(0b001) {
        order.push(ImplicationPattern::Xxy);
    }
    order.extend([ImplicationPattern::Xyx, ImplicationPattern::Yxx]);
    let imp = common::implication();
    order
        .into_iter()
        .find(|p| r.substitute("_", 2, &p.args()).is_ok_and(|b| b.same_tuples(&imp)))
        .ok_or_else(|| Error::Precondition(format!("no identification of {} gives x -> y", r.name())))
}

/// Reduces dominating set (size at most `t`) to LS over `{R′, →}`.
///
/// With `S = 3m`: a special variable `x`, copies `x{i}_{j}` (`j ≤ S`) per
/// vertex tied by pairwise implications, a chain `y{i}_{l}` per vertex
/// through its neighbours that forces `x = 1` unless the vertex is
/// dominated, and `x → z` for every other variable. Base all ones; budget
/// `St + S - 1`. An isolated vertex gets `x{i}_1 → x`.
pub fn gen_domset_reduction(g: &Graph, t: usize, rp: &RPrime) -> Result<Gadget> {
    if g.m() == 0 {
        return Err(Error::InvalidParameter("graph has no edges".into()));
    }
    let s = 3 * g.m();
    let mut b = Builder::new();
    let rel = b.relation(rp.relation.clone())?;
    let imp = b.relation(common::implication())?;
    let x = b.var("x", true)?;
    let mut copies = Vec::with_capacity(g.n());
    for i in 1..=g.n() {
        copies.push((1..=s).map(|j| b.var(format!("x{i}_{j}"), true)).collect::<Result<Vec<_>>>()?);
    }
    let mut chains = Vec::with_capacity(g.n());
    for i in 1..=g.n() {
        let d = g.neighbors(i - 1).len();
        chains.push((1..=d).map(|l| b.var(format!("y{i}_{l}"), true)).collect::<Result<Vec<_>>>()?);
    }
    for cs in &copies {
        for (j, &a) in cs.iter().enumerate() {
            for (j2, &c) in cs.iter().enumerate() {
                if j != j2 {
                    b.constraint(imp, vec![a, c])?;
                }
            }
        }
    }
    for i in 0..g.n() {
        let nb = g.neighbors(i);
        let y = &chains[i];
        let Some(&last) = y.last() else {
            b.constraint(imp, vec![copies[i][0], x])?;
            continue;
        };
        b.constraint(imp, vec![copies[nb[0]][0], y[0]])?;
        for l in 1..nb.len() {
            b.constraint(rel, vec![copies[nb[l]][0], y[l - 1], y[l]])?;
        }
        b.constraint(rel, vec![copies[i][0], last, x])?;
    }
    let total = b.base.len();
    for z in 0..total {
        if z != x {
            b.constraint(imp, vec![x, z])?;
        }
    }
    let k = s * t + s - 1;
    let expected = if g.has_dominating_set(t) { Answer::Yes } else { Answer::No };
    let inst = b.finish(k)?;
    Ok(Gadget::new(
        inst,
        "domset",
        json!({"n": g.n(), "m": g.m(), "t": t, "S": s, "k": k, "r_prime": rp.relation.name()}),
        Some(expected),
    ))
}

/// Reduces LS over `{R′, →}` to LS over `{R}` with the same budget.
///
/// Implications are first rewritten as `R′` constraints via
/// [`derive_implication`]. With `p` constraints and `P = max(p, k+1)`,
/// pairs `p0_i = 0`, `p1_i = 1` are added; constraint `i` takes its
/// constants from pair `i`, and for every ordered pair `(i, j)` the
/// constraints `R′(p0_i, p0_i, p0_j)` and `R′(p1_j, p1_j, p1_i)`, with
/// constants from pair `j`, pin the pairs.
pub fn gen_pad_rprime_to_r(src: &LsInstance, r: &Relation, rp: &RPrime) -> Result<Gadget> {
    let pattern = derive_implication(rp)?;
    let imp = common::implication();
    let sf = src.formula();
    let mut triples = Vec::with_capacity(sf.constraints.len());
    for c in &sf.constraints {
        let rel = &sf.relations[c.relation];
        if rel.same_tuples(&rp.relation) {
            triples.push([c.scope[0], c.scope[1], c.scope[2]]);
        } else if rel.same_tuples(&imp) {
            triples.push(pattern.apply(c.scope[0], c.scope[1]));
        } else {
            return Err(Error::Precondition(format!(
                "source relation {} is neither R' nor an implication",
                rel.name()
            )));
        }
    }
    let p = triples.len();
    let pairs = p.max(src.k() + 1);
    let mut b = Builder::new();
    let rel = b.relation(r.clone())?;
    for (v, name) in sf.variables.iter().enumerate() {
        b.var(name.clone(), src.base().get(v))?;
    }
    let mut zero = Vec::with_capacity(pairs);
    let mut one = Vec::with_capacity(pairs);
    for i in 1..=pairs {
        zero.push(b.var(format!("p0_{i}"), false)?);
        one.push(b.var(format!("p1_{i}"), true)?);
    }
    for (i, &xyz) in triples.iter().enumerate() {
        b.constraint(rel, rp.expand(xyz, zero[i], one[i]))?;
    }
    for i in 0..pairs {
        for j in 0..pairs {
            b.constraint(rel, rp.expand([zero[i], zero[i], zero[j]], zero[j], one[j]))?;
            b.constraint(rel, rp.expand([one[j], one[j], one[i]], zero[j], one[j]))?;
        }
    }
    let inst = b.finish(src.k())?;
    Ok(Gadget::new(
        inst,
        "pad-rprime",
        json!({
            "relation": r.name(),
            "roles": rp.roles,
            "implication": pattern,
            "source_constraints": p,
            "pairs": pairs,
            "k": src.k(),
        }),
        super::expected_from(src),
    ))
}
