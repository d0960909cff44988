use serde_json::json;

use super::{Builder, Gadget, Graph};
use crate::decision::Answer;
use crate::error::{Error, Result};
use crate::relation::common;

/// LS over `{x ∨ y}` that is a yes-instance iff `g` has a `t`-clique
/// containing `x`.
///
/// With `d = (t-1)/2`: one variable `u_a_b` per edge (base 1), `d` copies
/// `v{v}_{i}` per vertex `v ≠ x` and `d - 1` copies for `x` (base 0), and
/// `u_e ∨ v_i` for every incidence. Budget `t(t-1) - 1`.
pub fn gen_vc_ls_from_clique(g: &Graph, x: usize, t: usize) -> Result<Gadget> {
    if t < 3 || t.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!("t must be odd and at least 3, got {t}")));
    }
    if x >= g.n() {
        return Err(Error::InvalidParameter(format!("vertex {x} is not in 0..{}", g.n())));
    }
    let d = (t - 1) / 2;
    let mut b = Builder::new();
    let or = b.relation(common::or2())?;
    let edge_vars = g
        .edges()
        .iter()
        .map(|&(u, v)| b.var(format!("u_{u}_{v}"), true))
        .collect::<Result<Vec<_>>>()?;
    let mut copies = Vec::with_capacity(g.n());
    for v in 0..g.n() {
        let count = if v == x { d - 1 } else { d };
        copies.push((1..=count).map(|i| b.var(format!("v{v}_{i}"), false)).collect::<Result<Vec<_>>>()?);
    }
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        for &c in copies[u].iter().chain(&copies[v]) {
            b.constraint(or, vec![edge_vars[e], c])?;
        }
    }
    let k = t * (t - 1) - 1;
    let expected = if g.has_clique_containing(x, t) { Answer::Yes } else { Answer::No };
    let inst = b.finish(k)?;
    Ok(Gadget::new(
        inst,
        "clique-vc",
        json!({"n": g.n(), "m": g.m(), "x": x, "t": t, "k": k}),
        Some(expected),
    ))
}
