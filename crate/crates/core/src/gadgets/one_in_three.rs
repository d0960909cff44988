use serde_json::json;

use super::{expected_from, require_or_language, Builder, Gadget};
use crate::error::{Error, Result};
use crate::formula::LsInstance;
use crate::relation::common;

/// Refuse to build gadgets with more variables than this.
const MAX_VARIABLES: usize = 50_000_000;

/// `10 n² m²`, the copy count that makes the reduction correct for every
/// source.
pub fn one_in_three_scale(n: usize, m: usize) -> usize {
    10usize.saturating_mul(n * n).saturating_mul(m * m)
}

/// Smallest copy count for which the weight and distance inequalities of
/// the reduction still hold for budget `k`: `2mk + 3m + 2`.
pub fn safe_one_in_three_scale(m: usize, k: usize) -> usize {
    2 * m * k + 3 * m + 2
}

/// Reduces LS over `{x ∨ y}` to LS over `{1-in-3, ≠}`.
///
/// Each variable `v` becomes `x0_v` plus copies `x1_v_i` with
/// `x0_v ≠ x1_v_i`, where there are `S - 2m` copies if `f(v) = 1` and `S`
/// otherwise; each `u ∨ v` becomes `1-in-3(x0_u, x0_v, y_c)`. The budget is
/// `k(S + 1) + m`. `scale` overrides `S = 10n²m²` (at least `2m + 2`); the
/// expected answer is only recorded when `S` is at least
/// [`safe_one_in_three_scale`].
pub fn gen_one_in_three_from_vc(src: &LsInstance, scale: Option<usize>) -> Result<Gadget> {
    require_or_language(src)?;
    let sf = src.formula();
    let n = sf.num_variables();
    let m = sf.constraints.len();
    if m == 0 {
        return Err(Error::InvalidParameter("source has no constraints".into()));
    }
    let s = match scale {
        Some(s) if s < 2 * m + 2 => {
            return Err(Error::InvalidParameter(format!("scale {s} is below 2m + 2 = {}", 2 * m + 2)));
        }
        Some(s) => s,
        None => one_in_three_scale(n, m),
    };
    let size = s.saturating_add(1).saturating_mul(n).saturating_add(m);
    if size > MAX_VARIABLES {
        return Err(Error::InvalidParameter(format!("gadget would need about {size} variables")));
    }
    let base = src.base();
    let mut b = Builder::new();
    let one = b.relation(common::one_in_three())?;
    let neq = b.relation(common::neq())?;
    let mut x0 = Vec::with_capacity(n);
    for (v, name) in sf.variables.iter().enumerate() {
        let f = base.get(v);
        let head = b.var(format!("x0_{name}"), !f)?;
        x0.push(head);
        let copies = if f { s - 2 * m } else { s };
        for i in 1..=copies {
            let c = b.var(format!("x1_{name}_{i}"), f)?;
            b.constraint(neq, vec![head, c])?;
        }
    }
    for (ci, c) in sf.constraints.iter().enumerate() {
        let (u, v) = (c.scope[0], c.scope[1]);
        // y is the one exactly when both heads are 0.
        let y = b.var(format!("y_{}", ci + 1), base.get(u) && base.get(v))?;
        b.constraint(one, vec![x0[u], x0[v], y])?;
    }
    let k = src.k() * (s + 1) + m;
    let exact = s >= safe_one_in_three_scale(m, src.k());
    let inst = b.finish(k)?;
    Ok(Gadget::new(
        inst,
        "one-in-three",
        json!({
            "source_variables": n,
            "source_constraints": m,
            "source_k": src.k(),
            "S": s,
            "scale_overridden": scale.is_some(),
            "k": k,
        }),
        if exact { expected_from(src) } else { None },
    ))
}

/// Replaces every `x ≠ y` by `1-in-3(x, y, z0_c)` and `1-in-3(z0_c, z0_c,
/// z1_c)`, which force `z0_c = 0`, `z1_c = 1`. The new variables can never
/// flip, so the budget is unchanged. Instances without `≠` come back as
/// they are.
pub fn neq_elimination(inst: &LsInstance) -> Result<LsInstance> {
    let f = inst.formula();
    let neq = common::neq();
    let is_neq = |c: &crate::formula::Constraint| f.relations[c.relation].same_tuples(&neq);
    if !f.constraints.iter().any(is_neq) {
        return Ok(inst.clone());
    }
    let mut b = Builder::new();
    let one = b.relation(common::one_in_three())?;
    let mut rel_map = vec![None; f.relations.len()];
    for id in f.used_relations() {
        let r = &f.relations[id];
        if !r.same_tuples(&neq) {
            rel_map[id] = Some(b.relation(r.clone())?);
        }
    }
    for (v, name) in f.variables.iter().enumerate() {
        b.var(name.clone(), inst.base().get(v))?;
    }
    let mut count = 0;
    for c in &f.constraints {
        if is_neq(c) {
            count += 1;
            let z0 = b.var(format!("z0_{count}"), false)?;
            let z1 = b.var(format!("z1_{count}"), true)?;
            b.constraint(one, vec![c.scope[0], c.scope[1], z0])?;
            b.constraint(one, vec![z0, z0, z1])?;
        } else {
            b.constraint(rel_map[c.relation].expect("used relation"), c.scope.clone())?;
        }
    }
    b.finish(inst.k())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{Assignment, Formula};

    fn or_src(base: &[u8], k: usize) -> LsInstance {
        let mut f = Formula::new();
        let or = f.add_relation(common::or2()).unwrap();
        f.add_variable("a").unwrap();
        f.add_variable("b").unwrap();
        f.add_constraint(or, vec![0, 1]).unwrap();
        LsInstance::new(f, Assignment::from_bits(base), k).unwrap()
    }

    #[test]
    fn sizes_at_full_scale() {
        let src = or_src(&[1, 1], 1);
        let g = gen_one_in_three_from_vc(&src, None).unwrap();
        let s = one_in_three_scale(2, 1);
        assert_eq!(s, 40);
        // Two heads, 2·(S - 2) copies, one y.
        assert_eq!(g.instance.num_variables(), 2 + 2 * (s - 2) + 1);
        assert_eq!(g.instance.k(), s + 1 + 1);
    }

    #[test]
    fn scale_override_bounds() {
        let src = or_src(&[1, 0], 1);
        assert!(gen_one_in_three_from_vc(&src, Some(3)).is_err());
        let g = gen_one_in_three_from_vc(&src, Some(4)).unwrap();
        assert_eq!(g.expected(), None);
        let g = gen_one_in_three_from_vc(&src, Some(safe_one_in_three_scale(1, 1))).unwrap();
        assert!(g.expected().is_some());
    }

    #[test]
    fn neq_gadget_projects_to_disequality() {
        let mut f = Formula::new();
        let neq = f.add_relation(common::neq()).unwrap();
        f.add_variable("x").unwrap();
        f.add_variable("y").unwrap();
        f.add_constraint(neq, vec![0, 1]).unwrap();
        let inst = LsInstance::new(f, Assignment::from_bits(&[1, 0]), 1).unwrap();
        let out = neq_elimination(&inst).unwrap();
        assert_eq!(out.num_variables(), 4);
        let of = out.formula();
        let mut projections: Vec<(bool, bool)> = (0..16u64)
            .map(|m| Assignment::from_mask(m, 4))
            .filter(|a| of.satisfies(a).unwrap())
            .map(|a| (a.get(0), a.get(1)))
            .collect();
        projections.sort();
        projections.dedup();
        assert_eq!(projections, vec![(false, true), (true, false)]);
        assert_eq!(out.k(), 1);

        let plain = or_src(&[1, 1], 1);
        assert_eq!(neq_elimination(&plain).unwrap(), plain);
    }
}
