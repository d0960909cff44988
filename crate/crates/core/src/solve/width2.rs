//! Component flipping for width-2 affine languages.
//!
//! Variables are linked when some constraint entails `x = y` or `x ≠ y`
//! between them. Flipping a whole component keeps every constraint true,
//! and any improving flip set is a union of components, so it suffices to
//! look for a single component of size at most `k` with more ones than
//! zeros.

use petgraph::unionfind::UnionFind;

use super::{require, Counter, SolveConfig};
use crate::classify::entailed_pairs;
use crate::decision::{Algorithm, Decision};
use crate::error::Result;
use crate::formula::{LsInstance, VarId};

pub fn width2_components(inst: &LsInstance, cfg: &SolveConfig) -> Result<Decision> {
    require(inst, Algorithm::Width2, "width-2 affine", |c| c.width2_affine)?;
    let counter = Counter::new(cfg.node_budget);
    let formula = inst.formula();
    let n = inst.num_variables();

    let pairs: Vec<_> = formula.relations.iter().map(entailed_pairs).collect();
    let mut uf = UnionFind::<usize>::new(n);
    for c in &formula.constraints {
        for p in &pairs[c.relation] {
            uf.union(c.scope[p.i], c.scope[p.j]);
        }
    }

    // Components in order of their smallest member.
    let mut components: Vec<Vec<VarId>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for v in 0..n {
        let root = uf.find(v);
        if slot[root] == usize::MAX {
            slot[root] = components.len();
            components.push(Vec::new());
        }
        components[slot[root]].push(v);
    }

    let base = inst.base();
    for comp in &components {
        counter.visit()?;
        let ones = comp.iter().filter(|&&v| base.get(v)).count();
        if comp.len() <= inst.k() && 2 * ones > comp.len() {
            let mut w = base.clone();
            for &v in comp {
                w.flip(v);
            }
            return Ok(Decision::yes(w, counter.stats(Algorithm::Width2)));
        }
    }
    Ok(Decision::no(counter.stats(Algorithm::Width2)))
}
