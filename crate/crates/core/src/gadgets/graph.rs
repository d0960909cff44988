use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Simple undirected graph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    /// Edges as `(u, v)` with `u < v`, sorted.
    edges: Vec<(usize, usize)>,
    neighbors: Vec<Vec<usize>>,
}

impl Graph {
    /// Duplicate edges collapse; self-loops and out-of-range endpoints are
    /// rejected.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!("edge ({u}, {v}) has an endpoint outside 0..{n}")));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at {u}")));
            }
            set.insert((u.min(v), u.max(v)));
        }
        let edges: Vec<_> = set.into_iter().collect();
        let mut neighbors = vec![Vec::new(); n];
        for &(u, v) in &edges {
            neighbors[u].push(v);
            neighbors[v].push(u);
        }
        for list in &mut neighbors {
            list.sort_unstable();
        }
        Ok(Self { n, edges, neighbors })
    }

    /// Graph on `n` vertices whose edge set is given by a bitmask over the
    /// pairs `(0,1), (0,2), ..., (1,2), ...` in lexicographic order.
    pub fn from_edge_mask(n: usize, mask: u64) -> Self {
        let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        let edges = pairs.enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, e)| e);
        Self::new(n, edges).expect("pairs are valid edges")
    }

    pub fn complete(n: usize) -> Self {
        Self::from_edge_mask(n, u64::MAX)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.neighbors[u].binary_search(&v).is_ok()
    }

    /// Edge-list text: the vertex count, then one `u v` pair per line.
    /// Blank lines and `#` comments are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (line, first) = lines.next().ok_or(Error::Parse {
            line: 1,
            message: "missing vertex count".into(),
        })?;
        let n = first.parse::<usize>().map_err(|e| Error::Parse {
            line,
            message: format!("bad vertex count {first:?}: {e}"),
        })?;
        let mut edges = Vec::new();
        for (line, l) in lines {
            let parts: Vec<_> = l.split_whitespace().collect();
            let [u, v] = parts[..] else {
                return Err(Error::Parse {
                    line,
                    message: format!("expected two vertices, got {l:?}"),
                });
            };
            let num = |s: &str| {
                s.parse::<usize>().map_err(|e| Error::Parse {
                    line,
                    message: format!("bad vertex {s:?}: {e}"),
                })
            };
            edges.push((num(u)?, num(v)?));
        }
        Self::new(n, edges)
    }

    pub fn to_edge_list(&self) -> String {
        let mut s = format!("{}\n", self.n);
        for (u, v) in &self.edges {
            writeln!(s, "{u} {v}").unwrap();
        }
        s
    }

    fn is_clique(&self, vs: &[usize]) -> bool {
        vs.iter().enumerate().all(|(i, &u)| vs[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }

    /// Whether some `t`-clique contains `x`, by trying every `(t-1)`-subset
    /// of its neighbourhood.
    pub fn has_clique_containing(&self, x: usize, t: usize) -> bool {
        if t == 0 {
            return false;
        }
        let nb = &self.neighbors[x];
        let mut chosen = vec![x];
        fn extend(g: &Graph, nb: &[usize], start: usize, need: usize, chosen: &mut Vec<usize>) -> bool {
            if need == 0 {
                return g.is_clique(chosen);
            }
            for i in start..nb.len() {
                if chosen.iter().all(|&c| c == chosen[0] || g.has_edge(c, nb[i])) {
                    chosen.push(nb[i]);
                    if extend(g, nb, i + 1, need - 1, chosen) {
                        return true;
                    }
                    chosen.pop();
                }
            }
            false
        }
        extend(self, nb, 0, t - 1, &mut chosen)
    }

    /// Whether some set of at most `t` vertices dominates the graph.
    /// Exhaustive over vertex subsets; needs `n < 64`.
    pub fn has_dominating_set(&self, t: usize) -> bool {
        assert!(self.n < 64, "dominating-set check is exhaustive");
        let closed: Vec<u64> = (0..self.n)
            .map(|v| self.neighbors[v].iter().fold(1u64 << v, |m, &u| m | 1 << u))
            .collect();
        let all = if self.n == 0 { 0 } else { u64::MAX >> (64 - self.n) };
        fn pick(closed: &[u64], all: u64, start: usize, left: usize, covered: u64) -> bool {
            if covered == all {
                return true;
            }
            if left == 0 {
                return false;
            }
            (start..closed.len()).any(|v| pick(closed, all, v + 1, left - 1, covered | closed[v]))
        }
        pick(&closed, all, 0, t, 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let g = Graph::parse("# triangle\n3\n0 1\n1 2 # spoke\n\n2 0\n").unwrap();
        assert_eq!(g.edges(), &[(0, 1), (0, 2), (1, 2)]);
        assert_eq!(Graph::parse(&g.to_edge_list()).unwrap(), g);
        assert!(matches!(Graph::parse("2\n0 1 2\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(Graph::parse("2\n0 0\n"), Err(Error::InvalidGraph(_))));
        assert!(matches!(Graph::parse("2\n0 5\n"), Err(Error::InvalidGraph(_))));
        assert!(matches!(Graph::parse(""), Err(Error::Parse { .. })));
    }

    #[test]
    fn cliques_and_domination() {
        let k4 = Graph::complete(4);
        assert_eq!(k4.m(), 6);
        assert!(k4.has_clique_containing(2, 4));
        let path = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        assert!(!path.has_clique_containing(1, 3));
        assert!(path.has_clique_containing(0, 2));
        assert!(path.has_dominating_set(1));
        assert!(!Graph::new(4, [(0, 1), (2, 3)]).unwrap().has_dominating_set(1));
        assert!(Graph::new(1, []).unwrap().has_dominating_set(1));
        assert!(!Graph::new(1, []).unwrap().has_dominating_set(0));
    }
}
