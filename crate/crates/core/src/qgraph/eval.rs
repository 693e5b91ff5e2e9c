//! Bottom-up evaluation of the game value over a decomposition tree.

use super::tree::{validate_tree, DecompositionTree, Flavor, Node};
use crate::error::{Error, Result};
use crate::game::GameVariant;
use crate::graph::{induced, Graph, VertexSet};
use crate::solver::head::analyze_head;
use crate::solver::{cg_with, SolveOptions};

/// Closed form for matched spiders of order `n` with clique size `k`.
pub fn matched_spider_value(n: usize, k: usize) -> Result<usize> {
    if k < 2 || n < 2 * k {
        return Err(Error::domain(format!("matched spider needs n >= 2k >= 4, got n = {n}, k = {k}")));
    }
    let half = k / 2;
    let loss = if n % 2 == 1 && half % 2 == 1 { half.div_ceil(2) } else { half / 2 };
    Ok(n.div_ceil(2) - loss)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QgraphValue {
    pub value: usize,
    /// Work units: one per tree node visited plus the order of every
    /// constant-size subgraph handed to the exact solver.
    pub ops: u64,
}

pub fn cg_qgraph(g: &Graph, t: &DecompositionTree) -> Result<QgraphValue> {
    cg_qgraph_with(g, t, &SolveOptions::default())
}

pub fn cg_qgraph_with(g: &Graph, t: &DecompositionTree, opts: &SolveOptions) -> Result<QgraphValue> {
    validate_tree(g, t).map_err(|d| Error::domain(format!("invalid tree at {d}")))?;
    let mut e = Evaluator { g, q: t.q, opts, ops: 0 };
    let (value, _) = e.eval(&t.root)?;
    Ok(QgraphValue { value, ops: e.ops })
}

/// How a pseudo-spider node is resolved.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum PseudoCase {
    /// The whole node is small enough to solve directly.
    Exact,
    /// Head analysis plus the parity rule for the large `R`.
    Combine,
}

pub(crate) fn pseudo_case(q: usize, r: usize) -> PseudoCase {
    if r <= 2 * q {
        PseudoCase::Exact
    } else {
        PseudoCase::Combine
    }
}

pub(crate) struct Evaluator<'a> {
    pub g: &'a Graph,
    pub q: usize,
    pub opts: &'a SolveOptions,
    pub ops: u64,
}

impl Evaluator<'_> {
    pub fn span(&mut self, node: &Node) -> VertexSet {
        self.ops += 1;
        match node {
            Node::Leaf(s) => *s,
            Node::Union(a, b) | Node::Join(a, b) => self.span(a) | self.span(b),
            Node::Spider { s, k, r, .. } => {
                let head: VertexSet = s.iter().chain(k).copied().collect();
                head | r.as_ref().map_or(VertexSet::EMPTY, |r| self.span(r))
            }
            Node::PseudoSpider { s, k, r } => *s | *k | r.as_ref().map_or(VertexSet::EMPTY, |r| self.span(r)),
        }
    }

    pub fn exact(&mut self, within: VertexSet) -> Result<usize> {
        self.ops += 1 + within.len() as u64;
        if within.is_empty() {
            return Ok(0);
        }
        let sub = induced(self.g, within)?.graph;
        Ok(cg_with(&sub, &GameVariant::Plain, self.opts)?.value)
    }

    /// Value and vertex set of `node`.
    pub fn eval(&mut self, node: &Node) -> Result<(usize, VertexSet)> {
        self.ops += 1;
        match node {
            Node::Leaf(s) => Ok((self.exact(*s)?, *s)),
            Node::Union(a, b) => {
                let (va, sa) = self.eval(a)?;
                let (vb, sb) = self.eval(b)?;
                Ok((va.max(vb), sa | sb))
            }
            Node::Join(a, b) => {
                let all = self.span(a) | self.span(b);
                Ok((all.len().div_ceil(2), all))
            }
            Node::Spider { flavor, k, .. } => {
                let all = self.span(node);
                let n = all.len();
                let value = match flavor {
                    Flavor::Antimatched if k.len() >= 3 => n.div_ceil(2),
                    _ => matched_spider_value(n, k.len())?,
                };
                Ok((value, all))
            }
            Node::PseudoSpider { s, k, r } => {
                let rs = r.as_ref().map_or(VertexSet::EMPTY, |r| self.span(r));
                let v = self.pseudo(*s, *k, rs, r.as_deref())?;
                Ok((v, *s | *k | rs))
            }
        }
    }

    fn pseudo(&mut self, s: VertexSet, k: VertexSet, rs: VertexSet, r: Option<&Node>) -> Result<usize> {
        let all = s | k | rs;
        if rs.is_empty() {
            return self.exact(all);
        }
        if k.is_empty() {
            // No edges between S and R: a disjoint union.
            let vr = self.eval(r.expect("nonempty R has a subtree"))?.0;
            return Ok(self.exact(s)?.max(vr));
        }
        // S vertices not reaching K form small components of their own.
        self.ops += all.len() as u64;
        let main = self.g.component_within(all, k.min().expect("K nonempty"));
        let stray = all - main;
        let side = if stray.is_empty() { 0 } else { self.exact(stray)? };
        let s = s & main;
        let v = match pseudo_case(self.q, rs.len()) {
            PseudoCase::Exact => self.exact(main)?,
            PseudoCase::Combine => {
                let head = s | k;
                self.ops += 1 + head.len() as u64;
                let ind = induced(self.g, head)?;
                let a = analyze_head(&ind.graph, ind.project(k))?;
                combine(a.c_star, a.exists_sa2, a.exists_sb2, head.len(), rs.len())
            }
        };
        Ok(v.max(side))
    }
}

/// Value of a large pseudo-spider from its head analysis.
pub fn combine(c_star: usize, sa2: bool, sb2: bool, head: usize, r: usize) -> usize {
    if r.is_multiple_of(2) {
        return c_star + r / 2;
    }
    let up = c_star + r.div_ceil(2);
    let down = c_star + r / 2;
    if sa2 {
        up
    } else if sb2 {
        down
    } else if head.is_multiple_of(2) {
        up
    } else {
        down
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qgraph::tree::parse_tree;

    #[test]
    fn formula_examples() {
        assert_eq!(matched_spider_value(4, 2).unwrap(), 2);
        assert_eq!(matched_spider_value(8, 4).unwrap(), 3);
        assert_eq!(matched_spider_value(7, 3).unwrap(), 3);
        assert!(matched_spider_value(5, 3).is_err());
        assert!(matched_spider_value(4, 1).is_err());
    }

    #[test]
    fn cograph_join() {
        let g = Graph::from_edges(3, &[(0, 1), (0, 2)]).unwrap();
        let t = parse_tree("q 4\n(join (leaf 0) (union (leaf 1) (leaf 2)))").unwrap();
        assert_eq!(cg_qgraph(&g, &t).unwrap().value, 2);
    }

    #[test]
    fn invalid_tree_is_an_error() {
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let t = parse_tree("q 4\n(union (leaf 0) (leaf 1))").unwrap();
        assert!(matches!(cg_qgraph(&g, &t), Err(Error::Domain(_))));
    }

    #[test]
    fn combine_rule() {
        assert_eq!(combine(2, false, false, 3, 4), 4);
        assert_eq!(combine(2, true, false, 3, 5), 5);
        assert_eq!(combine(2, false, true, 4, 5), 4);
        assert_eq!(combine(2, false, false, 4, 5), 5);
        assert_eq!(combine(2, false, false, 3, 5), 4);
    }
}
