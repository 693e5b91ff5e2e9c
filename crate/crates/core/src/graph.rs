//! Simple undirected graphs over dense vertex indices, backed by word-packed
//! neighbour sets.

use std::fmt;
use std::ops::{BitAnd, BitAndAssign, BitOr, BitOrAssign, Not, Sub};

use crate::error::{Error, Result};

/// Maximum number of vertices a [`Graph`] may hold.
pub const CAPACITY: usize = 128;

/// A subset of `{0, .., CAPACITY-1}` packed into a single `u128`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(pub u128);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= CAPACITY);
        if n == CAPACITY {
            VertexSet(u128::MAX)
        } else {
            VertexSet((1u128 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1u128 << v)
    }

    #[inline]
    pub fn contains(self, v: usize) -> bool {
        v < CAPACITY && (self.0 >> v) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u128 << v;
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u128 << v);
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Lowest member, if any.
    #[inline]
    pub fn min(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    pub fn max(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(127 - self.0.leading_zeros() as usize)
        }
    }

    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersects(self, other: VertexSet) -> bool {
        self.0 & other.0 != 0
    }

    pub fn iter(self) -> VertexIter {
        VertexIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Low 64 bits; callers guarantee every member is below 64.
    #[inline]
    pub fn as_u64(self) -> u64 {
        debug_assert!(self.0 >> 64 == 0);
        self.0 as u64
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

pub struct VertexIter(u128);

impl Iterator for VertexIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

impl BitOr for VertexSet {
    type Output = VertexSet;
    fn bitor(self, rhs: Self) -> Self {
        VertexSet(self.0 | rhs.0)
    }
}

impl BitOrAssign for VertexSet {
    fn bitor_assign(&mut self, rhs: Self) {
        self.0 |= rhs.0;
    }
}

impl BitAnd for VertexSet {
    type Output = VertexSet;
    fn bitand(self, rhs: Self) -> Self {
        VertexSet(self.0 & rhs.0)
    }
}

impl BitAndAssign for VertexSet {
    fn bitand_assign(&mut self, rhs: Self) {
        self.0 &= rhs.0;
    }
}

impl Sub for VertexSet {
    type Output = VertexSet;
    fn sub(self, rhs: Self) -> Self {
        VertexSet(self.0 & !rhs.0)
    }
}

impl Not for VertexSet {
    type Output = VertexSet;
    fn not(self) -> Self {
        VertexSet(!self.0)
    }
}

/// A set of vertex-disjoint vertex pairs. When attached to a graph every pair
/// is expected to be an edge; see [`Matching::validate`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Matching {
    pub pairs: Vec<(usize, usize)>,
}

impl Matching {
    pub fn new(pairs: Vec<(usize, usize)>) -> Self {
        let pairs = pairs.into_iter().map(|(a, b)| if a <= b { (a, b) } else { (b, a) }).collect();
        Matching { pairs }
    }

    pub fn vertices(&self) -> VertexSet {
        self.pairs.iter().fold(VertexSet::EMPTY, |acc, &(a, b)| acc | VertexSet::singleton(a) | VertexSet::singleton(b))
    }

    pub fn partner(&self, v: usize) -> Option<usize> {
        self.pairs.iter().find_map(|&(a, b)| {
            if a == v {
                Some(b)
            } else if b == v {
                Some(a)
            } else {
                None
            }
        })
    }

    pub fn validate(&self, g: &Graph) -> Result<()> {
        let mut seen = VertexSet::EMPTY;
        for &(a, b) in &self.pairs {
            if !g.has_edge(a, b) {
                return Err(Error::domain(format!("matching pair {a}-{b} is not an edge")));
            }
            if seen.contains(a) || seen.contains(b) {
                return Err(Error::domain(format!("vertex repeated in matching at pair {a}-{b}")));
            }
            seen.insert(a);
            seen.insert(b);
        }
        Ok(())
    }
}

/// Simple undirected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
    labels: Option<Vec<String>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph").field("n", &self.n).field("edges", &self.edges()).finish()
    }
}

impl Graph {
    pub fn new(n: usize) -> Result<Self> {
        if n > CAPACITY {
            return Err(Error::Capacity { n, limit: CAPACITY });
        }
        Ok(Graph { n, adj: vec![VertexSet::EMPTY; n], labels: None })
    }

    /// Builds a graph from an edge list. Duplicate edges are merged.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::new(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u >= self.n || v >= self.n {
            return Err(Error::domain(format!("edge {u}-{v} out of range for n = {}", self.n)));
        }
        if u == v {
            return Err(Error::domain(format!("self-loop at vertex {u}")));
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        if u < self.n && v < self.n {
            self.adj[u].remove(v);
            self.adj[v].remove(u);
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].contains(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|s| s.len()).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in self.adj[u].iter() {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// `N(s)`: vertices outside `s` adjacent to some member of `s`.
    pub fn open_neighborhood(&self, s: VertexSet) -> VertexSet {
        self.closed_neighborhood(s) - s
    }

    /// `N[s] = s ∪ N(s)`.
    pub fn closed_neighborhood(&self, s: VertexSet) -> VertexSet {
        s.iter().fold(s, |acc, v| acc | self.adj[v])
    }

    /// The connected component of `G[within]` containing `start`.
    pub fn component_within(&self, within: VertexSet, start: usize) -> VertexSet {
        let mut comp = VertexSet::singleton(start) & within;
        let mut frontier = comp;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for v in frontier.iter() {
                next |= self.adj[v];
            }
            next &= within - comp;
            comp |= next;
            frontier = next;
        }
        comp
    }

    /// Connected components of `G[within]`, sorted by minimum vertex.
    pub fn components_within(&self, within: VertexSet) -> Vec<VertexSet> {
        let mut rest = within;
        let mut out = Vec::new();
        while let Some(v) = rest.min() {
            let c = self.component_within(within, v);
            rest = rest - c;
            out.push(c);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.component_within(self.vertices(), 0) == self.vertices()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn set_labels(&mut self, labels: Vec<String>) -> Result<()> {
        if labels.len() != self.n {
            return Err(Error::domain("label count differs from vertex count"));
        }
        self.labels = Some(labels);
        Ok(())
    }

    /// True iff every vertex has degree `d`.
    pub fn is_regular(&self, d: usize) -> bool {
        (0..self.n).all(|v| self.degree(v) == d)
    }

    /// Proper 2-colouring if one exists.
    pub fn bipartition(&self) -> Option<VertexSet> {
        let mut side = VertexSet::EMPTY;
        let mut seen = VertexSet::EMPTY;
        for root in 0..self.n {
            if seen.contains(root) {
                continue;
            }
            seen.insert(root);
            let mut stack = vec![root];
            while let Some(v) = stack.pop() {
                for w in self.adj[v].iter() {
                    if !seen.contains(w) {
                        seen.insert(w);
                        if !side.contains(v) {
                            side.insert(w);
                        }
                        stack.push(w);
                    } else if side.contains(w) == side.contains(v) {
                        return None;
                    }
                }
            }
        }
        Some(side)
    }

    /// Eccentricity maximum over all pairs; `None` if disconnected.
    pub fn diameter(&self) -> Option<usize> {
        let all = self.vertices();
        let mut best = 0;
        for s in 0..self.n {
            let mut reached = VertexSet::singleton(s);
            let mut frontier = reached;
            let mut d = 0;
            while reached != all {
                let next = self.closed_neighborhood(frontier) - reached;
                if next.is_empty() {
                    return None;
                }
                reached |= next;
                frontier = next;
                d += 1;
            }
            best = best.max(d);
        }
        Some(best)
    }

    /// Graph with the vertices of `s` deleted (re-indexed).
    pub fn without(&self, s: VertexSet) -> Result<Induced> {
        induced(self, self.vertices() - s)
    }
}

/// Connected components of `g`, sorted by minimum vertex index.
pub fn components(g: &Graph) -> Vec<VertexSet> {
    g.components_within(g.vertices())
}

/// An induced subgraph together with the map from its vertices back to the
/// parent graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Induced {
    pub graph: Graph,
    pub to_parent: Vec<usize>,
}

impl Induced {
    /// Maps a parent vertex set onto the induced graph's indices, dropping
    /// vertices outside the subgraph.
    pub fn project(&self, s: VertexSet) -> VertexSet {
        self.to_parent.iter().enumerate().filter(|(_, &p)| s.contains(p)).map(|(i, _)| i).collect()
    }

    /// Maps a local vertex set back to parent indices.
    pub fn lift(&self, s: VertexSet) -> VertexSet {
        s.iter().map(|v| self.to_parent[v]).collect()
    }
}

/// `G[s]`, vertices renumbered in increasing order of their parent index.
pub fn induced(g: &Graph, s: VertexSet) -> Result<Induced> {
    if let Some(max) = s.max() {
        if max >= g.n() {
            return Err(Error::domain(format!("vertex {max} out of range for n = {}", g.n())));
        }
    }
    let to_parent = s.to_vec();
    let mut local = vec![usize::MAX; g.n()];
    for (i, &p) in to_parent.iter().enumerate() {
        local[p] = i;
    }
    let mut h = Graph::new(to_parent.len())?;
    for (i, &p) in to_parent.iter().enumerate() {
        for q in (g.neighbors(p) & s).iter() {
            h.adj[i].insert(local[q]);
        }
    }
    if let Some(labels) = g.labels() {
        h.labels = Some(to_parent.iter().map(|&p| labels[p].clone()).collect());
    }
    Ok(Induced { graph: h, to_parent })
}

/// True iff `G[s]` is connected and `N[s] = V(G)`. The empty set qualifies
/// only on the empty graph.
pub fn is_connected_dominating(g: &Graph, s: VertexSet) -> bool {
    match s.min() {
        None => g.n() == 0,
        Some(v) => g.component_within(s, v) == s && g.closed_neighborhood(s) == g.vertices(),
    }
}

/// Order of the largest connected component of `G[s]`.
pub fn largest_component(g: &Graph, s: VertexSet) -> usize {
    let mut rest = s;
    let mut best = 0;
    while let Some(v) = rest.min() {
        let c = g.component_within(s, v);
        best = best.max(c.len());
        rest = rest - c;
    }
    best
}

/// Parses the line-oriented graph format: `n <count>` then `e <u> <v>` lines;
/// `#` starts a comment.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut g: Option<Graph> = None;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let tag = parts.next().unwrap_or("");
        let nums: Vec<&str> = parts.collect();
        let parse = |s: &str| -> Result<usize> {
            s.parse::<usize>().map_err(|_| Error::parse(line_no, format!("expected a vertex index, found `{s}`")))
        };
        match tag {
            "n" => {
                if g.is_some() {
                    return Err(Error::parse(line_no, "duplicate `n` line"));
                }
                if nums.len() != 1 {
                    return Err(Error::parse(line_no, "expected `n <count>`"));
                }
                let n = parse(nums[0])?;
                g = Some(Graph::new(n).map_err(|e| Error::parse(line_no, e.to_string()))?);
            }
            "e" => {
                let graph = g.as_mut().ok_or_else(|| Error::parse(line_no, "edge before `n` line"))?;
                if nums.len() != 2 {
                    return Err(Error::parse(line_no, "expected `e <u> <v>`"));
                }
                let (u, v) = (parse(nums[0])?, parse(nums[1])?);
                graph.add_edge(u, v).map_err(|e| Error::parse(line_no, e.to_string()))?;
            }
            // Hex instances and other formats extend this one; callers that
            // accept them strip their own lines first.
            other => return Err(Error::parse(line_no, format!("unknown line tag `{other}`"))),
        }
    }
    g.ok_or_else(|| Error::parse(0, "missing `n` line"))
}

/// Writes the graph format with edges sorted lexicographically.
pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("n {}\n", g.n());
    for (u, v) in g.edges() {
        out.push_str(&format!("e {u} {v}\n"));
    }
    out
}

/// Parses a whitespace-separated list of vertex indices (`#` comments allowed).
pub fn parse_vertex_set(text: &str) -> Result<VertexSet> {
    let mut s = VertexSet::EMPTY;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        for tok in line.split_whitespace() {
            let v: usize =
                tok.parse().map_err(|_| Error::parse(i + 1, format!("expected a vertex index, found `{tok}`")))?;
            if v >= CAPACITY {
                return Err(Error::parse(i + 1, format!("vertex {v} exceeds capacity")));
            }
            s.insert(v);
        }
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    fn complete(n: usize) -> Graph {
        let mut g = Graph::new(n).unwrap();
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v).unwrap();
            }
        }
        g
    }

    #[test]
    fn components_of_two_triangles() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        let cs = components(&g);
        assert_eq!(cs.len(), 2);
        assert!(cs.iter().all(|c| c.len() == 3));
        assert_eq!(cs[0].min(), Some(0));
    }

    #[test]
    fn components_of_complete_and_edgeless() {
        assert_eq!(components(&complete(5)), vec![VertexSet::full(5)]);
        let e = Graph::new(3).unwrap();
        let cs = components(&e);
        assert_eq!(cs, vec![VertexSet::singleton(0), VertexSet::singleton(1), VertexSet::singleton(2)]);
    }

    #[test]
    fn induced_examples() {
        let k4 = complete(4);
        let h = induced(&k4, VertexSet::from_iter([0, 2, 3])).unwrap();
        assert_eq!(h.graph, complete(3));
        assert_eq!(h.to_parent, vec![0, 2, 3]);

        let c5 = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        let e = induced(&c5, VertexSet::from_iter([3, 4])).unwrap();
        assert_eq!(e.graph.edges(), vec![(0, 1)]);

        let empty = induced(&c5, VertexSet::EMPTY).unwrap();
        assert_eq!(empty.graph.n(), 0);

        assert!(induced(&c5, VertexSet::singleton(7)).is_err());
    }

    #[test]
    fn connected_dominating_examples() {
        let star = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert!(is_connected_dominating(&star, VertexSet::singleton(0)));
        let p4 = path(4);
        assert!(is_connected_dominating(&p4, VertexSet::from_iter([1, 2])));
        assert!(!is_connected_dominating(&p4, VertexSet::from_iter([0, 3])));
        assert!(!is_connected_dominating(&p4, VertexSet::EMPTY));
        assert!(is_connected_dominating(&Graph::new(0).unwrap(), VertexSet::EMPTY));
    }

    #[test]
    fn rejects_loops_and_oversize() {
        let mut g = Graph::new(3).unwrap();
        assert!(g.add_edge(1, 1).is_err());
        assert!(g.add_edge(0, 3).is_err());
        assert!(Graph::new(CAPACITY + 1).is_err());
        assert!(Graph::new(CAPACITY).is_ok());
    }

    #[test]
    fn format_round_trip_sorts_edges() {
        let g = Graph::from_edges(4, &[(3, 2), (0, 1), (2, 0)]).unwrap();
        let text = write_graph(&g);
        assert_eq!(text, "n 4\ne 0 1\ne 0 2\ne 2 3\n");
        assert_eq!(parse_graph(&text).unwrap(), g);
        let commented = "# a comment\nn 2\n\ne 0 1 # trailing\n";
        assert_eq!(parse_graph(commented).unwrap().edge_count(), 1);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = parse_graph("n 3\ne 0 5\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
        let err = parse_graph("e 0 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        let err = parse_graph("n 3\nx 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn bipartite_and_diameter() {
        assert!(path(5).bipartition().is_some());
        assert!(complete(3).bipartition().is_none());
        assert_eq!(path(5).diameter(), Some(4));
        assert_eq!(Graph::new(2).unwrap().diameter(), None);
    }

    #[test]
    fn matching_validation() {
        let p4 = path(4);
        assert!(Matching::new(vec![(0, 1), (2, 3)]).validate(&p4).is_ok());
        assert!(Matching::new(vec![(0, 2)]).validate(&p4).is_err());
        assert!(Matching::new(vec![(0, 1), (1, 2)]).validate(&p4).is_err());
        assert_eq!(Matching::new(vec![(1, 0)]).partner(0), Some(1));
    }
}
