//! Three-valued planarity check for small graphs: Euler-type edge bounds,
//! then a face-embedding search on each biconnected block.

use crate::graph::{Graph, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Planarity {
    Planar,
    NonPlanar,
    Unknown,
}

/// Default work budget for [`planarity_check`], in elementary face scans.
pub const DEFAULT_STEPS: u64 = 50_000_000;

pub fn planarity_check(g: &Graph) -> Planarity {
    planarity_check_with_budget(g, DEFAULT_STEPS)
}

pub fn planarity_check_with_budget(g: &Graph, budget: u64) -> Planarity {
    let (n, m) = (g.n(), g.edge_count());
    if n >= 3 && m > 3 * n - 6 {
        return Planarity::NonPlanar;
    }
    if n >= 3 && m > 2 * n - 4 && g.bipartition().is_some() {
        return Planarity::NonPlanar;
    }
    let mut steps = 0u64;
    for block in blocks(g) {
        if block.len() < 3 {
            continue;
        }
        match embed_block(g, &block, &mut steps, budget) {
            Some(true) => {}
            Some(false) => return Planarity::NonPlanar,
            None => return Planarity::Unknown,
        }
    }
    Planarity::Planar
}

/// Edge sets of the biconnected blocks.
fn blocks(g: &Graph) -> Vec<Vec<(usize, usize)>> {
    struct St<'a> {
        g: &'a Graph,
        disc: Vec<usize>,
        low: Vec<usize>,
        time: usize,
        stack: Vec<(usize, usize)>,
        out: Vec<Vec<(usize, usize)>>,
    }
    fn dfs(s: &mut St, u: usize, parent: Option<usize>) {
        s.time += 1;
        s.disc[u] = s.time;
        s.low[u] = s.time;
        for v in s.g.neighbors(u).iter() {
            if s.disc[v] == 0 {
                s.stack.push((u, v));
                dfs(s, v, Some(u));
                s.low[u] = s.low[u].min(s.low[v]);
                if s.low[v] >= s.disc[u] {
                    let mut block = Vec::new();
                    while let Some(e) = s.stack.pop() {
                        block.push(e);
                        if e == (u, v) {
                            break;
                        }
                    }
                    s.out.push(block);
                }
            } else if Some(v) != parent && s.disc[v] < s.disc[u] {
                s.stack.push((u, v));
                s.low[u] = s.low[u].min(s.disc[v]);
            }
        }
    }
    let n = g.n();
    let mut s = St { g, disc: vec![0; n], low: vec![0; n], time: 0, stack: Vec::new(), out: Vec::new() };
    for r in 0..n {
        if s.disc[r] == 0 {
            dfs(&mut s, r, None);
        }
    }
    s.out
}

struct Fragment {
    attachments: VertexSet,
    /// Uniquely an unembedded edge between embedded vertices, or a component
    /// of the unembedded vertices.
    body: Result<(usize, usize), VertexSet>,
}

/// Demoucron-Malgrange-Pertuiset embedding of one biconnected block.
/// `None` means the step budget ran out.
fn embed_block(g: &Graph, edges: &[(usize, usize)], steps: &mut u64, budget: u64) -> Option<bool> {
    let n = g.n();
    let mut adj = vec![VertexSet::EMPTY; n];
    let mut verts = VertexSet::EMPTY;
    for &(u, v) in edges {
        adj[u].insert(v);
        adj[v].insert(u);
        verts.insert(u);
        verts.insert(v);
    }
    let total_edges = edges.len();

    let cycle = find_cycle(&adj, verts)?;
    let mut emb_v: VertexSet = cycle.iter().copied().collect();
    let mut emb_adj = vec![VertexSet::EMPTY; n];
    for i in 0..cycle.len() {
        let (a, b) = (cycle[i], cycle[(i + 1) % cycle.len()]);
        emb_adj[a].insert(b);
        emb_adj[b].insert(a);
    }
    let mut emb_edges = cycle.len();
    let mut faces: Vec<Vec<usize>> = vec![cycle.clone(), cycle];

    while emb_edges < total_edges {
        let frags = fragments(&adj, verts, emb_v, &emb_adj);
        let mut pick: Option<(usize, usize)> = None;
        for (fi, fr) in frags.iter().enumerate() {
            let mut admissible = Vec::new();
            for (ci, face) in faces.iter().enumerate() {
                *steps += face.len() as u64;
                let fset: VertexSet = face.iter().copied().collect();
                if fr.attachments.is_subset(fset) {
                    admissible.push(ci);
                }
            }
            if *steps > budget {
                return None;
            }
            match admissible.len() {
                0 => return Some(false),
                1 => {
                    pick = Some((fi, admissible[0]));
                    break;
                }
                _ => {
                    if pick.is_none() {
                        pick = Some((fi, admissible[0]));
                    }
                }
            }
        }
        let (fi, ci) = pick.expect("unembedded edges imply a fragment");
        let path = fragment_path(&adj, &frags[fi], emb_v);
        for w in path.windows(2) {
            emb_adj[w[0]].insert(w[1]);
            emb_adj[w[1]].insert(w[0]);
            emb_edges += 1;
        }
        for &v in &path {
            emb_v.insert(v);
        }
        let face = faces.swap_remove(ci);
        let (f1, f2) = split_face(&face, &path);
        faces.push(f1);
        faces.push(f2);
    }
    Some(true)
}

fn find_cycle(adj: &[VertexSet], verts: VertexSet) -> Option<Vec<usize>> {
    // In a biconnected block every edge lies on a cycle.
    let u = verts.min()?;
    let v = adj[u].min()?;
    path_avoiding_edge(adj, u, v)
}

/// Shortest u-v path not using edge uv, as a vertex list from v back to u.
fn path_avoiding_edge(adj: &[VertexSet], u: usize, v: usize) -> Option<Vec<usize>> {
    let n = adj.len();
    let mut prev = vec![usize::MAX; n];
    let mut seen = VertexSet::singleton(u);
    let mut queue = std::collections::VecDeque::from([u]);
    while let Some(x) = queue.pop_front() {
        for y in adj[x].iter() {
            if (x == u && y == v) || seen.contains(y) {
                continue;
            }
            seen.insert(y);
            prev[y] = x;
            if y == v {
                let mut p = vec![v];
                let mut z = v;
                while z != u {
                    z = prev[z];
                    p.push(z);
                }
                return Some(p);
            }
            queue.push_back(y);
        }
    }
    None
}

fn fragments(adj: &[VertexSet], verts: VertexSet, emb_v: VertexSet, emb_adj: &[VertexSet]) -> Vec<Fragment> {
    let mut out = Vec::new();
    for u in emb_v.iter() {
        for v in (adj[u] & emb_v).iter().filter(|&v| v > u) {
            if !emb_adj[u].contains(v) {
                out.push(Fragment { attachments: VertexSet::singleton(u) | VertexSet::singleton(v), body: Ok((u, v)) });
            }
        }
    }
    let mut rest = verts - emb_v;
    while let Some(s) = rest.min() {
        let mut comp = VertexSet::singleton(s);
        let mut frontier = comp;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for x in frontier.iter() {
                next |= adj[x];
            }
            next = (next - emb_v) - comp;
            comp |= next;
            frontier = next;
        }
        rest = rest - comp;
        let mut att = VertexSet::EMPTY;
        for x in comp.iter() {
            att |= adj[x] & emb_v;
        }
        out.push(Fragment { attachments: att, body: Err(comp) });
    }
    out
}

/// A path through the fragment joining two distinct attachment vertices.
fn fragment_path(adj: &[VertexSet], fr: &Fragment, emb_v: VertexSet) -> Vec<usize> {
    match fr.body {
        Ok((u, v)) => vec![u, v],
        Err(comp) => {
            let a = fr.attachments.min().expect("fragment has attachments");
            let start = (adj[a] & comp).min().expect("attachment touches component");
            let n = adj.len();
            let mut prev = vec![usize::MAX; n];
            let mut seen = VertexSet::singleton(start);
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                let exits = (adj[x] & emb_v) - VertexSet::singleton(a);
                if let Some(b) = exits.min() {
                    let mut inner = vec![x];
                    let mut z = x;
                    while z != start {
                        z = prev[z];
                        inner.push(z);
                    }
                    inner.reverse();
                    let mut path = vec![a];
                    path.extend(inner);
                    path.push(b);
                    return path;
                }
                for y in (adj[x] & comp).iter() {
                    if !seen.contains(y) {
                        seen.insert(y);
                        prev[y] = x;
                        queue.push_back(y);
                    }
                }
            }
            unreachable!("biconnected fragment has two attachments")
        }
    }
}

/// Splits a facial cycle along a path whose endpoints lie on it.
fn split_face(face: &[usize], path: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let a = path[0];
    let b = *path.last().unwrap();
    let i = face.iter().position(|&x| x == a).unwrap();
    let rot: Vec<usize> = face[i..].iter().chain(face[..i].iter()).copied().collect();
    let j = rot.iter().position(|&x| x == b).unwrap();
    let interior = &path[1..path.len() - 1];
    let mut f1: Vec<usize> = rot[..=j].to_vec();
    f1.extend(interior.iter().rev());
    let mut f2: Vec<usize> = rot[j..].to_vec();
    f2.push(a);
    f2.extend(interior.iter());
    (f1, f2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> Graph {
        let mut g = Graph::new(n).unwrap();
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v).unwrap();
            }
        }
        g
    }

    fn k33() -> Graph {
        let mut g = Graph::new(6).unwrap();
        for u in 0..3 {
            for v in 3..6 {
                g.add_edge(u, v).unwrap();
            }
        }
        g
    }

    fn petersen() -> Graph {
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((i, i + 5));
            e.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::from_edges(10, &e).unwrap()
    }

    #[test]
    fn classic_examples() {
        assert_eq!(planarity_check(&complete(5)), Planarity::NonPlanar);
        let c6 = Graph::from_edges(6, &(0..6).map(|i| (i, (i + 1) % 6)).collect::<Vec<_>>()).unwrap();
        assert_eq!(planarity_check(&c6), Planarity::Planar);
        assert_eq!(planarity_check(&k33()), Planarity::NonPlanar);
        assert_eq!(planarity_check(&complete(4)), Planarity::Planar);
    }

    #[test]
    fn subdivisions_that_pass_edge_bounds() {
        // Petersen graph: 15 edges on 10 vertices, contains a K_{3,3} subdivision.
        assert_eq!(planarity_check(&petersen()), Planarity::NonPlanar);
        // K_5 with one edge subdivided twice.
        let mut g = Graph::new(7).unwrap();
        for u in 0..5 {
            for v in u + 1..5 {
                if (u, v) != (0, 1) {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        g.add_edge(0, 5).unwrap();
        g.add_edge(5, 6).unwrap();
        g.add_edge(6, 1).unwrap();
        assert_eq!(planarity_check(&g), Planarity::NonPlanar);
    }

    #[test]
    fn planar_families() {
        // Cube graph Q3 and a 4x4 grid with diagonals in each row.
        let mut q3 = Graph::new(8).unwrap();
        for u in 0..8usize {
            for b in 0..3 {
                let v = u ^ (1 << b);
                if u < v {
                    q3.add_edge(u, v).unwrap();
                }
            }
        }
        assert_eq!(planarity_check(&q3), Planarity::Planar);
        let mut grid = Graph::new(16).unwrap();
        for r in 0..4 {
            for c in 0..4 {
                let v = r * 4 + c;
                if c + 1 < 4 {
                    grid.add_edge(v, v + 1).unwrap();
                }
                if r + 1 < 4 {
                    grid.add_edge(v, v + 4).unwrap();
                }
                if c + 1 < 4 && r + 1 < 4 {
                    grid.add_edge(v, v + 5).unwrap();
                }
            }
        }
        assert_eq!(planarity_check(&grid), Planarity::Planar);
        // Two K_4 blocks sharing a cut vertex, plus a pendant tree.
        let g = Graph::from_edges(
            9,
            &[
                (0, 1),
                (0, 2),
                (0, 3),
                (1, 2),
                (1, 3),
                (2, 3),
                (3, 4),
                (3, 5),
                (3, 6),
                (4, 5),
                (4, 6),
                (5, 6),
                (6, 7),
                (7, 8),
            ],
        )
        .unwrap();
        assert_eq!(planarity_check(&g), Planarity::Planar);
    }

    #[test]
    fn tiny_budget_gives_unknown() {
        let mut q3 = Graph::new(8).unwrap();
        for u in 0..8usize {
            for b in 0..3 {
                let v = u ^ (1 << b);
                if u < v {
                    q3.add_edge(u, v).unwrap();
                }
            }
        }
        assert_eq!(planarity_check_with_budget(&q3, 1), Planarity::Unknown);
    }
}
