//! Graphs generated together with a decomposition tree.

use rand::Rng;

use super::tree::{DecompositionTree, Flavor, Node};
use crate::error::{Error, Result};
use crate::generators::{spider, RKind, SpiderFlavor};
use crate::graph::{Graph, VertexSet};

#[derive(Clone, Debug)]
pub struct Instance {
    pub label: String,
    pub graph: Graph,
    pub tree: DecompositionTree,
}

/// Tree of the graph induced on `vs`, which must have the shape `kind`.
fn r_tree(kind: RKind, vs: &[usize], q: usize) -> Result<Option<Node>> {
    let mut it = vs.iter().map(|&v| Node::leaf([v]));
    let Some(first) = it.next() else {
        return Ok(None);
    };
    Ok(Some(match kind {
        RKind::Independent => it.fold(first, Node::union),
        RKind::Clique => it.fold(first, Node::join),
        RKind::Path if vs.len() <= q.max(3) => Node::leaf(vs.iter().copied()),
        RKind::Path => return Err(Error::domain("a path R longer than q has no cograph tree")),
    }))
}

/// The generated spider with its spider tree, `q = 4`.
pub fn spider_instance(flavor: Flavor, k: usize, r: usize, kind: RKind) -> Result<Instance> {
    let sf = match flavor {
        Flavor::Matched => SpiderFlavor::Matched,
        Flavor::Antimatched => SpiderFlavor::Antimatched,
    };
    let fam = spider(sf, k, r, kind)?;
    let q = 4;
    let rs: Vec<usize> = (2 * k..2 * k + r).collect();
    let root = Node::Spider {
        flavor,
        s: (0..k).collect(),
        k: (k..2 * k).collect(),
        f: (0..k).map(|i| (i, k + i)).collect(),
        r: r_tree(kind, &rs, q)?.map(Box::new),
    };
    Ok(Instance {
        label: format!("{}(k={k},r={r},{kind:?})", fam.name),
        graph: fam.graph,
        tree: DecompositionTree { q, root },
    })
}

/// Every spider with `|K|` in `ks` and `|R| <= max_r`, both flavours and all
/// shapes of `R`.
pub fn spider_suite(ks: &[usize], max_r: usize) -> Result<Vec<Instance>> {
    let mut out = Vec::new();
    for flavor in [Flavor::Matched, Flavor::Antimatched] {
        for &k in ks {
            for r in 0..=max_r {
                let kinds: &[RKind] = match r {
                    0 | 1 => &[RKind::Independent],
                    2 => &[RKind::Independent, RKind::Clique],
                    _ => &[RKind::Independent, RKind::Clique, RKind::Path],
                };
                for &kind in kinds {
                    out.push(spider_instance(flavor, k, r, kind)?);
                }
            }
        }
    }
    Ok(out)
}

fn grow_cotree<R: Rng>(rng: &mut R, g: &mut Graph, leaves: usize, next: &mut usize) -> Result<(Node, VertexSet)> {
    if leaves == 1 {
        let v = *next;
        *next += 1;
        return Ok((Node::leaf([v]), VertexSet::singleton(v)));
    }
    let left = rng.gen_range(1..leaves);
    let (a, sa) = grow_cotree(rng, g, left, next)?;
    let (b, sb) = grow_cotree(rng, g, leaves - left, next)?;
    if rng.gen_bool(0.5) {
        for u in sa.iter() {
            for v in sb.iter() {
                g.add_edge(u, v)?;
            }
        }
        Ok((Node::join(a, b), sa | sb))
    } else {
        Ok((Node::union(a, b), sa | sb))
    }
}

/// A random cograph on `leaves` vertices with a binary cotree, `q = 4`.
pub fn random_cotree<R: Rng>(leaves: usize, rng: &mut R) -> Result<Instance> {
    if leaves == 0 {
        return Err(Error::domain("a cotree needs at least one leaf"));
    }
    let mut g = Graph::new(leaves)?;
    let (root, _) = grow_cotree(rng, &mut g, leaves, &mut 0)?;
    Ok(Instance { label: format!("cotree({leaves})"), graph: g, tree: DecompositionTree { q: 4, root } })
}

/// A pseudo-spider with `S = 0..s`, `K = s..s+k` and a random cograph `R`
/// after them. Edges inside the head are random; `K` is joined to `R`.
pub fn random_pseudo_spider<R: Rng>(s: usize, k: usize, r: usize, q: usize, rng: &mut R) -> Result<Instance> {
    if s + k > q {
        return Err(Error::domain(format!("head of order {} exceeds q = {q}", s + k)));
    }
    let head = s + k;
    let n = head + r;
    let mut g = Graph::new(n)?;
    for u in 0..head {
        for v in u + 1..head {
            if v >= s && rng.gen_bool(0.5) {
                g.add_edge(u, v)?;
            }
        }
    }
    let r_node = if r == 0 {
        None
    } else {
        let sub = random_cotree(r, rng)?;
        for (u, v) in sub.graph.edges() {
            g.add_edge(head + u, head + v)?;
        }
        for x in s..head {
            for y in head..n {
                g.add_edge(x, y)?;
            }
        }
        Some(Box::new(shift(&sub.tree.root, head)))
    };
    let root = Node::PseudoSpider { s: (0..s).collect(), k: (s..head).collect(), r: r_node };
    Ok(Instance { label: format!("pspider(s={s},k={k},r={r})"), graph: g, tree: DecompositionTree { q, root } })
}

fn shift_set(vs: VertexSet, by: usize) -> VertexSet {
    vs.iter().map(|v| v + by).collect()
}

/// Renumbers every vertex of a tree by `by`.
pub fn shift(node: &Node, by: usize) -> Node {
    let sv = |xs: &[usize]| xs.iter().map(|v| v + by).collect::<Vec<_>>();
    match node {
        Node::Leaf(s) => Node::Leaf(shift_set(*s, by)),
        Node::Union(a, b) => Node::union(shift(a, by), shift(b, by)),
        Node::Join(a, b) => Node::join(shift(a, by), shift(b, by)),
        Node::Spider { flavor, s, k, f, r } => Node::Spider {
            flavor: *flavor,
            s: sv(s),
            k: sv(k),
            f: f.iter().map(|&(a, b)| (a + by, b + by)).collect(),
            r: r.as_ref().map(|r| Box::new(shift(r, by))),
        },
        Node::PseudoSpider { s, k, r } => Node::PseudoSpider {
            s: shift_set(*s, by),
            k: shift_set(*k, by),
            r: r.as_ref().map(|r| Box::new(shift(r, by))),
        },
    }
}
