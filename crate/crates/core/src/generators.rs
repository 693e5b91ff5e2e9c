//! Graph families with fixed index layouts and per-vertex role tags.

use std::collections::BTreeMap;

use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, Matching, VertexSet};

/// A generated graph with the metadata strategies rely on.
#[derive(Clone, Debug)]
pub struct Family {
    pub name: String,
    pub params: BTreeMap<String, usize>,
    pub graph: Graph,
    pub roles: Vec<String>,
    /// Blocks of the construction (clique copies, 6-cycles, rows).
    pub parts: Vec<VertexSet>,
    pub matching: Option<Matching>,
}

impl Family {
    fn new(name: &str, params: &[(&str, usize)], graph: Graph, roles: Vec<String>) -> Self {
        debug_assert_eq!(roles.len(), graph.n());
        Family {
            name: name.to_string(),
            params: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            graph,
            roles,
            parts: Vec::new(),
            matching: None,
        }
    }

    pub fn param(&self, key: &str) -> Option<usize> {
        self.params.get(key).copied()
    }

    /// Graph format followed by a `# role:` comment block.
    pub fn to_text(&self) -> String {
        let mut out = format!("# family: {}", self.name);
        for (k, v) in &self.params {
            out.push_str(&format!(" {k}={v}"));
        }
        out.push('\n');
        out.push_str(&crate::graph::write_graph(&self.graph));
        for (v, r) in self.roles.iter().enumerate() {
            out.push_str(&format!("# role: {v} {r}\n"));
        }
        if let Some(m) = &self.matching {
            for (a, b) in &m.pairs {
                out.push_str(&format!("# matching: {a} {b}\n"));
            }
        }
        out
    }
}

/// A family name plus integer parameters, as given on the command line.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FamilySpec {
    pub family: String,
    pub params: BTreeMap<String, usize>,
}

impl FamilySpec {
    pub fn new(family: &str, params: &[(&str, usize)]) -> Self {
        FamilySpec { family: family.to_string(), params: params.iter().map(|(k, v)| (k.to_string(), *v)).collect() }
    }

    /// Parses `k=v` tokens.
    pub fn parse(family: &str, args: &[String]) -> Result<Self> {
        let mut params = BTreeMap::new();
        for a in args {
            let (k, v) = a.split_once('=').ok_or_else(|| Error::domain(format!("expected key=value, found `{a}`")))?;
            let v: usize =
                v.parse().map_err(|_| Error::domain(format!("parameter `{k}` must be a non-negative integer")))?;
            params.insert(k.to_string(), v);
        }
        Ok(FamilySpec { family: family.to_string(), params })
    }

    fn get(&self, key: &str) -> Result<usize> {
        self.params
            .get(key)
            .copied()
            .ok_or_else(|| Error::domain(format!("family `{}` needs parameter `{key}`", self.family)))
    }

    fn get_or(&self, key: &str, default: usize) -> usize {
        self.params.get(key).copied().unwrap_or(default)
    }
}

pub const FAMILIES: &[&str] = &[
    "path",
    "cycle",
    "complete",
    "complete_bipartite",
    "star",
    "wheel",
    "petersen",
    "prism",
    "moebius_ladder",
    "hypercube",
    "disjoint_cliques",
    "clique_chain",
    "regular4_chain",
    "regular5_chain",
    "matched_spider",
    "antimatched_spider",
    "two_cliques_bridge",
    "clique_pendant_path",
    "subdivided_star",
    "cartesian_grid",
    "king_grid_2rows",
    "hex_patch",
    "gnm",
    "random_connected",
    "random_cubic",
];

pub fn generate(spec: &FamilySpec) -> Result<Family> {
    let s = spec;
    match s.family.as_str() {
        "path" => path(s.get("n")?),
        "cycle" => cycle(s.get("n")?),
        "complete" => complete(s.get("n")?),
        "complete_bipartite" => complete_bipartite(s.get("a")?, s.get("b")?),
        "star" => star(s.get("leaves")?),
        "wheel" => wheel(s.get("rim")?),
        "petersen" => Ok(petersen()),
        "prism" => prism(s.get("k")?),
        "moebius_ladder" => moebius_ladder(s.get("k")?),
        "hypercube" => hypercube(s.get("d")?),
        "disjoint_cliques" => disjoint_cliques(s.get("size")?, s.get("copies")?),
        "clique_chain" => clique_chain(s.get("d")?, s.get("n")?),
        "regular4_chain" => regular4_chain(s.get("n")?),
        "regular5_chain" => regular5_chain(s.get("d")?, s.get("n")?),
        "matched_spider" | "antimatched_spider" => {
            let flavor = if s.family == "matched_spider" { SpiderFlavor::Matched } else { SpiderFlavor::Antimatched };
            let rkind = match s.get_or("rkind", 0) {
                0 => RKind::Independent,
                1 => RKind::Clique,
                2 => RKind::Path,
                k => return Err(Error::domain(format!("rkind {k} unknown (0 independent, 1 clique, 2 path)"))),
            };
            spider(flavor, s.get("k")?, s.get_or("r", 0), rkind)
        }
        "two_cliques_bridge" => two_cliques_bridge(s.get("d")?),
        "clique_pendant_path" => clique_pendant_path(s.get("n")?),
        "subdivided_star" => subdivided_star(s.get("leaves")?),
        "cartesian_grid" => cartesian_grid(s.get("rows")?, s.get("cols")?),
        "king_grid_2rows" => king_grid_2rows(s.get("m")?),
        "hex_patch" => hex_patch(s.get("cells")?, s.params.get("width").copied()),
        "gnm" => gnm(s.get("n")?, s.get("m")?, s.get_or("seed", 0) as u64),
        "random_connected" => random_connected(s.get("n")?, s.get("m")?, s.get_or("seed", 0) as u64),
        "random_cubic" => random_cubic(s.get("n")?, s.get_or("seed", 0) as u64),
        f => Err(Error::domain(format!("unknown family `{f}`"))),
    }
}

fn tags(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::domain(msg()))
    }
}

pub fn path(n: usize) -> Result<Family> {
    let e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Ok(Family::new("path", &[("n", n)], Graph::from_edges(n, &e)?, tags("p", n)))
}

pub fn cycle(n: usize) -> Result<Family> {
    check(n >= 3, || "a cycle needs n >= 3".into())?;
    let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Ok(Family::new("cycle", &[("n", n)], Graph::from_edges(n, &e)?, tags("c", n)))
}

pub fn complete(n: usize) -> Result<Family> {
    let mut g = Graph::new(n)?;
    for u in 0..n {
        for v in u + 1..n {
            g.add_edge(u, v)?;
        }
    }
    Ok(Family::new("complete", &[("n", n)], g, tags("k", n)))
}

pub fn complete_bipartite(a: usize, b: usize) -> Result<Family> {
    let mut g = Graph::new(a + b)?;
    for u in 0..a {
        for v in a..a + b {
            g.add_edge(u, v)?;
        }
    }
    let roles = (0..a + b).map(|v| if v < a { format!("left{v}") } else { format!("right{}", v - a) }).collect();
    Ok(Family::new("complete_bipartite", &[("a", a), ("b", b)], g, roles))
}

pub fn star(leaves: usize) -> Result<Family> {
    let e: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
    let mut roles = vec!["center".to_string()];
    roles.extend((1..=leaves).map(|i| format!("leaf{i}")));
    Ok(Family::new("star", &[("leaves", leaves)], Graph::from_edges(leaves + 1, &e)?, roles))
}

/// Hub 0 joined to a rim cycle on `1..=rim`.
pub fn wheel(rim: usize) -> Result<Family> {
    check(rim >= 3, || "a wheel needs rim >= 3".into())?;
    let mut e: Vec<_> = (1..=rim).map(|i| (0, i)).collect();
    e.extend((0..rim).map(|i| (1 + i, 1 + (i + 1) % rim)));
    let mut roles = vec!["hub".to_string()];
    roles.extend((1..=rim).map(|i| format!("rim{i}")));
    Ok(Family::new("wheel", &[("rim", rim)], Graph::from_edges(rim + 1, &e)?, roles))
}

/// Outer 5-cycle `0..5`, spokes `i -- i+5`, inner pentagram on `5..10`.
pub fn petersen() -> Family {
    let mut e = Vec::new();
    for i in 0..5 {
        e.push((i, (i + 1) % 5));
        e.push((i, i + 5));
        e.push((5 + i, 5 + (i + 2) % 5));
    }
    let g = Graph::from_edges(10, &e).expect("valid");
    let roles = (0..10).map(|v| if v < 5 { format!("outer{v}") } else { format!("inner{}", v - 5) }).collect();
    Family::new("petersen", &[], g, roles)
}

/// Two k-cycles `0..k` and `k..2k` with rungs `i -- k+i`.
pub fn prism(k: usize) -> Result<Family> {
    check(k >= 3, || "a prism needs k >= 3".into())?;
    let mut e = Vec::new();
    for i in 0..k {
        e.push((i, (i + 1) % k));
        e.push((k + i, k + (i + 1) % k));
        e.push((i, k + i));
    }
    Ok(Family::new("prism", &[("k", k)], Graph::from_edges(2 * k, &e)?, tags("x", 2 * k)))
}

/// Cycle on `0..2k` plus the k long diagonals `i -- i+k`.
pub fn moebius_ladder(k: usize) -> Result<Family> {
    check(k >= 2, || "a Moebius ladder needs k >= 2".into())?;
    let n = 2 * k;
    let mut e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    e.extend((0..k).map(|i| (i, i + k)));
    Ok(Family::new("moebius_ladder", &[("k", k)], Graph::from_edges(n, &e)?, tags("x", n)))
}

pub fn hypercube(d: usize) -> Result<Family> {
    check(d <= 7, || "hypercube dimension must be at most 7".into())?;
    let n = 1 << d;
    let mut g = Graph::new(n)?;
    for u in 0..n {
        for b in 0..d {
            let v = u ^ (1 << b);
            if u < v {
                g.add_edge(u, v)?;
            }
        }
    }
    Ok(Family::new("hypercube", &[("d", d)], g, tags("q", n)))
}

/// `copies` disjoint copies of `K_size`; copy i occupies `[i*size, (i+1)*size)`.
pub fn disjoint_cliques(size: usize, copies: usize) -> Result<Family> {
    let n = size * copies;
    let mut g = Graph::new(n)?;
    let mut parts = Vec::new();
    let mut roles = Vec::new();
    for c in 0..copies {
        let base = c * size;
        for u in 0..size {
            roles.push(format!("clique{c}"));
            for v in u + 1..size {
                g.add_edge(base + u, base + v)?;
            }
        }
        parts.push((base..base + size).collect());
    }
    let mut f = Family::new("disjoint_cliques", &[("size", size), ("copies", copies)], g, roles);
    f.parts = parts;
    Ok(f)
}

/// `N` copies of `K_{d+1}`, each missing the edge `u_i v_i`, chained by
/// `v_i u_{i+1}` (indices mod N). Copy i occupies `[i(d+1), (i+1)(d+1))`
/// with `u_i` at offset 0, `v_i` at offset 1 and internals after.
pub fn clique_chain(d: usize, copies: usize) -> Result<Family> {
    check(d >= 3 && copies >= 2, || "clique_chain needs d >= 3 and n >= 2".into())?;
    let b = d + 1;
    let n = b * copies;
    let mut g = Graph::new(n)?;
    let mut roles = Vec::with_capacity(n);
    let mut parts = Vec::new();
    for i in 0..copies {
        let base = i * b;
        for x in 0..b {
            for y in x + 1..b {
                if (x, y) != (0, 1) {
                    g.add_edge(base + x, base + y)?;
                }
            }
            roles.push(match x {
                0 => format!("u{i}"),
                1 => format!("v{i}"),
                _ => format!("internal{i}"),
            });
        }
        g.add_edge(base + 1, ((i + 1) % copies) * b)?;
        parts.push((base..base + b).collect());
    }
    check(g.is_regular(d), || "clique_chain is not regular".into())?;
    let mut f = Family::new("clique_chain", &[("d", d), ("n", copies)], g, roles);
    f.parts = parts;
    Ok(f)
}

/// Vertices `u_1^i = 2i`, `u_2^i = 2i + 1`; both of layer i are joined to
/// both of layer i+1 (mod N).
pub fn regular4_chain(layers: usize) -> Result<Family> {
    check(layers >= 3, || "regular4_chain needs n >= 3".into())?;
    let n = 2 * layers;
    let mut g = Graph::new(n)?;
    for i in 0..layers {
        let j = (i + 1) % layers;
        for a in 0..2 {
            for b in 0..2 {
                g.add_edge(2 * i + a, 2 * j + b)?;
            }
        }
    }
    check(g.is_regular(4), || "regular4_chain is not 4-regular".into())?;
    let roles = (0..n).map(|v| format!("u{}_{}", v % 2 + 1, v / 2)).collect();
    let mut f = Family::new("regular4_chain", &[("n", layers)], g, roles);
    f.parts = (0..layers).map(|i| [2 * i, 2 * i + 1].into_iter().collect()).collect();
    Ok(f)
}

/// `N` copies of `K_{d+1}`; `v_j^i` sits at `i(d+1) + (j-1)`. Inside each copy
/// the edges `v1v3, v1v4, v2v3, v2v4` are removed, and `v3^i, v4^i` are joined
/// to `v1^{i+1}, v2^{i+1}`.
pub fn regular5_chain(d: usize, copies: usize) -> Result<Family> {
    check(d >= 5 && copies >= 2, || "regular5_chain needs d >= 5 and n >= 2".into())?;
    let b = d + 1;
    let n = b * copies;
    let mut g = Graph::new(n)?;
    let removed = [(0, 2), (0, 3), (1, 2), (1, 3)];
    let mut roles = Vec::with_capacity(n);
    for i in 0..copies {
        let base = i * b;
        for x in 0..b {
            for y in x + 1..b {
                if !removed.contains(&(x, y)) {
                    g.add_edge(base + x, base + y)?;
                }
            }
            roles.push(format!("v{}_{}", x + 1, i));
        }
        let next = ((i + 1) % copies) * b;
        for x in [2, 3] {
            for y in [0, 1] {
                g.add_edge(base + x, next + y)?;
            }
        }
    }
    check(g.is_regular(d), || "regular5_chain is not regular".into())?;
    let mut f = Family::new("regular5_chain", &[("d", d), ("n", copies)], g, roles);
    f.parts = (0..copies).map(|i| (i * b..(i + 1) * b).collect()).collect();
    Ok(f)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpiderFlavor {
    Matched,
    Antimatched,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RKind {
    Independent,
    Clique,
    Path,
}

/// Spider with `S = 0..k`, `K = k..2k`, `f(s_i) = k_i`, and `R` from `2k`.
pub fn spider(flavor: SpiderFlavor, k: usize, r: usize, rkind: RKind) -> Result<Family> {
    check(k >= 2, || "a spider needs |K| >= 2".into())?;
    let n = 2 * k + r;
    let mut g = Graph::new(n)?;
    for i in 0..k {
        for j in 0..k {
            let adjacent = match flavor {
                SpiderFlavor::Matched => i == j,
                SpiderFlavor::Antimatched => i != j,
            };
            if adjacent {
                g.add_edge(i, k + j)?;
            }
            if i < j {
                g.add_edge(k + i, k + j)?;
            }
        }
        for x in 2 * k..n {
            g.add_edge(k + i, x)?;
        }
    }
    for x in 2 * k..n {
        for y in x + 1..n {
            let edge = match rkind {
                RKind::Independent => false,
                RKind::Clique => true,
                RKind::Path => y == x + 1,
            };
            if edge {
                g.add_edge(x, y)?;
            }
        }
    }
    let roles = (0..n)
        .map(|v| {
            if v < k {
                format!("s{v}")
            } else if v < 2 * k {
                format!("k{}", v - k)
            } else {
                format!("r{}", v - 2 * k)
            }
        })
        .collect();
    let name = match flavor {
        SpiderFlavor::Matched => "matched_spider",
        SpiderFlavor::Antimatched => "antimatched_spider",
    };
    let rk = match rkind {
        RKind::Independent => 0,
        RKind::Clique => 1,
        RKind::Path => 2,
    };
    let mut f = Family::new(name, &[("k", k), ("r", r), ("rkind", rk)], g, roles);
    f.parts = vec![(0..k).collect(), (k..2 * k).collect(), (2 * k..n).collect()];
    Ok(f)
}

/// Two copies of `K_d` on `0..d` and `d..2d`, bridged by `d-1 -- d`.
pub fn two_cliques_bridge(d: usize) -> Result<Family> {
    check(d >= 3, || "two_cliques_bridge needs d >= 3".into())?;
    let mut g = Graph::new(2 * d)?;
    for side in 0..2 {
        for u in 0..d {
            for v in u + 1..d {
                g.add_edge(side * d + u, side * d + v)?;
            }
        }
    }
    g.add_edge(d - 1, d)?;
    let roles = (0..2 * d).map(|v| format!("side{}", v / d)).collect();
    let mut f = Family::new("two_cliques_bridge", &[("d", d)], g, roles);
    f.parts = vec![(0..d).collect(), (d..2 * d).collect()];
    Ok(f)
}

/// `K_N` on `0..N` (N odd) with the pendant path `0 -- N -- N+1`.
pub fn clique_pendant_path(order: usize) -> Result<Family> {
    check(order >= 3 && order % 2 == 1, || "clique_pendant_path needs an odd n >= 3".into())?;
    let n = order + 2;
    let mut g = complete(order)?.graph;
    let mut h = Graph::new(n)?;
    for (u, v) in g.edges() {
        h.add_edge(u, v)?;
    }
    h.add_edge(0, order)?;
    h.add_edge(order, order + 1)?;
    g = h;
    check(g.edge_count() == (n - 2) * (n - 3) / 2 + 2, || "edge count mismatch".into())?;
    let mut roles = tags("k", order);
    roles[0] = "u".into();
    roles.push("v".into());
    roles.push("w".into());
    Ok(Family::new("clique_pendant_path", &[("n", order)], g, roles))
}

/// Star with centre 0 and leaves `1..=leaves`, the edge to the last leaf
/// subdivided by vertex `leaves + 1`.
pub fn subdivided_star(leaves: usize) -> Result<Family> {
    check(leaves >= 2 && leaves.is_multiple_of(2), || "subdivided_star needs an even number of leaves".into())?;
    let mut e: Vec<_> = (1..leaves).map(|i| (0, i)).collect();
    e.push((0, leaves + 1));
    e.push((leaves + 1, leaves));
    let mut roles = vec!["center".to_string()];
    roles.extend((1..=leaves).map(|i| format!("leaf{i}")));
    roles.push("subdivision".into());
    Ok(Family::new("subdivided_star", &[("leaves", leaves)], Graph::from_edges(leaves + 2, &e)?, roles))
}

/// `P_rows [] P_cols` with `v = r * cols + c`.
pub fn cartesian_grid(rows: usize, cols: usize) -> Result<Family> {
    check(rows >= 1 && cols >= 1, || "grid sides must be positive".into())?;
    let n = rows * cols;
    let mut g = Graph::new(n)?;
    for r in 0..rows {
        for c in 0..cols {
            let v = r * cols + c;
            if c + 1 < cols {
                g.add_edge(v, v + 1)?;
            }
            if r + 1 < rows {
                g.add_edge(v, v + cols)?;
            }
        }
    }
    let roles = (0..n).map(|v| format!("r{}c{}", v / cols, v % cols)).collect();
    let mut f = Family::new("cartesian_grid", &[("rows", rows), ("cols", cols)], g, roles);
    f.parts = (0..rows).map(|r| (r * cols..(r + 1) * cols).collect()).collect();
    Ok(f)
}

/// `P_2 strong-product P_m` with `v = r * m + c`.
pub fn king_grid_2rows(m: usize) -> Result<Family> {
    check(m >= 1, || "king grid needs m >= 1".into())?;
    let mut g = Graph::new(2 * m)?;
    for c in 0..m {
        g.add_edge(c, m + c)?;
        if c + 1 < m {
            g.add_edge(c, c + 1)?;
            g.add_edge(m + c, m + c + 1)?;
            g.add_edge(c, m + c + 1)?;
            g.add_edge(m + c, c + 1)?;
        }
    }
    let roles = (0..2 * m).map(|v| format!("r{}c{}", v / m, v % m)).collect();
    let mut f = Family::new("king_grid_2rows", &[("m", m)], g, roles);
    f.parts = vec![(0..m).collect(), (m..2 * m).collect()];
    Ok(f)
}

/// A patch of the hexagonal grid made of `cells` vertex-disjoint hexagons.
///
/// Hexagonal faces are indexed by triangular-lattice points `(a, b)`; grid
/// vertices are lattice triangles and two vertices are adjacent when their
/// triangles share two points. The faces with `a - b = 0 (mod 3)` partition
/// the vertices into 6-cycles and every other edge lies in a matching. Cells
/// are those faces at `p*(2,-1) + q*(1,1)`, taken row-major with `width`
/// cells per row (default: one row). The patch is the induced subgraph on
/// their vertices.
pub fn hex_patch(cells: usize, width: Option<usize>) -> Result<Family> {
    check(cells >= 1, || "hex_patch needs at least one cell".into())?;
    let width = width.unwrap_or(cells).max(1);
    let centres: Vec<(i64, i64)> = (0..cells)
        .map(|i| {
            let (p, q) = ((i % width) as i64, (i / width) as i64);
            (2 * p + q, -p + q)
        })
        .collect();
    // Triangles around a face centre, in cyclic order.
    type Tri = [(i64, i64); 3];
    let around = |(a, b): (i64, i64)| -> [Tri; 6] {
        let up = |x: i64, y: i64| -> Tri { sorted([(x, y), (x + 1, y), (x, y + 1)]) };
        let down = |x: i64, y: i64| -> Tri { sorted([(x + 1, y), (x, y + 1), (x + 1, y + 1)]) };
        [up(a, b), down(a - 1, b), up(a - 1, b), down(a - 1, b - 1), up(a, b - 1), down(a, b - 1)]
    };
    let mut tris: Vec<Tri> = Vec::new();
    let mut roles = Vec::new();
    let mut parts = Vec::new();
    for (ci, &c) in centres.iter().enumerate() {
        let mut part = VertexSet::EMPTY;
        for t in around(c) {
            part.insert(tris.len());
            tris.push(t);
            roles.push(format!("cell{ci}"));
        }
        parts.push(part);
    }
    let n = tris.len();
    let mut g = Graph::new(n)?;
    let mut matching = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let shared = tris[i].iter().filter(|p| tris[j].contains(p)).count();
            if shared == 2 {
                g.add_edge(i, j)?;
                if i / 6 != j / 6 {
                    matching.push((i, j));
                }
            }
        }
    }
    for (ci, part) in parts.iter().enumerate() {
        let inner = crate::graph::induced(&g, *part)?.graph;
        check(inner.is_regular(2) && inner.is_connected(), || format!("cell {ci} is not a 6-cycle"))?;
    }
    let m = Matching::new(matching);
    m.validate(&g)?;
    let mut f = Family::new("hex_patch", &[("cells", cells), ("width", width)], g, roles);
    f.parts = parts;
    f.matching = Some(m);
    Ok(f)
}

fn sorted(mut t: [(i64, i64); 3]) -> [(i64, i64); 3] {
    t.sort();
    t
}

/// Uniform `G(n, m)`.
pub fn gnm(n: usize, m: usize, seed: u64) -> Result<Family> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = gnm_with(n, m, &mut rng)?;
    Ok(Family::new("gnm", &[("n", n), ("m", m), ("seed", seed as usize)], g, tags("x", n)))
}

pub fn gnm_with<R: Rng>(n: usize, m: usize, rng: &mut R) -> Result<Graph> {
    let total = n * n.saturating_sub(1) / 2;
    check(m <= total, || format!("G({n},{m}) has too many edges"))?;
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let pick = index::sample(rng, total, m);
    let edges: Vec<_> = pick.iter().map(|i| pairs[i]).collect();
    Graph::from_edges(n, &edges)
}

/// Random spanning tree (each vertex attaches to a uniformly random earlier
/// vertex of a shuffled order) plus uniformly random extra edges up to `m`.
pub fn random_connected(n: usize, m: usize, seed: u64) -> Result<Family> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = random_connected_with(n, m, &mut rng)?;
    Ok(Family::new("random_connected", &[("n", n), ("m", m), ("seed", seed as usize)], g, tags("x", n)))
}

pub fn random_connected_with<R: Rng>(n: usize, m: usize, rng: &mut R) -> Result<Graph> {
    let total = n * n.saturating_sub(1) / 2;
    check(n >= 1 && m + 1 >= n && m <= total, || format!("no connected graph with n = {n}, m = {m}"))?;
    let mut g = Graph::new(n)?;
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    for i in 1..n {
        let j = rng.gen_range(0..i);
        g.add_edge(order[i], order[j])?;
    }
    let mut rest: Vec<(usize, usize)> =
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|&(u, v)| !g.has_edge(u, v)).collect();
    rest.shuffle(rng);
    for &(u, v) in rest.iter().take(m - (n - 1)) {
        g.add_edge(u, v)?;
    }
    Ok(g)
}

/// Random connected cubic graph by the pairing model with rejection.
pub fn random_cubic(n: usize, seed: u64) -> Result<Family> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = random_cubic_with(n, &mut rng)?;
    Ok(Family::new("random_cubic", &[("n", n), ("seed", seed as usize)], g, tags("x", n)))
}

pub fn random_cubic_with<R: Rng>(n: usize, rng: &mut R) -> Result<Graph> {
    check(n >= 4 && n.is_multiple_of(2), || "cubic graphs need an even n >= 4".into())?;
    'retry: for _ in 0..100_000 {
        let mut points: Vec<usize> = (0..3 * n).map(|p| p / 3).collect();
        points.shuffle(rng);
        let mut g = Graph::new(n)?;
        for pair in points.chunks(2) {
            let (u, v) = (pair[0], pair[1]);
            if u == v || g.has_edge(u, v) {
                continue 'retry;
            }
            g.add_edge(u, v)?;
        }
        if g.is_connected() {
            return Ok(g);
        }
    }
    Err(Error::domain("failed to sample a cubic graph"))
}

/// Disjoint union; part i is shifted by the orders of the parts before it.
pub fn disjoint_union(parts: &[&Graph]) -> Result<Graph> {
    let n = parts.iter().map(|p| p.n()).sum();
    let mut g = Graph::new(n)?;
    let mut off = 0;
    for p in parts {
        for (u, v) in p.edges() {
            g.add_edge(u + off, v + off)?;
        }
        off += p.n();
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planarity::{planarity_check, Planarity};

    #[test]
    fn clique_chain_is_regular() {
        let f = clique_chain(3, 3).unwrap();
        assert_eq!(f.graph.n(), 12);
        assert!(f.graph.is_regular(3));
        assert!(f.graph.is_connected());
        assert_eq!(f.roles[4], "u1");
        assert!(clique_chain(2, 3).is_err());
    }

    #[test]
    fn regular_chains() {
        let f = regular4_chain(4).unwrap();
        assert_eq!(f.graph.n(), 8);
        assert!(f.graph.is_regular(4));
        let f = regular5_chain(5, 3).unwrap();
        assert_eq!(f.graph.n(), 18);
        assert!(f.graph.is_regular(5));
        assert!(regular5_chain(4, 3).is_err());
    }

    #[test]
    fn sharpness_examples() {
        let f = clique_pendant_path(3).unwrap();
        assert_eq!(f.graph.n(), 5);
        assert_eq!(f.graph.edge_count(), 5);
        assert!(clique_pendant_path(4).is_err());
        let s = subdivided_star(4).unwrap();
        assert_eq!(s.graph.n(), 6);
        assert_eq!(s.graph.degree(0), 4);
    }

    #[test]
    fn hex_patch_partition() {
        let f = hex_patch(2, None).unwrap();
        assert_eq!(f.graph.n(), 12);
        let m = f.matching.as_ref().unwrap();
        assert_eq!(m.pairs.len(), 1);
        // Every edge is inside a cell or in the matching.
        for (u, v) in f.graph.edges() {
            assert!(u / 6 == v / 6 || m.pairs.contains(&(u, v)));
        }
        let big = hex_patch(6, Some(3)).unwrap();
        assert_eq!(big.graph.n(), 36);
        assert!(big.graph.is_connected());
        assert!(big.graph.max_degree() <= 3);
        assert_eq!(planarity_check(&big.graph), Planarity::Planar);
    }

    #[test]
    fn spiders_satisfy_axioms() {
        let f = spider(SpiderFlavor::Matched, 4, 2, RKind::Path).unwrap();
        let g = &f.graph;
        assert!(g.has_edge(0, 4) && !g.has_edge(0, 5));
        assert!(g.has_edge(4, 8) && g.has_edge(8, 9) && !g.has_edge(0, 8));
        let a = spider(SpiderFlavor::Antimatched, 3, 0, RKind::Independent).unwrap();
        assert_eq!(a.graph.degree(0), 2);
    }

    #[test]
    fn random_families_are_seeded() {
        let a = random_connected(10, 15, 3).unwrap();
        let b = random_connected(10, 15, 3).unwrap();
        assert_eq!(a.graph, b.graph);
        assert!(a.graph.is_connected());
        assert_eq!(a.graph.edge_count(), 15);
        let c = random_cubic(12, 5).unwrap();
        assert!(c.graph.is_regular(3) && c.graph.is_connected());
        assert_eq!(gnm(8, 10, 1).unwrap().graph.edge_count(), 10);
    }

    #[test]
    fn spec_parsing() {
        let s = FamilySpec::parse("cartesian_grid", &["rows=2".into(), "cols=3".into()]).unwrap();
        let f = generate(&s).unwrap();
        assert_eq!(f.graph.n(), 6);
        assert_eq!(f.graph.edge_count(), 7);
        let text = f.to_text();
        let back = crate::graph::parse_graph(&text).unwrap();
        assert_eq!(back, f.graph);
        assert!(generate(&FamilySpec::new("nope", &[])).is_err());
        assert!(FamilySpec::parse("path", &["n".into()]).is_err());
    }
}
