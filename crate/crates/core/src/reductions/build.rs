//! The three hardness constructions and their structural checks.

use std::fmt;

use super::cnf::CnfInstance;
use super::hex::HexInstance;
use crate::error::{Error, Result};
use crate::graph::{write_graph, Graph, VertexSet};
use crate::planarity::{planarity_check, Planarity};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReductionKind {
    Bipartite,
    Split,
    Planar,
}

impl ReductionKind {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "bipartite" => Ok(ReductionKind::Bipartite),
            "split" => Ok(ReductionKind::Split),
            "planar" => Ok(ReductionKind::Planar),
            _ => Err(Error::domain(format!("unknown reduction `{s}`; expected bipartite, split or planar"))),
        }
    }
}

impl fmt::Display for ReductionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReductionKind::Bipartite => "bipartite",
            ReductionKind::Split => "split",
            ReductionKind::Planar => "planar",
        })
    }
}

/// The padded source instance a reduction was built from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    Cnf(CnfInstance),
    Hex(HexInstance),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionOutput {
    pub kind: ReductionKind,
    pub g: Graph,
    pub k: usize,
    /// One tag per vertex, `class:name`.
    pub roles: Vec<String>,
    pub source: Source,
}

impl ReductionOutput {
    pub fn to_text(&self) -> String {
        let mut out = format!("# reduction: {}\n# k: {}\n", self.kind, self.k);
        out.push_str(&write_graph(&self.g));
        for (v, r) in self.roles.iter().enumerate() {
            out.push_str(&format!("# role: {v} {r}\n"));
        }
        out
    }

    pub fn with_role(&self, class: &str) -> VertexSet {
        self.roles.iter().enumerate().filter(|(_, r)| r.split(':').next() == Some(class)).map(|(v, _)| v).collect()
    }
}

/// Index layout of the CNF constructions: variables first, then the two
/// copies of each clause, then the guards.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CnfLayout {
    pub vars: usize,
    pub clauses: usize,
    pub guards: bool,
}

impl CnfLayout {
    pub fn var(&self, i: usize) -> usize {
        i
    }

    pub fn copy(&self, j: usize, side: usize) -> usize {
        self.vars + 2 * j + side
    }

    pub fn guard(&self, side: usize) -> usize {
        self.vars + 2 * self.clauses + side
    }

    pub fn order(&self) -> usize {
        self.vars + 2 * self.clauses + if self.guards { 2 } else { 0 }
    }

    pub fn var_set(&self) -> VertexSet {
        (0..self.vars).collect()
    }
}

fn build_cnf(cnf: &CnfInstance, kind: ReductionKind) -> Result<ReductionOutput> {
    let p = cnf.padded();
    let lay = CnfLayout { vars: p.vars, clauses: p.clauses.len(), guards: kind == ReductionKind::Bipartite };
    let mut g = Graph::new(lay.order())?;
    let mut roles = Vec::with_capacity(lay.order());
    for i in 0..p.vars {
        roles.push(if i < cnf.vars { format!("variable:x{}", i + 1) } else { "variable:pad".to_string() });
    }
    for (j, c) in p.clauses.iter().enumerate() {
        for side in 0..2 {
            roles.push(format!("clause-copy:C{}^{}", j + 1, side + 1));
            for &x in c {
                g.add_edge(lay.var(x), lay.copy(j, side))?;
            }
        }
    }
    match kind {
        ReductionKind::Bipartite => {
            for side in 0..2 {
                roles.push(format!("guard:u{}", side + 1));
                for i in 0..p.vars {
                    g.add_edge(lay.var(i), lay.guard(side))?;
                }
            }
        }
        _ => {
            for a in 0..p.vars {
                for b in a + 1..p.vars {
                    g.add_edge(a, b)?;
                }
            }
        }
    }
    let out = ReductionOutput { kind, k: g.n() / 2, g, roles, source: Source::Cnf(p) };
    check_structure(&out)?;
    Ok(out)
}

/// Variables, two copies per clause and two guards joined to every variable.
pub fn build_bipartite(cnf: &CnfInstance) -> Result<ReductionOutput> {
    build_cnf(cnf, ReductionKind::Bipartite)
}

/// Variables as a clique plus two copies per clause.
pub fn build_split(cnf: &CnfInstance) -> Result<ReductionOutput> {
    build_cnf(cnf, ReductionKind::Split)
}

/// Index layout of the planar construction: `h` first, then the hubs
/// `s0^1..3`, `t0^1..3`, then `n + 4` leaves per hub.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PlanarLayout {
    pub n: usize,
}

impl PlanarLayout {
    /// Hub `i` in `0..6`; 0..3 hang on `s`, 3..6 on `t`.
    pub fn hub(&self, i: usize) -> usize {
        self.n + i
    }

    pub fn leaves_per_hub(&self) -> usize {
        self.n + 4
    }

    pub fn leaf(&self, i: usize, j: usize) -> usize {
        self.n + 6 + i * self.leaves_per_hub() + j
    }

    pub fn leaves_of(&self, i: usize) -> VertexSet {
        (0..self.leaves_per_hub()).map(|j| self.leaf(i, j)).collect()
    }

    /// The hub a leaf hangs on.
    pub fn hub_of_leaf(&self, v: usize) -> Option<usize> {
        (v >= self.n + 6 && v < self.order()).then(|| (v - self.n - 6) / self.leaves_per_hub())
    }

    pub fn order(&self) -> usize {
        7 * self.n + 30
    }
}

pub fn build_planar(hex: &HexInstance) -> Result<ReductionOutput> {
    HexInstance::new(hex.h.clone(), hex.s, hex.t)?;
    let p = hex.padded()?;
    let lay = PlanarLayout { n: p.h.n() };
    let mut g = Graph::new(lay.order())?;
    for (u, v) in p.h.edges() {
        g.add_edge(u, v)?;
    }
    let mut roles: Vec<String> = (0..lay.n)
        .map(|v| if v < hex.h.n() { format!("hex-vertex:{v}") } else { "hex-vertex:pad".to_string() })
        .collect();
    let names = ["s0^1", "s0^2", "s0^3", "t0^1", "t0^2", "t0^3"];
    for (i, name) in names.iter().enumerate() {
        g.add_edge(if i < 3 { p.s } else { p.t }, lay.hub(i))?;
        roles.push(format!("hub:{name}"));
    }
    for (i, name) in names.iter().enumerate() {
        for j in 0..lay.leaves_per_hub() {
            g.add_edge(lay.hub(i), lay.leaf(i, j))?;
            roles.push(format!("leaf:{name}.{}", j + 1));
        }
    }
    let out = ReductionOutput { kind: ReductionKind::Planar, k: lay.n + 5, g, roles, source: Source::Hex(p) };
    check_structure(&out)?;
    Ok(out)
}

fn fail(kind: ReductionKind, what: &str) -> Error {
    Error::domain(format!("{kind} reduction output {what}"))
}

/// The shape each construction promises: bipartite of diameter at most 4,
/// a split partition, or a planar graph with the hub and leaf counts.
pub fn check_structure(out: &ReductionOutput) -> Result<()> {
    let g = &out.g;
    if out.roles.len() != g.n() || out.k == 0 {
        return Err(fail(out.kind, "has an incomplete role map or k = 0"));
    }
    match (&out.source, out.kind) {
        (Source::Cnf(cnf), ReductionKind::Bipartite | ReductionKind::Split) => {
            let lay =
                CnfLayout { vars: cnf.vars, clauses: cnf.clauses.len(), guards: out.kind == ReductionKind::Bipartite };
            if g.n() != lay.order() || !g.n().is_multiple_of(2) || out.k != g.n() / 2 {
                return Err(fail(out.kind, "has the wrong order or k"));
            }
            let copies = (0..cnf.clauses.len()).flat_map(|j| [lay.copy(j, 0), lay.copy(j, 1)]).collect::<VertexSet>();
            if copies.iter().any(|v| g.neighbors(v).intersects(copies)) {
                return Err(fail(out.kind, "has adjacent clause copies"));
            }
            if out.kind == ReductionKind::Bipartite {
                if g.bipartition().is_none() {
                    return Err(fail(out.kind, "is not bipartite"));
                }
                if g.diameter().is_none_or(|d| d > 4) {
                    return Err(fail(out.kind, "has diameter above 4"));
                }
            } else {
                let vars = lay.var_set();
                if vars.iter().any(|v| (g.neighbors(v) & vars).len() != vars.len() - 1) {
                    return Err(fail(out.kind, "does not have a clique on the variables"));
                }
            }
        }
        (Source::Hex(hex), ReductionKind::Planar) => {
            let n = hex.h.n();
            let lay = PlanarLayout { n };
            if n % 2 != 0 || g.n() != 7 * n + 30 || out.k != n + 5 {
                return Err(fail(out.kind, "has the wrong order or k"));
            }
            let hubs = (0..6).filter(|&i| {
                let anchor = if i < 3 { hex.s } else { hex.t };
                g.neighbors(lay.hub(i)) == (lay.leaves_of(i) | VertexSet::singleton(anchor))
            });
            let leaves = (0..g.n()).filter(|&v| g.degree(v) == 1 && lay.hub_of_leaf(v).is_some()).count();
            if hubs.count() != 6 || leaves != 6 * (n + 4) {
                return Err(fail(out.kind, "has the wrong hubs or leaves"));
            }
            if planarity_check(g) == Planarity::NonPlanar {
                return Err(fail(out.kind, "is not planar"));
            }
        }
        _ => return Err(fail(out.kind, "carries the wrong source instance")),
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cnf_arithmetic() {
        let cnf = CnfInstance::new(2, vec![vec![0, 1]]).unwrap();
        let b = build_bipartite(&cnf).unwrap();
        assert_eq!((b.g.n(), b.k), (6, 3));
        let s = build_split(&cnf).unwrap();
        assert_eq!((s.g.n(), s.k), (4, 2));
        let odd = CnfInstance::new(1, vec![vec![0]]).unwrap();
        let b = build_bipartite(&odd).unwrap();
        assert_eq!((b.g.n(), b.k), (6, 3));
        assert_eq!(b.roles[1], "variable:pad");
        assert_eq!(b.with_role("guard").len(), 2);
    }

    #[test]
    fn planar_arithmetic() {
        let h = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let out = build_planar(&HexInstance::new(h, 0, 3).unwrap()).unwrap();
        assert_eq!((out.g.n(), out.k), (58, 9));
        assert_eq!(out.with_role("hub").len(), 6);
        assert_eq!(out.with_role("leaf").len(), 48);
        let odd = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let out = build_planar(&HexInstance::new(odd, 0, 2).unwrap()).unwrap();
        assert_eq!((out.g.n(), out.k), (58, 9));
    }

    #[test]
    fn structure_check_catches_tampering() {
        let cnf = CnfInstance::new(2, vec![vec![0], vec![1]]).unwrap();
        let mut b = build_bipartite(&cnf).unwrap();
        b.g.add_edge(2, 3).unwrap();
        assert!(check_structure(&b).is_err());
        let mut s = build_split(&cnf).unwrap();
        s.g.remove_edge(0, 1);
        assert!(check_structure(&s).is_err());
    }
}
