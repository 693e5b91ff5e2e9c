//! Decomposition trees: representation, text format and validation.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    Matched,
    Antimatched,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Node {
    Leaf(VertexSet),
    Union(Box<Node>, Box<Node>),
    Join(Box<Node>, Box<Node>),
    Spider {
        flavor: Flavor,
        s: Vec<usize>,
        k: Vec<usize>,
        /// `(s, f(s))` pairs.
        f: Vec<(usize, usize)>,
        r: Option<Box<Node>>,
    },
    PseudoSpider {
        s: VertexSet,
        k: VertexSet,
        r: Option<Box<Node>>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionTree {
    pub q: usize,
    pub root: Node,
}

impl Node {
    pub fn vertices(&self) -> VertexSet {
        match self {
            Node::Leaf(s) => *s,
            Node::Union(a, b) | Node::Join(a, b) => a.vertices() | b.vertices(),
            Node::Spider { s, k, r, .. } => {
                s.iter().chain(k).copied().collect::<VertexSet>()
                    | r.as_ref().map_or(VertexSet::EMPTY, |r| r.vertices())
            }
            Node::PseudoSpider { s, k, r } => *s | *k | r.as_ref().map_or(VertexSet::EMPTY, |r| r.vertices()),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Node::Leaf(_) => 1,
            Node::Union(a, b) | Node::Join(a, b) => 1 + a.size() + b.size(),
            Node::Spider { r, .. } | Node::PseudoSpider { r, .. } => 1 + r.as_ref().map_or(0, |r| r.size()),
        }
    }

    pub fn leaf(vs: impl IntoIterator<Item = usize>) -> Node {
        Node::Leaf(vs.into_iter().collect())
    }

    pub fn union(a: Node, b: Node) -> Node {
        Node::Union(Box::new(a), Box::new(b))
    }

    pub fn join(a: Node, b: Node) -> Node {
        Node::Join(Box::new(a), Box::new(b))
    }
}

fn write_set(out: &mut fmt::Formatter<'_>, tag: &str, vs: impl IntoIterator<Item = usize>) -> fmt::Result {
    write!(out, "({tag}")?;
    for v in vs {
        write!(out, " {v}")?;
    }
    write!(out, ")")
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::Leaf(s) => write_set(f, "leaf", s.iter()),
            Node::Union(a, b) => write!(f, "(union {a} {b})"),
            Node::Join(a, b) => write!(f, "(join {a} {b})"),
            Node::Spider { flavor, s, k, f: map, r } => {
                let fl = match flavor {
                    Flavor::Matched => "matched",
                    Flavor::Antimatched => "antimatched",
                };
                write!(f, "(spider {fl} ")?;
                write_set(f, "s", s.iter().copied())?;
                write!(f, " ")?;
                write_set(f, "k", k.iter().copied())?;
                write!(f, " (f")?;
                for (a, b) in map {
                    write!(f, " {a}:{b}")?;
                }
                write!(f, ")")?;
                if let Some(r) = r {
                    write!(f, " {r}")?;
                }
                write!(f, ")")
            }
            Node::PseudoSpider { s, k, r } => {
                write!(f, "(pspider ")?;
                write_set(f, "s", s.iter())?;
                write!(f, " ")?;
                write_set(f, "k", k.iter())?;
                if let Some(r) = r {
                    write!(f, " {r}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl fmt::Display for DecompositionTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "q {}", self.q)?;
        writeln!(f, "{}", self.root)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Open,
    Close,
    Atom(String),
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    last_line: usize,
}

impl Parser {
    fn next(&mut self) -> Result<(Tok, usize)> {
        let t =
            self.toks.get(self.pos).cloned().ok_or_else(|| Error::parse(self.last_line, "unexpected end of tree"))?;
        self.pos += 1;
        Ok(t)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn expect_open(&mut self) -> Result<usize> {
        match self.next()? {
            (Tok::Open, l) => Ok(l),
            (t, l) => Err(Error::parse(l, format!("expected `(`, found {t:?}"))),
        }
    }

    fn expect_close(&mut self) -> Result<()> {
        match self.next()? {
            (Tok::Close, _) => Ok(()),
            (t, l) => Err(Error::parse(l, format!("expected `)`, found {t:?}"))),
        }
    }

    fn atom(&mut self) -> Result<(String, usize)> {
        match self.next()? {
            (Tok::Atom(a), l) => Ok((a, l)),
            (t, l) => Err(Error::parse(l, format!("expected a word, found {t:?}"))),
        }
    }

    fn numbers_until_close(&mut self) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        loop {
            match self.next()? {
                (Tok::Close, _) => return Ok(out),
                (Tok::Atom(a), l) => {
                    out.push(a.parse().map_err(|_| Error::parse(l, format!("`{a}` is not a vertex")))?)
                }
                (Tok::Open, l) => return Err(Error::parse(l, "unexpected `(` in vertex list")),
            }
        }
    }

    fn tagged_list(&mut self, tag: &str) -> Result<Vec<usize>> {
        let l = self.expect_open()?;
        let (t, _) = self.atom()?;
        if t != tag {
            return Err(Error::parse(l, format!("expected ({tag} ...), found ({t} ...)")));
        }
        self.numbers_until_close()
    }

    fn optional_subtree(&mut self) -> Result<Option<Box<Node>>> {
        if self.peek() == Some(&Tok::Open) {
            let n = self.node()?;
            self.expect_close()?;
            Ok(Some(Box::new(n)))
        } else {
            self.expect_close()?;
            Ok(None)
        }
    }

    fn node(&mut self) -> Result<Node> {
        let line = self.expect_open()?;
        let (kind, _) = self.atom()?;
        match kind.as_str() {
            "leaf" => Ok(Node::Leaf(self.numbers_until_close()?.into_iter().collect())),
            "union" | "join" => {
                let a = self.node()?;
                let b = self.node()?;
                self.expect_close()?;
                Ok(if kind == "union" { Node::union(a, b) } else { Node::join(a, b) })
            }
            "spider" => {
                let (fl, l) = self.atom()?;
                let flavor = match fl.as_str() {
                    "matched" => Flavor::Matched,
                    "antimatched" => Flavor::Antimatched,
                    _ => return Err(Error::parse(l, format!("unknown spider flavor `{fl}`"))),
                };
                let s = self.tagged_list("s")?;
                let k = self.tagged_list("k")?;
                let fl = self.expect_open()?;
                let (t, _) = self.atom()?;
                if t != "f" {
                    return Err(Error::parse(fl, "expected (f s:k ...)"));
                }
                let mut f = Vec::new();
                loop {
                    match self.next()? {
                        (Tok::Close, _) => break,
                        (Tok::Atom(a), l) => {
                            let pair = a.split_once(':').and_then(|(x, y)| Some((x.parse().ok()?, y.parse().ok()?)));
                            f.push(pair.ok_or_else(|| Error::parse(l, format!("`{a}` is not s:k")))?);
                        }
                        (Tok::Open, l) => return Err(Error::parse(l, "unexpected `(` in f")),
                    }
                }
                let r = self.optional_subtree()?;
                Ok(Node::Spider { flavor, s, k, f, r })
            }
            "pspider" => {
                let s = self.tagged_list("s")?.into_iter().collect();
                let k = self.tagged_list("k")?.into_iter().collect();
                let r = self.optional_subtree()?;
                Ok(Node::PseudoSpider { s, k, r })
            }
            _ => Err(Error::parse(line, format!("unknown node kind `{kind}`"))),
        }
    }
}

/// Parses the `q <int>` header followed by one parenthesized term.
pub fn parse_tree(text: &str) -> Result<DecompositionTree> {
    let mut q = None;
    let mut toks = Vec::new();
    let mut last_line = 1;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("");
        if body.trim().is_empty() {
            continue;
        }
        last_line = line;
        if q.is_none() && toks.is_empty() {
            let mut it = body.split_whitespace();
            if it.next() != Some("q") {
                return Err(Error::parse(line, "expected `q <int>` header"));
            }
            let v = it
                .next()
                .and_then(|v| v.parse().ok())
                .ok_or_else(|| Error::parse(line, "q must be a non-negative integer"))?;
            if it.next().is_some() {
                return Err(Error::parse(line, "trailing text after q"));
            }
            q = Some(v);
            continue;
        }
        let spaced = body.replace('(', " ( ").replace(')', " ) ");
        for w in spaced.split_whitespace() {
            toks.push((
                match w {
                    "(" => Tok::Open,
                    ")" => Tok::Close,
                    a => Tok::Atom(a.to_string()),
                },
                line,
            ));
        }
    }
    let q = q.ok_or_else(|| Error::parse(1, "missing `q <int>` header"))?;
    let mut p = Parser { toks, pos: 0, last_line };
    let root = p.node()?;
    if let Some((_, l)) = p.toks.get(p.pos) {
        return Err(Error::parse(*l, "text after the tree"));
    }
    Ok(DecompositionTree { q, root })
}

/// Why a tree fails to describe a graph, with the path to the bad node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeDiagnostic {
    pub path: String,
    pub message: String,
}

impl fmt::Display for TreeDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

struct Checker<'a> {
    g: &'a Graph,
    q: usize,
}

impl Checker<'_> {
    fn fail<T>(&self, path: &str, msg: impl Into<String>) -> std::result::Result<T, TreeDiagnostic> {
        Err(TreeDiagnostic { path: path.to_string(), message: msg.into() })
    }

    fn no_edges(&self, a: VertexSet, b: VertexSet) -> bool {
        a.iter().all(|v| !self.g.neighbors(v).intersects(b))
    }

    fn all_edges(&self, a: VertexSet, b: VertexSet) -> bool {
        a.iter().all(|v| b.is_subset(self.g.neighbors(v)))
    }

    fn is_clique(&self, s: VertexSet) -> bool {
        s.iter().all(|v| (s - VertexSet::singleton(v)).is_subset(self.g.neighbors(v)))
    }

    fn disjoint(&self, path: &str, parts: &[VertexSet]) -> std::result::Result<(), TreeDiagnostic> {
        let mut seen = VertexSet::EMPTY;
        for p in parts {
            if seen.intersects(*p) {
                return self.fail(path, format!("vertex {} appears twice", (seen & *p).min().unwrap()));
            }
            seen |= *p;
        }
        Ok(())
    }

    /// Returns the vertex set of the checked node.
    fn check(&self, node: &Node, path: &str) -> std::result::Result<VertexSet, TreeDiagnostic> {
        let n = self.g.n();
        let in_range = |s: VertexSet| s.is_subset(VertexSet::full(n));
        match node {
            Node::Leaf(s) => {
                if s.is_empty() {
                    return self.fail(path, "empty leaf");
                }
                if !in_range(*s) {
                    return self.fail(path, "leaf vertex out of range");
                }
                if s.len() > self.q.max(1) {
                    return self.fail(path, format!("leaf has {} vertices, more than q = {}", s.len(), self.q));
                }
                Ok(*s)
            }
            Node::Union(a, b) | Node::Join(a, b) => {
                let union = matches!(node, Node::Union(..));
                let name = if union { "union" } else { "join" };
                let va = self.check(a, &format!("{path}/{name}.0"))?;
                let vb = self.check(b, &format!("{path}/{name}.1"))?;
                self.disjoint(path, &[va, vb])?;
                if union && !self.no_edges(va, vb) {
                    return self.fail(path, "union children are adjacent");
                }
                if !union && !self.all_edges(va, vb) {
                    return self.fail(path, "join children are not completely joined");
                }
                Ok(va | vb)
            }
            Node::Spider { flavor, s, k, f, r } => {
                let p = format!("{path}/spider");
                let ss: VertexSet = s.iter().copied().collect();
                let ks: VertexSet = k.iter().copied().collect();
                if ss.len() != s.len() || ks.len() != k.len() || !in_range(ss | ks) {
                    return self.fail(&p, "S and K must list distinct in-range vertices");
                }
                if s.len() != k.len() || s.len() < 2 {
                    return self.fail(&p, "need |S| = |K| >= 2");
                }
                let vr = match r {
                    Some(r) => self.check(r, &format!("{p}/r"))?,
                    None => VertexSet::EMPTY,
                };
                self.disjoint(&p, &[ss, ks, vr])?;
                if !self.no_edges(ss, ss) {
                    return self.fail(&p, "S is not independent");
                }
                if !self.is_clique(ks) {
                    return self.fail(&p, "K is not a clique");
                }
                let dom: VertexSet = f.iter().map(|&(a, _)| a).collect();
                let img: VertexSet = f.iter().map(|&(_, b)| b).collect();
                if f.len() != s.len() || dom != ss || img != ks {
                    return self.fail(&p, "f is not a bijection from S to K");
                }
                for &(a, b) in f {
                    let want = match flavor {
                        Flavor::Matched => VertexSet::singleton(b),
                        Flavor::Antimatched => ks - VertexSet::singleton(b),
                    };
                    if self.g.neighbors(a) & ks != want {
                        return self.fail(&p, format!("N({a}) meets K wrongly for f({a}) = {b}"));
                    }
                }
                if !self.all_edges(ks, vr) {
                    return self.fail(&p, "K is not joined to R");
                }
                if !self.no_edges(ss, vr) {
                    return self.fail(&p, "S is adjacent to R");
                }
                Ok(ss | ks | vr)
            }
            Node::PseudoSpider { s, k, r } => {
                let p = format!("{path}/pspider");
                if !in_range(*s | *k) {
                    return self.fail(&p, "vertex out of range");
                }
                if (*s | *k).is_empty() {
                    return self.fail(&p, "empty head");
                }
                if (*s | *k).len() > self.q {
                    return self.fail(&p, format!("|S u K| = {} exceeds q = {}", (*s | *k).len(), self.q));
                }
                let vr = match r {
                    Some(r) => self.check(r, &format!("{p}/r"))?,
                    None => VertexSet::EMPTY,
                };
                self.disjoint(&p, &[*s, *k, vr])?;
                if !self.all_edges(*k, vr) {
                    return self.fail(&p, "K is not joined to R");
                }
                if !self.no_edges(*s, vr) {
                    return self.fail(&p, "S is adjacent to R");
                }
                Ok(*s | *k | vr)
            }
        }
    }
}

/// Checks every structural condition of `t` against `g`, including that
/// the leaves and heads partition the vertex set.
pub fn validate_tree(g: &Graph, t: &DecompositionTree) -> std::result::Result<(), TreeDiagnostic> {
    let c = Checker { g, q: t.q };
    let all = c.check(&t.root, "root")?;
    if all != g.vertices() {
        let missing = (g.vertices() - all).min();
        return c.fail("root", format!("tree misses vertex {}", missing.unwrap_or(0)));
    }
    Ok(())
}

pub fn is_valid_tree(g: &Graph, t: &DecompositionTree) -> bool {
    validate_tree(g, t).is_ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spider_graph(extra: &[(usize, usize)]) -> Graph {
        let mut e = vec![(0, 2), (1, 3), (2, 3)];
        e.extend_from_slice(extra);
        Graph::from_edges(4, &e).unwrap()
    }

    const SPIDER: &str = "q 4\n(spider matched (s 0 1) (k 2 3) (f 0:2 1:3))\n";

    #[test]
    fn round_trip() {
        let t = parse_tree(SPIDER).unwrap();
        assert_eq!(parse_tree(&t.to_string()).unwrap(), t);
        let t = parse_tree("q 4\n(join (leaf 0)\n (union (leaf 1) (leaf 2)))").unwrap();
        assert_eq!(t.root.size(), 5);
        assert_eq!(parse_tree(&t.to_string()).unwrap(), t);
    }

    #[test]
    fn parse_errors_carry_lines() {
        assert!(matches!(parse_tree("(leaf 0)"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_tree("q 4\n(leaf 0\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_tree("q 4\n(tree 0)"), Err(Error::Parse { line: 2, .. })));
        assert!(parse_tree("q 4\n(leaf 0) (leaf 1)").is_err());
    }

    #[test]
    fn validates_examples() {
        let k2 = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let t = parse_tree("q 4\n(join (leaf 0) (leaf 1))").unwrap();
        assert!(is_valid_tree(&k2, &t));
        let t = parse_tree(SPIDER).unwrap();
        assert!(is_valid_tree(&spider_graph(&[]), &t));
        let d = validate_tree(&spider_graph(&[(0, 3)]), &t).unwrap_err();
        assert!(d.path.contains("spider"), "{d}");
    }

    #[test]
    fn catches_partition_errors() {
        let k2 = Graph::from_edges(2, &[(0, 1)]).unwrap();
        assert!(!is_valid_tree(&k2, &parse_tree("q 4\n(leaf 0)").unwrap()));
        assert!(!is_valid_tree(&k2, &parse_tree("q 4\n(join (leaf 0 1) (leaf 1))").unwrap()));
        assert!(!is_valid_tree(&k2, &parse_tree("q 4\n(union (leaf 0) (leaf 1))").unwrap()));
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(!is_valid_tree(&p3, &parse_tree("q 2\n(leaf 0 1 2)").unwrap()));
    }
}
