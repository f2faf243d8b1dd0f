//! Graphs on set families: the disjointness graph, Turán graphs, exact
//! clique/homomorphism counting, blow-ups, and chromatic number.
//!
//! Adjacency is stored as per-vertex bitset rows so clique recursion and
//! common-neighborhood queries are word operations. Densities are exact
//! rationals throughout; nothing here rounds.

use num::{BigRational, BigUint, One, Zero};
use rayon::prelude::*;

use crate::bits::binom_big;
use crate::error::{Error, Result};
use crate::setfam::SetFamily;

/// Hard cap on graph order; disjointness graphs of desk-scale families stay
/// well under this.
pub const MAX_GRAPH_ORDER: usize = 4096;
/// Cap on pattern order for homomorphism counting.
pub const MAX_PATTERN_ORDER: usize = 12;
/// Cap on host order for homomorphism counting (keeps counts inside u128).
pub const MAX_HOM_HOST_ORDER: usize = 1024;

/// A finite simple graph with bitset adjacency rows.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Graph {
    order: usize,
    words: usize,
    adj: Vec<u64>,
}

impl Graph {
    pub fn new(order: usize) -> Result<Self> {
        if order > MAX_GRAPH_ORDER {
            return Err(Error::capacity(format!(
                "graph order {order} exceeds cap {MAX_GRAPH_ORDER}"
            )));
        }
        let words = order.div_ceil(64).max(1);
        Ok(Graph {
            order,
            words,
            adj: vec![0u64; order * words],
        })
    }

    pub fn from_edges(order: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::new(order)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u >= self.order || v >= self.order {
            return Err(Error::invalid(format!(
                "edge ({u},{v}) outside vertex range 0..{}",
                self.order
            )));
        }
        if u == v {
            return Err(Error::invalid(format!("self-loop at vertex {u}")));
        }
        let w = self.words;
        self.adj[u * w + v / 64] |= 1u64 << (v % 64);
        self.adj[v * w + u / 64] |= 1u64 << (u % 64);
        Ok(())
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.adj[v * self.words..(v + 1) * self.words]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn edge_count(&self) -> u64 {
        let total: u64 = (0..self.order).map(|v| self.degree(v) as u64).sum();
        total / 2
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.order {
            for v in u + 1..self.order {
                if self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Adjacency row as a single word; only valid for order <= 64.
    pub fn row_u64(&self, v: usize) -> u64 {
        debug_assert!(self.order <= 64);
        self.adj[v * self.words]
    }

    /// Induced subgraph on `verts` (kept in the given order).
    pub fn induced(&self, verts: &[usize]) -> Result<Graph> {
        let mut g = Graph::new(verts.len())?;
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j)?;
                }
            }
        }
        Ok(g)
    }

    /// 2-colorability check by BFS over components.
    pub fn is_bipartite(&self) -> bool {
        let mut color = vec![u8::MAX; self.order];
        let mut queue = Vec::new();
        for start in 0..self.order {
            if color[start] != u8::MAX {
                continue;
            }
            color[start] = 0;
            queue.push(start);
            while let Some(u) = queue.pop() {
                for v in 0..self.order {
                    if self.has_edge(u, v) {
                        if color[v] == u8::MAX {
                            color[v] = 1 - color[u];
                            queue.push(v);
                        } else if color[v] == color[u] {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Serializes to the graph exchange format (1-based vertices).
    pub fn to_text(&self) -> String {
        let edges = self.edges();
        let mut out = format!("graph n={} m={}\n", self.order, edges.len());
        for (u, v) in edges {
            out.push_str(&format!("{} {}\n", u + 1, v + 1));
        }
        out
    }

    pub fn parse_str(text: &str) -> Result<Graph> {
        let mut graph: Option<Graph> = None;
        let mut seen_edges = 0u64;
        let mut declared_edges = 0u64;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            match graph {
                None => {
                    let rest = line.strip_prefix("graph").ok_or(Error::Parse {
                        line: line_no,
                        msg: "expected `graph n=<int> m=<int>` header".into(),
                    })?;
                    let mut n = None;
                    let mut m = None;
                    for tok in rest.split_whitespace() {
                        if let Some(v) = tok.strip_prefix("n=") {
                            n = v.parse::<usize>().ok();
                        } else if let Some(v) = tok.strip_prefix("m=") {
                            m = v.parse::<u64>().ok();
                        }
                    }
                    let (n, m) = match (n, m) {
                        (Some(n), Some(m)) => (n, m),
                        _ => {
                            return Err(Error::Parse {
                                line: line_no,
                                msg: "header must carry n=<int> and m=<int>".into(),
                            })
                        }
                    };
                    declared_edges = m;
                    graph = Some(Graph::new(n)?);
                }
                Some(ref mut g) => {
                    let mut it = line.split_whitespace();
                    let (u, v) = match (it.next(), it.next(), it.next()) {
                        (Some(u), Some(v), None) => (u, v),
                        _ => {
                            return Err(Error::Parse {
                                line: line_no,
                                msg: format!("expected `u v`, got `{line}`"),
                            })
                        }
                    };
                    let u: usize = u.parse().map_err(|e| Error::Parse {
                        line: line_no,
                        msg: format!("bad vertex: {e}"),
                    })?;
                    let v: usize = v.parse().map_err(|e| Error::Parse {
                        line: line_no,
                        msg: format!("bad vertex: {e}"),
                    })?;
                    if u == 0 || v == 0 {
                        return Err(Error::Parse {
                            line: line_no,
                            msg: "vertices are 1-based".into(),
                        });
                    }
                    g.add_edge(u - 1, v - 1).map_err(|e| Error::Parse {
                        line: line_no,
                        msg: e.to_string(),
                    })?;
                    seen_edges += 1;
                }
            }
        }
        let g = graph.ok_or(Error::Parse {
            line: 0,
            msg: "missing graph header".into(),
        })?;
        if seen_edges != declared_edges {
            return Err(Error::Parse {
                line: 0,
                msg: format!("header declares m={declared_edges} but {seen_edges} edges follow"),
            });
        }
        Ok(g)
    }
}

/// Vertices are the family members in sorted order; two members are joined
/// iff their masks are disjoint.
pub fn disjointness_graph(f: &SetFamily) -> Result<Graph> {
    let order = f.len();
    let mut g = Graph::new(order)?;
    let members = f.members();
    for i in 0..order {
        for j in i + 1..order {
            if members[i].is_disjoint(&members[j]) {
                g.add_edge(i, j)?;
            }
        }
    }
    Ok(g)
}

/// Complete s-partite Turán graph on n vertices; vertex v goes to class
/// `v mod s` (round-robin), which makes the class sizes as equal as possible.
pub fn turan_graph(s: usize, n: usize) -> Result<Graph> {
    if s == 0 || s > n {
        return Err(Error::invalid(format!("need 1 <= s <= n, got s={s} n={n}")));
    }
    let mut g = Graph::new(n)?;
    for u in 0..n {
        for v in u + 1..n {
            if u % s != v % s {
                g.add_edge(u, v)?;
            }
        }
    }
    Ok(g)
}

fn intersect_into(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src.iter()) {
        *d &= s;
    }
}

fn popcount(words: &[u64]) -> u64 {
    words.iter().map(|w| w.count_ones() as u64).sum()
}

fn for_each_bit(words: &[u64], mut f: impl FnMut(usize)) {
    for (wi, &w) in words.iter().enumerate() {
        let mut rest = w;
        while rest != 0 {
            let b = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            f(wi * 64 + b);
        }
    }
}

fn clique_count_rec(g: &Graph, cand: &[u64], need: usize) -> u128 {
    if need == 1 {
        return popcount(cand) as u128;
    }
    if (popcount(cand) as usize) < need {
        return 0;
    }
    let mut total = 0u128;
    let mut next = vec![0u64; cand.len()];
    for_each_bit(cand, |v| {
        next.copy_from_slice(cand);
        intersect_into(&mut next, g.row(v));
        // restrict to vertices above v to count each clique once
        let wi = v / 64;
        next[wi] &= crate::bits::above_bit_mask(v % 64);
        for wlow in next.iter_mut().take(wi) {
            *wlow = 0;
        }
        total += clique_count_rec(g, &next, need - 1);
    });
    total
}

/// Exact number of r-vertex cliques.
pub fn clique_count(g: &Graph, r: usize) -> u128 {
    if r == 0 {
        return 1;
    }
    if r > g.order() {
        return 0;
    }
    if r == 1 {
        return g.order() as u128;
    }
    let words = g.order().div_ceil(64).max(1);
    let count_root = |v: usize| -> u128 {
        let mut cand = vec![0u64; words];
        cand.copy_from_slice(g.row(v));
        let wi = v / 64;
        cand[wi] &= crate::bits::above_bit_mask(v % 64);
        for wlow in cand.iter_mut().take(wi) {
            *wlow = 0;
        }
        clique_count_rec(g, &cand, r - 1)
    };
    if g.order() >= 256 {
        (0..g.order()).into_par_iter().map(count_root).sum()
    } else {
        (0..g.order()).map(count_root).sum()
    }
}

/// Whether the graph contains any r-clique (early-exit variant).
pub fn has_clique(g: &Graph, r: usize) -> bool {
    fn rec(g: &Graph, cand: &[u64], need: usize) -> bool {
        if need == 0 {
            return true;
        }
        if (popcount(cand) as usize) < need {
            return false;
        }
        let mut found = false;
        let mut next = vec![0u64; cand.len()];
        for (wi, &w) in cand.iter().enumerate() {
            let mut rest = w;
            while rest != 0 {
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let v = wi * 64 + b;
                next.copy_from_slice(cand);
                intersect_into(&mut next, g.row(v));
                next[wi] &= crate::bits::above_bit_mask(b);
                for wlow in next.iter_mut().take(wi) {
                    *wlow = 0;
                }
                if rec(g, &next, need - 1) {
                    found = true;
                    break;
                }
            }
            if found {
                break;
            }
        }
        found
    }
    if r == 0 {
        return true;
    }
    if r > g.order() {
        return false;
    }
    let words = g.order().div_ceil(64).max(1);
    let mut all = vec![u64::MAX; words];
    let excess = words * 64 - g.order();
    if excess > 0 {
        all[words - 1] = u64::MAX >> excess;
    }
    rec(g, &all, r)
}

/// Exact clique density `K_r(g) / C(order, r)`. When `r > order` the value
/// is 0 by convention and `degenerate` is set.
pub struct CliqueDensity {
    pub value: BigRational,
    pub degenerate: bool,
}

pub fn clique_density(g: &Graph, r: usize) -> CliqueDensity {
    if r > g.order() {
        return CliqueDensity {
            value: BigRational::zero(),
            degenerate: true,
        };
    }
    let count = clique_count(g, r);
    let num = BigUint::from(count);
    let den = binom_big(g.order() as u64, r as u64);
    CliqueDensity {
        value: BigRational::new(num.into(), den.into()),
        degenerate: false,
    }
}

/// A small labeled pattern graph used as a homomorphism source.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PatternGraph {
    order: usize,
    edges: Vec<(usize, usize)>,
    adj: [u16; MAX_PATTERN_ORDER],
}

impl PatternGraph {
    pub fn new(order: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if order == 0 || order > MAX_PATTERN_ORDER {
            return Err(Error::capacity(format!(
                "pattern order {order} outside 1..={MAX_PATTERN_ORDER}"
            )));
        }
        let mut adj = [0u16; MAX_PATTERN_ORDER];
        let mut canon: Vec<(usize, usize)> = Vec::new();
        for &(a, b) in edges {
            if a >= order || b >= order {
                return Err(Error::invalid(format!("pattern edge ({a},{b}) out of range")));
            }
            if a == b {
                return Err(Error::invalid("pattern self-loop"));
            }
            let (lo, hi) = (a.min(b), a.max(b));
            if adj[lo] >> hi & 1 == 0 {
                canon.push((lo, hi));
            }
            adj[lo] |= 1 << hi;
            adj[hi] |= 1 << lo;
        }
        canon.sort_unstable();
        Ok(PatternGraph {
            order,
            edges: canon,
            adj,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a] >> b & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }
}

/// The cycle C_l.
pub fn cycle(l: usize) -> Result<PatternGraph> {
    if l < 3 {
        return Err(Error::invalid(format!("cycle length {l} below 3")));
    }
    let edges: Vec<(usize, usize)> = (0..l).map(|i| (i, (i + 1) % l)).collect();
    PatternGraph::new(l, &edges)
}

/// The complete graph K_r.
pub fn complete(r: usize) -> Result<PatternGraph> {
    if r == 0 {
        return Err(Error::invalid("complete graph needs at least one vertex"));
    }
    let mut edges = Vec::new();
    for a in 0..r {
        for b in a + 1..r {
            edges.push((a, b));
        }
    }
    PatternGraph::new(r, &edges)
}

/// Class sizes for a blow-up, one per pattern vertex.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BlowupSpec {
    t: Vec<u32>,
}

impl BlowupSpec {
    pub fn new(t: Vec<u32>) -> Result<Self> {
        if t.is_empty() || t.contains(&0) {
            return Err(Error::invalid("blow-up sizes must all be at least 1"));
        }
        Ok(BlowupSpec { t })
    }

    pub fn uniform(f: usize, t: u32) -> Result<Self> {
        BlowupSpec::new(vec![t; f])
    }

    pub fn sizes(&self) -> &[u32] {
        &self.t
    }

    pub fn total(&self) -> usize {
        self.t.iter().map(|&x| x as usize).sum()
    }

    pub fn product(&self) -> u64 {
        self.t.iter().map(|&x| x as u64).product()
    }
}

/// Replaces pattern vertex i by an independent class of size t_i, joining
/// classes completely whenever the pattern vertices are adjacent. Class i
/// occupies the consecutive labels after classes 0..i.
pub fn blow_up(p: &PatternGraph, spec: &BlowupSpec) -> Result<PatternGraph> {
    if spec.sizes().len() != p.order() {
        return Err(Error::invalid(format!(
            "blow-up spec has {} sizes for pattern of order {}",
            spec.sizes().len(),
            p.order()
        )));
    }
    let total = spec.total();
    if total > MAX_PATTERN_ORDER {
        return Err(Error::capacity(format!(
            "blow-up order {total} exceeds cap {MAX_PATTERN_ORDER}"
        )));
    }
    let mut start = vec![0usize; p.order() + 1];
    for i in 0..p.order() {
        start[i + 1] = start[i] + spec.sizes()[i] as usize;
    }
    let mut edges = Vec::new();
    for &(a, b) in p.edges() {
        for x in start[a]..start[a + 1] {
            for y in start[b]..start[b + 1] {
                edges.push((x, y));
            }
        }
    }
    PatternGraph::new(total, &edges)
}

struct HomSearch<'a> {
    g: &'a Graph,
    words: usize,
    perm: Vec<usize>,
    prior: Vec<Vec<usize>>,
    suffix_tail: Vec<bool>,
    injective: bool,
}

impl<'a> HomSearch<'a> {
    fn new(p: &PatternGraph, g: &'a Graph, injective: bool) -> Self {
        // map high-degree pattern vertices first so the constraint-free tail
        // can be counted by a product instead of enumeration
        let mut perm: Vec<usize> = (0..p.order()).collect();
        perm.sort_by_key(|&v| (std::cmp::Reverse(p.degree(v)), v));
        let pos_of = {
            let mut pos = vec![0usize; p.order()];
            for (i, &v) in perm.iter().enumerate() {
                pos[v] = i;
            }
            pos
        };
        let prior: Vec<Vec<usize>> = perm
            .iter()
            .map(|&v| {
                let mut ps: Vec<usize> = (0..p.order())
                    .filter(|&u| p.has_edge(u, v) && pos_of[u] < pos_of[v])
                    .map(|u| pos_of[u])
                    .collect();
                ps.sort_unstable();
                ps
            })
            .collect();
        // suffix_tail[i]: no pattern edge between two positions >= i
        let f = p.order();
        let mut suffix_tail = vec![true; f + 1];
        for i in (0..f).rev() {
            let mut ok = suffix_tail[i + 1];
            if ok {
                for j in i + 1..f {
                    if p.has_edge(perm[i], perm[j]) {
                        ok = false;
                        break;
                    }
                }
            }
            suffix_tail[i] = ok;
        }
        let words = g.order().div_ceil(64).max(1);
        HomSearch {
            g,
            words,
            perm,
            prior,
            suffix_tail,
            injective,
        }
    }

    fn full_mask(&self) -> Vec<u64> {
        let mut all = vec![u64::MAX; self.words];
        let excess = self.words * 64 - self.g.order();
        if excess > 0 && self.words > 0 {
            all[self.words - 1] = if self.g.order() == 0 {
                0
            } else {
                u64::MAX >> excess
            };
        }
        all
    }

    fn candidates(&self, pos: usize, images: &[usize], used: &[u64]) -> Vec<u64> {
        let mut cand = self.full_mask();
        for &p_pos in &self.prior[pos] {
            intersect_into(&mut cand, self.g.row(images[p_pos]));
        }
        if self.injective {
            for (c, u) in cand.iter_mut().zip(used.iter()) {
                *c &= !u;
            }
        }
        cand
    }

    fn count(&self) -> u128 {
        let f = self.perm.len();
        let mut images = vec![usize::MAX; f];
        let mut used = vec![0u64; self.words];
        self.dfs(0, &mut images, &mut used)
    }

    fn dfs(&self, pos: usize, images: &mut [usize], used: &mut [u64]) -> u128 {
        let f = images.len();
        if pos == f {
            return 1;
        }
        if !self.injective && self.suffix_tail[pos] {
            let mut prod = 1u128;
            for tail in pos..f {
                let cand = self.candidates(tail, images, used);
                prod = prod.saturating_mul(popcount(&cand) as u128);
                if prod == 0 {
                    break;
                }
            }
            return prod;
        }
        let cand = self.candidates(pos, images, used);
        let mut total = 0u128;
        for_each_bit(&cand, |v| {
            images[pos] = v;
            if self.injective {
                used[v / 64] |= 1u64 << (v % 64);
            }
            total += self.dfs(pos + 1, images, used);
            if self.injective {
                used[v / 64] &= !(1u64 << (v % 64));
            }
        });
        images[pos] = usize::MAX;
        total
    }
}

fn check_hom_pre(p: &PatternGraph, g: &Graph) -> Result<()> {
    if g.order() > MAX_HOM_HOST_ORDER {
        return Err(Error::capacity(format!(
            "homomorphism counting caps the host at {MAX_HOM_HOST_ORDER} vertices, got {}",
            g.order()
        )));
    }
    let _ = p;
    Ok(())
}

/// Number of (not necessarily injective) edge-preserving maps V(p) -> V(g).
pub fn hom_count(p: &PatternGraph, g: &Graph) -> Result<u128> {
    check_hom_pre(p, g)?;
    if g.order() == 0 {
        return Ok(0);
    }
    Ok(HomSearch::new(p, g, false).count())
}

/// Number of injective edge-preserving maps.
pub fn injective_hom_count(p: &PatternGraph, g: &Graph) -> Result<u128> {
    check_hom_pre(p, g)?;
    if p.order() > g.order() {
        return Ok(0);
    }
    Ok(HomSearch::new(p, g, true).count())
}

/// Homomorphism density: hom_count / order^{|p|}.
pub fn hom_density(p: &PatternGraph, g: &Graph) -> Result<BigRational> {
    if g.order() == 0 {
        return Err(Error::invalid("homomorphism density of the empty host"));
    }
    let count = hom_count(p, g)?;
    let den = BigUint::from(g.order()).pow(p.order() as u32);
    Ok(BigRational::new(BigUint::from(count).into(), den.into()))
}

/// Injective density: injective_hom_count over the falling factorial
/// order·(order-1)···(order-|p|+1).
pub fn injective_density(p: &PatternGraph, g: &Graph) -> Result<BigRational> {
    if g.order() < p.order() {
        return Err(Error::invalid(format!(
            "injective density needs host order >= {}, got {}",
            p.order(),
            g.order()
        )));
    }
    let count = injective_hom_count(p, g)?;
    let mut den = BigUint::one();
    for i in 0..p.order() {
        den *= BigUint::from(g.order() - i);
    }
    Ok(BigRational::new(BigUint::from(count).into(), den.into()))
}

/// Exact chromatic number for order <= 30, by iterated k-colorability with a
/// greedy clique lower bound and saturation-ordered backtracking.
pub fn chromatic_number(g: &Graph) -> Result<u32> {
    if g.order() > 30 {
        return Err(Error::capacity(format!(
            "chromatic number capped at order 30, got {}",
            g.order()
        )));
    }
    if g.order() == 0 {
        return Ok(0);
    }
    if g.edge_count() == 0 {
        return Ok(1);
    }
    let lower = greedy_clique_size(g).max(2);
    for k in lower..=g.order() as u32 {
        if colorable(g, k) {
            return Ok(k);
        }
    }
    Ok(g.order() as u32)
}

fn greedy_clique_size(g: &Graph) -> u32 {
    let mut best = 0u32;
    for start in 0..g.order() {
        let mut size = 1u32;
        let mut cand: Vec<usize> = (0..g.order())
            .filter(|&v| v != start && g.has_edge(start, v))
            .collect();
        while !cand.is_empty() {
            // extend by the candidate with most neighbors inside cand
            let v = *cand
                .iter()
                .max_by_key(|&&v| {
                    let deg = cand.iter().filter(|&&u| g.has_edge(u, v)).count();
                    (deg, std::cmp::Reverse(v))
                })
                .unwrap();
            size += 1;
            cand.retain(|&u| u != v && g.has_edge(u, v));
        }
        best = best.max(size);
    }
    best
}

fn colorable(g: &Graph, k: u32) -> bool {
    let n = g.order();
    let mut colors = vec![u32::MAX; n];
    fn rec(g: &Graph, k: u32, colors: &mut [u32], colored: usize, max_used: u32) -> bool {
        let n = g.order();
        if colored == n {
            return true;
        }
        // DSATUR: highest saturation, then highest degree, then lowest index
        let mut pick = usize::MAX;
        let mut pick_key = (0usize, 0usize);
        for v in 0..n {
            if colors[v] != u32::MAX {
                continue;
            }
            let mut seen = 0u64;
            for (u, &cu) in colors.iter().enumerate() {
                if cu != u32::MAX && g.has_edge(u, v) {
                    seen |= 1u64 << cu;
                }
            }
            let key = (seen.count_ones() as usize, g.degree(v));
            if pick == usize::MAX || key > pick_key {
                pick = v;
                pick_key = key;
            }
        }
        let v = pick;
        let mut forbidden = 0u64;
        for (u, &cu) in colors.iter().enumerate() {
            if cu != u32::MAX && g.has_edge(u, v) {
                forbidden |= 1u64 << cu;
            }
        }
        // allow at most one brand-new color to cut color symmetry
        let limit = (max_used + 1).min(k - 1);
        for c in 0..=limit {
            if forbidden >> c & 1 == 1 {
                continue;
            }
            colors[v] = c;
            if rec(g, k, colors, colored + 1, max_used.max(c)) {
                return true;
            }
            colors[v] = u32::MAX;
        }
        false
    }
    colors[0] = 0;
    rec(g, k, &mut colors, 1, 0)
}
