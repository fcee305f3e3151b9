//! Decorated and hairy graphs: the combinatorial basis elements of every
//! complex in this crate, together with orientation-sign bookkeeping,
//! canonical forms and basis enumeration.
//!
//! A decorated graph carries three pieces of orientation data: the ordering
//! of its vertices (each vertex is an odd symbol of degree -(2m+1)), the
//! direction of each edge (a flip costs a sign, reordering edges is free
//! since edges have even degree 2m), and the ordering of the decorations at
//! each vertex (Koszul signs according to the symbol parities: alpha has
//! degree m, beta has degree m+1). Two labeled graphs related by the
//! S_n x (S_2 wr S_k) action with decoration reordering represent the same
//! basis element up to the accumulated sign.

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::GcxError;

/// A decoration symbol: `A(i)` spans V_g (degree m), `B(i)` spans V_g*
/// (degree m+1). Indices are 1-based and bounded by g.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sym {
    A(u8),
    B(u8),
}

impl Sym {
    pub fn degree(self, m: i64) -> i64 {
        match self {
            Sym::A(_) => m,
            Sym::B(_) => m + 1,
        }
    }

    /// Parity of the symbol degree: 1 = odd, 0 = even.
    pub fn parity(self, m: u32) -> u8 {
        match self {
            Sym::A(_) => (m % 2) as u8,
            Sym::B(_) => ((m + 1) % 2) as u8,
        }
    }

    /// Contribution to the torus weight vector in Z^g.
    pub fn weight_sign(self) -> i32 {
        match self {
            Sym::A(_) => 1,
            Sym::B(_) => -1,
        }
    }

    pub fn index(self) -> u8 {
        match self {
            Sym::A(i) | Sym::B(i) => i,
        }
    }

    pub fn is_alpha(self) -> bool {
        matches!(self, Sym::A(_))
    }
}

impl fmt::Display for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sym::A(i) => write!(f, "a{i}"),
            Sym::B(i) => write!(f, "b{i}"),
        }
    }
}

/// A labeled decorated multigraph. Vertices are 0-based internally; the
/// canonical text form prints them 1-based.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DecoratedGraph {
    pub g: u32,
    pub m: u32,
    pub nv: usize,
    /// Directed edges (tail, head), 0-based vertex indices.
    pub edges: Vec<(u8, u8)>,
    /// Per-vertex decoration lists.
    pub decs: Vec<Vec<Sym>>,
}

/// Canonical representative with the sign relating the input to it, or the
/// distinguished zero (tadpole or sign-reversing symmetry).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CanonicalGraph {
    Zero,
    NonZero { graph: DecoratedGraph, sign: i8 },
}

impl CanonicalGraph {
    pub fn is_zero(&self) -> bool {
        matches!(self, CanonicalGraph::Zero)
    }

    pub fn graph(&self) -> Option<&DecoratedGraph> {
        match self {
            CanonicalGraph::Zero => None,
            CanonicalGraph::NonZero { graph, .. } => Some(graph),
        }
    }

    pub fn sign(&self) -> i8 {
        match self {
            CanonicalGraph::Zero => 0,
            CanonicalGraph::NonZero { sign, .. } => *sign,
        }
    }
}

impl DecoratedGraph {
    pub fn new(
        g: u32,
        m: u32,
        nv: usize,
        edges: Vec<(u8, u8)>,
        decs: Vec<Vec<Sym>>,
    ) -> Result<Self, GcxError> {
        if decs.len() != nv {
            return Err(GcxError::MalformedGraph(format!(
                "{} decoration lists for {} vertices",
                decs.len(),
                nv
            )));
        }
        for &(i, j) in &edges {
            if i as usize >= nv || j as usize >= nv {
                return Err(GcxError::MalformedGraph(format!(
                    "edge ({i},{j}) out of range for {nv} vertices"
                )));
            }
        }
        for d in decs.iter().flatten() {
            if d.index() == 0 || d.index() as u32 > g {
                return Err(GcxError::MalformedGraph(format!(
                    "decoration index {} out of range for g={}",
                    d.index(),
                    g
                )));
            }
        }
        Ok(DecoratedGraph { g, m, nv, edges, decs })
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// (a, b) = counts of alpha and beta decorations.
    pub fn dec_counts(&self) -> (usize, usize) {
        let a = self.decs.iter().flatten().filter(|s| s.is_alpha()).count();
        let b = self.decs.iter().flatten().count() - a;
        (a, b)
    }

    /// Weight W = 2(e - v) + D.
    pub fn weight(&self) -> i64 {
        let (a, b) = self.dec_counts();
        2 * (self.num_edges() as i64 - self.nv as i64) + (a + b) as i64
    }

    /// Imbalance H = a - b.
    pub fn imbalance(&self) -> i64 {
        let (a, b) = self.dec_counts();
        a as i64 - b as i64
    }

    /// Cohomological degree k = 2m e - (2m+1) v + m a + (m+1) b.
    pub fn degree(&self) -> i64 {
        let m = self.m as i64;
        let (a, b) = self.dec_counts();
        2 * m * self.num_edges() as i64 - (2 * m + 1) * self.nv as i64
            + m * a as i64
            + (m + 1) * b as i64
    }

    /// Torus weight: per index i, (#alpha_i - #beta_i).
    pub fn torus_weight(&self) -> Vec<i32> {
        let mut w = vec![0i32; self.g as usize];
        for s in self.decs.iter().flatten() {
            w[s.index() as usize - 1] += s.weight_sign();
        }
        w
    }

    pub fn valence(&self, v: usize) -> usize {
        let ends = self
            .edges
            .iter()
            .map(|&(i, j)| (i as usize == v) as usize + (j as usize == v) as usize)
            .sum::<usize>();
        ends + self.decs[v].len()
    }

    pub fn is_connected(&self) -> bool {
        if self.nv == 0 {
            return true;
        }
        let mut seen = vec![false; self.nv];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &(i, j) in &self.edges {
                let (i, j) = (i as usize, j as usize);
                if i == v && !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
                if j == v && !seen[i] {
                    seen[i] = true;
                    stack.push(i);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Parity of the total decoration degree at vertex v.
    pub fn package_parity(&self, v: usize) -> u8 {
        self.decs[v].iter().map(|s| s.parity(self.m) as u32).sum::<u32>() as u8 & 1
    }

    /// Canonical text form: `g;m;n;edges=[(i,j),..];dec=[v:[sym,..],..]`
    /// with 1-based indices. This string is the deterministic sort key and
    /// the cache key.
    pub fn serialize_canonical(&self) -> String {
        let edges = self
            .edges
            .iter()
            .map(|(i, j)| format!("({},{})", i + 1, j + 1))
            .collect::<Vec<_>>()
            .join(",");
        let decs = self
            .decs
            .iter()
            .enumerate()
            .map(|(v, ds)| {
                let syms = ds.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(",");
                format!("{}:[{}]", v + 1, syms)
            })
            .collect::<Vec<_>>()
            .join(",");
        format!("{};{};{};edges=[{}];dec=[{}]", self.g, self.m, self.nv, edges, decs)
    }

    /// Normalizes edge directions (tail <= head, sign -1 per flip, tadpole
    /// means zero), sorts the edge list (free) and each decoration list
    /// (Koszul signs; a repeated odd symbol at one vertex means zero).
    /// Returns the straightened graph and the sign s with
    /// `input = s * straightened` as elements of the complex.
    pub fn straighten(mut self) -> CanonicalGraph {
        let mut sign = 1i8;
        for e in self.edges.iter_mut() {
            if e.0 == e.1 {
                return CanonicalGraph::Zero;
            }
            if e.0 > e.1 {
                std::mem::swap(&mut e.0, &mut e.1);
                sign = -sign;
            }
        }
        self.edges.sort_unstable();
        let m = self.m;
        for ds in self.decs.iter_mut() {
            sign *= sort_koszul(ds, m);
            for w in ds.windows(2) {
                if w[0] == w[1] && w[0].parity(m) == 1 {
                    return CanonicalGraph::Zero;
                }
            }
        }
        CanonicalGraph::NonZero { graph: self, sign }
    }

    /// Applies the vertex relabeling `perm` (new label of vertex i is
    /// perm[i]) and returns the relabeled graph with the action sign:
    /// sgn(perm) from the odd vertex markers times the Koszul sign of
    /// permuting the decoration packages.
    pub fn relabel(&self, perm: &[usize]) -> (DecoratedGraph, i8) {
        let parities: Vec<u8> = (0..self.nv).map(|v| self.package_parity(v)).collect();
        let mut sign = 1i8;
        for i in 0..self.nv {
            for j in (i + 1)..self.nv {
                if perm[i] > perm[j] {
                    // marker swap (odd) and package Koszul
                    sign = -sign;
                    if parities[i] == 1 && parities[j] == 1 {
                        sign = -sign;
                    }
                }
            }
        }
        let edges = self
            .edges
            .iter()
            .map(|&(i, j)| (perm[i as usize] as u8, perm[j as usize] as u8))
            .collect();
        let mut decs = vec![Vec::new(); self.nv];
        for (v, ds) in self.decs.iter().enumerate() {
            decs[perm[v]] = ds.clone();
        }
        (
            DecoratedGraph { g: self.g, m: self.m, nv: self.nv, edges, decs },
            sign,
        )
    }
}

/// Sorts a symbol list, accumulating the Koszul sign of the permutation.
pub(crate) fn sort_koszul(ds: &mut [Sym], m: u32) -> i8 {
    let mut sign = 1i8;
    // insertion sort, counting graded transpositions
    for i in 1..ds.len() {
        let mut j = i;
        while j > 0 && ds[j - 1] > ds[j] {
            if ds[j - 1].parity(m) == 1 && ds[j].parity(m) == 1 {
                sign = -sign;
            }
            ds.swap(j - 1, j);
            j -= 1;
        }
    }
    sign
}

/// Vertex invariant used to restrict the canonical-form search: candidates
/// only permute vertices within equal invariant classes, with the class
/// order fixed by sorting the invariants.
fn vertex_classes(g: &DecoratedGraph) -> Vec<usize> {
    let mut ends = vec![0usize; g.nv];
    for &(i, j) in &g.edges {
        ends[i as usize] += 1;
        ends[j as usize] += 1;
    }
    let base: Vec<(usize, Vec<Sym>)> = (0..g.nv)
        .map(|v| {
            let mut d = g.decs[v].clone();
            d.sort_unstable();
            (ends[v], d)
        })
        .collect();
    // one neighbourhood refinement round
    let mut inv: Vec<(usize, Vec<Sym>, Vec<(usize, Vec<Sym>)>)> = (0..g.nv)
        .map(|v| {
            let mut nbrs = Vec::new();
            for &(i, j) in &g.edges {
                let (i, j) = (i as usize, j as usize);
                if i == v {
                    nbrs.push(base[j].clone());
                }
                if j == v {
                    nbrs.push(base[i].clone());
                }
            }
            nbrs.sort();
            (base[v].0, base[v].1.clone(), nbrs)
        })
        .collect();
    let mut sorted = inv.clone();
    sorted.sort();
    sorted.dedup();
    inv.iter_mut()
        .map(|x| sorted.binary_search(x).unwrap())
        .collect()
}

fn permutations_within_classes(classes: &[usize]) -> Vec<Vec<usize>> {
    // target slot ranges per class, in class order
    let n = classes.len();
    let nclasses = classes.iter().copied().max().map_or(0, |m| m + 1);
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); nclasses];
    for (v, &c) in classes.iter().enumerate() {
        members[c].push(v);
    }
    let mut slot_start = vec![0usize; nclasses];
    let mut acc = 0;
    for c in 0..nclasses {
        slot_start[c] = acc;
        acc += members[c].len();
    }
    // enumerate assignments class by class
    let mut out: Vec<Vec<usize>> = vec![vec![usize::MAX; n]];
    for c in 0..nclasses {
        let mem = &members[c];
        let k = mem.len();
        let mut next = Vec::new();
        for partial in &out {
            for perm in heaps_permutations(k) {
                let mut p = partial.clone();
                for (offset, &who) in perm.iter().enumerate() {
                    p[mem[who]] = slot_start[c] + offset;
                }
                next.push(p);
            }
        }
        out = next;
    }
    out
}

fn heaps_permutations(k: usize) -> Vec<Vec<usize>> {
    let mut items: Vec<usize> = (0..k).collect();
    let mut out = Vec::new();
    fn rec(n: usize, items: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n <= 1 {
            out.push(items.clone());
            return;
        }
        for i in 0..n {
            rec(n - 1, items, out);
            if n % 2 == 0 {
                items.swap(i, n - 1);
            } else {
                items.swap(0, n - 1);
            }
        }
    }
    rec(k, &mut items, &mut out);
    out
}

/// Canonical form with sign: deterministic representative of the orbit of
/// `raw` under vertex relabeling, edge flips/reordering and decoration
/// reordering. Returns Zero for tadpoles and for graphs carrying a
/// sign-reversing symmetry.
pub fn canonicalize(raw: DecoratedGraph) -> CanonicalGraph {
    let (graph, mut sign) = match raw.straighten() {
        CanonicalGraph::Zero => return CanonicalGraph::Zero,
        CanonicalGraph::NonZero { graph, sign } => (graph, sign),
    };
    if graph.nv <= 1 {
        return CanonicalGraph::NonZero { graph, sign };
    }
    let classes = vertex_classes(&graph);
    let mut best: Option<(Vec<(u8, u8)>, Vec<Vec<Sym>>, i8)> = None;
    let mut ambiguous = false;
    for perm in permutations_within_classes(&classes) {
        let (relabeled, s1) = graph.relabel(&perm);
        let (cand, s2) = match relabeled.straighten() {
            CanonicalGraph::Zero => unreachable!("relabeling cannot create a zero"),
            CanonicalGraph::NonZero { graph, sign } => (graph, sign),
        };
        let key = (cand.edges, cand.decs);
        let s = s1 * s2;
        match &best {
            None => best = Some((key.0, key.1, s)),
            Some((be, bd, bs)) => {
                let cmp = (&key.0, &key.1).cmp(&(be, bd));
                match cmp {
                    std::cmp::Ordering::Less => {
                        best = Some((key.0, key.1, s));
                        ambiguous = false;
                    }
                    std::cmp::Ordering::Equal => {
                        if s != *bs {
                            ambiguous = true;
                        }
                    }
                    std::cmp::Ordering::Greater => {}
                }
            }
        }
    }
    let (edges, decs, s) = best.unwrap();
    if ambiguous {
        return CanonicalGraph::Zero;
    }
    sign *= s;
    CanonicalGraph::NonZero {
        graph: DecoratedGraph { g: graph.g, m: graph.m, nv: graph.nv, edges, decs },
        sign,
    }
}

/// Enumerates per-vertex decoration multisets of size `d` over the 2g
/// symbols, skipping repeated odd symbols (they square to zero).
fn vertex_decorations(g: u32, m: u32, d: usize) -> Vec<Vec<Sym>> {
    let symbols: Vec<Sym> = (1..=g as u8)
        .map(Sym::A)
        .chain((1..=g as u8).map(Sym::B))
        .collect();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(d);
    fn rec(
        symbols: &[Sym],
        m: u32,
        d: usize,
        from: usize,
        cur: &mut Vec<Sym>,
        out: &mut Vec<Vec<Sym>>,
    ) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        for i in from..symbols.len() {
            let s = symbols[i];
            if s.parity(m) == 1 && cur.last() == Some(&s) {
                continue; // odd square is zero
            }
            cur.push(s);
            rec(symbols, m, d, i, cur, out);
            cur.pop();
        }
    }
    rec(&symbols, m, d, 0, &mut cur, &mut out);
    out
}

/// Enumerates edge multisets: multisets of size e over the unordered pairs
/// (i < j) of nv vertices, returned as sorted directed edge lists.
fn edge_multisets(nv: usize, e: usize) -> Vec<Vec<(u8, u8)>> {
    let pairs: Vec<(u8, u8)> = (0..nv as u8)
        .flat_map(|i| ((i + 1)..nv as u8).map(move |j| (i, j)))
        .collect();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(e);
    fn rec(
        pairs: &[(u8, u8)],
        e: usize,
        from: usize,
        cur: &mut Vec<(u8, u8)>,
        out: &mut Vec<Vec<(u8, u8)>>,
    ) {
        if cur.len() == e {
            out.push(cur.clone());
            return;
        }
        for i in from..pairs.len() {
            cur.push(pairs[i]);
            rec(pairs, e, i, cur, out);
            cur.pop();
        }
    }
    rec(&pairs, e, 0, &mut cur, &mut out);
    out
}

fn compositions(total: usize, parts: usize, mins: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; parts];
    fn rec(
        total: usize,
        idx: usize,
        parts: usize,
        mins: &[usize],
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if idx == parts {
            if total == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let remaining_min: usize = mins[idx + 1..].iter().sum();
        if total < mins[idx] + remaining_min {
            return;
        }
        for x in mins[idx]..=(total - remaining_min) {
            cur[idx] = x;
            rec(total - x, idx + 1, parts, mins, cur, out);
        }
        cur[idx] = 0;
    }
    rec(total, 0, parts, mins, &mut cur, &mut out);
    out
}

/// Enumerates the complete duplicate-free list of canonical nonzero
/// decorated graphs of the given weight and imbalance. All vertices are at
/// least trivalent; tadpole-free. With `connected` the list spans the
/// connected complex G, otherwise the free complex fG.
///
/// Bounds: v <= W (from 2e + D >= 3v), D = W - 2(e - v).
pub fn enumerate_basis(g: u32, m: u32, w: i64, h: i64, connected: bool) -> Vec<DecoratedGraph> {
    let mut seen: FxHashMap<String, DecoratedGraph> = FxHashMap::default();
    if w < 1 {
        return Vec::new();
    }
    for nv in 1..=(w as usize) {
        // D = W - 2e + 2v, e >= 0; D >= 0 requires e <= (W + 2v)/2
        let e_max = ((w + 2 * nv as i64) / 2).max(0) as usize;
        let e_min = if connected { nv.saturating_sub(1) } else { 0 };
        for e in e_min..=e_max {
            let d_total = w - 2 * (e as i64 - nv as i64);
            if d_total < 0 {
                continue;
            }
            let d_total = d_total as usize;
            if (h.unsigned_abs() as usize) > d_total {
                continue;
            }
            if (d_total as i64 - h) % 2 != 0 {
                continue;
            }
            for edges in edge_multisets(nv, e) {
                let cand = DecoratedGraph {
                    g,
                    m,
                    nv,
                    edges,
                    decs: vec![Vec::new(); nv],
                };
                if connected && !cand.is_connected() {
                    continue;
                }
                let mut ends = vec![0usize; nv];
                for &(i, j) in &cand.edges {
                    ends[i as usize] += 1;
                    ends[j as usize] += 1;
                }
                let mins: Vec<usize> = ends.iter().map(|&k| 3usize.saturating_sub(k)).collect();
                for counts in compositions(d_total, nv, &mins) {
                    // per-vertex decoration choices
                    let choices: Vec<Vec<Vec<Sym>>> =
                        counts.iter().map(|&d| vertex_decorations(g, m, d)).collect();
                    if choices.iter().any(|c| c.is_empty()) {
                        continue;
                    }
                    let mut idx = vec![0usize; nv];
                    loop {
                        let decs: Vec<Vec<Sym>> =
                            (0..nv).map(|v| choices[v][idx[v]].clone()).collect();
                        let a: i64 = decs
                            .iter()
                            .flatten()
                            .map(|s| s.weight_sign() as i64)
                            .sum();
                        if a == h {
                            let raw = DecoratedGraph { decs, ..cand.clone() };
                            if let CanonicalGraph::NonZero { graph, .. } = canonicalize(raw) {
                                seen.entry(graph.serialize_canonical()).or_insert(graph);
                            }
                        }
                        // advance multi-index
                        let mut k = 0;
                        loop {
                            if k == nv {
                                break;
                            }
                            idx[k] += 1;
                            if idx[k] < choices[k].len() {
                                break;
                            }
                            idx[k] = 0;
                            k += 1;
                        }
                        if k == nv {
                            break;
                        }
                    }
                }
            }
        }
    }
    let mut keys: Vec<String> = seen.keys().cloned().collect();
    keys.sort();
    keys.into_iter().map(|k| seen.remove(&k).unwrap()).collect()
}

// ---------------------------------------------------------------------------
// Hairy graphs (Kontsevich graph operad sub-sequences)
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HairyKind {
    Icg,
    Picg,
    Ppicg,
}

impl HairyKind {
    fn ext_valence_ok(self, v: usize) -> bool {
        match self {
            HairyKind::Icg => true,
            HairyKind::Picg => v >= 1,
            HairyKind::Ppicg => v == 1,
        }
    }
}

/// A graph with `nv_int` internal vertices (0-based indices 0..nv_int) and
/// `r` numbered external vertices (indices nv_int..nv_int+r, fixed under
/// relabeling). Orientation data: internal vertex order (odd markers, like
/// decorated graphs) and edge directions (flip = -1); edge reordering free.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct HairyGraph {
    pub n_dim: u32,
    pub nv_int: usize,
    pub r: usize,
    pub edges: Vec<(u8, u8)>,
}

impl HairyGraph {
    pub fn nv_total(&self) -> usize {
        self.nv_int + self.r
    }

    pub fn complexity(&self) -> i64 {
        self.edges.len() as i64 - self.nv_int as i64
    }

    /// degree = #internal * n - #edges * (n-1) + 1
    pub fn degree(&self) -> i64 {
        self.nv_int as i64 * self.n_dim as i64
            - self.edges.len() as i64 * (self.n_dim as i64 - 1)
            + 1
    }

    pub fn valence(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|&(i, j)| (i as usize == v) as usize + (j as usize == v) as usize)
            .sum()
    }

    pub fn internally_connected(&self) -> bool {
        if self.nv_int <= 1 {
            return true;
        }
        let mut seen = vec![false; self.nv_int];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &(i, j) in &self.edges {
                let (i, j) = (i as usize, j as usize);
                if i < self.nv_int && j < self.nv_int {
                    if i == v && !seen[j] {
                        seen[j] = true;
                        stack.push(j);
                    }
                    if j == v && !seen[i] {
                        seen[i] = true;
                        stack.push(i);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Ambient convention: every connected component contains an external
    /// vertex (no vacuum components).
    pub fn components_touch_external(&self) -> bool {
        if self.nv_int == 0 {
            return true;
        }
        // internal part is connected when used; it must reach an external
        self.edges
            .iter()
            .any(|&(i, j)| (i as usize) < self.nv_int && (j as usize) >= self.nv_int
                || (j as usize) < self.nv_int && (i as usize) >= self.nv_int)
            || self.nv_int == 0
    }

    pub fn serialize_canonical(&self) -> String {
        let edges = self
            .edges
            .iter()
            .map(|(i, j)| format!("({},{})", i + 1, j + 1))
            .collect::<Vec<_>>()
            .join(",");
        format!("h;{};{};{};edges=[{}]", self.n_dim, self.nv_int, self.r, edges)
    }

    fn straighten(mut self) -> Option<(HairyGraph, i8)> {
        let mut sign = 1i8;
        for e in self.edges.iter_mut() {
            if e.0 == e.1 {
                return None;
            }
            if e.0 > e.1 {
                std::mem::swap(&mut e.0, &mut e.1);
                sign = -sign;
            }
        }
        self.edges.sort_unstable();
        Some((self, sign))
    }

    fn relabel_internal(&self, perm: &[usize]) -> (HairyGraph, i8) {
        let mut sign = 1i8;
        for i in 0..self.nv_int {
            for j in (i + 1)..self.nv_int {
                if perm[i] > perm[j] {
                    sign = -sign;
                }
            }
        }
        let map = |v: u8| -> u8 {
            if (v as usize) < self.nv_int {
                perm[v as usize] as u8
            } else {
                v
            }
        };
        let edges = self.edges.iter().map(|&(i, j)| (map(i), map(j))).collect();
        (
            HairyGraph { n_dim: self.n_dim, nv_int: self.nv_int, r: self.r, edges },
            sign,
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CanonicalHairy {
    Zero,
    NonZero { graph: HairyGraph, sign: i8 },
}

pub fn canonicalize_hairy(raw: HairyGraph) -> CanonicalHairy {
    let Some((graph, mut sign)) = raw.straighten() else {
        return CanonicalHairy::Zero;
    };
    if graph.nv_int <= 1 {
        return CanonicalHairy::NonZero { graph, sign };
    }
    let mut best: Option<(Vec<(u8, u8)>, i8)> = None;
    let mut ambiguous = false;
    for perm in heaps_permutations(graph.nv_int) {
        let (relabeled, s1) = graph.relabel_internal(&perm);
        let Some((cand, s2)) = relabeled.straighten() else {
            unreachable!()
        };
        let s = s1 * s2;
        match &best {
            None => best = Some((cand.edges, s)),
            Some((be, bs)) => match cand.edges.cmp(be) {
                std::cmp::Ordering::Less => {
                    best = Some((cand.edges, s));
                    ambiguous = false;
                }
                std::cmp::Ordering::Equal => {
                    if s != *bs {
                        ambiguous = true;
                    }
                }
                std::cmp::Ordering::Greater => {}
            },
        }
    }
    if ambiguous {
        return CanonicalHairy::Zero;
    }
    let (edges, s) = best.unwrap();
    sign *= s;
    CanonicalHairy::NonZero {
        graph: HairyGraph { n_dim: graph.n_dim, nv_int: graph.nv_int, r: graph.r, edges },
        sign,
    }
}

#[derive(Debug, Clone, Copy)]
pub struct HairyOptions {
    /// Keep the zero-edge, zero-internal-vertex graph in ICG enumeration.
    pub include_trivial_icg: bool,
}

impl Default for HairyOptions {
    fn default() -> Self {
        HairyOptions { include_trivial_icg: false }
    }
}

/// Complete list of canonical hairy graph representatives of the given kind
/// at complexity C. Constraints: internal vertices >= 3-valent, internal
/// subgraph connected, every component touches an external vertex, external
/// valences per kind.
pub fn enumerate_hairy(
    kind: HairyKind,
    n_dim: u32,
    r: usize,
    c: i64,
    opts: HairyOptions,
) -> Vec<HairyGraph> {
    let mut seen: FxHashMap<String, HairyGraph> = FxHashMap::default();
    if r == 0 || c < 0 {
        return Vec::new();
    }
    // 3 vi <= 2 e_ii + e_ie <= 2e = 2(vi + C)  =>  vi <= 2C
    let vi_max = (2 * c).max(0) as usize;
    for vi in 0..=vi_max {
        let e = vi as i64 + c;
        if e < 0 {
            continue;
        }
        let e = e as usize;
        if e == 0 {
            if vi == 0 && c == 0 && opts.include_trivial_icg && kind == HairyKind::Icg {
                seen.entry(format!("h;{};0;{};edges=[]", n_dim, r)).or_insert(HairyGraph {
                    n_dim,
                    nv_int: 0,
                    r,
                    edges: Vec::new(),
                });
            }
            continue;
        }
        let total = vi + r;
        for edges in edge_multisets(total, e) {
            let cand = HairyGraph { n_dim, nv_int: vi, r, edges };
            if !(0..vi).all(|v| cand.valence(v) >= 3) {
                continue;
            }
            if !(vi..total).all(|v| kind.ext_valence_ok(cand.valence(v))) {
                continue;
            }
            if !cand.internally_connected() || !cand.components_touch_external() {
                continue;
            }
            if let CanonicalHairy::NonZero { graph, .. } = canonicalize_hairy(cand) {
                seen.entry(graph.serialize_canonical()).or_insert(graph);
            }
        }
    }
    let mut keys: Vec<String> = seen.keys().cloned().collect();
    keys.sort();
    keys.into_iter().map(|k| seen.remove(&k).unwrap()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tripod(g: u32, m: u32, syms: [Sym; 3]) -> DecoratedGraph {
        DecoratedGraph::new(g, m, 1, vec![], vec![syms.to_vec()]).unwrap()
    }

    #[test]
    fn tadpole_is_zero() {
        let raw = DecoratedGraph::new(2, 1, 1, vec![(0, 0)], vec![vec![Sym::A(1)]]).unwrap();
        assert!(canonicalize(raw).is_zero());
    }

    #[test]
    fn double_edge_survives() {
        // two vertices joined by a double edge plus decorations to reach valence 3
        let raw = DecoratedGraph::new(
            1,
            1,
            2,
            vec![(0, 1), (0, 1)],
            vec![vec![Sym::A(1)], vec![Sym::B(1)]],
        )
        .unwrap();
        assert!(!canonicalize(raw).is_zero());
    }

    #[test]
    fn triple_edge_graph_a_survives() {
        let raw = DecoratedGraph::new(1, 1, 2, vec![(0, 1); 3], vec![vec![], vec![]]).unwrap();
        assert!(!canonicalize(raw).is_zero());
    }

    #[test]
    fn even_symbols_commute_odd_square_dies() {
        // m even: alpha even, beta odd
        let t1 = tripod(2, 2, [Sym::A(1), Sym::A(1), Sym::A(2)]);
        let t2 = tripod(2, 2, [Sym::A(1), Sym::A(2), Sym::A(1)]);
        let c1 = canonicalize(t1);
        let c2 = canonicalize(t2);
        assert_eq!(c1.graph(), c2.graph());
        assert_eq!(c1.sign(), 1);
        assert_eq!(c2.sign(), 1);
        let dead = tripod(2, 2, [Sym::B(1), Sym::B(1), Sym::B(2)]);
        assert!(canonicalize(dead).is_zero());
        // m odd: repeated alpha dies
        let dead = tripod(2, 1, [Sym::A(1), Sym::A(1), Sym::A(2)]);
        assert!(canonicalize(dead).is_zero());
    }

    #[test]
    fn odd_swap_gives_sign() {
        // m odd: alphas odd; swapping two distinct alphas at a vertex flips sign
        let t1 = tripod(2, 1, [Sym::A(1), Sym::A(2), Sym::B(1)]);
        let t2 = tripod(2, 1, [Sym::A(2), Sym::A(1), Sym::B(1)]);
        let c1 = canonicalize(t1);
        let c2 = canonicalize(t2);
        assert_eq!(c1.graph(), c2.graph());
        assert_eq!(c1.sign(), -c2.sign());
    }

    #[test]
    fn canonical_idempotent_and_equivariant() {
        use rand::Rng;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        for trial in 0..300 {
            let g = 2;
            let m = 1 + (trial % 2) as u32;
            let nv = rng.gen_range(1..4usize);
            let ne = rng.gen_range(0..4usize);
            let edges: Vec<(u8, u8)> = (0..ne)
                .map(|_| (rng.gen_range(0..nv) as u8, rng.gen_range(0..nv) as u8))
                .collect();
            let decs: Vec<Vec<Sym>> = (0..nv)
                .map(|_| {
                    (0..rng.gen_range(0..4))
                        .map(|_| {
                            let i = rng.gen_range(1..=g) as u8;
                            if rng.gen_bool(0.5) {
                                Sym::A(i)
                            } else {
                                Sym::B(i)
                            }
                        })
                        .collect()
                })
                .collect();
            let raw = DecoratedGraph::new(g as u32, m, nv, edges, decs).unwrap();
            let c1 = canonicalize(raw.clone());
            // idempotence
            if let CanonicalGraph::NonZero { graph, .. } = &c1 {
                let again = canonicalize(graph.clone());
                assert_eq!(again.graph(), Some(graph));
                assert_eq!(again.sign(), 1);
            }
            // equivariance under a random relabeling + flips
            let mut perm: Vec<usize> = (0..nv).collect();
            for i in (1..nv).rev() {
                let j = rng.gen_range(0..=i);
                perm.swap(i, j);
            }
            let (relab, s_act) = raw.relabel(&perm);
            let mut flipped = relab;
            let mut s_flip = 1i8;
            for e in flipped.edges.iter_mut() {
                if e.0 != e.1 && rng.gen_bool(0.5) {
                    std::mem::swap(&mut e.0, &mut e.1);
                    s_flip = -s_flip;
                }
            }
            let c2 = canonicalize(flipped);
            match (&c1, &c2) {
                (CanonicalGraph::Zero, CanonicalGraph::Zero) => {}
                (
                    CanonicalGraph::NonZero { graph: g1, sign: s1 },
                    CanonicalGraph::NonZero { graph: g2, sign: s2 },
                ) => {
                    assert_eq!(g1, g2, "canonical forms differ");
                    // raw = s_act * relab; relab = s_flip * flipped
                    // raw = s1 * canon; flipped = s2 * canon
                    assert_eq!(*s1, s_act * s_flip * *s2, "sign equivariance");
                }
                _ => panic!("zero-ness must be orbit invariant"),
            }
        }
    }

    #[test]
    fn weight_one_counts_closed_form() {
        // |basis(g, m even, 1, 3)| = C(g+2,3); |basis(g, m odd, 1, 3)| = C(g,3)
        fn binom(n: u64, k: u64) -> u64 {
            if k > n {
                return 0;
            }
            let mut r = 1u64;
            for i in 0..k {
                r = r * (n - i) / (i + 1);
            }
            r
        }
        for g in 1..=6u32 {
            let even = enumerate_basis(g, 2, 1, 3, true);
            assert_eq!(even.len() as u64, binom(g as u64 + 2, 3), "m even g={g}");
            let odd = enumerate_basis(g, 1, 1, 3, true);
            assert_eq!(odd.len() as u64, binom(g as u64, 3), "m odd g={g}");
        }
    }

    #[test]
    fn weight_one_g2_m2_h3_has_four_tripods() {
        let basis = enumerate_basis(2, 2, 1, 3, true);
        assert_eq!(basis.len(), 4);
        for b in &basis {
            assert_eq!(b.nv, 1);
            assert_eq!(b.num_edges(), 0);
            assert_eq!(b.weight(), 1);
            assert_eq!(b.imbalance(), 3);
        }
        // m odd at g=2: \Lambda^3 of a 2-dim space
        assert!(enumerate_basis(2, 1, 1, 3, true).is_empty());
    }

    #[test]
    fn weight_two_connected_types() {
        // g=2, m=1, W=2, H=0 connected: graph A (triple edge), B (double edge
        // + alpha|beta), D (single edge, 2+2 decorations), quadpod
        let basis = enumerate_basis(2, 1, 2, 0, true);
        let mut by_shape: FxHashMap<(usize, usize), usize> = FxHashMap::default();
        for b in &basis {
            *by_shape.entry((b.nv, b.num_edges())).or_insert(0) += 1;
        }
        assert_eq!(by_shape.get(&(2, 3)), Some(&1), "graph A");
        assert!(by_shape.contains_key(&(2, 2)), "graph B family");
        assert!(by_shape.contains_key(&(2, 1)), "graph D family");
        assert!(by_shape.contains_key(&(1, 0)), "quadpod family");
        // at g=1 the D and quadpod families vanish identically (a swap
        // symmetry with sign -1), leaving only A and B
        let small = enumerate_basis(1, 1, 2, 0, true);
        assert!(small.iter().all(|b| b.num_edges() >= 2));
        // g=1 m=1 W=2 H=4 needs four alphas, but alpha is odd: nothing survives
        assert!(enumerate_basis(1, 1, 2, 4, true).is_empty());
    }

    #[test]
    fn degree_formula_examples() {
        let t = tripod(2, 1, [Sym::A(1), Sym::A(2), Sym::B(1)]);
        assert_eq!(t.degree(), 1 * 2 + 2 * 1 - 3); // a=2,b=1,m=1: 2+2-3=1
        let t = tripod(2, 1, [Sym::A(1), Sym::A(2), Sym::A(1)]);
        assert_eq!(t.degree(), 0);
        let a = DecoratedGraph::new(1, 1, 2, vec![(0, 1); 3], vec![vec![], vec![]]).unwrap();
        assert_eq!(a.degree(), 0);
        let t = tripod(1, 2, [Sym::B(1), Sym::B(1), Sym::B(1)]);
        assert_eq!(t.degree(), -5 + 9);
    }

    #[test]
    fn hairy_enumeration_examples() {
        let opts = HairyOptions::default();
        // single edge between externals 1 and 2
        let ppicg = enumerate_hairy(HairyKind::Ppicg, 3, 2, 1, opts);
        assert!(ppicg
            .iter()
            .any(|g| g.nv_int == 0 && g.edges == vec![(0, 1)]));
        // ppicg(1) at C=0 empty
        assert!(enumerate_hairy(HairyKind::Ppicg, 3, 1, 0, opts).is_empty());
        // ICG(2) at C=0 empty (trivial graph excluded)
        assert!(enumerate_hairy(HairyKind::Icg, 3, 2, 0, opts).is_empty());
        let with_trivial = enumerate_hairy(
            HairyKind::Icg,
            3,
            2,
            0,
            HairyOptions { include_trivial_icg: true },
        );
        assert_eq!(with_trivial.len(), 1);
    }

    #[test]
    fn hairy_degree_examples() {
        let single = HairyGraph { n_dim: 3, nv_int: 0, r: 2, edges: vec![(0, 1)] };
        assert_eq!(single.degree(), -1);
        let g = HairyGraph { n_dim: 3, nv_int: 1, r: 3, edges: vec![(0, 1), (0, 2), (0, 3)] };
        assert_eq!(g.degree(), 3 - 6 + 1);
        let empty = HairyGraph { n_dim: 3, nv_int: 0, r: 1, edges: vec![] };
        assert_eq!(empty.degree(), 1);
    }

    #[test]
    fn enumerated_bases_are_valid_and_distinct() {
        for (w, h) in [(1i64, 1i64), (2, 0), (2, 2), (3, 1), (3, -1)] {
            let basis = enumerate_basis(2, 1, w, h, true);
            let mut keys: Vec<String> =
                basis.iter().map(|b| b.serialize_canonical()).collect();
            keys.sort();
            keys.dedup();
            assert_eq!(keys.len(), basis.len(), "duplicates at ({w},{h})");
            for b in &basis {
                assert_eq!(b.weight(), w);
                assert_eq!(b.imbalance(), h);
                assert!(b.is_connected());
                for v in 0..b.nv {
                    assert!(b.valence(v) >= 3);
                }
                // canonical form is a fixed point
                let c = canonicalize(b.clone());
                assert_eq!(c.graph(), Some(b));
                assert_eq!(c.sign(), 1);
            }
        }
    }
}
