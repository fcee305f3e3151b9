//! Differentials and brackets on decorated and hairy graphs.
//!
//! Sign bookkeeping uses a fixed tensor layout per labeled graph: all n odd
//! vertex markers first, then the n decoration packages in vertex order.
//! Routing a symbol "from the left" to package i crosses the packages
//! 1..i-1 and contributes the Koszul sign of those crossings; the explicit
//! prefactors (-1)^j of the contraction and (-1)^{|V|} of the cut are as in
//! the defining formulas.

use num_traits::Zero;
use rustc_hash::FxHashMap;
use std::hash::Hash;

use crate::error::GcxError;
use crate::exactla::{q_int, Q, SparseExactMatrix};
use crate::graphs::{canonicalize, CanonicalGraph, DecoratedGraph, HairyGraph, Sym};
use crate::graphs::{canonicalize_hairy, CanonicalHairy};

/// Finite formal Q-linear combination of canonical basis keys.
#[derive(Debug, Clone, PartialEq)]
pub struct LinComb<K: Hash + Eq + Clone> {
    terms: FxHashMap<K, Q>,
}

impl<K: Hash + Eq + Clone> Default for LinComb<K> {
    fn default() -> Self {
        LinComb { terms: FxHashMap::default() }
    }
}

impl<K: Hash + Eq + Clone> LinComb<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, key: K, coeff: Q) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::hash_map::Entry;
        match self.terms.entry(key) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
        }
    }

    pub fn add_int(&mut self, key: K, coeff: i64) {
        self.add(key, q_int(coeff));
    }

    pub fn extend_scaled(&mut self, other: &LinComb<K>, scale: &Q) {
        for (k, v) in other.iter() {
            self.add(k.clone(), v * scale);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Q)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, key: &K) -> Q {
        self.terms.get(key).cloned().unwrap_or_else(Q::zero)
    }
}

fn add_canonical(out: &mut LinComb<DecoratedGraph>, raw: DecoratedGraph, coeff: i64) {
    match canonicalize(raw) {
        CanonicalGraph::Zero => {}
        CanonicalGraph::NonZero { graph, sign } => {
            out.add_int(graph, coeff * sign as i64);
        }
    }
}

/// Parity sum of the decoration packages of vertices `0..v`.
fn left_package_parity(g: &DecoratedGraph, v: usize) -> u8 {
    (0..v).map(|u| g.package_parity(u) as u32).sum::<u32>() as u8 & 1
}

/// Contracts edge `t` of a straightened graph: removes the edge, merges the
/// head vertex into the tail vertex and multiplies the decoration packages.
/// Returns the labeled result and the sign (prefactor (-1)^j for 1-based
/// head label j, times the Koszul sign of carrying the head package next to
/// the tail package).
fn contract_edge(gr: &DecoratedGraph, t: usize) -> Option<(DecoratedGraph, i64)> {
    let (i, j) = gr.edges[t];
    let (i, j) = (i as usize, j as usize);
    if i == j {
        return None;
    }
    let mut sign: i64 = if (j + 1) % 2 == 0 { 1 } else { -1 };
    // move package j to sit right after package i (i < j for basis graphs,
    // but handle both orders)
    let (lo, hi) = if i < j { (i, j) } else { (j, i) };
    let crossed: u32 = ((lo + 1)..hi).map(|u| gr.package_parity(u) as u32).sum();
    if gr.package_parity(j) == 1 && crossed & 1 == 1 {
        sign = -sign;
    }
    let mut decs = gr.decs.clone();
    let moved = decs[j].clone();
    if i < j {
        decs[i].extend(moved);
    } else {
        // head merged into tail that sits to the right: package j crosses
        // package i itself when passing to the merge position
        if gr.package_parity(j) == 1 && gr.package_parity(i) == 1 {
            sign = -sign;
        }
        let mut merged = decs[i].clone();
        merged.splice(0..0, moved);
        decs[i] = merged;
    }
    decs.remove(j);
    let remap = |v: usize| -> u8 {
        if v == j {
            i as u8
        } else if v > j {
            (v - 1) as u8
        } else {
            v as u8
        }
    };
    let edges: Vec<(u8, u8)> = gr
        .edges
        .iter()
        .enumerate()
        .filter(|(s, _)| *s != t)
        .map(|(_, &(x, y))| (remap(x as usize), remap(y as usize)))
        .collect();
    Some((
        DecoratedGraph { g: gr.g, m: gr.m, nv: gr.nv - 1, edges, decs },
        sign,
    ))
}

/// d_c: sum over edges of signed contractions. Terms that canonicalize to
/// zero (tadpoles created by multiple edges, odd squares) drop out.
pub fn d_contract(gr: &DecoratedGraph) -> LinComb<DecoratedGraph> {
    let mut out = LinComb::new();
    for t in 0..gr.edges.len() {
        if let Some((res, sign)) = contract_edge(gr, t) {
            debug_assert!(
                (0..res.nv).all(|v| res.valence(v) >= 3),
                "contraction dropped below trivalence"
            );
            add_canonical(&mut out, res, sign);
        }
    }
    out
}

/// Is the graph still connected after deleting edge occurrence `t`?
fn connected_without_edge(gr: &DecoratedGraph, t: usize) -> bool {
    let mut h = gr.clone();
    h.edges.remove(t);
    h.is_connected()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CutConnectivity {
    /// Keep all cut terms (fG and Chevalley-Eilenberg complexes).
    KeepAll,
    /// Drop terms whose underlying graph disconnects (connected complex G).
    DropDisconnecting,
    /// Keep only terms whose underlying graph disconnects (the cobracket).
    OnlyDisconnecting,
}

/// d_cut: per edge, remove it and multiply the diagonal element
/// Delta = (-1)^m sum_i (alpha_i (x) beta_i - beta_i (x) alpha_i) into the
/// endpoint packages from the left, with global prefactor (-1)^{|V|}.
pub fn d_cut(gr: &DecoratedGraph, conn: CutConnectivity) -> LinComb<DecoratedGraph> {
    let mut out = LinComb::new();
    let pref: i64 = if gr.nv % 2 == 0 { 1 } else { -1 };
    let m_sign: i64 = if gr.m % 2 == 0 { 1 } else { -1 };
    for t in 0..gr.edges.len() {
        match conn {
            CutConnectivity::KeepAll => {}
            CutConnectivity::DropDisconnecting => {
                if !connected_without_edge(gr, t) {
                    continue;
                }
            }
            CutConnectivity::OnlyDisconnecting => {
                if connected_without_edge(gr, t) {
                    continue;
                }
            }
        }
        let (i, j) = gr.edges[t];
        let (i, j) = (i as usize, j as usize);
        for s in 1..=gr.g as u8 {
            for (x, y, c0) in [
                (Sym::A(s), Sym::B(s), m_sign),
                (Sym::B(s), Sym::A(s), -m_sign),
            ] {
                let mut sign = pref * c0;
                let mut h = gr.clone();
                h.edges.remove(t);
                // route the second factor to position j over the original
                // packages, then the first factor to position i over the
                // current packages
                if y.parity(gr.m) == 1 && left_package_parity(&h, j) == 1 {
                    sign = -sign;
                }
                h.decs[j].insert(0, y);
                if x.parity(gr.m) == 1 && left_package_parity(&h, i) == 1 {
                    sign = -sign;
                }
                h.decs[i].insert(0, x);
                add_canonical(&mut out, h, sign);
            }
        }
    }
    out
}

/// Builds the matrix of a differential between two ordered canonical bases.
/// Any output term missing from the codomain basis signals an enumeration
/// bug and is reported as an error.
pub fn differential_matrix<K, F>(
    domain: &[K],
    codomain: &[K],
    mut d: F,
) -> Result<SparseExactMatrix, GcxError>
where
    K: Hash + Eq + Clone + std::fmt::Debug,
    F: FnMut(&K) -> LinComb<K>,
{
    let index: FxHashMap<&K, usize> = codomain.iter().enumerate().map(|(i, k)| (k, i)).collect();
    let mut triples = Vec::new();
    for (c, dom) in domain.iter().enumerate() {
        for (k, v) in d(dom).iter() {
            match index.get(k) {
                Some(&r) => triples.push((r, c, v.clone())),
                None => {
                    return Err(GcxError::MissingCodomainTerm(format!("{k:?}")));
                }
            }
        }
    }
    Ok(SparseExactMatrix::from_triples(codomain.len(), domain.len(), triples))
}

/// Lie bracket on the dual complex: glue one decoration of `p` to one
/// decoration of `q` using the antisymmetric pairing <alpha_i, beta_j> =
/// delta_ij, replacing the pair by an edge between the host vertices.
pub fn bracket_basis(p: &DecoratedGraph, q: &DecoratedGraph) -> LinComb<DecoratedGraph> {
    assert_eq!(p.g, q.g);
    assert_eq!(p.m, q.m);
    let mut out = LinComb::new();
    let n1 = p.nv;
    // union layout: markers of p then q, packages of p then q
    let union_base = |p: &DecoratedGraph, q: &DecoratedGraph| -> DecoratedGraph {
        let mut edges = p.edges.clone();
        edges.extend(q.edges.iter().map(|&(x, y)| (x + n1 as u8, y + n1 as u8)));
        let mut decs = p.decs.clone();
        decs.extend(q.decs.iter().cloned());
        DecoratedGraph { g: p.g, m: p.m, nv: p.nv + q.nv, edges, decs }
    };
    let base = union_base(p, q);
    // positions of decorations in the concatenated package sequence
    let m = p.m;
    for (u, du) in base.decs.iter().enumerate().take(n1) {
        for (pu, &x) in du.iter().enumerate() {
            for (v, dv) in base.decs.iter().enumerate().skip(n1) {
                for (pv, &y) in dv.iter().enumerate() {
                    let pairing: i64 = match (x, y) {
                        (Sym::A(a), Sym::B(b)) if a == b => 1,
                        (Sym::B(a), Sym::A(b)) if a == b => -1,
                        _ => 0,
                    };
                    if pairing == 0 {
                        continue;
                    }
                    // remove y then x, counting symbols crossed on the left
                    let mut sign = pairing;
                    let ly: u32 = base.decs[..v]
                        .iter()
                        .flatten()
                        .map(|s| s.parity(m) as u32)
                        .sum::<u32>()
                        + base.decs[v][..pv]
                            .iter()
                            .map(|s| s.parity(m) as u32)
                            .sum::<u32>();
                    if y.parity(m) == 1 && ly & 1 == 1 {
                        sign = -sign;
                    }
                    let lx: u32 = base.decs[..u]
                        .iter()
                        .flatten()
                        .map(|s| s.parity(m) as u32)
                        .sum::<u32>()
                        + base.decs[u][..pu]
                            .iter()
                            .map(|s| s.parity(m) as u32)
                            .sum::<u32>();
                    if x.parity(m) == 1 && lx & 1 == 1 {
                        sign = -sign;
                    }
                    let mut h = base.clone();
                    h.decs[v].remove(pv);
                    h.decs[u].remove(pu);
                    h.edges.push((u as u8, v as u8));
                    add_canonical(&mut out, h, sign);
                }
            }
        }
    }
    out
}

/// Bracket extended bilinearly to linear combinations.
pub fn lie_bracket(
    x: &LinComb<DecoratedGraph>,
    y: &LinComb<DecoratedGraph>,
) -> LinComb<DecoratedGraph> {
    let mut out = LinComb::new();
    for (p, cp) in x.iter() {
        for (q, cq) in y.iter() {
            let b = bracket_basis(p, q);
            out.extend_scaled(&b, &(cp * cq));
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Hairy vertex splitting
// ---------------------------------------------------------------------------

fn add_canonical_hairy(out: &mut LinComb<HairyGraph>, raw: HairyGraph, coeff: i64) {
    match canonicalize_hairy(raw) {
        CanonicalHairy::Zero => {}
        CanonicalHairy::NonZero { graph, sign } => {
            out.add_int(graph, coeff * sign as i64);
        }
    }
}

fn subsets_of(n: usize) -> impl Iterator<Item = u32> {
    0..(1u32 << n)
}

/// Vertex-splitting differential of the hairy complexes. Splitting an
/// internal vertex distributes its half-edges over two internal vertices
/// joined by a new edge (both at least trivalent); splitting an external
/// vertex moves at least two of its half-edges onto a new internal
/// neighbour. Results that are not internally connected are dropped
/// (quotient by the internally-disconnected span).
pub fn hairy_split(gr: &HairyGraph) -> LinComb<HairyGraph> {
    let mut out = LinComb::new();
    let total = gr.nv_total();
    for v in 0..total {
        let is_internal = v < gr.nv_int;
        // incident half-edges: (edge index, end flag: false=tail,true=head)
        let mut ends = Vec::new();
        for (t, &(x, y)) in gr.edges.iter().enumerate() {
            if x as usize == v {
                ends.push((t, false));
            }
            if y as usize == v {
                ends.push((t, true));
            }
        }
        let deg = ends.len();
        for mask in subsets_of(deg) {
            let moved = mask.count_ones() as usize;
            if moved < 2 {
                continue;
            }
            if is_internal && deg - moved < 2 {
                continue;
            }
            // new internal vertex index: nv_int (externals shift up by one)
            let new_int = gr.nv_int as u8;
            let shift = |w: u8| -> u8 {
                if (w as usize) < gr.nv_int {
                    w
                } else {
                    w + 1
                }
            };
            let mut edges: Vec<(u8, u8)> = gr
                .edges
                .iter()
                .map(|&(x, y)| (shift(x), shift(y)))
                .collect();
            for (pos, &(t, head)) in ends.iter().enumerate() {
                if mask & (1 << pos) != 0 {
                    if head {
                        edges[t].1 = new_int;
                    } else {
                        edges[t].0 = new_int;
                    }
                }
            }
            edges.push((shift(v as u8), new_int));
            let cand = HairyGraph {
                n_dim: gr.n_dim,
                nv_int: gr.nv_int + 1,
                r: gr.r,
                edges,
            };
            if !cand.internally_connected() {
                continue;
            }
            debug_assert!(cand.valence(new_int as usize) >= 3);
            add_canonical_hairy(&mut out, cand, 1);
        }
    }
    out
}
