//! Exact sparse linear algebra over the rationals.
//!
//! All Betti numbers in this crate are reduced to ranks of sparse matrices
//! with exact rational entries. Two rank paths are provided: plain rational
//! elimination (`rank_exact`) and a certified modular path (`rank_certified`)
//! that runs the elimination modulo random word-size primes and falls back to
//! the rational path whenever the modular results disagree.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rustc_hash::FxHashMap;
use std::fmt::Write as _;

use crate::error::GcxError;

pub type Q = BigRational;

pub fn q_int(n: i64) -> Q {
    BigRational::from_integer(BigInt::from(n))
}

/// Sparse matrix with exact rational entries, stored as (row, col, value)
/// triples. No duplicate coordinates, no explicit zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseExactMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<(usize, usize, Q)>,
}

impl SparseExactMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseExactMatrix { rows, cols, entries: Vec::new() }
    }

    pub fn identity(n: usize) -> Self {
        SparseExactMatrix {
            rows: n,
            cols: n,
            entries: (0..n).map(|i| (i, i, Q::one())).collect(),
        }
    }

    /// Builds a matrix from triples, merging duplicates and dropping zeros.
    pub fn from_triples<I: IntoIterator<Item = (usize, usize, Q)>>(
        rows: usize,
        cols: usize,
        triples: I,
    ) -> Self {
        let mut map: FxHashMap<(usize, usize), Q> = FxHashMap::default();
        for (r, c, v) in triples {
            assert!(r < rows && c < cols, "entry ({r},{c}) out of bounds {rows}x{cols}");
            let e = map.entry((r, c)).or_insert_with(Q::zero);
            *e += v;
        }
        let mut entries: Vec<(usize, usize, Q)> = map
            .into_iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|((r, c), v)| (r, c, v))
            .collect();
        entries.sort_by_key(|(r, c, _)| (*r, *c));
        SparseExactMatrix { rows, cols, entries }
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn transpose(&self) -> Self {
        let mut entries: Vec<(usize, usize, Q)> =
            self.entries.iter().map(|(r, c, v)| (*c, *r, v.clone())).collect();
        entries.sort_by_key(|(r, c, _)| (*r, *c));
        SparseExactMatrix { rows: self.cols, cols: self.rows, entries }
    }

    /// Matrix product self * other (for d²=0 checks).
    pub fn mul(&self, other: &SparseExactMatrix) -> Result<SparseExactMatrix, GcxError> {
        if self.cols != other.rows {
            return Err(GcxError::DimensionMismatch {
                expected: self.cols,
                got: other.rows,
            });
        }
        // rows of other, indexed by row
        let mut by_row: FxHashMap<usize, Vec<(usize, Q)>> = FxHashMap::default();
        for (r, c, v) in &other.entries {
            by_row.entry(*r).or_default().push((*c, v.clone()));
        }
        let mut acc: FxHashMap<(usize, usize), Q> = FxHashMap::default();
        for (r, k, v) in &self.entries {
            if let Some(row) = by_row.get(k) {
                for (c, w) in row {
                    let e = acc.entry((*r, *c)).or_insert_with(Q::zero);
                    *e += v * w;
                }
            }
        }
        Ok(SparseExactMatrix::from_triples(
            self.rows,
            other.cols,
            acc.into_iter().map(|((r, c), v)| (r, c, v)),
        ))
    }

    /// Selects a submatrix given kept row and column indices (in order).
    pub fn submatrix(&self, keep_rows: &[usize], keep_cols: &[usize]) -> SparseExactMatrix {
        let rmap: FxHashMap<usize, usize> =
            keep_rows.iter().enumerate().map(|(i, r)| (*r, i)).collect();
        let cmap: FxHashMap<usize, usize> =
            keep_cols.iter().enumerate().map(|(i, c)| (*c, i)).collect();
        let entries = self
            .entries
            .iter()
            .filter_map(|(r, c, v)| match (rmap.get(r), cmap.get(c)) {
                (Some(&nr), Some(&nc)) => Some((nr, nc, v.clone())),
                _ => None,
            })
            .collect();
        SparseExactMatrix { rows: keep_rows.len(), cols: keep_cols.len(), entries }
    }

    /// Applies a permutation to rows and columns: entry (r,c) moves to
    /// (row_perm[r], col_perm[c]).
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> SparseExactMatrix {
        let entries = self
            .entries
            .iter()
            .map(|(r, c, v)| (row_perm[*r], col_perm[*c], v.clone()))
            .collect();
        let mut m = SparseExactMatrix { rows: self.rows, cols: self.cols, entries };
        m.entries.sort_by_key(|(r, c, _)| (*r, *c));
        m
    }

    /// Text dump: header `rows cols nnz`, then one `r c num den` line per entry.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{} {} {}", self.rows, self.cols, self.nnz());
        for (r, c, v) in &self.entries {
            let _ = writeln!(s, "{} {} {} {}", r, c, v.numer(), v.denom());
        }
        s
    }

    pub fn parse_dump(text: &str) -> Result<SparseExactMatrix, GcxError> {
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| GcxError::Parse("empty dump".into()))?;
        let h: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|_| GcxError::Parse(format!("bad header {header}"))))
            .collect::<Result<_, _>>()?;
        if h.len() != 3 {
            return Err(GcxError::Parse(format!("bad header {header}")));
        }
        let mut entries = Vec::with_capacity(h[2]);
        for line in lines.take(h[2]) {
            let t: Vec<&str> = line.split_whitespace().collect();
            if t.len() != 4 {
                return Err(GcxError::Parse(format!("bad entry line {line}")));
            }
            let r: usize = t[0].parse().map_err(|_| GcxError::Parse(line.into()))?;
            let c: usize = t[1].parse().map_err(|_| GcxError::Parse(line.into()))?;
            let num: BigInt = t[2].parse().map_err(|_| GcxError::Parse(line.into()))?;
            let den: BigInt = t[3].parse().map_err(|_| GcxError::Parse(line.into()))?;
            entries.push((r, c, BigRational::new(num, den)));
        }
        Ok(SparseExactMatrix { rows: h[0], cols: h[1], entries })
    }
}

/// Dense-row worklist used by the rational elimination. Rows are kept as
/// sparse maps; pivots are chosen to minimize the Markowitz fill count,
/// ties broken by lowest (row, col) index for determinism.
fn eliminate_rational(m: &SparseExactMatrix) -> (usize, Vec<Vec<(usize, Q)>>) {
    let mut rows: Vec<FxHashMap<usize, Q>> = vec![FxHashMap::default(); m.rows];
    for (r, c, v) in &m.entries {
        rows[*r].insert(*c, v.clone());
    }
    let mut eliminated: Vec<Vec<(usize, Q)>> = Vec::new();
    let mut active: Vec<usize> = (0..m.rows).filter(|r| !rows[*r].is_empty()).collect();
    let mut col_counts: FxHashMap<usize, usize> = FxHashMap::default();
    for r in &active {
        for c in rows[*r].keys() {
            *col_counts.entry(*c).or_insert(0) += 1;
        }
    }
    let mut rank = 0;
    while !active.is_empty() {
        // Markowitz: (row_nnz - 1) * (col_nnz - 1), smallest first.
        let mut best: Option<(usize, usize, usize)> = None; // (score, row, col)
        for &r in &active {
            let rn = rows[r].len();
            let mut cols: Vec<usize> = rows[r].keys().copied().collect();
            cols.sort_unstable();
            for c in cols {
                let cn = col_counts[&c];
                let score = (rn - 1) * (cn - 1);
                let cand = (score, r, c);
                if best.map_or(true, |b| cand < b) {
                    best = Some(cand);
                }
            }
        }
        let (_, pr, pc) = best.unwrap();
        let pivot_row: Vec<(usize, Q)> = {
            let mut v: Vec<(usize, Q)> = rows[pr].iter().map(|(c, q)| (*c, q.clone())).collect();
            v.sort_by_key(|(c, _)| *c);
            v
        };
        let pivot_val = rows[pr][&pc].clone();
        for (c, _) in rows[pr].iter() {
            *col_counts.get_mut(c).unwrap() -= 1;
        }
        rows[pr].clear();
        active.retain(|&r| r != pr);
        rank += 1;
        // eliminate pivot column from remaining active rows
        let mut still_active = Vec::with_capacity(active.len());
        for &r in &active {
            if let Some(f) = rows[r].get(&pc).cloned() {
                let factor = &f / &pivot_val;
                for (c, _) in rows[r].iter() {
                    *col_counts.get_mut(c).unwrap() -= 1;
                }
                let mut row = std::mem::take(&mut rows[r]);
                for (c, v) in &pivot_row {
                    let e = row.entry(*c).or_insert_with(Q::zero);
                    *e -= &factor * v;
                    if e.is_zero() {
                        row.remove(c);
                    }
                }
                row.remove(&pc);
                for (c, _) in row.iter() {
                    *col_counts.entry(*c).or_insert(0) += 1;
                }
                rows[r] = row;
            }
            if !rows[r].is_empty() {
                still_active.push(r);
            }
        }
        active = still_active;
        eliminated.push(pivot_row);
    }
    (rank, eliminated)
}

/// Rank over Q by sparse rational elimination with Markowitz pivoting.
pub fn rank_exact(m: &SparseExactMatrix) -> usize {
    eliminate_rational(m).0
}

const RANK_MOD_PRIMES: [u64; 6] = [
    2_147_483_647,
    2_147_483_629,
    2_147_483_587,
    2_147_483_579,
    2_147_483_563,
    2_147_483_549,
];

fn rank_mod_p(m: &SparseExactMatrix, p: u64) -> Option<usize> {
    // entries reduced mod p; a denominator divisible by p makes the
    // reduction undefined and the prime unusable for this matrix
    let mut rows: Vec<FxHashMap<usize, u64>> = vec![FxHashMap::default(); m.rows];
    for (r, c, v) in &m.entries {
        let num = modulo_bigint(v.numer(), p);
        let den = modulo_bigint(v.denom(), p);
        if den == 0 {
            return None;
        }
        let val = mulmod(num, inv_mod(den, p), p);
        if val != 0 {
            rows[*r].insert(*c, val);
        }
    }
    let mut rank = 0;
    let mut active: Vec<usize> = (0..m.rows).filter(|r| !rows[*r].is_empty()).collect();
    while !active.is_empty() {
        // cheapest row first
        active.sort_by_key(|&r| (rows[r].len(), r));
        let pr = active[0];
        let &pc = rows[pr].keys().min().unwrap();
        let pivot_val = rows[pr][&pc];
        let pivot_row: Vec<(usize, u64)> = rows[pr].iter().map(|(c, v)| (*c, *v)).collect();
        rows[pr].clear();
        active.remove(0);
        rank += 1;
        let inv = inv_mod(pivot_val, p);
        let mut still = Vec::with_capacity(active.len());
        for &r in &active {
            if let Some(&f) = rows[r].get(&pc) {
                let factor = mulmod(f, inv, p);
                let mut row = std::mem::take(&mut rows[r]);
                for (c, v) in &pivot_row {
                    let sub = mulmod(factor, *v, p);
                    let e = row.entry(*c).or_insert(0);
                    *e = (*e + p - sub) % p;
                    if *e == 0 {
                        row.remove(c);
                    }
                }
                row.remove(&pc);
                rows[r] = row;
            }
            if !rows[r].is_empty() {
                still.push(r);
            }
        }
        active = still;
    }
    Some(rank)
}

fn modulo_bigint(n: &BigInt, p: u64) -> u64 {
    use num_integer::Integer;
    let m = n.mod_floor(&BigInt::from(p));
    let (_, digits) = m.to_u64_digits();
    *digits.first().unwrap_or(&0)
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // p prime, a != 0
    powmod(a, p - 2, p)
}

fn powmod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    acc
}

/// Certified rank: eliminate modulo two random distinct word-size primes and
/// accept when they agree and a rational spot check on a random row subsample
/// confirms; otherwise fall back to the rational elimination.
pub fn rank_certified(m: &SparseExactMatrix) -> usize {
    if m.is_zero() {
        return 0;
    }
    let mut rng = rand::thread_rng();
    let mut picks: Vec<u64> = RANK_MOD_PRIMES.to_vec();
    // random order, keep determinism unimportant here: disagreement falls back
    for i in (1..picks.len()).rev() {
        let j = rng.gen_range(0..=i);
        picks.swap(i, j);
    }
    let mut results = Vec::new();
    for p in picks.iter().take(4) {
        if let Some(r) = rank_mod_p(m, *p) {
            results.push(r);
        }
        if results.len() == 2 {
            break;
        }
    }
    if results.len() == 2 && results[0] == results[1] {
        let r = results[0];
        // spot check: rank of a random row subsample never exceeds the
        // modular answer, and reaches it when the subsample is large enough
        let sample: Vec<usize> = if m.rows <= 40 {
            (0..m.rows).collect()
        } else {
            let mut idx: Vec<usize> = (0..m.rows).collect();
            for i in (1..idx.len()).rev() {
                let j = rng.gen_range(0..=i);
                idx.swap(i, j);
            }
            idx.truncate(40);
            idx.sort_unstable();
            idx
        };
        let cols: Vec<usize> = (0..m.cols).collect();
        let sub = m.submatrix(&sample, &cols);
        let sub_rank = rank_exact(&sub);
        if sub_rank <= r && (sample.len() < m.rows || sub_rank == r) {
            if sample.len() == m.rows {
                return sub_rank;
            }
            return r;
        }
    }
    rank_exact(m)
}

/// Rank dispatch used by the complex machinery: exact path below a size
/// cutoff, certified modular path above it.
pub fn rank_auto(m: &SparseExactMatrix) -> usize {
    if m.rows.min(m.cols) <= 48 || m.nnz() <= 96 {
        rank_exact(m)
    } else {
        rank_certified(m)
    }
}

/// dim ker(d_out) - rank(d_in) for a two-step complex
/// `· --d_in--> V --d_out--> ·` with dim V = cols(d_out) = rows(d_in).
pub fn betti_pair(d_in: &SparseExactMatrix, d_out: &SparseExactMatrix) -> Result<usize, GcxError> {
    if d_out.cols != d_in.rows {
        return Err(GcxError::DimensionMismatch { expected: d_out.cols, got: d_in.rows });
    }
    let comp = d_out.mul(d_in)?;
    if !comp.is_zero() {
        return Err(GcxError::NonzeroComposite);
    }
    let dim = d_out.cols;
    let r_out = rank_auto(d_out);
    let r_in = rank_auto(d_in);
    if r_out + r_in > dim {
        return Err(GcxError::Internal(format!(
            "negative betti: dim {dim}, rank_out {r_out}, rank_in {r_in}"
        )));
    }
    Ok(dim - r_out - r_in)
}

/// Basis of the kernel of `m` (as column vectors).
pub fn kernel_basis(m: &SparseExactMatrix) -> Vec<Vec<Q>> {
    // dense reduced row echelon on the transpose-free layout; fine at the
    // sizes where kernels are requested (truncations, quadratic data)
    let mut dense: Vec<Vec<Q>> = vec![vec![Q::zero(); m.cols]; m.rows];
    for (r, c, v) in &m.entries {
        dense[*r][*c] = v.clone();
    }
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; m.cols];
    let mut row = 0usize;
    for col in 0..m.cols {
        let mut piv = None;
        for r in row..m.rows {
            if !dense[r][col].is_zero() {
                piv = Some(r);
                break;
            }
        }
        let Some(piv) = piv else { continue };
        dense.swap(row, piv);
        let inv = dense[row][col].recip();
        for c in col..m.cols {
            let v = &dense[row][c] * &inv;
            dense[row][c] = v;
        }
        for r in 0..m.rows {
            if r != row && !dense[r][col].is_zero() {
                let f = dense[r][col].clone();
                for c in col..m.cols {
                    let v = &dense[r][c] - &f * &dense[row][c];
                    dense[r][c] = v;
                }
            }
        }
        pivot_of_col[col] = Some(row);
        row += 1;
        if row == m.rows {
            break;
        }
    }
    let mut basis = Vec::new();
    for free in 0..m.cols {
        if pivot_of_col[free].is_some() {
            continue;
        }
        let mut v = vec![Q::zero(); m.cols];
        v[free] = Q::one();
        for c in 0..m.cols {
            if let Some(pr) = pivot_of_col[c] {
                let coeff = dense[pr][free].clone();
                if !coeff.is_zero() {
                    v[c] = -coeff;
                }
            }
        }
        basis.push(v);
    }
    basis
}

/// Expresses each target vector in the span of `span` (columns), or reports
/// failure. Used by truncation to rewrite differentials in a kernel basis.
pub fn solve_in_span(span: &[Vec<Q>], targets: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    if span.is_empty() {
        return if targets.iter().all(|t| t.iter().all(|x| x.is_zero())) {
            Some(vec![Vec::new(); targets.len()])
        } else {
            None
        };
    }
    let n = span[0].len();
    let k = span.len();
    // Gaussian elimination on [span | targets]
    let mut a: Vec<Vec<Q>> = (0..n)
        .map(|i| {
            let mut row: Vec<Q> = span.iter().map(|s| s[i].clone()).collect();
            row.extend(targets.iter().map(|t| t[i].clone()));
            row
        })
        .collect();
    let width = k + targets.len();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut r0 = 0usize;
    for c in 0..k {
        let mut piv = None;
        for r in r0..n {
            if !a[r][c].is_zero() {
                piv = Some(r);
                break;
            }
        }
        let Some(p) = piv else { continue };
        a.swap(r0, p);
        let inv = a[r0][c].recip();
        for j in c..width {
            let v = &a[r0][j] * &inv;
            a[r0][j] = v;
        }
        for r in 0..n {
            if r != r0 && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                for j in c..width {
                    let v = &a[r][j] - &f * &a[r0][j];
                    a[r][j] = v;
                }
            }
        }
        pivots.push((r0, c));
        r0 += 1;
    }
    // consistency: rows without pivot must have zero target part
    for r in r0..n {
        for j in k..width {
            if !a[r][j].is_zero() {
                return None;
            }
        }
    }
    let mut out = Vec::with_capacity(targets.len());
    for (ti, _) in targets.iter().enumerate() {
        let mut coords = vec![Q::zero(); k];
        for (pr, pc) in &pivots {
            coords[*pc] = a[*pr][k + ti].clone();
        }
        out.push(coords);
    }
    Some(out)
}

/// Rank of the column span of a list of dense vectors.
pub fn rank_of_vectors(vecs: &[Vec<Q>], dim: usize) -> usize {
    let triples = vecs.iter().enumerate().flat_map(|(j, v)| {
        v.iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(move |(i, x)| (i, j, x.clone()))
    });
    rank_exact(&SparseExactMatrix::from_triples(dim, vecs.len(), triples))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: usize, cols: usize, tr: &[(usize, usize, i64)]) -> SparseExactMatrix {
        SparseExactMatrix::from_triples(
            rows,
            cols,
            tr.iter().map(|(r, c, v)| (*r, *c, q_int(*v))),
        )
    }

    #[test]
    fn rank_zero_matrix() {
        assert_eq!(rank_exact(&SparseExactMatrix::zero(4, 7)), 0);
        assert_eq!(rank_certified(&SparseExactMatrix::zero(0, 0)), 0);
    }

    #[test]
    fn rank_identity() {
        assert_eq!(rank_exact(&SparseExactMatrix::identity(2)), 2);
        assert_eq!(rank_certified(&SparseExactMatrix::identity(5)), 5);
    }

    #[test]
    fn rank_small_dependent() {
        // rows 2x diag + a dependent third row
        let m = mat(3, 2, &[(0, 0, 1), (0, 1, 2), (1, 0, 2), (1, 1, 4), (2, 1, 1)]);
        assert_eq!(rank_exact(&m), 2);
        assert_eq!(rank_certified(&m), 2);
    }

    #[test]
    fn rank_transpose_and_permutation_invariance() {
        let m = mat(4, 3, &[(0, 0, 3), (1, 1, -2), (2, 0, 1), (2, 2, 5), (3, 2, 5)]);
        assert_eq!(rank_exact(&m), rank_exact(&m.transpose()));
        let rp = [2, 0, 3, 1];
        let cp = [1, 2, 0];
        assert_eq!(rank_exact(&m), rank_exact(&m.permuted(&rp, &cp)));
    }

    #[test]
    fn certified_handles_prime_sized_entries() {
        // entries equal to the sampled primes must still come out right
        let mut tr = Vec::new();
        for (i, p) in RANK_MOD_PRIMES.iter().enumerate() {
            tr.push((i, i, *p as i64));
        }
        let m = mat(RANK_MOD_PRIMES.len(), RANK_MOD_PRIMES.len(), &tr);
        assert_eq!(rank_certified(&m), RANK_MOD_PRIMES.len());
        assert_eq!(rank_exact(&m), RANK_MOD_PRIMES.len());
    }

    #[test]
    fn certified_agrees_with_exact_on_random_pm1() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let rows = rng.gen_range(1..30);
            let cols = rng.gen_range(1..30);
            let mut tr = Vec::new();
            for r in 0..rows {
                for c in 0..cols {
                    let x: i64 = [-1, 0, 0, 1][rng.gen_range(0..4)];
                    if x != 0 {
                        tr.push((r, c, x));
                    }
                }
            }
            let m = mat(rows, cols, &tr);
            assert_eq!(rank_certified(&m), rank_exact(&m));
        }
    }

    #[test]
    fn betti_pair_zero_maps() {
        let d_in = SparseExactMatrix::zero(5, 3);
        let d_out = SparseExactMatrix::zero(2, 5);
        assert_eq!(betti_pair(&d_in, &d_out).unwrap(), 5);
    }

    #[test]
    fn betti_pair_exact_segment() {
        // d_in: Q^2 -> Q^2 surjective onto ker(d_out), d_out: Q^2 -> Q with kernel e0
        let d_out = mat(1, 2, &[(0, 1, 1)]);
        let d_in = mat(2, 2, &[(0, 0, 1), (0, 1, 3)]);
        assert_eq!(betti_pair(&d_in, &d_out).unwrap(), 0);
    }

    #[test]
    fn betti_pair_rejects_mismatch_and_nonzero_composite() {
        let d_in = SparseExactMatrix::zero(4, 2);
        let d_out = SparseExactMatrix::zero(2, 5);
        assert!(matches!(betti_pair(&d_in, &d_out), Err(GcxError::DimensionMismatch { .. })));
        let d_in = mat(2, 1, &[(0, 0, 1)]);
        let d_out = mat(1, 2, &[(0, 0, 1)]);
        assert!(matches!(betti_pair(&d_in, &d_out), Err(GcxError::NonzeroComposite)));
    }

    #[test]
    fn kernel_and_solve() {
        let m = mat(2, 3, &[(0, 0, 1), (0, 1, 1), (1, 2, 1)]);
        let k = kernel_basis(&m);
        assert_eq!(k.len(), 1);
        // kernel vector is (t, -t, 0)
        assert_eq!(k[0][0], -k[0][1].clone());
        assert!(k[0][2].is_zero());
        let t = vec![vec![q_int(2), q_int(-2), q_int(0)]];
        let sol = solve_in_span(&k, &t).unwrap();
        assert_eq!(sol.len(), 1);
        let not_in = vec![vec![q_int(1), q_int(0), q_int(0)]];
        assert!(solve_in_span(&k, &not_in).is_none());
    }

    #[test]
    fn dump_round_trip() {
        let m = mat(3, 4, &[(0, 1, 2), (2, 3, -5)]);
        let d = m.dump();
        assert!(d.starts_with("3 4 2\n"));
        assert_eq!(SparseExactMatrix::parse_dump(&d).unwrap(), m);
    }
}
