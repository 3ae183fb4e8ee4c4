//! Coset graphs of the dual punctured codes, as Cayley graphs on syndromes.
//!
//! The cosets of `Ĉ^⊥` are in bijection with syndromes `G·xᵀ ∈ (Z/q)²`, and two
//! cosets differ by a weight-one vector exactly when their syndromes differ by
//! some `λ·col_i` with `λ ≠ 0`. A syndrome `(s0, s1)` is stored as the vertex
//! index `s1·q + s0`.

use std::io::{self, Write};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::code::{closed_form_distribution, CodeError, CodeSpec, TwoRowCode, Variant};
use crate::puncture::{projectivity_check, punctured_code, PunctureError, PuncturedCode};
use crate::ring::{GaloisRing, RingError};

pub const DEFAULT_VERTEX_BUDGET: u64 = 1_000_000;
pub const DEFAULT_SAMPLE_SIZE: usize = 2_000;
pub const DEFAULT_SEED: u64 = 0x5eed_2c0d;
/// Largest graph the all-pairs check accepts.
pub const ALL_PAIRS_LIMIT: u64 = 4096;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Puncture(#[from] PunctureError),
    #[error("punctured code is not projective; the coset graph degree would not be n̂(q-1)")]
    NotProjective,
    #[error("invalid connection set: {0}")]
    InvalidConnection(String),
    #[error("trivial graph ({0}); strong regularity is not meaningful")]
    Trivial(&'static str),
    #[error("not strongly regular: difference {difference:?} has {count} common neighbours, expected {expected}")]
    NotStronglyRegular { difference: Vec<u64>, count: u64, expected: u64 },
    #[error("parameters (v={v}, k={k}, λ={lambda}, μ={mu}) are infeasible: {reason}")]
    Infeasible { v: u64, k: u64, lambda: u64, mu: u64, reason: String },
    #[error("graph has {vertices} vertices, limit is {limit}")]
    TooLarge { vertices: u64, limit: u64 },
    #[error("cover check failed: {0}")]
    Cover(String),
}

/// Cayley graph on `(Z/q)^dim` with a symmetric connection set.
#[derive(Debug, Clone)]
pub struct CayleyGraph {
    q: u64,
    dim: u32,
    connection: Vec<u64>,
    member: Vec<bool>,
}

impl CayleyGraph {
    pub fn new(q: u64, dim: u32, connection: impl IntoIterator<Item = u64>) -> Result<Self, GraphError> {
        let v = q.pow(dim);
        let mut connection: Vec<u64> = connection.into_iter().collect();
        connection.sort_unstable();
        connection.dedup();
        if connection.first() == Some(&0) {
            return Err(GraphError::InvalidConnection("contains zero".into()));
        }
        if let Some(&x) = connection.last().filter(|&&x| x >= v) {
            return Err(GraphError::InvalidConnection(format!("{x} is not a vertex")));
        }
        let mut member = vec![false; v as usize];
        for &c in &connection {
            member[c as usize] = true;
        }
        let graph = CayleyGraph { q, dim, connection, member };
        if let Some(&c) = graph.connection.iter().find(|&&c| !graph.is_connection(graph.neg(c))) {
            return Err(GraphError::InvalidConnection(format!("{:?} has no negative in the set", graph.coords(c))));
        }
        Ok(graph)
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    pub fn vertex_count(&self) -> u64 {
        self.member.len() as u64
    }

    pub fn degree(&self) -> u64 {
        self.connection.len() as u64
    }

    pub fn connection_set(&self) -> &[u64] {
        &self.connection
    }

    pub fn is_connection(&self, x: u64) -> bool {
        self.member[x as usize]
    }

    pub fn coords(&self, x: u64) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.dim as usize);
        let mut x = x;
        for _ in 0..self.dim {
            out.push(x % self.q);
            x /= self.q;
        }
        out
    }

    fn zip_digits(&self, a: u64, b: u64, f: impl Fn(u64, u64) -> u64) -> u64 {
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut scale = 1;
        for _ in 0..self.dim {
            out += f(a % self.q, b % self.q) * scale;
            a /= self.q;
            b /= self.q;
            scale *= self.q;
        }
        out
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let q = self.q;
        self.zip_digits(a, b, |x, y| (x + y) % q)
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        let q = self.q;
        self.zip_digits(a, b, |x, y| (x + q - y) % q)
    }

    pub fn neg(&self, a: u64) -> u64 {
        self.sub(0, a)
    }

    pub fn is_adjacent(&self, u: u64, w: u64) -> bool {
        self.is_connection(self.sub(u, w))
    }

    /// Neighbours of `u`, ascending.
    pub fn neighbors(&self, u: u64) -> Vec<u64> {
        let mut out: Vec<u64> = self.connection.iter().map(|&c| self.add(u, c)).collect();
        out.sort_unstable();
        out
    }

    /// Common neighbours of `0` and `g`: `|S ∩ (g - S)|`.
    pub fn common_with_origin(&self, g: u64) -> u64 {
        self.connection.iter().filter(|&&s| self.is_connection(self.sub(g, s))).count() as u64
    }

    /// One line `"u w"` per edge with `u < w`, ascending.
    pub fn write_edgelist<W: Write>(&self, out: &mut W) -> io::Result<u64> {
        let mut edges = 0;
        for u in 0..self.vertex_count() {
            for w in self.neighbors(u).into_iter().filter(|&w| w > u) {
                writeln!(out, "{u} {w}")?;
                edges += 1;
            }
        }
        Ok(edges)
    }
}

/// Coset graph of `Ĉ^⊥`; the connection set is `{λ·col_i : λ ≠ 0}`.
pub fn build_coset_graph(pc: &PuncturedCode) -> Result<CayleyGraph, GraphError> {
    if !projectivity_check(pc).projective {
        return Err(GraphError::NotProjective);
    }
    let q = pc.modulus();
    let conn: Vec<u64> = (0..pc.len())
        .flat_map(|i| {
            let (a, b) = pc.column(i);
            (1..q).map(move |l| (l * b.0 % q) * q + l * a.0 % q)
        })
        .collect();
    let expected = pc.len() as u64 * (q - 1);
    let graph = CayleyGraph::new(q, 2, conn)?;
    if graph.degree() != expected {
        return Err(GraphError::InvalidConnection(format!(
            "{} distinct generators, expected {expected}",
            graph.degree()
        )));
    }
    Ok(graph)
}

/// Builds ring, code, punctured code and coset graph in one go.
pub fn coset_graph_for(spec: &CodeSpec) -> Result<(PuncturedCode, CayleyGraph), GraphError> {
    let ring = GaloisRing::new(spec.p, spec.h)?;
    let (_, _, pc) = punctured_code(spec, &ring)?;
    let graph = build_coset_graph(&pc)?;
    Ok((pc, graph))
}

/// `(v, k, λ, μ)` with restricted eigenvalues `r > s` of multiplicities `f`, `g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SrgParams {
    pub v: u64,
    pub eta: u64,
    pub lambda: u64,
    pub mu: u64,
    pub r: i64,
    pub s: i64,
    pub f: u64,
    pub g: u64,
}

impl SrgParams {
    /// Derives the spectrum from `(v, k, λ, μ)` with exact integer arithmetic.
    pub fn from_parameters(v: u64, eta: u64, lambda: u64, mu: u64) -> Result<Self, GraphError> {
        let fail = |reason: String| GraphError::Infeasible { v, k: eta, lambda, mu, reason };
        let (vi, k, l, m) = (v as i128, eta as i128, lambda as i128, mu as i128);
        if k * (k - l - 1) != m * (vi - k - 1) {
            return Err(fail("k(k-λ-1) != μ(v-k-1)".into()));
        }
        let disc = (l - m) * (l - m) + 4 * (k - m);
        let root = isqrt(disc).filter(|r| r * r == disc).ok_or_else(|| fail(format!("discriminant {disc} is not a square")))?;
        if (l - m + root) % 2 != 0 {
            return Err(fail("eigenvalues are not integers".into()));
        }
        let r = (l - m + root) / 2;
        let s = (l - m - root) / 2;
        if r == s {
            return Err(fail("restricted eigenvalues coincide".into()));
        }
        let num = -k - (vi - 1) * s;
        if num % (r - s) != 0 {
            return Err(fail("multiplicities are not integers".into()));
        }
        let f = num / (r - s);
        let g = vi - 1 - f;
        if f < 0 || g < 0 {
            return Err(fail("negative multiplicity".into()));
        }
        Ok(SrgParams { v, eta, lambda, mu, r: r as i64, s: s as i64, f: f as u64, g: g as u64 })
    }

    /// The four identities tying parameters to the spectrum.
    pub fn invariants_hold(&self) -> bool {
        let (v, k, l, m) = (self.v as i128, self.eta as i128, self.lambda as i128, self.mu as i128);
        let (r, s, f, g) = (self.r as i128, self.s as i128, self.f as i128, self.g as i128);
        let root = |x: i128| x * x - (l - m) * x - (k - m) == 0;
        k * (k - l - 1) == m * (v - k - 1) && root(r) && root(s) && 1 + f + g == v && k + f * r + g * s == 0
    }

    pub fn tuple(&self) -> (u64, u64, u64, u64) {
        (self.v, self.eta, self.lambda, self.mu)
    }
}

fn isqrt(x: i128) -> Option<i128> {
    if x < 0 {
        return None;
    }
    let mut r = (x as f64).sqrt() as i128;
    while r * r > x {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= x {
        r += 1;
    }
    Some(r)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SrgOptions {
    /// Above this many vertices, difference vectors are sampled.
    pub vertex_budget: u64,
    pub sample_size: usize,
    pub seed: u64,
}

impl Default for SrgOptions {
    fn default() -> Self {
        SrgOptions { vertex_budget: DEFAULT_VERTEX_BUDGET, sample_size: DEFAULT_SAMPLE_SIZE, seed: DEFAULT_SEED }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "mode")]
pub enum VerifyMode {
    Exhaustive,
    Sampled { differences: usize, seed: u64 },
    AllPairs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SrgVerification {
    pub params: SrgParams,
    pub mode: VerifyMode,
}

/// Strong regularity from the base vertex `0`.
///
/// A Cayley graph is vertex-transitive, so the common-neighbour count of a
/// pair `(u, w)` depends only on `w - u`.
pub fn verify_srg(graph: &CayleyGraph, opts: &SrgOptions) -> Result<SrgVerification, GraphError> {
    let v = graph.vertex_count();
    let k = graph.degree();
    if k == 0 {
        return Err(GraphError::Trivial("edgeless"));
    }
    if k == v - 1 {
        return Err(GraphError::Trivial("complete graph"));
    }
    let (differences, mode): (Vec<u64>, VerifyMode) = if v <= opts.vertex_budget {
        ((1..v).collect(), VerifyMode::Exhaustive)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let conn = graph.connection_set();
        let mut picks: Vec<u64> = (0..opts.sample_size).map(|_| conn[rng.gen_range(0..conn.len())]).collect();
        let mut far = 0;
        while far < opts.sample_size {
            let g = rng.gen_range(1..v);
            if !graph.is_connection(g) {
                picks.push(g);
                far += 1;
            }
        }
        (picks, VerifyMode::Sampled { differences: 2 * opts.sample_size, seed: opts.seed })
    };
    let counts: Vec<u64> = differences.par_iter().map(|&g| graph.common_with_origin(g)).collect();

    let adjacent_ref = differences.iter().zip(&counts).find(|(g, _)| graph.is_connection(**g)).map(|(_, &c)| c);
    let far_ref = differences.iter().zip(&counts).find(|(g, _)| !graph.is_connection(**g)).map(|(_, &c)| c);
    let (lambda, mu) = (adjacent_ref.unwrap_or(0), far_ref.unwrap_or(0));
    for (&g, &c) in differences.iter().zip(&counts) {
        let expected = if graph.is_connection(g) { lambda } else { mu };
        if c != expected {
            return Err(GraphError::NotStronglyRegular { difference: graph.coords(g), count: c, expected });
        }
    }
    let params = SrgParams::from_parameters(v, k, lambda, mu)?;
    Ok(SrgVerification { params, mode })
}

/// All-pairs check on an explicit adjacency matrix, for small graphs.
pub fn verify_srg_all_pairs(graph: &CayleyGraph) -> Result<SrgVerification, GraphError> {
    let v = graph.vertex_count();
    if v > ALL_PAIRS_LIMIT {
        return Err(GraphError::TooLarge { vertices: v, limit: ALL_PAIRS_LIMIT });
    }
    let k = graph.degree();
    if k == 0 {
        return Err(GraphError::Trivial("edgeless"));
    }
    if k == v - 1 {
        return Err(GraphError::Trivial("complete graph"));
    }
    let words = (v as usize).div_ceil(64);
    let rows: Vec<Vec<u64>> = (0..v)
        .map(|u| {
            let mut row = vec![0u64; words];
            for w in graph.neighbors(u) {
                row[(w / 64) as usize] |= 1 << (w % 64);
            }
            row
        })
        .collect();
    if rows.iter().any(|r| r.iter().map(|x| x.count_ones() as u64).sum::<u64>() != k) {
        return Err(GraphError::InvalidConnection("graph is not regular".into()));
    }
    let (mut lambda, mut mu) = (None, None);
    for u in 0..v as usize {
        for w in u + 1..v as usize {
            let c: u64 = rows[u].iter().zip(&rows[w]).map(|(a, b)| (a & b).count_ones() as u64).sum();
            let adjacent = rows[u][w / 64] >> (w % 64) & 1 == 1;
            let slot = if adjacent { &mut lambda } else { &mut mu };
            match *slot {
                None => *slot = Some(c),
                Some(e) if e != c => {
                    let diff = graph.sub(w as u64, u as u64);
                    return Err(GraphError::NotStronglyRegular { difference: graph.coords(diff), count: c, expected: e });
                }
                _ => {}
            }
        }
    }
    let params = SrgParams::from_parameters(v, k, lambda.unwrap_or(0), mu.unwrap_or(0))?;
    Ok(SrgVerification { params, mode: VerifyMode::AllPairs })
}

/// Parameters predicted from the punctured weights `{n̂-1, n̂}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredictedSrg {
    /// Multiplicities from the examples-consistent frequencies.
    pub params: SrgParams,
    /// Multiplicities from the theorem-variant frequencies.
    pub theorem_multiplicities: (u64, u64),
    /// `n̂(q-1) - p·w'` for both weights, i.e. scaling by `p` instead of `q`.
    pub p_scaled_eigenvalues: (i64, i64),
}

/// Eigenvalues `n̂(q-1) - q·w'` for the punctured weights `w'`.
pub fn predicted_srg(spec: &CodeSpec) -> Result<PredictedSrg, GraphError> {
    if spec.degenerate {
        return Err(CodeError::Degenerate { d: spec.d }.into());
    }
    let q = spec.q() as i64;
    let p = spec.p as i64;
    let nh = spec.punctured_length() as i64;
    let eta = nh * (q - 1);
    let r = eta - q * (nh - 1);
    let s = eta - q * nh;
    let mu = eta + r * s;
    let lambda = mu + r + s;
    let freqs = |v: Variant| -> Result<(u64, u64), GraphError> {
        let d = closed_form_distribution(spec, v)?;
        Ok((d.frequency(spec.low_weight()), d.frequency(spec.n)))
    };
    let (f, g) = freqs(Variant::ExamplesConsistent)?;
    Ok(PredictedSrg {
        params: SrgParams {
            v: spec.size(),
            eta: eta as u64,
            lambda: lambda.max(0) as u64,
            mu: mu.max(0) as u64,
            r,
            s,
            f,
            g,
        },
        theorem_multiplicities: freqs(Variant::Theorem)?,
        p_scaled_eigenvalues: (eta - p * (nh - 1), eta - p * nh),
    })
}

/// `(N², M(N-1), N-2+(M-1)(M-2), M(M-1))`.
pub fn latin_square_parameters(n: u64, m: u64) -> (u64, u64, u64, u64) {
    (n * n, m * (n - 1), n - 2 + (m - 1) * (m.max(2) - 2), m * (m - 1))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatinSquareReport {
    /// `N = p^h`.
    pub n: u64,
    /// `M = p + 1`.
    pub m: u64,
    pub expected: (u64, u64, u64, u64),
    pub parameters_match: bool,
    pub multiplicities_match: bool,
    pub latin_square: bool,
    /// The printed alternative `λ = (M-1)(N-2) + N-2`, for comparison.
    pub alternative_lambda: u64,
    pub alternative_lambda_matches: bool,
    /// Some `M` for which the parameters are of Latin-square type with `N = √v`.
    pub fitted_m: Option<u64>,
}

pub fn latin_square_classify(params: &SrgParams, spec: &CodeSpec) -> LatinSquareReport {
    let n = spec.q();
    let m = spec.p + 1;
    let expected = latin_square_parameters(n, m);
    let parameters_match = params.tuple() == expected;
    let multiplicities_match = params.f == m * (n - 1) && params.g == (n + 1 - m) * (n - 1);
    let alternative_lambda = (m - 1) * (n - 2) + n - 2;
    let root = isqrt(params.v as i128).unwrap_or(0) as u64;
    let fitted_m = (root * root == params.v && root >= 2)
        .then(|| (1..root).find(|&mm| latin_square_parameters(root, mm) == params.tuple()))
        .flatten();
    LatinSquareReport {
        n,
        m,
        expected,
        parameters_match,
        multiplicities_match,
        latin_square: parameters_match && multiplicities_match,
        alternative_lambda,
        alternative_lambda_matches: params.lambda == alternative_lambda,
        fitted_m,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoverOptions {
    /// Above this many upper-level vertices, vertices are sampled.
    pub vertex_budget: u64,
    pub sample_size: usize,
    pub seed: u64,
}

impl Default for CoverOptions {
    fn default() -> Self {
        CoverOptions { vertex_budget: DEFAULT_VERTEX_BUDGET, sample_size: DEFAULT_SAMPLE_SIZE, seed: DEFAULT_SEED }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverReport {
    pub p: u64,
    pub d: u64,
    pub h_low: u32,
    pub lower_vertices: u64,
    pub lower_degree: u64,
    pub upper_vertices: u64,
    pub upper_degree: u64,
    /// Upper generator columns reduce to the lower ones mod `p^h_low`.
    pub columns_reduce: bool,
    pub fiber_size: u64,
    /// Neighbours of `u` mapped onto `π(u)` itself.
    pub collapsed_per_vertex: u64,
    /// Neighbours of `u` mapped onto each neighbour of `π(u)`.
    pub neighbor_fiber_constant: u64,
    pub vertices_checked: u64,
    pub sampled: bool,
    pub seed: Option<u64>,
}

/// Reduction `Γ_{h+1} → Γ_h` of syndromes mod `p^h`, checked vertex by vertex.
pub fn cover_check(p: u64, h_low: u32, d: u64, opts: &CoverOptions) -> Result<CoverReport, GraphError> {
    let lo_spec = CodeSpec::new(p, h_low, d)?;
    let hi_spec = CodeSpec::new(p, h_low + 1, d)?;
    let (lo_pc, lo) = coset_graph_for(&lo_spec)?;
    let (hi_pc, hi) = coset_graph_for(&hi_spec)?;
    let ql = lo.modulus();
    let columns_reduce = lo_pc.rows.iter().zip(&hi_pc.rows).all(|(a, b)| {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.0 == y.0 % ql)
    });
    if !columns_reduce {
        return Err(GraphError::Cover("generator columns do not reduce to the lower level".into()));
    }
    let qh = hi.modulus();
    let project = |x: u64| (x / qh % ql) * ql + x % qh % ql;

    let mut fibers = vec![0u64; lo.vertex_count() as usize];
    for x in 0..hi.vertex_count() {
        fibers[project(x) as usize] += 1;
    }
    let fiber_size = fibers[0];
    if let Some(y) = fibers.iter().position(|&c| c != fiber_size) {
        return Err(GraphError::Cover(format!("fiber over {y} has {} vertices, expected {fiber_size}", fibers[y])));
    }

    let (vertices, sampled): (Vec<u64>, bool) = if hi.vertex_count() <= opts.vertex_budget {
        ((0..hi.vertex_count()).collect(), false)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        ((0..opts.sample_size).map(|_| rng.gen_range(0..hi.vertex_count())).collect(), true)
    };

    let per_vertex = |u: u64| -> Result<(u64, u64), GraphError> {
        let pu = project(u);
        let mut collapsed = 0u64;
        let mut hits: Vec<(u64, u64)> = Vec::with_capacity(lo.degree() as usize);
        for &c in hi.connection_set() {
            let y = project(hi.add(u, c));
            if y == pu {
                collapsed += 1;
            } else if !lo.is_adjacent(y, pu) {
                return Err(GraphError::Cover(format!("edge {u} -> {} maps to non-edge {pu} -> {y}", hi.add(u, c))));
            } else {
                hits.push((y, 1));
            }
        }
        hits.sort_unstable();
        let mut grouped: Vec<(u64, u64)> = Vec::new();
        for (y, c) in hits {
            match grouped.last_mut() {
                Some(last) if last.0 == y => last.1 += c,
                _ => grouped.push((y, c)),
            }
        }
        if grouped.len() as u64 != lo.degree() {
            return Err(GraphError::Cover(format!(
                "vertex {u}: neighbours reach {} of the {} neighbours of its image",
                grouped.len(),
                lo.degree()
            )));
        }
        let constant = grouped[0].1;
        if let Some(&(y, c)) = grouped.iter().find(|e| e.1 != constant) {
            return Err(GraphError::Cover(format!("vertex {u}: {c} neighbours over {y}, expected {constant}")));
        }
        Ok((collapsed, constant))
    };

    let results: Vec<(u64, u64)> = vertices.par_iter().map(|&u| per_vertex(u)).collect::<Result<_, _>>()?;
    let (collapsed, constant) = results[0];
    if let Some(i) = results.iter().position(|&r| r != (collapsed, constant)) {
        return Err(GraphError::Cover(format!(
            "vertex {} has (collapsed, constant) = {:?}, vertex {} has {:?}",
            vertices[i], results[i], vertices[0], results[0]
        )));
    }
    Ok(CoverReport {
        p,
        d,
        h_low,
        lower_vertices: lo.vertex_count(),
        lower_degree: lo.degree(),
        upper_vertices: hi.vertex_count(),
        upper_degree: hi.degree(),
        columns_reduce,
        fiber_size,
        collapsed_per_vertex: collapsed,
        neighbor_fiber_constant: constant,
        vertices_checked: vertices.len() as u64,
        sampled,
        seed: sampled.then_some(opts.seed),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(q: u64) -> CayleyGraph {
        CayleyGraph::new(q, 1, 1..q).unwrap()
    }

    #[test]
    fn complete_graph_rejected() {
        let g = complete(7);
        assert_eq!(verify_srg(&g, &SrgOptions::default()), Err(GraphError::Trivial("complete graph")));
        assert!(verify_srg_all_pairs(&g).is_err());
    }

    #[test]
    fn paley_nine_by_both_routes() {
        // Z_3 x Z_3 rook graph: connection set = nonzero multiples of (1,0) and (0,1)
        let g = CayleyGraph::new(3, 2, [1, 2, 3, 6]).unwrap();
        let a = verify_srg(&g, &SrgOptions::default()).unwrap();
        let b = verify_srg_all_pairs(&g).unwrap();
        assert_eq!(a.params, b.params);
        assert_eq!(a.params.tuple(), (9, 4, 1, 2));
        assert_eq!((a.params.r, a.params.s, a.params.f, a.params.g), (1, -2, 4, 4));
        assert!(a.params.invariants_hold());
    }

    #[test]
    fn cycle_not_srg() {
        let g = CayleyGraph::new(7, 1, [1, 6]).unwrap();
        assert!(matches!(verify_srg(&g, &SrgOptions::default()), Err(GraphError::NotStronglyRegular { .. })));
    }

    #[test]
    fn five_cycle_is_conference_graph() {
        // C5 = SRG(5,2,0,1) with irrational eigenvalues
        let g = CayleyGraph::new(5, 1, [1, 4]).unwrap();
        assert!(matches!(verify_srg(&g, &SrgOptions::default()), Err(GraphError::Infeasible { .. })));
    }

    #[test]
    fn asymmetric_connection_rejected() {
        assert!(matches!(CayleyGraph::new(5, 1, [1]), Err(GraphError::InvalidConnection(_))));
        assert!(matches!(CayleyGraph::new(5, 1, [0, 1, 4]), Err(GraphError::InvalidConnection(_))));
    }

    #[test]
    fn srg_param_identities() {
        let s = SrgParams::from_parameters(729, 104, 31, 12).unwrap();
        assert_eq!((s.r, s.s, s.f, s.g), (23, -4, 104, 624));
        assert!(SrgParams::from_parameters(729, 104, 30, 12).is_err());
    }

    #[test]
    fn latin_square_formula() {
        assert_eq!(latin_square_parameters(27, 4), (729, 104, 31, 12));
        assert_eq!(latin_square_parameters(16, 3), (256, 45, 16, 6));
    }

    #[test]
    fn edgelist_format() {
        let g = CayleyGraph::new(3, 2, [1, 2, 3, 6]).unwrap();
        let mut buf = Vec::new();
        assert_eq!(g.write_edgelist(&mut buf).unwrap(), 18);
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(&lines[..3], &["0 1", "0 2", "0 3"]);
        let mut sorted = lines.clone();
        sorted.sort_by_key(|l| {
            let mut it = l.split(' ').map(|x| x.parse::<u64>().unwrap());
            (it.next().unwrap(), it.next().unwrap())
        });
        assert_eq!(lines, sorted);
    }

    #[test]
    fn predicted_primitive_p3_h3() {
        let spec = CodeSpec::new(3, 3, 1).unwrap();
        let pr = predicted_srg(&spec).unwrap();
        assert_eq!((pr.params.eta, pr.params.r, pr.params.s), (104, 23, -4));
        assert_eq!((pr.params.f, pr.params.g), (104, 624));
        assert_eq!(pr.params.tuple(), (729, 104, 31, 12));
    }
}
