//! Trace codes `C_d` and their weight distributions.
//!
//! Coordinate `j` of `c(A)` is `Tr(A·ξ^{jd})` for `j = 0..p²-2`, so the
//! evaluation points run through the multiset `{x^d : x ∈ T*}`. Weight
//! distributions are computed by exhaustive enumeration over all `p^{2h}`
//! messages; the closed forms are evaluated separately and compared against
//! the enumeration, never trusted on their own.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ring::{gcd, GaloisRing, GrElem, RingError, Zq};

/// Default cap on coordinate evaluations for one enumeration.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodeError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("d = {d} does not divide p² - 1 = {order}")]
    BadDivisor { d: u64, order: u64 },
    #[error("code parameters (p={p}, h={h}) do not match the ring GR({rp}^{rh}, 2)")]
    RingMismatch { p: u64, h: u32, rp: u64, rh: u32 },
    #[error("enumeration needs {needed} coordinate evaluations, budget is {budget}")]
    BudgetExceeded { needed: u64, budget: u64 },
    #[error("d = {d} is degenerate (m = p² - 1): no two-weight prediction; use enumeration")]
    Degenerate { d: u64 },
    #[error("closed form predicts a negative frequency at weight {weight}")]
    InfeasiblePrediction { weight: u64 },
    #[error("malformed weight distribution: {0}")]
    Parse(String),
}

/// Parameters of `C_d` over `Z/p^h`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeSpec {
    pub p: u64,
    pub h: u32,
    pub d: u64,
    /// `gcd(d, p+1)·(p-1)`, the size of every nonempty zero locus.
    pub m: u64,
    /// Length `p² - 1`.
    pub n: u64,
    /// `m = p² - 1`: every coordinate is a scalar multiple of `Tr(A)`.
    pub degenerate: bool,
}

impl CodeSpec {
    pub fn new(p: u64, h: u32, d: u64) -> Result<Self, CodeError> {
        let n = p * p - 1;
        if d == 0 || n % d != 0 {
            return Err(CodeError::BadDivisor { d, order: n });
        }
        let m = gcd(d, p + 1) * (p - 1);
        Ok(CodeSpec { p, h, d, m, n, degenerate: m == n })
    }

    /// `p^h`.
    pub fn q(&self) -> u64 {
        self.p.pow(self.h)
    }

    /// Number of codewords, `p^{2h}`.
    pub fn size(&self) -> u64 {
        self.q() * self.q()
    }

    /// Length `(p²-1)/m` of the punctured code.
    pub fn punctured_length(&self) -> u64 {
        self.n / self.m
    }

    /// The smaller nonzero weight `p² - 1 - m`.
    pub fn low_weight(&self) -> u64 {
        self.n - self.m
    }

    fn check_ring(&self, ring: &GaloisRing) -> Result<(), CodeError> {
        if ring.p() != self.p || ring.h() != self.h {
            return Err(CodeError::RingMismatch { p: self.p, h: self.h, rp: ring.p(), rh: ring.h() });
        }
        Ok(())
    }
}

impl fmt::Display for CodeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p={} h={} d={} m={} n={}", self.p, self.h, self.d, self.m, self.n)
    }
}

/// Positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|k| n % k == 0).collect()
}

/// Divisors `d` of `p² - 1` with `m < p² - 1`.
pub fn nondegenerate_divisors(p: u64) -> Vec<u64> {
    divisors(p * p - 1)
        .into_iter()
        .filter(|&d| gcd(d, p + 1) != p + 1)
        .collect()
}

/// A code over `Z/q` given by two generator rows.
pub trait TwoRowCode {
    fn modulus(&self) -> u64;
    /// Characteristic of the residue field.
    fn residue_prime(&self) -> u64;
    fn rows(&self) -> [&[Zq]; 2];

    fn len(&self) -> usize {
        self.rows()[0].len()
    }

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn column(&self, j: usize) -> (Zq, Zq) {
        let [r0, r1] = self.rows();
        (r0[j], r1[j])
    }

    /// `a·row0 + b·row1`.
    fn combine(&self, a: Zq, b: Zq) -> Vec<Zq> {
        let q = self.modulus();
        let [r0, r1] = self.rows();
        r0.iter().zip(r1).map(|(x, y)| Zq((a.0 * x.0 + b.0 * y.0) % q)).collect()
    }
}

/// The 2×n generator of `C_d`: row 0 is `c(1)`, row 1 is `c(ξ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorMatrix {
    pub spec: CodeSpec,
    pub rows: [Vec<Zq>; 2],
    /// Exponent `j` of the evaluation point `ξ^{jd}` of each column.
    pub column_labels: Vec<u64>,
    q: u64,
}

impl TwoRowCode for GeneratorMatrix {
    fn modulus(&self) -> u64 {
        self.q
    }

    fn residue_prime(&self) -> u64 {
        self.spec.p
    }

    fn rows(&self) -> [&[Zq]; 2] {
        [&self.rows[0], &self.rows[1]]
    }
}

pub fn build_code(spec: &CodeSpec, ring: &GaloisRing) -> Result<GeneratorMatrix, CodeError> {
    spec.check_ring(ring)?;
    let n = spec.n;
    let xi = ring.xi();
    let mut row0 = Vec::with_capacity(n as usize);
    let mut row1 = Vec::with_capacity(n as usize);
    for j in 0..n {
        let x = ring.xi_pow(j * spec.d);
        row0.push(ring.trace(x)?);
        row1.push(ring.trace(ring.mul(xi, x))?);
    }
    Ok(GeneratorMatrix {
        spec: *spec,
        rows: [row0, row1],
        column_labels: (0..n).collect(),
        q: ring.q(),
    })
}

/// `c(A)` through the generator rows, writing `A = a + b·ξ`.
pub fn codeword(a: GrElem, gen: &GeneratorMatrix, ring: &GaloisRing) -> Vec<Zq> {
    let (s, t) = ring.xi_coordinates(a);
    gen.combine(s, t)
}

/// `c(A)` straight from the definition, one trace per coordinate.
pub fn codeword_by_trace(a: GrElem, spec: &CodeSpec, ring: &GaloisRing) -> Result<Vec<Zq>, CodeError> {
    spec.check_ring(ring)?;
    (0..spec.n)
        .map(|j| Ok(ring.trace(ring.mul(a, ring.xi_pow(j * spec.d)))?))
        .collect()
}

pub fn hamming_weight(word: &[Zq]) -> u64 {
    word.iter().filter(|c| c.0 != 0).count() as u64
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    Enumerated,
    ClosedTheorem,
    ClosedExamples,
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Source::Enumerated => "enumerated",
            Source::ClosedTheorem => "closed_theorem",
            Source::ClosedExamples => "closed_examples",
        })
    }
}

/// Sorted `(weight, frequency)` pairs; zero frequencies are omitted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightDistribution {
    pub entries: Vec<(u64, u64)>,
    pub source: Source,
}

impl WeightDistribution {
    pub fn new(entries: impl IntoIterator<Item = (u64, u64)>, source: Source) -> Self {
        let mut merged = BTreeMap::new();
        for (w, f) in entries {
            *merged.entry(w).or_insert(0) += f;
        }
        let entries = merged.into_iter().filter(|&(_, f)| f > 0).collect();
        WeightDistribution { entries, source }
    }

    /// From a histogram indexed by weight.
    pub fn from_histogram(hist: &[u64], source: Source) -> Self {
        Self::new(hist.iter().enumerate().map(|(w, &f)| (w as u64, f)), source)
    }

    pub fn total(&self) -> u64 {
        self.entries.iter().map(|e| e.1).sum()
    }

    pub fn frequency(&self, weight: u64) -> u64 {
        self.entries.iter().find(|e| e.0 == weight).map_or(0, |e| e.1)
    }

    pub fn nonzero_weights(&self) -> Vec<u64> {
        self.entries.iter().map(|e| e.0).filter(|&w| w > 0).collect()
    }

    /// Smallest positive weight.
    pub fn min_distance(&self) -> Option<u64> {
        self.nonzero_weights().first().copied()
    }

    /// `Σ A_w·(n - w)`.
    pub fn zero_count_moment(&self, n: u64) -> u64 {
        self.entries.iter().map(|&(w, f)| f * (n - w)).sum()
    }

    /// Same frequencies with every weight divided by `m`; `None` if some
    /// weight is not a multiple of `m`.
    pub fn divide_weights(&self, m: u64) -> Option<WeightDistribution> {
        self.entries
            .iter()
            .map(|&(w, f)| (w % m == 0).then_some((w / m, f)))
            .collect::<Option<Vec<_>>>()
            .map(|e| WeightDistribution::new(e, self.source))
    }

    /// `[ <0, 1>, <20, 744>, <24, 14880> ]`.
    pub fn to_bracket_string(&self) -> String {
        let inner: Vec<String> = self.entries.iter().map(|(w, f)| format!("<{w}, {f}>")).collect();
        format!("[ {} ]", inner.join(", "))
    }

    pub fn parse_bracketed(s: &str, source: Source) -> Result<Self, CodeError> {
        let err = |m: &str| CodeError::Parse(format!("{m}: {s:?}"));
        let body = s
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| err("missing brackets"))?;
        let mut entries = Vec::new();
        let mut rest = body.trim();
        while !rest.is_empty() {
            let open = rest.strip_prefix('<').ok_or_else(|| err("expected '<'"))?;
            let close = open.find('>').ok_or_else(|| err("unterminated entry"))?;
            let (pair, tail) = open.split_at(close);
            let mut parts = pair.split(',').map(str::trim);
            let w = parts.next().and_then(|x| x.parse().ok()).ok_or_else(|| err("bad weight"))?;
            let f = parts.next().and_then(|x| x.parse().ok()).ok_or_else(|| err("bad frequency"))?;
            if parts.next().is_some() {
                return Err(err("entry has more than two fields"));
            }
            entries.push((w, f));
            rest = tail[1..].trim_start();
            if rest.is_empty() {
                break;
            }
            rest = rest.strip_prefix(',').ok_or_else(|| err("expected ','"))?.trim_start();
            if rest.is_empty() {
                return Err(err("trailing comma"));
            }
        }
        Ok(WeightDistribution::new(entries, source))
    }
}

impl fmt::Display for WeightDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_bracket_string())
    }
}

impl FromStr for WeightDistribution {
    type Err = CodeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse_bracketed(s, Source::Enumerated)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumOptions {
    /// Evaluate one representative per orbit of `A` under `u·ξ^{kd}`.
    pub use_orbits: bool,
    /// Cap on coordinate evaluations; `None` disables the guard.
    pub budget: Option<u64>,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions { use_orbits: false, budget: Some(DEFAULT_BUDGET) }
    }
}

impl EnumOptions {
    pub fn naive() -> Self {
        Self::default()
    }

    pub fn orbits() -> Self {
        EnumOptions { use_orbits: true, ..Self::default() }
    }

    pub fn unlimited(mut self) -> Self {
        self.budget = None;
        self
    }
}

/// Weight histogram of every `a·row0 + b·row1`, `(a, b) ∈ (Z/q)²`.
///
/// Partitioned over `b` across worker threads; partial histograms are merged
/// by exact addition, so the result does not depend on the thread count.
pub fn enumerate_histogram<C: TwoRowCode + Sync>(code: &C, budget: Option<u64>) -> Result<Vec<u64>, CodeError> {
    let q = code.modulus();
    let n = code.len();
    let needed = q.saturating_mul(q).saturating_mul(n as u64);
    if let Some(budget) = budget {
        if needed > budget {
            return Err(CodeError::BudgetExceeded { needed, budget });
        }
    }
    let [r0, r1] = code.rows();
    let r0: Vec<u64> = r0.iter().map(|z| z.0).collect();
    let r1: Vec<u64> = r1.iter().map(|z| z.0).collect();
    let hist = (0..q)
        .into_par_iter()
        .fold(
            || vec![0u64; n + 1],
            |mut hist, b| {
                // word = b·row1, then add row0 once per step of a.
                let mut word: Vec<u64> = r1.iter().map(|y| y * b % q).collect();
                for _ in 0..q {
                    hist[word.iter().filter(|&&c| c != 0).count()] += 1;
                    for (c, &x) in word.iter_mut().zip(&r0) {
                        *c += x;
                        if *c >= q {
                            *c -= q;
                        }
                    }
                }
                hist
            },
        )
        .reduce(
            || vec![0u64; n + 1],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    Ok(hist)
}

/// Distinct elements `u·ξ^{kd}` with `u` a unit of `Z/q`.
fn orbit_group(spec: &CodeSpec, ring: &GaloisRing) -> Vec<(u64, u64)> {
    let mut seen = vec![false; ring.size() as usize];
    let mut out = Vec::new();
    let steps = spec.n / spec.d;
    for k in 0..steps {
        let x = ring.xi_pow(k * spec.d);
        for u in ring.zq_units() {
            let g = ring.scale(u, x);
            let idx = ring.index_of(g) as usize;
            if !seen[idx] {
                seen[idx] = true;
                out.push(g.coords());
            }
        }
    }
    out
}

fn enumerate_orbits(gen: &GeneratorMatrix, ring: &GaloisRing, budget: Option<u64>) -> Result<Vec<u64>, CodeError> {
    let spec = &gen.spec;
    let size = ring.size() as usize;
    let n = spec.n as usize;
    let arith = ring.arith();
    let group = orbit_group(spec, ring);
    let mut visited = vec![false; size];
    let mut hist = vec![0u64; n + 1];
    let mut evaluations = 0u64;
    for idx in 0..size {
        if visited[idx] {
            continue;
        }
        let a = ring.from_index(idx as u64);
        let mut orbit = 0u64;
        for &g in &group {
            let (c0, c1) = arith.mul(g, a.coords());
            let j = (c1 * ring.q() + c0) as usize;
            if !visited[j] {
                visited[j] = true;
                orbit += 1;
            }
        }
        evaluations += n as u64;
        if let Some(budget) = budget {
            if evaluations > budget {
                return Err(CodeError::BudgetExceeded { needed: evaluations, budget });
            }
        }
        let w = hamming_weight(&codeword(a, gen, ring)) as usize;
        hist[w] += orbit;
    }
    Ok(hist)
}

/// Exact weight distribution of `C_d` over all `A ∈ GR(p^h, 2)`.
pub fn weight_distribution_enum(
    spec: &CodeSpec,
    ring: &GaloisRing,
    opts: EnumOptions,
) -> Result<WeightDistribution, CodeError> {
    let gen = build_code(spec, ring)?;
    let hist = if opts.use_orbits {
        enumerate_orbits(&gen, ring, opts.budget)?
    } else {
        enumerate_histogram(&gen, opts.budget)?
    };
    Ok(WeightDistribution::from_histogram(&hist, Source::Enumerated))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    /// `A1 = (p+1)(p^h-1)` for `d = 1`, `A1 = ((p²-1)/m)((m+1)^h - 1)` for `d > 1`.
    Theorem,
    /// `A1 = ((p²-1)/m)(p^h - 1)` for every `d`.
    ExamplesConsistent,
}

impl Variant {
    pub fn source(self) -> Source {
        match self {
            Variant::Theorem => Source::ClosedTheorem,
            Variant::ExamplesConsistent => Source::ClosedExamples,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Variant::Theorem => "theorem",
            Variant::ExamplesConsistent => "examples_consistent",
        }
    }
}

/// Predicted `[<0,1>, <n-m, A1>, <n, A2>]`.
pub fn closed_form_distribution(spec: &CodeSpec, variant: Variant) -> Result<WeightDistribution, CodeError> {
    if spec.degenerate {
        return Err(CodeError::Degenerate { d: spec.d });
    }
    let (p, q, m, n) = (spec.p as u128, spec.q() as u128, spec.m as u128, spec.n as u128);
    let total = q * q;
    let (a1, a2) = match variant {
        Variant::Theorem if spec.d == 1 => {
            let a1 = (p + 1) * (q - 1);
            let a2 = p * (q / p - 1) * (q - 1);
            (a1, Some(a2))
        }
        Variant::Theorem => ((n / m) * ((m + 1).pow(spec.h) - 1), None),
        Variant::ExamplesConsistent => ((n / m) * (q - 1), None),
    };
    let a2 = match a2 {
        Some(a2) => a2,
        None => (total - 1).checked_sub(a1).ok_or(CodeError::InfeasiblePrediction { weight: spec.n })?,
    };
    let to_u64 = |x: u128| u64::try_from(x).map_err(|_| CodeError::InfeasiblePrediction { weight: spec.n });
    Ok(WeightDistribution::new(
        [(0, 1), (spec.low_weight(), to_u64(a1)?), (spec.n, to_u64(a2)?)],
        variant.source(),
    ))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryDiff {
    pub weight: u64,
    pub predicted: u64,
    pub enumerated: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Comparison {
    pub variant: Variant,
    pub predicted: WeightDistribution,
    pub matches: bool,
    pub differences: Vec<EntryDiff>,
}

impl Comparison {
    pub fn new(variant: Variant, predicted: WeightDistribution, enumerated: &WeightDistribution) -> Self {
        let mut weights: Vec<u64> =
            predicted.entries.iter().chain(&enumerated.entries).map(|e| e.0).collect();
        weights.sort_unstable();
        weights.dedup();
        let differences: Vec<EntryDiff> = weights
            .into_iter()
            .map(|w| EntryDiff { weight: w, predicted: predicted.frequency(w), enumerated: enumerated.frequency(w) })
            .filter(|e| e.predicted != e.enumerated)
            .collect();
        Comparison { variant, predicted, matches: differences.is_empty(), differences }
    }
}

/// Enumeration next to both closed forms, plus the invariant checks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistributionReport {
    pub spec: CodeSpec,
    pub enumerated: WeightDistribution,
    /// Empty for degenerate `d`.
    pub comparisons: Vec<Comparison>,
    pub frequency_sum_ok: bool,
    pub moment_identity_ok: bool,
    /// `None` for degenerate `d`, where no two-weight claim is made.
    pub two_weight_ok: Option<bool>,
}

impl DistributionReport {
    pub fn invariants_hold(&self) -> bool {
        self.frequency_sum_ok && self.moment_identity_ok && self.two_weight_ok.unwrap_or(true)
    }

    pub fn comparison(&self, variant: Variant) -> Option<&Comparison> {
        self.comparisons.iter().find(|c| c.variant == variant)
    }
}

pub fn moment_identity_holds(dist: &WeightDistribution, spec: &CodeSpec) -> bool {
    dist.zero_count_moment(spec.n) == spec.n * spec.q()
}

/// Nonzero weights within `{n - m, n}` and a single zero word.
pub fn two_weight_holds(dist: &WeightDistribution, spec: &CodeSpec) -> bool {
    dist.frequency(0) == 1
        && dist.nonzero_weights().iter().all(|&w| w == spec.low_weight() || w == spec.n)
}

pub fn distribution_report(
    spec: &CodeSpec,
    ring: &GaloisRing,
    opts: EnumOptions,
) -> Result<DistributionReport, CodeError> {
    let enumerated = weight_distribution_enum(spec, ring, opts)?;
    let comparisons = if spec.degenerate {
        Vec::new()
    } else {
        [Variant::Theorem, Variant::ExamplesConsistent]
            .into_iter()
            .map(|v| Ok(Comparison::new(v, closed_form_distribution(spec, v)?, &enumerated)))
            .collect::<Result<_, CodeError>>()?
    };
    Ok(DistributionReport {
        spec: *spec,
        frequency_sum_ok: enumerated.total() == spec.size(),
        moment_identity_ok: moment_identity_holds(&enumerated, spec),
        two_weight_ok: (!spec.degenerate).then(|| two_weight_holds(&enumerated, spec)),
        comparisons,
        enumerated,
    })
}
