//! Column-dependence classes, punctured projective codes and the bound checks.
//!
//! Two columns of a 2-row generator over `Z/p^h` are dependent exactly when
//! the 2×2 determinant they form is divisible by `p`: a square matrix over a
//! chain ring has a nontrivial kernel iff its determinant is a non-unit.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::code::{
    build_code, enumerate_histogram, CodeError, CodeSpec, GeneratorMatrix, Source, TwoRowCode,
    WeightDistribution,
};
use crate::ring::{GaloisRing, Zq};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PunctureError {
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error("d = {0} is degenerate: all columns are dependent, puncturing is undefined")]
    Degenerate(u64),
    #[error("column {0} is zero mod p")]
    ZeroColumn(usize),
    #[error("determinant and exponent criteria disagree on columns {0} and {1}")]
    CriteriaDisagree(usize, usize),
    #[error("dependence classes are not uniform: sizes {0:?}")]
    NonUniform(Vec<usize>),
}

/// `det(col_j | col_k) mod q`.
pub fn column_det<C: TwoRowCode + ?Sized>(code: &C, j: usize, k: usize) -> u64 {
    let q = code.modulus();
    let (a, b) = code.column(j);
    let (c, d) = code.column(k);
    (a.0 * d.0 % q + q - b.0 * c.0 % q) % q
}

pub fn columns_dependent<C: TwoRowCode + ?Sized>(code: &C, j: usize, k: usize) -> bool {
    column_det(code, j, k) % code.residue_prime() == 0
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DependencePartition {
    /// Column indices per class, each sorted; classes ordered by first index.
    pub classes: Vec<Vec<usize>>,
    pub class_size: usize,
}

impl DependencePartition {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }
}

/// Partitions the columns of `C_d` by linear dependence.
///
/// Uses the determinant test and cross-checks every pair against the
/// exponent test `ξ^{(j-k)·d·(p-1)} = 1` on the column labels.
pub fn dependence_classes(gen: &GeneratorMatrix, ring: &GaloisRing) -> Result<DependencePartition, PunctureError> {
    let spec = &gen.spec;
    if spec.degenerate {
        return Err(PunctureError::Degenerate(spec.d));
    }
    let n = gen.len();
    let p = spec.p;
    if let Some(j) = (0..n).find(|&j| {
        let (a, b) = gen.column(j);
        a.0 % p == 0 && b.0 % p == 0
    }) {
        return Err(PunctureError::ZeroColumn(j));
    }
    let step = spec.d * (p - 1);
    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for j in 0..n {
        for k in j..n {
            let by_det = columns_dependent(gen, j, k);
            let diff = (gen.column_labels[k] + spec.n - gen.column_labels[j]) % spec.n;
            let by_exp = ring.xi_pow(diff * step) == ring.one();
            if by_det != by_exp {
                return Err(PunctureError::CriteriaDisagree(j, k));
            }
        }
        if class_of[j] == usize::MAX {
            let members: Vec<usize> = (j..n).filter(|&k| columns_dependent(gen, j, k)).collect();
            for &k in &members {
                class_of[k] = classes.len();
            }
            classes.push(members);
        }
    }
    let sizes: Vec<usize> = classes.iter().map(Vec::len).collect();
    if sizes.iter().any(|&s| s != sizes[0]) {
        return Err(PunctureError::NonUniform(sizes));
    }
    Ok(DependencePartition { class_size: sizes[0], classes })
}

/// `Ĉ_d`: one column per dependence class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PuncturedCode {
    pub spec: CodeSpec,
    pub rows: [Vec<Zq>; 2],
    /// Column label kept for each class, ascending.
    pub representative_labels: Vec<u64>,
    q: u64,
}

impl TwoRowCode for PuncturedCode {
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

/// Keeps the column with the smallest label in each class.
pub fn puncture(gen: &GeneratorMatrix, partition: &DependencePartition) -> PuncturedCode {
    let mut keep: Vec<usize> = partition.classes.iter().map(|c| c[0]).collect();
    keep.sort_unstable_by_key(|&j| gen.column_labels[j]);
    let pick = |r: usize| keep.iter().map(|&j| gen.rows[r][j]).collect::<Vec<_>>();
    PuncturedCode {
        spec: gen.spec,
        rows: [pick(0), pick(1)],
        representative_labels: keep.iter().map(|&j| gen.column_labels[j]).collect(),
        q: gen.modulus(),
    }
}

/// Builds `C_d`, partitions its columns and punctures.
pub fn punctured_code(spec: &CodeSpec, ring: &GaloisRing) -> Result<(GeneratorMatrix, DependencePartition, PuncturedCode), PunctureError> {
    let gen = build_code(spec, ring)?;
    let part = dependence_classes(&gen, ring)?;
    let pc = puncture(&gen, &part);
    Ok((gen, part, pc))
}

/// Exact weight distribution of any 2-row code by enumerating `(a, b)`.
pub fn enumerate_code<C: TwoRowCode + Sync>(code: &C, budget: Option<u64>) -> Result<WeightDistribution, CodeError> {
    let hist = enumerate_histogram(code, budget)?;
    Ok(WeightDistribution::from_histogram(&hist, Source::Enumerated))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectivityReport {
    pub length: usize,
    /// Columns that vanish mod `p`.
    pub zero_columns: Vec<usize>,
    /// Column pairs whose determinant is not a unit.
    pub dependent_pairs: Vec<(usize, usize)>,
    pub projective: bool,
}

/// Dual distance ≥ 3 via the determinant-unit criterion.
pub fn projectivity_check<C: TwoRowCode + ?Sized>(code: &C) -> ProjectivityReport {
    let n = code.len();
    let p = code.residue_prime();
    let zero_columns: Vec<usize> = (0..n)
        .filter(|&j| {
            let (a, b) = code.column(j);
            a.0 % p == 0 && b.0 % p == 0
        })
        .collect();
    let dependent_pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|j| (j + 1..n).map(move |k| (j, k)))
        .filter(|&(j, k)| columns_dependent(code, j, k))
        .collect();
    ProjectivityReport {
        length: n,
        projective: zero_columns.is_empty() && dependent_pairs.is_empty(),
        zero_columns,
        dependent_pairs,
    }
}

/// Brute-force search for a nonzero dual word of weight ≤ 2.
///
/// Returns `(i, λ, j, μ)` with `λ·col_i + μ·col_j = 0`; for weight-1 words
/// `j == i` and `μ == 0`.
pub fn dual_low_weight_witness<C: TwoRowCode + ?Sized>(code: &C) -> Option<(usize, u64, usize, u64)> {
    let q = code.modulus();
    let n = code.len();
    let comb = |i: usize, l: u64, j: usize, m: u64| {
        let (a, b) = code.column(i);
        let (c, d) = code.column(j);
        ((l * a.0 + m * c.0) % q, (l * b.0 + m * d.0) % q)
    };
    for i in 0..n {
        for l in 1..q {
            if comb(i, l, i, 0) == (0, 0) {
                return Some((i, l, i, 0));
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for l in 1..q {
                for m in 1..q {
                    if comb(i, l, j, m) == (0, 0) {
                        return Some((i, l, j, m));
                    }
                }
            }
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GriesmerReport {
    pub length: u64,
    pub min_distance: u64,
    pub residue_size: u64,
    /// `d + ceil(d / p)` for a free rank-2 code.
    pub bound: u64,
    pub satisfied: bool,
    pub equality: bool,
    /// Only `C_1` is claimed to meet the bound.
    pub claimed: bool,
}

/// Rank-2 Griesmer bound `n ≥ d + ⌈d/p⌉`, with `d` read off the enumeration.
pub fn griesmer_check(spec: &CodeSpec, enumerated: &WeightDistribution) -> Option<GriesmerReport> {
    let d = enumerated.min_distance()?;
    let p = spec.p;
    let bound = d + d.div_ceil(p);
    Some(GriesmerReport {
        length: spec.n,
        min_distance: d,
        residue_size: p,
        bound,
        satisfied: spec.n >= bound,
        equality: spec.n == bound,
        claimed: spec.d == 1,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MdrReport {
    pub length: u64,
    /// Some 2×2 minor is a unit.
    pub free_rank_two: bool,
    pub code_size: u64,
    pub min_distance: u64,
    /// `n - k + 1` with `k = 2`.
    pub singleton_bound: u64,
    pub mdr: bool,
}

pub fn mdr_check(pc: &PuncturedCode, enumerated: &WeightDistribution) -> MdrReport {
    let n = pc.len();
    let p = pc.residue_prime();
    let free_rank_two = (0..n).any(|j| (j + 1..n).any(|k| column_det(pc, j, k) % p != 0));
    let q = pc.modulus();
    let code_size = enumerated.total();
    let min_distance = enumerated.min_distance().unwrap_or(0);
    let singleton_bound = (n as u64 + 1).saturating_sub(2);
    MdrReport {
        length: n as u64,
        free_rank_two,
        code_size,
        min_distance,
        singleton_bound,
        mdr: free_rank_two
            && code_size == q * q
            && enumerated.frequency(0) == 1
            && min_distance == singleton_bound,
    }
}

/// Everything the `puncture` subcommand reports for one `(p, h, d)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PunctureReport {
    pub spec: CodeSpec,
    pub class_count: usize,
    pub class_size: usize,
    pub representative_labels: Vec<u64>,
    pub punctured: WeightDistribution,
    /// Punctured weights equal the full weights divided by `m`.
    pub matches_divided_full: bool,
    pub unpunctured_projective: bool,
    pub projectivity: ProjectivityReport,
    pub griesmer: Option<GriesmerReport>,
    pub mdr: Option<MdrReport>,
}

impl PunctureReport {
    /// `(n̂, |Ĉ|, {n̂-1, n̂})` as observed.
    pub fn parameters(&self) -> (u64, u64, Vec<u64>) {
        (self.representative_labels.len() as u64, self.punctured.total(), self.punctured.nonzero_weights())
    }
}

pub fn puncture_report(
    spec: &CodeSpec,
    ring: &GaloisRing,
    full: &WeightDistribution,
    budget: Option<u64>,
) -> Result<PunctureReport, PunctureError> {
    let (gen, part, pc) = punctured_code(spec, ring)?;
    let punctured = enumerate_code(&pc, budget)?;
    let matches_divided_full = full.divide_weights(spec.m).as_ref() == Some(&punctured);
    let is_primitive = spec.d == 1;
    Ok(PunctureReport {
        spec: *spec,
        class_count: part.class_count(),
        class_size: part.class_size,
        representative_labels: pc.representative_labels.clone(),
        matches_divided_full,
        unpunctured_projective: projectivity_check(&gen).projective,
        projectivity: projectivity_check(&pc),
        griesmer: if is_primitive { griesmer_check(spec, full) } else { None },
        mdr: is_primitive.then(|| mdr_check(&pc, &punctured)),
        punctured,
    })
}
