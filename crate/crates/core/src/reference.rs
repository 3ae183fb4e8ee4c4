//! Previously reported values for these code and graph families.
//!
//! Computed results are compared against these tables and any difference is
//! reported; the tables are never used as expected values for invariants.

use crate::code::{Source, WeightDistribution};

/// Reported distribution of `C_d` over `Z/p^h`, keyed by `(p, h, m)`.
pub fn full_distribution(p: u64, h: u32, m: u64) -> Option<WeightDistribution> {
    let text = match (p, h, m) {
        (5, 3, 4) => "[ <0, 1>, <20, 744>, <24, 14880> ]",
        (7, 3, 6) => "[ <0, 1>, <42, 2736>, <48, 114912> ]",
        (11, 3, 10) => "[ <0, 1>, <110, 15960>, <120, 1755600> ]",
        (5, 3, 12) => "[ <0, 1>, <12, 248>, <24, 15376> ]",
        (5, 3, 8) => "[ <0, 1>, <16, 372>, <24, 15252> ]",
        (7, 3, 24) => "[ <0, 1>, <24, 684>, <48, 116964> ]",
        (7, 3, 12) => "[ <0, 1>, <36, 1368>, <48, 116280> ]",
        (11, 3, 60) => "[ <0, 1>, <60, 2660>, <120, 1768900> ]",
        (11, 3, 40) => "[ <0, 1>, <80, 3990>, <120, 1767570> ]",
        (11, 3, 30) => "[ <0, 1>, <90, 5320>, <120, 1766240> ]",
        (11, 3, 20) => "[ <0, 1>, <100, 7980>, <120, 1763580> ]",
        _ => return None,
    };
    WeightDistribution::parse_bracketed(text, Source::Enumerated).ok()
}

/// The reported set of distinct `d > 1` distributions (those with `m > p - 1`).
pub fn higher_d_distribution_set(p: u64) -> Option<Vec<WeightDistribution>> {
    let ms: &[u64] = match p {
        5 => &[12, 8],
        7 => &[24, 12],
        11 => &[60, 40, 30, 20],
        _ => return None,
    };
    ms.iter().map(|&m| full_distribution(p, 3, m)).collect()
}

/// Reported distribution of the punctured code, keyed by `(p, h, d)`.
pub fn punctured_distribution(p: u64, h: u32, d: u64) -> Option<WeightDistribution> {
    let text = match (p, h, d) {
        (7, 2, 2) => "[ <0, 1>, <2, 96>, <4, 2304> ]",
        _ => return None,
    };
    WeightDistribution::parse_bracketed(text, Source::Enumerated).ok()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReportedSrg {
    pub v: u64,
    pub eta: u64,
    pub r: i64,
    pub s: i64,
    pub f: Option<u64>,
    pub g: Option<u64>,
    pub latin_square: Option<bool>,
}

/// Reported coset-graph parameters, keyed by `(p, h, d)`.
pub fn coset_graph(p: u64, h: u32, d: u64) -> Option<ReportedSrg> {
    match (p, h, d) {
        (3, 3, 1) => Some(ReportedSrg { v: 729, eta: 104, r: 23, s: -4, f: Some(104), g: Some(624), latin_square: Some(true) }),
        (2, 4, 1) => Some(ReportedSrg { v: 256, eta: 45, r: 13, s: -3, f: None, g: None, latin_square: Some(true) }),
        (7, 2, 2) => Some(ReportedSrg { v: 2401, eta: 192, r: 94, s: -4, f: None, g: None, latin_square: Some(false) }),
        _ => None,
    }
}
