//! Command-line front end: argument parsing, validation and report rendering.

use std::fmt::Write as _;
use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::code::{
    distribution_report, nondegenerate_divisors, weight_distribution_enum, CodeError, CodeSpec, Comparison,
    EnumOptions, TwoRowCode, WeightDistribution, DEFAULT_BUDGET,
};
use crate::graph::{
    coset_graph_for, cover_check, latin_square_classify, predicted_srg, verify_srg, verify_srg_all_pairs,
    CoverOptions, CoverReport, GraphError, SrgOptions, SrgParams, SrgVerification, DEFAULT_SAMPLE_SIZE,
    DEFAULT_SEED, DEFAULT_VERTEX_BUDGET,
};
use crate::puncture::{enumerate_code, puncture_report, PunctureError, PunctureReport};
use crate::reference;
use crate::ring::{is_prime, GaloisRing, RingError};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid arguments: {0}")]
    Invalid(String),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Puncture(#[from] PunctureError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Bracketed lists `[ <0, 1>, <w, A_w>, ... ]` and aligned text.
    Paper,
    /// One `key=value` record per line.
    Structured,
    /// One JSON object per line.
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "twoweight", version, about = "Two-weight trace codes over Z/p^h and their coset graphs")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, value_enum, default_value_t = Format::Paper, global = true)]
    pub format: Format,
    /// Write the report to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct RingArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long)]
    pub h: u32,
    /// Allow p = 2.
    #[arg(long)]
    pub experimental: bool,
}

#[derive(Debug, Clone, Args)]
pub struct CodeArgs {
    #[command(flatten)]
    pub ring: RingArgs,
    #[arg(long, default_value_t = 1)]
    pub d: u64,
}

#[derive(Debug, Clone, Args)]
pub struct EnumArgs {
    /// Cap on coordinate evaluations per enumeration.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    /// Disable the enumeration budget.
    #[arg(long)]
    pub no_budget: bool,
    /// Enumerate one representative per scalar/rotation orbit.
    #[arg(long)]
    pub orbits: bool,
}

impl EnumArgs {
    fn options(&self) -> EnumOptions {
        EnumOptions { use_orbits: self.orbits, budget: (!self.no_budget).then_some(self.budget) }
    }
}

#[derive(Debug, Clone, Args)]
pub struct SamplingArgs {
    /// Above this many vertices, graph checks are sampled.
    #[arg(long, default_value_t = DEFAULT_VERTEX_BUDGET)]
    pub vertex_budget: u64,
    #[arg(long, default_value_t = DEFAULT_SAMPLE_SIZE)]
    pub sample_size: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

impl SamplingArgs {
    fn srg(&self) -> SrgOptions {
        SrgOptions { vertex_budget: self.vertex_budget, sample_size: self.sample_size, seed: self.seed }
    }

    fn cover(&self) -> CoverOptions {
        CoverOptions { vertex_budget: self.vertex_budget, sample_size: self.sample_size, seed: self.seed }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Ring parameters: modulus polynomial, ξ, Teichmüller table.
    Ring {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long)]
        info: bool,
    },
    /// Enumerated weight distribution of C_d next to both closed forms.
    Weights {
        #[command(flatten)]
        code: CodeArgs,
        #[command(flatten)]
        enumeration: EnumArgs,
        /// Exit nonzero when a closed form disagrees with the enumeration.
        #[arg(long)]
        strict: bool,
    },
    /// Dependence classes, punctured code, projectivity and bound checks.
    Puncture {
        #[command(flatten)]
        code: CodeArgs,
        #[command(flatten)]
        enumeration: EnumArgs,
    },
    /// Coset graph of the dual punctured code: SRG parameters and spectrum.
    Graph {
        #[command(flatten)]
        code: CodeArgs,
        #[command(flatten)]
        enumeration: EnumArgs,
        #[command(flatten)]
        sampling: SamplingArgs,
        /// Check every vertex pair on an explicit adjacency matrix (small graphs).
        #[arg(long)]
        all_pairs: bool,
        /// `--export edgelist PATH`
        #[arg(long, num_args = 2, value_names = ["KIND", "PATH"])]
        export: Option<Vec<String>>,
    },
    /// Reduction of the level h_low+1 coset graph onto level h_low.
    Cover {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        h_low: u32,
        #[arg(long, default_value_t = 1)]
        d: u64,
        #[arg(long)]
        experimental: bool,
        #[command(flatten)]
        sampling: SamplingArgs,
    },
    /// Full pipeline over a matrix of (p, h, d).
    VerifyAll {
        /// Restrict to one prime (default: 3 and 5).
        #[arg(long)]
        p: Option<u64>,
        /// Restrict to one exponent (default: 1, 2, 3).
        #[arg(long)]
        h: Option<u32>,
        /// Restrict to one divisor (default: every non-degenerate d).
        #[arg(long)]
        d: Option<u64>,
        #[arg(long)]
        experimental: bool,
        #[command(flatten)]
        enumeration: EnumArgs,
        #[command(flatten)]
        sampling: SamplingArgs,
    },
}

/// Rendered report and process exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub exit_code: u8,
}

fn check_ring_args(p: u64, h: u32, experimental: bool) -> Result<(), CliError> {
    if !is_prime(p) {
        return Err(CliError::Invalid(format!("p = {p} must be prime")));
    }
    if h == 0 {
        return Err(CliError::Invalid("h must be at least 1".into()));
    }
    if p == 2 && !experimental {
        return Err(CliError::Invalid("p = 2 requires --experimental".into()));
    }
    Ok(())
}

fn check_code_args(p: u64, h: u32, d: u64, experimental: bool) -> Result<CodeSpec, CliError> {
    check_ring_args(p, h, experimental)?;
    CodeSpec::new(p, h, d).map_err(|e| CliError::Invalid(e.to_string()))
}

/// Collects human-readable lines and structured records; renders one of them.
struct Emitter {
    format: Format,
    text: String,
}

impl Emitter {
    fn new(format: Format) -> Self {
        Emitter { format, text: String::new() }
    }

    fn line(&mut self, s: impl AsRef<str>) {
        if self.format == Format::Paper {
            self.text.push_str(s.as_ref());
            self.text.push('\n');
        }
    }

    fn record(&mut self, kind: &str, value: Value) {
        let mut map = Map::new();
        map.insert("record".into(), Value::String(kind.into()));
        if let Value::Object(fields) = value {
            map.extend(fields);
        }
        match self.format {
            Format::Paper => {}
            Format::Json => {
                self.text.push_str(&Value::Object(map).to_string());
                self.text.push('\n');
            }
            Format::Structured => {
                let parts: Vec<String> = map
                    .iter()
                    .map(|(k, v)| match v {
                        Value::String(s) if !s.is_empty() && !s.contains(char::is_whitespace) => format!("{k}={s}"),
                        other => format!("{k}={other}"),
                    })
                    .collect();
                self.text.push_str(&parts.join(" "));
                self.text.push('\n');
            }
        }
    }
}

fn spec_fields(spec: &CodeSpec) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("p".into(), json!(spec.p));
    m.insert("h".into(), json!(spec.h));
    m.insert("d".into(), json!(spec.d));
    m.insert("m".into(), json!(spec.m));
    m.insert("length".into(), json!(spec.n));
    m
}

fn with_spec(spec: &CodeSpec, extra: Value) -> Value {
    let mut m = spec_fields(spec);
    if let Value::Object(e) = extra {
        m.extend(e);
    }
    Value::Object(m)
}

fn dist_json(d: &WeightDistribution) -> Value {
    json!(d.entries.iter().map(|&(w, f)| [w, f]).collect::<Vec<_>>())
}

fn verdict(ok: bool, yes: &'static str, no: &'static str) -> &'static str {
    if ok {
        yes
    } else {
        no
    }
}

fn describe_diffs(c: &Comparison) -> String {
    c.differences
        .iter()
        .map(|e| format!("w={}: predicted {} vs enumerated {}", e.weight, e.predicted, e.enumerated))
        .collect::<Vec<_>>()
        .join("; ")
}

pub fn run(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let mut out = Emitter::new(cfg.format);
    let exit_code = match &cfg.command {
        Command::Ring { ring, info: _ } => cmd_ring(&mut out, ring)?,
        Command::Weights { code, enumeration, strict } => cmd_weights(&mut out, code, enumeration, *strict)?,
        Command::Puncture { code, enumeration } => cmd_puncture(&mut out, code, enumeration)?,
        Command::Graph { code, enumeration, sampling, all_pairs, export } => {
            cmd_graph(&mut out, code, enumeration, sampling, *all_pairs, export.as_deref())?
        }
        Command::Cover { p, h_low, d, experimental, sampling } => {
            cmd_cover(&mut out, *p, *h_low, *d, *experimental, sampling)?
        }
        Command::VerifyAll { p, h, d, experimental, enumeration, sampling } => {
            cmd_verify_all(&mut out, *p, *h, *d, *experimental, enumeration, sampling)?
        }
    };
    Ok(Outcome { output: out.text, exit_code })
}

fn cmd_ring(out: &mut Emitter, args: &RingArgs) -> Result<u8, CliError> {
    check_ring_args(args.p, args.h, args.experimental)?;
    let ring = GaloisRing::new(args.p, args.h)?;
    let (a, b) = ring.modulus_poly();
    let xi = ring.xi();
    out.line(format!("ring: GR({}^{}, 2), q = {}, {} elements", ring.p(), ring.h(), ring.q(), ring.size()));
    out.line(format!("modulus: x^2 + {a}x + {b}"));
    out.line(format!("xi: {} + {}w (order {})", xi.c0, xi.c1, ring.unit_order()));
    out.line(format!("teichmuller table: {} entries", ring.teich_table().len()));
    out.line(format!("-1 in teichmuller set: {}", ring.minus_one_is_teichmuller()));
    if ring.is_experimental() {
        out.line("experimental: p = 2");
    }
    out.record(
        "ring",
        json!({
            "p": ring.p(), "h": ring.h(), "q": ring.q(),
            "modulus": [1, a, b],
            "xi": [xi.c0.0, xi.c1.0],
            "teichmuller_size": ring.teich_table().len(),
            "minus_one_teichmuller": ring.minus_one_is_teichmuller(),
            "experimental": ring.is_experimental(),
        }),
    );
    Ok(0)
}

fn cmd_weights(out: &mut Emitter, args: &CodeArgs, en: &EnumArgs, strict: bool) -> Result<u8, CliError> {
    let r = &args.ring;
    let spec = check_code_args(r.p, r.h, args.d, r.experimental)?;
    let ring = GaloisRing::new(r.p, r.h)?;
    let report = distribution_report(&spec, &ring, en.options())?;

    out.line(report.enumerated.to_bracket_string());
    if spec.degenerate {
        out.line(format!(
            "degenerate: d = {} gives m = p^2 - 1 = {}, no two-weight prediction",
            spec.d, spec.m
        ));
    }
    out.record(
        "distribution",
        with_spec(&spec, json!({"source": "enumerated", "degenerate": spec.degenerate, "distribution": dist_json(&report.enumerated)})),
    );
    for c in &report.comparisons {
        let status = verdict(c.matches, "MATCH", "MISMATCH");
        let mut line = format!("{:<20} {}  {status}", c.variant.name(), c.predicted);
        if !c.matches {
            let _ = write!(line, " ({})", describe_diffs(c));
        }
        out.line(line);
        out.record(
            "distribution",
            with_spec(
                &spec,
                json!({
                    "source": c.predicted.source.to_string(),
                    "distribution": dist_json(&c.predicted),
                    "matches": c.matches,
                    "differences": c.differences.iter().map(|e| [e.weight, e.predicted, e.enumerated]).collect::<Vec<_>>(),
                }),
            ),
        );
    }
    if let Some(rd) = reference::full_distribution(spec.p, spec.h, spec.m) {
        let ok = rd.entries == report.enumerated.entries;
        out.line(format!("{:<20} {}  {}", "reference", rd, verdict(ok, "MATCH", "DISCREPANCY")));
        out.record("reference", with_spec(&spec, json!({"distribution": dist_json(&rd), "matches": ok})));
    }
    let ok = report.invariants_hold();
    out.line(format!(
        "invariants: frequency sum {}, moment identity {}, two-weight {}  => {}",
        verdict(report.frequency_sum_ok, "ok", "FAILED"),
        verdict(report.moment_identity_ok, "ok", "FAILED"),
        match report.two_weight_ok {
            Some(true) => "ok",
            Some(false) => "FAILED",
            None => "n/a",
        },
        verdict(ok, "PASS", "FAIL"),
    ));
    out.record(
        "verdict",
        with_spec(
            &spec,
            json!({
                "frequency_sum": report.frequency_sum_ok,
                "moment_identity": report.moment_identity_ok,
                "two_weight": report.two_weight_ok,
                "invariants": ok,
            }),
        ),
    );
    let mismatch = report.comparisons.iter().any(|c| !c.matches);
    Ok(if !ok || (strict && mismatch) { 1 } else { 0 })
}

fn puncture_lines(out: &mut Emitter, rep: &PunctureReport) {
    let spec = &rep.spec;
    let (n, size, weights) = rep.parameters();
    out.line(format!(
        "classes: {} of size {}; representatives {:?}",
        rep.class_count, rep.class_size, rep.representative_labels
    ));
    out.line(format!("punctured: ({n}, {size}, {weights:?})_{}", spec.q()));
    out.line(format!("distribution: {}", rep.punctured));
    out.line(format!("weights / m of full code: {}", verdict(rep.matches_divided_full, "MATCH", "MISMATCH")));
    out.line(format!("unpunctured projective: {}", rep.unpunctured_projective));
    out.line(format!(
        "projective: {} (zero columns {}, dependent pairs {})",
        rep.projectivity.projective,
        rep.projectivity.zero_columns.len(),
        rep.projectivity.dependent_pairs.len()
    ));
    if let Some(g) = &rep.griesmer {
        out.line(format!(
            "griesmer: n = {} vs d + ceil(d/p) = {} + {} = {} ({})",
            g.length,
            g.min_distance,
            g.bound - g.min_distance,
            g.bound,
            if g.equality { "equality" } else if g.satisfied { "strict" } else { "VIOLATED" }
        ));
    }
    if let Some(m) = &rep.mdr {
        out.line(format!(
            "mdr: free rank 2 {}, |C| = {}, d_min = {} vs n - k + 1 = {} ({})",
            m.free_rank_two,
            m.code_size,
            m.min_distance,
            m.singleton_bound,
            verdict(m.mdr, "MDR", "not MDR")
        ));
    }
}

fn cmd_puncture(out: &mut Emitter, args: &CodeArgs, en: &EnumArgs) -> Result<u8, CliError> {
    let r = &args.ring;
    let spec = check_code_args(r.p, r.h, args.d, r.experimental)?;
    let ring = GaloisRing::new(r.p, r.h)?;
    let full = weight_distribution_enum(&spec, &ring, en.options())?;
    let rep = puncture_report(&spec, &ring, &full, en.options().budget)?;
    puncture_lines(out, &rep);
    out.record("puncture", with_spec(&spec, serde_json::to_value(&rep).unwrap_or(Value::Null)));
    if let Some(rd) = reference::punctured_distribution(spec.p, spec.h, spec.d) {
        let ok = rd.entries == rep.punctured.entries;
        out.line(format!("reference: {}  {}", rd, verdict(ok, "MATCH", "DISCREPANCY")));
        out.record("reference", with_spec(&spec, json!({"distribution": dist_json(&rd), "matches": ok})));
    }
    let ok = rep.projectivity.projective
        && rep.matches_divided_full
        && rep.griesmer.as_ref().is_none_or(|g| g.equality)
        && rep.mdr.as_ref().is_none_or(|m| m.mdr);
    Ok(if ok { 0 } else { 1 })
}

fn srg_line(p: &SrgParams) -> String {
    format!(
        "srg: (v, k, lambda, mu) = ({}, {}, {}, {}); eigenvalues r = {} (f = {}), s = {} (g = {})",
        p.v, p.eta, p.lambda, p.mu, p.r, p.f, p.s, p.g
    )
}

fn cmd_graph(
    out: &mut Emitter,
    args: &CodeArgs,
    en: &EnumArgs,
    sampling: &SamplingArgs,
    all_pairs: bool,
    export: Option<&[String]>,
) -> Result<u8, CliError> {
    let r = &args.ring;
    let spec = check_code_args(r.p, r.h, args.d, r.experimental)?;
    if let Some(e) = export {
        if e[0] != "edgelist" {
            return Err(CliError::Invalid(format!("unknown export kind {:?} (expected edgelist)", e[0])));
        }
    }
    let (pc, graph) = coset_graph_for(&spec)?;
    out.line(format!("graph: {} vertices, degree {}", graph.vertex_count(), graph.degree()));
    if let Some(e) = export {
        let mut w = BufWriter::new(File::create(&e[1])?);
        let edges = graph.write_edgelist(&mut w)?;
        out.line(format!("exported {edges} edges to {}", e[1]));
    }
    let verified = if all_pairs { verify_srg_all_pairs(&graph) } else { verify_srg(&graph, &sampling.srg()) };
    let verified = match verified {
        Err(GraphError::Trivial(what)) => {
            out.line(format!("trivial: {what}; no restricted spectrum to verify"));
            out.record("srg", with_spec(&spec, json!({"trivial": what})));
            return Ok(0);
        }
        other => other?,
    };
    let SrgVerification { params, mode } = verified;
    let punctured = enumerate_code(&pc, en.options().budget)?;
    let (a1, a2) = (punctured.frequency(pc.len() as u64 - 1), punctured.frequency(pc.len() as u64));
    let predicted = predicted_srg(&spec)?;
    let pp = predicted.params;
    let pred_ok = (pp.eta, pp.r, pp.s) == (params.eta, params.r, params.s);
    let mult_ok = (params.f, params.g) == (a1, a2);
    let ls = latin_square_classify(&params, &spec);

    out.line(srg_line(&params));
    out.line(format!("mode: {mode:?}"));
    out.line(format!("invariants: {}", verdict(params.invariants_hold(), "PASS", "FAIL")));
    out.line(format!(
        "predicted (q-scaled): k = {}, r = {}, s = {}  {}",
        pp.eta, pp.r, pp.s, verdict(pred_ok, "MATCH", "MISMATCH")
    ));
    out.line(format!(
        "p-scaled eigenvalue formula: r = {}, s = {}  {}",
        predicted.p_scaled_eigenvalues.0,
        predicted.p_scaled_eigenvalues.1,
        verdict(predicted.p_scaled_eigenvalues == (params.r, params.s), "MATCH", "DISCREPANCY")
    ));
    out.line(format!(
        "multiplicities vs punctured frequencies (A1, A2) = ({a1}, {a2}): {}",
        verdict(mult_ok, "MATCH", "MISMATCH")
    ));
    out.line(format!(
        "theorem-variant multiplicities ({}, {}): {}",
        predicted.theorem_multiplicities.0,
        predicted.theorem_multiplicities.1,
        verdict(predicted.theorem_multiplicities == (params.f, params.g), "MATCH", "DISCREPANCY")
    ));
    out.line(format!(
        "latin square (N = {}, M = {}): {}{}",
        ls.n,
        ls.m,
        verdict(ls.latin_square, "yes", "no"),
        match ls.fitted_m {
            Some(m) if !ls.latin_square => format!(" (fits M = {m})"),
            _ => String::new(),
        }
    ));
    out.line(format!(
        "alternative lambda (M-1)(N-2)+N-2 = {}: {}",
        ls.alternative_lambda,
        verdict(ls.alternative_lambda_matches, "MATCH", "DISCREPANCY")
    ));
    out.record(
        "srg",
        with_spec(
            &spec,
            json!({
                "params": params, "mode": mode, "invariants": params.invariants_hold(),
                "predicted": pp, "predicted_matches": pred_ok,
                "p_scaled_eigenvalues": [predicted.p_scaled_eigenvalues.0, predicted.p_scaled_eigenvalues.1],
                "punctured_frequencies": [a1, a2], "multiplicities_match": mult_ok,
                "latin_square": ls,
            }),
        ),
    );
    if let Some(rs) = reference::coset_graph(spec.p, spec.h, spec.d) {
        let (ok, detail) = compare_reported_srg(&params, ls.latin_square, &rs);
        out.line(format!("reference: {}  {detail}", verdict(ok, "MATCH", "DISCREPANCY")));
        out.record("reference", with_spec(&spec, json!({"matches": ok, "detail": detail})));
    }
    Ok(if params.invariants_hold() && pred_ok && mult_ok { 0 } else { 1 })
}

fn compare_reported_srg(params: &SrgParams, latin: bool, rs: &reference::ReportedSrg) -> (bool, String) {
    let mut diffs = Vec::new();
    let mut cmp = |name: &str, seen: i128, want: i128| {
        if seen != want {
            diffs.push(format!("{name} observed {seen}, reported {want}"));
        }
    };
    cmp("v", params.v as i128, rs.v as i128);
    cmp("k", params.eta as i128, rs.eta as i128);
    cmp("r", params.r as i128, rs.r as i128);
    cmp("s", params.s as i128, rs.s as i128);
    if let Some(f) = rs.f {
        cmp("f", params.f as i128, f as i128);
    }
    if let Some(g) = rs.g {
        cmp("g", params.g as i128, g as i128);
    }
    if let Some(l) = rs.latin_square {
        cmp("latin_square", latin as i128, l as i128);
    }
    let ok = diffs.is_empty();
    (ok, if ok { "all reported values reproduced".into() } else { diffs.join("; ") })
}

fn cover_ok(rep: &CoverReport, spec: &CodeSpec) -> bool {
    let nh = spec.punctured_length();
    rep.fiber_size == spec.p * spec.p
        && rep.collapsed_per_vertex == nh * (spec.p - 1)
        && rep.neighbor_fiber_constant == spec.p
}

fn cmd_cover(out: &mut Emitter, p: u64, h_low: u32, d: u64, experimental: bool, sampling: &SamplingArgs) -> Result<u8, CliError> {
    let spec = check_code_args(p, h_low, d, experimental)?;
    let rep = cover_check(p, h_low, d, &sampling.cover())?;
    let ok = cover_ok(&rep, &spec);
    out.line(format!(
        "levels: h = {} ({} vertices, degree {}) -> h = {} ({} vertices, degree {})",
        h_low + 1,
        rep.upper_vertices,
        rep.upper_degree,
        h_low,
        rep.lower_vertices,
        rep.lower_degree
    ));
    out.line(format!("fiber size: {} (expected p^2 = {})", rep.fiber_size, p * p));
    out.line(format!(
        "collapsed neighbours per vertex: {} (expected n(p-1) = {})",
        rep.collapsed_per_vertex,
        spec.punctured_length() * (p - 1)
    ));
    out.line(format!("neighbours over each image neighbour: {} (expected p = {p})", rep.neighbor_fiber_constant));
    out.line(format!(
        "vertices checked: {}{}",
        rep.vertices_checked,
        if rep.sampled { format!(" (sampled, seed {})", sampling.seed) } else { String::new() }
    ));
    out.line(format!("verdict: {}", verdict(ok, "PASS", "FAIL")));
    out.record("cover", with_spec(&spec, json!({"report": rep, "pass": ok})));
    Ok(if ok { 0 } else { 1 })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Pass,
    Fail,
    Discrepancy,
    Skip,
    Info,
}

impl Status {
    fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Discrepancy => "DISCREPANCY",
            Status::Skip => "SKIP",
            Status::Info => "INFO",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Row {
    pub p: u64,
    pub h: u32,
    pub d: u64,
    pub check: String,
    pub status: Status,
    pub detail: String,
}

/// Every check for one `(p, h, d)`, in a fixed order.
pub fn verify_spec(spec: &CodeSpec, en: &EnumArgs, sampling: &SamplingArgs) -> Result<Vec<Row>, CliError> {
    let mut rows = Vec::new();
    let mut push = |check: &str, status: Status, detail: String| {
        rows.push(Row { p: spec.p, h: spec.h, d: spec.d, check: check.into(), status, detail });
    };
    let ring = GaloisRing::new(spec.p, spec.h)?;
    let rep = distribution_report(spec, &ring, en.options())?;
    push(
        "distribution",
        if rep.invariants_hold() { Status::Pass } else { Status::Fail },
        rep.enumerated.to_bracket_string(),
    );
    for c in &rep.comparisons {
        let status = if c.matches { Status::Pass } else { Status::Discrepancy };
        let detail = if c.matches { "matches enumeration".into() } else { describe_diffs(c) };
        push(&format!("closed_form:{}", c.variant.name()), status, detail);
    }
    if let Some(rd) = reference::full_distribution(spec.p, spec.h, spec.m) {
        let ok = rd.entries == rep.enumerated.entries;
        push("reference:distribution", if ok { Status::Pass } else { Status::Discrepancy }, rd.to_bracket_string());
    }
    if spec.degenerate {
        push("puncture", Status::Skip, "degenerate d: single dependence class".into());
        return Ok(rows);
    }

    let prep = puncture_report(spec, &ring, &rep.enumerated, en.options().budget)?;
    let (n_hat, size, weights) = prep.parameters();
    let params_ok = n_hat == spec.punctured_length()
        && size == spec.size()
        && weights.iter().all(|&w| w + 1 == n_hat || w == n_hat)
        && prep.class_count as u64 * prep.class_size as u64 == spec.n
        && prep.matches_divided_full;
    push(
        "puncture",
        if params_ok { Status::Pass } else { Status::Fail },
        format!("({n_hat}, {size}, {weights:?})_{}; {}", spec.q(), prep.punctured),
    );
    push(
        "projectivity",
        if prep.projectivity.projective { Status::Pass } else { Status::Fail },
        format!("unpunctured projective: {}", prep.unpunctured_projective),
    );
    if let Some(rd) = reference::punctured_distribution(spec.p, spec.h, spec.d) {
        let ok = rd.entries == prep.punctured.entries;
        push(
            "reference:punctured",
            if ok { Status::Pass } else { Status::Discrepancy },
            format!("reported {rd}, enumerated {}", prep.punctured),
        );
    }
    if let Some(g) = &prep.griesmer {
        push(
            "griesmer",
            if g.equality { Status::Pass } else { Status::Fail },
            format!("n = {} = {} + ceil({}/{})", g.length, g.min_distance, g.min_distance, g.residue_size),
        );
    }
    if let Some(m) = &prep.mdr {
        push(
            "mdr",
            if m.mdr { Status::Pass } else { Status::Fail },
            format!("d_min = {} = n - 1", m.min_distance),
        );
    }

    let (pc, graph) = coset_graph_for(spec)?;
    match verify_srg(&graph, &sampling.srg()) {
        Err(GraphError::Trivial(what)) => push("srg", Status::Skip, format!("{what} on {} vertices", graph.vertex_count())),
        Err(e @ GraphError::NotStronglyRegular { .. }) | Err(e @ GraphError::Infeasible { .. }) => {
            push("srg", Status::Fail, e.to_string())
        }
        Err(e) => return Err(e.into()),
        Ok(SrgVerification { params, mode }) => {
            let predicted = predicted_srg(spec)?;
            let pp = predicted.params;
            let (a1, a2) = (prep.punctured.frequency(n_hat - 1), prep.punctured.frequency(n_hat));
            let ok = params.invariants_hold()
                && (pp.eta, pp.r, pp.s) == (params.eta, params.r, params.s)
                && (params.f, params.g) == (a1, a2);
            let sampled = matches!(mode, crate::graph::VerifyMode::Sampled { .. });
            push(
                "srg",
                if ok { Status::Pass } else { Status::Fail },
                format!(
                    "({}, {}, {}, {}) r={} s={} f={} g={}{}",
                    params.v,
                    params.eta,
                    params.lambda,
                    params.mu,
                    params.r,
                    params.s,
                    params.f,
                    params.g,
                    if sampled { " [sampled]" } else { "" }
                ),
            );
            let ls = latin_square_classify(&params, spec);
            let ls_detail = format!(
                "N={} M={}: {}{}",
                ls.n,
                ls.m,
                verdict(ls.latin_square, "latin-square type", "not latin-square type"),
                match ls.fitted_m {
                    Some(m) if !ls.latin_square => format!(" (fits M={m})"),
                    _ => String::new(),
                }
            );
            let ls_status = match (spec.d, ls.latin_square) {
                (1, true) => Status::Pass,
                (1, false) => Status::Discrepancy,
                _ => Status::Info,
            };
            push("latin_square", ls_status, ls_detail);
            if let Some(rs) = reference::coset_graph(spec.p, spec.h, spec.d) {
                let (ok, detail) = compare_reported_srg(&params, ls.latin_square, &rs);
                push("reference:srg", if ok { Status::Pass } else { Status::Discrepancy }, detail);
            }
            drop(pc);
        }
    }
    Ok(rows)
}

fn cover_row(p: u64, h_low: u32, d: u64, sampling: &SamplingArgs) -> Result<Row, CliError> {
    let spec = CodeSpec::new(p, h_low, d)?;
    let rep = cover_check(p, h_low, d, &sampling.cover());
    let (status, detail) = match rep {
        Ok(rep) => (
            if cover_ok(&rep, &spec) { Status::Pass } else { Status::Fail },
            format!(
                "{} -> {}: fiber {}, collapsed {}, per-neighbour {}{}",
                h_low + 1,
                h_low,
                rep.fiber_size,
                rep.collapsed_per_vertex,
                rep.neighbor_fiber_constant,
                if rep.sampled { " [sampled]" } else { "" }
            ),
        ),
        Err(GraphError::Cover(msg)) => (Status::Fail, msg),
        Err(e) => return Err(e.into()),
    };
    Ok(Row { p, h: h_low + 1, d, check: format!("cover:{}->{}", h_low + 1, h_low), status, detail })
}

fn cmd_verify_all(
    out: &mut Emitter,
    p: Option<u64>,
    h: Option<u32>,
    d: Option<u64>,
    experimental: bool,
    en: &EnumArgs,
    sampling: &SamplingArgs,
) -> Result<u8, CliError> {
    let primes: Vec<u64> = p.map_or(vec![3, 5], |p| vec![p]);
    let levels: Vec<u32> = h.map_or(vec![1, 2, 3], |h| vec![h]);
    let mut rows = Vec::new();
    for &p in &primes {
        check_ring_args(p, 1, experimental)?;
        let ds: Vec<u64> = match d {
            Some(d) => {
                check_code_args(p, 1, d, experimental)?;
                vec![d]
            }
            None => nondegenerate_divisors(p),
        };
        for &hh in &levels {
            check_ring_args(p, hh, experimental)?;
            for &dd in &ds {
                let spec = CodeSpec::new(p, hh, dd)?;
                rows.extend(verify_spec(&spec, en, sampling)?);
                let lower = hh.checked_sub(1).filter(|&l| l >= 1);
                if let Some(l) = lower {
                    if !spec.degenerate {
                        rows.push(cover_row(p, l, dd, sampling)?);
                    }
                }
            }
        }
    }

    let width = rows.iter().map(|r| r.check.len()).max().unwrap_or(5);
    out.line(format!("{:>3} {:>2} {:>4}  {:<width$}  {:<11}  detail", "p", "h", "d", "check", "status"));
    for r in &rows {
        out.line(format!(
            "{:>3} {:>2} {:>4}  {:<width$}  {:<11}  {}",
            r.p,
            r.h,
            r.d,
            r.check,
            r.status.label(),
            r.detail
        ));
        out.record(
            "check",
            json!({"p": r.p, "h": r.h, "d": r.d, "check": r.check, "status": r.status.label(), "detail": r.detail}),
        );
    }
    let count = |s: Status| rows.iter().filter(|r| r.status == s).count();
    let failed = count(Status::Fail);
    out.line(format!(
        "summary: {} checks, {} pass, {} fail, {} discrepancy, {} skip, {} info",
        rows.len(),
        count(Status::Pass),
        failed,
        count(Status::Discrepancy),
        count(Status::Skip),
        count(Status::Info)
    ));
    out.record(
        "summary",
        json!({
            "checks": rows.len(), "pass": count(Status::Pass), "fail": failed,
            "discrepancy": count(Status::Discrepancy), "skip": count(Status::Skip), "info": count(Status::Info),
        }),
    );
    Ok(if failed > 0 { 1 } else { 0 })
}
