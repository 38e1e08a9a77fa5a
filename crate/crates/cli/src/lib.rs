//! Verification harness behind the `nilcent` binary.
//!
//! Every command builds a report; rendering and exit codes live here too so
//! the integration tests can drive the same code as the binary.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use nilcent_core::centralizer::{ad_kernel_dim, sigma_split, GlCentralizer, SigmaSplit};
use nilcent_core::covectors::{
    alpha_gl, alpha_sp, block_preserving_span, gl_first_block_kernel, so_covector,
    stabilizer_restricts, verify_so_case, Weights,
};
use nilcent_core::exactlin::{parse_scalar, Scalar};
use nilcent_core::genstab::{
    check_hm, is_generic_stabilizer, so8_counterexample, so9_counterexample, torus_and_normalizer,
    CounterexampleReport, GenStabReport,
};
use nilcent_core::indexcalc::{
    index_detailed, sampled_max_rank, stabilizer, Covector, IndexResult, RankMethod,
};
use nilcent_core::jordan::{admissibility_violation, build_model, AlgebraKind, Partition};
use nilcent_core::lie::LieAlgebra;
use nilcent_core::Error;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{0}")]
    Usage(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub status: Status,
    pub detail: String,
}

impl CheckOutcome {
    fn of(ok: bool, detail: impl Into<String>) -> Self {
        CheckOutcome {
            status: if ok { Status::Pass } else { Status::Fail },
            detail: detail.into(),
        }
    }

    fn skipped(reason: &str) -> Self {
        CheckOutcome {
            status: Status::Skipped,
            detail: reason.into(),
        }
    }
}

/// Names of every check. Each report lists all of them.
pub const CHECK_NAMES: &[&str] = &[
    "vinberg",
    "index_equals_rank",
    "sampled_rank_agrees",
    "basis_matches_ad_kernel",
    "gl.stabilizer_dim",
    "gl.stabilizer_block_preserving",
    "gl.hm_decomposition",
    "gl.torus_normalizer",
    "gl.first_block_pairing",
    "sp.alpha_vanishes_on_z1",
    "sp.stabilizer_restricts",
    "sp.stabilizer_dim",
    "so.case",
    "so.case_checks",
    "genstab.criterion",
    "so8_counterexample",
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub kind: String,
    pub partition: String,
    pub n: usize,
    pub rank_of_g: usize,
    pub dim_z: usize,
    pub index_z: usize,
    pub index_method: String,
    pub paper_covector_stab_dim: Option<usize>,
    /// Over the basis of `z_gl(e)`.
    pub covector: BTreeMap<String, String>,
    pub theorem_checks: BTreeMap<String, CheckOutcome>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub timings_ms: BTreeMap<String, u64>,
    pub seed: u64,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.theorem_checks
            .values()
            .all(|c| c.status != Status::Fail)
    }

    pub fn count(&self, s: Status) -> usize {
        self.theorem_checks
            .values()
            .filter(|c| c.status == s)
            .count()
    }
}

#[derive(Clone, Debug)]
pub struct Options {
    pub seed: u64,
    /// Random covectors used to cross-check the generic rank.
    pub samples: usize,
    pub weights: Option<Vec<Scalar>>,
    pub timings: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            seed: 0,
            samples: 20,
            weights: None,
            timings: true,
        }
    }
}

pub fn parse_kind(s: &str) -> Result<AlgebraKind, CliError> {
    s.parse()
        .map_err(|_| CliError::Usage(format!("unknown kind {s:?}; expected gl, sp or so")))
}

pub fn parse_partition(s: &str) -> Result<Partition, CliError> {
    s.parse().map_err(|e: Error| CliError::Usage(e.to_string()))
}

pub fn parse_weights(s: &str) -> Result<Vec<Scalar>, CliError> {
    s.split(',')
        .map(|w| parse_scalar(w).ok_or_else(|| CliError::Usage(format!("bad weight {w:?}"))))
        .collect()
}

struct Timer {
    on: bool,
    start: Instant,
    out: BTreeMap<String, u64>,
}

impl Timer {
    fn new(on: bool) -> Self {
        Timer {
            on,
            start: Instant::now(),
            out: BTreeMap::new(),
        }
    }

    fn lap(&mut self, name: &str) {
        if self.on {
            self.out
                .insert(name.into(), self.start.elapsed().as_millis() as u64);
            self.start = Instant::now();
        }
    }
}

fn describe_method(r: &IndexResult) -> String {
    match r.method {
        RankMethod::Full => "full".into(),
        RankMethod::Slice { slice_dim } => format!("slice({slice_dim})"),
    }
}

fn criterion_outcome(r: &GenStabReport) -> CheckOutcome {
    CheckOutcome::of(
        r.criterion_holds,
        format!(
            "dim h = {}, dim [h, g] = {}",
            r.candidate_dim, r.bracket_dim
        ),
    )
}

fn failing(checks: &[(String, bool)]) -> String {
    let bad: Vec<&str> = checks
        .iter()
        .filter(|(_, ok)| !ok)
        .map(|(n, _)| n.as_str())
        .collect();
    if bad.is_empty() {
        format!("{} checks hold", checks.len())
    } else {
        format!("failed: {}", bad.join("; "))
    }
}

/// Runs the full battery for one partition.
pub fn cmd_verify(
    kind: AlgebraKind,
    p: &Partition,
    opts: &Options,
) -> Result<VerifyReport, CliError> {
    if let Some(reason) = admissibility_violation(p, kind) {
        return Err(Error::Inadmissible {
            kind,
            partition: p.to_string(),
            reason,
        }
        .into());
    }
    if opts.weights.is_some() && kind == AlgebraKind::Orthogonal {
        return Err(CliError::Usage(
            "--weights applies to gl and sp only".into(),
        ));
    }
    let mut timer = Timer::new(opts.timings);
    let model = build_model(p, kind)?;
    let gl = GlCentralizer::new(p);
    let split = match kind {
        AlgebraKind::GeneralLinear => None,
        _ => Some(sigma_split(&model)?),
    };
    timer.lap("build");
    let z: &LieAlgebra = split.as_ref().map_or(&gl.algebra, |s| &s.z);
    let rank_of_g = kind.rank_of_algebra(p.n());
    let ind = index_detailed(z);
    timer.lap("index");

    let mut checks: BTreeMap<String, CheckOutcome> = BTreeMap::new();
    let mut put = |name: &str, c: CheckOutcome| {
        debug_assert!(CHECK_NAMES.contains(&name), "{name}");
        checks.insert(name.into(), c);
    };
    put(
        "vinberg",
        CheckOutcome::of(
            ind.index >= rank_of_g,
            format!("{} >= {rank_of_g}", ind.index),
        ),
    );
    put(
        "index_equals_rank",
        CheckOutcome::of(
            ind.index == rank_of_g,
            format!("{} = {rank_of_g}", ind.index),
        ),
    );
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let sampled = sampled_max_rank(z, &mut rng, opts.samples);
    put(
        "sampled_rank_agrees",
        CheckOutcome::of(
            sampled == ind.generic_rank,
            format!(
                "max over {} samples {sampled}, generic {}",
                opts.samples, ind.generic_rank
            ),
        ),
    );
    let adk = ad_kernel_dim(p);
    put(
        "basis_matches_ad_kernel",
        CheckOutcome::of(
            adk == gl.dim(),
            format!("{} basis elements, ad(e) kernel {adk}", gl.dim()),
        ),
    );
    timer.lap("oracles");

    let (stab_dim, covector) = match &split {
        None => gl_checks(&gl, opts, &mut put)?,
        Some(s) if kind == AlgebraKind::Symplectic => sp_checks(s, &model, opts, &mut put)?,
        Some(s) => so_checks(s, &model, &mut put)?,
    };
    timer.lap("theorems");

    for name in CHECK_NAMES {
        checks.entry((*name).into()).or_insert_with(|| {
            CheckOutcome::skipped(&format!("not applicable to {}", kind.short_name()))
        });
    }
    Ok(VerifyReport {
        kind: kind.short_name().into(),
        partition: p.to_string(),
        n: p.n(),
        rank_of_g,
        dim_z: z.dim(),
        index_z: ind.index,
        index_method: describe_method(&ind),
        paper_covector_stab_dim: stab_dim,
        covector: covector_json(&gl.algebra, &covector),
        theorem_checks: checks,
        timings_ms: timer.out,
        seed: opts.seed,
    })
}

fn gl_checks(
    gl: &GlCentralizer,
    opts: &Options,
    put: &mut impl FnMut(&str, CheckOutcome),
) -> Result<(Option<usize>, Covector), CliError> {
    let p = &gl.partition;
    let w = match &opts.weights {
        Some(w) => Weights(w.clone()),
        None => Weights::default_gl(p),
    };
    w.validate_gl(p)?;
    let alpha = alpha_gl(gl, &w)?;
    let stab = stabilizer(&gl.algebra, &alpha)?;
    put(
        "gl.stabilizer_dim",
        CheckOutcome::of(stab.dim() == p.n(), format!("{} = {}", stab.dim(), p.n())),
    );
    put(
        "gl.stabilizer_block_preserving",
        CheckOutcome::of(stab == block_preserving_span(gl), "span of xi_i^{i,s}"),
    );
    let hm = check_hm(gl);
    put(
        "gl.hm_decomposition",
        CheckOutcome::of(
            hm.direct_sum && hm.h_m_inside_m && hm.table_matches,
            format!("dim h = {}, dim m = {}", hm.h_dim, hm.m_dim),
        ),
    );
    let t = torus_and_normalizer(gl);
    put(
        "gl.torus_normalizer",
        CheckOutcome::of(
            t.centralizer_of_t_is_h && t.h_self_normalizing && t.weights_ok,
            format!("dim t = {}", t.t_dim),
        ),
    );
    let k = gl_first_block_kernel(gl)?;
    put(
        "gl.first_block_pairing",
        CheckOutcome::of(k == 0, format!("kernel {k}")),
    );
    put(
        "genstab.criterion",
        criterion_outcome(&is_generic_stabilizer(&gl.algebra, &stab)?),
    );
    Ok((Some(stab.dim()), alpha))
}

fn sp_checks(
    split: &SigmaSplit,
    model: &nilcent_core::jordan::Model,
    opts: &Options,
    put: &mut impl FnMut(&str, CheckOutcome),
) -> Result<(Option<usize>, Covector), CliError> {
    let w = match &opts.weights {
        Some(w) => Weights(w.clone()),
        None => Weights::default_sp(model),
    };
    w.validate_sp(model)?;
    let alpha = alpha_sp(model, &split.gl, &w)?;
    put(
        "sp.alpha_vanishes_on_z1",
        CheckOutcome::of(alpha.vanishes_on(&split.z1_rows), "alpha(z1) = 0"),
    );
    put(
        "sp.stabilizer_restricts",
        CheckOutcome::of(
            stabilizer_restricts(split, &alpha)?,
            "z(e)_alpha = z_gl(e)_alpha ∩ z(e)",
        ),
    );
    let stab = stabilizer(&split.z, &alpha.restrict(&split.z_rows))?;
    let half = model.partition.n() / 2;
    put(
        "sp.stabilizer_dim",
        CheckOutcome::of(stab.dim() == half, format!("{} = {half}", stab.dim())),
    );
    put(
        "genstab.criterion",
        criterion_outcome(&is_generic_stabilizer(&split.z, &stab)?),
    );
    Ok((Some(stab.dim()), alpha))
}

fn so_checks(
    split: &SigmaSplit,
    model: &nilcent_core::jordan::Model,
    put: &mut impl FnMut(&str, CheckOutcome),
) -> Result<(Option<usize>, Covector), CliError> {
    let r = verify_so_case(model, split)?;
    put("so.case", CheckOutcome::of(true, r.case.name()));
    put(
        "so.case_checks",
        CheckOutcome::of(r.all_hold(), failing(&r.checks)),
    );
    if model.partition.sizes() == [5, 3] {
        let c = so8_counterexample(0, 0)?;
        put(
            "so8_counterexample",
            CheckOutcome::of(c.all_hold(), failing(&c.checks)),
        );
    }
    let alpha = so_covector(model, &split.gl, r.case)?;
    let stab = stabilizer(&split.z, &alpha.restrict(&split.z_rows))?;
    Ok((Some(stab.dim()), alpha))
}

/// All admissible partitions of every `n ≤ max_n`, `n` ascending and
/// partitions in descending lexicographic order.
pub fn sweep_partitions(kind: AlgebraKind, max_n: usize) -> Vec<Partition> {
    (1..=max_n)
        .flat_map(Partition::all)
        .filter(|p| admissibility_violation(p, kind).is_none())
        .collect()
}

/// Runs `cmd_verify` on each partition with `jobs` workers; the result is
/// in partition order whatever the completion order.
pub fn cmd_sweep(
    kind: AlgebraKind,
    max_n: usize,
    opts: &Options,
    jobs: usize,
) -> Result<Vec<VerifyReport>, CliError> {
    if max_n == 0 {
        return Err(CliError::Usage("--max-n must be at least 1".into()));
    }
    let parts = sweep_partitions(kind, max_n);
    let slots: Mutex<Vec<Option<Result<VerifyReport, CliError>>>> =
        Mutex::new(parts.iter().map(|_| None).collect());
    let next = AtomicUsize::new(0);
    std::thread::scope(|s| {
        for _ in 0..jobs.max(1) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(p) = parts.get(i) else { break };
                let r = cmd_verify(kind, p, opts);
                slots.lock().expect("collector poisoned")[i] = Some(r);
            });
        }
    });
    slots
        .into_inner()
        .expect("collector poisoned")
        .into_iter()
        .map(|r| r.expect("every partition was processed"))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionJson {
    pub algebra: String,
    pub algebra_dim: usize,
    pub candidate_dim: usize,
    pub bracket_dim: usize,
    pub criterion_holds: bool,
    pub witness: Option<Vec<String>>,
}

impl From<&GenStabReport> for CriterionJson {
    fn from(r: &GenStabReport) -> Self {
        CriterionJson {
            algebra: r.algebra.clone(),
            algebra_dim: r.algebra_dim,
            candidate_dim: r.candidate_dim,
            bracket_dim: r.bracket_dim,
            criterion_holds: r.criterion_holds,
            witness: r
                .witness
                .as_ref()
                .map(|w| w.iter().map(ToString::to_string).collect()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SamplingJson {
    pub probabilistic: bool,
    pub seed: u64,
    pub samples: usize,
    pub regular: usize,
    pub draws: usize,
    pub criterion_passes: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CounterexampleJson {
    pub algebra: String,
    pub partition: String,
    pub experimental: bool,
    pub dim_z: usize,
    pub index: usize,
    pub center_dim: usize,
    pub phi2: String,
    pub phi3: String,
    pub phi2_bracket_dim: usize,
    pub phi2_centralizer_dim: usize,
    pub phi2_centralizer_normal: bool,
    pub phi2_centralizer_central: bool,
    pub criterion: CriterionJson,
    pub witness: Option<String>,
    pub witness_in_center: bool,
    pub sampling: SamplingJson,
    pub checks: BTreeMap<String, CheckOutcome>,
    pub all_exact_facts_hold: bool,
}

impl From<&CounterexampleReport> for CounterexampleJson {
    fn from(r: &CounterexampleReport) -> Self {
        CounterexampleJson {
            algebra: r.algebra.clone(),
            partition: r.partition.clone(),
            experimental: r.experimental,
            dim_z: r.dim_z,
            index: r.index,
            center_dim: r.center_dim,
            phi2: r.phi2.clone(),
            phi3: r.phi3.clone(),
            phi2_bracket_dim: r.phi2_bracket_dim,
            phi2_centralizer_dim: r.phi2_centralizer_dim,
            phi2_centralizer_normal: r.phi2_centralizer_normal,
            phi2_centralizer_central: r.phi2_centralizer_central,
            criterion: (&r.criterion).into(),
            witness: r.witness.clone(),
            witness_in_center: r.witness_in_center,
            sampling: SamplingJson {
                probabilistic: true,
                seed: r.sampling.seed,
                samples: r.sampling.samples,
                regular: r.sampling.regular,
                draws: r.sampling.draws,
                criterion_passes: r.sampling.criterion_passes,
            },
            checks: r
                .checks
                .iter()
                .map(|(n, ok)| (n.clone(), CheckOutcome::of(*ok, "")))
                .collect(),
            all_exact_facts_hold: r.all_hold(),
        }
    }
}

/// The `so_8` report, followed by the experimental `so_9` one if asked.
pub fn cmd_counterexample(
    samples: usize,
    seed: u64,
    extend_so9: bool,
) -> Result<Vec<CounterexampleJson>, CliError> {
    let mut out = vec![(&so8_counterexample(samples, seed)?).into()];
    if extend_so9 {
        out.push((&so9_counterexample(samples, seed)?).into());
    }
    Ok(out)
}

/// Only the non-experimental reports decide the exit code.
pub fn counterexample_exit(reports: &[CounterexampleJson]) -> i32 {
    if reports
        .iter()
        .filter(|r| !r.experimental)
        .all(|r| r.all_exact_facts_hold)
    {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

/// Structure constants of `z(e)`: a label line, then `u v w value` lines.
pub fn cmd_export_structure(kind: AlgebraKind, p: &Partition) -> Result<String, CliError> {
    if let Some(reason) = admissibility_violation(p, kind) {
        return Err(Error::Inadmissible {
            kind,
            partition: p.to_string(),
            reason,
        }
        .into());
    }
    let gl = GlCentralizer::new(p);
    let split = match kind {
        AlgebraKind::GeneralLinear => None,
        _ => Some(sigma_split(&build_model(p, kind)?)?),
    };
    let z = split.as_ref().map_or(&gl.algebra, |s| &s.z);
    let mut out = String::new();
    let _ = writeln!(out, "# {} dim {}", z.name(), z.dim());
    for (u, l) in z.labels().iter().enumerate() {
        let _ = writeln!(out, "# {u} {l}");
    }
    out.push_str(&z.export_structure());
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Tsv,
}

pub fn parse_format(s: &str) -> Result<Format, CliError> {
    match s {
        "json" => Ok(Format::Json),
        "tsv" => Ok(Format::Tsv),
        _ => Err(CliError::Usage(format!(
            "unknown format {s:?}; expected json or tsv"
        ))),
    }
}

pub const VERIFY_TSV_HEADER: &str =
    "kind\tpartition\tn\trank_of_g\tdim_z\tindex_z\tindex_method\tpaper_covector_stab_dim\tpass\tfail\tskipped\tseed";

pub fn render_reports(reports: &[VerifyReport], format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Json => {
            for r in reports {
                out.push_str(&serde_json::to_string(r).expect("report serialises"));
                out.push('\n');
            }
        }
        Format::Tsv => {
            out.push_str(VERIFY_TSV_HEADER);
            out.push('\n');
            for r in reports {
                let _ = writeln!(
                    out,
                    "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                    r.kind,
                    r.partition,
                    r.n,
                    r.rank_of_g,
                    r.dim_z,
                    r.index_z,
                    r.index_method,
                    r.paper_covector_stab_dim
                        .map_or("-".into(), |d| d.to_string()),
                    r.count(Status::Pass),
                    r.count(Status::Fail),
                    r.count(Status::Skipped),
                    r.seed,
                );
            }
        }
    }
    out
}

pub fn render_counterexamples(reports: &[CounterexampleJson], format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Json => {
            for r in reports {
                out.push_str(&serde_json::to_string(r).expect("report serialises"));
                out.push('\n');
            }
        }
        Format::Tsv => {
            out.push_str("algebra\tfact\tstatus\n");
            for r in reports {
                for (name, c) in &r.checks {
                    let status = if c.status == Status::Pass {
                        "pass"
                    } else {
                        "fail"
                    };
                    let _ = writeln!(out, "{}\t{name}\t{status}", r.algebra);
                }
                let _ = writeln!(
                    out,
                    "{}\tsampled criterion passes (probabilistic)\t{}/{}",
                    r.algebra, r.sampling.criterion_passes, r.sampling.regular
                );
            }
        }
    }
    out
}

pub fn sweep_exit(reports: &[VerifyReport]) -> i32 {
    if reports.iter().all(VerifyReport::passed) {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

/// `{label: rational}` over the nonzero coordinates of `c`.
pub fn covector_json(g: &LieAlgebra, c: &Covector) -> BTreeMap<String, String> {
    g.labels()
        .iter()
        .zip(&c.coords)
        .filter(|(_, v)| !v.is_zero())
        .map(|(l, v)| (l.clone(), v.to_string()))
        .collect()
}
