//! One unit of verification work, its result payload and its checks.

use std::fmt;
use std::time::Instant;

use groupoid_reps_core::galgebra::{verify_iso, GroupoidAlgebra, PairMode};
use groupoid_reps_core::gelfand::verify_gelfand;
use groupoid_reps_core::gkd::verify_gkd;
use groupoid_reps_core::groupoid::{two_by_two_example, verify_groupoid};
use groupoid_reps_core::report::Report;
use groupoid_reps_core::schurweyl::{
    is_order, rook_epimorphism_check, rook_kernel_dim, theorem95_check, verify_schur_weyl, TENSOR_CAP,
};
use groupoid_reps_core::simples::{branching_all, verify_complete, young_induction_check, Simples};
use groupoid_reps_core::{wreath, DEFAULT_CAP};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "task", rename_all = "kebab-case")]
pub enum Task {
    Objects { ell: usize, d: usize },
    Simples { ell: usize, d: usize },
    /// `pairs = None` checks all pairs when that is affordable.
    VerifyIso { ell: usize, d: usize, pairs: Option<usize> },
    Gelfand { ell: usize, d: usize },
    Branching { ell: usize, d: usize },
    Gkd { ell: usize, k: usize, d: usize },
    SchurWeyl { kvec: Vec<usize>, d: usize },
    Theorem95 { ell: usize, k: usize, m: usize, d: usize },
    Rook { d: usize },
}

impl fmt::Display for Task {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Task::Objects { ell, d } => write!(f, "objects(l={ell},d={d})"),
            Task::Simples { ell, d } => write!(f, "simples(l={ell},d={d})"),
            Task::VerifyIso { ell, d, pairs: None } => write!(f, "verify-iso(l={ell},d={d})"),
            Task::VerifyIso { ell, d, pairs: Some(n) } => write!(f, "verify-iso(l={ell},d={d},pairs={n})"),
            Task::Gelfand { ell, d } => write!(f, "gelfand(l={ell},d={d})"),
            Task::Branching { ell, d } => write!(f, "branching(l={ell},d={d})"),
            Task::Gkd { ell, k, d } => write!(f, "gkd(l={ell},k={k},d={d})"),
            Task::SchurWeyl { kvec, d } => {
                let k: Vec<String> = kvec.iter().map(usize::to_string).collect();
                write!(f, "schur-weyl(k={},d={d})", k.join(","))
            }
            Task::Theorem95 { ell, k, m, d } => write!(f, "theorem95(l={ell},k={k},m={m},d={d})"),
            Task::Rook { d } => write!(f, "rook-check(d={d})"),
        }
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Settings {
    /// Overrides the per-task default cap.
    pub cap: Option<usize>,
    pub seed: u64,
}

#[derive(Clone, Debug)]
pub struct TaskOutput {
    pub name: String,
    pub result: Value,
    pub report: Report,
    pub seconds: f64,
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("summary types serialize")
}

impl Task {
    fn default_cap(&self) -> usize {
        match self {
            Task::SchurWeyl { .. } | Task::Theorem95 { .. } | Task::Rook { .. } => TENSOR_CAP,
            _ => DEFAULT_CAP,
        }
    }

    pub fn run(&self, settings: &Settings) -> Result<TaskOutput, CliError> {
        let start = Instant::now();
        let cap = settings.cap.unwrap_or_else(|| self.default_cap());
        let (result, report) = match *self {
            Task::Objects { ell, d } => {
                let (summary, mut report) = verify_groupoid(ell, d, cap)?;
                if (ell, d) == (2, 2) {
                    report.extend(two_by_two_example()?.prefixed("example: "));
                }
                let alg_objects: Vec<Value> = groupoid_reps_core::groupoid::objects(ell, d, cap)?
                    .iter()
                    .map(|f| json!({ "colors": f, "type": f.type_of() }))
                    .collect();
                (json!({ "summary": summary, "objects": alg_objects }), report)
            }
            Task::Simples { ell, d } => {
                let c = verify_complete(ell, d, cap)?;
                let dims: Vec<usize> = c.simples.iter().map(|s| s.total_dim).collect();
                (json!({ "count": c.simples.len(), "dims": dims, "simples": c.simples }), c.report)
            }
            Task::VerifyIso { ell, d, pairs } => {
                let mode = match pairs {
                    None => PairMode::Auto { seed: settings.seed },
                    Some(count) => PairMode::Sampled { count, seed: settings.seed },
                };
                let report = verify_iso(ell, d, mode, cap)?;
                (json!({ "group_order": wreath::group_order(ell, d) }), report)
            }
            Task::Gelfand { ell, d } => {
                let s = Simples::new(ell, d, cap)?;
                let (summary, report) = verify_gelfand(&s)?;
                (to_value(&summary), report)
            }
            Task::Branching { ell, d } => branching(ell, d, cap)?,
            Task::Gkd { ell, k, d } => {
                let (summary, report) = verify_gkd(ell, k, d, cap)?;
                (to_value(&summary), report)
            }
            Task::SchurWeyl { ref kvec, d } => {
                let (summary, report) = verify_schur_weyl(kvec, d, cap, settings.seed)?;
                (to_value(&summary), report)
            }
            Task::Theorem95 { ell, k, m, d } => {
                let (summary, report) = theorem95_check(ell, k, m, d, cap)?;
                (to_value(&summary), report)
            }
            Task::Rook { d } => {
                let (summary, report) = rook_epimorphism_check(d)?;
                // kernel of the action on V^⊗d, dim V = n; recorded, not checked.
                // The image is built from dense matrices, so only small d.
                let top = if d <= 3 { d + 1 } else { 1 };
                let kernels: Vec<Value> = (2..=top)
                    .filter_map(|n| rook_kernel_dim(d, n, cap).ok().map(|k| json!({ "n": n, "kernel": k })))
                    .collect();
                (json!({ "summary": summary, "order": is_order(d), "tensor_kernels": kernels }), report)
            }
        };
        Ok(TaskOutput { name: self.to_string(), result, report, seconds: start.elapsed().as_secs_f64() })
    }
}

fn branching(ell: usize, d: usize, cap: usize) -> Result<(Value, Report), CliError> {
    if d == 0 {
        return Err(CliError::Usage("branching needs d ≥ 1".into()));
    }
    let big = Simples::new(ell, d, cap)?;
    let small = Simples::new(ell, d - 1, cap)?;
    let mut report = Report::new();
    let rows = branching_all(&big, &small)?;
    for b in &rows {
        let got: Vec<String> = b.restriction.iter().map(|(q, k)| format!("{q}×{k}")).collect();
        report.push(format!("restriction of L_{}", b.label), b.matches, got.join(" + "));
    }
    // induction from the generalized Young subgroup at the canonical object
    let with_character = big.table.classes.order() <= 2_000;
    for m in &big.modules {
        let f = groupoid_reps_core::groupoid::canonical_object(m.shape());
        let idx = big.alg.objects().iter().position(|g| *g == f).expect("canonical object");
        let r = young_induction_check(&big, m.label(), idx, with_character)?;
        report.extend(r.prefixed(&format!("L_{} induced: ", m.label())));
    }
    let alg_dim = GroupoidAlgebra::new(ell, d, cap)?.dim();
    Ok((json!({ "algebra_dim": alg_dim, "branching": rows }), report))
}
