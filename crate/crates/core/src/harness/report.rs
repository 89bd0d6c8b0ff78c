//! Serializable reports. Field order is the JSON key order.

use serde::Serialize;

use crate::classes::ClassResult;
use crate::error::Error;
use crate::harness::config::{Route, RunConfig};
use crate::harness::Outcome;
use crate::koszul::StrandResult;
use crate::models::{Check, ModelDocument};

/// Version tag of every report.
pub const REPORT_SCHEMA: &str = "syzlab-report/1";

/// Names of fields that carry wall-clock time and differ between reruns.
pub const TIMING_FIELDS: [&str; 2] = ["ms", "total_ms"];

#[derive(Clone, Debug, Serialize)]
pub struct StrandRow {
    pub p: usize,
    pub dim: usize,
    pub nullity: usize,
    pub rank_delta1: usize,
    pub rank_delta2: usize,
    pub ms: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct RouteStrand {
    pub route: Route,
    pub h0l: usize,
    pub h0l2: usize,
    pub strand: Vec<StrandRow>,
    pub total_ms: u64,
}

impl RouteStrand {
    pub fn new(route: Route, h0l: usize, h0l2: usize, strand: &StrandResult, total_ms: u64) -> Self {
        RouteStrand {
            route,
            h0l,
            h0l2,
            strand: strand
                .entries
                .iter()
                .map(|e| StrandRow {
                    p: e.p,
                    dim: e.dim,
                    nullity: e.nullity_delta2,
                    rank_delta1: e.rank_delta1,
                    rank_delta2: e.rank_delta2,
                    ms: e.elapsed_ms,
                })
                .collect(),
            total_ms,
        }
    }

    pub fn dims(&self) -> Vec<usize> {
        self.strand.iter().map(|r| r.dim).collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BettiReport {
    pub schema: String,
    pub rng: String,
    pub command: String,
    pub model: ModelDocument,
    pub routes: Vec<RouteStrand>,
    /// Index `j` of the extra-syzygy space, read at `p = h0l - j`.
    pub j: usize,
    pub extra_syzygies: Option<usize>,
    pub checks: Vec<Check>,
    pub total_ms: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassReport {
    pub schema: String,
    pub kmax: i64,
    pub results: Vec<ClassResult>,
    pub checks: Vec<Check>,
    pub total_ms: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct DvrInstance {
    pub exponents: Vec<usize>,
    pub corank0: usize,
    pub detval: usize,
    pub ok: bool,
    pub matches_construction: bool,
    pub equality: bool,
    pub reduced: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DvrReport {
    pub schema: String,
    pub rng: String,
    pub prime: u64,
    pub size: usize,
    pub seed: u64,
    pub instances: Vec<DvrInstance>,
    pub checks: Vec<Check>,
    pub total_ms: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ErrorReport {
    pub schema: String,
    pub command: String,
    pub error: String,
    pub exit_code: i32,
    pub checks: Vec<Check>,
}

impl ErrorReport {
    pub fn new(command: &str, e: &Error, outcome: Outcome) -> Self {
        ErrorReport {
            schema: REPORT_SCHEMA.into(),
            command: command.into(),
            error: e.to_string(),
            exit_code: outcome.code(),
            checks: Vec::new(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteEntry {
    pub config: RunConfig,
    pub exit_code: i32,
    pub report: Report,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub schema: String,
    pub entries: Vec<SuiteEntry>,
    pub total_ms: u64,
}

#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum Report {
    Betti(BettiReport),
    Class(ClassReport),
    Dvr(DvrReport),
    Error(ErrorReport),
}

impl Report {
    pub fn checks(&self) -> &[Check] {
        match self {
            Report::Betti(r) => &r.checks,
            Report::Class(r) => &r.checks,
            Report::Dvr(r) => &r.checks,
            Report::Error(r) => &r.checks,
        }
    }

    /// One line per check, for terminal output.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        if let Report::Error(e) = self {
            out.push_str(&format!("error: {}\n", e.error));
        }
        if let Report::Betti(b) = self {
            for r in &b.routes {
                out.push_str(&format!("{} strand {:?}\n", r.route, r.dims()));
            }
            if let Some(e) = b.extra_syzygies {
                out.push_str(&format!("extra syzygies at j={}: {e}\n", b.j));
            }
        }
        for c in self.checks() {
            let mark = if c.pass { "ok  " } else { "FAIL" };
            if c.detail.is_empty() {
                out.push_str(&format!("{mark} {}\n", c.name));
            } else {
                out.push_str(&format!("{mark} {} {}\n", c.name, c.detail));
            }
        }
        out
    }
}

/// Removes timing fields from a JSON value, recursively.
pub fn strip_timing(v: &mut serde_json::Value) {
    match v {
        serde_json::Value::Object(map) => {
            for f in TIMING_FIELDS {
                map.remove(f);
            }
            for (_, x) in map.iter_mut() {
                strip_timing(x);
            }
        }
        serde_json::Value::Array(list) => list.iter_mut().for_each(strip_timing),
        _ => {}
    }
}
