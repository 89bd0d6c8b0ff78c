//! Jobs, reports and exit codes shared by the command-line tool and the
//! acceptance tests.

pub mod config;
pub mod report;

use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;

use crate::arith::PrimeField;
use crate::classes::verify_class;
use crate::error::{Error, Result};
use crate::koszul::{binom, complex_closes, linear_strand_dump, Dump, MulTable, StrandResult};
use crate::linalg::dvr::{dvr_degeneracy_check, random_smith_instance};
use crate::models::{
    fit_nodal_bideg, fit_nodal_plane, maxcliff_parameters, model_selfcheck, CIFixture, Check, Model, ScrollModel,
};
use crate::rng::{SeededRng, RNG_NAME};

pub use config::{parse_suite, Command, Route, RunConfig};
pub use report::{
    BettiReport, ClassReport, DvrInstance, DvrReport, ErrorReport, Report, RouteStrand, StrandRow, SuiteEntry, SuiteReport,
    REPORT_SCHEMA,
};

/// Process exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Outcome {
    Pass = 0,
    CheckFailed = 1,
    Degenerate = 2,
    Usage = 3,
}

impl Outcome {
    pub fn code(self) -> i32 {
        self as i32
    }

    pub fn from_checks(checks: &[Check]) -> Outcome {
        if checks.iter().all(|c| c.pass) {
            Outcome::Pass
        } else {
            Outcome::CheckFailed
        }
    }

    pub fn from_error(e: &Error) -> Outcome {
        match e {
            Error::DegenerateInstance(_) | Error::InsufficientPoints { .. } => Outcome::Degenerate,
            Error::Usage(_) | Error::UnsupportedGenus(_) | Error::BadModulus(_) | Error::Io(_) => Outcome::Usage,
            _ => Outcome::CheckFailed,
        }
    }
}

/// Caps the global thread pool at `SYZLAB_THREADS` when set. Results do not
/// depend on the thread count.
pub fn init_threads(explicit: Option<usize>) -> Result<()> {
    let n = match explicit {
        Some(n) => Some(n),
        None => match std::env::var("SYZLAB_THREADS") {
            Ok(v) => Some(v.trim().parse().map_err(|_| Error::Usage(format!("SYZLAB_THREADS={v} is not a number")))?),
            Err(_) => None,
        },
    };
    if let Some(n) = n {
        // a pool built earlier in the process stays in place
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    Ok(())
}

/// Runs one job; errors become an [`ErrorReport`] with the matching outcome.
pub fn run(config: &RunConfig) -> (Report, Outcome) {
    let result = config.command.validate().and_then(|_| run_command(&config.command, config.dump_matrices.as_deref()));
    let (report, outcome) = match result {
        Ok(mut r) => {
            if let (Some(want), Report::Betti(b)) = (config.expect_extra, &mut r) {
                b.checks.push(Check::new(
                    "expected_extra_syzygies",
                    b.extra_syzygies == Some(want),
                    format!("{:?} (expected {want})", b.extra_syzygies),
                ));
            }
            let o = Outcome::from_checks(r.checks());
            (r, o)
        }
        Err(e) => {
            let o = Outcome::from_error(&e);
            (Report::Error(ErrorReport::new(config.command.name(), &e, o)), o)
        }
    };
    if let Some(path) = &config.output {
        if let Err(e) = write_json(path, &report) {
            let o = Outcome::from_error(&e);
            return (Report::Error(ErrorReport::new(config.command.name(), &e, o)), o);
        }
    }
    (report, outcome)
}

pub fn write_json<T: serde::Serialize>(path: &Path, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Error::Io(e.to_string()))?;
    std::fs::write(path, text + "\n")?;
    Ok(())
}

fn run_command(cmd: &Command, dump: Option<&Path>) -> Result<Report> {
    match *cmd {
        Command::VerifyClass { kmax } => cmd_verify_class(kmax).map(Report::Class),
        Command::Scroll { k } => cmd_scroll(k, dump).map(Report::Betti),
        Command::Gonal { k, prime, seed, route } => cmd_gonal(k, prime, seed, route, dump).map(Report::Betti),
        Command::Maxcliff { k, prime, seed, route } => cmd_maxcliff(k, prime, seed, route, dump).map(Report::Betti),
        Command::Ci { genus, prime, seed } => cmd_ci(genus, prime, seed, dump).map(Report::Betti),
        Command::DvrDemo { size, seed, count } => cmd_dvr_demo(size, seed, count).map(Report::Dvr),
    }
}

pub fn cmd_verify_class(kmax: i64) -> Result<ClassReport> {
    if kmax < 3 {
        return Err(Error::Usage(format!("kmax must be at least 3, got {kmax}")));
    }
    let start = Instant::now();
    let results = (3..=kmax).into_par_iter().map(verify_class).collect::<Result<Vec<_>>>()?;
    let checks = results
        .iter()
        .map(|r| {
            Check::new(
                &format!("k{}", r.k),
                r.ok(),
                format!("N={} HM={} ratio={}", r.n_closed, r.hm, r.ratio),
            )
        })
        .collect();
    Ok(ClassReport {
        schema: REPORT_SCHEMA.into(),
        kmax,
        results,
        checks,
        total_ms: start.elapsed().as_millis() as u64,
    })
}

fn route_dump<'a>(dir: Option<&'a Path>, prefix: &'a str) -> Option<Dump<'a>> {
    dir.map(|dir| Dump { dir, prefix })
}

/// Koszul-level checks shared by every model.
fn strand_checks(table: &MulTable, strand: &StrandResult, checks: &mut Vec<Check>, tag: &str) {
    let closes = (1..=strand.entries.len()).all(|p| complex_closes(table, p));
    checks.push(Check::new(&format!("{tag}delta_composition_zero"), closes, ""));
    let injective = strand.entries.iter().all(|e| e.rank_delta1 == binom(table.h0l(), e.p + 1));
    checks.push(Check::new(&format!("{tag}delta1_injective"), injective, ""));
    checks.push(Check::new(
        &format!("{tag}vanishing_propagates"),
        strand.vanishing_propagates(),
        format!("{:?}", strand.dims()),
    ));
}

fn curve_checks(g: usize, strand: &StrandResult, checks: &mut Vec<Check>, tag: &str) {
    let k11 = strand.entry(1).map(|e| e.dim);
    let expected = (g - 2) * (g - 3) / 2;
    checks.push(Check::new(
        &format!("{tag}k11_quadrics"),
        k11 == Some(expected),
        format!("{k11:?} (expected {expected})"),
    ));
}

struct Computed {
    routes: Vec<RouteStrand>,
    checks: Vec<Check>,
}

/// Builds tables along the requested routes, computes strands and the
/// shared checks, and compares routes.
fn compute_routes(model: &Model, route: Route, dump: Option<&Path>, prefix: &str) -> Result<Computed> {
    let mut checks = Vec::new();
    for c in model_selfcheck(model).checks {
        checks.push(c);
    }
    let mut routes = Vec::new();
    let available: &[Route] = match model {
        Model::Nodal(_) => route.routes(),
        _ => &[Route::Quotient],
    };
    for &r in available {
        let start = Instant::now();
        let table = match (model, r) {
            (Model::Nodal(c), Route::Points) => c.mul_table_eval(10 * c.genus() as usize)?,
            _ => model.mul_table()?,
        };
        let name = format!("{prefix}{r}_");
        let strand = linear_strand_dump(&table, route_dump(dump, &name))?;
        let tag = if available.len() > 1 { format!("{r}_") } else { String::new() };
        strand_checks(&table, &strand, &mut checks, &tag);
        if !matches!(model, Model::Scroll(_)) {
            curve_checks(table.h0l(), &strand, &mut checks, &tag);
        }
        routes.push(RouteStrand::new(r, table.h0l(), table.h0l2(), &strand, start.elapsed().as_millis() as u64));
    }
    if routes.len() == 2 {
        let same = routes[0].dims() == routes[1].dims();
        checks.push(Check::new(
            "routes_agree",
            same,
            format!("{:?} vs {:?}", routes[0].dims(), routes[1].dims()),
        ));
    }
    Ok(Computed { routes, checks })
}

fn extra_at(routes: &[RouteStrand], j: usize) -> Option<usize> {
    let first = routes.first()?;
    let p = first.h0l.checked_sub(j)?;
    first.strand.iter().find(|row| row.p == p).map(|row| row.dim)
}

fn betti_report(command: &str, model: &Model, computed: Computed, j: usize, start: Instant) -> BettiReport {
    BettiReport {
        schema: REPORT_SCHEMA.into(),
        rng: RNG_NAME.into(),
        command: command.into(),
        model: model.document(),
        extra_syzygies: extra_at(&computed.routes, j),
        j,
        routes: computed.routes,
        checks: computed.checks,
        total_ms: start.elapsed().as_millis() as u64,
    }
}

/// Strand of the balanced scroll, `p C(k, p+1)`.
pub fn eagon_northcott(k: usize, len: usize) -> Vec<usize> {
    (1..=len).map(|p| p * binom(k, p + 1)).collect()
}

pub fn cmd_scroll(k: usize, dump: Option<&Path>) -> Result<BettiReport> {
    let start = Instant::now();
    let model = Model::Scroll(ScrollModel::new(k)?);
    let mut computed = compute_routes(&model, Route::Quotient, dump, &format!("scroll_k{k}_"))?;
    let dims = computed.routes[0].dims();
    let expected = eagon_northcott(k, dims.len());
    computed.checks.push(Check::new(
        "eagon_northcott",
        dims == expected,
        format!("{dims:?} (expected {expected:?})"),
    ));
    let extra = extra_at(&computed.routes, k);
    computed.checks.push(Check::new(
        "extra_syzygies_k_minus_1",
        extra == Some(k - 1),
        format!("{extra:?}"),
    ));
    Ok(betti_report("scroll", &model, computed, k, start))
}

pub fn cmd_gonal(k: usize, prime: u64, seed: u64, route: Route, dump: Option<&Path>) -> Result<BettiReport> {
    let start = Instant::now();
    let field = PrimeField::new(prime)?;
    let model = Model::Nodal(fit_nodal_bideg(k, field, seed)?);
    let mut computed = compute_routes(&model, route, dump, &format!("gonal_k{k}_"))?;
    let g = 2 * k - 1;
    let extra = extra_at(&computed.routes, k);
    computed.checks.push(Check::new(
        "extra_syzygies_lower_bound",
        extra.is_some_and(|e| e >= k - 1),
        format!("{extra:?} >= {}", k - 1),
    ));
    computed.checks.push(Check::new(
        "extra_syzygies_k_minus_1",
        extra == Some(k - 1),
        format!("{extra:?}"),
    ));
    let nullity = computed.routes[0].strand.iter().find(|r| r.p == k - 1).map(|r| r.nullity);
    let bound = binom(g, k - 1) + k - 1;
    computed.checks.push(Check::new(
        "kernel_lower_bound",
        nullity.is_some_and(|n| n >= bound),
        format!("{nullity:?} >= {bound}"),
    ));
    let scroll = eagon_northcott(k, computed.routes[0].strand.len());
    let dominates = computed.routes[0].dims().iter().zip(&scroll).all(|(a, b)| a >= b);
    computed.checks.push(Check::new(
        "contains_scroll_strand",
        dominates,
        format!("{:?} >= {scroll:?}", computed.routes[0].dims()),
    ));
    Ok(betti_report("gonal", &model, computed, k, start))
}

pub fn cmd_maxcliff(k: usize, prime: u64, seed: u64, route: Route, dump: Option<&Path>) -> Result<BettiReport> {
    let start = Instant::now();
    let field = PrimeField::new(prime)?;
    let (d, delta) = maxcliff_parameters(k);
    let model = Model::Nodal(fit_nodal_plane(d, delta, field, seed)?);
    let mut computed = compute_routes(&model, route, dump, &format!("maxcliff_k{k}_"))?;
    let extra = extra_at(&computed.routes, k);
    computed
        .checks
        .push(Check::new("extra_syzygies_zero", extra == Some(0), format!("{extra:?}")));
    Ok(betti_report("maxcliff", &model, computed, k, start))
}

pub fn cmd_ci(genus: usize, prime: u64, seed: u64, dump: Option<&Path>) -> Result<BettiReport> {
    let start = Instant::now();
    let field = PrimeField::new(prime)?;
    let model = Model::CompleteIntersection(CIFixture::new(genus, field, seed)?);
    let mut computed = compute_routes(&model, Route::Quotient, dump, &format!("ci_g{genus}_"))?;
    let j = genus.div_ceil(2);
    let extra = extra_at(&computed.routes, j);
    computed
        .checks
        .push(Check::new("extra_syzygies_zero", extra == Some(0), format!("{extra:?}")));
    Ok(betti_report("ci", &model, computed, j, start))
}

/// Largest exponent used on the diagonal of demo instances.
pub const DVR_MAX_EXPONENT: usize = 3;

pub fn cmd_dvr_demo(size: usize, seed: u64, count: usize) -> Result<DvrReport> {
    if size == 0 {
        return Err(Error::Usage("size must be at least 1".into()));
    }
    let start = Instant::now();
    let field = PrimeField::default_prime();
    let mut rng = SeededRng::new(seed);
    let mut instances = Vec::with_capacity(count);
    for _ in 0..count {
        let inst = random_smith_instance(field, size, DVR_MAX_EXPONENT, &mut rng);
        let check = dvr_degeneracy_check(&inst.matrix)?;
        instances.push(DvrInstance {
            exponents: inst.exponents.clone(),
            corank0: check.corank0,
            detval: check.detval,
            ok: check.ok,
            matches_construction: check == inst.expected(),
            equality: check.detval == check.corank0,
            reduced: inst.reduced(),
        });
    }
    let checks = vec![
        Check::new("valuation_at_least_corank", instances.iter().all(|i| i.ok), ""),
        Check::new("matches_construction", instances.iter().all(|i| i.matches_construction), ""),
        Check::new(
            "equality_iff_reduced",
            instances.iter().all(|i| i.equality == i.reduced),
            "",
        ),
    ];
    Ok(DvrReport {
        schema: REPORT_SCHEMA.into(),
        rng: RNG_NAME.into(),
        prime: field.modulus() as u64,
        size,
        seed,
        instances,
        checks,
        total_ms: start.elapsed().as_millis() as u64,
    })
}

/// Runs every entry, in parallel, and aggregates. The outcome is the worst
/// entry outcome.
pub fn run_suite(configs: &[RunConfig]) -> (SuiteReport, Outcome) {
    let start = Instant::now();
    let results: Vec<(Report, Outcome)> = configs.par_iter().map(run).collect();
    let outcome = results.iter().map(|r| r.1).max().unwrap_or(Outcome::Pass);
    let entries = configs
        .iter()
        .zip(results)
        .map(|(c, (report, o))| SuiteEntry {
            config: c.clone(),
            exit_code: o.code(),
            report,
        })
        .collect();
    (
        SuiteReport {
            schema: REPORT_SCHEMA.into(),
            entries,
            total_ms: start.elapsed().as_millis() as u64,
        },
        outcome,
    )
}

pub fn run_suite_file(path: &Path) -> (Option<SuiteReport>, Outcome, Option<Error>) {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return (None, Outcome::Usage, Some(Error::Usage(format!("{}: {e}", path.display())))),
    };
    match parse_suite(&text) {
        Ok(list) => {
            let (r, o) = run_suite(&list);
            (Some(r), o, None)
        }
        Err(e) => (None, Outcome::Usage, Some(e)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scroll_report() {
        let r = cmd_scroll(4, None).unwrap();
        assert_eq!(r.routes[0].dims(), vec![6, 8, 3, 0, 0]);
        assert_eq!(r.extra_syzygies, Some(3));
        assert!(r.checks.iter().all(|c| c.pass), "{:?}", r.checks);
    }

    #[test]
    fn gonal_report_example() {
        let r = cmd_gonal(4, 31991, 7, Route::Both, None).unwrap();
        assert_eq!(r.extra_syzygies, Some(3));
        let n = r.routes[0].strand.iter().find(|x| x.p == 3).unwrap().nullity;
        assert!(n >= 38);
        assert!(r.checks.iter().all(|c| c.pass), "{:?}", r.checks);
    }

    #[test]
    fn ci_reports() {
        let r = cmd_ci(5, 31991, 1, None).unwrap();
        assert_eq!(r.extra_syzygies, Some(0));
        assert_eq!(r.j, 3);
        assert!(r.checks.iter().all(|c| c.pass));
        let r = cmd_ci(4, 31991, 1, None).unwrap();
        assert_eq!(r.j, 2);
        assert!(r.checks.iter().all(|c| c.pass), "{:?}", r.checks);
    }

    #[test]
    fn outcomes() {
        let (_, o) = run(&RunConfig::new(Command::VerifyClass { kmax: 2 }));
        assert_eq!(o, Outcome::Usage);
        let (r, o) = run(&RunConfig::new(Command::VerifyClass { kmax: 10 }));
        assert_eq!(o, Outcome::Pass);
        match r {
            Report::Class(c) => {
                assert_eq!(c.results.len(), 8);
                assert!(c.results.iter().all(|x| x.ratio == num_rational::BigRational::from_integer((x.k - 1).into())));
            }
            _ => panic!("wrong report"),
        }
        let (_, o) = run(&RunConfig::new(Command::Ci { genus: 6, prime: 31991, seed: 1 }));
        assert_eq!(o, Outcome::Usage);
        assert_eq!(Outcome::from_error(&Error::DegenerateInstance("x".into())), Outcome::Degenerate);
    }

    #[test]
    fn dvr_demo_examples() {
        let r = cmd_dvr_demo(3, 5, 20).unwrap();
        assert!(r.checks.iter().all(|c| c.pass));
        assert!(r.instances.iter().all(|i| i.ok));
    }

    #[test]
    fn suite_aggregates_worst_outcome() {
        let (r, o) = run_suite(&[]);
        assert_eq!(o, Outcome::Pass);
        assert!(r.entries.is_empty());
        let good = RunConfig::new(Command::Scroll { k: 3 });
        let mut bad = good.clone();
        bad.expect_extra = Some(5);
        let (r, o) = run_suite(&[good, bad]);
        assert_eq!(o, Outcome::CheckFailed);
        assert_eq!(r.entries[0].exit_code, 0);
        assert_eq!(r.entries[1].exit_code, 1);
    }
}
