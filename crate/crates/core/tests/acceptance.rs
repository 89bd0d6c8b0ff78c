//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! fails if any criterion fails.

use std::io::Write;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;

use syzlab::classes::{check_series_identities, hm_class, rank_expressions, verify_class};
use syzlab::harness::eagon_northcott;
use syzlab::koszul::{binom, complex_closes, extra_syzygies, linear_strand, MulTable, StrandResult};
use syzlab::linalg::dvr::{dvr_degeneracy_check, random_smith_instance, PolyMatrix};
use syzlab::models::{fit_nodal_bideg, fit_nodal_plane, maxcliff_parameters, CIFixture, NodalCurve, ScrollModel};
use syzlab::rng::SeededRng;
use syzlab::{PrimeField, Result};

const PRIME: u64 = 31991;

struct Verdict {
    pass: bool,
    detail: String,
}

impl Verdict {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Verdict { pass, detail: detail.into() }
    }
}

/// Writes straight to stdout so the lines survive the test harness capture.
fn report(n: usize, title: &str, v: &Verdict, elapsed: Duration) {
    let mark = if v.pass { "PASS" } else { "FAIL" };
    let line = format!("criterion {n} {mark} {title} ({:.2?}) {}\n", elapsed, v.detail);
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(line.as_bytes());
    let _ = out.flush();
}

fn field() -> PrimeField {
    PrimeField::new(PRIME).unwrap()
}

/// A curve model together with both multiplication tables where available.
struct Built {
    name: String,
    genus: Option<usize>,
    tables: Vec<MulTable>,
    strands: Vec<StrandResult>,
}

fn build(name: String, genus: Option<usize>, tables: Vec<MulTable>) -> Result<Built> {
    let strands = tables.iter().map(linear_strand).collect::<Result<Vec<_>>>()?;
    Ok(Built { name, genus, tables, strands })
}

fn build_nodal(name: String, c: &NodalCurve) -> Result<Built> {
    let g = c.genus() as usize;
    build(name, Some(g), vec![c.mul_table_quotient()?, c.mul_table_eval(10 * g)?])
}

fn criterion_1() -> Verdict {
    let start = Instant::now();
    let mut bad = Vec::new();
    for k in 3..=100 {
        match verify_class(k) {
            Ok(r) => {
                let ratio_ok = r.ratio == BigRational::from_integer(BigInt::from(k - 1));
                let four = r.n_series == r.n_bracket && r.n_bracket == r.n_binomial && r.n_binomial == r.n_closed;
                if !(four && ratio_ok && r.n_closed == &r.hm * BigInt::from(k - 1)) {
                    bad.push(k);
                }
            }
            Err(_) => bad.push(k),
        }
    }
    let spots = [(3, 16, 8), (4, 45, 15)].iter().all(|&(k, n, hm)| {
        let r = verify_class(k).unwrap();
        r.n_closed == BigInt::from(n) && hm_class(k).unwrap() == BigInt::from(hm)
    });
    let t = start.elapsed();
    Verdict::new(
        bad.is_empty() && spots && t < Duration::from_secs(5),
        format!("k=3..100, failures {bad:?}, spot values {spots}, {t:.2?}"),
    )
}

fn criterion_2() -> Verdict {
    let start = Instant::now();
    let mut bad = Vec::new();
    for g in (5..=41).step_by(2) {
        let ids = check_series_identities(g, (g - 1) as usize);
        if !(ids.id1_ok && ids.id2_ok && !ids.id2_minus_ok) {
            bad.push(g);
        }
    }
    let t = start.elapsed();
    Verdict::new(
        bad.is_empty() && t < Duration::from_secs(1),
        format!("odd g=5..41 through t^(g-1), failures {bad:?}, {t:.2?}"),
    )
}

fn criterion_3() -> Verdict {
    let bad: Vec<i64> = (3..=100)
        .filter(|&k| {
            let r = rank_expressions(k);
            !r.iter().all(|x| *x == r[0])
        })
        .collect();
    let spots = rank_expressions(3)[0] == BigInt::from(40) && rank_expressions(4)[0] == BigInt::from(210);
    Verdict::new(bad.is_empty() && spots, format!("k=3..100, failures {bad:?}, spot values {spots}"))
}

fn criterion_4(scrolls: &[StrandResult]) -> Verdict {
    let mut detail = Vec::new();
    let mut pass = true;
    for (i, s) in scrolls.iter().enumerate() {
        let k = i + 3;
        let dims = s.dims();
        let expected = eagon_northcott(k, k - 1);
        let table = ScrollModel::new(k).unwrap().mul_table().unwrap();
        let extra = extra_syzygies(&table, k).ok();
        let ok = dims[..k - 1] == expected[..] && extra == Some(k - 1);
        pass &= ok;
        detail.push(format!("k={k} extra={extra:?}"));
    }
    Verdict::new(pass, detail.join(", "))
}

fn criterion_5(gonal: &[Built]) -> Verdict {
    let mut detail = Vec::new();
    let mut pass = true;
    for (i, b) in gonal.iter().enumerate() {
        let k = i + 3;
        let g = 2 * k - 1;
        let extra = extra_syzygies(&b.tables[0], k).ok();
        let nullity = b.strands[0].entry(k - 1).map(|e| e.nullity_delta2);
        let bound = binom(g, k - 1) + k - 1;
        let ok = extra == Some(k - 1) && nullity.is_some_and(|n| n >= bound);
        pass &= ok;
        detail.push(format!("k={k} extra={extra:?} nullity={nullity:?}>={bound}"));
    }
    Verdict::new(pass, detail.join(", "))
}

fn criterion_6(ci5: &Built, plane7: &[Built], plane9: &[Built]) -> Verdict {
    let ci_extra = extra_syzygies(&ci5.tables[0], 3).ok();
    let zero_at = |bs: &[Built], j: usize| -> Vec<usize> {
        bs.iter().map(|b| extra_syzygies(&b.tables[0], j).unwrap_or(usize::MAX)).collect()
    };
    let e7 = zero_at(plane7, 4);
    let e9 = zero_at(plane9, 5);
    Verdict::new(
        ci_extra == Some(0) && e7.contains(&0) && e9.contains(&0),
        format!("ci g=5 {ci_extra:?}, plane g=7 seeds 1..5 {e7:?}, plane g=9 {e9:?}"),
    )
}

fn criterion_7(all: &[&Built]) -> Verdict {
    let mut failures = Vec::new();
    let mut tables = 0;
    for b in all {
        for (t, s) in b.tables.iter().zip(&b.strands) {
            tables += 1;
            let closes = (1..=s.entries.len()).all(|p| complex_closes(t, p));
            let injective = s.entries.iter().all(|e| e.rank_delta1 == binom(t.h0l(), e.p + 1));
            let k11 = match b.genus {
                Some(g) => s.entry(1).map(|e| e.dim) == Some((g - 2) * (g - 3) / 2),
                None => true,
            };
            if !(closes && injective && k11 && s.vanishing_propagates()) {
                failures.push(b.name.clone());
            }
        }
        if b.strands.len() == 2 && b.strands[0].dims() != b.strands[1].dims() {
            failures.push(format!("{} routes", b.name));
        }
    }
    Verdict::new(failures.is_empty(), format!("{tables} tables, failures {failures:?}"))
}

fn criterion_8() -> Verdict {
    let start = Instant::now();
    let f = PrimeField::default_prime();
    let mut rng = SeededRng::new(2024);
    let mut bad = 0;
    let mut equalities = 0;
    for i in 0..500 {
        let n = 1 + i % 8;
        let inst = random_smith_instance(f, n, 3, &mut rng);
        let check = dvr_degeneracy_check(&inst.matrix).unwrap();
        let equal = check.detval == check.corank0;
        if !check.ok || equal != inst.reduced() {
            bad += 1;
        }
        equalities += usize::from(equal);
    }
    let t2 = dvr_degeneracy_check(&PolyMatrix::diagonal_monomials(f, &[2])).unwrap();
    let single = (t2.corank0, t2.detval, t2.ok) == (1, 2, true);
    let t = start.elapsed();
    Verdict::new(
        bad == 0 && single && t < Duration::from_secs(5),
        format!("500 instances, {bad} bad, {equalities} with equality, t^2 example {single}, {t:.2?}"),
    )
}

fn criterion_9(gonal: &[Built], scrolls: &[StrandResult]) -> Verdict {
    let mut detail = Vec::new();
    let mut pass = true;
    for (i, (b, s)) in gonal.iter().zip(scrolls).enumerate() {
        let ok = b.strands[0].dominates(s);
        pass &= ok;
        detail.push(format!("k={} {:?}>={:?}", i + 3, b.strands[0].dims(), s.dims()));
    }
    Verdict::new(pass, detail.join(", "))
}

#[test]
fn acceptance_criteria() {
    let mut verdicts = Vec::new();
    let mut run = |n: usize, title: &str, f: &mut dyn FnMut() -> Verdict| {
        let start = Instant::now();
        let v = f();
        report(n, title, &v, start.elapsed());
        verdicts.push((n, v.pass));
    };

    run(1, "class verification", &mut criterion_1);
    run(2, "series identities", &mut criterion_2);
    run(3, "pushforward rank identity", &mut criterion_3);

    let scrolls: Vec<StrandResult> = (3..=5)
        .map(|k| linear_strand(&ScrollModel::new(k).unwrap().mul_table().unwrap()).unwrap())
        .collect();
    run(4, "scroll syzygies", &mut || criterion_4(&scrolls));

    let f = field();
    let start = Instant::now();
    let gonal: Vec<Built> = (3..=5)
        .map(|k| build_nodal(format!("gonal k={k}"), &fit_nodal_bideg(k, f, 1).unwrap()).unwrap())
        .collect();
    let gonal_time = start.elapsed();
    run(5, "gonal curves", &mut || {
        let mut v = criterion_5(&gonal);
        v.pass &= gonal_time < Duration::from_secs(600);
        v
    });

    let ci5 = build("ci g=5".into(), Some(5), vec![CIFixture::new(5, f, 1).unwrap().mul_table().unwrap()]).unwrap();
    let ci4 = build("ci g=4".into(), Some(4), vec![CIFixture::new(4, f, 1).unwrap().mul_table().unwrap()]).unwrap();
    let plane = |k: usize, seeds: std::ops::RangeInclusive<u64>| -> Vec<Built> {
        let (d, delta) = maxcliff_parameters(k);
        seeds
            .filter_map(|s| fit_nodal_plane(d, delta, f, s).ok())
            .map(|c| build_nodal(format!("plane d={d} seed={}", c.seed()), &c).unwrap())
            .collect()
    };
    let plane7 = plane(4, 1..=5);
    let start = Instant::now();
    let plane9 = plane(5, 1..=1);
    let plane9_time = start.elapsed();
    run(6, "max-Clifford models", &mut || {
        let mut v = criterion_6(&ci5, &plane7, &plane9);
        v.pass &= plane9_time < Duration::from_secs(600);
        v
    });

    let scroll_built: Vec<Built> = (3..=5)
        .map(|k| build(format!("scroll k={k}"), None, vec![ScrollModel::new(k).unwrap().mul_table().unwrap()]).unwrap())
        .collect();
    let mut all: Vec<&Built> = vec![&ci4, &ci5];
    all.extend(&gonal);
    all.extend(&plane7);
    all.extend(&plane9);
    all.extend(&scroll_built);
    run(7, "Koszul machinery properties", &mut || criterion_7(&all));

    run(8, "valuation against corank", &mut criterion_8);
    run(9, "containment monotonicity", &mut || criterion_9(&gonal, &scrolls));

    let failed: Vec<usize> = verdicts.iter().filter(|v| !v.1).map(|v| v.0).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
