//! Reference implementations written independently of the library, plus
//! fixture helpers shared by the integration tests.
#![allow(dead_code)]

use std::cmp::Ordering;

use chrono::NaiveDate;
use fuzzy_d2t::config::Bundle;
use fuzzy_d2t::protoform::{DataSeries, QuantifiedStatement, TieBreak};
use fuzzy_d2t::referring::{DiscourseEntity, EntityKind, Feature};
use rand::Rng;

pub const WINTER: &str = include_str!("../../fixtures/winter.csv");
pub const SPRING: &str = include_str!("../../fixtures/spring.csv");

pub fn bundle() -> Bundle {
    Bundle::default_bundle()
}

pub fn day(i: usize) -> NaiveDate {
    NaiveDate::from_ymd_opt(2017, 1, 1).unwrap() + chrono::Days::new(i as u64)
}

pub fn series(var: &str, values: &[f64]) -> DataSeries {
    DataSeries::new(var, values.iter().enumerate().map(|(i, v)| (day(i), *v)).collect()).unwrap()
}

/// Trapezoid membership straight from the piecewise definition.
pub fn trapezoid(p: [f64; 4], x: f64) -> f64 {
    let [a, b, c, d] = p;
    if x >= b && x <= c {
        1.0
    } else if x <= a || x >= d {
        0.0
    } else if x < b {
        (x - a) / (b - a)
    } else {
        (d - x) / (d - c)
    }
}

/// Fulfillment of "Q Xs are A" by summing memberships one at a time.
pub fn type1_oracle(q: [f64; 4], a: [f64; 4], xs: &[f64]) -> f64 {
    let mut total = 0.0;
    for &x in xs {
        total += trapezoid(a, x);
    }
    trapezoid(q, total / xs.len() as f64)
}

pub fn random_trapezoid(rng: &mut impl Rng, lo: f64, hi: f64) -> [f64; 4] {
    let mut p: [f64; 4] = std::array::from_fn(|_| rng.gen_range(lo..=hi));
    p.sort_by(f64::total_cmp);
    if rng.gen_bool(0.15) {
        p[1] = p[0];
    }
    if rng.gen_bool(0.15) {
        p[3] = p[2];
    }
    p
}

const TOL: f64 = 1e-9;

fn cmp_tol(a: f64, b: f64) -> Ordering {
    if (a - b).abs() <= TOL {
        Ordering::Equal
    } else {
        a.total_cmp(&b)
    }
}

fn key(s: &QuantifiedStatement) -> (usize, String, usize, f64) {
    (s.quantifier.rank, s.summarizer.variable.clone(), s.summarizer.rank, s.fd)
}

fn cmp_key(a: &QuantifiedStatement, b: &QuantifiedStatement) -> Ordering {
    let (ka, kb) = (key(a), key(b));
    ka.0.cmp(&kb.0)
        .then(ka.1.cmp(&kb.1))
        .then(ka.2.cmp(&kb.2))
        .then(ka.3.total_cmp(&kb.3))
}

/// `Less` when subset `a` ranks ahead of subset `b`.
fn rank_subsets(a: &[&QuantifiedStatement], b: &[&QuantifiedStatement], tie: TieBreak) -> Ordering {
    let size = a.len().cmp(&b.len());
    if size != Ordering::Equal {
        return size;
    }
    let sum = |s: &[&QuantifiedStatement]| s.iter().fold(0.0, |acc, x| acc + x.fd);
    let by_sum = cmp_tol(sum(b), sum(a));
    if by_sum != Ordering::Equal {
        return by_sum;
    }
    let by_tie = match tie {
        TieBreak::HighestFd => {
            let desc = |s: &[&QuantifiedStatement]| {
                let mut v: Vec<f64> = s.iter().map(|x| x.fd).collect();
                v.sort_by(|p, q| q.total_cmp(p));
                v
            };
            let (da, db) = (desc(a), desc(b));
            (0..da.len())
                .map(|i| cmp_tol(db[i], da[i]))
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal)
        }
        TieBreak::MostSpecificQuantifier => {
            let spread = |s: &[&QuantifiedStatement]| {
                s.iter()
                    .map(|x| {
                        let [p, _, _, q] = x.quantifier.mf.breakpoints();
                        q - p
                    })
                    .fold(0.0, |acc, w| acc + w)
            };
            cmp_tol(spread(a), spread(b))
        }
    };
    if by_tie.is_ne() {
        return by_tie;
    }
    let mut sa = a.to_vec();
    let mut sb = b.to_vec();
    sa.sort_by(|x, y| cmp_key(x, y));
    sb.sort_by(|x, y| cmp_key(x, y));
    (0..sa.len())
        .map(|i| cmp_key(sa[i], sb[i]))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

/// Brute force over every subset (by bitmask) of the documented objective.
/// Returns the chosen statements sorted by declared key.
pub fn select_oracle(
    cands: &[QuantifiedStatement],
    theta: f64,
    tau: f64,
    tie: TieBreak,
) -> Vec<QuantifiedStatement> {
    let n = cands.len();
    assert!(n <= 20, "oracle is exponential");
    let cov = |s: &[&QuantifiedStatement]| s.iter().fold(0.0, |acc, x| acc + x.coverage);
    let mut best: Option<Vec<&QuantifiedStatement>> = None;
    fn consider<'a>(set: Vec<&'a QuantifiedStatement>, best: &mut Option<Vec<&'a QuantifiedStatement>>, tie: TieBreak) {
        if best.as_ref().is_none_or(|b| rank_subsets(&set, b, tie).is_lt()) {
            *best = Some(set);
        }
    }
    for mask in 1u32..(1u32 << n) {
        let set: Vec<&QuantifiedStatement> = (0..n).filter(|i| mask & (1 << i) != 0).map(|i| &cands[i]).collect();
        if set.iter().all(|s| s.fd >= theta - TOL) && cov(&set) >= tau - TOL {
            consider(set, &mut best, tie);
        }
    }
    if best.is_none() {
        for i in 0..n {
            for j in i + 1..n {
                let set = vec![&cands[i], &cands[j]];
                if cov(&set) >= tau - TOL {
                    consider(set, &mut best, tie);
                }
            }
        }
    }
    if best.is_none() {
        for c in cands {
            consider(vec![c], &mut best, tie);
        }
    }
    let mut out: Vec<QuantifiedStatement> = best.unwrap_or_default().into_iter().cloned().collect();
    out.sort_by(cmp_key);
    out
}

pub fn sorted_by_key(mut v: Vec<QuantifiedStatement>) -> Vec<QuantifiedStatement> {
    v.sort_by(cmp_key);
    v
}

/// Feature sets allowed in a description: the band never appears alone.
pub fn valid_feature_sets() -> Vec<Vec<Feature>> {
    let all = [Feature::Term, Feature::Band, Feature::Dates];
    (0u8..8)
        .map(|m| (0..3).filter(|i| m & (1 << i) != 0).map(|i| all[i]).collect::<Vec<_>>())
        .filter(|s| !(s.contains(&Feature::Band) && !s.contains(&Feature::Term)))
        .collect()
}

/// Entities of `context` fitting `target`'s values on `features`.
pub fn resolve_oracle<'a>(
    target: &DiscourseEntity,
    features: &[Feature],
    context: &'a [DiscourseEntity],
) -> Vec<&'a DiscourseEntity> {
    let fields = |e: &DiscourseEntity| match &e.kind {
        EntityKind::FuzzyPeriod {
            term, band, start, end, ..
        } => Some((term.term.clone(), term.variable.clone(), *band, *start, *end)),
        EntityKind::ReportPeriod { .. } => None,
    };
    let Some(t) = fields(target) else {
        return context.iter().filter(|e| e.id == target.id).collect();
    };
    context
        .iter()
        .filter(|e| {
            let Some(c) = fields(e) else { return false };
            features.iter().all(|f| match f {
                Feature::Term => (&c.0, &c.1) == (&t.0, &t.1),
                Feature::Band => c.2 == t.2,
                Feature::Dates => (c.3, c.4) == (t.3, t.4),
            })
        })
        .collect()
}

/// Temperature series with planted runs, so reports have several periods.
pub fn random_temperature_series(rng: &mut impl Rng, n: usize) -> Vec<f64> {
    let mut v = Vec::with_capacity(n);
    while v.len() < n {
        let base: f64 = match rng.gen_range(0..6) {
            0 => rng.gen_range(-10.0..0.0),
            1 => rng.gen_range(3.0..9.0),
            2 => rng.gen_range(10.0..13.0),
            3 => rng.gen_range(14.0..19.0),
            4 => rng.gen_range(20.0..33.0),
            _ => rng.gen_range(-10.0..40.0),
        };
        let len = rng.gen_range(1..9);
        for _ in 0..len {
            v.push((base + rng.gen_range(-0.5..0.5)).clamp(-10.0, 40.0));
        }
    }
    v.truncate(n);
    v
}

pub fn random_precipitation_series(rng: &mut impl Rng, n: usize) -> Vec<f64> {
    (0..n)
        .map(|_| match rng.gen_range(0..4) {
            0 => 0.0,
            1 => rng.gen_range(0.0..2.0),
            2 => rng.gen_range(1.0..12.0),
            _ => rng.gen_range(8.0..60.0),
        })
        .collect()
}

pub fn csv_text(temps: &[f64], rain: &[f64]) -> String {
    let mut out = String::from("date,temperature,precipitation,humidity\n");
    for (i, (t, r)) in temps.iter().zip(rain).enumerate() {
        out.push_str(&format!("{},{t},{r},60\n", day(i).format("%Y-%m-%d")));
    }
    out
}
