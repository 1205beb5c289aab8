use num_traits::Signed;
use serde::Serialize;

use crate::arith::{rat, serde_rational, Rational};
use crate::dims::FormKind;
use crate::error::{Error, Result};
use crate::multiplicity::{MultiplicitySeries, ParityClass};

/// Exact slope of a multiplicity series compared with `c` times its degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SlopeReport {
    pub rep: String,
    pub kind: FormKind,
    pub parity_class: ParityClass,
    pub period: u64,
    pub window: (i64, i64),
    #[serde(with = "serde_rational")]
    pub slope: Rational,
    #[serde(with = "serde_rational")]
    pub target: Rational,
    pub exact_match: bool,
    /// `max |mult_k / (k deg) - c|` over the window.
    #[serde(with = "serde_rational")]
    pub max_deviation: Rational,
}

/// `[k0, k0 + 3P]`, with `k0` the first weight `>= 4` in the parity class.
pub fn slope_window(parity_class: ParityClass, period: u64) -> (i64, i64) {
    let k0 = (4..).find(|&k| parity_class.contains(k)).unwrap();
    (k0, k0 + 3 * period as i64)
}

fn window_weights(series: &MultiplicitySeries, lo: i64, hi: i64) -> impl Iterator<Item = i64> + '_ {
    (lo..=hi).filter(|&k| series.parity_class.contains(k))
}

fn fetch(series: &MultiplicitySeries, k: i64, have: i64, need: i64) -> Result<i64> {
    series
        .get(k)
        .map(|v| v as i64)
        .ok_or(Error::WindowTooSmall { need, have })
}

/// Reads the slope off stride-`period` differences, which must be constant
/// across the window.
pub fn detect_slope(series: &MultiplicitySeries, period: u64, c: &Rational) -> Result<SlopeReport> {
    let (lo, hi) = slope_window(series.parity_class, period);
    let have = series.entries.keys().next_back().copied().unwrap_or(0);
    let p = period as i64;
    let mut diff = None;
    for k in window_weights(series, lo, hi - p) {
        let d = fetch(series, k + p, have, hi)? - fetch(series, k, have, hi)?;
        match diff {
            None => diff = Some(d),
            Some(d0) if d0 == d => {}
            Some(_) => return Err(Error::NotQuasiLinear { rep: series.rep.clone(), period }),
        }
    }
    let slope = rat(diff.unwrap_or(0), p);
    let deg = rat(series.aggregate_degree() as i64, 1);
    let target = c * &deg;
    let mut max_deviation = rat(0, 1);
    for k in window_weights(series, lo, hi) {
        let v = fetch(series, k, have, hi)?;
        let dev = (rat(v, k) / &deg - c).abs();
        if dev > max_deviation {
            max_deviation = dev;
        }
    }
    Ok(SlopeReport {
        rep: series.rep.clone(),
        kind: series.kind,
        parity_class: series.parity_class,
        period,
        window: (lo, hi),
        exact_match: slope == target,
        slope,
        target,
        max_deviation,
    })
}

/// Behaviour of `b_k = mult_k - c deg k` beyond the window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TailReport {
    /// `b_k` over the window.
    #[serde(with = "serde_rational")]
    pub offset_min: Rational,
    #[serde(with = "serde_rational")]
    pub offset_max: Rational,
    /// `b_k = b_{k-P}` for every in-class weight up to the maximum.
    pub periodic: bool,
    /// `mult_k / k >= c deg + offset_min / k` everywhere: the liminf bound
    /// with an explicit error term.
    pub liminf_bound_holds: bool,
    /// `k |mult_k / (k deg) - c| <= max |b| / deg` everywhere.
    pub deviation_bound_holds: bool,
}

pub fn check_tail(series: &MultiplicitySeries, report: &SlopeReport, c: &Rational) -> TailReport {
    let target = c * rat(series.aggregate_degree() as i64, 1);
    let (lo, hi) = report.window;
    let offset = |k: i64| series.get(k).map(|v| rat(v as i64, 1) - &target * rat(k, 1));
    let window: Vec<Rational> = window_weights(series, lo, hi).filter_map(offset).collect();
    let offset_min = window.iter().min().cloned().unwrap_or_else(|| rat(0, 1));
    let offset_max = window.iter().max().cloned().unwrap_or_else(|| rat(0, 1));
    let bound = if offset_min.abs() > offset_max.abs() { offset_min.abs() } else { offset_max.abs() };
    let p = report.period as i64;
    let mut periodic = true;
    let mut liminf = true;
    let mut deviation = true;
    for (&k, _) in series.entries.range(lo..) {
        if !series.parity_class.contains(k) {
            continue;
        }
        let b = offset(k).unwrap();
        if k - p >= lo {
            if let Some(prev) = offset(k - p) {
                periodic &= prev == b;
            }
        }
        liminf &= b >= offset_min;
        deviation &= b.abs() <= bound;
    }
    TailReport { offset_min, offset_max, periodic, liminf_bound_holds: liminf, deviation_bound_holds: deviation }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    fn series(parity_class: ParityClass, f: impl Fn(i64) -> u64, kmax: i64) -> MultiplicitySeries {
        MultiplicitySeries {
            rep: "r".into(),
            kind: FormKind::M,
            parity_class,
            members: 1,
            degree_each: 1,
            entries: (2..=kmax)
                .map(|k| (k, if parity_class.contains(k) { f(k) } else { 0 }))
                .collect::<BTreeMap<_, _>>(),
        }
    }

    #[test]
    fn gamma0_5_trivial_series() {
        let s = series(ParityClass::Even, |k| 2 * (k as u64 / 4) + 1, 100);
        let r = detect_slope(&s, 12, &rat(1, 2)).unwrap();
        assert_eq!(r.slope, rat(1, 2));
        assert!(r.exact_match);
        assert_eq!(r.window, (4, 40));
        let t = check_tail(&s, &r, &rat(1, 2));
        assert!(t.periodic && t.liminf_bound_holds && t.deviation_bound_holds);
    }

    #[test]
    fn odd_parity_window_starts_at_five() {
        assert_eq!(slope_window(ParityClass::Odd, 12), (5, 41));
        assert_eq!(slope_window(ParityClass::All, 12), (4, 40));
    }

    #[test]
    fn window_guard() {
        let s = series(ParityClass::Even, |k| k as u64, 10);
        assert!(matches!(detect_slope(&s, 12, &rat(1, 2)), Err(Error::WindowTooSmall { need: 40, have: 10 })));
    }

    #[test]
    fn non_quasi_linear_sequences_are_flagged() {
        let s = series(ParityClass::All, |k| (k * k) as u64, 60);
        assert!(matches!(detect_slope(&s, 12, &rat(1, 2)), Err(Error::NotQuasiLinear { .. })));
    }

    #[test]
    fn mismatched_slope_is_not_exact() {
        let s = series(ParityClass::Even, |k| k as u64, 60);
        let r = detect_slope(&s, 12, &rat(1, 2)).unwrap();
        assert_eq!(r.slope, rat(1, 1));
        assert!(!r.exact_match);
    }

    #[test]
    fn tail_catches_late_breaks() {
        let s = series(ParityClass::Even, |k| if k == 90 { 100 } else { k as u64 / 2 }, 100);
        let r = detect_slope(&s, 12, &rat(1, 2)).unwrap();
        assert!(r.exact_match);
        let t = check_tail(&s, &r, &rat(1, 2));
        assert!(!t.periodic && !t.deviation_bound_holds);
    }
}
