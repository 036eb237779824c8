//! DT invariants by plethystic logarithm.
//!
//! Normalization: `Ω := −(t − t^{−1}) · Log(A)` with `t = q^{1/2}`, reported
//! in the variable `u = −t`. With it the loopless vertex has `Ω_1 = 1` and the
//! `m`-loop vertex has `Ω_1 = u^m`.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::Result;
use crate::laurent::{format_rational, Rational, TruncatedLaurent, Window};
use crate::multidegree::Multidegree;
use crate::report::{Conventions, Location, Mismatch, VerificationReport};
use crate::series::MultiSeries;

/// Consecutive zero coefficients required at each window edge before a
/// coefficient is declared a Laurent polynomial.
pub const GUARD_BAND: i64 = 5;

#[derive(Clone, Debug, Serialize)]
pub struct DtEntry {
    pub degree: Multidegree,
    /// Coefficients keyed by the exponent of `u = −q^{1/2}`.
    #[serde(serialize_with = "rational_map")]
    pub omega: BTreeMap<i64, Rational>,
    /// `t`-window on which `Ω_d` was computed.
    pub window: Window,
    pub stable: bool,
    pub integral: bool,
}

fn rational_map<S: serde::Serializer>(m: &BTreeMap<i64, Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_map(m.iter().map(|(k, c)| (k.to_string(), format_rational(c))))
}

impl DtEntry {
    pub fn positive(&self) -> bool {
        self.integral && self.omega.values().all(|c| !c.is_negative())
    }

    pub fn is_zero(&self) -> bool {
        self.omega.is_empty()
    }

    /// `Ω_d` back in the `t` variable.
    pub fn as_t_series(&self) -> TruncatedLaurent {
        let terms = self.omega.iter().map(|(&k, c)| (k, if k % 2 == 0 { c.clone() } else { -c }));
        TruncatedLaurent::from_coeffs(terms, self.window)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DtResult {
    pub nvars: usize,
    pub cap: u32,
    pub entries: Vec<DtEntry>,
}

impl DtResult {
    pub fn get(&self, d: &[u32]) -> Option<&DtEntry> {
        self.entries.iter().find(|e| e.degree.entries() == d)
    }

    pub fn all_stable(&self) -> bool {
        self.entries.iter().all(|e| e.stable)
    }

    /// Sign-flipped copy, used to exercise the positivity check.
    pub fn negated(&self) -> DtResult {
        let mut out = self.clone();
        for e in &mut out.entries {
            for c in e.omega.values_mut() {
                *c = -c.clone();
            }
        }
        out
    }

    /// Report rows `{"degree", "omega", "stable", "positive"}`.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.entries
                .iter()
                .map(|e| {
                    let omega: BTreeMap<String, String> =
                        e.omega.iter().map(|(k, c)| (k.to_string(), format_rational(c))).collect();
                    json!({
                        "degree": e.degree.entries(),
                        "omega": omega,
                        "stable": e.stable,
                        "positive": e.positive(),
                    })
                })
                .collect(),
        )
    }

    /// `Exp(−Ω/(t − t^{−1}))`, which should give back the original series.
    pub fn reconstruct(&self, window: Window) -> Result<MultiSeries> {
        let mut terms = Vec::new();
        for e in &self.entries {
            if e.is_zero() {
                continue;
            }
            let omega = e.as_t_series();
            // −1/(t − t^{−1}) = t + t^3 + t^5 + …
            let hi = omega.hi() - omega.valuation() + 2;
            let geo = TruncatedLaurent::from_ints(
                (0..).map(|j| 2 * j + 1).take_while(|&x| x <= hi).map(|x| (x, 1)),
                Window { lo: 1.min(hi), hi },
            );
            terms.push((e.degree.clone(), omega.mul(&geo)?));
        }
        MultiSeries::from_terms(self.nvars, self.cap, window, terms)?.pleth_exp()
    }
}

fn stabilized(c: &TruncatedLaurent) -> bool {
    let (lo, hi) = (c.lo(), c.hi());
    if hi - lo + 1 < 2 * GUARD_BAND {
        return false;
    }
    let zero = Rational::zero();
    let edge_clear =
        |range: std::ops::RangeInclusive<i64>| range.into_iter().all(|e| c.coeff(e).is_some_and(|x| x == zero));
    edge_clear(lo..=lo + GUARD_BAND - 1) && edge_clear(hi - GUARD_BAND + 1..=hi)
}

/// `Ω_d` for every nonzero `d` up to the cap of `a`.
pub fn dt_extract(a: &MultiSeries) -> Result<DtResult> {
    let log = a.pleth_log()?;
    let mut entries = Vec::new();
    for d in Multidegree::all_up_to(a.nvars(), a.cap()) {
        if d.is_zero() {
            continue;
        }
        let entry = match log.coeff(&d) {
            None => DtEntry { degree: d, omega: BTreeMap::new(), window: a.window(), stable: true, integral: true },
            Some(l) => {
                // t^{-1} − t, carried far enough not to limit the product
                let hi = (l.hi() - l.valuation() + 1).max(1);
                let factor = TruncatedLaurent::from_ints([(-1, 1), (1, -1)], Window { lo: -1, hi });
                let omega_t = l.mul(&factor)?;
                let omega: BTreeMap<i64, Rational> =
                    omega_t.terms().map(|(k, c)| (k, if k % 2 == 0 { c.clone() } else { -c })).collect();
                let integral = omega.values().all(|c| c.is_integer());
                DtEntry { degree: d, window: omega_t.window(), stable: stabilized(&omega_t), integral, omega }
            }
        };
        entries.push(entry);
    }
    Ok(DtResult { nvars: a.nvars(), cap: a.cap(), entries })
}

/// Certifies that every coefficient is a nonnegative integer in `u`.
pub fn dt_check(omega: &DtResult, conv: &Conventions) -> VerificationReport {
    let mut report = VerificationReport::new("dt-positivity", conv).param("order", omega.cap);
    for e in &omega.entries {
        if !e.stable {
            report.push(Mismatch::note(format!("degree {} not stabilized", e.degree), e.window, "stable"));
        }
        for (&k, c) in &e.omega {
            if !c.is_integer() || c.is_negative() {
                report.push(Mismatch {
                    at: Location::Degree { degree: e.degree.0.clone(), exponent: Some(k) },
                    lhs: json!(format_rational(c)),
                    rhs: json!("nonnegative integer"),
                });
            }
        }
    }
    report.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::rational;
    use crate::motivic::motivic_series;
    use crate::quiver::{fleet, Quiver};

    fn w() -> Window {
        Window::new(-20, 60).unwrap()
    }

    fn omega_of(q: &Quiver, cap: u32) -> DtResult {
        dt_extract(&motivic_series(q, cap, w()).unwrap()).unwrap()
    }

    fn mono(k: i64) -> BTreeMap<i64, Rational> {
        BTreeMap::from([(k, rational(1))])
    }

    #[test]
    fn loopless_vertex() {
        let om = omega_of(&fleet::one_loop(0), 5);
        assert_eq!(om.get(&[1]).unwrap().omega, mono(0));
        for d in 2..=5 {
            let e = om.get(&[d]).unwrap();
            assert!(e.is_zero() && e.stable, "d={d}: {:?}", e.omega);
        }
    }

    #[test]
    fn one_loop_vertex() {
        let om = omega_of(&fleet::one_loop(1), 5);
        assert_eq!(om.get(&[1]).unwrap().omega, mono(1));
        for d in 2..=5 {
            assert!(om.get(&[d]).unwrap().is_zero());
        }
        assert!(om.all_stable());
    }

    #[test]
    fn doubled_a2() {
        let om = omega_of(&fleet::doubled_a2(), 3);
        for e in &om.entries {
            let expect = match e.degree.entries() {
                [1, 0] | [0, 1] => mono(0),
                [1, 1] => mono(1),
                _ => BTreeMap::new(),
            };
            assert_eq!(e.omega, expect, "degree {}", e.degree);
            assert!(e.stable);
        }
    }

    #[test]
    fn positivity_for_two_loops() {
        let conv = Conventions::default();
        let om = omega_of(&fleet::one_loop(2), 3);
        assert_eq!(om.get(&[1]).unwrap().omega, mono(2));
        assert!(dt_check(&om, &conv).pass);
        let bad = dt_check(&om.negated(), &conv);
        assert!(!bad.pass);
        assert!(matches!(bad.mismatches[0].at, Location::Degree { ref degree, exponent: Some(2) } if degree == &[1]));
    }

    #[test]
    fn empty_quiver_passes() {
        let om = omega_of(&Quiver::empty(), 3);
        assert!(om.entries.is_empty());
        assert!(dt_check(&om, &Conventions::default()).pass);
    }

    #[test]
    fn narrow_window_is_flagged() {
        let a = motivic_series(&fleet::one_loop(3), 3, Window::new(-2, 6).unwrap()).unwrap();
        let om = dt_extract(&a).unwrap();
        assert!(!om.all_stable());
        assert!(!dt_check(&om, &Conventions::default()).pass);
    }

    #[test]
    fn round_trip_reconstructs_series() {
        for q in [fleet::one_loop(2), fleet::doubled_a2(), fleet::mixed_three()] {
            let a = motivic_series(&q, 3, w()).unwrap();
            let om = dt_extract(&a).unwrap();
            let back = om.reconstruct(w()).unwrap();
            assert!(a.eq_truncated(&back), "{q}: {:?}", a.first_mismatch(&back));
        }
    }

    #[test]
    fn non_unit_constant_rejected() {
        let a = motivic_series(&fleet::one_loop(0), 2, w()).unwrap().scale(&rational(2));
        assert!(dt_extract(&a).is_err());
    }
}
