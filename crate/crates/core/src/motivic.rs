//! The motivic generating series
//! `A_Q = Σ_d (−q^{1/2})^{−χ(d,d)} x^d / ∏_i (q^{−1})_{d_i}`.

use crate::error::Result;
use crate::laurent::{pochhammer_inv, rational, TruncatedLaurent, Window};
use crate::multidegree::Multidegree;
use crate::quiver::Quiver;
use crate::series::MultiSeries;

/// Coefficient of `x^d` in `A_Q`, exact on `[.., window.hi]`.
pub fn motivic_coefficient(q: &Quiver, d: &Multidegree, window: Window) -> Result<TruncatedLaurent> {
    let window = Window::new(window.lo, window.hi)?;
    let chi = q.euler_form(d, d)?;
    // Each pochhammer factor is computed far enough that the product, shifted
    // by t^{-χ}, is exact up to window.hi.
    let vals: Vec<i64> = d.entries().iter().map(|&n| n as i64 * (n as i64 + 1)).collect();
    let total_val: i64 = vals.iter().sum();
    let target_hi = window.hi + chi;
    let mut acc: Option<TruncatedLaurent> = None;
    for (i, &n) in d.entries().iter().enumerate() {
        let hi_i = target_hi - (total_val - vals[i]);
        let lo_i = window.lo.min(vals[i]).min(hi_i);
        let factor = pochhammer_inv(n, Window { lo: lo_i, hi: hi_i })?;
        acc = Some(match acc {
            None => factor,
            Some(a) => a.mul(&factor)?,
        });
    }
    let acc = acc.unwrap_or_else(|| TruncatedLaurent::one(Window { lo: window.lo.min(0), hi: target_hi.max(0) }));
    let sign = if chi.rem_euclid(2) == 0 { rational(1) } else { rational(-1) };
    let shifted = acc.shift(-chi).truncate_above(window.hi);
    let out_window = Window { lo: window.lo, hi: shifted.hi() };
    Ok(TruncatedLaurent::from_coeffs(shifted.terms().map(|(e, c)| (e, c * &sign)), out_window))
}

/// `A_Q` truncated to total degree `cap`.
pub fn motivic_series(q: &Quiver, cap: u32, window: Window) -> Result<MultiSeries> {
    let window = Window::new(window.lo, window.hi)?;
    let terms = Multidegree::all_up_to(q.len(), cap)
        .into_iter()
        .map(|d| motivic_coefficient(q, &d, window).map(|c| (d, c)))
        .collect::<Result<Vec<_>>>()?;
    MultiSeries::from_terms(q.len(), cap, window, terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::fleet;

    fn w(lo: i64, hi: i64) -> Window {
        Window::new(lo, hi).unwrap()
    }

    #[test]
    fn empty_quiver_is_one() {
        let s = motivic_series(&Quiver::empty(), 4, w(-4, 10)).unwrap();
        assert!(s.eq_truncated(&MultiSeries::one(0, 4, w(-4, 10))));
    }

    #[test]
    fn loopless_vertex() {
        let c = motivic_coefficient(&fleet::one_loop(0), &Multidegree(vec![1]), w(-20, 40)).unwrap();
        assert_eq!(c.hi(), 40);
        for e in -20..=40 {
            let expect = if e > 0 && e % 2 == 1 { 1 } else { 0 };
            assert_eq!(c.coeff(e).unwrap(), rational(expect), "t^{e}");
        }
    }

    #[test]
    fn one_loop_vertex() {
        let c = motivic_coefficient(&fleet::one_loop(1), &Multidegree(vec![1]), w(-20, 40)).unwrap();
        for e in -20..=40 {
            let expect = if e > 0 && e % 2 == 0 { -1 } else { 0 };
            assert_eq!(c.coeff(e).unwrap(), rational(expect), "t^{e}");
        }
    }

    #[test]
    fn doubled_a2_mixed_degree() {
        // q^2/(1-q)^2 = Σ_{k≥1} k q^{k+1}
        let c = motivic_coefficient(&fleet::doubled_a2(), &Multidegree(vec![1, 1]), w(0, 20)).unwrap();
        for k in 0..=10i64 {
            let expect = if k >= 2 { k - 1 } else { 0 };
            assert_eq!(c.coeff(2 * k).unwrap(), rational(expect));
            assert_eq!(c.coeff(2 * k - 1).unwrap_or_default(), rational(0));
        }
    }

    #[test]
    fn window_above_support_gives_zero() {
        let c = motivic_coefficient(&fleet::one_loop(3), &Multidegree(vec![3]), w(-5, 10)).unwrap();
        assert!(c.is_zero());
        assert_eq!(c.hi(), 10);
    }
}
