//! Windowed Laurent series in `t = q^{1/2}` with exact rational coefficients.
//!
//! A [`TruncatedLaurent`] stores the coefficients of a series on a window
//! `[lo, hi]` of `t`-exponents. Every series handled by this crate lives in
//! `Q((t))`, and `lo` doubles as a certified lower bound on its support:
//! no operation ever drops a term below `lo`. The upper edge is a genuine
//! precision bound, and coefficients above `hi` are unknown. Each operation
//! computes the largest upper edge it can guarantee from the windows and
//! valuations of its inputs.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Closed range of `t`-exponents.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Window {
    pub lo: i64,
    pub hi: i64,
}

impl Window {
    pub fn new(lo: i64, hi: i64) -> Result<Self> {
        if lo > hi {
            return Err(Error::EmptyWindow { lo, hi });
        }
        Ok(Window { lo, hi })
    }

    pub fn contains(&self, e: i64) -> bool {
        self.lo <= e && e <= self.hi
    }

    /// Common range of two windows, if any.
    pub fn intersect(&self, other: &Window) -> Option<Window> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        (lo <= hi).then_some(Window { lo, hi })
    }
}

#[derive(Clone, Debug)]
pub struct TruncatedLaurent {
    coeffs: BTreeMap<i64, Rational>,
    lo: i64,
    hi: i64,
}

impl TruncatedLaurent {
    pub fn zero(window: Window) -> Self {
        TruncatedLaurent { coeffs: BTreeMap::new(), lo: window.lo, hi: window.hi }
    }

    pub fn one(window: Window) -> Self {
        Self::monomial(0, Rational::one(), window)
    }

    pub fn monomial(exp: i64, coeff: Rational, window: Window) -> Self {
        Self::from_coeffs([(exp, coeff)], window)
    }

    /// Builds a series from `(exponent, coefficient)` pairs. Terms above the
    /// window are discarded; the lower edge is lowered when a term sits below
    /// it so that the support bound stays valid.
    pub fn from_coeffs<I>(terms: I, window: Window) -> Self
    where
        I: IntoIterator<Item = (i64, Rational)>,
    {
        let mut coeffs: BTreeMap<i64, Rational> = BTreeMap::new();
        for (e, c) in terms {
            if e > window.hi || c.is_zero() {
                continue;
            }
            let slot = coeffs.entry(e).or_insert_with(Rational::zero);
            *slot += c;
        }
        coeffs.retain(|_, c| !c.is_zero());
        let lo = coeffs.keys().next().map_or(window.lo, |&e| e.min(window.lo));
        TruncatedLaurent { coeffs, lo, hi: window.hi }
    }

    /// Integer-coefficient convenience constructor, mostly for tests.
    pub fn from_ints<I>(terms: I, window: Window) -> Self
    where
        I: IntoIterator<Item = (i64, i64)>,
    {
        Self::from_coeffs(terms.into_iter().map(|(e, c)| (e, Rational::from_integer(c.into()))), window)
    }

    pub fn window(&self) -> Window {
        Window { lo: self.lo, hi: self.hi }
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.hi
    }

    /// Coefficient of `t^e`, or `None` when `e` lies outside the window.
    pub fn coeff(&self, e: i64) -> Option<Rational> {
        if !self.window().contains(e) {
            return None;
        }
        Some(self.coeffs.get(&e).cloned().unwrap_or_else(Rational::zero))
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> + '_ {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    /// Lowest exponent with a nonzero coefficient, or `hi + 1` when the
    /// series vanishes on its whole window.
    pub fn valuation(&self) -> i64 {
        self.coeffs.keys().next().copied().unwrap_or(self.hi + 1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn neg(&self) -> Self {
        TruncatedLaurent { coeffs: self.coeffs.iter().map(|(&e, c)| (e, -c)).collect(), lo: self.lo, hi: self.hi }
    }

    pub fn add(&self, other: &Self) -> Self {
        let hi = self.hi.min(other.hi);
        let lo = self.lo.min(other.lo);
        let mut coeffs = BTreeMap::new();
        for (&e, c) in self.coeffs.range(..=hi) {
            coeffs.insert(e, c.clone());
        }
        for (&e, c) in other.coeffs.range(..=hi) {
            let slot = coeffs.entry(e).or_insert_with(Rational::zero);
            *slot += c;
        }
        coeffs.retain(|_, c: &mut Rational| !c.is_zero());
        TruncatedLaurent { coeffs, lo, hi }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return Self::zero(self.window());
        }
        TruncatedLaurent { coeffs: self.coeffs.iter().map(|(&e, c)| (e, c * s)).collect(), lo: self.lo, hi: self.hi }
    }

    /// Multiplication by `t^j`.
    pub fn shift(&self, j: i64) -> Self {
        TruncatedLaurent {
            coeffs: self.coeffs.iter().map(|(&e, c)| (e + j, c.clone())).collect(),
            lo: self.lo + j,
            hi: self.hi + j,
        }
    }

    /// Exact product. The result is certified up to
    /// `min(hi_a + val_b, hi_b + val_a)`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let lo = self.lo + other.lo;
        let hi = (self.hi + other.valuation()).min(other.hi + self.valuation());
        if hi < lo {
            return Err(Error::TruncationUnderflow { op: "laurent_mul" });
        }
        let mut coeffs: BTreeMap<i64, Rational> = BTreeMap::new();
        for (&ea, ca) in &self.coeffs {
            for (&eb, cb) in &other.coeffs {
                let e = ea + eb;
                if e > hi {
                    break;
                }
                let slot = coeffs.entry(e).or_insert_with(Rational::zero);
                *slot += ca * cb;
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        Ok(TruncatedLaurent { coeffs, lo, hi })
    }

    /// Multiplicative inverse, expanded as a geometric series against the
    /// lowest nonzero term.
    pub fn inverse(&self) -> Result<Self> {
        let Some((&v, lead)) = self.coeffs.iter().next() else {
            return Err(Error::NotInvertible {
                reason: format!("series vanishes on its window [{}, {}]", self.lo, self.hi),
            });
        };
        // relative precision of a / t^v
        let rel = (self.hi - v) as usize;
        let inv_lead = lead.recip();
        let mut out: Vec<Rational> = Vec::with_capacity(rel + 1);
        out.push(inv_lead.clone());
        for n in 1..=rel {
            let mut acc = Rational::zero();
            for (&e, c) in self.coeffs.range(v + 1..=v + n as i64) {
                let k = (e - v) as usize;
                acc += c * &out[n - k];
            }
            out.push(-acc * &inv_lead);
        }
        let window = Window { lo: -v, hi: self.hi - 2 * v };
        Ok(Self::from_coeffs(out.into_iter().enumerate().map(|(i, c)| (i as i64 - v, c)), window))
    }

    /// Adams operation `t ↦ t^n`.
    pub fn psi(&self, n: u32) -> Self {
        let n = n as i64;
        TruncatedLaurent {
            coeffs: self.coeffs.iter().map(|(&e, c)| (e * n, c.clone())).collect(),
            lo: self.lo * n,
            hi: self.hi * n + (n - 1),
        }
    }

    /// Lowers the upper edge to `hi` (no-op if already lower).
    pub fn truncate_above(&self, hi: i64) -> Self {
        if hi >= self.hi {
            return self.clone();
        }
        let lo = self.lo.min(hi);
        TruncatedLaurent { coeffs: self.coeffs.range(..=hi).map(|(&e, c)| (e, c.clone())).collect(), lo, hi }
    }

    /// First exponent in the common window where the coefficients differ.
    pub fn first_mismatch(&self, other: &Self) -> Option<i64> {
        let common = self.window().intersect(&other.window())?;
        let zero = Rational::zero();
        let mut exps: Vec<i64> = self
            .coeffs
            .range(common.lo..=common.hi)
            .chain(other.coeffs.range(common.lo..=common.hi))
            .map(|(&e, _)| e)
            .collect();
        exps.sort_unstable();
        exps.dedup();
        exps.into_iter().find(|e| self.coeffs.get(e).unwrap_or(&zero) != other.coeffs.get(e).unwrap_or(&zero))
    }

    /// Equality on the intersection of the two windows.
    pub fn eq_on_common(&self, other: &Self) -> bool {
        self.first_mismatch(other).is_none()
    }

    /// Coefficients rendered as exact strings, keyed by exponent.
    pub fn to_string_map(&self) -> BTreeMap<i64, String> {
        self.coeffs.iter().map(|(&e, c)| (e, format_rational(c))).collect()
    }
}

/// `p/q` or `p` for integers.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rational(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

impl fmt::Display for TruncatedLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (&e, c) in &self.coeffs {
            let (sign, abs) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let unit = abs.is_one();
            match (unit, e) {
                (_, 0) => write!(f, "{}", format_rational(&abs))?,
                (true, 1) => write!(f, "t")?,
                (true, _) => write!(f, "t^{e}")?,
                (false, 1) => write!(f, "{}*t", format_rational(&abs))?,
                (false, _) => write!(f, "{}*t^{e}", format_rational(&abs))?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(t^{})", self.hi + 1)
    }
}

impl Serialize for TruncatedLaurent {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let coeffs: BTreeMap<String, String> =
            self.coeffs.iter().map(|(e, c)| (e.to_string(), format_rational(c))).collect();
        let mut st = serializer.serialize_struct("TruncatedLaurent", 3)?;
        st.serialize_field("lo", &self.lo)?;
        st.serialize_field("hi", &self.hi)?;
        st.serialize_field("coeffs", &coeffs)?;
        st.end()
    }
}

/// Partition-style product `∏_{r ∈ parts} 1/(1 - y^r)`, coefficients of
/// `y^0..=y^max`.
pub(crate) fn partition_counts(parts: &[u32], max: usize) -> Vec<BigInt> {
    let mut dp = vec![BigInt::zero(); max + 1];
    dp[0] = BigInt::one();
    for &r in parts {
        let r = r as usize;
        for x in r..=max {
            let prev = dp[x - r].clone();
            dp[x] += prev;
        }
    }
    dp
}

/// Expansion of `1/(q^{-1})_n = ∏_{k=1}^n 1/(1 - q^{-k})` in nonnegative
/// powers of `q`, i.e. `(-1)^n q^{n(n+1)/2} / (q)_n`.
pub fn pochhammer_inv(n: u32, window: Window) -> Result<TruncatedLaurent> {
    let window = Window::new(window.lo, window.hi)?;
    let sign: i64 = if n.is_multiple_of(2) { 1 } else { -1 };
    let shift = (n as i64) * (n as i64 + 1);
    if shift > window.hi {
        return Ok(TruncatedLaurent::zero(window));
    }
    // q-degree budget above the leading term
    let budget = ((window.hi - shift) / 2) as usize;
    let parts: Vec<u32> = (1..=n).collect();
    let counts = partition_counts(&parts, budget);
    let terms = counts.into_iter().enumerate().map(|(m, c)| (shift + 2 * m as i64, Rational::from_integer(c * sign)));
    Ok(TruncatedLaurent::from_coeffs(terms, window))
}
