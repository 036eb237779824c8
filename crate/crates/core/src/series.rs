//! Truncated multivariate power series over [`TruncatedLaurent`] coefficients.
//!
//! Terms absent from a [`MultiSeries`] are exact zeros. Present terms carry
//! their own window, so a coefficient that vanishes only on its window is
//! kept around and still limits the precision of products.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::laurent::{Rational, TruncatedLaurent, Window};
use crate::multidegree::{Multidegree, VertexMonomial};

#[derive(Clone, Debug)]
pub struct MultiSeries {
    nvars: usize,
    cap: u32,
    window: Window,
    terms: BTreeMap<Multidegree, TruncatedLaurent>,
}

/// First disagreement found while comparing two series at one multidegree.
#[derive(Clone, Debug, Serialize)]
pub struct SeriesMismatch {
    pub degree: Multidegree,
    /// `None` when the two windows do not overlap at all.
    pub exponent: Option<i64>,
    pub lhs: TruncatedLaurent,
    pub rhs: TruncatedLaurent,
}

impl MultiSeries {
    pub fn zero(nvars: usize, cap: u32, window: Window) -> Self {
        MultiSeries { nvars, cap, window, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize, cap: u32, window: Window) -> Self {
        let mut s = Self::zero(nvars, cap, window);
        s.terms.insert(Multidegree::zero(nvars), TruncatedLaurent::one(window));
        s
    }

    /// Builds a series from explicit terms; degrees above `cap` are dropped.
    pub fn from_terms<I>(nvars: usize, cap: u32, window: Window, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Multidegree, TruncatedLaurent)>,
    {
        let mut s = Self::zero(nvars, cap, window);
        for (d, c) in terms {
            if d.len() != nvars {
                return Err(Error::LengthMismatch { expected: nvars, got: d.len() });
            }
            if d.total() <= cap {
                s.accumulate(d, c);
            }
        }
        Ok(s)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn window(&self) -> Window {
        self.window
    }

    /// Coefficient at `d`; `None` means an exact zero.
    pub fn coeff(&self, d: &Multidegree) -> Option<&TruncatedLaurent> {
        self.terms.get(d)
    }

    /// Coefficient at `d`, materializing exact zeros on the default window.
    pub fn coeff_or_zero(&self, d: &Multidegree) -> TruncatedLaurent {
        self.terms.get(d).cloned().unwrap_or_else(|| TruncatedLaurent::zero(self.window))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Multidegree, &TruncatedLaurent)> + '_ {
        self.terms.iter()
    }

    pub fn constant_term(&self) -> Option<&TruncatedLaurent> {
        self.terms.get(&Multidegree::zero(self.nvars))
    }

    fn accumulate(&mut self, d: Multidegree, c: TruncatedLaurent) {
        match self.terms.get_mut(&d) {
            Some(slot) => *slot = slot.add(&c),
            None => {
                self.terms.insert(d, c);
            }
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::LengthMismatch { expected: self.nvars, got: other.nvars });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let cap = self.cap.min(other.cap);
        let mut out = Self::zero(self.nvars, cap, self.window);
        for (d, c) in self.terms.iter().chain(other.terms.iter()) {
            if d.total() <= cap {
                out.accumulate(d.clone(), c.clone());
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| c.neg())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &Rational) -> Self {
        self.map_coeffs(|c| c.scale(s))
    }

    /// Applies `f` to every stored coefficient.
    pub fn map_coeffs<F>(&self, mut f: F) -> Self
    where
        F: FnMut(&TruncatedLaurent) -> TruncatedLaurent,
    {
        MultiSeries {
            nvars: self.nvars,
            cap: self.cap,
            window: self.window,
            terms: self.terms.iter().map(|(d, c)| (d.clone(), f(c))).collect(),
        }
    }

    /// Multiplies every coefficient by a fixed Laurent series.
    pub fn mul_laurent(&self, c: &TruncatedLaurent) -> Result<Self> {
        let mut out = Self::zero(self.nvars, self.cap, self.window);
        for (d, a) in &self.terms {
            out.terms.insert(d.clone(), a.mul(c)?);
        }
        Ok(out)
    }

    /// Truncated product to degree `min(cap_S, cap_T)`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let cap = self.cap.min(other.cap);
        let mut out = Self::zero(self.nvars, cap, self.window);
        for (da, ca) in &self.terms {
            let ta = da.total();
            if ta > cap {
                continue;
            }
            for (db, cb) in &other.terms {
                if ta + db.total() > cap {
                    continue;
                }
                out.accumulate(da.add(db), ca.mul(cb)?);
            }
        }
        Ok(out)
    }

    /// Lowers the degree cap.
    pub fn with_cap(&self, cap: u32) -> Self {
        let cap = cap.min(self.cap);
        MultiSeries {
            nvars: self.nvars,
            cap,
            window: self.window,
            terms: self.terms.iter().filter(|(d, _)| d.total() <= cap).map(|(d, c)| (d.clone(), c.clone())).collect(),
        }
    }

    /// Monomial substitution `x_v ↦ images[v]`, landing in `out_nvars`
    /// variables. Every image must have total degree at least one so that
    /// the degree cap stays sound.
    pub fn substitute(&self, images: &[VertexMonomial], out_nvars: usize) -> Result<Self> {
        if images.len() != self.nvars {
            return Err(Error::LengthMismatch { expected: self.nvars, got: images.len() });
        }
        for (v, m) in images.iter().enumerate() {
            if m.exponents.len() != out_nvars {
                return Err(Error::LengthMismatch { expected: out_nvars, got: m.exponents.len() });
            }
            if m.degree() == 0 {
                return Err(Error::DegreeZeroSubstitution { var: v });
            }
        }
        let mut out = Self::zero(out_nvars, self.cap, self.window);
        for (d, c) in &self.terms {
            let mut target = Multidegree::zero(out_nvars);
            let mut shift = 0i64;
            for (v, &k) in d.entries().iter().enumerate() {
                if k > 0 {
                    target = target.add(&images[v].exponents.scale(k));
                    shift += images[v].qpow * k as i64;
                }
            }
            if target.total() <= self.cap {
                out.accumulate(target, c.shift(shift));
            }
        }
        Ok(out)
    }

    /// Replaces `x_v` by `target` and removes the variable `v`; `target` is
    /// expressed over the remaining variables.
    pub fn substitute_variable(&self, v: usize, target: &VertexMonomial) -> Result<Self> {
        if v >= self.nvars {
            return Err(Error::Precondition(format!("variable {v} out of range")));
        }
        let out_nvars = self.nvars - 1;
        let images: Vec<VertexMonomial> = (0..self.nvars)
            .map(|u| match u.cmp(&v) {
                std::cmp::Ordering::Less => VertexMonomial::variable(out_nvars, u),
                std::cmp::Ordering::Equal => target.clone(),
                std::cmp::Ordering::Greater => VertexMonomial::variable(out_nvars, u - 1),
            })
            .collect();
        self.substitute(&images, out_nvars)
    }

    /// Adams operation `x^d t^j ↦ x^{nd} t^{nj}`.
    pub fn psi(&self, n: u32) -> Self {
        assert!(n >= 1, "psi index must be positive");
        let mut out = Self::zero(self.nvars, self.cap, self.window);
        for (d, c) in &self.terms {
            if d.total() * n <= self.cap {
                out.terms.insert(d.scale(n), c.psi(n));
            }
        }
        out
    }

    fn has_zero_constant_term(&self) -> bool {
        self.constant_term().is_none_or(|c| c.is_zero())
    }

    fn without_constant_term(&self) -> Self {
        let mut s = self.clone();
        s.terms.remove(&Multidegree::zero(self.nvars));
        s
    }

    /// `exp(g)` for `g` without constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.has_zero_constant_term() {
            return Err(Error::Precondition("exp requires zero constant term".into()));
        }
        let g = self.without_constant_term();
        let mut result = Self::one(self.nvars, self.cap, self.window);
        let mut term = g.clone();
        for k in 1..=self.cap {
            if k > 1 {
                term = term.mul(&g)?.scale(&Rational::new(1.into(), (k as i64).into()));
            }
            if term.terms.is_empty() {
                break;
            }
            result = result.add(&term)?;
        }
        Ok(result)
    }

    /// `log(S)` for `S` with constant term 1.
    pub fn log(&self) -> Result<Self> {
        self.require_unit_constant("log")?;
        let h = self.without_constant_term();
        let mut result = Self::zero(self.nvars, self.cap, self.window);
        let mut power = h.clone();
        for k in 1..=self.cap as i64 {
            if k > 1 {
                power = power.mul(&h)?;
            }
            if power.terms.is_empty() {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            result = result.add(&power.scale(&Rational::new(sign.into(), k.into())))?;
        }
        Ok(result)
    }

    fn require_unit_constant(&self, op: &str) -> Result<()> {
        let ok = self.constant_term().is_some_and(|c| c.terms().count() == 1 && c.coeff(0).is_some_and(|x| x.is_one()));
        if !ok {
            return Err(Error::Precondition(format!("{op} requires constant term 1")));
        }
        Ok(())
    }

    /// Plethystic exponential `Exp(f) = exp(Σ_{n≥1} ψ_n(f)/n)`.
    pub fn pleth_exp(&self) -> Result<Self> {
        if !self.has_zero_constant_term() {
            return Err(Error::Precondition("pleth_exp requires zero constant term".into()));
        }
        let f = self.without_constant_term();
        let mut sum = Self::zero(self.nvars, self.cap, self.window);
        for n in 1..=self.cap.max(1) {
            let p = f.psi(n);
            sum = sum.add(&p.scale(&Rational::new(1.into(), (n as i64).into())))?;
        }
        sum.exp()
    }

    /// Plethystic logarithm, `Log(S) = Σ_{n≥1} μ(n)/n · ψ_n(log S)`.
    pub fn pleth_log(&self) -> Result<Self> {
        self.require_unit_constant("pleth_log")?;
        let l = self.log()?;
        let mut out = Self::zero(self.nvars, self.cap, self.window);
        for n in 1..=self.cap.max(1) {
            let mu = mobius(n);
            if mu == 0 {
                continue;
            }
            let p = l.psi(n);
            out = out.add(&p.scale(&Rational::new(mu.into(), (n as i64).into())))?;
        }
        Ok(out)
    }

    /// All disagreements at degrees up to the smaller cap, compared on the
    /// common window of each pair of coefficients.
    pub fn compare(&self, other: &Self) -> Vec<SeriesMismatch> {
        let cap = self.cap.min(other.cap);
        let mut degrees: Vec<&Multidegree> =
            self.terms.keys().chain(other.terms.keys()).filter(|d| d.total() <= cap).collect();
        degrees.sort();
        degrees.dedup();
        let mut out = Vec::new();
        for d in degrees {
            let lhs = self.terms.get(d).cloned();
            let rhs = other.terms.get(d).cloned();
            let (lhs, rhs) = match (lhs, rhs) {
                (Some(l), Some(r)) => (l, r),
                (Some(l), None) => {
                    let z = TruncatedLaurent::zero(l.window());
                    (l, z)
                }
                (None, Some(r)) => (TruncatedLaurent::zero(r.window()), r),
                (None, None) => unreachable!(),
            };
            if lhs.window().intersect(&rhs.window()).is_none() {
                out.push(SeriesMismatch { degree: d.clone(), exponent: None, lhs, rhs });
            } else if let Some(e) = lhs.first_mismatch(&rhs) {
                out.push(SeriesMismatch { degree: d.clone(), exponent: Some(e), lhs, rhs });
            }
        }
        out
    }

    pub fn first_mismatch(&self, other: &Self) -> Option<SeriesMismatch> {
        self.compare(other).into_iter().next()
    }

    pub fn eq_truncated(&self, other: &Self) -> bool {
        self.compare(other).is_empty()
    }
}

impl fmt::Display for MultiSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (d, c) in &self.terms {
            writeln!(f, "x^{d}: {c}")?;
        }
        write!(f, "O(x^{})", self.cap + 1)
    }
}

pub(crate) fn mobius(n: u32) -> i64 {
    let mut n = n;
    let mut result = 1i64;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::rational;

    fn w() -> Window {
        Window::new(-10, 20).unwrap()
    }

    fn md(v: &[u32]) -> Multidegree {
        Multidegree(v.to_vec())
    }

    fn c(terms: &[(i64, i64)]) -> TruncatedLaurent {
        TruncatedLaurent::from_ints(terms.iter().copied(), w())
    }

    type Terms<'a> = [(&'a [u32], &'a [(i64, i64)])];

    fn series(nvars: usize, cap: u32, terms: &Terms) -> MultiSeries {
        MultiSeries::from_terms(nvars, cap, w(), terms.iter().map(|(d, t)| (md(d), c(t)))).unwrap()
    }

    #[test]
    fn unit_is_neutral() {
        let s = series(2, 3, &[(&[0, 0], &[(0, 1)]), (&[1, 0], &[(1, 2)]), (&[1, 2], &[(-1, 1)])]);
        let one = MultiSeries::one(2, 3, w());
        assert!(s.mul(&one).unwrap().eq_truncated(&s));
    }

    #[test]
    fn polynomial_product() {
        let a = series(2, 2, &[(&[0, 0], &[(0, 1)]), (&[1, 0], &[(0, 1)])]);
        let b = series(2, 2, &[(&[0, 0], &[(0, 1)]), (&[0, 1], &[(0, 1)])]);
        let expect =
            series(2, 2, &[(&[0, 0], &[(0, 1)]), (&[1, 0], &[(0, 1)]), (&[0, 1], &[(0, 1)]), (&[1, 1], &[(0, 1)])]);
        assert!(a.mul(&b).unwrap().eq_truncated(&expect));
    }

    #[test]
    fn cauchy_square_of_geometric() {
        let g = series(1, 3, &[(&[0], &[(0, 1)]), (&[1], &[(0, 1)]), (&[2], &[(0, 1)]), (&[3], &[(0, 1)])]);
        let sq = g.mul(&g).unwrap();
        for k in 0..=3u32 {
            assert_eq!(sq.coeff(&md(&[k])).unwrap().coeff(0).unwrap(), rational(k as i64 + 1));
        }
    }

    #[test]
    fn substitution_single_term() {
        // x_⋄ ↦ x_a x_b in x_⋄
        let s = series(3, 4, &[(&[0, 0, 1], &[(0, 1)])]);
        let target = VertexMonomial::new(md(&[1, 1]), 0);
        let out = s.substitute_variable(2, &target).unwrap();
        assert!(out.eq_truncated(&series(2, 4, &[(&[1, 1], &[(0, 1)])])));
    }

    #[test]
    fn substitution_shifts_t() {
        // x_★ ↦ q^{-1/2} x_a x_b in t·x_★^2
        let s = series(3, 4, &[(&[0, 0, 2], &[(1, 1)])]);
        let out = s.substitute_variable(2, &VertexMonomial::new(md(&[1, 1]), -1)).unwrap();
        assert!(out.eq_truncated(&series(2, 4, &[(&[2, 2], &[(-1, 1)])])));
    }

    #[test]
    fn substitution_is_linear() {
        let s = series(3, 4, &[(&[1, 0, 0], &[(0, 1)]), (&[0, 0, 1], &[(0, 1)])]);
        let out = s.substitute_variable(2, &VertexMonomial::new(md(&[1, 1]), 1)).unwrap();
        let expect = series(2, 4, &[(&[1, 0], &[(0, 1)]), (&[1, 1], &[(1, 1)])]);
        assert!(out.eq_truncated(&expect));
    }

    #[test]
    fn substitution_drops_overflowing_degrees() {
        let s = series(2, 3, &[(&[0, 2], &[(0, 1)])]);
        let out = s.substitute_variable(1, &VertexMonomial::new(md(&[2]), 0)).unwrap();
        assert!(out.terms().next().is_none());
    }

    #[test]
    fn degree_zero_substitution_rejected() {
        let s = series(2, 3, &[(&[0, 1], &[(0, 1)])]);
        let err = s.substitute_variable(1, &VertexMonomial::new(md(&[0]), 2)).unwrap_err();
        assert!(matches!(err, Error::DegreeZeroSubstitution { .. }));
    }

    #[test]
    fn psi_examples() {
        let s = series(2, 4, &[(&[1, 0], &[(0, 1)]), (&[0, 1], &[(-1, 1)])]);
        assert!(s.psi(1).eq_truncated(&s));
        let expect = series(2, 4, &[(&[2, 0], &[(0, 1)]), (&[0, 2], &[(-2, 1)])]);
        assert!(s.psi(2).eq_truncated(&expect));
        let one = series(1, 4, &[(&[1], &[(1, 1)])]);
        assert!(one.psi(2).eq_truncated(&series(1, 4, &[(&[2], &[(2, 1)])])));
    }

    #[test]
    fn exp_of_zero_is_one() {
        let z = MultiSeries::zero(2, 3, w());
        assert!(z.pleth_exp().unwrap().eq_truncated(&MultiSeries::one(2, 3, w())));
    }

    #[test]
    fn pleth_exp_of_variable_is_geometric() {
        // oracle: exp(Σ x^n / n) summed by the defining series, with
        // log(1/(1-x)) = Σ x^n/n, so Exp(x) = 1/(1-x).
        let x = series(1, 3, &[(&[1], &[(0, 1)])]);
        let e = x.pleth_exp().unwrap();
        let geo = series(1, 3, &[(&[0], &[(0, 1)]), (&[1], &[(0, 1)]), (&[2], &[(0, 1)]), (&[3], &[(0, 1)])]);
        assert!(e.eq_truncated(&geo), "{e}");
    }

    #[test]
    fn pleth_log_of_one_plus_x_round_trips() {
        let s = series(1, 3, &[(&[0], &[(0, 1)]), (&[1], &[(0, 1)])]);
        let l = s.pleth_log().unwrap();
        // Log(1+x) = x - x^2 + 0·x^3: 1 + x = (1 - x^2)/(1 - x)
        let expect = series(1, 3, &[(&[1], &[(0, 1)]), (&[2], &[(0, -1)])]);
        assert!(l.eq_truncated(&expect), "{l}");
        assert!(l.pleth_exp().unwrap().eq_truncated(&s));
    }

    #[test]
    fn pleth_preconditions() {
        let one = MultiSeries::one(1, 3, w());
        assert!(one.pleth_exp().is_err());
        let x = series(1, 3, &[(&[1], &[(0, 1)])]);
        assert!(x.pleth_log().is_err());
    }

    #[test]
    fn mobius_values() {
        let got: Vec<i64> = (1..=12).map(mobius).collect();
        assert_eq!(got, vec![1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]);
    }

    #[test]
    fn compare_reports_first_difference() {
        let a = series(1, 2, &[(&[1], &[(0, 1), (3, 2)])]);
        let b = series(1, 2, &[(&[1], &[(0, 1), (3, 5)])]);
        let m = a.first_mismatch(&b).unwrap();
        assert_eq!(m.degree, md(&[1]));
        assert_eq!(m.exponent, Some(3));
    }
}
