use rayon::prelude::*;
use serde::Serialize;

use super::component::Algebra;
use super::{h_of, loop_weight, s_of};
use crate::error::{Error, Result};
use crate::laurent::{partition_counts, Rational, TruncatedLaurent, Window};
use crate::motivic::motivic_series;
use crate::multidegree::Multidegree;
use crate::quiver::Quiver;
use crate::report::{Conventions, Mismatch, VerificationReport};
use crate::series::MultiSeries;

/// Degree of the vanishing product `F_d`:
/// `Σ_i m_ii·C(d_i, 2) + Σ_{i<j} m_ij d_i d_j`.
pub fn vanishing_degree(q: &Quiver, d: &Multidegree) -> u64 {
    let e = d.entries();
    let mut deg = 0u64;
    for i in 0..e.len() {
        let n = e[i] as u64;
        deg += q.loops(i) as u64 * n * n.saturating_sub(1) / 2;
        for j in i + 1..e.len() {
            deg += q.m(i, j) as u64 * n * e[j] as u64;
        }
    }
    deg
}

/// Dimension of `(d, s)` from the functional realization: the coefficient
/// of `t^{s − deg F_d}` in `∏_i ∏_{r=1}^{d_i} 1/(1 − t^r)`.
pub fn functional_dimension_s(q: &Quiver, d: &Multidegree, s: u32) -> usize {
    let deg = vanishing_degree(q, d);
    if (s as u64) < deg {
        return 0;
    }
    let target = (s as u64 - deg) as usize;
    let parts: Vec<u32> = d.entries().iter().flat_map(|&n| 1..=n).collect();
    let counts = partition_counts(&parts, target);
    usize::try_from(&counts[target]).expect("dimension fits in usize")
}

/// [`functional_dimension_s`] indexed by homological degree.
pub fn functional_dimension(q: &Quiver, d: &Multidegree, h: i64) -> usize {
    s_of(q, d, h).map_or(0, |s| functional_dimension_s(q, d, s))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimensionRow {
    pub d: Vec<u32>,
    pub h: i64,
    #[serde(skip)]
    pub s: u32,
    pub dim_rank: usize,
    pub dim_functional: usize,
}

/// Both dimensions for every `|d| ≤ bound` and `s ≤ smax`, ordered by
/// `(d, s)`.
pub fn dimension_table(alg: &Algebra, bound: u32, smax: u32) -> Vec<DimensionRow> {
    let q = alg.quiver();
    let keys: Vec<(Multidegree, u32)> = Multidegree::all_up_to(q.len(), bound)
        .into_iter()
        .flat_map(|d| (0..=smax).map(move |s| (d.clone(), s)))
        .collect();
    keys.into_par_iter()
        .map(|(d, s)| DimensionRow {
            h: h_of(q, &d, s),
            dim_rank: alg.component(&d, s).dim(),
            dim_functional: functional_dimension_s(q, &d, s),
            d: d.0,
            s,
        })
        .collect()
}

/// Rank dimension against the functional formula over a range.
pub fn oracle_check(q: &Quiver, bound: u32, smax: u32, conv: &Conventions) -> VerificationReport {
    let alg = Algebra::new(q);
    let mut report = VerificationReport::new("dimension-oracle", conv).param("bound", bound).param("smax", smax);
    let rows = dimension_table(&alg, bound, smax);
    report.detail("components", rows.len());
    for r in rows {
        if r.dim_rank != r.dim_functional {
            report.push(Mismatch::dims(&r.d, r.h, None, r.dim_rank, r.dim_functional));
        }
    }
    report.finish()
}

/// `P(𝒜_Q, q^{1/2}x, q) = Σ_{d,h} dim 𝒜_{Q,d}^h (−t)^{−h} t^{|d|} x^d`,
/// from the functional dimensions.
pub fn poincare_series(q: &Quiver, order: u32, window: Window) -> Result<MultiSeries> {
    let window = Window::new(window.lo, window.hi)?;
    let mut terms = Vec::new();
    for d in Multidegree::all_up_to(q.len(), order) {
        let md = loop_weight(q, &d);
        let base = d.total() as i64 + md;
        let sign = if md % 2 == 0 { 1 } else { -1 };
        let mut coeffs = Vec::new();
        let mut s = 0u32;
        while base + 2 * s as i64 <= window.hi {
            let dim = functional_dimension_s(q, &d, s);
            if dim != 0 {
                coeffs.push((base + 2 * s as i64, Rational::from_integer((sign * dim as i64).into())));
            }
            s += 1;
        }
        terms.push((d, TruncatedLaurent::from_coeffs(coeffs, window)));
    }
    MultiSeries::from_terms(q.len(), order, window, terms)
}

/// Compares the Poincaré series of `𝒜_Q` with `A_Q` through order `order`.
pub fn poincare_check(q: &Quiver, order: u32, window: Window, conv: &Conventions) -> Result<VerificationReport> {
    let lhs = motivic_series(q, order, window)?;
    let rhs = poincare_series(q, order, window)?;
    let mut report = VerificationReport::new("poincare", conv).param("order", order).param("window", window);
    for m in lhs.compare(&rhs) {
        report.push(m);
    }
    Ok(report.finish())
}

/// `dim 𝒜_{Q,d}^h = Σ_c dim 𝒜_{Q^linked,d′}^h` where `d′` runs over the
/// multidegrees `d − c(α_a + α_b) + c·α_⋄` collapsing to `d`.
///
/// Both sides use the functional formula; with `validate_rank` each
/// dimension is also recomputed by exact rank.
pub fn gr_linking_check(
    q: &Quiver,
    a: &str,
    b: &str,
    bound: u32,
    smax: u32,
    validate_rank: bool,
    conv: &Conventions,
) -> Result<VerificationReport> {
    let ia = q.index_of(a)?;
    let ib = q.index_of(b)?;
    if ia == ib {
        return Err(Error::SameVertex(a.to_string()));
    }
    let linked = q.link(a, b)?;
    let (alg, alg_linked) = (Algebra::new(q), Algebra::new(&linked));
    let mut report =
        VerificationReport::new("gr-linking", conv).param("vertices", [a, b]).param("bound", bound).param("smax", smax);
    let mut checked = 0usize;
    for d in Multidegree::all_up_to(q.len(), bound) {
        for s in 0..=smax {
            let h = h_of(q, &d, s);
            let lhs = functional_dimension(q, &d, h);
            let mut rhs = 0;
            for c in 0..=d.entries()[ia].min(d.entries()[ib]) {
                let mut e = d.entries().to_vec();
                e[ia] -= c;
                e[ib] -= c;
                e.push(c);
                let dl = Multidegree(e);
                let f = functional_dimension(&linked, &dl, h);
                if validate_rank {
                    let r = alg_linked.dimension(&dl, h);
                    if r != f {
                        report.push(Mismatch::dims(&dl.0, h, Some(c), r, f));
                    }
                }
                rhs += f;
            }
            if validate_rank {
                let r = alg.dimension(&d, h);
                if r != lhs {
                    report.push(Mismatch::dims(&d.0, h, None, r, lhs));
                }
            }
            if lhs != rhs {
                report.push(Mismatch::dims(&d.0, h, None, lhs, rhs));
            }
            checked += 1;
        }
    }
    report.detail("components", checked);
    report.detail("validated_by_rank", validate_rank);
    Ok(report.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::fleet;

    #[test]
    fn functional_small_cases() {
        let q = fleet::one_loop(2);
        let d2 = Multidegree(vec![2]);
        let seq: Vec<usize> = (0..5).map(|s| functional_dimension_s(&q, &d2, s)).collect();
        assert_eq!(seq, vec![0, 0, 1, 1, 2]);
        for k in 0..6 {
            assert_eq!(functional_dimension(&q, &Multidegree(vec![1]), -2 * k - 2), 1);
        }
        assert_eq!(functional_dimension(&q, &Multidegree(vec![1]), -3), 0);
        assert_eq!(functional_dimension(&fleet::doubled_a2(), &Multidegree(vec![0, 0]), 0), 1);
    }

    #[test]
    fn oracle_on_small_fleet() {
        let conv = Conventions::default();
        for q in [fleet::one_loop(1), fleet::one_loop(2), fleet::doubled_a2()] {
            let r = oracle_check(&q, 3, 6, &conv);
            assert!(r.pass, "{q}: {:?}", r.mismatches);
        }
    }

    #[test]
    fn table_rows_are_ordered() {
        let alg = Algebra::new(&fleet::one_loop(2));
        let rows = dimension_table(&alg, 2, 4);
        let d2: Vec<usize> = rows.iter().filter(|r| r.d == [2]).map(|r| r.dim_rank).collect();
        assert_eq!(d2, vec![0, 0, 1, 1, 2]);
        let v = serde_json::to_value(&rows[0]).unwrap();
        assert_eq!(v, serde_json::json!({"d": [0], "h": 0, "dim_rank": 1, "dim_functional": 1}));
    }

    #[test]
    fn poincare_one_loop() {
        let w = Window::new(-10, 20).unwrap();
        let p = poincare_series(&fleet::one_loop(1), 2, w).unwrap();
        let c = p.coeff(&Multidegree(vec![1])).unwrap();
        for e in 0..=20 {
            let expect = if e >= 2 && e % 2 == 0 { -1 } else { 0 };
            assert_eq!(c.coeff(e).unwrap_or_default(), Rational::from_integer(expect.into()), "t^{e}");
        }
        assert!(poincare_check(&fleet::one_loop(1), 2, w, &Conventions::default()).unwrap().pass);
    }

    #[test]
    fn poincare_empty_and_doubled_a2() {
        let w = Window::new(-10, 24).unwrap();
        let conv = Conventions::default();
        assert!(poincare_check(&Quiver::empty(), 3, w, &conv).unwrap().pass);
        assert!(poincare_check(&fleet::doubled_a2(), 3, w, &conv).unwrap().pass);
    }

    #[test]
    fn gr_doubled_a2() {
        let conv = Conventions::default();
        let r = gr_linking_check(&fleet::doubled_a2(), "a", "b", 2, 5, true, &conv).unwrap();
        assert!(r.pass, "{:?}", r.mismatches);
        assert!(gr_linking_check(&fleet::one_loop(1), "a", "a", 2, 3, false, &conv).is_err());
    }
}
