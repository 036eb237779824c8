//! Series identities for linking and unlinking: `A_Q` equals the transformed
//! quiver's series after a monomial substitution for the new variable.

use crate::error::{Error, Result};
use crate::laurent::Window;
use crate::motivic::motivic_series;
use crate::multidegree::{Multidegree, VertexMonomial};
use crate::quiver::Quiver;
use crate::report::{Conventions, VerificationReport};

/// Range of `t`-exponents scanned by the calibrate mode.
pub const CALIBRATION_RANGE: std::ops::RangeInclusive<i64> = -2..=2;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Transform {
    Link,
    Unlink,
}

impl Transform {
    pub fn name(self) -> &'static str {
        match self {
            Transform::Link => "linking",
            Transform::Unlink => "unlinking",
        }
    }

    pub fn apply(self, q: &Quiver, a: &str, b: &str) -> Result<Quiver> {
        match self {
            Transform::Link => q.link(a, b),
            Transform::Unlink => q.unlink(a, b),
        }
    }

    fn qpow(self, conv: &Conventions) -> i64 {
        match self {
            Transform::Link => conv.link_qpow,
            Transform::Unlink => conv.unlink_qpow,
        }
    }
}

fn substitution(q: &Quiver, a: &str, b: &str, qpow: i64) -> Result<VertexMonomial> {
    let i = q.index_of(a)?;
    let j = q.index_of(b)?;
    if i == j {
        return Err(Error::SameVertex(a.to_string()));
    }
    let exps = Multidegree::unit(q.len(), i).add(&Multidegree::unit(q.len(), j));
    Ok(VertexMonomial::new(exps, qpow))
}

/// Monomial substituted for `x_⋄`: `x_a x_b · t^{link_qpow}`.
pub fn link_substitution(q: &Quiver, a: &str, b: &str, conv: &Conventions) -> Result<VertexMonomial> {
    substitution(q, a, b, conv.link_qpow)
}

/// Monomial substituted for `x_★`: `x_a x_b · t^{unlink_qpow}`.
pub fn unlink_substitution(q: &Quiver, a: &str, b: &str, conv: &Conventions) -> Result<VertexMonomial> {
    substitution(q, a, b, conv.unlink_qpow)
}

#[allow(clippy::too_many_arguments)]
fn verify_with_qpow(
    transform: Transform,
    q: &Quiver,
    a: &str,
    b: &str,
    cap: u32,
    window: Window,
    qpow: i64,
    conv: &Conventions,
) -> Result<VerificationReport> {
    let transformed = transform.apply(q, a, b)?;
    let target = substitution(q, a, b, qpow)?;
    let lhs = motivic_series(q, cap, window)?;
    let rhs = motivic_series(&transformed, cap, window)?.substitute_variable(q.len(), &target)?;
    let mut report = VerificationReport::new(format!("{}-identity", transform.name()), conv)
        .param("vertices", [a, b])
        .param("order", cap)
        .param("window", window)
        .param("qpow", qpow);
    for m in lhs.compare(&rhs) {
        report.push(m);
    }
    Ok(report.finish())
}

/// Checks `A_Q = A_{Q^linked}|_{x_⋄ = x_a x_b t^{link_qpow}}` to order `cap`.
pub fn verify_link_identity(
    q: &Quiver,
    a: &str,
    b: &str,
    cap: u32,
    window: Window,
    conv: &Conventions,
) -> Result<VerificationReport> {
    verify_with_qpow(Transform::Link, q, a, b, cap, window, conv.link_qpow, conv)
}

/// Checks `A_Q = A_{Q^unlinked}|_{x_★ = x_a x_b t^{unlink_qpow}}` to order `cap`.
pub fn verify_unlink_identity(
    q: &Quiver,
    a: &str,
    b: &str,
    cap: u32,
    window: Window,
    conv: &Conventions,
) -> Result<VerificationReport> {
    verify_with_qpow(Transform::Unlink, q, a, b, cap, window, conv.unlink_qpow, conv)
}

/// Scans the substitution constant over [`CALIBRATION_RANGE`] and records
/// which values make the identity hold. The report passes when exactly the
/// configured constant does.
pub fn calibrate(
    transform: Transform,
    q: &Quiver,
    a: &str,
    b: &str,
    cap: u32,
    window: Window,
    conv: &Conventions,
) -> Result<VerificationReport> {
    let mut passing = Vec::new();
    let mut failing = Vec::new();
    for qpow in CALIBRATION_RANGE {
        let r = verify_with_qpow(transform, q, a, b, cap, window, qpow, conv)?;
        if r.pass {
            passing.push(qpow);
        } else {
            failing.push(qpow);
        }
    }
    let configured = transform.qpow(conv);
    let mut report = VerificationReport::new(format!("{}-calibration", transform.name()), conv)
        .param("vertices", [a, b])
        .param("order", cap)
        .param("window", window)
        .param("scanned_qpow", CALIBRATION_RANGE.collect::<Vec<_>>());
    report.detail("passing_qpow", &passing);
    report.detail("failing_qpow", &failing);
    if passing != [configured] {
        report.push(crate::report::Mismatch::note("passing substitution constants", &passing, [configured]));
    }
    Ok(report.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::fleet;

    fn w() -> Window {
        Window::new(-12, 24).unwrap()
    }

    #[test]
    fn substitution_constants() {
        let q = fleet::doubled_a2();
        let conv = Conventions::default();
        let u = unlink_substitution(&q, "a", "b", &conv).unwrap();
        assert_eq!((u.exponents.0.clone(), u.qpow), (vec![1, 1], 0));
        let l = link_substitution(&q, "a", "b", &conv).unwrap();
        assert_eq!((l.exponents.0.clone(), l.qpow), (vec![1, 1], 1));
        let printed = Conventions::printed();
        assert_eq!(unlink_substitution(&q, "a", "b", &printed).unwrap().qpow, -1);
        assert_eq!(link_substitution(&q, "a", "b", &printed).unwrap().qpow, 0);
    }

    #[test]
    fn doubled_a2_identities() {
        let q = fleet::doubled_a2();
        let conv = Conventions::default();
        assert!(verify_unlink_identity(&q, "a", "b", 4, w(), &conv).unwrap().pass);
        assert!(verify_link_identity(&q, "a", "b", 4, w(), &conv).unwrap().pass);
        let printed = Conventions::printed();
        let r = verify_link_identity(&q, "a", "b", 4, w(), &printed).unwrap();
        assert!(!r.pass);
        assert!(!verify_unlink_identity(&q, "a", "b", 4, w(), &printed).unwrap().pass);
    }

    #[test]
    fn order_zero_always_passes() {
        let conv = Conventions::printed();
        let q = fleet::mixed_three();
        assert!(verify_link_identity(&q, "b", "c", 0, w(), &conv).unwrap().pass);
        assert!(verify_unlink_identity(&q, "a", "c", 0, w(), &conv).unwrap().pass);
    }

    #[test]
    fn calibration_singles_out_constants() {
        let q = fleet::doubled_a2();
        let conv = Conventions::default();
        let r = calibrate(Transform::Link, &q, "a", "b", 3, w(), &conv).unwrap();
        assert!(r.pass, "{:?}", r.details);
        assert_eq!(r.details["passing_qpow"], serde_json::json!([1]));
        let r = calibrate(Transform::Unlink, &q, "a", "b", 3, w(), &conv).unwrap();
        assert_eq!(r.details["passing_qpow"], serde_json::json!([0]));
    }
}
