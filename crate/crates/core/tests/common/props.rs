//! Randomized invariants shared by the `properties` and `acceptance` targets.

#![allow(dead_code, clippy::needless_range_loop)]

use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

use symquiver_core::algebra::{build_component, functional_dimension_s, RelationSystem};
use symquiver_core::identities::{verify_link_identity, verify_unlink_identity};
use symquiver_core::{
    Conventions, MultiSeries, Multidegree, Quiver, Rational, TruncatedLaurent, VertexMonomial, Window,
};

pub const CASES: u32 = 128;

fn window() -> Window {
    Window::new(-6, 14).unwrap()
}

pub fn laurent() -> impl Strategy<Value = TruncatedLaurent> {
    prop::collection::vec((-3i64..6, -4i64..5), 0..5).prop_map(|terms| TruncatedLaurent::from_ints(terms, window()))
}

/// Series in two variables to degree 3 with small Laurent coefficients.
pub fn series(constant_one: bool, zero_constant: bool) -> impl Strategy<Value = MultiSeries> {
    prop::collection::vec(laurent(), 10).prop_map(move |coeffs| {
        let degrees = Multidegree::all_up_to(2, 3);
        let terms = degrees.into_iter().zip(coeffs).map(|(d, c)| {
            if d.is_zero() && constant_one {
                (d, TruncatedLaurent::one(window()))
            } else if d.is_zero() && zero_constant {
                (d, TruncatedLaurent::zero(window()))
            } else {
                (d, c)
            }
        });
        MultiSeries::from_terms(2, 3, window(), terms).unwrap()
    })
}

pub fn monomial() -> impl Strategy<Value = VertexMonomial> {
    ((0u32..3, 0u32..3), -2i64..3)
        .prop_filter("positive degree", |((a, b), _)| a + b > 0)
        .prop_map(|((a, b), qpow)| VertexMonomial::new(Multidegree(vec![a, b]), qpow))
}

/// Symmetric quivers with one to three vertices and entries below 3.
pub fn quiver(max_vertices: usize) -> impl Strategy<Value = Quiver> {
    (1..=max_vertices)
        .prop_flat_map(|n| prop::collection::vec(0u32..3, n * (n + 1) / 2).prop_map(move |upper| (n, upper)))
        .prop_map(|(n, upper)| {
            let mut m = vec![vec![0; n]; n];
            let mut it = upper.into_iter();
            for i in 0..n {
                for j in i..n {
                    let x = it.next().unwrap();
                    m[i][j] = x;
                    m[j][i] = x;
                }
            }
            let labels: Vec<String> = (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
            Quiver::new(labels, m).unwrap()
        })
}

fn run<S, F>(strategy: S, cases: u32, test: F) -> Result<(), String>
where
    S: Strategy,
    S::Value: std::fmt::Debug,
    F: Fn(S::Value) -> Result<(), TestCaseError>,
{
    let mut runner = TestRunner::new(Config { cases, failure_persistence: None, ..Config::default() });
    runner.run(&strategy, test).map_err(|e| e.to_string())
}

fn check(ok: bool, what: &str) -> Result<(), TestCaseError> {
    if ok {
        Ok(())
    } else {
        Err(TestCaseError::fail(what.to_string()))
    }
}

pub fn laurent_ring_axioms(cases: u32) -> Result<(), String> {
    run((laurent(), laurent(), laurent()), cases, |(a, b, c)| {
        let ab = a.mul(&b).unwrap();
        check(ab.eq_on_common(&b.mul(&a).unwrap()), "commutative")?;
        let left = ab.mul(&c).unwrap();
        let right = a.mul(&b.mul(&c).unwrap()).unwrap();
        check(left.eq_on_common(&right), "associative")?;
        let dist = a.mul(&b.add(&c)).unwrap();
        check(dist.eq_on_common(&ab.add(&a.mul(&c).unwrap())), "distributive")?;
        check(a.add(&a.neg()).is_zero(), "additive inverse")?;
        check(a.mul(&TruncatedLaurent::one(window())).unwrap().eq_on_common(&a), "unit")
    })
}

pub fn series_ring_axioms(cases: u32) -> Result<(), String> {
    run((series(false, false), series(false, false), series(false, false)), cases, |(f, g, h)| {
        let fg = f.mul(&g).unwrap();
        check(fg.eq_truncated(&g.mul(&f).unwrap()), "commutative")?;
        check(fg.mul(&h).unwrap().eq_truncated(&f.mul(&g.mul(&h).unwrap()).unwrap()), "associative")?;
        let dist = f.mul(&g.add(&h).unwrap()).unwrap();
        check(dist.eq_truncated(&fg.add(&f.mul(&h).unwrap()).unwrap()), "distributive")?;
        let one = MultiSeries::one(2, 3, window());
        check(f.mul(&one).unwrap().eq_truncated(&f), "unit")
    })
}

pub fn laurent_inverse(cases: u32) -> Result<(), String> {
    run(laurent().prop_filter("nonzero", |a| !a.is_zero()), cases, |a| {
        let inv = a.inverse().unwrap();
        let one = TruncatedLaurent::one(window());
        check(a.mul(&inv).unwrap().eq_on_common(&one), "a · a⁻¹ = 1")
    })
}

pub fn substitution_morphism(cases: u32) -> Result<(), String> {
    run((series(false, false), series(false, false), monomial(), monomial()), cases, |(f, g, m1, m2)| {
        let images = [m1, m2];
        let sub = |s: &MultiSeries| s.substitute(&images, 2).unwrap();
        let prod = sub(&f.mul(&g).unwrap());
        check(prod.eq_truncated(&sub(&f).mul(&sub(&g)).unwrap()), "multiplicative")?;
        check(sub(&f.add(&g).unwrap()).eq_truncated(&sub(&f).add(&sub(&g)).unwrap()), "additive")
    })
}

pub fn pleth_round_trips(cases: u32) -> Result<(), String> {
    run((series(false, true), series(true, false)), cases, |(f, s)| {
        let back = f.pleth_exp().unwrap().pleth_log().unwrap();
        check(back.eq_truncated(&f), "Log ∘ Exp = id")?;
        let again = s.pleth_log().unwrap().pleth_exp().unwrap();
        check(again.eq_truncated(&s), "Exp ∘ Log = id")?;
        let sum = f.add(&f).unwrap().pleth_exp().unwrap();
        let e = f.pleth_exp().unwrap();
        check(sum.eq_truncated(&e.mul(&e).unwrap()), "Exp(f + f) = Exp(f)²")
    })
}

pub fn adams_composition(cases: u32) -> Result<(), String> {
    run((series(false, false), 1u32..4, 1u32..4), cases, |(f, m, n)| {
        check(f.psi(n).psi(m).eq_truncated(&f.psi(m * n)), "ψ_m ψ_n = ψ_mn")
    })
}

pub fn relation_systems_agree(cases: u32) -> Result<(), String> {
    let inst = quiver(2).prop_flat_map(|q| {
        let n = q.len();
        (Just(q), prop::collection::vec(0u32..3, n), 0u32..6)
    });
    run(inst, cases, |(q, d, s)| {
        let d = Multidegree(d);
        if d.total() > 3 {
            return Ok(());
        }
        let ext = build_component(&q, &d, s, RelationSystem::Extended);
        let stated = build_component(&q, &d, s, RelationSystem::Stated);
        check(ext.rank() == stated.rank(), "extended and stated ranks")?;
        check(ext.dim() == functional_dimension_s(&q, &d, s), "rank and functional dimensions")
    })
}

pub fn quiver_transforms(cases: u32) -> Result<(), String> {
    let inst = quiver(3).prop_flat_map(|q| {
        let n = q.len();
        (Just(q), prop::collection::vec(0u32..3, n), prop::collection::vec(0u32..3, n))
    });
    run(inst, cases, |(q, d, e)| {
        let (d, e) = (Multidegree(d), Multidegree(e));
        check(q.euler_form(&d, &e).unwrap() == q.euler_form(&e, &d).unwrap(), "χ symmetric")?;
        if q.len() < 2 {
            return Ok(());
        }
        let linked = q.link("a", "b").unwrap();
        check(linked.m(0, 1) == q.m(0, 1) + 1, "link adds an arrow")?;
        let relinked = linked.unlink("a", "b").unwrap();
        let back = Quiver::from_json_str(&relinked.to_json_string()).unwrap();
        check(back == relinked, "file round trip")?;
        check(relinked.matrix().iter().flatten().all(|&x| x < 100), "entries stay small")
    })
}

/// The linking and unlinking identities on random two-vertex quivers.
pub fn identities_hold(cases: u32) -> Result<(), String> {
    let conv = Conventions::default();
    run(quiver(2).prop_filter("two vertices", |q| q.len() == 2), cases, |q| {
        let w = Window::new(-14, 24).unwrap();
        check(verify_link_identity(&q, "a", "b", 2, w, &conv).unwrap().pass, "linking identity")?;
        if q.m(0, 1) > 0 {
            check(verify_unlink_identity(&q, "a", "b", 2, w, &conv).unwrap().pass, "unlinking identity")?;
        }
        Ok(())
    })
}

pub fn rational(n: i64) -> Rational {
    Rational::from_integer(n.into())
}
