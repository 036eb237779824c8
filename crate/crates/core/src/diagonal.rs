//! Iterated unlinking down to a diagonal quiver, tracking for every new
//! vertex the monomial in the original variables that its variable stands
//! for.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::laurent::Window;
use crate::motivic::motivic_series;
use crate::multidegree::VertexMonomial;
use crate::quiver::Quiver;
use crate::report::{Conventions, VerificationReport};
use crate::series::MultiSeries;

/// One vertex of the diagonal quiver: its loop count and the monomial its
/// variable is replaced by.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Factor {
    pub label: String,
    pub loops: u32,
    pub monomial: VertexMonomial,
}

#[derive(Clone, Debug, Serialize)]
pub struct DiagonalizationResult {
    /// Requested number of rounds `n`.
    pub rounds: u32,
    /// Rounds in which at least one unlinking happened.
    pub rounds_performed: u32,
    pub factors: Vec<Factor>,
    /// New vertices discarded because their monomial has degree above `n`.
    pub pruned_count: usize,
    /// Arrows between distinct surviving vertices dropped at the end.
    pub forgotten_edges: u32,
    /// The final diagonal quiver, vertices in factor order.
    pub quiver: Quiver,
}

/// Runs `n` rounds of unlinking. Within a round, the pairs of vertices
/// present at the start of the round are visited in lexicographic index
/// order and each pair is unlinked until no arrow joins it. Vertices whose
/// monomial exceeds degree `n` are dropped on creation.
pub fn diagonalize(q: &Quiver, n: u32, conv: &Conventions) -> Result<DiagonalizationResult> {
    if n == 0 {
        return Err(Error::Precondition("diagonalization needs at least one round".into()));
    }
    let nvars = q.len();
    let mut current = q.clone();
    let mut monomials: Vec<VertexMonomial> = (0..nvars).map(|i| VertexMonomial::variable(nvars, i)).collect();
    let mut pruned = 0usize;
    let mut counter = 0usize;
    let mut rounds_performed = 0;
    for _ in 0..n {
        let start = current.len();
        let mut touched = false;
        for i in 0..start {
            for j in i + 1..start {
                while current.m(i, j) > 0 {
                    touched = true;
                    counter += 1;
                    let mono = monomials[i]
                        .mul(&monomials[j])
                        .mul(&VertexMonomial::new(crate::multidegree::Multidegree::zero(nvars), conv.unlink_qpow));
                    let label = format!("{}*{}#{counter}", current.vertices()[i], current.vertices()[j]);
                    let unlinked = current.unlink_at(i, j, label);
                    if mono.degree() > n {
                        pruned += 1;
                        current = drop_last(&unlinked);
                    } else {
                        current = unlinked;
                        monomials.push(mono);
                    }
                }
            }
        }
        if !touched {
            break;
        }
        rounds_performed += 1;
    }
    let forgotten: u32 = (0..current.len())
        .flat_map(|i| (i + 1..current.len()).map(move |j| (i, j)))
        .map(|(i, j)| current.m(i, j))
        .sum();
    let diagonal = current.forget_off_diagonal();
    let factors = (0..diagonal.len())
        .map(|i| Factor {
            label: diagonal.vertices()[i].clone(),
            loops: diagonal.loops(i),
            monomial: monomials[i].clone(),
        })
        .collect();
    Ok(DiagonalizationResult {
        rounds: n,
        rounds_performed,
        factors,
        pruned_count: pruned,
        forgotten_edges: forgotten,
        quiver: diagonal,
    })
}

fn drop_last(q: &Quiver) -> Quiver {
    let n = q.len() - 1;
    let vertices = q.vertices()[..n].to_vec();
    let matrix = q.matrix()[..n].iter().map(|row| row[..n].to_vec()).collect();
    Quiver::new(vertices, matrix).expect("principal submatrix of a valid quiver")
}

/// Product of one-vertex motivic series with each variable replaced by its
/// factor's monomial, truncated to degree `cap`.
pub fn factor_product(factors: &[Factor], nvars: usize, cap: u32, window: Window) -> Result<MultiSeries> {
    let mut acc = MultiSeries::one(nvars, cap, window);
    for f in factors {
        if f.monomial.degree() > cap {
            continue;
        }
        let single = motivic_series(&Quiver::one_vertex("x", f.loops), cap, window)?;
        let image = single.substitute(std::slice::from_ref(&f.monomial), nvars)?;
        acc = acc.mul(&image)?;
    }
    Ok(acc)
}

/// Compares `A_Q` with the factorized product through degree `n`.
pub fn verify_diagonalization(q: &Quiver, n: u32, window: Window, conv: &Conventions) -> Result<VerificationReport> {
    let result = diagonalize(q, n, conv)?;
    let lhs = motivic_series(q, n, window)?;
    let rhs = factor_product(&result.factors, q.len(), n, window)?;
    let mut report = VerificationReport::new("diagonalization", conv).param("order", n).param("window", window);
    report.detail("factors", &result.factors);
    report.detail("pruned_count", result.pruned_count);
    for m in lhs.compare(&rhs) {
        report.push(m);
    }
    Ok(report.finish())
}
