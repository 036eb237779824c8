use std::sync::Arc;

use num_traits::Zero;
use serde::Serialize;

use super::component::{falling, Algebra, AlgebraComponent};
use super::h_of;
use super::monomial::{Generator, SuperMonomial};
use crate::error::{Error, Result};
use crate::laurent::Rational;
use crate::linalg::{matmul, rank};
use crate::multidegree::Multidegree;
use crate::quiver::Quiver;
use crate::report::{Conventions, Mismatch, VerificationReport};

/// `𝒜_{Q^unlinked}` with the odd derivation
/// `∂e_{★,k} = Σ_{a′+b′−p=k} [b′]_p e_{a,a′} e_{b,b′}`, `p = m_ab − 1`.
///
/// Chains are graded by a collapsed multidegree `d` of `Q` (α_★ counted as
/// α_a + α_b), the invariant degree `H = h + c` and the number `c` of
/// ★-generators; ∂ lowers `c` by one.
#[derive(Debug)]
pub struct UnlinkComplex {
    quiver: Quiver,
    unlinked: Quiver,
    a: usize,
    b: usize,
    p: u32,
    base: Algebra,
    algebra: Algebra,
}

impl UnlinkComplex {
    pub fn new(q: &Quiver, a: &str, b: &str) -> Result<Self> {
        let ia = q.index_of(a)?;
        let ib = q.index_of(b)?;
        if ia == ib {
            return Err(Error::SameVertex(a.to_string()));
        }
        let unlinked = q.unlink(a, b)?;
        Ok(UnlinkComplex {
            p: q.m(ia, ib) - 1,
            base: Algebra::new(q),
            algebra: Algebra::new(&unlinked),
            quiver: q.clone(),
            unlinked,
            a: ia,
            b: ib,
        })
    }

    pub fn unlinked(&self) -> &Quiver {
        &self.unlinked
    }

    /// The original algebra `𝒜_Q`.
    pub fn base(&self) -> &Algebra {
        &self.base
    }

    fn star(&self) -> usize {
        self.quiver.len()
    }

    /// Largest `c` with a nonempty chain group over `d`.
    pub fn max_c(&self, d: &Multidegree) -> u32 {
        d.entries()[self.a].min(d.entries()[self.b])
    }

    /// Multidegree of `Q^unlinked` for the `c`-th chain group over `d`.
    pub fn chain_degree(&self, d: &Multidegree, c: u32) -> Option<Multidegree> {
        if c > self.max_c(d) {
            return None;
        }
        let mut e = d.entries().to_vec();
        e[self.a] -= c;
        e[self.b] -= c;
        e.push(c);
        Some(Multidegree(e))
    }

    /// `C_c` over `(d, H)`, or `None` when it is zero for degree reasons.
    pub fn chain(&self, d: &Multidegree, big_h: i64, c: u32) -> Option<Arc<AlgebraComponent>> {
        let dc = self.chain_degree(d, c)?;
        self.algebra.component_at(&dc, big_h - c as i64)
    }

    /// `∂` of a single monomial, unnormalized sum of terms.
    pub fn differentiate(&self, m: &SuperMonomial) -> Vec<(SuperMonomial, Rational)> {
        let odd = self.algebra.odd();
        let gens = m.generators();
        let mut out = Vec::new();
        let mut prefix_odd = false;
        for (j, g) in gens.iter().enumerate() {
            if g.vertex == self.star() {
                let total = g.k + self.p;
                for a1 in 0..=total {
                    let b1 = total - a1;
                    let coef = falling(b1, self.p);
                    if coef.is_zero() {
                        continue;
                    }
                    let mut prod = gens[..j].to_vec();
                    prod.push(Generator::new(self.a, a1));
                    prod.push(Generator::new(self.b, b1));
                    prod.extend_from_slice(&gens[j + 1..]);
                    if let Some((sign, mono)) = SuperMonomial::normalize(prod, odd) {
                        let sign = if prefix_odd { -sign } else { sign };
                        out.push((mono, Rational::from_integer(coef * sign)));
                    }
                }
            }
            prefix_odd ^= odd[g.vertex];
        }
        out
    }

    /// Matrix of `∂: C_c → C_{c−1}` in the quotient bases.
    pub fn block(&self, d: &Multidegree, big_h: i64, c: u32) -> DifferentialBlock {
        let source = self.chain(d, big_h, c);
        let target = if c == 0 { None } else { self.chain(d, big_h, c - 1) };
        let source_dim = source.as_ref().map_or(0, |s| s.dim());
        let target_dim = target.as_ref().map_or(0, |t| t.dim());
        let mut matrix = vec![vec![Rational::zero(); source_dim]; target_dim];
        if let (Some(src), Some(tgt)) = (&source, &target) {
            for (col, &mi) in src.quotient_basis.iter().enumerate() {
                let image = tgt.reduce_monomials(self.differentiate(&src.monomials[mi]));
                for (row, x) in image.into_iter().enumerate() {
                    matrix[row][col] = x;
                }
            }
        }
        DifferentialBlock { d: d.0.clone(), big_h, c, source_dim, target_dim, matrix }
    }
}

/// `∂` from the `c`-slice to the `(c−1)`-slice over `(d, H)`.
#[derive(Clone, Debug, Serialize)]
pub struct DifferentialBlock {
    pub d: Vec<u32>,
    #[serde(rename = "H")]
    pub big_h: i64,
    pub c: u32,
    pub source_dim: usize,
    pub target_dim: usize,
    /// `target_dim × source_dim`; column `j` is the image of the `j`-th
    /// source basis vector.
    #[serde(skip)]
    pub matrix: Vec<Vec<Rational>>,
}

impl DifferentialBlock {
    pub fn rank(&self) -> usize {
        rank(&self.matrix)
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.iter().flatten().all(|x| x.is_zero())
    }

    /// `self ∘ inner`, where `inner` maps into this block's source.
    pub fn compose(&self, inner: &DifferentialBlock) -> Vec<Vec<Rational>> {
        matmul(&self.matrix, &inner.matrix, self.source_dim, inner.source_dim)
    }
}

/// Single block of the unlinking differential for `Q`, `a`, `b`.
pub fn unlink_differential(
    q: &Quiver,
    a: &str,
    b: &str,
    d: &Multidegree,
    big_h: i64,
    c: u32,
) -> Result<DifferentialBlock> {
    Ok(UnlinkComplex::new(q, a, b)?.block(d, big_h, c))
}

/// For every collapsed `|d| ≤ bound` and `s ≤ smax` (with `H` the degree of
/// `(d, s)` in `𝒜_Q`): `∂² = 0`, `dim H_0 = dim 𝒜_{Q,d}^H` and
/// `H_c = 0` for `c ≥ 1`.
pub fn homology_check(
    q: &Quiver,
    a: &str,
    b: &str,
    bound: u32,
    smax: u32,
    conv: &Conventions,
) -> Result<VerificationReport> {
    let complex = UnlinkComplex::new(q, a, b)?;
    let mut report =
        VerificationReport::new("homology", conv).param("vertices", [a, b]).param("bound", bound).param("smax", smax);
    let (mut blocks, mut compositions) = (0usize, 0usize);
    for d in Multidegree::all_up_to(q.len(), bound) {
        for s in 0..=smax {
            let big_h = h_of(q, &d, s);
            let cmax = complex.max_c(&d);
            let chain: Vec<DifferentialBlock> = (0..=cmax + 1).map(|c| complex.block(&d, big_h, c)).collect();
            blocks += cmax as usize;
            let ranks: Vec<usize> = chain.iter().map(|b| b.rank()).collect();
            for c in 2..=cmax as usize {
                compositions += 1;
                let comp = chain[c - 1].compose(&chain[c]);
                if comp.iter().flatten().any(|x| !x.is_zero()) {
                    report.push(Mismatch::dims(&d.0, big_h, Some(c as u32), "nonzero d∘d", "zero"));
                }
            }
            for c in 0..=cmax as usize {
                let dim = complex.chain(&d, big_h, c as u32).map_or(0, |x| x.dim());
                let homology = dim as i64 - ranks[c] as i64 - ranks[c + 1] as i64;
                let expect = if c == 0 { complex.base().dimension(&d, big_h) as i64 } else { 0 };
                if homology != expect {
                    report.push(Mismatch::dims(&d.0, big_h, Some(c as u32), homology, expect));
                }
            }
        }
    }
    report.detail("blocks", blocks);
    report.detail("compositions", compositions);
    Ok(report.finish())
}
