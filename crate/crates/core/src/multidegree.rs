use std::fmt;

use serde::{Deserialize, Serialize};

/// Dimension vector indexed by an ordered vertex set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Multidegree(pub Vec<u32>);

impl Multidegree {
    pub fn zero(n: usize) -> Self {
        Multidegree(vec![0; n])
    }

    /// The basis vector `α_i`.
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        Multidegree(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn add(&self, other: &Self) -> Self {
        Multidegree(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise difference, `None` if any entry would go negative.
    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        self.0.iter().zip(&other.0).map(|(a, b)| a.checked_sub(*b)).collect::<Option<Vec<_>>>().map(Multidegree)
    }

    pub fn scale(&self, n: u32) -> Self {
        Multidegree(self.0.iter().map(|x| x * n).collect())
    }

    /// All multidegrees of length `n` with total degree at most `cap`,
    /// in lexicographic order.
    pub fn all_up_to(n: usize, cap: u32) -> Vec<Multidegree> {
        fn rec(n: usize, budget: u32, cur: &mut Vec<u32>, out: &mut Vec<Multidegree>) {
            if cur.len() == n {
                out.push(Multidegree(cur.clone()));
                return;
            }
            for x in 0..=budget {
                cur.push(x);
                rec(n, budget - x, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, cap, &mut Vec::with_capacity(n), &mut out);
        out
    }
}

impl From<Vec<u32>> for Multidegree {
    fn from(v: Vec<u32>) -> Self {
        Multidegree(v)
    }
}

impl fmt::Display for Multidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// A monomial `x^e · q^{j/2}`; `qpow` is the `t`-exponent `j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VertexMonomial {
    pub exponents: Multidegree,
    pub qpow: i64,
}

impl VertexMonomial {
    pub fn new(exponents: Multidegree, qpow: i64) -> Self {
        VertexMonomial { exponents, qpow }
    }

    /// The plain variable `x_i`.
    pub fn variable(n: usize, i: usize) -> Self {
        VertexMonomial { exponents: Multidegree::unit(n, i), qpow: 0 }
    }

    pub fn degree(&self) -> u32 {
        self.exponents.total()
    }

    pub fn mul(&self, other: &Self) -> Self {
        VertexMonomial { exponents: self.exponents.add(&other.exponents), qpow: self.qpow + other.qpow }
    }
}

impl fmt::Display for VertexMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x^{}", self.exponents)?;
        if self.qpow != 0 {
            write!(f, "·t^{}", self.qpow)?;
        }
        Ok(())
    }
}
