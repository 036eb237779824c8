//! Exact sparse linear algebra.
//!
//! [`Echelon`] keeps an integer row-echelon basis that grows one row at a
//! time. Elimination is fraction-free: a row is combined with a basis row as
//! `p·row − c·basis` and then divided by the gcd of its entries, so nothing
//! leaves `Z` and entries stay small.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::laurent::Rational;

/// Nonzero entries sorted by column.
pub type SparseRow = Vec<(usize, BigInt)>;

/// Builds a sparse row from unsorted entries, summing duplicates.
pub fn sparse_row<I: IntoIterator<Item = (usize, BigInt)>>(entries: I) -> SparseRow {
    let mut acc: BTreeMap<usize, BigInt> = BTreeMap::new();
    for (c, x) in entries {
        *acc.entry(c).or_insert_with(BigInt::zero) += x;
    }
    acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
}

fn primitive(mut row: SparseRow) -> SparseRow {
    let mut g = BigInt::zero();
    for (_, x) in &row {
        g = g.gcd(x);
        if g.is_one() {
            break;
        }
    }
    if row.first().is_some_and(|(_, x)| x.is_negative()) {
        g = -g;
    }
    if !g.is_one() && !g.is_zero() {
        for (_, x) in &mut row {
            *x = &*x / &g;
        }
    }
    row
}

/// `ca·a − cb·b`.
fn combine(a: &SparseRow, ca: &BigInt, b: &SparseRow, cb: &BigInt) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push((a[i].0, ca * &a[i].1));
            i += 1;
        } else if take_b {
            out.push((b[j].0, -(cb * &b[j].1)));
            j += 1;
        } else {
            let x = ca * &a[i].1 - cb * &b[j].1;
            if !x.is_zero() {
                out.push((a[i].0, x));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Incrementally built row-echelon basis over the integers.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    ncols: usize,
    rows: BTreeMap<usize, SparseRow>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon { ncols, rows: BTreeMap::new() }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ncols
    }

    /// Reduces `row` against the basis and keeps the remainder if nonzero.
    /// Returns whether the rank grew.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let mut row = row;
        loop {
            let Some(&(lead, ref x)) = row.first() else {
                return false;
            };
            debug_assert!(lead < self.ncols);
            match self.rows.get(&lead) {
                Some(basis) => {
                    let p = &basis[0].1;
                    let g = p.gcd(x);
                    let (ca, cb) = (p / &g, x / &g);
                    row = primitive(combine(&row, &ca, basis, &cb));
                }
                None => {
                    self.rows.insert(lead, primitive(row));
                    return true;
                }
            }
        }
    }

    /// Leading columns of the basis rows, ascending.
    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn non_pivots(&self) -> Vec<usize> {
        (0..self.ncols).filter(|c| !self.rows.contains_key(c)).collect()
    }

    /// The unique representative of `v` modulo the row space that vanishes
    /// on every pivot column.
    pub fn reduce(&self, mut v: BTreeMap<usize, Rational>) -> BTreeMap<usize, Rational> {
        let mut cursor = 0;
        loop {
            let next = v.range(cursor..).map(|(&k, _)| k).find(|k| self.rows.contains_key(k));
            let Some(p) = next else {
                break;
            };
            let row = &self.rows[&p];
            let factor = &v[&p] / Rational::from_integer(row[0].1.clone());
            for (c, x) in row {
                let slot = v.entry(*c).or_insert_with(Rational::zero);
                *slot -= &factor * Rational::from_integer(x.clone());
                if slot.is_zero() {
                    v.remove(c);
                }
            }
            cursor = p + 1;
        }
        v
    }
}

/// Clears denominators so a rational row can enter an [`Echelon`].
pub fn integer_row<'a, I>(entries: I) -> SparseRow
where
    I: IntoIterator<Item = (usize, &'a Rational)>,
{
    let entries: Vec<(usize, &Rational)> = entries.into_iter().filter(|(_, x)| !x.is_zero()).collect();
    let lcm = entries.iter().fold(BigInt::one(), |acc, (_, x)| acc.lcm(x.denom()));
    entries.into_iter().map(|(c, x)| (c, x.numer() * (&lcm / x.denom()))).collect()
}

/// Exact rank of a dense rational matrix.
pub fn rank(matrix: &[Vec<Rational>]) -> usize {
    let ncols = matrix.first().map_or(0, |r| r.len());
    let mut ech = Echelon::new(ncols);
    for row in matrix {
        ech.insert(integer_row(row.iter().enumerate()));
        if ech.is_full() {
            break;
        }
    }
    ech.rank()
}

/// Dense product `a · b`.
pub fn matmul(a: &[Vec<Rational>], b: &[Vec<Rational>], inner: usize, cols: usize) -> Vec<Vec<Rational>> {
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner).fold(
                        Rational::zero(),
                        |acc, k| {
                            if row[k].is_zero() {
                                acc
                            } else {
                                acc + &row[k] * &b[k][j]
                            }
                        },
                    )
                })
                .collect()
        })
        .collect()
}
