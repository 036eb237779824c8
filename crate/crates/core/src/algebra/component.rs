use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use super::monomial::{component_basis, odd_vertices, Generator, SuperMonomial};
use super::{h_of, s_of};
use crate::laurent::Rational;
use crate::linalg::{sparse_row, Echelon};
use crate::multidegree::Multidegree;
use crate::quiver::Quiver;

/// Which generating set of the quadratic relations to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum RelationSystem {
    /// `d^p e_i · d^q e_j` for `i ≤ j`, `p + q < m_ij`.
    Extended,
    /// `e_i · d^p e_j` for all ordered `(i, j)`, `p < m_ij`.
    Stated,
}

/// One graded piece `𝒜_{Q,d}^h`.
#[derive(Debug)]
pub struct AlgebraComponent {
    pub d: Multidegree,
    pub s: u32,
    pub h: i64,
    pub monomials: Vec<SuperMonomial>,
    index: HashMap<SuperMonomial, usize>,
    echelon: Echelon,
    /// Positions in `monomials` of the non-pivot columns.
    pub quotient_basis: Vec<usize>,
    /// Relation rows generated (before elimination).
    pub relation_count: usize,
}

impl AlgebraComponent {
    pub fn dim(&self) -> usize {
        self.quotient_basis.len()
    }

    pub fn rank(&self) -> usize {
        self.echelon.rank()
    }

    pub fn index_of(&self, m: &SuperMonomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// The reduced relation rows, one per pivot.
    pub fn echelon(&self) -> &Echelon {
        &self.echelon
    }

    /// Coordinates in the quotient basis of a vector given on monomials.
    pub fn reduce(&self, v: BTreeMap<usize, Rational>) -> Vec<Rational> {
        let r = self.echelon.reduce(v);
        self.quotient_basis.iter().map(|c| r.get(c).cloned().unwrap_or_else(Rational::zero)).collect()
    }

    /// Same as [`reduce`](Self::reduce) for a combination of monomials.
    pub fn reduce_monomials<I>(&self, terms: I) -> Vec<Rational>
    where
        I: IntoIterator<Item = (SuperMonomial, Rational)>,
    {
        let mut v: BTreeMap<usize, Rational> = BTreeMap::new();
        for (m, c) in terms {
            let i = self.index[&m];
            let slot = v.entry(i).or_insert_with(Rational::zero);
            *slot += c;
        }
        v.retain(|_, c| !c.is_zero());
        self.reduce(v)
    }
}

/// `a(a−1)…(a−p+1)`.
pub(crate) fn falling(a: u32, p: u32) -> BigInt {
    if a < p {
        return BigInt::zero();
    }
    (0..p).fold(BigInt::from(1), |acc, r| acc * (a - r))
}

/// Pairs `(i, j, p, q)` indexing the relation series of the chosen system.
fn relation_series(q: &Quiver, system: RelationSystem) -> Vec<(usize, usize, u32, u32)> {
    let n = q.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let m = q.m(i, j);
            match system {
                RelationSystem::Extended if i <= j => {
                    for p in 0..m {
                        for r in 0..m - p {
                            out.push((i, j, p, r));
                        }
                    }
                }
                RelationSystem::Stated => out.extend((0..m).map(|p| (i, j, 0, p))),
                _ => {}
            }
        }
    }
    out
}

/// Builds the component `(d, s)` from scratch.
pub fn build_component(q: &Quiver, d: &Multidegree, s: u32, system: RelationSystem) -> AlgebraComponent {
    let odd = odd_vertices(q);
    let monomials = component_basis(q, d, s);
    let index: HashMap<SuperMonomial, usize> = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let mut echelon = Echelon::new(monomials.len());
    let mut relation_count = 0;
    let mut complements: HashMap<(Multidegree, u32), Vec<SuperMonomial>> = HashMap::new();
    'series: for (i, j, p, r) in relation_series(q, system) {
        let pair = Multidegree::unit(q.len(), i).add(&Multidegree::unit(q.len(), j));
        let Some(rest) = d.checked_sub(&pair) else {
            continue;
        };
        if s < p + r {
            continue;
        }
        for n in 0..=s - p - r {
            let comp = complements
                .entry((rest.clone(), s - n - p - r))
                .or_insert_with(|| component_basis(q, &rest, s - n - p - r));
            // coefficient of z^n in d^p e_i(z) · d^r e_j(z)
            let terms: Vec<(Generator, Generator, BigInt)> = (p..=n + p)
                .map(|a| {
                    let b = n + p + r - a;
                    (Generator::new(i, a), Generator::new(j, b), falling(a, p) * falling(b, r))
                })
                .filter(|(_, _, c)| !c.is_zero())
                .collect();
            for m in comp.iter() {
                let mut entries = Vec::with_capacity(terms.len());
                for (ga, gb, c) in &terms {
                    let mut gens = vec![*ga, *gb];
                    gens.extend_from_slice(m.generators());
                    if let Some((sign, mono)) = SuperMonomial::normalize(gens, &odd) {
                        entries.push((index[&mono], c * sign));
                    }
                }
                relation_count += 1;
                echelon.insert(sparse_row(entries));
                if echelon.is_full() {
                    break 'series;
                }
            }
        }
    }
    let quotient_basis = echelon.non_pivots();
    AlgebraComponent { d: d.clone(), s, h: h_of(q, d, s), monomials, index, echelon, quotient_basis, relation_count }
}

type Slot = Arc<OnceLock<Arc<AlgebraComponent>>>;

/// `𝒜_Q` with a shared cache of components. Each component is built at
/// most once even under concurrent access.
#[derive(Debug)]
pub struct Algebra {
    quiver: Quiver,
    system: RelationSystem,
    odd: Vec<bool>,
    cache: Mutex<HashMap<(Multidegree, u32), Slot>>,
}

impl Algebra {
    pub fn new(q: &Quiver) -> Self {
        Algebra::with_system(q, RelationSystem::Extended)
    }

    pub fn with_system(q: &Quiver, system: RelationSystem) -> Self {
        Algebra { quiver: q.clone(), system, odd: odd_vertices(q), cache: Mutex::new(HashMap::new()) }
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn system(&self) -> RelationSystem {
        self.system
    }

    pub(crate) fn odd(&self) -> &[bool] {
        &self.odd
    }

    pub fn component(&self, d: &Multidegree, s: u32) -> Arc<AlgebraComponent> {
        let slot = {
            let mut cache = self.cache.lock().expect("component cache poisoned");
            cache.entry((d.clone(), s)).or_default().clone()
        };
        slot.get_or_init(|| Arc::new(build_component(&self.quiver, d, s, self.system))).clone()
    }

    /// The component of homological degree `h`, if `h` is attainable.
    pub fn component_at(&self, d: &Multidegree, h: i64) -> Option<Arc<AlgebraComponent>> {
        s_of(&self.quiver, d, h).map(|s| self.component(d, s))
    }

    /// `dim 𝒜_{Q,d}^h` by exact rank; zero for unattainable `h`.
    pub fn dimension(&self, d: &Multidegree, h: i64) -> usize {
        self.component_at(d, h).map_or(0, |c| c.dim())
    }

    pub fn cached_components(&self) -> usize {
        self.cache.lock().expect("component cache poisoned").len()
    }
}
