use std::fmt;

use serde::Serialize;

use crate::multidegree::Multidegree;
use crate::quiver::Quiver;

/// `e_{vertex,k}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Generator {
    pub vertex: usize,
    pub k: u32,
}

impl Generator {
    pub fn new(vertex: usize, k: u32) -> Self {
        Generator { vertex, k }
    }

    /// `−2k − m_ii`.
    pub fn h(&self, q: &Quiver) -> i64 {
        -2 * self.k as i64 - q.loops(self.vertex) as i64
    }

    pub fn is_odd(&self, q: &Quiver) -> bool {
        q.loops(self.vertex) % 2 == 1
    }
}

/// A product of generators in normal form: sorted by `(vertex, k)`, with no
/// odd generator repeated.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct SuperMonomial(pub Vec<Generator>);

impl SuperMonomial {
    pub fn one() -> Self {
        SuperMonomial(Vec::new())
    }

    pub fn generators(&self) -> &[Generator] {
        &self.0
    }

    pub fn degree(&self, nvars: usize) -> Multidegree {
        let mut d = vec![0; nvars];
        for g in &self.0 {
            d[g.vertex] += 1;
        }
        Multidegree(d)
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().map(|g| g.k).sum()
    }

    /// Sorts an arbitrary product into normal form. Returns the Koszul sign,
    /// or `None` when an odd generator appears twice.
    pub fn normalize(mut gens: Vec<Generator>, odd: &[bool]) -> Option<(i32, SuperMonomial)> {
        let mut sign = 1;
        for i in 1..gens.len() {
            let mut j = i;
            while j > 0 && gens[j - 1] > gens[j] {
                if odd[gens[j - 1].vertex] && odd[gens[j].vertex] {
                    sign = -sign;
                }
                gens.swap(j - 1, j);
                j -= 1;
            }
        }
        if gens.windows(2).any(|w| w[0] == w[1] && odd[w[0].vertex]) {
            return None;
        }
        Some((sign, SuperMonomial(gens)))
    }

    /// `self · other` in normal form.
    pub fn mul(&self, other: &SuperMonomial, odd: &[bool]) -> Option<(i32, SuperMonomial)> {
        let mut gens = self.0.clone();
        gens.extend_from_slice(&other.0);
        SuperMonomial::normalize(gens, odd)
    }
}

impl fmt::Display for SuperMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|g| format!("e{}_{}", g.vertex, g.k)).collect();
        write!(f, "{}", parts.join("·"))
    }
}

pub(crate) fn odd_vertices(q: &Quiver) -> Vec<bool> {
    (0..q.len()).map(|i| q.loops(i) % 2 == 1).collect()
}

/// All normal-form monomials of multidegree `d` with `Σ k = s`, in
/// lexicographic order.
pub fn component_basis(q: &Quiver, d: &Multidegree, s: u32) -> Vec<SuperMonomial> {
    let odd = odd_vertices(q);
    let slots: Vec<usize> =
        d.entries().iter().enumerate().flat_map(|(i, &n)| std::iter::repeat_n(i, n as usize)).collect();
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(slots.len());
    fill(&slots, &odd, s, &mut current, &mut out);
    out
}

fn fill(slots: &[usize], odd: &[bool], budget: u32, current: &mut Vec<Generator>, out: &mut Vec<SuperMonomial>) {
    let pos = current.len();
    if pos == slots.len() {
        if budget == 0 {
            out.push(SuperMonomial(current.clone()));
        }
        return;
    }
    let v = slots[pos];
    let min = match current.last() {
        Some(g) if g.vertex == v => g.k + u32::from(odd[v]),
        _ => 0,
    };
    // later slots at the same vertex need at least `min` (plus steps if odd)
    let same_after = slots[pos + 1..].iter().take_while(|&&w| w == v).count() as u32;
    for k in min..=budget {
        let step = if odd[v] { same_after * (same_after + 1) / 2 } else { 0 };
        if k * (same_after + 1) + step > budget {
            break;
        }
        current.push(Generator::new(v, k));
        fill(slots, odd, budget - k, current, out);
        current.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::fleet;

    #[test]
    fn single_generator() {
        let q = fleet::one_loop(2);
        for k in 0..5 {
            assert_eq!(component_basis(&q, &Multidegree(vec![1]), k), vec![SuperMonomial(vec![Generator::new(0, k)])]);
        }
    }

    #[test]
    fn even_pairs_count() {
        let q = fleet::one_loop(2);
        for s in 0..10 {
            assert_eq!(component_basis(&q, &Multidegree(vec![2]), s).len() as u32, s / 2 + 1);
        }
    }

    #[test]
    fn odd_square_excluded() {
        let q = fleet::one_loop(1);
        let b = component_basis(&q, &Multidegree(vec![2]), 2);
        assert_eq!(b, vec![SuperMonomial(vec![Generator::new(0, 0), Generator::new(0, 2)])]);
        assert!(component_basis(&q, &Multidegree(vec![2]), 0).is_empty());
        assert_eq!(component_basis(&q, &Multidegree(vec![3]), 3).len(), 1);
    }

    #[test]
    fn unit_component() {
        let b = component_basis(&fleet::doubled_a2(), &Multidegree(vec![0, 0]), 0);
        assert_eq!(b, vec![SuperMonomial::one()]);
        assert!(component_basis(&fleet::doubled_a2(), &Multidegree(vec![0, 0]), 1).is_empty());
    }

    #[test]
    fn koszul_signs() {
        let odd = [true, false];
        let (a, b, c) = (Generator::new(0, 0), Generator::new(0, 1), Generator::new(1, 0));
        assert_eq!(SuperMonomial::normalize(vec![b, a], &odd).unwrap().0, -1);
        assert_eq!(SuperMonomial::normalize(vec![c, a], &odd).unwrap().0, 1);
        assert_eq!(SuperMonomial::normalize(vec![b, c, a], &odd).unwrap().0, -1);
        assert!(SuperMonomial::normalize(vec![a, c, a], &odd).is_none());
        let even = [false, false];
        assert_eq!(SuperMonomial::normalize(vec![a, a], &even).unwrap().0, 1);
    }
}
