//! Finite abelian groups in invariant-factor form, their elements, and
//! their dual groups.
//!
//! A group `ℤ/d₁ × … × ℤ/d_k` with `d₁ | d₂ | … | d_k` has elements given by
//! coordinate tuples `(g₁, …, g_k)` with `0 <= g_i < d_i`. Characters use the
//! same shape: the character with exponents `(c₁, …, c_k)` sends `g` to
//! `Σ c_i g_i / d_i mod 1`.

mod automorphism;
mod qz;
mod snf;
mod subgroup;
pub(crate) mod table;

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub(crate) use automorphism::automorphism_permutations;
pub use automorphism::{automorphisms, Automorphism, DEFAULT_AUTOMORPHISM_CEILING};
pub use qz::QZValue;
pub use snf::{abelianize, smith_normal_form, SmithForm};
pub use subgroup::{cyclic_subgroups, quotient, subgroup_generated, QuotientMap, Subgroup};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement(pub Vec<u32>);

impl GroupElement {
    pub fn coords(&self) -> &[u32] {
        &self.0
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl From<Vec<u32>> for GroupElement {
    fn from(v: Vec<u32>) -> Self {
        GroupElement(v)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Character(pub Vec<u32>);

impl Character {
    pub fn exponents(&self) -> &[u32] {
        &self.0
    }
}

impl fmt::Debug for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "χ{:?}", self.0)
    }
}

impl From<Vec<u32>> for Character {
    fn from(v: Vec<u32>) -> Self {
        Character(v)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct AbelianGroup {
    factors: Vec<u32>,
}

impl TryFrom<Vec<u32>> for AbelianGroup {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        AbelianGroup::new(&v)
    }
}

impl From<AbelianGroup> for Vec<u32> {
    fn from(g: AbelianGroup) -> Self {
        g.factors
    }
}

impl AbelianGroup {
    /// Builds `ℤ/d₁ × … × ℤ/d_k`. Factors equal to 1 are dropped; the rest
    /// must form a divisibility chain. Use [`abelianize`] to normalize an
    /// arbitrary presentation.
    pub fn new(invariant_factors: &[u32]) -> Result<Self> {
        if invariant_factors.iter().any(|&d| d == 0) {
            return Err(Error::MalformedGroup(format!(
                "invariant factors {invariant_factors:?} contain 0"
            )));
        }
        let factors: Vec<u32> = invariant_factors.iter().copied().filter(|&d| d > 1).collect();
        if let Some(w) = factors.windows(2).find(|w| w[1] % w[0] != 0) {
            return Err(Error::MalformedGroup(format!(
                "{} does not divide {} in {invariant_factors:?}",
                w[0], w[1]
            )));
        }
        Ok(AbelianGroup { factors })
    }

    pub fn trivial() -> Self {
        AbelianGroup { factors: Vec::new() }
    }

    pub fn cyclic(n: u32) -> Self {
        AbelianGroup::new(&[n]).expect("cyclic group")
    }

    pub fn invariant_factors(&self) -> &[u32] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> u32 {
        self.factors.iter().product()
    }

    pub fn exponent(&self) -> u32 {
        self.factors.last().copied().unwrap_or(1)
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement(vec![0; self.rank()])
    }

    /// The standard generator `e_i` (1 in coordinate `i`).
    pub fn generator(&self, i: usize) -> GroupElement {
        let mut c = vec![0; self.rank()];
        c[i] = 1;
        GroupElement(c)
    }

    pub fn generators(&self) -> Vec<GroupElement> {
        (0..self.rank()).map(|i| self.generator(i)).collect()
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        g.0.len() == self.rank() && g.0.iter().zip(&self.factors).all(|(&x, &d)| x < d)
    }

    pub fn check(&self, g: &GroupElement) -> Result<()> {
        if self.contains(g) {
            Ok(())
        } else {
            Err(Error::InvalidElement {
                element: g.0.clone(),
                group: self.to_string(),
            })
        }
    }

    /// Reduces an arbitrary integer vector into canonical coordinates.
    pub fn element_from_ints(&self, v: &[i64]) -> GroupElement {
        assert_eq!(v.len(), self.rank());
        GroupElement(
            v.iter()
                .zip(&self.factors)
                .map(|(&x, &d)| x.rem_euclid(d as i64) as u32)
                .collect(),
        )
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement(
            a.0.iter()
                .zip(&b.0)
                .zip(&self.factors)
                .map(|((&x, &y), &d)| (x + y) % d)
                .collect(),
        )
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        GroupElement(
            a.0.iter()
                .zip(&self.factors)
                .map(|(&x, &d)| (d - x) % d)
                .collect(),
        )
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, k: i64, a: &GroupElement) -> GroupElement {
        GroupElement(
            a.0.iter()
                .zip(&self.factors)
                .map(|(&x, &d)| (k * x as i64).rem_euclid(d as i64) as u32)
                .collect(),
        )
    }

    pub fn sum<'a>(&self, items: impl IntoIterator<Item = &'a GroupElement>) -> GroupElement {
        items
            .into_iter()
            .fold(self.identity(), |acc, x| self.add(&acc, x))
    }

    /// Least `n >= 1` with `n·g = 0`: the lcm of `d_i / gcd(d_i, g_i)`.
    pub fn element_order(&self, g: &GroupElement) -> u32 {
        g.0.iter()
            .zip(&self.factors)
            .fold(1, |acc, (&x, &d)| acc.lcm(&(d / d.gcd(&x))))
    }

    /// Position of `g` in the lexicographic enumeration of all elements.
    pub fn index_of(&self, g: &GroupElement) -> usize {
        g.0.iter()
            .zip(&self.factors)
            .fold(0usize, |acc, (&x, &d)| acc * d as usize + x as usize)
    }

    pub fn element_at(&self, mut idx: usize) -> GroupElement {
        let mut c = vec![0u32; self.rank()];
        for (slot, &d) in c.iter_mut().zip(&self.factors).rev() {
            *slot = (idx % d as usize) as u32;
            idx /= d as usize;
        }
        GroupElement(c)
    }

    /// All elements in lexicographic order of their coordinates.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order() as usize).map(move |i| self.element_at(i))
    }

    pub fn trivial_character(&self) -> Character {
        Character(vec![0; self.rank()])
    }

    /// The dual group `Irr(G)`, in lexicographic order of exponents.
    pub fn characters(&self) -> Vec<Character> {
        self.elements().map(|g| Character(g.0)).collect()
    }

    pub fn contains_character(&self, chi: &Character) -> bool {
        self.contains(&GroupElement(chi.0.clone()))
    }

    /// `χ(g) = Σ c_i g_i / d_i mod 1`.
    pub fn eval(&self, chi: &Character, g: &GroupElement) -> QZValue {
        let e = self.exponent();
        let num: i64 = chi
            .0
            .iter()
            .zip(&g.0)
            .zip(&self.factors)
            .map(|((&c, &x), &d)| c as i64 * x as i64 * (e / d) as i64)
            .sum();
        QZValue::new(num, e)
    }

    pub fn char_add(&self, a: &Character, b: &Character) -> Character {
        Character(self.add(&GroupElement(a.0.clone()), &GroupElement(b.0.clone())).0)
    }

    /// The complex conjugate `χ̄ = χ⁻¹`.
    pub fn char_neg(&self, a: &Character) -> Character {
        Character(self.neg(&GroupElement(a.0.clone())).0)
    }

    pub fn char_sub(&self, a: &Character, b: &Character) -> Character {
        self.char_add(a, &self.char_neg(b))
    }

    pub fn character_order(&self, chi: &Character) -> u32 {
        self.element_order(&GroupElement(chi.0.clone()))
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.factors.len() {
            let d = self.factors[i];
            let mut j = i;
            while j < self.factors.len() && self.factors[j] == d {
                j += 1;
            }
            if j - i == 1 {
                parts.push(format!("Z{d}"));
            } else {
                parts.push(format!("Z{d}^{}", j - i));
            }
            i = j;
        }
        write!(f, "{}", parts.join("x"))
    }
}

impl fmt::Debug for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// All abelian groups of the given order, as invariant-factor lists.
pub fn groups_of_order(order: u32) -> Vec<AbelianGroup> {
    fn rec(remaining: u32, last: u32, acc: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if remaining == 1 {
            out.push(acc.clone());
            return;
        }
        // build from the largest factor down: each new factor divides the previous
        for d in (2..=remaining).rev() {
            if remaining % d == 0 && (last == 0 || last % d == 0) {
                acc.push(d);
                rec(remaining / d, d, acc, out);
                acc.pop();
            }
        }
    }
    if order == 1 {
        return vec![AbelianGroup::trivial()];
    }
    let mut out = Vec::new();
    rec(order, 0, &mut Vec::new(), &mut out);
    let mut groups: Vec<AbelianGroup> = out
        .into_iter()
        .filter_map(|mut f| {
            f.reverse();
            AbelianGroup::new(&f).ok()
        })
        .filter(|g| g.order() == order)
        .collect();
    groups.sort();
    groups
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(v: &[u32]) -> GroupElement {
        GroupElement(v.to_vec())
    }

    #[test]
    fn make_group_orders() {
        let g = AbelianGroup::new(&[2, 2, 2]).unwrap();
        assert_eq!(g.order(), 8);
        let g = AbelianGroup::new(&[2, 4]).unwrap();
        assert_eq!(g.order(), 8);
        assert_eq!(g.exponent(), 4);
        let g = AbelianGroup::new(&[]).unwrap();
        assert_eq!(g.order(), 1);
        assert!(g.is_trivial());
    }

    #[test]
    fn make_group_drops_ones_and_rejects_bad_chains() {
        assert_eq!(AbelianGroup::new(&[1, 2, 1, 4]).unwrap().invariant_factors(), &[2, 4]);
        assert!(AbelianGroup::new(&[4, 2]).is_err());
        assert!(AbelianGroup::new(&[2, 3]).is_err());
        assert!(AbelianGroup::new(&[0]).is_err());
    }

    #[test]
    fn element_orders() {
        let g = AbelianGroup::new(&[2, 2, 2]).unwrap();
        assert_eq!(g.element_order(&g.identity()), 1);
        assert_eq!(g.element_order(&el(&[1, 0, 0])), 2);
        let h = AbelianGroup::new(&[2, 4]).unwrap();
        assert_eq!(h.element_order(&el(&[1, 1])), 4);
        assert_eq!(h.element_order(&el(&[1, 2])), 2);
    }

    #[test]
    fn characters_and_evaluation() {
        let g = AbelianGroup::new(&[2, 2, 2]).unwrap();
        assert_eq!(g.characters().len(), 8);
        let chi = Character(vec![1, 1, 1]);
        assert_eq!(g.eval(&chi, &el(&[1, 0, 0])), QZValue::new(1, 2));
        let triv = g.trivial_character();
        assert!(g.elements().all(|x| g.eval(&triv, &x).is_zero()));
        let h = AbelianGroup::new(&[2, 4]).unwrap();
        assert_eq!(h.eval(&Character(vec![1, 1]), &el(&[1, 1])), QZValue::new(3, 4));
    }

    #[test]
    fn index_round_trip() {
        let g = AbelianGroup::new(&[2, 6]).unwrap();
        for (i, x) in g.elements().enumerate() {
            assert_eq!(g.index_of(&x), i);
        }
        let all: Vec<_> = g.elements().collect();
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(all, sorted);
    }

    #[test]
    fn display() {
        assert_eq!(AbelianGroup::new(&[2, 2, 2]).unwrap().to_string(), "Z2^3");
        assert_eq!(AbelianGroup::new(&[2, 4]).unwrap().to_string(), "Z2xZ4");
        assert_eq!(AbelianGroup::trivial().to_string(), "1");
    }

    #[test]
    fn enumerates_groups_by_order() {
        let names: Vec<String> = groups_of_order(16).iter().map(|g| g.to_string()).collect();
        assert_eq!(names.len(), 5);
        assert!(names.contains(&"Z2^4".to_string()));
        assert!(names.contains(&"Z4^2".to_string()));
        assert!(names.contains(&"Z2^2xZ4".to_string()));
        assert_eq!(groups_of_order(12).len(), 2);
        assert_eq!(groups_of_order(1).len(), 1);
        assert_eq!(groups_of_order(7).len(), 1);
    }
}
