//! Multiplicities of characters in `H⁰(C, K_C^{⊗m})` for a curve with an
//! abelian group action, and the induced character of `H⁰(X, K_X^{⊗m})`.
//!
//! Convention: the group acts on forms by `g ↦ g*ω`. For `χ(h_i) = k_i/n_i`
//! the multiplicity for `m ≥ 2` is
//! `(2m/|G|)(g − 1) − (g′ − 1) − Σ [k_i − m]_{n_i}/n_i`, and for `m = 1` it
//! is `g′` for the trivial character and `g′ − 1 + Σ ⟨−k_i/n_i⟩` otherwise.

use std::collections::BTreeMap;

use num_integer::Integer;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::covering::{AlgebraicDatum, GeneratingVector};
use crate::error::{Error, Result};
use crate::galois::{CharTuple, GaloisGroup};
use crate::groups::{AbelianGroup, Character};

/// A representation of an abelian group, as character multiplicities.
/// Absent characters have multiplicity zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CharacterMultiset {
    group: AbelianGroup,
    mults: BTreeMap<Character, u64>,
}

impl CharacterMultiset {
    pub fn new(group: AbelianGroup) -> Self {
        CharacterMultiset {
            group,
            mults: BTreeMap::new(),
        }
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn get(&self, chi: &Character) -> u64 {
        self.mults.get(chi).copied().unwrap_or(0)
    }

    pub fn add(&mut self, chi: Character, k: u64) {
        if k > 0 {
            *self.mults.entry(chi).or_insert(0) += k;
        }
    }

    pub fn total(&self) -> u64 {
        self.mults.values().sum()
    }

    /// Nonzero entries in character order.
    pub fn iter(&self) -> impl Iterator<Item = (&Character, u64)> {
        self.mults.iter().map(|(c, &k)| (c, k))
    }

    /// The complex conjugate representation.
    pub fn conjugate(&self) -> Self {
        let mut out = CharacterMultiset::new(self.group.clone());
        for (c, k) in self.iter() {
            out.add(self.group.char_neg(c), k);
        }
        out
    }

    /// `self − other`, failing if some multiplicity would go negative.
    pub fn checked_sub(&self, other: &CharacterMultiset) -> Option<CharacterMultiset> {
        let mut out = self.clone();
        for (c, k) in other.iter() {
            let have = out.get(c);
            if have < k {
                return None;
            }
            if have == k {
                out.mults.remove(c);
            } else {
                out.mults.insert(c.clone(), have - k);
            }
        }
        Some(out)
    }
}

impl Serialize for CharacterMultiset {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("CharacterMultiset", 2)?;
        st.serialize_field("group", &self.group)?;
        let entries: Vec<(&Character, u64)> = self.iter().collect();
        st.serialize_field("multiplicities", &entries)?;
        st.end()
    }
}

/// `k_i` with `χ(h_i) = k_i/n_i` for each branch element.
fn branch_exponents(chi: &Character, v: &GeneratingVector) -> Vec<(u32, u32)> {
    v.branch()
        .iter()
        .zip(v.btype().indices())
        .map(|(h, &n)| {
            let k = v
                .group()
                .eval(chi, h)
                .exponent_over(n)
                .expect("character values on h have denominator dividing ord h");
            (k, n)
        })
        .collect()
}

/// Multiplicity of `χ` in `H⁰(C, K_C^{⊗m})`, `m ≥ 2`.
pub fn pluricanonical_multiplicity(chi: &Character, m: u32, v: &GeneratingVector) -> Result<u64> {
    if m < 2 {
        return Err(Error::Scope(format!(
            "pluricanonical multiplicity needs m >= 2 (got {m}); use canonical_multiplicity"
        )));
    }
    let order = v.group().order() as i64;
    let g = v.genus() as i64;
    let gp = v.btype().genus_prime() as i64;
    let ks = branch_exponents(chi, v);
    let l = ks.iter().fold(order, |acc, &(_, n)| acc.lcm(&(n as i64)));
    let m = m as i64;
    let mut scaled = 2 * m * (g - 1) * (l / order) - (gp - 1) * l;
    for &(k, n) in &ks {
        let n = n as i64;
        scaled -= (k as i64 - m).rem_euclid(n) * (l / n);
    }
    if scaled % l != 0 {
        return Err(Error::Consistency(format!(
            "non-integral multiplicity {scaled}/{l} for {chi:?} at m = {m}"
        )));
    }
    let mult = scaled / l;
    if mult < 0 {
        return Err(Error::Consistency(format!(
            "negative multiplicity {mult} for {chi:?} at m = {m}"
        )));
    }
    Ok(mult as u64)
}

/// Multiplicity of `χ` in `H⁰(C, K_C)`.
pub fn canonical_multiplicity(chi: &Character, v: &GeneratingVector) -> Result<u64> {
    let gp = v.btype().genus_prime() as i64;
    if *chi == v.group().trivial_character() {
        return Ok(gp as u64);
    }
    let ks = branch_exponents(chi, v);
    let l = ks.iter().fold(1i64, |acc, &(_, n)| acc.lcm(&(n as i64)));
    let mut scaled = (gp - 1) * l;
    for &(k, n) in &ks {
        scaled += (-(k as i64)).rem_euclid(n as i64) * (l / n as i64);
    }
    if scaled % l != 0 || scaled < 0 {
        return Err(Error::Consistency(format!(
            "canonical multiplicity {scaled}/{l} for {chi:?} is not a nonnegative integer"
        )));
    }
    Ok((scaled / l) as u64)
}

/// `H⁰(C, K_C^{⊗m})` as a representation of the group of `v`, with the
/// Riemann–Roch dimension asserted.
pub fn curve_character(m: u32, v: &GeneratingVector) -> Result<CharacterMultiset> {
    let mut out = CharacterMultiset::new(v.group().clone());
    for chi in v.group().characters() {
        let k = if m == 1 {
            canonical_multiplicity(&chi, v)?
        } else {
            pluricanonical_multiplicity(&chi, m, v)?
        };
        out.add(chi, k);
    }
    let g = v.genus() as u64;
    let expected = match m {
        0 => 1,
        1 => g,
        _ => (2 * m as u64 - 1) * g.saturating_sub(1),
    };
    if out.total() != expected {
        return Err(Error::Consistency(format!(
            "curve character at m = {m} has dimension {} instead of {expected}",
            out.total()
        )));
    }
    Ok(out)
}

/// `Sym²` of a representation.
pub fn sym2_character(c: &CharacterMultiset) -> CharacterMultiset {
    let g = c.group();
    let entries: Vec<(&Character, u64)> = c.iter().collect();
    let mut out = CharacterMultiset::new(g.clone());
    for (i, &(a, ma)) in entries.iter().enumerate() {
        out.add(g.char_add(a, a), ma * (ma + 1) / 2);
        for &(b, mb) in &entries[i + 1..] {
            out.add(g.char_add(a, b), ma * mb);
        }
    }
    out
}

/// `H⁰(X, K_X^{⊗m})` as a representation of `Ḡ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VIPCharacter {
    factor_groups: Vec<AbelianGroup>,
    mults: BTreeMap<CharTuple, u64>,
}

impl VIPCharacter {
    pub fn factor_groups(&self) -> &[AbelianGroup] {
        &self.factor_groups
    }

    pub fn get(&self, chi: &[Character]) -> u64 {
        self.mults.get(chi).copied().unwrap_or(0)
    }

    /// Constituents with their multiplicities.
    pub fn iter(&self) -> impl Iterator<Item = (&CharTuple, u64)> {
        self.mults.iter().map(|(c, &k)| (c, k))
    }

    /// `P_m`.
    pub fn total(&self) -> u64 {
        self.mults.values().sum()
    }
}

impl Serialize for VIPCharacter {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("VIPCharacter", 2)?;
        st.serialize_field("factor_groups", &self.factor_groups)?;
        let entries: Vec<(&CharTuple, u64)> = self.iter().collect();
        st.serialize_field("multiplicities", &entries)?;
        st.end()
    }
}

/// Künneth: the multiplicity of `(χ₁, …, χ_n)` is `∏ mult(χ_i)`, over the
/// tuples trivial on `G`.
pub fn vip_character(d: &AlgebraicDatum, m: u32) -> Result<VIPCharacter> {
    vip_character_with(&GaloisGroup::new(d), d, m)
}

pub(crate) fn vip_character_with(galois: &GaloisGroup, d: &AlgebraicDatum, m: u32) -> Result<VIPCharacter> {
    let curve: Vec<Vec<u64>> = d
        .vectors()
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let c = curve_character(m, v)?;
            Ok(galois.factor(i).characters().iter().map(|chi| c.get(chi)).collect())
        })
        .collect::<Result<_>>()?;
    let mut mults = BTreeMap::new();
    for t in galois.character_indices() {
        let k: u64 = t.iter().enumerate().map(|(i, &c)| curve[i][c]).product();
        if k > 0 {
            mults.insert(galois.tuple_to_chars(t), k);
        }
    }
    Ok(VIPCharacter {
        factor_groups: (0..galois.n()).map(|i| galois.factor(i).clone()).collect(),
        mults,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covering::BranchingType;
    use crate::groups::GroupElement;

    fn v1() -> GeneratingVector {
        let g = AbelianGroup::new(&[2, 2, 2]).unwrap();
        let e = |v: [u32; 3]| GroupElement(v.to_vec());
        GeneratingVector::spherical(
            g,
            vec![e([1, 0, 0]), e([1, 0, 0]), e([0, 1, 0]), e([0, 1, 0]), e([0, 0, 1]), e([0, 0, 1])],
        )
        .unwrap()
    }

    fn ch(v: &[u32]) -> Character {
        Character(v.to_vec())
    }

    #[test]
    fn bicanonical_multiplicities() {
        let v = v1();
        assert_eq!(pluricanonical_multiplicity(&ch(&[0, 0, 0]), 2, &v).unwrap(), 3);
        assert_eq!(pluricanonical_multiplicity(&ch(&[1, 0, 0]), 2, &v).unwrap(), 2);
        assert_eq!(pluricanonical_multiplicity(&ch(&[1, 1, 1]), 2, &v).unwrap(), 0);
        assert!(pluricanonical_multiplicity(&ch(&[0, 0, 0]), 1, &v).is_err());
    }

    #[test]
    fn canonical_multiplicities() {
        let v = v1();
        assert_eq!(canonical_multiplicity(&ch(&[1, 1, 1]), &v).unwrap(), 2);
        assert_eq!(canonical_multiplicity(&ch(&[0, 1, 1]), &v).unwrap(), 1);
        assert_eq!(canonical_multiplicity(&ch(&[0, 0, 0]), &v).unwrap(), 0);
    }

    #[test]
    fn curve_characters() {
        let v = v1();
        let c1 = curve_character(1, &v).unwrap();
        let expected: Vec<(Character, u64)> = vec![
            (ch(&[0, 1, 1]), 1),
            (ch(&[1, 0, 1]), 1),
            (ch(&[1, 1, 0]), 1),
            (ch(&[1, 1, 1]), 2),
        ];
        assert_eq!(c1.iter().map(|(c, k)| (c.clone(), k)).collect::<Vec<_>>(), expected);
        assert_eq!(curve_character(2, &v).unwrap().total(), 12);
        assert_eq!(curve_character(3, &v).unwrap().total(), 20);
    }

    #[test]
    fn sym2_examples() {
        let v = v1();
        let c1 = curve_character(1, &v).unwrap();
        let s = sym2_character(&c1);
        assert_eq!(s.total(), 15);
        let triv = ch(&[0, 0, 0]);
        assert_eq!(s.get(&triv), 6);
        let ideal = s.checked_sub(&curve_character(2, &v).unwrap()).unwrap();
        assert_eq!(ideal.iter().collect::<Vec<_>>(), vec![(&triv, 3)]);
        let empty = CharacterMultiset::new(v.group().clone());
        assert_eq!(sym2_character(&empty).total(), 0);
    }

    #[test]
    fn order_three_action() {
        // Z3 with type [0; 3,3,3,3]: genus 2, canonical character has no
        // trivial part and dimension 2
        let g = AbelianGroup::cyclic(3);
        let e = |x| GroupElement(vec![x]);
        let v = GeneratingVector::new(
            g,
            "[0; 3,3,3,3]".parse::<BranchingType>().unwrap(),
            vec![],
            vec![e(1), e(1), e(2), e(2)],
        )
        .unwrap();
        let c1 = curve_character(1, &v).unwrap();
        assert_eq!(c1.total(), 2);
        assert_eq!(c1.get(&ch(&[1])), 1);
        assert_eq!(c1.get(&ch(&[2])), 1);
        for m in 2..6 {
            assert_eq!(curve_character(m, &v).unwrap().total(), (2 * m as u64 - 1));
        }
    }
}
