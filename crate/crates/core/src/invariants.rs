//! χ(O_X), K_X^n, the topological Euler number and the Hodge numbers of a
//! variety isogenous to a product.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::chevalley_weil::curve_character;
use crate::covering::{curve_genera, AlgebraicDatum};
use crate::error::{Error, Result};
use crate::groups::{AbelianGroup, Character};

/// `(h^{3,0}, h^{2,0}, h^{1,0}, h^{1,1}, h^{2,1})` of a threefold.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct HodgeNumbers {
    pub h30: u64,
    pub h20: u64,
    pub h10: u64,
    pub h11: u64,
    pub h21: u64,
}

impl HodgeNumbers {
    pub fn as_tuple(&self) -> (u64, u64, u64, u64, u64) {
        (self.h30, self.h20, self.h10, self.h11, self.h21)
    }

    /// `1 − h^{1,0} + h^{2,0} − h^{3,0}`.
    pub fn chi_o(&self) -> i64 {
        1 - self.h10 as i64 + self.h20 as i64 - self.h30 as i64
    }

    /// `2 − 4h^{1,0} + 4h^{2,0} − 2h^{3,0} + 2h^{1,1} − 2h^{2,1}`.
    pub fn euler(&self) -> i64 {
        2 - 4 * self.h10 as i64 + 4 * self.h20 as i64 - 2 * self.h30 as i64 + 2 * self.h11 as i64
            - 2 * self.h21 as i64
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantSet {
    pub chi_o: i64,
    /// `K³` for threefolds, `K²` for surfaces
    pub canonical_self_intersection: i64,
    pub euler_number: i64,
    pub hodge: Option<HodgeNumbers>,
    pub genera: Vec<u32>,
}

fn exact_div(num: i64, den: i64, what: &str) -> Result<i64> {
    if num % den != 0 {
        return Err(Error::Consistency(format!("{what}: {num} is not divisible by |G| = {den}")));
    }
    Ok(num / den)
}

/// `χ(O_X) = ∏(1 − g_i)/|G|`.
pub fn euler_char_sheaf(d: &AlgebraicDatum) -> Result<i64> {
    let genera = curve_genera(d)?;
    exact_div(
        genera.iter().map(|&g| 1 - g as i64).product(),
        d.group().order() as i64,
        "χ(O)",
    )
}

/// `e(X) = ∏(2 − 2g_i)/|G|`.
pub fn topological_euler(d: &AlgebraicDatum) -> Result<i64> {
    let genera = curve_genera(d)?;
    exact_div(
        genera.iter().map(|&g| 2 - 2 * g as i64).product(),
        d.group().order() as i64,
        "e(X)",
    )
}

/// `K³ = −48·χ(O)` for threefolds and `K² = 8·χ(O)` for surfaces, checked
/// against `n!·∏(2g_i − 2)/|G|`.
pub fn canonical_self_intersection(d: &AlgebraicDatum) -> Result<i64> {
    let chi = euler_char_sheaf(d)?;
    let value = match d.n() {
        2 => 8 * chi,
        3 => -48 * chi,
        n => return Err(Error::Scope(format!("K^n is only provided for n = 2, 3 (got {n})"))),
    };
    let genera = curve_genera(d)?;
    let factorial: i64 = (1..=d.n() as i64).product();
    let direct = exact_div(
        factorial * genera.iter().map(|&g| 2 * g as i64 - 2).product::<i64>(),
        d.group().order() as i64,
        "K^n",
    )?;
    if direct != value {
        return Err(Error::Consistency(format!(
            "K^n from χ(O) is {value} but the product formula gives {direct}"
        )));
    }
    Ok(value)
}

/// A representation of `G` as multiplicities indexed like `G.characters()`.
fn pulled_back(d: &AlgebraicDatum, i: usize) -> Result<Vec<u64>> {
    let g = d.group();
    let c = curve_character(1, &d.vectors()[i])?;
    let q = &d.projections()[i];
    let mut out = vec![0u64; g.order() as usize];
    for (chi, k) in c.iter() {
        let p = q.pullback(chi);
        out[g.index_of(&crate::groups::GroupElement(p.0))] += k;
    }
    Ok(out)
}

fn conjugate(g: &AbelianGroup, rep: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; rep.len()];
    for (idx, &k) in rep.iter().enumerate() {
        let chi = Character(g.element_at(idx).0);
        let neg = g.char_neg(&chi);
        out[g.index_of(&crate::groups::GroupElement(neg.0))] += k;
    }
    out
}

fn tensor(g: &AbelianGroup, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; a.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        let gi = g.element_at(i);
        for (j, &y) in b.iter().enumerate() {
            if y > 0 {
                out[g.index_of(&g.add(&gi, &g.element_at(j)))] += x * y;
            }
        }
    }
    out
}

/// Hodge numbers of a threefold from the `G`-invariant part of the Künneth
/// decomposition of `H^{p,q}(C₁ × C₂ × C₃)`.
pub fn hodge_numbers(d: &AlgebraicDatum) -> Result<HodgeNumbers> {
    if d.n() != 3 {
        return Err(Error::Scope(format!("Hodge numbers are computed for n = 3 (got {})", d.n())));
    }
    let g = d.group();
    let size = g.order() as usize;
    let mut trivial = vec![0u64; size];
    trivial[0] = 1;
    let thetas: Vec<Vec<u64>> = (0..3).map(|i| pulled_back(d, i)).collect::<Result<_>>()?;
    let conj: Vec<Vec<u64>> = thetas.iter().map(|t| conjugate(g, t)).collect();
    for (t, c) in thetas.iter().zip(&conj) {
        // multiplicity of χ in the conjugate equals that of −χ in θ
        for (idx, &k) in c.iter().enumerate() {
            let neg = g.index_of(&g.neg(&g.element_at(idx)));
            if t[neg] != k {
                return Err(Error::Consistency("conjugate representation mismatch".into()));
            }
        }
    }
    // contributions per factor for (p_i, q_i) ∈ {0,1}²
    let piece = |i: usize, p: usize, q: usize| -> &Vec<u64> {
        match (p, q) {
            (1, 0) => &thetas[i],
            (0, 1) => &conj[i],
            _ => &trivial,
        }
    };
    let mut cache: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    let mut h = |p: usize, q: usize| -> u64 {
        *cache.entry((p, q)).or_insert_with(|| {
            let mut total = 0;
            for code in 0..64usize {
                let dist: Vec<(usize, usize)> = (0..3).map(|i| ((code >> (2 * i)) & 1, (code >> (2 * i + 1)) & 1)).collect();
                if dist.iter().map(|x| x.0).sum::<usize>() != p || dist.iter().map(|x| x.1).sum::<usize>() != q {
                    continue;
                }
                let prod = (0..3).fold(trivial.clone(), |acc, i| tensor(g, &acc, piece(i, dist[i].0, dist[i].1)));
                total += prod[0];
            }
            total
        })
    };
    Ok(HodgeNumbers {
        h30: h(3, 0),
        h20: h(2, 0),
        h10: h(1, 0),
        h11: h(1, 1),
        h21: h(2, 1),
    })
}

pub fn invariant_set(d: &AlgebraicDatum) -> Result<InvariantSet> {
    let chi_o = euler_char_sheaf(d)?;
    let euler_number = topological_euler(d)?;
    let hodge = if d.n() == 3 { Some(hodge_numbers(d)?) } else { None };
    if let Some(hn) = hodge {
        if hn.chi_o() != chi_o || hn.euler() != euler_number {
            return Err(Error::Consistency(format!(
                "Hodge numbers {hn:?} disagree with χ(O) = {chi_o}, e = {euler_number}"
            )));
        }
    }
    Ok(InvariantSet {
        chi_o,
        canonical_self_intersection: canonical_self_intersection(d)?,
        euler_number,
        hodge,
        genera: curve_genera(d)?,
    })
}
