//! The abelian cover `π: X → (P¹)ⁿ` with group `Ḡ`: branch data, the
//! integers `k`, `r`, `μ`, and the multidegrees of the eigensheaves
//! `(π_* K_X^{⊗m})^χ = O(r¹, …, rⁿ)`.

use serde::Serialize;

use crate::covering::AlgebraicDatum;
use crate::error::{Error, Result};
use crate::galois::{CharTuple, ElementTuple, GaloisGroup};
use crate::groups::{Character, QZValue};

/// A cyclic subgroup `H ≤ Ḡ` with a generator `ψ` of its dual.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct StabPair {
    /// canonical representatives of the elements of `H`
    pub elements: Vec<ElementTuple>,
    /// lexicographically least element of maximal order
    pub generator: ElementTuple,
    /// `ψ(generator)`, of exact denominator `|H|`
    pub psi_at_generator: QZValue,
}

impl StabPair {
    pub fn order(&self) -> u32 {
        self.elements.len() as u32
    }
}

/// One branch point `B_{ij}` of factor `j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BranchComponent {
    pub factor: usize,
    pub point: usize,
    /// `(1, …, h_{ij}, …, 1)` in `G₁ × … × G_n`
    pub local_monodromy: ElementTuple,
    /// `n_{ij} = ord h_{ij}`
    pub order: u32,
    pub stabilizer: StabPair,
}

/// `(r¹, …, rⁿ)` for one character and one `m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EigensheafDegrees {
    pub character: CharTuple,
    pub m: u32,
    pub degrees: Vec<i64>,
    /// `∏ max(r^j + 1, 0)`
    pub dimension: u64,
}

fn stab_pair(galois: &GaloisGroup, t: &ElementTuple, order: u32) -> StabPair {
    let mut elements: Vec<ElementTuple> = (0..order as i64).map(|k| galois.canonical(&galois.scale(k, t))).collect();
    elements.sort();
    elements.dedup();
    let generator = elements
        .iter()
        .find(|x| galois.element_order(x) == order)
        .cloned()
        .expect("a cyclic group has a generator");
    // ψ(t) = 1/n; the generator is some multiple a·t, so ψ(generator) = a/n
    let a = (1..order as i64)
        .find(|&a| galois.canonical(&galois.scale(a, t)) == generator)
        .unwrap_or(1);
    StabPair {
        elements,
        generator,
        psi_at_generator: QZValue::new(a, order),
    }
}

/// One component per branch point of every factor, in factor-major order.
pub fn branch_data(d: &AlgebraicDatum) -> Result<Vec<BranchComponent>> {
    branch_data_with(&GaloisGroup::new(d), d)
}

fn branch_data_with(galois: &GaloisGroup, d: &AlgebraicDatum) -> Result<Vec<BranchComponent>> {
    if !d.is_spherical() {
        return Err(Error::Scope(
            "the decomposition over (P^1)^n needs every quotient curve to be rational".into(),
        ));
    }
    let mut out = Vec::new();
    for (j, v) in d.vectors().iter().enumerate() {
        for (i, (h, &n)) in v.branch().iter().zip(v.btype().indices()).enumerate() {
            let t = galois.embed(j, h);
            out.push(BranchComponent {
                factor: j,
                point: i,
                stabilizer: stab_pair(galois, &t, n),
                local_monodromy: t,
                order: n,
            });
        }
    }
    Ok(out)
}

/// The unique `0 ≤ k < |H|` with `χ|_H = ψ^k`.
pub fn k_exponent(galois: &GaloisGroup, pair: &StabPair, chi: &[Character]) -> Result<u32> {
    let n = pair.order();
    let value = galois.eval(chi, &pair.generator);
    let a = pair
        .psi_at_generator
        .exponent_over(n)
        .ok_or_else(|| Error::Consistency("ψ does not have order |H|".into()))?;
    let c = value
        .exponent_over(n)
        .ok_or_else(|| Error::Consistency(format!("χ(h) = {value} has denominator not dividing |H| = {n}")))?;
    // solve k·a ≡ c (mod n) with a a unit
    (0..n)
        .find(|&k| (k as u64 * a as u64) % n as u64 == c as u64)
        .ok_or_else(|| Error::Consistency("ψ is not a generator".into()))
}

/// `(r, μ)` with `r = k − m + ⌈(m − k)/|H|⌉·|H|` and `μ = m − ⌈(m − k)/|H|⌉`.
pub fn r_mu(m: u32, h_order: u32, k: u32) -> (u32, i64) {
    let n = h_order as i64;
    let diff = m as i64 - k as i64;
    let c = diff.div_euclid(n) + i64::from(diff.rem_euclid(n) != 0);
    let r = k as i64 - m as i64 + c * n;
    (r as u32, m as i64 - c)
}

/// Precomputed branch data and `k` values for one datum.
#[derive(Clone, Debug)]
pub struct Decomposition {
    galois: GaloisGroup,
    components: Vec<BranchComponent>,
    /// per factor, the component indices of its branch points
    per_factor: Vec<Vec<usize>>,
    /// `ks[c][b]`: `k(H_b, ψ_b, χ_c)`
    ks: Vec<Vec<u32>>,
}

impl Decomposition {
    pub fn new(d: &AlgebraicDatum) -> Result<Self> {
        let galois = GaloisGroup::new(d);
        let components = branch_data_with(&galois, d)?;
        let mut per_factor = vec![Vec::new(); d.n()];
        for (b, comp) in components.iter().enumerate() {
            per_factor[comp.factor].push(b);
        }
        // χ(t_b) = k/n_b because ψ_b(t_b) = 1/n_b
        let ks = galois
            .character_indices()
            .iter()
            .map(|t| {
                let chi = galois.tuple_to_chars(t);
                components
                    .iter()
                    .map(|comp| {
                        let j = comp.factor;
                        galois
                            .factor(j)
                            .eval(&chi[j], &comp.local_monodromy[j])
                            .exponent_over(comp.order)
                            .ok_or_else(|| Error::Consistency("character value outside the stabilizer dual".into()))
                    })
                    .collect::<Result<Vec<u32>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Decomposition {
            galois,
            components,
            per_factor,
            ks,
        })
    }

    pub fn galois(&self) -> &GaloisGroup {
        &self.galois
    }

    pub fn components(&self) -> &[BranchComponent] {
        &self.components
    }

    pub fn n(&self) -> usize {
        self.per_factor.len()
    }

    /// Number of characters of `Ḡ`.
    pub fn character_count(&self) -> usize {
        self.ks.len()
    }

    pub fn character(&self, c: usize) -> CharTuple {
        self.galois.character(c)
    }

    pub fn character_index(&self, chi: &[Character]) -> Option<usize> {
        let t = self.galois.chars_to_tuple(chi);
        self.galois.character_indices().binary_search(&t).ok()
    }

    pub fn k(&self, c: usize, b: usize) -> u32 {
        self.ks[c][b]
    }

    /// `deg_j L_χ = Σ_i k_{ij}/n_{ij}`, asserted integral.
    pub fn l_degree(&self, c: usize, j: usize) -> Result<i64> {
        let l = self.per_factor[j]
            .iter()
            .fold(1i64, |acc, &b| num_integer::lcm(acc, self.components[b].order as i64));
        let num: i64 = self.per_factor[j]
            .iter()
            .map(|&b| self.ks[c][b] as i64 * (l / self.components[b].order as i64))
            .sum();
        if num % l != 0 {
            return Err(Error::Consistency(format!(
                "deg L_χ on factor {} is not an integer for character {:?}",
                j + 1,
                self.character(c)
            )));
        }
        Ok(num / l)
    }

    /// `r^j_{m,χ} = −2m + Σ_i (μ_{ij} − k_{ij}/n_{ij})` for every factor.
    pub fn multidegree(&self, m: u32, c: usize) -> Result<Vec<i64>> {
        (0..self.n())
            .map(|j| {
                let mu: i64 = self.per_factor[j]
                    .iter()
                    .map(|&b| r_mu(m, self.components[b].order, self.ks[c][b]).1)
                    .sum();
                Ok(-2 * m as i64 + mu - self.l_degree(c, j)?)
            })
            .collect()
    }

    pub fn eigensheaf(&self, m: u32, c: usize) -> Result<EigensheafDegrees> {
        let degrees = self.multidegree(m, c)?;
        Ok(EigensheafDegrees {
            character: self.character(c),
            m,
            dimension: box_dimension(&degrees),
            degrees,
        })
    }

    /// Characters with every `r^j ≥ 0`, with their multidegrees.
    pub fn constituents(&self, m: u32) -> Result<Vec<(usize, Vec<i64>)>> {
        let mut out = Vec::new();
        for c in 0..self.character_count() {
            let deg = self.multidegree(m, c)?;
            if deg.iter().all(|&r| r >= 0) {
                out.push((c, deg));
            }
        }
        Ok(out)
    }

    /// `P_m = Σ_χ ∏_j max(r^j + 1, 0)`.
    pub fn pluri_dimension(&self, m: u32) -> Result<u64> {
        Ok(self.constituents(m)?.iter().map(|(_, d)| box_dimension(d)).sum())
    }

    /// Whether the sections of `K_X^{⊗m}` have no common zero.
    ///
    /// Off the branch locus every constituent contributes nowhere-vanishing
    /// sections. Over a branch stratum (at most one branch point per factor)
    /// a section of the `χ`-summand vanishes unless `r(m, B, χ) = 0` for
    /// every branch point `B` of the stratum.
    pub fn base_point_free(&self, m: u32) -> Result<bool> {
        let constituents = self.constituents(m)?;
        if constituents.is_empty() {
            return Ok(false);
        }
        // for each constituent and factor: which branch points have r = 0
        let zero: Vec<Vec<Vec<bool>>> = constituents
            .iter()
            .map(|(c, _)| {
                self.per_factor
                    .iter()
                    .map(|pts| {
                        pts.iter()
                            .map(|&b| r_mu(m, self.components[b].order, self.ks[*c][b]).0 == 0)
                            .collect()
                    })
                    .collect()
            })
            .collect();
        // choice[j] = 0 means no point of factor j, otherwise point choice[j]-1
        let n = self.n();
        let mut choice = vec![0usize; n];
        loop {
            let mut j = n;
            loop {
                if j == 0 {
                    return Ok(true);
                }
                j -= 1;
                choice[j] += 1;
                if choice[j] <= self.per_factor[j].len() {
                    break;
                }
                choice[j] = 0;
            }
            let covered = zero.iter().any(|z| {
                (0..n).all(|j| choice[j] == 0 || z[j][choice[j] - 1])
            });
            if !covered {
                return Ok(false);
            }
        }
    }

    /// `deg_j L_{χ⁻¹} + deg_j L_χ = #{i : k_{ij} ≠ 0}` on every factor.
    pub fn dual_relation_holds(&self, c: usize) -> Result<bool> {
        let chi = self.character(c);
        let inv = self
            .character_index(&self.galois.char_neg(&chi))
            .ok_or_else(|| Error::Consistency("inverse character missing".into()))?;
        for j in 0..self.n() {
            let lhs = self.l_degree(c, j)? + self.l_degree(inv, j)?;
            let rhs = self.per_factor[j].iter().filter(|&&b| self.ks[c][b] != 0).count() as i64;
            if lhs != rhs {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn box_dimension(degrees: &[i64]) -> u64 {
    degrees.iter().map(|&r| (r + 1).max(0) as u64).product()
}

pub fn eigensheaf_multidegree(d: &AlgebraicDatum, m: u32, chi: &[Character]) -> Result<EigensheafDegrees> {
    let dec = Decomposition::new(d)?;
    let c = dec
        .character_index(chi)
        .ok_or_else(|| Error::Scope(format!("{chi:?} is not a character of the Galois group")))?;
    dec.eigensheaf(m, c)
}

pub fn pluri_dimension(d: &AlgebraicDatum, m: u32) -> Result<u64> {
    Decomposition::new(d)?.pluri_dimension(m)
}

pub fn base_point_free(d: &AlgebraicDatum, m: u32) -> Result<bool> {
    Decomposition::new(d)?.base_point_free(m)
}

pub fn dual_character_relation_check(d: &AlgebraicDatum, chi: &[Character]) -> Result<bool> {
    let dec = Decomposition::new(d)?;
    let c = dec
        .character_index(chi)
        .ok_or_else(|| Error::Scope(format!("{chi:?} is not a character of the Galois group")))?;
    dec.dual_relation_holds(c)
}

/// Every eigensheaf at level `m`, in character order.
pub fn eigensheaf_table(d: &AlgebraicDatum, m: u32) -> Result<Vec<EigensheafDegrees>> {
    let dec = Decomposition::new(d)?;
    (0..dec.character_count()).map(|c| dec.eigensheaf(m, c)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn r_mu_examples() {
        assert_eq!(r_mu(1, 2, 0), (1, 0));
        assert_eq!(r_mu(2, 2, 1), (1, 1));
        assert_eq!(r_mu(3, 4, 2), (3, 2));
        assert_eq!(r_mu(0, 3, 0), (0, 0));
        assert_eq!(r_mu(1, 3, 2), (1, 1));
    }

    #[test]
    fn r_mu_ranges() {
        for n in 1..9u32 {
            for k in 0..n {
                for m in 0..12u32 {
                    let (r, mu) = r_mu(m, n, k);
                    assert!(r < n);
                    assert!((0..=m as i64).contains(&mu));
                    // m = μ·|H| + … rearranged: k − m ≡ r (mod |H|)
                    assert_eq!((k as i64 - m as i64 - r as i64).rem_euclid(n as i64), 0);
                }
            }
        }
    }
}
