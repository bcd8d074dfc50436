//! The Galois group `Ḡ = (G₁ × … × G_n)/G` of the cover
//! `C₁ × … × C_n → (C₁/G₁) × … × (C_n/G_n)` through `X`.
//!
//! Elements are tuples `(x₁, …, x_n)` with `x_i ∈ G_i`, taken modulo the
//! diagonal image of `G`; characters are tuples `(χ₁, …, χ_n)` with
//! `χ_i ∈ Irr(G_i)` whose pullbacks to `G` sum to zero.

use std::collections::{BTreeMap, BTreeSet};

use crate::covering::AlgebraicDatum;
use crate::groups::{AbelianGroup, Character, GroupElement, QZValue, QuotientMap};

/// A character of `Ḡ`, one component per factor.
pub type CharTuple = Vec<Character>;
/// An element of `G₁ × … × G_n`, read in `Ḡ`.
pub type ElementTuple = Vec<GroupElement>;

#[derive(Clone, Debug)]
pub struct GaloisGroup {
    ambient: AbelianGroup,
    projections: Vec<QuotientMap>,
    tuples: Vec<Vec<usize>>,
    factor_characters: Vec<Vec<Character>>,
}

impl GaloisGroup {
    pub fn new(datum: &AlgebraicDatum) -> Self {
        Self::from_projections(datum.group(), datum.projections())
    }

    pub fn from_projections(ambient: &AbelianGroup, projections: &[QuotientMap]) -> Self {
        let factor_characters: Vec<Vec<Character>> =
            projections.iter().map(|q| q.target().characters()).collect();
        let pullbacks: Vec<Vec<usize>> = projections
            .iter()
            .zip(&factor_characters)
            .map(|(q, chars)| {
                chars
                    .iter()
                    .map(|c| ambient.index_of(&GroupElement(q.pullback(c).0)))
                    .collect()
            })
            .collect();
        let n = projections.len();
        let tuples = if n == 0 {
            vec![Vec::new()]
        } else {
            // the pullback is injective, so the last component is determined
            let last: BTreeMap<usize, usize> = pullbacks[n - 1]
                .iter()
                .enumerate()
                .map(|(c, &p)| (p, c))
                .collect();
            let mut out = Vec::new();
            let mut prefix = Vec::with_capacity(n);
            collect_tuples(ambient, &pullbacks, &last, 0, ambient.identity(), &mut prefix, &mut out);
            out
        };
        GaloisGroup {
            ambient: ambient.clone(),
            projections: projections.to_vec(),
            tuples,
            factor_characters,
        }
    }

    pub fn n(&self) -> usize {
        self.projections.len()
    }

    pub fn factor(&self, i: usize) -> &AbelianGroup {
        self.projections[i].target()
    }

    pub fn ambient(&self) -> &AbelianGroup {
        &self.ambient
    }

    pub fn projections(&self) -> &[QuotientMap] {
        &self.projections
    }

    /// `|Ḡ| = ∏|G_i| / |image of G|`.
    pub fn order(&self) -> usize {
        self.tuples.len()
    }

    /// Number of characters of `Ḡ`; each is stored as per-factor indices
    /// into `factor(i).characters()`.
    pub fn character_indices(&self) -> &[Vec<usize>] {
        &self.tuples
    }

    pub fn character(&self, idx: usize) -> CharTuple {
        self.tuple_to_chars(&self.tuples[idx])
    }

    pub fn characters(&self) -> Vec<CharTuple> {
        self.tuples.iter().map(|t| self.tuple_to_chars(t)).collect()
    }

    pub fn tuple_to_chars(&self, t: &[usize]) -> CharTuple {
        t.iter()
            .enumerate()
            .map(|(i, &c)| self.factor_characters[i][c].clone())
            .collect()
    }

    pub fn chars_to_tuple(&self, chi: &[Character]) -> Vec<usize> {
        chi.iter()
            .enumerate()
            .map(|(i, c)| self.factor(i).index_of(&GroupElement(c.0.clone())))
            .collect()
    }

    /// The character tuple is trivial on the diagonal image of `G`.
    pub fn is_character(&self, chi: &[Character]) -> bool {
        if chi.len() != self.n() {
            return false;
        }
        if !chi.iter().enumerate().all(|(i, c)| self.factor(i).contains_character(c)) {
            return false;
        }
        self.ambient
            .generators()
            .iter()
            .all(|g| self.eval(chi, &self.diagonal(g)).is_zero())
    }

    pub fn trivial_character(&self) -> CharTuple {
        (0..self.n()).map(|i| self.factor(i).trivial_character()).collect()
    }

    pub fn char_add(&self, a: &[Character], b: &[Character]) -> CharTuple {
        a.iter()
            .zip(b)
            .enumerate()
            .map(|(i, (x, y))| self.factor(i).char_add(x, y))
            .collect()
    }

    pub fn char_neg(&self, a: &[Character]) -> CharTuple {
        a.iter().enumerate().map(|(i, x)| self.factor(i).char_neg(x)).collect()
    }

    /// `χ(x) = Σ χ_i(x_i)`.
    pub fn eval(&self, chi: &[Character], x: &[GroupElement]) -> QZValue {
        chi.iter()
            .zip(x)
            .enumerate()
            .fold(QZValue::ZERO, |acc, (i, (c, g))| acc + self.factor(i).eval(c, g))
    }

    /// `g ↦ (ψ₁(g), …, ψ_n(g))`.
    pub fn diagonal(&self, g: &GroupElement) -> ElementTuple {
        self.projections.iter().map(|q| q.project(g)).collect()
    }

    /// `(0, …, h, …, 0)` with `h` in slot `j`.
    pub fn embed(&self, j: usize, h: &GroupElement) -> ElementTuple {
        (0..self.n())
            .map(|i| if i == j { h.clone() } else { self.factor(i).identity() })
            .collect()
    }

    pub fn add(&self, a: &[GroupElement], b: &[GroupElement]) -> ElementTuple {
        a.iter()
            .zip(b)
            .enumerate()
            .map(|(i, (x, y))| self.factor(i).add(x, y))
            .collect()
    }

    pub fn scale(&self, k: i64, a: &[GroupElement]) -> ElementTuple {
        a.iter().enumerate().map(|(i, x)| self.factor(i).scale(k, x)).collect()
    }

    /// The least representative of the class of `x` modulo the diagonal.
    pub fn canonical(&self, x: &[GroupElement]) -> ElementTuple {
        self.ambient
            .elements()
            .map(|g| {
                x.iter()
                    .zip(&self.projections)
                    .enumerate()
                    .map(|(i, (xi, q))| self.factor(i).sub(xi, &q.project(&g)))
                    .collect::<ElementTuple>()
            })
            .min()
            .expect("nonempty group")
    }

    /// Order of the class of `x` in `Ḡ`.
    pub fn element_order(&self, x: &[GroupElement]) -> u32 {
        let id = self.canonical(&self.scale(0, x));
        let mut k = 1;
        let mut y = x.to_vec();
        while self.canonical(&y) != id {
            y = self.add(&y, x);
            k += 1;
        }
        k
    }

    /// All elements of `Ḡ` as canonical representatives.
    pub fn elements(&self) -> Vec<ElementTuple> {
        let mut out = BTreeSet::new();
        let factor_elems: Vec<Vec<GroupElement>> =
            (0..self.n()).map(|i| self.factor(i).elements().collect()).collect();
        let mut idx = vec![0usize; self.n()];
        loop {
            let x: ElementTuple = idx.iter().enumerate().map(|(i, &k)| factor_elems[i][k].clone()).collect();
            out.insert(self.canonical(&x));
            let mut i = self.n();
            loop {
                if i == 0 {
                    return out.into_iter().collect();
                }
                i -= 1;
                idx[i] += 1;
                if idx[i] < factor_elems[i].len() {
                    break;
                }
                idx[i] = 0;
            }
        }
    }
}

fn collect_tuples(
    ambient: &AbelianGroup,
    pullbacks: &[Vec<usize>],
    last: &BTreeMap<usize, usize>,
    depth: usize,
    sum: GroupElement,
    prefix: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    let n = pullbacks.len();
    if depth == n - 1 {
        let need = ambient.index_of(&ambient.neg(&sum));
        if let Some(&c) = last.get(&need) {
            let mut t = prefix.clone();
            t.push(c);
            out.push(t);
        }
        return;
    }
    for (c, &p) in pullbacks[depth].iter().enumerate() {
        prefix.push(c);
        let s = ambient.add(&sum, &ambient.element_at(p));
        collect_tuples(ambient, pullbacks, last, depth + 1, s, prefix, out);
        prefix.pop();
    }
}
