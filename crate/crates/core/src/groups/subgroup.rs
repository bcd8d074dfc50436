use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::{smith_normal_form, AbelianGroup, Character, GroupElement};

/// A subgroup of `parent`, stored with its full sorted element list.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Subgroup {
    parent: AbelianGroup,
    generators: Vec<GroupElement>,
    elements: Vec<GroupElement>,
}

impl std::fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "⟨{:?}⟩ ≤ {}", self.generators, self.parent)
    }
}

impl Subgroup {
    pub fn trivial(parent: &AbelianGroup) -> Self {
        Subgroup {
            parent: parent.clone(),
            generators: Vec::new(),
            elements: vec![parent.identity()],
        }
    }

    pub fn whole(parent: &AbelianGroup) -> Self {
        subgroup_generated(parent, &parent.generators()).expect("standard generators")
    }

    /// Builds a subgroup from a set that is already closed under addition.
    /// A small generating set is chosen greedily in lexicographic order.
    pub(crate) fn from_closed_set(parent: &AbelianGroup, elements: BTreeSet<GroupElement>) -> Self {
        let mut generators = Vec::new();
        let mut span: BTreeSet<GroupElement> = [parent.identity()].into();
        for g in &elements {
            if !span.contains(g) {
                generators.push(g.clone());
                span = closure(parent, &generators);
            }
        }
        Subgroup {
            parent: parent.clone(),
            generators,
            elements: elements.into_iter().collect(),
        }
    }

    pub fn parent(&self) -> &AbelianGroup {
        &self.parent
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn order(&self) -> u32 {
        self.elements.len() as u32
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.elements.binary_search(g).is_ok()
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let common: BTreeSet<GroupElement> = self
            .elements
            .iter()
            .filter(|g| other.contains(g))
            .cloned()
            .collect();
        Subgroup::from_closed_set(&self.parent, common)
    }

    /// `χ` restricted to this subgroup is trivial.
    pub fn annihilated_by(&self, chi: &Character) -> bool {
        self.generators
            .iter()
            .all(|g| self.parent.eval(chi, g).is_zero())
    }
}

fn closure(parent: &AbelianGroup, gens: &[GroupElement]) -> BTreeSet<GroupElement> {
    let mut set: BTreeSet<GroupElement> = [parent.identity()].into();
    let mut frontier = vec![parent.identity()];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = parent.add(&x, g);
            if set.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    set
}

pub fn subgroup_generated(parent: &AbelianGroup, gens: &[GroupElement]) -> Result<Subgroup> {
    for g in gens {
        parent.check(g)?;
    }
    let elements = closure(parent, gens);
    Ok(Subgroup {
        parent: parent.clone(),
        generators: gens.to_vec(),
        elements: elements.into_iter().collect(),
    })
}

/// All cyclic subgroups, each once. The stored generator is the
/// lexicographically least element of maximal order.
pub fn cyclic_subgroups(parent: &AbelianGroup) -> Vec<Subgroup> {
    let mut seen: BTreeSet<Vec<GroupElement>> = BTreeSet::new();
    let mut out = Vec::new();
    for g in parent.elements() {
        let elements: Vec<GroupElement> = closure(parent, std::slice::from_ref(&g)).into_iter().collect();
        if !seen.insert(elements.clone()) {
            continue;
        }
        let top = elements
            .iter()
            .map(|x| parent.element_order(x))
            .max()
            .unwrap_or(1);
        let generator = elements
            .iter()
            .find(|x| parent.element_order(x) == top)
            .cloned()
            .expect("nonempty");
        let generators = if top == 1 { Vec::new() } else { vec![generator] };
        out.push(Subgroup {
            parent: parent.clone(),
            generators,
            elements,
        });
    }
    out.sort_by(|a, b| (a.order(), &a.elements).cmp(&(b.order(), &b.elements)));
    out
}

/// The projection `G → G/K`, with the quotient in invariant-factor form.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuotientMap {
    source: AbelianGroup,
    target: AbelianGroup,
    kernel: Subgroup,
    transform: Vec<Vec<i64>>,
    kept: Vec<usize>,
}

impl std::fmt::Debug for QuotientMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} → {}", self.source, self.target)
    }
}

/// `G/K` via the Smith normal form of the relation matrix
/// `diag(d₁, …, d_k)` stacked on the generators of `K`.
pub fn quotient(parent: &AbelianGroup, kernel: &Subgroup) -> Result<QuotientMap> {
    if kernel.parent() != parent {
        return Err(Error::MalformedGroup(format!(
            "subgroup of {} used as a subgroup of {parent}",
            kernel.parent()
        )));
    }
    let k = parent.rank();
    let mut rel: Vec<Vec<i64>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| if i == j { parent.invariant_factors()[i] as i64 } else { 0 })
                .collect()
        })
        .collect();
    for g in kernel.generators() {
        rel.push(g.coords().iter().map(|&x| x as i64).collect());
    }
    let (transform, kept, factors) = if k == 0 {
        (Vec::new(), Vec::new(), Vec::new())
    } else {
        let snf = smith_normal_form(&rel, k);
        let kept: Vec<usize> = (0..k).filter(|&j| snf.diagonal[j] > 1).collect();
        let factors: Vec<u32> = kept.iter().map(|&j| snf.diagonal[j] as u32).collect();
        (snf.right, kept, factors)
    };
    let target = AbelianGroup::new(&factors)?;
    Ok(QuotientMap {
        source: parent.clone(),
        target,
        kernel: kernel.clone(),
        transform,
        kept,
    })
}

impl QuotientMap {
    pub fn source(&self) -> &AbelianGroup {
        &self.source
    }

    pub fn target(&self) -> &AbelianGroup {
        &self.target
    }

    pub fn kernel(&self) -> &Subgroup {
        &self.kernel
    }

    pub fn project(&self, g: &GroupElement) -> GroupElement {
        let coords: Vec<i64> = self
            .kept
            .iter()
            .map(|&j| {
                g.coords()
                    .iter()
                    .zip(&self.transform)
                    .map(|(&x, row)| x as i64 * row[j])
                    .sum()
            })
            .collect();
        self.target.element_from_ints(&coords)
    }

    /// `χ ∘ π` as a character of the source group.
    pub fn pullback(&self, chi: &Character) -> Character {
        let exps = self
            .source
            .generators()
            .iter()
            .zip(self.source.invariant_factors())
            .map(|(e, &d)| {
                self.target
                    .eval(chi, &self.project(e))
                    .exponent_over(d)
                    .expect("pullback of a character is a character")
            })
            .collect();
        Character(exps)
    }

    /// Some preimage of `x` (the lexicographically least one).
    pub fn lift(&self, x: &GroupElement) -> Option<GroupElement> {
        self.source.elements().find(|g| &self.project(g) == x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(v: &[u32]) -> GroupElement {
        GroupElement(v.to_vec())
    }

    #[test]
    fn generated_subgroups() {
        let g = AbelianGroup::new(&[2, 2, 2]).unwrap();
        assert!(subgroup_generated(&g, &[]).unwrap().is_trivial());
        assert_eq!(subgroup_generated(&g, &[el(&[1, 0, 0])]).unwrap().order(), 2);
        let h = AbelianGroup::new(&[2, 4]).unwrap();
        assert_eq!(subgroup_generated(&h, &[el(&[1, 0]), el(&[0, 1])]).unwrap().order(), 8);
        assert!(subgroup_generated(&h, &[el(&[2, 0])]).is_err());
    }

    #[test]
    fn quotient_examples() {
        let g = AbelianGroup::new(&[2, 2, 2]).unwrap();
        let triv = Subgroup::trivial(&g);
        let q = quotient(&g, &triv).unwrap();
        assert_eq!(q.target(), &g);
        for x in g.elements() {
            assert_eq!(q.kernel().contains(&x), q.project(&x) == q.target().identity());
        }

        let k = subgroup_generated(&g, &[el(&[1, 1, 1])]).unwrap();
        let q = quotient(&g, &k).unwrap();
        assert_eq!(q.target().invariant_factors(), &[2, 2]);

        let q = quotient(&g, &Subgroup::whole(&g)).unwrap();
        assert!(q.target().is_trivial());
    }

    #[test]
    fn quotient_of_mixed_group() {
        let g = AbelianGroup::new(&[2, 4]).unwrap();
        let k = subgroup_generated(&g, &[el(&[1, 2])]).unwrap();
        let q = quotient(&g, &k).unwrap();
        assert_eq!(q.target().invariant_factors(), &[4]);
        let k = subgroup_generated(&g, &[el(&[0, 2])]).unwrap();
        let q = quotient(&g, &k).unwrap();
        assert_eq!(q.target().invariant_factors(), &[2, 2]);
    }

    #[test]
    fn cyclic_subgroup_counts() {
        assert_eq!(cyclic_subgroups(&AbelianGroup::new(&[2, 2, 2]).unwrap()).len(), 8);
        assert_eq!(cyclic_subgroups(&AbelianGroup::new(&[4]).unwrap()).len(), 3);
        let c = cyclic_subgroups(&AbelianGroup::new(&[2, 4]).unwrap());
        // Z2 x Z4 has 8 subgroups but only 6 cyclic ones; brute force: distinct element sets of ⟨g⟩
        let g = AbelianGroup::new(&[2, 4]).unwrap();
        let mut sets = BTreeSet::new();
        for x in g.elements() {
            let mut s = BTreeSet::new();
            for k in 0..4 {
                s.insert(g.scale(k, &x));
            }
            sets.insert(s);
        }
        assert_eq!(sets.len(), 6);
        assert_eq!(c.len(), sets.len());
        let found: BTreeSet<BTreeSet<GroupElement>> =
            c.iter().map(|s| s.elements().iter().cloned().collect()).collect();
        assert_eq!(found, sets);
    }

    #[test]
    fn canonical_cyclic_generator() {
        let g = AbelianGroup::new(&[4]).unwrap();
        let c = cyclic_subgroups(&g);
        let full = c.iter().find(|s| s.order() == 4).unwrap();
        assert_eq!(full.generators(), &[el(&[1])]);
    }

    #[test]
    fn pullback_is_composition() {
        let g = AbelianGroup::new(&[2, 4]).unwrap();
        let k = subgroup_generated(&g, &[el(&[1, 2])]).unwrap();
        let q = quotient(&g, &k).unwrap();
        for chi in q.target().characters() {
            let pulled = q.pullback(&chi);
            for x in g.elements() {
                assert_eq!(g.eval(&pulled, &x), q.target().eval(&chi, &q.project(&x)));
            }
            assert!(k.annihilated_by(&pulled));
        }
    }
}
