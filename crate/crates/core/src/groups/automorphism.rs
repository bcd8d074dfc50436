use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::{AbelianGroup, GroupElement};

/// Group orders above this are refused by [`automorphisms`] unless the
/// caller raises the ceiling.
pub const DEFAULT_AUTOMORPHISM_CEILING: u32 = 64;

/// An automorphism, determined by the images of the standard generators.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Automorphism {
    images: Vec<GroupElement>,
}

impl Automorphism {
    pub fn identity(group: &AbelianGroup) -> Self {
        Automorphism {
            images: group.generators(),
        }
    }

    /// Builds the endomorphism `e_i ↦ images[i]` and checks that it is
    /// well defined and bijective.
    pub fn from_images(group: &AbelianGroup, images: Vec<GroupElement>) -> Result<Self> {
        if images.len() != group.rank() {
            return Err(Error::MalformedGroup(format!(
                "{} generator images given for a group of rank {}",
                images.len(),
                group.rank()
            )));
        }
        for (img, &d) in images.iter().zip(group.invariant_factors()) {
            group.check(img)?;
            if d % group.element_order(img) != 0 {
                return Err(Error::MalformedGroup(format!(
                    "image {img:?} has order not dividing {d}"
                )));
            }
        }
        let auto = Automorphism { images };
        let mut seen = vec![false; group.order() as usize];
        for g in group.elements() {
            let idx = group.index_of(&auto.apply(group, &g));
            if std::mem::replace(&mut seen[idx], true) {
                return Err(Error::MalformedGroup("endomorphism is not bijective".into()));
            }
        }
        Ok(auto)
    }

    pub fn images(&self) -> &[GroupElement] {
        &self.images
    }

    pub fn apply(&self, group: &AbelianGroup, g: &GroupElement) -> GroupElement {
        let mut acc = group.identity();
        for (&c, img) in g.coords().iter().zip(&self.images) {
            acc = group.add(&acc, &group.scale(c as i64, img));
        }
        acc
    }

    /// The automorphism as a permutation of element indices.
    pub fn permutation(&self, group: &AbelianGroup) -> Vec<usize> {
        group
            .elements()
            .map(|g| group.index_of(&self.apply(group, &g)))
            .collect()
    }
}

/// Raw index permutations of every automorphism, in lexicographic order
/// of the generator images.
///
/// Images of `e₁, e₂, …` are fixed one at a time; a partial choice survives
/// only while the chosen images generate a subgroup of order `d₁⋯d_t`,
/// which is exactly injectivity on `⟨e₁, …, e_t⟩`.
pub(crate) fn automorphism_permutations(group: &AbelianGroup, ceiling: u32) -> Result<Arc<Vec<Vec<usize>>>> {
    if group.order() > ceiling {
        return Err(Error::CeilingExceeded {
            order: group.order(),
            ceiling,
        });
    }
    static CACHE: OnceLock<Mutex<HashMap<AbelianGroup, Arc<Vec<Vec<usize>>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().expect("cache lock").get(group) {
        return Ok(hit.clone());
    }
    let perms = Arc::new(permutations_uncached(group));
    // (Z/2)⁵ alone would hold ~10⁷ permutations of 32 points
    if perms.len() * group.order() as usize <= CACHE_LIMIT {
        cache.lock().expect("cache lock").insert(group.clone(), perms.clone());
    }
    Ok(perms)
}

/// Largest number of stored image indices for a cached group.
const CACHE_LIMIT: usize = 1 << 22;

fn permutations_uncached(group: &AbelianGroup) -> Vec<Vec<usize>> {
    let n = group.order() as usize;
    let elems: Vec<GroupElement> = group.elements().collect();
    let table: Vec<usize> = (0..n * n)
        .map(|ab| group.index_of(&group.add(&elems[ab / n], &elems[ab % n])))
        .collect();
    let add = |a: usize, b: usize| table[a * n + b];
    let factors = group.invariant_factors();
    let k = group.rank();
    let candidates: Vec<Vec<usize>> = factors
        .iter()
        .map(|&d| (0..n).filter(|&x| d % group.element_order(&elems[x]) == 0).collect())
        .collect();

    // `partial[t]` maps each element of ⟨e₁..e_t⟩ (by its coordinates
    // 0..t, enumerated in mixed radix) to its image
    fn rec(
        t: usize,
        k: usize,
        factors: &[u32],
        candidates: &[Vec<usize>],
        image_of_prefix: Vec<usize>,
        add: &dyn Fn(usize, usize) -> usize,
        n: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        if t == k {
            // image_of_prefix is indexed by the full mixed-radix index
            out.push(image_of_prefix);
            return;
        }
        let d = factors[t] as usize;
        for &img in &candidates[t] {
            // extend: element with last coordinate c maps to prefix image + c·img
            let mut next = Vec::with_capacity(image_of_prefix.len() * d);
            let mut multiples = vec![0usize; d];
            for c in 1..d {
                multiples[c] = add(multiples[c - 1], img);
            }
            for &p in &image_of_prefix {
                for &mc in &multiples {
                    next.push(add(p, mc));
                }
            }
            let mut seen = vec![false; n];
            if next.iter().all(|&y| !std::mem::replace(&mut seen[y], true)) {
                rec(t + 1, k, factors, candidates, next, add, n, out);
            }
        }
    }
    let mut out = Vec::new();
    rec(0, k, factors, &candidates, vec![0], &add, n, &mut out);
    out
}

/// All automorphisms of `group`, by brute force over generator images.
pub fn automorphisms(group: &AbelianGroup, ceiling: u32) -> Result<Vec<Automorphism>> {
    let perms = automorphism_permutations(group, ceiling)?;
    let gens: Vec<usize> = group.generators().iter().map(|g| group.index_of(g)).collect();
    Ok(perms
        .iter()
        .map(|p| Automorphism {
            images: gens.iter().map(|&i| group.element_at(p[i])).collect(),
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn automorphism_counts() {
        let count = |f: &[u32]| {
            automorphisms(&AbelianGroup::new(f).unwrap(), DEFAULT_AUTOMORPHISM_CEILING)
                .unwrap()
                .len()
        };
        assert_eq!(count(&[2, 2, 2]), 168);
        assert_eq!(count(&[4]), 2);
        assert_eq!(count(&[]), 1);
        assert_eq!(count(&[3, 3]), 48);
        assert_eq!(count(&[2, 4]), 8);
        assert_eq!(count(&[2, 2, 2, 2]), 20160);
    }

    #[test]
    fn ceiling_is_enforced() {
        let g = AbelianGroup::new(&[2, 2, 2, 2]).unwrap();
        assert!(matches!(
            automorphisms(&g, 8),
            Err(Error::CeilingExceeded { order: 16, ceiling: 8 })
        ));
    }

    #[test]
    fn automorphisms_are_homomorphisms() {
        let g = AbelianGroup::new(&[2, 4]).unwrap();
        for a in automorphisms(&g, 64).unwrap() {
            for x in g.elements() {
                for y in g.elements() {
                    assert_eq!(
                        a.apply(&g, &g.add(&x, &y)),
                        g.add(&a.apply(&g, &x), &a.apply(&g, &y))
                    );
                }
            }
        }
    }

    #[test]
    fn from_images_rejects_non_bijections() {
        let g = AbelianGroup::new(&[2, 2]).unwrap();
        let e = GroupElement(vec![1, 0]);
        assert!(Automorphism::from_images(&g, vec![e.clone(), e]).is_err());
        let ok = Automorphism::from_images(&g, vec![GroupElement(vec![0, 1]), GroupElement(vec![1, 1])]);
        assert!(ok.is_ok());
    }
}
