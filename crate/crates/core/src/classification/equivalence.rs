//! Equivalence of algebraic data under automorphisms of `G`, permutations
//! of entries within a vector, and permutations of the factor slots.

use crate::covering::AlgebraicDatum;
use crate::error::{Error, Result};
use crate::groups::automorphism_permutations;
use crate::groups::table::{bits, GroupTable, Mask, MAX_TABLE_ORDER};

/// Per slot: the kernel as a mask of element indices and the sorted
/// smallest coset members of the lifted branch entries.
pub type CanonicalForm = Vec<(Mask, Vec<u8>)>;

fn coset_min(t: &GroupTable, kernel: Mask, x: usize) -> u8 {
    bits(kernel).map(|k| t.add(x, k)).min().expect("kernel contains 0") as u8
}

/// Lifts of the branch entries, as element indices of `G`.
fn lifts(t: &GroupTable, d: &AlgebraicDatum) -> Result<Vec<(Mask, Vec<usize>)>> {
    if !d.is_spherical() {
        return Err(Error::Scope("equivalence is implemented for quotient genus 0".into()));
    }
    (0..d.n())
        .map(|i| {
            let q = &d.projections()[i];
            let kernel = d.kernels()[i].elements().iter().fold(0, |m, g| m | 1 << t.index(g));
            let entries = d.vectors()[i]
                .branch()
                .iter()
                .map(|h| {
                    let g = q
                        .lift(h)
                        .ok_or_else(|| Error::Consistency(format!("no lift of {h:?} to {}", d.group())))?;
                    Ok(t.index(&g))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok((kernel, entries))
        })
        .collect()
}

fn encode_slot(t: &GroupTable, perm: &[usize], slot: &(Mask, Vec<usize>)) -> (Mask, Vec<u8>) {
    let (kernel, entries) = slot;
    let k = bits(*kernel).fold(0, |m, x| m | 1 << perm[x]);
    let mut v: Vec<u8> = entries.iter().map(|&x| coset_min(t, k, perm[x])).collect();
    v.sort_unstable();
    (k, v)
}

fn encode(t: &GroupTable, perm: &[usize], slots: &[(Mask, Vec<usize>)], order: &[usize]) -> CanonicalForm {
    order.iter().map(|&j| encode_slot(t, perm, &slots[j])).collect()
}

/// The datum's own encoding, without minimizing over any moves.
pub(crate) fn raw_encoding(d: &AlgebraicDatum) -> CanonicalForm {
    let t = GroupTable::new(d.group());
    let slots = lifts(&t, d).expect("classified data are spherical");
    let id: Vec<usize> = (0..t.n).collect();
    encode(&t, &id, &slots, &(0..d.n()).collect::<Vec<_>>())
}

/// The least encoding over `Aut(G) × S_n`; entry order is already
/// forgotten by sorting.
pub fn canonical_form(d: &AlgebraicDatum) -> Result<CanonicalForm> {
    if d.group().order() > MAX_TABLE_ORDER {
        return Err(Error::CeilingExceeded {
            order: d.group().order(),
            ceiling: MAX_TABLE_ORDER,
        });
    }
    let t = GroupTable::new(d.group());
    let slots = lifts(&t, d)?;
    let auts = automorphism_permutations(d.group(), MAX_TABLE_ORDER)?;
    // slot by slot: the least first slot over every (automorphism, slot),
    // then the least second slot among the pairs attaining it, and so on
    let mut candidates: Vec<(usize, Vec<usize>)> = (0..auts.len()).map(|a| (a, (0..d.n()).collect())).collect();
    let mut form = CanonicalForm::with_capacity(d.n());
    for _ in 0..d.n() {
        let mut best: Option<(Mask, Vec<u8>)> = None;
        let mut next: Vec<(usize, Vec<usize>)> = Vec::new();
        for (a, rest) in &candidates {
            for (pos, &j) in rest.iter().enumerate() {
                let e = encode_slot(&t, &auts[*a], &slots[j]);
                let keep = match &best {
                    Some(b) if e > *b => false,
                    Some(b) if e == *b => true,
                    _ => {
                        best = Some(e);
                        next.clear();
                        true
                    }
                };
                if keep {
                    let mut r = rest.clone();
                    r.remove(pos);
                    next.push((*a, r));
                }
            }
        }
        form.push(best.expect("identity automorphism exists"));
        candidates = next;
    }
    Ok(form)
}

pub fn equivalent(a: &AlgebraicDatum, b: &AlgebraicDatum) -> Result<bool> {
    if a.group() != b.group() || a.n() != b.n() {
        return Ok(false);
    }
    Ok(canonical_form(a)? == canonical_form(b)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covering::BranchingType;
    use crate::groups::{AbelianGroup, Automorphism, GroupElement};

    fn genus_five(v1: &[[u32; 3]]) -> AlgebraicDatum {
        let g = AbelianGroup::new(&[2, 2, 2]).unwrap();
        let e = |v: &[u32; 3]| GroupElement(v.to_vec());
        let v2 = [[1, 0, 1], [1, 0, 1], [1, 1, 0], [1, 1, 0], [1, 1, 1], [1, 1, 1]];
        let v3 = [[1, 0, 1], [1, 0, 1], [0, 1, 1], [0, 1, 1], [1, 1, 1], [1, 1, 1]];
        let branch: Vec<Vec<GroupElement>> = [v1, &v2[..], &v3[..]]
            .iter()
            .map(|v| v.iter().map(e).collect())
            .collect();
        let t: BranchingType = "[0; 2,2,2,2,2,2]".parse().unwrap();
        AlgebraicDatum::from_ambient(g, &[vec![], vec![], vec![]], &[t.clone(), t.clone(), t], &[vec![], vec![], vec![]], &branch)
            .unwrap()
    }

    const V1: [[u32; 3]; 6] = [[1, 0, 0], [1, 0, 0], [0, 1, 0], [0, 1, 0], [0, 0, 1], [0, 0, 1]];

    #[test]
    fn entry_order_is_irrelevant() {
        let mut rev = V1;
        rev.reverse();
        assert!(equivalent(&genus_five(&V1), &genus_five(&rev)).unwrap());
    }

    #[test]
    fn simultaneous_automorphism_and_slot_swap() {
        let d = genus_five(&V1);
        let g = d.group().clone();
        let a = Automorphism::from_images(
            &g,
            vec![GroupElement(vec![1, 1, 0]), GroupElement(vec![0, 1, 0]), GroupElement(vec![0, 1, 1])],
        )
        .unwrap();
        let moved: Vec<Vec<GroupElement>> = [2, 0, 1]
            .iter()
            .map(|&i| d.vectors()[i].branch().iter().map(|h| a.apply(&g, h)).collect())
            .collect();
        let t = d.vectors()[0].btype().clone();
        let e = AlgebraicDatum::from_ambient(
            g,
            &[vec![], vec![], vec![]],
            &[t.clone(), t.clone(), t],
            &[vec![], vec![], vec![]],
            &moved,
        )
        .unwrap();
        assert!(equivalent(&d, &e).unwrap());
        assert_eq!(canonical_form(&d).unwrap(), canonical_form(&e).unwrap());
    }

    #[test]
    fn layered_minimum_matches_exhaustive_minimum() {
        use crate::classification::{classify, SearchSpec};
        let orders = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let records = classify(&SearchSpec::new(-1, 8, true).with_m_range([1])).unwrap();
        for r in &records {
            let d = &r.representative;
            let t = GroupTable::new(d.group());
            let slots = lifts(&t, d).unwrap();
            let exhaustive = automorphism_permutations(d.group(), MAX_TABLE_ORDER)
                .unwrap()
                .iter()
                .flat_map(|a| orders.iter().map(|o| encode(&t, a, &slots, o)).collect::<Vec<_>>())
                .min()
                .unwrap();
            assert_eq!(canonical_form(d).unwrap(), exhaustive);
        }
    }
}
