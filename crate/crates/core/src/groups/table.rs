//! Index-based arithmetic for small groups (order at most 64), with
//! subsets stored as `u64` bitmasks.

use super::{AbelianGroup, GroupElement};

pub(crate) type Mask = u64;

pub(crate) const MAX_TABLE_ORDER: u32 = 64;

#[derive(Clone, Debug)]
pub(crate) struct GroupTable {
    pub group: AbelianGroup,
    pub n: usize,
    add: Vec<u8>,
    neg: Vec<u8>,
    order: Vec<u8>,
}

impl GroupTable {
    pub fn new(group: &AbelianGroup) -> Self {
        let n = group.order() as usize;
        assert!(group.order() <= MAX_TABLE_ORDER, "group too large for a table");
        let elems: Vec<GroupElement> = group.elements().collect();
        let mut add = vec![0u8; n * n];
        for a in 0..n {
            for b in 0..n {
                add[a * n + b] = group.index_of(&group.add(&elems[a], &elems[b])) as u8;
            }
        }
        let neg = elems.iter().map(|g| group.index_of(&group.neg(g)) as u8).collect();
        let order = elems.iter().map(|g| group.element_order(g) as u8).collect();
        GroupTable {
            group: group.clone(),
            n,
            add,
            neg,
            order,
        }
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.n + b] as usize
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    #[inline]
    pub fn order(&self, a: usize) -> u32 {
        self.order[a] as u32
    }

    pub fn full(&self) -> Mask {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    /// The subgroup generated by `mask ∪ {x}`, given that `mask` is a subgroup.
    pub fn extend(&self, mask: Mask, x: usize) -> Mask {
        if mask >> x & 1 == 1 {
            return mask;
        }
        let mut out = mask;
        let mut mult = x;
        while out >> mult & 1 == 0 {
            for y in bits(mask) {
                out |= 1 << self.add(y, mult);
            }
            mult = self.add(mult, x);
        }
        out
    }

    #[cfg(test)]
    pub fn span(&self, gens: impl IntoIterator<Item = usize>) -> Mask {
        gens.into_iter().fold(1, |m, x| self.extend(m, x))
    }

    pub fn element(&self, idx: usize) -> GroupElement {
        self.group.element_at(idx)
    }

    pub fn index(&self, g: &GroupElement) -> usize {
        self.group.index_of(g)
    }

    pub fn apply_perm(perm: &[u8], mask: Mask) -> Mask {
        bits(mask).fold(0, |m, x| m | 1 << perm[x])
    }

    /// Every subgroup, as masks in increasing numeric order.
    pub fn subgroups(&self) -> Vec<Mask> {
        let mut found: std::collections::BTreeSet<Mask> = [1u64].into();
        let mut frontier = vec![1u64];
        while let Some(s) = frontier.pop() {
            for x in 0..self.n {
                let t = self.extend(s, x);
                if found.insert(t) {
                    frontier.push(t);
                }
            }
        }
        found.into_iter().collect()
    }
}

/// Indices of set bits, ascending.
pub(crate) fn bits(mut mask: Mask) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spans_and_subgroups() {
        let t = GroupTable::new(&AbelianGroup::new(&[2, 2, 2]).unwrap());
        assert_eq!(t.span([1, 2]).count_ones(), 4);
        assert_eq!(t.span([1, 2, 4]), t.full());
        assert_eq!(t.subgroups().len(), 16);
        let t = GroupTable::new(&AbelianGroup::new(&[2, 2, 2, 2]).unwrap());
        assert_eq!(t.subgroups().len(), 67);
        let t = GroupTable::new(&AbelianGroup::new(&[4]).unwrap());
        assert_eq!(t.span([2]).count_ones(), 2);
        assert_eq!(t.span([1]).count_ones(), 4);
    }

    #[test]
    fn table_matches_group_law() {
        let g = AbelianGroup::new(&[2, 6]).unwrap();
        let t = GroupTable::new(&g);
        for a in 0..t.n {
            for b in 0..t.n {
                assert_eq!(t.element(t.add(a, b)), g.add(&t.element(a), &t.element(b)));
            }
            assert_eq!(t.add(a, t.neg(a)), 0);
            assert_eq!(t.order(a), g.element_order(&t.element(a)));
        }
    }
}
