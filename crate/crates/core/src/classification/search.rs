//! Orbit-representative search for generating-vector triples.
//!
//! Elements of `G` are table indices. A vector of `G_i = G/K_i` is stored as
//! a sorted list of *ranks*: cosets of `K_i` numbered by (order in `G_i`,
//! smallest member). Sorting ranks therefore sorts entries by order, which
//! matches the layout of a branching type.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::sync::Arc;

use rayon::prelude::*;

use crate::covering::{AlgebraicDatum, BranchingType, GeneratingVector};
use crate::error::{Error, Result};
use crate::groups::automorphism_permutations;
use crate::groups::table::{bits, GroupTable, Mask, MAX_TABLE_ORDER};
use crate::groups::{quotient, AbelianGroup, GroupElement, QuotientMap, Subgroup};

use super::Convention;
use super::shapes::{feasible_kernel_orders, genus_triples, group_spherical_types};

pub(crate) const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

pub(crate) struct GroupContext {
    pub table: GroupTable,
    pub auts: Vec<Vec<u8>>,
}

impl GroupContext {
    pub fn new(group: &AbelianGroup) -> Result<Self> {
        let auts = automorphism_permutations(group, MAX_TABLE_ORDER)?
            .iter()
            .map(|p| p.iter().map(|&x| x as u8).collect())
            .collect();
        Ok(GroupContext {
            table: GroupTable::new(group),
            auts,
        })
    }

    pub fn image(&self, a: usize, mask: Mask) -> Mask {
        GroupTable::apply_perm(&self.auts[a], mask)
    }

    pub fn subgroup(&self, mask: Mask) -> Subgroup {
        let g = &self.table.group;
        crate::groups::subgroup_generated(g, &bits(mask).map(|x| self.table.element(x)).collect::<Vec<_>>())
            .expect("mask elements lie in the group")
    }
}

/// Coset bookkeeping for one factor `G/K`.
pub(crate) struct Slot {
    pub kernel: Mask,
    pub reps: Vec<u8>,
    pub rank_of: Vec<u8>,
    pub ord: Vec<u32>,
    pub cyclic: Vec<Mask>,
    pub projection: QuotientMap,
}

impl Slot {
    pub fn new(ctx: &GroupContext, kernel: Mask) -> Result<Self> {
        let t = &ctx.table;
        let coset_min = |x: usize| bits(kernel).map(|k| t.add(x, k)).min().expect("kernel contains 0");
        let mut reps: Vec<usize> = (0..t.n).filter(|&x| coset_min(x) == x).collect();
        let order_mod = |x: usize| {
            let mut y = x;
            let mut k = 1;
            while kernel >> y & 1 == 0 {
                y = t.add(y, x);
                k += 1;
            }
            k
        };
        reps.sort_by_key(|&x| (order_mod(x), x));
        let mut rank_by_min = vec![0u8; t.n];
        for (r, &x) in reps.iter().enumerate() {
            rank_by_min[x] = r as u8;
        }
        let rank_of = (0..t.n).map(|x| rank_by_min[coset_min(x)]).collect();
        let ord = reps.iter().map(|&x| order_mod(x)).collect();
        let cyclic = reps.iter().map(|&x| t.extend(kernel, x)).collect();
        let projection = quotient(&t.group, &ctx.subgroup(kernel))?;
        Ok(Slot {
            kernel,
            reps: reps.into_iter().map(|x| x as u8).collect(),
            rank_of,
            ord,
            cyclic,
            projection,
        })
    }

    pub fn quotient_group(&self) -> &AbelianGroup {
        self.projection.target()
    }

    fn block(&self, n: u32) -> (usize, usize) {
        let lo = self.ord.partition_point(|&o| o < n);
        let hi = self.ord.partition_point(|&o| o <= n);
        (lo, hi)
    }

    /// Rank map induced by `perm`, sending cosets of `source.kernel` to
    /// cosets of `self.kernel`; `perm` must carry one kernel onto the other.
    fn rank_map(&self, source: &Slot, perm: &[u8]) -> Vec<u8> {
        source.reps.iter().map(|&x| self.rank_of[perm[x as usize] as usize]).collect()
    }

    fn stab_mask(&self, v: &[u8]) -> Mask {
        v.iter().fold(0, |m, &r| m | self.cyclic[r as usize])
    }
}

/// All generating vectors of `G/K` of the given spherical type, entries in
/// nondecreasing rank. The last entry is forced by the sum; a prefix is
/// abandoned once the remaining free entries cannot reach all of `G/K`.
pub(crate) fn slot_vectors(ctx: &GroupContext, slot: &Slot, btype: &BranchingType) -> Vec<Vec<u8>> {
    let t = &ctx.table;
    let idx = btype.indices();
    let r = idx.len();
    if r < 2 {
        return Vec::new();
    }
    let blocks: Vec<(usize, usize)> = idx.iter().map(|&n| slot.block(n)).collect();
    if blocks.iter().any(|&(lo, hi)| lo == hi) {
        return Vec::new();
    }
    // free_room[j] = ∏ idx[j..r-1], the most the entries j..r-2 can add
    let mut free_room = vec![1u64; r];
    for j in (0..r - 1).rev() {
        free_room[j] = free_room[j + 1].saturating_mul(idx[j] as u64);
    }
    let n = t.n as u64;
    let full = t.full();

    struct State<'a> {
        t: &'a GroupTable,
        slot: &'a Slot,
        idx: &'a [u32],
        blocks: &'a [(usize, usize)],
        free_room: &'a [u64],
        n: u64,
        full: Mask,
        acc: Vec<u8>,
        out: Vec<Vec<u8>>,
    }
    fn rec(s: &mut State, j: usize, sum: usize, span: Mask) {
        let r = s.idx.len();
        let (lo, hi) = s.blocks[j];
        let same_block = j > 0 && s.idx[j] == s.idx[j - 1];
        let start = if same_block { lo.max(*s.acc.last().unwrap() as usize) } else { lo };
        if j == r - 1 {
            if span != s.full {
                return;
            }
            let need = s.slot.rank_of[s.t.neg(sum)] as usize;
            if need >= start && need < hi {
                s.acc.push(need as u8);
                s.out.push(s.acc.clone());
                s.acc.pop();
            }
            return;
        }
        for rk in start..hi {
            let x = s.slot.reps[rk] as usize;
            let next = s.t.extend(span, x);
            if s.n / next.count_ones() as u64 > s.free_room[j + 1] {
                continue;
            }
            s.acc.push(rk as u8);
            rec(s, j + 1, s.t.add(sum, x), next);
            s.acc.pop();
        }
    }
    let mut s = State {
        t,
        slot,
        idx,
        blocks: &blocks,
        free_room: &free_room,
        n,
        full,
        acc: Vec::with_capacity(r),
        out: Vec::new(),
    };
    rec(&mut s, 0, 0, slot.kernel);
    s.out
}

fn apply(map: &[u8], v: &[u8]) -> Vec<u8> {
    let mut w: Vec<u8> = v.iter().map(|&r| map[r as usize]).collect();
    w.sort_unstable();
    w
}

/// A kernel triple up to `Aut(G) × S₃`, with its stabilizer data.
pub(crate) struct KernelRep {
    pub masks: [Mask; 3],
    pub slots: [Arc<Slot>; 3],
    /// automorphisms fixing every kernel
    pub s0: Vec<usize>,
    /// for each non-identity slot permutation σ realizable on the kernels,
    /// one automorphism φ with `φ(K_σ(i)) = K_i`
    pub sigmas: Vec<([usize; 3], usize)>,
}

pub(crate) fn kernel_reps(
    ctx: &GroupContext,
    allow_nontrivial: bool,
    convention: Convention,
    chi_abs: u64,
    slot_cache: &mut HashMap<Mask, Arc<Slot>>,
) -> Result<Vec<KernelRep>> {
    let t = &ctx.table;
    let mut feasible_cache: HashMap<[u32; 3], bool> = HashMap::new();
    let mut feasible = |k: [u32; 3]| *feasible_cache.entry(k).or_insert_with(|| feasible_kernel_orders(&ctx.table.group, chi_abs, k));
    // slot permutations used to merge kernel triples
    let perms: &[[usize; 3]] = match convention {
        Convention::Table => &PERMS[..1],
        Convention::Minimal => &PERMS,
    };
    let mut triples = Vec::new();
    if !allow_nontrivial {
        if feasible([1, 1, 1]) {
            triples.push([1u64, 1, 1]);
        }
    } else {
        let mut subs: Vec<Mask> = t.subgroups().into_iter().filter(|&m| m != t.full()).collect();
        subs.sort_by_key(|&m| (m.count_ones(), m));
        let pop = |m: Mask| m.count_ones();
        let kernels_ok = |a: Mask, b: Mask, c: Mask| match convention {
            Convention::Table => a & b == 1 && b & c == 1,
            Convention::Minimal => a & b == 1 && a & c == 1 && b & c == 1,
        };
        let mut seen: HashSet<[Mask; 3]> = HashSet::new();
        for &a in &subs {
            for &b in subs.iter().filter(|&&b| pop(b) >= pop(a)) {
                for &c in subs.iter().filter(|&&c| pop(c) >= pop(b)) {
                    if !kernels_ok(a, b, c) || !feasible([pop(a), pop(b), pop(c)]) || seen.contains(&[a, b, c]) {
                        continue;
                    }
                    triples.push([a, b, c]);
                    for phi in 0..ctx.auts.len() {
                        let im = [ctx.image(phi, a), ctx.image(phi, b), ctx.image(phi, c)];
                        for s in perms {
                            let u = [im[s[0]], im[s[1]], im[s[2]]];
                            if pop(u[0]) <= pop(u[1]) && pop(u[1]) <= pop(u[2]) {
                                seen.insert(u);
                            }
                        }
                    }
                }
            }
        }
    }
    let mut out = Vec::with_capacity(triples.len());
    for masks in triples {
        let mut slot = |m: Mask| -> Result<Arc<Slot>> {
            if let Some(s) = slot_cache.get(&m) {
                return Ok(s.clone());
            }
            let s = Arc::new(Slot::new(ctx, m)?);
            slot_cache.insert(m, s.clone());
            Ok(s)
        };
        let slots = [slot(masks[0])?, slot(masks[1])?, slot(masks[2])?];
        let mut s0 = Vec::new();
        let mut sigmas = Vec::new();
        for (si, s) in perms.iter().enumerate() {
            for phi in 0..ctx.auts.len() {
                if (0..3).all(|i| ctx.image(phi, masks[s[i]]) == masks[i]) {
                    if si == 0 {
                        s0.push(phi);
                    } else {
                        sigmas.push((*s, phi));
                        break;
                    }
                }
            }
        }
        out.push(KernelRep {
            masks,
            slots,
            s0,
            sigmas,
        });
    }
    Ok(out)
}

/// Type triples for a kernel representative. Under [`Convention::Table`]
/// the pairs `(|K_i|, T_i)` must be nondecreasing; under
/// [`Convention::Minimal`] one triple is kept per orbit of the slot
/// permutations realizable on the kernels.
pub(crate) fn type_triples(rep: &KernelRep, convention: Convention, chi_abs: u64) -> Vec<([u32; 3], [BranchingType; 3])> {
    let n = rep.slots[0].reps.len() as u64 * rep.masks[0].count_ones() as u64;
    let ks: Vec<u32> = rep.masks.iter().map(|m| m.count_ones()).collect();
    let mut cache: HashMap<(usize, u32), Vec<BranchingType>> = HashMap::new();
    let mut types = |i: usize, g: u32| -> Vec<BranchingType> {
        cache
            .entry((i, g))
            .or_insert_with(|| {
                group_spherical_types(rep.slots[i].quotient_group(), g)
            })
            .clone()
    };
    let mut out = Vec::new();
    for g in genus_triples(n * chi_abs) {
        let (a, b, c) = (types(0, g[0]), types(1, g[1]), types(2, g[2]));
        for t0 in &a {
            for t1 in &b {
                for t2 in &c {
                    let t = [t0, t1, t2];
                    let keep = match convention {
                        Convention::Table => (ks[0], t[0]) <= (ks[1], t[1]) && (ks[1], t[1]) <= (ks[2], t[2]),
                        Convention::Minimal => rep.sigmas.iter().all(|(s, _)| [t[s[0]], t[s[1]], t[s[2]]] >= t),
                    };
                    if keep {
                        out.push((g, [t0.clone(), t1.clone(), t2.clone()]));
                    }
                }
            }
        }
    }
    out
}

/// One shape of the search: a kernel representative with a type triple.
pub(crate) struct WorkItem {
    pub ctx: Arc<GroupContext>,
    pub rep: Arc<KernelRep>,
    pub genera: [u32; 3],
    pub types: [BranchingType; 3],
}

impl WorkItem {
    /// Free generating-vector triples, one per equivalence class, each as
    /// the lexicographically least member of its class.
    pub fn search(&self) -> Vec<[Vec<u8>; 3]> {
        let ctx = &*self.ctx;
        let rep = &*self.rep;
        let slots = &rep.slots;
        // short types first: an empty list makes the long ones unnecessary
        let mut order = [0usize, 1, 2];
        order.sort_by_key(|&i| self.types[i].len());
        let mut lists: Vec<Vec<(Vec<u8>, Mask)>> = vec![Vec::new(); 3];
        for i in order {
            lists[i] = slot_vectors(ctx, &slots[i], &self.types[i])
                .into_iter()
                .map(|v| {
                    let m = slots[i].stab_mask(&v);
                    (v, m)
                })
                .collect();
            if lists[i].is_empty() {
                return Vec::new();
            }
        }
        let maps: Vec<Vec<Vec<u8>>> = (0..3)
            .map(|i| rep.s0.iter().map(|&phi| slots[i].rank_map(&slots[i], &ctx.auts[phi])).collect())
            .collect();
        let all: Vec<usize> = (0..rep.s0.len()).collect();
        let is_min = |i: usize, v: &[u8], group: &[usize]| group.iter().all(|&p| apply(&maps[i][p], v).as_slice() >= v);
        let stab = |i: usize, v: &[u8], group: &[usize]| -> Vec<usize> {
            group.iter().copied().filter(|&p| apply(&maps[i][p], v) == v).collect()
        };

        let firsts: Vec<&(Vec<u8>, Mask)> = lists[0].iter().filter(|(v, _)| is_min(0, v, &all)).collect();
        let found: Vec<[Vec<u8>; 3]> = firsts
            .par_iter()
            .flat_map_iter(|(v1, m1)| {
                let s1 = stab(0, v1, &all);
                let mut local = Vec::new();
                for (v2, m2) in &lists[1] {
                    let m12 = m1 & m2;
                    if !is_min(1, v2, &s1) {
                        continue;
                    }
                    let s2 = stab(1, v2, &s1);
                    for (v3, m3) in &lists[2] {
                        if m12 & m3 == 1 && is_min(2, v3, &s2) {
                            local.push([v1.clone(), v2.clone(), v3.clone()]);
                        }
                    }
                }
                local
            })
            .collect();

        if rep.sigmas.is_empty() {
            return found;
        }
        let t = &self.types;
        let moves: Vec<([usize; 3], Vec<Vec<u8>>)> = rep
            .sigmas
            .iter()
            .filter(|(s, _)| (0..3).all(|i| t[s[i]] == t[i]))
            .map(|&(s, phi)| (s, (0..3).map(|i| slots[i].rank_map(&slots[s[i]], &ctx.auts[phi])).collect()))
            .collect();
        let lexmin = |u: [Vec<u8>; 3]| -> [Vec<u8>; 3] {
            let mut cand = all.clone();
            let mut out: [Vec<u8>; 3] = Default::default();
            for i in 0..3 {
                let best = cand.iter().map(|&p| apply(&maps[i][p], &u[i])).min().unwrap();
                cand.retain(|&p| apply(&maps[i][p], &u[i]) == best);
                out[i] = best;
            }
            out
        };
        let keys: BTreeSet<[Vec<u8>; 3]> = found
            .into_par_iter()
            .map(|f| {
                let mut key = f.clone();
                for (s, m) in &moves {
                    let u = [apply(&m[0], &f[s[0]]), apply(&m[1], &f[s[1]]), apply(&m[2], &f[s[2]])];
                    key = key.min(lexmin(u));
                }
                key
            })
            .collect::<Vec<_>>()
            .into_iter()
            .collect();
        keys.into_iter().collect()
    }

    /// Turns a rank triple into a validated datum.
    pub fn datum(&self, triple: &[Vec<u8>; 3]) -> Result<AlgebraicDatum> {
        let ctx = &*self.ctx;
        let group = ctx.table.group.clone();
        let mut kernels = Vec::with_capacity(3);
        let mut vectors = Vec::with_capacity(3);
        for i in 0..3 {
            let slot = &self.rep.slots[i];
            let branch: Vec<GroupElement> = triple[i]
                .iter()
                .map(|&r| slot.projection.project(&ctx.table.element(slot.reps[r as usize] as usize)))
                .collect();
            vectors.push(GeneratingVector::new(
                slot.quotient_group().clone(),
                self.types[i].clone(),
                Vec::new(),
                branch,
            )?);
            kernels.push(slot.projection.kernel().clone());
        }
        AlgebraicDatum::new_relaxed(group, kernels, vectors)
            .map_err(|e| Error::Consistency(format!("search produced an invalid datum: {e}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classification::spherical_types;
    use crate::covering::enumerate_generating_vectors;

    /// The coset-rank search agrees with the plain enumerator on the number
    /// of entry multisets.
    #[test]
    fn slot_vectors_match_plain_enumeration() {
        for factors in [vec![2u32, 2, 2, 2], vec![2, 4], vec![3, 3], vec![2, 2, 2]] {
            let g = AbelianGroup::new(&factors).unwrap();
            let ctx = GroupContext::new(&g).unwrap();
            for kernel in ctx.table.subgroups() {
                if kernel == ctx.table.full() {
                    continue;
                }
                let slot = Slot::new(&ctx, kernel).unwrap();
                let q = slot.quotient_group().clone();
                for genus in 2..=5 {
                    for t in spherical_types(q.order(), q.exponent(), genus) {
                        if t.len() > 7 {
                            continue;
                        }
                        let ours = slot_vectors(&ctx, &slot, &t).len();
                        let mut multisets: BTreeSet<Vec<GroupElement>> = BTreeSet::new();
                        for v in enumerate_generating_vectors(&q, &t).unwrap() {
                            let mut b = v.branch().to_vec();
                            b.sort();
                            multisets.insert(b);
                        }
                        assert_eq!(ours, multisets.len(), "{g} / {kernel:b} type {t}");
                    }
                }
            }
        }
    }
}

