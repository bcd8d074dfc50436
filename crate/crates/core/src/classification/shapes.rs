//! Numerical shapes of a search: groups, genus triples and branching types
//! compatible with Hurwitz's formula and the target `χ(O)`.

use num_integer::Integer;

use crate::covering::{hurwitz_genus, BranchingType};
use crate::groups::AbelianGroup;

/// Divisors of `n` that are at least 2, ascending.
pub(crate) fn proper_divisors(n: u32) -> Vec<u32> {
    (2..=n).filter(|d| n % d == 0).collect()
}

/// Every `[0; n₁, …, n_r]` with `n_i | exponent` giving a curve of genus
/// `genus` under a group of order `order`.
///
/// From `2g − 2 = |H|(−2 + Σ(1 − 1/n_i))` every index contributes at
/// least `1/2`, which bounds `r`.
pub fn spherical_types(order: u32, exponent: u32, genus: u32) -> Vec<BranchingType> {
    let divs = proper_divisors(exponent);
    if divs.is_empty() {
        return Vec::new();
    }
    let l = divs.iter().fold(1u64, |a, &d| a.lcm(&(d as u64)));
    // Σ (L − L/n_i) = 2L + (2g − 2)L/|H|
    let num = (2 * genus as u64 - 2) * l;
    if num % order as u64 != 0 {
        return Vec::new();
    }
    let target = 2 * l + num / order as u64;

    fn rec(start: usize, remaining: u64, l: u64, divs: &[u32], acc: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if remaining == 0 {
            if acc.len() >= 3 {
                out.push(acc.clone());
            }
            return;
        }
        for (i, &d) in divs.iter().enumerate().skip(start) {
            let w = l - l / d as u64;
            if w > remaining {
                break;
            }
            acc.push(d);
            rec(i, remaining - w, l, divs, acc, out);
            acc.pop();
        }
    }
    let mut raw = Vec::new();
    rec(0, target, l, &divs, &mut Vec::new(), &mut raw);
    raw.into_iter()
        .filter_map(|idx| BranchingType::spherical(idx).ok())
        .filter(|t| hurwitz_genus(order, t).ok() == Some(genus))
        .collect()
}

fn primes_dividing(n: u32) -> Vec<u32> {
    (2..=n).filter(|&p| n % p == 0 && (2..p).all(|q| p % q != 0)).collect()
}

/// Necessary conditions for `group` to have a spherical generating vector
/// of type `t`: the indices have lcm `exp(G)`, each divides the lcm of the
/// others (the last entry is minus the sum of the rest), and for each prime
/// `p` more than `rank_p(G)` indices are divisible by `p`, since the
/// `p`-parts of the entries span `G/pG` and sum to zero.
pub fn admits_spherical_vector(group: &AbelianGroup, t: &BranchingType) -> bool {
    let idx = t.indices();
    let lcm = |it: &mut dyn Iterator<Item = u32>| it.fold(1u32, |a, b| a.lcm(&b));
    if t.genus_prime() != 0 || lcm(&mut idx.iter().copied()) != group.exponent() {
        return false;
    }
    let each_divides = (0..idx.len()).all(|i| {
        let rest = lcm(&mut idx.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &n)| n));
        rest % idx[i] == 0
    });
    each_divides
        && primes_dividing(group.order()).into_iter().all(|p| {
            let rank = group.invariant_factors().iter().filter(|&&d| d % p == 0).count();
            idx.iter().filter(|&&n| n % p == 0).count() > rank
        })
}

/// [`spherical_types`] for a concrete group, keeping only types that pass
/// [`admits_spherical_vector`].
pub fn group_spherical_types(group: &AbelianGroup, genus: u32) -> Vec<BranchingType> {
    spherical_types(group.order(), group.exponent(), genus)
        .into_iter()
        .filter(|t| admits_spherical_vector(group, t))
        .collect()
}

/// Ordered genus triples `(g₁, g₂, g₃)`, all `g_i ≥ 2`, with
/// `∏(g_i − 1) = product`.
pub fn genus_triples(product: u64) -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for a in 1..=product {
        if product % a != 0 {
            continue;
        }
        let rest = product / a;
        for b in 1..=rest {
            if rest % b == 0 {
                let c = rest / b;
                out.push([a as u32 + 1, b as u32 + 1, c as u32 + 1]);
            }
        }
    }
    out
}

/// Whether some ordered kernel-order triple could possibly carry a shape.
/// Trivial kernels use the types of `G` itself; other slots allow every
/// divisor of `|G/K_i|` as a branching index. Used to skip groups before
/// any subgroup or automorphism work.
pub(crate) fn feasible_kernel_orders(group: &AbelianGroup, chi_abs: u64, kernel_orders: [u32; 3]) -> bool {
    let order = group.order();
    let triples = genus_triples(order as u64 * chi_abs);
    triples.iter().any(|g| {
        (0..3).all(|i| {
            let q = order / kernel_orders[i];
            if kernel_orders[i] == 1 {
                !group_spherical_types(group, g[i]).is_empty()
            } else {
                q >= 2 && !spherical_types(q, q, g[i]).is_empty()
            }
        })
    })
}

/// Upper bound on `|G|` when the kernels are trivial: an abelian group
/// acting on a genus-`g` curve with rational quotient has order at most
/// `4g + 4`, so `((|G| − 8)/4)³ ≤ ∏(g_i − 1) = |G|·|χ|`.
pub fn trivial_kernel_order_bound(chi_abs: u64) -> u32 {
    let mut best = 2;
    for n in 2u64..100_000 {
        let lower = n.saturating_sub(8);
        // (n − 8)³ ≤ 64·n·|χ|, with g − 1 ≥ (n − 8)/4
        if lower.pow(3) <= 64 * n * chi_abs {
            best = n as u32;
        } else if n > 16 {
            break;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn types_for_small_groups() {
        let names = |v: Vec<BranchingType>| v.iter().map(|t| t.exponent_notation()).collect::<Vec<_>>();
        assert_eq!(names(spherical_types(8, 2, 3)), vec!["2^5"]);
        assert_eq!(names(spherical_types(8, 2, 5)), vec!["2^6"]);
        assert_eq!(names(spherical_types(4, 2, 2)), vec!["2^5"]);
        // brute force over index multisets of length ≤ 8
        for (order, exp, genus) in [(8u32, 4u32, 3u32), (9, 3, 4), (16, 4, 5), (12, 6, 3)] {
            let divs = proper_divisors(exp);
            let mut expected = Vec::new();
            let mut stack: Vec<Vec<u32>> = vec![vec![]];
            while let Some(v) = stack.pop() {
                if v.len() >= 3 {
                    let t = BranchingType::spherical(v.clone()).unwrap();
                    if hurwitz_genus(order, &t).ok() == Some(genus) {
                        expected.push(t);
                    }
                }
                if v.len() < 8 {
                    for &d in &divs {
                        if v.last().map_or(true, |&x| x <= d) {
                            let mut w = v.clone();
                            w.push(d);
                            stack.push(w);
                        }
                    }
                }
            }
            expected.sort();
            let mut got = spherical_types(order, exp, genus);
            got.sort();
            assert_eq!(got, expected, "{order} {exp} {genus}");
        }
    }

    #[test]
    fn genus_triples_multiply_out() {
        let t = genus_triples(8);
        assert!(t.contains(&[3, 3, 3]));
        assert!(t.iter().all(|g| g.iter().map(|&x| x as u64 - 1).product::<u64>() == 8));
        assert_eq!(t.len(), 10);
    }

    #[test]
    fn admissibility_never_rejects_a_realized_type() {
        use crate::covering::enumerate_generating_vectors;
        use crate::groups::groups_of_order;
        let mut rejected = 0;
        for n in 2..=12 {
            for g in groups_of_order(n) {
                for genus in 2..=7 {
                    for t in spherical_types(n, g.exponent(), genus) {
                        let exists = enumerate_generating_vectors(&g, &t).unwrap().next().is_some();
                        let admitted = admits_spherical_vector(&g, &t);
                        assert!(admitted || !exists, "{g} {t} has vectors but was rejected");
                        rejected += !admitted as u32;
                    }
                }
            }
        }
        assert!(rejected > 0);
    }

    #[test]
    fn order_bound() {
        assert_eq!(trivial_kernel_order_bound(8), 33);
    }
}
