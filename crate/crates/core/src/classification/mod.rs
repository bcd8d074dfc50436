//! Classification of regular unmixed threefolds isogenous to a product with
//! abelian group, for a fixed `χ(O)` and a bound on `|G|`.
//!
//! The search runs over groups, kernel triples up to `Aut(G) × S₃`, type
//! triples, and finally generating-vector triples up to the same moves plus
//! permutations of entries. Each class is reported once, as a
//! [`FamilyRecord`] with its invariants and map analyses.

mod equivalence;
mod search;
mod shapes;
mod summary;

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::covering::{AlgebraicDatum, BranchingType};
use crate::decomposition::Decomposition;
use crate::error::{Error, Result};
use crate::groups::table::MAX_TABLE_ORDER;
use crate::groups::{groups_of_order, AbelianGroup, Subgroup};
use crate::invariants::{invariant_set, InvariantSet};
use crate::maps::{map_status_with, MapAnalysis};

pub use equivalence::{canonical_form, equivalent, CanonicalForm};
pub use shapes::{
    admits_spherical_vector, genus_triples, group_spherical_types, spherical_types, trivial_kernel_order_bound,
};
pub use summary::{summarize, StatusCounts, SummaryView, TableRow};

use search::{kernel_reps, type_triples, GroupContext, KernelRep, WorkItem};

/// What counts as one family.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Convention {
    /// Orbits of `Aut(G)` on data whose slots are ordered by `(|K_i|, T_i)`,
    /// with trivial intersections required only of consecutive kernels
    /// `K₁ ∩ K₂` and `K₂ ∩ K₃`. This is the counting behind the reference
    /// `χ = −1` table; it can produce data that are not minimal
    /// realizations, which records flag.
    #[default]
    Table,
    /// Minimal realizations up to automorphisms of `G`, permutations of
    /// entries and permutations of the factor slots (see [`equivalent`]).
    Minimal,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchSpec {
    pub chi_target: i64,
    pub max_group_order: u32,
    pub n: usize,
    pub allow_nontrivial_kernels: bool,
    pub m_range: Vec<u32>,
    #[serde(default)]
    pub convention: Convention,
    /// restrict the search to these groups
    #[serde(default)]
    pub only_groups: Option<Vec<AbelianGroup>>,
}

impl SearchSpec {
    pub fn new(chi_target: i64, max_group_order: u32, allow_nontrivial_kernels: bool) -> Self {
        SearchSpec {
            chi_target,
            max_group_order,
            n: 3,
            allow_nontrivial_kernels,
            m_range: (1..=5).collect(),
            convention: Convention::Table,
            only_groups: None,
        }
    }

    pub fn with_m_range(mut self, m_range: impl IntoIterator<Item = u32>) -> Self {
        self.m_range = m_range.into_iter().collect();
        self
    }

    pub fn with_convention(mut self, convention: Convention) -> Self {
        self.convention = convention;
        self
    }

    pub fn with_groups(mut self, groups: Vec<AbelianGroup>) -> Self {
        self.only_groups = Some(groups);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.chi_target > -1 {
            return Err(Error::Scope(format!("χ target must be at most −1 (got {})", self.chi_target)));
        }
        if self.max_group_order < 2 {
            return Err(Error::Scope(format!(
                "group order bound must be at least 2 (got {})",
                self.max_group_order
            )));
        }
        if self.max_group_order > MAX_TABLE_ORDER {
            return Err(Error::CeilingExceeded {
                order: self.max_group_order,
                ceiling: MAX_TABLE_ORDER,
            });
        }
        if self.n != 3 {
            return Err(Error::Scope(format!("classification is for threefolds (got n = {})", self.n)));
        }
        if self.m_range.contains(&0) {
            return Err(Error::Scope("m must be at least 1".into()));
        }
        Ok(())
    }

    fn chi_abs(&self) -> u64 {
        self.chi_target.unsigned_abs()
    }

    fn groups(&self) -> Vec<AbelianGroup> {
        (2..=self.max_group_order)
            .flat_map(groups_of_order)
            .filter(|g| self.only_groups.as_ref().map_or(true, |only| only.contains(g)))
            .collect()
    }
}

/// One numerical shape: a kernel triple (up to automorphisms and slot
/// permutations) with genera and branching types.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Shape {
    pub group: AbelianGroup,
    pub kernels: Vec<Subgroup>,
    pub kernel_orders: Vec<u32>,
    pub genera: Vec<u32>,
    pub types: Vec<BranchingType>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FamilyRecord {
    pub group: AbelianGroup,
    pub kernel_orders: Vec<u32>,
    pub types: Vec<BranchingType>,
    pub genera: Vec<u32>,
    pub invariants: InvariantSet,
    pub analyses: BTreeMap<u32, MapAnalysis>,
    /// whether the kernels satisfy `∩_{j≠i} K_j = 1` for every `i`
    pub minimal_realization: bool,
    pub representative: AlgebraicDatum,
}

/// Whether any kernel-order triple of a group of this order can possibly
/// carry a shape, by orders alone.
fn group_may_contribute(group: &AbelianGroup, chi_abs: u64, allow_nontrivial: bool) -> bool {
    let order = group.order();
    let divisors: Vec<u32> = (1..order).filter(|k| order % k == 0).collect();
    let ks: Vec<u32> = if allow_nontrivial { divisors } else { vec![1] };
    ks.iter().any(|&a| {
        ks.iter().any(|&b| {
            ks.iter()
                .any(|&c| a * b <= order && a * c <= order && b * c <= order && shapes::feasible_kernel_orders(group, chi_abs, [a, b, c]))
        })
    })
}

fn work_items(spec: &SearchSpec) -> Result<Vec<WorkItem>> {
    spec.validate()?;
    let chi_abs = spec.chi_abs();
    let per_group: Vec<Result<Vec<WorkItem>>> = spec
        .groups()
        .into_par_iter()
        .filter(|g| group_may_contribute(g, chi_abs, spec.allow_nontrivial_kernels))
        .map(|g| {
            let ctx = Arc::new(GroupContext::new(&g)?);
            let mut cache = HashMap::new();
            let reps: Vec<KernelRep> = kernel_reps(&ctx, spec.allow_nontrivial_kernels, spec.convention, chi_abs, &mut cache)?;
            let mut items = Vec::new();
            for rep in reps {
                let rep = Arc::new(rep);
                for (genera, types) in type_triples(&rep, spec.convention, chi_abs) {
                    items.push(WorkItem {
                        ctx: ctx.clone(),
                        rep: rep.clone(),
                        genera,
                        types,
                    });
                }
            }
            Ok(items)
        })
        .collect();
    let mut out = Vec::new();
    for items in per_group {
        out.extend(items?);
    }
    Ok(out)
}

/// Every admissible shape of the search, one per kernel orbit and type
/// orbit.
pub fn admissible_shapes(spec: &SearchSpec) -> Result<Vec<Shape>> {
    Ok(work_items(spec)?
        .into_iter()
        .map(|w| Shape {
            group: w.ctx.table.group.clone(),
            kernels: w.rep.slots.iter().map(|s| s.projection.kernel().clone()).collect(),
            kernel_orders: w.rep.masks.iter().map(|m| m.count_ones()).collect(),
            genera: w.genera.to_vec(),
            types: w.types.to_vec(),
        })
        .collect())
}

/// Reorders the slots of a datum by `(|K_i|, T_i)`.
fn sort_slots(d: AlgebraicDatum) -> Result<AlgebraicDatum> {
    let mut order: Vec<usize> = (0..d.n()).collect();
    order.sort_by(|&a, &b| {
        (d.kernels()[a].order(), d.vectors()[a].btype()).cmp(&(d.kernels()[b].order(), d.vectors()[b].btype()))
    });
    if order.iter().enumerate().all(|(i, &j)| i == j) {
        return Ok(d);
    }
    AlgebraicDatum::new_relaxed(
        d.group().clone(),
        order.iter().map(|&i| d.kernels()[i].clone()).collect(),
        order.iter().map(|&i| d.vectors()[i].clone()).collect(),
    )
}

/// Invariants and the requested map analyses of one datum.
pub fn analyze_family(d: AlgebraicDatum, m_range: &[u32]) -> Result<FamilyRecord> {
    let invariants = invariant_set(&d)?;
    let dec = Decomposition::new(&d)?;
    let mut analyses = BTreeMap::new();
    for &m in m_range {
        analyses.insert(m, map_status_with(&d, &dec, m)?);
    }
    Ok(FamilyRecord {
        group: d.group().clone(),
        kernel_orders: d.kernels().iter().map(Subgroup::order).collect(),
        types: d.vectors().iter().map(|v| v.btype().clone()).collect(),
        genera: invariants.genera.clone(),
        invariants,
        analyses,
        minimal_realization: d.is_minimal(),
        representative: d,
    })
}

type SortKey = (u32, Vec<u32>, Vec<u32>, Vec<BranchingType>, CanonicalForm);

fn sort_key(r: &FamilyRecord) -> SortKey {
    (
        r.group.order(),
        r.group.invariant_factors().to_vec(),
        r.kernel_orders.clone(),
        r.types.clone(),
        equivalence::raw_encoding(&r.representative),
    )
}

/// Runs the full classification. Output is sorted by group, kernel
/// orders, types, then representative, and is independent of the thread
/// count.
pub fn classify(spec: &SearchSpec) -> Result<Vec<FamilyRecord>> {
    let items = work_items(spec)?;
    let chi = spec.chi_target;
    let found: Vec<Result<Vec<AlgebraicDatum>>> = items
        .par_iter()
        .map(|w| w.search().iter().map(|t| w.datum(t)).collect())
        .collect();
    let mut data = Vec::new();
    for f in found {
        data.extend(f?);
    }
    let records: Vec<Result<FamilyRecord>> = data
        .into_par_iter()
        .map(|d| {
            let r = analyze_family(sort_slots(d)?, &spec.m_range)?;
            if spec.convention == Convention::Minimal && !r.minimal_realization {
                return Err(Error::Consistency(format!("non-minimal datum over {} in a minimal search", r.group)));
            }
            if r.invariants.chi_o != chi {
                return Err(Error::Consistency(format!(
                    "family over {} has χ(O) = {} instead of {chi}",
                    r.group, r.invariants.chi_o
                )));
            }
            Ok(r)
        })
        .collect();
    let mut out = records.into_iter().collect::<Result<Vec<_>>>()?;
    out.sort_by_cached_key(sort_key);
    Ok(out)
}
