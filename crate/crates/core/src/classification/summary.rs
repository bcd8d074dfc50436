//! Grouping of family records into table rows with status counts.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::covering::BranchingType;
use crate::groups::AbelianGroup;
use crate::invariants::HodgeNumbers;
use crate::maps::MapAnalysis;

use super::FamilyRecord;

/// How a family counts towards `bir`, `nbir` and `?`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SummaryView {
    /// Only the two separation criteria: `bir` when both hold, `nbir` when
    /// the necessary one fails, `?` otherwise.
    Criteria,
    /// The full rule chain of [`crate::maps::map_status`], including the
    /// genus-2 rule for the bicanonical map.
    Rules,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatusCounts {
    pub bpf: u64,
    pub bir: u64,
    pub nbir: u64,
    pub unknown: u64,
}

impl StatusCounts {
    fn add(&mut self, a: &MapAnalysis, view: SummaryView) {
        self.bpf += a.bpf as u64;
        let (bir, nbir) = match view {
            SummaryView::Criteria => (a.separates_group && a.separates_base, !a.separates_group),
            SummaryView::Rules => (a.status.is_birational(), a.status.is_non_birational()),
        };
        if bir {
            self.bir += 1;
        } else if nbir {
            self.nbir += 1;
        } else {
            self.unknown += 1;
        }
    }

    pub fn as_array(&self) -> [u64; 4] {
        [self.bpf, self.bir, self.nbir, self.unknown]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub group: AbelianGroup,
    pub kernel_orders: Vec<u32>,
    pub types: Vec<BranchingType>,
    pub hodge: Option<HodgeNumbers>,
    pub families: u64,
    /// counts for `m = 1`, when analyzed
    pub canonical: Option<StatusCounts>,
    /// counts for `m = 2`, when analyzed
    pub bicanonical: Option<StatusCounts>,
}

type RowKey = (u32, Vec<u32>, Vec<u32>, Vec<BranchingType>, Option<HodgeNumbers>);

/// One row per group, slot data `(k_i, T_i)` and Hodge numbers, in the
/// order of the records' sort key.
pub fn summarize(records: &[FamilyRecord], view: SummaryView) -> Vec<TableRow> {
    let mut rows: BTreeMap<RowKey, TableRow> = BTreeMap::new();
    for r in records {
        let key = (
            r.group.order(),
            r.group.invariant_factors().to_vec(),
            r.kernel_orders.clone(),
            r.types.clone(),
            r.invariants.hodge,
        );
        let row = rows.entry(key).or_insert_with(|| TableRow {
            group: r.group.clone(),
            kernel_orders: r.kernel_orders.clone(),
            types: r.types.clone(),
            hodge: r.invariants.hodge,
            families: 0,
            canonical: r.analyses.contains_key(&1).then(StatusCounts::default),
            bicanonical: r.analyses.contains_key(&2).then(StatusCounts::default),
        });
        row.families += 1;
        if let (Some(c), Some(a)) = (row.canonical.as_mut(), r.analyses.get(&1)) {
            c.add(a, view);
        }
        if let (Some(c), Some(a)) = (row.bicanonical.as_mut(), r.analyses.get(&2)) {
            c.add(a, view);
        }
    }
    rows.into_values().collect()
}
