//! Generating vectors, branching types and algebraic data of unmixed
//! varieties isogenous to a product.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::table::{GroupTable, Mask, MAX_TABLE_ORDER};
use crate::groups::{quotient, subgroup_generated, AbelianGroup, GroupElement, QuotientMap, Subgroup};

/// `[g′; n₁, …, n_r]` with the indices sorted nondecreasingly.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct BranchingType {
    genus_prime: u32,
    indices: Vec<u32>,
}

impl BranchingType {
    pub fn new(genus_prime: u32, mut indices: Vec<u32>) -> Result<Self> {
        if let Some(&bad) = indices.iter().find(|&&n| n < 2) {
            return Err(Error::Parse(format!("branching index {bad} is below 2")));
        }
        indices.sort_unstable();
        Ok(BranchingType {
            genus_prime,
            indices,
        })
    }

    /// `[0; n₁, …, n_r]`.
    pub fn spherical(indices: Vec<u32>) -> Result<Self> {
        Self::new(0, indices)
    }

    pub fn genus_prime(&self) -> u32 {
        self.genus_prime
    }

    pub fn indices(&self) -> &[u32] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    /// Exponent notation used in tables, e.g. `2^5` or `2^2 4^3`; a nonzero
    /// quotient genus is prefixed as `g'=1:`.
    pub fn exponent_notation(&self) -> String {
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.indices.len() {
            let n = self.indices[i];
            let j = self.indices[i..].iter().take_while(|&&x| x == n).count() + i;
            parts.push(if j - i == 1 {
                n.to_string()
            } else {
                format!("{n}^{}", j - i)
            });
            i = j;
        }
        let body = parts.join(" ");
        if self.genus_prime == 0 {
            body
        } else {
            format!("g'={}:{body}", self.genus_prime)
        }
    }
}

impl fmt::Display for BranchingType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<String> = self.indices.iter().map(u32::to_string).collect();
        write!(f, "[{}; {}]", self.genus_prime, idx.join(","))
    }
}

impl fmt::Debug for BranchingType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for BranchingType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("branching type {s:?} is not of the form \"[g'; n1,...,nr]\""));
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(bad)?;
        let (g, rest) = inner.split_once(';').ok_or_else(bad)?;
        let genus_prime = g.trim().parse().map_err(|_| bad())?;
        let indices = rest
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| t.parse().map_err(|_| bad()))
            .collect::<Result<Vec<u32>>>()?;
        BranchingType::new(genus_prime, indices)
    }
}

impl TryFrom<String> for BranchingType {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<BranchingType> for String {
    fn from(t: BranchingType) -> Self {
        t.to_string()
    }
}

/// Genus `g` of a curve with an action of a group of order `group_order`
/// of the given type: `2g − 2 = |H|(2g′ − 2 + Σ(n_i − 1)/n_i)`.
pub fn hurwitz_genus(group_order: u32, btype: &BranchingType) -> Result<u32> {
    let l = btype.indices.iter().fold(1i64, |acc, &n| acc.lcm(&(n as i64)));
    let h = group_order as i64;
    // (2g − 2)·l
    let scaled: i64 = h * (2 * btype.genus_prime as i64 - 2) * l
        + btype
            .indices
            .iter()
            .map(|&n| h * (n as i64 - 1) * (l / n as i64))
            .sum::<i64>();
    let err = || Error::NonIntegralGenus {
        order: group_order,
        btype: btype.to_string(),
    };
    if scaled % l != 0 {
        return Err(err());
    }
    let two_g_minus_two = scaled / l;
    if two_g_minus_two % 2 != 0 || two_g_minus_two < -2 {
        return Err(err());
    }
    Ok((two_g_minus_two / 2 + 1) as u32)
}

/// The specific condition of a generating vector that fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum VectorViolation {
    WrongLength { expected: usize, found: usize },
    NotInGroup { position: usize },
    WrongOrder { position: usize, expected: u32, found: u32 },
    NonzeroSum { sum: Vec<u32> },
    DoesNotGenerate { span_order: u32, group_order: u32 },
}

impl fmt::Display for VectorViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VectorViolation::WrongLength { expected, found } => {
                write!(f, "expected {expected} elements, found {found}")
            }
            VectorViolation::NotInGroup { position } => {
                write!(f, "entry {position} is not an element of the group")
            }
            VectorViolation::WrongOrder {
                position,
                expected,
                found,
            } => write!(f, "entry {position} has order {found}, expected {expected}"),
            VectorViolation::NonzeroSum { sum } => {
                write!(f, "product-one relation fails: branch elements sum to {sum:?}")
            }
            VectorViolation::DoesNotGenerate {
                span_order,
                group_order,
            } => write!(
                f,
                "generation fails: entries span a subgroup of order {span_order} in a group of order {group_order}"
            ),
        }
    }
}

/// Checks the three defining conditions of a generating vector of the
/// given type: orders, vanishing sum, generation.
pub fn check_generating_vector(
    group: &AbelianGroup,
    btype: &BranchingType,
    hyperbolic: &[GroupElement],
    branch: &[GroupElement],
) -> std::result::Result<(), VectorViolation> {
    let expected_h = 2 * btype.genus_prime as usize;
    if hyperbolic.len() != expected_h {
        return Err(VectorViolation::WrongLength {
            expected: expected_h + btype.len(),
            found: hyperbolic.len() + branch.len(),
        });
    }
    if branch.len() != btype.len() {
        return Err(VectorViolation::WrongLength {
            expected: btype.len(),
            found: branch.len(),
        });
    }
    for (position, g) in hyperbolic.iter().chain(branch).enumerate() {
        if !group.contains(g) {
            return Err(VectorViolation::NotInGroup { position });
        }
    }
    for (i, (h, &n)) in branch.iter().zip(&btype.indices).enumerate() {
        let found = group.element_order(h);
        if found != n {
            return Err(VectorViolation::WrongOrder {
                position: expected_h + i,
                expected: n,
                found,
            });
        }
    }
    // the commutators of the hyperbolic pairs vanish in an abelian group
    let sum = group.sum(branch);
    if sum != group.identity() {
        return Err(VectorViolation::NonzeroSum { sum: sum.0 });
    }
    let all: Vec<GroupElement> = hyperbolic.iter().chain(branch).cloned().collect();
    let span = subgroup_generated(group, &all).expect("elements checked");
    if span.order() != group.order() {
        return Err(VectorViolation::DoesNotGenerate {
            span_order: span.order(),
            group_order: group.order(),
        });
    }
    Ok(())
}

pub fn is_generating_vector(
    group: &AbelianGroup,
    btype: &BranchingType,
    hyperbolic: &[GroupElement],
    branch: &[GroupElement],
) -> bool {
    check_generating_vector(group, btype, hyperbolic, branch).is_ok()
}

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GeneratingVector {
    group: AbelianGroup,
    btype: BranchingType,
    hyperbolic: Vec<GroupElement>,
    branch: Vec<GroupElement>,
}

impl fmt::Debug for GeneratingVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {}: {:?}", self.btype, self.group, self.branch)?;
        if !self.hyperbolic.is_empty() {
            write!(f, " hyperbolic {:?}", self.hyperbolic)?;
        }
        Ok(())
    }
}

impl GeneratingVector {
    pub fn new(
        group: AbelianGroup,
        btype: BranchingType,
        hyperbolic: Vec<GroupElement>,
        branch: Vec<GroupElement>,
    ) -> Result<Self> {
        check_generating_vector(&group, &btype, &hyperbolic, &branch)?;
        Ok(GeneratingVector {
            group,
            btype,
            hyperbolic,
            branch,
        })
    }

    /// A vector of type `[0; ord h₁, …, ord h_r]`. The entries must already be
    /// listed by nondecreasing order.
    pub fn spherical(group: AbelianGroup, branch: Vec<GroupElement>) -> Result<Self> {
        for g in &branch {
            group.check(g)?;
        }
        let btype = BranchingType::spherical(branch.iter().map(|h| group.element_order(h)).collect())
            .map_err(|_| {
                Error::InvalidVector(VectorViolation::WrongOrder {
                    position: branch
                        .iter()
                        .position(|h| group.element_order(h) < 2)
                        .unwrap_or(0),
                    expected: 2,
                    found: 1,
                })
            })?;
        Self::new(group, btype, Vec::new(), branch)
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn btype(&self) -> &BranchingType {
        &self.btype
    }

    pub fn hyperbolic(&self) -> &[GroupElement] {
        &self.hyperbolic
    }

    pub fn branch(&self) -> &[GroupElement] {
        &self.branch
    }

    pub fn genus(&self) -> u32 {
        hurwitz_genus(self.group.order(), &self.btype).expect("valid vectors have integral genus")
    }

    /// `Σ_V = ∪ ⟨h_i⟩`, the elements with fixed points.
    pub fn stabilizer_set(&self) -> BTreeSet<GroupElement> {
        let mut out: BTreeSet<GroupElement> = [self.group.identity()].into();
        for h in &self.branch {
            let mut x = h.clone();
            while out.insert(x.clone()) {
                x = self.group.add(&x, h);
            }
        }
        out
    }
}

pub fn stabilizer_set(v: &GeneratingVector) -> BTreeSet<GroupElement> {
    v.stabilizer_set()
}

/// Streams every generating vector of a spherical type in lexicographic
/// order of the entry tuple.
pub struct GeneratingVectorIter {
    table: GroupTable,
    btype: BranchingType,
    candidates: Vec<Vec<usize>>,
    /// per position: index into `candidates`
    cursor: Vec<usize>,
    /// partial sums and spans of the first `i` entries
    sums: Vec<usize>,
    spans: Vec<Mask>,
    /// product of the indices at positions `i..r-1`
    growth: Vec<u64>,
    depth: usize,
    done: bool,
}

pub fn enumerate_generating_vectors(group: &AbelianGroup, btype: &BranchingType) -> Result<GeneratingVectorIter> {
    if btype.genus_prime() > 0 {
        return Err(Error::Scope(
            "generating-vector enumeration supports only quotient genus 0".into(),
        ));
    }
    if group.order() > MAX_TABLE_ORDER {
        return Err(Error::CeilingExceeded {
            order: group.order(),
            ceiling: MAX_TABLE_ORDER,
        });
    }
    let table = GroupTable::new(group);
    let r = btype.len();
    let candidates: Vec<Vec<usize>> = btype
        .indices()
        .iter()
        .map(|&n| (0..table.n).filter(|&x| table.order(x) == n).collect())
        .collect();
    let mut growth = vec![1u64; r + 1];
    for i in (0..r.saturating_sub(1)).rev() {
        growth[i] = growth[i + 1].saturating_mul(btype.indices()[i] as u64);
    }
    let done = r == 0 && !group.is_trivial();
    Ok(GeneratingVectorIter {
        table,
        btype: btype.clone(),
        candidates,
        cursor: vec![0; r],
        sums: vec![0; r + 1],
        spans: vec![1; r + 1],
        growth,
        depth: 0,
        done,
    })
}

impl GeneratingVectorIter {
    fn emit(&self) -> GeneratingVector {
        let branch = (0..self.btype.len())
            .map(|i| self.table.element(self.candidates[i][self.cursor[i]]))
            .collect();
        GeneratingVector {
            group: self.table.group.clone(),
            btype: self.btype.clone(),
            hyperbolic: Vec::new(),
            branch,
        }
    }
}

impl Iterator for GeneratingVectorIter {
    type Item = GeneratingVector;

    fn next(&mut self) -> Option<GeneratingVector> {
        if self.done {
            return None;
        }
        let r = self.btype.len();
        if r == 0 {
            self.done = true;
            return Some(self.emit());
        }
        let n = self.table.n as u64;
        // Depth-first search. `depth` is the position being filled; a value of
        // `r` means a full tuple was just emitted and must be advanced.
        loop {
            if self.depth == r {
                self.depth -= 1;
                self.cursor[self.depth] += 1;
            }
            let i = self.depth;
            if self.cursor[i] >= self.candidates[i].len() {
                if i == 0 {
                    self.done = true;
                    return None;
                }
                self.cursor[i] = 0;
                self.depth -= 1;
                self.cursor[self.depth] += 1;
                continue;
            }
            let x = self.candidates[i][self.cursor[i]];
            if i == r - 1 {
                // the last entry is forced by the sum; skip straight to it
                let need = self.table.neg(self.sums[i]);
                match self.candidates[i][self.cursor[i]..].iter().position(|&y| y == need) {
                    Some(off) => {
                        self.cursor[i] += off;
                        if self.spans[i] == self.table.full() {
                            self.depth = r;
                            return Some(self.emit());
                        }
                        self.cursor[i] = self.candidates[i].len();
                    }
                    None => self.cursor[i] = self.candidates[i].len(),
                }
                continue;
            }
            let span = self.table.extend(self.spans[i], x);
            let missing = n / span.count_ones() as u64;
            if missing > self.growth[i + 1] {
                self.cursor[i] += 1;
                continue;
            }
            self.sums[i + 1] = self.table.add(self.sums[i], x);
            self.spans[i + 1] = span;
            self.depth += 1;
            self.cursor[self.depth] = 0;
        }
    }
}

/// The specific condition of an algebraic datum that fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum DatumViolation {
    TooFewFactors { n: usize },
    CountMismatch { kernels: usize, vectors: usize },
    KernelOutsideGroup { slot: usize },
    GroupMismatch { slot: usize, expected: String, found: String },
    Vector { slot: usize, violation: VectorViolation },
    NotMinimal { slot: usize, intersection_order: u32 },
    NotFree { witness: Vec<u32> },
}

impl fmt::Display for DatumViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DatumViolation::TooFewFactors { n } => write!(f, "need at least 2 curves, got {n}"),
            DatumViolation::CountMismatch { kernels, vectors } => {
                write!(f, "{kernels} kernels but {vectors} vectors")
            }
            DatumViolation::KernelOutsideGroup { slot } => {
                write!(f, "kernel {} is not a subgroup of the group", slot + 1)
            }
            DatumViolation::GroupMismatch {
                slot,
                expected,
                found,
            } => write!(
                f,
                "vector {} lives in {found} but the quotient by kernel {} is {expected}",
                slot + 1,
                slot + 1
            ),
            DatumViolation::Vector { slot, violation } => {
                write!(f, "vector {}: {violation}", slot + 1)
            }
            DatumViolation::NotMinimal {
                slot,
                intersection_order,
            } => write!(
                f,
                "minimality violated: the kernels other than {} meet in a subgroup of order {intersection_order}",
                slot + 1
            ),
            DatumViolation::NotFree { witness } => write!(
                f,
                "freeness violated: shared stabilizer ⟨{witness:?}⟩ has fixed points on every curve"
            ),
        }
    }
}

/// `(G, K₁, …, K_n, V₁, …, V_n)` with `V_i` a generating vector of `G/K_i`.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "crate::datum_file::DatumFile", into = "crate::datum_file::DatumFile")]
pub struct AlgebraicDatum {
    group: AbelianGroup,
    kernels: Vec<Subgroup>,
    projections: Vec<QuotientMap>,
    vectors: Vec<GeneratingVector>,
}

impl fmt::Debug for AlgebraicDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AlgebraicDatum")
            .field("group", &self.group)
            .field("kernels", &self.kernels)
            .field("vectors", &self.vectors)
            .finish()
    }
}

impl AlgebraicDatum {
    /// Checks that the pieces fit together (matching quotients, valid
    /// vectors) without checking minimality, freeness or genera.
    pub fn assemble(group: AbelianGroup, kernels: Vec<Subgroup>, vectors: Vec<GeneratingVector>) -> Result<Self> {
        if kernels.len() != vectors.len() {
            return Err(DatumViolation::CountMismatch {
                kernels: kernels.len(),
                vectors: vectors.len(),
            }
            .into());
        }
        if kernels.len() < 2 {
            return Err(DatumViolation::TooFewFactors { n: kernels.len() }.into());
        }
        let mut projections = Vec::with_capacity(kernels.len());
        for (slot, (k, v)) in kernels.iter().zip(&vectors).enumerate() {
            if k.parent() != &group {
                return Err(DatumViolation::KernelOutsideGroup { slot }.into());
            }
            let q = quotient(&group, k)?;
            if q.target() != v.group() {
                return Err(DatumViolation::GroupMismatch {
                    slot,
                    expected: q.target().to_string(),
                    found: v.group().to_string(),
                }
                .into());
            }
            projections.push(q);
        }
        Ok(AlgebraicDatum {
            group,
            kernels,
            projections,
            vectors,
        })
    }

    /// A fully validated datum: minimal realization, free action, all
    /// curves of genus at least 2.
    pub fn new(group: AbelianGroup, kernels: Vec<Subgroup>, vectors: Vec<GeneratingVector>) -> Result<Self> {
        let d = Self::assemble(group, kernels, vectors)?;
        d.validate()?;
        Ok(d)
    }

    /// A datum with a free action and curves of genus at least 2 whose
    /// kernels need not form a minimal realization.
    pub fn new_relaxed(group: AbelianGroup, kernels: Vec<Subgroup>, vectors: Vec<GeneratingVector>) -> Result<Self> {
        let d = Self::assemble(group, kernels, vectors)?;
        if let Some(w) = d.free_action_witness() {
            return Err(DatumViolation::NotFree { witness: w.0 }.into());
        }
        curve_genera(&d)?;
        Ok(d)
    }

    /// Builds a datum from kernel generators and branch elements given in
    /// ambient coordinates of `group`; entries are projected to `G/K_i`.
    pub fn from_ambient(
        group: AbelianGroup,
        kernel_generators: &[Vec<GroupElement>],
        types: &[BranchingType],
        hyperbolic: &[Vec<GroupElement>],
        branch: &[Vec<GroupElement>],
    ) -> Result<Self> {
        let n = kernel_generators.len();
        if types.len() != n || branch.len() != n || hyperbolic.len() != n {
            return Err(DatumViolation::CountMismatch {
                kernels: n,
                vectors: branch.len(),
            }
            .into());
        }
        let mut kernels = Vec::new();
        let mut vectors = Vec::new();
        for slot in 0..n {
            let k = subgroup_generated(&group, &kernel_generators[slot])?;
            let q = quotient(&group, &k)?;
            let project = |els: &[GroupElement]| -> Result<Vec<GroupElement>> {
                els.iter()
                    .map(|g| {
                        group.check(g)?;
                        Ok(q.project(g))
                    })
                    .collect()
            };
            let v = GeneratingVector::new(
                q.target().clone(),
                types[slot].clone(),
                project(&hyperbolic[slot])?,
                project(&branch[slot])?,
            )
            .map_err(|e| match e {
                Error::InvalidVector(violation) => DatumViolation::Vector { slot, violation }.into(),
                other => other,
            })?;
            kernels.push(k);
            vectors.push(v);
        }
        Self::new(group, kernels, vectors)
    }

    pub fn validate(&self) -> Result<()> {
        if let Some((slot, order)) = minimality_failure(&self.kernels) {
            return Err(DatumViolation::NotMinimal {
                slot,
                intersection_order: order,
            }
            .into());
        }
        if let Some(w) = self.free_action_witness() {
            return Err(DatumViolation::NotFree { witness: w.0 }.into());
        }
        curve_genera(self)?;
        Ok(())
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn n(&self) -> usize {
        self.kernels.len()
    }

    pub fn kernels(&self) -> &[Subgroup] {
        &self.kernels
    }

    pub fn projections(&self) -> &[QuotientMap] {
        &self.projections
    }

    pub fn vectors(&self) -> &[GeneratingVector] {
        &self.vectors
    }

    /// `G_i = G/K_i`.
    pub fn factor_group(&self, i: usize) -> &AbelianGroup {
        self.projections[i].target()
    }

    /// The full preimage in `G` of `Σ_{V_i}`.
    pub fn stabilizer_preimage(&self, i: usize) -> BTreeSet<GroupElement> {
        let sigma = self.vectors[i].stabilizer_set();
        self.group
            .elements()
            .filter(|g| sigma.contains(&self.projections[i].project(g)))
            .collect()
    }

    /// A nonidentity element with fixed points on every curve, if any.
    pub fn free_action_witness(&self) -> Option<GroupElement> {
        let mut common = self.stabilizer_preimage(0);
        for i in 1..self.n() {
            let next = self.stabilizer_preimage(i);
            common.retain(|g| next.contains(g));
        }
        let id = self.group.identity();
        common.into_iter().find(|g| *g != id)
    }

    pub fn is_minimal(&self) -> bool {
        is_minimal_realization(&self.kernels)
    }

    pub fn is_spherical(&self) -> bool {
        self.vectors.iter().all(|v| v.btype().genus_prime() == 0)
    }
}

pub fn is_free_action(d: &AlgebraicDatum) -> bool {
    d.free_action_witness().is_none()
}

fn minimality_failure(kernels: &[Subgroup]) -> Option<(usize, u32)> {
    for i in 0..kernels.len() {
        let mut others = kernels.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, k)| k);
        let Some(first) = others.next() else { continue };
        let meet = others.fold(first.clone(), |acc, k| acc.intersection(k));
        if !meet.is_trivial() {
            return Some((i, meet.order()));
        }
    }
    None
}

/// For every slot, the other kernels intersect trivially.
pub fn is_minimal_realization(kernels: &[Subgroup]) -> bool {
    minimality_failure(kernels).is_none()
}

/// Hurwitz genera of the curves; every genus must be at least 2.
pub fn curve_genera(d: &AlgebraicDatum) -> Result<Vec<u32>> {
    let mut out = Vec::with_capacity(d.n());
    for (slot, v) in d.vectors.iter().enumerate() {
        let genus = hurwitz_genus(v.group().order(), v.btype())?;
        if genus < 2 {
            return Err(Error::NotVip { slot, genus });
        }
        out.push(genus);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(v: &[u32]) -> GroupElement {
        GroupElement(v.to_vec())
    }

    fn t(s: &str) -> BranchingType {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display_types() {
        let bt = t("[0; 2,2,2,2,2,2]");
        assert_eq!(bt.len(), 6);
        assert_eq!(bt.to_string(), "[0; 2,2,2,2,2,2]");
        assert_eq!(bt.exponent_notation(), "2^6");
        assert_eq!(t("[1; 4,2]").indices(), &[2, 4]);
        assert_eq!(t("[0; 2,2,4,4,4]").exponent_notation(), "2^2 4^3");
        assert!("[0 2,2]".parse::<BranchingType>().is_err());
        assert!("[0; 1,2]".parse::<BranchingType>().is_err());
    }

    #[test]
    fn hurwitz_examples() {
        assert_eq!(hurwitz_genus(8, &t("[0; 2,2,2,2,2,2]")).unwrap(), 5);
        assert_eq!(hurwitz_genus(8, &t("[0; 2,2,2,2,2]")).unwrap(), 3);
        assert_eq!(hurwitz_genus(3, &t("[0; 3,3,3,3]")).unwrap(), 2);
        assert_eq!(hurwitz_genus(2, &t("[0; 2,2]")).unwrap(), 0);
        assert!(hurwitz_genus(2, &t("[0; 2,2,2]")).is_err());
        assert!(hurwitz_genus(3, &t("[0; 3]")).is_err());
    }

    #[test]
    fn generating_vector_checks() {
        let g = AbelianGroup::new(&[2, 2, 2]).unwrap();
        let (e1, e2, e3) = (el(&[1, 0, 0]), el(&[0, 1, 0]), el(&[0, 0, 1]));
        let v1 = vec![e1.clone(), e1.clone(), e2.clone(), e2.clone(), e3.clone(), e3];
        assert!(is_generating_vector(&g, &t("[0; 2,2,2,2,2,2]"), &[], &v1));
        let short = vec![e1.clone(), e1.clone(), e2.clone(), e2.clone()];
        assert!(matches!(
            check_generating_vector(&g, &t("[0; 2,2,2,2]"), &[], &short),
            Err(VectorViolation::DoesNotGenerate { span_order: 4, group_order: 8 })
        ));
        let h = AbelianGroup::new(&[2, 2]).unwrap();
        assert!(is_generating_vector(
            &h,
            &t("[0; 2,2,2]"),
            &[],
            &[el(&[1, 0]), el(&[0, 1]), el(&[1, 1])]
        ));
        assert!(matches!(
            check_generating_vector(&h, &t("[0; 2,2]"), &[], &[el(&[1, 0]), el(&[0, 1])]),
            Err(VectorViolation::NonzeroSum { .. })
        ));
    }

    fn brute_force_count(g: &AbelianGroup, bt: &BranchingType) -> usize {
        let elems: Vec<GroupElement> = g.elements().collect();
        let r = bt.len();
        let total = elems.len().pow(r as u32);
        (0..total)
            .filter(|&mut_idx| {
                let mut idx = mut_idx;
                let tuple: Vec<GroupElement> = (0..r)
                    .map(|_| {
                        let x = elems[idx % elems.len()].clone();
                        idx /= elems.len();
                        x
                    })
                    .collect();
                is_generating_vector(g, bt, &[], &tuple)
            })
            .count()
    }

    #[test]
    fn enumerator_examples() {
        let h = AbelianGroup::new(&[2, 2]).unwrap();
        let vs: Vec<_> = enumerate_generating_vectors(&h, &t("[0; 2,2,2]")).unwrap().collect();
        assert_eq!(vs.len(), 6);
        let z2 = AbelianGroup::cyclic(2);
        let vs: Vec<_> = enumerate_generating_vectors(&z2, &t("[0; 2,2]")).unwrap().collect();
        assert_eq!(vs.len(), 1);
        assert_eq!(vs[0].branch(), &[el(&[1]), el(&[1])]);
        let z3 = AbelianGroup::cyclic(3);
        let vs: Vec<_> = enumerate_generating_vectors(&z3, &t("[0; 3,3]")).unwrap().collect();
        assert_eq!(
            vs.iter().map(|v| v.branch().to_vec()).collect::<Vec<_>>(),
            vec![vec![el(&[1]), el(&[2])], vec![el(&[2]), el(&[1])]]
        );
        assert!(enumerate_generating_vectors(&z3, &t("[1; 3,3]")).is_err());
    }

    #[test]
    fn enumerator_matches_brute_force() {
        let cases = [
            (vec![2, 2, 2], "[0; 2,2,2,2,2]"),
            (vec![2, 4], "[0; 2,4,4]"),
            (vec![2, 4], "[0; 2,2,4,4]"),
            (vec![3, 3], "[0; 3,3,3,3]"),
            (vec![6], "[0; 2,3,6]"),
            (vec![2, 2], "[0; 2,2,2,2]"),
        ];
        for (f, s) in cases {
            let g = AbelianGroup::new(&f).unwrap();
            let bt = t(s);
            let vs: Vec<GeneratingVector> = enumerate_generating_vectors(&g, &bt).unwrap().collect();
            assert_eq!(vs.len(), brute_force_count(&g, &bt), "{g} {bt}");
            assert!(vs.windows(2).all(|w| w[0].branch() < w[1].branch()));
            assert!(vs.iter().all(|v| is_generating_vector(&g, &bt, &[], v.branch())));
        }
    }

    fn genus_five_datum() -> AlgebraicDatum {
        let g = AbelianGroup::new(&[2, 2, 2]).unwrap();
        let e = |v: &[u32]| el(v);
        let v1 = [[1, 0, 0], [1, 0, 0], [0, 1, 0], [0, 1, 0], [0, 0, 1], [0, 0, 1]];
        let v2 = [[1, 0, 1], [1, 0, 1], [1, 1, 0], [1, 1, 0], [1, 1, 1], [1, 1, 1]];
        let v3 = [[1, 0, 1], [1, 0, 1], [0, 1, 1], [0, 1, 1], [1, 1, 1], [1, 1, 1]];
        let vecs: Vec<Vec<GroupElement>> = [v1, v2, v3]
            .iter()
            .map(|v| v.iter().map(|x| e(x)).collect())
            .collect();
        AlgebraicDatum::from_ambient(
            g,
            &[vec![], vec![], vec![]],
            &[t("[0; 2,2,2,2,2,2]"), t("[0; 2,2,2,2,2,2]"), t("[0; 2,2,2,2,2,2]")],
            &[vec![], vec![], vec![]],
            &vecs,
        )
        .unwrap()
    }

    #[test]
    fn stabilizer_sets() {
        let d = genus_five_datum();
        let s1: Vec<_> = d.vectors()[0].stabilizer_set().into_iter().collect();
        assert_eq!(s1, vec![el(&[0, 0, 0]), el(&[0, 0, 1]), el(&[0, 1, 0]), el(&[1, 0, 0])]);
        let s2: BTreeSet<_> = d.vectors()[1].stabilizer_set();
        let expect: BTreeSet<_> = [el(&[0, 0, 0]), el(&[1, 0, 1]), el(&[1, 1, 0]), el(&[1, 1, 1])].into();
        assert_eq!(s2, expect);
    }

    #[test]
    fn genus_five_datum_is_free() {
        let d = genus_five_datum();
        assert!(is_free_action(&d));
        assert_eq!(curve_genera(&d).unwrap(), vec![5, 5, 5]);
    }

    #[test]
    fn repeated_vector_is_not_free() {
        let d = genus_five_datum();
        let v = d.vectors()[0].clone();
        let g = d.group().clone();
        let k = Subgroup::trivial(&g);
        let bad = AlgebraicDatum::assemble(g.clone(), vec![k.clone(), k.clone(), k.clone()], vec![v.clone(), v.clone(), v.clone()]).unwrap();
        assert!(!is_free_action(&bad));
        assert!(matches!(
            AlgebraicDatum::new(g, vec![k.clone(), k.clone(), k], vec![v.clone(), v.clone(), v]),
            Err(Error::InvalidDatum(DatumViolation::NotFree { .. }))
        ));

        let z2 = AbelianGroup::cyclic(2);
        let w = GeneratingVector::spherical(z2.clone(), vec![el(&[1]), el(&[1])]).unwrap();
        let k = Subgroup::trivial(&z2);
        let surf = AlgebraicDatum::assemble(z2, vec![k.clone(), k], vec![w.clone(), w]).unwrap();
        assert!(!is_free_action(&surf));
    }

    #[test]
    fn minimal_realization_examples() {
        let g = AbelianGroup::new(&[2, 2]).unwrap();
        let triv = Subgroup::trivial(&g);
        assert!(is_minimal_realization(&[triv.clone(), triv.clone(), triv.clone()]));
        let tk = subgroup_generated(&g, &[el(&[1, 0])]).unwrap();
        assert!(!is_minimal_realization(&[tk.clone(), tk.clone(), triv]));
        let a = subgroup_generated(&g, &[el(&[0, 1])]).unwrap();
        let b = subgroup_generated(&g, &[el(&[1, 1])]).unwrap();
        assert!(is_minimal_realization(&[tk, a, b]));
    }

    #[test]
    fn free_action_is_monotone() {
        // adding branch points can only shrink the set of free data
        let d = genus_five_datum();
        let g = d.group().clone();
        let k = Subgroup::trivial(&g);
        let enlarge = |slot: usize| {
            let mut branch = d.vectors()[slot].branch().to_vec();
            branch.extend([el(&[1, 0, 0]), el(&[1, 0, 0])]);
            branch.sort_by_key(|h| g.element_order(h));
            GeneratingVector::spherical(g.clone(), branch).unwrap()
        };
        let one = AlgebraicDatum::assemble(
            g.clone(),
            vec![k.clone(), k.clone(), k.clone()],
            vec![d.vectors()[0].clone(), d.vectors()[1].clone(), enlarge(2)],
        )
        .unwrap();
        // e1 still has no fixed points on the second curve
        assert!(is_free_action(&one));
        let (v1, v2) = (enlarge(1), enlarge(2));
        let both = AlgebraicDatum::assemble(
            g.clone(),
            vec![k.clone(), k.clone(), k],
            vec![d.vectors()[0].clone(), v1, v2],
        )
        .unwrap();
        assert!(!is_free_action(&both));
        assert_eq!(both.free_action_witness(), Some(el(&[1, 0, 0])));
    }

    #[test]
    fn genus_below_two_is_rejected() {
        let z2 = AbelianGroup::cyclic(2);
        let k = Subgroup::trivial(&z2);
        let w = GeneratingVector::spherical(z2.clone(), vec![el(&[1]), el(&[1]), el(&[1]), el(&[1])]).unwrap();
        let d = AlgebraicDatum::assemble(z2, vec![k.clone(), k], vec![w.clone(), w]).unwrap();
        assert!(matches!(curve_genera(&d), Err(Error::NotVip { slot: 0, genus: 1 })));
    }
}
