use std::collections::{BTreeSet, HashMap};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vipclass::classification::{
    analyze_family, canonical_form, classify, equivalent, summarize, Convention, FamilyRecord, SearchSpec, SummaryView,
};
use vipclass::covering::{is_free_action, is_minimal_realization, AlgebraicDatum};
use vipclass::datum_file::DatumFile;
use vipclass::groups::{automorphisms, AbelianGroup, Automorphism, GroupElement, DEFAULT_AUTOMORPHISM_CEILING};

fn run(cap: u32, convention: Convention) -> Vec<FamilyRecord> {
    classify(&SearchSpec::new(-1, cap, true).with_m_range([1, 2]).with_convention(convention)).unwrap()
}

/// Applies a random automorphism, shuffles every vector and rotates the
/// slots by `shift`.
fn orbit_member(d: &AlgebraicDatum, rng: &mut ChaCha8Rng, shift: usize) -> AlgebraicDatum {
    let auts = automorphisms(d.group(), DEFAULT_AUTOMORPHISM_CEILING).unwrap();
    moved(d, auts.choose(rng).unwrap(), rng, shift)
}

fn moved(d: &AlgebraicDatum, phi: &Automorphism, rng: &mut ChaCha8Rng, shift: usize) -> AlgebraicDatum {
    let image = |c: &Vec<u32>| phi.apply(d.group(), &GroupElement(c.clone())).0;
    let mut f = DatumFile::from_datum(d);
    for k in &mut f.kernels {
        *k = k.iter().map(image).collect();
    }
    for v in &mut f.vectors {
        v.elements = v.elements.iter().map(image).collect();
        v.elements.shuffle(rng);
    }
    f.kernels.rotate_left(shift);
    f.vectors.rotate_left(shift);
    AlgebraicDatum::try_from(f).unwrap()
}

fn slot_multiset(r: &FamilyRecord) -> Vec<(u32, String)> {
    let mut s: Vec<_> = r.kernel_orders.iter().copied().zip(r.types.iter().map(|t| t.to_string())).collect();
    s.sort();
    s
}

#[test]
fn byte_identical_across_runs_and_thread_counts() {
    let spec = SearchSpec::new(-1, 16, true).with_m_range([1, 2]);
    let a = serde_json::to_string(&classify(&spec).unwrap()).unwrap();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let b = pool.install(|| serde_json::to_string(&classify(&spec).unwrap()).unwrap());
    assert_eq!(a, b);
}

#[test]
fn records_are_constant_on_orbits() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut auts: HashMap<AbelianGroup, Vec<Automorphism>> = HashMap::new();
    for r in run(16, Convention::Table) {
        let group_auts = auts
            .entry(r.group.clone())
            .or_insert_with(|| automorphisms(&r.group, DEFAULT_AUTOMORPHISM_CEILING).unwrap());
        let form = canonical_form(&r.representative).unwrap();
        for _ in 0..2 {
            let shift = rng.gen_range(0..3);
            let phi = group_auts.choose(&mut rng).unwrap();
            let d = moved(&r.representative, phi, &mut rng, shift);
            assert_eq!(canonical_form(&d).unwrap(), form);
            let s = analyze_family(d, &[1, 2]).unwrap();
            assert_eq!(s.invariants.hodge, r.invariants.hodge);
            assert_eq!(s.invariants.chi_o, r.invariants.chi_o);
            assert_eq!(s.analyses, r.analyses, "{}", r.group);
            assert_eq!(s.minimal_realization, r.minimal_realization);
            assert_eq!(slot_multiset(&s), slot_multiset(&r));
            let mut genera = s.genera.clone();
            genera.rotate_right(shift);
            assert_eq!(genera, r.genera);
        }
    }
}

#[test]
fn table_convention_representatives() {
    let records = run(16, Convention::Table);
    assert_eq!(records.len(), 347);
    for r in &records {
        let d = &r.representative;
        assert!(is_free_action(d));
        assert!(r.genera.iter().all(|&g| g >= 2));
        assert_eq!(r.minimal_realization, is_minimal_realization(d.kernels()));
        assert!(d.kernels()[0].intersection(&d.kernels()[1]).is_trivial());
        assert!(d.kernels()[1].intersection(&d.kernels()[2]).is_trivial());
        assert!(r.kernel_orders.windows(2).all(|w| w[0] <= w[1]));
    }
    let non_minimal: Vec<_> = records.iter().filter(|r| !r.minimal_realization).collect();
    assert_eq!(non_minimal.len(), 14);
    assert!(non_minimal.iter().all(|r| r.group.invariant_factors() == [2, 2, 2, 2]));
}

#[test]
fn minimal_convention_gives_pairwise_inequivalent_minimal_data() {
    let records = run(16, Convention::Minimal);
    let forms: BTreeSet<_> = records.iter().map(|r| canonical_form(&r.representative).unwrap()).collect();
    assert_eq!(forms.len(), records.len());
    for r in &records {
        assert!(r.minimal_realization);
        assert!(is_free_action(&r.representative));
    }
    // every minimal class appears under the table convention, up to slot order
    let table: BTreeSet<_> = run(16, Convention::Table)
        .iter()
        .filter(|r| r.minimal_realization)
        .map(|r| canonical_form(&r.representative).unwrap())
        .collect();
    assert_eq!(forms, table);
    assert!(!summarize(&records, SummaryView::Criteria).is_empty());
}

#[test]
fn equivalence_spot_checks() {
    let records = run(8, Convention::Table);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for pair in records.windows(2).take(20) {
        let (a, b) = (&pair[0].representative, &pair[1].representative);
        let a2 = orbit_member(a, &mut rng, 1);
        let a3 = orbit_member(&a2, &mut rng, 2);
        assert!(equivalent(a, a).unwrap());
        assert!(equivalent(a, &a2).unwrap() && equivalent(&a2, a).unwrap());
        assert!(equivalent(a, &a3).unwrap() && equivalent(&a2, &a3).unwrap());
        assert_eq!(equivalent(a, b).unwrap(), equivalent(b, a).unwrap());
    }
}
