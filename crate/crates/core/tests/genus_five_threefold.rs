use vipclass::chevalley_weil::{curve_character, sym2_character, vip_character};
use vipclass::covering::{curve_genera, is_free_action, AlgebraicDatum, BranchingType};
use vipclass::decomposition::{
    branch_data, dual_character_relation_check, eigensheaf_multidegree, pluri_dimension, Decomposition,
};
use vipclass::galois::GaloisGroup;
use vipclass::groups::{AbelianGroup, Character, GroupElement};
use vipclass::invariants::{canonical_self_intersection, euler_char_sheaf, hodge_numbers, topological_euler};
use vipclass::maps::{map_status, non_hyperelliptic_certificate, reasons, MapStatus};

fn datum() -> AlgebraicDatum {
    let g = AbelianGroup::new(&[2, 2, 2]).unwrap();
    let e = |v: &[u32; 3]| GroupElement(v.to_vec());
    let v1 = [[1, 0, 0], [1, 0, 0], [0, 1, 0], [0, 1, 0], [0, 0, 1], [0, 0, 1]];
    let v2 = [[1, 0, 1], [1, 0, 1], [1, 1, 0], [1, 1, 0], [1, 1, 1], [1, 1, 1]];
    let v3 = [[1, 0, 1], [1, 0, 1], [0, 1, 1], [0, 1, 1], [1, 1, 1], [1, 1, 1]];
    let branch: Vec<Vec<GroupElement>> = [v1, v2, v3].iter().map(|v| v.iter().map(e).collect()).collect();
    let t: BranchingType = "[0; 2,2,2,2,2,2]".parse().unwrap();
    AlgebraicDatum::from_ambient(g, &[vec![], vec![], vec![]], &[t.clone(), t.clone(), t], &[vec![], vec![], vec![]], &branch)
        .unwrap()
}

fn ch(v: &[u32]) -> Character {
    Character(v.to_vec())
}

#[test]
fn numerical_invariants() {
    let d = datum();
    assert!(is_free_action(&d));
    assert_eq!(curve_genera(&d).unwrap(), vec![5, 5, 5]);
    assert_eq!(euler_char_sheaf(&d).unwrap(), -8);
    assert_eq!(canonical_self_intersection(&d).unwrap(), 384);
    assert_eq!(topological_euler(&d).unwrap(), -64);
    let h = hodge_numbers(&d).unwrap();
    assert_eq!((h.h30, h.h10, h.h20), (16, 0, 7));
    assert_eq!(h.chi_o(), -8);
    assert_eq!(h.euler(), -64);
}

#[test]
fn plurigenera_by_both_routes() {
    let d = datum();
    for m in 1..=5 {
        let kunneth = vip_character(&d, m).unwrap().total();
        assert_eq!(pluri_dimension(&d, m).unwrap(), kunneth, "m = {m}");
    }
    assert_eq!(pluri_dimension(&d, 1).unwrap(), 16);
    assert_eq!(pluri_dimension(&d, 2).unwrap(), 216);
    let trivial = vip_character(&d, 1).unwrap().get(&[ch(&[0, 0, 0]), ch(&[0, 0, 0]), ch(&[0, 0, 0])]);
    assert_eq!(trivial, 0);
}

#[test]
fn canonical_map_is_birational_and_base_point_free() {
    let d = datum();
    let a = map_status(&d, 1).unwrap();
    assert!(a.bpf);
    assert!(a.separates_group);
    assert!(a.separates_base);
    assert_eq!(a.status, MapStatus::Birational(reasons::SEPARATION_CRITERIA.into()));
    assert!(a.normalization_flag);
    let a5 = map_status(&d, 5).unwrap();
    assert!(a5.status.is_birational());
}

#[test]
fn branch_data_and_degrees() {
    let d = datum();
    let comps = branch_data(&d).unwrap();
    assert_eq!(comps.len(), 18);
    assert!(comps.iter().all(|c| c.stabilizer.order() == 2 && c.order == 2));
    let triv = [ch(&[0, 0, 0]), ch(&[0, 0, 0]), ch(&[0, 0, 0])];
    assert_eq!(eigensheaf_multidegree(&d, 1, &triv).unwrap().degrees, vec![-2, -2, -2]);

    // grouping the 16 invariant monomials x_i y_j z_k by the character of
    // the section they span gives these multidegrees
    let dec = Decomposition::new(&d).unwrap();
    let mut degrees: Vec<Vec<i64>> = dec.constituents(1).unwrap().into_iter().map(|(_, deg)| deg).collect();
    degrees.sort();
    let mut expected = vec![
        vec![0, 0, 0],
        vec![0, 0, 0],
        vec![0, 0, 0],
        vec![0, 0, 0],
        vec![0, 0, 1],
        vec![0, 1, 0],
        vec![0, 1, 1],
        vec![1, 0, 0],
        vec![1, 0, 0],
    ];
    expected.sort();
    assert_eq!(degrees, expected);
}

#[test]
fn dual_relation_for_every_character() {
    let d = datum();
    let galois = GaloisGroup::new(&d);
    assert_eq!(galois.order(), 64);
    for chi in galois.characters() {
        assert!(dual_character_relation_check(&d, &chi).unwrap());
    }
}

#[test]
fn canonical_and_bicanonical_curve_characters() {
    let d = datum();
    let v = &d.vectors()[0];
    let c1 = curve_character(1, v).unwrap();
    assert_eq!(c1.get(&ch(&[1, 1, 1])), 2);
    assert_eq!(c1.get(&ch(&[0, 1, 1])), 1);
    assert_eq!(c1.get(&ch(&[1, 0, 1])), 1);
    assert_eq!(c1.get(&ch(&[1, 1, 0])), 1);
    assert_eq!(c1.total(), 5);
    let ideal = sym2_character(&c1).checked_sub(&curve_character(2, v).unwrap()).unwrap();
    assert_eq!(ideal.iter().map(|(c, k)| (c.clone(), k)).collect::<Vec<_>>(), vec![(ch(&[0, 0, 0]), 3)]);
    assert!(non_hyperelliptic_certificate(v).unwrap());
}
