use super::*;
use crate::complex::{binomial, is_proper_coloring};
use crate::manifold::{is_combinatorial_manifold, ManifoldVerdict};
use crate::shelling::{find_shelling, h_from_shelling};
use std::time::Instant;

fn set(d: usize, v: &[usize]) -> IndexSet {
    IndexSet::new(d, v.iter().copied()).unwrap()
}

#[test]
fn class_counts() {
    assert_eq!(enumerate_basic_flips(1).unwrap().len(), 3);
    assert_eq!(enumerate_basic_flips(2).unwrap().len(), 7);
    let c3 = enumerate_basic_flips(3).unwrap();
    assert_eq!(c3.len(), 15);
    assert_eq!(c3.iter().filter(|c| c.sufficient).count(), 8);
    assert_eq!(
        enumerate_basic_flips(7),
        Err(CatalogError::DimensionCapExceeded { d: 7, cap: 6 })
    );
    for d in 1..=3 {
        cross_validate(&enumerate_basic_flips(d).unwrap()).unwrap();
    }
}

#[test]
fn complement_is_an_involution() {
    for d in 1..=4 {
        let classes = enumerate_basic_flips(d).unwrap();
        let by_index: BTreeMap<&IndexSet, &FlipClass> =
            classes.iter().map(|c| (&c.canonical_index, c)).collect();
        for c in &classes {
            assert_eq!(by_index[&c.complement_class].complement_class, c.canonical_index);
        }
        assert_eq!(by_index[&set(d, &[0])].complement_class, set(d, &[0]));
    }
}

#[test]
fn table_and_json() {
    let classes = enumerate_basic_flips(2).unwrap();
    let t = render_table(&classes);
    assert_eq!(t.lines().count(), 8);
    assert!(t.starts_with("I "));
    let v: serde_json::Value = serde_json::from_str(&catalog_json(&classes)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 7);
    assert_eq!(v[0]["facets"], 4);
}

#[test]
fn stacked_spheres() {
    let (c1, _) = stacked_cross_sphere(1, 2);
    assert_eq!(c1, cross_polytope(2));
    let (c2, k2) = stacked_cross_sphere(2, 2);
    assert_eq!(c2.num_facets(), 14);
    assert_eq!(c2.h_vector().unwrap(), vec![1, 6, 6, 1]);
    assert!(is_proper_coloring(&c2, &k2, 3));
    let (c3, _) = stacked_cross_sphere(3, 3);
    let h = c3.h_vector().unwrap();
    for (i, hi) in h.iter().enumerate().take(4).skip(1) {
        assert_eq!(*hi, 3 * binomial(4, i as i64));
    }
}

#[test]
fn stacked_h_by_shelling() {
    let start = Instant::now();
    let (c, _) = stacked_cross_sphere(3, 3);
    let order = find_shelling(&c, 63).unwrap().unwrap();
    assert_eq!(h_from_shelling(&c, &order).unwrap(), c.h_vector().unwrap());
    eprintln!("{} facets shelled in {:?}", c.num_facets(), start.elapsed());
}

#[test]
fn barycentric() {
    let (c1, k1) = barycentric_sphere(1).unwrap();
    assert_eq!((c1.num_facets(), c1.vertices().len()), (6, 6));
    assert!(is_proper_coloring(&c1, &k1, 2));
    let (c2, k2) = barycentric_sphere(2).unwrap();
    assert_eq!(c2.num_facets(), 24);
    assert!(is_proper_coloring(&c2, &k2, 3));
    assert_eq!(is_combinatorial_manifold(&c2).unwrap(), ManifoldVerdict::Closed);
    assert!(barycentric_sphere(4).is_err());
}

#[test]
fn reducibility_d2() {
    for i in [set(2, &[0]), set(2, &[1]), set(2, &[0, 1])] {
        let w = find_reducibility_witness(&i).unwrap().expect("some ambient works");
        assert!(w.holds, "{i} on {}", w.ambient);
    }
    // the worked case sits in the octahedron
    let w = find_reducibility_witness(&set(2, &[1])).unwrap().unwrap();
    assert_eq!(w.ambient, "cross-polytope");
    assert!(find_reducibility_witness(&set(2, &[2])).is_err());
}

#[test]
fn pentagon_both_ways() {
    for reverse in [false, true] {
        let w = verify_pentagon_composition(reverse).unwrap().expect("composition found");
        assert!(w.holds);
        assert_ne!(w.ambient, "cross-polytope");
    }
}

#[test]
fn matroid() {
    let r = check_matroid_bases(&printed_bases());
    assert!(r.exchange_holds);
    assert_eq!((r.rank, r.ground_size), (Some(3), 6));
    assert_eq!(r.parallel_pairs.as_ref().map(Vec::len), Some(3));
    let mut fewer = printed_bases();
    fewer.remove(3);
    let r = check_matroid_bases(&fewer);
    assert!(!r.exchange_holds);
    assert!(r.witness.is_some());
    let single = vec![BTreeSet::from([1, 2])];
    assert!(check_matroid_bases(&single).exchange_holds);
}


#[test]
fn reducibility_d3() {
    let start = Instant::now();
    for i in IndexSet::all_canonical(3).into_iter().filter(|i| !i.contains(3)) {
        let w = find_reducibility_witness(&i).unwrap().expect("some ambient works");
        assert!(w.holds, "{i} on {}", w.ambient);
        eprintln!("{i}: {} after {:?}", w.ambient, start.elapsed());
    }
}

