//! The catalog of basic cross-flips and checks built on it.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use itertools::Itertools;
use serde::Serialize;

use crate::complex::{Coloring, Complex};
use crate::diamond::{
    complement_index, cross_polytope, diamond_closed_form, h_vector_formula, rho, sigma,
    DiamondError, IndexSet,
};
use crate::iso::{are_isomorphic, find_isomorphism, IsoOptions, VertexMap};
use crate::moves::{apply_cross_flip, apply_cross_flip_full, find_cross_flip_sites, CrossFlip, MoveError};
use crate::vertex::{Face, Vertex};

pub const DEFAULT_DIM_CAP: usize = 6;
pub const BARYCENTRIC_CAP: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CatalogError {
    #[error("dimension {d} exceeds the cap {cap}")]
    DimensionCapExceeded { d: usize, cap: usize },
    #[error("index set {0} is outside the admissible range")]
    BadIndexSet(IndexSet),
    #[error(transparent)]
    Move(#[from] MoveError),
    #[error(transparent)]
    Diamond(#[from] DiamondError),
}

type Result<T> = std::result::Result<T, CatalogError>;

/// One combinatorial type of basic cross-flip.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlipClass {
    pub canonical_index: IndexSet,
    pub facet_count: u64,
    pub h: Vec<i64>,
    pub complement_class: IndexSet,
    pub sufficient: bool,
}

#[derive(Serialize)]
struct FlipClassRaw<'a> {
    index: &'a [usize],
    facets: u64,
    h: &'a [i64],
    complement: &'a [usize],
    sufficient: bool,
}

pub fn facet_count(i: &IndexSet) -> u64 {
    let d = i.d();
    i.indices()
        .iter()
        .map(|&l| if l > d { 1 } else { 1u64 << (d - l) })
        .sum()
}

pub fn enumerate_basic_flips(d: usize) -> Result<Vec<FlipClass>> {
    enumerate_basic_flips_capped(d, DEFAULT_DIM_CAP)
}

pub fn enumerate_basic_flips_capped(d: usize, cap: usize) -> Result<Vec<FlipClass>> {
    if d == 0 || d > cap {
        return Err(CatalogError::DimensionCapExceeded { d, cap });
    }
    IndexSet::all_canonical(d)
        .into_iter()
        .map(|i| {
            Ok(FlipClass {
                facet_count: facet_count(&i),
                h: h_vector_formula(&i),
                complement_class: complement_index(&i)?,
                sufficient: i.contains(d),
                canonical_index: i,
            })
        })
        .collect()
}

/// Pairwise non-isomorphism of the class representatives, and agreement of the
/// stored h-vectors with the complexes. Returns the first offending pair.
pub fn cross_validate(classes: &[FlipClass]) -> std::result::Result<(), String> {
    let complexes: Vec<Complex> = classes
        .iter()
        .map(|c| diamond_closed_form(&c.canonical_index))
        .collect();
    for (c, k) in classes.iter().zip(&complexes) {
        if k.h_vector().ok().as_ref() != Some(&c.h) || k.num_facets() as u64 != c.facet_count {
            return Err(format!("{}: stored data disagrees with the complex", c.canonical_index));
        }
    }
    for (a, b) in (0..classes.len()).tuple_combinations() {
        if are_isomorphic(&complexes[a], &complexes[b], None).is_some() {
            return Err(format!(
                "{} and {} are isomorphic",
                classes[a].canonical_index, classes[b].canonical_index
            ));
        }
    }
    Ok(())
}

pub fn catalog_json(classes: &[FlipClass]) -> String {
    let raw: Vec<FlipClassRaw> = classes
        .iter()
        .map(|c| FlipClassRaw {
            index: c.canonical_index.indices(),
            facets: c.facet_count,
            h: &c.h,
            complement: c.complement_class.indices(),
            sufficient: c.sufficient,
        })
        .collect();
    serde_json::to_string_pretty(&raw).expect("serializable")
}

pub fn render_table(classes: &[FlipClass]) -> String {
    let rows: Vec<[String; 5]> = classes
        .iter()
        .map(|c| {
            [
                c.canonical_index.to_string(),
                c.facet_count.to_string(),
                format!("({})", c.h.iter().join(",")),
                c.complement_class.to_string(),
                if c.sufficient { "yes" } else { "no" }.to_string(),
            ]
        })
        .collect();
    let head = ["I", "facets", "h", "complement", "sufficient"].map(String::from);
    let widths: Vec<usize> = (0..5)
        .map(|k| rows.iter().chain([&head]).map(|r| r[k].len()).max().unwrap_or(0))
        .collect();
    let fmt_row = |r: &[String; 5]| {
        r.iter()
            .zip(&widths)
            .map(|(s, w)| format!("{s:<w$}"))
            .join("  ")
            .trim_end()
            .to_string()
    };
    let mut out = fmt_row(&head);
    out.push('\n');
    for r in &rows {
        out.push_str(&fmt_row(r));
        out.push('\n');
    }
    out
}

/// `𝒞_d` with `copies - 1` facet flips applied, together with its coloring.
pub fn stacked_cross_sphere(copies: usize, d: usize) -> (Complex, Coloring) {
    let mut c = cross_polytope(d);
    let mut k = Coloring::by_index(&c).expect("cross-polytope labels");
    let top = IndexSet::new(d, [d]).expect("valid");
    for _ in 1..copies.max(1) {
        // flip the last facet, away from earlier gluing loci where possible
        let site = find_cross_flip_sites(&c, Some(&k), &top)
            .pop()
            .expect("every facet is a site");
        let out = apply_cross_flip_full(&c, Some(&k), &site).expect("facet flips apply");
        c = out.complex;
        k = out.coloring.expect("colored input");
    }
    (c, k)
}

/// Barycentric subdivision of `∂σ^{d+1}` colored by face dimension.
pub fn barycentric_sphere(d: usize) -> Result<(Complex, Coloring)> {
    if d > BARYCENTRIC_CAP {
        return Err(CatalogError::DimensionCapExceeded { d, cap: BARYCENTRIC_CAP });
    }
    let n = d + 2;
    let subsets: Vec<Vec<usize>> = (1..n).flat_map(|k| (0..n).combinations(k)).collect();
    let label: BTreeMap<&Vec<usize>, Vertex> = subsets
        .iter()
        .enumerate()
        .map(|(i, s)| (s, Vertex::Base(i as u32)))
        .collect();
    // a maximal chain adds the elements of a permutation one at a time
    let facets = (0..n).permutations(n).map(|p| {
        Face::new((1..n).map(|k| {
            let mut s = p[..k].to_vec();
            s.sort_unstable();
            label[&s]
        }))
    });
    let c = Complex::generated(facets);
    let k = subsets.iter().map(|s| (label[s], s.len() - 1)).collect();
    Ok((c, k))
}

/// A named ambient sphere with its coloring.
pub struct Ambient {
    pub name: String,
    pub complex: Complex,
    pub coloring: Coloring,
}

/// Candidate ambients in the order they are tried.
pub fn ambients(d: usize) -> Vec<Ambient> {
    let mut out = Vec::new();
    let c = cross_polytope(d);
    out.push(Ambient {
        name: "cross-polytope".into(),
        coloring: Coloring::by_index(&c).expect("labels"),
        complex: c,
    });
    for copies in [2, 3] {
        let (complex, coloring) = stacked_cross_sphere(copies, d);
        out.push(Ambient {
            name: format!("stacked-{copies}"),
            complex,
            coloring,
        });
    }
    if let Ok((complex, coloring)) = barycentric_sphere(d) {
        out.push(Ambient {
            name: "barycentric".into(),
            complex,
            coloring,
        });
    }
    out
}

/// Complexes tailored to `I`, after `𝒞_d` and before the other generic ambients:
/// the complementary flip applied to `𝒞_d` and to the two-copy stacked sphere,
/// which glues in a copy of `⋄(Γ_I)`, and the double of `⋄(Γ_I)` along its boundary.
pub fn ambients_for(i: &IndexSet) -> Vec<Ambient> {
    let d = i.d();
    let generic = ambients(d);
    let mut out = Vec::new();
    if let Ok(comp) = complement_index(i) {
        for base in generic.iter().take(2) {
            let site = find_cross_flip_sites(&base.complex, Some(&base.coloring), &comp)
                .into_iter()
                .next();
            if let Some(out_flip) = site.and_then(|s| {
                apply_cross_flip_full(&base.complex, Some(&base.coloring), &s).ok()
            }) {
                out.push(Ambient {
                    name: format!("{}+flip{comp}", base.name),
                    complex: out_flip.complex,
                    coloring: out_flip.coloring.expect("colored input"),
                });
            }
        }
    }
    let dc = diamond_closed_form(i);
    if let Ok(bd) = dc.boundary_complex() {
        let rim: BTreeSet<Vertex> = bd.vertices().into_iter().collect();
        let mut next = dc.next_fresh();
        let mut coloring = Coloring::by_index(&dc).expect("diamond labels");
        let mut copy = VertexMap::new();
        for v in dc.vertices().into_iter().filter(|v| !rim.contains(v)) {
            let Vertex::Fresh(k) = next else { unreachable!() };
            copy.insert(v, next);
            coloring.insert(next, coloring.get(v).expect("colored"));
            next = Vertex::Fresh(k + 1);
        }
        out.push(Ambient {
            name: "double".into(),
            complex: dc.union(&dc.relabel(&copy)),
            coloring,
        });
    }
    let mut all = generic;
    let tail = all.split_off(1.min(all.len()));
    all.extend(out);
    all.extend(tail);
    all
}

/// Vertices of `ambient` outside the flipped locus, mapped to themselves.
fn untouched(ambient: &Complex, site: &CrossFlip) -> VertexMap {
    ambient
        .delete_subcomplex(&site.image())
        .vertices()
        .into_iter()
        .map(|v| (v, v))
        .collect()
}

fn matches_direct(ambient: &Complex, site: &CrossFlip, result: &Complex) -> Result<bool> {
    let direct = apply_cross_flip(ambient, site)?;
    let fixed = untouched(ambient, site);
    Ok(find_isomorphism(
        result,
        &direct,
        IsoOptions {
            colors: None,
            fixed: Some(&fixed),
        },
    )
    .is_some())
}

/// The two-flip replacement of a flip of type `I ⊆ {0, …, d-1}`.
pub fn reducibility_steps(
    ambient: &Complex,
    kappa: &Coloring,
    site: &CrossFlip,
) -> Result<Complex> {
    let i = &site.spec;
    let d = i.d();
    if d == 0 || !i.is_canonical() || i.contains(d) {
        return Err(CatalogError::BadIndexSet(i.clone()));
    }
    let e = &site.embedding;
    let shifted = IndexSet::new(d, i.indices().iter().map(|k| k + 1))?;
    let (r, s) = (rho(d), sigma(d));
    let first = CrossFlip {
        embedding: diamond_closed_form(&shifted)
            .vertices()
            .into_iter()
            .map(|x| (x, e[&r[&x]]))
            .collect(),
        spec: shifted.clone(),
    };
    let one = apply_cross_flip_full(ambient, Some(kappa), &first)?;

    let with_zero = IndexSet::new(d, shifted.indices().iter().copied().chain([0]))?;
    let zero_part: BTreeSet<Vertex> = diamond_closed_form(&IndexSet::new(d, [0])?)
        .vertices()
        .into_iter()
        .collect();
    let rest_part: BTreeSet<Vertex> = diamond_closed_form(&shifted).vertices().into_iter().collect();
    let mut embedding = VertexMap::new();
    for x in diamond_closed_form(&with_zero).vertices() {
        let a = zero_part.contains(&x).then(|| one.extension[&x]);
        let b = rest_part.contains(&x).then(|| e[&s[&x]]);
        let y = match (a, b) {
            (Some(a), Some(b)) if a != b => {
                return Err(MoveError::NotApplicable(format!("gluing maps disagree at {x}")).into())
            }
            (Some(y), _) | (None, Some(y)) => y,
            (None, None) => unreachable!("vertex of one of the parts"),
        };
        embedding.insert(x, y);
    }
    let second = CrossFlip {
        spec: with_zero,
        embedding,
    };
    let two = apply_cross_flip_full(&one.complex, one.coloring.as_ref(), &second)?;
    Ok(two.complex)
}

/// Whether the two-flip replacement agrees with the direct flip, up to an
/// isomorphism fixing everything outside the locus.
pub fn verify_reducibility_composition(
    ambient: &Complex,
    kappa: &Coloring,
    site: &CrossFlip,
) -> Result<bool> {
    let two = reducibility_steps(ambient, kappa, site)?;
    matches_direct(ambient, site, &two)
}

#[derive(Debug, Clone)]
pub struct CompositionWitness {
    pub ambient: String,
    pub site: CrossFlip,
    pub holds: bool,
}

/// Try ambients and sites until the two-flip replacement applies, then compare.
pub fn find_reducibility_witness(i: &IndexSet) -> Result<Option<CompositionWitness>> {
    for amb in ambients_for(i) {
        for site in find_cross_flip_sites(&amb.complex, Some(&amb.coloring), i) {
            match verify_reducibility_composition(&amb.complex, &amb.coloring, &site) {
                Ok(holds) => {
                    return Ok(Some(CompositionWitness {
                        ambient: amb.name,
                        site,
                        holds,
                    }))
                }
                Err(CatalogError::Move(_)) => continue,
                Err(e) => return Err(e),
            }
        }
    }
    Ok(None)
}

/// Search for a sequence of flips of the given types, each acting only on
/// facets outside `ambient ∖ site`, that reproduces the direct flip.
/// Returns the sites used, in order.
pub fn find_composition(
    ambient: &Complex,
    kappa: &Coloring,
    site: &CrossFlip,
    types: &[IndexSet],
) -> Result<Option<Vec<CrossFlip>>> {
    let fixed: HashSet<Face> = ambient
        .delete_subcomplex(&site.image())
        .facets()
        .iter()
        .cloned()
        .collect();
    let direct = apply_cross_flip(ambient, site)?;
    let pinned = untouched(ambient, site);
    let orders: BTreeSet<Vec<IndexSet>> = types.iter().cloned().permutations(types.len()).collect();
    for order in orders {
        let mut used = Vec::new();
        if compose_search(ambient, kappa, &order, &fixed, &direct, &pinned, &mut used) {
            return Ok(Some(used));
        }
    }
    Ok(None)
}

fn compose_search(
    cur: &Complex,
    kappa: &Coloring,
    rest: &[IndexSet],
    fixed: &HashSet<Face>,
    target: &Complex,
    pinned: &VertexMap,
    used: &mut Vec<CrossFlip>,
) -> bool {
    let Some((head, tail)) = rest.split_first() else {
        return cur.num_facets() == target.num_facets()
            && find_isomorphism(
                cur,
                target,
                IsoOptions {
                    colors: None,
                    fixed: Some(pinned),
                },
            )
            .is_some();
    };
    for site in find_cross_flip_sites(cur, Some(kappa), head) {
        if site.image().facets().iter().any(|g| fixed.contains(g)) {
            continue;
        }
        let Ok(out) = apply_cross_flip_full(cur, Some(kappa), &site) else {
            continue;
        };
        let k = out.coloring.expect("colored input");
        used.push(site);
        if compose_search(&out.complex, &k, tail, fixed, target, pinned, used) {
            return true;
        }
        used.pop();
    }
    false
}

/// The pentagon identities in dimension two: `{1,2}` from `{2}` and `{0,2}`,
/// and `{0,2}` from `{0,1,2}` and `{1,2}`.
pub fn pentagon_types(reverse: bool) -> (IndexSet, Vec<IndexSet>) {
    let s = |v: &[usize]| IndexSet::new(2, v.iter().copied()).expect("valid");
    if reverse {
        (s(&[0, 2]), vec![s(&[0, 1, 2]), s(&[1, 2]), s(&[1, 2])])
    } else {
        (s(&[1, 2]), vec![s(&[2]), s(&[0, 2]), s(&[0, 2])])
    }
}

/// Run the pentagon search on the first ambient with a usable site.
pub fn verify_pentagon_composition(reverse: bool) -> Result<Option<CompositionWitness>> {
    let (direct, types) = pentagon_types(reverse);
    for amb in ambients(2) {
        for site in find_cross_flip_sites(&amb.complex, Some(&amb.coloring), &direct) {
            let found = find_composition(&amb.complex, &amb.coloring, &site, &types)?;
            if found.is_some() {
                return Ok(Some(CompositionWitness {
                    ambient: amb.name,
                    site,
                    holds: true,
                }));
            }
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatroidReport {
    pub exchange_holds: bool,
    /// A failing `(B1, B2, x)` when the axiom fails.
    pub witness: Option<String>,
    pub rank: Option<usize>,
    pub ground_size: usize,
    /// Pairs of parallel elements when the bases are exactly one pick per pair.
    pub parallel_pairs: Option<Vec<(String, String)>>,
}

/// Basis exchange over a family of sets.
pub fn check_matroid_bases<T: Ord + Clone + std::fmt::Display>(family: &[BTreeSet<T>]) -> MatroidReport {
    let set: BTreeSet<&BTreeSet<T>> = family.iter().collect();
    let ground: BTreeSet<&T> = family.iter().flatten().collect();
    let mut witness = None;
    'outer: for b1 in family {
        for b2 in family {
            for x in b1.difference(b2) {
                let ok = b2.difference(b1).any(|y| {
                    let mut b = b1.clone();
                    b.remove(x);
                    b.insert(y.clone());
                    set.contains(&b)
                });
                if !ok {
                    witness = Some(format!(
                        "{{{}}} / {{{}}} at {x}",
                        b1.iter().join(","),
                        b2.iter().join(",")
                    ));
                    break 'outer;
                }
            }
        }
    }
    let sizes: BTreeSet<usize> = family.iter().map(BTreeSet::len).collect();
    let rank = (sizes.len() == 1).then(|| *sizes.iter().next().expect("nonempty"));
    MatroidReport {
        exchange_holds: witness.is_none(),
        witness,
        rank,
        ground_size: ground.len(),
        parallel_pairs: parallel_pairs(family, &ground),
    }
}

/// Split the ground set into pairs never occurring together, and check the
/// bases are exactly the transversals of those pairs.
fn parallel_pairs<T: Ord + Clone + std::fmt::Display>(
    family: &[BTreeSet<T>],
    ground: &BTreeSet<&T>,
) -> Option<Vec<(String, String)>> {
    let apart = |a: &T, b: &T| family.iter().all(|s| !(s.contains(a) && s.contains(b)));
    let mut left: Vec<&T> = ground.iter().copied().collect();
    let mut pairs = Vec::new();
    while let Some(a) = left.first().copied() {
        let partners: Vec<&T> = left[1..].iter().copied().filter(|b| apart(a, b)).collect();
        if partners.len() != 1 {
            return None;
        }
        pairs.push((a, partners[0]));
        left.retain(|x| *x != a && *x != partners[0]);
    }
    let expected = 1usize.checked_shl(pairs.len() as u32)?;
    let unique: BTreeSet<&BTreeSet<T>> = family.iter().collect();
    let transversal = |s: &BTreeSet<T>| {
        s.len() == pairs.len() && pairs.iter().all(|(a, b)| s.contains(a) != s.contains(b))
    };
    (unique.len() == expected && family.iter().all(transversal))
        .then(|| pairs.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect())
}

/// The eight minimal sufficient flip sets in dimension two.
pub fn printed_bases() -> Vec<BTreeSet<IndexSet>> {
    const BASES: [[&[usize]; 3]; 8] = [
        [&[1], &[0, 1], &[0, 2]],
        [&[1], &[0, 1], &[1, 2]],
        [&[1], &[0, 1, 2], &[0, 2]],
        [&[1], &[0, 1, 2], &[1, 2]],
        [&[2], &[0, 1], &[0, 2]],
        [&[2], &[0, 1], &[1, 2]],
        [&[2], &[0, 1, 2], &[0, 2]],
        [&[2], &[0, 1, 2], &[1, 2]],
    ];
    BASES
        .iter()
        .map(|b| {
            b.iter()
                .map(|v| IndexSet::new(2, v.iter().copied()).expect("valid"))
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests;
