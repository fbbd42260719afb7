//! Diamond complexes inside the cross-polytope.
//!
//! Vertices `Base(i)` and `Sub(i)` stand for `i` and `v_i`. The boundary of the
//! `(d+1)`-simplex lives on `Base(0..=d+1)`; its facet missing `i` is `Γ_i`.
//! Subdividing at `{i+1, …, d+1}` for `i = 0, …, d` (new vertex `v_i`) turns a
//! subcomplex of it into a subcomplex of the cross-polytope `𝒞_d`.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;

use crate::complex::{binomial, Complex};
use crate::io::ShellingCertificate;
use crate::iso::VertexMap;
use crate::vertex::{Face, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DiamondError {
    #[error("index set is empty")]
    EmptyIndexSet,
    #[error("index {index} exceeds d+1 = {}", .d + 1)]
    IndexOutOfRange { index: usize, d: usize },
    #[error("the full index set describes the whole cross-polytope, not a ball")]
    FullIndexSet,
    #[error("complex is not a pure d-subcomplex of the simplex boundary on 0..=d+1")]
    NotSubcomplexOfSimplexBoundary,
    #[error("facets belong to different diamond blocks")]
    MismatchedGamma,
    #[error("{0} is not a facet of the first block")]
    HintNotAFacet(Face),
    #[error("the first block needs a boundary facet hint")]
    HintMissing,
    #[error("invalid block sequence: {0}")]
    InvalidSequence(String),
    #[error("index set violates precondition: {0}")]
    IndexSetViolatesPrecondition(String),
}

type Result<T> = std::result::Result<T, DiamondError>;

/// A nonempty set `I ⊆ {0, …, d+1}` together with `d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexSet {
    d: usize,
    indices: Vec<usize>,
}

impl IndexSet {
    pub fn new<I: IntoIterator<Item = usize>>(d: usize, indices: I) -> Result<Self> {
        let set: BTreeSet<usize> = indices.into_iter().collect();
        if set.is_empty() {
            return Err(DiamondError::EmptyIndexSet);
        }
        if let Some(&index) = set.iter().find(|&&i| i > d + 1) {
            return Err(DiamondError::IndexOutOfRange { index, d });
        }
        Ok(IndexSet {
            d,
            indices: set.into_iter().collect(),
        })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.binary_search(&i).is_ok()
    }

    pub fn min(&self) -> usize {
        self.indices[0]
    }

    pub fn max(&self) -> usize {
        *self.indices.last().expect("nonempty")
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.indices.len() == self.d + 2
    }

    /// Canonical representatives avoid `d+1`.
    pub fn is_canonical(&self) -> bool {
        !self.contains(self.d + 1)
    }

    /// Parse `0,2` style lists.
    pub fn parse(d: usize, text: &str) -> std::result::Result<Self, String> {
        let idx = text
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}")))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        IndexSet::new(d, idx).map_err(|e| e.to_string())
    }

    /// Every nonempty subset of `{0, …, d}`, ordered by size then lexicographically.
    pub fn all_canonical(d: usize) -> Vec<IndexSet> {
        (1..=d + 1)
            .flat_map(|k| (0..=d).combinations(k))
            .map(|v| IndexSet { d, indices: v })
            .collect()
    }

    /// Every nonempty proper subset of `{0, …, d+1}`.
    pub fn all_balls(d: usize) -> Vec<IndexSet> {
        (1..=d + 1)
            .flat_map(|k| (0..=d + 1).combinations(k))
            .map(|v| IndexSet { d, indices: v })
            .collect()
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.indices.iter().join(","))
    }
}

fn base(i: usize) -> Vertex {
    Vertex::Base(i as u32)
}

fn sub(i: usize) -> Vertex {
    Vertex::Sub(i as u32)
}

/// Cross-polytope boundary on the index pairs `lo..=hi`; `{∅}` when the range is empty.
pub fn cross_polytope_on(lo: usize, hi: Option<usize>) -> Complex {
    let Some(hi) = hi.filter(|&h| h >= lo) else {
        return Complex::void();
    };
    let n = hi - lo + 1;
    Complex::generated((0u64..1 << n).map(|m| {
        Face::new((0..n).map(|k| if m >> k & 1 == 1 { sub(lo + k) } else { base(lo + k) }))
    }))
}

/// `𝒞_d` with `2^{d+1}` facets.
pub fn cross_polytope(d: usize) -> Complex {
    cross_polytope_on(0, Some(d))
}

/// `∂σ^{d+1}` on `Base(0..=d+1)`.
pub fn simplex_boundary(d: usize) -> Complex {
    Complex::generated((0..=d + 1).map(|i| gamma_facet(d, i)))
}

fn gamma_facet(d: usize, i: usize) -> Face {
    Face::new((0..=d + 1).filter(|&j| j != i).map(base))
}

/// `⟨Γ_i : i ∈ I⟩`.
pub fn gamma(i: &IndexSet) -> Complex {
    Complex::generated(i.indices().iter().map(|&k| gamma_facet(i.d(), k)))
}

/// Iterated stellar subdivision of a subcomplex of `∂σ^{d+1}`.
pub fn diamond(c: &Complex, d: usize) -> Result<Complex> {
    let ok = !c.is_empty()
        && c.is_pure()
        && c.dim() == d as isize
        && c.vertices()
            .iter()
            .all(|v| matches!(v, Vertex::Base(j) if (*j as usize) <= d + 1));
    if !ok {
        return Err(DiamondError::NotSubcomplexOfSimplexBoundary);
    }
    let mut cur = c.clone();
    for i in 0..=d {
        let f = Face::new((i + 1..=d + 1).map(base));
        if cur.contains_face(&f) {
            cur = cur
                .stellar_subdivide_with(&f, sub(i))
                .expect("face checked present");
        }
    }
    Ok(cur)
}

/// `⋄(Γ_l)`: `⟨{0, …, l-1, v_l}⟩ ∗ 𝒞(l+1, …, d)`, or `⟨{0, …, d}⟩` when `l = d+1`.
pub fn diamond_block(d: usize, l: usize) -> Complex {
    if l == d + 1 {
        return Complex::simplex(Face::new((0..=d).map(base)));
    }
    let head = Complex::simplex(Face::new((0..l).map(base).chain([sub(l)])));
    head.join(&cross_polytope_on(l + 1, Some(d)))
        .expect("disjoint labels")
}

/// Closed form of `⋄(Γ_I)` as the union of its blocks.
pub fn diamond_closed_form(i: &IndexSet) -> Complex {
    Complex::generated(
        i.indices()
            .iter()
            .flat_map(|&l| diamond_block(i.d(), l).facets().to_vec()),
    )
}

/// Rewrite a trailing run `{l+1, …, d+1}` as `{l}`.
pub fn canonicalize(i: &IndexSet) -> Result<IndexSet> {
    if i.is_full() {
        return Err(DiamondError::FullIndexSet);
    }
    let d = i.d();
    if !i.contains(d + 1) {
        return Ok(i.clone());
    }
    let mut l = d + 1;
    while l > 0 && i.contains(l - 1) {
        l -= 1;
    }
    // run is {l, …, d+1}; it becomes {l-1}
    let rest = i.indices().iter().copied().filter(|&k| k < l);
    IndexSet::new(d, rest.chain([l - 1]))
}

/// Canonical form of `{0, …, d+1} ∖ I`.
pub fn complement_index(i: &IndexSet) -> Result<IndexSet> {
    let comp: Vec<usize> = (0..=i.d() + 1).filter(|&k| !i.contains(k)).collect();
    canonicalize(&IndexSet::new(i.d(), comp)?)
}

/// A facet of `⋄(Γ_l)` given by its choices at positions `l+1, …, d`
/// (`true` selects `v_j`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiamondFacet {
    pub d: usize,
    pub l: usize,
    pub choices: Vec<bool>,
}

impl DiamondFacet {
    pub fn to_face(&self) -> Face {
        if self.l == self.d + 1 {
            return Face::new((0..=self.d).map(base));
        }
        let tail = self
            .choices
            .iter()
            .enumerate()
            .map(|(k, &s)| if s { sub(self.l + 1 + k) } else { base(self.l + 1 + k) });
        Face::new((0..self.l).map(base).chain([sub(self.l)]).chain(tail))
    }

    pub fn from_face(d: usize, l: usize, f: &Face) -> Result<DiamondFacet> {
        let width = d.saturating_sub(l);
        let choices: Vec<bool> = (0..width).map(|k| f.contains(sub(l + 1 + k))).collect();
        let cand = DiamondFacet { d, l, choices };
        if cand.to_face() == *f {
            Ok(cand)
        } else {
            Err(DiamondError::HintNotAFacet(f.clone()))
        }
    }

    /// Entry at absolute position `j`, i.e. `F ∩ {j, v_j}`.
    pub fn at(&self, j: usize) -> Vertex {
        let top = self.l == self.d + 1 || j < self.l;
        if !top && (j == self.l || self.choices[j - self.l - 1]) {
            sub(j)
        } else {
            base(j)
        }
    }

    pub fn all(d: usize, l: usize) -> Vec<DiamondFacet> {
        let width = d.saturating_sub(l);
        (0u64..1 << width)
            .map(|m| DiamondFacet {
                d,
                l,
                choices: (0..width).map(|k| m >> k & 1 == 1).collect(),
            })
            .collect()
    }
}

/// Positions where a facet differs from a reference facet.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CharVector {
    pub bits: Vec<bool>,
}

impl CharVector {
    pub fn degree(&self) -> usize {
        self.bits.iter().filter(|b| **b).count()
    }

    fn key(&self) -> (usize, &[bool]) {
        (self.degree(), &self.bits)
    }
}

pub fn char_vector(base_facet: &DiamondFacet, g: &DiamondFacet) -> Result<CharVector> {
    if base_facet.d != g.d || base_facet.l != g.l {
        return Err(DiamondError::MismatchedGamma);
    }
    Ok(CharVector {
        bits: base_facet
            .choices
            .iter()
            .zip(&g.choices)
            .map(|(a, b)| a != b)
            .collect(),
    })
}

/// Degree first, then lexicographic with `0 < 1` at the first differing bit.
pub fn deg_lex_less(base_facet: &DiamondFacet, a: &DiamondFacet, b: &DiamondFacet) -> Result<bool> {
    let ca = char_vector(base_facet, a)?;
    let cb = char_vector(base_facet, b)?;
    Ok(ca.key() < cb.key())
}

/// All facets of the block of `start`, in degree-lexicographic order from `start`.
pub fn deg_lex_order(start: &DiamondFacet) -> Vec<DiamondFacet> {
    let mut all = DiamondFacet::all(start.d, start.l);
    all.sort_by_cached_key(|g| {
        let cv = char_vector(start, g).expect("same block");
        (cv.degree(), cv.bits)
    });
    all
}

/// Block sequence `i_1; i_2 < … < i_k` for the relative shelling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockSequence {
    d: usize,
    seq: Vec<usize>,
}

impl BlockSequence {
    pub fn new(d: usize, first: usize, rest: &[usize]) -> Result<Self> {
        let mut seq = vec![first];
        seq.extend_from_slice(rest);
        if seq.iter().any(|&i| i > d + 1) {
            return Err(DiamondError::InvalidSequence("index above d+1".into()));
        }
        if !rest.windows(2).all(|w| w[0] < w[1]) {
            return Err(DiamondError::InvalidSequence("tail must be strictly increasing".into()));
        }
        if rest.contains(&first) {
            return Err(DiamondError::InvalidSequence("indices must be distinct".into()));
        }
        if seq.len() == d + 2 {
            return Err(DiamondError::InvalidSequence("all blocks give a sphere".into()));
        }
        Ok(BlockSequence { d, seq })
    }

    /// The sequence with `first` leading and the rest of `i` ascending.
    pub fn with_first(i: &IndexSet, first: usize) -> Result<Self> {
        let rest: Vec<usize> = i.indices().iter().copied().filter(|&k| k != first).collect();
        if !i.contains(first) {
            return Err(DiamondError::InvalidSequence(format!("{first} not in {i}")));
        }
        Self::new(i.d(), first, &rest)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn indices(&self) -> &[usize] {
        &self.seq
    }

    pub fn index_set(&self) -> IndexSet {
        IndexSet::new(self.d, self.seq.iter().copied()).expect("validated")
    }

    /// `i_{m(l)}`: the smallest earlier `i_j` above `i_l`, else `i_l` (1-based `l`).
    fn i_m(&self, l: usize) -> usize {
        let il = self.seq[l - 1];
        self.seq[..l - 1].iter().copied().filter(|&x| x > il).min().unwrap_or(il)
    }
}

/// Initial facet of block `l` (1-based). The first block takes the hint.
pub fn initial_facet(seq: &BlockSequence, l: usize, hint: Option<&Face>) -> Result<DiamondFacet> {
    let d = seq.d();
    if l == 0 || l > seq.indices().len() {
        return Err(DiamondError::InvalidSequence(format!("block {l} out of range")));
    }
    let il = seq.indices()[l - 1];
    if l == 1 {
        let g = hint.ok_or(DiamondError::HintMissing)?;
        return DiamondFacet::from_face(d, il, g);
    }
    Ok(initial_by_formula(d, il, seq.i_m(l)))
}

fn initial_by_formula(d: usize, il: usize, im: usize) -> DiamondFacet {
    let width = d.saturating_sub(il);
    DiamondFacet {
        d,
        l: il,
        choices: (0..width).map(|k| il + 1 + k >= im).collect(),
    }
}

fn positions(d: usize, l: usize) -> std::ops::Range<usize> {
    if l > d {
        0..0
    } else {
        l + 1..d + 1
    }
}

/// Degree-lexicographic relative shelling of `(Δ, Δ ∖ ⋄(Γ))` where `⋄(Γ) ∩ ∂Δ = ⟨F⟩`.
///
/// Blocks are listed from the last to the first, each in reverse
/// degree-lexicographic order, so the facet containing `F` comes last.
pub fn relative_shelling_order(seq: &BlockSequence, boundary_face: &Face) -> Result<ShellingCertificate> {
    let d = seq.d();
    let idx = seq.indices();
    let i1 = idx[0];
    let first = diamond_block(d, i1);
    let g = first
        .facets()
        .iter()
        .find(|g| boundary_face.is_subset(g) && g.len() == boundary_face.len() + 1)
        .cloned()
        .ok_or_else(|| DiamondError::HintNotAFacet(boundary_face.clone()))?;

    let mut order = Vec::new();
    let mut restrictions = Vec::new();
    for l in (1..=idx.len()).rev() {
        let il = idx[l - 1];
        let start = initial_facet(seq, l, Some(&g))?;
        let block = deg_lex_order(&start);
        let earlier_below: Vec<usize> = idx[..l - 1].iter().copied().filter(|&x| x < il).collect();
        let m_differs = seq.i_m(l) != il;
        let mut rs = Vec::with_capacity(block.len());
        for (i, f) in block.iter().enumerate() {
            let face = f.to_face();
            let agree: Vec<Vertex> = positions(d, il)
                .filter(|&j| f.at(j) == start.at(j))
                .map(|j| f.at(j))
                .collect();
            let r = if l == 1 {
                if i == 0 {
                    boundary_face.clone()
                } else {
                    Face::new((0..il).map(base).chain([sub(il)]).chain(agree))
                }
            } else if i == 0 {
                let mut x: Vec<Vertex> = earlier_below.iter().map(|&k| base(k)).collect();
                if m_differs {
                    x.push(sub(il));
                }
                face.difference(&Face::new(x))
            } else {
                let t = positions(d, il)
                    .find(|&j| f.at(j) != start.at(j))
                    .expect("differs from start");
                let moved = m_differs && t > i1;
                let low = (0..il).filter(|k| !earlier_below.contains(k)).map(base);
                let vl = if moved || il > d { None } else { Some(sub(il)) };
                Face::new(low.chain(vl).chain(agree))
            };
            rs.push((face, r));
        }
        for (face, r) in rs.into_iter().rev() {
            order.push(face);
            restrictions.push(r);
        }
    }
    Ok(ShellingCertificate { order, restrictions, removal: false })
}

/// Blocks in ascending order, each in forward degree-lexicographic order.
pub fn absolute_shelling_order(i: &IndexSet) -> ShellingCertificate {
    let d = i.d();
    let mut order = Vec::new();
    let mut restrictions = Vec::new();
    for (pos, &il) in i.indices().iter().enumerate() {
        let start = initial_by_formula(d, il, il);
        let earlier = i.indices()[..pos].iter().map(|&k| base(k));
        let earlier: Vec<Vertex> = earlier.collect();
        for f in deg_lex_order(&start) {
            let differ = positions(d, il)
                .filter(|&j| f.at(j) != start.at(j))
                .map(|j| f.at(j));
            restrictions.push(Face::new(earlier.iter().copied().chain(differ)));
            order.push(f.to_face());
        }
    }
    ShellingCertificate { order, restrictions, removal: false }
}

/// `h_ℓ = Σ_j C(d - i_j, ℓ - j + 1)` with `j` counted from 1, for `ℓ = 0, …, d+1`.
pub fn h_vector_formula(i: &IndexSet) -> Vec<i64> {
    let d = i.d() as i64;
    (0..=d + 1)
        .map(|l| {
            i.indices()
                .iter()
                .enumerate()
                .map(|(j0, &ij)| {
                    let n = d - ij as i64;
                    let k = l - j0 as i64;
                    // the block for i_j = d+1 is one simplex
                    if n < 0 {
                        i64::from(k == 0)
                    } else {
                        binomial(n, k)
                    }
                })
                .sum()
        })
        .collect()
}

/// `ρ`: `i ↦ i-1`, `v_i ↦ v_{i-1}` modulo `d+1`.
pub fn rho(d: usize) -> VertexMap {
    (0..=d)
        .flat_map(|i| {
            let j = (i + d) % (d + 1);
            [(base(i), base(j)), (sub(i), sub(j))]
        })
        .collect()
}

/// `ψ` swaps `d` and `v_d`.
pub fn psi(d: usize) -> VertexMap {
    (0..=d)
        .flat_map(|i| {
            if i == d {
                [(base(i), sub(i)), (sub(i), base(i))]
            } else {
                [(base(i), base(i)), (sub(i), sub(i))]
            }
        })
        .collect()
}

/// `σ = ψ ∘ ρ`.
pub fn sigma(d: usize) -> VertexMap {
    let r = rho(d);
    let p = psi(d);
    r.iter().map(|(k, v)| (*k, p[v])).collect()
}

/// `π`: `i ↦ i+1`, `v_i ↦ v_{i+1}` from dimension `d-1` labels.
pub fn pi(d: usize) -> VertexMap {
    (0..d)
        .flat_map(|i| [(base(i), base(i + 1)), (sub(i), sub(i + 1))])
        .collect()
}

/// `⋄(Γ_I) = ρ(⋄(Γ_{I+1})) ∪ σ(⋄(Γ_{I+1}))` for `d ∉ I`.
#[derive(Debug, Clone)]
pub struct RhoSigmaSplit {
    pub rho_part: Complex,
    pub sigma_part: Complex,
    /// `⋄(Γ_{I+1})`, the common preimage.
    pub source: Complex,
    pub rho: VertexMap,
    pub sigma: VertexMap,
}

pub fn decompose_rho_sigma(i: &IndexSet) -> Result<RhoSigmaSplit> {
    let d = i.d();
    if d == 0 || i.max() >= d {
        return Err(DiamondError::IndexSetViolatesPrecondition(format!(
            "{i} must lie in 0..{d}"
        )));
    }
    let shifted = IndexSet::new(d, i.indices().iter().map(|k| k + 1))?;
    let source = diamond_closed_form(&shifted);
    let r = rho(d);
    let s = sigma(d);
    Ok(RhoSigmaSplit {
        rho_part: source.relabel(&r),
        sigma_part: source.relabel(&s),
        source,
        rho: r,
        sigma: s,
    })
}

/// `⋄(Γ_I) = ⋄(Γ_{I∖0}) ∪ ⋄(Γ_0)` for `0 ∈ I`.
#[derive(Debug, Clone)]
pub struct ZeroSplit {
    pub rest: Complex,
    pub zero_part: Complex,
    pub pi: VertexMap,
}

pub fn decompose_zero(i: &IndexSet) -> Result<ZeroSplit> {
    let d = i.d();
    if !i.contains(0) || i.len() < 2 || d == 0 || !i.is_canonical() {
        return Err(DiamondError::IndexSetViolatesPrecondition(format!(
            "{i} must contain 0 and another index up to {d}"
        )));
    }
    let rest = IndexSet::new(d, i.indices()[1..].iter().copied())?;
    Ok(ZeroSplit {
        rest: diamond_closed_form(&rest),
        zero_part: diamond_block(d, 0),
        pi: pi(d),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vertex::Vertex::{Base, Sub};

    fn set(d: usize, v: &[usize]) -> IndexSet {
        IndexSet::new(d, v.iter().copied()).unwrap()
    }

    fn face(v: &[Vertex]) -> Face {
        Face::new(v.iter().copied())
    }

    #[test]
    fn constructions() {
        assert_eq!(cross_polytope(1).num_facets(), 4);
        let c2 = cross_polytope(2);
        assert_eq!((c2.num_facets(), c2.vertices().len()), (8, 6));
        assert_eq!(simplex_boundary(2).num_facets(), 4);
        assert_eq!(gamma(&set(2, &[3])).facets(), &[face(&[Base(0), Base(1), Base(2)])]);
        assert_eq!(gamma(&set(2, &[0, 1, 2, 3])), simplex_boundary(2));
        let two = gamma(&set(2, &[0, 1]));
        assert_eq!(two.num_facets(), 2);
        assert_eq!(two.facets()[0].intersection(&two.facets()[1]), face(&[Base(2), Base(3)]));
        assert_eq!(IndexSet::new(2, []), Err(DiamondError::EmptyIndexSet));
    }

    #[test]
    fn closed_form_examples() {
        let b0 = diamond_closed_form(&set(2, &[0]));
        assert_eq!(b0.num_facets(), 4);
        assert!(b0.facets().iter().all(|f| f.contains(Sub(0))));
        assert_eq!(
            diamond_closed_form(&set(3, &[3])).facets(),
            &[face(&[Base(0), Base(1), Base(2), Sub(3)])]
        );
        assert_eq!(
            diamond_closed_form(&set(2, &[1, 2])),
            Complex::generated([
                face(&[Base(0), Sub(1), Base(2)]),
                face(&[Base(0), Sub(1), Sub(2)]),
                face(&[Base(0), Base(1), Sub(2)]),
            ])
        );
    }

    #[test]
    fn recursion_examples() {
        assert_eq!(
            diamond(&gamma(&set(2, &[3])), 2).unwrap().facets(),
            &[face(&[Base(0), Base(1), Base(2)])]
        );
        assert_eq!(diamond(&simplex_boundary(2), 2).unwrap(), cross_polytope(2));
        let g1 = diamond(&gamma(&set(3, &[1])), 3).unwrap();
        assert_eq!(g1.num_facets(), 4);
        assert!(g1.facets().iter().all(|f| f.contains(Base(0)) && f.contains(Sub(1))));
        assert_eq!(
            diamond(&cross_polytope(1), 1),
            Err(DiamondError::NotSubcomplexOfSimplexBoundary)
        );
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(canonicalize(&set(2, &[3])).unwrap(), set(2, &[2]));
        assert_eq!(canonicalize(&set(2, &[0, 2, 3])).unwrap(), set(2, &[0, 1]));
        assert_eq!(canonicalize(&set(2, &[1])).unwrap(), set(2, &[1]));
        assert_eq!(canonicalize(&set(2, &[0, 1, 2, 3])), Err(DiamondError::FullIndexSet));
        assert_eq!(complement_index(&set(2, &[1])).unwrap(), set(2, &[0, 1]));
        assert_eq!(complement_index(&set(2, &[2])).unwrap(), set(2, &[0, 1, 2]));
        assert_eq!(complement_index(&set(2, &[0])).unwrap(), set(2, &[0]));
    }

    #[test]
    fn char_vectors_and_order() {
        let f0 = DiamondFacet::from_face(2, 0, &face(&[Sub(0), Base(1), Base(2)])).unwrap();
        let g = DiamondFacet::from_face(2, 0, &face(&[Sub(0), Sub(1), Base(2)])).unwrap();
        assert_eq!(char_vector(&f0, &f0).unwrap().degree(), 0);
        let cv = char_vector(&f0, &g).unwrap();
        assert_eq!((cv.bits.clone(), cv.degree()), (vec![true, false], 1));
        let order: Vec<Face> = deg_lex_order(&f0).iter().map(DiamondFacet::to_face).collect();
        assert_eq!(
            order,
            vec![
                face(&[Sub(0), Base(1), Base(2)]),
                face(&[Sub(0), Base(1), Sub(2)]),
                face(&[Sub(0), Sub(1), Base(2)]),
                face(&[Sub(0), Sub(1), Sub(2)]),
            ]
        );
        let other = DiamondFacet::all(2, 1)[0].clone();
        assert_eq!(char_vector(&f0, &other), Err(DiamondError::MismatchedGamma));
    }

    #[test]
    fn initial_facets() {
        let s = BlockSequence::new(2, 1, &[2]).unwrap();
        assert_eq!(
            initial_facet(&s, 2, None).unwrap().to_face(),
            face(&[Base(0), Base(1), Sub(2)])
        );
        let s = BlockSequence::new(3, 2, &[0, 3]).unwrap();
        assert_eq!(
            initial_facet(&s, 2, None).unwrap().to_face(),
            face(&[Sub(0), Base(1), Sub(2), Sub(3)])
        );
        let g = face(&[Base(0), Base(1), Sub(2), Base(3)]);
        assert_eq!(initial_facet(&s, 1, Some(&g)).unwrap().to_face(), g);
        assert_eq!(initial_facet(&s, 1, None), Err(DiamondError::HintMissing));
        assert!(matches!(
            initial_facet(&s, 1, Some(&face(&[Base(0)]))),
            Err(DiamondError::HintNotAFacet(_))
        ));
    }

    #[test]
    fn h_formula_examples() {
        assert_eq!(h_vector_formula(&set(2, &[0])), vec![1, 2, 1, 0]);
        assert_eq!(h_vector_formula(&set(2, &[2])), vec![1, 0, 0, 0]);
        assert_eq!(h_vector_formula(&set(3, &[0, 2])), vec![1, 4, 4, 1, 0]);
        assert_eq!(h_vector_formula(&set(2, &[0, 1, 2, 3])), vec![1, 3, 3, 1]);
    }

    #[test]
    fn absolute_order_small_cases() {
        let c = absolute_shelling_order(&set(2, &[0]));
        let sizes: Vec<usize> = c.restrictions.iter().map(Face::len).collect();
        assert_eq!(sizes, vec![0, 1, 1, 2]);
        let top = absolute_shelling_order(&set(3, &[4]));
        assert_eq!(top.order.len(), 1);
        assert!(top.restrictions[0].is_empty());
        let whole = absolute_shelling_order(&set(2, &[0, 1, 2, 3]));
        assert_eq!(whole.size_histogram(4), vec![1, 3, 3, 1]);
    }

    #[test]
    fn single_block_relative_order() {
        let s = BlockSequence::new(2, 2, &[]).unwrap();
        let f = face(&[Base(0), Base(1)]);
        let cert = relative_shelling_order(&s, &f).unwrap();
        assert_eq!(cert.order, vec![face(&[Base(0), Base(1), Sub(2)])]);
        assert_eq!(cert.restrictions, vec![f]);
    }

    #[test]
    fn rho_sigma_split_d2() {
        let i = set(2, &[1]);
        let split = decompose_rho_sigma(&i).unwrap();
        let whole = diamond_closed_form(&i);
        assert_eq!(split.rho_part.union(&split.sigma_part), whole);
        let meet = split.rho_part.intersection(&split.sigma_part);
        let lower = diamond_closed_form(&set(1, &[1]));
        assert_eq!(meet, lower);
        assert_eq!(whole.is_induced(&split.rho_part), Ok(true));
        assert_eq!(whole.is_induced(&split.sigma_part), Ok(true));
        assert!(decompose_rho_sigma(&set(2, &[2])).is_err());
    }

    #[test]
    fn zero_split_d2() {
        let i = set(2, &[0, 1]);
        let split = decompose_zero(&i).unwrap();
        assert_eq!(split.rest.union(&split.zero_part), diamond_closed_form(&i));
        let meet = split.rest.intersection(&split.zero_part);
        let lower = diamond_closed_form(&set(1, &[0])).relabel(&split.pi);
        assert_eq!(meet, lower);
        assert!(decompose_zero(&set(2, &[1])).is_err());
    }

    mod props {
        use super::*;
        use crate::iso::are_isomorphic;
        use proptest::prelude::*;

        fn ball() -> impl Strategy<Value = IndexSet> {
            (1usize..=3).prop_flat_map(|d| {
                let n = d + 2;
                (1u32..(1 << n) - 1).prop_map(move |mask| {
                    IndexSet::new(d, (0..n).filter(|k| mask >> k & 1 == 1)).unwrap()
                })
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(48))]

            #[test]
            fn recursion_matches_closed_form(i in ball()) {
                prop_assert_eq!(diamond(&gamma(&i), i.d()).unwrap(), diamond_closed_form(&i));
            }

            #[test]
            fn canonical_form_is_isomorphic(i in ball()) {
                let c = canonicalize(&i).unwrap();
                prop_assert!(c.is_canonical());
                prop_assert_eq!(canonicalize(&c).unwrap(), c.clone());
                prop_assert!(are_isomorphic(&diamond_closed_form(&i), &diamond_closed_form(&c), None).is_some());
            }

            #[test]
            fn complement_is_an_involution_on_classes(i in ball()) {
                let c = canonicalize(&i).unwrap();
                let twice = complement_index(&complement_index(&i).unwrap()).unwrap();
                prop_assert_eq!(twice, c);
            }

            #[test]
            fn complement_in_cross_polytope(i in ball()) {
                // facets of 𝒞_d outside ⋄(Γ_I) form ⋄ of the complementary set
                let dc = diamond_closed_form(&canonicalize(&i).unwrap());
                let rest = cross_polytope(i.d()).delete_subcomplex(&dc);
                let comp = diamond_closed_form(&complement_index(&i).unwrap());
                prop_assert!(are_isomorphic(&rest, &comp, None).is_some());
                prop_assert_eq!(dc.num_facets() + comp.num_facets(), 1 << (i.d() + 1));
            }
        }
    }
}
