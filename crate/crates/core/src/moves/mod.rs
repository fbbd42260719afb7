//! Local moves on simplicial complexes.

mod cross;

pub use cross::{
    apply_cross_flip, apply_cross_flip_full, find_cross_flip_sites, site_from_anchor, CrossFlip,
    CrossFlipOutcome,
};

use itertools::Itertools;

use crate::complex::{is_proper_coloring, Coloring, Complex, ComplexError};
use crate::diamond::DiamondError;
use crate::manifold::{is_combinatorial_manifold, ManifoldVerdict};
use crate::shelling::ShellingError;
use crate::vertex::{Face, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MoveError {
    #[error("face {0} is not in the complex")]
    FaceNotPresent(Face),
    #[error("vertex {0} cannot be welded")]
    NotWeldable(Vertex),
    #[error("move not applicable: {0}")]
    NotApplicable(String),
    #[error("shelling condition ({0}) fails")]
    ConditionViolated(u8),
    #[error("embedded subcomplex is not induced")]
    NotInduced,
    #[error("subcomplex is not shellable")]
    NotShellable,
    #[error("complement in the cross-polytope is not shellable")]
    NotCoShellable,
    #[error("embedding is not injective or does not cover the diamond vertices")]
    EmbeddingNotInjective,
    #[error("embedding does not respect the coloring")]
    ColorMismatch,
    #[error("not applicable on the boundary: {0}")]
    NotApplicableOnBoundary(String),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Diamond(#[from] DiamondError),
    #[error(transparent)]
    Shelling(#[from] ShellingError),
}

pub type Result<T> = std::result::Result<T, MoveError>;

/// `∂B` as a complex; `{∅}` for a vertex.
pub fn simplex_boundary_of(b: &Face) -> Complex {
    Complex::generated(b.iter().map(|v| b.without(*v)))
}

/// Subdivide at `f` with the next fresh vertex, which is returned alongside.
pub fn stellar_subdivide(c: &Complex, f: &Face) -> Result<(Complex, Vertex)> {
    if !c.contains_face(f) || f.is_empty() {
        return Err(MoveError::FaceNotPresent(f.clone()));
    }
    let v = c.next_fresh();
    Ok((c.stellar_subdivide_with(f, v)?, v))
}

/// Inverse of subdividing `f` with new vertex `v`.
pub fn stellar_weld_at(c: &Complex, v: Vertex, f: &Face) -> Result<Complex> {
    let lk = c.link(&Face::new([v])).map_err(|_| MoveError::NotWeldable(v))?;
    if f.is_empty() || f.contains(v) || c.contains_face(f) {
        return Err(MoveError::NotWeldable(v));
    }
    let rest = Complex::generated(lk.facets().iter().map(|g| g.difference(f)));
    let expected = simplex_boundary_of(f)
        .join(&rest)
        .map_err(|_| MoveError::NotWeldable(v))?;
    if expected != lk {
        return Err(MoveError::NotWeldable(v));
    }
    let outside = c.facets().iter().filter(|g| !g.contains(v)).cloned();
    let inside = rest.facets().iter().map(|g| g.union(f));
    Ok(Complex::generated(outside.chain(inside)))
}

/// Faces `F` (with at least two vertices) at which `v` could be welded.
pub fn weld_candidates(c: &Complex, v: Vertex) -> Vec<Face> {
    let Ok(lk) = c.link(&Face::new([v])) else {
        return Vec::new();
    };
    let Some(g) = lk.facets().first() else {
        return Vec::new();
    };
    let verts = lk.vertices();
    let mut out: Vec<Face> = Vec::new();
    // a facet of lk(v) is (F - x) + (facet of the rest)
    for k in 1..=g.len() {
        for s in g.vertices().iter().copied().combinations(k) {
            for &x in verts.iter().filter(|x| !g.contains(**x)) {
                let f = Face::new(s.iter().copied().chain([x]));
                if !out.contains(&f) && stellar_weld_at(c, v, &f).is_ok() {
                    out.push(f);
                }
            }
        }
    }
    out.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
    out
}

/// Weld at the largest candidate face, ties broken by face order.
pub fn stellar_weld(c: &Complex, v: Vertex) -> Result<Complex> {
    let f = weld_candidates(c, v)
        .into_iter()
        .next()
        .ok_or(MoveError::NotWeldable(v))?;
    stellar_weld_at(c, v, &f)
}

/// `χ_{A,B}`: replace `⟨A⟩ ∗ ∂B` by `∂A ∗ ⟨B⟩`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BistellarFlip {
    pub a: Face,
    pub b: Face,
}

impl BistellarFlip {
    pub fn inverse(&self) -> BistellarFlip {
        BistellarFlip {
            a: self.b.clone(),
            b: self.a.clone(),
        }
    }
}

pub fn check_bistellar(c: &Complex, flip: &BistellarFlip) -> Result<()> {
    let BistellarFlip { a, b } = flip;
    if a.is_empty() || b.is_empty() || !a.is_disjoint(b) {
        return Err(MoveError::NotApplicable("A and B must be disjoint and nonempty".into()));
    }
    if !c.contains_face(a) {
        return Err(MoveError::FaceNotPresent(a.clone()));
    }
    if c.contains_face(b) {
        return Err(MoveError::NotApplicable(format!("{b} is already a face")));
    }
    if c.link(a)? != simplex_boundary_of(b) {
        return Err(MoveError::NotApplicable(format!("link of {a} is not the boundary of {b}")));
    }
    Ok(())
}

pub fn apply_bistellar(c: &Complex, flip: &BistellarFlip) -> Result<Complex> {
    check_bistellar(c, flip)?;
    let BistellarFlip { a, b } = flip;
    let kept = c.facets().iter().filter(|g| !a.is_subset(g)).cloned();
    let added = a.iter().map(|x| a.without(*x).union(b));
    Ok(Complex::generated(kept.chain(added)))
}

/// Every applicable flip, by face order of `A`.
pub fn list_bistellar(c: &Complex) -> Vec<BistellarFlip> {
    let d = c.dim();
    let fresh = c.next_fresh();
    let mut out = Vec::new();
    for a in c.all_faces().filter(|a| !a.is_empty()) {
        let b = if c.is_facet(a) {
            Face::new([fresh])
        } else {
            let lk = c.link(a).expect("face of c");
            let b = lk.vertex_face();
            if b.is_empty() || b.len() as isize > d + 1 || c.contains_face(&b) {
                continue;
            }
            if lk != simplex_boundary_of(&b) {
                continue;
            }
            b
        };
        out.push(BistellarFlip { a: a.clone(), b });
    }
    out
}

fn check_shelling_conditions(c: &Complex, f: &Face, a: &Face, r: &Face) -> Result<()> {
    if a.is_empty() || r.is_empty() || !a.is_disjoint(r) || a.union(r) != *f {
        return Err(MoveError::ConditionViolated(1));
    }
    if !c.is_facet(f) {
        return Err(MoveError::FaceNotPresent(f.clone()));
    }
    let bd = c.boundary_complex()?;
    if bd.contains_face(a) {
        return Err(MoveError::ConditionViolated(2));
    }
    if a.iter().any(|x| !bd.contains_face(&a.without(*x).union(r))) {
        return Err(MoveError::ConditionViolated(3));
    }
    Ok(())
}

/// Remove the facet `F = A ∪ R`.
pub fn shelling_move(c: &Complex, f: &Face, a: &Face, r: &Face) -> Result<Complex> {
    check_shelling_conditions(c, f, a, r)?;
    Ok(c.delete_subcomplex(&Complex::simplex(f.clone())))
}

/// Some split `(A, R)` of `f` under which its removal is a shelling. Otherwise the
/// error of the split that got furthest through the conditions.
pub fn find_shelling_split(c: &Complex, f: &Face) -> Result<(Face, Face)> {
    if !c.is_facet(f) {
        return Err(MoveError::FaceNotPresent(f.clone()));
    }
    let mut worst = MoveError::ConditionViolated(1);
    for a in f.subfaces().filter(|a| !a.is_empty() && a != f) {
        let r = f.difference(&a);
        match check_shelling_conditions(c, f, &a, &r) {
            Ok(()) => return Ok((a, r)),
            Err(MoveError::ConditionViolated(k)) => {
                if matches!(worst, MoveError::ConditionViolated(w) if k > w) {
                    worst = MoveError::ConditionViolated(k);
                }
            }
            Err(e) => return Err(e),
        }
    }
    Err(worst)
}

/// Remove facets in the given order, each by an elementary shelling.
/// Fails with the position of the first facet that cannot be removed.
pub fn remove_by_shellings(c: &Complex, order: &[Face]) -> std::result::Result<Complex, (usize, MoveError)> {
    let mut cur = c.clone();
    for (i, f) in order.iter().enumerate() {
        let (a, r) = find_shelling_split(&cur, f).map_err(|e| (i, e))?;
        cur = shelling_move(&cur, f, &a, &r).map_err(|e| (i, e))?;
    }
    Ok(cur)
}

/// Add the facet `F = A ∪ R` so that removing it again is a shelling.
pub fn inverse_shelling(c: &Complex, f: &Face, a: &Face, r: &Face) -> Result<Complex> {
    if c.contains_face(f) {
        return Err(MoveError::NotApplicable(format!("{f} is already a face")));
    }
    let next = c.union(&Complex::simplex(f.clone()));
    if !next.is_pure() {
        return Err(MoveError::NotApplicable("result is not pure".into()));
    }
    check_shelling_conditions(&next, f, a, r)?;
    Ok(next)
}

/// Realize a flip of `∂c` by adding or removing the facet `A ∪ B`.
pub fn boundary_bistellar_realization(c: &Complex, a: &Face, b: &Face) -> Result<Complex> {
    if c.dim() <= 3 && is_combinatorial_manifold(c)? != ManifoldVerdict::WithBoundary {
        return Err(MoveError::NotApplicableOnBoundary("not a manifold with boundary".into()));
    }
    let bd = c.boundary_complex()?;
    let flip = BistellarFlip {
        a: a.clone(),
        b: b.clone(),
    };
    let target = apply_bistellar(&bd, &flip)
        .map_err(|e| MoveError::NotApplicableOnBoundary(e.to_string()))?;
    let f = a.union(b);
    let next = if c.is_facet(&f) {
        c.delete_subcomplex(&Complex::simplex(f))
    } else if c.contains_face(&f) {
        return Err(MoveError::NotApplicableOnBoundary(format!("{f} is a non-maximal face")));
    } else {
        c.union(&Complex::simplex(f))
    };
    if next.boundary_complex()? != target {
        return Err(MoveError::NotApplicableOnBoundary(
            "boundary of the result differs from the flipped boundary".into(),
        ));
    }
    Ok(next)
}

/// Any of the supported moves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Move {
    Subdivide(Face),
    Weld(Vertex, Face),
    Bistellar(BistellarFlip),
    Shell { f: Face, a: Face, r: Face },
    InverseShell { f: Face, a: Face, r: Face },
    CrossFlip(CrossFlip),
}

/// Apply a move, extending `kappa` (when given) to new vertices.
pub fn apply_move(
    c: &Complex,
    kappa: Option<&Coloring>,
    mv: &Move,
) -> Result<(Complex, Option<Coloring>)> {
    if let Move::CrossFlip(flip) = mv {
        let out = apply_cross_flip_full(c, kappa, flip)?;
        return Ok((out.complex, out.coloring));
    }
    let next = match mv {
        Move::Subdivide(f) => stellar_subdivide(c, f)?.0,
        Move::Weld(v, f) => stellar_weld_at(c, *v, f)?,
        Move::Bistellar(flip) => apply_bistellar(c, flip)?,
        Move::Shell { f, a, r } => shelling_move(c, f, a, r)?,
        Move::InverseShell { f, a, r } => inverse_shelling(c, f, a, r)?,
        Move::CrossFlip(_) => unreachable!(),
    };
    let kappa = kappa.map(|k| extend_coloring(&next, k));
    Ok((next, kappa))
}

/// New vertices take the smallest color unused by their colored neighbours.
fn extend_coloring(c: &Complex, kappa: &Coloring) -> Coloring {
    let colors = (c.dim() + 1).max(1) as usize;
    let mut out: Coloring = c
        .vertices()
        .into_iter()
        .filter_map(|v| kappa.get(v).map(|k| (v, k)))
        .collect();
    for v in c.vertices() {
        if out.get(v).is_some() {
            continue;
        }
        let star = c.star(&Face::new([v])).expect("vertex of c");
        let used: Vec<usize> = star.vertices().iter().filter_map(|u| out.get(*u)).collect();
        if let Some(k) = (0..colors).find(|k| !used.contains(k)) {
            out.insert(v, k);
        }
    }
    out
}

/// Whether the result of `mv` is still properly colored with `dim + 1` colors.
pub fn preserves_balancedness(c: &Complex, kappa: &Coloring, mv: &Move) -> Result<bool> {
    let (next, kappa) = apply_move(c, Some(kappa), mv)?;
    let kappa = kappa.expect("coloring given");
    if next.vertices().iter().any(|v| kappa.get(*v).is_none()) {
        return Ok(false);
    }
    Ok(is_proper_coloring(&next, &kappa, (next.dim() + 1).max(1) as usize))
}
