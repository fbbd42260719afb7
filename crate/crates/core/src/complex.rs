//! Simplicial complexes stored by their facets.
//!
//! A [`Complex`] is a value: every operation returns a new complex and the
//! per-dimension face lists are computed once, on first use, behind a
//! [`OnceLock`]. The empty complex has no faces at all, while the void complex
//! `{∅}` has exactly the empty face and dimension `-1`.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;
use std::sync::OnceLock;

use itertools::Itertools;

use crate::vertex::{Face, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ComplexError {
    #[error("face {0} is not in the complex")]
    FaceNotPresent(Face),
    #[error("vertex {0} occurs in both join factors")]
    VertexCollision(Vertex),
    #[error("complex is not pure")]
    NotPure,
    #[error("not a subcomplex of the ambient complex")]
    NotSubcomplex,
    #[error("facet list is not an antichain: {0} is contained in {1}")]
    NotAntichain(Face, Face),
}

pub struct Complex {
    facets: Vec<Face>,
    faces: OnceLock<Vec<Vec<Face>>>,
}

impl Clone for Complex {
    fn clone(&self) -> Self {
        Complex {
            facets: self.facets.clone(),
            faces: self.faces.clone(),
        }
    }
}

impl PartialEq for Complex {
    fn eq(&self, other: &Self) -> bool {
        self.facets == other.facets
    }
}

impl Eq for Complex {}

impl std::hash::Hash for Complex {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.facets.hash(state);
    }
}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Complex[")?;
        for (i, g) in self.facets.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "]")
    }
}

fn maximal(mut faces: Vec<Face>) -> Vec<Face> {
    faces.sort_unstable();
    faces.dedup();
    let mut by_size = faces;
    by_size.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    let mut kept: Vec<Face> = Vec::with_capacity(by_size.len());
    for f in by_size {
        if !kept.iter().any(|k| k.len() > f.len() && f.is_subset(k)) {
            kept.push(f);
        }
    }
    kept.sort_unstable();
    kept
}

impl Complex {
    fn from_sorted_antichain(facets: Vec<Face>) -> Self {
        Complex {
            facets,
            faces: OnceLock::new(),
        }
    }

    /// The complex with no faces.
    pub fn empty() -> Self {
        Self::from_sorted_antichain(Vec::new())
    }

    /// The complex `{∅}`.
    pub fn void() -> Self {
        Self::from_sorted_antichain(vec![Face::empty()])
    }

    pub fn simplex(f: Face) -> Self {
        Self::from_sorted_antichain(vec![f])
    }

    /// The complex generated by `faces`; non-maximal generators are dropped.
    pub fn generated<I: IntoIterator<Item = Face>>(faces: I) -> Self {
        Self::from_sorted_antichain(maximal(faces.into_iter().collect()))
    }

    /// Build from an explicit facet list, rejecting lists that are not antichains.
    pub fn from_facets<I: IntoIterator<Item = Face>>(facets: I) -> Result<Self, ComplexError> {
        let mut list: Vec<Face> = facets.into_iter().collect();
        list.sort_unstable();
        for (a, b) in list.iter().tuple_windows() {
            if a == b {
                return Err(ComplexError::NotAntichain(a.clone(), b.clone()));
            }
        }
        for (i, a) in list.iter().enumerate() {
            for (j, b) in list.iter().enumerate() {
                if i != j && a.is_subset(b) {
                    return Err(ComplexError::NotAntichain(a.clone(), b.clone()));
                }
            }
        }
        Ok(Self::from_sorted_antichain(list))
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    pub fn num_facets(&self) -> usize {
        self.facets.len()
    }

    /// Largest facet dimension; `-1` for both `{∅}` and the empty complex.
    pub fn dim(&self) -> isize {
        self.facets.iter().map(Face::dim).max().unwrap_or(-1)
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn is_pure(&self) -> bool {
        self.facets.iter().map(Face::len).all_equal()
    }

    pub fn vertices(&self) -> Vec<Vertex> {
        let set: BTreeSet<Vertex> = self.facets.iter().flatten().copied().collect();
        set.into_iter().collect()
    }

    pub fn vertex_face(&self) -> Face {
        Face::new(self.facets.iter().flatten().copied())
    }

    pub fn contains_face(&self, f: &Face) -> bool {
        self.facets.iter().any(|g| f.is_subset(g))
    }

    pub fn is_facet(&self, f: &Face) -> bool {
        self.facets.binary_search(f).is_ok()
    }

    fn face_table(&self) -> &Vec<Vec<Face>> {
        self.faces.get_or_init(|| {
            let top = self.dim();
            if self.facets.is_empty() {
                return Vec::new();
            }
            (-1..=top)
                .map(|k| {
                    let size = (k + 1) as usize;
                    let set: BTreeSet<Face> = self
                        .facets
                        .iter()
                        .filter(|g| g.len() >= size)
                        .flat_map(|g| {
                            g.vertices()
                                .iter()
                                .copied()
                                .combinations(size)
                                .map(Face::new)
                        })
                        .collect();
                    set.into_iter().collect()
                })
                .collect()
        })
    }

    /// All `k`-dimensional faces in canonical order.
    pub fn faces(&self, k: isize) -> &[Face] {
        let table = self.face_table();
        if k < -1 || (k + 1) as usize >= table.len() {
            return &[];
        }
        &table[(k + 1) as usize]
    }

    pub fn all_faces(&self) -> impl Iterator<Item = &Face> {
        self.face_table().iter().flatten()
    }

    /// `(f_{-1}, f_0, …, f_d)`.
    pub fn f_vector(&self) -> Vec<u64> {
        self.face_table().iter().map(|l| l.len() as u64).collect()
    }

    /// `h_j = Σ_{i ≤ j} C(d+1-i, d+1-j) f_{i-1}`, of length `d + 2`.
    pub fn h_vector(&self) -> Result<Vec<i64>, ComplexError> {
        if !self.is_pure() {
            return Err(ComplexError::NotPure);
        }
        let f = self.f_vector();
        if f.is_empty() {
            return Ok(vec![0]);
        }
        let n = f.len() as i64;
        Ok((0..n)
            .map(|j| {
                (0..=j)
                    .map(|i| {
                        let sign = if (j - i) % 2 == 0 { 1 } else { -1 };
                        sign * binomial(n - 1 - i, n - 1 - j) * f[i as usize] as i64
                    })
                    .sum()
            })
            .collect())
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &n)| if i % 2 == 1 { n as i64 } else { -(n as i64) })
            .sum()
    }

    fn require(&self, f: &Face) -> Result<(), ComplexError> {
        if self.contains_face(f) {
            Ok(())
        } else {
            Err(ComplexError::FaceNotPresent(f.clone()))
        }
    }

    /// `lk(F) = {G : F ∪ G ∈ Δ, F ∩ G = ∅}`.
    pub fn link(&self, f: &Face) -> Result<Complex, ComplexError> {
        self.require(f)?;
        let facets = self
            .facets
            .iter()
            .filter(|g| f.is_subset(g))
            .map(|g| g.difference(f))
            .collect();
        Ok(Self::from_sorted_antichain(sorted(facets)))
    }

    /// `st(F) = {G : F ∪ G ∈ Δ}`.
    pub fn star(&self, f: &Face) -> Result<Complex, ComplexError> {
        self.require(f)?;
        let facets = self
            .facets
            .iter()
            .filter(|g| f.is_subset(g))
            .cloned()
            .collect();
        Ok(Self::from_sorted_antichain(facets))
    }

    /// `Δ ∖ F = {G ∈ Δ : F ⊄ G}`.
    pub fn delete_face(&self, f: &Face) -> Result<Complex, ComplexError> {
        self.require(f)?;
        let mut gens = Vec::new();
        for g in &self.facets {
            if f.is_subset(g) {
                gens.extend(f.iter().map(|v| g.without(*v)));
            } else {
                gens.push(g.clone());
            }
        }
        Ok(Self::generated(gens))
    }

    /// The complex generated by the facets of `self` that are not facets of `sub`.
    pub fn delete_subcomplex(&self, sub: &Complex) -> Complex {
        Self::from_sorted_antichain(
            self.facets
                .iter()
                .filter(|g| !sub.is_facet(g))
                .cloned()
                .collect(),
        )
    }

    pub fn join(&self, other: &Complex) -> Result<Complex, ComplexError> {
        let mine = self.vertex_face();
        if let Some(v) = other.vertices().into_iter().find(|v| mine.contains(*v)) {
            return Err(ComplexError::VertexCollision(v));
        }
        let facets = self
            .facets
            .iter()
            .cartesian_product(other.facets.iter())
            .map(|(a, b)| a.union(b))
            .collect();
        Ok(Self::from_sorted_antichain(sorted(facets)))
    }

    pub fn union(&self, other: &Complex) -> Complex {
        Self::generated(self.facets.iter().chain(other.facets.iter()).cloned())
    }

    pub fn is_subcomplex_of(&self, other: &Complex) -> bool {
        self.facets.iter().all(|g| other.contains_face(g))
    }

    /// Number of facets containing each ridge (face of size `d`).
    pub fn ridge_degrees(&self) -> HashMap<Face, usize> {
        let mut count: HashMap<Face, usize> = HashMap::new();
        for g in &self.facets {
            for v in g {
                *count.entry(g.without(*v)).or_default() += 1;
            }
        }
        count
    }

    /// Generated by the `(d-1)`-faces lying in exactly one facet.
    pub fn boundary_complex(&self) -> Result<Complex, ComplexError> {
        if !self.is_pure() {
            return Err(ComplexError::NotPure);
        }
        let ridges = self
            .ridge_degrees()
            .into_iter()
            .filter(|(_, n)| *n == 1)
            .map(|(r, _)| r)
            .collect();
        Ok(Self::from_sorted_antichain(sorted(ridges)))
    }

    /// Every face of `self` spanned by `V(sub)` lies in `sub`.
    pub fn is_induced(&self, sub: &Complex) -> Result<bool, ComplexError> {
        if !sub.is_subcomplex_of(self) {
            return Err(ComplexError::NotSubcomplex);
        }
        let span = sub.vertex_face();
        Ok(self
            .facets
            .iter()
            .all(|g| sub.contains_face(&g.intersection(&span))))
    }

    pub fn is_connected(&self) -> bool {
        let verts = self.vertices();
        if verts.len() <= 1 {
            return true;
        }
        let index: HashMap<Vertex, usize> =
            verts.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        let mut parent: Vec<usize> = (0..verts.len()).collect();
        fn root(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for g in &self.facets {
            if let Some((first, rest)) = g.vertices().split_first() {
                let a = root(&mut parent, index[first]);
                for v in rest {
                    let b = root(&mut parent, index[v]);
                    parent[b] = a;
                }
            }
        }
        let r = root(&mut parent, 0);
        (0..verts.len()).all(|i| root(&mut parent, i) == r)
    }

    /// Relabel vertices; the map must be injective on `V(self)`.
    pub fn map_vertices<F: Fn(Vertex) -> Vertex>(&self, f: F) -> Complex {
        Self::from_sorted_antichain(sorted(self.facets.iter().map(|g| g.map(&f)).collect()))
    }

    pub fn relabel(&self, map: &BTreeMap<Vertex, Vertex>) -> Complex {
        self.map_vertices(|v| *map.get(&v).unwrap_or(&v))
    }

    /// `sd_F(Δ) = (Δ ∖ F) ∪ (⟨v⟩ ∗ ∂F ∗ lk(F))` with the given new vertex.
    pub fn stellar_subdivide_with(&self, f: &Face, v: Vertex) -> Result<Complex, ComplexError> {
        self.require(f)?;
        if f.is_empty() {
            return Err(ComplexError::FaceNotPresent(f.clone()));
        }
        let mut gens = Vec::new();
        for g in &self.facets {
            if f.is_subset(g) {
                gens.extend(f.iter().map(|x| g.without(*x).with(v)));
            } else {
                gens.push(g.clone());
            }
        }
        Ok(Self::generated(gens))
    }

    /// The next unused `w<k>` label.
    pub fn next_fresh(&self) -> Vertex {
        let k = self
            .facets
            .iter()
            .flatten()
            .filter_map(|v| match v {
                Vertex::Fresh(k) => Some(k + 1),
                _ => None,
            })
            .max()
            .unwrap_or(0);
        Vertex::Fresh(k)
    }

    pub fn edge_set(&self) -> HashSet<(Vertex, Vertex)> {
        let mut out = HashSet::new();
        for g in &self.facets {
            for (a, b) in g.vertices().iter().tuple_combinations() {
                out.insert((*a, *b));
            }
        }
        out
    }
}

fn sorted(mut v: Vec<Face>) -> Vec<Face> {
    v.sort_unstable();
    v.dedup();
    v
}

/// `C(n, k)`, zero when `k < 0` or `k > n`.
pub fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1i64, |acc, i| acc * (n - i) / (i + 1))
}

/// A vertex colouring.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Coloring(BTreeMap<Vertex, usize>);

impl Coloring {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, v: Vertex) -> Option<usize> {
        self.0.get(&v).copied()
    }

    pub fn insert(&mut self, v: Vertex, c: usize) {
        self.0.insert(v, c);
    }

    pub fn iter(&self) -> impl Iterator<Item = (Vertex, usize)> + '_ {
        self.0.iter().map(|(v, c)| (*v, *c))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The colouring `κ(i) = κ(v_i) = i` of the cross-polytope.
    pub fn by_index(c: &Complex) -> Option<Coloring> {
        c.vertices()
            .into_iter()
            .map(|v| v.index().map(|i| (v, i as usize)))
            .collect()
    }
}

impl FromIterator<(Vertex, usize)> for Coloring {
    fn from_iter<I: IntoIterator<Item = (Vertex, usize)>>(iter: I) -> Self {
        Coloring(iter.into_iter().collect())
    }
}

/// Every vertex is coloured in `0..m` and no edge is monochromatic.
pub fn is_proper_coloring(c: &Complex, kappa: &Coloring, m: usize) -> bool {
    let all_colored = c
        .vertices()
        .into_iter()
        .all(|v| kappa.get(v).is_some_and(|k| k < m));
    all_colored
        && c.facets().iter().all(|g| {
            g.vertices()
                .iter()
                .map(|v| kappa.get(*v))
                .all_unique()
        })
}

/// Exact backtracking search for a proper `(d+1)`-colouring.
pub fn find_balanced_coloring(c: &Complex) -> Option<Coloring> {
    let m = (c.dim() + 1).max(0) as usize;
    let verts = c.vertices();
    if verts.is_empty() {
        return Some(Coloring::new());
    }
    if m == 0 {
        return None;
    }
    let index: HashMap<Vertex, usize> = verts.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); verts.len()];
    for (a, b) in c.edge_set() {
        adj[index[&a]].insert(index[&b]);
        adj[index[&b]].insert(index[&a]);
    }
    let mut colors: Vec<Option<usize>> = vec![None; verts.len()];

    fn go(i: usize, m: usize, adj: &[BTreeSet<usize>], colors: &mut Vec<Option<usize>>) -> bool {
        if i == colors.len() {
            return true;
        }
        for k in 0..m {
            if adj[i].iter().all(|&j| colors[j] != Some(k)) {
                colors[i] = Some(k);
                if go(i + 1, m, adj, colors) {
                    return true;
                }
            }
        }
        colors[i] = None;
        false
    }

    if go(0, m, &adj, &mut colors) {
        Some(
            verts
                .into_iter()
                .zip(colors)
                .map(|(v, k)| (v, k.expect("assigned")))
                .collect(),
        )
    } else {
        None
    }
}

/// A pair `(Δ, Σ)` with `Σ ⊆ Δ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelativeComplex {
    pub ambient: Complex,
    pub removed: Complex,
}

impl RelativeComplex {
    pub fn new(ambient: Complex, removed: Complex) -> Result<Self, ComplexError> {
        if !removed.is_subcomplex_of(&ambient) {
            return Err(ComplexError::NotSubcomplex);
        }
        Ok(RelativeComplex { ambient, removed })
    }

    /// Facets of the ambient complex outside the removed part.
    pub fn facets(&self) -> Vec<Face> {
        self.ambient
            .facets()
            .iter()
            .filter(|g| !self.removed.contains_face(g))
            .cloned()
            .collect()
    }
}

impl Complex {
    /// Faces common to both complexes.
    pub fn intersection(&self, other: &Complex) -> Complex {
        Self::generated(
            self.facets
                .iter()
                .cartesian_product(other.facets.iter())
                .map(|(a, b)| a.intersection(b)),
        )
    }
}
