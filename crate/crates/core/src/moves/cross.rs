use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Mutex, OnceLock};

use itertools::Itertools;

use super::{MoveError, Result};
use crate::complex::{Coloring, Complex};
use crate::diamond::{cross_polytope, diamond_closed_form, IndexSet};
use crate::iso::VertexMap;
use crate::shelling::find_shelling;
use crate::vertex::{Face, Vertex};

/// Replace an embedded `⋄(Γ_I)` by its complement in `𝒞_d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossFlip {
    pub spec: IndexSet,
    /// From `V(⋄(Γ_I))` into the vertices of the complex.
    pub embedding: VertexMap,
}

impl CrossFlip {
    pub fn image(&self) -> Complex {
        diamond_closed_form(&self.spec).relabel(&self.embedding)
    }
}

#[derive(Debug, Clone)]
pub struct CrossFlipOutcome {
    pub complex: Complex,
    pub coloring: Option<Coloring>,
    /// Whether the glued-in complement is induced in the result.
    pub complement_induced: bool,
    /// Where each vertex of `𝒞_d` ended up.
    pub extension: VertexMap,
}

const SEARCH_BUDGET: usize = 63;

/// Shellability of `⋄(Γ_I)` and of its complement, cached per index set.
fn shell_status(i: &IndexSet) -> Result<(bool, bool)> {
    static CACHE: OnceLock<Mutex<HashMap<IndexSet, (bool, bool)>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(&s) = cache.lock().expect("poisoned").get(i) {
        return Ok(s);
    }
    let dc = diamond_closed_form(i);
    let rest = cross_polytope(i.d()).delete_subcomplex(&dc);
    let s = (
        find_shelling(&dc, SEARCH_BUDGET)?.is_some(),
        rest.is_empty() || find_shelling(&rest, SEARCH_BUDGET)?.is_some(),
    );
    cache.lock().expect("poisoned").insert(i.clone(), s);
    Ok(s)
}

/// Color of each index on the embedded diamond, if consistent.
fn index_colors(flip: &CrossFlip, kappa: &Coloring) -> Result<BTreeMap<u32, usize>> {
    let mut tau = BTreeMap::new();
    for (x, y) in &flip.embedding {
        let i = x.index().ok_or(MoveError::EmbeddingNotInjective)?;
        let k = kappa.get(*y).ok_or(MoveError::ColorMismatch)?;
        if *tau.entry(i).or_insert(k) != k {
            return Err(MoveError::ColorMismatch);
        }
    }
    if tau.values().collect::<BTreeSet<_>>().len() != tau.len() {
        return Err(MoveError::ColorMismatch);
    }
    Ok(tau)
}

pub fn apply_cross_flip(c: &Complex, flip: &CrossFlip) -> Result<Complex> {
    Ok(apply_cross_flip_full(c, None, flip)?.complex)
}

pub fn apply_cross_flip_full(
    c: &Complex,
    kappa: Option<&Coloring>,
    flip: &CrossFlip,
) -> Result<CrossFlipOutcome> {
    let i = &flip.spec;
    let d = i.d();
    if i.is_full() {
        return Err(crate::diamond::DiamondError::FullIndexSet.into());
    }
    if c.dim() != d as isize {
        return Err(MoveError::NotApplicable(format!(
            "complex has dimension {}, flip needs {d}",
            c.dim()
        )));
    }
    let dc = diamond_closed_form(i);
    let dv = dc.vertices();
    let keys: Vec<Vertex> = flip.embedding.keys().copied().collect();
    let images: BTreeSet<Vertex> = flip.embedding.values().copied().collect();
    if keys != dv || images.len() != dv.len() {
        return Err(MoveError::EmbeddingNotInjective);
    }
    let image = dc.relabel(&flip.embedding);
    if !image.is_subcomplex_of(c) || !c.is_induced(&image)? {
        return Err(MoveError::NotInduced);
    }
    let (shellable, co_shellable) = shell_status(i)?;
    if !shellable {
        return Err(MoveError::NotShellable);
    }
    if !co_shellable {
        return Err(MoveError::NotCoShellable);
    }
    let tau = kappa.map(|k| index_colors(flip, k)).transpose()?;

    let complement = cross_polytope(d).delete_subcomplex(&dc);
    let mut extension = flip.embedding.clone();
    let mut fresh = c.next_fresh();
    for v in complement.vertices() {
        extension.entry(v).or_insert_with(|| {
            let w = fresh;
            let Vertex::Fresh(k) = w else { unreachable!() };
            fresh = Vertex::Fresh(k + 1);
            w
        });
    }
    let glued = complement.relabel(&extension);
    let complex = c.delete_subcomplex(&image).union(&glued);
    let complement_induced = complex.is_induced(&glued)?;
    let coloring = match (kappa, tau) {
        (Some(k), Some(tau)) => {
            let mut out: Coloring = complex
                .vertices()
                .into_iter()
                .filter_map(|v| k.get(v).map(|col| (v, col)))
                .collect();
            for (x, y) in &extension {
                if !flip.embedding.contains_key(x) {
                    out.insert(*y, tau[&x.index().expect("cross-polytope label")]);
                }
            }
            Some(out)
        }
        _ => None,
    };
    Ok(CrossFlipOutcome {
        complex,
        coloring,
        complement_induced,
        extension,
    })
}

struct SiteSearch<'a> {
    c: &'a Complex,
    kappa: Option<&'a Coloring>,
    dc: Complex,
    by_ridge: HashMap<Face, Vec<Vertex>>,
    /// Extension steps `(ridge, new vertex)` after seeding the reference facet,
    /// with the diamond facets completed by each step.
    plan: Vec<(Face, Vertex, Vec<Face>)>,
    /// Leave the inducedness test to the caller.
    defer_induced: bool,
    tau: BTreeMap<u32, usize>,
    map: VertexMap,
    used: BTreeSet<Vertex>,
}

impl<'a> SiteSearch<'a> {
    fn new(c: &'a Complex, kappa: Option<&'a Coloring>, i: &IndexSet) -> Self {
        let mut by_ridge: HashMap<Face, Vec<Vertex>> = HashMap::new();
        for g in c.facets() {
            for v in g {
                by_ridge.entry(g.without(*v)).or_default().push(*v);
            }
        }
        let dc = diamond_closed_form(i);
        let plan = extension_plan(&dc);
        SiteSearch {
            c,
            kappa,
            dc,
            by_ridge,
            plan,
            defer_induced: false,
            tau: BTreeMap::new(),
            map: VertexMap::new(),
            used: BTreeSet::new(),
        }
    }

    fn reference(&self) -> Face {
        self.dc.facets()[0].clone()
    }

    fn color_ok(&self, x: Vertex, y: Vertex) -> bool {
        match self.kappa {
            None => true,
            Some(k) => k.get(y) == Some(self.tau[&x.index().expect("diamond label")]),
        }
    }

    /// Seed the map with `reference[k] -> anchor[k]`.
    fn seed(&mut self, anchor: &[Vertex]) -> bool {
        let r = self.reference();
        self.map.clear();
        self.used.clear();
        self.tau.clear();
        if anchor.len() != r.len() || !self.c.is_facet(&Face::new(anchor.iter().copied())) {
            return false;
        }
        if let Some(k) = self.kappa {
            for (x, y) in r.iter().zip(anchor) {
                match k.get(*y) {
                    Some(col) => {
                        self.tau.insert(x.index().expect("diamond label"), col);
                    }
                    None => return false,
                }
            }
        }
        for (x, y) in r.iter().zip(anchor) {
            self.map.insert(*x, *y);
            self.used.insert(*y);
        }
        true
    }

    fn extend(&mut self, found: &mut Vec<VertexMap>, limit: usize) {
        self.extend_from(0, found, limit);
    }

    fn extend_from(&mut self, depth: usize, found: &mut Vec<VertexMap>, limit: usize) {
        if found.len() >= limit {
            return;
        }
        let Some((ridge, x, _)) = self.plan.get(depth) else {
            if self.map.len() == self.dc.vertices().len() && self.complete_ok() {
                found.push(self.map.clone());
            }
            return;
        };
        let x = *x;
        let image_ridge = ridge.map(|v| self.map[&v]);
        let Some(candidates) = self.by_ridge.get(&image_ridge) else {
            return;
        };
        for y in candidates.clone() {
            if self.used.contains(&y) || !self.color_ok(x, y) {
                continue;
            }
            self.map.insert(x, y);
            let closes = self.plan[depth]
                .2
                .iter()
                .all(|g| self.c.is_facet(&g.map(|v| self.map[&v])));
            if closes {
                self.used.insert(y);
                self.extend_from(depth + 1, found, limit);
                self.used.remove(&y);
            }
            self.map.remove(&x);
        }
    }

    fn complete_ok(&self) -> bool {
        self.defer_induced || self.c.is_induced(&self.dc.relabel(&self.map)) == Ok(true)
    }
}

/// Order in which the diamond's vertices get mapped once its first facet is fixed.
fn extension_plan(dc: &Complex) -> Vec<(Face, Vertex, Vec<Face>)> {
    let Some(first) = dc.facets().first() else {
        return Vec::new();
    };
    let mut mapped: BTreeSet<Vertex> = first.iter().copied().collect();
    let mut plan = Vec::new();
    while let Some((ridge, x)) = dc.facets().iter().find_map(|g| {
        let missing: Vec<Vertex> = g.iter().filter(|v| !mapped.contains(v)).copied().collect();
        (missing.len() == 1).then(|| (g.without(missing[0]), missing[0]))
    }) {
        mapped.insert(x);
        let closing = dc
            .facets()
            .iter()
            .filter(|g| g.contains(x) && g.iter().all(|v| mapped.contains(v)))
            .cloned()
            .collect();
        plan.push((ridge, x, closing));
    }
    plan
}

/// All induced, color-consistent embeddings of `⋄(Γ_I)`, one per image.
pub fn find_cross_flip_sites(c: &Complex, kappa: Option<&Coloring>, i: &IndexSet) -> Vec<CrossFlip> {
    if c.dim() != i.d() as isize || i.is_full() {
        return Vec::new();
    }
    let mut s = SiteSearch::new(c, kappa, i);
    s.defer_induced = true;
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for t in c.facets() {
        for anchor in t.vertices().iter().copied().permutations(t.len()) {
            if !s.seed(&anchor) {
                continue;
            }
            let mut found = Vec::new();
            s.extend(&mut found, usize::MAX);
            for m in found {
                let image = s.dc.relabel(&m);
                if seen.insert(image.facets().to_vec()) && c.is_induced(&image) == Ok(true) {
                    out.push(CrossFlip {
                        spec: i.clone(),
                        embedding: m,
                    });
                }
            }
        }
    }
    out
}

/// The first site whose reference facet maps onto `anchor` in order.
pub fn site_from_anchor(
    c: &Complex,
    kappa: Option<&Coloring>,
    i: &IndexSet,
    anchor: &[Vertex],
) -> Option<CrossFlip> {
    if c.dim() != i.d() as isize || i.is_full() {
        return None;
    }
    let mut s = SiteSearch::new(c, kappa, i);
    if !s.seed(anchor) {
        return None;
    }
    let mut found = Vec::new();
    s.extend(&mut found, 1);
    found.pop().map(|m| CrossFlip {
        spec: i.clone(),
        embedding: m,
    })
}
