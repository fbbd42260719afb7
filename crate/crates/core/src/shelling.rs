//! Shelling verification and search.

use std::collections::{HashMap, HashSet};

use crate::complex::{Complex, RelativeComplex};
use crate::diamond::cross_polytope;
use crate::io::ShellingCertificate;
use crate::vertex::Face;

pub const DEFAULT_BUDGET: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ShellingError {
    #[error("order is not a permutation of the facets: {0}")]
    NotAPermutation(String),
    #[error("{facets} facets exceed the search budget of {budget}")]
    BudgetExceeded { facets: usize, budget: usize },
    #[error("order fails at position {0}")]
    NotAShelling(usize),
    #[error("restriction at position {index} is {expected}, certificate claims {claimed}")]
    RestrictionMismatch {
        index: usize,
        expected: Face,
        claimed: Face,
    },
}

type Result<T> = std::result::Result<T, ShellingError>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShellingVerdict {
    pub ok: bool,
    pub failing_index: Option<usize>,
    /// Minimal new faces at the failing position.
    pub minimal_new_faces: Vec<Face>,
    /// Restriction faces of the accepted prefix.
    pub restrictions: Vec<Face>,
}

/// Minimal faces of `f` outside the down-closure of `old` (given as subsets of `f`).
fn minimal_new(f: &Face, old: &[Face]) -> Vec<Face> {
    let n = f.len();
    let masks: Vec<u64> = old.iter().map(|o| local_mask(f, o)).collect();
    minimal_new_masks(n, &masks)
        .into_iter()
        .map(|m| Face::new((0..n).filter(|k| m >> k & 1 == 1).map(|k| f.vertices()[k])))
        .collect()
}

fn local_mask(f: &Face, g: &Face) -> u64 {
    f.iter()
        .enumerate()
        .filter(|(_, v)| g.contains(**v))
        .fold(0, |m, (k, _)| m | 1 << k)
}

fn minimal_new_masks(n: usize, old: &[u64]) -> Vec<u64> {
    assert!(n < 64, "facet too large");
    let is_old = |g: u64| old.iter().any(|&m| g & !m == 0);
    (0u64..1 << n)
        .filter(|&g| !is_old(g) && (0..n).all(|k| g >> k & 1 == 0 || is_old(g & !(1 << k))))
        .collect()
}

fn check_permutation(expected: &[Face], order: &[Face]) -> Result<()> {
    let want: HashSet<&Face> = expected.iter().collect();
    let got: HashSet<&Face> = order.iter().collect();
    if got.len() != order.len() {
        return Err(ShellingError::NotAPermutation("repeated facet".into()));
    }
    if want != got {
        let bad = order
            .iter()
            .find(|g| !want.contains(g))
            .map(|g| format!("unexpected {g}"))
            .unwrap_or_else(|| "missing facets".into());
        return Err(ShellingError::NotAPermutation(bad));
    }
    Ok(())
}

fn verdict(order: &[Face], removed: &Complex) -> ShellingVerdict {
    let mut restrictions = Vec::with_capacity(order.len());
    for (i, f) in order.iter().enumerate() {
        let old: Vec<Face> = order[..i]
            .iter()
            .chain(removed.facets())
            .map(|g| f.intersection(g))
            .collect();
        let mins = minimal_new(f, &old);
        if mins.len() != 1 {
            return ShellingVerdict {
                ok: false,
                failing_index: Some(i),
                minimal_new_faces: mins,
                restrictions,
            };
        }
        restrictions.extend(mins);
    }
    ShellingVerdict {
        ok: true,
        failing_index: None,
        minimal_new_faces: Vec::new(),
        restrictions,
    }
}

/// Each facet must add a nonempty interval of new faces.
pub fn is_shelling(c: &Complex, order: &[Face]) -> Result<ShellingVerdict> {
    check_permutation(c.facets(), order)?;
    Ok(verdict(order, &Complex::empty()))
}

/// Like [`is_shelling`] with the faces of `rc.removed` counted as already present.
pub fn is_relative_shelling(rc: &RelativeComplex, order: &[Face]) -> Result<ShellingVerdict> {
    check_permutation(&rc.facets(), order)?;
    Ok(verdict(order, &rc.removed))
}

/// Accepts a certificate only if its restriction faces match the recomputed ones.
pub fn verify_certificate(rc: &RelativeComplex, cert: &ShellingCertificate) -> Result<()> {
    let v = is_relative_shelling(rc, &cert.order)?;
    if let Some(i) = v.failing_index {
        return Err(ShellingError::NotAShelling(i));
    }
    for (index, (expected, claimed)) in v.restrictions.iter().zip(&cert.restrictions).enumerate() {
        if expected != claimed {
            return Err(ShellingError::RestrictionMismatch {
                index,
                expected: expected.clone(),
                claimed: claimed.clone(),
            });
        }
    }
    Ok(())
}

struct Search {
    n: usize,
    sizes: Vec<usize>,
    /// `pair[i][j]`: local mask of `F_i ∩ F_j` in `F_i`.
    pair: Vec<Vec<u64>>,
    fixed: Vec<Vec<u64>>,
    failed: HashSet<u64>,
    valid: HashMap<(u64, usize), bool>,
}

impl Search {
    fn new(facets: &[Face], removed: &Complex) -> Self {
        let pair = facets
            .iter()
            .map(|f| facets.iter().map(|g| local_mask(f, &f.intersection(g))).collect())
            .collect();
        let fixed = facets
            .iter()
            .map(|f| {
                removed
                    .facets()
                    .iter()
                    .map(|g| local_mask(f, &f.intersection(g)))
                    .collect()
            })
            .collect();
        Search {
            n: facets.len(),
            sizes: facets.iter().map(Face::len).collect(),
            pair,
            fixed,
            failed: HashSet::new(),
            valid: HashMap::new(),
        }
    }

    fn can_place(&mut self, state: u64, i: usize) -> bool {
        // Only the intersections with placed facets matter.
        if let Some(&v) = self.valid.get(&(state, i)) {
            return v;
        }
        let mut old: Vec<u64> = self.fixed[i].clone();
        old.extend((0..self.n).filter(|j| state >> j & 1 == 1).map(|j| self.pair[i][j]));
        let v = minimal_new_masks(self.sizes[i], &old).len() == 1;
        if self.valid.len() < 1 << 22 {
            self.valid.insert((state, i), v);
        }
        v
    }

    fn run(&mut self, state: u64, order: &mut Vec<usize>) -> bool {
        if order.len() == self.n {
            return true;
        }
        if self.failed.contains(&state) {
            return false;
        }
        for i in 0..self.n {
            if state >> i & 1 == 0 && self.can_place(state, i) {
                order.push(i);
                if self.run(state | 1 << i, order) {
                    return true;
                }
                order.pop();
            }
        }
        self.failed.insert(state);
        false
    }
}

fn search(facets: &[Face], removed: &Complex, budget: usize) -> Result<Option<Vec<Face>>> {
    if facets.len() > budget.min(63) {
        return Err(ShellingError::BudgetExceeded {
            facets: facets.len(),
            budget: budget.min(63),
        });
    }
    let mut s = Search::new(facets, removed);
    let mut order = Vec::new();
    Ok(s
        .run(0, &mut order)
        .then(|| order.iter().map(|&i| facets[i].clone()).collect()))
}

/// Exhaustive search; `None` means no shelling exists.
pub fn find_shelling(c: &Complex, budget: usize) -> Result<Option<Vec<Face>>> {
    search(c.facets(), &Complex::empty(), budget)
}

pub fn find_relative_shelling(rc: &RelativeComplex, budget: usize) -> Result<Option<Vec<Face>>> {
    search(&rc.facets(), &rc.removed, budget)
}

pub fn is_shellable(c: &Complex) -> Result<bool> {
    Ok(find_shelling(c, DEFAULT_BUDGET)?.is_some())
}

/// Whether `𝒞_d ∖ D` is shellable.
pub fn is_co_shellable_in_crosspolytope(d_complex: &Complex, d: usize) -> Result<bool> {
    let rest = cross_polytope(d).delete_subcomplex(d_complex);
    Ok(find_shelling(&rest, DEFAULT_BUDGET)?.is_some())
}

/// `D ∪ (w ∗ (∂D ∖ F))` for a boundary ridge `F` of `D`: a complex in which `D` is
/// induced and meets the boundary exactly in `⟨F⟩`.
pub fn collar_ambient(d_complex: &Complex, ridge: &Face) -> Option<Complex> {
    let boundary = d_complex.boundary_complex().ok()?;
    if !boundary.is_facet(ridge) {
        return None;
    }
    let w = d_complex.next_fresh();
    let rest = boundary.delete_subcomplex(&Complex::simplex(ridge.clone()));
    let cone = rest.facets().iter().map(|g| g.with(w));
    Some(Complex::generated(d_complex.facets().iter().cloned().chain(cone)))
}

/// Histogram of restriction sizes, indexed `0..=dim+1`.
pub fn h_from_shelling(c: &Complex, order: &[Face]) -> Result<Vec<i64>> {
    let v = is_shelling(c, order)?;
    if let Some(i) = v.failing_index {
        return Err(ShellingError::NotAShelling(i));
    }
    let len = (c.dim() + 2).max(0) as usize;
    let cert = ShellingCertificate {
        order: order.to_vec(),
        restrictions: v.restrictions,
        removal: false,
    };
    Ok(cert.size_histogram(len))
}
