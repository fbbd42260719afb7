//! Seeded random walks of cross-flips.

use std::fmt::Write as _;

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::{is_proper_coloring, Coloring, Complex};
use crate::diamond::IndexSet;
use crate::moves::{apply_cross_flip_full, find_cross_flip_sites, MoveError};

pub const CSV_HEADER: &str = "step,flip_index,facets,vertices,euler,balanced";

#[derive(Debug, Clone)]
pub struct WalkConfig {
    pub steps: usize,
    pub seed: u64,
    pub d: usize,
    pub allowed_flips: Vec<IndexSet>,
}

impl WalkConfig {
    /// Every canonical class of dimension `d`.
    pub fn all_flips(d: usize, steps: usize, seed: u64) -> Self {
        WalkConfig {
            steps,
            seed,
            d,
            allowed_flips: IndexSet::all_canonical(d),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalkRow {
    pub step: usize,
    pub flip: Option<IndexSet>,
    pub facets: usize,
    pub vertices: usize,
    pub euler: i64,
    pub balanced: bool,
}

impl WalkRow {
    fn of(step: usize, flip: Option<IndexSet>, c: &Complex, k: &Coloring) -> Self {
        WalkRow {
            step,
            flip,
            facets: c.num_facets(),
            vertices: c.vertices().len(),
            euler: c.euler_characteristic(),
            balanced: is_proper_coloring(c, k, (c.dim() + 1).max(1) as usize),
        }
    }

    pub fn csv(&self) -> String {
        let flip = self
            .flip
            .as_ref()
            .map_or("-".to_string(), |i| i.indices().iter().join(";"));
        format!(
            "{},{},{},{},{},{}",
            self.step, flip, self.facets, self.vertices, self.euler, self.balanced
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WalkError {
    #[error("step {step}: {source}")]
    StepFailed {
        step: usize,
        #[source]
        source: MoveError,
    },
    #[error("step {0}: no allowed flip has a site")]
    Stuck(usize),
}

pub struct Walk {
    pub complex: Complex,
    pub coloring: Coloring,
    pub rows: Vec<WalkRow>,
}

impl Walk {
    pub fn csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            writeln!(out, "{}", r.csv()).expect("string write");
        }
        out
    }
}

/// Each step picks a class uniformly among the allowed classes that have a
/// site, then a site uniformly from that class's site list.
pub fn run_walk(cfg: &WalkConfig, start: &Complex, kappa: &Coloring) -> Result<Walk, WalkError> {
    run_walk_with(cfg, start, kappa, |_, _, _| {})
}

/// As [`run_walk`], calling `inspect(step, complex, coloring)` after each step.
pub fn run_walk_with<F: FnMut(usize, &Complex, &Coloring)>(
    cfg: &WalkConfig,
    start: &Complex,
    kappa: &Coloring,
    mut inspect: F,
) -> Result<Walk, WalkError> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut c = start.clone();
    let mut k = kappa.clone();
    let mut rows = vec![WalkRow::of(0, None, &c, &k)];
    for step in 1..=cfg.steps {
        let mut options: Vec<_> = cfg
            .allowed_flips
            .iter()
            .map(|i| find_cross_flip_sites(&c, Some(&k), i))
            .filter(|s| !s.is_empty())
            .collect();
        if options.is_empty() {
            return Err(WalkError::Stuck(step));
        }
        let pick = rng.gen_range(0..options.len());
        let mut sites = options.swap_remove(pick);
        let site = sites.swap_remove(rng.gen_range(0..sites.len()));
        let out = apply_cross_flip_full(&c, Some(&k), &site)
            .map_err(|source| WalkError::StepFailed { step, source })?;
        c = out.complex;
        k = out.coloring.expect("colored input");
        rows.push(WalkRow::of(step, Some(site.spec), &c, &k));
        inspect(step, &c, &k);
    }
    Ok(Walk {
        complex: c,
        coloring: k,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diamond::cross_polytope;

    #[test]
    fn short_walk_is_deterministic() {
        let c = cross_polytope(2);
        let k = Coloring::by_index(&c).unwrap();
        let cfg = WalkConfig::all_flips(2, 10, 7);
        let a = run_walk(&cfg, &c, &k).unwrap();
        let b = run_walk(&cfg, &c, &k).unwrap();
        assert_eq!(a.csv(), b.csv());
        assert_eq!(a.rows.len(), 11);
        assert!(a.rows.iter().all(|r| r.balanced && r.euler == 2));
        assert!(a.csv().starts_with("step,flip_index,facets,vertices,euler,balanced\n0,-,8,6,2,true\n"));
    }
}
