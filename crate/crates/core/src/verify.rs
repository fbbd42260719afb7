//! Verification suites behind `crossflip verify`.

use crate::catalog::{
    check_matroid_bases, cross_validate, enumerate_basic_flips, find_reducibility_witness,
    printed_bases, verify_pentagon_composition, CatalogError,
};
use crate::complex::{binomial, Complex, RelativeComplex};
use crate::diamond::{
    absolute_shelling_order, cross_polytope, diamond_block, diamond_closed_form, h_vector_formula,
    relative_shelling_order, BlockSequence, IndexSet,
};
use crate::shelling::{collar_ambient, verify_certificate};
use crate::vertex::Face;

/// Outcome of one suite: pass/fail plus a summary or the first counterexample.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub passed: bool,
    pub detail: String,
}

impl Report {
    fn pass(detail: impl Into<String>) -> Self {
        Report {
            passed: true,
            detail: detail.into(),
        }
    }

    fn fail(detail: impl Into<String>) -> Self {
        Report {
            passed: false,
            detail: detail.into(),
        }
    }
}

pub const TARGETS: [&str; 7] = [
    "count",
    "hvector",
    "complement",
    "shelling-theorem",
    "reducibility",
    "pentagon",
    "matroid",
];

pub fn run(target: &str, d: usize) -> Result<Report, CatalogError> {
    match target {
        "count" => count(d),
        "hvector" => Ok(hvector(d)),
        "complement" => Ok(complement(d)),
        "shelling-theorem" => Ok(shelling_theorem(d)),
        "reducibility" => reducibility(d),
        "pentagon" => pentagon(),
        "matroid" => Ok(matroid()),
        other => Ok(Report::fail(format!("unknown target {other}"))),
    }
}

pub fn count(d: usize) -> Result<Report, CatalogError> {
    let classes = enumerate_basic_flips(d)?;
    let want = (1usize << (d + 1)) - 1;
    if classes.len() != want {
        return Ok(Report::fail(format!("{} classes, expected {want}", classes.len())));
    }
    if d <= 3 {
        if let Err(e) = cross_validate(&classes) {
            return Ok(Report::fail(e));
        }
    }
    Ok(Report::pass(format!("{want}")))
}

pub fn hvector(d: usize) -> Report {
    let sets = IndexSet::all_balls(d);
    for i in &sets {
        let h = diamond_closed_form(i).h_vector().expect("pure");
        if h != h_vector_formula(i) {
            return Report::fail(format!("{i}: complex {h:?}, formula {:?}", h_vector_formula(i)));
        }
    }
    Report::pass(format!("{} index sets", sets.len()))
}

/// `h_i(D) + h_{d+1-i}(𝒞_d ∖ D) = C(d+1, i)`.
pub fn complement(d: usize) -> Report {
    let sets = IndexSet::all_canonical(d);
    let cp = cross_polytope(d);
    for i in &sets {
        let dc = diamond_closed_form(i);
        let h = dc.h_vector().expect("pure");
        let rest = cp.delete_subcomplex(&dc);
        let hr = if rest.is_empty() {
            vec![0; d + 2]
        } else {
            rest.h_vector().expect("pure")
        };
        for k in 0..=d + 1 {
            if h[k] + hr[d + 1 - k] != binomial(d as i64 + 1, k as i64) {
                return Report::fail(format!("{i}: fails at i = {k}"));
            }
        }
    }
    Report::pass(format!("{} index sets", sets.len()))
}

/// Boundary ridges of `D` inside the block of `first`.
pub fn entry_ridges(dc: &Complex, d: usize, first: usize) -> Vec<Face> {
    let bd = dc.boundary_complex().expect("pure");
    let mut out: Vec<Face> = diamond_block(d, first)
        .facets()
        .iter()
        .flat_map(|g| g.iter().map(|v| g.without(*v)).collect::<Vec<_>>())
        .filter(|r| bd.is_facet(r))
        .collect();
    out.sort();
    out.dedup();
    out
}

pub fn shelling_theorem(d: usize) -> Report {
    let mut checked = 0usize;
    for i in IndexSet::all_balls(d) {
        let dc = diamond_closed_form(&i);
        let cert = absolute_shelling_order(&i);
        let rc = RelativeComplex::new(dc.clone(), Complex::empty()).expect("subcomplex");
        if let Err(e) = verify_certificate(&rc, &cert) {
            return Report::fail(format!("absolute order for {i}: {e}"));
        }
        for &first in i.indices() {
            let seq = BlockSequence::with_first(&i, first).expect("valid");
            let ridges = entry_ridges(&dc, d, first);
            if ridges.is_empty() {
                return Report::fail(format!("{i}: block {first} has no boundary ridge"));
            }
            for r in ridges {
                let amb = collar_ambient(&dc, &r).expect("boundary ridge");
                let rest = amb.delete_subcomplex(&dc);
                let rc = RelativeComplex::new(amb, rest).expect("subcomplex");
                let cert = match relative_shelling_order(&seq, &r) {
                    Ok(c) => c,
                    Err(e) => return Report::fail(format!("{i} from {first}: {e}")),
                };
                if let Err(e) = verify_certificate(&rc, &cert) {
                    return Report::fail(format!("{i} from {first} at {r}: {e}"));
                }
                checked += 1;
            }
        }
    }
    Report::pass(format!("{checked} relative orders"))
}

pub fn reducibility(d: usize) -> Result<Report, CatalogError> {
    let sets: Vec<IndexSet> = IndexSet::all_canonical(d)
        .into_iter()
        .filter(|i| !i.contains(d))
        .collect();
    let mut used = Vec::new();
    for i in &sets {
        match find_reducibility_witness(i)? {
            Some(w) if w.holds => used.push(format!("{i}@{}", w.ambient)),
            Some(w) => return Ok(Report::fail(format!("{i}: mismatch on {}", w.ambient))),
            None => return Ok(Report::fail(format!("{i}: no ambient admits both steps"))),
        }
    }
    Ok(Report::pass(used.join(" ")))
}

pub fn pentagon() -> Result<Report, CatalogError> {
    let mut parts = Vec::new();
    for reverse in [false, true] {
        match verify_pentagon_composition(reverse)? {
            Some(w) => parts.push(format!(
                "{}{} on {}",
                if reverse { "reverse " } else { "forward " },
                w.site.spec,
                w.ambient
            )),
            None => {
                return Ok(Report::fail(if reverse {
                    "no reverse composition found"
                } else {
                    "no forward composition found"
                }))
            }
        }
    }
    Ok(Report::pass(parts.join(", ")))
}

pub fn matroid() -> Report {
    let r = check_matroid_bases(&printed_bases());
    let summary = format!(
        "rank {:?}, {} elements, {} parallel pairs",
        r.rank,
        r.ground_size,
        r.parallel_pairs.as_ref().map_or(0, Vec::len)
    );
    if r.exchange_holds {
        Report::pass(summary)
    } else {
        Report::fail(r.witness.unwrap_or(summary))
    }
}
