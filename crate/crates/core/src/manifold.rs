use std::collections::HashMap;

use crate::complex::{Complex, ComplexError};
use crate::vertex::{Face, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ManifoldVerdict {
    Closed,
    WithBoundary,
    No,
    /// Dimension above the exact range.
    Undecided,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Shape {
    Sphere,
    Ball,
    Neither,
}

fn vertex_degrees(c: &Complex) -> HashMap<Vertex, usize> {
    let mut deg = HashMap::new();
    for g in c.facets() {
        for v in g {
            *deg.entry(*v).or_insert(0) += 1;
        }
    }
    deg
}

/// Classify a pure complex of dimension at most 2 as a sphere, a ball, or neither.
fn shape(c: &Complex) -> Shape {
    if c.is_empty() || !c.is_pure() {
        return Shape::Neither;
    }
    match c.dim() {
        -1 => Shape::Sphere,
        0 => match c.num_facets() {
            2 => Shape::Sphere,
            1 => Shape::Ball,
            _ => Shape::Neither,
        },
        1 => {
            if !c.is_connected() {
                return Shape::Neither;
            }
            let deg = vertex_degrees(c);
            if deg.values().all(|&d| d == 2) {
                Shape::Sphere
            } else if deg.values().all(|&d| d <= 2) && deg.values().filter(|&&d| d == 1).count() == 2 {
                Shape::Ball
            } else {
                Shape::Neither
            }
        }
        2 => {
            if !c.is_connected() {
                return Shape::Neither;
            }
            let mut boundary = false;
            for v in c.vertices() {
                match shape(&c.link(&Face::new([v])).expect("vertex")) {
                    Shape::Sphere => {}
                    Shape::Ball => boundary = true,
                    Shape::Neither => return Shape::Neither,
                }
            }
            match (boundary, c.euler_characteristic()) {
                (false, 2) => Shape::Sphere,
                (true, 1) => Shape::Ball,
                _ => Shape::Neither,
            }
        }
        _ => Shape::Neither,
    }
}

/// Decide whether a pure complex is a combinatorial manifold.
///
/// Exact up to dimension 3 by classifying every vertex link; higher dimensions
/// return [`ManifoldVerdict::Undecided`].
pub fn is_combinatorial_manifold(c: &Complex) -> Result<ManifoldVerdict, ComplexError> {
    if !c.is_pure() {
        return Err(ComplexError::NotPure);
    }
    if c.dim() >= 4 {
        return Ok(ManifoldVerdict::Undecided);
    }
    if c.is_empty() || c.dim() < 0 || !c.is_connected() {
        return Ok(ManifoldVerdict::No);
    }
    let mut boundary = false;
    for v in c.vertices() {
        match shape(&c.link(&Face::new([v]))?) {
            Shape::Sphere => {}
            Shape::Ball => boundary = true,
            Shape::Neither => return Ok(ManifoldVerdict::No),
        }
    }
    Ok(if boundary {
        ManifoldVerdict::WithBoundary
    } else {
        ManifoldVerdict::Closed
    })
}
