use std::collections::{BTreeMap, HashMap, HashSet};

use crate::complex::{Coloring, Complex};
use crate::vertex::{Face, Vertex};

/// Constraints on an isomorphism search.
#[derive(Debug, Clone, Copy, Default)]
pub struct IsoOptions<'a> {
    /// Colourings of the source and target that the map must preserve.
    pub colors: Option<(&'a Coloring, &'a Coloring)>,
    /// Assignments forced in advance.
    pub fixed: Option<&'a BTreeMap<Vertex, Vertex>>,
}

pub type VertexMap = BTreeMap<Vertex, Vertex>;

/// A vertex bijection `V(a) → V(b)` inducing a facet bijection, if one exists.
pub fn are_isomorphic(
    a: &Complex,
    b: &Complex,
    colors: Option<(&Coloring, &Coloring)>,
) -> Option<VertexMap> {
    find_isomorphism(a, b, IsoOptions { colors, fixed: None })
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Invariant {
    degree: usize,
    link_f: Vec<u64>,
    color: Option<usize>,
}

fn invariants(c: &Complex, kappa: Option<&Coloring>) -> HashMap<Vertex, Invariant> {
    c.vertices()
        .into_iter()
        .map(|v| {
            let f = Face::new([v]);
            let link = c.link(&f).expect("vertex of complex");
            let inv = Invariant {
                degree: link.num_facets(),
                link_f: link.f_vector(),
                color: kappa.and_then(|k| k.get(v)),
            };
            (v, inv)
        })
        .collect()
}

struct Search<'a> {
    order: Vec<Vertex>,
    inv_a: HashMap<Vertex, Invariant>,
    inv_b: HashMap<Vertex, Invariant>,
    adj_a: HashMap<Vertex, HashSet<Vertex>>,
    adj_b: HashMap<Vertex, HashSet<Vertex>>,
    facets_at: HashMap<Vertex, Vec<&'a Face>>,
    facets_b: HashSet<&'a Face>,
    targets: Vec<Vertex>,
    map: HashMap<Vertex, Vertex>,
    used: HashSet<Vertex>,
}

fn adjacency(c: &Complex) -> HashMap<Vertex, HashSet<Vertex>> {
    let mut adj: HashMap<Vertex, HashSet<Vertex>> =
        c.vertices().into_iter().map(|v| (v, HashSet::new())).collect();
    for (x, y) in c.edge_set() {
        adj.get_mut(&x).unwrap().insert(y);
        adj.get_mut(&y).unwrap().insert(x);
    }
    adj
}

impl Search<'_> {
    fn consistent(&self, u: Vertex, w: Vertex) -> bool {
        if self.inv_a[&u] != self.inv_b[&w] || self.used.contains(&w) {
            return false;
        }
        let na = &self.adj_a[&u];
        let nb = &self.adj_b[&w];
        for (x, y) in &self.map {
            if na.contains(x) != nb.contains(y) {
                return false;
            }
        }
        for g in &self.facets_at[&u] {
            let mut image = Vec::with_capacity(g.len());
            for v in g.iter() {
                if *v == u {
                    image.push(w);
                } else if let Some(t) = self.map.get(v) {
                    image.push(*t);
                } else {
                    break;
                }
            }
            if image.len() == g.len() && !self.facets_b.contains(&Face::new(image)) {
                return false;
            }
        }
        true
    }

    fn run(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let u = self.order[depth];
        if self.map.contains_key(&u) {
            return self.run(depth + 1);
        }
        for i in 0..self.targets.len() {
            let w = self.targets[i];
            if self.consistent(u, w) {
                self.map.insert(u, w);
                self.used.insert(w);
                if self.run(depth + 1) {
                    return true;
                }
                self.map.remove(&u);
                self.used.remove(&w);
            }
        }
        false
    }
}

/// Backtracking isomorphism search pruned by vertex degree, link f-vector and colour.
pub fn find_isomorphism(a: &Complex, b: &Complex, opts: IsoOptions<'_>) -> Option<VertexMap> {
    if a.num_facets() != b.num_facets() || a.f_vector() != b.f_vector() {
        return None;
    }
    let (ka, kb) = match opts.colors {
        Some((x, y)) => (Some(x), Some(y)),
        None => (None, None),
    };
    let inv_a = invariants(a, ka);
    let inv_b = invariants(b, kb);
    let mut sa: Vec<&Invariant> = inv_a.values().collect();
    let mut sb: Vec<&Invariant> = inv_b.values().collect();
    sa.sort();
    sb.sort();
    if sa != sb {
        return None;
    }
    let adj_a = adjacency(a);
    let adj_b = adjacency(b);
    let mut facets_at: HashMap<Vertex, Vec<&Face>> = HashMap::new();
    for g in a.facets() {
        for v in g {
            facets_at.entry(*v).or_default().push(g);
        }
    }

    let mut map = HashMap::new();
    let mut used = HashSet::new();
    if let Some(fixed) = opts.fixed {
        for (x, y) in fixed {
            if !inv_a.contains_key(x) || !inv_b.contains_key(y) || inv_a[x] != inv_b[y] {
                return None;
            }
            if !used.insert(*y) {
                return None;
            }
            map.insert(*x, *y);
        }
    }

    // Visit vertices with the most already-placed neighbours first.
    let verts = a.vertices();
    let mut order: Vec<Vertex> = verts.iter().copied().filter(|v| map.contains_key(v)).collect();
    let mut placed: HashSet<Vertex> = order.iter().copied().collect();
    while order.len() < verts.len() {
        let next = verts
            .iter()
            .filter(|v| !placed.contains(v))
            .max_by_key(|v| {
                let n = adj_a[v].iter().filter(|x| placed.contains(x)).count();
                (n, std::cmp::Reverse(**v))
            })
            .copied()
            .expect("unplaced vertex");
        placed.insert(next);
        order.push(next);
    }

    let mut search = Search {
        order,
        inv_a,
        inv_b,
        adj_a,
        adj_b,
        facets_at,
        facets_b: b.facets().iter().collect(),
        targets: b.vertices(),
        map: HashMap::new(),
        used: HashSet::new(),
    };
    // Re-check the forced assignments against each other.
    for (x, y) in map {
        if !search.consistent(x, y) {
            return None;
        }
        search.map.insert(x, y);
        search.used.insert(y);
    }
    if !search.run(0) {
        return None;
    }
    let result: VertexMap = search.map.into_iter().collect();
    debug_assert!(a
        .facets()
        .iter()
        .all(|g| b.is_facet(&g.map(|v| result[&v]))));
    Some(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vertex::Vertex::Base;

    fn path(n: u32) -> Complex {
        Complex::generated((0..n).map(|i| Face::new([Base(i), Base(i + 1)])))
    }

    #[test]
    fn paths_of_different_length_differ() {
        assert!(are_isomorphic(&path(2), &path(3), None).is_none());
        assert!(are_isomorphic(&path(3), &path(3), None).is_some());
    }

    #[test]
    fn fixed_assignment_respected() {
        let p = path(2);
        let mut fixed = VertexMap::new();
        fixed.insert(Base(0), Base(2));
        let m = find_isomorphism(&p, &p, IsoOptions { colors: None, fixed: Some(&fixed) }).unwrap();
        assert_eq!(m[&Base(0)], Base(2));
        assert_eq!(m[&Base(1)], Base(1));
        fixed.insert(Base(1), Base(0));
        assert!(find_isomorphism(&p, &p, IsoOptions { colors: None, fixed: Some(&fixed) }).is_none());
    }
}
