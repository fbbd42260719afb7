use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

/// A vertex label.
///
/// `Base(i)` is written `i`, `Sub(i)` is written `v{i}` and pairs with `Base(i)`
/// on the cross-polytope. `Fresh(k)` labels vertices introduced by moves and is
/// written `w{k}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Vertex {
    Base(u32),
    Sub(u32),
    Fresh(u32),
}

impl Vertex {
    fn key(self) -> (u8, u32, u8) {
        match self {
            Vertex::Base(i) => (0, i, 0),
            Vertex::Sub(i) => (0, i, 1),
            Vertex::Fresh(k) => (1, k, 0),
        }
    }

    /// Pair index for `Base`/`Sub` labels.
    pub fn index(self) -> Option<u32> {
        match self {
            Vertex::Base(i) | Vertex::Sub(i) => Some(i),
            Vertex::Fresh(_) => None,
        }
    }

    /// The other member of a `Base`/`Sub` pair.
    pub fn partner(self) -> Option<Vertex> {
        match self {
            Vertex::Base(i) => Some(Vertex::Sub(i)),
            Vertex::Sub(i) => Some(Vertex::Base(i)),
            Vertex::Fresh(_) => None,
        }
    }

    pub fn is_sub(self) -> bool {
        matches!(self, Vertex::Sub(_))
    }
}

impl Ord for Vertex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for Vertex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vertex::Base(i) => write!(f, "{i}"),
            Vertex::Sub(i) => write!(f, "v{i}"),
            Vertex::Fresh(k) => write!(f, "w{k}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid vertex label {0:?}")]
pub struct ParseVertexError(pub String);

impl FromStr for Vertex {
    type Err = ParseVertexError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ParseVertexError(s.to_string());
        let num = |t: &str| -> Result<u32, ParseVertexError> {
            if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            t.parse().map_err(|_| bad())
        };
        match s.as_bytes().first() {
            Some(b'v') => Ok(Vertex::Sub(num(&s[1..])?)),
            Some(b'w') => Ok(Vertex::Fresh(num(&s[1..])?)),
            _ => Ok(Vertex::Base(num(s)?)),
        }
    }
}

/// A sorted, duplicate-free vertex list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Face(Vec<Vertex>);

impl Face {
    pub fn new<I: IntoIterator<Item = Vertex>>(vertices: I) -> Self {
        let mut v: Vec<Vertex> = vertices.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Face(v)
    }

    pub fn empty() -> Self {
        Face(Vec::new())
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `|F| - 1`.
    pub fn dim(&self) -> isize {
        self.0.len() as isize - 1
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_subset(&self, other: &Face) -> bool {
        if self.0.len() > other.0.len() {
            return false;
        }
        let mut it = other.0.iter();
        'outer: for v in &self.0 {
            for w in it.by_ref() {
                match w.cmp(v) {
                    Ordering::Less => continue,
                    Ordering::Equal => continue 'outer,
                    Ordering::Greater => return false,
                }
            }
            return false;
        }
        true
    }

    pub fn union(&self, other: &Face) -> Face {
        Face::new(self.0.iter().chain(other.0.iter()).copied())
    }

    pub fn intersection(&self, other: &Face) -> Face {
        Face(self.0.iter().copied().filter(|v| other.contains(*v)).collect())
    }

    pub fn difference(&self, other: &Face) -> Face {
        Face(self.0.iter().copied().filter(|v| !other.contains(*v)).collect())
    }

    pub fn is_disjoint(&self, other: &Face) -> bool {
        self.0.iter().all(|v| !other.contains(*v))
    }

    pub fn without(&self, v: Vertex) -> Face {
        Face(self.0.iter().copied().filter(|w| *w != v).collect())
    }

    pub fn with(&self, v: Vertex) -> Face {
        let mut out = self.0.clone();
        if let Err(pos) = out.binary_search(&v) {
            out.insert(pos, v);
        }
        Face(out)
    }

    /// All subsets, including the empty face and the face itself.
    pub fn subfaces(&self) -> impl Iterator<Item = Face> + '_ {
        let n = self.0.len();
        (0u64..(1u64 << n)).map(move |mask| {
            Face(
                (0..n)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| self.0[i])
                    .collect(),
            )
        })
    }

    pub fn map<F: Fn(Vertex) -> Vertex>(&self, f: F) -> Face {
        Face::new(self.0.iter().map(|v| f(*v)))
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Vertex> {
        self.0.iter()
    }
}

impl FromIterator<Vertex> for Face {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        Face::new(iter)
    }
}

impl<'a> IntoIterator for &'a Face {
    type Item = &'a Vertex;
    type IntoIter = std::slice::Iter<'a, Vertex>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Parse a comma separated vertex list such as `0,v1,2`.
pub fn parse_vertex_list(s: &str) -> Result<Vec<Vertex>, ParseVertexError> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|t| t.trim().parse()).collect()
}
