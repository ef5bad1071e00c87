use std::fmt;

use thiserror::Error;

/// Largest vertex count whose edge set fits in the 64-bit vector.
pub const MAX_VERTICES: usize = 11;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex count {0} unsupported (1..={MAX_VERTICES})")]
    BadVertexCount(usize),
    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("expected {expected} edge bits, got {got}")]
    BitLength { expected: usize, got: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("difference {diff} not in 1..={max}")]
    BadDifference { diff: usize, max: usize },
    #[error("relabeling is not a permutation of {0} vertices")]
    BadRelabeling(usize),
}

/// Number of vertex pairs on `n` vertices.
pub const fn pair_count(n: usize) -> usize {
    n * (n - 1) / 2
}

/// Lexicographic index of the pair `{i, j}`, 0-based, `i != j`.
pub fn edge_index(n: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    debug_assert!(j < n && i != j);
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

/// Inverse of [`edge_index`].
pub fn edge_endpoints(n: usize, mut idx: usize) -> (usize, usize) {
    for i in 0..n {
        let row = n - i - 1;
        if idx < row {
            return (i, i + 1 + idx);
        }
        idx -= row;
    }
    panic!("edge index out of range for n = {n}");
}

/// A labeled simple graph on at most [`MAX_VERTICES`] vertices, stored as a
/// bit-vector over the lexicographically ordered vertex pairs.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    n: u8,
    bits: u64,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        assert!(
            (1..=MAX_VERTICES).contains(&n),
            "unsupported vertex count {n}"
        );
        Graph {
            n: n as u8,
            bits: 0,
        }
    }

    pub fn complete(n: usize) -> Self {
        let g = Self::empty(n);
        Graph {
            bits: g.full_mask(),
            ..g
        }
    }

    pub fn from_bits(n: usize, bits: u64) -> Self {
        let g = Self::empty(n);
        assert_eq!(bits & !g.full_mask(), 0, "bits beyond the pair count");
        Graph { bits, ..g }
    }

    /// Builds a graph from 0-based edges.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut g = Self::empty(n);
        for (i, j) in edges {
            g.add_edge(i, j);
        }
        g
    }

    fn full_mask(&self) -> u64 {
        let m = pair_count(self.n());
        if m == 64 {
            u64::MAX
        } else {
            (1u64 << m) - 1
        }
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn edge_count(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i != j && self.bits >> edge_index(self.n(), i, j) & 1 == 1
    }

    pub fn add_edge(&mut self, i: usize, j: usize) {
        assert!(i != j && i < self.n() && j < self.n());
        self.bits |= 1 << edge_index(self.n(), i, j);
    }

    /// 0-based edges in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.n();
        (0..pair_count(n))
            .filter(move |&k| self.bits >> k & 1 == 1)
            .map(move |k| edge_endpoints(n, k))
    }

    pub fn complement(&self) -> Graph {
        Graph {
            bits: !self.bits & self.full_mask(),
            ..*self
        }
    }

    pub fn union(&self, other: &Graph) -> Graph {
        assert_eq!(self.n, other.n);
        Graph {
            bits: self.bits | other.bits,
            ..*self
        }
    }

    pub fn intersection(&self, other: &Graph) -> Graph {
        assert_eq!(self.n, other.n);
        Graph {
            bits: self.bits & other.bits,
            ..*self
        }
    }

    /// Same labels, edge set contained in `other`'s.
    pub fn is_subgraph_of(&self, other: &Graph) -> bool {
        self.n == other.n && self.bits & !other.bits == 0
    }

    /// Neighbourhood bitmask of every vertex.
    pub fn adjacency(&self) -> Vec<u16> {
        let mut adj = vec![0u16; self.n()];
        for (i, j) in self.edges() {
            adj[i] |= 1 << j;
            adj[j] |= 1 << i;
        }
        adj
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency()
            .iter()
            .map(|m| m.count_ones() as usize)
            .collect()
    }

    pub fn degree_multiset(&self) -> Vec<usize> {
        let mut d = self.degrees();
        d.sort_unstable();
        d
    }

    pub fn is_regular(&self) -> bool {
        self.degrees().windows(2).all(|w| w[0] == w[1])
    }

    pub fn triangle_count(&self) -> usize {
        let adj = self.adjacency();
        self.edges()
            .map(|(i, j)| (adj[i] & adj[j]).count_ones() as usize)
            .sum::<usize>()
            / 3
    }

    /// Length of a shortest cycle, if any.
    pub fn girth(&self) -> Option<usize> {
        let adj = self.adjacency();
        let n = self.n();
        let mut best: Option<usize> = None;
        for root in 0..n {
            let mut dist = vec![usize::MAX; n];
            let mut parent = vec![usize::MAX; n];
            dist[root] = 0;
            let mut queue = std::collections::VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                for v in 0..n {
                    if adj[u] >> v & 1 == 0 {
                        continue;
                    }
                    if dist[v] == usize::MAX {
                        dist[v] = dist[u] + 1;
                        parent[v] = u;
                        queue.push_back(v);
                    } else if parent[u] != v {
                        let len = dist[u] + dist[v] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    /// The image of the graph under `sigma`: edge `{i, j}` becomes
    /// `{sigma[i], sigma[j]}`.
    pub fn relabel(&self, sigma: &[usize]) -> Result<Graph, GraphError> {
        let n = self.n();
        let mut seen = vec![false; n];
        if sigma.len() != n {
            return Err(GraphError::BadRelabeling(n));
        }
        for &s in sigma {
            if s >= n || seen[s] {
                return Err(GraphError::BadRelabeling(n));
            }
            seen[s] = true;
        }
        Ok(Graph::from_edges(
            n,
            self.edges().map(|(i, j)| (sigma[i], sigma[j])),
        ))
    }

    /// Compact 0/1 string over the lexicographic pair order.
    pub fn to_bit_string(&self) -> String {
        (0..pair_count(self.n()))
            .map(|k| if self.bits >> k & 1 == 1 { '1' } else { '0' })
            .collect()
    }

    pub fn from_bit_string(n: usize, s: &str) -> Result<Graph, GraphError> {
        if !(1..=MAX_VERTICES).contains(&n) {
            return Err(GraphError::BadVertexCount(n));
        }
        let s = s.trim();
        let expected = pair_count(n);
        if s.chars().count() != expected {
            return Err(GraphError::BitLength {
                expected,
                got: s.chars().count(),
            });
        }
        let mut bits = 0u64;
        for (k, c) in s.chars().enumerate() {
            match c {
                '1' => bits |= 1 << k,
                '0' => {}
                other => return Err(GraphError::Parse(format!("unexpected {other:?}"))),
            }
        }
        Ok(Graph::from_bits(n, bits))
    }

    /// Text form: a line `n=<count>` followed by one `i j` line per edge,
    /// 1-based.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("n={}\n", self.n());
        for (i, j) in self.edges() {
            out.push_str(&format!("{} {}\n", i + 1, j + 1));
        }
        out
    }

    /// Parses [`Graph::to_edge_list`] output. Blank lines and `#` comments
    /// are ignored; a bare 0/1 string of the right length is also accepted
    /// after the header.
    pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| GraphError::Parse("missing header".into()))?;
        let n: usize = header
            .strip_prefix("n=")
            .and_then(|v| v.trim().parse().ok())
            .ok_or_else(|| GraphError::Parse(format!("bad header {header:?}")))?;
        if !(1..=MAX_VERTICES).contains(&n) {
            return Err(GraphError::BadVertexCount(n));
        }
        let mut g = Graph::empty(n);
        for line in lines {
            if !line.contains(char::is_whitespace) && line.len() == pair_count(n) {
                g = g.union(&Graph::from_bit_string(n, line)?);
                continue;
            }
            let mut it = line.split_whitespace();
            let mut vertex = || -> Result<usize, GraphError> {
                let tok = it
                    .next()
                    .ok_or_else(|| GraphError::Parse(format!("bad edge line {line:?}")))?;
                let v: usize = tok
                    .parse()
                    .map_err(|_| GraphError::Parse(format!("bad vertex {tok:?}")))?;
                if v == 0 || v > n {
                    return Err(GraphError::VertexOutOfRange { vertex: v, n });
                }
                Ok(v - 1)
            };
            let (i, j) = (vertex()?, vertex()?);
            if it.next().is_some() {
                return Err(GraphError::Parse(format!("trailing tokens in {line:?}")));
            }
            if i == j {
                return Err(GraphError::Loop(i + 1));
            }
            g.add_edge(i, j);
        }
        Ok(g)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, {})", self.n, self.to_bit_string())
    }
}

/// Connection set of a circulant graph on `n` vertices: differences in
/// `1..=n/2`, stored as a bitmask (bit `d` set iff `d` is present).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CirculantSpec {
    n: u8,
    mask: u16,
}

impl CirculantSpec {
    pub fn new(n: usize, diffs: &[usize]) -> Result<Self, GraphError> {
        if !(1..=MAX_VERTICES).contains(&n) {
            return Err(GraphError::BadVertexCount(n));
        }
        let mut mask = 0u16;
        for &d in diffs {
            if d == 0 || d > n / 2 {
                return Err(GraphError::BadDifference {
                    diff: d,
                    max: n / 2,
                });
            }
            mask |= 1 << d;
        }
        Ok(CirculantSpec { n: n as u8, mask })
    }

    /// Every connection set on `n` vertices, ordered by mask.
    pub fn all(n: usize) -> Vec<CirculantSpec> {
        let max = n / 2;
        (0u16..1 << max)
            .map(|m| CirculantSpec {
                n: n as u8,
                mask: m << 1,
            })
            .collect()
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn diffs(&self) -> Vec<usize> {
        (1..=self.n() / 2)
            .filter(|d| self.mask >> d & 1 == 1)
            .collect()
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.n() / 2
    }

    /// The complementary connection set.
    pub fn complement(&self) -> CirculantSpec {
        let full = ((1u16 << (self.n() / 2)) - 1) << 1;
        CirculantSpec {
            n: self.n,
            mask: !self.mask & full,
        }
    }

    /// Digits of the set, e.g. `"124"`; the empty set is `"{}"`.
    pub fn name(&self) -> String {
        if self.is_empty() {
            return "{}".into();
        }
        self.diffs().iter().map(|d| d.to_string()).collect()
    }

    pub fn parse(n: usize, name: &str) -> Result<Self, GraphError> {
        if name == "{}" {
            return CirculantSpec::new(n, &[]);
        }
        let diffs = name
            .chars()
            .map(|c| {
                c.to_digit(10)
                    .map(|d| d as usize)
                    .ok_or_else(|| GraphError::Parse(format!("bad connection set {name:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        CirculantSpec::new(n, &diffs)
    }
}

/// The circulant graph: `i` and `j` adjacent iff `±(i - j) mod n` is in the
/// connection set.
pub fn circulant(spec: &CirculantSpec) -> Graph {
    let n = spec.n();
    let mut g = Graph::empty(n);
    for d in spec.diffs() {
        for i in 0..n {
            g.add_edge(i, (i + d) % n);
        }
    }
    g
}

/// The Petersen graph as the Kneser graph on the 2-subsets of `{1..5}`.
/// Subsets are labeled 1..10 in lexicographic order and disjoint subsets are
/// adjacent.
pub fn petersen() -> Graph {
    let pairs: Vec<(usize, usize)> = (0..5)
        .flat_map(|a| (a + 1..5).map(move |b| (a, b)))
        .collect();
    let mut g = Graph::empty(10);
    for (x, &(a, b)) in pairs.iter().enumerate() {
        for (y, &(c, d)) in pairs.iter().enumerate().skip(x + 1) {
            if a != c && a != d && b != c && b != d {
                g.add_edge(x, y);
            }
        }
    }
    g
}
