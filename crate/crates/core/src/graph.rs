//! Undirected simple graphs on vertices `0..n`.
//!
//! Adjacency is stored in compressed sparse rows with every neighbour
//! list sorted, so membership is a binary search and neighbour iteration
//! is a slice. Dense graphs can additionally carry one bitset row per
//! vertex for constant-time `has_edge`.

use std::fmt::Write as _;
use std::io::{BufRead, Write};

use crate::error::{Error, Result};

pub type Vertex = u32;

/// Average degree above which [`Graph::with_adjacency_rows`] pays off.
pub const ROW_DENSITY_THRESHOLD: f64 = 64.0;

#[derive(Clone)]
pub struct Graph {
    n: usize,
    offsets: Vec<usize>,
    targets: Vec<Vertex>,
    rows: Option<BitRows>,
}

#[derive(Clone)]
struct BitRows {
    words_per_row: usize,
    bits: Vec<u64>,
}

impl BitRows {
    fn contains(&self, u: Vertex, v: Vertex) -> bool {
        let word = self.bits[u as usize * self.words_per_row + (v as usize >> 6)];
        word >> (v & 63) & 1 == 1
    }
}

/// Equality compares edge sets; attached bitset rows are ignored.
impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.offsets == other.offsets && self.targets == other.targets
    }
}

impl Eq for Graph {}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("m", &self.edge_count())
            .field("rows", &self.rows.is_some())
            .finish()
    }
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            offsets: vec![0; n + 1],
            targets: Vec::new(),
            rows: None,
        }
    }

    /// Build a graph from an edge list.
    ///
    /// Endpoints may come in either order and duplicates collapse.
    /// Self-loops and out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut list = Vec::new();
        for (u, v) in edges {
            if u as usize >= n || v as usize >= n {
                return Err(Error::Domain(format!("edge ({u}, {v}) outside 0..{n}")));
            }
            if u == v {
                return Err(Error::Domain(format!("self-loop at {u}")));
            }
            list.push(if u < v { (u, v) } else { (v, u) });
        }
        Ok(Self::from_normalized(n, list))
    }

    /// `edges` must hold in-range pairs with `u < v`; duplicates are allowed.
    pub(crate) fn from_normalized(n: usize, mut edges: Vec<(Vertex, Vertex)>) -> Self {
        if !edges.is_sorted() {
            edges.sort_unstable();
        }
        edges.dedup();

        let mut degree = vec![0usize; n];
        for &(u, v) in &edges {
            degree[u as usize] += 1;
            degree[v as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets[..n].to_vec();
        let mut targets = vec![0; 2 * edges.len()];
        // Lexicographic edge order writes each row already sorted: smaller
        // neighbours arrive while their own rows are being emitted.
        for &(u, v) in &edges {
            targets[fill[u as usize]] = v;
            fill[u as usize] += 1;
            targets[fill[v as usize]] = u;
            fill[v as usize] += 1;
        }
        Self {
            n,
            offsets,
            targets,
            rows: None,
        }
    }

    /// Attach a bitset row per vertex. Costs `n²/8` bytes.
    pub fn with_adjacency_rows(mut self) -> Self {
        let words_per_row = self.n.div_ceil(64);
        let mut bits = vec![0u64; words_per_row * self.n];
        for u in 0..self.n {
            for &v in self.neighbors(u as Vertex) {
                bits[u * words_per_row + (v as usize >> 6)] |= 1 << (v & 63);
            }
        }
        self.rows = Some(BitRows { words_per_row, bits });
        self
    }

    pub fn has_adjacency_rows(&self) -> bool {
        self.rows.is_some()
    }

    /// Whether the average degree exceeds [`ROW_DENSITY_THRESHOLD`].
    pub fn is_row_dense(&self) -> bool {
        self.n > 0 && self.targets.len() as f64 / self.n as f64 > ROW_DENSITY_THRESHOLD
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    pub fn degree(&self, v: Vertex) -> usize {
        let v = v as usize;
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        let v = v as usize;
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        if u as usize >= self.n || v as usize >= self.n || u == v {
            return false;
        }
        if let Some(rows) = &self.rows {
            return rows.contains(u, v);
        }
        let (a, b) = if self.degree(u) <= self.degree(v) { (u, v) } else { (v, u) };
        self.neighbors(a).binary_search(&b).is_ok()
    }

    /// All edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        (0..self.n as Vertex).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    /// Edge-set union of two graphs on the same vertex set.
    pub fn union(&self, other: &Graph) -> Result<Graph> {
        if self.n != other.n {
            return Err(Error::Domain(format!(
                "cannot union graphs on {} and {} vertices",
                self.n, other.n
            )));
        }
        // Both edge lists are sorted, so a merge keeps the result sorted.
        let mut edges = Vec::with_capacity(self.edge_count().max(other.edge_count()));
        let (mut a, mut b) = (self.edges().peekable(), other.edges().peekable());
        loop {
            let next = match (a.peek(), b.peek()) {
                (Some(&x), Some(&y)) => {
                    if x <= y {
                        a.next();
                    }
                    if y <= x {
                        b.next();
                    }
                    x.min(y)
                }
                (Some(_), None) => a.next().unwrap(),
                (None, Some(_)) => b.next().unwrap(),
                (None, None) => break,
            };
            edges.push(next);
        }
        Ok(Self::from_normalized(self.n, edges))
    }

    /// Write the plain-text edge-list format: `n m`, then one `u v` line
    /// per edge with `u < v`, lexicographically sorted.
    pub fn write_edge_list<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        let mut buf = String::with_capacity(16 * (self.edge_count() + 1));
        writeln!(buf, "{} {}", self.n, self.edge_count()).unwrap();
        for (u, v) in self.edges() {
            writeln!(buf, "{u} {v}").unwrap();
        }
        out.write_all(buf.as_bytes())
    }

    pub fn read_edge_list<R: BufRead>(input: R) -> Result<Graph> {
        let mut lines = input.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("missing `n m` header".into()))??;
        let mut fields = header.split_whitespace();
        let n: usize = parse_field(fields.next(), "n")?;
        let m: usize = parse_field(fields.next(), "m")?;
        let mut edges = Vec::with_capacity(m);
        for line in lines {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let mut fields = line.split_whitespace();
            let u: Vertex = parse_field(fields.next(), "u")?;
            let v: Vertex = parse_field(fields.next(), "v")?;
            edges.push((u, v));
        }
        if edges.len() != m {
            return Err(Error::Parse(format!("header declares {m} edges, found {}", edges.len())));
        }
        let g = Graph::from_edges(n, edges)?;
        if g.edge_count() != m {
            return Err(Error::Parse("duplicate edges in edge list".into()));
        }
        Ok(g)
    }
}

fn parse_field<T: std::str::FromStr>(field: Option<&str>, name: &str) -> Result<T> {
    field
        .ok_or_else(|| Error::Parse(format!("missing field `{name}`")))?
        .parse()
        .map_err(|_| Error::Parse(format!("invalid value for `{name}`")))
}

/// Union of two graphs' edge sets.
pub fn union_graphs(g1: &Graph, g2: &Graph) -> Result<Graph> {
    g1.union(g2)
}

/// Whether some edge of `g` joins a vertex of `a` to a vertex of `b`.
///
/// Both sets must be non-empty, disjoint and in range. The scan walks the
/// neighbour lists of whichever side has the smaller total degree and
/// binary-searches the other side.
pub fn set_adjacent(g: &Graph, a: &[Vertex], b: &[Vertex]) -> Result<bool> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::Domain("set_adjacent needs non-empty sets".into()));
    }
    let mut sa = a.to_vec();
    let mut sb = b.to_vec();
    sa.sort_unstable();
    sb.sort_unstable();
    let n = g.vertex_count();
    if let Some(&bad) = sa.iter().chain(&sb).find(|&&v| v as usize >= n) {
        return Err(Error::Domain(format!("vertex {bad} outside 0..{n}")));
    }
    if let Some(v) = first_common(&sa, &sb) {
        return Err(Error::Domain(format!("sets overlap at vertex {v}")));
    }
    let degree_sum = |s: &[Vertex]| s.iter().map(|&v| g.degree(v)).sum::<usize>();
    let (scan, probe) = if degree_sum(&sa) <= degree_sum(&sb) { (&sa, &sb) } else { (&sb, &sa) };
    Ok(scan
        .iter()
        .any(|&u| g.neighbors(u).iter().any(|w| probe.binary_search(w).is_ok())))
}

fn first_common(a: &[Vertex], b: &[Vertex]) -> Option<Vertex> {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return Some(a[i]),
        }
    }
    None
}
