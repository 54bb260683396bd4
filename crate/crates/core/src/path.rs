//! Long simple paths and their segmentation.
//!
//! [`find_long_path`] combines three moves, all charged against a shared
//! step budget:
//!
//! 1. depth-first search from a random start, always stepping to the
//!    unvisited neighbour with the fewest unvisited neighbours of its own
//!    (random tie-break). The DFS stack is always a path, and the deepest
//!    stack seen is kept;
//! 2. greedy extension of both endpoints into vertices off the path;
//! 3. Pósa rotations: with endpoint `x` adjacent to path vertex `w`,
//!    reverse the segment after `w` so its successor becomes the new
//!    endpoint, then retry extension.
//!
//! The best path over all restarts is returned. One budget step is a DFS
//! push or pop, an extension attempt, or one reversed vertex in a
//! rotation; neighbour scans are not charged.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::rng::RngStream;

const OFF_PATH: u32 = u32::MAX;

/// An ordered sequence of distinct vertices, consecutive ones adjacent.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexPath {
    vertices: Vec<Vertex>,
}

impl VertexPath {
    /// Wrap a vertex sequence. Use [`VertexPath::validate`] to check it
    /// against a host graph.
    pub fn new(vertices: Vec<Vertex>) -> Self {
        Self { vertices }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn into_vertices(self) -> Vec<Vertex> {
        self.vertices
    }

    pub fn validate(&self, g: &Graph) -> Result<()> {
        let mut seen = vec![false; g.vertex_count()];
        for (i, &v) in self.vertices.iter().enumerate() {
            let slot = seen
                .get_mut(v as usize)
                .ok_or_else(|| Error::Domain(format!("path vertex {v} out of range")))?;
            if std::mem::replace(slot, true) {
                return Err(Error::Domain(format!("path repeats vertex {v}")));
            }
            if i > 0 && !g.has_edge(self.vertices[i - 1], v) {
                return Err(Error::Domain(format!(
                    "path step {} -> {v} is not an edge",
                    self.vertices[i - 1]
                )));
            }
        }
        Ok(())
    }
}

/// Restart count and step budget for [`find_long_path`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PathSearch {
    pub restarts: usize,
    /// Total budget is `budget_factor * |searchable vertices|` elementary steps.
    pub budget_factor: usize,
}

impl Default for PathSearch {
    fn default() -> Self {
        Self {
            restarts: 8,
            budget_factor: 50,
        }
    }
}

/// Find a long simple path in `g`, optionally confined to `restrict_to`.
///
/// Returns an empty path only when there is nothing to search (no
/// vertices, or an empty restriction). Deterministic in its inputs.
pub fn find_long_path(
    g: &Graph,
    restrict_to: Option<&[Vertex]>,
    stream: &RngStream,
    search: &PathSearch,
) -> VertexPath {
    let n = g.vertex_count();
    let mut allowed = vec![restrict_to.is_none(); n];
    let mut pool: Vec<Vertex> = match restrict_to {
        Some(set) => {
            for &v in set {
                if (v as usize) < n {
                    allowed[v as usize] = true;
                }
            }
            (0..n as Vertex).filter(|&v| allowed[v as usize]).collect()
        }
        None => (0..n as Vertex).collect(),
    };
    if pool.is_empty() {
        return VertexPath::default();
    }
    let mut rng = stream.rng();
    // Starting in a degree-0 or degree-1 vertex is never better than
    // starting next to it, so prefer vertices with two or more usable
    // neighbours when there are any.
    let usable_degree = |v: Vertex| g.neighbors(v).iter().filter(|&&w| allowed[w as usize]).count();
    let rich: Vec<Vertex> = pool.iter().copied().filter(|&v| usable_degree(v) >= 2).collect();
    if !rich.is_empty() {
        pool = rich;
    }

    let restarts = search.restarts.max(1);
    let total_budget = search.budget_factor.max(1) * allowed.iter().filter(|&&a| a).count();
    let per_restart = (total_budget / restarts).max(1);
    let mut searcher = Searcher::new(g, &allowed);
    let mut best: Vec<Vertex> = Vec::new();

    for _ in 0..restarts {
        let start = *pool.choose(&mut rng).unwrap();
        let mut budget = per_restart as i64;
        let path = searcher.deepest_dfs(start, &mut rng, &mut budget);
        let path = searcher.rotate_extend(path, &mut rng, &mut budget);
        if path.len() > best.len() {
            best = path;
        }
        if best.len() == pool.len() {
            break;
        }
    }
    VertexPath::new(best)
}

struct Searcher<'a> {
    g: &'a Graph,
    allowed: &'a [bool],
    /// Position on the current path, or `OFF_PATH`.
    pos: Vec<u32>,
    visited: Vec<bool>,
    free_degree: Vec<u32>,
}

impl<'a> Searcher<'a> {
    fn new(g: &'a Graph, allowed: &'a [bool]) -> Self {
        let n = g.vertex_count();
        Self {
            g,
            allowed,
            pos: vec![OFF_PATH; n],
            visited: vec![false; n],
            free_degree: vec![0; n],
        }
    }

    fn usable(&self, v: Vertex) -> bool {
        self.allowed[v as usize]
    }

    fn deepest_dfs(&mut self, start: Vertex, rng: &mut ChaCha8Rng, budget: &mut i64) -> Vec<Vertex> {
        let g = self.g;
        for v in 0..g.vertex_count() {
            self.visited[v] = false;
            self.free_degree[v] = 0;
        }
        for v in 0..g.vertex_count() as Vertex {
            if self.usable(v) {
                self.free_degree[v as usize] =
                    g.neighbors(v).iter().filter(|&&w| self.usable(w)).count() as u32;
            }
        }

        let mut stack: Vec<Vertex> = Vec::new();
        let mut best: Vec<Vertex> = Vec::new();
        // `best[..shared]` equals `stack[..shared]`; only the tail is copied
        // when a deeper stack is recorded.
        let mut shared = 0usize;
        self.visit(start);
        stack.push(start);

        while let Some(&top) = stack.last() {
            if *budget <= 0 {
                break;
            }
            let next = self.pick_fewest_free(top, rng, budget);
            match next {
                Some(w) => {
                    self.visit(w);
                    stack.push(w);
                }
                None => {
                    if stack.len() > best.len() {
                        best.truncate(shared);
                        best.extend_from_slice(&stack[shared..]);
                        shared = stack.len();
                    }
                    stack.pop();
                    shared = shared.min(stack.len());
                }
            }
        }
        if stack.len() > best.len() {
            best = stack;
        }
        best
    }

    fn visit(&mut self, v: Vertex) {
        self.visited[v as usize] = true;
        for &w in self.g.neighbors(v) {
            let fd = &mut self.free_degree[w as usize];
            *fd = fd.saturating_sub(1);
        }
    }

    /// Unvisited usable neighbour of `v` with the fewest unvisited
    /// neighbours; random among ties.
    fn pick_fewest_free(&self, v: Vertex, rng: &mut ChaCha8Rng, budget: &mut i64) -> Option<Vertex> {
        let nbrs = self.g.neighbors(v);
        *budget -= 1;
        let mut best = None;
        let mut best_fd = u32::MAX;
        let mut ties = 0u32;
        for &w in nbrs {
            if !self.usable(w) || self.visited[w as usize] {
                continue;
            }
            let fd = self.free_degree[w as usize];
            if fd < best_fd {
                best_fd = fd;
                best = Some(w);
                ties = 1;
            } else if fd == best_fd {
                ties += 1;
                if rng.gen_range(0..ties) == 0 {
                    best = Some(w);
                }
            }
        }
        best
    }

    fn rotate_extend(&mut self, mut path: Vec<Vertex>, rng: &mut ChaCha8Rng, budget: &mut i64) -> Vec<Vertex> {
        for (i, &v) in path.iter().enumerate() {
            self.pos[v as usize] = i as u32;
        }
        // Rotations without progress before switching ends / giving up.
        let patience = 64;
        let mut stale_ends = 0;
        while *budget > 0 && stale_ends < 2 {
            let before = path.len();
            self.extend_tail(&mut path, budget);
            let mut failures = 0;
            while *budget > 0 && failures < patience {
                if !self.rotate_tail(&mut path, rng, budget) {
                    break;
                }
                let len = path.len();
                self.extend_tail(&mut path, budget);
                if path.len() > len {
                    failures = 0;
                } else {
                    failures += 1;
                }
            }
            stale_ends = if path.len() > before { 0 } else { stale_ends + 1 };
            path.reverse();
            *budget -= path.len() as i64;
            for (i, &v) in path.iter().enumerate() {
                self.pos[v as usize] = i as u32;
            }
        }
        for &v in &path {
            self.pos[v as usize] = OFF_PATH;
        }
        path
    }

    /// Greedily extend the tail into off-path vertices, preferring the
    /// candidate with the fewest off-path neighbours.
    fn extend_tail(&mut self, path: &mut Vec<Vertex>, budget: &mut i64) {
        let g = self.g;
        while let Some(&tail) = path.last() {
            let mut pick = None;
            let mut pick_free = usize::MAX;
            for &w in g.neighbors(tail) {
                if !self.usable(w) || self.pos[w as usize] != OFF_PATH {
                    continue;
                }
                let free = g
                    .neighbors(w)
                    .iter()
                    .filter(|&&x| self.usable(x) && self.pos[x as usize] == OFF_PATH)
                    .count();
                if free < pick_free {
                    pick_free = free;
                    pick = Some(w);
                }
            }
            *budget -= 1;
            match pick {
                Some(w) => {
                    self.pos[w as usize] = path.len() as u32;
                    path.push(w);
                }
                None => break,
            }
        }
    }

    /// One Pósa rotation at the tail. Half of the time the pivot closest
    /// to the tail is used (cheap reversal), otherwise a random one.
    fn rotate_tail(&mut self, path: &mut [Vertex], rng: &mut ChaCha8Rng, budget: &mut i64) -> bool {
        let len = path.len();
        if len < 3 {
            return false;
        }
        let tail = path[len - 1];
        let pivots: Vec<usize> = self
            .g
            .neighbors(tail)
            .iter()
            .map(|&w| self.pos[w as usize])
            .filter(|&p| p != OFF_PATH && (p as usize) + 2 < len)
            .map(|p| p as usize)
            .collect();
        *budget -= 1;
        if pivots.is_empty() {
            return false;
        }
        let pivot = if rng.gen_bool(0.5) {
            *pivots.iter().max().unwrap()
        } else {
            *pivots.choose(rng).unwrap()
        };
        path[pivot + 1..].reverse();
        for (i, &v) in path.iter().enumerate().skip(pivot + 1) {
            self.pos[v as usize] = i as u32;
        }
        *budget -= (len - pivot) as i64;
        true
    }
}

/// Cut `path` into consecutive pieces of the requested sizes, starting at
/// its head. Vertices past the last piece are dropped.
pub fn segment_path(path: &VertexPath, piece_sizes: &[usize]) -> Result<Vec<VertexPath>> {
    let needed: usize = piece_sizes.iter().sum();
    if needed > path.len() {
        return Err(Error::Capacity {
            what: "path segmentation",
            needed,
            available: path.len(),
        });
    }
    let mut out = Vec::with_capacity(piece_sizes.len());
    let mut at = 0;
    for &size in piece_sizes {
        if size == 0 {
            return Err(Error::Domain("segment sizes must be positive".into()));
        }
        out.push(VertexPath::new(path.vertices[at..at + size].to_vec()));
        at += size;
    }
    Ok(out)
}
