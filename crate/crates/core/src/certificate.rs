//! Complete-minor certificates and their text format.
//!
//! ```text
//! <order> <n>
//! <sorted vertex ids of branch set 0>
//! <sorted vertex ids of branch set 1>
//! ...
//! ```

use std::fmt::Write as _;
use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Vertex;

/// Disjoint connected vertex sets claimed to be pairwise adjacent: a
/// witness for a `K_order` minor of a graph on `vertex_count` vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorCertificate {
    pub vertex_count: usize,
    pub order: usize,
    pub branch_sets: Vec<Vec<Vertex>>,
}

impl MinorCertificate {
    /// Sorts every branch set; `order` is the number of sets.
    pub fn new(vertex_count: usize, mut branch_sets: Vec<Vec<Vertex>>) -> Self {
        for set in &mut branch_sets {
            set.sort_unstable();
        }
        Self {
            vertex_count,
            order: branch_sets.len(),
            branch_sets,
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{} {}", self.order, self.vertex_count).unwrap();
        for set in &self.branch_sets {
            let line: Vec<String> = set.iter().map(|v| v.to_string()).collect();
            writeln!(out, "{}", line.join(" ")).unwrap();
        }
        out
    }

    pub fn write<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        out.write_all(self.to_text().as_bytes())
    }

    /// Parse the text format. Structural checks (disjointness, adjacency)
    /// are left to the verifier; only the declared order is enforced here.
    pub fn read<R: BufRead>(input: R) -> Result<Self> {
        let mut lines = input.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("missing `order n` header".into()))??;
        let mut fields = header.split_whitespace();
        let parse = |f: Option<&str>, name: &str| -> Result<usize> {
            f.ok_or_else(|| Error::Parse(format!("missing `{name}`")))?
                .parse()
                .map_err(|_| Error::Parse(format!("invalid `{name}`")))
        };
        let order = parse(fields.next(), "order")?;
        let vertex_count = parse(fields.next(), "n")?;
        let mut branch_sets = Vec::with_capacity(order);
        for line in lines {
            let line = line?;
            if branch_sets.len() == order && line.trim().is_empty() {
                continue;
            }
            let set = line
                .split_whitespace()
                .map(|tok| tok.parse::<Vertex>().map_err(|_| Error::Parse(format!("invalid vertex `{tok}`"))))
                .collect::<Result<Vec<_>>>()?;
            branch_sets.push(set);
        }
        if branch_sets.len() != order {
            return Err(Error::Parse(format!(
                "header declares {order} branch sets, found {}",
                branch_sets.len()
            )));
        }
        Ok(Self {
            vertex_count,
            order,
            branch_sets,
        })
    }
}
