//! Quiver descriptions: JSON input format, validation, the Euler form, and
//! path enumeration (used to build the indecomposable projectives).
//!
//! Only finite acyclic quivers are supported; a cycle makes the path algebra
//! infinite-dimensional and is rejected as out of scope.

use serde::{Deserialize, Serialize};

use crate::{fnv1a64, Error, Result};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ArrowSpec {
    pub from: String,
    pub to: String,
    #[serde(default)]
    pub label: Option<String>,
}

/// The on-disk quiver format.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QuiverSpec {
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowSpec>,
}

/// An arrow between vertex indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub from: usize,
    pub to: usize,
    pub label: String,
}

/// A validated acyclic quiver.  Vertices are referred to by index in the
/// order given in the input file.
#[derive(Debug, Clone)]
pub struct Quiver {
    pub vertex_labels: Vec<String>,
    pub arrows: Vec<Arrow>,
    /// Vertex indices in a topological order (sources first).
    pub topo_order: Vec<usize>,
}

/// A directed path in the quiver: a start vertex and a sequence of arrow
/// indices, consecutive arrows composing head-to-tail.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    pub start: usize,
    pub end: usize,
    pub arrows: Vec<usize>,
}

impl Quiver {
    pub fn from_spec(spec: &QuiverSpec) -> Result<Quiver> {
        if spec.vertices.is_empty() {
            return Err(Error::QuiverFormat("no vertices".into()));
        }
        let mut index = std::collections::HashMap::new();
        for (i, v) in spec.vertices.iter().enumerate() {
            if index.insert(v.clone(), i).is_some() {
                return Err(Error::QuiverFormat(format!("duplicate vertex label {v:?}")));
            }
        }
        let mut arrows = Vec::new();
        let mut labels_seen = std::collections::HashSet::new();
        for (k, a) in spec.arrows.iter().enumerate() {
            let from = *index
                .get(&a.from)
                .ok_or_else(|| Error::QuiverFormat(format!("unknown vertex {:?}", a.from)))?;
            let to = *index
                .get(&a.to)
                .ok_or_else(|| Error::QuiverFormat(format!("unknown vertex {:?}", a.to)))?;
            let label = a.label.clone().unwrap_or_else(|| format!("a{k}"));
            if !labels_seen.insert(label.clone()) {
                return Err(Error::QuiverFormat(format!(
                    "duplicate arrow label {label:?}"
                )));
            }
            arrows.push(Arrow { from, to, label });
        }
        let topo_order = topo_sort(spec.vertices.len(), &arrows)?;
        Ok(Quiver {
            vertex_labels: spec.vertices.clone(),
            arrows,
            topo_order,
        })
    }

    pub fn from_json(json: &str) -> Result<Quiver> {
        let spec: QuiverSpec = serde_json::from_str(json)
            .map_err(|e| Error::QuiverFormat(format!("invalid JSON: {e}")))?;
        Quiver::from_spec(&spec)
    }

    pub fn num_vertices(&self) -> usize {
        self.vertex_labels.len()
    }

    /// Euler form `<d, e> = sum_i d_i e_i - sum_{a: i -> j} d_i e_j`.
    pub fn euler_form(&self, d: &[i64], e: &[i64]) -> i64 {
        assert_eq!(d.len(), self.num_vertices());
        assert_eq!(e.len(), self.num_vertices());
        let mut s: i64 = d.iter().zip(e).map(|(a, b)| a * b).sum();
        for a in &self.arrows {
            s -= d[a.from] * e[a.to];
        }
        s
    }

    /// Symmetrized Euler form `(d, e) = <d, e> + <e, d>`.
    pub fn sym_form(&self, d: &[i64], e: &[i64]) -> i64 {
        self.euler_form(d, e) + self.euler_form(e, d)
    }

    /// All directed paths, including the trivial path at each vertex.
    /// Finite because the quiver is acyclic.
    pub fn all_paths(&self) -> Vec<Path> {
        let mut paths: Vec<Path> = (0..self.num_vertices())
            .map(|v| Path {
                start: v,
                end: v,
                arrows: vec![],
            })
            .collect();
        let mut frontier = paths.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for p in &frontier {
                for (ai, a) in self.arrows.iter().enumerate() {
                    if a.from == p.end {
                        let mut arrows = p.arrows.clone();
                        arrows.push(ai);
                        next.push(Path {
                            start: p.start,
                            end: a.to,
                            arrows,
                        });
                    }
                }
            }
            paths.extend(next.iter().cloned());
            frontier = next;
        }
        paths
    }

    /// Stable fingerprint for cache keys: depends on the vertex order and
    /// the sorted arrow list.
    pub fn fingerprint(&self) -> u64 {
        let mut bytes = Vec::new();
        for v in &self.vertex_labels {
            bytes.extend(v.as_bytes());
            bytes.push(0);
        }
        bytes.push(1);
        let mut arr: Vec<(usize, usize, &str)> = self
            .arrows
            .iter()
            .map(|a| (a.from, a.to, a.label.as_str()))
            .collect();
        arr.sort();
        for (f, t, l) in arr {
            bytes.extend(f.to_le_bytes());
            bytes.extend(t.to_le_bytes());
            bytes.extend(l.as_bytes());
            bytes.push(0);
        }
        fnv1a64(&bytes)
    }
}

fn topo_sort(n: usize, arrows: &[Arrow]) -> Result<Vec<usize>> {
    let mut indeg = vec![0usize; n];
    for a in arrows {
        indeg[a.to] += 1;
    }
    let mut queue: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(v) = queue.pop() {
        order.push(v);
        for a in arrows {
            if a.from == v {
                indeg[a.to] -= 1;
                if indeg[a.to] == 0 {
                    queue.push(a.to);
                }
            }
        }
    }
    if order.len() < n {
        return Err(Error::OutOfScope("quiver has an oriented cycle".into()));
    }
    Ok(order)
}

/// Dimension vectors use u32 entries; forms work on i64 to allow differences.
pub fn dims_to_i64(d: &[u32]) -> Vec<i64> {
    d.iter().map(|&x| x as i64).collect()
}

/// Componentwise sum of dimension vectors.
pub fn dim_add(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(&x, &y)| x + y).collect()
}

/// Componentwise difference as i64 (may be negative).
pub fn dim_sub_i64(a: &[u32], b: &[u32]) -> Vec<i64> {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| x as i64 - y as i64)
        .collect()
}

/// All dimension vectors `0 <= d <= max` componentwise, in lexicographic
/// order.
pub fn dim_vectors_up_to(max: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for &m in max {
        let mut next = Vec::new();
        for prefix in &out {
            for x in 0..=m {
                let mut v = prefix.clone();
                v.push(x);
                next.push(v);
            }
        }
        out = next;
    }
    out
}
