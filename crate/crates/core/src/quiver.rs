//! Symmetric quivers: the data model, the JSON file format, the Euler form,
//! and the linking/unlinking transforms.

use std::fmt;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::multidegree::Multidegree;

/// A symmetric quiver: ordered vertex labels and a symmetric matrix of arrow
/// counts `m_{i,j}` (loops on the diagonal).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Quiver {
    vertices: Vec<String>,
    matrix: Vec<Vec<u32>>,
}

impl Quiver {
    pub fn new(vertices: Vec<String>, matrix: Vec<Vec<u32>>) -> Result<Self> {
        let n = vertices.len();
        for (i, v) in vertices.iter().enumerate() {
            if vertices[..i].contains(v) {
                return Err(Error::InvalidQuiver {
                    location: format!("vertices[{i}]"),
                    message: format!("duplicate label `{v}`"),
                });
            }
        }
        if matrix.len() != n {
            return Err(Error::InvalidQuiver {
                location: "matrix".into(),
                message: format!("expected {n} rows, found {}", matrix.len()),
            });
        }
        for (i, row) in matrix.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidQuiver {
                    location: format!("matrix[{i}]"),
                    message: format!("expected {n} entries, found {}", row.len()),
                });
            }
        }
        for i in 0..n {
            for j in 0..i {
                if matrix[i][j] != matrix[j][i] {
                    return Err(Error::InvalidQuiver {
                        location: format!("matrix[{i}][{j}]"),
                        message: format!("not symmetric: {} != matrix[{j}][{i}] = {}", matrix[i][j], matrix[j][i]),
                    });
                }
            }
        }
        Ok(Quiver { vertices, matrix })
    }

    /// Convenience constructor from string slices and a row-major matrix.
    pub fn from_rows(labels: &[&str], rows: &[&[u32]]) -> Result<Self> {
        Self::new(labels.iter().map(|s| s.to_string()).collect(), rows.iter().map(|r| r.to_vec()).collect())
    }

    /// The quiver with no vertices.
    pub fn empty() -> Self {
        Quiver { vertices: Vec::new(), matrix: Vec::new() }
    }

    pub fn one_vertex(label: &str, loops: u32) -> Self {
        Quiver { vertices: vec![label.to_string()], matrix: vec![vec![loops]] }
    }

    /// Parses the `{"vertices": [...], "matrix": [[...], ...]}` format,
    /// naming the offending entry on failure.
    pub fn from_json_str(text: &str) -> Result<Self> {
        let invalid =
            |location: &str, message: String| Error::InvalidQuiver { location: location.to_string(), message };
        let value: Value =
            serde_json::from_str(text).map_err(|e| invalid("document", format!("malformed JSON: {e}")))?;
        let obj = value.as_object().ok_or_else(|| invalid("document", "expected a JSON object".into()))?;
        for key in obj.keys() {
            if key != "vertices" && key != "matrix" {
                return Err(invalid(key, "unexpected field".into()));
            }
        }
        let verts = obj
            .get("vertices")
            .ok_or_else(|| invalid("vertices", "missing field".into()))?
            .as_array()
            .ok_or_else(|| invalid("vertices", "expected an array of strings".into()))?;
        let mut vertices = Vec::with_capacity(verts.len());
        for (i, v) in verts.iter().enumerate() {
            let s = v.as_str().ok_or_else(|| invalid(&format!("vertices[{i}]"), "expected a string".into()))?;
            vertices.push(s.to_string());
        }
        let rows = obj
            .get("matrix")
            .ok_or_else(|| invalid("matrix", "missing field".into()))?
            .as_array()
            .ok_or_else(|| invalid("matrix", "expected an array of rows".into()))?;
        let mut matrix = Vec::with_capacity(rows.len());
        for (i, row) in rows.iter().enumerate() {
            let entries = row.as_array().ok_or_else(|| invalid(&format!("matrix[{i}]"), "expected an array".into()))?;
            let mut out = Vec::with_capacity(entries.len());
            for (j, x) in entries.iter().enumerate() {
                let loc = format!("matrix[{i}][{j}]");
                let n = x.as_i64().ok_or_else(|| invalid(&loc, format!("expected an integer, found {x}")))?;
                if n < 0 {
                    return Err(invalid(&loc, format!("negative arrow count {n}")));
                }
                let n = u32::try_from(n).map_err(|_| invalid(&loc, format!("arrow count {n} too large")))?;
                out.push(n);
            }
            matrix.push(out);
        }
        Self::new(vertices, matrix)
    }

    pub fn to_json_string(&self) -> String {
        // field order is part of the file format
        let mut s = serde_json::to_string(self).expect("quiver serializes");
        s.push('\n');
        s
    }

    pub fn load(path: impl AsRef<Path>) -> std::io::Result<Result<Self>> {
        let text = std::fs::read_to_string(path)?;
        Ok(Self::from_json_str(&text))
    }

    pub fn save(&self, path: impl AsRef<Path>) -> std::io::Result<()> {
        std::fs::write(path, self.to_json_string())
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn matrix(&self) -> &[Vec<u32>] {
        &self.matrix
    }

    pub fn m(&self, i: usize, j: usize) -> u32 {
        self.matrix[i][j]
    }

    pub fn loops(&self, i: usize) -> u32 {
        self.matrix[i][i]
    }

    pub fn max_loop(&self) -> u32 {
        (0..self.len()).map(|i| self.loops(i)).max().unwrap_or(0)
    }

    /// Largest arrow count between any two vertices, loops included.
    pub fn max_entry(&self) -> u32 {
        self.matrix.iter().flatten().copied().max().unwrap_or(0)
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.vertices.iter().position(|v| v == label).ok_or_else(|| Error::UnknownVertex(label.to_string()))
    }

    /// No arrows between distinct vertices.
    pub fn is_diagonal(&self) -> bool {
        (0..self.len()).all(|i| (0..self.len()).all(|j| i == j || self.matrix[i][j] == 0))
    }

    /// Disjoint union, with `other`'s vertices appended.
    pub fn disjoint_union(&self, other: &Quiver) -> Result<Quiver> {
        let n = self.len();
        let total = n + other.len();
        let mut vertices = self.vertices.clone();
        vertices.extend(other.vertices.iter().cloned());
        let mut matrix = vec![vec![0; total]; total];
        for i in 0..n {
            matrix[i][..n].copy_from_slice(&self.matrix[i]);
        }
        for i in 0..other.len() {
            matrix[n + i][n..].copy_from_slice(&other.matrix[i]);
        }
        Quiver::new(vertices, matrix)
    }

    /// Euler form `χ(d, e) = Σ_i d_i e_i − Σ_{i,j} m_{i,j} d_i e_j`.
    pub fn euler_form(&self, d: &Multidegree, e: &Multidegree) -> Result<i64> {
        for x in [d, e] {
            if x.len() != self.len() {
                return Err(Error::LengthMismatch { expected: self.len(), got: x.len() });
            }
        }
        let (d, e) = (d.entries(), e.entries());
        let mut chi: i64 = d.iter().zip(e).map(|(&a, &b)| a as i64 * b as i64).sum();
        for i in 0..self.len() {
            for j in 0..self.len() {
                chi -= self.matrix[i][j] as i64 * d[i] as i64 * e[j] as i64;
            }
        }
        Ok(chi)
    }

    fn pair(&self, a: &str, b: &str) -> Result<(usize, usize)> {
        let i = self.index_of(a)?;
        let j = self.index_of(b)?;
        if i == j {
            return Err(Error::SameVertex(a.to_string()));
        }
        Ok((i, j))
    }

    /// `"<a><sep><b>#<k>"` with the smallest `k ≥ 1` not already in use.
    pub fn fresh_label(&self, a: &str, b: &str, sep: char) -> String {
        (1..).map(|k| format!("{a}{sep}{b}#{k}")).find(|l| !self.vertices.contains(l)).expect("unbounded counter")
    }

    /// Links `a` and `b`, appending a new vertex `⋄`.
    pub fn link(&self, a: &str, b: &str) -> Result<Quiver> {
        let (i, j) = self.pair(a, b)?;
        let label = self.fresh_label(a, b, '+');
        Ok(self.link_at(i, j, label))
    }

    /// Unlinks `a` and `b` (requires `m_{a,b} ≥ 1`), appending `★`.
    pub fn unlink(&self, a: &str, b: &str) -> Result<Quiver> {
        let (i, j) = self.pair(a, b)?;
        if self.matrix[i][j] == 0 {
            return Err(Error::UnlinkRequiresEdge { a: a.to_string(), b: b.to_string() });
        }
        let label = self.fresh_label(a, b, '*');
        Ok(self.unlink_at(i, j, label))
    }

    fn grown(&self) -> Vec<Vec<u32>> {
        let n = self.len();
        let mut matrix: Vec<Vec<u32>> = self
            .matrix
            .iter()
            .map(|row| {
                let mut r = row.clone();
                r.push(0);
                r
            })
            .collect();
        matrix.push(vec![0; n + 1]);
        matrix
    }

    /// Index-level linking; the caller guarantees `a != b`.
    pub fn link_at(&self, a: usize, b: usize, label: String) -> Quiver {
        let n = self.len();
        let m = &self.matrix;
        let mut out = self.grown();
        for i in 0..n {
            let x = m[i][a] + m[i][b];
            out[i][n] = x;
            out[n][i] = x;
        }
        out[n][n] = m[a][a] + m[b][b] + 2 * m[a][b];
        out[a][b] += 1;
        out[b][a] += 1;
        let mut vertices = self.vertices.clone();
        vertices.push(label);
        Quiver { vertices, matrix: out }
    }

    /// Index-level unlinking; the caller guarantees `a != b` and
    /// `m_{a,b} ≥ 1`.
    pub fn unlink_at(&self, a: usize, b: usize, label: String) -> Quiver {
        let n = self.len();
        let m = &self.matrix;
        let mab = m[a][b];
        debug_assert!(a != b && mab >= 1);
        let mut out = self.grown();
        for i in 0..n {
            let x = if i == a {
                m[a][a] + mab - 1
            } else if i == b {
                m[b][b] + mab - 1
            } else {
                m[i][a] + m[i][b]
            };
            out[i][n] = x;
            out[n][i] = x;
        }
        out[n][n] = m[a][a] + m[b][b] + 2 * mab - 1;
        out[a][b] -= 1;
        out[b][a] -= 1;
        let mut vertices = self.vertices.clone();
        vertices.push(label);
        Quiver { vertices, matrix: out }
    }

    /// Drops every arrow between distinct vertices.
    pub fn forget_off_diagonal(&self) -> Quiver {
        let n = self.len();
        let matrix = (0..n).map(|i| (0..n).map(|j| if i == j { self.matrix[i][i] } else { 0 }).collect()).collect();
        Quiver { vertices: self.vertices.clone(), matrix }
    }
}

impl fmt::Display for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "vertices: {}", self.vertices.join(" "))?;
        for (v, row) in self.vertices.iter().zip(&self.matrix) {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(f, "  {v}: [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Small quivers used throughout the tests, benches and acceptance suite.
pub mod fleet {
    use super::Quiver;

    /// Two loopless vertices joined by one edge in each direction.
    pub fn doubled_a2() -> Quiver {
        Quiver::from_rows(&["a", "b"], &[&[0, 1], &[1, 0]]).unwrap()
    }

    pub fn two_vertex(m_aa: u32, m_bb: u32, m_ab: u32) -> Quiver {
        Quiver::from_rows(&["a", "b"], &[&[m_aa, m_ab], &[m_ab, m_bb]]).unwrap()
    }

    /// The loopless two-vertex quiver with `m_ab = 2`.
    pub fn double_edge() -> Quiver {
        two_vertex(0, 0, 2)
    }

    pub fn one_loop(m: u32) -> Quiver {
        Quiver::one_vertex("a", m)
    }

    /// Three vertices with a mix of even and odd loop counts.
    pub fn mixed_three() -> Quiver {
        Quiver::from_rows(&["a", "b", "c"], &[&[1, 1, 1], &[1, 0, 2], &[1, 2, 2]]).unwrap()
    }
}
