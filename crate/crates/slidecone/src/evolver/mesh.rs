//! Triangle meshes whose vertices carry sliding-boundary tags, and their
//! plain-text serialisation.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::v3::{self, V3};

/// Smallest admissible triangle area.
pub const MIN_TRIANGLE_AREA: f64 = 1e-14;

/// Sliding tag of a mesh vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Tag {
    /// Moves freely in the closed upper half-space.
    Free,
    /// Lies on Γ and may only slide within it.
    OnGamma,
    /// Fixed in place (window boundary).
    Pinned,
}

impl Tag {
    pub fn letter(self) -> char {
        match self {
            Tag::Free => 'F',
            Tag::OnGamma => 'G',
            Tag::Pinned => 'P',
        }
    }

    pub fn from_letter(c: &str) -> Option<Tag> {
        match c {
            "F" => Some(Tag::Free),
            "G" => Some(Tag::OnGamma),
            "P" => Some(Tag::Pinned),
            _ => None,
        }
    }
}

/// Triangle mesh in ℝ³ with per-vertex sliding tags.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaggedMesh {
    pub vertices: Vec<V3>,
    pub tags: Vec<Tag>,
    pub triangles: Vec<[usize; 3]>,
}

impl TaggedMesh {
    pub fn new(vertices: Vec<V3>, tags: Vec<Tag>, triangles: Vec<[usize; 3]>) -> Result<Self> {
        let m = Self { vertices, tags, triangles };
        m.validate()?;
        Ok(m)
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_triangles(&self) -> usize {
        self.triangles.len()
    }

    /// Check tags, the half-space constraint and triangle non-degeneracy.
    pub fn validate(&self) -> Result<()> {
        if self.vertices.len() != self.tags.len() {
            return Err(Error::Structural("vertex and tag counts differ".into()));
        }
        for (i, (p, t)) in self.vertices.iter().zip(&self.tags).enumerate() {
            if p.iter().any(|c| !c.is_finite()) {
                return Err(Error::Structural(format!("vertex {i} is not finite")));
            }
            if p[2] < 0.0 {
                return Err(Error::Structural(format!("vertex {i} lies below the boundary plane")));
            }
            if *t == Tag::OnGamma && p[2] != 0.0 {
                return Err(Error::Structural(format!("boundary vertex {i} has non-zero height")));
            }
        }
        for (k, t) in self.triangles.iter().enumerate() {
            if t.iter().any(|&i| i >= self.vertices.len()) {
                return Err(Error::Index(format!("triangle {k} references a missing vertex")));
            }
            let a = self.triangle_area(k);
            if !(a > MIN_TRIANGLE_AREA) {
                return Err(Error::DegenerateTriangle { index: k, area: a });
            }
        }
        Ok(())
    }

    pub fn corners(&self, k: usize) -> [V3; 3] {
        let t = self.triangles[k];
        [self.vertices[t[0]], self.vertices[t[1]], self.vertices[t[2]]]
    }

    pub fn triangle_area(&self, k: usize) -> f64 {
        let [a, b, c] = self.corners(k);
        v3::tri_area(a, b, c)
    }

    /// Whether vertex `i` counts as lying on Γ for the energy split: tagged
    /// ON_GAMMA, or PINNED at height exactly zero (window rim points on Γ).
    pub fn vertex_on_gamma(&self, i: usize) -> bool {
        match self.tags[i] {
            Tag::OnGamma => true,
            Tag::Pinned => self.vertices[i][2] == 0.0,
            Tag::Free => false,
        }
    }

    /// A triangle is weighted by α iff its three vertices lie on Γ.
    pub fn triangle_on_gamma(&self, k: usize) -> bool {
        self.triangles[k].iter().all(|&i| self.vertex_on_gamma(i))
    }

    /// Dilate every vertex by `t` about the origin.
    pub fn scaled(&self, t: f64) -> Self {
        Self { vertices: self.vertices.iter().map(|p| v3::scale(*p, t)).collect(), tags: self.tags.clone(), triangles: self.triangles.clone() }
    }

    /// Number of triangles incident to each undirected edge.
    pub fn edge_valence(&self) -> HashMap<(usize, usize), usize> {
        let mut m = HashMap::new();
        for t in &self.triangles {
            for (a, b) in [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])] {
                *m.entry((a.min(b), a.max(b))).or_insert(0) += 1;
            }
        }
        m
    }

    /// Sorted neighbour lists.
    pub fn neighbours(&self) -> Vec<Vec<usize>> {
        let mut n = vec![Vec::new(); self.vertices.len()];
        for t in &self.triangles {
            for (a, b) in [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])] {
                n[a].push(b);
                n[b].push(a);
            }
        }
        for l in &mut n {
            l.sort_unstable();
            l.dedup();
        }
        n
    }

    /// Number of connected components of the triangle adjacency graph
    /// (triangles sharing an edge).
    pub fn sheet_components(&self, triangles: &[usize]) -> usize {
        let mut edge_to: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for &k in triangles {
            let t = self.triangles[k];
            for (a, b) in [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])] {
                edge_to.entry((a.min(b), a.max(b))).or_default().push(k);
            }
        }
        let mut seen = std::collections::BTreeSet::new();
        let mut comps = 0;
        for &k in triangles {
            if !seen.insert(k) {
                continue;
            }
            comps += 1;
            let mut stack = vec![k];
            while let Some(c) = stack.pop() {
                let t = self.triangles[c];
                for (a, b) in [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])] {
                    for &o in &edge_to[&(a.min(b), a.max(b))] {
                        if seen.insert(o) {
                            stack.push(o);
                        }
                    }
                }
            }
        }
        comps
    }

    /// Serialise in the `TMESH` text format.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "TMESH {} {}", self.vertices.len(), self.triangles.len());
        for (p, t) in self.vertices.iter().zip(&self.tags) {
            let _ = writeln!(s, "v {} {} {} {}", fmt17(p[0]), fmt17(p[1]), fmt17(p[2]), t.letter());
        }
        for t in &self.triangles {
            let _ = writeln!(s, "t {} {} {}", t[0], t[1], t[2]);
        }
        s
    }

    /// Parse the `TMESH` text format.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (hl, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "empty input".into() })?;
        let h: Vec<&str> = header.split_whitespace().collect();
        if h.len() != 3 || h[0] != "TMESH" {
            return Err(Error::Parse { line: hl + 1, msg: "expected `TMESH <nv> <nt>`".into() });
        }
        let parse_usize = |s: &str, line: usize| s.parse::<usize>().map_err(|e| Error::Parse { line, msg: e.to_string() });
        let nv = parse_usize(h[1], hl + 1)?;
        let nt = parse_usize(h[2], hl + 1)?;
        let mut vertices = Vec::with_capacity(nv);
        let mut tags = Vec::with_capacity(nv);
        let mut triangles = Vec::with_capacity(nt);
        for (ln, l) in lines {
            let f: Vec<&str> = l.split_whitespace().collect();
            let line = ln + 1;
            match f.first().copied() {
                Some("v") if f.len() == 5 => {
                    let mut p = [0.0; 3];
                    for k in 0..3 {
                        p[k] = f[k + 1].parse::<f64>().map_err(|e| Error::Parse { line, msg: e.to_string() })?;
                    }
                    let tag = Tag::from_letter(f[4]).ok_or(Error::Parse { line, msg: format!("bad tag {}", f[4]) })?;
                    vertices.push(p);
                    tags.push(tag);
                }
                Some("t") if f.len() == 4 => {
                    triangles.push([parse_usize(f[1], line)?, parse_usize(f[2], line)?, parse_usize(f[3], line)?]);
                }
                _ => return Err(Error::Parse { line, msg: format!("unrecognised line `{l}`") }),
            }
        }
        if vertices.len() != nv || triangles.len() != nt {
            return Err(Error::Parse { line: hl + 1, msg: "counts do not match the header".into() });
        }
        TaggedMesh::new(vertices, tags, triangles)
    }
}

/// Format a float with 17 significant digits.
pub fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}
