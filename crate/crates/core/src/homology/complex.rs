//! Simplicial complexes given by minimal non-faces, and their reduced
//! homology over an exact field.

use std::collections::{HashMap, HashSet};

use crate::error::{input_err, Error, Result};
use crate::ideal::{minimal_masks, Var};
use crate::linalg::{rank, Field, SparseRow};

/// Reduced Betti numbers of a complex: `dims[s]` is the dimension of
/// reduced homology in degree `s - 1`, so index 0 holds degree `-1`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HomologyDims {
    dims: Vec<usize>,
}

impl HomologyDims {
    pub(crate) fn from_vec(mut dims: Vec<usize>) -> Self {
        while dims.last() == Some(&0) {
            dims.pop();
        }
        HomologyDims { dims }
    }

    /// The empty complex `{∅}`: one class in degree -1.
    pub(crate) fn empty_complex() -> Self {
        HomologyDims { dims: vec![1] }
    }

    pub fn acyclic() -> Self {
        HomologyDims::default()
    }

    /// Dimension in degree `degree` (which may be -1).
    pub fn degree(&self, degree: isize) -> usize {
        usize::try_from(degree + 1).ok().and_then(|i| self.dims.get(i)).copied().unwrap_or(0)
    }

    pub fn is_acyclic(&self) -> bool {
        self.dims.is_empty()
    }

    /// `(degree, dimension)` for every nonzero degree.
    pub fn nonzero(&self) -> impl Iterator<Item = (isize, usize)> + '_ {
        self.dims.iter().enumerate().filter(|(_, &h)| h > 0).map(|(s, &h)| (s as isize - 1, h))
    }

    pub(crate) fn by_face_size(&self) -> &[usize] {
        &self.dims
    }

    /// Homology of the join, by the Künneth formula over a field.
    pub(crate) fn join(&self, other: &HomologyDims) -> HomologyDims {
        if self.is_acyclic() || other.is_acyclic() {
            return HomologyDims::acyclic();
        }
        let mut out = vec![0; self.dims.len() + other.dims.len() - 1];
        for (a, &x) in self.dims.iter().enumerate() {
            for (b, &y) in other.dims.iter().enumerate() {
                out[a + b] += x * y;
            }
        }
        HomologyDims::from_vec(out)
    }
}

/// A simplicial complex on labelled vertices, stored as its minimal
/// non-faces. A vertex set is a face iff it contains no minimal non-face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    labels: Vec<Var>,
    nonfaces: Vec<u64>,
}

impl SimplicialComplex {
    pub fn from_minimal_nonfaces(labels: Vec<Var>, nonfaces: Vec<u64>) -> Result<Self> {
        if labels.len() > 64 {
            return Err(Error::Resource(format!("{} vertices exceeds the 64-vertex limit", labels.len())));
        }
        let ground = ground_mask(labels.len());
        if nonfaces.iter().any(|&m| m & !ground != 0) {
            return Err(input_err!("non-face mentions a vertex outside the complex"));
        }
        Ok(SimplicialComplex { labels, nonfaces: minimal_masks(nonfaces) })
    }

    pub fn labels(&self) -> &[Var] {
        &self.labels
    }

    pub fn num_vertices(&self) -> usize {
        self.labels.len()
    }

    pub fn minimal_nonfaces(&self) -> &[u64] {
        &self.nonfaces
    }

    pub fn is_void(&self) -> bool {
        self.nonfaces.contains(&0)
    }

    pub fn is_face(&self, mask: u64) -> bool {
        self.nonfaces.iter().all(|&n| n & mask != n)
    }

    /// Faces as bitmasks, in lexicographic order of their sorted vertex lists.
    pub fn faces(&self) -> Vec<u64> {
        if self.is_void() {
            return Vec::new();
        }
        enumerate_faces(ground_mask(self.num_vertices()), |m| self.is_face(m), usize::MAX)
            .expect("uncapped enumeration")
    }

    /// Largest face size minus one; `-1` for `{∅}`.
    pub fn dimension(&self) -> isize {
        self.faces().iter().map(|f| f.count_ones() as isize).max().unwrap_or(0) - 1
    }

    /// Restriction to the vertex set `mask`.
    pub fn restrict(&self, mask: u64) -> SimplicialComplex {
        SimplicialComplex {
            labels: self.labels.clone(),
            nonfaces: self
                .nonfaces
                .iter()
                .copied()
                .filter(|&n| n & mask == n)
                .chain((0..self.num_vertices()).filter(|v| mask >> v & 1 == 0).map(|v| 1u64 << v))
                .collect::<Vec<_>>()
                .pipe(minimal_masks),
        }
    }

    pub fn reduced_homology_dims(&self, field: Field, guard: usize) -> Result<HomologyDims> {
        if self.num_vertices() > guard {
            return Err(Error::Resource(format!(
                "complex on {} vertices exceeds the homology guard of {guard}",
                self.num_vertices()
            )));
        }
        // Vertices outside every face do not belong to the ground set.
        let ground = ground_mask(self.num_vertices())
            & !self.nonfaces.iter().filter(|n| n.count_ones() == 1).fold(0, |a, &n| a | n);
        let inside: Vec<u64> = self.nonfaces.iter().copied().filter(|&n| n & ground == n).collect();
        if self.is_void() {
            return Ok(HomologyDims::acyclic());
        }
        Ok(restricted_homology(&inside, ground, field))
    }
}

trait Pipe: Sized {
    fn pipe<T>(self, f: impl FnOnce(Self) -> T) -> T {
        f(self)
    }
}

impl<T> Pipe for T {}

pub(crate) fn ground_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Depth-first enumeration of a downward-closed family inside `ground`.
/// Returns `None` once more than `cap` faces have been found.
pub(crate) fn enumerate_faces(ground: u64, is_face: impl Fn(u64) -> bool, cap: usize) -> Option<Vec<u64>> {
    let verts: Vec<u32> = (0..64).filter(|v| ground >> v & 1 == 1).collect();
    let mut out = Vec::new();
    if !is_face(0) {
        return Some(out);
    }
    out.push(0);
    let mut stack: Vec<(u64, usize)> = vec![(0, 0)];
    // Preorder with children visited in increasing vertex order.
    while let Some((face, next)) = stack.pop() {
        if next >= verts.len() {
            continue;
        }
        stack.push((face, next + 1));
        let child = face | 1u64 << verts[next];
        if is_face(child) {
            out.push(child);
            if out.len() > cap {
                return None;
            }
            stack.push((child, next + 1));
        }
    }
    Some(out)
}

/// Reduced homology from an explicit, downward-closed face list.
///
/// For a vertex `v`, `Δ` is `del(v)` with a cone glued along `link(v)`, so
/// `H̃(Δ) ≅ H(del v, link v)`. The relative chain complex has one cell per
/// face `F` with `v ∉ F` and `F ∪ {v} ∉ Δ`; taking `v` with the largest
/// star keeps the matrices small.
pub(crate) fn homology_from_faces(faces: &[u64], field: Field) -> HomologyDims {
    let all: HashSet<u64> = faces.iter().copied().collect();
    // Pick the vertex whose star is largest.
    let mut star = [0usize; 64];
    for &f in faces {
        let mut bits = f;
        while bits != 0 {
            star[bits.trailing_zeros() as usize] += 1;
            bits &= bits - 1;
        }
    }
    let cells: Vec<u64> = match (0..64).max_by_key(|&v| (star[v], std::cmp::Reverse(v))).filter(|&v| star[v] > 0) {
        // Only the empty face (or nothing at all).
        None => faces.to_vec(),
        Some(v) => {
            let bit = 1u64 << v;
            faces.iter().copied().filter(|&f| f & bit == 0 && !all.contains(&(f | bit))).collect()
        }
    };
    let top = cells.iter().map(|f| f.count_ones() as usize).max().unwrap_or(0);
    let mut by_size: Vec<Vec<u64>> = vec![Vec::new(); top + 1];
    for &f in &cells {
        by_size[f.count_ones() as usize].push(f);
    }
    let index: Vec<HashMap<u64, usize>> =
        by_size.iter().map(|fs| fs.iter().enumerate().map(|(i, &f)| (f, i)).collect()).collect();
    // ranks[s] = rank of the boundary from cells of size s to size s - 1
    let mut ranks = vec![0usize; top + 2];
    for s in 1..=top {
        let rows: Vec<SparseRow> = by_size[s]
            .iter()
            .map(|&f| {
                let mut row: SparseRow = Vec::with_capacity(s);
                let mut bits = f;
                let mut pos = 0;
                while bits != 0 {
                    let low = bits & bits.wrapping_neg();
                    bits &= bits - 1;
                    // boundary faces inside the link are zero in the quotient
                    if let Some(&col) = index[s - 1].get(&(f & !low)) {
                        row.push((col, if pos % 2 == 0 { 1 } else { -1 }));
                    }
                    pos += 1;
                }
                row.sort_unstable_by_key(|e| e.0);
                row
            })
            .collect();
        ranks[s] = rank(&rows, field);
    }
    let dims = (0..=top).map(|s| by_size[s].len() - ranks[s] - ranks[s + 1]).collect();
    HomologyDims::from_vec(dims)
}

/// Reduced homology of the complex on `ground` whose minimal non-faces are
/// `nonfaces` (each a nonempty subset of `ground`).
///
/// The smallest of three face lists is built explicitly: the complex, its
/// Alexander dual `Δ^∨` inside `ground`, or the nerve of the facets of
/// `Δ^∨` (which are the complements of the non-faces). The nerve is
/// homotopy equivalent to `Δ^∨`, and `H_i(Δ) ≅ H^{N-i-3}(Δ^∨)` converts back.
pub(crate) fn restricted_homology(nonfaces: &[u64], ground: u64, field: Field) -> HomologyDims {
    let n = ground.count_ones() as usize;
    if nonfaces.is_empty() {
        // Full simplex: a cone unless the ground set is empty.
        return if n == 0 { HomologyDims::empty_complex() } else { HomologyDims::acyclic() };
    }
    debug_assert!(nonfaces.iter().all(|&m| m != 0 && m & ground == m));
    if nonfaces.iter().fold(0, |acc, &m| acc | m) != ground {
        // a vertex in no non-face is a cone point
        return HomologyDims::acyclic();
    }
    if let [single] = nonfaces {
        // the boundary of the simplex on `ground`
        debug_assert_eq!(*single, ground);
        let mut dims = vec![0; n];
        dims[n - 1] = 1;
        return HomologyDims::from_vec(dims);
    }
    let m = nonfaces.len();
    // Face counts are unknown in advance, so all three enumerations run
    // under a shared cap that grows until one of them completes.
    let mut cap = 1usize << 10;
    loop {
        // With two or more minimal non-faces none equals `ground`, so every
        // facet of the dual is nonempty and the nerve is well defined.
        let dual_faces = enumerate_faces(ground_mask(m), |j| union_of(nonfaces, j) != ground, cap)
            .or_else(|| enumerate_faces(ground, |c| nonfaces.iter().any(|&g| g & c == 0), cap));
        if let Some(faces) = dual_faces {
            let dual_dims = homology_from_faces(&faces, field);
            // dims_Δ[s] = dims_dual[n - s - 1]
            let dims = (0..n).map(|s| dual_dims.by_face_size().get(n - s - 1).copied().unwrap_or(0)).collect();
            return HomologyDims::from_vec(dims);
        }
        if let Some(faces) = enumerate_faces(ground, |f| nonfaces.iter().all(|&g| g & f != g), cap) {
            return homology_from_faces(&faces, field);
        }
        cap = cap.saturating_mul(4);
    }
}

fn union_of(sets: &[u64], selection: u64) -> u64 {
    let mut acc = 0;
    let mut bits = selection;
    while bits != 0 {
        acc |= sets[bits.trailing_zeros() as usize];
        bits &= bits - 1;
    }
    acc
}
