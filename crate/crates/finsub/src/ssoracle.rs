//! Independent verification path: the finite-subset-space functor on
//! simplicial sets, normalized chains, and homology.
//!
//! For a simplicial set K, Exp_j(K) has as n-simplices the subsets of size at
//! most j of K_n, with faces and degeneracies acting elementwise. Simplices of
//! K are handled in Eilenberg–Zilber normal form (nondegenerate simplex,
//! monotone surjection); a subset is degenerate exactly when its members share
//! a degeneracy direction. Normalized chains then give homology, cross-checked
//! against the lexicographic cell complexes on triangulated S², T² and RP².

use crate::intalg::{self, AbelianGroup, IntegerMatrix};
use crate::lexcell;
use crate::partitions::binomial_u64;
use crate::surface::{self, SurfaceSpec};
use crate::symring;
use crate::{Error, Result};
use num_bigint::BigInt;
use std::collections::{BTreeMap, BTreeSet, HashMap};

/// Default candidate-subset ceiling for the enumeration.
pub const DEFAULT_CEILING: u64 = 50_000_000;

/// A simplex of K_n in normal form: a nondegenerate base simplex of dimension
/// `dim` together with a monotone surjection recorded as the set of repeated
/// positions (`mask` bit p set means levels p and p+1 agree). The ambient
/// dimension is `dim + popcount(mask)` and is tracked by the caller.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Element {
    pub dim: u8,
    pub idx: u32,
    pub mask: u32,
}

impl Element {
    pub fn nondeg(dim: usize, idx: usize) -> Self {
        Element { dim: dim as u8, idx: idx as u32, mask: 0 }
    }
}

fn levels(mask: u32, ambient: usize) -> Vec<u8> {
    let mut f = Vec::with_capacity(ambient + 1);
    f.push(0u8);
    for p in 0..ambient {
        let step = u8::from(mask >> p & 1 == 0);
        f.push(f[p] + step);
    }
    f
}

fn mask_of_levels(f: &[u8]) -> u32 {
    let mut mask = 0;
    for p in 0..f.len().saturating_sub(1) {
        if f[p] == f[p + 1] {
            mask |= 1 << p;
        }
    }
    mask
}

/// Remove the bit positions of `word` from the index space of `mask`
/// (requires word ⊆ mask).
fn strip_word(mask: u32, word: u32) -> u32 {
    debug_assert_eq!(mask & word, word);
    let mut out = 0u32;
    let mut outpos = 0;
    for p in 0..32 {
        if word >> p & 1 == 1 {
            continue;
        }
        if mask >> p & 1 == 1 {
            out |= 1 << outpos;
        }
        outpos += 1;
    }
    out
}

/// A finite simplicial set presented by its nondegenerate simplices and their
/// faces in normal form.
#[derive(Debug, Clone)]
pub struct FiniteSimplicialSet {
    /// faces[d][idx][i]: the i-th face of the idx-th nondegenerate d-simplex.
    faces: Vec<Vec<Vec<Element>>>,
    /// Stable display names, one per nondegenerate simplex.
    labels: Vec<Vec<String>>,
}

impl FiniteSimplicialSet {
    /// Top dimension carrying nondegenerate simplices.
    pub fn top_dimension(&self) -> usize {
        self.faces.len().saturating_sub(1)
    }

    pub fn nondeg_count(&self, d: usize) -> usize {
        self.faces.get(d).map_or(0, |v| v.len())
    }

    pub fn nondeg_counts(&self) -> Vec<usize> {
        self.faces.iter().map(|v| v.len()).collect()
    }

    pub fn label(&self, d: usize, idx: usize) -> &str {
        &self.labels[d][idx]
    }

    /// The i-th face of a normal-form element at the given ambient dimension.
    pub fn face_of_element(&self, ambient: usize, e: Element, i: usize) -> Element {
        debug_assert_eq!(e.dim as usize + e.mask.count_ones() as usize, ambient);
        if e.mask == 0 {
            return self.faces[e.dim as usize][e.idx as usize][i];
        }
        let d = e.dim as usize;
        let f = levels(e.mask, ambient);
        let mut g: Vec<u8> = Vec::with_capacity(ambient);
        for (p, &v) in f.iter().enumerate() {
            if p != i {
                g.push(v);
            }
        }
        let mut present: u32 = 0;
        for &x in &g {
            present |= 1 << x;
        }
        let full: u32 = (1u32 << (d + 1)) - 1;
        let missing = full & !present;
        if missing == 0 {
            return Element { dim: e.dim, idx: e.idx, mask: mask_of_levels(&g) };
        }
        let v = missing.trailing_zeros() as u8;
        let base_face = self.faces[d][e.idx as usize][v as usize];
        let h = levels(base_face.mask, d - 1);
        let composed: Vec<u8> =
            g.iter().map(|&x| h[if x > v { x - 1 } else { x } as usize]).collect();
        Element { dim: base_face.dim, idx: base_face.idx, mask: mask_of_levels(&composed) }
    }

    /// All simplices of K_n in normal form, in a fixed order.
    pub fn all_simplices(&self, n: usize) -> Vec<Element> {
        let mut out = Vec::new();
        for d in 0..=n.min(self.top_dimension()) {
            let extra = n - d;
            for idx in 0..self.nondeg_count(d) {
                if n == 0 {
                    out.push(Element { dim: 0, idx: idx as u32, mask: 0 });
                    continue;
                }
                for mask in 0u32..(1 << n) {
                    if mask.count_ones() as usize == extra {
                        out.push(Element { dim: d as u8, idx: idx as u32, mask });
                    }
                }
            }
        }
        out
    }

    /// Parse a triangulation given as a plain-text list of maximal simplices
    /// by vertex indices, one per line ('#' starts a comment). The simplicial
    /// set is the full simplicial complex they span, with vertex order giving
    /// the structure.
    pub fn from_maximal_simplices(text: &str) -> Result<FiniteSimplicialSet> {
        let mut maximal: Vec<Vec<u32>> = Vec::new();
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut verts: Vec<u32> = Vec::new();
            for tok in line.split_whitespace() {
                verts.push(tok.parse::<u32>().map_err(|_| {
                    Error::InvalidArgument(format!("bad vertex index {tok:?}"))
                })?);
            }
            verts.sort_unstable();
            verts.dedup();
            maximal.push(verts);
        }
        if maximal.is_empty() {
            return Err(Error::InvalidArgument("no simplices given".into()));
        }
        let top = maximal.iter().map(|s| s.len() - 1).max().unwrap();
        let mut by_dim: Vec<BTreeSet<Vec<u32>>> = vec![BTreeSet::new(); top + 1];
        for simplex in &maximal {
            // close downwards over all nonempty subsets
            let n = simplex.len();
            for bits in 1u32..(1 << n) {
                let sub: Vec<u32> = (0..n).filter(|&i| bits >> i & 1 == 1).map(|i| simplex[i]).collect();
                by_dim[sub.len() - 1].insert(sub);
            }
        }
        let simplices: Vec<Vec<Vec<u32>>> =
            by_dim.into_iter().map(|s| s.into_iter().collect()).collect();
        let mut index: Vec<HashMap<&[u32], usize>> = Vec::new();
        for bucket in &simplices {
            index.push(bucket.iter().enumerate().map(|(i, v)| (v.as_slice(), i)).collect());
        }
        let mut faces: Vec<Vec<Vec<Element>>> = Vec::with_capacity(top + 1);
        let mut labels: Vec<Vec<String>> = Vec::with_capacity(top + 1);
        for (d, bucket) in simplices.iter().enumerate() {
            let mut dim_faces = Vec::with_capacity(bucket.len());
            let mut dim_labels = Vec::with_capacity(bucket.len());
            for verts in bucket {
                let mut fs = Vec::with_capacity(d + 1);
                if d > 0 {
                    for i in 0..=d {
                        let mut sub = verts.clone();
                        sub.remove(i);
                        let target = index[d - 1][sub.as_slice()];
                        fs.push(Element::nondeg(d - 1, target));
                    }
                }
                dim_faces.push(fs);
                dim_labels.push(
                    verts.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("."),
                );
            }
            faces.push(dim_faces);
            labels.push(dim_labels);
        }
        Ok(FiniteSimplicialSet { faces, labels })
    }
}

fn subset_label(subset: &[Element]) -> String {
    let parts: Vec<String> =
        subset.iter().map(|e| format!("{}:{}:{}", e.dim, e.idx, e.mask)).collect();
    format!("{{{}}}", parts.join(","))
}

/// The finite-subset-space simplicial set Exp_j(K), truncated at dimension
/// `dmax`. Enumeration of candidate subsets is bounded by `ceiling`.
pub fn exp_simplicial(
    k: &FiniteSimplicialSet,
    j: usize,
    dmax: usize,
    ceiling: u64,
) -> Result<FiniteSimplicialSet> {
    if j == 0 || dmax == 0 {
        return Err(Error::InvalidArgument("exp_simplicial requires j >= 1 and D >= 1".into()));
    }
    let mut counter: u64 = 0;
    let mut basis: Vec<Vec<Vec<Element>>> = Vec::with_capacity(dmax + 1);
    let mut index: Vec<HashMap<Vec<Element>, usize>> = Vec::with_capacity(dmax + 1);
    for n in 0..=dmax {
        let elements = k.all_simplices(n);
        let mut found: Vec<Vec<Element>> = Vec::new();
        let mut prefix: Vec<Element> = Vec::new();
        enumerate_subsets(&elements, j, 0, u32::MAX, &mut prefix, &mut counter, ceiling, &mut found)?;
        let map: HashMap<Vec<Element>, usize> =
            found.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        basis.push(found);
        index.push(map);
    }
    // face tables: elementwise face, dedupe as a set, split off the common
    // degeneracy word, and look the base subset up one (or more) levels down
    let mut faces: Vec<Vec<Vec<Element>>> = Vec::with_capacity(dmax + 1);
    let mut labels: Vec<Vec<String>> = Vec::with_capacity(dmax + 1);
    for (n, bucket) in basis.iter().enumerate() {
        let mut dim_faces = Vec::with_capacity(bucket.len());
        let mut dim_labels = Vec::with_capacity(bucket.len());
        for subset in bucket {
            let mut fs = Vec::with_capacity(n + 1);
            if n > 0 {
                let ambient_mask: u32 = if n == 1 { 0 } else { (1u32 << (n - 1)) - 1 };
                for i in 0..=n {
                    let mut face_set: Vec<Element> =
                        subset.iter().map(|&e| k.face_of_element(n, e, i)).collect();
                    face_set.sort_unstable();
                    face_set.dedup();
                    let word =
                        face_set.iter().fold(u32::MAX, |m, e| m & e.mask) & ambient_mask;
                    let base: Vec<Element> = if word == 0 {
                        face_set
                    } else {
                        let mut stripped: Vec<Element> = face_set
                            .iter()
                            .map(|e| Element {
                                dim: e.dim,
                                idx: e.idx,
                                mask: strip_word(e.mask, word),
                            })
                            .collect();
                        stripped.sort_unstable();
                        stripped.dedup();
                        stripped
                    };
                    let target_dim = n - 1 - word.count_ones() as usize;
                    let target_idx = *index[target_dim].get(&base).ok_or_else(|| {
                        Error::CrossCheckFailed("face subset missing from enumeration".into())
                    })?;
                    fs.push(Element { dim: target_dim as u8, idx: target_idx as u32, mask: word });
                }
            }
            dim_faces.push(fs);
            dim_labels.push(subset_label(subset));
        }
        faces.push(dim_faces);
        labels.push(dim_labels);
    }
    Ok(FiniteSimplicialSet { faces, labels })
}

#[allow(clippy::too_many_arguments)]
fn enumerate_subsets(
    elements: &[Element],
    j: usize,
    start: usize,
    and_mask: u32,
    prefix: &mut Vec<Element>,
    counter: &mut u64,
    ceiling: u64,
    out: &mut Vec<Vec<Element>>,
) -> Result<()> {
    for idx in start..elements.len() {
        *counter += 1;
        if *counter > ceiling {
            return Err(Error::ResourceBound { candidates: *counter, ceiling });
        }
        let m = and_mask & elements[idx].mask;
        prefix.push(elements[idx]);
        if m == 0 {
            out.push(prefix.clone());
        }
        if prefix.len() < j {
            enumerate_subsets(elements, j, idx + 1, m, prefix, counter, ceiling, out)?;
        }
        prefix.pop();
    }
    Ok(())
}

/// Count nondegenerate subsets per dimension without materialising them,
/// using the early-out: once a prefix has no common degeneracy direction all
/// of its extensions are nondegenerate and are counted binomially.
pub fn count_nondegenerate(
    k: &FiniteSimplicialSet,
    j: usize,
    dmax: usize,
    ceiling: u64,
) -> Result<Vec<u64>> {
    fn rec(
        elements: &[Element],
        j: usize,
        start: usize,
        depth: usize,
        and_mask: u32,
        counter: &mut u64,
        ceiling: u64,
        acc: &mut u64,
    ) -> Result<()> {
        for idx in start..elements.len() {
            *counter += 1;
            if *counter > ceiling {
                return Err(Error::ResourceBound { candidates: *counter, ceiling });
            }
            let m = and_mask & elements[idx].mask;
            let len = depth + 1;
            if m == 0 {
                *acc += 1;
                let rest = (elements.len() - idx - 1) as u64;
                for t in 1..=(j - len) as u64 {
                    *acc += binomial_u64(rest, t);
                }
            } else if len < j {
                rec(elements, j, idx + 1, len, m, counter, ceiling, acc)?;
            }
        }
        Ok(())
    }
    let mut counter = 0u64;
    let mut out = Vec::with_capacity(dmax + 1);
    for n in 0..=dmax {
        let elements = k.all_simplices(n);
        let mut acc = 0u64;
        rec(&elements, j, 0, 0, u32::MAX, &mut counter, ceiling, &mut acc)?;
        out.push(acc);
    }
    Ok(out)
}

/// Sparse chain complex with unit-pivot cancellation. Cancelling a pair
/// (b, c) with <∂c, b> = ±1 Schur-complements the remaining columns, drops
/// b's column one level down and c's row one level up; homology over Z is
/// unchanged. Coefficients use checked i64 arithmetic.
struct ReducedComplex {
    sizes: Vec<usize>,
    alive: Vec<Vec<bool>>,
    /// cols[d][c]: the boundary column of cell c in C_d, for d >= 1.
    cols: Vec<Vec<BTreeMap<usize, i64>>>,
    /// rows[d][r]: the set of columns of boundary d with an entry in row r.
    rows: Vec<Vec<BTreeSet<usize>>>,
}

impl ReducedComplex {
    fn new(sizes: Vec<usize>, boundaries: Vec<Vec<BTreeMap<usize, i64>>>) -> Self {
        let top = sizes.len() - 1;
        let mut rows: Vec<Vec<BTreeSet<usize>>> = Vec::with_capacity(top + 1);
        rows.push(Vec::new());
        for d in 1..=top {
            let mut r = vec![BTreeSet::new(); sizes[d - 1]];
            for (c, col) in boundaries[d].iter().enumerate() {
                for &row in col.keys() {
                    r[row].insert(c);
                }
            }
            rows.push(r);
        }
        let alive = sizes.iter().map(|&n| vec![true; n]).collect();
        let mut cols = boundaries;
        if cols.is_empty() {
            cols.push(Vec::new());
        }
        ReducedComplex { sizes, alive, cols, rows }
    }

    fn top(&self) -> usize {
        self.sizes.len() - 1
    }

    fn reduce(&mut self) {
        for d in 1..=self.top() {
            self.reduce_degree(d);
        }
    }

    fn reduce_degree(&mut self, d: usize) {
        use std::cmp::Reverse;
        use std::collections::BinaryHeap;
        let mut heap: BinaryHeap<Reverse<(usize, usize, usize)>> = BinaryHeap::new();
        for (c, col) in self.cols[d].iter().enumerate() {
            for (&r, &v) in col.iter() {
                if v == 1 || v == -1 {
                    heap.push(Reverse((col.len() + self.rows[d][r].len(), r, c)));
                }
            }
        }
        while let Some(Reverse((_, r, c))) = heap.pop() {
            if !self.alive[d][c] || !self.alive[d - 1][r] {
                continue;
            }
            let Some(&lambda) = self.cols[d][c].get(&r) else { continue };
            if lambda != 1 && lambda != -1 {
                continue;
            }
            let pivot_col: Vec<(usize, i64)> =
                self.cols[d][c].iter().map(|(&k, &v)| (k, v)).collect();
            let others: Vec<usize> =
                self.rows[d][r].iter().copied().filter(|&c2| c2 != c).collect();
            for c2 in others {
                let coeff = *self.cols[d][c2].get(&r).expect("row index is consistent");
                let factor = coeff / lambda;
                for &(r2, v) in &pivot_col {
                    let entry = self.cols[d][c2].entry(r2).or_insert(0);
                    *entry = entry
                        .checked_sub(factor.checked_mul(v).expect("coefficient overflow"))
                        .expect("coefficient overflow");
                    if *entry == 0 {
                        self.cols[d][c2].remove(&r2);
                        self.rows[d][r2].remove(&c2);
                    } else {
                        self.rows[d][r2].insert(c2);
                        if *entry == 1 || *entry == -1 {
                            heap.push(Reverse((
                                self.cols[d][c2].len() + self.rows[d][r2].len(),
                                r2,
                                c2,
                            )));
                        }
                    }
                }
            }
            // retire the pair
            self.alive[d][c] = false;
            self.alive[d - 1][r] = false;
            for &(r2, _) in &pivot_col {
                self.rows[d][r2].remove(&c);
            }
            self.cols[d][c].clear();
            debug_assert!(self.rows[d][r].is_empty());
            // drop b's column one level down
            if d >= 2 {
                let col = std::mem::take(&mut self.cols[d - 1][r]);
                for (r3, _) in col {
                    self.rows[d - 1][r3].remove(&r);
                }
            }
            // drop c's row one level up
            if d + 1 <= self.top() {
                let cs: Vec<usize> = self.rows[d + 1][c].iter().copied().collect();
                for c4 in cs {
                    self.cols[d + 1][c4].remove(&c);
                }
                self.rows[d + 1][c].clear();
            }
        }
    }

    /// Extract the surviving complex as boundary matrices per dimension.
    fn matrices(&self) -> Vec<IntegerMatrix> {
        let top = self.top();
        let remap: Vec<Vec<Option<usize>>> = (0..=top)
            .map(|d| {
                let mut next = 0;
                self.alive[d]
                    .iter()
                    .map(|&a| {
                        if a {
                            let i = next;
                            next += 1;
                            Some(i)
                        } else {
                            None
                        }
                    })
                    .collect()
            })
            .collect();
        let counts: Vec<usize> =
            (0..=top).map(|d| self.alive[d].iter().filter(|&&a| a).count()).collect();
        let mut out = Vec::with_capacity(top + 1);
        out.push(IntegerMatrix::zero(0, counts[0]));
        for d in 1..=top {
            let mut m = IntegerMatrix::zero(counts[d - 1], counts[d]);
            for (c, col) in self.cols[d].iter().enumerate() {
                let Some(nc) = remap[d][c] else { continue };
                for (&r, &v) in col {
                    let nr = remap[d - 1][r].expect("live column refers to live row");
                    m.set(nr, nc, BigInt::from(v));
                }
            }
            out.push(m);
        }
        out
    }
}

/// Homology of the normalized (degenerate-killed) chain complex of K in
/// dimensions 0..=D-1; the complex is truncated one dimension higher so that
/// every reported group is exact.
pub fn normalized_homology(k: &FiniteSimplicialSet, d_bound: usize) -> Result<Vec<AbelianGroup>> {
    if d_bound == 0 {
        return Err(Error::InvalidArgument("dimension bound must be >= 1".into()));
    }
    let top = d_bound.min(k.top_dimension());
    let sizes: Vec<usize> = (0..=top).map(|d| k.nondeg_count(d)).collect();
    let mut boundaries: Vec<Vec<BTreeMap<usize, i64>>> = vec![Vec::new()];
    for d in 1..=top {
        let mut cols = Vec::with_capacity(sizes[d]);
        for idx in 0..sizes[d] {
            let mut col: BTreeMap<usize, i64> = BTreeMap::new();
            for (i, face) in k.faces[d][idx].iter().enumerate() {
                if face.mask != 0 {
                    continue; // degenerate faces vanish in normalized chains
                }
                let sign = if i % 2 == 0 { 1 } else { -1 };
                let entry = col.entry(face.idx as usize).or_insert(0);
                *entry += sign;
                if *entry == 0 {
                    col.remove(&(face.idx as usize));
                }
            }
            cols.push(col);
        }
        boundaries.push(cols);
    }
    let mut complex = ReducedComplex::new(sizes, boundaries);
    complex.reduce();
    let mats = complex.matrices();
    let mut out = Vec::new();
    for d in 0..d_bound.min(top + 1) {
        let d_n = &mats[d];
        let succ = if d + 1 <= top {
            mats[d + 1].clone()
        } else {
            IntegerMatrix::zero(d_n.cols(), 0)
        };
        out.push(intalg::homology_at(d_n, &succ)?);
    }
    Ok(out)
}

/// Simplicial identities d_i d_j = d_{j-1} d_i (i < j) on every nondegenerate
/// simplex, through the element calculus.
pub fn check_simplicial_identities(k: &FiniteSimplicialSet) -> bool {
    for n in 2..=k.top_dimension() {
        for idx in 0..k.nondeg_count(n) {
            let e = Element::nondeg(n, idx);
            for jj in 1..=n {
                for i in 0..jj {
                    let a = k.face_of_element(n - 1, k.face_of_element(n, e, jj), i);
                    let b = k.face_of_element(n - 1, k.face_of_element(n, e, i), jj - 1);
                    if a != b {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Shipped triangulations.
pub mod spaces {
    use super::FiniteSimplicialSet;

    pub const TETRAHEDRON_TRI: &str = include_str!("../data/tetrahedron.tri");
    pub const OCTAHEDRON_TRI: &str = include_str!("../data/octahedron.tri");
    pub const TORUS7_TRI: &str = include_str!("../data/torus7.tri");
    pub const RP2_6_TRI: &str = include_str!("../data/rp2_6.tri");

    /// Boundary of the 3-simplex: the minimal triangulated 2-sphere.
    pub fn sphere_tetrahedron() -> FiniteSimplicialSet {
        FiniteSimplicialSet::from_maximal_simplices(TETRAHEDRON_TRI).expect("valid data")
    }

    /// The octahedral 2-sphere (6 vertices).
    pub fn sphere_octahedron() -> FiniteSimplicialSet {
        FiniteSimplicialSet::from_maximal_simplices(OCTAHEDRON_TRI).expect("valid data")
    }

    /// The 7-vertex torus.
    pub fn torus_7() -> FiniteSimplicialSet {
        FiniteSimplicialSet::from_maximal_simplices(TORUS7_TRI).expect("valid data")
    }

    /// The 6-vertex projective plane.
    pub fn rp2_6() -> FiniteSimplicialSet {
        FiniteSimplicialSet::from_maximal_simplices(RP2_6_TRI).expect("valid data")
    }
}

/// Spaces accepted by `oracle_compare`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleSpace {
    S2,
    T2,
    RP2,
}

impl OracleSpace {
    pub fn name(&self) -> &'static str {
        match self {
            OracleSpace::S2 => "S2",
            OracleSpace::T2 => "T2",
            OracleSpace::RP2 => "RP2",
        }
    }
}

/// One compared dimension of an oracle run.
#[derive(Debug, Clone)]
pub struct OracleDimCompare {
    pub dim: usize,
    pub oracle: AbelianGroup,
    pub predicted: AbelianGroup,
    pub matches: bool,
}

/// Result of an oracle cross-check.
#[derive(Debug, Clone)]
pub struct OracleReport {
    pub space: OracleSpace,
    pub k: usize,
    pub dims: Vec<OracleDimCompare>,
    pub counts: Vec<u64>,
    pub total_count: u64,
    /// Soft comparison of the total nondegenerate simplex count against the
    /// reported 77 (j = 3) and 1039 (j = 4) for the triangulated sphere;
    /// never fails the run.
    pub soft_note: Option<String>,
    pub all_match: bool,
}

/// Compute oracle homology for the given space and subset bound and compare
/// it against the cell-complex prediction (all dimensions for S²; top two for
/// T² and RP²).
pub fn oracle_compare(space: OracleSpace, k: usize, ceiling: u64) -> Result<OracleReport> {
    let (set, full_compare): (FiniteSimplicialSet, bool) = match space {
        OracleSpace::S2 => (spaces::sphere_tetrahedron(), true),
        OracleSpace::T2 => (spaces::torus_7(), false),
        OracleSpace::RP2 => (spaces::rp2_6(), false),
    };
    let dmax = 2 * k + 1;
    let counts = count_nondegenerate(&set, k, dmax, ceiling)?;
    let total: u64 = counts.iter().sum();
    let soft_note = if space == OracleSpace::S2 && (k == 3 || k == 4) {
        let reported = if k == 3 { 77 } else { 1039 };
        Some(format!(
            "soft check: computed {total} nondegenerate simplices for j={k}, reported count {reported} ({})",
            if total == reported { "match" } else { "differs; reported value kept informational" }
        ))
    } else {
        None
    };

    let mut dims = Vec::new();
    let homology_wanted = !(space == OracleSpace::S2 && k >= 4);
    if homology_wanted {
        let predicted: Vec<(usize, AbelianGroup)> = match space {
            OracleSpace::S2 => {
                let h = lexcell::homology_z(k as u32, false)?;
                h.into_iter().enumerate().collect()
            }
            OracleSpace::T2 | OracleSpace::RP2 => {
                let spec = if space == OracleSpace::T2 {
                    SurfaceSpec::orientable(1)
                } else {
                    SurfaceSpec::non_orientable(1)?
                };
                if k == 2 {
                    if space == OracleSpace::RP2 {
                        return Err(Error::InvalidArgument(
                            "the RP2 oracle needs k = 3; Sym² of a non-orientable surface is out of scope"
                                .into(),
                        ));
                    }
                    // Exp_2 = Sym_2; free ranks from the symmetric-product basis
                    vec![
                        (3, AbelianGroup::free(symring::sym_basis_rank(2, 1, 3))),
                        (4, AbelianGroup::free(symring::sym_basis_rank(2, 1, 4))),
                    ]
                } else if k == 3 {
                    let (h_top, h_mid) = surface::top_homology(&spec, 3)?;
                    vec![(2 * k - 1, h_mid), (2 * k, h_top)]
                } else {
                    return Err(Error::InvalidArgument(format!(
                        "oracle for {} supports k in {{2, 3}}",
                        space.name()
                    )));
                }
            }
        };
        let exp = exp_simplicial(&set, k, dmax, ceiling)?;
        let oracle = normalized_homology(&exp, dmax)?;
        for (d, want) in predicted {
            if !full_compare && d >= oracle.len() {
                continue;
            }
            let got = oracle.get(d).cloned().unwrap_or_else(AbelianGroup::trivial);
            let matches = got == want;
            dims.push(OracleDimCompare { dim: d, oracle: got, predicted: want, matches });
        }
    }
    let all_match = dims.iter().all(|c| c.matches);
    Ok(OracleReport { space, k, dims, counts, total_count: total, soft_note, all_match })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn groups(v: &[(usize, &[u64])]) -> Vec<AbelianGroup> {
        v.iter().map(|(f, t)| AbelianGroup { free_rank: *f, torsion: t.to_vec() }).collect()
    }

    #[test]
    fn base_complexes_have_expected_homology() {
        let s2 = spaces::sphere_tetrahedron();
        assert_eq!(s2.nondeg_counts(), vec![4, 6, 4]);
        assert_eq!(
            normalized_homology(&s2, 3).unwrap(),
            groups(&[(1, &[]), (0, &[]), (1, &[])])
        );
        let oct = spaces::sphere_octahedron();
        assert_eq!(oct.nondeg_counts(), vec![6, 12, 8]);
        assert_eq!(
            normalized_homology(&oct, 3).unwrap(),
            groups(&[(1, &[]), (0, &[]), (1, &[])])
        );
        let t2 = spaces::torus_7();
        assert_eq!(t2.nondeg_counts(), vec![7, 21, 14]);
        assert_eq!(
            normalized_homology(&t2, 3).unwrap(),
            groups(&[(1, &[]), (2, &[]), (1, &[])])
        );
        let rp2 = spaces::rp2_6();
        assert_eq!(rp2.nondeg_counts(), vec![6, 15, 10]);
        assert_eq!(
            normalized_homology(&rp2, 3).unwrap(),
            groups(&[(1, &[]), (0, &[2]), (0, &[])])
        );
    }

    #[test]
    fn exp1_is_the_identity() {
        for set in [spaces::sphere_tetrahedron(), spaces::rp2_6()] {
            let exp = exp_simplicial(&set, 1, set.top_dimension() + 1, DEFAULT_CEILING).unwrap();
            for d in 0..=set.top_dimension() {
                assert_eq!(exp.nondeg_count(d), set.nondeg_count(d));
            }
        }
    }

    #[test]
    fn face_calculus_respects_simplicial_identities() {
        let s2 = spaces::sphere_tetrahedron();
        let exp2 = exp_simplicial(&s2, 2, 5, DEFAULT_CEILING).unwrap();
        assert!(check_simplicial_identities(&exp2));
        let rp2 = spaces::rp2_6();
        let exp2 = exp_simplicial(&rp2, 2, 5, DEFAULT_CEILING).unwrap();
        assert!(check_simplicial_identities(&exp2));
    }

    #[test]
    fn exp_functor_inclusion_on_nondegenerates() {
        let s2 = spaces::sphere_tetrahedron();
        let e2 = exp_simplicial(&s2, 2, 5, DEFAULT_CEILING).unwrap();
        let e3 = exp_simplicial(&s2, 3, 5, DEFAULT_CEILING).unwrap();
        for d in 0..=5usize {
            let small: std::collections::HashSet<&String> = e2.labels[d].iter().collect();
            let big: std::collections::HashSet<&String> = e3.labels[d].iter().collect();
            assert!(small.is_subset(&big), "dim {d}");
        }
    }

    #[test]
    fn exp2_sphere_is_cp2() {
        let s2 = spaces::sphere_tetrahedron();
        let exp = exp_simplicial(&s2, 2, 5, DEFAULT_CEILING).unwrap();
        let h = normalized_homology(&exp, 5).unwrap();
        assert_eq!(h, groups(&[(1, &[]), (0, &[]), (1, &[]), (0, &[]), (1, &[])]));
    }

    #[test]
    fn homology_independent_of_triangulation() {
        for j in 1..=2usize {
            let a = exp_simplicial(&spaces::sphere_tetrahedron(), j, 2 * j + 1, DEFAULT_CEILING)
                .unwrap();
            let b = exp_simplicial(&spaces::sphere_octahedron(), j, 2 * j + 1, DEFAULT_CEILING)
                .unwrap();
            assert_eq!(
                normalized_homology(&a, 2 * j + 1).unwrap(),
                normalized_homology(&b, 2 * j + 1).unwrap(),
                "j={j}"
            );
        }
    }

    #[test]
    fn ceiling_is_enforced() {
        let s2 = spaces::sphere_tetrahedron();
        let err = exp_simplicial(&s2, 3, 7, 100).unwrap_err();
        assert!(matches!(err, Error::ResourceBound { .. }));
    }

    #[test]
    fn torus_exp2_matches_sym2() {
        let report = oracle_compare(OracleSpace::T2, 2, DEFAULT_CEILING).unwrap();
        assert!(report.all_match, "{:?}", report.dims);
        let h4 = report.dims.iter().find(|c| c.dim == 4).unwrap();
        assert_eq!(h4.oracle, AbelianGroup::free(1));
        let h3 = report.dims.iter().find(|c| c.dim == 3).unwrap();
        assert_eq!(h3.oracle, AbelianGroup::free(2));
    }
}
