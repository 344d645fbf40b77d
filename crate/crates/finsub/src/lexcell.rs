//! Lexicographic cell complexes for finite subset spaces of wedges of
//! 2-spheres, and their homology.
//!
//! For a single 2-sphere the based space Exp_k(S², v) has one cell per
//! composition S with |S| <= k-1 plus the vertex, and the unbased space
//! Exp_k(S²) adds a tilded cell per composition with |S| <= k. The cellular
//! boundary splits into a norm-decreasing part ∂^ν and a length-decreasing
//! part ∂^λ; there is no ∂^γ because there are no edges. Cells here are
//! combinatorial tokens only — the boundary formulas carry all the geometry.

use crate::chain::Chain;
use crate::intalg::{self, AbelianGroup, IntegerMatrix, Order};
use crate::partitions::{compositions, compositions_of_length, signed_binomial, Composition};
use crate::{Error, Result};
use num_bigint::BigInt;
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

/// A cell of the lexicographic structure on Exp_k of a wedge of 2-spheres:
/// a set of (face index, composition) factors with strictly increasing face
/// indices, possibly empty, plus a basepoint flag. The empty based cell is
/// the vertex; the empty unbased cell does not exist.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SphereCell {
    factors: Vec<(u32, Composition)>,
    based: bool,
}

impl SphereCell {
    pub fn vertex() -> Self {
        SphereCell { factors: Vec::new(), based: true }
    }

    pub fn new(factors: Vec<(u32, Composition)>, based: bool) -> Result<Self> {
        if factors.is_empty() && !based {
            return Err(Error::InvalidArgument("the empty unbased cell does not exist".into()));
        }
        if factors.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(Error::InvalidArgument("face indices must strictly increase".into()));
        }
        if factors.iter().any(|(f, _)| *f == 0) {
            return Err(Error::InvalidArgument("face indices are 1-based".into()));
        }
        Ok(SphereCell { factors, based })
    }

    /// Single-factor cell on face 1; `based` selects round vs square brackets.
    pub fn single(s: Composition, based: bool) -> Self {
        SphereCell { factors: vec![(1, s)], based }
    }

    pub fn factors(&self) -> &[(u32, Composition)] {
        &self.factors
    }

    pub fn based(&self) -> bool {
        self.based
    }

    pub fn is_vertex(&self) -> bool {
        self.factors.is_empty()
    }

    /// Σ (|S_q| + ℓ(S_q)); the vertex has dimension 0.
    pub fn dimension(&self) -> usize {
        self.factors.iter().map(|(_, s)| (s.norm() as usize) + s.length()).sum()
    }

    /// Number of points a subset in the open cell carries.
    pub fn points(&self) -> u32 {
        self.factors.iter().map(|(_, s)| s.norm()).sum::<u32>() + u32::from(self.based)
    }

    fn with_based(&self, based: bool) -> SphereCell {
        SphereCell { factors: self.factors.clone(), based }
    }

    fn replace_factor(&self, q: usize, comp: Composition, based: bool) -> SphereCell {
        let mut factors = self.factors.clone();
        factors[q].1 = comp;
        SphereCell { factors, based }
    }
}

impl fmt::Display for SphereCell {
    /// `v` for the vertex; `(2,1)` / `[2,1]` for single-factor cells on one
    /// face; multi-face cells list `f<i>(...)` factors inside the brackets.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_vertex() {
            return write!(f, "v");
        }
        let (open, close) = if self.based { ('(', ')') } else { ('[', ']') };
        if self.factors.len() == 1 && self.factors[0].0 == 1 {
            let inner = self.factors[0].1.to_string();
            return write!(f, "{open}{}{close}", &inner[1..inner.len() - 1]);
        }
        write!(f, "{open}")?;
        for (i, (face, s)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "·")?;
            }
            let inner = s.to_string();
            write!(f, "f{face}{inner}")?;
        }
        write!(f, "{close}")
    }
}

/// Basis order inside a dimension: number of factors, then the factor list
/// (face index, then composition order), with based cells before tilded.
impl Ord for SphereCell {
    fn cmp(&self, other: &Self) -> Ordering {
        self.factors
            .len()
            .cmp(&other.factors.len())
            .then_with(|| self.factors.cmp(&other.factors))
            .then_with(|| other.based.cmp(&self.based))
    }
}

impl PartialOrd for SphereCell {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// ∂^ν of the based cell vτ(S) on face `face`: only even parts contribute,
/// with coefficient -(-1)^{|S|_{[a-1]}}.
fn nu_based_single(face: u32, s: &Composition) -> Chain<SphereCell> {
    let mut out = Chain::zero();
    for a in 1..=s.length() {
        if s.parts()[a - 1] % 2 != 0 {
            continue;
        }
        let sign = if s.prefix_norm(a) % 2 == 0 { -1 } else { 1 };
        let t = s.decrement(a).expect("even part is >= 2");
        out.add(SphereCell { factors: vec![(face, t)], based: true }, sign);
    }
    out
}

/// ∂^ν of the tilded cell τ̃(S): each term of ∂^ν vτ(S) appears twice, based
/// with doubled coefficient and tilded with negated coefficient.
fn nu_tilded_single(face: u32, s: &Composition) -> Chain<SphereCell> {
    let mut out = Chain::zero();
    for (cell, c) in nu_based_single(face, s).iter() {
        out.add(cell.clone(), 2 * c);
        out.add(cell.with_based(false), -c);
    }
    out
}

/// ∂^λ of a single-factor cell: merges of adjacent parts, weighted by the
/// signed binomial coefficient (or its rational-basis simplification), with
/// the output carrying the tilde flag of the input.
fn lambda_single(face: u32, s: &Composition, tilde: bool, rational_basis: bool) -> Chain<SphereCell> {
    let mut out = Chain::zero();
    for a in 1..s.length() {
        let (sa, sb) = (s.parts()[a - 1], s.parts()[a]);
        let coeff = if rational_basis {
            if (sa as u64 * sb as u64) % 2 == 0 {
                1
            } else {
                0
            }
        } else {
            signed_binomial(sa + sb, sa).expect("r <= m")
        };
        if coeff == 0 {
            continue;
        }
        let sign = if (a - 1) % 2 == 0 { 1 } else { -1 };
        let merged = s.merge(a).expect("a < length");
        out.add(SphereCell { factors: vec![(face, merged)], based: !tilde }, sign * coeff);
    }
    out
}

/// ∂^ν of a composition as a chain of single-factor cells on face 1.
pub fn boundary_nu(s: &Composition, tilde: bool) -> Chain<SphereCell> {
    if tilde {
        nu_tilded_single(1, s)
    } else {
        nu_based_single(1, s)
    }
}

/// ∂^λ of a composition as a chain of single-factor cells on face 1.
pub fn boundary_lambda(s: &Composition, tilde: bool, rational_basis: bool) -> Chain<SphereCell> {
    lambda_single(1, s, tilde, rational_basis)
}

/// Full cellular boundary of a tilded single factor, by the boundary theorem
/// with no edge term: ∂τ̃(S) = ∂^ν τ̃(S) + (-1)^{|S|} ∂^λ τ̃(S).
fn full_boundary_tilded_single(face: u32, s: &Composition) -> Chain<SphereCell> {
    let mut out = nu_tilded_single(face, s);
    let sign = if s.norm() % 2 == 0 { 1 } else { -1 };
    out.add_chain(lambda_single(face, s, true, false), sign);
    out
}

/// Replace every cell of a chain by its based (tilde-free) companion,
/// accumulating coefficients. This is the chain map of ∪{v}.
fn remove_tildes(chain: &Chain<SphereCell>) -> Chain<SphereCell> {
    chain.map(|cell| cell.with_based(true))
}

/// Boundary of the tilded product cell with the given factors, by the
/// Leibniz rule; the factor signs are (-1)^{sum of preceding dimensions}.
fn full_boundary_tilded(factors: &[(u32, Composition)]) -> Chain<SphereCell> {
    let whole = SphereCell { factors: factors.to_vec(), based: false };
    let mut out = Chain::zero();
    let mut dim_prefix = 0usize;
    for q in 0..factors.len() {
        let (face, s) = &factors[q];
        let sign = if dim_prefix % 2 == 0 { 1 } else { -1 };
        for (term, c) in full_boundary_tilded_single(*face, s).iter() {
            let comp = term.factors()[0].1.clone();
            out.add(whole.replace_factor(q, comp, term.based()), sign * c);
        }
        dim_prefix += (s.norm() as usize) + s.length();
    }
    out
}

/// The full cellular boundary of a cell. Based boundaries are obtained from
/// the tilded ones by removing all tildes, matching (∪{v})_#.
pub fn full_boundary(cell: &SphereCell) -> Chain<SphereCell> {
    if cell.is_vertex() {
        return Chain::zero();
    }
    let tilded = full_boundary_tilded(cell.factors());
    if cell.based() {
        remove_tildes(&tilded)
    } else {
        tilded
    }
}

/// A chain complex presented by labelled bases and boundary matrices.
/// `boundaries[d]` maps C_d to C_{d-1}; `boundaries[0]` has zero rows.
#[derive(Debug, Clone)]
pub struct ChainComplex {
    pub labels: Vec<Vec<String>>,
    pub boundaries: Vec<IntegerMatrix>,
}

impl ChainComplex {
    pub fn top_dimension(&self) -> usize {
        self.labels.len().saturating_sub(1)
    }

    pub fn cell_count(&self, d: usize) -> usize {
        self.labels.get(d).map_or(0, |v| v.len())
    }

    pub fn total_cells(&self) -> usize {
        self.labels.iter().map(|v| v.len()).sum()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.labels
            .iter()
            .enumerate()
            .map(|(d, v)| if d % 2 == 0 { v.len() as i64 } else { -(v.len() as i64) })
            .sum()
    }

    fn boundary_or_zero(&self, d: usize) -> IntegerMatrix {
        if d <= self.top_dimension() {
            self.boundaries[d].clone()
        } else {
            IntegerMatrix::zero(self.cell_count(d - 1), 0)
        }
    }

    /// ∂∘∂ = 0 in every degree.
    pub fn boundaries_square_to_zero(&self) -> bool {
        for d in 1..=self.top_dimension() {
            let lower = &self.boundaries[d - 1];
            if !lower.mul(&self.boundaries[d]).map(|m| m.is_zero()).unwrap_or(false) {
                return false;
            }
        }
        true
    }

    /// Unreduced integral homology in every dimension 0..=top.
    pub fn homology_z(&self) -> Result<Vec<AbelianGroup>> {
        (0..=self.top_dimension())
            .map(|d| intalg::homology_at(&self.boundaries[d], &self.boundary_or_zero(d + 1)))
            .collect()
    }

    /// Rational Betti numbers in every dimension 0..=top.
    pub fn betti_q(&self) -> Vec<usize> {
        (0..=self.top_dimension())
            .map(|d| {
                let nullity = self.cell_count(d) - intalg::rank(&self.boundaries[d]);
                nullity - intalg::rank(&self.boundary_or_zero(d + 1))
            })
            .collect()
    }

    /// JSON emission: cells with dimensions and labels, boundaries as
    /// per-dimension (row, col, value) triplet lists.
    pub fn to_json(&self, meta: serde_json::Map<String, serde_json::Value>) -> serde_json::Value {
        use serde_json::{json, Value};
        let cells: Vec<Value> = self
            .labels
            .iter()
            .enumerate()
            .flat_map(|(d, ls)| ls.iter().map(move |l| json!({"dim": d, "label": l})))
            .collect();
        let boundaries: Vec<Value> = self
            .boundaries
            .iter()
            .map(|b| {
                Value::Array(
                    b.entries()
                        .map(|(r, c, v)| json!([r, c, v.to_string().parse::<i64>().unwrap_or_default()]))
                        .collect(),
                )
            })
            .collect();
        let mut obj = meta;
        obj.insert("cells".into(), Value::Array(cells));
        obj.insert("boundaries".into(), Value::Array(boundaries));
        Value::Object(obj)
    }
}

/// Golden-file rendering of a homology table: one `H_d = ...` line per
/// dimension.
pub fn homology_table(groups: &[AbelianGroup]) -> String {
    let mut s = String::new();
    for (d, g) in groups.iter().enumerate() {
        s.push_str(&format!("H_{d} = {g}\n"));
    }
    s
}

/// The lexicographic cell complex of Exp_k of a wedge of `faces` 2-spheres,
/// based or unbased.
#[derive(Debug, Clone)]
pub struct SphereComplex {
    pub k: u32,
    pub based: bool,
    pub faces: u32,
    pub cells: Vec<Vec<SphereCell>>,
    pub complex: ChainComplex,
    index: HashMap<SphereCell, (usize, usize)>,
}

impl SphereComplex {
    pub fn cell_index(&self, cell: &SphereCell) -> Option<(usize, usize)> {
        self.index.get(cell).copied()
    }

    pub fn homology_z(&self) -> Result<Vec<AbelianGroup>> {
        self.complex.homology_z()
    }

    pub fn betti_q(&self) -> Vec<usize> {
        self.complex.betti_q()
    }

    /// Number of cells with a single factor whose composition has norm `j`
    /// and length `l`, split (based, tilded). Position (0,0) is the vertex.
    pub fn bidegree_counts(&self, l: usize, j: u32) -> (usize, usize) {
        if l == 0 && j == 0 {
            return (1, 0);
        }
        let mut based = 0;
        let mut tilded = 0;
        for bucket in &self.cells {
            for cell in bucket {
                if cell.factors().len() == 1 {
                    let s = &cell.factors()[0].1;
                    if s.norm() == j && s.length() == l {
                        if cell.based() {
                            based += 1;
                        } else {
                            tilded += 1;
                        }
                    }
                }
            }
        }
        (based, tilded)
    }
}

fn enumerate_factor_sets(faces: u32, max_total: u32) -> Vec<Vec<(u32, Composition)>> {
    // all assignments of an optional composition to each face, total norm
    // bounded; includes the empty assignment
    let mut out: Vec<Vec<(u32, Composition)>> = vec![Vec::new()];
    for face in 1..=faces {
        let mut next = Vec::new();
        for existing in &out {
            let used: u32 = existing.iter().map(|(_, s)| s.norm()).sum();
            next.push(existing.clone());
            for j in 1..=max_total.saturating_sub(used) {
                for comp in compositions(j).expect("j >= 1") {
                    let mut with = existing.clone();
                    with.push((face, comp));
                    next.push(with);
                }
            }
        }
        out = next;
    }
    out
}

/// Build the based or unbased lexicographic complex of Exp_k of a wedge of
/// `faces` 2-spheres (faces = 1 is S² itself).
pub fn build_complex(k: u32, based: bool, faces: u32) -> Result<SphereComplex> {
    if k == 0 {
        return Err(Error::InvalidArgument("build_complex requires k >= 1".into()));
    }
    if faces == 0 {
        return Err(Error::InvalidArgument("at least one 2-cell is required".into()));
    }

    let mut all = vec![SphereCell::vertex()];
    for factors in enumerate_factor_sets(faces, k.saturating_sub(1)) {
        if factors.is_empty() {
            continue;
        }
        all.push(SphereCell { factors, based: true });
    }
    if !based {
        for factors in enumerate_factor_sets(faces, k) {
            if factors.is_empty() {
                continue;
            }
            all.push(SphereCell { factors, based: false });
        }
    }

    let top = all.iter().map(|c| c.dimension()).max().unwrap_or(0);
    let mut cells: Vec<Vec<SphereCell>> = vec![Vec::new(); top + 1];
    for cell in all {
        cells[cell.dimension()].push(cell);
    }
    for bucket in cells.iter_mut() {
        bucket.sort();
    }

    let mut index = HashMap::new();
    for (d, bucket) in cells.iter().enumerate() {
        for (i, cell) in bucket.iter().enumerate() {
            index.insert(cell.clone(), (d, i));
        }
    }

    let mut boundaries = Vec::with_capacity(top + 1);
    boundaries.push(IntegerMatrix::zero(0, cells[0].len()));
    for d in 1..=top {
        let rows = cells[d - 1].len();
        let mut m = IntegerMatrix::zero(rows, cells[d].len());
        for (col, cell) in cells[d].iter().enumerate() {
            for (face_cell, coeff) in full_boundary(cell).iter() {
                let (fd, row) = index[face_cell];
                debug_assert_eq!(fd, d - 1);
                m.add_to(row, col, &BigInt::from(coeff));
            }
        }
        boundaries.push(m);
    }

    let labels = cells.iter().map(|b| b.iter().map(|c| c.to_string()).collect()).collect();
    Ok(SphereComplex { k, based, faces, cells, complex: ChainComplex { labels, boundaries }, index })
}

/// Integral homology of Exp_k S² (based or unbased), unreduced, H_0 first.
pub fn homology_z(k: u32, based: bool) -> Result<Vec<AbelianGroup>> {
    build_complex(k, based, 1)?.homology_z()
}

/// Rational Betti numbers of Exp_k S².
pub fn betti_q(k: u32, based: bool) -> Result<Vec<usize>> {
    Ok(build_complex(k, based, 1)?.betti_q())
}

/// The clipped cube complex: compositions of k graded by length, with the
/// length-decreasing boundary ∂^λ (or its rational-basis version, which
/// replaces the signed binomial by its 0/1 parity factor). Grade ℓ cells sit
/// in dimension k+ℓ of Exp_{k+1}•/Exp_k•.
#[derive(Debug, Clone)]
pub struct ClippedCube {
    pub k: u32,
    pub rational_basis: bool,
    /// grades[l] for l = 0..=k; grades[0] is empty.
    pub grades: Vec<Vec<Composition>>,
    /// boundaries[l]: grade l -> grade l-1 for l = 0..=k.
    pub boundaries: Vec<IntegerMatrix>,
}

impl ClippedCube {
    pub fn boundary_rank(&self, l: usize) -> usize {
        intalg::rank(&self.boundaries[l])
    }

    pub fn homology(&self, l: usize) -> Result<AbelianGroup> {
        let succ = if l + 1 <= self.k as usize {
            self.boundaries[l + 1].clone()
        } else {
            IntegerMatrix::zero(self.grades[l].len(), 0)
        };
        intalg::homology_at(&self.boundaries[l], &succ)
    }

    /// The same data as a ChainComplex in the ambient dimensions k+ℓ.
    pub fn chain_complex(&self) -> ChainComplex {
        let k = self.k as usize;
        let mut labels: Vec<Vec<String>> = vec![Vec::new(); 2 * k + 1];
        let mut boundaries: Vec<IntegerMatrix> = Vec::with_capacity(2 * k + 1);
        for l in 0..=k {
            labels[k + l] = self.grades[l].iter().map(|c| c.to_string()).collect();
        }
        for d in 0..=2 * k {
            if d <= k {
                boundaries.push(IntegerMatrix::zero(0, labels[d].len()));
            } else {
                boundaries.push(self.boundaries[d - k].clone());
            }
        }
        ChainComplex { labels, boundaries }
    }
}

/// Build the clipped cube complex on the compositions of k.
pub fn clipped_cube(k: u32, rational_basis: bool) -> Result<ClippedCube> {
    if k == 0 {
        return Err(Error::InvalidArgument("clipped_cube requires k >= 1".into()));
    }
    let mut grades: Vec<Vec<Composition>> = vec![Vec::new()];
    for l in 1..=k as usize {
        grades.push(compositions_of_length(k, l));
    }
    let mut index: HashMap<Composition, usize> = HashMap::new();
    let mut boundaries = vec![IntegerMatrix::zero(0, 0)];
    for l in 1..=k as usize {
        index.clear();
        for (i, c) in grades[l - 1].iter().enumerate() {
            index.insert(c.clone(), i);
        }
        let mut m = IntegerMatrix::zero(grades[l - 1].len(), grades[l].len());
        for (col, s) in grades[l].iter().enumerate() {
            for (cell, coeff) in lambda_single(1, s, false, rational_basis).iter() {
                let comp = &cell.factors()[0].1;
                m.add_to(index[comp], col, &BigInt::from(coeff));
            }
        }
        boundaries.push(m);
    }
    Ok(ClippedCube { k, rational_basis, grades, boundaries })
}

/// Check that S -> (-1)^{|S|} S̃ is a chain isomorphism from the
/// positive-dimensional based complex of Exp_{k+1}•S² to the relative complex
/// of (Exp_k S², Exp_k• S²), by matrix conjugation equality in every degree.
pub fn quotient_iso_check(k: u32) -> Result<bool> {
    if k == 0 {
        return Err(Error::InvalidArgument("quotient_iso_check requires k >= 1".into()));
    }
    let based = build_complex(k + 1, true, 1)?;
    // relative complex: tilded cells [S], |S| <= k, boundary projected onto
    // tilded cells
    let top = based.complex.top_dimension();
    let mut rel_cells: Vec<Vec<Composition>> = vec![Vec::new(); top + 1];
    for j in 1..=k {
        for comp in compositions(j)? {
            let d = (comp.norm() as usize) + comp.length();
            rel_cells[d].push(comp);
        }
    }
    for bucket in rel_cells.iter_mut() {
        bucket.sort();
    }
    let mut rel_index: HashMap<Composition, (usize, usize)> = HashMap::new();
    for (d, bucket) in rel_cells.iter().enumerate() {
        for (i, c) in bucket.iter().enumerate() {
            rel_index.insert(c.clone(), (d, i));
        }
    }
    for d in 1..=top {
        // based complex basis at dimension d (the vertex sits in dimension 0)
        let bb: Vec<&Composition> = based.cells[d].iter().map(|c| &c.factors()[0].1).collect();
        let rb = &rel_cells[d];
        if bb.len() != rb.len() || bb.iter().zip(rb.iter()).any(|(a, b)| **a != *b) {
            return Ok(false);
        }
        // relative boundary matrix
        let rows = rel_cells[d - 1].len();
        let mut rel = IntegerMatrix::zero(rows, rb.len());
        for (col, comp) in rb.iter().enumerate() {
            let cell = SphereCell::single(comp.clone(), false);
            for (t, c) in full_boundary(&cell).iter() {
                if t.based() {
                    continue;
                }
                let (fd, row) = rel_index[&t.factors()[0].1];
                debug_assert_eq!(fd, d - 1);
                rel.add_to(row, col, &BigInt::from(c));
            }
        }
        // conjugation by the diagonal sign matrices
        let sign = |comp: &Composition| if comp.norm() % 2 == 0 { 1i64 } else { -1 };
        let b = &based.complex.boundaries[d];
        let mut twisted = IntegerMatrix::zero(rows, rb.len());
        for (r, c, v) in b.entries() {
            let sr = sign(&based.cells[d - 1][r].factors()[0].1);
            let sc = sign(&based.cells[d][c].factors()[0].1);
            twisted.set(r, c, v * sr * sc);
        }
        if twisted != rel {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Report of the top homology groups near the stable range, together with the
/// order of the splitting class [1̃(k-1)] - 2(1(k-1)) in H_{2k-2} of the
/// unbased space.
#[derive(Debug, Clone)]
pub struct ClassOrderReport {
    pub k: u32,
    /// H_{2k-2}, H_{2k-3}, H_{2k-4} of the based space.
    pub based_top: [AbelianGroup; 3],
    /// H_{2k}, H_{2k-1}, H_{2k-2} of the unbased space.
    pub unbased_top: [AbelianGroup; 3],
    pub splitting_class_order: Order,
}

pub fn class_order_report(k: u32) -> Result<ClassOrderReport> {
    if k < 3 {
        return Err(Error::InvalidArgument("class_order_report requires k >= 3".into()));
    }
    let based = homology_z(k, true)?;
    let unbased_complex = build_complex(k, false, 1)?;
    let unbased = unbased_complex.homology_z()?;
    let pick =
        |h: &Vec<AbelianGroup>, i: usize| h.get(i).cloned().unwrap_or_else(AbelianGroup::trivial);
    let kk = k as usize;

    // the splitting class lives in C_{2k-2} of the unbased complex
    let ones = Composition::ones(k - 1);
    let tilded = SphereCell::single(ones.clone(), false);
    let based_cell = SphereCell::single(ones, true);
    let dim = 2 * kk - 2;
    let n = unbased_complex.cells[dim].len();
    let mut v = vec![BigInt::from(0); n];
    let (d1, i1) = unbased_complex.cell_index(&tilded).expect("tilded cell present");
    let (d2, i2) = unbased_complex.cell_index(&based_cell).expect("based cell present");
    debug_assert!(d1 == dim && d2 == dim);
    v[i1] = BigInt::from(1);
    v[i2] = BigInt::from(-2);
    let order = intalg::order_in_quotient(&unbased_complex.complex.boundaries[dim + 1], &v)?;

    Ok(ClassOrderReport {
        k,
        based_top: [pick(&based, 2 * kk - 2), pick(&based, 2 * kk - 3), pick(&based, 2 * kk - 4)],
        unbased_top: [pick(&unbased, 2 * kk), pick(&unbased, 2 * kk - 1), pick(&unbased, 2 * kk - 2)],
        splitting_class_order: order,
    })
}

/// Verify that ∂^ν and ∂^λ are each squared-zero and commute, as matrices on
/// every bidegree of the (based + tilded) chain groups for Exp_k S².
pub fn check_bidegree_commutation(k: u32) -> Result<bool> {
    // basis of bidegree (l, j): based compositions (present when j <= k-1)
    // then tilded (present when j <= k), each sorted
    let basis = |l: usize, j: u32| -> Vec<(Composition, bool)> {
        let mut out = Vec::new();
        if j >= 1 {
            let comps = compositions_of_length(j, l);
            if j <= k - 1 {
                out.extend(comps.iter().cloned().map(|c| (c, true)));
            }
            if j <= k {
                out.extend(comps.into_iter().map(|c| (c, false)));
            }
        }
        out
    };
    let matrix_of = |op: &dyn Fn(&Composition, bool) -> Chain<SphereCell>,
                     from: &[(Composition, bool)],
                     to: &[(Composition, bool)]|
     -> Result<IntegerMatrix> {
        let mut index = HashMap::new();
        for (i, (c, b)) in to.iter().enumerate() {
            index.insert((c.clone(), *b), i);
        }
        let mut m = IntegerMatrix::zero(to.len(), from.len());
        for (col, (c, based)) in from.iter().enumerate() {
            for (cell, coeff) in op(c, !based).iter() {
                let key = (cell.factors()[0].1.clone(), cell.based());
                match index.get(&key) {
                    Some(&row) => m.add_to(row, col, &BigInt::from(coeff)),
                    None => {
                        return Err(Error::CrossCheckFailed(
                            "boundary term left its bidegree".into(),
                        ))
                    }
                }
            }
        }
        Ok(m)
    };
    let nu = |c: &Composition, tilde: bool| boundary_nu(c, tilde);
    let la = |c: &Composition, tilde: bool| boundary_lambda(c, tilde, false);

    for j in 1..=k {
        for l in 1..=j as usize {
            let here = basis(l, j);
            if here.is_empty() {
                continue;
            }
            let down = basis(l, j - 1);
            let left = basis(l - 1, j);
            let down2 = if j >= 2 { basis(l, j - 2) } else { Vec::new() };
            let left2 = if l >= 2 { basis(l - 2, j) } else { Vec::new() };
            let corner = basis(l - 1, j - 1);

            let n1 = matrix_of(&nu, &here, &down)?;
            let n2 = matrix_of(&nu, &down, &down2)?;
            if !n2.mul(&n1)?.is_zero() {
                return Ok(false);
            }
            let l1 = matrix_of(&la, &here, &left)?;
            let l2 = matrix_of(&la, &left, &left2)?;
            if !l2.mul(&l1)?.is_zero() {
                return Ok(false);
            }
            let n_after_l = matrix_of(&nu, &left, &corner)?.mul(&l1)?;
            let l_after_n = matrix_of(&la, &down, &corner)?.mul(&n1)?;
            if n_after_l != l_after_n {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::binomial_u64;

    fn groups(v: &[(usize, &[u64])]) -> Vec<AbelianGroup> {
        v.iter().map(|(f, t)| AbelianGroup { free_rank: *f, torsion: t.to_vec() }).collect()
    }

    #[test]
    fn boundary_nu_examples() {
        let s = Composition::of(&[1, 1, 1]);
        assert!(boundary_nu(&s, true).is_zero());
        assert!(boundary_nu(&s, false).is_zero());

        // ∂^ν [2] = -2 (1) + [1]
        let s = Composition::of(&[2]);
        let b = boundary_nu(&s, true);
        assert_eq!(b.coeff(&SphereCell::single(Composition::of(&[1]), true)), -2);
        assert_eq!(b.coeff(&SphereCell::single(Composition::of(&[1]), false)), 1);
        assert_eq!(b.len(), 2);

        // ∂^ν (2,1) = -(1,1)
        let s = Composition::of(&[2, 1]);
        let b = boundary_nu(&s, false);
        assert_eq!(b.coeff(&SphereCell::single(Composition::of(&[1, 1]), true)), -1);
        assert_eq!(b.len(), 1);
    }

    #[test]
    fn boundary_lambda_examples() {
        let s = Composition::of(&[2, 2]);
        let b = boundary_lambda(&s, false, false);
        assert_eq!(b.coeff(&SphereCell::single(Composition::of(&[4]), true)), 2);
        let bq = boundary_lambda(&s, false, true);
        assert_eq!(bq.coeff(&SphereCell::single(Composition::of(&[4]), true)), 1);
        assert!(boundary_lambda(&Composition::of(&[1, 1]), false, false).is_zero());
        assert!(boundary_lambda(&Composition::of(&[1, 1]), false, true).is_zero());
    }

    #[test]
    fn full_boundary_examples() {
        assert!(full_boundary(&SphereCell::vertex()).is_zero());
        assert!(full_boundary(&SphereCell::single(Composition::of(&[1, 1, 1]), true)).is_zero());
        // ∂(2,1) = -(1,1) - (3)
        let b = full_boundary(&SphereCell::single(Composition::of(&[2, 1]), true));
        assert_eq!(b.coeff(&SphereCell::single(Composition::of(&[1, 1]), true)), -1);
        assert_eq!(b.coeff(&SphereCell::single(Composition::of(&[3]), true)), -1);
        assert_eq!(b.len(), 2);
        // ∂[2,1] = -2(1,1) + [1,1] - [3]
        let b = full_boundary(&SphereCell::single(Composition::of(&[2, 1]), false));
        assert_eq!(b.coeff(&SphereCell::single(Composition::of(&[1, 1]), true)), -2);
        assert_eq!(b.coeff(&SphereCell::single(Composition::of(&[1, 1]), false)), 1);
        assert_eq!(b.coeff(&SphereCell::single(Composition::of(&[3]), false)), -1);
    }

    #[test]
    fn exp2_unbased_cells_and_chain_complex() {
        let sc = build_complex(2, false, 1).unwrap();
        let labels: Vec<Vec<String>> = sc.complex.labels.clone();
        assert_eq!(labels[0], vec!["v"]);
        assert!(labels[1].is_empty());
        assert_eq!(labels[2], vec!["(1)", "[1]"]);
        assert_eq!(labels[3], vec!["[2]"]);
        assert_eq!(labels[4], vec!["[1,1]"]);
        // column of [2] is (-2, 1) against basis ((1), [1])
        let b3 = &sc.complex.boundaries[3];
        assert_eq!(b3.get(0, 0), BigInt::from(-2));
        assert_eq!(b3.get(1, 0), BigInt::from(1));
        assert!(sc.complex.boundaries_square_to_zero());
        let h = sc.homology_z().unwrap();
        assert_eq!(h, groups(&[(1, &[]), (0, &[]), (1, &[]), (0, &[]), (1, &[])]));
    }

    #[test]
    fn small_k_homology_tables() {
        // Exp_3(S², v) ≃ S⁴
        let h = homology_z(3, true).unwrap();
        assert_eq!(h, groups(&[(1, &[]), (0, &[]), (0, &[]), (0, &[]), (1, &[])]));
        // Exp_3 S²: Z, 0, 0, 0, Z+Z/2, 0, Z
        let h = homology_z(3, false).unwrap();
        assert_eq!(
            h,
            groups(&[(1, &[]), (0, &[]), (0, &[]), (0, &[]), (1, &[2]), (0, &[]), (1, &[])])
        );
        // Exp_4(S², v): H6 = Z, H4 = Z/2
        let h = homology_z(4, true).unwrap();
        assert_eq!(
            h,
            groups(&[(1, &[]), (0, &[]), (0, &[]), (0, &[]), (0, &[2]), (0, &[]), (1, &[])])
        );
        // k = 1 based: a single vertex
        let h = homology_z(1, true).unwrap();
        assert_eq!(h, groups(&[(1, &[])]));
    }

    #[test]
    fn exp5_unbased_matches_paper_table() {
        let h = homology_z(5, false).unwrap();
        assert_eq!(h[10], AbelianGroup::free(1));
        assert_eq!(h[9], AbelianGroup::trivial());
        assert_eq!(h[8], AbelianGroup::with_torsion(1, vec![4]));
        assert_eq!(h[7], AbelianGroup::with_torsion(0, vec![2]));
        assert_eq!(h[6], AbelianGroup::with_torsion(0, vec![3, 3]));
        for d in [1, 2, 3, 4, 5] {
            assert!(h[d].is_trivial(), "H_{d} should vanish");
        }
    }

    #[test]
    fn pascal_cell_counts_and_euler() {
        let sc = build_complex(5, true, 1).unwrap();
        for j in 1..=4u32 {
            for l in 1..=j as usize {
                let (based, tilded) = sc.bidegree_counts(l, j);
                assert_eq!(based as u64, binomial_u64(j as u64 - 1, l as u64 - 1));
                assert_eq!(tilded, 0);
            }
        }
        // three cells with j = 4, l = 2
        assert_eq!(sc.bidegree_counts(2, 4).0, 3);
        assert_eq!(sc.complex.euler_characteristic(), 2);
        let su = build_complex(5, false, 1).unwrap();
        assert_eq!(su.complex.euler_characteristic(), 3);
    }

    #[test]
    fn boundaries_square_to_zero_through_k7_and_wedges() {
        for k in 1..=7 {
            for based in [true, false] {
                let sc = build_complex(k, based, 1).unwrap();
                assert!(sc.complex.boundaries_square_to_zero(), "k={k} based={based}");
            }
        }
        for k in 1..=4 {
            for based in [true, false] {
                let sc = build_complex(k, based, 2).unwrap();
                assert!(sc.complex.boundaries_square_to_zero(), "m=2 k={k} based={based}");
            }
        }
    }

    #[test]
    fn rational_pattern_small() {
        // based ~ S^{2k-2}, unbased ~ S^{2k} v S^{2k-2}
        for k in 2..=5u32 {
            let b = betti_q(k, true).unwrap();
            for (d, &r) in b.iter().enumerate() {
                let want = usize::from(d == 0 || d == 2 * k as usize - 2);
                assert_eq!(r, want, "based k={k} d={d}");
            }
            let u = betti_q(k, false).unwrap();
            for (d, &r) in u.iter().enumerate() {
                let want = usize::from(d == 0 || d == 2 * k as usize - 2 || d == 2 * k as usize);
                assert_eq!(r, want, "unbased k={k} d={d}");
            }
        }
    }

    #[test]
    fn clipped_cube_k3_and_k4() {
        let cc = clipped_cube(3, false).unwrap();
        assert_eq!(cc.homology(3).unwrap(), AbelianGroup::free(1));
        assert_eq!(cc.homology(2).unwrap(), AbelianGroup::free(1));
        assert_eq!(cc.homology(1).unwrap(), AbelianGroup::trivial());

        let cc = clipped_cube(4, false).unwrap();
        assert_eq!(cc.homology(4).unwrap(), AbelianGroup::free(1));
        assert_eq!(cc.homology(3).unwrap(), AbelianGroup::free(1));
        assert_eq!(cc.homology(2).unwrap(), AbelianGroup::trivial());
        // the integral complex picks up Z/2 generated by (4)
        assert_eq!(cc.homology(1).unwrap(), AbelianGroup::with_torsion(0, vec![2]));
    }

    #[test]
    fn clipped_cube_ranks_match_binomials() {
        // rank ∂_ℓ = C(k-2, ℓ-2) for ℓ <= k-1; the top boundary vanishes
        for k in 3..=8u32 {
            for rational in [false, true] {
                let cc = clipped_cube(k, rational).unwrap();
                assert_eq!(cc.boundary_rank(1), 0);
                for l in 2..k as usize {
                    assert_eq!(
                        cc.boundary_rank(l) as u64,
                        binomial_u64(k as u64 - 2, l as u64 - 2),
                        "k={k} l={l} rational={rational}"
                    );
                }
                assert_eq!(cc.boundary_rank(k as usize), 0);
            }
        }
    }

    #[test]
    fn quotient_iso_small() {
        for k in 1..=5 {
            assert!(quotient_iso_check(k).unwrap(), "k={k}");
        }
    }

    #[test]
    fn class_orders() {
        let r = class_order_report(5).unwrap();
        assert_eq!(r.based_top[0], AbelianGroup::free(1));
        assert_eq!(r.based_top[1], AbelianGroup::trivial());
        assert_eq!(r.based_top[2], AbelianGroup::with_torsion(0, vec![3]));
        assert_eq!(r.unbased_top[0], AbelianGroup::free(1));
        assert_eq!(r.unbased_top[1], AbelianGroup::trivial());
        assert_eq!(r.unbased_top[2], AbelianGroup::with_torsion(1, vec![4]));
        assert_eq!(r.splitting_class_order, Order::Finite(BigInt::from(4)));

        let r = class_order_report(3).unwrap();
        assert_eq!(r.based_top[2], AbelianGroup::trivial());
    }

    #[test]
    fn bidegree_operators_commute() {
        for k in 2..=6 {
            assert!(check_bidegree_commutation(k).unwrap(), "k={k}");
        }
    }

    #[test]
    fn complex_json_round_trips_structurally() {
        let sc = build_complex(2, false, 1).unwrap();
        let mut meta = serde_json::Map::new();
        meta.insert("k".into(), serde_json::json!(2));
        meta.insert("based".into(), serde_json::json!(false));
        let v = sc.complex.to_json(meta);
        assert_eq!(v["k"], 2);
        assert_eq!(v["cells"].as_array().unwrap().len(), sc.complex.total_cells());
        let text = serde_json::to_string(&v).unwrap();
        let back: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v, back);
    }
}
