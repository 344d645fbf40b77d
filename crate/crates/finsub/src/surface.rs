//! The top slice (dimensions 2k, 2k-1, 2k-2) of the lexicographic complex of
//! Exp_k Σ for a closed surface Σ of either orientability.
//!
//! Σ carries its standard cell structure: one vertex, 2g or g edges, and a
//! single 2-cell attached along w₊ = [e_1,e_{1+g}]···[e_g,e_{2g}] in the
//! orientable case and w₋ = e_1²···e_g² in the non-orientable case. The only
//! new boundary ingredient relative to the sphere is the edge contribution
//! ∂^γ, determined by the chain images of e(1) and e(2) under the attaching
//! word; everything below dimension 2k-2 is out of scope.

use crate::chain::Chain;
use crate::intalg::{self, AbelianGroup, IntegerMatrix};
use crate::lexcell;
use crate::partitions::{signed_binomial, Composition};
use crate::{Error, Result};
use num_bigint::BigInt;
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

/// A closed surface: orientable of genus g >= 0, or non-orientable of genus
/// g >= 1 (the connected sum of g projective planes).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SurfaceSpec {
    pub orientable: bool,
    pub genus: u32,
}

impl SurfaceSpec {
    pub fn orientable(genus: u32) -> Self {
        SurfaceSpec { orientable: true, genus }
    }

    pub fn non_orientable(genus: u32) -> Result<Self> {
        if genus == 0 {
            return Err(Error::InvalidArgument("non-orientable genus must be >= 1".into()));
        }
        Ok(SurfaceSpec { orientable: false, genus })
    }

    /// Number of edges of the standard cell structure (= dim H_1(Σ; Z/2)).
    pub fn edge_count(&self) -> u32 {
        if self.orientable {
            2 * self.genus
        } else {
            self.genus
        }
    }
}

impl fmt::Display for SurfaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.orientable {
            write!(f, "orientable genus {}", self.genus)
        } else {
            write!(f, "non-orientable genus {}", self.genus)
        }
    }
}

/// A product of edge cells e_i(s): (edge index, point count) factors with
/// strictly increasing edge indices. The empty word is the unit.
pub type EdgeWord = Vec<(u32, u32)>;

fn word_points(w: &EdgeWord) -> u32 {
    w.iter().map(|&(_, s)| s).sum()
}

/// The generators of the edge-cell chain ring whose attaching-word images
/// determine ∂^γ in the top slice.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeGen {
    E1,
    E2,
}

/// Chain image of e(1) or e(2) under the attaching word of the 2-cell.
pub fn attach_word_image(gen: EdgeGen, spec: &SurfaceSpec) -> Chain<EdgeWord> {
    let g = spec.genus;
    let mut out = Chain::zero();
    match (gen, spec.orientable) {
        (EdgeGen::E1, true) => {}
        (EdgeGen::E1, false) => {
            for i in 1..=g {
                out.add(vec![(i, 1)], 2);
            }
        }
        (EdgeGen::E2, true) => {
            for i in 1..=g {
                out.add(vec![(i, 1), (i + g, 1)], 2);
            }
        }
        (EdgeGen::E2, false) => {
            for i in 1..=g {
                out.add(vec![(i, 2)], 2);
            }
            for i in 1..=g {
                for j in i + 1..=g {
                    out.add(vec![(i, 1), (j, 1)], 4);
                }
            }
        }
    }
    out
}

/// Cup product of two edge words: reorder to increasing edge index with the
/// Koszul sign (-1)^{dim · dim} per transposition, and merge same-edge factors
/// with the signed binomial count. Products leaving the top-slice fragment
/// (three or more points on one edge with a nonzero count) are refused.
fn cup_words(a: &EdgeWord, b: &EdgeWord) -> Result<(i64, EdgeWord)> {
    let mut items: Vec<(u32, u32)> = a.iter().chain(b.iter()).copied().collect();
    let mut sign = 1i64;
    // bubble sort, tracking Koszul signs of adjacent transpositions
    let n = items.len();
    for i in 0..n {
        for j in 0..n.saturating_sub(1 + i) {
            if items[j].0 > items[j + 1].0 {
                if (items[j].1 * items[j + 1].1) % 2 == 1 {
                    sign = -sign;
                }
                items.swap(j, j + 1);
            }
        }
    }
    // merge equal-edge runs
    let mut coeff = sign;
    let mut word: EdgeWord = Vec::new();
    for (edge, s) in items {
        match word.last_mut() {
            Some((e, t)) if *e == edge => {
                let c = signed_binomial(*t + s, *t)?;
                if c == 0 {
                    return Ok((0, Vec::new()));
                }
                if *t + s > 2 {
                    return Err(Error::UnsupportedCell(format!(
                        "edge {} would carry {} points",
                        edge,
                        *t + s
                    )));
                }
                coeff *= c;
                *t += s;
            }
            _ => word.push((edge, s)),
        }
    }
    Ok((coeff, word))
}

/// Bilinear extension of the edge-word cup product to chains.
pub fn cup_edge_cells(a: &Chain<EdgeWord>, b: &Chain<EdgeWord>) -> Result<Chain<EdgeWord>> {
    let mut out = Chain::zero();
    for (wa, ca) in a.iter() {
        for (wb, cb) in b.iter() {
            let (c, w) = cup_words(wa, wb)?;
            out.add(w, ca * cb * c);
        }
    }
    Ok(out)
}

/// A cell of the top slice: an optional face factor (composition) cupped with
/// a word of edge cells, based or tilded.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SurfaceCell {
    pub face_comp: Option<Composition>,
    pub edges: EdgeWord,
    pub based: bool,
}

impl SurfaceCell {
    pub fn dimension(&self) -> usize {
        let face: usize = self.face_comp.as_ref().map_or(0, |s| s.norm() as usize + s.length());
        face + word_points(&self.edges) as usize
    }

    pub fn points(&self) -> u32 {
        self.face_comp.as_ref().map_or(0, |s| s.norm())
            + word_points(&self.edges)
            + u32::from(self.based)
    }
}

impl fmt::Display for SurfaceCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if let Some(s) = &self.face_comp {
            let inner = s.to_string();
            if self.based {
                parts.push(inner);
            } else {
                parts.push(format!("[{}]", &inner[1..inner.len() - 1]));
            }
        } else if self.based {
            parts.push("v".to_string());
        }
        for &(e, s) in &self.edges {
            parts.push(format!("e{e}({s})"));
        }
        if parts.is_empty() {
            parts.push("1".to_string());
        }
        write!(f, "{}", parts.join("∪"))
    }
}

impl Ord for SurfaceCell {
    fn cmp(&self, other: &Self) -> Ordering {
        let key = |c: &SurfaceCell| (c.face_comp.clone(), c.edges.clone(), !c.based);
        key(self).cmp(&key(other))
    }
}

impl PartialOrd for SurfaceCell {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// ∂^γ of the tilded face cell τ̃(S), without the global sign prefactor:
/// τ̃(S|_{[ℓ-1]}) ∪ (Exp_{s_ℓ} w)_# e(s_ℓ).
fn gamma_tilded(s: &Composition, spec: &SurfaceSpec) -> Result<Chain<SurfaceCell>> {
    let len = s.length();
    let last = s.parts()[len - 1];
    let gen = match last {
        1 => EdgeGen::E1,
        2 => EdgeGen::E2,
        _ => {
            return Err(Error::UnsupportedCell(format!(
                "∂^γ needs the attaching image of e({last}), outside the top slice"
            )))
        }
    };
    let prefix: Option<Composition> = if len > 1 {
        Some(Composition::new(s.parts()[..len - 1].to_vec())?)
    } else {
        None
    };
    let image = attach_word_image(gen, spec);
    let mut out = Chain::zero();
    for (word, c) in image.iter() {
        out.add(SurfaceCell { face_comp: prefix.clone(), edges: word.clone(), based: false }, c);
    }
    Ok(out)
}

/// Full boundary of a tilded top-slice cell [S] ∪ e_J whose edge factors all
/// carry a single point. The face factor contributes ∂^ν + (-1)^{|S|} ∂^λ +
/// (-1)^{|S|+ℓ-1} ∂^γ; the e_i(1) factors are cycles.
fn boundary_top_cell(cell: &SurfaceCell, spec: &SurfaceSpec) -> Result<Chain<SurfaceCell>> {
    if cell.based {
        return Err(Error::UnsupportedCell(
            "boundaries of based cells are not needed in the top slice".into(),
        ));
    }
    if cell.edges.iter().any(|&(_, s)| s != 1) {
        return Err(Error::UnsupportedCell(
            "boundary of an e(2) factor is not needed in the top slice".into(),
        ));
    }
    let mut out = Chain::zero();
    let Some(s) = &cell.face_comp else {
        // pure edge word built from e_i(1) factors: a cycle
        return Ok(out);
    };
    let edge_chain = Chain::term(cell.edges.clone(), 1);

    // ∂^ν and ∂^λ of the face factor keep the edge word
    let mut sphere_part = lexcell::boundary_nu(s, true);
    let lam_sign = if s.norm() % 2 == 0 { 1 } else { -1 };
    sphere_part.add_chain(lexcell::boundary_lambda(s, true, false), lam_sign);
    for (sphere_cell, c) in sphere_part.iter() {
        let comp = sphere_cell.factors()[0].1.clone();
        out.add(
            SurfaceCell {
                face_comp: Some(comp),
                edges: cell.edges.clone(),
                based: sphere_cell.based(),
            },
            c,
        );
    }

    // ∂^γ of the face factor, cupped into the existing edge word
    let gamma_sign = if (s.norm() as usize + s.length() - 1) % 2 == 0 { 1 } else { -1 };
    for (gcell, c) in gamma_tilded(s, spec)?.iter() {
        let gamma_words = Chain::term(gcell.edges.clone(), 1);
        for (word, wc) in cup_edge_cells(&gamma_words, &edge_chain)?.iter() {
            out.add(
                SurfaceCell { face_comp: gcell.face_comp.clone(), edges: word.clone(), based: false },
                gamma_sign * c * wc,
            );
        }
    }
    Ok(out)
}

/// The top three chain groups of Exp_k Σ and the two boundary maps between
/// them.
#[derive(Debug, Clone)]
pub struct TopSlice {
    pub spec: SurfaceSpec,
    pub k: u32,
    /// dimension 2k basis (the single cell 1̃(k))
    pub basis_top: Vec<SurfaceCell>,
    /// dimension 2k-1 basis
    pub basis_mid: Vec<SurfaceCell>,
    /// dimension 2k-2 basis
    pub basis_low: Vec<SurfaceCell>,
    /// ∂_{2k}: C_{2k} -> C_{2k-1}
    pub d_top: IntegerMatrix,
    /// ∂_{2k-1}: C_{2k-1} -> C_{2k-2}
    pub d_mid: IntegerMatrix,
}

/// Enumerate every cell of the standard structure in one fixed dimension,
/// subject to the subset-size bound. Edge multiplicities above two cannot
/// occur in the three top dimensions and are asserted away.
fn cells_of_dimension(spec: &SurfaceSpec, k: u32, dim: usize) -> Vec<SurfaceCell> {
    let n = spec.edge_count();
    let mut words: Vec<EdgeWord> = vec![Vec::new()];
    for e in 1..=n {
        let mut next = Vec::new();
        for w in &words {
            next.push(w.clone());
            for s in 1..=2u32 {
                if word_points(w) + s <= k {
                    let mut w2 = w.clone();
                    w2.push((e, s));
                    next.push(w2);
                }
            }
        }
        words = next;
    }
    let mut out = Vec::new();
    for based in [true, false] {
        let max_face = k - u32::from(based);
        for word in &words {
            let jw = word_points(word);
            if jw > max_face {
                continue;
            }
            // cells without a face factor (pure graph cells, or the vertex)
            let bare = SurfaceCell { face_comp: None, edges: word.clone(), based };
            if bare.dimension() == dim && bare.points() <= k && !(word.is_empty() && !based) && dim > 0
            {
                out.push(bare);
            }
            for j in 1..=max_face.saturating_sub(jw) {
                let dim_rest = dim as i64 - jw as i64 - j as i64;
                if dim_rest < 1 || dim_rest > j as i64 {
                    continue;
                }
                for comp in crate::partitions::compositions_of_length(j, dim_rest as usize) {
                    let cell = SurfaceCell { face_comp: Some(comp), edges: word.clone(), based };
                    debug_assert_eq!(cell.dimension(), dim);
                    if cell.points() <= k {
                        out.push(cell);
                    }
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Build bases for dimensions 2k, 2k-1, 2k-2 and the boundary matrices
/// ∂_{2k} and ∂_{2k-1}.
pub fn top_slice_complex(spec: &SurfaceSpec, k: u32) -> Result<TopSlice> {
    if k < 2 {
        return Err(Error::InvalidArgument("top_slice_complex requires k >= 2".into()));
    }
    let kk = k as usize;
    let basis_top = cells_of_dimension(spec, k, 2 * kk);
    let basis_mid = cells_of_dimension(spec, k, 2 * kk - 1);
    let basis_low = cells_of_dimension(spec, k, 2 * kk - 2);

    let index_mid: HashMap<&SurfaceCell, usize> =
        basis_mid.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let index_low: HashMap<&SurfaceCell, usize> =
        basis_low.iter().enumerate().map(|(i, c)| (c, i)).collect();

    let mut d_top = IntegerMatrix::zero(basis_mid.len(), basis_top.len());
    for (col, cell) in basis_top.iter().enumerate() {
        for (t, c) in boundary_top_cell(cell, spec)?.iter() {
            let row = *index_mid
                .get(t)
                .ok_or_else(|| Error::CrossCheckFailed(format!("missing mid cell {t}")))?;
            d_top.add_to(row, col, &BigInt::from(c));
        }
    }
    let mut d_mid = IntegerMatrix::zero(basis_low.len(), basis_mid.len());
    for (col, cell) in basis_mid.iter().enumerate() {
        for (t, c) in boundary_top_cell(cell, spec)?.iter() {
            let row = *index_low
                .get(t)
                .ok_or_else(|| Error::CrossCheckFailed(format!("missing low cell {t}")))?;
            d_mid.add_to(row, col, &BigInt::from(c));
        }
    }
    Ok(TopSlice { spec: *spec, k, basis_top, basis_mid, basis_low, d_top, d_mid })
}

/// (H_{2k}, H_{2k-1}) of Exp_k Σ.
pub fn top_homology(spec: &SurfaceSpec, k: u32) -> Result<(AbelianGroup, AbelianGroup)> {
    if k < 3 {
        return Err(Error::InvalidArgument(
            "top_homology requires k >= 3; Exp_2 = Sym_2 is covered by the cohomology ring".into(),
        ));
    }
    let slice = top_slice_complex(&spec.clone(), k)?;
    let h_top =
        intalg::homology_at(&slice.d_top, &IntegerMatrix::zero(slice.basis_top.len(), 0))?;
    let h_mid = intalg::homology_at(&slice.d_mid, &slice.d_top)?;
    Ok((h_top, h_mid))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(v: &[(u32, u32)]) -> EdgeWord {
        v.to_vec()
    }

    #[test]
    fn attach_images_match_displayed_chains() {
        let orientable2 = SurfaceSpec::orientable(2);
        assert!(attach_word_image(EdgeGen::E1, &orientable2).is_zero());

        let nonor3 = SurfaceSpec::non_orientable(3).unwrap();
        let img = attach_word_image(EdgeGen::E1, &nonor3);
        assert_eq!(img.len(), 3);
        for i in 1..=3 {
            assert_eq!(img.coeff(&word(&[(i, 1)])), 2);
        }

        let torus = SurfaceSpec::orientable(1);
        let img = attach_word_image(EdgeGen::E2, &torus);
        assert_eq!(img.len(), 1);
        assert_eq!(img.coeff(&word(&[(1, 1), (2, 1)])), 2);

        let klein = SurfaceSpec::non_orientable(2).unwrap();
        let img = attach_word_image(EdgeGen::E2, &klein);
        assert_eq!(img.coeff(&word(&[(1, 2)])), 2);
        assert_eq!(img.coeff(&word(&[(2, 2)])), 2);
        assert_eq!(img.coeff(&word(&[(1, 1), (2, 1)])), 4);
    }

    #[test]
    fn cup_products() {
        // odd-odd transposition changes sign
        let a = Chain::term(word(&[(2, 1)]), 1);
        let b = Chain::term(word(&[(1, 1)]), 1);
        let c = cup_edge_cells(&a, &b).unwrap();
        assert_eq!(c.coeff(&word(&[(1, 1), (2, 1)])), -1);
        // same-edge single points cancel
        let a = Chain::term(word(&[(1, 1)]), 1);
        assert!(cup_edge_cells(&a, &a).unwrap().is_zero());
        // even factors commute
        let a = Chain::term(word(&[(2, 2)]), 1);
        let b = Chain::term(word(&[(1, 1)]), 1);
        let c = cup_edge_cells(&a, &b).unwrap();
        assert_eq!(c.coeff(&word(&[(1, 1), (2, 2)])), 1);
        // piling three or more points on one edge escapes the fragment
        let a = Chain::term(word(&[(1, 1)]), 1);
        let b = Chain::term(word(&[(1, 2)]), 1);
        assert!(cup_edge_cells(&a, &b).is_err());
        assert!(cup_edge_cells(&b, &b).is_err());
    }

    #[test]
    fn top_cell_boundary_examples() {
        // orientable: the top cell is a cycle
        let spec = SurfaceSpec::orientable(1);
        let slice = top_slice_complex(&spec, 3).unwrap();
        assert_eq!(slice.basis_top.len(), 1);
        assert!(slice.d_top.is_zero());

        // RP²: ∂ 1̃(3) = ±2 · 1̃(2) ∪ e_1(1)
        let spec = SurfaceSpec::non_orientable(1).unwrap();
        let slice = top_slice_complex(&spec, 3).unwrap();
        let target = SurfaceCell {
            face_comp: Some(Composition::of(&[1, 1])),
            edges: word(&[(1, 1)]),
            based: false,
        };
        let row = slice.basis_mid.iter().position(|c| *c == target).unwrap();
        let v = slice.d_top.get(row, 0);
        assert!(v == BigInt::from(2) || v == BigInt::from(-2));
        assert_eq!(slice.d_top.nnz(), 1);
    }

    #[test]
    fn mid_basis_matches_expected_census() {
        // dim 2k-1 cells: 2̃_i(k) for i <= k-1 and 1̃(k-1) ∪ e_i(1)
        let spec = SurfaceSpec::orientable(2);
        let k = 4usize;
        let slice = top_slice_complex(&spec, k as u32).unwrap();
        assert_eq!(slice.basis_mid.len(), (k - 1) + spec.edge_count() as usize);
        assert_eq!(slice.basis_top.len(), 1);
        // dim 2k-2 census for the orientable surface:
        // (1(k-1)), 1̃(k-1), 3̃_i, 2̃_i 2̃_j, 2̃_i(k-1)∪e_j, 1̃(k-2)∪e_i∪e_j,
        // 1̃(k-2)∪e_i(2)
        let n = spec.edge_count() as usize;
        let expect =
            2 + (k - 2) + (k - 2) * (k - 3) / 2 + (k - 2) * n + n * (n - 1) / 2 + n;
        assert_eq!(slice.basis_low.len(), expect);
    }

    #[test]
    fn composition_of_boundaries_vanishes() {
        for k in 3..=5 {
            for spec in [
                SurfaceSpec::orientable(0),
                SurfaceSpec::orientable(1),
                SurfaceSpec::orientable(2),
                SurfaceSpec::non_orientable(1).unwrap(),
                SurfaceSpec::non_orientable(2).unwrap(),
                SurfaceSpec::non_orientable(3).unwrap(),
            ] {
                let slice = top_slice_complex(&spec, k).unwrap();
                assert!(
                    slice.d_mid.mul(&slice.d_top).unwrap().is_zero(),
                    "∂∂ != 0 for {spec}, k={k}"
                );
            }
        }
    }

    #[test]
    fn f_block_agrees_with_sphere_boundary() {
        let spec = SurfaceSpec::non_orientable(2).unwrap();
        let k = 4;
        let slice = top_slice_complex(&spec, k).unwrap();
        for (col, cell) in slice.basis_mid.iter().enumerate() {
            if cell.edges.is_empty() {
                let s = cell.face_comp.clone().unwrap();
                let sphere = lexcell::full_boundary(&lexcell::SphereCell::single(s, false));
                for (row, low) in slice.basis_low.iter().enumerate() {
                    if !low.edges.is_empty() {
                        continue;
                    }
                    let want = sphere.coeff(&lexcell::SphereCell::single(
                        low.face_comp.clone().unwrap(),
                        low.based,
                    ));
                    assert_eq!(slice.d_mid.get(row, col), BigInt::from(want));
                }
            }
        }
    }

    #[test]
    fn kernel_of_mid_boundary_matches_theorem_proof() {
        // orientable: kernel spanned by the 1̃(k-1)∪e_i(1); rank 2g
        let spec = SurfaceSpec::orientable(2);
        let slice = top_slice_complex(&spec, 4).unwrap();
        let ker = intalg::kernel_basis(&slice.d_mid);
        assert_eq!(ker.len(), 4);
        // non-orientable: rank 1, the symmetric combination of edge cells
        let spec = SurfaceSpec::non_orientable(3).unwrap();
        let slice = top_slice_complex(&spec, 4).unwrap();
        let ker = intalg::kernel_basis(&slice.d_mid);
        assert_eq!(ker.len(), 1);
        let edge_cols: Vec<usize> = slice
            .basis_mid
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.edges.is_empty())
            .map(|(i, _)| i)
            .collect();
        assert_eq!(edge_cols.len(), 3);
        let v = &ker[0];
        for (i, x) in v.iter().enumerate() {
            use num_traits::Zero;
            if edge_cols.contains(&i) {
                assert_eq!(x * x, BigInt::from(1));
            } else {
                assert!(x.is_zero());
            }
        }
    }

    #[test]
    fn theorem3_small_cases() {
        use AbelianGroup as G;
        let cases: Vec<(SurfaceSpec, u32, G, G)> = vec![
            (SurfaceSpec::orientable(2), 4, G::free(1), G::free(4)),
            (SurfaceSpec::non_orientable(1).unwrap(), 3, G::trivial(), G::with_torsion(0, vec![2])),
            (SurfaceSpec::orientable(0), 5, G::free(1), G::trivial()),
            (SurfaceSpec::orientable(1), 3, G::free(1), G::free(2)),
            (SurfaceSpec::non_orientable(2).unwrap(), 5, G::trivial(), G::with_torsion(0, vec![2])),
        ];
        for (spec, k, want_top, want_mid) in cases {
            let (h_top, h_mid) = top_homology(&spec, k).unwrap();
            assert_eq!(h_top, want_top, "{spec} k={k} top");
            assert_eq!(h_mid, want_mid, "{spec} k={k} mid");
        }
        assert!(top_homology(&SurfaceSpec::orientable(1), 2).is_err());
    }

    #[test]
    fn genus0_matches_sphere_module() {
        for k in 3..=5u32 {
            let spec = SurfaceSpec::orientable(0);
            let (h_top, h_mid) = top_homology(&spec, k).unwrap();
            let sphere = lexcell::homology_z(k, false).unwrap();
            assert_eq!(h_top, sphere[2 * k as usize]);
            assert_eq!(h_mid, sphere[2 * k as usize - 1]);
        }
    }
}
