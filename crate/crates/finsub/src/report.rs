//! Report types shared by the CLI and the golden-file tests: canonical text
//! tables, JSON twins that round-trip through serde, and flat CSV rows.

use crate::intalg::AbelianGroup;
use crate::lexcell::{self, ClippedCube};
use crate::ssoracle::OracleReport;
use crate::surface::SurfaceSpec;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// Coefficient ring selector for homology reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Coefficients {
    #[serde(rename = "Z")]
    Integral,
    #[serde(rename = "Q")]
    Rational,
}

impl std::fmt::Display for Coefficients {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Coefficients::Integral => write!(f, "Z"),
            Coefficients::Rational => write!(f, "Q"),
        }
    }
}

fn rational_group(rank: usize) -> String {
    match rank {
        0 => "0".to_string(),
        1 => "Q".to_string(),
        r => format!("Q^{r}"),
    }
}

/// Homology table of one Exp_k S² space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SphereReport {
    pub k: u32,
    pub based: bool,
    pub coefficients: Coefficients,
    /// For rational coefficients the groups are free of the Betti rank.
    pub groups: Vec<AbelianGroup>,
    pub euler_characteristic: i64,
    pub checks_passed: bool,
}

pub fn sphere_report(k: u32, based: bool, coefficients: Coefficients) -> Result<SphereReport> {
    let complex = lexcell::build_complex(k, based, 1)?;
    let groups = match coefficients {
        Coefficients::Integral => complex.homology_z()?,
        Coefficients::Rational => complex.betti_q().into_iter().map(AbelianGroup::free).collect(),
    };
    let euler = complex.complex.euler_characteristic();
    let chi_ok = k == 1 || euler == if based { 2 } else { 3 };
    let checks_passed = complex.complex.boundaries_square_to_zero() && chi_ok;
    Ok(SphereReport { k, based, coefficients, groups, euler_characteristic: euler, checks_passed })
}

pub fn sphere_table(r: &SphereReport) -> String {
    let mut s = String::new();
    let space = if r.based { format!("Exp_{}(S^2, v)", r.k) } else { format!("Exp_{}(S^2)", r.k) };
    s.push_str(&format!("space: {space}\ncoefficients: {}\n", r.coefficients));
    for (d, g) in r.groups.iter().enumerate() {
        match r.coefficients {
            Coefficients::Integral => s.push_str(&format!("H_{d} = {g}\n")),
            Coefficients::Rational => s.push_str(&format!("H_{d} = {}\n", rational_group(g.free_rank))),
        }
    }
    s.push_str(&format!("chi = {}\n", r.euler_characteristic));
    s.push_str(&format!("checks: {}\n", if r.checks_passed { "ok" } else { "FAILED" }));
    s
}

pub fn sphere_csv(r: &SphereReport) -> String {
    let mut s = String::from("k,based,coefficients,dim,group\n");
    for (d, g) in r.groups.iter().enumerate() {
        let group = match r.coefficients {
            Coefficients::Integral => g.to_string(),
            Coefficients::Rational => rational_group(g.free_rank),
        };
        s.push_str(&format!("{},{},{},{},{}\n", r.k, r.based, r.coefficients, d, group));
    }
    s
}

/// Top homology of Exp_k Σ for a closed surface.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurfaceReport {
    pub genus: u32,
    pub orientable: bool,
    pub k: u32,
    pub h_top: AbelianGroup,
    pub h_mid: AbelianGroup,
}

pub fn surface_report(spec: &SurfaceSpec, k: u32) -> Result<SurfaceReport> {
    let (h_top, h_mid) = crate::surface::top_homology(spec, k)?;
    Ok(SurfaceReport { genus: spec.genus, orientable: spec.orientable, k, h_top, h_mid })
}

pub fn surface_table(r: &SurfaceReport) -> String {
    let orientability = if r.orientable { "orientable" } else { "non-orientable" };
    format!(
        "surface: {} genus {}, k = {}\nH_{} = {}\nH_{} = {}\n",
        orientability,
        r.genus,
        r.k,
        2 * r.k,
        r.h_top,
        2 * r.k - 1,
        r.h_mid
    )
}

pub fn surface_csv(r: &SurfaceReport) -> String {
    let mut s = String::from("genus,orientable,k,dim,group\n");
    s.push_str(&format!("{},{},{},{},{}\n", r.genus, r.orientable, r.k, 2 * r.k, r.h_top));
    s.push_str(&format!("{},{},{},{},{}\n", r.genus, r.orientable, r.k, 2 * r.k - 1, r.h_mid));
    s
}

/// The cohomology table of Exp_3 Σ_g with the optional Euler cross-check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Exp3Report {
    pub genus: u32,
    pub table: Vec<AbelianGroup>,
    pub euler_characteristic: Option<i64>,
}

pub fn exp3_report(genus: u32, check_euler: bool) -> Result<Exp3Report> {
    let table = crate::symring::exp3_cohomology(genus)?;
    let euler = if check_euler { Some(crate::symring::euler_exp3(genus)?) } else { None };
    Ok(Exp3Report { genus, table, euler_characteristic: euler })
}

pub fn exp3_table(r: &Exp3Report) -> String {
    let mut s = format!("Exp_3 of the orientable surface of genus {}\n", r.genus);
    for (i, g) in r.table.iter().enumerate() {
        s.push_str(&format!("H^{i} = {g}\n"));
    }
    if let Some(chi) = r.euler_characteristic {
        s.push_str(&format!("chi = {chi} (three-way cross-check passed)\n"));
    }
    s
}

pub fn exp3_csv(r: &Exp3Report) -> String {
    let mut s = String::from("genus,i,group\n");
    for (i, g) in r.table.iter().enumerate() {
        s.push_str(&format!("{},{},{}\n", r.genus, i, g));
    }
    s
}

/// Rank-and-homology table of a clipped cube complex with exactness verdicts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClippedRow {
    pub grade: usize,
    pub dim: usize,
    pub cells: usize,
    pub boundary_rank: usize,
    pub homology: AbelianGroup,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClippedReport {
    pub k: u32,
    pub rational_basis: bool,
    pub rows: Vec<ClippedRow>,
    /// Exact over Q at every grade 1..k-2?
    pub q_exact_interior: bool,
    /// Trivial integral homology at grade k-2?
    pub z_exact_at_k_minus_2: bool,
}

pub fn clipped_report(k: u32, rational_basis: bool) -> Result<ClippedReport> {
    if k < 3 {
        return Err(Error::InvalidArgument("the clipped cube report needs k >= 3".into()));
    }
    let cc: ClippedCube = lexcell::clipped_cube(k, rational_basis)?;
    let mut rows = Vec::new();
    let mut q_exact = true;
    for l in (1..=k as usize).rev() {
        let h = cc.homology(l)?;
        if l <= k as usize - 2 && h.free_rank != 0 {
            q_exact = false;
        }
        rows.push(ClippedRow {
            grade: l,
            dim: k as usize + l,
            cells: cc.grades[l].len(),
            boundary_rank: cc.boundary_rank(l),
            homology: h,
        });
    }
    let z_exact = cc.homology(k as usize - 2)?.is_trivial();
    Ok(ClippedReport {
        k,
        rational_basis,
        rows,
        q_exact_interior: q_exact,
        z_exact_at_k_minus_2: z_exact,
    })
}

pub fn clipped_table(r: &ClippedReport) -> String {
    let basis = if r.rational_basis { "rational" } else { "integer" };
    let mut s = format!("clipped cube complex, k = {} ({basis} basis)\n", r.k);
    for row in &r.rows {
        s.push_str(&format!(
            "grade {} (dim {}): cells {}, boundary rank {}, H = {}\n",
            row.grade, row.dim, row.cells, row.boundary_rank, row.homology
        ));
    }
    s.push_str(&format!(
        "exact over Q at grades 1..{}: {}\n",
        r.k - 2,
        if r.q_exact_interior { "yes" } else { "NO" }
    ));
    s.push_str(&format!(
        "exact over Z at grade {}: {}\n",
        r.k - 2,
        if r.z_exact_at_k_minus_2 { "yes" } else { "NO" }
    ));
    s
}

pub fn clipped_csv(r: &ClippedReport) -> String {
    let mut s = String::from("k,rational,grade,dim,cells,boundary_rank,homology\n");
    for row in &r.rows {
        s.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            r.k, r.rational_basis, row.grade, row.dim, row.cells, row.boundary_rank, row.homology
        ));
    }
    s
}

/// Serializable twin of an oracle run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleDimJson {
    pub dim: usize,
    pub oracle: AbelianGroup,
    pub predicted: AbelianGroup,
    pub matches: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleReportJson {
    pub space: String,
    pub k: usize,
    pub dims: Vec<OracleDimJson>,
    pub counts: Vec<u64>,
    pub total_count: u64,
    pub soft_note: Option<String>,
    pub all_match: bool,
}

impl From<&OracleReport> for OracleReportJson {
    fn from(r: &OracleReport) -> Self {
        OracleReportJson {
            space: r.space.name().to_string(),
            k: r.k,
            dims: r
                .dims
                .iter()
                .map(|d| OracleDimJson {
                    dim: d.dim,
                    oracle: d.oracle.clone(),
                    predicted: d.predicted.clone(),
                    matches: d.matches,
                })
                .collect(),
            counts: r.counts.clone(),
            total_count: r.total_count,
            soft_note: r.soft_note.clone(),
            all_match: r.all_match,
        }
    }
}

pub fn oracle_table(r: &OracleReportJson) -> String {
    let mut s = format!("oracle: space {}, k = {}\n", r.space, r.k);
    let counts: Vec<String> = r.counts.iter().map(|c| c.to_string()).collect();
    s.push_str(&format!(
        "nondegenerate simplices by dimension: {} (total {})\n",
        counts.join(" "),
        r.total_count
    ));
    if let Some(note) = &r.soft_note {
        s.push_str(note);
        s.push('\n');
    }
    for d in &r.dims {
        s.push_str(&format!(
            "dim {}: oracle {}, predicted {} -> {}\n",
            d.dim,
            d.oracle,
            d.predicted,
            if d.matches { "match" } else { "MISMATCH" }
        ));
    }
    if !r.dims.is_empty() {
        s.push_str(&format!(
            "result: {}\n",
            if r.all_match { "all compared dimensions agree" } else { "DISAGREEMENT" }
        ));
    }
    s
}

pub fn oracle_csv(r: &OracleReportJson) -> String {
    let mut s = String::from("space,k,dim,oracle,predicted,matches\n");
    for d in &r.dims {
        s.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.space, r.k, d.dim, d.oracle, d.predicted, d.matches
        ));
    }
    s
}
