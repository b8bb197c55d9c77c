//! JSON shapes written by the CLI. Every index is 1-based and every list is
//! in ascending or algorithm order, so identical inputs give identical bytes.

use mlu_core::partitions::{block_lower_self_partition, block_upper_self_partition};
use mlu_core::{
    lu_existence_condition, strategy_min_blocks, strategy_permutation, subdiagonal_bounds,
    varga_cai_condition, Check, ClassList, FactorizationKind, MMatrix, OrderedPartition,
    SingularStructure, SplitJK, Tolerances, VerificationReport,
};
use serde::Serialize;

pub fn plus_one(v: &[usize]) -> Vec<usize> {
    v.iter().map(|x| x + 1).collect()
}

pub fn blocks(p: &OrderedPartition) -> Vec<Vec<usize>> {
    p.blocks().iter().map(|b| plus_one(b)).collect()
}

#[derive(Debug, Serialize)]
pub struct ClassEntry {
    pub vertices: Vec<usize>,
    pub singular: bool,
}

#[derive(Debug, Serialize)]
pub struct AnalysisReport {
    pub n: usize,
    pub z_matrix: bool,
    pub m_matrix: bool,
    pub lower_self_partition: Vec<Vec<usize>>,
    pub upper_self_partition: Vec<Vec<usize>>,
    /// `None` when the matrix is not an M-matrix (only with `--no-mcheck`).
    pub classes: Option<Vec<ClassEntry>>,
    pub singular_classes: Option<Vec<Vec<usize>>>,
    pub mu: Option<Vec<usize>>,
    #[serde(rename = "T")]
    pub t: Option<Vec<Vec<usize>>>,
    #[serde(rename = "F")]
    pub f: Option<Vec<Vec<usize>>>,
    pub varga_cai: Option<bool>,
    pub lu_exists: Option<bool>,
    pub subdiagonal_bounds: Option<[usize; 2]>,
    #[serde(rename = "J")]
    pub j: Option<Vec<usize>>,
    #[serde(rename = "K")]
    pub k: Option<Vec<usize>>,
    pub permutation: Option<Vec<usize>>,
}

fn class_entries(c: &ClassList) -> Vec<ClassEntry> {
    let flags = c.singular.clone().unwrap_or_else(|| vec![false; c.len()]);
    c.classes
        .iter()
        .zip(flags)
        .map(|(v, singular)| ClassEntry {
            vertices: plus_one(v),
            singular,
        })
        .collect()
}

pub fn analysis(a: &MMatrix, s: Option<&SingularStructure>, tol: &Tolerances) -> AnalysisReport {
    let mut r = AnalysisReport {
        n: a.n(),
        z_matrix: a.is_z_matrix(),
        m_matrix: a.is_z_matrix() && a.is_m_matrix(tol),
        lower_self_partition: blocks(&block_lower_self_partition(a)),
        upper_self_partition: blocks(&block_upper_self_partition(a)),
        classes: None,
        singular_classes: None,
        mu: None,
        t: None,
        f: None,
        varga_cai: None,
        lu_exists: None,
        subdiagonal_bounds: None,
        j: None,
        k: None,
        permutation: None,
    };
    if let Some(s) = s {
        let split = strategy_min_blocks(s);
        let (lo, hi) = subdiagonal_bounds(s);
        r.classes = Some(class_entries(&s.all_classes));
        r.singular_classes = Some(s.classes.iter().map(|c| plus_one(c)).collect());
        r.mu = Some(plus_one(&s.mu));
        r.t = Some(s.t.iter().map(|x| plus_one(&x.to_vec())).collect());
        r.f = Some(s.f.iter().map(|x| plus_one(&x.to_vec())).collect());
        r.varga_cai = Some(varga_cai_condition(s));
        r.lu_exists = Some(lu_existence_condition(s));
        r.subdiagonal_bounds = Some([lo, hi]);
        r.j = Some(split.j.iter().map(|x| x + 1).collect());
        r.k = Some(split.k.iter().map(|x| x + 1).collect());
        r.permutation = strategy_permutation(s).ok().map(|p| plus_one(p.order()));
    }
    r
}

#[derive(Debug, Serialize)]
pub struct Verification {
    pub kind: FactorizationKind,
    pub overall: bool,
    pub checks: Vec<Check>,
}

impl From<VerificationReport> for Verification {
    fn from(r: VerificationReport) -> Self {
        Verification {
            kind: r.kind,
            overall: r.overall,
            checks: r.checks,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Metadata {
    pub tool: &'static str,
    pub version: &'static str,
    pub generated_unix_seconds: u64,
}

impl Metadata {
    pub fn now() -> Self {
        Metadata {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            generated_unix_seconds: std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct FactorReport {
    pub mode: String,
    pub n: usize,
    #[serde(rename = "J", skip_serializing_if = "Option::is_none")]
    pub j: Option<Vec<usize>>,
    #[serde(rename = "K", skip_serializing_if = "Option::is_none")]
    pub k: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub permutation: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chi: Option<Vec<[usize; 2]>>,
    pub psi: Vec<Vec<usize>>,
    pub upsilon: Vec<Vec<usize>>,
    pub files: Vec<String>,
    pub verification: Verification,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Metadata>,
}

pub fn split_json(split: &SplitJK) -> (Vec<usize>, Vec<usize>) {
    (
        split.j.iter().map(|x| x + 1).collect(),
        split.k.iter().map(|x| x + 1).collect(),
    )
}

#[derive(Debug, Serialize)]
pub struct SweepReport {
    pub count: usize,
    pub max_n: usize,
    pub seed: u64,
    pub runs: usize,
    pub failed: usize,
    pub failures: Vec<mlu_core::SweepOutcome>,
}
