//! The JSON report and its text rendering.

use std::collections::BTreeMap;

use serde::Serialize;

use super::pipeline::SpotCheck;
use super::scan::NormalScan;
use crate::duality::{AsVerdict, ExtTable, InvariantReport, RigidityVerdict};
use crate::hilbert::GkEstimate;
use crate::resolution::{BettiEntry, GldimVerdict, KoszulVerdict};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Bounds {
    pub degree: u32,
    pub homological: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GroebnerSection {
    pub rules_by_degree: BTreeMap<u32, usize>,
    pub globally_complete: bool,
    pub complete_below: u32,
    pub confluence_spot_check: SpotCheck,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HilbertSection {
    pub dims: Vec<u64>,
    pub certified_to: u32,
    pub claim: Option<String>,
    pub claim_ok: Option<bool>,
    pub gk_estimate: Option<GkEstimate>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BettiSection {
    pub entries: Vec<BettiEntry>,
    pub certified_internal: u32,
    pub certified_homological: usize,
    pub gldim: GldimVerdict,
    pub koszul: Option<KoszulVerdict>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtSection {
    pub left: ExtTable,
    pub right: ExtTable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HochschildSection {
    pub bimodule_betti: Vec<BettiEntry>,
    pub matches_one_sided: bool,
    pub table: ExtTable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantsSection {
    pub fhtr: Option<usize>,
    #[serde(rename = "htr_QA_conditional")]
    pub htr_qa_conditional: Option<usize>,
    pub hammerhead: Option<usize>,
    pub statements: Vec<String>,
    pub commentary: Vec<String>,
}

impl From<&InvariantReport> for InvariantsSection {
    fn from(r: &InvariantReport) -> Self {
        InvariantsSection {
            fhtr: r.fhtr,
            htr_qa_conditional: r.htr_qa_conditional,
            hammerhead: r.hammerhead,
            statements: r.statements.clone(),
            commentary: r.commentary.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub algebra: String,
    pub field: String,
    pub bounds: Bounds,
    pub groebner: Option<GroebnerSection>,
    pub hilbert: Option<HilbertSection>,
    pub betti: Option<BettiSection>,
    #[serde(rename = "ext_k_A")]
    pub ext_k_a: Option<ExtSection>,
    pub hochschild: Option<HochschildSection>,
    pub as_verdict: Option<AsVerdict>,
    pub rigidity: Option<RigidityVerdict>,
    pub invariants: Option<InvariantsSection>,
    pub normal_elements: Option<NormalScan>,
    pub unchecked_hypotheses: Vec<String>,
    pub mismatches: Vec<String>,
}

impl Report {
    pub fn new(algebra: &str, field: &str, bounds: Bounds) -> Self {
        Report {
            algebra: algebra.to_string(),
            field: field.to_string(),
            bounds,
            groebner: None,
            hilbert: None,
            betti: None,
            ext_k_a: None,
            hochschild: None,
            as_verdict: None,
            rigidity: None,
            invariants: None,
            normal_elements: None,
            unchecked_hypotheses: Vec::new(),
            mismatches: Vec::new(),
        }
    }

    /// Pretty JSON with a trailing newline; byte-identical across runs.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

pub fn describe_gldim(g: &GldimVerdict) -> String {
    match g {
        GldimVerdict::Exact { n, certificate } => format!("{n} ({certificate})"),
        GldimVerdict::AtLeast { n } => format!(">= {n} (not closed in the window)"),
    }
}

pub fn describe_koszul(k: &KoszulVerdict) -> String {
    match k {
        KoszulVerdict::NotApplicable => "not applicable (generators not all in degree 1)".into(),
        KoszulVerdict::Koszul { h, d } => format!("Koszul up to ({h}, {d})"),
        KoszulVerdict::OffDiagonal { i, j } => format!("not Koszul: beta_({i},{j}) is nonzero"),
        KoszulVerdict::IdentityFails { degree } => format!("not Koszul: numerical identity fails in degree {degree}"),
    }
}

pub fn describe_as(v: &AsVerdict) -> String {
    match v {
        AsVerdict::Regular { n, l } => format!("regular(n={n}, l={l})"),
        AsVerdict::GorensteinConditionsHold { n, l } => {
            format!("Gorenstein conditions hold at (n={n}, l={l}); global dimension not certified")
        }
        AsVerdict::Fails { side, i, j, dim, reason } => {
            format!("fails: {side} Ext^{i} in degree {j} has dimension {dim} ({reason})")
        }
        AsVerdict::Inconclusive { reason } => format!("inconclusive ({reason})"),
    }
}

/// Nonzero certified entries as `i:j=dim` items, or `0` when there are none.
pub fn describe_ext(t: &ExtTable) -> String {
    let items: Vec<String> = t.certified_nonzero().map(|e| format!("Ext^{}_{}={}", e.i, e.j, e.dim)).collect();
    if items.is_empty() {
        "0 in the certified window".into()
    } else {
        items.join(" ")
    }
}
