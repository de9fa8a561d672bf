//! Serialized output. Every number is a decimal string.

use std::collections::BTreeMap;

use rnkit::auxdioph::LemmaReport;
use rnkit::classifier::{Classification, ClassifiedSolution, FamilyInfo, Mode, ScanRow, Solution};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceRecord {
    pub d1: String,
    pub d2: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsRecord {
    pub n_max: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z_bound: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionRecord {
    pub x: String,
    pub m: String,
    pub n: String,
    pub case: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
}

impl SolutionRecord {
    fn plain(s: &Solution, case: &str) -> Self {
        SolutionRecord {
            x: s.x.to_string(),
            m: s.m.to_string(),
            n: s.n.to_string(),
            case: case.to_string(),
            provenance: None,
        }
    }

    fn classified(c: &ClassifiedSolution) -> Self {
        let mut r = Self::plain(&c.solution, &c.case.to_string());
        r.provenance = Some(
            serde_json::to_value(c.provenance)
                .ok()
                .and_then(|v| v.as_str().map(str::to_string))
                .unwrap_or_default(),
        );
        r
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdicts {
    pub theorem_b_exception: bool,
    #[serde(default)]
    pub theorem_a_exception: bool,
    /// The count stays within the bound for this instance.
    #[serde(default)]
    pub consistent: bool,
    pub discrepancy: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyRecord {
    pub lambda: String,
    pub z1: String,
    pub x1: String,
    pub computed_x: String,
    pub closed_form_x: String,
    pub closed_form_matches: bool,
}

impl From<&FamilyInfo> for FamilyRecord {
    fn from(f: &FamilyInfo) -> Self {
        FamilyRecord {
            lambda: f.lambda.to_string(),
            z1: f.z1.to_string(),
            x1: f.x1.to_string(),
            computed_x: f.computed_x.to_string(),
            closed_form_x: f.closed_form_x.to_string(),
            closed_form_matches: f.closed_form_matches,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscrepancyRecord {
    pub structural_only: Vec<SolutionRecord>,
    pub oracle_only: Vec<SolutionRecord>,
}

/// One solved instance, from `solve` or one row of `scan`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub command: String,
    pub instance: InstanceRecord,
    pub bounds: BoundsRecord,
    pub solutions: Vec<SolutionRecord>,
    pub count: String,
    pub verdicts: Verdicts,
    pub elapsed_ms: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<FamilyRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub discrepancy_detail: Option<DiscrepancyRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub fallback: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl OutputRecord {
    pub fn from_classification(c: &Classification, elapsed_ms: u128) -> Self {
        let single = c.mode == Mode::SingleCoefficient;
        OutputRecord {
            command: "solve".into(),
            instance: InstanceRecord {
                d1: c.instance.d1().to_string(),
                d2: c.instance.d2().to_string(),
            },
            bounds: BoundsRecord {
                n_max: c.n_max.to_string(),
                z_bound: Some(c.z_bound.to_string()),
            },
            solutions: c.solutions.iter().map(SolutionRecord::classified).collect(),
            count: c.count.to_string(),
            verdicts: Verdicts {
                theorem_b_exception: !single && c.theorem_exception,
                theorem_a_exception: single && c.theorem_exception,
                consistent: c.theorem_consistent,
                discrepancy: c.has_discrepancy(),
            },
            elapsed_ms: elapsed_ms.to_string(),
            family: c.family.as_ref().map(FamilyRecord::from),
            discrepancy_detail: c.discrepancy.as_ref().map(|d| DiscrepancyRecord {
                structural_only: d.structural_only.iter().map(|s| SolutionRecord::plain(s, "structural")).collect(),
                oracle_only: d.oracle_only.iter().map(|s| SolutionRecord::plain(s, "brute-force-only")).collect(),
            }),
            fallback: c.fallback.clone(),
            notes: c.notes.clone(),
        }
    }

    pub fn from_scan_row(r: &ScanRow, n_max: u64, elapsed_ms: u128) -> Self {
        OutputRecord {
            command: "scan".into(),
            instance: InstanceRecord {
                d1: r.instance.d1().to_string(),
                d2: r.instance.d2().to_string(),
            },
            bounds: BoundsRecord {
                n_max: n_max.to_string(),
                z_bound: None,
            },
            solutions: r.solutions.iter().map(|s| SolutionRecord::plain(s, "brute-force-only")).collect(),
            count: r.count.to_string(),
            verdicts: Verdicts {
                theorem_b_exception: r.theorem_exception,
                theorem_a_exception: false,
                consistent: r.consistent,
                discrepancy: false,
            },
            elapsed_ms: elapsed_ms.to_string(),
            family: None,
            discrepancy_detail: None,
            fallback: Vec::new(),
            notes: Vec::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanSummary {
    pub command: String,
    pub d_max: String,
    pub n_max: String,
    pub instances: String,
    pub inconsistent: String,
    pub elapsed_ms: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRecord {
    pub lemma: String,
    pub variables: Vec<String>,
    pub bounds: BTreeMap<String, String>,
    pub claimed: Vec<Vec<String>>,
    pub found: Vec<Vec<String>>,
    pub verdict: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl From<&LemmaReport> for ReportRecord {
    fn from(r: &LemmaReport) -> Self {
        let tuples = |v: &[Vec<rnkit::Integer>]| {
            v.iter()
                .map(|t| t.iter().map(|x| x.to_string()).collect())
                .collect()
        };
        ReportRecord {
            lemma: r.lemma.clone(),
            variables: r.variables.clone(),
            bounds: r.bounds.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect(),
            claimed: tuples(&r.claimed),
            found: tuples(&r.found),
            verdict: r.verdict.to_string(),
            note: r.note.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyRecord {
    pub command: String,
    pub reports: Vec<ReportRecord>,
    pub confirmed: String,
    pub total: String,
    pub elapsed_ms: String,
}
