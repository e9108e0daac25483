//! Machine-readable reports. Field order is fixed by struct order and all
//! maps are ordered, so a rerun on the same inputs is byte-identical;
//! timing is only included on request for that reason.

use serde::Serialize;

use crate::zmodule::FGAbelianGroup;

#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub bundle: String,
    pub parameters: Parameters,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub degrees: Vec<DegreeReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<CheckReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hypotheses: Option<Hypotheses>,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
}

#[derive(Debug, Default, Serialize)]
pub struct Parameters {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degrees: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub flavor: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pairs: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_dim: Option<usize>,
}

#[derive(Debug, Serialize)]
pub struct DegreeReport {
    pub degree: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bredon: Option<GroupReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub twisted: Option<GroupReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub equal: Option<bool>,
}

#[derive(Debug, Serialize)]
pub struct GroupReport {
    pub rank: usize,
    pub torsion: Vec<String>,
    pub pretty: String,
}

impl GroupReport {
    pub fn of(g: &FGAbelianGroup) -> Self {
        GroupReport {
            rank: g.rank(),
            torsion: g.torsion().iter().map(|d| d.to_string()).collect(),
            pretty: g.describe(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl CheckReport {
    pub fn pass(name: &str) -> Self {
        CheckReport {
            name: name.to_string(),
            pass: true,
            witness: None,
        }
    }

    pub fn fail(name: &str, witness: String) -> Self {
        CheckReport {
            name: name.to_string(),
            pass: false,
            witness: Some(witness),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Hypotheses {
    pub g_connected: bool,
    pub fixed_base_vertex: bool,
    pub has_path_system: bool,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
            && self.degrees.iter().all(|d| d.equal != Some(false))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unequal_invariant_factors_can_never_pass() {
        let report = Report {
            command: "compare".into(),
            bundle: "x".into(),
            parameters: Parameters::default(),
            degrees: vec![DegreeReport {
                degree: 0,
                bredon: None,
                twisted: None,
                equal: Some(false),
            }],
            checks: vec![CheckReport::pass("everything_else")],
            hypotheses: None,
            status: String::new(),
            timing_ms: None,
        };
        assert!(!report.all_pass());
    }
}
