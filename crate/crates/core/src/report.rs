//! The `analyze` pipeline and its serialized document.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::Error;
use crate::identity::{format_rational, TwoTermIdentity};
use crate::oracle::{EquivalenceGraph, OracleOptions, DEFAULT_MAX_DEGREE};
use crate::perm::{format_perm, Notation, Permutation};
use crate::saturation::{
    analyze_general, ec_upper_bound, predicted_ec_degree, Flag, Saturation, SaturationError,
    SaturationOptions, SaturationReport,
};

pub const SCHEMA: &str = "evcom/1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityEcho {
    pub n: usize,
    pub sigma_oneline: String,
    pub sigma_cycles: String,
    pub q: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainEntry {
    pub k: usize,
    pub order: u128,
    pub is_full: bool,
    pub contains_alternating: bool,
}

/// `agrees` is `None` when the oracle was not run at this degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleCheck {
    pub k: usize,
    pub agrees: Option<bool>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Annotations {
    pub predicted_ec_degree: Option<usize>,
    pub ec_bound: Option<usize>,
    pub bound_respected: bool,
    pub stability_verified: Option<bool>,
    pub core_degree: Option<usize>,
    pub bordered_degree: Option<usize>,
    pub general_bound: Option<usize>,
    pub bordered_oracle_confirmed: Option<bool>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Resources {
    pub lifts_applied: u64,
    pub largest_order: u128,
    pub oracle_edges: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisDocument {
    pub schema: String,
    pub identity: IdentityEcho,
    pub chain: Vec<ChainEntry>,
    pub ec_degree: Option<usize>,
    pub nilpotency_degree: Option<usize>,
    pub classification: Vec<Flag>,
    pub oracle: Vec<OracleCheck>,
    pub annotations: Annotations,
    pub resources: Resources,
    pub warnings: Vec<String>,
    pub timing_ms: f64,
}

impl AnalysisDocument {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn oracle_disagrees(&self) -> bool {
        self.oracle.iter().any(|c| c.agrees == Some(false))
    }

    pub fn to_text(&self) -> String {
        let yes = |b: bool| if b { "yes" } else { "no" };
        let opt = |o: Option<usize>| o.map_or_else(|| "none".to_string(), |d| d.to_string());
        let id = &self.identity;
        let mut s = String::new();
        let _ = writeln!(s, "sigma: {} = {}", id.sigma_oneline, id.sigma_cycles);
        let _ = writeln!(s, "n: {}", id.n);
        let _ = writeln!(s, "q: {}", id.q);
        let flags: Vec<&str> = self.classification.iter().map(|f| f.as_str()).collect();
        let _ = writeln!(
            s,
            "classification: {}",
            if flags.is_empty() {
                "none".into()
            } else {
                flags.join(", ")
            }
        );
        let _ = writeln!(s, "{:>4} {:>12} {:>5} {:>5}", "k", "|H_k|", "full", "alt");
        for e in &self.chain {
            let _ = writeln!(
                s,
                "{:>4} {:>12} {:>5} {:>5}",
                e.k,
                e.order,
                yes(e.is_full),
                yes(e.contains_alternating)
            );
        }
        let _ = writeln!(s, "ec_degree: {}", opt(self.ec_degree));
        let _ = writeln!(s, "nilpotency_degree: {}", opt(self.nilpotency_degree));
        let a = &self.annotations;
        if let Some(p) = a.predicted_ec_degree {
            let _ = writeln!(s, "predicted_ec_degree: {p}");
        }
        if let Some(b) = a.ec_bound {
            let _ = writeln!(
                s,
                "ec_bound: {b} ({})",
                if a.bound_respected {
                    "respected"
                } else {
                    "exceeded"
                }
            );
        }
        if a.core_degree.is_some() || a.general_bound.is_some() {
            let _ = writeln!(s, "core_degree: {}", opt(a.core_degree));
            let _ = writeln!(s, "bordered_degree: {}", opt(a.bordered_degree));
            let _ = writeln!(s, "general_bound: {}", opt(a.general_bound));
        }
        if !self.oracle.is_empty() {
            let parts: Vec<String> = self
                .oracle
                .iter()
                .map(|c| {
                    let verdict = match c.agrees {
                        Some(true) => "agree",
                        Some(false) => "DISAGREE",
                        None => "skipped",
                    };
                    format!("k={} {verdict}", c.k)
                })
                .collect();
            let _ = writeln!(s, "oracle: {}", parts.join(", "));
        }
        for w in &self.warnings {
            let _ = writeln!(s, "warning: {w}");
        }
        let _ = writeln!(
            s,
            "resources: {} lifts, largest order {}, {} oracle edges",
            self.resources.lifts_applied, self.resources.largest_order, self.resources.oracle_edges
        );
        let _ = writeln!(s, "time: {:.1} ms", self.timing_ms);
        s
    }
}

#[derive(Debug, Clone)]
pub struct AnalyzeOptions {
    pub saturation: SaturationOptions,
    /// Oracle cross-checks run at every computed degree up to this one.
    pub oracle_max_k: usize,
    pub oracle: OracleOptions,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            saturation: SaturationOptions::default(),
            oracle_max_k: DEFAULT_MAX_DEGREE,
            oracle: OracleOptions::default(),
        }
    }
}

#[derive(Debug, Error)]
pub enum AnalyzeError {
    /// A cap stopped the run; the document covers what was computed.
    #[error("{error}")]
    Resource {
        error: Error,
        partial: Box<AnalysisDocument>,
    },
    #[error(transparent)]
    Failed(#[from] Error),
}

pub fn echo(identity: &TwoTermIdentity) -> IdentityEcho {
    IdentityEcho {
        n: identity.n(),
        sigma_oneline: format_perm(identity.sigma(), Notation::OneLine),
        sigma_cycles: format_perm(identity.sigma(), Notation::Cycles),
        q: format_rational(identity.q()),
    }
}

fn document(report: &SaturationReport, warnings: Vec<String>) -> AnalysisDocument {
    let identity = &report.identity;
    let moves_ends = !report.classification.contains(&Flag::FixesEndpoint);
    let unscaled = identity.is_unscaled();
    let ec_bound = (unscaled && moves_ends).then(|| ec_upper_bound(identity.n()));
    AnalysisDocument {
        schema: SCHEMA.into(),
        identity: echo(identity),
        chain: report
            .chain
            .iter()
            .map(|r| ChainEntry {
                k: r.k,
                order: r.order,
                is_full: r.is_full,
                contains_alternating: r.contains_alternating,
            })
            .collect(),
        ec_degree: report.ec_degree,
        nilpotency_degree: report.nilpotency_degree,
        classification: report.classification.iter().copied().collect(),
        oracle: Vec::new(),
        annotations: Annotations {
            predicted_ec_degree: predicted_ec_degree(identity),
            ec_bound,
            bound_respected: report.bound_2n_minus_3_respected,
            stability_verified: report.stability_verified,
            ..Annotations::default()
        },
        resources: Resources {
            lifts_applied: report.chain.iter().map(|r| r.lifts_applied).sum(),
            largest_order: report.chain.iter().map(|r| r.order).max().unwrap_or(1),
            oracle_edges: 0,
        },
        warnings,
        timing_ms: 0.0,
    }
}

/// Compares the oracle's view of degree `k` with the saturated group.
fn cross_check(
    identity: &TwoTermIdentity,
    saturation: &Saturation,
    k: usize,
    oracle: &OracleOptions,
) -> Result<(bool, u64), Error> {
    let graph = EquivalenceGraph::build(identity, k, oracle)?;
    let group = saturation
        .group(k)
        .ok_or_else(|| Error::Invariant(format!("degree {k} missing from the chain")))?;
    let vanishes = graph.vanishes(&Permutation::identity(k))?;
    let agrees = if group.is_nilpotent() || vanishes {
        group.is_nilpotent() == vanishes
    } else {
        let from_oracle: BTreeSet<Permutation> = graph.identity_group().into_iter().collect();
        let from_engine: BTreeSet<Permutation> = group.identity_elements()?.into_iter().collect();
        from_oracle == from_engine
    };
    Ok((agrees, graph.edges_inserted()))
}

/// Saturates, annotates, and cross-checks one identity.
pub fn analyze(
    identity: &TwoTermIdentity,
    options: &AnalyzeOptions,
) -> Result<AnalysisDocument, AnalyzeError> {
    let start = Instant::now();
    let mut warnings = Vec::new();
    let saturation = match Saturation::run(identity, &options.saturation) {
        Ok(s) => s,
        Err(SaturationError::Resource { error, partial }) => {
            let mut doc = document(&partial, vec![format!("stopped early: {error}")]);
            doc.oracle = partial
                .chain
                .iter()
                .map(|r| OracleCheck {
                    k: r.k,
                    agrees: None,
                })
                .collect();
            doc.timing_ms = start.elapsed().as_secs_f64() * 1e3;
            return Err(AnalyzeError::Resource {
                error,
                partial: Box::new(doc),
            });
        }
        Err(SaturationError::Other(e)) => return Err(e.into()),
    };
    let report = saturation.report();

    if let (Some(p), Some(c)) = (predicted_ec_degree(identity), report.ec_degree) {
        if p != c {
            return Err(Error::Invariant(format!(
                "computed degree {c} disagrees with the predicted degree {p} for {}",
                identity.sigma()
            ))
            .into());
        }
    }
    let flags = &report.classification;
    if flags.contains(&Flag::FixesEndpoint) && !flags.contains(&Flag::Vacuous) {
        warnings.push(
            "sigma fixes an endpoint: every consequence respects the border, so H_k never reaches S_k; \
             see the bordered degree"
                .into(),
        );
    }
    if flags.contains(&Flag::Vacuous) && identity.is_unscaled() {
        warnings.push("sigma is the identity and q = 1: the identity is vacuous".into());
    }
    if report.ec_degree.is_none()
        && report.nilpotency_degree.is_none()
        && !flags.contains(&Flag::Vacuous)
    {
        warnings.push(format!(
            "no conclusion up to degree {}",
            report.max_computed_degree()
        ));
    }
    if !report.bound_2n_minus_3_respected {
        warnings.push(format!(
            "degree exceeds the expected ceiling of {}",
            ec_upper_bound(identity.n())
        ));
    }

    let mut doc = document(report, Vec::new());

    if flags.contains(&Flag::FixesEndpoint) || !identity.is_unscaled() {
        match analyze_general(identity, &options.saturation, &options.oracle) {
            Ok(general) => {
                doc.annotations.core_degree = general.core_degree;
                doc.annotations.bordered_degree = general.bordered_degree;
                doc.annotations.general_bound = general.general_bound;
                doc.annotations.bordered_oracle_confirmed = general.oracle_confirmed;
                if general.oracle_confirmed == Some(false) {
                    warnings.push("oracle does not confirm the bordered degree".into());
                }
            }
            Err(e) => warnings.push(format!("bordered analysis skipped: {}", e.error())),
        }
    }

    let limit = options.oracle_max_k.min(options.oracle.max_degree());
    for r in &report.chain {
        if r.k > limit {
            warnings.push(format!(
                "oracle skipped at k = {}: above the oracle limit {limit}",
                r.k
            ));
            doc.oracle.push(OracleCheck {
                k: r.k,
                agrees: None,
            });
            continue;
        }
        let (agrees, edges) = cross_check(identity, &saturation, r.k, &options.oracle)?;
        if !agrees {
            warnings.push(format!(
                "oracle disagrees with the saturated group at k = {}",
                r.k
            ));
        }
        doc.resources.oracle_edges += edges;
        doc.oracle.push(OracleCheck {
            k: r.k,
            agrees: Some(agrees),
        });
    }
    doc.warnings = warnings;
    doc.timing_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(doc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unscaled(s: &str) -> TwoTermIdentity {
        TwoTermIdentity::unscaled(s.parse().unwrap())
    }

    #[test]
    fn long_element_document() {
        let doc = analyze(&unscaled("[5,4,3,2,1]"), &AnalyzeOptions::default()).unwrap();
        assert_eq!(doc.ec_degree, Some(7));
        assert_eq!(doc.annotations.predicted_ec_degree, Some(7));
        assert_eq!(doc.classification, vec![Flag::LongElement]);
        assert_eq!(doc.identity.sigma_cycles, "(1 5)(2 4)");
        let checked: Vec<_> = doc.oracle.iter().filter(|c| c.agrees.is_some()).collect();
        assert!(checked.iter().all(|c| c.agrees == Some(true)));
        assert_eq!(checked.len(), 4);
        assert!(doc.to_text().contains("ec_degree: 7"));
    }

    #[test]
    fn json_round_trip_keeps_nulls() {
        let mut doc = analyze(&unscaled("[3,2,1]"), &AnalyzeOptions::default()).unwrap();
        doc.timing_ms = 0.906_126_000_000_000_1;
        let json = doc.to_json();
        assert!(json.contains("\"nilpotency_degree\": null"));
        assert!(json.contains("\"schema\": \"evcom/1\""));
        assert_eq!(AnalysisDocument::from_json(&json).unwrap(), doc);
    }

    #[test]
    fn scaled_document() {
        let id = TwoTermIdentity::with_integer_q("[2,1]".parse().unwrap(), -1).unwrap();
        let doc = analyze(&id, &AnalyzeOptions::default()).unwrap();
        assert_eq!(doc.nilpotency_degree, Some(3));
        assert_eq!(doc.ec_degree, None);
        assert_eq!(doc.identity.q, "-1");
        assert!(doc.oracle.iter().all(|c| c.agrees == Some(true)));
    }

    #[test]
    fn endpoint_fixing_document() {
        let doc = analyze(&unscaled("[1,3,2,4]"), &AnalyzeOptions::default()).unwrap();
        assert_eq!(doc.ec_degree, None);
        assert_eq!(doc.annotations.bordered_degree, Some(4));
        assert_eq!(doc.annotations.bordered_oracle_confirmed, Some(true));
        assert!(doc.warnings.iter().any(|w| w.contains("endpoint")));
        assert!(!doc.oracle_disagrees());
    }

    #[test]
    fn resource_cap_yields_partial_document() {
        let options = AnalyzeOptions {
            saturation: SaturationOptions {
                enumeration_cap: 10,
                ..SaturationOptions::default()
            },
            ..AnalyzeOptions::default()
        };
        match analyze(&unscaled("[1,3,2,5,4,6]"), &options) {
            Err(AnalyzeError::Resource { partial, .. }) => {
                assert!(!partial.chain.is_empty());
                assert!(partial.warnings[0].contains("stopped early"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
