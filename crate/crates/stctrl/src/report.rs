//! Analysis dispatch and reporting: turn a parsed network document plus
//! options into a JSON or text report. Reports are deterministic
//! byte-for-byte for a fixed (document, options, seed, version).

use serde::Serialize;
use thiserror::Error;

use crate::decision::{
    is_structurally_controllable, is_structurally_target_controllable, monte_carlo_verify,
    suggest_input_augmentation, Verdict,
};
use crate::document::NetworkDocument;
use crate::graph::{SystemDigraph, TargetSet, Vertex};
use crate::numeric::{NumericError, Tolerances};

#[derive(Debug, Error)]
pub enum AnalysisError {
    #[error("{0}")]
    Input(String),
    #[error("numeric failure: {0}")]
    Numeric(#[from] NumericError),
}

/// Which property to decide.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Check {
    Full,
    Target,
}

/// Options mirroring the CLI flags.
#[derive(Clone, Debug)]
pub struct AnalysisOptions {
    /// None picks `Target` when targets are available, `Full` otherwise.
    pub check: Option<Check>,
    /// Overrides the document's target list (1-based).
    pub targets: Option<Vec<usize>>,
    pub verify: bool,
    pub trials: usize,
    pub seed: u64,
    /// Overrides the default rank tolerance.
    pub rank_rel: Option<f64>,
    /// Include the saturating matching witness in the report.
    pub certificate: bool,
    /// Run the input-augmentation heuristic.
    pub augment: bool,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        Self {
            check: None,
            targets: None,
            verify: false,
            trials: 20,
            seed: 0,
            rank_rel: None,
            certificate: false,
            augment: false,
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Certificates {
    /// Required states no input reaches (1-based).
    pub unreachable: Vec<usize>,
    /// States S with |N(S)| < |S| (1-based), empty when Hall holds.
    pub violating_set: Vec<usize>,
    /// N(S) of the violating set, as vertex labels (x3, u1, ...).
    pub violating_neighborhood: Vec<String>,
    /// Saturating matching as [left label, right label] pairs; filled only
    /// with the certificate option.
    pub matching: Vec<[String; 2]>,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct MonteCarloReport {
    pub trials: usize,
    pub seed: u64,
    pub required_rank: usize,
    pub ranks: Vec<usize>,
    pub agreement: f64,
    pub anomalies: Vec<usize>,
    pub normalized: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct ToleranceReport {
    pub rank_rel: f64,
    pub rank_abs: f64,
    pub eig_zero_factor: f64,
    pub eig_gap_factor: f64,
    pub pbh: f64,
    pub weight_floor: f64,
}

/// The analysis report. Serialized field order is fixed, collections are
/// sorted, and Monte-Carlo runs are seeded, so serialization is reproducible.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Report {
    /// "controllability" or "target-controllability".
    pub question: String,
    /// Target states (1-based) for target questions.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub targets: Option<Vec<usize>>,
    pub decision: bool,
    pub certificates: Certificates,
    pub monte_carlo: Option<MonteCarloReport>,
    /// Suggested [state, input] attachments (1-based) when requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub augmentation: Option<Vec<[usize; 2]>>,
    pub tolerances: ToleranceReport,
    pub version: String,
}

fn certificates_of(verdict: &Verdict, digraph: &SystemDigraph, with_matching: bool) -> Certificates {
    let unreachable = verdict.unreachable.iter().map(|&x| x + 1).collect();
    let (violating_set, violating_neighborhood) = match &verdict.hall.violating_set {
        Some(s) => {
            let labels = digraph
                .neighborhood(s)
                .into_iter()
                .map(|v| v.to_string())
                .collect();
            (s.iter().map(|&x| x + 1).collect(), labels)
        }
        None => (Vec::new(), Vec::new()),
    };
    let matching = match (&verdict.hall.saturating_matching, with_matching) {
        (Some(m), true) => m
            .pairs
            .iter()
            .map(|&(left, right)| [left.to_string(), Vertex::State(right).to_string()])
            .collect(),
        _ => Vec::new(),
    };
    Certificates {
        unreachable,
        violating_set,
        violating_neighborhood,
        matching,
    }
}

/// Run the requested analysis on a validated document.
pub fn run_analysis(
    doc: &NetworkDocument,
    opts: &AnalysisOptions,
) -> Result<Report, AnalysisError> {
    let pattern = doc.pattern();
    let targets_1based: Option<Vec<usize>> = match &opts.targets {
        Some(list) => {
            if list.is_empty() {
                return Err(AnalysisError::Input(
                    "--targets requires at least one state index".to_string(),
                ));
            }
            for &t in list {
                if t == 0 || t > doc.n {
                    return Err(AnalysisError::Input(format!(
                        "--targets: state index {t} out of range (valid: 1..={})",
                        doc.n
                    )));
                }
            }
            let mut sorted: Vec<usize> = list.clone();
            sorted.sort_unstable();
            sorted.dedup();
            Some(sorted)
        }
        None => doc.targets.clone().filter(|t| !t.is_empty()),
    };
    let check = opts.check.unwrap_or(if targets_1based.is_some() {
        Check::Target
    } else {
        Check::Full
    });

    let mut tol = Tolerances::default();
    if let Some(rank_rel) = opts.rank_rel {
        if !(rank_rel.is_finite() && rank_rel > 0.0) {
            return Err(AnalysisError::Input(format!(
                "--tol must be a positive number, got {rank_rel}"
            )));
        }
        tol = tol.with_rank_rel(rank_rel);
    }

    let target_set: Option<TargetSet> = match check {
        Check::Full => None,
        Check::Target => {
            let list = targets_1based.clone().ok_or_else(|| {
                AnalysisError::Input(
                    "target analysis needs targets (document \"targets\" or --targets)"
                        .to_string(),
                )
            })?;
            Some(
                TargetSet::new(list.iter().map(|&t| t - 1), doc.n)
                    .expect("validated target indices"),
            )
        }
    };

    let verdict = match &target_set {
        Some(t) => is_structurally_target_controllable(&pattern, t),
        None => is_structurally_controllable(&pattern),
    };
    let digraph = SystemDigraph::from_pattern(&pattern);
    let certificates = certificates_of(&verdict, &digraph, opts.certificate);

    let monte_carlo = if opts.verify {
        let summary =
            monte_carlo_verify(&pattern, target_set.as_ref(), opts.trials, opts.seed, &tol)?;
        Some(MonteCarloReport {
            trials: summary.trials,
            seed: summary.seed,
            required_rank: summary.required_rank,
            ranks: summary.ranks,
            agreement: summary.agreement,
            anomalies: summary.anomalies,
            normalized: summary.normalized,
        })
    } else {
        None
    };

    let augmentation = if opts.augment {
        let wanted: Vec<usize> = match &target_set {
            Some(t) => t.indices().to_vec(),
            None => (0..doc.n).collect(),
        };
        let attachments = suggest_input_augmentation(&pattern, &wanted)
            .expect("targets validated above");
        Some(
            attachments
                .into_iter()
                .map(|(state, input)| [state + 1, input + 1])
                .collect(),
        )
    } else {
        None
    };

    Ok(Report {
        question: match check {
            Check::Full => "controllability".to_string(),
            Check::Target => "target-controllability".to_string(),
        },
        targets: if check == Check::Target {
            targets_1based
        } else {
            None
        },
        decision: verdict.decision,
        certificates,
        monte_carlo,
        augmentation,
        tolerances: ToleranceReport {
            rank_rel: tol.rank_rel,
            rank_abs: tol.rank_abs,
            eig_zero_factor: tol.eig_zero_factor,
            eig_gap_factor: tol.eig_gap_factor,
            pbh: tol.pbh,
            weight_floor: tol.weight_floor,
        },
        version: env!("CARGO_PKG_VERSION").to_string(),
    })
}

fn set_notation<T: std::fmt::Display>(prefix: &str, items: &[T]) -> String {
    let body: Vec<String> = items.iter().map(|i| format!("{prefix}{i}")).collect();
    format!("{{{}}}", body.join(", "))
}

/// Render a report in the human-readable format: the verdict sentence plus
/// certificates in the x/u vertex notation.
pub fn render_text(report: &Report) -> String {
    let mut out = String::new();
    let question = match report.question.as_str() {
        "controllability" => "structurally controllable".to_string(),
        _ => format!(
            "structurally target controllable with respect to T = {}",
            set_notation("", report.targets.as_deref().unwrap_or(&[]))
        ),
    };
    out.push_str(&format!(
        "{}: {}\n",
        question,
        if report.decision { "true" } else { "false" }
    ));
    if !report.certificates.unreachable.is_empty() {
        out.push_str(&format!(
            "  unreachable from inputs: {}\n",
            set_notation("x", &report.certificates.unreachable)
        ));
    }
    if !report.certificates.violating_set.is_empty() {
        out.push_str(&format!(
            "  certificate: S = {}, N(S) = {} (|N(S)| = {} < |S| = {})\n",
            set_notation("x", &report.certificates.violating_set),
            set_notation("", &report.certificates.violating_neighborhood),
            report.certificates.violating_neighborhood.len(),
            report.certificates.violating_set.len()
        ));
    }
    if !report.certificates.matching.is_empty() {
        let pairs: Vec<String> = report
            .certificates
            .matching
            .iter()
            .map(|[l, r]| format!("{l} - {r}"))
            .collect();
        out.push_str(&format!("  saturating matching: {}\n", pairs.join(", ")));
    }
    if let Some(mc) = &report.monte_carlo {
        let agree = mc.trials - mc.anomalies.len();
        out.push_str(&format!(
            "  monte carlo: {}/{} trials agree (required rank {}), seed {}{}\n",
            agree,
            mc.trials,
            mc.required_rank,
            mc.seed,
            if mc.normalized { ", normalized blocks" } else { "" }
        ));
    }
    if let Some(aug) = &report.augmentation {
        if aug.is_empty() {
            out.push_str("  augmentation: none needed\n");
        } else {
            let pairs: Vec<String> = aug
                .iter()
                .map(|[state, input]| format!("u{input} -> x{state}"))
                .collect();
            out.push_str(&format!("  augmentation: attach {}\n", pairs.join(", ")));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::document::parse_network;

    const EXAMPLE: &str = r#"{
        "n": 10,
        "m": 2,
        "edges": [[1,2],[1,4],[1,5],[2,3],[3,4],[5,7],[6,6],[6,7],[7,9],[8,9],[9,10]],
        "inputs": [[2,1],[1,2],[5,2]],
        "targets": [2,6,8]
    }"#;

    #[test]
    fn full_check_reports_violator() {
        let doc = parse_network(EXAMPLE).unwrap();
        let opts = AnalysisOptions {
            check: Some(Check::Full),
            ..Default::default()
        };
        let report = run_analysis(&doc, &opts).unwrap();
        assert_eq!(report.question, "controllability");
        assert!(!report.decision);
        assert_eq!(report.certificates.violating_set, vec![8, 10]);
        assert_eq!(report.certificates.violating_neighborhood, vec!["x9"]);
        assert!(report.targets.is_none());
    }

    #[test]
    fn target_check_defaults_from_document() {
        let doc = parse_network(EXAMPLE).unwrap();
        let report = run_analysis(&doc, &AnalysisOptions::default()).unwrap();
        assert_eq!(report.question, "target-controllability");
        assert_eq!(report.targets, Some(vec![2, 6, 8]));
        assert!(report.decision);
        assert!(report.certificates.violating_set.is_empty());
    }

    #[test]
    fn verify_attaches_monte_carlo() {
        let doc = parse_network(EXAMPLE).unwrap();
        let opts = AnalysisOptions {
            verify: true,
            trials: 50,
            seed: 7,
            ..Default::default()
        };
        let report = run_analysis(&doc, &opts).unwrap();
        let mc = report.monte_carlo.unwrap();
        assert_eq!(mc.trials, 50);
        assert_eq!(mc.required_rank, 3);
        assert!(mc.ranks.iter().all(|&r| r == 3));
        assert_eq!(mc.agreement, 1.0);
    }

    #[test]
    fn reports_are_byte_deterministic() {
        let doc = parse_network(EXAMPLE).unwrap();
        let opts = AnalysisOptions {
            verify: true,
            trials: 10,
            seed: 3,
            certificate: true,
            augment: true,
            ..Default::default()
        };
        let a = serde_json::to_string_pretty(&run_analysis(&doc, &opts).unwrap()).unwrap();
        let b = serde_json::to_string_pretty(&run_analysis(&doc, &opts).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn target_check_without_targets_is_an_input_error() {
        let doc = parse_network(r#"{"n":2,"m":1,"edges":[[1,2]],"inputs":[[1,1]]}"#).unwrap();
        let opts = AnalysisOptions {
            check: Some(Check::Target),
            ..Default::default()
        };
        assert!(matches!(
            run_analysis(&doc, &opts),
            Err(AnalysisError::Input(_))
        ));
    }

    #[test]
    fn target_override_validates_range() {
        let doc = parse_network(EXAMPLE).unwrap();
        let opts = AnalysisOptions {
            targets: Some(vec![11]),
            ..Default::default()
        };
        assert!(matches!(
            run_analysis(&doc, &opts),
            Err(AnalysisError::Input(_))
        ));
    }

    #[test]
    fn text_rendering_uses_vertex_notation() {
        let doc = parse_network(EXAMPLE).unwrap();
        let opts = AnalysisOptions {
            check: Some(Check::Full),
            ..Default::default()
        };
        let text = render_text(&run_analysis(&doc, &opts).unwrap());
        assert!(text.contains("structurally controllable: false"));
        assert!(text.contains("S = {x8, x10}, N(S) = {x9}"));
    }

    #[test]
    fn matching_witness_needs_certificate_flag() {
        let doc = parse_network(EXAMPLE).unwrap();
        let without = run_analysis(&doc, &AnalysisOptions::default()).unwrap();
        assert!(without.certificates.matching.is_empty());
        let with = run_analysis(
            &doc,
            &AnalysisOptions {
                certificate: true,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(with.certificates.matching.len(), 3);
    }

    #[test]
    fn augmentation_report_for_inputless_network() {
        let doc = parse_network(
            r#"{"n":4,"m":0,"edges":[[1,2],[3,4]],"inputs":[],"targets":[1,3]}"#,
        )
        .unwrap();
        let opts = AnalysisOptions {
            augment: true,
            ..Default::default()
        };
        let report = run_analysis(&doc, &opts).unwrap();
        assert!(!report.decision);
        let aug = report.augmentation.unwrap();
        assert_eq!(aug.len(), 2);
        // New inputs are numbered after the existing ones (here from u1).
        assert!(aug.iter().all(|[state, _]| *state >= 1 && *state <= 4));
    }
}
