//! The JSON network document: the external, 1-based description of an
//! undirected network with input attachments and an optional target set.
//!
//! Schema (all indices 1-based):
//!
//! ```json
//! {
//!   "n": 10,
//!   "m": 2,
//!   "edges": [[1, 2], [6, 6], ...],
//!   "inputs": [[2, 1], [1, 2], ...],
//!   "targets": [2, 6, 8],
//!   "metadata": { "name": "...", "description": "..." }
//! }
//! ```
//!
//! `edges` lists unordered state pairs (`[i, i]` is a self-loop); either
//! orientation and repeats collapse to one entry canonicalized as i <= j.
//! `inputs` lists `[state, input]` attachments. Unknown fields are rejected.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{StructuredPattern, TargetSet};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DocumentError {
    #[error("JSON parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{0}")]
    Validation(String),
}

/// Parsed and validated network document. Indices stay 1-based here; the
/// conversion to the crate's 0-based types happens in [`NetworkDocument::pattern`]
/// and [`NetworkDocument::target_set`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetworkDocument {
    pub n: usize,
    pub m: usize,
    #[serde(default)]
    pub edges: Vec<(usize, usize)>,
    #[serde(default)]
    pub inputs: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub targets: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<serde_json::Value>,
}

/// Parse and validate a JSON network document: duplicates collapse, edges are
/// canonicalized to (min, max), targets are sorted and deduplicated.
pub fn parse_network(text: &str) -> Result<NetworkDocument, DocumentError> {
    let mut doc: NetworkDocument =
        serde_json::from_str(text).map_err(|e| DocumentError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
    if doc.n == 0 {
        return Err(DocumentError::Validation(
            "n must be at least 1".to_string(),
        ));
    }
    let check_state = |index: usize, what: String, n: usize| {
        if index == 0 || index > n {
            Err(DocumentError::Validation(format!(
                "{what}: state index {index} out of range (valid: 1..={n})"
            )))
        } else {
            Ok(())
        }
    };
    for (pos, &(i, j)) in doc.edges.iter().enumerate() {
        check_state(i, format!("edges[{pos}] = [{i}, {j}]"), doc.n)?;
        check_state(j, format!("edges[{pos}] = [{i}, {j}]"), doc.n)?;
    }
    for (pos, &(i, j)) in doc.inputs.iter().enumerate() {
        check_state(i, format!("inputs[{pos}] = [{i}, {j}]"), doc.n)?;
        if j == 0 || j > doc.m {
            return Err(DocumentError::Validation(format!(
                "inputs[{pos}] = [{i}, {j}]: input index {j} out of range (valid: 1..={})",
                doc.m
            )));
        }
    }
    if let Some(targets) = &doc.targets {
        for (pos, &t) in targets.iter().enumerate() {
            check_state(t, format!("targets[{pos}] = {t}"), doc.n)?;
        }
    }
    // Canonicalize: unordered edges as (min, max), everything sorted, sets.
    let canon = |list: &mut Vec<(usize, usize)>| {
        list.sort_unstable();
        list.dedup();
    };
    doc.edges = doc
        .edges
        .iter()
        .map(|&(i, j)| (i.min(j), i.max(j)))
        .collect();
    canon(&mut doc.edges);
    canon(&mut doc.inputs);
    if let Some(targets) = &mut doc.targets {
        targets.sort_unstable();
        targets.dedup();
    }
    Ok(doc)
}

impl NetworkDocument {
    /// The 0-based structural pair described by the document.
    pub fn pattern(&self) -> StructuredPattern {
        StructuredPattern::from_pairs(
            self.n,
            self.m,
            self.edges.iter().map(|&(i, j)| (i - 1, j - 1)),
            self.inputs.iter().map(|&(i, j)| (i - 1, j - 1)),
        )
        .expect("validated document indices are in range")
    }

    /// The document's target set, 0-based, if one is declared (and nonempty).
    pub fn target_set(&self) -> Option<TargetSet> {
        let targets = self.targets.as_ref()?;
        if targets.is_empty() {
            return None;
        }
        Some(
            TargetSet::new(targets.iter().map(|&t| t - 1), self.n)
                .expect("validated targets are in range"),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::ten_node_pattern;

    const EXAMPLE: &str = r#"{
        "n": 10,
        "m": 2,
        "edges": [[1,2],[1,4],[1,5],[2,3],[3,4],[5,7],[6,6],[6,7],[7,9],[8,9],[9,10]],
        "inputs": [[2,1],[1,2],[5,2]],
        "targets": [2,6,8],
        "metadata": {"name": "ten-node example"}
    }"#;

    #[test]
    fn example_document_round_trips_to_pattern() {
        let doc = parse_network(EXAMPLE).unwrap();
        assert_eq!(doc.n, 10);
        assert_eq!(doc.m, 2);
        assert_eq!(doc.edges.len(), 11);
        assert_eq!(doc.inputs.len(), 3);
        assert_eq!(doc.pattern(), ten_node_pattern());
        assert_eq!(doc.target_set().unwrap().indices(), &[1, 5, 7]);
    }

    #[test]
    fn minimal_document_parses() {
        let doc = parse_network(r#"{"n":1,"m":1,"edges":[],"inputs":[[1,1]]}"#).unwrap();
        assert_eq!(doc.n, 1);
        assert!(doc.targets.is_none());
        assert_eq!(doc.pattern().b_entries(), &[(0, 0)]);
    }

    #[test]
    fn zero_index_rejected() {
        let err =
            parse_network(r#"{"n":3,"m":1,"edges":[[0,3]],"inputs":[]}"#).unwrap_err();
        assert!(matches!(err, DocumentError::Validation(_)));
        assert!(err.to_string().contains("edges[0]"));
        assert!(err.to_string().contains("out of range"));
    }

    #[test]
    fn out_of_range_input_rejected() {
        let err =
            parse_network(r#"{"n":3,"m":1,"edges":[],"inputs":[[1,2]]}"#).unwrap_err();
        assert!(err.to_string().contains("inputs[0]"));
    }

    #[test]
    fn malformed_json_reports_position() {
        let err = parse_network("{\n  \"n\": 3,\n  oops\n}").unwrap_err();
        match err {
            DocumentError::Parse { line, .. } => assert_eq!(line, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn unknown_fields_rejected() {
        let err = parse_network(r#"{"n":1,"m":0,"edges":[],"inputs":[],"directed":true}"#)
            .unwrap_err();
        assert!(matches!(err, DocumentError::Parse { .. }));
        assert!(err.to_string().contains("directed"));
    }

    #[test]
    fn both_orientations_collapse() {
        let doc =
            parse_network(r#"{"n":3,"m":0,"edges":[[2,1],[1,2],[1,2]],"inputs":[]}"#)
                .unwrap();
        assert_eq!(doc.edges, vec![(1, 2)]);
    }

    #[test]
    fn duplicate_targets_collapse() {
        let doc = parse_network(r#"{"n":3,"m":0,"edges":[],"inputs":[],"targets":[3,1,3]}"#)
            .unwrap();
        assert_eq!(doc.targets.unwrap(), vec![1, 3]);
    }
}
