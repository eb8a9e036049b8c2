use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::abgrp::AbGroup;
use crate::chain::Key;

/// A cocycle given by its nonzero values on cells.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cocycle {
    pub values: Vec<(String, Vec<String>)>,
}

impl Cocycle {
    pub fn new(blocks: Vec<(Key, Vec<BigInt>)>) -> Self {
        Cocycle {
            values: blocks.into_iter().map(|(k, v)| (k.to_json(), v.iter().map(ToString::to_string).collect())).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Section {
    pub label: String,
    pub groups: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cocycles: Option<Vec<Vec<Cocycle>>>,
}

impl Section {
    pub fn new(label: &str, groups: Vec<AbGroup>) -> Self {
        Section { label: label.to_string(), groups: groups.iter().map(ToString::to_string).collect(), cocycles: None }
    }

    /// `H0=Z H1..H4=0`: runs of equal groups are merged.
    pub fn line(&self) -> String {
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.groups.len() {
            let mut j = i;
            while j + 1 < self.groups.len() && self.groups[j + 1] == self.groups[i] {
                j += 1;
            }
            if j == i {
                parts.push(format!("H{i}={}", self.groups[i]));
            } else {
                parts.push(format!("H{i}..H{j}={}", self.groups[i]));
            }
            i = j + 1;
        }
        parts.join(" ")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub task: String,
    pub max_degree: usize,
    pub sections: Vec<Section>,
}

impl Report {
    /// One line per section; a single section is printed bare.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for s in &self.sections {
            if self.sections.len() > 1 {
                out.push_str(&s.label);
                out.push_str(": ");
            }
            out.push_str(&s.line());
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
