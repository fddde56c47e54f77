//! Exact count tables with provenance.

use num::BigUint;
use serde_json::{json, Value};

/// Where a table's numbers came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    BruteForce,
    Formula(String),
}

impl Source {
    pub fn name(&self) -> String {
        match self {
            Source::BruteForce => "brute-force".into(),
            Source::Formula(f) => f.clone(),
        }
    }
}

/// A sequence of exact counts indexed by order `0..=n_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    pub label: String,
    pub counts: Vec<BigUint>,
    pub source: Source,
}

impl CountTable {
    pub fn new(label: impl Into<String>, counts: Vec<BigUint>, source: Source) -> Self {
        CountTable {
            label: label.into(),
            counts,
            source,
        }
    }

    pub fn n_max(&self) -> usize {
        self.counts.len().saturating_sub(1)
    }

    pub fn get(&self, n: usize) -> Option<&BigUint> {
        self.counts.get(n)
    }

    /// Big integers are always serialized as decimal strings.
    pub fn to_json(&self) -> Value {
        json!({
            "query": self.label,
            "source": self.source.name(),
            "counts": self.counts.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        })
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,count\n");
        for (n, c) in self.counts.iter().enumerate() {
            out.push_str(&format!("{n},{c}\n"));
        }
        out
    }

    /// First order at which the two tables disagree, over their common range.
    pub fn first_divergence(&self, other: &CountTable) -> Option<usize> {
        let upto = self.counts.len().min(other.counts.len());
        (0..upto).find(|&n| self.counts[n] != other.counts[n])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::BigUint;

    #[test]
    fn json_uses_strings() {
        let t = CountTable::new(
            "avoid(1212)",
            vec![BigUint::from(1u32), BigUint::from(1u32), BigUint::from(2u32)],
            Source::BruteForce,
        );
        let v = t.to_json();
        assert_eq!(v["counts"][2], "2");
        assert_eq!(v["source"], "brute-force");
    }

    #[test]
    fn divergence() {
        let a = CountTable::new("a", vec![BigUint::from(1u32), BigUint::from(2u32)], Source::BruteForce);
        let b = CountTable::new("b", vec![BigUint::from(1u32), BigUint::from(3u32)], Source::BruteForce);
        assert_eq!(a.first_divergence(&b), Some(1));
        assert_eq!(a.first_divergence(&a), None);
    }
}
