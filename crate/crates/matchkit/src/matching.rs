//! Canonical matchings of `[2n]` and their structural operations.
//!
//! A matching is stored as its canonical integer sequence: a word of length
//! `2n` over `[n]` in which every value occurs exactly twice and first
//! occurrences appear in increasing order. Edge `i` occupies the two
//! positions holding value `i`. Vertex indices are 1-based.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// An edge of a matching, as a pair of 1-based vertex positions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub left: usize,
    pub right: usize,
}

impl Edge {
    pub fn new(a: usize, b: usize) -> Self {
        assert!(a != b, "an edge needs two distinct vertices");
        Edge {
            left: a.min(b),
            right: a.max(b),
        }
    }

    /// True when the two edges cross: l1 < l2 < r1 < r2.
    pub fn crosses(&self, other: &Edge) -> bool {
        let (a, b) = if self.left < other.left {
            (self, other)
        } else {
            (other, self)
        };
        a.left < b.left && b.left < a.right && a.right < b.right
    }

    /// True when `self` is nested inside `other`.
    pub fn nested_in(&self, other: &Edge) -> bool {
        other.left < self.left && self.right < other.right
    }

    /// True when the edges are disjoint in order: r1 < l2 or r2 < l1.
    pub fn disjoint_from(&self, other: &Edge) -> bool {
        self.right < other.left || other.right < self.left
    }
}

/// A perfect matching of `[2n]` in canonical sequence form.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Matching {
    seq: Vec<usize>,
}

impl Matching {
    /// The empty matching (order 0).
    pub fn empty() -> Self {
        Matching { seq: Vec::new() }
    }

    /// The single-edge matching 11.
    pub fn single_edge() -> Self {
        Matching { seq: vec![1, 1] }
    }

    /// Relabels a raw sequence (every value occurring exactly twice) into
    /// canonical form.
    pub fn canonicalize(raw: &[usize]) -> Result<Self> {
        let mut counts: std::collections::HashMap<usize, usize> = std::collections::HashMap::new();
        for &v in raw {
            *counts.entry(v).or_insert(0) += 1;
        }
        // report the first offending value in sequence order
        for &v in raw {
            let c = counts[&v];
            if c != 2 {
                return Err(Error::BadMultiplicity(v, c));
            }
        }
        let mut relabel: std::collections::HashMap<usize, usize> = std::collections::HashMap::new();
        let mut next = 1;
        let mut seq = Vec::with_capacity(raw.len());
        for &v in raw {
            let label = *relabel.entry(v).or_insert_with(|| {
                let l = next;
                next += 1;
                l
            });
            seq.push(label);
        }
        Ok(Matching { seq })
    }

    /// Builds a matching from an edge set partitioning `[2n]`.
    pub fn from_edges(edges: &[Edge]) -> Result<Self> {
        let n = edges.len();
        let mut raw = vec![0usize; 2 * n];
        for (i, e) in edges.iter().enumerate() {
            for v in [e.left, e.right] {
                if v == 0 || v > 2 * n {
                    return Err(Error::BadEdgeSet(format!("vertex {v} out of [2n]={}", 2 * n)));
                }
                if raw[v - 1] != 0 {
                    return Err(Error::BadEdgeSet(format!("vertex {v} covered twice")));
                }
                raw[v - 1] = i + 1;
            }
        }
        // every slot filled iff the edges partition [2n]
        if raw.iter().any(|&v| v == 0) {
            return Err(Error::BadEdgeSet("some vertex uncovered".into()));
        }
        Matching::canonicalize(&raw)
    }

    /// The edge view: edge `i` connects the two positions holding value `i`.
    pub fn to_edges(&self) -> Vec<Edge> {
        let n = self.order();
        let mut first = vec![0usize; n + 1];
        let mut edges = vec![Edge { left: 0, right: 0 }; n];
        for (pos, &v) in self.seq.iter().enumerate() {
            if first[v] == 0 {
                first[v] = pos + 1;
            } else {
                edges[v - 1] = Edge::new(first[v], pos + 1);
            }
        }
        edges
    }

    /// Number of edges.
    pub fn order(&self) -> usize {
        self.seq.len() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    /// The canonical sequence.
    pub fn seq(&self) -> &[usize] {
        &self.seq
    }

    /// For each 1-based position, the position of the other endpoint of its
    /// edge.
    pub fn partners(&self) -> Vec<usize> {
        let len = self.seq.len();
        let mut first = vec![0usize; self.order() + 1];
        let mut partner = vec![0usize; len + 1];
        for (pos, &v) in self.seq.iter().enumerate() {
            if first[v] == 0 {
                first[v] = pos + 1;
            } else {
                partner[pos + 1] = first[v];
                partner[first[v]] = pos + 1;
            }
        }
        partner
    }

    /// Side-by-side concatenation: `self` followed by `other` shifted up.
    pub fn juxtapose(&self, other: &Matching) -> Matching {
        let shift = self.order();
        let mut seq = self.seq.clone();
        seq.extend(other.seq.iter().map(|&v| v + shift));
        Matching { seq }
    }

    /// Nests the whole diagram under one new enclosing edge.
    pub fn lift(&self) -> Matching {
        let mut seq = Vec::with_capacity(self.seq.len() + 2);
        seq.push(1);
        seq.extend(self.seq.iter().map(|&v| v + 1));
        seq.push(1);
        Matching { seq }
    }

    /// Mirror image of the linear chord diagram.
    pub fn reverse(&self) -> Matching {
        let raw: Vec<usize> = self.seq.iter().rev().copied().collect();
        Matching::canonicalize(&raw).expect("reversal preserves multiplicities")
    }

    /// Deletes the edges with the given labels and re-canonicalizes.
    pub fn delete_edges(&self, labels: &BTreeSet<usize>) -> Result<Matching> {
        let n = self.order();
        for &l in labels {
            if l == 0 || l > n {
                return Err(Error::UnknownEdgeLabel(l));
            }
        }
        let raw: Vec<usize> = self
            .seq
            .iter()
            .copied()
            .filter(|v| !labels.contains(v))
            .collect();
        Ok(Matching::canonicalize(&raw).expect("deletion preserves multiplicities"))
    }

    /// Deletes the edge with the greatest right vertex.
    pub fn delete_rightmost_edge(&self) -> Matching {
        if self.is_empty() {
            return Matching::empty();
        }
        let label = *self.seq.last().unwrap();
        let mut set = BTreeSet::new();
        set.insert(label);
        self.delete_edges(&set).unwrap()
    }

    /// Maximal juxtaposition factorization, left to right.
    pub fn connected_components(&self) -> Vec<Matching> {
        let mut parts = Vec::new();
        let mut open = 0usize;
        let mut start = 0usize;
        let mut seen = std::collections::HashSet::new();
        for (pos, &v) in self.seq.iter().enumerate() {
            if seen.insert(v) {
                open += 1;
            } else {
                open -= 1;
            }
            if open == 0 {
                let part = Matching::canonicalize(&self.seq[start..=pos]).unwrap();
                parts.push(part);
                start = pos + 1;
            }
        }
        parts
    }

    /// True when the matching is nonempty and not a juxtaposition of two
    /// nonempty matchings.
    pub fn is_connected(&self) -> bool {
        !self.is_empty() && self.connected_components().len() == 1
    }

    /// Splits into the roof (top edges, never nested in another edge) and
    /// the core (nested edges), both as canonical patterns. Also returns the
    /// labels of the core edges in `self`.
    pub fn roof_core_split(&self) -> (Matching, Matching, BTreeSet<usize>) {
        let edges = self.to_edges();
        let mut core_labels = BTreeSet::new();
        for (i, e) in edges.iter().enumerate() {
            if edges.iter().any(|f| e.nested_in(f)) {
                core_labels.insert(i + 1);
            }
        }
        let core = self.delete_edges(&roof_complement(self.order(), &core_labels)).unwrap();
        let roof = self.delete_edges(&core_labels).unwrap();
        (roof, core, core_labels)
    }

    /// Structural flags: crossing/nesting pairs, 1122-containment (via a
    /// disjoint pair) and connectivity.
    pub fn classify(&self) -> Flags {
        let edges = self.to_edges();
        let mut crossing = false;
        let mut nesting = false;
        let mut disjoint = false;
        for i in 0..edges.len() {
            for j in (i + 1)..edges.len() {
                if edges[i].crosses(&edges[j]) {
                    crossing = true;
                }
                if edges[i].nested_in(&edges[j]) || edges[j].nested_in(&edges[i]) {
                    nesting = true;
                }
                if edges[i].disjoint_from(&edges[j]) {
                    disjoint = true;
                }
            }
        }
        Flags {
            noncrossing: !crossing,
            nonnesting: !nesting,
            permutational: !disjoint,
            connected: self.is_connected(),
        }
    }

    /// Number of edges `{i, i+1}`.
    pub fn small_edge_count(&self) -> usize {
        self.to_edges()
            .iter()
            .filter(|e| e.right == e.left + 1)
            .count()
    }

    /// Totally nesting matching 12...nn...21 of order `n`.
    pub fn totally_nesting(n: usize) -> Matching {
        let mut m = Matching::empty();
        for _ in 0..n {
            m = m.lift();
        }
        m
    }

    /// Totally crossing matching 12...n12...n of order `n`.
    pub fn totally_crossing(n: usize) -> Matching {
        let mut seq = Vec::with_capacity(2 * n);
        seq.extend(1..=n);
        seq.extend(1..=n);
        Matching { seq }
    }

    /// Compact digit form, valid only when the order is at most 9.
    pub fn compact(&self) -> Option<String> {
        if self.order() > 9 {
            return None;
        }
        Some(self.seq.iter().map(|v| v.to_string()).collect())
    }
}

fn roof_complement(n: usize, core_labels: &BTreeSet<usize>) -> BTreeSet<usize> {
    (1..=n).filter(|l| !core_labels.contains(l)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Flags {
    pub noncrossing: bool,
    pub nonnesting: bool,
    pub permutational: bool,
    pub connected: bool,
}

impl fmt::Debug for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matching({self})")
    }
}

/// Emits the comma-separated token form; the empty matching prints as "".
impl fmt::Display for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in &self.seq {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        Ok(())
    }
}

/// Accepts either compact digits ("1212", order <= 9) or comma-separated
/// tokens ("1,2,1,2"). The empty string parses as the empty matching.
impl FromStr for Matching {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Matching::empty());
        }
        let raw: Vec<usize> = if s.contains(',') {
            s.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad token {t:?}")))
                })
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .filter(|&d| d > 0)
                        .map(|d| d as usize)
                        .ok_or_else(|| Error::Parse(format!("bad digit {c:?}")))
                })
                .collect::<Result<_>>()?
        };
        if raw.iter().any(|&v| v == 0) {
            return Err(Error::Parse("vertices are 1-based; 0 is not a value".into()));
        }
        let m = Matching::canonicalize(&raw)?;
        // reject non-canonical input only in the sense of relabeling: the
        // canonical form is what we return, matching canonicalize().
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> Matching {
        s.parse().unwrap()
    }

    #[test]
    fn canonicalize_relabels() {
        assert_eq!(Matching::canonicalize(&[2, 1, 2, 1]).unwrap(), m("1212"));
        assert_eq!(Matching::canonicalize(&[7, 8, 7, 8]).unwrap(), m("1212"));
        assert_eq!(
            Matching::canonicalize(&[3, 3, 1, 3]),
            Err(Error::BadMultiplicity(3, 3))
        );
    }

    #[test]
    fn from_edges_figure_instances() {
        // Figure 1: {{1,8},{2,5},{3,6},{4,7}}
        let e: Vec<Edge> = [(1, 8), (2, 5), (3, 6), (4, 7)]
            .iter()
            .map(|&(a, b)| Edge::new(a, b))
            .collect();
        let host = Matching::from_edges(&e).unwrap();
        // first-occurrence rule: positions 1..4 open edges 1..4, then
        // 5->2, 6->3, 7->4, 8->1
        assert_eq!(host, m("12342341"));
        assert_eq!(host.to_edges().into_iter().collect::<BTreeSet<_>>(),
                   e.into_iter().collect::<BTreeSet<_>>());

        // Figure 2: {{1,3},{2,4},{5,7},{6,8}} -> 12123434
        let e: Vec<Edge> = [(1, 3), (2, 4), (5, 7), (6, 8)]
            .iter()
            .map(|&(a, b)| Edge::new(a, b))
            .collect();
        assert_eq!(Matching::from_edges(&e).unwrap(), m("12123434"));

        assert_eq!(Matching::from_edges(&[Edge::new(1, 2)]).unwrap(), m("11"));
        assert!(Matching::from_edges(&[Edge::new(1, 3)]).is_err());
    }

    #[test]
    fn to_edges_inverse() {
        assert_eq!(m("11").to_edges(), vec![Edge::new(1, 2)]);
        assert_eq!(m("1212").to_edges(), vec![Edge::new(1, 3), Edge::new(2, 4)]);
        assert_eq!(m("1221").to_edges(), vec![Edge::new(1, 4), Edge::new(2, 3)]);
    }

    #[test]
    fn juxtapose_cases() {
        assert_eq!(m("1212").juxtapose(&m("1212")), m("12123434"));
        assert_eq!(Matching::empty().juxtapose(&m("1221")), m("1221"));
        assert_eq!(m("1221").juxtapose(&Matching::empty()), m("1221"));
        assert_eq!(m("11").juxtapose(&m("11")), m("1122"));
    }

    #[test]
    fn lift_cases() {
        assert_eq!(Matching::empty().lift(), m("11"));
        assert_eq!(m("1212").lift(), m("123231"));
        assert_eq!(m("1221").lift(), m("123321"));
    }

    #[test]
    fn reverse_cases() {
        assert_eq!(m("123132").reverse(), m("123213"));
        assert_eq!(m("11").reverse(), m("11"));
        assert_eq!(m("1122").reverse(), m("1122"));
    }

    #[test]
    fn delete_edges_cases() {
        assert_eq!(
            m("1212").delete_edges(&BTreeSet::from([2])).unwrap(),
            m("11")
        );
        assert_eq!(
            m("122331").delete_edges(&BTreeSet::from([1])).unwrap(),
            m("1122")
        );
        assert_eq!(m("1212").delete_edges(&BTreeSet::new()).unwrap(), m("1212"));
        assert_eq!(
            m("1212").delete_edges(&BTreeSet::from([3])),
            Err(Error::UnknownEdgeLabel(3))
        );
    }

    #[test]
    fn connected_components_cases() {
        assert_eq!(m("1122").connected_components(), vec![m("11"), m("11")]);
        assert_eq!(m("1212").connected_components(), vec![m("1212")]);
        assert_eq!(
            m("12123434").connected_components(),
            vec![m("1212"), m("1212")]
        );
        assert!(m("1212").is_connected());
        assert!(!Matching::empty().is_connected());
    }

    #[test]
    fn roof_core_cases() {
        let (roof, core, labels) = m("1221").roof_core_split();
        assert_eq!((roof, core), (m("11"), m("11")));
        assert_eq!(labels, BTreeSet::from([2]));

        let (roof, core, _) = m("1212").roof_core_split();
        assert_eq!((roof, core), (m("1212"), Matching::empty()));

        let (roof, core, labels) = m("123231").roof_core_split();
        assert_eq!((roof, core), (m("11"), m("1212")));
        assert_eq!(labels, BTreeSet::from([2, 3]));
    }

    #[test]
    fn classify_cases() {
        // 1221 = "12" + "21" encodes the permutation 21, so it is
        // permutational (equivalently: its two edges are not disjoint)
        let f = m("1221").classify();
        assert!(f.noncrossing && !f.nonnesting && f.permutational && f.connected);
        let f = m("123123").classify();
        assert!(!f.noncrossing && f.nonnesting && f.permutational && f.connected);
        let f = m("11").classify();
        assert!(f.noncrossing && f.nonnesting && f.permutational && f.connected);
    }

    #[test]
    fn small_edges() {
        assert_eq!(m("1122").small_edge_count(), 2);
        assert_eq!(m("1221").small_edge_count(), 1);
        assert_eq!(m("1212").small_edge_count(), 0);
    }

    #[test]
    fn text_roundtrip() {
        assert_eq!(m("1,2,1,2"), m("1212"));
        assert_eq!(m("1212").to_string(), "1,2,1,2");
        assert_eq!("".parse::<Matching>().unwrap(), Matching::empty());
        assert!("12x".parse::<Matching>().is_err());
    }

    #[test]
    fn special_families() {
        assert_eq!(Matching::totally_nesting(3), m("123321"));
        assert_eq!(Matching::totally_crossing(3), m("123123"));
        assert_eq!(Matching::totally_nesting(0), Matching::empty());
    }
}
