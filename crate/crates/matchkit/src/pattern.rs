//! Pattern containment, minimal containment and unlabeled (cyclic) patterns.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::matching::{Edge, Matching};

/// An occurrence of a pattern in a host: a strictly increasing tuple of
/// vertex positions inducing the pattern exactly.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Occurrence {
    pub indices: Vec<usize>,
}

/// All occurrences of `pattern` in `host`, in lexicographic order of index
/// tuples. The empty pattern has exactly one (empty) occurrence.
pub fn occurrences(pattern: &Matching, host: &Matching) -> Vec<Occurrence> {
    let mut out = Vec::new();
    let pat_partner = pattern.partners();
    let host_partner = host.partners();
    let mut chosen: Vec<usize> = Vec::with_capacity(2 * pattern.order());
    search(
        pattern.order() * 2,
        &pat_partner,
        host.order() * 2,
        &host_partner,
        &mut chosen,
        &mut |idx| {
            out.push(Occurrence { indices: idx.to_vec() });
            false
        },
    );
    out
}

/// Vertex-level embedding search. Left pattern vertices scan free host
/// positions in increasing order; right pattern vertices are forced to the
/// host partner of their mate, which keeps the search small and the output
/// lexicographic.
fn search(
    pat_len: usize,
    pat_partner: &[usize],
    host_len: usize,
    host_partner: &[usize],
    chosen: &mut Vec<usize>,
    emit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    let t = chosen.len() + 1;
    if t > pat_len {
        return emit(chosen);
    }
    let lo = chosen.last().copied().unwrap_or(0);
    let mate = pat_partner[t];
    if mate < t {
        // right vertex: forced to the host partner of its mate
        let idx = host_partner[chosen[mate - 1]];
        if idx > lo {
            chosen.push(idx);
            let stop = search(pat_len, pat_partner, host_len, host_partner, chosen, emit);
            chosen.pop();
            return stop;
        }
        false
    } else {
        // left vertex: candidate must open a host edge to the right and must
        // not be the pending partner of an earlier choice
        for idx in (lo + 1)..=host_len {
            if host_partner[idx] < idx {
                continue;
            }
            if chosen.iter().any(|&c| host_partner[c] == idx) {
                continue;
            }
            // feasibility: enough room for the remaining pattern vertices
            if host_len - idx < pat_len - t {
                continue;
            }
            chosen.push(idx);
            let stop = search(pat_len, pat_partner, host_len, host_partner, chosen, emit);
            chosen.pop();
            if stop {
                return true;
            }
        }
        false
    }
}

pub fn contains(pattern: &Matching, host: &Matching) -> bool {
    if pattern.order() > host.order() {
        return false;
    }
    if pattern.is_empty() {
        return true;
    }
    let pat_partner = pattern.partners();
    let host_partner = host.partners();
    let mut chosen = Vec::with_capacity(2 * pattern.order());
    search(
        pattern.order() * 2,
        &pat_partner,
        host.order() * 2,
        &host_partner,
        &mut chosen,
        &mut |_| true,
    )
}

pub fn avoids(pattern: &Matching, host: &Matching) -> bool {
    !contains(pattern, host)
}

pub fn avoids_all(host: &Matching, patterns: &[Matching]) -> bool {
    patterns.iter().all(|p| avoids(p, host))
}

/// Containment test on raw edge lists (arbitrary vertex coordinates, order
/// isomorphism only). `host` must be sorted by left endpoint. When
/// `required` is `Some(i)`, only embeddings using `host[i]` count; this is
/// the incremental test used by the pruned enumerator.
pub fn edges_contain(host: &[Edge], pattern: &[Edge], required: Option<usize>) -> bool {
    if pattern.is_empty() {
        return required.is_none();
    }
    if pattern.len() > host.len() {
        return false;
    }
    let mut map: Vec<usize> = Vec::with_capacity(pattern.len());
    edges_search(host, pattern, required, &mut map)
}

fn consistent(pa: &Edge, pb: &Edge, ha: &Edge, hb: &Edge) -> bool {
    // pa.left < pb.left and ha.left < hb.left by construction; the pair
    // relation (disjoint / nested / crossing) must match.
    rel(pa, pb) == rel(ha, hb)
}

#[derive(PartialEq, Eq)]
enum PairRel {
    Disjoint,
    Nested,
    Crossing,
}

fn rel(a: &Edge, b: &Edge) -> PairRel {
    // precondition: a.left < b.left
    if a.right < b.left {
        PairRel::Disjoint
    } else if b.right < a.right {
        PairRel::Nested
    } else {
        PairRel::Crossing
    }
}

fn edges_search(host: &[Edge], pattern: &[Edge], required: Option<usize>, map: &mut Vec<usize>) -> bool {
    let d = map.len();
    if d == pattern.len() {
        return required.map_or(true, |r| map.contains(&r));
    }
    let lo = map.last().map_or(0, |&h| h + 1);
    for cand in lo..host.len() {
        if let Some(r) = required {
            // mapped host indices increase, so once we pass the required
            // edge without using it the branch is dead
            if cand > r && !map.iter().any(|&h| h == r) {
                return false;
            }
        }
        if host.len() - cand < pattern.len() - d {
            return false;
        }
        let ok = map
            .iter()
            .enumerate()
            .all(|(j, &h)| consistent(&pattern[j], &pattern[d], &host[h], &host[cand]));
        if ok {
            map.push(cand);
            if edges_search(host, pattern, required, map) {
                return true;
            }
            map.pop();
        }
    }
    false
}

/// `host` contains `pattern` but loses every occurrence once its rightmost
/// edge is deleted.
pub fn minimally_contains(host: &Matching, pattern: &Matching) -> bool {
    if !contains(pattern, host) {
        return false;
    }
    if host.is_empty() {
        // only the empty pattern is contained in the empty host
        return false;
    }
    avoids(pattern, &host.delete_rightmost_edge())
}

/// A cyclic-equivalence class of matchings, stored via its lexicographically
/// least member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnlabeledMatching {
    representative: Matching,
    members: BTreeSet<Matching>,
}

impl UnlabeledMatching {
    pub fn representative(&self) -> &Matching {
        &self.representative
    }

    pub fn members(&self) -> &BTreeSet<Matching> {
        &self.members
    }

    pub fn members_vec(&self) -> Vec<Matching> {
        self.members.iter().cloned().collect()
    }

    pub fn order(&self) -> usize {
        self.representative.order()
    }
}

/// Rotates the circular chord diagram by `k` positions and re-canonicalizes.
fn rotate(m: &Matching, k: usize) -> Matching {
    let n2 = 2 * m.order();
    if n2 == 0 {
        return Matching::empty();
    }
    let edges: Vec<Edge> = m
        .to_edges()
        .into_iter()
        .map(|e| {
            let a = (e.left + k - 1) % n2 + 1;
            let b = (e.right + k - 1) % n2 + 1;
            Edge::new(a, b)
        })
        .collect();
    Matching::from_edges(&edges).expect("rotation permutes [2n]")
}

/// The orbit of `m` under all `2n` rotations of the circular diagram.
pub fn cyclic_class(m: &Matching) -> UnlabeledMatching {
    let n2 = 2 * m.order();
    let mut members = BTreeSet::new();
    if n2 == 0 {
        members.insert(Matching::empty());
    } else {
        for k in 0..n2 {
            members.insert(rotate(m, k));
        }
    }
    let representative = members.iter().next().unwrap().clone();
    UnlabeledMatching { representative, members }
}

pub fn avoids_unlabeled(host: &Matching, u: &UnlabeledMatching) -> bool {
    u.members.iter().all(|p| avoids(p, host))
}

impl fmt::Display for UnlabeledMatching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.representative.compact() {
            Some(c) => write!(f, "[{c}]"),
            None => write!(f, "[{}]", self.representative),
        }
    }
}

/// Parses the bracket syntax, e.g. "[123132]".
impl FromStr for UnlabeledMatching {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let inner = s
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("expected [matching], got {s:?}")))?;
        let m: Matching = inner.parse()?;
        Ok(cyclic_class(&m))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> Matching {
        s.parse().unwrap()
    }

    #[test]
    fn occurrences_paper_instance() {
        // host = canonical form of {{1,8},{2,5},{3,6},{4,7}}
        let host = m("12342341");
        let occ = occurrences(&m("1212"), &host);
        assert!(occ.iter().any(|o| o.indices == vec![2, 4, 5, 7]));
    }

    #[test]
    fn occurrences_simple() {
        let occ = occurrences(&m("11"), &m("1212"));
        let idx: Vec<Vec<usize>> = occ.into_iter().map(|o| o.indices).collect();
        assert_eq!(idx, vec![vec![1, 3], vec![2, 4]]);
        assert!(occurrences(&m("1212"), &m("1221")).is_empty());
        assert_eq!(occurrences(&Matching::empty(), &m("1212")).len(), 1);
    }

    #[test]
    fn containment_basics() {
        assert!(contains(&m("1212"), &m("1212")));
        assert!(avoids(&m("1122"), &m("123123")));
        for h in ["11", "1212", "1221", "123321"] {
            assert!(contains(&m("11"), &m(h)));
        }
    }

    #[test]
    fn avoids_all_cases() {
        assert!(avoids_all(&m("1221"), &[m("1212")]));
        assert!(!avoids_all(&m("123132"), &[m("123132"), m("123213")]));
        assert!(avoids_all(
            &m("112233"),
            &[m("123231"), m("123132"), m("123213")]
        ));
    }

    #[test]
    fn minimal_containment() {
        assert!(minimally_contains(&m("1212"), &m("1212")));
        assert!(!minimally_contains(&m("121233"), &m("1212")));
    }

    #[test]
    fn cyclic_classes_of_order_two_and_three() {
        let c = cyclic_class(&m("1212"));
        assert_eq!(c.members_vec(), vec![m("1212")]);
        let c = cyclic_class(&m("1122"));
        assert_eq!(c.members_vec(), vec![m("1122"), m("1221")]);
        let c = cyclic_class(&m("112323"));
        let want: BTreeSet<Matching> =
            ["112323", "123231", "123312", "121233", "121332", "122313"]
                .iter()
                .map(|s| m(s))
                .collect();
        assert_eq!(c.members().clone(), want);
    }

    #[test]
    fn cyclic_class_123132_derived() {
        // the rotation action gives exactly these three members
        let c = cyclic_class(&m("123132"));
        let want: BTreeSet<Matching> = ["123132", "123213", "121323"]
            .iter()
            .map(|s| m(s))
            .collect();
        assert_eq!(c.members().clone(), want);
    }

    #[test]
    fn unlabeled_avoidance() {
        let u = cyclic_class(&m("1212"));
        assert!(avoids_unlabeled(&m("1122"), &u));
        let u = cyclic_class(&m("123132"));
        assert!(!avoids_unlabeled(&m("123132"), &u));
    }

    #[test]
    fn unlabeled_text_roundtrip() {
        let u: UnlabeledMatching = "[123132]".parse().unwrap();
        assert_eq!(u.to_string(), "[121323]");
        assert!("123132".parse::<UnlabeledMatching>().is_err());
    }

    #[test]
    fn edges_contain_matches_contains() {
        let hosts = ["12342341", "123321", "121233", "12123434"];
        let pats = ["11", "1122", "1212", "1221", "123123"];
        for h in hosts {
            let hm = m(h);
            let he = hm.to_edges();
            let mut sorted = he.clone();
            sorted.sort();
            for p in pats {
                let pm = m(p);
                assert_eq!(
                    edges_contain(&sorted, &pm.to_edges(), None),
                    contains(&pm, &hm),
                    "host {h} pattern {p}"
                );
            }
        }
    }
}
