//! Exhaustive, pruned, parallel generation and counting of matchings.
//!
//! Generation pairs the least unmatched vertex with every larger free
//! vertex, so edges appear in increasing order of left endpoint and every
//! chosen edge is complete. Avoider searches prune a branch as soon as the
//! completed edges contain a forbidden pattern; only completed edges ever
//! participate in containment tests, which under-prunes but never
//! over-prunes. The first-edge choice (2n-1 branches) is the parallel work
//! unit and partial counts combine by addition, so scheduling cannot change
//! results.

use num::BigUint;
use rayon::prelude::*;

use crate::count::{CountTable, Source};
use crate::matching::{Edge, Matching};
use crate::pattern::{self, UnlabeledMatching};

/// Calls `f` once for every matching of order `n`, in a deterministic
/// order (partner of the least free vertex increasing, recursively).
pub fn visit_matchings<F: FnMut(&Matching)>(n: usize, f: &mut F) {
    let mut partner = vec![0usize; 2 * n + 1];
    visit_rec(n, &mut partner, 1, f);
}

fn visit_rec<F: FnMut(&Matching)>(n: usize, partner: &mut Vec<usize>, from: usize, f: &mut F) {
    let len = 2 * n;
    let mut i = from;
    while i <= len && partner[i] != 0 {
        i += 1;
    }
    if i > len {
        let m = matching_from_partners(n, partner);
        f(&m);
        return;
    }
    for j in (i + 1)..=len {
        if partner[j] != 0 {
            continue;
        }
        partner[i] = j;
        partner[j] = i;
        visit_rec(n, partner, i + 1, f);
        partner[i] = 0;
        partner[j] = 0;
    }
}

fn matching_from_partners(n: usize, partner: &[usize]) -> Matching {
    let edges: Vec<Edge> = (1..=2 * n)
        .filter(|&i| partner[i] > i)
        .map(|i| Edge::new(i, partner[i]))
        .collect();
    Matching::from_edges(&edges).expect("partners form a perfect matching")
}

/// All matchings of order `n`, materialized. Meant for small `n`.
pub fn enumerate_matchings(n: usize) -> Vec<Matching> {
    let mut out = Vec::new();
    visit_matchings(n, &mut |m| out.push(m.clone()));
    out
}

/// Counts matchings of order `n` satisfying `pred`, splitting the search
/// over the first-edge choice.
pub fn count_matchings_filtered<P>(n: usize, pred: P) -> BigUint
where
    P: Fn(&Matching) -> bool + Sync,
{
    if n == 0 {
        let empty = Matching::empty();
        return if pred(&empty) {
            BigUint::from(1u32)
        } else {
            BigUint::from(0u32)
        };
    }
    (2..=2 * n)
        .into_par_iter()
        .map(|j| {
            let mut partner = vec![0usize; 2 * n + 1];
            partner[1] = j;
            partner[j] = 1;
            let mut count = BigUint::from(0u32);
            visit_rec(n, &mut partner, 2, &mut |m| {
                if pred(m) {
                    count += 1u32;
                }
            });
            count
        })
        .sum()
}

/// Counts avoiders of `patterns` at order `n` by pruned search.
fn count_avoiders_at(n: usize, pattern_edges: &[Vec<Edge>]) -> BigUint {
    if pattern_edges.iter().any(|p| p.is_empty()) {
        // the empty pattern is contained in everything
        return BigUint::from(0u32);
    }
    if n == 0 {
        return BigUint::from(1u32);
    }
    (2..=2 * n)
        .into_par_iter()
        .map(|j| {
            let mut partner = vec![0usize; 2 * n + 1];
            partner[1] = j;
            partner[j] = 1;
            let mut edges = vec![Edge::new(1, j)];
            if violates(&edges, pattern_edges) {
                return BigUint::from(0u32);
            }
            let mut count = BigUint::from(0u32);
            prune_rec(2 * n, &mut partner, &mut edges, 2, pattern_edges, &mut count);
            count
        })
        .sum()
}

fn violates(edges: &[Edge], pattern_edges: &[Vec<Edge>]) -> bool {
    let newest = edges.len() - 1;
    pattern_edges
        .iter()
        .any(|p| pattern::edges_contain(edges, p, Some(newest)))
}

fn prune_rec(
    len: usize,
    partner: &mut Vec<usize>,
    edges: &mut Vec<Edge>,
    from: usize,
    pattern_edges: &[Vec<Edge>],
    count: &mut BigUint,
) {
    let mut i = from;
    while i <= len && partner[i] != 0 {
        i += 1;
    }
    if i > len {
        *count += 1u32;
        return;
    }
    for j in (i + 1)..=len {
        if partner[j] != 0 {
            continue;
        }
        partner[i] = j;
        partner[j] = i;
        edges.push(Edge::new(i, j));
        if !violates(edges, pattern_edges) {
            prune_rec(len, partner, edges, i + 1, pattern_edges, count);
        }
        edges.pop();
        partner[i] = 0;
        partner[j] = 0;
    }
}

fn pattern_set_label(patterns: &[Matching]) -> String {
    let parts: Vec<String> = patterns
        .iter()
        .map(|p| p.compact().unwrap_or_else(|| p.to_string()))
        .collect();
    parts.join(",")
}

/// `counts[n] = |M_n(S)|` for `n = 0..=n_max`, by pruned exhaustive search.
pub fn count_avoiders(n_max: usize, patterns: &[Matching]) -> CountTable {
    let pattern_edges: Vec<Vec<Edge>> = patterns.iter().map(|p| p.to_edges()).collect();
    let counts = (0..=n_max)
        .map(|n| count_avoiders_at(n, &pattern_edges))
        .collect();
    CountTable::new(
        format!("avoid({})", pattern_set_label(patterns)),
        counts,
        Source::BruteForce,
    )
}

/// `counts[n] = |M_n([u])|`: avoiders of every member of the cyclic class.
pub fn count_avoiders_unlabeled(n_max: usize, u: &UnlabeledMatching) -> CountTable {
    let members = u.members_vec();
    let mut t = count_avoiders(n_max, &members);
    t.label = format!("avoid({u})");
    t
}

/// `counts[n] = |mu_n(sigma)|`: matchings minimally containing `sigma`.
pub fn count_mu(n_max: usize, sigma: &Matching) -> CountTable {
    let counts = (0..=n_max)
        .map(|n| count_matchings_filtered(n, |m| pattern::minimally_contains(m, sigma)))
        .collect();
    CountTable::new(
        format!(
            "mu({})",
            sigma.compact().unwrap_or_else(|| sigma.to_string())
        ),
        counts,
        Source::BruteForce,
    )
}

/// Outcome of comparing two avoider tables order by order.
#[derive(Debug, Clone)]
pub struct WilfReport {
    pub table_a: CountTable,
    pub table_b: CountTable,
    /// Greatest order through which the tables agree.
    pub equivalent_up_to: usize,
    /// First order of disagreement, if any.
    pub diverges_at: Option<usize>,
}

pub fn wilf_check(a: &[Matching], b: &[Matching], n_max: usize) -> WilfReport {
    let table_a = count_avoiders(n_max, a);
    let table_b = count_avoiders(n_max, b);
    let diverges_at = table_a.first_divergence(&table_b);
    let equivalent_up_to = match diverges_at {
        Some(0) => 0,
        Some(n) => n - 1,
        None => n_max,
    };
    WilfReport {
        table_a,
        table_b,
        equivalent_up_to,
        diverges_at,
    }
}

pub mod cache {
    //! Optional JSON count cache. Advisory only: callers that need trusted
    //! numbers recompute.

    use std::collections::BTreeMap;
    use std::path::{Path, PathBuf};

    use num::BigUint;
    use serde::{Deserialize, Serialize};

    pub const SCHEMA_VERSION: u32 = 1;

    #[derive(Serialize, Deserialize)]
    struct FileFormat {
        v: u32,
        entries: BTreeMap<String, Vec<String>>,
    }

    #[derive(Debug, Default)]
    pub struct CountCache {
        path: Option<PathBuf>,
        entries: BTreeMap<String, Vec<String>>,
    }

    impl CountCache {
        /// Loads the cache at `path`, starting empty if the file does not
        /// exist or has a different schema version.
        pub fn open(path: &Path) -> CountCache {
            let entries = std::fs::read_to_string(path)
                .ok()
                .and_then(|text| serde_json::from_str::<FileFormat>(&text).ok())
                .filter(|f| f.v == SCHEMA_VERSION)
                .map(|f| f.entries)
                .unwrap_or_default();
            CountCache {
                path: Some(path.to_path_buf()),
                entries,
            }
        }

        pub fn get(&self, key: &str) -> Option<Vec<BigUint>> {
            let strings = self.entries.get(key)?;
            strings.iter().map(|s| s.parse().ok()).collect()
        }

        pub fn put(&mut self, key: &str, counts: &[BigUint]) {
            self.entries
                .insert(key.to_string(), counts.iter().map(|c| c.to_string()).collect());
        }

        pub fn save(&self) -> std::io::Result<()> {
            if let Some(path) = &self.path {
                let file = FileFormat {
                    v: SCHEMA_VERSION,
                    entries: self.entries.clone(),
                };
                std::fs::write(path, serde_json::to_string_pretty(&file)?)?;
            }
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> Matching {
        s.parse().unwrap()
    }

    fn nums(t: &CountTable) -> Vec<u64> {
        t.counts
            .iter()
            .map(|c| c.to_string().parse().unwrap())
            .collect()
    }

    #[test]
    fn enumeration_counts_are_double_factorials() {
        assert_eq!(enumerate_matchings(0), vec![Matching::empty()]);
        let order2 = enumerate_matchings(2);
        assert_eq!(order2.len(), 3);
        for want in ["1122", "1212", "1221"] {
            assert!(order2.contains(&m(want)));
        }
        assert_eq!(enumerate_matchings(3).len(), 15);
        assert_eq!(enumerate_matchings(5).len(), 945);
    }

    #[test]
    fn catalan_and_factorial_classes() {
        let t = count_avoiders(5, &[m("1212")]);
        assert_eq!(nums(&t), vec![1, 1, 2, 5, 14, 42]);
        let t = count_avoiders(5, &[m("1221")]);
        assert_eq!(nums(&t), vec![1, 1, 2, 5, 14, 42]);
        let t = count_avoiders(5, &[m("1122")]);
        assert_eq!(nums(&t), vec![1, 1, 2, 6, 24, 120]);
    }

    #[test]
    fn unlabeled_small_classes() {
        let u: UnlabeledMatching = "[112323]".parse().unwrap();
        let t = count_avoiders_unlabeled(6, &u);
        assert_eq!(nums(&t), vec![1, 1, 3, 9, 25, 68, 189]);

        let u: UnlabeledMatching = "[1122]".parse().unwrap();
        let t = count_avoiders_unlabeled(6, &u);
        assert_eq!(nums(&t), vec![1, 1, 1, 1, 1, 1, 1]);

        let u: UnlabeledMatching = "[123123]".parse().unwrap();
        let t = count_avoiders_unlabeled(3, &u);
        assert_eq!(nums(&t)[3], 14);
    }

    #[test]
    fn mu_1212_small() {
        let t = count_mu(4, &m("1212"));
        assert_eq!(nums(&t), vec![0, 0, 1, 5, 21]);
    }

    #[test]
    fn mu_11_small() {
        let t = count_mu(2, &m("11"));
        assert_eq!(nums(&t)[1], 1);
    }

    #[test]
    fn mu_order_floor() {
        let t = count_mu(1, &m("1212"));
        assert_eq!(nums(&t), vec![0, 0]);
    }

    #[test]
    fn wilf_examples() {
        let r = wilf_check(&[m("123123")], &[m("123321")], 5);
        assert_eq!(r.diverges_at, None);
        assert_eq!(r.equivalent_up_to, 5);

        let r = wilf_check(&[m("1212")], &[m("1122")], 3);
        assert_eq!(r.diverges_at, Some(3));
        assert_eq!(r.equivalent_up_to, 2);
    }

    #[test]
    fn prop31_instance() {
        // juxtapose(1212,1212) vs juxtapose(1221,1221)
        let a = m("1212").juxtapose(&m("1212"));
        let b = m("1221").juxtapose(&m("1221"));
        let r = wilf_check(&[a], &[b], 5);
        assert_eq!(r.diverges_at, None);
    }

    #[test]
    fn pruned_matches_unpruned_filter() {
        let pats = [m("1212"), m("1221")];
        for n in 0..=5 {
            let pruned = count_avoiders(n, &pats).counts[n].clone();
            let plain = count_matchings_filtered(n, |mm| pattern::avoids_all(mm, &pats));
            assert_eq!(pruned, plain, "n={n}");
        }
    }

    #[test]
    fn cache_roundtrip() {
        let dir = std::env::temp_dir().join("matchkit-cache-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("cache.json");
        let _ = std::fs::remove_file(&path);
        let mut c = cache::CountCache::open(&path);
        assert!(c.get("avoid(1212)").is_none());
        c.put("avoid(1212)", &[BigUint::from(1u32), BigUint::from(1u32)]);
        c.save().unwrap();
        let c2 = cache::CountCache::open(&path);
        assert_eq!(
            c2.get("avoid(1212)"),
            Some(vec![BigUint::from(1u32), BigUint::from(1u32)])
        );
    }
}
