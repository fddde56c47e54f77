//! The ternary-tree bijection for [123132]-avoiders, ternary-tree
//! enumeration, and the permutation embedding.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::matching::{Edge, Matching};
use crate::pattern::{avoids_unlabeled, cyclic_class};

/// An ordered rooted tree where every node has exactly three (possibly
/// empty) subtrees.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TernaryTree {
    Empty,
    Node(Box<[TernaryTree; 3]>),
}

impl TernaryTree {
    pub fn node(t1: TernaryTree, t2: TernaryTree, t3: TernaryTree) -> Self {
        TernaryTree::Node(Box::new([t1, t2, t3]))
    }

    pub fn leaf() -> Self {
        Self::node(TernaryTree::Empty, TernaryTree::Empty, TernaryTree::Empty)
    }

    pub fn node_count(&self) -> usize {
        match self {
            TernaryTree::Empty => 0,
            TernaryTree::Node(children) => {
                1 + children.iter().map(|c| c.node_count()).sum::<usize>()
            }
        }
    }
}

/// Nested-parenthesis form: "." for the empty tree, "(t1 t2 t3)" for a node.
impl fmt::Display for TernaryTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TernaryTree::Empty => write!(f, "."),
            TernaryTree::Node(children) => {
                write!(f, "({} {} {})", children[0], children[1], children[2])
            }
        }
    }
}

impl FromStr for TernaryTree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut chars = s.chars().filter(|c| !c.is_whitespace()).peekable();
        let tree = parse_tree(&mut chars)?;
        if chars.next().is_some() {
            return Err(Error::Parse("trailing input after tree".into()));
        }
        Ok(tree)
    }
}

fn parse_tree(chars: &mut std::iter::Peekable<impl Iterator<Item = char>>) -> Result<TernaryTree> {
    match chars.next() {
        Some('.') => Ok(TernaryTree::Empty),
        Some('(') => {
            let t1 = parse_tree(chars)?;
            let t2 = parse_tree(chars)?;
            let t3 = parse_tree(chars)?;
            match chars.next() {
                Some(')') => Ok(TernaryTree::node(t1, t2, t3)),
                other => Err(Error::Parse(format!("expected ')', got {other:?}"))),
            }
        }
        other => Err(Error::Parse(format!("expected '.' or '(', got {other:?}"))),
    }
}

/// Maps a ternary tree to a [123132]-avoiding matching. The matching's
/// order equals the node count.
pub fn phi(t: &TernaryTree) -> Matching {
    let mut next_label = 0usize;
    let raw = phi_raw(t, &mut next_label);
    Matching::canonicalize(&raw).expect("phi emits every label twice")
}

/// Builds the linear diagram as a raw label sequence. For a node with
/// subtree diagrams G1, G2, G3 and a fresh edge e:
/// empty G1 gives [e, G2, e, G3]; otherwise e's endpoints go immediately
/// left of the endpoints of G1's leftmost edge, with G2 and G3 in the gaps.
fn phi_raw(t: &TernaryTree, next_label: &mut usize) -> Vec<usize> {
    match t {
        TernaryTree::Empty => Vec::new(),
        TernaryTree::Node(children) => {
            let g1 = phi_raw(&children[0], next_label);
            let g2 = phi_raw(&children[1], next_label);
            let g3 = phi_raw(&children[2], next_label);
            *next_label += 1;
            let e = *next_label;
            if g1.is_empty() {
                let mut out = vec![e];
                out.extend(g2);
                out.push(e);
                out.extend(g3);
                out
            } else {
                // g1[0] labels the leftmost edge; find its right endpoint
                let rpos = g1
                    .iter()
                    .skip(1)
                    .position(|&v| v == g1[0])
                    .expect("leftmost edge closes")
                    + 1;
                let mut out = vec![e];
                out.extend(g2);
                out.extend(&g1[..rpos]);
                out.push(e);
                out.extend(g3);
                out.extend(&g1[rpos..]);
                out
            }
        }
    }
}

/// Inverse of `phi`; rejects matchings containing the unlabeled pattern
/// [123132].
pub fn psi(m: &Matching) -> Result<TernaryTree> {
    if !avoids_unlabeled(m, &cyclic_class(&"123132".parse::<Matching>().unwrap())) {
        return Err(Error::PsiDomain);
    }
    Ok(psi_edges(&m.to_edges()))
}

fn psi_edges(edges: &[Edge]) -> TernaryTree {
    if edges.is_empty() {
        return TernaryTree::Empty;
    }
    let leftmost = *edges.iter().min_by_key(|e| e.left).unwrap();
    let crossed_by_leftmost: Vec<Edge> = edges
        .iter()
        .copied()
        .filter(|e| leftmost.crosses(e) && leftmost.left < e.left)
        .collect();
    if crossed_by_leftmost.is_empty() {
        // isolated or purely nesting leftmost edge
        let nested: Vec<Edge> = edges
            .iter()
            .copied()
            .filter(|e| e.nested_in(&leftmost))
            .collect();
        let rest: Vec<Edge> = edges
            .iter()
            .copied()
            .filter(|e| *e != leftmost && !e.nested_in(&leftmost))
            .collect();
        TernaryTree::node(TernaryTree::Empty, psi_edges(&nested), psi_edges(&rest))
    } else {
        let crossed = *crossed_by_leftmost.iter().min_by_key(|e| e.left).unwrap();
        let lambda2: Vec<Edge> = edges
            .iter()
            .copied()
            .filter(|e| leftmost.left < e.left && e.right < crossed.left)
            .collect();
        let lambda3: Vec<Edge> = edges
            .iter()
            .copied()
            .filter(|e| leftmost.right < e.left && e.right < crossed.right)
            .collect();
        let lambda1: Vec<Edge> = edges
            .iter()
            .copied()
            .filter(|e| *e != leftmost && !lambda2.contains(e) && !lambda3.contains(e))
            .collect();
        TernaryTree::node(psi_edges(&lambda1), psi_edges(&lambda2), psi_edges(&lambda3))
    }
}

/// All ternary trees with exactly `n` nodes, built bottom-up by subtree
/// size; count is (1/(2n+1)) binom(3n, n).
pub fn enumerate_ternary_trees(n: usize) -> Vec<TernaryTree> {
    let mut by_size: Vec<Vec<TernaryTree>> = vec![vec![TernaryTree::Empty]];
    for size in 1..=n {
        let mut trees = Vec::new();
        for i in 0..size {
            for j in 0..size - i {
                let k = size - 1 - i - j;
                for t1 in &by_size[i] {
                    for t2 in &by_size[j] {
                        for t3 in &by_size[k] {
                            trees.push(TernaryTree::node(t1.clone(), t2.clone(), t3.clone()));
                        }
                    }
                }
            }
        }
        by_size.push(trees);
    }
    by_size.pop().unwrap()
}

/// The permutational matching 12...n p_1...p_n.
pub fn perm_to_matching(p: &[usize]) -> Result<Matching> {
    let n = p.len();
    let mut seen = vec![false; n + 1];
    for &v in p {
        if v == 0 || v > n || seen[v] {
            return Err(Error::BadPermutation(format!("{p:?}")));
        }
        seen[v] = true;
    }
    let mut raw: Vec<usize> = (1..=n).collect();
    raw.extend_from_slice(p);
    Ok(Matching::canonicalize(&raw).expect("permutation values occur twice"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> Matching {
        s.parse().unwrap()
    }

    #[test]
    fn phi_base_cases() {
        assert_eq!(phi(&TernaryTree::Empty), Matching::empty());
        assert_eq!(phi(&TernaryTree::leaf()), m("11"));
        let t = TernaryTree::node(TernaryTree::leaf(), TernaryTree::Empty, TernaryTree::Empty);
        assert_eq!(phi(&t), m("1212"));
    }

    #[test]
    fn psi_base_cases() {
        let only_t2 = TernaryTree::node(TernaryTree::Empty, TernaryTree::leaf(), TernaryTree::Empty);
        assert_eq!(psi(&m("1221")).unwrap(), only_t2);
        let only_t3 = TernaryTree::node(TernaryTree::Empty, TernaryTree::Empty, TernaryTree::leaf());
        assert_eq!(psi(&m("1122")).unwrap(), only_t3);
        let only_t1 = TernaryTree::node(TernaryTree::leaf(), TernaryTree::Empty, TernaryTree::Empty);
        assert_eq!(psi(&m("1212")).unwrap(), only_t1);
    }

    #[test]
    fn psi_rejects_class_members() {
        assert!(psi(&m("123132")).is_err());
        assert!(psi(&m("123213")).is_err());
        assert!(psi(&m("121323")).is_err());
    }

    #[test]
    fn tree_counts() {
        assert_eq!(enumerate_ternary_trees(0).len(), 1);
        assert_eq!(enumerate_ternary_trees(1).len(), 1);
        assert_eq!(enumerate_ternary_trees(2).len(), 3);
        assert_eq!(enumerate_ternary_trees(4).len(), 55);
    }

    #[test]
    fn small_roundtrip() {
        for n in 0..=4 {
            for t in enumerate_ternary_trees(n) {
                let image = phi(&t);
                assert_eq!(image.order(), n);
                assert_eq!(psi(&image).unwrap(), t, "tree {t}");
            }
        }
    }

    #[test]
    fn tree_text_roundtrip() {
        for n in 0..=3 {
            for t in enumerate_ternary_trees(n) {
                let s = t.to_string();
                assert_eq!(s.parse::<TernaryTree>().unwrap(), t);
            }
        }
        assert!("(".parse::<TernaryTree>().is_err());
        assert!("(. .)".parse::<TernaryTree>().is_err());
    }

    #[test]
    fn perm_embedding() {
        assert_eq!(perm_to_matching(&[1, 2, 3]).unwrap(), m("123123"));
        assert_eq!(perm_to_matching(&[3, 2, 1]).unwrap(), m("123321"));
        assert_eq!(perm_to_matching(&[1]).unwrap(), m("11"));
        assert!(perm_to_matching(&[1, 1]).is_err());
        assert!(perm_to_matching(&[2, 3]).is_err());
    }
}
