//! The Tamari lattice built directly on binary trees, ordered by right
//! rotation `((A B) C) -> (A (B C))`. Shares no code with the bracket-vector
//! side, so the two can be compared.
//!
//! Rotations go upward: the left comb is the bottom, matching the zero
//! bracket vector, and the right comb is the top.

use std::collections::HashMap;
use std::fmt;
use std::rc::Rc;

use crate::poset::Poset;

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum BinaryTree {
    Leaf,
    Node(Rc<BinaryTree>, Rc<BinaryTree>),
}

impl BinaryTree {
    fn node(left: Rc<BinaryTree>, right: Rc<BinaryTree>) -> Rc<BinaryTree> {
        Rc::new(BinaryTree::Node(left, right))
    }

    pub fn internal_nodes(&self) -> usize {
        match self {
            BinaryTree::Leaf => 0,
            BinaryTree::Node(l, r) => 1 + l.internal_nodes() + r.internal_nodes(),
        }
    }

    /// Every tree reachable by one right rotation at any node.
    pub fn right_rotations(self: &Rc<Self>) -> Vec<Rc<BinaryTree>> {
        let BinaryTree::Node(left, right) = self.as_ref() else {
            return Vec::new();
        };
        let mut out = Vec::new();
        if let BinaryTree::Node(a, b) = left.as_ref() {
            out.push(Self::node(a.clone(), Self::node(b.clone(), right.clone())));
        }
        for l in left.right_rotations() {
            out.push(Self::node(l, right.clone()));
        }
        for r in right.right_rotations() {
            out.push(Self::node(left.clone(), r));
        }
        out
    }
}

impl fmt::Display for BinaryTree {
    /// Leaves print as `*`, nodes as `(left right)` without the space.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BinaryTree::Leaf => write!(f, "*"),
            BinaryTree::Node(l, r) => write!(f, "({l}{r})"),
        }
    }
}

impl fmt::Debug for BinaryTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// All binary trees with `nodes` internal nodes.
pub fn all_trees(nodes: usize) -> Vec<Rc<BinaryTree>> {
    let mut table: Vec<Vec<Rc<BinaryTree>>> = vec![vec![Rc::new(BinaryTree::Leaf)]];
    for k in 1..=nodes {
        let mut level = Vec::new();
        for left in 0..k {
            for l in &table[left] {
                for r in &table[k - 1 - left] {
                    level.push(BinaryTree::node(l.clone(), r.clone()));
                }
            }
        }
        table.push(level);
    }
    table.swap_remove(nodes)
}

/// Trees with `n + 1` internal nodes, sorted by their printed form, with one
/// cover per right rotation.
pub fn rotation_lattice_oracle(n: usize) -> Poset<String> {
    let mut trees = all_trees(n + 1);
    trees.sort_by_cached_key(|t| t.to_string());
    let index: HashMap<String, usize> = trees
        .iter()
        .enumerate()
        .map(|(k, t)| (t.to_string(), k))
        .collect();
    let covers = trees
        .iter()
        .enumerate()
        .flat_map(|(k, t)| {
            t.right_rotations()
                .into_iter()
                .map(|r| (k, index[&r.to_string()]))
                .collect::<Vec<_>>()
        })
        .collect();
    Poset::from_covers(trees.iter().map(|t| t.to_string()).collect(), covers)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tamari::catalan;

    #[test]
    fn tree_counts_are_catalan() {
        for k in 0..=7 {
            assert_eq!(all_trees(k).len() as u64, catalan(k));
            assert!(all_trees(k).iter().all(|t| t.internal_nodes() == k));
        }
    }

    #[test]
    fn rotation_preserves_size() {
        for t in all_trees(5) {
            for r in t.right_rotations() {
                assert_eq!(r.internal_nodes(), 5);
            }
        }
    }

    #[test]
    fn small_oracles() {
        let p = rotation_lattice_oracle(1);
        assert_eq!((p.len(), p.covers().len()), (2, 1));
        let p = rotation_lattice_oracle(2);
        assert_eq!((p.len(), p.covers().len()), (5, 5));
        let p = rotation_lattice_oracle(3);
        assert_eq!((p.len(), p.covers().len()), (14, 21));
    }

    #[test]
    fn rotations_are_exactly_the_covers() {
        // The transitive reduction of the rotation order recovers every
        // rotation edge.
        for n in 1..=4 {
            let p = rotation_lattice_oracle(n);
            let ups = p.up_sets();
            let reduced = Poset::from_order(
                (0..p.len()).collect::<Vec<usize>>(),
                |&a, &b| ups[a].contains(b),
                1,
            );
            assert_eq!(reduced.covers(), p.covers(), "n={n}");
        }
    }

    #[test]
    fn bottom_is_left_comb() {
        let p = rotation_lattice_oracle(2);
        let bottom = p.minimal();
        assert_eq!(bottom.len(), 1);
        assert_eq!(p.elements()[bottom[0]], "(((**)*)*)");
        let top = p.maximal();
        assert_eq!(p.elements()[top[0]], "(*(*(**)))");
    }
}
