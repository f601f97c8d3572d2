//! Binary plane trees of 132-avoiding permutations, and two tree surgeries
//! that carry colored occurrences of one pattern to colored occurrences of
//! 123.
//!
//! `T(σ)` has the entry `n` at the root, the entries left of `n` in the left
//! subtree and those right of it in the right subtree, recursively. Since
//! `σ` avoids 132, everything left of `n` exceeds everything right of it,
//! so the shape alone determines `σ`.
//!
//! Vertices have stable ids (`tree_of` uses position − 1), so a coloring
//! follows the vertices through surgery rather than their positions.

use std::fmt::Write as _;

use crate::classes::{generate, ClassId};
use crate::error::{Error, Result};
use crate::perm::{contains, is_occurrence, list_occurrences, Occurrence, Pattern, Permutation};

pub type VertexId = usize;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
struct Node {
    left: Option<VertexId>,
    right: Option<VertexId>,
    parent: Option<VertexId>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinaryPlaneTree {
    nodes: Vec<Node>,
    root: Option<VertexId>,
}

impl BinaryPlaneTree {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn root(&self) -> Option<VertexId> {
        self.root
    }

    pub fn left(&self, v: VertexId) -> Option<VertexId> {
        self.nodes[v].left
    }

    pub fn right(&self, v: VertexId) -> Option<VertexId> {
        self.nodes[v].right
    }

    pub fn parent(&self, v: VertexId) -> Option<VertexId> {
        self.nodes[v].parent
    }

    /// Whether `a` lies in the subtree rooted at `b` (including `b`).
    pub fn in_subtree(&self, a: VertexId, b: VertexId) -> bool {
        let mut cur = Some(a);
        while let Some(v) = cur {
            if v == b {
                return true;
            }
            cur = self.nodes[v].parent;
        }
        false
    }

    /// `a` is in the left subtree of `b`.
    pub fn is_left_descendant(&self, a: VertexId, b: VertexId) -> bool {
        self.nodes[b].left.is_some_and(|l| self.in_subtree(a, l))
    }

    /// `a` is in the right subtree of `b`.
    pub fn is_right_descendant(&self, a: VertexId, b: VertexId) -> bool {
        self.nodes[b].right.is_some_and(|r| self.in_subtree(a, r))
    }

    /// Every vertex has at most one child (the trees of `S_n(132,231)`).
    pub fn is_chain(&self) -> bool {
        self.nodes
            .iter()
            .all(|n| n.left.is_none() || n.right.is_none())
    }

    /// No vertex inside a right subtree has a left child (the trees of
    /// `S_n(132,312)`). Equivalently, every vertex with a left child is
    /// reached from the root along left edges only.
    pub fn is_right_bare(&self) -> bool {
        (0..self.len()).all(|v| self.nodes[v].left.is_none() || self.left_spine(v))
    }

    fn left_spine(&self, mut v: VertexId) -> bool {
        while let Some(p) = self.nodes[v].parent {
            if self.nodes[p].left != Some(v) {
                return false;
            }
            v = p;
        }
        true
    }

    /// Vertices in left-to-right (in-order) order.
    pub fn in_order(&self) -> Vec<VertexId> {
        let mut out = Vec::with_capacity(self.len());
        let mut stack = Vec::new();
        let mut cur = self.root;
        while cur.is_some() || !stack.is_empty() {
            while let Some(v) = cur {
                stack.push(v);
                cur = self.nodes[v].left;
            }
            let v = stack.pop().expect("nonempty");
            out.push(v);
            cur = self.nodes[v].right;
        }
        out
    }

    fn subtree_size(&self, v: Option<VertexId>) -> usize {
        let Some(v) = v else { return 0 };
        1 + self.subtree_size(self.nodes[v].left) + self.subtree_size(self.nodes[v].right)
    }

    /// The 132-avoiding permutation of the tree together with each
    /// vertex's 1-based position.
    pub fn perm_with_positions(&self) -> (Permutation, Vec<usize>) {
        let n = self.len();
        let mut values = vec![0; n];
        let mut positions = vec![0; n];
        // (vertex, first position, lowest value) of each pending subtree.
        let mut stack: Vec<(VertexId, usize, usize)> =
            self.root.into_iter().map(|r| (r, 1, 1)).collect();
        while let Some((v, start, low)) = stack.pop() {
            let node = self.nodes[v];
            let l = self.subtree_size(node.left);
            let r = self.subtree_size(node.right);
            let pos = start + l;
            positions[v] = pos;
            values[pos - 1] = low + l + r;
            if let Some(c) = node.left {
                stack.push((c, start, low + r));
            }
            if let Some(c) = node.right {
                stack.push((c, pos + 1, low));
            }
        }
        (Permutation::from_vec_unchecked(values), positions)
    }

    pub fn to_dot(&self, black: &[VertexId]) -> String {
        let (sigma, positions) = self.perm_with_positions();
        let mut out = String::from("digraph T {\n");
        for (v, &pos) in positions.iter().enumerate() {
            let value = sigma.at(pos);
            let style = if black.contains(&v) {
                ", style=filled, fillcolor=black, fontcolor=white"
            } else {
                ""
            };
            let _ = writeln!(out, "  v{v} [label=\"{value}\"{style}];");
        }
        for v in 0..self.len() {
            for (side, child) in [("L", self.nodes[v].left), ("R", self.nodes[v].right)] {
                if let Some(c) = child {
                    let _ = writeln!(out, "  v{v} -> v{c} [label={side}];");
                }
            }
        }
        out.push_str("}\n");
        out
    }

    fn detach(&mut self, v: VertexId) {
        if let Some(p) = self.nodes[v].parent.take() {
            if self.nodes[p].left == Some(v) {
                self.nodes[p].left = None;
            } else {
                self.nodes[p].right = None;
            }
        } else if self.root == Some(v) {
            self.root = None;
        }
    }

    fn attach_left(&mut self, parent: Option<VertexId>, v: VertexId) {
        match parent {
            Some(p) => {
                debug_assert!(self.nodes[p].left.is_none());
                self.nodes[p].left = Some(v);
            }
            None => self.root = Some(v),
        }
        self.nodes[v].parent = parent;
    }

    fn attach_right(&mut self, p: VertexId, v: VertexId) {
        debug_assert!(self.nodes[p].right.is_none());
        self.nodes[p].right = Some(v);
        self.nodes[v].parent = Some(p);
    }
}

/// Builds `T(σ)`; vertex `i` is the entry at position `i + 1`.
pub fn tree_of(sigma: &Permutation) -> Result<BinaryPlaneTree> {
    if contains(sigma, &"132".parse().expect("static pattern")) {
        return Err(Error::OutsideDomain {
            perm: sigma.to_string(),
            map: "tree_of",
        });
    }
    let v = sigma.values();
    let mut nodes = vec![Node::default(); v.len()];
    // Cartesian tree on maxima: a stack of the right spine.
    let mut spine: Vec<usize> = Vec::new();
    for i in 0..v.len() {
        let mut last = None;
        while let Some(&top) = spine.last() {
            if v[top] > v[i] {
                break;
            }
            last = spine.pop();
        }
        if let Some(l) = last {
            nodes[i].left = Some(l);
            nodes[l].parent = Some(i);
        }
        if let Some(&top) = spine.last() {
            nodes[top].right = Some(i);
            nodes[i].parent = Some(top);
        }
        spine.push(i);
    }
    Ok(BinaryPlaneTree {
        nodes,
        root: spine.first().copied(),
    })
}

pub fn perm_of(t: &BinaryPlaneTree) -> Permutation {
    t.perm_with_positions().0
}

/// Vertices of an occurrence, left to right.
pub fn occurrence_vertices(
    t: &BinaryPlaneTree,
    occ: &Occurrence,
    q: &Pattern,
) -> Result<Vec<VertexId>> {
    let sigma = perm_of(t);
    if !is_occurrence(&sigma, q, occ) {
        return Err(Error::NotAnOccurrence {
            occurrence: occ.to_string(),
            pattern: q.compact(),
            host: sigma.to_string(),
        });
    }
    let order = t.in_order();
    Ok(occ.indices().iter().map(|&p| order[p - 1]).collect())
}

/// A tree with three black vertices, listed left to right.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ColoredTree {
    pub tree: BinaryPlaneTree,
    pub black: [VertexId; 3],
}

impl ColoredTree {
    pub fn from_occurrence(sigma: &Permutation, occ: &Occurrence) -> Result<Self> {
        let tree = tree_of(sigma)?;
        let idx = occ.indices();
        if idx.len() != 3 || idx.iter().any(|&p| p == 0 || p > sigma.len()) {
            return Err(Error::InvalidArgument(format!(
                "{occ} is not a triple of positions in {sigma}"
            )));
        }
        Ok(Self {
            tree,
            black: [idx[0] - 1, idx[1] - 1, idx[2] - 1],
        })
    }

    /// The permutation and the positions of the black vertices.
    pub fn to_occurrence(&self) -> (Permutation, Occurrence) {
        let (sigma, positions) = self.tree.perm_with_positions();
        let mut idx: Vec<usize> = self.black.iter().map(|&v| positions[v]).collect();
        idx.sort_unstable();
        (sigma, Occurrence::new(idx).expect("distinct positions"))
    }

    fn reorder(tree: BinaryPlaneTree, vertices: [VertexId; 3]) -> Self {
        let (_, positions) = tree.perm_with_positions();
        let mut black = vertices;
        black.sort_by_key(|&v| positions[v]);
        Self { tree, black }
    }

    fn forms(&self, q: &str) -> bool {
        let (sigma, occ) = self.to_occurrence();
        is_occurrence(&sigma, &q.parse().expect("static pattern"), &occ)
    }

    pub fn to_dot(&self) -> String {
        self.tree.to_dot(&self.black)
    }
}

fn outside(t: &ColoredTree, map: &'static str) -> Error {
    Error::OutsideDomain {
        perm: format!("{} colored at {:?}", perm_of(&t.tree), t.to_occurrence().1),
        map,
    }
}

/// Chain tree with a black 213 `(Q2, Q1, Q3)`: the subtree below `Q2`
/// moves from its right slot to its left slot, giving a black 123
/// `(Q1, Q2, Q3)`.
pub fn rho(t: &ColoredTree) -> Result<ColoredTree> {
    if !t.tree.is_chain() || !t.forms("213") {
        return Err(outside(t, "rho"));
    }
    let [q2, q1, q3] = t.black;
    let mut tree = t.tree.clone();
    let child = tree.nodes[q2]
        .right
        .take()
        .expect("Q1 is a right descendant of Q2");
    tree.nodes[q2].left = Some(child);
    Ok(ColoredTree::reorder(tree, [q1, q2, q3]))
}

/// Moves the subtree below the middle black vertex back to its right slot.
pub fn rho_inv(t: &ColoredTree) -> Result<ColoredTree> {
    if !t.tree.is_chain() || !t.forms("123") {
        return Err(outside(t, "rho"));
    }
    let [r1, r2, r3] = t.black;
    let mut tree = t.tree.clone();
    let child = tree.nodes[r2]
        .left
        .take()
        .expect("R1 is a left descendant of R2");
    tree.nodes[r2].right = Some(child);
    Ok(ColoredTree::reorder(tree, [r2, r1, r3]))
}

/// Right-bare tree with a black 231 `(Q2, Q3, Q1)`. With `x` the lowest
/// vertex on the path from `Q3` to the root having `Q1` as a right
/// descendant and `y` its parent, `Q1` (with its subtree) takes the place
/// of `x`, and what remains of the subtree at `x` becomes the left subtree
/// of `Q1`. The black vertices then form a 123.
pub fn varrho(t: &ColoredTree) -> Result<ColoredTree> {
    if !t.tree.is_right_bare() || !t.forms("231") {
        return Err(outside(t, "varrho"));
    }
    let [q2, q3, q1] = t.black;
    let mut tree = t.tree.clone();
    let mut x = q3;
    while !tree.is_right_descendant(q1, x) {
        x = tree.nodes[x]
            .parent
            .expect("some ascendant has Q1 on its right");
    }
    let y = tree.nodes[x].parent;
    tree.detach(q1);
    tree.detach(x);
    tree.attach_left(y, q1);
    tree.attach_left(Some(q1), x);
    Ok(ColoredTree::reorder(tree, [q2, q3, q1]))
}

/// Undoes [`varrho`]: the left subtree of the last black vertex goes back
/// to its place, and that vertex is hung at the end of the right path
/// from the left subtree's root.
pub fn varrho_inv(t: &ColoredTree) -> Result<ColoredTree> {
    if !t.tree.is_right_bare() || !t.forms("123") {
        return Err(outside(t, "varrho"));
    }
    let [r1, r2, r3] = t.black;
    let mut tree = t.tree.clone();
    let x = tree.nodes[r3].left.expect("R2 is a left descendant of R3");
    let y = tree.nodes[r3].parent;
    tree.detach(x);
    tree.detach(r3);
    tree.attach_left(y, x);
    let mut last = x;
    while let Some(r) = tree.nodes[last].right {
        last = r;
    }
    tree.attach_right(last, r3);
    Ok(ColoredTree::reorder(tree, [r1, r2, r3]))
}

/// All trees of class `id` with a black occurrence of `q`, `n` vertices.
pub fn colored_family(id: ClassId, q: &Pattern, n: usize) -> Vec<ColoredTree> {
    generate(id, n)
        .flat_map(|sigma| {
            list_occurrences(&sigma, q)
                .into_iter()
                .map(move |occ| ColoredTree::from_occurrence(&sigma, &occ).expect("132-avoiding"))
                .collect::<Vec<_>>()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::closed_form;
    use crate::perm::{all_permutations, avoids};
    use num_bigint::BigInt;
    use std::collections::BTreeSet;

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn pat(s: &str) -> Pattern {
        s.parse().unwrap()
    }

    #[test]
    fn small_shapes() {
        let t = tree_of(&perm("2 1 3")).unwrap();
        assert_eq!(t.root(), Some(2));
        assert_eq!(t.left(2), Some(0));
        assert_eq!(t.right(0), Some(1));
        assert_eq!(t.right(2), None);

        let t = tree_of(&perm("4 3 2 1")).unwrap();
        assert_eq!(t.root(), Some(0));
        assert!((0..3).all(|v| t.right(v) == Some(v + 1) && t.left(v).is_none()));

        let t = tree_of(&perm("1 2 3 4")).unwrap();
        assert_eq!(t.root(), Some(3));
        assert!((1..4).all(|v| t.left(v) == Some(v - 1) && t.right(v).is_none()));
        assert_eq!(perm_of(&t).to_string(), "1 2 3 4");

        assert_eq!(perm_of(&tree_of(&perm("1")).unwrap()).to_string(), "1");
        assert!(tree_of(&perm("1 3 2")).is_err());
    }

    #[test]
    fn round_trip_on_132_avoiders() {
        let q = pat("132");
        for n in 0..=9 {
            for sigma in all_permutations(n).filter(|s| !contains(s, &q)) {
                let t = tree_of(&sigma).unwrap();
                let (back, positions) = t.perm_with_positions();
                assert_eq!(back, sigma);
                assert!(positions.iter().enumerate().all(|(v, &p)| p == v + 1));
            }
        }
    }

    #[test]
    fn shape_classes() {
        let chain = [pat("132"), pat("231")];
        let bare = [pat("132"), pat("312")];
        for n in 1..=8 {
            for sigma in all_permutations(n).filter(|s| !contains(s, &pat("132"))) {
                let t = tree_of(&sigma).unwrap();
                assert_eq!(t.is_chain(), avoids(&sigma, &chain), "{sigma}");
                assert_eq!(t.is_right_bare(), avoids(&sigma, &bare), "{sigma}");
            }
        }
    }

    #[test]
    fn occurrence_vertex_examples() {
        let t = tree_of(&perm("2 1 3")).unwrap();
        let occ = Occurrence::new(vec![1, 2, 3]).unwrap();
        let v = occurrence_vertices(&t, &occ, &pat("213")).unwrap();
        let (q2, q1, q3) = (v[0], v[1], v[2]);
        assert!(t.is_right_descendant(q1, q2) && t.is_left_descendant(q2, q3));
        assert!(occurrence_vertices(&t, &occ, &pat("123")).is_err());

        let t = tree_of(&perm("1 2 3")).unwrap();
        let v = occurrence_vertices(&t, &occ, &pat("123")).unwrap();
        assert!(t.is_left_descendant(v[0], v[1]) && t.is_left_descendant(v[1], v[2]));

        let t = tree_of(&perm("2 3 1")).unwrap();
        let v = occurrence_vertices(&t, &occ, &pat("231")).unwrap();
        assert_eq!(t.left(v[1]), Some(v[0]));
        assert!(t.is_right_descendant(v[2], v[1]));
    }

    #[test]
    fn occurrence_relations_everywhere() {
        for n in 3..=8 {
            for sigma in all_permutations(n).filter(|s| !contains(s, &pat("132"))) {
                let t = tree_of(&sigma).unwrap();
                for occ in list_occurrences(&sigma, &pat("123")) {
                    let v = occurrence_vertices(&t, &occ, &pat("123")).unwrap();
                    assert!(t.is_left_descendant(v[0], v[1]) && t.is_left_descendant(v[1], v[2]));
                }
                if t.is_chain() {
                    for occ in list_occurrences(&sigma, &pat("213")) {
                        let v = occurrence_vertices(&t, &occ, &pat("213")).unwrap();
                        assert!(
                            t.is_left_descendant(v[0], v[2]) && t.is_right_descendant(v[1], v[0])
                        );
                    }
                }
                if t.is_right_bare() {
                    for occ in list_occurrences(&sigma, &pat("231")) {
                        let v = occurrence_vertices(&t, &occ, &pat("231")).unwrap();
                        assert!(t.is_left_descendant(v[0], v[1]));
                        let mut x = v[1];
                        while !t.is_right_descendant(v[2], x) {
                            x = t.parent(x).expect("an ascendant sees Q1 on its right");
                        }
                        if let Some(y) = t.parent(x) {
                            assert_eq!(t.left(y), Some(x));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn rho_example() {
        let t =
            ColoredTree::from_occurrence(&perm("2 1 3"), &Occurrence::new(vec![1, 2, 3]).unwrap())
                .unwrap();
        let (sigma, occ) = rho(&t).unwrap().to_occurrence();
        assert_eq!(sigma.to_string(), "1 2 3");
        assert_eq!(occ.indices(), &[1, 2, 3]);
    }

    #[test]
    fn varrho_example() {
        let t =
            ColoredTree::from_occurrence(&perm("2 3 1"), &Occurrence::new(vec![1, 2, 3]).unwrap())
                .unwrap();
        let img = varrho(&t).unwrap();
        let root = img.tree.root().unwrap();
        assert_eq!(root, 2);
        assert_eq!(img.tree.left(2), Some(1));
        assert_eq!(img.tree.left(1), Some(0));
        let (sigma, occ) = img.to_occurrence();
        assert_eq!(sigma.to_string(), "1 2 3");
        assert_eq!(occ.indices(), &[1, 2, 3]);
    }

    fn check_bijection(
        id: ClassId,
        from: &str,
        forward: fn(&ColoredTree) -> Result<ColoredTree>,
        backward: fn(&ColoredTree) -> Result<ColoredTree>,
        max_n: usize,
    ) {
        for n in 3..=max_n {
            let domain = colored_family(id, &pat(from), n);
            let codomain: BTreeSet<(Permutation, Occurrence)> = colored_family(id, &pat("123"), n)
                .iter()
                .map(ColoredTree::to_occurrence)
                .collect();
            let mut images = BTreeSet::new();
            for t in &domain {
                let img = forward(t).unwrap();
                assert!(img.forms("123"));
                let back = backward(&img).unwrap();
                assert_eq!(back.to_occurrence(), t.to_occurrence());
                images.insert(img.to_occurrence());
            }
            assert_eq!(images.len(), domain.len(), "{id} n={n} not injective");
            assert_eq!(images, codomain, "{id} n={n} image");
            let expected = closed_form(id, &pat(from), n).unwrap();
            assert_eq!(BigInt::from(domain.len()), expected);
        }
    }

    #[test]
    fn rho_is_a_bijection() {
        check_bijection(ClassId::D3, "213", rho, rho_inv, 8);
    }

    #[test]
    fn varrho_is_a_bijection() {
        check_bijection(ClassId::D4, "231", varrho, varrho_inv, 8);
        assert_eq!(colored_family(ClassId::D4, &pat("231"), 6).len(), 160);
    }

    #[test]
    fn maps_reject_wrong_colorings() {
        let t =
            ColoredTree::from_occurrence(&perm("1 2 3"), &Occurrence::new(vec![1, 2, 3]).unwrap())
                .unwrap();
        assert!(rho(&t).is_err());
        assert!(varrho(&t).is_err());
        let t =
            ColoredTree::from_occurrence(&perm("2 1 3"), &Occurrence::new(vec![1, 2, 3]).unwrap())
                .unwrap();
        assert!(rho_inv(&t).is_err());
    }

    #[test]
    fn dot_output() {
        let t =
            ColoredTree::from_occurrence(&perm("2 1 3"), &Occurrence::new(vec![1, 2, 3]).unwrap())
                .unwrap();
        let dot = t.to_dot();
        assert!(dot.starts_with("digraph T {"));
        assert!(dot.contains("v2 -> v0 [label=L];"));
        assert!(dot.contains("v0 -> v1 [label=R];"));
        assert_eq!(dot.matches("fillcolor=black").count(), 3);
    }
}
