//! Dual trees of matchings as combinatorial embeddings with labeled edge
//! sides.
//!
//! The faces of a matching are the orbits of the boundary arcs: arc `p` runs
//! from point `p` to point `p + 1` (arc `2k` wraps to point 1), and the face
//! containing arc `p` continues with arc `partner(p + 1)`. The side labeled
//! `p` is the chord at point `p`, directed from the face of arc `p - 1` to
//! the face of arc `p`. Walking the sides in label order is the clockwise
//! double edge traversal of the tree.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matching::{Edge, Label, Matching};

/// A plane tree with `k + 1` vertices whose `2k` edge sides carry the labels
/// `1..=2k`; side 1 is the marked side.
///
/// Vertex ids are canonical: vertices are numbered in order of the smallest
/// label of a side leaving them, so equal embeddings compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct EmbeddedTree {
    vertices: usize,
    /// `rotation[v]` lists the neighbors of `v` in the cyclic order φ(v),
    /// starting with the neighbor reached by the smallest leaving label.
    rotation: Vec<Vec<usize>>,
    /// `sides[p - 1]` is the directed edge carrying label `p`.
    sides: Vec<(usize, usize)>,
}

#[derive(Deserialize)]
struct TreeJson {
    vertices: usize,
    rotation: Vec<Vec<usize>>,
    sides: Vec<(usize, usize)>,
}

impl<'de> Deserialize<'de> for EmbeddedTree {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = TreeJson::deserialize(d)?;
        EmbeddedTree::from_parts(j.vertices, j.rotation, j.sides).map_err(serde::de::Error::custom)
    }
}

/// A block or antiblock: two edges on four cyclically consecutive points
/// starting at `first`. For blocks `edges[0]` is the outer edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SeparatedPair {
    pub first: Label,
    pub edges: [Edge; 2],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Attachment {
    /// An `n`-branch hanging off the wedge vertex.
    Branch(usize),
    VShape,
}

impl EmbeddedTree {
    /// Number of vertices (`k + 1`).
    pub fn num_vertices(&self) -> usize {
        self.vertices
    }

    /// Number of edges (`k`).
    pub fn num_edges(&self) -> usize {
        self.sides.len() / 2
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rotation[v].len()
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.rotation[v].len() == 1
    }

    pub fn leaves(&self) -> Vec<usize> {
        (0..self.vertices).filter(|&v| self.is_leaf(v)).collect()
    }

    /// The directed edge carrying label `p`.
    pub fn side(&self, p: Label) -> (usize, usize) {
        self.sides[p as usize - 1]
    }

    pub fn sides(&self) -> &[(usize, usize)] {
        &self.sides
    }

    /// The marked side (label 1).
    pub fn marked_side(&self) -> Option<(usize, usize)> {
        self.sides.first().copied()
    }

    /// Builds the canonical embedding from a closed side sequence, checking
    /// that it is the double traversal of a tree.
    pub fn from_sides(sides: &[(usize, usize)]) -> Result<EmbeddedTree> {
        let n = sides.len();
        if n == 0 {
            return Ok(EmbeddedTree {
                vertices: 1,
                rotation: vec![Vec::new()],
                sides: Vec::new(),
            });
        }
        if n % 2 == 1 {
            return Err(Error::MalformedEmbedding(format!("odd number of sides ({n})")));
        }
        for i in 0..n {
            let (a, b) = sides[i];
            if a == b {
                return Err(Error::MalformedEmbedding(format!("side {} is a loop", i + 1)));
            }
            if sides[(i + 1) % n].0 != b {
                return Err(Error::MalformedEmbedding(format!(
                    "side {} does not continue the traversal",
                    i + 2
                )));
            }
        }
        let mut seen = HashSet::with_capacity(n);
        for (i, &s) in sides.iter().enumerate() {
            if !seen.insert(s) {
                return Err(Error::MalformedEmbedding(format!(
                    "side {} repeats a directed edge",
                    i + 1
                )));
            }
        }
        if let Some(i) = sides.iter().position(|&(a, b)| !seen.contains(&(b, a))) {
            return Err(Error::MalformedEmbedding(format!(
                "side {} has no reverse side",
                i + 1
            )));
        }
        // Renumber by first leaving label.
        let mut ids = std::collections::HashMap::new();
        for &(a, _) in sides {
            let next = ids.len();
            ids.entry(a).or_insert(next);
        }
        let vertices = ids.len();
        if vertices != n / 2 + 1 {
            return Err(Error::MalformedEmbedding(format!(
                "{vertices} vertices for {} edges",
                n / 2
            )));
        }
        let sides: Vec<(usize, usize)> = sides.iter().map(|&(a, b)| (ids[&a], ids[&b])).collect();
        let rotation = rotation_from_sides(vertices, &sides);
        Ok(EmbeddedTree {
            vertices,
            rotation,
            sides,
        })
    }

    /// Builds an embedding from explicit parts, checking that the rotation
    /// system agrees with the side labels.
    pub fn from_parts(
        vertices: usize,
        rotation: Vec<Vec<usize>>,
        sides: Vec<(usize, usize)>,
    ) -> Result<EmbeddedTree> {
        if rotation.len() != vertices {
            return Err(Error::MalformedEmbedding(format!(
                "{} rotation lists for {vertices} vertices",
                rotation.len()
            )));
        }
        if sides.iter().any(|&(a, b)| a >= vertices || b >= vertices) {
            return Err(Error::MalformedEmbedding("side endpoint out of range".into()));
        }
        let tree = EmbeddedTree::from_sides(&sides)?;
        // Compare through the canonical renumbering.
        let mut map = vec![usize::MAX; vertices];
        for (orig, canon) in sides.iter().zip(&tree.sides) {
            map[orig.0] = canon.0;
        }
        for (v, list) in rotation.iter().enumerate() {
            let cv = map[v];
            let got: Vec<usize> = list.iter().map(|&u| map.get(u).copied().unwrap_or(usize::MAX)).collect();
            if !same_cycle(&got, &tree.rotation[cv]) {
                return Err(Error::MalformedEmbedding(format!(
                    "rotation at vertex {v} disagrees with the side labels"
                )));
            }
        }
        Ok(tree)
    }

    /// Moves the mark to the side currently labeled `s`; labels shift so
    /// that side `s` becomes side 1.
    pub fn remark(&self, s: Label) -> Result<EmbeddedTree> {
        let n = self.sides.len();
        if s == 0 || s as usize > n {
            return Err(Error::LabelOutOfRange {
                label: s,
                max: n as Label,
            });
        }
        let shifted: Vec<(usize, usize)> = (0..n).map(|i| self.sides[(i + s as usize - 1) % n]).collect();
        EmbeddedTree::from_sides(&shifted)
    }

    /// Attaches a branch or V-shape in the wedge (or at the leaf) that the
    /// traversal passes between sides `gap` and `gap + 1`.
    pub fn attach(&self, gap: usize, shape: Attachment) -> Result<EmbeddedTree> {
        let n = self.sides.len();
        if gap > n {
            return Err(Error::InvalidGap { gap, max: n });
        }
        let w = if n == 0 {
            0
        } else if gap == 0 {
            self.sides[n - 1].1
        } else {
            self.sides[gap - 1].1
        };
        let fresh = self.vertices;
        let mut walk = Vec::new();
        match shape {
            Attachment::Branch(len) => {
                if len == 0 {
                    return Err(Error::Parameter("branch length must be positive".into()));
                }
                let path: Vec<usize> = std::iter::once(w).chain(fresh..fresh + len).collect();
                for e in path.windows(2) {
                    walk.push((e[0], e[1]));
                }
                for e in path.windows(2).rev() {
                    walk.push((e[1], e[0]));
                }
            }
            Attachment::VShape => {
                walk.extend([(w, fresh), (fresh, w), (w, fresh + 1), (fresh + 1, w)]);
            }
        }
        let mut sides = self.sides[..gap].to_vec();
        sides.extend(walk);
        sides.extend_from_slice(&self.sides[gap..]);
        EmbeddedTree::from_sides(&sides)
    }

    /// Dyck code of the traversal starting at side `s`: `true` when a side
    /// leads away from the vertex the traversal starts at.
    fn tour_code(&self, s: usize) -> Vec<bool> {
        let n = self.sides.len();
        let mut depth = vec![usize::MAX; self.vertices];
        depth[self.sides[s].0] = 0;
        let mut code = Vec::with_capacity(n);
        for i in 0..n {
            let (a, b) = self.sides[(s + i) % n];
            if depth[b] == usize::MAX {
                depth[b] = depth[a] + 1;
            }
            code.push(depth[b] > depth[a]);
        }
        code
    }

    /// Code of the underlying unlabeled embedding: the least tour code over
    /// all choices of marked side.
    pub fn unlabeled_code(&self) -> Vec<bool> {
        (0..self.sides.len())
            .map(|s| self.tour_code(s))
            .min()
            .unwrap_or_default()
    }
}

fn same_cycle(a: &[usize], b: &[usize]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    (0..b.len()).any(|r| (0..a.len()).all(|i| a[i] == b[(i + r) % b.len()]))
}

// After entering `v` along side `p`, the traversal leaves along side
// `p + 1`, so the leaving side following label `x` around `v` is the side
// after the reverse of `x`.
fn rotation_from_sides(vertices: usize, sides: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let n = sides.len();
    let index: std::collections::HashMap<(usize, usize), usize> =
        sides.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let mut rotation = vec![Vec::new(); vertices];
    let mut done = vec![false; vertices];
    for (i, &(v, _)) in sides.iter().enumerate() {
        if done[v] {
            continue;
        }
        done[v] = true;
        let mut x = i;
        loop {
            let (a, b) = sides[x];
            rotation[v].push(b);
            x = (index[&(b, a)] + 1) % n;
            if x == i {
                break;
            }
        }
    }
    rotation
}

/// Face index of every arc; faces are numbered by first appearance.
fn arc_faces(m: &Matching) -> (Vec<usize>, usize) {
    let n = m.num_points();
    let partner = m.partners();
    let mut face = vec![usize::MAX; n + 1];
    let mut count = 0;
    for start in 1..=n {
        if face[start] != usize::MAX {
            continue;
        }
        let mut p = start;
        while face[p] == usize::MAX {
            face[p] = count;
            p = partner[m.next_label(p as Label) as usize] as usize;
        }
        count += 1;
    }
    (face, count)
}

/// The dual tree of `m` with side 1 marked.
pub fn to_dual_tree(m: &Matching) -> EmbeddedTree {
    let n = m.num_points();
    let (face, _) = arc_faces(m);
    let prev = |p: usize| if p == 1 { n } else { p - 1 };
    let sides: Vec<(usize, usize)> = (1..=n).map(|p| (face[prev(p)], face[p])).collect();
    EmbeddedTree::from_sides(&sides).expect("faces of a matching form a tree")
}

/// The matching whose dual tree is `t`: each label is matched to the label
/// of the opposite side of the same edge.
pub fn from_dual_tree(t: &EmbeddedTree) -> Result<Matching> {
    let index: std::collections::HashMap<(usize, usize), usize> =
        t.sides.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let pairs: Vec<(Label, Label)> = t
        .sides
        .iter()
        .enumerate()
        .filter_map(|(i, &(a, b))| {
            let j = index[&(b, a)];
            (i < j).then_some((i as Label + 1, j as Label + 1))
        })
        .collect();
    Matching::validate(t.num_edges(), &pairs)
        .map_err(|e| Error::MalformedEmbedding(format!("side labels do not nest: {e}")))
}

/// All `n`-branches, each given from `v1` to the leaf `v_{n+1}`, ordered by
/// their leaf.
pub fn find_branches(t: &EmbeddedTree, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    for leaf in t.leaves() {
        let mut path = vec![leaf];
        let mut ok = true;
        while path.len() <= n {
            let cur = *path.last().unwrap();
            if path.len() > 1 && t.degree(cur) != 2 {
                ok = false;
                break;
            }
            let back = if path.len() > 1 { Some(path[path.len() - 2]) } else { None };
            let next = t.rotation[cur].iter().copied().find(|&u| Some(u) != back);
            match next {
                Some(u) => path.push(u),
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            path.reverse();
            out.push(path);
        }
    }
    out
}

/// All V-shapes `[v1, v2, v3]`: two leaves consecutive in φ(v2).
pub fn find_v_shapes(t: &EmbeddedTree) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for v in 0..t.vertices {
        let r = &t.rotation[v];
        let d = r.len();
        if d < 2 {
            continue;
        }
        for i in 0..d {
            let (a, b) = (r[i], r[(i + 1) % d]);
            if t.is_leaf(a) && t.is_leaf(b) {
                out.push([a, v, b]);
            }
        }
    }
    out
}

fn separated_pairs(m: &Matching, block: bool) -> Vec<SeparatedPair> {
    let k = m.k();
    if k < 2 {
        return Vec::new();
    }
    let t = m.partners();
    let n = m.num_points() as i64;
    let w = |p: i64| ((p - 1).rem_euclid(n) + 1) as Label;
    let mut out = Vec::new();
    for i in 1..=n {
        let (p0, p1, p2, p3) = (w(i), w(i + 1), w(i + 2), w(i + 3));
        let pairs = if block {
            [(p0, p3), (p1, p2)]
        } else {
            [(p0, p1), (p2, p3)]
        };
        if pairs.iter().all(|&(x, y)| t[x as usize] == y) {
            out.push(SeparatedPair {
                first: p0,
                edges: [Edge::new(pairs[0].0, pairs[0].1), Edge::new(pairs[1].0, pairs[1].1)],
            });
        }
    }
    out
}

/// Blocks `{P_i P_{i+3}, P_{i+1} P_{i+2}}`, one per first point `i`.
pub fn find_blocks(m: &Matching) -> Vec<SeparatedPair> {
    separated_pairs(m, true)
}

/// Antiblocks `{P_i P_{i+1}, P_{i+2} P_{i+3}}`, one per first point `i`.
pub fn find_antiblocks(m: &Matching) -> Vec<SeparatedPair> {
    separated_pairs(m, false)
}

/// Rotation scan.
pub fn rotationally_equivalent(m1: &Matching, m2: &Matching) -> Result<bool> {
    if m1.k() != m2.k() {
        return Err(Error::SizeMismatch(m1.k(), m2.k()));
    }
    Ok((0..m1.num_points().max(1) as i64).any(|s| &m1.rotate(s) == m2))
}

/// Comparison of the unlabeled dual trees.
pub fn rotationally_equivalent_by_tree(m1: &Matching, m2: &Matching) -> Result<bool> {
    if m1.k() != m2.k() {
        return Err(Error::SizeMismatch(m1.k(), m2.k()));
    }
    Ok(to_dual_tree(m1).unlabeled_code() == to_dual_tree(m2).unlabeled_code())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matching::enumerate_matchings;

    fn m(s: &str) -> Matching {
        s.parse().unwrap()
    }

    fn degrees(t: &EmbeddedTree) -> Vec<usize> {
        let mut d: Vec<usize> = (0..t.num_vertices()).map(|v| t.degree(v)).collect();
        d.sort();
        d
    }

    #[test]
    fn ring_is_a_star() {
        let t = to_dual_tree(&m("1-2,3-4,5-6"));
        assert_eq!(degrees(&t), vec![1, 1, 1, 3]);
    }

    #[test]
    fn nested_is_a_path() {
        let t = to_dual_tree(&m("1-6,2-5,3-4"));
        assert_eq!(degrees(&t), vec![1, 1, 2, 2]);
        assert_eq!(find_branches(&t, 2).len(), 2);
        assert!(find_v_shapes(&t).is_empty());
    }

    #[test]
    fn star_has_no_two_branches() {
        let t = to_dual_tree(&m("1-2,3-4,5-6"));
        assert!(find_branches(&t, 2).is_empty());
        assert_eq!(find_branches(&t, 1).len(), 3);
    }

    #[test]
    fn four_ring_v_shapes() {
        let t = to_dual_tree(&m("1-2,3-4,5-6,7-8"));
        assert_eq!(find_v_shapes(&t).len(), 4);
    }

    #[test]
    fn inverse_from_star_and_path() {
        // A star with three leaves, marked on a leaf edge.
        let star = EmbeddedTree::from_sides(&[(0, 1), (1, 0), (0, 2), (2, 0), (0, 3), (3, 0)]).unwrap();
        assert_eq!(from_dual_tree(&star).unwrap(), m("1-2,3-4,5-6"));
        let path = EmbeddedTree::from_sides(&[(0, 1), (1, 2), (2, 3), (3, 2), (2, 1), (1, 0)]).unwrap();
        assert_eq!(from_dual_tree(&path).unwrap(), m("1-6,2-5,3-4"));
    }

    #[test]
    fn round_trip_and_leaf_count() {
        for k in 0..=6 {
            for x in enumerate_matchings(k) {
                let t = to_dual_tree(&x);
                assert_eq!(t.num_vertices(), k + 1);
                assert_eq!(from_dual_tree(&t).unwrap(), x);
                if k >= 2 {
                    let boundary = x.edges().iter().filter(|&&e| x.is_boundary(e)).count();
                    assert_eq!(t.leaves().len(), boundary, "{x}");
                }
                let wedges: usize = (0..t.num_vertices()).map(|v| t.degree(v)).filter(|&d| d >= 2).sum();
                if k >= 2 {
                    assert_eq!(wedges, x.skips().len(), "{x}");
                }
            }
        }
    }

    #[test]
    fn malformed_embeddings_rejected() {
        assert!(EmbeddedTree::from_sides(&[(0, 1), (0, 1)]).is_err());
        assert!(EmbeddedTree::from_sides(&[(0, 1), (1, 2), (2, 0)]).is_err());
        // A 4-cycle traversed twice in one direction is not a tree.
        assert!(EmbeddedTree::from_sides(&[(0, 1), (1, 0), (0, 1), (1, 0)]).is_err());
        let t = to_dual_tree(&m("1-2,3-4,5-6"));
        let mut rot = t.rotation.clone();
        let center = (0..4).find(|&v| t.degree(v) == 3).unwrap();
        rot[center].swap(0, 1);
        assert!(matches!(
            EmbeddedTree::from_parts(4, rot, t.sides.clone()),
            Err(Error::MalformedEmbedding(_))
        ));
    }

    #[test]
    fn blocks_and_antiblocks() {
        let nested = m("1-6,2-5,3-4");
        let blocks = find_blocks(&nested);
        assert_eq!(blocks.len(), 2);
        assert!(blocks.iter().any(|b| b.edges == [Edge::new(2, 5), Edge::new(3, 4)]));
        assert!(find_antiblocks(&nested).is_empty());
        let ring = m("1-2,3-4,5-6,7-8");
        assert!(find_blocks(&ring).is_empty());
        assert_eq!(find_antiblocks(&ring).len(), 4);
        for two in enumerate_matchings(2) {
            let both: Vec<_> = find_blocks(&two).into_iter().chain(find_antiblocks(&two)).collect();
            assert!(both.iter().all(|p| {
                let mut e = p.edges.to_vec();
                e.sort();
                e == two.edges()
            }));
            assert_eq!(both.len(), 4);
        }
    }

    #[test]
    fn detectors_agree_with_tree_features() {
        for k in 2..=6 {
            for x in enumerate_matchings(k) {
                let t = to_dual_tree(&x);
                assert_eq!(find_branches(&t, 2).len(), find_blocks(&x).len(), "{x}");
                assert_eq!(find_v_shapes(&t).len(), find_antiblocks(&x).len(), "{x}");
            }
        }
    }

    #[test]
    fn remark_is_rotation() {
        for x in enumerate_matchings(5) {
            let t = to_dual_tree(&x);
            for s in 1..=10 {
                assert_eq!(t.remark(s).unwrap(), to_dual_tree(&x.rotate(1 - s as i64)));
            }
        }
    }

    #[test]
    fn insertion_attaches_features() {
        let block = m("1-4,2-3");
        let anti = m("1-2,3-4");
        for k in 0..=5 {
            for x in enumerate_matchings(k) {
                let t = to_dual_tree(&x);
                for gap in 0..=2 * k {
                    let b = Matching::insert(&x, &block, gap).unwrap();
                    assert_eq!(to_dual_tree(&b), t.attach(gap, Attachment::Branch(2)).unwrap());
                    let a = Matching::insert(&x, &anti, gap).unwrap();
                    assert_eq!(to_dual_tree(&a), t.attach(gap, Attachment::VShape).unwrap());
                }
            }
        }
    }

    #[test]
    fn rotational_equivalence_examples() {
        let a = m("1-2,3-6,4-5");
        let b = m("1-6,2-5,3-4");
        assert!(rotationally_equivalent(&a, &b).unwrap());
        assert!(rotationally_equivalent_by_tree(&a, &b).unwrap());
        let r = m("1-2,3-4,5-6,7-8");
        let o = m("1-4,2-3,5-8,6-7");
        assert!(!rotationally_equivalent(&r, &o).unwrap());
        assert!(!rotationally_equivalent_by_tree(&r, &o).unwrap());
        assert!(rotationally_equivalent(&r, &r).unwrap());
        assert!(matches!(rotationally_equivalent(&a, &r), Err(Error::SizeMismatch(3, 4))));
    }

    #[test]
    fn rotational_equivalence_routes_agree() {
        for k in 1..=5 {
            let all = enumerate_matchings(k);
            for x in &all {
                for y in &all {
                    assert_eq!(
                        rotationally_equivalent(x, y).unwrap(),
                        rotationally_equivalent_by_tree(x, y).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let t = to_dual_tree(&m("1-8,2-3,4-7,5-6"));
        let j = serde_json::to_string(&t).unwrap();
        let back: EmbeddedTree = serde_json::from_str(&j).unwrap();
        assert_eq!(back, t);
    }
}
