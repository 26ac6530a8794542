//! Disjoint compatibility, flips, and neighbor generation.
//!
//! Neighbors of a matching correspond one-to-one to its flippable
//! partitions. Those are generated by splitting M-closed label intervals:
//! the part containing the lowest point `a` of an interval, whose partner is
//! `m0`, consists of the edge `a m0` together with a nonempty set of
//! top-level edges either inside `(a, m0)` or after `m0`. All remaining
//! edges fall into the gaps of that part and are handled independently. A
//! memoised count of partitions per interval prunes the search so that no
//! branch is explored without producing output.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matching::{crosses, enumerate_matchings, Edge, Label, Matching};

/// A set of edges of a matching lying on one face and pairing alternate
/// points of its support.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FlippableSet {
    /// Support points in increasing order.
    pub support: Vec<Label>,
    pub edges: Vec<Edge>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FlippablePartition {
    /// Parts ordered by their smallest support point.
    pub parts: Vec<FlippableSet>,
}

impl FlippableSet {
    pub fn new(mut edges: Vec<Edge>) -> FlippableSet {
        edges.sort_unstable();
        let mut support: Vec<Label> = edges.iter().flat_map(|e| [e.a, e.b]).collect();
        support.sort_unstable();
        FlippableSet { support, edges }
    }

    /// Whether the edges pair `Q1Q2, Q3Q4, ...` (as opposed to
    /// `Q2Q3, ..., Q2mQ1`).
    fn starts_paired(&self) -> bool {
        self.edges.contains(&Edge::new(self.support[0], self.support[1]))
    }

    fn alternation(support: &[Label], first: bool) -> Vec<Edge> {
        let n = support.len();
        let off = if first { 0 } else { 1 };
        let mut edges: Vec<Edge> = (0..n / 2)
            .map(|i| Edge::new(support[(2 * i + off) % n], support[(2 * i + 1 + off) % n]))
            .collect();
        edges.sort_unstable();
        edges
    }

    /// The edges replacing this set under a flip.
    pub fn flipped(&self) -> Vec<Edge> {
        FlippableSet::alternation(&self.support, !self.starts_paired())
    }

    /// Gap of the support containing `p` (`p` not in the support); the gap
    /// wrapping past the largest point is gap 0.
    fn gap_of(&self, p: Label) -> usize {
        self.support.partition_point(|&q| q < p) % self.support.len()
    }

    pub fn validate(&self, m: &Matching) -> Result<()> {
        if self.edges.len() < 2 {
            return Err(Error::InvalidPartition(format!(
                "part {} has fewer than two edges",
                display_edges(&self.edges)
            )));
        }
        if let Some(&e) = self.edges.iter().find(|&&e| !m.contains_edge(e)) {
            return Err(Error::EdgeNotFound(e));
        }
        if self.support.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidPartition("part edges share a point".into()));
        }
        let expected = FlippableSet::alternation(&self.support, self.starts_paired());
        if expected != self.edges {
            return Err(Error::InvalidPartition(format!(
                "part {} does not pair alternate support points",
                display_edges(&self.edges)
            )));
        }
        for &e in m.edges() {
            if self.edges.contains(&e) {
                continue;
            }
            if self.gap_of(e.a) != self.gap_of(e.b) {
                return Err(Error::InvalidPartition(format!(
                    "edge {e} meets the hull of part {}",
                    display_edges(&self.edges)
                )));
            }
        }
        Ok(())
    }
}

fn display_edges(edges: &[Edge]) -> String {
    let names: Vec<String> = edges.iter().map(|e| e.to_string()).collect();
    format!("{{{}}}", names.join(","))
}

impl FlippablePartition {
    pub fn new(parts: Vec<Vec<Edge>>) -> FlippablePartition {
        let mut parts: Vec<FlippableSet> = parts.into_iter().map(FlippableSet::new).collect();
        parts.sort();
        FlippablePartition { parts }
    }

    pub fn validate(&self, m: &Matching) -> Result<()> {
        for p in &self.parts {
            p.validate(m)?;
        }
        let mut all: Vec<Edge> = self.parts.iter().flat_map(|p| p.edges.iter().copied()).collect();
        all.sort_unstable();
        if all != m.edges() {
            return Err(Error::InvalidPartition("parts do not partition the matching".into()));
        }
        for (i, p) in self.parts.iter().enumerate() {
            for q in &self.parts[i + 1..] {
                let g = p.gap_of(q.support[0]);
                if q.support.iter().any(|&x| p.gap_of(x) != g) {
                    return Err(Error::InvalidPartition(format!(
                        "parts {} and {} have overlapping hulls",
                        display_edges(&p.edges),
                        display_edges(&q.edges)
                    )));
                }
            }
        }
        Ok(())
    }

    /// The partition of the flipped matching that flips back.
    pub fn image(&self) -> FlippablePartition {
        FlippablePartition::new(self.parts.iter().map(|p| p.flipped()).collect())
    }

    fn apply(&self) -> Matching {
        Matching::from_edges_unchecked(self.parts.iter().flat_map(|p| p.flipped()).collect())
    }
}

/// Pairwise test: no shared edge and no crossing pair.
pub fn are_disjoint_compatible(m1: &Matching, m2: &Matching) -> Result<bool> {
    if m1.k() != m2.k() {
        return Err(Error::SizeMismatch(m1.k(), m2.k()));
    }
    Ok(disjoint_compatible_unchecked(m1.edges(), m2.edges()))
}

#[inline]
pub(crate) fn disjoint_compatible_unchecked(e1: &[Edge], e2: &[Edge]) -> bool {
    e1.iter()
        .all(|&x| e2.iter().all(|&y| x != y && !crosses(x, y)))
}

/// Components of `m1 ∪ m2`, each as the point sequence starting at its
/// smallest point and leaving along the edge of `m1`.
pub fn alternating_cycles(m1: &Matching, m2: &Matching) -> Result<Vec<Vec<Label>>> {
    if m1.k() != m2.k() {
        return Err(Error::SizeMismatch(m1.k(), m2.k()));
    }
    let (p1, p2) = (m1.partners(), m2.partners());
    let n = m1.num_points();
    let mut seen = vec![false; n + 1];
    let mut cycles = Vec::new();
    for start in 1..=n {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut p = start;
        loop {
            seen[p] = true;
            cycle.push(p as Label);
            let q = p1[p] as usize;
            seen[q] = true;
            cycle.push(q as Label);
            p = p2[q] as usize;
            if p == start {
                break;
            }
        }
        cycles.push(cycle);
    }
    Ok(cycles)
}

/// Cycle test: every component of the union is a cycle of length at least
/// four walking its support in cyclic order, and the supports of different
/// cycles do not interleave.
pub fn are_disjoint_compatible_by_cycles(m1: &Matching, m2: &Matching) -> Result<bool> {
    let cycles = alternating_cycles(m1, m2)?;
    let mut supports = Vec::with_capacity(cycles.len());
    for c in &cycles {
        if c.len() < 4 {
            return Ok(false);
        }
        let mut s = c.clone();
        s.sort_unstable();
        let pos = |p: Label| s.binary_search(&p).unwrap();
        let len = s.len();
        let convex = (0..len).all(|i| {
            let d = (pos(c[(i + 1) % len]) + len - pos(c[i])) % len;
            d == 1 || d == len - 1
        });
        if !convex {
            return Ok(false);
        }
        supports.push(FlippableSet {
            support: s,
            edges: Vec::new(),
        });
    }
    for (i, a) in supports.iter().enumerate() {
        for b in &supports[i + 1..] {
            let g = a.gap_of(b.support[0]);
            if b.support.iter().any(|&x| a.gap_of(x) != g) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The flippable partition of `m1` whose flip is `m2`, if they are
/// disjoint compatible.
pub fn partition_between(m1: &Matching, m2: &Matching) -> Result<Option<FlippablePartition>> {
    if !are_disjoint_compatible(m1, m2)? {
        return Ok(None);
    }
    let p1 = m1.partners();
    let parts = alternating_cycles(m1, m2)?
        .into_iter()
        .map(|c| {
            c.iter()
                .filter(|&&p| p < p1[p as usize])
                .map(|&p| Edge::new(p, p1[p as usize]))
                .collect()
        })
        .collect();
    Ok(Some(FlippablePartition::new(parts)))
}

/// Flips every part of `p`.
pub fn flip(m: &Matching, p: &FlippablePartition) -> Result<Matching> {
    p.validate(m)?;
    Ok(p.apply())
}

struct Intervals {
    partner: Vec<Label>,
    /// Partition counts per interval, `u64::MAX` when unknown.
    memo: Vec<u64>,
    width: usize,
}

impl Intervals {
    fn new(m: &Matching) -> Intervals {
        let width = m.num_points() + 2;
        Intervals {
            partner: m.partners(),
            memo: vec![u64::MAX; width * width],
            width,
        }
    }

    /// Top-level edges of the M-closed interval `[lo, hi]`, as `(a, b)`.
    fn tops(&self, lo: usize, hi: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let mut p = lo;
        while p <= hi {
            let q = self.partner[p] as usize;
            out.push((p, q));
            p = q + 1;
        }
        out
    }

    fn count(&mut self, lo: usize, hi: usize) -> u64 {
        if lo > hi {
            return 1;
        }
        let key = lo * self.width + hi;
        if self.memo[key] != u64::MAX {
            return self.memo[key];
        }
        let m0 = self.partner[lo] as usize;
        let mut total = 0;
        let inner = self.count(lo + 1, m0 - 1);
        if inner > 0 {
            total += inner * self.selections(m0 + 1, hi).0;
        }
        let outer = self.count(m0 + 1, hi);
        if outer > 0 {
            total += outer * self.selections(lo + 1, m0 - 1).0;
        }
        self.memo[key] = total;
        total
    }

    /// Number of ways to pick a nonempty set of top-level edges of the
    /// region and partition everything else, plus the suffix table `h`:
    /// `h[i]` counts completions after a pick ending before top edge `i`.
    fn selections(&mut self, lo: usize, hi: usize) -> (u64, Vec<u64>, Vec<(usize, usize)>) {
        let tops = self.tops(lo, hi);
        let q = tops.len();
        let mut h = vec![0; q + 1];
        h[q] = 1;
        for i in (0..q).rev() {
            let mut s = self.count(tops[i].0, hi);
            for c in i..q {
                let before = if c > i { self.count(tops[i].0, tops[c - 1].1) } else { 1 };
                if before == 0 {
                    continue;
                }
                let inside = self.count(tops[c].0 + 1, tops[c].1 - 1);
                s += before * inside * h[c + 1];
            }
            h[i] = s;
        }
        let total = if q == 0 { 0 } else { h[0] - self.count(lo, hi) };
        (total, h, tops)
    }
}

struct Search<'a> {
    iv: Intervals,
    pending: Vec<(usize, usize)>,
    parts: Vec<Vec<Edge>>,
    out: &'a mut Vec<FlippablePartition>,
}

impl Search<'_> {
    fn run(&mut self) {
        let Some((lo, hi)) = self.pending.pop() else {
            self.out.push(FlippablePartition::new(self.parts.clone()));
            return;
        };
        if lo > hi {
            self.run();
        } else {
            let m0 = self.iv.partner[lo] as usize;
            let e0 = (lo, m0);
            // Outer face: e0 with top-level edges after m0.
            if self.iv.count(lo + 1, m0 - 1) > 0 {
                let (n, h, tops) = self.iv.selections(m0 + 1, hi);
                if n > 0 {
                    self.pending.push((lo + 1, m0 - 1));
                    self.choose(e0, &tops, &h, 0, hi, &mut Vec::new());
                    self.pending.pop();
                }
            }
            // Inner face: e0 with top-level edges inside it.
            if self.iv.count(m0 + 1, hi) > 0 {
                let (n, h, tops) = self.iv.selections(lo + 1, m0 - 1);
                if n > 0 {
                    self.pending.push((m0 + 1, hi));
                    self.choose(e0, &tops, &h, 0, m0 - 1, &mut Vec::new());
                    self.pending.pop();
                }
            }
        }
        self.pending.push((lo, hi));
    }

    /// Extends the chosen top-level edges from index `i` on; `end` closes
    /// the region.
    fn choose(
        &mut self,
        e0: (usize, usize),
        tops: &[(usize, usize)],
        h: &[u64],
        i: usize,
        end: usize,
        chosen: &mut Vec<usize>,
    ) {
        let q = tops.len();
        let from = if i < q { tops[i].0 } else { end + 1 };
        if !chosen.is_empty() && self.iv.count(from, end) > 0 {
            let mut edges = vec![Edge::new(e0.0 as Label, e0.1 as Label)];
            let mut pushed = 0;
            self.pending.push((from, end));
            pushed += 1;
            let mut start = tops[0].0;
            for &c in chosen.iter() {
                let (a, b) = tops[c];
                edges.push(Edge::new(a as Label, b as Label));
                self.pending.push((start, a - 1));
                self.pending.push((a + 1, b - 1));
                pushed += 2;
                start = b + 1;
            }
            self.parts.push(edges);
            self.run();
            self.parts.pop();
            for _ in 0..pushed {
                self.pending.pop();
            }
        }
        for c in i..q {
            let before = if c > i { self.iv.count(tops[i].0, tops[c - 1].1) } else { 1 };
            if before == 0 || h[c + 1] == 0 {
                continue;
            }
            if self.iv.count(tops[c].0 + 1, tops[c].1 - 1) == 0 {
                continue;
            }
            chosen.push(c);
            self.choose(e0, tops, h, c + 1, end, chosen);
            chosen.pop();
        }
    }
}

/// Number of flippable partitions of `m`, which is its degree in DCM_k.
pub fn degree(m: &Matching) -> u64 {
    if m.k() == 0 {
        return 0;
    }
    Intervals::new(m).count(1, m.num_points())
}

/// All flippable partitions of `m`, sorted by their part supports.
pub fn flippable_partitions(m: &Matching) -> Vec<FlippablePartition> {
    let mut out = Vec::new();
    if m.k() == 0 {
        return out;
    }
    let mut s = Search {
        iv: Intervals::new(m),
        pending: vec![(1, m.num_points())],
        parts: Vec::new(),
        out: &mut out,
    };
    s.run();
    out.sort_unstable();
    out
}

/// All matchings disjoint compatible with `m`, sorted.
pub fn neighbors(m: &Matching) -> Vec<Matching> {
    let mut out: Vec<Matching> = flippable_partitions(m).iter().map(|p| p.apply()).collect();
    out.sort_unstable();
    out
}

/// Reference implementation: filters all matchings of the same size.
pub fn neighbors_bruteforce(m: &Matching) -> Vec<Matching> {
    enumerate_matchings(m.k())
        .into_iter()
        .filter(|x| disjoint_compatible_unchecked(m.edges(), x.edges()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> Matching {
        s.parse().unwrap()
    }

    fn e(a: Label, b: Label) -> Edge {
        Edge::new(a, b)
    }

    #[test]
    fn compatibility_examples() {
        let (a, b) = (m("1-2,3-4"), m("1-4,2-3"));
        assert!(are_disjoint_compatible(&a, &b).unwrap());
        assert!(!are_disjoint_compatible(&a, &a).unwrap());
        assert!(are_disjoint_compatible_by_cycles(&a, &b).unwrap());
        assert!(!are_disjoint_compatible_by_cycles(&a, &a).unwrap());
        assert!(are_disjoint_compatible(&a, &m("1-2,3-4,5-6")).is_err());
    }

    #[test]
    fn cycle_structure() {
        let x = m("1-2,3-4,5-8,6-7");
        let y = m("1-4,2-3,5-6,7-8");
        assert!(are_disjoint_compatible(&x, &y).unwrap());
        assert_eq!(
            alternating_cycles(&x, &y).unwrap(),
            vec![vec![1, 2, 3, 4], vec![5, 8, 7, 6]]
        );
        // 1-4 crosses 3-6.
        let z = m("1-4,2-3,5-6,7-8");
        let w = m("1-2,3-6,4-5,7-8");
        assert!(!are_disjoint_compatible(&z, &w).unwrap());
        assert!(!are_disjoint_compatible_by_cycles(&z, &w).unwrap());
    }

    #[test]
    fn flip_examples() {
        let ring = m("1-2,3-4,5-6,7-8");
        let all = FlippablePartition::new(vec![ring.edges().to_vec()]);
        assert_eq!(flip(&ring, &all).unwrap(), m("1-8,2-3,4-5,6-7"));
        let two = FlippablePartition::new(vec![vec![e(1, 2), e(3, 4)], vec![e(5, 6), e(7, 8)]]);
        assert_eq!(flip(&ring, &two).unwrap(), m("1-4,2-3,5-8,6-7"));
        let nested = m("1-6,2-5,3-4");
        let bad = FlippablePartition::new(vec![vec![e(2, 5), e(3, 4)], vec![e(1, 6)]]);
        assert!(matches!(flip(&nested, &bad), Err(Error::InvalidPartition(_))));
    }

    #[test]
    fn invalid_partitions_are_rejected() {
        let ring = m("1-2,3-4,5-6,7-8");
        // Interleaved hulls.
        let p = FlippablePartition::new(vec![vec![e(1, 2), e(5, 6)], vec![e(3, 4), e(7, 8)]]);
        assert!(flip(&ring, &p).is_err());
        // Missing edges.
        let p = FlippablePartition::new(vec![vec![e(1, 2), e(3, 4)]]);
        assert!(flip(&ring, &p).is_err());
        // A part whose hull meets another edge.
        let x = m("1-2,3-6,4-5,7-8");
        let p = FlippablePartition::new(vec![vec![e(1, 2), e(4, 5)], vec![e(3, 6), e(7, 8)]]);
        assert!(flip(&x, &p).is_err());
        let p = FlippablePartition::new(vec![vec![e(1, 2), e(7, 8)], vec![e(3, 6), e(4, 5)]]);
        assert_eq!(flip(&x, &p).unwrap(), m("1-8,2-7,3-4,5-6"));
    }

    #[test]
    fn partition_examples() {
        assert!(flippable_partitions(&m("1-6,2-5,3-4")).is_empty());
        let ring = m("1-2,3-4,5-6,7-8");
        let parts = flippable_partitions(&ring);
        let expected = vec![
            FlippablePartition::new(vec![vec![e(1, 2), e(3, 4)], vec![e(5, 6), e(7, 8)]]),
            FlippablePartition::new(vec![ring.edges().to_vec()]),
            FlippablePartition::new(vec![vec![e(1, 2), e(7, 8)], vec![e(3, 4), e(5, 6)]]),
        ];
        let mut expected = expected;
        expected.sort();
        assert_eq!(parts, expected);
        let db = m("1-8,2-3,4-7,5-6");
        assert_eq!(
            flippable_partitions(&db),
            vec![FlippablePartition::new(vec![vec![e(1, 8), e(2, 3)], vec![e(4, 7), e(5, 6)]])]
        );
    }

    #[test]
    fn neighbor_examples() {
        assert!(neighbors(&m("1-6,2-5,3-4")).is_empty());
        assert_eq!(neighbors(&m("1-8,2-3,4-7,5-6")), vec![m("1-2,3-8,4-5,6-7")]);
        assert_eq!(neighbors(&m("1-2,3-4,5-6,7-8,9-10")).len(), 6);
        assert_eq!(neighbors_bruteforce(&m("1-2,3-4")), vec![m("1-4,2-3")]);
        let sum: usize = enumerate_matchings(4).iter().map(|x| neighbors_bruteforce(x).len()).sum();
        assert_eq!(sum, 18);
    }

    #[test]
    fn generation_matches_oracle() {
        for k in 1..=6 {
            for x in enumerate_matchings(k) {
                let fast = neighbors(&x);
                assert_eq!(fast, neighbors_bruteforce(&x), "{x}");
                assert_eq!(degree(&x), fast.len() as u64);
                for p in flippable_partitions(&x) {
                    p.validate(&x).unwrap();
                    let y = flip(&x, &p).unwrap();
                    assert_eq!(flip(&y, &p.image()).unwrap(), x);
                    assert_eq!(partition_between(&x, &y).unwrap(), Some(p));
                }
            }
        }
    }

    #[test]
    fn predicates_agree() {
        for k in 1..=5 {
            let all = enumerate_matchings(k);
            for x in &all {
                for y in &all {
                    assert_eq!(
                        are_disjoint_compatible(x, y).unwrap(),
                        are_disjoint_compatible_by_cycles(x, y).unwrap(),
                        "{x} / {y}"
                    );
                }
            }
        }
    }
}
