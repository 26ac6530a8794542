//! Combinatorial non-crossing perfect matchings of the cyclically labeled
//! point set `{1, ..., 2k}`.
//!
//! A [`Matching`] always holds its edges in canonical form: every edge has
//! `a < b` and the edges are sorted by their smaller endpoint. The derived
//! ordering is therefore the lexicographic order of the flattened edge list,
//! which is the order used for enumeration output and graph vertex indices.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point label, 1-based.
pub type Label = u16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub a: Label,
    pub b: Label,
}

impl Edge {
    /// Builds an edge from two distinct labels in either order.
    pub fn new(x: Label, y: Label) -> Edge {
        debug_assert_ne!(x, y, "an edge needs two distinct endpoints");
        if x < y {
            Edge { a: x, b: y }
        } else {
            Edge { a: y, b: x }
        }
    }

    pub fn contains(self, p: Label) -> bool {
        self.a == p || self.b == p
    }

    pub fn other(self, p: Label) -> Label {
        if self.a == p {
            self.b
        } else {
            self.a
        }
    }

    pub fn shares_endpoint(self, o: Edge) -> bool {
        self.contains(o.a) || self.contains(o.b)
    }

    /// Number of labels strictly between the endpoints.
    pub fn span(self) -> usize {
        (self.b - self.a - 1) as usize
    }
}

impl Serialize for Edge {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.a, self.b].serialize(s)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.a, self.b)
    }
}

/// Crossing test for two chords that may share an endpoint; chords with a
/// common endpoint never cross.
#[inline]
pub(crate) fn crosses(e1: Edge, e2: Edge) -> bool {
    if e1.shares_endpoint(e2) {
        return false;
    }
    let inside = |p: Label| e1.a < p && p < e1.b;
    inside(e2.a) != inside(e2.b)
}

/// True iff the endpoints of the two edges alternate in cyclic order.
pub fn is_crossing(e1: Edge, e2: Edge) -> Result<bool> {
    if e1.shares_endpoint(e2) {
        return Err(Error::SharedEndpoint(e1, e2));
    }
    Ok(crosses(e1, e2))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeKind {
    Boundary,
    Diagonal,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "MatchingJson", into = "MatchingJson")]
pub struct Matching {
    edges: Vec<Edge>,
}

#[derive(Serialize, Deserialize)]
struct MatchingJson {
    k: usize,
    edges: Vec<[Label; 2]>,
}

impl TryFrom<MatchingJson> for Matching {
    type Error = Error;

    fn try_from(j: MatchingJson) -> Result<Matching> {
        let edges: Vec<(Label, Label)> = j.edges.iter().map(|e| (e[0], e[1])).collect();
        Matching::validate(j.k, &edges)
    }
}

impl From<Matching> for MatchingJson {
    fn from(m: Matching) -> MatchingJson {
        MatchingJson {
            k: m.k(),
            edges: m.edges.iter().map(|e| [e.a, e.b]).collect(),
        }
    }
}

impl Matching {
    /// The matching of size 0. Only used internally by recursions.
    pub fn empty() -> Matching {
        Matching { edges: Vec::new() }
    }

    /// Validates an arbitrary edge list against a declared size `k` and
    /// returns the canonical matching.
    pub fn validate(k: usize, pairs: &[(Label, Label)]) -> Result<Matching> {
        if pairs.len() != k {
            return Err(Error::Coverage(format!(
                "{} edges given for a matching of size {k}",
                pairs.len()
            )));
        }
        let n = 2 * k;
        let max = n as Label;
        let mut seen = vec![false; n + 1];
        let mut edges = Vec::with_capacity(k);
        for &(x, y) in pairs {
            for p in [x, y] {
                if p == 0 || p > max {
                    return Err(Error::LabelOutOfRange { label: p, max });
                }
            }
            if x == y {
                return Err(Error::Coverage(format!("label {x} paired with itself")));
            }
            for p in [x, y] {
                if seen[p as usize] {
                    return Err(Error::Coverage(format!("label {p} used twice")));
                }
                seen[p as usize] = true;
            }
            edges.push(Edge::new(x, y));
        }
        edges.sort_unstable();
        for (i, &e1) in edges.iter().enumerate() {
            for &e2 in &edges[i + 1..] {
                if crosses(e1, e2) {
                    return Err(Error::Crossing(e1, e2));
                }
            }
        }
        Ok(Matching { edges })
    }

    /// Builds a matching from a partner table (`table[p]` is the partner of
    /// label `p`, index 0 unused) that is known to be a valid non-crossing
    /// perfect matching.
    pub(crate) fn from_partner_table(table: &[Label]) -> Matching {
        let edges = (1..table.len())
            .filter(|&p| (p as Label) < table[p])
            .map(|p| Edge {
                a: p as Label,
                b: table[p],
            })
            .collect();
        Matching { edges }
    }

    /// Builds a matching from edges already known to be valid; only sorts.
    pub(crate) fn from_edges_unchecked(mut edges: Vec<Edge>) -> Matching {
        edges.sort_unstable();
        Matching { edges }
    }

    pub fn k(&self) -> usize {
        self.edges.len()
    }

    pub fn num_points(&self) -> usize {
        2 * self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Partner table indexed by label; entry 0 is unused.
    pub fn partners(&self) -> Vec<Label> {
        let mut t = vec![0; self.num_points() + 1];
        for e in &self.edges {
            t[e.a as usize] = e.b;
            t[e.b as usize] = e.a;
        }
        t
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    /// The edge incident to label `p`.
    pub fn edge_at(&self, p: Label) -> Option<Edge> {
        self.edges.iter().copied().find(|e| e.contains(p))
    }

    /// Cyclic successor of a label.
    pub fn next_label(&self, p: Label) -> Label {
        if p as usize == self.num_points() {
            1
        } else {
            p + 1
        }
    }

    /// Maps a possibly out-of-range integer onto `1..=2k`.
    pub fn wrap(&self, p: i64) -> Label {
        wrap_label(p, self.num_points())
    }

    /// Relabels every point `i` as `((i - 1 + s) mod 2k) + 1`.
    pub fn rotate(&self, s: i64) -> Matching {
        let n = self.num_points();
        if n == 0 {
            return self.clone();
        }
        let edges = self
            .edges
            .iter()
            .map(|e| Edge::new(wrap_label(e.a as i64 + s, n), wrap_label(e.b as i64 + s, n)))
            .collect();
        Matching::from_edges_unchecked(edges)
    }

    /// Relabels every point `i` as `2k + 1 - i`.
    pub fn reflect(&self) -> Matching {
        let m = self.num_points() as Label + 1;
        let edges = self.edges.iter().map(|e| Edge::new(m - e.a, m - e.b)).collect();
        Matching::from_edges_unchecked(edges)
    }

    pub fn is_boundary(&self, e: Edge) -> bool {
        e.b == e.a + 1 || (e.a == 1 && e.b as usize == self.num_points())
    }

    pub fn edge_kind(&self, e: Edge) -> Result<EdgeKind> {
        if !self.contains_edge(e) {
            return Err(Error::EdgeNotFound(e));
        }
        Ok(if self.is_boundary(e) {
            EdgeKind::Boundary
        } else {
            EdgeKind::Diagonal
        })
    }

    /// Pairs of cyclically consecutive labels that are not matched to each
    /// other, in increasing order of the first label.
    pub fn skips(&self) -> Vec<(Label, Label)> {
        let t = self.partners();
        (1..=self.num_points() as Label)
            .map(|p| (p, self.next_label(p)))
            .filter(|&(p, q)| t[p as usize] != q)
            .collect()
    }

    /// A ring has boundary edges only.
    pub fn is_ring(&self) -> bool {
        self.edges.iter().all(|&e| self.is_boundary(e))
    }

    /// Inserts `inner` into `host` between host labels `gap` and `gap + 1`
    /// (gap 0 places the inserted points before label 1).
    pub fn insert(host: &Matching, inner: &Matching, gap: usize) -> Result<Matching> {
        let n = host.num_points();
        if gap > n {
            return Err(Error::InvalidGap { gap, max: n });
        }
        let g = gap as Label;
        let shift = inner.num_points() as Label;
        let lift = |x: Label| if x <= g { x } else { x + shift };
        let mut edges: Vec<Edge> = host
            .edges
            .iter()
            .map(|e| Edge::new(lift(e.a), lift(e.b)))
            .collect();
        edges.extend(inner.edges.iter().map(|e| Edge::new(e.a + g, e.b + g)));
        Ok(Matching::from_edges_unchecked(edges))
    }

    /// Inverse of [`Matching::insert`]: splits off the submatching of size
    /// `size` on labels `gap + 1 ..= gap + 2 size`, returning `(host, inner)`.
    pub fn remove(&self, gap: usize, size: usize) -> Result<(Matching, Matching)> {
        let n = self.num_points();
        if gap + 2 * size > n {
            return Err(Error::InvalidGap {
                gap,
                max: n - 2 * size.min(n / 2),
            });
        }
        let lo = gap as Label + 1;
        let hi = (gap + 2 * size) as Label;
        let within = |p: Label| lo <= p && p <= hi;
        let mut host = Vec::new();
        let mut inner = Vec::new();
        for &e in &self.edges {
            match (within(e.a), within(e.b)) {
                (true, true) => inner.push(Edge::new(e.a - gap as Label, e.b - gap as Label)),
                (false, false) => {
                    let drop = |x: Label| if x > hi { x - 2 * size as Label } else { x };
                    host.push(Edge::new(drop(e.a), drop(e.b)));
                }
                _ => {
                    return Err(Error::Coverage(format!(
                        "edge {e} leaves the label range {lo}..={hi}"
                    )))
                }
            }
        }
        Ok((
            Matching::from_edges_unchecked(host),
            Matching::from_edges_unchecked(inner),
        ))
    }

    /// Parses the string form and checks it against a declared size.
    pub fn parse_with_k(s: &str, k: usize) -> Result<Matching> {
        let pairs = parse_pairs(s)?;
        Matching::validate(k, &pairs)
    }
}

pub(crate) fn wrap_label(p: i64, n: usize) -> Label {
    ((p - 1).rem_euclid(n as i64) + 1) as Label
}

fn parse_pairs(s: &str) -> Result<Vec<(Label, Label)>> {
    if s.is_empty() {
        return Ok(Vec::new());
    }
    let mut pairs = Vec::new();
    let mut pos = 0;
    for chunk in s.split(',') {
        let Some(dash) = chunk.find('-') else {
            return Err(Error::Parse {
                pos,
                msg: format!("expected `a-b`, found `{chunk}`"),
            });
        };
        let num = |text: &str, at: usize| -> Result<Label> {
            if text.is_empty() || !text.bytes().all(|c| c.is_ascii_digit()) {
                return Err(Error::Parse {
                    pos: at,
                    msg: format!("expected a label, found `{text}`"),
                });
            }
            text.parse().map_err(|_| Error::Parse {
                pos: at,
                msg: format!("label `{text}` too large"),
            })
        };
        let x = num(&chunk[..dash], pos)?;
        let y = num(&chunk[dash + 1..], pos + dash + 1)?;
        pairs.push((x, y));
        pos += chunk.len() + 1;
    }
    Ok(pairs)
}

impl FromStr for Matching {
    type Err = Error;

    /// Parses `a-b,c-d,...`; the size is the number of pairs.
    fn from_str(s: &str) -> Result<Matching> {
        let pairs = parse_pairs(s)?;
        Matching::validate(pairs.len(), &pairs)
    }
}

impl fmt::Display for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.edges.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

/// All `C_k` non-crossing perfect matchings of size `k`, in canonical order.
///
/// `k = 0` yields the single empty matching.
pub fn enumerate_matchings(k: usize) -> Vec<Matching> {
    let n = 2 * k;
    let mut table = vec![0 as Label; n + 1];
    let mut pending = vec![(1usize, n)];
    let mut out = Vec::new();
    fill(&mut pending, &mut table, &mut out);
    out.sort_unstable();
    out
}

// Point `lo` of the next pending interval pairs with an odd-offset partner;
// the labels inside and after that edge become new pending intervals.
fn fill(pending: &mut Vec<(usize, usize)>, table: &mut [Label], out: &mut Vec<Matching>) {
    let Some((lo, hi)) = pending.pop() else {
        out.push(Matching::from_partner_table(table));
        return;
    };
    if lo > hi {
        fill(pending, table, out);
    } else {
        for m in (lo + 1..=hi).step_by(2) {
            table[lo] = m as Label;
            table[m] = lo as Label;
            pending.push((m + 1, hi));
            pending.push((lo + 1, m - 1));
            fill(pending, table, out);
            pending.pop();
            pending.pop();
        }
    }
    pending.push((lo, hi));
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> Matching {
        s.parse().unwrap()
    }

    #[test]
    fn crossing_examples() {
        assert!(is_crossing(Edge::new(1, 3), Edge::new(2, 4)).unwrap());
        assert!(!is_crossing(Edge::new(1, 2), Edge::new(3, 4)).unwrap());
        assert!(!is_crossing(Edge::new(1, 4), Edge::new(2, 3)).unwrap());
        assert!(matches!(
            is_crossing(Edge::new(1, 3), Edge::new(3, 4)),
            Err(Error::SharedEndpoint(..))
        ));
    }

    #[test]
    fn validate_canonicalizes() {
        let v = Matching::validate(4, &[(2, 3), (1, 8), (5, 6), (4, 7)]).unwrap();
        assert_eq!(v.to_string(), "1-8,2-3,4-7,5-6");
        let again = Matching::validate(4, &[(1, 8), (2, 3), (4, 7), (5, 6)]).unwrap();
        assert_eq!(v, again);
    }

    #[test]
    fn validate_errors_are_distinguished() {
        assert!(matches!(
            Matching::validate(2, &[(1, 3), (2, 4)]),
            Err(Error::Crossing(..))
        ));
        assert!(matches!(
            Matching::validate(2, &[(1, 2), (3, 4), (5, 6)]),
            Err(Error::Coverage(_))
        ));
        assert!(matches!(
            Matching::validate(2, &[(1, 2), (3, 5)]),
            Err(Error::LabelOutOfRange { label: 5, max: 4 })
        ));
        assert!(matches!(
            Matching::validate(2, &[(1, 2), (2, 3)]),
            Err(Error::Coverage(_))
        ));
    }

    #[test]
    fn parse_errors_carry_positions() {
        match "1-2,3x4".parse::<Matching>() {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("unexpected {other:?}"),
        }
        match "1-2,3-".parse::<Matching>() {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 6),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn enumerate_small() {
        let three: Vec<String> = enumerate_matchings(3).iter().map(|m| m.to_string()).collect();
        assert_eq!(
            three,
            ["1-2,3-4,5-6", "1-2,3-6,4-5", "1-4,2-3,5-6", "1-6,2-3,4-5", "1-6,2-5,3-4"]
        );
        assert_eq!(enumerate_matchings(4).len(), 14);
        assert_eq!(enumerate_matchings(1), vec![m("1-2")]);
        assert_eq!(enumerate_matchings(0), vec![Matching::empty()]);
    }

    #[test]
    fn enumerate_agrees_with_filtered_brute_force() {
        // All perfect matchings of 2k points, filtered for non-crossing.
        fn all_perfect(points: &[Label]) -> Vec<Vec<(Label, Label)>> {
            if points.is_empty() {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for i in 1..points.len() {
                let rest: Vec<Label> = points[1..]
                    .iter()
                    .copied()
                    .filter(|&p| p != points[i])
                    .collect();
                for mut tail in all_perfect(&rest) {
                    tail.push((points[0], points[i]));
                    out.push(tail);
                }
            }
            out
        }
        for k in 1..=5 {
            let points: Vec<Label> = (1..=2 * k as Label).collect();
            let all = all_perfect(&points);
            let mut brute: Vec<Matching> = all
                .iter()
                .filter_map(|p| Matching::validate(k, p).ok())
                .collect();
            brute.sort();
            assert_eq!(brute, enumerate_matchings(k), "k = {k}");
            if k == 3 {
                assert_eq!(all.len(), 15);
            }
        }
    }

    #[test]
    fn rotate_and_reflect_examples() {
        assert_eq!(m("1-2,3-4,5-6").rotate(1).to_string(), "1-6,2-3,4-5");
        assert_eq!(m("1-6,2-5,3-4").rotate(2).to_string(), "1-4,2-3,5-6");
        assert_eq!(m("1-6,2-5,3-4").rotate(-2).to_string(), "1-2,3-6,4-5");
        let x = m("1-8,2-3,4-7,5-6");
        assert_eq!(x.rotate(0), x);
        assert_eq!(x.rotate(8), x);
        assert_eq!(x.rotate(-3), x.rotate(5));
        assert_eq!(m("1-2,3-4").reflect(), m("1-2,3-4"));
        assert_eq!(m("1-2,3-6,4-5").reflect(), m("1-4,2-3,5-6"));
        assert_eq!(m("1-6,2-5,3-4").reflect(), m("1-6,2-5,3-4"));
    }

    #[test]
    fn edge_kinds_and_skips() {
        let x = m("1-2,3-4");
        assert_eq!(x.edge_kind(Edge::new(1, 2)).unwrap(), EdgeKind::Boundary);
        assert!(x.edge_kind(Edge::new(1, 3)).is_err());
        // 3-8 and 13-16 are diagonal here.
        let ma = m("1-2,3-8,4-5,6-7,9-10,11-12,13-16,14-15");
        assert_eq!(ma.edge_kind(Edge::new(3, 8)).unwrap(), EdgeKind::Diagonal);
        assert_eq!(ma.edge_kind(Edge::new(13, 16)).unwrap(), EdgeKind::Diagonal);
        let ring = m("1-2,3-4,5-6,7-8");
        assert_eq!(ring.skips(), vec![(2, 3), (4, 5), (6, 7), (8, 1)]);
        let ring2 = m("1-8,2-3,4-5,6-7");
        assert!(ring2.edge_kind(Edge::new(1, 8)).unwrap() == EdgeKind::Boundary);
    }

    #[test]
    fn rings() {
        assert!(m("1-2,3-4,5-6,7-8").is_ring());
        assert!(!m("1-8,2-3,4-7,5-6").is_ring());
        let rings: Vec<_> = enumerate_matchings(5).into_iter().filter(|m| m.is_ring()).collect();
        assert_eq!(rings.len(), 2);
    }

    #[test]
    fn insert_examples() {
        assert_eq!(
            Matching::insert(&m("1-2"), &m("1-4,2-3"), 1).unwrap(),
            m("1-6,2-5,3-4")
        );
        assert_eq!(
            Matching::insert(&m("1-2"), &m("1-2,3-4"), 2).unwrap(),
            m("1-2,3-4,5-6")
        );
        let l = m("1-4,2-3");
        assert_eq!(Matching::insert(&l, &Matching::empty(), 2).unwrap(), l);
        assert!(matches!(
            Matching::insert(&l, &l, 5),
            Err(Error::InvalidGap { gap: 5, max: 4 })
        ));
    }

    #[test]
    fn json_form() {
        let x = m("1-8,2-3,4-7,5-6");
        let j = serde_json::to_string(&x).unwrap();
        assert_eq!(j, r#"{"k":4,"edges":[[1,8],[2,3],[4,7],[5,6]]}"#);
        let back: Matching = serde_json::from_str(&j).unwrap();
        assert_eq!(back, x);
        assert!(serde_json::from_str::<Matching>(r#"{"k":2,"edges":[[1,3],[2,4]]}"#).is_err());
    }
}
