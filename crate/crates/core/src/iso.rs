//! Isomorphism of small undirected graphs by color refinement with
//! individualization.

use std::collections::HashMap;

/// An undirected simple graph on `0..n` given by adjacency lists.
pub type Adjacency = [Vec<u32>];

struct Union<'a> {
    adj: Vec<&'a [u32]>,
    offset: u32,
    n1: usize,
}

impl Union<'_> {
    fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        let shift = if v < self.n1 { 0 } else { self.offset };
        self.adj[v].iter().map(move |&w| (w + shift) as usize)
    }

    /// Refines `colors` until stable. Colors are renumbered by sorted
    /// signature, so equal inputs on both halves stay comparable.
    fn refine(&self, colors: &mut [u32]) {
        let n = colors.len();
        let mut classes = count_classes(colors);
        loop {
            let sigs: Vec<(u32, Vec<u32>)> = (0..n)
                .map(|v| {
                    let mut s: Vec<u32> = self.neighbors(v).map(|w| colors[w]).collect();
                    s.sort_unstable();
                    (colors[v], s)
                })
                .collect();
            let mut distinct: Vec<&(u32, Vec<u32>)> = sigs.iter().collect();
            distinct.sort();
            distinct.dedup();
            let ids: HashMap<&(u32, Vec<u32>), u32> =
                distinct.iter().enumerate().map(|(i, s)| (*s, i as u32)).collect();
            for v in 0..n {
                colors[v] = ids[&sigs[v]];
            }
            let now = distinct.len();
            if now == classes {
                return;
            }
            classes = now;
        }
    }

    fn balanced(&self, colors: &[u32]) -> bool {
        let mut count: HashMap<u32, i64> = HashMap::new();
        for (v, &c) in colors.iter().enumerate() {
            *count.entry(c).or_default() += if v < self.n1 { 1 } else { -1 };
        }
        count.values().all(|&c| c == 0)
    }

    fn search(&self, colors: Vec<u32>) -> bool {
        if !self.balanced(&colors) {
            return false;
        }
        let mut size: HashMap<u32, usize> = HashMap::new();
        for &c in &colors[..self.n1] {
            *size.entry(c).or_default() += 1;
        }
        let target = (0..self.n1)
            .filter(|&v| size[&colors[v]] > 1)
            .min_by_key(|&v| (size[&colors[v]], colors[v]));
        let Some(v) = target else {
            return self.is_isomorphism(&colors);
        };
        let fresh = colors.iter().max().map_or(0, |m| m + 1);
        for w in self.n1..colors.len() {
            if colors[w] != colors[v] {
                continue;
            }
            let mut next = colors.clone();
            next[v] = fresh;
            next[w] = fresh;
            self.refine(&mut next);
            if self.search(next) {
                return true;
            }
        }
        false
    }

    fn is_isomorphism(&self, colors: &[u32]) -> bool {
        let mut image = vec![0usize; self.n1];
        let by_color: HashMap<u32, usize> = (self.n1..colors.len()).map(|w| (colors[w], w)).collect();
        for v in 0..self.n1 {
            image[v] = by_color[&colors[v]];
        }
        (0..self.n1).all(|v| {
            let mut a: Vec<usize> = self.neighbors(v).map(|u| image[u]).collect();
            let mut b: Vec<usize> = self.neighbors(image[v]).collect();
            a.sort_unstable();
            b.sort_unstable();
            a == b
        })
    }
}

fn count_classes(colors: &[u32]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

pub fn are_isomorphic(g1: &Adjacency, g2: &Adjacency) -> bool {
    if g1.len() != g2.len() {
        return false;
    }
    let edges = |g: &Adjacency| g.iter().map(Vec::len).sum::<usize>();
    if edges(g1) != edges(g2) {
        return false;
    }
    let u = Union {
        adj: g1.iter().chain(g2.iter()).map(Vec::as_slice).collect(),
        offset: g1.len() as u32,
        n1: g1.len(),
    };
    let mut colors = vec![0u32; 2 * g1.len()];
    u.refine(&mut colors);
    u.search(colors)
}
