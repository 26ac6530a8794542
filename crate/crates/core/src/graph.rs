//! The disjoint compatibility graph DCM_k and its component analysis.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;

use crate::compat::{disjoint_compatible_unchecked, neighbors};
use crate::error::{Error, Result};
use crate::families::{edb_partner, make_edb, rings, Class, FamilyIndex};
use crate::formulas::{catalan, edge_series};
use crate::iso::are_isomorphic;
use crate::matching::{enumerate_matchings, wrap_label, Edge, Label, Matching};

pub const DEFAULT_MAX_K: usize = 12;

#[derive(Clone, Copy, Debug)]
pub struct BuildOptions {
    pub max_k: usize,
    pub memory_cap_mb: Option<u64>,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            max_k: DEFAULT_MAX_K,
            memory_cap_mb: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DcmGraph {
    pub k: usize,
    pub vertices: Vec<Matching>,
    pub adjacency: Vec<Vec<u32>>,
    pub edge_count: u64,
}

/// Rough peak memory of a build, in megabytes.
pub fn estimated_memory_mb(k: usize) -> u64 {
    let v = catalan(k as u64).to_string().parse::<u64>().unwrap_or(u64::MAX);
    let d = edge_series(k).coefficients[k].to_string().parse::<u64>().unwrap_or(u64::MAX);
    let bytes = v.saturating_mul(2 * 24 + 4 * k as u64).saturating_add(d.saturating_mul(8));
    bytes.div_ceil(1 << 20)
}

pub fn build_graph(k: usize) -> Result<DcmGraph> {
    build_graph_with(k, &BuildOptions::default())
}

pub fn build_graph_with(k: usize, opts: &BuildOptions) -> Result<DcmGraph> {
    if k == 0 || k > opts.max_k {
        return Err(Error::ResourceBound { k, max: opts.max_k });
    }
    if let Some(cap) = opts.memory_cap_mb {
        let needed = estimated_memory_mb(k);
        if needed > cap {
            return Err(Error::MemoryCap { needed_mb: needed, cap_mb: cap });
        }
    }
    let vertices = enumerate_matchings(k);
    let index_of = |m: &Matching| vertices.binary_search(m).expect("neighbor is a vertex") as u32;
    let row = |m: &Matching| -> Vec<u32> {
        let mut r: Vec<u32> = neighbors(m).iter().map(index_of).collect();
        r.sort_unstable();
        r
    };
    #[cfg(feature = "parallel")]
    let adjacency: Vec<Vec<u32>> = {
        use rayon::prelude::*;
        vertices.par_iter().map(row).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let adjacency: Vec<Vec<u32>> = vertices.iter().map(row).collect();
    let edge_count = adjacency.iter().map(|r| r.len() as u64).sum::<u64>() / 2;
    Ok(DcmGraph {
        k,
        vertices,
        adjacency,
        edge_count,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SizeClass {
    Small,
    Medium,
    Big,
}

impl SizeClass {
    pub fn name(self) -> &'static str {
        match self {
            SizeClass::Small => "small",
            SizeClass::Medium => "medium",
            SizeClass::Big => "big",
        }
    }
}

/// Connected components, ordered by their smallest vertex.
#[derive(Clone, Debug)]
pub struct Components {
    pub of_vertex: Vec<u32>,
    pub members: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentReport {
    pub id: usize,
    pub order: usize,
    pub edges: u64,
    pub class: SizeClass,
    pub profile: BTreeMap<Class, usize>,
    pub representative: Matching,
    pub bipartite: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bipartiteness {
    /// Side of each member, aligned with the component's member list.
    TwoColoring(Vec<bool>),
    /// Vertex indices along an odd cycle.
    OddCycle(Vec<u32>),
}

impl Bipartiteness {
    pub fn is_bipartite(&self) -> bool {
        matches!(self, Bipartiteness::TwoColoring(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeStats {
    pub max: usize,
    pub argmax: Vec<u32>,
}

impl DcmGraph {
    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn index_of(&self, m: &Matching) -> Option<u32> {
        self.vertices.binary_search(m).ok().map(|i| i as u32)
    }

    pub fn degree(&self, v: u32) -> usize {
        self.adjacency[v as usize].len()
    }

    pub fn has_edge(&self, a: u32, b: u32) -> bool {
        self.adjacency[a as usize].binary_search(&b).is_ok()
    }

    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(a, r)| r.iter().filter(move |&&b| b > a as u32).map(move |&b| (a as u32, b)))
    }

    pub fn components(&self) -> Components {
        let n = self.num_vertices();
        let mut of_vertex = vec![u32::MAX; n];
        let mut members = Vec::new();
        let mut queue = VecDeque::new();
        for s in 0..n {
            if of_vertex[s] != u32::MAX {
                continue;
            }
            let id = members.len() as u32;
            let mut list = vec![s as u32];
            of_vertex[s] = id;
            queue.push_back(s as u32);
            while let Some(v) = queue.pop_front() {
                for &w in &self.adjacency[v as usize] {
                    if of_vertex[w as usize] == u32::MAX {
                        of_vertex[w as usize] = id;
                        list.push(w);
                        queue.push_back(w);
                    }
                }
            }
            list.sort_unstable();
            members.push(list);
        }
        Components { of_vertex, members }
    }

    /// Induced subgraph on a sorted vertex list, relabeled to `0..len`.
    pub fn induced(&self, members: &[u32]) -> Vec<Vec<u32>> {
        members
            .iter()
            .map(|&v| {
                self.adjacency[v as usize]
                    .iter()
                    .filter_map(|w| members.binary_search(w).ok().map(|i| i as u32))
                    .collect()
            })
            .collect()
    }

    pub fn degree_stats(&self) -> DegreeStats {
        let max = self.adjacency.iter().map(Vec::len).max().unwrap_or(0);
        let argmax = (0..self.num_vertices() as u32).filter(|&v| self.degree(v) == max).collect();
        DegreeStats { max, argmax }
    }

    /// BFS two-coloring of one component, or an odd cycle.
    pub fn is_bipartite(&self, members: &[u32]) -> Bipartiteness {
        let local = |v: u32| members.binary_search(&v).expect("component member");
        let mut color: Vec<Option<bool>> = vec![None; members.len()];
        let mut parent: Vec<u32> = members.to_vec();
        let mut depth = vec![0usize; members.len()];
        let mut queue = VecDeque::new();
        for s in 0..members.len() {
            if color[s].is_some() {
                continue;
            }
            color[s] = Some(false);
            queue.push_back(members[s]);
            while let Some(v) = queue.pop_front() {
                let lv = local(v);
                let cv = color[lv].expect("colored on discovery");
                for &w in &self.adjacency[v as usize] {
                    let lw = local(w);
                    match color[lw] {
                        None => {
                            color[lw] = Some(!cv);
                            parent[lw] = v;
                            depth[lw] = depth[lv] + 1;
                            queue.push_back(w);
                        }
                        Some(cw) if cw == cv => {
                            return Bipartiteness::OddCycle(odd_cycle(v, w, &parent, &depth, &local));
                        }
                        Some(_) => {}
                    }
                }
            }
        }
        Bipartiteness::TwoColoring(color.into_iter().map(|c| c.unwrap_or(false)).collect())
    }

    pub fn rings(&self) -> Vec<u32> {
        match rings(self.k) {
            Ok((a, b)) => vec![self.index_of(&a).expect("vertex"), self.index_of(&b).expect("vertex")],
            Err(_) => Vec::new(),
        }
    }

    /// Component containing the rings, for `k >= 2`.
    pub fn ring_component(&self, comps: &Components) -> Option<usize> {
        self.rings().first().map(|&r| comps.of_vertex[r as usize] as usize)
    }

    pub fn size_class(&self, order: usize) -> SizeClass {
        let k = self.k;
        let l = k.div_ceil(2);
        let small = if k % 2 == 1 { 1 } else { 2 };
        let medium = if k % 2 == 1 { l } else { 6 * l - 6 };
        if order == small {
            SizeClass::Small
        } else if order == medium {
            SizeClass::Medium
        } else {
            SizeClass::Big
        }
    }

    pub fn component_reports(&self, comps: &Components, index: &FamilyIndex) -> Result<Vec<ComponentReport>> {
        comps
            .members
            .iter()
            .enumerate()
            .map(|(id, mem)| {
                let mut profile = BTreeMap::new();
                for &v in mem {
                    let c = index.classify(&self.vertices[v as usize])?.class;
                    *profile.entry(c).or_insert(0) += 1;
                }
                Ok(ComponentReport {
                    id,
                    order: mem.len(),
                    edges: mem.iter().map(|&v| self.degree(v) as u64).sum::<u64>() / 2,
                    class: self.size_class(mem.len()),
                    profile,
                    representative: self.vertices[mem[0] as usize].clone(),
                    bipartite: self.is_bipartite(mem).is_bipartite(),
                })
            })
            .collect()
    }

    /// Components grouped into isomorphism classes, each a sorted list of
    /// component ids; classes ordered by their first component.
    pub fn isomorphism_classes(&self, comps: &Components) -> Vec<Vec<usize>> {
        let mut by_invariant: BTreeMap<(usize, u64, Vec<usize>), Vec<usize>> = BTreeMap::new();
        for (id, mem) in comps.members.iter().enumerate() {
            let mut degs: Vec<usize> = mem.iter().map(|&v| self.degree(v)).collect();
            degs.sort_unstable();
            let edges = degs.iter().sum::<usize>() as u64 / 2;
            by_invariant.entry((mem.len(), edges, degs)).or_default().push(id);
        }
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for group in by_invariant.into_values() {
            let mut local: Vec<(Vec<Vec<u32>>, Vec<usize>)> = Vec::new();
            for id in group {
                let g = self.induced(&comps.members[id]);
                match local.iter_mut().find(|(rep, _)| are_isomorphic(rep, &g)) {
                    Some((_, ids)) => ids.push(id),
                    None => local.push((g, vec![id])),
                }
            }
            classes.extend(local.into_iter().map(|(_, ids)| ids));
        }
        classes.sort();
        classes
    }

    pub fn to_dot(&self) -> String {
        let mut s = format!("graph DCM_{} {{\n", self.k);
        for m in &self.vertices {
            let _ = writeln!(s, "  \"{m}\";");
        }
        for (a, b) in self.edges() {
            let _ = writeln!(s, "  \"{}\" -- \"{}\";", self.vertices[a as usize], self.vertices[b as usize]);
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Out {
            k: usize,
            vertices: Vec<String>,
            edges: Vec<[u32; 2]>,
        }
        let out = Out {
            k: self.k,
            vertices: self.vertices.iter().map(ToString::to_string).collect(),
            edges: self.edges().map(|(a, b)| [a, b]).collect(),
        };
        serde_json::to_string(&out).expect("plain data serializes")
    }
}

fn odd_cycle(
    v: u32,
    w: u32,
    parent: &[u32],
    depth: &[usize],
    local: &impl Fn(u32) -> usize,
) -> Vec<u32> {
    let (mut a, mut b) = (v, w);
    let mut left = vec![a];
    let mut right = vec![b];
    while depth[local(a)] > depth[local(b)] {
        a = parent[local(a)];
        left.push(a);
    }
    while depth[local(b)] > depth[local(a)] {
        b = parent[local(b)];
        right.push(b);
    }
    while a != b {
        a = parent[local(a)];
        b = parent[local(b)];
        left.push(a);
        right.push(b);
    }
    right.pop();
    right.reverse();
    left.extend(right);
    left
}

pub fn census_csv(k: usize, reports: &[ComponentReport]) -> String {
    let mut s = String::from("k,component_id,order,class,bipartite\n");
    for r in reports {
        let _ = writeln!(s, "{k},{},{},{},{}", r.id, r.order, r.class.name(), r.bipartite);
    }
    s
}

/// Outcome of checking the medium components of DCM_k, `k` even.
#[derive(Clone, Debug, Default, Serialize)]
pub struct MediumEvenReport {
    pub components_checked: usize,
    pub failures: Vec<String>,
}

impl MediumEvenReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty() && self.components_checked > 0
    }
}

/// Checks each medium component against the template: a path
/// `M_1 .. M_{k-2}` of EDB-matchings with `M_{2i-1} = EDB(i, chi, z)` and
/// `M_{2i} = EDB(l-i, chi', z')`, chords `M_a M_b` for even `a`, odd `b`,
/// `a <= b-3`, and two leaves hanging from each path vertex.
pub fn verify_medium_even_structure(
    g: &DcmGraph,
    comps: &Components,
    index: &FamilyIndex,
) -> Result<MediumEvenReport> {
    let k = g.k;
    if k < 4 || k % 2 == 1 {
        return Err(Error::Domain("verify_medium_even_structure", "even k >= 4".into()));
    }
    let l = k / 2;
    let mut report = MediumEvenReport::default();
    for (id, mem) in comps.members.iter().enumerate() {
        if g.size_class(mem.len()) != SizeClass::Medium {
            continue;
        }
        report.components_checked += 1;
        if let Err(msg) = check_medium_even(g, mem, index, l) {
            report.failures.push(format!("component {id} ({}): {msg}", g.vertices[mem[0] as usize]));
        }
    }
    Ok(report)
}

fn check_medium_even(g: &DcmGraph, mem: &[u32], index: &FamilyIndex, l: usize) -> std::result::Result<(), String> {
    let k = g.k;
    if mem.len() != 3 * (k - 2) {
        return Err(format!("order {} instead of {}", mem.len(), 3 * (k - 2)));
    }
    let mut edb = Vec::new();
    for &v in mem {
        let c = index.classify(&g.vertices[v as usize]).map_err(|e| e.to_string())?;
        if c.class == Class::MediumEDB {
            edb.push(c.witness.expect("EDB members carry parameters"));
        }
    }
    let spec = edb.first().ok_or("no EDB vertex")?;
    let (chi, z) = (spec.chi.clone().unwrap_or_default(), spec.z.unwrap_or(1));
    let (chi2, z2) = edb_partner(k, &chi, z).map_err(|e| e.to_string())?;
    // Path position p (1-based) holds (side, j).
    let mut path: Vec<(u32, bool, usize)> = Vec::new();
    for i in 1..l {
        for (first, j) in [(true, i), (false, l - i)] {
            let m = if first {
                make_edb(k, j, &chi, z)
            } else {
                make_edb(k, j, &chi2, z2)
            }
            .map_err(|e| e.to_string())?;
            let v = g.index_of(&m).ok_or("EDB matching is not a vertex")?;
            path.push((v, first, j));
        }
    }
    let mut on_path: Vec<u32> = path.iter().map(|p| p.0).collect();
    on_path.sort_unstable();
    on_path.dedup();
    if on_path.len() != k - 2 {
        return Err("path vertices are not distinct".into());
    }
    if edb.len() != k - 2 || on_path.iter().any(|v| mem.binary_search(v).is_err()) {
        return Err("EDB vertices differ from the path".into());
    }
    for (a, &(va, fa, ja)) in path.iter().enumerate() {
        for (b, &(vb, fb, jb)) in path.iter().enumerate().skip(a + 1) {
            let (pa, pb) = (a + 1, b + 1);
            let template = pb == pa + 1 || (pa % 2 == 0 && pb % 2 == 1 && pa + 3 <= pb);
            let by_j = fa != fb && ja + jb >= l;
            let chord = fa != fb && ja + jb >= l + 2;
            let adjacent = g.has_edge(va, vb);
            if adjacent != template || adjacent != by_j || (pb > pa + 1 && adjacent != chord) {
                return Err(format!("path positions {pa}, {pb}: adjacency {adjacent}"));
            }
        }
        let leaves: Vec<u32> = g.adjacency[va as usize]
            .iter()
            .copied()
            .filter(|w| on_path.binary_search(w).is_err())
            .collect();
        if leaves.len() != 2 {
            return Err(format!("path position {} has {} leaves", a + 1, leaves.len()));
        }
        for w in leaves {
            let c = index.classify(&g.vertices[w as usize]).map_err(|e| e.to_string())?;
            if g.degree(w) != 1 || c.class != Class::MediumEDBL {
                return Err(format!("leaf {} is not an EDBL leaf", g.vertices[w as usize]));
            }
        }
    }
    Ok(())
}

/// A matching of `2k` of the `2k+1` points, leaving one point unmatched.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct NearPerfect {
    pub unmatched: Label,
    pub edges: Vec<Edge>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AlmostPerfectGraph {
    pub k: usize,
    pub vertices: Vec<NearPerfect>,
    pub adjacency: Vec<Vec<u32>>,
    pub edge_count: u64,
    pub components: usize,
    pub connected: bool,
    /// Vertex index of the ring missing point `j`, for `j = 1..=2k+1`.
    pub rings: Vec<u32>,
    pub rings_form_cycle: bool,
}

/// The compatibility graph on near-perfect matchings of `2k+1` points.
pub fn build_almost_perfect_graph(k: usize, max_k: usize) -> Result<AlmostPerfectGraph> {
    if k == 0 || k > max_k {
        return Err(Error::ResourceBound { k, max: max_k });
    }
    let n = 2 * k + 1;
    let base = enumerate_matchings(k);
    let mut vertices = Vec::with_capacity(n * base.len());
    for u in 1..=n as Label {
        for m in &base {
            let mut edges: Vec<Edge> = m
                .edges()
                .iter()
                .map(|e| Edge::new(wrap_label(u as i64 + e.a as i64, n), wrap_label(u as i64 + e.b as i64, n)))
                .collect();
            edges.sort_unstable();
            vertices.push(NearPerfect { unmatched: u, edges });
        }
    }
    vertices.sort_unstable();
    let row = |a: usize| -> Vec<u32> {
        (0..vertices.len())
            .filter(|&b| b != a && disjoint_compatible_unchecked(&vertices[a].edges, &vertices[b].edges))
            .map(|b| b as u32)
            .collect()
    };
    #[cfg(feature = "parallel")]
    let adjacency: Vec<Vec<u32>> = {
        use rayon::prelude::*;
        (0..vertices.len()).into_par_iter().map(row).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let adjacency: Vec<Vec<u32>> = (0..vertices.len()).map(row).collect();
    let edge_count = adjacency.iter().map(|r| r.len() as u64).sum::<u64>() / 2;

    let mut seen = vec![false; vertices.len()];
    let mut components = 0;
    for s in 0..vertices.len() {
        if seen[s] {
            continue;
        }
        components += 1;
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &w in &adjacency[v] {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    stack.push(w as usize);
                }
            }
        }
    }

    let lookup: HashMap<&NearPerfect, u32> = vertices.iter().enumerate().map(|(i, v)| (v, i as u32)).collect();
    let rings: Vec<u32> = (1..=n as Label)
        .map(|j| {
            let mut edges: Vec<Edge> = (0..k as i64)
                .map(|i| Edge::new(wrap_label(j as i64 + 2 * i + 1, n), wrap_label(j as i64 + 2 * i + 2, n)))
                .collect();
            edges.sort_unstable();
            lookup[&NearPerfect { unmatched: j, edges }]
        })
        .collect();
    let rings_form_cycle = (0..n).all(|j| {
        let ring_nbrs: Vec<usize> = (0..n)
            .filter(|&i| adjacency[rings[j] as usize].binary_search(&rings[i]).is_ok())
            .collect();
        let mut expect = vec![(j + 1) % n, (j + n - 1) % n];
        expect.sort_unstable();
        expect.dedup();
        ring_nbrs == expect
    });
    Ok(AlmostPerfectGraph {
        k,
        vertices,
        adjacency,
        edge_count,
        components,
        connected: components == 1,
        rings,
        rings_form_cycle,
    })
}
