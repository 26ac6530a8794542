//! Exhaustive checks of the structure of DCM_k against the closed forms.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use num_bigint::BigUint;
use serde::Serialize;

use crate::compat::{degree, neighbors, neighbors_bruteforce};
use crate::dual_tree::{find_antiblocks, find_blocks, SeparatedPair};
use crate::error::Result;
use crate::families::{
    generate_family, is_i, make_edb, Class, FamilyIndex, PositionSequence, Variant,
};
use crate::formulas::{
    big_component_order, catalan, count_db, count_dbd, count_edb_components, count_i,
    count_l_even, count_l_odd, count_pairs, edge_series, growth_estimate, riordan,
};
use crate::graph::{
    build_almost_perfect_graph, build_graph_with, verify_medium_even_structure, Bipartiteness,
    BuildOptions, SizeClass,
};
use crate::matching::{enumerate_matchings, wrap_label, Edge, Matching};

#[derive(Clone, Copy, Debug)]
#[derive(Default)]
pub struct VerifyOptions {
    pub build: BuildOptions,
    /// Skip graph builds above this size.
    pub quick_cap: Option<usize>,
}


#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct KSummary {
    pub k: usize,
    pub vertices: usize,
    pub edges: u64,
    pub components: usize,
    /// Number of components of each order.
    pub orders: BTreeMap<usize, usize>,
    pub isomorphism_classes: usize,
    pub max_degree: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub k_min: usize,
    pub k_max: usize,
    pub passed: bool,
    pub summaries: Vec<KSummary>,
    pub skipped: Vec<usize>,
    pub checks: Vec<Check>,
}

/// Isomorphism class counts of the components of DCM_1 .. DCM_8.
const ISO_CLASSES_SMALL: [usize; 8] = [1, 1, 2, 2, 3, 3, 4, 4];

fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

struct Recorder {
    checks: Vec<Check>,
}

impl Recorder {
    fn push(&mut self, name: &'static str, k: Option<usize>, outcome: std::result::Result<(), String>) {
        let (passed, detail) = match outcome {
            Ok(()) => (true, String::new()),
            Err(d) => (false, d),
        };
        self.checks.push(Check { name, k, passed, detail });
    }
}

fn expect_eq<T: PartialEq + std::fmt::Debug>(got: T, want: T) -> std::result::Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("got {got:?}, expected {want:?}"))
    }
}

pub fn verify_range(k_min: usize, k_max: usize, opts: &VerifyOptions) -> Result<VerifyReport> {
    let mut rec = Recorder { checks: Vec::new() };
    let mut summaries = Vec::new();
    let mut skipped = Vec::new();
    for k in k_min.max(1)..=k_max {
        for (name, outcome) in structural_checks(k) {
            rec.push(name, Some(k), outcome);
        }
        if opts.quick_cap.is_some_and(|cap| k > cap) {
            skipped.push(k);
            continue;
        }
        summaries.push(graph_checks(k, opts, &mut rec)?);
    }
    let t = Instant::now();
    let g = growth_estimate(30)?;
    let elapsed = t.elapsed().as_secs_f64();
    rec.push(
        "growth_probe",
        None,
        if (4.97..=5.57).contains(&g) && elapsed < 1.0 {
            Ok(())
        } else {
            Err(format!("d_30/d_29 = {g} in {elapsed:.3}s"))
        },
    );
    let passed = rec.checks.iter().all(|c| c.passed);
    Ok(VerifyReport {
        k_min,
        k_max,
        passed,
        summaries,
        skipped,
        checks: rec.checks,
    })
}

type Outcome = std::result::Result<(), String>;

/// Checks that do not need the whole graph.
pub fn structural_checks(k: usize) -> Vec<(&'static str, Outcome)> {
    let l = k.div_ceil(2) as u64;
    let mut out: Vec<(&'static str, Outcome)> = Vec::new();
    let count = |v: Variant| generate_family(v, k).map(|f| f.len() as u64).map_err(|e| e.to_string());
    if k % 2 == 1 {
        out.push(("count_I", count(Variant::I).and_then(|n| expect_eq(big(n), count_i(l).unwrap()))));
        out.push(("count_L", count(Variant::L).and_then(|n| expect_eq(big(n), count_l_odd(l).unwrap()))));
        if l >= 3 {
            out.push(("count_DBD", count(Variant::DBD).and_then(|n| expect_eq(big(n), count_dbd(l).unwrap()))));
        }
    } else {
        out.push(("count_L", count(Variant::L).and_then(|n| expect_eq(big(n), count_l_even(l).unwrap()))));
        out.push(("count_DB", count(Variant::DB).and_then(|n| expect_eq(big(n), count_db(l).unwrap()))));
    }
    if k <= 8 {
        out.push(("neighbors_oracle", check_neighbor_oracle(k)));
        out.push(("separated_pairs", check_separated_pairs(k)));
    }
    if (3..=8).contains(&k) {
        out.push(("block_insertion_degree", check_block_insertion_degree(k - 2)));
    }
    if k <= 7 {
        out.push(("block_forces_antiblock", check_block_forces_antiblock(k)));
    }
    if k <= 8 {
        out.push(("degree_lower_bounds", check_degree_lower_bounds(k)));
    }
    if k % 2 == 1 && k <= 9 {
        out.push(("I_antiblock_free", check_i_antiblock_free(k)));
    }
    if k.is_multiple_of(2) && k >= 4 {
        out.push(("EDB_degree", check_edb_degrees(k, &[1])));
    }
    out
}

fn graph_checks(k: usize, opts: &VerifyOptions, rec: &mut Recorder) -> Result<KSummary> {
    let g = build_graph_with(k, &opts.build)?;
    let comps = g.components();
    let index = FamilyIndex::new(k);
    let reports = g.component_reports(&comps, &index)?;
    let iso = g.isomorphism_classes(&comps);
    let stats = g.degree_stats();
    let mut orders = BTreeMap::new();
    for r in &reports {
        *orders.entry(r.order).or_insert(0usize) += 1;
    }
    let l = k.div_ceil(2) as u64;
    let kk = Some(k);

    rec.push("vertices", kk, expect_eq(big(g.num_vertices() as u64), catalan(k as u64)));
    rec.push("edges", kk, expect_eq(big(g.edge_count), edge_series(k).coefficients[k].clone()));
    let n_small = reports.iter().filter(|r| r.class == SizeClass::Small).count() as u64;
    let n_medium = reports.iter().filter(|r| r.class == SizeClass::Medium).count() as u64;
    if k % 2 == 1 {
        rec.push("small_components", kk, expect_eq(big(n_small), count_i(l)?));
        if k >= 3 {
            let want = if l >= 3 { count_dbd(l)? } else { big(1) };
            rec.push("medium_components", kk, expect_eq(big(n_medium), want));
        }
    } else {
        rec.push("small_components", kk, expect_eq(big(n_small), count_pairs(l)?));
        if k >= 4 {
            let want = if l >= 3 { count_edb_components(l)? } else { big(1) };
            rec.push("medium_components", kk, expect_eq(big(n_medium), want));
        }
    }
    let want_iso = if k <= 8 { ISO_CLASSES_SMALL[k - 1] } else { 3 };
    rec.push("isomorphism_classes", kk, expect_eq(iso.len(), want_iso));
    if k >= 2 {
        let mut rings = g.rings();
        rings.sort_unstable();
        rec.push(
            "max_degree",
            kk,
            expect_eq(big(stats.max as u64), riordan(k as u64)?).and_then(|_| expect_eq(&stats.argmax, &rings)),
        );
        let ring = g.ring_component(&comps).expect("rings exist");
        let b = g.is_bipartite(&comps.members[ring]);
        let outcome = match (&b, k <= 7) {
            (Bipartiteness::TwoColoring(_), true) => Ok(()),
            (Bipartiteness::OddCycle(c), false) => {
                let closed = (0..c.len()).all(|i| g.has_edge(c[i], c[(i + 1) % c.len()]));
                if c.len() % 2 == 1 && closed {
                    Ok(())
                } else {
                    Err(format!("invalid odd-cycle witness of length {}", c.len()))
                }
            }
            (_, small) => Err(format!("bipartite = {}, expected {small}", b.is_bipartite())),
        };
        rec.push("ring_bipartiteness", kk, outcome);
    }
    if k.is_multiple_of(2) && k >= 4 {
        let r = verify_medium_even_structure(&g, &comps, &index)?;
        rec.push("medium_even_structure", kk, if r.ok() { Ok(()) } else { Err(r.failures.join("; ")) });
    }
    if k % 2 == 1 && k >= 3 {
        let outcome = reports
            .iter()
            .filter(|r| r.class == SizeClass::Medium)
            .try_for_each(|r| {
                let mem = &comps.members[r.id];
                let centers: Vec<u32> = mem.iter().copied().filter(|&v| g.degree(v) == mem.len() - 1).collect();
                let leaves = mem.iter().filter(|&&v| g.degree(v) == 1).count();
                let star = r.edges as usize == mem.len() - 1 && !centers.is_empty() && leaves + 1 >= mem.len();
                let labelled = k == 3
                    || (r.profile.get(&Class::MediumDBD) == Some(&1)
                        && r.profile.get(&Class::MediumDBDL) == Some(&(mem.len() - 1)));
                if star && labelled && mem.len() == l as usize {
                    Ok(())
                } else {
                    Err(format!("component {} is not a DBD star of order {l}", r.id))
                }
            });
        rec.push("medium_odd_stars", kk, outcome);
    }
    if k >= 5 {
        rec.push("vertex_partition", kk, check_partition(k, &g, &comps, &reports));
    }
    if k >= 9 {
        let ring = g.ring_component(&comps).expect("rings exist");
        let order = comps.members[ring].len() as u64;
        let medium = if k % 2 == 1 { l } else { 6 * l - 6 };
        rec.push(
            "big_order",
            kk,
            expect_eq(big(order), big_component_order(k as u64)?).and_then(|_| {
                if order > medium {
                    Ok(())
                } else {
                    Err("big component not larger than medium".into())
                }
            }),
        );
    }
    if k <= 6 {
        let a = build_almost_perfect_graph(k, opts.build.max_k)?;
        rec.push(
            "almost_perfect",
            kk,
            if a.connected && a.rings_form_cycle {
                Ok(())
            } else {
                Err(format!("connected = {}, ring cycle = {}", a.connected, a.rings_form_cycle))
            },
        );
    }
    Ok(KSummary {
        k,
        vertices: g.num_vertices(),
        edges: g.edge_count,
        components: comps.members.len(),
        orders,
        isomorphism_classes: iso.len(),
        max_degree: stats.max,
    })
}

fn check_partition(
    k: usize,
    g: &crate::graph::DcmGraph,
    comps: &crate::graph::Components,
    reports: &[crate::graph::ComponentReport],
) -> Outcome {
    let members_of = |class: SizeClass| -> BTreeSet<Matching> {
        reports
            .iter()
            .filter(|r| r.class == class)
            .flat_map(|r| comps.members[r.id].iter().map(|&v| g.vertices[v as usize].clone()))
            .collect()
    };
    let family = |vs: &[Variant]| -> BTreeSet<Matching> {
        vs.iter().flat_map(|&v| generate_family(v, k).unwrap_or_default()).collect()
    };
    let (small, medium) = if k % 2 == 1 {
        (family(&[Variant::I]), family(&[Variant::DBD, Variant::DBDL]))
    } else {
        (family(&[Variant::DB]), family(&[Variant::EDB, Variant::EDBL1, Variant::EDBL2]))
    };
    if members_of(SizeClass::Small) != small {
        return Err("small components differ from the generated family".into());
    }
    if members_of(SizeClass::Medium) != medium {
        return Err("medium components differ from the generated families".into());
    }
    let ring = g.ring_component(comps).expect("rings exist");
    for r in reports {
        let regular = r.profile.get(&Class::Regular).copied().unwrap_or(0);
        let is_big = r.class == SizeClass::Big;
        if is_big != (regular == r.order) || (k >= 9 && is_big != (r.id == ring)) {
            return Err(format!("component {} does not fit the partition", r.id));
        }
    }
    Ok(())
}

pub fn check_neighbor_oracle(k: usize) -> Outcome {
    for m in enumerate_matchings(k) {
        if neighbors(&m) != neighbors_bruteforce(&m) {
            return Err(format!("neighbors differ at {m}"));
        }
    }
    Ok(())
}

fn points(p: &SeparatedPair, n: usize) -> [u16; 4] {
    [0, 1, 2, 3].map(|i| wrap_label(p.first as i64 + i, n))
}

/// Every matching of size `k >= 4` has two separated pairs on disjoint
/// point sets.
pub fn check_separated_pairs(k: usize) -> Outcome {
    if k < 4 {
        return Ok(());
    }
    for m in enumerate_matchings(k) {
        let n = m.num_points();
        let mut pairs = find_blocks(&m);
        pairs.extend(find_antiblocks(&m));
        let ok = pairs.iter().enumerate().any(|(i, p)| {
            let a = points(p, n);
            pairs[i + 1..].iter().any(|q| points(q, n).iter().all(|x| !a.contains(x)))
        });
        if !ok {
            return Err(format!("{m} lacks two disjoint separated pairs"));
        }
    }
    Ok(())
}

/// Inserting a block anywhere keeps the degree, for hosts of size `host_k`.
pub fn check_block_insertion_degree(host_k: usize) -> Outcome {
    let block: Matching = "1-4,2-3".parse().expect("valid block");
    for m in enumerate_matchings(host_k) {
        let d = degree(&m);
        for gap in 0..=m.num_points() {
            let n = Matching::insert(&m, &block, gap).map_err(|e| e.to_string())?;
            if degree(&n) != d {
                return Err(format!("inserting a block into {m} at {gap} changes the degree"));
            }
        }
    }
    Ok(())
}

/// A block of `M` on points `i..i+3` forces the antiblock on the same
/// points in every neighbor.
pub fn check_block_forces_antiblock(k: usize) -> Outcome {
    for m in enumerate_matchings(k) {
        let n = m.num_points();
        let blocks = find_blocks(&m);
        if blocks.is_empty() {
            continue;
        }
        for x in neighbors(&m) {
            for b in &blocks {
                let p = points(b, n);
                if !(x.contains_edge(Edge::new(p[0], p[1])) && x.contains_edge(Edge::new(p[2], p[3]))) {
                    return Err(format!("neighbor {x} of {m} lacks the antiblock at {}", b.first));
                }
            }
        }
    }
    Ok(())
}

/// Even size implies degree at least 1; no blocks implies degree at least
/// 2; exactly one block implies degree at least 1. The two rings of size 3
/// have no blocks and a single neighbor, and are the only exceptions.
pub fn check_degree_lower_bounds(k: usize) -> Outcome {
    if k < 2 {
        return Ok(());
    }
    for m in enumerate_matchings(k) {
        let d = degree(&m);
        let blocks = find_blocks(&m).len();
        let bound = match blocks {
            0 => 2,
            1 => 1,
            _ => u64::from(k.is_multiple_of(2)),
        };
        if d < bound && !(k == 3 && m.is_ring() && d == 1) {
            return Err(format!("{m} has degree {d} with {blocks} blocks"));
        }
    }
    Ok(())
}

pub fn check_i_antiblock_free(k: usize) -> Outcome {
    let family = generate_family(Variant::I, k).map_err(|e| e.to_string())?;
    match family.iter().find(|m| !find_antiblocks(m).is_empty() || !is_i(m)) {
        Some(m) => Err(format!("I-matching {m} has an antiblock")),
        None => Ok(()),
    }
}

/// `EDB(k, j, chi, z)` has exactly `j + 2` neighbors, for every `chi` and
/// the given `z`.
pub fn check_edb_degrees(k: usize, zs: &[u16]) -> Outcome {
    let l = k / 2;
    let len = if k >= 6 { l - 3 } else { 0 };
    for chi in PositionSequence::all(len) {
        for j in 1..l {
            for &z in zs {
                let m = make_edb(k, j, &chi, z).map_err(|e| e.to_string())?;
                let d = degree(&m);
                if d != j as u64 + 2 {
                    return Err(format!("EDB({k}, {j}, {chi}, {z}) has degree {d}"));
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_range_passes() {
        let opts = VerifyOptions {
            quick_cap: Some(4),
            ..VerifyOptions::default()
        };
        let r = verify_range(1, 6, &opts).unwrap();
        let failed: Vec<_> = r.checks.iter().filter(|c| !c.passed).collect();
        assert!(r.passed, "{failed:?}");
        assert_eq!(r.skipped, vec![5, 6]);
        assert_eq!(r.summaries.len(), 4);
        assert_eq!(r.summaries[3].orders, BTreeMap::from([(2, 4), (6, 1)]));
    }

    #[test]
    fn full_small_range_passes() {
        let r = verify_range(1, 8, &VerifyOptions::default()).unwrap();
        let failed: Vec<_> = r.checks.iter().filter(|c| !c.passed).collect();
        assert!(r.passed, "{failed:?}");
        let iso: Vec<usize> = r.summaries.iter().map(|s| s.isomorphism_classes).collect();
        assert_eq!(iso, ISO_CLASSES_SMALL);
    }
}
