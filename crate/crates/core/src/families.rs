//! Special matchings: rings, I- and L-matchings, and the strip-drawing
//! families DB, DBD, DBDL, EDB, EDBL.
//!
//! A strip drawing places points on the upper side U and the lower side L of
//! a rectangle. U is labeled left to right starting at `z`, then L right to
//! left, cyclically. A D-edge joins U to L; a B-edge joins two neighboring
//! points of one side.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::compat::{flip, FlippablePartition};
use crate::dual_tree::find_blocks;
use crate::error::{Error, Result};
use crate::matching::{wrap_label, Edge, Label, Matching};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "-")]
    Minus,
    #[serde(rename = "+")]
    Plus,
}

impl Sign {
    fn flipped(self) -> Sign {
        match self {
            Sign::Minus => Sign::Plus,
            Sign::Plus => Sign::Minus,
        }
    }
}

/// Positions of the B-edges of the inner DB-elements, `+` for U.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PositionSequence(pub Vec<Sign>);

impl PositionSequence {
    /// All sequences of length `n`, in order with `-` before `+`.
    pub fn all(n: usize) -> Vec<PositionSequence> {
        (0..1u64 << n)
            .map(|bits| {
                PositionSequence(
                    (0..n)
                        .map(|i| if bits >> (n - 1 - i) & 1 == 1 { Sign::Plus } else { Sign::Minus })
                        .collect(),
                )
            })
            .collect()
    }

    /// Reversed with every sign changed.
    pub fn conjugate(&self) -> PositionSequence {
        PositionSequence(self.0.iter().rev().map(|s| s.flipped()).collect())
    }

    /// Number of `+` minus number of `-`.
    pub fn delta(&self) -> i64 {
        self.0
            .iter()
            .map(|s| if *s == Sign::Plus { 1 } else { -1 })
            .sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for PositionSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            f.write_str(if *s == Sign::Plus { "+" } else { "-" })?;
        }
        Ok(())
    }
}

impl FromStr for PositionSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<PositionSequence> {
        s.chars()
            .enumerate()
            .map(|(pos, c)| match c {
                '+' => Ok(Sign::Plus),
                '-' => Ok(Sign::Minus),
                _ => Err(Error::Parse {
                    pos,
                    msg: format!("expected `+` or `-`, found `{c}`"),
                }),
            })
            .collect::<Result<Vec<_>>>()
            .map(PositionSequence)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Variant {
    Ring,
    I,
    L,
    DB,
    DBD,
    DBDL,
    EDB,
    EDBL1,
    EDBL2,
}

/// Parameters naming one member of a family.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FamilySpec {
    pub variant: Variant,
    pub k: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chi: Option<PositionSequence>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z: Option<Label>,
}

impl FamilySpec {
    fn strip(variant: Variant, k: usize, j: Option<usize>, chi: &PositionSequence, z: Label) -> FamilySpec {
        FamilySpec {
            variant,
            k,
            j,
            chi: Some(chi.clone()),
            z: Some(z),
        }
    }

    pub fn build(&self) -> Result<Matching> {
        let chi = self.chi.clone().unwrap_or_default();
        let z = self.z.unwrap_or(1);
        let j = self.j.unwrap_or(1);
        match self.variant {
            Variant::Ring => Ok(rings(self.k)?.0),
            Variant::I | Variant::L => Err(Error::Parameter(
                "I- and L-matchings have no parametric form".into(),
            )),
            Variant::DB => make_db(self.k, &chi, z),
            Variant::DBD => make_dbd(self.k, &chi, z),
            Variant::DBDL => make_dbdl(self.k, j, &chi, z),
            Variant::EDB => make_edb(self.k, j, &chi, z),
            Variant::EDBL1 => make_edbl1(self.k, j, &chi, z),
            Variant::EDBL2 => make_edbl2(self.k, j, &chi, z),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}({}", self.variant, self.k)?;
        if let Some(j) = self.j {
            write!(f, ", {j}")?;
        }
        if let Some(chi) = &self.chi {
            write!(f, ", {}", if chi.is_empty() { "ε".to_string() } else { chi.to_string() })?;
        }
        if let Some(z) = self.z {
            write!(f, ", {z}")?;
        }
        f.write_str(")")
    }
}

#[derive(Clone, Copy)]
enum Element {
    Db(Sign),
    /// DB-element with the extra boundary edges `e` (same side as `b`) and
    /// `e'` (opposite side).
    Edb(Sign),
    D,
}

/// A strip drawing realized as a matching, with its named edges.
struct Strip {
    matching: Matching,
    d: Vec<Edge>,
    b: Vec<Edge>,
    e: Option<(Edge, Edge)>,
    upper: usize,
}

fn build_strip(elements: &[Element], z: Label) -> Strip {
    // Edge ids: 2i for d_i, 2i+1 for b_i (0-based element i); extras after.
    let mut upper: Vec<usize> = Vec::new();
    let mut lower: Vec<usize> = Vec::new();
    let n_el = elements.len();
    let (e_id, e2_id) = (2 * n_el, 2 * n_el + 1);
    for (i, el) in elements.iter().enumerate() {
        let (d, b) = (2 * i, 2 * i + 1);
        upper.push(d);
        lower.push(d);
        match *el {
            Element::Db(s) => {
                let side = if s == Sign::Plus { &mut upper } else { &mut lower };
                side.extend([b, b]);
            }
            Element::Edb(s) => {
                let (same, other) = if s == Sign::Plus {
                    (&mut upper, &mut lower)
                } else {
                    (&mut lower, &mut upper)
                };
                same.extend([e_id, e_id, b, b]);
                other.extend([e2_id, e2_id]);
            }
            Element::D => {}
        }
    }
    let n = upper.len() + lower.len();
    let mut ends: Vec<Vec<Label>> = vec![Vec::new(); 2 * n_el + 2];
    for (i, &id) in upper.iter().enumerate() {
        ends[id].push(wrap_label(z as i64 + i as i64, n));
    }
    let base = z as i64 + upper.len() as i64;
    for (i, &id) in lower.iter().rev().enumerate() {
        ends[id].push(wrap_label(base + i as i64, n));
    }
    let edge = |id: usize| Edge::new(ends[id][0], ends[id][1]);
    let mut d = Vec::new();
    let mut b = Vec::new();
    let mut edges = Vec::new();
    let mut e = None;
    for (i, el) in elements.iter().enumerate() {
        d.push(edge(2 * i));
        edges.push(edge(2 * i));
        match el {
            Element::D => {}
            Element::Db(_) => {
                b.push(edge(2 * i + 1));
                edges.push(edge(2 * i + 1));
            }
            Element::Edb(_) => {
                b.push(edge(2 * i + 1));
                edges.push(edge(2 * i + 1));
                e = Some((edge(e_id), edge(e2_id)));
                edges.extend([edge(e_id), edge(e2_id)]);
            }
        }
    }
    Strip {
        matching: Matching::from_edges_unchecked(edges),
        d,
        b,
        e,
        upper: upper.len(),
    }
}

fn ell(k: usize) -> usize {
    k.div_ceil(2)
}

fn check_z(k: usize, z: Label) -> Result<()> {
    if z == 0 || z as usize > 2 * k {
        return Err(Error::LabelOutOfRange {
            label: z,
            max: (2 * k) as Label,
        });
    }
    Ok(())
}

fn check_chi(chi: &PositionSequence, len: usize) -> Result<()> {
    if chi.len() != len {
        return Err(Error::Parameter(format!(
            "position sequence has length {}, expected {len}",
            chi.len()
        )));
    }
    Ok(())
}

/// Signs of the DB-elements of a DB-drawing with `count` elements: the
/// first `+`, the last `-`, the rest from `chi`. A single element is `+`.
fn db_signs(count: usize, chi: &PositionSequence) -> Vec<Sign> {
    if count == 1 {
        return vec![Sign::Plus];
    }
    let mut s = vec![Sign::Plus];
    s.extend(chi.0.iter().copied());
    s.push(Sign::Minus);
    s
}

fn db_strip(k: usize, chi: &PositionSequence, z: Label) -> Result<Strip> {
    if k < 2 || k % 2 == 1 {
        return Err(Error::Parameter(format!("DB needs even k >= 2, got {k}")));
    }
    let l = ell(k);
    check_chi(chi, l.saturating_sub(2))?;
    check_z(k, z)?;
    let els: Vec<Element> = db_signs(l, chi).into_iter().map(Element::Db).collect();
    Ok(build_strip(&els, z))
}

pub fn make_db(k: usize, chi: &PositionSequence, z: Label) -> Result<Matching> {
    Ok(db_strip(k, chi, z)?.matching)
}

/// Parameters of the only neighbor of `DB(k, chi, z)`.
pub fn db_partner(k: usize, chi: &PositionSequence, z: Label) -> Result<(PositionSequence, Label)> {
    let s = db_strip(k, chi, z)?;
    Ok((chi.conjugate(), wrap_label(z as i64 + s.upper as i64, 2 * k)))
}

fn dbd_strip(k: usize, chi: &PositionSequence, z: Label) -> Result<Strip> {
    if k < 3 || k.is_multiple_of(2) {
        return Err(Error::Parameter(format!("DBD needs odd k >= 3, got {k}")));
    }
    let l = ell(k);
    check_chi(chi, l - 2 - usize::from(l > 2))?;
    check_z(k, z)?;
    let mut els: Vec<Element> = db_signs(l - 1, chi).into_iter().map(Element::Db).collect();
    els.push(Element::D);
    Ok(build_strip(&els, z))
}

pub fn make_dbd(k: usize, chi: &PositionSequence, z: Label) -> Result<Matching> {
    Ok(dbd_strip(k, chi, z)?.matching)
}

/// The second parameter pair naming the same DBD-matching.
pub fn dbd_partner(k: usize, chi: &PositionSequence, z: Label) -> Result<(PositionSequence, Label)> {
    let s = dbd_strip(k, chi, z)?;
    Ok((chi.conjugate(), wrap_label(z as i64 + s.upper as i64, 2 * k)))
}

fn check_j(j: usize, l: usize) -> Result<()> {
    if j == 0 || j >= l {
        return Err(Error::Parameter(format!("j = {j} outside 1..={}", l - 1)));
    }
    Ok(())
}

/// The neighbor of `DBD(k, chi, z)` obtained by flipping its `j`-th
/// DBD-element.
pub fn make_dbdl(k: usize, j: usize, chi: &PositionSequence, z: Label) -> Result<Matching> {
    let s = dbd_strip(k, chi, z)?;
    let l = ell(k);
    check_j(j, l)?;
    let mut parts = Vec::new();
    for i in 0..l - 1 {
        match (i + 1).cmp(&j) {
            std::cmp::Ordering::Less => parts.push(vec![s.d[i], s.b[i]]),
            std::cmp::Ordering::Equal => parts.push(vec![s.d[i], s.b[i], s.d[i + 1]]),
            std::cmp::Ordering::Greater => parts.push(vec![s.b[i], s.d[i + 1]]),
        }
    }
    flip(&s.matching, &FlippablePartition::new(parts))
}

fn edb_strip(k: usize, j: usize, chi: &PositionSequence, z: Label) -> Result<Strip> {
    if k < 4 || k % 2 == 1 {
        return Err(Error::Parameter(format!("EDB needs even k >= 4, got {k}")));
    }
    let l = ell(k);
    let host = l - 1;
    check_chi(chi, host.saturating_sub(2))?;
    check_z(k, z)?;
    check_j(j, l)?;
    let mut els: Vec<Element> = db_signs(host, chi).into_iter().map(Element::Db).collect();
    if let Element::Db(s) = els[j - 1] {
        els[j - 1] = Element::Edb(s);
    }
    Ok(build_strip(&els, z))
}

pub fn make_edb(k: usize, j: usize, chi: &PositionSequence, z: Label) -> Result<Matching> {
    Ok(edb_strip(k, j, chi, z)?.matching)
}

/// Parameters `(chi', z')` of the EDB-matchings adjacent to
/// `EDB(k, j, chi, z)`; they do not depend on `j`.
pub fn edb_partner(k: usize, chi: &PositionSequence, z: Label) -> Result<(PositionSequence, Label)> {
    let s = edb_strip(k, 1, chi, z)?;
    Ok((chi.conjugate(), wrap_label(z as i64 + s.upper as i64, 2 * k)))
}

fn edbl(k: usize, j: usize, chi: &PositionSequence, z: Label, first: bool) -> Result<Matching> {
    let s = edb_strip(k, j, chi, z)?;
    let (e, e2) = s.e.expect("EDB drawing has extra edges");
    let mut parts: Vec<Vec<Edge>> = (0..s.d.len())
        .filter(|&i| i + 1 != j)
        .map(|i| vec![s.d[i], s.b[i]])
        .collect();
    let (with_b, with_d) = if first { (e, e2) } else { (e2, e) };
    parts.push(vec![s.b[j - 1], with_b]);
    parts.push(vec![s.d[j - 1], with_d]);
    flip(&s.matching, &FlippablePartition::new(parts))
}

/// The leaf neighbor of `EDB(k, j, chi, z)` flipping `{b_j, e}` and
/// `{d_j, e'}`.
pub fn make_edbl1(k: usize, j: usize, chi: &PositionSequence, z: Label) -> Result<Matching> {
    edbl(k, j, chi, z, true)
}

/// The leaf neighbor of `EDB(k, j, chi, z)` flipping `{b_j, e'}` and
/// `{d_j, e}`.
pub fn make_edbl2(k: usize, j: usize, chi: &PositionSequence, z: Label) -> Result<Matching> {
    edbl(k, j, chi, z, false)
}

/// The two matchings with boundary edges only: `{12, 34, ...}` and
/// `{1 2k, 23, ...}`.
pub fn rings(k: usize) -> Result<(Matching, Matching)> {
    if k < 2 {
        return Err(Error::Parameter(format!("rings need k >= 2, got {k}")));
    }
    let n = 2 * k;
    let a: Vec<Edge> = (0..k).map(|i| Edge::new(2 * i as Label + 1, 2 * i as Label + 2)).collect();
    let b: Vec<Edge> = (0..k)
        .map(|i| Edge::new(2 * i as Label + 2, wrap_label(2 * i as i64 + 3, n)))
        .collect();
    Ok((Matching::from_edges_unchecked(a), Matching::from_edges_unchecked(b)))
}

/// Removes a block, relabeling the remaining points.
fn strip_block(m: &Matching) -> Option<Matching> {
    let blk = find_blocks(m).into_iter().next()?;
    let r = m.rotate(1 - blk.first as i64);
    Some(r.remove(0, 2).expect("block occupies labels 1..=4").0)
}

/// Isolated matchings: odd size, reducing to a single edge by repeatedly
/// removing blocks.
pub fn is_i(m: &Matching) -> bool {
    if m.k().is_multiple_of(2) {
        return false;
    }
    let mut cur = m.clone();
    while cur.k() > 1 {
        match strip_block(&cur) {
            Some(next) => cur = next,
            None => return false,
        }
    }
    true
}

/// Leaves: reducing to a ring of size 2 or 3 by repeatedly removing blocks.
pub fn is_l(m: &Matching) -> bool {
    let mut cur = m.clone();
    loop {
        match cur.k() {
            0 | 1 => return false,
            2 | 3 => return cur.is_ring(),
            _ => match strip_block(&cur) {
                Some(next) => cur = next,
                None => return false,
            },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Red,
    Black,
}

/// Colors an edge of an I-matching red when both submatchings on its sides
/// have even size.
pub fn i_coloring(m: &Matching) -> Result<Vec<(Edge, Color)>> {
    if !is_i(m) {
        return Err(Error::NotIMatching);
    }
    let k = m.k();
    Ok(m
        .edges()
        .iter()
        .map(|&e| {
            let inside = e.span() / 2;
            let outside = k - 1 - inside;
            let c = if inside % 2 == 0 && outside.is_multiple_of(2) {
                Color::Red
            } else {
                Color::Black
            };
            (e, c)
        })
        .collect())
}

fn grow_by_blocks(base: Vec<Matching>, steps: usize) -> BTreeSet<Matching> {
    let block: Matching = "1-4,2-3".parse().expect("valid block");
    let mut cur: BTreeSet<Matching> = base.into_iter().collect();
    for _ in 0..steps {
        let mut next = BTreeSet::new();
        for m in &cur {
            for gap in 0..=m.num_points() {
                next.insert(Matching::insert(m, &block, gap).expect("gap in range"));
            }
        }
        let rotated: Vec<Matching> = next
            .iter()
            .flat_map(|m| (1..m.num_points() as i64).map(move |s| m.rotate(s)))
            .collect();
        next.extend(rotated);
        cur = next;
    }
    cur
}

/// Every member of a family of size `k`, each once, sorted.
pub fn generate_family(variant: Variant, k: usize) -> Result<Vec<Matching>> {
    Ok(generate_with_specs(variant, k)?.into_iter().map(|(m, _)| m).collect())
}

/// Members with one naming parameter set each (the smallest in
/// generation order), sorted by matching.
pub fn generate_with_specs(variant: Variant, k: usize) -> Result<Vec<(Matching, FamilySpec)>> {
    let l = ell(k);
    let plain = |v| FamilySpec {
        variant: v,
        k,
        j: None,
        chi: None,
        z: None,
    };
    let mut out: Vec<(Matching, FamilySpec)> = Vec::new();
    match variant {
        Variant::Ring => {
            let (a, b) = rings(k)?;
            out.push((a, plain(Variant::Ring)));
            out.push((b, plain(Variant::Ring)));
        }
        Variant::I => {
            if k.is_multiple_of(2) {
                return Err(Error::Parameter(format!("I-matchings have odd size, got {k}")));
            }
            let base: Matching = "1-2".parse().expect("valid");
            out.extend(grow_by_blocks(vec![base], (k - 1) / 2).into_iter().map(|m| (m, plain(Variant::I))));
        }
        Variant::L => {
            if k >= 2 {
                let (a, b) = rings(2 + k % 2)?;
                out.extend(
                    grow_by_blocks(vec![a, b], (k - 2 - k % 2) / 2)
                        .into_iter()
                        .map(|m| (m, plain(Variant::L))),
                );
            }
        }
        Variant::DB => {
            db_strip(k, &PositionSequence::all(l.saturating_sub(2))[0], 1)?;
            for chi in PositionSequence::all(l.saturating_sub(2)) {
                for z in 1..=2 * k as Label {
                    out.push((make_db(k, &chi, z)?, FamilySpec::strip(Variant::DB, k, None, &chi, z)));
                }
            }
        }
        Variant::DBD => {
            let len = if k >= 5 { l - 3 } else { 0 };
            dbd_strip(k, &PositionSequence::all(len)[0], 1)?;
            for chi in PositionSequence::all(len) {
                for z in 1..=2 * k as Label {
                    out.push((make_dbd(k, &chi, z)?, FamilySpec::strip(Variant::DBD, k, None, &chi, z)));
                }
            }
        }
        Variant::DBDL => {
            let len = if k >= 5 { l - 3 } else { 0 };
            dbd_strip(k, &PositionSequence::all(len)[0], 1)?;
            for chi in PositionSequence::all(len) {
                for j in 1..l {
                    for z in 1..=2 * k as Label {
                        out.push((
                            make_dbdl(k, j, &chi, z)?,
                            FamilySpec::strip(Variant::DBDL, k, Some(j), &chi, z),
                        ));
                    }
                }
            }
        }
        Variant::EDB | Variant::EDBL1 | Variant::EDBL2 => {
            let len = if k >= 6 { l - 3 } else { 0 };
            edb_strip(k, 1, &PositionSequence::all(len)[0], 1)?;
            let make = match variant {
                Variant::EDB => make_edb,
                Variant::EDBL1 => make_edbl1,
                _ => make_edbl2,
            };
            for chi in PositionSequence::all(len) {
                for j in 1..l {
                    for z in 1..=2 * k as Label {
                        out.push((make(k, j, &chi, z)?, FamilySpec::strip(variant, k, Some(j), &chi, z)));
                    }
                }
            }
        }
    }
    // Stable sort keeps the first parameter set for each matching.
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out.dedup_by(|a, b| a.0 == b.0);
    Ok(out)
}

/// Classification of a matching by special family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Class {
    #[serde(rename = "Isolated-I")]
    IsolatedI,
    #[serde(rename = "Pair-DB")]
    PairDB,
    #[serde(rename = "Medium-DBD")]
    MediumDBD,
    #[serde(rename = "Medium-DBDL")]
    MediumDBDL,
    #[serde(rename = "Medium-EDB")]
    MediumEDB,
    #[serde(rename = "Medium-EDBL")]
    MediumEDBL,
    Regular,
}

impl Class {
    pub fn name(self) -> &'static str {
        match self {
            Class::IsolatedI => "Isolated-I",
            Class::PairDB => "Pair-DB",
            Class::MediumDBD => "Medium-DBD",
            Class::MediumDBDL => "Medium-DBDL",
            Class::MediumEDB => "Medium-EDB",
            Class::MediumEDBL => "Medium-EDBL",
            Class::Regular => "Regular",
        }
    }
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub class: Class,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<FamilySpec>,
}

/// Generated special families of one size, for membership tests.
pub struct FamilyIndex {
    k: usize,
    members: HashMap<Matching, (Class, FamilySpec)>,
}

impl FamilyIndex {
    pub fn new(k: usize) -> FamilyIndex {
        let mut members = HashMap::new();
        let variants: &[(Variant, Class)] = if k % 2 == 1 {
            &[
                (Variant::DBD, Class::MediumDBD),
                (Variant::DBDL, Class::MediumDBDL),
            ]
        } else {
            &[
                (Variant::DB, Class::PairDB),
                (Variant::EDB, Class::MediumEDB),
                (Variant::EDBL1, Class::MediumEDBL),
                (Variant::EDBL2, Class::MediumEDBL),
            ]
        };
        for &(v, c) in variants {
            if let Ok(list) = generate_with_specs(v, k) {
                for (m, spec) in list {
                    members.entry(m).or_insert((c, spec));
                }
            }
        }
        FamilyIndex { k, members }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn classify(&self, m: &Matching) -> Result<Classification> {
        if m.k() != self.k {
            return Err(Error::SizeMismatch(m.k(), self.k));
        }
        if is_i(m) {
            return Ok(Classification {
                class: Class::IsolatedI,
                witness: None,
            });
        }
        Ok(match self.members.get(m) {
            Some((c, spec)) => Classification {
                class: *c,
                witness: Some(spec.clone()),
            },
            None => Classification {
                class: Class::Regular,
                witness: None,
            },
        })
    }
}

/// Classifies a single matching, generating the families of its size.
pub fn classify(m: &Matching) -> Classification {
    FamilyIndex::new(m.k())
        .classify(m)
        .expect("index built for the matching's own size")
}
