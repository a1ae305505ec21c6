//! Explicit constructions of rigid relations.
//!
//! The carriers are finite stand-ins for sets of reals: a point is a
//! fixed-length binary string naming a basic clopen neighborhood of Cantor
//! space, and prefix predicates play the role of the neighborhood structure.
//! Each construction wires a designated spine (a looped apex `z*` plus a
//! chain `z_0, z_1, ...`) so that every spine vertex is definable from the
//! relation alone, then lets the prefixes (or the ambient order) separate
//! everything else. Under the stated preconditions the output is rigid;
//! the test suites certify this with the search kernels.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::search::HereditaryVerdict;
use crate::{Error, Permutation, Relation};

/// A fixed-length binary string: one point of the carrier, standing for a
/// basic clopen neighborhood (equivalently, a distinct dyadic real).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CantorPoint {
    bits: String,
}

impl CantorPoint {
    /// Accepts a non-empty string over `{'0','1'}`.
    pub fn new(bits: impl Into<String>) -> Result<Self, Error> {
        let bits = bits.into();
        if bits.is_empty() || !bits.bytes().all(|b| b == b'0' || b == b'1') {
            return Err(Error::InvalidPoint { bits });
        }
        Ok(CantorPoint { bits })
    }

    pub fn bits(&self) -> &str {
        &self.bits
    }

    pub fn bit_len(&self) -> usize {
        self.bits.len()
    }

    /// Prefix predicate: does this point extend `s`? (`U_s` membership.)
    pub fn has_prefix(&self, s: &str) -> bool {
        self.bits.starts_with(s)
    }
}

impl FromStr for CantorPoint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        CantorPoint::new(s)
    }
}

impl fmt::Display for CantorPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.bits)
    }
}

/// One entry of the canonical enumeration of finite binary strings:
/// all strings ordered by length, then lexicographically, starting from
/// the empty string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixCode {
    pub index: usize,
    pub bits: String,
}

/// The `index`-th finite binary string in canonical order:
/// ε, 0, 1, 00, 01, 10, 11, 000, ...
pub fn prefix_string(index: usize) -> String {
    let len = (index + 1).ilog2() as usize;
    let offset = index + 1 - (1usize << len);
    (0..len)
        .map(|b| {
            if offset >> (len - 1 - b) & 1 == 1 {
                '1'
            } else {
                '0'
            }
        })
        .collect()
}

/// The first `count` strings of the canonical enumeration.
pub fn prefix_enumeration(count: usize) -> Vec<PrefixCode> {
    (0..count)
        .map(|index| PrefixCode {
            index,
            bits: prefix_string(index),
        })
        .collect()
}

fn validate_point_set<'a>(points: impl Iterator<Item = &'a CantorPoint>) -> Result<(), Error> {
    let mut expected = None;
    let mut seen = BTreeSet::new();
    for point in points {
        match expected {
            None => expected = Some(point.bit_len()),
            Some(len) if len != point.bit_len() => {
                return Err(Error::MixedPointLengths {
                    found: point.bits().to_owned(),
                    expected: len,
                })
            }
            Some(_) => {}
        }
        if !seen.insert(point.bits()) {
            return Err(Error::DuplicatePoint {
                bits: point.bits().to_owned(),
            });
        }
    }
    Ok(())
}

/// True when every pair of distinct points is told apart by some prefix
/// `s_n` with `n <= max_index`: one point extends it, the other does not.
///
/// The input must be a set of distinct, equal-length points.
pub fn separation_check(points: &[CantorPoint], max_index: usize) -> Result<bool, Error> {
    validate_point_set(points.iter())?;
    let prefixes: Vec<String> = (0..=max_index).map(prefix_string).collect();
    for (i, a) in points.iter().enumerate() {
        for b in &points[i + 1..] {
            if !prefixes.iter().any(|s| a.has_prefix(s) != b.has_prefix(s)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The least `k` for which [`separation_check`] succeeds: the minimal
/// sufficient prefix budget. Zero when fewer than two points are given.
///
/// Points are limited to 62 bits; beyond that the prefix indices do not
/// fit in the enumeration arithmetic.
pub fn minimal_separating_index(points: &[CantorPoint]) -> Result<usize, Error> {
    validate_point_set(points.iter())?;
    if let Some(p) = points.first() {
        if p.bit_len() > 62 {
            return Err(Error::BoundExceeded {
                what: "prefix index computation",
                n: p.bit_len(),
                bound: 62,
            });
        }
    }
    let mut needed = 0usize;
    for (i, a) in points.iter().enumerate() {
        for b in &points[i + 1..] {
            // first differing bit position d: the shortest separating
            // prefix is the (d+1)-bit prefix ending in 0, whose canonical
            // index is 2^(d+1) - 1 + value(prefix)
            let d = a
                .bits()
                .bytes()
                .zip(b.bits().bytes())
                .position(|(x, y)| x != y)
                .expect("points are distinct and equal-length");
            let low = if a.bits().as_bytes()[d] == b'0' { a } else { b };
            let value = low.bits()[..=d]
                .bytes()
                .fold(0usize, |acc, bit| acc << 1 | usize::from(bit == b'1'));
            needed = needed.max((1 << (d + 1)) - 1 + value);
        }
    }
    Ok(needed)
}

/// Designates the spine inside a carrier: the looped apex `z*` and the
/// chain `z_0, z_1, ...`, all given as indices into the carrier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpineDesignation {
    z_star: usize,
    chain: Vec<usize>,
}

impl SpineDesignation {
    /// Members must be pairwise distinct; index ranges are checked against
    /// the carrier by each construction.
    pub fn new(z_star: usize, chain: Vec<usize>) -> Result<Self, Error> {
        let mut seen = BTreeSet::new();
        for &index in std::iter::once(&z_star).chain(&chain) {
            if !seen.insert(index) {
                return Err(Error::SpineDuplicate { index });
            }
        }
        Ok(SpineDesignation { z_star, chain })
    }

    pub fn z_star(&self) -> usize {
        self.z_star
    }

    pub fn chain(&self) -> &[usize] {
        &self.chain
    }

    pub fn contains(&self, index: usize) -> bool {
        self.z_star == index || self.chain.contains(&index)
    }

    fn check_range(&self, len: usize) -> Result<(), Error> {
        for &index in std::iter::once(&self.z_star).chain(&self.chain) {
            if index >= len {
                return Err(Error::SpineIndexOutOfRange { index, len });
            }
        }
        Ok(())
    }
}

/// The strict linear order on `0..n`: edges `(i, j)` for `i < j`.
/// Irreflexive and hereditarily rigid; also strongly rigid at every finite
/// size (any order-preserving self-map of a finite chain is the identity —
/// infinite chains, by contrast, always admit shifts).
pub fn rigid_linear_order(n: usize) -> Relation {
    let edges = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    Relation::from_set(n, edges)
}

/// Alias of [`rigid_linear_order`] in its role as the canonical
/// hereditarily rigid irreflexive base for the product constructions.
pub fn ordinal_relation(gamma: usize) -> Relation {
    rigid_linear_order(gamma)
}

/// Relabels `r` along a bijection; rigidity status (indeed the full
/// automorphism count) is preserved.
pub fn transfer_relation(r: &Relation, bijection: &Permutation) -> Result<Relation, Error> {
    r.relabel(bijection)
}

fn check_separation(outside: &[&CantorPoint], wired_prefixes: usize) -> Result<(), Error> {
    let prefixes: Vec<String> = (0..wired_prefixes).map(prefix_string).collect();
    for (i, a) in outside.iter().enumerate() {
        for b in &outside[i + 1..] {
            if !prefixes.iter().any(|s| a.has_prefix(s) != b.has_prefix(s)) {
                return Err(Error::SeparationFailure {
                    first: a.bits().to_owned(),
                    second: b.bits().to_owned(),
                    wired: wired_prefixes,
                });
            }
        }
    }
    Ok(())
}

fn spine_edges(spine: &SpineDesignation, edges: &mut BTreeSet<(usize, usize)>) {
    edges.insert((spine.z_star, spine.z_star));
    for (i, &z) in spine.chain.iter().enumerate() {
        edges.insert((z, spine.z_star));
        if let Some(&next) = spine.chain.get(i + 1) {
            edges.insert((z, next));
        }
    }
}

fn build_cantor(points: &[CantorPoint], spine: &SpineDesignation) -> Relation {
    let mut edges = BTreeSet::new();
    spine_edges(spine, &mut edges);
    for (i, &z) in spine.chain.iter().enumerate() {
        let s = prefix_string(i);
        for (j, point) in points.iter().enumerate() {
            if !spine.contains(j) && point.has_prefix(&s) {
                edges.insert((z, j));
            }
        }
    }
    Relation::from_set(points.len(), edges)
}

/// Builds the rigid relation on a carrier of distinct points with a
/// designated spine. Vertex `i` of the result is `points[i]`.
///
/// Edges: a loop at `z*`; `z_n -> z*` for every chain member; chain links
/// `z_n -> z_{n+1}`; and `z_n -> y` for `y` outside the spine exactly when
/// the `n`-th canonical prefix is a prefix of `y`. Nothing else.
///
/// Every pair of points outside the spine must be separated by one of the
/// prefixes the chain wires up (`s_0 .. s_{chain_len - 1}`); otherwise the
/// two points could be swapped and the output would not be rigid.
pub fn cantor_relation(
    points: &[CantorPoint],
    spine: &SpineDesignation,
) -> Result<Relation, Error> {
    validate_point_set(points.iter())?;
    spine.check_range(points.len())?;
    let outside: Vec<&CantorPoint> = points
        .iter()
        .enumerate()
        .filter(|(j, _)| !spine.contains(*j))
        .map(|(_, p)| p)
        .collect();
    check_separation(&outside, spine.chain.len())?;
    Ok(build_cantor(points, spine))
}

/// [`cantor_relation`] without the separation precondition, for negative
/// controls. Carrier and spine are still validated structurally.
pub fn cantor_relation_unchecked(
    points: &[CantorPoint],
    spine: &SpineDesignation,
) -> Result<Relation, Error> {
    validate_point_set(points.iter())?;
    spine.check_range(points.len())?;
    Ok(build_cantor(points, spine))
}

/// A carrier element of the product constructions: a point paired with a
/// label into a base relation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LabeledPair {
    pub point: CantorPoint,
    pub label: usize,
}

impl LabeledPair {
    pub fn new(point: CantorPoint, label: usize) -> Self {
        LabeledPair { point, label }
    }
}

fn validate_pairs(pairs: &[LabeledPair], base: &Relation) -> Result<(), Error> {
    let mut expected = None;
    let mut seen = BTreeSet::new();
    for pair in pairs {
        match expected {
            None => expected = Some(pair.point.bit_len()),
            Some(len) if len != pair.point.bit_len() => {
                return Err(Error::MixedPointLengths {
                    found: pair.point.bits().to_owned(),
                    expected: len,
                })
            }
            Some(_) => {}
        }
        if pair.label >= base.n() {
            return Err(Error::VertexOutOfRange {
                vertex: pair.label,
                n: base.n(),
            });
        }
        if !seen.insert((pair.point.bits(), pair.label)) {
            return Err(Error::DuplicatePair {
                bits: pair.point.bits().to_owned(),
                label: pair.label,
            });
        }
    }
    Ok(())
}

/// Checks the hypothesis both product constructions place on their base:
/// irreflexive and hereditarily rigid.
fn check_base_hypothesis(base: &Relation) -> Result<(), Error> {
    if let Some(vertex) = base.loop_vertex() {
        return Err(Error::BaseNotIrreflexive { vertex });
    }
    // bound gate as in is_hereditarily_rigid; oversized bases are refused
    crate::search::is_hereditarily_rigid(base).map(|verdict| match verdict {
        HereditaryVerdict::HereditarilyRigid => Ok(()),
        HereditaryVerdict::NotHereditarilyRigid { subset, .. } => {
            Err(Error::BaseNotHereditarilyRigid { subset })
        }
    })?
}

fn build_product_main(
    pairs: &[LabeledPair],
    base: &Relation,
    spine: &SpineDesignation,
) -> Relation {
    let mut edges = BTreeSet::new();
    spine_edges(spine, &mut edges);
    let outside: Vec<usize> = (0..pairs.len()).filter(|&j| !spine.contains(j)).collect();
    for (i, &z) in spine.chain.iter().enumerate() {
        let s = prefix_string(i);
        for &j in &outside {
            if pairs[j].point.has_prefix(&s) {
                edges.insert((z, j));
            }
        }
    }
    for &j in &outside {
        for &k in &outside {
            if base.has_edge(pairs[j].label, pairs[k].label) {
                edges.insert((j, k));
            }
        }
    }
    Relation::from_set(pairs.len(), edges)
}

/// Builds the rigid relation on a carrier of (point, label) pairs over an
/// irreflexive, hereditarily rigid base. Vertex `i` is `pairs[i]`.
///
/// Spine wiring as in [`cantor_relation`]; `z_n -> (x, b)` for pairs outside
/// the spine exactly when `s_n` is a prefix of `x`; and `(x, b) -> (y, c)`
/// between outside pairs exactly when `(b, c)` is a base edge.
///
/// The prefixes must separate the distinct first coordinates of the outside
/// pairs; pairs sharing a point are told apart by the base acting on their
/// label slice, which is rigid because the base is hereditarily rigid.
pub fn product_relation_main(
    pairs: &[LabeledPair],
    base: &Relation,
    spine: &SpineDesignation,
) -> Result<Relation, Error> {
    validate_pairs(pairs, base)?;
    spine.check_range(pairs.len())?;
    check_base_hypothesis(base)?;
    let outside: Vec<&CantorPoint> = {
        let mut firsts = BTreeMap::new();
        for (j, pair) in pairs.iter().enumerate() {
            if !spine.contains(j) {
                firsts.entry(pair.point.bits()).or_insert(&pair.point);
            }
        }
        firsts.into_values().collect()
    };
    check_separation(&outside, spine.chain.len())?;
    Ok(build_product_main(pairs, base, spine))
}

/// [`product_relation_main`] without the base hypothesis and separation
/// checks, for negative controls.
pub fn product_relation_main_unchecked(
    pairs: &[LabeledPair],
    base: &Relation,
    spine: &SpineDesignation,
) -> Result<Relation, Error> {
    validate_pairs(pairs, base)?;
    spine.check_range(pairs.len())?;
    Ok(build_product_main(pairs, base, spine))
}

fn build_product_lex(pairs: &[LabeledPair], base: &Relation) -> Relation {
    let mut edges = BTreeSet::new();
    for (j, a) in pairs.iter().enumerate() {
        for (k, b) in pairs.iter().enumerate() {
            let related = match a.point.bits().cmp(b.point.bits()) {
                std::cmp::Ordering::Less => true,
                std::cmp::Ordering::Equal => base.has_edge(a.label, b.label),
                std::cmp::Ordering::Greater => false,
            };
            if related {
                edges.insert((j, k));
            }
        }
    }
    Relation::from_set(pairs.len(), edges)
}

/// Builds the rigid relation on (point, label) pairs ordered like the
/// reals: `(x, b) -> (y, c)` when `x < y` as equal-length binary strings
/// (dyadic order), or `x = y` and `(b, c)` is a base edge. No spine is
/// needed — a nontrivial permutation would have to strictly ascend the
/// first coordinates around a finite orbit, which is impossible, so it
/// must act on a label slice, where the hereditarily rigid base wins.
pub fn product_relation_lex(pairs: &[LabeledPair], base: &Relation) -> Result<Relation, Error> {
    validate_pairs(pairs, base)?;
    check_base_hypothesis(base)?;
    Ok(build_product_lex(pairs, base))
}

/// [`product_relation_lex`] without the base hypothesis check, for
/// negative controls.
pub fn product_relation_lex_unchecked(
    pairs: &[LabeledPair],
    base: &Relation,
) -> Result<Relation, Error> {
    validate_pairs(pairs, base)?;
    Ok(build_product_lex(pairs, base))
}
