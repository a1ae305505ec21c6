//! Finitely supported relations on a set of atoms.
//!
//! A relation on `N` atoms is *supported* by a set `E` when every
//! permutation of the atoms fixing `E` pointwise maps the edge set onto
//! itself. Such a relation can never be rigid once two atoms lie outside
//! `E`: the transposition of two outside atoms is a nontrivial
//! automorphism. [`verify_lemma`] confirms this exhaustively — every
//! `E`-symmetric relation is a union of pair orbits under `fix(E)`, and
//! all unions are enumerated and checked.
//!
//! Transpositions of atoms outside `E` generate `fix(E)`, so every
//! symmetry check here quantifies over transpositions only; that keeps the
//! checks polynomial instead of `(N - |E|)!`.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;

use crate::{Error, Permutation, Relation};

/// Default atom bound for [`least_support`] (exhaustive over subsets).
pub const DEFAULT_SUPPORT_SEARCH_BOUND: usize = 8;
/// Default atom bound for [`verify_lemma`].
pub const DEFAULT_LEMMA_BOUND: usize = 6;

/// Hard representation cap: the lemma sweep packs the `N x N` pair grid
/// into one 64-bit word.
const LEMMA_REPRESENTATION_LIMIT: usize = 8;

/// Describes a permutation group on the atoms: either all permutations or
/// the subgroup fixing a set pointwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupDescription {
    /// Every permutation of the atoms.
    Full,
    /// `fix(E)`: permutations with `pi(a) = a` for all `a` in `E`.
    Fix(BTreeSet<usize>),
}

impl GroupDescription {
    /// The pointwise-fixed set (empty for the full group).
    pub fn fixed_set(&self) -> BTreeSet<usize> {
        match self {
            GroupDescription::Full => BTreeSet::new(),
            GroupDescription::Fix(set) => set.clone(),
        }
    }

    /// The transpositions of atoms this group moves; they generate it.
    pub fn generator_transpositions(&self, atoms: usize) -> Vec<(usize, usize)> {
        let fixed = self.fixed_set();
        let movable: Vec<usize> = (0..atoms).filter(|a| !fixed.contains(a)).collect();
        let mut out = Vec::new();
        for (i, &a) in movable.iter().enumerate() {
            for &b in &movable[i + 1..] {
                out.push((a, b));
            }
        }
        out
    }
}

fn check_support_range(atoms: usize, support: &BTreeSet<usize>) -> Result<(), Error> {
    if let Some(&atom) = support.iter().find(|&&a| a >= atoms) {
        return Err(Error::SupportOutOfRange { atom, atoms });
    }
    Ok(())
}

fn transposed_pair(pair: (usize, usize), a: usize, b: usize) -> (usize, usize) {
    let swap = |v| {
        if v == a {
            b
        } else if v == b {
            a
        } else {
            v
        }
    };
    (swap(pair.0), swap(pair.1))
}

/// Finds a transposition of two atoms outside `support` that moves an edge
/// off the edge set, if one exists. `None` means the edges are
/// `E`-symmetric.
fn symmetry_breaker(
    relation: &Relation,
    support: &BTreeSet<usize>,
) -> Option<(usize, usize, usize, usize)> {
    let group = GroupDescription::Fix(support.clone());
    for (a, b) in group.generator_transpositions(relation.n()) {
        for (u, v) in relation.edges() {
            let (tu, tv) = transposed_pair((u, v), a, b);
            if !relation.has_edge(tu, tv) {
                return Some((a, b, u, v));
            }
        }
    }
    None
}

/// True when every transposition of two atoms outside `support` maps the
/// edge set onto itself; equivalently, every permutation in `fix(E)` is an
/// automorphism.
pub fn is_e_symmetric(relation: &Relation, support: &BTreeSet<usize>) -> Result<bool, Error> {
    check_support_range(relation.n(), support)?;
    Ok(symmetry_breaker(relation, support).is_none())
}

/// A relation on atoms together with a declared support, validated at
/// construction: `fix(support)` really does act by automorphisms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportedRelation {
    relation: Relation,
    support: BTreeSet<usize>,
}

impl SupportedRelation {
    pub fn new(relation: Relation, support: BTreeSet<usize>) -> Result<Self, Error> {
        check_support_range(relation.n(), &support)?;
        if let Some((a, b, u, v)) = symmetry_breaker(&relation, &support) {
            return Err(Error::NotSupported { a, b, u, v });
        }
        Ok(SupportedRelation { relation, support })
    }

    pub fn relation(&self) -> &Relation {
        &self.relation
    }

    pub fn support(&self) -> &BTreeSet<usize> {
        &self.support
    }

    pub fn atoms(&self) -> usize {
        self.relation.n()
    }
}

/// One orbit of the `fix(E)` action on ordered pairs of atoms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairOrbit {
    pairs: Vec<(usize, usize)>,
}

impl PairOrbit {
    /// Members in sorted order.
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// Partitions the ordered pairs over `0..atoms` into orbits under
/// `fix(support)`. A relation is `E`-symmetric exactly when its edge set
/// is a union of these orbits. Orbits are sorted by their least pair.
pub fn orbit_classes(atoms: usize, support: &BTreeSet<usize>) -> Result<Vec<PairOrbit>, Error> {
    check_support_range(atoms, support)?;
    let group = GroupDescription::Fix(support.clone());
    let generators = group.generator_transpositions(atoms);
    let mut seen = BTreeSet::new();
    let mut orbits = Vec::new();
    for u in 0..atoms {
        for v in 0..atoms {
            if seen.contains(&(u, v)) {
                continue;
            }
            // closure of (u, v) under the generators
            let mut orbit = BTreeSet::from([(u, v)]);
            let mut frontier = vec![(u, v)];
            while let Some(pair) = frontier.pop() {
                for &(a, b) in &generators {
                    let next = transposed_pair(pair, a, b);
                    if orbit.insert(next) {
                        frontier.push(next);
                    }
                }
            }
            seen.extend(orbit.iter().copied());
            orbits.push(PairOrbit {
                pairs: orbit.into_iter().collect(),
            });
        }
    }
    Ok(orbits)
}

/// Subsets of `0..n` of a given size, in lexicographic order of their
/// sorted element lists.
fn combinations(n: usize, size: usize) -> Vec<Vec<usize>> {
    fn extend(n: usize, size: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == size {
            out.push(prefix.clone());
            return;
        }
        let start = prefix.last().map_or(0, |&last| last + 1);
        for next in start..n {
            prefix.push(next);
            extend(n, size, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    extend(n, size, &mut Vec::new(), &mut out);
    out
}

/// The smallest support of an edge set: minimal in size, and
/// lexicographically least among the minimum-size candidates. Inclusion
/// minimality follows, since any proper subset of the answer is smaller
/// and was tried first. Always exists — the full atom set leaves nothing
/// to transpose.
pub fn least_support(relation: &Relation) -> Result<BTreeSet<usize>, Error> {
    least_support_with_bound(relation, DEFAULT_SUPPORT_SEARCH_BOUND)
}

pub fn least_support_with_bound(
    relation: &Relation,
    bound: usize,
) -> Result<BTreeSet<usize>, Error> {
    let atoms = relation.n();
    if atoms > bound {
        return Err(Error::BoundExceeded {
            what: "least-support search",
            n: atoms,
            bound,
        });
    }
    for size in 0..=atoms {
        for candidate in combinations(atoms, size) {
            let support: BTreeSet<usize> = candidate.into_iter().collect();
            if symmetry_breaker(relation, &support).is_none() {
                return Ok(support);
            }
        }
    }
    unreachable!("the full atom set always supports")
}

/// The canonical nontrivial automorphism of a supported relation: the
/// transposition of the two least atoms outside the support. Fails only
/// when fewer than two atoms lie outside.
pub fn nonrigidity_witness(rel: &SupportedRelation) -> Result<Permutation, Error> {
    let outside: Vec<usize> = (0..rel.atoms())
        .filter(|a| !rel.support().contains(a))
        .take(2)
        .collect();
    if outside.len() < 2 {
        return Err(Error::TooFewAtomsOutsideSupport {
            outside: rel.atoms() - rel.support().len(),
        });
    }
    let witness = Permutation::transposition(rel.atoms(), outside[0], outside[1])?;
    // guaranteed by E-symmetry; a failure here would be a library bug
    assert!(
        rel.relation()
            .is_automorphism(&witness)
            .expect("witness has the right size"),
        "supported relation not preserved by its outside transposition"
    );
    assert!(!witness.is_identity());
    Ok(witness)
}

/// One support's slice of a [`LemmaReport`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportLine {
    pub support: Vec<usize>,
    pub orbit_count: usize,
    pub relations_checked: u64,
}

/// A relation that the sweep failed to certify non-rigid. Mathematically
/// impossible; recorded so the report stays honest if it ever happens.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaFailure {
    pub support: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

/// Outcome of [`verify_lemma`]: per-support counts and any failures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaReport {
    pub atoms: usize,
    pub max_support: usize,
    pub lines: Vec<SupportLine>,
    pub total_checked: u64,
    pub failures: Vec<LemmaFailure>,
}

impl LemmaReport {
    pub fn all_nonrigid(&self) -> bool {
        self.failures.is_empty()
    }

    /// False when no support with two atoms to spare exists (atoms < 2):
    /// the sweep is vacuous.
    pub fn applicable(&self) -> bool {
        !self.lines.is_empty()
    }

    pub fn line_for(&self, support: &[usize]) -> Option<&SupportLine> {
        self.lines.iter().find(|line| line.support == support)
    }
}

impl fmt::Display for LemmaReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.applicable() {
            return writeln!(
                f,
                "not applicable: no support of size <= {} leaves two of {} atoms free to swap",
                self.max_support, self.atoms
            );
        }
        for line in &self.lines {
            writeln!(
                f,
                "E={{{}}}: {} orbits, {} relations checked",
                line.support
                    .iter()
                    .map(|a| a.to_string())
                    .collect::<Vec<_>>()
                    .join(" "),
                line.orbit_count,
                line.relations_checked
            )?;
        }
        if self.all_nonrigid() {
            writeln!(
                f,
                "checked {} E-symmetric relations across {} supports: ALL NON-RIGID",
                self.total_checked,
                self.lines.len()
            )
        } else {
            writeln!(
                f,
                "checked {} relations: {} FAILURES",
                self.total_checked,
                self.failures.len()
            )
        }
    }
}

/// Exhaustively confirms that no `E`-symmetric relation is rigid, over
/// every support of size at most `max_support` (clamped to `atoms - 2`,
/// the largest size that leaves two atoms to swap) and every union of
/// pair orbits for that support.
///
/// For each relation the check is the content of [`nonrigidity_witness`]:
/// the transposition of the two least outside atoms maps the edge set onto
/// itself and is not the identity.
pub fn verify_lemma(atoms: usize, max_support: usize) -> Result<LemmaReport, Error> {
    verify_lemma_with_bound(atoms, max_support, DEFAULT_LEMMA_BOUND)
}

pub fn verify_lemma_with_bound(
    atoms: usize,
    max_support: usize,
    bound: usize,
) -> Result<LemmaReport, Error> {
    let bound = bound.min(LEMMA_REPRESENTATION_LIMIT);
    if atoms > bound {
        return Err(Error::BoundExceeded {
            what: "support lemma sweep",
            n: atoms,
            bound,
        });
    }
    let mut lines = Vec::new();
    let mut failures = Vec::new();
    let mut total = 0u64;
    let effective_max = max_support.min(atoms.saturating_sub(2));
    if atoms >= 2 {
        for size in 0..=effective_max {
            for support_vec in combinations(atoms, size) {
                let support: BTreeSet<usize> = support_vec.iter().copied().collect();
                let orbits = orbit_classes(atoms, &support)?;
                let (checked, mut support_failures) =
                    sweep_support(atoms, &support, &orbits);
                total += checked;
                failures.append(&mut support_failures);
                lines.push(SupportLine {
                    support: support_vec,
                    orbit_count: orbits.len(),
                    relations_checked: checked,
                });
            }
        }
    }
    Ok(LemmaReport {
        atoms,
        max_support,
        lines,
        total_checked: total,
        failures,
    })
}

/// Checks every union of the given orbits. Relations are packed as bit
/// masks over the pair grid (`pair (u, v)` at bit `u * atoms + v`) and the
/// unions are walked in Gray-code order, so each step flips one orbit.
/// A sparse sample of the unions is additionally routed through the public
/// [`SupportedRelation`] + [`nonrigidity_witness`] path to tie the packed
/// sweep to the library contract.
fn sweep_support(
    atoms: usize,
    support: &BTreeSet<usize>,
    orbits: &[PairOrbit],
) -> (u64, Vec<LemmaFailure>) {
    let slot = |u: usize, v: usize| u * atoms + v;
    let orbit_masks: Vec<u64> = orbits
        .iter()
        .map(|orbit| {
            orbit
                .pairs()
                .iter()
                .fold(0u64, |mask, &(u, v)| mask | 1 << slot(u, v))
        })
        .collect();
    let outside: Vec<usize> = (0..atoms).filter(|a| !support.contains(a)).collect();
    let (a, b) = (outside[0], outside[1]);
    // slot pairs swapped by the witness transposition, each 2-cycle once
    let swaps: Vec<(u32, u32)> = (0..atoms)
        .flat_map(|u| (0..atoms).map(move |v| (u, v)))
        .filter_map(|(u, v)| {
            let (tu, tv) = transposed_pair((u, v), a, b);
            ((tu, tv) > (u, v)).then_some((slot(u, v) as u32, slot(tu, tv) as u32))
        })
        .collect();

    let k = orbits.len();
    let unions: u64 = 1 << k;
    // sample stride for the public-path cross-check
    let stride = (unions >> 10).max(1);

    let chunk_bits = 16.min(k);
    let chunks: u64 = 1 << (k - chunk_bits);
    let per_chunk: u64 = 1 << chunk_bits;

    let failures: Vec<LemmaFailure> = (0..chunks)
        .into_par_iter()
        .flat_map_iter(|chunk| {
            let mut found = Vec::new();
            let base_index = chunk * per_chunk;
            // mask for the Gray code of the chunk's first index
            let gray = base_index ^ (base_index >> 1);
            let mut mask = (0..k)
                .filter(|&o| gray >> o & 1 == 1)
                .fold(0u64, |m, o| m ^ orbit_masks[o]);
            for step in 0..per_chunk {
                let index = base_index + step;
                if step > 0 {
                    // Gray codes of consecutive indices differ in the bit
                    // at the position of the lowest set bit of the index
                    mask ^= orbit_masks[index.trailing_zeros() as usize];
                }
                let mut moved = 0u64;
                for &(i, j) in &swaps {
                    moved |= (mask >> i ^ mask >> j) & 1;
                }
                let symmetric_under_witness = moved == 0;
                if index.is_multiple_of(stride) {
                    cross_check_public_path(atoms, support, mask, &mut found);
                }
                if !symmetric_under_witness {
                    found.push(LemmaFailure {
                        support: support.iter().copied().collect(),
                        edges: unpack_mask(atoms, mask),
                    });
                }
            }
            found
        })
        .collect();

    (unions, failures)
}

fn unpack_mask(atoms: usize, mask: u64) -> Vec<(usize, usize)> {
    (0..atoms)
        .flat_map(|u| (0..atoms).map(move |v| (u, v)))
        .filter(|&(u, v)| mask >> (u * atoms + v) & 1 == 1)
        .collect()
}

/// Runs one packed relation through the public construction and witness
/// path; disagreements are recorded as failures.
fn cross_check_public_path(
    atoms: usize,
    support: &BTreeSet<usize>,
    mask: u64,
    found: &mut Vec<LemmaFailure>,
) {
    let edges = unpack_mask(atoms, mask);
    let relation = Relation::new(atoms, edges.iter().copied()).expect("edges are in range");
    let ok = SupportedRelation::new(relation, support.clone())
        .and_then(|sr| nonrigidity_witness(&sr))
        .is_ok();
    if !ok {
        found.push(LemmaFailure {
            support: support.iter().copied().collect(),
            edges,
        });
    }
}
