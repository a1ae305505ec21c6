//! Exhaustive census of small labeled digraphs (loops allowed) by
//! rigidity type.
//!
//! Labeled enumeration is the ground truth: every edge set over `0..n` is
//! classified by the search kernels. Isomorph rejection is an optimization
//! behind the same counts — one canonical representative per isomorphism
//! class is classified and weighted by its class size `n! / |Aut|` — and
//! the labeled counts are its oracle. All properties counted here are
//! isomorphism-invariant, so the two methods must agree exactly.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::search::{
    hereditary_unbounded, rigidity_unbounded, strong_rigidity_unbounded,
};
use crate::{Error, Relation};

/// Largest `n` for full labeled enumeration (2^(n^2) relations).
pub const LABELED_CENSUS_BOUND: usize = 4;
/// Largest `n` with isomorph rejection enabled.
pub const CLASS_CENSUS_BOUND: usize = 5;
/// Largest `n` for [`smallest_strongly_rigid_examples`].
pub const STRONG_EXAMPLES_BOUND: usize = 5;
/// Largest `n` for [`rigid_not_hereditary_examples`].
pub const HEREDITARY_EXAMPLES_BOUND: usize = 4;

/// One row of the census table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusRow {
    pub n: usize,
    pub total: u64,
    pub rigid: u64,
    pub strongly_rigid: u64,
    pub hereditarily_rigid: u64,
    pub irreflexive_hereditarily_rigid: u64,
}

impl CensusRow {
    /// Header of the stable tab-separated table format.
    pub fn tsv_header() -> &'static str {
        "n\ttotal\trigid\tstrongly_rigid\thereditarily_rigid\tirreflexive_hereditarily_rigid"
    }

    pub fn tsv_line(&self) -> String {
        format!(
            "{}\t{}\t{}\t{}\t{}\t{}",
            self.n,
            self.total,
            self.rigid,
            self.strongly_rigid,
            self.hereditarily_rigid,
            self.irreflexive_hereditarily_rigid
        )
    }
}

/// How [`census_with_method`] enumerates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CensusMethod {
    /// Classify every labeled edge set.
    Labeled,
    /// Classify one representative per isomorphism class, weighted by
    /// class size.
    IsomorphClasses,
}

#[derive(Debug, Clone, Copy, Default)]
struct Counts {
    total: u64,
    rigid: u64,
    strongly_rigid: u64,
    hereditarily_rigid: u64,
    irreflexive_hereditarily_rigid: u64,
}

impl Counts {
    fn add(mut self, other: Counts) -> Counts {
        self.total += other.total;
        self.rigid += other.rigid;
        self.strongly_rigid += other.strongly_rigid;
        self.hereditarily_rigid += other.hereditarily_rigid;
        self.irreflexive_hereditarily_rigid += other.irreflexive_hereditarily_rigid;
        self
    }

    fn into_row(self, n: usize) -> CensusRow {
        CensusRow {
            n,
            total: self.total,
            rigid: self.rigid,
            strongly_rigid: self.strongly_rigid,
            hereditarily_rigid: self.hereditarily_rigid,
            irreflexive_hereditarily_rigid: self.irreflexive_hereditarily_rigid,
        }
    }
}

fn mask_to_relation(n: usize, mask: u64) -> Relation {
    let edges = (0..n)
        .flat_map(|u| (0..n).map(move |v| (u, v)))
        .filter(|&(u, v)| mask >> (u * n + v) & 1 == 1)
        .collect();
    Relation::from_set(n, edges)
}

fn classify(r: &Relation, weight: u64) -> Counts {
    let rigid = rigidity_unbounded(r).is_rigid();
    let strongly_rigid = rigid && strong_rigidity_unbounded(r).is_strongly_rigid();
    let hereditarily_rigid = rigid && hereditary_unbounded(r).is_hereditarily_rigid();
    let irr_hered = hereditarily_rigid && r.is_irreflexive();
    Counts {
        total: weight,
        rigid: if rigid { weight } else { 0 },
        strongly_rigid: if strongly_rigid { weight } else { 0 },
        hereditarily_rigid: if hereditarily_rigid { weight } else { 0 },
        irreflexive_hereditarily_rigid: if irr_hered { weight } else { 0 },
    }
}

/// Census by full labeled enumeration or by isomorphism classes; both
/// produce identical rows.
pub fn census_with_method(n: usize, method: CensusMethod) -> Result<CensusRow, Error> {
    match method {
        CensusMethod::Labeled => {
            if n > LABELED_CENSUS_BOUND {
                return Err(Error::BoundExceeded {
                    what: "labeled census",
                    n,
                    bound: LABELED_CENSUS_BOUND,
                });
            }
            Ok(labeled_census(n))
        }
        CensusMethod::IsomorphClasses => {
            if n > CLASS_CENSUS_BOUND {
                return Err(Error::BoundExceeded {
                    what: "isomorph-class census",
                    n,
                    bound: CLASS_CENSUS_BOUND,
                });
            }
            Ok(class_census(n))
        }
    }
}

/// Census with the method picked automatically: labeled up to
/// [`LABELED_CENSUS_BOUND`], isomorph rejection up to
/// [`CLASS_CENSUS_BOUND`].
pub fn census(n: usize) -> Result<CensusRow, Error> {
    if n <= LABELED_CENSUS_BOUND {
        census_with_method(n, CensusMethod::Labeled)
    } else {
        census_with_method(n, CensusMethod::IsomorphClasses)
    }
}

/// Rows for `0..=max_n`. `method = None` picks per row as [`census`] does.
pub fn census_table(max_n: usize, method: Option<CensusMethod>) -> Result<Vec<CensusRow>, Error> {
    (0..=max_n)
        .map(|n| match method {
            Some(m) => census_with_method(n, m),
            None => census(n),
        })
        .collect()
}

fn labeled_census(n: usize) -> CensusRow {
    let total: u64 = 1 << (n * n);
    (0..total)
        .into_par_iter()
        .fold(Counts::default, |acc, mask| {
            acc.add(classify(&mask_to_relation(n, mask), 1))
        })
        .reduce(Counts::default, Counts::add)
        .into_row(n)
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// All permutations of `0..n` in lexicographic image order.
fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    fn extend(n: usize, prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for next in 0..n {
            if used[next] {
                continue;
            }
            used[next] = true;
            prefix.push(next);
            extend(n, prefix, used, out);
            prefix.pop();
            used[next] = false;
        }
    }
    let mut out = Vec::new();
    extend(n, &mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// For each permutation, where each pair slot goes: slot `(u, v)` maps to
/// slot `(sigma(u), sigma(v))`.
fn slot_tables(n: usize) -> Vec<Vec<u8>> {
    all_permutations(n)
        .iter()
        .map(|sigma| {
            (0..n * n)
                .map(|slot| {
                    let (u, v) = (slot / n, slot % n);
                    (sigma[u] * n + sigma[v]) as u8
                })
                .collect()
        })
        .collect()
}

fn remap_mask(mask: u64, table: &[u8]) -> u64 {
    let mut out = 0u64;
    let mut rest = mask;
    while rest != 0 {
        let slot = rest.trailing_zeros() as usize;
        out |= 1 << table[slot];
        rest &= rest - 1;
    }
    out
}

fn canonical_form(mask: u64, tables: &[Vec<u8>]) -> u64 {
    tables
        .iter()
        .map(|table| remap_mask(mask, table))
        .min()
        .expect("at least the identity table")
}

/// One canonical representative per isomorphism class of relations on
/// exactly `n` vertices, built by vertex augmentation: every class on
/// `k + 1` vertices restricts (by deleting the last vertex of a suitable
/// labeling) to a class on `k` vertices, so extending every representative
/// in all `2^(2k+1)` ways and canonicalizing covers everything.
fn class_representatives(n: usize) -> Vec<u64> {
    let mut reps = vec![0u64];
    for k in 0..n {
        let tables = slot_tables(k + 1);
        let patterns: u64 = 1 << (2 * k + 1);
        let locally_canonical: Vec<Vec<u64>> = reps
            .par_iter()
            .map(|&rep| {
                let mut out: Vec<u64> = (0..patterns)
                    .map(|pattern| canonical_form(extend_mask(rep, k, pattern), &tables))
                    .collect();
                out.sort_unstable();
                out.dedup();
                out
            })
            .collect();
        let merged: HashSet<u64> = locally_canonical.into_iter().flatten().collect();
        let mut next: Vec<u64> = merged.into_iter().collect();
        next.sort_unstable();
        reps = next;
    }
    reps
}

/// Re-embeds a mask over a `k x k` slot grid into the `(k+1) x (k+1)` grid
/// and wires the new vertex `k`: the low `k` bits of `pattern` are edges
/// `u -> k`, the next `k` bits are `k -> v`, the top bit is the loop.
fn extend_mask(rep: u64, k: usize, pattern: u64) -> u64 {
    let stride = k + 1;
    let mut mask = 0u64;
    let mut rest = rep;
    while rest != 0 {
        let slot = rest.trailing_zeros() as usize;
        mask |= 1 << (slot / k * stride + slot % k);
        rest &= rest - 1;
    }
    for u in 0..k {
        if pattern >> u & 1 == 1 {
            mask |= 1 << (u * stride + k);
        }
        if pattern >> (k + u) & 1 == 1 {
            mask |= 1 << (k * stride + u);
        }
    }
    if pattern >> (2 * k) & 1 == 1 {
        mask |= 1 << (k * stride + k);
    }
    mask
}

fn class_census(n: usize) -> CensusRow {
    let reps = class_representatives(n);
    let order = factorial(n);
    let counts = reps
        .par_iter()
        .fold(Counts::default, |acc, &mask| {
            let r = mask_to_relation(n, mask);
            let aut = crate::search::automorphism_count_with_bound(&r, n)
                .expect("bound equals the carrier size");
            acc.add(classify(&r, order / aut))
        })
        .reduce(Counts::default, Counts::add);
    assert_eq!(
        counts.total,
        1u64 << (n * n),
        "class sizes must tile the labeled space"
    );
    counts.into_row(n)
}

/// All strongly rigid relations on `n` labeled vertices, sorted
/// lexicographically by edge set. Nonempty for every `n >= 1`.
pub fn smallest_strongly_rigid_examples(n: usize) -> Result<Vec<Relation>, Error> {
    if n > STRONG_EXAMPLES_BOUND {
        return Err(Error::BoundExceeded {
            what: "strongly rigid enumeration",
            n,
            bound: STRONG_EXAMPLES_BOUND,
        });
    }
    if n <= 1 {
        // every self-map of at most one vertex is the identity
        let all: Vec<Relation> = (0..1u64 << (n * n))
            .map(|mask| mask_to_relation(n, mask))
            .collect();
        return Ok(all);
    }
    // a loop at `a` makes the constant map to `a` a nontrivial
    // endomorphism, so only irreflexive relations can qualify
    let off_diagonal: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (0..n).map(move |v| (u, v)))
        .filter(|&(u, v)| u != v)
        .collect();
    let slots = off_diagonal.len();
    let mut found: Vec<Relation> = (0..1u64 << slots)
        .into_par_iter()
        .filter_map(|mask| {
            let edges = off_diagonal
                .iter()
                .enumerate()
                .filter(|&(i, _)| mask >> i & 1 == 1)
                .map(|(_, &pair)| pair);
            let r = Relation::new(n, edges).expect("in range");
            strong_rigidity_unbounded(&r)
                .is_strongly_rigid()
                .then_some(r)
        })
        .collect();
    found.sort();
    Ok(found)
}

/// A rigid relation together with the least substructure that breaks
/// hereditary rigidity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RigidNotHereditaryExample {
    pub relation: Relation,
    pub subset: Vec<usize>,
    pub witness: crate::Permutation,
}

/// All relations on `n` labeled vertices that are rigid but not
/// hereditarily rigid, each with its witness subset, sorted by relation.
pub fn rigid_not_hereditary_examples(
    n: usize,
) -> Result<Vec<RigidNotHereditaryExample>, Error> {
    if n > HEREDITARY_EXAMPLES_BOUND {
        return Err(Error::BoundExceeded {
            what: "rigid-not-hereditary enumeration",
            n,
            bound: HEREDITARY_EXAMPLES_BOUND,
        });
    }
    let mut found: Vec<RigidNotHereditaryExample> = (0..1u64 << (n * n))
        .into_par_iter()
        .filter_map(|mask| {
            let r = mask_to_relation(n, mask);
            if !rigidity_unbounded(&r).is_rigid() {
                return None;
            }
            match hereditary_unbounded(&r) {
                crate::search::HereditaryVerdict::HereditarilyRigid => None,
                crate::search::HereditaryVerdict::NotHereditarilyRigid { subset, witness } => {
                    Some(RigidNotHereditaryExample {
                        relation: r,
                        subset,
                        witness,
                    })
                }
            }
        })
        .collect();
    found.sort_by(|a, b| a.relation.cmp(&b.relation));
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::automorphism_count;

    #[test]
    fn tiny_rows_by_hand() {
        // n = 0: one empty structure, vacuously everything
        assert_eq!(
            census(0).unwrap(),
            CensusRow {
                n: 0,
                total: 1,
                rigid: 1,
                strongly_rigid: 1,
                hereditarily_rigid: 1,
                irreflexive_hereditarily_rigid: 1,
            }
        );
        // n = 1: no nonidentity self-maps; only the loopless one is
        // irreflexive
        assert_eq!(
            census(1).unwrap(),
            CensusRow {
                n: 1,
                total: 2,
                rigid: 2,
                strongly_rigid: 2,
                hereditarily_rigid: 2,
                irreflexive_hereditarily_rigid: 1,
            }
        );
    }

    #[test]
    fn n2_row_counts_swap_invariance() {
        // a relation on 2 vertices is non-rigid exactly when the swap
        // fixes it, i.e. r00 == r11 and r01 == r10: 4 of 16
        let row = census(2).unwrap();
        assert_eq!(row.total, 16);
        assert_eq!(row.rigid, 12);
        assert_eq!(row.strongly_rigid, 2);
        assert_eq!(row.hereditarily_rigid, 12);
        assert_eq!(row.irreflexive_hereditarily_rigid, 2);
    }

    #[test]
    fn row_inequalities() {
        for n in 0..=3 {
            let row = census(n).unwrap();
            assert!(row.strongly_rigid <= row.rigid);
            assert!(row.rigid <= row.total);
            assert!(row.hereditarily_rigid <= row.rigid);
            assert!(row.irreflexive_hereditarily_rigid <= row.hereditarily_rigid);
        }
    }

    #[test]
    fn methods_agree_on_small_sizes() {
        for n in 0..=3 {
            assert_eq!(
                census_with_method(n, CensusMethod::Labeled).unwrap(),
                census_with_method(n, CensusMethod::IsomorphClasses).unwrap()
            );
        }
    }

    #[test]
    fn burnside_sum_of_automorphism_counts() {
        // sum over relations of |Aut| equals the number of (relation,
        // permutation) fixed incidences, counted the other way as
        // sum over permutations of 2^(cycles of the induced pair action)
        let mut by_relations = 0u64;
        for mask in 0..1u64 << 9 {
            let r = mask_to_relation(3, mask);
            by_relations += automorphism_count(&r).unwrap();
        }
        let mut by_permutations = 0u64;
        for sigma in all_permutations(3) {
            let mut seen = [false; 9];
            let mut cycles = 0;
            for start in 0..9 {
                if seen[start] {
                    continue;
                }
                cycles += 1;
                let mut slot = start;
                while !seen[slot] {
                    seen[slot] = true;
                    slot = sigma[slot / 3] * 3 + sigma[slot % 3];
                }
            }
            by_permutations += 1 << cycles;
        }
        assert_eq!(by_relations, by_permutations);
        assert_eq!(by_relations, 624);
    }

    #[test]
    fn bounds() {
        assert!(matches!(
            census_with_method(5, CensusMethod::Labeled),
            Err(Error::BoundExceeded { .. })
        ));
        assert!(matches!(census(6), Err(Error::BoundExceeded { .. })));
        assert!(matches!(
            smallest_strongly_rigid_examples(6),
            Err(Error::BoundExceeded { .. })
        ));
        assert!(matches!(
            rigid_not_hereditary_examples(5),
            Err(Error::BoundExceeded { .. })
        ));
    }

    #[test]
    fn strongly_rigid_examples_small() {
        assert_eq!(smallest_strongly_rigid_examples(0).unwrap().len(), 1);

        let one = smallest_strongly_rigid_examples(1).unwrap();
        assert_eq!(one.len(), 2);

        let two = smallest_strongly_rigid_examples(2).unwrap();
        let arc = Relation::new(2, [(0, 1)]).unwrap();
        assert!(two.contains(&arc));
        assert_eq!(two.len(), 2);
        for r in &two {
            assert!(rigidity_unbounded(r).is_rigid());
        }
    }

    #[test]
    fn loop_shortcut_matches_full_enumeration() {
        // recompute strongly rigid sets over all edge sets, loops included
        for n in 2..=3usize {
            let by_shortcut = smallest_strongly_rigid_examples(n).unwrap();
            let mut by_full: Vec<Relation> = (0..1u64 << (n * n))
                .map(|mask| mask_to_relation(n, mask))
                .filter(|r| strong_rigidity_unbounded(r).is_strongly_rigid())
                .collect();
            by_full.sort();
            assert_eq!(by_shortcut, by_full);
        }
    }

    #[test]
    fn path_is_rigid_but_not_hereditary() {
        let examples = rigid_not_hereditary_examples(3).unwrap();
        let path = Relation::new(3, [(0, 1), (1, 2)]).unwrap();
        let found = examples
            .iter()
            .find(|e| e.relation == path)
            .expect("path must appear");
        assert_eq!(found.subset, vec![0, 2]);
        for example in &examples {
            assert!(rigidity_unbounded(&example.relation).is_rigid());
        }
        assert!(rigid_not_hereditary_examples(0).unwrap().is_empty());
        assert!(rigid_not_hereditary_examples(1).unwrap().is_empty());
    }

    /// Independent completeness check for the augmentation: the number of
    /// isomorphism classes must match the orbit count from the cycle
    /// index, i.e. (1/n!) * sum over permutations of 2^(cycles of the
    /// induced pair action).
    fn burnside_class_count(n: usize) -> u64 {
        let slots = n * n;
        let mut sum = 0u64;
        for sigma in all_permutations(n) {
            let mut seen = vec![false; slots];
            let mut cycles = 0u32;
            for start in 0..slots {
                if seen[start] {
                    continue;
                }
                cycles += 1;
                let mut slot = start;
                while !seen[slot] {
                    seen[slot] = true;
                    slot = sigma[slot / n] * n + sigma[slot % n];
                }
            }
            sum += 1u64 << cycles;
        }
        sum / factorial(n)
    }

    #[test]
    fn augmentation_finds_every_class() {
        for n in 0..=4usize {
            assert_eq!(
                class_representatives(n).len() as u64,
                burnside_class_count(n),
                "class count drifted at n = {n}"
            );
        }
    }

    /// Expensive spot check of the isomorph-rejection row above the
    /// labeled bound; run with `cargo test -- --ignored`. The classes
    /// method is validated against labeled counts for every n <= 4, and
    /// this row additionally satisfies the internal tiling assert, the
    /// Burnside class count, and divisibility of every count by 5!.
    #[test]
    #[ignore = "takes a few seconds; no golden below depends on it"]
    fn census_n5_structural_checks() {
        assert_eq!(class_representatives(5).len() as u64, burnside_class_count(5));
        let row = census(5).unwrap();
        assert_eq!(row.total, 1 << 25);
        assert_eq!(row.irreflexive_hereditarily_rigid, 120);
        for count in [row.rigid, row.strongly_rigid, row.hereditarily_rigid] {
            // rigid structures have trivial automorphism groups, so their
            // isomorphism classes all have exactly 5! labelings
            assert_eq!(count % 120, 0);
        }
        assert_eq!(
            row,
            CensusRow {
                n: 5,
                total: 33554432,
                rigid: 32191920,
                strongly_rigid: 431040,
                hereditarily_rigid: 1044720,
                irreflexive_hereditarily_rigid: 120,
            }
        );
    }

    #[test]
    fn tsv_format_is_stable() {
        assert_eq!(
            CensusRow::tsv_header(),
            "n\ttotal\trigid\tstrongly_rigid\thereditarily_rigid\tirreflexive_hereditarily_rigid"
        );
        let row = census(2).unwrap();
        assert_eq!(row.tsv_line(), "2\t16\t12\t2\t12\t2");
    }
}
