//! Decision kernels: automorphism enumeration and the rigidity checks
//! built on top of it.
//!
//! All searches iterate candidates in increasing order, so enumeration
//! results come out sorted lexicographically by image list and every
//! returned witness is the lexicographically least one. Reruns are
//! bit-for-bit reproducible.

use std::ops::ControlFlow;

use crate::{Error, Permutation, Relation, VertexMap};

/// Default vertex bound for automorphism search (cost grows like n!).
pub const DEFAULT_AUTOMORPHISM_BOUND: usize = 10;
/// Default vertex bound for endomorphism search (cost grows like n^n).
pub const DEFAULT_ENDOMORPHISM_BOUND: usize = 7;
/// Default vertex bound for the hereditary check (2^n automorphism searches).
pub const DEFAULT_HEREDITARY_BOUND: usize = 10;

/// Outcome of the rigidity check. A negative answer always carries a
/// certificate: a nontrivial automorphism of the queried relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RigidityVerdict {
    Rigid,
    NotRigid { witness: Permutation },
}

impl RigidityVerdict {
    pub fn is_rigid(&self) -> bool {
        matches!(self, RigidityVerdict::Rigid)
    }

    pub fn witness(&self) -> Option<&Permutation> {
        match self {
            RigidityVerdict::Rigid => None,
            RigidityVerdict::NotRigid { witness } => Some(witness),
        }
    }
}

/// Outcome of the strong-rigidity check; the witness is a nontrivial
/// endomorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StrongRigidityVerdict {
    StronglyRigid,
    NotStronglyRigid { witness: VertexMap },
}

impl StrongRigidityVerdict {
    pub fn is_strongly_rigid(&self) -> bool {
        matches!(self, StrongRigidityVerdict::StronglyRigid)
    }

    pub fn witness(&self) -> Option<&VertexMap> {
        match self {
            StrongRigidityVerdict::StronglyRigid => None,
            StrongRigidityVerdict::NotStronglyRigid { witness } => Some(witness),
        }
    }
}

/// Outcome of the hereditary-rigidity check. A negative answer names the
/// lexicographically least failing vertex subset together with a nontrivial
/// automorphism of the substructure induced on it (in renumbered vertices).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HereditaryVerdict {
    HereditarilyRigid,
    NotHereditarilyRigid {
        subset: Vec<usize>,
        witness: Permutation,
    },
}

impl HereditaryVerdict {
    pub fn is_hereditarily_rigid(&self) -> bool {
        matches!(self, HereditaryVerdict::HereditarilyRigid)
    }

    pub fn witness(&self) -> Option<(&[usize], &Permutation)> {
        match self {
            HereditaryVerdict::HereditarilyRigid => None,
            HereditaryVerdict::NotHereditarilyRigid { subset, witness } => {
                Some((subset, witness))
            }
        }
    }
}

/// Per-vertex pruning signature: out-degree, in-degree, loop flag. An
/// automorphism can only map a vertex to one with the same signature.
fn signatures(r: &Relation) -> Vec<(u32, u32, bool)> {
    let mut sig = vec![(0u32, 0u32, false); r.n()];
    for (u, v) in r.edges() {
        if u == v {
            sig[u].2 = true;
        } else {
            sig[u].0 += 1;
            sig[v].1 += 1;
        }
    }
    sig
}

/// Partial-image consistency for the bidirectional (automorphism) case:
/// edges between `v` and every already-assigned vertex must be mirrored
/// exactly by the images.
fn extends_automorphism(r: &Relation, images: &[usize], v: usize, w: usize) -> bool {
    for (u, &iu) in images.iter().enumerate().take(v) {
        if r.has_edge(u, v) != r.has_edge(iu, w) || r.has_edge(v, u) != r.has_edge(w, iu) {
            return false;
        }
    }
    true
}

/// Forward-only consistency for the endomorphism case.
fn extends_endomorphism(r: &Relation, images: &[usize], v: usize, w: usize) -> bool {
    if r.has_edge(v, v) && !r.has_edge(w, w) {
        return false;
    }
    for (u, &iu) in images.iter().enumerate().take(v) {
        if (r.has_edge(u, v) && !r.has_edge(iu, w)) || (r.has_edge(v, u) && !r.has_edge(w, iu)) {
            return false;
        }
    }
    true
}

/// Backtracking enumeration of all automorphisms, visited in lexicographic
/// image order. The visitor can stop the search early.
fn visit_automorphisms<F>(r: &Relation, visit: &mut F) -> ControlFlow<()>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    fn dfs<F>(
        r: &Relation,
        sig: &[(u32, u32, bool)],
        v: usize,
        images: &mut Vec<usize>,
        used: &mut Vec<bool>,
        visit: &mut F,
    ) -> ControlFlow<()>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        let n = r.n();
        if v == n {
            return visit(images);
        }
        for w in 0..n {
            if used[w] || sig[w] != sig[v] || !extends_automorphism(r, images, v, w) {
                continue;
            }
            images[v] = w;
            used[w] = true;
            let flow = dfs(r, sig, v + 1, images, used, visit);
            used[w] = false;
            images[v] = usize::MAX;
            flow?;
        }
        ControlFlow::Continue(())
    }

    let sig = signatures(r);
    let mut images = vec![usize::MAX; r.n()];
    let mut used = vec![false; r.n()];
    dfs(r, &sig, 0, &mut images, &mut used, visit)
}

fn visit_endomorphisms<F>(r: &Relation, visit: &mut F) -> ControlFlow<()>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    fn dfs<F>(
        r: &Relation,
        v: usize,
        images: &mut Vec<usize>,
        visit: &mut F,
    ) -> ControlFlow<()>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        let n = r.n();
        if v == n {
            return visit(images);
        }
        for w in 0..n {
            if !extends_endomorphism(r, images, v, w) {
                continue;
            }
            images[v] = w;
            let flow = dfs(r, v + 1, images, visit);
            images[v] = usize::MAX;
            flow?;
        }
        ControlFlow::Continue(())
    }

    let mut images = vec![usize::MAX; r.n()];
    dfs(r, 0, &mut images, visit)
}

fn check_bound(what: &'static str, n: usize, bound: usize) -> Result<(), Error> {
    if n > bound {
        Err(Error::BoundExceeded { what, n, bound })
    } else {
        Ok(())
    }
}

/// All automorphisms of `r`, identity included, sorted lexicographically by
/// image list. Uses the default search bound.
pub fn automorphisms(r: &Relation) -> Result<Vec<Permutation>, Error> {
    automorphisms_with_bound(r, DEFAULT_AUTOMORPHISM_BOUND)
}

pub fn automorphisms_with_bound(r: &Relation, bound: usize) -> Result<Vec<Permutation>, Error> {
    check_bound("automorphism search", r.n(), bound)?;
    let mut found = Vec::new();
    let _ = visit_automorphisms(r, &mut |images| {
        found.push(Permutation::from_images_unchecked(images.to_vec()));
        ControlFlow::Continue(())
    });
    Ok(found)
}

/// Order of the automorphism group of `r`.
pub fn automorphism_count(r: &Relation) -> Result<u64, Error> {
    automorphism_count_with_bound(r, DEFAULT_AUTOMORPHISM_BOUND)
}

pub fn automorphism_count_with_bound(r: &Relation, bound: usize) -> Result<u64, Error> {
    check_bound("automorphism search", r.n(), bound)?;
    let mut count = 0u64;
    let _ = visit_automorphisms(r, &mut |_| {
        count += 1;
        ControlFlow::Continue(())
    });
    Ok(count)
}

/// Decides rigidity. A relation is rigid when its only automorphism is the
/// identity; otherwise the lexicographically least nontrivial automorphism
/// is returned as the certificate.
pub fn is_rigid(r: &Relation) -> Result<RigidityVerdict, Error> {
    is_rigid_with_bound(r, DEFAULT_AUTOMORPHISM_BOUND)
}

pub fn is_rigid_with_bound(r: &Relation, bound: usize) -> Result<RigidityVerdict, Error> {
    check_bound("automorphism search", r.n(), bound)?;
    Ok(rigidity_unbounded(r))
}

/// Rigidity kernel without the bound gate, for callers that already
/// bounded the carrier (substructure sweeps, census loops).
pub(crate) fn rigidity_unbounded(r: &Relation) -> RigidityVerdict {
    let mut witness = None;
    let _ = visit_automorphisms(r, &mut |images| {
        if images.iter().enumerate().all(|(i, &im)| i == im) {
            ControlFlow::Continue(())
        } else {
            witness = Some(Permutation::from_images_unchecked(images.to_vec()));
            ControlFlow::Break(())
        }
    });
    match witness {
        Some(witness) => RigidityVerdict::NotRigid { witness },
        None => RigidityVerdict::Rigid,
    }
}

/// Decides strong rigidity: no nontrivial endomorphism may exist. The
/// witness, if any, is the lexicographically least nontrivial endomorphism.
pub fn is_strongly_rigid(r: &Relation) -> Result<StrongRigidityVerdict, Error> {
    is_strongly_rigid_with_bound(r, DEFAULT_ENDOMORPHISM_BOUND)
}

pub fn is_strongly_rigid_with_bound(
    r: &Relation,
    bound: usize,
) -> Result<StrongRigidityVerdict, Error> {
    check_bound("endomorphism search", r.n(), bound)?;
    Ok(strong_rigidity_unbounded(r))
}

pub(crate) fn strong_rigidity_unbounded(r: &Relation) -> StrongRigidityVerdict {
    let mut witness = None;
    let _ = visit_endomorphisms(r, &mut |images| {
        if images.iter().enumerate().all(|(i, &im)| i == im) {
            ControlFlow::Continue(())
        } else {
            witness = Some(VertexMap::from_images_unchecked(images.to_vec()));
            ControlFlow::Break(())
        }
    });
    match witness {
        Some(witness) => StrongRigidityVerdict::NotStronglyRigid { witness },
        None => StrongRigidityVerdict::StronglyRigid,
    }
}

/// Decides hereditary rigidity: every induced substructure must be rigid.
/// Subsets are tried in lexicographic order of their sorted vertex lists,
/// so a negative verdict names the least failing subset.
pub fn is_hereditarily_rigid(r: &Relation) -> Result<HereditaryVerdict, Error> {
    is_hereditarily_rigid_with_bound(r, DEFAULT_HEREDITARY_BOUND)
}

pub fn is_hereditarily_rigid_with_bound(
    r: &Relation,
    bound: usize,
) -> Result<HereditaryVerdict, Error> {
    check_bound("hereditary rigidity search", r.n(), bound)?;
    Ok(hereditary_unbounded(r))
}

pub(crate) fn hereditary_unbounded(r: &Relation) -> HereditaryVerdict {
    let n = r.n();
    assert!(n < 64, "subset masks are 64-bit");
    let mut subsets: Vec<Vec<usize>> = (0u64..1 << n)
        .map(|mask| (0..n).filter(|&v| mask >> v & 1 == 1).collect())
        .collect();
    subsets.sort();
    for subset in subsets {
        let induced = r.induced(&subset).expect("subset is in range");
        if let RigidityVerdict::NotRigid { witness } = rigidity_unbounded(&induced) {
            return HereditaryVerdict::NotHereditarilyRigid { subset, witness };
        }
    }
    HereditaryVerdict::HereditarilyRigid
}
