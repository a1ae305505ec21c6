use thiserror::Error;

/// Errors produced by the library.
///
/// Every failure is reported through this type; none of the public
/// functions panic on bad input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A map or permutation does not live on the same vertex count as the
    /// relation it is applied to.
    #[error("size mismatch: expected {expected} vertices, got {got}")]
    SizeMismatch { expected: usize, got: usize },

    /// A vertex index fell outside `0..n`.
    #[error("vertex {vertex} out of range for a relation on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    /// An exhaustive search was asked to run above its configured bound.
    #[error("{what}: size {n} exceeds the bound of {bound}")]
    BoundExceeded {
        what: &'static str,
        n: usize,
        bound: usize,
    },

    /// Permutation images must be a bijection on `0..n`.
    #[error("images are not a bijection on 0..{n}")]
    NotABijection { n: usize },

    /// Vertex-map images must land in `0..n`.
    #[error("image {image} at position {index} out of range for a map on {n} vertices")]
    ImageOutOfRange {
        index: usize,
        image: usize,
        n: usize,
    },

    /// A point must be a non-empty string over `{'0','1'}`.
    #[error("{bits:?} is not a non-empty binary string")]
    InvalidPoint { bits: String },

    /// All points in one carrier must have the same bit length.
    #[error("point {found:?} does not have the common length {expected}")]
    MixedPointLengths { found: String, expected: usize },

    /// Carrier points must be pairwise distinct.
    #[error("duplicate point {bits:?} in a carrier that must be a set")]
    DuplicatePoint { bits: String },

    /// Carrier pairs must be pairwise distinct as (point, label) pairs.
    #[error("duplicate pair ({bits:?}, {label}) in a carrier that must be a set")]
    DuplicatePair { bits: String, label: usize },

    /// A spine index points outside the carrier.
    #[error("spine index {index} out of range for a carrier of {len} elements")]
    SpineIndexOutOfRange { index: usize, len: usize },

    /// Spine members must be pairwise distinct.
    #[error("spine index {index} repeats; spine members must be pairwise distinct")]
    SpineDuplicate { index: usize },

    /// Two carrier points cannot be told apart by any prefix the spine wires up.
    #[error("points {first:?} and {second:?} are not separated by the first {wired} prefixes; use a longer chain")]
    SeparationFailure {
        first: String,
        second: String,
        wired: usize,
    },

    /// The base relation of a product construction has a loop.
    #[error("hypothesis violation: base relation is not irreflexive (loop at vertex {vertex})")]
    BaseNotIrreflexive { vertex: usize },

    /// The base relation of a product construction has a non-rigid substructure.
    #[error("hypothesis violation: base relation is not hereditarily rigid (subset {subset:?} admits a nontrivial automorphism)")]
    BaseNotHereditarilyRigid { subset: Vec<usize> },

    /// A declared support contains an atom outside the atom range.
    #[error("support atom {atom} out of range for {atoms} atoms")]
    SupportOutOfRange { atom: usize, atoms: usize },

    /// The declared support does not actually support the edge set.
    #[error("edges are not fixed by fix(E): transposition ({a} {b}) moves edge ({u},{v}) off the edge set")]
    NotSupported {
        a: usize,
        b: usize,
        u: usize,
        v: usize,
    },

    /// The non-rigidity lemma needs two atoms to swap outside the support.
    #[error("not applicable: need at least two atoms outside the support, found {outside}")]
    TooFewAtomsOutsideSupport { outside: usize },
}
