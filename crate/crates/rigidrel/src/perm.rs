//! Permutations and arbitrary self-maps on `0..n`.

use std::fmt;

use crate::Error;

/// A bijection on `0..n`, stored as its image list: `images[i]` is the image
/// of vertex `i`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// The identity on `0..n`.
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// Builds a permutation from an image list, rejecting non-bijections.
    pub fn from_images(images: Vec<usize>) -> Result<Self, Error> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &image in &images {
            if image >= n || seen[image] {
                return Err(Error::NotABijection { n });
            }
            seen[image] = true;
        }
        Ok(Permutation { images })
    }

    /// The transposition of `a` and `b` on `0..n`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Result<Self, Error> {
        for v in [a, b] {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
        }
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(a, b);
        Ok(Permutation { images })
    }

    /// Internal constructor for images already known to be a bijection.
    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Self {
        debug_assert!(Self::from_images(images.clone()).is_ok());
        Permutation { images }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, v: usize) -> usize {
        self.images[v]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &image)| i == image)
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.images.len()];
        for (i, &image) in self.images.iter().enumerate() {
            images[image] = i;
        }
        Permutation { images }
    }

    /// `self.compose(&g)` maps `x` to `self(g(x))`.
    pub fn compose(&self, other: &Permutation) -> Result<Self, Error> {
        if self.n() != other.n() {
            return Err(Error::SizeMismatch {
                expected: self.n(),
                got: other.n(),
            });
        }
        let images = (0..self.n()).map(|x| self.apply(other.apply(x))).collect();
        Ok(Permutation { images })
    }
}

/// Cycle notation; the identity prints as `id`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.n()];
        let mut wrote = false;
        for start in 0..self.n() {
            if seen[start] || self.apply(start) == start {
                seen[start] = true;
                continue;
            }
            write!(f, "(")?;
            let mut v = start;
            let mut first = true;
            while !seen[v] {
                seen[v] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{v}")?;
                first = false;
                v = self.apply(v);
            }
            write!(f, ")")?;
            wrote = true;
        }
        if !wrote {
            write!(f, "id")?;
        }
        Ok(())
    }
}

/// An arbitrary self-map on `0..n`, not necessarily injective.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexMap {
    images: Vec<usize>,
}

impl VertexMap {
    pub fn identity(n: usize) -> Self {
        VertexMap {
            images: (0..n).collect(),
        }
    }

    /// Builds a self-map from an image list, rejecting out-of-range images.
    pub fn from_images(images: Vec<usize>) -> Result<Self, Error> {
        let n = images.len();
        for (index, &image) in images.iter().enumerate() {
            if image >= n {
                return Err(Error::ImageOutOfRange { index, image, n });
            }
        }
        Ok(VertexMap { images })
    }

    /// The constant map sending every vertex to `target`.
    pub fn constant(n: usize, target: usize) -> Result<Self, Error> {
        if target >= n {
            return Err(Error::VertexOutOfRange { vertex: target, n });
        }
        Ok(VertexMap {
            images: vec![target; n],
        })
    }

    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Self {
        debug_assert!(images.iter().all(|&image| image < images.len()));
        VertexMap { images }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, v: usize) -> usize {
        self.images[v]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &image)| i == image)
    }
}

impl From<Permutation> for VertexMap {
    fn from(p: Permutation) -> Self {
        VertexMap { images: p.images }
    }
}

impl fmt::Display for VertexMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, image) in self.images.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{image}")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_images_rejects_non_bijections() {
        assert!(Permutation::from_images(vec![0, 0]).is_err());
        assert!(Permutation::from_images(vec![0, 2]).is_err());
        assert!(Permutation::from_images(vec![1, 0]).is_ok());
    }

    #[test]
    fn inverse_and_compose_agree() {
        let p = Permutation::from_images(vec![2, 0, 1, 4, 3]).unwrap();
        assert_eq!(p.compose(&p.inverse()).unwrap(), Permutation::identity(5));
        assert_eq!(p.inverse().compose(&p).unwrap(), Permutation::identity(5));
    }

    #[test]
    fn cycle_display() {
        assert_eq!(Permutation::identity(3).to_string(), "id");
        let swap = Permutation::transposition(4, 0, 2).unwrap();
        assert_eq!(swap.to_string(), "(0 2)");
        let rot = Permutation::from_images(vec![1, 2, 0]).unwrap();
        assert_eq!(rot.to_string(), "(0 1 2)");
    }

    #[test]
    fn vertex_map_range_checked() {
        assert!(VertexMap::from_images(vec![0, 2]).is_err());
        assert_eq!(
            VertexMap::constant(3, 0).unwrap().images(),
            &[0, 0, 0][..]
        );
    }
}
