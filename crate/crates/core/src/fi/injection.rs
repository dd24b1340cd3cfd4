use std::fmt;

use serde::{Deserialize, Serialize};

use crate::combinat;
use crate::error::{Error, Result};

/// An injection `[a] ↪ [n]`, stored as its image tuple `(f(1), …, f(a))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Injection {
    target: usize,
    images: Vec<usize>,
}

impl Injection {
    pub fn new(images: Vec<usize>, target: usize) -> Result<Self> {
        let mut seen = vec![false; target + 1];
        for &v in &images {
            if v == 0 || v > target {
                return Err(Error::InvalidInjection(format!("image {v} outside [1, {target}]")));
            }
            if seen[v] {
                return Err(Error::InvalidInjection(format!("image {v} repeated")));
            }
            seen[v] = true;
        }
        Ok(Injection { target, images })
    }

    pub(crate) fn new_unchecked(images: Vec<usize>, target: usize) -> Self {
        debug_assert!(Injection::new(images.clone(), target).is_ok());
        Injection { target, images }
    }

    pub fn identity(n: usize) -> Self {
        Injection {
            target: n,
            images: (1..=n).collect(),
        }
    }

    /// The standard inclusion `[m] ↪ [n]`, `i ↦ i`.
    pub fn standard(m: usize, n: usize) -> Result<Self> {
        if m > n {
            return Err(Error::InvalidInjection(format!("no injection [{m}] -> [{n}]")));
        }
        Ok(Injection {
            target: n,
            images: (1..=m).collect(),
        })
    }

    /// The increasing injection with the given image set.
    pub fn increasing(image: &[usize], n: usize) -> Result<Self> {
        let mut v = image.to_vec();
        v.sort_unstable();
        Self::new(v, n)
    }

    pub fn source(&self) -> usize {
        self.images.len()
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `f(i)` for `1 ≤ i ≤ source`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &Injection) -> Result<Injection> {
        if first.target != self.source() {
            return Err(Error::SizeMismatch(format!(
                "cannot compose [{}] -> [{}] after [{}] -> [{}]",
                self.source(),
                self.target,
                first.source(),
                first.target
            )));
        }
        Ok(Injection {
            target: self.target,
            images: first.images.iter().map(|&i| self.images[i - 1]).collect(),
        })
    }

    pub(crate) fn compose_images(&self, images: &[usize]) -> Vec<usize> {
        images.iter().map(|&i| self.images[i - 1]).collect()
    }

    /// Position of this injection in [`enumerate_injections`] order.
    pub fn rank(&self) -> usize {
        combinat::injection_rank(&self.images, self.target)
    }

    pub fn is_increasing(&self) -> bool {
        self.images.windows(2).all(|w| w[0] < w[1])
    }

    /// Sorted image set.
    pub fn image_set(&self) -> Vec<usize> {
        let mut v = self.images.clone();
        v.sort_unstable();
        v
    }
}

impl fmt::Debug for Injection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}->[{}]", self.images, self.target)
    }
}

impl fmt::Display for Injection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// All injections `[d] ↪ [n]`, lexicographic in the image tuple. Empty when `d > n`.
pub fn enumerate_injections(d: usize, n: usize) -> Vec<Injection> {
    combinat::injection_images(d, n)
        .into_iter()
        .map(|images| Injection { target: n, images })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration() {
        assert_eq!(enumerate_injections(0, 5).len(), 1);
        let one: Vec<Vec<usize>> = enumerate_injections(1, 3).iter().map(|f| f.images().to_vec()).collect();
        assert_eq!(one, vec![vec![1], vec![2], vec![3]]);
        let two = enumerate_injections(2, 4);
        assert_eq!(two.len(), 12);
        assert_eq!(two[0].images(), &[1, 2]);
        assert_eq!(two[11].images(), &[4, 3]);
        assert!(enumerate_injections(3, 2).is_empty());
    }

    #[test]
    fn composition() {
        let f = Injection::new(vec![2], 2).unwrap();
        let g = Injection::new(vec![3, 1], 3).unwrap();
        assert_eq!(g.compose(&f).unwrap().images(), &[1]);
        assert!(f.compose(&g).is_err());
        assert!(Injection::new(vec![1, 1], 2).is_err());
        assert!(Injection::new(vec![3], 2).is_err());
    }
}
