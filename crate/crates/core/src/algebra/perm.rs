//! Permutations of `{0, .., n-1}`.
//!
//! Composition is left to right: `compose(a, b)` applies `a` first, so
//! `compose(a, b)(i) = b(a(i))`. Cycle notation at the text boundary is 1-based.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u16>,
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Permutation {
    pub const MAX_DEGREE: usize = 1 << 16;

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n as u16).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n > Self::MAX_DEGREE {
            return Err(Error::domain(format!("degree {n} too large")));
        }
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return Err(Error::domain(format!("{images:?} is not a permutation")));
            }
        }
        Ok(Permutation {
            images: images.into_iter().map(|i| i as u16).collect(),
        })
    }

    /// Builds a permutation of degree `n` from 1-based cycles, e.g. `&[&[1, 2, 3]]`.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for (idx, &pt) in cycle.iter().enumerate() {
                let next = cycle[(idx + 1) % cycle.len()];
                if pt == 0 || pt > n || next == 0 || next > n {
                    return Err(Error::domain(format!("point out of range in cycle {cycle:?}")));
                }
                if std::mem::replace(&mut touched[pt - 1], true) {
                    return Err(Error::domain(format!("point {pt} repeated in cycles")));
                }
                images[pt - 1] = next - 1;
            }
        }
        Self::from_images(images)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn images(&self) -> &[u16] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    pub fn compose(&self, then: &Permutation) -> Result<Permutation> {
        if self.degree() != then.degree() {
            return Err(Error::domain(format!(
                "degree mismatch {} vs {}",
                self.degree(),
                then.degree()
            )));
        }
        Ok(self.compose_unchecked(then))
    }

    #[inline]
    pub(crate) fn compose_unchecked(&self, then: &Permutation) -> Permutation {
        Permutation {
            images: self.images.iter().map(|&i| then.images[i as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u16; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u16;
        }
        Permutation { images }
    }

    /// `true` for even permutations.
    pub fn is_even(&self) -> bool {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut transpositions = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.images[i] as usize;
                len += 1;
            }
            transpositions += len - 1;
        }
        transpositions % 2 == 0
    }

    /// Disjoint cycles of length > 1, 0-based.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i);
                i = self.images[i] as usize;
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let pts: Vec<String> = c.iter().map(|i| (i + 1).to_string()).collect();
            write!(f, "({})", pts.join(" "))?;
        }
        Ok(())
    }
}
