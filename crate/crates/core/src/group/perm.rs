//! Permutations of `0..n` with cycle-notation parsing and printing.
//!
//! Composition follows the left-to-right convention: `a.then(b)` applies `a`
//! first. Cycle notation is 1-based, as in `(1,2,3)(4,5)`.

use std::fmt;

use crate::error::{arg, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Permutation(Vec<u32>);

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation((0..degree as u32).collect())
    }

    /// Builds a permutation from 0-based images, rejecting non-bijections.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            let i = i as usize;
            if i >= n || seen[i] {
                return arg(format!("{images:?} is not a permutation of 0..{n}"));
            }
            seen[i] = true;
        }
        Ok(Permutation(images))
    }

    /// Builds a permutation from 1-based images over the points `1..=m`.
    pub fn from_one_based(images: &[u32]) -> Result<Self> {
        if images.contains(&0) {
            return arg(format!("{images:?}: points are numbered from 1"));
        }
        Self::from_images(images.iter().map(|&i| i - 1).collect())
    }

    /// Parses cycle notation such as `(1,2,3)(4,5)` or `()`.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut rest = compact.as_str();
        if rest.is_empty() {
            return arg("empty cycle notation");
        }
        let mut touched = vec![false; degree];
        while !rest.is_empty() {
            let Some(body) = rest.strip_prefix('(') else {
                return arg(format!("malformed cycle notation {text:?}"));
            };
            let Some(end) = body.find(')') else {
                return arg(format!("unclosed cycle in {text:?}"));
            };
            let inner = &body[..end];
            rest = &body[end + 1..];
            if inner.is_empty() {
                continue;
            }
            let points = inner
                .split(',')
                .map(|p| p.parse::<usize>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| crate::Error::Argument(format!("bad point in {text:?}")))?;
            for &p in &points {
                if p == 0 || p > degree {
                    return arg(format!("point {p} out of range 1..={degree} in {text:?}"));
                }
                if touched[p - 1] {
                    return arg(format!("point {p} repeated in {text:?}"));
                }
                touched[p - 1] = true;
            }
            for (i, &p) in points.iter().enumerate() {
                let next = points[(i + 1) % points.len()];
                images[p - 1] = (next - 1) as u32;
            }
        }
        Ok(Permutation(images))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.0[point] as usize
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation(self.0.iter().map(|&i| other.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        Permutation(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    /// Pads with fixed points so that `degree()` becomes `degree`.
    pub fn extended(&self, degree: usize) -> Permutation {
        let mut images = self.0.clone();
        images.extend(images.len() as u32..degree as u32);
        Permutation(images)
    }
}

impl fmt::Display for Permutation {
    /// Canonical cycle notation: each cycle starts at its least point,
    /// cycles ordered by least point, fixed points omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.0.len()];
        let mut any = false;
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] as usize == start {
                continue;
            }
            any = true;
            write!(f, "(")?;
            let mut p = start;
            let mut first = true;
            while !seen[p] {
                seen[p] = true;
                if !first {
                    write!(f, ",")?;
                }
                write!(f, "{}", p + 1)?;
                first = false;
                p = self.0[p] as usize;
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}
