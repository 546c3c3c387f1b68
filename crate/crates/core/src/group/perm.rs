//! Permutations of `{0, .., n-1}` and cycle-notation parsing.
//!
//! Cycle notation is 1-based, as written by hand: `"(1 2)(3 4)"`. Products
//! are read left to right: `p.then(&q)` applies `p` first.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Self {
            images: (0..degree).collect(),
        }
    }

    /// Builds a permutation from its image list, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = alloc::vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::InvalidPermutation(alloc::format!(
                    "image list {images:?} is not a bijection of 0..{n}"
                )));
            }
            seen[x] = true;
        }
        Ok(Self { images })
    }

    /// Parses 1-based cycle notation such as `"(1 2 3)(4 5)"`. Commas are
    /// accepted as separators inside a cycle. The degree is the largest point
    /// mentioned unless `min_degree` is larger.
    pub fn parse_cycles(text: &str, min_degree: usize) -> Result<Self> {
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut rest = text.trim();
        if rest.is_empty() || rest == "()" || rest == "e" || rest == "id" {
            return Ok(Self::identity(min_degree));
        }
        while !rest.is_empty() {
            let open = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::InvalidPermutation(alloc::format!("expected '(' in {text:?}")))?;
            let close = open
                .find(')')
                .ok_or_else(|| Error::InvalidPermutation(alloc::format!("unclosed cycle in {text:?}")))?;
            let body = &open[..close];
            let mut cycle = Vec::new();
            for tok in body.split(|c: char| c.is_whitespace() || c == ',') {
                if tok.is_empty() {
                    continue;
                }
                let point: usize = tok.parse().map_err(|_| {
                    Error::InvalidPermutation(alloc::format!("bad point {tok:?} in {text:?}"))
                })?;
                if point == 0 {
                    return Err(Error::InvalidPermutation(
                        "cycle notation is 1-based; found 0".to_string(),
                    ));
                }
                cycle.push(point - 1);
            }
            cycles.push(cycle);
            rest = open[close + 1..].trim_start();
        }
        let degree = cycles
            .iter()
            .flatten()
            .map(|&p| p + 1)
            .max()
            .unwrap_or(0)
            .max(min_degree);
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = alloc::vec![false; degree];
        // disjointness is required so the result does not depend on composition order
        for cycle in &cycles {
            for &p in cycle {
                if touched[p] {
                    return Err(Error::InvalidPermutation(alloc::format!(
                        "point {} appears twice in {text:?}",
                        p + 1
                    )));
                }
                touched[p] = true;
            }
            for (idx, &p) in cycle.iter().enumerate() {
                images[p] = cycle[(idx + 1) % cycle.len()];
            }
        }
        Ok(Self { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, point: usize) -> usize {
        self.images.get(point).copied().unwrap_or(point)
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Extends to a larger degree by fixing the new points.
    pub fn padded(&self, degree: usize) -> Self {
        let mut images = self.images.clone();
        images.extend(self.images.len()..degree.max(self.images.len()));
        Self { images }
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Self) -> Self {
        let degree = self.degree().max(other.degree());
        Self {
            images: (0..degree).map(|x| other.apply(self.apply(x))).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut images = alloc::vec![0; self.degree()];
        for (x, &y) in self.images.iter().enumerate() {
            images[y] = x;
        }
        Self { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(x, &y)| x == y)
    }

    /// Permutation sign, +1 or -1.
    pub fn sign(&self) -> i32 {
        let mut seen = alloc::vec![false; self.degree()];
        let mut sign = 1;
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x];
                len += 1;
            }
            if len % 2 == 0 {
                sign = -sign;
            }
        }
        sign
    }

    pub fn to_cycle_string(&self) -> String {
        let mut out = String::new();
        let mut seen = alloc::vec![false; self.degree()];
        for start in 0..self.degree() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            out.push('(');
            let mut x = start;
            let mut first = true;
            while !seen[x] {
                seen[x] = true;
                if !first {
                    out.push(' ');
                }
                first = false;
                out.push_str(&(x + 1).to_string());
                x = self.images[x];
            }
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_cycle_string())
    }
}

/// Splits a generator list like `"(1 2),(1 2 3)"` at top-level commas.
pub fn parse_generator_list(text: &str) -> Result<Vec<Permutation>> {
    let mut gens = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ',' | ';' if depth == 0 => {
                gens.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    gens.push(&text[start..]);
    let parsed: Vec<Permutation> = gens
        .into_iter()
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| Permutation::parse_cycles(s, 0))
        .collect::<Result<_>>()?;
    let degree = parsed.iter().map(Permutation::degree).max().unwrap_or(0);
    Ok(parsed.into_iter().map(|p| p.padded(degree)).collect())
}
