//! Ordered compositions and the signed binomial coefficient.
//!
//! A composition of j is a sequence of positive integers summing to j; these
//! index the lexicographic cells of a 2-cell, one cell per composition. The
//! boundary formulas are driven by two moves on compositions — merging two
//! adjacent parts and decrementing a part — together with a signed count of
//! shuffles, the signed binomial coefficient.

use crate::{Error, Result};
use std::cmp::Ordering;
use std::fmt;

/// An ordered partition `(s_1, …, s_ℓ)` of a positive integer into positive
/// parts. Immutable value type with structural equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Composition {
    parts: Vec<u32>,
}

impl Composition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidArgument("composition must be nonempty".into()));
        }
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::InvalidArgument("composition parts must be positive".into()));
        }
        Ok(Composition { parts })
    }

    /// Convenience constructor; panics on invalid parts (test/table use).
    pub fn of(parts: &[u32]) -> Self {
        Self::new(parts.to_vec()).expect("valid composition")
    }

    /// The all-ones composition of `j`.
    pub fn ones(j: u32) -> Self {
        Self::of(&vec![1; j as usize])
    }

    /// All ones except a single `part` in (1-based) slot `i`, total norm `j`.
    /// This is the paper's 2_i(j), 3_i(j), ... shorthand.
    pub fn with_part_at(j: u32, part: u32, i: usize) -> Self {
        let len = (j - part + 1) as usize;
        assert!(i >= 1 && i <= len && part >= 1 && part <= j);
        let mut parts = vec![1u32; len];
        parts[i - 1] = part;
        Self::of(&parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Norm |S| = sum of the parts.
    pub fn norm(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Length ℓ(S) = number of parts.
    pub fn length(&self) -> usize {
        self.parts.len()
    }

    /// |S|_{[a-1]}: sum of the parts strictly before (1-based) index `a`.
    pub fn prefix_norm(&self, a: usize) -> u32 {
        self.parts[..a - 1].iter().sum()
    }

    /// μ_a(S): merge parts `a` and `a+1` (1-based). Length drops by one.
    pub fn merge(&self, a: usize) -> Result<Composition> {
        if a < 1 || a > self.length().saturating_sub(1) {
            return Err(Error::IndexOutOfRange { index: a, len: self.length() });
        }
        let mut parts = self.parts.clone();
        parts[a - 1] += parts[a];
        parts.remove(a);
        Composition::new(parts)
    }

    /// ∂_a(S): decrement part `a` (1-based) by one. Norm drops by one.
    ///
    /// A part equal to 1 cannot be decremented here: the corresponding
    /// geometric face drops dimension by two and never contributes to the
    /// cellular boundary.
    pub fn decrement(&self, a: usize) -> Result<Composition> {
        if a < 1 || a > self.length() {
            return Err(Error::IndexOutOfRange { index: a, len: self.length() });
        }
        if self.parts[a - 1] < 2 {
            return Err(Error::PartTooSmall { index: a });
        }
        let mut parts = self.parts.clone();
        parts[a - 1] -= 1;
        Composition::new(parts)
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Total order used to sort chain-group bases: by length, then
/// lexicographically on the parts.
impl Ord for Composition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.length()
            .cmp(&other.length())
            .then_with(|| self.parts.cmp(&other.parts))
    }
}

impl PartialOrd for Composition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All 2^{j-1} compositions of `j`.
///
/// Generation is by the binary "bars" encoding: bit i of the mask (0-based,
/// i = 0..j-2) set means a break after position i+1. Masks are visited in
/// descending order, so the all-ones composition comes first and `(j)` last;
/// for j = 3 the order is (1,1,1), (2,1), (1,2), (3).
pub fn compositions(j: u32) -> Result<Vec<Composition>> {
    if j == 0 {
        return Err(Error::InvalidArgument("compositions(j) requires j >= 1".into()));
    }
    if j > 24 {
        return Err(Error::InvalidArgument(format!("compositions({j}) is too large")));
    }
    let n = 1u64 << (j - 1);
    let mut out = Vec::with_capacity(n as usize);
    for mask in (0..n).rev() {
        let mut parts = Vec::new();
        let mut run = 1u32;
        for i in 0..j - 1 {
            if mask >> i & 1 == 1 {
                parts.push(run);
                run = 1;
            } else {
                run += 1;
            }
        }
        parts.push(run);
        out.push(Composition { parts });
    }
    Ok(out)
}

/// Compositions of `j` with exactly `len` parts, in ascending lexicographic
/// order of the parts (C(j-1, len-1) of them).
pub fn compositions_of_length(j: u32, len: usize) -> Vec<Composition> {
    if len == 0 || len as u32 > j {
        return Vec::new();
    }
    let mut out = Vec::new();
    // choose break positions 1..j-1, ascending combinations give ascending lex
    let breaks: Vec<u32> = (1..j).collect();
    let mut idx: Vec<usize> = (0..len - 1).collect();
    loop {
        let mut parts = Vec::with_capacity(len);
        let mut prev = 0u32;
        for &b in idx.iter().map(|&i| &breaks[i]) {
            parts.push(b - prev);
            prev = b;
        }
        parts.push(j - prev);
        out.push(Composition { parts });
        // next combination
        if len == 1 {
            break;
        }
        let mut i = len - 2;
        loop {
            if idx[i] + 1 <= breaks.len() - (len - 1 - i) {
                idx[i] += 1;
                for k in i + 1..len - 1 {
                    idx[k] = idx[k - 1] + 1;
                }
                break;
            }
            if i == 0 {
                return out;
            }
            i -= 1;
        }
    }
    out
}

/// The signed binomial coefficient: the number of ways of choosing `r`
/// elements from [m], each choice counted with the sign of the permutation
/// placing the chosen elements first. Closed form
/// (1 + (-1)^{r(m-r)})/2 * C(floor(m/2), floor(r/2)).
pub fn signed_binomial(m: u32, r: u32) -> Result<i64> {
    if r > m {
        return Err(Error::InvalidArgument(format!("signed_binomial({m},{r}): r > m")));
    }
    if (r as u64 * (m - r) as u64) % 2 == 1 {
        return Ok(0);
    }
    Ok(binomial_u64((m / 2) as u64, (r / 2) as u64) as i64)
}

/// Plain binomial coefficient on small inputs.
pub fn binomial_u64(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}
