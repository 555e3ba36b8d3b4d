//! Integer partitions: duals, parity classes, Jordan matrices and the
//! Kronecker–Jordan rank identity.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::linalg::Matrix;

/// A weakly decreasing sequence of positive integers.
///
/// Parts beyond the stored length read as zero, so `part(i)` is total.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

/// Parity class used to label nilpotent orbits in types B, C, D.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PartitionClass {
    All,
    /// Even parts occur with even multiplicity (orthogonal).
    BD,
    /// Odd parts occur with even multiplicity (symplectic).
    C,
}

/// Where the ones of a Jordan block sit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Placement {
    AboveDiagonal,
    BelowDiagonal,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self, Error> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition("parts must be positive".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition("parts must be weakly decreasing".into()));
        }
        Ok(Partition { parts })
    }

    /// Sorts and drops zero parts.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    /// The partition `(1^n)`.
    pub fn ones(n: usize) -> Self {
        Partition { parts: vec![1; n] }
    }

    /// The one-part partition `(n)`; empty for `n = 0`.
    pub fn single(n: usize) -> Self {
        Partition::from_unsorted(vec![n])
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// `i`-th part, 1-based, zero beyond the length.
    pub fn part(&self, i: usize) -> usize {
        if i == 0 {
            return 0;
        }
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn largest(&self) -> usize {
        self.part(1)
    }

    /// Conjugate partition: `μ'_i = |{ j : μ_j ≥ i }|`.
    pub fn dual(&self) -> Partition {
        let parts = (1..=self.largest())
            .map(|i| self.parts.iter().take_while(|&&p| p >= i).count())
            .collect();
        Partition { parts }
    }

    /// `(part, multiplicity)` pairs in decreasing part order.
    pub fn multiplicities(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((q, m)) if *q == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    pub fn in_class(&self, class: PartitionClass) -> bool {
        match class {
            PartitionClass::All => true,
            PartitionClass::BD => {
                self.multiplicities().iter().all(|&(p, m)| p % 2 == 1 || m % 2 == 0)
            }
            PartitionClass::C => {
                self.multiplicities().iter().all(|&(p, m)| p % 2 == 0 || m % 2 == 0)
            }
        }
    }

    /// Only even parts, each with even multiplicity.
    pub fn is_very_even(&self) -> bool {
        !self.parts.is_empty()
            && self.multiplicities().iter().all(|&(p, m)| p % 2 == 0 && m % 2 == 0)
    }

    pub fn all_parts_even(&self) -> bool {
        self.parts.iter().all(|p| p % 2 == 0)
    }

    /// Rank of the Jordan matrix: `weight − μ'_1`.
    pub fn jordan_rank(&self) -> usize {
        self.weight() - self.len()
    }

    pub fn sum_of_squared_duals(&self) -> usize {
        self.dual().parts.iter().map(|c| c * c).sum()
    }
}

impl fmt::Display for Partition {
    /// Comma-separated parts with `^` for repeated parts, e.g. `3,2^2,1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "0");
        }
        for (k, (p, m)) in self.multiplicities().into_iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            if m == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts `3,2^2,1`, optionally wrapped in parentheses; whitespace is ignored.
    fn from_str(s: &str) -> Result<Self, Error> {
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let body = cleaned.trim_start_matches('(').trim_end_matches(')');
        if body.is_empty() || body == "0" {
            return Ok(Partition::default());
        }
        let mut parts = Vec::new();
        for token in body.split(',') {
            let bad = || Error::Parse(alloc::format!("bad partition token `{token}`"));
            let (part, mult) = match token.split_once('^') {
                Some((p, m)) => (p.parse::<usize>().map_err(|_| bad())?, m.parse::<usize>().map_err(|_| bad())?),
                None => (token.parse::<usize>().map_err(|_| bad())?, 1),
            };
            parts.extend(core::iter::repeat_n(part, mult));
        }
        Partition::new(parts)
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(parts: Vec<usize>) -> Result<Self, Error> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Vec<usize> {
        p.parts
    }
}

impl fmt::Display for PartitionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PartitionClass::All => "all",
            PartitionClass::BD => "orthogonal",
            PartitionClass::C => "symplectic",
        })
    }
}

pub fn dual(mu: &Partition) -> Partition {
    mu.dual()
}

/// All partitions of `m` in `class`, in reverse-lexicographic order.
pub fn enumerate(m: usize, class: PartitionClass) -> Vec<Partition> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=max.min(rest)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut all = Vec::new();
    go(m, m, &mut Vec::new(), &mut all);
    all.into_iter()
        .map(|parts| Partition { parts })
        .filter(|p| p.in_class(class))
        .collect()
}

pub fn is_very_even(mu: &Partition) -> bool {
    mu.is_very_even()
}

/// Nilpotent 0/1 matrix with Jordan blocks of sizes `μ_1 ≥ μ_2 ≥ …` down the diagonal.
pub fn jordan_matrix(mu: &Partition, placement: Placement) -> Matrix<i64> {
    let n = mu.weight();
    let mut m = Matrix::zeros(n, n);
    let mut offset = 0;
    for &d in mu.parts() {
        for i in 0..d - 1 {
            let (r, c) = match placement {
                Placement::AboveDiagonal => (offset + i, offset + i + 1),
                Placement::BelowDiagonal => (offset + i + 1, offset + i),
            };
            m[(r, c)] = 1;
        }
        offset += d;
    }
    m
}

/// `Σ_i μ'_i ν'_i`, which equals `Σ_{j,k} min(μ_j, ν_k)`.
pub fn min_sum(mu: &Partition, nu: &Partition) -> usize {
    mu.dual().parts.iter().zip(nu.dual().parts.iter()).map(|(a, b)| a * b).sum()
}

/// `rank(J_μ ⊗ I_n + I_m ⊗ J_ν) = mn − Σ_i μ'_i ν'_i`.
pub fn kron_jordan_rank(mu: &Partition, nu: &Partition) -> usize {
    mu.weight() * nu.weight() - min_sum(mu, nu)
}
