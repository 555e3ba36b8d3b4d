//! Graded parabolics of `gl(m,n)` and of the `Q` family, their Richardson
//! orbits, the goodness criterion and the induced-module numerics.
//!
//! A parabolic is given by a degree map `σ` on the natural basis indices:
//! for `gl(m,n)` the indices `1..m` (even) followed by `m+1..m+n` (odd); for
//! `Q(n)` only the even indices, the odd copy carrying the same degrees.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::algebra::AlgebraSpec;
use crate::error::{Error, Result};
use crate::invariants::{ell, epsilon, k_formula};
use crate::label::OrbitLabel;
use crate::partition::{min_sum, Partition};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedParabolic {
    #[serde(skip)]
    spec: AlgebraSpec,
    pub degrees: Vec<usize>,
    pub r: Vec<usize>,
    pub s: Vec<usize>,
    pub c0: usize,
    pub c1: usize,
}

fn pair_sum(v: &[usize]) -> usize {
    let total: usize = v.iter().sum();
    let squares: usize = v.iter().map(|x| x * x).sum();
    (total * total - squares) / 2
}

pub fn parabolic_from_degrees(spec: &AlgebraSpec, degrees: &[usize]) -> Result<GradedParabolic> {
    spec.validate()?;
    let not_borel = |msg: alloc::string::String| Err(Error::NotBorelCompatible(msg));
    let (m, n, mirrored) = match *spec {
        AlgebraSpec::Gl { m, n } => (m, n, false),
        AlgebraSpec::Q { n } | AlgebraSpec::Sq { n } => (n, 0, true),
        _ => return Err(Error::UnsupportedFamily(format!("no graded parabolics for {spec}"))),
    };
    if degrees.len() != m + n {
        return not_borel(format!("expected {} degrees, got {}", m + n, degrees.len()));
    }
    if degrees.contains(&0) {
        return not_borel("degrees start at 1".into());
    }
    for (lo, hi) in [(0, m), (m, m + n)] {
        if degrees[lo..hi].windows(2).any(|w| w[0] > w[1]) {
            return not_borel(format!("degrees must not decrease within indices {}..{}", lo + 1, hi));
        }
    }
    let t = degrees.iter().copied().max().unwrap_or(1);
    let mut r = vec![0; t];
    let mut s = vec![0; t];
    for (i, &d) in degrees.iter().enumerate() {
        if i < m {
            r[d - 1] += 1;
        } else {
            s[d - 1] += 1;
        }
    }
    let (c0, c1) = if mirrored {
        s.clone_from(&r);
        (pair_sum(&r), pair_sum(&r))
    } else {
        let rs: usize = r.iter().zip(&s).map(|(a, b)| a * b).sum();
        (pair_sum(&r) + pair_sum(&s), m * n - rs)
    };
    Ok(GradedParabolic { spec: spec.clone(), degrees: degrees.to_vec(), r, s, c0, c1 })
}

impl GradedParabolic {
    pub fn spec(&self) -> &AlgebraSpec {
        &self.spec
    }

    pub fn t(&self) -> usize {
        self.r.len()
    }

    fn is_gl(&self) -> bool {
        matches!(self.spec(), AlgebraSpec::Gl { .. })
    }

    /// The Levi factor `⊕ gl(r_k, s_k)`, one pair per level.
    pub fn levi(&self) -> Vec<(usize, usize)> {
        self.r.iter().copied().zip(self.s.iter().copied()).collect()
    }
}

/// Sorted into a partition and dualized: the block sizes are the columns.
fn dual_of_sorted(v: &[usize]) -> Partition {
    Partition::from_unsorted(v.iter().copied().filter(|&x| x > 0).collect()).dual()
}

pub fn richardson_orbit(p: &GradedParabolic) -> OrbitLabel {
    let mu = dual_of_sorted(&p.r);
    if p.is_gl() {
        OrbitLabel::pair(mu, dual_of_sorted(&p.s))
    } else {
        OrbitLabel::single(mu)
    }
}

/// Whether one permutation sorts `r` and `s` into decreasing order at once.
pub fn common_sorting_permutation_exists(r: &[usize], s: &[usize]) -> bool {
    let mut pairs: Vec<(usize, usize)> = r.iter().copied().zip(s.iter().copied()).collect();
    pairs.sort_by(|a, b| b.cmp(a));
    pairs.windows(2).all(|w| w[0].1 >= w[1].1)
}

/// The three independent goodness computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoodnessChecks {
    pub permutation: bool,
    pub sum: bool,
    pub definition: bool,
}

impl GoodnessChecks {
    pub fn consistent(&self) -> bool {
        self.permutation == self.sum && self.sum == self.definition
    }
}

pub fn goodness_checks(p: &GradedParabolic) -> GoodnessChecks {
    let label = richardson_orbit(p);
    let k = k_formula(p.spec(), &label).expect("Richardson label is valid");
    let definition = p.c1 == ell(k);
    match &label {
        OrbitLabel::Pair { mu, nu, .. } => {
            let rs: usize = p.r.iter().zip(&p.s).map(|(a, b)| a * b).sum();
            GoodnessChecks {
                permutation: common_sorting_permutation_exists(&p.r, &p.s),
                sum: rs == min_sum(mu, nu),
                definition,
            }
        }
        OrbitLabel::Single { mu } => {
            // Q is always good; the quotient of the derived algebra needs an odd part.
            let predicate = match p.spec() {
                AlgebraSpec::Sq { .. } => epsilon(mu) == 0,
                _ => true,
            };
            GoodnessChecks { permutation: predicate, sum: predicate, definition }
        }
        OrbitLabel::Triple { .. } => unreachable!("no gamma parabolics"),
    }
}

pub fn is_good(p: &GradedParabolic) -> bool {
    goodness_checks(p).permutation
}

/// Levels filled in order so that `r = μ′` and `s = ν′`.
pub fn find_good_parabolic(mu: &Partition, nu: &Partition) -> Result<GradedParabolic> {
    let (m, n) = (mu.weight(), nu.weight());
    let mut degrees = Vec::with_capacity(m + n);
    for lambda in [mu, nu] {
        for (level, &count) in lambda.dual().parts().iter().enumerate() {
            degrees.extend(core::iter::repeat_n(level + 1, count));
        }
    }
    parabolic_from_degrees(&AlgebraSpec::Gl { m, n }, &degrees)
}

/// Q-family analogue: a single degree sequence with `r = μ′`.
pub fn find_good_parabolic_q(spec: &AlgebraSpec, mu: &Partition) -> Result<GradedParabolic> {
    let mut degrees = Vec::with_capacity(mu.weight());
    for (level, &count) in mu.dual().parts().iter().enumerate() {
        degrees.extend(core::iter::repeat_n(level + 1, count));
    }
    parabolic_from_degrees(spec, &degrees)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InducedNumerics {
    pub c0: usize,
    pub c1: usize,
    /// Gelfand–Kirillov dimension of the induced module.
    pub d: usize,
    /// Multiplicity `2^{c₁} · dim L_T`.
    pub e: u64,
    pub goldie: u64,
    pub good: bool,
    pub k: usize,
    pub ell: usize,
    /// `2^ℓ · dim L_T`, the lower bound for `e`.
    pub bound: u64,
}

impl InducedNumerics {
    pub fn attains_bound(&self) -> bool {
        self.e == self.bound
    }
}

fn pow2_times(exp: usize, factor: u64) -> Result<u64> {
    u32::try_from(exp)
        .ok()
        .and_then(|e| 1u64.checked_shl(e).filter(|_| e < 64))
        .and_then(|p| p.checked_mul(factor))
        .ok_or_else(|| Error::Overflow(format!("2^{exp}·{factor} exceeds 64 bits")))
}

pub fn induced_numerics(p: &GradedParabolic, dim_lt: u64) -> Result<InducedNumerics> {
    if dim_lt == 0 {
        return Err(Error::InvalidSpec("inducing module dimension must be positive".into()));
    }
    let k = k_formula(p.spec(), &richardson_orbit(p))?;
    let e = pow2_times(p.c1, dim_lt)?;
    Ok(InducedNumerics {
        c0: p.c0,
        c1: p.c1,
        d: p.c0,
        e,
        goldie: e,
        good: is_good(p),
        k,
        ell: ell(k),
        bound: pow2_times(ell(k), dim_lt)?,
    })
}

/// Every Borel-compatible degree map with at most `m + n` levels, none of
/// them empty, for `gl(m,n)`.
pub fn all_gl_degree_maps(m: usize, n: usize) -> Vec<Vec<usize>> {
    fn nondecreasing(len: usize, max: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(len);
        fn go(len: usize, lo: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == len {
                out.push(cur.clone());
                return;
            }
            for d in lo..=max {
                cur.push(d);
                go(len, d, max, cur, out);
                cur.pop();
            }
        }
        go(len, 1, max, &mut cur, &mut out);
        out
    }
    let t = m + n;
    let mut out = Vec::new();
    for a in nondecreasing(m, t) {
        for b in nondecreasing(n, t) {
            let mut degrees = a.clone();
            degrees.extend(b);
            let max = *degrees.iter().max().unwrap_or(&1);
            if (1..=max).all(|lvl| degrees.contains(&lvl)) {
                out.push(degrees);
            }
        }
    }
    out
}
