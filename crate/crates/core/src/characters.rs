//! Levi decomposition of `∧m₁` for graded parabolics of `gl(m,n)` and the
//! dimension identity it must satisfy.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::algebra::AlgebraSpec;
use crate::error::{Error, Result};
use crate::parabolic::GradedParabolic;

/// Finitely supported integer combination of torus weights.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightPolynomial {
    vars: usize,
    terms: BTreeMap<Vec<i64>, i64>,
}

impl WeightPolynomial {
    pub fn zero(vars: usize) -> Self {
        WeightPolynomial { vars, terms: BTreeMap::new() }
    }

    pub fn one(vars: usize) -> Self {
        Self::monomial(vec![0; vars], 1)
    }

    pub fn monomial(weight: Vec<i64>, coeff: i64) -> Self {
        let mut p = Self::zero(weight.len());
        p.add_term(weight, coeff);
        p
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn add_term(&mut self, weight: Vec<i64>, coeff: i64) {
        assert_eq!(weight.len(), self.vars);
        if coeff == 0 {
            return;
        }
        let entry = self.terms.entry(weight).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.terms.retain(|_, c| *c != 0);
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: i64) {
        for (w, &k) in &other.terms {
            self.add_term(w.clone(), c * k);
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.vars, other.vars);
        let mut out = Self::zero(self.vars);
        for (a, &x) in &self.terms {
            for (b, &y) in &other.terms {
                out.add_term(a.iter().zip(b).map(|(i, j)| i + j).collect(), x * y);
            }
        }
        out
    }

    /// Uniform twist by a one-dimensional character.
    pub fn shifted(&self, offset: &[i64]) -> Self {
        assert_eq!(offset.len(), self.vars);
        WeightPolynomial {
            vars: self.vars,
            terms: self
                .terms
                .iter()
                .map(|(w, &c)| (w.iter().zip(offset).map(|(a, b)| a + b).collect(), c))
                .collect(),
        }
    }

    pub fn coeff(&self, weight: &[i64]) -> i64 {
        self.terms.get(weight).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sum of coefficients: the dimension of the module.
    pub fn dimension(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<i64>, i64)> {
        self.terms.iter().map(|(w, &c)| (w, c))
    }

    /// Largest weight in lexicographic order of coordinates.
    fn lex_max(&self) -> Option<(&Vec<i64>, i64)> {
        self.terms.iter().next_back().map(|(w, &c)| (w, c))
    }
}

/// Coordinate blocks of the even Levi `l₀ = ⊕ gl(r_k) ⊕ gl(s_k)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Levi {
    pub vars: usize,
    pub blocks: Vec<Vec<usize>>,
}

impl Levi {
    pub fn of(p: &GradedParabolic) -> Result<Self> {
        let AlgebraSpec::Gl { m, .. } = *p.spec() else {
            return Err(Error::UnsupportedFamily(format!("{} parabolic", p.spec())));
        };
        let mut blocks = Vec::new();
        for level in 1..=p.t() {
            for (lo, hi) in [(0, m), (m, p.degrees.len())] {
                let block: Vec<usize> = (lo..hi).filter(|&i| p.degrees[i] == level).collect();
                if !block.is_empty() {
                    blocks.push(block);
                }
            }
        }
        Ok(Levi { vars: p.degrees.len(), blocks })
    }

    /// Restriction of a weight to each block, in increasing index order.
    pub fn split(&self, weight: &[i64]) -> LeviHighestWeight {
        LeviHighestWeight(self.blocks.iter().map(|b| b.iter().map(|&i| weight[i]).collect()).collect())
    }

    pub fn is_dominant(&self, weight: &[i64]) -> bool {
        self.split(weight).is_dominant()
    }
}

/// One weakly decreasing tuple per Levi block.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LeviHighestWeight(pub Vec<Vec<i64>>);

impl LeviHighestWeight {
    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|b| b.windows(2).all(|w| w[0] >= w[1]))
    }
}

impl fmt::Display for LeviHighestWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, block) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ";")?;
            }
            for (i, x) in block.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
        }
        write!(f, ")")
    }
}

/// Character of `∧m₁`: one factor `1 + e^{ε_a − ε_b}` for every odd `e_ab`
/// with `σ(a) > σ(b)`.
pub fn exterior_character(p: &GradedParabolic) -> Result<WeightPolynomial> {
    let AlgebraSpec::Gl { m, .. } = *p.spec() else {
        return Err(Error::UnsupportedFamily(format!("{} parabolic", p.spec())));
    };
    let vars = p.degrees.len();
    let mut chi = WeightPolynomial::one(vars);
    for a in 0..vars {
        for b in 0..vars {
            if (a < m) != (b < m) && p.degrees[a] > p.degrees[b] {
                let mut w = vec![0; vars];
                w[a] += 1;
                w[b] -= 1;
                let mut factor = WeightPolynomial::one(vars);
                factor.add_term(w, 1);
                chi = chi.mul(&factor);
            }
        }
    }
    Ok(chi)
}

fn complete_homogeneous(k: i64, vars: usize) -> WeightPolynomial {
    let mut out = WeightPolynomial::zero(vars);
    if k < 0 || vars == 0 {
        if k == 0 {
            out.add_term(Vec::new(), 1);
        }
        return out;
    }
    fn go(rest: i64, cur: &mut Vec<i64>, vars: usize, out: &mut WeightPolynomial) {
        if cur.len() + 1 == vars {
            cur.push(rest);
            out.add_term(cur.clone(), 1);
            cur.pop();
            return;
        }
        for e in (0..=rest).rev() {
            cur.push(e);
            go(rest - e, cur, vars, out);
            cur.pop();
        }
    }
    go(k, &mut Vec::with_capacity(vars), vars, &mut out);
    out
}

fn permutations(n: usize) -> Vec<(Vec<usize>, i64)> {
    if n == 0 {
        return vec![(Vec::new(), 1)];
    }
    let mut out = Vec::new();
    for (perm, sign) in permutations(n - 1) {
        // insert n−1 at position i: moves it past n−1−i entries
        for i in 0..n {
            let mut p = perm.clone();
            p.insert(i, n - 1);
            let s = if (n - 1 - i).is_multiple_of(2) { sign } else { -sign };
            out.push((p, s));
        }
    }
    out
}

/// Schur polynomial `s_λ(x_1..x_r)` for weakly decreasing integer `λ`,
/// via Jacobi–Trudi after factoring out `(x_1⋯x_r)^{λ_r}`.
pub fn schur(lambda: &[i64]) -> WeightPolynomial {
    let r = lambda.len();
    let Some(&shift) = lambda.last() else {
        return WeightPolynomial::one(0);
    };
    let kappa: Vec<i64> = lambda.iter().map(|x| x - shift).filter(|&x| x > 0).collect();
    let l = kappa.len();
    let h: BTreeMap<i64, WeightPolynomial> = (0..=kappa.first().copied().unwrap_or(0) + l as i64)
        .map(|k| (k, complete_homogeneous(k, r)))
        .collect();
    let entry = |i: usize, j: usize| {
        let k = kappa[i] - i as i64 + j as i64;
        h.get(&k).cloned().unwrap_or_else(|| WeightPolynomial::zero(r))
    };
    let mut det = WeightPolynomial::zero(r);
    for (perm, sign) in permutations(l) {
        let mut term = WeightPolynomial::one(r);
        for (i, &j) in perm.iter().enumerate() {
            term = term.mul(&entry(i, j));
            if term.is_zero() {
                break;
            }
        }
        det.add_scaled(&term, sign);
    }
    if l == 0 {
        det = WeightPolynomial::one(r);
    }
    det.shifted(&vec![shift; r])
}

/// Irreducible `l₀` character with block highest weights `λ`.
pub fn levi_character(levi: &Levi, lambda: &LeviHighestWeight) -> Result<WeightPolynomial> {
    check_shape(levi, lambda)?;
    let mut chi = WeightPolynomial::one(levi.vars);
    for (block, part) in levi.blocks.iter().zip(&lambda.0) {
        let local = schur(part);
        let mut embedded = WeightPolynomial::zero(levi.vars);
        for (w, c) in local.iter() {
            let mut full = vec![0; levi.vars];
            for (&i, &x) in block.iter().zip(w) {
                full[i] = x;
            }
            embedded.add_term(full, c);
        }
        chi = chi.mul(&embedded);
    }
    Ok(chi)
}

fn check_shape(levi: &Levi, lambda: &LeviHighestWeight) -> Result<()> {
    let shape_ok = levi.blocks.len() == lambda.0.len()
        && levi.blocks.iter().zip(&lambda.0).all(|(b, l)| b.len() == l.len());
    if !shape_ok {
        return Err(Error::InvalidSpec(format!("weight {lambda} does not match the Levi blocks")));
    }
    if !lambda.is_dominant() {
        return Err(Error::NotDominant);
    }
    Ok(())
}

/// Weyl dimension `∏_{i<j} (λ_i − λ_j + j − i)/(j − i)` over all blocks.
pub fn levi_weyl_dim(levi: &Levi, lambda: &LeviHighestWeight) -> Result<u64> {
    check_shape(levi, lambda)?;
    let mut num = BigInt::from(1);
    let mut den = BigInt::from(1);
    for part in &lambda.0 {
        for i in 0..part.len() {
            for j in i + 1..part.len() {
                let gap = (j - i) as i64;
                num *= part[i] - part[j] + gap;
                den *= gap;
            }
        }
    }
    (num / den).to_u64().ok_or_else(|| Error::Overflow("Weyl dimension".into()))
}

/// Splits a genuine `l₀` character into irreducibles by repeatedly removing
/// the character of its lexicographically largest weight. Positive roots of
/// each block raise an earlier coordinate, so that weight is maximal.
pub fn decompose(chi: &WeightPolynomial, levi: &Levi) -> Result<Vec<(LeviHighestWeight, u64)>> {
    let mut rest = chi.clone();
    let mut out = Vec::new();
    while let Some((leader, mult)) = rest.lex_max() {
        let leader = leader.clone();
        if mult < 0 {
            return Err(Error::NegativeResidual(format!("weight {leader:?} has coefficient {mult}")));
        }
        let lambda = levi.split(&leader);
        if !lambda.is_dominant() {
            return Err(Error::NonDominantLeader(format!("{lambda}")));
        }
        rest.add_scaled(&levi_character(levi, &lambda)?, -mult);
        if let Some((w, c)) = rest.iter().find(|(_, c)| *c < 0) {
            return Err(Error::NegativeResidual(format!("weight {w:?} has coefficient {c}")));
        }
        out.push((lambda, mult as u64));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summand {
    pub lambda: LeviHighestWeight,
    pub multiplicity: u64,
    pub dim: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimIdentityReport {
    pub summands: Vec<Summand>,
    /// Number of irreducible layers, counted with multiplicity.
    pub filtration_length: u64,
    pub total: u64,
    pub expected: u64,
    pub holds: bool,
}

/// Checks `Σ dim L_S(λ_i) = 2^{c₁}` for the trivial inducing module.
pub fn check_dim_identity(p: &GradedParabolic) -> Result<DimIdentityReport> {
    let levi = Levi::of(p)?;
    let chi = exterior_character(p)?;
    let mut summands = Vec::new();
    for (lambda, multiplicity) in decompose(&chi, &levi)? {
        let dim = levi_weyl_dim(&levi, &lambda)?;
        summands.push(Summand { lambda, multiplicity, dim });
    }
    let total = summands.iter().map(|s| s.multiplicity * s.dim).sum();
    let expected = 1u64
        .checked_shl(p.c1 as u32)
        .filter(|_| p.c1 < 64)
        .ok_or_else(|| Error::Overflow(format!("2^{}", p.c1)))?;
    let filtration_length = summands.iter().map(|s| s.multiplicity).sum();
    Ok(DimIdentityReport { summands, filtration_length, total, expected, holds: total == expected })
}
