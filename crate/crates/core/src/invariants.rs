//! Closed-form values of `k(O)` per family, the derived invariants, and the
//! harness comparing them with the rank oracle.

use alloc::borrow::Cow;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::algebra::{build_algebra, realize, AlgebraSpec, Family, GZeroElement, SuperAlgebra};
use crate::error::{Error, Result};
use crate::label::{OrbitLabel, VeryEvenTag};
use crate::partition::{enumerate, min_sum, Partition, PartitionClass};

pub fn ell(k: usize) -> usize {
    k.div_ceil(2)
}

pub fn epsilon(mu: &Partition) -> usize {
    usize::from(mu.all_parts_even())
}

/// A row of the exceptional orbit tables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionalRow {
    /// Orthogonal partition of 7 for F(4), whose image labels the orbit.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eta: Option<Partition>,
    pub mu: Partition,
    pub dim: usize,
}

fn parse(s: &str) -> Partition {
    s.parse().expect("static table entry")
}

/// Nilpotent orbits of `g₂ ⊂ gl(7)` by Jordan type, with dimensions.
pub fn g3_table() -> Vec<ExceptionalRow> {
    [("1^7", 0), ("2^2,1^3", 6), ("3,2^2", 8), ("3^2,1", 10), ("7", 12)]
        .into_iter()
        .map(|(mu, dim)| ExceptionalRow { eta: None, mu: parse(mu), dim })
        .collect()
}

/// Nilpotent orbits of `so(7)` with their Jordan type on the spin module.
pub fn f4_table() -> Vec<ExceptionalRow> {
    [
        ("1^7", "1^8", 0),
        ("2^2,1^3", "2^2,1^4", 8),
        ("3,1^4", "2^4", 10),
        ("3,2^2", "3,2^2,1", 12),
        ("3^2,1", "3^2,1^2", 14),
        ("5,1^2", "4^2", 16),
        ("7", "7,1", 18),
    ]
    .into_iter()
    .map(|(eta, mu, dim)| ExceptionalRow { eta: Some(parse(eta)), mu: parse(mu), dim })
    .collect()
}

/// Gamma orbits keyed by the multiset of `sl(2)` partitions: (key, dim, k).
pub fn gamma_table() -> Vec<([Partition; 3], usize, usize)> {
    let (two, ones) = (Partition::single(2), Partition::ones(2));
    alloc::vec![
        ([two.clone(), two.clone(), two.clone()], 6, 5),
        ([two.clone(), two.clone(), ones.clone()], 4, 4),
        ([two, ones.clone(), ones.clone()], 2, 4),
        ([ones.clone(), ones.clone(), ones], 0, 0),
    ]
}

fn exceptional(spec: &AlgebraSpec) -> Option<(Vec<ExceptionalRow>, usize)> {
    match spec {
        AlgebraSpec::G3 => Some((g3_table(), 14)),
        AlgebraSpec::F4 => Some((f4_table(), 16)),
        _ => None,
    }
}

fn exceptional_row(spec: &AlgebraSpec, mu: &Partition, nu: &Partition) -> Result<ExceptionalRow> {
    let (table, _) = exceptional(spec).expect("exceptional family");
    if nu.weight() != 2 {
        return Err(Error::InvalidLabel(format!("{nu} is not a partition of 2")));
    }
    table
        .into_iter()
        .find(|row| &row.mu == mu)
        .ok_or_else(|| Error::InvalidLabel(format!("{mu} is not an orbit label of {spec}")))
}

/// Every valid orbit label of `spec`, in a fixed order.
pub fn labels(spec: &AlgebraSpec) -> Result<Vec<OrbitLabel>> {
    spec.validate()?;
    let all = |w| enumerate(w, PartitionClass::All);
    let mut out = Vec::new();
    match *spec {
        AlgebraSpec::Gl { m, n } | AlgebraSpec::Sl { m, n } => {
            for mu in all(m) {
                for nu in all(n) {
                    out.push(OrbitLabel::pair(mu.clone(), nu));
                }
            }
        }
        AlgebraSpec::Osp { m, n } => {
            for mu in enumerate(m, PartitionClass::BD) {
                for nu in enumerate(n, PartitionClass::C) {
                    if mu.is_very_even() {
                        for tag in [VeryEvenTag::I, VeryEvenTag::II] {
                            out.push(OrbitLabel::Pair { mu: mu.clone(), nu: nu.clone(), tag: Some(tag) });
                        }
                    } else {
                        out.push(OrbitLabel::pair(mu.clone(), nu));
                    }
                }
            }
        }
        AlgebraSpec::Q { n } | AlgebraSpec::Sq { n } => out.extend(all(n).into_iter().map(OrbitLabel::single)),
        AlgebraSpec::P { n } => out.extend(all(n + 1).into_iter().map(OrbitLabel::single)),
        AlgebraSpec::Gamma { .. } => {
            let p2 = all(2);
            for a in &p2 {
                for b in &p2 {
                    for c in &p2 {
                        out.push(OrbitLabel::triple(a.clone(), b.clone(), c.clone()));
                    }
                }
            }
        }
        AlgebraSpec::G3 | AlgebraSpec::F4 => {
            let (table, _) = exceptional(spec).expect("exceptional family");
            for row in table {
                for nu in all(2) {
                    out.push(OrbitLabel::pair(row.mu.clone(), nu));
                }
            }
        }
    }
    Ok(out)
}

/// `2 Σ_{i<N} (N − i) b_i`, where `b_i` is the subdiagonal entry of the
/// lower Jordan matrix in row `i+1`: zero exactly at the partial sums of `μ`.
pub fn subdiagonal_weight(mu: &Partition) -> usize {
    let n = mu.weight();
    let mut cuts = Vec::new();
    let mut acc = 0;
    for &p in mu.parts() {
        acc += p;
        cuts.push(acc);
    }
    (1..n).filter(|i| !cuts.contains(i)).map(|i| 2 * (n - i)).sum()
}

/// Closed-form `k` of the orbit `label` in `spec`.
pub fn k_formula(spec: &AlgebraSpec, label: &OrbitLabel) -> Result<usize> {
    spec.validate()?;
    label.validate(spec)?;
    let k = match (spec, label) {
        (AlgebraSpec::Gl { m, n } | AlgebraSpec::Sl { m, n }, OrbitLabel::Pair { mu, nu, .. }) => {
            2 * (m * n - min_sum(mu, nu))
        }
        (AlgebraSpec::Osp { m: 1, .. }, OrbitLabel::Pair { nu, .. }) => nu.jordan_rank(),
        (AlgebraSpec::Osp { m: 2, .. }, OrbitLabel::Pair { nu, .. }) => 2 * nu.jordan_rank(),
        (AlgebraSpec::Osp { .. }, OrbitLabel::Pair { mu, nu, .. }) => spec.odd_dim() - min_sum(mu, nu),
        (AlgebraSpec::G3 | AlgebraSpec::F4, OrbitLabel::Pair { mu, nu, .. }) => {
            exceptional_row(spec, mu, nu)?;
            spec.odd_dim() - min_sum(mu, nu)
        }
        (AlgebraSpec::Q { n }, OrbitLabel::Single { mu }) => n * n - mu.sum_of_squared_duals(),
        (AlgebraSpec::Sq { n }, OrbitLabel::Single { mu }) => {
            n * n - mu.sum_of_squared_duals() - 2 * epsilon(mu)
        }
        (AlgebraSpec::P { .. }, OrbitLabel::Single { mu }) => subdiagonal_weight(mu),
        (AlgebraSpec::Gamma { .. }, label) => {
            let key = label.gamma_key().expect("validated triple");
            gamma_table().into_iter().find(|(k, _, _)| *k == key).expect("all triples tabulated").2
        }
        _ => unreachable!("label validated against spec"),
    };
    Ok(k)
}

/// Rank oracle for one spec. Families whose realization does not depend on
/// the orbit share a single algebra across labels.
#[derive(Clone, Debug)]
pub struct Oracle {
    spec: AlgebraSpec,
    shared: Option<SuperAlgebra>,
}

/// What the oracle measures at a representative.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleData {
    pub k: usize,
    pub even_centralizer: usize,
    pub odd_centralizer: usize,
    pub even_dim: usize,
    pub odd_dim: usize,
}

impl Oracle {
    pub fn new(spec: &AlgebraSpec) -> Result<Self> {
        spec.validate()?;
        let shared = match spec.family() {
            Family::G3 | Family::F4 => {
                return Err(Error::UnsupportedFamily(format!("{spec} has no matrix realization")))
            }
            Family::Osp => None,
            _ => Some(build_algebra(spec)?),
        };
        Ok(Oracle { spec: spec.clone(), shared })
    }

    pub fn spec(&self) -> &AlgebraSpec {
        &self.spec
    }

    pub fn realize(&self, label: &OrbitLabel) -> Result<(Cow<'_, SuperAlgebra>, GZeroElement)> {
        match &self.shared {
            Some(alg) => {
                let rep = crate::algebra::orbit_representative(&self.spec, label)?;
                Ok((Cow::Borrowed(alg), alg.element(rep.matrix)?))
            }
            None => {
                let (alg, x) = realize(&self.spec, label)?;
                Ok((Cow::Owned(alg), x))
            }
        }
    }

    pub fn measure(&self, label: &OrbitLabel) -> Result<OracleData> {
        let (alg, x) = self.realize(label)?;
        let k = alg.evaluate_form(&x)?.rank();
        let (c0, c1) = alg.centralizer_dims(&x)?;
        Ok(OracleData {
            k,
            even_centralizer: c0,
            odd_centralizer: c1,
            even_dim: alg.even_dim(),
            odd_dim: alg.odd_dim(),
        })
    }

    pub fn k(&self, label: &OrbitLabel) -> Result<usize> {
        let (alg, x) = self.realize(label)?;
        Ok(alg.evaluate_form(&x)?.rank())
    }
}

/// Exact rank of `M(x)` at the representative of `label`.
pub fn k_oracle(spec: &AlgebraSpec, label: &OrbitLabel) -> Result<usize> {
    Oracle::new(spec)?.k(label)
}

/// `dim G₀·x` as `dim g₀ − dim g₀ˣ`.
pub fn even_orbit_dim(spec: &AlgebraSpec, label: &OrbitLabel) -> Result<usize> {
    let data = Oracle::new(spec)?.measure(label)?;
    Ok(data.even_dim - data.even_centralizer)
}

/// Orbit dimension for the formula-only families: the table entry plus the
/// `sl(2)` orbit dimension.
pub fn exceptional_orbit_dim(spec: &AlgebraSpec, label: &OrbitLabel) -> Result<usize> {
    match (spec, label) {
        (AlgebraSpec::G3 | AlgebraSpec::F4, OrbitLabel::Pair { mu, nu, .. }) => {
            let row = exceptional_row(spec, mu, nu)?;
            Ok(row.dim + if nu.largest() == 2 { 2 } else { 0 })
        }
        _ => Err(Error::UnsupportedFamily(format!("{spec} is not tabulated"))),
    }
}

/// Whether the superdimension statement is covered by an even nondegenerate
/// invariant form on all of `g`.
pub fn within_superdim_hypothesis(spec: &AlgebraSpec) -> bool {
    match *spec {
        AlgebraSpec::Gl { .. } | AlgebraSpec::Osp { .. } | AlgebraSpec::G3 | AlgebraSpec::F4 => true,
        AlgebraSpec::Sl { m, n } => m != n,
        _ => false,
    }
}

/// Superdimension `(dim G₀·x, k)` of the orbit `G·x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Superdim {
    pub even: usize,
    pub odd: usize,
    /// Set when the family lacks the even invariant form the statement assumes.
    pub outside_hypothesis: bool,
}

pub fn superdimension(spec: &AlgebraSpec, label: &OrbitLabel) -> Result<Superdim> {
    let report = invariant_report(spec, label, true)?;
    Ok(Superdim {
        even: report.even_orbit_dim,
        odd: report.k,
        outside_hypothesis: report.outside_hypothesis,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub k: usize,
    pub ell: usize,
    pub even_orbit_dim: usize,
    pub superdim: (usize, usize),
    pub oracle_k: Option<usize>,
    /// `dim g₁ − dim g₁ˣ`, reported when the oracle ran.
    pub odd_codim: Option<usize>,
    pub agreement: bool,
    pub outside_hypothesis: bool,
}

/// All invariants of one orbit. The oracle runs when asked and available;
/// the even orbit dimension always comes from a centralizer or the tables.
pub fn invariant_report(spec: &AlgebraSpec, label: &OrbitLabel, with_oracle: bool) -> Result<InvariantReport> {
    let oracle = if spec.family().is_realizable() { Some(Oracle::new(spec)?) } else { None };
    invariant_report_with(spec, oracle.as_ref(), label, with_oracle)
}

/// Same as [`invariant_report`], reusing a prebuilt oracle for `spec`.
pub fn invariant_report_with(
    spec: &AlgebraSpec,
    oracle: Option<&Oracle>,
    label: &OrbitLabel,
    with_oracle: bool,
) -> Result<InvariantReport> {
    let k = k_formula(spec, label)?;
    let (even, oracle) = if let Some(oracle) = oracle {
        let data = oracle.measure(label)?;
        (data.even_dim - data.even_centralizer, with_oracle.then_some(data))
    } else {
        (exceptional_orbit_dim(spec, label)?, None)
    };
    let oracle_k = oracle.map(|d| d.k);
    let odd_codim = oracle.map(|d| d.odd_dim - d.odd_centralizer);
    let outside_hypothesis = !within_superdim_hypothesis(spec);
    let mut agreement = oracle_k.is_none_or(|o| o == k);
    if !outside_hypothesis {
        agreement &= odd_codim.is_none_or(|c| c == k);
    }
    Ok(InvariantReport {
        k,
        ell: ell(k),
        even_orbit_dim: even,
        superdim: (even, k),
        oracle_k,
        odd_codim,
        agreement,
        outside_hypothesis,
    })
}

/// One formula-versus-oracle comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationRow {
    pub family: Family,
    pub params: String,
    pub label: String,
    pub k_formula: usize,
    pub k_oracle: usize,
    pub agree: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub rows: Vec<VerificationRow>,
}

impl VerificationReport {
    pub fn disagreements(&self) -> impl Iterator<Item = &VerificationRow> {
        self.rows.iter().filter(|r| !r.agree)
    }

    pub fn all_agree(&self) -> bool {
        self.rows.iter().all(|r| r.agree)
    }
}

/// Parameter string for reports, e.g. `m=2,n=1` or `sigma=1,1,-2`.
pub fn spec_params(spec: &AlgebraSpec) -> String {
    match spec {
        AlgebraSpec::Gl { m, n } | AlgebraSpec::Sl { m, n } | AlgebraSpec::Osp { m, n } => {
            format!("m={m},n={n}")
        }
        AlgebraSpec::Q { n } | AlgebraSpec::Sq { n } | AlgebraSpec::P { n } => format!("n={n}"),
        AlgebraSpec::Gamma { sigma } => format!("sigma={},{},{}", sigma[0], sigma[1], sigma[2]),
        AlgebraSpec::G3 | AlgebraSpec::F4 => String::new(),
    }
}

pub fn verify_label(oracle: &Oracle, label: &OrbitLabel) -> Result<VerificationRow> {
    let spec = oracle.spec();
    let k_formula = k_formula(spec, label)?;
    let k_oracle = oracle.k(label)?;
    Ok(VerificationRow {
        family: spec.family(),
        params: spec_params(spec),
        label: label.to_string(),
        k_formula,
        k_oracle,
        agree: k_formula == k_oracle,
    })
}

/// Sweeps every label of every spec, in order.
pub fn verify_family(specs: &[AlgebraSpec]) -> Result<VerificationReport> {
    let mut rows = Vec::new();
    for spec in specs {
        let oracle = Oracle::new(spec)?;
        for label in labels(spec)? {
            rows.push(verify_label(&oracle, &label)?);
        }
    }
    Ok(VerificationReport { rows })
}
