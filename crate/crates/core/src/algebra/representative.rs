//! Explicit nilpotent representatives and the Jordan-type oracle.

use alloc::format;
use alloc::vec::Vec;

use super::{build_with_forms, AlgebraSpec, GZeroElement, SuperAlgebra};
use crate::error::{Error, Result};
use crate::label::{OrbitLabel, VeryEvenTag};
use crate::linalg::{rat, Matrix, Rational, SparseMatrix};
use crate::partition::{jordan_matrix, Partition, Placement};

/// Gram matrices of the orthosymplectic realization: `G₁` symmetric on `V₁`,
/// `G₂` skew on `V₂`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OspForms {
    pub g1: Matrix<Rational>,
    pub g2: Matrix<Rational>,
}

impl OspForms {
    /// Forms adapted to the zero orbit: `−I` on `V₁`, hyperbolic on `V₂`.
    pub fn zero_orbit(m: usize, n: usize) -> Self {
        let (g1, _) = adapted(&Partition::ones(m), true);
        let (g2, _) = adapted(&Partition::ones(n), false);
        OspForms { g1: g1.to_dense(), g2: g2.to_dense() }
    }
}

/// A nilpotent element of `g₀` as an ambient matrix, plus the forms it is
/// adapted to when the family needs them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representative {
    pub matrix: SparseMatrix,
    pub forms: Option<OspForms>,
}

fn jordan(mu: &Partition) -> SparseMatrix {
    SparseMatrix::from_int(&jordan_matrix(mu, Placement::AboveDiagonal))
}

fn antidiagonal_form(d: usize) -> SparseMatrix {
    let mut s = SparseMatrix::zero(d);
    for i in 0..d {
        // 1-based sign (−1)^i
        s.set(i, d - 1 - i, rat(if i % 2 == 0 { -1 } else { 1 }));
    }
    s
}

// Blockwise (form, x) for a partition of the given form type. Parts that can
// stand alone get the antidiagonal form; the rest come in pairs carrying
// diag(J_d, −J_dᵗ) and the hyperbolic form.
fn adapted(lambda: &Partition, symmetric: bool) -> (SparseMatrix, SparseMatrix) {
    let mut form = SparseMatrix::zero(0);
    let mut x = SparseMatrix::zero(0);
    for (d, mult) in lambda.multiplicities() {
        let single = symmetric == (d % 2 == 1);
        let jd = jordan(&Partition::single(d));
        if single {
            for _ in 0..mult {
                form = form.direct_sum(&antidiagonal_form(d));
                x = x.direct_sum(&jd);
            }
        } else {
            let sign = rat(if symmetric { 1 } else { -1 });
            let mut hyper = SparseMatrix::zero(2 * d);
            for i in 0..d {
                hyper.set(i, d + i, rat(1));
                hyper.set(d + i, i, sign.clone());
            }
            let block = jd.direct_sum(&jd.transpose().scaled(&rat(-1)));
            for _ in 0..mult / 2 {
                form = form.direct_sum(&hyper);
                x = x.direct_sum(&block);
            }
        }
    }
    (form, x)
}

fn preserves(x: &SparseMatrix, g: &SparseMatrix) -> bool {
    x.transpose().mul(g).plus(&g.mul(x)).is_zero()
}

/// An explicit nilpotent in the orbit named by `label`.
pub fn orbit_representative(spec: &AlgebraSpec, label: &OrbitLabel) -> Result<Representative> {
    spec.validate()?;
    label.validate(spec)?;
    let plain = |matrix| Ok(Representative { matrix, forms: None });
    match (spec, label) {
        (AlgebraSpec::Gl { .. } | AlgebraSpec::Sl { .. }, OrbitLabel::Pair { mu, nu, .. }) => {
            plain(jordan(mu).direct_sum(&jordan(nu)))
        }
        (AlgebraSpec::Osp { .. }, OrbitLabel::Pair { mu, nu, tag }) => {
            osp_representative(spec, label, mu, nu, *tag)
        }
        (AlgebraSpec::Q { .. } | AlgebraSpec::Sq { .. }, OrbitLabel::Single { mu }) => {
            plain(jordan(mu).direct_sum(&jordan(mu)))
        }
        (AlgebraSpec::P { .. }, OrbitLabel::Single { mu }) => {
            let j = jordan(mu);
            plain(j.direct_sum(&j.transpose().scaled(&rat(-1))))
        }
        (AlgebraSpec::Gamma { .. }, OrbitLabel::Triple { parts }) => {
            plain(jordan(&parts[0]).direct_sum(&jordan(&parts[1])).direct_sum(&jordan(&parts[2])))
        }
        _ => Err(Error::UnsupportedFamily(format!("{spec} has no matrix realization"))),
    }
}

fn osp_representative(
    spec: &AlgebraSpec,
    label: &OrbitLabel,
    mu: &Partition,
    nu: &Partition,
    tag: Option<VeryEvenTag>,
) -> Result<Representative> {
    let (g1, mut x1) = adapted(mu, true);
    let (g2, x2) = adapted(nu, false);
    if tag == Some(VeryEvenTag::II) {
        // A reflection swapping one hyperbolic pair has determinant −1 and
        // preserves the form, so it moves x into the other SO-orbit.
        let d = mu.largest();
        let mut swap = SparseMatrix::identity(mu.weight());
        swap.set(0, 0, rat(0));
        swap.set(d, d, rat(0));
        swap.set(0, d, rat(1));
        swap.set(d, 0, rat(1));
        debug_assert!(swap.transpose().mul(&g1).mul(&swap) == g1);
        x1 = swap.mul(&x1).mul(&swap);
    }
    if !preserves(&x1, &g1) || !preserves(&x2, &g2) {
        return Err(Error::SelfCheck(format!("{spec}: representative of {label} breaks the forms")));
    }
    let matrix = x1.direct_sum(&x2);
    if factor_jordan_types(spec, &matrix)? != [mu.clone(), nu.clone()] {
        return Err(Error::SelfCheck(format!("{spec}: representative of {label} has wrong Jordan type")));
    }
    Ok(Representative { matrix, forms: Some(OspForms { g1: g1.to_dense(), g2: g2.to_dense() }) })
}

/// Builds the realization adapted to `label` together with its representative.
pub fn realize(spec: &AlgebraSpec, label: &OrbitLabel) -> Result<(SuperAlgebra, GZeroElement)> {
    let rep = orbit_representative(spec, label)?;
    let alg = build_with_forms(spec, rep.forms)?;
    let x = alg.element(rep.matrix)?;
    Ok((alg, x))
}

// Diagonal blocks of the ambient matrix carrying each simple or gl factor in
// its defining representation.
fn factor_blocks(spec: &AlgebraSpec) -> Vec<(usize, usize)> {
    match *spec {
        AlgebraSpec::Gl { m, n } | AlgebraSpec::Sl { m, n } | AlgebraSpec::Osp { m, n } => {
            alloc::vec![(0, m), (m, n)]
        }
        AlgebraSpec::Q { n } | AlgebraSpec::Sq { n } => alloc::vec![(0, n)],
        AlgebraSpec::P { n } => alloc::vec![(0, n + 1)],
        AlgebraSpec::Gamma { .. } => alloc::vec![(0, 2), (2, 2), (4, 2)],
        AlgebraSpec::G3 | AlgebraSpec::F4 => Vec::new(),
    }
}

/// Jordan type of each factor's block of an ambient `g₀` matrix.
pub fn factor_jordan_types(spec: &AlgebraSpec, x: &SparseMatrix) -> Result<Vec<Partition>> {
    factor_blocks(spec)
        .into_iter()
        .map(|(off, size)| {
            let mut block = Matrix::zeros(size, size);
            for i in 0..size {
                for j in 0..size {
                    block[(i, j)] = x.get(off + i, off + j);
                }
            }
            jordan_type(&block)
        })
        .collect()
}

/// Jordan type of a nilpotent matrix from the ranks of its powers.
pub fn jordan_type(x: &Matrix<Rational>) -> Result<Partition> {
    assert!(x.is_square());
    let n = x.rows();
    let mut dual = Vec::new();
    let mut prev = n;
    let mut power = x.clone();
    while prev > 0 {
        let r = power.rank();
        if r == prev {
            return Err(Error::NotNilpotent);
        }
        dual.push(prev - r);
        prev = r;
        power = power.mul(x);
    }
    Ok(Partition::from_unsorted(dual).dual())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::build_algebra;
    use crate::linalg::inverse;
    use crate::partition::{enumerate, PartitionClass};
    use proptest::prelude::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn jordan_type_examples() {
        let j = jordan_matrix(&p("3,1"), Placement::AboveDiagonal).to_rational();
        assert_eq!(jordan_type(&j).unwrap(), p("3,1"));
        assert_eq!(jordan_type(&Matrix::zeros(4, 4)).unwrap(), Partition::ones(4));
        assert_eq!(jordan_type(&Matrix::identity(2)), Err(Error::NotNilpotent));
    }

    #[test]
    fn gl_representative_is_block_diagonal() {
        let rep = orbit_representative(&AlgebraSpec::Gl { m: 2, n: 1 }, &OrbitLabel::pair(p("2"), p("1")))
            .unwrap();
        let mut expected = SparseMatrix::zero(3);
        expected.set(0, 1, rat(1));
        assert_eq!(rep.matrix, expected);
    }

    #[test]
    fn osp32_representative_preserves_forms() {
        let spec = AlgebraSpec::Osp { m: 3, n: 2 };
        let rep = orbit_representative(&spec, &OrbitLabel::pair(p("3"), p("2"))).unwrap();
        let forms = rep.forms.clone().unwrap();
        let x = rep.matrix.to_dense();
        let x1 = SparseMatrix::from_dense(&Matrix::from_rows(
            (0..3).map(|i| (0..3).map(|j| x[(i, j)].clone()).collect()).collect(),
        ));
        let g1 = SparseMatrix::from_dense(&forms.g1);
        assert!(x1.transpose().mul(&g1).plus(&g1.mul(&x1)).is_zero());
        assert_eq!(factor_jordan_types(&spec, &rep.matrix).unwrap(), [p("3"), p("2")]);
    }

    #[test]
    fn very_even_tags_share_k() {
        let spec = AlgebraSpec::Osp { m: 4, n: 2 };
        let ranks: Vec<usize> = [VeryEvenTag::I, VeryEvenTag::II]
            .into_iter()
            .map(|tag| {
                let label = OrbitLabel::Pair { mu: p("2,2"), nu: p("2"), tag: Some(tag) };
                let (alg, x) = realize(&spec, &label).unwrap();
                alg.evaluate_form(&x).unwrap().rank()
            })
            .collect();
        assert_eq!(ranks[0], ranks[1]);
        let i = orbit_representative(&spec, &"(2^2)I;(2)".parse().unwrap()).unwrap();
        let ii = orbit_representative(&spec, &"(2^2)II;(2)".parse().unwrap()).unwrap();
        assert_ne!(i.matrix, ii.matrix);
    }

    #[test]
    fn wrong_labels_are_rejected() {
        let spec = AlgebraSpec::Osp { m: 3, n: 2 };
        let err = orbit_representative(&spec, &OrbitLabel::pair(p("2,1"), p("2")));
        assert!(matches!(err, Err(Error::InvalidLabel(_))));
        let err = orbit_representative(&AlgebraSpec::Q { n: 3 }, &OrbitLabel::single(p("2")));
        assert!(matches!(err, Err(Error::InvalidLabel(_))));
    }

    #[test]
    fn representatives_reproduce_labels() {
        for (m, n) in [(1, 2), (2, 2), (3, 4), (4, 2), (5, 4), (6, 2)] {
            let spec = AlgebraSpec::Osp { m, n };
            for mu in enumerate(m, PartitionClass::BD) {
                for nu in enumerate(n, PartitionClass::C) {
                    let tags: &[Option<VeryEvenTag>] = if mu.is_very_even() {
                        &[Some(VeryEvenTag::I), Some(VeryEvenTag::II)]
                    } else {
                        &[None]
                    };
                    for &tag in tags {
                        let label = OrbitLabel::Pair { mu: mu.clone(), nu: nu.clone(), tag };
                        let rep = orbit_representative(&spec, &label).unwrap();
                        assert_eq!(factor_jordan_types(&spec, &rep.matrix).unwrap(), [mu.clone(), nu.clone()]);
                    }
                }
            }
        }
        let spec = AlgebraSpec::Q { n: 4 };
        for mu in enumerate(4, PartitionClass::All) {
            let rep = orbit_representative(&spec, &OrbitLabel::single(mu.clone())).unwrap();
            assert_eq!(factor_jordan_types(&spec, &rep.matrix).unwrap(), [mu]);
        }
        let spec = AlgebraSpec::P { n: 2 };
        for mu in enumerate(3, PartitionClass::All) {
            let rep = orbit_representative(&spec, &OrbitLabel::single(mu.clone())).unwrap();
            assert_eq!(factor_jordan_types(&spec, &rep.matrix).unwrap(), [mu]);
        }
    }

    // Product of elementary integer matrices: unimodular with an exact inverse.
    fn unimodular(n: usize, ops: &[(usize, usize, i64)]) -> (SparseMatrix, SparseMatrix) {
        let mut g = Matrix::<Rational>::identity(n);
        for &(i, j, c) in ops {
            let (i, j) = (i % n, j % n);
            if i == j {
                continue;
            }
            let mut el = Matrix::<Rational>::identity(n);
            el[(i, j)] = rat(c);
            g = el.mul(&g);
        }
        let inv = inverse(&g).unwrap();
        (SparseMatrix::from_dense(&g), SparseMatrix::from_dense(&inv))
    }

    fn ops() -> impl Strategy<Value = Vec<(usize, usize, i64)>> {
        proptest::collection::vec((0usize..8, 0usize..8, -2i64..=2), 0..6)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn jordan_type_is_conjugation_invariant(ops in ops()) {
            let mu = p("2,2");
            let (g, g_inv) = unimodular(4, &ops);
            let x = jordan(&mu).conjugate(&g, &g_inv);
            prop_assert_eq!(jordan_type(&x.to_dense()).unwrap(), mu);
        }

        #[test]
        fn form_rank_is_conjugation_invariant(ops1 in ops(), ops2 in ops(), pick in 0usize..3) {
            let (spec, label): (AlgebraSpec, OrbitLabel) = match pick {
                0 => (AlgebraSpec::Gl { m: 3, n: 2 }, "(2,1);(2)".parse().unwrap()),
                1 => (AlgebraSpec::Q { n: 3 }, "(2,1)".parse().unwrap()),
                _ => (AlgebraSpec::P { n: 2 }, "(2,1)".parse().unwrap()),
            };
            let alg = build_algebra(&spec).unwrap();
            let rep = orbit_representative(&spec, &label).unwrap();
            let (g, g_inv) = match spec {
                AlgebraSpec::Gl { m, n } => {
                    let (a, ai) = unimodular(m, &ops1);
                    let (b, bi) = unimodular(n, &ops2);
                    (a.direct_sum(&b), ai.direct_sum(&bi))
                }
                AlgebraSpec::Q { n } => {
                    let (a, ai) = unimodular(n, &ops1);
                    (a.direct_sum(&a), ai.direct_sum(&ai))
                }
                _ => {
                    let (a, ai) = unimodular(3, &ops1);
                    (a.direct_sum(&ai.transpose()), ai.direct_sum(&a.transpose()))
                }
            };
            let x = alg.element(rep.matrix.clone()).unwrap();
            let y = alg.element(rep.matrix.conjugate(&g, &g_inv)).unwrap();
            let kx = alg.evaluate_form(&x).unwrap();
            let ky = alg.evaluate_form(&y).unwrap();
            prop_assert!(ky.is_symmetric());
            prop_assert_eq!(kx.rank(), ky.rank());
        }
    }
}
