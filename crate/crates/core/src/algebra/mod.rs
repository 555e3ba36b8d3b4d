//! Concrete realizations of the supported superalgebras.
//!
//! Every realization reduces to the same data: a basis of `g₀` (as matrices
//! in some ambient `gl(N)`), the odd-odd bracket table over that basis, and
//! the action of each even basis vector on odd coordinates. Everything
//! downstream (the form matrix, its evaluations, centralizers) is computed
//! from those three tables.

mod families;
mod representative;
pub mod spec;

use alloc::format;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{sparse_rank, Matrix, Rational, SparseMatrix, SparseVec, SpanSolver};

pub use representative::{
    factor_jordan_types, jordan_type, orbit_representative, realize, OspForms, Representative,
};
pub use spec::{parse_rational, AlgebraSpec, Family};

/// The matrix `M(g) = ([v_i, v_j])` with entries as `g₀` coordinate vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OddFormMatrix {
    dim: usize,
    entries: Vec<SparseVec>,
}

impl OddFormMatrix {
    fn zero(dim: usize) -> Self {
        OddFormMatrix { dim, entries: alloc::vec![SparseVec::new(); dim * dim] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &SparseVec {
        &self.entries[i * self.dim + j]
    }

    fn set_symmetric(&mut self, i: usize, j: usize, v: SparseVec) {
        self.entries[j * self.dim + i] = v.clone();
        self.entries[i * self.dim + j] = v;
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.dim).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Pairs every entry with `w`, given as dense coordinates of the linear
    /// functional on `g₀`.
    pub fn evaluate(&self, w: &[Rational]) -> Matrix<Rational> {
        let d = self.dim;
        let mut out = Matrix::zeros(d, d);
        for i in 0..d {
            for j in i..d {
                let v = self.get(i, j).dot(w);
                out[(j, i)] = v.clone();
                out[(i, j)] = v;
            }
        }
        out
    }
}

pub(crate) enum RawOdd {
    Matrices(Vec<SparseMatrix>),
    Abstract { bracket: OddFormMatrix, action: Vec<Vec<SparseVec>> },
}

pub(crate) struct Raw {
    pub ambient: usize,
    pub even_basis: Vec<SparseMatrix>,
    pub odd: RawOdd,
}

/// A finite-dimensional Lie superalgebra `g = g₀ ⊕ g₁` with exact tables.
#[derive(Clone, Debug)]
pub struct SuperAlgebra {
    spec: AlgebraSpec,
    ambient: usize,
    even_basis: Vec<SparseMatrix>,
    odd_basis: Option<Vec<SparseMatrix>>,
    even_solver: SpanSolver,
    bracket: OddFormMatrix,
    // action[a][i] = coordinates of [e_a, v_i] in g₁
    action: Vec<Vec<SparseVec>>,
    // adjoint[a][b] = coordinates of [e_a, e_b] in g₀
    adjoint: Vec<Vec<SparseVec>>,
    gram: Matrix<Rational>,
    forms: Option<OspForms>,
}

/// An element of `g₀`, both as an ambient matrix and in basis coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GZeroElement {
    pub matrix: SparseMatrix,
    pub spec: AlgebraSpec,
    pub coords: SparseVec,
}

/// Builds the realization with its default invariant forms.
pub fn build_algebra(spec: &AlgebraSpec) -> Result<SuperAlgebra> {
    spec.validate()?;
    let forms = match *spec {
        AlgebraSpec::Osp { m, n } => Some(OspForms::zero_orbit(m, n)),
        _ => None,
    };
    build_with_forms(spec, forms)
}

pub(crate) fn build_with_forms(spec: &AlgebraSpec, forms: Option<OspForms>) -> Result<SuperAlgebra> {
    let raw = families::raw(spec, forms.as_ref())?;
    SuperAlgebra::from_raw(spec.clone(), raw, forms)
}

pub fn form_matrix(alg: &SuperAlgebra) -> &OddFormMatrix {
    &alg.bracket
}

pub fn evaluate_form(alg: &SuperAlgebra, x: &GZeroElement) -> Result<Matrix<Rational>> {
    alg.evaluate_form(x)
}

pub fn centralizer_dims(alg: &SuperAlgebra, x: &GZeroElement) -> Result<(usize, usize)> {
    alg.centralizer_dims(x)
}

impl SuperAlgebra {
    fn from_raw(spec: AlgebraSpec, raw: Raw, forms: Option<OspForms>) -> Result<Self> {
        let selfcheck = |what: &str| Error::SelfCheck(format!("{spec}: {what}"));
        let d0 = raw.even_basis.len();
        if d0 != spec.even_dim() {
            return Err(selfcheck("even basis has the wrong size"));
        }
        let even_solver = SpanSolver::new(raw.even_basis.iter().map(SparseMatrix::flatten).collect())
            .ok_or_else(|| selfcheck("even basis is linearly dependent"))?;
        let coords = |m: &SparseMatrix| even_solver.coordinates(&m.flatten());

        let mut adjoint = Vec::with_capacity(d0);
        for a in &raw.even_basis {
            let mut col = Vec::with_capacity(d0);
            for b in &raw.even_basis {
                col.push(coords(&a.commutator(b)).ok_or_else(|| selfcheck("g₀ is not closed"))?);
            }
            adjoint.push(col);
        }

        let (odd_basis, bracket, action) = match raw.odd {
            RawOdd::Abstract { bracket, action } => (None, bracket, action),
            RawOdd::Matrices(odd) => {
                let d1 = odd.len();
                let odd_solver = SpanSolver::new(odd.iter().map(SparseMatrix::flatten).collect())
                    .ok_or_else(|| selfcheck("odd basis is linearly dependent"))?;
                let mut bracket = OddFormMatrix::zero(d1);
                for i in 0..d1 {
                    for j in i..d1 {
                        let c = coords(&odd[i].anticommutator(&odd[j]))
                            .ok_or_else(|| selfcheck("odd bracket leaves g₀"))?;
                        bracket.set_symmetric(i, j, c);
                    }
                }
                let mut action = Vec::with_capacity(d0);
                for a in &raw.even_basis {
                    let mut col = Vec::with_capacity(d1);
                    for v in &odd {
                        col.push(
                            odd_solver
                                .coordinates(&a.commutator(v).flatten())
                                .ok_or_else(|| selfcheck("g₀ does not preserve g₁"))?,
                        );
                    }
                    action.push(col);
                }
                (Some(odd), bracket, action)
            }
        };
        if bracket.dim() != spec.odd_dim() {
            return Err(selfcheck("odd basis has the wrong size"));
        }
        if !bracket.is_symmetric() {
            return Err(selfcheck("odd bracket table is not symmetric"));
        }

        let mut gram = Matrix::zeros(d0, d0);
        for (a, ea) in raw.even_basis.iter().enumerate() {
            for (b, eb) in raw.even_basis.iter().enumerate() {
                gram[(a, b)] = ea.trace_product(eb);
            }
        }
        if gram.rank() != d0 {
            return Err(selfcheck("trace pairing on g₀ is degenerate"));
        }

        let alg = SuperAlgebra {
            spec,
            ambient: raw.ambient,
            even_basis: raw.even_basis,
            odd_basis,
            even_solver,
            bracket,
            action,
            adjoint,
            gram,
            forms,
        };
        alg.check_jacobi()?;
        Ok(alg)
    }

    pub fn spec(&self) -> &AlgebraSpec {
        &self.spec
    }

    pub fn even_dim(&self) -> usize {
        self.even_basis.len()
    }

    pub fn odd_dim(&self) -> usize {
        self.bracket.dim()
    }

    /// Size of the ambient matrices holding `g₀`.
    pub fn ambient_size(&self) -> usize {
        self.ambient
    }

    pub fn even_basis(&self) -> &[SparseMatrix] {
        &self.even_basis
    }

    /// Matrix odd basis; `None` for the structure-constant realization.
    pub fn odd_basis(&self) -> Option<&[SparseMatrix]> {
        self.odd_basis.as_deref()
    }

    pub fn osp_forms(&self) -> Option<&OspForms> {
        self.forms.as_ref()
    }

    pub fn form_matrix(&self) -> &OddFormMatrix {
        &self.bracket
    }

    /// Gram matrix of the trace pairing on the even basis.
    pub fn gram(&self) -> &Matrix<Rational> {
        &self.gram
    }

    /// Wraps an ambient matrix as an element of `g₀`.
    pub fn element(&self, matrix: SparseMatrix) -> Result<GZeroElement> {
        if matrix.size() != self.ambient {
            return Err(Error::NotInEvenPart);
        }
        let coords = self.even_solver.coordinates(&matrix.flatten()).ok_or(Error::NotInEvenPart)?;
        Ok(GZeroElement { matrix, spec: self.spec.clone(), coords })
    }

    pub fn element_from_coords(&self, coords: SparseVec) -> Result<GZeroElement> {
        if coords.iter().any(|(a, _)| a >= self.even_dim()) {
            return Err(Error::NotInEvenPart);
        }
        let mut matrix = SparseMatrix::zero(self.ambient);
        for (a, c) in coords.iter() {
            matrix.axpy(c, &self.even_basis[a]);
        }
        Ok(GZeroElement { matrix, spec: self.spec.clone(), coords })
    }

    // Re-derives coordinates so that an element built for a differently
    // normalized realization is rejected rather than misread.
    fn coords_of(&self, x: &GZeroElement) -> Result<SparseVec> {
        if x.spec != self.spec {
            return Err(Error::NotInEvenPart);
        }
        Ok(self.element(x.matrix.clone())?.coords)
    }

    pub fn evaluate_form(&self, x: &GZeroElement) -> Result<Matrix<Rational>> {
        let c = self.coords_of(x)?.to_dense(self.even_dim());
        let d0 = self.even_dim();
        let w: Vec<Rational> = (0..d0)
            .map(|a| (0..d0).fold(Rational::zero(), |acc, b| acc + &self.gram[(a, b)] * &c[b]))
            .collect();
        Ok(self.bracket.evaluate(&w))
    }

    pub fn centralizer_dims(&self, x: &GZeroElement) -> Result<(usize, usize)> {
        let c = self.coords_of(x)?;
        let even_cols: Vec<SparseVec> =
            (0..self.even_dim()).map(|b| self.ad(&c, &SparseVec::unit(b))).collect();
        let odd_cols: Vec<SparseVec> =
            (0..self.odd_dim()).map(|i| self.act(&c, &SparseVec::unit(i))).collect();
        let r0 = sparse_rank(&even_cols, self.even_dim());
        let r1 = sparse_rank(&odd_cols, self.odd_dim());
        Ok((self.even_dim() - r0, self.odd_dim() - r1))
    }

    /// `[e, v]` for `e ∈ g₀`, `v ∈ g₁`, both in coordinates.
    pub fn act(&self, e: &SparseVec, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (a, ca) in e.iter() {
            for (i, vi) in v.iter() {
                out.axpy(&(ca * vi), &self.action[a][i]);
            }
        }
        out
    }

    /// `[e, f]` inside `g₀`, in coordinates.
    pub fn ad(&self, e: &SparseVec, f: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (a, ca) in e.iter() {
            for (b, fb) in f.iter() {
                out.axpy(&(ca * fb), &self.adjoint[a][b]);
            }
        }
        out
    }

    /// `[u, v]` for odd `u`, `v`, in coordinates.
    pub fn odd_bracket(&self, u: &SparseVec, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, ui) in u.iter() {
            for (j, vj) in v.iter() {
                out.axpy(&(ui * vj), self.bracket.get(i, j));
            }
        }
        out
    }

    fn check_jacobi(&self) -> Result<()> {
        let d0 = self.even_dim();
        let d1 = self.odd_dim();
        let fail = |what: &str| Err(Error::JacobiFailure(format!("{}: {what}", self.spec)));
        let unit = SparseVec::unit;

        for i in 0..d1 {
            for j in i..d1 {
                for k in j..d1 {
                    let mut s = self.act(self.bracket.get(j, k), &unit(i));
                    s.axpy(&Rational::from_integer(1.into()), &self.act(self.bracket.get(k, i), &unit(j)));
                    s.axpy(&Rational::from_integer(1.into()), &self.act(self.bracket.get(i, j), &unit(k)));
                    if !s.is_zero() {
                        return fail(&format!("odd triple ({i},{j},{k})"));
                    }
                }
            }
        }
        for a in 0..d0 {
            let ea = unit(a);
            for i in 0..d1 {
                let ai = self.act(&ea, &unit(i));
                for j in i..d1 {
                    let lhs = self.ad(&ea, self.bracket.get(i, j));
                    let mut rhs = self.odd_bracket(&ai, &unit(j));
                    rhs.axpy(
                        &Rational::from_integer(1.into()),
                        &self.odd_bracket(&unit(i), &self.act(&ea, &unit(j))),
                    );
                    if lhs != rhs {
                        return fail(&format!("even {a} against odd pair ({i},{j})"));
                    }
                }
            }
            for b in 0..d0 {
                let eb = unit(b);
                let ab = &self.adjoint[a][b];
                for i in 0..d1 {
                    let vi = unit(i);
                    let lhs = self.act(ab, &vi);
                    let mut rhs = self.act(&ea, &self.act(&eb, &vi));
                    rhs.axpy(&Rational::from_integer((-1).into()), &self.act(&eb, &self.act(&ea, &vi)));
                    if lhs != rhs {
                        return fail(&format!("even pair ({a},{b}) against odd {i}"));
                    }
                }
            }
        }
        Ok(())
    }
}
