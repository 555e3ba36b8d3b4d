use alloc::vec;
use alloc::vec::Vec;

use super::representative::OspForms;
use super::{AlgebraSpec, OddFormMatrix, Raw, RawOdd};
use crate::error::{Error, Result};
use crate::linalg::{inverse, rat, Matrix, Rational, SparseMatrix, SparseVec};

fn e(n: usize, i: usize, j: usize) -> SparseMatrix {
    SparseMatrix::unit(n, i, j)
}

fn embed(n: usize, offset: usize, block: &Matrix<Rational>) -> SparseMatrix {
    let mut out = SparseMatrix::zero(n);
    for i in 0..block.rows() {
        for j in 0..block.cols() {
            out.set(offset + i, offset + j, block[(i, j)].clone());
        }
    }
    out
}

pub(crate) fn raw(spec: &AlgebraSpec, forms: Option<&OspForms>) -> Result<Raw> {
    match *spec {
        AlgebraSpec::Gl { m, n } => Ok(gl(m, n)),
        AlgebraSpec::Sl { m, n } => Ok(sl(m, n)),
        AlgebraSpec::Osp { m, n } => {
            let default;
            let forms = match forms {
                Some(f) => f,
                None => {
                    default = OspForms::zero_orbit(m, n);
                    &default
                }
            };
            osp(m, n, forms)
        }
        AlgebraSpec::Q { n } => Ok(q(n, false)),
        AlgebraSpec::Sq { n } => Ok(q(n, true)),
        AlgebraSpec::P { n } => Ok(p(n + 1)),
        AlgebraSpec::Gamma { ref sigma } => Ok(gamma(sigma)),
        AlgebraSpec::G3 | AlgebraSpec::F4 => Err(Error::UnsupportedFamily(alloc::format!(
            "{spec} has no matrix realization"
        ))),
    }
}

// Odd part shared by gl and sl: e_{ik} (i ∈ I₁, k ∈ I₂) in lex order, then
// e_{lj} ordered by (j, l), which puts M(g) in the block form [[0,N],[Nᵗ,0]].
fn gl_odd(m: usize, n: usize) -> Vec<SparseMatrix> {
    let size = m + n;
    let mut odd = Vec::with_capacity(2 * m * n);
    for i in 0..m {
        for k in m..size {
            odd.push(e(size, i, k));
        }
    }
    for j in 0..m {
        for l in m..size {
            odd.push(e(size, l, j));
        }
    }
    odd
}

fn gl(m: usize, n: usize) -> Raw {
    let size = m + n;
    let mut even = Vec::with_capacity(m * m + n * n);
    for (lo, hi) in [(0, m), (m, size)] {
        for i in lo..hi {
            for j in lo..hi {
                even.push(e(size, i, j));
            }
        }
    }
    Raw { ambient: size, even_basis: even, odd: RawOdd::Matrices(gl_odd(m, n)) }
}

fn sl(m: usize, n: usize) -> Raw {
    let size = m + n;
    let mut even = Vec::with_capacity(m * m + n * n - 1);
    for (lo, hi) in [(0, m), (m, size)] {
        for i in lo..hi {
            for j in lo..hi {
                if i != j {
                    even.push(e(size, i, j));
                }
            }
        }
        for i in lo..hi - 1 {
            even.push(e(size, i, i).minus(&e(size, i + 1, i + 1)));
        }
    }
    even.push(e(size, m - 1, m - 1).plus(&e(size, m, m)));
    Raw { ambient: size, even_basis: even, odd: RawOdd::Matrices(gl_odd(m, n)) }
}

fn osp(m: usize, n: usize, forms: &OspForms) -> Result<Raw> {
    let bad = |what: &str| Error::InvalidSpec(alloc::format!("osp({m},{n}): {what}"));
    let (g1, g2) = (&forms.g1, &forms.g2);
    if g1.rows() != m || g2.rows() != n {
        return Err(bad("Gram matrices have the wrong size"));
    }
    if *g1 != g1.transpose() || *g2 != g2.transpose().map(|x| -x) {
        return Err(bad("G₁ must be symmetric and G₂ skew"));
    }
    let g1_inv = inverse(g1).ok_or_else(|| bad("G₁ is singular"))?;
    let g2_inv = inverse(g2).ok_or_else(|| bad("G₂ is singular"))?;
    let size = m + n;
    let unit = |k: usize, i: usize, j: usize| {
        let mut u = Matrix::zeros(k, k);
        u[(i, j)] = rat(1);
        u
    };

    let mut even = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            let skew = unit(m, i, j).add(&unit(m, j, i).map(|x| -x));
            even.push(embed(size, 0, &g1_inv.mul(&skew)));
        }
    }
    for i in 0..n {
        for j in i..n {
            let sym = if i == j { unit(n, i, i) } else { unit(n, i, j).add(&unit(n, j, i)) };
            even.push(embed(size, m, &g2_inv.mul(&sym)));
        }
    }

    // C = E_{ca} in the lower-left block and B = −G₁⁻¹ Cᵗ G₂ above it.
    let mut odd = Vec::with_capacity(m * n);
    for a in 0..m {
        for c in 0..n {
            let mut x = SparseMatrix::zero(size);
            x.set(m + c, a, rat(1));
            for i in 0..m {
                for j in 0..n {
                    let b = -(&g1_inv[(i, a)] * &g2[(c, j)]);
                    x.set(i, m + j, b);
                }
            }
            odd.push(x);
        }
    }
    Ok(Raw { ambient: size, even_basis: even, odd: RawOdd::Matrices(odd) })
}

// Matrices [[a, b], [b, a]]; the derived algebra keeps b traceless.
pub(crate) fn q(n: usize, derived: bool) -> Raw {
    let size = 2 * n;
    let diag = |i: usize, j: usize| e(size, i, j).plus(&e(size, n + i, n + j));
    let bar = |i: usize, j: usize| e(size, i, n + j).plus(&e(size, n + i, j));
    let mut even = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            even.push(diag(i, j));
        }
    }
    let mut odd = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            if !(derived && i == j) {
                odd.push(bar(i, j));
            }
        }
    }
    if derived {
        for i in 0..n - 1 {
            odd.push(bar(i, i).minus(&bar(i + 1, i + 1)));
        }
    }
    Raw { ambient: size, even_basis: even, odd: RawOdd::Matrices(odd) }
}

// Matrices [[A, B], [C, −Aᵗ]] with tr A = 0, Bᵗ = B, Cᵗ = −C, in gl(N|N).
fn p(big_n: usize) -> Raw {
    let size = 2 * big_n;
    let lift = |a: &SparseMatrix| {
        let mut out = SparseMatrix::zero(size);
        for ((i, j), v) in a.iter() {
            out.set(i, j, v.clone());
            out.set(big_n + j, big_n + i, -v);
        }
        out
    };
    let mut even = Vec::new();
    for i in 0..big_n {
        for j in 0..big_n {
            if i != j {
                even.push(lift(&e(big_n, i, j)));
            }
        }
    }
    for i in 0..big_n - 1 {
        even.push(lift(&e(big_n, i, i).minus(&e(big_n, i + 1, i + 1))));
    }
    let mut odd = Vec::new();
    for k in 0..big_n {
        for l in k..big_n {
            let mut b = e(size, k, big_n + l);
            if k != l {
                b = b.plus(&e(size, l, big_n + k));
            }
            odd.push(b);
        }
    }
    for k in 0..big_n {
        for l in k + 1..big_n {
            odd.push(e(size, big_n + k, l).minus(&e(size, big_n + l, k)));
        }
    }
    Raw { ambient: size, even_basis: even, odd: RawOdd::Matrices(odd) }
}

// sl(2)³ sits block-diagonally in gl(6) with basis (e_i, h_i, f_i) per factor;
// the odd part V₁⊗V₂⊗V₃ is abstract with basis a₁⊗a₂⊗a₃, aᵢ ∈ {xᵢ, yᵢ}, in
// lex order, so bit 2−i of an index selects the slot-i vector.
fn gamma(sigma: &[Rational; 3]) -> Raw {
    let sl2: [[[i64; 2]; 2]; 3] = [[[0, 1], [0, 0]], [[1, 0], [0, -1]], [[0, 0], [1, 0]]];
    let even_index = |factor: usize, which: usize| 3 * factor + which;
    let mut even = Vec::with_capacity(9);
    for factor in 0..3 {
        for mat in &sl2 {
            let block = Matrix::from_rows(mat.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect());
            even.push(embed(6, 2 * factor, &block));
        }
    }

    let psi = |a: usize, b: usize| -> i64 {
        match (a, b) {
            (0, 1) => 1,
            (1, 0) => -1,
            _ => 0,
        }
    };
    // Π = [[2e, −h], [−h, −2f]] as a coordinate vector on factor `i`.
    let pi = |i: usize, a: usize, b: usize| -> SparseVec {
        let (which, coeff) = match (a, b) {
            (0, 0) => (0, 2),
            (1, 1) => (2, -2),
            _ => (1, -1),
        };
        let mut v = SparseVec::new();
        v.add_at(even_index(i, which), &rat(coeff));
        v
    };
    let bit = |p: usize, slot: usize| (p >> (2 - slot)) & 1;

    let mut bracket = OddFormMatrix::zero(8);
    for p in 0..8 {
        for q in p..8 {
            let mut v = SparseVec::new();
            for (k, s) in sigma.iter().enumerate() {
                let (i, j) = ((k + 1) % 3, (k + 2) % 3);
                let scalar = psi(bit(p, i), bit(q, i)) * psi(bit(p, j), bit(q, j));
                if scalar != 0 {
                    v.axpy(&(s * rat(scalar)), &pi(k, bit(p, k), bit(q, k)));
                }
            }
            bracket.set_symmetric(p, q, v);
        }
    }

    let mut action = Vec::with_capacity(9);
    for factor in 0..3 {
        for mat in &sl2 {
            let mut cols = vec![SparseVec::new(); 8];
            for (p, col) in cols.iter_mut().enumerate() {
                let b = bit(p, factor);
                for (b2, row) in mat.iter().enumerate() {
                    if row[b] != 0 {
                        let target = (p & !(1 << (2 - factor))) | (b2 << (2 - factor));
                        col.add_at(target, &rat(row[b]));
                    }
                }
            }
            action.push(cols);
        }
    }
    Raw { ambient: 6, even_basis: even, odd: RawOdd::Abstract { bracket, action } }
}
