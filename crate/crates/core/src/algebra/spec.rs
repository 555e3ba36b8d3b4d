use alloc::format;
use alloc::string::String;
use core::fmt;
use core::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Rational;

/// Superalgebra families known to the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Gl,
    Sl,
    Osp,
    Q,
    Sq,
    P,
    Gamma,
    G3,
    F4,
}

impl Family {
    pub const ALL: [Family; 9] = [
        Family::Gl,
        Family::Sl,
        Family::Osp,
        Family::Q,
        Family::Sq,
        Family::P,
        Family::Gamma,
        Family::G3,
        Family::F4,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Gl => "gl",
            Family::Sl => "sl",
            Family::Osp => "osp",
            Family::Q => "q",
            Family::Sq => "sq",
            Family::P => "p",
            Family::Gamma => "gamma",
            Family::G3 => "g3",
            Family::F4 => "f4",
        }
    }

    /// Families with an explicit matrix (or structure-constant) realization here.
    pub fn is_realizable(self) -> bool {
        !matches!(self, Family::G3 | Family::F4)
    }

    /// Families carrying a nondegenerate even invariant form on all of `g`.
    pub fn has_even_invariant_form(self) -> bool {
        matches!(self, Family::Gl | Family::Sl | Family::Osp)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        Family::ALL
            .into_iter()
            .find(|f| f.name() == lower)
            .ok_or_else(|| Error::Parse(format!("unknown family `{s}`")))
    }
}

/// A family together with its parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraSpec {
    Gl { m: usize, n: usize },
    Sl { m: usize, n: usize },
    /// `osp(m,n)`: `so(m) × sp(n)` acting on `V₁ ⊗ V₂`, `n` even.
    Osp { m: usize, n: usize },
    /// `g₀ = gl(n)`, `g₁ ≅ gl(n)`.
    Q { n: usize },
    /// Derived subalgebra of `Q(n)`: odd part `sl(n)`.
    Sq { n: usize },
    /// Odd part `S²V ⊕ Λ²V*` over `g₀ = sl(n+1)`.
    P { n: usize },
    Gamma { sigma: [Rational; 3] },
    G3,
    F4,
}

impl AlgebraSpec {
    pub fn family(&self) -> Family {
        match self {
            AlgebraSpec::Gl { .. } => Family::Gl,
            AlgebraSpec::Sl { .. } => Family::Sl,
            AlgebraSpec::Osp { .. } => Family::Osp,
            AlgebraSpec::Q { .. } => Family::Q,
            AlgebraSpec::Sq { .. } => Family::Sq,
            AlgebraSpec::P { .. } => Family::P,
            AlgebraSpec::Gamma { .. } => Family::Gamma,
            AlgebraSpec::G3 => Family::G3,
            AlgebraSpec::F4 => Family::F4,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidSpec(msg));
        match *self {
            AlgebraSpec::Gl { m, n } | AlgebraSpec::Sl { m, n } if m == 0 || n == 0 => {
                fail(format!("{self}: both m and n must be positive"))
            }
            AlgebraSpec::Osp { m, n } if m == 0 || n < 2 || n % 2 == 1 => {
                fail(format!("{self}: need m ≥ 1 and n even, n ≥ 2"))
            }
            AlgebraSpec::Q { n } | AlgebraSpec::Sq { n } if n < 3 => {
                fail(format!("{self}: need n ≥ 3"))
            }
            AlgebraSpec::P { n: 0 } => fail(format!("{self}: need n ≥ 1")),
            AlgebraSpec::Gamma { ref sigma } if sigma.iter().any(Zero::is_zero) => {
                fail(format!("{self}: every σ_i must be nonzero"))
            }
            _ => Ok(()),
        }
    }

    pub fn even_dim(&self) -> usize {
        match *self {
            AlgebraSpec::Gl { m, n } => m * m + n * n,
            AlgebraSpec::Sl { m, n } => m * m + n * n - 1,
            AlgebraSpec::Osp { m, n } => m * (m - 1) / 2 + n * (n + 1) / 2,
            AlgebraSpec::Q { n } | AlgebraSpec::Sq { n } => n * n,
            AlgebraSpec::P { n } => (n + 1) * (n + 1) - 1,
            AlgebraSpec::Gamma { .. } => 9,
            AlgebraSpec::G3 => 17,
            AlgebraSpec::F4 => 24,
        }
    }

    pub fn odd_dim(&self) -> usize {
        match *self {
            AlgebraSpec::Gl { m, n } | AlgebraSpec::Sl { m, n } => 2 * m * n,
            AlgebraSpec::Osp { m, n } => m * n,
            AlgebraSpec::Q { n } => n * n,
            AlgebraSpec::Sq { n } => n * n - 1,
            AlgebraSpec::P { n } => (n + 1) * (n + 1),
            AlgebraSpec::Gamma { .. } => 8,
            AlgebraSpec::G3 => 14,
            AlgebraSpec::F4 => 16,
        }
    }
}

impl fmt::Display for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraSpec::Gl { m, n } => write!(f, "gl({m},{n})"),
            AlgebraSpec::Sl { m, n } => write!(f, "sl({m},{n})"),
            AlgebraSpec::Osp { m, n } => write!(f, "osp({m},{n})"),
            AlgebraSpec::Q { n } => write!(f, "q({n})"),
            AlgebraSpec::Sq { n } => write!(f, "sq({n})"),
            AlgebraSpec::P { n } => write!(f, "p({n})"),
            AlgebraSpec::Gamma { sigma } => {
                write!(f, "gamma({},{},{})", sigma[0], sigma[1], sigma[2])
            }
            AlgebraSpec::G3 => write!(f, "g3"),
            AlgebraSpec::F4 => write!(f, "f4"),
        }
    }
}

/// Parses an exact rational written as `p` or `p/q`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational `{s}`"));
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let num: num_bigint::BigInt = num.parse().map_err(|_| bad())?;
    let den: num_bigint::BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}
