use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::AlgebraSpec;
use crate::error::{Error, Result};
use crate::partition::{Partition, PartitionClass};

/// Which of the two orbits sharing a very even orthogonal partition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum VeryEvenTag {
    I,
    II,
}

impl fmt::Display for VeryEvenTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VeryEvenTag::I => "I",
            VeryEvenTag::II => "II",
        })
    }
}

/// Nilpotent orbit label in `g₀`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum OrbitLabel {
    /// One partition per factor of a two-factor `g₀` (gl/sl/osp/g3/f4).
    Pair {
        mu: Partition,
        nu: Partition,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        tag: Option<VeryEvenTag>,
    },
    /// A single `gl`/`sl` factor (q, sq, p).
    Single { mu: Partition },
    /// The three `sl(2)` factors of the gamma family.
    Triple { parts: [Partition; 3] },
}

impl OrbitLabel {
    pub fn pair(mu: Partition, nu: Partition) -> Self {
        OrbitLabel::Pair { mu, nu, tag: None }
    }

    pub fn single(mu: Partition) -> Self {
        OrbitLabel::Single { mu }
    }

    pub fn triple(a: Partition, b: Partition, c: Partition) -> Self {
        OrbitLabel::Triple { parts: [a, b, c] }
    }

    /// All partitions, one per factor.
    pub fn partitions(&self) -> Vec<&Partition> {
        match self {
            OrbitLabel::Pair { mu, nu, .. } => alloc::vec![mu, nu],
            OrbitLabel::Single { mu } => alloc::vec![mu],
            OrbitLabel::Triple { parts } => parts.iter().collect(),
        }
    }

    pub fn is_zero_orbit(&self) -> bool {
        self.partitions().iter().all(|p| p.parts().iter().all(|&x| x == 1))
    }

    /// Multiset key for a gamma triple: parts sorted so `{2,2,1²}` is canonical.
    pub fn gamma_key(&self) -> Option<[Partition; 3]> {
        match self {
            OrbitLabel::Triple { parts } => {
                let mut sorted = parts.clone();
                sorted.sort_by(|a, b| b.cmp(a));
                Some(sorted)
            }
            _ => None,
        }
    }

    /// Checks that the label names an orbit of `spec`. Membership in the
    /// exceptional tables is checked by the invariants module.
    pub fn validate(&self, spec: &AlgebraSpec) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidLabel(msg));
        let weight_check = |p: &Partition, w: usize, what: &str| {
            if p.weight() == w {
                Ok(())
            } else {
                Err(Error::InvalidLabel(format!(
                    "{what} partition {p} has weight {}, expected {w}",
                    p.weight()
                )))
            }
        };
        match (spec, self) {
            (
                AlgebraSpec::Gl { m, n } | AlgebraSpec::Sl { m, n },
                OrbitLabel::Pair { mu, nu, tag },
            ) => {
                weight_check(mu, *m, "first")?;
                weight_check(nu, *n, "second")?;
                if tag.is_some() {
                    return bad(format!("{spec} orbits carry no very even tag"));
                }
                Ok(())
            }
            (AlgebraSpec::Osp { m, n }, OrbitLabel::Pair { mu, nu, tag }) => {
                weight_check(mu, *m, "orthogonal")?;
                weight_check(nu, *n, "symplectic")?;
                if !mu.in_class(PartitionClass::BD) {
                    return bad(format!("{mu} is not an orthogonal partition"));
                }
                if !nu.in_class(PartitionClass::C) {
                    return bad(format!("{nu} is not a symplectic partition"));
                }
                match (mu.is_very_even(), tag) {
                    (true, None) => bad(format!("very even {mu} needs a tag I or II")),
                    (false, Some(_)) => bad(format!("{mu} is not very even; drop the tag")),
                    _ => Ok(()),
                }
            }
            (AlgebraSpec::G3 | AlgebraSpec::F4, OrbitLabel::Pair { tag: None, .. }) => Ok(()),
            (AlgebraSpec::Q { n } | AlgebraSpec::Sq { n }, OrbitLabel::Single { mu }) => {
                weight_check(mu, *n, "")
            }
            (AlgebraSpec::P { n }, OrbitLabel::Single { mu }) => weight_check(mu, n + 1, ""),
            (AlgebraSpec::Gamma { .. }, OrbitLabel::Triple { parts }) => {
                parts.iter().try_for_each(|p| weight_check(p, 2, "sl(2)"))
            }
            _ => bad(format!("label {self} does not fit {spec}")),
        }
    }
}

impl fmt::Display for OrbitLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrbitLabel::Pair { mu, nu, tag } => {
                write!(f, "({mu})")?;
                if let Some(t) = tag {
                    write!(f, "{t}")?;
                }
                write!(f, ";({nu})")
            }
            OrbitLabel::Single { mu } => write!(f, "({mu})"),
            OrbitLabel::Triple { parts } => {
                write!(f, "{{{},{},{}}}", parts[0], parts[1], parts[2])
            }
        }
    }
}

/// Parses `(3,1);(2)`, `(2^2)II;(2)`, `(3,1)` or `{2,2,1^2}`.
impl FromStr for OrbitLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(inner) = s.strip_prefix('{').and_then(|r| r.strip_suffix('}')) {
            let parts = split_triple(inner)?;
            return Ok(OrbitLabel::Triple { parts });
        }
        match s.split_once(';') {
            None => Ok(OrbitLabel::single(s.parse()?)),
            Some((a, b)) => {
                let a = a.trim();
                let (a, tag) = if let Some(rest) = a.strip_suffix("II") {
                    (rest, Some(VeryEvenTag::II))
                } else if let Some(rest) = a.strip_suffix('I') {
                    (rest, Some(VeryEvenTag::I))
                } else {
                    (a, None)
                };
                Ok(OrbitLabel::Pair { mu: a.parse()?, nu: b.parse()?, tag })
            }
        }
    }
}

// Parts of a partition of 2 are `2`, `1^2` or `1,1`; split on the boundary
// between partitions rather than on every comma.
fn split_triple(inner: &str) -> Result<[Partition; 3]> {
    let tokens: Vec<&str> = inner.split(',').map(str::trim).collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < tokens.len() {
        let p: Partition = if tokens[i] == "1" && tokens.get(i + 1) == Some(&"1") {
            i += 2;
            Partition::ones(2)
        } else {
            i += 1;
            tokens[i - 1].parse()?
        };
        out.push(p);
    }
    out.try_into()
        .map_err(|_| Error::Parse(format!("expected three partitions in `{{{inner}}}`")))
}
