use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::K1Error;
use crate::linear::{is_prime, MatRing};

/// The coefficient ring of the module, as far as the closed forms need it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RingDescriptor {
    FiniteField {
        q: u32,
    },
    /// An infinite field, named for display.
    InfiniteField {
        name: String,
    },
    /// `F[X]` for a field `F` of characteristic 0.
    PolyChar0 {
        base: String,
    },
    Integers,
    /// A Euclidean domain known only through its unit group.
    AbstractEd {
        units: String,
        has_unit_sum: bool,
    },
    /// A principal ideal domain that is not assumed Euclidean.
    Pid {
        units: String,
    },
}

fn is_prime_power(q: u32) -> bool {
    if q < 2 {
        return false;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d)).unwrap();
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
    }
    r == 1 && is_prime(p as u64)
}

impl RingDescriptor {
    pub fn finite_field(q: u32) -> Result<RingDescriptor, K1Error> {
        if !is_prime_power(q) {
            return Err(K1Error::InvalidRing(format!("{q} is not a prime power")));
        }
        Ok(RingDescriptor::FiniteField { q })
    }

    pub fn rationals() -> RingDescriptor {
        RingDescriptor::InfiniteField { name: "Q".into() }
    }

    pub fn is_euclidean(&self) -> bool {
        !matches!(self, RingDescriptor::Pid { .. })
    }

    /// Whether `1 = u + v` for units `u, v`.
    pub fn has_unit_sum(&self) -> bool {
        match self {
            RingDescriptor::FiniteField { q } => *q > 2,
            RingDescriptor::InfiniteField { .. } | RingDescriptor::PolyChar0 { .. } => true,
            RingDescriptor::Integers | RingDescriptor::Pid { .. } => false,
            RingDescriptor::AbstractEd { has_unit_sum, .. } => *has_unit_sum,
        }
    }

    /// The concrete table ring, for finite fields small enough to tabulate.
    pub fn mat_ring(&self) -> Option<MatRing> {
        match self {
            RingDescriptor::FiniteField { q } => MatRing::finite_field(*q).ok(),
            _ => None,
        }
    }

    /// Display name of the ring itself.
    pub fn name(&self) -> String {
        match self {
            RingDescriptor::FiniteField { q } => format!("F_{q}"),
            RingDescriptor::InfiniteField { name } => name.clone(),
            RingDescriptor::PolyChar0 { base } => format!("{base}[X]"),
            RingDescriptor::Integers => "Z".into(),
            RingDescriptor::AbstractEd { units, .. } | RingDescriptor::Pid { units } => units.clone(),
        }
    }

    /// Display name of the unit group.
    pub fn units_name(&self) -> String {
        match self {
            RingDescriptor::AbstractEd { units, .. } | RingDescriptor::Pid { units } => units.clone(),
            other => format!("{}^×", other.name()),
        }
    }
}

/// `fq:<q>`, `z`, `inf[:<name>]`, `poly-char0[:<base>]`,
/// `ed:<units>:unit-sum|no-unit-sum`, `pid:<units>`.
impl FromStr for RingDescriptor {
    type Err = K1Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let bad = || K1Error::InvalidRing(format!("cannot parse ring `{s}`"));
        match parts.as_slice() {
            ["fq", q] => RingDescriptor::finite_field(q.parse().map_err(|_| bad())?),
            ["z"] | ["Z"] => Ok(RingDescriptor::Integers),
            ["inf"] => Ok(RingDescriptor::InfiniteField { name: "F".into() }),
            ["inf", name] if !name.is_empty() => Ok(RingDescriptor::InfiniteField { name: name.to_string() }),
            ["poly-char0"] => Ok(RingDescriptor::PolyChar0 { base: "F".into() }),
            ["poly-char0", base] if !base.is_empty() => Ok(RingDescriptor::PolyChar0 { base: base.to_string() }),
            ["ed", units, flag] if !units.is_empty() => {
                let has_unit_sum = match *flag {
                    "unit-sum" => true,
                    "no-unit-sum" => false,
                    _ => return Err(bad()),
                };
                Ok(RingDescriptor::AbstractEd { units: units.to_string(), has_unit_sum })
            }
            ["pid", units] if !units.is_empty() => Ok(RingDescriptor::Pid { units: units.to_string() }),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingDescriptor::FiniteField { q } => write!(f, "fq:{q}"),
            RingDescriptor::InfiniteField { name } => write!(f, "inf:{name}"),
            RingDescriptor::PolyChar0 { base } => write!(f, "poly-char0:{base}"),
            RingDescriptor::Integers => write!(f, "z"),
            RingDescriptor::AbstractEd { units, has_unit_sum } => {
                write!(f, "ed:{units}:{}", if *has_unit_sum { "unit-sum" } else { "no-unit-sum" })
            }
            RingDescriptor::Pid { units } => write!(f, "pid:{units}"),
        }
    }
}

/// Which module over the ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ModuleKind {
    /// `R_R`.
    Regular,
    FreeRank(usize),
    InfiniteFree,
}

/// Closure of the theory under products, and the parity of a cofinal system
/// of finite-index definable subgroups when it is not closed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TheoryFlags {
    t_closed: bool,
    cofinal_even: Option<bool>,
}

impl TheoryFlags {
    pub fn closed() -> TheoryFlags {
        TheoryFlags { t_closed: true, cofinal_even: None }
    }

    pub fn not_closed(cofinal_even: bool) -> TheoryFlags {
        TheoryFlags { t_closed: false, cofinal_even: Some(cofinal_even) }
    }

    pub fn new(t_closed: bool, cofinal_even: Option<bool>) -> Result<TheoryFlags, K1Error> {
        if t_closed == cofinal_even.is_some() {
            return Err(K1Error::InvalidFlags(
                "the parity flag is given exactly when the theory is not closed under products".into(),
            ));
        }
        Ok(TheoryFlags { t_closed, cofinal_even })
    }

    pub fn t_closed(&self) -> bool {
        self.t_closed
    }

    pub fn cofinal_even(&self) -> Option<bool> {
        self.cofinal_even
    }

    /// The branch with an extra `Z_2` in every affine part.
    pub fn odd_branch(&self) -> bool {
        self.cofinal_even == Some(false)
    }
}

/// Flags read off the ring for an infinite free module.
pub fn derive_flags(ring: &RingDescriptor, module: ModuleKind) -> Result<TheoryFlags, K1Error> {
    let _ = module;
    match ring {
        // definable subgroups of finite index have index a power of q
        RingDescriptor::FiniteField { q } => Ok(TheoryFlags::not_closed(q % 2 == 0)),
        RingDescriptor::InfiniteField { .. } | RingDescriptor::PolyChar0 { .. } => Ok(TheoryFlags::closed()),
        // the subgroups 2^k Z are cofinal
        RingDescriptor::Integers => Ok(TheoryFlags::not_closed(true)),
        RingDescriptor::AbstractEd { .. } | RingDescriptor::Pid { .. } => {
            Err(K1Error::InvalidFlags(format!("flags for {} must be supplied", ring.name())))
        }
    }
}
