use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use super::{K1Error, RingDescriptor};

/// Matrix size in a `GLab` atom: a fixed `n`, or the running index of a
/// direct sum over all `n >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rank {
    Fixed(usize),
    Indexed,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Atom {
    /// `Z/k`; `k = 0` stands for `Z`.
    Zmod(u64),
    UnitsOf(RingDescriptor),
    GLab {
        n: Rank,
        ring: RingDescriptor,
    },
    /// A `Z_2` that may or may not survive the action it is quotiented by.
    UndeterminedZ2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mult {
    Finite(u64),
    Countable,
}

impl Mult {
    #[allow(clippy::should_implement_trait)]
    pub fn add(self, other: Mult) -> Mult {
        match (self, other) {
            (Mult::Finite(a), Mult::Finite(b)) => Mult::Finite(a.saturating_add(b)),
            _ => Mult::Countable,
        }
    }

    pub fn times(self, k: u64) -> Mult {
        match self {
            Mult::Finite(a) => Mult::Finite(a.saturating_mul(k)),
            Mult::Countable if k == 0 => Mult::Finite(0),
            Mult::Countable => Mult::Countable,
        }
    }

    fn is_zero(self) -> bool {
        self == Mult::Finite(0)
    }

    fn covers(self, other: Mult) -> bool {
        match (self, other) {
            (Mult::Countable, _) => true,
            (Mult::Finite(_), Mult::Countable) => false,
            (Mult::Finite(a), Mult::Finite(b)) => a >= b,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Summand {
    pub atom: Atom,
    pub mult: Mult,
}

/// A formal direct sum of atoms with multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FormalAbGroup {
    summands: Vec<Summand>,
}

impl Atom {
    pub fn z2() -> Atom {
        Atom::Zmod(2)
    }

    /// One rewriting pass; `None` drops the atom.
    fn rewrite(&self) -> Option<Vec<(Atom, u64)>> {
        use RingDescriptor as R;
        match self {
            Atom::Zmod(1) => None,
            Atom::Zmod(_) | Atom::UndeterminedZ2 => Some(vec![(self.clone(), 1)]),
            Atom::UnitsOf(R::FiniteField { q }) => Some(vec![(Atom::Zmod(*q as u64 - 1), 1)]),
            Atom::UnitsOf(R::Integers) => Some(vec![(Atom::Zmod(2), 1)]),
            Atom::UnitsOf(R::PolyChar0 { base }) => {
                Some(vec![(Atom::UnitsOf(R::InfiniteField { name: base.clone() }), 1)])
            }
            Atom::UnitsOf(_) => Some(vec![(self.clone(), 1)]),
            Atom::GLab { n: Rank::Fixed(0), .. } => None,
            Atom::GLab { n: Rank::Fixed(1), ring } => Some(vec![(Atom::UnitsOf(ring.clone()), 1)]),
            Atom::GLab { n, ring: R::Integers } => match n {
                Rank::Fixed(2) => Some(vec![(Atom::Zmod(2), 2)]),
                _ => Some(vec![(Atom::Zmod(2), 1)]),
            },
            Atom::GLab { n, ring } => {
                let resolved = match n {
                    Rank::Fixed(2) | Rank::Indexed => ring.is_euclidean() && ring.has_unit_sum(),
                    Rank::Fixed(_) => ring.is_euclidean(),
                };
                if resolved {
                    Some(vec![(Atom::UnitsOf(ring.clone()), 1)])
                } else {
                    Some(vec![(self.clone(), 1)])
                }
            }
        }
    }

    fn is_normal(&self) -> bool {
        self.rewrite().is_some_and(|v| v.len() == 1 && v[0] == (self.clone(), 1))
    }
}

impl FormalAbGroup {
    pub fn zero() -> FormalAbGroup {
        FormalAbGroup::default()
    }

    /// Merges equal atoms and orders them; no rewriting.
    pub fn new(summands: impl IntoIterator<Item = Summand>) -> FormalAbGroup {
        let mut acc: BTreeMap<Atom, Mult> = BTreeMap::new();
        for s in summands {
            let slot = acc.entry(s.atom).or_insert(Mult::Finite(0));
            *slot = slot.add(s.mult);
        }
        FormalAbGroup {
            summands: acc
                .into_iter()
                .filter(|(_, m)| !m.is_zero())
                .map(|(atom, mult)| Summand { atom, mult })
                .collect(),
        }
    }

    pub fn atoms(atoms: impl IntoIterator<Item = Atom>) -> FormalAbGroup {
        FormalAbGroup::new(atoms.into_iter().map(|atom| Summand { atom, mult: Mult::Finite(1) }))
    }

    pub fn summands(&self) -> &[Summand] {
        &self.summands
    }

    pub fn multiplicity(&self, atom: &Atom) -> Mult {
        self.summands.iter().find(|s| &s.atom == atom).map_or(Mult::Finite(0), |s| s.mult)
    }

    pub fn is_zero(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn undetermined_markers(&self) -> Mult {
        self.multiplicity(&Atom::UndeterminedZ2)
    }

    pub fn direct_sum(&self, other: &FormalAbGroup) -> FormalAbGroup {
        FormalAbGroup::new(self.summands.iter().chain(&other.summands).cloned())
    }

    pub fn times(&self, k: Mult) -> FormalAbGroup {
        FormalAbGroup::new(self.summands.iter().map(|s| Summand {
            atom: s.atom.clone(),
            mult: match k {
                Mult::Finite(k) => s.mult.times(k),
                Mult::Countable => Mult::Countable,
            },
        }))
    }

    /// Rewrites to normal form: finite unit groups become cyclic, `GL_n^ab`
    /// becomes the unit group wherever the Euclidean hypotheses allow.
    pub fn normalize(&self) -> FormalAbGroup {
        let mut current = self.clone();
        while !current.summands.iter().all(|s| s.atom.is_normal()) {
            let mut next = Vec::new();
            for s in &current.summands {
                for (atom, k) in s.atom.rewrite().unwrap_or_default() {
                    next.push(Summand { atom, mult: s.mult.times(k) });
                }
            }
            current = FormalAbGroup::new(next);
        }
        current
    }

    /// Multiset containment of atoms.
    pub fn contains(&self, other: &FormalAbGroup) -> bool {
        other.summands.iter().all(|s| self.multiplicity(&s.atom).covers(s.mult))
    }

    /// Replaces atoms by other expressions; unmapped atoms are kept.
    pub fn substitute(&self, f: impl Fn(&Atom) -> Option<FormalAbGroup>) -> FormalAbGroup {
        let mut out = FormalAbGroup::zero();
        for s in &self.summands {
            let piece = f(&s.atom).unwrap_or_else(|| FormalAbGroup::atoms([s.atom.clone()]));
            out = out.direct_sum(&piece.times(s.mult));
        }
        out
    }

    /// The invariant factors, when every atom is a finite cyclic group with
    /// finite multiplicity.
    pub fn finite_factors(&self) -> Option<Vec<u64>> {
        let mut orders = Vec::new();
        for s in &self.summands {
            match (&s.atom, s.mult) {
                (Atom::Zmod(k), Mult::Finite(m)) if *k > 0 => orders.extend(std::iter::repeat_n(*k, m as usize)),
                _ => return None,
            }
        }
        Some(orders)
    }

    pub fn to_json(&self) -> Value {
        let summands: Vec<Value> = self
            .summands
            .iter()
            .map(|s| {
                let mut v = match &s.atom {
                    Atom::Zmod(k) => json!({"atom": "Zmod", "k": k}),
                    Atom::UnitsOf(r) => json!({"atom": "UnitsOf", "ring": r.to_string()}),
                    Atom::GLab { n, ring } => {
                        let n = match n {
                            Rank::Fixed(n) => json!(n),
                            Rank::Indexed => json!("n"),
                        };
                        json!({"atom": "GLab", "n": n, "ring": ring.to_string()})
                    }
                    Atom::UndeterminedZ2 => json!({"atom": "UndeterminedZ2"}),
                };
                v["mult"] = match s.mult {
                    Mult::Finite(m) => json!(m),
                    Mult::Countable => json!("countable"),
                };
                v
            })
            .collect();
        json!({ "summands": summands })
    }

    pub fn from_json(v: &Value) -> Result<FormalAbGroup, K1Error> {
        let bad = |what: &str| K1Error::Json(what.to_string());
        let list = v.get("summands").and_then(Value::as_array).ok_or_else(|| bad("missing summands"))?;
        let mut out = Vec::new();
        for s in list {
            let ring = || -> Result<RingDescriptor, K1Error> {
                s.get("ring").and_then(Value::as_str).ok_or_else(|| bad("missing ring"))?.parse()
            };
            let atom = match s.get("atom").and_then(Value::as_str) {
                Some("Zmod") => Atom::Zmod(s.get("k").and_then(Value::as_u64).ok_or_else(|| bad("missing k"))?),
                Some("UnitsOf") => Atom::UnitsOf(ring()?),
                Some("GLab") => {
                    let n = match s.get("n") {
                        Some(Value::String(t)) if t == "n" => Rank::Indexed,
                        Some(x) => Rank::Fixed(x.as_u64().ok_or_else(|| bad("bad n"))? as usize),
                        None => return Err(bad("missing n")),
                    };
                    Atom::GLab { n, ring: ring()? }
                }
                Some("UndeterminedZ2") => Atom::UndeterminedZ2,
                _ => return Err(bad("unknown atom")),
            };
            let mult = match s.get("mult") {
                Some(Value::String(t)) if t == "countable" => Mult::Countable,
                Some(x) => Mult::Finite(x.as_u64().ok_or_else(|| bad("bad mult"))?),
                None => Mult::Finite(1),
            };
            out.push(Summand { atom, mult });
        }
        Ok(FormalAbGroup::new(out))
    }
}

/// Equality of normal forms.
pub fn formal_equal(a: &FormalAbGroup, b: &FormalAbGroup) -> bool {
    a.normalize() == b.normalize()
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Zmod(0) => write!(f, "Z"),
            Atom::Zmod(k) => write!(f, "Z_{k}"),
            Atom::UnitsOf(r) => write!(f, "{}", r.units_name()),
            Atom::GLab { n: Rank::Fixed(n), ring } => write!(f, "GL_{n}({})^ab", ring.name()),
            Atom::GLab { n: Rank::Indexed, ring } => write!(f, "GL_n({})^ab", ring.name()),
            Atom::UndeterminedZ2 => write!(f, "Z_2?"),
        }
    }
}

impl fmt::Display for FormalAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.summands.is_empty() {
            return write!(f, "0");
        }
        for (i, s) in self.summands.iter().enumerate() {
            if i > 0 {
                write!(f, " ⊕ ")?;
            }
            match s.mult {
                Mult::Finite(1) => write!(f, "{}", s.atom)?,
                Mult::Finite(m) => write!(f, "({})^{m}", s.atom)?,
                Mult::Countable => write!(f, "({})^(∞)", s.atom)?,
            }
        }
        Ok(())
    }
}
