//! Shared vocabulary for irreducibility verdicts.

use num_bigint::BigInt;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use std::fmt;

/// Witness for a failed simplicity criterion.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum KacWitness {
    /// `(k, l)` with vanishing Kac factor: a singular vector exists at level
    /// `k*l`.
    Factor { k: u32, l: u32 },
    /// Coprime `p, q >= 2` realizing the resonant central charge
    /// `1 - 6 (p-q)^2 / (p q)`.
    Resonance { p: BigInt, q: BigInt },
    /// A defining parameter forced to zero (e.g. `s_0 = 0` or a vanishing
    /// Whittaker tail).
    ZeroParameter(&'static str),
}

impl fmt::Display for KacWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KacWitness::Factor { k, l } => write!(f, "kac factor vanishes at (k,l)=({k},{l})"),
            KacWitness::Resonance { p, q } => write!(f, "central charge resonance (p,q)=({p},{q})"),
            KacWitness::ZeroParameter(name) => write!(f, "parameter {name} vanishes"),
        }
    }
}

fn big_to_json(n: &BigInt) -> serde_json::Value {
    // Desk-scale witnesses fit in i64/u64 and serialize as plain numbers;
    // larger ones fall back to decimal strings.
    if let Ok(v) = i64::try_from(n.clone()) {
        serde_json::Value::from(v)
    } else {
        serde_json::Value::from(n.to_string())
    }
}

impl Serialize for KacWitness {
    fn serialize<Ser: Serializer>(&self, serializer: Ser) -> Result<Ser::Ok, Ser::Error> {
        match self {
            KacWitness::Factor { k, l } => {
                let mut s = serializer.serialize_struct("witness", 2)?;
                s.serialize_field("k", k)?;
                s.serialize_field("l", l)?;
                s.end()
            }
            KacWitness::Resonance { p, q } => {
                let mut s = serializer.serialize_struct("witness", 2)?;
                s.serialize_field("p", &big_to_json(p))?;
                s.serialize_field("q", &big_to_json(q))?;
                s.end()
            }
            KacWitness::ZeroParameter(name) => {
                let mut s = serializer.serialize_struct("witness", 1)?;
                s.serialize_field("zero_parameter", name)?;
                s.end()
            }
        }
    }
}

/// Verdict of a simplicity criterion.
///
/// Highest-weight criteria quantify over all of `N x N`; the engine scans
/// Kac factors up to a finite product bound, so "no obstruction found" is a
/// semi-decision and is reported as such, never as `Simple`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Simplicity {
    /// Exactly decided simple.
    Simple,
    /// Exactly decided not simple, with a witness when one is available.
    NotSimple(Option<KacWitness>),
    /// No vanishing Kac factor with `k*l` up to the bound; simplicity not
    /// certified beyond it.
    NoObstructionUpTo(u32),
}

impl Simplicity {
    pub fn is_definitely_simple(&self) -> bool {
        matches!(self, Simplicity::Simple)
    }

    pub fn is_definitely_not_simple(&self) -> bool {
        matches!(self, Simplicity::NotSimple(_))
    }

    pub fn witness(&self) -> Option<&KacWitness> {
        match self {
            Simplicity::NotSimple(w) => w.as_ref(),
            _ => None,
        }
    }
}

impl fmt::Display for Simplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Simplicity::Simple => write!(f, "simple"),
            Simplicity::NotSimple(Some(w)) => write!(f, "not simple ({w})"),
            Simplicity::NotSimple(None) => write!(f, "not simple"),
            Simplicity::NoObstructionUpTo(b) => {
                write!(f, "no vanishing kac factor with k*l <= {b}")
            }
        }
    }
}

impl Serialize for Simplicity {
    fn serialize<Ser: Serializer>(&self, serializer: Ser) -> Result<Ser::Ok, Ser::Error> {
        let mut s = serializer.serialize_struct("simplicity", 3)?;
        match self {
            Simplicity::Simple => {
                s.serialize_field("simple", &true)?;
            }
            Simplicity::NotSimple(w) => {
                s.serialize_field("simple", &false)?;
                if let Some(w) = w {
                    s.serialize_field("witness", w)?;
                }
            }
            Simplicity::NoObstructionUpTo(b) => {
                s.serialize_field("simple", &serde_json::Value::Null)?;
                s.serialize_field("status", "no-obstruction-up-to-bound")?;
                s.serialize_field("bound", b)?;
            }
        }
        s.end()
    }
}
