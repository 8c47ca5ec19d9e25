//! Explicit bases for the derivation modules of the cones over the Shi
//! arrangements of types B and C, together with exact certification.
//!
//! The crate is layered bottom-up:
//!
//! * [`poly`]: exact rationals, sparse polynomials in `Q[x1..xl, z]`,
//!   exact division and determinants.
//! * [`bernoulli`]: the Bernoulli-like polynomials `B^B_{r,s}`, `B^C_{r,s}`
//!   and their homogenizations.
//! * [`rootsystem`]: positive roots, the cone over the Shi arrangement and its
//!   defining polynomial `Q`.
//! * [`derivation`]: the Euler derivation and the degree-`2l` derivations
//!   `phi_1, ..., phi_l`.
//! * [`verifier`]: membership, congruence and Saito-criterion checks.
//! * [`encoding`]: the JSON encodings shared by the CLI and reports.

pub mod bernoulli;
pub mod cli;
pub mod derivation;
pub mod encoding;
pub mod poly;
pub mod rootsystem;
pub mod verifier;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// Root system family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    B,
    C,
}

impl Family {
    pub const ALL: [Family; 2] = [Family::B, Family::C];
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::B => "B",
            Family::C => "C",
        })
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "B" | "b" => Ok(Family::B),
            "C" | "c" => Ok(Family::C),
            other => Err(format!("unknown family {other:?}; expected B or C")),
        }
    }
}
