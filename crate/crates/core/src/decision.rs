//! Solver outcomes.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::formula::{Assignment, LsInstance};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Answer {
    Yes,
    No,
}

impl Answer {
    pub fn is_yes(self) -> bool {
        self == Answer::Yes
    }
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Answer::Yes => "YES",
            Answer::No => "NO",
        })
    }
}

/// Which procedure produced a decision.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    /// Forced-flip propagation for IHS-B− languages.
    Ihsb,
    /// Component flipping for width-2 affine languages.
    Width2,
    /// 1→0 bounded search tree for Horn languages.
    Horn,
    /// Bounded search tree for flip-separable languages.
    FlipSep,
    /// Exhaustive enumeration of flip sets of size at most `k`.
    Brute,
}

impl Algorithm {
    pub const ALL: [Algorithm; 5] = [
        Algorithm::Ihsb,
        Algorithm::Width2,
        Algorithm::Horn,
        Algorithm::FlipSep,
        Algorithm::Brute,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Algorithm::Ihsb => "ihsb",
            Algorithm::Width2 => "width2",
            Algorithm::Horn => "horn",
            Algorithm::FlipSep => "flipsep",
            Algorithm::Brute => "brute",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.tag() == s)
            .ok_or_else(|| {
                format!("unknown algorithm {s:?} (expected ihsb, width2, horn, flipsep or brute)")
            })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub algorithm: Algorithm,
    /// Search-tree nodes (assignments) visited; for the oracle, subsets tested.
    pub nodes: u64,
    /// Nodes that had two or more children.
    pub branch_points: u64,
}

impl SearchStats {
    pub fn new(algorithm: Algorithm) -> Self {
        Self {
            algorithm,
            nodes: 0,
            branch_points: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decision {
    pub answer: Answer,
    pub witness: Option<Assignment>,
    pub stats: SearchStats,
}

impl Decision {
    pub fn yes(witness: Assignment, stats: SearchStats) -> Self {
        Self {
            answer: Answer::Yes,
            witness: Some(witness),
            stats,
        }
    }

    pub fn no(stats: SearchStats) -> Self {
        Self {
            answer: Answer::No,
            witness: None,
            stats,
        }
    }

    pub fn is_yes(&self) -> bool {
        self.answer == Answer::Yes
    }

    /// Re-checks the witness contract against `inst`.
    pub fn verify(&self, inst: &LsInstance) -> Result<(), String> {
        match (self.answer, &self.witness) {
            (Answer::Yes, Some(w)) => inst.check_witness(w),
            (Answer::Yes, None) => Err("YES without a witness".into()),
            (Answer::No, Some(_)) => Err("NO with a witness".into()),
            (Answer::No, None) => Ok(()),
        }
    }
}
