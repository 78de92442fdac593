use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Hölder exponent `p > 1` and power-mean exponent `q >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawParams")]
pub struct ExponentParams {
    p: f64,
    q: f64,
}

#[derive(Deserialize)]
struct RawParams {
    p: f64,
    q: f64,
}

impl TryFrom<RawParams> for ExponentParams {
    type Error = Error;
    fn try_from(raw: RawParams) -> Result<Self> {
        ExponentParams::new(raw.p, raw.q)
    }
}

impl Default for ExponentParams {
    fn default() -> Self {
        Self { p: 2.0, q: 2.0 }
    }
}

pub(crate) fn check_p(p: f64) -> Result<()> {
    if p.is_finite() && p > 1.0 {
        Ok(())
    } else {
        Err(Error::Parameter(format!("p must satisfy p > 1 (got {p})")))
    }
}

pub(crate) fn check_q(q: f64) -> Result<()> {
    if q.is_finite() && q >= 1.0 {
        Ok(())
    } else {
        Err(Error::Parameter(format!("q must satisfy q >= 1 (got {q})")))
    }
}

impl ExponentParams {
    pub fn new(p: f64, q: f64) -> Result<Self> {
        check_p(p)?;
        check_q(q)?;
        Ok(Self { p, q })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    /// Hölder conjugate `p/(p-1)` of `p`.
    pub fn holder_conjugate(&self) -> f64 {
        self.p / (self.p - 1.0)
    }
}

/// Which inequality a right-hand side belongs to. The first five are the
/// classical trapezoid-type baselines, the last three carry the free point `x`.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
#[serde(rename_all = "lowercase")]
pub enum TheoremId {
    Ion1,
    Ion2,
    Eq1,
    Eq2,
    Eq3,
    Thm6,
    Thm7,
    Thm8,
}

/// Which power of `|f'|` must be quasi-convex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Hypothesis {
    /// `|f'|`
    H1,
    /// `|f'|^(p/(p-1))`
    Hp,
    /// `|f'|^q`
    Hq,
}

impl TheoremId {
    pub const ALL: [TheoremId; 8] = [
        TheoremId::Ion1,
        TheoremId::Ion2,
        TheoremId::Eq1,
        TheoremId::Eq2,
        TheoremId::Eq3,
        TheoremId::Thm6,
        TheoremId::Thm7,
        TheoremId::Thm8,
    ];

    pub const BASELINES: [TheoremId; 5] = [
        TheoremId::Ion1,
        TheoremId::Ion2,
        TheoremId::Eq1,
        TheoremId::Eq2,
        TheoremId::Eq3,
    ];

    pub const WEIGHTED: [TheoremId; 3] = [TheoremId::Thm6, TheoremId::Thm7, TheoremId::Thm8];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::Ion1 => "ion1",
            TheoremId::Ion2 => "ion2",
            TheoremId::Eq1 => "eq1",
            TheoremId::Eq2 => "eq2",
            TheoremId::Eq3 => "eq3",
            TheoremId::Thm6 => "thm6",
            TheoremId::Thm7 => "thm7",
            TheoremId::Thm8 => "thm8",
        }
    }

    pub fn is_baseline(self) -> bool {
        !TheoremId::WEIGHTED.contains(&self)
    }

    pub fn hypothesis(self) -> Hypothesis {
        match self {
            TheoremId::Ion1 | TheoremId::Eq1 | TheoremId::Thm6 => Hypothesis::H1,
            TheoremId::Ion2 | TheoremId::Eq2 | TheoremId::Thm7 => Hypothesis::Hp,
            TheoremId::Eq3 | TheoremId::Thm8 => Hypothesis::Hq,
        }
    }

    /// The baseline a weighted bound reduces to at the midpoint.
    pub fn midpoint_reduction(self) -> Option<TheoremId> {
        match self {
            TheoremId::Thm6 => Some(TheoremId::Eq1),
            TheoremId::Thm7 => Some(TheoremId::Eq2),
            TheoremId::Thm8 => Some(TheoremId::Eq3),
            _ => None,
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| Error::Parameter(format!("unknown theorem id `{s}`")))
    }
}
