//! Seeded generator of functions whose derivative magnitude is quasi-convex
//! by construction. Each family fixes `f'` and obtains `f` by exact
//! antidifferentiation:
//!
//! | family              | `f'(t)`                    | `f(t)`                         |
//! |---------------------|----------------------------|--------------------------------|
//! | `monomial-kink`     | `c·sign(t-m)·|t-m|^k`      | `c·|t-m|^(k+1)/(k+1)`          |
//! | `monotone-exp`      | `c·exp(s·t)`               | `(c/s)·exp(s·t)`               |
//! | `shifted-odd-power` | `c·(t-m)^k`, `k` odd       | `c·(t-m)^(k+1)/(k+1)`          |

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exprlang::{parse, DomainError, Expression, RealFunction};
use crate::numerics::Interval;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    MonomialKink,
    MonotoneExp,
    ShiftedOddPower,
}

impl Family {
    pub const ALL: [Family; 3] = [
        Family::MonomialKink,
        Family::MonotoneExp,
        Family::ShiftedOddPower,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Family::MonomialKink => "monomial-kink",
            Family::MonotoneExp => "monotone-exp",
            Family::ShiftedOddPower => "shifted-odd-power",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| Error::Generator(format!("unknown family `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeneratorConfig {
    pub seed: u64,
    pub family: Family,
    pub interval: Interval,
    /// Bounds on the magnitude of the leading coefficient `c`.
    pub scale: (f64, f64),
}

impl GeneratorConfig {
    pub fn validate(&self) -> Result<()> {
        let (lo, hi) = self.scale;
        if !(lo.is_finite() && hi.is_finite() && lo > 0.0 && lo <= hi) {
            return Err(Error::Generator(format!(
                "degenerate scale bounds ({lo}, {hi}); need 0 < lo <= hi"
            )));
        }
        Ok(())
    }
}

/// Odd exponents drawn by `shifted-odd-power`.
const ODD_POWERS: [i32; 3] = [1, 3, 5];
/// Range of the real exponent `k` for `monomial-kink`.
const KINK_POWER: (f64, f64) = (0.5, 3.0);
/// Range of `|s|` for `monotone-exp`.
const EXP_RATE: (f64, f64) = (0.25, 3.0);
/// `m` is kept this fraction of the width away from either endpoint.
const INTERIOR_MARGIN: f64 = 0.1;

/// A generated `(f, f')` pair with the parameters that determine it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratedFunction {
    pub family: Family,
    pub seed: u64,
    pub interval: Interval,
    pub c: f64,
    /// Shift `m` (unused by `monotone-exp`).
    pub shift: f64,
    /// Exponent `k` of `f'` (unused by `monotone-exp`).
    pub power: f64,
    /// Rate `s` (only `monotone-exp`).
    pub rate: f64,
}

impl GeneratedFunction {
    pub fn id(&self) -> String {
        format!("gen:{}:{}", self.family, self.seed)
    }

    pub fn f(&self, t: f64) -> f64 {
        let (c, m, k, s) = (self.c, self.shift, self.power, self.rate);
        match self.family {
            Family::MonomialKink => c * (t - m).abs().powf(k + 1.0) / (k + 1.0),
            Family::MonotoneExp => c / s * (s * t).exp(),
            Family::ShiftedOddPower => c * (t - m).powi(k as i32 + 1) / (k + 1.0),
        }
    }

    pub fn f_prime(&self, t: f64) -> f64 {
        let (c, m, k, s) = (self.c, self.shift, self.power, self.rate);
        match self.family {
            Family::MonomialKink => {
                let d = t - m;
                let sign = if d > 0.0 {
                    1.0
                } else if d < 0.0 {
                    -1.0
                } else {
                    0.0
                };
                c * sign * d.abs().powf(k)
            }
            Family::MonotoneExp => c * (s * t).exp(),
            Family::ShiftedOddPower => c * (t - m).powi(k as i32),
        }
    }

    /// `f` in the expression language.
    pub fn source(&self) -> String {
        let (c, m, k, s) = (self.c, self.shift, self.power, self.rate);
        match self.family {
            Family::MonomialKink => {
                format!("({c:?}) * abs(x - ({m:?}))^({:?}) / ({:?})", k + 1.0, k + 1.0)
            }
            Family::MonotoneExp => format!("({:?}) * exp(({s:?}) * x)", c / s),
            Family::ShiftedOddPower => {
                format!("({c:?}) * (x - ({m:?}))^({:?}) / ({:?})", k + 1.0, k + 1.0)
            }
        }
    }

    pub fn expression(&self) -> Expression {
        parse(&self.source()).expect("generated sources parse")
    }
}

impl RealFunction for GeneratedFunction {
    fn value(&self, x: f64) -> std::result::Result<f64, DomainError> {
        Ok(self.f(x))
    }

    fn derivative(&self, x: f64) -> std::result::Result<f64, DomainError> {
        Ok(self.f_prime(x))
    }

    fn label(&self) -> String {
        self.id()
    }
}

fn uniform(rng: &mut ChaCha8Rng, (lo, hi): (f64, f64)) -> f64 {
    if lo == hi {
        lo
    } else {
        rng.gen_range(lo..=hi)
    }
}

fn signed(rng: &mut ChaCha8Rng, range: (f64, f64)) -> f64 {
    let magnitude = uniform(rng, range);
    if rng.gen::<bool>() {
        magnitude
    } else {
        -magnitude
    }
}

/// Draw one function. Identical configs give identical parameters.
pub fn generate(config: &GeneratorConfig) -> Result<GeneratedFunction> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let iv = config.interval;
    let c = signed(&mut rng, config.scale);
    let interior = (
        iv.a() + INTERIOR_MARGIN * iv.width(),
        iv.b() - INTERIOR_MARGIN * iv.width(),
    );
    let (shift, power, rate) = match config.family {
        Family::MonomialKink => (uniform(&mut rng, interior), uniform(&mut rng, KINK_POWER), 0.0),
        Family::MonotoneExp => (0.0, 0.0, signed(&mut rng, EXP_RATE)),
        Family::ShiftedOddPower => {
            let m = uniform(&mut rng, interior);
            let k = ODD_POWERS[rng.gen_range(0..ODD_POWERS.len())];
            (m, f64::from(k), 0.0)
        }
    };
    Ok(GeneratedFunction {
        family: config.family,
        seed: config.seed,
        interval: iv,
        c,
        shift,
        power,
        rate,
    })
}
