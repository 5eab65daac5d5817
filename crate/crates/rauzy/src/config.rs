//! Run configuration shared by every subcommand and serialized with each
//! report.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use rauzy_core::algebra::{SetupOptions, SignScheme};
use rauzy_core::tiling::{LatticePoint, DEFAULT_TILE_BUDGET};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// Largest level accepted on the command line.
pub const MAX_LEVEL: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "p", rename_all = "lowercase")]
pub enum FieldChoice {
    Rational,
    Prime(u32),
}

impl Default for FieldChoice {
    fn default() -> Self {
        FieldChoice::Prime(5)
    }
}

impl fmt::Display for FieldChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldChoice::Rational => write!(f, "Q"),
            FieldChoice::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

/// Parses `parity`, `constant`, `family-N` or `corrupted-M-N`.
pub fn parse_signs(s: &str) -> Result<SignScheme, CliError> {
    let bad = || CliError::Config(format!("unknown sign scheme `{s}`"));
    match s {
        "parity" => Ok(SignScheme::Parity),
        "constant" => Ok(SignScheme::Constant),
        _ => {
            if let Some(i) = s.strip_prefix("family-") {
                let i: u8 = i.parse().map_err(|_| bad())?;
                if i >= SignScheme::FAMILY_SIZE {
                    return Err(bad());
                }
                return Ok(SignScheme::Family(i));
            }
            let rest = s.strip_prefix("corrupted-").ok_or_else(bad)?;
            // coordinates may be negative, so split on the middle dash only
            let (m, n) = rest
                .char_indices()
                .skip(1)
                .find(|&(_, c)| c == '-')
                .map(|(i, _)| (&rest[..i], &rest[i + 1..]))
                .ok_or_else(bad)?;
            let m = i64::from_str(m).map_err(|_| bad())?;
            let n = i64::from_str(n).map_err(|_| bad())?;
            Ok(SignScheme::Corrupted(LatticePoint::new(m, n)))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    /// `None` lets each check use its own levels.
    pub level: Option<usize>,
    pub field: FieldChoice,
    /// Extra substitution steps allowed when completing stars around a patch.
    pub padding: usize,
    pub signs: String,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub tile_budget: usize,
    /// Star-relation signs collapse in characteristic 2, so it is opt-in.
    #[serde(default)]
    pub allow_char_two: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            level: None,
            field: FieldChoice::default(),
            padding: 6,
            signs: "parity".into(),
            seed: rauzy_core::modcalc::DEFAULT_SEED,
            out: None,
            tile_budget: DEFAULT_TILE_BUDGET,
            allow_char_two: false,
        }
    }
}

impl RunConfig {
    /// Defaults for the acceptance suite: exact rationals.
    pub fn verification() -> Self {
        Self { field: FieldChoice::Rational, ..Self::default() }
    }

    pub fn sign_scheme(&self) -> Result<SignScheme, CliError> {
        parse_signs(&self.signs)
    }

    pub fn setup_options(&self) -> SetupOptions {
        SetupOptions { max_padding: self.padding, tile_budget: self.tile_budget, ..SetupOptions::default() }
    }

    /// Rejects settings no check can run with.
    pub fn validate(&self) -> Result<(), CliError> {
        if let Some(l) = self.level {
            if l > MAX_LEVEL {
                return Err(CliError::Config(format!("level {l} above the supported maximum {MAX_LEVEL}")));
            }
        }
        if let FieldChoice::Prime(p) = self.field {
            if rauzy_core::field::PrimeField::new(p).is_none() {
                return Err(CliError::Config(format!("{p} is not a prime below 2^31")));
            }
            if p == 2 && !self.allow_char_two {
                return Err(CliError::Config("characteristic 2 needs --allow-char-two".into()));
            }
        }
        self.sign_scheme()?;
        Ok(())
    }

    pub fn level_or(&self, default: usize) -> usize {
        self.level.unwrap_or(default)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sign_names_round_trip() {
        for s in [
            SignScheme::Parity,
            SignScheme::Constant,
            SignScheme::Family(17),
            SignScheme::Corrupted(LatticePoint::new(-3, 4)),
            SignScheme::Corrupted(LatticePoint::new(2, -1)),
        ] {
            assert_eq!(parse_signs(&s.name()).unwrap(), s);
        }
        assert!(parse_signs("family-64").is_err());
        assert!(parse_signs("corrupted-1").is_err());
        assert!(parse_signs("nope").is_err());
    }

    #[test]
    fn config_validation() {
        assert!(RunConfig::default().validate().is_ok());
        let c = RunConfig { field: FieldChoice::Prime(91), ..Default::default() };
        assert!(c.validate().is_err());
        let c = RunConfig { level: Some(40), ..Default::default() };
        assert!(c.validate().is_err());
        let c = RunConfig { field: FieldChoice::Prime(2), ..Default::default() };
        assert!(c.validate().is_err());
        assert!(RunConfig { allow_char_two: true, ..c }.validate().is_ok());
    }

    #[test]
    fn config_serializes() {
        let c = RunConfig { field: FieldChoice::Rational, ..Default::default() };
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(serde_json::from_str::<RunConfig>(&s).unwrap(), c);
    }
}
