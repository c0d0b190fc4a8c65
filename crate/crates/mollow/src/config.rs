//! Input data set and the key=value configuration file that overrides it.
//!
//! The file format is flat text, one assignment per line:
//!
//! ```text
//! # comment
//! alpha = 7.2973525693e-3
//! gamma_half_hz = 99.7094160e6
//! ```
//!
//! Unknown keys and malformed lines are configuration errors. The shipped
//! defaults are documented in `data/constants.default.conf`.

use crate::constants::PhysicalConstants;
use crate::hydrogen::TransitionSpec;
use crate::{Error, Hz, Result};

/// The full numerical input set: fundamental constants plus the adopted
/// per-transition data (decay widths and Lamb shifts).
#[derive(Debug, Clone, PartialEq)]
pub struct Inputs {
    pub constants: PhysicalConstants,
    pub half: TransitionSpec,
    pub three_half: TransitionSpec,
    /// Optional additive hyperfine shift on transition frequencies. Carried
    /// as an input only, never computed; defaults to zero.
    pub e_hfs: Hz,
}

impl Default for Inputs {
    fn default() -> Self {
        Self {
            constants: PhysicalConstants::default(),
            half: TransitionSpec::default_half(),
            three_half: TransitionSpec::default_three_half(),
            e_hfs: 0.0,
        }
    }
}

impl Inputs {
    /// The transition data for 2P_j, selected by 2j ∈ {1, 3}.
    pub fn transition(&self, j2: u32) -> Result<&TransitionSpec> {
        match j2 {
            1 => Ok(&self.half),
            3 => Ok(&self.three_half),
            _ => Err(Error::InvalidLevel(format!("2j = {j2}, expected 1 or 3"))),
        }
    }

    /// Load defaults and apply overrides from a configuration file.
    pub fn from_file(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        let mut inputs = Self::default();
        inputs.apply_str(&text)?;
        Ok(inputs)
    }

    /// Apply `key = value` overrides from already-loaded text.
    pub fn apply_str(&mut self, text: &str) -> Result<()> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: missing '='", lineno + 1)))?;
            self.apply(key.trim(), value.trim())
                .map_err(|e| Error::Config(format!("line {}: {e}", lineno + 1)))?;
        }
        Ok(())
    }

    fn apply(&mut self, key: &str, value: &str) -> Result<()> {
        fn num(value: &str) -> Result<f64> {
            value
                .parse::<f64>()
                .map_err(|_| Error::Config(format!("not a number: {value:?}")))
        }
        match key {
            "alpha" => self.constants.alpha = num(value)?,
            "z" => {
                self.constants.z = value
                    .parse::<u32>()
                    .map_err(|_| Error::Config(format!("not an integer: {value:?}")))?
            }
            "m_freq_hz" => self.constants.m_freq = num(value)?,
            "q_abs_coulomb" => self.constants.q_abs = num(value)?,
            "h_planck_j_s" => self.constants.h_planck = num(value)?,
            "c_m_per_s" => self.constants.c_light = num(value)?,
            "gamma_half_hz" => self.half.gamma.value = num(value)?,
            "gamma_half_sigma_hz" => self.half.gamma.sigma = num(value)?.abs(),
            "gamma_three_half_hz" => self.three_half.gamma.value = num(value)?,
            "gamma_three_half_sigma_hz" => self.three_half.gamma.sigma = num(value)?.abs(),
            "lamb_1s_hz" => {
                let v = num(value)?;
                self.half.lamb_1s.value = v;
                self.three_half.lamb_1s.value = v;
            }
            "lamb_1s_sigma_hz" => {
                let v = num(value)?.abs();
                self.half.lamb_1s.sigma = v;
                self.three_half.lamb_1s.sigma = v;
            }
            "lamb_2p_half_hz" => self.half.lamb_2p.value = num(value)?,
            "lamb_2p_half_sigma_hz" => self.half.lamb_2p.sigma = num(value)?.abs(),
            "lamb_2p_three_half_hz" => self.three_half.lamb_2p.value = num(value)?,
            "lamb_2p_three_half_sigma_hz" => self.three_half.lamb_2p.sigma = num(value)?.abs(),
            "e_hfs_hz" => self.e_hfs = num(value)?,
            other => return Err(Error::Config(format!("unknown key {other:?}"))),
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overrides_apply() {
        let mut inputs = Inputs::default();
        inputs
            .apply_str("# test\nalpha = 8e-3\n\ngamma_half_hz = 1.0e8 # trailing comment\n")
            .unwrap();
        assert_eq!(inputs.constants.alpha, 8e-3);
        assert_eq!(inputs.half.gamma.value, 1.0e8);
        // untouched entries keep their defaults
        assert_eq!(inputs.three_half.gamma.value, TransitionSpec::default_three_half().gamma.value);
    }

    #[test]
    fn unknown_key_is_rejected() {
        let mut inputs = Inputs::default();
        let err = inputs.apply_str("nonsense = 1\n").unwrap_err();
        assert!(matches!(err, Error::Config(_)));
    }

    #[test]
    fn malformed_line_is_rejected() {
        let mut inputs = Inputs::default();
        assert!(inputs.apply_str("alpha 7e-3\n").is_err());
        assert!(inputs.apply_str("alpha = seven\n").is_err());
    }

    #[test]
    fn shipped_defaults_file_reproduces_builtin_defaults() {
        let path =
            std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("data/constants.default.conf");
        let from_file = Inputs::from_file(&path).unwrap();
        assert_eq!(from_file, Inputs::default());
    }
}
