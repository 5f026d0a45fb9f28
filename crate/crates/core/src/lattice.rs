//! Square lattice geometry. The construction only works on the lattice with
//! cell area 2π, i.e. lattice constant a = √(2π); the constructor refuses
//! anything else.

use crate::error::{Error, Result};

/// Lattice constant a = √(2π).
pub const LATTICE_A: f64 = 2.5066282746310002;

/// Configuration of the square lattice underlying all overlap sums.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeConfig {
    a: f64,
}

impl LatticeConfig {
    /// The standard lattice with a² = 2π.
    pub fn standard() -> Self {
        LatticeConfig { a: LATTICE_A }
    }

    /// Accepts only a = √(2π) (up to f64 rounding). The orthonormality
    /// identities used throughout rely on e^{2πi·integer} = 1 and break for
    /// any other cell size.
    pub fn try_new(a: f64) -> Result<Self> {
        if (a - LATTICE_A).abs() <= 1e-12 * LATTICE_A {
            Ok(LatticeConfig { a: LATTICE_A })
        } else {
            Err(Error::InvalidConfig(format!(
                "lattice constant must be sqrt(2*pi) = {LATTICE_A:.16}, got {a:.16}"
            )))
        }
    }

    #[inline]
    pub fn a(&self) -> f64 {
        self.a
    }
}

impl Default for LatticeConfig {
    fn default() -> Self {
        Self::standard()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_only_sqrt_two_pi() {
        assert!(LatticeConfig::try_new(LATTICE_A).is_ok());
        assert!(LatticeConfig::try_new(LATTICE_A * (1.0 + 1e-13)).is_ok());
        assert!(LatticeConfig::try_new(1.0).is_err());
        assert!(LatticeConfig::try_new(LATTICE_A * 1.0001).is_err());
    }

    #[test]
    fn cell_area_is_two_pi() {
        let a = LatticeConfig::standard().a();
        assert!((a * a - 2.0 * std::f64::consts::PI).abs() < 1e-15);
    }
}
