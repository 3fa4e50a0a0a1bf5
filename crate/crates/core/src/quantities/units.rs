//! SI quantities with dimension bookkeeping.

use std::fmt;
use std::ops::{Div, Mul};

use crate::error::{Error, Result};

const BASE_SYMBOLS: [&str; 7] = ["m", "kg", "s", "A", "K", "mol", "cd"];

/// Integer exponents over (m, kg, s, A, K, mol, cd).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Dimension(pub [i8; 7]);

impl Dimension {
    pub const DIMENSIONLESS: Dimension = Dimension([0; 7]);
    pub const LENGTH: Dimension = Dimension([1, 0, 0, 0, 0, 0, 0]);
    pub const MASS: Dimension = Dimension([0, 1, 0, 0, 0, 0, 0]);
    pub const TIME: Dimension = Dimension([0, 0, 1, 0, 0, 0, 0]);
    pub const CURRENT: Dimension = Dimension([0, 0, 0, 1, 0, 0, 0]);

    pub fn powi(self, n: i8) -> Dimension {
        Dimension(self.0.map(|e| e * n))
    }
}

impl Mul for Dimension {
    type Output = Dimension;
    // exponents add when quantities multiply
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: Dimension) -> Dimension {
        let mut out = self.0;
        for (o, r) in out.iter_mut().zip(rhs.0) {
            *o += r;
        }
        Dimension(out)
    }
}

impl Div for Dimension {
    type Output = Dimension;
    fn div(self, rhs: Dimension) -> Dimension {
        self * rhs.powi(-1)
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .zip(BASE_SYMBOLS)
            .filter(|(e, _)| **e != 0)
            .map(|(e, s)| if *e == 1 { s.to_string() } else { format!("{s}^{e}") })
            .collect();
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("·"))
        }
    }
}

/// A value tagged with its SI dimension.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quantity {
    pub value: f64,
    pub dimension: Dimension,
}

impl Quantity {
    pub fn new(value: f64, dimension: Dimension) -> Self {
        Quantity { value, dimension }
    }

    pub fn dimensionless(value: f64) -> Self {
        Quantity::new(value, Dimension::DIMENSIONLESS)
    }

    /// Multiplies by a pure number.
    pub fn scale(self, k: f64) -> Self {
        Quantity::new(self.value * k, self.dimension)
    }

    pub fn powi(self, n: i8) -> Self {
        Quantity::new(self.value.powi(n as i32), self.dimension.powi(n))
    }

    pub fn checked_add(&self, rhs: &Quantity) -> Result<Quantity> {
        self.same_dimension(rhs)?;
        Ok(Quantity::new(self.value + rhs.value, self.dimension))
    }

    pub fn checked_sub(&self, rhs: &Quantity) -> Result<Quantity> {
        self.same_dimension(rhs)?;
        Ok(Quantity::new(self.value - rhs.value, self.dimension))
    }

    fn same_dimension(&self, rhs: &Quantity) -> Result<()> {
        if self.dimension == rhs.dimension {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                left: self.dimension.to_string(),
                right: rhs.dimension.to_string(),
            })
        }
    }
}

impl Mul for Quantity {
    type Output = Quantity;
    fn mul(self, rhs: Quantity) -> Quantity {
        Quantity::new(self.value * rhs.value, self.dimension * rhs.dimension)
    }
}

impl Div for Quantity {
    type Output = Quantity;
    fn div(self, rhs: Quantity) -> Quantity {
        Quantity::new(self.value / rhs.value, self.dimension / rhs.dimension)
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.value, self.dimension)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn dim() -> impl Strategy<Value = Dimension> {
        prop::array::uniform7(-4i8..=4).prop_map(Dimension)
    }

    proptest! {
        #[test]
        fn product_adds_exponents(d1 in dim(), d2 in dim(), a in -1e3..1e3f64, b in -1e3..1e3f64) {
            let p = Quantity::new(a, d1) * Quantity::new(b, d2);
            for i in 0..7 {
                prop_assert_eq!(p.dimension.0[i], d1.0[i] + d2.0[i]);
            }
            let q = p / Quantity::new(b.max(1.0), d2);
            prop_assert_eq!(q.dimension, d1);
        }

        #[test]
        fn addition_requires_equal_dimensions(d1 in dim(), d2 in dim()) {
            let r = Quantity::new(1.0, d1).checked_add(&Quantity::new(2.0, d2));
            prop_assert_eq!(r.is_ok(), d1 == d2);
        }
    }

    #[test]
    fn display() {
        let accel = Dimension::LENGTH / Dimension::TIME.powi(2);
        assert_eq!(accel.to_string(), "m·s^-2");
        assert_eq!(Dimension::DIMENSIONLESS.to_string(), "1");
    }

    #[test]
    fn mismatch_is_reported() {
        let len = Quantity::new(1.0, Dimension::LENGTH);
        let mass = Quantity::new(1.0, Dimension::MASS);
        assert!(matches!(len.checked_sub(&mass), Err(Error::DimensionMismatch { .. })));
    }
}
