//! The catalog of scalar transforms applied to modular inner values.
//!
//! Each variant is one functional form used by a published re-ranking
//! objective. A diversity term evaluates as `weight * transform(h(S))` for a
//! modular `h`.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// A parameterized scalar function `g`.
///
/// Domains and parameter ranges:
/// - `Identity`: g(x) = x
/// - `Reciprocal`: g(x) = 1/x for x > 0
/// - `Log`: g(x) = ln(x) for x > 0
/// - `ScaledReciprocal(l)`: g(x) = 1/(l*x) for x > 0, l > 0
/// - `Power(l)`: g(x) = x^l for x >= 0, l in [0, 1]; g(0) = 0 for every l
///   (the right limit, so coverage counts stay normalized at the empty set)
/// - `Saturation`: g(x) = x/(1+x) for x >= 0
/// - `Linear(l)`: g(x) = l*x for l > 0
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum ConcaveTransform {
    Identity,
    Reciprocal,
    Log,
    ScaledReciprocal(f64),
    Power(f64),
    Saturation,
    Linear(f64),
}

impl ConcaveTransform {
    pub fn name(self) -> &'static str {
        match self {
            ConcaveTransform::Identity => "identity",
            ConcaveTransform::Reciprocal => "reciprocal",
            ConcaveTransform::Log => "log",
            ConcaveTransform::ScaledReciprocal(_) => "scaled-reciprocal",
            ConcaveTransform::Power(_) => "power",
            ConcaveTransform::Saturation => "saturation",
            ConcaveTransform::Linear(_) => "linear",
        }
    }

    /// Checks the variant's parameter range.
    pub fn validate(self) -> Result<()> {
        match self {
            ConcaveTransform::ScaledReciprocal(l) if !(l > 0.0) => Err(Error::BadParameter(
                format!("scaled-reciprocal needs lambda > 0, got {l}"),
            )),
            ConcaveTransform::Power(l) if !(0.0..=1.0).contains(&l) => Err(Error::BadParameter(
                format!("power needs lambda in [0, 1], got {l}"),
            )),
            ConcaveTransform::Linear(l) if !(l > 0.0) => Err(Error::BadParameter(format!(
                "linear needs lambda > 0, got {l}"
            ))),
            _ => Ok(()),
        }
    }

    /// Evaluates `g(x)`, or a `Domain` error when `x` lies outside the
    /// variant's domain.
    pub fn apply(self, x: f64) -> Result<f64> {
        match self {
            ConcaveTransform::Identity => Ok(x),
            ConcaveTransform::Reciprocal => {
                if x > 0.0 {
                    Ok(1.0 / x)
                } else {
                    Err(Error::Domain { transform: self.name(), x })
                }
            }
            ConcaveTransform::Log => {
                if x > 0.0 {
                    Ok(x.ln())
                } else {
                    Err(Error::Domain { transform: self.name(), x })
                }
            }
            ConcaveTransform::ScaledReciprocal(l) => {
                if x > 0.0 {
                    Ok(1.0 / (l * x))
                } else {
                    Err(Error::Domain { transform: self.name(), x })
                }
            }
            ConcaveTransform::Power(l) => {
                if x > 0.0 {
                    // exact fast paths keep Power(1) == Identity bitwise
                    if l == 1.0 {
                        Ok(x)
                    } else if l == 0.5 {
                        Ok(x.sqrt())
                    } else if l == 0.0 {
                        Ok(1.0)
                    } else {
                        Ok(x.powf(l))
                    }
                } else if x == 0.0 {
                    Ok(0.0)
                } else {
                    Err(Error::Domain { transform: self.name(), x })
                }
            }
            ConcaveTransform::Saturation => {
                if x >= 0.0 {
                    Ok(x / (1.0 + x))
                } else {
                    Err(Error::Domain { transform: self.name(), x })
                }
            }
            ConcaveTransform::Linear(l) => Ok(l * x),
        }
    }

    /// True for the variants whose domain excludes zero but whose catalog
    /// use treats a zero inner mass as an absent term (a category with no
    /// members contributes nothing to a per-category sum).
    pub(crate) fn vanishes_at_zero(self) -> bool {
        matches!(
            self,
            ConcaveTransform::Reciprocal | ConcaveTransform::ScaledReciprocal(_)
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pointwise_forms() {
        assert_eq!(ConcaveTransform::Identity.apply(3.5).unwrap(), 3.5);
        assert_eq!(ConcaveTransform::Reciprocal.apply(4.0).unwrap(), 0.25);
        assert_eq!(ConcaveTransform::Log.apply(1.0).unwrap(), 0.0);
        assert_eq!(ConcaveTransform::ScaledReciprocal(2.0).apply(4.0).unwrap(), 0.125);
        assert_eq!(ConcaveTransform::Power(0.5).apply(2.0).unwrap(), 2.0_f64.sqrt());
        assert_eq!(ConcaveTransform::Saturation.apply(1.0).unwrap(), 0.5);
        assert_eq!(ConcaveTransform::Linear(3.0).apply(2.0).unwrap(), 6.0);
    }

    #[test]
    fn power_and_linear_at_one_match_identity() {
        for x in [0.0, 0.25, 1.0, 7.5, 1234.5] {
            assert_eq!(
                ConcaveTransform::Power(1.0).apply(x).unwrap(),
                ConcaveTransform::Identity.apply(x).unwrap()
            );
            assert_eq!(
                ConcaveTransform::Linear(1.0).apply(x).unwrap(),
                ConcaveTransform::Identity.apply(x).unwrap()
            );
        }
    }

    #[test]
    fn power_at_zero_is_zero_for_every_exponent() {
        for l in [0.0, 0.25, 0.5, 1.0] {
            assert_eq!(ConcaveTransform::Power(l).apply(0.0).unwrap(), 0.0);
        }
        // but x^0 = 1 away from zero
        assert_eq!(ConcaveTransform::Power(0.0).apply(0.1).unwrap(), 1.0);
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(
            ConcaveTransform::Log.apply(0.0),
            Err(Error::Domain { transform: "log", .. })
        ));
        assert!(ConcaveTransform::Reciprocal.apply(-1.0).is_err());
        assert!(ConcaveTransform::Power(0.5).apply(-0.1).is_err());
        assert!(ConcaveTransform::Saturation.apply(-2.0).is_err());
    }

    #[test]
    fn parameter_validation() {
        assert!(ConcaveTransform::Power(1.5).validate().is_err());
        assert!(ConcaveTransform::Power(0.0).validate().is_ok());
        assert!(ConcaveTransform::Linear(0.0).validate().is_err());
        assert!(ConcaveTransform::ScaledReciprocal(-1.0).validate().is_err());
    }
}
