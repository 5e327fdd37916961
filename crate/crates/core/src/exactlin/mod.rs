//! Exact rational scalars, dense matrices, and Hom-modules.
//!
//! Everything here is exact: a value is zero only when it is exactly zero,
//! and no tolerance ever enters a comparison.

mod matrix;
mod module;
pub mod vector;

pub use matrix::Matrix;
pub use module::{
    check_hom_module, check_hom_morphism, HomModule, LinearMapBetween, HOM_MODULE_MORPHISM, INVOLUTIVITY,
};

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};

/// Exact rational number, always stored in lowest terms with a positive
/// denominator.
pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn rat(num: i64, den: i64) -> Scalar {
    Scalar::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_scalar(s: &str) -> Result<Scalar> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::invalid(format!("not a rational number: {s:?}")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| Error::invalid(format!("not a rational number: {s:?}")))?;
    if den == BigInt::from(0) {
        return Err(Error::invalid(format!("zero denominator in {s:?}")));
    }
    Ok(Scalar::new(num, den))
}

/// Renders as `"p/q"`, or `"p"` when the denominator is one.
pub fn format_scalar(x: &Scalar) -> String {
    x.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_scalar("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_scalar("-4").unwrap(), int(-4));
        assert_eq!(parse_scalar(" 2/-4 ").unwrap(), rat(-1, 2));
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("x").is_err());
        assert_eq!(format_scalar(&rat(-6, 4)), "-3/2");
        assert_eq!(format_scalar(&rat(8, 4)), "2");
    }

    proptest! {
        #[test]
        fn scalar_text_round_trip(n in -10_000i64..10_000, d in 1i64..500) {
            let x = rat(n, d);
            prop_assert_eq!(parse_scalar(&format_scalar(&x)).unwrap(), x);
        }
    }
}
