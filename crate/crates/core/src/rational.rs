//! Exact rational scores.
//!
//! Carry scores, epsilon values, and regime thresholds are compared exactly;
//! `7/9` and `1/60` are never floats.

use num_rational::Ratio;

pub type Rational = Ratio<i64>;

/// `num/den` as a reduced rational. Panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> Rational {
    Ratio::new(num, den)
}

pub fn to_f64(r: Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_and_formats() {
        assert_eq!(ratio(594, 40000).to_string(), "297/20000");
        assert_eq!(ratio(9, 9).to_string(), "1");
        assert_eq!(ratio(55, 100), ratio(11, 20));
    }

    #[test]
    fn exact_threshold_compare() {
        assert!(ratio(243, 289) > ratio(7, 9));
        assert!(ratio(7, 9) <= ratio(7, 9));
    }
}
