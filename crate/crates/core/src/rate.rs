use core::cmp::Ordering;
use core::fmt;

/// An unreduced count ratio `num/den`.
///
/// Reports keep the raw counts (`0/16` stays `0/16`), so no normalization happens on
/// construction. Comparisons are exact cross-multiplications.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Rate {
    pub num: u64,
    pub den: u64,
}

impl Rate {
    pub const fn new(num: u64, den: u64) -> Self {
        Rate { num, den }
    }

    /// `2^-exp` as a ratio; `exp` must be below 64.
    pub fn dyadic(exp: u32) -> Self {
        assert!(exp < 64, "dyadic exponent out of range");
        Rate {
            num: 1,
            den: 1u64 << exp,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    /// Exact comparison; a zero denominator is treated as the value 0.
    pub fn cmp_exact(&self, other: &Rate) -> Ordering {
        let (an, ad) = if self.den == 0 {
            (0, 1)
        } else {
            (self.num, self.den)
        };
        let (bn, bd) = if other.den == 0 {
            (0, 1)
        } else {
            (other.num, other.den)
        };
        (an as u128 * bd as u128).cmp(&(bn as u128 * ad as u128))
    }

    pub fn ge(&self, other: &Rate) -> bool {
        self.cmp_exact(other) != Ordering::Less
    }

    pub fn le(&self, other: &Rate) -> bool {
        self.cmp_exact(other) != Ordering::Greater
    }

    /// `self >= 2^-exp`, valid for any exponent.
    pub fn ge_dyadic(&self, exp: u32) -> bool {
        // num/den >= 2^-exp  <=>  num * 2^exp >= den
        if self.num == 0 {
            return false;
        }
        if exp >= 64 {
            return true;
        }
        (self.num as u128) << exp >= self.den as u128
    }

    /// `self <= 2^-exp`, valid for any exponent.
    pub fn le_dyadic(&self, exp: u32) -> bool {
        if self.num == 0 {
            return true;
        }
        if exp >= 128 {
            return false;
        }
        // num * 2^exp <= den; guard the shift against overflow.
        if exp >= 64 {
            return false;
        }
        (self.num as u128) << exp <= self.den as u128
    }

    pub fn to_f64(&self) -> f64 {
        if self.den == 0 {
            0.0
        } else {
            self.num as f64 / self.den as f64
        }
    }
}

impl fmt::Display for Rate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}
