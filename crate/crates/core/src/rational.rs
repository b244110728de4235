//! Exact rational arithmetic.
//!
//! All coordinates, codes, slopes and cycle means in this crate are small
//! fractions, so a reduced `i128` numerator/denominator pair is plenty.
//! Arithmetic is checked: an overflow panics, it never wraps.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

fn gcd(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// A rational number, always stored in lowest terms with positive
/// denominator.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rational {
    num: i128,
    den: i128,
}

impl Rational {
    pub const ZERO: Rational = Rational { num: 0, den: 1 };
    pub const ONE: Rational = Rational { num: 1, den: 1 };
    /// 1/2, the right endpoint of every over-rotation interval.
    pub const ONE_HALF: Rational = Rational { num: 1, den: 2 };

    pub fn new(num: i128, den: i128) -> Self {
        assert!(den != 0, "rational with zero denominator");
        let g = gcd(num, den).max(1);
        let s = den.signum();
        Rational {
            num: s * num / g,
            den: s * den / g,
        }
    }

    pub fn int(n: i128) -> Self {
        Rational { num: n, den: 1 }
    }

    pub fn numer(&self) -> i128 {
        self.num
    }

    pub fn denom(&self) -> i128 {
        self.den
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn abs(self) -> Self {
        Rational {
            num: self.num.abs(),
            den: self.den,
        }
    }

    /// Largest integer `<= self`.
    pub fn floor(&self) -> i128 {
        self.num.div_euclid(self.den)
    }

    fn mul_i(a: i128, b: i128) -> i128 {
        a.checked_mul(b).expect("rational overflow")
    }

    fn add_i(a: i128, b: i128) -> i128 {
        a.checked_add(b).expect("rational overflow")
    }
}

impl Add for Rational {
    type Output = Rational;
    fn add(self, rhs: Rational) -> Rational {
        // Pre-reduce by the gcd of denominators to keep intermediates small.
        let g = gcd(self.den, rhs.den);
        let l = self.den / g;
        let r = rhs.den / g;
        Rational::new(
            Rational::add_i(
                Rational::mul_i(self.num, r),
                Rational::mul_i(rhs.num, l),
            ),
            Rational::mul_i(self.den, r),
        )
    }
}

impl Sub for Rational {
    type Output = Rational;
    fn sub(self, rhs: Rational) -> Rational {
        self + (-rhs)
    }
}

impl Mul for Rational {
    type Output = Rational;
    fn mul(self, rhs: Rational) -> Rational {
        let g1 = gcd(self.num, rhs.den).max(1);
        let g2 = gcd(rhs.num, self.den).max(1);
        Rational::new(
            Rational::mul_i(self.num / g1, rhs.num / g2),
            Rational::mul_i(self.den / g2, rhs.den / g1),
        )
    }
}

impl Div for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        assert!(rhs.num != 0, "division by zero rational");
        self * Rational::new(rhs.den, rhs.num)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational {
            num: -self.num,
            den: self.den,
        }
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        Rational::mul_i(self.num, other.den).cmp(&Rational::mul_i(other.num, self.den))
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::int(n as i128)
    }
}

impl From<usize> for Rational {
    fn from(n: usize) -> Self {
        Rational::int(n as i128)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Rational {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n, d),
            None => (s, "1"),
        };
        let num: i128 = n.trim().parse().map_err(|_| format!("bad numerator in {s:?}"))?;
        let den: i128 = d.trim().parse().map_err(|_| format!("bad denominator in {s:?}"))?;
        if den == 0 {
            return Err(format!("zero denominator in {s:?}"));
        }
        Ok(Rational::new(num, den))
    }
}
