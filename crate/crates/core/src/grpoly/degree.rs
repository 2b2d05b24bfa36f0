use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// An internal degree `c0 + ct·|t| + cs·|s|`.
///
/// The degrees `|t|` (even) and `|s|` (odd) of the additive graded group
/// scheme stay symbolic, so every internal degree is an integer linear form in
/// them.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
pub struct InternalDegree {
    pub c0: i64,
    pub ct: i64,
    pub cs: i64,
}

/// Numeric values substituted for `|t|` and `|s|` when a degree has to be
/// turned into a single integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvalWeights {
    pub t: i64,
    pub s: i64,
}

impl Default for EvalWeights {
    fn default() -> Self {
        EvalWeights { t: 2, s: 3 }
    }
}

impl InternalDegree {
    pub const ZERO: InternalDegree = InternalDegree { c0: 0, ct: 0, cs: 0 };

    pub const fn new(c0: i64, ct: i64, cs: i64) -> Self {
        InternalDegree { c0, ct, cs }
    }

    pub const fn constant(c0: i64) -> Self {
        InternalDegree { c0, ct: 0, cs: 0 }
    }

    /// `|t|`
    pub const fn t() -> Self {
        InternalDegree { c0: 0, ct: 1, cs: 0 }
    }

    /// `|s|`
    pub const fn s() -> Self {
        InternalDegree { c0: 0, ct: 0, cs: 1 }
    }

    /// Parity is that of `c0 + cs`, as `|t|` is even and `|s|` is odd.
    pub fn is_odd(&self) -> bool {
        (self.c0 + self.cs).rem_euclid(2) == 1
    }

    pub fn eval(&self, w: EvalWeights) -> i64 {
        self.c0 + self.ct * w.t + self.cs * w.s
    }

    pub fn is_zero(&self) -> bool {
        *self == Self::ZERO
    }
}

impl Add for InternalDegree {
    type Output = InternalDegree;
    fn add(self, o: Self) -> Self {
        InternalDegree::new(self.c0 + o.c0, self.ct + o.ct, self.cs + o.cs)
    }
}

impl AddAssign for InternalDegree {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl Sub for InternalDegree {
    type Output = InternalDegree;
    fn sub(self, o: Self) -> Self {
        InternalDegree::new(self.c0 - o.c0, self.ct - o.ct, self.cs - o.cs)
    }
}

impl Neg for InternalDegree {
    type Output = InternalDegree;
    fn neg(self) -> Self {
        InternalDegree::new(-self.c0, -self.ct, -self.cs)
    }
}

impl Mul<i64> for InternalDegree {
    type Output = InternalDegree;
    fn mul(self, k: i64) -> Self {
        InternalDegree::new(self.c0 * k, self.ct * k, self.cs * k)
    }
}

impl std::iter::Sum for InternalDegree {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(InternalDegree::ZERO, |a, b| a + b)
    }
}

impl fmt::Display for InternalDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        let mut push = |coef: i64, sym: &str| {
            if coef == 0 {
                return;
            }
            let mag = coef.unsigned_abs();
            if out.is_empty() {
                if coef < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(if coef < 0 { " - " } else { " + " });
            }
            if sym.is_empty() || mag != 1 {
                out.push_str(&mag.to_string());
            }
            out.push_str(sym);
        };
        push(self.c0, "");
        push(self.ct, "|t|");
        push(self.cs, "|s|");
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parity_follows_constant_and_s_part() {
        assert!(!InternalDegree::t().is_odd());
        assert!(InternalDegree::s().is_odd());
        assert!(InternalDegree::new(4, 0, -1).is_odd());
        assert!(!InternalDegree::new(1, -1, -1).is_odd());
    }

    #[test]
    fn display() {
        assert_eq!(InternalDegree::new(1, -2, 0).to_string(), "1 - 2|t|");
        assert_eq!(InternalDegree::new(0, 0, -1).to_string(), "-|s|");
        assert_eq!(InternalDegree::ZERO.to_string(), "0");
        assert_eq!(InternalDegree::new(7, 3, 1).to_string(), "7 + 3|t| + |s|");
    }

    proptest::proptest! {
        #[test]
        fn parity_is_additive(a in -50i64..50, b in -50i64..50, c in -50i64..50,
                              d in -50i64..50, e in -50i64..50, f in -50i64..50) {
            let x = InternalDegree::new(a, b, c);
            let y = InternalDegree::new(d, e, f);
            proptest::prop_assert_eq!((x + y).is_odd(), x.is_odd() ^ y.is_odd());
        }
    }
}
