//! Closest-from-the-left fractions.

use crate::rational::Rational;

/// The largest fraction `l/k` with `0 <= l`, `1 <= k < q` lying strictly
/// below `p/q`, found by brute force over all denominators below `q`.
/// Returns `0/1` when no positive candidate exists (then `0 = 0/1` is the
/// formal maximum).
///
/// Callers pass a reduced `p/q` with `0 < p/q <= 1/2` and `q >= 2`.
pub fn lf(p: usize, q: usize) -> Rational {
    assert!(q >= 2 && p >= 1 && 2 * p <= q, "lf needs 0 < p/q <= 1/2");
    assert!(crate::gcd(p, q) == 1, "lf needs a reduced fraction");
    let target = Rational::new(p as i128, q as i128);
    let mut best = Rational::ZERO;
    for k in 1..q {
        for l in 0..=k {
            let cand = Rational::new(l as i128, k as i128);
            if cand < target && cand > best {
                best = cand;
            }
        }
    }
    best
}
