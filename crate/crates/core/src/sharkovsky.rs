//! The Sharkovsky ordering of periods:
//!
//! `3 > 5 > 7 > ... > 2*3 > 2*5 > ... > 4*3 > 4*5 > ... > 8 > 4 > 2 > 1`.
//!
//! Every period with an odd factor precedes every power of two; among the
//! former, fewer factors of two are sharper and smaller odd part is
//! sharper; among powers of two, larger is sharper.

use std::cmp::Ordering;

fn split(m: u64) -> (u32, u64) {
    debug_assert!(m >= 1);
    (m.trailing_zeros(), m >> m.trailing_zeros())
}

/// Total-order comparison: `Greater` means `m` is sharper than `n` (a map
/// with a cycle of period `m` must have a cycle of period `n`).
pub fn sharkovsky_compare(m: u64, n: u64) -> Ordering {
    let (am, om) = split(m);
    let (an, on) = split(n);
    match (om > 1, on > 1) {
        (true, true) => (am, om).cmp(&(an, on)).reverse(),
        (true, false) => Ordering::Greater,
        (false, true) => Ordering::Less,
        (false, false) => am.cmp(&an),
    }
}

/// Index for a Sharkovsky tail: either an ordinary period or the symbol
/// `2^inf` whose tail is the set of all powers of two.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SharkovskyIndex {
    Period(u64),
    TwoInfinity,
}

/// The tail `Sh(k) = {k} ∪ {m : k sharper than m}` restricted to values
/// `<= max_value`, enumerated sharpest first.
pub fn sharkovsky_tail(k: SharkovskyIndex, max_value: u64) -> impl Iterator<Item = u64> {
    let mut v: Vec<u64> = (1..=max_value)
        .filter(|&m| match k {
            SharkovskyIndex::Period(k) => {
                k == m || sharkovsky_compare(k, m) == Ordering::Greater
            }
            SharkovskyIndex::TwoInfinity => m.is_power_of_two(),
        })
        .collect();
    v.sort_by(|a, b| sharkovsky_compare(*b, *a));
    v.into_iter()
}

#[cfg(test)]
mod tests {
    use super::*;
    use SharkovskyIndex::{Period, TwoInfinity};

    #[test]
    fn compare_examples() {
        assert_eq!(sharkovsky_compare(3, 5), Ordering::Greater);
        assert_eq!(sharkovsky_compare(6, 8), Ordering::Greater);
        assert_eq!(sharkovsky_compare(7, 7), Ordering::Equal);
        assert_eq!(sharkovsky_compare(2 * 3, 2 * 5), Ordering::Greater);
        assert_eq!(sharkovsky_compare(8, 4), Ordering::Greater);
        assert_eq!(sharkovsky_compare(1, 2), Ordering::Less);
        // Sharpest of all is 3, dullest is 1.
        for m in 2..=100 {
            if m != 3 {
                assert_eq!(sharkovsky_compare(3, m), Ordering::Greater);
            }
            assert_eq!(sharkovsky_compare(1, m), Ordering::Less);
        }
    }

    #[test]
    fn tails() {
        assert_eq!(
            sharkovsky_tail(Period(4), 100).collect::<Vec<_>>(),
            vec![4, 2, 1]
        );
        assert_eq!(
            sharkovsky_tail(TwoInfinity, 10).collect::<Vec<_>>(),
            vec![8, 4, 2, 1]
        );
        assert_eq!(sharkovsky_tail(Period(1), 50).collect::<Vec<_>>(), vec![1]);
        // Sh(6) down to 12 contains the duller 2*odds and the powers of two.
        assert_eq!(
            sharkovsky_tail(Period(6), 12).collect::<Vec<_>>(),
            vec![6, 10, 12, 8, 4, 2, 1]
        );
    }
}
