//! Symbolic dynamics of unimodal patterns.
//!
//! Itineraries over the alphabet `L < C < R` are compared by the parity
//! order: at the first difference, the larger symbol wins when an even
//! number of `R`s precedes it, the smaller when the count is odd. Every
//! sequence in scope is eventually periodic, so it is stored as a
//! (preperiod, period) pair in canonical form, which makes equality and
//! comparison decidable.

use crate::pattern::Pattern;
use crate::rational::Rational;
use crate::{gcd, Error, Result};
use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    L,
    C,
    R,
}

impl Symbol {
    fn from_char(c: char) -> Option<Symbol> {
        match c {
            'L' => Some(Symbol::L),
            'C' => Some(Symbol::C),
            'R' => Some(Symbol::R),
            _ => None,
        }
    }

    fn as_char(self) -> char {
        match self {
            Symbol::L => 'L',
            Symbol::C => 'C',
            Symbol::R => 'R',
        }
    }
}

/// An eventually periodic word over `{L, C, R}` in canonical form: the
/// period word is primitive and the preperiod is shortest possible.
///
/// For sequences produced by the kneading constructors, `C` occurs only as
/// the final letter of the period word (the return of a periodic critical
/// orbit); itineraries started elsewhere on an orbit may carry `C` at other
/// positions.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct KneadingSequence {
    preperiod: Vec<Symbol>,
    period: Vec<Symbol>,
}

/// Outcome of a detailed comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ComparisonDetail {
    pub ordering: Ordering,
    /// 0-based index of the first difference, when not equal.
    pub first_difference: Option<usize>,
    /// Number of `R`s strictly before the first difference.
    pub rs_before: usize,
    /// True when one of the differing symbols is `C`; the order treats `C`
    /// as an ordinary middle symbol, but such comparisons are flagged.
    pub c_at_difference: bool,
}

impl KneadingSequence {
    pub fn new(preperiod: Vec<Symbol>, period: Vec<Symbol>) -> Self {
        assert!(!period.is_empty(), "period word must be nonempty");
        let mut s = KneadingSequence { preperiod, period };
        s.canonicalize();
        s
    }

    pub fn periodic(period: Vec<Symbol>) -> Self {
        Self::new(Vec::new(), period)
    }

    fn canonicalize(&mut self) {
        // Reduce the period to its primitive root.
        let n = self.period.len();
        for d in 1..n {
            if n % d != 0 {
                continue;
            }
            if (d..n).all(|i| self.period[i] == self.period[i - d]) {
                self.period.truncate(d);
                break;
            }
        }
        // Absorb preperiod symbols that merely rotate the period.
        while let Some(&last) = self.preperiod.last() {
            if last == *self.period.last().unwrap() {
                self.preperiod.pop();
                self.period.rotate_right(1);
            } else {
                break;
            }
        }
    }

    pub fn preperiod(&self) -> &[Symbol] {
        &self.preperiod
    }

    pub fn period(&self) -> &[Symbol] {
        &self.period
    }

    pub fn symbol_at(&self, i: usize) -> Symbol {
        if i < self.preperiod.len() {
            self.preperiod[i]
        } else {
            self.period[(i - self.preperiod.len()) % self.period.len()]
        }
    }

    /// The first `n` symbols as a plain string.
    pub fn prefix(&self, n: usize) -> String {
        (0..n).map(|i| self.symbol_at(i).as_char()).collect()
    }

    /// The sequence with its first `j` symbols dropped.
    pub fn shift(&self, j: usize) -> KneadingSequence {
        if j <= self.preperiod.len() {
            KneadingSequence::new(self.preperiod[j..].to_vec(), self.period.clone())
        } else {
            let r = (j - self.preperiod.len()) % self.period.len();
            let mut period = self.period.clone();
            period.rotate_left(r);
            KneadingSequence::periodic(period)
        }
    }

    /// Parity-order comparison; `Greater` means `self` is the stronger
    /// sequence. Two eventually periodic sequences agreeing past both
    /// preperiods and a full least common period are equal, so the scan is
    /// bounded.
    pub fn compare(&self, other: &KneadingSequence) -> Ordering {
        self.compare_detailed(other).ordering
    }

    pub fn compare_detailed(&self, other: &KneadingSequence) -> ComparisonDetail {
        let pre = self.preperiod.len().max(other.preperiod.len());
        let l = lcm(self.period.len(), other.period.len());
        let horizon = pre + 2 * l;
        let mut rs = 0usize;
        for i in 0..horizon {
            let a = self.symbol_at(i);
            let b = other.symbol_at(i);
            if a != b {
                let raw = a.cmp(&b);
                let ordering = if rs % 2 == 0 { raw } else { raw.reverse() };
                return ComparisonDetail {
                    ordering,
                    first_difference: Some(i),
                    rs_before: rs,
                    c_at_difference: a == Symbol::C || b == Symbol::C,
                };
            }
            if a == Symbol::R {
                rs += 1;
            }
        }
        debug_assert_eq!(self, other, "sequences agreeing past the horizon are equal");
        ComparisonDetail {
            ordering: Ordering::Equal,
            first_difference: None,
            rs_before: rs,
            c_at_difference: false,
        }
    }

    /// True when the sequence dominates all of its shifts.
    pub fn is_shift_maximal(&self) -> bool {
        let span = self.preperiod.len() + self.period.len();
        (1..=span).all(|j| self.shift(j).compare(self) != Ordering::Greater)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

impl Ord for KneadingSequence {
    fn cmp(&self, other: &Self) -> Ordering {
        self.compare(other)
    }
}

impl PartialOrd for KneadingSequence {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for KneadingSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.preperiod {
            write!(f, "{}", s.as_char())?;
        }
        write!(f, "(")?;
        for s in &self.period {
            write!(f, "{}", s.as_char())?;
        }
        write!(f, ")^inf")
    }
}

impl fmt::Debug for KneadingSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for KneadingSequence {
    type Err = Error;

    /// Parses the text form `PRE(PERIOD)^inf`, e.g. `RL(RRLRR)^inf`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let open = s
            .find('(')
            .ok_or_else(|| Error::Malformed(format!("missing '(' in {s:?}")))?;
        let rest = &s[open + 1..];
        let close = rest
            .find(')')
            .ok_or_else(|| Error::Malformed(format!("missing ')' in {s:?}")))?;
        if &rest[close + 1..] != "^inf" {
            return Err(Error::Malformed(format!("expected `)^inf` in {s:?}")));
        }
        let word = |t: &str| -> Result<Vec<Symbol>> {
            t.chars()
                .map(|c| {
                    Symbol::from_char(c).ok_or_else(|| Error::Malformed(format!("bad symbol {c:?}")))
                })
                .collect()
        };
        let pre = word(&s[..open])?;
        let per = word(&rest[..close])?;
        if per.is_empty() {
            return Err(Error::Malformed("empty period word".into()));
        }
        Ok(KneadingSequence::new(pre, per))
    }
}

/// Itinerary of the forward orbit of the given spatial point of a unimodal
/// pattern, relative to its maximum point.
pub fn itinerary_of_point(pattern: &Pattern, start: usize) -> Result<KneadingSequence> {
    let c = pattern.max_point()?;
    let mut word = Vec::with_capacity(pattern.period());
    let mut x = start;
    for _ in 0..pattern.period() {
        word.push(match x.cmp(&c) {
            Ordering::Less => Symbol::L,
            Ordering::Equal => Symbol::C,
            Ordering::Greater => Symbol::R,
        });
        x = pattern.image(x);
    }
    Ok(KneadingSequence::periodic(word))
}

/// Kneading sequence of a unimodal pattern: the itinerary of the image of
/// its maximum point.
pub fn kneading_of_pattern(pattern: &Pattern) -> Result<KneadingSequence> {
    let c = pattern.max_point()?;
    itinerary_of_point(pattern, pattern.image(c))
}

fn check_rho(p: usize, q: usize) -> Result<()> {
    if p >= 1 && 2 * p < q && gcd(p, q) == 1 {
        Ok(())
    } else {
        Err(Error::RhoOutOfRange { p, q })
    }
}

/// The weakest kneading sequence with over-rotation interval
/// `[p/q, 1/2]`: iterate the mod-1 shift by `rho = p/q` starting at `rho`;
/// position `n` reads `C` on 0, `R` strictly inside `(0, 2 rho)`, `L` at or
/// beyond `2 rho`. Purely periodic with period `q` and a single `C` at
/// position `q - 1`. This is also the kneading sequence of the unimodal
/// over-twist of number `p/q`.
pub fn rotation_kneading(p: usize, q: usize) -> Result<KneadingSequence> {
    check_rho(p, q)?;
    Ok(KneadingSequence::periodic(rotation_word(p, q, q)))
}

fn rotation_word(p: usize, q: usize, len: usize) -> Vec<Symbol> {
    (0..len)
        .map(|i| {
            let v = (i + 1) * p % q;
            if v == 0 {
                Symbol::C
            } else if v < 2 * p {
                Symbol::R
            } else {
                Symbol::L
            }
        })
        .collect()
}

/// The strongest kneading sequence with over-rotation interval
/// `[p/q, 1/2]`: the initial `RL` followed by a `q`-periodic adjustment of
/// the weakest sequence. It is computed twice — by the positional rules
/// (copy up to `q - 2`, then `L`, `R`, `R`, then repeat with period `q`)
/// and by replacing every `CRL` fragment with `LRR` — and the two
/// constructions must agree.
pub fn strongest_kneading(p: usize, q: usize) -> Result<KneadingSequence> {
    check_rho(p, q)?;
    let nu = rotation_word(p, q, 2 * q + 2);

    let mut by_rules = vec![Symbol::L; q + 2];
    by_rules[..=(q - 2)].copy_from_slice(&nu[..=(q - 2)]);
    by_rules[q - 1] = Symbol::L;
    debug_assert_eq!(nu[q - 1], Symbol::C);
    by_rules[q] = Symbol::R;
    debug_assert_eq!(nu[q], Symbol::R);
    by_rules[q + 1] = Symbol::R;
    debug_assert_eq!(nu[q + 1], Symbol::L);
    let rules = KneadingSequence::new(by_rules[..2].to_vec(), by_rules[2..q + 2].to_vec());

    let mut by_subst = nu.clone();
    for i in 2..by_subst.len() {
        if nu[i] == Symbol::C {
            by_subst[i] = Symbol::L;
        } else if i >= 2 && nu[i - 2] == Symbol::C {
            debug_assert_eq!(nu[i], Symbol::L);
            by_subst[i] = Symbol::R;
        }
    }
    let subst = KneadingSequence::new(by_subst[..2].to_vec(), by_subst[2..q + 2].to_vec());

    if rules != subst {
        return Err(Error::Internal(format!(
            "strongest kneading constructions disagree for {p}/{q}: rules {rules}, substitution {subst}"
        )));
    }
    Ok(rules)
}

/// Position of the over-rotation interval of a unimodal pattern relative to
/// `[p/q, 1/2]`, decided by the kneading sandwich.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IntervalClass {
    /// The forced interval is exactly `[p/q, 1/2]`.
    Equals,
    /// The forced interval strictly contains `[p/q, 1/2]`.
    StrictlyContains,
    /// `p/q` lies outside the forced interval.
    DoesNotContain,
}

/// Patterns up to this period are cross-checked against the covering-graph
/// route inside [`interval_class`].
pub const DEFAULT_MARKOV_CHECK_BOUND: usize = 16;

pub fn interval_class(pattern: &Pattern, p: usize, q: usize) -> Result<IntervalClass> {
    interval_class_with_markov_bound(pattern, p, q, DEFAULT_MARKOV_CHECK_BOUND)
}

pub fn interval_class_with_markov_bound(
    pattern: &Pattern,
    p: usize,
    q: usize,
    markov_bound: usize,
) -> Result<IntervalClass> {
    let nu_f = kneading_of_pattern(pattern)?;
    let weakest = rotation_kneading(p, q)?;
    let strongest = strongest_kneading(p, q)?;
    let class = if nu_f > strongest {
        IntervalClass::StrictlyContains
    } else if weakest > nu_f {
        IntervalClass::DoesNotContain
    } else {
        IntervalClass::Equals
    };
    if pattern.period() <= markov_bound {
        // Unimodal patterns are convergent, so the graph route is available.
        let mcm = crate::markov::min_cycle_mean(&crate::markov::build_markov(pattern)?)?;
        let expected = match mcm.r.cmp(&Rational::new(p as i128, q as i128)) {
            Ordering::Less => IntervalClass::StrictlyContains,
            Ordering::Equal => IntervalClass::Equals,
            Ordering::Greater => IntervalClass::DoesNotContain,
        };
        if expected != class {
            return Err(Error::Internal(format!(
                "kneading route ({class:?}) and min-cycle-mean route ({expected:?}) disagree \
                 for pattern {pattern} against {p}/{q}"
            )));
        }
    }
    Ok(class)
}
