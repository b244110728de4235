//! Cyclic patterns and their per-pattern combinatorics.
//!
//! A pattern is a cyclic permutation of `{1..n}` in spatial (left-to-right)
//! labeling: `image(i)` is the spatial index of the image of the i-th point
//! from the left. The points are embedded at integer coordinates `1..=n`
//! and the map is extended linearly on each complementary interval; all
//! derived geometry (the fixed point, codes) is exact.

use crate::rational::Rational;
use crate::{gcd, Error, Result};
use std::fmt;
use std::str::FromStr;

/// Which side of the fixed point `a` a point or interval lies on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

/// A cyclic permutation of `{1..n}`, `n >= 2`, in one-line spatial notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pattern {
    images: Vec<usize>,
}

/// The over-rotation pair `(p, q)` of a pattern of period `q`: `2p` counts
/// the orbit points at which `f(x) - x` and `f^2(x) - f(x)` have opposite
/// signs. The over-rotation number `p/q` always lies in `(0, 1/2]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct OverRotationPair {
    pub p: usize,
    pub q: usize,
}

impl OverRotationPair {
    pub fn rho(&self) -> Rational {
        Rational::new(self.p as i128, self.q as i128)
    }

    pub fn is_coprime(&self) -> bool {
        gcd(self.p, self.q) == 1
    }
}

impl fmt::Display for OverRotationPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.p, self.q)
    }
}

/// The code `L` of a convergent pattern, one exact rational per point.
///
/// `L` is 0 at the leftmost point and satisfies
/// `L(f(y)) = L(y) + rho - phi(y)` along the orbit, where `phi(y)` is 1
/// exactly when `y` lies right of the fixed point `a` and maps left of it.
/// Around the full cycle the increments cancel, so the table is
/// well-defined.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeTable {
    values: Vec<Rational>,
    fixed_point: Rational,
    sides: Vec<Side>,
}

/// Monotonicity class of a code along the order "farther from `a` on the
/// same side", on each side separately.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CodeClass {
    /// Strictly smaller code farther from `a`; characterizes over-twists.
    StrictlyMonotone,
    /// Non-decreasing toward `a` with at least one tie.
    NondecreasingNotMonotone,
    /// Some pair strictly decreases toward `a`.
    NotNondecreasing,
}

impl CodeTable {
    /// Code of the i-th spatial point (1-based).
    pub fn value(&self, i: usize) -> Rational {
        self.values[i - 1]
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// Coordinate of the unique fixed point `a` of the P-linear map.
    pub fn fixed_point(&self) -> Rational {
        self.fixed_point
    }

    /// Side of the i-th spatial point relative to `a` (1-based).
    pub fn side(&self, i: usize) -> Side {
        self.sides[i - 1]
    }

    pub fn sides(&self) -> &[Side] {
        &self.sides
    }

    pub fn classify(&self) -> CodeClass {
        let n = self.values.len();
        let mut strict = true;
        let mut nondec = true;
        for i in 1..n {
            if self.sides[i - 1] != self.sides[i] {
                continue;
            }
            // Consecutive points on the same side: for Left, code must grow
            // toward a (rightward); for Right, it must shrink rightward.
            let (far, near) = match self.sides[i] {
                Side::Left => (self.values[i - 1], self.values[i]),
                Side::Right => (self.values[i], self.values[i - 1]),
            };
            if far > near {
                nondec = false;
            }
            if far >= near {
                strict = false;
            }
        }
        if strict {
            CodeClass::StrictlyMonotone
        } else if nondec {
            CodeClass::NondecreasingNotMonotone
        } else {
            CodeClass::NotNondecreasing
        }
    }

    /// True when no pair strictly decreases toward `a` (ties allowed).
    pub fn is_nondecreasing(&self) -> bool {
        self.classify() != CodeClass::NotNondecreasing
    }

    /// Spatial indices (1-based) of same-side pairs with equal codes.
    pub fn same_side_ties(&self) -> Vec<(usize, usize)> {
        let n = self.values.len();
        let mut out = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                if self.sides[i - 1] == self.sides[j - 1] && self.values[i - 1] == self.values[j - 1]
                {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

/// A block structure: consecutive spatial groups of `block_size` points are
/// permuted by the pattern, and collapsing each block to a point yields the
/// `quotient` cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockDecomposition {
    pub block_size: usize,
    pub quotient: Pattern,
}

impl Pattern {
    /// Validates one-line images: a bijection of `{1..n}` forming a single
    /// cycle, `n >= 2`.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n < 2 {
            return Err(Error::PeriodTooShort);
        }
        let mut seen = vec![false; n];
        for &v in &images {
            if v < 1 || v > n || seen[v - 1] {
                return Err(Error::NotPermutation);
            }
            seen[v - 1] = true;
        }
        let mut x = 1;
        let mut visited = 0;
        loop {
            x = images[x - 1];
            visited += 1;
            if x == 1 {
                break;
            }
        }
        if visited != n {
            return Err(Error::NotSingleCycle);
        }
        Ok(Pattern { images })
    }

    /// Parses either one-line notation `"2 4 6 5 3 1"` or cycle notation
    /// `"(1 2 4 5 3 6)"` (commas allowed; a repeated closing point as in
    /// `"(1 2 4 5 3 6 1)"` is accepted).
    pub fn parse(text: &str) -> Result<Self> {
        text.parse()
    }

    /// Period `n` of the pattern.
    pub fn period(&self) -> usize {
        self.images.len()
    }

    /// Image of the i-th spatial point (1-based).
    pub fn image(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Spatial points `1..=n`.
    pub fn points(&self) -> impl Iterator<Item = usize> {
        1..=self.period()
    }

    /// Canonical serialization: one-line notation with single spaces.
    pub fn one_line(&self) -> String {
        self.images
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn over_rotation_pair(&self) -> OverRotationPair {
        let mut changes = 0;
        for x in self.points() {
            let fx = self.image(x);
            let ffx = self.image(fx);
            if (fx > x) != (ffx > fx) {
                changes += 1;
            }
        }
        debug_assert!(changes >= 2 && changes % 2 == 0);
        OverRotationPair {
            p: changes / 2,
            q: self.period(),
        }
    }

    /// Over-rotation number `p/q`.
    pub fn rho(&self) -> Rational {
        self.over_rotation_pair().rho()
    }

    /// A pattern is convergent when no point that falls is followed (to the
    /// right) by a point that rises; equivalently the P-linear map has a
    /// single fixed point.
    pub fn is_convergent(&self) -> bool {
        let mut fallen = false;
        for x in self.points() {
            let rises = self.image(x) > x;
            if rises && fallen {
                return false;
            }
            if !rises {
                fallen = true;
            }
        }
        true
    }

    /// Exact coordinate of the unique fixed point of the P-linear map of a
    /// convergent pattern.
    pub fn fixed_point(&self) -> Result<Rational> {
        if !self.is_convergent() {
            return Err(Error::DivergentPattern);
        }
        let u = (1..self.period())
            .find(|&u| self.image(u) > u && self.image(u + 1) < u + 1)
            .expect("a convergent cycle has a rising-falling basic interval");
        // On [u, u+1]: f(x) = f(u) + d (x - u) with d = f(u+1) - f(u) < 0.
        let fu = self.image(u) as i128;
        let d = self.image(u + 1) as i128 - fu;
        let a = Rational::new(fu - d * u as i128, 1 - d);
        debug_assert!(Rational::int(u as i128) < a && a < Rational::int(u as i128 + 1));
        Ok(a)
    }

    /// True when `y` lies right of `a` and maps strictly left of it; these
    /// are the points where the code recursion subtracts 1.
    fn phi(&self, y: usize, a: Rational) -> bool {
        Rational::from(y) > a && Rational::from(self.image(y)) < a
    }

    pub fn code(&self) -> Result<CodeTable> {
        let a = self.fixed_point()?;
        let n = self.period();
        let rho = self.rho();
        let mut values = vec![Rational::ZERO; n];
        let mut acc = Rational::ZERO;
        let mut y = 1usize; // leftmost point carries code 0
        for _ in 0..n {
            let step = if self.phi(y, a) {
                rho - Rational::ONE
            } else {
                rho
            };
            acc = acc + step;
            y = self.image(y);
            values[y - 1] = acc;
        }
        assert_eq!(y, 1, "walked the full cycle");
        assert!(acc.is_zero(), "code recursion must close to 0 around the cycle");
        let sides = self
            .points()
            .map(|i| {
                debug_assert!(Rational::from(i) != a);
                if Rational::from(i) < a {
                    Side::Left
                } else {
                    Side::Right
                }
            })
            .collect();
        Ok(CodeTable {
            values,
            fixed_point: a,
            sides,
        })
    }

    pub fn code_class(&self) -> Result<CodeClass> {
        Ok(self.code()?.classify())
    }

    /// Over-twists (forcing-minimal patterns of their over-rotation number)
    /// are exactly the convergent patterns with strictly monotone code.
    pub fn is_overtwist(&self) -> bool {
        self.is_convergent() && self.code_class() == Ok(CodeClass::StrictlyMonotone)
    }

    /// All block structures: one candidate per divisor `d` of `n` with
    /// `1 < d < n`, testing whether the consecutive spatial groups of size
    /// `d` are permuted. Empty result means the pattern is irreducible.
    pub fn block_decompositions(&self) -> Vec<BlockDecomposition> {
        let n = self.period();
        let mut out = Vec::new();
        for d in 2..n {
            if n % d != 0 {
                continue;
            }
            let m = n / d;
            let block_of = |x: usize| (x - 1) / d; // 0-based block index
            let mut quotient_images = vec![0usize; m];
            let mut ok = true;
            'blocks: for b in 0..m {
                let target = block_of(self.image(b * d + 1));
                for off in 1..d {
                    if block_of(self.image(b * d + off + 1)) != target {
                        ok = false;
                        break 'blocks;
                    }
                }
                quotient_images[b] = target + 1;
            }
            if ok {
                let quotient = Pattern::new(quotient_images)
                    .expect("block quotient of a single cycle is a single cycle");
                out.push(BlockDecomposition {
                    block_size: d,
                    quotient,
                });
            }
        }
        out
    }

    /// True when some block decomposition has an over-twist quotient of the
    /// same over-rotation number.
    pub fn has_block_structure_over_overtwist(&self) -> bool {
        let rho = self.rho();
        self.block_decompositions()
            .iter()
            .any(|b| b.quotient.is_overtwist() && b.quotient.rho() == rho)
    }

    /// A pattern is very badly ordered when its over-rotation number equals
    /// the left endpoint of its forced over-rotation interval (equivalently,
    /// its code is non-decreasing) yet it has no block structure over an
    /// over-twist of that number. The code criterion is cross-checked
    /// against the minimum cycle mean of the covering graph; a disagreement
    /// between the two routes is an internal error.
    pub fn is_very_badly_ordered(&self) -> Result<bool> {
        if !self.is_convergent() {
            return Err(Error::DivergentPattern);
        }
        let nondecreasing = self.code()?.is_nondecreasing();
        let mcm = crate::markov::min_cycle_mean(&crate::markov::build_markov(self)?)?;
        let endpoint_attains_rho = mcm.r == self.rho();
        if nondecreasing != endpoint_attains_rho {
            return Err(Error::Internal(format!(
                "code route ({nondecreasing}) and min-cycle-mean route ({endpoint_attains_rho}) \
                 disagree on r = rho for pattern {self}",
            )));
        }
        Ok(nondecreasing && !self.is_overtwist() && !self.has_block_structure_over_overtwist())
    }

    /// Spatial index of the unique interior maximum of a unimodal pattern:
    /// images strictly increase up to it and strictly decrease after. The
    /// maximum at the first point (a monotone decreasing pattern such as
    /// `[2, 1]`) is allowed.
    pub fn max_point(&self) -> Result<usize> {
        let n = self.period();
        let m = self
            .points()
            .find(|&i| self.image(i) == n)
            .expect("permutation attains n");
        for i in 1..n {
            let increasing = self.image(i) < self.image(i + 1);
            if (i < m) != increasing {
                return Err(Error::NotUnimodal);
            }
        }
        Ok(m)
    }

    pub fn is_unimodal(&self) -> bool {
        self.max_point().is_ok()
    }

    /// All `(n-1)!` cyclic patterns of period `n`, in a fixed order.
    pub fn all_cyclic(n: usize) -> Vec<Pattern> {
        assert!(n >= 2);
        let mut successors: Vec<usize> = (2..=n).collect();
        let mut out = Vec::new();
        loop {
            // Temporal chain 1 -> s[0] -> ... -> s[n-2] -> 1.
            let mut images = vec![0usize; n];
            let mut prev = 1usize;
            for &s in &successors {
                images[prev - 1] = s;
                prev = s;
            }
            images[prev - 1] = 1;
            out.push(Pattern { images });
            if !next_permutation(&mut successors) {
                break;
            }
        }
        out
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.one_line())
    }
}

impl fmt::Debug for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.one_line())
    }
}

impl FromStr for Pattern {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let t = text.trim();
        if t.is_empty() {
            return Err(Error::Malformed("empty pattern text".into()));
        }
        let (body, cycle_notation) = if let Some(stripped) = t.strip_prefix('(') {
            match stripped.strip_suffix(')') {
                Some(inner) => (inner, true),
                None => return Err(Error::Malformed("unbalanced parentheses".into())),
            }
        } else {
            (t, false)
        };
        let mut vals = Vec::new();
        for tok in body
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
        {
            let v: usize = tok
                .parse()
                .map_err(|_| Error::Malformed(format!("bad token {tok:?}")))?;
            vals.push(v);
        }
        if !cycle_notation {
            return Pattern::new(vals);
        }
        // Cycle notation (x_1 x_2 ... x_n): x_i maps to x_{i+1}, x_n to x_1.
        if vals.len() >= 2 && vals.first() == vals.last() {
            vals.pop();
        }
        let n = vals.len();
        if n < 2 {
            return Err(Error::PeriodTooShort);
        }
        let mut images = vec![0usize; n];
        let mut seen = vec![false; n];
        for (i, &x) in vals.iter().enumerate() {
            if x < 1 || x > n || seen[x - 1] {
                return Err(Error::NotPermutation);
            }
            seen[x - 1] = true;
            images[x - 1] = vals[(i + 1) % n];
        }
        Pattern::new(images)
    }
}
