//! Generators: the unimodal over-twist pattern, k-tuple liftings, and the
//! gluing that merges the lifted copies into a single unimodal very badly
//! ordered cycle of over-rotation pair `(kp, kq)`.

use crate::kneading::{kneading_of_pattern, rotation_kneading, strongest_kneading};
use crate::markov::{build_markov, min_cycle_mean};
use crate::pattern::{OverRotationPair, Pattern};
use crate::rational::Rational;
use crate::{gcd, Error, Result};

/// The unimodal over-twist permutation of over-rotation number `p/q`: the
/// first `q - 2p` points shift right by `p`, the next `p` points flip all
/// the way to the right, and the last `p` points flip all the way to the
/// left. Defined for reduced `p/q` with `2p < q`, plus the degenerate
/// 2-cycle for `(1, 2)`.
pub fn gamma(p: usize, q: usize) -> Result<Pattern> {
    if p < 1 || gcd(p, q) != 1 || !(2 * p < q || (p, q) == (1, 2)) {
        return Err(Error::BadParameters(format!(
            "gamma needs gcd(p, q) = 1 and 2p < q (or (1, 2)); got ({p}, {q})"
        )));
    }
    let images = (1..=q)
        .map(|j| {
            if j <= q - 2 * p {
                j + p
            } else if j <= q - p {
                2 * q - 2 * p + 1 - j
            } else {
                q + 1 - j
            }
        })
        .collect();
    Pattern::new(images)
}

/// `k` interleaved copies of the over-twist of number `p/q`, placed so that
/// the combined connect-the-dots map is unimodal: on each side of the fixed
/// point the copies of a spatial slot sit consecutively with copy 1
/// outermost, and the combined map sends copy `i`, slot `s` to copy `i`,
/// slot `gamma(s)`. The gluing rewires this into a single cycle.
#[derive(Clone, Debug)]
pub struct Lifting {
    k: usize,
    p: usize,
    q: usize,
    copy_pattern: Pattern,
    /// Combined 1-based position of (copy, slot), both 1-based.
    position: Vec<Vec<usize>>,
    /// (copy, slot) occupying each combined position, in spatial order.
    occupants: Vec<(usize, usize)>,
    /// Combined one-line map before gluing (k disjoint q-cycles).
    premap: Vec<usize>,
}

impl Lifting {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    /// The over-twist each copy exhibits.
    pub fn copy_pattern(&self) -> &Pattern {
        &self.copy_pattern
    }

    pub fn occupants(&self) -> &[(usize, usize)] {
        &self.occupants
    }

    pub fn premap(&self) -> &[usize] {
        &self.premap
    }

    /// Combined position of copy `i`, spatial slot `s` (all 1-based).
    pub fn position(&self, copy: usize, slot: usize) -> usize {
        self.position[copy - 1][slot - 1]
    }
}

pub fn k_tuple_lifting(k: usize, p: usize, q: usize) -> Result<Lifting> {
    if k < 2 {
        return Err(Error::BadParameters(format!("lifting needs k >= 2, got {k}")));
    }
    if p < 1 || gcd(p, q) != 1 || 2 * p >= q {
        return Err(Error::BadParameters(format!(
            "lifting needs gcd(p, q) = 1 and 2p < q; got ({p}, {q})"
        )));
    }
    let copy_pattern = gamma(p, q)?;
    // The over-twist rises on slots 1..=q-p and falls after, so its fixed
    // point sits between slots q-p and q-p+1.
    let left_slots = q - p;
    let mut occupants = Vec::with_capacity(k * q);
    for slot in 1..=left_slots {
        for copy in 1..=k {
            occupants.push((copy, slot));
        }
    }
    for slot in left_slots + 1..=q {
        for copy in (1..=k).rev() {
            occupants.push((copy, slot));
        }
    }
    let mut position = vec![vec![0usize; q]; k];
    for (pos0, &(copy, slot)) in occupants.iter().enumerate() {
        position[copy - 1][slot - 1] = pos0 + 1;
    }
    let mut premap = vec![0usize; k * q];
    for (pos0, &(copy, slot)) in occupants.iter().enumerate() {
        premap[pos0] = position[copy - 1][copy_pattern.image(slot) - 1];
    }
    // The combined map is unimodal with its maximum at copy 1's critical
    // slot (the slot mapped to the rightmost point of its copy).
    let crit = q - 2 * p + 1;
    let max_pos = position[0][crit - 1];
    for i in 1..k * q {
        let increasing = premap[i - 1] < premap[i];
        if (i < max_pos) != increasing {
            return Err(Error::Internal(format!(
                "lifting of ({k}, {p}, {q}) is not unimodal at position {i}"
            )));
        }
    }
    Ok(Lifting {
        k,
        p,
        q,
        copy_pattern,
        position,
        occupants,
        premap,
    })
}

/// Merges the `k` lifted orbits into one cycle. With `m_i` the `p`-th
/// spatial point of copy `i`: the leftmost point of copy 1 is remapped to
/// `m_2`; for each middle copy the preimage of `m_i` is remapped to
/// `m_{i+1}`; the preimage of `m_k` is remapped to the old image of copy
/// 1's leftmost point, which is the point immediately right of `m_k`.
pub fn glue(lifting: &Lifting) -> Result<Pattern> {
    let (k, p, q) = (lifting.k, lifting.p, lifting.q);
    let copy = &lifting.copy_pattern;
    let mut images = lifting.premap.clone();

    // Slot p is the p-th point of each copy, and the leftmost point of a
    // copy is its slot 1, the second temporal successor of its critical
    // slot.
    let crit = q - 2 * p + 1;
    assert_eq!(copy.image(copy.image(crit)), 1);
    let m: Vec<usize> = (1..=k).map(|i| lifting.position(i, p)).collect();
    let leftmost_copy1 = lifting.position(1, 1);
    let closing_target = lifting.premap[leftmost_copy1 - 1];
    assert_eq!(closing_target, lifting.position(1, p + 1));
    assert_eq!(closing_target, m[k - 1] + 1, "closing target sits immediately right of m_k");

    let preimage_slot = copy
        .points()
        .find(|&s| copy.image(s) == p)
        .expect("p has a preimage slot");
    images[leftmost_copy1 - 1] = m[1];
    for i in 2..=k {
        let rewired = lifting.position(i, preimage_slot);
        images[rewired - 1] = if i < k { m[i] } else { closing_target };
    }
    Pattern::new(images).map_err(|e| {
        Error::GluingBroken(format!("glued map of ({k}, {p}, {q}) failed validation: {e}"))
    })
}

/// Builds the unimodal very badly ordered cycle of over-rotation pair
/// `(kp, kq)`.
pub fn vbo_build(k: usize, p: usize, q: usize) -> Result<Pattern> {
    glue(&k_tuple_lifting(k, p, q)?)
}

/// Verification report for a candidate very badly ordered pattern against
/// the target number `p/q`: each named check is recorded, and the three
/// routes deciding whether the forced interval's left endpoint equals
/// `p/q` (non-decreasing code, kneading sandwich, minimum cycle mean) must
/// agree with one another.
#[derive(Clone, Debug)]
pub struct VboReport {
    pub pattern: Pattern,
    pub expected_orp: OverRotationPair,
    pub unimodal: bool,
    pub orp_matches: bool,
    pub code_nondecreasing: bool,
    pub kneading_sandwich: bool,
    pub r_equals_rho: bool,
    pub not_overtwist: bool,
    pub no_block_over_overtwist: bool,
    pub very_badly_ordered: bool,
    /// Observation only, never asserted: whether the pattern has no block
    /// structure at all. The definition requires merely that no block
    /// structure sits over an over-twist of the same number.
    pub irreducible: bool,
}

impl VboReport {
    pub fn passed(&self) -> bool {
        self.failing_checks().is_empty()
    }

    /// Names of the checks that failed, in report order.
    pub fn failing_checks(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        let mut push = |ok: bool, name: &'static str| {
            if !ok {
                out.push(name);
            }
        };
        push(self.unimodal, "unimodal");
        push(self.orp_matches, "over-rotation pair");
        push(self.code_nondecreasing, "code non-decreasing");
        push(self.kneading_sandwich, "kneading sandwich");
        push(self.r_equals_rho, "min cycle mean");
        push(self.not_overtwist, "not an over-twist");
        push(self.no_block_over_overtwist, "no block structure over an over-twist");
        push(self.very_badly_ordered, "very badly ordered");
        out
    }
}

/// Runs every check of the construction on an arbitrary pattern. The
/// period must be a multiple of `q`; the implied `k` fixes the expected
/// over-rotation pair `(kp, kq)`.
pub fn verify_vbo(pattern: &Pattern, p: usize, q: usize) -> Result<VboReport> {
    if p < 1 || gcd(p, q) != 1 || 2 * p >= q {
        return Err(Error::BadParameters(format!(
            "verification needs gcd(p, q) = 1 and 2p < q; got ({p}, {q})"
        )));
    }
    let n = pattern.period();
    if n % q != 0 {
        return Err(Error::BadParameters(format!(
            "period {n} is not a multiple of q = {q}"
        )));
    }
    let k = n / q;
    let expected_orp = OverRotationPair { p: k * p, q: n };
    if !pattern.is_convergent() {
        return Err(Error::DivergentPattern);
    }

    let unimodal = pattern.is_unimodal();
    let orp_matches = pattern.over_rotation_pair() == expected_orp;
    let code_nondecreasing = pattern.code()?.is_nondecreasing();
    let kneading_sandwich = if unimodal {
        let nu = kneading_of_pattern(pattern)?;
        let weakest = rotation_kneading(p, q)?;
        let strongest = strongest_kneading(p, q)?;
        strongest >= nu && nu >= weakest
    } else {
        false
    };
    let target = Rational::new(p as i128, q as i128);
    let r_equals_rho = min_cycle_mean(&build_markov(pattern)?)?.r == target;

    // The three routes decide the same statement whenever the pattern's
    // over-rotation number is the target; they may legitimately differ
    // otherwise (e.g. a wrong-orp candidate), so agreement is only enforced
    // when the comparison is meaningful.
    if orp_matches && unimodal {
        let routes = [code_nondecreasing, kneading_sandwich, r_equals_rho];
        if routes.iter().any(|&b| b != routes[0]) {
            return Err(Error::Internal(format!(
                "r = rho routes disagree for {pattern}: code {code_nondecreasing}, \
                 kneading {kneading_sandwich}, min cycle mean {r_equals_rho}"
            )));
        }
    }

    let not_overtwist = !pattern.is_overtwist();
    let no_block_over_overtwist = !pattern.has_block_structure_over_overtwist();
    let very_badly_ordered = pattern.is_very_badly_ordered()?;
    Ok(VboReport {
        pattern: pattern.clone(),
        expected_orp,
        unimodal,
        orp_matches,
        code_nondecreasing,
        kneading_sandwich,
        r_equals_rho,
        not_overtwist,
        no_block_over_overtwist,
        very_badly_ordered,
        irreducible: pattern.block_decompositions().is_empty(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pat(s: &str) -> Pattern {
        Pattern::parse(s).unwrap()
    }

    #[test]
    fn gamma_examples() {
        assert_eq!(gamma(2, 5).unwrap(), pat("3 5 4 2 1"));
        assert_eq!(gamma(1, 3).unwrap(), pat("2 3 1"));
        assert_eq!(gamma(1, 2).unwrap(), pat("2 1"));
        assert!(matches!(gamma(2, 4), Err(Error::BadParameters(_))));
        assert!(matches!(gamma(3, 5), Err(Error::BadParameters(_))));
    }

    #[test]
    fn lifting_placement() {
        let l = k_tuple_lifting(2, 2, 5).unwrap();
        assert_eq!(
            l.occupants(),
            &[
                (1, 1), (2, 1), (1, 2), (2, 2), (1, 3),
                (2, 3), (2, 4), (1, 4), (2, 5), (1, 5)
            ]
        );
        assert_eq!(l.premap(), &[5, 6, 10, 9, 8, 7, 4, 3, 2, 1]);

        let l = k_tuple_lifting(2, 1, 3).unwrap();
        assert_eq!(
            l.occupants(),
            &[(1, 1), (2, 1), (1, 2), (2, 2), (2, 3), (1, 3)]
        );

        assert!(matches!(
            k_tuple_lifting(2, 2, 4),
            Err(Error::BadParameters(_))
        ));
        assert!(matches!(
            k_tuple_lifting(1, 1, 3),
            Err(Error::BadParameters(_))
        ));
    }

    #[test]
    fn lifting_slot_groups_are_consecutive_and_copy_monotone() {
        // Each spatial slot's k copies occupy consecutive combined
        // positions, ordered by copy on the left side and reversed on the
        // right side, so every iterate of the premap is monotone between
        // the critical points of the copies.
        for (k, p, q) in [(2, 2, 5), (3, 1, 3), (4, 2, 7), (5, 3, 8)] {
            let l = k_tuple_lifting(k, p, q).unwrap();
            let left_slots = q - p;
            for slot in 1..=q {
                let positions: Vec<usize> = (1..=k).map(|c| l.position(c, slot)).collect();
                let (lo, hi) = (
                    *positions.iter().min().unwrap(),
                    *positions.iter().max().unwrap(),
                );
                assert_eq!(hi - lo + 1, k, "slot {slot} group is consecutive");
                let ordered: Vec<usize> = if slot <= left_slots {
                    positions.clone()
                } else {
                    positions.iter().rev().copied().collect()
                };
                assert!(ordered.windows(2).all(|w| w[0] < w[1]), "slot {slot} copy order");
            }
        }
    }

    #[test]
    fn glue_reproduces_known_cycles() {
        assert_eq!(vbo_build(2, 1, 3).unwrap(), pat("2 4 6 5 3 1"));
        assert_eq!(vbo_build(2, 2, 5).unwrap(), pat("4 6 10 9 8 7 5 3 2 1"));
    }

    #[test]
    fn glue_triple_copy() {
        let g = vbo_build(3, 1, 3).unwrap();
        assert_eq!(g.period(), 9);
        assert!(g.is_unimodal());
        let report = verify_vbo(&g, 1, 3).unwrap();
        assert!(report.passed(), "failing: {:?}", report.failing_checks());
    }

    #[test]
    fn verify_examples() {
        let r = verify_vbo(&pat("2 4 6 5 3 1"), 1, 3).unwrap();
        assert!(r.passed());
        assert_eq!(r.expected_orp, OverRotationPair { p: 2, q: 6 });

        let r = verify_vbo(&pat("4 6 10 9 8 7 5 3 2 1"), 2, 5).unwrap();
        assert!(r.passed());

        let r = verify_vbo(&pat("2 3 1"), 1, 3).unwrap();
        assert!(!r.passed());
        assert!(r.failing_checks().contains(&"not an over-twist"));
    }

    #[test]
    fn vbo_build_rejects_bad_parameters() {
        assert!(matches!(vbo_build(2, 2, 4), Err(Error::BadParameters(_))));
        assert!(matches!(vbo_build(2, 1, 2), Err(Error::BadParameters(_))));
    }
}
