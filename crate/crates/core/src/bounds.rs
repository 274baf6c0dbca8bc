//! Closed-form constraint calculators: ramification counts from
//! Riemann-Hurwitz, the rank-jump bound for semistable fibrations, and
//! the stability threshold coming from rank-jump divisibility.
//!
//! Two different quantities called "epsilon" appear in the surrounding
//! theory and are kept strictly apart in this crate:
//!
//! - `epsilon_degree` (in [`crate::base_change`]): the discriminant
//!   degree away from the ramification locus, `12d - v_0 - v_inf`;
//! - `epsilon_marked_points` (here): how many of the two ramification
//!   points carry a singular fiber, so 0, 1 or 2.

use crate::base_change::is_prime;
use crate::{Error, Result};

/// A tame cyclic cover datum satisfying the Riemann-Hurwitz identity
/// `2 (g_src - 1) = 2 p (g_tgt - 1) + (p - 1) * ram_points`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RamificationProfile {
    pub p: u32,
    pub genus_source: u32,
    pub genus_target: u32,
    pub ram_points: u32,
}

impl RamificationProfile {
    pub fn new(p: u32, genus_source: u32, genus_target: u32, ram_points: u32) -> Result<Self> {
        let lhs = 2 * (genus_source as i64 - 1);
        let rhs = 2 * p as i64 * (genus_target as i64 - 1) + (p as i64 - 1) * ram_points as i64;
        if lhs != rhs {
            return Err(Error::RamificationInsoluble);
        }
        Ok(RamificationProfile { p, genus_source, genus_target, ram_points })
    }

    /// Degree of the ramification divisor (tame case).
    pub fn deg_r(&self) -> u32 {
        (self.p - 1) * self.ram_points
    }
}

/// Solves the Riemann-Hurwitz identity for the number of (tame)
/// ramification points of a degree-p cyclic cover with the given genera.
pub fn ramification_points(p: u32, genus_source: u32, genus_target: u32) -> Result<u32> {
    if p < 2 {
        return Err(Error::BadCoverDegree(p));
    }
    let num = 2 * (genus_source as i64 - 1) - 2 * p as i64 * (genus_target as i64 - 1);
    let den = p as i64 - 1;
    if num % den != 0 || num / den < 0 {
        return Err(Error::RamificationInsoluble);
    }
    Ok((num / den) as u32)
}

/// A genus-zero cover of the line has exactly two ramification points:
/// `2p - 2 = deg R = (p - 1) * r` forces `r = 2`.
pub fn ramification_points_for_genus_zero(p: u32) -> Result<u32> {
    ramification_points(p, 0, 0)
}

/// Upper bound `(p - 1)(l + eps - 2)` on the Mordell-Weil rank jump of a
/// semistable rational elliptic surface under a degree-p base change,
/// where `l` counts singular fibers away from the ramification locus and
/// `eps_marked_points` those on it.
///
/// The result can be zero or negative, which forces rank stability.
pub fn semistable_rank_jump_bound(l: u32, eps_marked_points: u32, p: u32) -> i64 {
    assert!(l >= 1, "a semistable fibration has singular fibers away from ramification");
    assert!(eps_marked_points <= 2, "at most two marked ramification points");
    (p as i64 - 1) * (l as i64 + eps_marked_points as i64 - 2)
}

/// Threshold answer: the first prime degree beyond which the rank jump
/// bound and the divisibility of jumps by `p - 1` force rank stability.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StabilityThreshold {
    /// The rank bound the family satisfies uniformly in the cover degree.
    pub rank_bound: u64,
    /// Smallest prime `p` with `p - 1 > rank_bound`: any nonzero jump
    /// would be a positive multiple of `p - 1`, exceeding the bound.
    pub first_prime: u64,
}

/// Computes the stability threshold for a family with a uniform rank
/// bound: rank stability holds for every prime `p` with
/// `p - 1 > rank_bound`. (The threshold is often quoted as
/// `p > rank_bound`; both readings admit the same first prime whenever
/// `rank_bound` and `rank_bound + 1` are composite, e.g. 68.)
pub fn stability_threshold(rank_bound: u64) -> StabilityThreshold {
    let mut p = rank_bound + 2; // first candidate with p - 1 > rank_bound
    while !is_prime(p) {
        p += 1;
    }
    StabilityThreshold { rank_bound, first_prime: p }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_zero_has_two_ramification_points() {
        for p in [5u32, 7, 11] {
            assert_eq!(ramification_points_for_genus_zero(p).unwrap(), 2);
        }
    }

    #[test]
    fn deg_r_matches() {
        let prof = RamificationProfile::new(7, 0, 0, 2).unwrap();
        assert_eq!(prof.deg_r(), 12);
    }

    #[test]
    fn genus_one_source_insoluble() {
        // 2*0 = -10 + 4r has no nonnegative integer solution.
        assert!(matches!(
            ramification_points(5, 1, 0),
            Err(Error::RamificationInsoluble)
        ));
    }

    #[test]
    fn rank_jump_bound_examples() {
        assert_eq!(semistable_rank_jump_bound(4, 0, 5), 8);
        assert_eq!(semistable_rank_jump_bound(2, 0, 5), 0);
        assert_eq!(semistable_rank_jump_bound(10, 2, 7), 60);
    }

    #[test]
    fn rank_jump_bound_monotone() {
        for l in 1..8u32 {
            for eps in 0..=2u32 {
                for p in [5u32, 7, 11] {
                    let b = semistable_rank_jump_bound(l, eps, p);
                    assert!(semistable_rank_jump_bound(l + 1, eps, p) > b);
                    if eps < 2 {
                        assert!(semistable_rank_jump_bound(l, eps + 1, p) > b);
                    }
                    assert_eq!(b == 0, l + eps == 2);
                }
            }
        }
    }

    #[test]
    fn threshold_examples() {
        assert_eq!(stability_threshold(68).first_prime, 71);
        assert_eq!(stability_threshold(1).first_prime, 3);
        assert_eq!(stability_threshold(7).first_prime, 11);
    }

    #[test]
    fn threshold_exhaustive_small() {
        for n in 1..=100u64 {
            let t = stability_threshold(n);
            assert!(is_prime(t.first_prime));
            assert!(t.first_prime - 1 > n);
            // Every smaller prime admits a nonzero jump within the bound.
            for q in 2..t.first_prime {
                if is_prime(q) {
                    assert!(q - 1 <= n, "prime {q} should precede the threshold");
                }
            }
        }
    }
}
