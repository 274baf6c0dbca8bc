//! First cohomology of a cyclic group acting on a finitely generated
//! abelian group.
//!
//! For `G` cyclic of order `n` generated by `sigma` and a `G`-module `M`,
//! a cocycle is determined by its value on `sigma`, which must lie in the
//! kernel of the trace `N = 1 + sigma + ... + sigma^{n-1}`; coboundaries
//! are the image of `sigma - 1`. So
//!
//! ```text
//! H^1(G, M)  =  ker(N : M -> M) / im(sigma - 1 : M -> M)
//! ```
//!
//! and the whole computation is exact integer linear algebra: present `M`
//! as `Z^k` modulo torsion relations, find the preimage lattice of the
//! relation lattice under `N`, and take invariant factors of the quotient
//! by the coboundary lattice via Smith normal form.
//!
//! The module also packages the structural consequences used by the
//! surface analysis: rank jumps divide `p - 1`, rank-stable implies a
//! trivial kernel, and in the extremal situation (`E(K) = 0`, cover of
//! prime degree `p <= 23`) the kernel is `(Z/p)^r` with
//! `r = rank / (p - 1)`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::algebra::snf::{kernel_basis, quotient_invariants, IntMat};
use crate::base_change::is_prime;
use crate::{Error, Result};

/// Finitely generated abelian group with an automorphism of finite
/// order: free rank `rank`, torsion invariant factors `torsion` (each
/// at least 2), and the action matrix `sigma` on the `rank +
/// torsion.len()` generators (torsion generators come after the free
/// ones).
#[derive(Clone, Debug)]
pub struct GModule {
    rank: usize,
    torsion: Vec<u64>,
    sigma: IntMat,
    n: u32,
}

impl GModule {
    /// Validates `sigma^n = 1` (as an endomorphism of the presented
    /// group) and compatibility with the torsion filtration.
    pub fn new(rank: usize, torsion: Vec<u64>, n: u32, sigma: IntMat) -> Result<Self> {
        if n == 0 {
            return Err(Error::BadPresentation("group order must be positive".into()));
        }
        let k = rank + torsion.len();
        if sigma.rows() != k || sigma.cols() != k {
            return Err(Error::BadPresentation(format!(
                "sigma must be {k} x {k} for rank {rank} and {} torsion generators",
                torsion.len()
            )));
        }
        if torsion.iter().any(|d| *d < 2) {
            return Err(Error::BadPresentation("torsion invariants must be >= 2".into()));
        }
        let m = GModule { rank, torsion, sigma, n };
        // sigma must send torsion generators into the torsion part.
        for j in 0..m.torsion.len() {
            let dj = BigInt::from(m.torsion[j]);
            for i in 0..m.rank {
                if !m.sigma[(i, m.rank + j)].is_zero() {
                    return Err(Error::TorsionCompatibility);
                }
            }
            for i in 0..m.torsion.len() {
                let di = BigInt::from(m.torsion[i]);
                if !((&dj * &m.sigma[(m.rank + i, m.rank + j)]) % &di).is_zero() {
                    return Err(Error::TorsionCompatibility);
                }
            }
        }
        // sigma^n = identity as an endomorphism of the presented group.
        let power = m.sigma.pow(m.n);
        if !m.is_identity_endo(&power) {
            return Err(Error::SigmaOrderViolation);
        }
        Ok(m)
    }

    /// The regular representation `Z[G]` for `G` cyclic of order `n`:
    /// `sigma` permutes the basis cyclically.
    pub fn regular_representation(n: u32) -> Self {
        let k = n as usize;
        let mut s = IntMat::zero(k, k);
        for i in 0..k {
            s[((i + 1) % k, i)] = BigInt::one();
        }
        GModule { rank: k, torsion: Vec::new(), sigma: s, n }
    }

    /// The ring of integers of the p-th cyclotomic field as a module over
    /// the cyclic group of order p: the companion matrix of
    /// `1 + x + ... + x^{p-1}` acting on `Z^{p-1}`.
    pub fn cyclotomic_integers(p: u32) -> Self {
        let k = (p - 1) as usize;
        let mut s = IntMat::zero(k, k);
        for i in 0..k - 1 {
            s[(i + 1, i)] = BigInt::one();
        }
        for i in 0..k {
            s[(i, k - 1)] = BigInt::from(-1);
        }
        GModule { rank: k, torsion: Vec::new(), sigma: s, n: p }
    }

    /// Free or torsion module with the identity action.
    pub fn trivial_action(rank: usize, torsion: Vec<u64>, n: u32) -> Self {
        let k = rank + torsion.len();
        GModule { rank, torsion, sigma: IntMat::identity(k), n }
    }

    /// Direct sum with matching group order.
    pub fn direct_sum(&self, other: &GModule) -> Result<GModule> {
        if self.n != other.n {
            return Err(Error::BadPresentation("direct sum needs equal group orders".into()));
        }
        let rank = self.rank + other.rank;
        let mut torsion = self.torsion.clone();
        torsion.extend(other.torsion.iter().copied());
        let k = rank + torsion.len();
        let mut s = IntMat::zero(k, k);
        // Free blocks first, then torsion blocks, preserving each
        // summand's internal action.
        let map_index = |m: &GModule, idx: usize, free_off: usize, tor_off: usize| -> usize {
            if idx < m.rank {
                free_off + idx
            } else {
                rank + tor_off + (idx - m.rank)
            }
        };
        for (m, free_off, tor_off) in
            [(self, 0usize, 0usize), (other, self.rank, self.torsion.len())]
        {
            let k_m = m.rank + m.torsion.len();
            for i in 0..k_m {
                for j in 0..k_m {
                    if !m.sigma[(i, j)].is_zero() {
                        let ii = map_index(m, i, free_off, tor_off);
                        let jj = map_index(m, j, free_off, tor_off);
                        s[(ii, jj)] = m.sigma[(i, j)].clone();
                    }
                }
            }
        }
        GModule::new(rank, torsion, self.n, s)
    }

    /// Base change of the presentation by a unimodular pair
    /// `u * u_inv = 1`: the action becomes `u sigma u_inv`. Only valid on
    /// torsion-free modules (a general change of basis would mix the
    /// torsion filtration).
    pub fn conjugated(&self, u: &IntMat, u_inv: &IntMat) -> Result<GModule> {
        if !self.torsion.is_empty() {
            return Err(Error::BadPresentation(
                "basis changes are only supported on torsion-free modules".into(),
            ));
        }
        if !u.mul(u_inv).is_identity() {
            return Err(Error::BadPresentation("u * u_inv must be the identity".into()));
        }
        let sigma = u.mul(&self.sigma).mul(u_inv);
        GModule::new(self.rank, Vec::new(), self.n, sigma)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn torsion(&self) -> &[u64] {
        &self.torsion
    }

    pub fn order(&self) -> u32 {
        self.n
    }

    pub fn sigma(&self) -> &IntMat {
        &self.sigma
    }

    fn generators(&self) -> usize {
        self.rank + self.torsion.len()
    }

    /// Relation matrix: columns `d_j e_{rank + j}`.
    fn relations(&self) -> IntMat {
        let k = self.generators();
        let s = self.torsion.len();
        let mut r = IntMat::zero(k, s);
        for j in 0..s {
            r[(self.rank + j, j)] = BigInt::from(self.torsion[j]);
        }
        r
    }

    /// Does a matrix act as the identity on the presented group?
    fn is_identity_endo(&self, m: &IntMat) -> bool {
        let k = self.generators();
        for i in 0..k {
            for j in 0..k {
                let expect = if i == j { BigInt::one() } else { BigInt::zero() };
                let diff = &m[(i, j)] - expect;
                let ok = if i < self.rank {
                    diff.is_zero()
                } else {
                    (&diff % BigInt::from(self.torsion[i - self.rank])).is_zero()
                };
                if !ok {
                    return false;
                }
            }
        }
        true
    }

    /// The trace endomorphism `N = 1 + sigma + ... + sigma^{n-1}`.
    pub fn trace_matrix(&self) -> IntMat {
        let k = self.generators();
        let mut acc = IntMat::zero(k, k);
        let mut power = IntMat::identity(k);
        for _ in 0..self.n {
            for i in 0..k {
                for j in 0..k {
                    let t = power[(i, j)].clone();
                    acc[(i, j)] += t;
                }
            }
            power = power.mul(&self.sigma);
        }
        acc
    }

    /// `sigma - 1`.
    pub fn coboundary_matrix(&self) -> IntMat {
        let k = self.generators();
        let mut d = self.sigma.clone();
        for i in 0..k {
            d[(i, i)] -= BigInt::one();
        }
        d
    }
}

/// Invariant factors of a first cohomology group (all > 1); the trivial
/// group has none.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct H1Result {
    pub invariant_factors: Vec<u64>,
}

impl H1Result {
    pub fn trivial() -> Self {
        H1Result { invariant_factors: Vec::new() }
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn order(&self) -> u64 {
        self.invariant_factors.iter().product()
    }
}

impl fmt::Display for H1Result {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        // Group equal factors: (Z/5)^2, Z/2 x Z/4, ...
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < self.invariant_factors.len() {
            let v = self.invariant_factors[i];
            let mut j = i;
            while j < self.invariant_factors.len() && self.invariant_factors[j] == v {
                j += 1;
            }
            let count = j - i;
            if count == 1 {
                parts.push(format!("Z/{v}"));
            } else {
                parts.push(format!("(Z/{v})^{count}"));
            }
            i = j;
        }
        write!(f, "{}", parts.join(" x "))
    }
}

/// Computes `H^1(G, M) = ker(N) / im(sigma - 1)` exactly.
pub fn h1_cyclic(m: &GModule) -> Result<H1Result> {
    let k = m.generators();
    let n_mat = m.trace_matrix();
    let d_mat = m.coboundary_matrix();
    let r_mat = m.relations();

    // Preimage lattice L = { x : N x lies in the relation lattice }.
    // Since the relation matrix is injective, the kernel of [N | R]
    // projects isomorphically onto L.
    let ext = n_mat.hcat(&r_mat);
    let ker = kernel_basis(&ext);
    let l_cols: Vec<Vec<BigInt>> = ker.into_iter().map(|v| v[..k].to_vec()).collect();
    let l_basis = IntMat::from_columns(k, l_cols);

    // Coboundary lattice W = im(sigma - 1) + relations, contained in L.
    let w = d_mat.hcat(&r_mat);

    let invariants = quotient_invariants(&l_basis, &w).ok_or_else(|| {
        Error::BadPresentation("coboundary lattice escapes the cocycle lattice".into())
    })?;
    let mut factors = Vec::new();
    for inv in invariants {
        if inv.is_zero() {
            return Err(Error::BadPresentation(
                "first cohomology came out infinite; the action data is inconsistent".into(),
            ));
        }
        let v = inv.to_u64().ok_or_else(|| {
            Error::BadPresentation("invariant factor overflow".into())
        })?;
        if v > 1 {
            factors.push(v);
        }
    }
    factors.sort_unstable();
    // Cohomology of a cyclic group of order n is n-torsion.
    for f in &factors {
        if u64::from(m.order()) % f != 0 {
            return Err(Error::BadPresentation(format!(
                "invariant factor {f} does not divide the group order {}",
                m.order()
            )));
        }
    }
    Ok(H1Result { invariant_factors: factors })
}

/// Kernel of the restriction map in the extremal situation: the base
/// curve has no rational points of infinite order (`E(K) = 0`), the
/// cover degree is a prime `p <= 23` (so the cyclotomic integers form a
/// principal ideal domain), and the rank after base change is
/// `r (p - 1)`. The kernel is then `(Z/p)^r`.
pub fn wc_kernel_rank_extremal(rank_after: u64, p: u32) -> Result<H1Result> {
    const PID_PRIMES: [u32; 7] = [5, 7, 11, 13, 17, 19, 23];
    if !PID_PRIMES.contains(&p) {
        return Err(Error::BadCoverDegree(p));
    }
    let pm1 = u64::from(p - 1);
    if rank_after % pm1 != 0 {
        return Err(Error::RankNotDivisible { rank: rank_after, pm1 });
    }
    let r = rank_after / pm1;
    Ok(H1Result { invariant_factors: vec![u64::from(p); r as usize] })
}

/// Solves the coboundary recurrence: given `a` with vanishing sum,
/// returns `b` with `b_0 = 0`, `b_{l+1} = a_l + b_l`, so that the cyclic
/// forward difference of `b` recovers `a`. In module terms: the point
/// `sum b_l sigma^l Q` exhibits `sum a_l sigma^l Q` as a coboundary.
pub fn coboundary_solve(a: &[i64]) -> Result<Vec<i64>> {
    let total: i64 = a.iter().sum();
    if total != 0 {
        return Err(Error::NonzeroTraceSum(total.to_string()));
    }
    let n = a.len();
    let mut b = vec![0i64; n];
    for l in 0..n.saturating_sub(1) {
        b[l + 1] = a[l] + b[l];
    }
    // Cyclic difference identity (the wrap-around follows from sum = 0).
    for l in 0..n {
        debug_assert_eq!(b[(l + 1) % n] - b[l], a[l]);
    }
    Ok(b)
}

/// Verdict of the rank-based stability check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StabilityVerdict {
    /// Ranks agree: the restriction map is injective (trivial kernel).
    RankStable,
    /// Ranks jump by `(p - 1) * module_rank`.
    RankJump { jump: u64, module_rank: u64 },
}

/// Checks rank stability and the divisibility of the jump by `p - 1`.
pub fn check_rank_stability(
    rank_before: u64,
    rank_after: u64,
    p: u32,
) -> Result<StabilityVerdict> {
    if rank_after < rank_before {
        return Err(Error::RankDecrease { before: rank_before, after: rank_after });
    }
    if rank_after == rank_before {
        return Ok(StabilityVerdict::RankStable);
    }
    let jump = rank_after - rank_before;
    let pm1 = u64::from(p - 1);
    if jump % pm1 != 0 {
        return Err(Error::RankNotDivisible { rank: jump, pm1 });
    }
    Ok(StabilityVerdict::RankJump { jump, module_rank: jump / pm1 })
}

/// Kernel computation from an explicit generating point: the module of
/// sections after base change is generated by the orbit of a single seed
/// whose conjugates form a basis, so the action is the regular
/// representation and the kernel is the first cohomology of `Z[G]`.
///
/// Each supplied trace-kernel element is given as the coefficient vector
/// of an integer combination of `sigma^i . Q`; its formal trace is
/// `(sum of coefficients) . Tr(Q)`, so vanishing trace means vanishing
/// coefficient sum (`Tr(Q)` being non-torsion). Every such element is
/// certified to be a coboundary via [`coboundary_solve`].
pub fn wc_kernel_from_points(p: u32, trace_kernel_combos: &[Vec<i64>]) -> Result<H1Result> {
    if p < 2 || !is_prime(u64::from(p)) {
        return Err(Error::BadCoverDegree(p));
    }
    for combo in trace_kernel_combos {
        if combo.len() != p as usize {
            return Err(Error::BadPresentation(format!(
                "a combination must list exactly {p} coefficients, got {}",
                combo.len()
            )));
        }
        let total: i64 = combo.iter().sum();
        if total != 0 {
            return Err(Error::NonzeroTraceSum(total.to_string()));
        }
        // Constructive certificate that the class is a coboundary.
        let _ = coboundary_solve(combo)?;
    }
    let module = GModule::regular_representation(p);
    h1_cyclic(&module)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regular_representation_is_cohomologically_trivial() {
        for n in [2u32, 3, 5, 7] {
            let m = GModule::regular_representation(n);
            assert!(h1_cyclic(&m).unwrap().is_trivial());
        }
    }

    #[test]
    fn cyclotomic_integers_give_z_mod_p() {
        let m = GModule::cyclotomic_integers(5);
        let h = h1_cyclic(&m).unwrap();
        assert_eq!(h.invariant_factors, vec![5]);
        let m7 = GModule::cyclotomic_integers(7);
        assert_eq!(h1_cyclic(&m7).unwrap().invariant_factors, vec![7]);
    }

    #[test]
    fn trivial_action_on_z_has_trivial_h1() {
        let m = GModule::trivial_action(1, vec![], 5);
        assert!(h1_cyclic(&m).unwrap().is_trivial());
    }

    #[test]
    fn trivial_action_on_z_mod_n() {
        // H^1(Z/n, Z/n with trivial action) = Z/n.
        let m = GModule::trivial_action(0, vec![5], 5);
        assert_eq!(h1_cyclic(&m).unwrap().invariant_factors, vec![5]);
        // H^1(Z/5, Z/25 trivial) = Z/5 (multiplication by 5 kernel mod image).
        let m2 = GModule::trivial_action(0, vec![25], 5);
        assert_eq!(h1_cyclic(&m2).unwrap().invariant_factors, vec![5]);
    }

    #[test]
    fn powers_of_cyclotomic() {
        for r in 1..=3usize {
            let mut m = GModule::cyclotomic_integers(5);
            for _ in 1..r {
                m = m.direct_sum(&GModule::cyclotomic_integers(5)).unwrap();
            }
            let h = h1_cyclic(&m).unwrap();
            assert_eq!(h.invariant_factors, vec![5; r]);
        }
    }

    #[test]
    fn sigma_order_enforced() {
        // A matrix of infinite order: [[1, 1], [0, 1]].
        let s = IntMat::from_rows(vec![vec![1, 1], vec![0, 1]]);
        assert!(matches!(
            GModule::new(2, vec![], 5, s),
            Err(Error::SigmaOrderViolation)
        ));
    }

    #[test]
    fn torsion_compatibility_enforced() {
        // sigma sends a torsion generator to a free generator.
        let s = IntMat::from_rows(vec![vec![1, 1], vec![0, 1]]);
        assert!(matches!(
            GModule::new(1, vec![2], 1, s),
            Err(Error::TorsionCompatibility)
        ));
    }

    #[test]
    fn extremal_kernel_ranks() {
        assert_eq!(wc_kernel_rank_extremal(8, 5).unwrap().invariant_factors, vec![5, 5]);
        assert_eq!(wc_kernel_rank_extremal(4, 5).unwrap().invariant_factors, vec![5]);
        assert!(wc_kernel_rank_extremal(0, 5).unwrap().is_trivial());
        assert!(matches!(
            wc_kernel_rank_extremal(7, 5),
            Err(Error::RankNotDivisible { .. })
        ));
        assert!(wc_kernel_rank_extremal(8, 29).is_err());
    }

    #[test]
    fn coboundary_recurrence() {
        assert_eq!(coboundary_solve(&[1, -1, 0, 0, 0]).unwrap(), vec![0, 1, 0, 0, 0]);
        assert_eq!(coboundary_solve(&[0; 5]).unwrap(), vec![0; 5]);
        assert!(matches!(
            coboundary_solve(&[1, 0, 0, 0, 0]),
            Err(Error::NonzeroTraceSum(_))
        ));
    }

    #[test]
    fn rank_stability_verdicts() {
        assert_eq!(check_rank_stability(0, 0, 5).unwrap(), StabilityVerdict::RankStable);
        assert_eq!(
            check_rank_stability(1, 5, 5).unwrap(),
            StabilityVerdict::RankJump { jump: 4, module_rank: 1 }
        );
        assert_eq!(
            check_rank_stability(1, 7, 7).unwrap(),
            StabilityVerdict::RankJump { jump: 6, module_rank: 1 }
        );
        assert!(check_rank_stability(3, 1, 5).is_err());
        assert!(matches!(
            check_rank_stability(0, 3, 5),
            Err(Error::RankNotDivisible { .. })
        ));
    }

    #[test]
    fn kernel_from_points_trivial() {
        // sigma . Q - Q has vanishing trace; the presentation is the
        // regular representation, so the kernel is trivial.
        let combos = vec![vec![-1, 1, 0, 0, 0], vec![0, 1, -1, 0, 0]];
        let h = wc_kernel_from_points(5, &combos).unwrap();
        assert!(h.is_trivial());
        // Nonvanishing trace is rejected.
        assert!(matches!(
            wc_kernel_from_points(5, &[vec![1, 1, 0, 0, 0]]),
            Err(Error::NonzeroTraceSum(_))
        ));
        // Wrong arity is rejected.
        assert!(matches!(
            wc_kernel_from_points(5, &[vec![1, -1]]),
            Err(Error::BadPresentation(_))
        ));
    }

    #[test]
    fn display_formats() {
        assert_eq!(H1Result::trivial().to_string(), "0");
        assert_eq!(H1Result { invariant_factors: vec![5] }.to_string(), "Z/5");
        assert_eq!(H1Result { invariant_factors: vec![5, 5] }.to_string(), "(Z/5)^2");
        assert_eq!(H1Result { invariant_factors: vec![2, 4] }.to_string(), "Z/2 x Z/4");
    }
}
