//! Cyclic base change of prime degree, ramified over 0 and infinity.
//!
//! The cover is normalized to `[t0 : t1] -> [t0^p : t1^p]`; an arbitrary
//! cover ramified over two rational points is reduced to that shape by
//! first applying `WeierstrassModel::move_places_to_standard`.
//!
//! Fiber types transform in two ways:
//! - away from the ramification locus every fiber acquires `p` copies of
//!   itself (one place of degree `p * e` worth of geometric fibers);
//! - over 0 and infinity the valuation triple `(v(f), v(g), v(D))` is
//!   multiplied by `p` and then reduced by `(4, 6, 12)` steps until
//!   minimal, which permutes the additive types.
//!
//! The closed-form table is implemented independently of the pull-back
//! pipeline, and the two derivations are cross-checked against each other
//! in the test suites.

use crate::weierstrass::{FiberConfiguration, KodairaType, Place, WeierstrassModel};
use crate::{Error, Result};

/// Degree-p cyclic Galois cover of the line, ramified at 0 and infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GaloisCover {
    p: u32,
}

impl GaloisCover {
    /// Cover of prime degree `p >= 5` (the classification range).
    pub fn new(p: u32) -> Result<Self> {
        if p < 5 || !is_prime(p as u64) {
            return Err(Error::BadCoverDegree(p));
        }
        Ok(GaloisCover { p })
    }

    /// Relaxed constructor for experimentation: any prime `p >= 2`.
    /// Classification and the transition table still require `p >= 5`.
    pub fn experimental(p: u32) -> Result<Self> {
        if p < 2 || !is_prime(p as u64) {
            return Err(Error::BadCoverDegree(p));
        }
        Ok(GaloisCover { p })
    }

    pub fn degree(&self) -> u32 {
        self.p
    }
}

/// Simple deterministic primality check for the small inputs in play.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Substitutes `t0 -> t0^p`, `t1 -> t1^p` into the model. Degrees
/// multiply by `p`; the result is generally non-minimal at 0 and
/// infinity.
pub fn pull_back(m: &WeierstrassModel, cover: &GaloisCover) -> Result<WeierstrassModel> {
    let p = cover.degree() as usize;
    WeierstrassModel::new(m.f().subst_power(p), m.g().subst_power(p))
}

/// `epsilon = 12 d - v_0(Delta) - v_inf(Delta)` on a globally minimal
/// model: the total discriminant degree away from the ramification locus.
pub fn epsilon_degree(m: &WeierstrassModel) -> Result<usize> {
    if !m.is_globally_minimal()? {
        return Err(Error::NonMinimalModel);
    }
    let delta = m.discriminant();
    let v0 = delta.v0().ok_or(Error::SingularModel)?;
    let vinf = delta.v_inf().ok_or(Error::SingularModel)?;
    let total = 12 * m.d();
    if v0 + vinf > total {
        return Err(Error::NegativeEpsilon);
    }
    Ok(total - v0 - vinf)
}

/// What happens to one fiber under the degree-p cover.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TransitionOutcome {
    /// The fiber sits over a ramification point and becomes this type.
    Ramified(KodairaType),
    /// The fiber sits away from the ramification locus and splits into
    /// `copies` fibers of the same type.
    Unramified { kodaira: KodairaType, copies: u32 },
}

impl TransitionOutcome {
    pub fn kodaira(&self) -> KodairaType {
        match self {
            TransitionOutcome::Ramified(t) => *t,
            TransitionOutcome::Unramified { kodaira, .. } => *kodaira,
        }
    }
}

/// Closed-form fiber transition under a degree-p base change, `p`
/// coprime to 6 (guaranteed by `p >= 5` prime).
///
/// Ramified: `I_n -> I_{pn}`, `I_n* -> I_{pn}*`, and the additive types
/// permute according to `p * v(Delta) mod 12`. Unramified: `p` copies.
pub fn transition_type(
    t: KodairaType,
    cover: &GaloisCover,
    ramified: bool,
) -> Result<TransitionOutcome> {
    let p = cover.degree();
    if p < 5 {
        return Err(Error::BadCoverDegree(p));
    }
    if !ramified {
        return Ok(TransitionOutcome::Unramified { kodaira: t, copies: p });
    }
    let out = match t {
        KodairaType::I(n) => KodairaType::I(p * n),
        KodairaType::IStar(n) => KodairaType::IStar(p * n),
        KodairaType::II | KodairaType::IV | KodairaType::IVStar | KodairaType::IIStar => {
            match (p * t.v_delta()) % 12 {
                2 => KodairaType::II,
                4 => KodairaType::IV,
                8 => KodairaType::IVStar,
                10 => KodairaType::IIStar,
                other => unreachable!("p coprime to 6 keeps v(D) in the even cycle, got {other}"),
            }
        }
        KodairaType::III | KodairaType::IIIStar => match (p * t.v_delta()) % 12 {
            3 => KodairaType::III,
            9 => KodairaType::IIIStar,
            other => unreachable!("p odd keeps v(D) in {{3, 9}}, got {other}"),
        },
    };
    Ok(TransitionOutcome::Ramified(out))
}

/// One fiber's before/after record in a base-change report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberTransition {
    pub place: Place,
    pub before: KodairaType,
    pub after: TransitionOutcome,
}

/// Everything the analysis of one base change produces.
#[derive(Clone, Debug)]
pub struct BaseChangeReport {
    pub p: u32,
    pub before: WeierstrassModel,
    pub pulled_back: WeierstrassModel,
    pub after: WeierstrassModel,
    pub before_configuration: FiberConfiguration,
    pub after_configuration: FiberConfiguration,
    pub epsilon: usize,
    pub l_stable: bool,
    pub fiber_transitions: Vec<FiberTransition>,
}

/// Runs the full pipeline: pull back, re-minimize, recompute fibers, and
/// check the line-bundle identity
/// `12 deg L_after = v_0'(D') + v_inf'(D') + p epsilon` exactly.
pub fn analyze_base_change(m: &WeierstrassModel, cover: &GaloisCover) -> Result<BaseChangeReport> {
    if !m.is_globally_minimal()? {
        return Err(Error::NonMinimalModel);
    }
    let p = cover.degree();
    let before_configuration = m.fiber_configuration()?;
    let eps = epsilon_degree(m)?;
    let pulled_back = pull_back(m, cover)?;
    let after = pulled_back.globally_minimize()?;
    let after_configuration = after.fiber_configuration()?;

    // Line-bundle degree identity, verified exactly.
    let delta_after = after.discriminant();
    let v0p = delta_after.v0().unwrap();
    let vinfp = delta_after.v_inf().unwrap();
    let lhs = 12 * after.d();
    let rhs = v0p + vinfp + (p as usize) * eps;
    if lhs != rhs {
        return Err(Error::DegreeInconsistency(format!(
            "line bundle identity violated: 12*{} != {v0p} + {vinfp} + {p}*{eps}",
            after.d()
        )));
    }

    let zero = Place::zero(m.field());
    let mut fiber_transitions = Vec::new();
    for fd in &before_configuration.fibers {
        let ramified = fd.place == zero || fd.place == Place::Infinity;
        let after_outcome = if ramified {
            let observed = after_configuration.type_at(&fd.place);
            let predicted = transition_type(fd.kodaira, cover, true)?;
            if TransitionOutcome::Ramified(observed) != predicted {
                return Err(Error::DegreeInconsistency(format!(
                    "transition table mismatch at {}: predicted {}, pipeline found {}",
                    fd.place,
                    predicted.kodaira(),
                    observed
                )));
            }
            predicted
        } else {
            transition_type(fd.kodaira, cover, false)?
        };
        fiber_transitions.push(FiberTransition {
            place: fd.place.clone(),
            before: fd.kodaira,
            after: after_outcome,
        });
    }

    let l_stable = after.d() == m.d();
    Ok(BaseChangeReport {
        p,
        before: m.clone(),
        pulled_back,
        after,
        before_configuration,
        after_configuration,
        epsilon: eps,
        l_stable,
        fiber_transitions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::nf::NumberField;
    use crate::weierstrass::HomPoly;

    fn q() -> NumberField {
        NumberField::rationals()
    }

    fn model_34() -> WeierstrassModel {
        let f = HomPoly::monomial(q(), 4, 3, q().from_int(-1));
        let g = HomPoly::monomial(q(), 6, 4, q().from_int(1));
        WeierstrassModel::new(f, g).unwrap()
    }

    fn model_7() -> WeierstrassModel {
        let f = HomPoly::monomial(q(), 4, 1, q().from_int(-1));
        let g = HomPoly::monomial(q(), 6, 1, q().from_int(1));
        WeierstrassModel::new(f, g).unwrap()
    }

    #[test]
    fn pull_back_exponents() {
        // p = 7 applied to y^2 = x^3 - t0 t1^3 x + t0 t1^5 gives
        // y^2 = x^3 - t0^7 t1^21 x + t0^7 t1^35.
        let cover = GaloisCover::new(7).unwrap();
        let up = pull_back(&model_7(), &cover).unwrap();
        assert_eq!(up.f(), &HomPoly::monomial(q(), 28, 7, q().from_int(-1)));
        assert_eq!(up.g(), &HomPoly::monomial(q(), 42, 7, q().from_int(1)));
        // p = 5 applied to the other fixture.
        let cover5 = GaloisCover::new(5).unwrap();
        let up5 = pull_back(&model_34(), &cover5).unwrap();
        assert_eq!(up5.f(), &HomPoly::monomial(q(), 20, 15, q().from_int(-1)));
        assert_eq!(up5.g(), &HomPoly::monomial(q(), 30, 20, q().from_int(1)));
    }

    #[test]
    fn epsilon_values() {
        assert_eq!(epsilon_degree(&model_34()).unwrap(), 1); // 12 - 8 - 3
        assert_eq!(epsilon_degree(&model_7()).unwrap(), 1); // 12 - 2 - 9
        // II* + II at 0, inf: epsilon = 0.
        let f = HomPoly::zero(q(), 4);
        let g = HomPoly::monomial(q(), 6, 5, q().from_int(1));
        let m = WeierstrassModel::new(f, g).unwrap();
        assert_eq!(epsilon_degree(&m).unwrap(), 0);
    }

    #[test]
    fn transition_closed_form() {
        let c5 = GaloisCover::new(5).unwrap();
        let c7 = GaloisCover::new(7).unwrap();
        // II <-> II* under p = 5 (an involution on that pair).
        assert_eq!(
            transition_type(KodairaType::II, &c5, true).unwrap(),
            TransitionOutcome::Ramified(KodairaType::IIStar)
        );
        assert_eq!(
            transition_type(KodairaType::IIStar, &c5, true).unwrap(),
            TransitionOutcome::Ramified(KodairaType::II)
        );
        // IV* fixed under p = 7 (7 * 8 = 56 = 8 mod 12).
        assert_eq!(
            transition_type(KodairaType::IVStar, &c7, true).unwrap(),
            TransitionOutcome::Ramified(KodairaType::IVStar)
        );
        // I1 away from ramification splits into 5 copies.
        assert_eq!(
            transition_type(KodairaType::I(1), &c5, false).unwrap(),
            TransitionOutcome::Unramified { kodaira: KodairaType::I(1), copies: 5 }
        );
        // I0* is fixed by any odd p.
        assert_eq!(
            transition_type(KodairaType::IStar(0), &c5, true).unwrap(),
            TransitionOutcome::Ramified(KodairaType::IStar(0))
        );
    }

    #[test]
    fn analyze_model_34_is_l_stable() {
        let cover = GaloisCover::new(5).unwrap();
        let report = analyze_base_change(&model_34(), &cover).unwrap();
        assert!(report.l_stable);
        assert_eq!(report.epsilon, 1);
        assert_eq!(report.after.d(), 1);
        // IV* -> IV over 0, III -> III over infinity.
        let zero = Place::zero(&q());
        let t0 = report.fiber_transitions.iter().find(|ft| ft.place == zero).unwrap();
        assert_eq!(t0.after.kodaira(), KodairaType::IV);
        let tinf =
            report.fiber_transitions.iter().find(|ft| ft.place == Place::Infinity).unwrap();
        assert_eq!(tinf.after.kodaira(), KodairaType::III);
    }

    #[test]
    fn analyze_model_7_is_l_stable() {
        let cover = GaloisCover::new(7).unwrap();
        let report = analyze_base_change(&model_7(), &cover).unwrap();
        assert!(report.l_stable);
        // Minimal model after base change: y^2 = x^3 - t0^3 t1 x + t0 t1^5.
        assert_eq!(report.after.f(), &HomPoly::monomial(q(), 4, 3, q().from_int(-1)));
        assert_eq!(report.after.g(), &HomPoly::monomial(q(), 6, 1, q().from_int(1)));
    }

    #[test]
    fn analyze_i3_at_zero_not_l_stable() {
        // f = -3, g = 2 + t^3: Delta = -432 t^3 (t^3 + 4), an I3 fiber at 0.
        let f = crate::algebra::poly::Poly::from_ints(&q(), &[-3]);
        let g = crate::algebra::poly::Poly::from_ints(&q(), &[2, 0, 0, 1]);
        let m = WeierstrassModel::from_affine(&f, &g).unwrap();
        let cfg = m.fiber_configuration().unwrap();
        assert_eq!(cfg.type_at(&Place::zero(&q())), KodairaType::I(3));
        let cover = GaloisCover::new(5).unwrap();
        let report = analyze_base_change(&m, &cover).unwrap();
        assert!(!report.l_stable);
        assert_eq!(
            report.after_configuration.type_at(&Place::zero(&q())),
            KodairaType::I(15)
        );
        assert!(report.after.d() > m.d());
    }

    #[test]
    fn cover_degree_validation() {
        assert!(GaloisCover::new(5).is_ok());
        assert!(GaloisCover::new(4).is_err());
        assert!(GaloisCover::new(3).is_err());
        assert!(GaloisCover::experimental(3).is_ok());
        assert!(GaloisCover::experimental(1).is_err());
    }
}
