//! Mordell-Weil machinery: Shioda-Tate ranks, the group law on sections
//! over a function field, the cyclic Galois action on sections of
//! monomial (Delsarte) models, traces, and verification of explicit
//! generator families.
//!
//! Sections are points of the generic fiber `y^2 = x^3 + f(t) x + g(t)`
//! with coordinates in the rational function field over a number field.
//! All arithmetic is exact; point equality is structural equality of
//! canonical forms.

use std::fmt;

use crate::algebra::nf::{NFElement, NumberField};
use crate::algebra::poly::Poly;
use crate::algebra::ratfunc::RatFunc;
use crate::weierstrass::{FiberConfiguration, WeierstrassModel};
use crate::{Error, Result};

// ---------------------------------------------------------------------------
// Shioda-Tate
// ---------------------------------------------------------------------------

/// Mordell-Weil rank from the Shioda-Tate identity
/// `rho = 2 + rank + sum (m_v - 1)`; for a rational elliptic surface
/// `rho = 10`.
pub fn shioda_tate_rank(config: &FiberConfiguration, rho: u32) -> Result<u32> {
    let excess = config.component_excess() as u32;
    if rho < 2 + excess {
        return Err(Error::ShiodaTateViolation(format!(
            "component excess {excess} exceeds rho - 2 = {}",
            rho.saturating_sub(2)
        )));
    }
    Ok(rho - 2 - excess)
}

// ---------------------------------------------------------------------------
// Points and the group law
// ---------------------------------------------------------------------------

/// Point on the generic fiber: the zero section or an affine point with
/// rational-function coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FFPoint {
    Zero,
    Affine { x: RatFunc, y: RatFunc },
}

impl FFPoint {
    pub fn affine(x: RatFunc, y: RatFunc) -> Self {
        FFPoint::Affine { x, y }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, FFPoint::Zero)
    }

    pub fn xy(&self) -> Option<(&RatFunc, &RatFunc)> {
        match self {
            FFPoint::Zero => None,
            FFPoint::Affine { x, y } => Some((x, y)),
        }
    }
}

impl fmt::Display for FFPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FFPoint::Zero => write!(f, "O"),
            FFPoint::Affine { x, y } => write!(f, "({x}, {y})"),
        }
    }
}

/// Affine chart of a short Weierstrass model: `y^2 = x^3 + f(t) x + g(t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineCurve {
    f: Poly,
    g: Poly,
}

impl AffineCurve {
    pub fn new(f: Poly, g: Poly) -> Result<Self> {
        if f.field() != g.field() {
            return Err(Error::FieldMismatch);
        }
        Ok(AffineCurve { f, g })
    }

    pub fn from_model(m: &WeierstrassModel) -> Self {
        let (f, g) = m.affine();
        AffineCurve { f, g }
    }

    pub fn f(&self) -> &Poly {
        &self.f
    }

    pub fn g(&self) -> &Poly {
        &self.g
    }

    pub fn field(&self) -> &NumberField {
        self.f.field()
    }

    /// Same curve with coefficients mapped into a larger tower.
    pub fn embed(&self, target: &NumberField) -> Result<Self> {
        Ok(AffineCurve { f: self.f.embed(target)?, g: self.g.embed(target)? })
    }

    /// Exact on-curve test: `y^2 - x^3 - f x - g = 0` as a rational
    /// function.
    pub fn contains(&self, p: &FFPoint) -> bool {
        match p {
            FFPoint::Zero => true,
            FFPoint::Affine { x, y } => {
                let fx = RatFunc::from_poly(self.f.clone());
                let gx = RatFunc::from_poly(self.g.clone());
                let rhs = x.square().mul(x).add(&fx.mul(x)).add(&gx);
                y.square() == rhs
            }
        }
    }

    pub fn neg(&self, p: &FFPoint) -> FFPoint {
        match p {
            FFPoint::Zero => FFPoint::Zero,
            FFPoint::Affine { x, y } => FFPoint::Affine { x: x.clone(), y: y.neg() },
        }
    }

    /// Chord-tangent addition with exact rational-function arithmetic.
    pub fn add(&self, p: &FFPoint, q: &FFPoint) -> Result<FFPoint> {
        let (x1, y1) = match p {
            FFPoint::Zero => return Ok(q.clone()),
            FFPoint::Affine { x, y } => (x, y),
        };
        let (x2, y2) = match q {
            FFPoint::Zero => return Ok(p.clone()),
            FFPoint::Affine { x, y } => (x, y),
        };
        let lambda = if x1 == x2 {
            if *y2 == y1.neg() {
                return Ok(FFPoint::Zero);
            }
            // Tangent: (3 x^2 + f) / (2 y).
            let three_x2 = x1.square().mul_elem(&self.field().from_int(3));
            let num = three_x2.add(&RatFunc::from_poly(self.f.clone()));
            let den = y1.mul_elem(&self.field().from_int(2));
            num.div(&den)?
        } else {
            y2.sub(y1).div(&x2.sub(x1))?
        };
        let x3 = lambda.square().sub(x1).sub(x2);
        let y3 = lambda.mul(&x1.sub(&x3)).sub(y1);
        Ok(FFPoint::Affine { x: x3, y: y3 })
    }

    pub fn sub(&self, p: &FFPoint, q: &FFPoint) -> Result<FFPoint> {
        self.add(p, &self.neg(q))
    }

    /// Integer multiple by repeated addition (coefficients in play are
    /// tiny).
    pub fn mul_scalar(&self, k: i64, p: &FFPoint) -> Result<FFPoint> {
        let (mut k, base) = if k < 0 { ((-k) as u64, self.neg(p)) } else { (k as u64, p.clone()) };
        let mut acc = FFPoint::Zero;
        let mut cur = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &cur)?;
            }
            k >>= 1;
            if k > 0 {
                cur = self.add(&cur, &cur)?;
            }
        }
        Ok(acc)
    }
}

// ---------------------------------------------------------------------------
// Galois action on sections
// ---------------------------------------------------------------------------

/// Action of a generator of the cyclic Galois group on sections of a
/// monomial model `y^2 = x^3 + a t^m x + b t^n`:
///
/// ```text
/// sigma . (x(t), y(t)) = (zeta^wx x(zeta t), zeta^wy y(zeta t))
/// ```
///
/// The weights solve `3 wx = 2 wy`, `2 wy + m = wx`, `2 wy + n = 0`
/// (mod p), which is exactly the condition that the map sends points of
/// the model to points of the model.
#[derive(Clone, Debug)]
pub struct GaloisSectionAction {
    p: u32,
    zeta: NFElement,
    w_x: u32,
    w_y: u32,
}

impl GaloisSectionAction {
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn zeta(&self) -> &NFElement {
        &self.zeta
    }

    pub fn weights(&self) -> (u32, u32) {
        (self.w_x, self.w_y)
    }

    /// Applies the generator to a point.
    pub fn apply(&self, p: &FFPoint) -> FFPoint {
        match p {
            FFPoint::Zero => FFPoint::Zero,
            FFPoint::Affine { x, y } => {
                let zx = self.zeta.pow(u64::from(self.w_x));
                let zy = self.zeta.pow(u64::from(self.w_y));
                FFPoint::Affine {
                    x: x.scale_var(&self.zeta).mul_elem(&zx),
                    y: y.scale_var(&self.zeta).mul_elem(&zy),
                }
            }
        }
    }

    /// `sigma^k`.
    pub fn apply_power(&self, p: &FFPoint, k: u32) -> FFPoint {
        let mut out = p.clone();
        for _ in 0..(k % self.p) {
            out = self.apply(&out);
        }
        out
    }
}

/// Solves the weight congruences for a monomial model and verifies the
/// resulting map symbolically on the defining equation.
pub fn galois_weights(curve: &AffineCurve, p: u32, zeta: NFElement) -> Result<GaloisSectionAction> {
    if p < 2 || !crate::base_change::is_prime(u64::from(p)) {
        return Err(Error::BadCoverDegree(p));
    }
    if zeta.field() != curve.field() {
        return Err(Error::FieldMismatch);
    }
    if !zeta.pow(u64::from(p)).is_one() || zeta.is_one() {
        return Err(Error::FixtureValidation(
            "zeta must be a primitive p-th root of unity".into(),
        ));
    }
    let monomial_degree = |q: &Poly| -> Result<Option<i64>> {
        if q.is_zero() {
            return Ok(None);
        }
        let d = q.degree().unwrap();
        for (i, c) in q.coeffs().iter().enumerate() {
            if i != d && !c.is_zero() {
                return Err(Error::NotDelsarte);
            }
        }
        Ok(Some(d as i64))
    };
    let m = monomial_degree(curve.f())?;
    let n = monomial_degree(curve.g())?;
    let pi = i64::from(p);
    let inv = |a: i64| -> i64 {
        // inverse mod p by Fermat; p is prime and a is a unit
        let mut acc = 1i64;
        let mut base = a.rem_euclid(pi);
        let mut e = pi - 2;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % pi;
            }
            base = base * base % pi;
            e >>= 1;
        }
        acc
    };
    let (w_x, w_y) = match (m, n) {
        (Some(m), Some(n)) => {
            if (3 * m - 2 * n).rem_euclid(pi) != 0 {
                return Err(Error::InconsistentCongruences { m, n, p });
            }
            let w_x = (m - n).rem_euclid(pi);
            let w_y = (-n).rem_euclid(pi) * inv(2) % pi;
            (w_x, w_y)
        }
        (Some(m), None) => {
            // 2 wx = -m, wy = 3 wx / 2.
            let w_x = (-m).rem_euclid(pi) * inv(2) % pi;
            let w_y = 3 * w_x % pi * inv(2) % pi;
            (w_x, w_y)
        }
        (None, Some(n)) => {
            let w_y = (-n).rem_euclid(pi) * inv(2) % pi;
            let w_x = 2 * w_y % pi * inv(3) % pi;
            (w_x, w_y)
        }
        (None, None) => (0, 0),
    };
    let action = GaloisSectionAction {
        p,
        zeta: zeta.clone(),
        w_x: w_x.rem_euclid(pi) as u32,
        w_y: w_y.rem_euclid(pi) as u32,
    };
    // Symbolic verification on the defining equation: the map preserves
    // y^2 = x^3 + f x + g if and only if
    //   3 wx = 2 wy (mod p),
    //   zeta^{2 wy} f(zeta t) = zeta^{wx} f(t),
    //   zeta^{2 wy} g(zeta t) = g(t).
    if (3 * action.w_x as i64 - 2 * action.w_y as i64).rem_euclid(pi) != 0 {
        return Err(Error::InconsistentCongruences {
            m: m.unwrap_or(0),
            n: n.unwrap_or(0),
            p,
        });
    }
    let z2wy = zeta.pow(u64::from(2 * action.w_y));
    let zwx = zeta.pow(u64::from(action.w_x));
    let f_twist = curve.f().scale_var(&zeta).mul_elem(&z2wy);
    if f_twist != curve.f().mul_elem(&zwx) {
        return Err(Error::InconsistentCongruences { m: m.unwrap_or(0), n: n.unwrap_or(0), p });
    }
    let g_twist = curve.g().scale_var(&zeta).mul_elem(&z2wy);
    if g_twist != *curve.g() {
        return Err(Error::InconsistentCongruences { m: m.unwrap_or(0), n: n.unwrap_or(0), p });
    }
    Ok(action)
}

/// Trace of a point: the sum of its Galois conjugates. The result is
/// fixed by the action.
pub fn trace(curve: &AffineCurve, action: &GaloisSectionAction, p: &FFPoint) -> Result<FFPoint> {
    let mut acc = p.clone();
    let mut conj = p.clone();
    for _ in 1..action.p() {
        conj = action.apply(&conj);
        acc = curve.add(&acc, &conj)?;
    }
    Ok(acc)
}

/// Materializes an integer combination `sum_k combo[k] (sigma^k . seed)`.
pub fn materialize_combination(
    curve: &AffineCurve,
    action: &GaloisSectionAction,
    seed: &FFPoint,
    combo: &[i64],
) -> Result<FFPoint> {
    if combo.len() != action.p() as usize {
        return Err(Error::BadRecipe(format!(
            "combination must have exactly {} coefficients",
            action.p()
        )));
    }
    let mut acc = FFPoint::Zero;
    let mut conj = seed.clone();
    for (k, &coef) in combo.iter().enumerate() {
        if k > 0 {
            conj = action.apply(&conj);
        }
        if coef != 0 {
            let term = curve.mul_scalar(coef, &conj)?;
            acc = curve.add(&acc, &term)?;
        }
    }
    Ok(acc)
}

// ---------------------------------------------------------------------------
// Generator families
// ---------------------------------------------------------------------------

/// A named integer combination of Galois conjugates of the seed.
#[derive(Clone, Debug)]
pub struct Recipe {
    pub name: String,
    /// Coefficient of `sigma^k . seed` at index `k`; length p.
    pub combo: Vec<i64>,
}

impl Recipe {
    pub fn new(name: &str, combo: Vec<i64>) -> Self {
        Recipe { name: name.to_string(), combo }
    }
}

/// A family of candidate generators: a seed section, derived recipe
/// points, and the expected count of distinct points once orbits and
/// negatives are included, under a polynomial coordinate-shape bound.
#[derive(Clone, Debug)]
pub struct GeneratorFamily {
    pub seed: FFPoint,
    pub recipes: Vec<Recipe>,
    pub expected_count: usize,
    /// Shape bound: `x` polynomial of degree <= this, `y` polynomial of
    /// degree <= this + 1.
    pub max_x_degree: usize,
}

/// Outcome of materializing and checking a family.
#[derive(Clone, Debug)]
pub struct FamilyReport {
    pub distinct_count: usize,
    pub expected_count: usize,
    /// Recipe points falling off the curve (must be empty).
    pub off_curve: Vec<String>,
    /// Distinct points violating the coordinate-shape bound.
    pub shape_violations: Vec<String>,
    /// Recipe points fixed by the Galois action.
    pub sigma_fixed: Vec<String>,
}

impl FamilyReport {
    pub fn passes(&self) -> bool {
        self.distinct_count == self.expected_count
            && self.off_curve.is_empty()
            && self.shape_violations.is_empty()
    }
}

fn shape_ok(p: &FFPoint, max_x_degree: usize) -> bool {
    match p {
        FFPoint::Zero => false,
        FFPoint::Affine { x, y } => {
            let xd = match x.as_poly() {
                Some(q) => q.degree().unwrap_or(0),
                None => return false,
            };
            let yd = match y.as_poly() {
                Some(q) => q.degree().unwrap_or(0),
                None => return false,
            };
            xd <= max_x_degree && yd <= max_x_degree + 1
        }
    }
}

/// Materializes all recipe points, their full orbits under the action,
/// and all negatives; checks the on-curve and shape conditions and
/// counts distinct points.
pub fn verify_generator_family(
    curve: &AffineCurve,
    action: &GaloisSectionAction,
    family: &GeneratorFamily,
) -> Result<FamilyReport> {
    if !curve.contains(&family.seed) {
        return Err(Error::PointOffCurve("family seed".into()));
    }
    let p = action.p() as usize;
    let mut off_curve = Vec::new();
    let mut sigma_fixed = Vec::new();
    let mut distinct: Vec<FFPoint> = Vec::new();
    let mut shape_violations = Vec::new();

    let mut push_distinct = |pt: FFPoint, label: &str, shape_violations: &mut Vec<String>| {
        if !distinct.contains(&pt) {
            if !shape_ok(&pt, family.max_x_degree) {
                shape_violations.push(label.to_string());
            }
            distinct.push(pt);
        }
    };

    for recipe in &family.recipes {
        let point = materialize_combination(curve, action, &family.seed, &recipe.combo)?;
        if !curve.contains(&point) {
            off_curve.push(recipe.name.clone());
            continue;
        }
        if action.apply(&point) == point {
            sigma_fixed.push(recipe.name.clone());
        }
        let mut conj = point.clone();
        for k in 0..p {
            if k > 0 {
                conj = action.apply(&conj);
            }
            let lbl = format!("{}#{k}", recipe.name);
            push_distinct(conj.clone(), &lbl, &mut shape_violations);
            push_distinct(curve.neg(&conj), &format!("-{lbl}"), &mut shape_violations);
        }
    }

    Ok(FamilyReport {
        distinct_count: distinct.len(),
        expected_count: family.expected_count,
        off_curve,
        shape_violations,
        sigma_fixed,
    })
}

pub mod fixtures;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::nf::NumberField;
    use crate::weierstrass::HomPoly;

    fn q() -> NumberField {
        NumberField::rationals()
    }

    /// y^2 = x^3 - t^3 x + t^2 over the rationals.
    fn curve_34() -> AffineCurve {
        let f = Poly::from_ints(&q(), &[0, 0, 0, -1]);
        let g = Poly::from_ints(&q(), &[0, 0, 1]);
        AffineCurve::new(f, g).unwrap()
    }

    #[test]
    fn shioda_tate_table_rows() {
        // {IV*, III, I1} has rank 1; {III, II, 7 I1} has rank 7;
        // {IV, III, 5 I1} has rank 5.
        let m34 = WeierstrassModel::new(
            HomPoly::monomial(q(), 4, 3, q().from_int(-1)),
            HomPoly::monomial(q(), 6, 4, q().from_int(1)),
        )
        .unwrap();
        let cfg = m34.fiber_configuration().unwrap();
        assert_eq!(shioda_tate_rank(&cfg, 10).unwrap(), 1);

        let m7post = WeierstrassModel::new(
            HomPoly::monomial(q(), 4, 3, q().from_int(-1)),
            HomPoly::monomial(q(), 6, 1, q().from_int(1)),
        )
        .unwrap();
        let cfg = m7post.fiber_configuration().unwrap();
        assert_eq!(shioda_tate_rank(&cfg, 10).unwrap(), 7);

        let m34post = WeierstrassModel::new(
            HomPoly::monomial(q(), 4, 3, q().from_int(-1)),
            HomPoly::monomial(q(), 6, 2, q().from_int(1)),
        )
        .unwrap();
        let cfg = m34post.fiber_configuration().unwrap();
        assert_eq!(shioda_tate_rank(&cfg, 10).unwrap(), 5);
    }

    #[test]
    fn group_law_identity_and_inverse() {
        let c = curve_34();
        // A rational point on y^2 = x^3 - t^3 x + t^2: (0, t).
        let p = FFPoint::affine(
            RatFunc::zero(q()),
            RatFunc::from_poly(Poly::from_ints(&q(), &[0, 1])),
        );
        assert!(c.contains(&p));
        assert_eq!(c.add(&p, &FFPoint::Zero).unwrap(), p);
        let minus = c.neg(&p);
        assert_eq!(c.add(&p, &minus).unwrap(), FFPoint::Zero);
        // Doubling stays on the curve.
        let dbl = c.add(&p, &p).unwrap();
        assert!(c.contains(&dbl));
        assert_eq!(c.mul_scalar(2, &p).unwrap(), dbl);
        assert_eq!(c.mul_scalar(-1, &p).unwrap(), minus);
    }

    #[test]
    fn weights_for_monomial_models() {
        // y^2 = x^3 - t^3 x + t^2, p = 5: weights (1, 4).
        let field = NumberField::rationals().extend_cyclotomic("z", 5).unwrap();
        let c = curve_34().embed(&field).unwrap();
        let act = galois_weights(&c, 5, field.generator(0)).unwrap();
        assert_eq!(act.weights(), (1, 4));

        // y^2 = x^3 - t^3 x + t, p = 7: weights (2, 3).
        let f7 = NumberField::rationals().extend_cyclotomic("z", 7).unwrap();
        let c7 = AffineCurve::new(
            Poly::from_ints(&f7, &[0, 0, 0, -1]),
            Poly::from_ints(&f7, &[0, 1]),
        )
        .unwrap();
        let act7 = galois_weights(&c7, 7, f7.generator(0)).unwrap();
        assert_eq!(act7.weights(), (2, 3));

        // y^2 = x^3 + t x + t, p = 5: inconsistent congruences.
        let c_bad = AffineCurve::new(
            Poly::from_ints(&field, &[0, 1]),
            Poly::from_ints(&field, &[0, 1]),
        )
        .unwrap();
        assert!(matches!(
            galois_weights(&c_bad, 5, field.generator(0)),
            Err(Error::InconsistentCongruences { .. })
        ));
    }

    #[test]
    fn sigma_has_order_p_and_respects_curve() {
        let field = NumberField::rationals().extend_cyclotomic("z", 5).unwrap();
        let c = curve_34().embed(&field).unwrap();
        let act = galois_weights(&c, 5, field.generator(0)).unwrap();
        let p = FFPoint::affine(
            RatFunc::zero(field.clone()),
            RatFunc::from_poly(Poly::from_ints(&field, &[0, 1])),
        );
        // (0, t) has x fixed and y multiplied by zeta^{wy} zeta = ...
        let moved = act.apply(&p);
        assert!(c.contains(&moved));
        let back = act.apply_power(&p, 5);
        assert_eq!(back, p);
        assert_eq!(act.apply(&FFPoint::Zero), FFPoint::Zero);
    }
}
