//! Weierstrass models over the function field of the line.
//!
//! A model is `y^2 = x^3 + f x + g` with `f`, `g` homogeneous in
//! `(t0, t1)` of degrees `4d`, `6d`. The representation is homogeneous
//! throughout; affine charts are views (`t = t0/t1`). Places are monic
//! irreducible polynomials in `t` plus the place at infinity; a place of
//! degree `e` counts as `e` geometric fibers of identical type, so every
//! fiber count below is weighted by place degree. Irreducibility of a
//! finite place's polynomial is a caller contract, exactly like modulus
//! irreducibility in the field tower.
//!
//! Everything assumes characteristic zero and short Weierstrass form; the
//! reduction-type table below is the standard one for that setting, read
//! off the valuations of `f`, `g` and the minimal discriminant.

use std::fmt;

use crate::algebra::factor::{factor_rational, gcd_free_basis, squarefree_decomposition};
use crate::algebra::nf::{NFElement, NumberField, Rat};
use crate::algebra::poly::Poly;
use crate::{Error, Result};

// ---------------------------------------------------------------------------
// Homogeneous polynomials
// ---------------------------------------------------------------------------

/// Homogeneous polynomial in `(t0, t1)` of a fixed total degree.
///
/// `coeffs[i]` is the coefficient of `t0^i t1^(degree - i)`; the vector
/// always has exactly `degree + 1` slots. The zero polynomial keeps its
/// formal degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomPoly {
    field: NumberField,
    degree: usize,
    coeffs: Vec<NFElement>,
}

impl HomPoly {
    pub fn new(field: NumberField, degree: usize, mut coeffs: Vec<NFElement>) -> Self {
        assert!(coeffs.len() <= degree + 1, "too many coefficients for the degree");
        coeffs.resize(degree + 1, field.zero());
        HomPoly { field, degree, coeffs }
    }

    pub fn zero(field: NumberField, degree: usize) -> Self {
        let coeffs = vec![field.zero(); degree + 1];
        HomPoly { field, degree, coeffs }
    }

    /// Monomial `c * t0^i t1^(degree - i)`.
    pub fn monomial(field: NumberField, degree: usize, i: usize, c: NFElement) -> Self {
        assert!(i <= degree);
        let mut p = HomPoly::zero(field, degree);
        p.coeffs[i] = c;
        p
    }

    /// Homogenizes an affine polynomial in `t = t0/t1` to the target
    /// degree: `t^i` becomes `t0^i t1^(degree-i)`.
    pub fn from_affine(p: &Poly, degree: usize) -> Result<Self> {
        if let Some(dp) = p.degree() {
            if dp > degree {
                return Err(Error::DegreeInconsistency(format!(
                    "affine degree {dp} exceeds homogeneous degree {degree}"
                )));
            }
        }
        let field = p.field().clone();
        let mut coeffs = vec![field.zero(); degree + 1];
        for (i, c) in p.coeffs().iter().enumerate() {
            coeffs[i] = c.clone();
        }
        Ok(HomPoly { field, degree, coeffs })
    }

    /// The affine view `q(t) = self(t, 1)`.
    pub fn to_affine(&self) -> Poly {
        Poly::new(self.field.clone(), self.coeffs.clone())
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeff(&self, i: usize) -> &NFElement {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(NFElement::is_zero)
    }

    /// Valuation at `t0` (order of vanishing at the place 0), if nonzero.
    pub fn v0(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Valuation at `t1` (the place at infinity), if nonzero.
    pub fn v_inf(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero()).map(|i| self.degree - i)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree, "degree mismatch in homogeneous addition");
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.add(b)).collect();
        HomPoly { field: self.field.clone(), degree: self.degree, coeffs }
    }

    pub fn neg(&self) -> Self {
        HomPoly {
            field: self.field.clone(),
            degree: self.degree,
            coeffs: self.coeffs.iter().map(NFElement::neg).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let degree = self.degree + other.degree;
        let mut coeffs = vec![self.field.zero(); degree + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        HomPoly { field: self.field.clone(), degree, coeffs }
    }

    pub fn mul_elem(&self, c: &NFElement) -> Self {
        HomPoly {
            field: self.field.clone(),
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(),
        }
    }

    pub fn mul_rat(&self, q: &Rat) -> Self {
        HomPoly {
            field: self.field.clone(),
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|a| a.mul_rat(q)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = HomPoly::new(self.field.clone(), 0, vec![self.field.one()]);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Substitution `t0 -> t0^p`, `t1 -> t1^p`.
    pub fn subst_power(&self, p: usize) -> Self {
        assert!(p >= 1);
        let degree = self.degree * p;
        let mut coeffs = vec![self.field.zero(); degree + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                coeffs[i * p] = c.clone();
            }
        }
        HomPoly { field: self.field.clone(), degree, coeffs }
    }

    /// Exact division by `t0^k`.
    pub fn div_t0(&self, k: usize) -> Result<Self> {
        if self.v0().map_or(true, |v| v < k) {
            return Err(Error::InexactDivision("t0 power does not divide".into()));
        }
        let degree = self.degree - k;
        let coeffs = self.coeffs[k..].to_vec();
        Ok(HomPoly { field: self.field.clone(), degree, coeffs })
    }

    /// Exact division by `t1^k`.
    pub fn div_t1(&self, k: usize) -> Result<Self> {
        if self.v_inf().map_or(true, |v| v < k) {
            return Err(Error::InexactDivision("t1 power does not divide".into()));
        }
        let degree = self.degree - k;
        let coeffs = self.coeffs[..=degree].to_vec();
        Ok(HomPoly { field: self.field.clone(), degree, coeffs })
    }

    /// Linear substitution `t0 -> a t0 + b t1`, `t1 -> c t0 + d t1`.
    pub fn linear_subst(&self, a: &NFElement, b: &NFElement, c: &NFElement, d: &NFElement) -> Self {
        // Linear forms indexed by t0 exponent: slot 1 carries t0.
        let l1 = HomPoly::new(self.field.clone(), 1, vec![b.clone(), a.clone()]);
        let l2 = HomPoly::new(self.field.clone(), 1, vec![d.clone(), c.clone()]);
        let mut acc = HomPoly::zero(self.field.clone(), self.degree);
        for (i, coeff) in self.coeffs.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            let term = l1.pow(i as u32).mul(&l2.pow((self.degree - i) as u32));
            acc = acc.add(&term.mul_elem(coeff));
        }
        acc
    }
}

impl fmt::Display for HomPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<String> = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mut mono = String::new();
            if i > 0 {
                mono.push_str("t0");
                if i > 1 {
                    mono.push_str(&format!("^{i}"));
                }
            }
            let j = self.degree - i;
            if j > 0 {
                if !mono.is_empty() {
                    mono.push(' ');
                }
                mono.push_str("t1");
                if j > 1 {
                    mono.push_str(&format!("^{j}"));
                }
            }
            let body = match c.as_rat() {
                Some(q) if q == Rat::from_integer(1.into()) && !mono.is_empty() => mono,
                _ => {
                    if mono.is_empty() {
                        format!("{c}")
                    } else {
                        format!("{c} {mono}")
                    }
                }
            };
            terms.push(body);
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", terms.join(" + "))
    }
}

// ---------------------------------------------------------------------------
// Places
// ---------------------------------------------------------------------------

/// A closed point of the projective line over the coefficient field:
/// either a monic irreducible polynomial in `t`, or the point at
/// infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Place {
    Finite(Poly),
    Infinity,
}

impl Place {
    /// The place `t = 0`.
    pub fn zero(field: &NumberField) -> Self {
        Place::Finite(Poly::variable(field.clone()))
    }

    /// The place `t = a` for a rational point of the line.
    pub fn at(a: NFElement) -> Self {
        let field = a.field().clone();
        Place::Finite(Poly::new(field.clone(), vec![a.neg(), field.one()]))
    }

    pub fn finite(p: Poly) -> Result<Self> {
        if !p.is_monic() || p.degree().map_or(true, |d| d == 0) {
            return Err(Error::DegreeInconsistency(
                "a finite place must be a monic polynomial of degree >= 1".into(),
            ));
        }
        Ok(Place::Finite(p))
    }

    /// Residue degree of the place.
    pub fn degree(&self) -> usize {
        match self {
            Place::Finite(p) => p.degree().unwrap_or(0),
            Place::Infinity => 1,
        }
    }

    pub fn is_zero_place(&self) -> bool {
        match self {
            Place::Finite(p) => p.degree() == Some(1) && p.coeff(0).is_zero(),
            Place::Infinity => false,
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Infinity => write!(f, "t=inf"),
            Place::Finite(p) => {
                if p.degree() == Some(1) {
                    let root = p.coeff(0).neg();
                    write!(f, "t={root}")
                } else {
                    write!(f, "{}=0", p)
                }
            }
        }
    }
}

/// Order of vanishing of a nonzero homogeneous polynomial at a place.
pub fn place_valuation(q: &HomPoly, v: &Place) -> Result<usize> {
    if q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    match v {
        Place::Infinity => Ok(q.v_inf().unwrap()),
        Place::Finite(p) => {
            if v.is_zero_place() {
                Ok(q.v0().unwrap())
            } else {
                q.to_affine().valuation_at(p)
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Kodaira types
// ---------------------------------------------------------------------------

/// Reduction type of a fiber of an elliptic surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KodairaType {
    /// `I(0)` is a smooth fiber; `I(n)`, `n >= 1`, is multiplicative.
    I(u32),
    II,
    III,
    IV,
    /// `IStar(0)` is the type usually written I0*.
    IStar(u32),
    IVStar,
    IIIStar,
    IIStar,
}

impl KodairaType {
    /// Valuation of the minimal discriminant attached to the type.
    pub fn v_delta(&self) -> u32 {
        match self {
            KodairaType::I(n) => *n,
            KodairaType::II => 2,
            KodairaType::III => 3,
            KodairaType::IV => 4,
            KodairaType::IStar(n) => 6 + n,
            KodairaType::IVStar => 8,
            KodairaType::IIIStar => 9,
            KodairaType::IIStar => 10,
        }
    }

    /// Number of irreducible components of the fiber.
    pub fn components(&self) -> u32 {
        match self {
            KodairaType::I(0) => 1,
            KodairaType::I(n) => *n,
            KodairaType::II => 1,
            KodairaType::III => 2,
            KodairaType::IV => 3,
            KodairaType::IStar(n) => 5 + n,
            KodairaType::IVStar => 7,
            KodairaType::IIIStar => 8,
            KodairaType::IIStar => 9,
        }
    }

    /// True for additive reduction (anything except the multiplicative
    /// types `I(n)`, `n >= 1`; a smooth fiber is not additive either).
    pub fn is_additive(&self) -> bool {
        !matches!(self, KodairaType::I(_))
    }

    pub fn is_singular(&self) -> bool {
        self.v_delta() > 0
    }
}

impl fmt::Display for KodairaType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KodairaType::I(n) => write!(f, "I{n}"),
            KodairaType::II => write!(f, "II"),
            KodairaType::III => write!(f, "III"),
            KodairaType::IV => write!(f, "IV"),
            KodairaType::IStar(n) => write!(f, "I{n}*"),
            KodairaType::IVStar => write!(f, "IV*"),
            KodairaType::IIIStar => write!(f, "III*"),
            KodairaType::IIStar => write!(f, "II*"),
        }
    }
}

/// Fiber information at one place.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberData {
    pub place: Place,
    pub kodaira: KodairaType,
    pub v_delta: u32,
    pub components: u32,
}

/// All singular fibers of a globally minimal model, weighted by place
/// degree. `total_delta_degree` is `12 d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberConfiguration {
    pub fibers: Vec<FiberData>,
    pub total_delta_degree: usize,
}

impl FiberConfiguration {
    /// Degree-weighted multiset of singular fiber types, sorted with the
    /// deepest fiber first.
    pub fn geometric_types(&self) -> Vec<(KodairaType, usize)> {
        let mut counts: Vec<(KodairaType, usize)> = Vec::new();
        for fd in &self.fibers {
            let w = fd.place.degree();
            match counts.iter_mut().find(|(t, _)| *t == fd.kodaira) {
                Some((_, c)) => *c += w,
                None => counts.push((fd.kodaira, w)),
            }
        }
        counts.sort_by(|a, b| b.0.v_delta().cmp(&a.0.v_delta()).then(a.0.cmp(&b.0)));
        counts
    }

    /// Degree-weighted component excess `sum (m_v - 1)`, the rank of the
    /// trivial lattice minus 2.
    pub fn component_excess(&self) -> usize {
        self.fibers
            .iter()
            .map(|fd| fd.place.degree() * (fd.components as usize - 1))
            .sum()
    }

    /// Fiber at a given place, if singular there.
    pub fn at(&self, place: &Place) -> Option<&FiberData> {
        self.fibers.iter().find(|fd| &fd.place == place)
    }

    /// Type at a place, `I0` when smooth there.
    pub fn type_at(&self, place: &Place) -> KodairaType {
        self.at(place).map_or(KodairaType::I(0), |fd| fd.kodaira)
    }
}

// ---------------------------------------------------------------------------
// Weierstrass models
// ---------------------------------------------------------------------------

/// `y^2 = x^3 + f x + g` with homogeneous `f`, `g` of degrees `4d`, `6d`.
///
/// `d = 0` is tolerated for the trivial (constant, nonsingular) family so
/// that global minimization is total; every surface-level operation
/// reports such models as trivial rather than inventing fibers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeierstrassModel {
    f: HomPoly,
    g: HomPoly,
    d: usize,
    field: NumberField,
}

impl WeierstrassModel {
    /// Builds a model from homogeneous coefficients. Degrees must be
    /// `4d` and `6d` for a common `d`; the discriminant must not vanish
    /// identically.
    pub fn new(f: HomPoly, g: HomPoly) -> Result<Self> {
        let field = f.field().clone();
        if g.field() != &field {
            return Err(Error::FieldMismatch);
        }
        if f.degree() % 4 != 0 {
            return Err(Error::DegreeInconsistency(format!(
                "deg f = {} is not a multiple of 4",
                f.degree()
            )));
        }
        if g.degree() % 6 != 0 {
            return Err(Error::DegreeInconsistency(format!(
                "deg g = {} is not a multiple of 6",
                g.degree()
            )));
        }
        let df = f.degree() / 4;
        let dg = g.degree() / 6;
        let d = match (f.is_zero(), g.is_zero()) {
            (true, true) => {
                return Err(Error::DegreeInconsistency("f and g are both zero".into()))
            }
            (true, false) => dg,
            (false, true) => df,
            (false, false) => {
                if df != dg {
                    return Err(Error::DegreeInconsistency(format!(
                        "deg f = 4*{df} but deg g = 6*{dg}"
                    )));
                }
                df
            }
        };
        // Normalize formal degrees of zero coefficients.
        let f = if f.is_zero() { HomPoly::zero(field.clone(), 4 * d) } else { f };
        let g = if g.is_zero() { HomPoly::zero(field.clone(), 6 * d) } else { g };
        let m = WeierstrassModel { f, g, d, field };
        if m.discriminant_unchecked().is_zero() {
            return Err(Error::SingularModel);
        }
        Ok(m)
    }

    /// Builds a model from affine `f(t)`, `g(t)`, homogenized to the
    /// minimal consistent `d >= 1`.
    pub fn from_affine(f: &Poly, g: &Poly) -> Result<Self> {
        let need = |p: &Poly, per: usize| p.degree().map_or(0, |dg| dg.div_ceil(per));
        let d = need(f, 4).max(need(g, 6)).max(1);
        let fh = HomPoly::from_affine(f, 4 * d)?;
        let gh = HomPoly::from_affine(g, 6 * d)?;
        WeierstrassModel::new(fh, gh)
    }

    pub fn f(&self) -> &HomPoly {
        &self.f
    }

    pub fn g(&self) -> &HomPoly {
        &self.g
    }

    /// Degree of the fundamental line bundle this model carries.
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    /// True for the constant nonsingular family (`d = 0`).
    pub fn is_trivial_family(&self) -> bool {
        self.d == 0
    }

    /// Affine chart coefficients `(f(t), g(t))` with `t = t0/t1`.
    pub fn affine(&self) -> (Poly, Poly) {
        (self.f.to_affine(), self.g.to_affine())
    }

    fn discriminant_unchecked(&self) -> HomPoly {
        let f3 = self.f.pow(3).mul_rat(&Rat::from_integer(4.into()));
        let g2 = self.g.pow(2).mul_rat(&Rat::from_integer(27.into()));
        f3.add(&g2).mul_rat(&Rat::from_integer((-16).into()))
    }

    /// `Delta = -16 (4 f^3 + 27 g^2)`, homogeneous of degree `12 d`.
    pub fn discriminant(&self) -> HomPoly {
        let delta = self.discriminant_unchecked();
        debug_assert!(!delta.is_zero(), "constructor guarantees a nonzero discriminant");
        delta
    }

    /// Valuations `(v(f), v(g), v(Delta))` at a place; `None` means the
    /// coefficient is identically zero (infinite valuation).
    pub fn valuations_at(&self, v: &Place) -> Result<(Option<usize>, Option<usize>, usize)> {
        let vf = if self.f.is_zero() { None } else { Some(place_valuation(&self.f, v)?) };
        let vg = if self.g.is_zero() { None } else { Some(place_valuation(&self.g, v)?) };
        let vd = place_valuation(&self.discriminant(), v)?;
        Ok((vf, vg, vd))
    }

    /// True when `(x, y) -> (pi^2 x, pi^3 y)` cannot reduce the model at
    /// the place.
    pub fn is_minimal_at(&self, v: &Place) -> Result<bool> {
        let (vf, vg, _) = self.valuations_at(v)?;
        Ok(!(ge_opt(vf, 4) && ge_opt(vg, 6)))
    }

    /// Repeatedly divides `f` by `pi^4` and `g` by `pi^6` while possible.
    /// The fundamental degree drops accordingly; other places are
    /// untouched.
    pub fn minimize_at(&self, v: &Place) -> Result<Self> {
        let mut cur = self.clone();
        loop {
            let (vf, vg, _) = cur.valuations_at(v)?;
            if !(ge_opt(vf, 4) && ge_opt(vg, 6)) {
                return Ok(cur);
            }
            let e = v.degree();
            if cur.d < e {
                return Ok(cur); // cannot drop below the trivial family
            }
            let (f, g) = match v {
                Place::Infinity => (div_or_zero_t1(&cur.f, 4)?, div_or_zero_t1(&cur.g, 6)?),
                Place::Finite(p) => {
                    if v.is_zero_place() {
                        (div_or_zero_t0(&cur.f, 4)?, div_or_zero_t0(&cur.g, 6)?)
                    } else {
                        (div_or_zero_place(&cur.f, p, 4)?, div_or_zero_place(&cur.g, p, 6)?)
                    }
                }
            };
            cur = WeierstrassModel { f, g, d: cur.d - e, field: cur.field.clone() };
        }
    }

    /// Minimizes at every place. Candidates are the components where both
    /// `f` and `g` vanish, plus 0 and infinity.
    pub fn globally_minimize(&self) -> Result<Self> {
        let mut cur = self.clone();
        cur = cur.minimize_at(&Place::zero(&self.field))?;
        cur = cur.minimize_at(&Place::Infinity)?;
        for comp in cur.reduction_components()? {
            if comp.is_zero_place() {
                continue;
            }
            cur = cur.minimize_at(&comp)?;
        }
        Ok(cur)
    }

    /// True when no place admits a reduction step.
    pub fn is_globally_minimal(&self) -> Result<bool> {
        if !self.is_minimal_at(&Place::zero(&self.field))?
            || !self.is_minimal_at(&Place::Infinity)?
        {
            return Ok(false);
        }
        for comp in self.reduction_components()? {
            if !self.is_minimal_at(&comp)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Gcd-free components of the affine parts of `f` and `g` (not
    /// necessarily irreducible, but with uniform valuations of both `f`
    /// and `g` across each component's irreducible factors). These are
    /// the only finite places away from 0 where minimization could apply.
    fn reduction_components(&self) -> Result<Vec<Place>> {
        let mut squarefrees: Vec<Poly> = Vec::new();
        for h in [&self.f, &self.g] {
            if h.is_zero() {
                continue;
            }
            let aff = h.to_affine();
            if aff.degree().map_or(true, |dq| dq == 0) {
                continue;
            }
            for (part, _) in squarefree_decomposition(&aff)? {
                squarefrees.push(part);
            }
        }
        let basis = gcd_free_basis(&squarefrees)?;
        Ok(basis.into_iter().map(Place::Finite).collect())
    }

    /// Reduction type at one place of a model that is minimal there.
    pub fn kodaira_type_at(&self, v: &Place) -> Result<FiberData> {
        let (vf, vg, vd) = self.valuations_at(v)?;
        if ge_opt(vf, 4) && ge_opt(vg, 6) {
            return Err(Error::NonMinimalModel);
        }
        let kod = type_from_valuations(vf, vg, vd)?;
        Ok(FiberData {
            place: v.clone(),
            kodaira: kod,
            v_delta: kod.v_delta(),
            components: kod.components(),
        })
    }

    /// All singular fibers of a globally minimal model.
    ///
    /// Over the rationals, the discriminant is split into irreducible
    /// factors; over a proper extension, into gcd-free components with
    /// uniform valuations (see the module doc).
    pub fn fiber_configuration(&self) -> Result<FiberConfiguration> {
        if !self.is_globally_minimal()? {
            return Err(Error::NonMinimalModel);
        }
        let mut fibers: Vec<FiberData> = Vec::new();
        if self.is_trivial_family() {
            return Ok(FiberConfiguration { fibers, total_delta_degree: 0 });
        }
        let delta = self.discriminant();
        let zero = Place::zero(&self.field);
        if delta.v0().unwrap() > 0 {
            fibers.push(self.kodaira_type_at(&zero)?);
        }
        if delta.v_inf().unwrap() > 0 {
            fibers.push(self.kodaira_type_at(&Place::Infinity)?);
        }

        // Finite places away from 0: strip t-powers and decompose.
        let aff = delta.to_affine();
        let t = Poly::variable(self.field.clone());
        let v0 = aff.valuation_at(&t)?;
        let mut rest = aff;
        for _ in 0..v0 {
            rest = rest.exact_div(&t)?;
        }
        if rest.degree().map_or(false, |dq| dq > 0) {
            let mut components: Vec<Poly> = Vec::new();
            if self.field.is_rationals() {
                for (irr, _) in factor_rational(&rest)? {
                    components.push(irr);
                }
            } else {
                // Refine the squarefree parts against f and g so each
                // component has uniform valuations.
                let mut parts: Vec<Poly> = squarefree_decomposition(&rest)?
                    .into_iter()
                    .map(|(p, _)| p)
                    .collect();
                for h in [&self.f, &self.g] {
                    if h.is_zero() {
                        continue;
                    }
                    for (p, _) in squarefree_decomposition(&h.to_affine())? {
                        parts.push(p);
                    }
                }
                let basis = gcd_free_basis(&parts)?;
                for b in basis {
                    if rest.valuation_at(&b)? > 0 {
                        components.push(b);
                    }
                }
            }
            components.sort_by_key(|p| (p.degree(), p.to_string_with("t")));
            for comp in components {
                let place = Place::Finite(comp);
                fibers.push(self.kodaira_type_at(&place)?);
            }
        }

        let total: usize = fibers.iter().map(|fd| fd.place.degree() * fd.v_delta as usize).sum();
        if total != 12 * self.d {
            return Err(Error::DegreeInconsistency(format!(
                "fiber degrees sum to {total}, expected {}",
                12 * self.d
            )));
        }
        Ok(FiberConfiguration { fibers, total_delta_degree: 12 * self.d })
    }

    /// Degree of the fundamental line bundle, `deg(Delta_min) / 12`.
    /// Errors on non-minimal input; 0 flags the trivial family.
    pub fn fundamental_degree(&self) -> Result<usize> {
        if !self.is_globally_minimal()? {
            return Err(Error::NonIntegralFundamentalDegree(12 * self.d));
        }
        Ok(self.d)
    }

    /// Applies the coordinate change `(t0, t1) -> M (t0, t1)` given by an
    /// invertible 2x2 matrix over the coefficient field.
    pub fn linear_change(&self, m: &[[NFElement; 2]; 2]) -> Result<Self> {
        let det = m[0][0].mul(&m[1][1]).sub(&m[0][1].mul(&m[1][0]));
        if det.is_zero() {
            return Err(Error::DegreeInconsistency("coordinate change is singular".into()));
        }
        let f = self.f.linear_subst(&m[0][0], &m[0][1], &m[1][0], &m[1][1]);
        let g = self.g.linear_subst(&m[0][0], &m[0][1], &m[1][0], &m[1][1]);
        WeierstrassModel::new(f, g)
    }

    /// Moves two distinct rational places to 0 and infinity: after the
    /// change, the place 0 maps to `to_zero` and infinity to `to_inf`.
    pub fn move_places_to_standard(&self, to_zero: &Place, to_inf: &Place) -> Result<Self> {
        let col = |p: &Place| -> Result<(NFElement, NFElement)> {
            match p {
                Place::Infinity => Ok((self.field.one(), self.field.zero())),
                Place::Finite(q) => {
                    if q.degree() != Some(1) {
                        return Err(Error::DegreeInconsistency(
                            "only rational places can be moved".into(),
                        ));
                    }
                    Ok((q.coeff(0).neg(), self.field.one()))
                }
            }
        };
        let (a0, a1) = col(to_zero)?;
        let (b0, b1) = col(to_inf)?;
        // Columns: (1,0) maps to the infinity target, (0,1) to the zero
        // target.
        let m = [[b0, a0], [b1, a1]];
        self.linear_change(&m)
    }
}

fn ge_opt(v: Option<usize>, bound: usize) -> bool {
    v.map_or(true, |x| x >= bound)
}

fn div_or_zero_t0(h: &HomPoly, k: usize) -> Result<HomPoly> {
    if h.is_zero() {
        Ok(HomPoly::zero(h.field().clone(), h.degree() - k))
    } else {
        h.div_t0(k)
    }
}

fn div_or_zero_t1(h: &HomPoly, k: usize) -> Result<HomPoly> {
    if h.is_zero() {
        Ok(HomPoly::zero(h.field().clone(), h.degree() - k))
    } else {
        h.div_t1(k)
    }
}

fn div_or_zero_place(h: &HomPoly, p: &Poly, k: usize) -> Result<HomPoly> {
    let e = p.degree().unwrap();
    let new_degree = h.degree() - k * e;
    if h.is_zero() {
        return Ok(HomPoly::zero(h.field().clone(), new_degree));
    }
    let mut aff = h.to_affine();
    for _ in 0..k {
        aff = aff.exact_div(p)?;
    }
    HomPoly::from_affine(&aff, new_degree)
}

/// The valuation table for short Weierstrass models in characteristic
/// zero, on a model minimal at the place.
fn type_from_valuations(vf: Option<usize>, vg: Option<usize>, vd: usize) -> Result<KodairaType> {
    let miss = || Error::TypingTableMiss {
        f: opt_str(vf),
        g: opt_str(vg),
        delta: vd.to_string(),
    };
    if vd == 0 {
        return Ok(KodairaType::I(0));
    }
    if vf == Some(0) {
        return Ok(KodairaType::I(vd as u32));
    }
    if vf == Some(2) && vg == Some(3) && vd >= 7 {
        return Ok(KodairaType::IStar(vd as u32 - 6));
    }
    match vd {
        2 => Ok(KodairaType::II),
        3 if vf == Some(1) => Ok(KodairaType::III),
        4 if vg == Some(2) => Ok(KodairaType::IV),
        6 if ge_opt(vf, 2) && ge_opt(vg, 3) => Ok(KodairaType::IStar(0)),
        8 if vg == Some(4) => Ok(KodairaType::IVStar),
        9 if vf == Some(3) => Ok(KodairaType::IIIStar),
        10 if ge_opt(vf, 4) => Ok(KodairaType::IIStar),
        _ => Err(miss()),
    }
}

fn opt_str(v: Option<usize>) -> String {
    v.map_or_else(|| "inf".to_string(), |x| x.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> NumberField {
        NumberField::rationals()
    }

    /// y^2 = x^3 - t0^3 t1 x + t0^4 t1^2
    fn model_34() -> WeierstrassModel {
        let f = HomPoly::monomial(q(), 4, 3, q().from_int(-1));
        let g = HomPoly::monomial(q(), 6, 4, q().from_int(1));
        WeierstrassModel::new(f, g).unwrap()
    }

    /// y^2 = x^3 - t0 t1^3 x + t0 t1^5
    fn model_7() -> WeierstrassModel {
        let f = HomPoly::monomial(q(), 4, 1, q().from_int(-1));
        let g = HomPoly::monomial(q(), 6, 1, q().from_int(1));
        WeierstrassModel::new(f, g).unwrap()
    }

    #[test]
    fn discriminant_of_model_34() {
        // Delta = -16 t0^8 t1^3 (-4 t0 + 27 t1): v0 = 8, v_inf = 3, one
        // extra linear factor.
        let m = model_34();
        let delta = m.discriminant();
        assert_eq!(delta.degree(), 12);
        assert_eq!(delta.v0(), Some(8));
        assert_eq!(delta.v_inf(), Some(3));
        assert_eq!(place_valuation(&delta, &Place::zero(&q())).unwrap(), 8);
        assert_eq!(place_valuation(&delta, &Place::Infinity).unwrap(), 3);
    }

    #[test]
    fn discriminant_constant_model() {
        // f = 0, g = 1: Delta = -432 (degree 0 family flagged trivial).
        let f = HomPoly::zero(q(), 0);
        let g = HomPoly::new(q(), 0, vec![q().from_int(1)]);
        let m = WeierstrassModel::new(f, g).unwrap();
        assert!(m.is_trivial_family());
        let delta = m.discriminant();
        assert_eq!(delta.coeff(0).as_rat().unwrap(), crate::algebra::nf::rat_int(-432));
    }

    #[test]
    fn singular_family_rejected() {
        // f = -3, g = 2: 4*(-27) + 27*4 = 0.
        let f = HomPoly::new(q(), 0, vec![q().from_int(-3)]);
        let g = HomPoly::new(q(), 0, vec![q().from_int(2)]);
        assert!(matches!(WeierstrassModel::new(f, g), Err(Error::SingularModel)));
    }

    #[test]
    fn kodaira_types_of_model_34() {
        let m = model_34();
        let at0 = m.kodaira_type_at(&Place::zero(&q())).unwrap();
        assert_eq!(at0.kodaira, KodairaType::IVStar);
        let atinf = m.kodaira_type_at(&Place::Infinity).unwrap();
        assert_eq!(atinf.kodaira, KodairaType::III);
    }

    #[test]
    fn kodaira_type_iv_affine_example() {
        // y^2 = x^3 - t^3 x + t^2 at t = 0: (v(f), v(g), v(D)) = (3, 2, 4) -> IV.
        let f = Poly::from_ints(&q(), &[0, 0, 0, -1]);
        let g = Poly::from_ints(&q(), &[0, 0, 1]);
        let m = WeierstrassModel::from_affine(&f, &g).unwrap();
        let fd = m.kodaira_type_at(&Place::zero(&q())).unwrap();
        assert_eq!(fd.kodaira, KodairaType::IV);
        assert_eq!(fd.v_delta, 4);
        assert_eq!(fd.components, 3);
    }

    #[test]
    fn minimize_pullback_of_model_34() {
        // Pull back by p = 5 (exponents scale), then minimize back down to
        // y^2 = x^3 - t0^3 t1 x + t0^2 t1^4.
        let m = model_34();
        let f5 = m.f().subst_power(5);
        let g5 = m.g().subst_power(5);
        let big = WeierstrassModel::new(f5, g5).unwrap();
        assert_eq!(big.d(), 5);
        let min = big.globally_minimize().unwrap();
        assert_eq!(min.d(), 1);
        let expect_f = HomPoly::monomial(q(), 4, 3, q().from_int(-1));
        let expect_g = HomPoly::monomial(q(), 6, 2, q().from_int(1));
        assert_eq!(min.f(), &expect_f);
        assert_eq!(min.g(), &expect_g);
    }

    #[test]
    fn minimize_is_idempotent() {
        let m = model_34();
        let min = m.globally_minimize().unwrap();
        assert_eq!(min, m);
    }

    #[test]
    fn minimize_g_only() {
        // f = 0, v0(g) = 13 -> v0(g) = 1 after two steps.
        let f = HomPoly::zero(q(), 4 * 3);
        let g = HomPoly::monomial(q(), 18, 13, q().from_int(1));
        let m = WeierstrassModel::new(f, g).unwrap();
        let min = m.minimize_at(&Place::zero(&q())).unwrap();
        assert_eq!(min.g().v0(), Some(1));
        assert_eq!(min.d(), 1);
    }

    #[test]
    fn configuration_of_model_34() {
        let cfg = model_34().fiber_configuration().unwrap();
        let types = cfg.geometric_types();
        assert_eq!(
            types,
            vec![(KodairaType::IVStar, 1), (KodairaType::III, 1), (KodairaType::I(1), 1)]
        );
        assert_eq!(cfg.total_delta_degree, 12);
    }

    #[test]
    fn configuration_of_model_7() {
        let cfg = model_7().fiber_configuration().unwrap();
        let types = cfg.geometric_types();
        assert_eq!(
            types,
            vec![(KodairaType::IIIStar, 1), (KodairaType::II, 1), (KodairaType::I(1), 1)]
        );
    }

    #[test]
    fn configuration_after_p7_minimization() {
        // y^2 = x^3 - t0^3 t1 x + t0 t1^5 has Delta = -16 t0^2 t1^3
        // (-4 t0^7 + 27 t1^7): II over 0, III over infinity, and a single
        // degree-7 place carrying seven geometric I1 fibers.
        let f = HomPoly::monomial(q(), 4, 3, q().from_int(-1));
        let g = HomPoly::monomial(q(), 6, 1, q().from_int(1));
        let m = WeierstrassModel::new(f, g).unwrap();
        let cfg = m.fiber_configuration().unwrap();
        let types = cfg.geometric_types();
        assert_eq!(
            types,
            vec![(KodairaType::III, 1), (KodairaType::II, 1), (KodairaType::I(1), 7)]
        );
        let i1 = cfg.fibers.iter().find(|fd| fd.kodaira == KodairaType::I(1)).unwrap();
        assert_eq!(i1.place.degree(), 7);
    }

    #[test]
    fn fundamental_degree_rational_and_k3() {
        assert_eq!(model_34().fundamental_degree().unwrap(), 1);
        // K3 with II* at both 0 and infinity plus four I1:
        // f = t0^4 t1^4, g = t0^5 t1^5 (t0^2 + t1^2).
        let f = HomPoly::monomial(q(), 8, 4, q().from_int(1));
        let mut gc = vec![q().zero(); 13];
        gc[7] = q().from_int(1); // t0^7 t1^5
        gc[5] = q().from_int(1); // t0^5 t1^7
        let g = HomPoly::new(q(), 12, gc);
        let m = WeierstrassModel::new(f, g).unwrap();
        assert_eq!(m.fundamental_degree().unwrap(), 2);
        let cfg = m.fiber_configuration().unwrap();
        let types = cfg.geometric_types();
        assert_eq!(types[0], (KodairaType::IIStar, 2));
        assert_eq!(types[1], (KodairaType::I(1), 4));
    }

    #[test]
    fn nonminimal_reported() {
        let m = model_34();
        let big = WeierstrassModel::new(m.f().subst_power(5), m.g().subst_power(5)).unwrap();
        assert!(matches!(big.fiber_configuration(), Err(Error::NonMinimalModel)));
        assert!(matches!(
            big.kodaira_type_at(&Place::zero(&q())),
            Err(Error::NonMinimalModel)
        ));
    }

    #[test]
    fn moebius_moves_places() {
        // II* + II with fibers at t = 1 and t = -1; move them to 0, inf.
        let f = HomPoly::zero(q(), 4);
        // g = (t0 - t1)^5 (t0 + t1): II* at t=1, II at t=-1.
        let a = HomPoly::new(q(), 1, vec![q().from_int(-1), q().from_int(1)]);
        let b = HomPoly::new(q(), 1, vec![q().from_int(1), q().from_int(1)]);
        let g = a.pow(5).mul(&b);
        let m = WeierstrassModel::new(f, g).unwrap();
        let one = Place::at(q().from_int(1));
        let minus_one = Place::at(q().from_int(-1));
        let moved = m.move_places_to_standard(&one, &minus_one).unwrap();
        let cfg = moved.fiber_configuration().unwrap();
        assert_eq!(cfg.type_at(&Place::zero(&q())), KodairaType::IIStar);
        assert_eq!(cfg.type_at(&Place::Infinity), KodairaType::II);
    }
}
