//! Polynomial factorization support.
//!
//! Three layers, used by the fiber machinery:
//!
//! - Yun's squarefree decomposition, valid over any characteristic-zero
//!   coefficient field in the tower hierarchy.
//! - A gcd-free basis refinement: given several polynomials, produce
//!   pairwise coprime monic components so that each input is a constant
//!   times a product of powers of components. On each component, the
//!   valuation of every input is constant across its irreducible factors,
//!   which is exactly what reduction typing needs.
//! - Full irreducible factorization over the rationals (squarefree part
//!   via Berlekamp mod p, Hensel lifting, and factor recombination).
//!   Over proper extension fields the crate stops at the gcd-free basis;
//!   irreducibility there is a caller contract, consistent with how
//!   places are handled everywhere else.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::nf::Rat;
use super::poly::Poly;
use crate::Result;

/// Yun's squarefree decomposition. Returns monic squarefree factors with
/// their multiplicities; the product of `factor^mult` equals the input up
/// to a constant. The zero polynomial is rejected by `valuation` callers
/// before reaching here; constants yield an empty list.
pub fn squarefree_decomposition(f: &Poly) -> Result<Vec<(Poly, usize)>> {
    let mut out = Vec::new();
    if f.degree().map_or(true, |d| d == 0) {
        return Ok(out);
    }
    let f = f.monic()?;
    let df = f.derivative();
    let a = f.gcd(&df)?;
    let mut b = f.exact_div(&a)?;
    let mut c = df.exact_div(&a)?;
    let mut i = 1usize;
    loop {
        let d = c.sub(&b.derivative());
        if b.degree() == Some(0) {
            break;
        }
        let p = b.gcd(&d)?;
        if p.degree().map_or(false, |dg| dg > 0) {
            out.push((p.clone(), i));
        }
        b = b.exact_div(&p)?;
        c = d.exact_div(&p)?;
        i += 1;
    }
    Ok(out)
}

/// Refines monic polynomials into a pairwise-coprime monic basis. Inputs
/// must be squarefree for the basis to be squarefree; constants are
/// dropped.
pub fn gcd_free_basis(polys: &[Poly]) -> Result<Vec<Poly>> {
    let mut basis: Vec<Poly> = Vec::new();
    for p in polys {
        if p.degree().map_or(true, |d| d == 0) {
            continue;
        }
        let mut queue = vec![p.monic()?];
        while let Some(mut cur) = queue.pop() {
            if cur.degree().map_or(true, |d| d == 0) {
                continue;
            }
            let mut absorbed = false;
            for i in 0..basis.len() {
                let g = basis[i].gcd(&cur)?;
                if g.degree().map_or(true, |d| d == 0) {
                    continue;
                }
                // Split basis[i] and cur by their common part.
                let bi = basis[i].exact_div(&g)?;
                let rest = cur.exact_div(&g)?;
                basis.remove(i);
                for piece in [g, bi] {
                    if piece.degree().map_or(false, |d| d > 0) {
                        queue.push(piece);
                    }
                }
                if rest.degree().map_or(false, |d| d > 0) {
                    queue.push(rest);
                }
                absorbed = true;
                break;
            }
            if !absorbed {
                // Fully coprime to the current basis; also dedup.
                if !basis.iter().any(|b| b == &cur) {
                    basis.push(std::mem::replace(&mut cur, Poly::one(p.field().clone())));
                }
            }
        }
    }
    Ok(basis)
}

/// Irreducible factorization over the rationals: monic irreducible factors
/// with multiplicities. Panics if the coefficient field is not the
/// rationals (callers dispatch on `field.is_rationals()`).
pub fn factor_rational(f: &Poly) -> Result<Vec<(Poly, usize)>> {
    assert!(f.field().is_rationals(), "factor_rational needs rational coefficients");
    let mut out = Vec::new();
    for (sf, mult) in squarefree_decomposition(f)? {
        for irr in split_squarefree_rational(&sf)? {
            out.push((irr, mult));
        }
    }
    Ok(out)
}

/// Splits a monic squarefree rational polynomial into monic irreducible
/// factors.
fn split_squarefree_rational(f: &Poly) -> Result<Vec<Poly>> {
    let n = f.degree().unwrap_or(0);
    if n <= 1 {
        return Ok(if n == 1 { vec![f.clone()] } else { Vec::new() });
    }
    // Clear denominators to a primitive integer polynomial.
    let zf = to_primitive_int(f);
    // Monicize: F1(y) = lc^{n-1} F(y/lc).
    let lc = zf.last().unwrap().clone();
    let f1 = monicize(&zf);
    let factors1 = factor_monic_squarefree_int(&f1);
    // Map back: each factor h(y) of F1 corresponds to pp(h(lc x)).
    let field = f.field().clone();
    let mut out: Vec<Poly> = factors1
        .iter()
        .map(|h| {
            let hx = substitute_scale(h, &lc);
            let hx = primitive_part(&hx);
            int_poly_to_rational(&hx, &field).monic().expect("nonzero factor")
        })
        .collect();
    out.sort_by_key(|p| p.degree());
    Ok(out)
}

// --- integer polynomial helpers (dense, low-first, trailing nonzero) ---

fn to_primitive_int(f: &Poly) -> Vec<BigInt> {
    let mut den = BigInt::one();
    for c in f.coeffs() {
        let q: Rat = c.as_rat().expect("rational coefficient");
        den = den.lcm(q.denom());
    }
    let mut out: Vec<BigInt> = f
        .coeffs()
        .iter()
        .map(|c| {
            let q = c.as_rat().unwrap();
            q.numer() * (&den / q.denom())
        })
        .collect();
    let mut content = BigInt::zero();
    for c in &out {
        content = content.gcd(c);
    }
    if !content.is_zero() && !content.is_one() {
        for c in &mut out {
            *c /= &content;
        }
    }
    out
}

fn monicize(f: &[BigInt]) -> Vec<BigInt> {
    let n = f.len() - 1;
    let lc = &f[n];
    let mut out = Vec::with_capacity(f.len());
    for (i, a) in f.iter().enumerate() {
        // coefficient of y^i in lc^{n-1} f(y/lc) is a_i lc^{n-1-i}
        let e = (n - 1).saturating_sub(i);
        let mut v = a.clone();
        if i < n {
            v *= lc.pow(e as u32);
        } else {
            v = BigInt::one();
        }
        out.push(v);
    }
    out
}

fn substitute_scale(h: &[BigInt], lc: &BigInt) -> Vec<BigInt> {
    // h(lc * x)
    let mut out = Vec::with_capacity(h.len());
    let mut pw = BigInt::one();
    for c in h {
        out.push(c * &pw);
        pw *= lc;
    }
    out
}

fn primitive_part(h: &[BigInt]) -> Vec<BigInt> {
    let mut content = BigInt::zero();
    for c in h {
        content = content.gcd(c);
    }
    if content.is_zero() || content.is_one() {
        return h.to_vec();
    }
    h.iter().map(|c| c / &content).collect()
}

fn int_poly_to_rational(h: &[BigInt], field: &super::nf::NumberField) -> Poly {
    let coeffs: Vec<Rat> = h.iter().map(|c| Rat::from_integer(c.clone())).collect();
    Poly::from_rats(field, &coeffs)
}

fn int_poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            let prod = x * y;
            out[i + j] += prod;
        }
    }
    out
}

/// Exact division in Z[x]; returns None if not exact.
fn int_poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Option<Vec<BigInt>> {
    if den.is_empty() {
        return None;
    }
    let dl = den.last().unwrap();
    let mut rem = num.to_vec();
    trim_int(&mut rem);
    let dd = den.len() - 1;
    if rem.len() < den.len() {
        return if rem.is_empty() { Some(Vec::new()) } else { None };
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    while rem.len() > dd {
        let k = rem.len() - 1 - dd;
        let (q, r) = rem.last().unwrap().div_rem(dl);
        if !r.is_zero() {
            return None;
        }
        for (j, d) in den.iter().enumerate() {
            let t = &q * d;
            rem[k + j] -= t;
        }
        quot[k] = q;
        trim_int(&mut rem);
    }
    if rem.is_empty() {
        Some(quot)
    } else {
        None
    }
}

fn trim_int(v: &mut Vec<BigInt>) {
    while v.last().map_or(false, Zero::is_zero) {
        v.pop();
    }
}

// --- arithmetic mod a small prime -------------------------------------------

type FpPoly = Vec<u64>;

fn fp_trim(v: &mut FpPoly) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn fp_from_int(f: &[BigInt], p: u64) -> FpPoly {
    let pb = BigInt::from(p);
    let mut out: FpPoly = f
        .iter()
        .map(|c| {
            let r = c.mod_floor(&pb);
            r.to_u64().unwrap()
        })
        .collect();
    fp_trim(&mut out);
    out
}

fn fp_mul(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    fp_trim(&mut out);
    out
}

fn fp_rem(a: &[u64], m: &[u64], p: u64) -> FpPoly {
    let mut rem = a.to_vec();
    fp_trim(&mut rem);
    let md = m.len() - 1;
    let mlead_inv = fp_inv(m[md], p);
    while rem.len() > md {
        let k = rem.len() - 1 - md;
        let c = rem[rem.len() - 1] * mlead_inv % p;
        if c != 0 {
            for (j, &mc) in m.iter().enumerate() {
                let sub = c * mc % p;
                rem[k + j] = (rem[k + j] + p - sub) % p;
            }
        }
        rem.pop();
        fp_trim(&mut rem);
    }
    rem
}

fn fp_inv(a: u64, p: u64) -> u64 {
    fp_pow(a % p, p - 2, p)
}

fn fp_pow(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

fn fp_monic(a: &[u64], p: u64) -> FpPoly {
    let mut out = a.to_vec();
    fp_trim(&mut out);
    if out.is_empty() {
        return out;
    }
    let inv = fp_inv(*out.last().unwrap(), p);
    for c in &mut out {
        *c = *c * inv % p;
    }
    out
}

fn fp_gcd(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    fp_trim(&mut x);
    fp_trim(&mut y);
    while !y.is_empty() {
        let r = fp_rem(&x, &y, p);
        x = y;
        y = r;
    }
    fp_monic(&x, p)
}

fn fp_derivative(a: &[u64], p: u64) -> FpPoly {
    if a.len() <= 1 {
        return Vec::new();
    }
    let mut out: FpPoly = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| (i as u64 % p) * c % p)
        .collect();
    fp_trim(&mut out);
    out
}

/// Extended gcd mod p: returns (g, s, t) monic with s*a + t*b = g.
fn fp_xgcd(a: &[u64], b: &[u64], p: u64) -> (FpPoly, FpPoly, FpPoly) {
    let mut r0 = a.to_vec();
    let mut r1 = b.to_vec();
    fp_trim(&mut r0);
    fp_trim(&mut r1);
    let mut s0: FpPoly = vec![1];
    let mut s1: FpPoly = vec![];
    let mut t0: FpPoly = vec![];
    let mut t1: FpPoly = vec![1];
    while !r1.is_empty() {
        let (q, r) = fp_divrem(&r0, &r1, p);
        let snew = fp_sub(&s0, &fp_mul(&q, &s1, p), p);
        let tnew = fp_sub(&t0, &fp_mul(&q, &t1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = snew;
        t0 = t1;
        t1 = tnew;
    }
    // normalize gcd monic
    if r0.is_empty() {
        return (r0, s0, t0);
    }
    let inv = fp_inv(*r0.last().unwrap(), p);
    let scale = |v: &[u64]| -> FpPoly {
        let mut o: FpPoly = v.iter().map(|&c| c * inv % p).collect();
        fp_trim(&mut o);
        o
    };
    (scale(&r0), scale(&s0), scale(&t0))
}

fn fp_divrem(a: &[u64], b: &[u64], p: u64) -> (FpPoly, FpPoly) {
    let mut rem = a.to_vec();
    fp_trim(&mut rem);
    let bd = b.len() - 1;
    let binv = fp_inv(b[bd], p);
    let mut quot = vec![0u64; rem.len().saturating_sub(bd)];
    while rem.len() > bd {
        let k = rem.len() - 1 - bd;
        let c = rem[rem.len() - 1] * binv % p;
        if c != 0 {
            for (j, &bc) in b.iter().enumerate() {
                let sub = c * bc % p;
                rem[k + j] = (rem[k + j] + p - sub) % p;
            }
            quot[k] = c;
        }
        rem.pop();
        fp_trim(&mut rem);
    }
    (quot, rem)
}

fn fp_sub(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for i in 0..n {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        out[i] = (x + p - y) % p;
    }
    fp_trim(&mut out);
    out
}

/// Berlekamp factorization of a monic squarefree polynomial mod p.
fn berlekamp(f: &[u64], p: u64) -> Vec<FpPoly> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.to_vec()];
    }
    // Rows of M: coefficients of x^{ip} mod f.
    let xp = {
        // x^p mod f by square-and-multiply on exponent bits
        let mut acc: FpPoly = vec![1];
        let mut base: FpPoly = vec![0, 1];
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                acc = fp_rem(&fp_mul(&acc, &base, p), f, p);
            }
            base = fp_rem(&fp_mul(&base, &base, p), f, p);
            e >>= 1;
        }
        acc
    };
    let mut rows: Vec<Vec<u64>> = Vec::with_capacity(n);
    let mut cur: FpPoly = vec![1];
    for _ in 0..n {
        let mut row = cur.clone();
        row.resize(n, 0);
        rows.push(row);
        cur = fp_rem(&fp_mul(&cur, &xp, p), f, p);
    }
    // Null space of (M - I) for row vectors v: v (M - I) = 0.
    // Transpose into a standard column null-space problem.
    let mut a = vec![vec![0u64; n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut val = rows[i][j] % p;
            if i == j {
                val = (val + p - 1) % p;
            }
            a[j][i] = val; // transpose
        }
    }
    let null = fp_nullspace(&mut a, n, p);
    let r = null.len();
    let mut factors: Vec<FpPoly> = vec![fp_monic(f, p)];
    'vectors: for v in &null {
        if factors.len() >= r {
            break;
        }
        let mut vpoly: FpPoly = v.clone();
        fp_trim(&mut vpoly);
        if vpoly.len() <= 1 {
            continue; // constant vector never splits
        }
        for c in 0..p {
            if factors.len() >= r {
                break 'vectors;
            }
            let shifted = fp_sub(&vpoly, &[c], p);
            let mut next: Vec<FpPoly> = Vec::new();
            for u in factors.drain(..) {
                if u.len() <= 2 {
                    next.push(u);
                    continue;
                }
                let g = fp_gcd(&u, &shifted, p);
                if g.len() > 1 && g.len() < u.len() {
                    let (q, _) = fp_divrem(&u, &g, p);
                    next.push(g);
                    next.push(fp_monic(&q, p));
                } else {
                    next.push(u);
                }
            }
            factors = next;
        }
    }
    factors.sort();
    factors
}

/// Column null space basis mod p of an n x n matrix (consumed).
fn fp_nullspace(a: &mut [Vec<u64>], n: usize, p: u64) -> Vec<Vec<u64>> {
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; n];
    let mut row = 0;
    for col in 0..n {
        let pivot = (row..n).find(|&i| a[i][col] != 0);
        let Some(pr) = pivot else { continue };
        a.swap(row, pr);
        let inv = fp_inv(a[row][col], p);
        for j in 0..n {
            a[row][j] = a[row][j] * inv % p;
        }
        for i in 0..n {
            if i != row && a[i][col] != 0 {
                let factor = a[i][col];
                for j in 0..n {
                    let t = factor * a[row][j] % p;
                    a[i][j] = (a[i][j] + p - t) % p;
                }
            }
        }
        pivot_of_col[col] = Some(row);
        row += 1;
        if row == n {
            break;
        }
    }
    let mut basis = Vec::new();
    for col in 0..n {
        if pivot_of_col[col].is_some() {
            continue;
        }
        let mut v = vec![0u64; n];
        v[col] = 1;
        for c2 in 0..n {
            if let Some(r2) = pivot_of_col[c2] {
                // x_{c2} = -a[r2][col]
                v[c2] = (p - a[r2][col] % p) % p;
            }
        }
        basis.push(v);
    }
    basis
}

// --- Hensel lifting ----------------------------------------------------------

/// Symmetric representative in (-m/2, m/2].
fn symmetric(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r * BigInt::from(2) > *m {
        r - m
    } else {
        r
    }
}

fn int_poly_mod(f: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let mut out: Vec<BigInt> = f.iter().map(|c| c.mod_floor(m)).collect();
    trim_int(&mut out);
    out
}

/// One linear Hensel step: from f = g h (mod m) to (mod m p), with
/// s g + t h = 1 (mod p), g and h monic.
fn hensel_step(
    f: &[BigInt],
    g: &[BigInt],
    h: &[BigInt],
    s: &[u64],
    t: &[u64],
    p: u64,
    m: &BigInt,
) -> (Vec<BigInt>, Vec<BigInt>) {
    // d = (f - g h) / m  (exact), reduced mod p. g and h stay monic with
    // deg g + deg h = deg f, so the product never outgrows f.
    let gh = int_poly_mul(g, h);
    let mut diff: Vec<BigInt> = f
        .iter()
        .enumerate()
        .map(|(i, c)| c - gh.get(i).cloned().unwrap_or_else(BigInt::zero))
        .collect();
    trim_int(&mut diff);
    let d: Vec<BigInt> = diff.iter().map(|c| c / m).collect();
    let d_p = fp_from_int(&d, p);
    let g_p = fp_from_int(g, p);
    let h_p = fp_from_int(h, p);

    // u = t d rem g ; w = s d + (t d div g) h  (all mod p)
    let td = fp_mul(t, &d_p, p);
    let (q, u) = fp_divrem(&td, &g_p, p);
    let w = {
        let sd = fp_mul(s, &d_p, p);
        let qh = fp_mul(&q, &h_p, p);
        let mut sum = vec![0u64; sd.len().max(qh.len())];
        for i in 0..sum.len() {
            let x = sd.get(i).copied().unwrap_or(0);
            let y = qh.get(i).copied().unwrap_or(0);
            sum[i] = (x + y) % p;
        }
        fp_trim(&mut sum);
        sum
    };

    let lift = |base: &[BigInt], corr: &[u64]| -> Vec<BigInt> {
        let mut out = base.to_vec();
        for (i, &c) in corr.iter().enumerate() {
            if out.len() <= i {
                out.resize(i + 1, BigInt::zero());
            }
            out[i] += m * BigInt::from(c);
        }
        trim_int(&mut out);
        out
    };
    (lift(g, &u), lift(h, &w))
}

/// Lifts the full factor list of a monic squarefree integer polynomial
/// from mod p to mod p^k.
fn hensel_lift_list(f: &[BigInt], factors_p: &[FpPoly], p: u64, k: u32) -> Vec<Vec<BigInt>> {
    if factors_p.len() == 1 {
        let m = BigInt::from(p).pow(k);
        return vec![int_poly_mod(f, &m)];
    }
    let half = factors_p.len() / 2;
    let (left, right) = factors_p.split_at(half);
    let g0: FpPoly = left.iter().fold(vec![1u64], |acc, x| fp_mul(&acc, x, p));
    let h0: FpPoly = right.iter().fold(vec![1u64], |acc, x| fp_mul(&acc, x, p));
    let (gg, ss, tt) = fp_xgcd(&g0, &h0, p);
    assert_eq!(gg, vec![1u64], "modular factors not coprime");

    let mut g: Vec<BigInt> = g0.iter().map(|&c| BigInt::from(c)).collect();
    let mut h: Vec<BigInt> = h0.iter().map(|&c| BigInt::from(c)).collect();
    let mut m = BigInt::from(p);
    let target = BigInt::from(p).pow(k);
    while m < target {
        let (g2, h2) = hensel_step(f, &g, &h, &ss, &tt, p, &m);
        g = g2;
        h = h2;
        m *= BigInt::from(p);
    }
    // recurse; g and h are monic mod p^k with f = g h (mod p^k)
    let mut out = hensel_lift_list(&g, left, p, k);
    out.extend(hensel_lift_list(&h, right, p, k));
    out
}

// --- Zassenhaus driver --------------------------------------------------------

const FACTOR_PRIMES: [u64; 30] = [
    101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191, 193,
    197, 199, 211, 223, 227, 229, 233, 239, 241, 251, 257,
];

/// Factors a monic squarefree integer polynomial into monic irreducible
/// integer factors.
fn factor_monic_squarefree_int(f: &[BigInt]) -> Vec<Vec<BigInt>> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.to_vec()];
    }

    // Select a prime with squarefree reduction and as few modular factors
    // as possible among a handful of candidates.
    let mut best: Option<(u64, Vec<FpPoly>)> = None;
    let mut tried = 0;
    for &p in FACTOR_PRIMES.iter() {
        let fp = fp_from_int(f, p);
        if fp.len() != f.len() {
            continue; // lc divisible by p (impossible for monic, but keep the guard)
        }
        let d = fp_derivative(&fp, p);
        if d.is_empty() {
            continue;
        }
        let g = fp_gcd(&fp, &d, p);
        if g.len() != 1 {
            continue; // not squarefree mod p
        }
        let factors = berlekamp(&fp_monic(&fp, p), p);
        tried += 1;
        let better = match &best {
            None => true,
            Some((_, bf)) => factors.len() < bf.len(),
        };
        if better {
            best = Some((p, factors));
        }
        if tried >= 4 || best.as_ref().map_or(false, |(_, bf)| bf.len() == 1) {
            break;
        }
    }
    let (p, factors_p) = best.expect("no usable prime found for factorization");
    if factors_p.len() == 1 {
        return vec![f.to_vec()];
    }

    // Coefficient bound: factors of f have sup-norm at most 2^n * |f|_2.
    let norm2: BigInt = {
        let sum: BigInt = f.iter().map(|c| c * c).sum();
        sqrt_ceil(&sum) + 1
    };
    let bound: BigInt = (BigInt::one() << n) * norm2 * BigInt::from(2);
    let mut k = 1u32;
    let mut pk = BigInt::from(p);
    while pk <= bound {
        pk *= BigInt::from(p);
        k += 1;
    }

    let lifted = hensel_lift_list(f, &factors_p, p, k);
    recombine(f, lifted, &pk)
}

fn sqrt_ceil(n: &BigInt) -> BigInt {
    if n.is_zero() {
        return BigInt::zero();
    }
    let mut x = BigInt::one() << ((n.bits() / 2 + 1) as u64);
    loop {
        let x2 = (&x + n / &x) >> 1;
        if x2 >= x {
            break;
        }
        x = x2;
    }
    while &x * &x < *n {
        x += 1;
    }
    x
}

/// Recombines lifted modular factors into true integer factors of a monic
/// polynomial.
fn recombine(f: &[BigInt], mut modular: Vec<Vec<BigInt>>, pk: &BigInt) -> Vec<Vec<BigInt>> {
    let mut remaining = f.to_vec();
    let mut out = Vec::new();
    let mut subset_size = 1usize;
    'outer: while 2 * subset_size <= modular.len() {
        let indices: Vec<usize> = (0..modular.len()).collect();
        let mut choose = combination_iter(indices.len(), subset_size);
        while let Some(subset) = choose.next_combination() {
            // Degree of the candidate
            let cand_deg: usize = subset.iter().map(|&i| modular[i].len() - 1).sum();
            if 2 * cand_deg > remaining.len() - 1 {
                continue;
            }
            let mut prod: Vec<BigInt> = vec![BigInt::one()];
            for &i in subset {
                prod = int_poly_mul(&prod, &modular[i]);
                prod = int_poly_mod(&prod, pk);
            }
            let cand: Vec<BigInt> = prod.iter().map(|c| symmetric(c, pk)).collect();
            if let Some(quot) = int_poly_div_exact(&remaining, &cand) {
                out.push(cand);
                remaining = quot;
                // Drop used modular factors and restart at this size.
                let mut keep = Vec::new();
                for (i, m) in modular.drain(..).enumerate() {
                    if !subset.contains(&i) {
                        keep.push(m);
                    }
                }
                modular = keep;
                continue 'outer;
            }
        }
        subset_size += 1;
    }
    if remaining.len() > 1 {
        out.push(remaining);
    }
    out.sort_by_key(|h| h.len());
    out
}

/// Simple lexicographic k-combination generator over 0..n.
struct Combinations {
    n: usize,
    k: usize,
    idx: Vec<usize>,
    started: bool,
}

fn combination_iter(n: usize, k: usize) -> Combinations {
    Combinations { n, k, idx: (0..k).collect(), started: false }
}

impl Combinations {
    fn next_combination(&mut self) -> Option<&[usize]> {
        if self.k > self.n {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.idx);
        }
        // advance
        let mut i = self.k;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if self.idx[i] != i + self.n - self.k {
                break;
            }
        }
        self.idx[i] += 1;
        for j in i + 1..self.k {
            self.idx[j] = self.idx[j - 1] + 1;
        }
        Some(&self.idx)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::nf::NumberField;

    fn q() -> NumberField {
        NumberField::rationals()
    }

    #[test]
    fn squarefree_of_cube_times_linear() {
        // t^3 (t - 1)^2 -> [(t-1), 2], [(t), 3]
        let f = Poly::from_ints(&q(), &[0, 0, 0, 1]).mul(&Poly::from_ints(&q(), &[-1, 1]).pow(2));
        let dec = squarefree_decomposition(&f).unwrap();
        assert_eq!(dec.len(), 2);
        let mut mults: Vec<usize> = dec.iter().map(|(_, m)| *m).collect();
        mults.sort();
        assert_eq!(mults, vec![2, 3]);
    }

    #[test]
    fn factor_quadratic_with_rational_roots() {
        // t^2 - 1 = (t-1)(t+1)
        let f = Poly::from_ints(&q(), &[-1, 0, 1]);
        let fs = factor_rational(&f).unwrap();
        assert_eq!(fs.len(), 2);
        assert!(fs.iter().all(|(p, m)| p.degree() == Some(1) && *m == 1));
    }

    #[test]
    fn factor_irreducible_binomial() {
        // -4 t^7 + 27 is irreducible over Q (monic form t^7 - 27/4).
        let f = Poly::from_ints(&q(), &[27, 0, 0, 0, 0, 0, 0, -4]);
        let fs = factor_rational(&f).unwrap();
        assert_eq!(fs.len(), 1);
        assert_eq!(fs[0].0.degree(), Some(7));
        assert_eq!(fs[0].1, 1);
    }

    #[test]
    fn factor_cyclotomic_product() {
        // t^5 - 1 = (t - 1)(t^4 + t^3 + t^2 + t + 1)
        let f = Poly::from_ints(&q(), &[-1, 0, 0, 0, 0, 1]);
        let fs = factor_rational(&f).unwrap();
        let mut degs: Vec<usize> = fs.iter().map(|(p, _)| p.degree().unwrap()).collect();
        degs.sort();
        assert_eq!(degs, vec![1, 4]);
    }

    #[test]
    fn factor_with_multiplicity() {
        // (t^2 + 1)^2 (t - 3)
        let f = Poly::from_ints(&q(), &[1, 0, 1]).pow(2).mul(&Poly::from_ints(&q(), &[-3, 1]));
        let fs = factor_rational(&f).unwrap();
        let mut spec: Vec<(usize, usize)> =
            fs.iter().map(|(p, m)| (p.degree().unwrap(), *m)).collect();
        spec.sort();
        assert_eq!(spec, vec![(1, 1), (2, 2)]);
    }

    #[test]
    fn gcd_free_basis_splits_common_parts() {
        let a = Poly::from_ints(&q(), &[0, 1]).mul(&Poly::from_ints(&q(), &[-1, 1])); // t(t-1)
        let b = Poly::from_ints(&q(), &[0, 1]).mul(&Poly::from_ints(&q(), &[1, 1])); // t(t+1)
        let basis = gcd_free_basis(&[a.clone(), b.clone()]).unwrap();
        assert_eq!(basis.len(), 3);
        for x in &basis {
            for y in &basis {
                if x != y {
                    assert_eq!(x.gcd(y).unwrap().degree(), Some(0));
                }
            }
        }
    }
}
