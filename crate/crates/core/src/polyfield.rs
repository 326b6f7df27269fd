//! Instance setup for `f(x) = x^8 + a x^6 + b x^4 + a x^2 + 1`.
//!
//! `K = Q(α)` with `f(α) = 0` contains the quadratic field `M = Q(δ)`,
//! `δ = α² + α⁻²`, `δ² + aδ + (b−2) = 0`, and `α` has relative defining
//! polynomial `h(x) = x⁴ − δx² + 1` over `M`.

use num_bigint::BigInt;
use num_complex::Complex;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::quadfield::{QuadElt, QuadField};
use crate::scalar::{cabs, csqrt, BigFixed, Real};
use crate::zpoly::ZPoly;

/// Working precision used when nothing else is requested.
pub const DEFAULT_DIGITS: u32 = 250;
/// Ceiling for precision doubling.
pub const MAX_DIGITS: u32 = 2000;
/// Trial-division budget for discriminant factoring.
pub const TRIAL_DIVISION_BUDGET: u64 = 10_000_000;

/// Parameters of one `(a, b)` instance.
#[derive(Debug, Clone, Serialize)]
pub struct FieldParams {
    pub a: i64,
    pub b: i64,
    pub w1: i64,
    pub w2: i64,
    pub w3: i64,
    /// Square-free parameter of `M = Q(sqrt(m))`, equal to `W3`.
    pub m: i64,
    #[serde(skip)]
    pub field: QuadField,
    /// `δ = (−a−1)/2 + ω`.
    #[serde(skip)]
    pub delta: QuadElt,
    /// Discriminant of `M`.
    pub dm: i64,
    /// Discriminant of `f`, the discriminant of `K` when `f` is monogenic.
    #[serde(serialize_with = "ser_bigint")]
    pub dk: BigInt,
    pub jones_pass: bool,
    pub monogenic: bool,
}

fn ser_bigint<S: serde::Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

pub fn w_values(a: i64, b: i64) -> (i64, i64, i64) {
    (b + 2 - 2 * a, b + 2 + 2 * a, a * a - 4 * b + 8)
}

pub fn octic_poly(a: i64, b: i64) -> ZPoly {
    ZPoly::from_i64(&[1, 0, a, 0, b, 0, a, 0, 1])
}

pub fn quartic_poly(a: i64, b: i64) -> ZPoly {
    ZPoly::from_i64(&[1, a, b, a, 1])
}

/// Builds the instance, rejecting anything the pipeline cannot handle.
pub fn field_params(a: i64, b: i64) -> Result<FieldParams> {
    let (w1, w2, w3) = w_values(a, b);
    if w3 >= 0 {
        return Err(Error::RealSubfield(w3));
    }
    if !is_squarefree(w3)? {
        return Err(Error::NotSquarefree(w3));
    }
    if !is_irreducible_octic(a, b)? {
        return Err(Error::Reducible { a, b });
    }
    // W3 square-free forces a odd and m ≡ 1 (mod 4)
    let field = QuadField::new(w3)?;
    let delta = field.elt(-(a + 1) / 2, 1);
    let jones_pass = jones_conditions(a, b);
    let monogenic = dedekind_monogenic(a, b)?;
    Ok(FieldParams {
        a,
        b,
        w1,
        w2,
        w3,
        m: w3,
        field,
        delta,
        dm: w3,
        dk: disc_octic(a, b),
        jones_pass,
        monogenic,
    })
}

/// True iff no prime square divides `n` (trial division).
pub fn is_squarefree(n: i64) -> Result<bool> {
    if n == 0 {
        return Err(Error::ZeroArgument);
    }
    let mut n = n.unsigned_abs();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            n /= d;
            if n.is_multiple_of(d) {
                return Ok(false);
            }
        }
        d += 1;
    }
    Ok(true)
}

fn is_squarefree_big(n: &BigInt) -> bool {
    match n.to_i64() {
        Some(0) | None => false,
        Some(k) => is_squarefree(k).unwrap_or(false),
    }
}

/// The two conditions of Jones' sufficient criterion.
pub fn jones_conditions(a: i64, b: i64) -> bool {
    let (w1, w2, w3) = w_values(a, b);
    let prod = BigInt::from(w1) * w2 * w3;
    let residues = (a.rem_euclid(4), b.rem_euclid(4));
    is_squarefree_big(&prod) && matches!(residues, (1, 3) | (3, 1) | (3, 3))
}

pub fn jones_monogenic(p: &FieldParams) -> bool {
    jones_conditions(p.a, p.b)
}

/// Exact `disc(f)`.
pub fn disc_octic(a: i64, b: i64) -> BigInt {
    octic_poly(a, b).discriminant()
}

/// The eight complex roots of `f`, via `δ`, then `x²`, then `x`.
pub fn octic_roots<T: Real>(a: i64, b: i64, prec: T::Precision) -> [Complex<T>; 8] {
    let two = T::from_i64(2, prec);
    let c = |n: i64| Complex::new(T::from_i64(n, prec), T::zero());
    let sd = csqrt(&c(a * a - 4 * b + 8));
    let deltas = [
        (c(-a) + sd.clone()) / two.clone(),
        (c(-a) - sd) / two.clone(),
    ];
    let mut out = Vec::with_capacity(8);
    for d in deltas {
        let s = csqrt(&(d.clone() * d.clone() - c(4)));
        for y in [(d.clone() + s.clone()) / two.clone(), (d - s.clone()) / two.clone()] {
            let r = csqrt(&y);
            out.push(r.clone());
            out.push(-r);
        }
    }
    out.try_into().expect("eight roots")
}

/// `∏ (x − r)` for the given roots, lowest degree first.
pub(crate) fn poly_from_roots<T: Real>(roots: &[Complex<T>]) -> Vec<Complex<T>> {
    let mut coeffs = vec![Complex::new(T::one(), T::zero())];
    for r in roots {
        let mut next = vec![Complex::new(T::zero(), T::zero()); coeffs.len() + 1];
        for (k, c) in coeffs.iter().enumerate() {
            next[k + 1] = next[k + 1].clone() + c.clone();
            next[k] = next[k].clone() - c.clone() * r.clone();
        }
        coeffs = next;
    }
    coeffs
}

/// Irreducibility over `Q` by reconstructing every candidate monic factor
/// from subsets of the complex roots and testing exact divisibility.
pub fn is_irreducible_octic(a: i64, b: i64) -> Result<bool> {
    let mut digits = 60;
    loop {
        match irreducible_at(a, b, digits) {
            Err(Error::PrecisionExhausted(_)) if digits < MAX_DIGITS => digits *= 2,
            other => return other,
        }
    }
}

fn irreducible_at(a: i64, b: i64, digits: u32) -> Result<bool> {
    let prec = BigFixed::bits_for_digits(digits);
    let roots = octic_roots::<BigFixed>(a, b, prec);
    let f = octic_poly(a, b);
    let coarse = BigFixed::from_ratio(1, 100, prec);
    let fine = BigFixed::from_bigint(&BigInt::one(), prec)
        / BigFixed::from_bigint(&BigInt::from(10).pow(digits / 2), prec);
    // complements are covered by subsets of size <= 4
    for mask in 1u32..255 {
        if mask.count_ones() > 4 {
            continue;
        }
        let subset: Vec<_> = (0..8)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| roots[i].clone())
            .collect();
        let coeffs = poly_from_roots(&subset);
        let mut ints = Vec::with_capacity(coeffs.len());
        let mut worst = BigFixed::zero();
        let mut near = true;
        for c in &coeffs {
            let r = c.re.round_to_bigint();
            let dev = (c.re.clone() - BigFixed::from_bigint(&r, prec))
                .abs()
                .max_of(c.im.abs());
            if dev >= coarse {
                near = false;
                break;
            }
            worst = worst.max_of(dev);
            ints.push(r);
        }
        if !near {
            continue;
        }
        let g = ZPoly::new(ints);
        if f.div_exact_monic(&g).is_some() {
            return Ok(false);
        } else if worst < fine {
            return Err(Error::PrecisionExhausted(format!(
                "subset {mask:08b} is numerically integral but not a factor"
            )));
        }
    }
    Ok(true)
}

/// Result of trial division with a budget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub primes: Vec<(BigInt, u32)>,
    /// Square-free part made of primes above the budget (1 if none).
    pub cofactor: BigInt,
}

pub fn factor_with_budget(n: &BigInt, budget: u64) -> Result<Factorization> {
    if n.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let mut r = n.abs();
    let mut primes = Vec::new();
    let mut d = 2u64;
    let mut exhausted = false;
    loop {
        let db = BigInt::from(d);
        if &db * &db > r {
            break;
        }
        if d > budget {
            exhausted = true;
            break;
        }
        let mut e = 0;
        while (&r % &db).is_zero() {
            r /= &db;
            e += 1;
        }
        if e > 0 {
            primes.push((db, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    let mut cofactor = BigInt::one();
    if r > BigInt::one() {
        if !exhausted {
            primes.push((r, 1));
        } else {
            let s = r.sqrt();
            let budget = BigInt::from(budget);
            if &s * &s == r && s < &budget * &budget {
                primes.push((s, 2));
            } else if r < num_traits::pow(budget, 3) {
                cofactor = r;
            } else {
                return Err(Error::IndeterminateMonogenity(format!(
                    "cofactor {r} exceeds the trial-division budget"
                )));
            }
        }
    }
    Ok(Factorization { primes, cofactor })
}

/// Dedekind's criterion at `p`: true iff `p` does not divide the index of `Z[α]`.
pub fn dedekind_at_prime(f: &ZPoly, p: u64) -> bool {
    let fbar = f.reduce_mod(p);
    let g = fbar.radical();
    let h = fbar.divrem(&g).0;
    let pb = BigInt::from(p);
    let big_f = f
        .sub(&g.lift().mul(&h.lift()))
        .div_scalar_exact(&pb)
        .expect("g·h ≡ f (mod p)");
    let d = big_f.reduce_mod(p).gcd(&g).gcd(&h);
    d.degree() == Some(0)
}

/// Monogenity of `f`: `Z[α]` is the maximal order iff no prime with
/// `p² | disc(f)` divides the index.
pub fn dedekind_monogenic(a: i64, b: i64) -> Result<bool> {
    let f = octic_poly(a, b);
    if !is_irreducible_octic(a, b)? {
        return Err(Error::Precondition(format!("f is reducible for ({a}, {b})")));
    }
    let fac = factor_with_budget(&f.discriminant(), TRIAL_DIVISION_BUDGET)?;
    for (p, e) in &fac.primes {
        if *e < 2 {
            continue;
        }
        let p = p
            .to_u64()
            .filter(|&p| p < 1 << 62)
            .ok_or_else(|| Error::IndeterminateMonogenity(format!("prime {p} too large")))?;
        if !dedekind_at_prime(&f, p) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Complex embeddings of `M` and the relative conjugates of `α`.
///
/// Embedding 1 sends `ω` to `(1 + i·sqrt|m|)/2`; embedding 2 is its complex
/// conjugate and `alpha2[j] = conj(alpha1[j])`.
#[derive(Debug, Clone)]
pub struct EmbeddingTable<T: Real> {
    pub digits: u32,
    pub omega: Complex<T>,
    pub delta1: Complex<T>,
    pub delta2: Complex<T>,
    pub alpha1: [Complex<T>; 4],
    pub alpha2: [Complex<T>; 4],
    pub alpha_size: T,
}

impl<T: Real> EmbeddingTable<T> {
    pub fn precision(&self) -> T::Precision {
        self.omega.im.precision()
    }

    pub fn omega_bar(&self) -> Complex<T> {
        self.omega.conj()
    }

    /// The eight conjugates of `c + xα + yα² + zα³`: indices `0..4` lie over
    /// embedding 1, `4..8` over embedding 2.
    pub fn conjugates(&self, c: &QuadElt, x: &QuadElt, y: &QuadElt, z: &QuadElt) -> [Complex<T>; 8] {
        let ce = c.embed(&self.omega);
        let xe = x.embed(&self.omega);
        let ye = y.embed(&self.omega);
        let ze = z.embed(&self.omega);
        let first: Vec<Complex<T>> = self
            .alpha1
            .iter()
            .map(|al| {
                let al2 = al.clone() * al.clone();
                let al3 = al2.clone() * al.clone();
                ce.clone() + xe.clone() * al.clone() + ye.clone() * al2 + ze.clone() * al3
            })
            .collect();
        let mut out: Vec<Complex<T>> = first.clone();
        out.extend(first.iter().map(|g| g.conj()));
        out.try_into().expect("eight conjugates")
    }
}

pub fn embeddings<T: Real>(p: &FieldParams, prec: T::Precision) -> EmbeddingTable<T> {
    let c = |n: i64| Complex::new(T::from_i64(n, prec), T::zero());
    let two = T::from_i64(2, prec);
    let omega = p.field.embedded_omega::<T>(prec);
    let delta1 = p.delta.embed(&omega);
    let delta2 = delta1.conj();
    let s = csqrt(&(delta1.clone() * delta1.clone() - c(4)));
    let y1 = (delta1.clone() + s.clone()) / two.clone();
    let y2 = (delta1.clone() - s) / two;
    let r1 = csqrt(&y1);
    let r2 = csqrt(&y2);
    let alpha1 = [r1.clone(), -r1, r2.clone(), -r2];
    let alpha2 = [
        alpha1[0].conj(),
        alpha1[1].conj(),
        alpha1[2].conj(),
        alpha1[3].conj(),
    ];
    let alpha_size = alpha1
        .iter()
        .map(cabs)
        .fold(T::zero(), |acc, x| acc.max_of(x));
    EmbeddingTable {
        digits: T::digits_of(prec),
        omega,
        delta1,
        delta2,
        alpha1,
        alpha2,
        alpha_size,
    }
}

/// High-precision embeddings with `digits` decimal digits.
pub fn high_precision_embeddings(p: &FieldParams, digits: u32) -> Result<EmbeddingTable<BigFixed>> {
    if digits < 50 {
        return Err(Error::Precondition(format!("need at least 50 digits, got {digits}")));
    }
    Ok(embeddings::<BigFixed>(p, BigFixed::bits_for_digits(digits)))
}

/// `10^(-k)` at the given precision.
pub(crate) fn ten_pow_neg<T: Real>(k: u32, prec: T::Precision) -> T {
    T::one() / T::from_bigint(&BigInt::from(10).pow(k), prec)
}
