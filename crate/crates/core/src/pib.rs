//! Generators of power integral bases of `K` from solutions of the Thue
//! equation: the degree-16 polynomial in `c₂`, its integer roots, index
//! certification and normalization.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polyfield::{ten_pow_neg, EmbeddingTable, FieldParams};
use crate::quadfield::{QuadElt, QuadField};
use crate::scalar::{cabs, Real};
use crate::thue::{to_i64, ThueSolution};
use crate::zpoly::ZPoly;

/// Largest absolute value a polynomial coefficient may differ from an
/// integer before the expansion is declared unreliable.
pub const ROUNDING_TOLERANCE: f64 = 0.01;
/// Numeric gap accepted around an integral index.
pub const INDEX_GAP: f64 = 0.4;
/// Integer-root search refuses bounds beyond this.
pub const MAX_ROOT_BOUND: u64 = 100_000_000;

/// `[c₂, x₁, x₂, y₁, y₂, z₁, z₂]` for
/// `γ = ωc₂ + (x₁+ωx₂)α + (y₁+ωy₂)α² + (z₁+ωz₂)α³`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GeneratorCoeffs(pub [i64; 7]);

impl GeneratorCoeffs {
    pub const TRIVIAL: GeneratorCoeffs = GeneratorCoeffs([0, 1, 0, 0, 0, 0, 0]);

    pub fn from_parts(c2: &BigInt, x: &QuadElt, y: &QuadElt, z: &QuadElt) -> Result<Self> {
        Ok(GeneratorCoeffs([
            to_i64(c2)?,
            to_i64(x.u())?,
            to_i64(x.v())?,
            to_i64(y.u())?,
            to_i64(y.v())?,
            to_i64(z.u())?,
            to_i64(z.v())?,
        ]))
    }

    /// `(C, X, Y, Z)` with `C = ωc₂`.
    pub fn parts(&self, k: QuadField) -> [QuadElt; 4] {
        let g = self.0;
        [k.elt(0, g[0]), k.elt(g[1], g[2]), k.elt(g[3], g[4]), k.elt(g[5], g[6])]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn negated(&self) -> Self {
        GeneratorCoeffs(self.0.map(|c| -c))
    }

    /// Representative whose first nonzero entry is positive.
    pub fn normalize(&self) -> Self {
        match self.0.iter().find(|&&c| c != 0) {
            Some(&c) if c < 0 => self.negated(),
            _ => *self,
        }
    }

    pub fn max_abs(&self) -> i64 {
        self.0.iter().map(|c| c.abs()).max().unwrap_or(0)
    }
}

impl fmt::Display for GeneratorCoeffs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// `normalize(g)` as a free function.
pub fn normalize(g: &GeneratorCoeffs) -> GeneratorCoeffs {
    g.normalize()
}

/// The generator `((a+1)/2 − ω)α + α³`, before normalization.
pub fn closed_form_generator(p: &FieldParams) -> GeneratorCoeffs {
    GeneratorCoeffs([0, (p.a + 1) / 2, -1, 0, 0, 1, 0])
}

/// Values of `γ₀ = xα + yα² + zα³` at the four conjugates over embedding 1.
fn relative_conjugates<T: Real>(x: &QuadElt, y: &QuadElt, z: &QuadElt, e: &EmbeddingTable<T>) -> Vec<Complex<T>> {
    let zero = x.field().zero();
    e.conjugates(&zero, x, y, z)[..4].to_vec()
}

/// `∏_{j₁,j₂} (c₂(ω − ω̄) + γ₀^(1,j₁) − γ₀^(2,j₂))` for `γ₀ = xα + yα² + zα³`,
/// expanded and rounded to an integer polynomial in `c₂`.
pub fn j_polynomial_of<T: Real>(x: &QuadElt, y: &QuadElt, z: &QuadElt, e: &EmbeddingTable<T>) -> Result<ZPoly> {
    let prec = e.precision();
    let g1 = relative_conjugates(x, y, z, e);
    let s = e.omega.clone() - e.omega_bar();
    let zero = Complex::new(T::zero(), T::zero());
    let mut coeffs: Vec<Complex<T>> = vec![Complex::new(T::from_i64(1, prec), T::zero())];
    for a in &g1 {
        for b in &g1 {
            let d = a.clone() - b.conj();
            let mut next = vec![zero.clone(); coeffs.len() + 1];
            for (k, c) in coeffs.iter().enumerate() {
                next[k] = next[k].clone() + c.clone() * d.clone();
                next[k + 1] = next[k + 1].clone() + c.clone() * s.clone();
            }
            coeffs = next;
        }
    }
    let tol = T::from_ratio(1, 100, prec);
    let mut out = Vec::with_capacity(coeffs.len());
    for (k, c) in coeffs.iter().enumerate() {
        let r = c.re.round_to_bigint();
        let resid = (c.re.clone() - T::from_bigint(&r, prec)).abs();
        if resid >= tol || c.im.abs() >= tol {
            return Err(Error::PrecisionExhausted(format!(
                "coefficient of c2^{k} is not near an integer at {} digits",
                T::digits_of(prec)
            )));
        }
        out.push(r);
    }
    Ok(ZPoly::new(out))
}

/// The polynomial for `γ = c₁ + ωc₂ + ε(Xα + Yα² + Zα³)` built from a
/// solution.
pub fn j_polynomial<T: Real>(sol: &ThueSolution, eps: &QuadElt, e: &EmbeddingTable<T>) -> Result<ZPoly> {
    j_polynomial_of(&(eps * &sol.x), &(eps * &sol.y), &(eps * &sol.z), e)
}

const MOD_PRIME: u64 = (1 << 61) - 1;

fn mod_eval(coeffs: &[u64], x: i64) -> u64 {
    let xm = (x as i128).rem_euclid(MOD_PRIME as i128) as u128;
    coeffs
        .iter()
        .rev()
        .fold(0u128, |acc, &c| (acc * xm + c as u128) % MOD_PRIME as u128) as u64
}

/// All integer roots, each confirmed by exact evaluation.
///
/// Candidates are bounded by the Fujiwara bound, screened modulo a prime,
/// then required to divide the (nonzero) constant term.
pub fn integer_roots(poly: &ZPoly) -> Result<Vec<BigInt>> {
    if poly.is_zero() {
        return Err(Error::Precondition("zero polynomial".into()));
    }
    let mut c = poly.coeffs().to_vec();
    let mut roots = Vec::new();
    if c[0].is_zero() {
        roots.push(BigInt::zero());
        while c[0].is_zero() {
            c.remove(0);
        }
    }
    let n = c.len() - 1;
    if n == 0 {
        return Ok(roots);
    }
    let lead = c[n].abs().to_f64().unwrap_or(f64::MAX);
    let mut bound = 0f64;
    for i in 1..=n {
        let mut q = c[n - i].abs().to_f64().unwrap_or(f64::MAX) / lead;
        if i == n {
            q /= 2.0;
        }
        bound = bound.max(2.0 * q.powf(1.0 / i as f64));
    }
    let bound = (bound * 1.001).ceil() + 1.0;
    if !bound.is_finite() || bound > MAX_ROOT_BOUND as f64 {
        return Err(Error::Overflow(format!("integer root bound {bound:e} too large")));
    }
    let b = bound as i64;
    let p = BigInt::from(MOD_PRIME);
    let cm: Vec<u64> = c.iter().map(|x| x.mod_floor(&p).to_u64().unwrap_or(0)).collect();
    let reduced = ZPoly::new(c.clone());
    for x in -b..=b {
        if x == 0 || mod_eval(&cm, x) != 0 {
            continue;
        }
        let xb = BigInt::from(x);
        if c[0].is_multiple_of(&xb) && reduced.eval(&xb).is_zero() {
            roots.push(xb);
        }
    }
    roots.sort();
    Ok(roots)
}

/// Numeric index data of one element.
#[derive(Debug, Clone)]
pub struct IndexReport<T: Real> {
    /// `I(γ)`.
    pub index: T,
    /// Relative index `I_{K/M}(γ)`.
    pub relative: T,
    /// `J(γ)`.
    pub j: T,
}

/// Index, relative index and `J` of `γ`, from its eight conjugates.
pub fn index_report<T: Real>(g: &GeneratorCoeffs, p: &FieldParams, e: &EmbeddingTable<T>) -> Result<IndexReport<T>> {
    let prec = e.precision();
    let [c, x, y, z] = g.parts(p.field);
    let conj = e.conjugates(&c, &x, &y, &z);
    let digits = T::digits_of(prec);
    let tol = ten_pow_neg::<T>(digits.saturating_sub(30).max(digits / 3), prec);
    let one = T::from_i64(1, prec);
    let (mut within, mut across) = (one.clone(), one);
    for i in 0..8 {
        for j in i + 1..8 {
            let d = cabs(&(conj[i].clone() - conj[j].clone()));
            if d < tol {
                return Err(Error::NotAGenerator);
            }
            if (i < 4) == (j < 4) {
                within = within * d;
            } else {
                across = across * d;
            }
        }
    }
    let dk = T::from_bigint(&p.dk.abs(), prec).sqrt();
    let rel_disc = T::from_i64(16 * (p.w1 * p.w2).abs(), prec);
    let m_sq = T::from_i64(p.m * p.m, prec);
    Ok(IndexReport {
        index: within.clone() * across.clone() / dk,
        relative: within / rel_disc,
        j: across / m_sq,
    })
}

/// Certifies `I(γ) = 1` through the numeric gap, after checking
/// `I = I_{K/M}·J`.
pub fn verify_index_one<T: Real>(g: &GeneratorCoeffs, p: &FieldParams, e: &EmbeddingTable<T>) -> Result<bool> {
    let prec = e.precision();
    let r = index_report(g, p, e)?;
    let product = r.relative.clone() * r.j.clone();
    if (r.index.clone() - product).abs() >= T::from_ratio(1, 10, prec) {
        return Err(Error::PrecisionExhausted(format!("index factorization mismatch for {g}")));
    }
    Ok((r.index - T::from_i64(1, prec)).abs() < T::from_ratio(2, 5, prec))
}

/// Generators `ωc₂ + ε(Xα + Yα² + Zα³)` with `I = 1`, normalized, sorted
/// and without duplicates.
pub fn assemble_generators<T: Real>(
    p: &FieldParams,
    e: &EmbeddingTable<T>,
    sols: &[ThueSolution],
) -> Result<Vec<GeneratorCoeffs>> {
    let units = p.field.units();
    let mut triples = BTreeSet::new();
    for sol in sols {
        for eps in &units {
            triples.insert((eps * &sol.x, eps * &sol.y, eps * &sol.z));
        }
    }
    let m_sq = BigInt::from(p.m * p.m);
    let mut out = BTreeSet::new();
    for (x, y, z) in &triples {
        let poly = j_polynomial_of(x, y, z, e)?;
        for target in [m_sq.clone(), -m_sq.clone()] {
            let shifted = poly.sub(&ZPoly::new(vec![target]));
            for c2 in integer_roots(&shifted)? {
                let g = GeneratorCoeffs::from_parts(&c2, x, y, z)?;
                if g.is_zero() {
                    continue;
                }
                match verify_index_one(&g, p, e) {
                    Ok(true) => {
                        out.insert(g.normalize());
                    }
                    Ok(false) | Err(Error::NotAGenerator) => {}
                    Err(err) => return Err(err),
                }
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// `J` evaluated directly for a numeric check of polynomial roots.
pub fn j_value<T: Real>(g: &GeneratorCoeffs, p: &FieldParams, e: &EmbeddingTable<T>) -> Result<T> {
    Ok(index_report(g, p, e)?.j)
}

/// `true` when `x` is within `tol` of a positive integer.
pub fn near_positive_integer<T: Real>(x: &T, tol: f64) -> bool {
    let prec = x.precision();
    let r = x.round_to_bigint();
    r >= BigInt::one() && (x.clone() - T::from_bigint(&r, prec)).abs().to_f64() < tol
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyfield::{field_params, high_precision_embeddings};
    use crate::scalar::BigFixed;
    use crate::thue::enumerate_solutions;

    fn setup(a: i64, b: i64) -> (FieldParams, EmbeddingTable<BigFixed>) {
        let p = field_params(a, b).unwrap();
        let e = high_precision_embeddings(&p, 250).unwrap();
        (p, e)
    }

    fn big(v: &[i64]) -> ZPoly {
        ZPoly::from_i64(v)
    }

    #[test]
    fn normalization() {
        let g = GeneratorCoeffs([0, -1, 1, 0, 0, -1, 0]);
        assert_eq!(g.normalize(), GeneratorCoeffs([0, 1, -1, 0, 0, 1, 0]));
        assert_eq!(g.normalize().normalize(), g.normalize());
        assert_eq!(GeneratorCoeffs::TRIVIAL.normalize(), GeneratorCoeffs::TRIVIAL);
    }

    #[test]
    fn closed_form_shapes() {
        let p = field_params(-9, 23).unwrap();
        assert_eq!(closed_form_generator(&p).normalize(), GeneratorCoeffs([0, 4, 1, 0, 0, -1, 0]));
        let p = field_params(7, 15).unwrap();
        assert_eq!(
            closed_form_generator(&p).normalize(),
            GeneratorCoeffs([0, -4, 1, 0, 0, -1, 0]).normalize()
        );
    }

    #[test]
    fn integer_root_search() {
        // (x − 3)(x + 5)(x² + 7)
        let p = big(&[-105, 14, -8, 2, 1]);
        assert_eq!(integer_roots(&p).unwrap(), vec![BigInt::from(-5), BigInt::from(3)]);
        assert!(integer_roots(&big(&[2, 0, 1])).unwrap().is_empty());
        // x²(x − 4)
        assert_eq!(
            integer_roots(&big(&[0, 0, -4, 1])).unwrap(),
            vec![BigInt::zero(), BigInt::from(4)]
        );
        // degree 16: (x − 3)·(x¹⁵ + x + 1)
        let mut f = vec![0i64; 16];
        f[15] = 1;
        f[1] = 1;
        f[0] = 1;
        let p = big(&[-3, 1]).mul(&big(&f));
        assert_eq!(integer_roots(&p).unwrap(), vec![BigInt::from(3)]);
    }

    #[test]
    fn j_polynomial_structure() {
        let (p, e) = setup(-9, 23);
        let k = p.field;
        let poly = j_polynomial_of(&k.one(), &k.zero(), &k.zero(), &e).unwrap();
        assert_eq!(poly.degree(), Some(16));
        assert_eq!(poly.lc(), BigInt::from(p.m).pow(8));
        // the trivial generator has J = 1 at c₂ = 0
        let v = poly.eval(&BigInt::zero());
        assert_eq!(v.abs(), BigInt::from(p.m * p.m));
    }

    #[test]
    fn index_of_special_elements() {
        let (p, e) = setup(-9, 23);
        assert!(verify_index_one(&GeneratorCoeffs::TRIVIAL, &p, &e).unwrap());
        assert_eq!(
            verify_index_one(&GeneratorCoeffs([0, 0, 0, 1, 0, 0, 0]), &p, &e),
            Err(Error::NotAGenerator)
        );
        let two_alpha = GeneratorCoeffs([0, 2, 0, 0, 0, 0, 0]);
        assert!(!verify_index_one(&two_alpha, &p, &e).unwrap());
        let r = index_report(&two_alpha, &p, &e).unwrap();
        assert!((r.index.to_f64() / 2f64.powi(28) - 1.0).abs() < 1e-9);
        assert!(verify_index_one(&closed_form_generator(&p), &p, &e).unwrap());
    }

    #[test]
    fn assembles_the_known_generators() {
        let (p, e) = setup(-9, 23);
        let sols = enumerate_solutions(&p, &e, &BigInt::from(16)).unwrap();
        let gens = assemble_generators(&p, &e, &sols).unwrap();
        assert_eq!(
            gens,
            vec![GeneratorCoeffs([0, 1, 0, 0, 0, 0, 0]), GeneratorCoeffs([0, 4, 1, 0, 0, -1, 0])]
        );
    }

    #[test]
    fn near_integer_check() {
        assert!(near_positive_integer(&2.001f64, 0.01));
        assert!(!near_positive_integer(&0.0001f64, 0.01));
        assert!(!near_positive_integer(&2.3f64, 0.1));
    }
}
