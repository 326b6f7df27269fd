//! Dense univariate polynomials over `Z`, `Q` and `F_p` (coefficients stored
//! lowest degree first).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZPoly {
    coeffs: Vec<BigInt>,
}

impl ZPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        ZPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> ZPoly {
        ZPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn mul(&self, other: &ZPoly) -> ZPoly {
        if self.is_zero() || other.is_zero() {
            return ZPoly::new(vec![]);
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ZPoly::new(out)
    }

    pub fn sub(&self, other: &ZPoly) -> ZPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = BigInt::zero();
        ZPoly::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) - other.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }

    /// Quotient when `divisor` is monic and divides exactly.
    pub fn div_exact_monic(&self, divisor: &ZPoly) -> Option<ZPoly> {
        let dd = divisor.degree()?;
        if !divisor.lc().is_one() {
            return None;
        }
        let Some(nd) = self.degree() else {
            return Some(ZPoly::new(vec![]));
        };
        if nd < dd {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = rem[k + dd].clone();
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &c * d;
            }
            q[k] = c;
        }
        rem.iter().all(Zero::is_zero).then(|| ZPoly::new(q))
    }

    /// Divides every coefficient by `p`, which must divide them all.
    pub fn div_scalar_exact(&self, p: &BigInt) -> Option<ZPoly> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let (q, r) = c.div_rem(p);
            if !r.is_zero() {
                return None;
            }
            out.push(q);
        }
        Some(ZPoly::new(out))
    }

    pub fn reduce_mod(&self, p: u64) -> FpPoly {
        let pb = BigInt::from(p);
        FpPoly::new(
            self.coeffs
                .iter()
                .map(|c| c.mod_floor(&pb).to_u64().unwrap_or(0))
                .collect(),
            p,
        )
    }

    /// Exact resultant via the Euclidean algorithm over `Q`.
    pub fn resultant(&self, other: &ZPoly) -> BigInt {
        let to_q = |p: &ZPoly| -> Vec<BigRational> {
            p.coeffs.iter().map(|c| BigRational::from_integer(c.clone())).collect()
        };
        let r = q_resultant(to_q(self), to_q(other));
        debug_assert!(r.is_integer());
        r.to_integer()
    }

    /// `disc(f) = (-1)^(n(n-1)/2) Res(f, f') / lc(f)`.
    pub fn discriminant(&self) -> BigInt {
        let n = self.degree().unwrap_or(0);
        let res = self.resultant(&self.derivative());
        let d = res / self.lc();
        if (n * (n.saturating_sub(1)) / 2) % 2 == 1 {
            -d
        } else {
            d
        }
    }
}

fn q_trim(p: &mut Vec<BigRational>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn q_rem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db {
        let k = r.len() - 1 - db;
        let c = r.last().unwrap().clone() / lb;
        for (j, bj) in b.iter().enumerate() {
            r[k + j] -= &c * bj;
        }
        r.pop();
        q_trim(&mut r);
    }
    q_trim(&mut r);
    r
}

fn q_resultant(mut a: Vec<BigRational>, mut b: Vec<BigRational>) -> BigRational {
    q_trim(&mut a);
    q_trim(&mut b);
    if a.is_empty() || b.is_empty() {
        return BigRational::zero();
    }
    let mut acc = BigRational::one();
    loop {
        let da = a.len() - 1;
        let db = b.len() - 1;
        if db == 0 {
            return acc * num_traits::pow(b[0].clone(), da);
        }
        let r = q_rem(&a, &b);
        if r.is_empty() {
            return BigRational::zero();
        }
        let dr = r.len() - 1;
        // res(A, B) = (-1)^(da·db) lc(B)^(da - dr) res(B, R)
        if (da * db) % 2 == 1 {
            acc = -acc;
        }
        acc *= num_traits::pow(b[db].clone(), da - dr);
        a = b;
        b = r;
    }
}

/// Polynomial over `F_p` for a prime `p < 2^63`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpPoly {
    c: Vec<u64>,
    p: u64,
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    r
}

impl FpPoly {
    pub fn new(mut c: Vec<u64>, p: u64) -> Self {
        for x in c.iter_mut() {
            *x %= p;
        }
        while c.last() == Some(&0) {
            c.pop();
        }
        FpPoly { c, p }
    }

    pub fn x(p: u64) -> Self {
        Self::new(vec![0, 1], p)
    }

    pub fn constant(k: u64, p: u64) -> Self {
        Self::new(vec![k], p)
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// Lift with coefficients in `[0, p)`.
    pub fn lift(&self) -> ZPoly {
        ZPoly::new(self.c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn add(&self, o: &FpPoly) -> FpPoly {
        let n = self.c.len().max(o.c.len());
        let v = (0..n)
            .map(|i| {
                let a = self.c.get(i).copied().unwrap_or(0) as u128;
                let b = o.c.get(i).copied().unwrap_or(0) as u128;
                ((a + b) % self.p as u128) as u64
            })
            .collect();
        FpPoly::new(v, self.p)
    }

    pub fn sub(&self, o: &FpPoly) -> FpPoly {
        let neg = FpPoly::new(o.c.iter().map(|&x| (self.p - x) % self.p).collect(), self.p);
        self.add(&neg)
    }

    pub fn mul(&self, o: &FpPoly) -> FpPoly {
        if self.is_zero() || o.is_zero() {
            return FpPoly::new(vec![], self.p);
        }
        let mut out = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            for (j, &b) in o.c.iter().enumerate() {
                out[i + j] = ((out[i + j] as u128 + mulmod(a, b, self.p) as u128) % self.p as u128) as u64;
            }
        }
        FpPoly::new(out, self.p)
    }

    pub fn monic(&self) -> FpPoly {
        match self.c.last() {
            None => self.clone(),
            Some(&l) => {
                let inv = powmod(l, self.p - 2, self.p);
                FpPoly::new(self.c.iter().map(|&x| mulmod(x, inv, self.p)).collect(), self.p)
            }
        }
    }

    pub fn divrem(&self, d: &FpPoly) -> (FpPoly, FpPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let inv = powmod(d.c[dd], self.p - 2, self.p);
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (FpPoly::new(vec![], self.p), self.clone());
        }
        let mut q = vec![0u64; r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = mulmod(r[k + dd], inv, self.p);
            q[k] = c;
            if c == 0 {
                continue;
            }
            for (j, &dj) in d.c.iter().enumerate() {
                let t = mulmod(c, dj, self.p);
                r[k + j] = (r[k + j] + self.p - t) % self.p;
            }
        }
        (FpPoly::new(q, self.p), FpPoly::new(r, self.p))
    }

    pub fn rem(&self, d: &FpPoly) -> FpPoly {
        self.divrem(d).1
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, o: &FpPoly) -> FpPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn lcm(&self, o: &FpPoly) -> FpPoly {
        let g = self.gcd(o);
        self.mul(o).divrem(&g).0.monic()
    }

    /// `self^e mod modulus`.
    pub fn powmod(&self, mut e: u64, modulus: &FpPoly) -> FpPoly {
        let mut base = self.rem(modulus);
        let mut acc = FpPoly::constant(1, self.p).rem(modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(modulus);
            }
            base = base.mul(&base).rem(modulus);
            e >>= 1;
        }
        acc
    }

    /// Product of the distinct monic irreducible factors of a monic `self`.
    ///
    /// Uses `lcm_k gcd(self, x^(p^k) - x)` for `k = 1..=deg`, which is valid
    /// in every characteristic.
    pub fn radical(&self) -> FpPoly {
        let n = self.degree().unwrap_or(0);
        let x = FpPoly::x(self.p);
        let mut frob = x.clone();
        let mut rad = FpPoly::constant(1, self.p);
        for _ in 0..n {
            frob = frob.powmod(self.p, self);
            let d = self.gcd(&frob.sub(&x));
            rad = rad.lcm(&d);
        }
        rad
    }
}
