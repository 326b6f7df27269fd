//! Exact integral LLL reduction (δ = 3/4) for small integer lattices.
//!
//! The Gram–Schmidt data is kept as the integers `d_i` and `λ_{k,j}` of the
//! all-integer formulation, so no rational or floating-point arithmetic is
//! involved.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// A lattice given by basis vectors (the columns of the generating matrix).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntLattice {
    basis: Vec<Vec<BigInt>>,
}

impl IntLattice {
    /// Builds a lattice from basis vectors of a common length.
    pub fn from_columns(basis: Vec<Vec<BigInt>>) -> Self {
        debug_assert!(basis.windows(2).all(|w| w[0].len() == w[1].len()));
        IntLattice { basis }
    }

    pub fn from_i64_columns(cols: &[Vec<i64>]) -> Self {
        Self::from_columns(
            cols.iter()
                .map(|c| c.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn columns(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn gram(&self) -> Vec<Vec<BigInt>> {
        let n = self.basis.len();
        (0..n)
            .map(|i| (0..n).map(|j| dot(&self.basis[i], &self.basis[j])).collect())
            .collect()
    }

    /// Determinant of the Gram matrix, exactly (fraction-free elimination).
    pub fn gram_determinant(&self) -> BigInt {
        bareiss_det(self.gram())
    }

    pub fn scaled(&self, k: &BigInt) -> IntLattice {
        IntLattice {
            basis: self
                .basis
                .iter()
                .map(|v| v.iter().map(|x| x * k).collect())
                .collect(),
        }
    }

    /// Squared Euclidean length of the first basis vector.
    pub fn first_vector_norm_sq(&self) -> BigInt {
        self.basis.first().map(|v| dot(v, v)).unwrap_or_default()
    }
}

pub(crate) fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut sign = 1;
    let mut prev = BigInt::from(1);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

/// Nearest integer to `n / d` for `d > 0`.
fn round_div(n: &BigInt, d: &BigInt) -> BigInt {
    let num: BigInt = n * 2 + d;
    num.div_floor(&(d * 2))
}

struct Integral {
    b: Vec<Vec<BigInt>>,
    /// `d[0] = 1`, `d[i]` = Gram determinant of the first `i` vectors.
    d: Vec<BigInt>,
    lam: Vec<Vec<BigInt>>,
}

impl Integral {
    fn reduce(&mut self, k: usize, l: usize) {
        // 0-based vectors; d index shifted by one
        let twice: BigInt = &self.lam[k][l] * 2;
        if twice.abs() > self.d[l + 1] {
            let q = round_div(&self.lam[k][l], &self.d[l + 1]);
            let bl = self.b[l].clone();
            for (x, y) in self.b[k].iter_mut().zip(&bl) {
                *x -= &q * y;
            }
            self.lam[k][l] -= &q * &self.d[l + 1];
            for i in 0..l {
                let t = &q * &self.lam[l][i];
                self.lam[k][i] -= t;
            }
        }
    }

    fn swap(&mut self, k: usize, kmax: usize) {
        self.b.swap(k, k - 1);
        for j in 0..k - 1 {
            let t = self.lam[k][j].clone();
            self.lam[k][j] = self.lam[k - 1][j].clone();
            self.lam[k - 1][j] = t;
        }
        let lam = self.lam[k][k - 1].clone();
        let bb = (&self.d[k - 1] * &self.d[k + 1] + &lam * &lam) / &self.d[k];
        for i in k + 1..=kmax {
            let t = self.lam[i][k].clone();
            self.lam[i][k] = (&self.d[k + 1] * &self.lam[i][k - 1] - &lam * &t) / &self.d[k];
            self.lam[i][k - 1] = (&bb * &t + &lam * &self.lam[i][k]) / &self.d[k + 1];
        }
        self.d[k] = bb;
    }
}

/// LLL-reduces the lattice with Lovász parameter 3/4.
pub fn lll_reduce(lattice: &IntLattice) -> Result<IntLattice> {
    let n = lattice.basis.len();
    if n == 0 {
        return Ok(lattice.clone());
    }
    let mut st = Integral {
        b: lattice.basis.clone(),
        d: vec![BigInt::zero(); n + 1],
        lam: vec![vec![BigInt::zero(); n]; n],
    };
    st.d[0] = BigInt::from(1);
    st.d[1] = dot(&st.b[0], &st.b[0]);
    if st.d[1].is_zero() {
        return Err(Error::DegenerateLattice);
    }
    let mut k = 1;
    let mut kmax = 0;
    while k < n {
        if k > kmax {
            kmax = k;
            for j in 0..=k {
                let mut u = dot(&st.b[k], &st.b[j]);
                for i in 0..j {
                    u = (&st.d[i + 1] * u - &st.lam[k][i] * &st.lam[j][i]) / &st.d[i];
                }
                if j < k {
                    st.lam[k][j] = u;
                } else {
                    if u.is_zero() {
                        return Err(Error::DegenerateLattice);
                    }
                    st.d[k + 1] = u;
                }
            }
        }
        st.reduce(k, k - 1);
        let lhs = BigInt::from(4) * &st.d[k + 1] * &st.d[k - 1];
        let rhs = BigInt::from(3) * &st.d[k] * &st.d[k]
            - BigInt::from(4) * &st.lam[k][k - 1] * &st.lam[k][k - 1];
        if lhs < rhs {
            st.swap(k, kmax);
            k = (k - 1).max(1);
        } else {
            for l in (0..k - 1).rev() {
                st.reduce(k, l);
            }
            k += 1;
        }
    }
    Ok(IntLattice { basis: st.b })
}

/// Euclidean length of the first basis vector.
pub fn first_vector_norm<T: Real>(lattice: &IntLattice, prec: T::Precision) -> T {
    T::from_bigint(&lattice.first_vector_norm_sq(), prec).sqrt()
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use num_rational::BigRational;
    use num_traits::One;
    use proptest::prelude::*;

    /// Rational Gram–Schmidt, independent of the integral bookkeeping above.
    pub(crate) fn gram_schmidt(b: &[Vec<BigInt>]) -> (Vec<Vec<BigRational>>, Vec<BigRational>) {
        let n = b.len();
        let q = |x: &BigInt| BigRational::from_integer(x.clone());
        let mut star: Vec<Vec<BigRational>> = Vec::new();
        let mut norms: Vec<BigRational> = Vec::new();
        let mut mu = vec![vec![BigRational::zero(); n]; n];
        for i in 0..n {
            let mut v: Vec<BigRational> = b[i].iter().map(q).collect();
            for j in 0..i {
                let num: BigRational = b[i].iter().zip(&star[j]).map(|(x, y)| q(x) * y).sum();
                mu[i][j] = num / &norms[j];
                for (vi, sj) in v.iter_mut().zip(&star[j]) {
                    *vi -= &mu[i][j] * sj;
                }
            }
            norms.push(v.iter().map(|x| x * x).sum());
            star.push(v);
        }
        (mu, norms)
    }

    pub(crate) fn assert_reduced(b: &[Vec<BigInt>]) {
        let (mu, norms) = gram_schmidt(b);
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let three_quarters = BigRational::new(BigInt::from(3), BigInt::from(4));
        for i in 0..b.len() {
            for j in 0..i {
                assert!(mu[i][j].abs() <= half, "size reduction fails at ({i},{j})");
            }
            if i > 0 {
                let lhs = &norms[i];
                let rhs = (&three_quarters - &mu[i][i - 1] * &mu[i][i - 1]) * &norms[i - 1];
                assert!(*lhs >= rhs, "Lovász fails at {i}");
            }
        }
    }

    #[test]
    fn already_reduced_identity_block() {
        let cols = vec![
            vec![1, 0, 0, 0, 0, 0],
            vec![0, 1, 0, 0, 0, 0],
            vec![0, 0, 1, 0, 0, 0],
            vec![0, 0, 0, 1, 0, 0],
        ];
        let l = lll_reduce(&IntLattice::from_i64_columns(&cols)).unwrap();
        assert_eq!(l.first_vector_norm_sq(), BigInt::one());
        assert_eq!(first_vector_norm::<f64>(&l, ()), 1.0);
    }

    #[test]
    fn classic_example() {
        // Cohen's textbook-style 3×3 example
        let cols = vec![vec![1, 1, 1], vec![-1, 0, 2], vec![3, 5, 6]];
        let l = IntLattice::from_i64_columns(&cols);
        let r = lll_reduce(&l).unwrap();
        assert_reduced(r.columns());
        assert_eq!(r.gram_determinant(), l.gram_determinant());
        assert_eq!(r.first_vector_norm_sq(), BigInt::from(1));
    }

    #[test]
    fn dependent_columns_are_rejected() {
        let cols = vec![vec![1, 2, 3], vec![2, 4, 6]];
        assert_eq!(
            lll_reduce(&IntLattice::from_i64_columns(&cols)),
            Err(Error::DegenerateLattice)
        );
        let cols = vec![vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 0], vec![0, 0, 1]];
        assert_eq!(
            lll_reduce(&IntLattice::from_i64_columns(&cols)),
            Err(Error::DegenerateLattice)
        );
    }

    #[test]
    fn homogeneity_of_first_norm() {
        let cols = vec![vec![4, 1, 0, 7], vec![2, 9, 1, 0], vec![0, 3, 5, 1]];
        let l = IntLattice::from_i64_columns(&cols);
        let r = lll_reduce(&l).unwrap();
        let k = BigInt::from(7);
        let rk = lll_reduce(&l.scaled(&k)).unwrap();
        let a = first_vector_norm::<f64>(&r, ());
        let b = first_vector_norm::<f64>(&rk, ());
        assert!((b - 7.0 * a).abs() < 1e-9);
    }

    /// Shortest nonzero vector by exhaustive search over a coefficient box.
    fn brute_shortest(b: &[Vec<BigInt>], radius: i64) -> BigInt {
        let n = b.len();
        let mut best: Option<BigInt> = None;
        let mut coeffs = vec![-radius; n];
        loop {
            if coeffs.iter().any(|&c| c != 0) {
                let v: Vec<BigInt> = (0..b[0].len())
                    .map(|i| (0..n).map(|j| &b[j][i] * coeffs[j]).sum())
                    .collect();
                let nn = dot(&v, &v);
                if best.as_ref().is_none_or(|x| nn < *x) {
                    best = Some(nn);
                }
            }
            let mut i = 0;
            while i < n && coeffs[i] == radius {
                coeffs[i] = -radius;
                i += 1;
            }
            if i == n {
                break;
            }
            coeffs[i] += 1;
        }
        best.unwrap()
    }

    fn arb_lattice(dim: usize, rank: usize, range: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
        prop::collection::vec(prop::collection::vec(-range..=range, dim), rank)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn reduced_basis_invariants(cols in arb_lattice(6, 4, 50)) {
            let l = IntLattice::from_i64_columns(&cols);
            prop_assume!(!l.gram_determinant().is_zero());
            let r = lll_reduce(&l).unwrap();
            assert_reduced(r.columns());
            prop_assert_eq!(r.gram_determinant(), l.gram_determinant());
        }

        #[test]
        fn first_vector_within_lll_factor(cols in arb_lattice(4, 3, 9)) {
            let l = IntLattice::from_i64_columns(&cols);
            prop_assume!(!l.gram_determinant().is_zero());
            let r = lll_reduce(&l).unwrap();
            // brute force over the reduced basis, where short vectors have small coefficients
            let lambda_sq = brute_shortest(r.columns(), 5);
            // |ℓ₁|² ≤ 2^(n-1) λ₁² with n = 3
            prop_assert!(r.first_vector_norm_sq() <= lambda_sq * 4);
        }
    }
}
