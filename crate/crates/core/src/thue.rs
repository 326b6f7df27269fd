//! The quartic relative Thue equation `P⁴ − δP²Q² + Q⁴ = ε` over `Z_M`:
//! resolvent forms, a priori bounds, LLL bound reduction and the final
//! enumeration of small solutions.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_complex::Complex;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lll::{lll_reduce, IntLattice};
use crate::polyfield::{EmbeddingTable, FieldParams};
use crate::quadfield::QuadElt;
use crate::scalar::{cabs, csqrt, Real};

/// Multipliers `r` tried in order for `H = ⌈A₀²⌉·r`; includes every decade
/// up to `10⁴`.
pub const H_MULTIPLIERS: [u32; 13] = [1, 2, 5, 10, 20, 50, 100, 200, 500, 1000, 2000, 5000, 10000];
/// Required `|ℓ₁|² / A₀²` before a reduction step is accepted.
pub const LATTICE_RATIO_SQ: u32 = 150;
/// Reduction stops once the bound is at most this.
pub const SMALL_BOUND: i64 = 10;

/// `c₀u³ + c₁u²v + c₂uv² + c₃v³`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryCubic {
    pub c: [QuadElt; 4],
}

impl BinaryCubic {
    pub fn eval(&self, u: &QuadElt, v: &QuadElt) -> QuadElt {
        let [c0, c1, c2, c3] = &self.c;
        let (u2, v2) = (u * u, v * v);
        c0 * &(&u2 * u) + c1 * &(&u2 * v) + c2 * &(u * &v2) + c3 * &(&v2 * v)
    }
}

/// `xx·x² + yy·y² + zz·z² + xy·xy + xz·xz + yz·yz`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TernaryQuadratic {
    pub xx: QuadElt,
    pub yy: QuadElt,
    pub zz: QuadElt,
    pub xy: QuadElt,
    pub xz: QuadElt,
    pub yz: QuadElt,
}

impl TernaryQuadratic {
    pub fn eval(&self, x: &QuadElt, y: &QuadElt, z: &QuadElt) -> QuadElt {
        &self.xx * &(x * x)
            + &self.yy * &(y * y)
            + &self.zz * &(z * z)
            + &self.xy * &(x * y)
            + &self.xz * &(x * z)
            + &self.yz * &(y * z)
    }
}

/// The cubic resolvent form and the two quadratic forms attached to a
/// relative quartic `x⁴ + a₁x³ + a₂x² + a₃x + a₄`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolventForms {
    pub cubic: BinaryCubic,
    pub q1: TernaryQuadratic,
    pub q2: TernaryQuadratic,
}

pub fn general_resolvent_forms(a1: &QuadElt, a2: &QuadElt, a3: &QuadElt, a4: &QuadElt) -> ResolventForms {
    let k = a1.field();
    let one = k.one();
    let zero = k.zero();
    let four = k.int(4);
    let cubic = BinaryCubic {
        c: [
            one.clone(),
            -a2,
            a1 * a3 - &four * a4,
            &four * &(a2 * a4) - a3 * a3 - &(a1 * a1) * a4,
        ],
    };
    let q1 = TernaryQuadratic {
        xx: one.clone(),
        yy: a2.clone(),
        zz: a2 * a2 - a1 * a3 + a4.clone(),
        xy: -a1,
        xz: a1 * a1 - a2.scale(&BigInt::from(2)),
        yz: a3 - &(a1 * a2),
    };
    let q2 = TernaryQuadratic {
        xx: zero.clone(),
        yy: one,
        zz: a2.clone(),
        xy: zero,
        xz: -k.one(),
        yz: -a1,
    };
    ResolventForms { cubic, q1, q2 }
}

/// Forms for `h(x) = x⁴ − δx² + 1`, where the cubic factors as
/// `(u − 2v)(u + 2v)(u + δv)`.
pub fn resolvent_forms(p: &FieldParams) -> ResolventForms {
    let k = p.field;
    general_resolvent_forms(&k.zero(), &-&p.delta, &k.zero(), &k.one())
}

/// `F(P, Q) = P⁴ − δP²Q² + Q⁴`.
pub fn thue_form(delta: &QuadElt, p: &QuadElt, q: &QuadElt) -> QuadElt {
    let (p2, q2) = (p * p, q * q);
    &p2 * &p2 - &(delta * &p2) * &q2 + &q2 * &q2
}

/// A solution `(P, Q)` of `F(P, Q) = ε` together with the triple
/// `X = P² − δQ²`, `Y = PQ`, `Z = Q²`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ThueSolution {
    pub p: QuadElt,
    pub q: QuadElt,
    pub eps: QuadElt,
    pub x: QuadElt,
    pub y: QuadElt,
    pub z: QuadElt,
}

impl ThueSolution {
    /// Builds the solution if `F(P, Q)` is a unit.
    pub fn new(delta: &QuadElt, p: QuadElt, q: QuadElt) -> Option<Self> {
        let eps = thue_form(delta, &p, &q);
        if !eps.is_unit() {
            return None;
        }
        let x = &p * &p - delta * &(&q * &q);
        let y = &p * &q;
        let z = &q * &q;
        Some(ThueSolution { p, q, eps, x, y, z })
    }

    /// Exact re-check of every defining identity.
    pub fn verify(&self, params: &FieldParams) -> bool {
        let d = &params.delta;
        let forms = resolvent_forms(params);
        thue_form(d, &self.p, &self.q) == self.eps
            && self.eps.is_unit()
            && self.x == &self.p * &self.p - d * &(&self.q * &self.q)
            && self.y == &self.p * &self.q
            && self.z == &self.q * &self.q
            && forms.q2.eval(&self.x, &self.y, &self.z).is_zero()
            && forms.q1.eval(&self.x, &self.y, &self.z) == self.eps
    }

    /// `(p₁, p₂, q₁, q₂)`.
    pub fn coords(&self) -> [BigInt; 4] {
        [
            self.p.u().clone(),
            self.p.v().clone(),
            self.q.u().clone(),
            self.q.v().clone(),
        ]
    }

    /// `max(|p₁|, |p₂|, |q₁|, |q₂|)`.
    pub fn height(&self) -> BigInt {
        self.coords().iter().map(|c| c.abs()).max().unwrap_or_default()
    }
}

fn abs_omega<T: Real>(m: i64, prec: T::Precision) -> T {
    T::from_ratio(1 - m, 4, prec).sqrt()
}

fn omega_factor<T: Real>(m: i64, prec: T::Precision) -> T {
    // 2|ω| / |ω − ω̄|
    T::from_i64(2, prec) * abs_omega::<T>(m, prec) / T::from_i64(-m, prec).sqrt()
}

/// A priori bound on `max(|p₁|,|p₂|,|q₁|,|q₂|)` for generators with
/// coefficients at most `s`, rounded outward.
pub fn initial_bound<T: Real>(p: &FieldParams, s: &BigInt, prec: T::Precision) -> T {
    let om = abs_omega::<T>(p.m, prec);
    let delta_abs = T::from_i64(p.b - 2, prec).sqrt();
    let one = T::from_i64(1, prec);
    let inner = (one.clone() + om) * (one + delta_abs) * T::from_bigint(s, prec);
    (omega_factor::<T>(p.m, prec) * inner.sqrt()).outward()
}

/// `(c₁, c_{2,i₀})` for the case where `β^(i₀)` is the smallest conjugate
/// (`i0` in `1..=4`).
pub fn case_constants<T: Real>(p: &FieldParams, e: &EmbeddingTable<T>, i0: usize) -> Result<(T, T)> {
    check_case(i0)?;
    let prec = e.precision();
    let one = T::from_i64(1, prec);
    let c1 = (omega_factor::<T>(p.m, prec) * (one + e.alpha_size.clone())).outward();
    let tenth = T::from_ratio(1, 10, prec);
    let base = &e.alpha1[i0 - 1];
    let mut denom = T::from_i64(1, prec);
    for (j, al) in e.alpha1.iter().enumerate() {
        if j == i0 - 1 {
            continue;
        }
        let d = cabs(&(al.clone() - base.clone()));
        let margin = d.clone() - tenth.clone();
        if margin <= margin.error_bound() {
            return Err(Error::RootsTooClose {
                i0,
                distance: format!("{:.6}", d.to_f64()),
            });
        }
        denom = denom * (margin.clone() - margin.error_bound());
    }
    let c2 = (c1.clone() * c1.clone() * c1.clone() / denom).outward();
    Ok((c1, c2))
}

fn check_case(i0: usize) -> Result<()> {
    if (1..=4).contains(&i0) {
        Ok(())
    } else {
        Err(Error::Precondition(format!("case index {i0} not in 1..=4")))
    }
}

/// Columns `e_k` stacked over `round(H·Re v_k)`, `round(H·Im v_k)` with
/// `v = (1, ω, −α^(i₀), −α^(i₀)ω)`.
pub fn build_reduction_lattice<T: Real>(e: &EmbeddingTable<T>, i0: usize, h: &BigInt) -> Result<IntLattice> {
    check_case(i0)?;
    if !h.is_positive() {
        return Err(Error::Precondition("H must be positive".into()));
    }
    let prec = e.precision();
    let one = Complex::new(T::from_i64(1, prec), T::zero());
    let neg_alpha = -e.alpha1[i0 - 1].clone();
    let values = [one, e.omega.clone(), neg_alpha.clone(), neg_alpha * e.omega.clone()];
    let hh = T::from_bigint(h, prec);
    let limit = T::from_ratio(1, 1000, prec);
    let mut cols = Vec::with_capacity(4);
    for (k, v) in values.iter().enumerate() {
        let re = hh.clone() * v.re.clone();
        let im = hh.clone() * v.im.clone();
        if re.error_bound() > limit || im.error_bound() > limit {
            return Err(Error::PrecisionExhausted(format!(
                "lattice entries at H = {h} need more than {} digits",
                T::digits_of(prec)
            )));
        }
        let mut col = vec![BigInt::zero(); 6];
        col[k] = BigInt::one();
        col[4] = if k == 0 { h.clone() } else { re.round_to_bigint() };
        col[5] = if k == 0 { BigInt::zero() } else { im.round_to_bigint() };
        cols.push(col);
    }
    Ok(IntLattice::from_columns(cols))
}

/// One row of the reduction trace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionStep {
    pub i0: usize,
    pub a0: BigInt,
    pub h: BigInt,
    pub new_a0: BigInt,
}

/// Bound-reduction state for one case `i0`.
#[derive(Debug, Clone)]
pub struct BoundState<T: Real> {
    pub i0: usize,
    pub a0: BigInt,
    pub c1: T,
    pub c2: T,
    pub history: Vec<ReductionStep>,
}

impl<T: Real> BoundState<T> {
    pub fn new(p: &FieldParams, e: &EmbeddingTable<T>, i0: usize, a0: BigInt) -> Result<Self> {
        let (c1, c2) = case_constants(p, e, i0)?;
        Ok(BoundState {
            i0,
            a0,
            c1,
            c2,
            history: Vec::new(),
        })
    }
}

/// One reduction step: find `H` with
/// `|ℓ₁|² ≥ 150·A₀²` and replace `A₀` by `⌈(c₂H/A₀)^(1/3)⌉` when smaller.
pub fn reduce_once<T: Real>(state: &BoundState<T>, e: &EmbeddingTable<T>) -> Result<BoundState<T>> {
    let prec = e.precision();
    let a0 = &state.a0;
    let a0_sq = a0 * a0;
    let target = &a0_sq * LATTICE_RATIO_SQ;
    let base = a0_sq.clone().max(BigInt::one());
    for r in H_MULTIPLIERS {
        let h = &base * r;
        let lattice = build_reduction_lattice(e, state.i0, &h)?;
        let reduced = lll_reduce(&lattice)?;
        if reduced.first_vector_norm_sq() >= target {
            let ratio = state.c2.clone() * T::from_bigint(&h, prec) / T::from_bigint(a0, prec);
            let new_a0 = ratio.cbrt().outward().ceil_to_bigint();
            let mut next = state.clone();
            next.history.push(ReductionStep {
                i0: state.i0,
                a0: a0.clone(),
                h: h.clone(),
                new_a0: new_a0.clone(),
            });
            if new_a0 < next.a0 {
                next.a0 = new_a0;
            }
            return Ok(next);
        }
    }
    Err(Error::ReductionStalled {
        i0: state.i0,
        bound: a0.to_string(),
    })
}

/// Repeats [`reduce_once`] until the bound drops to at most 10 or a step
/// gains less than 10%.
pub fn reduce_loop<T: Real>(
    p: &FieldParams,
    e: &EmbeddingTable<T>,
    i0: usize,
    a_init: &BigInt,
) -> Result<BoundState<T>> {
    let mut state = BoundState::new(p, e, i0, a_init.clone())?;
    loop {
        let before = state.a0.clone();
        state = reduce_once(&state, e)?;
        let new = &state.history.last().expect("step recorded").new_a0;
        if *new <= BigInt::from(SMALL_BOUND) || BigInt::from(10) * new >= BigInt::from(9) * &before {
            return Ok(state);
        }
        if state.history.len() > 64 {
            return Err(Error::ReductionStalled {
                i0,
                bound: state.a0.to_string(),
            });
        }
    }
}

/// Reduced bound: the maximum over all four cases, with each case's trace.
pub fn reduced_bound<T: Real>(
    p: &FieldParams,
    e: &EmbeddingTable<T>,
    a_init: &BigInt,
) -> Result<(BigInt, Vec<BoundState<T>>)> {
    let states = (1..=4)
        .map(|i0| reduce_loop(p, e, i0, a_init))
        .collect::<Result<Vec<_>>>()?;
    let bound = states.iter().map(|s| s.a0.clone()).max().unwrap_or_default();
    Ok((bound, states))
}

/// The `(q₁, q₂)` box `|q₁| ≤ A₁`, `|q₂| ≤ A₂` searched for a reduced bound.
pub fn enumeration_box<T: Real>(p: &FieldParams, a_r: &BigInt, prec: T::Precision) -> (BigInt, BigInt) {
    let root = T::from_i64(-p.m, prec).sqrt();
    let ten = T::from_i64(10, prec);
    let s1 = (ten.clone() + ten.clone() / root.clone()).floor_to_bigint();
    let s2 = (T::from_i64(20, prec) / root).floor_to_bigint();
    (a_r.clone().max(s1), a_r.clone().max(s2))
}

/// All solutions with `(q₁, q₂)` in the box of [`enumeration_box`], found by
/// solving for `P` numerically and confirming each candidate exactly.
pub fn enumerate_solutions<T: Real>(
    p: &FieldParams,
    e: &EmbeddingTable<T>,
    a_r: &BigInt,
) -> Result<Vec<ThueSolution>> {
    let prec = e.precision();
    let (a1, a2) = enumeration_box::<T>(p, a_r, prec);
    let (a1, a2) = (to_i64(&a1)?, to_i64(&a2)?);
    let k = p.field;
    let units: Vec<(QuadElt, Complex<T>)> = k
        .units()
        .into_iter()
        .map(|u| {
            let ue = u.embed(&e.omega);
            (u, ue)
        })
        .collect();
    let two = T::from_i64(2, prec);
    let four = Complex::new(T::from_i64(4, prec), T::zero());
    let half_re = e.omega.re.clone();
    let im_omega = e.omega.im.clone();
    let mut found = BTreeMap::new();
    for q1 in -a1..=a1 {
        for q2 in -a2..=a2 {
            let q = k.elt(q1, q2);
            let qe = q.embed(&e.omega);
            let q_sq = qe.clone() * qe.clone();
            let q4 = q_sq.clone() * q_sq.clone();
            let dq = e.delta1.clone() * q_sq;
            for (_, ue) in &units {
                let disc = dq.clone() * dq.clone() - four.clone() * (q4.clone() - ue.clone());
                let s = csqrt(&disc);
                for p_sq in [
                    (dq.clone() + s.clone()) / two.clone(),
                    (dq.clone() - s.clone()) / two.clone(),
                ] {
                    let root = csqrt(&p_sq);
                    for pe in [root.clone(), -root] {
                        let p2 = pe.im.clone() / im_omega.clone();
                        let p1 = pe.re.clone() - p2.clone() * half_re.clone();
                        let (r1, r2) = (p1.round_to_bigint(), p2.round_to_bigint());
                        if !near(&p1, &r1, prec) || !near(&p2, &r2, prec) {
                            continue;
                        }
                        let cand = k.elt(r1, r2);
                        if let Some(sol) = ThueSolution::new(&p.delta, cand, q.clone()) {
                            found.entry((sol.p.clone(), sol.q.clone())).or_insert(sol);
                        }
                    }
                }
            }
        }
    }
    Ok(found.into_values().collect())
}

/// Genuine solutions land almost exactly on integers; anything farther than
/// 1/4 cannot be one, so the exact check is skipped.
fn near<T: Real>(x: &T, r: &BigInt, prec: T::Precision) -> bool {
    (x.clone() - T::from_bigint(r, prec)).abs().to_f64() < 0.25
}

pub(crate) fn to_i64(x: &BigInt) -> Result<i64> {
    x.to_i64()
        .ok_or_else(|| Error::Overflow(format!("{x} does not fit in 64 bits")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyfield::{embeddings, field_params, high_precision_embeddings};
    use crate::quadfield::QuadField;
    use crate::scalar::BigFixed;
    use proptest::prelude::*;

    fn setup(a: i64, b: i64) -> (FieldParams, EmbeddingTable<BigFixed>) {
        let p = field_params(a, b).unwrap();
        let e = high_precision_embeddings(&p, 250).unwrap();
        (p, e)
    }

    #[test]
    fn specialized_cubic_factors() {
        let p = field_params(-9, 23).unwrap();
        let k = p.field;
        let f = resolvent_forms(&p);
        assert!(f.cubic.eval(&k.int(2), &k.one()).is_zero());
        assert!(f.cubic.eval(&k.int(-2), &k.one()).is_zero());
        assert!(f.cubic.eval(&-&p.delta, &k.one()).is_zero());
        // Q₂ = Y² − XZ − δZ²
        assert_eq!(f.q2.yy, k.one());
        assert_eq!(f.q2.xz, -k.one());
        assert_eq!(f.q2.zz, -&p.delta);
        assert!(f.q2.xx.is_zero() && f.q2.xy.is_zero() && f.q2.yz.is_zero());
    }

    #[test]
    fn q1_on_the_parametrization_is_the_thue_form() {
        let p = field_params(3, 5).unwrap();
        let k = p.field;
        let f = resolvent_forms(&p);
        for (pp, qq) in [(k.elt(2, -1), k.elt(1, 3)), (k.elt(-4, 0), k.elt(5, 2))] {
            let x = &pp * &pp - &p.delta * &(&qq * &qq);
            let y = &pp * &qq;
            let z = &qq * &qq;
            assert!(f.q2.eval(&x, &y, &z).is_zero());
            assert_eq!(f.q1.eval(&x, &y, &z), thue_form(&p.delta, &pp, &qq));
        }
    }

    proptest! {
        // with integer roots r_i, Vieta gives the a_i and the cubic must be
        // ∏ (u − θ_k v) with θ₁ = r₁r₂ + r₃r₄, θ₂ = r₁r₃ + r₂r₄, θ₃ = r₁r₄ + r₂r₃
        #[test]
        fn general_cubic_has_the_resolvent_roots(
            r in prop::array::uniform4(-9i64..=9),
            uv in (-20i64..=20, -20i64..=20),
        ) {
            let k = QuadField::new(-7).unwrap();
            let [r1, r2, r3, r4] = r;
            let e1 = r1 + r2 + r3 + r4;
            let e2 = r1 * r2 + r1 * r3 + r1 * r4 + r2 * r3 + r2 * r4 + r3 * r4;
            let e3 = r1 * r2 * r3 + r1 * r2 * r4 + r1 * r3 * r4 + r2 * r3 * r4;
            let e4 = r1 * r2 * r3 * r4;
            let forms = general_resolvent_forms(&k.int(-e1), &k.int(e2), &k.int(-e3), &k.int(e4));
            let (u, v) = uv;
            let expected: i64 = [r1 * r2 + r3 * r4, r1 * r3 + r2 * r4, r1 * r4 + r2 * r3]
                .iter()
                .map(|t| u - t * v)
                .product();
            prop_assert_eq!(forms.cubic.eval(&k.int(u), &k.int(v)), k.int(expected));
        }
    }

    #[test]
    fn initial_bound_values() {
        let p = field_params(-1, 3).unwrap();
        let small = initial_bound::<f64>(&p, &BigInt::from(10_000), ());
        let expected = 2.0 / 3f64.sqrt() * (2.0f64 * 2.0 * 1e4).sqrt();
        assert!((small - expected).abs() < 1e-6, "{small} vs {expected}");
        assert!((small - 230.94).abs() < 0.01);
        let prec = BigFixed::bits_for_digits(250);
        let big = initial_bound::<BigFixed>(&p, &BigInt::from(10).pow(200), prec);
        let digits = big.floor_to_bigint().to_string().len();
        assert_eq!(digits, 101, "bound should be of magnitude 10^100");
        let scaled = initial_bound::<BigFixed>(&p, &BigInt::from(1_000_000), prec).to_f64();
        assert!((scaled / small - 10.0).abs() < 1e-9);
    }

    #[test]
    fn case_constant_sanity() {
        let (p, e) = setup(-1, 3);
        let factor = 2.0 / 3f64.sqrt();
        for i0 in 1..=4 {
            let (c1, c2) = case_constants(&p, &e, i0).unwrap();
            let c1 = c1.to_f64();
            assert!(c1 >= factor);
            assert!((c1 - factor * (1.0 + e.alpha_size.to_f64())).abs() < 1e-9);
            let size = e.alpha_size.to_f64();
            assert!(c2.to_f64() > c1.powi(3) / (2.0 * size).powi(3));
        }
        assert!(case_constants(&p, &e, 0).is_err());
    }

    #[test]
    fn lattice_shape() {
        let (_, e) = setup(-9, 23);
        let h = BigInt::from(10).pow(40);
        let l = build_reduction_lattice(&e, 2, &h).unwrap();
        let cols = l.columns();
        for (k, col) in cols.iter().enumerate() {
            for r in 0..4 {
                assert_eq!(col[r], BigInt::from(u8::from(r == k)));
            }
        }
        assert_eq!(cols[0][4], h);
        assert!(cols[0][5].is_zero());
        // Re(ω) = 1/2
        assert_eq!(cols[1][4], BigInt::from(10).pow(40) / 2);
        let l2 = build_reduction_lattice(&e, 2, &(&h * 1000)).unwrap();
        for k in 1..4 {
            let ratio = l2.columns()[k][5].to_f64().unwrap() / cols[k][5].to_f64().unwrap();
            assert!((ratio - 1000.0).abs() < 1e-6);
        }
    }

    #[test]
    fn lattice_rejects_insufficient_precision() {
        let p = field_params(-9, 23).unwrap();
        let e = embeddings::<f64>(&p, ());
        assert!(build_reduction_lattice(&e, 1, &BigInt::from(1000)).is_ok());
        assert!(matches!(
            build_reduction_lattice(&e, 1, &BigInt::from(10).pow(30)),
            Err(Error::PrecisionExhausted(_))
        ));
    }

    #[test]
    fn reduction_from_ten_to_the_hundred() {
        let (p, e) = setup(-9, 23);
        let a0 = BigInt::from(10).pow(100);
        for i0 in 1..=4 {
            let st = reduce_loop(&p, &e, i0, &a0).unwrap();
            assert!(st.history.len() <= 12, "{} steps", st.history.len());
            assert!(st.a0 < BigInt::from(200), "final {}", st.a0);
            for w in st.history.windows(2) {
                assert!(w[1].a0 <= w[0].a0);
                assert_eq!(w[1].a0, w[0].new_a0.clone().min(w[0].a0.clone()));
            }
            let first = st.history[0].new_a0.to_f64().unwrap();
            assert!(first > 1e32 && first < 1e36, "{first:e}");
        }
        let again = reduce_loop(&p, &e, 3, &a0).unwrap();
        assert_eq!(again.history, reduce_loop(&p, &e, 3, &a0).unwrap().history);
    }

    #[test]
    fn well_separated_case_reduces_below_fifteen() {
        let (p, e) = setup(-1, 22);
        let st = reduce_loop(&p, &e, 1, &BigInt::from(10).pow(100)).unwrap();
        assert!(st.a0 <= BigInt::from(15));
        assert!(st.history.len() <= 12);
    }

    #[test]
    fn trivial_solutions_and_units() {
        let p = field_params(-1, 3).unwrap();
        let k = p.field;
        let s = ThueSolution::new(&p.delta, k.zero(), k.one()).unwrap();
        assert_eq!(s.eps, k.one());
        assert_eq!((s.x.clone(), s.y.clone(), s.z.clone()), (-&p.delta, k.zero(), k.one()));
        assert!(s.verify(&p));
        let s = ThueSolution::new(&p.delta, k.one(), k.zero()).unwrap();
        assert_eq!((s.x.clone(), s.y.clone(), s.z.clone()), (k.one(), k.zero(), k.zero()));
        // m = −3: F(0, ω) = ω⁴ = −ω
        let s = ThueSolution::new(&p.delta, k.zero(), k.omega()).unwrap();
        assert_eq!(s.eps, k.elt(0, -1));
        assert!(s.verify(&p));
        assert!(ThueSolution::new(&p.delta, k.int(2), k.one()).is_none());
    }

    #[test]
    fn enumeration_finds_only_verified_solutions() {
        let (p, e) = setup(-9, 23);
        let sols = enumerate_solutions(&p, &e, &BigInt::from(3)).unwrap();
        let k = p.field;
        assert!(sols.iter().all(|s| s.verify(&p)));
        let has = |pp: QuadElt, qq: QuadElt| sols.iter().any(|s| s.p == pp && s.q == qq);
        assert!(has(k.zero(), k.one()));
        assert!(has(k.one(), k.zero()));
        assert!(has(k.zero(), k.omega()));
    }
}
