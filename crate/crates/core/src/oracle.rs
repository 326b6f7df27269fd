//! Brute-force cross-checks that share no code with the reduction and
//! enumeration pipeline: exhaustive searches over small coefficient boxes.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lll::bareiss_det;
use crate::pib::GeneratorCoeffs;
use crate::polyfield::FieldParams;
use crate::thue::ThueSolution;

/// Default cap on the number of points visited by one search.
pub const MAX_EVALUATIONS: u64 = 100_000_000;

/// A cube `[-radius, radius]^dims` of integer coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBox {
    pub radius: u32,
    pub dims: u32,
}

impl SearchBox {
    pub fn new(radius: u32, dims: u32) -> Result<Self> {
        if radius == 0 {
            return Err(Error::Config("search radius must be at least 1".into()));
        }
        let b = SearchBox { radius, dims };
        if b.size() > MAX_EVALUATIONS {
            return Err(Error::Config(format!(
                "box of radius {radius} in {dims} dimensions has {} points (cap {MAX_EVALUATIONS})",
                b.size()
            )));
        }
        Ok(b)
    }

    /// 4-dimensional `(p₁, p₂, q₁, q₂)` box.
    pub fn thue(radius: u32) -> Result<Self> {
        Self::new(radius, 4)
    }

    /// 7-dimensional `(c₂, x₁, …, z₂)` box.
    pub fn generators(radius: u32) -> Result<Self> {
        Self::new(radius, 7)
    }

    pub fn size(&self) -> u64 {
        (2 * u64::from(self.radius) + 1).saturating_pow(self.dims)
    }

    pub fn contains(&self, coords: &[i64]) -> bool {
        coords.iter().all(|c| c.unsigned_abs() <= u64::from(self.radius))
    }
}

/// `u + vω` with `ω² = ω + w`, `w = (m−1)/4`.
#[derive(Clone, Copy, PartialEq, Eq)]
struct Small(i128, i128);

impl Small {
    fn mul(self, o: Small, w: i128) -> Small {
        Small(self.0 * o.0 + self.1 * o.1 * w, self.0 * o.1 + self.1 * o.0 + self.1 * o.1)
    }
    fn add(self, o: Small) -> Small {
        Small(self.0 + o.0, self.1 + o.1)
    }
    fn neg(self) -> Small {
        Small(-self.0, -self.1)
    }
    fn norm(self, w: i128) -> i128 {
        self.0 * self.0 + self.0 * self.1 - self.1 * self.1 * w
    }
}

/// All `(P, Q)` with coordinates in `[-radius, radius]` and `F(P, Q)` a unit,
/// ordered lexicographically by `(p₁, p₂, q₁, q₂)`.
pub fn brute_thue(p: &FieldParams, radius: u32) -> Result<Vec<ThueSolution>> {
    let bx = SearchBox::thue(radius)?;
    let r = i128::from(bx.radius);
    let w = i128::from((p.m - 1) / 4);
    let delta = Small(i128::from(-(p.a + 1) / 2), 1);
    let hits: Vec<[i64; 4]> = (-r..=r)
        .into_par_iter()
        .flat_map_iter(|p1| {
            let mut local = Vec::new();
            for p2 in -r..=r {
                let pp = Small(p1, p2);
                let p_sq = pp.mul(pp, w);
                let p_four = p_sq.mul(p_sq, w);
                for q1 in -r..=r {
                    for q2 in -r..=r {
                        let qq = Small(q1, q2);
                        let q_sq = qq.mul(qq, w);
                        let value = p_four
                            .add(delta.mul(p_sq, w).mul(q_sq, w).neg())
                            .add(q_sq.mul(q_sq, w));
                        if value.norm(w) == 1 {
                            local.push([p1, p2, q1, q2].map(|c| c as i64));
                        }
                    }
                }
            }
            local
        })
        .collect();
    let mut hits = hits;
    hits.sort();
    let k = p.field;
    hits.into_iter()
        .map(|[p1, p2, q1, q2]| {
            ThueSolution::new(&p.delta, k.elt(p1, p2), k.elt(q1, q2))
                .ok_or_else(|| Error::Precondition("oracle hit is not a unit solution".into()))
        })
        .collect()
}

/// Roots of a monic polynomial (lowest degree first) by Weierstrass-Durand-Kerner
/// iteration.
fn durand_kerner(coeffs: &[f64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    let eval = |z: Complex64| coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c);
    let seed = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32)).collect();
    for _ in 0..500 {
        let mut delta = 0.0f64;
        for i in 0..n {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    denom *= roots[i] - roots[j];
                }
            }
            let step = eval(roots[i]) / denom;
            roots[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-15 {
            break;
        }
    }
    roots
}

/// Remainder of `g` modulo the monic polynomial `f`.
fn rem_monic(mut g: Vec<BigInt>, f: &[BigInt]) -> Vec<BigInt> {
    let n = f.len() - 1;
    while g.len() > n {
        let top = g.pop().expect("nonempty");
        if top.is_zero() {
            continue;
        }
        let shift = g.len() - n;
        for (i, fc) in f.iter().take(n).enumerate() {
            g[shift + i] -= &top * fc;
        }
    }
    g.resize(n, BigInt::zero());
    g
}

fn mul_mod(a: &[BigInt], b: &[BigInt], f: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    rem_monic(out, f)
}

/// Exact index `(Z[α] : Z[γ])`, with `γ` written in the power basis of `α`.
///
/// Here `ω = δ + (a+1)/2` and `δ = α² + α⁻² = −α⁶ − aα⁴ + (1−b)α² − a`.
pub fn exact_index(p: &FieldParams, g: &GeneratorCoeffs) -> BigInt {
    let (a, b) = (p.a, p.b);
    let f: Vec<BigInt> = [1, 0, a, 0, b, 0, a, 0, 1].iter().map(|&c| BigInt::from(c)).collect();
    let mut omega = vec![BigInt::zero(); 8];
    omega[0] = BigInt::from(-a + (a + 1) / 2);
    omega[2] = BigInt::from(1 - b);
    omega[4] = BigInt::from(-a);
    omega[6] = BigInt::from(-1);
    let coord = |u: i64, v: i64| -> Vec<BigInt> {
        let mut out: Vec<BigInt> = omega.iter().map(|c| c * v).collect();
        out[0] += u;
        out
    };
    let c = g.0;
    let terms = [coord(0, c[0]), coord(c[1], c[2]), coord(c[3], c[4]), coord(c[5], c[6])];
    let mut gamma = vec![BigInt::zero(); 8];
    let mut power = vec![BigInt::zero(); 8];
    power[0] = BigInt::one();
    for t in &terms {
        let contrib = mul_mod(t, &power, &f);
        for (x, y) in gamma.iter_mut().zip(contrib) {
            *x += y;
        }
        let mut alpha = vec![BigInt::zero(); 8];
        alpha[1] = BigInt::one();
        power = mul_mod(&power, &alpha, &f);
    }
    let mut rows = Vec::with_capacity(8);
    let mut cur = vec![BigInt::zero(); 8];
    cur[0] = BigInt::one();
    for _ in 0..8 {
        rows.push(cur.clone());
        cur = mul_mod(&cur, &gamma, &f);
    }
    bareiss_det(rows).abs()
}

/// Index of `γ` from `f64` conjugates; used only to screen candidates.
struct Screen {
    roots: Vec<Complex64>,
    omegas: Vec<Complex64>,
    sqrt_disc: f64,
}

impl Screen {
    fn new(p: &FieldParams) -> Self {
        let (a, b) = (p.a as f64, p.b as f64);
        let roots = durand_kerner(&[1.0, 0.0, a, 0.0, b, 0.0, a, 0.0, 1.0]);
        let shift = ((p.a + 1) / 2) as f64;
        let omegas = roots.iter().map(|t| t * t + 1.0 / (t * t) + shift).collect();
        let mut disc = 1.0f64;
        for i in 0..8 {
            for j in i + 1..8 {
                disc *= (roots[i] - roots[j]).norm();
            }
        }
        Screen {
            roots,
            omegas,
            sqrt_disc: disc,
        }
    }

    fn index(&self, g: &[i64; 7]) -> f64 {
        let [c2, x1, x2, y1, y2, z1, z2] = g.map(|c| c as f64);
        let vals: Vec<Complex64> = self
            .roots
            .iter()
            .zip(&self.omegas)
            .map(|(t, w)| {
                let x = *w * x2 + x1;
                let y = *w * y2 + y1;
                let z = *w * z2 + z1;
                *w * c2 + t * (x + t * (y + t * z))
            })
            .collect();
        let mut prod = 1.0f64;
        for i in 0..8 {
            for j in i + 1..8 {
                prod *= (vals[i] - vals[j]).norm();
            }
        }
        prod / self.sqrt_disc
    }
}

/// Every normalized generator `[c₂, x₁, …, z₂]` with all entries in
/// `[-radius, radius]`, sorted lexicographically.
pub fn brute_generators(p: &FieldParams, radius: u32) -> Result<Vec<GeneratorCoeffs>> {
    let bx = SearchBox::generators(radius)?;
    let screen = Screen::new(p);
    let r = i64::from(bx.radius);
    let side = (2 * r + 1) as u64;
    let inner = side.pow(5);
    let mut found: Vec<GeneratorCoeffs> = (-r..=r)
        .into_par_iter()
        .flat_map_iter(|c2| {
            let screen = &screen;
            (-r..=r).flat_map(move |x1| {
                (0..inner).filter_map(move |mut idx| {
                    let mut g = [c2, x1, 0, 0, 0, 0, 0];
                    for slot in g.iter_mut().skip(2) {
                        *slot = (idx % side) as i64 - r;
                        idx /= side;
                    }
                    let gc = GeneratorCoeffs(g);
                    // each ± pair is visited twice; keep the normalized one
                    if gc.is_zero() || gc.normalize() != gc {
                        return None;
                    }
                    let i = screen.index(&g);
                    (i > 0.5 && i < 1.5).then_some(gc)
                })
            })
        })
        .collect();
    found.retain(|g| exact_index(p, g).is_one());
    found.sort();
    Ok(found)
}
