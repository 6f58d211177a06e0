//! Special functions and quadrature primitives: Hankel functions of complex
//! argument, Legendre polynomials, and Gauss-Legendre rules.

use crate::dd::{Cdd, Dd, DD_GAMMA, DD_PI_2};
use num_complex::Complex64;
use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpecFunError {
    #[error("Hankel function argument must be nonzero (logarithmic singularity at z = 0)")]
    ZeroArgument,
    #[error("quadrature rule needs at least one node")]
    EmptyRule,
}

const DD_FRAC_2_PI: Dd = Dd::new(0.6366197723675814, -3.935735335036497e-17);

/// Radius below which the ascending series is used; above it the large-|z|
/// Hankel expansion has converged well past 1e-15. The series side is
/// evaluated in double-double precision, which absorbs the cancellation of
/// the alternating sums up to this radius.
const SERIES_RADIUS: f64 = 20.0;

/// Hankel function of the first kind, order zero.
pub fn hankel1_0(z: Complex64) -> Result<Complex64, SpecFunError> {
    Ok(hankel1_pair(z)?.0)
}

/// Hankel function of the first kind, order one.
pub fn hankel1_1(z: Complex64) -> Result<Complex64, SpecFunError> {
    Ok(hankel1_pair(z)?.1)
}

/// Both H_0^(1)(z) and H_1^(1)(z); they share most of the work.
pub fn hankel1_pair(z: Complex64) -> Result<(Complex64, Complex64), SpecFunError> {
    if z.re == 0.0 && z.im == 0.0 {
        return Err(SpecFunError::ZeroArgument);
    }
    if z.norm() <= SERIES_RADIUS {
        Ok(hankel_series(z))
    } else {
        Ok((hankel_asymptotic(z, 0), hankel_asymptotic(z, 1)))
    }
}

/// Ascending series for H_0, H_1 in double-double precision.
///
/// With L = ln(z/2) + gamma:
///   H_0 = (2i/pi) [ (L - i pi/2) J_0(z) + S_0(z) ]
///   H_1 = (2i/pi) [ (L - i pi/2) J_1(z) - 1/z - S_1(z) ]
/// where S_0 = sum_{m>=1} (-1)^{m+1} h_m (z^2/4)^m / (m!)^2 and
/// S_1 = (z/4) sum_{m>=0} (-1)^m (h_m + h_{m+1}) (z^2/4)^m / (m!(m+1)!),
/// h_m the harmonic numbers. Everything that can cancel for Im z > 0 is
/// accumulated in extended precision before rounding once at the end.
fn hankel_series(z: Complex64) -> (Complex64, Complex64) {
    let zd = Cdd::from_f64(z.re, z.im);
    let w = zd.div_f64(2.0);
    let w2 = w.mul(w);
    let neg_w2 = Cdd::new(w2.re.neg(), w2.im.neg());

    // J0 and S0
    let mut t = Cdd::from_f64(1.0, 0.0); // (-1)^m (z^2/4)^m / (m!)^2
    let mut j0 = t;
    let mut s0 = Cdd::default();
    // J1/w and the S1 sum
    let mut u = Cdd::from_f64(1.0, 0.0); // (-1)^m (z^2/4)^m / (m!(m+1)!)
    let mut j1s = u;
    let mut h = Dd::default(); // h_m
    let mut s1s = u.mul_dd(Dd::from_f64(1.0)); // (h_0 + h_1) = 1 at m = 0
    let scale = t.norm_hi().max(1.0);
    for m in 1..120 {
        let mf = m as f64;
        t = t.mul(neg_w2).div_f64(mf * mf);
        h = h.add_f64(1.0 / mf);
        j0 = j0.add(t);
        s0 = s0.add(t.mul_dd(h).mul_dd(Dd::from_f64(-1.0)));

        u = u.mul(neg_w2).div_f64(mf * (mf + 1.0));
        j1s = j1s.add(u);
        let h_next = h.add_f64(1.0 / (mf + 1.0));
        s1s = s1s.add(u.mul_dd(h.add(h_next)));

        if t.norm_hi() < 1e-35 * scale && u.norm_hi() < 1e-35 * scale {
            break;
        }
    }
    let j1 = w.mul(j1s);
    let s1 = w.div_f64(2.0).mul(s1s);

    // L - i pi/2 in double-double
    let m2 = w.re.sqr().add(w.im.sqr());
    let ln_abs = m2.ln().mul_f64(0.5);
    let arg = Dd::atan2(w.im, w.re);
    let l = Cdd::new(ln_abs.add(DD_GAMMA), arg.sub(DD_PI_2));

    // 1/z
    let zn = zd.re.sqr().add(zd.im.sqr());
    let inv_z = Cdd::new(zd.re.div(zn), zd.im.neg().div(zn));

    let b0 = l.mul(j0).add(s0);
    let b1 = l.mul(j1).sub(inv_z).sub(s1);
    let mul_2i_pi = |c: Cdd| -> Complex64 {
        let re = c.im.neg().mul(DD_FRAC_2_PI);
        let im = c.re.mul(DD_FRAC_2_PI);
        Complex64::new(re.to_f64(), im.to_f64())
    };
    (mul_2i_pi(b0), mul_2i_pi(b1))
}

/// Large-argument Hankel expansion (DLMF 10.17.5); valid here for |z| > 20
/// where the smallest term is far below f64 resolution.
fn hankel_asymptotic(z: Complex64, nu: u32) -> Complex64 {
    let i = Complex64::new(0.0, 1.0);
    let nu2 = 4.0 * (nu * nu) as f64;
    let omega = z - (nu as f64) * std::f64::consts::FRAC_PI_2 - std::f64::consts::FRAC_PI_4;
    let prefactor = (Complex64::new(2.0 / std::f64::consts::PI, 0.0) / z).sqrt() * (i * omega).exp();
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut prev = f64::INFINITY;
    for k in 0..60u32 {
        let odd = (2 * k + 1) as f64;
        term = term * i * Complex64::new(nu2 - odd * odd, 0.0) / (8.0 * (k as f64 + 1.0) * z);
        let mag = term.norm();
        if mag >= prev {
            break;
        }
        sum += term;
        prev = mag;
        if mag < 1e-18 * sum.norm() {
            break;
        }
    }
    prefactor * sum
}

/// Gauss–Legendre rule on [-1, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl QuadratureRule {
    /// Integrate `f` over [a, b].
    pub fn integrate<T, F>(&self, a: f64, b: f64, mut f: F) -> T
    where
        T: std::ops::Add<Output = T> + std::ops::Mul<f64, Output = T> + Default,
        F: FnMut(f64) -> T,
    {
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        let mut acc = T::default();
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc = acc + f(mid + half * x) * (w * half);
        }
        acc
    }
}

fn gauss_legendre_compute(n: usize) -> QuadratureRule {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = (n + 1) / 2;
    for i in 0..m {
        // Tricomi-style initial guess, then Newton on P_n to 1e-15
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut pp = 1.0;
        for _ in 0..100 {
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            pp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / pp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        if n % 2 == 1 && i == m - 1 {
            x = 0.0;
        }
        nodes[i] = -x;
        weights[i] = 2.0 / ((1.0 - x * x) * pp * pp);
        nodes[n - 1 - i] = x;
        weights[n - 1 - i] = weights[i];
    }
    QuadratureRule { nodes, weights }
}

static GAUSS_CACHE: OnceLock<RwLock<HashMap<usize, Arc<QuadratureRule>>>> = OnceLock::new();

/// Cached Gauss–Legendre rule with `n` nodes.
pub fn gauss_legendre(n: usize) -> Result<Arc<QuadratureRule>, SpecFunError> {
    if n == 0 {
        return Err(SpecFunError::EmptyRule);
    }
    let cache = GAUSS_CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(rule) = cache.read().unwrap().get(&n) {
        return Ok(rule.clone());
    }
    let rule = Arc::new(gauss_legendre_compute(n));
    cache.write().unwrap().insert(n, rule.clone());
    Ok(rule)
}

/// Legendre polynomial L_m(x) by the three-term recurrence.
pub fn legendre(m: usize, x: f64) -> f64 {
    let mut p0 = 1.0;
    if m == 0 {
        return p0;
    }
    let mut p1 = x;
    for k in 2..=m {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    p1
}

/// Fill `out[0..=m]` with L_0(x) .. L_m(x).
pub fn legendre_all(m: usize, x: f64, out: &mut [f64]) {
    debug_assert!(out.len() > m);
    out[0] = 1.0;
    if m == 0 {
        return;
    }
    out[1] = x;
    for k in 2..=m {
        let kf = k as f64;
        out[k] = ((2.0 * kf - 1.0) * x * out[k - 1] - (kf - 1.0) * out[k - 2]) / kf;
    }
}
