//! Double-double arithmetic used internally by the special-function kernels.
//!
//! A value is represented as an unevaluated sum `hi + lo` of two `f64`s,
//! giving roughly 32 significant decimal digits. Only the operations needed
//! by the Bessel/Hankel series are implemented.

/// Unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    // requires |a| >= |b|
    let s = a + b;
    let err = b - (s - a);
    (s, err)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let err = a.mul_add(b, -p);
    (p, err)
}

pub(crate) const DD_GAMMA: Dd = Dd::new(0.5772156649015329, -4.942915152430645e-18);
pub(crate) const DD_PI: Dd = Dd::new(3.141592653589793, 1.2246467991473532e-16);
pub(crate) const DD_LN2: Dd = Dd::new(0.6931471805599453, 2.3190468138462996e-17);
pub(crate) const DD_PI_2: Dd = Dd::new(1.5707963267948966, 6.123233995736766e-17);

impl Dd {
    #[inline]
    pub const fn new(hi: f64, lo: f64) -> Self {
        Dd { hi, lo }
    }

    #[inline]
    pub fn from_f64(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn add(self, rhs: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, rhs.hi);
        let s2 = s2 + self.lo + rhs.lo;
        let (hi, lo) = quick_two_sum(s1, s2);
        Dd { hi, lo }
    }

    #[inline]
    pub fn add_f64(self, rhs: f64) -> Dd {
        let (s1, s2) = two_sum(self.hi, rhs);
        let s2 = s2 + self.lo;
        let (hi, lo) = quick_two_sum(s1, s2);
        Dd { hi, lo }
    }

    #[inline]
    pub fn sub(self, rhs: Dd) -> Dd {
        self.add(rhs.neg())
    }

    #[inline]
    pub fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }

    #[inline]
    pub fn mul(self, rhs: Dd) -> Dd {
        let (p1, p2) = two_prod(self.hi, rhs.hi);
        let p2 = p2 + self.hi * rhs.lo + self.lo * rhs.hi;
        let (hi, lo) = quick_two_sum(p1, p2);
        Dd { hi, lo }
    }

    #[inline]
    pub fn mul_f64(self, rhs: f64) -> Dd {
        let (p1, p2) = two_prod(self.hi, rhs);
        let p2 = p2 + self.lo * rhs;
        let (hi, lo) = quick_two_sum(p1, p2);
        Dd { hi, lo }
    }

    #[inline]
    pub fn div(self, rhs: Dd) -> Dd {
        let q1 = self.hi / rhs.hi;
        let r = self.sub(rhs.mul_f64(q1));
        let q2 = r.hi / rhs.hi;
        let r = r.sub(rhs.mul_f64(q2));
        let q3 = r.hi / rhs.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo }.add_f64(q3)
    }

    #[inline]
    pub fn div_f64(self, rhs: f64) -> Dd {
        self.div(Dd::from_f64(rhs))
    }

    #[inline]
    pub fn sqr(self) -> Dd {
        self.mul(self)
    }

    #[inline]
    pub fn abs(self) -> Dd {
        if self.hi < 0.0 {
            self.neg()
        } else {
            self
        }
    }

    /// exp(x) by argument reduction `x = k ln2 + r` and a Taylor series in `r`.
    pub fn exp(self) -> Dd {
        if self.hi.abs() > 709.0 {
            return Dd::from_f64(self.hi.exp());
        }
        let k = (self.to_f64() / DD_LN2.hi).round();
        let r = self.sub(DD_LN2.mul_f64(k));
        // |r| <= ln2/2; Taylor converges with term < 1e-35 by n ~ 26
        let mut sum = Dd::from_f64(1.0).add(r);
        let mut term = r;
        for n in 2..30 {
            term = term.mul(r).div_f64(n as f64);
            sum = sum.add(term);
            if term.hi.abs() < 1e-35 * sum.hi.abs() {
                break;
            }
        }
        let scale = (k as i32).into();
        sum.ldexp(scale)
    }

    #[inline]
    fn ldexp(self, k: i64) -> Dd {
        let f = f64::powi(2.0, k as i32);
        Dd { hi: self.hi * f, lo: self.lo * f }
    }

    /// ln(x) refined from the f64 seed with one correction step.
    pub fn ln(self) -> Dd {
        debug_assert!(self.hi > 0.0);
        let y0 = self.hi.ln();
        // ln(x) = y0 + ln(x e^{-y0}); the argument is 1 + O(1e-16)
        let u = self.mul(Dd::from_f64(-y0).exp());
        let d = u.add_f64(-1.0);
        // ln(1+d) ~ d - d^2/2 suffices at this size
        let corr = d.sub(d.sqr().div_f64(2.0));
        Dd::from_f64(y0).add(corr)
    }

    /// Simultaneous sin/cos via reduction modulo pi/2 and Taylor series.
    pub fn sin_cos(self) -> (Dd, Dd) {
        let q = (self.to_f64() / DD_PI_2.hi).round();
        let r = self.sub(DD_PI_2.mul_f64(q));
        let (s, c) = r.sin_cos_reduced();
        match (q as i64).rem_euclid(4) {
            0 => (s, c),
            1 => (c, s.neg()),
            2 => (s.neg(), c.neg()),
            _ => (c.neg(), s),
        }
    }

    fn sin_cos_reduced(self) -> (Dd, Dd) {
        // |x| <= pi/4 + eps
        let x2 = self.sqr();
        let mut s = self;
        let mut term = self;
        let mut n = 1.0;
        for _ in 0..20 {
            term = term.mul(x2).div_f64(-((n + 1.0) * (n + 2.0)));
            s = s.add(term);
            n += 2.0;
            if term.hi.abs() < 1e-35 {
                break;
            }
        }
        let mut c = Dd::from_f64(1.0);
        let mut term = Dd::from_f64(1.0);
        let mut n = 0.0;
        for _ in 0..20 {
            term = term.mul(x2).div_f64(-((n + 1.0) * (n + 2.0)));
            c = c.add(term);
            n += 2.0;
            if term.hi.abs() < 1e-35 {
                break;
            }
        }
        (s, c)
    }

    /// atan2(y, x) refined from the f64 seed by one Newton step.
    pub fn atan2(y: Dd, x: Dd) -> Dd {
        let t0 = Dd::from_f64(y.to_f64().atan2(x.to_f64()));
        let (s, c) = t0.sin_cos();
        // delta = sin(theta_true - t0) / cos(...) ~ (y c - x s)/(x c + y s)
        let num = y.mul(c).sub(x.mul(s));
        let den = x.mul(c).add(y.mul(s));
        t0.add(num.div(den))
    }
}

/// Complex double-double.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct Cdd {
    pub re: Dd,
    pub im: Dd,
}

impl Cdd {
    #[inline]
    pub fn new(re: Dd, im: Dd) -> Self {
        Cdd { re, im }
    }

    #[inline]
    pub fn from_f64(re: f64, im: f64) -> Self {
        Cdd { re: Dd::from_f64(re), im: Dd::from_f64(im) }
    }

    #[inline]
    pub fn add(self, rhs: Cdd) -> Cdd {
        Cdd { re: self.re.add(rhs.re), im: self.im.add(rhs.im) }
    }

    #[inline]
    pub fn sub(self, rhs: Cdd) -> Cdd {
        Cdd { re: self.re.sub(rhs.re), im: self.im.sub(rhs.im) }
    }

    #[inline]
    pub fn mul(self, rhs: Cdd) -> Cdd {
        Cdd {
            re: self.re.mul(rhs.re).sub(self.im.mul(rhs.im)),
            im: self.re.mul(rhs.im).add(self.im.mul(rhs.re)),
        }
    }

    #[inline]
    pub fn mul_dd(self, rhs: Dd) -> Cdd {
        Cdd { re: self.re.mul(rhs), im: self.im.mul(rhs) }
    }

    #[inline]
    pub fn div_f64(self, rhs: f64) -> Cdd {
        Cdd { re: self.re.div_f64(rhs), im: self.im.div_f64(rhs) }
    }

    #[inline]
    pub fn norm_hi(self) -> f64 {
        self.re.hi.hypot(self.im.hi)
    }

    pub fn to_complex(self) -> num_complex::Complex64 {
        num_complex::Complex64::new(self.re.to_f64(), self.im.to_f64())
    }
}
