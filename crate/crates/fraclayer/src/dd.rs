//! Minimal double-double (~31 significant digits) arithmetic.
//!
//! The power series of the convection layer profile loses up to twelve
//! digits to cancellation near the upper end of its usable range (terms grow
//! like `e^xi` while the sum stays `O(sqrt(xi))`), so the series oracle
//! accumulates in a hi/lo pair instead of a single f64. Only the handful of
//! operations that the series needs are implemented.

/// Unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    // requires |a| >= |b|
    let s = a + b;
    let e = b - (s - a);
    (s, e)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let e = a.mul_add(b, -p);
    (p, e)
}

impl Dd {
    #[inline]
    pub fn new(hi: f64, lo: f64) -> Self {
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
    pub fn add(self, other: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, other.hi);
        let e = e + self.lo + other.lo;
        let (hi, lo) = quick_two_sum(s, e);
        Dd { hi, lo }
    }

    #[inline]
    pub fn sub(self, other: Dd) -> Dd {
        self.add(Dd::new(-other.hi, -other.lo))
    }

    #[inline]
    pub fn mul_f64(self, x: f64) -> Dd {
        let (p, e) = two_prod(self.hi, x);
        let e = e + self.lo * x;
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    #[inline]
    pub fn mul(self, other: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, other.hi);
        let e = e + self.hi * other.lo + self.lo * other.hi;
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    /// Division by an ordinary double (one Newton correction).
    #[inline]
    pub fn div_f64(self, x: f64) -> Dd {
        let q0 = self.hi / x;
        let (p, e) = two_prod(q0, x);
        let r = (self.hi - p) - e + self.lo;
        let q1 = r / x;
        let (hi, lo) = quick_two_sum(q0, q1);
        Dd { hi, lo }
    }

    /// Full double-double division.
    #[inline]
    pub fn div(self, other: Dd) -> Dd {
        let q0 = self.hi / other.hi;
        let r = self.sub(other.mul_f64(q0));
        let q1 = r.hi / other.hi;
        let r2 = r.sub(other.mul_f64(q1));
        let q2 = r2.hi / other.hi;
        let (s, e) = quick_two_sum(q0, q1);
        let (hi, lo) = quick_two_sum(s, e + q2);
        Dd { hi, lo }
    }
}

/// `sqrt(x)` to double-double accuracy (one Newton step off the f64 root).
pub(crate) fn dd_sqrt(x: f64) -> Dd {
    if x == 0.0 {
        return Dd::from_f64(0.0);
    }
    let r = x.sqrt();
    let (p, e) = two_prod(r, r);
    // x - r^2 exactly, then one Newton correction r + (x - r^2)/(2r)
    let diff = (x - p) - e;
    let lo = diff / (2.0 * r);
    let (hi, lo) = quick_two_sum(r, lo);
    Dd { hi, lo }
}
