//! Entire scalar series shared by the closed-form evaluators.
//!
//! `mu(s) = sum_m (-1)^m s^m / (2m)!` and
//! `nu(s) = sum_m (-1)^m s^m / (2m+1)!` are the cosine-type and sinc-type
//! coefficients of the scalar/vector exponential split; `cosh_pair` gives
//! the sign-flipped variants used by the closed trigonometric forms. All are
//! evaluated on complex arguments (the central copy of C in the stem
//! algebra, or a slice `C_J`).

use num_complex::Complex64;

/// Compensated complex accumulator.
#[derive(Clone, Copy, Default)]
struct Kahan {
    sum: Complex64,
    carry: Complex64,
}

impl Kahan {
    fn add(&mut self, term: Complex64) {
        let y = term - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }
}

/// Summation cap; generous since the terms decay factorially once
/// `(2m)(2m+1) > |s|`.
const MAX_TERMS: u32 = 400;

/// Convergence target relative to the running magnitude.
const TERM_EPS: f64 = 1e-17;

fn even_odd_series(s: Complex64) -> (Complex64, Complex64) {
    let mut even = Kahan::default();
    let mut odd = Kahan::default();
    // a_m = (-1)^m s^m / (2m)!, b_m = (-1)^m s^m / (2m+1)!
    let mut a = Complex64::new(1.0, 0.0);
    let mut b = Complex64::new(1.0, 0.0);
    for m in 0..MAX_TERMS {
        even.add(a);
        odd.add(b);
        let m = m as f64;
        a *= -s / ((2.0 * m + 1.0) * (2.0 * m + 2.0));
        b *= -s / ((2.0 * m + 2.0) * (2.0 * m + 3.0));
        let scale = 1.0 + even.sum.norm() + odd.sum.norm();
        if a.norm() + b.norm() < TERM_EPS * scale && s.norm() < (2.0 * m + 2.0) * (2.0 * m + 3.0) {
            break;
        }
    }
    (even.sum, odd.sum)
}

/// Above this magnitude the alternating series cancels through terms of
/// size ~cosh(sqrt|s|) and f64 summation degrades; the closed trigonometric
/// identities take over there.
const SERIES_LIMIT: f64 = 30.0;

/// `(mu(s), nu(s))`. They satisfy `mu^2 + nu^2 s = 1` and equal
/// `(cos(sqrt s), sin(sqrt s)/sqrt s)` for either branch of the root; both
/// are even in `sqrt s`, so the principal branch is as good as any.
pub fn mu_nu(s: Complex64) -> (Complex64, Complex64) {
    if s.norm() <= SERIES_LIMIT {
        even_odd_series(s)
    } else {
        let w = s.sqrt();
        (w.cos(), sinc(w))
    }
}

/// `(sum_m s^m/(2m)!, sum_m s^m/(2m+1)!)`, i.e. `mu_nu(-s)`; the
/// hyperbolic-type pair with `cosh(sqrt s)` and `sinh(sqrt s)/sqrt s`.
pub fn cosh_pair(s: Complex64) -> (Complex64, Complex64) {
    mu_nu(-s)
}

/// `sin(w)/w`, continued through the origin by its power series.
pub fn sinc(w: Complex64) -> Complex64 {
    if w.norm() < 1e-2 {
        let s = w * w;
        // 1 - s/6 + s^2/120 - s^3/5040; next term is ~1e-22 at |w| = 1e-2.
        Complex64::new(1.0, 0.0) - s / 6.0 + s * s / 120.0 - s * s * s / 5040.0
    } else {
        w.sin() / w
    }
}
