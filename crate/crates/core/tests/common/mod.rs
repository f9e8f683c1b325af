//! Shared oracles and generators for the integration suites.
//!
//! Everything here is deliberately independent of the library's own
//! computation paths: the square-root oracle solves the coefficient
//! equations directly, and the generators build structured inputs from
//! explicit factors.

#![allow(dead_code)]

use rand::Rng;
use sliceregular::{Quaternion, QuaternionPolynomial, SliceFunction};

/// Decides whether `h` equals `f^2` for some real-coefficient polynomial
/// `f`, by exact coefficient elimination: the top half of the coefficient
/// equations determines the candidate (up to global sign) triangularly, the
/// bottom half is the feasibility check.
pub fn square_root_feasible(h: &[f64], tol: f64) -> bool {
    let mut coeffs = h.to_vec();
    while coeffs.last().is_some_and(|c| *c == 0.0) {
        coeffs.pop();
    }
    if coeffs.is_empty() {
        return true; // 0 = 0^2
    }
    let degree = coeffs.len() - 1;
    if degree % 2 == 1 {
        return false;
    }
    let lead = *coeffs.last().unwrap();
    if lead < 0.0 {
        return false;
    }
    let half = degree / 2;
    let mut c = vec![0.0; half + 1];
    c[half] = lead.sqrt();
    for k in (0..half).rev() {
        // h[k + half] = 2 c[k] c[half] + sum of products of already-known
        // coefficients with indices strictly between k and half.
        let n = k + half;
        let mut known = 0.0;
        for i in (k + 1)..=half.min(n) {
            let j = n - i;
            if j > half || j <= k {
                continue;
            }
            known += c[i] * c[j];
        }
        c[k] = (coeffs[n] - known) / (2.0 * c[half]);
    }
    // Verify the full convolution.
    let mut square = vec![0.0; degree + 1];
    for (i, &a) in c.iter().enumerate() {
        for (j, &b) in c.iter().enumerate() {
            square[i + j] += a * b;
        }
    }
    let scale = 1.0 + coeffs.iter().map(|x| x.abs()).fold(0.0, f64::max);
    coeffs
        .iter()
        .zip(&square)
        .all(|(a, b)| (a - b).abs() <= tol * scale)
}

fn poly_mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Deterministic family of structured real polynomials of degree <= 4:
/// products of linear factors at a few real roots and of irreducible
/// quadratics, under several leading coefficients. At least 200 entries.
pub fn structured_family() -> Vec<Vec<f64>> {
    let real_roots = [0.0, 1.0, -2.0, 3.0];
    let spheres: [[f64; 3]; 2] = [[1.0, 0.0, 1.0], [2.0, -2.0, 1.0]]; // q^2+1, q^2-2q+2
    let mut family = Vec::new();
    for lead in [1.0, -1.0, 2.0] {
        // Exponents for the four real roots and the two quadratics.
        for e0 in 0..=4u32 {
            for e1 in 0..=4u32 {
                for e2 in 0..=4u32 {
                    for e3 in 0..=4u32 {
                        for s0 in 0..=2u32 {
                            for s1 in 0..=2u32 {
                                let degree = e0 + e1 + e2 + e3 + 2 * (s0 + s1);
                                if degree > 4 {
                                    continue;
                                }
                                let mut poly = vec![lead];
                                for (root, e) in real_roots.iter().zip([e0, e1, e2, e3]) {
                                    for _ in 0..e {
                                        poly = poly_mul(&poly, &[-root, 1.0]);
                                    }
                                }
                                for (sphere, s) in spheres.iter().zip([s0, s1]) {
                                    for _ in 0..s {
                                        poly = poly_mul(&poly, sphere);
                                    }
                                }
                                family.push(poly);
                            }
                        }
                    }
                }
            }
        }
    }
    family
}

pub fn random_quaternion<R: Rng>(rng: &mut R, scale: f64) -> Quaternion {
    Quaternion::new(
        rng.gen_range(-scale..=scale),
        rng.gen_range(-scale..=scale),
        rng.gen_range(-scale..=scale),
        rng.gen_range(-scale..=scale),
    )
}

/// Random polynomial of degree <= max_degree with coefficient components in
/// [-scale, scale] (so coefficient norms at most 2 * scale).
pub fn random_poly<R: Rng>(rng: &mut R, max_degree: usize, scale: f64) -> QuaternionPolynomial {
    let degree = rng.gen_range(0..=max_degree);
    let coeffs = (0..=degree)
        .map(|_| random_quaternion(rng, scale))
        .collect();
    QuaternionPolynomial::new(coeffs)
}

pub fn random_fn<R: Rng>(rng: &mut R, max_degree: usize, scale: f64) -> SliceFunction {
    SliceFunction::from_poly(random_poly(rng, max_degree, scale))
}

/// Random real-coefficient polynomial (slice-preserving).
pub fn random_real_poly<R: Rng>(rng: &mut R, max_degree: usize, scale: f64) -> SliceFunction {
    let degree = rng.gen_range(0..=max_degree);
    let coeffs: Vec<f64> = (0..=degree)
        .map(|_| rng.gen_range(-scale..=scale))
        .collect();
    SliceFunction::real_poly(&coeffs)
}

/// Random polynomial with purely imaginary coefficients: a vector part.
pub fn random_vector_poly<R: Rng>(rng: &mut R, max_degree: usize, scale: f64) -> SliceFunction {
    let degree = rng.gen_range(0..=max_degree);
    let coeffs: Vec<Quaternion> = (0..=degree)
        .map(|_| random_quaternion(rng, scale).vec())
        .collect();
    SliceFunction::from_coeffs(coeffs)
}
