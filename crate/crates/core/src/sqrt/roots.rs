//! Simultaneous root finding (Aberth-Ehrlich) for real-coefficient
//! polynomials, with multiplicity recovery.
//!
//! Raw Aberth approximations of an m-fold root scatter on a circle of radius
//! ~eps^(1/m) around it, so multiplicities are recovered by clustering at
//! increasing radii. A clustering is accepted when every cluster size agrees
//! with the analytic multiplicity estimate `p'^2 / (p'^2 - p p'')` near the
//! cluster and the polished roots reproduce the input coefficients; the
//! estimate-free fallback accepts the best-reconstructing clustering.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tol::TAU_CLUSTER;

const MAX_ITERATIONS: u32 = 500;

/// A root of a real polynomial with its multiplicity. Roots with
/// `value.im != 0` come in conjugate pairs; only the `im > 0` member is
/// listed, flagged by `conjugate_pair`.
#[derive(Clone, Copy, Debug)]
pub struct PolyRoot {
    pub value: Complex64,
    pub multiplicity: u32,
    pub conjugate_pair: bool,
}

fn eval(coeffs: &[f64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        acc = acc * z + c;
    }
    acc
}

fn eval_real(coeffs: &[f64], x: f64) -> f64 {
    let mut acc = 0.0;
    for &c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

fn derivative(coeffs: &[f64]) -> Vec<f64> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(n, &c)| n as f64 * c)
        .collect()
}

/// Magnitude scale of `p` near `|z|`, for backward-error stopping.
fn poly_scale(coeffs: &[f64], z_abs: f64) -> f64 {
    let mut scale = 0.0;
    let mut power = 1.0;
    for &c in coeffs {
        scale += c.abs() * power;
        power *= z_abs.max(1e-12);
    }
    scale.max(f64::MIN_POSITIVE)
}

/// Raw Aberth-Ehrlich iteration on a monic coefficient vector.
fn aberth(monic: &[f64]) -> Result<Vec<Complex64>> {
    let degree = monic.len() - 1;
    let deriv = derivative(monic);
    // Initial guesses on a circle inside the Cauchy bound, rotated off the
    // real axis so conjugate symmetry cannot stall the iteration.
    let bound = 1.0
        + monic
            .iter()
            .take(degree)
            .map(|c| c.abs())
            .fold(0.0, f64::max);
    let radius = bound.max(0.5);
    let centroid = -monic[degree - 1] / degree as f64;
    let mut roots: Vec<Complex64> = (0..degree)
        .map(|k| {
            let angle = 2.0 * std::f64::consts::PI * (k as f64 + 0.35) / degree as f64 + 0.4;
            Complex64::new(centroid, 0.0) + Complex64::from_polar(radius, angle)
        })
        .collect();

    let mut stagnant = 0;
    for iteration in 0..MAX_ITERATIONS {
        let mut max_step = 0.0_f64;
        let mut max_rel_residual = 0.0_f64;
        for i in 0..degree {
            let z = roots[i];
            let pz = eval(monic, z);
            max_rel_residual = max_rel_residual.max(pz.norm() / poly_scale(monic, z.norm()));
            let dz = eval(&deriv, z);
            let newton = if dz.norm() == 0.0 {
                // Derivative vanished exactly; nudge instead of dividing.
                Complex64::new(1e-8, 1e-8)
            } else {
                pz / dz
            };
            let mut repulsion = Complex64::new(0.0, 0.0);
            for (j, &other) in roots.iter().enumerate() {
                if j != i {
                    let gap = z - other;
                    if gap.norm() > 1e-300 {
                        repulsion += gap.inv();
                    }
                }
            }
            let denom = Complex64::new(1.0, 0.0) - newton * repulsion;
            let step = if denom.norm() < 1e-12 {
                newton
            } else {
                newton / denom
            };
            roots[i] = z - step;
            max_step = max_step.max(step.norm() / (1.0 + z.norm()));
        }
        if max_rel_residual < 1e-13 {
            return Ok(roots);
        }
        stagnant = if max_step < 1e-14 { stagnant + 1 } else { 0 };
        if stagnant >= 3 {
            return Ok(roots);
        }
        let _ = iteration;
    }
    // Multiple roots converge slowly; accept what we have if the backward
    // error is still reasonable, otherwise report divergence.
    let worst = roots
        .iter()
        .map(|&z| eval(monic, z).norm() / poly_scale(monic, z.norm()))
        .fold(0.0, f64::max);
    if worst < 1e-6 {
        Ok(roots)
    } else {
        Err(Error::RootsDiverged(MAX_ITERATIONS))
    }
}

/// Union-find clustering with relative radius `tau`.
fn cluster(roots: &[Complex64], tau: f64) -> Vec<Vec<Complex64>> {
    let n = roots.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            let root = find(parent, parent[i]);
            parent[i] = root;
        }
        parent[i]
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let scale = 1.0 + roots[i].norm().max(roots[j].norm());
            if (roots[i] - roots[j]).norm() <= tau * scale {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a] = b;
                }
            }
        }
    }
    let mut groups: std::collections::HashMap<usize, Vec<Complex64>> = Default::default();
    for (i, &z) in roots.iter().enumerate() {
        let root = find(&mut parent, i);
        groups.entry(root).or_default().push(z);
    }
    groups.into_values().collect()
}

/// `p'^2 / (p'^2 - p p'')`: exactly the multiplicity at an m-fold root,
/// near-integer close to one. Evaluated a little off the cluster so the
/// polynomial value stays above rounding noise.
fn multiplicity_estimate(
    monic: &[f64],
    deriv: &[f64],
    deriv2: &[f64],
    center: Complex64,
    probe_radius: f64,
    degree: usize,
) -> Option<u32> {
    let z = center + Complex64::new(probe_radius, 0.5 * probe_radius);
    let p = eval(monic, z);
    let dp = eval(deriv, z);
    let ddp = eval(deriv2, z);
    let denom = dp * dp - p * ddp;
    if denom.norm() == 0.0 {
        return None;
    }
    let est = (dp * dp / denom).re;
    if !est.is_finite() {
        return None;
    }
    let rounded = est.round();
    if (est - rounded).abs() <= 0.35 && rounded >= 1.0 && rounded <= degree as f64 {
        Some(rounded as u32)
    } else {
        None
    }
}

struct Candidate {
    roots: Vec<PolyRoot>,
    residual: f64,
    confirmed: bool,
}

/// Multiply out `leading * prod (x - r)^k * prod (x^2 - 2ax + a^2+b^2)^m`.
pub(crate) fn expand(leading: f64, roots: &[PolyRoot]) -> Vec<f64> {
    let mut coeffs = vec![leading];
    let mul = |acc: &[f64], factor: &[f64]| -> Vec<f64> {
        let mut out = vec![0.0; acc.len() + factor.len() - 1];
        for (i, &a) in acc.iter().enumerate() {
            for (j, &b) in factor.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        out
    };
    for root in roots {
        let factor = if root.conjugate_pair {
            let a = root.value.re;
            let b = root.value.im;
            vec![a * a + b * b, -2.0 * a, 1.0]
        } else {
            vec![-root.value.re, 1.0]
        };
        for _ in 0..root.multiplicity {
            coeffs = mul(&coeffs, &factor);
        }
    }
    coeffs
}

fn reconstruction_residual(coeffs: &[f64], roots: &[PolyRoot]) -> f64 {
    let rebuilt = expand(*coeffs.last().unwrap(), roots);
    let scale = 1.0 + coeffs.iter().map(|c| c.abs()).fold(0.0, f64::max);
    let mut residual = 0.0_f64;
    for i in 0..coeffs.len().max(rebuilt.len()) {
        let a = coeffs.get(i).copied().unwrap_or(0.0);
        let b = rebuilt.get(i).copied().unwrap_or(0.0);
        residual = residual.max((a - b).abs());
    }
    residual / scale
}

/// Newton polish on the (m-1)-th derivative, where the m-fold root is
/// simple. Falls back to the input point when the iteration drifts.
fn polish(monic: &[f64], root: Complex64, multiplicity: u32, real_root: bool) -> Complex64 {
    let mut poly = monic.to_vec();
    for _ in 1..multiplicity {
        poly = derivative(&poly);
    }
    let deriv = derivative(&poly);
    if real_root {
        let mut x = root.re;
        for _ in 0..60 {
            let fx = eval_real(&poly, x);
            let dx = eval_real(&deriv, x);
            if dx == 0.0 {
                break;
            }
            let step = fx / dx;
            x -= step;
            if step.abs() <= 1e-16 * (1.0 + x.abs()) {
                break;
            }
        }
        if (x - root.re).abs() <= 0.1 * (1.0 + root.re.abs()) {
            Complex64::new(x, 0.0)
        } else {
            Complex64::new(root.re, 0.0)
        }
    } else {
        let mut z = root;
        for _ in 0..60 {
            let fz = eval(&poly, z);
            let dz = eval(&deriv, z);
            if dz.norm() == 0.0 {
                break;
            }
            let step = fz / dz;
            z -= step;
            if step.norm() <= 1e-16 * (1.0 + z.norm()) {
                break;
            }
        }
        if (z - root).norm() <= 0.1 * (1.0 + root.norm()) {
            z
        } else {
            root
        }
    }
}

/// Builds the candidate root list for one clustering radius.
fn candidate_for_tau(
    coeffs: &[f64],
    monic: &[f64],
    raw: &[Complex64],
    tau: f64,
) -> Option<Candidate> {
    let degree = monic.len() - 1;
    let deriv = derivative(monic);
    let deriv2 = derivative(&deriv);
    let groups = cluster(raw, tau);

    struct Entry {
        center: Complex64,
        size: u32,
        confirmed: bool,
    }
    let mut entries = Vec::new();
    for members in &groups {
        let center = members.iter().sum::<Complex64>() / members.len() as f64;
        let spread = members
            .iter()
            .map(|z| (z - center).norm())
            .fold(0.0, f64::max);
        let probe = 4.0 * spread + 1e-7 * (1.0 + center.norm());
        let estimate = multiplicity_estimate(monic, &deriv, &deriv2, center, probe, degree);
        let size = members.len() as u32;
        entries.push(Entry {
            center,
            size,
            confirmed: estimate == Some(size),
        });
    }

    // Conjugate symmetry: real centers snap to the axis, the rest must match
    // up in +/- imaginary pairs of equal multiplicity.
    let mut out: Vec<PolyRoot> = Vec::new();
    let mut upper: Vec<Entry> = Vec::new();
    let mut lower: Vec<Entry> = Vec::new();
    for e in entries.iter() {
        let scale = 1.0 + e.center.norm();
        if e.center.im.abs() <= tau * scale {
            out.push(PolyRoot {
                value: Complex64::new(e.center.re, 0.0),
                multiplicity: e.size,
                conjugate_pair: false,
            });
        } else if e.center.im > 0.0 {
            upper.push(Entry {
                center: e.center,
                size: e.size,
                confirmed: e.confirmed,
            });
        } else {
            lower.push(Entry {
                center: e.center,
                size: e.size,
                confirmed: e.confirmed,
            });
        }
    }
    if upper.len() != lower.len() {
        return None;
    }
    let mut lower_used = vec![false; lower.len()];
    for up in &upper {
        let mut best: Option<(usize, f64)> = None;
        for (idx, lo) in lower.iter().enumerate() {
            if lower_used[idx] || lo.size != up.size {
                continue;
            }
            let gap = (lo.center.conj() - up.center).norm();
            if best.is_none_or(|(_, g)| gap < g) {
                best = Some((idx, gap));
            }
        }
        let (idx, _) = best?;
        lower_used[idx] = true;
        let paired = (up.center + lower[idx].center.conj()) * 0.5;
        out.push(PolyRoot {
            value: paired,
            multiplicity: up.size,
            conjugate_pair: true,
        });
    }

    let confirmed = entries.iter().all(|e| e.confirmed);
    for root in out.iter_mut() {
        let polished = polish(monic, root.value, root.multiplicity, !root.conjugate_pair);
        root.value = if root.conjugate_pair && polished.im < 0.0 {
            polished.conj()
        } else {
            polished
        };
    }
    let residual = reconstruction_residual(coeffs, &out);
    Some(Candidate {
        roots: out,
        residual,
        confirmed,
    })
}

/// All roots of a real-coefficient polynomial with multiplicities, conjugate
/// pairs merged. `tol_recon` bounds the accepted relative reconstruction
/// residual.
pub fn real_poly_roots(coeffs: &[f64], tol_recon: f64) -> Result<Vec<PolyRoot>> {
    let mut trimmed = coeffs.to_vec();
    while trimmed.last().is_some_and(|c| *c == 0.0) {
        trimmed.pop();
    }
    if trimmed.is_empty() {
        return Err(Error::ZeroPolynomial);
    }
    if trimmed.len() == 1 {
        return Ok(Vec::new());
    }
    let leading = *trimmed.last().unwrap();
    let monic: Vec<f64> = trimmed.iter().map(|c| c / leading).collect();
    let raw = aberth(&monic)?;

    let mut fallback: Option<Candidate> = None;
    let mut tau = TAU_CLUSTER;
    while tau <= 0.2 {
        if let Some(candidate) = candidate_for_tau(&trimmed, &monic, &raw, tau) {
            if candidate.confirmed && candidate.residual <= tol_recon {
                return Ok(candidate.roots);
            }
            if candidate.residual <= tol_recon
                && fallback
                    .as_ref()
                    .is_none_or(|f| candidate.residual < f.residual)
            {
                fallback = Some(candidate);
            }
        }
        tau *= 10.0;
    }
    fallback.map(|c| c.roots).ok_or(Error::ClusteringFailed)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sorted_roots(coeffs: &[f64]) -> Vec<PolyRoot> {
        let mut roots = real_poly_roots(coeffs, 1e-8).unwrap();
        roots.sort_by(|a, b| {
            (a.value.re, a.value.im)
                .partial_cmp(&(b.value.re, b.value.im))
                .unwrap()
        });
        roots
    }

    #[test]
    fn simple_sphere_roots() {
        // q^2 + 1 -> +/- i, simple
        let roots = sorted_roots(&[1.0, 0.0, 1.0]);
        assert_eq!(roots.len(), 1);
        assert!(roots[0].conjugate_pair);
        assert_eq!(roots[0].multiplicity, 1);
        assert!((roots[0].value - Complex64::new(0.0, 1.0)).norm() < 1e-10);
    }

    #[test]
    fn double_real_root() {
        // (q - 1)^2
        let roots = sorted_roots(&[1.0, -2.0, 1.0]);
        assert_eq!(roots.len(), 1);
        assert_eq!(roots[0].multiplicity, 2);
        assert!(!roots[0].conjugate_pair);
        assert!((roots[0].value.re - 1.0).abs() < 1e-9);
    }

    #[test]
    fn doubled_complex_pair() {
        // (q^2 - 2q + 2)^2 -> 1 +/- i, double
        let roots = sorted_roots(&[4.0, -8.0, 8.0, -4.0, 1.0]);
        assert_eq!(roots.len(), 1);
        assert_eq!(roots[0].multiplicity, 2);
        assert!(roots[0].conjugate_pair);
        assert!((roots[0].value - Complex64::new(1.0, 1.0)).norm() < 1e-8);
    }

    #[test]
    fn quadruple_pair() {
        // (q^2 + 1)^4: an 8th-degree polynomial whose raw approximations
        // scatter well beyond the base clustering radius.
        let coeffs = [1.0, 0.0, 4.0, 0.0, 6.0, 0.0, 4.0, 0.0, 1.0];
        let roots = sorted_roots(&coeffs);
        assert_eq!(roots.len(), 1);
        assert_eq!(roots[0].multiplicity, 4);
        assert!((roots[0].value - Complex64::new(0.0, 1.0)).norm() < 1e-8);
    }

    #[test]
    fn eightfold_real_root() {
        // (q - 1)^8
        let mut coeffs = vec![1.0];
        for _ in 0..8 {
            let mut next = vec![0.0; coeffs.len() + 1];
            for (i, &c) in coeffs.iter().enumerate() {
                next[i] += -c;
                next[i + 1] += c;
            }
            coeffs = next;
        }
        let roots = sorted_roots(&coeffs);
        assert_eq!(roots.len(), 1);
        assert_eq!(roots[0].multiplicity, 8);
        assert!((roots[0].value.re - 1.0).abs() < 1e-9);
    }

    #[test]
    fn mixed_structure() {
        // (q^2 + 1)^2 (q - 1)^2
        let mut coeffs = vec![1.0];
        for factor in [
            vec![1.0, 0.0, 1.0],
            vec![1.0, 0.0, 1.0],
            vec![-1.0, 1.0],
            vec![-1.0, 1.0],
        ] {
            let mut next = vec![0.0; coeffs.len() + factor.len() - 1];
            for (i, &a) in coeffs.iter().enumerate() {
                for (j, &b) in factor.iter().enumerate() {
                    next[i + j] += a * b;
                }
            }
            coeffs = next;
        }
        let roots = sorted_roots(&coeffs);
        assert_eq!(roots.len(), 2);
        let sphere = roots.iter().find(|r| r.conjugate_pair).unwrap();
        let real = roots.iter().find(|r| !r.conjugate_pair).unwrap();
        assert_eq!(sphere.multiplicity, 2);
        assert_eq!(real.multiplicity, 2);
        assert!((real.value.re - 1.0).abs() < 1e-9);
    }

    #[test]
    fn well_separated_close_roots_stay_distinct() {
        // roots at 0 and 0.001, both simple
        let coeffs = [0.0, -0.001, 1.0]; // q(q - 0.001) = q^2 - 0.001 q
        let roots = sorted_roots(&coeffs);
        assert_eq!(roots.len(), 2);
        assert!(roots.iter().all(|r| r.multiplicity == 1));
    }

    #[test]
    fn degree_one_and_constants() {
        let roots = real_poly_roots(&[3.0, -1.5], 1e-8).unwrap();
        assert_eq!(roots.len(), 1);
        assert!((roots[0].value.re - 2.0).abs() < 1e-12);
        assert!(real_poly_roots(&[5.0], 1e-8).unwrap().is_empty());
        assert!(matches!(
            real_poly_roots(&[], 1e-8),
            Err(Error::ZeroPolynomial)
        ));
    }
}
