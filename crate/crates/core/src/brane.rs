//! Brane dictionary: the point-brane correspondence, the Floer
//! differential on degree one, the nontriviality criterion, endomorphism
//! dimensions and the Clifford form.

use crate::error::{Error, Result};
use crate::mirror::{hessian_log, Superpotential};
use num_complex::Complex64;

/// Lagrangian fiber with a flat connection: base point x and angles y.
#[derive(Clone, Debug, PartialEq)]
pub struct ABranePoint {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
}

/// Point of the mirror with its skyscraper: z in (C*)^n.
#[derive(Clone, Debug, PartialEq)]
pub struct BBranePoint {
    pub z: Vec<Complex64>,
}

/// z_j = exp(-x_j - i y_j).
pub fn brane_to_b(a: &ABranePoint) -> BBranePoint {
    assert_eq!(a.x.len(), a.y.len());
    BBranePoint {
        z: a.x
            .iter()
            .zip(&a.y)
            .map(|(&x, &y)| Complex64::from_polar((-x).exp(), -y))
            .collect(),
    }
}

/// Inverse correspondence; y is normalized to [0, 2*pi).
pub fn brane_to_a(b: &BBranePoint) -> Result<ABranePoint> {
    const TWO_PI: f64 = 2.0 * std::f64::consts::PI;
    let mut x = Vec::with_capacity(b.z.len());
    let mut y = Vec::with_capacity(b.z.len());
    for z in &b.z {
        if z.norm() == 0.0 {
            return Err(Error::ZeroComponent);
        }
        x.push(-z.norm().ln());
        y.push((-z.arg()).rem_euclid(TWO_PI));
    }
    Ok(ABranePoint { x, y })
}

/// Floer differential on the degree-one generators C_j: the vector of
/// logarithmic derivatives of W at z. Evaluated termwise from the facet
/// monomials, independently of the exact polynomial route.
pub fn floer_m1(w: &Superpotential, z: &[Complex64], q: &[f64]) -> Result<Vec<Complex64>> {
    if z.len() != w.nvars() {
        return Err(Error::DimensionMismatch { expected: w.nvars(), got: z.len() });
    }
    if z.iter().any(|c| c.norm() == 0.0) {
        return Err(Error::ZeroComponent);
    }
    let n = w.nvars();
    let mut m1 = vec![Complex64::new(0.0, 0.0); n];
    for term in &w.facet_terms {
        for (v, c) in term.terms() {
            let mut value = c.eval(q);
            for (zj, &e) in z.iter().zip(v.iter()) {
                value *= zj.powi(e as i32);
            }
            for (j, &e) in v.iter().enumerate() {
                m1[j] += value * e as f64;
            }
        }
    }
    Ok(m1)
}

/// Floer cohomology is nontrivial exactly when m1 vanishes on degree one.
pub fn floer_nontrivial(w: &Superpotential, z: &[Complex64], q: &[f64], tol: f64) -> Result<bool> {
    let m1 = floer_m1(w, z, q)?;
    Ok(m1.iter().map(|c| c.norm()).fold(0.0f64, f64::max) <= tol)
}

/// Dimension of the endomorphism space: 2^n at a critical point, else 0.
pub fn endomorphism_dim(w: &Superpotential, z: &[Complex64], q: &[f64], tol: f64) -> Result<usize> {
    Ok(if floer_nontrivial(w, z, q, tol)? {
        1usize << w.nvars()
    } else {
        0
    })
}

/// Bilinear Clifford form on degree one: the logarithmic Hessian of W.
/// Defined everywhere, intended at critical points.
pub fn clifford_form(w: &Superpotential, z: &[Complex64], q: &[f64]) -> Result<Vec<Vec<Complex64>>> {
    hessian_log(w, z, q)
}

pub fn complex_det(m: &[Vec<Complex64>]) -> Complex64 {
    let n = m.len();
    let mut a: Vec<Vec<Complex64>> = m.to_vec();
    let mut det = Complex64::new(1.0, 0.0);
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].norm().partial_cmp(&a[j][col].norm()).unwrap())
            .unwrap();
        if a[pivot][col].norm() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if pivot != col {
            a.swap(col, pivot);
            det = -det;
        }
        det *= a[col][col];
        for r in col + 1..n {
            let f = a[r][col] / a[col][col];
            for k in col..n {
                let v = a[col][k];
                a[r][k] -= f * v;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mirror::build_superpotential;
    use crate::presets;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn correspondence_examples() {
        let a = ABranePoint { x: vec![0.0, 0.0], y: vec![0.0, 0.0] };
        let b = brane_to_b(&a);
        assert!(b.z.iter().all(|z| (z - c(1.0, 0.0)).norm() < 1e-15));

        let a = ABranePoint { x: vec![1.0], y: vec![std::f64::consts::PI] };
        let b = brane_to_b(&a);
        assert!((b.z[0] - c(-(-1.0f64).exp(), 0.0)).norm() < 1e-15);

        let round = brane_to_a(&brane_to_b(&ABranePoint {
            x: vec![0.3, -1.2],
            y: vec![1.0, 5.0],
        }))
        .unwrap();
        assert!((round.x[0] - 0.3).abs() < 1e-12 && (round.x[1] + 1.2).abs() < 1e-12);
        assert!((round.y[0] - 1.0).abs() < 1e-12 && (round.y[1] - 5.0).abs() < 1e-12);

        assert!(brane_to_a(&BBranePoint { z: vec![c(0.0, 0.0)] }).is_err());
    }

    #[test]
    fn m1_examples() {
        let w = build_superpotential(&presets::preset("CP2").unwrap()).unwrap();
        let m1 = floer_m1(&w, &[c(1.0, 0.0), c(1.0, 0.0)], &[1.0]).unwrap();
        assert!(m1.iter().all(|v| v.norm() < 1e-15));
        let m1 = floer_m1(&w, &[c(1.0, 0.0), c(1.0, 0.0)], &[2.0]).unwrap();
        assert!((m1[0] - c(-1.0, 0.0)).norm() < 1e-15);
        assert!((m1[1] - c(-1.0, 0.0)).norm() < 1e-15);

        let w1 = build_superpotential(&presets::preset("CP1").unwrap()).unwrap();
        let m1 = floer_m1(&w1, &[c(2.0, 0.0)], &[4.0]).unwrap();
        assert!(m1[0].norm() < 1e-15);
    }

    #[test]
    fn nontriviality_and_dimension() {
        let w = build_superpotential(&presets::preset("CP2").unwrap()).unwrap();
        let zeta = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
        assert!(floer_nontrivial(&w, &[zeta, zeta], &[1.0], 1e-10).unwrap());
        assert_eq!(endomorphism_dim(&w, &[zeta, zeta], &[1.0], 1e-10).unwrap(), 4);
        assert!(!floer_nontrivial(&w, &[c(1.0, 0.0), c(1.0, 0.0)], &[2.0], 1e-10).unwrap());
        assert_eq!(endomorphism_dim(&w, &[c(1.0, 0.0), c(1.0, 0.0)], &[2.0], 1e-10).unwrap(), 0);
        // Degenerate but contract-consistent.
        assert!(floer_nontrivial(&w, &[c(1.0, 0.0), c(1.0, 0.0)], &[2.0], f64::INFINITY).unwrap());
    }

    #[test]
    fn clifford_examples() {
        let w = build_superpotential(&presets::preset("CP2").unwrap()).unwrap();
        let q = [1.0];
        let m = clifford_form(&w, &[c(1.0, 0.0), c(1.0, 0.0)], &q).unwrap();
        assert_eq!(m[0][0], c(2.0, 0.0));
        assert_eq!(m[0][1], c(1.0, 0.0));
        assert_eq!(m[1][1], c(2.0, 0.0));

        let omega = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
        let m = clifford_form(&w, &[omega, omega], &q).unwrap();
        // Homogeneity: the Hessian at (w, w) with w^3 = 1 is w * [[2,1],[1,2]].
        assert!((m[0][0] - omega * 2.0).norm() < 1e-14);
        assert!((m[0][1] - omega).norm() < 1e-14);
        assert_eq!(m[0][1], m[1][0]);

        let w1 = build_superpotential(&presets::preset("CP1").unwrap()).unwrap();
        let m = clifford_form(&w1, &[c(-1.0, 0.0)], &[1.0]).unwrap();
        assert_eq!(m[0][0], c(-2.0, 0.0));
    }
}
