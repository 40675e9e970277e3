//! The mirror Landau-Ginzburg model: superpotential, Jacobian ring,
//! mirror-domain membership and numeric critical points.

use crate::error::{Error, Result};
use crate::lattice::{is_normalized, FanPolytope};
use crate::laurent::LaurentPoly;
use crate::quotient::{laurent_quotient, QuotientPresentation};
use crate::scalar::{GaussScalar, QScalar};
use num_complex::Complex64;

/// The Laurent superpotential W = sum_i q^{m_i} z^{v_i}, with the facet
/// monomials kept separately in input order.
#[derive(Clone, Debug)]
pub struct Superpotential {
    pub poly: LaurentPoly,
    pub facet_terms: Vec<LaurentPoly>,
    nvars: usize,
    kvars: usize,
}

impl Superpotential {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn kvars(&self) -> usize {
        self.kvars
    }

    /// Logarithmic partial z_j d/dz_j of W.
    pub fn log_derivative(&self, axis: usize) -> LaurentPoly {
        self.poly.log_derivative(axis)
    }

    pub fn gradients(&self) -> Vec<LaurentPoly> {
        (0..self.nvars).map(|j| self.log_derivative(j)).collect()
    }
}

/// Builds W from a validated, normalized polytope.
pub fn build_superpotential(fp: &FanPolytope) -> Result<Superpotential> {
    if !is_normalized(fp) {
        return Err(Error::NotNormalized(
            "facets 1..n must be the standard basis with zero exponent; run normalize first".into(),
        ));
    }
    let n = fp.dim;
    let l = fp.kahler_params;
    let mut facet_terms = Vec::with_capacity(fp.facets.len());
    let mut poly = LaurentPoly::zero(n, l);
    for f in &fp.facets {
        let m: Vec<u32> = f
            .q_exponent
            .iter()
            .map(|&e| u32::try_from(e).map_err(|_| {
                Error::Structural("negative Kähler exponent in superpotential".into())
            }))
            .collect::<Result<_>>()?;
        let coeff = GaussScalar::from_real(QScalar::q_monomial(l, &m));
        let term = LaurentPoly::monomial(n, f.normal.0.clone(), coeff);
        poly = poly.add(&term);
        facet_terms.push(term);
    }
    Ok(Superpotential { poly, facet_terms, nvars: n, kvars: l })
}

/// Jacobian ring Jac(W) with the facet monomials as generator images.
#[derive(Clone, Debug)]
pub struct JacobianRing {
    pub presentation: QuotientPresentation,
    pub generator_images: Vec<LaurentPoly>,
}

impl JacobianRing {
    pub fn dimension(&self) -> Option<usize> {
        self.presentation.dimension()
    }
}

pub fn jacobian_ring(w: &Superpotential) -> Result<JacobianRing> {
    let gens = w.gradients();
    let presentation = laurent_quotient(&gens)?;
    Ok(JacobianRing { presentation, generator_images: w.facet_terms.clone() })
}

/// Membership in the bounded mirror domain |q^{m_i} z^{v_i}| < 1.
pub fn mirror_domain_contains(fp: &FanPolytope, z: &[Complex64], q: &[f64]) -> Result<bool> {
    if z.len() != fp.dim {
        return Err(Error::DimensionMismatch { expected: fp.dim, got: z.len() });
    }
    if q.len() != fp.kahler_params {
        return Err(Error::LengthMismatch(format!(
            "expected {} Kähler values, got {}",
            fp.kahler_params,
            q.len()
        )));
    }
    if z.iter().any(|c| c.norm() == 0.0) {
        return Err(Error::ZeroComponent);
    }
    for f in &fp.facets {
        let mut modulus = 1.0f64;
        for (&m, &qa) in f.q_exponent.iter().zip(q) {
            modulus *= qa.powi(m as i32);
        }
        for (&v, zj) in f.normal.0.iter().zip(z) {
            modulus *= zj.norm().powi(v as i32);
        }
        // NaN counts as outside.
        if modulus >= 1.0 || modulus.is_nan() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Logarithmic Hessian of W at z, exact polynomials evaluated pointwise.
/// Symmetric entry-wise because the mixed log-derivatives coincide as
/// Laurent polynomials.
pub fn hessian_log(w: &Superpotential, z: &[Complex64], q: &[f64]) -> Result<Vec<Vec<Complex64>>> {
    if z.iter().any(|c| c.norm() == 0.0) {
        return Err(Error::ZeroComponent);
    }
    let n = w.nvars;
    let grads = w.gradients();
    let mut h = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    for j in 0..n {
        for k in 0..=j {
            let v = grads[j].log_derivative(k).eval(z, q);
            h[j][k] = v;
            h[k][j] = v;
        }
    }
    Ok(h)
}

/// Result of the multistart Newton search for critical points of W.
#[derive(Clone, Debug)]
pub struct CriticalPointReport {
    pub points: Vec<Vec<Complex64>>,
    pub residuals: Vec<f64>,
    pub jacobian_dimension: Option<usize>,
    pub warning: Option<String>,
}

/// Solves dW = 0 by Newton iteration on the log-derivative system from a
/// tensor grid of scaled roots of unity. Deduplicated, deterministic.
pub fn critical_points(w: &Superpotential, q: &[f64], tol: f64) -> Result<CriticalPointReport> {
    assert!(tol > 0.0, "tolerance must be positive");
    if q.len() != w.kvars {
        return Err(Error::LengthMismatch(format!(
            "expected {} Kähler values, got {}",
            w.kvars,
            q.len()
        )));
    }
    if q.iter().any(|&v| v <= 0.0) {
        return Err(Error::Structural("Kähler values must be positive".into()));
    }
    let n = w.nvars;
    let jac = jacobian_ring(w)?;
    let dim = jac.dimension();
    let k_starts = dim.unwrap_or(w.facet_terms.len()) + 2;

    // Seed radius: geometric mean of |q_a|^{1/n}.
    let radius = if q.is_empty() {
        1.0
    } else {
        let mean_log = q.iter().map(|v| v.ln() / n as f64).sum::<f64>() / q.len() as f64;
        mean_log.exp()
    };

    let grads = w.gradients();
    let hess: Vec<Vec<LaurentPoly>> = (0..n)
        .map(|j| (0..n).map(|k| grads[j].log_derivative(k)).collect())
        .collect();

    let mut found: Vec<(Vec<Complex64>, f64)> = Vec::new();
    let mut grid = vec![0usize; n];
    loop {
        let start: Vec<Complex64> = grid
            .iter()
            .map(|&kj| {
                let angle = 2.0 * std::f64::consts::PI * kj as f64 / k_starts as f64;
                Complex64::from_polar(radius, angle)
            })
            .collect();
        if let Some(point) = newton_refine(&grads, &hess, start, q, tol) {
            found.push(point);
        }
        // Advance the tensor grid.
        let mut axis = 0;
        loop {
            if axis == n {
                break;
            }
            grid[axis] += 1;
            if grid[axis] < k_starts {
                break;
            }
            grid[axis] = 0;
            axis += 1;
        }
        if axis == n {
            break;
        }
    }

    // Deterministic order, then relative-distance deduplication.
    found.sort_by(|(a, _), (b, _)| {
        for (x, y) in a.iter().zip(b) {
            match x.re.partial_cmp(&y.re).unwrap().then(x.im.partial_cmp(&y.im).unwrap()) {
                std::cmp::Ordering::Equal => continue,
                other => return other,
            }
        }
        std::cmp::Ordering::Equal
    });
    let mut points: Vec<Vec<Complex64>> = Vec::new();
    let mut residuals: Vec<f64> = Vec::new();
    'next: for (p, r) in found {
        for existing in &points {
            let scale = existing
                .iter()
                .map(|c| c.norm())
                .fold(1.0f64, f64::max);
            let dist = existing
                .iter()
                .zip(&p)
                .map(|(a, b)| (a - b).norm())
                .fold(0.0f64, f64::max);
            if dist <= 1e-6 * scale {
                continue 'next;
            }
        }
        points.push(p);
        residuals.push(r);
    }

    let warning = if points.is_empty() {
        Some("no Newton start converged".to_string())
    } else if let Some(d) = dim {
        (points.len() != d).then(|| {
            format!("found {} critical points but Jacobian dimension is {}", points.len(), d)
        })
    } else {
        Some("Jacobian ring is infinite-dimensional; no expected count".to_string())
    };

    Ok(CriticalPointReport { points, residuals, jacobian_dimension: dim, warning })
}

fn newton_refine(
    grads: &[LaurentPoly],
    hess: &[Vec<LaurentPoly>],
    mut z: Vec<Complex64>,
    q: &[f64],
    tol: f64,
) -> Option<(Vec<Complex64>, f64)> {
    for _ in 0..80 {
        let g: Vec<Complex64> = grads.iter().map(|p| p.eval(&z, q)).collect();
        let residual = g.iter().map(|c| c.norm()).fold(0.0f64, f64::max);
        if residual <= tol {
            return Some((z, residual));
        }
        let mut a: Vec<Vec<Complex64>> = hess
            .iter()
            .map(|row| row.iter().map(|p| p.eval(&z, q)).collect())
            .collect();
        let rhs: Vec<Complex64> = g.iter().map(|c| -c).collect();
        let step = solve_complex(&mut a, rhs)?;
        if step.iter().any(|s| !s.re.is_finite() || !s.im.is_finite()) {
            return None;
        }
        // Damp wild steps in log-space.
        let norm = step.iter().map(|s| s.norm()).fold(0.0f64, f64::max);
        let scale = if norm > 2.0 { 2.0 / norm } else { 1.0 };
        for (zj, s) in z.iter_mut().zip(&step) {
            *zj *= (s * scale).exp();
        }
        if z.iter().any(|c| {
            let r = c.norm();
            !(1e-40..=1e40).contains(&r)
        }) {
            return None;
        }
    }
    let g: Vec<Complex64> = grads.iter().map(|p| p.eval(&z, q)).collect();
    let residual = g.iter().map(|c| c.norm()).fold(0.0f64, f64::max);
    (residual <= tol).then_some((z, residual))
}

/// Gaussian elimination with partial pivoting over complex numbers.
fn solve_complex(a: &mut [Vec<Complex64>], mut b: Vec<Complex64>) -> Option<Vec<Complex64>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| {
            a[i][col].norm().partial_cmp(&a[j][col].norm()).unwrap()
        })?;
        if a[pivot][col].norm() < 1e-14 {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            for k in col..n {
                let v = a[col][k];
                a[row][k] -= f * v;
            }
            let bv = b[col];
            b[row] -= f * bv;
        }
    }
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    for row in (0..n).rev() {
        let mut s = b[row];
        for k in row + 1..n {
            s -= a[row][k] * x[k];
        }
        x[row] = s / a[row][row];
    }
    Some(x)
}
