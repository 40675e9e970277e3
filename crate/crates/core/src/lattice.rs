//! Lattice and fan/polytope geometry: input validation, basis
//! normalization, combinatorics and the canonical toric potential.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

/// Primitive integer vector in the lattice N.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LatticeVector(pub Vec<i64>);

impl LatticeVector {
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// gcd of the entries is 1.
    pub fn is_primitive(&self) -> bool {
        let mut g: i64 = 0;
        for &v in &self.0 {
            g = g.gcd(&v);
        }
        g == 1
    }

    pub fn dot_rational(&self, x: &[BigRational]) -> BigRational {
        self.0
            .iter()
            .zip(x)
            .map(|(&v, xi)| xi * BigRational::from(BigInt::from(v)))
            .sum()
    }
}

/// Supporting facet `<x, v_i> >= lambda_i` with its Kähler exponent m_i,
/// so that e^{lambda_i} = q^{m_i}. The numeric lambda is optional and only
/// feeds the potential and Legendre operations.
#[derive(Clone, PartialEq, Debug)]
pub struct Facet {
    pub normal: LatticeVector,
    pub q_exponent: Vec<i64>,
    pub lambda: Option<BigRational>,
}

/// Fan/polytope data for a smooth toric Fano manifold: d = n + l facet
/// normals and the maximal cones of the dual fan (0-based ray indices).
#[derive(Clone, PartialEq, Debug)]
pub struct FanPolytope {
    pub dim: usize,
    pub kahler_params: usize,
    pub facets: Vec<Facet>,
    pub maximal_cones: Vec<Vec<usize>>,
}

/// Interior point of the moment polytope, exact coordinates.
#[derive(Clone, PartialEq, Debug)]
pub struct MomentPoint(pub Vec<BigRational>);

#[derive(Clone, Debug, Serialize)]
pub struct ValidationCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<ValidationCheck>,
    pub warnings: Vec<String>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl FanPolytope {
    pub fn facet_count(&self) -> usize {
        self.facets.len()
    }

    /// Structural well-formedness, reported as hard errors rather than
    /// validation failures.
    fn check_structure(&self) -> Result<()> {
        if self.dim == 0 {
            return Err(Error::Structural("dimension must be at least 1".into()));
        }
        if self.facets.len() != self.dim + self.kahler_params {
            return Err(Error::Structural(format!(
                "expected {} facets (dim {} + kahler {}), got {}",
                self.dim + self.kahler_params,
                self.dim,
                self.kahler_params,
                self.facets.len()
            )));
        }
        for (i, f) in self.facets.iter().enumerate() {
            if f.normal.dim() != self.dim {
                return Err(Error::DimensionMismatch { expected: self.dim, got: f.normal.dim() });
            }
            if f.q_exponent.len() != self.kahler_params {
                return Err(Error::Structural(format!(
                    "facet {} q_exponent has length {}, expected {}",
                    i + 1,
                    f.q_exponent.len(),
                    self.kahler_params
                )));
            }
        }
        for (c, cone) in self.maximal_cones.iter().enumerate() {
            if cone.len() != self.dim {
                return Err(Error::Structural(format!(
                    "maximal cone {} has {} rays, expected {}",
                    c + 1,
                    cone.len(),
                    self.dim
                )));
            }
            let mut sorted = cone.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != cone.len() {
                return Err(Error::Structural(format!("maximal cone {} repeats a ray", c + 1)));
            }
            for &r in cone {
                if r >= self.facets.len() {
                    return Err(Error::Structural(format!(
                        "maximal cone {} references facet {} out of range",
                        c + 1,
                        r + 1
                    )));
                }
            }
        }
        Ok(())
    }

    fn cone_matrix(&self, cone: &[usize]) -> Vec<Vec<BigInt>> {
        cone.iter()
            .map(|&r| self.facets[r].normal.0.iter().map(|&v| BigInt::from(v)).collect())
            .collect()
    }
}

/// Exact determinant by fraction-free Gaussian elimination.
pub fn det_bigint(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let swap = (k + 1..n).find(|&r| !m[r][k].is_zero());
            match swap {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = &num / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    sign * m[n - 1][n - 1].clone()
}

/// Exact inverse of a rational matrix by Gauss-Jordan; None when singular.
pub fn invert_rational(m: &[Vec<BigRational>]) -> Option<Vec<Vec<BigRational>>> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m.to_vec();
    let mut inv: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] /= p.clone();
            inv[col][j] /= p.clone();
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..n {
                let av = a[col][j].clone();
                let iv = inv[col][j].clone();
                a[r][j] -= &f * av;
                inv[r][j] -= &f * iv;
            }
        }
    }
    Some(inv)
}

/// Checks primitivity of normals, unimodularity of every maximal cone and
/// completeness of the fan by two-sided ridge counting.
pub fn validate_smooth_fano(fp: &FanPolytope) -> Result<ValidationReport> {
    fp.check_structure()?;
    let mut checks = Vec::new();
    let mut warnings = Vec::new();

    let bad_primitive: Vec<usize> = fp
        .facets
        .iter()
        .enumerate()
        .filter(|(_, f)| !f.normal.is_primitive())
        .map(|(i, _)| i + 1)
        .collect();
    checks.push(ValidationCheck {
        name: "primitive_normals".into(),
        passed: bad_primitive.is_empty(),
        detail: if bad_primitive.is_empty() {
            format!("all {} normals primitive", fp.facets.len())
        } else {
            format!("non-primitive normals at facets {bad_primitive:?}")
        },
    });

    let mut bad_cones = Vec::new();
    for (c, cone) in fp.maximal_cones.iter().enumerate() {
        let det = det_bigint(fp.cone_matrix(cone));
        if det.abs() != BigInt::one() {
            bad_cones.push(format!("cone {} has |det| = {}", c + 1, det.abs()));
        }
    }
    checks.push(ValidationCheck {
        name: "unimodular_cones".into(),
        passed: bad_cones.is_empty(),
        detail: if bad_cones.is_empty() {
            format!("all {} maximal cones unimodular", fp.maximal_cones.len())
        } else {
            bad_cones.join("; ")
        },
    });

    // A complete simplicial fan has every ridge shared by exactly two
    // maximal cones.
    let mut ridge_count: HashMap<Vec<usize>, usize> = HashMap::new();
    for cone in &fp.maximal_cones {
        for skip in 0..cone.len() {
            let mut ridge: Vec<usize> = cone
                .iter()
                .enumerate()
                .filter_map(|(i, &r)| (i != skip).then_some(r))
                .collect();
            ridge.sort_unstable();
            *ridge_count.entry(ridge).or_insert(0) += 1;
        }
    }
    let bad_ridges: Vec<String> = ridge_count
        .iter()
        .filter(|(_, &c)| c != 2)
        .map(|(r, &c)| {
            let pretty: Vec<usize> = r.iter().map(|&i| i + 1).collect();
            format!("ridge {pretty:?} shared by {c} cones")
        })
        .collect();
    checks.push(ValidationCheck {
        name: "complete_fan".into(),
        passed: bad_ridges.is_empty(),
        detail: if bad_ridges.is_empty() {
            "every ridge is two-sided".into()
        } else {
            let mut sorted = bad_ridges;
            sorted.sort();
            sorted.join("; ")
        },
    });

    for (i, f) in fp.facets.iter().enumerate() {
        if f.q_exponent.iter().any(|&m| m < 0) {
            warnings.push(format!("facet {} has a negative Kähler exponent", i + 1));
        }
    }

    Ok(ValidationReport { checks, warnings })
}

/// Number of maximal cones; equals the Euler characteristic of the toric
/// manifold and the expected Jacobian dimension.
pub fn euler_characteristic(fp: &FanPolytope) -> usize {
    fp.maximal_cones.len()
}

/// Unimodular change of the lattice and facet relabeling, after which
/// facets 1..n carry the standard basis normals and zero Kähler exponent.
/// Already-normalized inputs come back unchanged.
pub fn normalize_basis(fp: &FanPolytope) -> Result<FanPolytope> {
    fp.check_structure()?;
    if is_normalized(fp) {
        return Ok(fp.clone());
    }
    let n = fp.dim;
    let cone = fp
        .maximal_cones
        .iter()
        .find(|cone| det_bigint(fp.cone_matrix(cone)).abs() == BigInt::one())
        .ok_or(Error::NoUnimodularCone)?
        .clone();

    // U = V^{-1} where the columns of V are the chosen cone normals.
    let v_cols: Vec<Vec<BigRational>> = (0..n)
        .map(|row| {
            cone.iter()
                .map(|&c| BigRational::from(BigInt::from(fp.facets[c].normal.0[row])))
                .collect()
        })
        .collect();
    let u = invert_rational(&v_cols).ok_or(Error::NoUnimodularCone)?;
    let apply = |v: &LatticeVector| -> LatticeVector {
        LatticeVector(
            (0..n)
                .map(|row| {
                    let s: BigRational = (0..n)
                        .map(|k| &u[row][k] * BigRational::from(BigInt::from(v.0[k])))
                        .sum();
                    // The inverse of a unimodular matrix is integral.
                    assert!(s.is_integer());
                    s.to_integer().to_i64().expect("normal entry fits in i64")
                })
                .collect(),
        )
    };

    // Relabel: chosen cone facets first, remaining facets in input order.
    let mut perm: Vec<usize> = cone.clone();
    for i in 0..fp.facets.len() {
        if !cone.contains(&i) {
            perm.push(i);
        }
    }
    let mut new_index = vec![0usize; fp.facets.len()];
    for (new, &old) in perm.iter().enumerate() {
        new_index[old] = new;
    }

    let base_exponents: Vec<Vec<i64>> = cone.iter().map(|&c| fp.facets[c].q_exponent.clone()).collect();
    let base_lambdas: Option<Vec<BigRational>> = cone
        .iter()
        .map(|&c| fp.facets[c].lambda.clone())
        .collect();

    let facets: Vec<Facet> = perm
        .iter()
        .map(|&old| {
            let normal = apply(&fp.facets[old].normal);
            // Translate supports so the basis facets sit at level zero.
            let q_exponent: Vec<i64> = (0..fp.kahler_params)
                .map(|a| {
                    let correction: i64 = normal
                        .0
                        .iter()
                        .zip(&base_exponents)
                        .map(|(&vk, m)| vk * m[a])
                        .sum();
                    fp.facets[old].q_exponent[a] - correction
                })
                .collect();
            let lambda = match (&fp.facets[old].lambda, &base_lambdas) {
                (Some(l), Some(base)) => {
                    let correction: BigRational = normal
                        .0
                        .iter()
                        .zip(base)
                        .map(|(&vk, lk)| BigRational::from(BigInt::from(vk)) * lk)
                        .sum();
                    Some(l - correction)
                }
                _ => None,
            };
            Facet { normal, q_exponent, lambda }
        })
        .collect();

    let maximal_cones: Vec<Vec<usize>> = fp
        .maximal_cones
        .iter()
        .map(|cone| {
            let mut c: Vec<usize> = cone.iter().map(|&r| new_index[r]).collect();
            c.sort_unstable();
            c
        })
        .collect();

    Ok(FanPolytope { dim: n, kahler_params: fp.kahler_params, facets, maximal_cones })
}

/// True when facets 1..n are the standard basis with zero exponent.
pub fn is_normalized(fp: &FanPolytope) -> bool {
    (0..fp.dim).all(|j| {
        let f = &fp.facets[j];
        f.q_exponent.iter().all(|&m| m == 0)
            && f.normal.0.iter().enumerate().all(|(k, &v)| v == i64::from(k == j))
    })
}

fn support_values(fp: &FanPolytope, x: &MomentPoint) -> Result<Vec<BigRational>> {
    if x.0.len() != fp.dim {
        return Err(Error::DimensionMismatch { expected: fp.dim, got: x.0.len() });
    }
    fp.facets
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let lambda = f
                .lambda
                .as_ref()
                .ok_or(Error::MissingNumericSupport { facet: i + 1 })?;
            let l = f.normal.dot_rational(&x.0) - lambda;
            if l <= BigRational::zero() {
                return Err(Error::BoundaryPoint { facet: i + 1 });
            }
            Ok(l)
        })
        .collect()
}

/// The canonical strictly convex potential (1/2) sum l_i log l_i.
pub fn guillemin_potential(fp: &FanPolytope, x: &MomentPoint) -> Result<f64> {
    let ls = support_values(fp, x)?;
    Ok(0.5
        * ls.iter()
            .map(|l| {
                let v = l.to_f64().expect("support value fits in f64");
                v * v.ln()
            })
            .sum::<f64>())
}

/// Gradient of the potential: components (1/2) sum_i v_i^j (log l_i + 1).
pub fn legendre_gradient(fp: &FanPolytope, x: &MomentPoint) -> Result<Vec<f64>> {
    let ls = support_values(fp, x)?;
    let mut grad = vec![0.0; fp.dim];
    for (f, l) in fp.facets.iter().zip(&ls) {
        let w = l.to_f64().expect("support value fits in f64").ln() + 1.0;
        for (g, &v) in grad.iter_mut().zip(&f.normal.0) {
            *g += 0.5 * v as f64 * w;
        }
    }
    Ok(grad)
}

// -- JSON polytope documents -------------------------------------------------

#[derive(Serialize, Deserialize)]
struct FacetDoc {
    normal: Vec<i64>,
    q_exponent: Vec<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    lambda: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct PolytopeDoc {
    dim: usize,
    kahler_params: usize,
    facets: Vec<FacetDoc>,
    /// 1-based facet indices.
    maximal_cones: Vec<Vec<usize>>,
}

impl FanPolytope {
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: PolytopeDoc =
            serde_json::from_str(text).map_err(|e| Error::InvalidPolytope(e.to_string()))?;
        let facets = doc
            .facets
            .into_iter()
            .map(|f| {
                let lambda = f
                    .lambda
                    .map(|s| {
                        s.parse::<BigRational>()
                            .map_err(|e| Error::InvalidPolytope(format!("bad lambda '{s}': {e}")))
                    })
                    .transpose()?;
                Ok(Facet { normal: LatticeVector(f.normal), q_exponent: f.q_exponent, lambda })
            })
            .collect::<Result<Vec<_>>>()?;
        let maximal_cones = doc
            .maximal_cones
            .into_iter()
            .enumerate()
            .map(|(c, cone)| {
                cone.into_iter()
                    .map(|r| {
                        if r == 0 {
                            Err(Error::InvalidPolytope(format!(
                                "maximal cone {} uses 0; ray indices are 1-based",
                                c + 1
                            )))
                        } else {
                            Ok(r - 1)
                        }
                    })
                    .collect::<Result<Vec<usize>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let fp = FanPolytope { dim: doc.dim, kahler_params: doc.kahler_params, facets, maximal_cones };
        fp.check_structure()?;
        Ok(fp)
    }

    pub fn to_json(&self) -> String {
        let doc = PolytopeDoc {
            dim: self.dim,
            kahler_params: self.kahler_params,
            facets: self
                .facets
                .iter()
                .map(|f| FacetDoc {
                    normal: f.normal.0.clone(),
                    q_exponent: f.q_exponent.clone(),
                    lambda: f.lambda.as_ref().map(|l| l.to_string()),
                })
                .collect(),
            maximal_cones: self
                .maximal_cones
                .iter()
                .map(|c| c.iter().map(|&r| r + 1).collect())
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("polytope serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;

    fn rat(v: i64) -> BigRational {
        BigRational::from(BigInt::from(v))
    }

    fn rat2(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn cp2_validates() {
        let fp = presets::preset("CP2").unwrap();
        let report = validate_smooth_fano(&fp).unwrap();
        assert!(report.passed(), "{report:?}");
        assert_eq!(euler_characteristic(&fp), 3);
    }

    #[test]
    fn cp1_validates() {
        let fp = presets::preset("CP1").unwrap();
        assert!(validate_smooth_fano(&fp).unwrap().passed());
    }

    #[test]
    fn non_unimodular_cone_fails() {
        let fp = FanPolytope {
            dim: 2,
            kahler_params: 1,
            facets: vec![
                Facet { normal: LatticeVector(vec![1, 0]), q_exponent: vec![0], lambda: None },
                Facet { normal: LatticeVector(vec![0, 1]), q_exponent: vec![0], lambda: None },
                Facet { normal: LatticeVector(vec![-1, -2]), q_exponent: vec![1], lambda: None },
            ],
            maximal_cones: vec![vec![0, 2]],
        };
        let report = validate_smooth_fano(&fp).unwrap();
        let cone_check = report.checks.iter().find(|c| c.name == "unimodular_cones").unwrap();
        assert!(!cone_check.passed);
        assert!(cone_check.detail.contains("|det| = 2"), "{}", cone_check.detail);
    }

    #[test]
    fn dimension_mismatch_is_structural() {
        let fp = FanPolytope {
            dim: 2,
            kahler_params: 0,
            facets: vec![
                Facet { normal: LatticeVector(vec![1]), q_exponent: vec![], lambda: None },
                Facet { normal: LatticeVector(vec![0, 1]), q_exponent: vec![], lambda: None },
            ],
            maximal_cones: vec![],
        };
        assert!(matches!(
            validate_smooth_fano(&fp),
            Err(Error::DimensionMismatch { expected: 2, got: 1 })
        ));
    }

    #[test]
    fn euler_characteristic_of_presets() {
        for (name, chi) in [("CP1", 2), ("CP2", 3), ("CP3", 4), ("CP1xCP1", 4), ("Bl1CP2", 4), ("CP1xCP2", 6)] {
            let fp = presets::preset(name).unwrap();
            assert_eq!(euler_characteristic(&fp), chi, "{name}");
            assert!(validate_smooth_fano(&fp).unwrap().passed(), "{name}");
        }
    }

    #[test]
    fn normalize_identity_on_cp2() {
        let fp = presets::preset("CP2").unwrap();
        let norm = normalize_basis(&fp).unwrap();
        assert_eq!(norm, fp);
        assert!(is_normalized(&norm));
    }

    #[test]
    fn normalize_permuted_cp2() {
        let fp = presets::preset("CP2").unwrap();
        let permuted = FanPolytope {
            dim: 2,
            kahler_params: 1,
            facets: vec![fp.facets[2].clone(), fp.facets[0].clone(), fp.facets[1].clone()],
            maximal_cones: vec![vec![0, 1], vec![0, 2], vec![1, 2]],
        };
        let norm = normalize_basis(&permuted).unwrap();
        assert!(is_normalized(&norm));
        assert!(validate_smooth_fano(&norm).unwrap().passed());
        assert_eq!(euler_characteristic(&norm), 3);
        // The standard CP2 shape is recovered up to the facet carrying q.
        assert_eq!(norm.facets[2].normal, LatticeVector(vec![-1, -1]));
        assert_eq!(norm.facets[2].q_exponent, vec![1]);
    }

    #[test]
    fn normalize_flipped_cp1() {
        let fp = FanPolytope {
            dim: 1,
            kahler_params: 1,
            facets: vec![
                Facet { normal: LatticeVector(vec![-1]), q_exponent: vec![1], lambda: None },
                Facet { normal: LatticeVector(vec![1]), q_exponent: vec![0], lambda: None },
            ],
            maximal_cones: vec![vec![0], vec![1]],
        };
        let norm = normalize_basis(&fp).unwrap();
        assert!(is_normalized(&norm));
        assert_eq!(norm.facets[1].normal, LatticeVector(vec![-1]));
        assert_eq!(norm.facets[1].q_exponent, vec![1]);
    }

    #[test]
    fn guillemin_at_center_and_off_center() {
        let fp = presets::preset("CP2").unwrap();
        let center = MomentPoint(vec![rat(1), rat(1)]);
        assert_eq!(guillemin_potential(&fp, &center).unwrap(), 0.0);
        let off = MomentPoint(vec![rat2(1, 2), rat2(1, 2)]);
        let expected = 0.5 * f64::ln(2.0);
        assert!((guillemin_potential(&fp, &off).unwrap() - expected).abs() < 1e-15);
        let grad = legendre_gradient(&fp, &center).unwrap();
        assert!(grad.iter().all(|g| g.abs() < 1e-15));
    }

    #[test]
    fn guillemin_cp1() {
        let fp = presets::preset("CP1").unwrap();
        let mid = MomentPoint(vec![rat(1)]);
        assert_eq!(guillemin_potential(&fp, &mid).unwrap(), 0.0);
        assert!(legendre_gradient(&fp, &mid).unwrap()[0].abs() < 1e-15);
        let x = MomentPoint(vec![rat2(3, 2)]);
        let g = legendre_gradient(&fp, &x).unwrap()[0];
        assert!((g - 0.5 * f64::ln(3.0)).abs() < 1e-15);
    }

    #[test]
    fn boundary_point_rejected() {
        let fp = presets::preset("CP1").unwrap();
        let boundary = MomentPoint(vec![rat(0)]);
        assert!(matches!(
            guillemin_potential(&fp, &boundary),
            Err(Error::BoundaryPoint { facet: 1 })
        ));
        let outside = MomentPoint(vec![rat(5)]);
        assert!(matches!(
            legendre_gradient(&fp, &outside),
            Err(Error::BoundaryPoint { facet: 2 })
        ));
    }

    #[test]
    fn json_round_trip() {
        let fp = presets::preset("Bl1CP2").unwrap();
        let text = fp.to_json();
        let back = FanPolytope::from_json(&text).unwrap();
        assert_eq!(back, fp);
    }
}
