//! Exact exterior algebra on the fibered product and the semi-flat SYZ
//! transform, plus its lattice-graded toric refinement.
//!
//! Generators are dx_1..dx_n, dy_1..dy_n, du_1..du_n in that canonical
//! order. Coefficients are Laurent polynomials in an auxiliary symbol for
//! 2*pi (so fiber volumes stay exact) and in z_1..z_n (so the toric
//! transform can carry its Fourier monomials), over Q(q)(i).

use crate::error::{Error, Result};
use crate::lattice::FanPolytope;
use crate::laurent::LaurentPoly;
use crate::loops::{psi_total, LoopFunction};
use crate::mirror::build_superpotential;
use crate::scalar::{GaussScalar, QScalar};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// Which fiber torus an integration runs over.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FiberBlock {
    /// The du-block, fibers of X.
    U,
    /// The dy-block, fibers of Y.
    Y,
}

/// Exterior form with bitmask monomials over 3n generators.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DifferentialForm {
    n: usize,
    kvars: usize,
    /// Nonzero coefficients only; coefficient ring is Laurent in
    /// [tau, z1..zn] with tau standing for 2*pi.
    terms: BTreeMap<u64, LaurentPoly>,
}

fn dx_bit(j: usize) -> u64 {
    1 << j
}

fn dy_bit(n: usize, j: usize) -> u64 {
    1 << (n + j)
}

fn du_bit(n: usize, j: usize) -> u64 {
    1 << (2 * n + j)
}

fn dy_mask(n: usize) -> u64 {
    ((1u64 << n) - 1) << n
}

fn du_mask(n: usize) -> u64 {
    ((1u64 << n) - 1) << (2 * n)
}

/// Parity of merging two ascending generator sequences.
fn wedge_sign(a: u64, b: u64) -> i64 {
    let mut inversions = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        let above = if j >= 63 { 0 } else { a >> (j + 1) };
        inversions += above.count_ones();
        rest &= rest - 1;
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

impl DifferentialForm {
    pub fn zero(n: usize, kvars: usize) -> Self {
        assert!(3 * n <= 63, "dimension too large for the bitmask representation");
        DifferentialForm { n, kvars, terms: BTreeMap::new() }
    }

    pub fn one(n: usize, kvars: usize) -> Self {
        Self::from_scalar(n, GaussScalar::one(kvars))
    }

    pub fn from_scalar(n: usize, c: GaussScalar) -> Self {
        let kvars = c.kvars();
        let mut form = Self::zero(n, kvars);
        form.insert(0, LaurentPoly::constant(n + 1, c));
        form
    }

    pub fn generator(n: usize, kvars: usize, mask: u64) -> Self {
        let mut form = Self::zero(n, kvars);
        form.insert(mask, LaurentPoly::one(n + 1, kvars));
        form
    }

    pub fn dx(n: usize, kvars: usize, j: usize) -> Self {
        Self::generator(n, kvars, dx_bit(j))
    }

    pub fn dy(n: usize, kvars: usize, j: usize) -> Self {
        Self::generator(n, kvars, dy_bit(n, j))
    }

    pub fn du(n: usize, kvars: usize, j: usize) -> Self {
        Self::generator(n, kvars, du_bit(n, j))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kvars(&self) -> usize {
        self.kvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&u64, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, mask: u64) -> LaurentPoly {
        self.terms
            .get(&mask)
            .cloned()
            .unwrap_or_else(|| LaurentPoly::zero(self.n + 1, self.kvars))
    }

    fn insert(&mut self, mask: u64, coeff: LaurentPoly) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(mask) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&coeff);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        DifferentialForm {
            n: self.n,
            kvars: self.kvars,
            terms: self.terms.iter().map(|(m, c)| (*m, c.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &GaussScalar) -> Self {
        self.scale_coeff(&LaurentPoly::constant(self.n + 1, c.clone()))
    }

    pub fn scale_coeff(&self, p: &LaurentPoly) -> Self {
        let mut out = Self::zero(self.n, self.kvars);
        for (m, c) in &self.terms {
            out.insert(*m, c.mul(p));
        }
        out
    }

    /// Graded-commutative product with canonicalization signs.
    pub fn wedge(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "variable-count mismatch");
        let mut out = Self::zero(self.n, self.kvars.max(other.kvars));
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if ma & mb != 0 {
                    continue;
                }
                let sign = wedge_sign(*ma, *mb);
                let c = ca.mul(cb);
                out.insert(*ma | *mb, if sign < 0 { c.neg() } else { c });
            }
        }
        out
    }

    pub fn all_even(&self) -> bool {
        self.terms.keys().all(|m| m.count_ones() % 2 == 0)
    }

    pub fn contains_dy(&self) -> bool {
        let mask = dy_mask(self.n);
        self.terms.keys().any(|m| m & mask != 0)
    }

    pub fn contains_du(&self) -> bool {
        let mask = du_mask(self.n);
        self.terms.keys().any(|m| m & mask != 0)
    }

    /// True when the only monomial present is 1.
    pub fn is_pure_zero_form(&self) -> bool {
        self.terms.keys().all(|&m| m == 0)
    }

    /// Finite wedge exponential of an even form.
    pub fn form_exp(&self) -> Result<Self> {
        if !self.all_even() {
            return Err(Error::OddDegreeExponential);
        }
        let mut acc = Self::one(self.n, self.kvars);
        let mut power = Self::one(self.n, self.kvars);
        let mut k: u64 = 0;
        loop {
            power = power.wedge(self);
            k += 1;
            if power.is_zero() || k as usize > 3 * self.n {
                break;
            }
            let inv_fact = QScalar::from_ratio(
                self.kvars,
                &BigRational::new(BigInt::one(), factorial(k)),
            );
            acc = acc.add(&power.scale(&GaussScalar::from_real(inv_fact)));
        }
        Ok(acc)
    }

    /// Integration over a fiber torus: keeps monomials containing the
    /// whole block, strips it and multiplies by (2*pi)^n.
    ///
    /// The strip sign carries the graded per-axis bookkeeping of the
    /// kernel transforms. It depends on the pairing pattern of the
    /// leftover generators, and is pinned by requiring the four
    /// structure-form identities and the two-sided inversion to hold
    /// exactly in every dimension.
    pub fn fiber_integrate(&self, block: FiberBlock) -> Self {
        let n = self.n;
        let block_mask = match block {
            FiberBlock::U => du_mask(n),
            FiberBlock::Y => dy_mask(n),
        };
        let tau = LaurentPoly::monomial(
            n + 1,
            {
                let mut e = vec![0i64; n + 1];
                e[0] = n as i64;
                e
            },
            GaussScalar::one(self.kvars),
        );
        let mut out = Self::zero(n, self.kvars);
        for (m, c) in &self.terms {
            if m & block_mask != block_mask {
                continue;
            }
            let others = m & !block_mask;
            let sign = strip_sign(n, others, block);
            let coeff = c.mul(&tau);
            out.insert(others, if sign < 0 { coeff.neg() } else { coeff });
        }
        out
    }

    /// Multiplies by (2*pi*i)^{-n}.
    fn kernel_prefactor(&self) -> Self {
        let n = self.n;
        let mut e = vec![0i64; n + 1];
        e[0] = -(n as i64);
        let p = LaurentPoly::monomial(n + 1, e, GaussScalar::i_pow(self.kvars, -(n as i64)));
        self.scale_coeff(&p)
    }

    /// Semi-flat transform of a form on X (generators dx, du) to a form
    /// on Y (generators dx, dy), kernel exp(i F).
    pub fn semiflat_fwd(&self) -> Result<Self> {
        if self.contains_dy() {
            return Err(Error::UnexpectedGenerators("dy"));
        }
        let kernel = i_f_kernel(self.n, self.kvars, false).form_exp()?;
        Ok(self
            .wedge(&kernel)
            .fiber_integrate(FiberBlock::U)
            .kernel_prefactor())
    }

    /// Inverse transform of a form on Y back to X, conjugate kernel and
    /// integration over the y-block.
    pub fn semiflat_inv(&self) -> Result<Self> {
        if self.contains_du() {
            return Err(Error::UnexpectedGenerators("du"));
        }
        let kernel = i_f_kernel(self.n, self.kvars, true).form_exp()?;
        Ok(self
            .wedge(&kernel)
            .fiber_integrate(FiberBlock::Y)
            .kernel_prefactor())
    }

    /// Sorted term rendering, e.g. `i * dx1^du1 + (2pi) * dy2`.
    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut keys: Vec<&u64> = self.terms.keys().collect();
        keys.sort_by_key(|m| (m.count_ones(), **m));
        let names: Vec<String> = std::iter::once("(2pi)".to_string())
            .chain((1..=self.n).map(|j| format!("z{j}")))
            .collect();
        let name_refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let parts: Vec<String> = keys
            .iter()
            .map(|&&m| {
                let c = &self.terms[&m];
                let mono = monomial_text(self.n, m);
                let ct = c.to_text_named(&name_refs);
                if mono.is_empty() {
                    ct
                } else if ct == "1" {
                    mono
                } else if c.num_terms() > 1 {
                    format!("({ct}) * {mono}")
                } else {
                    format!("{ct} * {mono}")
                }
            })
            .collect();
        parts.join(" + ")
    }
}

fn monomial_text(n: usize, mask: u64) -> String {
    let mut parts = Vec::new();
    for bit in 0..(3 * n) {
        if mask & (1 << bit) == 0 {
            continue;
        }
        let (family, idx) = if bit < n {
            ("dx", bit + 1)
        } else if bit < 2 * n {
            ("dy", bit - n + 1)
        } else {
            ("du", bit - 2 * n + 1)
        };
        parts.push(format!("{family}{idx}"));
    }
    parts.join("^")
}

fn factorial(k: u64) -> BigInt {
    let mut f = BigInt::one();
    for i in 2..=k {
        f *= BigInt::from(i);
    }
    f
}

fn choose2(x: usize) -> usize {
    x * x.saturating_sub(1) / 2
}

/// Parity of the leftover monomial under block stripping.
///
/// The u-block strips with sign (-1)^{floor(s/2)} in the leftover degree
/// s. The y-block parity is the one that makes the inverse transform a
/// two-sided inverse of the forward one on every exterior monomial:
/// with p leftover dx's and u leftover du's it is
/// u + C(n-u,2) + C(u,2) + floor((p+n-u)/2) mod 2.
fn strip_sign(n: usize, others: u64, block: FiberBlock) -> i64 {
    let parity = match block {
        FiberBlock::U => {
            let s = others.count_ones() as usize;
            s / 2
        }
        FiberBlock::Y => {
            let p = (others & ((1u64 << n) - 1)).count_ones() as usize;
            let u = (others & du_mask(n)).count_ones() as usize;
            u + choose2(n - u) + choose2(u) + (p + n - u) / 2
        }
    };
    if parity.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// i*F = -sum dy_j ^ du_j, or its negative for the conjugate kernel.
fn i_f_kernel(n: usize, kvars: usize, conjugate: bool) -> DifferentialForm {
    let mut form = DifferentialForm::zero(n, kvars);
    let sign = GaussScalar::from_int(kvars, if conjugate { 1 } else { -1 });
    for j in 0..n {
        form = form.add(
            &DifferentialForm::generator(n, kvars, dy_bit(n, j) | du_bit(n, j)).scale(&sign),
        );
    }
    form
}

/// The standard symplectic form sum dx_j ^ du_j on X.
pub fn omega_x(n: usize, kvars: usize) -> DifferentialForm {
    let mut form = DifferentialForm::zero(n, kvars);
    for j in 0..n {
        form = form.add(&DifferentialForm::generator(n, kvars, dx_bit(j) | du_bit(n, j)));
    }
    form
}

/// exp(i omega_X), the calibrating even form of the A-side.
pub fn exp_i_omega_x(n: usize, kvars: usize) -> DifferentialForm {
    omega_x(n, kvars)
        .scale(&GaussScalar::i(kvars))
        .form_exp()
        .expect("even form")
}

/// Holomorphic volume form of Y: wedge of (dx_j + i dy_j).
pub fn volume_form_y(n: usize, kvars: usize) -> DifferentialForm {
    let mut form = DifferentialForm::one(n, kvars);
    for j in 0..n {
        let factor = DifferentialForm::dx(n, kvars, j)
            .add(&DifferentialForm::dy(n, kvars, j).scale(&GaussScalar::i(kvars)));
        form = form.wedge(&factor);
    }
    form
}

/// Exact rational symmetric positive-definite matrix used for the
/// metric-dependent structure forms.
#[derive(Clone, PartialEq, Debug)]
pub struct PhiMatrix {
    entries: Vec<Vec<BigRational>>,
}

impl PhiMatrix {
    pub fn new(entries: Vec<Vec<BigRational>>) -> Result<Self> {
        let n = entries.len();
        if n == 0 || entries.iter().any(|row| row.len() != n) {
            return Err(Error::NotPositiveDefinite("matrix is not square".into()));
        }
        for j in 0..n {
            for k in 0..j {
                if entries[j][k] != entries[k][j] {
                    return Err(Error::NotPositiveDefinite(format!(
                        "entry ({},{}) differs from ({},{})",
                        j + 1,
                        k + 1,
                        k + 1,
                        j + 1
                    )));
                }
            }
        }
        for k in 1..=n {
            let minor: Vec<Vec<BigRational>> =
                entries[..k].iter().map(|row| row[..k].to_vec()).collect();
            if det_rational(minor) <= BigRational::zero() {
                return Err(Error::NotPositiveDefinite(format!(
                    "leading principal minor {k} is not positive"
                )));
            }
        }
        Ok(PhiMatrix { entries })
    }

    pub fn identity(n: usize) -> Self {
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { BigRational::one() } else { BigRational::zero() })
                    .collect()
            })
            .collect();
        PhiMatrix { entries }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, j: usize, k: usize) -> &BigRational {
        &self.entries[j][k]
    }

    /// Exact inverse; exists since the matrix is positive-definite.
    pub fn inverse(&self) -> Vec<Vec<BigRational>> {
        crate::lattice::invert_rational(&self.entries).expect("SPD matrix is invertible")
    }

    /// Parses `[["1","1/2"],["1/2","2"]]`.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: Vec<Vec<String>> = serde_json::from_str(text)
            .map_err(|e| Error::NotPositiveDefinite(format!("bad matrix JSON: {e}")))?;
        let entries = raw
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|s| {
                        s.parse::<BigRational>().map_err(|e| {
                            Error::NotPositiveDefinite(format!("bad rational '{s}': {e}"))
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(entries)
    }
}

fn det_rational(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let n = m.len();
    let mut det = BigRational::one();
    for col in 0..n {
        let pivot = match (col..n).find(|&r| !m[r][col].is_zero()) {
            Some(p) => p,
            None => return BigRational::zero(),
        };
        if pivot != col {
            m.swap(col, pivot);
            det = -det;
        }
        det *= m[col][col].clone();
        let p = m[col][col].clone();
        for r in col + 1..n {
            let f = &m[r][col] / &p;
            for k in col..n {
                let v = &m[col][k] * &f;
                m[r][k] -= v;
            }
        }
    }
    det
}

fn rational_scalar(kvars: usize, r: &BigRational) -> GaussScalar {
    GaussScalar::from_ratio(kvars, r)
}

/// Kähler form of Y built from phi, in the engine's fiber-first
/// orientation: sum phi_{jk} dy_j ^ dx_k. The base-first orientation is
/// incompatible with the volume-form identity under any fiber
/// integration convention, so this sign is pinned by the acceptance
/// battery together with the strip parities.
pub fn omega_y(phi: &PhiMatrix, kvars: usize) -> DifferentialForm {
    let n = phi.dim();
    let mut form = DifferentialForm::zero(n, kvars);
    for j in 0..n {
        for k in 0..n {
            form = form.add(
                &DifferentialForm::generator(n, kvars, dx_bit(k) | dy_bit(n, j))
                    .scale(&rational_scalar(kvars, phi.entry(j, k)).neg()),
            );
        }
    }
    form
}

pub fn exp_i_omega_y(phi: &PhiMatrix, kvars: usize) -> DifferentialForm {
    omega_y(phi, kvars)
        .scale(&GaussScalar::i(kvars))
        .form_exp()
        .expect("even form")
}

/// Holomorphic volume form of X: wedge of (sum_k phi_{jk} dx_k + i du_j).
pub fn volume_form_x(phi: &PhiMatrix, kvars: usize) -> DifferentialForm {
    let n = phi.dim();
    let mut form = DifferentialForm::one(n, kvars);
    for j in 0..n {
        let mut factor = DifferentialForm::du(n, kvars, j).scale(&GaussScalar::i(kvars));
        for k in 0..n {
            factor = factor.add(
                &DifferentialForm::dx(n, kvars, k)
                    .scale(&rational_scalar(kvars, phi.entry(j, k))),
            );
        }
        form = form.wedge(&factor);
    }
    form
}

/// Holonomy pairing of a flat fiber connection with a loop class:
/// exp(-i <y, v>).
pub fn holonomy(v: &[i64], y: &[f64]) -> Result<Complex64> {
    if v.len() != y.len() {
        return Err(Error::LengthMismatch(format!(
            "lattice vector has length {}, angles have length {}",
            v.len(),
            y.len()
        )));
    }
    let angle: f64 = v.iter().zip(y).map(|(&vi, yi)| vi as f64 * yi).sum();
    Ok(Complex64::from_polar(1.0, -angle))
}

/// Lattice-graded form: finitely many strata v with a form attached,
/// modeling sum_v e^{-<x,v>} alpha_v delta_v.
#[derive(Clone, PartialEq, Debug)]
pub struct GradedForm {
    n: usize,
    kvars: usize,
    strata: BTreeMap<Vec<i64>, DifferentialForm>,
}

impl GradedForm {
    pub fn zero(n: usize, kvars: usize) -> Self {
        GradedForm { n, kvars, strata: BTreeMap::new() }
    }

    pub fn insert(&mut self, v: Vec<i64>, form: DifferentialForm) {
        assert_eq!(v.len(), self.n);
        if form.is_zero() {
            return;
        }
        match self.strata.entry(v) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(form);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&form);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn strata(&self) -> impl Iterator<Item = (&Vec<i64>, &DifferentialForm)> {
        self.strata.iter()
    }

    pub fn stratum(&self, v: &[i64]) -> DifferentialForm {
        self.strata
            .get(v)
            .cloned()
            .unwrap_or_else(|| DifferentialForm::zero(self.n, self.kvars))
    }

    /// 0-form strata from a lattice-graded function.
    pub fn from_loop(f: &LoopFunction) -> Self {
        let n = f.nvars();
        let kvars = f.terms().next().map(|(_, c)| c.kvars()).unwrap_or(0);
        let mut out = Self::zero(n, kvars);
        for (v, c) in f.terms() {
            out.insert(v.clone(), DifferentialForm::from_scalar(n, c.clone()));
        }
        out
    }

    /// Strata c_v * base for a fixed form, e.g. exp(i omega_X) * Exp Psi.
    pub fn from_loop_with_form(f: &LoopFunction, base: &DifferentialForm) -> Self {
        let n = f.nvars();
        let mut out = Self::zero(n, base.kvars());
        for (v, c) in f.terms() {
            out.insert(v.clone(), base.scale(c));
        }
        out
    }
}

/// Toric SYZ transform: each stratum is transformed degree-resolved and
/// tagged with its Fourier monomial z^v. Pure 0-form strata pass through
/// as fiberwise Fourier series; form strata go through the semi-flat
/// kernel.
pub fn toric_syz_fwd(g: &GradedForm) -> Result<DifferentialForm> {
    let n = g.n;
    let mut acc = DifferentialForm::zero(n, g.kvars);
    for (v, alpha) in &g.strata {
        if alpha.contains_dy() {
            return Err(Error::UnexpectedGenerators("dy"));
        }
        let transformed = if alpha.is_pure_zero_form() {
            alpha.clone()
        } else {
            alpha.semiflat_fwd()?
        };
        let mut e = vec![0i64; n + 1];
        e[1..].copy_from_slice(v);
        let z_mono = LaurentPoly::monomial(n + 1, e, GaussScalar::one(g.kvars));
        acc = acc.add(&transformed.scale_coeff(&z_mono));
    }
    Ok(acc)
}

/// Inverse toric transform: splits a form on Y by its Fourier monomials
/// and sends each stratum back, degree-resolved.
pub fn toric_syz_inv(alpha: &DifferentialForm) -> Result<GradedForm> {
    if alpha.contains_du() {
        return Err(Error::UnexpectedGenerators("du"));
    }
    let n = alpha.n();
    let kvars = alpha.kvars();
    // Regroup coefficients by z-monomial, keeping tau powers.
    let mut split: BTreeMap<Vec<i64>, DifferentialForm> = BTreeMap::new();
    for (mask, coeff) in alpha.terms() {
        for (e, c) in coeff.terms() {
            let v: Vec<i64> = e[1..].to_vec();
            let mut tau_only = vec![0i64; n + 1];
            tau_only[0] = e[0];
            let piece = LaurentPoly::monomial(n + 1, tau_only, c.clone());
            let entry = split
                .entry(v)
                .or_insert_with(|| DifferentialForm::zero(n, kvars));
            let mut single = DifferentialForm::zero(n, kvars);
            single.insert(*mask, piece);
            *entry = entry.add(&single);
        }
    }
    let mut out = GradedForm::zero(n, kvars);
    for (v, form) in split {
        let back = if form.is_pure_zero_form() {
            form
        } else {
            form.semiflat_inv()?
        };
        out.insert(v, back);
    }
    Ok(out)
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct StratumCheck {
    pub stratum: Vec<i64>,
    pub passed: bool,
}

/// Stratum-by-stratum verification that the toric transform takes the
/// corrected A-side form to exp(W) Omega_Y and back, at cutoff K.
#[derive(Clone, Debug, serde::Serialize)]
pub struct TransformCheckReport {
    pub cutoff: usize,
    pub superpotential_image_ok: bool,
    pub forward: Vec<StratumCheck>,
    pub inverse: Vec<StratumCheck>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failing_stratum: Option<Vec<i64>>,
}

/// Extracts from a Y-side form the sub-form whose coefficients carry the
/// z-monomial `v`, with the monomial stripped.
fn z_stratum(alpha: &DifferentialForm, v: &[i64]) -> DifferentialForm {
    let n = alpha.n();
    let mut out = DifferentialForm::zero(n, alpha.kvars());
    for (mask, coeff) in alpha.terms() {
        let mut kept = LaurentPoly::zero(n + 1, alpha.kvars());
        for (e, c) in coeff.terms() {
            if e[1..] == *v {
                let mut tau_only = vec![0i64; n + 1];
                tau_only[0] = e[0];
                kept = kept.add(&LaurentPoly::monomial(n + 1, tau_only, c.clone()));
            }
        }
        let mut single = DifferentialForm::zero(n, alpha.kvars());
        single.insert(*mask, kept);
        out = out.add(&single);
    }
    out
}

pub fn check_transform_theorem(fp: &FanPolytope, cutoff: usize) -> Result<TransformCheckReport> {
    let n = fp.dim;
    let l = fp.kahler_params;
    let w = build_superpotential(fp)?;
    let psi = psi_total(fp)?;

    // F(Psi) = W, the function stratum of the theorem.
    let psi_graded = GradedForm::from_loop(&psi);
    let psi_image = toric_syz_fwd(&psi_graded)?;
    let mut expected_w = DifferentialForm::zero(n, l);
    expected_w.insert(0, w.poly.extend_front(1));
    let superpotential_image_ok = psi_image == expected_w;

    // Forward: F(exp(i omega_X) Exp Psi) vs (sum W^k/k!) Omega_Y.
    let exp_psi = psi.conv_exp(cutoff);
    let base = exp_i_omega_x(n, l);
    let lhs = toric_syz_fwd(&GradedForm::from_loop_with_form(&exp_psi, &base))?;
    let mut w_series = LaurentPoly::one(n, l);
    let mut w_power = LaurentPoly::one(n, l);
    let mut factorial = BigRational::one();
    for k in 1..=cutoff {
        w_power = w_power.mul(&w.poly);
        factorial *= BigRational::from(BigInt::from(k as i64));
        w_series = w_series.add(
            &w_power.scale(&GaussScalar::from_ratio(l, &factorial.recip())),
        );
    }
    let rhs = volume_form_y(n, l).scale_coeff(&w_series.extend_front(1));

    let mut strata: Vec<Vec<i64>> = exp_psi.terms().map(|(v, _)| v.clone()).collect();
    for (v, _) in w_series.terms() {
        if !strata.contains(v) {
            strata.push(v.clone());
        }
    }
    strata.sort();
    strata.dedup();

    let mut forward = Vec::new();
    let mut failing = None;
    for v in &strata {
        let ok = z_stratum(&lhs, v) == z_stratum(&rhs, v);
        if !ok && failing.is_none() {
            failing = Some(v.clone());
        }
        forward.push(StratumCheck { stratum: v.clone(), passed: ok });
    }

    // Inverse: F^{-1}(exp(W) Omega_Y) recovers the truncated A-side data.
    let expected = GradedForm::from_loop_with_form(&exp_psi, &base);
    let back = toric_syz_inv(&rhs)?;
    let mut inverse = Vec::new();
    for v in &strata {
        let ok = back.stratum(v) == expected.stratum(v);
        if !ok && failing.is_none() {
            failing = Some(v.clone());
        }
        inverse.push(StratumCheck { stratum: v.clone(), passed: ok });
    }

    let passed = superpotential_image_ok
        && forward.iter().all(|s| s.passed)
        && inverse.iter().all(|s| s.passed);
    Ok(TransformCheckReport {
        cutoff,
        superpotential_image_ok,
        forward,
        inverse,
        passed,
        failing_stratum: failing,
    })
}

/// Deterministic SPD test matrices phi = L L^T with small rational L.
pub fn seeded_spd_matrices(n: usize, count: usize, seed: u64) -> Vec<PhiMatrix> {
    let mut state = seed.wrapping_mul(2685821657736338717).wrapping_add(1442695040888963407);
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    (0..count)
        .map(|_| {
            let mut l = vec![vec![BigRational::zero(); n]; n];
            for j in 0..n {
                for k in 0..=j {
                    let numer = (next() % 5) as i64;
                    let denom = 1 + (next() % 3) as i64;
                    let v = if j == k {
                        BigRational::new(BigInt::from(1 + (next() % 4) as i64), BigInt::from(denom))
                    } else {
                        BigRational::new(BigInt::from(numer - 2), BigInt::from(denom))
                    };
                    l[j][k] = v;
                }
            }
            let mut phi = vec![vec![BigRational::zero(); n]; n];
            for j in 0..n {
                for k in 0..n {
                    let mut s = BigRational::zero();
                    for m in 0..n {
                        s += &l[j][m] * &l[k][m];
                    }
                    phi[j][k] = s;
                }
            }
            PhiMatrix::new(phi).expect("L L^T is symmetric positive-definite")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;

    fn i_scalar() -> GaussScalar {
        GaussScalar::i(0)
    }

    #[test]
    fn wedge_signs() {
        let n = 1;
        let dx = DifferentialForm::dx(n, 0, 0);
        let du = DifferentialForm::du(n, 0, 0);
        let a = dx.wedge(&du);
        let b = du.wedge(&dx);
        assert_eq!(a, b.neg());
        assert!(dx.wedge(&dx).is_zero());
        assert_eq!(a.to_text(), "dx1^du1");
    }

    #[test]
    fn form_exp_small() {
        let n = 1;
        let f = omega_x(n, 0).scale(&i_scalar()).form_exp().unwrap();
        let expected = DifferentialForm::one(n, 0)
            .add(&DifferentialForm::generator(n, 0, 0b101).scale(&i_scalar()));
        assert_eq!(f, expected);

        let g = exp_i_omega_x(2, 0);
        // 1 + i(dx1 du1 + dx2 du2) - dx1 du1 dx2 du2 (canonically sorted).
        assert_eq!(g.terms().count(), 4);
        let top = g.coefficient(0b110011);
        assert_eq!(top, LaurentPoly::one(3, 0));
        assert!(
            DifferentialForm::dx(1, 0, 0).form_exp().is_err(),
            "odd forms have no exponential here"
        );
    }

    #[test]
    fn fiber_integration_examples() {
        let n = 1;
        let dy_du = DifferentialForm::generator(n, 0, 0b110);
        let int_u = dy_du.fiber_integrate(FiberBlock::U);
        // 2pi * dy
        assert_eq!(int_u.to_text(), "(2pi) * dy1");
        assert!(DifferentialForm::one(n, 0).fiber_integrate(FiberBlock::U).is_zero());
        let dy = DifferentialForm::dy(n, 0, 0);
        assert_eq!(dy.fiber_integrate(FiberBlock::Y).to_text(), "(2pi)");
    }

    #[test]
    fn fiber_integration_annihilates_partial_blocks() {
        let n = 2;
        // Monomials missing some du_j must die under u-integration.
        for mask in [0b000001u64, 0b010000, 0b010011, 0b100001] {
            let f = DifferentialForm::generator(n, 0, mask);
            assert!(f.fiber_integrate(FiberBlock::U).is_zero(), "mask {mask:b}");
        }
    }

    #[test]
    fn semiflat_identities_low_dim() {
        for n in 1..=3 {
            let lhs = exp_i_omega_x(n, 0).semiflat_fwd().unwrap();
            assert_eq!(lhs, volume_form_y(n, 0), "forward n={n}");
            let back = volume_form_y(n, 0).semiflat_inv().unwrap();
            assert_eq!(back, exp_i_omega_x(n, 0), "inverse n={n}");
        }
    }

    #[test]
    fn semiflat_metric_identities_identity_phi() {
        for n in 1..=2 {
            let phi = PhiMatrix::identity(n);
            let lhs = volume_form_x(&phi, 0).semiflat_fwd().unwrap();
            assert_eq!(lhs, exp_i_omega_y(&phi, 0), "forward n={n}");
            let back = exp_i_omega_y(&phi, 0).semiflat_inv().unwrap();
            assert_eq!(back, volume_form_x(&phi, 0), "inverse n={n}");
        }
    }

    #[test]
    fn round_trip_on_basis_n2() {
        let n = 2;
        for mask_bits in 0..16u64 {
            // Spread bits over the dx and du blocks.
            let mask = (mask_bits & 0b11) | ((mask_bits >> 2) << (2 * n));
            let b = DifferentialForm::generator(n, 0, mask);
            let round = b.semiflat_fwd().unwrap().semiflat_inv().unwrap();
            assert_eq!(round, b, "mask {mask:b}");
        }
    }

    #[test]
    fn domain_errors() {
        let f = DifferentialForm::dy(1, 0, 0);
        assert!(matches!(f.semiflat_fwd(), Err(Error::UnexpectedGenerators("dy"))));
        let g = DifferentialForm::du(1, 0, 0);
        assert!(matches!(g.semiflat_inv(), Err(Error::UnexpectedGenerators("du"))));
    }

    #[test]
    fn holonomy_values() {
        let one = holonomy(&[0, 0], &[1.0, 2.0]).unwrap();
        assert!((one - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        let minus = holonomy(&[1, 0], &[std::f64::consts::PI, 0.0]).unwrap();
        assert!((minus - Complex64::new(-1.0, 0.0)).norm() < 1e-12);
        let minus = holonomy(&[1, 1], &[std::f64::consts::FRAC_PI_2; 2]).unwrap();
        assert!((minus - Complex64::new(-1.0, 0.0)).norm() < 1e-12);
        assert!(holonomy(&[1], &[0.0, 0.0]).is_err());
    }

    #[test]
    fn phi_matrix_validation() {
        let bad = PhiMatrix::new(vec![
            vec![BigRational::from(BigInt::from(1)), BigRational::from(BigInt::from(2))],
            vec![BigRational::from(BigInt::from(3)), BigRational::from(BigInt::from(1))],
        ]);
        assert!(bad.is_err());
        let phi = PhiMatrix::from_json(r#"[["2","1/2"],["1/2","1"]]"#).unwrap();
        let inv = phi.inverse();
        // phi * phi^{-1} = identity, exactly.
        for j in 0..2 {
            for k in 0..2 {
                let mut s = BigRational::zero();
                for m in 0..2 {
                    s += phi.entry(j, m) * &inv[m][k];
                }
                let expected = if j == k { BigRational::one() } else { BigRational::zero() };
                assert_eq!(s, expected);
            }
        }
    }

    #[test]
    fn toric_transform_zero_forms_are_fourier() {
        let fp = presets::preset("CP2").unwrap();
        let psi = psi_total(&fp).unwrap();
        let image = toric_syz_fwd(&GradedForm::from_loop(&psi)).unwrap();
        let w = build_superpotential(&fp).unwrap();
        let mut expected = DifferentialForm::zero(2, 1);
        expected.insert(0, w.poly.extend_front(1));
        assert_eq!(image, expected);
    }

    #[test]
    fn transform_theorem_cp1() {
        let fp = presets::preset("CP1").unwrap();
        let report = check_transform_theorem(&fp, 4).unwrap();
        assert!(report.passed, "{report:?}");
    }

    #[test]
    fn transform_theorem_k0_reduces_to_semiflat() {
        let fp = presets::preset("CP2").unwrap();
        let report = check_transform_theorem(&fp, 0).unwrap();
        assert!(report.passed, "{report:?}");
    }

    #[test]
    fn seeded_matrices_are_spd() {
        for n in 1..=3 {
            let mats = seeded_spd_matrices(n, 5, 42);
            assert_eq!(mats.len(), 5);
        }
    }
}
