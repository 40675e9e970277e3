//! Sparse Laurent polynomials over Q(q1,..,ql)(i) with exponent vectors
//! in Z^n. Houses the superpotential, its logarithmic derivatives and the
//! monomials z^v attached to facets.

use crate::scalar::{grevlex_cmp, GaussScalar, QScalar};
use num_complex::Complex64;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaurentPoly {
    nvars: usize,
    kvars: usize,
    terms: BTreeMap<Vec<i64>, GaussScalar>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize, kvars: usize) -> Self {
        LaurentPoly { nvars, kvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize, kvars: usize) -> Self {
        Self::constant(nvars, GaussScalar::one(kvars))
    }

    pub fn constant(nvars: usize, c: GaussScalar) -> Self {
        let kvars = c.kvars();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![0; nvars], c);
        }
        LaurentPoly { nvars, kvars, terms }
    }

    pub fn monomial(nvars: usize, exps: Vec<i64>, c: GaussScalar) -> Self {
        assert_eq!(exps.len(), nvars);
        let kvars = c.kvars();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        LaurentPoly { nvars, kvars, terms }
    }

    /// The coordinate z_{axis+1}.
    pub fn var(nvars: usize, kvars: usize, axis: usize) -> Self {
        assert!(axis < nvars);
        let mut e = vec![0; nvars];
        e[axis] = 1;
        Self::monomial(nvars, e, GaussScalar::one(kvars))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn kvars(&self) -> usize {
        self.kvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &GaussScalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exps: &[i64]) -> GaussScalar {
        self.terms
            .get(exps)
            .cloned()
            .unwrap_or_else(|| GaussScalar::zero(self.kvars))
    }

    pub fn support(&self) -> impl Iterator<Item = &Vec<i64>> {
        self.terms.keys()
    }

    fn insert(&mut self, e: Vec<i64>, c: GaussScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "variable-count mismatch");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            nvars: self.nvars,
            kvars: self.kvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "variable-count mismatch");
        let mut out = Self::zero(self.nvars, self.kvars.max(other.kvars));
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<i64> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.insert(e, ca.mul(cb));
            }
        }
        out
    }

    pub fn scale(&self, c: &GaussScalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars, self.kvars);
        }
        LaurentPoly {
            nvars: self.nvars,
            kvars: self.kvars,
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k.mul(c))).collect(),
        }
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.nvars, self.kvars);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Logarithmic derivative z_j d/dz_j: the term c z^v maps to (v_j c) z^v.
    pub fn log_derivative(&self, axis: usize) -> Self {
        assert!(axis < self.nvars, "axis {axis} out of range for {} variables", self.nvars);
        LaurentPoly {
            nvars: self.nvars,
            kvars: self.kvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e[axis] != 0)
                .map(|(e, c)| (e.clone(), c.mul_int(e[axis])))
                .collect(),
        }
    }

    /// Formal q_a-derivative applied to every coefficient.
    pub fn q_derivative(&self, idx: usize) -> Self {
        let mut out = Self::zero(self.nvars, self.kvars);
        for (e, c) in &self.terms {
            out.insert(e.clone(), c.q_derivative(idx));
        }
        out
    }

    pub fn eval(&self, z: &[Complex64], q: &[f64]) -> Complex64 {
        assert_eq!(z.len(), self.nvars);
        let mut acc = Complex64::new(0.0, 0.0);
        for (e, c) in &self.terms {
            let mut t = c.eval(q);
            for (zj, &k) in z.iter().zip(e.iter()) {
                t *= zj.powi(k as i32);
            }
            acc += t;
        }
        acc
    }

    /// Exponent prefix extension, used to embed n-variable coefficients
    /// into rings with extra leading variables.
    pub fn extend_front(&self, extra: usize) -> Self {
        LaurentPoly {
            nvars: self.nvars + extra,
            kvars: self.kvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e2 = vec![0; extra];
                    e2.extend_from_slice(e);
                    (e2, c.clone())
                })
                .collect(),
        }
    }

    /// Canonical text rendering, terms sorted descending by the monomial
    /// order, e.g. `z1 + z2 + q1*z1^-1*z2^-1`.
    pub fn to_text(&self) -> String {
        self.to_text_with("z")
    }

    pub fn to_text_with(&self, prefix: &str) -> String {
        let names: Vec<String> = (1..=self.nvars).map(|i| format!("{prefix}{i}")).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        self.to_text_named(&refs)
    }

    /// Rendering with one explicit name per variable.
    pub fn to_text_named(&self, names: &[&str]) -> String {
        assert_eq!(names.len(), self.nvars);
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut entries: Vec<(&Vec<i64>, &GaussScalar)> = self.terms.iter().collect();
        entries.sort_by(|(a, _), (b, _)| grevlex_cmp(b, a));
        let mut out = String::new();
        for (i, (e, c)) in entries.iter().enumerate() {
            let mono = monomial_text(e, names);
            let (body, neg) = term_text(c, &mono);
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        out
    }
}

fn monomial_text(e: &[i64], names: &[&str]) -> String {
    let mut parts = Vec::new();
    for (i, &k) in e.iter().enumerate() {
        if k == 0 {
            continue;
        }
        if k == 1 {
            parts.push(names[i].to_string());
        } else {
            parts.push(format!("{}^{}", names[i], k));
        }
    }
    parts.join("*")
}

/// Returns the rendered term and whether a leading minus was factored out.
fn term_text(c: &GaussScalar, mono: &str) -> (String, bool) {
    let (c, neg) = if c.is_negative_term() {
        (c.neg(), true)
    } else {
        (c.clone(), false)
    };
    if mono.is_empty() {
        return (c.to_text(), neg);
    }
    if c.is_one() {
        return (mono.to_string(), neg);
    }
    (format!("{}*{}", c.to_text_atom(), mono), neg)
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

/// Convenience constructor used all over the tests: exponent list with
/// integer coefficients, no Kähler parameters involved.
pub fn int_poly(nvars: usize, kvars: usize, terms: &[(&[i64], i64)]) -> LaurentPoly {
    let mut out = LaurentPoly::zero(nvars, kvars);
    for (e, c) in terms {
        out = out.add(&LaurentPoly::monomial(
            nvars,
            e.to_vec(),
            GaussScalar::from_int(kvars, *c),
        ));
    }
    out
}

/// The scalar q_{idx+1} lifted to a constant Laurent polynomial.
pub fn q_constant(nvars: usize, kvars: usize, idx: usize) -> LaurentPoly {
    LaurentPoly::constant(nvars, GaussScalar::from_real(QScalar::var(kvars, idx)))
}
