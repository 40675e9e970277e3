//! Sparse integer polynomials in the Kähler parameters `q1..ql`.
//!
//! These are the numerators and denominators of the exact ground field
//! Q(q1,..,ql). Canonical forms rely on the gcd implemented here via
//! primitive pseudo-remainder sequences, so that fractions reduce to a
//! unique representative.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// Graded reverse lexicographic comparison of exponent vectors.
///
/// Higher total degree wins; on ties the vector whose last nonzero
/// difference entry is negative is the larger. Also used on Laurent
/// exponents (possibly negative entries) for deterministic term order.
pub fn grevlex_cmp(a: &[i64], b: &[i64]) -> Ordering {
    debug_assert_eq!(a.len(), b.len());
    let da: i64 = a.iter().sum();
    let db: i64 = b.iter().sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        other => return other,
    }
    for (x, y) in a.iter().zip(b).rev() {
        match x.cmp(y) {
            Ordering::Less => return Ordering::Greater,
            Ordering::Greater => return Ordering::Less,
            Ordering::Equal => {}
        }
    }
    Ordering::Equal
}

pub(crate) fn grevlex_cmp_u32(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&x| x as u64).sum();
    let db: u64 = b.iter().map(|&x| x as u64).sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        other => return other,
    }
    for (x, y) in a.iter().zip(b).rev() {
        match x.cmp(y) {
            Ordering::Less => return Ordering::Greater,
            Ordering::Greater => return Ordering::Less,
            Ordering::Equal => {}
        }
    }
    Ordering::Equal
}

/// Polynomial in Z[q1..ql] with sparse exponent-vector terms.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl QPoly {
    pub fn zero(nvars: usize) -> Self {
        QPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![0; nvars], c);
        }
        QPoly { nvars, terms }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigInt::one())
    }

    pub fn var(nvars: usize, idx: usize) -> Self {
        assert!(idx < nvars, "variable index {idx} out of range for {nvars} parameters");
        let mut e = vec![0; nvars];
        e[idx] = 1;
        Self::monomial(nvars, e, BigInt::one())
    }

    pub fn monomial(nvars: usize, exps: Vec<u32>, c: BigInt) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        QPoly { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.is_constant() && self.terms.values().next().map(|c| c.is_one()).unwrap_or(false)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty()
            || (self.terms.len() == 1 && self.terms.keys().next().unwrap().iter().all(|&e| e == 0))
    }

    pub fn constant_value(&self) -> Option<&BigInt> {
        if self.is_zero() {
            return None;
        }
        if self.is_constant() {
            self.terms.values().next()
        } else {
            None
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigInt)> {
        self.terms.iter()
    }

    fn insert_term(terms: &mut BTreeMap<Vec<u32>, BigInt>, e: Vec<u32>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            Self::insert_term(&mut terms, e.clone(), c.clone());
        }
        QPoly { nvars: self.nvars, terms }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        QPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut terms = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                Self::insert_term(&mut terms, e, ca * cb);
            }
        }
        QPoly { nvars: self.nvars, terms }
    }

    pub fn mul_bigint(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        QPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.nvars);
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

    pub fn deg_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|e| e[var]).max().unwrap_or(0)
    }

    /// Leading (exponent, coefficient) under grevlex; None for zero.
    pub fn leading(&self) -> Option<(&Vec<u32>, &BigInt)> {
        self.terms
            .iter()
            .max_by(|(a, _), (b, _)| grevlex_cmp_u32(a, b))
    }

    /// Gcd of all integer coefficients, non-negative.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Partial derivative with respect to `q_{var}`.
    pub fn derivative(&self, var: usize) -> Self {
        assert!(var < self.nvars);
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[var] -= 1;
            Self::insert_term(&mut terms, e2, c * BigInt::from(e[var]));
        }
        QPoly { nvars: self.nvars, terms }
    }

    pub fn eval(&self, q: &[f64]) -> f64 {
        assert_eq!(q.len(), self.nvars);
        let mut acc = 0.0;
        for (e, c) in &self.terms {
            let mut t = bigint_to_f64(c);
            for (x, &k) in q.iter().zip(e.iter()) {
                t *= x.powi(k as i32);
            }
            acc += t;
        }
        acc
    }

    /// Exact multivariate division; None when `d` does not divide `self`.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        assert_eq!(self.nvars, d.nvars);
        if d.is_zero() {
            return None;
        }
        let (dm, dc) = d.leading().map(|(e, c)| (e.clone(), c.clone())).unwrap();
        let mut r = self.clone();
        let mut q = BTreeMap::new();
        while !r.is_zero() {
            let (rm, rc) = r.leading().map(|(e, c)| (e.clone(), c.clone())).unwrap();
            if rm.iter().zip(&dm).any(|(a, b)| a < b) {
                return None;
            }
            let (quot, rem) = rc.div_rem(&dc);
            if !rem.is_zero() {
                return None;
            }
            let me: Vec<u32> = rm.iter().zip(&dm).map(|(a, b)| a - b).collect();
            let t = QPoly::monomial(self.nvars, me.clone(), quot.clone());
            r = r.sub(&t.mul(d));
            Self::insert_term(&mut q, me, quot);
        }
        Some(QPoly { nvars: self.nvars, terms: q })
    }

    /// Sign convention: leading grevlex coefficient positive.
    pub fn normalize_sign(&self) -> Self {
        match self.leading() {
            Some((_, c)) if c.is_negative() => self.neg(),
            _ => self.clone(),
        }
    }

    /// Coefficients of `self` viewed as a univariate polynomial in `var`.
    fn as_univariate(&self, var: usize) -> BTreeMap<u32, QPoly> {
        let mut out: BTreeMap<u32, QPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let k = e[var];
            let mut e2 = e.clone();
            e2[var] = 0;
            let entry = out.entry(k).or_insert_with(|| QPoly::zero(self.nvars));
            *entry = entry.add(&QPoly::monomial(self.nvars, e2, c.clone()));
        }
        out
    }

    fn lead_coeff_in(&self, var: usize) -> QPoly {
        let d = self.deg_in(var);
        let mut out = QPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[var] == d {
                let mut e2 = e.clone();
                e2[var] = 0;
                out = out.add(&QPoly::monomial(self.nvars, e2, c.clone()));
            }
        }
        out
    }

    fn mul_var_pow(&self, var: usize, k: u32) -> Self {
        QPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e2 = e.clone();
                    e2[var] += k;
                    (e2, c.clone())
                })
                .collect(),
        }
    }

    /// Content with respect to `var`: gcd of the univariate coefficients.
    fn content_in(&self, var: usize) -> QPoly {
        let mut g = QPoly::zero(self.nvars);
        for c in self.as_univariate(var).values() {
            g = gcd(&g, c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn to_text(&self, prefix: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut terms: Vec<(&Vec<u32>, &BigInt)> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| grevlex_cmp_u32(b, a));
        let mut out = String::new();
        for (i, (e, c)) in terms.iter().enumerate() {
            let mono = monomial_text(e, prefix);
            let neg = c.is_negative();
            let abs = c.magnitude().to_string();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if mono.is_empty() {
                out.push_str(&abs);
            } else if abs == "1" {
                out.push_str(&mono);
            } else {
                out.push_str(&abs);
                out.push('*');
                out.push_str(&mono);
            }
        }
        out
    }

    /// Single term, unit coefficient aside; atom for rendering purposes.
    pub fn is_single_term(&self) -> bool {
        self.terms.len() <= 1
    }
}

fn monomial_text(e: &[u32], prefix: &str) -> String {
    let mut parts = Vec::new();
    for (i, &k) in e.iter().enumerate() {
        if k == 0 {
            continue;
        }
        if k == 1 {
            parts.push(format!("{}{}", prefix, i + 1));
        } else {
            parts.push(format!("{}{}^{}", prefix, i + 1, k));
        }
    }
    parts.join("*")
}

fn bigint_to_f64(c: &BigInt) -> f64 {
    use num_traits::ToPrimitive;
    c.to_f64().unwrap_or(f64::NAN)
}

/// Pseudo-remainder of `a` by `b` in the variable `var`.
fn prem(a: &QPoly, b: &QPoly, var: usize) -> QPoly {
    let db = b.deg_in(var);
    let lb = b.lead_coeff_in(var);
    let mut r = a.clone();
    while !r.is_zero() && r.deg_in(var) >= db {
        let dr = r.deg_in(var);
        let lr = r.lead_coeff_in(var);
        r = lb.mul(&r).sub(&lr.mul(&b.mul_var_pow(var, dr - db)));
    }
    r
}

fn primitive_part_in(p: &QPoly, var: usize) -> QPoly {
    if p.is_zero() {
        return p.clone();
    }
    let c = p.content_in(var);
    p.exact_div(&c)
        .expect("content must divide its polynomial")
        .normalize_sign()
}

/// Gcd over Z[q1..ql] via primitive pseudo-remainder sequences.
///
/// The result is sign-normalized (positive leading coefficient).
pub fn gcd(f: &QPoly, g: &QPoly) -> QPoly {
    assert_eq!(f.nvars(), g.nvars());
    if f.is_zero() {
        return g.normalize_sign();
    }
    if g.is_zero() {
        return f.normalize_sign();
    }
    let nvars = f.nvars();
    let var = (0..nvars)
        .rev()
        .find(|&v| f.deg_in(v) > 0 || g.deg_in(v) > 0);
    let var = match var {
        None => {
            // Both constants.
            let a = f.constant_value().unwrap();
            let b = g.constant_value().unwrap();
            return QPoly::constant(nvars, a.gcd(b));
        }
        Some(v) => v,
    };
    let cf = f.content_in(var);
    let cg = g.content_in(var);
    let c = gcd(&cf, &cg);
    let fp = f.exact_div(&cf).expect("content divides");
    let gp = g.exact_div(&cg).expect("content divides");
    let (mut a, mut b) = if fp.deg_in(var) >= gp.deg_in(var) {
        (fp, gp)
    } else {
        (gp, fp)
    };
    while !b.is_zero() {
        let r = prem(&a, &b, var);
        a = b;
        b = primitive_part_in(&r, var);
    }
    c.mul(&primitive_part_in(&a, var)).normalize_sign()
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text("q"))
    }
}
