//! Quotients of Laurent polynomial rings by Buchberger's algorithm.
//!
//! Laurent ideals are handled through a single localizing variable `w`
//! with the relation `w*z1*..*zn = 1`. The monomial order is graded
//! reverse lexicographic with `w` last, so reports and standard
//! monomials are deterministic.

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::scalar::{grevlex_cmp_u32, GaussScalar};
use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, VecDeque};

/// Monomial in the ambient ring k[z1..zn, w], ordered by grevlex with the
/// localizing variable last.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        grevlex_cmp_u32(&self.0, &other.0)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Monomial {
    fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    fn quotient_by(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn to_text(&self, laurent_vars: usize) -> String {
        let mut parts = Vec::new();
        for (i, &k) in self.0.iter().enumerate() {
            if k == 0 {
                continue;
            }
            let name = if i < laurent_vars {
                format!("z{}", i + 1)
            } else {
                "w".to_string()
            };
            if k == 1 {
                parts.push(name);
            } else {
                parts.push(format!("{name}^{k}"));
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

/// Polynomial in the ambient localization ring.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AmbientPoly {
    nvars: usize,
    kvars: usize,
    terms: BTreeMap<Monomial, GaussScalar>,
}

impl AmbientPoly {
    pub fn zero(nvars: usize, kvars: usize) -> Self {
        AmbientPoly { nvars, kvars, terms: BTreeMap::new() }
    }

    fn insert(&mut self, m: Monomial, c: GaussScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
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

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn leading(&self) -> Option<(&Monomial, &GaussScalar)> {
        self.terms.last_key_value()
    }

    fn sub_scaled(&self, m: &Monomial, c: &GaussScalar, g: &AmbientPoly) -> AmbientPoly {
        // self - c * x^m * g
        let mut out = self.clone();
        for (gm, gc) in &g.terms {
            out.insert(gm.mul(m), gc.mul(c).neg());
        }
        out
    }

    fn make_monic(&self) -> AmbientPoly {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = c.inv();
                AmbientPoly {
                    nvars: self.nvars,
                    kvars: self.kvars,
                    terms: self
                        .terms
                        .iter()
                        .map(|(m, k)| (m.clone(), k.mul(&inv)))
                        .collect(),
                }
            }
        }
    }

    pub fn to_text(&self, laurent_vars: usize) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let mono = m.to_text(laurent_vars);
            let (c, neg) = if c.is_negative_term() {
                (c.neg(), true)
            } else {
                (c.clone(), false)
            };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if mono == "1" {
                out.push_str(&c.to_text());
            } else if c.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{}*{}", c.to_text_atom(), mono));
            }
        }
        out
    }
}

/// Presentation of a finite- or infinite-dimensional Laurent quotient.
#[derive(Clone, Debug)]
pub struct QuotientPresentation {
    pub laurent_vars: usize,
    pub ambient_vars: usize,
    pub kvars: usize,
    pub groebner: Vec<AmbientPoly>,
    /// Monomials not divisible by any leading monomial; None when the
    /// quotient is infinite-dimensional.
    pub standard_monomials: Option<Vec<Monomial>>,
    pub order: &'static str,
}

impl QuotientPresentation {
    pub fn dimension(&self) -> Option<usize> {
        self.standard_monomials.as_ref().map(|s| s.len())
    }

    pub fn groebner_text(&self) -> Vec<String> {
        self.groebner
            .iter()
            .map(|g| g.to_text(self.laurent_vars))
            .collect()
    }

    pub fn standard_monomial_text(&self) -> Option<Vec<String>> {
        self.standard_monomials
            .as_ref()
            .map(|s| s.iter().map(|m| m.to_text(self.laurent_vars)).collect())
    }
}

/// Clears a Laurent polynomial into the ambient ring by the monomial unit
/// z^m with m_j = max(0, -min exponent). No w appears.
fn clear_generator(f: &LaurentPoly, kvars: usize) -> AmbientPoly {
    let n = f.nvars();
    let mut shift = vec![0i64; n];
    for e in f.support() {
        for (s, &v) in shift.iter_mut().zip(e.iter()) {
            *s = (*s).max(-v);
        }
    }
    let mut out = AmbientPoly::zero(n + 1, kvars);
    for (e, c) in f.terms() {
        let mut m: Vec<u32> = e
            .iter()
            .zip(&shift)
            .map(|(v, s)| (v + s) as u32)
            .collect();
        m.push(0);
        out.insert(Monomial(m), c.clone());
    }
    out
}

/// Ambient representative of a Laurent polynomial, term by term: the
/// monomial z^v maps to z^{v+m} w^m with m the largest negative entry.
fn laurent_to_ambient(f: &LaurentPoly, kvars: usize) -> AmbientPoly {
    let n = f.nvars();
    let mut out = AmbientPoly::zero(n + 1, kvars);
    for (e, c) in f.terms() {
        let m = e.iter().map(|&v| (-v).max(0)).max().unwrap_or(0);
        let mut exps: Vec<u32> = e.iter().map(|&v| (v + m) as u32).collect();
        exps.push(m as u32);
        out.insert(Monomial(exps), c.clone());
    }
    out
}

/// Maps an ambient polynomial back through the localization:
/// z^a w^b becomes z^{a - b*(1,..,1)}.
fn ambient_to_laurent(f: &AmbientPoly, nvars: usize, kvars: usize) -> LaurentPoly {
    let mut out = LaurentPoly::zero(nvars, kvars);
    for (m, c) in &f.terms {
        let b = m.0[nvars] as i64;
        let exps: Vec<i64> = m.0[..nvars].iter().map(|&a| a as i64 - b).collect();
        out = out.add(&LaurentPoly::monomial(nvars, exps, c.clone()));
    }
    out
}

/// Full multivariate division remainder against a set of divisors.
fn reduce_full(f: &AmbientPoly, basis: &[AmbientPoly]) -> AmbientPoly {
    let mut rem = AmbientPoly::zero(f.nvars, f.kvars);
    let mut r = f.clone();
    'outer: while !r.is_zero() {
        let (m, c) = {
            let (m, c) = r.leading().unwrap();
            (m.clone(), c.clone())
        };
        for g in basis {
            if g.is_zero() {
                continue;
            }
            let (gm, gc) = g.leading().unwrap();
            if gm.divides(&m) {
                let factor = c.div(gc);
                let shift = m.quotient_by(gm);
                r = r.sub_scaled(&shift, &factor, g);
                continue 'outer;
            }
        }
        rem.insert(m.clone(), c.clone());
        r.terms.remove(&m);
    }
    rem
}

/// Buchberger with the product criterion, followed by minimalization and
/// inter-reduction. Output is monic and sorted by leading monomial.
fn reduced_groebner(gens: Vec<AmbientPoly>, nvars: usize, kvars: usize) -> Vec<AmbientPoly> {
    let mut basis: Vec<AmbientPoly> = Vec::new();
    for g in gens {
        if !g.is_zero() {
            basis.push(g.make_monic());
        }
    }
    let mut pairs: BTreeSet<(Monomial, usize, usize)> = BTreeSet::new();
    for i in 0..basis.len() {
        for j in 0..i {
            let lcm = basis[i].leading().unwrap().0.lcm(basis[j].leading().unwrap().0);
            pairs.insert((lcm, j, i));
        }
    }
    while let Some((lcm, i, j)) = pairs.pop_first() {
        let (lm_i, _) = basis[i].leading().unwrap();
        let (lm_j, _) = basis[j].leading().unwrap();
        if lm_i.is_coprime(lm_j) {
            continue;
        }
        // S-polynomial of two monic divisors.
        let si = lcm.quotient_by(lm_i);
        let sj = lcm.quotient_by(lm_j);
        let one = GaussScalar::one(kvars);
        let spoly = AmbientPoly::zero(nvars, kvars)
            .sub_scaled(&si, &one.neg(), &basis[i])
            .sub_scaled(&sj, &one, &basis[j]);
        let h = reduce_full(&spoly, &basis);
        if h.is_zero() {
            continue;
        }
        let h = h.make_monic();
        let k = basis.len();
        for (idx, g) in basis.iter().enumerate() {
            let lcm = h.leading().unwrap().0.lcm(g.leading().unwrap().0);
            pairs.insert((lcm, idx, k));
        }
        basis.push(h);
    }

    // Minimal basis: drop members whose leading monomial another divides.
    let mut keep: Vec<bool> = vec![true; basis.len()];
    for i in 0..basis.len() {
        if !keep[i] {
            continue;
        }
        for j in 0..basis.len() {
            if i == j || !keep[j] {
                continue;
            }
            let lm_i = basis[i].leading().unwrap().0;
            let lm_j = basis[j].leading().unwrap().0;
            if lm_j.divides(lm_i) && (lm_i != lm_j || j < i) {
                keep[i] = false;
                break;
            }
        }
    }
    let mut minimal: Vec<AmbientPoly> = basis
        .into_iter()
        .zip(keep)
        .filter(|(_, k)| *k)
        .map(|(g, _)| g)
        .collect();

    // Inter-reduce until stable.
    loop {
        let mut changed = false;
        for i in 0..minimal.len() {
            let others: Vec<AmbientPoly> = minimal
                .iter()
                .enumerate()
                .filter_map(|(j, g)| (j != i).then(|| g.clone()))
                .collect();
            let r = reduce_full(&minimal[i], &others).make_monic();
            if r != minimal[i] {
                minimal[i] = r;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    minimal.sort_by(|a, b| a.leading().unwrap().0.cmp(b.leading().unwrap().0));
    minimal
}

/// Standard monomials of a zero-dimensional leading-term ideal, or None
/// when some variable has no pure power among the leading monomials.
fn standard_monomials(groebner: &[AmbientPoly], nvars: usize) -> Option<Vec<Monomial>> {
    let lms: Vec<&Monomial> = groebner
        .iter()
        .filter_map(|g| g.leading().map(|(m, _)| m))
        .collect();
    for var in 0..nvars {
        let has_pure_power = lms
            .iter()
            .any(|m| m.0.iter().enumerate().all(|(i, &e)| i == var || e == 0));
        if !has_pure_power {
            return None;
        }
    }
    let divisible = |m: &Monomial| lms.iter().any(|lm| lm.divides(m));
    let mut seen: BTreeSet<Monomial> = BTreeSet::new();
    let mut queue: VecDeque<Monomial> = VecDeque::new();
    let origin = Monomial(vec![0; nvars]);
    if !divisible(&origin) {
        seen.insert(origin.clone());
        queue.push_back(origin);
    }
    while let Some(m) = queue.pop_front() {
        assert!(seen.len() <= 1_000_000, "standard monomial enumeration exploded");
        for var in 0..nvars {
            let mut next = m.clone();
            next.0[var] += 1;
            if !seen.contains(&next) && !divisible(&next) {
                seen.insert(next.clone());
                queue.push_back(next);
            }
        }
    }
    Some(seen.into_iter().collect())
}

/// Builds the presentation of k[z1^+-,..,zn^+-] / <generators>.
pub fn laurent_quotient(gens: &[LaurentPoly]) -> Result<QuotientPresentation> {
    if gens.is_empty() {
        return Err(Error::EmptyGenerators);
    }
    let nvars = gens[0].nvars();
    let kvars = gens.iter().map(|g| g.kvars()).max().unwrap();
    for g in gens {
        if g.nvars() != nvars {
            return Err(Error::DimensionMismatch { expected: nvars, got: g.nvars() });
        }
    }
    let ambient = nvars + 1;
    let mut input: Vec<AmbientPoly> = gens.iter().map(|g| clear_generator(g, kvars)).collect();
    // Localization relation w*z1*..*zn - 1.
    let mut rel = AmbientPoly::zero(ambient, kvars);
    rel.insert(Monomial(vec![1; ambient]), GaussScalar::one(kvars));
    rel.insert(Monomial(vec![0; ambient]), GaussScalar::one(kvars).neg());
    input.push(rel);
    let groebner = reduced_groebner(input, ambient, kvars);
    let std_monos = standard_monomials(&groebner, ambient);
    Ok(QuotientPresentation {
        laurent_vars: nvars,
        ambient_vars: ambient,
        kvars,
        groebner,
        standard_monomials: std_monos,
        order: "grevlex(z1..zn,w)",
    })
}

/// Division remainder of `f` in the presentation, mapped back through the
/// localization. Idempotent and linear over the ground field.
pub fn normal_form(f: &LaurentPoly, p: &QuotientPresentation) -> Result<LaurentPoly> {
    if p.standard_monomials.is_none() {
        return Err(Error::InfiniteDimensional);
    }
    Ok(remainder_laurent(f, p))
}

/// True when `f` lies in the ideal of the presentation.
pub fn ideal_membership(f: &LaurentPoly, p: &QuotientPresentation) -> bool {
    let ambient = laurent_to_ambient(f, p.kvars);
    reduce_full(&ambient, &p.groebner).is_zero()
}

fn remainder_laurent(f: &LaurentPoly, p: &QuotientPresentation) -> LaurentPoly {
    let ambient = laurent_to_ambient(f, p.kvars);
    let r = reduce_full(&ambient, &p.groebner);
    ambient_to_laurent(&r, p.laurent_vars, p.kvars)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::{int_poly, q_constant, LaurentPoly};

    /// dW of the CP2 mirror: z1 - q/(z1 z2) and z2 - q/(z1 z2).
    fn cp2_gens() -> Vec<LaurentPoly> {
        let q_inv = q_constant(2, 1, 0).mul(&int_poly(2, 1, &[(&[-1, -1], 1)]));
        vec![
            int_poly(2, 1, &[(&[1, 0], 1)]).sub(&q_inv),
            int_poly(2, 1, &[(&[0, 1], 1)]).sub(&q_inv),
        ]
    }

    #[test]
    fn cp2_quotient_dimension_three() {
        let p = laurent_quotient(&cp2_gens()).unwrap();
        assert_eq!(p.dimension(), Some(3));
        // z1^3 = q and z2 = z1 in the quotient; the constant q is its own
        // normal form since 1 is a standard monomial.
        let z1_cubed = int_poly(2, 1, &[(&[3, 0], 1)]);
        let q = q_constant(2, 1, 0);
        assert_eq!(normal_form(&z1_cubed, &p).unwrap(), q);
        let z1_minus_z2 = int_poly(2, 1, &[(&[1, 0], 1), (&[0, 1], -1)]);
        assert!(ideal_membership(&z1_minus_z2, &p));
        assert!(!ideal_membership(&int_poly(2, 1, &[(&[1, 0], 1)]).sub(&q), &p));
        assert!(ideal_membership(&LaurentPoly::zero(2, 1), &p));
        // The representative of z2 reduces into the same class as z1.
        let nf_z2 = normal_form(&int_poly(2, 1, &[(&[0, 1], 1)]), &p).unwrap();
        assert!(ideal_membership(
            &int_poly(2, 1, &[(&[0, 1], 1)]).sub(&nf_z2),
            &p
        ));
    }

    #[test]
    fn cp1_quotient_dimension_two() {
        let g = int_poly(1, 1, &[(&[1], 1)])
            .sub(&q_constant(1, 1, 0).mul(&int_poly(1, 1, &[(&[-1], 1)])));
        let p = laurent_quotient(&[g]).unwrap();
        assert_eq!(p.dimension(), Some(2));
        let z_sq = int_poly(1, 1, &[(&[2], 1)]);
        let nf = normal_form(&z_sq, &p).unwrap();
        assert_eq!(nf, q_constant(1, 1, 0));
    }

    #[test]
    fn unit_ideal_dimension_zero() {
        let p = laurent_quotient(&[LaurentPoly::one(2, 0)]).unwrap();
        assert_eq!(p.dimension(), Some(0));
        assert!(ideal_membership(&int_poly(2, 0, &[(&[5, -3], 7)]), &p));
    }

    #[test]
    fn normal_form_idempotent_and_linear() {
        let p = laurent_quotient(&cp2_gens()).unwrap();
        let f = int_poly(2, 1, &[(&[2, 2], 1), (&[-1, 0], 3)]);
        let nf = normal_form(&f, &p).unwrap();
        assert_eq!(normal_form(&nf, &p).unwrap(), nf);
        assert!(ideal_membership(&f.sub(&nf), &p));
        assert_eq!(normal_form(&LaurentPoly::zero(2, 1), &p).unwrap(), LaurentPoly::zero(2, 1));
    }

    #[test]
    fn empty_generator_list_rejected() {
        assert!(matches!(laurent_quotient(&[]), Err(crate::error::Error::EmptyGenerators)));
    }

    #[test]
    fn infinite_dimensional_flagged() {
        // One equation in two variables leaves an infinite quotient.
        let g = int_poly(2, 0, &[(&[1, 0], 1), (&[0, 1], -1)]);
        let p = laurent_quotient(&[g]).unwrap();
        assert_eq!(p.dimension(), None);
        let f = int_poly(2, 0, &[(&[1, 0], 1)]);
        assert!(matches!(normal_form(&f, &p), Err(crate::error::Error::InfiniteDimensional)));
        // Membership still decides correctly.
        assert!(ideal_membership(&int_poly(2, 0, &[(&[2, 0], 1), (&[1, 1], -1)]), &p));
        assert!(!ideal_membership(&f, &p));
    }
}
