//! Sparse multivariate polynomials over a [`Field`], in graded-lex order.
//!
//! The text form is `coeff*x0^e0*x1^e1...` per term, terms joined by `+`,
//! rationals written `num/den`. Only nonzero exponents are written and the
//! coefficient is always present, e.g. `1*x0^1*x2^1+-1*x1^2`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::{CoreError, Result};
use crate::field::Field;
use crate::univariate::UniPoly;

/// Exponent vector, one entry per variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    pub fn eval<F: Field>(&self, field: &F, point: &[F::Elem]) -> F::Elem {
        self.0
            .iter()
            .zip(point)
            .filter(|(e, _)| **e > 0)
            .fold(field.one(), |acc, (e, x)| {
                field.mul(&acc, &field.pow(x, *e as u64))
            })
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials of the given degree in `nvars` variables, largest first in
/// graded-lex order (`x0^d, x0^(d-1) x1, ...`).
pub fn monomials_of_degree(nvars: usize, degree: u32) -> Vec<Monomial> {
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        let n = cur.len();
        if i == n - 1 {
            cur[i] = left;
            out.push(Monomial(cur.clone()));
            cur[i] = 0;
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if degree == 0 {
            out.push(Monomial(Vec::new()));
        }
        return out;
    }
    rec(0, degree, &mut vec![0; nvars], &mut out);
    out
}

/// `C(n + k - 1, k)`, the number of monomials of degree `k` in `n` variables.
pub fn monomial_count(nvars: usize, degree: u32) -> usize {
    if nvars == 0 {
        return usize::from(degree == 0);
    }
    binomial(nvars as u64 - 1 + degree as u64, degree as u64) as usize
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Sparse polynomial; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiPoly<F: Field> {
    nvars: usize,
    terms: BTreeMap<Monomial, F::Elem>,
    field: F,
}

impl<F: Field> MultiPoly<F> {
    pub fn zero(field: &F, nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
            field: field.clone(),
        }
    }

    pub fn constant(field: &F, nvars: usize, c: F::Elem) -> Self {
        Self::term(field, Monomial::one(nvars), c)
    }

    pub fn one(field: &F, nvars: usize) -> Self {
        Self::constant(field, nvars, field.one())
    }

    pub fn var(field: &F, nvars: usize, i: usize) -> Self {
        Self::term(field, Monomial::var(nvars, i), field.one())
    }

    pub fn term(field: &F, mono: Monomial, c: F::Elem) -> Self {
        let mut p = Self::zero(field, mono.nvars());
        p.add_term(mono, c);
        p
    }

    pub fn from_terms(
        field: &F,
        nvars: usize,
        terms: impl IntoIterator<Item = (Monomial, F::Elem)>,
    ) -> Result<Self> {
        let mut p = Self::zero(field, nvars);
        for (m, c) in terms {
            if m.nvars() != nvars {
                return Err(CoreError::DimensionMismatch {
                    expected: nvars,
                    found: m.nvars(),
                });
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    /// Linear form `sum coeffs[i] * x_i`.
    pub fn linear_form(field: &F, coeffs: &[F::Elem]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(field, n);
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(Monomial::var(n, i), c.clone());
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: F::Elem) {
        if self.field.is_zero(&c) {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let s = self.field.add(existing, &c);
                if self.field.is_zero(&s) {
                    self.terms.remove(&m);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    /// Terms in increasing graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &F::Elem)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> F::Elem {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &F::Elem)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    pub fn involves(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.0[var] > 0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), self.field.neg(c));
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&self.field.neg(&self.field.one()))
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let mut out = Self::zero(&self.field, self.nvars);
        if self.field.is_zero(c) {
            return out;
        }
        for (m, a) in &self.terms {
            out.terms.insert(m.clone(), self.field.mul(a, c));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(&self.field, self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), self.field.mul(c1, c2));
            }
        }
        out
    }

    pub fn mul_term(&self, m: &Monomial, c: &F::Elem) -> Self {
        let mut out = Self::zero(&self.field, self.nvars);
        for (m1, c1) in &self.terms {
            out.add_term(m1.mul(m), self.field.mul(c1, c));
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.field, self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn evaluate(&self, point: &[F::Elem]) -> Result<F::Elem> {
        if point.len() != self.nvars {
            return Err(CoreError::DimensionMismatch {
                expected: self.nvars,
                found: point.len(),
            });
        }
        let f = &self.field;
        Ok(self.terms.iter().fold(f.zero(), |acc, (m, c)| {
            f.add(&acc, &f.mul(c, &m.eval(f, point)))
        }))
    }

    /// Composition `self(images[0], ..., images[n-1])`.
    pub fn substitute(&self, images: &[MultiPoly<F>]) -> Result<MultiPoly<F>> {
        if images.len() != self.nvars {
            return Err(CoreError::DimensionMismatch {
                expected: self.nvars,
                found: images.len(),
            });
        }
        let target_vars = match images.first() {
            Some(p) => p.nvars,
            None => 0,
        };
        if let Some(bad) = images.iter().find(|p| p.nvars != target_vars) {
            return Err(CoreError::DimensionMismatch {
                expected: target_vars,
                found: bad.nvars,
            });
        }
        let mut powers: Vec<Vec<MultiPoly<F>>> = images
            .iter()
            .map(|p| vec![MultiPoly::one(&self.field, target_vars), p.clone()])
            .collect();
        let mut out = MultiPoly::zero(&self.field, target_vars);
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(&self.field, target_vars, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul(&images[i]);
                    powers[i].push(next);
                }
                t = t.mul(&powers[i][e as usize]);
            }
            out = out.add(&t);
        }
        Ok(out)
    }

    /// Normal form modulo a single relation.
    pub fn reduce(&self, rel: &Relation<F>) -> MultiPoly<F> {
        let v = rel.lead_var;
        let e = rel.lead_exp;
        let mut out = self.clone();
        loop {
            let next = out
                .terms
                .iter()
                .filter(|(m, _)| m.0[v] >= e)
                .max_by_key(|(m, _)| m.0[v])
                .map(|(m, c)| (m.clone(), c.clone()));
            let Some((m, c)) = next else { break };
            out.terms.remove(&m);
            let mut rest = m.0.clone();
            rest[v] -= e;
            out = out.add(&rel.replacement.mul_term(&Monomial(rest), &c));
        }
        out
    }

    pub fn partial(&self, var: usize) -> MultiPoly<F> {
        let mut out = Self::zero(&self.field, self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut d = m.0.clone();
            d[var] -= 1;
            out.add_term(Monomial(d), self.field.mul(c, &self.field.from_i64(e as i64)));
        }
        out
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &MultiPoly<F>) -> Option<MultiPoly<F>> {
        let (dm, dc) = divisor.leading_term()?;
        let dc_inv = self.field.inv(dc)?;
        let mut rem = self.clone();
        let mut quot = Self::zero(&self.field, self.nvars);
        while let Some((m, c)) = rem.leading_term() {
            if !dm.divides(m) {
                return None;
            }
            let qm = dm.quotient_of(m);
            let qc = self.field.mul(c, &dc_inv);
            rem = rem.sub(&divisor.mul_term(&qm, &qc));
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// The polynomial as univariate in `var`; errors if other variables occur.
    pub fn to_univariate(&self, var: usize) -> Result<UniPoly<F>> {
        let mut coeffs = vec![self.field.zero(); self.degree_in(var) as usize + 1];
        for (m, c) in &self.terms {
            if m.0.iter().enumerate().any(|(i, &e)| i != var && e > 0) {
                return Err(CoreError::InvalidParameter(format!(
                    "polynomial involves variables other than x{var}"
                )));
            }
            coeffs[m.0[var] as usize] = c.clone();
        }
        Ok(UniPoly::new(&self.field, coeffs))
    }

    /// Groups terms by their exponents in `vars`; each key maps to the
    /// coefficient polynomial in the remaining variables.
    pub fn collect_in(&self, vars: &[usize]) -> BTreeMap<Monomial, MultiPoly<F>> {
        let mut out: BTreeMap<Monomial, MultiPoly<F>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let key = Monomial(vars.iter().map(|&v| m.0[v]).collect());
            let mut rest = m.0.clone();
            for &v in vars {
                rest[v] = 0;
            }
            out.entry(key)
                .or_insert_with(|| Self::zero(&self.field, self.nvars))
                .add_term(Monomial(rest), c.clone());
        }
        out
    }

    /// Re-embeds the polynomial into a ring with `nvars` variables, sending
    /// variable `i` to `mapping[i]`.
    pub fn rename_vars(&self, nvars: usize, mapping: &[usize]) -> MultiPoly<F> {
        let mut out = Self::zero(&self.field, nvars);
        for (m, c) in &self.terms {
            let mut e = vec![0; nvars];
            for (i, &x) in m.0.iter().enumerate() {
                e[mapping[i]] += x;
            }
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    /// Coefficient-wise image in another field.
    pub fn map_field<G: Field>(
        &self,
        target: &G,
        f: impl Fn(&F::Elem) -> Option<G::Elem>,
    ) -> Option<MultiPoly<G>> {
        let mut out = MultiPoly::zero(target, self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c)?);
        }
        Some(out)
    }

    /// Parses the text form; `nvars` fixes the ambient ring.
    pub fn parse(field: &F, nvars: usize, s: &str) -> Result<Self> {
        let mut p = Self::zero(field, nvars);
        let s = s.trim();
        if s.is_empty() || s == "0" {
            return Ok(p);
        }
        for raw in s.split('+') {
            let term = raw.trim();
            if term.is_empty() {
                return Err(CoreError::Parse(format!("empty term in `{s}`")));
            }
            let (neg, body) = match term.strip_prefix('-') {
                Some(rest) if rest.trim_start().starts_with('x') => (true, rest.trim_start()),
                _ => (false, term),
            };
            let mut coeff = if neg {
                field.from_i64(-1)
            } else {
                field.one()
            };
            let mut exps = vec![0u32; nvars];
            for factor in body.split('*') {
                let factor = factor.trim();
                if let Some(var) = factor.strip_prefix('x') {
                    let (idx, e) = match var.split_once('^') {
                        Some((i, e)) => (i, e),
                        None => (var, "1"),
                    };
                    let idx: usize = idx
                        .trim()
                        .parse()
                        .map_err(|_| CoreError::Parse(format!("bad variable `{factor}`")))?;
                    let e: u32 = e
                        .trim()
                        .parse()
                        .map_err(|_| CoreError::Parse(format!("bad exponent `{factor}`")))?;
                    if idx >= nvars {
                        return Err(CoreError::Parse(format!(
                            "variable x{idx} out of range for {nvars} variables"
                        )));
                    }
                    exps[idx] += e;
                } else {
                    coeff = field.mul(&coeff, &field.parse(factor)?);
                }
            }
            p.add_term(Monomial(exps), coeff);
        }
        Ok(p)
    }
}

impl<F: Field> fmt::Display for MultiPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                f.write_str("+")?;
            }
            f.write_str(&self.field.format(c))?;
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    write!(f, "*x{i}^{e}")?;
                }
            }
        }
        Ok(())
    }
}

/// `x_lead^lead_exp = replacement`, a rewrite rule for a single relation.
#[derive(Clone, Debug, PartialEq)]
pub struct Relation<F: Field> {
    lead_var: usize,
    lead_exp: u32,
    replacement: MultiPoly<F>,
}

impl<F: Field> Relation<F> {
    pub fn new(lead_var: usize, lead_exp: u32, replacement: MultiPoly<F>) -> Result<Self> {
        if lead_var >= replacement.nvars() {
            return Err(CoreError::InvalidParameter(format!(
                "lead variable x{lead_var} outside the ring"
            )));
        }
        if lead_exp == 0 || replacement.degree_in(lead_var) >= lead_exp {
            return Err(CoreError::InvalidParameter(
                "replacement must have lower degree in the lead variable".into(),
            ));
        }
        Ok(Relation {
            lead_var,
            lead_exp,
            replacement,
        })
    }

    pub fn lead_var(&self) -> usize {
        self.lead_var
    }

    pub fn lead_exp(&self) -> u32 {
        self.lead_exp
    }

    pub fn replacement(&self) -> &MultiPoly<F> {
        &self.replacement
    }

    pub fn nvars(&self) -> usize {
        self.replacement.nvars()
    }

    /// `x_lead^lead_exp - replacement` as a polynomial.
    pub fn as_polynomial(&self) -> MultiPoly<F> {
        let f = self.replacement.field();
        let mut e = vec![0; self.nvars()];
        e[self.lead_var] = self.lead_exp;
        MultiPoly::term(f, Monomial(e), f.one()).sub(&self.replacement)
    }
}

/// Formats a coefficient vector with the field's scalar syntax.
pub fn format_vector<F: Field>(field: &F, v: &[F::Elem]) -> Vec<String> {
    v.iter().map(|x| field.format(x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals, DEFAULT_PRIME};
    use alloc::string::ToString;

    fn q(s: &str, n: usize) -> MultiPoly<Rationals> {
        MultiPoly::parse(&Rationals, n, s).unwrap()
    }

    #[test]
    fn monomial_enumeration() {
        assert_eq!(monomials_of_degree(4, 2).len(), 10);
        assert_eq!(monomials_of_degree(5, 2).len(), 15);
        assert_eq!(monomials_of_degree(2, 0), vec![Monomial::one(2)]);
        let m = monomials_of_degree(3, 2);
        assert_eq!(m[0], Monomial::new(vec![2, 0, 0]));
        assert_eq!(m[5], Monomial::new(vec![0, 0, 2]));
        assert!(m.windows(2).all(|w| w[0] > w[1]));
    }

    #[test]
    fn enumeration_matches_binomial() {
        for n in 1..=10 {
            for d in 0..=4 {
                assert_eq!(monomials_of_degree(n, d).len(), monomial_count(n, d));
            }
        }
    }

    #[test]
    fn conic_on_degree_two_curve() {
        let conic = q("x0*x2 + -1*x1^2", 3);
        let images = [q("1", 1), q("x0", 1), q("x0^2", 1)];
        assert!(conic.substitute(&images).unwrap().is_zero());
    }

    #[test]
    fn substitute_first_variable() {
        let images = [q("3*x0*x1", 2), q("x1", 2)];
        assert_eq!(q("x0", 2).substitute(&images).unwrap(), images[0]);
        assert!(q("x0", 2).substitute(&images[..1]).is_err());
    }

    #[test]
    fn weierstrass_reduction() {
        // variables x = x0, y = x1; y^2 -> x^3 + 2x + 5
        let rel = Relation::new(1, 2, q("x0^3 + 2*x0 + 5", 2)).unwrap();
        assert_eq!(q("x1^2", 2).reduce(&rel), q("x0^3+2*x0+5", 2));
        assert_eq!(q("x0^5", 2).reduce(&rel), q("x0^5", 2));
        let r = q("x0^3+2*x0+5", 2);
        assert_eq!(q("x1^4", 2).reduce(&rel), r.mul(&r));
        assert!(Relation::new(1, 2, q("x1^2", 2)).is_err());
    }

    #[test]
    fn text_round_trip() {
        let p = q("1/2*x0^2*x1 + -3*x2 + 7", 3);
        assert_eq!(p.to_string(), "1/2*x0^2*x1^1+-3*x2^1+7");
        assert_eq!(q(&p.to_string(), 3), p);
        assert_eq!(q("-x1 + x0", 2).to_string(), "1*x0^1+-1*x1^1");
        assert!(MultiPoly::parse(&Rationals, 2, "x5").is_err());
    }

    #[test]
    fn exact_division() {
        let a = q("x0 + 2*x1", 2);
        let b = q("x0^2 + -1*x1^3 + 4", 2);
        let prod = a.mul(&b);
        assert_eq!(prod.div_exact(&a).unwrap(), b);
        assert!(prod.add(&q("1", 2)).div_exact(&a).is_none());
    }

    #[test]
    fn partials_and_collect() {
        let f = PrimeField::new(DEFAULT_PRIME).unwrap();
        let p = MultiPoly::parse(&f, 3, "x0^2*x2 + 3*x1*x2 + x0").unwrap();
        assert_eq!(
            p.partial(0),
            MultiPoly::parse(&f, 3, "2*x0*x2 + 1").unwrap()
        );
        let by_x2 = p.collect_in(&[2]);
        assert_eq!(by_x2.len(), 2);
        assert_eq!(
            by_x2[&Monomial::new(vec![1])],
            MultiPoly::parse(&f, 3, "x0^2 + 3*x1").unwrap()
        );
    }
}
