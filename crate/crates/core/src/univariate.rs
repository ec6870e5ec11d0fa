//! Dense univariate polynomials: Euclidean algorithm, square-free parts and
//! root finding (Cantor–Zassenhaus over large primes, scanning over small ones).

use alloc::vec;
use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{CoreError, Result};
use crate::field::Field;

/// Primes up to this size are root-scanned exhaustively.
pub const SCAN_LIMIT: u64 = 1 << 16;

/// Coefficients are stored lowest degree first with no trailing zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct UniPoly<F: Field> {
    field: F,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> UniPoly<F> {
    pub fn new(field: &F, coeffs: Vec<F::Elem>) -> Self {
        let mut p = UniPoly {
            field: field.clone(),
            coeffs,
        };
        p.trim();
        p
    }

    pub fn zero(field: &F) -> Self {
        UniPoly::new(field, Vec::new())
    }

    pub fn constant(field: &F, c: F::Elem) -> Self {
        UniPoly::new(field, vec![c])
    }

    /// The monomial `x`.
    pub fn x(field: &F) -> Self {
        UniPoly::new(field, vec![field.zero(), field.one()])
    }

    /// `prod (x - r)` over the given roots.
    pub fn from_roots(field: &F, roots: &[F::Elem]) -> Self {
        roots.iter().fold(UniPoly::constant(field, field.one()), |acc, r| {
            acc.mul(&UniPoly::new(field, vec![field.neg(r), field.one()]))
        })
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| self.field.is_zero(c)) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&F::Elem> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> F::Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn eval(&self, x: &F::Elem) -> F::Elem {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }

    pub fn add(&self, other: &Self) -> Self {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| f.add(&self.coeff(i), &other.coeff(i)))
            .collect();
        UniPoly::new(f, coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| f.sub(&self.coeff(i), &other.coeff(i)))
            .collect();
        UniPoly::new(f, coeffs)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero(f);
        }
        let mut out = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(&out[i + j], &f.mul(a, b));
            }
        }
        UniPoly::new(f, out)
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = &self.field;
        UniPoly::new(f, self.coeffs.iter().map(|a| f.mul(a, c)).collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(l) => {
                let inv = self.field.inv(l).expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    pub fn derivative(&self) -> Self {
        let f = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| f.mul(c, &f.from_i64(i as i64)))
            .collect();
        UniPoly::new(f, coeffs)
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let f = &self.field;
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = f.inv(divisor.leading().unwrap()).unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (UniPoly::zero(f), self.clone());
        }
        let mut quot = vec![f.zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = f.mul(&rem[k + dd], &lead_inv);
            if f.is_zero(&c) {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = f.sub(&rem[k + j], &f.mul(&c, d));
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (UniPoly::new(f, quot), UniPoly::new(f, rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self^e mod modulus`.
    pub fn pow_mod(&self, mut e: u64, modulus: &Self) -> Self {
        let f = &self.field;
        let mut base = self.rem(modulus);
        let mut acc = UniPoly::constant(f, f.one()).rem(modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(modulus);
            }
            base = base.mul(&base).rem(modulus);
            e >>= 1;
        }
        acc
    }

    /// Product of the distinct irreducible factors (characteristic assumed
    /// larger than the degree).
    pub fn squarefree_part(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// Roots in the field, sorted, without multiplicity.
    pub fn roots(&self) -> Result<Vec<F::Elem>> {
        if self.is_zero() {
            return Err(CoreError::InvalidParameter(
                "roots of the zero polynomial".into(),
            ));
        }
        let mut r = self.field.roots(self)?;
        r.sort();
        r.dedup();
        Ok(r)
    }
}

/// Roots of `f` over a prime field.
/// The unique polynomial of degree `< xs.len()` through the given values.
pub fn interpolate<F: Field>(field: &F, xs: &[F::Elem], ys: &[F::Elem]) -> Result<UniPoly<F>> {
    if xs.len() != ys.len() {
        return Err(CoreError::DimensionMismatch {
            expected: xs.len(),
            found: ys.len(),
        });
    }
    let mut out = UniPoly::zero(field);
    for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
        let mut basis = UniPoly::constant(field, field.one());
        let mut denom = field.one();
        for (j, xj) in xs.iter().enumerate() {
            if i != j {
                basis = basis.mul(&UniPoly::new(field, vec![field.neg(xj), field.one()]));
                denom = field.mul(&denom, &field.sub(xi, xj));
            }
        }
        let scale = field.div(yi, &denom).ok_or_else(|| {
            CoreError::InvalidParameter("interpolation nodes must be distinct".into())
        })?;
        out = out.add(&basis.scale(&scale));
    }
    Ok(out)
}

pub(crate) fn roots_prime<F: Field>(f: &UniPoly<F>) -> Vec<F::Elem> {
    let field = f.field();
    let p = field.kind().prime().expect("prime field");
    let f = f.monic();
    match f.degree() {
        None | Some(0) => return Vec::new(),
        Some(1) => return vec![field.neg(&f.coeff(0))],
        _ => {}
    }
    if p <= SCAN_LIMIT {
        return (0..p as i64)
            .map(|x| field.from_i64(x))
            .filter(|x| field.is_zero(&f.eval(x)))
            .collect();
    }
    let x = UniPoly::x(field);
    let xp = x.pow_mod(p, &f);
    let split = f.gcd(&xp.sub(&x));
    let mut rng = ChaCha8Rng::seed_from_u64(p ^ split.coeffs.len() as u64);
    let mut out = Vec::new();
    equal_degree_split(&split, p, &mut rng, &mut out);
    out
}

fn equal_degree_split<F: Field>(
    g: &UniPoly<F>,
    p: u64,
    rng: &mut ChaCha8Rng,
    out: &mut Vec<F::Elem>,
) {
    let field = g.field();
    match g.degree() {
        None | Some(0) => return,
        Some(1) => {
            out.push(field.neg(&g.monic().coeff(0)));
            return;
        }
        _ => {}
    }
    loop {
        let a = field.random(rng);
        let shifted = UniPoly::new(field, vec![a, field.one()]);
        let h = shifted
            .pow_mod((p - 1) / 2, g)
            .sub(&UniPoly::constant(field, field.one()));
        let d = g.gcd(&h);
        let dd = d.degree().unwrap_or(0);
        if dd > 0 && Some(dd) < g.degree() {
            let (q, _) = g.div_rem(&d);
            equal_degree_split(&d, p, rng, out);
            equal_degree_split(&q, p, rng, out);
            return;
        }
    }
}

/// Rational roots when the square-free part has degree at most two.
pub(crate) fn roots_low_degree<F: Field>(f: &UniPoly<F>) -> Result<Vec<F::Elem>> {
    let field = f.field();
    let g = f.squarefree_part();
    match g.degree() {
        None | Some(0) => Ok(Vec::new()),
        Some(1) => Ok(vec![field.neg(&g.coeff(0))]),
        Some(2) => {
            // monic: x^2 + b x + c
            let b = g.coeff(1);
            let c = g.coeff(0);
            let disc = field.sub(&field.mul(&b, &b), &field.mul(&field.from_i64(4), &c));
            let two_inv = field.inv(&field.from_i64(2)).unwrap();
            Ok(match field.sqrt(&disc) {
                None => Vec::new(),
                Some(s) => {
                    let nb = field.neg(&b);
                    vec![
                        field.mul(&field.add(&nb, &s), &two_inv),
                        field.mul(&field.sub(&nb, &s), &two_inv),
                    ]
                }
            })
        }
        Some(d) => Err(CoreError::Unsupported(alloc::format!(
            "root finding for a degree-{d} polynomial needs a prime field"
        ))),
    }
}
