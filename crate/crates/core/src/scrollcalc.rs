//! Divisor classes `aH + bF` on rational normal scrolls.

use alloc::vec::Vec;

use crate::error::{CoreError, Result};
use crate::poly::{binomial, monomials_of_degree};
use crate::varieties::validate_scroll_type;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ScrollDivisorClass {
    scroll_type: Vec<u32>,
    a: i64,
    b: i64,
}

impl ScrollDivisorClass {
    pub fn new(scroll_type: &[u32], a: i64, b: i64) -> Result<Self> {
        validate_scroll_type(scroll_type)?;
        Ok(ScrollDivisorClass {
            scroll_type: scroll_type.to_vec(),
            a,
            b,
        })
    }

    pub fn scroll_type(&self) -> &[u32] {
        &self.scroll_type
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    /// `n`, with the scroll of dimension `n + 1`.
    pub fn n(&self) -> usize {
        self.scroll_type.len() - 1
    }

    /// `sum a_i`, the degree of the scroll.
    pub fn scroll_degree(&self) -> u64 {
        self.scroll_type.iter().map(|&x| x as u64).sum()
    }

    pub fn ambient_dim(&self) -> usize {
        self.n() + self.scroll_degree() as usize
    }

    pub fn codim_of_scroll(&self) -> usize {
        self.ambient_dim() - self.n() - 1
    }

    /// `H^(n) . (aH + bF) = a * deg Y + b`.
    pub fn divisor_degree(&self) -> i64 {
        self.a * self.scroll_degree() as i64 + self.b
    }

    /// The class `(2-a)H - bF`.
    pub fn residual(&self) -> ScrollDivisorClass {
        ScrollDivisorClass {
            scroll_type: self.scroll_type.clone(),
            a: 2 - self.a,
            b: -self.b,
        }
    }

    fn a_top(&self) -> i64 {
        *self.scroll_type.last().unwrap() as i64
    }
}

/// `h^0(O_Y(aH + bF)) = sum_{|I| = a} max(0, <I, type> + b + 1)`, zero for `a < 0`.
pub fn h0(scroll_type: &[u32], a: i64, b: i64) -> u64 {
    if a < 0 {
        return 0;
    }
    monomials_of_degree(scroll_type.len(), a as u32)
        .iter()
        .map(|i| {
            let w: i64 = i
                .exponents()
                .iter()
                .zip(scroll_type)
                .map(|(&e, &x)| e as i64 * x as i64)
                .sum();
            (w + b + 1).max(0) as u64
        })
        .sum()
}

pub fn h0_class(cls: &ScrollDivisorClass) -> u64 {
    h0(&cls.scroll_type, cls.a, cls.b)
}

pub fn is_effective(cls: &ScrollDivisorClass) -> bool {
    h0_class(cls) > 0
}

/// No linear form vanishes on a divisor of the class.
pub fn is_nondegenerate_class(cls: &ScrollDivisorClass) -> bool {
    let (a, b, top) = (cls.a, cls.b, cls.a_top());
    (a == 0 && b >= 1 + top) || (a == 1 && b >= 1) || (a >= 2 && b >= -a * top)
}

fn q_disjunction(cls: &ScrollDivisorClass) -> bool {
    let (a, b, top) = (cls.a, cls.b, cls.a_top());
    (a == 0 && b >= 1 + 2 * top) || (a == 1 && b >= 1 + top) || (a == 2 && b >= 1) || a >= 3
}

/// Whether the quadrics through a divisor of the class cut out the whole
/// scroll. The closed-form test is checked against `h^0((2-a)H - bF) = 0`.
pub fn q_equals_scroll(cls: &ScrollDivisorClass) -> Result<bool> {
    let by_cases = q_disjunction(cls);
    let by_h0 = h0_class(&cls.residual()) == 0;
    if by_cases != by_h0 {
        return Err(CoreError::Inconsistent(alloc::format!(
            "case test {by_cases} disagrees with h0 test {by_h0} for {cls:?}"
        )));
    }
    Ok(by_cases)
}

/// `a_2` of the scroll: `C(r+2, 2) - h^0(2H)`.
pub fn scroll_a2(scroll_type: &[u32]) -> Result<u64> {
    let cls = ScrollDivisorClass::new(scroll_type, 2, 0)?;
    let r = cls.ambient_dim() as u64;
    Ok(binomial(r + 2, 2) - h0_class(&cls))
}

/// `a_2(Y) + h^0((2-a)H - bF)` for a nondegenerate class.
pub fn predicted_a2(cls: &ScrollDivisorClass) -> Result<u64> {
    if !is_nondegenerate_class(cls) {
        return Err(CoreError::DegenerateClass);
    }
    Ok(scroll_a2(&cls.scroll_type)? + h0_class(&cls.residual()))
}

/// Sorted types with `len` entries, each at most `max_entry`, satisfying
/// the scroll conditions.
pub fn scroll_types(len: usize, max_entry: u32) -> Vec<Vec<u32>> {
    fn rec(len: usize, lo: u32, hi: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == len {
            if validate_scroll_type(cur).is_ok() {
                out.push(cur.clone());
            }
            return;
        }
        for x in lo..=hi {
            cur.push(x);
            rec(len, x, hi, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(len, 0, max_entry, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cls(t: &[u32], a: i64, b: i64) -> ScrollDivisorClass {
        ScrollDivisorClass::new(t, a, b).unwrap()
    }

    #[test]
    fn section_counts() {
        assert_eq!(h0_class(&cls(&[1, 2], 1, 0)), 5);
        assert_eq!(h0_class(&cls(&[1, 2], 0, 2)), 3);
        assert_eq!(h0_class(&cls(&[1, 2], 2, -2)), 6);
        assert_eq!(h0_class(&cls(&[1, 2], -1, 5)), 0);
        assert_eq!(h0_class(&cls(&[1, 1, 1], 2, 0)), 18);
    }

    #[test]
    fn hyperplane_count_is_ambient_plus_one() {
        for len in 1..=4 {
            for t in scroll_types(len, 4) {
                let c = cls(&t, 1, 0);
                assert_eq!(h0_class(&c), c.ambient_dim() as u64 + 1);
            }
        }
    }

    #[test]
    fn nondegeneracy_clauses() {
        assert!(is_nondegenerate_class(&cls(&[1, 2], 1, 1)));
        assert!(is_nondegenerate_class(&cls(&[1, 1, 1], 1, 1)));
        assert!(!is_nondegenerate_class(&cls(&[1, 2], 0, 2)));
        assert!(is_nondegenerate_class(&cls(&[1, 2], 0, 3)));
        assert!(is_nondegenerate_class(&cls(&[1, 2], 2, -4)));
        assert!(!is_nondegenerate_class(&cls(&[1, 2], 2, -5)));
    }

    #[test]
    fn q_equals_scroll_examples() {
        assert!(q_equals_scroll(&cls(&[1, 1, 1], 3, 0)).unwrap());
        assert!(!q_equals_scroll(&cls(&[1, 2], 2, 0)).unwrap());
        assert!(q_equals_scroll(&cls(&[1, 2], 1, 3)).unwrap());
        assert!(!q_equals_scroll(&cls(&[1, 2], 1, 2)).unwrap());
    }

    #[test]
    fn predictions() {
        assert_eq!(predicted_a2(&cls(&[1, 2], 2, -2)).unwrap(), 6);
        assert_eq!(predicted_a2(&cls(&[1, 1, 1], 3, 0)).unwrap(), 3);
        assert_eq!(predicted_a2(&cls(&[1, 2], 1, 1)).unwrap(), 6);
        assert_eq!(predicted_a2(&cls(&[1, 2], 0, 1)), Err(CoreError::DegenerateClass));
    }

    #[test]
    fn scroll_a2_is_minimal_degree_count() {
        for len in 1..=4 {
            for t in scroll_types(len, 4) {
                let c = cls(&t, 0, 0);
                let codim = c.codim_of_scroll() as u64;
                assert_eq!(scroll_a2(&t).unwrap(), binomial(codim + 1, 2), "{t:?}");
            }
        }
    }
}
