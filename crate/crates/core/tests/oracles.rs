//! Checks against computations written here from scratch: a plain mod-p
//! Gaussian elimination, hand-rolled Veronese rows and point samplers.

use quadcert_core::field::{Field, PrimeField, DEFAULT_PRIME};
use quadcert_core::matrix::{rref, ExactMatrix};
use quadcert_core::poly::{monomials_of_degree, MultiPoly};
use quadcert_core::quadspace::{quadric_basis, Certification, SamplingPolicy};
use quadcert_core::scrollcalc::{h0, predicted_a2, ScrollDivisorClass};
use quadcert_core::varieties::{elliptic_normal_curve, point_config_on_rnc, rational_normal_curve, scroll};

const P: u64 = DEFAULT_PRIME;

fn mulm(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

fn powm(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulm(r, a);
        }
        a = mulm(a, a);
        e >>= 1;
    }
    r
}

fn rank_mod_p(mut m: Vec<Vec<u64>>) -> usize {
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| m[r][c] != 0) else { continue };
        m.swap(rank, p);
        let inv = powm(m[rank][c], P - 2);
        for r in 0..m.len() {
            if r != rank && m[r][c] != 0 {
                let k = mulm(m[r][c], inv);
                for j in c..cols {
                    m[r][j] = (m[r][j] + P - mulm(k, m[rank][j])) % P;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// All products `x_i x_j`, `i <= j`.
fn veronese2(x: &[u64]) -> Vec<u64> {
    let mut row = Vec::new();
    for i in 0..x.len() {
        for j in i..x.len() {
            row.push(mulm(x[i], x[j]));
        }
    }
    row
}

fn kernel_dim(points: &[Vec<u64>]) -> usize {
    let n = points[0].len();
    n * (n + 1) / 2 - rank_mod_p(points.iter().map(|p| veronese2(p)).collect())
}

fn fp() -> PrimeField {
    PrimeField::new(P).unwrap()
}

fn a2(v: &quadcert_core::varieties::VarietyRep<PrimeField>) -> usize {
    let b = quadric_basis(v, &SamplingPolicy::default(), 0).unwrap();
    assert_eq!(b.certification, Certification::SymbolicCertified);
    b.a2
}

#[test]
fn twisted_cubic_is_cut_out_by_hankel_minors() {
    let f = fp();
    let v = rational_normal_curve(&f, 3).unwrap();
    let b = quadric_basis(&v, &SamplingPolicy::default(), 5).unwrap();
    let x = |i| MultiPoly::var(&f, 4, i);
    let minor = |a: usize, bb: usize, c: usize, d: usize| x(a).mul(&x(d)).sub(&x(bb).mul(&x(c)));
    // 2x2 minors of [[x0, x1, x2], [x1, x2, x3]]
    let minors = [minor(0, 1, 1, 2), minor(0, 2, 1, 3), minor(1, 2, 2, 3)];
    let monos = monomials_of_degree(4, 2);
    let rows: Vec<Vec<u64>> = minors.iter().map(|q| monos.iter().map(|m| q.coeff(m)).collect()).collect();
    let oracle = rref(&ExactMatrix::from_rows(&f, monos.len(), rows).unwrap()).matrix;
    assert_eq!(b.row_space(&f), oracle);
}

#[test]
fn rnc_a2_matches_independent_rank() {
    let f = fp();
    for r in 2..=7usize {
        let pts: Vec<Vec<u64>> = (1..=(3 * r as u64 + 5)).map(|t| (0..=r as u64).map(|j| powm(t, j)).collect()).collect();
        assert_eq!(a2(&rational_normal_curve(&f, r).unwrap()), kernel_dim(&pts), "r={r}");
    }
}

#[test]
fn seven_points_on_the_twisted_cubic() {
    let f = fp();
    let pts: Vec<Vec<u64>> = (1..=7u64).map(|t| (0..4).map(|j| powm(t, j)).collect()).collect();
    assert_eq!(kernel_dim(&pts), 3);
    let v = point_config_on_rnc(&f, 3, 7, 0).unwrap();
    assert_eq!(a2(&v), 3);
}

/// Affine points of `y^2 = x^3 + a x + b`, using `p = 3 mod 4` square roots.
fn weierstrass_points(a: u64, b: u64, count: usize) -> Vec<(u64, u64)> {
    assert_eq!(P % 4, 3);
    let mut out = Vec::new();
    let mut x = 2u64;
    while out.len() < count {
        let r = (mulm(mulm(x, x), x) + mulm(a, x) + b) % P;
        let y = powm(r, (P + 1) / 4);
        if mulm(y, y) == r && y != 0 {
            out.push((x, y));
        }
        x += 1;
    }
    out
}

#[test]
fn elliptic_a2_matches_independent_rank() {
    let f = fp();
    let (a, b) = (P - 1, 0);
    for c in 3..=5usize {
        let d = c as u64 + 2;
        let pts: Vec<Vec<u64>> = weierstrass_points(a, b, 4 * (c + 3) * (c + 3))
            .into_iter()
            .map(|(x, y)| {
                let mut row = Vec::new();
                for i in 0..=d / 2 {
                    row.push(powm(x, i));
                }
                for i in 0..=(d.saturating_sub(3)) / 2 {
                    if 2 * i + 3 <= d {
                        row.push(mulm(powm(x, i), y));
                    }
                }
                row
            })
            .collect();
        assert_eq!(pts[0].len(), c + 2, "embedding in P^(c+1)");
        let v = elliptic_normal_curve(&f, c, &f.from_i64(-1), &f.from_i64(0)).unwrap();
        assert_eq!(a2(&v), kernel_dim(&pts), "c={c}");
    }
}

#[test]
fn scroll_a2_matches_independent_rank() {
    let f = fp();
    for ty in [vec![1u32, 2], vec![2, 2], vec![1, 1, 1], vec![1, 3]] {
        // points s^(a_i - j) t^j u_i with s = 1 and (t, u) from an LCG
        let mut state = 12345u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 33) % P
        };
        let mut pts = Vec::new();
        for _ in 0..80 {
            let t = next();
            let mut row = Vec::new();
            for &ai in &ty {
                let u = next();
                for j in 0..=ai as u64 {
                    row.push(mulm(powm(t, j), u));
                }
            }
            pts.push(row);
        }
        assert_eq!(a2(&scroll(&f, &ty).unwrap()), kernel_dim(&pts), "{ty:?}");
    }
}

/// Sections of `aH + bF` counted by listing monomials `u^I s^j t^k`.
fn h0_by_listing(ty: &[u32], a: u32, b: i64) -> u64 {
    fn rec(ty: &[u32], a: u32, w: i64, b: i64) -> u64 {
        match ty.split_first() {
            None => {
                if a == 0 && w + b >= 0 {
                    (w + b + 1) as u64
                } else {
                    0
                }
            }
            Some((&x, rest)) => (0..=a).map(|e| rec(rest, a - e, w + e as i64 * x as i64, b)).sum(),
        }
    }
    rec(ty, a, 0, b)
}

#[test]
fn section_counts_match_listing() {
    for ty in [vec![1u32, 2], vec![1, 1, 1], vec![2, 3], vec![1, 1, 2]] {
        for a in 0..=4 {
            for b in -6..=6 {
                assert_eq!(h0(&ty, a as i64, b), h0_by_listing(&ty, a, b), "{ty:?} {a} {b}");
            }
        }
    }
    let pred = |t: &[u32], a, b| predicted_a2(&ScrollDivisorClass::new(t, a, b).unwrap()).unwrap();
    assert_eq!(pred(&[1, 2], 2, -2), 6);
    assert_eq!(pred(&[1, 1, 1], 3, 0), 3);
    assert_eq!(pred(&[1, 2], 1, 1), 6);
}
