//! Projective points, spans, general position and projections from a point.

use alloc::vec;
use alloc::vec::Vec;

use rand::seq::index::sample;
use rand::Rng;

use crate::error::{CoreError, Result};
use crate::field::Field;
use crate::matrix::{rank, ExactMatrix};
use crate::poly::MultiPoly;
use crate::varieties::VarietyRep;

/// A point of projective space, normalized so the first nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ProjPoint<F: Field> {
    coords: Vec<F::Elem>,
}

impl<F: Field> ProjPoint<F> {
    pub fn new(field: &F, coords: Vec<F::Elem>) -> Result<Self> {
        let Some(first) = coords.iter().find(|c| !field.is_zero(c)) else {
            return Err(CoreError::ZeroVector);
        };
        let inv = field.inv(first).unwrap();
        Ok(ProjPoint {
            coords: coords.iter().map(|c| field.mul(c, &inv)).collect(),
        })
    }

    pub fn from_i64(field: &F, coords: &[i64]) -> Result<Self> {
        Self::new(field, coords.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn coords(&self) -> &[F::Elem] {
        &self.coords
    }

    pub fn ambient_dim(&self) -> usize {
        self.coords.len() - 1
    }
}

/// Projective dimension of the span; `-1` for no points.
pub fn span_dimension<F: Field>(field: &F, points: &[Vec<F::Elem>]) -> Result<i64> {
    let Some(first) = points.first() else {
        return Ok(-1);
    };
    let m = ExactMatrix::from_rows(field, first.len(), points.to_vec())?;
    Ok(rank(&m) as i64 - 1)
}

pub fn span_dimension_of<F: Field>(field: &F, points: &[ProjPoint<F>]) -> Result<i64> {
    let rows: Vec<Vec<F::Elem>> = points.iter().map(|p| p.coords.clone()).collect();
    span_dimension(field, &rows)
}

/// Checks that `(r+1)`-subsets of the points span `P^r`: all of them when
/// there are at most `trials` subsets, otherwise `trials` random ones.
pub fn general_position_check<F: Field, R: Rng + ?Sized>(
    field: &F,
    points: &[ProjPoint<F>],
    trials: usize,
    rng: &mut R,
) -> Result<bool> {
    let Some(first) = points.first() else {
        return Ok(true);
    };
    let r = first.ambient_dim();
    let k = r + 1;
    if points.iter().any(|p| p.ambient_dim() != r) {
        return Err(CoreError::InvalidParameter("points in different ambient spaces".into()));
    }
    if points.len() < k {
        return Err(CoreError::InvalidParameter(
            "general position needs at least r+1 points".into(),
        ));
    }
    let full = |idx: &[usize]| -> Result<bool> {
        let rows: Vec<_> = idx.iter().map(|&i| points[i].coords.clone()).collect();
        Ok(span_dimension(field, &rows)? == r as i64)
    };
    let total = crate::poly::binomial(points.len() as u64, k as u64);
    if total <= trials as u64 {
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            if !full(&idx)? {
                return Ok(false);
            }
            // next k-combination in lexicographic order
            let n = points.len();
            let mut i = k;
            while i > 0 && idx[i - 1] == n - k + i - 1 {
                i -= 1;
            }
            if i == 0 {
                return Ok(true);
            }
            idx[i - 1] += 1;
            for j in i..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    for _ in 0..trials {
        let mut idx = sample(rng, points.len(), k).into_vec();
        idx.sort_unstable();
        if !full(&idx)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Coefficient vector of a random hyperplane in `P^r`.
pub fn random_hyperplane<F: Field, R: Rng + ?Sized>(field: &F, r: usize, rng: &mut R) -> Vec<F::Elem> {
    (0..=r).map(|_| field.random(rng)).collect()
}

/// Projection `P^r --> P^(r-1)` from a point.
///
/// With `k` the first nonzero coordinate of the normalized center, the map is
/// `x -> x - x_k * center` followed by dropping coordinate `k`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearProjection<F: Field> {
    center: ProjPoint<F>,
    matrix: ExactMatrix<F>,
}

impl<F: Field> LinearProjection<F> {
    pub fn from_center(field: &F, center: ProjPoint<F>) -> Self {
        let r = center.ambient_dim();
        let k = center
            .coords
            .iter()
            .position(|c| !field.is_zero(c))
            .expect("normalized point");
        let mut m = ExactMatrix::zeros(field, r, r + 1);
        let mut row = 0;
        for i in 0..=r {
            if i == k {
                continue;
            }
            m.set(row, i, field.one());
            m.set(row, k, field.neg(&center.coords[i]));
            row += 1;
        }
        LinearProjection { center, matrix: m }
    }

    pub fn center(&self) -> &ProjPoint<F> {
        &self.center
    }

    pub fn matrix(&self) -> &ExactMatrix<F> {
        &self.matrix
    }

    pub fn apply(&self, v: &[F::Elem]) -> Result<Vec<F::Elem>> {
        self.matrix.mul_vec(v)
    }

    pub fn apply_point(&self, p: &ProjPoint<F>) -> Result<ProjPoint<F>> {
        let field = self.matrix.field();
        ProjPoint::new(field, self.apply(&p.coords)?).map_err(|_| CoreError::CenterOnVariety)
    }

    /// Composes the projection with coordinate functions (parametrization maps
    /// or section bases).
    pub fn apply_forms(&self, maps: &[MultiPoly<F>]) -> Result<Vec<MultiPoly<F>>> {
        if maps.len() != self.matrix.cols() {
            return Err(CoreError::DimensionMismatch {
                expected: self.matrix.cols(),
                found: maps.len(),
            });
        }
        let field = self.matrix.field();
        Ok((0..self.matrix.rows())
            .map(|r| {
                maps.iter()
                    .enumerate()
                    .fold(MultiPoly::zero(field, maps[0].nvars()), |acc, (c, m)| {
                        acc.add(&m.scale(self.matrix.get(r, c)))
                    })
            })
            .collect())
    }
}

/// Projects a list of points; the center must not be one of them.
pub fn project_points<F: Field>(
    field: &F,
    points: &[ProjPoint<F>],
    center: &ProjPoint<F>,
) -> Result<Vec<ProjPoint<F>>> {
    if points.contains(center) {
        return Err(CoreError::CenterOnVariety);
    }
    let proj = LinearProjection::from_center(field, center.clone());
    points.iter().map(|p| proj.apply_point(p)).collect()
}

/// Projects a constructed variety from a point certified to lie off it.
pub fn project_from_point<F: Field>(v: &VarietyRep<F>, center: &ProjPoint<F>) -> Result<VarietyRep<F>> {
    v.project(center)
}

/// Intersection of a variety with random hyperplanes.
#[derive(Clone, Debug)]
pub struct LinearSection<F: Field> {
    pub hyperplanes: Vec<Vec<F::Elem>>,
    /// Points of the section found over the working field.
    pub section: VarietyRep<F>,
    /// Intersection count with multiplicity, when the section is finite.
    pub count: Option<usize>,
}

/// Cuts `v` with `codim` random hyperplanes, retrying on a degenerate draw.
pub fn random_linear_section<F: Field, R: Rng + ?Sized>(
    v: &VarietyRep<F>,
    codim: usize,
    rng: &mut R,
) -> Result<LinearSection<F>> {
    if codim > v.dim() {
        return Err(CoreError::InvalidParameter(alloc::format!(
            "codimension {codim} exceeds dimension {}",
            v.dim()
        )));
    }
    let mut last = None;
    for _ in 0..crate::varieties::MAX_RETRIES {
        let hs: Vec<Vec<F::Elem>> = (0..codim)
            .map(|_| random_hyperplane(v.field(), v.ambient_dim(), rng))
            .collect();
        match v.section_by(&hs, rng) {
            Ok(s) => return Ok(s),
            Err(e @ CoreError::RetriesExhausted(_)) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last.unwrap_or_else(|| CoreError::RetriesExhausted("linear section".into())))
}

/// Normalized copies of the given coordinate vectors, skipping zero vectors.
pub fn to_points<F: Field>(field: &F, vs: &[Vec<F::Elem>]) -> Vec<ProjPoint<F>> {
    vs.iter()
        .filter_map(|v| ProjPoint::new(field, v.clone()).ok())
        .collect()
}

/// Coordinate point `e_i` of `P^r`.
pub fn coordinate_point<F: Field>(field: &F, r: usize, i: usize) -> ProjPoint<F> {
    let mut v = vec![field.zero(); r + 1];
    v[i] = field.one();
    ProjPoint { coords: v }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals, DEFAULT_PRIME};
    use crate::seed;

    fn rnc_points(q: &Rationals, c: usize, ts: &[i64]) -> Vec<ProjPoint<Rationals>> {
        ts.iter()
            .map(|&t| ProjPoint::new(q, (0..=c).map(|j| q.from_i64(t.pow(j as u32))).collect()).unwrap())
            .collect()
    }

    #[test]
    fn spans() {
        let q = Rationals;
        let collinear = [
            ProjPoint::from_i64(&q, &[1, 0, 0, 0]).unwrap(),
            ProjPoint::from_i64(&q, &[0, 1, 0, 0]).unwrap(),
            ProjPoint::from_i64(&q, &[1, 1, 0, 0]).unwrap(),
        ];
        assert_eq!(span_dimension_of(&q, &collinear).unwrap(), 1);
        let coord: Vec<_> = (0..6).map(|i| coordinate_point(&q, 5, i)).collect();
        assert_eq!(span_dimension_of(&q, &coord).unwrap(), 5);
        assert_eq!(span_dimension_of::<Rationals>(&q, &[]).unwrap(), -1);
        let pts = rnc_points(&q, 4, &[-3, -2, -1, 0, 1, 2, 3, 5]);
        assert_eq!(span_dimension_of(&q, &pts).unwrap(), 4);
    }

    #[test]
    fn general_position_cases() {
        let q = Rationals;
        let mut rng = seed::rng(1, "gp");
        let pts = rnc_points(&q, 4, &[-3, -2, -1, 0, 1, 2, 3]);
        assert!(general_position_check(&q, &pts, 100, &mut rng).unwrap());
        let mut dup = pts.clone();
        dup.push(pts[0].clone());
        assert!(!general_position_check(&q, &dup, 1000, &mut rng).unwrap());
        // c+2 = 6 of the 7 points lie on the hyperplane x4 = 0
        let mut flat: Vec<_> = (0..6)
            .map(|i| {
                let mut v = [0i64; 5];
                v[i % 4] = 1;
                v[(i + 1) % 4] = i as i64 + 2;
                ProjPoint::from_i64(&q, &v).unwrap()
            })
            .collect();
        flat.push(ProjPoint::from_i64(&q, &[1, 1, 1, 1, 1]).unwrap());
        assert!(!general_position_check(&q, &flat, 1000, &mut rng).unwrap());
    }

    #[test]
    fn projection_of_coordinate_points() {
        let f = PrimeField::new(DEFAULT_PRIME).unwrap();
        let pts: Vec<_> = (0..3).map(|i| coordinate_point(&f, 3, i)).collect();
        let center = coordinate_point(&f, 3, 3);
        let img = project_points(&f, &pts, &center).unwrap();
        let expect: Vec<_> = (0..3).map(|i| coordinate_point(&f, 2, i)).collect();
        assert_eq!(img, expect);
        assert!(project_points(&f, &[center.clone()], &center).is_err());
        let proj = LinearProjection::from_center(&f, center.clone());
        assert!(proj.apply(center.coords()).unwrap().iter().all(|x| *x == 0));
        assert_eq!(rank(proj.matrix()), 3);
    }
}
