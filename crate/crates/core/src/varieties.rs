//! Witness varieties: rational normal curves and scrolls, divisors on scrolls,
//! elliptic and genus-3 curves, curves with a 4-secant line, point sets.
//!
//! Every variety can be sampled, tested for point membership and asked
//! whether a form vanishes on it exactly.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand::Rng;

use crate::error::{CoreError, Result};
use crate::field::Field;
use crate::geometry::{span_dimension, LinearProjection, LinearSection, ProjPoint};
use crate::matrix::{determinant, kernel_basis, ExactMatrix};
use crate::poly::{monomials_of_degree, Monomial, MultiPoly, Relation};
use crate::seed;
use crate::univariate::{interpolate, UniPoly};

/// Bound on re-draws for random constructions and sections.
pub const MAX_RETRIES: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tag {
    Rnc,
    Scroll,
    ScrollDivisor,
    EllipticNormal,
    ProjectedElliptic,
    RationalWithMSecant,
    PlaneQuarticEmbedding,
    PointConfig,
    Projection,
    LinearSpace,
}

impl Tag {
    pub const ALL: [Tag; 10] = [
        Tag::Rnc,
        Tag::Scroll,
        Tag::ScrollDivisor,
        Tag::EllipticNormal,
        Tag::ProjectedElliptic,
        Tag::RationalWithMSecant,
        Tag::PlaneQuarticEmbedding,
        Tag::PointConfig,
        Tag::Projection,
        Tag::LinearSpace,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Tag::Rnc => "RNC",
            Tag::Scroll => "Scroll",
            Tag::ScrollDivisor => "ScrollDivisor",
            Tag::EllipticNormal => "EllipticNormal",
            Tag::ProjectedElliptic => "ProjectedElliptic",
            Tag::RationalWithMSecant => "RationalWithMSecant",
            Tag::PlaneQuarticEmbedding => "PlaneQuarticEmbedding",
            Tag::PointConfig => "PointConfig",
            Tag::Projection => "Projection",
            Tag::LinearSpace => "LinearSpace",
        }
    }

    pub fn from_name(s: &str) -> Result<Tag> {
        Tag::ALL
            .iter()
            .copied()
            .find(|t| t.name() == s)
            .ok_or_else(|| CoreError::Parse(format!("unknown tag `{s}`")))
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Coordinate maps `P^1 -> P^r` given by binary forms in `(s, t)`.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalCurve<F: Field> {
    pub maps: Vec<MultiPoly<F>>,
}

/// A scroll `S(a_1, ..., a_{n+1})` parametrized in `(s, t, u_1, ..., u_{n+1})`.
#[derive(Clone, Debug, PartialEq)]
pub struct ScrollParam<F: Field> {
    pub scroll_type: Vec<u32>,
    pub maps: Vec<MultiPoly<F>>,
}

/// The divisor `{G = 0}` of class `aH + bF` on a scroll.
#[derive(Clone, Debug, PartialEq)]
pub struct ScrollDivisor<F: Field> {
    pub scroll: ScrollParam<F>,
    pub a: u32,
    pub b: i64,
    pub form: MultiPoly<F>,
}

/// A plane curve `y^e = R(x, y)` mapped by a list of functions in `(x, y)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ImplicitCurve<F: Field> {
    pub relation: Relation<F>,
    pub basis: Vec<MultiPoly<F>>,
    /// Image of the single point at infinity, when the curve has one.
    pub infinity: Option<Vec<F::Elem>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PointList<F: Field> {
    pub points: Vec<ProjPoint<F>>,
    /// True when the list is the whole variety rather than samples of one.
    pub complete: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Representation<F: Field> {
    Curve(RationalCurve<F>),
    Scroll(ScrollParam<F>),
    Divisor(ScrollDivisor<F>),
    Implicit(ImplicitCurve<F>),
    Points(PointList<F>),
    /// Linear span of the given points.
    Linear(Vec<ProjPoint<F>>),
}

/// Outcome of the span and degree checks on a construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantCheck {
    pub span_dimension: i64,
    pub section_count: Option<usize>,
    pub nondegenerate: bool,
    pub degree_matches: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VarietyRep<F: Field> {
    field: F,
    ambient_dim: usize,
    dim: usize,
    degree: u64,
    sectional_genus: Option<u32>,
    tag: Tag,
    rep: Representation<F>,
    params: BTreeMap<String, String>,
}

impl<F: Field> VarietyRep<F> {
    /// Assembles a variety from parts, checking that the representation
    /// lives in `P^ambient_dim`.
    pub fn from_parts(
        field: &F,
        tag: Tag,
        ambient_dim: usize,
        dim: usize,
        degree: u64,
        sectional_genus: Option<u32>,
        rep: Representation<F>,
    ) -> Result<Self> {
        let coords = match &rep {
            Representation::Curve(c) => {
                if c.maps.iter().any(|m| m.nvars() != 2 || !m.is_homogeneous()) {
                    return Err(CoreError::InvalidParameter(
                        "curve maps must be binary forms".into(),
                    ));
                }
                c.maps.len()
            }
            Representation::Scroll(s) => {
                check_scroll_maps(&s.scroll_type, &s.maps)?;
                s.maps.len()
            }
            Representation::Divisor(d) => {
                check_scroll_maps(&d.scroll.scroll_type, &d.scroll.maps)?;
                if d.form.nvars() != d.scroll.scroll_type.len() + 2 {
                    return Err(CoreError::DimensionMismatch {
                        expected: d.scroll.scroll_type.len() + 2,
                        found: d.form.nvars(),
                    });
                }
                d.scroll.maps.len()
            }
            Representation::Implicit(c) => {
                if c.relation.nvars() != 2 || c.basis.iter().any(|b| b.nvars() != 2) {
                    return Err(CoreError::InvalidParameter(
                        "implicit curves use two affine variables".into(),
                    ));
                }
                c.basis.len()
            }
            Representation::Points(p) => p.points.first().map_or(ambient_dim + 1, |q| q.coords().len()),
            Representation::Linear(p) => p.first().map_or(ambient_dim + 1, |q| q.coords().len()),
        };
        if coords != ambient_dim + 1 {
            return Err(CoreError::DimensionMismatch {
                expected: ambient_dim + 1,
                found: coords,
            });
        }
        if dim > ambient_dim {
            return Err(CoreError::InvalidParameter("dimension exceeds ambient".into()));
        }
        Ok(VarietyRep {
            field: field.clone(),
            ambient_dim,
            dim,
            degree,
            sectional_genus,
            tag,
            rep,
            params: BTreeMap::new(),
        })
    }

    pub fn with_param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.into(), value.to_string());
        self
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn codim(&self) -> usize {
        self.ambient_dim - self.dim
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn sectional_genus(&self) -> Option<u32> {
        self.sectional_genus
    }

    pub fn tag(&self) -> Tag {
        self.tag
    }

    pub fn representation(&self) -> &Representation<F> {
        &self.rep
    }

    pub fn params(&self) -> &BTreeMap<String, String> {
        &self.params
    }

    /// Random points of the variety as coordinate vectors.
    pub fn sample_points<R: Rng + ?Sized>(&self, count: usize, rng: &mut R) -> Result<Vec<Vec<F::Elem>>> {
        let f = &self.field;
        let mut out = Vec::with_capacity(count);
        let mut misses = 0;
        match &self.rep {
            Representation::Points(p) => {
                if p.complete {
                    return Ok(p.points.iter().map(|q| q.coords().to_vec()).collect());
                }
                return Ok(p
                    .points
                    .iter()
                    .cycle()
                    .take(count.min(p.points.len()))
                    .map(|q| q.coords().to_vec())
                    .collect());
            }
            Representation::Divisor(d) => {
                let pts = divisor_samples(f, d, count, rng)?;
                return Ok(pts.into_iter().map(|s| s.image).collect());
            }
            _ => {}
        }
        while out.len() < count {
            let v = match &self.rep {
                Representation::Curve(c) => {
                    let t = f.random(rng);
                    eval_all(&c.maps, &[f.one(), t])?
                }
                Representation::Scroll(s) => {
                    let mut x = vec![f.one(), f.random(rng)];
                    x.extend((0..s.scroll_type.len()).map(|_| f.random(rng)));
                    eval_all(&s.maps, &x)?
                }
                Representation::Implicit(c) => match implicit_point(f, c, rng)? {
                    Some(v) => v,
                    None => {
                        misses += 1;
                        if misses > 100 * (count + 10) {
                            return Err(CoreError::RetriesExhausted("curve points".into()));
                        }
                        continue;
                    }
                },
                Representation::Linear(ps) => {
                    let mut v = vec![f.zero(); self.ambient_dim + 1];
                    for p in ps {
                        let l = f.random(rng);
                        for (acc, x) in v.iter_mut().zip(p.coords()) {
                            *acc = f.add(acc, &f.mul(&l, x));
                        }
                    }
                    v
                }
                Representation::Points(_) | Representation::Divisor(_) => unreachable!(),
            };
            if v.iter().all(|x| f.is_zero(x)) {
                misses += 1;
                if misses > 100 * (count + 10) {
                    return Err(CoreError::RetriesExhausted("nonzero sample".into()));
                }
                continue;
            }
            out.push(v);
        }
        Ok(out)
    }

    /// Linear conditions on the coefficients of degree-`degree` forms (in
    /// [`monomials_of_degree`] order) that every form vanishing on the
    /// variety satisfies. Plain points give evaluation rows; on non-reduced
    /// divisors derivative rows of the pullbacks are added.
    pub fn conditions<R: Rng + ?Sized>(
        &self,
        degree: u32,
        count: usize,
        rng: &mut R,
    ) -> Result<Vec<Vec<F::Elem>>> {
        let f = &self.field;
        let monos = monomials_of_degree(self.ambient_dim + 1, degree);
        if let Representation::Divisor(d) = &self.rep {
            let pullbacks: Vec<MultiPoly<F>> = monos
                .iter()
                .map(|m| MultiPoly::term(f, m.clone(), f.one()).substitute(&d.scroll.maps))
                .collect::<Result<_>>()?;
            let mut rows = Vec::new();
            for s in divisor_samples(f, d, count, rng)? {
                rows.push(monos.iter().map(|m| m.eval(f, &s.image)).collect());
                for k in 1..s.order {
                    for alpha in monomials_of_degree(d.form.nvars(), k) {
                        let row = pullbacks
                            .iter()
                            .map(|p| derivative(p, &alpha).evaluate(&s.cox))
                            .collect::<Result<Vec<_>>>()?;
                        rows.push(row);
                    }
                }
            }
            return Ok(rows);
        }
        Ok(self
            .sample_points(count, rng)?
            .iter()
            .map(|p| monos.iter().map(|m| m.eval(f, p)).collect())
            .collect())
    }

    /// Whether the form vanishes on the variety: exact when a
    /// parametrization, relation or complete point list is available,
    /// `None` for sampled point lists.
    pub fn certify(&self, q: &MultiPoly<F>) -> Result<Option<bool>> {
        if q.nvars() != self.ambient_dim + 1 {
            return Err(CoreError::DimensionMismatch {
                expected: self.ambient_dim + 1,
                found: q.nvars(),
            });
        }
        Ok(match &self.rep {
            Representation::Curve(c) => Some(q.substitute(&c.maps)?.is_zero()),
            Representation::Scroll(s) => Some(q.substitute(&s.maps)?.is_zero()),
            Representation::Divisor(d) => {
                let pb = q.substitute(&d.scroll.maps)?;
                Some(pb.is_zero() || pb.div_exact(&d.form).is_some())
            }
            Representation::Implicit(c) => Some(q.substitute(&c.basis)?.reduce(&c.relation).is_zero()),
            Representation::Points(p) => {
                if !p.complete {
                    return Ok(None);
                }
                let mut all = true;
                for pt in &p.points {
                    all &= self.field.is_zero(&q.evaluate(pt.coords())?);
                }
                Some(all)
            }
            Representation::Linear(ps) => Some(q.substitute(&linear_maps(&self.field, ps))?.is_zero()),
        })
    }

    /// Exact test whether a point lies on the variety.
    pub fn contains_point(&self, p: &[F::Elem]) -> Result<bool> {
        let f = &self.field;
        if p.len() != self.ambient_dim + 1 {
            return Err(CoreError::DimensionMismatch {
                expected: self.ambient_dim + 1,
                found: p.len(),
            });
        }
        if p.iter().all(|x| f.is_zero(x)) {
            return Err(CoreError::ZeroVector);
        }
        match &self.rep {
            Representation::Curve(c) => Ok(!curve_preimages(f, &c.maps, p)?.is_empty()),
            Representation::Scroll(s) => Ok(!matches!(scroll_inverse(f, &s.scroll_type, p), Inverse::Off)),
            Representation::Divisor(d) => match scroll_inverse(f, &d.scroll.scroll_type, p) {
                Inverse::Off => Ok(false),
                Inverse::Vertex => Err(CoreError::Unsupported(
                    "membership at the vertex of a scroll".into(),
                )),
                Inverse::Point(x) => Ok(f.is_zero(&d.form.evaluate(&x)?)),
            },
            Representation::Implicit(c) => implicit_contains(f, c, p),
            Representation::Points(list) => {
                let q = ProjPoint::new(f, p.to_vec())?;
                Ok(list.points.contains(&q))
            }
            Representation::Linear(ps) => {
                let rows: Vec<Vec<F::Elem>> = ps.iter().map(|q| q.coords().to_vec()).collect();
                let base = span_dimension(f, &rows)?;
                let mut with = rows;
                with.push(p.to_vec());
                Ok(span_dimension(f, &with)? == base)
            }
        }
    }

    /// Image under projection from a point off the variety.
    pub fn project(&self, center: &ProjPoint<F>) -> Result<VarietyRep<F>> {
        let f = &self.field;
        if center.ambient_dim() != self.ambient_dim {
            return Err(CoreError::DimensionMismatch {
                expected: self.ambient_dim,
                found: center.ambient_dim(),
            });
        }
        if self.contains_point(center.coords())? {
            return Err(CoreError::CenterOnVariety);
        }
        let proj = LinearProjection::from_center(f, center.clone());
        let r = self.ambient_dim - 1;
        let (tag, rep) = match &self.rep {
            Representation::Curve(c) => (
                Tag::Projection,
                Representation::Curve(RationalCurve {
                    maps: proj.apply_forms(&c.maps)?,
                }),
            ),
            Representation::Implicit(c) => {
                let tag = if matches!(self.tag, Tag::EllipticNormal | Tag::ProjectedElliptic) {
                    Tag::ProjectedElliptic
                } else {
                    Tag::Projection
                };
                let infinity = match &c.infinity {
                    Some(v) => Some(proj.apply(v)?),
                    None => None,
                };
                (
                    tag,
                    Representation::Implicit(ImplicitCurve {
                        relation: c.relation.clone(),
                        basis: proj.apply_forms(&c.basis)?,
                        infinity,
                    }),
                )
            }
            Representation::Points(p) => (
                Tag::Projection,
                Representation::Points(PointList {
                    points: p.points.iter().map(|q| proj.apply_point(q)).collect::<Result<_>>()?,
                    complete: p.complete,
                }),
            ),
            Representation::Linear(ps) => (
                Tag::Projection,
                Representation::Linear(
                    ps.iter()
                        .filter_map(|q| proj.apply_point(q).ok())
                        .collect(),
                ),
            ),
            Representation::Scroll(_) | Representation::Divisor(_) => {
                return Err(CoreError::Unsupported("projection of scrolls".into()))
            }
        };
        let mut out = VarietyRep::from_parts(f, tag, r, self.dim, self.degree, self.sectional_genus, rep)?;
        out.params = self.params.clone();
        out.params.insert("center".into(), format_coords(f, center.coords()));
        Ok(out)
    }

    /// Intersection with the given hyperplanes.
    pub fn section_by<R: Rng + ?Sized>(
        &self,
        hyperplanes: &[Vec<F::Elem>],
        rng: &mut R,
    ) -> Result<LinearSection<F>> {
        let f = &self.field;
        let k = hyperplanes.len();
        for h in hyperplanes {
            if h.len() != self.ambient_dim + 1 {
                return Err(CoreError::DimensionMismatch {
                    expected: self.ambient_dim + 1,
                    found: h.len(),
                });
            }
        }
        if k == 0 {
            return Ok(LinearSection {
                hyperplanes: Vec::new(),
                section: self.clone(),
                count: None,
            });
        }
        let degenerate = || CoreError::RetriesExhausted("hyperplane contains the variety".into());
        let (points, count, complete): (Vec<Vec<F::Elem>>, Option<usize>, bool) = match &self.rep {
            Representation::Curve(c) => {
                if k != 1 {
                    return Err(CoreError::InvalidParameter("a curve is cut by one hyperplane".into()));
                }
                let form = combine(f, &c.maps, &hyperplanes[0]);
                if form.is_zero() {
                    return Err(degenerate());
                }
                let deg = form.total_degree().unwrap() as usize;
                let md = curve_map_degree(f, &c.maps, rng)?;
                let params = binary_roots(f, &form).unwrap_or_default();
                let mut pts = Vec::new();
                for st in &params {
                    pts.push(eval_all(&c.maps, st)?);
                }
                let total = binary_root_multiplicity(f, &form, &params);
                (pts, Some(deg / md), md == 1 && total == deg)
            }
            Representation::Scroll(s) => {
                let len = s.scroll_type.len();
                if k > len {
                    return Err(CoreError::InvalidParameter("too many hyperplanes".into()));
                }
                let forms = fiber_forms(f, &s.scroll_type, hyperplanes);
                if k == len {
                    let det = det_poly(f, &forms, 2);
                    if det.is_zero() {
                        return Err(degenerate());
                    }
                    let deg = det.total_degree().unwrap() as usize;
                    let params = binary_roots(f, &det).unwrap_or_default();
                    let mut pts = Vec::new();
                    for st in &params {
                        let m = numeric(f, &forms, st)?;
                        let ker = kernel_basis(&m);
                        if ker.len() != 1 {
                            continue;
                        }
                        let mut x = st.clone();
                        x.extend(ker[0].iter().cloned());
                        pts.push(eval_all(&s.maps, &x)?);
                    }
                    let total = binary_root_multiplicity(f, &det, &params);
                    let ok = total == deg && pts.len() == params.len();
                    (pts, Some(deg), ok)
                } else {
                    let mut pts = Vec::new();
                    for _ in 0..(4 * (self.ambient_dim + 1)) {
                        let st = vec![f.one(), f.random(rng)];
                        let ker = kernel_basis(&numeric(f, &forms, &st)?);
                        let mut u = vec![f.zero(); len];
                        for v in &ker {
                            let l = f.random(rng);
                            for (a, x) in u.iter_mut().zip(v) {
                                *a = f.add(a, &f.mul(&l, x));
                            }
                        }
                        let mut x = st;
                        x.extend(u);
                        let img = eval_all(&s.maps, &x)?;
                        if img.iter().any(|z| !f.is_zero(z)) {
                            pts.push(img);
                        }
                    }
                    (pts, None, false)
                }
            }
            Representation::Divisor(d) => {
                let len = d.scroll.scroll_type.len();
                if k != len - 1 {
                    return Err(CoreError::Unsupported(
                        "divisor sections other than by dim(X) hyperplanes".into(),
                    ));
                }
                let forms = fiber_forms(f, &d.scroll.scroll_type, hyperplanes);
                let w = kernel_minors(f, &forms);
                let mut images = vec![MultiPoly::var(f, 2, 0), MultiPoly::var(f, 2, 1)];
                images.extend(w.iter().cloned());
                let g = d.form.substitute(&images)?;
                if g.is_zero() {
                    return Err(degenerate());
                }
                let deg = g.total_degree().unwrap() as usize;
                let params = binary_roots(f, &g).unwrap_or_default();
                let mut pts = Vec::new();
                for st in &params {
                    let x = eval_all(&images, st)?;
                    let img = eval_all(&d.scroll.maps, &x)?;
                    if img.iter().any(|z| !f.is_zero(z)) {
                        pts.push(img);
                    }
                }
                let total = binary_root_multiplicity(f, &g, &params);
                let ok = total == deg && pts.len() == params.len();
                (pts, Some(deg), ok)
            }
            Representation::Implicit(c) => {
                if k != 1 {
                    return Err(CoreError::InvalidParameter("a curve is cut by one hyperplane".into()));
                }
                let h = combine(f, &c.basis, &hyperplanes[0]);
                let n1 = norm(f, &c.relation, &h)?;
                if n1.is_zero() {
                    return Err(degenerate());
                }
                let other = crate::geometry::random_hyperplane(f, self.ambient_dim, rng);
                let n2 = norm(f, &c.relation, &combine(f, &c.basis, &other))?;
                let base = n1.gcd(&n2).degree().unwrap_or(0);
                let deg = n1.degree().unwrap() - base;
                let mut pts = Vec::new();
                if let Ok(xs) = f.roots(&n1) {
                    for x in xs {
                        for y in fiber_roots(f, &c.relation, &x)? {
                            let pt = [x.clone(), y];
                            if f.is_zero(&h.evaluate(&pt)?) {
                                pts.push(eval_all(&c.basis, &pt)?);
                            }
                        }
                    }
                }
                // d distinct affine points exhaust a section of a degree-d curve
                let ok = pts.len() == deg && deg as u64 == self.degree;
                (pts, Some(deg), ok)
            }
            Representation::Points(_) | Representation::Linear(_) => {
                return Err(CoreError::Unsupported("sections of point sets or linear spaces".into()))
            }
        };
        let pts: Vec<ProjPoint<F>> = crate::geometry::to_points(f, &points);
        let mut uniq: Vec<ProjPoint<F>> = Vec::new();
        for p in pts {
            if !uniq.contains(&p) {
                uniq.push(p);
            }
        }
        let section = VarietyRep {
            field: f.clone(),
            ambient_dim: self.ambient_dim,
            dim: self.dim - k,
            degree: uniq.len() as u64,
            sectional_genus: None,
            tag: Tag::PointConfig,
            rep: Representation::Points(PointList {
                points: uniq,
                complete: complete && self.dim == k,
            }),
            params: BTreeMap::new(),
        };
        Ok(LinearSection {
            hyperplanes: hyperplanes.to_vec(),
            section,
            count,
        })
    }

    /// Span of samples and the hyperplane-section count against the declared
    /// degree.
    pub fn check_invariants<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<InvariantCheck> {
        let samples = self.sample_points(self.ambient_dim + 11, rng)?;
        let span = span_dimension(&self.field, &samples)?;
        let count = if self.dim == 0 {
            Some(samples.len())
        } else {
            match &self.rep {
                Representation::Linear(_) => Some(1),
                _ => crate::geometry::random_linear_section(self, self.dim, rng)?.count,
            }
        };
        Ok(InvariantCheck {
            span_dimension: span,
            section_count: count,
            nondegenerate: span == self.ambient_dim as i64,
            degree_matches: count == Some(self.degree as usize),
        })
    }

    /// Number of parameter values mapping to a general point (curves only).
    pub fn map_degree<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<usize> {
        match &self.rep {
            Representation::Curve(c) => curve_map_degree(&self.field, &c.maps, rng),
            _ => Err(CoreError::Unsupported("map degree of non-parametrized curves".into())),
        }
    }

    /// Parameters `(s, t)` mapping to the point (curves only).
    pub fn preimages(&self, p: &[F::Elem]) -> Result<Vec<Vec<F::Elem>>> {
        match &self.rep {
            Representation::Curve(c) => curve_preimages(&self.field, &c.maps, p),
            _ => Err(CoreError::Unsupported("preimages on non-parametrized curves".into())),
        }
    }
}

fn format_coords<F: Field>(f: &F, v: &[F::Elem]) -> String {
    let parts: Vec<String> = v.iter().map(|x| f.format(x)).collect();
    format!("({})", parts.join(":"))
}

fn check_scroll_maps<F: Field>(ty: &[u32], maps: &[MultiPoly<F>]) -> Result<()> {
    let expected: usize = ty.iter().map(|&a| a as usize + 1).sum();
    if maps.len() != expected {
        return Err(CoreError::DimensionMismatch {
            expected,
            found: maps.len(),
        });
    }
    if maps.iter().any(|m| m.nvars() != ty.len() + 2) {
        return Err(CoreError::InvalidParameter("scroll maps use s, t and one u per block".into()));
    }
    Ok(())
}

fn eval_all<F: Field>(maps: &[MultiPoly<F>], x: &[F::Elem]) -> Result<Vec<F::Elem>> {
    maps.iter().map(|m| m.evaluate(x)).collect()
}

/// `sum h_i maps_i`.
fn combine<F: Field>(f: &F, maps: &[MultiPoly<F>], h: &[F::Elem]) -> MultiPoly<F> {
    maps.iter()
        .zip(h)
        .fold(MultiPoly::zero(f, maps[0].nvars()), |acc, (m, c)| acc.add(&m.scale(c)))
}

fn linear_maps<F: Field>(f: &F, ps: &[ProjPoint<F>]) -> Vec<MultiPoly<F>> {
    let k = ps.len();
    let r = ps[0].coords().len();
    (0..r)
        .map(|i| {
            let coeffs: Vec<F::Elem> = ps.iter().map(|p| p.coords()[i].clone()).collect();
            debug_assert_eq!(coeffs.len(), k);
            MultiPoly::linear_form(f, &coeffs)
        })
        .collect()
}

/// `p(1, t)` for a binary form `p(s, t)`.
fn dehomogenize<F: Field>(f: &F, p: &MultiPoly<F>) -> UniPoly<F> {
    let mut coeffs = vec![f.zero(); p.degree_in(1) as usize + 1];
    for (m, c) in p.terms() {
        let j = m.exponents()[1] as usize;
        coeffs[j] = f.add(&coeffs[j], c);
    }
    UniPoly::new(f, coeffs)
}

/// Zeros `(s, t)` of a nonzero binary form over the field: `(1, t)` for
/// affine roots and `(0, 1)` when the degree drops.
fn binary_roots<F: Field>(f: &F, p: &MultiPoly<F>) -> Result<Vec<Vec<F::Elem>>> {
    let u = dehomogenize(f, p);
    let mut out: Vec<Vec<F::Elem>> = f.roots(&u)?.into_iter().map(|t| vec![f.one(), t]).collect();
    if u.degree() < p.total_degree().map(|d| d as usize) {
        out.push(vec![f.zero(), f.one()]);
    }
    Ok(out)
}

/// Sum of multiplicities of the listed zeros of a binary form.
fn binary_root_multiplicity<F: Field>(f: &F, p: &MultiPoly<F>, roots: &[Vec<F::Elem>]) -> usize {
    let u = dehomogenize(f, p);
    let total = p.total_degree().unwrap_or(0) as usize;
    let mut sum = 0;
    for st in roots {
        if f.is_zero(&st[0]) {
            sum += total - u.degree().unwrap_or(0);
            continue;
        }
        let lin = UniPoly::new(f, vec![f.neg(&st[1]), f.one()]);
        let mut q = u.clone();
        loop {
            let (d, r) = q.div_rem(&lin);
            if !r.is_zero() || q.is_zero() {
                break;
            }
            sum += 1;
            q = d;
        }
    }
    sum
}

/// Hyperplane restricted to each scroll block: `h_{k,i}(s,t)`, the
/// coefficient of `u_i` in `H_k` pulled back to the scroll.
fn fiber_forms<F: Field>(f: &F, ty: &[u32], hs: &[Vec<F::Elem>]) -> Vec<Vec<MultiPoly<F>>> {
    hs.iter()
        .map(|h| {
            let mut off = 0;
            ty.iter()
                .map(|&a| {
                    let mut p = MultiPoly::zero(f, 2);
                    for j in 0..=a {
                        let m = Monomial::new(vec![a - j, j]);
                        p = p.add(&MultiPoly::term(f, m, h[off + j as usize].clone()));
                    }
                    off += a as usize + 1;
                    p
                })
                .collect()
        })
        .collect()
}

fn numeric<F: Field>(f: &F, forms: &[Vec<MultiPoly<F>>], st: &[F::Elem]) -> Result<ExactMatrix<F>> {
    let cols = forms.first().map_or(0, |r| r.len());
    let rows = forms
        .iter()
        .map(|r| r.iter().map(|p| p.evaluate(st)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    ExactMatrix::from_rows(f, cols, rows)
}

/// Determinant of a square matrix of polynomials by cofactor expansion.
fn det_poly<F: Field>(f: &F, m: &[Vec<MultiPoly<F>>], nvars: usize) -> MultiPoly<F> {
    let n = m.len();
    if n == 0 {
        return MultiPoly::one(f, nvars);
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = MultiPoly::zero(f, nvars);
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<MultiPoly<F>>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, p)| p.clone())
                    .collect()
            })
            .collect();
        let term = m[0][j].mul(&det_poly(f, &minor, nvars));
        acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

/// Signed maximal minors of a `k x (k+1)` matrix of forms; they span its kernel.
fn kernel_minors<F: Field>(f: &F, m: &[Vec<MultiPoly<F>>]) -> Vec<MultiPoly<F>> {
    let cols = m.first().map_or(1, |r| r.len());
    (0..cols)
        .map(|i| {
            let minor: Vec<Vec<MultiPoly<F>>> = m
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|(c, _)| *c != i)
                        .map(|(_, p)| p.clone())
                        .collect()
                })
                .collect();
            let d = det_poly(f, &minor, 2);
            if i % 2 == 0 {
                d
            } else {
                d.neg()
            }
        })
        .collect()
}

/// All parameters `(s, t)` whose image is proportional to `p`.
fn curve_preimages<F: Field>(f: &F, maps: &[MultiPoly<F>], p: &[F::Elem]) -> Result<Vec<Vec<F::Elem>>> {
    let k = p.iter().position(|x| !f.is_zero(x)).ok_or(CoreError::ZeroVector)?;
    let polys: Vec<UniPoly<F>> = maps.iter().map(|m| dehomogenize(f, m)).collect();
    let mut g = UniPoly::zero(f);
    for j in 0..maps.len() {
        if j == k {
            continue;
        }
        let minor = polys[j].scale(&p[k]).sub(&polys[k].scale(&p[j]));
        g = g.gcd(&minor);
    }
    let mut out = Vec::new();
    let proportional = |v: &[F::Elem]| {
        v.iter().any(|x| !f.is_zero(x))
            && (0..v.len()).all(|j| f.is_zero(&f.sub(&f.mul(&v[j], &p[k]), &f.mul(&v[k], &p[j]))))
    };
    if g.is_zero() {
        return Err(CoreError::Inconsistent("curve image is a single point".into()));
    }
    for t in f.roots(&g)? {
        let st = vec![f.one(), t];
        if proportional(&eval_all(maps, &st)?) {
            out.push(st);
        }
    }
    let inf = vec![f.zero(), f.one()];
    if proportional(&eval_all(maps, &inf)?) {
        out.push(inf);
    }
    Ok(out)
}

fn curve_map_degree<F: Field, R: Rng + ?Sized>(f: &F, maps: &[MultiPoly<F>], rng: &mut R) -> Result<usize> {
    for _ in 0..MAX_RETRIES {
        let p = eval_all(maps, &[f.one(), f.random(rng)])?;
        if p.iter().all(|x| f.is_zero(x)) {
            continue;
        }
        let k = p.iter().position(|x| !f.is_zero(x)).unwrap();
        let polys: Vec<UniPoly<F>> = maps.iter().map(|m| dehomogenize(f, m)).collect();
        let mut g = UniPoly::zero(f);
        for j in 0..maps.len() {
            if j != k {
                g = g.gcd(&polys[j].scale(&p[k]).sub(&polys[k].scale(&p[j])));
            }
        }
        if g.is_zero() {
            return Err(CoreError::Inconsistent("curve image is a single point".into()));
        }
        return Ok(g.squarefree_part().degree().unwrap_or(0));
    }
    Err(CoreError::RetriesExhausted("map degree".into()))
}

enum Inverse<E> {
    Off,
    Vertex,
    Point(Vec<E>),
}

/// Recovers Cox coordinates `(s, t, u)` of a point on a scroll.
fn scroll_inverse<F: Field>(f: &F, ty: &[u32], p: &[F::Elem]) -> Inverse<F::Elem> {
    let mut blocks = Vec::new();
    let mut off = 0;
    for &a in ty {
        blocks.push(&p[off..off + a as usize + 1]);
        off += a as usize + 1;
    }
    let lead = ty
        .iter()
        .zip(&blocks)
        .find(|(&a, b)| a > 0 && b.iter().any(|x| !f.is_zero(x)));
    let Some((_, b)) = lead else {
        return if ty.contains(&0) && p.iter().any(|x| !f.is_zero(x)) {
            Inverse::Vertex
        } else {
            Inverse::Off
        };
    };
    let (s, t) = if !f.is_zero(&b[0]) {
        (f.one(), f.div(&b[1], &b[0]).unwrap())
    } else {
        (f.zero(), f.one())
    };
    let mut x = vec![s.clone(), t.clone()];
    for (&a, blk) in ty.iter().zip(&blocks) {
        let mons: Vec<F::Elem> = (0..=a)
            .map(|j| f.mul(&f.pow(&s, (a - j) as u64), &f.pow(&t, j as u64)))
            .collect();
        let idx = mons.iter().position(|m| !f.is_zero(m)).unwrap();
        let u = f.div(&blk[idx], &mons[idx]).unwrap();
        if blk.iter().zip(&mons).any(|(v, m)| *v != f.mul(&u, m)) {
            return Inverse::Off;
        }
        x.push(u);
    }
    Inverse::Point(x)
}

/// `∂^alpha p`.
fn derivative<F: Field>(p: &MultiPoly<F>, alpha: &Monomial) -> MultiPoly<F> {
    let mut out = p.clone();
    for (v, &e) in alpha.exponents().iter().enumerate() {
        for _ in 0..e {
            out = out.partial(v);
        }
    }
    out
}

/// Order of vanishing of `g` at `x`, capped at `cap`.
fn vanishing_order<F: Field>(g: &MultiPoly<F>, x: &[F::Elem], cap: u32) -> Result<u32> {
    let f = g.field();
    for k in 0..cap {
        for alpha in monomials_of_degree(g.nvars(), k) {
            if !f.is_zero(&derivative(g, &alpha).evaluate(x)?) {
                return Ok(k);
            }
        }
    }
    Ok(cap)
}

struct DivisorSample<E> {
    cox: Vec<E>,
    image: Vec<E>,
    order: u32,
}

/// Content of the divisor form: gcd of its coefficient binary forms.
fn form_content<F: Field>(f: &F, d: &ScrollDivisor<F>) -> (UniPoly<F>, bool) {
    let len = d.scroll.scroll_type.len();
    let uvars: Vec<usize> = (2..2 + len).collect();
    let mut g = UniPoly::zero(f);
    let mut at_infinity = true;
    for coeff in d.form.collect_in(&uvars).values() {
        let mut bin = MultiPoly::zero(f, 2);
        for (m, c) in coeff.terms() {
            let e = m.exponents();
            bin = bin.add(&MultiPoly::term(f, Monomial::new(vec![e[0], e[1]]), c.clone()));
        }
        let u = dehomogenize(f, &bin);
        if u.degree() == bin.total_degree().map(|x| x as usize) {
            at_infinity = false;
        }
        g = g.gcd(&u);
    }
    (g, at_infinity)
}

fn divisor_samples<F: Field, R: Rng + ?Sized>(
    f: &F,
    d: &ScrollDivisor<F>,
    count: usize,
    rng: &mut R,
) -> Result<Vec<DivisorSample<F::Elem>>> {
    let len = d.scroll.scroll_type.len();
    let cap = d.a.max(1) + 2;
    let mut out = Vec::new();
    let push = |cox: Vec<F::Elem>, out: &mut Vec<DivisorSample<F::Elem>>| -> Result<()> {
        let image = eval_all(&d.scroll.maps, &cox)?;
        if image.iter().all(|x| f.is_zero(x)) {
            return Ok(());
        }
        let order = vanishing_order(&d.form, &cox, cap)?;
        out.push(DivisorSample { cox, image, order });
        Ok(())
    };
    // whole fibers inside the divisor
    let (content, at_inf) = form_content(f, d);
    let mut fibers: Vec<(F::Elem, F::Elem)> = Vec::new();
    if content.degree().unwrap_or(0) > 0 {
        for t in f.roots(&content)? {
            fibers.push((f.one(), t));
        }
    }
    if at_inf {
        fibers.push((f.zero(), f.one()));
    }
    let fiber_share = if d.a == 0 { count } else { count / 4 };
    if !fibers.is_empty() {
        for i in 0..fiber_share.max(fibers.len()) {
            let (s, t) = fibers[i % fibers.len()].clone();
            let mut cox = vec![s, t];
            cox.extend((0..len).map(|_| f.random(rng)));
            push(cox, &mut out)?;
        }
    }
    if d.a == 0 {
        if fibers.is_empty() {
            return Err(CoreError::Unsupported("fibers of the divisor are not defined over the field".into()));
        }
        return Ok(out);
    }
    let mut misses = 0;
    while out.len() < count {
        let t = f.random(rng);
        let alpha: Vec<F::Elem> = (0..len).map(|_| f.random(rng)).collect();
        let beta: Vec<F::Elem> = (0..len).map(|_| f.random(rng)).collect();
        let mut images = vec![
            MultiPoly::constant(f, 1, f.one()),
            MultiPoly::constant(f, 1, t.clone()),
        ];
        for (a, b) in alpha.iter().zip(&beta) {
            images.push(MultiPoly::constant(f, 1, a.clone()).add(&MultiPoly::var(f, 1, 0).scale(b)));
        }
        let g = d.form.substitute(&images)?.to_univariate(0)?;
        let roots = if g.degree().unwrap_or(0) == 0 { Vec::new() } else { f.roots(&g)? };
        if roots.is_empty() {
            misses += 1;
            if misses > 50 * (count + 10) {
                return Err(CoreError::RetriesExhausted("divisor points".into()));
            }
            continue;
        }
        for l in roots {
            let mut cox = vec![f.one(), t.clone()];
            cox.extend(alpha.iter().zip(&beta).map(|(a, b)| f.add(a, &f.mul(&l, b))));
            push(cox, &mut out)?;
        }
    }
    Ok(out)
}

/// Roots `y` of the relation at a given `x`.
fn fiber_roots<F: Field>(f: &F, rel: &Relation<F>, x: &F::Elem) -> Result<Vec<F::Elem>> {
    let images = [
        MultiPoly::constant(f, 1, x.clone()),
        MultiPoly::var(f, 1, 0),
    ];
    let poly = relation_in_lead(f, rel).substitute(&images)?.to_univariate(0)?;
    f.roots(&poly)
}

/// The relation as a polynomial in `(x, y)` with `y` the lead variable.
fn relation_in_lead<F: Field>(_f: &F, rel: &Relation<F>) -> MultiPoly<F> {
    rel.as_polynomial()
}

fn implicit_point<F: Field, R: Rng + ?Sized>(
    f: &F,
    c: &ImplicitCurve<F>,
    rng: &mut R,
) -> Result<Option<Vec<F::Elem>>> {
    if f.kind().prime().is_none() {
        return Err(CoreError::Unsupported(
            "sampling points of genus >= 1 curves needs a prime field".into(),
        ));
    }
    let x = f.random(rng);
    let ys = fiber_roots(f, &c.relation, &x)?;
    if ys.is_empty() {
        return Ok(None);
    }
    let y = ys[rng.gen_range(0..ys.len())].clone();
    let xy = if c.relation.lead_var() == 1 { [x, y] } else { [y, x] };
    let v = eval_all(&c.basis, &xy)?;
    Ok(Some(v))
}

/// Positions of the functions `1`, `x`, `y` in the basis.
fn chart_indices<F: Field>(f: &F, basis: &[MultiPoly<F>]) -> Option<[usize; 3]> {
    let one = MultiPoly::one(f, 2);
    let x = MultiPoly::var(f, 2, 0);
    let y = MultiPoly::var(f, 2, 1);
    let find = |p: &MultiPoly<F>| basis.iter().position(|b| b == p);
    Some([find(&one)?, find(&x)?, find(&y)?])
}

fn implicit_contains<F: Field>(f: &F, c: &ImplicitCurve<F>, p: &[F::Elem]) -> Result<bool> {
    let Some([i1, ix, iy]) = chart_indices(f, &c.basis) else {
        return Err(CoreError::Unsupported(
            "membership on curves without 1, x, y among the coordinates".into(),
        ));
    };
    if f.is_zero(&p[i1]) {
        return Ok(match &c.infinity {
            Some(o) => ProjPoint::new(f, o.clone())? == ProjPoint::new(f, p.to_vec())?,
            None => false,
        });
    }
    let x = f.div(&p[ix], &p[i1]).unwrap();
    let y = f.div(&p[iy], &p[i1]).unwrap();
    let pt = [x, y];
    if !f.is_zero(&c.relation.as_polynomial().evaluate(&pt)?) {
        return Ok(false);
    }
    let img = eval_all(&c.basis, &pt)?;
    Ok(ProjPoint::new(f, img)? == ProjPoint::new(f, p.to_vec())?)
}

/// Norm of `h` from the function field down to `k(x)`: the determinant of
/// multiplication by `h` on `1, y, ..., y^(e-1)`.
fn norm<F: Field>(f: &F, rel: &Relation<F>, h: &MultiPoly<F>) -> Result<UniPoly<F>> {
    let e = rel.lead_exp() as usize;
    let yv = rel.lead_var();
    let xv = 1 - yv;
    let h = h.reduce(rel);
    let mut rows = Vec::with_capacity(e);
    for j in 0..e {
        let mut mono = vec![0u32; 2];
        mono[yv] = j as u32;
        let prod = h.mul_term(&Monomial::new(mono), &f.one()).reduce(rel);
        let by_y = prod.collect_in(&[yv]);
        let row: Vec<MultiPoly<F>> = (0..e)
            .map(|k| {
                by_y.get(&Monomial::new(vec![k as u32]))
                    .cloned()
                    .unwrap_or_else(|| MultiPoly::zero(f, 2))
            })
            .collect();
        rows.push(row);
    }
    det_poly(f, &rows, 2).to_univariate(xv)
}

/// A form in the given monomials with random coefficients.
fn random_form<F: Field, R: Rng + ?Sized>(f: &F, monos: &[Monomial], rng: &mut R) -> MultiPoly<F> {
    let nvars = monos.first().map_or(0, |m| m.nvars());
    monos.iter().fold(MultiPoly::zero(f, nvars), |acc, m| {
        acc.add(&MultiPoly::term(f, m.clone(), f.random_nonzero(rng)))
    })
}

fn random_binary_form<F: Field, R: Rng + ?Sized>(f: &F, degree: u32, rng: &mut R) -> MultiPoly<F> {
    random_form(f, &monomials_of_degree(2, degree), rng)
}

/// `(s^r, s^(r-1) t, ..., t^r)`.
pub fn rational_normal_curve<F: Field>(field: &F, r: usize) -> Result<VarietyRep<F>> {
    if r < 1 {
        return Err(CoreError::InvalidParameter("rational normal curve needs r >= 1".into()));
    }
    let maps = monomials_of_degree(2, r as u32)
        .into_iter()
        .map(|m| MultiPoly::term(field, m, field.one()))
        .collect();
    Ok(VarietyRep::from_parts(
        field,
        Tag::Rnc,
        r,
        1,
        r as u64,
        Some(0),
        Representation::Curve(RationalCurve { maps }),
    )?
    .with_param("r", r))
}

pub fn validate_scroll_type(ty: &[u32]) -> Result<()> {
    if ty.is_empty() {
        return Err(CoreError::InvalidParameter("empty scroll type".into()));
    }
    if ty.windows(2).any(|w| w[0] > w[1]) {
        return Err(CoreError::InvalidParameter("scroll type must be sorted".into()));
    }
    if ty[ty.len() - 1] == 0 || (ty.len() >= 2 && ty[ty.len() - 2] == 0) {
        return Err(CoreError::InvalidParameter(
            "the two largest scroll entries must be positive".into(),
        ));
    }
    Ok(())
}

fn scroll_param<F: Field>(field: &F, ty: &[u32]) -> Result<ScrollParam<F>> {
    validate_scroll_type(ty)?;
    let nv = ty.len() + 2;
    let mut maps = Vec::new();
    for (i, &a) in ty.iter().enumerate() {
        for j in 0..=a {
            let mut e = vec![0u32; nv];
            e[0] = a - j;
            e[1] = j;
            e[2 + i] = 1;
            maps.push(MultiPoly::term(field, Monomial::new(e), field.one()));
        }
    }
    Ok(ScrollParam {
        scroll_type: ty.to_vec(),
        maps,
    })
}

fn type_string(ty: &[u32]) -> String {
    let parts: Vec<String> = ty.iter().map(|a| a.to_string()).collect();
    parts.join(",")
}

/// The rational normal scroll `S(a_1, ..., a_{n+1})`.
pub fn scroll<F: Field>(field: &F, ty: &[u32]) -> Result<VarietyRep<F>> {
    let p = scroll_param(field, ty)?;
    let deg: u32 = ty.iter().sum();
    let r = ty.len() - 1 + deg as usize;
    Ok(VarietyRep::from_parts(
        field,
        Tag::Scroll,
        r,
        ty.len(),
        deg as u64,
        Some(0),
        Representation::Scroll(p),
    )?
    .with_param("type", type_string(ty)))
}

/// Monomials `s^k t^j u^I` spanning forms of class `aH + bF`.
pub fn divisor_monomials(ty: &[u32], a: u32, b: i64) -> Vec<Monomial> {
    let len = ty.len();
    let mut out = Vec::new();
    for i in monomials_of_degree(len, a) {
        let w: i64 = i.exponents().iter().zip(ty).map(|(&e, &x)| (e * x) as i64).sum::<i64>() + b;
        if w < 0 {
            continue;
        }
        for j in 0..=w as u32 {
            let mut e = vec![w as u32 - j, j];
            e.extend_from_slice(i.exponents());
            out.push(Monomial::new(e));
        }
    }
    out
}

/// The divisor `{G = 0}` on a scroll for a given form `G` of class `aH + bF`.
pub fn scroll_divisor_with_form<F: Field>(
    field: &F,
    ty: &[u32],
    a: u32,
    b: i64,
    form: MultiPoly<F>,
) -> Result<VarietyRep<F>> {
    let sp = scroll_param(field, ty)?;
    let allowed = divisor_monomials(ty, a, b);
    if form.is_zero() || form.terms().any(|(m, _)| !allowed.contains(m)) {
        return Err(CoreError::InvalidParameter("form is not of the stated class".into()));
    }
    let d: i64 = ty.iter().map(|&x| x as i64).sum();
    let degree = a as i64 * d + b;
    if degree <= 0 {
        return Err(CoreError::IneffectiveClass);
    }
    let r = ty.len() - 1 + d as usize;
    Ok(VarietyRep::from_parts(
        field,
        Tag::ScrollDivisor,
        r,
        ty.len() - 1,
        degree as u64,
        None,
        Representation::Divisor(ScrollDivisor {
            scroll: sp,
            a,
            b,
            form,
        }),
    )?
    .with_param("type", type_string(ty))
    .with_param("a", a)
    .with_param("b", b))
}

/// A random divisor of class `aH + bF` on `S(type)`. For `a = 0` the form is
/// a product of `b` distinct fibers.
pub fn scroll_divisor<F: Field>(field: &F, ty: &[u32], a: u32, b: i64, seed: u64) -> Result<VarietyRep<F>> {
    validate_scroll_type(ty)?;
    if a == 0 && b < 1 {
        return Err(CoreError::InvalidParameter("a = 0 requires b >= 1".into()));
    }
    if a >= 2 && field.kind().prime().is_none() {
        return Err(CoreError::Unsupported(
            "divisors with a >= 2 are sampled over a prime field".into(),
        ));
    }
    let mut rng = seed::rng(seed, "scroll-divisor");
    let nv = ty.len() + 2;
    let form = if a == 0 {
        let mut ts: Vec<F::Elem> = Vec::new();
        while ts.len() < b as usize {
            let t = field.random(&mut rng);
            if !ts.contains(&t) {
                ts.push(t);
            }
        }
        ts.iter().fold(MultiPoly::one(field, nv), |acc, t| {
            let l = MultiPoly::var(field, nv, 1).sub(&MultiPoly::var(field, nv, 0).scale(t));
            acc.mul(&l)
        })
    } else {
        let monos = divisor_monomials(ty, a, b);
        if monos.is_empty() {
            return Err(CoreError::IneffectiveClass);
        }
        random_form(field, &monos, &mut rng)
    };
    Ok(scroll_divisor_with_form(field, ty, a, b, form)?.with_param("seed", seed))
}

/// Sample points of a random divisor of class `aH + bF`.
pub fn scroll_divisor_samples<F: Field>(
    field: &F,
    ty: &[u32],
    a: u32,
    b: i64,
    count: usize,
    seed: u64,
) -> Result<VarietyRep<F>> {
    let x = scroll_divisor(field, ty, a, b, seed)?;
    let mut rng = seed::rng(seed, "divisor-samples");
    let pts = crate::geometry::to_points(field, &x.sample_points(count, &mut rng)?);
    let mut out = VarietyRep::from_parts(
        field,
        Tag::ScrollDivisor,
        x.ambient_dim,
        x.dim,
        x.degree,
        None,
        Representation::Points(PointList {
            points: pts,
            complete: false,
        }),
    )?;
    out.params = x.params;
    Ok(out)
}

/// Basis of `L((c+2) O)` on `y^2 = x^3 + Ax + B`, ordered by pole order.
pub fn elliptic_basis<F: Field>(field: &F, c: usize) -> Vec<MultiPoly<F>> {
    let top = c as u32 + 2;
    let mut out: Vec<(u32, MultiPoly<F>)> = Vec::new();
    for j in 0..=1u32 {
        for i in 0.. {
            let order = 2 * i + 3 * j;
            if order > top {
                break;
            }
            out.push((order, MultiPoly::term(field, Monomial::new(vec![i, j]), field.one())));
        }
    }
    out.sort_by_key(|(o, _)| *o);
    out.into_iter().map(|(_, p)| p).collect()
}

/// The elliptic normal curve of degree `c+2` in `P^(c+1)`.
pub fn elliptic_normal_curve<F: Field>(field: &F, c: usize, a: &F::Elem, b: &F::Elem) -> Result<VarietyRep<F>> {
    if c < 2 {
        return Err(CoreError::InvalidParameter("elliptic normal curves need c >= 2".into()));
    }
    let f = field;
    let disc = f.add(
        &f.mul(&f.from_i64(4), &f.pow(a, 3)),
        &f.mul(&f.from_i64(27), &f.pow(b, 2)),
    );
    if f.is_zero(&disc) {
        return Err(CoreError::SingularCurve("4A^3 + 27B^2 = 0".into()));
    }
    let x = MultiPoly::var(f, 2, 0);
    let rhs = x
        .pow(3)
        .add(&x.scale(a))
        .add(&MultiPoly::constant(f, 2, b.clone()));
    let relation = Relation::new(1, 2, rhs)?;
    let basis = elliptic_basis(f, c);
    let mut inf = vec![f.zero(); basis.len()];
    *inf.last_mut().unwrap() = f.one();
    Ok(VarietyRep::from_parts(
        f,
        Tag::EllipticNormal,
        c + 1,
        1,
        c as u64 + 2,
        Some(1),
        Representation::Implicit(ImplicitCurve {
            relation,
            basis,
            infinity: Some(inf),
        }),
    )?
    .with_param("c", c)
    .with_param("A", f.format(a))
    .with_param("B", f.format(b)))
}

/// Random nonsingular Weierstrass coefficients.
pub fn random_weierstrass<F: Field, R: Rng + ?Sized>(f: &F, rng: &mut R) -> (F::Elem, F::Elem) {
    loop {
        let a = f.random(rng);
        let b = f.random(rng);
        let disc = f.add(
            &f.mul(&f.from_i64(4), &f.pow(&a, 3)),
            &f.mul(&f.from_i64(27), &f.pow(&b, 2)),
        );
        if !f.is_zero(&disc) {
            return (a, b);
        }
    }
}

/// Degree `c+3` elliptic curve in `P^(c+1)`: the elliptic normal curve of
/// degree `c+3` projected from a random point off it.
pub fn projected_elliptic<F: Field>(field: &F, c: usize, seed: u64) -> Result<VarietyRep<F>> {
    let mut rng = seed::rng(seed, "projected-elliptic");
    let (a, b) = random_weierstrass(field, &mut rng);
    let e = elliptic_normal_curve(field, c + 1, &a, &b)?;
    for _ in 0..MAX_RETRIES {
        let v: Vec<F::Elem> = (0..=e.ambient_dim).map(|_| field.random(&mut rng)).collect();
        let Ok(center) = ProjPoint::new(field, v) else { continue };
        match e.project(&center) {
            Ok(p) => return Ok(p.with_param("c", c).with_param("seed", seed)),
            Err(CoreError::CenterOnVariety) => continue,
            Err(err) => return Err(err),
        }
    }
    Err(CoreError::RetriesExhausted("projection center".into()))
}

/// Rational curve of degree `c+3` in `P^(c+1)` whose parameters
/// `t_1..t_4` map onto the line `x_2 = ... = x_{c+1} = 0`.
pub fn rational_curve_with_4secant<F: Field>(field: &F, c: usize, seed: u64) -> Result<VarietyRep<F>> {
    if c < 4 {
        return Err(CoreError::InvalidParameter("4-secant curves need c >= 4".into()));
    }
    let f = field;
    let mut rng = seed::rng(seed, "four-secant");
    for _ in 0..MAX_RETRIES {
        let mut ts: Vec<F::Elem> = Vec::new();
        while ts.len() < 4 {
            let t = f.random(&mut rng);
            if !ts.contains(&t) {
                ts.push(t);
            }
        }
        let s = MultiPoly::var(f, 2, 0);
        let t = MultiPoly::var(f, 2, 1);
        let q = ts
            .iter()
            .fold(MultiPoly::one(f, 2), |acc, ti| acc.mul(&t.sub(&s.scale(ti))));
        let d = c as u32 + 3;
        let mut maps = vec![random_binary_form(f, d, &mut rng), random_binary_form(f, d, &mut rng)];
        for _ in 2..=c + 1 {
            maps.push(q.mul(&random_binary_form(f, c as u32 - 1, &mut rng)));
        }
        let v = VarietyRep::from_parts(
            f,
            Tag::RationalWithMSecant,
            c + 1,
            1,
            d as u64,
            Some(0),
            Representation::Curve(RationalCurve { maps }),
        )?;
        let Representation::Curve(cv) = &v.rep else { unreachable!() };
        let base = dehomogenize(f, &cv.maps[0]).gcd(&dehomogenize(f, &cv.maps[1]));
        if base.degree() != Some(0) {
            continue;
        }
        let check = v.check_invariants(&mut rng)?;
        if !check.nondegenerate || v.map_degree(&mut rng)? != 1 {
            continue;
        }
        let params: Vec<String> = ts.iter().map(|x| f.format(x)).collect();
        return Ok(v
            .with_param("c", c)
            .with_param("seed", seed)
            .with_param("secant_params", params.join(",")));
    }
    Err(CoreError::RetriesExhausted("4-secant curve".into()))
}

/// The line `x_2 = ... = x_r = 0` in `P^r`.
pub fn coordinate_line<F: Field>(field: &F, r: usize) -> Result<VarietyRep<F>> {
    linear_space(
        field,
        vec![
            crate::geometry::coordinate_point(field, r, 0),
            crate::geometry::coordinate_point(field, r, 1),
        ],
    )
}

/// Linear span of independent points.
pub fn linear_space<F: Field>(field: &F, points: Vec<ProjPoint<F>>) -> Result<VarietyRep<F>> {
    let r = points
        .first()
        .ok_or_else(|| CoreError::InvalidParameter("no spanning points".into()))?
        .ambient_dim();
    let rows: Vec<Vec<F::Elem>> = points.iter().map(|p| p.coords().to_vec()).collect();
    let dim = span_dimension(field, &rows)?;
    if dim as usize + 1 != points.len() {
        return Err(CoreError::InvalidParameter("spanning points are dependent".into()));
    }
    VarietyRep::from_parts(field, Tag::LinearSpace, r, dim as usize, 1, Some(0), Representation::Linear(points))
}

/// Discriminant test: `disc_y F` is square-free of degree 12.
pub fn quartic_is_smooth<F: Field>(field: &F, rel: &Relation<F>) -> Result<bool> {
    let f = field;
    let nodes: Vec<F::Elem> = (0..14).map(|i| f.from_i64(i as i64 * 7 + 3)).collect();
    let mut values = Vec::new();
    for x in &nodes {
        let poly = rel
            .as_polynomial()
            .substitute(&[MultiPoly::constant(f, 1, x.clone()), MultiPoly::var(f, 1, 0)])?
            .to_univariate(0)?;
        values.push(resultant(f, &poly, &poly.derivative())?);
    }
    let disc = interpolate(f, &nodes[..13], &values[..13])?;
    if disc.eval(&nodes[13]) != values[13] {
        return Ok(false);
    }
    if disc.degree() != Some(12) {
        return Ok(false);
    }
    Ok(disc.gcd(&disc.derivative()).degree() == Some(0))
}

/// Sylvester resultant.
fn resultant<F: Field>(f: &F, p: &UniPoly<F>, q: &UniPoly<F>) -> Result<F::Elem> {
    let (Some(m), Some(n)) = (p.degree(), q.degree()) else {
        return Ok(f.zero());
    };
    let size = m + n;
    let mut mat = ExactMatrix::zeros(f, size, size);
    for i in 0..n {
        for (j, c) in p.coeffs().iter().rev().enumerate() {
            mat.set(i, i + j, c.clone());
        }
    }
    for i in 0..m {
        for (j, c) in q.coeffs().iter().rev().enumerate() {
            mat.set(n + i, i + j, c.clone());
        }
    }
    determinant(&mat)
}

/// A random smooth affine quartic `y^4 = R(x, y)`.
fn random_smooth_quartic<F: Field, R: Rng + ?Sized>(f: &F, rng: &mut R) -> Result<Relation<F>> {
    for _ in 0..MAX_RETRIES {
        let mut rhs = MultiPoly::zero(f, 2);
        for d in 0..=4u32 {
            for m in monomials_of_degree(2, d) {
                if m.exponents()[1] < 4 {
                    rhs = rhs.add(&MultiPoly::term(f, m, f.random(rng)));
                }
            }
        }
        let rel = Relation::new(1, 4, rhs)?;
        if quartic_is_smooth(f, &rel)? {
            return Ok(rel);
        }
    }
    Err(CoreError::RetriesExhausted("smooth quartic".into()))
}

/// A smooth plane quartic embedded in `P^5` by conics.
pub fn plane_quartic_embedding<F: Field>(field: &F, seed: u64) -> Result<VarietyRep<F>> {
    let mut rng = seed::rng(seed, "plane-quartic");
    let rel = random_smooth_quartic(field, &mut rng)?;
    let basis: Vec<MultiPoly<F>> = (0..=2u32)
        .rev()
        .flat_map(|d| monomials_of_degree(2, d))
        .map(|m| MultiPoly::term(field, m, field.one()))
        .collect();
    Ok(VarietyRep::from_parts(
        field,
        Tag::PlaneQuarticEmbedding,
        5,
        1,
        8,
        Some(3),
        Representation::Implicit(ImplicitCurve {
            relation: rel,
            basis,
            infinity: None,
        }),
    )?
    .with_param("c", 4)
    .with_param("seed", seed))
}

/// A linearly normal genus-3 curve of degree `c+4` in `P^(c+1)`: conics for
/// `c = 4`, cubics through `8 - c` points of the quartic for `5 <= c <= 7`.
pub fn genus_three_curve<F: Field>(field: &F, c: usize, seed: u64) -> Result<VarietyRep<F>> {
    if c == 4 {
        return plane_quartic_embedding(field, seed);
    }
    if !(5..=7).contains(&c) {
        return Err(CoreError::InvalidParameter("genus-3 witnesses need 4 <= c <= 7".into()));
    }
    if field.kind().prime().is_none() {
        return Err(CoreError::Unsupported("genus-3 curves are built over a prime field".into()));
    }
    let f = field;
    let mut rng = seed::rng(seed, "genus-three");
    let rel = random_smooth_quartic(f, &mut rng)?;
    let mut pts: Vec<[F::Elem; 2]> = Vec::new();
    let mut tries = 0;
    while pts.len() < 8 - c {
        tries += 1;
        if tries > 10_000 {
            return Err(CoreError::RetriesExhausted("points on the quartic".into()));
        }
        let x = f.random(&mut rng);
        let ys = fiber_roots(f, &rel, &x)?;
        if let Some(y) = ys.into_iter().next() {
            if !pts.iter().any(|p| p[0] == x) {
                pts.push([x, y]);
            }
        }
    }
    let cubics: Vec<Monomial> = (0..=3u32).rev().flat_map(|d| monomials_of_degree(2, d)).collect();
    let rows: Vec<Vec<F::Elem>> = pts
        .iter()
        .map(|p| cubics.iter().map(|m| m.eval(f, p)).collect())
        .collect();
    let ker = kernel_basis(&ExactMatrix::from_rows(f, cubics.len(), rows)?);
    if ker.len() != c + 2 {
        return Err(CoreError::Inconsistent("base points impose dependent conditions".into()));
    }
    let basis: Vec<MultiPoly<F>> = ker
        .iter()
        .map(|v| MultiPoly::from_terms(f, 2, cubics.iter().cloned().zip(v.iter().cloned())))
        .collect::<Result<_>>()?;
    Ok(VarietyRep::from_parts(
        f,
        Tag::PlaneQuarticEmbedding,
        c + 1,
        1,
        c as u64 + 4,
        Some(3),
        Representation::Implicit(ImplicitCurve {
            relation: rel,
            basis,
            infinity: None,
        }),
    )?
    .with_param("c", c)
    .with_param("seed", seed))
}

/// `m` distinct points of the rational normal curve in `P^c`.
pub fn point_config_on_rnc<F: Field>(field: &F, c: usize, m: usize, seed: u64) -> Result<VarietyRep<F>> {
    if m < c + 1 {
        return Err(CoreError::InvalidParameter("need m >= c+1 points".into()));
    }
    let f = field;
    let mut rng = seed::rng(seed, "rnc-points");
    let mut ts: Vec<F::Elem> = Vec::new();
    while ts.len() < m {
        let t = f.random(&mut rng);
        if !ts.contains(&t) {
            ts.push(t);
        }
    }
    let points = ts
        .iter()
        .map(|t| ProjPoint::new(f, (0..=c).map(|j| f.pow(t, j as u64)).collect()))
        .collect::<Result<Vec<_>>>()?;
    Ok(point_list(f, Tag::PointConfig, points, true)?
        .with_param("c", c)
        .with_param("m", m)
        .with_param("seed", seed))
}

pub fn point_list<F: Field>(field: &F, tag: Tag, points: Vec<ProjPoint<F>>, complete: bool) -> Result<VarietyRep<F>> {
    let r = points
        .first()
        .ok_or_else(|| CoreError::InvalidParameter("empty point list".into()))?
        .ambient_dim();
    let n = points.len() as u64;
    VarietyRep::from_parts(field, tag, r, 0, n, None, Representation::Points(PointList { points, complete }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals, DEFAULT_PRIME};

    fn fp() -> PrimeField {
        PrimeField::new(DEFAULT_PRIME).unwrap()
    }

    #[test]
    fn twisted_cubic_invariants() {
        let q = Rationals;
        let v = rational_normal_curve(&q, 3).unwrap();
        assert_eq!((v.ambient_dim(), v.codim(), v.degree()), (3, 2, 3));
        let mut rng = seed::rng(0, "t");
        let chk = v.check_invariants(&mut rng).unwrap();
        assert!(chk.nondegenerate);
        let f = fp();
        let w = rational_normal_curve(&f, 5).unwrap();
        let chk = w.check_invariants(&mut rng).unwrap();
        assert!(chk.nondegenerate && chk.degree_matches);
        assert_eq!(w.codim(), 4);
    }

    #[test]
    fn scroll_shapes() {
        let f = fp();
        let s = scroll(&f, &[1, 2]).unwrap();
        assert_eq!((s.ambient_dim(), s.dim(), s.degree()), (4, 2, 3));
        let seg = scroll(&f, &[1, 1, 1]).unwrap();
        assert_eq!(seg.ambient_dim(), 5);
        let mut rng = seed::rng(3, "scroll");
        for v in [&s, &seg] {
            let chk = v.check_invariants(&mut rng).unwrap();
            assert!(chk.nondegenerate && chk.degree_matches, "{chk:?}");
        }
        assert!(scroll(&f, &[2, 1]).is_err());
        assert!(scroll(&f, &[0, 0]).is_err());
    }

    #[test]
    fn divisor_classes() {
        let f = fp();
        assert!(matches!(
            scroll_divisor(&f, &[1, 2], 0, 0, 1),
            Err(CoreError::InvalidParameter(_))
        ));
        assert!(matches!(
            scroll_divisor(&f, &[1, 2], 1, -3, 1),
            Err(CoreError::IneffectiveClass)
        ));
        let x = scroll_divisor(&f, &[1, 2], 1, 1, 5).unwrap();
        assert_eq!(x.degree(), 4);
        let mut rng = seed::rng(5, "div");
        let chk = x.check_invariants(&mut rng).unwrap();
        assert!(chk.nondegenerate && chk.degree_matches, "{chk:?}");
        for p in x.sample_points(10, &mut rng).unwrap() {
            assert!(x.contains_point(&p).unwrap());
        }
        let fib = scroll_divisor(&f, &[1, 2], 0, 2, 5).unwrap();
        assert_eq!(fib.sample_points(6, &mut rng).unwrap().len(), 6);
    }

    #[test]
    fn elliptic_points_satisfy_relation() {
        let f = fp();
        let e = elliptic_normal_curve(&f, 3, &f.from_i64(-1), &f.from_i64(0)).unwrap();
        assert_eq!((e.ambient_dim(), e.degree()), (4, 5));
        let Representation::Implicit(c) = e.representation() else { panic!() };
        assert_eq!(c.basis.len(), 5);
        let mut rng = seed::rng(1, "ell");
        for p in e.sample_points(8, &mut rng).unwrap() {
            assert!(e.contains_point(&p).unwrap());
        }
        let chk = e.check_invariants(&mut rng).unwrap();
        assert!(chk.nondegenerate && chk.degree_matches, "{chk:?}");
        assert!(elliptic_normal_curve(&f, 3, &f.zero(), &f.zero()).is_err());
        assert!(e.contains_point(c.infinity.as_ref().unwrap()).unwrap());
    }

    #[test]
    fn four_secant_points_on_line() {
        let f = fp();
        let v = rational_curve_with_4secant(&f, 4, 11).unwrap();
        let Representation::Curve(c) = v.representation() else { panic!() };
        for t in v.params()["secant_params"].split(',') {
            let img = eval_all(&c.maps, &[f.one(), f.parse(t).unwrap()]).unwrap();
            assert!(img[2..].iter().all(|x| *x == 0));
        }
        let mut rng = seed::rng(2, "x");
        assert!(v.check_invariants(&mut rng).unwrap().degree_matches);
    }

    #[test]
    fn genus_three_degrees() {
        let f = fp();
        let mut rng = seed::rng(9, "g3");
        for c in [4, 5] {
            let v = genus_three_curve(&f, c, 21).unwrap();
            let chk = v.check_invariants(&mut rng).unwrap();
            assert!(chk.nondegenerate && chk.degree_matches, "c={c} {chk:?}");
        }
    }

    #[test]
    fn projected_elliptic_degree() {
        let f = fp();
        let v = projected_elliptic(&f, 4, 3).unwrap();
        assert_eq!((v.ambient_dim(), v.degree(), v.tag()), (5, 7, Tag::ProjectedElliptic));
        let mut rng = seed::rng(4, "pe");
        let chk = v.check_invariants(&mut rng).unwrap();
        assert!(chk.nondegenerate && chk.degree_matches, "{chk:?}");
    }
}
