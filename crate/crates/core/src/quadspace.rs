//! Quadrics through a variety: interpolation on samples, exact certification,
//! and base-locus probes.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand::Rng;

use crate::error::{CoreError, Result};
use crate::field::{Field, FieldKind};
use crate::geometry::ProjPoint;
use crate::matrix::{kernel_basis, rank, rref, ExactMatrix};
use crate::poly::{monomials_of_degree, MultiPoly};
use crate::seed;
use crate::varieties::{Representation, Tag, VarietyRep};

/// Ordered from weakest to strongest.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Certification {
    SampledOnly,
    MultiPrimeAgreed,
    SymbolicCertified,
}

impl Certification {
    pub fn name(&self) -> &'static str {
        match self {
            Certification::SampledOnly => "SampledOnly",
            Certification::MultiPrimeAgreed => "MultiPrimeAgreed",
            Certification::SymbolicCertified => "SymbolicCertified",
        }
    }

    pub fn from_name(s: &str) -> Result<Self> {
        [
            Certification::SampledOnly,
            Certification::MultiPrimeAgreed,
            Certification::SymbolicCertified,
        ]
        .into_iter()
        .find(|c| c.name() == s)
        .ok_or_else(|| CoreError::Parse(format!("unknown certification `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Provenance {
    pub field: FieldKind,
    pub seed: u64,
    pub conditions: usize,
    pub rounds: usize,
    /// Primes whose independent runs agreed with this one.
    pub agreeing_primes: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuadricBasis<F: Field> {
    pub ambient_dim: usize,
    pub quadrics: Vec<MultiPoly<F>>,
    pub a2: usize,
    pub certification: Certification,
    pub provenance: Provenance,
}

impl<F: Field> QuadricBasis<F> {
    /// Coefficient matrix in [`monomials_of_degree`] order.
    pub fn coefficient_matrix(&self, field: &F) -> ExactMatrix<F> {
        let monos = monomials_of_degree(self.ambient_dim + 1, 2);
        let rows = self
            .quadrics
            .iter()
            .map(|q| monos.iter().map(|m| q.coeff(m)).collect())
            .collect();
        ExactMatrix::from_rows(field, monos.len(), rows).expect("row length")
    }

    /// RREF of the coefficient matrix, a canonical form of the span.
    pub fn row_space(&self, field: &F) -> ExactMatrix<F> {
        rref(&self.coefficient_matrix(field)).matrix
    }

    /// Marks a sampled basis as confirmed by an independent run over `prime`.
    pub fn record_agreement(&mut self, prime: u64) {
        self.provenance.agreeing_primes.push(prime);
        if self.certification == Certification::SampledOnly {
            self.certification = Certification::MultiPrimeAgreed;
        }
    }
}

/// Sample-count schedule for the interpolation loop.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SamplingPolicy {
    pub initial_extra: usize,
    pub increment: usize,
    pub max_rounds: usize,
}

impl Default for SamplingPolicy {
    fn default() -> Self {
        SamplingPolicy {
            initial_extra: 10,
            increment: 25,
            max_rounds: 12,
        }
    }
}

/// Rows are points, columns the monomials of the given degree.
pub fn evaluation_matrix<F: Field>(field: &F, points: &[ProjPoint<F>], degree: u32) -> Result<ExactMatrix<F>> {
    let Some(first) = points.first() else {
        return Ok(ExactMatrix::zeros(field, 0, 0));
    };
    let n = first.coords().len();
    let monos = monomials_of_degree(n, degree);
    let rows = points
        .iter()
        .map(|p| {
            if p.coords().len() != n {
                return Err(CoreError::DimensionMismatch {
                    expected: n,
                    found: p.coords().len(),
                });
            }
            Ok(monos.iter().map(|m| m.eval(field, p.coords())).collect())
        })
        .collect::<Result<Vec<_>>>()?;
    ExactMatrix::from_rows(field, monos.len(), rows)
}

pub fn quadric_basis<F: Field>(v: &VarietyRep<F>, policy: &SamplingPolicy, seed: u64) -> Result<QuadricBasis<F>> {
    quadric_basis_union(&[v], policy, seed)
}

fn is_complete(v: &VarietyRep<impl Field>) -> bool {
    matches!(v.representation(), Representation::Points(p) if p.complete)
}

/// Certified basis of the quadrics through the union of the given varieties.
pub fn quadric_basis_union<F: Field>(
    parts: &[&VarietyRep<F>],
    policy: &SamplingPolicy,
    seed: u64,
) -> Result<QuadricBasis<F>> {
    let first = parts
        .first()
        .ok_or_else(|| CoreError::InvalidParameter("no varieties given".into()))?;
    let field = first.field().clone();
    let r = first.ambient_dim();
    if let Some(p) = parts.iter().find(|p| p.ambient_dim() != r) {
        return Err(CoreError::DimensionMismatch {
            expected: r,
            found: p.ambient_dim(),
        });
    }
    let monos = monomials_of_degree(r + 1, 2);
    let ncols = monos.len();
    let mut rng = seed::rng(seed, "quadric-basis");
    let mut m = ExactMatrix::zeros(&field, 0, ncols);
    let add = |m: &mut ExactMatrix<F>, count: usize, rng: &mut rand_chacha::ChaCha8Rng| -> Result<()> {
        for p in parts {
            for row in p.conditions(2, count, rng)? {
                m.push_row(row)?;
            }
        }
        Ok(())
    };
    let all_complete = parts.iter().all(|p| is_complete(p));
    add(&mut m, ncols + policy.initial_extra, &mut rng)?;
    let mut prev: Option<usize> = all_complete.then(|| ncols - rank(&m));
    let mut last_spurious = None;
    for round in 1..=policy.max_rounds {
        let k = ncols - rank(&m);
        if prev == Some(k) {
            let vectors = kernel_basis(&m);
            let quadrics: Vec<MultiPoly<F>> = vectors
                .iter()
                .map(|v| MultiPoly::from_terms(&field, r + 1, monos.iter().cloned().zip(v.iter().cloned())))
                .collect::<Result<_>>()?;
            let mut level = Certification::SymbolicCertified;
            let mut spurious = None;
            'outer: for (q, v) in quadrics.iter().zip(&vectors) {
                for p in parts {
                    match p.certify(q)? {
                        Some(true) => {}
                        Some(false) => {
                            spurious = Some(v.clone());
                            break 'outer;
                        }
                        None => level = Certification::SampledOnly,
                    }
                }
            }
            match spurious {
                None => {
                    return Ok(QuadricBasis {
                        ambient_dim: r,
                        a2: quadrics.len(),
                        quadrics,
                        certification: level,
                        provenance: Provenance {
                            field: field.kind(),
                            seed,
                            conditions: m.rows(),
                            rounds: round,
                            agreeing_primes: Vec::new(),
                        },
                    })
                }
                Some(v) => {
                    if all_complete {
                        return Err(CoreError::Inconsistent(
                            "kernel vector fails on a complete point list".into(),
                        ));
                    }
                    last_spurious = Some(v);
                    prev = None;
                }
            }
        } else {
            prev = Some(k);
        }
        if !all_complete {
            add(&mut m, policy.increment, &mut rng)?;
        }
    }
    match last_spurious {
        Some(v) => Err(CoreError::SpuriousQuadric {
            vector: v.iter().map(|x| field.format(x)).collect(),
        }),
        None => Err(CoreError::RetriesExhausted("kernel dimension did not stabilize".into())),
    }
}

/// Every quadric of the basis vanishes on the candidate, checked exactly.
pub fn contains_in_baselocus<F: Field>(basis: &QuadricBasis<F>, candidate: &VarietyRep<F>) -> Result<bool> {
    for q in &basis.quadrics {
        match candidate.certify(q)? {
            Some(true) => {}
            Some(false) => return Ok(false),
            None => {
                return Err(CoreError::Unsupported(
                    "containment needs a parametrized or implicit candidate".into(),
                ))
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq)]
pub struct CertifiedComponent {
    pub tag: Tag,
    pub dim: usize,
    pub description: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BaseLocusReport<F: Field> {
    pub certified_components: Vec<CertifiedComponent>,
    /// Probe points off the known components, each with a quadric index
    /// that does not vanish there.
    pub excluded: Vec<(ProjPoint<F>, usize)>,
    /// Probe points lying on a known component.
    pub discarded: usize,
    /// Probe points off the known components where every quadric vanishes.
    pub counterexamples: Vec<ProjPoint<F>>,
}

impl<F: Field> BaseLocusReport<F> {
    pub fn new() -> Self {
        BaseLocusReport {
            certified_components: Vec::new(),
            excluded: Vec::new(),
            discarded: 0,
            counterexamples: Vec::new(),
        }
    }

    /// Records a candidate if the basis is certified to vanish on it.
    pub fn certify_component(
        &mut self,
        basis: &QuadricBasis<F>,
        candidate: &VarietyRep<F>,
        description: &str,
    ) -> Result<bool> {
        let inside = contains_in_baselocus(basis, candidate)?;
        if inside {
            self.certified_components.push(CertifiedComponent {
                tag: candidate.tag(),
                dim: candidate.dim(),
                description: description.into(),
            });
        }
        Ok(inside)
    }

    /// Every certified component has dimension at most `n + 1`.
    pub fn dimension_bound_holds(&self, n: usize) -> bool {
        self.certified_components.iter().all(|c| c.dim <= n + 1)
    }
}

impl<F: Field> Default for BaseLocusReport<F> {
    fn default() -> Self {
        Self::new()
    }
}

/// Sorts probe points into discarded (on a known component), excluded (some
/// quadric is nonzero) and counterexample candidates.
pub fn exclusion_witnesses<F: Field>(
    basis: &QuadricBasis<F>,
    probes: &[Vec<F::Elem>],
    known: &[&VarietyRep<F>],
    report: &mut BaseLocusReport<F>,
) -> Result<()> {
    'probe: for p in probes {
        let Ok(pt) = ProjPoint::new(&basis_field(known, basis)?, p.clone()) else {
            continue;
        };
        for k in known {
            if k.contains_point(p)? {
                report.discarded += 1;
                continue 'probe;
            }
        }
        let field = basis_field(known, basis)?;
        let mut witness = None;
        for (i, q) in basis.quadrics.iter().enumerate() {
            if !field.is_zero(&q.evaluate(p)?) {
                witness = Some(i);
                break;
            }
        }
        match witness {
            Some(i) => report.excluded.push((pt, i)),
            None => report.counterexamples.push(pt),
        }
    }
    Ok(())
}

fn basis_field<F: Field>(known: &[&VarietyRep<F>], basis: &QuadricBasis<F>) -> Result<F> {
    if let Some(k) = known.first() {
        return Ok(k.field().clone());
    }
    basis
        .quadrics
        .first()
        .map(|q| q.field().clone())
        .ok_or_else(|| CoreError::InvalidParameter("cannot infer the field".into()))
}

/// Random points of `P^r`.
pub fn ambient_probes<F: Field, R: Rng + ?Sized>(field: &F, r: usize, count: usize, rng: &mut R) -> Vec<Vec<F::Elem>> {
    (0..count)
        .map(|_| (0..=r).map(|_| field.random(rng)).collect())
        .collect()
}

/// Random points on secant lines of the variety.
pub fn secant_probes<F: Field, R: Rng + ?Sized>(
    v: &VarietyRep<F>,
    count: usize,
    rng: &mut R,
) -> Result<Vec<Vec<F::Elem>>> {
    let f = v.field();
    let xs = v.sample_points(count, rng)?;
    let ys = v.sample_points(count, rng)?;
    Ok(xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| {
            let l = f.random_nonzero(rng);
            let m = f.random_nonzero(rng);
            x.iter().zip(y).map(|(a, b)| f.add(&f.mul(&l, a), &f.mul(&m, b))).collect()
        })
        .collect())
}

/// Kernel dimension of the evaluation matrix of a finite point set.
pub fn a2_of_points<F: Field>(field: &F, points: &[ProjPoint<F>]) -> Result<usize> {
    let m = evaluation_matrix(field, points, 2)?;
    Ok(m.cols() - rank(&m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals, DEFAULT_PRIME};
    use crate::varieties::{point_config_on_rnc, rational_normal_curve, scroll};

    #[test]
    fn evaluation_matrix_shapes() {
        let q = Rationals;
        let p = ProjPoint::from_i64(&q, &[1, 2, 3]).unwrap();
        let m = evaluation_matrix(&q, &[p.clone()], 2).unwrap();
        assert_eq!((m.rows(), m.cols()), (1, 6));
        let twice = evaluation_matrix(&q, &[p.clone(), p], 2).unwrap();
        assert_eq!(rank(&twice), 1);
    }

    #[test]
    fn twisted_cubic_basis() {
        let q = Rationals;
        let v = rational_normal_curve(&q, 3).unwrap();
        let b = quadric_basis(&v, &SamplingPolicy::default(), 0).unwrap();
        assert_eq!(b.a2, 3);
        assert_eq!(b.certification, Certification::SymbolicCertified);
        let other = quadric_basis(&v, &SamplingPolicy::default(), 99).unwrap();
        assert_eq!(b.row_space(&q), other.row_space(&q));
    }

    #[test]
    fn surface_scroll_and_points() {
        let f = PrimeField::new(DEFAULT_PRIME).unwrap();
        let s = scroll(&f, &[1, 2]).unwrap();
        assert_eq!(quadric_basis(&s, &SamplingPolicy::default(), 1).unwrap().a2, 3);
        let g = point_config_on_rnc(&f, 4, 9, 2).unwrap();
        let b = quadric_basis(&g, &SamplingPolicy::default(), 1).unwrap();
        assert_eq!(b.a2, 6);
        assert_eq!(b.certification, Certification::SymbolicCertified);
    }
}
