//! JSON documents for varieties, quadric bases and reports, plus CSV and
//! plain-text report output.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use quadcert_core::field::{Field, FieldKind, PrimeField, Rationals};
use quadcert_core::geometry::ProjPoint;
use quadcert_core::poly::{format_vector, Monomial, MultiPoly, Relation};
use quadcert_core::quadspace::{Certification, Provenance, QuadricBasis};
use quadcert_core::varieties::{
    scroll, ImplicitCurve, PointList, RationalCurve, Representation, ScrollDivisor, ScrollParam, Tag,
    VarietyRep,
};
use quadcert_core::verifier::VerificationReport;
use quadcert_core::CoreError;
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("{0}")]
    Core(#[from] CoreError),
    #[error("invalid document: {0}")]
    Invalid(String),
}

pub type FormatResult<T> = Result<T, FormatError>;

/// A variety over whichever field its document names.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyVariety {
    Rational(VarietyRep<Rationals>),
    Prime(VarietyRep<PrimeField>),
}

impl AnyVariety {
    pub fn field_kind(&self) -> FieldKind {
        match self {
            AnyVariety::Rational(_) => FieldKind::Rationals,
            AnyVariety::Prime(v) => FieldKind::Prime(v.field().modulus()),
        }
    }

    pub fn to_doc(&self) -> VarietyDoc {
        match self {
            AnyVariety::Rational(v) => variety_doc(v),
            AnyVariety::Prime(v) => variety_doc(v),
        }
    }

    /// `(n, c, d, g)` with `g` the sectional genus when known.
    pub fn invariants(&self) -> (usize, usize, u64, Option<u32>) {
        match self {
            AnyVariety::Rational(v) => (v.dim(), v.codim(), v.degree(), v.sectional_genus()),
            AnyVariety::Prime(v) => (v.dim(), v.codim(), v.degree(), v.sectional_genus()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct VarietyDoc {
    pub tag: String,
    pub field: String,
    pub ambient_dim: usize,
    pub dim: usize,
    pub codim: usize,
    pub degree: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sectional_genus: Option<u32>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parametrization: Option<ParamDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relation: Option<RelationDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<PointsDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum ParamDoc {
    /// Binary forms in `x0, x1`.
    Curve { maps: Vec<String> },
    /// Forms in `x0, x1` (the base) and `x2..` (the fiber coordinates).
    Scroll {
        #[serde(rename = "type")]
        scroll_type: Vec<u32>,
        maps: Vec<String>,
    },
    Divisor {
        #[serde(rename = "type")]
        scroll_type: Vec<u32>,
        a: u32,
        b: i64,
        form: String,
    },
    /// Linear span of the listed points.
    Linear { span: Vec<Vec<String>> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct RelationDoc {
    pub lead_var: usize,
    pub lead_exp: u32,
    pub replacement: String,
    pub basis: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub infinity: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointsDoc {
    pub complete: bool,
    pub coords: Vec<Vec<String>>,
}

fn polys<F: Field>(ps: &[MultiPoly<F>]) -> Vec<String> {
    ps.iter().map(|p| p.to_string()).collect()
}

pub fn variety_doc<F: Field>(v: &VarietyRep<F>) -> VarietyDoc {
    let f = v.field();
    let mut doc = VarietyDoc {
        tag: v.tag().name().into(),
        field: f.kind().to_string(),
        ambient_dim: v.ambient_dim(),
        dim: v.dim(),
        codim: v.codim(),
        degree: v.degree(),
        sectional_genus: v.sectional_genus(),
        params: v.params().clone(),
        parametrization: None,
        relation: None,
        points: None,
    };
    match v.representation() {
        Representation::Curve(c) => doc.parametrization = Some(ParamDoc::Curve { maps: polys(&c.maps) }),
        Representation::Scroll(s) => {
            doc.parametrization = Some(ParamDoc::Scroll {
                scroll_type: s.scroll_type.clone(),
                maps: polys(&s.maps),
            })
        }
        Representation::Divisor(d) => {
            doc.parametrization = Some(ParamDoc::Divisor {
                scroll_type: d.scroll.scroll_type.clone(),
                a: d.a,
                b: d.b,
                form: d.form.to_string(),
            })
        }
        Representation::Implicit(c) => {
            doc.relation = Some(RelationDoc {
                lead_var: c.relation.lead_var(),
                lead_exp: c.relation.lead_exp(),
                replacement: c.relation.replacement().to_string(),
                basis: polys(&c.basis),
                infinity: c.infinity.as_ref().map(|p| format_vector(f, p)),
            })
        }
        Representation::Points(p) => {
            doc.points = Some(PointsDoc {
                complete: p.complete,
                coords: p.points.iter().map(|q| format_vector(f, q.coords())).collect(),
            })
        }
        Representation::Linear(ps) => {
            doc.parametrization = Some(ParamDoc::Linear {
                span: ps.iter().map(|q| format_vector(f, q.coords())).collect(),
            })
        }
    }
    doc
}

fn parse_polys<F: Field>(f: &F, nvars: usize, ss: &[String]) -> FormatResult<Vec<MultiPoly<F>>> {
    Ok(ss
        .iter()
        .map(|s| MultiPoly::parse(f, nvars, s))
        .collect::<Result<Vec<_>, _>>()?)
}

fn parse_vector<F: Field>(f: &F, v: &[String]) -> FormatResult<Vec<F::Elem>> {
    Ok(v.iter().map(|s| f.parse(s)).collect::<Result<Vec<_>, _>>()?)
}

fn parse_points<F: Field>(f: &F, vs: &[Vec<String>]) -> FormatResult<Vec<ProjPoint<F>>> {
    vs.iter()
        .map(|v| Ok(ProjPoint::new(f, parse_vector(f, v)?)?))
        .collect()
}

/// Rebuilds a variety over `f` from its document.
pub fn variety_from_doc<F: Field>(f: &F, doc: &VarietyDoc) -> FormatResult<VarietyRep<F>> {
    let tag = Tag::from_name(&doc.tag)?;
    let rep = match (&doc.parametrization, &doc.relation, &doc.points) {
        (Some(p), None, None) => match p {
            ParamDoc::Curve { maps } => Representation::Curve(RationalCurve {
                maps: parse_polys(f, 2, maps)?,
            }),
            ParamDoc::Scroll { scroll_type, maps } => Representation::Scroll(ScrollParam {
                scroll_type: scroll_type.clone(),
                maps: parse_polys(f, scroll_type.len() + 2, maps)?,
            }),
            ParamDoc::Divisor { scroll_type, a, b, form } => {
                let Representation::Scroll(s) = scroll(f, scroll_type)?.representation().clone() else {
                    return Err(FormatError::Invalid("scroll constructor changed shape".into()));
                };
                Representation::Divisor(ScrollDivisor {
                    form: MultiPoly::parse(f, scroll_type.len() + 2, form)?,
                    scroll: s,
                    a: *a,
                    b: *b,
                })
            }
            ParamDoc::Linear { span } => Representation::Linear(parse_points(f, span)?),
        },
        (None, Some(r), None) => {
            let replacement = MultiPoly::parse(f, 2, &r.replacement)?;
            Representation::Implicit(ImplicitCurve {
                relation: Relation::new(r.lead_var, r.lead_exp, replacement)?,
                basis: parse_polys(f, 2, &r.basis)?,
                infinity: r.infinity.as_ref().map(|v| parse_vector(f, v)).transpose()?,
            })
        }
        (None, None, Some(p)) => Representation::Points(PointList {
            points: parse_points(f, &p.coords)?,
            complete: p.complete,
        }),
        _ => {
            return Err(FormatError::Invalid(
                "exactly one of parametrization, relation, points is required".into(),
            ))
        }
    };
    let mut v = VarietyRep::from_parts(f, tag, doc.ambient_dim, doc.dim, doc.degree, doc.sectional_genus, rep)?;
    if v.codim() != doc.codim {
        return Err(FormatError::Invalid(format!(
            "codim {} does not match ambientDim - dim = {}",
            doc.codim,
            v.codim()
        )));
    }
    for (k, val) in &doc.params {
        v = v.with_param(k, val);
    }
    Ok(v)
}

pub fn parse_field_kind(s: &str) -> FormatResult<FieldKind> {
    s.parse::<FieldKind>().map_err(FormatError::Core)
}

pub fn any_variety_from_doc(doc: &VarietyDoc) -> FormatResult<AnyVariety> {
    Ok(match parse_field_kind(&doc.field)? {
        FieldKind::Rationals => AnyVariety::Rational(variety_from_doc(&Rationals, doc)?),
        FieldKind::Prime(p) => AnyVariety::Prime(variety_from_doc(&PrimeField::with_override(p)?, doc)?),
    })
}

pub fn variety_to_json(v: &AnyVariety) -> FormatResult<String> {
    Ok(serde_json::to_string_pretty(&v.to_doc())? + "\n")
}

pub fn variety_from_json(s: &str) -> FormatResult<AnyVariety> {
    any_variety_from_doc(&serde_json::from_str(s)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDoc {
    pub coeff: String,
    pub exponents: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct ProvenanceDoc {
    pub field: String,
    pub seed: u64,
    pub conditions: usize,
    pub rounds: usize,
    pub agreeing_primes: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct BasisDoc {
    pub ambient_dim: usize,
    pub a2: usize,
    pub certification: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quadrics: Option<Vec<Vec<TermDoc>>>,
    pub provenance: ProvenanceDoc,
}

/// The basis document; quadrics are included only when `with_quadrics`.
pub fn basis_doc<F: Field>(b: &QuadricBasis<F>, with_quadrics: bool) -> BasisDoc {
    let quadrics = with_quadrics.then(|| {
        b.quadrics
            .iter()
            .map(|q| {
                q.terms()
                    .map(|(m, c)| TermDoc {
                        coeff: q.field().format(c),
                        exponents: m.exponents().to_vec(),
                    })
                    .collect()
            })
            .collect()
    });
    BasisDoc {
        ambient_dim: b.ambient_dim,
        a2: b.a2,
        certification: b.certification.name().into(),
        quadrics,
        provenance: ProvenanceDoc {
            field: b.provenance.field.to_string(),
            seed: b.provenance.seed,
            conditions: b.provenance.conditions,
            rounds: b.provenance.rounds,
            agreeing_primes: b.provenance.agreeing_primes.clone(),
        },
    }
}

pub fn basis_from_doc<F: Field>(f: &F, doc: &BasisDoc) -> FormatResult<QuadricBasis<F>> {
    let nvars = doc.ambient_dim + 1;
    let quadrics = doc
        .quadrics
        .as_ref()
        .ok_or_else(|| FormatError::Invalid("basis document has no quadrics".into()))?
        .iter()
        .map(|terms| {
            let mut q = MultiPoly::zero(f, nvars);
            for t in terms {
                if t.exponents.len() != nvars || t.exponents.iter().sum::<u32>() != 2 {
                    return Err(FormatError::Invalid("quadric term of wrong shape".into()));
                }
                q = q.add(&MultiPoly::term(f, Monomial::new(t.exponents.clone()), f.parse(&t.coeff)?));
            }
            Ok(q)
        })
        .collect::<FormatResult<Vec<_>>>()?;
    if quadrics.len() != doc.a2 {
        return Err(FormatError::Invalid("a2 differs from the number of quadrics".into()));
    }
    Ok(QuadricBasis {
        ambient_dim: doc.ambient_dim,
        quadrics,
        a2: doc.a2,
        certification: Certification::from_name(&doc.certification)?,
        provenance: Provenance {
            field: parse_field_kind(&doc.provenance.field)?,
            seed: doc.provenance.seed,
            conditions: doc.provenance.conditions,
            rounds: doc.provenance.rounds,
            agreeing_primes: doc.provenance.agreeing_primes.clone(),
        },
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct A2Doc {
    pub label: String,
    pub a2: usize,
    pub certification: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ScenarioDoc {
    pub name: String,
    pub params: BTreeMap<String, String>,
    pub claim: String,
    pub expected: String,
    pub observed: String,
    pub status: String,
    pub a2: Vec<A2Doc>,
    pub notes: Vec<String>,
    pub seed: u64,
    pub prime: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct EnvironmentDoc {
    pub primes: Vec<u64>,
    pub seeds: Vec<u64>,
    pub version: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SummaryDoc {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub inconclusive: usize,
    pub disagreements: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ReportDoc {
    pub suite: String,
    pub environment: EnvironmentDoc,
    pub summary: SummaryDoc,
    pub scenarios: Vec<ScenarioDoc>,
}

pub fn report_doc(r: &VerificationReport) -> ReportDoc {
    ReportDoc {
        suite: r.suite.clone(),
        environment: EnvironmentDoc {
            primes: r.environment.primes.to_vec(),
            seeds: r.environment.seeds.to_vec(),
            version: r.environment.version.clone(),
        },
        summary: SummaryDoc {
            total: r.scenarios.len(),
            pass: r.summary.pass,
            fail: r.summary.fail,
            inconclusive: r.summary.inconclusive,
            disagreements: r.summary.disagreements,
        },
        scenarios: r
            .scenarios
            .iter()
            .map(|s| ScenarioDoc {
                name: s.name.clone(),
                params: s.params.iter().cloned().collect(),
                claim: s.claim.clone(),
                expected: s.expected.clone(),
                observed: s.observed.clone(),
                status: s.status.name().into(),
                a2: s
                    .a2
                    .iter()
                    .map(|a| A2Doc {
                        label: a.label.clone(),
                        a2: a.a2,
                        certification: a.certification.name().into(),
                    })
                    .collect(),
                notes: s.notes.clone(),
                seed: s.seed,
                prime: s.prime,
            })
            .collect(),
    }
}

pub fn report_json(r: &VerificationReport) -> FormatResult<String> {
    Ok(serde_json::to_string_pretty(&report_doc(r))? + "\n")
}

pub const CSV_HEADER: [&str; 7] = ["scenario", "param_string", "expected", "observed", "status", "seed", "prime"];

pub fn report_csv(r: &VerificationReport) -> FormatResult<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER)?;
    for s in &r.scenarios {
        w.write_record([
            s.name.as_str(),
            &s.param_string(),
            &s.expected,
            &s.observed,
            s.status.name(),
            &s.seed.to_string(),
            &s.prime.to_string(),
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| FormatError::Invalid(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| FormatError::Invalid(e.to_string()))
}

pub fn report_text(r: &VerificationReport) -> String {
    let mut out = String::new();
    for s in &r.scenarios {
        let _ = writeln!(out, "{:<12} {}  expected {}  observed {}", s.status.name(), s.name, s.expected, s.observed);
        for n in &s.notes {
            let _ = writeln!(out, "             {n}");
        }
    }
    let _ = writeln!(
        out,
        "{}: {} pass, {} fail, {} inconclusive, {} cross-check disagreements (primes {} and {})",
        r.suite,
        r.summary.pass,
        r.summary.fail,
        r.summary.inconclusive,
        r.summary.disagreements,
        r.environment.primes[0],
        r.environment.primes[1]
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use quadcert_core::field::DEFAULT_PRIME;
    use quadcert_core::varieties::{rational_normal_curve, scroll_divisor};

    #[test]
    fn variety_round_trip() {
        let f = PrimeField::new(DEFAULT_PRIME).unwrap();
        let v = AnyVariety::Prime(scroll_divisor(&f, &[1, 2], 2, -2, 3).unwrap());
        let back = variety_from_json(&variety_to_json(&v).unwrap()).unwrap();
        assert_eq!(back, v);
        let w = AnyVariety::Rational(rational_normal_curve(&Rationals, 3).unwrap());
        let s = variety_to_json(&w).unwrap();
        assert!(s.contains("\"tag\": \"RNC\""));
        assert_eq!(variety_from_json(&s).unwrap(), w);
    }

    #[test]
    fn rejects_two_representations() {
        let w = AnyVariety::Rational(rational_normal_curve(&Rationals, 3).unwrap());
        let mut doc = w.to_doc();
        doc.points = Some(PointsDoc {
            complete: true,
            coords: vec![],
        });
        assert!(any_variety_from_doc(&doc).is_err());
    }
}
