//! Named scenarios checking a2 values and base loci of witness varieties,
//! each run twice (two primes, two seeds) and compared.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{CoreError, Result};
use crate::field::{Field, PrimeField, CROSS_CHECK_PRIME, DEFAULT_PRIME};
use crate::geometry::to_points;
use crate::poly::binomial;
use crate::quadspace::{
    ambient_probes, exclusion_witnesses, quadric_basis, quadric_basis_union, secant_probes,
    BaseLocusReport, Certification, QuadricBasis, SamplingPolicy,
};
use crate::scrollcalc::{
    h0_class, is_effective, is_nondegenerate_class, predicted_a2, q_equals_scroll, scroll_a2,
    scroll_types, ScrollDivisorClass,
};
use crate::seed;
use crate::varieties::{
    coordinate_line, elliptic_normal_curve, genus_three_curve, point_config_on_rnc, point_list,
    projected_elliptic, random_weierstrass, rational_curve_with_4secant, rational_normal_curve,
    scroll, scroll_divisor, scroll_divisor_with_form, Tag, VarietyRep,
};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl Status {
    pub fn name(&self) -> &'static str {
        match self {
            Status::Pass => "Pass",
            Status::Fail => "Fail",
            Status::Inconclusive => "Inconclusive",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WitnessKind {
    FourSecant,
    ProjectedElliptic,
    GenusThree,
}

impl WitnessKind {
    fn name(&self) -> &'static str {
        match self {
            WitnessKind::FourSecant => "four-secant",
            WitnessKind::ProjectedElliptic => "projected-elliptic",
            WitnessKind::GenusThree => "genus-three",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BaseLocusCase {
    /// `a = 2`, `-2 a_{n+1} <= b <= 0`: the quadrics cut out exactly X.
    QuadricsCutOutX,
    /// `a = 1`, `1 <= b <= a_1`: the quadrics cut out exactly X.
    LinearLowB,
    /// `a = 1`, `a_1 + 1 <= b <= a_{n+1}`: base locus inside X and the sub-scroll X0.
    LinearWithSubscroll,
}

/// A scenario with its parameters; running it needs a [`Context`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ScenarioSpec {
    CastelnuovoCurve { c: usize },
    CastelnuovoScroll { scroll_type: Vec<u32> },
    Fano { c: usize },
    CurveWitness { c: usize, kind: WitnessKind },
    TwoNormality { c: usize, m: usize },
    DivisorDifference { scroll_type: Vec<u32>, a: i64, b: i64 },
    QEquivalenceSweep { max_len: usize, max_entry: u32, max_a: i64, max_b: i64 },
    MaxregBaselocus { c: usize },
    UniqueContainer,
    GammaOnCurve { c: usize, k: usize, size: Option<usize> },
    BaselocusDivisor { scroll_type: Vec<u32>, a: i64, b: i64, case: BaseLocusCase },
    FundamentalInequality(Construction),
}

/// A variety built by one of the constructors, for standalone checks.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Construction {
    Rnc { c: usize },
    Scroll { scroll_type: Vec<u32> },
    Elliptic { c: usize },
    Witness { c: usize, kind: WitnessKind },
    Points { c: usize, m: usize },
    Divisor { scroll_type: Vec<u32>, a: u32, b: i64 },
}

impl Construction {
    fn label(&self) -> String {
        match self {
            Construction::Rnc { c } => format!("rnc/c={c}"),
            Construction::Scroll { scroll_type } => format!("scroll/S({})", type_str(scroll_type)),
            Construction::Elliptic { c } => format!("elliptic/c={c}"),
            Construction::Witness { c, kind } => format!("{}/c={c}", kind.name()),
            Construction::Points { c, m } => format!("points/c={c}/m={m}"),
            Construction::Divisor { scroll_type, a, b } => {
                format!("divisor/S({})/a={a}/b={b}", type_str(scroll_type))
            }
        }
    }

    pub fn build(&self, f: &PrimeField, seed: u64) -> Result<VarietyRep<PrimeField>> {
        match self {
            Construction::Rnc { c } => rational_normal_curve(f, c + 1),
            Construction::Scroll { scroll_type } => scroll(f, scroll_type),
            Construction::Elliptic { c } => {
                let mut rng = seed::rng(seed, "weierstrass");
                let (a, b) = random_weierstrass(f, &mut rng);
                elliptic_normal_curve(f, *c, &a, &b)
            }
            Construction::Witness { c, kind } => match kind {
                WitnessKind::FourSecant => rational_curve_with_4secant(f, *c, seed),
                WitnessKind::ProjectedElliptic => projected_elliptic(f, *c, seed),
                WitnessKind::GenusThree => genus_three_curve(f, *c, seed),
            },
            Construction::Points { c, m } => point_config_on_rnc(f, *c, *m, seed),
            Construction::Divisor { scroll_type, a, b } => scroll_divisor(f, scroll_type, *a, *b, seed),
        }
    }
}

fn type_str(t: &[u32]) -> String {
    let v: Vec<String> = t.iter().map(|x| x.to_string()).collect();
    v.join(",")
}

impl ScenarioSpec {
    pub fn name(&self) -> String {
        match self {
            ScenarioSpec::CastelnuovoCurve { c } => format!("castelnuovo/rnc/c={c}"),
            ScenarioSpec::CastelnuovoScroll { scroll_type } => {
                format!("castelnuovo/scroll/S({})", type_str(scroll_type))
            }
            ScenarioSpec::Fano { c } => format!("fano/elliptic/c={c}"),
            ScenarioSpec::CurveWitness { c, kind } => format!("curve-witnesses/{}/c={c}", kind.name()),
            ScenarioSpec::TwoNormality { c, m } => format!("two-normality/c={c}/m={m}"),
            ScenarioSpec::DivisorDifference { scroll_type, a, b } => {
                format!("divisor-difference/S({})/a={a}/b={b}", type_str(scroll_type))
            }
            ScenarioSpec::QEquivalenceSweep { .. } => "q-equals-scroll/sweep".into(),
            ScenarioSpec::MaxregBaselocus { c } => format!("maxreg-baselocus/c={c}"),
            ScenarioSpec::UniqueContainer => "unique-container/S(1,1,1)/a=3/b=0".into(),
            ScenarioSpec::GammaOnCurve { c, k, size } => match size {
                Some(m) => format!("gamma-on-curve/c={c}/k={k}/m={m}"),
                None => format!("gamma-on-curve/c={c}/k={k}"),
            },
            ScenarioSpec::BaselocusDivisor { scroll_type, a, b, .. } => {
                format!("baselocus-divisors/S({})/a={a}/b={b}", type_str(scroll_type))
            }
            ScenarioSpec::FundamentalInequality(k) => format!("fundamental-inequality/{}", k.label()),
        }
    }

    pub fn params(&self) -> Vec<(String, String)> {
        let kv = |k: &str, v: String| (String::from(k), v);
        match self {
            ScenarioSpec::CastelnuovoCurve { c } | ScenarioSpec::Fano { c } | ScenarioSpec::MaxregBaselocus { c } => {
                vec![kv("c", c.to_string())]
            }
            ScenarioSpec::CastelnuovoScroll { scroll_type } => vec![kv("type", type_str(scroll_type))],
            ScenarioSpec::CurveWitness { c, kind } => {
                vec![kv("c", c.to_string()), kv("construction", kind.name().into())]
            }
            ScenarioSpec::TwoNormality { c, m } => vec![kv("c", c.to_string()), kv("m", m.to_string())],
            ScenarioSpec::DivisorDifference { scroll_type, a, b }
            | ScenarioSpec::BaselocusDivisor { scroll_type, a, b, .. } => vec![
                kv("type", type_str(scroll_type)),
                kv("a", a.to_string()),
                kv("b", b.to_string()),
            ],
            ScenarioSpec::QEquivalenceSweep { max_len, max_entry, max_a, max_b } => vec![
                kv("max_len", max_len.to_string()),
                kv("max_entry", max_entry.to_string()),
                kv("max_a", max_a.to_string()),
                kv("max_b", max_b.to_string()),
            ],
            ScenarioSpec::UniqueContainer => vec![
                kv("type", "1,1,1".into()),
                kv("a", "3".into()),
                kv("b", "0".into()),
            ],
            ScenarioSpec::GammaOnCurve { c, k, size } => {
                let mut v = vec![kv("c", c.to_string()), kv("k", k.to_string())];
                if let Some(m) = size {
                    v.push(kv("m", m.to_string()));
                }
                v
            }
            ScenarioSpec::FundamentalInequality(k) => vec![kv("construction", k.label())],
        }
    }

    /// The claim being checked, in words.
    pub fn claim(&self) -> &'static str {
        match self {
            ScenarioSpec::CastelnuovoCurve { .. } | ScenarioSpec::CastelnuovoScroll { .. } => {
                "varieties of minimal degree attain a2 = C(c+1,2)"
            }
            ScenarioSpec::Fano { .. } => "linearly normal curves of arithmetic genus one attain a2 = C(c+1,2)-1",
            ScenarioSpec::CurveWitness { .. } => "curves with a2 = C(c+1,2)-3 (4-secant rational, projected elliptic, genus 3)",
            ScenarioSpec::TwoNormality { .. } => "2-normal point sets have a2 = C(c+2,2)-m",
            ScenarioSpec::DivisorDifference { .. } => "a2(X) - a2(Y) = h0((2-a)H - bF) for divisors on a scroll",
            ScenarioSpec::QEquivalenceSweep { .. } => "Q(X) = Y exactly when h0((2-a)H - bF) = 0",
            ScenarioSpec::MaxregBaselocus { .. } => "I(C)_2 = I(C with its 4-secant line)_2",
            ScenarioSpec::UniqueContainer => "a unique (n+1)-fold Y with I(Y)_2 = I(X)_2 contains X",
            ScenarioSpec::GammaOnCurve { .. } => "a2(Gamma) = a2(D) once |Gamma| > 2 deg D",
            ScenarioSpec::BaselocusDivisor { case, .. } => match case {
                BaseLocusCase::QuadricsCutOutX | BaseLocusCase::LinearLowB => "Q(X) = X",
                BaseLocusCase::LinearWithSubscroll => "Q(X) is contained in X together with the sub-scroll X0",
            },
            ScenarioSpec::FundamentalInequality(_) => "a2 <= C(c+1,2) - min(d-c-1, c)",
        }
    }
}

/// One run's setting: the working prime and the seed.
#[derive(Clone, Debug, PartialEq)]
pub struct Context {
    pub field: PrimeField,
    pub seed: u64,
    pub policy: SamplingPolicy,
    /// Probe points per exclusion check.
    pub probes: usize,
}

impl Context {
    pub fn new(prime: u64, seed: u64) -> Result<Self> {
        Ok(Context {
            field: PrimeField::with_override(prime)?,
            seed,
            policy: SamplingPolicy::default(),
            probes: 200,
        })
    }

    fn scenario_seed(&self, spec: &ScenarioSpec) -> u64 {
        seed::derive(self.seed, &spec.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct A2Record {
    pub label: String,
    pub a2: usize,
    pub certification: Certification,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScenarioResult {
    pub name: String,
    pub params: Vec<(String, String)>,
    pub claim: String,
    pub expected: String,
    pub observed: String,
    pub status: Status,
    pub a2: Vec<A2Record>,
    pub notes: Vec<String>,
    pub seed: u64,
    pub prime: u64,
}

impl ScenarioResult {
    pub fn param_string(&self) -> String {
        let v: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        v.join(";")
    }
}

/// Accumulates checks for one scenario run.
struct Run<'a> {
    ctx: &'a Context,
    seed: u64,
    a2: Vec<A2Record>,
    notes: Vec<String>,
    ok: bool,
}

impl<'a> Run<'a> {
    fn new(ctx: &'a Context, seed: u64) -> Self {
        Run {
            ctx,
            seed,
            a2: Vec::new(),
            notes: Vec::new(),
            ok: true,
        }
    }

    fn check(&mut self, cond: bool, what: impl Into<String>) {
        if !cond {
            self.ok = false;
            self.notes.push(format!("failed: {}", what.into()));
        }
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    /// Quadric basis of a variety, recording a2 and running the invariant
    /// and fundamental-inequality checks.
    fn basis(&mut self, label: &str, v: &VarietyRep<PrimeField>) -> Result<QuadricBasis<PrimeField>> {
        let b = quadric_basis(v, &self.ctx.policy, seed::derive(self.seed, label))?;
        self.record(label, &b);
        let mut rng = seed::rng(self.seed, &format!("{label}/invariants"));
        let inv = v.check_invariants(&mut rng)?;
        self.check(inv.nondegenerate, format!("{label} spans P^{}", v.ambient_dim()));
        self.check(
            inv.degree_matches,
            format!("{label} section count {:?} equals degree {}", inv.section_count, v.degree()),
        );
        let (ok, bound) = fundamental_inequality(v, b.a2);
        self.check(ok, format!("{label} a2 = {} <= {bound}", b.a2));
        Ok(b)
    }

    fn record(&mut self, label: &str, b: &QuadricBasis<PrimeField>) {
        self.a2.push(A2Record {
            label: label.into(),
            a2: b.a2,
            certification: b.certification,
        });
    }

    fn finish(self, spec: &ScenarioSpec, expected: String, observed: String, status: Option<Status>) -> ScenarioResult {
        let status = status.unwrap_or(if self.ok { Status::Pass } else { Status::Fail });
        ScenarioResult {
            name: spec.name(),
            params: spec.params(),
            claim: spec.claim().into(),
            expected,
            observed,
            status,
            a2: self.a2,
            notes: self.notes,
            seed: self.seed,
            prime: self.ctx.field.modulus(),
        }
    }
}

/// `C(c+1, 2) - min(d - c - 1, c)` and whether `a2` respects it.
pub fn fundamental_bound(codim: usize, degree: u64) -> i64 {
    let c = codim as i64;
    binomial(c as u64 + 1, 2) as i64 - (degree as i64 - c - 1).min(c)
}

pub fn fundamental_inequality<F: Field>(v: &VarietyRep<F>, a2: usize) -> (bool, i64) {
    let bound = fundamental_bound(v.codim(), v.degree());
    (a2 as i64 <= bound, bound)
}

/// Standalone check of the fundamental inequality on one variety.
pub fn check_fundamental_inequality(v: &VarietyRep<PrimeField>, ctx: &Context) -> Result<ScenarioResult> {
    let b = quadric_basis(v, &ctx.policy, ctx.seed)?;
    let (ok, bound) = fundamental_inequality(v, b.a2);
    Ok(ScenarioResult {
        name: format!("fundamental-inequality/{}", v.tag()),
        params: vec![
            ("c".into(), v.codim().to_string()),
            ("d".into(), v.degree().to_string()),
        ],
        claim: "a2 <= C(c+1,2) - min(d-c-1, c)".into(),
        expected: format!("a2<={bound}"),
        observed: format!("a2={}", b.a2),
        status: if ok { Status::Pass } else { Status::Fail },
        a2: vec![A2Record {
            label: "X".into(),
            a2: b.a2,
            certification: b.certification,
        }],
        notes: Vec::new(),
        seed: ctx.seed,
        prime: ctx.field.modulus(),
    })
}

fn a2_text(v: usize) -> String {
    format!("a2={v}")
}

/// Runs one scenario in one context. Computation errors become failures
/// with the error in the notes.
pub fn run_scenario(spec: &ScenarioSpec, ctx: &Context) -> ScenarioResult {
    let seed = ctx.scenario_seed(spec);
    match run_inner(spec, ctx, seed) {
        Ok(r) => r,
        Err(e) => {
            let mut run = Run::new(ctx, seed);
            let status = match e {
                CoreError::IneffectiveClass | CoreError::DegenerateClass => Status::Inconclusive,
                _ => Status::Fail,
            };
            run.note(format!("error: {e}"));
            run.finish(spec, String::from("-"), format!("error: {e}"), Some(status))
        }
    }
}

fn run_inner(spec: &ScenarioSpec, ctx: &Context, seed: u64) -> Result<ScenarioResult> {
    let f = &ctx.field;
    let mut run = Run::new(ctx, seed);
    match spec {
        ScenarioSpec::FundamentalInequality(k) => {
            let v = k.build(f, seed)?;
            let b = run.basis("X", &v)?;
            let bound = fundamental_bound(v.codim(), v.degree());
            Ok(run.finish(spec, format!("a2<={bound}"), a2_text(b.a2), None))
        }
        ScenarioSpec::CastelnuovoCurve { c } => {
            let v = rational_normal_curve(f, c + 1)?;
            let b = run.basis("X", &v)?;
            let want = binomial(*c as u64 + 1, 2) as usize;
            run.check(b.a2 == want, "a2 = C(c+1,2)");
            Ok(run.finish(spec, a2_text(want), a2_text(b.a2), None))
        }
        ScenarioSpec::CastelnuovoScroll { scroll_type } => {
            let v = scroll(f, scroll_type)?;
            let b = run.basis("Y", &v)?;
            let want = binomial(v.codim() as u64 + 1, 2) as usize;
            run.check(b.a2 == want, "a2 = C(c+1,2)");
            run.check(scroll_a2(scroll_type)? as usize == want, "C(r+2,2) - h0(2H) = C(c+1,2)");
            Ok(run.finish(spec, a2_text(want), a2_text(b.a2), None))
        }
        ScenarioSpec::Fano { c } => {
            let mut rng = seed::rng(seed, "weierstrass");
            let (a, b) = random_weierstrass(f, &mut rng);
            let v = elliptic_normal_curve(f, *c, &a, &b)?;
            let q = run.basis("X", &v)?;
            let want = binomial(*c as u64 + 1, 2) as usize - 1;
            run.check(q.a2 == want, "a2 = C(c+1,2) - 1");
            run.check(
                q.certification == Certification::SymbolicCertified,
                "certified by reduction modulo the Weierstrass relation",
            );
            Ok(run.finish(spec, a2_text(want), a2_text(q.a2), None))
        }
        ScenarioSpec::CurveWitness { c, kind } => {
            let v = match kind {
                WitnessKind::FourSecant => rational_curve_with_4secant(f, *c, seed)?,
                WitnessKind::ProjectedElliptic => projected_elliptic(f, *c, seed)?,
                WitnessKind::GenusThree => genus_three_curve(f, *c, seed)?,
            };
            run.check(v.degree() == *c as u64 + 3 + u64::from(*kind == WitnessKind::GenusThree), "degree c+3 (c+4 for genus 3)");
            let b = run.basis("C", &v)?;
            let want = binomial(*c as u64 + 1, 2) as usize - 3;
            run.check(b.a2 == want, "a2 = C(c+1,2) - 3");
            if *kind == WitnessKind::GenusThree {
                // h0(O_C(2)) = 2d + 1 - g for the linearly normal genus-3 curve
                let h0 = binomial(*c as u64 + 3, 2) as usize - b.a2;
                run.check(h0 == 2 * (*c + 4) + 1 - 3, "C(c+3,2) - a2 = 2d + 1 - g");
            }
            Ok(run.finish(spec, a2_text(want), a2_text(b.a2), None))
        }
        ScenarioSpec::TwoNormality { c, m } => {
            let v = point_config_on_rnc(f, *c, *m, seed)?;
            let b = run.basis("Gamma", &v)?;
            let want = binomial(*c as u64 + 2, 2) as i64 - *m as i64;
            run.check(b.a2 as i64 == want, "a2 = C(c+2,2) - m");
            Ok(run.finish(spec, format!("a2={want}"), a2_text(b.a2), None))
        }
        ScenarioSpec::DivisorDifference { scroll_type, a, b } => {
            let cls = ScrollDivisorClass::new(scroll_type, *a, *b)?;
            if !is_effective(&cls) {
                return Err(CoreError::IneffectiveClass);
            }
            let want = predicted_a2(&cls)? as usize;
            let x = scroll_divisor(f, scroll_type, *a as u32, *b, seed)?;
            let y = scroll(f, scroll_type)?;
            let bx = run.basis("X", &x)?;
            let by = run.basis("Y", &y)?;
            run.check(bx.a2 == want, "sampled a2 equals the difference-formula prediction");
            run.check(
                bx.a2 - by.a2 == h0_class(&cls.residual()) as usize,
                "a2(X) - a2(Y) = h0((2-a)H - bF)",
            );
            let q_y = q_equals_scroll(&cls)?;
            let y_inside = crate::quadspace::contains_in_baselocus(&bx, &y)?;
            run.check(y_inside == q_y, format!("Y inside Q(X) is {y_inside}, expected {q_y}"));
            if q_y {
                run.note("Q(X) = Y certified");
            }
            Ok(run.finish(spec, a2_text(want), a2_text(bx.a2), None))
        }
        ScenarioSpec::QEquivalenceSweep { max_len, max_entry, max_a, max_b } => {
            let mut count = 0usize;
            for len in 1..=*max_len {
                for t in scroll_types(len, *max_entry) {
                    for a in 0..=*max_a {
                        for b in -*max_b..=*max_b {
                            let cls = ScrollDivisorClass::new(&t, a, b)?;
                            // q_equals_scroll errors on any disagreement
                            q_equals_scroll(&cls)?;
                            count += 1;
                        }
                    }
                }
            }
            run.note(format!("{count} classes checked"));
            Ok(run.finish(spec, "agreement on all classes".into(), format!("{count} classes agree"), None))
        }
        ScenarioSpec::MaxregBaselocus { c } => {
            let curve = rational_curve_with_4secant(f, *c, seed)?;
            let line = coordinate_line(f, c + 1)?;
            let bc = run.basis("C", &curve)?;
            let want = binomial(*c as u64 + 1, 2) as usize - 3;
            run.check(bc.a2 == want, "a2(C) = C(c+1,2) - 3");
            let mut report = BaseLocusReport::new();
            let inside = report.certify_component(&bc, &line, "4-secant line")?;
            run.check(inside, "4-secant line inside Q(C)");
            let bu = quadric_basis_union(&[&curve, &line], &ctx.policy, seed::derive(seed, "union"))?;
            run.record("C+line", &bu);
            run.check(bu.a2 == bc.a2, "a2(C with line) = a2(C)");
            let mut rng = seed::rng(seed, "probes");
            let mut probes = ambient_probes(f, c + 1, ctx.probes / 2, &mut rng);
            probes.extend(secant_probes(&curve, ctx.probes - ctx.probes / 2, &mut rng)?);
            exclusion_witnesses(&bc, &probes, &[&curve, &line], &mut report)?;
            run.check(report.counterexamples.is_empty(), "every probe off C and the line is excluded");
            run.check(report.dimension_bound_holds(curve.dim()), "certified components have dim <= n+1");
            run.note(format!(
                "{} probes excluded, {} on known components",
                report.excluded.len(),
                report.discarded
            ));
            Ok(run.finish(
                spec,
                format!("a2={want};line_in_Q=true;a2_union={want}"),
                format!("a2={};line_in_Q={inside};a2_union={}", bc.a2, bu.a2),
                None,
            ))
        }
        ScenarioSpec::UniqueContainer => {
            let t = [1u32, 1, 1];
            let x = scroll_divisor(f, &t, 3, 0, seed)?;
            let y = scroll(f, &t)?;
            run.check(x.degree() == 2 * x.codim() as u64 + 3, "deg X = 2c + 3");
            let bx = run.basis("X", &x)?;
            let by = run.basis("Y", &y)?;
            let want = binomial(x.codim() as u64, 2) as usize;
            run.check(bx.a2 == want && by.a2 == want, "a2(X) = a2(Y) = C(c,2)");
            let mut report = BaseLocusReport::new();
            let inside = report.certify_component(&bx, &y, "S(1,1,1)")?;
            run.check(inside, "Y inside Q(X)");
            let mut rng = seed::rng(seed, "probes");
            let mut probes = ambient_probes(f, y.ambient_dim(), ctx.probes / 2, &mut rng);
            probes.extend(secant_probes(&y, ctx.probes - ctx.probes / 2, &mut rng)?);
            exclusion_witnesses(&bx, &probes, &[&x, &y], &mut report)?;
            run.check(report.counterexamples.is_empty(), "every probe off X and Y is excluded");
            run.check(
                report.excluded.len() + report.discarded >= ctx.probes,
                format!("at least {} probes", ctx.probes),
            );
            run.check(report.dimension_bound_holds(x.dim()), "certified components have dim <= n+1");
            run.note(format!(
                "{} probes excluded, {} on known components",
                report.excluded.len(),
                report.discarded
            ));
            Ok(run.finish(
                spec,
                format!("a2={want};Y_in_Q=true"),
                format!("a2={};Y_in_Q={inside}", bx.a2),
                None,
            ))
        }
        ScenarioSpec::GammaOnCurve { c, k, size } => {
            if *k > 1 || *c < k + 2 {
                return Err(CoreError::InvalidParameter("need k in {0,1} and c >= k+2".into()));
            }
            let d = if *k == 0 {
                rational_normal_curve(f, *c)?
            } else {
                let mut rng = seed::rng(seed, "weierstrass");
                let (a, b) = random_weierstrass(f, &mut rng);
                elliptic_normal_curve(f, c - 1, &a, &b)?
            };
            run.note(format!("deg D fixed to c+k = {}", d.degree()));
            let m = size.unwrap_or(2 * d.degree() as usize + 1);
            let mut rng = seed::rng(seed, "gamma");
            let mut pts = Vec::new();
            let mut tries = 0;
            while pts.len() < m && tries < 50 {
                tries += 1;
                for p in to_points(f, &d.sample_points(m, &mut rng)?) {
                    if pts.len() < m && !pts.contains(&p) {
                        pts.push(p);
                    }
                }
            }
            if pts.len() < m {
                run.note("too few points over the working field");
                return Ok(run.finish(spec, "-".into(), format!("|Gamma|={}", pts.len()), Some(Status::Inconclusive)));
            }
            let gamma = point_list(f, Tag::PointConfig, pts, true)?;
            let bd = run.basis("D", &d)?;
            let bg = quadric_basis(&gamma, &ctx.policy, seed)?;
            run.record("Gamma", &bg);
            run.check(bd.a2 == binomial(*c as u64, 2) as usize - k, "a2(D) = C(c,2) - k");
            let hypothesis = m > 2 * d.degree() as usize;
            let expected = format!("a2(Gamma)=a2(D)={}", bd.a2);
            let observed = format!("a2(Gamma)={};a2(D)={}", bg.a2, bd.a2);
            if !hypothesis {
                run.note("|Gamma| <= 2 deg D: hypothesis unmet");
                return Ok(run.finish(spec, expected, observed, Some(Status::Inconclusive)));
            }
            run.check(bg.a2 == bd.a2, "a2(Gamma) = a2(D)");
            Ok(run.finish(spec, expected, observed, None))
        }
        ScenarioSpec::BaselocusDivisor { scroll_type, a, b, case } => {
            let x = scroll_divisor(f, scroll_type, *a as u32, *b, seed)?;
            let y = scroll(f, scroll_type)?;
            let bx = run.basis("X", &x)?;
            let mut known = vec![x.clone()];
            if *case == BaseLocusCase::LinearWithSubscroll {
                // X0 = S(a_1..a_k) is cut out on Y by u_i = 0 for the blocks of maximal a_i
                let top = *scroll_type.last().unwrap();
                let first_top = scroll_type.iter().position(|&v| v == top).unwrap();
                if first_top == 0 {
                    return Err(CoreError::InvalidParameter("X0 is empty for a balanced scroll".into()));
                }
                let nv = scroll_type.len() + 2;
                let mut g = crate::poly::MultiPoly::one(f, nv);
                for i in first_top..scroll_type.len() {
                    g = g.mul(&crate::poly::MultiPoly::var(f, nv, 2 + i));
                }
                let n_top = (scroll_type.len() - first_top) as u32;
                let x0 = scroll_divisor_with_form(f, scroll_type, n_top, -((n_top * top) as i64), g)?;
                known.push(x0);
            }
            let mut report = BaseLocusReport::new();
            let inside = report.certify_component(&bx, &x, "X")?;
            run.check(inside, "X inside Q(X)");
            let mut rng = seed::rng(seed, "probes");
            let probes = y.sample_points(ctx.probes, &mut rng)?;
            let refs: Vec<&VarietyRep<PrimeField>> = known.iter().collect();
            exclusion_witnesses(&bx, &probes, &refs, &mut report)?;
            run.check(report.counterexamples.is_empty(), "every probe on Y off the known components is excluded");
            run.check(!report.excluded.is_empty(), "some probes excluded");
            run.note(format!(
                "{} probes excluded, {} on known components",
                report.excluded.len(),
                report.discarded
            ));
            let expected = String::from("counterexamples=0");
            let observed = format!("counterexamples={}", report.counterexamples.len());
            Ok(run.finish(spec, expected, observed, None))
        }
    }
}

/// Report environment: both contexts used.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Environment {
    pub primes: [u64; 2],
    pub seeds: [u64; 2],
    pub version: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub inconclusive: usize,
    pub disagreements: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub suite: String,
    pub scenarios: Vec<ScenarioResult>,
    pub environment: Environment,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn exit_code(&self) -> i32 {
        if self.summary.fail > 0 {
            1
        } else if self.summary.inconclusive > 0 {
            3
        } else {
            0
        }
    }
}

/// Configuration of a verification run.
#[derive(Clone, Debug, PartialEq)]
pub struct VerifyConfig {
    pub primary: Context,
    pub cross: Context,
}

impl VerifyConfig {
    /// Primary run on `prime` with `seed`; cross run on the other default
    /// prime with a derived seed.
    pub fn new(prime: u64, seed: u64) -> Result<Self> {
        let other = if prime == CROSS_CHECK_PRIME { DEFAULT_PRIME } else { CROSS_CHECK_PRIME };
        Ok(VerifyConfig {
            primary: Context::new(prime, seed)?,
            cross: Context::new(other, seed::derive(seed, "cross-check"))?,
        })
    }
}

/// Runs a scenario in both contexts and merges the outcomes. The merged
/// result carries the primary run's data; it passes only if both runs pass
/// with the same a2 values and every a2 reaches `MultiPrimeAgreed`.
pub fn run_checked(spec: &ScenarioSpec, cfg: &VerifyConfig) -> (ScenarioResult, bool) {
    let mut a = run_scenario(spec, &cfg.primary);
    let b = run_scenario(spec, &cfg.cross);
    let values = |r: &ScenarioResult| r.a2.iter().map(|x| (x.label.clone(), x.a2)).collect::<Vec<_>>();
    let agree = values(&a) == values(&b) && a.status == b.status && a.observed == b.observed;
    if agree {
        for rec in &mut a.a2 {
            if rec.certification == Certification::SampledOnly {
                rec.certification = Certification::MultiPrimeAgreed;
            }
        }
    } else {
        a.notes.push(format!(
            "cross-check disagreement (prime {}, seed {}): status {}, observed {}",
            b.prime, b.seed, b.status, b.observed
        ));
        if a.status == Status::Pass {
            a.status = Status::Fail;
        }
    }
    if a.status == Status::Pass && a.a2.iter().any(|r| r.certification < Certification::MultiPrimeAgreed) {
        a.status = Status::Inconclusive;
        a.notes.push("an a2 value is below MultiPrimeAgreed".into());
    }
    (a, !agree)
}

pub fn assemble(suite: &str, cfg: &VerifyConfig, results: Vec<(ScenarioResult, bool)>) -> VerificationReport {
    let mut summary = Summary::default();
    let mut scenarios = Vec::with_capacity(results.len());
    for (r, disagree) in results {
        match r.status {
            Status::Pass => summary.pass += 1,
            Status::Fail => summary.fail += 1,
            Status::Inconclusive => summary.inconclusive += 1,
        }
        summary.disagreements += usize::from(disagree);
        scenarios.push(r);
    }
    VerificationReport {
        suite: suite.into(),
        scenarios,
        environment: Environment {
            primes: [cfg.primary.field.modulus(), cfg.cross.field.modulus()],
            seeds: [cfg.primary.seed, cfg.cross.seed],
            version: VERSION.into(),
        },
        summary,
    }
}

/// Sequential run of a list of scenarios.
pub fn verify(suite: &str, specs: &[ScenarioSpec], cfg: &VerifyConfig) -> VerificationReport {
    let results = specs.iter().map(|s| run_checked(s, cfg)).collect();
    assemble(suite, cfg, results)
}

/// Scenario lists for the named suites.
pub mod suites {
    use super::*;

    pub const NAMES: [&str; 11] = [
        "castelnuovo",
        "fano",
        "curve-witnesses",
        "two-normality",
        "fundamental-inequality",
        "divisor-difference",
        "q-equals-scroll",
        "maxreg-baselocus",
        "unique-container",
        "gamma-on-curve",
        "baselocus-divisors",
    ];

    /// Maps accepted alternative names to suite names.
    pub fn canonical(name: &str) -> Option<&'static str> {
        match name {
            "theorem-1-3" => Some("curve-witnesses"),
            _ => NAMES.iter().copied().find(|n| *n == name),
        }
    }

    pub fn castelnuovo(cs: core::ops::RangeInclusive<usize>) -> Vec<ScenarioSpec> {
        let mut v: Vec<ScenarioSpec> = cs.map(|c| ScenarioSpec::CastelnuovoCurve { c }).collect();
        for t in [vec![1, 2], vec![2, 2], vec![1, 1, 1]] {
            v.push(ScenarioSpec::CastelnuovoScroll { scroll_type: t });
        }
        v
    }

    pub fn fano(cs: core::ops::RangeInclusive<usize>) -> Vec<ScenarioSpec> {
        cs.map(|c| ScenarioSpec::Fano { c }).collect()
    }

    pub fn curve_witnesses(cs: core::ops::RangeInclusive<usize>) -> Vec<ScenarioSpec> {
        cs.flat_map(|c| {
            [WitnessKind::FourSecant, WitnessKind::ProjectedElliptic, WitnessKind::GenusThree]
                .into_iter()
                .map(move |kind| ScenarioSpec::CurveWitness { c, kind })
        })
        .collect()
    }

    pub fn two_normality(cs: core::ops::RangeInclusive<usize>) -> Vec<ScenarioSpec> {
        cs.flat_map(|c| (c + 2..=2 * c + 1).map(move |m| ScenarioSpec::TwoNormality { c, m }))
            .collect()
    }

    /// Nondegenerate effective classes with `a` and `b` in the given ranges.
    pub fn divisor_sweep(
        types: &[Vec<u32>],
        a_range: core::ops::RangeInclusive<i64>,
        b_range: core::ops::RangeInclusive<i64>,
    ) -> Vec<ScenarioSpec> {
        let mut v = Vec::new();
        for t in types {
            for a in a_range.clone() {
                for b in b_range.clone() {
                    let Ok(cls) = ScrollDivisorClass::new(t, a, b) else { continue };
                    if is_nondegenerate_class(&cls) && is_effective(&cls) {
                        v.push(ScenarioSpec::DivisorDifference {
                            scroll_type: t.clone(),
                            a,
                            b,
                        });
                    }
                }
            }
        }
        v
    }

    /// Sweep over types `(1,2)` and `(1,1,1)`, `1 <= a <= 3`, `|b| <= 3`.
    pub fn divisor_difference_sweep() -> Vec<ScenarioSpec> {
        divisor_sweep(&[vec![1, 2], vec![1, 1, 1]], 1..=3, -3..=3)
    }

    pub fn divisor_difference_examples() -> Vec<ScenarioSpec> {
        vec![
            ScenarioSpec::DivisorDifference { scroll_type: vec![1, 2], a: 2, b: -2 },
            ScenarioSpec::DivisorDifference { scroll_type: vec![1, 1, 1], a: 3, b: 0 },
            ScenarioSpec::DivisorDifference { scroll_type: vec![1, 2], a: 1, b: 1 },
        ]
    }

    pub fn q_equals_scroll() -> Vec<ScenarioSpec> {
        vec![
            ScenarioSpec::QEquivalenceSweep { max_len: 4, max_entry: 4, max_a: 5, max_b: 10 },
            ScenarioSpec::DivisorDifference { scroll_type: vec![1, 1, 1], a: 3, b: 0 },
        ]
    }

    pub fn maxreg_baselocus(cs: core::ops::RangeInclusive<usize>) -> Vec<ScenarioSpec> {
        cs.map(|c| ScenarioSpec::MaxregBaselocus { c }).collect()
    }

    /// One instance per constructor family and size.
    pub fn fundamental_inequality() -> Vec<ScenarioSpec> {
        let mut ks = Vec::new();
        for c in 2..=6 {
            ks.push(Construction::Rnc { c });
        }
        for t in [vec![1, 2], vec![2, 2], vec![1, 1, 1], vec![1, 3]] {
            ks.push(Construction::Scroll { scroll_type: t });
        }
        for c in 3..=5 {
            ks.push(Construction::Elliptic { c });
        }
        for c in 4..=5 {
            for kind in [WitnessKind::FourSecant, WitnessKind::ProjectedElliptic, WitnessKind::GenusThree] {
                ks.push(Construction::Witness { c, kind });
            }
        }
        for (c, m) in [(3, 5), (3, 7), (4, 9), (5, 11)] {
            ks.push(Construction::Points { c, m });
        }
        for (t, a, b) in [(vec![1, 2], 2, -2), (vec![1, 2], 1, 1), (vec![1, 1, 1], 3, 0), (vec![1, 1, 1], 2, 1)] {
            ks.push(Construction::Divisor { scroll_type: t, a, b });
        }
        ks.into_iter().map(ScenarioSpec::FundamentalInequality).collect()
    }

    pub fn unique_container() -> Vec<ScenarioSpec> {
        vec![ScenarioSpec::UniqueContainer]
    }

    pub fn gamma_on_curve(c: usize) -> Vec<ScenarioSpec> {
        vec![
            ScenarioSpec::GammaOnCurve { c, k: 0, size: None },
            ScenarioSpec::GammaOnCurve { c, k: 1, size: None },
        ]
    }

    pub fn baselocus_divisors() -> Vec<ScenarioSpec> {
        vec![
            ScenarioSpec::BaselocusDivisor {
                scroll_type: vec![1, 2],
                a: 2,
                b: -2,
                case: BaseLocusCase::QuadricsCutOutX,
            },
            ScenarioSpec::BaselocusDivisor {
                scroll_type: vec![1, 2],
                a: 1,
                b: 1,
                case: BaseLocusCase::LinearLowB,
            },
            ScenarioSpec::BaselocusDivisor {
                scroll_type: vec![1, 2],
                a: 1,
                b: 2,
                case: BaseLocusCase::LinearWithSubscroll,
            },
        ]
    }

    /// Default scenario list of a suite.
    pub fn default_specs(name: &str) -> Option<Vec<ScenarioSpec>> {
        Some(match canonical(name)? {
            "castelnuovo" => castelnuovo(2..=6),
            "fano" => fano(3..=5),
            "curve-witnesses" => curve_witnesses(4..=5),
            "two-normality" => two_normality(3..=5),
            "fundamental-inequality" => fundamental_inequality(),
            "divisor-difference" => divisor_difference_examples(),
            "q-equals-scroll" => q_equals_scroll(),
            "maxreg-baselocus" => maxreg_baselocus(4..=5),
            "unique-container" => unique_container(),
            "gamma-on-curve" => gamma_on_curve(4),
            "baselocus-divisors" => baselocus_divisors(),
            _ => return None,
        })
    }
}
