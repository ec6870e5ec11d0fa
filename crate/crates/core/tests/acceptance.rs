//! Acceptance run: one PASS/FAIL line per criterion. Every comparison is
//! exact integer or boolean equality; there are no numeric tolerances.

use std::collections::BTreeMap;
use std::process::ExitCode;

use quadcert_core::field::{CROSS_CHECK_PRIME, DEFAULT_PRIME};
use quadcert_core::poly::binomial;
use quadcert_core::quadspace::{contains_in_baselocus, quadric_basis, Certification, SamplingPolicy};
use quadcert_core::scrollcalc::{h0_class, q_equals_scroll, scroll_types, ScrollDivisorClass};
use quadcert_core::varieties::{scroll, scroll_divisor};
use quadcert_core::verifier::{
    run_checked, suites, ScenarioResult, ScenarioSpec, Status, VerificationReport, VerifyConfig,
};

struct Tally {
    failed: Vec<usize>,
}

impl Tally {
    fn line(&mut self, n: usize, title: &str, ok: bool, detail: String) {
        println!("acceptance {n:>2} {} {title}: {detail}", if ok { "PASS" } else { "FAIL" });
        if !ok {
            self.failed.push(n);
        }
    }
}

fn run(specs: &[ScenarioSpec], cfg: &VerifyConfig) -> Vec<(ScenarioResult, bool)> {
    specs.iter().map(|s| run_checked(s, cfg)).collect()
}

fn all_pass(rs: &[(ScenarioResult, bool)]) -> bool {
    rs.iter().all(|(r, d)| r.status == Status::Pass && !d)
}

fn first_a2(rs: &[(ScenarioResult, bool)]) -> Vec<usize> {
    rs.iter().map(|(r, _)| r.a2.first().map_or(usize::MAX, |a| a.a2)).collect()
}

fn failures(rs: &[(ScenarioResult, bool)]) -> String {
    let bad: Vec<String> = rs
        .iter()
        .filter(|(r, d)| r.status != Status::Pass || *d)
        .map(|(r, _)| format!("{} {} {:?}", r.name, r.status, r.notes))
        .collect();
    if bad.is_empty() {
        String::new()
    } else {
        format!("; failing: {}", bad.join(" | "))
    }
}

fn everything() -> Vec<ScenarioSpec> {
    let mut specs: Vec<ScenarioSpec> = Vec::new();
    let mut push = |v: Vec<ScenarioSpec>| {
        for s in v {
            if !specs.contains(&s) {
                specs.push(s);
            }
        }
    };
    for n in suites::NAMES {
        push(suites::default_specs(n).unwrap());
    }
    push(suites::divisor_difference_sweep());
    specs
}

fn fingerprint(r: &VerificationReport) -> BTreeMap<String, (Status, Vec<(String, usize)>)> {
    r.scenarios
        .iter()
        .map(|s| {
            (
                s.name.clone(),
                (s.status, s.a2.iter().map(|a| (a.label.clone(), a.a2)).collect()),
            )
        })
        .collect()
}

fn main() -> ExitCode {
    let cfg = VerifyConfig::new(DEFAULT_PRIME, 0).unwrap();
    let f = cfg.primary.field;
    let mut t = Tally { failed: Vec::new() };

    // 1
    let rs = run(&suites::castelnuovo(2..=6), &cfg);
    let got = first_a2(&rs);
    let want = vec![3, 6, 10, 15, 21, 3, 6, 3];
    t.line(
        1,
        "castelnuovo equality",
        all_pass(&rs) && got == want,
        format!("rnc c=2..6 and S(1,2), S(2,2), S(1,1,1) give {got:?}, expected {want:?}{}", failures(&rs)),
    );

    // 2
    let rs = run(&suites::fano(3..=5), &cfg);
    let got = first_a2(&rs);
    let symbolic = rs
        .iter()
        .all(|(r, _)| r.a2.iter().all(|a| a.certification == Certification::SymbolicCertified));
    t.line(
        2,
        "genus one curves",
        all_pass(&rs) && got == [5, 9, 14] && symbolic,
        format!("c=3,4,5 give {got:?}, expected [5, 9, 14]; all SymbolicCertified: {symbolic}{}", failures(&rs)),
    );

    // 3
    let rs = run(&suites::curve_witnesses(4..=5), &cfg);
    let got = first_a2(&rs);
    t.line(
        3,
        "curve witnesses",
        all_pass(&rs) && got == [7, 7, 7, 12, 12, 12],
        format!(
            "4-secant, projected elliptic, genus 3 at c=4,5 give {got:?}, expected [7, 7, 7, 12, 12, 12]{}",
            failures(&rs)
        ),
    );

    // 4
    let specs = suites::two_normality(3..=5);
    let rs = run(&specs, &cfg);
    let exact = specs.iter().zip(&rs).all(|(s, (r, _))| match s {
        ScenarioSpec::TwoNormality { c, m } => {
            r.a2[0].a2 as i64 == binomial(*c as u64 + 2, 2) as i64 - *m as i64
        }
        _ => false,
    });
    t.line(
        4,
        "2-normal point counts",
        all_pass(&rs) && exact && rs.len() == 12,
        format!("{} configurations, a2 = C(c+2,2) - m on all: {exact}{}", rs.len(), failures(&rs)),
    );

    // 5: bound recomputed here from (c, d)
    let mut instances = 0;
    let mut violations = Vec::new();
    for (i, spec) in suites::fundamental_inequality().iter().enumerate() {
        let ScenarioSpec::FundamentalInequality(k) = spec else { continue };
        match k.build(&f, 1000 + i as u64) {
            Ok(v) => {
                let a2 = quadric_basis(&v, &SamplingPolicy::default(), i as u64).unwrap().a2 as i64;
                let (c, d) = (v.codim() as i64, v.degree() as i64);
                let bound = (c + 1) * c / 2 - (d - c - 1).min(c);
                instances += 1;
                if a2 > bound {
                    violations.push(format!("{} a2={a2} bound={bound}", spec.name()));
                }
            }
            Err(e) => violations.push(format!("{}: {e}", spec.name())),
        }
    }
    t.line(
        5,
        "fundamental inequality",
        instances >= 20 && violations.is_empty(),
        format!("{instances} constructions, violations {violations:?}"),
    );

    // 6
    let specs = suites::divisor_difference_sweep();
    let rs = run(&specs, &cfg);
    let agree = rs.iter().all(|(r, _)| r.expected == r.observed);
    t.line(
        6,
        "difference formula sweep",
        all_pass(&rs) && agree && !rs.is_empty(),
        format!("{} nondegenerate effective classes, sampled = predicted on all: {agree}{}", rs.len(), failures(&rs)),
    );

    // 7
    let mut classes = 0;
    let mut mismatches = 0;
    for len in 1..=4 {
        for ty in scroll_types(len, 4) {
            for a in 0..=5 {
                for b in -10..=10 {
                    let cls = ScrollDivisorClass::new(&ty, a, b).unwrap();
                    classes += 1;
                    match q_equals_scroll(&cls) {
                        Ok(q) if q == (h0_class(&cls.residual()) == 0) => {}
                        _ => mismatches += 1,
                    }
                }
            }
        }
    }
    let x = scroll_divisor(&f, &[1, 1, 1], 3, 0, 7).unwrap();
    let y = scroll(&f, &[1, 1, 1]).unwrap();
    let bx = quadric_basis(&x, &SamplingPolicy::default(), 7).unwrap();
    let contained = contains_in_baselocus(&bx, &y).unwrap();
    t.line(
        7,
        "Q(X) = Y criterion",
        mismatches == 0 && contained,
        format!("{classes} classes, {mismatches} mismatches; Y inside Q(X) for ((1,1,1),3,0): {contained}"),
    );

    // 8
    let rs = run(&suites::maxreg_baselocus(4..=5), &cfg);
    let obs: Vec<&str> = rs.iter().map(|(r, _)| r.observed.as_str()).collect();
    let exact = obs == ["a2=7;line_in_Q=true;a2_union=7", "a2=12;line_in_Q=true;a2_union=12"];
    t.line(
        8,
        "4-secant line in the base locus",
        all_pass(&rs) && exact,
        format!("{obs:?}{}", failures(&rs)),
    );

    // 9: run_checked repeats the scenario on the second prime
    let rs = run(&suites::unique_container(), &cfg);
    let r = &rs[0].0;
    let probes_ok = r.notes.iter().any(|n| {
        n.split_whitespace()
            .next()
            .and_then(|x| x.parse::<usize>().ok())
            .is_some_and(|x| x >= 200)
    });
    t.line(
        9,
        "unique container instance",
        all_pass(&rs) && r.observed == "a2=3;Y_in_Q=true" && probes_ok,
        format!(
            "{} on primes {} and {}; {:?}{}",
            r.observed,
            cfg.primary.field.modulus(),
            cfg.cross.field.modulus(),
            r.notes,
            failures(&rs)
        ),
    );

    // 10
    let specs = everything();
    let first = quadcert_core::verifier::verify("all", &specs, &cfg);
    let cfg2 = VerifyConfig::new(CROSS_CHECK_PRIME, 1).unwrap();
    let second = quadcert_core::verifier::verify("all", &specs, &cfg2);
    let same = fingerprint(&first) == fingerprint(&second);
    let dis = first.summary.disagreements + second.summary.disagreements;
    t.line(
        10,
        "determinism across primes and seeds",
        same && dis == 0 && first.summary.fail == 0 && first.summary.inconclusive == 0,
        format!(
            "{} scenarios on (p={}, seed 0) and (p={}, seed 1): identical a2 and status {same}, disagreements {dis}, summary {:?}",
            specs.len(),
            DEFAULT_PRIME,
            CROSS_CHECK_PRIME,
            first.summary
        ),
    );

    if t.failed.is_empty() {
        println!("acceptance: all 10 criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failing criteria {:?}", t.failed);
        ExitCode::FAILURE
    }
}
