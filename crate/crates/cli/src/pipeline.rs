//! Turns a loaded instance into a report. Classification results are facts;
//! anything that must hold regardless of the instance is a verification.

use loday_core::algebroid::{
    anchor_morphism_check, classify, is_graph_closed, jacobiator, omni_left_leibniz_check, omni_loday_bracket,
    qd_empirical_check, random_omni_triple, theorem_t3_check, theorem_t4_check, theorem_t5_check, Biconditional,
    BracketOnModule, OmniElement,
};
use loday_core::bracket::{
    check_left_leibniz, check_right_leibniz, flip_bracket, weinstein_graph_closed, StructureBracket,
};
use loday_core::corpus::over_rationals;
use loday_core::exactmath::rational::fmt_vector;
use loday_core::exterior::{e1_defect, DifferentialForm};
use loday_core::{sampling, Error, IdentityReport};

use crate::instance::{ExteriorWitness, Loaded, LoadedInstance};
use crate::report::{Report, Role, Status};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Settings {
    pub seed: u64,
    pub samples: Option<usize>,
    pub degree: u32,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            seed: loday_core::DEFAULT_SEED,
            samples: None,
            degree: 2,
        }
    }
}

/// A falsified statement becomes a failing line; other errors abort.
fn guarded<T>(report: &mut Report, check: &str, r: Result<T, Error>) -> Result<Option<T>, Error> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(e) if e.is_invariant_violation() => {
            report.push(check, Role::Verification, Status::Fail, e.to_string());
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

fn sides(r: &IdentityReport) -> &'static str {
    if r.holds() {
        "both sides hold"
    } else {
        "both sides fail"
    }
}

fn graph(r: &IdentityReport) -> &'static str {
    if r.holds() {
        "graph closed"
    } else {
        "graph not closed"
    }
}

fn biconditional(report: &mut Report, check: &str, r: Result<Biconditional, Error>) -> Result<(), Error> {
    if let Some(b) = guarded(report, check, r)? {
        report.verify_bool(check, b.agree(), sides(&b.lhs));
    }
    Ok(())
}

pub fn check(instance: &LoadedInstance, s: &Settings) -> Result<Report, Error> {
    match &instance.body {
        Loaded::Bracket(b) => check_module(&instance.name, &over_rationals(b.clone())?),
        Loaded::Module(m) => check_module(&instance.name, m),
        Loaded::Omni { dim, samples, elements } => {
            check_omni(&instance.name, *dim, samples.or(s.samples).unwrap_or(50), elements, s.seed)
        }
        Loaded::Exterior(w) => check_exterior(&instance.name, w),
    }
}

fn flip_duality(b: &StructureBracket) -> bool {
    let f = flip_bracket(b);
    check_left_leibniz(b).holds() == check_right_leibniz(&f).holds()
        && check_right_leibniz(b).holds() == check_left_leibniz(&f).holds()
}

pub fn check_module(name: &str, m: &BracketOnModule) -> Result<Report, Error> {
    let mut report = Report::new(name);
    let c = classify(m)?;
    report.fact("left Leibniz", &c.left_loday);
    report.fact("right Leibniz", &c.right_loday);
    report.fact("antisymmetric", &c.antisymmetric);
    report.fact("Jacobi", &c.jacobi);
    report.fact("Lie", &c.lie);
    report.fact("left quasi-algebroid", &c.left_quasi_algebroid);
    report.fact("right quasi-algebroid", &c.right_quasi_algebroid);
    report.fact("left anchor tensorial", &c.left_anchor_tensorial);
    report.fact("Lie algebroid", &c.lie_algebroid);

    let b = &m.bracket;
    if let Some(g) = guarded(&mut report, "graph closure matches left Leibniz", is_graph_closed(b))? {
        report.verify_bool(
            "graph closure matches left Leibniz",
            g.holds() == c.left_loday.holds(),
            graph(&g),
        );
    }
    report.verify_bool("flip exchanges left and right Leibniz", flip_duality(b), "");
    if c.antisymmetric.holds() {
        let check = "omni-Lie graph closure matches Jacobi";
        if let Some(g) = guarded(&mut report, check, weinstein_graph_closed(b))? {
            report.verify_bool(check, g.holds() == c.jacobi.holds(), graph(&g));
        }
    } else {
        report.not_applicable("omni-Lie graph closure matches Jacobi", "bracket is not antisymmetric");
    }
    if c.left_quasi_algebroid.holds() {
        let check = "anchor is a bracket morphism";
        if let Some(r) = guarded(&mut report, check, anchor_morphism_check(m, &c))? {
            report.verify(check, &r);
        }
    } else {
        report.not_applicable("anchor is a bracket morphism", "not a left quasi-algebroid");
    }
    biconditional(&mut report, "quasi-algebroid conditions", theorem_t3_check(m))?;
    if let Some(v) = guarded(&mut report, "opposite anchors", theorem_t4_check(m))? {
        report.verdict("opposite anchors", &v);
    }
    biconditional(&mut report, "Lie algebroid characterization", theorem_t5_check(m))?;
    if let Some(v) = guarded(&mut report, "rank-one QD-Loday is Lie", qd_empirical_check(m))? {
        report.verdict("rank-one QD-Loday is Lie", &v);
    }
    Ok(report)
}

pub fn check_omni(name: &str, dim: usize, samples: usize, elements: &[OmniElement], seed: u64) -> Result<Report, Error> {
    let mut report = Report::new(name).with_seed(seed);
    let check = format!("omni left Leibniz, basis grid and {samples} samples");
    if let Some(r) = guarded(&mut report, &check, omni_left_leibniz_check(dim, samples, seed))? {
        report.verify(&check, &r);
    }

    let n = elements.len();
    let mut listed = IdentityReport::pass();
    for a in elements {
        for b in elements {
            for c in elements {
                let lhs = omni_loday_bracket(a, &omni_loday_bracket(b, c)?)?;
                let rhs = omni_loday_bracket(&omni_loday_bracket(a, b)?, c)?.add(&omni_loday_bracket(b, &omni_loday_bracket(a, c)?)?);
                if lhs != rhs {
                    listed = IdentityReport::fail(loday_core::Witness::new(
                        "left Leibniz on listed elements",
                        vec![],
                        lhs.sub(&rhs).flatten(),
                    ));
                }
            }
        }
    }
    if n > 0 {
        report.verify(&format!("left Leibniz on {n} listed elements"), &listed);
    }

    let check = "jacobiator closed form";
    let mut rng = sampling::rng(seed);
    let mut triples = 0usize;
    let mut ok = true;
    for a in elements {
        for b in elements {
            for c in elements {
                if guarded(&mut report, check, jacobiator(a, b, c))?.is_none() {
                    ok = false;
                }
                triples += 1;
            }
        }
    }
    for _ in 0..samples {
        let [a, b, c] = random_omni_triple(&mut rng, dim);
        if guarded(&mut report, check, jacobiator(&a, &b, &c))?.is_none() {
            ok = false;
        }
        triples += 1;
    }
    if ok {
        report.verify_bool(check, true, format!("{triples} triples"));
    }
    if n >= 3 {
        let j = jacobiator(&elements[0], &elements[1], &elements[2])?;
        report.note(
            "jacobiator of elements 0, 1, 2",
            format!("phi {} x {}", fmt_vector(j.phi.entries()), fmt_vector(&j.x)),
        );
    }
    Ok(report)
}

fn expect(report: &mut Report, check: &str, want: &Option<DifferentialForm>, got: &DifferentialForm) {
    if let Some(w) = want {
        report.verify_bool(check, w == got, format!("expected {w}, computed {got}"));
    }
}

pub fn check_exterior(name: &str, w: &ExteriorWitness) -> Result<Report, Error> {
    let mut report = Report::new(name);
    let d = e1_defect(&w.f, &w.alpha, &w.beta)?;
    report.note("f", w.f.to_string());
    report.note("alpha", w.alpha.to_string());
    report.note("beta", w.beta.to_string());
    report.note("[[f alpha, beta]]", d.bracket_of_scaled.to_string());
    report.note("f [[alpha, beta]]", d.scaled_bracket.to_string());
    let tensorial = if d.difference.is_zero() { Status::Pass } else { Status::Fail };
    report.push("right tensorial at this triple", Role::Fact, tensorial, d.difference.to_string());
    let multiple = match d.multiple_of_beta {
        Some(true) => "yes",
        Some(false) => "no",
        None => "undecided",
    };
    report.note("difference is a function multiple of beta", multiple);
    expect(&mut report, "expected [[f alpha, beta]]", &w.expect_bracket_of_scaled, &d.bracket_of_scaled);
    expect(&mut report, "expected f [[alpha, beta]]", &w.expect_scaled_bracket, &d.scaled_bracket);
    Ok(report)
}
