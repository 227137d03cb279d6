//! Acceptance gate. Every criterion is exact; one line is printed per
//! criterion and the process fails if any of them fails.

use std::process::ExitCode;

use loday_core::algebroid::{anchor_morphism_check, classify, jacobiator, omni_left_leibniz_check, OmniElement};
use loday_core::bracket::{check_d_condition, check_jacobi, check_left_leibniz, d_generated_bracket, AssocAlgebra};
use loday_core::corpus;
use loday_core::exactmath::{rat, vector, MultiPoly, RatMatrix};
use loday_core::exterior::{dorfman_checks, e1_right_failure_witness, DifferentialForm};
use loday_core::suites::{self, rank_one_exhaustive, RandomSuite, SuiteConfig, SuiteOutcome, DEFAULT_SEED};

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn run_suite(name: &str, dim: usize, count: usize) -> Result<SuiteOutcome, String> {
    let suite: Box<dyn RandomSuite> = suites::find(name).ok_or_else(|| format!("no suite {name}"))?;
    let cfg = SuiteConfig {
        dim,
        count,
        seed: DEFAULT_SEED,
        ..suite.default_config()
    };
    let out = suite.run(&cfg).map_err(|e| e.to_string())?;
    if let Some(c) = &out.counterexample {
        return Err(format!("sample {}: {}", c.sample, c.message));
    }
    ensure(out.passed(), || format!("{}/{} agreements", out.agreements, out.checked))?;
    Ok(out)
}

fn graph_closure() -> Check {
    let out = run_suite("p1", 3, 500)?;
    ensure(out.checked == 500 && out.agreements == 500, || format!("{}/{}", out.agreements, out.checked))?;
    ensure(out.tally("antisymmetric agreements") == Some(500), || "antisymmetric clause incomplete".into())
}

fn e1_witness() -> Check {
    let w = e1_right_failure_witness().map_err(|e| e.to_string())?;
    let n = 6;
    let top = DifferentialForm::monomial(MultiPoly::constant(n, rat(-2)), &[0, 1, 2, 3, 4, 5]);
    ensure(w.bracket_of_scaled == top, || format!("[[x6·α, dx5]] = {}", w.bracket_of_scaled))?;
    ensure(w.scaled_bracket.is_zero(), || format!("x6·[[α, dx5]] = {}", w.scaled_bracket))
}

fn dorfman() -> Check {
    let r = dorfman_checks(3, 2, 50, DEFAULT_SEED).map_err(|e| e.to_string())?;
    ensure(r.leibniz_pass == 50 && r.anchor_pass == 50 && r.tensorial_pass == 50, || format!("{r:?}"))?;
    ensure(!r.residual.is_zero(), || "residual vanishes".into())
}

fn omni_grid(dim: usize) -> Vec<OmniElement> {
    let mut out = Vec::new();
    for a in 0..dim {
        for b in 0..dim {
            out.push(OmniElement::new(RatMatrix::unit(dim, a, b), vector::zeros(dim)).unwrap());
        }
    }
    for c in 0..dim {
        out.push(OmniElement::new(RatMatrix::zeros(dim, dim), vector::unit(dim, c)).unwrap());
    }
    out
}

fn omni() -> Check {
    let grid = omni_left_leibniz_check(2, 0, DEFAULT_SEED).map_err(|e| e.to_string())?;
    ensure(grid.holds(), || format!("dim-2 grid: {:?}", grid.witness()))?;
    let random = omni_left_leibniz_check(3, 200, DEFAULT_SEED).map_err(|e| e.to_string())?;
    ensure(random.holds(), || format!("dim-3 samples: {:?}", random.witness()))?;
    let g = omni_grid(2);
    for a in &g {
        for b in &g {
            for c in &g {
                jacobiator(a, b, c).map_err(|e| e.to_string())?;
            }
        }
    }
    run_suite("omni", 3, 200).map(|_| ())
}

fn quasi_derivations() -> Check {
    let out = run_suite("quasider", 2, 100)?;
    ensure(out.checked == 100, || format!("{} pairs", out.checked))
}

fn anchor_morphism() -> Check {
    let mut covered = Vec::new();
    for e in corpus::corpus() {
        let b = e.instance.as_module().map_err(|err| format!("{}: {err}", e.name))?;
        let r = classify(&b).map_err(|err| format!("{}: {err}", e.name))?;
        if !r.left_quasi_algebroid.holds() {
            continue;
        }
        let m = anchor_morphism_check(&b, &r).map_err(|err| format!("{}: {err}", e.name))?;
        ensure(m.holds(), || format!("{}: {:?}", e.name, m.witness()))?;
        covered.push(e.name);
    }
    ensure(covered.contains(&"dorfman-shadow"), || "Dorfman shadow not classified left quasi".into())
}

fn lie_algebroid_characterization() -> Check {
    let out = run_suite("t5", 3, 200)?;
    ensure(out.checked == 200, || format!("{} instances", out.checked))
}

fn generation() -> Check {
    let m2 = AssocAlgebra::matrix_algebra(2);
    let (sum, proj) = corpus::d_projector_operator();
    let cases = [
        ("identity", m2.clone(), RatMatrix::identity(4)),
        ("projector", sum, proj),
        ("zero", m2, RatMatrix::zeros(4, 4)),
    ];
    for (name, a, d) in cases {
        let (l, r) = check_d_condition(&a, &d).map_err(|e| e.to_string())?;
        ensure(l.holds() && r.holds(), || format!("{name}: D-condition fails"))?;
        let b = d_generated_bracket(&a, &d).map_err(|e| format!("{name}: {e}"))?;
        ensure(check_left_leibniz(&b).holds(), || format!("{name}: left Leibniz fails"))?;
        if name == "identity" {
            ensure(check_jacobi(&b).holds(), || "identity: Jacobi fails".into())?;
        }
    }
    Ok(())
}

fn weinstein() -> Check {
    let out = run_suite("weinstein", 3, 200)?;
    ensure(out.checked == 200, || format!("{} instances", out.checked))?;
    let hs = corpus::hemisemidirect_sl2();
    ensure(check_left_leibniz(&hs).holds(), || "hemisemidirect sl2 fails left Leibniz".into())?;
    let j = check_jacobi(&hs);
    ensure(j.witness().is_some(), || "hemisemidirect sl2 passes Jacobi".into())
}

fn rank_one() -> Check {
    let out = rank_one_exhaustive().map_err(|e| e.to_string())?;
    match &out.counterexample {
        Some(c) => Err(format!(
            "{} QD-Loday brackets are not Lie, {} are; first: {}",
            out.tally("QD-Loday but not Lie").unwrap_or(0),
            out.tally("QD-Loday and Lie").unwrap_or(0),
            c.message
        )),
        None => Ok(()),
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("graph closure ⟺ left Leibniz, 500 dim-3 brackets", graph_closure),
        ("e1 right-failure witness values", e1_witness),
        ("Dorfman suite n=3, degree 2, 50 samples", dorfman),
        ("omni-Loday left Leibniz and jacobiator", omni),
        ("quasi-derivation hat identities, 100 pairs", quasi_derivations),
        ("anchor is a morphism on left quasi-algebroid corpus", anchor_morphism),
        ("Lie algebroid characterization, 200 instances", lie_algebroid_characterization),
        ("D-generated brackets: identity, projector, zero", generation),
        ("omni-Lie graph ⟺ Jacobi; hemisemidirect sl2", weinstein),
        ("rank-one QD-Loday brackets are Lie", rank_one),
    ];
    let mut failed = 0;
    for (i, (label, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(()) => println!("criterion {:>2}: PASS  {label}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {label}: {msg}", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
