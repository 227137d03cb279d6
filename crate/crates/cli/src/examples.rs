//! Built-in examples. Every corpus entry is one, along with the exterior
//! and omni witnesses and a few seeded suites that have no instance file.

use loday_core::algebroid::OmniElement;
use loday_core::corpus::{self, CorpusEntry};
use loday_core::exactmath::{rat, vector, MultiPoly, RatMatrix};
use loday_core::exterior::{dorfman_checks, e1_leibniz_suite, e1_zero_anchor_check, DifferentialForm};
use loday_core::suites::rank_one_exhaustive;
use loday_core::Error;

use crate::instance::{ExteriorWitness, InstanceFile};
use crate::pipeline::{self, Settings};
use crate::report::Report;

pub trait BuiltinExample {
    fn name(&self) -> &str;
    fn description(&self) -> &str;
    /// The instance file, for examples that are checked through one.
    fn instance(&self) -> Option<InstanceFile> {
        None
    }
    fn run(&self, s: &Settings) -> Result<Report, Error> {
        let file = self.instance().expect("examples without an instance override run");
        let loaded = file.load().expect("built-in instances are valid");
        pipeline::check(&loaded, s)
    }
}

struct CorpusExample(CorpusEntry);

impl BuiltinExample for CorpusExample {
    fn name(&self) -> &str {
        self.0.name
    }
    fn description(&self) -> &str {
        self.0.description
    }
    fn instance(&self) -> Option<InstanceFile> {
        Some(InstanceFile::from_instance(self.0.name, self.0.description, &self.0.instance))
    }
}

/// An example backed by a fixed instance file built in code.
struct FileExample {
    name: &'static str,
    description: &'static str,
    build: fn(&'static str, &'static str) -> InstanceFile,
}

impl BuiltinExample for FileExample {
    fn name(&self) -> &str {
        self.name
    }
    fn description(&self) -> &str {
        self.description
    }
    fn instance(&self) -> Option<InstanceFile> {
        Some((self.build)(self.name, self.description))
    }
}

fn e1_witness_file(name: &str, description: &str) -> InstanceFile {
    let n = 6;
    let w = ExteriorWitness {
        f: MultiPoly::var(n, 5),
        alpha: DifferentialForm::monomial(MultiPoly::one(n), &[0, 1, 2, 3]),
        beta: DifferentialForm::dx(n, 4),
        expect_bracket_of_scaled: Some(DifferentialForm::monomial(
            MultiPoly::constant(n, rat(-2)),
            &[0, 1, 2, 3, 4, 5],
        )),
        expect_scaled_bracket: Some(DifferentialForm::zero(n)),
    };
    InstanceFile::from_exterior(name, description, &w)
}

fn e1_nonconstant_file(name: &str, description: &str) -> InstanceFile {
    let n = 6;
    let w = ExteriorWitness {
        f: MultiPoly::var(n, 5),
        alpha: DifferentialForm::monomial(MultiPoly::var(n, 0), &[1, 2, 3, 4]),
        beta: DifferentialForm::dx(n, 0),
        expect_bracket_of_scaled: Some(DifferentialForm::monomial(
            MultiPoly::var(n, 0).scale(&rat(-2)),
            &[0, 1, 2, 3, 4, 5],
        )),
        expect_scaled_bracket: Some(DifferentialForm::zero(n)),
    };
    InstanceFile::from_exterior(name, description, &w)
}

fn omni_elements(dim: usize) -> Vec<OmniElement> {
    let e = |i, j| RatMatrix::unit(dim, i, j);
    vec![
        OmniElement::new(e(0, 1), vector::unit(dim, 0)).expect("square"),
        OmniElement::new(e(1, 0), vector::unit(dim, 1)).expect("square"),
        OmniElement::new(RatMatrix::identity(dim), vector::unit(dim, 0)).expect("square"),
    ]
}

fn omni_jacobiator_file(name: &str, description: &str) -> InstanceFile {
    InstanceFile::from_omni(name, description, 2, Some(50), &omni_elements(2))
}

fn omni_grid_file(name: &str, description: &str) -> InstanceFile {
    InstanceFile::from_omni(name, description, 2, Some(0), &[])
}

fn omni_random_file(name: &str, description: &str) -> InstanceFile {
    InstanceFile::from_omni(name, description, 3, Some(200), &[])
}

struct DorfmanExample;

impl BuiltinExample for DorfmanExample {
    fn name(&self) -> &str {
        "dorfman-checks"
    }
    fn description(&self) -> &str {
        "Dorfman bracket on Q^3: left Leibniz, anchor, tensoriality and the right residual"
    }
    fn run(&self, s: &Settings) -> Result<Report, Error> {
        let samples = s.samples.unwrap_or(50);
        let mut report = Report::new(self.name()).with_seed(s.seed);
        let r = match dorfman_checks(3, s.degree, samples, s.seed) {
            Ok(r) => r,
            Err(e) if e.is_invariant_violation() => {
                report.verify_bool("Dorfman identities", false, e.to_string());
                return Ok(report);
            }
            Err(e) => return Err(e),
        };
        let frac = |k: usize| format!("{k}/{samples}");
        report.verify_bool("left Leibniz", r.leibniz_pass == samples, frac(r.leibniz_pass));
        report.verify_bool("anchor is a morphism", r.anchor_pass == samples, frac(r.anchor_pass));
        report.verify_bool("left tensorial", r.tensorial_pass == samples, frac(r.tensorial_pass));
        let (x, y, f) = &r.witness;
        report.note("right residual witness", format!("s1 = {x}, s2 = {y}, f = {f}"));
        report.verify_bool("right residual is nonzero", !r.residual.is_zero(), r.residual.to_string());
        Ok(report)
    }
}

struct E1LeibnizExample;

impl BuiltinExample for E1LeibnizExample {
    fn name(&self) -> &str {
        "e1-leibniz"
    }
    fn description(&self) -> &str {
        "da∧b − b∧da on Q^6: Leibniz defects against their closed form and the zero left anchor"
    }
    fn run(&self, s: &Settings) -> Result<Report, Error> {
        let samples = s.samples.unwrap_or(100);
        let mut report = Report::new(self.name()).with_seed(s.seed);
        match e1_leibniz_suite(6, samples, s.seed, 3, s.degree) {
            Ok(r) => {
                report.verify_bool(
                    "every defect matches the closed form",
                    true,
                    format!("{} hold, {} predicted defects", r.holds, r.predicted_failures),
                );
            }
            Err(e) if e.is_invariant_violation() => {
                report.verify_bool("every defect matches the closed form", false, e.to_string());
            }
            Err(e) => return Err(e),
        }
        report.verify("left anchor is zero", &e1_zero_anchor_check(6, samples, s.seed, 3, s.degree)?);
        Ok(report)
    }
}

struct RankOneExhaustive;

impl BuiltinExample for RankOneExhaustive {
    fn name(&self) -> &str {
        "qd-rank1-exhaustive"
    }
    fn description(&self) -> &str {
        "all QD-Loday brackets on A = F = Q[x]/(x^2) with generator coefficients in {-2..2}: are they Lie?"
    }
    fn run(&self, _: &Settings) -> Result<Report, Error> {
        let out = rank_one_exhaustive()?;
        let mut report = Report::new(self.name());
        for (label, count) in &out.tallies {
            report.note(label, count.to_string());
        }
        let detail = out.counterexample.as_ref().map(|c| c.message.clone()).unwrap_or_default();
        report.verify_bool("every QD-Loday bracket is Lie", out.counterexample.is_none(), detail);
        Ok(report)
    }
}

pub fn registry() -> Vec<Box<dyn BuiltinExample>> {
    let mut out: Vec<Box<dyn BuiltinExample>> =
        corpus::corpus().into_iter().map(|e| Box::new(CorpusExample(e)) as Box<dyn BuiltinExample>).collect();
    let files = [
        FileExample {
            name: "e1-witness",
            description: "f = x6, alpha = dx1∧dx2∧dx3∧dx4, beta = dx5: [[f alpha, beta]] ≠ f [[alpha, beta]]",
            build: e1_witness_file,
        },
        FileExample {
            name: "e1-nonconstant",
            description: "f = x6, alpha = x1 dx2∧…∧dx5, beta = dx1: the same failure with a non-constant alpha",
            build: e1_nonconstant_file,
        },
        FileExample {
            name: "omni-jacobiator",
            description: "omni-Loday bracket on gl(2) x Q^2: jacobiator closed form on listed and random triples",
            build: omni_jacobiator_file,
        },
        FileExample {
            name: "omni-loday-grid",
            description: "omni-Loday left Leibniz on every basis triple in dimension 2",
            build: omni_grid_file,
        },
        FileExample {
            name: "omni-loday-random",
            description: "omni-Loday left Leibniz on the dimension-3 basis grid and 200 random triples",
            build: omni_random_file,
        },
    ];
    out.extend(files.into_iter().map(|f| Box::new(f) as Box<dyn BuiltinExample>));
    out.push(Box::new(DorfmanExample));
    out.push(Box::new(E1LeibnizExample));
    out.push(Box::new(RankOneExhaustive));
    out
}

pub fn find(name: &str) -> Option<Box<dyn BuiltinExample>> {
    registry().into_iter().find(|e| e.name() == name)
}
