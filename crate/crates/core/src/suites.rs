//! Seeded randomized suites, registered by name behind [`RandomSuite`].
//!
//! Each suite evaluates both sides of an equivalence (or both routes of a
//! computation) on generated instances. A disagreement is returned as a
//! [`Counterexample`] carrying the offending instance, never as a panic.

use rand::Rng;

use crate::algebroid::{
    is_graph_closed, jacobiator, omni_left_leibniz_check, qd_empirical_check, random_omni_triple,
    theorem_t5_check, BracketOnModule,
};
use crate::bracket::{
    check_jacobi, check_left_leibniz, check_lie, check_right_leibniz, flip_bracket, weinstein_graph_closed,
    AssocAlgebra, StructureBracket,
};
use crate::corpus::{self, Instance};
use crate::exactmath::{rat, RatMatrix, Rational};
use crate::exterior::{dorfman_checks, e1_leibniz_suite, e1_zero_anchor_check};
use crate::quasider::{
    check_c2_formula, hat_is_lie_morphism, is_quasi_derivation, quasi_derivation_basis, AlgebraModulePair,
    DerivationOfA, QDerOutcome, QuasiDerivationRecord,
};
use crate::sampling::{self, SeededRng};
use crate::{Result, Verdict};

pub use crate::DEFAULT_SEED;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub dim: usize,
    pub count: usize,
    pub seed: u64,
    /// Polynomial degree bound for the exterior suites.
    pub degree: u32,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Counterexample {
    pub sample: usize,
    pub message: String,
    pub instance: Option<Instance>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteOutcome {
    pub suite: &'static str,
    pub config: SuiteConfig,
    pub checked: usize,
    pub agreements: usize,
    /// Secondary counts, e.g. how many samples landed on the positive side.
    pub tallies: Vec<(String, usize)>,
    pub counterexample: Option<Counterexample>,
}

impl SuiteOutcome {
    fn new(suite: &'static str, config: &SuiteConfig) -> Self {
        SuiteOutcome {
            suite,
            config: config.clone(),
            checked: 0,
            agreements: 0,
            tallies: Vec::new(),
            counterexample: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.counterexample.is_none() && self.agreements == self.checked
    }

    pub fn tally(&self, label: &str) -> Option<usize> {
        self.tallies.iter().find(|(l, _)| l == label).map(|(_, c)| *c)
    }

    fn bump(&mut self, label: &str) {
        match self.tallies.iter_mut().find(|(l, _)| l == label) {
            Some((_, c)) => *c += 1,
            None => self.tallies.push((label.to_string(), 1)),
        }
    }

    fn touch(&mut self, label: &str) {
        if self.tally(label).is_none() {
            self.tallies.push((label.to_string(), 0));
        }
    }

    /// Records one sample. Returns false (stop) on disagreement.
    fn record(&mut self, sample: usize, agree: bool, message: impl FnOnce() -> String, instance: Option<Instance>) -> bool {
        self.checked += 1;
        if agree {
            self.agreements += 1;
            return true;
        }
        self.counterexample = Some(Counterexample {
            sample,
            message: message(),
            instance,
        });
        false
    }

    /// Turns an invariant violation raised inside a checker into a
    /// counterexample; other errors propagate.
    fn guard<T>(&mut self, sample: usize, r: Result<T>, instance: impl FnOnce() -> Option<Instance>) -> Result<Option<T>> {
        match r {
            Ok(v) => Ok(Some(v)),
            Err(e) if e.is_invariant_violation() => {
                self.checked += 1;
                self.counterexample = Some(Counterexample {
                    sample,
                    message: e.to_string(),
                    instance: instance(),
                });
                Ok(None)
            }
            Err(e) => Err(e),
        }
    }
}

pub trait RandomSuite {
    fn name(&self) -> &'static str;
    fn description(&self) -> &'static str;
    fn default_config(&self) -> SuiteConfig;
    fn run(&self, config: &SuiteConfig) -> Result<SuiteOutcome>;
    /// True when `dim` counts coordinate variables rather than the
    /// dimension of a bracket.
    fn counts_variables(&self) -> bool {
        false
    }
}

const ENTRY_RANGE: i64 = 2;

fn config(dim: usize, count: usize) -> SuiteConfig {
    SuiteConfig {
        dim,
        count,
        seed: DEFAULT_SEED,
        degree: 2,
    }
}

/// Graph closure versus left Leibniz on general brackets, and closure
/// versus Lie on antisymmetric ones.
pub struct GraphClosureSuite;

impl RandomSuite for GraphClosureSuite {
    fn name(&self) -> &'static str {
        "p1"
    }
    fn description(&self) -> &'static str {
        "omni-Loday graph closure ⟺ left Leibniz; for antisymmetric brackets closure ⟺ Lie"
    }
    fn default_config(&self) -> SuiteConfig {
        config(3, 500)
    }
    fn run(&self, cfg: &SuiteConfig) -> Result<SuiteOutcome> {
        let mut out = SuiteOutcome::new(self.name(), cfg);
        out.touch("closed");
        out.touch("antisymmetric closed");
        let mut rng = sampling::rng(cfg.seed);
        for s in 0..cfg.count {
            let b = sampling::random_bracket(&mut rng, cfg.dim, ENTRY_RANGE);
            let Some(closed) = out.guard(s, is_graph_closed(&b), || Some(Instance::Bracket(b.clone())))? else {
                return Ok(out);
            };
            let leibniz = check_left_leibniz(&b).holds();
            if closed.holds() {
                out.bump("closed");
            }
            let msg = || format!("graph closed = {}, left Leibniz = {leibniz}", closed.holds());
            if !out.record(s, closed.holds() == leibniz, msg, Some(Instance::Bracket(b.clone()))) {
                return Ok(out);
            }
        }
        let mut agree = 0;
        for s in 0..cfg.count {
            let b = sampling::random_antisymmetric_bracket(&mut rng, cfg.dim, ENTRY_RANGE);
            let Some(closed) = out.guard(s, is_graph_closed(&b), || Some(Instance::Bracket(b.clone())))? else {
                return Ok(out);
            };
            let lie = check_lie(&b).holds();
            if closed.holds() != lie {
                out.counterexample = Some(Counterexample {
                    sample: s,
                    message: format!("antisymmetric: graph closed = {}, Lie = {lie}", closed.holds()),
                    instance: Some(Instance::Bracket(b)),
                });
                return Ok(out);
            }
            agree += 1;
            if lie {
                out.bump("antisymmetric closed");
            }
        }
        out.tallies.push(("antisymmetric agreements".to_string(), agree));
        Ok(out)
    }
}

/// `Q[x]/(x^2) ⊕ Q` with `x` killing the second summand (dimension 3). The
/// module is not free, so the characterization is tested away from the
/// rank-one case.
pub fn t5_module() -> AlgebraModulePair {
    let a = AssocAlgebra::truncated_polynomials(1, 1);
    let mut mu_x = RatMatrix::zeros(3, 3);
    mu_x.set(1, 0, rat(1));
    AlgebraModulePair::new(a, vec![RatMatrix::identity(3), mu_x]).expect("valid module")
}

/// Lie algebroid ⟺ antisymmetric with a closed graph satisfying the
/// anchor condition, on random antisymmetric brackets over [`t5_module`].
pub struct LieAlgebroidSuite;

impl RandomSuite for LieAlgebroidSuite {
    fn name(&self) -> &'static str {
        "t5"
    }
    fn description(&self) -> &'static str {
        "Lie algebroid ⟺ antisymmetric + graph closure with anchor, over Q[x]/(x^2) ⊕ Q"
    }
    fn default_config(&self) -> SuiteConfig {
        config(3, 200)
    }
    fn run(&self, cfg: &SuiteConfig) -> Result<SuiteOutcome> {
        let mut out = SuiteOutcome::new(self.name(), cfg);
        out.touch("lie algebroid");
        let pair = t5_module();
        let mut rng = sampling::rng(cfg.seed);
        for s in 0..cfg.count {
            let b = sampling::random_antisymmetric_bracket(&mut rng, 3, ENTRY_RANGE);
            let m = BracketOnModule::new(pair.clone(), b)?;
            let Some(bi) = out.guard(s, theorem_t5_check(&m), || Some(Instance::Module(m.clone())))? else {
                return Ok(out);
            };
            if bi.lhs.holds() {
                out.bump("lie algebroid");
            }
            let msg = || format!("lie algebroid = {}, characterization = {}", bi.lhs.holds(), bi.rhs.holds());
            if !out.record(s, bi.agree(), msg, Some(Instance::Module(m.clone()))) {
                return Ok(out);
            }
        }
        Ok(out)
    }
}

/// The flip `[x, y]' = [y, x]` is an involution exchanging left and right
/// Leibniz, on brackets of every dimension up to `dim`.
pub struct FlipSuite;

impl RandomSuite for FlipSuite {
    fn name(&self) -> &'static str {
        "flip"
    }
    fn description(&self) -> &'static str {
        "flip is an involution exchanging left and right Leibniz"
    }
    fn default_config(&self) -> SuiteConfig {
        config(3, 500)
    }
    fn run(&self, cfg: &SuiteConfig) -> Result<SuiteOutcome> {
        let mut out = SuiteOutcome::new(self.name(), cfg);
        out.touch("left Loday");
        let mut rng = sampling::rng(cfg.seed);
        for s in 0..cfg.count {
            let dim = rng.gen_range(1..=cfg.dim.max(1));
            let b = sampling::random_bracket(&mut rng, dim, ENTRY_RANGE);
            let f = flip_bracket(&b);
            let (l, r) = (check_left_leibniz(&b).holds(), check_right_leibniz(&b).holds());
            let (fl, fr) = (check_left_leibniz(&f).holds(), check_right_leibniz(&f).holds());
            if l {
                out.bump("left Loday");
            }
            let agree = flip_bracket(&f) == b && l == fr && r == fl;
            let msg = || format!("left {l}, right {r}; flipped left {fl}, right {fr}");
            if !out.record(s, agree, msg, Some(Instance::Bracket(b.clone()))) {
                return Ok(out);
            }
        }
        Ok(out)
    }
}

/// Closure of the adjoint graph under the omni-Lie bracket versus Jacobi.
pub struct WeinsteinSuite;

impl RandomSuite for WeinsteinSuite {
    fn name(&self) -> &'static str {
        "weinstein"
    }
    fn description(&self) -> &'static str {
        "omni-Lie graph closure ⟺ Jacobi for antisymmetric brackets"
    }
    fn default_config(&self) -> SuiteConfig {
        config(3, 200)
    }
    fn run(&self, cfg: &SuiteConfig) -> Result<SuiteOutcome> {
        let mut out = SuiteOutcome::new(self.name(), cfg);
        out.touch("jacobi");
        let mut rng = sampling::rng(cfg.seed);
        for s in 0..cfg.count {
            let b = sampling::random_antisymmetric_bracket(&mut rng, cfg.dim, ENTRY_RANGE);
            let Some(closed) = out.guard(s, weinstein_graph_closed(&b), || Some(Instance::Bracket(b.clone())))? else {
                return Ok(out);
            };
            let jacobi = check_jacobi(&b).holds();
            if jacobi {
                out.bump("jacobi");
            }
            let msg = || format!("graph closed = {}, Jacobi = {jacobi}", closed.holds());
            if !out.record(s, closed.holds() == jacobi, msg, Some(Instance::Bracket(b.clone()))) {
                return Ok(out);
            }
        }
        Ok(out)
    }
}

/// Left Leibniz for the omni-Loday bracket on the basis grid and on random
/// triples, plus the closed form of the jacobiator on the same triples.
pub struct OmniSuite;

impl RandomSuite for OmniSuite {
    fn name(&self) -> &'static str {
        "omni"
    }
    fn description(&self) -> &'static str {
        "omni-Loday left Leibniz (grid and random) and jacobiator closed form"
    }
    fn default_config(&self) -> SuiteConfig {
        config(3, 200)
    }
    fn run(&self, cfg: &SuiteConfig) -> Result<SuiteOutcome> {
        let mut out = SuiteOutcome::new(self.name(), cfg);
        let Some(r) = out.guard(0, omni_left_leibniz_check(cfg.dim, cfg.count, cfg.seed), || None)? else {
            return Ok(out);
        };
        let msg = || r.witness().map(ToString::to_string).unwrap_or_default();
        if !out.record(0, r.holds(), msg, None) {
            return Ok(out);
        }
        let mut rng = sampling::rng(cfg.seed.wrapping_add(1));
        for s in 0..cfg.count {
            let [a, b, c] = random_omni_triple(&mut rng, cfg.dim);
            if out.guard(s, jacobiator(&a, &b, &c), || None)?.is_none() {
                return Ok(out);
            }
            out.bump("jacobiator triples");
        }
        Ok(out)
    }
}

/// `Q[x]/(x^3)` acting on `A^2`, the module of the quasi-derivation suite.
pub fn quasider_module() -> AlgebraModulePair {
    AlgebraModulePair::free(AssocAlgebra::truncated_polynomials(1, 2), 2).expect("free module")
}

fn random_qder(rng: &mut SeededRng, basis: &[QuasiDerivationRecord], n: usize, m: usize) -> QuasiDerivationRecord {
    let mut d = RatMatrix::zeros(n, n);
    let mut hat = RatMatrix::zeros(m, m);
    for r in basis {
        let c = sampling::small_int(rng, ENTRY_RANGE);
        d = &d + &r.d.scale(&c);
        hat = &hat + &r.hat.matrix.scale(&c);
    }
    QuasiDerivationRecord {
        d,
        hat: DerivationOfA { matrix: hat },
    }
}

/// Random pairs of quasi-derivations of [`quasider_module`]: the induced map
/// is a derivation and linear in `D`, the hat of a commutator is the
/// commutator of hats, and `[D1, f D2] = f [D1, D2] + hat(D1)(f) D2`.
pub struct QuasiDerivationSuite;

impl RandomSuite for QuasiDerivationSuite {
    fn name(&self) -> &'static str {
        "quasider"
    }
    fn description(&self) -> &'static str {
        "hat is a derivation, a Lie morphism, and satisfies the module formula, on A = Q[x]/(x^3), F = A^2"
    }
    fn default_config(&self) -> SuiteConfig {
        config(2, 100)
    }
    fn run(&self, cfg: &SuiteConfig) -> Result<SuiteOutcome> {
        let mut out = SuiteOutcome::new(self.name(), cfg);
        let pair = quasider_module();
        let (n, m) = (pair.module_dim(), pair.algebra_dim());
        let basis = quasi_derivation_basis(&pair)?;
        out.tallies.push(("basis size".to_string(), basis.len()));
        let mut rng = sampling::rng(cfg.seed);
        for s in 0..cfg.count {
            let d1 = random_qder(&mut rng, &basis, n, m);
            let d2 = random_qder(&mut rng, &basis, n, m);
            let f = sampling::int_vector(&mut rng, m, ENTRY_RANGE);
            let mut failure = None;
            for (which, d) in [("D1", &d1), ("D2", &d2)] {
                match is_quasi_derivation(&pair, &d.d)? {
                    QDerOutcome::QDer(r) if r.hat == d.hat => {}
                    QDerOutcome::QDer(_) => failure = Some(format!("hat of {which} is not linear in D")),
                    QDerOutcome::NotQDer { .. } => failure = Some(format!("{which} left the quasi-derivations")),
                }
                if let Some(w) = d.hat.check_leibniz(pair.algebra()).witness() {
                    failure = Some(format!("hat of {which} is not a derivation: {w}"));
                }
            }
            let Some(c1) = out.guard(s, hat_is_lie_morphism(&pair, &d1, &d2), || None)? else {
                return Ok(out);
            };
            if let Some(w) = c1.witness() {
                failure = Some(format!("hat is not a Lie morphism: {w}"));
            }
            if let Some(w) = check_c2_formula(&pair, &d1, &d2, &f)?.witness() {
                failure = Some(format!("module formula fails: {w}"));
            }
            if !out.record(s, failure.is_none(), || failure.clone().unwrap_or_default(), None) {
                return Ok(out);
            }
        }
        Ok(out)
    }
}

/// Basis of `QDer(Q[x]/(x^2))` acting on itself: `mu_1`, `mu_x` and the
/// Euler derivation `x d/dx`.
fn rank_one_generators() -> [RatMatrix; 3] {
    [
        RatMatrix::identity(2),
        RatMatrix::from_i64(2, 2, &[0, 0, 1, 0]),
        RatMatrix::from_i64(2, 2, &[0, 0, 0, 1]),
    ]
}

/// The bracket on `F = A = Q[x]/(x^2)` whose left adjoints are
/// `ad(e_i) = sum_k c[3i + k] · generator_k`.
pub fn rank_one_bracket(coeffs: &[Rational; 6]) -> BracketOnModule {
    let g = rank_one_generators();
    let ad: Vec<RatMatrix> = (0..2)
        .map(|i| (0..3).fold(RatMatrix::zeros(2, 2), |acc, k| &acc + &g[k].scale(&coeffs[3 * i + k])))
        .collect();
    let b = StructureBracket::from_fn(2, |i, j, k| ad[i].get(k, j).clone());
    let pair = AlgebraModulePair::regular(AssocAlgebra::truncated_polynomials(1, 1)).expect("regular module");
    BracketOnModule::new(pair, b).expect("dimension 2").with_free_rank_one(true)
}

fn rank_one_check(out: &mut SuiteOutcome, s: usize, label: &str, b: BracketOnModule) -> Result<bool> {
    let Some(v) = out.guard(s, qd_empirical_check(&b), || Some(Instance::Module(b.clone())))? else {
        return Ok(false);
    };
    match v {
        Verdict::NotApplicable(_) => {
            out.bump("not QD-Loday");
            Ok(true)
        }
        Verdict::Holds => {
            out.bump("QD-Loday and Lie");
            Ok(out.record(s, true, String::new, None))
        }
        Verdict::Fails(w) => {
            out.bump("QD-Loday but not Lie");
            let msg = || format!("{label}: QD-Loday but not Lie: {w}");
            Ok(out.record(s, false, msg, Some(Instance::Module(b))))
        }
    }
}

/// Every bracket in the rank-one corpus and the full coefficient grid
/// `{-2..2}^6` over the quasi-derivation generators. Unlike the random
/// suites this does not stop at the first counterexample; the first one is
/// kept and the rest are counted.
pub fn rank_one_exhaustive() -> Result<SuiteOutcome> {
    let cfg = config(2, 0);
    let mut out = SuiteOutcome::new("qd-rank1-exhaustive", &cfg);
    out.touch("QD-Loday and Lie");
    out.touch("QD-Loday but not Lie");
    let mut first = None;
    let mut keep_first = |out: &mut SuiteOutcome| {
        if first.is_none() {
            first = out.counterexample.take();
        } else {
            out.counterexample = None;
        }
    };
    for (s, e) in corpus::rank_one_corpus().into_iter().enumerate() {
        rank_one_check(&mut out, s, e.name, e.instance.as_module()?)?;
        keep_first(&mut out);
    }
    let values: Vec<Rational> = (-ENTRY_RANGE..=ENTRY_RANGE).map(rat).collect();
    let base = values.len();
    for code in 0..base.pow(6) {
        let mut coeffs: [Rational; 6] = std::array::from_fn(|_| rat(0));
        let mut c = code;
        for slot in coeffs.iter_mut() {
            *slot = values[c % base].clone();
            c /= base;
        }
        rank_one_check(&mut out, code, &format!("grid point {code}"), rank_one_bracket(&coeffs))?;
        keep_first(&mut out);
    }
    out.counterexample = first;
    Ok(out)
}

/// Random left-adjoint assignments on `F = A = Q[x]/(x^2)`; every
/// QD-Loday bracket must be Lie.
pub struct RankOneSuite;

impl RandomSuite for RankOneSuite {
    fn name(&self) -> &'static str {
        "qd-rank1"
    }
    fn description(&self) -> &'static str {
        "on A = F = Q[x]/(x^2): brackets with all adjoints quasi-derivations and left Leibniz are Lie"
    }
    fn default_config(&self) -> SuiteConfig {
        config(2, 500)
    }
    fn run(&self, cfg: &SuiteConfig) -> Result<SuiteOutcome> {
        let mut out = SuiteOutcome::new(self.name(), cfg);
        out.touch("QD-Loday and Lie");
        let mut rng = sampling::rng(cfg.seed);
        for s in 0..cfg.count {
            let coeffs: [Rational; 6] = std::array::from_fn(|_| sampling::small_int(&mut rng, ENTRY_RANGE));
            if !rank_one_check(&mut out, s, &format!("sample {s}"), rank_one_bracket(&coeffs))? {
                return Ok(out);
            }
        }
        Ok(out)
    }
}

fn all_checked(out: &mut SuiteOutcome, n: usize) {
    out.checked += n;
    out.agreements += n;
}

/// Left Leibniz, anchor and tensoriality of the Dorfman bracket on `Q^dim`.
pub struct DorfmanSuite;

impl RandomSuite for DorfmanSuite {
    fn name(&self) -> &'static str {
        "dorfman"
    }
    fn description(&self) -> &'static str {
        "Dorfman bracket: left Leibniz, anchor identity, tensoriality, right residual"
    }
    fn default_config(&self) -> SuiteConfig {
        config(3, 50)
    }
    fn counts_variables(&self) -> bool {
        true
    }
    fn run(&self, cfg: &SuiteConfig) -> Result<SuiteOutcome> {
        let mut out = SuiteOutcome::new(self.name(), cfg);
        let Some(r) = out.guard(0, dorfman_checks(cfg.dim, cfg.degree, cfg.count, cfg.seed), || None)? else {
            return Ok(out);
        };
        all_checked(&mut out, r.samples);
        out.tallies.push(("left Leibniz".to_string(), r.leibniz_pass));
        out.tallies.push(("anchor".to_string(), r.anchor_pass));
        out.tallies.push(("tensorial".to_string(), r.tensorial_pass));
        Ok(out)
    }
}

/// Left Leibniz defects of `da∧b − b∧da` against their closed form, and the
/// zero left anchor.
pub struct E1Suite;

impl RandomSuite for E1Suite {
    fn name(&self) -> &'static str {
        "e1"
    }
    fn description(&self) -> &'static str {
        "da∧b − b∧da: Leibniz defect matches its closed form; [[a, f b]] = f [[a, b]]"
    }
    fn default_config(&self) -> SuiteConfig {
        config(6, 100)
    }
    fn counts_variables(&self) -> bool {
        true
    }
    fn run(&self, cfg: &SuiteConfig) -> Result<SuiteOutcome> {
        let mut out = SuiteOutcome::new(self.name(), cfg);
        let Some(r) = out.guard(0, e1_leibniz_suite(cfg.dim, cfg.count, cfg.seed, 3, cfg.degree), || None)? else {
            return Ok(out);
        };
        all_checked(&mut out, r.samples);
        out.tallies.push(("Leibniz holds".to_string(), r.holds));
        out.tallies.push(("predicted Leibniz defects".to_string(), r.predicted_failures));
        let anchor = e1_zero_anchor_check(cfg.dim, cfg.count, cfg.seed, 3, cfg.degree)?;
        let msg = || anchor.witness().map(ToString::to_string).unwrap_or_default();
        out.record(0, anchor.holds(), msg, None);
        Ok(out)
    }
}

pub fn registry() -> Vec<Box<dyn RandomSuite>> {
    vec![
        Box::new(GraphClosureSuite),
        Box::new(LieAlgebroidSuite),
        Box::new(FlipSuite),
        Box::new(WeinsteinSuite),
        Box::new(OmniSuite),
        Box::new(QuasiDerivationSuite),
        Box::new(RankOneSuite),
        Box::new(DorfmanSuite),
        Box::new(E1Suite),
    ]
}

pub fn find(name: &str) -> Option<Box<dyn RandomSuite>> {
    registry().into_iter().find(|s| s.name() == name)
}
