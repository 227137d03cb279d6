//! TOML instance files. Rationals are strings `"p"` or `"p/q"`; bracket
//! constants are sparse `[i, j, k, "c"]` rows meaning `[e_i, e_j]` has
//! coefficient `c` on `e_k` (0-based); differential forms are lists of
//! `[[indices], "poly"]` with 1-based `dx` indices.

use loday_core::algebroid::{BracketOnModule, OmniElement};
use loday_core::bracket::{AssocAlgebra, StructureBracket};
use loday_core::corpus::Instance;
use loday_core::exactmath::rational::fmt_rational;
use loday_core::exactmath::{parse_rational, vector, MultiPoly, RatMatrix, Rational};
use loday_core::exterior::{DifferentialForm, MAX_VARS};
use loday_core::quasider::AlgebraModulePair;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{location}: {message}")]
pub struct LoadError {
    pub location: String,
    pub message: String,
}

fn err(location: impl Into<String>, message: impl ToString) -> LoadError {
    LoadError {
        location: location.into(),
        message: message.to_string(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Bracket,
    AlgebraModuleBracket,
    Omni,
    ExteriorWitness,
}

pub type Entry3 = (usize, usize, usize, String);
pub type Entry2 = (usize, usize, String);
pub type FormTerms = Vec<(Vec<usize>, String)>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct BracketSection {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default)]
    pub entries: Vec<Entry3>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct AlgebraSection {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<Vec<String>>,
    #[serde(default)]
    pub products: Vec<Entry3>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct ModuleSection {
    pub dim: usize,
    /// `action[p]` lists the nonzero `[row, col, "c"]` of the matrix of `f_p`.
    pub action: Vec<Vec<Entry2>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct OmniElementSection {
    #[serde(default)]
    pub phi: Vec<Entry2>,
    pub x: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct OmniSection {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(default)]
    pub elements: Vec<OmniElementSection>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct ExteriorSection {
    pub nvars: usize,
    pub f: String,
    pub alpha: FormTerms,
    pub beta: FormTerms,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect_bracket_of_scaled: Option<FormTerms>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect_scaled_bracket: Option<FormTerms>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct InstanceFile {
    pub kind: Kind,
    pub name: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub description: String,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub free_rank_one: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bracket: Option<BracketSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<AlgebraSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module: Option<ModuleSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omni: Option<OmniSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exterior: Option<ExteriorSection>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExteriorWitness {
    pub f: MultiPoly,
    pub alpha: DifferentialForm,
    pub beta: DifferentialForm,
    pub expect_bracket_of_scaled: Option<DifferentialForm>,
    pub expect_scaled_bracket: Option<DifferentialForm>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Loaded {
    Bracket(StructureBracket),
    Module(BracketOnModule),
    Omni {
        dim: usize,
        samples: Option<usize>,
        elements: Vec<OmniElement>,
    },
    Exterior(ExteriorWitness),
}

#[derive(Debug, Clone, PartialEq)]
pub struct LoadedInstance {
    pub name: String,
    pub description: String,
    pub body: Loaded,
}

fn rational(location: impl FnOnce() -> String, s: &str) -> Result<Rational, LoadError> {
    parse_rational(s).map_err(|e| err(location(), format!("bad rational {s:?}: {e}")))
}

fn index(location: &str, what: &str, i: usize, bound: usize) -> Result<usize, LoadError> {
    if i < bound {
        Ok(i)
    } else {
        Err(err(location, format!("{what} index {i} out of range (dimension {bound})")))
    }
}

fn rational_vector(location: &str, v: &[String], dim: usize) -> Result<Vec<Rational>, LoadError> {
    if v.len() != dim {
        return Err(err(location, format!("expected {dim} components, found {}", v.len())));
    }
    v.iter()
        .enumerate()
        .map(|(i, s)| rational(|| format!("{location}[{i}]"), s))
        .collect()
}

fn constants(location: &str, dim: usize, entries: &[Entry3]) -> Result<Vec<Rational>, LoadError> {
    let mut c = vector::zeros(dim * dim * dim);
    for (n, (i, j, k, v)) in entries.iter().enumerate() {
        let loc = format!("{location}[{n}]");
        let (i, j, k) = (
            index(&loc, "first", *i, dim)?,
            index(&loc, "second", *j, dim)?,
            index(&loc, "target", *k, dim)?,
        );
        c[(i * dim + j) * dim + k] += rational(|| loc.clone(), v)?;
    }
    Ok(c)
}

fn sparse_matrix(location: &str, n: usize, entries: &[Entry2]) -> Result<RatMatrix, LoadError> {
    let mut m = RatMatrix::zeros(n, n);
    for (e, (r, c, v)) in entries.iter().enumerate() {
        let loc = format!("{location}[{e}]");
        let (r, c) = (index(&loc, "row", *r, n)?, index(&loc, "column", *c, n)?);
        let value = m.get(r, c) + rational(|| loc.clone(), v)?;
        m.set(r, c, value);
    }
    Ok(m)
}

fn form(location: &str, nvars: usize, terms: &FormTerms) -> Result<DifferentialForm, LoadError> {
    let mut parsed = Vec::with_capacity(terms.len());
    for (n, (idx, poly)) in terms.iter().enumerate() {
        let loc = format!("{location}[{n}]");
        let p = MultiPoly::parse(nvars, poly).map_err(|e| err(&loc, format!("bad polynomial {poly:?}: {e}")))?;
        parsed.push((idx.clone(), p));
    }
    DifferentialForm::from_terms(nvars, &parsed).map_err(|e| err(location, e))
}

fn require<'a, T>(section: &'a Option<T>, name: &str, kind: &str) -> Result<&'a T, LoadError> {
    section
        .as_ref()
        .ok_or_else(|| err(name, format!("section required for kind {kind}")))
}

fn load_bracket(section: &BracketSection) -> Result<StructureBracket, LoadError> {
    let c = constants("bracket.entries", section.dim, &section.entries)?;
    let b = StructureBracket::from_constants(section.dim, c).map_err(|e| err("bracket", e))?;
    match &section.labels {
        Some(l) => b.with_labels(l.clone()).map_err(|e| err("bracket.labels", e)),
        None => Ok(b),
    }
}

impl InstanceFile {
    pub fn parse(text: &str) -> Result<Self, LoadError> {
        toml::from_str(text).map_err(|e| err("syntax", e.to_string().trim_end()))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("instance files serialize")
    }

    /// Builds the domain objects; every invariant of the target types is
    /// re-checked by their constructors.
    pub fn load(&self) -> Result<LoadedInstance, LoadError> {
        let body = match self.kind {
            Kind::Bracket => Loaded::Bracket(load_bracket(require(&self.bracket, "bracket", "bracket")?)?),
            Kind::AlgebraModuleBracket => {
                let kind = "algebra-module-bracket";
                let a = require(&self.algebra, "algebra", kind)?;
                let m = require(&self.module, "module", kind)?;
                let b = require(&self.bracket, "bracket", kind)?;
                let unit = match &a.unit {
                    Some(u) => Some(rational_vector("algebra.unit", u, a.dim)?),
                    None => None,
                };
                let algebra = AssocAlgebra::new(a.dim, constants("algebra.products", a.dim, &a.products)?, unit)
                    .map_err(|e| err("algebra", e))?;
                if m.action.len() != a.dim {
                    return Err(err(
                        "module.action",
                        format!("expected one matrix per algebra basis element ({}), found {}", a.dim, m.action.len()),
                    ));
                }
                let action = m
                    .action
                    .iter()
                    .enumerate()
                    .map(|(p, e)| sparse_matrix(&format!("module.action[{p}]"), m.dim, e))
                    .collect::<Result<Vec<_>, _>>()?;
                let pair = AlgebraModulePair::new(algebra, action).map_err(|e| err("module", e))?;
                let bracket = load_bracket(b)?;
                let module = BracketOnModule::new(pair, bracket)
                    .map_err(|e| err("bracket", e))?
                    .with_free_rank_one(self.free_rank_one);
                Loaded::Module(module)
            }
            Kind::Omni => {
                let o = require(&self.omni, "omni", "omni")?;
                let elements = o
                    .elements
                    .iter()
                    .enumerate()
                    .map(|(n, e)| {
                        let loc = format!("omni.elements[{n}]");
                        let phi = sparse_matrix(&format!("{loc}.phi"), o.dim, &e.phi)?;
                        let x = rational_vector(&format!("{loc}.x"), &e.x, o.dim)?;
                        OmniElement::new(phi, x).map_err(|e| err(&loc, e))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Loaded::Omni {
                    dim: o.dim,
                    samples: o.samples,
                    elements,
                }
            }
            Kind::ExteriorWitness => {
                let x = require(&self.exterior, "exterior", "exterior-witness")?;
                if x.nvars == 0 || x.nvars > MAX_VARS {
                    return Err(err("exterior.nvars", format!("must be between 1 and {MAX_VARS}")));
                }
                let n = x.nvars;
                let f = MultiPoly::parse(n, &x.f).map_err(|e| err("exterior.f", format!("bad polynomial: {e}")))?;
                let opt = |t: &Option<FormTerms>, loc: &str| t.as_ref().map(|t| form(loc, n, t)).transpose();
                Loaded::Exterior(ExteriorWitness {
                    f,
                    alpha: form("exterior.alpha", n, &x.alpha)?,
                    beta: form("exterior.beta", n, &x.beta)?,
                    expect_bracket_of_scaled: opt(&x.expect_bracket_of_scaled, "exterior.expect-bracket-of-scaled")?,
                    expect_scaled_bracket: opt(&x.expect_scaled_bracket, "exterior.expect-scaled-bracket")?,
                })
            }
        };
        Ok(LoadedInstance {
            name: self.name.clone(),
            description: self.description.clone(),
            body,
        })
    }

    fn blank(kind: Kind, name: &str, description: &str) -> Self {
        InstanceFile {
            kind,
            name: name.to_string(),
            description: description.to_string(),
            free_rank_one: false,
            bracket: None,
            algebra: None,
            module: None,
            omni: None,
            exterior: None,
        }
    }

    pub fn from_bracket(name: &str, description: &str, b: &StructureBracket) -> Self {
        InstanceFile {
            bracket: Some(bracket_section(b)),
            ..Self::blank(Kind::Bracket, name, description)
        }
    }

    pub fn from_module(name: &str, description: &str, m: &BracketOnModule) -> Self {
        let a = m.pair.algebra();
        let d = a.dim();
        let mut products = Vec::new();
        for i in 0..d {
            for j in 0..d {
                for (k, c) in a.basis_product(i, j).iter().enumerate() {
                    if !num_traits::Zero::is_zero(c) {
                        products.push((i, j, k, fmt_rational(c)));
                    }
                }
            }
        }
        let action = m.pair.action().iter().map(sparse_entries).collect();
        InstanceFile {
            free_rank_one: m.free_rank_one,
            bracket: Some(bracket_section(&m.bracket)),
            algebra: Some(AlgebraSection {
                dim: d,
                unit: a.unit().map(|u| u.iter().map(fmt_rational).collect()),
                products,
            }),
            module: Some(ModuleSection {
                dim: m.pair.module_dim(),
                action,
            }),
            ..Self::blank(Kind::AlgebraModuleBracket, name, description)
        }
    }

    pub fn from_instance(name: &str, description: &str, i: &Instance) -> Self {
        match i {
            Instance::Bracket(b) => Self::from_bracket(name, description, b),
            Instance::Module(m) => Self::from_module(name, description, m),
        }
    }

    pub fn from_omni(name: &str, description: &str, dim: usize, samples: Option<usize>, elements: &[OmniElement]) -> Self {
        InstanceFile {
            omni: Some(OmniSection {
                dim,
                samples,
                elements: elements
                    .iter()
                    .map(|e| OmniElementSection {
                        phi: sparse_entries(&e.phi),
                        x: e.x.iter().map(fmt_rational).collect(),
                    })
                    .collect(),
            }),
            ..Self::blank(Kind::Omni, name, description)
        }
    }

    pub fn from_exterior(name: &str, description: &str, w: &ExteriorWitness) -> Self {
        InstanceFile {
            exterior: Some(ExteriorSection {
                nvars: w.alpha.nvars(),
                f: w.f.to_string(),
                alpha: form_terms(&w.alpha),
                beta: form_terms(&w.beta),
                expect_bracket_of_scaled: w.expect_bracket_of_scaled.as_ref().map(form_terms),
                expect_scaled_bracket: w.expect_scaled_bracket.as_ref().map(form_terms),
            }),
            ..Self::blank(Kind::ExteriorWitness, name, description)
        }
    }
}

fn bracket_section(b: &StructureBracket) -> BracketSection {
    let n = b.dim();
    let mut entries = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let c = b.get(i, j, k);
                if !num_traits::Zero::is_zero(c) {
                    entries.push((i, j, k, fmt_rational(c)));
                }
            }
        }
    }
    BracketSection {
        dim: n,
        labels: b.labels().map(<[String]>::to_vec),
        entries,
    }
}

fn sparse_entries(m: &RatMatrix) -> Vec<Entry2> {
    let mut out = Vec::new();
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            let v = m.get(r, c);
            if !num_traits::Zero::is_zero(v) {
                out.push((r, c, fmt_rational(v)));
            }
        }
    }
    out
}

fn form_terms(w: &DifferentialForm) -> FormTerms {
    w.index_terms()
        .into_iter()
        .map(|(idx, p)| (idx, p.to_string()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use loday_core::corpus;

    #[test]
    fn corpus_round_trips() {
        for e in corpus::corpus() {
            let file = InstanceFile::from_instance(e.name, e.description, &e.instance);
            let back = InstanceFile::parse(&file.to_toml()).unwrap();
            assert_eq!(back, file, "{}", e.name);
            let loaded = back.load().unwrap();
            match (&loaded.body, &e.instance) {
                (Loaded::Bracket(b), Instance::Bracket(want)) => assert_eq!(b, want),
                (Loaded::Module(m), Instance::Module(want)) => assert_eq!(m, want),
                _ => panic!("{}: kind changed", e.name),
            }
        }
    }

    #[test]
    fn rejects_zero_denominator_with_location() {
        let text = "kind = \"bracket\"\nname = \"x\"\n[bracket]\ndim = 2\nentries = [[0, 1, 1, \"1/0\"]]\n";
        let e = InstanceFile::parse(text).unwrap().load().unwrap_err();
        assert_eq!(e.location, "bracket.entries[0]");
    }

    #[test]
    fn rejects_out_of_range_and_decimals() {
        let text = "kind = \"bracket\"\nname = \"x\"\n[bracket]\ndim = 2\nentries = [[0, 2, 1, \"1\"]]\n";
        assert!(InstanceFile::parse(text).unwrap().load().is_err());
        let text = "kind = \"bracket\"\nname = \"x\"\n[bracket]\ndim = 2\nentries = [[0, 1, 1, \"0.5\"]]\n";
        assert!(InstanceFile::parse(text).unwrap().load().is_err());
        assert!(InstanceFile::parse("kind = \"nope\"\nname = \"x\"\n").is_err());
    }

    #[test]
    fn module_invariants_rechecked() {
        // x acting as the identity is not a morphism of Q[x]/(x^2)
        let text = r#"
kind = "algebra-module-bracket"
name = "bad"
[algebra]
dim = 2
unit = ["1", "0"]
products = [[0, 0, 0, "1"], [0, 1, 1, "1"], [1, 0, 1, "1"]]
[module]
dim = 1
action = [[[0, 0, "1"]], [[0, 0, "1"]]]
[bracket]
dim = 1
"#;
        let e = InstanceFile::parse(text).unwrap().load().unwrap_err();
        assert_eq!(e.location, "module");
    }
}
