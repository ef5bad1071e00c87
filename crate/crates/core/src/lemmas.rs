//! The six lemma setups, loaded from a TOML data file, and their end-to-end
//! verification: closure, homomorphism, kernel, chain hypotheses, edge
//! orbits and the Euler form.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::form::{FormError, LinearForm, VarId};
use crate::graphcat::{Catalog, CatalogError, InclusionPoset};
use crate::indsolve::{ConstraintSystem, IndicatorAssignment, NamedForm, SolveError};
use crate::oliver::{verify_thm1, verify_thm2, ChainError, OliverChain};
use crate::orbitcx::{euler_form, EulerForm, OrbitError};
use crate::perm::{CyclicHom, PermError, PermGroup};

/// The bundled lemma file.
pub const BUNDLED: &str = include_str!("../data/lemmas.toml");

#[derive(Debug, Error)]
pub enum LemmaError {
    #[error("lemma file: {0}")]
    Toml(#[from] toml::de::Error),
    #[error("unknown lemma {0}")]
    Unknown(String),
    #[error("lemma {name}: {source}")]
    Perm {
        name: String,
        #[source]
        source: PermError,
    },
    #[error("lemma {name}: {source}")]
    Form {
        name: String,
        #[source]
        source: FormError,
    },
    #[error("lemma {name}: theorem 2 needs a second homomorphism")]
    MissingSecond { name: String },
    #[error("lemma {name}: theorem must be 1 or 2, got {theorem}")]
    BadTheorem { name: String, theorem: u8 },
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error(transparent)]
    Orbit(#[from] OrbitError),
    #[error(transparent)]
    Solve(#[from] SolveError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomSpec {
    pub hom_modulus: u64,
    pub generator_images: Vec<u64>,
    /// Printed generators of the kernel.
    #[serde(default)]
    pub kernel_generators: Vec<String>,
    /// Printed kernel order, when stated.
    pub kernel_order: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaSpec {
    pub name: String,
    pub theorem: u8,
    pub gamma_generators: Vec<String>,
    #[serde(flatten)]
    pub hom: HomSpec,
    /// Homomorphism on the kernel of the first one, for two-step chains.
    pub second: Option<HomSpec>,
    /// Printed labels of the edge orbits (connection sets).
    pub orbit_labels: Vec<String>,
    pub printed_raw: Option<String>,
    pub expected_form: String,
}

#[derive(Debug, Clone, Deserialize)]
struct LemmaFile {
    lemma: Vec<LemmaSpec>,
}

/// Parses a lemma file in the bundled format.
pub fn parse_specs(text: &str) -> Result<Vec<LemmaSpec>, LemmaError> {
    Ok(toml::from_str::<LemmaFile>(text)?.lemma)
}

pub fn bundled_specs() -> Vec<LemmaSpec> {
    parse_specs(BUNDLED).expect("bundled lemma file parses")
}

/// Findings for one homomorphism level.
#[derive(Debug, Clone, Serialize)]
pub struct HomReport {
    pub source_order: usize,
    pub modulus: u64,
    pub surjective: bool,
    pub kernel_order: usize,
    pub kernel_generators: Vec<String>,
    /// Order of the closure of the printed kernel generators.
    pub printed_kernel_order: usize,
    pub printed_kernel_matches: bool,
    pub expected_kernel_order: Option<usize>,
}

impl HomReport {
    fn order_ok(&self) -> bool {
        self.surjective
            && self
                .expected_kernel_order
                .is_none_or(|k| k == self.kernel_order)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LemmaReport {
    pub name: String,
    pub theorem: u8,
    pub gamma_order: usize,
    pub hom: HomReport,
    pub second: Option<HomReport>,
    /// `|Γ/Γ′|` and, for two-step chains, `|Γ′/Γ″|`.
    pub quotient_orders: Vec<usize>,
    /// `Ok(relation)` or the failed hypothesis.
    pub chain: Result<String, String>,
    pub p: Option<u64>,
    pub q: Option<u64>,
    pub orbit_labels: Vec<String>,
    pub orbit_classes: Vec<String>,
    pub expected_orbit_labels: Vec<String>,
    pub orbits_match: bool,
    pub raw: String,
    /// Differences between the printed and recomputed unmerged expansion.
    pub raw_notes: Vec<String>,
    /// Merged form straight from the expansion.
    pub form: Option<LinearForm>,
    /// `form` with the facts of earlier lemmas substituted.
    pub reduced: Option<LinearForm>,
    pub expected: LinearForm,
    /// `reduced` equals the printed form up to a nonzero scalar.
    pub form_matches: bool,
    pub facts: BTreeMap<VarId, u8>,
    pub warnings: Vec<String>,
    pub error: Option<String>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.error.is_none()
            && self.hom.order_ok()
            && self.second.as_ref().is_none_or(HomReport::order_ok)
            && self.chain.is_ok()
            && self.orbits_match
            && self.form_matches
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub lemmas: Vec<LemmaReport>,
    /// Values pinned by congruence lemmas, substituted into later ones.
    pub facts: BTreeMap<VarId, u8>,
}

impl SuiteReport {
    pub fn passed(&self) -> usize {
        self.lemmas.iter().filter(|l| l.passed()).count()
    }

    /// The printed lemma equations, named by lemma, in run order.
    pub fn printed_forms(&self) -> Vec<NamedForm> {
        self.lemmas
            .iter()
            .map(|l| NamedForm::new(l.name.clone(), l.expected.clone()))
            .collect()
    }

    /// Recomputed merged forms of every lemma that produced one, named by
    /// lemma, in run order.
    pub fn forms(&self) -> Vec<NamedForm> {
        self.lemmas
            .iter()
            .filter_map(|l| Some(NamedForm::new(l.name.clone(), l.form.clone()?)))
            .collect()
    }
}

/// Which lemma equations feed the solver.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FormSource {
    /// The equations as stated in the lemma file.
    #[default]
    Printed,
    /// Forms recomputed from the groups.
    Derived,
}

impl std::str::FromStr for FormSource {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "printed" => Ok(FormSource::Printed),
            "derived" => Ok(FormSource::Derived),
            other => Err(format!("unknown form source {other:?}")),
        }
    }
}

impl SuiteReport {
    pub fn forms_from(&self, source: FormSource) -> Vec<NamedForm> {
        match source {
            FormSource::Printed => self.printed_forms(),
            FormSource::Derived => self.forms(),
        }
    }

    pub fn system(
        &self,
        source: FormSource,
        catalog: &Catalog,
        poset: &InclusionPoset,
    ) -> Result<ConstraintSystem, SolveError> {
        ConstraintSystem::new(catalog, poset, self.forms_from(source))
    }
}

fn perm_err(name: &str) -> impl Fn(PermError) -> LemmaError + '_ {
    move |source| LemmaError::Perm {
        name: name.to_string(),
        source,
    }
}

fn group(degree: usize, gens: &[String], name: &str) -> Result<PermGroup, LemmaError> {
    PermGroup::from_cycle_strings(degree, gens).map_err(perm_err(name))
}

fn check_hom(
    source: PermGroup,
    spec: &HomSpec,
    name: &str,
    warnings: &mut Vec<String>,
) -> Result<(CyclicHom, PermGroup, HomReport), LemmaError> {
    let degree = source.degree();
    let source_order = source.order();
    let h = CyclicHom::new(source, spec.hom_modulus, spec.generator_images.clone())
        .map_err(perm_err(name))?;
    let kernel = h.kernel();
    let printed = group(degree, &spec.kernel_generators, name)?;
    let matches = printed == kernel;
    if !matches {
        warnings.push(format!(
            "printed kernel generators close to a group of order {}, computed kernel has order {}; using the computed kernel",
            printed.order(),
            kernel.order()
        ));
    }
    let report = HomReport {
        source_order,
        modulus: spec.hom_modulus,
        surjective: h.is_surjective(),
        kernel_order: kernel.order(),
        kernel_generators: kernel.generator_strings(),
        printed_kernel_order: printed.order(),
        printed_kernel_matches: matches,
        expected_kernel_order: spec.kernel_order,
    };
    Ok((h, kernel, report))
}

/// Signed multiset of labels in an expansion such as `i5 + i1234 - i12`.
fn signed_terms(text: &str) -> BTreeMap<String, i64> {
    let mut out = BTreeMap::new();
    let mut sign = 1;
    for tok in text.split_whitespace() {
        match tok {
            "+" => sign = 1,
            "-" => sign = -1,
            t => {
                let (s, t) = match t.strip_prefix('-') {
                    Some(rest) => (-sign, rest),
                    None => (sign, t.strip_prefix('+').unwrap_or(t)),
                };
                let label = t.strip_prefix('i').unwrap_or(t).to_string();
                *out.entry(label).or_insert(0) += s;
                sign = 1;
            }
        }
    }
    out.retain(|_, v| *v != 0);
    out
}

fn raw_notes(printed: &str, computed: &EulerForm) -> Vec<String> {
    let printed = signed_terms(printed);
    let mut ours: BTreeMap<String, i64> = BTreeMap::new();
    for t in &computed.raw {
        *ours.entry(t.label.clone()).or_insert(0) += t.sign;
    }
    let labels: BTreeSet<&String> = printed.keys().chain(ours.keys()).collect();
    let mut notes = Vec::new();
    for l in labels {
        let (a, b) = (
            printed.get(l).copied().unwrap_or(0),
            ours.get(l).copied().unwrap_or(0),
        );
        let forced_zero = computed
            .raw
            .iter()
            .any(|t| &t.label == l && t.class == VarId::complete());
        if a == 0 && forced_zero {
            notes.push(format!(
                "printed expansion omits i{l}, which is forced to 0"
            ));
        } else if a != b {
            notes.push(format!(
                "term i{l}: printed coefficient {a}, recomputed {b}"
            ));
        }
    }
    notes
}

/// Values shared by every 0/1 solution of `form` that is monotone on the
/// poset; these are the conclusions a congruence lemma draws.
pub fn derive_facts(form: &LinearForm, poset: &InclusionPoset) -> BTreeMap<VarId, u8> {
    let vars: Vec<VarId> = form.variables().cloned().collect();
    let k = vars.len();
    assert!(k <= 20, "fact derivation enumerates 2^k assignments");
    let mut common: Option<Vec<u8>> = None;
    let mut agree = vec![true; k];
    for bits in 0u32..1 << k {
        let vals: Vec<u8> = (0..k).map(|j| (bits >> j & 1) as u8).collect();
        // Subgraph embedding reverses the indicator order.
        let monotone = (0..k).all(|a| {
            (0..k).all(|b| a == b || !poset.leq(&vars[a], &vars[b]) || vals[a] >= vals[b])
        });
        if !monotone {
            continue;
        }
        let map: BTreeMap<VarId, u8> = vars.iter().cloned().zip(vals.iter().copied()).collect();
        if !form.holds(&map) {
            continue;
        }
        match &common {
            None => common = Some(vals),
            Some(c) => {
                for j in 0..k {
                    agree[j] &= c[j] == vals[j];
                }
            }
        }
    }
    let Some(c) = common else {
        return BTreeMap::new();
    };
    (0..k)
        .filter(|&j| agree[j])
        .map(|j| (vars[j].clone(), c[j]))
        .collect()
}

/// Verifies one lemma. `facts` from earlier lemmas are substituted before
/// comparing with the printed form.
pub fn run_lemma(
    spec: &LemmaSpec,
    catalog: &Catalog,
    poset: &InclusionPoset,
    facts: &BTreeMap<VarId, u8>,
) -> Result<LemmaReport, LemmaError> {
    let name = spec.name.as_str();
    let degree = catalog.n();
    let mut warnings = Vec::new();
    let expected: LinearForm =
        spec.expected_form
            .trim()
            .parse()
            .map_err(|source| LemmaError::Form {
                name: name.to_string(),
                source,
            })?;
    let gamma = group(degree, &spec.gamma_generators, name)?;
    let (_, gamma1, hom) = check_hom(gamma.clone(), &spec.hom, name, &mut warnings)?;
    let mut quotient_orders = vec![gamma.order() / gamma1.order()];

    let (chain, second): (Result<OliverChain, String>, Option<HomReport>) = match spec.theorem {
        1 => (
            verify_thm1(&gamma1, &gamma).map_err(|e| e.to_string()),
            None,
        ),
        2 => {
            let sspec = spec.second.as_ref().ok_or(LemmaError::MissingSecond {
                name: name.to_string(),
            })?;
            // The second map is defined on the printed generators of Γ′.
            let printed = group(degree, &spec.hom.kernel_generators, name)?;
            let (_, gamma2, report) = check_hom(printed, sspec, name, &mut warnings)?;
            quotient_orders.push(gamma1.order() / gamma2.order());
            (
                verify_thm2(&gamma2, &gamma1, &gamma).map_err(|e| e.to_string()),
                Some(report),
            )
        }
        t => {
            return Err(LemmaError::BadTheorem {
                name: name.to_string(),
                theorem: t,
            })
        }
    };

    let mut report = LemmaReport {
        name: name.to_string(),
        theorem: spec.theorem,
        gamma_order: gamma.order(),
        hom,
        second,
        quotient_orders,
        chain: chain.as_ref().map(|c| c.to_string()).map_err(Clone::clone),
        p: chain.as_ref().ok().and_then(|c| c.p),
        q: chain.as_ref().ok().and_then(|c| c.q),
        orbit_labels: Vec::new(),
        orbit_classes: Vec::new(),
        expected_orbit_labels: spec.orbit_labels.clone(),
        orbits_match: false,
        raw: String::new(),
        raw_notes: Vec::new(),
        form: None,
        reduced: None,
        expected,
        form_matches: false,
        facts: BTreeMap::new(),
        warnings,
        error: None,
    };
    let Ok(chain) = chain else {
        return Ok(report);
    };
    match euler_form(&gamma, catalog, chain.relation) {
        Err(e) => report.error = Some(e.to_string()),
        Ok(e) => {
            report.orbit_labels = e.orbit_labels.clone();
            report.orbit_classes = e.orbit_classes.iter().map(|v| v.to_string()).collect();
            let ours: BTreeSet<&String> = e.orbit_labels.iter().collect();
            let printed: BTreeSet<&String> = spec.orbit_labels.iter().collect();
            report.orbits_match =
                ours == printed && e.orbit_labels.len() == spec.orbit_labels.len();
            report.raw = e.raw_text();
            if let Some(p) = &spec.printed_raw {
                report.raw_notes = raw_notes(p, &e);
            }
            let reduced = e.form.substitute(facts);
            report.form_matches = reduced.equivalent(&report.expected);
            if reduced.is_congruence() {
                report.facts = derive_facts(&reduced, poset);
            }
            report.form = Some(e.form);
            report.reduced = Some(reduced);
        }
    }
    Ok(report)
}

/// Runs `specs` in order, feeding facts from each lemma into the next.
pub fn run_all(
    specs: &[LemmaSpec],
    catalog: &Catalog,
    poset: &InclusionPoset,
) -> Result<SuiteReport, LemmaError> {
    let mut facts = BTreeMap::new();
    let mut lemmas = Vec::new();
    for spec in specs {
        let r = run_lemma(spec, catalog, poset, &facts)?;
        facts.extend(r.facts.iter().map(|(k, v)| (k.clone(), *v)));
        lemmas.push(r);
    }
    Ok(SuiteReport { lemmas, facts })
}

/// Selects lemmas by name, keeping file order. `all` selects every lemma;
/// a single congruence lemma pulls in nothing else, but any other single
/// lemma is preceded by the congruence lemmas whose facts it relies on.
pub fn select<'a>(specs: &'a [LemmaSpec], name: &str) -> Result<Vec<&'a LemmaSpec>, LemmaError> {
    if name.eq_ignore_ascii_case("all") {
        return Ok(specs.iter().collect());
    }
    let target = specs
        .iter()
        .position(|s| s.name.eq_ignore_ascii_case(name))
        .ok_or_else(|| LemmaError::Unknown(name.to_string()))?;
    Ok(specs
        .iter()
        .enumerate()
        .filter(|&(i, s)| i == target || (i < target && s.theorem == 2))
        .map(|(_, s)| s)
        .collect())
}

/// The five-vertex argument end to end.
#[derive(Debug, Clone, Serialize)]
pub struct FiveVertexReport {
    pub classes: Vec<String>,
    pub chain: String,
    pub orbit_labels: Vec<String>,
    pub form: LinearForm,
    pub solutions: Vec<IndicatorAssignment>,
}

/// Rotation of the 5-cycle over a trivial Γ′, its Euler form on the
/// five-vertex catalog, and the solutions of the resulting system.
pub fn five_vertex_example() -> Result<FiveVertexReport, LemmaError> {
    let name = "five-vertex";
    let catalog = Catalog::build(5)?;
    let poset = InclusionPoset::build(&catalog);
    let gamma = PermGroup::from_cycle_strings(5, &["(1 2 3 4 5)"]).map_err(perm_err(name))?;
    let chain = verify_thm1(&PermGroup::trivial(5), &gamma)?;
    let e = euler_form(&gamma, &catalog, chain.relation)?;
    let sys = ConstraintSystem::new(
        &catalog,
        &poset,
        vec![NamedForm::new("rotation", e.form.clone())],
    )?;
    Ok(FiveVertexReport {
        classes: catalog.classes().iter().map(|c| c.id.to_string()).collect(),
        chain: chain.to_string(),
        orbit_labels: e.orbit_labels,
        form: e.form,
        solutions: sys.enumerate_solutions(),
    })
}
