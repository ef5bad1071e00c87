//! Mechanical replay of the three-case derivation of the six columns.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::{common_values, label_of, ConstraintSystem, IndicatorAssignment, NamedForm};
use crate::form::{LinearForm, Relation, VarId};

/// "Inserting values" into a lemma form gives a printed reduced equation.
#[derive(Debug, Clone)]
pub struct ReducedClaim {
    pub lemma: String,
    pub values: Vec<(VarId, u8)>,
    /// Replace the first variable by the second before inserting values.
    pub identify: Option<(VarId, VarId)>,
    pub printed: LinearForm,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum CaseOutcome {
    Columns(Vec<String>),
    Infeasible,
}

#[derive(Debug, Clone)]
pub struct CaseSpec {
    pub name: String,
    pub assumptions: Vec<(VarId, u8)>,
    /// Variables left open after monotone propagation of the assumptions
    /// and the known facts.
    pub undetermined: Option<Vec<VarId>>,
    pub claimed_values: Vec<(VarId, u8)>,
    /// Equations claimed to hold in every solution of the case.
    pub claimed_forms: Vec<LinearForm>,
    /// `(x, y)` claims `i_x ≥ i_y` in every solution of the case.
    pub claimed_orders: Vec<(VarId, VarId)>,
    pub reduced: Vec<ReducedClaim>,
    /// Name of the case whose columns dualize to this one's.
    pub dual_of: Option<String>,
    pub outcome: CaseOutcome,
}

#[derive(Debug, Clone, Serialize)]
pub struct CaseCheck {
    pub description: String,
    pub confirmed: bool,
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CaseResult {
    pub name: String,
    pub solutions: Vec<IndicatorAssignment>,
    pub labels: Vec<Option<&'static str>>,
    pub expected: CaseOutcome,
    /// The case's final result agrees with `expected`.
    pub outcome_confirmed: bool,
    /// Individual prose steps; unconfirmed ones are marked.
    pub checks: Vec<CaseCheck>,
}

impl CaseResult {
    pub fn unconfirmed_steps(&self) -> impl Iterator<Item = &CaseCheck> {
        self.checks.iter().filter(|c| !c.confirmed)
    }
}

fn v(s: &str) -> VarId {
    VarId::new(s)
}

fn vals(pairs: &[(&str, u8)]) -> Vec<(VarId, u8)> {
    pairs.iter().map(|&(s, x)| (v(s), x)).collect()
}

fn lf(s: &str) -> LinearForm {
    s.parse().expect("case forms are well formed")
}

fn cols(labels: &[&str]) -> CaseOutcome {
    CaseOutcome::Columns(labels.iter().map(|s| s.to_string()).collect())
}

/// The derivation as printed, one spec per case.
pub fn stated_cases() -> Vec<CaseSpec> {
    let case3 = [("2", 1), ("1235", 0)];
    let case3_known = [
        ("2", 1),
        ("1235", 0),
        ("24", 1),
        ("135", 0),
        ("123", 0),
        ("25", 1),
        ("1", 1),
        ("1245", 0),
    ];
    let with = |extra: &[(&'static str, u8)]| {
        let mut all = case3_known.to_vec();
        all.extend_from_slice(extra);
        vals(&all)
    };
    let mut case31 = case3.to_vec();
    case31.extend([("13", 1), ("245", 0)]);
    let mut case32 = case3.to_vec();
    case32.extend([("13", 0), ("245", 1)]);
    vec![
        CaseSpec {
            name: "Case 1".into(),
            assumptions: vals(&[("2", 0)]),
            undetermined: Some(vec![v("1"), v("13"), v("15"), v("135")]),
            claimed_values: vals(&[
                ("135", 1),
                ("1", 1),
                ("15", 1),
                ("13", 1),
                ("P", 0),
                ("Pbar", 0),
            ]),
            claimed_forms: Vec::new(),
            claimed_orders: vec![(v("1"), v("15")), (v("15"), v("13")), (v("13"), v("135"))],
            reduced: vec![ReducedClaim {
                lemma: "T18".into(),
                values: vals(&[("24", 0)]),
                identify: None,
                printed: lf("i135 = 1"),
            }],
            dual_of: None,
            outcome: cols(&["A"]),
        },
        CaseSpec {
            name: "Case 2".into(),
            assumptions: vals(&[("1235", 1)]),
            undetermined: None,
            claimed_values: Vec::new(),
            claimed_forms: Vec::new(),
            claimed_orders: Vec::new(),
            reduced: Vec::new(),
            dual_of: Some("Case 1".into()),
            outcome: cols(&["A*"]),
        },
        CaseSpec {
            name: "Case 3".into(),
            assumptions: vals(&case3),
            undetermined: None,
            claimed_values: vals(&case3_known[2..]),
            claimed_forms: vec![lf("i13 + i245 = 1")],
            claimed_orders: vec![(v("25"), v("123"))],
            reduced: vec![
                ReducedClaim {
                    lemma: "T6".into(),
                    values: vals(&case3),
                    identify: None,
                    printed: lf("-i24 + i135 = -1"),
                },
                ReducedClaim {
                    lemma: "T4".into(),
                    values: vals(&case3_known[..4]),
                    identify: None,
                    printed: lf("i13 - 2*i25 - 2*i123 + i245 = -1"),
                },
            ],
            dual_of: None,
            outcome: cols(&["B", "B*", "C", "C*"]),
        },
        CaseSpec {
            name: "Case 3.1".into(),
            assumptions: vals(&case31),
            undetermined: None,
            claimed_values: vals(&[("15", 1), ("124", 0)]),
            claimed_forms: Vec::new(),
            claimed_orders: vec![(v("12"), v("124"))],
            reduced: vec![ReducedClaim {
                lemma: "T1".into(),
                values: with(&[("13", 1), ("245", 0), ("15", 1), ("124", 0)]),
                identify: Some((v("145"), v("14"))),
                printed: lf("-2*i12 + 2*i124 = 2"),
            }],
            dual_of: None,
            outcome: CaseOutcome::Infeasible,
        },
        CaseSpec {
            name: "Case 3.2".into(),
            assumptions: vals(&case32),
            undetermined: None,
            claimed_values: vals(&[("P", 1), ("Pbar", 0)]),
            claimed_forms: vec![lf("i14 = i145")],
            claimed_orders: vec![
                (v("12"), v("124")),
                (v("12"), v("125")),
                (v("15"), v("124")),
                (v("15"), v("125")),
                (v("12"), v("145")),
                (v("15"), v("145")),
                (v("14"), v("124")),
                (v("14"), v("125")),
                (v("P"), v("245")),
                (v("13"), v("Pbar")),
            ],
            reduced: vec![ReducedClaim {
                lemma: "T1".into(),
                values: with(&[("13", 0), ("245", 1)]),
                identify: Some((v("145"), v("14"))),
                printed: lf("i12 + i15 - i124 - i125 = 1"),
            }],
            dual_of: None,
            outcome: cols(&["B", "B*", "C", "C*"]),
        },
    ]
}

fn check(description: String, confirmed: bool, detail: Option<String>) -> CaseCheck {
    CaseCheck {
        description,
        confirmed,
        detail,
    }
}

fn show(values: &BTreeMap<VarId, u8>) -> String {
    values
        .iter()
        .map(|(v, x)| format!("i{v}={x}"))
        .collect::<Vec<_>>()
        .join(", ")
}

/// Replays each case against `sys`: adds the case assumptions, enumerates,
/// and checks every claimed step. `facts` are values established before
/// the case analysis starts.
pub fn case_trace(
    sys: &ConstraintSystem,
    facts: &BTreeMap<VarId, u8>,
    cases: &[CaseSpec],
) -> Vec<CaseResult> {
    let mut results: Vec<CaseResult> = Vec::new();
    for case in cases {
        let assumptions = case.assumptions.iter().map(|(var, x)| {
            let form = LinearForm::new([(var.clone(), 1)], Relation::Equals(*x as i64))
                .expect("equalities need no modulus");
            NamedForm::new(case.name.clone(), form)
        });
        let Ok(case_sys) = sys.with(assumptions) else {
            results.push(CaseResult {
                name: case.name.clone(),
                solutions: Vec::new(),
                labels: Vec::new(),
                expected: case.outcome.clone(),
                outcome_confirmed: false,
                checks: vec![check(
                    "assumptions use catalog variables".into(),
                    false,
                    None,
                )],
            });
            continue;
        };
        let sols = case_sys.enumerate_solutions();
        let common = common_values(&sols);
        let mut checks = Vec::new();

        if let Some(open) = &case.undetermined {
            let mut known: BTreeMap<VarId, u8> = facts.clone();
            known.extend(case.assumptions.iter().cloned());
            let propagated = sys.propagate(&known);
            let left: Option<BTreeSet<VarId>> = propagated.as_ref().map(|p| {
                sys.variables()
                    .iter()
                    .filter(|x| !p.contains_key(*x))
                    .cloned()
                    .collect()
            });
            let want: BTreeSet<VarId> = open.iter().cloned().collect();
            let ok = left.as_ref() == Some(&want);
            checks.push(check(
                format!(
                    "only {} undetermined after propagation",
                    open.iter()
                        .map(|x| format!("i{x}"))
                        .collect::<Vec<_>>()
                        .join(", ")
                ),
                ok,
                (!ok).then(|| match &left {
                    Some(l) => format!(
                        "undetermined: {}",
                        l.iter()
                            .map(|x| format!("i{x}"))
                            .collect::<Vec<_>>()
                            .join(", ")
                    ),
                    None => "propagation clashes".into(),
                }),
            ));
        }

        for claim in &case.reduced {
            let desc = format!("{} reduces to {}", claim.lemma, claim.printed);
            let Some(base) = sys.form(&claim.lemma) else {
                checks.push(check(desc, false, Some("lemma not in the system".into())));
                continue;
            };
            let mut form = base.substitute(facts);
            if let Some((from, to)) = &claim.identify {
                form = form.identify_variables(from, to);
            }
            let inserted: BTreeMap<VarId, u8> = claim.values.iter().cloned().collect();
            let form = form.substitute(&inserted);
            let ok = form.equivalent(&claim.printed);
            checks.push(check(
                desc,
                ok,
                (!ok).then(|| format!("recomputed: {}", form.primitive())),
            ));
        }

        for (var, x) in &case.claimed_values {
            let ok = !sols.is_empty() && common.get(var) == Some(x);
            let detail = if ok {
                None
            } else if sols.is_empty() {
                Some("case has no solutions".into())
            } else {
                Some(format!(
                    "not forced; solutions disagree or give i{var}={:?}",
                    common.get(var)
                ))
            };
            checks.push(check(format!("i{var} = {x}"), ok, detail));
        }
        for form in &case.claimed_forms {
            let ok = !sols.is_empty() && sols.iter().all(|s| form.holds(&s.values));
            checks.push(check(format!("{form} in every solution"), ok, None));
        }
        for (big, small) in &case.claimed_orders {
            let semantic = sols
                .iter()
                .all(|s| s.get(big).unwrap_or(0) >= s.get(small).unwrap_or(0));
            let by_inclusion = sys
                .inclusions()
                .iter()
                .any(|(a, b)| *a == big && *b == small);
            // An inclusion holds outright; anything else needs witnesses.
            let ok = by_inclusion || (!sols.is_empty() && semantic);
            checks.push(check(
                format!("i{big} ≥ i{small}"),
                ok,
                Some(if by_inclusion {
                    "subgraph inclusion".into()
                } else {
                    "holds in every solution; not a direct inclusion".into()
                }),
            ));
        }
        if let Some(other) = &case.dual_of {
            let ok = results.iter().find(|r| &r.name == other).is_some_and(|r| {
                let mut duals: Vec<IndicatorAssignment> =
                    r.solutions.iter().filter_map(|s| sys.dual(s)).collect();
                duals.sort();
                let mut ours = sols.clone();
                ours.sort();
                duals == ours
            });
            checks.push(check(format!("dual of {other}"), ok, None));
        }

        let labels: Vec<Option<&'static str>> = sols.iter().map(label_of).collect();
        let outcome_confirmed = match &case.outcome {
            CaseOutcome::Infeasible => sols.is_empty(),
            CaseOutcome::Columns(want) => {
                let mut got: Vec<String> = labels
                    .iter()
                    .map(|l| l.unwrap_or("?").to_string())
                    .collect();
                got.sort();
                let mut want = want.clone();
                want.sort();
                got == want
            }
        };
        if !outcome_confirmed && !sols.is_empty() {
            checks.push(check(
                "case solutions".into(),
                false,
                Some(
                    sols.iter()
                        .map(|s| show(&s.values))
                        .collect::<Vec<_>>()
                        .join(" | "),
                ),
            ));
        }
        results.push(CaseResult {
            name: case.name.clone(),
            solutions: sols,
            labels,
            expected: case.outcome.clone(),
            outcome_confirmed,
            checks,
        });
    }
    results
}
