//! The indicator constraint system and its exhaustive solution.
//!
//! Variables are the catalog classes other than `empty` and `complete`.
//! Solutions are 0/1 assignments that are monotone along the inclusion
//! order (a subgraph never has a smaller indicator than its supergraph) and
//! satisfy every lemma form.

mod cases;
mod rank;

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::form::{LinearForm, Relation, VarId};
use crate::graphcat::{Catalog, InclusionPoset};

pub use cases::{
    case_trace, stated_cases, CaseCheck, CaseOutcome, CaseResult, CaseSpec, ReducedClaim,
};
pub use rank::{rank_filter, RankFilter};

/// Enumeration works on bitmasks, so systems are capped at 32 variables.
pub const MAX_VARIABLES: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("form `{form}` uses unknown variable {var}")]
    UnknownVariable { form: String, var: VarId },
    #[error("{0} variables exceed the limit of {MAX_VARIABLES}")]
    TooManyVariables(usize),
}

/// A named constraint, e.g. a lemma form or a user assumption.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NamedForm {
    pub name: String,
    pub form: LinearForm,
}

impl NamedForm {
    pub fn new(name: impl Into<String>, form: LinearForm) -> Self {
        NamedForm {
            name: name.into(),
            form,
        }
    }
}

/// One value per variable, iterated in canonical variable order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct IndicatorAssignment {
    pub values: BTreeMap<VarId, u8>,
}

impl IndicatorAssignment {
    pub fn get(&self, v: &VarId) -> Option<u8> {
        self.values.get(v).copied()
    }

    /// The values as a 0/1 vector in canonical order.
    pub fn column(&self) -> Vec<u8> {
        self.values.values().copied().collect()
    }
}

#[derive(Debug, Clone)]
pub struct ConstraintSystem {
    variables: Vec<VarId>,
    forms: Vec<NamedForm>,
    /// Pairs `(a, b)` of variable indices with class `a` embedded in `b`.
    inclusions: Vec<(usize, usize)>,
    /// `below[v]`: variables strictly below `v`.
    below: Vec<u32>,
    /// `above[v]`: variables strictly above `v`.
    above: Vec<u32>,
    complements: Vec<Option<usize>>,
}

impl ConstraintSystem {
    /// A system over every non-forced class of `catalog`, with monotonicity
    /// taken from `poset`.
    pub fn new(
        catalog: &Catalog,
        poset: &InclusionPoset,
        forms: Vec<NamedForm>,
    ) -> Result<Self, SolveError> {
        let variables = catalog.variables();
        let k = variables.len();
        if k > MAX_VARIABLES {
            return Err(SolveError::TooManyVariables(k));
        }
        let mut below = vec![0u32; k];
        let mut above = vec![0u32; k];
        let mut inclusions = Vec::new();
        for a in 0..k {
            for b in 0..k {
                if a != b && poset.leq(&variables[a], &variables[b]) {
                    below[b] |= 1 << a;
                    above[a] |= 1 << b;
                    inclusions.push((a, b));
                }
            }
        }
        let complements = variables
            .iter()
            .map(|v| {
                catalog
                    .complement_class(v)
                    .and_then(|c| variables.iter().position(|x| x == c))
            })
            .collect();
        let mut sys = ConstraintSystem {
            variables,
            forms: Vec::new(),
            inclusions,
            below,
            above,
            complements,
        };
        for f in forms {
            sys.push(f)?;
        }
        Ok(sys)
    }

    /// Adds a constraint after checking its variables.
    pub fn push(&mut self, f: NamedForm) -> Result<(), SolveError> {
        if let Some(v) = f.form.variables().find(|v| !self.variables.contains(v)) {
            return Err(SolveError::UnknownVariable {
                form: f.form.to_string(),
                var: v.clone(),
            });
        }
        self.forms.push(f);
        Ok(())
    }

    /// A copy with extra constraints appended.
    pub fn with(&self, extra: impl IntoIterator<Item = NamedForm>) -> Result<Self, SolveError> {
        let mut sys = self.clone();
        for f in extra {
            sys.push(f)?;
        }
        Ok(sys)
    }

    /// A copy without the constraints named `name`.
    pub fn without(&self, name: &str) -> Self {
        let mut sys = self.clone();
        sys.forms.retain(|f| f.name != name);
        sys
    }

    pub fn variables(&self) -> &[VarId] {
        &self.variables
    }

    pub fn forms(&self) -> &[NamedForm] {
        &self.forms
    }

    pub fn form(&self, name: &str) -> Option<&LinearForm> {
        self.forms.iter().find(|f| f.name == name).map(|f| &f.form)
    }

    /// Strict inclusions `(a, b)`: class `a` embeds in class `b`.
    pub fn inclusions(&self) -> Vec<(&VarId, &VarId)> {
        self.inclusions
            .iter()
            .map(|&(a, b)| (&self.variables[a], &self.variables[b]))
            .collect()
    }

    fn assignment(&self, bits: u32) -> IndicatorAssignment {
        IndicatorAssignment {
            values: self
                .variables
                .iter()
                .enumerate()
                .map(|(i, v)| (v.clone(), (bits >> i & 1) as u8))
                .collect(),
        }
    }

    /// The assignment as a bit vector over variable indices.
    pub fn to_bits(&self, a: &IndicatorAssignment) -> u32 {
        self.variables
            .iter()
            .enumerate()
            .filter(|(_, v)| a.get(v) == Some(1))
            .fold(0, |acc, (i, _)| acc | 1 << i)
    }

    /// Direct evaluation of every constraint, independent of the search.
    pub fn check(&self, a: &IndicatorAssignment) -> bool {
        self.variables
            .iter()
            .all(|v| a.get(v).is_some_and(|x| x <= 1))
            && self
                .inclusions
                .iter()
                .all(|&(s, b)| a.get(&self.variables[s]) >= a.get(&self.variables[b]))
            && self.forms.iter().all(|f| f.form.holds(&a.values))
    }

    /// `1 - value(complement class)` for every class.
    pub fn dual(&self, a: &IndicatorAssignment) -> Option<IndicatorAssignment> {
        let values = self
            .variables
            .iter()
            .zip(&self.complements)
            .map(|(v, c)| {
                let c = (*c)?;
                Some((v.clone(), 1 - a.get(&self.variables[c])?))
            })
            .collect::<Option<BTreeMap<_, _>>>()?;
        Some(IndicatorAssignment { values })
    }

    /// Every satisfying assignment, sorted by value vector in canonical
    /// variable order.
    pub fn enumerate_solutions(&self) -> Vec<IndicatorAssignment> {
        let k = self.variables.len();
        // Fewer classes below first: a linear extension of the inclusion order,
        // so every subgraph class is decided before its supergraphs.
        let mut order: Vec<usize> = (0..k).collect();
        order.sort_by_key(|&v| (self.below[v].count_ones(), v));
        let dense: Vec<(Vec<i64>, Relation)> = self
            .forms
            .iter()
            .map(|f| {
                let coeffs = self
                    .variables
                    .iter()
                    .map(|v| f.form.coefficient(v))
                    .collect();
                (coeffs, f.form.relation())
            })
            .collect();
        let mut search = Search {
            sys: self,
            order,
            dense,
            found: Vec::new(),
        };
        search.dfs(0, 0, 0);
        let mut out: Vec<IndicatorAssignment> = search
            .found
            .into_iter()
            .map(|b| self.assignment(b))
            .collect();
        out.sort_by(|a, b| a.column().cmp(&b.column()));
        out
    }

    /// Values shared by every solution.
    pub fn implied_values(&self) -> BTreeMap<VarId, u8> {
        common_values(&self.enumerate_solutions())
    }

    /// Monotone propagation of known values: ones spread downwards, zeros
    /// upwards. Returns `None` on a clash.
    pub fn propagate(&self, known: &BTreeMap<VarId, u8>) -> Option<BTreeMap<VarId, u8>> {
        let (mut ones, mut zeros) = (0u32, 0u32);
        // `below` and `above` are transitively closed, so one pass suffices.
        for (i, v) in self.variables.iter().enumerate() {
            match known.get(v) {
                Some(1) => ones |= 1 << i | self.below[i],
                Some(0) => zeros |= 1 << i | self.above[i],
                _ => {}
            }
        }
        if ones & zeros != 0 {
            return None;
        }
        Some(
            self.variables
                .iter()
                .enumerate()
                .filter(|(i, _)| (ones | zeros) >> i & 1 == 1)
                .map(|(i, v)| (v.clone(), (ones >> i & 1) as u8))
                .collect(),
        )
    }

    /// Brute-force membership test on a raw bit vector, used by oracles.
    pub fn check_bits(&self, bits: u32) -> bool {
        self.check(&self.assignment(bits))
    }
}

/// Values on which every assignment in `sols` agrees.
pub fn common_values(sols: &[IndicatorAssignment]) -> BTreeMap<VarId, u8> {
    let Some(first) = sols.first() else {
        return BTreeMap::new();
    };
    first
        .values
        .iter()
        .filter(|(v, x)| sols.iter().all(|s| s.get(v) == Some(**x)))
        .map(|(v, x)| (v.clone(), *x))
        .collect()
}

struct Search<'a> {
    sys: &'a ConstraintSystem,
    order: Vec<usize>,
    dense: Vec<(Vec<i64>, Relation)>,
    found: Vec<u32>,
}

impl Search<'_> {
    fn dfs(&mut self, depth: usize, assigned: u32, ones: u32) {
        if !self.bounds_ok(assigned, ones) {
            return;
        }
        if depth == self.order.len() {
            if self.complete_ok(ones) {
                self.found.push(ones);
            }
            return;
        }
        let v = self.order[depth];
        let below = self.sys.below[v];
        // A zero below forces zero; all lower classes are already assigned.
        let can_be_one = below & assigned & !ones == 0;
        self.dfs(depth + 1, assigned | 1 << v, ones);
        if can_be_one {
            self.dfs(depth + 1, assigned | 1 << v, ones | 1 << v);
        }
    }

    /// Interval check on equalities: the constant must stay reachable.
    fn bounds_ok(&self, assigned: u32, ones: u32) -> bool {
        self.dense.iter().all(|(c, rel)| {
            let Relation::Equals(k) = *rel else {
                return true;
            };
            let (mut lo, mut hi) = (0i64, 0i64);
            for (i, &ci) in c.iter().enumerate() {
                if assigned >> i & 1 == 1 {
                    let x = ci * (ones >> i & 1) as i64;
                    lo += x;
                    hi += x;
                } else if ci > 0 {
                    hi += ci;
                } else {
                    lo += ci;
                }
            }
            lo <= k && k <= hi
        })
    }

    fn complete_ok(&self, ones: u32) -> bool {
        self.dense.iter().all(|(c, rel)| {
            let lhs: i64 = c
                .iter()
                .enumerate()
                .map(|(i, &ci)| ci * (ones >> i & 1) as i64)
                .sum();
            rel.holds(lhs)
        })
    }
}

/// Row order of the reference table.
pub const TABLE_ROWS: [&str; 20] = [
    "1", "2", "5", "12", "13", "14", "15", "24", "25", "123", "124", "125", "135", "145", "245",
    "1234", "1235", "1245", "P", "Pbar",
];

/// The reference six columns, rows in [`TABLE_ROWS`] order.
pub const TABLE: [(&str, [u8; 20]); 6] = [
    (
        "A",
        [1, 0, 1, 0, 1, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0],
    ),
    (
        "A*",
        [1, 1, 1, 1, 1, 1, 1, 0, 1, 1, 0, 1, 1, 1, 0, 0, 1, 0, 1, 1],
    ),
    (
        "B",
        [1, 1, 1, 1, 0, 0, 0, 1, 1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1, 0],
    ),
    (
        "B*",
        [1, 1, 1, 1, 0, 1, 1, 1, 1, 0, 1, 0, 0, 1, 1, 0, 0, 0, 1, 0],
    ),
    (
        "C",
        [1, 1, 1, 0, 0, 0, 1, 1, 1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1, 0],
    ),
    (
        "C*",
        [1, 1, 1, 1, 0, 1, 1, 1, 1, 0, 0, 1, 0, 1, 1, 0, 0, 0, 1, 0],
    ),
];

/// A reference column as an assignment.
pub fn table_column(label: &str) -> Option<IndicatorAssignment> {
    let (_, col) = TABLE.iter().find(|(l, _)| *l == label)?;
    Some(IndicatorAssignment {
        values: TABLE_ROWS
            .iter()
            .zip(col)
            .map(|(r, &x)| (VarId::new(r), x))
            .collect(),
    })
}

/// Label of the reference column equal to `a`, if any.
pub fn label_of(a: &IndicatorAssignment) -> Option<&'static str> {
    TABLE
        .iter()
        .map(|(l, _)| *l)
        .find(|l| table_column(l).as_ref() == Some(a))
}

/// Solutions with their table labels.
#[derive(Debug, Clone, Serialize)]
pub struct SolutionTable {
    pub rows: Vec<VarId>,
    pub columns: Vec<LabeledColumn>,
}

#[derive(Debug, Clone, Serialize)]
pub struct LabeledColumn {
    pub label: Option<&'static str>,
    pub values: Vec<u8>,
}

impl SolutionTable {
    pub fn new(rows: &[VarId], sols: &[IndicatorAssignment]) -> Self {
        SolutionTable {
            rows: rows.to_vec(),
            columns: sols
                .iter()
                .map(|s| LabeledColumn {
                    label: label_of(s),
                    values: rows.iter().map(|r| s.get(r).unwrap_or(0)).collect(),
                })
                .collect(),
        }
    }

    /// Whether the columns are exactly the reference table, in any order.
    pub fn matches_table(&self) -> bool {
        let mut labels: Vec<&str> = self.columns.iter().filter_map(|c| c.label).collect();
        labels.sort_unstable();
        labels.dedup();
        self.columns.len() == TABLE.len() && labels.len() == TABLE.len()
    }
}

impl fmt::Display for SolutionTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self
            .rows
            .iter()
            .map(|r| r.as_str().len() + 1)
            .max()
            .unwrap_or(1);
        write!(f, "{:width$}", "")?;
        for c in &self.columns {
            write!(f, " {:>3}", c.label.unwrap_or("?"))?;
        }
        writeln!(f)?;
        for (i, r) in self.rows.iter().enumerate() {
            write!(f, "{:width$}", format!("i{r}"))?;
            for c in &self.columns {
                write!(f, " {:>3}", c.values[i])?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn form(s: &str) -> LinearForm {
        s.parse().unwrap()
    }

    fn small_system() -> ConstraintSystem {
        let cat = Catalog::build(10).unwrap();
        let poset = InclusionPoset::build(&cat);
        ConstraintSystem::new(&cat, &poset, Vec::new()).unwrap()
    }

    #[test]
    fn table_rows_follow_canonical_order() {
        let sys = small_system();
        let rows: Vec<&str> = sys.variables().iter().map(|v| v.as_str()).collect();
        assert_eq!(rows, TABLE_ROWS);
        for (l, _) in TABLE {
            assert_eq!(label_of(&table_column(l).unwrap()), Some(l));
        }
    }

    #[test]
    fn unconstrained_solutions_are_monotone() {
        // Without forms every solution is an up-closed set of zeros.
        let sys = small_system();
        let sols = sys.enumerate_solutions();
        assert!(sols.iter().all(|s| sys.check(s)));
        let brute = (0u32..1 << 20).filter(|&b| sys.check_bits(b)).count();
        assert_eq!(sols.len(), brute);
    }

    #[test]
    fn unknown_variable_rejected() {
        let mut sys = small_system();
        let err = sys.push(NamedForm::new("bad", form("i7 = 1"))).unwrap_err();
        assert!(matches!(err, SolveError::UnknownVariable { .. }));
    }

    #[test]
    fn propagation_spreads_along_inclusions() {
        let sys = small_system();
        let known = sys
            .propagate(&BTreeMap::from([(VarId::new("2"), 0)]))
            .unwrap();
        assert_eq!(known[&VarId::new("24")], 0);
        assert_eq!(known[&VarId::new("P")], 0);
        assert!(!known.contains_key(&VarId::new("13")));
        let clash = sys.propagate(&BTreeMap::from([
            (VarId::new("2"), 0),
            (VarId::new("24"), 1),
        ]));
        assert!(clash.is_none());
    }

    #[test]
    fn dual_is_an_involution_on_table() {
        let sys = small_system();
        for (l, _) in TABLE {
            let c = table_column(l).unwrap();
            assert_eq!(sys.dual(&sys.dual(&c).unwrap()).unwrap(), c);
        }
    }
}
