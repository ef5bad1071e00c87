//! Integer linear forms in class indicators.
//!
//! Text grammar (whitespace-insensitive):
//!
//! ```text
//! form     := expr rel expr [ "(" "mod" INT ")" ]
//! rel      := "=" | "==" | "≡"
//! expr     := [sign] term { sign term }
//! term     := INT [ "*" ] var | INT | var
//! var      := "i" NAME          NAME = [A-Za-z0-9_]+
//! ```
//!
//! A trailing `(mod q)` makes the relation a congruence; `≡` without a
//! modulus is rejected. Variables may appear on both sides; forms are
//! normalized to `Σ c·i_x REL k` with `i_empty = 1` and `i_complete = 0`
//! substituted. Examples: `2*i2 - i24 + i135 - 2*i1235 = 1` and
//! `i5 + i1234 ≡ 1 (mod 2)`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Name of an indicator variable, i.e. of a catalog class.
///
/// Ordered canonically: circulant names by length then lexicographically,
/// then other names alphabetically (`C5`, `P`, `Pbar`), then `empty` and
/// `complete`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VarId(String);

impl VarId {
    pub fn new(name: &str) -> Self {
        VarId(name.to_string())
    }

    pub fn empty() -> Self {
        VarId::new("empty")
    }

    pub fn complete() -> Self {
        VarId::new("complete")
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// `empty` and `complete` take fixed values in every nontrivial complex.
    pub fn is_forced(&self) -> bool {
        self.forced_value().is_some()
    }

    pub fn forced_value(&self) -> Option<u8> {
        match self.0.as_str() {
            "empty" => Some(1),
            "complete" => Some(0),
            _ => None,
        }
    }

    fn rank(&self) -> u8 {
        match self.0.as_str() {
            "empty" => 2,
            "complete" => 3,
            s if s.bytes().all(|b| b.is_ascii_digit()) => 0,
            _ => 1,
        }
    }
}

impl Ord for VarId {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank()
            .cmp(&other.rank())
            .then_with(|| match self.rank() {
                0 => self.0.len().cmp(&other.0.len()),
                _ => Ordering::Equal,
            })
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for VarId {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// The forced substitutions `i_empty = 1`, `i_complete = 0`.
pub fn forced_values() -> BTreeMap<VarId, u8> {
    BTreeMap::from([(VarId::empty(), 1), (VarId::complete(), 0)])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Relation {
    Equals(i64),
    CongruentMod { residue: i64, modulus: i64 },
}

impl Relation {
    pub fn constant(&self) -> i64 {
        match *self {
            Relation::Equals(k) => k,
            Relation::CongruentMod { residue, .. } => residue,
        }
    }

    pub fn is_congruence(&self) -> bool {
        matches!(self, Relation::CongruentMod { .. })
    }

    fn with_constant(&self, k: i64) -> Relation {
        match *self {
            Relation::Equals(_) => Relation::Equals(k),
            Relation::CongruentMod { modulus, .. } => Relation::CongruentMod {
                residue: k,
                modulus,
            },
        }
    }

    /// Whether a left-hand value satisfies the relation.
    pub fn holds(&self, lhs: i64) -> bool {
        match *self {
            Relation::Equals(k) => lhs == k,
            Relation::CongruentMod { residue, modulus } => (lhs - residue).rem_euclid(modulus) == 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormError {
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("modulus must be at least 2, got {0}")]
    BadModulus(i64),
    #[error("unknown variable i{0}")]
    UnknownVariable(String),
}

/// `Σ coefficient·i_var  relation  constant`, normalized.
///
/// Coefficients are nonzero and keyed in canonical variable order. For a
/// congruence, coefficients and residue are reduced into `0..modulus`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearForm {
    coefficients: BTreeMap<VarId, i64>,
    relation: Relation,
}

impl LinearForm {
    /// Builds and normalizes a form, substituting the forced values.
    pub fn new(
        terms: impl IntoIterator<Item = (VarId, i64)>,
        relation: Relation,
    ) -> Result<Self, FormError> {
        if let Relation::CongruentMod { modulus, .. } = relation {
            if modulus < 2 {
                return Err(FormError::BadModulus(modulus));
            }
        }
        let mut coefficients: BTreeMap<VarId, i64> = BTreeMap::new();
        let mut k = relation.constant();
        for (v, c) in terms {
            match v.forced_value() {
                Some(val) => k -= c * val as i64,
                None => *coefficients.entry(v).or_insert(0) += c,
            }
        }
        let mut form = LinearForm {
            coefficients,
            relation: relation.with_constant(k),
        };
        form.normalize();
        Ok(form)
    }

    fn normalize(&mut self) {
        if let Relation::CongruentMod { residue, modulus } = self.relation {
            for c in self.coefficients.values_mut() {
                *c = c.rem_euclid(modulus);
            }
            self.relation = Relation::CongruentMod {
                residue: residue.rem_euclid(modulus),
                modulus,
            };
        }
        self.coefficients.retain(|_, c| *c != 0);
    }

    pub fn relation(&self) -> Relation {
        self.relation
    }

    pub fn coefficients(&self) -> &BTreeMap<VarId, i64> {
        &self.coefficients
    }

    pub fn coefficient(&self, v: &VarId) -> i64 {
        self.coefficients.get(v).copied().unwrap_or(0)
    }

    pub fn variables(&self) -> impl Iterator<Item = &VarId> {
        self.coefficients.keys()
    }

    pub fn is_congruence(&self) -> bool {
        self.relation.is_congruence()
    }

    /// No variables left.
    pub fn is_degenerate(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Left-hand side at a 0/1 assignment; missing variables count as 0.
    pub fn lhs(&self, values: &BTreeMap<VarId, u8>) -> i64 {
        self.coefficients
            .iter()
            .map(|(v, c)| c * values.get(v).copied().unwrap_or(0) as i64)
            .sum()
    }

    pub fn holds(&self, values: &BTreeMap<VarId, u8>) -> bool {
        self.relation.holds(self.lhs(values))
    }

    /// Replaces the given variables by constants.
    pub fn substitute(&self, values: &BTreeMap<VarId, u8>) -> LinearForm {
        let mut k = self.relation.constant();
        let mut coefficients = BTreeMap::new();
        for (v, &c) in &self.coefficients {
            match values.get(v) {
                Some(&val) => k -= c * val as i64,
                None => {
                    coefficients.insert(v.clone(), c);
                }
            }
        }
        let mut form = LinearForm {
            coefficients,
            relation: self.relation.with_constant(k),
        };
        form.normalize();
        form
    }

    /// Replaces every occurrence of `from` by `to`.
    pub fn identify_variables(&self, from: &VarId, to: &VarId) -> LinearForm {
        let mut coefficients = self.coefficients.clone();
        if let Some(c) = coefficients.remove(from) {
            *coefficients.entry(to.clone()).or_insert(0) += c;
        }
        let mut form = LinearForm {
            coefficients,
            relation: self.relation,
        };
        form.normalize();
        form
    }

    /// An equality scaled by the gcd of its coefficients and constant, with
    /// a positive leading coefficient. Congruences are returned unchanged.
    pub fn primitive(&self) -> LinearForm {
        let Relation::Equals(k) = self.relation else {
            return self.clone();
        };
        let g = self.coefficients.values().fold(k.unsigned_abs(), |g, &c| {
            num::integer::gcd(g, c.unsigned_abs())
        }) as i64;
        if g == 0 {
            return self.clone();
        }
        let sign = match self.coefficients.values().next() {
            Some(&c) if c < 0 => -1,
            None if k < 0 => -1,
            _ => 1,
        };
        LinearForm {
            coefficients: self
                .coefficients
                .iter()
                .map(|(v, c)| (v.clone(), sign * c / g))
                .collect(),
            relation: Relation::Equals(sign * k / g),
        }
    }

    /// Equal up to a nonzero rational scale factor.
    pub fn equivalent(&self, other: &LinearForm) -> bool {
        self.primitive() == other.primitive()
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coefficients.is_empty() {
            f.write_str("0")?;
        }
        for (k, (v, &c)) in self.coefficients.iter().enumerate() {
            let mag = c.abs();
            match (k, c < 0) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if mag != 1 {
                write!(f, "{mag}*")?;
            }
            write!(f, "i{v}")?;
        }
        match self.relation {
            Relation::Equals(k) => write!(f, " = {k}"),
            Relation::CongruentMod { residue, modulus } => {
                write!(f, " ≡ {residue} (mod {modulus})")
            }
        }
    }
}

impl FromStr for LinearForm {
    type Err = FormError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Parser::new(s).form()
    }
}

impl Serialize for LinearForm {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for LinearForm {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

#[derive(Default)]
struct Side {
    terms: Vec<(VarId, i64)>,
    constant: i64,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, pos: 0 }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, FormError> {
        Err(FormError::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Option<i64> {
        self.skip_ws();
        let digits = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return None;
        }
        let v = self.rest()[..digits].parse().ok()?;
        self.pos += digits;
        Some(v)
    }

    fn variable(&mut self) -> Result<Option<VarId>, FormError> {
        self.skip_ws();
        if !self.rest().starts_with('i') {
            return Ok(None);
        }
        let name_len = self.rest()[1..]
            .bytes()
            .take_while(|b| b.is_ascii_alphanumeric() || *b == b'_')
            .count();
        if name_len == 0 {
            return self.err("empty variable name");
        }
        let name = &self.rest()[1..1 + name_len];
        self.pos += 1 + name_len;
        Ok(Some(VarId::new(name)))
    }

    fn side(&mut self) -> Result<Side, FormError> {
        let mut side = Side::default();
        let mut first = true;
        loop {
            let sign = if self.eat("-") {
                -1
            } else if self.eat("+") || first {
                1
            } else {
                break;
            };
            first = false;
            let coef = self.integer();
            if coef.is_some() {
                self.eat("*");
            }
            match (coef, self.variable()?) {
                (c, Some(v)) => side.terms.push((v, sign * c.unwrap_or(1))),
                (Some(c), None) => side.constant += sign * c,
                (None, None) => return self.err("expected a term"),
            }
        }
        Ok(side)
    }

    fn form(&mut self) -> Result<LinearForm, FormError> {
        let lhs = self.side()?;
        let congruence_symbol = if self.eat("≡") {
            true
        } else if self.eat("==") || self.eat("=") {
            false
        } else {
            return self.err("expected '=' or '≡'");
        };
        let rhs = self.side()?;
        let modulus = if self.eat("(") {
            if !self.eat("mod") {
                return self.err("expected 'mod'");
            }
            let Some(q) = self.integer() else {
                return self.err("expected modulus");
            };
            if !self.eat(")") {
                return self.err("expected ')'");
            }
            Some(q)
        } else {
            None
        };
        self.skip_ws();
        if !self.rest().is_empty() {
            return self.err(format!("trailing input {:?}", self.rest()));
        }
        let k = rhs.constant - lhs.constant;
        let relation = match (modulus, congruence_symbol) {
            (Some(q), _) => Relation::CongruentMod {
                residue: k,
                modulus: q,
            },
            (None, true) => return self.err("'≡' needs a (mod q) suffix"),
            (None, false) => Relation::Equals(k),
        };
        let terms = lhs
            .terms
            .into_iter()
            .chain(rhs.terms.into_iter().map(|(v, c)| (v, -c)));
        LinearForm::new(terms, relation)
    }
}
