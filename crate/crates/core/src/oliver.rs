//! Subgroup chains satisfying the hypotheses of Oliver's fixed-point
//! theorems, and a bounded search for them.
//!
//! A first-kind chain `Γ′ ◁ Γ` has `Γ/Γ′` cyclic and `|Γ′|` a prime power;
//! it licenses `χ(Δ^Γ) = 1`. A second-kind chain `Γ″ ◁ Γ′ ◁ Γ` has
//! `Γ′/Γ″` cyclic, `|Γ″| = p^a` and `|Γ/Γ′| = q^b`; it licenses
//! `χ(Δ^Γ) ≡ 1 (mod q)`.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::form::{LinearForm, Relation};
use crate::graphcat::Catalog;
use crate::orbitcx::euler_form;
use crate::perm::{GroupRecord, PermError, PermGroup, Permutation, PrimePower};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChainError {
    #[error("degree mismatch between chain members")]
    DegreeMismatch,
    #[error("not-subgroup: {0}")]
    NotSubgroup(&'static str),
    #[error("not-normal: {0}")]
    NotNormal(&'static str),
    #[error("quotient-not-cyclic: {0}")]
    QuotientNotCyclic(&'static str),
    #[error("order-not-prime-power: |{which}| = {order}")]
    OrderNotPrimePower { which: &'static str, order: usize },
    #[error("quotient-order-not-prime-power: |Γ/Γ′| = {0}")]
    QuotientOrderNotPrimePower(usize),
    #[error(transparent)]
    Perm(#[from] PermError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Theorem {
    /// Cyclic quotient over a normal `p`-subgroup.
    One,
    /// Two-step chain with a `q`-group on top.
    Two,
}

/// A verified chain together with the constraint it licenses.
#[derive(Debug, Clone)]
pub struct OliverChain {
    pub theorem: Theorem,
    pub gamma: Arc<PermGroup>,
    pub gamma1: Arc<PermGroup>,
    pub gamma2: Option<Arc<PermGroup>>,
    /// Prime of the normal prime-power subgroup; `None` when it is trivial.
    pub p: Option<u64>,
    /// Prime of `|Γ/Γ′|` for second-kind chains; `None` when the quotient
    /// is trivial, in which case the congruence holds for every prime and
    /// the relation collapses to equality.
    pub q: Option<u64>,
    pub relation: Relation,
}

impl OliverChain {
    /// Orders `(|Γ|, |Γ′|, |Γ″|)`, with `|Γ″| = 0` for first-kind chains.
    pub fn orders(&self) -> (usize, usize, usize) {
        (
            self.gamma.order(),
            self.gamma1.order(),
            self.gamma2.as_ref().map_or(0, |g| g.order()),
        )
    }

    pub fn record(&self) -> ChainRecord {
        ChainRecord {
            theorem: self.theorem,
            gamma: self.gamma.describe(),
            gamma1: self.gamma1.describe(),
            gamma2: self.gamma2.as_ref().map(|g| g.describe()),
            p: self.p,
            q: self.q,
            relation: relation_text(self.relation),
        }
    }

    /// Re-runs the hypothesis checks on the stored groups.
    pub fn reverify(&self) -> Result<OliverChain, ChainError> {
        match &self.gamma2 {
            None => verify_thm1(&self.gamma1, &self.gamma),
            Some(g2) => verify_thm2(g2, &self.gamma1, &self.gamma),
        }
    }
}

fn relation_text(r: Relation) -> String {
    match r {
        Relation::Equals(k) => format!("chi = {k}"),
        Relation::CongruentMod { residue, modulus } => {
            format!("chi ≡ {residue} (mod {modulus})")
        }
    }
}

/// One chain per record in a chain library.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainRecord {
    pub theorem: Theorem,
    pub gamma: GroupRecord,
    pub gamma1: GroupRecord,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub gamma2: Option<GroupRecord>,
    pub p: Option<u64>,
    pub q: Option<u64>,
    pub relation: String,
}

impl ChainRecord {
    /// Rebuilds the groups and verifies the chain from scratch.
    pub fn to_chain(&self) -> Result<OliverChain, ChainError> {
        let g = self.gamma.to_group()?;
        let g1 = self.gamma1.to_group()?;
        match &self.gamma2 {
            None => verify_thm1(&g1, &g),
            Some(r) => verify_thm2(&r.to_group()?, &g1, &g),
        }
    }
}

impl fmt::Display for OliverChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b, c) = self.orders();
        match self.theorem {
            Theorem::One => write!(f, "T1 |Γ|={a} |Γ′|={b}")?,
            Theorem::Two => write!(f, "T2 |Γ|={a} |Γ′|={b} |Γ″|={c}")?,
        }
        write!(f, " {}", relation_text(self.relation))
    }
}

fn require_subgroup(
    sub: &PermGroup,
    amb: &PermGroup,
    which: &'static str,
) -> Result<(), ChainError> {
    if sub.degree() != amb.degree() {
        return Err(ChainError::DegreeMismatch);
    }
    if !sub.is_subgroup_of(amb) {
        return Err(ChainError::NotSubgroup(which));
    }
    Ok(())
}

fn require_normal(sub: &PermGroup, amb: &PermGroup, which: &'static str) -> Result<(), ChainError> {
    if !sub.is_normal_in(amb)? {
        return Err(ChainError::NotNormal(which));
    }
    Ok(())
}

/// Checks `Γ′ ◁ Γ`, `Γ/Γ′` cyclic and `|Γ′|` a prime power.
pub fn verify_thm1(gamma1: &PermGroup, gamma: &PermGroup) -> Result<OliverChain, ChainError> {
    require_subgroup(gamma1, gamma, "Γ′ ⊄ Γ")?;
    require_normal(gamma1, gamma, "Γ′ in Γ")?;
    if !gamma.quotient(gamma1)?.is_cyclic() {
        return Err(ChainError::QuotientNotCyclic("Γ/Γ′"));
    }
    let pp = gamma1
        .prime_power_order()
        .ok_or(ChainError::OrderNotPrimePower {
            which: "Γ′",
            order: gamma1.order(),
        })?;
    Ok(OliverChain {
        theorem: Theorem::One,
        gamma: Arc::new(gamma.clone()),
        gamma1: Arc::new(gamma1.clone()),
        gamma2: None,
        p: pp.prime,
        q: None,
        relation: Relation::Equals(1),
    })
}

/// Checks `Γ″ ◁ Γ′ ◁ Γ`, `Γ′/Γ″` cyclic, `|Γ″|` and `|Γ/Γ′|` prime powers.
pub fn verify_thm2(
    gamma2: &PermGroup,
    gamma1: &PermGroup,
    gamma: &PermGroup,
) -> Result<OliverChain, ChainError> {
    require_subgroup(gamma1, gamma, "Γ′ ⊄ Γ")?;
    require_subgroup(gamma2, gamma1, "Γ″ ⊄ Γ′")?;
    require_normal(gamma1, gamma, "Γ′ in Γ")?;
    require_normal(gamma2, gamma1, "Γ″ in Γ′")?;
    if !gamma1.quotient(gamma2)?.is_cyclic() {
        return Err(ChainError::QuotientNotCyclic("Γ′/Γ″"));
    }
    let pp = gamma2
        .prime_power_order()
        .ok_or(ChainError::OrderNotPrimePower {
            which: "Γ″",
            order: gamma2.order(),
        })?;
    let index = gamma.order() / gamma1.order();
    let qq = PrimePower::of(index as u64).ok_or(ChainError::QuotientOrderNotPrimePower(index))?;
    let relation = match qq.prime {
        Some(q) => Relation::CongruentMod {
            residue: 1,
            modulus: q as i64,
        },
        None => Relation::Equals(1),
    };
    Ok(OliverChain {
        theorem: Theorem::Two,
        gamma: Arc::new(gamma.clone()),
        gamma1: Arc::new(gamma1.clone()),
        gamma2: Some(Arc::new(gamma2.clone())),
        p: pp.prime,
        q: qq.prime,
        relation,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("ambient group of order {0} exceeds the search limit of {MAX_AMBIENT_ORDER}")]
    AmbientTooLarge(usize),
}

/// Largest ambient group the search tabulates.
pub const MAX_AMBIENT_ORDER: usize = 4096;

#[derive(Debug, Clone)]
pub struct SearchResult {
    pub chains: Vec<OliverChain>,
    /// Set when the budget ran out before every candidate tuple was tried.
    pub truncated: bool,
    pub candidates: usize,
    pub examined: usize,
}

/// Element subset of the ambient group as a bitset over element indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct ElemSet(Vec<u64>);

impl ElemSet {
    fn new(n: usize) -> Self {
        ElemSet(vec![0; n.div_ceil(64)])
    }

    fn contains(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn insert(&mut self, i: usize) -> bool {
        let was = self.contains(i);
        self.0[i / 64] |= 1 << (i % 64);
        !was
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn is_subset(&self, other: &ElemSet) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &bits)| {
            (0..64)
                .filter(move |b| bits >> b & 1 == 1)
                .map(move |b| w * 64 + b)
        })
    }
}

/// The ambient group with a multiplication table over element indices.
struct Table {
    elements: Vec<Permutation>,
    mul: Vec<u32>,
    inv: Vec<u32>,
    identity: usize,
}

impl Table {
    fn new(g: &PermGroup) -> Self {
        let elements = g.elements().to_vec();
        let n = elements.len();
        let mut mul = vec![0u32; n * n];
        for (a, pa) in elements.iter().enumerate() {
            for (b, pb) in elements.iter().enumerate() {
                mul[a * n + b] = g.index_of(&pa.compose(pb)).expect("closed") as u32;
            }
        }
        let inv = elements
            .iter()
            .map(|p| g.index_of(&p.inverse()).expect("closed") as u32)
            .collect();
        let identity = g
            .index_of(&Permutation::identity(g.degree()))
            .expect("identity present");
        Table {
            elements,
            mul,
            inv,
            identity,
        }
    }

    fn len(&self) -> usize {
        self.elements.len()
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.len() + b] as usize
    }

    fn conj(&self, h: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv[g] as usize, h), g)
    }

    fn closure(&self, gens: impl IntoIterator<Item = usize>) -> ElemSet {
        let gens: Vec<usize> = gens.into_iter().collect();
        let mut set = ElemSet::new(self.len());
        set.insert(self.identity);
        let mut queue = vec![self.identity];
        let mut k = 0;
        while k < queue.len() {
            let x = queue[k];
            k += 1;
            for &g in &gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    queue.push(y);
                }
            }
        }
        set
    }

    /// Greedy generating set, scanning elements in sorted order.
    fn generators(&self, set: &ElemSet) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut current = self.closure([]);
        for e in set.iter() {
            if !current.contains(e) {
                gens.push(e);
                current = self.closure(gens.iter().copied());
            }
        }
        gens
    }

    fn normalizes(&self, g: usize, sub: &Candidate) -> bool {
        sub.gens.iter().all(|&h| sub.set.contains(self.conj(h, g)))
    }

    fn is_normal(&self, sub: &Candidate, amb: &Candidate) -> bool {
        amb.gens.iter().all(|&g| self.normalizes(g, sub))
    }

    /// `amb/sub` cyclic, assuming `sub ◁ amb`.
    fn quotient_cyclic(&self, sub: &Candidate, amb: &Candidate) -> bool {
        let index = amb.order / sub.order;
        if index == 1 {
            return true;
        }
        amb.set.iter().any(|g| {
            let mut x = g;
            for t in 1..=index {
                if sub.set.contains(x) {
                    return t == index;
                }
                x = self.mul(x, g);
            }
            false
        })
    }

    fn to_group(&self, c: &Candidate, degree: usize) -> PermGroup {
        let gens = c.gens.iter().map(|&i| self.elements[i].clone()).collect();
        PermGroup::generate(degree, gens).expect("subgroup fits the cap")
    }
}

#[derive(Debug, Clone)]
struct Candidate {
    set: ElemSet,
    order: usize,
    gens: Vec<usize>,
}

/// Bounded, deliberately incomplete search for chains inside `ambient`.
///
/// Candidate subgroups are the trivial group, `ambient` itself, every cyclic
/// subgroup, every subgroup generated by two cyclic subgroups, the normal
/// closure of every cyclic subgroup, and the normalizers of all of these,
/// restricted to order at most `max_subgroup_order`. Every candidate pair
/// and triple is then tested against the chain hypotheses; each test costs
/// one unit of `budget`.
pub fn search_chains(
    ambient: &PermGroup,
    max_subgroup_order: usize,
    budget: usize,
) -> Result<SearchResult, SearchError> {
    if ambient.order() > MAX_AMBIENT_ORDER {
        return Err(SearchError::AmbientTooLarge(ambient.order()));
    }
    let t = Table::new(ambient);
    let n = t.len();
    let mut seen: HashMap<ElemSet, usize> = HashMap::new();
    let mut sets: Vec<ElemSet> = Vec::new();
    let mut add = |set: ElemSet, sets: &mut Vec<ElemSet>| {
        if !seen.contains_key(&set) {
            seen.insert(set.clone(), sets.len());
            sets.push(set);
        }
    };

    add(t.closure([]), &mut sets);
    add(t.closure(0..n), &mut sets);
    let mut cyclic_reps: Vec<usize> = Vec::new();
    let mut cyclic_seen = HashMap::new();
    for g in 0..n {
        let c = t.closure([g]);
        if !cyclic_seen.contains_key(&c) {
            cyclic_seen.insert(c.clone(), g);
            cyclic_reps.push(g);
            add(c, &mut sets);
        }
    }
    for (k, &a) in cyclic_reps.iter().enumerate() {
        for &b in &cyclic_reps[k + 1..] {
            add(t.closure([a, b]), &mut sets);
        }
        let conjugates: Vec<usize> = (0..n).map(|g| t.conj(a, g)).collect();
        add(t.closure(conjugates), &mut sets);
    }
    let base: Vec<Candidate> = sets
        .iter()
        .map(|s| Candidate {
            order: s.count(),
            gens: t.generators(s),
            set: s.clone(),
        })
        .collect();
    for c in &base {
        let normalizer: Vec<usize> = (0..n).filter(|&g| t.normalizes(g, c)).collect();
        add(t.closure(normalizer), &mut sets);
    }

    let mut cands: Vec<Candidate> = sets
        .into_iter()
        .map(|set| Candidate {
            order: set.count(),
            gens: Vec::new(),
            set,
        })
        .filter(|c| c.order <= max_subgroup_order)
        .collect();
    cands.sort_by(|a, b| a.order.cmp(&b.order).then_with(|| a.set.cmp(&b.set)));
    for c in &mut cands {
        c.gens = t.generators(&c.set);
    }

    let mut examined = 0usize;
    let mut truncated = false;
    let mut found: Vec<(
        Theorem,
        usize,
        usize,
        Option<usize>,
        Option<u64>,
        Option<u64>,
    )> = Vec::new();
    'outer: for (gi, g) in cands.iter().enumerate() {
        for (hi, h) in cands.iter().enumerate() {
            if h.order > g.order || g.order % h.order != 0 || !h.set.is_subset(&g.set) {
                continue;
            }
            if examined == budget {
                truncated = true;
                break 'outer;
            }
            examined += 1;
            if !t.is_normal(h, g) {
                continue;
            }
            if let Some(pp) = PrimePower::of(h.order as u64) {
                if t.quotient_cyclic(h, g) {
                    found.push((Theorem::One, gi, hi, None, pp.prime, None));
                }
            }
            let Some(qq) = PrimePower::of((g.order / h.order) as u64) else {
                continue;
            };
            if qq.prime.is_none() {
                // Trivial top quotient: the chain is a first-kind chain on Γ′.
                continue;
            }
            for (li, l) in cands.iter().enumerate() {
                if l.order > h.order || h.order % l.order != 0 || !l.set.is_subset(&h.set) {
                    continue;
                }
                if examined == budget {
                    truncated = true;
                    break 'outer;
                }
                examined += 1;
                let Some(pp) = PrimePower::of(l.order as u64) else {
                    continue;
                };
                if t.is_normal(l, h) && t.quotient_cyclic(l, h) {
                    found.push((Theorem::Two, gi, hi, Some(li), pp.prime, qq.prime));
                }
            }
        }
    }

    let degree = ambient.degree();
    let mut groups: HashMap<usize, Arc<PermGroup>> = HashMap::new();
    let mut group = |i: usize| {
        groups
            .entry(i)
            .or_insert_with(|| Arc::new(t.to_group(&cands[i], degree)))
            .clone()
    };
    let mut chains: Vec<OliverChain> = found
        .into_iter()
        .map(|(theorem, gi, hi, li, p, q)| OliverChain {
            theorem,
            gamma: group(gi),
            gamma1: group(hi),
            gamma2: li.map(&mut group),
            p,
            q,
            relation: match q {
                Some(q) => Relation::CongruentMod {
                    residue: 1,
                    modulus: q as i64,
                },
                None => Relation::Equals(1),
            },
        })
        .collect();
    chains.sort_by_cached_key(|c| {
        (
            c.orders(),
            c.gamma.generator_strings(),
            c.gamma1.generator_strings(),
            c.gamma2.as_ref().map(|g| g.generator_strings()),
        )
    });
    Ok(SearchResult {
        chains,
        truncated,
        candidates: cands.len(),
        examined,
    })
}

/// Constraint forms derived from a chain library.
#[derive(Debug, Clone, Default, Serialize)]
pub struct ChainForms {
    /// Distinct non-degenerate forms, in chain order.
    pub forms: Vec<LinearForm>,
    /// Chains whose Γ has an orbit union outside the catalog or too many
    /// orbits.
    pub rejected: usize,
    /// Chains whose form has no variables left.
    pub degenerate: usize,
}

/// Runs [`euler_form`] on the Γ of every chain, once per distinct
/// `(Γ, relation)`, keeping each resulting form once.
pub fn chain_forms(chains: &[OliverChain], catalog: &Catalog) -> ChainForms {
    let mut memo: HashMap<(Vec<String>, Relation), Option<LinearForm>> = HashMap::new();
    let mut out = ChainForms::default();
    let mut seen = HashSet::new();
    for c in chains {
        let key = (c.gamma.generator_strings(), c.relation);
        let form = memo.entry(key).or_insert_with(|| {
            euler_form(&c.gamma, catalog, c.relation)
                .ok()
                .map(|e| e.form)
        });
        match form {
            None => out.rejected += 1,
            Some(f) if f.is_degenerate() => out.degenerate += 1,
            Some(f) => {
                if seen.insert(f.clone()) {
                    out.forms.push(f.clone());
                }
            }
        }
    }
    out
}
