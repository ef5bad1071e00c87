//! Edge orbits of a permutation group and the Euler characteristic of the
//! fixed-point complex, expanded over orbit subsets.
//!
//! The fixed-point complex has the edge orbits as vertices, and a set of
//! orbits is a face exactly when the union graph is in the complex. Its
//! Euler characteristic is therefore `Σ (-1)^(|S|+1) i(∪S)` over nonempty
//! orbit sets `S`, which is all that is ever computed here.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;
use thiserror::Error;

use crate::form::{FormError, LinearForm, Relation, VarId};
use crate::graphcat::{edge_endpoints, edge_index, pair_count, Catalog, CirculantSpec, Graph};
use crate::perm::{PermGroup, Permutation};

/// More orbits than this and the subset expansion is refused.
pub const MAX_ORBITS: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrbitError {
    #[error("group degree {group} does not match catalog degree {catalog}")]
    DegreeMismatch { group: usize, catalog: usize },
    #[error("{0} edge orbits; at most {MAX_ORBITS} supported")]
    TooManyOrbits(usize),
    #[error("union of orbits {orbits:?} is not a catalog graph")]
    Unidentifiable { orbits: Vec<usize>, bits: String },
    #[error(transparent)]
    Form(#[from] FormError),
}

/// Action of every group element on the vertex pairs.
#[derive(Debug, Clone)]
pub struct EdgeAction {
    n: usize,
    edge_perms: Vec<Vec<usize>>,
}

impl EdgeAction {
    pub fn new(group: &PermGroup) -> Self {
        let n = group.degree();
        EdgeAction {
            n,
            edge_perms: group.elements().iter().map(|g| edge_perm(g)).collect(),
        }
    }

    pub fn edge_perms(&self) -> &[Vec<usize>] {
        &self.edge_perms
    }

    pub fn apply(&self, element: usize, g: &Graph) -> Graph {
        let perm = &self.edge_perms[element];
        let mut bits = 0u64;
        for k in 0..pair_count(self.n) {
            if g.bits() >> k & 1 == 1 {
                bits |= 1 << perm[k];
            }
        }
        Graph::from_bits(self.n, bits)
    }
}

/// The permutation of pair indices induced by a vertex permutation.
pub fn edge_perm(g: &Permutation) -> Vec<usize> {
    let n = g.degree();
    (0..pair_count(n))
        .map(|k| {
            let (i, j) = edge_endpoints(n, k);
            edge_index(n, g.apply(i), g.apply(j))
        })
        .collect()
}

/// Edge orbits of a group, each as the graph of its edges, ordered by
/// smallest edge index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitSet {
    pub orbits: Vec<Graph>,
}

impl OrbitSet {
    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }

    /// Union of the orbits selected by the bits of `mask`.
    pub fn union(&self, mask: u32) -> Graph {
        let n = self.orbits[0].n();
        self.orbits
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .fold(Graph::empty(n), |acc, (_, g)| acc.union(g))
    }
}

/// Orbits of the induced action on vertex pairs. Orbits of the group are
/// orbits of its generators, so only those are applied.
pub fn edge_orbits(group: &PermGroup) -> OrbitSet {
    let n = group.degree();
    let m = pair_count(n);
    let perms: Vec<Vec<usize>> = group.generators().iter().map(edge_perm).collect();
    let mut orbit_of = vec![usize::MAX; m];
    let mut orbits = Vec::new();
    for start in 0..m {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        let mut stack = vec![start];
        orbit_of[start] = id;
        let mut g = Graph::empty(n);
        while let Some(e) = stack.pop() {
            let (i, j) = edge_endpoints(n, e);
            g.add_edge(i, j);
            for p in &perms {
                let f = p[e];
                if orbit_of[f] == usize::MAX {
                    orbit_of[f] = id;
                    stack.push(f);
                }
            }
        }
        orbits.push(g);
    }
    OrbitSet { orbits }
}

/// One term `sign · i(∪S)` of the unmerged expansion.
#[derive(Debug, Clone, Serialize)]
pub struct RawTerm {
    /// Orbit positions in `S`.
    pub orbits: Vec<usize>,
    pub sign: i64,
    /// Circulant connection set equal to the union as a labeled graph,
    /// or `≅` and the class id when the union is only isomorphic to one.
    pub label: String,
    pub class: VarId,
}

/// Output of [`euler_form`]: the orbit structure, the raw expansion and the
/// merged form.
#[derive(Debug, Clone)]
pub struct EulerForm {
    pub orbits: OrbitSet,
    /// Label of each orbit (see [`RawTerm::label`]).
    pub orbit_labels: Vec<String>,
    pub orbit_classes: Vec<VarId>,
    pub raw: Vec<RawTerm>,
    pub form: LinearForm,
}

impl EulerForm {
    /// The raw expansion as text, grouped by subset size, e.g.
    /// `i13 + i2 + i4 + i5 - i123 - ...`.
    pub fn raw_text(&self) -> String {
        let mut out = String::new();
        for (k, t) in self.raw.iter().enumerate() {
            let sign = if t.sign < 0 { "-" } else { "+" };
            if k == 0 {
                if t.sign < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            out.push('i');
            out.push_str(&t.label);
        }
        out
    }

    /// Sum of raw signs, the Euler characteristic of a full simplex on the
    /// orbits; always 1.
    pub fn all_ones_value(&self) -> i64 {
        self.raw.iter().map(|t| t.sign).sum()
    }
}

/// Name of a graph that is literally `G_D` for some connection set.
pub fn circulant_label(g: &Graph) -> Option<String> {
    CirculantSpec::all(g.n())
        .into_iter()
        .find(|s| crate::graphcat::circulant(s) == *g)
        .map(|s| s.name())
}

/// Expands `χ(Δ^Γ)` over nonempty orbit subsets, merges isomorphic classes
/// into one variable, substitutes `i_empty = 1`, `i_complete = 0`, and
/// attaches `relation` (`Equals(1)` or `CongruentMod(1, q)`).
pub fn euler_form(
    group: &PermGroup,
    catalog: &Catalog,
    relation: Relation,
) -> Result<EulerForm, OrbitError> {
    if group.degree() != catalog.n() {
        return Err(OrbitError::DegreeMismatch {
            group: group.degree(),
            catalog: catalog.n(),
        });
    }
    let orbits = edge_orbits(group);
    let k = orbits.len();
    if k > MAX_ORBITS {
        return Err(OrbitError::TooManyOrbits(k));
    }
    let mut cache: HashMap<Graph, VarId> = HashMap::new();
    let mut raw = Vec::with_capacity((1 << k) - 1);
    for mask in subsets_by_size(k) {
        let union = orbits.union(mask);
        let class = match cache.get(&union) {
            Some(c) => c.clone(),
            None => {
                let c = catalog.identify(&union).cloned().ok_or_else(|| {
                    OrbitError::Unidentifiable {
                        orbits: (0..k).filter(|b| mask >> b & 1 == 1).collect(),
                        bits: union.to_bit_string(),
                    }
                })?;
                cache.insert(union, c.clone());
                c
            }
        };
        let size = mask.count_ones() as i64;
        raw.push(RawTerm {
            orbits: (0..k).filter(|b| mask >> b & 1 == 1).collect(),
            sign: if size % 2 == 1 { 1 } else { -1 },
            label: circulant_label(&union).unwrap_or_else(|| format!("≅{class}")),
            class,
        });
    }
    let mut merged: BTreeMap<VarId, i64> = BTreeMap::new();
    for t in &raw {
        *merged.entry(t.class.clone()).or_insert(0) += t.sign;
    }
    let form = LinearForm::new(merged, relation)?;
    let orbit_labels = (0..k).map(|b| raw_label(&raw, b)).collect();
    let orbit_classes = (0..k)
        .map(|b| {
            raw.iter()
                .find(|t| t.orbits == [b])
                .map(|t| t.class.clone())
                .expect("singletons are expanded")
        })
        .collect();
    Ok(EulerForm {
        orbits,
        orbit_labels,
        orbit_classes,
        raw,
        form,
    })
}

/// Nonempty subsets of `0..k` as bitmasks, by size and then
/// lexicographically by member list.
fn subsets_by_size(k: usize) -> impl Iterator<Item = u32> {
    (1..=k).flat_map(move |size| {
        let mut idx: Vec<usize> = (0..size).collect();
        let mut done = false;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let mask = idx.iter().fold(0u32, |m, &i| m | 1 << i);
            // Advance to the next combination.
            match (0..size).rev().find(|&j| idx[j] < k - size + j) {
                None => done = true,
                Some(j) => {
                    idx[j] += 1;
                    for t in j + 1..size {
                        idx[t] = idx[t - 1] + 1;
                    }
                }
            }
            Some(mask)
        })
    })
}

fn raw_label(raw: &[RawTerm], orbit: usize) -> String {
    raw.iter()
        .find(|t| t.orbits == [orbit])
        .map(|t| t.label.clone())
        .expect("singletons are expanded")
}
