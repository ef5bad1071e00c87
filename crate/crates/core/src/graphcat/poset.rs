use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use super::catalog::Catalog;
use super::iso::contains_up_to_iso;
use crate::form::VarId;

/// Subgraph-embedding order on catalog classes.
#[derive(Debug, Clone)]
pub struct InclusionPoset {
    ids: Vec<VarId>,
    /// `leq[a][b]` iff class `a` embeds in class `b`.
    leq: Vec<Vec<bool>>,
    /// Embedding of `a` into `b` for every strict relation.
    witnesses: BTreeMap<(usize, usize), Vec<usize>>,
    hasse: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PosetSummary {
    pub classes: Vec<String>,
    pub relations: Vec<(String, String)>,
    pub hasse: Vec<(String, String)>,
}

impl InclusionPoset {
    /// Decides every ordered pair of classes by embedding search and takes
    /// the transitive reduction.
    pub fn build(catalog: &Catalog) -> InclusionPoset {
        let classes = catalog.classes();
        let k = classes.len();
        let ids: Vec<VarId> = classes.iter().map(|c| c.id.clone()).collect();
        let mut leq = vec![vec![false; k]; k];
        let mut witnesses = BTreeMap::new();
        for a in 0..k {
            leq[a][a] = true;
            for b in 0..k {
                let (ga, gb) = (&classes[a].representative, &classes[b].representative);
                // Distinct classes are non-isomorphic, so equal edge counts
                // rule out an embedding.
                if a == b || ga.edge_count() >= gb.edge_count() {
                    continue;
                }
                if let Some(sigma) = contains_up_to_iso(gb, ga) {
                    leq[a][b] = true;
                    witnesses.insert((a, b), sigma);
                }
            }
        }
        let mut hasse = Vec::new();
        for a in 0..k {
            for b in 0..k {
                if a != b
                    && leq[a][b]
                    && !(0..k).any(|c| c != a && c != b && leq[a][c] && leq[c][b])
                {
                    hasse.push((a, b));
                }
            }
        }
        InclusionPoset {
            ids,
            leq,
            witnesses,
            hasse,
        }
    }

    pub fn ids(&self) -> &[VarId] {
        &self.ids
    }

    pub fn index_of(&self, id: &VarId) -> Option<usize> {
        self.ids.iter().position(|x| x == id)
    }

    /// Whether class `a` embeds in class `b`. Unknown ids compare false.
    pub fn leq(&self, a: &VarId, b: &VarId) -> bool {
        match (self.index_of(a), self.index_of(b)) {
            (Some(i), Some(j)) => self.leq[i][j],
            _ => false,
        }
    }

    pub fn witness(&self, a: &VarId, b: &VarId) -> Option<&[usize]> {
        let (i, j) = (self.index_of(a)?, self.index_of(b)?);
        self.witnesses.get(&(i, j)).map(Vec::as_slice)
    }

    /// Strict relations `(a, b)` with `a < b`.
    pub fn relations(&self) -> Vec<(&VarId, &VarId)> {
        let k = self.ids.len();
        (0..k)
            .flat_map(|a| (0..k).map(move |b| (a, b)))
            .filter(|&(a, b)| a != b && self.leq[a][b])
            .map(|(a, b)| (&self.ids[a], &self.ids[b]))
            .collect()
    }

    pub fn hasse(&self) -> Vec<(&VarId, &VarId)> {
        self.hasse
            .iter()
            .map(|&(a, b)| (&self.ids[a], &self.ids[b]))
            .collect()
    }

    /// Classes strictly below `id`.
    pub fn below(&self, id: &VarId) -> Vec<&VarId> {
        let Some(j) = self.index_of(id) else {
            return Vec::new();
        };
        (0..self.ids.len())
            .filter(|&i| i != j && self.leq[i][j])
            .map(|i| &self.ids[i])
            .collect()
    }

    pub fn summary(&self) -> PosetSummary {
        let pair = |(a, b): (&VarId, &VarId)| (a.to_string(), b.to_string());
        PosetSummary {
            classes: self.ids.iter().map(|v| v.to_string()).collect(),
            relations: self.relations().into_iter().map(pair).collect(),
            hasse: self.hasse().into_iter().map(pair).collect(),
        }
    }

    /// The Hasse diagram in DOT, smaller graphs at the bottom.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph inclusion {\n  rankdir=BT;\n  node [shape=box];\n");
        for id in &self.ids {
            let _ = writeln!(out, "  \"{id}\";");
        }
        for (a, b) in self.hasse() {
            let _ = writeln!(out, "  \"{a}\" -> \"{b}\";");
        }
        out.push_str("}\n");
        out
    }
}

/// Nontrivial circulant inclusions drawn in the reference figures, as
/// `(smaller, larger)` member names.
pub const LISTED_CIRCULANT_INCLUSIONS: [(&str, &str); 13] = [
    ("5", "1"),
    ("1245", "1234"),
    ("1", "25"),
    ("123", "1245"),
    ("25", "12"),
    ("125", "123"),
    ("25", "14"),
    ("145", "123"),
    ("15", "124"),
    ("15", "13"),
    ("245", "124"),
    ("14", "125"),
    ("12", "145"),
];

/// Relations of the Petersen graph and its complement to the circulants.
pub const LISTED_PETERSEN_RELATIONS: [(&str, &str); 9] = [
    ("P", "Pbar"),
    ("5", "P"),
    ("2", "P"),
    ("Pbar", "1234"),
    ("Pbar", "1235"),
    ("P", "123"),
    ("P", "245"),
    ("25", "Pbar"),
    ("13", "Pbar"),
];

/// Outcome of checking one listed relation.
#[derive(Debug, Clone, Serialize)]
pub struct RelationCheck {
    pub smaller: String,
    pub larger: String,
    pub holds: bool,
    /// Vertex map sending the smaller graph into the larger one.
    pub witness: Option<Vec<usize>>,
}

/// Checks each `(smaller, larger)` member-name pair by direct embedding
/// search on the named members, independent of the class order.
pub fn check_relations(catalog: &Catalog, pairs: &[(&str, &str)]) -> Vec<RelationCheck> {
    let member = |name: &str| {
        catalog
            .classes()
            .iter()
            .flat_map(|c| &c.members)
            .find(|m| m.to_string() == name)
            .map(|m| m.graph())
    };
    pairs
        .iter()
        .map(|&(a, b)| {
            let witness = match (member(a), member(b)) {
                (Some(ga), Some(gb)) if ga.edge_count() < gb.edge_count() => {
                    contains_up_to_iso(&gb, &ga)
                }
                _ => None,
            };
            RelationCheck {
                smaller: a.to_string(),
                larger: b.to_string(),
                holds: witness.is_some(),
                witness,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphcat::iso::witness_embeds;

    #[test]
    fn order_axioms_and_witnesses() {
        let cat = Catalog::build(10).unwrap();
        let poset = InclusionPoset::build(&cat);
        let ids = poset.ids().to_vec();
        for a in &ids {
            assert!(poset.leq(a, a));
            for b in &ids {
                if a != b && poset.leq(a, b) {
                    assert!(!poset.leq(b, a), "antisymmetry {a} {b}");
                    let (ga, gb) = (
                        cat.get(a).unwrap().representative,
                        cat.get(b).unwrap().representative,
                    );
                    assert!(ga.edge_count() < gb.edge_count());
                    assert!(witness_embeds(&gb, &ga, poset.witness(a, b).unwrap()));
                    for c in &ids {
                        if poset.leq(b, c) {
                            assert!(poset.leq(a, c), "transitivity {a} {b} {c}");
                        }
                    }
                }
            }
            assert!(poset.leq(&VarId::empty(), a));
            assert!(poset.leq(a, &VarId::complete()));
        }
    }

    #[test]
    fn printed_examples() {
        let cat = Catalog::build(10).unwrap();
        let poset = InclusionPoset::build(&cat);
        let v = VarId::new;
        for d in ["15", "25", "125", "135", "145", "245", "1235", "1245"] {
            assert!(poset.leq(&v("5"), &v(d)), "5 <= {d}");
        }
        assert!(poset.leq(&v("25"), &v("12")));
        assert!(poset.leq(&v("P"), &v("123")));
        assert!(poset.leq(&v("25"), &v("Pbar")));
        let dot = poset.to_dot();
        assert!(dot.starts_with("digraph"));
        assert!(dot.contains("\"P\" -> "));
    }

    #[test]
    fn listed_relations_hold() {
        let cat = Catalog::build(10).unwrap();
        let poset = InclusionPoset::build(&cat);
        for list in [
            &LISTED_CIRCULANT_INCLUSIONS[..],
            &LISTED_PETERSEN_RELATIONS[..],
        ] {
            for r in check_relations(&cat, list) {
                assert!(r.holds, "{} < {}", r.smaller, r.larger);
                let (a, b) = (
                    cat.class_of_member(&r.smaller).unwrap(),
                    cat.class_of_member(&r.larger).unwrap(),
                );
                assert!(poset.leq(a, b));
            }
        }
        // Reversed pairs never hold.
        let rev = check_relations(&cat, &[("1", "5"), ("Pbar", "P")]);
        assert!(rev.iter().all(|r| !r.holds));
    }
}
