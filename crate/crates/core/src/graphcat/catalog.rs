use std::collections::HashMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use super::graph::{circulant, petersen, CirculantSpec, Graph};
use super::iso::is_isomorphic;
use crate::form::VarId;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("no catalog of transitive graphs for {0} vertices")]
    Unsupported(usize),
    #[error("expected {expected} classes, built {got}")]
    ClassCount { expected: usize, got: usize },
    #[error("{0} is isomorphic to a circulant class")]
    PetersenCollision(&'static str),
}

/// One labeled graph standing for its class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Member {
    Circulant(CirculantSpec),
    Petersen,
    CoPetersen,
}

impl Member {
    pub fn graph(&self) -> Graph {
        match self {
            Member::Circulant(s) => circulant(s),
            Member::Petersen => petersen(),
            Member::CoPetersen => petersen().complement(),
        }
    }
}

impl fmt::Display for Member {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Member::Circulant(s) => f.write_str(&s.name()),
            Member::Petersen => f.write_str("P"),
            Member::CoPetersen => f.write_str("Pbar"),
        }
    }
}

/// An isomorphism class of vertex-transitive graphs.
#[derive(Debug, Clone)]
pub struct CatalogClass {
    pub id: VarId,
    pub representative: Graph,
    pub members: Vec<Member>,
}

impl CatalogClass {
    pub fn representative_member(&self) -> Member {
        self.members[0]
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassSummary {
    pub id: String,
    pub members: Vec<String>,
    pub edges: usize,
    pub degree: usize,
    pub bits: String,
}

/// All vertex-transitive graphs on `n` vertices up to isomorphism, in
/// canonical variable order with `empty` and `complete` last.
#[derive(Debug, Clone)]
pub struct Catalog {
    n: usize,
    classes: Vec<CatalogClass>,
    by_id: HashMap<VarId, usize>,
}

impl Catalog {
    /// Builds the catalog for `n = 10` (22 classes) or `n = 5` (3 classes).
    ///
    /// Circulants are grouped by pairwise isomorphism tests; each class is
    /// named after its lexicographically least member. On ten vertices the
    /// Petersen graph and its complement are added and checked to be new.
    pub fn build(n: usize) -> Result<Catalog, CatalogError> {
        let expected = match n {
            5 => 3,
            10 => 22,
            _ => return Err(CatalogError::Unsupported(n)),
        };
        let mut groups: Vec<(Graph, Vec<CirculantSpec>)> = Vec::new();
        for spec in CirculantSpec::all(n) {
            let g = circulant(&spec);
            match groups
                .iter_mut()
                .find(|(rep, _)| is_isomorphic(rep, &g).is_some())
            {
                Some((_, members)) => members.push(spec),
                None => groups.push((g, vec![spec])),
            }
        }
        let mut classes = Vec::new();
        for (_, mut specs) in groups {
            specs.sort_by_key(|s| s.name());
            let first = specs[0];
            let id = if first.is_empty() {
                VarId::empty()
            } else if first.is_full() {
                VarId::complete()
            } else if n == 5 {
                VarId::new("C5")
            } else {
                VarId::new(&first.name())
            };
            classes.push(CatalogClass {
                id,
                representative: circulant(&first),
                members: specs.into_iter().map(Member::Circulant).collect(),
            });
        }
        if n == 10 {
            for (member, label) in [(Member::Petersen, "P"), (Member::CoPetersen, "Pbar")] {
                let g = member.graph();
                if classes
                    .iter()
                    .any(|c| is_isomorphic(&c.representative, &g).is_some())
                {
                    return Err(CatalogError::PetersenCollision(label));
                }
                classes.push(CatalogClass {
                    id: VarId::new(label),
                    representative: g,
                    members: vec![member],
                });
            }
        }
        if classes.len() != expected {
            return Err(CatalogError::ClassCount {
                expected,
                got: classes.len(),
            });
        }
        classes.sort_by(|a, b| a.id.cmp(&b.id));
        let by_id = classes
            .iter()
            .enumerate()
            .map(|(i, c)| (c.id.clone(), i))
            .collect();
        Ok(Catalog { n, classes, by_id })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn classes(&self) -> &[CatalogClass] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn get(&self, id: &VarId) -> Option<&CatalogClass> {
        self.by_id.get(id).map(|&i| &self.classes[i])
    }

    pub fn index_of(&self, id: &VarId) -> Option<usize> {
        self.by_id.get(id).copied()
    }

    /// Class ids other than `empty` and `complete`, in canonical order.
    pub fn variables(&self) -> Vec<VarId> {
        self.classes
            .iter()
            .map(|c| c.id.clone())
            .filter(|id| !id.is_forced())
            .collect()
    }

    /// The class isomorphic to `g`, if any. Candidates are pre-filtered by
    /// edge count and degree multiset.
    pub fn identify(&self, g: &Graph) -> Option<&VarId> {
        if g.n() != self.n || !g.is_regular() {
            return None;
        }
        let edges = g.edge_count();
        self.classes
            .iter()
            .filter(|c| c.representative.edge_count() == edges)
            .find(|c| is_isomorphic(&c.representative, g).is_some())
            .map(|c| &c.id)
    }

    /// Class of the complement of `id`'s representative.
    pub fn complement_class(&self, id: &VarId) -> Option<&VarId> {
        let class = self.get(id)?;
        self.identify(&class.representative.complement())
    }

    /// The class containing a given member name such as `"134"` or `"P"`.
    pub fn class_of_member(&self, name: &str) -> Option<&VarId> {
        self.classes
            .iter()
            .find(|c| c.members.iter().any(|m| m.to_string() == name))
            .map(|c| &c.id)
    }

    pub fn summaries(&self) -> Vec<ClassSummary> {
        self.classes
            .iter()
            .map(|c| ClassSummary {
                id: c.id.to_string(),
                members: c.members.iter().map(|m| m.to_string()).collect(),
                edges: c.representative.edge_count(),
                degree: c.representative.degrees()[0],
                bits: c.representative.to_bit_string(),
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ten() -> Catalog {
        Catalog::build(10).unwrap()
    }

    #[test]
    fn ten_vertex_catalog_shape() {
        let cat = ten();
        assert_eq!(cat.len(), 22);
        let ids: Vec<String> = cat.classes().iter().map(|c| c.id.to_string()).collect();
        assert_eq!(
            ids,
            [
                "1", "2", "5", "12", "13", "14", "15", "24", "25", "123", "124", "125", "135",
                "145", "245", "1234", "1235", "1245", "P", "Pbar", "empty", "complete"
            ]
        );
        let pairs = cat
            .classes()
            .iter()
            .filter(|c| c.members.len() == 2)
            .count();
        assert_eq!(pairs, 12);
        let singletons: Vec<&str> = cat
            .classes()
            .iter()
            .filter(|c| c.members.len() == 1 && matches!(c.members[0], Member::Circulant(_)))
            .map(|c| c.id.as_str())
            .filter(|id| *id != "empty" && *id != "complete")
            .collect();
        assert_eq!(singletons, ["5", "13", "24", "135", "245", "1234"]);
    }

    #[test]
    fn printed_pairs_match() {
        let cat = ten();
        for (a, b) in [
            ("1", "3"),
            ("2345", "1245"),
            ("2", "4"),
            ("1235", "1345"),
            ("15", "35"),
            ("124", "234"),
            ("12", "34"),
            ("125", "345"),
            ("14", "23"),
            ("145", "235"),
            ("25", "45"),
            ("123", "134"),
        ] {
            assert_eq!(cat.class_of_member(a), cat.class_of_member(b), "{a} vs {b}");
        }
        // The caption pairing 123 with 145 does not hold.
        assert_ne!(cat.class_of_member("123"), cat.class_of_member("145"));
    }

    #[test]
    fn identification() {
        let cat = ten();
        assert_eq!(cat.identify(&Graph::empty(10)).unwrap().as_str(), "empty");
        let g3 = circulant(&CirculantSpec::new(10, &[3]).unwrap());
        assert_eq!(cat.identify(&g3).unwrap().as_str(), "1");
        let path = Graph::from_edges(10, (0..9).map(|i| (i, i + 1)));
        assert!(cat.identify(&path).is_none());
        assert_eq!(cat.identify(&petersen()).unwrap().as_str(), "P");
    }

    #[test]
    fn complements() {
        let cat = ten();
        let c = |s: &str| cat.complement_class(&VarId::new(s)).unwrap().to_string();
        assert_eq!(c("1"), "1245");
        assert_eq!(c("2"), "1235");
        assert_eq!(c("P"), "Pbar");
        assert_eq!(c("empty"), "complete");
        assert_eq!(c("13"), "245");
    }

    #[test]
    fn five_vertex_catalog() {
        let cat = Catalog::build(5).unwrap();
        let ids: Vec<&str> = cat.classes().iter().map(|c| c.id.as_str()).collect();
        assert_eq!(ids, ["C5", "empty", "complete"]);
        assert_eq!(cat.variables(), vec![VarId::new("C5")]);
        assert!(matches!(
            Catalog::build(7),
            Err(CatalogError::Unsupported(7))
        ));
    }
}
