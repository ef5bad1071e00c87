//! Labeled graphs on ten (or five) vertices, the catalog of
//! vertex-transitive graphs and their inclusion order.

mod catalog;
mod graph;
mod iso;
mod poset;

pub use catalog::{Catalog, CatalogClass, CatalogError, ClassSummary, Member};
pub use graph::{
    circulant, edge_endpoints, edge_index, pair_count, petersen, CirculantSpec, Graph, GraphError,
    MAX_VERTICES,
};
pub use iso::{contains_up_to_iso, is_isomorphic, witness_embeds};
pub use poset::{
    check_relations, InclusionPoset, PosetSummary, RelationCheck, LISTED_CIRCULANT_INCLUSIONS,
    LISTED_PETERSEN_RELATIONS,
};
