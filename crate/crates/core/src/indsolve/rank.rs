use std::collections::BTreeSet;

use num::{BigInt, BigRational, Zero};
use serde::Serialize;

use crate::form::{LinearForm, Relation, VarId};

/// Outcome of [`rank_filter`].
#[derive(Debug, Clone, Default, Serialize)]
pub struct RankFilter {
    /// Independent equalities in input order, then every congruence.
    pub kept: Vec<LinearForm>,
    /// Equalities in the span of earlier ones.
    pub discarded: Vec<LinearForm>,
    pub rank: usize,
}

/// Greedy scan keeping each equality whose augmented row `[coeffs | k]` is
/// independent of the rows kept so far, over the rationals. Congruences
/// never enter the rank computation and are always kept.
pub fn rank_filter(forms: &[LinearForm]) -> RankFilter {
    let vars: Vec<VarId> = forms
        .iter()
        .flat_map(|f| f.variables().cloned())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let width = vars.len() + 1;
    // Echelon basis: (pivot column, row normalized to 1 at the pivot).
    let mut basis: Vec<(usize, Vec<BigRational>)> = Vec::new();
    let mut out = RankFilter::default();
    let mut congruences = Vec::new();
    for f in forms {
        let Relation::Equals(k) = f.relation() else {
            congruences.push(f.clone());
            continue;
        };
        let mut row: Vec<BigRational> = vars
            .iter()
            .map(|v| BigRational::from_integer(BigInt::from(f.coefficient(v))))
            .chain([BigRational::from_integer(BigInt::from(k))])
            .collect();
        for (p, b) in &basis {
            if !row[*p].is_zero() {
                let factor = row[*p].clone();
                for (x, y) in row.iter_mut().zip(b) {
                    *x -= &factor * y;
                }
            }
        }
        match (0..width).find(|&j| !row[j].is_zero()) {
            None => out.discarded.push(f.clone()),
            Some(p) => {
                let lead = row[p].clone();
                for x in row.iter_mut() {
                    *x /= &lead;
                }
                for (_, b) in basis.iter_mut() {
                    if !b[p].is_zero() {
                        let factor = b[p].clone();
                        for (x, y) in b.iter_mut().zip(&row) {
                            *x -= &factor * y;
                        }
                    }
                }
                basis.push((p, row));
                out.kept.push(f.clone());
            }
        }
    }
    out.rank = basis.len();
    out.kept.extend(congruences);
    out
}
