//! Backtracking search for vertex maps between small graphs.
//!
//! A witness is a vector `sigma` with `sigma[v]` the image of vertex `v`.

use super::graph::Graph;

/// Edge count above which containment is decided on complements.
const DENSE_THRESHOLD: usize = 22;

/// Returns `sigma` with `sigma(g) == h`, if the graphs are isomorphic.
pub fn is_isomorphic(g: &Graph, h: &Graph) -> Option<Vec<usize>> {
    if g.n() != h.n()
        || g.edge_count() != h.edge_count()
        || g.degree_multiset() != h.degree_multiset()
        || g.triangle_count() != h.triangle_count()
    {
        return None;
    }
    Embedder::new(g, h, true).search()
}

/// Returns `sigma` with `sigma(small) ⊆ big`, if `small` embeds in `big` as
/// a (not necessarily induced) subgraph.
pub fn contains_up_to_iso(big: &Graph, small: &Graph) -> Option<Vec<usize>> {
    if big.n() != small.n() || small.edge_count() > big.edge_count() {
        return None;
    }
    if small.edge_count() == big.edge_count() {
        return is_isomorphic(small, big);
    }
    if small.edge_count() > DENSE_THRESHOLD {
        // small ⊆ sigma⁻¹(big) iff sigma(co-big) ⊆ co-small; search the
        // sparser complements and invert the witness.
        let tau = embed(&small.complement(), &big.complement())?;
        let mut sigma = vec![0; tau.len()];
        for (v, &t) in tau.iter().enumerate() {
            sigma[t] = v;
        }
        return Some(sigma);
    }
    embed(big, small)
}

fn embed(big: &Graph, small: &Graph) -> Option<Vec<usize>> {
    let (mut bd, mut sd) = (big.degree_multiset(), small.degree_multiset());
    bd.reverse();
    sd.reverse();
    // The k-th largest degree of small cannot exceed that of big.
    if sd.iter().zip(&bd).any(|(s, b)| s > b) {
        return None;
    }
    Embedder::new(small, big, false).search()
}

struct Embedder {
    n: usize,
    order: Vec<usize>,
    src_adj: Vec<u16>,
    dst_adj: Vec<u16>,
    /// Target vertices allowed for each source vertex by degree.
    allowed: Vec<u16>,
    induced: bool,
}

impl Embedder {
    fn new(src: &Graph, dst: &Graph, induced: bool) -> Self {
        let n = src.n();
        let src_adj = src.adjacency();
        let dst_adj = dst.adjacency();
        let src_deg: Vec<u32> = src_adj.iter().map(|m| m.count_ones()).collect();
        let dst_deg: Vec<u32> = dst_adj.iter().map(|m| m.count_ones()).collect();
        let src_sig = neighbour_degree_signatures(&src_adj, &src_deg);
        let dst_sig = neighbour_degree_signatures(&dst_adj, &dst_deg);
        let allowed = (0..n)
            .map(|v| {
                (0..n)
                    .filter(|&w| {
                        if induced {
                            src_deg[v] == dst_deg[w] && src_sig[v] == dst_sig[w]
                        } else {
                            src_deg[v] <= dst_deg[w]
                        }
                    })
                    .fold(0u16, |m, w| m | 1 << w)
            })
            .collect();

        // Highest degree first, then the vertex with most neighbours already
        // placed, so adjacency constraints bite as early as possible.
        let mut order = Vec::with_capacity(n);
        let mut placed = 0u16;
        while order.len() < n {
            let next = (0..n)
                .filter(|&v| placed >> v & 1 == 0)
                .max_by_key(|&v| {
                    (
                        (src_adj[v] & placed).count_ones(),
                        src_deg[v],
                        std::cmp::Reverse(v),
                    )
                })
                .expect("unplaced vertex remains");
            order.push(next);
            placed |= 1 << next;
        }
        Embedder {
            n,
            order,
            src_adj,
            dst_adj,
            allowed,
            induced,
        }
    }

    fn search(&self) -> Option<Vec<usize>> {
        let mut sigma = vec![usize::MAX; self.n];
        self.extend(0, 0, &mut sigma).then_some(sigma)
    }

    fn extend(&self, depth: usize, used: u16, sigma: &mut [usize]) -> bool {
        if depth == self.n {
            return true;
        }
        let v = self.order[depth];
        let mut cand = self.allowed[v] & !used;
        for &u in &self.order[..depth] {
            let image_nbrs = self.dst_adj[sigma[u]];
            if self.src_adj[v] >> u & 1 == 1 {
                cand &= image_nbrs;
            } else if self.induced {
                cand &= !image_nbrs;
            }
            if cand == 0 {
                return false;
            }
        }
        while cand != 0 {
            let w = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            sigma[v] = w;
            if self.extend(depth + 1, used | 1 << w, sigma) {
                return true;
            }
        }
        sigma[v] = usize::MAX;
        false
    }
}

fn neighbour_degree_signatures(adj: &[u16], deg: &[u32]) -> Vec<Vec<u32>> {
    adj.iter()
        .map(|&m| {
            let mut s: Vec<u32> = (0..adj.len())
                .filter(|&w| m >> w & 1 == 1)
                .map(|w| deg[w])
                .collect();
            s.sort_unstable();
            s
        })
        .collect()
}

/// Checks a containment witness directly against the edge sets.
pub fn witness_embeds(big: &Graph, small: &Graph, sigma: &[usize]) -> bool {
    small
        .relabel(sigma)
        .map(|img| img.is_subgraph_of(big))
        .unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::super::graph::{circulant, petersen, CirculantSpec};
    use super::*;
    use proptest::prelude::*;

    fn c10(d: &[usize]) -> Graph {
        circulant(&CirculantSpec::new(10, d).unwrap())
    }

    #[test]
    fn printed_isomorphisms_have_witnesses() {
        for (a, b) in [(&[1][..], &[3][..]), (&[2, 5], &[4, 5])] {
            let (g, h) = (c10(a), c10(b));
            let sigma = is_isomorphic(&g, &h).expect("isomorphic");
            assert_eq!(g.relabel(&sigma).unwrap(), h);
        }
    }

    #[test]
    fn petersen_is_not_circulant() {
        let p = petersen();
        for spec in CirculantSpec::all(10) {
            let g = circulant(&spec);
            assert!(is_isomorphic(&p, &g).is_none(), "{}", spec.name());
            assert!(is_isomorphic(&p.complement(), &g).is_none());
        }
    }

    #[test]
    fn containment_examples() {
        let sigma = contains_up_to_iso(&c10(&[3]), &c10(&[5])).unwrap();
        assert!(witness_embeds(&c10(&[3]), &c10(&[5]), &sigma));
        assert!(contains_up_to_iso(&c10(&[4, 5]), &c10(&[1])).is_some());
        let p = petersen();
        let big = c10(&[2, 4, 5]);
        let sigma = contains_up_to_iso(&big, &p).unwrap();
        assert!(witness_embeds(&big, &p, &sigma));
        let k = Graph::complete(10);
        assert!(contains_up_to_iso(&k, &k).is_some());
        // Dense case goes through complements.
        let small = c10(&[1, 2, 4, 5]);
        let big = c10(&[1, 2, 3, 4]);
        let sigma = contains_up_to_iso(&big, &small).unwrap();
        assert!(witness_embeds(&big, &small, &sigma));
        assert!(contains_up_to_iso(&c10(&[1]), &c10(&[2])).is_none());
    }

    fn relabeling() -> impl Strategy<Value = Vec<usize>> {
        Just((0..10).collect::<Vec<usize>>()).prop_shuffle()
    }

    proptest! {
        #[test]
        fn relabeled_graphs_are_isomorphic(bits in 0u64..(1 << 45), sigma in relabeling()) {
            let g = Graph::from_bits(10, bits);
            let h = g.relabel(&sigma).unwrap();
            let w = is_isomorphic(&g, &h).expect("relabeling is an isomorphism");
            prop_assert_eq!(g.relabel(&w).unwrap(), h);
            let back = is_isomorphic(&h, &g).unwrap();
            prop_assert_eq!(h.relabel(&back).unwrap(), g);
        }

        #[test]
        fn subgraphs_embed(bits in 0u64..(1 << 45), mask in 0u64..(1 << 45), sigma in relabeling()) {
            let big = Graph::from_bits(10, bits);
            let small = Graph::from_bits(10, bits & mask).relabel(&sigma).unwrap();
            let w = contains_up_to_iso(&big, &small).expect("subgraph embeds");
            prop_assert!(witness_embeds(&big, &small, &w));
        }
    }
}
