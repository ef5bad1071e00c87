//! Reference computations for the integration tests. Everything here is
//! written against plain vectors and sets so that it shares no algorithm
//! with the library under test.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};

use evasion_core::graphcat::Graph;
use evasion_core::{LinearForm, VarId};

pub type Perm = Vec<usize>;
pub type Edge = (usize, usize);

pub fn edge(a: usize, b: usize) -> Edge {
    (a.min(b), a.max(b))
}

/// 1-based cycle notation to 0-based images.
pub fn parse_cycles(n: usize, text: &str) -> Perm {
    let mut p: Perm = (0..n).collect();
    for cyc in text.split(')') {
        let pts: Vec<usize> = cyc
            .trim()
            .trim_start_matches('(')
            .split_whitespace()
            .map(|t| t.parse::<usize>().unwrap() - 1)
            .collect();
        for k in 0..pts.len() {
            p[pts[k]] = pts[(k + 1) % pts.len()];
        }
    }
    p
}

/// `a` then `b`.
pub fn then(a: &Perm, b: &Perm) -> Perm {
    a.iter().map(|&x| b[x]).collect()
}

pub fn inverse(a: &Perm) -> Perm {
    let mut inv = vec![0; a.len()];
    for (i, &x) in a.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

/// Every element of the group generated by `gens`, by breadth-first
/// multiplication.
pub fn closure(n: usize, gens: &[Perm]) -> HashSet<Perm> {
    let id: Perm = (0..n).collect();
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = then(&x, g);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen
}

pub fn closure_of(n: usize, gens: &[&str]) -> HashSet<Perm> {
    let gens: Vec<Perm> = gens.iter().map(|g| parse_cycles(n, g)).collect();
    closure(n, &gens)
}

/// Images of every element under the homomorphism sending `gens[i]` to
/// `images[i]` mod `m`. Panics if the assignment is not well defined.
pub fn hom_images(n: usize, gens: &[Perm], images: &[u64], m: u64) -> HashMap<Perm, u64> {
    let id: Perm = (0..n).collect();
    let mut val = HashMap::from([(id.clone(), 0u64)]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        let vx = val[&x];
        for (g, &r) in gens.iter().zip(images) {
            let y = then(&x, g);
            let vy = (vx + r) % m;
            match val.get(&y) {
                Some(&old) => assert_eq!(old, vy, "homomorphism not well defined"),
                None => {
                    val.insert(y.clone(), vy);
                    queue.push_back(y);
                }
            }
        }
    }
    val
}

pub fn is_normal(sub: &HashSet<Perm>, amb: &HashSet<Perm>) -> bool {
    sub.iter().all(|k| {
        amb.iter()
            .all(|g| sub.contains(&then(&then(&inverse(g), k), g)))
    })
}

/// Whether `amb / sub` is cyclic: some coset has order equal to the index.
pub fn quotient_is_cyclic(sub: &HashSet<Perm>, amb: &HashSet<Perm>) -> bool {
    let index = amb.len() / sub.len();
    amb.iter().any(|g| {
        let mut x = g.clone();
        let mut k = 1;
        while !sub.contains(&x) {
            x = then(&x, g);
            k += 1;
        }
        k == index
    })
}

pub fn is_prime_power(mut n: usize) -> bool {
    if n == 1 {
        return true;
    }
    let p = (2..=n).find(|d| n % d == 0).unwrap();
    while n % p == 0 {
        n /= p;
    }
    n == 1
}

/// Edge orbits of the group generated by `gens`, by union-find over the
/// generator action on pairs.
pub fn edge_orbits(n: usize, gens: &[Perm]) -> Vec<BTreeSet<Edge>> {
    let pairs: Vec<Edge> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let index: HashMap<Edge, usize> = pairs.iter().enumerate().map(|(k, &e)| (e, k)).collect();
    let mut parent: Vec<usize> = (0..pairs.len()).collect();
    fn find(p: &mut Vec<usize>, x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    for g in gens {
        for (k, &(a, b)) in pairs.iter().enumerate() {
            let img = index[&edge(g[a], g[b])];
            let (x, y) = (find(&mut parent, k), find(&mut parent, img));
            parent[x] = y;
        }
    }
    let mut groups: BTreeMap<usize, BTreeSet<Edge>> = BTreeMap::new();
    for (k, &e) in pairs.iter().enumerate() {
        let r = find(&mut parent, k);
        groups.entry(r).or_default().insert(e);
    }
    let mut out: Vec<_> = groups.into_values().collect();
    out.sort();
    out
}

pub fn circulant_edges(n: usize, diffs: &[usize]) -> BTreeSet<Edge> {
    let mut out = BTreeSet::new();
    for i in 0..n {
        for &d in diffs {
            out.insert(edge(i, (i + d) % n));
        }
    }
    out
}

pub fn to_graph(n: usize, edges: &BTreeSet<Edge>) -> Graph {
    Graph::from_edges(n, edges.iter().copied())
}

pub fn from_graph(g: &Graph) -> BTreeSet<Edge> {
    g.edges().collect()
}

/// Connection sets on ten vertices grouped by the multiplier action of the
/// units mod 10. Circulants on a square-free number of vertices are
/// isomorphic exactly when a multiplier maps one connection set to the
/// other, so these are the circulant isomorphism classes. Empty and full
/// sets are left out.
pub fn multiplier_classes() -> Vec<BTreeSet<Vec<usize>>> {
    let norm = |x: usize| {
        let r = x % 10;
        r.min(10 - r)
    };
    let mut classes: BTreeSet<BTreeSet<Vec<usize>>> = BTreeSet::new();
    for mask in 1u32..31 {
        let d: Vec<usize> = (1..=5).filter(|k| mask >> (k - 1) & 1 == 1).collect();
        let orbit: BTreeSet<Vec<usize>> = [1, 3, 7, 9]
            .iter()
            .map(|u| {
                let mut img: Vec<usize> = d.iter().map(|x| norm(x * u)).collect();
                img.sort();
                img
            })
            .collect();
        classes.insert(orbit);
    }
    classes.into_iter().collect()
}

pub fn set_name(d: &[usize]) -> String {
    d.iter().map(|x| x.to_string()).collect()
}

/// The Kneser graph on 2-subsets of a 5-set: disjoint pairs adjacent.
pub fn kneser_edges() -> BTreeSet<Edge> {
    let verts: Vec<(usize, usize)> = (0..5)
        .flat_map(|a| (a + 1..5).map(move |b| (a, b)))
        .collect();
    let mut out = BTreeSet::new();
    for (i, &(a, b)) in verts.iter().enumerate() {
        for (j, &(c, d)) in verts.iter().enumerate().skip(i + 1) {
            if a != c && a != d && b != c && b != d {
                out.insert((i, j));
            }
        }
    }
    out
}

pub fn degrees(n: usize, edges: &BTreeSet<Edge>) -> Vec<usize> {
    let mut deg = vec![0; n];
    for &(a, b) in edges {
        deg[a] += 1;
        deg[b] += 1;
    }
    deg
}

/// Shortest cycle length by breadth-first search from every vertex.
pub fn girth(n: usize, edges: &BTreeSet<Edge>) -> Option<usize> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut best: Option<usize> = None;
    for s in 0..n {
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        dist[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(x) = q.pop_front() {
            for &y in &adj[x] {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    parent[y] = x;
                    q.push_back(y);
                } else if parent[x] != y {
                    let len = dist[x] + dist[y] + 1;
                    best = Some(best.map_or(len, |b: usize| b.min(len)));
                }
            }
        }
    }
    best
}

/// Whether relabeling `small` by `sigma` lands inside `big`.
pub fn embeds_under(small: &BTreeSet<Edge>, big: &BTreeSet<Edge>, sigma: &[usize]) -> bool {
    let distinct: HashSet<_> = sigma.iter().collect();
    distinct.len() == sigma.len()
        && small
            .iter()
            .all(|&(a, b)| big.contains(&edge(sigma[a], sigma[b])))
}

/// All 0/1 assignments to `vars` that respect `i[a] >= i[b]` for every
/// `(a, b)` in `decreasing` and satisfy every form, by exhaustive scan.
pub fn brute_force(
    vars: &[VarId],
    decreasing: &[(usize, usize)],
    forms: &[LinearForm],
) -> Vec<BTreeMap<VarId, u8>> {
    assert!(vars.len() <= 24);
    let coeffs: Vec<(Vec<i64>, LinearForm)> = forms
        .iter()
        .map(|f| (vars.iter().map(|v| f.coefficient(v)).collect(), f.clone()))
        .collect();
    let mut out = Vec::new();
    for bits in 0u32..(1 << vars.len()) {
        let on = |k: usize| bits >> k & 1 == 1;
        if decreasing.iter().any(|&(a, b)| !on(a) && on(b)) {
            continue;
        }
        let ok = coeffs.iter().all(|(c, f)| {
            let lhs: i64 = c
                .iter()
                .enumerate()
                .filter(|&(k, _)| on(k))
                .map(|(_, x)| x)
                .sum();
            f.relation().holds(lhs)
        });
        if ok {
            out.push(
                vars.iter()
                    .enumerate()
                    .map(|(k, v)| (v.clone(), on(k) as u8))
                    .collect(),
            );
        }
    }
    out
}

/// `χ` of the fixed-point complex by direct inclusion-exclusion: every
/// nonempty set of orbits whose union has the property contributes
/// `(-1)^(|S|-1)`. `has` answers membership for a union.
pub fn chi_direct(orbits: &[BTreeSet<Edge>], mut has: impl FnMut(&BTreeSet<Edge>) -> bool) -> i64 {
    let k = orbits.len();
    let mut chi = 0;
    for mask in 1u32..(1 << k) {
        let union: BTreeSet<Edge> = (0..k)
            .filter(|&j| mask >> j & 1 == 1)
            .flat_map(|j| orbits[j].iter().copied())
            .collect();
        if has(&union) {
            chi += if mask.count_ones() % 2 == 1 { 1 } else { -1 };
        }
    }
    chi
}

/// The reference solution table, one row per indicator.
const REFERENCE: &str = "
    name  A A* B B* C C*
    1     1 1  1 1  1 1
    2     0 1  1 1  1 1
    5     1 1  1 1  1 1
    12    0 1  1 1  0 1
    13    1 1  0 0  0 0
    14    0 1  0 1  0 1
    15    1 1  0 1  1 1
    24    0 0  1 1  1 1
    25    0 1  1 1  1 1
    123   0 1  0 0  0 0
    124   0 0  0 1  0 0
    125   0 1  0 0  0 1
    135   1 1  0 0  0 0
    145   0 1  0 1  0 1
    245   0 0  1 1  1 1
    1234  0 0  0 0  0 0
    1235  0 1  0 0  0 0
    1245  0 0  0 0  0 0
    P     0 1  1 1  1 1
    Pbar  0 1  0 0  0 0
";

/// The reference columns keyed by label.
pub fn reference_columns() -> BTreeMap<String, BTreeMap<VarId, u8>> {
    let mut lines = REFERENCE.lines().map(str::trim).filter(|l| !l.is_empty());
    let labels: Vec<String> = lines
        .next()
        .unwrap()
        .split_whitespace()
        .skip(1)
        .map(String::from)
        .collect();
    let mut cols: BTreeMap<String, BTreeMap<VarId, u8>> = BTreeMap::new();
    for line in lines {
        let mut tok = line.split_whitespace();
        let row = VarId::new(tok.next().unwrap());
        for (label, x) in labels.iter().zip(tok) {
            cols.entry(label.clone())
                .or_default()
                .insert(row.clone(), x.parse().unwrap());
        }
    }
    cols
}
