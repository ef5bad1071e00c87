//! Permutations on the points `1..=degree` and small permutation groups.
//!
//! Groups are stored with every element enumerated. All groups appearing in
//! the lemma setups have at most a few hundred elements, so membership,
//! normality and homomorphism checks are done by plain enumeration.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default bound on the number of elements a closure may produce.
pub const DEFAULT_CLOSURE_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("point {point} is out of range 1..={degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("point {0} appears more than once")]
    RepeatedPoint(usize),
    #[error("malformed cycle notation: {0}")]
    Malformed(String),
    #[error("images do not form a bijection on {0} points")]
    NotBijection(usize),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("degree must be between 1 and 255, got {0}")]
    BadDegree(usize),
    #[error("closure exceeds the cap of {0} elements")]
    CapExceeded(usize),
    #[error("group of order {sub} is not a subgroup of the group of order {amb}")]
    NotSubgroup { sub: usize, amb: usize },
    #[error("subgroup of order {0} is not normal")]
    NotNormal(usize),
    #[error("expected {expected} generator images, got {got}")]
    ImageCount { expected: usize, got: usize },
    #[error("modulus must be positive")]
    ZeroModulus,
    #[error("generator images do not define a homomorphism: element {element} receives both {first} and {second}")]
    HomConflict {
        element: String,
        first: u64,
        second: u64,
    },
    #[error("homomorphism is not onto Z_{modulus}: image has {image} elements")]
    NotSurjective { modulus: u64, image: usize },
}

/// A bijection of `{0, .., degree-1}`; displayed and parsed 1-based.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Box<[u8]>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        assert!((1..=255).contains(&degree), "unsupported degree {degree}");
        Permutation {
            images: (0..degree as u8).collect(),
        }
    }

    /// Builds a permutation from 0-based images.
    pub fn from_images(images: &[usize]) -> Result<Self, PermError> {
        let degree = images.len();
        if degree == 0 || degree > 255 {
            return Err(PermError::BadDegree(degree));
        }
        let mut seen = vec![false; degree];
        for &i in images {
            if i >= degree || seen[i] {
                return Err(PermError::NotBijection(degree));
            }
            seen[i] = true;
        }
        Ok(Permutation {
            images: images.iter().map(|&i| i as u8).collect(),
        })
    }

    /// Parses cycle notation such as `(1 3 5 7 9)(2 4 6 8 10)`.
    ///
    /// Cycles must be disjoint; `()` is the identity and points missing from
    /// every cycle are fixed.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Self, PermError> {
        if degree == 0 || degree > 255 {
            return Err(PermError::BadDegree(degree));
        }
        let mut images: Vec<usize> = (0..degree).collect();
        let mut used = vec![false; degree];
        let mut rest = text.trim();
        if rest.is_empty() {
            return Err(PermError::Malformed("empty string".into()));
        }
        while !rest.is_empty() {
            let Some(body) = rest.strip_prefix('(') else {
                return Err(PermError::Malformed(format!("expected '(' at {rest:?}")));
            };
            let Some(close) = body.find(')') else {
                return Err(PermError::Malformed("unclosed '('".into()));
            };
            let inner = &body[..close];
            if inner.contains('(') {
                return Err(PermError::Malformed("nested '('".into()));
            }
            let mut cycle = Vec::new();
            for tok in inner.split_whitespace() {
                let point: usize = tok
                    .parse()
                    .map_err(|_| PermError::Malformed(format!("bad point {tok:?}")))?;
                if point == 0 || point > degree {
                    return Err(PermError::PointOutOfRange { point, degree });
                }
                if used[point - 1] {
                    return Err(PermError::RepeatedPoint(point));
                }
                used[point - 1] = true;
                cycle.push(point - 1);
            }
            for (k, &p) in cycle.iter().enumerate() {
                images[p] = cycle[(k + 1) % cycle.len()];
            }
            rest = body[close + 1..].trim_start();
        }
        Permutation::from_images(&images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of a 0-based point.
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.images.iter().map(|&i| i as usize)
    }

    /// `self` followed by `other`: the point `x` goes to `other(self(x))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch in compose");
        Permutation {
            images: self
                .images
                .iter()
                .map(|&i| other.images[i as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u8; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j as usize] = i as u8;
        }
        Permutation { images: inv.into() }
    }

    /// `g⁻¹ · self · g`, i.e. `self` relabeled by `g`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        g.inverse().compose(self).compose(g)
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &j)| i == j as usize)
    }

    /// Disjoint cycles of length at least two, 0-based, each starting at its
    /// smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut p = self.apply(start);
            while p != start {
                seen[p] = true;
                cycle.push(p);
                p = self.apply(p);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| num::integer::lcm(acc, c.len() as u64))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            f.write_str("(")?;
            for (k, p) in c.iter().enumerate() {
                if k > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", p + 1)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Result of testing a group order for being a prime power.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimePower {
    /// `None` for the trivial group, which is a `p`-group for every prime.
    pub prime: Option<u64>,
    pub exponent: u32,
}

impl PrimePower {
    pub fn of(n: u64) -> Option<PrimePower> {
        if n == 0 {
            return None;
        }
        if n == 1 {
            return Some(PrimePower {
                prime: None,
                exponent: 0,
            });
        }
        let p = smallest_prime_factor(n);
        let mut m = n;
        let mut k = 0;
        while m % p == 0 {
            m /= p;
            k += 1;
        }
        (m == 1).then_some(PrimePower {
            prime: Some(p),
            exponent: k,
        })
    }
}

fn smallest_prime_factor(n: u64) -> u64 {
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return d;
        }
        d += 1;
    }
    n
}

/// A finite permutation group with all elements enumerated.
///
/// Elements are kept sorted, so two groups with the same element set compare
/// equal regardless of how they were generated.
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
}

impl PartialEq for PermGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.elements == other.elements
    }
}

impl Eq for PermGroup {}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

impl PermGroup {
    pub fn trivial(degree: usize) -> Self {
        Self::from_sorted_elements(degree, Vec::new(), vec![Permutation::identity(degree)])
    }

    /// Closure of `generators` with the default cap.
    pub fn generate(degree: usize, generators: Vec<Permutation>) -> Result<Self, PermError> {
        Self::closure(degree, generators, DEFAULT_CLOSURE_CAP)
    }

    /// Parses and closes a list of cycle strings.
    pub fn from_cycle_strings<S: AsRef<str>>(
        degree: usize,
        generators: &[S],
    ) -> Result<Self, PermError> {
        let gens = generators
            .iter()
            .map(|s| Permutation::parse_cycles(s.as_ref(), degree))
            .collect::<Result<Vec<_>, _>>()?;
        Self::generate(degree, gens)
    }

    /// Smallest set containing the identity and `generators` closed under
    /// composition. For a finite group this is also closed under inverses.
    pub fn closure(
        degree: usize,
        generators: Vec<Permutation>,
        cap: usize,
    ) -> Result<Self, PermError> {
        for g in &generators {
            if g.degree() != degree {
                return Err(PermError::DegreeMismatch(degree, g.degree()));
            }
        }
        let id = Permutation::identity(degree);
        let mut seen = HashSet::from([id.clone()]);
        let mut elements = vec![id];
        let mut queue = 0;
        while queue < elements.len() {
            let x = elements[queue].clone();
            queue += 1;
            for g in &generators {
                let y = x.compose(g);
                if !seen.contains(&y) {
                    if elements.len() >= cap {
                        return Err(PermError::CapExceeded(cap));
                    }
                    seen.insert(y.clone());
                    elements.push(y);
                }
            }
        }
        elements.sort();
        Ok(Self::from_sorted_elements(degree, generators, elements))
    }

    /// Wraps a known, sorted, closed element set. A small generating set is
    /// picked greedily from the elements in sorted order.
    pub fn from_elements(degree: usize, mut elements: Vec<Permutation>) -> Self {
        elements.sort();
        elements.dedup();
        let mut gens = Vec::new();
        let mut current = PermGroup::trivial(degree);
        for e in &elements {
            if !current.contains(e) {
                gens.push(e.clone());
                current = PermGroup::generate(degree, gens.clone())
                    .expect("subgroup of an enumerated group fits the cap");
            }
        }
        debug_assert_eq!(current.elements, elements);
        Self::from_sorted_elements(degree, gens, elements)
    }

    fn from_sorted_elements(
        degree: usize,
        generators: Vec<Permutation>,
        elements: Vec<Permutation>,
    ) -> Self {
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        PermGroup {
            degree,
            generators,
            elements,
            index,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.index.contains_key(p)
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree
            && self.order() <= other.order()
            && other.order() % self.order() == 0
            && self.elements.iter().all(|e| other.contains(e))
    }

    /// Whether `self` is normal in `amb`.
    ///
    /// Conjugation by `g` is an automorphism, so `g⁻¹ N g ⊆ N` holds as soon
    /// as every generator of `N` lands in `N`. If every generator of `amb`
    /// normalizes `N`, so does every product of generators, i.e. all of
    /// `amb`. Checking generator pairs is therefore enough.
    pub fn is_normal_in(&self, amb: &PermGroup) -> Result<bool, PermError> {
        if !self.is_subgroup_of(amb) {
            return Err(PermError::NotSubgroup {
                sub: self.order(),
                amb: amb.order(),
            });
        }
        let sub_gens = self.effective_generators();
        Ok(amb
            .effective_generators()
            .iter()
            .all(|g| sub_gens.iter().all(|s| self.contains(&s.conjugate_by(g)))))
    }

    /// The stored generators, or a greedy generating set when the group was
    /// assembled from elements without any.
    fn effective_generators(&self) -> Vec<Permutation> {
        if !self.generators.is_empty() || self.is_trivial() {
            return self.generators.clone();
        }
        PermGroup::from_elements(self.degree, self.elements.clone()).generators
    }

    /// The quotient `self / nrm` as an abstract group on cosets.
    pub fn quotient(&self, nrm: &PermGroup) -> Result<QuotientGroup, PermError> {
        if !nrm.is_normal_in(self)? {
            return Err(PermError::NotNormal(nrm.order()));
        }
        let mut coset_of = vec![usize::MAX; self.order()];
        let mut reps = Vec::new();
        for (i, e) in self.elements.iter().enumerate() {
            if coset_of[i] != usize::MAX {
                continue;
            }
            let c = reps.len();
            reps.push(e.clone());
            for n in nrm.elements() {
                let j = self.index[&n.compose(e)];
                coset_of[j] = c;
            }
        }
        let k = reps.len();
        let mut table = vec![vec![0; k]; k];
        for (a, ra) in reps.iter().enumerate() {
            for (b, rb) in reps.iter().enumerate() {
                table[a][b] = coset_of[self.index[&ra.compose(rb)]];
            }
        }
        let identity = coset_of[self.index[&Permutation::identity(self.degree)]];
        Ok(QuotientGroup {
            representatives: reps,
            table,
            identity,
        })
    }

    pub fn is_cyclic(&self) -> bool {
        let n = self.order() as u64;
        self.elements.iter().any(|e| e.order() == n)
    }

    pub fn prime_power_order(&self) -> Option<PrimePower> {
        PrimePower::of(self.order() as u64)
    }

    /// Generators as cycle strings, the serialized form shared with the CLI.
    pub fn generator_strings(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.to_string()).collect()
    }

    pub fn describe(&self) -> GroupRecord {
        GroupRecord {
            degree: self.degree,
            generators: self.generator_strings(),
            order: self.order(),
        }
    }
}

/// Structured form of a group: generator strings plus the order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupRecord {
    pub degree: usize,
    pub generators: Vec<String>,
    pub order: usize,
}

impl GroupRecord {
    /// Rebuilds the group and checks the recorded order.
    pub fn to_group(&self) -> Result<PermGroup, PermError> {
        let g = PermGroup::from_cycle_strings(self.degree, &self.generators)?;
        if g.order() != self.order {
            return Err(PermError::Malformed(format!(
                "recorded order {} but generators close to {}",
                self.order,
                g.order()
            )));
        }
        Ok(g)
    }
}

/// A finite group given by a multiplication table on coset representatives.
#[derive(Debug, Clone)]
pub struct QuotientGroup {
    pub representatives: Vec<Permutation>,
    pub table: Vec<Vec<usize>>,
    pub identity: usize,
}

impl QuotientGroup {
    pub fn order(&self) -> usize {
        self.representatives.len()
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.table[x][a];
            k += 1;
        }
        k
    }

    pub fn is_cyclic(&self) -> bool {
        let n = self.order();
        (0..n).any(|a| self.element_order(a) == n)
    }
}

/// A homomorphism from a permutation group onto (or into) `Z_modulus`.
#[derive(Debug, Clone)]
pub struct CyclicHom {
    source: PermGroup,
    modulus: u64,
    generator_images: Vec<u64>,
    element_images: Vec<u64>,
}

impl CyclicHom {
    /// Extends the generator images to every element by breadth-first words
    /// in the generators, then checks that the extension is single-valued.
    pub fn new(
        source: PermGroup,
        modulus: u64,
        generator_images: Vec<u64>,
    ) -> Result<Self, PermError> {
        if modulus == 0 {
            return Err(PermError::ZeroModulus);
        }
        let gens = source.generators().to_vec();
        if gens.len() != generator_images.len() {
            return Err(PermError::ImageCount {
                expected: gens.len(),
                got: generator_images.len(),
            });
        }
        let generator_images: Vec<u64> = generator_images.iter().map(|v| v % modulus).collect();
        let mut images = vec![None; source.order()];
        let id = source.index[&Permutation::identity(source.degree())];
        images[id] = Some(0u64);
        let mut queue = VecDeque::from([id]);
        while let Some(i) = queue.pop_front() {
            let xi = images[i].expect("queued elements have images");
            for (g, &gi) in gens.iter().zip(&generator_images) {
                let y = source.elements[i].compose(g);
                let j = source.index[&y];
                let val = (xi + gi) % modulus;
                match images[j] {
                    None => {
                        images[j] = Some(val);
                        queue.push_back(j);
                    }
                    Some(prev) if prev != val => {
                        return Err(PermError::HomConflict {
                            element: y.to_string(),
                            first: prev,
                            second: val,
                        });
                    }
                    Some(_) => {}
                }
            }
        }
        let element_images = images
            .into_iter()
            .map(|v| v.expect("generators reach every element"))
            .collect();
        Ok(CyclicHom {
            source,
            modulus,
            generator_images,
            element_images,
        })
    }

    /// Like [`CyclicHom::new`] but also demands the map be onto `Z_modulus`.
    pub fn onto(
        source: PermGroup,
        modulus: u64,
        generator_images: Vec<u64>,
    ) -> Result<Self, PermError> {
        let h = Self::new(source, modulus, generator_images)?;
        if !h.is_surjective() {
            return Err(PermError::NotSurjective {
                modulus,
                image: h.image_size(),
            });
        }
        Ok(h)
    }

    pub fn source(&self) -> &PermGroup {
        &self.source
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn generator_images(&self) -> &[u64] {
        &self.generator_images
    }

    pub fn image_of(&self, p: &Permutation) -> Option<u64> {
        self.source.index_of(p).map(|i| self.element_images[i])
    }

    /// Number of distinct residues hit.
    pub fn image_size(&self) -> usize {
        let mut hit = vec![false; self.modulus as usize];
        for &v in &self.element_images {
            hit[v as usize] = true;
        }
        hit.iter().filter(|&&b| b).count()
    }

    pub fn is_surjective(&self) -> bool {
        self.image_size() as u64 == self.modulus
    }

    pub fn kernel(&self) -> PermGroup {
        let elements = self
            .source
            .elements
            .iter()
            .zip(&self.element_images)
            .filter(|(_, &v)| v == 0)
            .map(|(e, _)| e.clone())
            .collect();
        PermGroup::from_elements(self.source.degree(), elements)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> Permutation {
        Permutation::parse_cycles(s, 10).unwrap()
    }

    fn grp(gens: &[&str]) -> PermGroup {
        PermGroup::from_cycle_strings(10, gens).unwrap()
    }

    #[test]
    fn parse_identity_and_display() {
        assert!(p("()").is_identity());
        let q = p("(1 3 5 7 9)(2 4 6 8 10)");
        assert_eq!(q.order(), 5);
        assert_eq!(q.to_string(), "(1 3 5 7 9)(2 4 6 8 10)");
        let inv = p("(2 7)(5 10)");
        assert_eq!(inv.order(), 2);
        for fixed in [1, 3, 4, 6, 8, 9] {
            assert_eq!(inv.apply(fixed - 1), fixed - 1);
        }
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert_eq!(
            Permutation::parse_cycles("(1 2)(2 3)", 10),
            Err(PermError::RepeatedPoint(2))
        );
        assert_eq!(
            Permutation::parse_cycles("(1 1)", 10),
            Err(PermError::RepeatedPoint(1))
        );
        assert_eq!(
            Permutation::parse_cycles("(1 11)", 10),
            Err(PermError::PointOutOfRange {
                point: 11,
                degree: 10
            })
        );
        assert!(matches!(
            Permutation::parse_cycles("(1 2", 10),
            Err(PermError::Malformed(_))
        ));
        assert!(matches!(
            Permutation::parse_cycles("1 2)", 10),
            Err(PermError::Malformed(_))
        ));
        assert!(matches!(
            Permutation::parse_cycles("((1 2))", 10),
            Err(PermError::Malformed(_))
        ));
    }

    #[test]
    fn compose_is_left_to_right() {
        // (1 2) then (2 3): 1 -> 2 -> 3.
        let a = Permutation::parse_cycles("(1 2)", 3).unwrap();
        let b = Permutation::parse_cycles("(2 3)", 3).unwrap();
        assert_eq!(a.compose(&b).apply(0), 2);
    }

    #[test]
    fn closure_orders() {
        assert_eq!(grp(&["(1 2 3 4 5 6 7 8 9 10)"]).order(), 10);
        assert_eq!(grp(&[]).order(), 1);
        let s3 = PermGroup::from_cycle_strings(3, &["(1 2 3)", "(1 2)"]).unwrap();
        assert_eq!(s3.order(), 6);
    }

    #[test]
    fn closure_cap_is_enforced() {
        let gens = vec![p("(1 2 3 4 5 6 7 8 9 10)"), p("(1 2)")];
        assert_eq!(
            PermGroup::closure(10, gens, 1000),
            Err(PermError::CapExceeded(1000))
        );
    }

    #[test]
    fn normality_in_s3() {
        let s3 = PermGroup::from_cycle_strings(3, &["(1 2 3)", "(1 2)"]).unwrap();
        let a3 = PermGroup::from_cycle_strings(3, &["(1 2 3)"]).unwrap();
        let t = PermGroup::from_cycle_strings(3, &["(1 2)"]).unwrap();
        assert!(PermGroup::trivial(3).is_normal_in(&s3).unwrap());
        assert!(a3.is_normal_in(&s3).unwrap());
        assert!(!t.is_normal_in(&s3).unwrap());
        // Brute-force conjugation over every element agrees.
        let brute = s3
            .elements()
            .iter()
            .all(|g| t.elements().iter().all(|s| t.contains(&s.conjugate_by(g))));
        assert!(!brute);
        assert!(matches!(
            s3.is_normal_in(&t),
            Err(PermError::NotSubgroup { .. })
        ));
    }

    #[test]
    fn quotients() {
        let g = grp(&["(1 2 3 4 5 6 7 8 9 10)"]);
        let q = g.quotient(&g).unwrap();
        assert_eq!(q.order(), 1);
        assert!(q.is_cyclic());
        let s3 = PermGroup::from_cycle_strings(3, &["(1 2 3)", "(1 2)"]).unwrap();
        let t = PermGroup::from_cycle_strings(3, &["(1 2)"]).unwrap();
        assert_eq!(s3.quotient(&t).unwrap_err(), PermError::NotNormal(2));
        let trivial_q = s3.quotient(&PermGroup::trivial(3)).unwrap();
        assert_eq!(trivial_q.order(), 6);
        assert!(!trivial_q.is_cyclic());
    }

    #[test]
    fn cyclicity() {
        assert!(PermGroup::trivial(10).is_cyclic());
        let klein = PermGroup::from_cycle_strings(4, &["(1 2)(3 4)", "(1 3)(2 4)"]).unwrap();
        assert_eq!(klein.order(), 4);
        assert!(!klein.is_cyclic());
        let orders: Vec<u64> = klein.elements().iter().map(|e| e.order()).collect();
        assert_eq!(orders.iter().filter(|&&o| o == 2).count(), 3);
    }

    #[test]
    fn prime_powers() {
        assert_eq!(
            PrimePower::of(16),
            Some(PrimePower {
                prime: Some(2),
                exponent: 4
            })
        );
        assert_eq!(
            PrimePower::of(25),
            Some(PrimePower {
                prime: Some(5),
                exponent: 2
            })
        );
        assert_eq!(PrimePower::of(10), None);
        assert_eq!(
            PrimePower::of(1),
            Some(PrimePower {
                prime: None,
                exponent: 0
            })
        );
        assert_eq!(
            PrimePower::of(7),
            Some(PrimePower {
                prime: Some(7),
                exponent: 1
            })
        );
    }

    #[test]
    fn trivial_hom_has_full_kernel() {
        let g = grp(&["(1 2 3 4 5 6 7 8 9 10)"]);
        let h = CyclicHom::new(g.clone(), 7, vec![0]).unwrap();
        assert_eq!(h.kernel(), g);
        assert_eq!(h.image_size(), 1);
        assert!(!h.is_surjective());
    }

    #[test]
    fn hom_conflict_detected() {
        let g = PermGroup::from_cycle_strings(3, &["(1 2 3)"]).unwrap();
        assert!(matches!(
            CyclicHom::new(g, 2, vec![1]),
            Err(PermError::HomConflict { .. })
        ));
    }

    #[test]
    fn hom_surjectivity_and_counts() {
        let g = grp(&["(1 2 3 4 5 6 7 8 9 10)"]);
        assert!(matches!(
            CyclicHom::onto(g.clone(), 10, vec![2]),
            Err(PermError::NotSurjective { .. })
        ));
        assert!(matches!(
            CyclicHom::new(g.clone(), 10, vec![1, 2]),
            Err(PermError::ImageCount { .. })
        ));
        let h = CyclicHom::onto(g.clone(), 10, vec![3]).unwrap();
        assert!(h.kernel().is_trivial());
    }

    #[test]
    fn group_record_roundtrip() {
        let g = grp(&["(2 4 6 8 10)", "(1 6)(2 7)(3 8)(4 9)(5 10)"]);
        let rec = g.describe();
        assert_eq!(rec.to_group().unwrap(), g);
        let bad = GroupRecord { order: 3, ..rec };
        assert!(bad.to_group().is_err());
    }

    fn perm_strategy(n: usize) -> impl Strategy<Value = Permutation> {
        Just((0..n).collect::<Vec<usize>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::from_images(&v).unwrap())
    }

    proptest! {
        #[test]
        fn inverse_laws(a in perm_strategy(10), b in perm_strategy(10)) {
            prop_assert!(a.compose(&a.inverse()).is_identity());
            prop_assert_eq!(a.inverse().inverse(), a.clone());
            prop_assert_eq!(a.compose(&b).inverse(), b.inverse().compose(&a.inverse()));
            let parsed = Permutation::parse_cycles(&a.to_string(), 10).unwrap();
            prop_assert_eq!(parsed, a);
        }

        #[test]
        fn small_groups_satisfy_axioms(
            gens in proptest::collection::vec(perm_strategy(6), 1..3),
            images in proptest::collection::vec(0u64..12, 2),
            modulus in 1u64..7,
        ) {
            let g = PermGroup::generate(6, gens.clone()).unwrap();
            prop_assert!(g.contains(&Permutation::identity(6)));
            prop_assert_eq!(720 % g.order(), 0);
            for x in g.elements() {
                prop_assert!(g.contains(&x.inverse()));
            }
            let again = PermGroup::generate(6, g.elements().to_vec()).unwrap();
            prop_assert_eq!(&again, &g);
            let images = images[..gens.len()].to_vec();
            if let Ok(h) = CyclicHom::new(g.clone(), modulus, images) {
                let k = h.kernel();
                prop_assert_eq!(k.order() * h.image_size(), g.order());
                prop_assert!(k.is_normal_in(&g).unwrap());
                prop_assert_eq!(g.quotient(&k).unwrap().order() * k.order(), g.order());
                let sample = &g.elements()[..g.order().min(40)];
                for a in sample {
                    for b in sample {
                        let lhs = h.image_of(&a.compose(b)).unwrap();
                        let rhs = (h.image_of(a).unwrap() + h.image_of(b).unwrap()) % modulus;
                        prop_assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }
}
