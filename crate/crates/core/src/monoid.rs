//! Finite monoids given by multiplication tables.
//!
//! Elements are the dense indices `0..size`. Products are looked up in a
//! flat row-major table, so `mul(s, t)` is a single index computation.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::act::RightAct;
use crate::congruence::Congruence;
use crate::error::{Error, Result};
use crate::sets::{canonical_sort, ElemSet};

/// Default cap on the number of elements produced by transformation closure.
pub const DEFAULT_CLOSURE_CAP: usize = 10_000;

/// Cap on the number of right ideals enumerated before giving up.
pub const RIGHT_IDEAL_CAP: usize = 100_000;

/// A validated finite monoid.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monoid {
    size: usize,
    identity: usize,
    zero: Option<usize>,
    table: Vec<usize>,
}

/// Flags computed by [`Monoid::classify`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoidClassification {
    pub commutative: bool,
    pub left_cancellative: bool,
    pub has_zero: bool,
    pub is_group: bool,
    pub is_0group: bool,
    pub is_local: bool,
    pub units: ElemSet,
    pub maximal_right_ideals: Vec<ElemSet>,
}

impl Monoid {
    /// Validates a square table with the given identity.
    ///
    /// A zero is detected automatically: the unique absorbing element, if any.
    pub fn from_table(table: Vec<Vec<usize>>, identity: usize) -> Result<Self> {
        let size = table.len();
        if size == 0 {
            return Err(Error::MalformedTable("empty table".into()));
        }
        let mut flat = Vec::with_capacity(size * size);
        for (i, row) in table.iter().enumerate() {
            if row.len() != size {
                return Err(Error::MalformedTable(format!(
                    "row {i} has length {} (expected {size})",
                    row.len()
                )));
            }
            flat.extend_from_slice(row);
        }
        Self::from_flat(size, flat, identity)
    }

    pub fn from_flat(size: usize, table: Vec<usize>, identity: usize) -> Result<Self> {
        if size == 0 || table.len() != size * size {
            return Err(Error::MalformedTable(format!(
                "expected {} entries, got {}",
                size * size,
                table.len()
            )));
        }
        if let Some(pos) = table.iter().position(|&x| x >= size) {
            return Err(Error::MalformedTable(format!(
                "entry ({}, {}) = {} out of range",
                pos / size,
                pos % size,
                table[pos]
            )));
        }
        if identity >= size {
            return Err(Error::MalformedTable(format!(
                "identity {identity} out of range"
            )));
        }
        let m = Monoid {
            size,
            identity,
            zero: None,
            table,
        };
        for s in 0..size {
            if m.mul(identity, s) != s || m.mul(s, identity) != s {
                return Err(Error::BadIdentity {
                    identity,
                    witness: s,
                });
            }
        }
        for s in 0..size {
            for t in 0..size {
                let st = m.mul(s, t);
                for u in 0..size {
                    if m.mul(st, u) != m.mul(s, m.mul(t, u)) {
                        return Err(Error::NotAssociative(s, t, u));
                    }
                }
            }
        }
        let zero = (0..size).find(|&z| (0..size).all(|s| m.mul(z, s) == z && m.mul(s, z) == z));
        Ok(Monoid { zero, ..m })
    }

    /// Builds a monoid from a table already known to be valid (identity and
    /// associativity are still debug-checked).
    pub(crate) fn from_flat_unchecked(size: usize, table: Vec<usize>, identity: usize) -> Self {
        let m = Monoid {
            size,
            identity,
            zero: None,
            table,
        };
        debug_assert!((0..size).all(|s| m.mul(identity, s) == s && m.mul(s, identity) == s));
        let zero = (0..size).find(|&z| (0..size).all(|s| m.mul(z, s) == z && m.mul(s, z) == z));
        Monoid { zero, ..m }
    }

    /// The one-element monoid.
    pub fn trivial() -> Self {
        Monoid {
            size: 1,
            identity: 0,
            zero: Some(0),
            table: vec![0],
        }
    }

    /// Closure of `generators` together with the identity map on `{0..degree-1}`.
    ///
    /// Transformations act on the right: the product `s*t` applies `s` first.
    /// Elements are numbered breadth-first from the identity, multiplying by
    /// generators in the order given. Returns the monoid and the map for
    /// every element.
    pub fn from_transformations(
        degree: usize,
        generators: &[Vec<usize>],
        cap: usize,
    ) -> Result<(Self, Vec<Vec<usize>>)> {
        if degree == 0 {
            return Err(Error::Invalid(
                "transformation degree must be positive".into(),
            ));
        }
        for (i, g) in generators.iter().enumerate() {
            if g.len() != degree || g.iter().any(|&x| x >= degree) {
                return Err(Error::Invalid(format!(
                    "generator {i} is not a total map on 0..{degree}"
                )));
            }
        }
        let compose =
            |s: &[usize], t: &[usize]| -> Vec<usize> { s.iter().map(|&x| t[x]).collect() };

        let identity: Vec<usize> = (0..degree).collect();
        let mut elements = vec![identity.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(identity, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(e) = queue.pop_front() {
            for g in generators {
                let p = compose(&elements[e], g);
                if !index.contains_key(&p) {
                    if elements.len() >= cap {
                        return Err(Error::SizeLimitExceeded(format!(
                            "transformation closure exceeds {cap} elements"
                        )));
                    }
                    index.insert(p.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(p);
                }
            }
        }
        let n = elements.len();
        let mut table = Vec::with_capacity(n * n);
        for s in &elements {
            for t in &elements {
                table.push(index[&compose(s, t)]);
            }
        }
        Ok((Self::from_flat_unchecked(n, table, 0), elements))
    }

    /// `{1..n}` under `min`, with an external identity adjoined.
    ///
    /// Index 0 is the identity and index `i` stands for the integer `i`, so
    /// element 1 is the zero.
    pub fn min_with_identity(n: usize) -> Self {
        assert!(n >= 1, "min monoid needs n >= 1");
        let size = n + 1;
        let mut table = vec![0; size * size];
        for s in 0..size {
            for t in 0..size {
                table[s * size + t] = match (s, t) {
                    (0, t) => t,
                    (s, 0) => s,
                    (s, t) => s.min(t),
                };
            }
        }
        Self::from_flat_unchecked(size, table, 0)
    }

    /// Additive group `Z/n`.
    pub fn cyclic_group(n: usize) -> Self {
        assert!(n >= 1);
        let table = (0..n * n).map(|i| (i / n + i % n) % n).collect();
        Self::from_flat_unchecked(n, table, 0)
    }

    /// Direct product with componentwise multiplication; pair `(s, t)` has
    /// index `s * other.size + t`.
    pub fn direct_product(&self, other: &Monoid) -> Self {
        let (n, m) = (self.size, other.size);
        let size = n * m;
        let mut table = Vec::with_capacity(size * size);
        for a in 0..size {
            for b in 0..size {
                let s = self.mul(a / m, b / m);
                let t = other.mul(a % m, b % m);
                table.push(s * m + t);
            }
        }
        Self::from_flat_unchecked(size, table, self.identity * m + other.identity)
    }

    /// Adjoins a new absorbing element at index `size`.
    pub fn with_adjoined_zero(&self) -> Self {
        let n = self.size + 1;
        let z = self.size;
        let mut table = vec![z; n * n];
        for s in 0..self.size {
            for t in 0..self.size {
                table[s * n + t] = self.mul(s, t);
            }
        }
        Self::from_flat_unchecked(n, table, self.identity)
    }

    /// Same carrier with `s*t` replaced by `t*s`.
    pub fn opposite(&self) -> Self {
        let n = self.size;
        let table = (0..n * n).map(|i| self.mul(i % n, i / n)).collect();
        Self::from_flat_unchecked(n, table, self.identity)
    }

    #[inline]
    pub fn mul(&self, s: usize, t: usize) -> usize {
        self.table[s * self.size + t]
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn zero(&self) -> Option<usize> {
        self.zero
    }

    pub fn flat_table(&self) -> &[usize] {
        &self.table
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table
            .chunks(self.size)
            .map(<[usize]>::to_vec)
            .collect()
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.size).all(|s| (s + 1..self.size).all(|t| self.mul(s, t) == self.mul(t, s)))
    }

    pub fn is_left_cancellative(&self) -> bool {
        (0..self.size).all(|s| {
            let mut seen = vec![false; self.size];
            (0..self.size).all(|t| !std::mem::replace(&mut seen[self.mul(s, t)], true))
        })
    }

    /// Elements with a two-sided inverse.
    pub fn units(&self) -> ElemSet {
        let e = self.identity;
        (0..self.size)
            .filter(|&s| (0..self.size).any(|t| self.mul(s, t) == e && self.mul(t, s) == e))
            .collect()
    }

    pub fn idempotents(&self) -> ElemSet {
        (0..self.size).filter(|&s| self.mul(s, s) == s).collect()
    }

    /// The principal right ideal `sS`.
    pub fn principal_right_ideal(&self, s: usize) -> ElemSet {
        let set: BTreeSet<usize> = (0..self.size).map(|t| self.mul(s, t)).collect();
        set.into_iter().collect()
    }

    /// Every nonempty `I` with `IS ⊆ I`, sorted by size then lexicographically.
    ///
    /// Right ideals are exactly the unions of principal right ideals, so the
    /// enumeration closes the principal ones under union.
    pub fn right_ideals(&self) -> Result<Vec<ElemSet>> {
        let words = self.size.div_ceil(64);
        let to_bits = |set: &[usize]| {
            let mut bits = vec![0u64; words];
            for &x in set {
                bits[x / 64] |= 1 << (x % 64);
            }
            bits
        };
        let principal: BTreeSet<Vec<u64>> = (0..self.size)
            .map(|s| to_bits(&self.principal_right_ideal(s)))
            .collect();
        let principal: Vec<Vec<u64>> = principal.into_iter().collect();
        let mut found: BTreeSet<Vec<u64>> = principal.iter().cloned().collect();
        let mut work: Vec<Vec<u64>> = principal.clone();
        while let Some(cur) = work.pop() {
            for p in &principal {
                let u: Vec<u64> = cur.iter().zip(p).map(|(a, b)| a | b).collect();
                if found.insert(u.clone()) {
                    if found.len() > RIGHT_IDEAL_CAP {
                        return Err(Error::SizeLimitExceeded(format!(
                            "more than {RIGHT_IDEAL_CAP} right ideals"
                        )));
                    }
                    work.push(u);
                }
            }
        }
        let mut out: Vec<ElemSet> = found
            .into_iter()
            .map(|bits| {
                (0..self.size)
                    .filter(|&x| bits[x / 64] >> (x % 64) & 1 == 1)
                    .collect()
            })
            .collect();
        canonical_sort(&mut out);
        Ok(out)
    }

    /// Maximal proper right ideals.
    ///
    /// Every proper right ideal avoids the right-invertible elements, and the
    /// set of elements `s` with `sS ≠ S` is itself a right ideal, so there is
    /// at most one maximal proper right ideal.
    pub fn maximal_right_ideals(&self) -> Vec<ElemSet> {
        let non_invertible: ElemSet = (0..self.size)
            .filter(|&s| (0..self.size).all(|t| self.mul(s, t) != self.identity))
            .collect();
        if non_invertible.is_empty() {
            vec![]
        } else {
            vec![non_invertible]
        }
    }

    pub fn classify(&self) -> MonoidClassification {
        let units = self.units();
        let is_group = units.len() == self.size;
        let is_0group = match self.zero {
            Some(z) if self.size >= 2 => units.len() == self.size - 1 && !units.contains(&z),
            _ => false,
        };
        let maximal_right_ideals = self.maximal_right_ideals();
        MonoidClassification {
            commutative: self.is_commutative(),
            left_cancellative: self.is_left_cancellative(),
            has_zero: self.zero.is_some(),
            is_group,
            is_0group,
            is_local: maximal_right_ideals.len() == 1,
            units,
            maximal_right_ideals,
        }
    }

    /// All products of `n` members of `ideal`.
    pub fn ideal_power(&self, ideal: &[usize], n: usize) -> ElemSet {
        assert!(n >= 1, "ideal powers start at 1");
        let mut cur: BTreeSet<usize> = ideal.iter().copied().collect();
        for _ in 1..n {
            cur = cur
                .iter()
                .flat_map(|&p| ideal.iter().map(move |&i| (p, i)))
                .map(|(p, i)| self.mul(p, i))
                .collect();
        }
        cur.into_iter().collect()
    }

    /// The least two-sided ideal of a commutative monoid, the intersection of
    /// all principal ideals when that intersection is nonempty.
    pub fn minimum_ideal(&self) -> Result<Option<ElemSet>> {
        if !self.is_commutative() {
            return Err(Error::NotCommutative);
        }
        let mut inter: BTreeSet<usize> = (0..self.size).collect();
        for s in 0..self.size {
            let ideal: BTreeSet<usize> = self.principal_right_ideal(s).into_iter().collect();
            inter = inter.intersection(&ideal).copied().collect();
        }
        Ok(if inter.is_empty() {
            None
        } else {
            Some(inter.into_iter().collect())
        })
    }

    /// Quotient by a congruence of the regular act `S_S` that is also left
    /// compatible. Classes are numbered by their least member.
    pub fn quotient(self: &Arc<Self>, rho: &Congruence) -> Result<(Monoid, MonoidHom)> {
        let act = rho.act();
        if !Arc::ptr_eq(act.monoid(), self) && **act.monoid() != **self
            || act.size() != self.size
            || (0..self.size).any(|a| (0..self.size).any(|s| act.act(a, s) != self.mul(a, s)))
        {
            return Err(Error::Invalid(
                "quotient_monoid expects a congruence on the regular act of this monoid".into(),
            ));
        }
        let rep = rho.representatives();
        for a in 0..self.size {
            let b = rep[a];
            if a == b {
                continue;
            }
            for s in 0..self.size {
                if rep[self.mul(s, a)] != rep[self.mul(s, b)] {
                    return Err(Error::NotTwoSided { a, b, s });
                }
            }
        }
        let (class_of, reps) = rho.class_indices();
        let k = reps.len();
        let mut table = Vec::with_capacity(k * k);
        for &x in &reps {
            for &y in &reps {
                table.push(class_of[self.mul(x, y)]);
            }
        }
        let q = Arc::new(Self::from_flat_unchecked(k, table, class_of[self.identity]));
        let hom = MonoidHom {
            source: Arc::clone(self),
            target: Arc::clone(&q),
            map: class_of,
        };
        Ok(((*q).clone(), hom))
    }

    /// Isomorphism `self -> other` as an index map, found by backtracking.
    pub fn find_isomorphism(&self, other: &Monoid) -> Option<Vec<usize>> {
        if self.size != other.size {
            return None;
        }
        let n = self.size;
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        map[self.identity] = other.identity;
        used[other.identity] = true;
        let order: Vec<usize> = (0..n).filter(|&s| s != self.identity).collect();
        fn consistent(a: &Monoid, b: &Monoid, map: &[usize]) -> bool {
            let n = a.size;
            for s in 0..n {
                if map[s] == usize::MAX {
                    continue;
                }
                for t in 0..n {
                    if map[t] == usize::MAX {
                        continue;
                    }
                    let st = map[a.mul(s, t)];
                    if st != usize::MAX && st != b.mul(map[s], map[t]) {
                        return false;
                    }
                }
            }
            true
        }
        fn go(
            a: &Monoid,
            b: &Monoid,
            order: &[usize],
            map: &mut Vec<usize>,
            used: &mut Vec<bool>,
        ) -> bool {
            let Some((&s, rest)) = order.split_first() else {
                return true;
            };
            for img in 0..b.size {
                if used[img] {
                    continue;
                }
                map[s] = img;
                used[img] = true;
                if consistent(a, b, map) && go(a, b, rest, map, used) {
                    return true;
                }
                used[img] = false;
                map[s] = usize::MAX;
            }
            false
        }
        go(self, other, &order, &mut map, &mut used).then_some(map)
    }

    /// The regular act `S_S`.
    pub fn regular_act(self: &Arc<Self>) -> RightAct {
        RightAct::regular(self)
    }
}

/// A monoid homomorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoidHom {
    source: Arc<Monoid>,
    target: Arc<Monoid>,
    map: Vec<usize>,
}

impl MonoidHom {
    pub fn new(source: Arc<Monoid>, target: Arc<Monoid>, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.size() || map.iter().any(|&x| x >= target.size()) {
            return Err(Error::NotAHomomorphism(
                "map has wrong length or range".into(),
            ));
        }
        if map[source.identity()] != target.identity() {
            return Err(Error::NotAHomomorphism("identity is not preserved".into()));
        }
        for s in 0..source.size() {
            for t in 0..source.size() {
                if map[source.mul(s, t)] != target.mul(map[s], map[t]) {
                    return Err(Error::NotAHomomorphism(format!(
                        "f({s}*{t}) != f({s})*f({t})"
                    )));
                }
            }
        }
        Ok(MonoidHom {
            source,
            target,
            map,
        })
    }

    pub fn identity(monoid: &Arc<Monoid>) -> Self {
        MonoidHom {
            source: Arc::clone(monoid),
            target: Arc::clone(monoid),
            map: (0..monoid.size()).collect(),
        }
    }

    pub fn source(&self) -> &Arc<Monoid> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Monoid> {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, s: usize) -> usize {
        self.map[s]
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.size()];
        for &x in &self.map {
            hit[x] = true;
        }
        hit.into_iter().all(|h| h)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z3() -> Monoid {
        Monoid::from_table(vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]], 0).unwrap()
    }

    #[test]
    fn trivial_monoid_has_zero() {
        let m = Monoid::from_table(vec![vec![0]], 0).unwrap();
        assert_eq!(m.zero(), Some(0));
        let c = m.classify();
        assert!(c.has_zero && c.is_group && !c.is_0group);
        assert_eq!(m.right_ideals().unwrap(), vec![vec![0]]);
    }

    #[test]
    fn z3_is_a_group() {
        let c = z3().classify();
        assert!(c.is_group && !c.is_local && c.left_cancellative && c.commutative);
        assert_eq!(c.units, vec![0, 1, 2]);
        assert!(c.maximal_right_ideals.is_empty());
    }

    #[test]
    fn broken_tables_are_rejected() {
        // 1*2 = 0 but (1*1)*2 = 1*2 = 0 while 1*(1*2) = 1*0 = 1.
        let t = vec![vec![0, 1, 2], vec![1, 1, 0], vec![2, 2, 2]];
        assert!(matches!(
            Monoid::from_table(t, 0),
            Err(Error::NotAssociative(..))
        ));
        let t = vec![vec![0, 0], vec![1, 1]];
        assert!(matches!(
            Monoid::from_table(t, 0),
            Err(Error::BadIdentity { identity: 0, .. })
        ));
        assert!(matches!(
            Monoid::from_table(vec![vec![0, 1], vec![1]], 0),
            Err(Error::MalformedTable(_))
        ));
        assert!(matches!(
            Monoid::from_table(vec![vec![0, 5], vec![1, 0]], 0),
            Err(Error::MalformedTable(_))
        ));
    }

    #[test]
    fn transformation_closure() {
        let (m, _) = Monoid::from_transformations(2, &[], 100).unwrap();
        assert_eq!(m.size(), 1);

        let (m, els) = Monoid::from_transformations(2, &[vec![0, 0]], 100).unwrap();
        assert_eq!(m.size(), 2);
        assert_eq!(els, vec![vec![0, 1], vec![0, 0]]);
        assert_eq!(m.mul(1, 1), 1);
        assert_eq!(m.zero(), Some(1));

        let (m, _) = Monoid::from_transformations(3, &[vec![1, 2, 0]], 100).unwrap();
        assert_eq!(m.size(), 3);
        assert!(m.classify().is_group);

        // full transformation monoid on three points has 27 elements
        let gens = [vec![1, 0, 2], vec![1, 2, 0], vec![0, 0, 2]];
        let (m, _) = Monoid::from_transformations(3, &gens, 100).unwrap();
        assert_eq!(m.size(), 27);
        assert!(matches!(
            Monoid::from_transformations(3, &gens, 10),
            Err(Error::SizeLimitExceeded(_))
        ));
    }

    #[test]
    fn min_monoid_shape() {
        let m = Monoid::min_with_identity(1);
        assert_eq!(m.size(), 2);
        assert_eq!(m.zero(), Some(1));

        let m = Monoid::min_with_identity(3);
        let c = m.classify();
        assert!(c.commutative && !c.is_group);
        assert_eq!(
            m.right_ideals().unwrap(),
            vec![vec![1], vec![1, 2], vec![1, 2, 3], vec![0, 1, 2, 3]]
        );
        assert_eq!(m.ideal_power(&[1, 2, 3], 2), vec![1, 2, 3]);

        let c = Monoid::min_with_identity(4).classify();
        assert!(c.is_local);
        assert_eq!(c.maximal_right_ideals, vec![vec![1, 2, 3, 4]]);
    }

    #[test]
    fn adjoined_zero_gives_0group() {
        let m = Monoid::cyclic_group(2).with_adjoined_zero();
        let c = m.classify();
        assert!(c.is_0group && c.has_zero && !c.is_group);
    }

    #[test]
    fn componentwise_z2_multiplication_is_local() {
        // multiplicative {0,1} squared; index 0 = (1,1)
        let base = Monoid::from_table(vec![vec![0, 1], vec![1, 1]], 0).unwrap();
        let m = base.direct_product(&base);
        let c = m.classify();
        assert!(c.commutative && c.is_local);
        assert_eq!(c.maximal_right_ideals, vec![vec![1, 2, 3]]);
    }

    #[test]
    fn maximal_right_ideal_matches_enumeration() {
        let gens = [vec![1, 0, 2], vec![0, 0, 2]];
        let (m, _) = Monoid::from_transformations(3, &gens, 100).unwrap();
        let ideals = m.right_ideals().unwrap();
        let proper: Vec<&ElemSet> = ideals.iter().filter(|i| i.len() < m.size()).collect();
        let maximal: Vec<ElemSet> = proper
            .iter()
            .filter(|i| {
                !proper
                    .iter()
                    .any(|j| j.len() > i.len() && i.iter().all(|x| j.contains(x)))
            })
            .map(|i| (*i).clone())
            .collect();
        assert_eq!(maximal, m.maximal_right_ideals());
    }

    #[test]
    fn minimum_ideal_needs_commutativity() {
        let m = Monoid::min_with_identity(3);
        assert_eq!(m.minimum_ideal().unwrap(), Some(vec![1]));
        let (t, _) = Monoid::from_transformations(2, &[vec![0, 0], vec![1, 1]], 10).unwrap();
        assert_eq!(t.minimum_ideal(), Err(Error::NotCommutative));
    }

    #[test]
    fn isomorphism_search() {
        let a = Monoid::cyclic_group(4);
        let (b, _) = Monoid::from_transformations(4, &[vec![1, 2, 3, 0]], 10).unwrap();
        assert!(a.find_isomorphism(&b).is_some());
        let c = Monoid::cyclic_group(2).direct_product(&Monoid::cyclic_group(2));
        assert!(a.find_isomorphism(&c).is_none());
    }

    #[test]
    fn monoid_hom_validation() {
        let z4 = Arc::new(Monoid::cyclic_group(4));
        let z2 = Arc::new(Monoid::cyclic_group(2));
        assert!(MonoidHom::new(z4.clone(), z2.clone(), vec![0, 1, 0, 1]).is_ok());
        assert!(MonoidHom::new(z4, z2, vec![0, 1, 1, 0]).is_err());
    }
}
