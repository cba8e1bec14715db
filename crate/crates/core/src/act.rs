//! Finite right acts of a monoid, their subacts, Rees quotients, products,
//! coproducts and decompositions.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monoid::Monoid;
use crate::morphism::{self, ActHom};
use crate::sets::{canonical_sort, is_subset, normalize, ElemSet};
use crate::union_find::UnionFind;

/// Cap on the number of subacts enumerated by [`all_subacts`].
pub const SUBACT_CAP: usize = 100_000;

/// A finite right act: `table[a * |S| + s] = a·s`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RightAct {
    monoid: Arc<Monoid>,
    size: usize,
    table: Vec<usize>,
    zero: Option<usize>,
}

impl RightAct {
    /// Validates an action table with one row per element and one column
    /// per monoid element. The zero element is detected automatically.
    pub fn from_table(monoid: Arc<Monoid>, table: Vec<Vec<usize>>) -> Result<Self> {
        let m = monoid.size();
        let size = table.len();
        let mut flat = Vec::with_capacity(size * m);
        for (i, row) in table.iter().enumerate() {
            if row.len() != m {
                return Err(Error::MalformedTable(format!(
                    "act row {i} has length {} (monoid has {m} elements)",
                    row.len()
                )));
            }
            flat.extend_from_slice(row);
        }
        Self::from_flat(monoid, size, flat)
    }

    pub fn from_flat(monoid: Arc<Monoid>, size: usize, table: Vec<usize>) -> Result<Self> {
        let m = monoid.size();
        if size == 0 || table.len() != size * m {
            return Err(Error::MalformedTable(format!(
                "act table needs {} entries, got {}",
                size * m,
                table.len()
            )));
        }
        if let Some(pos) = table.iter().position(|&x| x >= size) {
            return Err(Error::MalformedTable(format!(
                "act entry ({}, {}) = {} out of range",
                pos / m,
                pos % m,
                table[pos]
            )));
        }
        let act = RightAct {
            monoid,
            size,
            table,
            zero: None,
        };
        let e = act.monoid.identity();
        for a in 0..size {
            let got = act.act(a, e);
            if got != a {
                return Err(Error::UnitLawViolated { elem: a, got });
            }
        }
        for a in 0..size {
            for s in 0..m {
                let as_ = act.act(a, s);
                for t in 0..m {
                    if act.act(as_, t) != act.act(a, act.monoid.mul(s, t)) {
                        return Err(Error::ActionNotAssociative { elem: a, s, t });
                    }
                }
            }
        }
        let zero = act.detect_zero();
        Ok(RightAct { zero, ..act })
    }

    pub(crate) fn from_flat_unchecked(monoid: Arc<Monoid>, size: usize, table: Vec<usize>) -> Self {
        let act = RightAct {
            monoid,
            size,
            table,
            zero: None,
        };
        debug_assert!({
            let m = act.monoid.size();
            (0..size).all(|a| {
                (0..m).all(|s| {
                    (0..m).all(|t| act.act(act.act(a, s), t) == act.act(a, act.monoid.mul(s, t)))
                })
            })
        });
        let zero = act.detect_zero();
        RightAct { zero, ..act }
    }

    /// Over a monoid with zero `z`, the zero of the act is the common value
    /// of `a·z` when there is one. Without a monoid zero it is the unique
    /// fixed point, if exactly one exists.
    fn detect_zero(&self) -> Option<usize> {
        if self.size == 0 {
            return None;
        }
        match self.monoid.zero() {
            Some(z) => {
                let theta = self.act(0, z);
                (0..self.size)
                    .all(|a| self.act(a, z) == theta)
                    .then_some(theta)
            }
            None => {
                let fixed = self.fixed_points();
                (fixed.len() == 1).then(|| fixed[0])
            }
        }
    }

    /// Overrides the detected zero with an explicit one, checking it.
    pub fn with_zero(mut self, zero: Option<usize>) -> Result<Self> {
        if let Some(z) = zero {
            if z >= self.size || (0..self.monoid.size()).any(|s| self.act(z, s) != z) {
                return Err(Error::BadZero(z));
            }
            if let Some(mz) = self.monoid.zero() {
                if (0..self.size).any(|a| self.act(a, mz) != z) {
                    return Err(Error::BadZero(z));
                }
            }
        }
        self.zero = zero;
        Ok(self)
    }

    /// `S_S`: the monoid acting on itself by right multiplication.
    pub fn regular(monoid: &Arc<Monoid>) -> Self {
        let n = monoid.size();
        Self::from_flat_unchecked(Arc::clone(monoid), n, monoid.flat_table().to_vec())
    }

    /// `n` fixed points.
    pub fn trivial(monoid: &Arc<Monoid>, n: usize) -> Self {
        let m = monoid.size();
        let table = (0..n * m).map(|i| i / m).collect();
        Self::from_flat_unchecked(Arc::clone(monoid), n, table)
    }

    /// The principal right ideal `eS` as an act, elements in increasing order.
    pub fn principal(monoid: &Arc<Monoid>, e: usize) -> Self {
        let regular = Arc::new(Self::regular(monoid));
        let sub = subact_generated(&regular, &[e]).expect("nonempty generator");
        sub.to_act().0
    }

    #[inline]
    pub fn act(&self, a: usize, s: usize) -> usize {
        self.table[a * self.monoid.size() + s]
    }

    pub fn monoid(&self) -> &Arc<Monoid> {
        &self.monoid
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn zero(&self) -> Option<usize> {
        self.zero
    }

    pub fn flat_table(&self) -> &[usize] {
        &self.table
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table
            .chunks(self.monoid.size())
            .map(<[usize]>::to_vec)
            .collect()
    }

    pub fn fixed_points(&self) -> ElemSet {
        (0..self.size)
            .filter(|&a| (0..self.monoid.size()).all(|s| self.act(a, s) == a))
            .collect()
    }

    /// The cyclic subact `aS`.
    pub fn orbit(&self, a: usize) -> ElemSet {
        normalize((0..self.monoid.size()).map(|s| self.act(a, s)).collect())
    }

    /// A minimal generating set: one element from each maximal cyclic
    /// subact, the least index when several generate the same one.
    pub fn generators(&self) -> ElemSet {
        let orbits: Vec<ElemSet> = (0..self.size).map(|a| self.orbit(a)).collect();
        (0..self.size)
            .filter(|&a| {
                !(0..self.size).any(|b| {
                    b != a
                        && is_subset(&orbits[a], &orbits[b])
                        && (orbits[b].len() > orbits[a].len() || b < a)
                })
            })
            .collect()
    }

    pub fn same_monoid(&self, other: &RightAct) -> bool {
        Arc::ptr_eq(&self.monoid, &other.monoid) || *self.monoid == *other.monoid
    }

    pub fn is_closed(&self, set: &[usize]) -> bool {
        self.closure_witness(set).is_none()
    }

    fn closure_witness(&self, set: &[usize]) -> Option<(usize, usize, usize)> {
        let mut member = vec![false; self.size];
        for &x in set {
            member[x] = true;
        }
        for &a in set {
            for s in 0..self.monoid.size() {
                let b = self.act(a, s);
                if !member[b] {
                    return Some((a, s, b));
                }
            }
        }
        None
    }
}

impl fmt::Display for RightAct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "act of size {} over a monoid of size {}",
            self.size,
            self.monoid.size()
        )?;
        for (a, row) in self.rows().iter().enumerate() {
            writeln!(f, "  {a}: {row:?}")?;
        }
        Ok(())
    }
}

/// A nonempty subset of an act closed under the action.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subact {
    parent: Arc<RightAct>,
    elements: ElemSet,
}

impl Subact {
    pub fn new(parent: &Arc<RightAct>, elements: Vec<usize>) -> Result<Self> {
        let elements = normalize(elements);
        if elements.is_empty() {
            return Err(Error::EmptyGeneratingSet);
        }
        if let Some(&x) = elements.iter().find(|&&x| x >= parent.size()) {
            return Err(Error::Invalid(format!("element {x} out of range")));
        }
        if let Some((elem, s, image)) = parent.closure_witness(&elements) {
            return Err(Error::NotASubact { elem, s, image });
        }
        Ok(Subact {
            parent: Arc::clone(parent),
            elements,
        })
    }

    pub fn whole(parent: &Arc<RightAct>) -> Self {
        Subact {
            parent: Arc::clone(parent),
            elements: (0..parent.size()).collect(),
        }
    }

    pub fn parent(&self) -> &Arc<RightAct> {
        &self.parent
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, a: usize) -> bool {
        self.elements.binary_search(&a).is_ok()
    }

    pub fn is_whole(&self) -> bool {
        self.elements.len() == self.parent.size()
    }

    pub fn is_subset_of(&self, other: &Subact) -> bool {
        is_subset(&self.elements, &other.elements)
    }

    /// The subact as an act on `0..len`, with the embedding into the parent.
    pub fn to_act(&self) -> (RightAct, Vec<usize>) {
        let parent = &self.parent;
        let m = parent.monoid().size();
        let mut local = vec![usize::MAX; parent.size()];
        for (i, &a) in self.elements.iter().enumerate() {
            local[a] = i;
        }
        let mut table = Vec::with_capacity(self.elements.len() * m);
        for &a in &self.elements {
            for s in 0..m {
                table.push(local[parent.act(a, s)]);
            }
        }
        let act =
            RightAct::from_flat_unchecked(Arc::clone(parent.monoid()), self.elements.len(), table);
        (act, self.elements.clone())
    }
}

/// `XS`, the least subact containing `X`.
pub fn subact_generated(act: &Arc<RightAct>, gens: &[usize]) -> Result<Subact> {
    if gens.is_empty() {
        return Err(Error::EmptyGeneratingSet);
    }
    if let Some(&x) = gens.iter().find(|&&x| x >= act.size()) {
        return Err(Error::Invalid(format!("element {x} out of range")));
    }
    let set: BTreeSet<usize> = gens
        .iter()
        .flat_map(|&x| (0..act.monoid().size()).map(move |s| act.act(x, s)))
        .collect();
    Ok(Subact {
        parent: Arc::clone(act),
        elements: set.into_iter().collect(),
    })
}

/// Every subact, sorted by size then lexicographically. Subacts are the
/// nonempty unions of cyclic subacts, so the cyclic ones are closed under
/// union.
pub fn all_subacts(act: &Arc<RightAct>) -> Result<Vec<Subact>> {
    let n = act.size();
    let words = n.div_ceil(64);
    let to_bits = |set: &[usize]| {
        let mut bits = vec![0u64; words];
        for &x in set {
            bits[x / 64] |= 1 << (x % 64);
        }
        bits
    };
    let cyclic: BTreeSet<Vec<u64>> = (0..n).map(|a| to_bits(&act.orbit(a))).collect();
    let cyclic: Vec<Vec<u64>> = cyclic.into_iter().collect();
    let mut found: BTreeSet<Vec<u64>> = cyclic.iter().cloned().collect();
    let mut work = cyclic.clone();
    while let Some(cur) = work.pop() {
        for c in &cyclic {
            let u: Vec<u64> = cur.iter().zip(c).map(|(a, b)| a | b).collect();
            if found.insert(u.clone()) {
                if found.len() > SUBACT_CAP {
                    return Err(Error::SizeLimitExceeded(format!(
                        "more than {SUBACT_CAP} subacts"
                    )));
                }
                work.push(u);
            }
        }
    }
    let mut sets: Vec<ElemSet> = found
        .into_iter()
        .map(|bits| {
            (0..n)
                .filter(|&x| bits[x / 64] >> (x % 64) & 1 == 1)
                .collect()
        })
        .collect();
    canonical_sort(&mut sets);
    Ok(sets
        .into_iter()
        .map(|elements| Subact {
            parent: Arc::clone(act),
            elements,
        })
        .collect())
}

/// Largest act [`all_subacts_oracle`] accepts.
pub const SUBSET_ORACLE_CAP: usize = 20;

/// Every subact by testing each nonempty subset for closure.
pub fn all_subacts_oracle(act: &Arc<RightAct>) -> Result<Vec<Subact>> {
    let n = act.size();
    if n > SUBSET_ORACLE_CAP {
        return Err(Error::SizeLimitExceeded(format!(
            "subset oracle is limited to {SUBSET_ORACLE_CAP} elements"
        )));
    }
    let mut sets: Vec<ElemSet> = (1u32..1 << n)
        .map(|mask| (0..n).filter(|&x| mask >> x & 1 == 1).collect::<ElemSet>())
        .filter(|s| act.is_closed(s))
        .collect();
    canonical_sort(&mut sets);
    Ok(sets
        .into_iter()
        .map(|elements| Subact {
            parent: Arc::clone(act),
            elements,
        })
        .collect())
}

/// Proper subacts not contained in any other proper subact.
pub fn maximal_subacts(act: &Arc<RightAct>) -> Result<Vec<Subact>> {
    let subs = all_subacts(act)?;
    let proper: Vec<&Subact> = subs.iter().filter(|b| !b.is_whole()).collect();
    Ok(proper
        .iter()
        .filter(|b| {
            !proper
                .iter()
                .any(|c| c.len() > b.len() && b.is_subset_of(c))
        })
        .map(|b| (*b).clone())
        .collect())
}

/// Inclusion-minimal subacts.
pub fn minimal_subacts(act: &Arc<RightAct>) -> Result<Vec<Subact>> {
    let subs = all_subacts(act)?;
    Ok(subs
        .iter()
        .filter(|b| !subs.iter().any(|c| c.len() < b.len() && c.is_subset_of(b)))
        .cloned()
        .collect())
}

/// Collapses `sub` to a single element.
///
/// Elements outside `sub` keep their relative order; the collapsed class is
/// the last element of the quotient.
pub fn rees_quotient(act: &Arc<RightAct>, sub: &Subact) -> Result<(Arc<RightAct>, ActHom)> {
    if !Arc::ptr_eq(sub.parent(), act) && **sub.parent() != **act {
        return Err(Error::Invalid("subact belongs to a different act".into()));
    }
    let n = act.size();
    let m = act.monoid().size();
    let mut map = vec![usize::MAX; n];
    let mut next = 0;
    for (a, slot) in map.iter_mut().enumerate() {
        if !sub.contains(a) {
            *slot = next;
            next += 1;
        }
    }
    let collapsed = next;
    for &b in sub.elements() {
        map[b] = collapsed;
    }
    let size = collapsed + 1;
    let mut table = vec![collapsed; size * m];
    for a in 0..n {
        if !sub.contains(a) {
            for s in 0..m {
                table[map[a] * m + s] = map[act.act(a, s)];
            }
        }
    }
    let quotient = Arc::new(RightAct::from_flat_unchecked(
        Arc::clone(act.monoid()),
        size,
        table,
    ));
    let epi = ActHom::new_unchecked(Arc::clone(act), Arc::clone(&quotient), map);
    Ok((quotient, epi))
}

/// How summands are glued in [`coproduct`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoproductMode {
    /// Disjoint union.
    Plain,
    /// Disjoint union with all zero elements identified.
    ZeroAmalgamated,
}

fn shared_monoid(acts: &[&RightAct]) -> Result<Arc<Monoid>> {
    let first = acts
        .first()
        .ok_or_else(|| Error::Invalid("need at least one act".into()))?;
    if acts.iter().any(|a| !a.same_monoid(first)) {
        return Err(Error::MixedMonoids);
    }
    Ok(Arc::clone(first.monoid()))
}

/// Coproduct of acts over one monoid.
///
/// Plain mode lays the summands out one after another. In zero-amalgamated
/// mode the first summand keeps its indices (including its zero) and every
/// later summand contributes its non-zero elements in order.
pub fn coproduct(acts: &[&RightAct], mode: CoproductMode) -> Result<RightAct> {
    let monoid = shared_monoid(acts)?;
    let m = monoid.size();
    match mode {
        CoproductMode::Plain => {
            let size: usize = acts.iter().map(|a| a.size()).sum();
            let mut table = Vec::with_capacity(size * m);
            let mut offset = 0;
            for a in acts {
                table.extend(a.flat_table().iter().map(|&x| x + offset));
                offset += a.size();
            }
            Ok(RightAct::from_flat_unchecked(monoid, size, table))
        }
        CoproductMode::ZeroAmalgamated => {
            if monoid.zero().is_none() {
                return Err(Error::MissingZero);
            }
            let zeros: Vec<usize> = acts
                .iter()
                .map(|a| a.zero().ok_or(Error::MissingZero))
                .collect::<Result<_>>()?;
            let glued = zeros[0];
            let mut maps: Vec<Vec<usize>> = Vec::with_capacity(acts.len());
            let mut size = acts[0].size();
            maps.push((0..size).collect());
            for (a, &z) in acts.iter().zip(&zeros).skip(1) {
                let mut map = vec![glued; a.size()];
                for (x, slot) in map.iter_mut().enumerate() {
                    if x != z {
                        *slot = size;
                        size += 1;
                    }
                }
                maps.push(map);
            }
            let mut table = vec![glued; size * m];
            for (a, map) in acts.iter().zip(&maps) {
                for x in 0..a.size() {
                    for s in 0..m {
                        table[map[x] * m + s] = map[a.act(x, s)];
                    }
                }
            }
            Ok(RightAct::from_flat_unchecked(monoid, size, table))
        }
    }
}

/// Cartesian product with the componentwise action; tuples are numbered in
/// mixed radix with the first factor most significant.
pub fn product(acts: &[&RightAct]) -> Result<RightAct> {
    let monoid = shared_monoid(acts)?;
    let m = monoid.size();
    let size: usize = acts.iter().map(|a| a.size()).product();
    let mut table = Vec::with_capacity(size * m);
    let mut digits = vec![0usize; acts.len()];
    for idx in 0..size {
        let mut rest = idx;
        for (i, a) in acts.iter().enumerate().rev() {
            digits[i] = rest % a.size();
            rest /= a.size();
        }
        for s in 0..m {
            let mut out = 0;
            for (i, a) in acts.iter().enumerate() {
                out = out * a.size() + a.act(digits[i], s);
            }
            table.push(out);
        }
    }
    Ok(RightAct::from_flat_unchecked(monoid, size, table))
}

/// Connected components of the graph with edges `a ~ a·s`, sorted by least element.
pub fn decompose_indecomposable(act: &Arc<RightAct>) -> Vec<Subact> {
    let mut uf = UnionFind::new(act.size());
    for a in 0..act.size() {
        for s in 0..act.monoid().size() {
            uf.union(a, act.act(a, s));
        }
    }
    components(act, &mut uf, None)
}

fn components(act: &Arc<RightAct>, uf: &mut UnionFind, skip: Option<usize>) -> Vec<Subact> {
    let reps = uf.min_representatives();
    let mut blocks: Vec<ElemSet> = Vec::new();
    let mut block_of = vec![usize::MAX; act.size()];
    for (a, &r) in reps.iter().enumerate().take(act.size()) {
        if Some(a) == skip {
            continue;
        }
        if block_of[r] == usize::MAX {
            block_of[r] = blocks.len();
            blocks.push(Vec::new());
        }
        blocks[block_of[r]].push(a);
    }
    blocks
        .into_iter()
        .map(|mut elements| {
            if let Some(z) = skip {
                elements.push(z);
                elements.sort_unstable();
            }
            Subact {
                parent: Arc::clone(act),
                elements,
            }
        })
        .collect()
}

/// Decomposition of an act with zero into pieces that meet only in the
/// zero. Each piece is a connected component of the non-zero elements
/// together with the zero; pieces are sorted by least non-zero element.
pub fn zero_decomposition(act: &Arc<RightAct>) -> Result<Vec<Subact>> {
    let z = act.zero().ok_or(Error::MissingZero)?;
    let mut uf = UnionFind::new(act.size());
    for a in 0..act.size() {
        if a == z {
            continue;
        }
        for s in 0..act.monoid().size() {
            let b = act.act(a, s);
            if b != z {
                uf.union(a, b);
            }
        }
    }
    Ok(components(act, &mut uf, Some(z)))
}

/// Structural flags reported by [`classify_act`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActClassification {
    pub simple: bool,
    pub theta_simple: bool,
    pub cyclic: bool,
    pub generator: bool,
    pub projective: bool,
    /// `None` when the monoid has no zero.
    pub semisimple: Option<bool>,
    pub completely_reducible: bool,
}

pub fn is_simple(act: &Arc<RightAct>) -> Result<bool> {
    Ok(all_subacts(act)?.len() == 1)
}

pub fn is_theta_simple(act: &Arc<RightAct>) -> Result<bool> {
    Ok(all_subacts(act)?
        .iter()
        .all(|b| b.is_whole() || b.len() == 1))
}

pub fn is_cyclic(act: &RightAct) -> bool {
    act.generators().len() == 1
}

/// Every indecomposable component is isomorphic to `eS` for an idempotent `e`.
pub fn is_projective(act: &Arc<RightAct>) -> Result<bool> {
    let monoid = act.monoid();
    let candidates: Vec<RightAct> = monoid
        .idempotents()
        .into_iter()
        .map(|e| RightAct::principal(monoid, e))
        .collect();
    for comp in decompose_indecomposable(act) {
        let (c, _) = comp.to_act();
        let mut matched = false;
        for p in &candidates {
            if p.size() == c.size() && morphism::find_isomorphism(&c, p)?.is_some() {
                matched = true;
                break;
            }
        }
        if !matched {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every component is simple, i.e. the act is a disjoint union of simple
/// subacts.
pub fn is_completely_reducible(act: &Arc<RightAct>) -> Result<bool> {
    for comp in decompose_indecomposable(act) {
        let (c, _) = comp.to_act();
        if !is_simple(&Arc::new(c))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Semisimplicity decided by the zero decomposition: every piece is
/// θ-simple. Acts without a zero element are not semisimple.
pub fn is_semisimple(act: &Arc<RightAct>) -> Result<bool> {
    if act.monoid().zero().is_none() {
        return Err(Error::MissingZero);
    }
    if act.zero().is_none() {
        return Ok(false);
    }
    for piece in zero_decomposition(act)? {
        let (p, _) = piece.to_act();
        if !is_theta_simple(&Arc::new(p))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Semisimplicity decided by checking that every subact `B` has a
/// complement `C` with `B ∪ C = A` and `B ∩ C = {0}`.
pub fn is_semisimple_by_summands(act: &Arc<RightAct>) -> Result<bool> {
    if act.monoid().zero().is_none() {
        return Err(Error::MissingZero);
    }
    let Some(z) = act.zero() else {
        return Ok(false);
    };
    for b in all_subacts(act)? {
        let complement: Vec<usize> = (0..act.size())
            .filter(|&a| a == z || !b.contains(a))
            .collect();
        if !act.is_closed(&complement) {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn classify_act(act: &Arc<RightAct>) -> Result<ActClassification> {
    let subs = all_subacts(act)?;
    let semisimple = match act.monoid().zero() {
        Some(_) => Some(is_semisimple(act)?),
        None => None,
    };
    Ok(ActClassification {
        simple: subs.len() == 1,
        theta_simple: subs.iter().all(|b| b.is_whole() || b.len() == 1),
        cyclic: is_cyclic(act),
        generator: morphism::is_generator(act)?,
        projective: is_projective(act)?,
        semisimple,
        completely_reducible: is_completely_reducible(act)?,
    })
}
