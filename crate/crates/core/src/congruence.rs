//! Congruences on finite acts and the lattice `Con(A)`.
//!
//! A congruence is stored in canonical form: every element is mapped to
//! the least member of its class. Equality, ordering and hashing only look
//! at that vector, so two congruences on equal acts compare structurally.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::act::{RightAct, Subact};
use crate::error::{Error, Result};
use crate::morphism::ActHom;
use crate::sets::ElemSet;
use crate::union_find::UnionFind;

/// Default cap on the size of an enumerated congruence lattice.
pub const LATTICE_CAP: usize = 100_000;
/// Default carrier-size cap for the brute-force partition oracle.
pub const ORACLE_CAP: usize = 7;
/// Cap on the number of pair subsets examined by [`minimal_generating_pairs`].
pub const GENERATING_SEARCH_CAP: usize = 2_000_000;
/// Families up to this size get an exact minimum in [`meet_reduction`].
pub const EXACT_MEET_CAP: usize = 16;

#[derive(Clone)]
pub struct Congruence {
    act: Arc<RightAct>,
    rep: Vec<usize>,
}

impl fmt::Debug for Congruence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Congruence{self}")
    }
}

impl fmt::Display for Congruence {
    /// Blocks separated by `|`, e.g. `{0,1|2}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: Vec<String> = self
            .blocks()
            .iter()
            .map(|b| b.iter().map(usize::to_string).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "{{{}}}", blocks.join("|"))
    }
}

impl PartialEq for Congruence {
    fn eq(&self, other: &Self) -> bool {
        self.rep == other.rep
    }
}

impl Eq for Congruence {}

impl Hash for Congruence {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.rep.hash(state);
    }
}

impl PartialOrd for Congruence {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Congruence {
    /// More classes first (so `Δ` leads and `∇` trails), then by the
    /// representative vector.
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .num_classes()
            .cmp(&self.num_classes())
            .then_with(|| self.rep.cmp(&other.rep))
    }
}

/// Serialized form: the block list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockList(pub Vec<ElemSet>);

impl Congruence {
    /// The identity relation `Δ`.
    pub fn delta(act: &Arc<RightAct>) -> Self {
        Congruence {
            act: Arc::clone(act),
            rep: (0..act.size()).collect(),
        }
    }

    /// The full relation `∇`.
    pub fn nabla(act: &Arc<RightAct>) -> Self {
        Congruence {
            act: Arc::clone(act),
            rep: vec![0; act.size()],
        }
    }

    /// The Rees congruence `(B×B) ∪ Δ`.
    pub fn rees(act: &Arc<RightAct>, sub: &Subact) -> Result<Self> {
        if !same_act(sub.parent(), act) {
            return Err(Error::MixedActs);
        }
        let least = sub.elements()[0];
        let mut rep: Vec<usize> = (0..act.size()).collect();
        for &b in sub.elements() {
            rep[b] = least;
        }
        Ok(Congruence {
            act: Arc::clone(act),
            rep,
        })
    }

    /// Builds from per-element class labels, validating compatibility.
    pub fn from_labels(act: &Arc<RightAct>, labels: &[usize]) -> Result<Self> {
        if labels.len() != act.size() {
            return Err(Error::NotACongruence(format!(
                "expected {} labels, got {}",
                act.size(),
                labels.len()
            )));
        }
        let mut first = std::collections::HashMap::new();
        let rep: Vec<usize> = labels
            .iter()
            .enumerate()
            .map(|(a, l)| *first.entry(*l).or_insert(a))
            .collect();
        let rho = Congruence {
            act: Arc::clone(act),
            rep,
        };
        if let Some((a, b, s)) = rho.compatibility_witness() {
            return Err(Error::NotACongruence(format!(
                "{a} ~ {b} but {a}*{s} !~ {b}*{s}"
            )));
        }
        Ok(rho)
    }

    /// Builds from a block list; elements not mentioned are singletons.
    pub fn from_blocks(act: &Arc<RightAct>, blocks: &[Vec<usize>]) -> Result<Self> {
        let n = act.size();
        let mut labels: Vec<usize> = (0..n).collect();
        let mut seen = vec![false; n];
        for block in blocks {
            let Some(&head) = block.first() else {
                continue;
            };
            for &x in block {
                if x >= n || std::mem::replace(&mut seen[x], true) {
                    return Err(Error::NotACongruence(format!(
                        "element {x} is out of range or listed twice"
                    )));
                }
                labels[x] = head;
            }
        }
        Self::from_labels(act, &labels)
    }

    /// Canonical representative vector, trusted to be compatible.
    pub(crate) fn from_rep_unchecked(act: &Arc<RightAct>, rep: Vec<usize>) -> Self {
        debug_assert_eq!(rep.len(), act.size());
        Congruence {
            act: Arc::clone(act),
            rep,
        }
    }

    fn compatibility_witness(&self) -> Option<(usize, usize, usize)> {
        for a in 0..self.rep.len() {
            let b = self.rep[a];
            if a == b {
                continue;
            }
            for s in 0..self.act.monoid().size() {
                if self.rep[self.act.act(a, s)] != self.rep[self.act.act(b, s)] {
                    return Some((a, b, s));
                }
            }
        }
        None
    }

    /// Least congruence containing `pairs`.
    ///
    /// Union-find with a worklist: whenever two classes merge, the pair of
    /// translates `(a·s, b·s)` is queued for every `s`.
    pub fn generated(act: &Arc<RightAct>, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = act.size();
        if let Some(&(a, b)) = pairs.iter().find(|&&(a, b)| a >= n || b >= n) {
            return Err(Error::Invalid(format!("pair ({a}, {b}) out of range")));
        }
        let mut uf = UnionFind::new(n);
        close(act, &mut uf, pairs.to_vec());
        Ok(Congruence {
            act: Arc::clone(act),
            rep: uf.min_representatives(),
        })
    }

    /// `ρ(a, b)`, the congruence generated by one pair.
    pub fn principal(act: &Arc<RightAct>, a: usize, b: usize) -> Result<Self> {
        Self::generated(act, &[(a, b)])
    }

    pub fn act(&self) -> &Arc<RightAct> {
        &self.act
    }

    pub fn representatives(&self) -> &[usize] {
        &self.rep
    }

    pub fn related(&self, a: usize, b: usize) -> bool {
        self.rep[a] == self.rep[b]
    }

    pub fn num_classes(&self) -> usize {
        self.rep
            .iter()
            .enumerate()
            .filter(|&(a, &r)| a == r)
            .count()
    }

    pub fn is_delta(&self) -> bool {
        self.rep.iter().enumerate().all(|(a, &r)| a == r)
    }

    pub fn is_nabla(&self) -> bool {
        self.rep.iter().all(|&r| r == 0)
    }

    /// `self ⊆ other` as sets of pairs.
    pub fn is_subset_of(&self, other: &Congruence) -> bool {
        self.rep.len() == other.rep.len()
            && (0..self.rep.len()).all(|a| other.rep[a] == other.rep[self.rep[a]])
    }

    /// Classes sorted by least member, members ascending.
    pub fn blocks(&self) -> Vec<ElemSet> {
        let (class_of, reps) = self.class_indices();
        let mut blocks = vec![Vec::new(); reps.len()];
        for (a, &c) in class_of.iter().enumerate() {
            blocks[c].push(a);
        }
        blocks
    }

    pub fn block_list(&self) -> BlockList {
        BlockList(self.blocks())
    }

    /// Class number of every element (classes numbered by least member) and
    /// the least member of each class.
    pub fn class_indices(&self) -> (Vec<usize>, Vec<usize>) {
        let mut index = vec![usize::MAX; self.rep.len()];
        let mut reps = Vec::new();
        for (a, &r) in self.rep.iter().enumerate() {
            if a == r {
                index[a] = reps.len();
                reps.push(a);
            }
        }
        let class_of = self.rep.iter().map(|&r| index[r]).collect();
        (class_of, reps)
    }

    /// Off-diagonal pairs `(a, b)` with `a < b`.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let n = self.rep.len();
        (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .filter(|&(a, b)| self.rep[a] == self.rep[b])
            .collect()
    }

    fn check_same_act(&self, other: &Congruence) -> Result<()> {
        if same_act(&self.act, &other.act) {
            Ok(())
        } else {
            Err(Error::MixedActs)
        }
    }

    /// Least congruence containing both, recomputed by generated closure.
    pub fn join(&self, other: &Congruence) -> Result<Congruence> {
        self.check_same_act(other)?;
        let n = self.rep.len();
        let mut uf = UnionFind::new(n);
        let seeds: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| [(a, self.rep[a]), (a, other.rep[a])])
            .filter(|&(a, b)| a != b)
            .collect();
        close(&self.act, &mut uf, seeds);
        Ok(Congruence {
            act: Arc::clone(&self.act),
            rep: uf.min_representatives(),
        })
    }

    /// Intersection of the two relations.
    pub fn meet(&self, other: &Congruence) -> Result<Congruence> {
        self.check_same_act(other)?;
        let n = self.rep.len();
        let mut first: std::collections::HashMap<(usize, usize), usize> =
            std::collections::HashMap::new();
        let rep = (0..n)
            .map(|a| *first.entry((self.rep[a], other.rep[a])).or_insert(a))
            .collect();
        Ok(Congruence {
            act: Arc::clone(&self.act),
            rep,
        })
    }

    /// The quotient act `A/ρ` (classes numbered by least member) with its
    /// canonical epimorphism.
    pub fn quotient(&self) -> (Arc<RightAct>, ActHom) {
        let (class_of, reps) = self.class_indices();
        let m = self.act.monoid().size();
        let mut table = Vec::with_capacity(reps.len() * m);
        for &r in &reps {
            for s in 0..m {
                table.push(class_of[self.act.act(r, s)]);
            }
        }
        let q = Arc::new(RightAct::from_flat_unchecked(
            Arc::clone(self.act.monoid()),
            reps.len(),
            table,
        ));
        let epi = ActHom::new_unchecked(Arc::clone(&self.act), Arc::clone(&q), class_of);
        (q, epi)
    }

    /// Restriction to a subact, as a congruence on the subact's own act
    /// (see [`Subact::to_act`]).
    pub fn restrict(&self, sub: &Subact, sub_act: &Arc<RightAct>) -> Result<Congruence> {
        if !same_act(sub.parent(), &self.act) || sub_act.size() != sub.len() {
            return Err(Error::MixedActs);
        }
        let labels: Vec<usize> = sub.elements().iter().map(|&a| self.rep[a]).collect();
        Congruence::from_labels(sub_act, &labels)
    }
}

pub(crate) fn same_act(a: &Arc<RightAct>, b: &Arc<RightAct>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

fn close(act: &RightAct, uf: &mut UnionFind, mut work: Vec<(usize, usize)>) {
    let m = act.monoid().size();
    while let Some((a, b)) = work.pop() {
        if uf.union(a, b) {
            for s in 0..m {
                let (x, y) = (act.act(a, s), act.act(b, s));
                if x != y {
                    work.push((x, y));
                }
            }
        }
    }
}

/// Meet of a nonempty family.
pub fn meet_family(family: &[Congruence]) -> Result<Congruence> {
    let (first, rest) = family.split_first().ok_or(Error::EmptySet)?;
    rest.iter().try_fold(first.clone(), |acc, c| acc.meet(c))
}

/// How [`all_congruences`] enumerates the lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Close `Δ` and the principal congruences under joins.
    Saturate,
    /// Filter every set partition of the carrier.
    Oracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LatticeLimits {
    pub max_congruences: usize,
    pub oracle_max_size: usize,
}

impl Default for LatticeLimits {
    fn default() -> Self {
        LatticeLimits {
            max_congruences: LATTICE_CAP,
            oracle_max_size: ORACLE_CAP,
        }
    }
}

/// `Con(A)` in canonical order (see [`Congruence`]'s `Ord`).
pub fn all_congruences(act: &Arc<RightAct>, method: Method) -> Result<Vec<Congruence>> {
    all_congruences_with(act, method, LatticeLimits::default())
}

pub fn all_congruences_with(
    act: &Arc<RightAct>,
    method: Method,
    limits: LatticeLimits,
) -> Result<Vec<Congruence>> {
    let mut out = match method {
        Method::Saturate => saturate(act, limits.max_congruences)?,
        Method::Oracle => {
            if act.size() > limits.oracle_max_size {
                return Err(Error::SizeLimitExceeded(format!(
                    "oracle limited to acts of size {}",
                    limits.oracle_max_size
                )));
            }
            partition_oracle(act, limits.max_congruences)?
        }
    };
    out.sort();
    Ok(out)
}

fn saturate(act: &Arc<RightAct>, cap: usize) -> Result<Vec<Congruence>> {
    let n = act.size();
    let mut principal: Vec<Congruence> = Vec::new();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    for a in 0..n {
        for b in a + 1..n {
            let p = Congruence::principal(act, a, b)?;
            if seen.insert(p.rep.clone()) {
                principal.push(p);
            }
        }
    }
    let delta = Congruence::delta(act);
    seen.insert(delta.rep.clone());
    let mut found: Vec<Congruence> = vec![delta];
    found.extend(principal.iter().cloned());
    let mut work: Vec<usize> = (1..found.len()).collect();
    while let Some(i) = work.pop() {
        for p in &principal {
            if p.is_subset_of(&found[i]) {
                continue;
            }
            let j = found[i].join(p)?;
            if seen.insert(j.rep.clone()) {
                if found.len() >= cap {
                    return Err(Error::SizeLimitExceeded(format!(
                        "congruence lattice exceeds {cap} elements"
                    )));
                }
                work.push(found.len());
                found.push(j);
            }
        }
    }
    Ok(found)
}

/// Brute force: every set partition (restricted growth string) of the
/// carrier, kept when action compatible.
fn partition_oracle(act: &Arc<RightAct>, cap: usize) -> Result<Vec<Congruence>> {
    let n = act.size();
    let mut out = Vec::new();
    let mut labels = vec![0usize; n];
    loop {
        if let Ok(c) = Congruence::from_labels(act, &labels) {
            if out.len() >= cap {
                return Err(Error::SizeLimitExceeded(format!(
                    "congruence lattice exceeds {cap} elements"
                )));
            }
            out.push(c);
        }
        // next restricted growth string
        let mut i = n;
        loop {
            if i <= 1 {
                return Ok(out);
            }
            i -= 1;
            let max_prefix = labels[..i].iter().copied().max().unwrap_or(0);
            if labels[i] <= max_prefix {
                labels[i] += 1;
                for l in &mut labels[i + 1..] {
                    *l = 0;
                }
                break;
            }
        }
    }
}

/// A smallest set of pairs `(a, b)`, `a < b`, generating `rho`, found by
/// breadth-first search over subsets of the off-diagonal pairs of `rho` in
/// lexicographic order.
pub fn minimal_generating_pairs(rho: &Congruence) -> Result<Vec<(usize, usize)>> {
    minimal_generating_pairs_with(rho, GENERATING_SEARCH_CAP)
}

pub fn minimal_generating_pairs_with(rho: &Congruence, cap: usize) -> Result<Vec<(usize, usize)>> {
    if rho.is_delta() {
        return Ok(vec![]);
    }
    let act = &rho.act;
    let candidates = rho.pairs();
    // a spanning forest of the classes always generates
    let upper = rho.rep.len() - rho.num_classes();
    let mut examined = 0usize;
    for k in 1..=upper {
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            examined += 1;
            if examined > cap {
                return Err(Error::SizeLimitExceeded(format!(
                    "generating-pair search exceeded {cap} subsets"
                )));
            }
            let pairs: Vec<(usize, usize)> = idx.iter().map(|&i| candidates[i]).collect();
            if Congruence::generated(act, &pairs)? == *rho {
                return Ok(pairs);
            }
            if !next_combination(&mut idx, candidates.len()) {
                break;
            }
        }
    }
    unreachable!("a spanning forest of the classes generates the congruence")
}

/// Advances a k-combination of `0..n` in lexicographic order.
pub(crate) fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// An inclusion-minimal subfamily of `family` whose meet is still `theta`.
///
/// Greedy removal in input order gives an inclusion-minimal subfamily. For
/// families of at most [`EXACT_MEET_CAP`] members the result is then
/// replaced by a minimum-cardinality one (first in lexicographic order of
/// positions). Members are returned in input order.
pub fn meet_reduction(theta: &Congruence, family: &[Congruence]) -> Result<Vec<Congruence>> {
    if meet_family(family)? != *theta {
        return Err(Error::MeetMismatch);
    }
    let mut keep: Vec<usize> = (0..family.len()).collect();
    let mut i = 0;
    while i < keep.len() {
        let without: Vec<Congruence> = keep
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &k)| family[k].clone())
            .collect();
        if !without.is_empty() && meet_family(&without)? == *theta {
            keep.remove(i);
        } else {
            i += 1;
        }
    }
    if family.len() <= EXACT_MEET_CAP {
        'sizes: for k in 1..keep.len() {
            let mut idx: Vec<usize> = (0..k).collect();
            loop {
                let sub: Vec<Congruence> = idx.iter().map(|&i| family[i].clone()).collect();
                if meet_family(&sub)? == *theta {
                    keep = idx;
                    break 'sizes;
                }
                if !next_combination(&mut idx, family.len()) {
                    break;
                }
            }
        }
    }
    Ok(keep.into_iter().map(|i| family[i].clone()).collect())
}

/// `σ ⊕ δ`: the join when the meet is `Δ`, otherwise `None`.
pub fn direct_sum_check(sigma: &Congruence, delta: &Congruence) -> Result<Option<Congruence>> {
    if sigma.meet(delta)?.is_delta() {
        Ok(Some(sigma.join(delta)?))
    } else {
        Ok(None)
    }
}

/// `ρ ∪ Δ_A` for a congruence `ρ` on a subact `B` (given on `B`'s own act,
/// see [`Subact::to_act`]).
pub fn extend_congruence(
    act: &Arc<RightAct>,
    sub: &Subact,
    rho: &Congruence,
) -> Result<Congruence> {
    if !same_act(sub.parent(), act) {
        return Err(Error::MixedActs);
    }
    if rho.rep.len() != sub.len() {
        return Err(Error::Invalid(
            "congruence does not live on the given subact".into(),
        ));
    }
    let embed = sub.elements();
    let mut labels: Vec<usize> = (0..act.size()).collect();
    for (local, &a) in embed.iter().enumerate() {
        labels[a] = embed[rho.rep[local]];
    }
    Congruence::from_labels(act, &labels)
}

/// Inclusion-minimal and inclusion-maximal members of a nonempty list.
pub fn lattice_extrema(set: &[Congruence]) -> Result<(Vec<Congruence>, Vec<Congruence>)> {
    let first = set.first().ok_or(Error::EmptySet)?;
    if set.iter().any(|c| !same_act(&c.act, &first.act)) {
        return Err(Error::MixedActs);
    }
    let strictly = |a: &Congruence, b: &Congruence| a != b && a.is_subset_of(b);
    let minimal = set
        .iter()
        .filter(|c| !set.iter().any(|d| strictly(d, c)))
        .cloned()
        .collect();
    let maximal = set
        .iter()
        .filter(|c| !set.iter().any(|d| strictly(c, d)))
        .cloned()
        .collect();
    Ok((minimal, maximal))
}
