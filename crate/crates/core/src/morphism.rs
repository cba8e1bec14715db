//! Homomorphisms of acts, kernels, endomorphism monoids and restriction of
//! scalars.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::act::{RightAct, Subact};
use crate::congruence::{all_congruences, Congruence, Method};
use crate::error::{Error, Result};
use crate::monoid::{Monoid, MonoidHom};
use crate::sets::{is_subset, normalize, ElemSet};

/// Cap on the number of homomorphisms produced by one enumeration.
pub const HOM_CAP: usize = 1_000_000;

/// An equivariant map between two acts over the same monoid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActHom {
    source: Arc<RightAct>,
    target: Arc<RightAct>,
    map: Vec<usize>,
}

impl ActHom {
    pub fn new(source: Arc<RightAct>, target: Arc<RightAct>, map: Vec<usize>) -> Result<Self> {
        if !source.same_monoid(&target) {
            return Err(Error::MixedMonoids);
        }
        if map.len() != source.size() || map.iter().any(|&x| x >= target.size()) {
            return Err(Error::NotAHomomorphism(
                "map has the wrong length or leaves the target".into(),
            ));
        }
        for a in 0..source.size() {
            for s in 0..source.monoid().size() {
                if map[source.act(a, s)] != target.act(map[a], s) {
                    return Err(Error::NotAHomomorphism(format!("f({a}*{s}) != f({a})*{s}")));
                }
            }
        }
        Ok(ActHom {
            source,
            target,
            map,
        })
    }

    pub(crate) fn new_unchecked(
        source: Arc<RightAct>,
        target: Arc<RightAct>,
        map: Vec<usize>,
    ) -> Self {
        ActHom {
            source,
            target,
            map,
        }
    }

    pub fn identity(act: &Arc<RightAct>) -> Self {
        Self::new_unchecked(Arc::clone(act), Arc::clone(act), (0..act.size()).collect())
    }

    /// Inclusion of a subact, from the subact's own act (see
    /// [`Subact::to_act`]).
    pub fn inclusion(sub: &Subact) -> (Arc<RightAct>, ActHom) {
        let (act, embed) = sub.to_act();
        let act = Arc::new(act);
        let f = Self::new_unchecked(Arc::clone(&act), Arc::clone(sub.parent()), embed);
        (act, f)
    }

    pub fn source(&self) -> &Arc<RightAct> {
        &self.source
    }

    pub fn target(&self) -> &Arc<RightAct> {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }

    pub fn is_mono(&self) -> bool {
        let mut hit = vec![false; self.target.size()];
        self.map
            .iter()
            .all(|&x| !std::mem::replace(&mut hit[x], true))
    }

    pub fn is_epi(&self) -> bool {
        let mut hit = vec![false; self.target.size()];
        for &x in &self.map {
            hit[x] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn image(&self) -> ElemSet {
        normalize(self.map.clone())
    }

    /// `self ∘ first` (apply `first`, then `self`).
    pub fn after(&self, first: &ActHom) -> Result<ActHom> {
        if first.target.size() != self.source.size() || *first.target != *self.source {
            return Err(Error::Invalid("maps are not composable".into()));
        }
        Ok(Self::new_unchecked(
            Arc::clone(&first.source),
            Arc::clone(&self.target),
            first.map.iter().map(|&x| self.map[x]).collect(),
        ))
    }
}

/// Elements identified by `f`.
pub fn kernel(f: &ActHom) -> Congruence {
    let mut first: BTreeMap<usize, usize> = BTreeMap::new();
    let rep = f
        .map
        .iter()
        .enumerate()
        .map(|(a, &x)| *first.entry(x).or_insert(a))
        .collect();
    Congruence::from_rep_unchecked(&f.source, rep)
}

/// `K_Im f = (f(A) × f(A)) ∪ Δ` on the target.
pub fn image_congruence(f: &ActHom) -> Congruence {
    let image = f.image();
    let least = image[0];
    let mut rep: Vec<usize> = (0..f.target.size()).collect();
    for &b in &image {
        rep[b] = least;
    }
    Congruence::from_rep_unchecked(&f.target, rep)
}

/// Per-element data preserved by isomorphisms, used to prune the search.
fn signatures(act: &RightAct) -> Vec<(usize, usize, usize)> {
    let n = act.size();
    let m = act.monoid().size();
    let mut indeg = vec![0usize; n];
    for a in 0..n {
        for s in 0..m {
            let b = act.act(a, s);
            if b != a {
                indeg[b] += 1;
            }
        }
    }
    (0..n)
        .map(|a| {
            let fixing = (0..m).filter(|&s| act.act(a, s) == a).count();
            (act.orbit(a).len(), fixing, indeg[a])
        })
        .collect()
}

/// [`signatures`] of the source and of the target.
type Signatures = (Vec<(usize, usize, usize)>, Vec<(usize, usize, usize)>);

struct Search<'a> {
    source: &'a RightAct,
    target: &'a RightAct,
    gens: Vec<usize>,
    injective: bool,
    sig: Option<Signatures>,
    map: Vec<usize>,
    used: Vec<bool>,
}

impl Search<'_> {
    /// Sends generator `g` to `x` and propagates along `gS`, recording new
    /// assignments in `trail`. Returns `false` on a conflict.
    fn assign(&mut self, g: usize, x: usize, trail: &mut Vec<usize>) -> bool {
        let m = self.source.monoid().size();
        for s in 0..m {
            let a = self.source.act(g, s);
            let b = self.target.act(x, s);
            if self.map[a] != usize::MAX {
                if self.map[a] != b {
                    return false;
                }
                continue;
            }
            if self.injective && self.used[b] {
                return false;
            }
            if let Some((sa, sb)) = &self.sig {
                if sa[a] != sb[b] {
                    return false;
                }
            }
            self.map[a] = b;
            if self.injective {
                self.used[b] = true;
            }
            trail.push(a);
        }
        true
    }

    fn undo(&mut self, trail: &[usize]) {
        for &a in trail {
            if self.injective {
                self.used[self.map[a]] = false;
            }
            self.map[a] = usize::MAX;
        }
    }

    /// Visits every completed map; `visit` returns `false` to stop.
    fn run(&mut self, depth: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if depth == self.gens.len() {
            return visit(&self.map);
        }
        let g = self.gens[depth];
        for x in 0..self.target.size() {
            let mut trail = Vec::new();
            let ok = self.assign(g, x, &mut trail);
            if ok && !self.run(depth + 1, visit) {
                self.undo(&trail);
                return false;
            }
            self.undo(&trail);
        }
        true
    }
}

/// Backtracking over images of the act's generators. Images of the rest
/// of the act are forced by equivariance.
fn search_homs(
    source: &RightAct,
    target: &RightAct,
    injective: bool,
    use_signatures: bool,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> Result<()> {
    if !source.same_monoid(target) {
        return Err(Error::MixedMonoids);
    }
    let sig = use_signatures.then(|| (signatures(source), signatures(target)));
    let mut search = Search {
        source,
        target,
        gens: source.generators(),
        injective,
        sig,
        map: vec![usize::MAX; source.size()],
        used: vec![false; target.size()],
    };
    search.run(0, visit);
    Ok(())
}

/// Every homomorphism `A -> B`, maps in lexicographic order.
pub fn enumerate_homs(source: &Arc<RightAct>, target: &Arc<RightAct>) -> Result<Vec<ActHom>> {
    let mut maps: Vec<Vec<usize>> = Vec::new();
    let mut overflow = false;
    search_homs(source, target, false, false, &mut |m| {
        if maps.len() >= HOM_CAP {
            overflow = true;
            return false;
        }
        maps.push(m.to_vec());
        true
    })?;
    if overflow {
        return Err(Error::SizeLimitExceeded(format!(
            "more than {HOM_CAP} homomorphisms"
        )));
    }
    maps.sort();
    Ok(maps
        .into_iter()
        .map(|m| ActHom::new_unchecked(Arc::clone(source), Arc::clone(target), m))
        .collect())
}

/// An isomorphism `A -> B` if one exists.
pub fn find_isomorphism(a: &RightAct, b: &RightAct) -> Result<Option<Vec<usize>>> {
    if !a.same_monoid(b) {
        return Err(Error::MixedMonoids);
    }
    if a.size() != b.size() {
        return Ok(None);
    }
    let (mut sa, mut sb) = (signatures(a), signatures(b));
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return Ok(None);
    }
    let mut found = None;
    search_homs(a, b, true, true, &mut |m| {
        found = Some(m.to_vec());
        false
    })?;
    Ok(found)
}

/// Some epimorphism `A -> S_S` exists (found by enumeration).
pub fn is_generator(act: &RightAct) -> Result<bool> {
    let regular = RightAct::regular(act.monoid());
    let mut found = false;
    search_homs(act, &regular, false, false, &mut |m| {
        let mut hit = vec![false; regular.size()];
        for &x in m {
            hit[x] = true;
        }
        found = hit.into_iter().all(|h| h);
        !found
    })?;
    Ok(found)
}

/// Generator test through retractions: some homomorphism `A -> S_S` hits
/// the identity, and then `s ↦ a·s` splits it for any preimage `a`.
pub fn is_generator_by_retract(act: &RightAct) -> Result<bool> {
    let monoid = act.monoid();
    let regular = RightAct::regular(monoid);
    let e = monoid.identity();
    let mut found = false;
    search_homs(act, &regular, false, false, &mut |m| {
        if let Some(a) = m.iter().position(|&x| x == e) {
            // the section s ↦ a·s composed with m is the identity on S
            debug_assert!((0..monoid.size()).all(|s| m[act.act(a, s)] == s));
            found = true;
        }
        !found
    })?;
    Ok(found)
}

/// `End(A)` under composition, `f·g = f ∘ g` (apply `g` first), elements
/// ordered lexicographically by their maps.
pub fn endomorphism_monoid(act: &Arc<RightAct>) -> Result<(Monoid, Vec<Vec<usize>>)> {
    let maps: Vec<Vec<usize>> = enumerate_homs(act, act)?
        .into_iter()
        .map(|h| h.map)
        .collect();
    let index: BTreeMap<&[usize], usize> = maps
        .iter()
        .enumerate()
        .map(|(i, m)| (m.as_slice(), i))
        .collect();
    let k = maps.len();
    let mut table = Vec::with_capacity(k * k);
    for f in &maps {
        for g in &maps {
            let fg: Vec<usize> = g.iter().map(|&x| f[x]).collect();
            table.push(index[fg.as_slice()]);
        }
    }
    let identity: Vec<usize> = (0..act.size()).collect();
    let id = index[identity.as_slice()];
    Ok((Monoid::from_flat_unchecked(k, table, id), maps))
}

/// Summary of how `Con(A)` changes when scalars are restricted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RestrictionReport {
    pub original_congruences: usize,
    pub restricted_congruences: usize,
    /// Every congruence over the original monoid is one over the new one.
    pub embeds: bool,
    /// The two lattices coincide.
    pub equal: bool,
}

/// `A` over `T` viewed as an act over `S` through `h: S -> T`,
/// `a·s = a·h(s)`.
pub fn restrict_scalars(
    h: &MonoidHom,
    act: &Arc<RightAct>,
) -> Result<(RightAct, RestrictionReport)> {
    if **h.target() != **act.monoid() {
        return Err(Error::MixedMonoids);
    }
    let m = h.source().size();
    let mut table = Vec::with_capacity(act.size() * m);
    for a in 0..act.size() {
        for s in 0..m {
            table.push(act.act(a, h.apply(s)));
        }
    }
    let restricted = Arc::new(RightAct::from_flat_unchecked(
        Arc::clone(h.source()),
        act.size(),
        table,
    ));
    let over_t = all_congruences(act, Method::Saturate)?;
    let over_s = all_congruences(&restricted, Method::Saturate)?;
    let s_reps: std::collections::HashSet<&[usize]> =
        over_s.iter().map(|c| c.representatives()).collect();
    let embeds = over_t.iter().all(|c| s_reps.contains(c.representatives()));
    let report = RestrictionReport {
        original_congruences: over_t.len(),
        restricted_congruences: over_s.len(),
        embeds,
        equal: embeds && over_t.len() == over_s.len(),
    };
    Ok((Arc::unwrap_or_clone(restricted), report))
}

/// The principal right ideals `fT` of a monoid ordered by inclusion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RightIdealPoset {
    /// `fT` for every element `f`.
    pub ideals: Vec<ElemSet>,
    /// Elements grouped by equal principal right ideal, groups ordered by
    /// least element.
    pub classes: Vec<ElemSet>,
    /// `(i, j)` when `classes[i]`'s ideal is strictly inside `classes[j]`'s.
    pub below: Vec<(usize, usize)>,
}

impl RightIdealPoset {
    /// Hasse diagram over the classes.
    pub fn to_dot(&self) -> String {
        let labels: Vec<String> = self
            .classes
            .iter()
            .map(|c| crate::sets::format_set(c))
            .collect();
        let below = &self.below;
        crate::dot::hasse_diagram("principal_right_ideals", &labels, |i, j| {
            i == j || below.contains(&(i, j))
        })
    }
}

pub fn principal_right_ideal_poset(t: &Monoid) -> RightIdealPoset {
    let ideals: Vec<ElemSet> = (0..t.size()).map(|f| t.principal_right_ideal(f)).collect();
    let mut by_ideal: BTreeMap<&ElemSet, Vec<usize>> = BTreeMap::new();
    for (f, i) in ideals.iter().enumerate() {
        by_ideal.entry(i).or_default().push(f);
    }
    let mut classes: Vec<ElemSet> = by_ideal.into_values().collect();
    classes.sort();
    let mut below = Vec::new();
    for i in 0..classes.len() {
        for j in 0..classes.len() {
            let (a, b) = (&ideals[classes[i][0]], &ideals[classes[j][0]]);
            if i != j && is_subset(a, b) {
                below.push((i, j));
            }
        }
    }
    RightIdealPoset {
        ideals,
        classes,
        below,
    }
}

/// Whether some `h ∈ End(A)` satisfies `f = g ∘ h`. With
/// `assume_projective` the act is first checked to be projective.
pub fn projective_lifting_check(
    act: &Arc<RightAct>,
    f: &[usize],
    g: &[usize],
    assume_projective: bool,
) -> Result<bool> {
    ActHom::new(Arc::clone(act), Arc::clone(act), f.to_vec())?;
    ActHom::new(Arc::clone(act), Arc::clone(act), g.to_vec())?;
    if assume_projective && !crate::act::is_projective(act)? {
        return Err(Error::NotProjective);
    }
    let mut found = false;
    search_homs(act, act, false, false, &mut |h| {
        found = h.iter().zip(f).all(|(&x, &fx)| g[x] == fx);
        !found
    })?;
    Ok(found)
}
