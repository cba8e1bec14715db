//! Seeded random monoids and acts.
//!
//! All randomness comes from a ChaCha stream seeded explicitly, so a seed
//! reproduces the same instance on every platform.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::act::{coproduct, CoproductMode, RightAct};
use crate::congruence::{all_congruences, Method};
use crate::error::{Error, Result};
use crate::monoid::Monoid;

/// Attempts before random generation gives up.
pub const MAX_ATTEMPTS: usize = 2_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RandomConfig {
    pub seed: u64,
    /// Monoids: degree of the random transformations. Acts: carrier size.
    pub size: usize,
    #[serde(default)]
    pub commutative: bool,
    #[serde(default)]
    pub with_zero: bool,
    /// Transformation degree of the monoid an act is built over.
    #[serde(default = "default_monoid_degree")]
    pub monoid_degree: usize,
    /// Reject monoids with more elements than this.
    #[serde(default = "default_max_monoid")]
    pub max_monoid: usize,
}

fn default_monoid_degree() -> usize {
    3
}

fn default_max_monoid() -> usize {
    12
}

impl RandomConfig {
    pub fn new(seed: u64, size: usize) -> Self {
        RandomConfig {
            seed,
            size,
            commutative: false,
            with_zero: false,
            monoid_degree: default_monoid_degree(),
            max_monoid: default_max_monoid(),
        }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_map(rng: &mut impl Rng, n: usize) -> Vec<usize> {
    (0..n).map(|_| rng.gen_range(0..n)).collect()
}

/// Closure of one to three random transformations of degree `degree`,
/// resampled until it satisfies the filters.
pub fn random_monoid_with(
    rng: &mut impl Rng,
    degree: usize,
    commutative: bool,
    with_zero: bool,
    max_size: usize,
) -> Result<Monoid> {
    if degree == 0 {
        return Err(Error::Invalid("degree must be positive".into()));
    }
    for _ in 0..MAX_ATTEMPTS {
        let count = rng.gen_range(1..=3);
        let gens: Vec<Vec<usize>> = (0..count).map(|_| random_map(rng, degree)).collect();
        let Ok((m, _)) = Monoid::from_transformations(degree, &gens, max_size) else {
            continue;
        };
        if commutative && !m.is_commutative() {
            continue;
        }
        if with_zero && m.zero().is_none() {
            continue;
        }
        return Ok(m);
    }
    Err(Error::SizeLimitExceeded(format!(
        "no monoid matching the filters after {MAX_ATTEMPTS} attempts"
    )))
}

pub fn random_monoid(config: &RandomConfig) -> Result<Monoid> {
    random_monoid_with(
        &mut rng(config.seed),
        config.size,
        config.commutative,
        config.with_zero,
        config.max_monoid,
    )
}

/// Generators of a monoid chosen greedily, with a spanning tree expressing
/// every element as `parent * generator`.
fn spanning_tree(m: &Monoid) -> (Vec<usize>, Vec<Option<(usize, usize)>>) {
    let n = m.size();
    let mut gens = Vec::new();
    let mut reached = vec![false; n];
    let mut tree: Vec<Option<(usize, usize)>> = vec![None; n];
    reached[m.identity()] = true;
    loop {
        // breadth-first closure under the current generators
        let mut frontier: Vec<usize> = (0..n).filter(|&x| reached[x]).collect();
        while let Some(x) = frontier.pop() {
            for (gi, &g) in gens.iter().enumerate() {
                let y = m.mul(x, g);
                if !reached[y] {
                    reached[y] = true;
                    tree[y] = Some((x, gi));
                    frontier.push(y);
                }
            }
        }
        match (0..n).find(|&x| !reached[x]) {
            None => break,
            Some(g) => {
                tree[g] = Some((m.identity(), gens.len()));
                reached[g] = true;
                gens.push(g);
            }
        }
    }
    (gens, tree)
}

/// Random act of `size` elements over `monoid`.
///
/// Generators of the monoid get random transformations, the rest of the
/// table follows the spanning tree, and tables that violate associativity
/// are rejected. After repeated rejection the act is assembled instead
/// as a coproduct of random cyclic quotients of `S_S` padded with fixed
/// points.
pub fn random_act_with(
    rng: &mut impl Rng,
    monoid: &Arc<Monoid>,
    size: usize,
    with_zero: bool,
) -> Result<RightAct> {
    if size == 0 {
        return Err(Error::Invalid("act size must be positive".into()));
    }
    if with_zero && monoid.zero().is_none() {
        return Err(Error::MissingZero);
    }
    let (gens, tree) = spanning_tree(monoid);
    let m = monoid.size();
    let mut order: Vec<usize> = Vec::with_capacity(m);
    {
        // parents before children
        let mut done = vec![false; m];
        done[monoid.identity()] = true;
        order.push(monoid.identity());
        while order.len() < m {
            for x in 0..m {
                if !done[x] {
                    if let Some((p, _)) = tree[x] {
                        if done[p] {
                            done[x] = true;
                            order.push(x);
                        }
                    }
                }
            }
        }
    }
    for _ in 0..64 {
        let images: Vec<Vec<usize>> = gens.iter().map(|_| random_map(rng, size)).collect();
        let mut table = vec![0usize; size * m];
        for &x in &order {
            for a in 0..size {
                table[a * m + x] = match tree[x] {
                    None => a,
                    Some((p, gi)) => images[gi][table[a * m + p]],
                };
            }
        }
        if let Ok(act) = RightAct::from_flat(Arc::clone(monoid), size, table) {
            if !with_zero || act.zero().is_some() {
                return Ok(act);
            }
        }
    }
    // fallback: coproduct of cyclic acts
    let regular = Arc::new(RightAct::regular(monoid));
    let pool: Vec<Arc<RightAct>> = all_congruences(&regular, Method::Saturate)?
        .iter()
        .map(|c| c.quotient().0)
        .filter(|q| q.size() <= size && (!with_zero || q.zero().is_some()))
        .collect();
    if with_zero && size > 1 && pool.iter().all(|q| q.size() == 1) {
        return Err(Error::Invalid(
            "the only act with a zero over this monoid is the one-point act".into(),
        ));
    }
    for _ in 0..MAX_ATTEMPTS {
        let mut parts: Vec<Arc<RightAct>> = Vec::new();
        let mut total = 0;
        while total < size {
            let pick = &pool[rng.gen_range(0..pool.len())];
            // later summands share their zero with the first
            let add = if with_zero && !parts.is_empty() {
                pick.size() - 1
            } else {
                pick.size()
            };
            if add == 0 || total + add > size {
                break;
            }
            total += add;
            parts.push(Arc::clone(pick));
        }
        let mut refs: Vec<&RightAct> = parts.iter().map(|p| p.as_ref()).collect();
        if with_zero {
            if total == size {
                return coproduct(&refs, CoproductMode::ZeroAmalgamated);
            }
            continue;
        }
        let pad;
        if size > total {
            pad = RightAct::trivial(monoid, size - total);
            refs.push(&pad);
        }
        return coproduct(&refs, CoproductMode::Plain);
    }
    Err(Error::SizeLimitExceeded(format!(
        "no act of size {size} with a zero after {MAX_ATTEMPTS} attempts"
    )))
}

/// Random act over a random monoid: the monoid comes from the
/// `monoid_degree`/`commutative`/`with_zero` filters, the act from `size`.
pub fn random_act(config: &RandomConfig) -> Result<(Monoid, RightAct)> {
    let mut r = rng(config.seed);
    let monoid = Arc::new(random_monoid_with(
        &mut r,
        config.monoid_degree,
        config.commutative,
        config.with_zero,
        config.max_monoid,
    )?);
    let act = random_act_with(&mut r, &monoid, config.size, config.with_zero)?;
    Ok(((*monoid).clone(), act))
}
