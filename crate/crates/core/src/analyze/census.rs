//! All monoids of order at most 4, up to isomorphism.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::monoid::Monoid;

/// Largest order the brute-force census handles.
pub const CENSUS_MAX: usize = 4;

/// Relabels a table (identity at 0) by a permutation of the other elements
/// and returns the flat result.
fn relabel(n: usize, table: &[usize], perm: &[usize]) -> Vec<usize> {
    let mut out = vec![0; n * n];
    for s in 0..n {
        for t in 0..n {
            out[perm[s] * n + perm[t]] = perm[table[s * n + t]];
        }
    }
    out
}

fn permutations_fixing_zero(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, rest: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..rest.len() {
            let x = rest.remove(i);
            prefix.push(x);
            go(prefix, rest, out);
            prefix.pop();
            rest.insert(i, x);
        }
    }
    let mut out = Vec::new();
    go(&mut vec![0], &mut (1..n).collect(), &mut out);
    out
}

/// The lexicographically least relabelling fixing the identity.
pub fn canonical_table(m: &Monoid) -> Vec<usize> {
    let n = m.size();
    // move the identity to index 0 first
    let mut to_front: Vec<usize> = (0..n).collect();
    to_front.swap(0, m.identity());
    let mut inverse = vec![0; n];
    for (i, &x) in to_front.iter().enumerate() {
        inverse[x] = i;
    }
    let base = relabel(n, m.flat_table(), &inverse);
    permutations_fixing_zero(n)
        .iter()
        .map(|p| relabel(n, &base, p))
        .min()
        .expect("at least the identity permutation")
}

/// Every monoid of order `n` up to isomorphism, identity at index 0,
/// each in canonical form, sorted by table.
pub fn monoids_of_order(n: usize) -> Result<Vec<Monoid>> {
    if n == 0 || n > CENSUS_MAX {
        return Err(Error::SizeLimitExceeded(format!(
            "census covers orders 1..={CENSUS_MAX}"
        )));
    }
    let free: Vec<(usize, usize)> = (1..n).flat_map(|s| (1..n).map(move |t| (s, t))).collect();
    let perms = permutations_fixing_zero(n);
    let mut table = vec![0usize; n * n];
    for x in 0..n {
        table[x] = x;
        table[x * n] = x;
    }
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    let total = n.pow(free.len() as u32);
    for code in 0..total {
        let mut c = code;
        for &(s, t) in &free {
            table[s * n + t] = c % n;
            c /= n;
        }
        let assoc = (0..n).all(|s| {
            (0..n).all(|t| {
                let st = table[s * n + t];
                (0..n).all(|u| table[st * n + u] == table[s * n + table[t * n + u]])
            })
        });
        if !assoc {
            continue;
        }
        let canon = perms.iter().map(|p| relabel(n, &table, p)).min().unwrap();
        found.insert(canon);
    }
    Ok(found
        .into_iter()
        .map(|t| Monoid::from_flat_unchecked(n, t, 0))
        .collect())
}

/// The census for every order up to `max`.
pub fn census(max: usize) -> Result<Vec<Monoid>> {
    let mut out = Vec::new();
    for n in 1..=max.min(CENSUS_MAX) {
        out.extend(monoids_of_order(n)?);
    }
    Ok(out)
}
