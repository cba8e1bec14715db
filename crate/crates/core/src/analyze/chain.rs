//! Chain statistics for finite posets of congruences or subacts.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::act::{all_subacts, RightAct, Subact};
use crate::congruence::{all_congruences, Congruence, Method};
use crate::error::{Error, Result};
use crate::monoid::Monoid;
use crate::sets::format_set;

/// Something ordered by inclusion with a stable printable name.
pub trait Included {
    fn included_in(&self, other: &Self) -> bool;
    fn label(&self) -> String;
}

impl Included for Congruence {
    fn included_in(&self, other: &Self) -> bool {
        self.is_subset_of(other)
    }

    fn label(&self) -> String {
        self.to_string()
    }
}

impl Included for Subact {
    fn included_in(&self, other: &Self) -> bool {
        self.is_subset_of(other)
    }

    fn label(&self) -> String {
        format_set(self.elements())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeReport {
    pub element_count: usize,
    /// Number of elements on a longest chain.
    pub height: usize,
    pub minimal_elements: Vec<String>,
    pub maximal_elements: Vec<String>,
    /// A longest chain, bottom first.
    pub longest_chain: Vec<String>,
}

/// Extrema and a longest chain, by dynamic programming over the inclusion
/// order. Elements are processed by the number of elements strictly below
/// them, which is a linear extension.
pub fn chain_report<T: Included>(items: &[T]) -> Result<LatticeReport> {
    if items.is_empty() {
        return Err(Error::EmptySet);
    }
    let n = items.len();
    let lt = |i: usize, j: usize| {
        i != j && items[i].included_in(&items[j]) && !items[j].included_in(&items[i])
    };
    let below: Vec<Vec<usize>> = (0..n)
        .map(|j| (0..n).filter(|&i| lt(i, j)).collect())
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (below[i].len(), i));

    let mut best = vec![1usize; n];
    let mut prev = vec![usize::MAX; n];
    for &j in &order {
        for &i in &below[j] {
            if best[i] + 1 > best[j] {
                best[j] = best[i] + 1;
                prev[j] = i;
            }
        }
    }
    let top = (0..n)
        .max_by_key(|&i| (best[i], std::cmp::Reverse(i)))
        .unwrap();
    let mut chain = vec![top];
    while prev[*chain.last().unwrap()] != usize::MAX {
        chain.push(prev[*chain.last().unwrap()]);
    }
    chain.reverse();

    let minimal = (0..n)
        .filter(|&i| below[i].is_empty())
        .map(|i| items[i].label())
        .collect();
    let maximal = (0..n)
        .filter(|&i| !(0..n).any(|j| lt(i, j)))
        .map(|i| items[i].label())
        .collect();
    Ok(LatticeReport {
        element_count: n,
        height: best[top],
        minimal_elements: minimal,
        maximal_elements: maximal,
        longest_chain: chain.into_iter().map(|i| items[i].label()).collect(),
    })
}

/// Hasse diagram of a congruence or subact poset.
pub fn lattice_dot<T: Included>(name: &str, items: &[T]) -> String {
    let labels: Vec<String> = items.iter().map(Included::label).collect();
    crate::dot::hasse_diagram(name, &labels, |i, j| items[i].included_in(&items[j]))
}

/// `K = {1..n}` as an act over `{1..n}` under `min` with an identity
/// adjoined. Element `i - 1` of the act stands for the integer `i`.
pub fn min_family_act(n: usize) -> (Arc<Monoid>, Arc<RightAct>) {
    let s = Arc::new(Monoid::min_with_identity(n));
    let reg = Arc::new(RightAct::regular(&s));
    let k = Subact::new(&reg, (1..=n).collect()).expect("non-identity elements form an ideal");
    (s, Arc::new(k.to_act().0))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncationRow {
    pub n: usize,
    pub subacts: LatticeReport,
    /// Every pair of subacts is comparable.
    pub subacts_form_chain: bool,
    pub congruence_count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncationReport {
    pub rows: Vec<TruncationRow>,
    pub note: String,
}

/// Subact and congruence lattices of `K` over the `min` monoids `1..=n_max`.
pub fn truncation_family_report(n_max: usize) -> Result<TruncationReport> {
    if n_max == 0 {
        return Err(Error::Invalid("n_max must be at least 1".into()));
    }
    let mut rows = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let (_, k) = min_family_act(n);
        let subs = all_subacts(&k)?;
        let report = chain_report(&subs)?;
        let congruence_count = all_congruences(&k, Method::Saturate)?.len();
        rows.push(TruncationRow {
            n,
            subacts_form_chain: report.height == report.element_count,
            subacts: report,
            congruence_count,
        });
    }
    Ok(TruncationReport {
        rows,
        note: "finite truncations only: the subact chain grows by one with each n; \
               no statement about the infinite act is asserted"
            .into(),
    })
}
