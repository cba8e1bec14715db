//! Small helpers for sorted element sets.

/// A sorted, duplicate-free list of element indices.
pub type ElemSet = Vec<usize>;

/// Sorts by size, then lexicographically.
pub fn canonical_sort(sets: &mut [ElemSet]) {
    sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
}

/// Subset test for sorted sets.
pub fn is_subset(small: &[usize], big: &[usize]) -> bool {
    let mut it = big.iter();
    small.iter().all(|x| it.by_ref().any(|y| y == x))
}

pub fn normalize(mut set: Vec<usize>) -> ElemSet {
    set.sort_unstable();
    set.dedup();
    set
}

pub fn intersect(a: &[usize], b: &[usize]) -> ElemSet {
    a.iter()
        .copied()
        .filter(|x| b.binary_search(x).is_ok())
        .collect()
}

pub fn format_set(set: &[usize]) -> String {
    let parts: Vec<String> = set.iter().map(usize::to_string).collect();
    format!("{{{}}}", parts.join(","))
}
