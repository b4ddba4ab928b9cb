//! Candidate decompositions compatible with coarse invariants.

use std::collections::BTreeMap;

use crate::gridmodule::DimTable;
use crate::m2algebra::{Bidegree, Decomposition, StandardSummand};

/// All multisets of `size` elements drawn from `items` (by index order).
fn multisets<T: Clone>(items: &[T], size: usize) -> Vec<Vec<T>> {
    fn go<T: Clone>(items: &[T], from: usize, left: usize, cur: &mut Vec<T>, out: &mut Vec<Vec<T>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in from..items.len() {
            cur.push(items[i].clone());
            go(items, i, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(items, 0, size, &mut Vec::new(), &mut out);
    out
}

/// Free generator multisets in the triangle 0 ≤ q ≤ p ≤ m. With a fixed-set
/// marginal, exactly `marginal[k]` generators have p − q = k.
pub fn free_parts(m: usize, count: usize, marginal: Option<&[usize]>) -> Vec<Vec<(i64, i64)>> {
    let m = m as i64;
    match marginal {
        None => {
            let cells: Vec<(i64, i64)> = (0..=m).flat_map(|p| (0..=p).map(move |q| (p, q))).collect();
            multisets(&cells, count)
        }
        Some(marginal) => {
            if marginal.iter().sum::<usize>() != count
                || marginal.iter().enumerate().any(|(k, &n)| n > 0 && k as i64 > m)
            {
                return Vec::new();
            }
            let mut acc: Vec<Vec<(i64, i64)>> = vec![Vec::new()];
            for (k, &n) in marginal.iter().enumerate() {
                let k = k as i64;
                let cells: Vec<(i64, i64)> = (k..=m).map(|p| (p, p - k)).collect();
                let choices = multisets(&cells, n);
                acc = acc
                    .iter()
                    .flat_map(|a| {
                        choices.iter().map(move |c| {
                            let mut v = a.clone();
                            v.extend_from_slice(c);
                            v
                        })
                    })
                    .collect();
            }
            acc
        }
    }
}

/// Multisets of intervals [r, r+n] ⊆ [0, len) whose pointwise coverage is
/// `coverage`. Built column by column: at each column some open intervals
/// continue while the rest end, and new ones start to make up the count.
pub fn strip_partitions(coverage: &[usize]) -> Vec<Vec<(i64, u32)>> {
    fn go(coverage: &[usize], p: usize, open: Vec<i64>, done: &mut Vec<(i64, u32)>, out: &mut Vec<Vec<(i64, u32)>>) {
        if p == coverage.len() {
            let start = done.len();
            for &r in &open {
                done.push((r, (p as i64 - 1 - r) as u32));
            }
            let mut v = done.clone();
            v.sort();
            out.push(v);
            done.truncate(start);
            return;
        }
        // open intervals grouped by start; choose how many of each continue
        let mut groups: BTreeMap<i64, usize> = BTreeMap::new();
        for &r in &open {
            *groups.entry(r).or_default() += 1;
        }
        let groups: Vec<(i64, usize)> = groups.into_iter().collect();
        let mut counts = vec![0usize; groups.len()];
        loop {
            let continuing: usize = counts.iter().sum();
            if continuing <= coverage[p] {
                let start = done.len();
                let mut next = Vec::new();
                for (g, &(r, total)) in groups.iter().enumerate() {
                    next.extend(std::iter::repeat_n(r, counts[g]));
                    for _ in counts[g]..total {
                        done.push((r, (p as i64 - 1 - r) as u32));
                    }
                }
                next.extend(std::iter::repeat_n(p as i64, coverage[p] - continuing));
                go(coverage, p + 1, next, done, out);
                done.truncate(start);
            }
            // odometer over the per-group counts
            let mut i = 0;
            loop {
                if i == groups.len() {
                    return;
                }
                if counts[i] < groups[i].1 {
                    counts[i] += 1;
                    break;
                }
                counts[i] = 0;
                i += 1;
            }
        }
    }
    let mut out = Vec::new();
    go(coverage, 0, Vec::new(), &mut Vec::new(), &mut out);
    out.sort();
    out.dedup();
    out
}

/// Every decomposition whose free part is one of `frees` and whose strips
/// fill the remaining coverage of row m+1.
pub fn candidates(table: &DimTable, m: usize, frees: &[Vec<(i64, i64)>]) -> Vec<Decomposition> {
    let row = m as i64 + 1;
    let mut out = Vec::new();
    for free in frees {
        // row m+1 sees every free cone from its generator's column up to m
        let mut coverage = Vec::with_capacity(m + 1);
        let mut ok = true;
        for p in 0..=m as i64 {
            let below = free.iter().filter(|g| g.0 <= p).count() as i64;
            let s = table.get(Bidegree::new(p, row)) as i64 - below;
            if s < 0 {
                ok = false;
                break;
            }
            coverage.push(s as usize);
        }
        if !ok {
            continue;
        }
        for strips in strip_partitions(&coverage) {
            let mut summands: Vec<StandardSummand> = free.iter().map(|&(p, q)| StandardSummand::free(p, q)).collect();
            summands.extend(strips.iter().map(|&(r, n)| StandardSummand::antipodal(r, n)));
            out.push(Decomposition::new(summands));
        }
    }
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partitions_of_a_flat_strip() {
        // width-3 coverage 1,1,1: compositions of 3
        assert_eq!(strip_partitions(&[1, 1, 1]).len(), 4);
        assert_eq!(strip_partitions(&[0, 0]), vec![vec![]]);
    }

    #[test]
    fn partitions_with_overlap() {
        let got = strip_partitions(&[1, 2, 1]);
        assert!(got.contains(&vec![(0, 1), (1, 1)]));
        assert!(got.contains(&vec![(0, 2), (1, 0)]));
        // every result covers exactly
        for parts in &got {
            let mut cov = [0usize; 3];
            for &(r, n) in parts {
                for c in cov.iter_mut().skip(r as usize).take(n as usize + 1) {
                    *c += 1;
                }
            }
            assert_eq!(cov, [1, 2, 1]);
        }
    }

    #[test]
    fn free_parts_respect_marginal() {
        let parts = free_parts(2, 2, Some(&[1, 1, 0]));
        // k=0: p ∈ {0,1,2}; k=1: p ∈ {1,2}
        assert_eq!(parts.len(), 6);
        assert!(free_parts(2, 3, Some(&[1, 1, 0])).is_empty());
        assert_eq!(free_parts(1, 1, None).len(), 3);
    }
}
