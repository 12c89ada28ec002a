use crate::equidist::is_difference_set_in;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::scheme::thin_scheme;

/// Largest `C(v, k)` the brute-force enumerator accepts.
pub const BRUTE_FORCE_LIMIT: u64 = 10_000_000;

fn binomial(n: u64, k: u64) -> Option<u64> {
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc.checked_mul(n - i)? / (i + 1);
    }
    Some(acc)
}

/// Every `k`-subset of `G` that is a difference set, each sorted, in
/// lexicographic order.
pub fn brute_force_difference_sets(group: &FiniteGroup, k: usize) -> Result<Vec<Vec<usize>>> {
    let v = group.order();
    if k > v {
        return Ok(Vec::new());
    }
    match binomial(v as u64, k as u64) {
        Some(n) if n <= BRUTE_FORCE_LIMIT => {}
        _ => {
            return Err(Error::Resource(format!(
                "C({v}, {k}) exceeds the brute-force limit of {BRUTE_FORCE_LIMIT}"
            )))
        }
    }
    let thin = thin_scheme(group);
    let mut found = Vec::new();
    let mut set: Vec<usize> = (0..k).collect();
    loop {
        if is_difference_set_in(&thin, &set)?.is_some() {
            found.push(set.clone());
        }
        // Advance to the next combination.
        let Some(i) = (0..k).rev().find(|&i| set[i] < v - k + i) else {
            break;
        };
        set[i] += 1;
        for j in i + 1..k {
            set[j] = set[j - 1] + 1;
        }
    }
    Ok(found)
}

/// Whether `points` integers in `[0, cap]` can sum to `total` with squares
/// summing to `squares`. `None` when the table would need more than
/// `work_cap` word operations.
pub fn variance_feasible(points: usize, total: u64, squares: u64, cap: u64, work_cap: u64) -> Option<bool> {
    let cap = cap.min(total);
    if squares > total.saturating_mul(cap) || squares < total {
        // Σx² ≤ cap·Σx, and Σx² ≥ Σx for nonnegative integers.
        return Some(cap == 0 && total == 0 && squares == 0);
    }
    let words = (squares as usize) / 64 + 1;
    let work = (points as u64)
        .saturating_mul(total + 1)
        .saturating_mul(cap + 1)
        .saturating_mul(words as u64);
    if work > work_cap {
        return None;
    }
    let (total, cap) = (total as usize, cap as usize);
    // reach[s] is the bitset of square sums reachable with mass s.
    let mut reach = vec![vec![0u64; words]; total + 1];
    reach[0][0] = 1;
    for _ in 0..points {
        let mut next = reach.clone();
        for s in 0..=total {
            if reach[s].iter().all(|&w| w == 0) {
                continue;
            }
            for c in 1..=cap.min(total - s) {
                let shift = c * c;
                if shift > squares as usize {
                    break;
                }
                or_shifted(&mut next[s + c], &reach[s], shift);
            }
        }
        if next == reach {
            break;
        }
        reach = next;
    }
    let q = squares as usize;
    Some(reach[total][q / 64] >> (q % 64) & 1 == 1)
}

fn or_shifted(dst: &mut [u64], src: &[u64], shift: usize) {
    let (words, bits) = (shift / 64, shift % 64);
    for i in (words..dst.len()).rev() {
        let j = i - words;
        let mut w = src[j] << bits;
        if bits > 0 && j > 0 {
            w |= src[j - 1] >> (64 - bits);
        }
        dst[i] |= w;
    }
}
