//! Depth-first enumeration of the lifts of one parent function.
//!
//! Points are visited fiber by fiber (fibers with the smallest parent value
//! first). Three bounds prune a partial assignment:
//!
//! * each fiber must still be able to reach its parent value under the cap;
//! * the running `Σ g²` plus the least and greatest amounts the unassigned
//!   points can still add must bracket the target;
//! * the per-color pair products only grow, so none may exceed its target.
//!
//! The targets satisfy `Σ_j target_j = k²`, and every complete assignment
//! has `Σ_j dot_j = k²`, so an assignment that never overshoots a color is
//! exactly equi-distributed.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use crate::equidist::MultiFunction;
use crate::scheme::RelationPartition;

/// Shared node counter; `None` budget means unlimited.
#[derive(Debug, Default)]
pub(crate) struct Budget {
    limit: Option<u64>,
    used: AtomicU64,
    exhausted: AtomicBool,
}

const FLUSH: u64 = 1 << 12;

impl Budget {
    pub(crate) fn new(limit: Option<u64>) -> Self {
        Budget { limit, used: AtomicU64::new(0), exhausted: AtomicBool::new(false) }
    }

    pub(crate) fn used(&self) -> u64 {
        self.used.load(Ordering::Relaxed)
    }

    pub(crate) fn is_exhausted(&self) -> bool {
        self.exhausted.load(Ordering::Relaxed)
    }

    /// Adds `n` nodes; returns false once the budget is gone.
    fn charge(&self, n: u64) -> bool {
        let total = self.used.fetch_add(n, Ordering::Relaxed) + n;
        if let Some(limit) = self.limit {
            if total > limit {
                self.exhausted.store(true, Ordering::Relaxed);
            }
        }
        !self.is_exhausted()
    }
}

/// Per-level data shared by every parent's backtracker.
pub(crate) struct LiftPlan<'a> {
    pub scheme: &'a RelationPartition,
    pub fibers: &'a [Vec<usize>],
    /// Required `(A_j g, g)` per color, unit color included.
    pub targets: Vec<i64>,
    pub cap: u32,
}

struct Search<'a, 'b> {
    plan: &'b LiftPlan<'a>,
    order: Vec<usize>,
    fiber_at: Vec<usize>,
    last_in_fiber: Vec<bool>,
    remaining: Vec<u32>,
    left: Vec<u32>,
    min_sq: Vec<i64>,
    max_sq: Vec<i64>,
    min_rest: i64,
    max_rest: i64,
    sum_sq: i64,
    unit: usize,
    values: Vec<u16>,
    assigned: Vec<(usize, i64)>,
    dot: Vec<i64>,
    out: Vec<MultiFunction<u16>>,
    nodes: u64,
    budget: &'b Budget,
    aborted: bool,
}

/// Least `Σ x²` over `m` values in `[0, cap]` summing to `r`.
fn least_squares(r: u32, m: u32) -> i64 {
    if m == 0 {
        return 0;
    }
    let (q, extra) = ((r / m) as i64, (r % m) as i64);
    extra * (q + 1) * (q + 1) + (m as i64 - extra) * q * q
}

/// Greatest `Σ x²` over `m` values in `[0, cap]` summing to `r`.
fn greatest_squares(r: u32, m: u32, cap: u32) -> i64 {
    if m == 0 || cap == 0 {
        return 0;
    }
    let full = (r / cap) as i64;
    let rest = (r % cap) as i64;
    full * (cap as i64).pow(2) + rest * rest
}

/// All lifts of `parent` through `fibers`, in lexicographic order.
/// Returns `None` if the budget ran out.
pub(crate) fn lifts_of(plan: &LiftPlan<'_>, parent: &[u16], budget: &Budget) -> Option<Vec<MultiFunction<u16>>> {
    let points = plan.scheme.points();
    let unit = plan.scheme.unit().expect("tower schemes are unital");
    let mut fiber_ids: Vec<usize> = (0..plan.fibers.len()).filter(|&y| parent[y] > 0).collect();
    fiber_ids.sort_by_key(|&y| (parent[y], y));

    let mut order = Vec::new();
    let mut fiber_at = Vec::new();
    let mut last_in_fiber = Vec::new();
    for &y in &fiber_ids {
        let fiber = &plan.fibers[y];
        if parent[y] as u64 > fiber.len() as u64 * plan.cap as u64 {
            return Some(Vec::new());
        }
        for (i, &x) in fiber.iter().enumerate() {
            order.push(x);
            fiber_at.push(y);
            last_in_fiber.push(i + 1 == fiber.len());
        }
    }
    let remaining: Vec<u32> = parent.iter().map(|&v| v as u32).collect();
    let left: Vec<u32> = plan.fibers.iter().map(|f| f.len() as u32).collect();
    let min_sq: Vec<i64> = (0..plan.fibers.len()).map(|y| least_squares(remaining[y], left[y])).collect();
    let max_sq: Vec<i64> =
        (0..plan.fibers.len()).map(|y| greatest_squares(remaining[y], left[y], plan.cap)).collect();
    let mut search = Search {
        plan,
        min_rest: min_sq.iter().sum(),
        max_rest: max_sq.iter().sum(),
        order,
        fiber_at,
        last_in_fiber,
        remaining,
        left,
        min_sq,
        max_sq,
        sum_sq: 0,
        unit,
        values: vec![0; points],
        assigned: Vec::new(),
        dot: vec![0; plan.scheme.colors()],
        out: Vec::new(),
        nodes: 0,
        budget,
        aborted: false,
    };
    let target = plan.targets[unit];
    if search.min_rest > target || search.max_rest < target {
        return Some(Vec::new());
    }
    search.descend(0);
    budget.charge(search.nodes);
    if search.aborted {
        return None;
    }
    search.out.sort();
    Some(search.out)
}

impl Search<'_, '_> {
    fn descend(&mut self, pos: usize) {
        if pos == self.order.len() {
            self.out.push(MultiFunction::new(self.values.clone()));
            return;
        }
        let x = self.order[pos];
        let y = self.fiber_at[pos];
        let r = self.remaining[y];
        let m = self.left[y];
        let cap = self.plan.cap;
        let (lo, hi) = if self.last_in_fiber[pos] {
            (r, r)
        } else {
            (r.saturating_sub((m - 1) * cap), r.min(cap))
        };
        if hi > cap {
            return;
        }
        let target_sq = self.plan.targets[self.unit];
        let (old_min, old_max) = (self.min_sq[y], self.max_sq[y]);
        for c in lo..=hi {
            self.nodes += 1;
            if self.nodes >= FLUSH {
                if !self.budget.charge(self.nodes) {
                    self.aborted = true;
                }
                self.nodes = 0;
            }
            if self.aborted {
                return;
            }
            let new_min = least_squares(r - c, m - 1);
            let new_max = greatest_squares(r - c, m - 1, cap);
            let c2 = (c as i64) * (c as i64);
            let sum_sq = self.sum_sq + c2;
            let min_total = sum_sq + self.min_rest - old_min + new_min;
            let max_total = sum_sq + self.max_rest - old_max + new_max;
            if min_total > target_sq {
                // Past the even split, larger c only raises the least total.
                if c as u64 * m as u64 >= r as u64 {
                    break;
                }
                continue;
            }
            if max_total < target_sq {
                continue;
            }
            if c > 0 && !self.add_point(x, c as i64) {
                self.remove_point(x, c as i64);
                continue;
            }
            self.values[x] = c as u16;
            self.remaining[y] = r - c;
            self.left[y] = m - 1;
            self.min_sq[y] = new_min;
            self.max_sq[y] = new_max;
            self.min_rest += new_min - old_min;
            self.max_rest += new_max - old_max;
            self.sum_sq = sum_sq;
            if c > 0 {
                self.assigned.push((x, c as i64));
            }

            self.descend(pos + 1);

            if c > 0 {
                self.assigned.pop();
                self.remove_point(x, c as i64);
            }
            self.sum_sq -= c2;
            self.min_rest -= new_min - old_min;
            self.max_rest -= new_max - old_max;
            self.min_sq[y] = old_min;
            self.max_sq[y] = old_max;
            self.left[y] = m;
            self.remaining[y] = r;
            self.values[x] = 0;
            if self.aborted {
                return;
            }
        }
    }

    /// Adds the pair products of `x` (value `c`) with every assigned point.
    /// Returns false if some color overshoots; the caller undoes either way.
    fn add_point(&mut self, x: usize, c: i64) -> bool {
        let row = self.plan.scheme.row(x);
        let table = self.plan.scheme.table();
        let points = self.plan.scheme.points();
        let mut ok = true;
        self.dot[self.unit] += c * c;
        ok &= self.dot[self.unit] <= self.plan.targets[self.unit];
        for &(x2, c2) in &self.assigned {
            let w = c * c2;
            let a = row[x2] as usize;
            let b = table[x2 * points + x] as usize;
            self.dot[a] += w;
            self.dot[b] += w;
            ok &= self.dot[a] <= self.plan.targets[a] && self.dot[b] <= self.plan.targets[b];
        }
        ok
    }

    fn remove_point(&mut self, x: usize, c: i64) {
        let row = self.plan.scheme.row(x);
        let table = self.plan.scheme.table();
        let points = self.plan.scheme.points();
        self.dot[self.unit] -= c * c;
        for &(x2, c2) in &self.assigned {
            let w = c * c2;
            self.dot[row[x2] as usize] -= w;
            self.dot[table[x2 * points + x] as usize] -= w;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_bounds() {
        assert_eq!(least_squares(8, 3), 9 + 9 + 4);
        assert_eq!(greatest_squares(8, 3, 8), 64);
        assert_eq!(greatest_squares(8, 3, 3), 9 + 9 + 4);
        assert_eq!(least_squares(0, 0), 0);
    }

    #[test]
    fn budget_trips() {
        let b = Budget::new(Some(10));
        assert!(b.charge(5));
        assert!(!b.charge(6));
        assert!(b.is_exhausted());
        let unlimited = Budget::new(None);
        assert!(unlimited.charge(u64::MAX / 2));
    }
}
