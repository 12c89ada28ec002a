//! Relation partitions, Schurian schemes and quotient morphisms.
//!
//! A relation partition colors every ordered pair of points. The color
//! table is stored densely; unitality and regularity are computed once at
//! construction.

use std::sync::Arc;

use crate::error::{arg, Result};
use crate::group::{double_cosets, left_cosets, FiniteGroup, Subgroup};

/// Largest number of colors a partition may use.
pub const MAX_COLORS: usize = u16::MAX as usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationPartition {
    points: usize,
    colors: usize,
    color_of: Vec<u16>,
    unit: Option<usize>,
    rel_size: Vec<usize>,
    valency: Option<Vec<usize>>,
}

impl RelationPartition {
    /// Builds a partition from a row-major `points × points` color table.
    /// Colors must be exactly `0..colors` with every color used.
    pub fn from_table(points: usize, table: &[usize]) -> Result<Self> {
        if points == 0 {
            return arg("a relation partition needs at least one point");
        }
        if table.len() != points * points {
            return arg(format!("color table has {} entries, expected {}", table.len(), points * points));
        }
        let colors = table.iter().max().map_or(0, |&m| m + 1);
        if colors > MAX_COLORS {
            return arg(format!("{colors} colors exceed the cap of {MAX_COLORS}"));
        }
        let mut rel_size = vec![0usize; colors];
        for &c in table {
            rel_size[c] += 1;
        }
        if let Some(c) = rel_size.iter().position(|&n| n == 0) {
            return arg(format!("color {c} is never used"));
        }
        let color_of: Vec<u16> = table.iter().map(|&c| c as u16).collect();
        let unit = find_unit(points, &color_of, &rel_size);
        let valency = compute_valencies(points, colors, &color_of).ok();
        Ok(RelationPartition { points, colors, color_of, unit, rel_size, valency })
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn colors(&self) -> usize {
        self.colors
    }

    #[inline]
    pub fn color(&self, x: usize, y: usize) -> usize {
        self.color_of[x * self.points + y] as usize
    }

    /// Row `x` of the color table.
    #[inline]
    pub fn row(&self, x: usize) -> &[u16] {
        &self.color_of[x * self.points..(x + 1) * self.points]
    }

    pub fn table(&self) -> &[u16] {
        &self.color_of
    }

    pub fn unit(&self) -> Option<usize> {
        self.unit
    }

    pub fn is_unital(&self) -> bool {
        self.unit.is_some()
    }

    pub fn is_regular(&self) -> bool {
        self.valency.is_some()
    }

    /// Number of ordered pairs of each color.
    pub fn rel_sizes(&self) -> &[usize] {
        &self.rel_size
    }

    pub fn rel_size(&self, color: usize) -> usize {
        self.rel_size[color]
    }

    pub fn valencies(&self) -> Option<&[usize]> {
        self.valency.as_deref()
    }

    /// Dense 0/1 adjacency matrix `A_i`, row-major.
    pub fn adjacency_matrix(&self, color: usize) -> Vec<u8> {
        self.color_of.iter().map(|&c| u8::from(c as usize == color)).collect()
    }

    /// The bilinear forms `(A_i g, h) = Σ_{R(x,x')=i} g(x)·h(x')` for every
    /// color `i`, in a single sweep of the table.
    pub fn color_forms(&self, g: &[i64], h: &[i64]) -> Result<Vec<i64>> {
        if g.len() != self.points || h.len() != self.points {
            return arg(format!(
                "vectors of length {} and {} on {} points",
                g.len(),
                h.len(),
                self.points
            ));
        }
        let mut forms = vec![0i64; self.colors];
        for (x, &gx) in g.iter().enumerate() {
            if gx == 0 {
                continue;
            }
            for (&c, &hy) in self.row(x).iter().zip(h) {
                forms[c as usize] += gx * hy;
            }
        }
        Ok(forms)
    }
}

fn find_unit(points: usize, color_of: &[u16], rel_size: &[usize]) -> Option<usize> {
    let c = color_of[0] as usize;
    let diagonal_ok = (0..points).all(|x| color_of[x * points + x] as usize == c);
    (diagonal_ok && rel_size[c] == points).then_some(c)
}

/// Valencies, or the list of colors whose row or column counts vary.
fn compute_valencies(points: usize, colors: usize, color_of: &[u16]) -> std::result::Result<Vec<usize>, Vec<usize>> {
    let mut row_counts = vec![0usize; points * colors];
    let mut col_counts = vec![0usize; points * colors];
    for x in 0..points {
        for y in 0..points {
            let c = color_of[x * points + y] as usize;
            row_counts[x * colors + c] += 1;
            col_counts[y * colors + c] += 1;
        }
    }
    let mut valency = vec![0usize; colors];
    let mut bad = Vec::new();
    for c in 0..colors {
        let k = row_counts[c];
        valency[c] = k;
        let uniform = (0..points)
            .all(|x| row_counts[x * colors + c] == k && col_counts[x * colors + c] == k);
        if !uniform {
            bad.push(c);
        }
    }
    if bad.is_empty() {
        Ok(valency)
    } else {
        Err(bad)
    }
}

/// Result of re-checking every partition invariant from the raw table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionReport {
    pub points: usize,
    pub colors: usize,
    pub unused_colors: Vec<usize>,
    pub total_pairs_ok: bool,
    pub unit: Option<usize>,
    pub valencies: Option<Vec<usize>>,
    pub irregular_colors: Vec<usize>,
}

impl PartitionReport {
    pub fn is_regular(&self) -> bool {
        self.valencies.is_some()
    }

    pub fn is_unital(&self) -> bool {
        self.unit.is_some()
    }

    pub fn is_valid(&self) -> bool {
        self.unused_colors.is_empty() && self.total_pairs_ok
    }
}

/// Checks a raw color table without constructing a partition.
pub fn validate_table(points: usize, table: &[usize]) -> PartitionReport {
    let colors = table.iter().max().map_or(0, |&m| m + 1);
    let mut rel_size = vec![0usize; colors];
    for &c in table {
        rel_size[c] += 1;
    }
    let unused_colors = (0..colors).filter(|&c| rel_size[c] == 0).collect();
    let total_pairs_ok = table.len() == points * points && rel_size.iter().sum::<usize>() == points * points;
    if !total_pairs_ok || points == 0 || colors > MAX_COLORS {
        return PartitionReport {
            points,
            colors,
            unused_colors,
            total_pairs_ok: false,
            unit: None,
            valencies: None,
            irregular_colors: Vec::new(),
        };
    }
    let narrow: Vec<u16> = table.iter().map(|&c| c as u16).collect();
    let unit = find_unit(points, &narrow, &rel_size);
    let (valencies, irregular_colors) = match compute_valencies(points, colors, &narrow) {
        Ok(v) => (Some(v), Vec::new()),
        Err(bad) => (None, bad),
    };
    PartitionReport { points, colors, unused_colors, total_pairs_ok, unit, valencies, irregular_colors }
}

pub fn validate_partition(rp: &RelationPartition) -> PartitionReport {
    let table: Vec<usize> = rp.color_of.iter().map(|&c| c as usize).collect();
    validate_table(rp.points, &table)
}

/// The thin scheme of `G`: points and colors are group elements and the
/// pair `(g, h)` gets color `g⁻¹h`.
pub fn thin_scheme(group: &FiniteGroup) -> RelationPartition {
    let n = group.order();
    let mut table = Vec::with_capacity(n * n);
    for g in 0..n {
        let gi = group.inv(g);
        for h in 0..n {
            table.push(group.mul(gi, h));
        }
    }
    RelationPartition::from_table(n, &table).expect("thin scheme tables are surjective")
}

/// The Schurian scheme on `G/H` colored by `H\G/H`: the pair
/// `(g₁H, g₂H)` gets the double coset of `g₁⁻¹g₂`.
pub fn schurian_scheme(group: &FiniteGroup, h: &Subgroup) -> RelationPartition {
    let cosets = left_cosets(group, h);
    let doubles = double_cosets(group, h);
    let e = cosets.len();
    let reps: Vec<usize> = (0..e).map(|c| cosets.representative(c)).collect();
    let mut table = Vec::with_capacity(e * e);
    for &a in &reps {
        let ai = group.inv(a);
        for &b in &reps {
            table.push(doubles.label_of(group.mul(ai, b)));
        }
    }
    RelationPartition::from_table(e, &table).expect("double cosets cover every color")
}

/// A surjective morphism `(f, σ)` of relation partitions whose square
/// `target.color(f x, f y) = σ(source.color(x, y))` commutes.
#[derive(Clone, Debug)]
pub struct QuotientMorphism {
    source: Arc<RelationPartition>,
    target: Arc<RelationPartition>,
    point_map: Vec<usize>,
    color_map: Vec<usize>,
    fibers: Vec<Vec<usize>>,
}

impl QuotientMorphism {
    pub fn new(
        source: Arc<RelationPartition>,
        target: Arc<RelationPartition>,
        point_map: Vec<usize>,
        color_map: Vec<usize>,
    ) -> Result<Self> {
        if point_map.len() != source.points() || color_map.len() != source.colors() {
            return arg("point or color map has the wrong length");
        }
        let mut fibers = vec![Vec::new(); target.points()];
        for (x, &y) in point_map.iter().enumerate() {
            if y >= target.points() {
                return arg(format!("point {x} maps outside the target"));
            }
            fibers[y].push(x);
        }
        if let Some(y) = fibers.iter().position(Vec::is_empty) {
            return arg(format!("point map misses target point {y}"));
        }
        let mut hit = vec![false; target.colors()];
        for &j in &color_map {
            if j >= target.colors() {
                return arg("color map leaves the target colors");
            }
            hit[j] = true;
        }
        if let Some(j) = hit.iter().position(|&b| !b) {
            return arg(format!("color map misses target color {j}"));
        }
        for x in 0..source.points() {
            for y in 0..source.points() {
                if target.color(point_map[x], point_map[y]) != color_map[source.color(x, y)] {
                    return arg(format!("square fails to commute at points ({x}, {y})"));
                }
            }
        }
        if let (Some(u), Some(v)) = (source.unit(), target.unit()) {
            if color_map[u] != v {
                return arg("unit color is not mapped to the unit color");
            }
        }
        if source.is_regular() && target.is_unital() {
            let size = source.points() / target.points();
            if fibers.iter().any(|f| f.len() != size) {
                return arg("fibers of a quotient of a regular partition must be equal-sized");
            }
        }
        Ok(QuotientMorphism { source, target, point_map, color_map, fibers })
    }

    pub fn identity(rp: Arc<RelationPartition>) -> Self {
        let point_map = (0..rp.points()).collect();
        let color_map = (0..rp.colors()).collect();
        let fibers = (0..rp.points()).map(|x| vec![x]).collect();
        QuotientMorphism { source: rp.clone(), target: rp, point_map, color_map, fibers }
    }

    pub fn source(&self) -> &Arc<RelationPartition> {
        &self.source
    }

    pub fn target(&self) -> &Arc<RelationPartition> {
        &self.target
    }

    pub fn point_map(&self) -> &[usize] {
        &self.point_map
    }

    pub fn color_map(&self) -> &[usize] {
        &self.color_map
    }

    pub fn fiber(&self, y: usize) -> &[usize] {
        &self.fibers[y]
    }

    pub fn fibers(&self) -> &[Vec<usize>] {
        &self.fibers
    }
}

/// The quotient `G/K → G/H` for `K ≤ H ≤ G`, sending `gK ↦ gH` and
/// `KgK ↦ HgH`.
pub fn quotient_between(group: &FiniteGroup, h: &Subgroup, k: &Subgroup) -> Result<QuotientMorphism> {
    if !k.is_subgroup_of(h) {
        return arg(format!(
            "subgroup of order {} is not contained in the subgroup of order {}",
            k.order(),
            h.order()
        ));
    }
    let (fine_cosets, fine_doubles) = (left_cosets(group, k), double_cosets(group, k));
    let (coarse_cosets, coarse_doubles) = (left_cosets(group, h), double_cosets(group, h));
    let point_map = (0..fine_cosets.len())
        .map(|c| coarse_cosets.label_of(fine_cosets.representative(c)))
        .collect();
    let color_map = (0..fine_doubles.len())
        .map(|c| coarse_doubles.label_of(fine_doubles.representative(c)))
        .collect();
    QuotientMorphism::new(
        Arc::new(schurian_scheme(group, k)),
        Arc::new(schurian_scheme(group, h)),
        point_map,
        color_map,
    )
}
