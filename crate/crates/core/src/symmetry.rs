//! Symmetries that carry equi-distributed functions on `G/H` to
//! equi-distributed functions: left translations `gH ↦ xgH` and
//! automorphisms of `G` that fix `H` setwise.
//!
//! Functions are compared up to this group action through the lex-least
//! element of their orbit.

use std::collections::{HashSet, VecDeque};

use rayon::prelude::*;

use crate::equidist::{MultiFunction, Multiplicity};
use crate::error::{arg, Error, Result};
use crate::group::{left_cosets, Element, FiniteGroup, Subgroup};

/// Default number of backtracking nodes for automorphism enumeration.
pub const DEFAULT_AUTOMORPHISM_BUDGET: u64 = 10_000_000;

/// Default cap on the order of a point symmetry group.
pub const DEFAULT_SYMMETRY_CAP: usize = 1_000_000;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Automorphism {
    images: Vec<Element>,
}

impl Automorphism {
    pub fn identity(order: usize) -> Self {
        Automorphism { images: (0..order).collect() }
    }

    /// Validates that `images` is a bijective homomorphism of `group`.
    pub fn new(group: &FiniteGroup, images: Vec<Element>) -> Result<Self> {
        let n = group.order();
        if images.len() != n {
            return arg("automorphism images have the wrong length");
        }
        let mut hit = vec![false; n];
        for &x in &images {
            if x >= n || std::mem::replace(&mut hit[x], true) {
                return arg("automorphism images are not a permutation");
            }
        }
        for a in 0..n {
            for b in 0..n {
                if images[group.mul(a, b)] != group.mul(images[a], images[b]) {
                    return arg(format!("not a homomorphism at ({a}, {b})"));
                }
            }
        }
        Ok(Automorphism { images })
    }

    #[inline]
    pub fn apply(&self, x: Element) -> Element {
        self.images[x]
    }

    pub fn images(&self) -> &[Element] {
        &self.images
    }

    /// `self` then `other`.
    pub fn then(&self, other: &Automorphism) -> Automorphism {
        Automorphism { images: self.images.iter().map(|&x| other.images[x]).collect() }
    }

    pub fn inverse(&self) -> Automorphism {
        let mut inv = vec![0; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y] = x;
        }
        Automorphism { images: inv }
    }

    pub fn fixes_setwise(&self, h: &Subgroup) -> bool {
        h.members().iter().all(|&m| h.contains(self.images[m]))
    }
}

/// Every automorphism of `group`, sorted by image vector.
///
/// Backtracks over images of the recorded generators, restricted to
/// elements of matching order, and checks each partial assignment on the
/// subgroup generated so far.
pub fn automorphisms(group: &FiniteGroup, node_budget: u64) -> Result<Vec<Automorphism>> {
    let n = group.order();
    let gens = group.generators().to_vec();
    let orders: Vec<usize> = (0..n).map(|x| group.element_order(x)).collect();
    let candidates: Vec<Vec<Element>> = gens
        .iter()
        .map(|&g| (0..n).filter(|&x| orders[x] == orders[g]).collect())
        .collect();
    let mut found = Vec::new();
    let mut images = Vec::with_capacity(gens.len());
    let mut nodes = 0u64;
    extend_automorphism(group, &gens, &candidates, &mut images, &mut found, &mut nodes, node_budget)?;
    found.sort();
    Ok(found)
}

fn extend_automorphism(
    group: &FiniteGroup,
    gens: &[Element],
    candidates: &[Vec<Element>],
    images: &mut Vec<Element>,
    found: &mut Vec<Automorphism>,
    nodes: &mut u64,
    budget: u64,
) -> Result<()> {
    let depth = images.len();
    if depth == gens.len() {
        if let Some(map) = partial_map(group, gens, images) {
            if map.iter().all(|&x| x != usize::MAX) {
                found.push(Automorphism { images: map });
            }
        }
        return Ok(());
    }
    for &c in &candidates[depth] {
        *nodes += 1;
        if *nodes > budget {
            return Err(Error::Resource(format!(
                "automorphism search exceeded {budget} nodes; fall back to translations only"
            )));
        }
        images.push(c);
        if depth + 1 == gens.len() || partial_map(group, &gens[..=depth], images).is_some() {
            extend_automorphism(group, gens, candidates, images, found, nodes, budget)?;
        }
        images.pop();
    }
    Ok(())
}

/// Extends generator images over the subgroup they generate. `None` if the
/// images are inconsistent or the map is not injective there; unreached
/// elements are `usize::MAX`.
fn partial_map(group: &FiniteGroup, gens: &[Element], images: &[Element]) -> Option<Vec<Element>> {
    let n = group.order();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    map[0] = 0;
    used[0] = true;
    let mut queue = VecDeque::from([0]);
    while let Some(e) = queue.pop_front() {
        for (&g, &img) in gens.iter().zip(images) {
            let p = group.mul(e, g);
            let q = group.mul(map[e], img);
            if map[p] == usize::MAX {
                if std::mem::replace(&mut used[q], true) {
                    return None;
                }
                map[p] = q;
                queue.push_back(p);
            } else if map[p] != q {
                return None;
            }
        }
    }
    Some(map)
}

pub fn automorphisms_fixing(auts: &[Automorphism], h: &Subgroup) -> Vec<Automorphism> {
    auts.iter().filter(|a| a.fixes_setwise(h)).cloned().collect()
}

/// A permutation group on the points of `G/H`, stored as its full element
/// list (identity first).
#[derive(Clone, Debug)]
pub struct PointSymmetryGroup {
    points: usize,
    perms: Vec<Vec<u32>>,
    generators: usize,
    automorphisms_used: usize,
}

impl PointSymmetryGroup {
    /// Closure of arbitrary point permutations.
    pub fn from_generators(points: usize, generators: &[Vec<u32>], cap: usize) -> Result<Self> {
        let identity: Vec<u32> = (0..points as u32).collect();
        let mut gens: Vec<Vec<u32>> = Vec::new();
        for g in generators {
            if g.len() != points {
                return arg("point permutation has the wrong length");
            }
            if *g != identity && !gens.contains(g) {
                gens.push(g.clone());
            }
        }
        let mut seen: HashSet<Vec<u32>> = HashSet::from([identity.clone()]);
        let mut perms = vec![identity];
        let mut next = 0;
        while next < perms.len() {
            let current = perms[next].clone();
            next += 1;
            for g in &gens {
                let p: Vec<u32> = current.iter().map(|&x| g[x as usize]).collect();
                if !seen.contains(&p) {
                    if perms.len() >= cap {
                        return Err(Error::Resource(format!(
                            "point symmetry group exceeds {cap} elements"
                        )));
                    }
                    seen.insert(p.clone());
                    perms.push(p);
                }
            }
        }
        Ok(PointSymmetryGroup { points, perms, generators: gens.len(), automorphisms_used: 0 })
    }

    pub fn trivial(points: usize) -> Self {
        PointSymmetryGroup {
            points,
            perms: vec![(0..points as u32).collect()],
            generators: 0,
            automorphisms_used: 0,
        }
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn order(&self) -> usize {
        self.perms.len()
    }

    pub fn perms(&self) -> &[Vec<u32>] {
        &self.perms
    }

    pub fn generator_count(&self) -> usize {
        self.generators
    }

    /// Number of `H`-fixing automorphisms that contributed generators.
    pub fn automorphisms_used(&self) -> usize {
        self.automorphisms_used
    }
}

/// Translations by the generators of `G` plus the action of each
/// automorphism in `fixing` (which must fix `h` setwise) on `G/H`.
pub fn point_symmetries(
    group: &FiniteGroup,
    h: &Subgroup,
    fixing: &[Automorphism],
    cap: usize,
) -> Result<PointSymmetryGroup> {
    let cosets = left_cosets(group, h);
    let e = cosets.len();
    let mut gens: Vec<Vec<u32>> = Vec::new();
    for &x in group.generators() {
        gens.push(
            (0..e)
                .map(|c| cosets.label_of(group.mul(x, cosets.representative(c))) as u32)
                .collect(),
        );
    }
    for phi in fixing {
        if !phi.fixes_setwise(h) {
            return arg("automorphism does not fix the subgroup");
        }
        gens.push((0..e).map(|c| cosets.label_of(phi.apply(cosets.representative(c))) as u32).collect());
    }
    let mut sym = PointSymmetryGroup::from_generators(e, &gens, cap)?;
    sym.automorphisms_used = fixing.len();
    Ok(sym)
}

/// Lex-least element of the orbit `{g ∘ p}`.
pub fn canonical_form<V: Multiplicity>(g: &MultiFunction<V>, sym: &PointSymmetryGroup) -> MultiFunction<V> {
    assert_eq!(g.len(), sym.points(), "function and symmetry group disagree on point count");
    let values = g.values();
    let mut best: Vec<V> = values.to_vec();
    for p in sym.perms() {
        let mut ordering = std::cmp::Ordering::Equal;
        for (i, &pi) in p.iter().enumerate() {
            let v = values[pi as usize];
            if v != best[i] {
                ordering = v.cmp(&best[i]);
                break;
            }
        }
        if ordering == std::cmp::Ordering::Less {
            for (slot, &pi) in best.iter_mut().zip(p) {
                *slot = values[pi as usize];
            }
        }
    }
    MultiFunction::new(best)
}

/// Every function equivalent to `g`, sorted.
pub fn orbit<V: Multiplicity>(g: &MultiFunction<V>, sym: &PointSymmetryGroup) -> Vec<MultiFunction<V>> {
    let mut out: Vec<MultiFunction<V>> = sym.perms().iter().map(|p| g.compose(p)).collect();
    out.sort();
    out.dedup();
    out
}

/// One canonical representative per orbit, sorted.
pub fn reduce_to_representatives<V: Multiplicity>(
    candidates: &[MultiFunction<V>],
    sym: &PointSymmetryGroup,
) -> Vec<MultiFunction<V>> {
    let mut reps: Vec<MultiFunction<V>> =
        candidates.par_iter().map(|g| canonical_form(g, sym)).collect();
    reps.par_sort();
    reps.dedup();
    reps
}
