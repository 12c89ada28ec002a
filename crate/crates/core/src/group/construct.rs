use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use super::{Element, FiniteGroup, Kind, Permutation, MAX_ORDER};
use crate::error::{arg, Error, Result};

fn cap_error(what: &str) -> Error {
    Error::Resource(format!("{what} exceeds the group order cap of {MAX_ORDER}"))
}

/// The group generated by `generators` under left-to-right composition.
///
/// Elements are numbered in breadth-first discovery order starting from
/// the identity, trying generators in the order given.
pub fn group_from_permutations(generators: &[Permutation]) -> Result<FiniteGroup> {
    let degree = generators.iter().map(Permutation::degree).max().unwrap_or(0);
    let gens: Vec<Permutation> = generators.iter().map(|g| g.extended(degree)).collect();
    let identity = Permutation::identity(degree);
    let mut index: HashMap<Permutation, usize> = HashMap::from([(identity.clone(), 0)]);
    let mut elements = vec![identity];
    let mut queue = VecDeque::from([0usize]);
    while let Some(e) = queue.pop_front() {
        for g in &gens {
            let p = elements[e].then(g);
            if !index.contains_key(&p) {
                if elements.len() == MAX_ORDER {
                    return Err(cap_error("permutation group closure"));
                }
                index.insert(p.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(p);
            }
        }
    }
    let n = elements.len();
    let mut mul = Vec::with_capacity(n * n);
    for a in &elements {
        for b in &elements {
            mul.push(index[&a.then(b)]);
        }
    }
    let labels = elements.iter().map(|p| p.to_string()).collect();
    let gen_idx: Vec<Element> = gens.iter().map(|g| index[g]).collect();
    FiniteGroup::assemble(
        format!("<{}>", gens.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(", ")),
        n,
        &mul,
        Some(labels),
        Kind::Permutations { degree, perms: elements },
        Some(gen_idx),
    )
}

/// `Z/nZ` with element `i` at index `i`.
pub fn cyclic_group(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return arg("cyclic group order must be positive");
    }
    if n > MAX_ORDER {
        return Err(cap_error("cyclic group order"));
    }
    let mul: Vec<Element> = (0..n * n).map(|i| (i / n + i % n) % n).collect();
    let gens = if n > 1 { vec![1] } else { vec![] };
    FiniteGroup::assemble(format!("C{n}"), n, &mul, None, Kind::Table, Some(gens))
}

/// `A × B` with `(a, b)` at index `a·|B| + b`.
pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Result<FiniteGroup> {
    let (na, nb) = (a.order(), b.order());
    if na * nb > MAX_ORDER {
        return Err(cap_error("direct product order"));
    }
    let n = na * nb;
    let mut mul = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            mul.push(a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb));
        }
    }
    let labels = (0..n)
        .map(|x| format!("({}, {})", a.label(x / nb), b.label(x % nb)))
        .collect();
    let gens = a
        .generators()
        .iter()
        .map(|&g| g * nb)
        .chain(b.generators().iter().copied())
        .collect();
    FiniteGroup::assemble(
        format!("{} x {}", a.name(), b.name()),
        n,
        &mul,
        Some(labels),
        Kind::Product(Arc::new(a.clone()), Arc::new(b.clone())),
        Some(gens),
    )
}

/// `N ⋊ K` with `(n1, k1)(n2, k2) = (n1·φ_{k1}(n2), k1·k2)`, where
/// `action[k]` lists the images of the automorphism `φ_k` of `N`.
/// `(n, k)` sits at index `n·|K| + k`.
pub fn semidirect_product(
    n: &FiniteGroup,
    k: &FiniteGroup,
    action: &[Vec<Element>],
) -> Result<FiniteGroup> {
    let (nn, nk) = (n.order(), k.order());
    if nn * nk > MAX_ORDER {
        return Err(cap_error("semidirect product order"));
    }
    if action.len() != nk {
        return arg(format!("action lists {} maps for {nk} elements of K", action.len()));
    }
    for (ki, phi) in action.iter().enumerate() {
        if phi.len() != nn || phi.iter().any(|&x| x >= nn) {
            return arg(format!("action of K-element {ki} is not a map on N"));
        }
        for a in 0..nn {
            for b in 0..nn {
                if phi[n.mul(a, b)] != n.mul(phi[a], phi[b]) {
                    return arg(format!(
                        "action of K-element {ki} is not a homomorphism at ({a}, {b})"
                    ));
                }
            }
        }
        let mut hit = vec![false; nn];
        for &x in phi {
            hit[x] = true;
        }
        if hit.contains(&false) {
            return arg(format!("action of K-element {ki} is not bijective"));
        }
    }
    if action[0].iter().enumerate().any(|(i, &x)| i != x) {
        return arg("the identity of K must act trivially");
    }
    for k1 in 0..nk {
        for k2 in 0..nk {
            let prod = &action[k.mul(k1, k2)];
            if (0..nn).any(|x| prod[x] != action[k1][action[k2][x]]) {
                return arg(format!("action is not a homomorphism at K-pair ({k1}, {k2})"));
            }
        }
    }
    let order = nn * nk;
    let mut mul = Vec::with_capacity(order * order);
    for x in 0..order {
        let (n1, k1) = (x / nk, x % nk);
        for y in 0..order {
            let (n2, k2) = (y / nk, y % nk);
            mul.push(n.mul(n1, action[k1][n2]) * nk + k.mul(k1, k2));
        }
    }
    let labels = (0..order)
        .map(|x| format!("({}, {})", n.label(x / nk), k.label(x % nk)))
        .collect();
    let gens = n
        .generators()
        .iter()
        .map(|&g| g * nk)
        .chain(k.generators().iter().copied())
        .collect();
    FiniteGroup::assemble(
        format!("{} : {}", n.name(), k.name()),
        order,
        &mul,
        Some(labels),
        Kind::Semidirect(Arc::new(n.clone()), Arc::new(k.clone())),
        Some(gens),
    )
}

/// Expands an action given on generators of `K` to the full table
/// `k ↦ φ_k` expected by [`semidirect_product`]. Each entry pairs a
/// `K`-element with the image table of its automorphism of `N`.
pub fn action_from_generators(
    n: &FiniteGroup,
    k: &FiniteGroup,
    generator_actions: &[(Element, Vec<Element>)],
) -> Result<Vec<Vec<Element>>> {
    let nn = n.order();
    for (kg, phi) in generator_actions {
        if *kg >= k.order() || phi.len() != nn {
            return arg(format!("malformed action entry for K-element {kg}"));
        }
    }
    let mut table: Vec<Option<Vec<Element>>> = vec![None; k.order()];
    table[0] = Some((0..nn).collect());
    let mut queue = VecDeque::from([0usize]);
    while let Some(e) = queue.pop_front() {
        let phi_e = table[e].clone().expect("queued entries are set");
        for (kg, phi_g) in generator_actions {
            let p = k.mul(e, *kg);
            let composed: Vec<Element> = (0..nn).map(|x| phi_e[phi_g[x]]).collect();
            match &table[p] {
                None => {
                    table[p] = Some(composed);
                    queue.push_back(p);
                }
                Some(existing) if *existing != composed => {
                    return arg(format!("action is inconsistent at K-element {p}"));
                }
                Some(_) => {}
            }
        }
    }
    table
        .into_iter()
        .enumerate()
        .map(|(i, t)| {
            t.ok_or_else(|| {
                Error::Argument(format!("action generators do not reach K-element {i}"))
            })
        })
        .collect()
}

/// Closure of 2×2 matrices over `Z/p` (entries row-major) under matrix
/// multiplication.
pub fn matrix_group_mod_p(modulus: u32, generators: &[[i64; 4]]) -> Result<FiniteGroup> {
    if modulus < 2 {
        return arg("modulus must be at least 2");
    }
    let p = modulus as i64;
    let reduce = |m: &[i64; 4]| -> [u32; 4] { m.map(|x| x.rem_euclid(p) as u32) };
    let gens: Vec<[u32; 4]> = generators.iter().map(reduce).collect();
    let mulm = |a: &[u32; 4], b: &[u32; 4]| -> [u32; 4] {
        let q = modulus;
        [
            (a[0] * b[0] + a[1] * b[2]) % q,
            (a[0] * b[1] + a[1] * b[3]) % q,
            (a[2] * b[0] + a[3] * b[2]) % q,
            (a[2] * b[1] + a[3] * b[3]) % q,
        ]
    };
    for g in &gens {
        let det = (g[0] as i64 * g[3] as i64 - g[1] as i64 * g[2] as i64).rem_euclid(p);
        if det == 0 {
            return arg(format!("matrix {g:?} is singular mod {modulus}"));
        }
    }
    let identity = [1, 0, 0, 1];
    let mut index: HashMap<[u32; 4], usize> = HashMap::from([(identity, 0)]);
    let mut elements = vec![identity];
    let mut queue = VecDeque::from([0usize]);
    while let Some(e) = queue.pop_front() {
        for g in &gens {
            let m = mulm(&elements[e], g);
            if let std::collections::hash_map::Entry::Vacant(slot) = index.entry(m) {
                if elements.len() == MAX_ORDER {
                    return Err(cap_error("matrix group closure"));
                }
                slot.insert(elements.len());
                queue.push_back(elements.len());
                elements.push(m);
            }
        }
    }
    let n = elements.len();
    let mut mul = Vec::with_capacity(n * n);
    for a in &elements {
        for b in &elements {
            mul.push(index[&mulm(a, b)]);
        }
    }
    let labels = elements
        .iter()
        .map(|m| format!("[[{},{}],[{},{}]]", m[0], m[1], m[2], m[3]))
        .collect();
    let gen_idx = gens.iter().map(|g| index[g]).collect();
    FiniteGroup::assemble(
        format!("matrices mod {modulus}"),
        n,
        &mul,
        Some(labels),
        Kind::Matrices { modulus, entries: elements },
        Some(gen_idx),
    )
}
