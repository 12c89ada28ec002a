//! One representative of every isomorphism type of order at most 16.

use super::construct::{action_from_generators, cyclic_group, direct_product, group_from_permutations, semidirect_product};
use super::{Element, FiniteGroup, Permutation};
use crate::error::{arg, Result};

/// Number of isomorphism types of each order `0..=16` (index 0 unused).
pub const TYPE_COUNTS: [usize; 17] = [0, 1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 14];

fn c(n: usize) -> Result<FiniteGroup> {
    cyclic_group(n)
}

fn product(a: FiniteGroup, b: FiniteGroup) -> Result<FiniteGroup> {
    direct_product(&a, &b)
}

/// `N ⋊ ⟨k⟩` where the generator `1` of the cyclic `K` acts by `phi`.
fn cyclic_extension(name: &str, n: FiniteGroup, k: usize, phi: impl Fn(Element) -> Element) -> Result<FiniteGroup> {
    let k = cyclic_group(k)?;
    let images: Vec<Element> = (0..n.order()).map(phi).collect();
    let action = action_from_generators(&n, &k, &[(1, images)])?;
    Ok(semidirect_product(&n, &k, &action)?.with_name(name))
}

fn dihedral(order: usize) -> Result<FiniteGroup> {
    let m = order / 2;
    cyclic_extension(&format!("D{order}"), c(m)?, 2, |x| (m - x) % m)
}

fn quaternion() -> Result<FiniteGroup> {
    let gens = [
        Permutation::parse_cycles("(1,2,3,4)(5,6,7,8)", 8)?,
        Permutation::parse_cycles("(1,5,3,7)(2,8,4,6)", 8)?,
    ];
    Ok(group_from_permutations(&gens)?.with_name("Q8"))
}

/// Generalized quaternion group of order 16 on `x^a y^b`, index `a + 8b`,
/// with `x^8 = 1`, `y^2 = x^4`, `y x y^-1 = x^-1`.
fn quaternion16() -> Result<FiniteGroup> {
    let mut mul = Vec::with_capacity(256);
    for p in 0..16 {
        let (a, b) = (p % 8, p / 8);
        for q in 0..16 {
            let (cc, d) = (q % 8, q / 8);
            let (e, f) = match (b, d) {
                (0, _) => ((a + cc) % 8, d),
                (_, 0) => ((a + 8 - cc) % 8, 1),
                _ => ((a + 12 - cc) % 8, 0),
            };
            mul.push(e + 8 * f);
        }
    }
    FiniteGroup::from_table("Q16", 16, &mul, None)
}

/// All types of order `n`, for `1 ≤ n ≤ 16`.
pub fn groups_of_order(n: usize) -> Result<Vec<FiniteGroup>> {
    let named = |g: Result<FiniteGroup>, name: &str| g.map(|g| g.with_name(name));
    let out = match n {
        4 => vec![c(4)?, named(product(c(2)?, c(2)?), "C2xC2")?],
        6 => vec![c(6)?, dihedral(6)?],
        8 => vec![
            c(8)?,
            named(product(c(4)?, c(2)?), "C4xC2")?,
            named(product(product(c(2)?, c(2)?)?, c(2)?), "C2^3")?,
            dihedral(8)?,
            quaternion()?,
        ],
        9 => vec![c(9)?, named(product(c(3)?, c(3)?), "C3xC3")?],
        10 => vec![c(10)?, dihedral(10)?],
        12 => vec![
            c(12)?,
            named(product(c(6)?, c(2)?), "C6xC2")?,
            dihedral(12)?,
            {
                let gens = [Permutation::parse_cycles("(1,2,3)", 4)?, Permutation::parse_cycles("(1,2)(3,4)", 4)?];
                group_from_permutations(&gens)?.with_name("A4")
            },
            cyclic_extension("Dic12", c(3)?, 4, |x| (3 - x) % 3)?,
        ],
        14 => vec![c(14)?, dihedral(14)?],
        16 => {
            // C4 x C2 with (i, j) at index 2i + j.
            let c4c2 = || product(c(4)?, c(2)?);
            vec![
                c(16)?,
                named(product(c(8)?, c(2)?), "C8xC2")?,
                named(product(c(4)?, c(4)?), "C4xC4")?,
                named(product(c4c2()?, c(2)?), "C4xC2xC2")?,
                named(product(product(c(2)?, c(2)?)?, product(c(2)?, c(2)?)?), "C2^4")?,
                dihedral(16)?,
                cyclic_extension("SD16", c(8)?, 2, |x| (3 * x) % 8)?,
                cyclic_extension("M16", c(8)?, 2, |x| (5 * x) % 8)?,
                cyclic_extension("C4:C4", c(4)?, 4, |x| (4 - x) % 4)?,
                named(product(dihedral(8)?, c(2)?), "D8xC2")?,
                named(product(quaternion()?, c(2)?), "Q8xC2")?,
                quaternion16()?,
                // a -> ab, b -> b
                cyclic_extension("(C4xC2):C2", c4c2()?, 2, |x| {
                    let (i, j) = (x / 2, x % 2);
                    2 * i + (i + j) % 2
                })?,
                // a -> a, b -> a^2 b: the central product of C4 and D8
                cyclic_extension("C4oD8", c4c2()?, 2, |x| {
                    let (i, j) = (x / 2, x % 2);
                    2 * ((i + 2 * j) % 4) + j
                })?,
            ]
        }
        1 | 2 | 3 | 5 | 7 | 11 | 13 | 15 => vec![c(n)?],
        _ => return arg(format!("no catalog for order {n}")),
    };
    Ok(out)
}

/// Every type of order at most `max_order` (at most 16), by order.
pub fn small_groups(max_order: usize) -> Result<Vec<FiniteGroup>> {
    let mut out = Vec::new();
    for n in 1..=max_order {
        out.extend(groups_of_order(n)?);
    }
    Ok(out)
}
