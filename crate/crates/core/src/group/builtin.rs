//! The six groups of order 120 that carry the (120, 35, 10) question, with
//! their reference subgroup chains.
//!
//! The three solvable ones are `(C5 × C3) ⋊ C8` with `z` acting on
//! `x` (order 5) and `y` (order 3):
//!
//! | name | `z x z⁻¹` | `z y z⁻¹` |
//! |------|-----------|-----------|
//! | G1   | `x`       | `y⁻¹`     |
//! | G3   | `x⁻¹`     | `y⁻¹`     |
//! | G7   | `x²`      | `y⁻¹`     |

use std::fmt;
use std::str::FromStr;

use super::{
    action_from_generators, cyclic_group, direct_product, group_from_permutations,
    matrix_group_mod_p, semidirect_product, FiniteGroup, Permutation,
};
use crate::error::{arg, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BuiltinGroup {
    G1,
    G3,
    G7,
    S5,
    C2xA5,
    SL25,
}

impl BuiltinGroup {
    pub const ALL: [BuiltinGroup; 6] = [
        BuiltinGroup::G1,
        BuiltinGroup::G3,
        BuiltinGroup::G7,
        BuiltinGroup::S5,
        BuiltinGroup::C2xA5,
        BuiltinGroup::SL25,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BuiltinGroup::G1 => "G1",
            BuiltinGroup::G3 => "G3",
            BuiltinGroup::G7 => "G7",
            BuiltinGroup::S5 => "S5",
            BuiltinGroup::C2xA5 => "C2xA5",
            BuiltinGroup::SL25 => "SL25",
        }
    }

    /// Relators over the named generators; each must evaluate to the identity.
    pub fn relations(self) -> &'static [&'static str] {
        match self {
            BuiltinGroup::G1 => &["y^3", "x^5", "z^8", "xy(yx)^-1", "zx(xz)^-1", "zyz^-1y"],
            BuiltinGroup::G3 => &["y^3", "x^5", "z^8", "zyz^-1y", "zxz^-1x", "yx(xy)^-1"],
            BuiltinGroup::G7 => &["y^3", "x^5", "z^8", "zyz^-1y", "yx(xy)^-1", "zxz^-1x^-2"],
            BuiltinGroup::S5 => &["a^5", "b^2", "(ab)^4", "(ba^-1ba)^3"],
            BuiltinGroup::C2xA5 => &["c^2", "a^5", "b^3", "(ab)^5", "cac^-1a^-1", "cbc^-1b^-1"],
            BuiltinGroup::SL25 => &["s^5", "t^4", "(st)^3", "t^2st^-2s^-1"],
        }
    }
}

impl fmt::Display for BuiltinGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BuiltinGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key: String = s.chars().filter(|c| c.is_ascii_alphanumeric()).collect();
        match key.to_ascii_uppercase().as_str() {
            "G1" => Ok(BuiltinGroup::G1),
            "G3" => Ok(BuiltinGroup::G3),
            "G7" => Ok(BuiltinGroup::G7),
            "S5" => Ok(BuiltinGroup::S5),
            "C2XA5" => Ok(BuiltinGroup::C2xA5),
            "SL25" => Ok(BuiltinGroup::SL25),
            _ => arg(format!("unknown builtin group {s:?}")),
        }
    }
}

fn cycles(text: &str, degree: usize) -> Permutation {
    Permutation::parse_cycles(text, degree).expect("builtin cycle notation is well formed")
}

/// `(C5 × C3) ⋊ C8` where `z` sends `x ↦ x^x_exp` and `y ↦ y⁻¹`.
fn solvable(x_exp: usize) -> Result<FiniteGroup> {
    let n = direct_product(&cyclic_group(5)?, &cyclic_group(3)?)?;
    let k = cyclic_group(8)?;
    // (a, b) = x^a y^b sits at index 3a + b.
    let phi: Vec<usize> = (0..15).map(|i| (i / 3 * x_exp % 5) * 3 + (3 - i % 3) % 3).collect();
    let action = action_from_generators(&n, &k, &[(1, phi)])?;
    let mut g = semidirect_product(&n, &k, &action)?;
    g.set_named(vec![("x".into(), 3 * 8), ("y".into(), 8), ("z".into(), 1)]);
    Ok(g)
}

pub fn builtin_group(which: BuiltinGroup) -> Result<FiniteGroup> {
    let mut group = match which {
        BuiltinGroup::G1 => solvable(1)?,
        BuiltinGroup::G3 => solvable(4)?,
        BuiltinGroup::G7 => solvable(2)?,
        BuiltinGroup::S5 => {
            let mut g = group_from_permutations(&[cycles("(1,2,3,4,5)", 5), cycles("(1,2)", 5)])?;
            let a = g.resolve_str("(1,2,3,4,5)")?;
            let b = g.resolve_str("(1,2)")?;
            g.set_named(vec![("a".into(), a), ("b".into(), b)]);
            g
        }
        BuiltinGroup::C2xA5 => {
            let a5 = group_from_permutations(&[cycles("(1,2,3,4,5)", 5), cycles("(1,2,3)", 5)])?;
            let mut g = direct_product(&cyclic_group(2)?, &a5)?;
            let c = g.resolve_str("(1, ())")?;
            let a = g.resolve_str("(0, (1,2,3,4,5))")?;
            let b = g.resolve_str("(0, (1,2,3))")?;
            g.set_named(vec![("c".into(), c), ("a".into(), a), ("b".into(), b)]);
            g
        }
        BuiltinGroup::SL25 => {
            let mut g = matrix_group_mod_p(5, &[[1, 1, 0, 1], [0, 1, -1, 0]])?;
            let s = g.resolve_str("[[1,1],[0,1]]")?;
            let t = g.resolve_str("[[0,1],[-1,0]]")?;
            g.set_named(vec![("s".into(), s), ("t".into(), t)]);
            g
        }
    };
    group = group.with_name(which.name());
    if group.order() != 120 {
        return arg(format!("{which} came out with order {}", group.order()));
    }
    for rel in which.relations() {
        if group.eval_word(rel)? != 0 {
            return arg(format!("relation {rel} fails in {which}"));
        }
    }
    Ok(group)
}

/// Generators of `H_1, H_2, H_3` in the reference chain for `which`, with
/// subgroup orders 24, 8 and 4.
pub fn reference_chain(which: BuiltinGroup) -> Vec<Vec<&'static str>> {
    match which {
        BuiltinGroup::G1 | BuiltinGroup::G3 | BuiltinGroup::G7 => {
            vec![vec!["y", "z"], vec!["z"], vec!["z^2"]]
        }
        BuiltinGroup::S5 => vec![
            vec!["(1,2,3,4)", "(1,2)"],
            vec!["(1,2,3,4)", "(1,3)"],
            vec!["(1,2,3,4)"],
        ],
        BuiltinGroup::C2xA5 => vec![
            vec!["(1, ())", "(0, (2,3)(4,5))", "(0, (2,4)(3,5))", "(0, (3,4,5))"],
            vec!["(1, ())", "(0, (2,3)(4,5))", "(0, (2,4)(3,5))"],
            vec!["(1, ())", "(0, (2,3)(4,5))"],
        ],
        BuiltinGroup::SL25 => vec![
            vec!["[[-1,1],[2,2]]", "[[-1,2],[1,2]]"],
            vec!["[[0,3],[3,0]]", "[[0,1],[-1,0]]"],
            vec!["[[0,1],[-1,0]]"],
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::SubgroupChain;

    #[test]
    fn all_builtins_build_with_reference_chains() {
        for which in BuiltinGroup::ALL {
            let g = builtin_group(which).unwrap();
            assert_eq!(g.order(), 120);
            let gens: Vec<Vec<usize>> = reference_chain(which)
                .iter()
                .map(|hs| hs.iter().map(|s| g.resolve_str(s).unwrap()).collect())
                .collect();
            let chain = SubgroupChain::from_generators(&g, &gens).unwrap();
            assert_eq!(chain.orders(), vec![120, 24, 8, 4], "{which}");
            assert!(chain.has_descending_indices());
        }
    }

    #[test]
    fn sl25_has_a_unique_involution() {
        let g = builtin_group(BuiltinGroup::SL25).unwrap();
        let involutions: Vec<usize> = (1..120).filter(|&x| g.mul(x, x) == 0).collect();
        assert_eq!(involutions.len(), 1);
        assert_eq!(g.label(involutions[0]), "[[4,0],[0,4]]");
    }

    #[test]
    fn s5_order_census() {
        // Brute force over the table: 1 + 10 + 20 + 30 + 24 + 20 + 15 = 120.
        let g = builtin_group(BuiltinGroup::S5).unwrap();
        let census = g.order_census();
        assert_eq!(census[1], 1);
        assert_eq!(census[2], 25);
        assert_eq!(census[3], 20);
        assert_eq!(census[4], 30);
        assert_eq!(census[5], 24);
        assert_eq!(census[6], 20);
    }

    #[test]
    fn solvable_builtins_are_distinct() {
        let censuses: Vec<Vec<usize>> = [BuiltinGroup::G1, BuiltinGroup::G3, BuiltinGroup::G7]
            .iter()
            .map(|&w| builtin_group(w).unwrap().order_census())
            .collect();
        assert_ne!(censuses[0], censuses[2]);
        assert_ne!(censuses[1], censuses[2]);
        // G1 and G3 share an order census; their centres differ.
        let centre = |w| {
            let g = builtin_group(w).unwrap();
            (0..120).filter(|&a| (0..120).all(|b| g.mul(a, b) == g.mul(b, a))).count()
        };
        assert_ne!(centre(BuiltinGroup::G1), centre(BuiltinGroup::G3));
    }

    #[test]
    fn names_parse() {
        assert_eq!("c2 x a5".parse::<BuiltinGroup>().unwrap(), BuiltinGroup::C2xA5);
        assert_eq!("SL(2,5)".parse::<BuiltinGroup>().unwrap(), BuiltinGroup::SL25);
        assert!("G2".parse::<BuiltinGroup>().is_err());
    }
}
