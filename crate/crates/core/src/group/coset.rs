use super::{Element, FiniteGroup, Subgroup};

/// A partition of the group elements into classes, labelled by ascending
/// least member. The class containing the identity is therefore label 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetPartition {
    classes: Vec<Vec<Element>>,
    label_of: Vec<usize>,
}

impl CosetPartition {
    fn from_classes(order: usize, mut make_class: impl FnMut(Element) -> Vec<Element>) -> Self {
        let mut label_of = vec![usize::MAX; order];
        let mut classes = Vec::new();
        for g in 0..order {
            if label_of[g] != usize::MAX {
                continue;
            }
            let mut class = make_class(g);
            class.sort_unstable();
            class.dedup();
            for &x in &class {
                label_of[x] = classes.len();
            }
            classes.push(class);
        }
        CosetPartition { classes, label_of }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[Vec<Element>] {
        &self.classes
    }

    #[inline]
    pub fn label_of(&self, g: Element) -> usize {
        self.label_of[g]
    }

    /// Least member of a class.
    #[inline]
    pub fn representative(&self, label: usize) -> Element {
        self.classes[label][0]
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }
}

/// Left cosets `gH`.
pub fn left_cosets(group: &FiniteGroup, h: &Subgroup) -> CosetPartition {
    CosetPartition::from_classes(group.order(), |g| {
        h.members().iter().map(|&m| group.mul(g, m)).collect()
    })
}

/// Double cosets `HgH`.
pub fn double_cosets(group: &FiniteGroup, h: &Subgroup) -> CosetPartition {
    CosetPartition::from_classes(group.order(), |g| {
        let mut class = Vec::with_capacity(h.order());
        let mut seen = vec![false; group.order()];
        for &a in h.members() {
            let ag = group.mul(a, g);
            for &b in h.members() {
                let x = group.mul(ag, b);
                if !seen[x] {
                    seen[x] = true;
                    class.push(x);
                }
            }
        }
        class
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{builtin_group, cyclic_group, BuiltinGroup};

    #[test]
    fn trivial_and_whole_subgroups() {
        let c6 = cyclic_group(6).unwrap();
        assert_eq!(left_cosets(&c6, &c6.whole()).len(), 1);
        assert_eq!(left_cosets(&c6, &c6.trivial_subgroup()).len(), 6);
        assert_eq!(double_cosets(&c6, &c6.whole()).len(), 1);
        assert_eq!(double_cosets(&c6, &c6.trivial_subgroup()).len(), 6);
    }

    #[test]
    fn s5_over_s4() {
        let s5 = builtin_group(BuiltinGroup::S5).unwrap();
        let s4 = s5.subgroup(&[
            s5.resolve_str("(1,2,3,4)").unwrap(),
            s5.resolve_str("(1,2)").unwrap(),
        ]);
        assert_eq!(s4.order(), 24);
        let lc = left_cosets(&s5, &s4);
        assert_eq!(lc.sizes(), vec![24; 5]);
        let dc = double_cosets(&s5, &s4);
        assert_eq!(dc.sizes(), vec![24, 96]);
        assert_eq!(dc.label_of(0), 0);
        // Brute force: g' ~ g iff g' = a g b for some a, b in H.
        for g in 0..120 {
            for g2 in 0..120 {
                let related = s4.members().iter().any(|&a| {
                    s4.members().iter().any(|&b| s5.mul(s5.mul(a, g), b) == g2)
                });
                assert_eq!(related, dc.label_of(g) == dc.label_of(g2));
            }
        }
    }
}
