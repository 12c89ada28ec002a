//! Inner distributions, equi-distribution and pushouts of nonnegative
//! integer functions on relation partitions.
//!
//! All `λ` arithmetic is exact ([`Lambda`] is a ratio of `i64`).

use std::fmt;
use std::hash::Hash;

use num_rational::Ratio;
use num_traits::{PrimInt, Unsigned};

use crate::error::{arg, Result};
use crate::group::{Element, FiniteGroup};
use crate::scheme::{thin_scheme, QuotientMorphism, RelationPartition};

/// Exact rational used for every `λ`.
pub type Lambda = Ratio<i64>;

/// Value types a [`MultiFunction`] may hold.
pub trait Multiplicity: PrimInt + Unsigned + Hash + fmt::Debug + Send + Sync + 'static {}

impl<T> Multiplicity for T where T: PrimInt + Unsigned + Hash + fmt::Debug + Send + Sync + 'static {}

/// A multi characteristic function `X → ℕ`, i.e. a multiset of points.
///
/// Ordering is lexicographic on the value vector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct MultiFunction<V = u16> {
    values: Vec<V>,
}

impl<V: Multiplicity> MultiFunction<V> {
    pub fn new(values: Vec<V>) -> Self {
        MultiFunction { values }
    }

    pub fn zero(points: usize) -> Self {
        MultiFunction { values: vec![V::zero(); points] }
    }

    pub fn constant(points: usize, value: V) -> Self {
        MultiFunction { values: vec![value; points] }
    }

    /// The 0/1 function of `set`; duplicates are ignored.
    pub fn characteristic(points: usize, set: &[usize]) -> Result<Self> {
        let mut values = vec![V::zero(); points];
        for &x in set {
            if x >= points {
                return arg(format!("point {x} out of range 0..{points}"));
            }
            values[x] = V::one();
        }
        Ok(MultiFunction { values })
    }

    pub fn values(&self) -> &[V] {
        &self.values
    }

    pub fn into_values(self) -> Vec<V> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    #[inline]
    pub fn get(&self, x: usize) -> u64 {
        self.values[x].to_u64().expect("unsigned values fit in u64")
    }

    /// `k = Σ g(x)`.
    pub fn mass(&self) -> u64 {
        (0..self.len()).map(|x| self.get(x)).sum()
    }

    pub fn sum_of_squares(&self) -> u64 {
        (0..self.len()).map(|x| self.get(x).pow(2)).sum()
    }

    pub fn max_value(&self) -> u64 {
        (0..self.len()).map(|x| self.get(x)).max().unwrap_or(0)
    }

    pub fn is_characteristic(&self) -> bool {
        self.values.iter().all(|&v| v <= V::one())
    }

    /// Points with nonzero value.
    pub fn support(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.get(x) != 0).collect()
    }

    pub fn to_i64(&self) -> Vec<i64> {
        (0..self.len()).map(|x| self.get(x) as i64).collect()
    }

    /// `x ↦ g(perm[x])`.
    pub fn compose(&self, perm: &[u32]) -> Self {
        MultiFunction { values: perm.iter().map(|&p| self.values[p as usize]).collect() }
    }

    /// Re-encodes the values in another integer type.
    pub fn cast<W: Multiplicity>(&self) -> Option<MultiFunction<W>> {
        self.values
            .iter()
            .map(|&v| W::from(v))
            .collect::<Option<Vec<W>>>()
            .map(MultiFunction::new)
    }
}

impl<V: Multiplicity> fmt::Display for MultiFunction<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v:?}")?;
        }
        write!(f, ")")
    }
}

/// A parameter set `(v, k, λ)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Parameters {
    pub v: usize,
    pub k: u64,
    pub lambda: Lambda,
}

impl Parameters {
    pub fn new(v: usize, k: u64, lambda: impl Into<Lambda>) -> Self {
        Parameters { v, k, lambda: lambda.into() }
    }

    /// `k(k − 1) = λ(v − 1)`, necessary for a difference set to exist.
    pub fn satisfies_counting_constraint(&self) -> bool {
        let k = self.k as i64;
        Lambda::from_integer(k * (k - 1)) == self.lambda * (self.v as i64 - 1)
    }

    /// `k ∈ {0, 1, v − 1, v}`, where every `k`-subset is a difference set.
    pub fn is_trivial(&self) -> bool {
        let v = self.v as u64;
        self.k <= 1 || self.k + 1 >= v
    }
}

impl fmt::Display for Parameters {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.v, self.k, self.lambda)
    }
}

/// Per-color inner distribution `λ_i = v·(A_i g, g) / #R⁻¹(i)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct InnerDistribution {
    per_color: Vec<Lambda>,
    unit: usize,
}

impl InnerDistribution {
    pub fn per_color(&self) -> &[Lambda] {
        &self.per_color
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    /// `(color, λ_color)` for every non-unit color.
    pub fn non_unit(&self) -> impl Iterator<Item = (usize, Lambda)> + '_ {
        self.per_color.iter().copied().enumerate().filter(move |(i, _)| *i != self.unit)
    }

    /// The common non-unit value if all coincide; `None` if they differ
    /// or there are no non-unit colors.
    pub fn flat_value(&self) -> Option<Lambda> {
        let mut it = self.non_unit().map(|(_, l)| l);
        let first = it.next()?;
        it.all(|l| l == first).then_some(first)
    }
}

pub fn inner_distribution<V: Multiplicity>(
    rp: &RelationPartition,
    g: &MultiFunction<V>,
) -> Result<InnerDistribution> {
    if g.len() != rp.points() {
        return arg(format!("function on {} points, partition has {}", g.len(), rp.points()));
    }
    let Some(unit) = rp.unit() else {
        return arg("inner distributions need a unital relation partition");
    };
    let values = g.to_i64();
    let forms = rp.color_forms(&values, &values)?;
    let v = rp.points() as i64;
    let per_color = forms
        .iter()
        .zip(rp.rel_sizes())
        .map(|(&f, &n)| Lambda::new(v * f, n as i64))
        .collect();
    Ok(InnerDistribution { per_color, unit })
}

/// Outcome of a successful equi-distribution test.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Equidistribution {
    pub params: Parameters,
    /// The partition has no non-unit color, so `λ` is undetermined and
    /// reported as 0.
    pub vacuous: bool,
}

/// `Some((v, k, λ))` when every non-unit `λ_i` coincides.
pub fn is_equidistributed<V: Multiplicity>(
    rp: &RelationPartition,
    g: &MultiFunction<V>,
) -> Result<Option<Equidistribution>> {
    let dist = inner_distribution(rp, g)?;
    let v = rp.points();
    let k = g.mass();
    if dist.non_unit().next().is_none() {
        return Ok(Some(Equidistribution { params: Parameters::new(v, k, 0), vacuous: true }));
    }
    Ok(dist
        .flat_value()
        .map(|lambda| Equidistribution { params: Parameters { v, k, lambda }, vacuous: false }))
}

/// Fiber sums `(f_*g)(y) = Σ_{f(x) = y} g(x)`.
pub fn pushout<V: Multiplicity>(m: &QuotientMorphism, g: &MultiFunction<V>) -> Result<MultiFunction<V>> {
    if g.len() != m.source().points() {
        return arg(format!("function on {} points, source has {}", g.len(), m.source().points()));
    }
    m.fibers()
        .iter()
        .map(|fiber| {
            fiber.iter().try_fold(V::zero(), |acc, &x| {
                acc.checked_add(&g.values()[x])
                    .ok_or_else(|| crate::Error::Argument("pushout overflows the value type".into()))
            })
        })
        .collect::<Result<Vec<V>>>()
        .map(MultiFunction::new)
}

/// `(e, k, (v/e)·λ)`: the parameters a pushout onto `e` points carries.
pub fn pushed_parameters(p: Parameters, e: usize) -> Result<Parameters> {
    if e == 0 {
        return arg("target point count must be positive");
    }
    Ok(Parameters {
        v: e,
        k: p.k,
        lambda: p.lambda * Lambda::new(p.v as i64, e as i64),
    })
}

/// `k² − Σ g(x)² = λ(v − 1)`.
pub fn variance_identity_holds<V: Multiplicity>(p: Parameters, g: &MultiFunction<V>) -> bool {
    if g.len() != p.v {
        return false;
    }
    let k = p.k as i64;
    let lhs = k * k - g.sum_of_squares() as i64;
    Lambda::from_integer(lhs) == p.lambda * (p.v as i64 - 1)
}

/// Tests `D ⊆ G` on the thin scheme of `G`.
pub fn is_difference_set(group: &FiniteGroup, set: &[Element]) -> Result<Option<Parameters>> {
    let chi = MultiFunction::<u8>::characteristic(group.order(), set)?;
    let thin = thin_scheme(group);
    Ok(is_equidistributed(&thin, &chi)?.map(|e| e.params))
}

/// Same as [`is_difference_set`] with a prebuilt thin scheme.
pub fn is_difference_set_in(thin: &RelationPartition, set: &[Element]) -> Result<Option<Parameters>> {
    let chi = MultiFunction::<u8>::characteristic(thin.points(), set)?;
    Ok(is_equidistributed(thin, &chi)?.map(|e| e.params))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{builtin_group, cyclic_group, reference_chain, BuiltinGroup};
    use crate::scheme::{quotient_between, schurian_scheme};

    /// Difference-table oracle on `Z/n`.
    fn cyclic_differences(n: usize, set: &[usize]) -> Vec<usize> {
        let mut counts = vec![0; n];
        for &a in set {
            for &b in set {
                if a != b {
                    counts[(b + n - a) % n] += 1;
                }
            }
        }
        counts
    }

    #[test]
    fn quadratic_residues_mod_7() {
        let rp = thin_scheme(&cyclic_group(7).unwrap());
        let g = MultiFunction::<u8>::characteristic(7, &[1, 2, 4]).unwrap();
        let dist = inner_distribution(&rp, &g).unwrap();
        assert_eq!(dist.per_color()[0], Lambda::from_integer(3));
        assert!(dist.non_unit().all(|(_, l)| l == Lambda::from_integer(1)));
        assert_eq!(cyclic_differences(7, &[1, 2, 4])[1..], [1; 6]);
        let eq = is_equidistributed(&rp, &g).unwrap().unwrap();
        assert_eq!(eq.params, Parameters::new(7, 3, 1));
        assert!(!eq.vacuous);

        let bad = MultiFunction::<u8>::characteristic(7, &[1, 2, 3]).unwrap();
        assert_eq!(cyclic_differences(7, &[1, 2, 3])[1], 2);
        assert!(is_equidistributed(&rp, &bad).unwrap().is_none());
    }

    #[test]
    fn zero_and_single_point() {
        let rp = thin_scheme(&cyclic_group(5).unwrap());
        let dist = inner_distribution(&rp, &MultiFunction::<u32>::zero(5)).unwrap();
        assert!(dist.per_color().iter().all(|l| *l == Lambda::from_integer(0)));
        let one = thin_scheme(&cyclic_group(1).unwrap());
        let g = MultiFunction::<u32>::new(vec![35]);
        assert_eq!(inner_distribution(&one, &g).unwrap().per_color(), &[Lambda::from_integer(1225)]);
        let eq = is_equidistributed(&one, &g).unwrap().unwrap();
        assert!(eq.vacuous);
        assert_eq!(eq.params, Parameters::new(1, 35, 0));
        assert!(inner_distribution(&rp, &g).is_err());
    }

    #[test]
    fn constants_are_equidistributed() {
        let s5 = builtin_group(BuiltinGroup::S5).unwrap();
        for h in s5.all_subgroups().iter().filter(|h| h.order() >= 4) {
            let rp = schurian_scheme(&s5, h);
            if rp.colors() == 1 {
                continue;
            }
            let g = MultiFunction::<u32>::constant(rp.points(), 3);
            let eq = is_equidistributed(&rp, &g).unwrap().unwrap();
            assert_eq!(eq.params.lambda, Lambda::from_integer(9 * rp.points() as i64));
        }
    }

    #[test]
    fn pushouts_and_parameters() {
        let s5 = builtin_group(BuiltinGroup::S5).unwrap();
        let gens: Vec<usize> = reference_chain(BuiltinGroup::S5)[0]
            .iter()
            .map(|s| s5.resolve_str(s).unwrap())
            .collect();
        let h1 = s5.subgroup(&gens);
        let m = quotient_between(&s5, &h1, &s5.trivial_subgroup()).unwrap();
        let set: Vec<usize> = (0..120).step_by(3).take(35).collect();
        let chi = MultiFunction::<u16>::characteristic(120, &set).unwrap();
        let pushed = pushout(&m, &chi).unwrap();
        assert_eq!(pushed.len(), 5);
        assert_eq!(pushed.mass(), 35);
        assert!(pushed.max_value() <= 24);

        let id = quotient_between(&s5, &h1, &h1).unwrap();
        let g = MultiFunction::<u16>::new(vec![3, 8, 8, 8, 8]);
        assert_eq!(pushout(&id, &g).unwrap(), g);
        let top = quotient_between(&s5, &s5.whole(), &h1).unwrap();
        assert_eq!(pushout(&top, &g).unwrap().values(), &[35]);
        assert!(pushout(&top, &chi).is_err());

        let p = Parameters::new(120, 35, 10);
        assert_eq!(pushed_parameters(p, 5).unwrap(), Parameters::new(5, 35, 240));
        assert_eq!(pushed_parameters(p, 15).unwrap(), Parameters::new(15, 35, 80));
        assert_eq!(pushed_parameters(p, 120).unwrap(), p);
        assert!(pushed_parameters(p, 0).is_err());
    }

    #[test]
    fn variance_identity_examples() {
        let qr = MultiFunction::<u8>::characteristic(7, &[1, 2, 4]).unwrap();
        assert!(variance_identity_holds(Parameters::new(7, 3, 1), &qr));
        let level1 = MultiFunction::<u16>::new(vec![3, 8, 8, 8, 8]);
        assert!(variance_identity_holds(Parameters::new(5, 35, 240), &level1));
        assert!(!variance_identity_holds(Parameters::new(5, 35, 240), &MultiFunction::<u16>::new(vec![7; 5])));
        let p = Parameters::new(120, 35, 10);
        assert!(p.satisfies_counting_constraint());
        assert!(!Parameters::new(120, 35, 9).satisfies_counting_constraint());
    }

    #[test]
    fn classical_difference_sets() {
        let c7 = cyclic_group(7).unwrap();
        assert_eq!(is_difference_set(&c7, &[1, 2, 4]).unwrap(), Some(Parameters::new(7, 3, 1)));
        let c11 = cyclic_group(11).unwrap();
        let qr11 = [1, 3, 4, 5, 9];
        assert!(cyclic_differences(11, &qr11)[1..].iter().all(|&c| c == 2));
        assert_eq!(is_difference_set(&c11, &qr11).unwrap(), Some(Parameters::new(11, 5, 2)));
        assert_eq!(is_difference_set(&c11, &[]).unwrap(), Some(Parameters::new(11, 0, 0)));
        assert!(is_difference_set(&c11, &[11]).is_err());
        let full: Vec<usize> = (0..11).collect();
        let p = is_difference_set(&c11, &full).unwrap().unwrap();
        assert_eq!(p, Parameters::new(11, 11, 11));
        assert!(p.is_trivial());
    }

    #[test]
    fn casts() {
        let g = MultiFunction::<u32>::new(vec![1, 300]);
        assert!(g.cast::<u8>().is_none());
        assert_eq!(g.cast::<u16>().unwrap().values(), &[1, 300]);
    }
}
