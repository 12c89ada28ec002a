//! Job documents: which group, which chain, which parameters.

use serde::{Deserialize, Serialize};

use diffset::group::{
    action_from_generators, builtin_group, cyclic_group, direct_product, group_from_permutations,
    reference_chain, semidirect_product, BuiltinGroup, ElementSpec, Permutation,
};
use diffset::search::SearchConfig;
use diffset::{FiniteGroup, Lambda, Parameters, Subgroup, SubgroupChain};

use crate::CliError;

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub group: GroupSpec,
    /// Generators of `H_1, H_2, ...`; `G` itself is implied. Defaults to the
    /// built-in chain for built-in groups.
    #[serde(default)]
    pub chain: Option<Vec<Vec<ElementJson>>>,
    pub params: ParamsSpec,
    #[serde(default)]
    pub config: ConfigSpec,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupSpec {
    Builtin(String),
    Cyclic(usize),
    /// Image arrays over the points `1..m`.
    PermutationGenerators(Vec<Vec<u32>>),
    Product(Box<GroupSpec>, Box<GroupSpec>),
    Semidirect(SemidirectSpec),
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct SemidirectSpec {
    #[serde(alias = "n_spec")]
    pub n: Box<GroupSpec>,
    #[serde(alias = "k_spec")]
    pub k: Box<GroupSpec>,
    /// For each generating element of `K`, the images of every element of `N`
    /// it acts on, as `[x, φ(x)]` pairs over the generators of `N`.
    pub action: Vec<ActionSpec>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ActionSpec {
    pub k: ElementJson,
    pub images: Vec<(ElementJson, ElementJson)>,
}

/// An element as an index, a label or word, or a tuple for products.
#[derive(Clone, Debug, Deserialize, Serialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum ElementJson {
    Index(i64),
    Text(String),
    Tuple(Vec<ElementJson>),
}

impl ElementJson {
    pub fn to_spec(&self) -> ElementSpec {
        match self {
            ElementJson::Index(i) => ElementSpec::Index(*i),
            ElementJson::Text(s) => ElementSpec::Text(s.clone()),
            ElementJson::Tuple(parts) => ElementSpec::Tuple(parts.iter().map(ElementJson::to_spec).collect()),
        }
    }
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsSpec {
    pub v: usize,
    pub k: u64,
    pub lambda: LambdaJson,
}

/// An integer or a `"p/q"` string.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(untagged)]
pub enum LambdaJson {
    Integer(i64),
    Text(String),
}

impl LambdaJson {
    pub fn value(&self) -> Result<Lambda, CliError> {
        match self {
            LambdaJson::Integer(n) => Ok(Lambda::from_integer(*n)),
            LambdaJson::Text(s) => parse_lambda(s),
        }
    }
}

pub fn parse_lambda(text: &str) -> Result<Lambda, CliError> {
    let bad = || CliError::Spec(format!("params.lambda: cannot parse {text:?}"));
    let text = text.trim();
    match text.split_once('/') {
        Some((p, q)) => {
            let p: i64 = p.trim().parse().map_err(|_| bad())?;
            let q: i64 = q.trim().parse().map_err(|_| bad())?;
            if q == 0 {
                return Err(bad());
            }
            Ok(Lambda::new(p, q))
        }
        None => text.parse::<i64>().map(Lambda::from_integer).map_err(|_| bad()),
    }
}

#[derive(Clone, Debug, Default, Deserialize, Serialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct ConfigSpec {
    pub reduce_by_equivalence: Option<bool>,
    #[serde(alias = "workers")]
    pub parallel_workers: Option<usize>,
    pub node_budget: Option<u64>,
    pub emit_candidates: Option<bool>,
}

impl ConfigSpec {
    pub fn to_config(&self) -> Result<SearchConfig, CliError> {
        let mut config = SearchConfig::default();
        if let Some(r) = self.reduce_by_equivalence {
            config.reduce_by_equivalence = r;
        }
        if let Some(w) = self.parallel_workers {
            if w == 0 {
                return Err(CliError::Spec("config.parallelWorkers must be at least 1".into()));
            }
            config.workers = w;
        }
        config.node_budget = self.node_budget;
        config.emit_candidates = self.emit_candidates.unwrap_or(false);
        Ok(config)
    }
}

fn field<T>(name: &str, r: diffset::Result<T>) -> Result<T, CliError> {
    r.map_err(|e| match e {
        diffset::Error::Resource(m) => CliError::Resource(format!("{name}: {m}")),
        other => CliError::Spec(format!("{name}: {other}")),
    })
}

pub fn parse_builtin(name: &str) -> Result<BuiltinGroup, CliError> {
    name.parse().map_err(|_| {
        let known: Vec<&str> = BuiltinGroup::ALL.iter().map(|b| b.name()).collect();
        CliError::Spec(format!("group.builtin: unknown group {name:?} (known: {})", known.join(", ")))
    })
}

impl GroupSpec {
    pub fn build(&self) -> Result<FiniteGroup, CliError> {
        self.build_at("group")
    }

    fn build_at(&self, path: &str) -> Result<FiniteGroup, CliError> {
        match self {
            GroupSpec::Builtin(name) => field(path, builtin_group(parse_builtin(name)?)),
            GroupSpec::Cyclic(n) => field(&format!("{path}.cyclic"), cyclic_group(*n)),
            GroupSpec::PermutationGenerators(gens) => {
                let path = format!("{path}.permutation_generators");
                let perms = gens
                    .iter()
                    .enumerate()
                    .map(|(i, images)| field(&format!("{path}[{i}]"), Permutation::from_one_based(images)))
                    .collect::<Result<Vec<_>, _>>()?;
                field(&path, group_from_permutations(&perms))
            }
            GroupSpec::Product(a, b) => {
                let a = a.build_at(&format!("{path}.product[0]"))?;
                let b = b.build_at(&format!("{path}.product[1]"))?;
                field(&format!("{path}.product"), direct_product(&a, &b))
            }
            GroupSpec::Semidirect(s) => {
                let path = format!("{path}.semidirect");
                let n = s.n.build_at(&format!("{path}.n"))?;
                let k = s.k.build_at(&format!("{path}.k"))?;
                let mut actions = Vec::with_capacity(s.action.len());
                for (i, a) in s.action.iter().enumerate() {
                    let at = format!("{path}.action[{i}]");
                    let kg = field(&format!("{at}.k"), k.resolve(&a.k.to_spec()))?;
                    let mut gens = Vec::with_capacity(a.images.len());
                    let mut imgs = Vec::with_capacity(a.images.len());
                    for (j, (x, y)) in a.images.iter().enumerate() {
                        gens.push(field(&format!("{at}.images[{j}]"), n.resolve(&x.to_spec()))?);
                        imgs.push(field(&format!("{at}.images[{j}]"), n.resolve(&y.to_spec()))?);
                    }
                    let phi = field(&at, n.extend_homomorphism(&gens, &n, &imgs))?;
                    actions.push((kg, phi));
                }
                let table = field(&format!("{path}.action"), action_from_generators(&n, &k, &actions))?;
                field(&path, semidirect_product(&n, &k, &table))
            }
        }
    }

    pub fn builtin(&self) -> Option<BuiltinGroup> {
        match self {
            GroupSpec::Builtin(name) => name.parse().ok(),
            _ => None,
        }
    }
}

pub fn resolve_elements(group: &FiniteGroup, path: &str, elems: &[ElementJson]) -> Result<Vec<usize>, CliError> {
    elems
        .iter()
        .enumerate()
        .map(|(i, e)| field(&format!("{path}[{i}]"), group.resolve(&e.to_spec())))
        .collect()
}

pub fn resolve_subgroup(group: &FiniteGroup, path: &str, gens: &[ElementJson]) -> Result<Subgroup, CliError> {
    Ok(group.subgroup(&resolve_elements(group, path, gens)?))
}

/// Everything a search needs, validated.
pub struct Job {
    pub group: FiniteGroup,
    pub chain: SubgroupChain,
    pub params: Parameters,
    pub config: SearchConfig,
}

impl JobSpec {
    pub fn from_json(text: &str) -> Result<JobSpec, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Spec(format!("spec: {e}")))
    }

    pub fn resolve(&self) -> Result<Job, CliError> {
        let group = self.group.build()?;
        let chain_gens: Vec<Vec<ElementJson>> = match (&self.chain, self.group.builtin()) {
            (Some(c), _) => c.clone(),
            (None, Some(b)) => reference_chain(b)
                .iter()
                .map(|level| level.iter().map(|s| ElementJson::Text(s.to_string())).collect())
                .collect(),
            (None, None) => return Err(CliError::Spec("chain: required unless the group is built in".into())),
        };
        let mut subgroups = vec![group.whole()];
        for (i, gens) in chain_gens.iter().enumerate() {
            subgroups.push(resolve_subgroup(&group, &format!("chain[{i}]"), gens)?);
        }
        let chain = field("chain", SubgroupChain::new(&group, subgroups))?;
        let params = Parameters { v: self.params.v, k: self.params.k, lambda: self.params.lambda.value()? };
        if params.v != group.order() {
            return Err(CliError::Spec(format!(
                "params.v: {} does not match the group order {}",
                params.v,
                group.order()
            )));
        }
        Ok(Job { group, chain, params, config: self.config.to_config()? })
    }
}

/// A group given on the command line: JSON, a built-in name, or `C<n>`.
pub fn group_from_arg(text: &str) -> Result<GroupSpec, CliError> {
    let t = text.trim();
    if t.starts_with('{') {
        return serde_json::from_str(t).map_err(|e| CliError::Spec(format!("group: {e}")));
    }
    if let Some(n) = t.strip_prefix(['C', 'c']).and_then(|n| n.parse::<usize>().ok()) {
        return Ok(GroupSpec::Cyclic(n));
    }
    parse_builtin(t).map(|b| GroupSpec::Builtin(b.name().to_string()))
}

/// Elements given on the command line: a JSON array, or comma-separated
/// indices.
pub fn elements_from_arg(name: &str, text: &str) -> Result<Vec<ElementJson>, CliError> {
    let t = text.trim();
    if t.starts_with('[') {
        return serde_json::from_str(t).map_err(|e| CliError::Spec(format!("{name}: {e}")));
    }
    if t.is_empty() {
        return Ok(Vec::new());
    }
    t.split(',')
        .map(|s| {
            s.trim()
                .parse::<i64>()
                .map(ElementJson::Index)
                .map_err(|_| CliError::Spec(format!("{name}: expected a JSON array or comma-separated indices")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_groups() {
        let job = JobSpec::from_json(
            r#"{"group": {"cyclic": 7}, "chain": [[]], "params": {"v": 7, "k": 3, "lambda": 1}}"#,
        )
        .unwrap();
        let job = job.resolve().unwrap();
        assert_eq!(job.chain.orders(), [7, 1]);

        let s3 = GroupSpec::PermutationGenerators(vec![vec![2, 3, 1], vec![2, 1, 3]]).build().unwrap();
        assert_eq!(s3.order(), 6);

        let p: GroupSpec = serde_json::from_str(r#"{"product": [{"cyclic": 2}, {"cyclic": 3}]}"#).unwrap();
        assert_eq!(p.build().unwrap().order(), 6);
    }

    #[test]
    fn semidirect_dihedral() {
        let spec: GroupSpec = serde_json::from_str(
            r#"{"semidirect": {"n_spec": {"cyclic": 5}, "k_spec": {"cyclic": 2},
                "action": [{"k": 1, "images": [[1, 4]]}]}}"#,
        )
        .unwrap();
        let d10 = spec.build().unwrap();
        assert_eq!(d10.order(), 10);
        assert!(!d10.is_abelian());
    }

    #[test]
    fn errors_name_the_field() {
        let bad = JobSpec::from_json(r#"{"group": {"cyclic": 7}, "chain": [[9]], "params": {"v": 7, "k": 3, "lambda": 1}}"#)
            .unwrap()
            .resolve();
        match bad {
            Err(CliError::Spec(m)) => assert!(m.starts_with("chain[0][0]"), "{m}"),
            _ => panic!("expected a spec error"),
        }
        let bad = JobSpec::from_json(r#"{"group": {"cyclic": 7}, "chain": [[]], "params": {"v": 8, "k": 3, "lambda": 1}}"#)
            .unwrap()
            .resolve();
        assert!(matches!(bad, Err(CliError::Spec(m)) if m.starts_with("params.v")));
        assert!(JobSpec::from_json(r#"{"group": {"cyclic": 7}}"#).is_err());
        assert!(matches!(group_from_arg("nope"), Err(CliError::Spec(_))));
    }

    #[test]
    fn lambda_forms() {
        assert_eq!(parse_lambda("3/6").unwrap(), Lambda::new(1, 2));
        assert_eq!(parse_lambda(" 10 ").unwrap(), Lambda::from_integer(10));
        assert!(parse_lambda("1/0").is_err());
        assert!(parse_lambda("x").is_err());
    }

    #[test]
    fn builtin_chain_default() {
        let job = JobSpec::from_json(r#"{"group": {"builtin": "G1"}, "params": {"v": 120, "k": 35, "lambda": 10}}"#)
            .unwrap()
            .resolve()
            .unwrap();
        assert_eq!(job.chain.orders(), [120, 24, 8, 4]);
    }

    #[test]
    fn command_line_shorthands() {
        assert!(matches!(group_from_arg("C7").unwrap(), GroupSpec::Cyclic(7)));
        assert!(matches!(group_from_arg("s5").unwrap(), GroupSpec::Builtin(_)));
        assert_eq!(
            elements_from_arg("set", "1, 2,4").unwrap(),
            vec![ElementJson::Index(1), ElementJson::Index(2), ElementJson::Index(4)]
        );
        assert_eq!(elements_from_arg("set", r#"["(1,2)"]"#).unwrap(), vec![ElementJson::Text("(1,2)".into())]);
    }
}
