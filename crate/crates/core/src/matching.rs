//! Matching functions over parameter instances and their collapse into
//! archetypes, the nodes of a dependency network.
//!
//! Archetypes are the classes of the transitive closure of a match relation.
//! The general route is pairwise matching followed by disjoint-set closure;
//! matchers whose relation is equality of a derived key take a hashing
//! shortcut that yields the same classes.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::collection::{NamePolicy, ParameterInstance, Role, ServiceCollection};
use crate::disjoint_set::DisjointSet;
use crate::error::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MatcherKind {
    /// Names are the exact same strings.
    SyntacticEqual,
    /// Annotated concepts are the exact same URI.
    SemanticExact,
}

impl MatcherKind {
    pub fn as_str(self) -> &'static str {
        match self {
            MatcherKind::SyntacticEqual => "syntactic-equal",
            MatcherKind::SemanticExact => "semantic-exact",
        }
    }

    /// Conventional network label: `N^Eq` or `N^Ex`.
    pub fn network_label(self) -> &'static str {
        match self {
            MatcherKind::SyntacticEqual => "N^Eq",
            MatcherKind::SemanticExact => "N^Ex",
        }
    }
}

impl fmt::Display for MatcherKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MatcherKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "syntactic-equal" => Ok(MatcherKind::SyntacticEqual),
            "semantic-exact" => Ok(MatcherKind::SemanticExact),
            other => Err(Error::InvalidArgument(format!("unknown matcher `{other}`"))),
        }
    }
}

/// A binary, symmetric matching function.
pub trait MatchFunction: Sync {
    fn matches(&self, a: &ParameterInstance, b: &ParameterInstance) -> bool;

    /// Whether the relation is equality of [`MatchFunction::key`], which
    /// enables the hashing path in [`build_archetypes_with`].
    fn is_keyed(&self) -> bool {
        false
    }

    /// Equivalence key of an instance, or `None` when the instance matches
    /// only itself. Only consulted when [`MatchFunction::is_keyed`].
    fn key(&self, _p: &ParameterInstance) -> Option<String> {
        None
    }
}

/// One of the shipped matchers plus the name normalization policy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Matcher {
    pub kind: MatcherKind,
    #[serde(default)]
    pub names: NamePolicy,
}

impl Matcher {
    pub fn new(kind: MatcherKind) -> Self {
        Self {
            kind,
            names: NamePolicy::default(),
        }
    }

    pub fn syntactic() -> Self {
        Self::new(MatcherKind::SyntacticEqual)
    }

    pub fn semantic() -> Self {
        Self::new(MatcherKind::SemanticExact)
    }

    pub fn with_names(mut self, names: NamePolicy) -> Self {
        self.names = names;
        self
    }
}

impl From<MatcherKind> for Matcher {
    fn from(kind: MatcherKind) -> Self {
        Matcher::new(kind)
    }
}

impl MatchFunction for Matcher {
    fn matches(&self, a: &ParameterInstance, b: &ParameterInstance) -> bool {
        match self.kind {
            MatcherKind::SyntacticEqual => {
                self.names.normalize(&a.name) == self.names.normalize(&b.name)
            }
            MatcherKind::SemanticExact => match (&a.concept, &b.concept) {
                (Some(x), Some(y)) => x.trim() == y.trim(),
                // an unannotated instance matches only itself
                _ => std::ptr::eq(a, b),
            },
        }
    }

    fn is_keyed(&self) -> bool {
        true
    }

    fn key(&self, p: &ParameterInstance) -> Option<String> {
        match self.kind {
            MatcherKind::SyntacticEqual => Some(self.names.normalize(&p.name).into_owned()),
            MatcherKind::SemanticExact => p.concept.as_ref().map(|c| c.trim().to_string()),
        }
    }
}

pub fn matches(kind: MatcherKind, a: &ParameterInstance, b: &ParameterInstance) -> bool {
    Matcher::new(kind).matches(a, b)
}

/// Reference to a parameter instance by its position in the collection's
/// canonical instance order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceRef {
    pub index: usize,
    pub operation_id: String,
    pub role: Role,
    pub name: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Archetype {
    pub id: usize,
    /// Most frequent member name, ties broken lexicographically.
    pub label: String,
    /// Equivalence key: normalized name or concept URI.
    pub key: String,
    pub members: Vec<InstanceRef>,
    pub instance_count: usize,
}

/// Archetypes of a collection plus the total instance → archetype map,
/// indexed by canonical instance position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Archetypes {
    pub archetypes: Vec<Archetype>,
    pub instance_map: Vec<usize>,
}

impl Archetypes {
    pub fn len(&self) -> usize {
        self.archetypes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.archetypes.is_empty()
    }
}

/// Sentinel key for an instance that only matches itself.
pub fn singleton_key(index: usize) -> String {
    format!("<unannotated:{index}>")
}

pub fn build_archetypes(c: &ServiceCollection, matcher: impl Into<Matcher>) -> Archetypes {
    build_archetypes_with(c, &matcher.into())
}

/// Builds archetypes for any matching function, using the hashing path when
/// the function is keyed and pairwise closure otherwise.
pub fn build_archetypes_with<M: MatchFunction + ?Sized>(
    c: &ServiceCollection,
    m: &M,
) -> Archetypes {
    let instances: Vec<&ParameterInstance> = c.instances().collect();
    if m.is_keyed() {
        let keys: Vec<String> = instances
            .iter()
            .enumerate()
            .map(|(i, p)| m.key(p).unwrap_or_else(|| singleton_key(i)))
            .collect();
        let mut first_seen: HashMap<&str, usize> = HashMap::new();
        let roots: Vec<usize> = keys
            .iter()
            .enumerate()
            .map(|(i, k)| *first_seen.entry(k.as_str()).or_insert(i))
            .collect();
        assemble(&instances, &roots, |root| keys[root].clone())
    } else {
        let roots = pairwise_roots(&instances, m);
        assemble(&instances, &roots, |root| {
            instances[root].name.trim().to_string()
        })
    }
}

/// Pairwise O(n²) matching with disjoint-set closure. Always available,
/// regardless of whether the matcher is keyed.
pub fn build_archetypes_pairwise<M: MatchFunction + ?Sized>(
    c: &ServiceCollection,
    m: &M,
) -> Archetypes {
    let instances: Vec<&ParameterInstance> = c.instances().collect();
    let roots = pairwise_roots(&instances, m);
    let keyed = m.is_keyed();
    assemble(&instances, &roots, |root| {
        if keyed {
            m.key(instances[root])
                .unwrap_or_else(|| singleton_key(root))
        } else {
            instances[root].name.trim().to_string()
        }
    })
}

fn pairwise_roots<M: MatchFunction + ?Sized>(
    instances: &[&ParameterInstance],
    m: &M,
) -> Vec<usize> {
    let mut ds = DisjointSet::new(instances.len());
    for i in 0..instances.len() {
        for j in (i + 1)..instances.len() {
            if m.matches(instances[i], instances[j]) {
                ds.union(i, j);
            }
        }
    }
    (0..instances.len()).map(|i| ds.find(i)).collect()
}

/// `roots[i]` is the smallest instance index of i's class; archetype ids are
/// assigned in order of first appearance.
fn assemble(
    instances: &[&ParameterInstance],
    roots: &[usize],
    key_of_root: impl Fn(usize) -> String,
) -> Archetypes {
    let mut id_of_root: HashMap<usize, usize> = HashMap::new();
    let mut archetypes: Vec<Archetype> = Vec::new();
    let mut instance_map = Vec::with_capacity(instances.len());
    for (i, p) in instances.iter().enumerate() {
        let root = roots[i];
        let id = *id_of_root.entry(root).or_insert_with(|| {
            archetypes.push(Archetype {
                id: archetypes.len(),
                label: String::new(),
                key: key_of_root(root),
                members: Vec::new(),
                instance_count: 0,
            });
            archetypes.len() - 1
        });
        let a = &mut archetypes[id];
        a.members.push(InstanceRef {
            index: i,
            operation_id: p.operation_id.clone(),
            role: p.role,
            name: p.name.clone(),
        });
        a.instance_count += 1;
        instance_map.push(id);
    }
    for a in &mut archetypes {
        a.label = majority_label(&a.members);
    }
    Archetypes {
        archetypes,
        instance_map,
    }
}

fn majority_label(members: &[InstanceRef]) -> String {
    let mut counts: HashMap<&str, usize> = HashMap::new();
    for m in members {
        *counts.entry(m.name.trim()).or_default() += 1;
    }
    counts
        .into_iter()
        .max_by(|(na, ca), (nb, cb)| ca.cmp(cb).then_with(|| nb.cmp(na)))
        .map(|(n, _)| n.to_string())
        .unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::collection::{CollectionBuilder, Param};

    fn inst(name: &str, concept: Option<&str>) -> ParameterInstance {
        ParameterInstance {
            name: name.into(),
            xsd_type: None,
            concept: concept.map(str::to_string),
            role: Role::Input,
            operation_id: "op".into(),
        }
    }

    #[test]
    fn syntactic_distinguishes_numbered_names() {
        let a = inst("_AUTHOR", Some("#author"));
        let b = inst("_AUTHOR1", Some("#author"));
        assert!(!matches(MatcherKind::SyntacticEqual, &a, &b));
        assert!(matches(MatcherKind::SemanticExact, &a, &b));
    }

    #[test]
    fn syntactic_conflates_generic_names() {
        let a = inst("PARAMETER", Some("#price"));
        let b = inst("PARAMETER", Some("#country"));
        assert!(matches(MatcherKind::SyntacticEqual, &a, &b));
        assert!(!matches(MatcherKind::SemanticExact, &a, &b));
    }

    #[test]
    fn reflexive_including_unannotated() {
        let p = inst("x", None);
        let q = inst("x", None);
        for kind in [MatcherKind::SyntacticEqual, MatcherKind::SemanticExact] {
            assert!(matches(kind, &p, &p));
        }
        assert!(!matches(MatcherKind::SemanticExact, &p, &q));
    }

    #[test]
    fn concept_comparison_trims() {
        let a = inst("a", Some(" http://x#c"));
        let b = inst("b", Some("http://x#c  "));
        assert!(matches(MatcherKind::SemanticExact, &a, &b));
    }

    fn author_fixture() -> ServiceCollection {
        CollectionBuilder::new()
            .operation(
                "op",
                [
                    Param::named("_AUTHOR").with_concept("#author"),
                    Param::named("_AUTHOR1").with_concept("#author"),
                ],
                [Param::named("_AUTHOR2").with_concept("#author")],
            )
            .build()
            .unwrap()
    }

    #[test]
    fn author_archetypes() {
        let c = author_fixture();
        assert_eq!(build_archetypes(&c, MatcherKind::SyntacticEqual).len(), 3);
        let sem = build_archetypes(&c, MatcherKind::SemanticExact);
        assert_eq!(sem.len(), 1);
        assert_eq!(sem.archetypes[0].key, "#author");
        assert_eq!(sem.archetypes[0].instance_count, 3);
        assert_eq!(sem.instance_map, vec![0, 0, 0]);
    }

    #[test]
    fn single_instance_single_archetype() {
        let c = CollectionBuilder::new()
            .operation("op", ["x"], Vec::<Param>::new())
            .build()
            .unwrap();
        let a = build_archetypes(&c, MatcherKind::SyntacticEqual);
        assert_eq!(a.len(), 1);
        assert_eq!(a.archetypes[0].key, "x");
        assert_eq!(a.archetypes[0].label, "x");
    }

    #[test]
    fn unannotated_instances_become_singletons() {
        let c = CollectionBuilder::new()
            .operation("op", ["x", "x"], [Param::named("y").with_concept("#y")])
            .build()
            .unwrap();
        let a = build_archetypes(&c, MatcherKind::SemanticExact);
        assert_eq!(a.len(), 3);
        assert_eq!(a.archetypes[0].key, singleton_key(0));
        assert_eq!(a.archetypes[1].key, singleton_key(1));
        assert_eq!(a, build_archetypes_pairwise(&c, &Matcher::semantic()));
    }

    #[test]
    fn label_is_majority_then_lexicographic() {
        let c = CollectionBuilder::new()
            .operation(
                "op",
                [
                    Param::named("b").with_concept("#k"),
                    Param::named("a").with_concept("#k"),
                    Param::named("b").with_concept("#k"),
                ],
                [
                    Param::named("c").with_concept("#j"),
                    Param::named("a").with_concept("#j"),
                ],
            )
            .build()
            .unwrap();
        let a = build_archetypes(&c, MatcherKind::SemanticExact);
        assert_eq!(a.archetypes[0].label, "b");
        assert_eq!(a.archetypes[1].label, "a");
    }

    #[test]
    fn case_folding_policy() {
        let c = CollectionBuilder::new()
            .operation("op", ["Price", " price"], Vec::<Param>::new())
            .build()
            .unwrap();
        assert_eq!(build_archetypes(&c, Matcher::syntactic()).len(), 2);
        let folded = Matcher::syntactic().with_names(NamePolicy { case_fold: true });
        assert_eq!(build_archetypes(&c, folded).len(), 1);
    }

    /// Non-transitive: first letters adjacent in the alphabet.
    struct Adjacent;

    impl MatchFunction for Adjacent {
        fn matches(&self, a: &ParameterInstance, b: &ParameterInstance) -> bool {
            let (x, y) = (a.name.as_bytes()[0], b.name.as_bytes()[0]);
            x.abs_diff(y) <= 1
        }
    }

    #[test]
    fn non_transitive_matcher_is_closed() {
        let c = CollectionBuilder::new()
            .operation("op", ["a", "c", "b"], ["x"])
            .build()
            .unwrap();
        let a = build_archetypes_with(&c, &Adjacent);
        assert_eq!(a.len(), 2);
        assert_eq!(a.instance_map, vec![0, 0, 0, 1]);
    }
}
