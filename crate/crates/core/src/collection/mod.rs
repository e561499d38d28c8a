//! Service collections: services, their operations and the parameter
//! instances those operations consume and produce.
//!
//! Two ingestion routes exist: a JSON document ([`canonical`]) and a
//! constrained WSDL 1.1 + SAWSDL subset ([`sawsdl`]). Both end in
//! [`ServiceCollection::new`], which enforces the structural invariants.

pub mod canonical;
pub mod sawsdl;

use std::borrow::Cow;
use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use canonical::{load_canonical, parse_canonical, write_canonical};
pub use sawsdl::{load_sawsdl, parse_sawsdl_document};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Input,
    Output,
}

/// One occurrence of a parameter in an operation's input or output list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParameterInstance {
    pub name: String,
    pub xsd_type: Option<String>,
    /// Ontology concept URI from a model-reference annotation.
    pub concept: Option<String>,
    pub role: Role,
    pub operation_id: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Operation {
    pub id: String,
    pub service_id: String,
    pub name: String,
    pub inputs: Vec<ParameterInstance>,
    pub outputs: Vec<ParameterInstance>,
}

impl Operation {
    pub fn instance_count(&self) -> usize {
        self.inputs.len() + self.outputs.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Service {
    pub id: String,
    pub name: String,
    /// Thematic domain (e.g. "travel"), when the source provides one.
    pub domain_label: Option<String>,
    pub operations: Vec<Operation>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SourceFormat {
    Canonical,
    Sawsdl,
}

/// A validated, immutable collection of service descriptions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ServiceCollection {
    services: Vec<Service>,
    source_format: SourceFormat,
    instance_count: usize,
}

impl ServiceCollection {
    /// Validates ids, names and concepts and computes the instance count.
    pub fn new(services: Vec<Service>, source_format: SourceFormat) -> Result<Self> {
        let mut service_ids = HashSet::new();
        let mut operation_ids = HashSet::new();
        let mut instance_count = 0;
        for service in &services {
            if !service_ids.insert(service.id.as_str()) {
                return Err(Error::DuplicateId {
                    kind: "service",
                    id: service.id.clone(),
                });
            }
            for op in &service.operations {
                if !operation_ids.insert(op.id.as_str()) {
                    return Err(Error::DuplicateId {
                        kind: "operation",
                        id: op.id.clone(),
                    });
                }
                if op.service_id != service.id {
                    return Err(Error::InvalidArgument(format!(
                        "operation `{}` names service `{}` but is listed under `{}`",
                        op.id, op.service_id, service.id
                    )));
                }
                for (list, role) in [(&op.inputs, Role::Input), (&op.outputs, Role::Output)] {
                    for p in list {
                        check_instance(p, op, role)?;
                    }
                }
                instance_count += op.instance_count();
            }
        }
        Ok(Self {
            services,
            source_format,
            instance_count,
        })
    }

    pub fn empty(source_format: SourceFormat) -> Self {
        Self {
            services: Vec::new(),
            source_format,
            instance_count: 0,
        }
    }

    pub fn services(&self) -> &[Service] {
        &self.services
    }

    pub fn source_format(&self) -> SourceFormat {
        self.source_format
    }

    pub fn instance_count(&self) -> usize {
        self.instance_count
    }

    pub fn operations(&self) -> impl Iterator<Item = &Operation> {
        self.services.iter().flat_map(|s| s.operations.iter())
    }

    /// All parameter instances in canonical order: services in order,
    /// operations in declaration order, inputs before outputs.
    pub fn instances(&self) -> impl Iterator<Item = &ParameterInstance> {
        self.operations()
            .flat_map(|op| op.inputs.iter().chain(op.outputs.iter()))
    }

    pub fn into_services(self) -> Vec<Service> {
        self.services
    }
}

fn check_instance(p: &ParameterInstance, op: &Operation, role: Role) -> Result<()> {
    let bad = |message: String| {
        Err(Error::InvalidArgument(format!(
            "operation `{}`: {message}",
            op.id
        )))
    };
    if p.name.trim().is_empty() {
        return bad("parameter with empty name".into());
    }
    if p.role != role {
        return bad(format!("parameter `{}` listed with the wrong role", p.name));
    }
    if p.operation_id != op.id {
        return bad(format!(
            "parameter `{}` refers to operation `{}`",
            p.name, p.operation_id
        ));
    }
    if matches!(&p.concept, Some(c) if c.trim().is_empty()) {
        return bad(format!("parameter `{}` has an empty concept", p.name));
    }
    Ok(())
}

/// How raw parameter names are normalized before comparison.
///
/// Surrounding whitespace is always trimmed; case folding is opt-in.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamePolicy {
    pub case_fold: bool,
}

impl NamePolicy {
    pub fn normalize<'a>(&self, name: &'a str) -> Cow<'a, str> {
        let trimmed = name.trim();
        if self.case_fold {
            Cow::Owned(trimmed.to_lowercase())
        } else {
            Cow::Borrowed(trimmed)
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollectionStats {
    pub services: usize,
    pub operations: usize,
    pub instance_count: usize,
    pub distinct_names: usize,
    pub distinct_concepts: usize,
}

pub fn collection_stats(c: &ServiceCollection, policy: NamePolicy) -> CollectionStats {
    let mut names = HashSet::new();
    let mut concepts = HashSet::new();
    for p in c.instances() {
        names.insert(policy.normalize(&p.name));
        if let Some(concept) = &p.concept {
            concepts.insert(concept.trim());
        }
    }
    CollectionStats {
        services: c.services.len(),
        operations: c.operations().count(),
        instance_count: c.instance_count,
        distinct_names: names.len(),
        distinct_concepts: concepts.len(),
    }
}

/// Parameter description used when building collections by hand.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Param {
    pub name: String,
    pub xsd_type: Option<String>,
    pub concept: Option<String>,
}

impl Param {
    pub fn named(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            ..Self::default()
        }
    }

    pub fn with_concept(mut self, concept: impl Into<String>) -> Self {
        self.concept = Some(concept.into());
        self
    }

    pub fn with_type(mut self, xsd_type: impl Into<String>) -> Self {
        self.xsd_type = Some(xsd_type.into());
        self
    }
}

impl From<&str> for Param {
    fn from(name: &str) -> Self {
        Param::named(name)
    }
}

/// Programmatic construction of collections, with ids generated the same
/// way the canonical loader generates them when a file omits them.
#[derive(Debug, Default)]
pub struct CollectionBuilder {
    services: Vec<Service>,
}

impl CollectionBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn service(mut self, name: impl Into<String>) -> Self {
        let id = default_service_id(self.services.len());
        self.services.push(Service {
            id,
            name: name.into(),
            domain_label: None,
            operations: Vec::new(),
        });
        self
    }

    pub fn domain(mut self, label: impl Into<String>) -> Self {
        self.current().domain_label = Some(label.into());
        self
    }

    /// Adds an operation to the most recent service, creating an unnamed
    /// service first if there is none.
    pub fn operation<I, O>(mut self, name: impl Into<String>, inputs: I, outputs: O) -> Self
    where
        I: IntoIterator,
        I::Item: Into<Param>,
        O: IntoIterator,
        O::Item: Into<Param>,
    {
        let service = self.current();
        let id = default_operation_id(&service.id, service.operations.len());
        let make = |p: Param, role| ParameterInstance {
            name: p.name,
            xsd_type: p.xsd_type,
            concept: p.concept,
            role,
            operation_id: id.clone(),
        };
        let inputs = inputs
            .into_iter()
            .map(|p| make(p.into(), Role::Input))
            .collect();
        let outputs = outputs
            .into_iter()
            .map(|p| make(p.into(), Role::Output))
            .collect();
        service.operations.push(Operation {
            id: id.clone(),
            service_id: service.id.clone(),
            name: name.into(),
            inputs,
            outputs,
        });
        self
    }

    pub fn build(self) -> Result<ServiceCollection> {
        ServiceCollection::new(self.services, SourceFormat::Canonical)
    }

    fn current(&mut self) -> &mut Service {
        if self.services.is_empty() {
            let id = default_service_id(0);
            self.services.push(Service {
                id: id.clone(),
                name: id,
                domain_label: None,
                operations: Vec::new(),
            });
        }
        self.services.last_mut().expect("non-empty")
    }
}

pub(crate) fn default_service_id(index: usize) -> String {
    format!("s{index}")
}

pub(crate) fn default_operation_id(service_id: &str, index: usize) -> String {
    format!("{service_id}/o{index}")
}
