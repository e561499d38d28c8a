//! The canonical collection format: one UTF-8 JSON document.
//!
//! ```json
//! {"services":[{"name":"s","domain":"travel","operations":[
//!     {"name":"op","inputs":[{"name":"a","type":"xsd:string","concept":"#a"}],
//!      "outputs":[{"name":"b"}]}]}]}
//! ```
//!
//! `id` is accepted on services and operations. When absent, service ids are
//! `s<index>` and operation ids `<service id>/o<index>`. The writer always
//! emits ids so a written file reloads to an identical collection.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{
    default_operation_id, default_service_id, Operation, ParameterInstance, Role, Service,
    ServiceCollection, SourceFormat,
};
use crate::error::{Error, Result};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCollection {
    services: Vec<RawService>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawService {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    id: Option<String>,
    name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    domain: Option<String>,
    #[serde(default)]
    operations: Vec<RawOperation>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOperation {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    id: Option<String>,
    name: Option<String>,
    #[serde(default)]
    inputs: Vec<RawParam>,
    #[serde(default)]
    outputs: Vec<RawParam>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawParam {
    name: Option<String>,
    #[serde(rename = "type", default, skip_serializing_if = "Option::is_none")]
    xsd_type: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    concept: Option<String>,
}

pub fn load_canonical(path: impl AsRef<Path>) -> Result<ServiceCollection> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_canonical(&text, path)
}

/// Parses a canonical document. `origin` is only used in error messages.
pub fn parse_canonical(text: &str, origin: impl AsRef<Path>) -> Result<ServiceCollection> {
    let origin = origin.as_ref();
    let raw: RawCollection = serde_json::from_str(text).map_err(|e| Error::Parse {
        path: origin.to_path_buf(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let schema = |location: String, message: &str| Error::Schema {
        path: origin.to_path_buf(),
        location,
        message: message.to_string(),
    };

    let mut services = Vec::with_capacity(raw.services.len());
    for (si, rs) in raw.services.into_iter().enumerate() {
        let loc = format!("services[{si}]");
        let name = required_name(rs.name, || schema(loc.clone(), "missing name"))?;
        let service_id = rs.id.unwrap_or_else(|| default_service_id(si));
        let mut operations = Vec::with_capacity(rs.operations.len());
        for (oi, ro) in rs.operations.into_iter().enumerate() {
            let loc = format!("{loc}.operations[{oi}]");
            let name = required_name(ro.name, || schema(loc.clone(), "missing name"))?;
            let id = ro
                .id
                .unwrap_or_else(|| default_operation_id(&service_id, oi));
            let params = |list: Vec<RawParam>, role: Role, field: &str| {
                list.into_iter()
                    .enumerate()
                    .map(|(pi, rp)| {
                        let loc = format!("{loc}.{field}[{pi}]");
                        let name = required_name(rp.name, || schema(loc.clone(), "missing name"))?;
                        let concept = match rp.concept {
                            Some(c) if c.trim().is_empty() => {
                                return Err(schema(loc, "empty concept"))
                            }
                            other => other,
                        };
                        Ok(ParameterInstance {
                            name,
                            xsd_type: rp.xsd_type,
                            concept,
                            role,
                            operation_id: id.clone(),
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            };
            let inputs = params(ro.inputs, Role::Input, "inputs")?;
            let outputs = params(ro.outputs, Role::Output, "outputs")?;
            operations.push(Operation {
                id,
                service_id: service_id.clone(),
                name,
                inputs,
                outputs,
            });
        }
        services.push(Service {
            id: service_id,
            name,
            domain_label: rs.domain,
            operations,
        });
    }
    ServiceCollection::new(services, SourceFormat::Canonical)
}

fn required_name(name: Option<String>, err: impl FnOnce() -> Error) -> Result<String> {
    match name {
        Some(n) if !n.trim().is_empty() => Ok(n),
        _ => Err(err()),
    }
}

/// Serializes a collection to the canonical JSON format.
pub fn write_canonical(c: &ServiceCollection) -> String {
    let raw = RawCollection {
        services: c
            .services()
            .iter()
            .map(|s| RawService {
                id: Some(s.id.clone()),
                name: Some(s.name.clone()),
                domain: s.domain_label.clone(),
                operations: s
                    .operations
                    .iter()
                    .map(|op| RawOperation {
                        id: Some(op.id.clone()),
                        name: Some(op.name.clone()),
                        inputs: op.inputs.iter().map(raw_param).collect(),
                        outputs: op.outputs.iter().map(raw_param).collect(),
                    })
                    .collect(),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&raw).expect("collection serializes")
}

fn raw_param(p: &ParameterInstance) -> RawParam {
    RawParam {
        name: Some(p.name.clone()),
        xsd_type: p.xsd_type.clone(),
        concept: p.concept.clone(),
    }
}
