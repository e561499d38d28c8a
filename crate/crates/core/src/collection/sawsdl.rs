//! Reader for the WSDL 1.1 + SAWSDL subset.
//!
//! Each file holds one service. Operations come from `portType/operation`,
//! parameters from the parts of the referenced input and output messages.
//! A parameter's concept is the first `sawsdl:modelReference` found on the
//! part, then on the element it references, then on the type of that part or
//! element. `binding` and `service` sections are skipped; imports, policies,
//! WSDL 2.0 documents and unknown WSDL elements are rejected.

use std::collections::HashMap;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use roxmltree::{Document, Node};

use super::{Operation, ParameterInstance, Role, Service, ServiceCollection, SourceFormat};
use crate::error::{Error, Result};

const WSDL11_NS: &str = "http://schemas.xmlsoap.org/wsdl/";
const WSDL20_NS: &str = "http://www.w3.org/ns/wsdl";
const SAWSDL_NS: &str = "http://www.w3.org/ns/sawsdl";
const XSD_NS: &str = "http://www.w3.org/2001/XMLSchema";

const EXTENSIONS: [&str; 3] = ["wsdl", "sawsdl", "xml"];

/// Loads every description file in `dir`. Files in immediate subdirectories
/// are loaded too, with the subdirectory name as their domain label.
pub fn load_sawsdl(dir: impl AsRef<Path>) -> Result<ServiceCollection> {
    let dir = dir.as_ref();
    let mut files: Vec<(PathBuf, String, Option<String>)> = Vec::new();
    for entry in sorted_entries(dir)? {
        if entry.is_dir() {
            let domain = file_name(&entry);
            for inner in sorted_entries(&entry)? {
                if is_description(&inner) {
                    let id = format!("{domain}/{}", file_stem(&inner));
                    files.push((inner, id, Some(domain.clone())));
                }
            }
        } else if is_description(&entry) {
            let id = file_stem(&entry);
            files.push((entry, id, None));
        }
    }
    if files.is_empty() {
        log::warn!("{}: no description files found", dir.display());
        return Ok(ServiceCollection::empty(SourceFormat::Sawsdl));
    }

    let services = files
        .par_iter()
        .map(|(path, id, domain)| {
            let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
            parse_sawsdl_document(&text, path, id, domain.clone())
        })
        .collect::<Result<Vec<_>>>()?;
    ServiceCollection::new(services, SourceFormat::Sawsdl)
}

fn sorted_entries(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut entries = std::fs::read_dir(dir)
        .map_err(|e| Error::io(dir, e))?
        .map(|e| e.map(|e| e.path()).map_err(|err| Error::io(dir, err)))
        .collect::<Result<Vec<_>>>()?;
    entries.sort();
    Ok(entries)
}

fn is_description(path: &Path) -> bool {
    path.is_file()
        && path
            .extension()
            .and_then(|e| e.to_str())
            .is_some_and(|e| EXTENSIONS.contains(&e.to_ascii_lowercase().as_str()))
}

fn file_name(path: &Path) -> String {
    path.file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default()
}

fn file_stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default()
}

struct Part {
    name: String,
    element: Option<String>,
    type_ref: Option<String>,
    model_reference: Option<String>,
}

#[derive(Default)]
struct SchemaDecl {
    type_ref: Option<String>,
    model_reference: Option<String>,
}

struct PortOperation {
    name: String,
    input: Option<String>,
    output: Option<String>,
}

/// Parses one description document into a service with id `service_id`.
pub fn parse_sawsdl_document(
    text: &str,
    file: &Path,
    service_id: &str,
    domain_label: Option<String>,
) -> Result<Service> {
    let doc = Document::parse(text).map_err(|e| Error::Xml {
        file: file.to_path_buf(),
        message: e.to_string(),
    })?;
    let unsupported = |construct: String| Error::Unsupported {
        construct,
        file: file.to_path_buf(),
    };

    let root = doc.root_element();
    let root_ns = root.tag_name().namespace().unwrap_or("");
    if root_ns == WSDL20_NS || root.tag_name().name() == "description" {
        return Err(unsupported("WSDL 2.0 description".into()));
    }
    if root_ns != WSDL11_NS || root.tag_name().name() != "definitions" {
        return Err(unsupported(format!(
            "root element <{}>",
            root.tag_name().name()
        )));
    }
    if let Some(policy) = doc.descendants().find(|n| is_policy(n)) {
        return Err(unsupported(format!(
            "policy <{}>",
            policy.tag_name().name()
        )));
    }

    let mut elements: HashMap<String, SchemaDecl> = HashMap::new();
    let mut types: HashMap<String, SchemaDecl> = HashMap::new();
    let mut messages: HashMap<String, Vec<Part>> = HashMap::new();
    let mut port_ops: Vec<PortOperation> = Vec::new();

    for child in root.children().filter(Node::is_element) {
        let name = child.tag_name().name();
        if child.tag_name().namespace() != Some(WSDL11_NS) {
            return Err(unsupported(format!("extension element <{name}>")));
        }
        match name {
            "documentation" | "binding" | "service" => {}
            "types" => collect_schema(child, &mut elements, &mut types),
            "message" => {
                let msg_name = required_attr(child, "name", file)?;
                let mut parts = Vec::new();
                for part in child.children().filter(Node::is_element) {
                    match part.tag_name().name() {
                        "part" => parts.push(Part {
                            name: required_attr(part, "name", file)?,
                            element: part.attribute("element").map(str::to_string),
                            type_ref: part.attribute("type").map(str::to_string),
                            model_reference: model_reference(part),
                        }),
                        "documentation" => {}
                        other => return Err(unsupported(format!("message child <{other}>"))),
                    }
                }
                messages.insert(msg_name, parts);
            }
            "portType" => {
                for op in child.children().filter(Node::is_element) {
                    match op.tag_name().name() {
                        "operation" => port_ops.push(read_port_operation(op, file)?),
                        "documentation" => {}
                        other => return Err(unsupported(format!("portType child <{other}>"))),
                    }
                }
            }
            other => return Err(unsupported(format!("<{other}>"))),
        }
    }

    let mut operations: Vec<Operation> = Vec::with_capacity(port_ops.len());
    let mut seen: HashMap<String, usize> = HashMap::new();
    for pop in port_ops {
        let count = seen.entry(pop.name.clone()).or_insert(0);
        let id = if *count == 0 {
            format!("{service_id}/{}", pop.name)
        } else {
            format!("{service_id}/{}#{count}", pop.name)
        };
        *count += 1;

        let params = |message: &Option<String>, role: Role| -> Result<Vec<ParameterInstance>> {
            let Some(message) = message else {
                return Ok(Vec::new());
            };
            let parts = messages
                .get(local_name(message))
                .ok_or_else(|| Error::Schema {
                    path: file.to_path_buf(),
                    location: format!("operation `{}`", pop.name),
                    message: format!("unknown message `{message}`"),
                })?;
            Ok(parts
                .iter()
                .map(|part| resolve_part(part, &elements, &types, role, &id))
                .collect())
        };
        let inputs = params(&pop.input, Role::Input)?;
        let outputs = params(&pop.output, Role::Output)?;
        operations.push(Operation {
            id: id.clone(),
            service_id: service_id.to_string(),
            name: pop.name,
            inputs,
            outputs,
        });
    }

    let name = root
        .attribute("name")
        .map(str::to_string)
        .unwrap_or_else(|| service_id.to_string());
    Ok(Service {
        id: service_id.to_string(),
        name,
        domain_label,
        operations,
    })
}

fn is_policy(node: &Node) -> bool {
    node.is_element()
        && (matches!(node.tag_name().name(), "Policy" | "PolicyReference")
            || node
                .tag_name()
                .namespace()
                .is_some_and(|ns| ns.contains("ws-policy") || ns.ends_with("/policy")))
}

fn read_port_operation(op: Node, file: &Path) -> Result<PortOperation> {
    let mut out = PortOperation {
        name: required_attr(op, "name", file)?,
        input: None,
        output: None,
    };
    for child in op.children().filter(Node::is_element) {
        match child.tag_name().name() {
            "input" => out.input = Some(required_attr(child, "message", file)?),
            "output" => out.output = Some(required_attr(child, "message", file)?),
            // faults are not parameters
            "fault" | "documentation" => {}
            other => {
                return Err(Error::Unsupported {
                    construct: format!("operation child <{other}>"),
                    file: file.to_path_buf(),
                })
            }
        }
    }
    Ok(out)
}

fn collect_schema(
    types_node: Node,
    elements: &mut HashMap<String, SchemaDecl>,
    types: &mut HashMap<String, SchemaDecl>,
) {
    for schema in types_node
        .children()
        .filter(|n| n.is_element() && n.tag_name().namespace() == Some(XSD_NS))
    {
        for decl in schema.children().filter(Node::is_element) {
            let Some(name) = decl.attribute("name") else {
                continue;
            };
            let entry = SchemaDecl {
                type_ref: decl.attribute("type").map(str::to_string),
                model_reference: model_reference(decl),
            };
            match decl.tag_name().name() {
                "element" => {
                    elements.insert(name.to_string(), entry);
                }
                "complexType" | "simpleType" => {
                    types.insert(name.to_string(), entry);
                }
                _ => {}
            }
        }
    }
}

fn resolve_part(
    part: &Part,
    elements: &HashMap<String, SchemaDecl>,
    types: &HashMap<String, SchemaDecl>,
    role: Role,
    operation_id: &str,
) -> ParameterInstance {
    let element = part
        .element
        .as_deref()
        .and_then(|e| elements.get(local_name(e)));
    let type_ref = part
        .type_ref
        .clone()
        .or_else(|| element.and_then(|e| e.type_ref.clone()));
    let concept = part
        .model_reference
        .clone()
        .or_else(|| element.and_then(|e| e.model_reference.clone()))
        .or_else(|| {
            type_ref
                .as_deref()
                .and_then(|t| types.get(local_name(t)))
                .and_then(|t| t.model_reference.clone())
        });
    ParameterInstance {
        name: part.name.clone(),
        xsd_type: type_ref.or_else(|| part.element.clone()),
        concept,
        role,
        operation_id: operation_id.to_string(),
    }
}

fn model_reference(node: Node) -> Option<String> {
    node.attribute((SAWSDL_NS, "modelReference"))
        .map(str::trim)
        .filter(|v| !v.is_empty())
        .map(str::to_string)
}

fn required_attr(node: Node, attr: &str, file: &Path) -> Result<String> {
    node.attribute(attr)
        .map(str::to_string)
        .ok_or_else(|| Error::Schema {
            path: file.to_path_buf(),
            location: format!("<{}>", node.tag_name().name()),
            message: format!("missing `{attr}` attribute"),
        })
}

fn local_name(qname: &str) -> &str {
    qname.rsplit_once(':').map_or(qname, |(_, local)| local)
}
