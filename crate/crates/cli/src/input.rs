use std::fs;
use std::path::{Path, PathBuf};

use divide_core::{divide_from_code, generate_family, DiscalGraph, Divide, FamilySpec};

use crate::Failure;

/// A divide or a code read from a file or built from a family.
pub enum Object {
    Divide(Divide),
    Code(DiscalGraph),
}

impl Object {
    pub fn divide(&self) -> Result<Divide, Failure> {
        match self {
            Object::Divide(d) => Ok(d.clone()),
            Object::Code(g) => divide_from_code(g).map_err(Failure::core),
        }
    }
}

/// Joins `--family` words: `Epqr 1 2 5` gives `E1,2,5`, `A 5` gives `A5`.
pub fn family_spec(words: &[String]) -> Result<FamilySpec, Failure> {
    let (name, rest) = words
        .split_first()
        .ok_or_else(|| Failure::input("--family needs a name"))?;
    let text = match name.as_str() {
        "Epqr" => format!("E{}", rest.join(",")),
        "Fpq" => format!("F{}", rest.join(",")),
        _ if rest.is_empty() => name.clone(),
        _ => format!("{name}{}", rest.join("")),
    };
    text.parse().map_err(Failure::core)
}

fn kind_of(path: &Path, text: &str) -> &'static str {
    match path.extension().and_then(|e| e.to_str()) {
        Some("divide") => "divide",
        Some("discal") => "discal",
        _ if text.lines().any(|l| l.trim_start().starts_with("v ")) => "discal",
        _ => "divide",
    }
}

/// Reads `.divide` or `.discal` text, or the JSON this tool prints.
pub fn read_object(path: &Path) -> Result<Object, Failure> {
    let raw =
        fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    let (kind, text) = if raw.trim_start().starts_with('{') {
        let v: serde_json::Value = serde_json::from_str(&raw)
            .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
        let kind = match v["kind"].as_str() {
            Some("divide") => "divide",
            Some("discal") => "discal",
            _ => {
                return Err(Failure::input(format!(
                    "{}: JSON has no divide or discal kind",
                    path.display()
                )))
            }
        };
        let text = v["text"]
            .as_str()
            .ok_or_else(|| Failure::input(format!("{}: JSON has no text field", path.display())))?;
        (kind, text.to_string())
    } else {
        (kind_of(path, &raw), raw)
    };
    let located = |e| Failure::located(path, e);
    Ok(match kind {
        "discal" => Object::Code(DiscalGraph::from_text(&text).map_err(located)?),
        _ => Object::Divide(Divide::from_text(&text).map_err(located)?),
    })
}

/// Input given either as a file or as `--family` words.
pub fn load(file: &Option<PathBuf>, family: &Option<Vec<String>>) -> Result<Object, Failure> {
    match (file, family) {
        (Some(p), None) => read_object(p),
        (None, Some(words)) => Ok(Object::Code(
            generate_family(&family_spec(words)?).map_err(Failure::core)?,
        )),
        (Some(_), Some(_)) => Err(Failure::input("give either a file or --family, not both")),
        (None, None) => Err(Failure::input("no input: give a file or --family")),
    }
}

pub fn divide_json(d: &Divide) -> Result<serde_json::Value, Failure> {
    Ok(serde_json::json!({
        "kind": "divide",
        "canon": d.canonical_form().map_err(Failure::core)?.to_string(),
        "crossings": d.num_crossings(),
        "text": d.to_text(),
    }))
}

pub fn code_json(g: &DiscalGraph) -> Result<serde_json::Value, Failure> {
    Ok(serde_json::json!({
        "kind": "discal",
        "canon": g.canonical_form().map_err(Failure::core)?.to_string(),
        "text": g.to_text(),
    }))
}
