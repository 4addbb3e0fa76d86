//! Loading algebras from builtin names or JSON files.

use std::path::Path;

use gla_core::multilinear::AssociativeAlgebraDef;
use gla_core::quadratic::{catalog, LieAlgebraDef};
use serde_json::Value;

/// A Lie algebra together with the associative algebra it came from, when there is one.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub name: String,
    pub lie: LieAlgebraDef,
    pub assoc: Option<AssociativeAlgebraDef>,
    /// `m` when the algebra is the matrix algebra `gl(m)`.
    pub matrix_size: Option<usize>,
}

impl Loaded {
    pub fn dim(&self) -> usize {
        self.lie.dim()
    }

    pub fn require_assoc(&self) -> Result<&AssociativeAlgebraDef, String> {
        self.assoc
            .as_ref()
            .ok_or_else(|| format!("`{}` has no associative product", self.name))
    }
}

fn builtin_gl(name: &str) -> Option<usize> {
    name.strip_prefix("gl").and_then(|m| m.parse().ok()).filter(|m| (1..=4).contains(m))
}

pub fn load(source: &str) -> Result<Loaded, String> {
    if let Some(m) = builtin_gl(source) {
        let assoc = AssociativeAlgebraDef::gl(m).with_name(source);
        let lie = LieAlgebraDef::from_associative(&assoc).map_err(|e| e.to_string())?.with_name(source);
        return Ok(Loaded { name: source.to_string(), lie, assoc: Some(assoc), matrix_size: Some(m) });
    }
    let path = Path::new(source);
    if path.is_file() {
        return load_file(path);
    }
    let lie = catalog(source).map_err(|e| format!("{e} (not a builtin name or a readable file)"))?;
    Ok(Loaded { name: source.to_string(), lie, assoc: None, matrix_size: None })
}

fn load_file(path: &Path) -> Result<Loaded, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let v: Value = serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    let name = v
        .get("name")
        .and_then(Value::as_str)
        .map(str::to_string)
        .or_else(|| path.file_stem().map(|s| s.to_string_lossy().into_owned()))
        .unwrap_or_else(|| "algebra".into());
    let err = |e: gla_core::GlaError| format!("{}: {e}", path.display());
    if v.get("product").is_some() {
        let assoc = AssociativeAlgebraDef::from_json(&v).map_err(err)?.with_name(&name);
        let lie = LieAlgebraDef::from_associative(&assoc).map_err(err)?.with_name(&name);
        Ok(Loaded { name, lie, assoc: Some(assoc), matrix_size: None })
    } else if v.get("bracket").is_some() {
        let lie = LieAlgebraDef::from_json(&v).map_err(err)?.with_name(&name);
        Ok(Loaded { name, lie, assoc: None, matrix_size: None })
    } else {
        Err(format!("{}: expected a \"bracket\" or \"product\" table", path.display()))
    }
}
