//! TOML complex files.
//!
//! ```toml
//! name = "sigma-t2"
//! dim = 3
//! vertices = 9
//! facets = [[0, 1, 3, 7], [0, 1, 3, 8]]
//! orientation = [1, -1]              # optional, one sign per facet
//! coordinates = [["0", "1/2"], ...]  # optional, one row per vertex
//!
//! [[depth]]
//! simplex = [7]
//! depth = 0
//! ```

use std::fmt;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::complex::{DepthSpec, OrientationSpec, Simplex, StratifiedComplex};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormatError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for FormatError {}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplexFile {
    name: String,
    dim: usize,
    vertices: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    coordinates: Option<Vec<Vec<String>>>,
    facets: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    orientation: Option<Vec<i8>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    depth: Vec<DepthEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DepthEntry {
    simplex: Vec<usize>,
    depth: usize,
}

/// Line and column (1-based) of a byte offset.
pub fn position(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

/// Locates the first occurrence of `key =` to anchor semantic errors.
fn key_position(text: &str, key: &str) -> (usize, usize) {
    let off = text
        .match_indices(key)
        .find(|(i, _)| text[i + key.len()..].trim_start().starts_with('='))
        .map_or(0, |(i, _)| i);
    position(text, off)
}

/// Deserializes a TOML document into `T`, with positioned errors.
pub fn from_toml<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, FormatError> {
    toml::from_str(text).map_err(|e| {
        let (line, column) = e.span().map_or((1, 1), |s| position(text, s.start));
        FormatError { line, column, message: e.message().to_string() }
    })
}

/// Parses a complex file. The result is not validated.
pub fn parse_complex(text: &str) -> Result<StratifiedComplex, FormatError> {
    let file: ComplexFile = from_toml(text)?;
    let at = |key: &str, message: String| {
        let (line, column) = key_position(text, key);
        FormatError { line, column, message }
    };
    let facets = file
        .facets
        .iter()
        .map(|f| Simplex::new(f.clone()))
        .collect::<crate::Result<Vec<_>>>()
        .map_err(|e| at("facets", e.to_string()))?;
    let depth = file
        .depth
        .iter()
        .map(|d| Ok((Simplex::new(d.simplex.clone())?, d.depth)))
        .collect::<crate::Result<Vec<_>>>()
        .map_err(|e| at("simplex", e.to_string()))?;
    let orientation = match file.orientation {
        Some(s) => OrientationSpec::Signs(s),
        None => OrientationSpec::Auto,
    };
    let mut cx = StratifiedComplex::new(file.name, file.dim, file.vertices, facets, DepthSpec::Overrides(&depth), orientation)
        .map_err(|e| at("facets", e.to_string()))?;
    if let Some(rows) = file.coordinates {
        let coords = rows
            .iter()
            .map(|r| r.iter().map(|x| x.trim().parse::<BigRational>().map_err(|_| format!("bad fraction {x:?}"))).collect())
            .collect::<Result<Vec<Vec<BigRational>>, String>>()
            .map_err(|m| at("coordinates", m))?;
        cx = cx.with_coordinates(coords).map_err(|e| at("coordinates", e.to_string()))?;
    }
    Ok(cx)
}

/// Writes a complex in the file format; orientation is always explicit.
pub fn write_complex(cx: &StratifiedComplex) -> String {
    let n = cx.dim();
    let facets: Vec<&Simplex> = cx.simplices(n).iter().collect();
    let file = ComplexFile {
        name: cx.name().to_string(),
        dim: n,
        vertices: cx.vertex_count(),
        coordinates: cx.coordinates().map(|c| c.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect()),
        facets: facets.iter().map(|f| f.vertices().to_vec()).collect(),
        orientation: Some(facets.iter().map(|f| cx.orientation(f)).collect()),
        depth: cx
            .depth_generators()
            .into_iter()
            .map(|(s, depth)| DepthEntry { simplex: s.into_vertices(), depth })
            .collect(),
    };
    toml::to_string(&file).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn round_trip() {
        for cx in [fixtures::sigma_torus(), fixtures::octahedron()] {
            let text = write_complex(&cx);
            let back = parse_complex(&text).unwrap();
            assert_eq!(write_complex(&back), text);
            assert!(back.validate().is_valid());
        }
    }

    #[test]
    fn errors_are_positioned() {
        let e = parse_complex("name = \"x\"\ndim = 2\nvertices = 3\nfacets = [[0, 1, 1]]\n").unwrap_err();
        assert_eq!(e.line, 4);
        let e = parse_complex("name = \"x\"\ndim = two\n").unwrap_err();
        assert_eq!(e.line, 2);
    }
}
