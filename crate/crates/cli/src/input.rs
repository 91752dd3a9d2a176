//! Loading complex, chain and cycle files.

use std::fs;
use std::path::Path;

use serde::Deserialize;

use ihchain::chain::{parse_chain, parse_tensor, Chain, LiteralError, TensorChain};
use ihchain::complex::StratifiedComplex;
use ihchain::format::{from_toml, parse_complex, FormatError};
use ihchain::gen_position::gamma_power;
use ihchain::perversity::Perversity;

use crate::Failure;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn located(path: &Path, e: &FormatError) -> Failure {
    Failure::Input(format!("{}:{e}", path.display()))
}

/// Parses and validates a complex file.
pub fn complex(path: &Path) -> Result<StratifiedComplex, Failure> {
    let text = read(path)?;
    let cx = parse_complex(&text).map_err(|e| located(path, &e))?;
    let report = cx.validate();
    if !report.is_valid() {
        return Err(Failure::Input(format!("{}: complex failed validation\n{report}", path.display())));
    }
    Ok(cx)
}

/// A complex file without the validation gate.
pub fn complex_unchecked(path: &Path) -> Result<StratifiedComplex, Failure> {
    let text = read(path)?;
    parse_complex(&text).map_err(|e| located(path, &e))
}

pub fn perversity(s: &str) -> Result<Perversity, Failure> {
    s.parse().map_err(|e: ihchain::Error| Failure::Input(e.to_string()))
}

/// A `;`-separated list of perversities.
pub fn perversity_list(s: &str) -> Result<Vec<Perversity>, Failure> {
    s.split(';').map(perversity).collect()
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ChainsFile {
    tensor: Vec<TensorEntry>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TensorEntry {
    name: String,
    shifts: Option<Vec<i64>>,
    terms: Option<String>,
    gamma_power: Option<usize>,
}

pub struct NamedTensor {
    pub name: String,
    pub tensor: TensorChain,
}

fn literal_failure(path: &Path, text: &str, key: &str, name: &str, e: &LiteralError) -> Failure {
    // report the position inside the file, not inside the literal
    let anchor = text.find(&format!("\"{name}\"")).unwrap_or(0);
    let start = text[anchor..].find(key).map_or(anchor, |i| anchor + i);
    let value = text[start..].find('"').map_or(start, |i| start + i + 1);
    let (line, column) = ihchain::format::position(text, value);
    let (line, column) = if e.line == 1 { (line, column + e.column - 1) } else { (line + e.line - 1, e.column) };
    Failure::Input(format!("{}:{line}:{column}: {}", path.display(), e.message))
}

pub fn tensors(path: &Path, cx: &StratifiedComplex) -> Result<Vec<NamedTensor>, Failure> {
    let text = read(path)?;
    let file: ChainsFile = from_toml(&text).map_err(|e| located(path, &e))?;
    let n = cx.dim() as i64;
    let mut out = Vec::new();
    for entry in file.tensor {
        let tensor = match (&entry.terms, entry.gamma_power) {
            (Some(terms), None) => {
                let arity = terms.split(['+', '-']).find(|t| !t.trim().is_empty()).map_or(1, |t| t.matches('[').count());
                let shifts = entry.shifts.clone().unwrap_or_else(|| vec![-n; arity]);
                parse_tensor(terms, &shifts).map_err(|e| literal_failure(path, &text, "terms", &entry.name, &e))?
            }
            (None, Some(k)) => gamma_power(cx, k).map_err(|e| Failure::Input(format!("{}: {e}", entry.name)))?,
            _ => return Err(Failure::Input(format!("{}: tensor {:?} needs exactly one of terms, gamma_power", path.display(), entry.name))),
        };
        for slots in tensor.support() {
            if let Some(s) = slots.iter().find(|s| !cx.contains(s)) {
                return Err(Failure::Input(format!("{}: tensor {:?} uses {s}, not in the complex", path.display(), entry.name)));
            }
        }
        out.push(NamedTensor { name: entry.name, tensor });
    }
    Ok(out)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CyclesFile {
    cycle: Vec<CycleEntry>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CycleEntry {
    name: String,
    perversity: String,
    chain: String,
}

pub struct NamedCycle {
    pub name: String,
    pub perversity: Perversity,
    pub chain: Chain,
}

pub fn cycles(path: &Path, cx: &StratifiedComplex) -> Result<Vec<NamedCycle>, Failure> {
    let text = read(path)?;
    let file: CyclesFile = from_toml(&text).map_err(|e| located(path, &e))?;
    let mut out = Vec::new();
    for entry in file.cycle {
        let chain = parse_chain(&entry.chain).map_err(|e| literal_failure(path, &text, "chain", &entry.name, &e))?;
        if !chain.lies_in(cx) {
            return Err(Failure::Input(format!("{}: cycle {:?} is not a chain of the complex", path.display(), entry.name)));
        }
        let perversity = perversity(&entry.perversity)?;
        out.push(NamedCycle { name: entry.name, perversity, chain });
    }
    if out.is_empty() {
        return Err(Failure::Input(format!("{}: no cycles", path.display())));
    }
    Ok(out)
}
