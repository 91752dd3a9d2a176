//! `ihchain`: intersection homology computations on complex files.
//!
//! Exit codes: 0 success, 1 a mathematical check failed (the report says
//! which), 2 input error.

mod input;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ihchain::gen_position::{in_gk, in_gk_level, in_transfer_domain, slots_allowable};
use ihchain::homology::IntersectionComplex;
use ihchain::pairing::{allowability_audit, pairing_matrix, IhProducts};
use ihchain::perverse_dga::{build_ih_model, check_functoriality, check_leinster};
use ihchain::perversity::{self, minimal_cover, Perversity};
use ihchain::sign_oracle;

pub enum Failure {
    Input(String),
    Math(String),
}

impl From<ihchain::Error> for Failure {
    fn from(e: ihchain::Error) -> Self {
        use ihchain::Error::*;
        match e {
            DimensionMismatch(..) | InvalidPerversity(_) | UnknownSimplex(_) | NotValidated(_) | NotOriented | NotInDomain(_)
            | Invalid(_) | MixedMode | DegenerateInput(_) => Failure::Input(e.to_string()),
            _ => Failure::Math(e.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(name = "ihchain", version, about = "Exact intersection homology of stratified simplicial complexes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check purity, strata, pseudomanifold and orientation conditions.
    Validate { file: PathBuf },
    /// Ranks and torsion of I^pH_* or of ordinary homology.
    Homology {
        file: PathBuf,
        #[arg(long, conflicts_with = "ordinary", required_unless_present = "ordinary")]
        perversity: Option<String>,
        #[arg(long)]
        ordinary: bool,
    },
    /// Homology generators, or with --chains the integer basis of I^pC_i.
    Basis {
        file: PathBuf,
        #[arg(long, conflicts_with = "ordinary", required_unless_present = "ordinary")]
        perversity: Option<String>,
        #[arg(long)]
        ordinary: bool,
        #[arg(long)]
        degree: Option<usize>,
        #[arg(long)]
        chains: bool,
    },
    /// General position of tensors of chains.
    Genpos {
        file: PathBuf,
        #[arg(long)]
        chains: PathBuf,
        #[arg(long)]
        arity: usize,
        /// Check only the surjections of Λ-filtration level j.
        #[arg(long)]
        level: Option<usize>,
        /// `;`-separated slot perversities, e.g. "0,0;0,1".
        #[arg(long)]
        perversities: Option<String>,
    },
    /// Iterated intersection product of cycles, with the allowability audit for pairs.
    Product {
        file: PathBuf,
        #[arg(long)]
        cycles: PathBuf,
        /// Push the class into this perversity; the default is the iterated minimal cover.
        #[arg(long)]
        target_perversity: Option<String>,
    },
    /// The product IH^p_i × IH^q_j -> IH^r_{i+j-n} on generators.
    PairingMatrix {
        file: PathBuf,
        #[arg(long)]
        p: String,
        #[arg(long)]
        q: String,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        j: usize,
        /// Defaults to the minimal cover of p and q.
        #[arg(long)]
        r: Option<String>,
    },
    /// Left-iterated minimal cover of two or more perversities.
    MinPerversity {
        #[arg(num_args = 2.., required = true)]
        perversities: Vec<String>,
    },
    /// Leinster axioms and functoriality of the homology-level model.
    DgaCheck {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        arity: usize,
        #[arg(long, default_value_t = 1)]
        samples: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
    /// The five sign identity families, symbolically and numerically.
    VerifySigns {
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

/// The report and whether every check in it passed.
type Outcome = Result<(String, bool), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((out, ok)) => {
            print!("{out}");
            ExitCode::from(if ok { 0 } else { 1 })
        }
        Err(Failure::Math(msg)) => {
            eprintln!("error: {}", msg.trim_end());
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {}", msg.trim_end());
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Validate { file } => validate(file),
        Command::Homology { file, perversity, ordinary: _ } => homology(file, perversity),
        Command::Basis { file, perversity, ordinary: _, degree, chains } => basis(file, perversity, degree, chains),
        Command::Genpos { file, chains, arity, level, perversities } => genpos(file, chains, arity, level, perversities),
        Command::Product { file, cycles, target_perversity } => product(file, cycles, target_perversity),
        Command::PairingMatrix { file, p, q, i, j, r } => pairing(file, &p, &q, i, j, r),
        Command::MinPerversity { perversities } => min_perversity(&perversities),
        Command::DgaCheck { file, arity, samples, seed } => dga_check(file, arity, samples, seed),
        Command::VerifySigns { trials, seed } => verify_signs(trials, seed),
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn joined<T: ToString>(items: impl IntoIterator<Item = T>, sep: &str) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

fn header(out: &mut String, cx: &ihchain::complex::StratifiedComplex) {
    let _ = writeln!(out, "complex: {}", cx.name());
    let _ = writeln!(out, "dim: {}", cx.dim());
}

fn checked_perversity(s: &str, n: usize) -> Result<Perversity, Failure> {
    let p = input::perversity(s)?;
    if p.n() != n {
        return Err(Failure::Input(format!("perversity {s} is for dimension {}, the complex has dimension {n}", p.n())));
    }
    Ok(p)
}

fn validate(file: PathBuf) -> Outcome {
    let cx = input::complex_unchecked(&file)?;
    let mut out = String::new();
    header(&mut out, &cx);
    let _ = writeln!(out, "vertices: {}", cx.vertex_count());
    let _ = writeln!(out, "f-vector: {}", joined((0..=cx.dim()).map(|d| cx.count(d)), ","));
    let _ = writeln!(out, "depths: {}", joined(cx.depths_present(), ","));
    let report = cx.validate();
    let _ = write!(out, "{report}");
    Ok((out, report.is_valid()))
}

fn intersection_complex(file: &Path, perversity: Option<String>) -> Result<(String, IntersectionComplex), Failure> {
    let cx = input::complex(file)?;
    let mut out = String::new();
    header(&mut out, &cx);
    let p = perversity.map(|s| checked_perversity(&s, cx.dim())).transpose()?;
    let _ = writeln!(out, "perversity: {}", p.as_ref().map_or("ordinary".to_string(), Perversity::to_string));
    let ic = IntersectionComplex::new(&cx, p.as_ref())?;
    Ok((out, ic))
}

fn homology(file: PathBuf, perversity: Option<String>) -> Outcome {
    let (mut out, ic) = intersection_complex(&file, perversity)?;
    let h = ic.homology();
    let _ = write!(out, "{h}");
    let _ = writeln!(out, "ranks: {}", joined(h.ranks(), ","));
    let _ = writeln!(out, "torsion-free: {}", yes(h.is_torsion_free()));
    Ok((out, true))
}

fn basis(file: PathBuf, perversity: Option<String>, degree: Option<usize>, chains: bool) -> Outcome {
    let (mut out, ic) = intersection_complex(&file, perversity)?;
    let n = ic.complex().dim();
    if let Some(d) = degree.filter(|&d| d > n) {
        return Err(Failure::Input(format!("degree {d} above dimension {n}")));
    }
    let degrees: Vec<usize> = degree.map_or((0..=n).collect(), |d| vec![d]);
    for d in degrees {
        if chains {
            let b = ic.basis(d);
            let _ = writeln!(out, "chains {d}: {}", b.len());
            for (k, c) in b.iter().enumerate() {
                let _ = writeln!(out, "  c{k} = {c}");
            }
        } else {
            let deg = &ic.homology().degrees[d];
            let _ = writeln!(out, "degree {d}: rank {}", deg.rank);
            for (k, g) in deg.generators.iter().enumerate() {
                let order = if k < deg.rank { String::new() } else { format!(" (order {})", deg.torsion[k - deg.rank]) };
                let _ = writeln!(out, "  g{k}{order} = {g}");
            }
        }
    }
    Ok((out, true))
}

fn genpos(file: PathBuf, chains: PathBuf, arity: usize, level: Option<usize>, perversities: Option<String>) -> Outcome {
    let cx = input::complex(&file)?;
    let tensors = input::tensors(&chains, &cx)?;
    let slot_perversities = match perversities {
        Some(s) => {
            let ps = input::perversity_list(&s)?;
            if ps.len() != arity || ps.iter().any(|p| p.n() != cx.dim()) {
                return Err(Failure::Input(format!("--perversities needs {arity} perversities of dimension {}", cx.dim())));
            }
            Some(ps)
        }
        None => None,
    };
    let mut out = String::new();
    header(&mut out, &cx);
    let mut all = true;
    for t in &tensors {
        let d = &t.tensor;
        if d.arity() != arity {
            return Err(Failure::Input(format!("tensor {:?} has arity {}, expected {arity}", t.name, d.arity())));
        }
        let _ = writeln!(out, "\ntensor: {}", t.name);
        let _ = writeln!(out, "terms: {}", d.len());
        let _ = writeln!(out, "degree: {}", d.degree());
        let (ok, report) = match level {
            Some(j) => in_gk_level(&cx, d, j)?,
            None => in_gk(&cx, d)?,
        };
        match level {
            Some(j) => {
                let _ = writeln!(out, "in G_{arity} at level {j}: {}", yes(ok));
            }
            None => {
                let _ = writeln!(out, "in G_{arity}: {}", yes(ok));
            }
        }
        let _ = write!(out, "{report}");
        let mut pass = ok;
        if let Some(ps) = &slot_perversities {
            let bad = slots_allowable(&cx, d, ps)?;
            let _ = writeln!(out, "slots allowable: {}", bad.map_or("yes".to_string(), |i| format!("no (slot {i})")));
            let _ = writeln!(out, "in G_{arity}^P: {}", yes(ok && bad.is_none()));
            pass &= bad.is_none();
        }
        if level.is_none() {
            let tr = in_transfer_domain(&cx, d)?;
            let _ = writeln!(
                out,
                "transfer domain: {} (thin singular part {}, diagonal {}, singular preimage {})",
                yes(tr.pass()),
                yes(tr.thin_singular_part),
                yes(tr.diagonal_position),
                yes(tr.singular_preimage)
            );
        }
        all &= pass;
    }
    Ok((out, all))
}

fn product(file: PathBuf, cycles: PathBuf, target: Option<String>) -> Outcome {
    let cx = input::complex(&file)?;
    let items = input::cycles(&cycles, &cx)?;
    let n = cx.dim();
    for c in &items {
        if c.perversity.n() != n {
            return Err(Failure::Input(format!("cycle {:?}: perversity for dimension {}", c.name, c.perversity.n())));
        }
    }
    let prod = IhProducts::new(&cx)?;
    let mut out = String::new();
    header(&mut out, &cx);
    for c in &items {
        let _ = writeln!(out, "cycle {} at {}: degree {}", c.name, c.perversity, c.chain.degree());
    }
    let pairs: Vec<_> = items.iter().map(|c| (c.chain.clone(), c.perversity.clone())).collect();
    let (cover, degree, mut coords) = prod.mu_k(&pairs)?;
    let _ = writeln!(out, "minimal cover: {cover}");
    let r = match target {
        Some(s) => {
            let r = checked_perversity(&s, n)?;
            if !perversity::leq(&cover, &r)? {
                return Err(Failure::Input(format!("target {r} is not above the minimal cover {cover}")));
            }
            if degree >= 0 && r != cover {
                let rep = prod.representative(&cover, degree as usize, &coords)?;
                coords = prod.class_of(&rep, &r)?;
            }
            r
        }
        None => cover,
    };
    let _ = writeln!(out, "target perversity: {r}");
    let _ = writeln!(out, "degree: {degree}");
    if degree < 0 {
        let _ = writeln!(out, "class: 0 (negative degree)");
        return Ok((out, true));
    }
    let _ = writeln!(out, "class: ({})", joined(&coords, ", "));
    let rep = prod.representative(&r, degree as usize, &coords)?;
    let _ = writeln!(out, "representative: {rep}");
    let mut ok = true;
    if let [a, b] = &items[..] {
        let report = allowability_audit(&cx, &a.chain, &b.chain, &r)?;
        let _ = writeln!(out, "audit: {}", if report.pass() { "pass" } else { "FAIL" });
        let _ = write!(out, "{report}");
        ok = report.pass();
    }
    Ok((out, ok))
}

fn pairing(file: PathBuf, p: &str, q: &str, i: usize, j: usize, r: Option<String>) -> Outcome {
    let cx = input::complex(&file)?;
    let n = cx.dim();
    let (p, q) = (checked_perversity(p, n)?, checked_perversity(q, n)?);
    let r = match r {
        Some(s) => checked_perversity(&s, n)?,
        None => minimal_cover(&p, &q)?,
    };
    if i > n || j > n {
        return Err(Failure::Input(format!("degrees must be at most {n}")));
    }
    let prod = IhProducts::new(&cx)?;
    let m = pairing_matrix(&prod, &p, &q, i, j, &r)?;
    let mut out = String::new();
    header(&mut out, &cx);
    let _ = writeln!(out, "pairing: IH^{p}_{i} x IH^{q}_{j} -> IH^{r}_{}", (i + j) as i64 - n as i64);
    let _ = writeln!(out, "rows: {}", m.rows.len());
    let _ = writeln!(out, "cols: {}", m.cols.len());
    let _ = writeln!(out, "target rank: {}", m.target.len());
    let _ = write!(out, "{m}");
    let ok = m.entries.iter().flatten().all(Result::is_ok);
    Ok((out, ok))
}

fn min_perversity(items: &[String]) -> Outcome {
    let ps = items.iter().map(|s| input::perversity(s)).collect::<Result<Vec<_>, _>>()?;
    let mut acc = ps[0].clone();
    for p in &ps[1..] {
        if p.n() != acc.n() {
            return Err(Failure::Input(format!("perversities {acc} and {p} have different dimensions")));
        }
        match minimal_cover(&acc, p) {
            Ok(s) => acc = s,
            Err(ihchain::Error::NoCover) => return Ok((format!("no cover: {}\n", joined(items, " + ")), false)),
            Err(e) => return Err(e.into()),
        }
    }
    Ok((format!("{acc}\n"), true))
}

fn dga_check(file: PathBuf, arity: usize, samples: usize, seed: u64) -> Outcome {
    let cx = input::complex(&file)?;
    let model = build_ih_model(&cx)?;
    let mut out = String::new();
    header(&mut out, &cx);
    let _ = writeln!(out, "model:");
    for line in model.module().to_string().lines() {
        let _ = writeln!(out, "  {line}");
    }
    let report = check_leinster(&model, arity)?;
    let _ = write!(out, "{report}");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let failures = check_functoriality(&model, arity, samples, &mut rng)?;
    let _ = writeln!(out, "functoriality: {} ({} failures)", if failures.is_empty() { "pass" } else { "FAIL" }, failures.len());
    for f in &failures {
        let _ = writeln!(out, "  {f}");
    }
    Ok((out, report.pass() && failures.is_empty()))
}

fn verify_signs(trials: usize, seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let reports = sign_oracle::verify_all(trials, &mut rng);
    let mut out = String::new();
    let _ = writeln!(out, "arities: 1..{}", sign_oracle::MAX_ARITY);
    let _ = writeln!(out, "trials: {trials}");
    let width = reports.iter().map(|r| r.name.len()).max().unwrap_or(0);
    for r in &reports {
        let _ = writeln!(
            out,
            "{:<width$}  {}  ({} identities, symbolic {}, numeric {})",
            r.name,
            if r.pass() { "OK" } else { "FAIL" },
            r.identities.len(),
            if r.symbolic { "ok" } else { "fail" },
            if r.numeric { "ok" } else { "fail" }
        );
        for id in r.identities.iter().filter(|i| !i.holds()) {
            let _ = writeln!(out, "  {}: difference {}", id.name, id.difference());
        }
    }
    Ok((out, reports.iter().all(|r| r.pass())))
}
