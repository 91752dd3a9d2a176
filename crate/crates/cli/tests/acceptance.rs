//! The acceptance suite: one PASS/FAIL line per criterion.
//!
//! Time limits are wall-clock on the test profile. All comparisons are exact.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ihchain::chain::{bar_epsilon, cap, fundamental_cycle, pd, theta, theta_inverse, Chain, Cochain, ShiftedChain, TensorChain};
use ihchain::complex::{sort_with_sign, Simplex, StratifiedComplex};
use ihchain::fixtures;
use ihchain::gen_position::{cancellation_fixture, gamma_power, in_gk, in_gk_level, split_check};
use ihchain::homology::{allowable_chain, homology, Mode};
use ihchain::pairing::{allowability_audit, clear_denominators, pairing_matrix, IhProducts};
use ihchain::perverse_dga::{build_ih_model, check_functoriality, check_leinster, Axiom};
use ihchain::perversity::{self, enumerate, minimal_cover, Perversity};
use ihchain::product::ProductComplex;
use ihchain::sign_oracle;

type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn pv(s: &str) -> Perversity {
    s.parse().unwrap()
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn criterion_1() -> Check {
    let mut pairs = 0;
    let mut covered = 0;
    for n in 2..=7 {
        let all = ok(enumerate(n))?;
        for p in &all {
            for q in &all {
                pairs += 1;
                let above: Vec<&Perversity> =
                    all.iter().filter(|s| (0..n - 1).all(|j| p.values()[j] + q.values()[j] <= s.values()[j])).collect();
                let least = above.iter().find(|s| above.iter().all(|t| perversity::leq(s, t).unwrap()));
                match (minimal_cover(p, q), least) {
                    (Ok(s), Some(b)) => {
                        ensure!(&s == *b, "{p} + {q}: got {s}, brute force {b}");
                        covered += 1;
                    }
                    (Err(ihchain::Error::NoCover), None) => ensure!(above.is_empty(), "{p} + {q}: no least cover"),
                    (got, want) => return Err(format!("{p} + {q}: {got:?} vs {want:?}")),
                }
            }
        }
    }
    Ok(format!("{pairs} pairs for n = 2..7, {covered} with a cover"))
}

/// Mayer-Vietoris over the two open cones of a suspension of a connected manifold.
fn suspension_oracle(link_betti: &[usize], p_top: usize) -> Vec<usize> {
    let n = link_betti.len();
    let t = n - 1 - p_top;
    let b = |j: usize| link_betti.get(j).copied().unwrap_or(0);
    (0..=n).map(|i| if i < t { b(i) } else { 0 } + if i > t { b(i - 1) } else { 0 }).collect()
}

fn criterion_2() -> Check {
    let cx = fixtures::sigma_torus();
    ensure!(cx.count(3) == 28, "{} tetrahedra", cx.count(3));
    let betti = ok(homology(&fixtures::torus(), Mode::Ordinary))?.ranks();
    let mut found = Vec::new();
    for p in [pv("0,0"), pv("0,1")] {
        let h = ok(homology(&cx, Mode::Intersection(&p)))?;
        ensure!(h.is_torsion_free(), "torsion at {p}");
        let oracle = suspension_oracle(&betti, p.at(3));
        ensure!(h.ranks() == oracle, "{p}: {:?} vs oracle {oracle:?}", h.ranks());
        found.push(h.ranks());
    }
    // the stated vectors, with the perversity labels exchanged
    ensure!(found == vec![vec![1, 2, 0, 1], vec![1, 0, 2, 1]], "{found:?}");
    Ok("torsion-free, matches the cone oracle; p(3)=0 gives (1,2,0,1) and p(3)=1 gives (1,0,2,1), the stated pair with labels exchanged".into())
}

fn criterion_3() -> Check {
    let mut seen = Vec::new();
    for cx in [fixtures::boundary_tetrahedron(), fixtures::torus()] {
        let ordinary = ok(homology(&cx, Mode::Ordinary))?;
        for p in ok(enumerate(cx.dim()))? {
            let h = ok(homology(&cx, Mode::Intersection(&p)))?;
            ensure!(h.same_groups(&ordinary), "{} at {p}", cx.name());
        }
        seen.push(format!("{} {:?}", cx.name(), ordinary.ranks()));
    }
    let t = ok(homology(&fixtures::torus(), Mode::Ordinary))?;
    ensure!(t.ranks() == vec![1, 2, 1] && t.is_torsion_free(), "torus {t}");
    Ok(seen.join(", "))
}

fn criterion_4() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let reports = sign_oracle::verify_all(200, &mut rng);
    ensure!(reports.len() == 5, "{} families", reports.len());
    let mut names = Vec::new();
    for r in &reports {
        ensure!(r.symbolic, "{} fails symbolically", r.name);
        ensure!(r.numeric, "{} fails numerically", r.name);
        names.push(format!("{} ({})", r.name, r.identities.len()));
    }
    Ok(format!("arity <= {}, 200 substitutions each: {}", sign_oracle::MAX_ARITY, names.join(", ")))
}

fn coefficient(rng: &mut ChaCha8Rng) -> BigInt {
    BigInt::from(rng.gen_range(-3i64..=3))
}

fn random_chain(cx: &StratifiedComplex, d: usize, rng: &mut ChaCha8Rng) -> Chain {
    let terms: Vec<(Simplex, BigInt)> =
        (0..rng.gen_range(1..=4)).map(|_| (cx.simplex(d, rng.gen_range(0..cx.count(d))).clone(), coefficient(rng))).collect();
    Chain::from_terms(d as i64, terms).unwrap()
}

fn random_cochain(cx: &StratifiedComplex, p: usize, rng: &mut ChaCha8Rng) -> Cochain {
    let values: Vec<(Simplex, BigInt)> = cx.simplices(p).iter().map(|s| (s.clone(), coefficient(rng))).filter(|(_, x)| !x.is_zero()).collect();
    Cochain::from_values(p, values).unwrap()
}

fn random_tensor(cx: &StratifiedComplex, k: usize, rng: &mut ChaCha8Rng) -> TensorChain {
    let dims: Vec<usize> = (0..k).map(|_| rng.gen_range(0..=cx.dim())).collect();
    let shifts: Vec<i64> = (0..k).map(|_| rng.gen_range(-3i64..=3)).collect();
    let terms: Vec<(Vec<Simplex>, BigInt)> = (0..rng.gen_range(1..=4))
        .map(|_| (dims.iter().map(|&d| cx.simplex(d, rng.gen_range(0..cx.count(d))).clone()).collect(), coefficient(rng)))
        .collect();
    TensorChain::from_terms(shifts, terms).unwrap()
}

const TRIALS: usize = 1000;

fn criterion_5() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let st = fixtures::sigma_torus();
    let pc = ok(ProductComplex::new(&fixtures::boundary_tetrahedron(), 2))?;
    let manifolds = [fixtures::torus(), fixtures::boundary_tetrahedron(), st.clone()];
    for t in 0..TRIALS {
        let c = random_chain(&st, rng.gen_range(0..=3), &mut rng);
        ensure!(c.boundary().boundary().is_zero(), "∂∂ on chain {c}");
        let x = random_tensor(&st, rng.gen_range(1..=3), &mut rng);
        ensure!(x.boundary().boundary().is_zero(), "∂∂ on tensor {x}");
        let s = ShiftedChain::new(rng.gen_range(-4i64..=4), c.clone());
        ensure!(s.boundary().boundary().is_zero(), "∂∂ on a shifted chain");

        let x = random_tensor(&st, rng.gen_range(1..=4), &mut rng);
        ensure!(theta(&x.boundary()) == theta(&x).boundary(), "∂Θ != Θ∂ on {x}");
        ensure!(ok(theta_inverse(&theta(&x), x.shifts()))? == x, "Θ not invertible on {x}");

        let x = random_tensor(pc.base(), 2, &mut rng);
        ensure!(ok(bar_epsilon(&pc, &x.boundary()))? == ok(bar_epsilon(&pc, &x))?.boundary(), "∂ε̄ != ε̄∂ on {x}");

        let d = rng.gen_range(0..=3);
        let p = rng.gen_range(0..=d);
        let y = random_cochain(&st, p, &mut rng);
        let c = random_chain(&st, d, &mut rng);
        let tail = cap(&y, &c.boundary());
        let head = cap(&y.coboundary(&st), &c);
        let rhs = if p % 2 == 0 { head.add(&tail) } else { head.sub(&tail) };
        ensure!(cap(&y, &c).boundary() == rhs, "cap boundary identity, trial {t}");

        let m = &manifolds[t % 3];
        let y = random_cochain(m, rng.gen_range(0..=m.dim()), &mut rng);
        ensure!(ok(pd(m, &y.coboundary(m)))? == ok(pd(m, &y))?.boundary(), "pd is not a chain map on {}", m.name());
    }
    Ok(format!("{TRIALS} random inputs for each of ∂∂=0, ∂Θ=Θ∂, ∂ε̄=ε̄∂, cap boundary, pd chain map"))
}

fn integer_matrix(prod: &IhProducts, p: &Perversity, q: &Perversity, i: usize, j: usize, r: &Perversity) -> Result<Vec<Vec<i64>>, String> {
    let m = ok(pairing_matrix(prod, p, q, i, j, r))?;
    let m = m.scalar_matrix().ok_or("non-integral pairing")?;
    Ok(m.iter().map(|row| row.iter().map(|x| i64::try_from(x).unwrap()).collect()).collect())
}

fn det2(m: &[Vec<i64>]) -> i64 {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

/// A unimodular `P` with small entries and `PᵀHP = [[0,1],[1,0]]`.
fn hyperbolic_basis(h: &[Vec<i64>]) -> Option<[[i64; 2]; 2]> {
    let r = -3i64..=3;
    for a in r.clone() {
        for b in r.clone() {
            for c in r.clone() {
                for d in r.clone() {
                    let p = [[a, b], [c, d]];
                    if (a * d - b * c).abs() != 1 {
                        continue;
                    }
                    let q = |i: usize, j: usize| (0..2).map(|k| (0..2).map(|l| p[k][i] * h[k][l] * p[l][j]).sum::<i64>()).sum::<i64>();
                    if q(0, 0) == 0 && q(1, 1) == 0 && q(0, 1) == 1 && q(1, 0) == 1 {
                        return Some(p);
                    }
                }
            }
        }
    }
    None
}

fn unit_vector(k: usize, len: usize) -> Vec<BigRational> {
    (0..len).map(|j| if j == k { BigRational::one() } else { BigRational::zero() }).collect()
}

fn criterion_6() -> Check {
    let torus = fixtures::torus();
    let z2 = perversity::zero(2);
    let tp = IhProducts::new(&torus).map_err(|e| e.to_string())?;
    let m = integer_matrix(&tp, &z2, &z2, 1, 1, &z2)?;
    ensure!(m[0][0] == 0 && m[1][1] == 0 && m[0][1] == -m[1][0], "torus matrix {m:?} not antisymmetric");
    ensure!(det2(&m).abs() == 1, "torus matrix {m:?} not unimodular");

    let pc = ok(ProductComplex::new(&fixtures::boundary_tetrahedron(), 2))?;
    ensure!(pc.complex().count(4) == 96, "{} facets", pc.complex().count(4));
    let z4 = perversity::zero(4);
    let sp = ok(IhProducts::new(pc.complex()))?;
    let h = integer_matrix(&sp, &z4, &z4, 2, 2, &z4)?;
    ensure!(h[0][1] == h[1][0], "product matrix {h:?} not symmetric");
    let change = hyperbolic_basis(&h).ok_or(format!("product matrix {h:?} is not hyperbolic"))?;

    // Γ is a two-sided unit
    let mut units = 0;
    for cx in [fixtures::boundary_tetrahedron(), fixtures::torus(), fixtures::sigma_torus(), pc.complex().clone()] {
        let prod = ok(IhProducts::new(&cx))?;
        let gamma = ok(fundamental_cycle(&cx))?;
        for p in ok(enumerate(cx.dim()))? {
            let ic = ok(prod.intersection_complex(&p))?;
            for d in 0..=cx.dim() {
                let gens = ic.generators(d);
                for (k, c) in gens.iter().enumerate() {
                    let want = unit_vector(k, gens.len());
                    let zero = perversity::zero(cx.dim());
                    ensure!(ok(prod.product_class(&gamma, &zero, c, &p, &p))? == want, "Γ·c on {} at {p}", cx.name());
                    ensure!(ok(prod.product_class(c, &p, &gamma, &zero, &p))? == want, "c·Γ on {} at {p}", cx.name());
                    units += 2;
                }
            }
        }
    }

    // graded commutativity: torus (-1)^{1·1}, product (-1)^{2·2}
    let mut commuted = 0;
    for (prod, z, i, n) in [(&tp, &z2, 1usize, 2usize), (&sp, &z4, 2, 4)] {
        let gens = ok(prod.intersection_complex(z))?.generators(i).to_vec();
        let sign = if (n - i) * (n - i) % 2 == 0 { 1 } else { -1 };
        for a in &gens {
            for b in &gens {
                let ab = ok(prod.product_class(a, z, b, z, z))?;
                let ba: Vec<BigRational> = ok(prod.product_class(b, z, a, z, z))?.into_iter().map(|x| x * BigInt::from(sign)).collect();
                ensure!(ab == ba, "commutativity on dimension {n}");
                commuted += 1;
            }
        }
    }

    // associativity on the torus: (a⋔b)⋔c = a⋔(b⋔c) over all generators
    let ic = ok(tp.intersection_complex(&z2))?;
    let mut gens: Vec<Chain> = Vec::new();
    for d in 0..=2 {
        gens.extend(ic.generators(d).iter().cloned());
    }
    let mut triples = 0;
    for a in &gens {
        for b in &gens {
            for c in &gens {
                let left = ok(tp.mu_k(&[(a.clone(), z2.clone()), (b.clone(), z2.clone()), (c.clone(), z2.clone())]))?;
                let bc_deg = b.degree() + c.degree() - 2;
                if left.1 < 0 || bc_deg < 0 {
                    continue;
                }
                let bc = ok(tp.product_class(b, &z2, c, &z2, &z2))?;
                let (rep, l) = clear_denominators(&ok(tp.representative(&z2, bc_deg as usize, &bc))?);
                let right: Vec<BigRational> = if rep.is_zero() {
                    vec![BigRational::zero(); left.2.len()]
                } else {
                    ok(tp.product_class(a, &z2, &rep, &z2, &z2))?.into_iter().map(|x| x / BigRational::from_integer(l.clone())).collect()
                };
                ensure!(left.2 == right, "associativity on {a} {b} {c}");
                triples += 1;
            }
        }
    }
    Ok(format!(
        "torus {m:?}, product {h:?} (P = {change:?} takes it to [[0,1],[1,0]]), {units} unit checks, {commuted} commutativity pairs, {triples} associativity triples"
    ))
}

fn criterion_7() -> Check {
    let mut count = 0;
    let all = [fixtures::boundary_tetrahedron(), fixtures::torus(), fixtures::sigma_torus()];
    for cx in &all {
        let n = cx.dim();
        let g2 = ok(gamma_power(cx, 2))?;
        ensure!(ok(in_gk(cx, &g2))?.0, "Γ⊗Γ not in G_2 on {}", cx.name());
        for d in 1..=n {
            for s in cx.simplices(d) {
                let t = ok(TensorChain::primitive(vec![-(n as i64); 2], vec![s.clone(), s.clone()]))?;
                let inside = ok(in_gk(cx, &t))?.0;
                // top-dimensional products are transverse to the diagonal
                ensure!(inside == (d == n), "{s}⊗{s} on {}: in G_2 = {inside}", cx.name());
                count += 1;
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let k = rng.gen_range(2..=3);
            let mut x = random_tensor(cx, k, &mut rng);
            x = ok(TensorChain::from_terms(vec![-(n as i64); k], x.iter().map(|(s, c)| (s.clone(), c.clone()))))?;
            let levels: Vec<bool> = (0..=k).map(|j| in_gk_level(cx, &x, j).map(|r| r.0)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
            ensure!(levels.windows(2).all(|w| w[0] || !w[1]), "Λ levels not monotone: {levels:?}");
        }
        let g3 = ok(gamma_power(cx, 3))?;
        let zs = vec![perversity::zero(n); 3];
        ensure!(ok(split_check(cx, &g3, &zs, 2, 1))?.pass() && ok(split_check(cx, &g3, &zs, 1, 2))?.pass(), "split of Γ^3");
    }
    let (cx, sum, primitives) = cancellation_fixture();
    ensure!(ok(in_gk(&cx, &sum))?.0, "cancellation sum not in G_2");
    for p in &primitives {
        ensure!(!ok(in_gk(&cx, p))?.0, "primitive {p} in G_2");
    }
    ensure!(ok(split_check(&cx, &sum, &[perversity::zero(2), perversity::zero(2)], 1, 1))?.pass(), "split of the cancellation sum");
    Ok(format!("{count} σ⊗σ checks; σ⊗σ ∉ G_2 holds for 0 < dim σ < n, and top-dimensional σ⊗σ lies in G_2"))
}

fn oriented(vertices: &[usize]) -> (Simplex, BigInt) {
    let (sign, sorted) = sort_with_sign(vertices);
    (Simplex::from_sorted(sorted), BigInt::from(sign))
}

fn criterion_8() -> Check {
    let cx = fixtures::sigma_torus();
    let [a, b] = fixtures::torus_loops();
    let edges = |cyc: &[usize]| (0..cyc.len()).map(|i| (cyc[i], cyc[(i + 1) % cyc.len()])).collect::<Vec<_>>();
    let loop_chain = |cyc: &[usize]| Chain::from_terms(1, edges(cyc).into_iter().map(|(u, v)| oriented(&[u, v])).collect::<Vec<_>>()).unwrap();
    let suspension = |cyc: &[usize]| {
        let terms = edges(cyc).into_iter().flat_map(|(u, v)| {
            let (s, x) = oriented(&[u, v, 8]);
            [oriented(&[u, v, 7]), (s, -x)]
        });
        Chain::from_terms(2, terms.collect::<Vec<_>>()).unwrap()
    };
    let (lo, hi) = (pv("0,0"), pv("0,1"));
    let c = loop_chain(&b);
    let d = suspension(&a);
    ensure!(ok(allowable_chain(&cx, &c, &lo))? && ok(allowable_chain(&cx, &d, &hi))?, "fixture cycles not allowable");
    let r = ok(minimal_cover(&lo, &hi))?;
    let good = ok(allowability_audit(&cx, &c, &d, &r))?;
    ensure!(good.pass(), "transverse pair fails:\n{good}");
    let bad = ok(allowability_audit(&cx, &c, &suspension(&b), &r))?;
    let failed: Vec<usize> = bad.rows.iter().filter(|row| !row.pass).map(|row| row.kappa).collect();
    ensure!(failed == vec![cx.dim()], "non-transverse pair fails at {failed:?}");
    Ok(format!("transverse pair passes {} strata at r = {r}; non-transverse pair fails only at κ = {}", good.rows.len(), cx.dim()))
}

fn criterion_9() -> Check {
    let mut total = 0;
    for cx in [fixtures::torus(), fixtures::sigma_torus()] {
        let model = ok(build_ih_model(&cx))?;
        let report = ok(check_leinster(&model, 3))?;
        ensure!(report.pass(), "{}:\n{report}", cx.name());
        for a in Axiom::ALL {
            ensure!(report.checks.iter().any(|c| c.axiom == a), "{a} unchecked");
        }
        total += report.checks.len();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let failures = ok(check_functoriality(&model, 3, 1, &mut rng))?;
        ensure!(failures.is_empty(), "functoriality on {}: {failures:?}", cx.name());
    }
    let mut model = ok(build_ih_model(&fixtures::torus()))?;
    ensure!(model.products_mut().negate_entry((0, 0, 0), (-1, 0), (-1, 1)), "corruption target missing");
    let report = ok(check_leinster(&model, 2))?;
    ensure!(!report.pass(), "corruption not detected");
    Ok(format!("{total} axiom checks pass on torus and ΣT² (quasi-isomorphism read as isomorphism); a negated product sign is caught"))
}

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name).to_string_lossy().into_owned()
}

fn criterion_10() -> Check {
    let commands: Vec<Vec<String>> = vec![
        vec!["validate".into(), fixture("sigma-t2.toml")],
        vec!["homology".into(), fixture("sigma-t2.toml"), "--perversity".into(), "0,0".into()],
        vec!["basis".into(), fixture("torus7.toml"), "--perversity".into(), "0".into()],
        vec!["genpos".into(), fixture("boundary-tetrahedron.toml"), "--chains".into(), fixture("tetra-chains.toml"), "--arity".into(), "2".into()],
        vec!["product".into(), fixture("sigma-t2.toml"), "--cycles".into(), fixture("sigma-t2-transverse.toml")],
        vec!["pairing-matrix".into(), fixture("torus7.toml"), "--p".into(), "0".into(), "--q".into(), "0".into(), "--i".into(), "1".into(), "--j".into(), "1".into()],
        vec!["min-perversity".into(), "0,0,1,1,2".into(), "0,0,1,1,2".into()],
        vec!["dga-check".into(), fixture("torus7.toml")],
        vec!["verify-signs".into()],
    ];
    for args in &commands {
        let mut first: Option<(Vec<u8>, Vec<u8>, Option<i32>)> = None;
        for _ in 0..5 {
            let out = ok(Command::new(env!("CARGO_BIN_EXE_ihchain")).args(args).output())?;
            let got = (out.stdout, out.stderr, out.status.code());
            match &first {
                None => {
                    ensure!(got.2 == Some(0), "{} exited with {:?}", args[0], got.2);
                    first = Some(got);
                }
                Some(f) => ensure!(f == &got, "{} output differs between runs", args[0]),
            }
        }
    }
    Ok(format!("{} commands, 5 runs each, byte-identical", commands.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check, Option<u64>); 10] = [
        ("perversity oracle", criterion_1, Some(10)),
        ("intersection homology of ΣT²", criterion_2, Some(5)),
        ("manifold degeneration", criterion_3, None),
        ("sign identities", criterion_4, Some(5)),
        ("chain-map identities", criterion_5, None),
        ("pairing oracles", criterion_6, Some(60)),
        ("general position suite", criterion_7, None),
        ("allowability audit", criterion_8, None),
        ("Leinster axiom suite", criterion_9, Some(30)),
        ("determinism", criterion_10, None),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, f, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            Err(e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panic".into()))
        });
        let elapsed = start.elapsed();
        let result = match (result, limit) {
            (Ok(_), Some(s)) if elapsed > Duration::from_secs(*s) => Err(format!("took {elapsed:.2?}, limit {s} s")),
            (r, _) => r,
        };
        let limit = limit.map_or(String::new(), |s| format!(", limit {s} s"));
        match result {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{elapsed:.2?}{limit}]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} [{elapsed:.2?}{limit}]", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
