use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use glueq::cocycle::{self, cocycle_condition_residual};
use glueq::cusp::{cusp_to_nz, generate_cusp};
use glueq::gluing::{self, generate, symplectic_pairing, to_nz};
use glueq::lattice;
use glueq::ptolemy;
use glueq::shape::ShapeAssignment;
use glueq::solver::{self, DropStrategy, NZDatum, SolveConfig};
use glueq::triangulation::ConcreteTriangulation;
use glueq::Error;

#[derive(Parser)]
#[command(name = "glueq", version, about = "Gluing equations, Ptolemy relations and cusp equations for PGL(n,C) representations of triangulated 3-manifolds")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(clap::Args)]
struct Common {
    /// Triangulation file (JSON); `fig8` and `five_tet` name bundled fixtures
    file: String,
    /// Rank parameter n of PGL(n,C)
    #[arg(short, long, default_value_t = 2)]
    n: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Residual tolerance (default from GLUEQ_TOL if set)
    #[arg(long)]
    tol: Option<f64>,
}

impl Common {
    fn tol(&self) -> f64 {
        self.tol
            .or_else(|| std::env::var("GLUEQ_TOL").ok()?.parse().ok())
            .unwrap_or(1e-9)
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// List integral point classes of the quotient
    Points(Common),
    /// Generate the generalized gluing equations
    Gluing(Common),
    /// Generate Ptolemy relations with identification signs
    Ptolemy(Common),
    /// Neumann-Zagier matrices (A|B)
    Nz {
        #[command(flatten)]
        common: Common,
        /// Verify that all row pairs Poisson-commute
        #[arg(long)]
        check_symplectic: bool,
    },
    /// Cusp equations of a peripheral curve
    Cusp {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "mu")]
        curve: String,
    },
    /// Solve the reduced system and print the natural cocycle of a solution
    Cocycle {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "mu")]
        meridian: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Numerically solve the gluing + cusp system
    Solve {
        #[command(flatten)]
        common: Common,
        /// Cusp curves to include (defaults to every curve in the file)
        #[arg(long)]
        curve: Vec<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        restarts: usize,
    },
    /// 1-loop invariant from the enhanced Neumann-Zagier datum
    OneLoop {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "mu")]
        meridian: String,
        /// Restrict to the solution with all shapes in the upper half plane
        #[arg(long)]
        geometric: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        restarts: usize,
    },
    /// Validate a triangulation and check the structural theorems
    Verify(Common),
}

fn load(file: &str) -> Result<ConcreteTriangulation, Error> {
    let text = match file {
        "fig8" | "fig8.json" if !std::path::Path::new(file).exists() => {
            glueq::fixtures::FIG8_JSON.to_string()
        }
        "five_tet" | "five_tet.json" if !std::path::Path::new(file).exists() => {
            glueq::fixtures::FIVE_TET_JSON.to_string()
        }
        path => std::fs::read_to_string(path)?,
    };
    ConcreteTriangulation::parse(&text)
}

fn complex_json(z: Complex64) -> serde_json::Value {
    serde_json::json!([z.re, z.im])
}

fn run() -> Result<(), Error> {
    match Cli::parse().cmd {
        Cmd::Points(c) => {
            let tri = load(&c.file)?;
            let q = lattice::quotient(&tri, c.n)?;
            match c.format {
                Format::Json => {
                    let classes: Vec<_> = q
                        .classes
                        .iter()
                        .map(|cl| {
                            serde_json::json!({
                                "kind": format!("{:?}", cl.kind).to_lowercase(),
                                "reps": cl.reps.iter().map(|(t, p)| serde_json::json!([t, p])).collect::<Vec<_>>(),
                                "signs": cl.signs,
                            })
                        })
                        .collect();
                    println!("{}", serde_json::json!({ "n": c.n, "classes": classes }));
                }
                _ => {
                    for cl in &q.classes {
                        let reps: Vec<String> = cl
                            .reps
                            .iter()
                            .zip(&cl.signs)
                            .map(|(&(tet, t), &s)| {
                                format!(
                                    "{}({},{}{}{}{}{})",
                                    if s == 1 { "+" } else { "-" },
                                    tet,
                                    t[0],
                                    t[1],
                                    t[2],
                                    t[3],
                                    ""
                                )
                            })
                            .collect();
                        println!("{:?}: {}", cl.kind, reps.join(" "));
                    }
                }
            }
        }
        Cmd::Gluing(c) => {
            let tri = load(&c.file)?;
            let sys = generate(&tri, c.n)?;
            match c.format {
                Format::Text => {
                    for eq in &sys.equations {
                        println!("{}", gluing::equation_text(&sys, eq));
                    }
                }
                Format::Json => println!("{}", gluing::system_json(&sys)),
                Format::Csv => print!("{}", gluing::nz_csv(&to_nz(&sys.equations)?)),
            }
        }
        Cmd::Ptolemy(c) => {
            let tri = load(&c.file)?;
            let q = lattice::quotient(&tri, c.n)?;
            let rels = ptolemy::generate_relations(&tri, c.n)?;
            match c.format {
                Format::Json => {
                    let out: Vec<_> = rels
                        .iter()
                        .map(|r| {
                            serde_json::json!({
                                "tet": r.tet,
                                "s": r.s,
                                "terms": r.terms.iter().map(|pair| {
                                    pair.iter().map(|v| serde_json::json!({
                                        "class": v.class_id,
                                        "sign": v.sign,
                                        "rep": q.classes[v.class_id].reps[0].1,
                                    })).collect::<Vec<_>>()
                                }).collect::<Vec<_>>(),
                            })
                        })
                        .collect();
                    println!("{}", serde_json::Value::Array(out));
                }
                _ => {
                    for r in &rels {
                        println!("{}", ptolemy::relation_text(r, &q));
                    }
                }
            }
        }
        Cmd::Nz {
            common: c,
            check_symplectic,
        } => {
            let tri = load(&c.file)?;
            let sys = generate(&tri, c.n)?;
            let nz = to_nz(&sys.equations)?;
            let rows = nz.symplectic_rows(&tri.eps, sys.subs.len());
            if check_symplectic {
                let mut all_zero = true;
                for i in 0..rows.len() {
                    for j in i..rows.len() {
                        all_zero &= symplectic_pairing(&rows[i], &rows[j])? == 0;
                    }
                }
                println!(
                    "{}x{}, {}",
                    rows.len(),
                    rows.first().map_or(0, |r| r.len()),
                    if all_zero {
                        "all pairings 0"
                    } else {
                        "nonzero pairing found"
                    }
                );
                if !all_zero {
                    return Err(Error::Dimension("symplectic check failed".into()));
                }
                return Ok(());
            }
            match c.format {
                Format::Json => println!(
                    "{}",
                    serde_json::json!({"a": nz.a, "b": nz.b, "rhs": nz.rhs})
                ),
                _ => print!("{}", gluing::nz_csv(&nz)),
            }
        }
        Cmd::Cusp { common: c, curve } => {
            let tri = load(&c.file)?;
            let sys = generate(&tri, c.n)?;
            let eqs = generate_cusp(&tri, c.n, &curve)?;
            match c.format {
                Format::Json => {
                    let out: Vec<_> = eqs
                        .iter()
                        .map(|e| {
                            serde_json::json!({
                                "level": e.level,
                                "a_prime": e.a, "b_prime": e.b, "c_prime": e.c,
                                "rhs_sign": e.rhs_sign,
                            })
                        })
                        .collect();
                    println!("{}", serde_json::Value::Array(out));
                }
                Format::Csv => print!("{}", gluing::nz_csv(&cusp_to_nz(&eqs))),
                Format::Text => {
                    for e in &eqs {
                        let row = e.role_row(&sys);
                        let parts: Vec<String> = row
                            .iter()
                            .map(|((tet, s, role), m)| {
                                let edge = lattice::edge_of_role(*role);
                                let estr: String = edge.iter().map(|x| x.to_string()).collect();
                                let sstr: String = s.iter().map(|x| x.to_string()).collect();
                                let mut p = format!("z_{{{},{}}}^{{{}}}", sstr, tet, estr);
                                if *m != 1 {
                                    p.push_str(&format!("^{}", m));
                                }
                                p
                            })
                            .collect();
                        println!(
                            "level {}: {} = {}",
                            e.level,
                            parts.join(" * "),
                            if e.rhs_sign == 1 { "1" } else { "-1" }
                        );
                    }
                }
            }
        }
        Cmd::Cocycle {
            common: c,
            meridian,
            seed,
        } => {
            let tri = load(&c.file)?;
            let red = solver::nz_reduce(&tri, c.n, &meridian, DropStrategy::Forward)?;
            let cfg = SolveConfig {
                seed,
                tol: c.tol(),
                ..Default::default()
            };
            let sols = solver::newton_solve(&red.ab, &cfg);
            let Some(z) = sols.first() else {
                return Err(Error::ResidualTooLarge(f64::INFINITY, c.tol()));
            };
            let za = ShapeAssignment::from_flat(c.n, tri.num_tet(), z);
            let mut out = serde_json::Map::new();
            for tet in 0..tri.num_tet() {
                let coc = cocycle::pgl_cocycle_from_shapes(&za, tet)?;
                let ok = cocycle_condition_residual(&coc, 1e-8)?;
                let mut labels = serde_json::Map::new();
                for triple in cocycle::all_triples() {
                    let key = format!("{}{}{}", triple[0], triple[1], triple[2]);
                    let mat = |m: &glueq::cmatrix::CMat| {
                        (0..m.n)
                            .map(|i| (0..m.m).map(|j| complex_json(m[(i, j)])).collect::<Vec<_>>())
                            .collect::<Vec<_>>()
                    };
                    labels.insert(
                        key,
                        serde_json::json!({
                            "alpha": mat(&coc.alpha[&triple]),
                            "beta": mat(&coc.beta[&triple]),
                            "gamma": mat(&coc.gamma[&triple]),
                        }),
                    );
                }
                out.insert(
                    format!("tet{}", tet),
                    serde_json::json!({"cocycle_condition": ok, "labels": labels}),
                );
            }
            println!("{}", serde_json::Value::Object(out));
        }
        Cmd::Solve {
            common: c,
            curve,
            seed,
            restarts,
        } => {
            let tri = load(&c.file)?;
            let sys = generate(&tri, c.n)?;
            let mut nz = to_nz(&sys.equations)?;
            let curves: Vec<String> = if curve.is_empty() {
                tri.curves.iter().map(|cv| cv.name.clone()).collect()
            } else {
                curve
            };
            for name in &curves {
                let cu = cusp_to_nz(&generate_cusp(&tri, c.n, name)?);
                nz.a.extend(cu.a);
                nz.b.extend(cu.b);
                nz.rhs.extend(cu.rhs);
            }
            let cfg = SolveConfig {
                seed,
                restarts,
                tol: c.tol(),
                ..Default::default()
            };
            let sols = solver::newton_solve(&nz, &cfg);
            match c.format {
                Format::Json => {
                    let out: Vec<_> = sols
                        .iter()
                        .map(|s| {
                            serde_json::Value::Array(
                                s.iter().copied().map(complex_json).collect(),
                            )
                        })
                        .collect();
                    println!("{}", serde_json::Value::Array(out));
                }
                Format::Csv => {
                    for s in &sols {
                        let cells: Vec<String> =
                            s.iter().flat_map(|z| [z.re.to_string(), z.im.to_string()]).collect();
                        println!("{}", cells.join(","));
                    }
                }
                Format::Text => {
                    for (i, s) in sols.iter().enumerate() {
                        let parts: Vec<String> =
                            s.iter().map(|z| format!("{:.6}{:+.6}i", z.re, z.im)).collect();
                        println!("solution {}: {}", i, parts.join("  "));
                    }
                    if sols.is_empty() {
                        println!("no solutions found within budget");
                    }
                }
            }
            if sols.is_empty() {
                return Err(Error::ResidualTooLarge(f64::INFINITY, cfg.tol));
            }
        }
        Cmd::OneLoop {
            common: c,
            meridian,
            geometric,
            seed,
            restarts,
        } => {
            let tri = load(&c.file)?;
            let red = solver::nz_reduce(&tri, c.n, &meridian, DropStrategy::Forward)?;
            let (f, f2) = solver::find_flattening(&red.a_dg, &red.b_dg, &red.nu)?;
            let cfg = SolveConfig {
                seed,
                restarts,
                tol: c.tol(),
                ..Default::default()
            };
            let mut sols = solver::newton_solve(&red.ab, &cfg);
            if geometric {
                // positively oriented simplices have Im z > 0, negatively
                // oriented ones Im z < 0
                let per_tet = lattice::subsimplices(c.n).len();
                sols.retain(|s| {
                    s.iter().enumerate().all(|(j, z)| {
                        z.im * f64::from(tri.eps[j / per_tet]) > 0.0
                    })
                });
            }
            if sols.is_empty() {
                return Err(Error::ResidualTooLarge(f64::INFINITY, cfg.tol));
            }
            for z in &sols {
                let datum = NZDatum {
                    a: red.a_dg.clone(),
                    b: red.b_dg.clone(),
                    nu: red.nu.clone(),
                    z: z.clone(),
                    f: f.clone(),
                    f2: f2.clone(),
                };
                let tau = solver::one_loop(&datum)?;
                match c.format {
                    Format::Json => println!(
                        "{}",
                        serde_json::json!({"tau": complex_json(tau), "abs": tau.norm(),
                            "z": z.iter().copied().map(complex_json).collect::<Vec<_>>()})
                    ),
                    _ => println!("|tau| = {:.7}  (tau = {:.7}{:+.7}i)", tau.norm(), tau.re, tau.im),
                }
            }
        }
        Cmd::Verify(c) => {
            let tri = load(&c.file)?;
            tri.require_closed()?;
            let sys = generate(&tri, c.n)?;
            let t = tri.num_tet();
            let expect = t * lattice::binomial(c.n + 1, 3);
            println!(
                "triangulation: {} tetrahedra, orientation signs {:?}",
                t, tri.eps
            );
            println!(
                "equations: {} (shape coordinates: {})",
                sys.equations.len(),
                sys.num_cols()
            );
            if sys.num_cols() != expect {
                return Err(Error::Dimension(format!(
                    "expected {} shape coordinates",
                    expect
                )));
            }
            let nz = to_nz(&sys.equations)?;
            let rows = nz.symplectic_rows(&tri.eps, sys.subs.len());
            for i in 0..rows.len() {
                for j in i..rows.len() {
                    if symplectic_pairing(&rows[i], &rows[j])? != 0 {
                        return Err(Error::Dimension(format!(
                            "rows {} and {} do not Poisson-commute",
                            i, j
                        )));
                    }
                }
            }
            println!("symplectic: all {} row pairs commute", rows.len() * (rows.len() + 1) / 2);
            let (beta, beta_star) = gluing::beta_matrices(&tri, c.n)?;
            for row in &beta_star {
                for jcol in 0..beta[0].len() {
                    let dot: i64 = (0..beta.len()).map(|k| row[k] * beta[k][jcol]).sum();
                    if dot != 0 {
                        return Err(Error::Dimension("β*∘β != 0".into()));
                    }
                }
            }
            println!("chain complex: β*∘β = 0");
            for curve in &tri.curves {
                let eqs = generate_cusp(&tri, c.n, &curve.name)?;
                let cu = cusp_to_nz(&eqs).symplectic_rows(&tri.eps, sys.subs.len());
                for r in &cu {
                    for g in &rows {
                        if symplectic_pairing(r, g)? != 0 {
                            return Err(Error::Dimension(format!(
                                "cusp rows of {} do not commute with gluing rows",
                                curve.name
                            )));
                        }
                    }
                }
                println!("cusp {}: {} levels, rows commute with gluing rows", curve.name, eqs.len());
            }
            println!("ok");
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e);
            let numerical = matches!(
                e,
                Error::ResidualTooLarge(..)
                    | Error::Singular
                    | Error::NoFlattening
                    | Error::NonGenericDecoration(..)
                    | Error::DegenerateShape(..)
            );
            if numerical {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
