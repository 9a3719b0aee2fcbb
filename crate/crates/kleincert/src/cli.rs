//! Command-line entry point: fixture loading, subcommand dispatch,
//! report emission, and the on-disk cache for group closures and the
//! four invariants.
//!
//! Exit codes: 0 when every computed obligation verified, 1 when an
//! obligation failed, 2 on input or usage errors.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::arith::{CyclotomicField, FieldElement};
use crate::certificate::{
    remark_checks, run_case_analysis_sections, Certificate, GroupChoice, RunOptions, Sections,
    DEFAULT_SEED,
};
use crate::curves::{classify_double_point, localize, multiplicity_at};
use crate::group::{fixture_j168, fixture_j504, GroupFixture, KLEIN_CONDUCTOR};
use crate::invariants::{build_invariants, semiinv::semiinvariant_table, Character};
use crate::orbits::{special_orbits, ProjPoint};
use crate::poly::MultiPoly;
use crate::ring::rational_from_str;

#[derive(Parser)]
#[command(
    name = "kleincert",
    version,
    about = "Exact-arithmetic certificates for the invariant theory and orbit geometry \
             of the order-168 collineation group and its order-504 central extension"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Built-in group fixture to use.
    #[arg(long, global = true, default_value = "j168")]
    group: GroupId,

    /// External group fixture file (JSON) instead of a built-in group.
    #[arg(long, global = true)]
    fixture: Option<PathBuf>,

    /// Output format (JSON carries the full certificates; text is a
    /// projection of the same obligation set).
    #[arg(long, global = true, default_value = "text")]
    format: Format,

    /// Seed for recorded coordinate changes and random spot checks;
    /// never affects any verdict.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,

    /// Worker threads (1 = fully sequential first run).
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,

    /// Cache directory for group closures and invariants
    /// (env: CACHE_DIR).
    #[arg(long, global = true, env = "CACHE_DIR")]
    cache_dir: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GroupId {
    J168,
    J504,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification obligations and report a certificate.
    Verify {
        #[arg(value_enum)]
        what: VerifyWhat,
    },
    /// Orbit queries.
    Orbits {
        #[command(subcommand)]
        sub: OrbitsCmd,
    },
    /// Invariant queries.
    Invariants {
        #[command(subcommand)]
        sub: InvariantsCmd,
    },
    /// Local curve analysis.
    Curves {
        #[command(subcommand)]
        sub: CurvesCmd,
    },
    /// Full certificate plus the closing-remark checks.
    Report,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VerifyWhat {
    All,
    Group,
    Invariants,
    Syzygy,
    Orbits,
    Curves,
    Exceptionality,
}

#[derive(Subcommand)]
enum OrbitsCmd {
    /// List the special orbits with stabilizer orders and representatives.
    List,
}

#[derive(Subcommand)]
enum InvariantsCmd {
    /// Write the four generators (and a semiinvariant basis) as JSON.
    Dump {
        /// also dump the semiinvariant basis of this degree
        #[arg(long)]
        degree: Option<u32>,
    },
}

#[derive(Subcommand)]
enum CurvesCmd {
    /// Analyze a curve locally at a point.
    Analyze {
        /// polynomial file (JSON list of {"exp", "coeff"} terms)
        #[arg(long)]
        curve: PathBuf,
        /// point, either "a:b:c" with rational entries or a JSON array
        /// of three field elements
        #[arg(long)]
        point: String,
    },
}

/// Parse argv and run; returns the process exit code.
pub fn dispatch<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            // clap renders help/version through the error path as well
            let is_help = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            let _ = e.print();
            return if is_help { 0 } else { 2 };
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs.max(1))
        .build()
    {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: cannot build worker pool: {e}");
            return 2;
        }
    };
    pool.install(|| run(cli))
}

fn run(cli: Cli) -> i32 {
    let opts = RunOptions {
        seed: cli.seed,
        faults: vec![],
        fail_fast: false,
    };
    let choice = match group_choice(&cli) {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("error: {msg}");
            return 2;
        }
    };
    match &cli.command {
        Command::Verify { what } => {
            let sections = match what {
                VerifyWhat::All | VerifyWhat::Exceptionality => Sections::all(),
                VerifyWhat::Group => Sections {
                    group: true,
                    ..Sections::none()
                },
                VerifyWhat::Invariants => Sections {
                    invariants: true,
                    syzygy: true,
                    ..Sections::none()
                },
                VerifyWhat::Syzygy => Sections {
                    syzygy: true,
                    ..Sections::none()
                },
                VerifyWhat::Orbits => Sections {
                    orbits: true,
                    ..Sections::none()
                },
                VerifyWhat::Curves => Sections {
                    curves: true,
                    ..Sections::none()
                },
            };
            let cert = run_case_analysis_sections(&choice, &opts, sections);
            maybe_write_cache(&cli, &choice);
            emit_certificate(&cli, &cert)
        }
        Command::Report => {
            let cert = run_case_analysis_sections(&choice, &opts, Sections::all());
            let remarks = remark_checks(&opts);
            let code = if cert.all_verified()
                && remarks
                    .iter()
                    .all(|o| o.status != crate::certificate::ObligationStatus::Failed)
            {
                0
            } else {
                1
            };
            match cli.format {
                Format::Json => {
                    let combined = json!({
                        "certificate": cert,
                        "remark_checks": remarks,
                    });
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&combined).expect("serializes")
                    );
                }
                Format::Text => {
                    print!("{}", cert.to_text());
                    println!("remark checks:");
                    for o in &remarks {
                        println!("  [{:?}] {} {}", o.status, o.id, o.statement);
                    }
                }
            }
            code
        }
        Command::Orbits {
            sub: OrbitsCmd::List,
        } => {
            let group = match build_builtin(&cli) {
                Ok(g) => g,
                Err(msg) => {
                    eprintln!("error: {msg}");
                    return 2;
                }
            };
            let census = match special_orbits(&group) {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("error: {e}");
                    return 1;
                }
            };
            let list: Vec<serde_json::Value> = census
                .orbits
                .iter()
                .map(|o| {
                    json!({
                        "length": o.len(),
                        "stabilizer": o.stabilizer_order,
                        "representative": o.representative,
                    })
                })
                .collect();
            match cli.format {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&list).expect("serializes")
                ),
                Format::Text => {
                    for o in &census.orbits {
                        println!(
                            "length {:>4}  stabilizer {:>2}  representative {:?}",
                            o.len(),
                            o.stabilizer_order,
                            o.representative
                        );
                    }
                }
            }
            0
        }
        Command::Invariants {
            sub: InvariantsCmd::Dump { degree },
        } => {
            let inv = build_invariants();
            let field = CyclotomicField::new(KLEIN_CONDUCTOR).expect("field");
            let mut out = json!({
                "f": inv.f.lift(&field),
                "delta": inv.delta.lift(&field),
                "c": inv.c.lift(&field),
                "k": inv.k.lift(&field),
            });
            if let Some(d) = degree {
                let group = match build_builtin(&cli) {
                    Ok(g) => g,
                    Err(msg) => {
                        eprintln!("error: {msg}");
                        return 2;
                    }
                };
                let chi = Character::trivial(&group);
                let table = semiinvariant_table(&group, &chi, *d);
                let space = table.iter().find(|s| s.degree == *d).expect("in range");
                out["semiinvariant_basis"] = json!({
                    "degree": d,
                    "dimension": space.basis.len(),
                    "molien_dimension": space.molien_dim,
                    "basis": space.basis,
                });
            }
            println!(
                "{}",
                serde_json::to_string_pretty(&out).expect("serializes")
            );
            0
        }
        Command::Curves {
            sub: CurvesCmd::Analyze { curve, point },
        } => match analyze_curve(curve, point) {
            Ok(v) => {
                println!("{}", serde_json::to_string_pretty(&v).expect("serializes"));
                0
            }
            Err(msg) => {
                eprintln!("error: {msg}");
                2
            }
        },
    }
}

fn group_choice(cli: &Cli) -> Result<GroupChoice, String> {
    if let Some(path) = &cli.fixture {
        let fixture = GroupFixture::load(path).map_err(|e| e.to_string())?;
        let id = path
            .file_stem()
            .map(|s| s.to_string_lossy().to_string())
            .unwrap_or_else(|| "fixture".into());
        return Ok(GroupChoice::External { id, fixture });
    }
    Ok(match cli.group {
        GroupId::J168 => GroupChoice::J168,
        GroupId::J504 => GroupChoice::J504,
    })
}

fn build_builtin(cli: &Cli) -> Result<crate::group::MatrixGroup, String> {
    if let Some(path) = &cli.fixture {
        let fixture = GroupFixture::load(path).map_err(|e| e.to_string())?;
        return fixture.build("fixture").map_err(|e| e.to_string());
    }
    match cli.group {
        GroupId::J168 => fixture_j168().map_err(|e| e.to_string()),
        GroupId::J504 => fixture_j504().map_err(|e| e.to_string()),
    }
}

fn emit_certificate(cli: &Cli, cert: &Certificate) -> i32 {
    match cli.format {
        Format::Json => println!("{}", cert.to_json()),
        Format::Text => print!("{}", cert.to_text()),
    }
    if cert.all_verified() {
        0
    } else {
        1
    }
}

/// Content-addressed disk cache: the group fixture and the four
/// invariants, keyed by the fixture digest. The closure and the
/// degree-42 expansion are reused across subcommands.
fn maybe_write_cache(cli: &Cli, choice: &GroupChoice) {
    let Some(dir) = &cli.cache_dir else {
        return;
    };
    let fixture = match choice {
        GroupChoice::External { fixture, .. } => fixture.clone(),
        GroupChoice::J168 => match fixture_j168() {
            Ok(g) => GroupFixture::from_group(&g),
            Err(_) => return,
        },
        GroupChoice::J504 => match fixture_j504() {
            Ok(g) => GroupFixture::from_group(&g),
            Err(_) => return,
        },
    };
    let digest = fixture.digest();
    let base = dir.join(digest);
    if base.exists() {
        return;
    }
    if std::fs::create_dir_all(&base).is_err() {
        return;
    }
    let _ = std::fs::write(
        base.join("fixture.json"),
        serde_json::to_string_pretty(&fixture).expect("serializes"),
    );
    let field = match CyclotomicField::new(fixture.conductor) {
        Ok(f) => f,
        Err(_) => return,
    };
    let inv = build_invariants();
    let payload = json!({
        "f": inv.f.lift(&field),
        "delta": inv.delta.lift(&field),
        "c": inv.c.lift(&field),
        "k": inv.k.lift(&field),
    });
    let _ = std::fs::write(
        base.join("invariants.json"),
        serde_json::to_string_pretty(&payload).expect("serializes"),
    );
}

fn analyze_curve(curve_path: &PathBuf, point_spec: &str) -> Result<serde_json::Value, String> {
    let text = std::fs::read_to_string(curve_path)
        .map_err(|e| format!("read {}: {e}", curve_path.display()))?;
    let poly: MultiPoly<FieldElement> =
        serde_json::from_str(&text).map_err(|e| format!("parse curve: {e}"))?;
    if poly.is_zero() {
        return Err("curve polynomial is zero".into());
    }
    let point = parse_point(point_spec, &poly)?;
    let data = multiplicity_at(&poly, &point).map_err(|e| e.to_string())?;
    let mut out = json!({
        "point": point,
        "multiplicity": data.multiplicity,
        "assumptions": data.assumptions.iter().map(|a| a.to_string()).collect::<Vec<_>>(),
        "chart": { "label": data.chart.label, "matrix": data.chart.matrix },
    });
    if data.multiplicity == 2 {
        let local = localize(&poly, &data.chart);
        match classify_double_point(&local) {
            Ok((ty, asm)) => {
                out["double_point_type"] = json!(ty);
                out["classification_assumptions"] =
                    json!(asm.iter().map(|a| a.to_string()).collect::<Vec<_>>());
            }
            Err(e) => {
                out["double_point_type"] = json!(format!("unclassified: {e}"));
            }
        }
    }
    Ok(out)
}

fn parse_point(spec: &str, poly: &MultiPoly<FieldElement>) -> Result<ProjPoint, String> {
    let field = poly
        .terms()
        .next()
        .map(|(_, c)| c.field().clone())
        .ok_or("curve has no terms")?;
    let trimmed = spec.trim();
    if trimmed.starts_with('[') {
        let coords: Vec<FieldElement> =
            serde_json::from_str(trimmed).map_err(|e| format!("parse point: {e}"))?;
        if coords.len() != 3 {
            return Err("point needs three coordinates".into());
        }
        let mut it = coords.into_iter();
        return Ok(ProjPoint::new([
            it.next().unwrap(),
            it.next().unwrap(),
            it.next().unwrap(),
        ]));
    }
    let parts: Vec<&str> = trimmed.split(':').collect();
    if parts.len() != 3 {
        return Err("point must be a:b:c or a JSON array".into());
    }
    let mut coords = Vec::new();
    for p in parts {
        let r = rational_from_str(p)?;
        coords.push(FieldElement::from_rational(&field, r));
    }
    if coords.iter().all(|c| c.is_zero()) {
        return Err("point coordinates are all zero".into());
    }
    let mut it = coords.into_iter();
    Ok(ProjPoint::new([
        it.next().unwrap(),
        it.next().unwrap(),
        it.next().unwrap(),
    ]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(dispatch(["kleincert", "bogus"]), 2);
        assert_eq!(dispatch(["kleincert", "verify", "nonsense"]), 2);
    }

    #[test]
    fn verify_syzygy_exits_0() {
        assert_eq!(dispatch(["kleincert", "verify", "syzygy"]), 0);
    }

    #[test]
    fn broken_fixture_exits_1() {
        // an order mismatch must flip the exit code, not crash
        let g = fixture_j168().unwrap();
        let mut fx = GroupFixture::from_group(&g);
        fx.expected_order = Some(167);
        let dir = std::env::temp_dir().join("kleincert-test-fixtures");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("broken.json");
        std::fs::write(&path, serde_json::to_string(&fx).unwrap()).unwrap();
        let code = dispatch([
            "kleincert",
            "verify",
            "group",
            "--fixture",
            path.to_str().unwrap(),
        ]);
        assert_eq!(code, 1);
    }
}
