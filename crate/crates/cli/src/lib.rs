//! Command-line driver. Thin: all mathematics lives in the library
//! crate; this one parses documents, runs the requested computation,
//! and prints reports.
//!
//! Exit codes: 0 success, 1 bad input or usage, 2 internal
//! cross-check mismatch.

pub mod doc;
pub mod report;

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use realh1::catalog;
use realh1::f2;
use realh1::h1core::{self, H1Options};
use realh1::oracles;
use realh1::realform::{compact_form, RealFormSpec};
use realh1::rootdata::RootDatum;
use realh1::torus::{RealTorus, TorusPart};
use realh1::Error as CoreError;

use doc::ParsedSpec;
use report::{CheckLine, CheckReport, TableReport, TableRow};

#[derive(Parser)]
#[command(
    name = "realh1",
    version,
    about = "Galois cohomology of real reductive groups by exact lattice computations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit the report as JSON instead of plain text.
    #[arg(long, global = true)]
    json: bool,
    /// Write the report to a file instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Cohomology and 2-torsion bookkeeping of an involutive lattice.
    Torus {
        /// Input document with a `lattice` section.
        file: PathBuf,
    },
    /// Orbit set of the twisted action described by a real-form document.
    Group {
        /// Input document with `root_datum` and `real_form` sections.
        file: PathBuf,
        /// Cross-check the orbit count by fixed-point averaging.
        #[arg(long)]
        burnside: bool,
        /// Group-enumeration budget for the order probe and averaging.
        #[arg(long, default_value_t = 10_000)]
        cutoff: usize,
    },
    /// Cohomology cardinalities of a family of compact forms.
    Table {
        /// One of A, B, C, D, G2, F4, E8.
        #[arg(long)]
        series: String,
        /// Largest rank to include; fixed-rank series ignore it.
        #[arg(long, default_value_t = 8)]
        max_rank: usize,
    },
    /// Re-derive everything about a document along independent routes.
    Check {
        file: PathBuf,
        /// Group-enumeration budget for the cross-checks.
        #[arg(long, default_value_t = 10_000)]
        cutoff: usize,
        /// Seed for the randomized twist sweep.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

enum AppError {
    /// Unusable input: parse failure, validation failure, I/O trouble.
    Input(String),
    /// Two routes to the same number disagreed.
    Mismatch(String),
}

impl From<doc::DocError> for AppError {
    fn from(e: doc::DocError) -> AppError {
        AppError::Input(e.to_string())
    }
}

impl From<CoreError> for AppError {
    fn from(e: CoreError) -> AppError {
        AppError::Input(e.to_string())
    }
}

impl From<std::io::Error> for AppError {
    fn from(e: std::io::Error) -> AppError {
        AppError::Input(e.to_string())
    }
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let usage_only = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let _ = e.print();
            return if usage_only { 0 } else { 1 };
        }
    };
    match execute(cli) {
        Ok(()) => 0,
        Err(AppError::Input(message)) => {
            eprintln!("error: {message}");
            1
        }
        Err(AppError::Mismatch(message)) => {
            eprintln!("mismatch: {message}");
            2
        }
    }
}

fn execute(cli: Cli) -> Result<(), AppError> {
    let (json, human, verdict) = match &cli.command {
        Command::Torus { file } => {
            let (label, torus) = load_torus(file)?;
            let report = report::torus_report(&label, &torus)?;
            (
                serde_json::to_string_pretty(&report).expect("report serializes"),
                report::render_torus(&report),
                Ok(()),
            )
        }
        Command::Group {
            file,
            burnside,
            cutoff,
        } => {
            let form = load_group(file)?;
            let options = H1Options {
                order_cutoff: *cutoff,
                ..H1Options::default()
            };
            let result = h1core::h1_group_with(&form, &options)?;
            let average = if *burnside {
                let b = h1core::burnside_count(&form, *cutoff).map_err(|e| match e {
                    CoreError::CutoffExceeded { .. } => AppError::Input(format!(
                        "group order exceeds --cutoff {cutoff}; cannot average fixed points"
                    )),
                    other => AppError::from(other),
                })?;
                Some(b)
            } else {
                None
            };
            let report =
                report::group_report(form.label(), form.datum().rank(), &result, average);
            let verdict = match average {
                Some(b) if b != result.cardinality => Err(AppError::Mismatch(format!(
                    "fixed-point average {b} disagrees with orbit count {}",
                    result.cardinality
                ))),
                _ => Ok(()),
            };
            (
                serde_json::to_string_pretty(&report).expect("report serializes"),
                report::render_group(&report),
                verdict,
            )
        }
        Command::Table { series, max_rank } => {
            let report = table(series, *max_rank)?;
            (
                serde_json::to_string_pretty(&report).expect("report serializes"),
                report::render_table(&report),
                Ok(()),
            )
        }
        Command::Check { file, cutoff, seed } => {
            let report = match doc::load(file)? {
                ParsedSpec::Torus { label, torus } => check_torus(&label, &torus)?,
                ParsedSpec::Group(form) => check_group(&form, *cutoff, *seed)?,
            };
            let verdict = if report.passed() {
                Ok(())
            } else {
                Err(AppError::Mismatch(format!(
                    "{} failed cross-checks; see report",
                    report.label
                )))
            };
            (
                serde_json::to_string_pretty(&report).expect("report serializes"),
                report::render_check(&report),
                verdict,
            )
        }
    };
    let text = if cli.json { json } else { human };
    match &cli.out {
        Some(path) => fs::write(path, ensure_newline(text))?,
        None => print!("{}", ensure_newline(text)),
    }
    verdict
}

fn ensure_newline(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

fn load_torus(file: &Path) -> Result<(String, RealTorus), AppError> {
    match doc::load(file)? {
        ParsedSpec::Torus { label, torus } => Ok((label, torus)),
        ParsedSpec::Group(_) => Err(AppError::Input(format!(
            "{} describes a group; the torus command needs a `lattice` section",
            file.display()
        ))),
    }
}

fn load_group(file: &Path) -> Result<RealFormSpec, AppError> {
    match doc::load(file)? {
        ParsedSpec::Group(form) => Ok(form),
        ParsedSpec::Torus { .. } => Err(AppError::Input(format!(
            "{} describes a bare lattice; the group command needs `root_datum` and `real_form`",
            file.display()
        ))),
    }
}

fn table(series: &str, max_rank: usize) -> Result<TableReport, AppError> {
    let mut data: Vec<(String, RootDatum)> = Vec::new();
    let canonical = match series.to_ascii_uppercase().as_str() {
        "A" => {
            for rank in 1..=max_rank {
                data.push((format!("SU({})", rank + 1), catalog::su(rank + 1)));
            }
            "A"
        }
        "B" => {
            for rank in 1..=max_rank {
                data.push((format!("SO({})", 2 * rank + 1), catalog::so(2 * rank + 1)));
            }
            "B"
        }
        "C" => {
            for rank in 1..=max_rank {
                data.push((format!("Sp({rank})"), catalog::sp(rank)));
            }
            "C"
        }
        "D" => {
            for rank in 2..=max_rank {
                data.push((format!("SO({})", 2 * rank), catalog::so(2 * rank)));
            }
            "D"
        }
        "G" | "G2" => {
            data.push(("G2".to_string(), catalog::g2()));
            "G2"
        }
        "F" | "F4" => {
            data.push(("F4".to_string(), catalog::f4()));
            "F4"
        }
        "E8" => {
            data.push(("E8".to_string(), catalog::e8()));
            "E8"
        }
        other => {
            return Err(AppError::Input(format!(
                "unknown series {other:?}; expected A, B, C, D, G2, F4, or E8"
            )))
        }
    };
    let mut rows = Vec::new();
    for (label, datum) in data {
        let rank = datum.rank();
        let result = h1core::h1_group(&compact_form(datum))?;
        rows.push(TableRow {
            label,
            rank,
            h1_size: result
                .cardinality
                .try_into()
                .expect("orbit counts fit in 64 bits"),
        });
    }
    Ok(TableReport {
        series: canonical.to_string(),
        rows,
    })
}

/// Enumeration budget for elementwise torus checks: spaces bigger than
/// this are reported as skipped rather than walked.
const ENUMERATION_BITS: usize = 16;

fn check_torus(label: &str, torus: &RealTorus) -> Result<CheckReport, AppError> {
    let mut checks = Vec::new();
    let (p, q, r) = torus.lattice().decompose()?.multiplicities();
    checks.push(CheckLine::ok("decompose", format!("p={p} q={q} r={r}")));

    let h1 = torus.h1();
    let by_types = oracles::torus_h1_by_types(torus.lattice())?;
    checks.push(if by_types == h1.size() {
        CheckLine::ok("h1_size_two_routes", format!("{by_types}"))
    } else {
        CheckLine::mismatch(
            "h1_size_two_routes",
            format!("subquotient {} vs type count {by_types}", h1.size()),
        )
    });

    let points2 = torus.points2();
    checks.push(if points2.size() == 1u128 << (p + q + r) {
        CheckLine::ok("points2_size", format!("{}", points2.size()))
    } else {
        CheckLine::mismatch(
            "points2_size",
            format!("{} vs expected {}", points2.size(), 1u128 << (p + q + r)),
        )
    });

    let counts = torus.compact_intersection_counts();
    checks.push(
        if counts.compact_points2 == counts.intersection * counts.h1 {
            CheckLine::ok(
                "compact_over_intersection",
                format!(
                    "{} / {} = {}",
                    counts.compact_points2, counts.intersection, counts.h1
                ),
            )
        } else {
            CheckLine::mismatch(
                "compact_over_intersection",
                format!(
                    "{} / {} != {}",
                    counts.compact_points2, counts.intersection, counts.h1
                ),
            )
        },
    );

    if points2.dim() > ENUMERATION_BITS {
        checks.push(CheckLine::skipped(
            "lambda_kernel_is_split_image",
            "too many 2-torsion points to enumerate",
        ));
        checks.push(CheckLine::skipped("lambda_surjective", "same"));
        checks.push(CheckLine::skipped("mu_surjective", "same"));
    } else {
        let split_image: BTreeSet<Vec<u8>> =
            torus.part_points2_image(TorusPart::Split).members().collect();
        let mut kernel = BTreeSet::new();
        let mut classes = BTreeSet::new();
        for x in points2.members() {
            let class = torus.class_of_point2(&x)?;
            if class.is_trivial() {
                kernel.insert(x);
            }
            classes.insert(class.vector().clone());
        }
        checks.push(if kernel == split_image {
            CheckLine::ok(
                "lambda_kernel_is_split_image",
                format!("{} points", kernel.len()),
            )
        } else {
            CheckLine::mismatch(
                "lambda_kernel_is_split_image",
                format!("kernel {} vs split image {}", kernel.len(), split_image.len()),
            )
        });
        checks.push(if classes.len() as u128 == h1.size() {
            CheckLine::ok("lambda_surjective", format!("{} classes", classes.len()))
        } else {
            CheckLine::mismatch(
                "lambda_surjective",
                format!("{} classes vs {}", classes.len(), h1.size()),
            )
        });
        let (compact, _) = torus.part(TorusPart::Compact);
        let mut compact_classes = BTreeSet::new();
        for x in compact.points2().members() {
            compact_classes.insert(torus.compact_class(&x)?.vector().clone());
        }
        checks.push(if compact_classes.len() as u128 == h1.size() {
            CheckLine::ok(
                "mu_surjective",
                format!("{} compact points cover", counts.compact_points2),
            )
        } else {
            CheckLine::mismatch(
                "mu_surjective",
                format!("{} classes vs {}", compact_classes.len(), h1.size()),
            )
        });
    }

    Ok(CheckReport {
        label: label.to_string(),
        kind: "torus".to_string(),
        checks,
    })
}

fn check_group(form: &RealFormSpec, cutoff: usize, seed: u64) -> Result<CheckReport, AppError> {
    let mut checks = Vec::new();
    let options = H1Options {
        order_cutoff: cutoff,
        ..H1Options::default()
    };
    let result = h1core::h1_group_with(form, &options)?;
    let (space, _) = h1core::h1_partition(form, &options)?;
    checks.push(CheckLine::ok("orbits", format!("{}", result.cardinality)));

    let covered: u128 = result.orbit_sizes.iter().sum();
    checks.push(if covered == space.size() {
        CheckLine::ok("orbit_sizes_cover_space", format!("{covered}"))
    } else {
        CheckLine::mismatch(
            "orbit_sizes_cover_space",
            format!("{covered} vs {}", space.size()),
        )
    });

    match result.w0_order {
        Some(order) => {
            let averaged = h1core::burnside_count(form, cutoff)?;
            checks.push(if averaged == result.cardinality {
                CheckLine::ok("burnside", format!("{averaged} over {order} elements"))
            } else {
                CheckLine::mismatch(
                    "burnside",
                    format!("average {averaged} vs orbit count {}", result.cardinality),
                )
            });
            let brute = oracles::orbit_count_bruteforce(form, cutoff)?;
            checks.push(if brute == result.cardinality {
                CheckLine::ok("bruteforce", format!("{brute}"))
            } else {
                CheckLine::mismatch(
                    "bruteforce",
                    format!("{brute} vs orbit count {}", result.cardinality),
                )
            });
        }
        None => {
            checks.push(CheckLine::skipped(
                "burnside",
                format!("group order exceeds cutoff {cutoff}"),
            ));
            checks.push(CheckLine::skipped("bruteforce", "same"));
        }
    }

    checks.push(twist_sweep(form, &options, seed)?);

    let torus = form.fundamental_torus();
    if torus.points2().dim() <= ENUMERATION_BITS {
        let (space, partition) = h1core::h1_partition(form, &options)?;
        let reps: BTreeSet<Vec<u8>> = result.representatives.iter().cloned().collect();
        let mut bad = 0usize;
        let mut seen = 0usize;
        for x in torus.points2().members() {
            seen += 1;
            let class = torus.class_of_point2(&x)?;
            let packed = space
                .packed_of_vector(class.vector())
                .expect("classes live in the cohomology space");
            let rep = &partition.representatives[partition.orbit_of_packed(packed)];
            if !reps.contains(rep) {
                bad += 1;
            }
        }
        checks.push(if bad == 0 {
            CheckLine::ok("real_points_canonicalize", format!("{seen} points"))
        } else {
            CheckLine::mismatch(
                "real_points_canonicalize",
                format!("{bad} of {seen} points missed the representatives"),
            )
        });
    } else {
        checks.push(CheckLine::skipped(
            "real_points_canonicalize",
            "too many 2-torsion points to enumerate",
        ));
    }

    Ok(CheckReport {
        label: form.label().to_string(),
        kind: "group".to_string(),
        checks,
    })
}

/// 100 random base classes: twisting must keep the orbit count and turn
/// the partition into its translate.
fn twist_sweep(
    form: &RealFormSpec,
    options: &H1Options,
    seed: u64,
) -> Result<CheckLine, AppError> {
    let (space, original) = h1core::h1_partition(form, options)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rounds = 100usize;
    for round in 0..rounds {
        let coords: Vec<u8> = (0..space.dim()).map(|_| rng.gen_range(0..=1)).collect();
        let zeta = space.vector_of_coords(&coords);
        let twisted = h1core::twist(form, &zeta);
        let (tspace, moved) = h1core::h1_partition(&twisted, options)?;
        if moved.orbit_count() != original.orbit_count() {
            return Ok(CheckLine::mismatch(
                "twist_invariance",
                format!(
                    "round {round}: {} orbits vs {}",
                    moved.orbit_count(),
                    original.orbit_count()
                ),
            ));
        }
        // Partition equality up to translation: x and y share a twisted
        // orbit exactly when x + zeta and y + zeta share an original
        // one, i.e. translation induces a bijection of orbit indices.
        let orbits = moved.orbit_count() as usize;
        let mut forward: Vec<Option<usize>> = vec![None; orbits];
        let mut backward: Vec<Option<usize>> = vec![None; orbits];
        for x in 0..(space.size() as u32) {
            let mut shifted = tspace.vector_of_packed(x);
            f2::xor_into(&mut shifted, &zeta);
            let image = space
                .packed_of_vector(&shifted)
                .expect("translate stays in the space");
            let t = moved.orbit_of_packed(x);
            let o = original.orbit_of_packed(image);
            let consistent = forward[t].is_none_or(|seen| seen == o)
                && backward[o].is_none_or(|seen| seen == t);
            if !consistent {
                return Ok(CheckLine::mismatch(
                    "twist_invariance",
                    format!("round {round}: partition is not the translate"),
                ));
            }
            forward[t] = Some(o);
            backward[o] = Some(t);
        }
    }
    Ok(CheckLine::ok("twist_invariance", format!("{rounds} rounds")))
}
