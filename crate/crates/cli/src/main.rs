use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use permtt::catalog::{catalog_up_to, parse_group_with_cap};
use permtt::complex::{hom_complex_dim, hom_from_generator, BoundedComplex, Complex};
use permtt::field::PrimeField;
use permtt::group::{FiniteGroup, DEFAULT_ORDER_CAP};
use permtt::module::coset_module;
use permtt::random::{random_complex, rng_from_seed, RandomComplexParams};
use permtt::regularity::{census, census_tsv, classify, RegularityReport, TSV_HEADER};
use permtt::residue::{build_s_c2, build_s_cp, build_s_klein, default_degree_window, kappa_conditions_check};
use permtt::separable::{check_separability, ring_structure, SeparabilityCertificate};
use permtt::spectrum::{closed_points, closed_support, describe_subgroup, PointDescriptor, SubgroupDescriptor};
use permtt::text::parse_complex_with_cap;
use permtt::Error;

const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Parser)]
#[command(name = "permtt", version, about = "Checks for permutation modules, residue complexes and residual regularity")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, env = "PERMTT_FORMAT", default_value = "json")]
    format: Format,
    /// Seed for randomized runs.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Largest group order that may be enumerated.
    #[arg(long, global = true, default_value_t = DEFAULT_ORDER_CAP)]
    max_order: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Tsv,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Residual-regularity verdict for one group and prime.
    Classify {
        #[arg(long)]
        group: String,
        #[arg(long)]
        p: u32,
    },
    /// Verdicts for several groups and primes.
    Census {
        /// Comma-separated descriptors; defaults to the catalog up to --max-order.
        #[arg(long, value_delimiter = ',')]
        groups: Vec<String>,
        #[arg(long, value_delimiter = ',', default_values_t = [2u32, 3])]
        primes: Vec<u32>,
    },
    /// Closed points M(H), one per conjugacy class of p-subgroups.
    ClosedPoints {
        #[arg(long)]
        group: String,
        #[arg(long)]
        p: u32,
    },
    /// Closed points in the support of a complex read from a file.
    Support {
        #[arg(long)]
        complex: PathBuf,
    },
    /// Builds the residue complex for C2, Cp (p odd) or C2xC2 and checks it.
    VerifyResidue {
        #[arg(long)]
        group: String,
        #[arg(long)]
        p: u32,
        /// Range of shifts i as `lo:hi`.
        #[arg(long, value_parser = parse_window, allow_hyphen_values = true)]
        degree_window: Option<(i32, i32)>,
    },
    /// Separability of k(G/H) for every subgroup H.
    VerifySeparable {
        #[arg(long)]
        group: String,
        #[arg(long)]
        p: u32,
    },
    /// Hom(k(G/K)[i], S) for a complex file, or the oracle comparison on random complexes.
    Hom {
        #[arg(long, conflicts_with_all = ["group", "p"])]
        complex: Option<PathBuf>,
        #[arg(long, requires = "p")]
        group: Option<String>,
        #[arg(long, requires = "group")]
        p: Option<u32>,
        /// Number of random complexes for the oracle comparison.
        #[arg(long, default_value_t = 20)]
        count: usize,
        #[arg(long, value_parser = parse_window, allow_hyphen_values = true)]
        degree_window: Option<(i32, i32)>,
    },
    /// Cyclic / contains C2xC2 / contains Q8 for a 2-group.
    Trichotomy {
        #[arg(long)]
        group: String,
    },
}

fn parse_window(s: &str) -> Result<(i32, i32), String> {
    let (a, b) = s.split_once(':').ok_or("expected `lo:hi`")?;
    let lo: i32 = a.trim().parse().map_err(|_| format!("bad bound `{a}`"))?;
    let hi: i32 = b.trim().parse().map_err(|_| format!("bad bound `{b}`"))?;
    if lo > hi {
        return Err(format!("empty window {lo}:{hi}"));
    }
    Ok((lo, hi))
}

/// What a command produced: a serializable body plus renderings.
struct Report {
    json: serde_json::Value,
    tsv: String,
    text: String,
    ok: bool,
}

impl Report {
    fn new(value: &impl Serialize, tsv: String, text: String, ok: bool) -> Self {
        Report {
            json: serde_json::to_value(value).expect("reports serialize"),
            tsv,
            text,
            ok,
        }
    }
}

enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Internal(_) => Failure::Runtime(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            let body = match cli.format {
                Format::Json => serde_json::to_string_pretty(&report.json).expect("json") + "\n",
                Format::Tsv => report.tsv,
                Format::Text => report.text,
            };
            print!("{body}");
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("permtt: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("permtt: {msg}");
            ExitCode::from(1)
        }
    }
}

fn group(cli: &Cli, descriptor: &str) -> Result<Arc<FiniteGroup>, Failure> {
    Ok(parse_group_with_cap(descriptor, cli.max_order)?)
}

fn field(p: u32) -> Result<PrimeField, Failure> {
    Ok(PrimeField::new(p as u64)?)
}

fn read_complex(cli: &Cli, path: &PathBuf) -> Result<permtt::text::ComplexDescription, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    Ok(parse_complex_with_cap(&text, cli.max_order)?)
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    match &cli.command {
        Command::Classify { group: d, p } => {
            let g = group(cli, d)?;
            let r = classify(&g, *p)?;
            Ok(Report::new(&r, report_tsv(std::slice::from_ref(&r)), report_text(&r), true))
        }
        Command::Census { groups, primes } => {
            for &p in primes {
                field(p)?;
            }
            let names: Vec<&str> = if groups.is_empty() {
                catalog_up_to(cli.max_order)
            } else {
                groups.iter().map(String::as_str).collect()
            };
            let rows = census(&names, primes, cli.max_order);
            let mut text = String::new();
            for row in &rows {
                match (&row.report, &row.error) {
                    (Some(r), _) => text.push_str(&report_text(r)),
                    (None, e) => {
                        let _ = writeln!(text, "{} p={}: error: {}", row.descriptor, row.p, e.as_deref().unwrap_or(""));
                    }
                }
            }
            let ok = rows.iter().all(|r| r.error.is_none());
            Ok(Report::new(&rows, census_tsv(&rows), text, ok))
        }
        Command::ClosedPoints { group: d, p } => {
            let g = group(cli, d)?;
            field(*p)?;
            let points: Vec<PointDescriptor> = closed_points(&g, *p).iter().map(|pt| pt.describe(&g)).collect();
            Ok(Report::new(&points, points_tsv(&points), points_text(&g, *p, &points), true))
        }
        Command::Support { complex } => {
            let desc = read_complex(cli, complex)?;
            let bounded = desc
                .complex
                .as_bounded()
                .ok_or_else(|| Failure::Usage("support is defined for bounded complexes".into()))?;
            let support = closed_support(&Complex::Bounded(bounded.clone()))?;
            let points: Vec<PointDescriptor> = support.iter().map(|pt| pt.describe(&desc.group)).collect();
            let p = desc.field.characteristic();
            Ok(Report::new(&points, points_tsv(&points), points_text(&desc.group, p, &points), true))
        }
        Command::VerifyResidue {
            group: d,
            p,
            degree_window,
        } => {
            let g = group(cli, d)?;
            let f = field(*p)?;
            let candidate = if g.order() == 2 && *p == 2 {
                build_s_c2(f)?
            } else if g.order() == *p as usize && *p != 2 {
                build_s_cp(*p)?
            } else if g.order() == 4 && g.exponent() == 2 && *p == 2 {
                build_s_klein(f)?
            } else {
                return Err(Failure::Usage(format!(
                    "residue complexes are available for C2 and C2xC2 at p = 2 and for Cp at odd p; \
                     {d} at p = {p} is not one of these p-groups"
                )));
            };
            let cert = kappa_conditions_check(&candidate, *degree_window);
            let mut tsv = String::from("subgroup_order\tgenerators\tshift\tdim\texpected\n");
            for c in &cert.hom_table {
                let _ = writeln!(
                    tsv,
                    "{}\t{}\t{}\t{}\t{}",
                    c.subgroup.order,
                    c.subgroup.generators.join(","),
                    c.shift,
                    c.dim,
                    c.expected
                );
            }
            let mut text = format!(
                "{} p={}: {}\n  complex valid: {}\n  hom conditions (shifts {}..{}): {}\n  σ∘Ψ(ζ) = {}\n  ζ class nonzero: {}\n  compactness: {:?}\n",
                cert.group,
                cert.p,
                if cert.pass { "PASS" } else { "FAIL" },
                cert.valid,
                cert.shift_window.0,
                cert.shift_window.1,
                cert.hom_conditions,
                cert.section_scalar.map_or("-".into(), |s| s.to_string()),
                cert.zeta_class_nonzero,
                cert.compactness
            );
            for c in cert.hom_table.iter().filter(|c| c.dim != c.expected) {
                let _ = writeln!(
                    text,
                    "  mismatch: H of order {} <{}>, i = {}: dim {} (expected {})",
                    c.subgroup.order,
                    c.subgroup.generators.join(","),
                    c.shift,
                    c.dim,
                    c.expected
                );
            }
            let ok = cert.pass;
            Ok(Report::new(&cert, tsv, text, ok))
        }
        Command::VerifySeparable { group: d, p } => {
            let g = group(cli, d)?;
            let f = field(*p)?;
            #[derive(Serialize)]
            struct Row {
                subgroup: SubgroupDescriptor,
                certificate: SeparabilityCertificate,
            }
            let mut rows = Vec::new();
            for h in g.all_subgroups() {
                let data = ring_structure(&g, h, f)?;
                rows.push(Row {
                    subgroup: describe_subgroup(&g, h),
                    certificate: check_separability(&data),
                });
            }
            let mut tsv = String::from("subgroup_order\tgenerators\tdim\tpass\n");
            let mut text = String::new();
            for r in &rows {
                let gens = r.subgroup.generators.join(",");
                let _ = writeln!(tsv, "{}\t{}\t{}\t{}", r.subgroup.order, gens, r.certificate.dim, r.certificate.pass);
                let _ = writeln!(
                    text,
                    "k(G/<{gens}>) dim {}: {}",
                    r.certificate.dim,
                    if r.certificate.pass { "separable" } else { "FAIL" }
                );
                for c in r.certificate.checks.iter().filter(|c| !c.pass) {
                    let _ = writeln!(text, "  failed: {}", c.identity);
                }
            }
            let ok = rows.iter().all(|r| r.certificate.pass);
            Ok(Report::new(&rows, tsv, text, ok))
        }
        Command::Hom {
            complex,
            group: d,
            p,
            count,
            degree_window,
        } => match (complex, d, p) {
            (Some(path), _, _) => hom_table(cli, path, *degree_window),
            (None, Some(d), Some(p)) => hom_oracle(cli, d, *p, *count),
            _ => Err(Failure::Usage("hom needs --complex, or --group and --p".into())),
        },
        Command::Trichotomy { group: d } => {
            let g = group(cli, d)?;
            let t = g.two_group_trichotomy()?;
            #[derive(Serialize)]
            struct Out {
                group: String,
                order: usize,
                branch: permtt::group::TwoGroupBranch,
                witness: SubgroupDescriptor,
            }
            let out = Out {
                group: g.name().to_string(),
                order: g.order(),
                branch: t.branch,
                witness: describe_subgroup(&g, &t.witness),
            };
            let gens = out.witness.generators.join(",");
            let tsv = format!(
                "group\torder\tbranch\twitness\n{}\t{}\t{:?}\t<{gens}> order {}\n",
                out.group, out.order, out.branch, out.witness.order
            );
            let text = format!("{}: {:?}, witness <{gens}> of order {}\n", out.group, out.branch, out.witness.order);
            Ok(Report::new(&out, tsv, text, true))
        }
    }
}

fn hom_table(cli: &Cli, path: &PathBuf, window: Option<(i32, i32)>) -> Result<Report, Failure> {
    let desc = read_complex(cli, path)?;
    let (lo, hi) = default_degree_window(&desc.complex);
    let (i0, i1) = window.unwrap_or((-hi, -lo));
    #[derive(Serialize)]
    struct Cell {
        subgroup: SubgroupDescriptor,
        shift: i32,
        dim: usize,
    }
    let mut cells = Vec::new();
    for class in desc.group.conjugacy_classes_of_subgroups(None) {
        for i in i0..=i1 {
            cells.push(Cell {
                subgroup: describe_subgroup(&desc.group, &class.representative),
                shift: i,
                dim: hom_from_generator(&class.representative, i, &desc.complex)?,
            });
        }
    }
    let mut tsv = String::from("subgroup_order\tgenerators\tshift\tdim\n");
    let mut text = String::new();
    for c in &cells {
        let gens = c.subgroup.generators.join(",");
        let _ = writeln!(tsv, "{}\t{gens}\t{}\t{}", c.subgroup.order, c.shift, c.dim);
        if c.dim > 0 {
            let _ = writeln!(text, "Hom(k(G/<{gens}>)[{}], S) has dimension {}", c.shift, c.dim);
        }
    }
    if text.is_empty() {
        text.push_str("all Hom spaces in the window vanish\n");
    }
    Ok(Report::new(&cells, tsv, text, true))
}

fn hom_oracle(cli: &Cli, d: &str, p: u32, count: usize) -> Result<Report, Failure> {
    let g = group(cli, d)?;
    let f = field(p)?;
    let mut rng = rng_from_seed(cli.seed);
    #[derive(Serialize)]
    struct Out {
        group: String,
        p: u32,
        seed: u64,
        complexes: usize,
        comparisons: usize,
        disagreements: Vec<String>,
    }
    let mut out = Out {
        group: g.name().to_string(),
        p,
        seed: cli.seed,
        complexes: count,
        comparisons: 0,
        disagreements: Vec::new(),
    };
    for n in 0..count {
        let c = random_complex(&g, f, RandomComplexParams::default(), &mut rng)?;
        let wrapped = Complex::Bounded(c.clone());
        for class in g.conjugacy_classes_of_subgroups(None) {
            let k = &class.representative;
            let one = BoundedComplex::concentrated(&coset_module(&g, k, f), 0);
            for i in -4..=4 {
                let direct = hom_from_generator(k, i, &wrapped)?;
                let oracle = hom_complex_dim(&one.shift(i), &c, 0)?;
                out.comparisons += 1;
                if direct != oracle {
                    out.disagreements
                        .push(format!("complex {n}, K of order {}, i = {i}: {direct} vs {oracle}", k.order()));
                }
            }
        }
    }
    let ok = out.disagreements.is_empty();
    let tsv = format!(
        "group\tp\tseed\tcomplexes\tcomparisons\tdisagreements\n{}\t{}\t{}\t{}\t{}\t{}\n",
        out.group,
        out.p,
        out.seed,
        out.complexes,
        out.comparisons,
        out.disagreements.len()
    );
    let mut text = format!(
        "{} p={} seed={}: {} comparisons over {} complexes, {} disagreements\n",
        out.group,
        p,
        out.seed,
        out.comparisons,
        count,
        out.disagreements.len()
    );
    for line in &out.disagreements {
        let _ = writeln!(text, "  {line}");
    }
    Ok(Report::new(&out, tsv, text, ok))
}

fn report_tsv(reports: &[RegularityReport]) -> String {
    let rows: Vec<_> = reports
        .iter()
        .map(|r| permtt::regularity::CensusRow {
            descriptor: r.group.clone(),
            p: r.p,
            report: Some(r.clone()),
            error: None,
        })
        .collect();
    let out = census_tsv(&rows);
    debug_assert!(out.starts_with(TSV_HEADER));
    out
}

fn report_text(r: &RegularityReport) -> String {
    let witness = r
        .witness
        .as_ref()
        .map(|w| format!(", witness <{}> of order {}", w.generators.join(","), w.order))
        .unwrap_or_default();
    format!("{} (order {}) p={}: {:?} ({:?}){}\n", r.group, r.order, r.p, r.verdict, r.reason, witness)
}

fn points_tsv(points: &[PointDescriptor]) -> String {
    let mut out = String::from("order\tgenerators\tclass_size\n");
    for pt in points {
        let _ = writeln!(out, "{}\t{}\t{}", pt.subgroup.order, pt.subgroup.generators.join(","), pt.class_size);
    }
    out
}

fn points_text(g: &FiniteGroup, p: u32, points: &[PointDescriptor]) -> String {
    let mut out = format!("{} p={}: {} closed points\n", g.name(), p, points.len());
    for pt in points {
        let _ = writeln!(
            out,
            "  M(<{}>) order {}, {} conjugate(s)",
            pt.subgroup.generators.join(","),
            pt.subgroup.order,
            pt.class_size
        );
    }
    out
}
