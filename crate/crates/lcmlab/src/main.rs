use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lcmlab::catalog::{bundled_catalog_dir, load_catalog, load_catalog_filtered};
use lcmlab::report::{analyze, render_text, to_json};
use lcmlab::scan::{
    covers, incomplete_orders, scan_minimal, search_order, write_csv, PairKind, MINIMAL_HEADERS,
    PAIR_HEADERS,
};
use lcmlab::spec::{build, parse_group_spec, BuildContext};
use lcmlab::verify::{self, Check, LcmFamilyCase};
use lcmlab::{Error, Result};
use lcmlab_core::lcm::is_lcm_group;
use lcmlab_core::limits;

#[derive(Parser)]
#[command(name = "lcmlab", version, about = "Element-order and LCM-group computations on finite groups")]
struct Cli {
    /// Worker threads for catalog scans (default: available parallelism).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Largest group order that may be built as a dense table.
    #[arg(long, global = true)]
    max_table_order: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CatalogArg {
    /// Catalog root (default: the catalog bundled with this crate).
    #[arg(long)]
    catalog: Option<PathBuf>,
}

impl CatalogArg {
    fn dir(&self) -> PathBuf {
        self.catalog.clone().unwrap_or_else(bundled_catalog_dir)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Report invariants of one group given as a spec string.
    Analyze {
        spec: String,
        #[arg(long)]
        json: bool,
        /// Also compute lcm* and minimality (enumerates sections).
        #[arg(long)]
        sections: bool,
        #[command(flatten)]
        catalog: CatalogArg,
    },
    /// Catalog scans.
    Scan {
        #[command(subcommand)]
        scan: ScanCommand,
    },
    /// Minimum covers of a family among catalog groups.
    Cover {
        #[command(flatten)]
        catalog: CatalogArg,
        /// Family member spec; repeat for each member.
        #[arg(short = 'f', long = "family", required = true)]
        family: Vec<String>,
        #[arg(long)]
        max_order: Option<usize>,
    },
    /// Pair searches for the psi / order-sequence questions.
    Search {
        kind: KindArg,
        #[command(flatten)]
        catalog: CatalogArg,
        #[arg(long)]
        max_order: u32,
        #[arg(long, conflicts_with = "json")]
        csv: bool,
        #[arg(long)]
        json: bool,
    },
    /// Run a named verification suite.
    Verify {
        #[arg(long)]
        suite: Suite,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        case: Option<CaseArg>,
        #[command(flatten)]
        catalog: CatalogArg,
    },
}

#[derive(Subcommand)]
enum ScanCommand {
    /// Minimal non-LCM groups of one order.
    MinimalNonLcm {
        #[command(flatten)]
        catalog: CatalogArg,
        #[arg(long)]
        order: u32,
        #[arg(long)]
        csv: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Lemma35,
    Thm44,
    Tables,
    Properties,
}

#[derive(Clone, Copy, ValueEnum)]
enum CaseArg {
    I,
    Ii,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Q53,
    Q54,
}

impl From<KindArg> for PairKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Q53 => PairKind::Q53,
            KindArg::Q54 => PairKind::Q54,
        }
    }
}

fn out_err(e: io::Error) -> Error {
    Error::io("<stdout>", e)
}

fn run_analyze(spec: &str, json: bool, sections: bool, catalog: &CatalogArg) -> Result<ExitCode> {
    let parsed = parse_group_spec(spec)?;
    let ctx = BuildContext {
        catalog_dir: catalog.dir(),
    };
    let g = build(&parsed, &ctx)?;
    let report = analyze(&g, spec, sections)?;
    let text = if json {
        to_json(&report) + "\n"
    } else {
        render_text(&report)
    };
    io::stdout().write_all(text.as_bytes()).map_err(out_err)?;
    Ok(ExitCode::SUCCESS)
}

fn run_scan_minimal(catalog: &CatalogArg, order: u32, csv: bool) -> Result<ExitCode> {
    let cat = load_catalog_filtered(&catalog.dir(), |o| o == order)?;
    let rows = scan_minimal(&cat, order)?;
    let mut out = io::stdout().lock();
    if csv {
        write_csv(&MINIMAL_HEADERS, &rows, &mut out)?;
        eprintln!("count {}", rows.len());
    } else {
        for r in &rows {
            writeln!(
                out,
                "{}\t{}\t{}\tlcm {}",
                r.id,
                r.name.as_deref().unwrap_or("-"),
                r.order_sequence,
                r.lcm_ratio
            )
            .map_err(out_err)?;
        }
        writeln!(out, "count {}", rows.len()).map_err(out_err)?;
    }
    if !cat.is_complete(order) {
        eprintln!("warning: catalog for order {order} is not marked complete");
    }
    Ok(ExitCode::SUCCESS)
}

fn run_cover(catalog: &CatalogArg, family: &[String], max_order: Option<usize>) -> Result<ExitCode> {
    let dir = catalog.dir();
    let ctx = BuildContext {
        catalog_dir: dir.clone(),
    };
    let groups = family
        .iter()
        .map(|s| build(&parse_group_spec(s)?, &ctx))
        .collect::<Result<Vec<_>>>()?;
    let cat = match max_order {
        Some(m) => load_catalog_filtered(&dir, |o| o as usize <= m)?,
        None => load_catalog(&dir)?,
    };
    let res = covers(&cat, groups, max_order)?;
    let mut out = io::stdout().lock();
    writeln!(out, "family: {}", family.join(", ")).map_err(out_err)?;
    match res.order {
        Some(order) => {
            writeln!(out, "minimum order: {order}").map_err(out_err)?;
            for (id, g) in &res.covers {
                let name = cat
                    .entry(*id)
                    .and_then(|e| e.file.meta("name"))
                    .unwrap_or("-");
                let lcm = if is_lcm_group(g) { "LCM" } else { "non-LCM" };
                writeln!(out, "cover {id}\t{name}\t{lcm}").map_err(out_err)?;
            }
        }
        None => {
            writeln!(
                out,
                "no catalog cover; direct product of the family has order {}",
                res.product_order
            )
            .map_err(out_err)?;
            if let Some(p) = &res.product {
                let lcm = if is_lcm_group(p) { "LCM" } else { "non-LCM" };
                writeln!(out, "cover product\t{lcm}").map_err(out_err)?;
            }
        }
    }
    let tag = if res.exhaustive {
        "exhaustive"
    } else {
        "catalog-relative"
    };
    writeln!(out, "completeness: {tag}").map_err(out_err)?;
    Ok(ExitCode::SUCCESS)
}

fn run_search(kind: PairKind, catalog: &CatalogArg, max_order: u32, csv: bool, json: bool) -> Result<ExitCode> {
    let cat = load_catalog_filtered(&catalog.dir(), |o| o <= max_order)?;
    let missing: Vec<String> = (1..=max_order)
        .filter(|o| cat.get(*o).is_none())
        .map(|o| o.to_string())
        .collect();
    if !missing.is_empty() {
        return Err(Error::Catalog(format!("no catalog for orders {}", missing.join(", "))));
    }
    let mut out = io::stdout().lock();
    if csv {
        write_csv::<lcmlab::scan::PairFinding>(&PAIR_HEADERS, &[], &mut out)?;
    }
    let mut all = Vec::new();
    for order in 1..=max_order {
        let found = search_order(&cat.get(order).expect("checked above").entries, kind);
        if csv {
            let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(&mut out);
            for f in &found {
                w.serialize(f).map_err(|e| Error::Catalog(format!("csv output: {e}")))?;
            }
            w.flush().map_err(out_err)?;
        } else if !json {
            for f in &found {
                writeln!(
                    out,
                    "{} {} order {} psi {} {} exp {} {} os {}",
                    f.g_id,
                    f.h_id,
                    f.order,
                    f.psi_g,
                    f.psi_h,
                    f.exp_g,
                    f.exp_h,
                    if f.os_equal { "equal" } else { "differ" }
                )
                .map_err(out_err)?;
            }
        }
        all.extend(found);
    }
    if json {
        writeln!(out, "{}", to_json(&all)).map_err(out_err)?;
    }
    let summary = format!("count {}", all.len());
    if csv || json {
        eprintln!("{summary}");
    } else {
        writeln!(out, "{summary}").map_err(out_err)?;
    }
    if kind == PairKind::Q54 && max_order >= 16 {
        eprintln!(
            "note: the reference table row at order 16 lists exponent 47 and psi 4 for its second group; \
             only the reading exponent 4, psi 47 is possible"
        );
    }
    let incomplete = incomplete_orders(&cat, max_order);
    if !incomplete.is_empty() {
        let list: Vec<String> = incomplete.iter().map(u32::to_string).collect();
        eprintln!("warning: orders not marked complete: {}", list.join(", "));
    }
    Ok(ExitCode::SUCCESS)
}

fn run_verify(suite: Suite, k: Option<u32>, case: Option<CaseArg>, catalog: &CatalogArg) -> Result<ExitCode> {
    let checks: Vec<Check> = match suite {
        Suite::Lemma35 => {
            let case = case.map(|c| match c {
                CaseArg::I => LcmFamilyCase::Dihedral,
                CaseArg::Ii => LcmFamilyCase::G81,
            });
            verify::lemma35(case, k)?
        }
        Suite::Thm44 => {
            let top = k.map_or(32, |k| 1u32 << k.min(20));
            verify::thm44(&load_catalog_filtered(&catalog.dir(), |o| o <= top)?, k)?
        }
        Suite::Tables => verify::tables(&load_catalog_filtered(&catalog.dir(), |o| o <= 81)?)?,
        Suite::Properties => {
            verify::properties(&load_catalog_filtered(&catalog.dir(), |o| o <= 128)?)?
        }
    };
    let mut out = io::stdout().lock();
    for c in &checks {
        writeln!(out, "{c}").map_err(out_err)?;
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    writeln!(out, "{} checks, {failed} failed", checks.len()).map_err(out_err)?;
    Ok(if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn run(cli: Cli) -> Result<ExitCode> {
    if let Some(n) = cli.max_table_order {
        limits::set_max_table_order(n);
    }
    if let Some(n) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global()
            .map_err(|e| Error::Usage(format!("--jobs: {e}")))?;
    }
    match &cli.command {
        Command::Analyze {
            spec,
            json,
            sections,
            catalog,
        } => run_analyze(spec, *json, *sections, catalog),
        Command::Scan {
            scan: ScanCommand::MinimalNonLcm { catalog, order, csv },
        } => run_scan_minimal(catalog, *order, *csv),
        Command::Cover {
            catalog,
            family,
            max_order,
        } => run_cover(catalog, family, *max_order),
        Command::Search {
            kind,
            catalog,
            max_order,
            csv,
            json,
        } => run_search((*kind).into(), catalog, *max_order, *csv, *json),
        Command::Verify {
            suite,
            k,
            case,
            catalog,
        } => run_verify(*suite, *k, *case, catalog),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
