use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::Context;
use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use cayley_embed::embed::{
    count_embeddings, embed_diagonal_partition, embeds_in_class, transversal_fast_path, EmbedError, EmbedVerdict,
};
use cayley_embed::group::{groups_of_order, parse_group_file, Group, GroupError, GroupSpec};
use cayley_embed::pls::{
    canonical_form, describe, enumerate_species, parse_fixture_file, parse_pls, write_triples, Pls, PlsError,
    SpeciesKey,
};
use cayley_embed::screening::{class_of, psi, psi_with, screen_size, PsiOptions, ScreeningError, Variant};
use cayley_embed::verify::{self, VerifyOptions, DEFAULT_SEED};

/// Partial latin squares in Cayley tables of finite groups.
#[derive(Parser, Debug)]
#[command(name = "cayley-embed", version, about)]
struct Cli {
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Print the JSON run report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Count species of each size and optionally write canonical representatives.
    Species {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=8))]
        max_size: u8,
        /// Directory for `size_<k>.txt` files in triple-list format.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide whether a square embeds in a group.
    Embed {
        /// Square file, triple list or grid.
        #[arg(long)]
        pls: PathBuf,
        /// Group spec such as `cyclic:12`, `dihedral:3`, `abelian:2,6`, `file:path`.
        #[arg(long)]
        group: GroupSpec,
        /// Print the exact number of embeddings.
        #[arg(long)]
        count: bool,
        /// Always search for a witness, even where the transversal bound applies.
        #[arg(long)]
        paranoid: bool,
    },
    /// List the species of a size that the reduction rules and the
    /// transversal bound leave for direct search at order `n`.
    Screen {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=7))]
        size: u8,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
    },
    /// Compute psi(n) with its obstacles.
    Psi {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long, default_value = "group")]
        variant: Variant,
        /// Groups of order n, as table files or group specs.
        #[arg(long, num_args = 1.., requires = "assume_complete")]
        groups: Vec<String>,
        /// Assert that `--groups` lists the whole class up to isomorphism.
        #[arg(long)]
        assume_complete: bool,
        /// Search every species directly, skipping the reduction rules.
        #[arg(long)]
        no_screening: bool,
    },
    /// Show groups: the catalogue for an order, or a single spec.
    Groups {
        #[arg(long, conflicts_with = "spec", required_unless_present = "spec")]
        order: Option<usize>,
        #[arg(long, default_value = "group")]
        variant: Variant,
        #[arg(long)]
        spec: Option<GroupSpec>,
        /// Also print Cayley tables in group-file format.
        #[arg(long)]
        table: bool,
    },
    /// Find a permutation pi with g*pi(g) taking the given multiplicities.
    DiagPartition {
        #[arg(long)]
        group: GroupSpec,
        /// Part sizes, comma separated, summing to the group order.
        #[arg(long, value_delimiter = ',', required = true)]
        parts: Vec<usize>,
    },
    /// Run the reproduction checklist and print a pass/fail matrix.
    VerifyPaper {
        /// Orders up to 8 and sizes up to 6 only.
        #[arg(long)]
        quick: bool,
        /// Named squares in `[name]` + grid format; each replaces the built-in square of that name.
        #[arg(long)]
        fixtures: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Run only these criteria (comma separated).
        #[arg(long, value_delimiter = ',', value_parser = clap::value_parser!(u8).range(1..=9))]
        criteria: Vec<u8>,
    },
}

/// Failures and their exit codes.
#[derive(Debug)]
enum Failure {
    /// Malformed input files or specs.
    Parse(anyhow::Error),
    /// Valid input the tool cannot handle, such as an incomplete class.
    Operational(anyhow::Error),
    /// `verify-paper` found failing criteria; the report is already printed.
    Verify,
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Verify => 1,
            Failure::Parse(_) => 3,
            Failure::Operational(_) => 4,
        }
    }
}

impl From<PlsError> for Failure {
    fn from(e: PlsError) -> Self {
        match e {
            PlsError::Parse { .. } => Failure::Parse(e.into()),
            e => Failure::Operational(e.into()),
        }
    }
}

impl From<GroupError> for Failure {
    fn from(e: GroupError) -> Self {
        match e {
            GroupError::NotLatin(_)
            | GroupError::NoIdentity
            | GroupError::NotAssociative(..)
            | GroupError::BadSpec { .. }
            | GroupError::File(_) => Failure::Parse(e.into()),
            _ => Failure::Operational(e.into()),
        }
    }
}

impl From<ScreeningError> for Failure {
    fn from(e: ScreeningError) -> Self {
        match e {
            ScreeningError::Pls(e) => e.into(),
            e => Failure::Operational(e.into()),
        }
    }
}

impl From<EmbedError> for Failure {
    fn from(e: EmbedError) -> Self {
        Failure::Operational(e.into())
    }
}

#[derive(Serialize)]
struct RunReport {
    command: &'static str,
    inputs: Value,
    results: Value,
    timing: Value,
    version: &'static str,
}

struct Output {
    inputs: Value,
    results: Value,
    text: String,
    timing: BTreeMap<String, f64>,
    ok: bool,
}

impl Output {
    fn new(inputs: Value, results: impl Serialize, text: String) -> Output {
        Output {
            inputs,
            results: serde_json::to_value(results).expect("serializable results"),
            text,
            timing: BTreeMap::new(),
            ok: true,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = std::env::var("CAYLEY_EMBED_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .or(cli.threads);
    if let Some(t) = threads {
        // only fails if a pool already exists, which cannot happen here
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    let start = Instant::now();
    let (name, result) = dispatch(&cli.command);
    match result {
        Ok(out) => {
            let mut timing = json!({ "seconds": start.elapsed().as_secs_f64() });
            if !out.timing.is_empty() {
                timing["criteria"] = json!(out.timing);
            }
            if cli.json {
                let report = RunReport {
                    command: name,
                    inputs: out.inputs,
                    results: out.results,
                    timing,
                    version: env!("CARGO_PKG_VERSION"),
                };
                emit(&format!("{}\n", serde_json::to_string_pretty(&report).expect("serializable report")));
            } else {
                emit(&out.text);
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(Failure::Verify.code())
            }
        }
        Err(f) => {
            if let Failure::Parse(e) | Failure::Operational(e) = &f {
                eprintln!("error: {e:#}");
            }
            ExitCode::from(f.code())
        }
    }
}

/// Writes to stdout, ignoring a closed pipe (`cayley-embed ... | head`).
fn emit(text: &str) {
    use std::io::Write;
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn dispatch(cmd: &Command) -> (&'static str, Result<Output, Failure>) {
    match cmd {
        Command::Species { max_size, out } => ("species", species(*max_size as usize, out.as_deref())),
        Command::Embed {
            pls,
            group,
            count,
            paranoid,
        } => ("embed", embed(pls, group, *count, *paranoid)),
        Command::Screen { size, n } => ("screen", screen(*size as usize, *n as usize)),
        Command::Psi {
            n,
            variant,
            groups,
            assume_complete: _,
            no_screening,
        } => ("psi", run_psi(*n as usize, *variant, groups, !no_screening)),
        Command::Groups {
            order,
            variant,
            spec,
            table,
        } => ("groups", list_groups(*order, *variant, spec.as_ref(), *table)),
        Command::DiagPartition { group, parts } => ("diag-partition", diag_partition(group, parts)),
        Command::VerifyPaper {
            quick,
            fixtures,
            seed,
            criteria,
        } => ("verify-paper", verify_paper(*quick, fixtures.as_deref(), *seed, criteria)),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))
        .map_err(Failure::Operational)
}

fn read_pls(path: &Path) -> Result<Pls, Failure> {
    // a conflicting or oversized square is still malformed input
    parse_pls(&read(path)?).map_err(|e| Failure::Parse(anyhow::Error::from(e).context(path.display().to_string())))
}

fn species_entry(key: &SpeciesKey) -> Value {
    json!({
        "key": key,
        "name": describe(key),
        "triples": key.decode().triples().iter().map(|t| t.one_based()).collect::<Vec<_>>(),
    })
}

fn species(max_size: usize, out: Option<&Path>) -> Result<Output, Failure> {
    let all = enumerate_species(max_size)?;
    let counts: BTreeMap<usize, usize> = all.iter().map(|(k, v)| (*k, v.len())).collect();
    let mut written = Vec::new();
    if let Some(dir) = out {
        std::fs::create_dir_all(dir)
            .with_context(|| format!("cannot create {}", dir.display()))
            .map_err(Failure::Operational)?;
        for (size, reps) in &all {
            let body: Vec<String> = reps.iter().map(write_triples).collect();
            let path = dir.join(format!("size_{size}.txt"));
            std::fs::write(&path, body.join("\n"))
                .with_context(|| format!("cannot write {}", path.display()))
                .map_err(Failure::Operational)?;
            written.push(path.display().to_string());
        }
    }
    let mut text = String::from("size species\n");
    for (size, count) in &counts {
        text.push_str(&format!("{size:>4} {count:>7}\n"));
    }
    Ok(Output::new(
        json!({ "max_size": max_size, "out": out }),
        json!({ "counts": counts, "files": written }),
        text,
    ))
}

fn embed(pls: &Path, spec: &GroupSpec, count: bool, paranoid: bool) -> Result<Output, Failure> {
    let p = read_pls(pls)?;
    let g = spec.build()?;
    let fast = if paranoid { None } else { transversal_fast_path(&p, g.order()) };
    let verdict = match fast {
        Some(v) => v,
        None => {
            let mut report = embeds_in_class(&p, std::slice::from_ref(&g));
            report.verdicts.remove(0).verdict
        }
    };
    if let Some(w) = verdict.witness() {
        w.verify(&p, &g).map_err(|e| Failure::Operational(anyhow::anyhow!("internal witness check failed: {e}")))?;
    }
    let total = count.then(|| count_embeddings(&p, &g, None));
    let mut text = match &verdict {
        EmbedVerdict::Embeddable { witness } => format!("embeddable in {}\n{witness}", g.name()),
        EmbedVerdict::EmbeddableByTransversalBound { t, n } => format!(
            "embeddable in {}: diagonal of size {t} is within the transversal bound for order {n}\n",
            g.name()
        ),
        EmbedVerdict::NotEmbeddable { obstruction } => format!("not embeddable in {}: {obstruction}\n", g.name()),
    };
    if let Some(c) = total {
        text.push_str(&format!("embeddings: {c}\n"));
    }
    Ok(Output::new(
        json!({ "pls": pls, "group": spec.to_string(), "count": count, "paranoid": paranoid }),
        json!({
            "group": g.name(),
            "species_key": canonical_form(&p),
            "embeddable": verdict.is_embeddable(),
            "verdict": verdict,
            "count": total,
        }),
        text,
    ))
}

fn screen(size: usize, n: usize) -> Result<Output, Failure> {
    let survivors = screen_size(size, n)?;
    let mut text = format!("{} survivors of size {size} at order {n}\n", survivors.len());
    for k in &survivors {
        let name = describe(k).unwrap_or_default();
        text.push_str(&format!("{k} {name}\n"));
    }
    Ok(Output::new(
        json!({ "size": size, "n": n }),
        json!({
            "count": survivors.len(),
            "survivors": survivors.iter().map(species_entry).collect::<Vec<_>>(),
        }),
        text,
    ))
}

fn load_group(arg: &str) -> Result<Group, Failure> {
    let path = Path::new(arg);
    if path.is_file() {
        let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        let g = parse_group_file(&read(path)?).map_err(|e| match Failure::from(e) {
            Failure::Parse(e) => Failure::Parse(e.context(arg.to_string())),
            f => f,
        })?;
        Ok(g.with_name(name))
    } else {
        Ok(arg.parse::<GroupSpec>()?.build()?)
    }
}

fn run_psi(n: usize, variant: Variant, group_args: &[String], screening: bool) -> Result<Output, Failure> {
    let opts = PsiOptions { screening };
    let result = if group_args.is_empty() {
        if screening {
            psi(n, variant)?
        } else {
            psi_with(n, variant, &class_of(n, variant)?, &opts)?
        }
    } else {
        let groups = group_args.iter().map(|a| load_group(a)).collect::<Result<Vec<_>, _>>()?;
        psi_with(n, variant, &groups, &opts)?
    };
    let mut text = format!("psi({n}, {variant}) = {}\n", result.psi);
    text.push_str(&format!("{} obstacles of size {}:\n", result.obstacles.len(), result.psi + 1));
    for o in &result.obstacles {
        let name = describe(&o.species_key).unwrap_or_default();
        text.push_str(&format!("  {} {name}\n", o.species_key));
    }
    Ok(Output::new(
        json!({ "n": n, "variant": variant, "groups": group_args, "screening": screening }),
        &result,
        text,
    ))
}

fn list_groups(order: Option<usize>, variant: Variant, spec: Option<&GroupSpec>, table: bool) -> Result<Output, Failure> {
    let groups = match (order, spec) {
        (_, Some(s)) => vec![s.build()?],
        (Some(n), None) => match variant {
            Variant::Group => groups_of_order(n)?,
            _ => class_of(n, variant)?,
        },
        (None, None) => unreachable!("clap requires --order or --spec"),
    };
    let mut text = String::new();
    let mut results = Vec::new();
    for (i, g) in groups.iter().enumerate() {
        let s = g.summary();
        let census: Vec<String> = s.order_census.iter().map(|(o, c)| format!("{o}^{c}")).collect();
        text.push_str(&format!(
            "{i:>2} {:<14} order {:<3} {} center {:<3} orders {}\n",
            s.name,
            s.order,
            if s.abelian { "abelian    " } else { "non-abelian" },
            s.center_size,
            census.join(" ")
        ));
        let mut entry = serde_json::to_value(&s).expect("serializable summary");
        if table {
            let t = cayley_embed::group::write_group_file(g);
            text.push_str(&t);
            entry["table"] = json!(g.table_rows());
        }
        results.push(entry);
    }
    Ok(Output::new(
        json!({ "order": order, "variant": variant, "spec": spec.map(|s| s.to_string()), "table": table }),
        json!({ "groups": results }),
        text,
    ))
}

fn diag_partition(spec: &GroupSpec, parts: &[usize]) -> Result<Output, Failure> {
    let g = spec.build()?;
    let pi = embed_diagonal_partition(&g, parts)?;
    let text = match &pi {
        Some(pi) => {
            let pairs: Vec<String> = pi.iter().enumerate().map(|(x, y)| format!("{x}→{y}")).collect();
            format!("found in {}: pi = {}\n", g.name(), pairs.join(" "))
        }
        None => format!("no such permutation in {}\n", g.name()),
    };
    Ok(Output::new(
        json!({ "group": spec.to_string(), "parts": parts }),
        json!({ "group": g.name(), "found": pi.is_some(), "pi": pi }),
        text,
    ))
}

fn verify_paper(quick: bool, fixtures: Option<&Path>, seed: u64, only: &[u8]) -> Result<Output, Failure> {
    let mut opts = VerifyOptions {
        quick,
        seed,
        ..Default::default()
    };
    if let Some(path) = fixtures {
        let supplied = parse_fixture_file(&read(path)?)?;
        opts.fixtures.extend(supplied);
    }
    let ids: Vec<u8> = if only.is_empty() {
        verify::CRITERIA.iter().map(|(id, _)| *id).collect()
    } else {
        only.to_vec()
    };
    let results: Vec<_> = ids.iter().map(|&id| verify::criterion(id, &opts)).collect();
    let mut text = String::new();
    for r in &results {
        text.push_str(&r.summary_line());
        text.push('\n');
    }
    let all = results.iter().all(|r| r.passed);
    text.push_str(if all { "all criteria pass\n" } else { "some criteria fail\n" });
    let mut out = Output::new(
        json!({ "quick": quick, "fixtures": fixtures, "seed": seed, "criteria": ids }),
        json!({ "passed": all, "criteria": results }),
        text,
    );
    out.timing = results.iter().map(|r| (r.id.to_string(), r.seconds)).collect();
    out.ok = all;
    Ok(out)
}
