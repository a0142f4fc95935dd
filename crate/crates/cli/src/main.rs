use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use opacity_core::bench::{bench_family, BenchFamily};
use opacity_core::format::{parse_dimacs_cnf, parse_graph, parse_nfa, serialize_nfa, NfaDocument};
use opacity_core::oracles::{coloring_brute, sat_brute};
use opacity_core::reductions::{
    coloring_to_cso, cso_to_iso_direct, cso_to_iso_split, cso_to_universality, iso_to_ifo,
    lbo_pairs, sat_to_cso, zimin_indices, CsoInstance, Family, IsoInstance,
};
use opacity_core::{
    check_cso, check_ifo, check_inso, check_iso, check_kso, check_lbo, is_equivalent, is_included,
    is_universal, LboQuery, Verdict,
};

#[derive(Parser)]
#[command(
    name = "opacity",
    version,
    about = "Opacity checking for partially observed NFAs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide a property; exit 0 if it holds, 1 if not (witness on stdout).
    Check {
        #[arg(value_enum)]
        property: Property,
        #[arg(short = 'i', long = "input")]
        input: PathBuf,
        /// Second automaton (inclusion, equivalence, or the non-secret language for LBO).
        #[arg(short = 'j', long = "input2")]
        input2: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        k: usize,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Transform an instance.
    Reduce {
        #[arg(value_enum)]
        kind: Reduction,
        #[arg(short = 'i', long = "input")]
        input: PathBuf,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
    /// Generate sequences.
    Gen {
        #[arg(value_enum)]
        what: Generator,
        #[arg(short = 'n')]
        n: usize,
    },
    /// Brute-force reference solvers; exit 0 if a solution exists, 1 if not.
    Oracle {
        #[arg(value_enum)]
        problem: OracleProblem,
        #[arg(short = 'i', long = "input")]
        input: PathBuf,
    },
    /// Time the opacity checker over a parameter range.
    Bench {
        #[arg(value_enum)]
        family: BenchKind,
        #[arg(long)]
        n_min: usize,
        #[arg(long)]
        n_max: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Property {
    Cso,
    Iso,
    Ifo,
    Kso,
    Inso,
    Lbo,
    Universal,
    Included,
    Equivalent,
}

#[derive(Clone, Copy, ValueEnum)]
enum Reduction {
    Sat2cso,
    Col2cso,
    Cso2lbo,
    Cso2iso,
    Iso2ifo,
    Cso2univ,
}

#[derive(Clone, Copy, ValueEnum)]
enum Generator {
    Zimin,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleProblem {
    Sat,
    Col3,
}

#[derive(Clone, Copy, ValueEnum)]
enum BenchKind {
    SatFamily,
    ColFamily,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_doc(path: &Path) -> Result<NfaDocument> {
    parse_nfa(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn cso_instance(doc: &NfaDocument) -> Result<CsoInstance> {
    let q = doc.cso_query()?;
    Ok(CsoInstance {
        nfa: doc.nfa.clone(),
        secret: q.secret,
        nonsecret: q.nonsecret,
        omap: doc.omap.clone(),
        family: Family::Generic,
    })
}

fn lbo_query(doc: &NfaDocument, second: Option<&Path>) -> Result<LboQuery> {
    if let Some(path) = second {
        let other = read_doc(path)?;
        return Ok(LboQuery {
            secret_lang: doc.nfa.clone(),
            nonsecret_lang: other.nfa,
        });
    }
    match (&doc.secret_pairs, &doc.nonsecret_pairs) {
        (Some(s), Some(ns)) => Ok(LboQuery::from_pairs(&doc.nfa, s, ns)?),
        _ => bail!("lbo needs -j FILE or both `secret-pairs:` and `nonsecret-pairs:` sections"),
    }
}

fn need<'a>(second: &'a Option<PathBuf>, what: &str) -> Result<&'a Path> {
    second
        .as_deref()
        .with_context(|| format!("{what} needs a second automaton (-j FILE)"))
}

fn run_check(
    property: Property,
    input: &Path,
    input2: &Option<PathBuf>,
    k: usize,
) -> Result<Verdict> {
    let doc = read_doc(input)?;
    let (nfa, omap) = (&doc.nfa, &doc.omap);
    Ok(match property {
        Property::Cso => check_cso(nfa, &doc.cso_query()?, omap)?,
        Property::Iso => check_iso(nfa, &doc.iso_query()?, omap)?,
        Property::Ifo => check_ifo(nfa, &doc.ifo_query()?, omap)?,
        Property::Kso => check_kso(nfa, &doc.kso_query(k)?, omap)?,
        Property::Inso => check_inso(nfa, &doc.inso_query()?, omap)?,
        Property::Lbo => check_lbo(&lbo_query(&doc, input2.as_deref())?, omap)?,
        Property::Universal => is_universal(nfa),
        Property::Included => is_included(nfa, &read_doc(need(input2, "included")?)?.nfa)?,
        Property::Equivalent => is_equivalent(nfa, &read_doc(need(input2, "equivalent")?)?.nfa)?,
    })
}

fn check_report(name: &str, v: &Verdict) -> String {
    let witness = v.witness.as_ref().map(|w| w.join(" ")).unwrap_or_default();
    let wlen = v
        .witness_len()
        .map_or_else(|| "-".to_string(), |l| l.to_string());
    format!(
        "property\tholds\twitness_len\texplored\tmillis\twitness\n{name}\t{}\t{wlen}\t{}\t{:.3}\t{witness}\n",
        v.holds,
        v.stats.explored,
        v.stats.elapsed.as_secs_f64() * 1e3
    )
}

fn iso_document(iso: &IsoInstance) -> NfaDocument {
    NfaDocument {
        omap: iso.omap.clone(),
        secret_initial: Some(iso.query.secret_initial.clone()),
        nonsecret_initial: Some(iso.query.nonsecret_initial.clone()),
        ..NfaDocument::new(iso.nfa.clone())
    }
}

fn reduce(kind: Reduction, input: &Path) -> Result<NfaDocument> {
    Ok(match kind {
        Reduction::Sat2cso => {
            NfaDocument::from_cso(&sat_to_cso(&parse_dimacs_cnf(&read(input)?)?)?)
        }
        Reduction::Col2cso => {
            NfaDocument::from_cso(&coloring_to_cso(&parse_graph(&read(input)?)?)?)
        }
        Reduction::Cso2lbo => {
            let doc = read_doc(input)?;
            let pairs = lbo_pairs(&cso_instance(&doc)?)?;
            NfaDocument {
                omap: doc.omap.clone(),
                secret_pairs: Some(pairs.secret_pairs),
                nonsecret_pairs: Some(pairs.nonsecret_pairs),
                ..NfaDocument::new(doc.nfa.clone())
            }
        }
        Reduction::Cso2iso => {
            let inst = cso_instance(&read_doc(input)?)?;
            let iso = cso_to_iso_direct(&inst).or_else(|_| cso_to_iso_split(&inst))?;
            iso_document(&iso)
        }
        Reduction::Iso2ifo => {
            let doc = read_doc(input)?;
            let iso = IsoInstance {
                nfa: doc.nfa.clone(),
                query: doc.iso_query()?,
                omap: doc.omap.clone(),
            };
            let ifo = iso_to_ifo(&iso)?;
            NfaDocument {
                omap: ifo.omap,
                secret_pairs: Some(ifo.query.secret_pairs),
                nonsecret_pairs: Some(ifo.query.nonsecret_pairs),
                ..NfaDocument::new(ifo.nfa)
            }
        }
        Reduction::Cso2univ => {
            NfaDocument::new(cso_to_universality(&cso_instance(&read_doc(input)?)?)?)
        }
    })
}

/// Exit status: 0 holds / yes, 1 fails / no.
fn run(cli: Cli) -> Result<bool> {
    let mut stdout = std::io::stdout().lock();
    match cli.command {
        Command::Check {
            property,
            input,
            input2,
            k,
            report,
        } => {
            let name = property
                .to_possible_value()
                .map(|v| v.get_name().to_string())
                .unwrap_or_default();
            let v = run_check(property, &input, &input2, k)?;
            if let Some(w) = &v.witness {
                writeln!(stdout, "{}", w.join(" "))?;
            }
            eprintln!(
                "{name}: {} ({} nodes explored)",
                if v.holds { "holds" } else { "fails" },
                v.stats.explored
            );
            if let Some(path) = report {
                write(&path, &check_report(&name, &v))?;
            }
            Ok(v.holds)
        }
        Command::Reduce {
            kind,
            input,
            output,
        } => {
            let doc = reduce(kind, &input)?;
            write(&output, &serialize_nfa(&doc))?;
            Ok(true)
        }
        Command::Gen {
            what: Generator::Zimin,
            n,
        } => {
            let line: Vec<String> = zimin_indices(n)?.iter().map(|i| format!("a{i}")).collect();
            writeln!(stdout, "{}", line.join(" "))?;
            Ok(true)
        }
        Command::Oracle { problem, input } => {
            let text = read(&input)?;
            match problem {
                OracleProblem::Sat => match sat_brute(&parse_dimacs_cnf(&text)?)? {
                    Some(a) => {
                        let lits: Vec<String> = a
                            .iter()
                            .enumerate()
                            .map(|(i, &v)| {
                                if v {
                                    format!("{}", i + 1)
                                } else {
                                    format!("-{}", i + 1)
                                }
                            })
                            .collect();
                        writeln!(stdout, "{}", lits.join(" "))?;
                        Ok(true)
                    }
                    None => Ok(false),
                },
                OracleProblem::Col3 => match coloring_brute(&parse_graph(&text)?)? {
                    Some(c) => {
                        writeln!(stdout, "{c}")?;
                        Ok(true)
                    }
                    None => Ok(false),
                },
            }
        }
        Command::Bench {
            family,
            n_min,
            n_max,
            seed,
            report,
        } => {
            let family = match family {
                BenchKind::SatFamily => BenchFamily::Sat,
                BenchKind::ColFamily => BenchFamily::Coloring,
            };
            let tsv = bench_family(family, n_min, n_max, seed)?.to_tsv();
            write!(stdout, "{tsv}")?;
            if let Some(path) = report {
                write(&path, &tsv)?;
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
