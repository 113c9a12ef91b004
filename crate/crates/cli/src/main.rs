use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use polygonal::cycles::CycleList;
use polygonal::examples;
use polygonal::fourvertex::{four_vertex_witness, AuxDigraph};
use polygonal::generate::{random_four_vertex, random_regular_instance, seeded};
use polygonal::regular::{is_k_graph, regular_witness};
use polygonal::surface::{build_surface, certificate, surface_report, Partition};
use polygonal::whitehead::WhiteheadGraph;
use polygonal::witness::{
    parse_witness, search_witness_lp, verify_witness, witness_json, LpResult, Refutation, RefutationJson, WitnessJson,
};
use polygonal::words::WordList;

#[derive(Parser)]
#[command(name = "polycert", version, about = "Cycle-list witnesses and surface certificates for Whitehead graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Auto,
    Lp,
    Regular,
    Fourvertex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Kind {
    Fourvertex,
    Regular,
}

#[derive(Subcommand)]
enum Command {
    /// Degrees, local edge-connectivities, minimality and diskbusting.
    Analyze {
        /// Built-in example name, word-list file, or graph JSON file.
        input: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Construct or search for a witness; writes witness or refutation JSON.
    Witness {
        input: String,
        #[arg(long, value_enum, default_value = "auto")]
        method: MethodArg,
        #[arg(long)]
        require_long: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a witness or refutation file against the input graph.
    Verify {
        input: String,
        /// Witness or refutation JSON.
        certificate: PathBuf,
        #[arg(long)]
        require_long: bool,
        /// Also require usage(e) = usage(σ(e)) on every edge.
        #[arg(long)]
        strict: bool,
    },
    /// Glue the polygonal surface and write its certificate.
    Surface {
        input: String,
        /// Use this witness instead of computing one.
        #[arg(long)]
        witness: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "auto")]
        method: MethodArg,
        /// Comma-separated word index per glued vertex; defaults to the word each boundary reads.
        #[arg(long)]
        partition: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Graphviz rendering of the graph, or of the auxiliary digraph.
    ExportDot {
        input: String,
        /// Render the auxiliary digraph of a four-vertex graph with its completion.
        #[arg(long)]
        aux: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Random instance satisfying the λ condition, as graph JSON.
    Gen {
        #[arg(long, value_enum, default_value = "fourvertex")]
        kind: Kind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Maximum degree for four-vertex instances.
        #[arg(long, default_value_t = 6)]
        max_degree: usize,
        /// Degree of regular instances.
        #[arg(long, default_value_t = 3)]
        k: usize,
        /// Maximum vertex count of regular instances.
        #[arg(long, default_value_t = 8)]
        max_vertices: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the built-in examples end to end.
    Selftest,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Refuted) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

enum Outcome {
    Ok,
    /// Exit status 2: no witness exists, or the certificate was refuted.
    Refuted,
}

fn load_input(input: &str) -> Result<WhiteheadGraph> {
    if examples::NAMES.contains(&input) || input == "remark-2.4" {
        return Ok(examples::load(input)?);
    }
    let path = Path::new(input);
    if !path.exists() {
        bail!(
            "{input:?} is neither a readable file nor a built-in example ({})",
            examples::NAMES.join(", ")
        );
    }
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    if text.trim_start().starts_with('{') {
        WhiteheadGraph::from_json(&text).with_context(|| format!("parsing graph JSON {}", path.display()))
    } else {
        let list = WordList::parse_file(&text).with_context(|| format!("parsing word list {}", path.display()))?;
        Ok(WhiteheadGraph::build(&list)?)
    }
}

/// Writes via a sibling temporary file and a rename, or to stdout.
fn emit(out: Option<&Path>, content: &str) -> Result<()> {
    match out {
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(content.as_bytes())?;
            if !content.ends_with('\n') {
                stdout.write_all(b"\n")?;
            }
            Ok(())
        }
        Some(path) => {
            let mut tmp = path.as_os_str().to_owned();
            tmp.push(".tmp");
            let tmp = PathBuf::from(tmp);
            fs::write(&tmp, content).with_context(|| format!("writing {}", tmp.display()))?;
            fs::rename(&tmp, path).with_context(|| format!("renaming into {}", path.display()))?;
            Ok(())
        }
    }
}

fn pretty<T: serde::Serialize>(v: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

enum Found {
    Witness(Box<WitnessJson>, CycleList),
    Refutation(RefutationJson),
}

fn resolve_method(wg: &WhiteheadGraph, method: MethodArg) -> MethodArg {
    if method != MethodArg::Auto {
        return method;
    }
    let g = wg.graph();
    if g.vertex_count() == 4 && g.is_connected() {
        return MethodArg::Fourvertex;
    }
    if g.regular_degree().is_some() && is_k_graph(g).map(|v| v.is_k_graph()).unwrap_or(false) {
        return MethodArg::Regular;
    }
    MethodArg::Lp
}

fn lp(wg: &WhiteheadGraph, require_long: bool) -> Result<Found> {
    match search_witness_lp(wg, require_long)? {
        LpResult::Feasible(list) => {
            let mut j = witness_json(wg, &list);
            j.method = Some("lp".into());
            Ok(Found::Witness(Box::new(j), list))
        }
        LpResult::Infeasible(r) => {
            r.check(wg).context("refutation failed its own check")?;
            Ok(Found::Refutation(r.to_json(wg)))
        }
    }
}

fn find_witness(wg: &WhiteheadGraph, method: MethodArg, require_long: bool) -> Result<Found> {
    let chosen = resolve_method(wg, method);
    let explicit = method != MethodArg::Auto;
    let found = match chosen {
        MethodArg::Lp | MethodArg::Auto => return lp(wg, require_long),
        MethodArg::Fourvertex => match four_vertex_witness(wg) {
            Ok(fw) => {
                let j = fw.to_json(wg);
                Found::Witness(Box::new(j), fw.cycles)
            }
            Err(e) if !explicit => {
                eprintln!("note: four-vertex construction not applicable ({e}); using lp");
                return lp(wg, require_long);
            }
            Err(e) => return Err(e.into()),
        },
        MethodArg::Regular => match regular_witness(wg.graph()) {
            Ok(rw) => {
                let mut j = witness_json(wg, &rw.cycles);
                j.method = Some("regular".into());
                Found::Witness(Box::new(j), rw.cycles)
            }
            Err(e) if !explicit => {
                eprintln!("note: regular construction not applicable ({e}); using lp");
                return lp(wg, require_long);
            }
            Err(e) => return Err(e.into()),
        },
    };
    if let Found::Witness(_, list) = &found {
        let verdict = verify_witness(wg, list, require_long, false)?;
        if !verdict.pass {
            if explicit {
                bail!("constructed witness does not verify with require_long = {require_long}");
            }
            return lp(wg, require_long);
        }
    }
    Ok(found)
}

fn analyze_text(wg: &WhiteheadGraph) -> String {
    let r = wg.analyze();
    let mut s = format!("rank {}, {} edges\n", r.rank, r.edge_count);
    for v in &r.vertices {
        s += &format!("  {:>5}: deg {}, lambda to inverse {}\n", v.vertex, v.degree, v.lambda);
    }
    s += &format!(
        "minimal: {}\nconnected: {}\ndiskbusting: {}\nregular: {}\n",
        r.minimal,
        r.connected,
        r.diskbusting,
        r.regular.map_or("no".to_string(), |k| k.to_string())
    );
    s
}

fn run(cmd: Command) -> Result<Outcome> {
    match cmd {
        Command::Analyze { input, format, out } => {
            let wg = load_input(&input)?;
            let text = match format {
                Format::Json => pretty(&wg.analyze())?,
                Format::Text => analyze_text(&wg),
                Format::Dot => wg.to_dot(),
            };
            emit(out.as_deref(), &text)?;
            Ok(Outcome::Ok)
        }
        Command::Witness {
            input,
            method,
            require_long,
            out,
        } => {
            let wg = load_input(&input)?;
            match find_witness(&wg, method, require_long)? {
                Found::Witness(j, _) => {
                    emit(out.as_deref(), &pretty(&*j)?)?;
                    Ok(Outcome::Ok)
                }
                Found::Refutation(r) => {
                    emit(out.as_deref(), &pretty(&r)?)?;
                    Ok(Outcome::Refuted)
                }
            }
        }
        Command::Verify {
            input,
            certificate,
            require_long,
            strict,
        } => {
            let wg = load_input(&input)?;
            let text = fs::read_to_string(&certificate).with_context(|| format!("reading {}", certificate.display()))?;
            let value: serde_json::Value = serde_json::from_str(&text).context("certificate is not JSON")?;
            if value.get("certificate").is_some() {
                let rj: RefutationJson = serde_json::from_value(value).context("malformed refutation")?;
                if rj.graph_hash != wg.hash() {
                    bail!("refutation was made for a different graph");
                }
                let r = Refutation::from_json(&rj, wg.rank())?;
                r.check(&wg)?;
                println!("refutation valid: no witness exists (require_long = {})", r.require_long);
                return Ok(Outcome::Refuted);
            }
            let wj: WitnessJson = serde_json::from_value(value).context("malformed witness")?;
            let list = parse_witness(&wg, &wj)?;
            let verdict = verify_witness(&wg, &list, require_long, strict)?;
            println!("{}", pretty(&verdict)?.trim_end());
            Ok(if verdict.pass { Outcome::Ok } else { Outcome::Refuted })
        }
        Command::Surface {
            input,
            witness,
            method,
            partition,
            out,
        } => {
            let wg = load_input(&input)?;
            let list = match witness {
                Some(path) => {
                    let text = fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
                    let wj: WitnessJson = serde_json::from_str(&text).context("malformed witness")?;
                    parse_witness(&wg, &wj)?
                }
                None => match find_witness(&wg, method, true)? {
                    Found::Witness(_, list) => list,
                    Found::Refutation(r) => {
                        eprintln!("no witness with a long cycle exists");
                        emit(out.as_deref(), &pretty(&r)?)?;
                        return Ok(Outcome::Refuted);
                    }
                },
            };
            let partition = match partition {
                None => Partition::Auto,
                Some(p) => Partition::Explicit(
                    p.split(',')
                        .map(|s| s.trim().parse::<usize>().map_err(|e| anyhow!("bad partition entry {s:?}: {e}")))
                        .collect::<Result<_>>()?,
                ),
            };
            let complex = build_surface(&wg, &list)?;
            let report = surface_report(&wg, &complex, &partition)?;
            emit(out.as_deref(), &pretty(&certificate(&complex, &report))?)?;
            Ok(Outcome::Ok)
        }
        Command::ExportDot { input, aux, out } => {
            let wg = load_input(&input)?;
            let dot = if aux {
                let fw = four_vertex_witness(&wg).context("auxiliary digraph needs a four-vertex graph")?;
                fw.aux.to_dot(fw.completion.as_ref())
            } else {
                wg.to_dot()
            };
            emit(out.as_deref(), &dot)?;
            Ok(Outcome::Ok)
        }
        Command::Gen {
            kind,
            seed,
            max_degree,
            k,
            max_vertices,
            out,
        } => {
            let mut rng = seeded(seed);
            let wg = match kind {
                Kind::Fourvertex => {
                    if max_degree < 2 {
                        bail!("--max-degree must be at least 2");
                    }
                    random_four_vertex(&mut rng, max_degree)
                }
                Kind::Regular => {
                    if k < 2 || max_vertices < 2 {
                        bail!("--k and --max-vertices must be at least 2");
                    }
                    random_regular_instance(&mut rng, k, max_vertices)
                }
            };
            emit(out.as_deref(), &wg.to_json())?;
            Ok(Outcome::Ok)
        }
        Command::Selftest => selftest(),
    }
}

fn check(name: &str, f: impl FnOnce() -> Result<bool>) -> bool {
    let ok = matches!(f(), Ok(true));
    println!("{} {name}", if ok { "PASS" } else { "FAIL" });
    ok
}

fn selftest() -> Result<Outcome> {
    let mut all = true;
    all &= check("example-6.1: lambda(a, a^-1) = 3 < 4 = deg(a)", || {
        let r = examples::load("example-6.1")?.analyze();
        Ok(r.vertices[0].lambda == 3 && r.vertices[0].degree == 4 && !r.minimal)
    });
    all &= check("example-6.1: no witness with a long cycle, refutation checks", || {
        let wg = examples::load("example-6.1")?;
        Ok(matches!(lp(&wg, true)?, Found::Refutation(_)))
    });
    all &= check("remark-2.4-before: not minimal", || {
        Ok(!examples::load("remark-2.4-before")?.analyze().minimal)
    });
    all &= check("remark-2.4-after: minimal, diskbusting, surface with chi(S) - m < 0", || {
        let wg = examples::load("remark-2.4-after")?;
        let r = wg.analyze();
        let Found::Witness(_, list) = find_witness(&wg, MethodArg::Fourvertex, true)? else {
            return Ok(false);
        };
        let report = surface_report(&wg, &build_surface(&wg, &list)?, &Partition::Auto)?;
        Ok(r.minimal && r.diskbusting && report.chi_s_minus_m < 0)
    });
    all &= check("commutator: chi(S'') = -2", || {
        let wg = examples::load("commutator")?;
        let Found::Witness(_, list) = find_witness(&wg, MethodArg::Auto, true)? else {
            return Ok(false);
        };
        let report = surface_report(&wg, &build_surface(&wg, &list)?, &Partition::Auto)?;
        Ok(report.chi_s_doubleprime == -2)
    });
    all &= check("figure-7: four-vertex construction verifies", || {
        let wg = examples::load("figure-7")?;
        let fw = four_vertex_witness(&wg)?;
        let aux: &AuxDigraph = &fw.aux;
        Ok(aux.is_good() && verify_witness(&wg, &fw.cycles, true, false)?.pass)
    });
    if !all {
        bail!("selftest failed");
    }
    Ok(Outcome::Ok)
}
