//! Command-line interface: batch computation over structured-text documents.

use clap::{Parser, Subcommand};
use plsig::doc::{
    self, ChainEntryDoc, KiteWordDoc, PathDoc, PathSigDoc, PlscDoc, ReportDoc, SurfaceSigDoc,
};
use plsig::decide::{self, Verdict};
use plsig::plsurface::{surface_signature, KiteWord};
use plsig::tensor::path_signature;
use plsig::triangulate::compatible_representative;
use std::io::Read;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "plsig", about = "Exact piecewise linear path and surface signatures", version)]
struct Cli {
    /// Worker threads for internal parallelism (falls back to PLSURF_THREADS,
    /// then to the number of cores). Output is identical for any value.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Reduce a path document to its minimal representative.
    PathReduce {
        /// Input file ("-" or omitted: standard input).
        input: Option<String>,
    },
    /// Truncated path signature of a path document.
    PathSig {
        input: Option<String>,
        /// Truncation level N ≥ 1.
        #[arg(long, default_value_t = 4)]
        level: usize,
    },
    /// Surface signature (boundary tensor and gamma current) of a kite word.
    SurfaceSig {
        input: Option<String>,
        #[arg(long, default_value_t = 4)]
        level: usize,
        /// Weight cap for the gamma current.
        #[arg(long, default_value_t = 6)]
        weight: usize,
    },
    /// Decide thin homotopy equivalence of two kite words.
    /// Exit code 0: equal, 1: not equal, ≥2: error.
    ThinEquiv {
        /// First kite word ("-" or omitted: standard input).
        x: Option<String>,
        /// Second kite word (omitted: the identity word).
        y: Option<String>,
    },
    /// Compatible triangulation of a kite word's simplices.
    Triangulate {
        input: Option<String>,
    },
    /// Emit a named example kite word.
    GenExample {
        /// fold | peiffer | tetrahedron | antipodal | random_null | random_nonnull
        name: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run the built-in verification suites.
    Selfcheck,
}

fn read_input(path: &Option<String>) -> Result<String, String> {
    match path.as_deref() {
        None | Some("-") => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| format!("reading stdin: {e}"))?;
            Ok(buf)
        }
        Some(p) => std::fs::read_to_string(p).map_err(|e| format!("reading {p}: {e}")),
    }
}

fn run(cli: Cli) -> Result<u8, String> {
    match cli.command {
        Command::PathReduce { input } => {
            let text = read_input(&input)?;
            let doc: PathDoc = doc::from_json(&text).map_err(|e| e.to_string())?;
            let word = doc.to_word().map_err(|e| e.to_string())?;
            print!("{}", doc::to_json(&PathDoc::from_word(&word.reduce())));
            Ok(0)
        }
        Command::PathSig { input, level } => {
            if level == 0 {
                return Err("level must be at least 1".into());
            }
            let text = read_input(&input)?;
            let doc: PathDoc = doc::from_json(&text).map_err(|e| e.to_string())?;
            let word = doc.to_word().map_err(|e| e.to_string())?;
            let sig = path_signature(&word, level);
            print!("{}", doc::to_json(&PathSigDoc::from_tensor(&sig)));
            Ok(0)
        }
        Command::SurfaceSig {
            input,
            level,
            weight,
        } => {
            let text = read_input(&input)?;
            let doc: KiteWordDoc = doc::from_json(&text).map_err(|e| e.to_string())?;
            let word = doc.to_word().map_err(|e| e.to_string())?;
            let sig = surface_signature(&word, level, weight);
            print!(
                "{}",
                doc::to_json(&SurfaceSigDoc::from_signature(
                    word.dim(),
                    level,
                    weight,
                    &sig
                ))
            );
            Ok(0)
        }
        Command::ThinEquiv { x, y } => {
            let tx = read_input(&x)?;
            let dx: KiteWordDoc = doc::from_json(&tx).map_err(|e| e.to_string())?;
            let wx = dx.to_word().map_err(|e| e.to_string())?;
            let wy = match y {
                Some(p) => {
                    let ty = read_input(&Some(p))?;
                    let dy: KiteWordDoc = doc::from_json(&ty).map_err(|e| e.to_string())?;
                    dy.to_word().map_err(|e| e.to_string())?
                }
                None => KiteWord::identity(wx.dim()),
            };
            let report = decide::thin_equiv(&wx, &wy).map_err(|e| e.to_string())?;
            // realize the chain as face coordinates
            let chain_doc: Vec<ChainEntryDoc> = match (&report.chain, &report.witness) {
                (Some(ch), _) if !ch.is_empty() => {
                    // recompute the representative to realize face ids
                    let z = wx.mul(&wy.inv()).map_err(|e| e.to_string())?;
                    let rep = compatible_representative(&z).map_err(|e| e.to_string())?;
                    ch.iter()
                        .map(|(&f, &m)| {
                            let t = rep.plsc.face_triangle(f);
                            ChainEntryDoc {
                                face: [&t.p0, &t.p1, &t.p2]
                                    .iter()
                                    .map(|p| p.iter().map(plsig::rat::format_rat).collect())
                                    .collect(),
                                multiplicity: m,
                            }
                        })
                        .collect()
                }
                _ => Vec::new(),
            };
            print!(
                "{}",
                doc::to_json(&ReportDoc::from_report(wx.dim(), &report, &chain_doc))
            );
            Ok(match report.verdict {
                Verdict::Equal => 0,
                Verdict::NotEqual => 1,
            })
        }
        Command::Triangulate { input } => {
            let text = read_input(&input)?;
            let doc: KiteWordDoc = doc::from_json(&text).map_err(|e| e.to_string())?;
            let word = doc.to_word().map_err(|e| e.to_string())?;
            let rep = compatible_representative(&word).map_err(|e| e.to_string())?;
            print!("{}", doc::to_json(&PlscDoc::from_plsc(&rep.plsc)));
            Ok(0)
        }
        Command::GenExample { name, seed } => {
            let word = decide::gen_example(&name, seed).map_err(|e| e.to_string())?;
            print!("{}", doc::to_json(&KiteWordDoc::from_word(&word)));
            Ok(0)
        }
        Command::Selfcheck => {
            let results = plsig::selfcheck::run();
            let mut all_ok = true;
            for (name, ok) in &results {
                println!("{}: {}", name, if *ok { "pass" } else { "FAIL" });
                all_ok &= ok;
            }
            Ok(if all_ok { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = cli
        .threads
        .or_else(|| {
            std::env::var("PLSURF_THREADS")
                .ok()
                .and_then(|s| s.parse().ok())
        })
        .unwrap_or(0); // 0: rayon picks the core count
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool");
    match pool.install(|| run(cli)) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
