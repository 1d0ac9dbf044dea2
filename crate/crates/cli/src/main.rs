use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use rfrs_core::arith::prime::{parse_prime, primes_up_to_norm};
use rfrs_core::arith::ring::RingKind;
use rfrs_core::bttree::{bfs_explore, models};
use rfrs_core::congsub::lemma::{self, congruence_quotient_check, Scheme};
use rfrs_core::congsub::o41::level4_homology;
use rfrs_core::fpgroup::{parse_presentation, Transversal};
use rfrs_core::homology::{congruence_homology, HomologyOptions};
use rfrs_core::linalg::json::{parse_generator_file, parse_matrix};
use rfrs_core::{data, identities, instances, par, tower, Error};

/// Default cap on the index of a congruence kernel; larger rows need --big.
const DEFAULT_INDEX_BUDGET: usize = 50_000;
const BIG_INDEX_BUDGET: usize = 5_000_000;

#[derive(Parser)]
#[command(name = "rfrs", version, about = "Congruence subgroups, Bruhat-Tits trees and RFRS towers")]
struct Cli {
    /// Worker threads (1 runs everything sequentially).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Cmd {
    /// Abelian invariants of principal congruence subgroups of SL2(O_d).
    Homology {
        /// d for Q(sqrt -d).
        #[arg(long, default_value_t = 1)]
        field: u32,
        #[arg(long, default_value_t = 13)]
        norm_max: u64,
        /// Only this norm.
        #[arg(long)]
        norm: Option<u64>,
        #[arg(long)]
        presentation: Option<PathBuf>,
        #[arg(long)]
        matrices: Option<PathBuf>,
        /// Largest kernel index attempted.
        #[arg(long)]
        budget: Option<usize>,
        /// Allow research-scale rows (raises the default budget).
        #[arg(long)]
        big: bool,
    },
    /// Run the matrix identity suite.
    CheckIdentities {
        /// Replace alpha by the matrix in this file.
        #[arg(long)]
        alpha: Option<PathBuf>,
    },
    /// Explore a ball in a Bruhat-Tits tree model.
    Tree {
        /// pgl2, oq, su or magic.
        model: String,
        #[arg(long, short = 'p')]
        p: Option<u64>,
        #[arg(long, default_value_t = 2)]
        radius: usize,
        /// Vertex budget.
        #[arg(long, default_value_t = 200_000)]
        budget: usize,
    },
    /// Build and check a certified congruence tower.
    Tower {
        /// magic, o41 or pu21.
        example: String,
        #[arg(long, default_value_t = 5)]
        steps: usize,
        /// Required cofinality radius.
        #[arg(long)]
        radius: Option<usize>,
    },
    /// Enumerate the kernel of G(O/p^k) -> G(O/p^j).
    Lemma22 {
        /// SLn or GLn, e.g. SL2.
        scheme: String,
        #[arg(long, default_value_t = 1)]
        field: u32,
        #[arg(long)]
        prime: String,
        #[arg(long)]
        j: u32,
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = lemma::DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Count I + tX in PU over O_E/p5^2.
    PuCount,
    /// Level-4 congruence subgroup of the O(4,1; Z) reflection group.
    O41Level4 {
        #[arg(long, default_value_t = 2_000_000)]
        budget: usize,
    },
}

enum Outcome {
    Pass,
    Fail,
    /// Some work was skipped for budget reasons.
    Partial,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        if j == 0 {
            eprintln!("error: --jobs must be positive");
            return ExitCode::from(3);
        }
        if j == 1 {
            par::set_mode(par::Mode::Sequential);
        }
        #[cfg(feature = "parallel")]
        let _ = rayon::ThreadPoolBuilder::new().num_threads(j).build_global();
    }
    match run(&cli) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Ok(Outcome::Partial) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Budget { .. } => 2,
        Error::Input(_) | Error::Parse { .. } | Error::Io(_) | Error::Json(_) | Error::NotFound(_) | Error::UnsupportedRing(_) | Error::RingMismatch(_) => 3,
        _ => 1,
    }
}

fn emit(text: String, value: serde_json::Value, format: Format) -> Result<(), Error> {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&value)?),
        Format::Text => print!("{text}"),
        Format::Dot => return Err(Error::Input("dot output is only available for `tree`".into())),
    }
    Ok(())
}

fn verdict(ok: bool) -> Outcome {
    if ok {
        Outcome::Pass
    } else {
        Outcome::Fail
    }
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    let format = cli.format;
    match &cli.cmd {
        Cmd::Homology { field, norm_max, norm, presentation, matrices, budget, big } => {
            let (pres, mats) = match (presentation, matrices) {
                (None, None) => {
                    let (p, m, _) = data::bianchi_data(*field)?;
                    (p, m)
                }
                (Some(p), Some(m)) => {
                    let pres = parse_presentation(&std::fs::read_to_string(p)?)?;
                    let gf = parse_generator_file(&std::fs::read_to_string(m)?)?;
                    if gf.kind != RingKind::ImagQuadratic(*field) {
                        return Err(Error::Input(format!("matrix file is over {}, expected d={field}", gf.kind.name())));
                    }
                    let mats = data::matrices_for(&pres, &gf)?;
                    (pres, mats)
                }
                _ => return Err(Error::Input("--presentation and --matrices go together".into())),
            };
            let max_index = match budget {
                Some(0) => return Err(Error::Input("--budget must be positive".into())),
                Some(b) => *b,
                None if *big => BIG_INDEX_BUDGET,
                None => DEFAULT_INDEX_BUDGET,
            };
            if *big {
                eprintln!("warning: --big allows kernels of index up to {max_index}; expect long runs");
            }
            let kind = RingKind::ImagQuadratic(*field);
            let primes: Vec<_> = primes_up_to_norm(kind, norm.unwrap_or(*norm_max))?
                .into_iter()
                .filter(|q| norm.is_none_or(|n| q.norm() == n))
                .collect();
            if primes.is_empty() {
                return Err(Error::Input("no prime ideals in the requested norm range".into()));
            }
            let opts = HomologyOptions { max_index, ..HomologyOptions::default() };
            let mut text = format!("Q(sqrt -{field}): H_1 of Gamma(p)\n{:>5}  {:<14} {:>8} {:>5}  torsion\n", "norm", "prime", "index", "rank");
            let mut rows = Vec::new();
            let mut skipped = false;
            for q in &primes {
                let label = q.generator.as_ref().map(|g| format!("({g})")).unwrap_or_else(|| q.describe());
                match congruence_homology(&pres, &mats, q, &opts) {
                    Ok(r) => {
                        text.push_str(&format!("{:>5}  {:<14} {:>8} {:>5}  {}\n", r.norm, label, r.index, r.rank, r.torsion));
                        rows.push(serde_json::to_value(&r)?);
                    }
                    Err(e @ Error::Budget { .. }) => {
                        skipped = true;
                        text.push_str(&format!("{:>5}  {:<14} skipped: {e}\n", q.norm(), label));
                        rows.push(json!({"norm": q.norm(), "prime": q.describe(), "skipped": e.to_string()}));
                    }
                    Err(e) => return Err(e),
                }
            }
            emit(text, json!({"field": field, "rows": rows}), format)?;
            Ok(if skipped { Outcome::Partial } else { Outcome::Pass })
        }
        Cmd::CheckIdentities { alpha } => {
            let a = match alpha {
                Some(p) => parse_matrix(&std::fs::read_to_string(p)?)?,
                None => instances::alpha(),
            };
            let s = identities::run_identities_with(&a)?;
            let mut text = s.to_text();
            text.push_str(if s.ok() { "all identities as expected\n" } else { "identity check FAILED\n" });
            emit(text, serde_json::to_value(&s)?, format)?;
            Ok(verdict(s.ok()))
        }
        Cmd::Tree { model, p, radius, budget } => {
            let name = match (model.as_str(), p) {
                ("pgl2", Some(p)) => format!("pgl2-{p}"),
                ("pgl2", None) => return Err(Error::Input("pgl2 needs --p".into())),
                (m, None) => m.to_string(),
                (_, Some(_)) => return Err(Error::Input("--p applies to pgl2 only".into())),
            };
            let m = models::by_name(&name)?;
            let x = bfs_explore(&m, 0, *radius, *budget)?;
            let ok = x.is_tree && x.regular;
            match format {
                Format::Dot => print!("{}", x.to_dot()),
                _ => {
                    let text = format!(
                        "model {} radius {}: {} vertices {} edges, per type {:?}, valences {:?}, tree {}, regular {}\n",
                        x.model,
                        x.radius,
                        x.vertices.len(),
                        x.edges.len(),
                        x.count_by_type(),
                        x.valences,
                        x.is_tree,
                        x.regular
                    );
                    emit(text, serde_json::to_value(&x)?, format)?;
                }
            }
            Ok(verdict(ok))
        }
        Cmd::Tower { example, steps, radius } => {
            let ex = tower::example(example)?;
            let built = tower::build_tower(&ex, *steps)?;
            let r = tower::tower_report(&ex, &built, *radius)?;
            emit(r.to_text(), serde_json::to_value(&r)?, format)?;
            Ok(verdict(r.passed()))
        }
        Cmd::Lemma22 { scheme, field, prime, j, k, budget } => {
            let upper = scheme.to_uppercase();
            let (sch, n) = match (upper.strip_prefix("SL"), upper.strip_prefix("GL")) {
                (Some(n), _) => (Scheme::SL, n),
                (_, Some(n)) => (Scheme::GL, n),
                _ => return Err(Error::Input(format!("unknown scheme {scheme} (SLn or GLn)"))),
            };
            let n: usize = n.parse().map_err(|_| Error::Input(format!("bad matrix size in {scheme}")))?;
            if n == 0 || j >= k || *budget == 0 {
                return Err(Error::Input("need n >= 1, j < k and a positive budget".into()));
            }
            let q = parse_prime(RingKind::ImagQuadratic(*field), prime)?;
            let r = congruence_quotient_check(&sch, n, &q, *j, *k, *budget)?;
            let mut problems = Vec::new();
            if !r.p_group {
                problems.push("not a p-group");
            }
            if *k <= 2 * *j && !r.abelian {
                problems.push("not abelian although k <= 2j");
            }
            if *k <= *j + 1 && !r.elementary_abelian {
                problems.push("not elementary abelian although k = j + 1");
            }
            let text = format!(
                "{}{} at {} (norm {}), levels j={} k={}: order {}, abelian {}, exponent {}, elementary abelian {}\n{}\n",
                r.scheme,
                r.n,
                r.prime,
                q.norm(),
                r.j,
                r.k,
                r.order,
                r.abelian,
                r.exponent,
                r.elementary_abelian,
                if problems.is_empty() { "PASS".to_string() } else { format!("FAIL: {}", problems.join(", ")) }
            );
            emit(text, serde_json::to_value(&r)?, format)?;
            Ok(verdict(problems.is_empty()))
        }
        Cmd::PuCount => {
            let c = rfrs_core::congsub::pu::pu_identity_congruent_count()?;
            let ok = c.reduced_form_matches && c.involution_negates_t && c.pu_count * c.scalar_count == c.lift_count;
            let text = format!("lift_count {} scalar_count {} pu_count {}\n", c.lift_count, c.scalar_count, c.pu_count);
            emit(text, serde_json::to_value(&c)?, format)?;
            Ok(verdict(ok))
        }
        Cmd::O41Level4 { budget } => {
            let r = level4_homology(*budget, Transversal::Shortlex)?;
            let text = format!(
                "diagram ok {}\nGamma(2): index {} (enumerated {}), {} Schreier generators, {} after simplification\nGamma(4) in Gamma(2): index {}, -I in image {}\nGamma(4): {} Schreier generators, {} after simplification\nH_1(Gamma(4)) = {} (no 2-torsion: {})\n",
                r.diagram.ok,
                r.index_level2,
                r.enumerated_index_level2,
                r.level2_rs_generators,
                r.level2_generators,
                r.index_level4_in_level2,
                r.minus_identity_in_image,
                r.level4_rs_generators,
                r.level4_generators,
                r.invariants,
                r.no_2_torsion
            );
            emit(text, serde_json::to_value(&r)?, format)?;
            Ok(verdict(r.diagram.ok && r.no_2_torsion))
        }
    }
}
