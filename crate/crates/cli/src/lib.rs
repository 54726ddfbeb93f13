//! Command-line front end for `palindroma-core`.
//!
//! [`run`] parses an argument vector, dispatches to the library and writes
//! either a human-readable summary or a single JSON document. Exit codes:
//! 0 for any computed answer (negative verdicts included), 2 for bad input,
//! 3 for a failed internal check or a failing selftest item.

pub mod selftest;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use palindroma_core::abelianization::{lift, membership_report, psi, Obstruction};
use palindroma_core::centralizer::{
    centralizer_enumerate, commutant, order_census, verify_family, Family, DEFAULT_CENSUS_BOUND,
};
use palindroma_core::freegroup::Word;
use palindroma_core::intmat::{BigIntJson, OrderResult};
use palindroma_core::reducible::{
    bounded_conjugator_search, conjugation_residual, decide_sim1_with_bound, reduce_by_permutation,
    solve_conjugation_system, zero_pattern_reducible, ConjugacyVerdict, Orientation, ReducibleForm, SimDecision,
    DEFAULT_SEARCH_BOUND,
};
use palindroma_core::zclass::{
    block_embed_audit, distinguish_a12_sigma_with_bound, generator_zclass_witness, p3_audit_with, GeneratorId,
    Outcome, P3Params,
};
use palindroma_core::{EndoMap, Error, IntMatrix};
use serde::Serialize;

const DEFAULT_RANK: usize = 3;
const DEFAULT_ORDER_BOUND: u32 = 64;
const DEFAULT_A12_SIGMA_BOUND: i64 = 3;

#[derive(Debug, Parser)]
#[command(name = "palindroma", version, about = "Exact computations with palindromic automorphisms of free groups")]
pub struct Cli {
    /// Emit one JSON document instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Seed for randomized generators.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Search bound; each command has its own default.
    #[arg(long, global = true, env = "PALINDROMA_BOUND")]
    pub bound: Option<i64>,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exponent-sum matrix of an endomorphism.
    Psi(MapArg),
    /// Palindromic automorphism with the given matrix image.
    Lift(MatrixArg),
    /// Membership in the parity subgroup, with obstruction or lift.
    Member(MatrixArg),
    /// Whether a reduced word is a palindrome.
    Palindrome {
        word: String,
        #[arg(long)]
        rank: Option<usize>,
    },
    /// Apply an endomorphism to a word.
    Apply {
        map: String,
        word: String,
    },
    /// Composite `f∘g` (apply `g` first).
    Compose {
        f: String,
        g: String,
    },
    Order {
        matrix: String,
    },
    Charpoly {
        matrix: String,
    },
    Eigen {
        matrix: String,
    },
    /// Zero patterns and block-triangular form under permutation.
    Reducible {
        matrix: String,
    },
    /// Conjugacy of a reducible form to its decoupled form.
    Sim1(Sim1Args),
    /// Integer solutions of `X·A = B·X`.
    Conjsys {
        a: String,
        b: String,
    },
    /// `G·A − B·G`.
    Residual {
        a: String,
        b: String,
        g: String,
    },
    /// Integer lattice of matrices commuting with M.
    Commutant {
        matrix: String,
        /// Print only the rank.
        #[arg(long, conflicts_with = "basis")]
        rank: bool,
        /// Include a lattice basis.
        #[arg(long)]
        basis: bool,
    },
    /// Bounded centralizer elements in the parity subgroup.
    Centralizer {
        matrix: String,
        /// Tally element orders instead of listing elements.
        #[arg(long)]
        census: bool,
    },
    /// Check a parametrized centralizer family, or build one instance.
    Family {
        id: String,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        params: Option<Vec<i64>>,
    },
    #[command(subcommand)]
    Zclass(ZclassCommand),
    /// Run the reproduction suite.
    Selftest,
}

#[derive(Debug, Args)]
pub struct MapArg {
    /// Images separated by `,`, `;` or newlines, or a file path.
    pub map: String,
    #[arg(long)]
    pub rank: Option<usize>,
}

#[derive(Debug, Args)]
pub struct MatrixArg {
    pub matrix: String,
    /// Expected dimension.
    #[arg(long)]
    pub rank: Option<usize>,
}

#[derive(Debug, Args)]
pub struct Sim1Args {
    /// Full 3×3 matrix, reduced by permutation search.
    #[arg(required_unless_present = "a2", conflicts_with_all = ["a2", "e", "r", "s", "lower"])]
    pub matrix: Option<String>,
    /// 2×2 block.
    #[arg(long, requires_all = ["e", "r", "s"])]
    pub a2: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub e: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub r: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub s: Option<i64>,
    /// Use the lower-right orientation.
    #[arg(long)]
    pub lower: bool,
    /// Attach a bounded conjugator search to the verdict.
    #[arg(long)]
    pub evidence: bool,
}

#[derive(Debug, Subcommand)]
pub enum ZclassCommand {
    /// Conjugator or distinguishers for two generator images.
    Witness {
        #[arg(long)]
        g1: String,
        #[arg(long)]
        g2: String,
    },
    /// Audit of the Â/B̂ families and the D̂ pair.
    P3 {
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long, allow_hyphen_values = true)]
        l: i64,
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
        #[arg(long, allow_hyphen_values = true)]
        b: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        c: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        t: Option<i64>,
    },
    /// Block embedding `diag(M, I)` and its commutant.
    Embed {
        matrix: String,
        #[arg(long, alias = "rank")]
        dim: usize,
    },
    /// Order-4 distinguisher for ψ(A12) against ψ(σ1).
    A12Sigma,
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_internal() {
            Failure::Internal(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

type CmdResult = std::result::Result<i32, Failure>;

struct Output {
    json: bool,
    buf: Vec<u8>,
}

impl Output {
    fn emit<T: Serialize>(&mut self, value: &T, text: impl FnOnce() -> String) -> CmdResult {
        if self.json {
            let s = serde_json::to_string(value).map_err(|e| Failure::Internal(e.to_string()))?;
            writeln!(self.buf, "{s}").map_err(|e| Failure::Internal(e.to_string()))?;
        } else {
            let s = text();
            write!(self.buf, "{s}").map_err(|e| Failure::Internal(e.to_string()))?;
            if !s.ends_with('\n') {
                writeln!(self.buf).map_err(|e| Failure::Internal(e.to_string()))?;
            }
        }
        Ok(0)
    }
}

/// Runs the CLI on `args` (including the program name) and returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 { write!(out, "{rendered}") } else { write!(err, "{rendered}") };
            return code;
        }
    };
    let mut output = Output { json: cli.json, buf: Vec::new() };
    let result = dispatch(&cli, &mut output);
    let code = match result {
        Ok(code) => code,
        Err(Failure::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            return 2;
        }
        Err(Failure::Internal(msg)) => {
            let _ = writeln!(err, "internal error: {msg}");
            return 3;
        }
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &output.buf) {
                let _ = writeln!(err, "error: cannot write {}: {e}", path.display());
                return 2;
            }
        }
        None => {
            let _ = out.write_all(&output.buf);
        }
    }
    code
}

fn matrix(text: &str) -> std::result::Result<IntMatrix, Failure> {
    Ok(text.parse::<IntMatrix>()?)
}

fn matrix_of_rank(text: &str, rank: Option<usize>) -> std::result::Result<IntMatrix, Failure> {
    let m = matrix(text)?;
    match rank {
        Some(n) if n != m.dim() => Err(Failure::Input(format!("expected a {n}×{n} matrix, got {0}×{0}", m.dim()))),
        _ => Ok(m),
    }
}

/// Reads an endomorphism from a file path or from inline images.
fn endo_map(text: &str, rank: Option<usize>) -> std::result::Result<EndoMap, Failure> {
    let content = if !text.contains(['\n', ',', ';']) && Path::new(text).is_file() {
        std::fs::read_to_string(text).map_err(|e| Failure::Input(format!("cannot read {text}: {e}")))?
    } else {
        text.to_string()
    };
    let images: Vec<&str> = content
        .split(['\n', ',', ';'])
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .collect();
    let n = rank.unwrap_or(images.len());
    let words = images.iter().map(|w| Word::parse(w, n)).collect::<palindroma_core::Result<Vec<_>>>()?;
    Ok(EndoMap::new(n, words)?)
}

fn word_rank(text: &str) -> usize {
    text.split_whitespace()
        .filter_map(|t| t.strip_prefix('a'))
        .filter_map(|t| t.split('^').next()?.parse::<usize>().ok())
        .max()
        .unwrap_or(0)
        .max(DEFAULT_RANK)
}

fn images(f: &EndoMap) -> Vec<String> {
    f.images().iter().map(ToString::to_string).collect()
}

fn big(v: &BigInt) -> BigIntJson<'_> {
    BigIntJson(v)
}

fn dispatch(cli: &Cli, out: &mut Output) -> CmdResult {
    match &cli.command {
        Command::Psi(a) => {
            let f = endo_map(&a.map, a.rank)?;
            let m = psi(&f);
            #[derive(Serialize)]
            struct J<'a> {
                matrix: &'a IntMatrix,
                palindromic: bool,
                in_parity_subgroup: bool,
            }
            let j = J { matrix: &m, palindromic: f.is_palindromic(), in_parity_subgroup: m.is_in_hat_gl() };
            out.emit(&j, || m.pretty())
        }
        Command::Lift(a) => {
            let m = matrix_of_rank(&a.matrix, a.rank)?;
            let f = lift(&m)?;
            #[derive(Serialize)]
            struct J {
                rank: usize,
                images: Vec<String>,
                palindromic: bool,
            }
            out.emit(&J { rank: f.rank(), images: images(&f), palindromic: f.is_palindromic() }, || f.to_file_format())
        }
        Command::Member(a) => {
            let m = matrix_of_rank(&a.matrix, a.rank)?;
            let r = membership_report(&m);
            #[derive(Serialize)]
            struct J<'a> {
                member: bool,
                obstruction: &'a Option<Obstruction>,
                lift: Option<Vec<String>>,
            }
            let j = J { member: r.member, obstruction: &r.obstruction, lift: r.lift.as_ref().map(images) };
            out.emit(&j, || match (&r.obstruction, &r.lift) {
                (_, Some(f)) => format!("member\n{}", f.to_file_format()),
                (Some(Obstruction::RowParity { row, odd_count }), _) => {
                    format!("not a member: row {row} has {odd_count} odd entries")
                }
                (Some(Obstruction::Determinant { det }), _) => format!("not a member: det = {det}"),
                (None, None) => "not a member".into(),
            })
        }
        Command::Palindrome { word, rank } => {
            let w = Word::parse(word, rank.unwrap_or_else(|| word_rank(word)))?;
            #[derive(Serialize)]
            struct J {
                palindrome: bool,
                reduced: String,
            }
            let p = w.is_palindrome();
            out.emit(&J { palindrome: p, reduced: w.to_string() }, || format!("{p}"))
        }
        Command::Apply { map, word } => {
            let f = endo_map(map, None)?;
            let w = Word::parse(word, f.rank())?;
            let image = f.apply(&w)?;
            #[derive(Serialize)]
            struct J {
                result: String,
                length: usize,
            }
            out.emit(&J { result: image.to_string(), length: image.len() }, || image.to_string())
        }
        Command::Compose { f, g } => {
            let f = endo_map(f, None)?;
            let g = endo_map(g, Some(f.rank()))?;
            let h = f.compose(&g)?;
            #[derive(Serialize)]
            struct J {
                rank: usize,
                images: Vec<String>,
                palindromic: bool,
            }
            out.emit(&J { rank: h.rank(), images: images(&h), palindromic: h.is_palindromic() }, || h.to_file_format())
        }
        Command::Order { matrix: text } => {
            let m = matrix(text)?;
            if !m.is_unimodular() {
                return Err(Failure::Input(format!("matrix is not unimodular (det = {})", m.det())));
            }
            let order = if m.dim() <= 3 {
                m.order()?
            } else {
                m.order_with_bound(cli.bound.map_or(DEFAULT_ORDER_BOUND, |b| b.clamp(1, u32::MAX as i64) as u32))
            };
            #[derive(Serialize)]
            struct J {
                order: OrderResult,
            }
            out.emit(&J { order }, || order.to_string())
        }
        Command::Charpoly { matrix: text } => {
            let m = matrix(text)?;
            let chi = m.char_poly();
            #[derive(Serialize)]
            struct J<'a> {
                char_poly: &'a palindroma_core::intmat::CharPoly,
                trace: BigIntJson<'a>,
                det: BigIntJson<'a>,
            }
            let (tr, det) = (m.trace(), m.det());
            out.emit(&J { char_poly: &chi, trace: big(&tr), det: big(&det) }, || chi.to_string())
        }
        Command::Eigen { matrix: text } => {
            let m = matrix(text)?;
            let r = m.eigen_classify()?;
            out.emit(&r, || {
                let mut s = format!("χ(t) = {}\n", r.char_poly);
                for e in &r.eigenvalues {
                    s.push_str(&format!("{e}\n"));
                }
                s.push_str(&format!("all eigenvalues ±1: {}", r.all_unit));
                s
            })
        }
        Command::Reducible { matrix: text } => {
            let m = matrix(text)?;
            let conditions = zero_pattern_reducible(&m)?;
            let form = reduce_by_permutation(&m)?;
            #[derive(Serialize)]
            struct J<'a> {
                reducible: bool,
                zero_conditions: Vec<&'static str>,
                form: &'a Option<ReducibleForm>,
            }
            let labels: Vec<&'static str> = conditions.iter().map(|c| c.label()).collect();
            let j = J { reducible: form.is_some(), zero_conditions: labels.clone(), form: &form };
            out.emit(&j, || match &form {
                None => "irreducible".into(),
                Some(f) => format!(
                    "reducible ({})\nzero conditions: {}\nP =\n{}\nP⁻¹MP =\n{}",
                    f.orientation,
                    labels.join(", "),
                    f.permutation.pretty(),
                    f.coupled().pretty()
                ),
            })
        }
        Command::Sim1(args) => sim1(cli, args, out),
        Command::Conjsys { a, b } => {
            let (a, b) = (matrix(a)?, matrix(b)?);
            let sys = solve_conjugation_system(&a, &b)?;
            let bound = cli.bound.unwrap_or(DEFAULT_CENSUS_BOUND);
            let conjugators = if a.dim() == 3 { Some(sys.bounded_invertible(bound, true)?) } else { None };
            #[derive(Serialize)]
            struct J<'a> {
                rank: usize,
                saturated: bool,
                basis: Vec<IntMatrix>,
                bound: i64,
                parity_conjugators: &'a Option<Vec<IntMatrix>>,
            }
            let j = J { rank: sys.rank(), saturated: sys.is_saturated(), basis: sys.basis(), bound, parity_conjugators: &conjugators };
            out.emit(&j, || {
                let mut s = format!("solution lattice rank {}\n", sys.rank());
                for (k, x) in sys.basis().iter().enumerate() {
                    s.push_str(&format!("X{} =\n{}\n", k + 1, x.pretty()));
                }
                if let Some(c) = &conjugators {
                    s.push_str(&format!("{} parity-subgroup conjugators with coefficients in [-{bound}, {bound}]", c.len()));
                }
                s
            })
        }
        Command::Residual { a, b, g } => {
            let (a, b, g) = (matrix(a)?, matrix(b)?, matrix(g)?);
            let r = conjugation_residual(&a, &b, &g)?;
            #[derive(Serialize)]
            struct J<'a> {
                residual: &'a IntMatrix,
                zero: bool,
            }
            out.emit(&J { residual: &r, zero: r.is_zero() }, || r.pretty())
        }
        Command::Commutant { matrix: text, rank, basis } => {
            let m = matrix(text)?;
            let c = commutant(&m)?;
            let relations = c.relation_strings();
            #[derive(Serialize)]
            struct J<'a> {
                rank: usize,
                relations: &'a [String],
                basis: Option<Vec<IntMatrix>>,
            }
            if *rank {
                #[derive(Serialize)]
                struct R {
                    rank: usize,
                }
                return out.emit(&R { rank: c.rank() }, || c.rank().to_string());
            }
            let j = J { rank: c.rank(), relations: &relations, basis: basis.then(|| c.basis()) };
            out.emit(&j, || {
                let mut s = format!("rank {}\n", c.rank());
                for r in &relations {
                    s.push_str(&format!("{r}\n"));
                }
                if *basis {
                    for (k, x) in c.basis().iter().enumerate() {
                        s.push_str(&format!("X{} =\n{}\n", k + 1, x.pretty()));
                    }
                }
                s
            })
        }
        Command::Centralizer { matrix: text, census } => {
            let m = matrix(text)?;
            let bound = cli.bound.unwrap_or(DEFAULT_CENSUS_BOUND);
            if *census {
                let c = order_census(&m, bound)?;
                return out.emit(&c, || {
                    let mut s = format!("{} elements with coefficients in [-{bound}, {bound}]\n", c.total);
                    for (k, v) in &c.counts {
                        s.push_str(&format!("order {k}: {v}\n"));
                    }
                    s.push_str(&format!("infinite order: {}", c.infinite));
                    s
                });
            }
            let elements = centralizer_enumerate(&m, bound)?;
            #[derive(Serialize)]
            struct J<'a> {
                bound: i64,
                count: usize,
                elements: &'a [IntMatrix],
            }
            out.emit(&J { bound, count: elements.len(), elements: &elements }, || {
                let mut s = format!("{} elements with coefficients in [-{bound}, {bound}]\n", elements.len());
                for x in &elements {
                    s.push_str(&format!("{x}\n"));
                }
                s
            })
        }
        Command::Family { id, params } => {
            let family: Family = id.parse()?;
            match params {
                Some(p) => {
                    let x = family.instance(p).ok_or_else(|| {
                        Failure::Input(format!("{family} expects parameters ({})", family.parameters().join(", ")))
                    })?;
                    let base = family.base();
                    #[derive(Serialize)]
                    struct J<'a> {
                        family: String,
                        parameters: &'a [i64],
                        instance: &'a IntMatrix,
                        commutes: bool,
                        in_parity_subgroup: bool,
                    }
                    let commutes = x.commutes_with(&base)?;
                    let j = J {
                        family: family.to_string(),
                        parameters: p,
                        instance: &x,
                        commutes,
                        in_parity_subgroup: x.is_in_hat_gl(),
                    };
                    out.emit(&j, || format!("{}\ncommutes with base: {commutes}", x.pretty()))
                }
                None => {
                    let r = verify_family(family, cli.bound.unwrap_or(DEFAULT_CENSUS_BOUND))?;
                    out.emit(&r, || {
                        format!(
                            "{}: base {}\ninstances checked {}, commuting failures {} (direction a: {})\ncommutant rank {}: {}\nelements checked {}, outside the displayed shape {} (direction b: {})",
                            r.family,
                            r.base,
                            r.instances_checked,
                            r.instance_failures,
                            r.direction_a,
                            r.commutant_rank,
                            r.commutant_relations.join(", "),
                            r.elements_checked,
                            r.shape_failures,
                            r.direction_b
                        )
                    })
                }
            }
        }
        Command::Zclass(z) => zclass(cli, z, out),
        Command::Selftest => {
            let report = selftest::run(&selftest::Config { seed: cli.seed, ..Default::default() });
            let code = report.exit_code();
            out.emit(&report, || {
                let mut s = String::new();
                for i in &report.items {
                    s.push_str(&format!("{:<7} [{}] {}: {} ({} ms)\n", i.status, i.id, i.name, i.detail, i.millis));
                }
                s.push_str(&format!(
                    "{} passed, {} failed, {} erratum",
                    report.count(selftest::Status::Pass),
                    report.count(selftest::Status::Fail),
                    report.count(selftest::Status::Erratum)
                ));
                s
            })?;
            Ok(code)
        }
    }
}

fn sim1(cli: &Cli, args: &Sim1Args, out: &mut Output) -> CmdResult {
    let form = match (&args.matrix, &args.a2) {
        (Some(text), _) => {
            let m = matrix_of_rank(text, Some(3))?;
            reduce_by_permutation(&m)?
                .ok_or_else(|| Failure::Input("matrix is not reducible by a permutation".into()))?
        }
        (None, Some(a2)) => {
            let orientation = if args.lower { Orientation::LowerRight1x1 } else { Orientation::UpperLeft1x1 };
            let (e, r, s) = (args.e.unwrap_or(1), args.r.unwrap_or(0), args.s.unwrap_or(0));
            ReducibleForm::from_blocks(orientation, e, matrix_of_rank(a2, Some(2))?, r, s)?
        }
        (None, None) => return Err(Failure::Input("give a matrix or --a2".into())),
    };
    let bound = cli.bound.unwrap_or(DEFAULT_SEARCH_BOUND);
    let d = decide_sim1_with_bound(&form, bound)?;
    let evidence = if args.evidence {
        Some(Evidence { bound, conjugator: bounded_conjugator_search(&d.coupled, &d.decoupled, bound)? })
    } else {
        None
    };
    let j = Sim1Json::new(&d, &form, evidence.as_ref());
    out.emit(&j, || sim1_text(&d, evidence.as_ref()))
}

#[derive(Debug, Serialize)]
struct Evidence {
    bound: i64,
    conjugator: Option<IntMatrix>,
}

#[derive(Serialize)]
struct Sim1Json<'a> {
    verdict: &'static str,
    m: BigIntJson<'a>,
    residue: [BigIntJson<'a>; 2],
    orientation: Orientation,
    invariants: &'a palindroma_core::reducible::SimInvariants,
    witness: Option<&'a IntMatrix>,
    reason: Option<&'a str>,
    form: &'a ReducibleForm,
    coupled: &'a IntMatrix,
    decoupled: &'a IntMatrix,
    evidence: Option<&'a Evidence>,
}

impl<'a> Sim1Json<'a> {
    fn new(d: &'a SimDecision, form: &'a ReducibleForm, evidence: Option<&'a Evidence>) -> Self {
        let reason = match &d.verdict {
            ConjugacyVerdict::NotConjugate { reason } | ConjugacyVerdict::Inapplicable { reason } => Some(reason.as_str()),
            _ => None,
        };
        Sim1Json {
            verdict: d.verdict.name(),
            m: big(&d.invariants.m),
            residue: [big(&d.residue[0]), big(&d.residue[1])],
            orientation: d.orientation,
            invariants: &d.invariants,
            witness: d.verdict.witness(),
            reason,
            form,
            coupled: &d.coupled,
            decoupled: &d.decoupled,
            evidence,
        }
    }
}

fn sim1_text(d: &SimDecision, evidence: Option<&Evidence>) -> String {
    let inv = &d.invariants;
    let mut s = format!(
        "{} form\ne = {}, τ = {}, δ = {}, m = {}\nA0 =\n{}\nresidue ({}, {})\nverdict: {}\n",
        d.orientation,
        inv.e,
        inv.tau,
        inv.delta,
        inv.m,
        inv.a0.pretty(),
        d.residue[0],
        d.residue[1],
        d.verdict.name()
    );
    match &d.verdict {
        ConjugacyVerdict::ConjugateWithWitness { witness } => s.push_str(&format!("witness =\n{}\n", witness.pretty())),
        ConjugacyVerdict::NotConjugate { reason } | ConjugacyVerdict::Inapplicable { reason } => {
            s.push_str(&format!("{reason}\n"))
        }
        ConjugacyVerdict::Unknown { bound } => s.push_str(&format!("no conjugator with coefficients in [-{bound}, {bound}]\n")),
    }
    if let Some(e) = evidence {
        match &e.conjugator {
            Some(c) => s.push_str(&format!("bounded search (k = {}) found\n{}\n", e.bound, c.pretty())),
            None => s.push_str(&format!("bounded search (k = {}) found nothing\n", e.bound)),
        }
    }
    s
}

fn zclass(cli: &Cli, z: &ZclassCommand, out: &mut Output) -> CmdResult {
    match z {
        ZclassCommand::Witness { g1, g2 } => {
            let (g1, g2): (GeneratorId, GeneratorId) = (g1.parse()?, g2.parse()?);
            let w = generator_zclass_witness(&g1, &g2)?;
            out.emit(&w, || {
                let mut s = format!("ψ({g1}) = {}\nψ({g2}) = {}\n", w.left, w.right);
                match &w.outcome {
                    Outcome::ConjugatorFound { conjugator, samples_verified } => s.push_str(&format!(
                        "conjugate by\n{}\ncentralizer correspondence checked on {samples_verified} elements",
                        conjugator.pretty()
                    )),
                    Outcome::Distinguished { distinguishers } => {
                        s.push_str("different z-classes\n");
                        for d in distinguishers {
                            s.push_str(&format!("{}: {} vs {} ({})\n", d.invariant, d.left, d.right, d.scope));
                        }
                    }
                    Outcome::Inconclusive { bound } => s.push_str(&format!("inconclusive at bound {bound}")),
                }
                s
            })
        }
        ZclassCommand::P3 { n, l, m, b, c, t } => {
            let defaults = P3Params::default();
            let params = P3Params { b: b.unwrap_or(defaults.b), c: c.unwrap_or(defaults.c), t: t.or(defaults.t) };
            let r = p3_audit_with(*n, *l, *m, cli.bound.unwrap_or(DEFAULT_CENSUS_BOUND), params)?;
            out.emit(&r, || {
                let mut s = format!(
                    "Â = {}\nB̂ = {}\ncommutant ranks {} and {}\nZ(Â): {}\nZ(B̂): {}\n",
                    r.a,
                    r.b,
                    r.commutant_a.rank(),
                    r.commutant_b.rank(),
                    r.relations_a.join(", "),
                    r.relations_b.join(", ")
                );
                s.push_str(&format!(
                    "bounded Z(Â) elements {} all with eigenvalues ±1: {}\n",
                    r.eigen_a.elements, r.eigen_a.all_unit
                ));
                for x in &r.x_checks {
                    s.push_str(&format!(
                        "X̂(b={}, c={}) commutes with B̂: {}{}\n",
                        x.b,
                        x.c,
                        x.commutes,
                        if x.erratum { " [ERRATUM]" } else { "" }
                    ));
                }
                s.push_str(&format!(
                    "D̂ pair: {} of {} equalities implied, conjugate parameters {:?}\n",
                    r.d_pair.equalities.iter().filter(|e| e.implied).count(),
                    r.d_pair.equalities.len(),
                    r.d_pair.conjugate_parameters
                ));
                for d in &r.distinguishers {
                    s.push_str(&format!("{}: {} vs {} ({})\n", d.invariant, d.left, d.right, d.scope));
                }
                s
            })
        }
        ZclassCommand::Embed { matrix: text, dim } => {
            let m = matrix_of_rank(text, Some(3))?;
            let r = block_embed_audit(&m, *dim)?;
            out.emit(&r, || {
                format!(
                    "{}\nmembership preserved: {}\ncommutant ranks {} → {}, projection equal: {}, cross-block rank {}",
                    r.embedded.pretty(),
                    r.membership_preserved,
                    r.rank_small,
                    r.rank_big,
                    r.projection_equal,
                    r.cross_block_rank
                )
            })
        }
        ZclassCommand::A12Sigma => {
            let r = distinguish_a12_sigma_with_bound(cli.bound.unwrap_or(DEFAULT_A12_SIGMA_BOUND))?;
            out.emit(&r, || {
                let orders: Vec<String> = r.scan_orders.iter().map(ToString::to_string).collect();
                format!(
                    "{} commutes with ψ(σ1): {}, order {}\norders in bounded Z(ψ(A12)) (k = {}): {}\nparametric proof over {} sign cases: {}",
                    r.order4_element,
                    r.order4_element_commutes,
                    r.order4_element_order,
                    r.scan_bound,
                    orders.join(", "),
                    r.proof.cases.len(),
                    r.proof.holds
                )
            })
        }
    }
}
