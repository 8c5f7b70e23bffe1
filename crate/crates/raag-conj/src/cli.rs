//! Command-line front end. [`run`] returns the exit code and writes all
//! output through the given writers, so it can be driven from tests.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use raag_conj_core::automata::{conjgeo_automaton_inversions, cycgeo_automaton_with, geo_automaton, Symbol};
use raag_conj_core::extension::ExtError;
use raag_conj_core::series::{coefficients_from_automaton, coefficients_from_enumeration, find_recurrence};
use raag_conj_core::twisted::{enumerate_language, twisted_conjugate, TwistedError};
use raag_conj_core::word::{normal_form, parse_word};
use raag_conj_core::{
    Automaton, AutomatonError, Automorphism, ClosureMode, ExtLanguageKind, LanguageKind, SearchBudget, TriState,
    TwistedContext, VirtualGP,
};
use serde_json::json;

use crate::format::{load_session, LoadError, Session, GRAPH_PRESETS, PSI_PRESETS};
use crate::fsa::{to_dot, to_fsa};
use crate::verify;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_UNSUPPORTED: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "raag-conj", version, about = "Twisted conjugacy and conjugacy languages in right-angled Artin and Coxeter groups")]
pub struct Cli {
    #[command(flatten)]
    pub session: SessionArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct SessionArgs {
    /// Graph file or preset (square, path4, f2xz, edgeless, free2). Default: square.
    #[arg(long, global = true)]
    pub graph: Option<String>,
    /// Automorphism file or preset (rot, refl, linerefl, trv, pc, inva, inv:<vertex>, id).
    #[arg(long, visible_alias = "psi", global = true)]
    pub auto: Option<String>,
    /// Order m of the stable letter; switches to the extension by ⟨t⟩.
    #[arg(long, global = true)]
    pub torder: Option<usize>,
    /// Length cap for closure searches of non-length-preserving automorphisms.
    #[arg(long, global = true)]
    pub budget_len: Option<usize>,
    /// State cap for closure searches.
    #[arg(long, global = true)]
    pub budget_states: Option<usize>,
    /// Vertex order (`a c b d`) or full letter order (`a a' c c' ...`).
    #[arg(long, global = true)]
    pub letterorder: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Jsonl,
    Dot,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Geo,
    Cycgeo,
    Conjgeo,
    Conjsl,
    /// The union of t^l·ConjGeo over l (extension only).
    Union,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Source {
    Automaton,
    Enumeration,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Literal,
    Product,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the shortlex normal form of a word.
    NormalForm { word: String },
    /// Decide whether two words are ψ-twisted conjugate (conjugate in the
    /// extension when --torder is set).
    TwistedConj { u: String, v: String },
    /// List a language up to a length, in shortlex order.
    Enumerate {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long, default_value_t = 4)]
        maxlen: usize,
    },
    /// Build an automaton and print it as `fsa v1` text or DOT.
    Automaton {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long, value_enum, default_value_t = Mode::Literal)]
        mode: Mode,
        /// Write DOT to this file.
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Write `fsa v1` text to this file instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Growth series of a language with a fitted recurrence.
    Series {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long, default_value_t = 6)]
        maxlen: usize,
        #[arg(long, value_enum, default_value_t = Source::Enumeration)]
        source: Source,
    },
    /// Run the verification checks.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        /// Comma-separated criterion numbers; all when omitted.
        #[arg(long, value_delimiter = ',')]
        only: Vec<usize>,
    },
    /// List the built-in graph and automorphism presets.
    Presets,
}

/// Error with an exit code attached.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub msg: String,
}

impl Failure {
    fn new(code: i32, msg: impl Into<String>) -> Self {
        Failure { code, msg: msg.into() }
    }
}

impl From<LoadError> for Failure {
    fn from(e: LoadError) -> Self {
        Failure::new(EXIT_PARSE, e.to_string())
    }
}

impl From<TwistedError> for Failure {
    fn from(e: TwistedError) -> Self {
        let code = match e {
            TwistedError::BudgetExhausted => EXIT_BUDGET,
            TwistedError::InfiniteOrder(_) | TwistedError::Automorphism(_) => EXIT_UNSUPPORTED,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<AutomatonError> for Failure {
    fn from(e: AutomatonError) -> Self {
        let code = match e {
            AutomatonError::NotLengthPreserving | AutomatonError::PsiNotInversions => EXIT_UNSUPPORTED,
            _ => EXIT_PARSE,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<ExtError> for Failure {
    fn from(e: ExtError) -> Self {
        match e {
            ExtError::Twisted(t) => t.into(),
            ExtError::Automaton(a) => a.into(),
            ExtError::Parse(_) | ExtError::ReservedName => Failure::new(EXIT_PARSE, e.to_string()),
            ExtError::OrderMismatch(_) | ExtError::PhiWrongShape => Failure::new(EXIT_UNSUPPORTED, e.to_string()),
            ExtError::NotFoundWithinCap(_) => Failure::new(EXIT_BUDGET, e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::new(EXIT_PARSE, e.to_string())
    }
}

type Res<T> = Result<T, Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.msg);
            f.code
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Res<i32> {
    let s = &cli.session;
    match &cli.command {
        Command::Presets => {
            writeln!(out, "graphs: {}", GRAPH_PRESETS.join(", "))?;
            writeln!(out, "automorphisms: {}", PSI_PRESETS.join(", "))?;
            Ok(EXIT_OK)
        }
        Command::Verify { suite, only } => cmd_verify(suite, only, s.format, out),
        cmd => {
            let session = load_session(s.graph.as_deref(), s.auto.as_deref(), s.letterorder.as_deref(), s.torder)?;
            let budget = budget(s)?;
            match cmd {
                Command::NormalForm { word } => cmd_normal_form(&session, word, out),
                Command::TwistedConj { u, v } => cmd_twisted_conj(&session, &budget, u, v, out),
                Command::Enumerate { kind, maxlen } => cmd_enumerate(&session, &budget, *kind, *maxlen, s.format, out),
                Command::Automaton { kind, mode, dot, out: path } => {
                    cmd_automaton(&session, *kind, *mode, dot.as_ref(), path.as_ref(), s.format, out)
                }
                Command::Series { kind, maxlen, source } => cmd_series(&session, &budget, *kind, *maxlen, *source, out),
                Command::Presets | Command::Verify { .. } => unreachable!("handled above"),
            }
        }
    }
}

fn budget(s: &SessionArgs) -> Res<SearchBudget> {
    let mut b = SearchBudget::default();
    if let Some(l) = s.budget_len {
        if l == 0 {
            return Err(Failure::new(EXIT_PARSE, "--budget-len must be positive"));
        }
        b.max_length = Some(l);
    }
    if let Some(n) = s.budget_states {
        if n == 0 {
            return Err(Failure::new(EXIT_PARSE, "--budget-states must be positive"));
        }
        b.max_states = n;
    }
    Ok(b)
}

fn psi(session: &Session) -> Automorphism {
    session.psi.clone().unwrap_or_else(|| Automorphism::identity(session.graph.clone()))
}

fn context(session: &Session) -> Res<TwistedContext> {
    Ok(TwistedContext::new(psi(session))?)
}

fn extension(session: &Session) -> Res<Option<VirtualGP>> {
    match session.torder {
        None => Ok(None),
        Some(m) => Ok(Some(VirtualGP::new(psi(session), m)?)),
    }
}

fn parse(session: &Session, w: &str) -> Res<Vec<raag_conj_core::Letter>> {
    parse_word(&session.graph, w).map(|w| w.into_letters()).map_err(|e| Failure::new(EXIT_PARSE, e.to_string()))
}

fn cmd_normal_form(session: &Session, w: &str, out: &mut dyn Write) -> Res<i32> {
    if let Some(vg) = extension(session)? {
        // Canonical word: the shortest t-power prefix, then the normal form
        // of the base.
        let e = vg.normal_form(&vg.parse_word(w)?);
        let mut word = vg.t_power_words(e.t_exp).swap_remove(0);
        word.extend(vg.lift(&e.base));
        writeln!(out, "{} (len {})", vg.render(&word), word.len())?;
        return Ok(EXIT_OK);
    }
    let g = &session.graph;
    let nf = normal_form(g, &parse(session, w)?);
    writeln!(out, "{} (len {})", g.render(&nf), nf.len())?;
    Ok(EXIT_OK)
}

fn tri(t: TriState, out: &mut dyn Write) -> Res<i32> {
    let (text, code) = match t {
        TriState::Yes => ("YES", EXIT_OK),
        TriState::No => ("NO", EXIT_NO),
        TriState::UnknownBudget => ("UNKNOWN_BUDGET", EXIT_BUDGET),
    };
    writeln!(out, "{text}")?;
    Ok(code)
}

fn cmd_twisted_conj(session: &Session, b: &SearchBudget, u: &str, v: &str, out: &mut dyn Write) -> Res<i32> {
    if let Some(vg) = extension(session)? {
        let (x, y) = (vg.normal_form(&vg.parse_word(u)?), vg.normal_form(&vg.parse_word(v)?));
        return tri(vg.conjugate(&x, &y, b), out);
    }
    let c = context(session)?;
    let (x, y) = (parse(session, u)?, parse(session, v)?);
    tri(twisted_conjugate(&c, &x, &y, b), out)
}

fn core_kind(k: Kind) -> Res<LanguageKind> {
    Ok(match k {
        Kind::Geo => LanguageKind::Geo,
        Kind::Cycgeo => LanguageKind::CycGeo,
        Kind::Conjgeo => LanguageKind::ConjGeo,
        Kind::Conjsl => LanguageKind::ConjSl,
        Kind::Union => return Err(Failure::new(EXIT_UNSUPPORTED, "kind `union` needs --torder")),
    })
}

fn kind_name(k: Kind) -> &'static str {
    match k {
        Kind::Geo => "geo",
        Kind::Cycgeo => "cycgeo",
        Kind::Conjgeo => "conjgeo",
        Kind::Conjsl => "conjsl",
        Kind::Union => "union",
    }
}

/// Words of the requested language as rendered strings with lengths.
fn language(session: &Session, b: &SearchBudget, kind: Kind, n: usize) -> Res<Vec<(String, usize)>> {
    if let Some(vg) = extension(session)? {
        let words: Vec<Vec<Symbol>> = match kind {
            Kind::Geo => vg.enumerate_language(ExtLanguageKind::Geo, n, b)?,
            Kind::Conjgeo => vg.enumerate_language(ExtLanguageKind::ConjGeo, n, b)?,
            Kind::Conjsl => vg.enumerate_language(ExtLanguageKind::ConjSl, n, b)?,
            Kind::Union => vg.union_formula_words(n, b)?,
            Kind::Cycgeo => return Err(Failure::new(EXIT_UNSUPPORTED, "cycgeo is not defined over the extended alphabet")),
        };
        return Ok(words.iter().map(|w| (vg.render(w), w.len())).collect());
    }
    let c = context(session)?;
    let g = &session.graph;
    let words = enumerate_language(&c, core_kind(kind)?, n, b)?;
    Ok(words.iter().map(|w| (g.render(w), w.len())).collect())
}

fn cmd_enumerate(session: &Session, b: &SearchBudget, kind: Kind, n: usize, f: Format, out: &mut dyn Write) -> Res<i32> {
    let words = language(session, b, kind, n)?;
    match f {
        Format::Text => {
            for (w, _) in &words {
                writeln!(out, "{w}")?;
            }
        }
        Format::Jsonl => {
            for (w, l) in &words {
                writeln!(out, "{}", json!({ "word": w, "length": l, "kind": kind_name(kind) }))?;
            }
        }
        Format::Dot => return Err(Failure::new(EXIT_PARSE, "enumerate supports --format text or jsonl")),
    }
    Ok(EXIT_OK)
}

fn build_automaton(session: &Session, kind: Kind, mode: Mode) -> Res<Automaton> {
    let mode = match mode {
        Mode::Literal => ClosureMode::Literal,
        Mode::Product => ClosureMode::Product,
    };
    if let Some(vg) = extension(session)? {
        return match kind {
            Kind::Conjgeo | Kind::Union => Ok(vg.conjgeo_automaton()?.minimize()),
            _ => Err(Failure::new(EXIT_UNSUPPORTED, "over the extended alphabet only the conjgeo automaton is built")),
        };
    }
    let c = context(session)?;
    Ok(match kind {
        Kind::Geo => geo_automaton(&session.graph),
        Kind::Cycgeo => cycgeo_automaton_with(&c, mode)?,
        Kind::Conjgeo => conjgeo_automaton_inversions(&c)?,
        Kind::Conjsl => return Err(Failure::new(EXIT_UNSUPPORTED, "no automaton construction for conjsl")),
        Kind::Union => return Err(Failure::new(EXIT_UNSUPPORTED, "kind `union` needs --torder")),
    })
}

fn cmd_automaton(
    session: &Session,
    kind: Kind,
    mode: Mode,
    dot: Option<&PathBuf>,
    path: Option<&PathBuf>,
    f: Format,
    out: &mut dyn Write,
) -> Res<i32> {
    let a = build_automaton(session, kind, mode)?;
    let name = kind_name(kind);
    if let Some(p) = dot {
        fs::write(p, to_dot(&a, name))?;
    }
    let text = match f {
        Format::Dot => to_dot(&a, name),
        Format::Text => to_fsa(&a),
        Format::Jsonl => return Err(Failure::new(EXIT_PARSE, "automaton supports --format text or dot")),
    };
    match path {
        Some(p) => fs::write(p, text)?,
        None if dot.is_none() || f == Format::Dot => out.write_all(text.as_bytes())?,
        None => {}
    }
    Ok(EXIT_OK)
}

fn cmd_series(session: &Session, b: &SearchBudget, kind: Kind, n: usize, source: Source, out: &mut dyn Write) -> Res<i32> {
    let s = match source {
        Source::Automaton => coefficients_from_automaton(&build_automaton(session, kind, Mode::Literal)?, n),
        Source::Enumeration => {
            let lengths: Vec<Vec<()>> = language(session, b, kind, n)?.into_iter().map(|(_, l)| vec![(); l]).collect();
            coefficients_from_enumeration(&lengths, n)
        }
    };
    writeln!(out, "n  coeff")?;
    for (i, c) in s.coeffs.iter().enumerate() {
        writeln!(out, "{i}  {c}")?;
    }
    match find_recurrence(&s, None) {
        Ok(Some(r)) => writeln!(out, "recurrence: {r} (consistent-with-rational)")?,
        Ok(None) => writeln!(out, "recurrence: none found")?,
        Err(e) => writeln!(out, "recurrence: {e}")?,
    }
    Ok(EXIT_OK)
}

fn cmd_verify(suite: &str, only: &[usize], f: Format, out: &mut dyn Write) -> Res<i32> {
    if !matches!(suite, "all" | "paper") {
        return Err(Failure::new(EXIT_PARSE, format!("unknown suite `{suite}`; available: all")));
    }
    let ids: Vec<usize> = if only.is_empty() { verify::CRITERIA.iter().map(|c| c.0).collect() } else { only.to_vec() };
    let mut all = true;
    for id in ids {
        let r = verify::run(id).ok_or_else(|| Failure::new(EXIT_PARSE, format!("no criterion {id}")))?;
        all &= r.passed;
        let status = if r.passed { "PASS" } else { "FAIL" };
        match f {
            Format::Jsonl => writeln!(
                out,
                "{}",
                json!({ "id": r.id, "name": r.name, "passed": r.passed, "detail": r.detail })
            )?,
            _ => writeln!(out, "{status} {:>2} {}: {}", r.id, r.name, r.detail)?,
        }
    }
    Ok(if all { EXIT_OK } else { EXIT_NO })
}
