//! The `faclair` command line.
//!
//! Exit status: 0 on success, 1 when the data has no answer (unknown lemma,
//! irregular word, unrecognized form), 2 on unreadable or malformed input.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::analysis::{
    completeness, count_suffix_pattern, coverage, cumulative_coverage_curve, ending_histogram, find_near_duplicates,
    hapax_report, load_frequency_list, Delimiter, FrequencyList, Growth,
};
use crate::export::{
    emit_ddl_with, emit_inserts, paradigm_cells, render_paradigm, Dialect, Layout, TableRenderSpec, TableStyle,
};
use crate::lexicon::{build_all_forms, FoldPolicy, Vocabulary};
use crate::orthography::{normalize_accents, AccentMode, GaelicWord};
use crate::rules::{compare, conjugate, decline, inflect, parse_rules, FormCode, InflectError, RuleSet};
use crate::svf::{load_vocabulary_file, Entry, PartField, PartOfSpeech, SvfError};

#[derive(Debug, Parser)]
#[command(name = "faclair", version, about = "Scottish Gaelic morphology from principal parts")]
pub struct Cli {
    /// Vocabulary file in SVF.
    #[arg(long, global = true, env = "FACLAIR_VOCAB")]
    pub vocab: Option<PathBuf>,
    /// Rule file; the built-in rules are used when absent.
    #[arg(long, global = true, env = "FACLAIR_RULES")]
    pub rules: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = FoldArg::Accents)]
    pub fold: FoldArg,
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Table)]
    pub format: FormatArg,
    /// Accent normalization applied to words given on the command line and
    /// to frequency lists.
    #[arg(long, global = true, value_enum, default_value_t = AccentArg::None)]
    pub accent_mode: AccentArg,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FoldArg {
    Exact,
    Accents,
    AccentsCase,
}

impl From<FoldArg> for FoldPolicy {
    fn from(f: FoldArg) -> Self {
        match f {
            FoldArg::Exact => FoldPolicy::Exact,
            FoldArg::Accents => FoldPolicy::FoldAccents,
            FoldArg::AccentsCase => FoldPolicy::FoldAccentsAndCase,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Table,
    Tsv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AccentArg {
    Fold,
    Strip,
    None,
}

impl From<AccentArg> for AccentMode {
    fn from(a: AccentArg) -> Self {
        match a {
            AccentArg::Fold => AccentMode::FoldAcuteToGrave,
            AccentArg::Strip => AccentMode::StripAll,
            AccentArg::None => AccentMode::None,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check every vocabulary line and summarize the data.
    Validate {
        /// Also fail (exit 1) on constraint violations.
        #[arg(long)]
        strict: bool,
    },
    /// Print one grammatical form of a lemma.
    Inflect { lemma: String, form: String },
    /// Case table of a noun.
    Decline { lemma: String },
    /// Conjugation table of a verb.
    Conjugate { lemma: String },
    /// Forms of an adjective.
    Compare { lemma: String },
    /// Write every derivable surface form, one per line.
    Expand {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Find the lemma and form behind surface words.
    Recognize {
        #[arg(required = true)]
        words: Vec<String>,
    },
    /// How much of a frequency list the vocabulary accounts for.
    Coverage {
        #[arg(long)]
        freq: PathBuf,
        #[arg(long, value_enum, default_value_t = CoverageMode::Allforms)]
        mode: CoverageMode,
    },
    /// Vocabulary and corpus statistics.
    Stats {
        #[command(subcommand)]
        which: Stats,
    },
    /// SQL scripts for the Facal table.
    Export {
        #[arg(value_enum)]
        kind: ExportKind,
        /// Emit text columns with CHECK constraints instead of ENUM and
        /// AUTO_INCREMENT.
        #[arg(long)]
        portable: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CoverageMode {
    Lemmas,
    Allforms,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExportKind {
    Ddl,
    Inserts,
}

#[derive(Debug, Subcommand)]
pub enum Stats {
    /// Nouns whose plural ends in -an.
    PluralAn {
        /// Minimum length of the plural beyond the lemma.
        #[arg(long, default_value_t = 2)]
        min_extra: i64,
    },
    /// Histogram of verbal-noun endings.
    VnEndings {
        #[arg(long, default_value_t = 3)]
        suffix_len: usize,
        #[arg(long, default_value_t = 3)]
        min_growth: i64,
    },
    /// Lemmas differing only in case or accents.
    Dedup,
    /// Words occurring once in a frequency list.
    Hapax {
        #[arg(long)]
        freq: PathBuf,
    },
    /// Cumulative token coverage of the top k words.
    Zipf {
        #[arg(long)]
        freq: PathBuf,
        #[arg(long, default_value_t = 15)]
        k: usize,
    },
}

enum Failure {
    /// Exit 1.
    Domain(String),
    /// Exit 2.
    Input(String),
    /// Output closed early, as when piped into `head`; exit quietly.
    Closed,
}

type CmdResult = Result<(), Failure>;

fn io_failure(path: &Path, e: impl std::fmt::Display) -> Failure {
    Failure::Input(format!("{}: {e}", path.display()))
}

struct Ctx<'a> {
    cli: &'a Cli,
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

fn write_out(out: &mut dyn Write, text: &str) -> CmdResult {
    out.write_all(text.as_bytes()).map_err(|e| match e.kind() {
        std::io::ErrorKind::BrokenPipe => Failure::Closed,
        _ => Failure::Input(format!("write failed: {e}")),
    })
}

impl Ctx<'_> {
    fn style(&self) -> TableStyle {
        match self.cli.format {
            FormatArg::Table => TableStyle::Ascii,
            FormatArg::Tsv => TableStyle::Delimited,
        }
    }

    fn print(&mut self, text: &str) -> CmdResult {
        write_out(self.out, text)
    }

    fn warn(&mut self, text: &str) {
        let _ = writeln!(self.err, "warning: {text}");
    }

    fn table(&mut self, columns: &[&str], rows: Vec<Vec<String>>) -> CmdResult {
        let spec = TableRenderSpec {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows,
            style: self.style(),
        };
        let text = spec.render().map_err(|e| Failure::Input(e.to_string()))?;
        self.print(&text)
    }

    fn word(&self, raw: &str) -> Result<GaelicWord, Failure> {
        let w = GaelicWord::new_normalized(raw).map_err(|e| Failure::Input(format!("`{raw}`: {e}")))?;
        Ok(normalize_accents(&w, self.cli.accent_mode.into()))
    }

    fn rules(&self) -> Result<RuleSet, Failure> {
        match &self.cli.rules {
            None => Ok(RuleSet::default_rules()),
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| io_failure(path, e))?;
                parse_rules(&text).map_err(|e| io_failure(path, e))
            }
        }
    }

    fn vocab_path(&self) -> Result<&Path, Failure> {
        self.cli
            .vocab
            .as_deref()
            .ok_or_else(|| Failure::Input("no vocabulary given (use --vocab or FACLAIR_VOCAB)".into()))
    }

    /// Loads the valid entries, warning about the rest.
    fn vocabulary(&mut self) -> Result<Vocabulary, Failure> {
        let path = self.vocab_path()?.to_path_buf();
        let report = load_vocabulary_file(&path).map_err(|e| io_failure(&path, e))?;
        if !report.errors.is_empty() {
            let msg = format!(
                "{}: skipped {} invalid lines (run `validate` for details)",
                path.display(),
                report.errors.len()
            );
            self.warn(&msg);
        }
        Ok(Vocabulary::new(report.entries, self.cli.fold.into()))
    }

    fn frequency_list(&mut self, path: &Path) -> Result<FrequencyList, Failure> {
        let load = load_frequency_list(path, Delimiter::Auto).map_err(|e| io_failure(path, e))?;
        for w in &load.warnings {
            self.warn(&format!("{}: {w}", path.display()));
        }
        for (line, reason) in &load.malformed {
            self.warn(&format!("{}:{line}: {reason}", path.display()));
        }
        let mode: AccentMode = self.cli.accent_mode.into();
        Ok(FrequencyList::from_counts(
            load.list
                .rows()
                .iter()
                .map(|r| (normalize_accents(&r.lexeme, mode), r.count)),
        ))
    }

    /// Entries for `lemma` with the given part of speech.
    fn lookup<'v>(&self, v: &'v Vocabulary, lemma: &str, pos: Option<PartOfSpeech>) -> Result<Vec<&'v Entry>, Failure> {
        let w = self.word(lemma)?;
        let all = v.lookup(&w);
        if all.is_empty() {
            return Err(Failure::Domain(format!("`{lemma}` not found")));
        }
        let hits: Vec<&Entry> = all.iter().copied().filter(|e| pos.is_none_or(|p| e.pos == p)).collect();
        if hits.is_empty() {
            let pos = pos.map_or("", PartOfSpeech::keyword);
            return Err(Failure::Domain(format!("`{lemma}` not found as {pos}")));
        }
        Ok(hits)
    }
}

fn inflect_failure(e: InflectError) -> Failure {
    Failure::Domain(e.to_string())
}

fn cmd_validate(ctx: &mut Ctx, strict: bool) -> CmdResult {
    let path = ctx.vocab_path()?.to_path_buf();
    let report = load_vocabulary_file(&path).map_err(|e| io_failure(&path, e))?;
    let mut syntax = 0;
    let mut violations = 0;
    let mut lines = String::new();
    for (line, e) in &report.errors {
        match e {
            SvfError::ConstraintViolation(vs) => {
                violations += vs.len();
                for v in vs {
                    lines.push_str(&format!("{}:{line}: violation: {v}\n", path.display()));
                }
            }
            other => {
                syntax += 1;
                lines.push_str(&format!("{}:{line}: {other}\n", path.display()));
            }
        }
    }
    ctx.print(&lines)?;
    ctx.print(&format!(
        "{} entries, {syntax} syntax errors, {violations} violations\n",
        report.entries.len()
    ))?;

    let c = completeness(&report.entries);
    let mut rows: Vec<Vec<String>> = PartOfSpeech::ALL
        .iter()
        .map(|p| {
            vec![
                p.keyword().to_string(),
                c.by_pos.get(p).copied().unwrap_or(0).to_string(),
            ]
        })
        .collect();
    rows.push(vec!["IRREG".into(), c.irregular.to_string()]);
    for field in PartField::ALL {
        let (unknown, missing) = c.missing.get(&field).copied().unwrap_or_default();
        rows.push(vec![format!("{} ?", field.column()), unknown.to_string()]);
        rows.push(vec![format!("{} -", field.column()), missing.to_string()]);
    }
    rows.push(vec!["NOUN with ?".into(), c.nouns_with_unknown.to_string()]);
    ctx.table(&["count", "value"], rows)?;

    if syntax > 0 {
        Err(Failure::Input(format!("{syntax} syntax errors")))
    } else if strict && violations > 0 {
        Err(Failure::Domain(format!("{violations} violations")))
    } else {
        Ok(())
    }
}

fn cmd_inflect(ctx: &mut Ctx, lemma: &str, form: &str) -> CmdResult {
    let form: FormCode = form.parse().map_err(|e| Failure::Input(format!("{e}")))?;
    let rules = ctx.rules()?;
    let v = ctx.vocabulary()?;
    let mut lines = String::new();
    for e in ctx.lookup(&v, lemma, Some(form.pos()))? {
        let words = inflect(e, form, &rules).map_err(inflect_failure)?;
        let text = if words.is_empty() {
            crate::export::MISSING_CELL.to_string()
        } else {
            words.iter().map(GaelicWord::as_str).collect::<Vec<_>>().join(" ")
        };
        lines.push_str(&text);
        lines.push('\n');
    }
    ctx.print(&lines)
}

fn cmd_paradigm(ctx: &mut Ctx, lemma: &str, pos: PartOfSpeech) -> CmdResult {
    let rules = ctx.rules()?;
    let v = ctx.vocabulary()?;
    let hits = ctx.lookup(&v, lemma, Some(pos))?;
    let mut text = String::new();
    for (i, e) in hits.iter().enumerate() {
        let paradigm = match pos {
            PartOfSpeech::Noun => decline(e, &rules),
            PartOfSpeech::Verb => conjugate(e, &rules),
            PartOfSpeech::Adj => compare(e, &rules),
        }
        .map_err(inflect_failure)?;
        for (form, cell) in &paradigm {
            if let Err(err) = cell {
                ctx.warn(&format!("{form}: {err}"));
            }
        }
        let title = if hits.len() > 1 {
            format!("{} ({})", e.lemma, i + 1)
        } else {
            String::new()
        };
        let table = render_paradigm(&title, &paradigm_cells(&paradigm), Layout::for_pos(pos), ctx.style())
            .map_err(|e| Failure::Input(e.to_string()))?;
        text.push_str(&table);
    }
    ctx.print(&text)
}

fn cmd_expand(ctx: &mut Ctx, out: Option<&Path>) -> CmdResult {
    let rules = ctx.rules()?;
    let v = ctx.vocabulary()?;
    let index = build_all_forms(&v, &rules);
    if index.failed_cells() > 0 {
        ctx.warn(&format!("{} cells could not be derived", index.failed_cells()));
    }
    let mut text = String::new();
    for form in index.forms() {
        if ctx.cli.format == FormatArg::Tsv {
            for p in index.producers(form).into_iter().flatten() {
                let e = &v.entries()[p.entry];
                let allo = if p.lenited_allomorph { "\tlenited" } else { "" };
                text.push_str(&format!("{form}\t{}\t{}\t{}{allo}\n", e.lemma, e.pos, p.form));
            }
        } else {
            text.push_str(form.as_str());
            text.push('\n');
        }
    }
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| io_failure(path, e)),
        None => ctx.print(&text),
    }
}

fn cmd_recognize(ctx: &mut Ctx, words: &[String]) -> CmdResult {
    let rules = ctx.rules()?;
    let v = ctx.vocabulary()?;
    let index = build_all_forms(&v, &rules);
    let mut rows = Vec::new();
    let mut unknown = Vec::new();
    for raw in words {
        let w = ctx.word(raw)?;
        let hits = index.recognize(&w);
        if hits.is_empty() {
            unknown.push(raw.as_str());
        }
        for a in hits {
            let form = if a.lenited_allomorph {
                format!("{} (lenited)", a.form)
            } else {
                a.form.to_string()
            };
            rows.push(vec![
                raw.clone(),
                a.surface.to_string(),
                a.entry.lemma.to_string(),
                a.entry.pos.to_string(),
                form,
            ]);
        }
    }
    if !rows.is_empty() {
        ctx.table(&["word", "surface", "lemma", "pos", "form"], rows)?;
    }
    if unknown.is_empty() {
        Ok(())
    } else {
        Err(Failure::Domain(format!("not recognized: {}", unknown.join(", "))))
    }
}

fn cmd_coverage(ctx: &mut Ctx, freq: &Path, mode: CoverageMode) -> CmdResult {
    let fl = ctx.frequency_list(freq)?;
    let v = ctx.vocabulary()?;
    let fold = v.fold_policy();
    let report = match mode {
        CoverageMode::Lemmas => coverage(&fl, &v.lemma_set(), fold),
        CoverageMode::Allforms => {
            let rules = ctx.rules()?;
            let index = build_all_forms(&v, &rules);
            coverage(&fl, index.forms(), fold)
        }
    };
    let mut rows = vec![
        vec!["matched types".into(), report.matched_types.to_string()],
        vec!["total types".into(), report.total_types.to_string()],
        vec!["type coverage".into(), format!("{:.4}", report.type_coverage)],
        vec!["matched tokens".into(), report.matched_tokens.to_string()],
        vec!["total tokens".into(), report.total_tokens.to_string()],
        vec!["token coverage".into(), format!("{:.4}", report.token_coverage)],
    ];
    rows.extend(
        report
            .unmatched_top
            .iter()
            .map(|(w, n)| vec![format!("unmatched {w}"), n.to_string()]),
    );
    ctx.table(&["measure", "value"], rows)
}

fn cmd_stats(ctx: &mut Ctx, which: &Stats) -> CmdResult {
    match which {
        Stats::PluralAn { min_extra } => {
            let v = ctx.vocabulary()?;
            let at_least = count_suffix_pattern(v.entries(), PartField::Np, "an", Growth::AtLeast(*min_extra));
            let exactly = count_suffix_pattern(v.entries(), PartField::Np, "an", Growth::Exactly(*min_extra));
            ctx.table(
                &["plural in -an", "nouns"],
                vec![
                    vec![format!("growth >= {min_extra}"), at_least.to_string()],
                    vec![format!("growth = {min_extra}"), exactly.to_string()],
                ],
            )
        }
        Stats::VnEndings { suffix_len, min_growth } => {
            if *suffix_len == 0 {
                return Err(Failure::Input("--suffix-len must be positive".into()));
            }
            let v = ctx.vocabulary()?;
            let h = ending_histogram(v.entries(), PartField::Vn, *suffix_len, *min_growth);
            let rows = h.buckets.iter().map(|(e, n)| vec![e.clone(), n.to_string()]).collect();
            ctx.table(&["ending", "count"], rows)
        }
        Stats::Dedup => {
            let v = ctx.vocabulary()?;
            let d = find_near_duplicates(v.entries());
            let pair = |kind: &str, (i, j): (usize, usize)| {
                vec![
                    kind.to_string(),
                    v.entries()[i].lemma.to_string(),
                    v.entries()[j].lemma.to_string(),
                ]
            };
            let rows = d
                .case_pairs
                .iter()
                .map(|p| pair("case", *p))
                .chain(d.accent_pairs.iter().map(|p| pair("accent", *p)))
                .collect();
            ctx.table(&["kind", "first", "second"], rows)
        }
        Stats::Hapax { freq } => {
            let fl = ctx.frequency_list(freq)?;
            let (count, words) = hapax_report(&fl);
            let mut rows = vec![vec!["hapax".to_string(), count.to_string()]];
            rows.extend(words.iter().map(|w| vec!["word".to_string(), w.to_string()]));
            ctx.table(&["measure", "value"], rows)
        }
        Stats::Zipf { freq, k } => {
            let fl = ctx.frequency_list(freq)?;
            let curve = cumulative_coverage_curve(&fl, *k).map_err(|e| Failure::Input(e.to_string()))?;
            let rows = curve
                .iter()
                .zip(fl.rows())
                .map(|((rank, c), row)| vec![rank.to_string(), row.lexeme.to_string(), format!("{c:.4}")])
                .collect();
            ctx.table(&["rank", "word", "cumulative"], rows)
        }
    }
}

fn cmd_export(ctx: &mut Ctx, kind: ExportKind, portable: bool, out: Option<&Path>) -> CmdResult {
    let text = match kind {
        ExportKind::Ddl => emit_ddl_with(if portable { Dialect::Portable } else { Dialect::MySql }),
        ExportKind::Inserts => {
            let v = ctx.vocabulary()?;
            let script = emit_inserts(v.entries());
            for w in &script.warnings {
                ctx.warn(w);
            }
            script.sql
        }
    };
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| io_failure(path, e)),
        None => ctx.print(&text),
    }
}

fn dispatch(ctx: &mut Ctx) -> CmdResult {
    let cli = ctx.cli;
    match &cli.command {
        Command::Validate { strict } => cmd_validate(ctx, *strict),
        Command::Inflect { lemma, form } => cmd_inflect(ctx, lemma, form),
        Command::Decline { lemma } => cmd_paradigm(ctx, lemma, PartOfSpeech::Noun),
        Command::Conjugate { lemma } => cmd_paradigm(ctx, lemma, PartOfSpeech::Verb),
        Command::Compare { lemma } => cmd_paradigm(ctx, lemma, PartOfSpeech::Adj),
        Command::Expand { out } => cmd_expand(ctx, out.as_deref()),
        Command::Recognize { words } => cmd_recognize(ctx, words),
        Command::Coverage { freq, mode } => cmd_coverage(ctx, freq, *mode),
        Command::Stats { which } => cmd_stats(ctx, which),
        Command::Export { kind, portable, out } => cmd_export(ctx, *kind, *portable, out.as_deref()),
    }
}

/// Runs the command line `args` (program name first) and returns the exit
/// status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let mut ctx = Ctx { cli: &cli, out, err };
    let result = dispatch(&mut ctx);
    let _ = ctx.out.flush();
    match result {
        Ok(()) | Err(Failure::Closed) => 0,
        Err(Failure::Domain(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
        Err(Failure::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
