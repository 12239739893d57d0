//! The standardized vocabulary format: one principal-parts record per line.
//!
//! ```text
//! NOUN M "bàta" "bàtaichean" "bàta"
//! VERB "òl" "òl"
//! ADJ "mòr" "motha"
//! NOUN M "airgead" - "airgid"
//! VERB "rach" "dol" IRREG
//! ```
//!
//! Word fields are double-quoted; the markers `?` (unknown) and `-`
//! (non-existent) and all keywords are bare. Quoted markers (`"?"`) are
//! accepted on input and written back bare. Tokens are separated by single
//! spaces. Blank lines and lines starting with `#` are ignored by the loaders.

use std::fmt;
use std::path::Path;

use thiserror::Error;

use crate::orthography::{GaelicWord, OrthographyError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PartOfSpeech {
    Noun,
    Verb,
    Adj,
}

impl PartOfSpeech {
    pub const ALL: [PartOfSpeech; 3] = [PartOfSpeech::Noun, PartOfSpeech::Verb, PartOfSpeech::Adj];

    pub fn keyword(self) -> &'static str {
        match self {
            PartOfSpeech::Noun => "NOUN",
            PartOfSpeech::Verb => "VERB",
            PartOfSpeech::Adj => "ADJ",
        }
    }

    pub fn from_keyword(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|p| p.keyword() == s)
    }
}

impl fmt::Display for PartOfSpeech {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gender {
    M,
    F,
}

impl Gender {
    pub fn keyword(self) -> &'static str {
        match self {
            Gender::M => "M",
            Gender::F => "F",
        }
    }

    pub fn from_keyword(s: &str) -> Option<Self> {
        match s {
            "M" => Some(Gender::M),
            "F" => Some(Gender::F),
            _ => None,
        }
    }
}

impl fmt::Display for Gender {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

/// A principal part as recorded in the source data.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PartValue {
    Present(GaelicWord),
    /// `?`: the form exists but was not found.
    Unknown,
    /// `-`: the form does not exist (e.g. the plural of a mass noun).
    NonExistent,
}

impl PartValue {
    pub fn word(&self) -> Option<&GaelicWord> {
        match self {
            PartValue::Present(w) => Some(w),
            _ => None,
        }
    }
}

impl fmt::Display for PartValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PartValue::Present(w) => write!(f, "\"{w}\""),
            PartValue::Unknown => f.write_str("?"),
            PartValue::NonExistent => f.write_str("-"),
        }
    }
}

/// Selects one principal-part column of an [`Entry`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PartField {
    Np,
    Gs,
    Vn,
    Cp,
}

impl PartField {
    pub const ALL: [PartField; 4] = [PartField::Np, PartField::Gs, PartField::Vn, PartField::Cp];

    pub fn column(self) -> &'static str {
        match self {
            PartField::Np => "NP",
            PartField::Gs => "GS",
            PartField::Vn => "VN",
            PartField::Cp => "CP",
        }
    }

    /// The part of speech this column belongs to.
    pub fn owner(self) -> PartOfSpeech {
        match self {
            PartField::Np | PartField::Gs => PartOfSpeech::Noun,
            PartField::Vn => PartOfSpeech::Verb,
            PartField::Cp => PartOfSpeech::Adj,
        }
    }
}

/// One headword with its principal parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Entry {
    pub lemma: GaelicWord,
    pub pos: PartOfSpeech,
    pub irregular: bool,
    pub gender: Option<Gender>,
    /// Nominative plural.
    pub np: Option<PartValue>,
    /// Genitive singular.
    pub gs: Option<PartValue>,
    /// Verbal noun.
    pub vn: Option<PartValue>,
    /// Comparative.
    pub cp: Option<PartValue>,
}

impl Entry {
    pub fn noun(lemma: GaelicWord, gender: Gender, np: PartValue, gs: PartValue) -> Self {
        Entry {
            lemma,
            pos: PartOfSpeech::Noun,
            irregular: false,
            gender: Some(gender),
            np: Some(np),
            gs: Some(gs),
            vn: None,
            cp: None,
        }
    }

    pub fn verb(lemma: GaelicWord, vn: PartValue) -> Self {
        Entry {
            lemma,
            pos: PartOfSpeech::Verb,
            irregular: false,
            gender: None,
            np: None,
            gs: None,
            vn: Some(vn),
            cp: None,
        }
    }

    pub fn adjective(lemma: GaelicWord, cp: PartValue) -> Self {
        Entry {
            lemma,
            pos: PartOfSpeech::Adj,
            irregular: false,
            gender: None,
            np: None,
            gs: None,
            vn: None,
            cp: Some(cp),
        }
    }

    pub fn with_irregular(mut self, irregular: bool) -> Self {
        self.irregular = irregular;
        self
    }

    pub fn part(&self, field: PartField) -> Option<&PartValue> {
        match field {
            PartField::Np => self.np.as_ref(),
            PartField::Gs => self.gs.as_ref(),
            PartField::Vn => self.vn.as_ref(),
            PartField::Cp => self.cp.as_ref(),
        }
    }

    pub fn is_valid(&self) -> bool {
        validate(self).is_empty()
    }
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serialize_entry(self))
    }
}

/// Any field an integrity violation can name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Gender,
    Np,
    Gs,
    Vn,
    Cp,
}

impl From<PartField> for Field {
    fn from(p: PartField) -> Self {
        match p {
            PartField::Np => Field::Np,
            PartField::Gs => Field::Gs,
            PartField::Vn => Field::Vn,
            PartField::Cp => Field::Cp,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Field::Gender => "GR",
            Field::Np => "NP",
            Field::Gs => "GS",
            Field::Vn => "VN",
            Field::Cp => "CP",
        })
    }
}

/// The clause of the integrity constraint that a violation breaks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Clause {
    NounOnly,
    VerbOnly,
    AdjOnly,
    MandatoryForNoun,
    MandatoryForVerb,
    MandatoryForAdj,
}

impl Clause {
    /// SQL text of the conjunct, or a short description for mandatory fields.
    pub fn text(self) -> &'static str {
        match self {
            Clause::NounOnly => "(GR IS NULL AND NP IS NULL AND GS IS NULL) OR POS = 'NOUN'",
            Clause::VerbOnly => "VN IS NULL OR POS = 'VERB'",
            Clause::AdjOnly => "CP IS NULL OR POS = 'ADJ'",
            Clause::MandatoryForNoun => "mandatory for NOUN",
            Clause::MandatoryForVerb => "mandatory for VERB",
            Clause::MandatoryForAdj => "mandatory for ADJ",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Violation {
    pub field: Field,
    pub clause: Clause,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.field, self.clause.text())
    }
}

/// Checks the semantic-integrity constraint
///
/// ```text
/// ((GR IS NULL AND NP IS NULL AND GS IS NULL) OR POS = 'NOUN')
///   AND (VN IS NULL OR POS = 'VERB')
///   AND (CP IS NULL OR POS = 'ADJ')
/// ```
///
/// plus presence of the principal parts each part of speech requires
/// (gender, NP and GS for nouns; VN for verbs; CP for adjectives).
pub fn validate(e: &Entry) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut check = |present: bool, owner: PartOfSpeech, field: Field, foreign: Clause, missing: Clause| {
        if present && e.pos != owner {
            out.push(Violation { field, clause: foreign });
        } else if !present && e.pos == owner {
            out.push(Violation { field, clause: missing });
        }
    };
    use Clause::*;
    use PartOfSpeech::*;
    check(e.gender.is_some(), Noun, Field::Gender, NounOnly, MandatoryForNoun);
    check(e.np.is_some(), Noun, Field::Np, NounOnly, MandatoryForNoun);
    check(e.gs.is_some(), Noun, Field::Gs, NounOnly, MandatoryForNoun);
    check(e.vn.is_some(), Verb, Field::Vn, VerbOnly, MandatoryForVerb);
    check(e.cp.is_some(), Adj, Field::Cp, AdjOnly, MandatoryForAdj);
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SvfError {
    #[error("syntax error at column {column}: {message}")]
    Syntax { column: usize, message: String },
    #[error("invalid word: {0}")]
    Word(#[from] OrthographyError),
    #[error("constraint violation: {}", join_violations(.0))]
    ConstraintViolation(Vec<Violation>),
}

fn join_violations(v: &[Violation]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token<'a> {
    Bare(&'a str),
    Quoted(&'a str),
}

fn syntax(column: usize, message: impl Into<String>) -> SvfError {
    SvfError::Syntax {
        column,
        message: message.into(),
    }
}

/// Splits on single spaces, honouring double quotes. Columns are 1-based
/// character offsets.
fn tokenize(line: &str) -> Result<Vec<(usize, Token<'_>)>, SvfError> {
    let mut tokens = Vec::new();
    let bytes = line.as_bytes();
    let col = |byte: usize| line[..byte].chars().count() + 1;
    let mut i = 0;
    while i < bytes.len() {
        let start = i;
        if bytes[i] == b'"' {
            let close = line[i + 1..]
                .find('"')
                .map(|p| i + 1 + p)
                .ok_or_else(|| syntax(col(start), "unterminated quote"))?;
            tokens.push((col(start), Token::Quoted(&line[i + 1..close])));
            i = close + 1;
        } else {
            let end = line[i..].find([' ', '"']).map_or(line.len(), |p| i + p);
            if end == i {
                return Err(syntax(col(start), "empty token"));
            }
            if bytes.get(end) == Some(&b'"') {
                return Err(syntax(col(end), "quote inside bare token"));
            }
            tokens.push((col(start), Token::Bare(&line[i..end])));
            i = end;
        }
        match bytes.get(i) {
            None => break,
            Some(b' ') if i + 1 < bytes.len() => i += 1,
            Some(b' ') => return Err(syntax(col(i), "trailing space")),
            Some(_) => return Err(syntax(col(i), "expected a space between tokens")),
        }
    }
    Ok(tokens)
}

fn part_value(column: usize, token: &Token<'_>) -> Result<PartValue, SvfError> {
    match token {
        Token::Bare("?") | Token::Quoted("?") => Ok(PartValue::Unknown),
        Token::Bare("-") | Token::Quoted("-") => Ok(PartValue::NonExistent),
        Token::Quoted(text) => Ok(PartValue::Present(GaelicWord::new_normalized(text)?)),
        Token::Bare(other) => Err(syntax(
            column,
            format!("expected a quoted word, `?` or `-`, found `{other}`"),
        )),
    }
}

/// Parses one SVF record.
///
/// Structural problems are [`SvfError::Syntax`]; a well-formed line whose
/// fields are illegal for its part of speech (say, a gendered verb) is
/// [`SvfError::ConstraintViolation`].
pub fn parse_svf_line(line: &str) -> Result<Entry, SvfError> {
    if line.is_empty() {
        return Err(syntax(1, "empty line"));
    }
    let tokens = tokenize(line)?;
    let mut it = tokens.iter().peekable();

    let pos = match it.next() {
        Some((_, Token::Bare(kw))) if PartOfSpeech::from_keyword(kw).is_some() => {
            PartOfSpeech::from_keyword(kw).unwrap()
        }
        Some((c, _)) => return Err(syntax(*c, "expected NOUN, VERB or ADJ")),
        None => return Err(syntax(1, "empty line")),
    };

    let gender = match it.peek() {
        Some((c, Token::Bare(kw))) if kw.chars().all(|ch| ch.is_ascii_uppercase()) => {
            let g = Gender::from_keyword(kw).ok_or_else(|| syntax(*c, format!("unknown gender `{kw}`")))?;
            it.next();
            Some(g)
        }
        _ => None,
    };

    let lemma = match it.next() {
        Some((_, Token::Quoted(text))) => GaelicWord::new_normalized(text)?,
        Some((c, _)) => return Err(syntax(*c, "expected quoted lemma")),
        None => return Err(syntax(line.chars().count() + 1, "missing lemma")),
    };

    let mut parts = Vec::new();
    let mut irregular = false;
    for (c, tok) in it {
        if irregular {
            return Err(syntax(*c, "unexpected token after IRREG"));
        }
        match tok {
            Token::Bare("IRREG") => irregular = true,
            _ => parts.push(part_value(*c, tok)?),
        }
    }

    let expected = match pos {
        PartOfSpeech::Noun => 2,
        _ => 1,
    };
    if parts.len() != expected {
        return Err(syntax(
            1,
            format!(
                "{pos} takes {expected} principal part(s) after the lemma, found {}",
                parts.len()
            ),
        ));
    }

    let mut parts = parts.into_iter();
    let mut entry = Entry {
        lemma,
        pos,
        irregular,
        gender,
        np: None,
        gs: None,
        vn: None,
        cp: None,
    };
    match pos {
        PartOfSpeech::Noun => {
            entry.np = parts.next();
            entry.gs = parts.next();
        }
        PartOfSpeech::Verb => entry.vn = parts.next(),
        PartOfSpeech::Adj => entry.cp = parts.next(),
    }

    let violations = validate(&entry);
    if !violations.is_empty() {
        return Err(SvfError::ConstraintViolation(violations));
    }
    Ok(entry)
}

/// Canonical one-line form of `e`.
pub fn serialize_entry(e: &Entry) -> String {
    let mut out = String::from(e.pos.keyword());
    if let Some(g) = e.gender {
        out.push(' ');
        out.push_str(g.keyword());
    }
    out.push_str(&format!(" \"{}\"", e.lemma));
    for part in [&e.np, &e.gs, &e.vn, &e.cp].into_iter().flatten() {
        out.push(' ');
        out.push_str(&part.to_string());
    }
    if e.irregular {
        out.push_str(" IRREG");
    }
    out
}

/// Result of loading a vocabulary: entries and positioned per-line errors.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct LoadReport {
    pub entries: Vec<Entry>,
    /// 1-based line number and error.
    pub errors: Vec<(usize, SvfError)>,
    /// Blank and comment lines.
    pub skipped: usize,
}

impl LoadReport {
    pub fn total_lines(&self) -> usize {
        self.entries.len() + self.errors.len() + self.skipped
    }

    pub fn syntax_errors(&self) -> impl Iterator<Item = &(usize, SvfError)> {
        self.errors
            .iter()
            .filter(|(_, e)| !matches!(e, SvfError::ConstraintViolation(_)))
    }
}

/// Parses vocabulary text line by line without stopping at bad lines.
pub fn parse_vocabulary(text: &str) -> LoadReport {
    let mut report = LoadReport::default();
    for (n, line) in text.lines().enumerate() {
        if line.trim().is_empty() || line.starts_with('#') {
            report.skipped += 1;
            continue;
        }
        match parse_svf_line(line) {
            Ok(e) => report.entries.push(e),
            Err(err) => report.errors.push((n + 1, err)),
        }
    }
    report
}

pub fn load_vocabulary_file(path: impl AsRef<Path>) -> std::io::Result<LoadReport> {
    let text = std::fs::read_to_string(path)?;
    Ok(parse_vocabulary(&text))
}
