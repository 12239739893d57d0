//! Declarative inflection rules.
//!
//! A rule file is a sequence of rules. Each rule opens with a matcher line
//! and continues with `TARGET: expr` assignments separated by `;` or
//! newlines:
//!
//! ```text
//! * NOUN & F
//! NS: NS; NP: NP; GS: GS; GP: H/NP
//! DS: NS; DP: NP; VS: H/GS; VP: H/NP
//!
//! * VERB
//! FUT_PASS: LEMMA+"ar|ear" | LEMMA+"tar|tear"
//! RELFUT: DH/LEMMA+"as|eas"
//! ```
//!
//! Matcher predicates are `NOUN`, `VERB`, `ADJ`, `M`, `F`, `IRREG` and
//! `LEMMA="word"`, joined with `&`. An expression is a source (`LEMMA`, `NS`
//! as an alias for the lemma, `NP`, `GS`, `VN`, `CP`), an optional harmony
//! suffix `+"broad|slender"`, and any number of transform prefixes `H/`
//! (lenite), `DH/` (glottal past) and `SL/` (slenderize). Prefixes apply
//! right to left, after the suffix. Alternatives for one cell are separated
//! by `|`. `#` starts a comment.
//!
//! For a given entry and form, the first rule (in file order) whose matcher
//! accepts the entry and which defines the form wins. Irregular entries are
//! only ever matched by rules carrying a `LEMMA=` predicate.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::orthography::{
    attach_suffix, glottal_past_prefix, lenite, slenderize, GaelicWord, OrthographyError, SuffixAlternation,
};
use crate::svf::{Entry, Gender, PartOfSpeech, PartValue};

/// Default rule file, reproducing the noun and verb paradigms of the
/// reference tables.
pub const DEFAULT_RULES: &str = include_str!("../rules/rules.grl");

macro_rules! form_codes {
    ($($variant:ident => $name:literal, $pos:ident;)*) => {
        /// A grammatical cell of a paradigm.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum FormCode {
            $($variant,)*
        }

        impl FormCode {
            pub const ALL: &'static [FormCode] = &[$(FormCode::$variant,)*];

            pub fn name(self) -> &'static str {
                match self {
                    $(FormCode::$variant => $name,)*
                }
            }

            pub fn pos(self) -> PartOfSpeech {
                match self {
                    $(FormCode::$variant => PartOfSpeech::$pos,)*
                }
            }
        }
    };
}

form_codes! {
    Ns => "NS", Noun;
    Np => "NP", Noun;
    Gs => "GS", Noun;
    Gp => "GP", Noun;
    Ds => "DS", Noun;
    Dp => "DP", Noun;
    Vs => "VS", Noun;
    Vp => "VP", Noun;
    Vn => "VN", Verb;
    PastP => "PASTP", Verb;
    PastInd => "PAST_IND", Verb;
    PastDep => "PAST_DEP", Verb;
    FutInd => "FUT_IND", Verb;
    FutDep => "FUT_DEP", Verb;
    RelFut => "RELFUT", Verb;
    Cond1sInd => "COND1S_IND", Verb;
    Cond1pInd => "COND1P_IND", Verb;
    Cond23Ind => "COND23_IND", Verb;
    Cond1sDep => "COND1S_DEP", Verb;
    Cond1pDep => "COND1P_DEP", Verb;
    Cond23Dep => "COND23_DEP", Verb;
    PastPass => "PAST_PASS", Verb;
    FutPass => "FUT_PASS", Verb;
    CondPass => "COND_PASS", Verb;
    RelFutPass => "RELFUT_PASS", Verb;
    ImpPass => "IMP_PASS", Verb;
    Imp1s => "IMP1S", Verb;
    Imp2s => "IMP2S", Verb;
    Imp3s => "IMP3S", Verb;
    Imp1p => "IMP1P", Verb;
    Imp2p => "IMP2P", Verb;
    Imp3p => "IMP3P", Verb;
    PosAdj => "POS_ADJ", Adj;
    Cp => "CP", Adj;
    PosLenited => "POS_LENITED", Adj;
}

impl FormCode {
    pub fn for_pos(pos: PartOfSpeech) -> impl Iterator<Item = FormCode> {
        Self::ALL.iter().copied().filter(move |f| f.pos() == pos)
    }

    /// The cell that holds the citation form.
    pub fn lemma_cell(pos: PartOfSpeech) -> FormCode {
        match pos {
            PartOfSpeech::Noun => FormCode::Ns,
            PartOfSpeech::Verb => FormCode::Imp2s,
            PartOfSpeech::Adj => FormCode::PosAdj,
        }
    }
}

impl fmt::Display for FormCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown form code `{0}`")]
pub struct UnknownFormCode(pub String);

impl FromStr for FormCode {
    type Err = UnknownFormCode;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .iter()
            .copied()
            .find(|f| f.name() == s)
            .ok_or_else(|| UnknownFormCode(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Transform {
    Lenite,
    GlottalPast,
    Slenderize,
}

impl Transform {
    pub fn token(self) -> &'static str {
        match self {
            Transform::Lenite => "H",
            Transform::GlottalPast => "DH",
            Transform::Slenderize => "SL",
        }
    }

    fn from_token(s: &str) -> Option<Self> {
        match s {
            "H" | "h" => Some(Transform::Lenite),
            "DH" | "dh" => Some(Transform::GlottalPast),
            "SL" | "sl" => Some(Transform::Slenderize),
            _ => None,
        }
    }

    pub fn apply(self, w: &GaelicWord) -> Result<GaelicWord, OrthographyError> {
        match self {
            Transform::Lenite => Ok(lenite(w)),
            Transform::GlottalPast => Ok(glottal_past_prefix(w)),
            Transform::Slenderize => slenderize(w),
        }
    }
}

/// Where a derivation starts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Source {
    Lemma,
    Np,
    Gs,
    Vn,
    Cp,
}

impl Source {
    fn from_token(s: &str) -> Option<Self> {
        match s {
            "LEMMA" | "NS" => Some(Source::Lemma),
            "NP" => Some(Source::Np),
            "GS" => Some(Source::Gs),
            "VN" => Some(Source::Vn),
            "CP" => Some(Source::Cp),
            _ => None,
        }
    }

    pub fn token(self) -> &'static str {
        match self {
            Source::Lemma => "LEMMA",
            Source::Np => "NP",
            Source::Gs => "GS",
            Source::Vn => "VN",
            Source::Cp => "CP",
        }
    }

    fn available_for(self, pos: PartOfSpeech) -> bool {
        match self {
            Source::Lemma => true,
            Source::Np | Source::Gs => pos == PartOfSpeech::Noun,
            Source::Vn => pos == PartOfSpeech::Verb,
            Source::Cp => pos == PartOfSpeech::Adj,
        }
    }

    fn resolve(self, e: &Entry) -> Option<PartValue> {
        match self {
            Source::Lemma => Some(PartValue::Present(e.lemma.clone())),
            Source::Np => e.np.clone(),
            Source::Gs => e.gs.clone(),
            Source::Vn => e.vn.clone(),
            Source::Cp => e.cp.clone(),
        }
    }
}

/// One way of producing a surface form: `transforms(source + suffix)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Expr {
    /// Outermost first, as written.
    pub transforms: Vec<Transform>,
    pub source: Source,
    pub suffix: Option<SuffixAlternation>,
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in &self.transforms {
            write!(f, "{}/", t.token())?;
        }
        f.write_str(self.source.token())?;
        if let Some(s) = &self.suffix {
            write!(f, "+\"{s}\"")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    pub target: FormCode,
    /// Variant spellings of the cell, in output order.
    pub alternatives: Vec<Expr>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Matcher {
    pub pos: Option<PartOfSpeech>,
    pub gender: Option<Gender>,
    pub irregular: Option<bool>,
    pub lemma_is: Option<GaelicWord>,
}

impl Matcher {
    pub fn matches(&self, e: &Entry) -> bool {
        // irregular entries need a rule written for them by name
        if e.irregular && self.lemma_is.is_none() {
            return false;
        }
        self.pos.is_none_or(|p| p == e.pos)
            && self.gender.is_none_or(|g| Some(g) == e.gender)
            && self.irregular.is_none_or(|i| i == e.irregular)
            && self.lemma_is.as_ref().is_none_or(|l| *l == e.lemma)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub matcher: Matcher,
    pub derivations: BTreeMap<FormCode, Derivation>,
    /// Line of the `*` header.
    pub line: usize,
}

impl Rule {
    pub fn pos(&self) -> PartOfSpeech {
        self.matcher.pos.expect("parsed rules always carry a part of speech")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RuleSet {
    pub rules: Vec<Rule>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RuleParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: unknown form code `{code}`")]
    UnknownFormCode { line: usize, code: String },
    #[error("line {line}: transform with no source in `{expr}`")]
    TransformOnEmptySource { line: usize, expr: String },
    #[error("line {line}: {code} is not a {pos} form")]
    TargetNotForPos {
        line: usize,
        code: FormCode,
        pos: PartOfSpeech,
    },
    #[error("line {line}: source {part} is not available to {pos} entries")]
    SourceNotForPos {
        line: usize,
        part: &'static str,
        pos: PartOfSpeech,
    },
    #[error("line {line}: {code} defined twice in one rule")]
    DuplicateTarget { line: usize, code: FormCode },
}

fn syntax(line: usize, message: impl Into<String>) -> RuleParseError {
    RuleParseError::Syntax {
        line,
        message: message.into(),
    }
}

/// Drops a `#` comment that is not inside double quotes.
fn strip_comment(line: &str) -> &str {
    let mut quoted = false;
    for (i, c) in line.char_indices() {
        match c {
            '"' => quoted = !quoted,
            '#' if !quoted => return &line[..i],
            _ => {}
        }
    }
    line
}

/// Splits on `sep` outside double quotes.
fn split_unquoted(s: &str, sep: char) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut quoted = false;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        if c == '"' {
            quoted = !quoted;
        } else if c == sep && !quoted {
            parts.push(&s[start..i]);
            start = i + c.len_utf8();
        }
    }
    parts.push(&s[start..]);
    parts
}

fn parse_matcher(line: usize, body: &str) -> Result<Matcher, RuleParseError> {
    let mut m = Matcher::default();
    for pred in body.split('&').map(str::trim) {
        if let Some(pos) = PartOfSpeech::from_keyword(pred) {
            if m.pos.replace(pos).is_some() {
                return Err(syntax(line, "more than one part of speech in matcher"));
            }
        } else if let Some(g) = Gender::from_keyword(pred) {
            if m.gender.replace(g).is_some() {
                return Err(syntax(line, "more than one gender in matcher"));
            }
        } else if pred == "IRREG" {
            m.irregular = Some(true);
        } else if let Some(rest) = pred.strip_prefix("LEMMA") {
            let quoted = rest
                .trim_start()
                .strip_prefix('=')
                .map(str::trim)
                .and_then(|q| q.strip_prefix('"'))
                .and_then(|q| q.strip_suffix('"'))
                .ok_or_else(|| syntax(line, format!("malformed lemma predicate `{pred}`")))?;
            let word = GaelicWord::new_normalized(quoted).map_err(|e| syntax(line, e.to_string()))?;
            m.lemma_is = Some(word);
        } else if pred.is_empty() {
            return Err(syntax(line, "empty predicate"));
        } else {
            return Err(syntax(line, format!("unknown predicate `{pred}`")));
        }
    }
    if m.pos.is_none() {
        return Err(syntax(line, "matcher needs NOUN, VERB or ADJ"));
    }
    if m.gender.is_some() && m.pos != Some(PartOfSpeech::Noun) {
        return Err(syntax(line, "gender only applies to nouns"));
    }
    Ok(m)
}

fn parse_expr(line: usize, pos: PartOfSpeech, text: &str) -> Result<Expr, RuleParseError> {
    let text = text.trim();
    let (head, suffix) = match split_unquoted(text, '+').as_slice() {
        [head] => (*head, None),
        [head, suffix] => (*head, Some(suffix.trim())),
        _ => return Err(syntax(line, format!("more than one suffix in `{text}`"))),
    };
    let mut pieces: Vec<&str> = head.split('/').map(str::trim).collect();
    let source_tok = pieces.pop().unwrap_or_default();
    let transforms = pieces
        .iter()
        .map(|t| Transform::from_token(t).ok_or_else(|| syntax(line, format!("unknown transform `{t}`"))))
        .collect::<Result<Vec<_>, _>>()?;
    if source_tok.is_empty() {
        return Err(if transforms.is_empty() {
            syntax(line, "empty expression")
        } else {
            RuleParseError::TransformOnEmptySource {
                line,
                expr: text.to_string(),
            }
        });
    }
    let source =
        Source::from_token(source_tok).ok_or_else(|| syntax(line, format!("unknown source `{source_tok}`")))?;
    if !source.available_for(pos) {
        return Err(RuleParseError::SourceNotForPos {
            line,
            part: source.token(),
            pos,
        });
    }
    let suffix = suffix
        .map(|s| {
            let inner = s
                .strip_prefix('"')
                .and_then(|s| s.strip_suffix('"'))
                .ok_or_else(|| syntax(line, format!("suffix must be quoted: `{s}`")))?;
            let (broad, slender) = inner
                .split_once('|')
                .ok_or_else(|| syntax(line, format!("suffix needs broad|slender forms: `{s}`")))?;
            SuffixAlternation::new(broad, slender).map_err(|e| syntax(line, e.to_string()))
        })
        .transpose()?;
    Ok(Expr {
        transforms,
        source,
        suffix,
    })
}

/// Parses rule-file text.
pub fn parse_rules(text: &str) -> Result<RuleSet, RuleParseError> {
    let mut rules: Vec<Rule> = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let content = strip_comment(raw).trim();
        if content.is_empty() {
            continue;
        }
        if let Some(body) = content.strip_prefix('*') {
            rules.push(Rule {
                matcher: parse_matcher(line, body)?,
                derivations: BTreeMap::new(),
                line,
            });
            continue;
        }
        let rule = rules
            .last_mut()
            .ok_or_else(|| syntax(line, "assignment before the first `*` matcher line"))?;
        let pos = rule.pos();
        for assignment in split_unquoted(content, ';') {
            let assignment = assignment.trim();
            if assignment.is_empty() {
                continue;
            }
            let (target, expr) = assignment
                .split_once(':')
                .ok_or_else(|| syntax(line, format!("expected `TARGET: expr`, found `{assignment}`")))?;
            let target = target.trim();
            let code = FormCode::from_str(target).map_err(|_| RuleParseError::UnknownFormCode {
                line,
                code: target.to_string(),
            })?;
            if code.pos() != pos {
                return Err(RuleParseError::TargetNotForPos { line, code, pos });
            }
            let alternatives = split_unquoted(expr, '|')
                .into_iter()
                .map(|alt| parse_expr(line, pos, alt))
                .collect::<Result<Vec<_>, _>>()?;
            if rule.derivations.contains_key(&code) {
                return Err(RuleParseError::DuplicateTarget { line, code });
            }
            rule.derivations.insert(
                code,
                Derivation {
                    target: code,
                    alternatives,
                },
            );
        }
    }
    Ok(RuleSet { rules })
}

impl FromStr for RuleSet {
    type Err = RuleParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_rules(s)
    }
}

impl RuleSet {
    /// The shipped rule file.
    pub fn default_rules() -> RuleSet {
        parse_rules(DEFAULT_RULES).expect("bundled rule file parses")
    }

    /// First rule that matches `e` and defines `form`.
    pub fn find(&self, e: &Entry, form: FormCode) -> Option<&Rule> {
        self.rules
            .iter()
            .find(|r| r.matcher.matches(e) && r.derivations.contains_key(&form))
    }

    fn covers(&self, e: &Entry) -> bool {
        self.rules.iter().any(|r| r.matcher.matches(e))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InflectError {
    #[error("{form} is not a {pos} form")]
    WrongPartOfSpeech { form: FormCode, pos: PartOfSpeech },
    #[error("no rule defines {form} for `{lemma}`")]
    NoRuleMatches { lemma: String, form: FormCode },
    #[error("`{lemma}` is missing principal part {part}")]
    MissingPrincipalPart { lemma: String, part: &'static str },
    #[error("`{0}` is irregular and no rule names it")]
    IrregularUnsupported(String),
    #[error(transparent)]
    Transform(#[from] OrthographyError),
}

fn evaluate(e: &Entry, expr: &Expr) -> Result<Option<GaelicWord>, InflectError> {
    let word = match expr.source.resolve(e) {
        Some(PartValue::Present(w)) => w,
        Some(PartValue::NonExistent) => return Ok(None),
        Some(PartValue::Unknown) | None => {
            return Err(InflectError::MissingPrincipalPart {
                lemma: e.lemma.to_string(),
                part: expr.source.token(),
            })
        }
    };
    let mut word = match &expr.suffix {
        Some(alt) => attach_suffix(&word, alt)?,
        None => word,
    };
    for t in expr.transforms.iter().rev() {
        word = t.apply(&word)?;
    }
    Ok(Some(word))
}

/// All surface variants of one cell.
///
/// An empty list means the cell's source is marked non-existent (a noun with
/// no plural, for instance).
pub fn inflect(e: &Entry, form: FormCode, rules: &RuleSet) -> Result<Vec<GaelicWord>, InflectError> {
    if form.pos() != e.pos {
        return Err(InflectError::WrongPartOfSpeech { form, pos: e.pos });
    }
    let Some(rule) = rules.find(e, form) else {
        if e.irregular {
            return Err(InflectError::IrregularUnsupported(e.lemma.to_string()));
        }
        return Err(InflectError::NoRuleMatches {
            lemma: e.lemma.to_string(),
            form,
        });
    };
    let mut out: Vec<GaelicWord> = Vec::new();
    for expr in &rule.derivations[&form].alternatives {
        match evaluate(e, expr)? {
            Some(w) if !out.contains(&w) => out.push(w),
            Some(_) => {}
            None => return Ok(Vec::new()),
        }
    }
    Ok(out)
}

/// Every cell of an entry's paradigm, each with its own outcome.
pub type Paradigm = BTreeMap<FormCode, Result<Vec<GaelicWord>, InflectError>>;

fn paradigm(e: &Entry, rules: &RuleSet, pos: PartOfSpeech) -> Result<Paradigm, InflectError> {
    if let Some(form) = FormCode::for_pos(pos).next().filter(|_| e.pos != pos) {
        return Err(InflectError::WrongPartOfSpeech { form, pos: e.pos });
    }
    if e.irregular && !rules.covers(e) {
        return Err(InflectError::IrregularUnsupported(e.lemma.to_string()));
    }
    Ok(FormCode::for_pos(pos).map(|f| (f, inflect(e, f, rules))).collect())
}

/// The eight case/number cells of a noun.
pub fn decline(e: &Entry, rules: &RuleSet) -> Result<Paradigm, InflectError> {
    paradigm(e, rules, PartOfSpeech::Noun)
}

/// Every verb cell.
pub fn conjugate(e: &Entry, rules: &RuleSet) -> Result<Paradigm, InflectError> {
    paradigm(e, rules, PartOfSpeech::Verb)
}

/// Positive, comparative and lenited positive of an adjective.
pub fn compare(e: &Entry, rules: &RuleSet) -> Result<Paradigm, InflectError> {
    paradigm(e, rules, PartOfSpeech::Adj)
}

/// One way a surface form arises from an entry.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SurfaceAnalysis {
    pub form: FormCode,
    /// Set for the lenited allomorph of a noun's citation form (`mo shaoghal`),
    /// which is not itself a paradigm cell.
    pub lenited_allomorph: bool,
}

/// Every surface form of `e` with the cells that produce it.
///
/// Best effort: cells that fail to derive are skipped and counted in the
/// second return value.
pub fn surface_analyses(e: &Entry, rules: &RuleSet) -> (BTreeMap<GaelicWord, BTreeSet<SurfaceAnalysis>>, usize) {
    let mut out: BTreeMap<GaelicWord, BTreeSet<SurfaceAnalysis>> = BTreeMap::new();
    let mut failures = 0;
    let lemma_cell = FormCode::lemma_cell(e.pos);
    out.entry(e.lemma.clone()).or_default().insert(SurfaceAnalysis {
        form: lemma_cell,
        lenited_allomorph: false,
    });
    if e.pos == PartOfSpeech::Noun {
        let lenited = lenite(&e.lemma);
        if lenited != e.lemma {
            out.entry(lenited).or_default().insert(SurfaceAnalysis {
                form: lemma_cell,
                lenited_allomorph: true,
            });
        }
    }
    for form in FormCode::for_pos(e.pos) {
        match inflect(e, form, rules) {
            Ok(words) => {
                for w in words {
                    out.entry(w).or_default().insert(SurfaceAnalysis {
                        form,
                        lenited_allomorph: false,
                    });
                }
            }
            Err(_) => failures += 1,
        }
    }
    (out, failures)
}

/// The lemma, every derivable inflected form, and for nouns the lenited
/// citation form.
pub fn all_surface_forms(e: &Entry, rules: &RuleSet) -> BTreeSet<GaelicWord> {
    surface_analyses(e, rules).0.into_keys().collect()
}
