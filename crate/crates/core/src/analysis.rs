//! Corpus and vocabulary statistics: frequency lists, coverage, Zipf curves,
//! ending histograms and near-duplicate detection.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::io::Read;
use std::path::Path;

use thiserror::Error;

use crate::lexicon::FoldPolicy;
use crate::orthography::{GaelicWord, OrthographyError};
use crate::svf::{Entry, PartField, PartOfSpeech, PartValue};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrequencyRow {
    pub rank: usize,
    pub lexeme: GaelicWord,
    pub count: u64,
}

/// A ranked word list.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FrequencyList {
    rows: Vec<FrequencyRow>,
    total_tokens: u64,
}

impl FrequencyList {
    /// Builds a list from `(lexeme, count)` pairs, ranking them in the given
    /// order.
    pub fn from_counts(counts: impl IntoIterator<Item = (GaelicWord, u64)>) -> Self {
        let rows: Vec<FrequencyRow> = counts
            .into_iter()
            .enumerate()
            .map(|(i, (lexeme, count))| FrequencyRow {
                rank: i + 1,
                lexeme,
                count,
            })
            .collect();
        let total_tokens = rows.iter().fold(0u64, |acc, r| acc.saturating_add(r.count));
        FrequencyList { rows, total_tokens }
    }

    pub fn rows(&self) -> &[FrequencyRow] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn total_tokens(&self) -> u64 {
        self.total_tokens
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Delimiter {
    /// Tab if the first data line has one, comma otherwise.
    #[default]
    Auto,
    Tab,
    Comma,
}

#[derive(Debug, Error)]
pub enum FrequencyError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("no parsable rows in frequency list")]
    NoRows,
}

/// A loaded list together with everything that looked wrong on the way in.
#[derive(Debug, Clone, Default)]
pub struct FrequencyLoad {
    pub list: FrequencyList,
    pub warnings: Vec<String>,
    /// 1-based line number and reason.
    pub malformed: Vec<(usize, String)>,
}

enum RowShape {
    LexemeCount,
    RankLexemeCount,
}

fn parse_row(record: &csv::StringRecord) -> Result<(Option<u64>, GaelicWord, u64), String> {
    let fields: Vec<&str> = record.iter().map(str::trim).collect();
    let shape = match fields.len() {
        2 => RowShape::LexemeCount,
        3 => RowShape::RankLexemeCount,
        n => return Err(format!("expected 2 or 3 columns, found {n}")),
    };
    let (rank, lexeme, count) = match shape {
        RowShape::LexemeCount => (None, fields[0], fields[1]),
        RowShape::RankLexemeCount => {
            let rank = fields[0]
                .parse::<u64>()
                .map_err(|_| format!("bad rank `{}`", fields[0]))?;
            (Some(rank), fields[1], fields[2])
        }
    };
    let count = count.parse::<u64>().map_err(|_| format!("bad count `{count}`"))?;
    let lexeme = GaelicWord::new_normalized(lexeme).map_err(|e: OrthographyError| e.to_string())?;
    Ok((rank, lexeme, count))
}

/// Parses a delimited word list: `rank, lexeme, count` or `lexeme, count`,
/// with an optional header line.
pub fn parse_frequency_list(text: &str, delimiter: Delimiter) -> Result<FrequencyLoad, FrequencyError> {
    let delim = match delimiter {
        Delimiter::Tab => b'\t',
        Delimiter::Comma => b',',
        Delimiter::Auto => {
            let first = text.lines().find(|l| !l.trim().is_empty()).unwrap_or("");
            if first.contains('\t') {
                b'\t'
            } else {
                b','
            }
        }
    };
    let mut reader = csv::ReaderBuilder::new()
        .delimiter(delim)
        .has_headers(false)
        .flexible(true)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());

    let mut load = FrequencyLoad::default();
    let mut counts = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let line = record
            .as_ref()
            .ok()
            .and_then(|r| r.position())
            .map_or(i + 1, |p| p.line() as usize);
        let record = match record {
            Ok(r) => r,
            Err(e) => {
                load.malformed.push((line, e.to_string()));
                continue;
            }
        };
        if record.iter().all(|f| f.trim().is_empty()) {
            continue;
        }
        match parse_row(&record) {
            Ok((rank, lexeme, count)) => {
                let expected = counts.len() as u64 + 1;
                if let Some(r) = rank.filter(|&r| r != expected) {
                    load.warnings
                        .push(format!("line {line}: rank {r} renumbered to {expected}"));
                }
                counts.push((lexeme, count));
            }
            // a header is the first line and has no numeric count
            Err(_) if counts.is_empty() && load.malformed.is_empty() && line == 1 => {}
            Err(reason) => load.malformed.push((line, reason)),
        }
    }
    if counts.is_empty() {
        return Err(FrequencyError::NoRows);
    }
    for (i, pair) in counts.windows(2).enumerate() {
        if pair[1].1 > pair[0].1 {
            load.warnings.push(format!(
                "rank {}: count {} exceeds count {} at rank {}",
                i + 2,
                pair[1].1,
                pair[0].1,
                i + 1
            ));
        }
    }
    load.list = FrequencyList::from_counts(counts);
    Ok(load)
}

pub fn load_frequency_list(path: impl AsRef<Path>, delimiter: Delimiter) -> Result<FrequencyLoad, FrequencyError> {
    let mut text = String::new();
    std::fs::File::open(path)?.read_to_string(&mut text)?;
    parse_frequency_list(&text, delimiter)
}

/// How much of a frequency list a set of known words accounts for.
#[derive(Debug, Clone, PartialEq)]
pub struct CoverageReport {
    pub matched_types: usize,
    pub total_types: usize,
    pub type_coverage: f64,
    pub matched_tokens: u64,
    pub total_tokens: u64,
    pub token_coverage: f64,
    /// Highest-frequency lexemes with no match, most frequent first.
    pub unmatched_top: Vec<(GaelicWord, u64)>,
}

/// How many unmatched lexemes a [`CoverageReport`] keeps.
pub const UNMATCHED_TOP: usize = 25;

fn ratio(num: u64, den: u64) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

/// Matches every lexeme of `fl` against `keys` under `fold`.
pub fn coverage<'a>(
    fl: &FrequencyList,
    keys: impl IntoIterator<Item = &'a GaelicWord>,
    fold: FoldPolicy,
) -> CoverageReport {
    let keys: HashSet<String> = keys.into_iter().map(|k| fold.key(k)).collect();
    let mut matched_types = 0;
    let mut matched_tokens: u64 = 0;
    let mut unmatched: Vec<(GaelicWord, u64)> = Vec::new();
    for row in fl.rows() {
        if keys.contains(&fold.key(&row.lexeme)) {
            matched_types += 1;
            matched_tokens = matched_tokens.saturating_add(row.count);
        } else {
            unmatched.push((row.lexeme.clone(), row.count));
        }
    }
    // stable: ties keep rank order
    unmatched.sort_by_key(|u| std::cmp::Reverse(u.1));
    unmatched.truncate(UNMATCHED_TOP);
    CoverageReport {
        matched_types,
        total_types: fl.len(),
        type_coverage: ratio(matched_types as u64, fl.len() as u64),
        matched_tokens,
        total_tokens: fl.total_tokens(),
        token_coverage: ratio(matched_tokens, fl.total_tokens()),
        unmatched_top: unmatched,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("k = {k} is outside 1..={len}")]
pub struct RangeError {
    pub k: usize,
    pub len: usize,
}

/// Cumulative share of all tokens covered by the `k` most frequent lexemes,
/// one point per rank.
pub fn cumulative_coverage_curve(fl: &FrequencyList, k: usize) -> Result<Vec<(usize, f64)>, RangeError> {
    if k == 0 || k > fl.len() {
        return Err(RangeError { k, len: fl.len() });
    }
    let mut running: u64 = 0;
    Ok(fl.rows()[..k]
        .iter()
        .map(|row| {
            running = running.saturating_add(row.count);
            (row.rank, ratio(running, fl.total_tokens()))
        })
        .collect())
}

/// Counts of word endings, most frequent first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndingHistogram {
    pub buckets: Vec<(String, usize)>,
    pub scope: String,
}

impl EndingHistogram {
    pub fn total(&self) -> usize {
        self.buckets.iter().map(|(_, n)| n).sum()
    }

    pub fn get(&self, ending: &str) -> Option<usize> {
        self.buckets.iter().find(|(e, _)| e == ending).map(|(_, n)| *n)
    }
}

fn present_part(e: &Entry, field: PartField) -> Option<&GaelicWord> {
    if e.pos != field.owner() {
        return None;
    }
    match e.part(field) {
        Some(PartValue::Present(w)) => Some(w),
        _ => None,
    }
}

fn last_chars(s: &str, n: usize) -> &str {
    let count = s.chars().count();
    if count <= n {
        return s;
    }
    let (start, _) = s.char_indices().nth(count - n).expect("index in range");
    &s[start..]
}

/// Buckets the last `suffix_len` characters of the selected part, for
/// entries where the part is present and at least `min_growth` characters
/// longer than the lemma.
///
/// # Panics
///
/// If `suffix_len` is zero.
pub fn ending_histogram(entries: &[Entry], field: PartField, suffix_len: usize, min_growth: i64) -> EndingHistogram {
    assert!(suffix_len >= 1, "suffix_len must be positive");
    let mut counts: HashMap<&str, usize> = HashMap::new();
    for e in entries {
        let Some(part) = present_part(e, field) else { continue };
        let growth = part.char_len() as i64 - e.lemma.char_len() as i64;
        if growth >= min_growth {
            *counts.entry(last_chars(part.as_str(), suffix_len)).or_default() += 1;
        }
    }
    let mut buckets: Vec<(String, usize)> = counts.into_iter().map(|(k, v)| (k.to_string(), v)).collect();
    buckets.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    EndingHistogram {
        buckets,
        scope: format!(
            "{} {} with length({}) - length(lemma) >= {min_growth}, last {suffix_len} characters",
            field.owner(),
            field.column(),
            field.column()
        ),
    }
}

/// Length condition on `part - lemma` in characters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Growth {
    AtLeast(i64),
    Exactly(i64),
}

impl Growth {
    fn admits(self, growth: i64) -> bool {
        match self {
            Growth::AtLeast(n) => growth >= n,
            Growth::Exactly(n) => growth == n,
        }
    }
}

/// Entries whose selected part ends in `pattern` and passes the growth test.
pub fn count_suffix_pattern(entries: &[Entry], field: PartField, pattern: &str, growth: Growth) -> usize {
    entries
        .iter()
        .filter_map(|e| present_part(e, field).map(|p| (e, p)))
        .filter(|(e, p)| {
            p.as_str().ends_with(pattern) && growth.admits(p.char_len() as i64 - e.lemma.char_len() as i64)
        })
        .count()
}

/// Pairs of entry indices `(i, j)` with `i < j`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NearDuplicates {
    /// Lemmas equal after lower-casing but not before.
    pub case_pairs: Vec<(usize, usize)>,
    /// Lemmas equal after removing accents but not before, excluding case pairs.
    pub accent_pairs: Vec<(usize, usize)>,
}

fn pairs_by_key(entries: &[Entry], key: impl Fn(&str) -> String) -> Vec<(usize, usize)> {
    let mut groups: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    for (i, e) in entries.iter().enumerate() {
        groups.entry(key(e.lemma.as_str())).or_default().push(i);
    }
    let mut out = Vec::new();
    for ids in groups.values() {
        for (a, &i) in ids.iter().enumerate() {
            for &j in &ids[a + 1..] {
                if entries[i].lemma != entries[j].lemma {
                    out.push((i, j));
                }
            }
        }
    }
    out.sort_unstable();
    out
}

pub fn find_near_duplicates(entries: &[Entry]) -> NearDuplicates {
    let case_pairs = pairs_by_key(entries, str::to_lowercase);
    let case_set: HashSet<(usize, usize)> = case_pairs.iter().copied().collect();
    let accent_pairs = pairs_by_key(entries, |s| FoldPolicy::FoldAccents.key_str(s))
        .into_iter()
        .filter(|p| !case_set.contains(p))
        .collect();
    NearDuplicates {
        case_pairs,
        accent_pairs,
    }
}

/// Lexemes occurring exactly once, in rank order.
pub fn hapax_report(fl: &FrequencyList) -> (usize, Vec<GaelicWord>) {
    let hapaxes: Vec<GaelicWord> = fl
        .rows()
        .iter()
        .filter(|r| r.count == 1)
        .map(|r| r.lexeme.clone())
        .collect();
    (hapaxes.len(), hapaxes)
}

/// Missing-data view of a vocabulary.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Completeness {
    pub by_pos: BTreeMap<PartOfSpeech, usize>,
    pub irregular: usize,
    /// Per principal part: (unknown, non-existent).
    pub missing: BTreeMap<PartField, (usize, usize)>,
    /// Nouns with at least one `?` part.
    pub nouns_with_unknown: usize,
}

pub fn completeness(entries: &[Entry]) -> Completeness {
    let mut c = Completeness::default();
    for e in entries {
        *c.by_pos.entry(e.pos).or_default() += 1;
        c.irregular += usize::from(e.irregular);
        let mut unknown_here = false;
        for field in PartField::ALL {
            let slot = c.missing.entry(field).or_default();
            match e.part(field) {
                Some(PartValue::Unknown) => {
                    slot.0 += 1;
                    unknown_here = true;
                }
                Some(PartValue::NonExistent) => slot.1 += 1,
                _ => {}
            }
        }
        if e.pos == PartOfSpeech::Noun && unknown_here {
            c.nouns_with_unknown += 1;
        }
    }
    c
}
