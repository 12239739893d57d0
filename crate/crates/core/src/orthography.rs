//! Orthographic primitives for written Gaelic.
//!
//! Everything here is a pure function over [`GaelicWord`]. The rule engine
//! calls these transforms when it derives inflected forms from principal
//! parts, and the lexicon uses the accent folding to key its indexes.

use std::fmt;

use thiserror::Error;
use unicode_normalization::char::is_combining_mark;
use unicode_normalization::UnicodeNormalization;

/// The eighteen letters of the Gaelic alphabet.
pub const ALPHABET: &str = "abcdefghilmnoprstu";

/// Typewriter apostrophe used in the `dh'` glottal prefix.
pub const APOSTROPHE: char = '\'';

/// Typographic apostrophe that commonly replaces [`APOSTROPHE`] in edited text.
pub const TYPOGRAPHIC_APOSTROPHE: char = '\u{2019}';

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrthographyError {
    #[error("empty word")]
    Empty,
    #[error("invalid character {ch:?} in {word:?}")]
    InvalidChar { word: String, ch: char },
    #[error("{0:?} contains no letter")]
    NoLetter(String),
    #[error("leading or trailing whitespace in {0:?}")]
    Untrimmed(String),
    #[error("{0:?} contains no vowel")]
    NoVowel(String),
    #[error("{0:?} cannot be slenderized")]
    NotSlenderizable(String),
    #[error("suffix alternation {broad:?}/{slender:?} is not harmonic")]
    BadAlternation { broad: String, slender: String },
}

/// A single written word (or multi-word expression) in canonical composed form.
///
/// Construction accepts any alphabetic text so that loan words and the stray
/// non-Gaelic entries of real word lists survive loading; use
/// [`GaelicWord::is_native`] to test against the eighteen-letter alphabet.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaelicWord(String);

impl GaelicWord {
    /// Composes `text` (NFC) and checks it.
    pub fn new(text: &str) -> Result<Self, OrthographyError> {
        let composed: String = text.nfc().collect();
        if composed.is_empty() {
            return Err(OrthographyError::Empty);
        }
        if composed.trim() != composed {
            return Err(OrthographyError::Untrimmed(composed));
        }
        if let Some(ch) = composed.chars().find(|&c| !is_word_char(c)) {
            return Err(OrthographyError::InvalidChar { word: composed, ch });
        }
        if !composed.chars().any(char::is_alphabetic) {
            return Err(OrthographyError::NoLetter(composed));
        }
        Ok(GaelicWord(composed))
    }

    /// Like [`GaelicWord::new`], but first rewrites typographic apostrophes
    /// (U+2019) to the typewriter apostrophe.
    pub fn new_normalized(text: &str) -> Result<Self, OrthographyError> {
        Self::new(&text.replace(TYPOGRAPHIC_APOSTROPHE, "'"))
    }

    /// Wraps text built from valid words by the transforms in this module.
    fn from_trusted(text: String) -> Self {
        let composed: String = text.nfc().collect();
        debug_assert!(Self::new(&composed).is_ok(), "{composed:?}");
        GaelicWord(composed)
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn into_string(self) -> String {
        self.0
    }

    /// Number of characters (not bytes).
    pub fn char_len(&self) -> usize {
        self.0.chars().count()
    }

    /// True when every letter belongs to the Gaelic alphabet (accented vowels
    /// included).
    pub fn is_native(&self) -> bool {
        self.0.chars().all(|c| {
            !c.is_alphabetic() || {
                let base = strip_accent(c).to_lowercase().next().unwrap_or(c);
                ALPHABET.contains(base)
            }
        })
    }
}

impl fmt::Display for GaelicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl AsRef<str> for GaelicWord {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

impl std::str::FromStr for GaelicWord {
    type Err = OrthographyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GaelicWord::new(s)
    }
}

/// Combining marks left over after composition are rejected.
fn is_word_char(c: char) -> bool {
    (c.is_alphabetic() && !is_combining_mark(c)) || c == APOSTROPHE || c == '-' || c == ' '
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VowelClass {
    Broad,
    Slender,
}

/// Classifies a single character; `None` for consonants and punctuation.
pub fn vowel_class(c: char) -> Option<VowelClass> {
    match strip_accent(c).to_ascii_lowercase() {
        'a' | 'o' | 'u' => Some(VowelClass::Broad),
        'e' | 'i' => Some(VowelClass::Slender),
        _ => None,
    }
}

pub fn is_vowel(c: char) -> bool {
    vowel_class(c).is_some()
}

fn is_letter_consonant(c: char) -> bool {
    c.is_alphabetic() && !is_vowel(c)
}

/// Maps an accented vowel to its bare letter, leaving other characters alone.
pub fn strip_accent(c: char) -> char {
    match c {
        'à' | 'á' => 'a',
        'è' | 'é' => 'e',
        'ì' | 'í' => 'i',
        'ò' | 'ó' => 'o',
        'ù' | 'ú' => 'u',
        'À' | 'Á' => 'A',
        'È' | 'É' => 'E',
        'Ì' | 'Í' => 'I',
        'Ò' | 'Ó' => 'O',
        'Ù' | 'Ú' => 'U',
        _ => c,
    }
}

fn acute_to_grave(c: char) -> char {
    match c {
        'á' => 'à',
        'é' => 'è',
        'í' => 'ì',
        'ó' => 'ò',
        'ú' => 'ù',
        'Á' => 'À',
        'É' => 'È',
        'Í' => 'Ì',
        'Ó' => 'Ò',
        'Ú' => 'Ù',
        _ => c,
    }
}

/// A suffix in its broad and slender spellings, e.g. `an` / `ean`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SuffixAlternation {
    broad: String,
    slender: String,
}

impl SuffixAlternation {
    /// Both forms must be non-empty. When a form contains a vowel, its first
    /// vowel must belong to the matching class.
    pub fn new(broad: &str, slender: &str) -> Result<Self, OrthographyError> {
        let broad: String = broad.nfc().collect();
        let slender: String = slender.nfc().collect();
        let first_class = |s: &str| s.chars().find_map(vowel_class);
        let harmonic = !broad.is_empty()
            && !slender.is_empty()
            && broad.trim() == broad
            && slender.trim() == slender
            && broad.chars().chain(slender.chars()).all(is_word_char)
            && matches!(first_class(&broad), None | Some(VowelClass::Broad))
            && matches!(first_class(&slender), None | Some(VowelClass::Slender));
        if !harmonic {
            return Err(OrthographyError::BadAlternation { broad, slender });
        }
        Ok(SuffixAlternation { broad, slender })
    }

    pub fn broad_form(&self) -> &str {
        &self.broad
    }

    pub fn slender_form(&self) -> &str {
        &self.slender
    }
}

impl fmt::Display for SuffixAlternation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", self.broad, self.slender)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AccentMode {
    /// Acute accents become grave, following the 1981 conventions.
    FoldAcuteToGrave,
    StripAll,
    #[default]
    None,
}

pub fn normalize_accents(w: &GaelicWord, mode: AccentMode) -> GaelicWord {
    let text = match mode {
        AccentMode::None => return w.clone(),
        AccentMode::FoldAcuteToGrave => w.as_str().chars().map(acute_to_grave).collect(),
        AccentMode::StripAll => w.as_str().chars().map(strip_accent).collect(),
    };
    GaelicWord::from_trusted(text)
}

/// Class of the rightmost vowel.
pub fn last_vowel_class(w: &GaelicWord) -> Result<VowelClass, OrthographyError> {
    w.as_str()
        .chars()
        .rev()
        .find_map(vowel_class)
        .ok_or_else(|| OrthographyError::NoVowel(w.to_string()))
}

const LENITABLE: &str = "bcdfgmpst";

/// Inserts `h` after a lenitable initial consonant.
///
/// `s` lenites only before a vowel or `l`, `n`, `r`; the clusters `sg`, `sm`,
/// `sp`, `st` are immune. Already-lenited words come back unchanged.
pub fn lenite(w: &GaelicWord) -> GaelicWord {
    let mut chars = w.as_str().chars();
    let Some(first) = chars.next() else {
        return w.clone();
    };
    let initial = first.to_ascii_lowercase();
    if !LENITABLE.contains(initial) {
        return w.clone();
    }
    let second = chars.next();
    if matches!(second, Some('h' | 'H')) || second.is_some_and(|c| !c.is_alphabetic()) {
        return w.clone();
    }
    if initial == 's' {
        let ok = second.is_some_and(|c| is_vowel(c) || matches!(c.to_ascii_lowercase(), 'l' | 'n' | 'r'));
        if !ok {
            return w.clone();
        }
    }
    let mut out = String::with_capacity(w.as_str().len() + 1);
    out.push(first);
    out.push('h');
    out.push_str(&w.as_str()[first.len_utf8()..]);
    GaelicWord::from_trusted(out)
}

/// Past/conditional independent mutation: `dh'` before vowels and `f` + vowel,
/// plain lenition otherwise.
pub fn glottal_past_prefix(w: &GaelicWord) -> GaelicWord {
    let mut chars = w.as_str().chars();
    let first = chars.next();
    let second = chars.next();
    match first {
        Some(c) if is_vowel(c) => GaelicWord::from_trusted(format!("dh'{w}")),
        Some('f' | 'F') if second.is_some_and(is_vowel) => GaelicWord::from_trusted(format!("dh'{}", lenite(w))),
        _ => lenite(w),
    }
}

/// Prefixes removed by [`strip_prothesis`].
pub const PROTHETIC_PREFIXES: [&str; 4] = ["t-", "n-", "h-", "dh'"];

/// Removes one leading `t-`, `n-`, `h-` or `dh'`.
pub fn strip_prothesis(w: &GaelicWord) -> GaelicWord {
    let s = w.as_str();
    for prefix in PROTHETIC_PREFIXES {
        if let Some(rest) = s.strip_prefix(prefix) {
            if let Ok(word) = GaelicWord::new(rest) {
                return word;
            }
        }
    }
    w.clone()
}

/// Slenderizes the final vowel group: `ea` becomes `i`, an all-broad group
/// gains a final `i`, and a group already ending in `i` is left as is.
pub fn slenderize(w: &GaelicWord) -> Result<GaelicWord, OrthographyError> {
    let chars: Vec<char> = w.as_str().chars().collect();
    let err = || OrthographyError::NotSlenderizable(w.to_string());
    let end = chars.iter().rposition(|&c| is_vowel(c)).ok_or_else(err)?;
    // needs at least one trailing consonant letter
    let tail = &chars[end + 1..];
    if tail.is_empty() || !tail.iter().all(|&c| is_letter_consonant(c)) {
        return Err(err());
    }
    let start = chars[..end].iter().rposition(|&c| !is_vowel(c)).map_or(0, |p| p + 1);
    let group = &chars[start..=end];
    let bare: String = group.iter().map(|&c| strip_accent(c).to_ascii_lowercase()).collect();

    let replacement: Vec<char> = if bare.ends_with('i') {
        return Ok(w.clone());
    } else if bare == "ea" && group.iter().all(|c| c.is_ascii()) {
        if group[0].is_uppercase() {
            vec!['I']
        } else {
            vec!['i']
        }
    } else if group.iter().all(|&c| vowel_class(c) == Some(VowelClass::Broad)) {
        group.iter().copied().chain(std::iter::once('i')).collect()
    } else {
        return Err(err());
    };

    let out: String = chars[..start]
        .iter()
        .chain(replacement.iter())
        .chain(tail.iter())
        .collect();
    Ok(GaelicWord::from_trusted(out))
}

/// Appends the broad or slender form of `alt` to agree with the last vowel of
/// `stem`.
///
/// A vowel ending the stem is not doubled by the same vowel opening the
/// suffix: `bile` + `ean` is `bilean`.
pub fn attach_suffix(stem: &GaelicWord, alt: &SuffixAlternation) -> Result<GaelicWord, OrthographyError> {
    let suffix = match last_vowel_class(stem)? {
        VowelClass::Broad => alt.broad_form(),
        VowelClass::Slender => alt.slender_form(),
    };
    let bare = |c: char| strip_accent(c).to_ascii_lowercase();
    let suffix = match (stem.as_str().chars().last(), suffix.chars().next()) {
        (Some(a), Some(b)) if is_vowel(a) && bare(a) == bare(b) && suffix.chars().count() > 1 => {
            &suffix[b.len_utf8()..]
        }
        _ => suffix,
    };
    Ok(GaelicWord::from_trusted(format!("{stem}{suffix}")))
}

/// Every vowel-consonants-vowel window whose flanking vowels disagree in
/// class, as `(left vowel index, right vowel index)` in characters.
///
/// Apostrophes, hyphens and spaces break windows.
pub fn harmony_violations(w: &GaelicWord) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut last_vowel: Option<(usize, VowelClass)> = None;
    let mut consonants_since = false;
    for (i, c) in w.as_str().chars().enumerate() {
        if let Some(class) = vowel_class(c) {
            if let (Some((j, prev)), true) = (last_vowel, consonants_since) {
                if prev != class {
                    out.push((j, i));
                }
            }
            last_vowel = Some((i, class));
            consonants_since = false;
        } else if c.is_alphabetic() {
            consonants_since = true;
        } else {
            last_vowel = None;
            consonants_since = false;
        }
    }
    out
}

pub fn is_harmonic(w: &GaelicWord) -> bool {
    harmony_violations(w).is_empty()
}
