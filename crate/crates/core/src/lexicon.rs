//! Searchable vocabulary and the all-forms recognition index.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use crate::orthography::{strip_accent, strip_prothesis, GaelicWord};
use crate::rules::{surface_analyses, FormCode, RuleSet};
use crate::svf::{Entry, PartOfSpeech};

/// How words are compared when looking them up.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum FoldPolicy {
    Exact,
    /// Accents are ignored: `mór`, `mòr` and `mor` share a key.
    #[default]
    FoldAccents,
    FoldAccentsAndCase,
}

impl FoldPolicy {
    pub fn key(self, w: &GaelicWord) -> String {
        self.key_str(w.as_str())
    }

    pub(crate) fn key_str(self, s: &str) -> String {
        match self {
            FoldPolicy::Exact => s.to_string(),
            FoldPolicy::FoldAccents => s.chars().map(strip_accent).collect(),
            FoldPolicy::FoldAccentsAndCase => s.chars().map(strip_accent).flat_map(char::to_lowercase).collect(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FoldPolicy::Exact => "exact",
            FoldPolicy::FoldAccents => "accents",
            FoldPolicy::FoldAccentsAndCase => "accents-case",
        }
    }
}

impl fmt::Display for FoldPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FoldPolicy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exact" => Ok(FoldPolicy::Exact),
            "accents" => Ok(FoldPolicy::FoldAccents),
            "accents-case" => Ok(FoldPolicy::FoldAccentsAndCase),
            other => Err(format!("unknown fold policy `{other}`")),
        }
    }
}

/// Entries indexed by folded lemma. Homographs are kept side by side.
#[derive(Debug, Clone)]
pub struct Vocabulary {
    entries: Vec<Entry>,
    lemma_index: HashMap<String, Vec<usize>>,
    fold_policy: FoldPolicy,
}

impl Vocabulary {
    pub fn new(entries: Vec<Entry>, fold_policy: FoldPolicy) -> Self {
        let mut lemma_index: HashMap<String, Vec<usize>> = HashMap::new();
        for (i, e) in entries.iter().enumerate() {
            lemma_index.entry(fold_policy.key(&e.lemma)).or_default().push(i);
        }
        Vocabulary {
            entries,
            lemma_index,
            fold_policy,
        }
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn fold_policy(&self) -> FoldPolicy {
        self.fold_policy
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries whose lemma equals `w` under the fold policy, in insertion order.
    pub fn lookup(&self, w: &GaelicWord) -> Vec<&Entry> {
        self.lemma_index
            .get(&self.fold_policy.key(w))
            .map(|ids| ids.iter().map(|&i| &self.entries[i]).collect())
            .unwrap_or_default()
    }

    /// The set of lemmas, as coverage keys.
    pub fn lemma_set(&self) -> BTreeSet<GaelicWord> {
        self.entries.iter().map(|e| e.lemma.clone()).collect()
    }
}

/// A surface form analysed as a cell of a specific entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Producer {
    /// Index into [`Vocabulary::entries`].
    pub entry: usize,
    pub form: FormCode,
    pub lenited_allomorph: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PosExpansion {
    pub entries: usize,
    /// Sum over entries of their distinct surface forms.
    pub forms: usize,
    /// Cells that could not be derived.
    pub failed_cells: usize,
}

/// Every surface form derivable from a vocabulary, mapped to its producers.
#[derive(Debug, Clone)]
pub struct AllFormsIndex<'v> {
    vocabulary: &'v Vocabulary,
    form_index: BTreeMap<GaelicWord, BTreeSet<Producer>>,
    folded: HashMap<String, Vec<GaelicWord>>,
    pub per_pos: BTreeMap<PartOfSpeech, PosExpansion>,
}

/// One reading of a recognized word.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Analysis<'a> {
    pub entry: &'a Entry,
    pub form: FormCode,
    pub lenited_allomorph: bool,
    /// The indexed surface form the query resolved to.
    pub surface: &'a GaelicWord,
}

pub fn build_all_forms<'v>(v: &'v Vocabulary, rules: &RuleSet) -> AllFormsIndex<'v> {
    let mut form_index: BTreeMap<GaelicWord, BTreeSet<Producer>> = BTreeMap::new();
    let mut per_pos: BTreeMap<PartOfSpeech, PosExpansion> = BTreeMap::new();
    for (i, e) in v.entries().iter().enumerate() {
        let (forms, failures) = surface_analyses(e, rules);
        let stats = per_pos.entry(e.pos).or_default();
        stats.entries += 1;
        stats.forms += forms.len();
        stats.failed_cells += failures;
        for (word, analyses) in forms {
            let producers = form_index.entry(word).or_default();
            producers.extend(analyses.into_iter().map(|a| Producer {
                entry: i,
                form: a.form,
                lenited_allomorph: a.lenited_allomorph,
            }));
        }
    }
    let mut folded: HashMap<String, Vec<GaelicWord>> = HashMap::new();
    for word in form_index.keys() {
        folded.entry(v.fold_policy().key(word)).or_default().push(word.clone());
    }
    AllFormsIndex {
        vocabulary: v,
        form_index,
        folded,
        per_pos,
    }
}

impl AllFormsIndex<'_> {
    pub fn distinct_form_count(&self) -> usize {
        self.form_index.len()
    }

    pub fn forms(&self) -> impl Iterator<Item = &GaelicWord> {
        self.form_index.keys()
    }

    pub fn form_set(&self) -> BTreeSet<GaelicWord> {
        self.form_index.keys().cloned().collect()
    }

    pub fn producers(&self, w: &GaelicWord) -> Option<&BTreeSet<Producer>> {
        self.form_index.get(w)
    }

    pub fn failed_cells(&self) -> usize {
        self.per_pos.values().map(|s| s.failed_cells).sum()
    }

    fn analyses_of(&self, surface: &GaelicWord) -> Vec<Analysis<'_>> {
        let Some((surface, producers)) = self.form_index.get_key_value(surface) else {
            return Vec::new();
        };
        producers
            .iter()
            .map(|p| Analysis {
                entry: &self.vocabulary.entries()[p.entry],
                form: p.form,
                lenited_allomorph: p.lenited_allomorph,
                surface,
            })
            .collect()
    }

    /// All analyses of `w`.
    ///
    /// Tries, in order: the word as given, the word without a prothetic
    /// prefix, and both again under the vocabulary's fold policy.
    pub fn recognize(&self, w: &GaelicWord) -> Vec<Analysis<'_>> {
        let stripped = strip_prothesis(w);
        let mut candidates = vec![w.clone()];
        if stripped != *w {
            candidates.push(stripped);
        }
        for c in &candidates {
            let hits = self.analyses_of(c);
            if !hits.is_empty() {
                return hits;
            }
        }
        if self.vocabulary.fold_policy() == FoldPolicy::Exact {
            return Vec::new();
        }
        for c in &candidates {
            let key = self.vocabulary.fold_policy().key(c);
            if let Some(surfaces) = self.folded.get(&key) {
                return surfaces.iter().flat_map(|s| self.analyses_of(s)).collect();
            }
        }
        Vec::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rules::{all_surface_forms, inflect};
    use crate::svf::parse_vocabulary;

    fn w(s: &str) -> GaelicWord {
        GaelicWord::new(s).unwrap()
    }

    fn vocab(text: &str, policy: FoldPolicy) -> Vocabulary {
        let report = parse_vocabulary(text);
        assert!(report.errors.is_empty(), "{:?}", report.errors);
        Vocabulary::new(report.entries, policy)
    }

    const SAOGHAL: &str = "NOUN M \"saoghal\" \"saoghalan\" \"saoghail\"\n";

    #[test]
    fn lookup_by_lemma() {
        let v = vocab(SAOGHAL, FoldPolicy::Exact);
        let hits = v.lookup(&w("saoghal"));
        assert_eq!(hits.len(), 1);
        assert_eq!(hits[0].np.as_ref().and_then(|p| p.word()), Some(&w("saoghalan")));
        assert!(v.lookup(&w("cat")).is_empty());
    }

    #[test]
    fn lookup_folds_accents() {
        let text = "ADJ \"mòr\" \"motha\"\n";
        assert_eq!(vocab(text, FoldPolicy::FoldAccents).lookup(&w("mór")).len(), 1);
        assert_eq!(vocab(text, FoldPolicy::FoldAccents).lookup(&w("mor")).len(), 1);
        assert!(vocab(text, FoldPolicy::Exact).lookup(&w("mór")).is_empty());
        assert!(vocab(text, FoldPolicy::FoldAccents).lookup(&w("Mòr")).is_empty());
        assert_eq!(vocab(text, FoldPolicy::FoldAccentsAndCase).lookup(&w("MÓR")).len(), 1);
    }

    #[test]
    fn homographs_are_all_returned() {
        let text = "NOUN M \"cas\" \"casan\" \"cais\"\nNOUN F \"cas\" \"casan\" \"caise\"\n";
        assert_eq!(vocab(text, FoldPolicy::Exact).lookup(&w("cas")).len(), 2);
    }

    #[test]
    fn saoghal_expands_to_six_forms() {
        let rules = RuleSet::default_rules();
        let v = vocab(SAOGHAL, FoldPolicy::FoldAccents);
        let idx = build_all_forms(&v, &rules);
        assert_eq!(idx.distinct_form_count(), 6);
        assert_eq!(idx.per_pos[&PartOfSpeech::Noun].forms, 6);
        assert_eq!(idx.failed_cells(), 0);
    }

    #[test]
    fn empty_vocabulary() {
        let rules = RuleSet::default_rules();
        let v = Vocabulary::new(Vec::new(), FoldPolicy::Exact);
        assert_eq!(build_all_forms(&v, &rules).distinct_form_count(), 0);
    }

    #[test]
    fn recognizes_many_to_many() {
        let rules = RuleSet::default_rules();
        let v = vocab(SAOGHAL, FoldPolicy::FoldAccents);
        let idx = build_all_forms(&v, &rules);
        let forms: Vec<FormCode> = idx.recognize(&w("shaoghalan")).iter().map(|a| a.form).collect();
        assert_eq!(forms, vec![FormCode::Gp, FormCode::Vp]);

        let via_prothesis = idx.recognize(&w("t-saoghail"));
        assert_eq!(via_prothesis.len(), 1);
        assert_eq!(via_prothesis[0].form, FormCode::Gs);
        assert_eq!(via_prothesis[0].surface, &w("saoghail"));

        let allomorph = idx.recognize(&w("shaoghal"));
        assert_eq!(allomorph.len(), 1);
        assert!(allomorph[0].lenited_allomorph);

        assert!(idx.recognize(&w("zzz")).is_empty());
    }

    #[test]
    fn recognition_folds_accents() {
        let rules = RuleSet::default_rules();
        let v = vocab("VERB \"òl\" \"òl\"\n", FoldPolicy::FoldAccents);
        let idx = build_all_forms(&v, &rules);
        let hits = idx.recognize(&w("dh'olas"));
        assert_eq!(hits.len(), 1);
        assert_eq!(hits[0].form, FormCode::RelFut);
        let exact = vocab("VERB \"òl\" \"òl\"\n", FoldPolicy::Exact);
        assert!(build_all_forms(&exact, &rules).recognize(&w("dh'olas")).is_empty());
    }

    #[test]
    fn every_indexed_form_is_recognized_consistently() {
        let rules = RuleSet::default_rules();
        let text = format!("{SAOGHAL}VERB \"òl\" \"òl\"\nVERB \"bris\" \"briseadh\"\nADJ \"mòr\" \"motha\"\nNOUN F \"bròg\" \"brògan\" \"bròige\"\n");
        let v = vocab(&text, FoldPolicy::FoldAccents);
        let idx = build_all_forms(&v, &rules);
        let mut sum = 0;
        for e in v.entries() {
            sum += all_surface_forms(e, &rules).len();
        }
        assert!(idx.distinct_form_count() <= sum);
        for form in idx.forms() {
            let hits = idx.recognize(form);
            assert!(!hits.is_empty(), "{form}");
            for a in hits {
                let produced = inflect(a.entry, a.form, &rules).unwrap();
                let ok = produced.contains(form)
                    || *form == a.entry.lemma
                    || (a.lenited_allomorph && *form == crate::orthography::lenite(&a.entry.lemma));
                assert!(ok, "{form} not produced by {} {}", a.entry.lemma, a.form);
            }
        }
    }

    #[test]
    fn rebuild_is_deterministic() {
        let rules = RuleSet::default_rules();
        let v = vocab(&format!("{SAOGHAL}VERB \"òl\" \"òl\"\n"), FoldPolicy::FoldAccents);
        let a = build_all_forms(&v, &rules);
        let b = build_all_forms(&v, &rules);
        assert_eq!(a.form_index, b.form_index);
        assert_eq!(a.per_pos, b.per_pos);
    }
}
