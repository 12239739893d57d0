//! One line per acceptance criterion: `PASS`, `FAIL` or `SKIP`, with timing.
//! Exits non-zero if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use common::*;
use faclair::analysis::{
    count_suffix_pattern, coverage, cumulative_coverage_curve, ending_histogram, find_near_duplicates,
    load_frequency_list, Delimiter, Growth,
};
use faclair::export::{emit_ddl, emit_inserts, parse_inserts};
use faclair::orthography::{
    attach_suffix, glottal_past_prefix, is_harmonic, lenite, slenderize, strip_prothesis, SuffixAlternation,
};
use faclair::rules::{all_surface_forms, conjugate, decline};
use faclair::svf::{load_vocabulary_file, parse_vocabulary, PartField};
use faclair::{
    build_all_forms, parse_svf_line, serialize_entry, validate, FoldPolicy, PartOfSpeech, RuleSet, Vocabulary,
};
use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

enum Outcome {
    Pass,
    Fail(String),
    Skip(String),
}

type Check = Result<(), String>;

type Criterion = (&'static str, Duration, Box<dyn Fn() -> Result<Outcome, String>>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn eq<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Check {
    ensure(got == want, || format!("{what}: got {got:?}, want {want:?}"))
}

fn runner(seed: u8) -> TestRunner {
    TestRunner::new_with_rng(Config::default(), TestRng::from_seed(RngAlgorithm::ChaCha, &[seed; 32]))
}

fn saoghal() -> Check {
    let e = parse_svf_line("NOUN M \"saoghal\" \"saoghalan\" \"saoghail\"").map_err(|e| e.to_string())?;
    let rules = RuleSet::default_rules();
    let p = decline(&e, &rules).map_err(|e| e.to_string())?;
    eq("mismatched cells", paradigm_mismatches(&p, SAOGHAL_CELLS), vec![])?;
    let lexemes: BTreeSet<_> = SAOGHAL_LEXEMES.iter().map(|s| w(s)).collect();
    eq("distinct lexemes", all_surface_forms(&e, &rules), lexemes)
}

fn ol() -> Check {
    let e = parse_svf_line("VERB \"òl\" \"òl\"").map_err(|e| e.to_string())?;
    let p = conjugate(&e, &RuleSet::default_rules()).map_err(|e| e.to_string())?;
    eq("mismatched cells", paradigm_mismatches(&p, OL_CELLS), vec![])
}

fn orthography() -> Check {
    for (a, b) in [
        ("cat", "chat"),
        ("tuit", "thuit"),
        ("saoghal", "shaoghal"),
        ("òl", "òl"),
    ] {
        eq(&format!("lenite({a})"), lenite(&w(a)), w(b))?;
    }
    eq("glottal_past_prefix(òl)", glottal_past_prefix(&w("òl")), w("dh'òl"))?;
    eq("strip(n-iasg)", strip_prothesis(&w("n-iasg")), w("iasg"))?;
    eq("strip(t-saoghail)", strip_prothesis(&w("t-saoghail")), w("saoghail"))?;
    eq("slenderize(fear)", slenderize(&w("fear")).ok(), Some(w("fir")))?;
    eq(
        "slenderize(saoghal)",
        slenderize(&w("saoghal")).ok(),
        Some(w("saoghail")),
    )?;

    let mut r = runner(3);
    let words = word();
    for _ in 0..1_000 {
        let x = words.new_tree(&mut r).map_err(|e| e.to_string())?.current();
        let once = lenite(&x);
        eq(&format!("lenite idempotent on {x}"), lenite(&once), once)?;
    }

    let stems = proptest::prop_oneof![
        "[bcdfglmnprst]{0,2}[aou]{1,2}([bcdfglmnrst]{1,2}[aou]{1,2}){0,2}[bcdglmnrst]{0,2}",
        "[bcdfglmnprst]{0,2}[ei]{1,2}([bcdfglmnrst]{1,2}[ei]{1,2}){0,2}[bcdglmnrst]{0,2}",
    ];
    let suffixes = [
        ("an", "ean"),
        ("adh", "eadh"),
        ("aidh", "idh"),
        ("ar", "ear"),
        ("tar", "tear"),
        ("amaid", "eamaid"),
        ("aibh", "ibh"),
    ];
    for i in 0..1_000 {
        let stem = w(&stems.new_tree(&mut r).map_err(|e| e.to_string())?.current());
        let (b, s) = suffixes[i % suffixes.len()];
        let out = attach_suffix(&stem, &SuffixAlternation::new(b, s).unwrap()).map_err(|e| e.to_string())?;
        ensure(is_harmonic(&out), || format!("{stem} + {b}|{s} = {out} breaks harmony"))?;
    }
    Ok(())
}

fn svf_round_trip() -> Check {
    let entries = generate_entries(10_000);
    for e in &entries {
        let line = serialize_entry(e);
        let back = parse_svf_line(&line).map_err(|err| format!("{line}: {err}"))?;
        eq("parse(serialize(e))", &back, e)?;
        eq("serialize(parse(line))", serialize_entry(&back), line)?;
    }
    for pos in PartOfSpeech::ALL {
        for bits in 0..32u8 {
            let [gr, np, gs, vn, cp] = [0, 1, 2, 3, 4].map(|i| bits & (1 << i) != 0);
            let valid = validate(&entry_with(pos, gr, np, gs, vn, cp)).is_empty();
            eq(
                &format!("{pos} {bits:05b}"),
                valid,
                brute_force_valid(pos, gr, np, gs, vn, cp),
            )?;
        }
    }
    Ok(())
}

fn coverage_oracle() -> Check {
    let fl = load_frequency_list(fixture("freq50.tsv"), Delimiter::Auto)
        .map_err(|e| e.to_string())?
        .list;
    let entries = parse_vocabulary(&read_fixture("vocab20.svf")).entries;
    let hand: BTreeSet<_> = hand_forms().into_iter().flatten().collect();
    for (mode, policy, types, _, tokens, total) in expected_coverage() {
        let policy: FoldPolicy = policy.parse()?;
        let v = Vocabulary::new(entries.clone(), policy);
        let index = build_all_forms(&v, &RuleSet::default_rules());
        if mode == "allforms" {
            eq("all-forms set", index.form_set(), hand.clone())?;
        }
        let lemmas = coverage(&fl, &v.lemma_set(), policy);
        let all = coverage(&fl, index.forms(), policy);
        let report = if mode == "lemmas" { &lemmas } else { &all };
        eq(
            &format!("{mode}/{policy}"),
            (report.matched_types, report.matched_tokens, report.total_tokens),
            (types, tokens, total),
        )?;
        ensure(all.token_coverage >= lemmas.token_coverage, || {
            format!("{policy}: all-forms below lemma coverage")
        })?;
    }
    Ok(())
}

fn stats_oracle() -> Check {
    let entries = parse_vocabulary(&read_fixture("stats12.svf")).entries;
    eq("fixture size", entries.len(), 12)?;
    // plural growth by hand: saoghalan +2, caileagan +2, mucan +2, taighean +3, bàtaichean +6, mnathan +3; cait has no -an
    let np_growth = [2, 2, 2, 3, 6, 3];
    for extra in 0..6i64 {
        let at_least = np_growth.iter().filter(|&&g| g >= extra).count();
        let exactly = np_growth.iter().filter(|&&g| g == extra).count();
        eq(
            "plural-an >=",
            count_suffix_pattern(&entries, PartField::Np, "an", Growth::AtLeast(extra)),
            at_least,
        )?;
        eq(
            "plural-an ==",
            count_suffix_pattern(&entries, PartField::Np, "an", Growth::Exactly(extra)),
            exactly,
        )?;
    }
    // verbal nouns: briseadh (+4), fàgail (+3), òl (0), ceannach (-1)
    let h = ending_histogram(&entries, PartField::Vn, 3, 3);
    eq(
        "vn endings",
        h.buckets,
        vec![("adh".to_string(), 1), ("ail".to_string(), 1)],
    )?;
    eq(
        "vn endings, any growth",
        ending_histogram(&entries, PartField::Vn, 3, i64::MIN).total(),
        4,
    )?;

    let dedup = parse_vocabulary(&read_fixture("dedup.svf")).entries;
    let d = find_near_duplicates(&dedup);
    eq("case pairs", d.case_pairs.len(), 1)?;
    eq("accent pairs", d.accent_pairs.len(), 1)
}

fn dataset_path(var: &str) -> Option<PathBuf> {
    std::env::var_os(var).map(PathBuf::from).filter(|p| p.is_file())
}

fn reference_dataset() -> Result<Outcome, String> {
    let (Some(svf), Some(freq)) = (dataset_path("FACLAIR_DATASET"), dataset_path("FACLAIR_FREQLIST")) else {
        return Ok(Outcome::Skip(
            "set FACLAIR_DATASET and FACLAIR_FREQLIST to the reference SVF vocabulary and frequency list".into(),
        ));
    };
    let report = load_vocabulary_file(&svf).map_err(|e| e.to_string())?;
    let entries = report.entries;
    let count = |p| entries.iter().filter(|e| e.pos == p).count();
    let mut failures = Vec::new();
    let mut check = |what: &str, got: String, want: String| {
        if got != want {
            failures.push(format!("{what}: got {got}, want {want}"));
        }
    };
    check(
        "POS totals",
        format!(
            "{}/{}/{}",
            count(PartOfSpeech::Noun),
            count(PartOfSpeech::Adj),
            count(PartOfSpeech::Verb)
        ),
        "4956/1025/534".into(),
    );
    check(
        "IRREG",
        entries.iter().filter(|e| e.irregular).count().to_string(),
        "24".into(),
    );
    check(
        "plural-an",
        count_suffix_pattern(&entries, PartField::Np, "an", Growth::AtLeast(2)).to_string(),
        "2452".into(),
    );
    check(
        "plural-an short",
        count_suffix_pattern(&entries, PartField::Np, "an", Growth::Exactly(2)).to_string(),
        "1302".into(),
    );
    check(
        "VN adh",
        ending_histogram(&entries, PartField::Vn, 3, 3)
            .get("adh")
            .unwrap_or(0)
            .to_string(),
        "218".into(),
    );

    // the reference counts come from SQL string comparison under a case- and
    // accent-insensitive collation
    let policy = FoldPolicy::FoldAccentsAndCase;
    let v = Vocabulary::new(entries, policy);
    let index = build_all_forms(&v, &RuleSet::default_rules());
    check("lemmas", v.len().to_string(), "6515".into());
    check("all forms", index.distinct_form_count().to_string(), "33132".into());
    let fl = load_frequency_list(&freq, Delimiter::Auto)
        .map_err(|e| e.to_string())?
        .list;
    check(
        "lemma coverage types",
        coverage(&fl, &v.lemma_set(), policy).matched_types.to_string(),
        "2044".into(),
    );
    check(
        "all-forms coverage types",
        coverage(&fl, index.forms(), policy).matched_types.to_string(),
        "4371".into(),
    );
    let top15 = cumulative_coverage_curve(&fl, 15)
        .map_err(|e| e.to_string())?
        .last()
        .map_or(0.0, |p| p.1);
    if (top15 - 0.35).abs() > 0.01 {
        failures.push(format!("top-15 token coverage: got {top15:.4}, want 0.35 ± 0.01"));
    }
    Ok(if failures.is_empty() {
        Outcome::Pass
    } else {
        Outcome::Fail(failures.join("; "))
    })
}

fn ddl_and_inserts() -> Check {
    use sqlparser::dialect::MySqlDialect;
    use sqlparser::parser::Parser;
    let ddl = emit_ddl();
    Parser::parse_sql(&MySqlDialect {}, &ddl).map_err(|e| format!("DDL does not parse: {e}"))?;
    for conjunct in [
        "((GR IS NULL AND NP IS NULL AND GS IS NULL) OR POS = 'NOUN')",
        "(VN IS NULL OR POS = 'VERB')",
        "(CP IS NULL OR POS = 'ADJ')",
    ] {
        ensure(ddl.contains(conjunct), || format!("CHECK lacks {conjunct}"))?;
    }
    let mut entries = parse_vocabulary(&read_fixture("vocab20.svf")).entries;
    entries.extend(generate_entries(1_000));
    let script = emit_inserts(&entries);
    Parser::parse_sql(&MySqlDialect {}, &script.sql).map_err(|e| format!("inserts do not parse: {e}"))?;
    eq(
        "insert round trip",
        parse_inserts(&script.sql).map_err(|e| e.to_string())?,
        entries,
    )
}

fn main() {
    let plain = |f: fn() -> Check| move || f().map(|()| Outcome::Pass);
    let criteria: Vec<Criterion> = vec![
        (
            "1 paradigm fidelity: saoghal",
            Duration::from_secs(1),
            Box::new(plain(saoghal)),
        ),
        ("2 paradigm fidelity: òl", Duration::from_secs(1), Box::new(plain(ol))),
        (
            "3 orthography suite",
            Duration::from_secs(1),
            Box::new(plain(orthography)),
        ),
        (
            "4 SVF round trip and constraint oracle",
            Duration::from_secs(5),
            Box::new(plain(svf_round_trip)),
        ),
        (
            "5 coverage oracle",
            Duration::from_secs(1),
            Box::new(plain(coverage_oracle)),
        ),
        ("6 stats oracles", Duration::from_secs(1), Box::new(plain(stats_oracle))),
        (
            "7 reference dataset counts",
            Duration::from_secs(30),
            Box::new(reference_dataset),
        ),
        (
            "8 DDL and insert round trip",
            Duration::from_secs(1),
            Box::new(plain(ddl_and_inserts)),
        ),
    ];
    let mut failed = 0;
    for (name, budget, check) in &criteria {
        let start = Instant::now();
        let outcome = match catch_unwind(AssertUnwindSafe(check)) {
            Ok(Ok(o)) => o,
            Ok(Err(msg)) => Outcome::Fail(msg),
            Err(_) => Outcome::Fail("panicked".into()),
        };
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Outcome::Pass if elapsed > *budget => Outcome::Fail(format!("took {elapsed:.2?}, budget {budget:?}")),
            o => o,
        };
        let ms = elapsed.as_secs_f64() * 1e3;
        match outcome {
            Outcome::Pass => println!("PASS  {name}  ({ms:.0} ms)"),
            Outcome::Skip(why) => println!("SKIP  {name}  ({why})"),
            Outcome::Fail(why) => {
                failed += 1;
                println!("FAIL  {name}  ({ms:.0} ms): {why}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
