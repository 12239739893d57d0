//! SQL scripts for the `Facal` table and plain-text paradigm tables.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::orthography::GaelicWord;
use crate::rules::{FormCode, Paradigm};
use crate::svf::{validate, Entry, Gender, PartOfSpeech, PartValue, SvfError};

/// Column width of the text columns.
pub const VARCHAR_LEN: usize = 35;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Dialect {
    /// ENUM columns and AUTO_INCREMENT, as in MySQL.
    #[default]
    MySql,
    /// Plain text columns restricted by CHECK constraints; runs on SQLite and
    /// PostgreSQL.
    Portable,
}

const INTEGRITY_CHECK: &str = "CHECK (
        ((GR IS NULL AND NP IS NULL AND GS IS NULL) OR POS = 'NOUN')
        AND (VN IS NULL OR POS = 'VERB')
        AND (CP IS NULL OR POS = 'ADJ'))";

pub fn emit_ddl() -> String {
    emit_ddl_with(Dialect::MySql)
}

pub fn emit_ddl_with(dialect: Dialect) -> String {
    let (id, pos, gr) = match dialect {
        Dialect::MySql => (
            "ID INT PRIMARY KEY AUTO_INCREMENT",
            "POS ENUM ('NOUN', 'VERB', 'ADJ') NOT NULL",
            "GR ENUM ('M', 'F')",
        ),
        Dialect::Portable => (
            "ID INTEGER PRIMARY KEY",
            "POS VARCHAR(4) NOT NULL CHECK (POS IN ('NOUN', 'VERB', 'ADJ'))",
            "GR CHAR(1) CHECK (GR IN ('M', 'F'))",
        ),
    };
    format!(
        "CREATE TABLE Facal (
    {id},
    Lemma VARCHAR({VARCHAR_LEN}) NOT NULL,
    IRREG BOOLEAN DEFAULT FALSE,
    {pos}, -- part of speech
    {gr}, -- gender
    NP VARCHAR({VARCHAR_LEN}), -- nom. pl.
    GS VARCHAR({VARCHAR_LEN}), -- gen. sg.
    CP VARCHAR({VARCHAR_LEN}), -- comparative
    VN VARCHAR({VARCHAR_LEN}), -- verbal noun
    {INTEGRITY_CHECK}
);
"
    )
}

/// Generated INSERT statements plus anything worth a second look.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct InsertScript {
    pub sql: String,
    pub warnings: Vec<String>,
}

const INSERT_PREFIX: &str = "INSERT INTO Facal (Lemma, IRREG, POS, GR, NP, GS, CP, VN) VALUES (";
const NONEXISTENT_MARK: &str = "-- nonexistent:";
const PART_COLUMNS: [&str; 4] = ["NP", "GS", "CP", "VN"];

fn quote(s: &str) -> String {
    format!("'{}'", s.replace('\'', "''"))
}

/// One INSERT per entry. `?` parts become NULL; `-` parts become NULL and are
/// listed in a trailing comment so [`parse_inserts`] can restore them.
pub fn emit_inserts(entries: &[Entry]) -> InsertScript {
    let mut script = InsertScript::default();
    if entries.is_empty() {
        script.sql.push_str("-- Facal: no entries\n");
        return script;
    }
    for (n, e) in entries.iter().enumerate() {
        let mut values = vec![
            quote(e.lemma.as_str()),
            if e.irregular { "TRUE" } else { "FALSE" }.to_string(),
            quote(e.pos.keyword()),
            e.gender.map_or("NULL".to_string(), |g| quote(g.keyword())),
        ];
        let mut nonexistent = Vec::new();
        if e.lemma.char_len() > VARCHAR_LEN {
            script.warnings.push(format!(
                "entry {}: Lemma `{}` exceeds {VARCHAR_LEN} characters",
                n + 1,
                e.lemma
            ));
        }
        for (col, part) in PART_COLUMNS.iter().zip([&e.np, &e.gs, &e.cp, &e.vn]) {
            values.push(match part {
                Some(PartValue::Present(w)) => {
                    if w.char_len() > VARCHAR_LEN {
                        script
                            .warnings
                            .push(format!("entry {}: {col} `{w}` exceeds {VARCHAR_LEN} characters", n + 1));
                    }
                    quote(w.as_str())
                }
                Some(PartValue::NonExistent) => {
                    nonexistent.push(*col);
                    "NULL".to_string()
                }
                Some(PartValue::Unknown) | None => "NULL".to_string(),
            });
        }
        let _ = write!(script.sql, "{INSERT_PREFIX}{});", values.join(", "));
        if !nonexistent.is_empty() {
            let _ = write!(script.sql, " {NONEXISTENT_MARK} {}", nonexistent.join(","));
        }
        script.sql.push('\n');
    }
    script
}

#[derive(Debug, Error)]
pub enum InsertParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    Entry { line: usize, source: SvfError },
}

#[derive(Debug, PartialEq)]
enum SqlValue {
    Null,
    Bool(bool),
    Str(String),
}

fn parse_values(s: &str) -> Result<(Vec<SqlValue>, &str), String> {
    let mut values = Vec::new();
    let mut rest = s.trim_start();
    loop {
        if let Some(r) = rest.strip_prefix('\'') {
            let mut text = String::new();
            let mut chars = r.char_indices();
            let end = loop {
                match chars.next() {
                    Some((i, '\'')) => {
                        if r[i + 1..].starts_with('\'') {
                            text.push('\'');
                            chars.next();
                        } else {
                            break i + 1;
                        }
                    }
                    Some((_, c)) => text.push(c),
                    None => return Err("unterminated string".into()),
                }
            };
            values.push(SqlValue::Str(text));
            rest = &r[end..];
        } else {
            let end = rest.find([',', ')']).ok_or("unterminated value list")?;
            values.push(match rest[..end].trim() {
                "NULL" => SqlValue::Null,
                "TRUE" => SqlValue::Bool(true),
                "FALSE" => SqlValue::Bool(false),
                other => return Err(format!("unexpected value `{other}`")),
            });
            rest = &rest[end..];
        }
        rest = rest.trim_start();
        if let Some(r) = rest.strip_prefix(',') {
            rest = r.trim_start();
        } else if let Some(r) = rest.strip_prefix(')') {
            return Ok((values, r));
        } else {
            return Err("expected `,` or `)`".into());
        }
    }
}

/// Reads back a script produced by [`emit_inserts`].
pub fn parse_inserts(sql: &str) -> Result<Vec<Entry>, InsertParseError> {
    let mut entries = Vec::new();
    for (i, raw) in sql.lines().enumerate() {
        let line = i + 1;
        let syntax = |message: String| InsertParseError::Syntax { line, message };
        let text = raw.trim();
        if text.is_empty() || text.starts_with("--") {
            continue;
        }
        let body = text
            .strip_prefix(INSERT_PREFIX)
            .ok_or_else(|| syntax("expected an INSERT INTO Facal statement".into()))?;
        let (values, tail) = parse_values(body).map_err(syntax)?;
        let tail = tail
            .trim_start()
            .strip_prefix(';')
            .ok_or_else(|| syntax("missing `;`".into()))?
            .trim();
        let nonexistent: Vec<&str> = if tail.is_empty() {
            Vec::new()
        } else {
            tail.strip_prefix(NONEXISTENT_MARK)
                .ok_or_else(|| syntax(format!("unexpected trailing text `{tail}`")))?
                .split(',')
                .map(str::trim)
                .collect()
        };
        let [lemma, irreg, pos, gr, np, gs, cp, vn]: [SqlValue; 8] = values
            .try_into()
            .map_err(|v: Vec<SqlValue>| syntax(format!("expected 8 values, found {}", v.len())))?;

        let word = |s: &str| GaelicWord::new(s).map_err(|e| InsertParseError::Entry { line, source: e.into() });
        let SqlValue::Str(lemma) = lemma else {
            return Err(syntax("Lemma must be a string".into()));
        };
        let SqlValue::Bool(irregular) = irreg else {
            return Err(syntax("IRREG must be TRUE or FALSE".into()));
        };
        let pos = match pos {
            SqlValue::Str(p) => PartOfSpeech::from_keyword(&p).ok_or_else(|| syntax(format!("bad POS `{p}`")))?,
            _ => return Err(syntax("POS must be a string".into())),
        };
        let gender = match gr {
            SqlValue::Null => None,
            SqlValue::Str(g) => Some(Gender::from_keyword(&g).ok_or_else(|| syntax(format!("bad GR `{g}`")))?),
            SqlValue::Bool(_) => return Err(syntax("GR must be a string or NULL".into())),
        };
        let mut parts = Vec::with_capacity(4);
        for (col, v) in PART_COLUMNS.iter().zip([np, gs, cp, vn]) {
            let owner_col = match pos {
                PartOfSpeech::Noun => *col == "NP" || *col == "GS",
                PartOfSpeech::Verb => *col == "VN",
                PartOfSpeech::Adj => *col == "CP",
            };
            parts.push(match v {
                SqlValue::Str(s) => Some(PartValue::Present(word(&s)?)),
                SqlValue::Null if nonexistent.contains(col) => Some(PartValue::NonExistent),
                SqlValue::Null if owner_col => Some(PartValue::Unknown),
                SqlValue::Null => None,
                SqlValue::Bool(_) => return Err(syntax(format!("{col} must be a string or NULL"))),
            });
        }
        let mut parts = parts.into_iter();
        let entry = Entry {
            lemma: word(&lemma)?,
            pos,
            irregular,
            gender,
            np: parts.next().flatten(),
            gs: parts.next().flatten(),
            cp: parts.next().flatten(),
            vn: parts.next().flatten(),
        };
        let violations = validate(&entry);
        if !violations.is_empty() {
            return Err(InsertParseError::Entry {
                line,
                source: SvfError::ConstraintViolation(violations),
            });
        }
        entries.push(entry);
    }
    Ok(entries)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TableStyle {
    /// Padded columns between `|` borders.
    #[default]
    Ascii,
    /// Tab-separated, no padding.
    Delimited,
}

/// A header row and body rows; the first column holds row labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRenderSpec {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub style: TableStyle,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RenderError {
    #[error("row {row} has {found} cells, expected {expected}")]
    RowWidth { row: usize, found: usize, expected: usize },
    #[error("form {form} does not belong in a {layout:?} table")]
    LayoutMismatch { form: FormCode, layout: Layout },
}

fn pad_right(s: &str, width: usize) -> String {
    format!("{s}{}", " ".repeat(width.saturating_sub(s.chars().count())))
}

fn pad_left(s: &str, width: usize) -> String {
    format!("{}{s}", " ".repeat(width.saturating_sub(s.chars().count())))
}

impl TableRenderSpec {
    pub fn render(&self) -> Result<String, RenderError> {
        let expected = self.columns.len();
        if let Some((row, r)) = self.rows.iter().enumerate().find(|(_, r)| r.len() != expected) {
            return Err(RenderError::RowWidth {
                row,
                found: r.len(),
                expected,
            });
        }
        let mut out = String::new();
        if self.style == TableStyle::Delimited {
            for row in std::iter::once(&self.columns).chain(&self.rows) {
                out.push_str(&row.join("\t"));
                out.push('\n');
            }
            return Ok(out);
        }
        let widths: Vec<usize> = (0..expected)
            .map(|c| {
                std::iter::once(&self.columns[c])
                    .chain(self.rows.iter().map(|r| &r[c]))
                    .map(|s| s.chars().count())
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        // label column: one trailing space; others: a space on each side
        let line = |cells: &[String], header: bool| {
            let mut s = String::from("|");
            for (c, cell) in cells.iter().enumerate() {
                if c == 0 {
                    let w = widths[0] + 1;
                    s.push_str(&if header { pad_right(cell, w) } else { pad_left(cell, w) });
                } else {
                    s.push(' ');
                    s.push_str(&pad_right(cell, widths[c]));
                    s.push(' ');
                }
                s.push('|');
            }
            s
        };
        let header = line(&self.columns, true);
        let rule = format!("+{}+", "-".repeat(header.chars().count() - 2));
        out.push_str(&header);
        out.push('\n');
        out.push_str(&rule);
        out.push('\n');
        for row in &self.rows {
            out.push_str(&line(row, false));
            out.push('\n');
        }
        out.push_str(&rule);
        out.push('\n');
        Ok(out)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Layout {
    NounTable,
    VerbTable,
    AdjRow,
}

impl Layout {
    pub fn pos(self) -> PartOfSpeech {
        match self {
            Layout::NounTable => PartOfSpeech::Noun,
            Layout::VerbTable => PartOfSpeech::Verb,
            Layout::AdjRow => PartOfSpeech::Adj,
        }
    }

    pub fn for_pos(pos: PartOfSpeech) -> Self {
        match pos {
            PartOfSpeech::Noun => Layout::NounTable,
            PartOfSpeech::Verb => Layout::VerbTable,
            PartOfSpeech::Adj => Layout::AdjRow,
        }
    }
}

/// Shown for a cell with no forms.
pub const MISSING_CELL: &str = "—";

/// Keeps the successfully derived cells of a paradigm.
pub fn paradigm_cells(p: &Paradigm) -> BTreeMap<FormCode, Vec<GaelicWord>> {
    p.iter()
        .filter_map(|(f, r)| r.as_ref().ok().map(|ws| (*f, ws.clone())))
        .collect()
}

type RowSpec = (&'static str, [Option<FormCode>; 3]);

const NOUN_ROWS: [(&str, [FormCode; 2]); 4] = [
    ("nom.", [FormCode::Ns, FormCode::Np]),
    ("gen.", [FormCode::Gs, FormCode::Gp]),
    ("dat.", [FormCode::Ds, FormCode::Dp]),
    ("voc.", [FormCode::Vs, FormCode::Vp]),
];

const VERB_ROWS: [RowSpec; 15] = {
    use FormCode::*;
    [
        ("stem", [Some(Imp2s), None, None]),
        ("verbal noun", [Some(Vn), None, None]),
        ("past part.", [Some(PastP), None, None]),
        ("past", [Some(PastInd), Some(PastPass), Some(PastDep)]),
        ("future", [Some(FutInd), Some(FutPass), Some(FutDep)]),
        ("cond. 1s", [Some(Cond1sInd), Some(CondPass), Some(Cond1sDep)]),
        ("cond. 1p", [Some(Cond1pInd), Some(CondPass), Some(Cond1pDep)]),
        ("cond. 2&3", [Some(Cond23Ind), Some(CondPass), Some(Cond23Dep)]),
        ("rel. fut.", [Some(RelFut), Some(RelFutPass), None]),
        ("imp. 1s", [Some(Imp1s), Some(ImpPass), None]),
        ("imp. 2s", [Some(Imp2s), Some(ImpPass), None]),
        ("imp. 3s", [Some(Imp3s), Some(ImpPass), None]),
        ("imp. 1p", [Some(Imp1p), Some(ImpPass), None]),
        ("imp. 2p", [Some(Imp2p), Some(ImpPass), None]),
        ("imp. 3p", [Some(Imp3p), Some(ImpPass), None]),
    ]
};

fn cell_text(cells: &BTreeMap<FormCode, Vec<GaelicWord>>, form: FormCode) -> String {
    match cells.get(&form) {
        Some(ws) if !ws.is_empty() => ws.iter().map(GaelicWord::as_str).collect::<Vec<_>>().join(" "),
        _ => MISSING_CELL.to_string(),
    }
}

/// Lays a paradigm out as a table. A non-empty `title` is printed on the line
/// above it.
pub fn render_paradigm(
    title: &str,
    cells: &BTreeMap<FormCode, Vec<GaelicWord>>,
    layout: Layout,
    style: TableStyle,
) -> Result<String, RenderError> {
    if let Some(&form) = cells.keys().find(|f| f.pos() != layout.pos()) {
        return Err(RenderError::LayoutMismatch { form, layout });
    }
    let s = |x: &str| x.to_string();
    let spec = match layout {
        Layout::NounTable => TableRenderSpec {
            columns: vec![s("case"), s("singular"), s("plural")],
            rows: NOUN_ROWS
                .iter()
                .map(|(label, forms)| {
                    std::iter::once(s(label))
                        .chain(forms.iter().map(|f| cell_text(cells, *f)))
                        .collect()
                })
                .collect(),
            style,
        },
        Layout::VerbTable => TableRenderSpec {
            columns: vec![s("form"), s("indep. active"), s("indep. passive"), s("dep. active")],
            rows: VERB_ROWS
                .iter()
                .map(|(label, forms)| {
                    std::iter::once(s(label))
                        .chain(
                            forms
                                .iter()
                                .map(|f| f.map_or_else(String::new, |f| cell_text(cells, f))),
                        )
                        .collect()
                })
                .collect(),
            style,
        },
        Layout::AdjRow => TableRenderSpec {
            columns: vec![s("form"), s("positive"), s("lenited"), s("comparative")],
            rows: vec![vec![
                s("adj."),
                cell_text(cells, FormCode::PosAdj),
                cell_text(cells, FormCode::PosLenited),
                cell_text(cells, FormCode::Cp),
            ]],
            style,
        },
    };
    let table = spec.render()?;
    Ok(if title.is_empty() {
        table
    } else {
        format!("{title}\n{table}")
    })
}
