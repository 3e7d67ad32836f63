//! Named integer sequences drawn from the `T_n(z)` family, and the OEIS
//! b-file text format used to exchange them.
//!
//! A b-file has one `index value` pair per line separated by a single space.
//! Lines starting with `#` are comments and blank lines are ignored; indices
//! must be consecutive and ascending.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::exact::ExactInteger;
use crate::sequences::tn_power_sum;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OeisError {
    #[error("unknown sequence id {0:?}")]
    UnknownId(String),
    #[error("line {line}: expected two integer tokens, got {text:?}")]
    MalformedLine { line: usize, text: String },
    #[error("line {line}: index {found} does not follow {expected_after}")]
    NonConsecutive {
        line: usize,
        expected_after: i64,
        found: i64,
    },
    #[error("line {line}: cannot parse integer {token:?}")]
    BadInteger { line: usize, token: String },
    #[error("b-file contains no terms")]
    Empty,
    #[error("index ranges {generated:?} and {reference:?} do not overlap")]
    Disjoint {
        generated: (i64, i64),
        reference: (i64, i64),
    },
}

/// Sequences with a closed description as `T_k(w)` for a fixed `w`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SequenceId {
    /// Derangements, `T_k(-k-1)`.
    A000166,
    /// Connected functions, `T_k(1)`.
    A001865,
    /// Normalized total height of rooted trees, `T_k(2)`.
    A001863,
    /// Trees rooted at 1 with 2 below 3, `T_k(3)`.
    A129137,
}

impl SequenceId {
    pub const ALL: [SequenceId; 4] = [
        SequenceId::A000166,
        SequenceId::A001865,
        SequenceId::A001863,
        SequenceId::A129137,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SequenceId::A000166 => "A000166",
            SequenceId::A001865 => "A001865",
            SequenceId::A001863 => "A001863",
            SequenceId::A129137 => "A129137",
        }
    }
}

impl fmt::Display for SequenceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SequenceId {
    type Err = OeisError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SequenceId::ALL
            .into_iter()
            .find(|id| id.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| OeisError::UnknownId(s.to_string()))
    }
}

/// Offset-indexed run of exact terms: `terms[i]` sits at index `offset + i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceTable {
    pub id: String,
    pub offset: i64,
    pub terms: Vec<ExactInteger>,
}

impl SequenceTable {
    pub fn last_index(&self) -> i64 {
        self.offset + self.terms.len() as i64 - 1
    }

    pub fn get(&self, index: i64) -> Option<&ExactInteger> {
        let pos = index.checked_sub(self.offset)?;
        usize::try_from(pos).ok().and_then(|p| self.terms.get(p))
    }
}

/// First `count` terms of `id`, indexed from 0.
pub fn generate(id: SequenceId, count: usize) -> SequenceTable {
    let terms = match id {
        SequenceId::A000166 => column(count, |k| -i64::from(k) - 1),
        SequenceId::A001865 => column(count, |_| 1),
        SequenceId::A001863 => column(count, |_| 2),
        SequenceId::A129137 => column(count, |_| 3),
    };
    SequenceTable {
        id: id.to_string(),
        offset: 0,
        terms,
    }
}

/// `T_k(w(k))` for `k = 0..count`.
fn column(count: usize, w: impl Fn(u32) -> i64) -> Vec<ExactInteger> {
    (0..count as u32)
        .map(|k| {
            let z = BigRational::from_integer(BigInt::from(w(k)));
            tn_power_sum(k, &z).to_integer()
        })
        .collect()
}

/// Renders `table` with a `# <id>` header line.
pub fn emit_bfile(table: &SequenceTable) -> String {
    let mut out = String::new();
    writeln!(out, "# {}", table.id).unwrap();
    for (i, term) in table.terms.iter().enumerate() {
        writeln!(out, "{} {}", table.offset + i as i64, term).unwrap();
    }
    out
}

/// Parses b-file text. The id is taken from the first comment line whose
/// first word looks like an A-number; otherwise it is left empty.
pub fn parse_bfile(text: &str) -> Result<SequenceTable, OeisError> {
    let mut id = None;
    let mut offset = None;
    let mut last = 0i64;
    let mut terms = Vec::new();
    for (line_no, raw) in text.lines().enumerate() {
        let line_no = line_no + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            if id.is_none() {
                id = comment
                    .split_whitespace()
                    .next()
                    .filter(|w| looks_like_a_number(w))
                    .map(str::to_string);
            }
            continue;
        }
        let mut tokens = line.split_whitespace();
        let (Some(index), Some(value), None) = (tokens.next(), tokens.next(), tokens.next()) else {
            return Err(OeisError::MalformedLine {
                line: line_no,
                text: raw.to_string(),
            });
        };
        let bad = |token: &str| OeisError::BadInteger {
            line: line_no,
            token: token.to_string(),
        };
        let index: i64 = index.parse().map_err(|_| bad(index))?;
        let value = BigInt::from_str(value).map_err(|_| bad(value))?;
        match offset {
            None => offset = Some(index),
            Some(_) if index != last + 1 => {
                return Err(OeisError::NonConsecutive {
                    line: line_no,
                    expected_after: last,
                    found: index,
                })
            }
            Some(_) => {}
        }
        last = index;
        terms.push(value);
    }
    let offset = offset.ok_or(OeisError::Empty)?;
    Ok(SequenceTable {
        id: id.unwrap_or_default(),
        offset,
        terms,
    })
}

fn looks_like_a_number(word: &str) -> bool {
    word.len() == 7 && word.starts_with('A') && word[1..].bytes().all(|b| b.is_ascii_digit())
}

/// How reference indices were mapped onto generated ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Alignment {
    /// Equal offsets; compared index by index.
    ByIndex,
    /// Offsets differ; reference index `r` was matched to generated index `r - shift`.
    ByValuePrefix { shift: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    /// Index in the generated table's numbering.
    pub index: i64,
    pub generated: ExactInteger,
    pub reference: ExactInteger,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompareReport {
    pub alignment: Alignment,
    /// Number of indices compared.
    pub compared: usize,
    pub mismatches: Vec<Mismatch>,
}

impl CompareReport {
    pub fn is_match(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares two tables on their overlap.
///
/// With equal offsets the overlap is by index. When the reference declares a
/// different starting index, the shift is chosen that lines up the longest
/// run of equal leading values, so a reference using another offset
/// convention still lines up with the generated prefix.
pub fn compare(
    generated: &SequenceTable,
    reference: &SequenceTable,
) -> Result<CompareReport, OeisError> {
    let disjoint = || OeisError::Disjoint {
        generated: (generated.offset, generated.last_index()),
        reference: (reference.offset, reference.last_index()),
    };
    if generated.terms.is_empty() || reference.terms.is_empty() {
        return Err(disjoint());
    }
    if generated.offset == reference.offset {
        let report = compare_with_shift(generated, reference, 0, Alignment::ByIndex);
        return Ok(report);
    }

    let mut best: Option<(usize, i64)> = None;
    let mut candidates = vec![0i64];
    for (g, gv) in generated.terms.iter().enumerate() {
        for (r, rv) in reference.terms.iter().enumerate() {
            if gv == rv && (g == 0 || r == 0) {
                candidates.push((reference.offset + r as i64) - (generated.offset + g as i64));
            }
        }
    }
    candidates.sort_unstable();
    candidates.dedup();
    for shift in candidates {
        let run = leading_run(generated, reference, shift);
        let better = match best {
            None => run > 0,
            Some((best_run, best_shift)) => {
                run > best_run || (run == best_run && shift.abs() < best_shift.abs())
            }
        };
        if better {
            best = Some((run, shift));
        }
    }
    match best {
        Some((_, shift)) => {
            let alignment = if shift == 0 {
                Alignment::ByIndex
            } else {
                Alignment::ByValuePrefix { shift }
            };
            Ok(compare_with_shift(generated, reference, shift, alignment))
        }
        None => {
            let report = compare_with_shift(generated, reference, 0, Alignment::ByIndex);
            if report.compared == 0 {
                Err(disjoint())
            } else {
                Ok(report)
            }
        }
    }
}

/// Number of equal values from the start of the overlap under `shift`.
fn leading_run(generated: &SequenceTable, reference: &SequenceTable, shift: i64) -> usize {
    overlap(generated, reference, shift)
        .take_while(|(_, g, r)| g == r)
        .count()
}

fn overlap<'a>(
    generated: &'a SequenceTable,
    reference: &'a SequenceTable,
    shift: i64,
) -> impl Iterator<Item = (i64, &'a ExactInteger, &'a ExactInteger)> + 'a {
    (generated.offset..=generated.last_index()).filter_map(move |index| {
        let g = generated.get(index)?;
        let r = reference.get(index + shift)?;
        Some((index, g, r))
    })
}

fn compare_with_shift(
    generated: &SequenceTable,
    reference: &SequenceTable,
    shift: i64,
    alignment: Alignment,
) -> CompareReport {
    let mut compared = 0;
    let mut mismatches = Vec::new();
    for (index, g, r) in overlap(generated, reference, shift) {
        compared += 1;
        if g != r {
            mismatches.push(Mismatch {
                index,
                generated: g.clone(),
                reference: r.clone(),
            });
        }
    }
    CompareReport {
        alignment,
        compared,
        mismatches,
    }
}
