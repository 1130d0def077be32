use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use super::{parse_expression, ParseError};
use crate::algebra::BinomialRationalFn;
use crate::lattice::{IntMatrix, LatticeVector, SkewForm};
use crate::mutation::{fn_mutate_iter, CSeed, ExchangeCollection, MutationError, VSeed};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeedError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: potential {source}")]
    Potential { line: usize, source: ParseError },
    #[error("missing `{0}`")]
    Missing(&'static str),
    #[error(transparent)]
    Mutation(#[from] MutationError),
}

fn syntax(line: usize, message: impl Into<String>) -> SeedError {
    SeedError::Syntax { line, message: message.into() }
}

/// How the form was written: rank-two shorthand or a full matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FormSpec {
    K(i64),
    Matrix(IntMatrix),
}

impl FormSpec {
    pub fn skew_form(&self) -> SkewForm {
        match self {
            FormSpec::K(k) => SkewForm::rank2(*k),
            FormSpec::Matrix(m) => SkewForm::new(m.clone()).expect("validated on parse"),
        }
    }
}

/// Contents of a seed file.
///
/// ```text
/// # comment
/// name = opposite pair
/// rank = 2
/// form = k 1
/// vector = (0,-1) x 1
/// vector = (0,1) x 1
/// potential = x2^-1 + x1*x2^-1 + x2 + x1*x2
/// ```
///
/// Rendering is canonical: comments first, then the keys in the order above, vectors
/// sorted and merged, the potential in normal form.
#[derive(Debug, Clone, PartialEq)]
pub struct SeedDocument {
    /// Comment lines without the leading `#`.
    pub comments: Vec<String>,
    pub name: Option<String>,
    pub rank: usize,
    pub form: FormSpec,
    pub vectors: Vec<(LatticeVector, u32)>,
    pub potential: Option<BinomialRationalFn>,
}

impl SeedDocument {
    pub fn parse(text: &str) -> Result<Self, SeedError> {
        let mut comments = Vec::new();
        let mut name = None;
        let mut rank = None;
        let mut form_text = None;
        let mut vectors = Vec::new();
        let mut potential_text = None;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() {
                continue;
            }
            if let Some(c) = trimmed.strip_prefix('#') {
                comments.push(c.to_string());
                continue;
            }
            let (key, value) = trimmed
                .split_once('=')
                .ok_or_else(|| syntax(line, "expected `key = value`"))?;
            let value = value.trim();
            match key.trim() {
                "name" => name = Some(value.to_string()),
                "rank" => {
                    let r: usize = value.parse().map_err(|_| syntax(line, "rank must be a positive integer"))?;
                    if r == 0 {
                        return Err(syntax(line, "rank must be positive"));
                    }
                    rank = Some(r);
                }
                "form" => form_text = Some((line, value.to_string())),
                "vector" => vectors.push((line, value.to_string())),
                "potential" => potential_text = Some((line, value.to_string())),
                other => return Err(syntax(line, format!("unknown key `{other}`"))),
            }
        }
        let rank = rank.ok_or(SeedError::Missing("rank"))?;
        let (fline, ftext) = form_text.ok_or(SeedError::Missing("form"))?;
        let form = parse_form(&ftext, rank).map_err(|m| syntax(fline, m))?;

        let mut collection = ExchangeCollection::new(rank);
        for (line, t) in vectors {
            let (v, m) = parse_vector(&t).map_err(|msg| syntax(line, msg))?;
            if v.rank() != rank {
                return Err(syntax(line, format!("vector has rank {}, expected {rank}", v.rank())));
            }
            if v.is_zero() {
                return Err(syntax(line, "zero vector"));
            }
            collection.insert(v, m)?;
        }
        let vectors = collection.iter().map(|(v, m)| (v.clone(), m)).collect();
        let potential = match potential_text {
            Some((line, t)) => Some(
                parse_expression(&t, rank)
                    .map_err(|source| SeedError::Potential { line, source })?
                    .into_fn(),
            ),
            None => None,
        };
        Ok(SeedDocument { comments, name, rank, form, vectors, potential })
    }

    pub fn render(&self) -> String {
        self.to_string()
    }

    pub fn skew_form(&self) -> SkewForm {
        self.form.skew_form()
    }

    pub fn collection(&self) -> ExchangeCollection {
        ExchangeCollection::from_entries(self.rank, self.vectors.iter().cloned()).expect("validated on parse")
    }

    pub fn cseed(&self) -> CSeed {
        CSeed::base(self.skew_form(), self.collection()).expect("validated on parse")
    }

    pub fn vseed(&self) -> Option<VSeed> {
        let p = self.potential.clone()?;
        Some(VSeed::new(self.skew_form(), self.collection(), p).expect("validated on parse"))
    }

    /// Mutates `times` times at `d`; the potential, if any, is mutated along.
    pub fn mutate(&self, d: &LatticeVector, times: u32) -> Result<SeedDocument, SeedError> {
        let form = self.skew_form();
        let mut c = self.collection();
        for _ in 0..times {
            c = c.mutate(d, &form)?;
        }
        let potential = match &self.potential {
            Some(p) => Some(fn_mutate_iter(p, d, &form, times)?),
            None => None,
        };
        Ok(SeedDocument {
            comments: self.comments.clone(),
            name: self.name.clone(),
            rank: self.rank,
            form: self.form.clone(),
            vectors: c.iter().map(|(v, m)| (v.clone(), m)).collect(),
            potential,
        })
    }
}

impl FromStr for SeedDocument {
    type Err = SeedError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SeedDocument::parse(s)
    }
}

fn render_row(row: &[i64]) -> String {
    let parts: Vec<String> = row.iter().map(i64::to_string).collect();
    parts.join(",")
}

impl fmt::Display for SeedDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.comments {
            writeln!(f, "#{c}")?;
        }
        if let Some(n) = &self.name {
            writeln!(f, "name = {n}")?;
        }
        writeln!(f, "rank = {}", self.rank)?;
        match &self.form {
            FormSpec::K(k) => writeln!(f, "form = k {k}")?,
            FormSpec::Matrix(m) => {
                let rows: Vec<String> = m.as_rows().iter().map(|r| format!("[{}]", render_row(r))).collect();
                writeln!(f, "form = [{}]", rows.join(","))?
            }
        }
        for (v, m) in &self.vectors {
            writeln!(f, "vector = ({}) x {m}", render_row(v.coords()))?;
        }
        if let Some(p) = &self.potential {
            writeln!(f, "potential = {p}")?;
        }
        Ok(())
    }
}

fn parse_ints(s: &str) -> Result<Vec<i64>, String> {
    s.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| format!("bad integer `{}`", t.trim())))
        .collect()
}

fn parse_form(text: &str, rank: usize) -> Result<FormSpec, String> {
    if let Some(k) = text.strip_prefix('k') {
        if rank != 2 {
            return Err("`form = k <int>` needs rank 2".into());
        }
        return k.trim().parse().map(FormSpec::K).map_err(|_| "expected `k <integer>`".into());
    }
    let inner = text
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or("expected `k <int>` or `[[..],..]`")?;
    let mut rows = Vec::new();
    let mut rest = inner.trim();
    while !rest.is_empty() {
        let body = rest.strip_prefix('[').ok_or("expected `[` starting a row")?;
        let end = body.find(']').ok_or("unclosed row")?;
        rows.push(parse_ints(&body[..end])?);
        rest = body[end + 1..].trim_start();
        rest = rest.strip_prefix(',').unwrap_or(rest).trim_start();
    }
    if rows.len() != rank || rows.iter().any(|r| r.len() != rank) {
        return Err(format!("form must be {rank}×{rank}"));
    }
    let m = IntMatrix::from_rows(rows);
    if !m.is_skew_symmetric() {
        return Err("form is not skew-symmetric".into());
    }
    Ok(FormSpec::Matrix(m))
}

fn parse_vector(text: &str) -> Result<(LatticeVector, u32), String> {
    let body = text.strip_prefix('(').ok_or("expected `(`")?;
    let end = body.find(')').ok_or("expected `)`")?;
    let v = LatticeVector::new(parse_ints(&body[..end])?);
    let rest = body[end + 1..].trim();
    let m = if rest.is_empty() {
        1
    } else {
        let m = rest.strip_prefix('x').ok_or("expected `x <multiplicity>`")?;
        m.trim().parse::<u32>().map_err(|_| "bad multiplicity".to_string())?
    };
    if m == 0 {
        return Err("multiplicity must be positive".into());
    }
    Ok((v, m))
}
