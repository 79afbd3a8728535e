//! Definition files: a `[field]` block and either a `[motive]` block with the
//! matrices A0..Ak or a `[lattice]` block with generator vectors. Entries are strings
//! in the literal grammar.

use std::collections::BTreeMap;
use std::fmt::Write;
use std::sync::Arc;

use serde::Deserialize;
use toml::Spanned;

use super::expr::{self, SyntaxError};
use crate::base_arith::gf::Field;
use crate::base_arith::matrix::Mat;
use crate::base_arith::rat::ThetaRat;
use crate::base_arith::spec::FieldSpec;
use crate::cinf_series::{Cinf, CinfConfig, Ctx};
use crate::error::{Error, Result};
use crate::tmotive_core::ArithMotive;

type RawMatrix = Vec<Vec<Spanned<String>>>;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FieldBlock {
    p: u32,
    e: Option<u32>,
    modulus: Option<Vec<u32>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMotive {
    field: FieldBlock,
    motive: BTreeMap<Spanned<String>, RawMatrix>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LatticeBlock {
    ext: Option<u32>,
    generators: RawMatrix,
    ordering: Option<Vec<usize>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ActionBlock {
    g: RawMatrix,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLattice {
    field: FieldBlock,
    lattice: LatticeBlock,
    action: Option<ActionBlock>,
}

/// 1-based line and column (in characters) of a byte offset.
pub fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let offset = offset.min(text.len());
    let before = &text[..offset];
    let line = before.matches('\n').count() + 1;
    let start = before.rfind('\n').map(|i| i + 1).unwrap_or(0);
    (line, before[start..].chars().count() + 1)
}

fn parse_error(text: &str, offset: usize, msg: impl Into<String>) -> Error {
    let (line, col) = line_col(text, offset);
    Error::Parse { line, col, msg: msg.into() }
}

fn from_toml<'de, T: Deserialize<'de>>(text: &'de str) -> Result<T> {
    toml::from_str(text).map_err(|e| {
        let at = e.span().map(|s| s.start).unwrap_or(0);
        parse_error(text, at, e.message().trim())
    })
}

/// Offset of the string contents: the value span starts at the opening quote.
fn inner_offset(s: &Spanned<String>, e: &SyntaxError) -> usize {
    s.span().start + 1 + e.pos
}

fn field_spec(b: &FieldBlock) -> Result<FieldSpec> {
    FieldSpec::new(b.p, b.e.unwrap_or(1), b.modulus.clone())
}

fn rat_matrix(text: &str, f: &Arc<Field>, raw: &RawMatrix) -> Result<Mat<ThetaRat>> {
    let rows = raw
        .iter()
        .map(|row| {
            row.iter()
                .map(|s| expr::parse_rat(f, s.get_ref()).map_err(|e| parse_error(text, inner_offset(s, &e), e.msg)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Mat::from_rows(rows, &ThetaRat::zero(f.clone()))
}

/// Read and validate a t-motive definition.
pub fn parse_motive(text: &str) -> Result<ArithMotive> {
    let raw: RawMotive = from_toml(text)?;
    let spec = field_spec(&raw.field)?;
    let f = spec.fq();
    let count = raw.motive.len();
    let mut slots: Vec<Option<&RawMatrix>> = vec![None; count];
    for (key, m) in &raw.motive {
        let index = key
            .get_ref()
            .strip_prefix('A')
            .filter(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()) && (d.len() == 1 || !d.starts_with('0')))
            .and_then(|d| d.parse::<usize>().ok())
            .filter(|&i| i < count);
        match index {
            Some(i) => slots[i] = Some(m),
            None => {
                let msg = format!("expected keys A0..A{}, found {}", count - 1, key.get_ref());
                return Err(parse_error(text, key.span().start, msg));
            }
        }
    }
    let mut mats = Vec::new();
    for m in slots.into_iter().flatten() {
        mats.push(rat_matrix(text, &f, m)?);
    }
    ArithMotive::new(&spec, mats)
}

fn emit_field(out: &mut String, spec: &FieldSpec) {
    writeln!(out, "[field]\np = {}\ne = {}", spec.p, spec.e).unwrap();
    if let Some(m) = &spec.modulus {
        let parts: Vec<String> = m.iter().map(|c| c.to_string()).collect();
        writeln!(out, "modulus = [{}]", parts.join(", ")).unwrap();
    }
}

fn emit_matrix<S: std::fmt::Display + crate::base_arith::scalar::Scalar>(m: &Mat<S>) -> String {
    let rows: Vec<String> = m
        .to_rows()
        .iter()
        .map(|r| {
            let cells: Vec<String> = r.iter().map(|x| format!("\"{x}\"")).collect();
            format!("[{}]", cells.join(", "))
        })
        .collect();
    format!("[{}]", rows.join(", "))
}

/// The normalized definition file of a motive.
pub fn emit_motive(m: &ArithMotive) -> String {
    let mut out = String::new();
    emit_field(&mut out, m.spec());
    out.push_str("\n[motive]\n");
    for (i, a) in m.coeffs().iter().enumerate() {
        writeln!(out, "A{i} = {}", emit_matrix(a)).unwrap();
    }
    out
}

pub struct LatticeFile {
    pub ctx: Arc<Ctx>,
    pub generators: Vec<Vec<Cinf>>,
    pub ordering: Option<Vec<usize>>,
    pub action: Option<Mat<ThetaRat>>,
}

/// Read a lattice definition. `ext` sets the coefficient field F_(q^ext) that `w` generates.
pub fn parse_lattice(text: &str, config: &CinfConfig) -> Result<LatticeFile> {
    let raw: RawLattice = from_toml(text)?;
    let spec = field_spec(&raw.field)?;
    let ctx = Ctx::new(&spec, raw.lattice.ext.unwrap_or(1), config)?;
    let generators = raw
        .lattice
        .generators
        .iter()
        .map(|row| {
            row.iter()
                .map(|s| {
                    expr::parse_cinf(&ctx, s.get_ref()).map_err(|e| parse_error(text, inner_offset(s, &e), e.msg))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let action = match &raw.action {
        Some(a) => Some(rat_matrix(text, &spec.fq(), &a.g)?),
        None => None,
    };
    Ok(LatticeFile { ctx, generators, ordering: raw.lattice.ordering, action })
}

#[cfg(test)]
mod tests {
    use super::*;

    const CARLITZ: &str = "[field]\np = 2\n\n[motive]\nA0 = [[\"t\"]]\nA1 = [[\"1\"]]\n";

    #[test]
    fn round_trip() {
        let m = parse_motive(CARLITZ).unwrap();
        assert_eq!(m.n(), 1);
        let again = parse_motive(&emit_motive(&m)).unwrap();
        assert_eq!(again.coeffs(), m.coeffs());
        assert_eq!(emit_motive(&again), emit_motive(&m));
    }

    #[test]
    fn errors_carry_positions() {
        let bad = CARLITZ.replace("[[\"1\"]]", "[[\"1 + x\"]]");
        match parse_motive(&bad).unwrap_err() {
            Error::Parse { line, col, .. } => assert_eq!((line, col), (6, 13)),
            e => panic!("{e:?}"),
        }
        let broken = CARLITZ.replace("p = 2", "p = ");
        assert!(matches!(parse_motive(&broken), Err(Error::Parse { line: 2, .. })));
        let not_nil = CARLITZ.replace("\"t\"", "\"t+1\"");
        assert_eq!(parse_motive(&not_nil).unwrap_err(), Error::NotNilpotent);
    }

    #[test]
    fn lattice_block() {
        let text = "[field]\np = 2\n[lattice]\next = 2\ngenerators = [[\"1\"], [\"w\"]]\n";
        let l = parse_lattice(text, &CinfConfig::default()).unwrap();
        assert_eq!(l.generators.len(), 2);
        assert_eq!(l.generators[1][0].to_string(), "w");
    }
}
