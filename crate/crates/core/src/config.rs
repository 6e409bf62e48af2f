//! Group-spec configuration: a line-oriented sectioned text format with
//! a small expression grammar for rational-function matrix entries.
//!
//! ```text
//! [group]
//! p = 2
//! dim = 2
//!
//! [norms]
//! norm = t_adic
//! norm = degree
//! norm = finite_place(t^2+t+1)
//!
//! [generators]
//! a = [[1, t], [0, 1]]
//!
//! [subgroup swap]
//! element = [[1,0],[0,1]]
//! element = [[0,1],[1,0]]
//!
//! [series heis]
//! factor = 1 []
//! factor = 2 [[2,0]]
//!
//! [window]
//! radius = 3
//! cap = 20000
//! scales = 1,2,4
//! ```

use std::collections::HashSet;
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{GroupElement, Mat, PrimeField, RatFunc};
use crate::norms::{MetricProfile, NormSpec};
use crate::structure::{FactorPresentation, NormalSeries};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("syntax error at line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("line {line}: {msg}")]
    Semantic { line: usize, msg: String },
    #[error("missing required section [{0}]")]
    MissingSection(&'static str),
    #[error("generator {name} is singular")]
    SingularGenerator { name: String },
    #[error("subgroup {name} is not closed: {msg}")]
    SubgroupNotClosed { name: String, msg: String },
}

/// Window and scale parameters for experiments.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WindowParams {
    pub radius: u32,
    pub cap: usize,
    pub scales: Vec<u64>,
}

impl Default for WindowParams {
    fn default() -> Self {
        WindowParams {
            radius: 3,
            cap: 20_000,
            scales: vec![1, 2, 4],
        }
    }
}

/// A parsed and validated group specification.
#[derive(Clone, Debug)]
pub struct GroupSpec {
    pub field: PrimeField,
    pub dim: usize,
    pub profile: MetricProfile,
    pub generators: Vec<(String, GroupElement)>,
    pub subgroups: Vec<(String, Vec<GroupElement>)>,
    pub series: Vec<(String, NormalSeries)>,
    pub window: WindowParams,
}

impl GroupSpec {
    pub fn parse(text: &str) -> Result<GroupSpec, ConfigError> {
        parse_spec(text)
    }

    pub fn generator_elements(&self) -> Vec<GroupElement> {
        self.generators.iter().map(|(_, g)| g.clone()).collect()
    }

    /// Canonical serialization; parsing it back reproduces the spec.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "[group]");
        let _ = writeln!(out, "p = {}", self.field.modulus());
        let _ = writeln!(out, "dim = {}", self.dim);
        let _ = writeln!(out, "\n[norms]");
        for norm in self.profile.norms() {
            match norm {
                NormSpec::TAdic => {
                    let _ = writeln!(out, "norm = t_adic");
                }
                NormSpec::Degree => {
                    let _ = writeln!(out, "norm = degree");
                }
                NormSpec::FinitePlace(pi) => {
                    let _ = writeln!(out, "norm = finite_place({pi})");
                }
            }
        }
        let _ = writeln!(out, "\n[generators]");
        for (name, g) in &self.generators {
            let _ = writeln!(out, "{name} = {}", g.mat());
        }
        for (name, elements) in &self.subgroups {
            let _ = writeln!(out, "\n[subgroup {name}]");
            for e in elements {
                let _ = writeln!(out, "element = {}", e.mat());
            }
        }
        for (name, series) in &self.series {
            let _ = writeln!(out, "\n[series {name}]");
            for factor in series.factors() {
                let rels: Vec<String> = factor
                    .relations
                    .iter()
                    .map(|row| {
                        let entries: Vec<String> = row.iter().map(|v| v.to_string()).collect();
                        format!("[{}]", entries.join(","))
                    })
                    .collect();
                let _ = writeln!(
                    out,
                    "factor = {} [{}]",
                    factor.generators,
                    rels.join(",")
                );
            }
        }
        let _ = writeln!(out, "\n[window]");
        let _ = writeln!(out, "radius = {}", self.window.radius);
        let _ = writeln!(out, "cap = {}", self.window.cap);
        let scales: Vec<String> = self.window.scales.iter().map(|s| s.to_string()).collect();
        let _ = writeln!(out, "scales = {}", scales.join(","));
        out
    }
}

// ---------------------------------------------------------------------
// expression parser for rational-function entries
// ---------------------------------------------------------------------

struct ExprParser<'a> {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    col_offset: usize,
    field: PrimeField,
    text: &'a str,
}

impl<'a> ExprParser<'a> {
    fn new(text: &'a str, line: usize, col_offset: usize, field: PrimeField) -> Self {
        ExprParser {
            chars: text.chars().collect(),
            pos: 0,
            line,
            col_offset,
            field,
            text,
        }
    }

    fn err(&self, msg: impl Into<String>) -> ConfigError {
        ConfigError::Syntax {
            line: self.line,
            col: self.col_offset + self.pos + 1,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.peek().map_or(false, |c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn parse_integer(&mut self) -> Result<u64, ConfigError> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().map_or(false, |c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| self.err("integer out of range"))
    }

    /// expr := term (('+'|'-') term)*
    fn parse_expr(&mut self) -> Result<RatFunc, ConfigError> {
        let mut acc = self.parse_term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.parse_term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.parse_term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    /// term := factor (('*'|'/') factor)*
    fn parse_term(&mut self) -> Result<RatFunc, ConfigError> {
        let mut acc = self.parse_factor()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.parse_factor()?);
            } else if self.eat('/') {
                let pos = self.pos;
                let rhs = self.parse_factor()?;
                acc = acc
                    .div(&rhs)
                    .map_err(|_| self.err_at(pos, "division by the zero rational function"))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn err_at(&self, pos: usize, msg: &str) -> ConfigError {
        ConfigError::Syntax {
            line: self.line,
            col: self.col_offset + pos + 1,
            msg: msg.into(),
        }
    }

    /// factor := '-'* power
    fn parse_factor(&mut self) -> Result<RatFunc, ConfigError> {
        if self.eat('-') {
            return Ok(self.parse_factor()?.neg());
        }
        self.parse_power()
    }

    /// power := atom ('^' '-'? integer)?
    fn parse_power(&mut self) -> Result<RatFunc, ConfigError> {
        let base = self.parse_atom()?;
        if self.eat('^') {
            let negative = self.eat('-');
            let pos = self.pos;
            let exp = self.parse_integer()? as i64;
            let exp = if negative { -exp } else { exp };
            return base
                .pow(exp)
                .map_err(|_| self.err_at(pos, "zero cannot be raised to a negative power"));
        }
        Ok(base)
    }

    /// atom := integer | 't' | '(' expr ')'
    fn parse_atom(&mut self) -> Result<RatFunc, ConfigError> {
        self.skip_ws();
        match self.peek() {
            Some('t') => {
                self.pos += 1;
                Ok(RatFunc::t(self.field))
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.parse_expr()?;
                if !self.eat(')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let value = self.parse_integer()?;
                Ok(RatFunc::constant(self.field.elem(value)))
            }
            Some(c) => Err(self.err(format!("unexpected character {c:?}"))),
            None => Err(self.err("unexpected end of expression")),
        }
    }

    fn finished(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.chars.len()
    }

    fn remainder_is(&self, c: char) -> bool {
        self.text[self.char_byte_pos()..].trim_start().starts_with(c)
    }

    fn char_byte_pos(&self) -> usize {
        self.chars[..self.pos].iter().map(|c| c.len_utf8()).sum()
    }
}

/// Parses a single rational-function expression.
pub fn parse_ratfunc(text: &str, field: PrimeField, line: usize) -> Result<RatFunc, ConfigError> {
    let mut p = ExprParser::new(text, line, 0, field);
    let value = p.parse_expr()?;
    if !p.finished() {
        return Err(p.err("trailing input after expression"));
    }
    Ok(value)
}

/// Parses a matrix literal [[e, e], [e, e]].
pub fn parse_matrix(text: &str, field: PrimeField, line: usize) -> Result<Mat, ConfigError> {
    let mut p = ExprParser::new(text, line, 0, field);
    if !p.eat('[') {
        return Err(p.err("expected '[' to open the matrix"));
    }
    let mut rows: Vec<Vec<RatFunc>> = Vec::new();
    loop {
        if !p.eat('[') {
            return Err(p.err("expected '[' to open a row"));
        }
        let mut row = Vec::new();
        loop {
            row.push(p.parse_expr()?);
            if p.eat(',') {
                if p.remainder_is(']') {
                    return Err(p.err("trailing comma in row"));
                }
                continue;
            }
            break;
        }
        if !p.eat(']') {
            return Err(p.err("expected ']' to close the row"));
        }
        rows.push(row);
        if p.eat(',') {
            continue;
        }
        break;
    }
    if !p.eat(']') {
        return Err(p.err("expected ']' to close the matrix"));
    }
    if !p.finished() {
        return Err(p.err("trailing input after matrix"));
    }
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(ConfigError::Semantic {
            line,
            msg: "matrix must be square".into(),
        });
    }
    Mat::from_rows(rows).map_err(|e| ConfigError::Semantic {
        line,
        msg: e.to_string(),
    })
}

// ---------------------------------------------------------------------
// sectioned config parser
// ---------------------------------------------------------------------

fn parse_spec(text: &str) -> Result<GroupSpec, ConfigError> {
    let mut field: Option<PrimeField> = None;
    let mut dim: Option<usize> = None;
    let mut norms: Vec<NormSpec> = Vec::new();
    let mut generators: Vec<(String, GroupElement)> = Vec::new();
    let mut subgroups: Vec<(String, Vec<GroupElement>)> = Vec::new();
    let mut series: Vec<(String, Vec<FactorPresentation>)> = Vec::new();
    let mut window = WindowParams::default();

    #[derive(PartialEq)]
    enum Section {
        None,
        Group,
        Norms,
        Generators,
        Subgroup(usize),
        Series(usize),
        Window,
    }
    let mut section = Section::None;

    for (line_no, raw) in text.lines().enumerate() {
        let line_no = line_no + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix('[') {
            let Some(name) = rest.strip_suffix(']') else {
                return Err(ConfigError::Syntax {
                    line: line_no,
                    col: raw.len(),
                    msg: "unterminated section header".into(),
                });
            };
            let name = name.trim();
            section = match name {
                "group" => Section::Group,
                "norms" => Section::Norms,
                "generators" => Section::Generators,
                "window" => Section::Window,
                _ => {
                    if let Some(sub) = name.strip_prefix("subgroup ") {
                        subgroups.push((sub.trim().to_string(), Vec::new()));
                        Section::Subgroup(subgroups.len() - 1)
                    } else if let Some(ser) = name.strip_prefix("series ") {
                        series.push((ser.trim().to_string(), Vec::new()));
                        Section::Series(series.len() - 1)
                    } else {
                        return Err(ConfigError::Semantic {
                            line: line_no,
                            msg: format!("unknown section [{name}]"),
                        });
                    }
                }
            };
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(ConfigError::Syntax {
                line: line_no,
                col: 1,
                msg: "expected 'key = value'".into(),
            });
        };
        let key = key.trim();
        let value = value.trim();
        match &section {
            Section::None => {
                return Err(ConfigError::Semantic {
                    line: line_no,
                    msg: "directive outside of any section".into(),
                });
            }
            Section::Group => match key {
                "p" => {
                    let p: u64 = value.parse().map_err(|_| ConfigError::Syntax {
                        line: line_no,
                        col: 1,
                        msg: format!("bad modulus {value:?}"),
                    })?;
                    field = Some(PrimeField::new(p).map_err(|_| ConfigError::Semantic {
                        line: line_no,
                        msg: format!("{p} is not prime"),
                    })?);
                }
                "dim" => {
                    dim = Some(value.parse().map_err(|_| ConfigError::Syntax {
                        line: line_no,
                        col: 1,
                        msg: format!("bad dimension {value:?}"),
                    })?);
                }
                _ => {
                    return Err(ConfigError::Semantic {
                        line: line_no,
                        msg: format!("unknown [group] key {key:?}"),
                    });
                }
            },
            Section::Norms => {
                if key != "norm" {
                    return Err(ConfigError::Semantic {
                        line: line_no,
                        msg: format!("unknown [norms] key {key:?}"),
                    });
                }
                let f = field.ok_or(ConfigError::MissingSection("group"))?;
                let norm = match value {
                    "t_adic" => NormSpec::TAdic,
                    "degree" => NormSpec::Degree,
                    other => {
                        let inner = other
                            .strip_prefix("finite_place(")
                            .and_then(|s| s.strip_suffix(')'))
                            .ok_or_else(|| ConfigError::Semantic {
                                line: line_no,
                                msg: format!("unknown norm {other:?}"),
                            })?;
                        let rf = parse_ratfunc(inner, f, line_no)?;
                        if !rf.is_polynomial() {
                            return Err(ConfigError::Semantic {
                                line: line_no,
                                msg: "finite place must be a polynomial".into(),
                            });
                        }
                        NormSpec::finite_place(rf.num().clone()).map_err(|e| {
                            ConfigError::Semantic {
                                line: line_no,
                                msg: e.to_string(),
                            }
                        })?
                    }
                };
                norms.push(norm);
            }
            Section::Generators => {
                let f = field.ok_or(ConfigError::MissingSection("group"))?;
                let mat = parse_matrix(value, f, line_no)?;
                if let Some(d) = dim {
                    if mat.dim() != d {
                        return Err(ConfigError::Semantic {
                            line: line_no,
                            msg: format!(
                                "generator {key} is {n}x{n}, expected {d}x{d}",
                                n = mat.dim()
                            ),
                        });
                    }
                }
                let g =
                    GroupElement::try_new(mat).map_err(|_| ConfigError::SingularGenerator {
                        name: key.to_string(),
                    })?;
                generators.push((key.to_string(), g));
            }
            Section::Subgroup(idx) => {
                if key != "element" {
                    return Err(ConfigError::Semantic {
                        line: line_no,
                        msg: format!("unknown [subgroup] key {key:?}"),
                    });
                }
                let f = field.ok_or(ConfigError::MissingSection("group"))?;
                let mat = parse_matrix(value, f, line_no)?;
                let g =
                    GroupElement::try_new(mat).map_err(|_| ConfigError::SingularGenerator {
                        name: format!("{} element", subgroups[*idx].0),
                    })?;
                subgroups[*idx].1.push(g);
            }
            Section::Series(idx) => {
                if key != "factor" {
                    return Err(ConfigError::Semantic {
                        line: line_no,
                        msg: format!("unknown [series] key {key:?}"),
                    });
                }
                let factor = parse_factor(value, line_no)?;
                series[*idx].1.push(factor);
            }
            Section::Window => match key {
                "radius" => {
                    window.radius = value.parse().map_err(|_| ConfigError::Syntax {
                        line: line_no,
                        col: 1,
                        msg: format!("bad radius {value:?}"),
                    })?;
                }
                "cap" => {
                    window.cap = value.parse().map_err(|_| ConfigError::Syntax {
                        line: line_no,
                        col: 1,
                        msg: format!("bad cap {value:?}"),
                    })?;
                }
                "scales" => {
                    let scales: Result<Vec<u64>, _> =
                        value.split(',').map(|s| s.trim().parse()).collect();
                    window.scales = scales.map_err(|_| ConfigError::Syntax {
                        line: line_no,
                        col: 1,
                        msg: format!("bad scale list {value:?}"),
                    })?;
                }
                _ => {
                    return Err(ConfigError::Semantic {
                        line: line_no,
                        msg: format!("unknown [window] key {key:?}"),
                    });
                }
            },
        }
    }

    let field = field.ok_or(ConfigError::MissingSection("group"))?;
    let dim = dim.ok_or(ConfigError::MissingSection("group"))?;
    if norms.is_empty() {
        return Err(ConfigError::MissingSection("norms"));
    }
    let profile = MetricProfile::new(norms).map_err(|e| ConfigError::Semantic {
        line: 0,
        msg: e.to_string(),
    })?;
    if generators.is_empty() {
        return Err(ConfigError::MissingSection("generators"));
    }
    for (name, g) in &generators {
        if g.dim() != dim {
            return Err(ConfigError::Semantic {
                line: 0,
                msg: format!("generator {name} has dimension {}, expected {dim}", g.dim()),
            });
        }
    }
    for (name, elements) in &subgroups {
        verify_closed(elements).map_err(|msg| ConfigError::SubgroupNotClosed {
            name: name.clone(),
            msg,
        })?;
        for e in elements {
            if e.dim() != dim {
                return Err(ConfigError::Semantic {
                    line: 0,
                    msg: format!("subgroup {name} has an element of wrong dimension"),
                });
            }
        }
    }
    let series: Result<Vec<(String, NormalSeries)>, ConfigError> = series
        .into_iter()
        .map(|(name, factors)| {
            NormalSeries::new(factors)
                .map(|s| (name.clone(), s))
                .map_err(|e| ConfigError::Semantic {
                    line: 0,
                    msg: format!("series {name}: {e}"),
                })
        })
        .collect();
    Ok(GroupSpec {
        field,
        dim,
        profile,
        generators,
        subgroups,
        series: series?,
        window,
    })
}

fn verify_closed(elements: &[GroupElement]) -> Result<(), String> {
    if elements.is_empty() {
        return Err("subgroup has no elements".into());
    }
    let set: HashSet<&GroupElement> = elements.iter().collect();
    let identity = GroupElement::identity(elements[0].dim(), elements[0].field());
    if !set.contains(&identity) {
        return Err("missing the identity element".into());
    }
    for a in elements {
        if !set.contains(&a.inverse()) {
            return Err(format!("missing the inverse of {a}"));
        }
        for b in elements {
            let prod = a.mul(b).map_err(|e| e.to_string())?;
            if !set.contains(&prod) {
                return Err(format!("missing the product {a} * {b}"));
            }
        }
    }
    Ok(())
}

/// Parses `factor = <gens> [<row>,<row>,...]` where each row is
/// `[c,c,...]`; `[]` means no relations.
fn parse_factor(value: &str, line: usize) -> Result<FactorPresentation, ConfigError> {
    let syntax = |msg: &str| ConfigError::Syntax {
        line,
        col: 1,
        msg: msg.into(),
    };
    let value = value.trim();
    let Some(space) = value.find(char::is_whitespace) else {
        return Err(syntax("expected 'factor = <generators> [relations]'"));
    };
    let generators: usize = value[..space]
        .parse()
        .map_err(|_| syntax("bad generator count"))?;
    let rest = value[space..].trim();
    let inner = rest
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| syntax("relations must be bracketed"))?
        .trim();
    let mut relations: Vec<Vec<i64>> = Vec::new();
    let mut cursor = inner;
    while !cursor.is_empty() {
        cursor = cursor.trim_start_matches(',').trim();
        if cursor.is_empty() {
            break;
        }
        let Some(row) = cursor.strip_prefix('[') else {
            return Err(syntax("expected '[' to open a relation row"));
        };
        let Some(end) = row.find(']') else {
            return Err(syntax("unterminated relation row"));
        };
        let entries: Result<Vec<i64>, _> = row[..end]
            .split(',')
            .filter(|s| !s.trim().is_empty())
            .map(|s| s.trim().parse())
            .collect();
        relations.push(entries.map_err(|_| syntax("bad relation entry"))?);
        cursor = &row[end + 1..];
    }
    for row in &relations {
        if row.len() != generators {
            return Err(ConfigError::Semantic {
                line,
                msg: format!(
                    "relation row has {} entries for {generators} generators",
                    row.len()
                ),
            });
        }
    }
    Ok(FactorPresentation {
        generators,
        relations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const DEMO: &str = "\
# demo spec
[group]
p = 2
dim = 2

[norms]
norm = t_adic
norm = degree

[generators]
a = [[1, t], [0, 1]]
b = [[0, 1], [1, 0]]

[subgroup swap]
element = [[1,0],[0,1]]
element = [[0,1],[1,0]]

[series heis]
factor = 1 []
factor = 2 [[2,0]]

[window]
radius = 3
cap = 500
scales = 1,2,4
";

    #[test]
    fn parses_the_demo_spec() {
        let spec = GroupSpec::parse(DEMO).unwrap();
        assert_eq!(spec.field.modulus(), 2);
        assert_eq!(spec.dim, 2);
        assert_eq!(spec.generators.len(), 2);
        assert_eq!(spec.subgroups.len(), 1);
        assert_eq!(spec.series.len(), 1);
        assert_eq!(spec.window.scales, vec![1, 2, 4]);
        assert_eq!(spec.profile.norms().len(), 2);
    }

    #[test]
    fn roundtrip_is_identity_on_canonical_specs() {
        let spec = GroupSpec::parse(DEMO).unwrap();
        let text = spec.to_text();
        let spec2 = GroupSpec::parse(&text).unwrap();
        let text2 = spec2.to_text();
        assert_eq!(text, text2);
    }

    #[test]
    fn expression_grammar() {
        let f = PrimeField::new(2).unwrap();
        // 1/(t^2+1) keeps its denominator
        let x = parse_ratfunc("1/(t^2+1)", f, 1).unwrap();
        assert_eq!(x.den().to_string(), "t^2+1");
        // t/t canonicalizes to 1
        assert!(parse_ratfunc("t/t", f, 1).unwrap().is_one());
        // negative exponent
        let y = parse_ratfunc("t^-2", f, 1).unwrap();
        assert_eq!(y.den().to_string(), "t^2");
        // precedence: 1+t*t = 1+t^2
        let z = parse_ratfunc("1+t*t", f, 1).unwrap();
        assert_eq!(z, parse_ratfunc("t^2+1", f, 1).unwrap());
        let f3 = PrimeField::new(3).unwrap();
        // unary minus: -t = 2t mod 3
        assert_eq!(
            parse_ratfunc("-t", f3, 1).unwrap(),
            parse_ratfunc("2*t", f3, 1).unwrap()
        );
    }

    #[test]
    fn syntax_errors_carry_position() {
        let f = PrimeField::new(2).unwrap();
        match parse_ratfunc("t + &", f, 7) {
            Err(ConfigError::Syntax { line, col, .. }) => {
                assert_eq!(line, 7);
                assert_eq!(col, 5);
            }
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn singular_generator_rejected() {
        let bad = DEMO.replace("a = [[1, t], [0, 1]]", "a = [[1,1],[1,1]]");
        assert!(matches!(
            GroupSpec::parse(&bad),
            Err(ConfigError::SingularGenerator { .. })
        ));
    }

    #[test]
    fn non_prime_modulus_rejected() {
        let bad = DEMO.replace("p = 2", "p = 6");
        assert!(matches!(
            GroupSpec::parse(&bad),
            Err(ConfigError::Semantic { .. })
        ));
    }

    #[test]
    fn unclosed_subgroup_rejected() {
        let bad = DEMO.replace("element = [[1,0],[0,1]]\n", "");
        assert!(matches!(
            GroupSpec::parse(&bad),
            Err(ConfigError::SubgroupNotClosed { .. })
        ));
    }

    #[test]
    fn division_by_zero_in_entry() {
        let f = PrimeField::new(2).unwrap();
        assert!(parse_ratfunc("1/(t+t)", f, 1).is_err());
    }

    #[test]
    fn finite_place_norm_parses() {
        let text = DEMO.replace("norm = degree", "norm = finite_place(t^2+t+1)");
        let spec = GroupSpec::parse(&text).unwrap();
        assert!(matches!(spec.profile.norms()[1], NormSpec::FinitePlace(_)));
        // reducible place rejected
        let bad = DEMO.replace("norm = degree", "norm = finite_place(t^2+1)");
        assert!(GroupSpec::parse(&bad).is_err());
    }
}
