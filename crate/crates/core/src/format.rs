//! Plain-text game, decomposition and profile formats, and the JSON report.
//!
//! Game file: a header `m n`, the `m` rows of `A`, a blank line, then the `m`
//! rows of `B`. Entries are integers or fractions `p/q`. `#` starts a comment.
//!
//! ```text
//! # rank-one example
//! 2 2
//! 2 7
//! 1 8
//!
//! 2 1
//! 7 8
//! ```
//!
//! Decomposition file: `k`, then for each term one line with `u` and one line
//! with `v`.

use num::BigInt;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::game::{BimatrixGame, EquilibriumReport, MixedProfile, SolutionKind};
use crate::numerics::{parse_rational, parse_rational_list, FactorPair, RankFactorization, Rational, RationalMatrix};

/// Version of the JSON report layout.
pub const REPORT_SCHEMA_VERSION: u32 = 1;

/// Nonempty lines with comments stripped.
fn content_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines()
        .map(|line| line.split('#').next().unwrap_or("").trim())
        .filter(|line| !line.is_empty())
}

fn parse_count(token: &str, what: &str) -> Result<usize> {
    token
        .parse::<usize>()
        .map_err(|_| Error::Parse(format!("{what}: expected a count, got {token:?}")))
}

fn parse_error(e: Error) -> Error {
    match e {
        Error::Parse(_) => e,
        other => Error::Parse(other.to_string()),
    }
}

pub fn parse_game(text: &str) -> Result<BimatrixGame> {
    let tokens: Vec<&str> = content_lines(text).flat_map(str::split_whitespace).collect();
    if tokens.len() < 2 {
        return Err(Error::Parse("missing header `m n`".into()));
    }
    let m = parse_count(tokens[0], "rows")?;
    let n = parse_count(tokens[1], "columns")?;
    if m == 0 || n == 0 {
        return Err(Error::Parse(format!("game must be nonempty, got {m} x {n}")));
    }
    let body = &tokens[2..];
    if body.len() != 2 * m * n {
        return Err(Error::Parse(format!(
            "expected {} entries for two {m} x {n} matrices, found {}",
            2 * m * n,
            body.len()
        )));
    }
    let entries = body.iter().map(|t| parse_rational(t)).collect::<Result<Vec<_>>>()?;
    let (a, b) = entries.split_at(m * n);
    let a = RationalMatrix::new(m, n, a.to_vec()).map_err(parse_error)?;
    let b = RationalMatrix::new(m, n, b.to_vec()).map_err(parse_error)?;
    BimatrixGame::new(a, b).map_err(parse_error)
}

pub fn write_game(game: &BimatrixGame) -> String {
    let (m, n) = game.shape();
    format!("{m} {n}\n{}\n{}", game.a(), game.b())
}

pub fn parse_decomposition(text: &str) -> Result<RankFactorization> {
    let mut lines = content_lines(text);
    let k = parse_count(lines.next().ok_or_else(|| Error::Parse("empty decomposition".into()))?, "term count")?;
    let mut pairs = Vec::with_capacity(k);
    for t in 0..k {
        let mut vector = |side: &str| -> Result<Vec<Rational>> {
            let line = lines
                .next()
                .ok_or_else(|| Error::Parse(format!("term {}: missing {side} line", t + 1)))?;
            parse_rational_list(line)
        };
        let u = vector("u")?;
        let v = vector("v")?;
        pairs.push(FactorPair { u, v });
    }
    if lines.next().is_some() {
        return Err(Error::Parse(format!("trailing content after {k} terms")));
    }
    let (m, n) = pairs
        .first()
        .map(|p| (p.u.len(), p.v.len()))
        .ok_or_else(|| Error::Parse("decomposition needs at least one term".into()))?;
    RankFactorization::new(m, n, pairs).map_err(parse_error)
}

pub fn write_decomposition(decomp: &RankFactorization) -> String {
    let join = |v: &[Rational]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
    let mut out = format!("{}\n", decomp.len());
    for p in decomp.pairs() {
        out.push_str(&join(&p.u));
        out.push('\n');
        out.push_str(&join(&p.v));
        out.push('\n');
    }
    out
}

/// Parses `x₁,…,x_m;y₁,…,y_n`.
pub fn parse_profile(text: &str) -> Result<MixedProfile> {
    let (x, y) = text
        .split_once(';')
        .ok_or_else(|| Error::Parse(format!("profile {text:?} needs `x;y`")))?;
    MixedProfile::new(parse_rational_list(x)?, parse_rational_list(y)?)
}

pub fn write_profile(p: &MixedProfile) -> String {
    let join = |v: &[Rational]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
    format!("{};{}", join(&p.x), join(&p.y))
}

fn fractions(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(|r| Value::String(r.to_string())).collect())
}

pub fn kind_json(kind: &SolutionKind) -> Value {
    match kind {
        SolutionKind::Exact => json!({ "type": "exact" }),
        SolutionKind::EpsApproximate(eps) => json!({ "type": "eps_approximate", "eps": eps.to_string() }),
        SolutionKind::RelativeApproximate(rho) => {
            json!({ "type": "relative_approximate", "rho": rho.to_string() })
        }
    }
}

pub fn equilibrium_json(r: &EquilibriumReport) -> Value {
    json!({
        "x": fractions(&r.profile.x),
        "y": fractions(&r.profile.y),
        "loss": r.loss.to_string(),
        "payoff1": r.payoff1.to_string(),
        "payoff2": r.payoff2.to_string(),
        "kind": kind_json(&r.kind),
        "support1": r.support1,
        "support2": r.support2,
    })
}

/// Structured report. Every number is an exact fraction string.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ReportFile {
    pub command: String,
    pub shape: Option<(usize, usize)>,
    pub equilibria: Vec<EquilibriumReport>,
    pub component_count: Option<usize>,
    pub component_bound: Option<BigInt>,
    /// Additional command-specific fields.
    pub extra: Map<String, Value>,
}

impl ReportFile {
    pub fn new(command: impl Into<String>) -> Self {
        Self {
            command: command.into(),
            ..Self::default()
        }
    }

    pub fn to_json(&self) -> Value {
        let mut obj = Map::new();
        obj.insert("schema_version".into(), json!(REPORT_SCHEMA_VERSION));
        obj.insert("command".into(), json!(self.command));
        if let Some((m, n)) = self.shape {
            obj.insert("rows".into(), json!(m));
            obj.insert("cols".into(), json!(n));
        }
        obj.insert(
            "equilibria".into(),
            Value::Array(self.equilibria.iter().map(equilibrium_json).collect()),
        );
        if let Some(c) = self.component_count {
            obj.insert("component_count".into(), json!(c));
        }
        if let Some(b) = &self.component_bound {
            obj.insert("component_bound".into(), json!(b.to_string()));
        }
        for (k, v) in &self.extra {
            obj.insert(k.clone(), v.clone());
        }
        Value::Object(obj)
    }

    pub fn to_pretty_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("report serializes");
        s.push('\n');
        s
    }
}
