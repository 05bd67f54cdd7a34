//! Problem files: a few `key: value` lines.
//!
//! ```text
//! # comments start with '#'
//! ring: x, y, z
//! weights: 1, 1, 2
//! ideal: x^2 + y*z, x*y
//! power: 2
//! truncate: 5
//! ```
//!
//! `weights` defaults to all ones, `power` to 1 and `truncate` to 5.
//! `ideal` may repeat; its lines are concatenated. An empty ideal is the
//! zero ideal.

use golodlab_core::golod::DEFAULT_TRUNCATION;
use golodlab_core::poly::{Polynomial, RingSpec};
use golodlab_core::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemSpec {
    pub ring: RingSpec,
    pub generators: Vec<Polynomial>,
    pub power: usize,
    pub truncate: usize,
}

impl ProblemSpec {
    pub fn generator_strings(&self) -> Vec<String> {
        self.generators
            .iter()
            .map(|g| self.ring.format(g))
            .collect()
    }
}

fn err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// A comma-separated field with the 1-based column of each item.
fn items(value: &str, start: usize) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut offset = 0;
    for part in value.split(',') {
        let lead = part.len() - part.trim_start().len();
        out.push((start + offset + lead, part.trim()));
        offset += part.len() + 1;
    }
    out
}

pub fn parse_problem(text: &str) -> Result<ProblemSpec> {
    let mut names: Option<(usize, Vec<(usize, String)>)> = None;
    let mut weights: Option<(usize, Vec<(usize, String)>)> = None;
    let mut ideal: Vec<(usize, usize, String)> = Vec::new();
    let mut power = None;
    let mut truncate = None;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let Some(colon) = content.find(':') else {
            let col = content.len() - content.trim_start().len() + 1;
            return Err(err(line, col, "expected `key: value`"));
        };
        let key = content[..colon].trim();
        let value = &content[colon + 1..];
        let start = colon + 2;
        let owned =
            |v: Vec<(usize, &str)>| v.into_iter().map(|(c, s)| (c, s.to_string())).collect();
        let number = |what: &str| -> Result<usize> {
            let lead = value.len() - value.trim_start().len();
            value.trim().parse::<usize>().map_err(|_| {
                err(
                    line,
                    start + lead,
                    format!("{what} must be a non-negative integer"),
                )
            })
        };
        let duplicate = |seen: bool| {
            if seen {
                Err(err(line, 1, format!("duplicate key `{key}`")))
            } else {
                Ok(())
            }
        };
        match key {
            "ring" => {
                duplicate(names.is_some())?;
                names = Some((line, owned(items(value, start))));
            }
            "weights" => {
                duplicate(weights.is_some())?;
                weights = Some((line, owned(items(value, start))));
            }
            "ideal" => {
                if !value.trim().is_empty() {
                    ideal.extend(
                        items(value, start)
                            .into_iter()
                            .map(|(c, s)| (line, c, s.to_string())),
                    );
                }
            }
            "power" => {
                duplicate(power.is_some())?;
                power = Some(number("power")?);
            }
            "truncate" => {
                duplicate(truncate.is_some())?;
                truncate = Some(number("truncate")?);
            }
            _ => {
                let col = content.len() - content.trim_start().len() + 1;
                return Err(err(line, col, format!("unknown key `{key}`")));
            }
        }
    }

    let (ring_line, names) = names.ok_or_else(|| err(1, 1, "missing `ring:` line"))?;
    for (col, name) in &names {
        let ok = name
            .chars()
            .next()
            .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
            && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !ok {
            return Err(err(
                ring_line,
                *col,
                format!("invalid variable name `{name}`"),
            ));
        }
    }
    let weights = match weights {
        None => vec![1; names.len()],
        Some((line, ws)) => {
            if ws.len() != names.len() {
                return Err(err(
                    line,
                    1,
                    format!("{} weights for {} variables", ws.len(), names.len()),
                ));
            }
            let mut out = Vec::with_capacity(ws.len());
            for ((col, w), (_, name)) in ws.iter().zip(&names) {
                let v: i64 = w
                    .parse()
                    .map_err(|_| err(line, *col, format!("invalid weight `{w}`")))?;
                if v <= 0 {
                    return Err(Error::NonPositiveWeight { name: name.clone() });
                }
                out.push(u32::try_from(v).map_err(|_| err(line, *col, "weight too large"))?);
            }
            out
        }
    };
    let ring = RingSpec::new(names.into_iter().map(|(_, n)| n).collect(), weights)?;

    let mut generators = Vec::with_capacity(ideal.len());
    for (line, col, text) in &ideal {
        if text.is_empty() {
            return Err(err(*line, *col, "empty generator"));
        }
        let f = ring.parse(text).map_err(|e| match e {
            Error::Parse {
                column, message, ..
            } => err(*line, col + column - 1, message),
            other => other,
        })?;
        check_homogeneous(&ring, &f)?;
        generators.push(f);
    }

    Ok(ProblemSpec {
        ring,
        generators,
        power: power.unwrap_or(1),
        truncate: truncate.unwrap_or(DEFAULT_TRUNCATION),
    })
}

fn check_homogeneous(ring: &RingSpec, f: &Polynomial) -> Result<()> {
    let Some((lead, _)) = f.terms().first() else {
        return Ok(());
    };
    if let Some((m, c)) = f.terms().iter().find(|(m, _)| m.degree() != lead.degree()) {
        let term = Polynomial::from_monomial(m.clone(), c.clone());
        return Err(Error::NotHomogeneous(format!(
            "{}: term {} has degree {}, leading term has degree {}",
            ring.format(f),
            ring.format(&term),
            m.degree(),
            lead.degree()
        )));
    }
    Ok(())
}
