//! LP-format text for [`IlpModel`] and the matching reader, plus import
//! of 0-1 solution files.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::model::{kind_of_name, Family, IlpModel, Sense};
use crate::error::LpError;

const TERMS_PER_LINE: usize = 8;

fn write_terms(out: &mut String, model: &IlpModel, terms: &[(usize, i64)]) {
    for (t, &(v, c)) in terms.iter().enumerate() {
        if t > 0 && t % TERMS_PER_LINE == 0 {
            out.push_str("\n   ");
        }
        let sign = if c < 0 { '-' } else { '+' };
        if t == 0 && c >= 0 {
            write!(out, " {} {}", c, model.variables[v].name).unwrap();
        } else {
            write!(out, " {sign} {} {}", c.abs(), model.variables[v].name).unwrap();
        }
    }
}

/// Renders the model in LP format. Output depends only on the model.
pub fn emit_lp(model: &IlpModel) -> String {
    let mut out = String::new();
    out.push_str("\\ aflayer 0-1 crossing model\n");
    writeln!(
        out,
        "\\ sizes {} {} {}",
        model.num_in, model.num_out, model.num_undec
    )
    .unwrap();
    out.push_str("\\ arguments");
    for a in &model.arguments {
        write!(out, " {a}").unwrap();
    }
    out.push('\n');
    out.push_str("Minimize\n obj:");
    match model.variables.first() {
        // LP readers reject an empty objective row
        Some(v) if model.objective.is_empty() => write!(out, " 0 {}", v.name).unwrap(),
        _ => write_terms(&mut out, model, &model.objective),
    }
    out.push_str("\nSubject To\n");
    for c in &model.constraints {
        write!(out, " {}:", c.name).unwrap();
        write_terms(&mut out, model, &c.terms);
        writeln!(out, " {} {}", c.sense.symbol(), c.rhs).unwrap();
    }
    out.push_str("Binaries\n");
    for chunk in model.variables.chunks(TERMS_PER_LINE) {
        let names: Vec<&str> = chunk.iter().map(|v| v.name.as_str()).collect();
        writeln!(out, " {}", names.join(" ")).unwrap();
    }
    out.push_str("End\n");
    out
}

#[derive(PartialEq)]
enum Section {
    Preamble,
    Objective,
    Constraints,
    Binaries,
    End,
}

fn syntax(line: usize, message: impl Into<String>) -> LpError {
    LpError::Syntax {
        line,
        message: message.into(),
    }
}

/// Parses `+ 3 x_1_2 - 1 c_...` into named terms.
fn parse_terms(text: &str, line: usize) -> Result<Vec<(String, i64)>, LpError> {
    let mut terms = Vec::new();
    let mut sign = 1i64;
    let mut coef: Option<i64> = None;
    for tok in text.split_whitespace() {
        match tok {
            "+" => sign = 1,
            "-" => sign = -1,
            _ => {
                if let Ok(k) = tok.parse::<i64>() {
                    if coef.is_some() {
                        return Err(syntax(line, format!("unexpected number `{tok}`")));
                    }
                    coef = Some(k);
                } else {
                    terms.push((tok.to_string(), sign * coef.unwrap_or(1)));
                    sign = 1;
                    coef = None;
                }
            }
        }
    }
    if coef.is_some() {
        return Err(syntax(line, "dangling coefficient"));
    }
    Ok(terms)
}

struct Row {
    line: usize,
    name: String,
    body: String,
}

/// Reads LP text produced by [`emit_lp`] back into a model.
pub fn parse_lp(text: &str) -> Result<IlpModel, LpError> {
    let mut section = Section::Preamble;
    let mut sizes: Option<[usize; 3]> = None;
    let mut arguments = Vec::new();
    let mut objective = String::new();
    let mut rows: Vec<Row> = Vec::new();
    let mut binaries: Vec<String> = Vec::new();

    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let trimmed = raw.trim();
        if let Some(comment) = trimmed.strip_prefix('\\') {
            let mut it = comment.split_whitespace();
            match it.next() {
                Some("sizes") => {
                    let v: Result<Vec<usize>, _> = it.map(str::parse).collect();
                    match v.as_deref() {
                        Ok(&[a, b, c]) => sizes = Some([a, b, c]),
                        _ => return Err(syntax(line, "malformed sizes comment")),
                    }
                }
                Some("arguments") => {
                    arguments = it
                        .map(str::parse)
                        .collect::<Result<_, _>>()
                        .map_err(|_| syntax(line, "malformed arguments comment"))?;
                }
                _ => {}
            }
            continue;
        }
        if trimmed.is_empty() {
            continue;
        }
        match trimmed.to_ascii_lowercase().as_str() {
            "minimize" => {
                section = Section::Objective;
                continue;
            }
            "subject to" => {
                section = Section::Constraints;
                continue;
            }
            "binaries" => {
                section = Section::Binaries;
                continue;
            }
            "end" => {
                section = Section::End;
                continue;
            }
            _ => {}
        }
        match section {
            Section::Preamble | Section::End => {
                return Err(syntax(line, "content outside of a section"))
            }
            Section::Objective => {
                let body = trimmed.strip_prefix("obj:").unwrap_or(trimmed);
                objective.push(' ');
                objective.push_str(body);
            }
            Section::Constraints => match trimmed.split_once(':') {
                Some((name, body)) => rows.push(Row {
                    line,
                    name: name.trim().to_string(),
                    body: body.to_string(),
                }),
                None => {
                    let row = rows
                        .last_mut()
                        .ok_or_else(|| syntax(line, "continuation without a constraint"))?;
                    row.body.push(' ');
                    row.body.push_str(trimmed);
                }
            },
            Section::Binaries => binaries.extend(trimmed.split_whitespace().map(String::from)),
        }
    }
    if section != Section::End {
        return Err(syntax(text.lines().count(), "missing End"));
    }
    let sizes = sizes.ok_or_else(|| syntax(1, "missing sizes comment"))?;
    if arguments.len() != sizes.iter().sum::<usize>() {
        return Err(syntax(1, "argument list does not match sizes"));
    }

    let mut model = IlpModel::empty_with(arguments, sizes);
    for name in binaries {
        let kind = kind_of_name(&name).ok_or_else(|| LpError::UnknownVariable(name.clone()))?;
        model.add_variable(name, kind);
    }
    let resolve = |model: &IlpModel, terms: Vec<(String, i64)>| {
        terms
            .into_iter()
            .map(|(n, c)| {
                model
                    .variable(&n)
                    .map(|v| (v, c))
                    .ok_or(LpError::UnknownVariable(n))
            })
            .collect::<Result<Vec<_>, _>>()
    };
    let terms = parse_terms(&objective, 1)?
        .into_iter()
        .filter(|t| t.1 != 0)
        .collect();
    model.objective = resolve(&model, terms)?;
    for row in rows {
        let (sense, split) = ["<=", ">=", "="]
            .iter()
            .find_map(|s| row.body.split_once(s).map(|p| (*s, p)))
            .ok_or_else(|| syntax(row.line, "constraint without a relation"))?;
        let sense = match sense {
            "<=" => Sense::Le,
            ">=" => Sense::Ge,
            _ => Sense::Eq,
        };
        let rhs: i64 = split
            .1
            .trim()
            .parse()
            .map_err(|_| syntax(row.line, "right-hand side is not an integer"))?;
        let prefix = row.name.split('_').next().unwrap_or("");
        let family = Family::from_prefix(prefix)
            .ok_or_else(|| syntax(row.line, format!("unknown constraint family `{prefix}`")))?;
        let terms = resolve(&model, parse_terms(split.0, row.line)?)?;
        model.push(row.name, family, terms, sense, rhs);
    }
    model.rebuild_lookup();
    Ok(model)
}

/// Reads a 0-1 solution: one `name value` (or `name = value`) per line;
/// `#` starts a comment.
pub fn parse_solution(text: &str) -> Result<BTreeMap<String, bool>, LpError> {
    let mut values = BTreeMap::new();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").replace('=', " ");
        let mut it = line.split_whitespace();
        let (Some(name), Some(value)) = (it.next(), it.next()) else {
            if line.trim().is_empty() {
                continue;
            }
            return Err(syntax(k + 1, "expected `name value`"));
        };
        let v: f64 = value
            .parse()
            .map_err(|_| syntax(k + 1, format!("value `{value}` is not a number")))?;
        values.insert(name.to_string(), v > 0.5);
    }
    Ok(values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::af::{compute_labeling, ArgumentationFramework, Extension};
    use crate::exact::model::build_ilp;
    use crate::layout::{assign_layers, partition_edges};

    fn model(rec: bool) -> IlpModel {
        let af = ArgumentationFramework::from_named_attacks(
            &["u", "v", "a", "b", "c", "d", "q"],
            &[
                ("u", "a"),
                ("v", "b"),
                ("u", "c"),
                ("v", "d"),
                ("a", "c"),
                ("b", "d"),
                ("a", "q"),
                ("q", "q"),
            ],
        )
        .unwrap();
        let e = Extension::from_names(&af, ["u", "v"]).unwrap();
        let lab = compute_labeling(&af, &e);
        build_ilp(&partition_edges(&af, &lab), &assign_layers(&lab), rec)
    }

    #[test]
    fn empty_model() {
        let m = IlpModel::default();
        let text = emit_lp(&m);
        assert!(text.contains("Minimize\n obj:\nSubject To\nBinaries\nEnd\n"));
        assert_eq!(parse_lp(&text).unwrap(), m);
    }

    #[test]
    fn round_trip() {
        for rec in [false, true] {
            let m = model(rec);
            let text = emit_lp(&m);
            let back = parse_lp(&text).unwrap();
            assert_eq!(back, m);
            assert_eq!(emit_lp(&back), text);
        }
    }

    #[test]
    fn solution_file() {
        let s = parse_solution("# header\nx_1_2 1\ny_3_4 = 0\nr_1_3 0.9999\n").unwrap();
        assert!(s["x_1_2"]);
        assert!(!s["y_3_4"]);
        assert!(s["r_1_3"]);
        assert!(parse_solution("x_1_2").is_err());
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_lp("Minimize\n obj: 1 x_1_2\nEnd\n").is_err());
        assert!(
            parse_lp("\\ sizes 0 0 0\n\\ arguments\nMinimize\n obj: 1 bogus\nBinaries\nEnd\n")
                .is_err()
        );
    }
}
