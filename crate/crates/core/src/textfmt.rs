//! Plain-text ideal files: a `vars:` header naming the variables, then one
//! monomial per line (`x1^2*x3`, `1` for the constant); `#` starts a comment.
//! Printing the canonical generators and parsing them back is the identity.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::monomial::{Exponent, Monomial};

/// Parse an ideal file, returning the ideal and the declared variable names.
pub fn parse_ideal(text: &str) -> Result<(MonomialIdeal, Vec<String>)> {
    let mut names: Option<Vec<String>> = None;
    let mut lookup: HashMap<String, usize> = HashMap::new();
    let mut gens: Vec<Monomial> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = strip_comment(raw).trim();
        if line.is_empty() {
            continue;
        }
        match &names {
            None => {
                let Some(rest) = line.strip_prefix("vars:") else {
                    return Err(Error::Parse {
                        line: line_no,
                        col: 1,
                        msg: "expected a `vars:` header before any monomial".into(),
                    });
                };
                let declared: Vec<String> = rest.split_whitespace().map(String::from).collect();
                if declared.is_empty() {
                    return Err(Error::Parse {
                        line: line_no,
                        col: 1,
                        msg: "the `vars:` header must declare at least one variable".into(),
                    });
                }
                for (i, name) in declared.iter().enumerate() {
                    validate_name(name, line_no)?;
                    if lookup.insert(name.clone(), i).is_some() {
                        return Err(Error::Parse {
                            line: line_no,
                            col: 1,
                            msg: format!("duplicate variable name `{name}`"),
                        });
                    }
                }
                names = Some(declared);
            }
            Some(names) => {
                gens.push(parse_monomial_at(line, names.len(), &lookup, line_no)?);
            }
        }
    }

    let Some(names) = names else {
        return Err(Error::Parse {
            line: text.lines().count().max(1),
            col: 1,
            msg: "missing `vars:` header".into(),
        });
    };
    let n = names.len();
    Ok((MonomialIdeal::new(n, gens)?, names))
}

/// Parse a single monomial like `x1^2*x3` against known variable names.
pub fn parse_monomial(text: &str, names: &[String]) -> Result<Monomial> {
    let lookup: HashMap<String, usize> =
        names.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
    parse_monomial_at(text.trim(), names.len(), &lookup, 1)
}

fn parse_monomial_at(
    line: &str,
    n: usize,
    lookup: &HashMap<String, usize>,
    line_no: usize,
) -> Result<Monomial> {
    if line == "1" {
        return Ok(Monomial::one(n));
    }
    let mut exponents = vec![0 as Exponent; n];
    let mut col = 1usize;
    for factor in line.split('*') {
        let factor = factor.trim();
        let (name, exp) = match factor.split_once('^') {
            None => (factor, 1),
            Some((name, exp_str)) => {
                let exp: Exponent = exp_str.trim().parse().map_err(|_| Error::Parse {
                    line: line_no,
                    col,
                    msg: format!("invalid exponent `{}`", exp_str.trim()),
                })?;
                (name.trim(), exp)
            }
        };
        let Some(&i) = lookup.get(name) else {
            return Err(Error::Parse {
                line: line_no,
                col,
                msg: format!("unknown variable `{name}`"),
            });
        };
        exponents[i] = exponents[i].checked_add(exp).ok_or(Error::Parse {
            line: line_no,
            col,
            msg: "exponent overflow".into(),
        })?;
        col += factor.len() + 1;
    }
    Ok(Monomial::new(exponents))
}

/// Print an ideal in the text format; the inverse of [`parse_ideal`] on
/// canonical output.
pub fn print_ideal(ideal: &MonomialIdeal, names: &[String]) -> String {
    assert_eq!(names.len(), ideal.num_vars(), "name list does not match ambient dimension");
    let mut out = format!("vars: {}\n", names.join(" "));
    for g in ideal.gens() {
        out.push_str(&g.render(names));
        out.push('\n');
    }
    out
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(pos) => &line[..pos],
        None => line,
    }
}

fn validate_name(name: &str, line_no: usize) -> Result<()> {
    let bad = name == "1"
        || name.is_empty()
        || name.chars().any(|c| c.is_whitespace() || c == '*' || c == '^' || c == '#');
    if bad {
        return Err(Error::Parse {
            line: line_no,
            col: 1,
            msg: format!("invalid variable name `{name}`"),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print_round_trip() {
        let text = "vars: x1 x2 x3\n# generators\nx1^2*x3\nx2\n";
        let (ideal, names) = parse_ideal(text).unwrap();
        assert_eq!(names, vec!["x1", "x2", "x3"]);
        assert_eq!(ideal.gens().len(), 2);
        let printed = print_ideal(&ideal, &names);
        let (reparsed, names2) = parse_ideal(&printed).unwrap();
        assert_eq!(reparsed, ideal);
        assert_eq!(names2, names);
        assert_eq!(print_ideal(&reparsed, &names2), printed);
    }

    #[test]
    fn constant_and_empty_bodies() {
        let (unit, _) = parse_ideal("vars: a b\n1\n").unwrap();
        assert!(unit.is_unit());
        let (zero, _) = parse_ideal("vars: a b\n").unwrap();
        assert!(zero.is_zero());
    }

    #[test]
    fn errors_carry_line_numbers() {
        let err = parse_ideal("vars: x y\nx*z\n").unwrap_err();
        match err {
            Error::Parse { line, msg, .. } => {
                assert_eq!(line, 2);
                assert!(msg.contains("unknown variable"));
            }
            other => panic!("unexpected error {other:?}"),
        }
        assert!(parse_ideal("x*y\n").is_err()); // missing header
        assert!(parse_ideal("vars: x x\n").is_err()); // duplicate name
        assert!(parse_ideal("vars: x y\nx^--\n").is_err()); // bad exponent
    }

    #[test]
    fn repeated_factors_accumulate() {
        let names = vec!["x".to_string(), "y".to_string()];
        let m = parse_monomial("x*x*y^2", &names).unwrap();
        assert_eq!(m.exponents, vec![2, 2]);
    }
}
