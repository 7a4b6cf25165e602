//! Text syntax for Laurent polynomials: `x1 + x2 - 2`, `x^-1*y^2 + 3`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::abelian::FGAbelianGroup;
use crate::error::{Error, Result};

use super::{CoeffDomain, LaurentPoly};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Name(String),
    Caret,
    Star,
    Plus,
    Minus,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let mut toks = vec![];
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            toks.push((start, Tok::Int(s.parse().unwrap())));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            toks.push((start, Tok::Name(chars[start..i].iter().collect())));
        } else {
            let tok = match c {
                '^' => Tok::Caret,
                '*' => Tok::Star,
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                other => {
                    return Err(Error::Parse {
                        pos: i,
                        msg: format!("unexpected character `{other}`"),
                    })
                }
            };
            toks.push((i, tok));
            i += 1;
        }
    }
    Ok(toks)
}

/// Parse a polynomial whose variable names are the group's generator labels.
pub fn parse_polynomial(text: &str, group: &FGAbelianGroup) -> Result<LaurentPoly> {
    let toks = lex(text)?;
    let mut poly = LaurentPoly::zero(group.clone(), CoeffDomain::Int);
    let mut i = 0;
    if toks.is_empty() {
        return Err(Error::Parse { pos: 0, msg: "empty polynomial".into() });
    }
    let nvars = group.rank + group.torsion_len();
    while i < toks.len() {
        // sign
        let mut sign = BigInt::one();
        if i > 0 || matches!(toks[i].1, Tok::Plus | Tok::Minus) {
            match &toks[i] {
                (_, Tok::Plus) => i += 1,
                (_, Tok::Minus) => {
                    sign = -sign;
                    i += 1;
                }
                (pos, _) => {
                    return Err(Error::Parse { pos: *pos, msg: "expected `+` or `-`".into() })
                }
            }
        }
        // term: one or more factors, `*` optional between them
        let mut coeff = sign;
        let mut exps = vec![BigInt::zero(); nvars];
        let mut saw_factor = false;
        loop {
            match toks.get(i) {
                Some((_, Tok::Int(n))) => {
                    coeff *= n;
                    i += 1;
                }
                Some((pos, Tok::Name(name))) => {
                    let idx = group
                        .generator_labels
                        .iter()
                        .position(|l| l == name)
                        .ok_or_else(|| Error::Parse {
                            pos: *pos,
                            msg: format!("unknown variable `{name}`"),
                        })?;
                    i += 1;
                    let mut e = BigInt::one();
                    if matches!(toks.get(i), Some((_, Tok::Caret))) {
                        i += 1;
                        let mut neg = false;
                        if matches!(toks.get(i), Some((_, Tok::Minus))) {
                            neg = true;
                            i += 1;
                        }
                        match toks.get(i) {
                            Some((_, Tok::Int(n))) => {
                                e = if neg { -n } else { n.clone() };
                                i += 1;
                            }
                            _ => {
                                return Err(Error::Parse {
                                    pos: *pos,
                                    msg: "expected integer exponent after `^`".into(),
                                })
                            }
                        }
                    }
                    exps[idx] += e;
                }
                Some((pos, _)) if !saw_factor => {
                    return Err(Error::Parse { pos: *pos, msg: "expected a factor".into() })
                }
                _ => break,
            }
            saw_factor = true;
            if matches!(toks.get(i), Some((_, Tok::Star))) {
                i += 1;
                saw_factor = false; // a factor must follow `*`
            } else if !matches!(toks.get(i), Some((_, Tok::Int(_)) | (_, Tok::Name(_)))) {
                break;
            }
        }
        if !saw_factor {
            let pos = toks.get(i).map(|(p, _)| *p).unwrap_or(text.len());
            return Err(Error::Parse { pos, msg: "expected a factor".into() });
        }
        let (free, torsion) = exps.split_at(group.rank);
        poly = poly.add(&LaurentPoly::from_terms(
            group.clone(),
            CoeffDomain::Int,
            [(group.element(free.to_vec(), torsion.to_vec()), coeff)],
        ))?;
    }
    Ok(poly)
}

/// Collect the variable names appearing in the given expressions. If every
/// name has the form `x<k>`, the result is `x1..xN` for the largest `N` seen;
/// otherwise names are sorted lexicographically.
pub fn infer_variables(exprs: &[&str]) -> Vec<String> {
    let mut names: BTreeSet<String> = BTreeSet::new();
    for expr in exprs {
        let chars: Vec<char> = expr.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            if chars[i].is_alphabetic() || chars[i] == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                names.insert(chars[start..i].iter().collect());
            } else {
                i += 1;
            }
        }
    }
    let mut max_index = 0usize;
    let all_xk = !names.is_empty()
        && names.iter().all(|n| {
            n.strip_prefix('x')
                .and_then(|s| s.parse::<usize>().ok())
                .filter(|&k| k >= 1)
                .map(|k| {
                    max_index = max_index.max(k);
                    true
                })
                .unwrap_or(false)
        });
    if all_xk {
        (1..=max_index).map(|k| format!("x{k}")).collect()
    } else {
        names.into_iter().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_basic() {
        let g = FGAbelianGroup::free(2);
        let f = parse_polynomial("x1 + x2 - 2", &g).unwrap();
        assert_eq!(f.to_string(), "x1 + x2 - 2");
        let f = parse_polynomial("-x1^2*x2 + 3*x1", &g).unwrap();
        assert_eq!(f.to_string(), "-x1^2*x2 + 3*x1");
    }

    #[test]
    fn parse_laurent_exponents() {
        let g = FGAbelianGroup::free_named(vec!["x".into(), "y".into()]);
        let f = parse_polynomial("x^-1*y^2 + 3", &g).unwrap();
        assert_eq!(f.num_terms(), 2);
        // canonical order is by exponent key, so the constant term leads
        assert_eq!(f.to_string(), "3 + x^-1*y^2");
    }

    #[test]
    fn parse_collects_like_terms() {
        let g = FGAbelianGroup::free(1);
        let f = parse_polynomial("x1 + x1 - 2*x1", &g).unwrap();
        assert!(f.is_zero());
        assert_eq!(f.to_string(), "0");
    }

    #[test]
    fn parse_implicit_multiplication() {
        let g = FGAbelianGroup::free(1);
        let f = parse_polynomial("2x1 - 1", &g).unwrap();
        assert_eq!(f.to_string(), "2*x1 - 1");
    }

    #[test]
    fn parse_errors() {
        let g = FGAbelianGroup::free(1);
        assert!(parse_polynomial("", &g).is_err());
        assert!(parse_polynomial("x1 +", &g).is_err());
        assert!(parse_polynomial("y + 1", &g).is_err());
        assert!(parse_polynomial("x1 ^ y", &g).is_err());
        assert!(parse_polynomial("x1 $ 2", &g).is_err());
    }

    #[test]
    fn infer_names() {
        assert_eq!(infer_variables(&["x1 + x3"]), vec!["x1", "x2", "x3"]);
        assert_eq!(infer_variables(&["x + y", "y - 1"]), vec!["x", "y"]);
        assert!(infer_variables(&["3 - 2"]).is_empty());
    }
}
