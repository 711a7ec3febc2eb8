//! Text expressions for elements of `S(V)#G`, in the form produced by
//! [`SkewElem::render`]: terms separated by `+` / `-` tokens, each term a
//! coefficient, basis powers and at most one trailing group element.

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::group_algebra::GroupAlgebraElem;
use crate::params::GeneralValue;
use crate::scalar::{Field, Scalar};
use crate::skew::{SkewElem, SkewMonomial};

#[derive(Clone, Copy)]
pub struct ExprContext<'a> {
    pub field: Field,
    pub basis: &'a [String],
    pub group: &'a FiniteGroup,
}

struct Term {
    coeff: Option<Scalar>,
    exps: Vec<u32>,
    group: Option<usize>,
    empty: bool,
}

impl Term {
    fn new(dim: usize) -> Self {
        Term {
            coeff: None,
            exps: vec![0; dim],
            group: None,
            empty: true,
        }
    }
}

fn looks_numeric(tok: &str) -> bool {
    let rest = tok.strip_prefix('-').unwrap_or(tok);
    rest.starts_with(|c: char| c.is_ascii_digit())
}

fn push_factor(term: &mut Term, tok: &str, ctx: ExprContext<'_>, line: usize) -> Result<()> {
    if looks_numeric(tok) {
        if !term.empty {
            return Err(Error::parse(
                line,
                format!("coefficient '{tok}' must come first in its term"),
            ));
        }
        let c = ctx
            .field
            .parse_scalar(tok)
            .map_err(|e| Error::parse(line, e.to_string()))?;
        term.coeff = Some(c);
        term.empty = false;
        return Ok(());
    }
    if term.group.is_some() {
        return Err(Error::parse(
            line,
            format!("'{tok}' follows the group factor; the group element must come last"),
        ));
    }
    let (base, exp) = match tok.split_once('^') {
        Some((b, e)) => (b, Some(e)),
        None => (tok, None),
    };
    if let Some(i) = ctx.basis.iter().position(|b| b == base) {
        let k = match exp {
            None => 1,
            Some(e) => match e.parse::<u32>() {
                Ok(k) if k > 0 => k,
                _ => return Err(Error::parse(line, format!("bad exponent in '{tok}'"))),
            },
        };
        term.exps[i] += k;
        term.empty = false;
        return Ok(());
    }
    match ctx.group.parse_element(tok) {
        Some(g) => {
            term.group = Some(g);
            term.empty = false;
            Ok(())
        }
        None => Err(Error::parse(line, format!("unknown symbol '{tok}'"))),
    }
}

fn flush(out: &mut SkewElem, term: Term, sign: &Scalar, ctx: ExprContext<'_>) -> Result<()> {
    let c = term.coeff.unwrap_or_else(|| ctx.field.one());
    let g = term.group.unwrap_or_else(|| ctx.group.identity());
    out.add_term(SkewMonomial::new(0, term.exps, g), sign.checked_mul(&c)?);
    Ok(())
}

pub fn parse_skew(text: &str, ctx: ExprContext<'_>, line: usize) -> Result<SkewElem> {
    let one = ctx.field.one();
    let mut out = SkewElem::zero();
    let mut sign = one.clone();
    let mut term = Term::new(ctx.basis.len());
    let mut pending_sign = false;
    let mut seen = false;
    for tok in text.split_whitespace() {
        match tok {
            "+" | "-" => {
                if !term.empty {
                    flush(
                        &mut out,
                        std::mem::replace(&mut term, Term::new(ctx.basis.len())),
                        &sign,
                        ctx,
                    )?;
                } else if pending_sign || seen {
                    return Err(Error::parse(
                        line,
                        format!("unexpected '{tok}' in '{text}'"),
                    ));
                }
                sign = if tok == "-" { -&one } else { one.clone() };
                pending_sign = true;
            }
            _ => {
                push_factor(&mut term, tok, ctx, line)?;
                pending_sign = false;
            }
        }
        seen = true;
    }
    if term.empty {
        return Err(Error::parse(
            line,
            format!("incomplete expression '{text}'"),
        ));
    }
    flush(&mut out, term, &sign, ctx)?;
    Ok(out)
}

/// An element of `kG`.
pub fn parse_group_algebra(
    text: &str,
    ctx: ExprContext<'_>,
    line: usize,
) -> Result<GroupAlgebraElem> {
    parse_skew(text, ctx, line)?
        .as_group_algebra()
        .ok_or_else(|| Error::parse(line, format!("'{text}' is not in the group algebra")))
}

/// An element of `kG ⊕ (V ⊗ kG)`.
pub fn parse_general_value(text: &str, ctx: ExprContext<'_>, line: usize) -> Result<GeneralValue> {
    let x = parse_skew(text, ctx, line)?;
    GeneralValue::from_skew(&x, ctx.basis.len())
        .ok_or_else(|| Error::parse(line, format!("'{text}' has terms of degree above one")))
}

pub fn render_group_algebra(x: &GroupAlgebraElem, basis: &[String], group: &FiniteGroup) -> String {
    SkewElem::from_group_algebra(x, basis.len()).render(basis, group)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names() -> Vec<String> {
        vec!["v".into(), "w".into()]
    }

    #[test]
    fn round_trips_rendered_elements() {
        let f = Field::prime(5).unwrap();
        let grp = FiniteGroup::cyclic(5, "g");
        let basis = names();
        let ctx = ExprContext {
            field: f,
            basis: &basis,
            group: &grp,
        };
        for text in ["2 + v g", "- w", "3 v^2 w g^4 - 1", "0", "v w + 4 g^2"] {
            let x = parse_skew(text, ctx, 1).unwrap();
            let again = parse_skew(&x.render(&basis, &grp), ctx, 1).unwrap();
            assert_eq!(x, again, "{text}");
        }
        let x = parse_skew("v - g^-1", ctx, 1).unwrap();
        assert_eq!(x.render(&basis, &grp), "4 g^4 + v");
    }

    #[test]
    fn rejects_malformed_terms() {
        let f = Field::Rationals;
        let grp = FiniteGroup::cyclic(2, "g");
        let basis = names();
        let ctx = ExprContext {
            field: f,
            basis: &basis,
            group: &grp,
        };
        for text in ["", "v +", "g v", "g g", "v 2", "x", "+ - v", "v^0"] {
            assert!(
                matches!(parse_skew(text, ctx, 7), Err(Error::Parse { line: 7, .. })),
                "{text}"
            );
        }
        assert!(parse_group_algebra("v", ctx, 1).is_err());
        assert!(parse_general_value("v w", ctx, 1).is_err());
        assert_eq!(
            parse_skew("-1/2 v", ctx, 1).unwrap().render(&basis, &grp),
            "- 1/2 v"
        );
    }
}
