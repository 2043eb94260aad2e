//! Expression language for jet polynomials.
//!
//! Same operator grammar as the generator language; atoms are the jet
//! coordinates `z` (alias `z1`), `z2 ... z9` and the coefficient symbols
//! `a0 ... a9`, each optionally followed by a run of primes for the
//! derivative order: `z''`, `a0'`.

use jetcalc::{JetPoly, JetVar};

use crate::expr::{Expr, Parser};
use crate::lex::ParseError;

pub type JetExpr = Expr<JetVar>;

pub fn parse_jet(text: &str) -> Result<JetExpr, ParseError> {
    Parser::run(text, |name, primes, offset| {
        let order: u8 = primes
            .try_into()
            .map_err(|_| ParseError::new(offset, "derivative order too large"))?;
        if name == "z" {
            return Ok(JetVar::z(1, order));
        }
        let bad = || ParseError::new(offset, format!("unknown jet variable `{name}`"));
        let (head, rest) = name.split_at(1);
        if rest.len() != 1 || !rest.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let idx: u8 = rest.parse().map_err(|_| bad())?;
        match head {
            "z" if idx >= 1 => Ok(JetVar::z(idx, order)),
            "a" => Ok(JetVar::coeff(idx, order)),
            _ => Err(bad()),
        }
    })
}

pub fn eval_jet(expr: &JetExpr) -> JetPoly {
    match expr {
        Expr::Num(c) => JetPoly::constant(c.clone()),
        Expr::Atom(v) => JetPoly::var(*v),
        Expr::Neg(e) => eval_jet(e).neg(),
        Expr::Add(lhs, rhs) => eval_jet(lhs).add(&eval_jet(rhs)),
        Expr::Sub(lhs, rhs) => eval_jet(lhs).sub(&eval_jet(rhs)),
        Expr::Mul(lhs, rhs) => eval_jet(lhs).mul(&eval_jet(rhs)),
        Expr::Pow(base, e) => eval_jet(base).pow(*e),
    }
}
