//! Expression language over the tower generators and parameters.
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary ('*' unary)*
//! unary := '-' unary | power
//! power := atom ('^' UINT)?
//! atom  := UINT ('/' UINT)? | ident | '(' expr ')'
//! ```
//!
//! so `^` binds tighter than unary minus, which binds tighter than `*`.
//! Exponents are nonnegative integer literals. `/` only forms rational
//! literals. Identifiers are the parameters `r d chi x y z eps`, the base
//! class `b`, the ambient class `a` and the tautological classes
//! `a1 ... a9`.

use jetcalc::{ChowClass, Gen, ParamScalar, Rational, TowerContext, Var};
use num_traits::Zero;

use crate::lex::{tokenize, ParseError, Token, TokenKind};

#[derive(Debug, Clone, PartialEq)]
pub enum Expr<A> {
    Num(Rational),
    Atom(A),
    Neg(Box<Expr<A>>),
    Add(Box<Expr<A>>, Box<Expr<A>>),
    Sub(Box<Expr<A>>, Box<Expr<A>>),
    Mul(Box<Expr<A>>, Box<Expr<A>>),
    Pow(Box<Expr<A>>, u32),
}

pub(crate) struct Parser<'t, A, F>
where
    F: Fn(&str, u32, usize) -> Result<A, ParseError>,
{
    tokens: &'t [Token],
    pos: usize,
    end: usize,
    resolve: F,
}

impl<'t, A, F> Parser<'t, A, F>
where
    F: Fn(&str, u32, usize) -> Result<A, ParseError>,
{
    pub(crate) fn run(text: &str, resolve: F) -> Result<Expr<A>, ParseError> {
        let tokens = tokenize(text)?;
        let mut parser = Parser {
            tokens: &tokens,
            pos: 0,
            end: text.len(),
            resolve,
        };
        let expr = parser.expr()?;
        if let Some(t) = parser.peek() {
            return Err(ParseError::new(t.offset, "unexpected trailing input"));
        }
        Ok(expr)
    }

    fn peek(&self) -> Option<&'t Token> {
        self.tokens.get(self.pos)
    }

    fn bump(&mut self) -> Option<&'t Token> {
        let t = self.tokens.get(self.pos);
        self.pos += 1;
        t
    }

    fn offset(&self) -> usize {
        self.peek().map(|t| t.offset).unwrap_or(self.end)
    }

    fn expr(&mut self) -> Result<Expr<A>, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek().map(|t| &t.kind) {
                Some(TokenKind::Plus) => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(TokenKind::Minus) => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr<A>, ParseError> {
        let mut lhs = self.unary()?;
        while matches!(self.peek().map(|t| &t.kind), Some(TokenKind::Star)) {
            self.bump();
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr<A>, ParseError> {
        if matches!(self.peek().map(|t| &t.kind), Some(TokenKind::Minus)) {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr<A>, ParseError> {
        let base = self.atom()?;
        if !matches!(self.peek().map(|t| &t.kind), Some(TokenKind::Caret)) {
            return Ok(base);
        }
        self.bump();
        let offset = self.offset();
        match self.bump().map(|t| &t.kind) {
            Some(TokenKind::Int(k)) => {
                let exp: u32 = k
                    .try_into()
                    .map_err(|_| ParseError::new(offset, "exponent too large"))?;
                Ok(Expr::Pow(Box::new(base), exp))
            }
            _ => Err(ParseError::new(
                offset,
                "exponent must be a nonnegative integer literal",
            )),
        }
    }

    fn atom(&mut self) -> Result<Expr<A>, ParseError> {
        let offset = self.offset();
        match self.bump().map(|t| &t.kind) {
            Some(TokenKind::Int(k)) => {
                if matches!(self.peek().map(|t| &t.kind), Some(TokenKind::Slash)) {
                    self.bump();
                    let den_offset = self.offset();
                    match self.bump().map(|t| &t.kind) {
                        Some(TokenKind::Int(q)) => {
                            if q.is_zero() {
                                return Err(ParseError::new(den_offset, "zero denominator"));
                            }
                            Ok(Expr::Num(Rational::new(k.clone(), q.clone())))
                        }
                        _ => Err(ParseError::new(
                            den_offset,
                            "expected integer denominator after '/'",
                        )),
                    }
                } else {
                    Ok(Expr::Num(Rational::from_integer(k.clone())))
                }
            }
            Some(TokenKind::Ident { name, primes }) => {
                Ok(Expr::Atom((self.resolve)(name, *primes, offset)?))
            }
            Some(TokenKind::LParen) => {
                let inner = self.expr()?;
                let close = self.offset();
                match self.bump().map(|t| &t.kind) {
                    Some(TokenKind::RParen) => Ok(inner),
                    _ => Err(ParseError::new(close, "unbalanced parenthesis")),
                }
            }
            Some(_) => Err(ParseError::new(offset, "unexpected token")),
            None => Err(ParseError::new(offset, "unexpected end of input")),
        }
    }
}

/// Atom of the generator language: a parameter or a Chow generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChowAtom {
    Param(Var),
    Gen(Gen),
}

pub type ChowExpr = Expr<ChowAtom>;

/// Parse a generator expression. Level bounds are checked at evaluation
/// time; names outside the closed vocabulary fail here.
pub fn parse(text: &str) -> Result<ChowExpr, ParseError> {
    Parser::run(text, |name, primes, offset| {
        if primes > 0 {
            return Err(ParseError::new(offset, "primes are not valid here"));
        }
        if let Some(v) = Var::from_name(name) {
            return Ok(ChowAtom::Param(v));
        }
        match name {
            "b" => Ok(ChowAtom::Gen(Gen::Beta)),
            "a" => Ok(ChowAtom::Gen(Gen::Alpha)),
            _ => {
                if let Some(rest) = name.strip_prefix('a') {
                    if rest.len() == 1 && rest.chars().all(|c| c.is_ascii_digit()) {
                        let j: u32 = rest.parse().unwrap();
                        if j >= 1 {
                            return Ok(ChowAtom::Gen(Gen::Jet(j)));
                        }
                    }
                }
                Err(ParseError::new(
                    offset,
                    format!("unknown identifier `{name}`"),
                ))
            }
        }
    })
}

/// Evaluate on the top level of the context.
pub fn eval(expr: &ChowExpr, ctx: &TowerContext) -> jetcalc::Result<ChowClass> {
    let n = ctx.n();
    let level = ctx.depth();
    match expr {
        Expr::Num(c) => Ok(ChowClass::scalar(n, level, ParamScalar::constant(c.clone()))),
        Expr::Atom(ChowAtom::Param(v)) => Ok(ChowClass::scalar(n, level, ParamScalar::var(*v))),
        Expr::Atom(ChowAtom::Gen(g)) => ChowClass::generator(n, level, *g),
        Expr::Neg(e) => Ok(eval(e, ctx)?.neg()),
        Expr::Add(lhs, rhs) => eval(lhs, ctx)?.add(&eval(rhs, ctx)?),
        Expr::Sub(lhs, rhs) => eval(lhs, ctx)?.sub(&eval(rhs, ctx)?),
        Expr::Mul(lhs, rhs) => eval(lhs, ctx)?.mul(&eval(rhs, ctx)?),
        Expr::Pow(base, e) => eval(base, ctx)?.pow(*e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use jetcalc::{rat, ratio};

    #[test]
    fn parses_sum_of_generators() {
        let e = parse("a1 + 2*a").unwrap();
        match e {
            Expr::Add(lhs, rhs) => {
                assert_eq!(*lhs, Expr::Atom(ChowAtom::Gen(Gen::Jet(1))));
                match *rhs {
                    Expr::Mul(two, a) => {
                        assert_eq!(*two, Expr::Num(rat(2)));
                        assert_eq!(*a, Expr::Atom(ChowAtom::Gen(Gen::Alpha)));
                    }
                    other => panic!("unexpected rhs {other:?}"),
                }
            }
            other => panic!("unexpected parse {other:?}"),
        }
    }

    #[test]
    fn parses_nested_power() {
        let e = parse("(a3 + (2+z)*a2)^9").unwrap();
        assert!(matches!(e, Expr::Pow(_, 9)));
    }

    #[test]
    fn rejects_negative_exponent() {
        let err = parse("a^-1").unwrap_err();
        assert_eq!(err.offset, 2);
    }

    #[test]
    fn rejects_unknown_identifier_with_offset() {
        let err = parse("a1 + w").unwrap_err();
        assert_eq!(err.offset, 5);
        assert!(err.message.contains('w'));
    }

    #[test]
    fn rejects_unbalanced_parens() {
        assert!(parse("(a1 + 2").is_err());
        assert!(parse("a1 + 2)").is_err());
    }

    #[test]
    fn rational_literals() {
        let e = parse("11/3*x").unwrap();
        match e {
            Expr::Mul(lhs, _) => assert_eq!(*lhs, Expr::Num(ratio(11, 3))),
            other => panic!("unexpected parse {other:?}"),
        }
        assert!(parse("1/0").is_err());
    }

    #[test]
    fn unary_minus_binds_looser_than_power() {
        // -2^2 parses as -(2^2)
        let ctx = TowerContext::new(2, 0).unwrap();
        let e = parse("-2^2").unwrap();
        let got = eval(&e, &ctx).unwrap();
        assert_eq!(got, ChowClass::scalar(2, 0, ParamScalar::from_int(-4)));
    }

    #[test]
    fn eval_relations() {
        let ctx = TowerContext::new(2, 1).unwrap();
        let bb = eval(&parse("b*b").unwrap(), &ctx).unwrap();
        assert!(bb.is_zero());
        let cls = eval(&parse("a1 + 2*a").unwrap(), &ctx).unwrap();
        let w = jetcalc::BundleWeights::new(
            ParamScalar::zero(),
            ParamScalar::from_int(2),
            vec![ParamScalar::from_int(1)],
        );
        assert_eq!(cls, jetcalc::class_of(&w, &ctx).unwrap());
    }

    #[test]
    fn eval_rejects_generator_beyond_depth() {
        let ctx = TowerContext::new(2, 1).unwrap();
        assert!(eval(&parse("a2").unwrap(), &ctx).is_err());
    }

    #[test]
    fn top_intersection_through_the_language() {
        let ctx = TowerContext::new(2, 0).unwrap();
        let cls = eval(&parse("a^3").unwrap(), &ctx).unwrap();
        assert_eq!(
            cls.top_intersection(&ctx).unwrap(),
            ParamScalar::var(Var::R)
        );
    }
}
