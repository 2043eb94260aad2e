//! Exact parameter polynomials.
//!
//! A [`ParamScalar`] is a sparse multivariate polynomial over the fixed,
//! closed variable set `r, d, chi, x, y, z, eps` with arbitrary-precision
//! rational coefficients. The variable `d` alone may carry negative
//! exponents: substituting `eps -> r/((n+1)d)` is the only division the
//! engine ever performs, so rational functions are represented as Laurent
//! polynomials in `d` rather than as general fractions.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational (always in lowest terms, denominator > 0).
pub type Rational = num_rational::BigRational;

/// Convenience constructor for small integer rationals.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Convenience constructor for `p/q`.
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub const NUM_VARS: usize = 7;

/// The closed parameter universe, in canonical printing order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    /// Degree of the family along the base curve (variation).
    R = 0,
    /// Fiberwise hypersurface degree.
    D = 1,
    /// Degree of the cotangent bundle of the base, `2g - 2`.
    Chi = 2,
    X = 3,
    Y = 4,
    Z = 5,
    Eps = 6,
}

impl Var {
    pub const ALL: [Var; NUM_VARS] = [
        Var::R,
        Var::D,
        Var::Chi,
        Var::X,
        Var::Y,
        Var::Z,
        Var::Eps,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Var::R => "r",
            Var::D => "d",
            Var::Chi => "chi",
            Var::X => "x",
            Var::Y => "y",
            Var::Z => "z",
            Var::Eps => "eps",
        }
    }

    /// Unknown names are rejected, never silently added to the universe.
    pub fn from_name(name: &str) -> Option<Var> {
        Var::ALL.iter().copied().find(|v| v.name() == name)
    }

    fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Exponent vector over [`Var::ALL`]. Only the `d` slot may go negative.
pub type Exponents = [i32; NUM_VARS];

const ZERO_EXPS: Exponents = [0; NUM_VARS];

fn total_degree(exps: &Exponents) -> i64 {
    exps.iter().map(|&e| e as i64).sum()
}

/// Graded-lexicographic order, highest first: total degree, then the
/// exponent vector compared in the fixed variable order.
fn graded_lex_desc(a: &Exponents, b: &Exponents) -> Ordering {
    total_degree(b)
        .cmp(&total_degree(a))
        .then_with(|| b.cmp(a))
}

/// Sparse exact polynomial in the fixed parameter universe.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ParamScalar {
    terms: BTreeMap<Exponents, Rational>,
}

impl ParamScalar {
    pub fn zero() -> Self {
        ParamScalar::default()
    }

    pub fn one() -> Self {
        ParamScalar::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = ParamScalar::zero();
        p.add_term(ZERO_EXPS, c);
        p
    }

    pub fn from_int(n: i64) -> Self {
        ParamScalar::constant(rat(n))
    }

    pub fn var(v: Var) -> Self {
        ParamScalar::monomial(Rational::one(), &[(v, 1)])
    }

    pub fn monomial(coeff: Rational, vars: &[(Var, i32)]) -> Self {
        let mut exps = ZERO_EXPS;
        for &(v, e) in vars {
            exps[v.index()] += e;
        }
        let mut p = ParamScalar::zero();
        p.add_term(exps, coeff);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&ZERO_EXPS)
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    /// Some(c) when the polynomial is a constant (including zero).
    pub fn as_constant(&self) -> Option<Rational> {
        if self.is_zero() {
            return Some(Rational::zero());
        }
        if self.terms.len() == 1 {
            if let Some(c) = self.terms.get(&ZERO_EXPS) {
                return Some(c.clone());
            }
        }
        None
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rational)> {
        self.terms.iter()
    }

    /// True when no variable carries a negative exponent.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x >= 0))
    }

    fn add_term(&mut self, exps: Exponents, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        debug_assert!(
            exps.iter()
                .enumerate()
                .all(|(i, &e)| e >= 0 || i == Var::D.index()),
            "only d may carry a negative exponent"
        );
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        ParamScalar {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = ParamScalar::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let mut e = *e1;
                for (dst, src) in e.iter_mut().zip(e2.iter()) {
                    *dst += src;
                }
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return ParamScalar::zero();
        }
        ParamScalar {
            terms: self.terms.iter().map(|(e, k)| (*e, k * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut result = ParamScalar::one();
        let mut base = self.clone();
        let mut exp = n;
        while exp > 0 {
            if exp & 1 == 1 {
                result = result.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Replace every occurrence of `eps` by `r/((n+1)d)`.
    ///
    /// The input must be a genuine polynomial; the output is a Laurent
    /// polynomial whose denominator is a power of `(n+1)d` folded into the
    /// coefficients and the `d` exponents.
    pub fn substitute_eps(&self, n: u32) -> Result<Self> {
        if n < 1 {
            return Err(Error::domain("substitute_eps needs n >= 1"));
        }
        if !self.is_polynomial() {
            return Err(Error::domain(
                "substitute_eps needs a polynomial input (no denominator)",
            ));
        }
        let base = rat((n + 1) as i64);
        let mut out = ParamScalar::zero();
        for (e, c) in &self.terms {
            let k = e[Var::Eps.index()];
            let mut exps = *e;
            let mut coeff = c.clone();
            if k > 0 {
                exps[Var::Eps.index()] = 0;
                exps[Var::R.index()] += k;
                exps[Var::D.index()] -= k;
                coeff /= base.pow(k);
            }
            out.add_term(exps, coeff);
        }
        Ok(out)
    }

    /// Degree used for asymptotics: `r` and `d` weigh 1, everything else 0.
    pub fn rd_degree_of(exps: &Exponents) -> i64 {
        exps[Var::R.index()] as i64 + exps[Var::D.index()] as i64
    }

    /// Maximal `(r, d)`-degree over all terms; None for the zero polynomial.
    pub fn rd_degree(&self) -> Option<i64> {
        self.terms.keys().map(ParamScalar::rd_degree_of).max()
    }

    /// Sum of all terms of maximal `(r, d)`-degree. Ties are all retained;
    /// zero maps to zero.
    pub fn dominant_term(&self) -> Self {
        let Some(max) = self.rd_degree() else {
            return ParamScalar::zero();
        };
        ParamScalar {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| ParamScalar::rd_degree_of(e) == max)
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        }
    }

    /// Highest exponent of `v` appearing; None for the zero polynomial.
    pub fn degree_in(&self, v: Var) -> Option<i32> {
        self.terms.keys().map(|e| e[v.index()]).max()
    }

    /// The slice of terms leading under `r >> d >> 1`: maximal `r`
    /// exponent, then maximal `d` exponent among those.
    pub fn rd_lex_leading(&self) -> Self {
        let key = |e: &Exponents| (e[Var::R.index()], e[Var::D.index()]);
        let Some(max) = self.terms.keys().map(key).max() else {
            return ParamScalar::zero();
        };
        ParamScalar {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| key(e) == max)
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        }
    }

    /// The guaranteed sign for positive parameter values: Some when every
    /// coefficient agrees (or the polynomial is zero), None when mixed.
    pub fn uniform_sign(&self) -> Option<Sign> {
        if self.is_zero() {
            return Some(Sign::Zero);
        }
        let mut signs = self.terms.values().map(|c| Sign::of(c));
        let first = signs.next()?;
        signs.all(|s| s == first).then_some(first)
    }

    /// The sub-polynomial of terms matching every `(var, exponent)` pin in
    /// `pattern`, with those variables stripped from the result.
    pub fn coefficient_of(&self, pattern: &[(Var, i32)]) -> Self {
        let mut out = ParamScalar::zero();
        'terms: for (e, c) in &self.terms {
            let mut stripped = *e;
            for &(v, k) in pattern {
                if e[v.index()] != k {
                    continue 'terms;
                }
                stripped[v.index()] = 0;
            }
            out.add_term(stripped, c.clone());
        }
        out
    }

    /// Exact evaluation. Every variable that occurs must be assigned;
    /// negative `d` exponents require a nonzero value for `d`.
    pub fn evaluate(&self, at: &Assignment) -> Result<Rational> {
        let mut total = Rational::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let v = Var::ALL[i];
                let val = at
                    .get(v)
                    .ok_or_else(|| Error::domain(format!("no value supplied for {v}")))?;
                if k < 0 && val.is_zero() {
                    return Err(Error::domain(format!(
                        "evaluation needs {v} != 0 (negative exponent)"
                    )));
                }
                term *= val.pow(k);
            }
            total += term;
        }
        Ok(total)
    }

    /// JSON form: a list of `{"coeff": "p/q", "exps": {var: int}}` objects
    /// in canonical term order.
    pub fn to_json(&self) -> serde_json::Value {
        let mut entries: Vec<(&Exponents, &Rational)> = self.terms.iter().collect();
        entries.sort_by(|a, b| graded_lex_desc(a.0, b.0));
        serde_json::Value::Array(
            entries
                .into_iter()
                .map(|(e, c)| {
                    let mut exps = serde_json::Map::new();
                    for (i, &k) in e.iter().enumerate() {
                        if k != 0 {
                            exps.insert(Var::ALL[i].name().to_string(), k.into());
                        }
                    }
                    serde_json::json!({ "coeff": c.to_string(), "exps": exps })
                })
                .collect(),
        )
    }
}

impl fmt::Display for ParamScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut entries: Vec<(&Exponents, &Rational)> = self.terms.iter().collect();
        entries.sort_by(|a, b| graded_lex_desc(a.0, b.0));
        for (idx, (e, c)) in entries.into_iter().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            let mono = {
                let mut parts = Vec::new();
                for (i, &k) in e.iter().enumerate() {
                    if k == 0 {
                        continue;
                    }
                    if k == 1 {
                        parts.push(Var::ALL[i].name().to_string());
                    } else {
                        parts.push(format!("{}^{}", Var::ALL[i].name(), k));
                    }
                }
                parts.join("*")
            };
            let body = if mono.is_empty() {
                mag.to_string()
            } else if mag.is_one() {
                mono
            } else {
                format!("{mag}*{mono}")
            };
            if idx == 0 {
                if negative {
                    write!(f, "-{body}")?;
                } else {
                    f.write_str(&body)?;
                }
            } else if negative {
                write!(f, " - {body}")?;
            } else {
                write!(f, " + {body}")?;
            }
        }
        Ok(())
    }
}

impl std::ops::Add for &ParamScalar {
    type Output = ParamScalar;
    fn add(self, rhs: Self) -> ParamScalar {
        ParamScalar::add(self, rhs)
    }
}

impl std::ops::Sub for &ParamScalar {
    type Output = ParamScalar;
    fn sub(self, rhs: Self) -> ParamScalar {
        ParamScalar::sub(self, rhs)
    }
}

impl std::ops::Mul for &ParamScalar {
    type Output = ParamScalar;
    fn mul(self, rhs: Self) -> ParamScalar {
        ParamScalar::mul(self, rhs)
    }
}

impl std::ops::Neg for &ParamScalar {
    type Output = ParamScalar;
    fn neg(self) -> ParamScalar {
        ParamScalar::neg(self)
    }
}

/// A numeric sample point: exact rational values for a subset of the
/// parameter universe.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Assignment {
    values: BTreeMap<Var, Rational>,
}

impl Assignment {
    pub fn new() -> Self {
        Assignment::default()
    }

    pub fn with(mut self, v: Var, value: Rational) -> Self {
        self.values.insert(v, value);
        self
    }

    pub fn set(&mut self, v: Var, value: Rational) {
        self.values.insert(v, value);
    }

    pub fn get(&self, v: Var) -> Option<&Rational> {
        self.values.get(&v)
    }

    pub fn contains(&self, v: Var) -> bool {
        self.values.contains_key(&v)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Var, &Rational)> {
        self.values.iter()
    }
}

/// Exact sign of a rational, used for certificate verdicts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of(value: &Rational) -> Sign {
        if value.is_zero() {
            Sign::Zero
        } else if value.is_negative() {
            Sign::Negative
        } else {
            Sign::Positive
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Sign::Negative => "negative",
            Sign::Zero => "zero",
            Sign::Positive => "positive",
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(var: Var) -> ParamScalar {
        ParamScalar::var(var)
    }

    #[test]
    fn difference_of_squares() {
        let r = v(Var::R);
        let d = v(Var::D);
        let lhs = (&r.add(&d)).mul(&r.sub(&d));
        let rhs = r.pow(2).sub(&d.pow(2));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn binomial_square() {
        // (2+x)^2 = 4 + 4x + x^2
        let p = ParamScalar::from_int(2).add(&v(Var::X)).pow(2);
        let want = ParamScalar::from_int(4)
            .add(&ParamScalar::monomial(rat(4), &[(Var::X, 1)]))
            .add(&ParamScalar::monomial(rat(1), &[(Var::X, 2)]));
        assert_eq!(p, want);
    }

    #[test]
    fn cancellation_drops_terms() {
        // chi*d^3 - 12 r d^2 + 12 r d^2 = chi*d^3
        let chid3 = ParamScalar::monomial(rat(1), &[(Var::Chi, 1), (Var::D, 3)]);
        let rd2 = ParamScalar::monomial(rat(12), &[(Var::R, 1), (Var::D, 2)]);
        let sum = chid3.sub(&rd2).add(&rd2);
        assert_eq!(sum, chid3);
        assert_eq!(sum.num_terms(), 1);
    }

    #[test]
    fn substitute_eps_merges_into_rd() {
        // 20 eps x d^2 at n=2 -> (20/3) x r d
        let p = ParamScalar::monomial(rat(20), &[(Var::Eps, 1), (Var::X, 1), (Var::D, 2)]);
        let got = p.substitute_eps(2).unwrap();
        let want = ParamScalar::monomial(ratio(20, 3), &[(Var::X, 1), (Var::R, 1), (Var::D, 1)]);
        assert_eq!(got, want);
    }

    #[test]
    fn substitute_eps_identity_without_eps() {
        let p = ParamScalar::monomial(rat(7), &[(Var::R, 2), (Var::Chi, 1)]);
        assert_eq!(p.substitute_eps(3).unwrap(), p);
    }

    #[test]
    fn substitute_eps_square() {
        // eps^2 d^2 at n=2 -> r^2/9
        let p = ParamScalar::monomial(rat(1), &[(Var::Eps, 2), (Var::D, 2)]);
        let got = p.substitute_eps(2).unwrap();
        assert_eq!(got, ParamScalar::monomial(ratio(1, 9), &[(Var::R, 2)]));
    }

    #[test]
    fn substitute_eps_rejects_laurent_input() {
        let p = ParamScalar::monomial(rat(1), &[(Var::D, -1)]);
        assert!(p.substitute_eps(2).is_err());
    }

    #[test]
    fn dominant_keeps_max_rd_grade() {
        // (d-4)^3 r + 3 (d-4)^2 (r+chi) d: grade-4 part is 4 r d^3.
        let d4 = v(Var::D).sub(&ParamScalar::from_int(4));
        let p = d4.pow(3).mul(&v(Var::R)).add(
            &ParamScalar::from_int(3)
                .mul(&d4.pow(2))
                .mul(&v(Var::R).add(&v(Var::Chi)))
                .mul(&v(Var::D)),
        );
        let want = ParamScalar::monomial(rat(4), &[(Var::R, 1), (Var::D, 3)]);
        assert_eq!(p.dominant_term(), want);
    }

    #[test]
    fn dominant_retains_ties() {
        let p = ParamScalar::monomial(rat(1), &[(Var::Chi, 1), (Var::D, 3)])
            .sub(&ParamScalar::monomial(rat(12), &[(Var::R, 1), (Var::D, 2)]));
        assert_eq!(p.dominant_term(), p);
    }

    #[test]
    fn dominant_of_constant_and_zero() {
        let five = ParamScalar::from_int(5);
        assert_eq!(five.dominant_term(), five);
        assert!(ParamScalar::zero().dominant_term().is_zero());
    }

    #[test]
    fn evaluate_exactly() {
        // r^2/9 at r = 3/2 -> 1/4
        let p = ParamScalar::monomial(ratio(1, 9), &[(Var::R, 2)]);
        let at = Assignment::new().with(Var::R, ratio(3, 2));
        assert_eq!(p.evaluate(&at).unwrap(), ratio(1, 4));
    }

    #[test]
    fn evaluate_laurent_needs_nonzero_d() {
        let p = ParamScalar::monomial(rat(1), &[(Var::R, 1), (Var::D, -1)]);
        let at = Assignment::new().with(Var::R, rat(5)).with(Var::D, rat(0));
        assert!(p.evaluate(&at).is_err());
        let at = Assignment::new().with(Var::R, rat(5)).with(Var::D, rat(2));
        assert_eq!(p.evaluate(&at).unwrap(), ratio(5, 2));
    }

    #[test]
    fn evaluate_requires_all_vars() {
        let p = v(Var::Chi);
        assert!(p.evaluate(&Assignment::new()).is_err());
    }

    #[test]
    fn render_canonical() {
        let p = ParamScalar::monomial(rat(1), &[(Var::Chi, 1), (Var::D, 3)])
            .sub(&ParamScalar::monomial(rat(12), &[(Var::R, 1), (Var::D, 2)]));
        assert_eq!(p.to_string(), "d^3*chi - 12*r*d^2");
        let q = ParamScalar::monomial(ratio(20, 3), &[(Var::X, 1), (Var::R, 1), (Var::D, 1)]);
        assert_eq!(q.to_string(), "20/3*r*d*x");
        assert_eq!(ParamScalar::zero().to_string(), "0");
        let laurent = ParamScalar::monomial(ratio(-1, 3), &[(Var::R, 1), (Var::D, -1)]);
        assert_eq!(laurent.to_string(), "-1/3*r*d^-1");
    }

    #[test]
    fn json_shape() {
        let p = ParamScalar::monomial(ratio(-1, 2), &[(Var::R, 1), (Var::D, -1)]);
        let json = p.to_json();
        assert_eq!(
            json,
            serde_json::json!([{ "coeff": "-1/2", "exps": { "r": 1, "d": -1 } }])
        );
    }

    #[test]
    fn lex_leading_under_r_then_d() {
        // -20 x^2 r d - 60 r d + 5 d^2: leading (r, d) pair is (1, 1).
        let p = ParamScalar::monomial(rat(-20), &[(Var::X, 2), (Var::R, 1), (Var::D, 1)])
            .add(&ParamScalar::monomial(rat(-60), &[(Var::R, 1), (Var::D, 1)]))
            .add(&ParamScalar::monomial(rat(5), &[(Var::D, 2)]));
        let leading = p.rd_lex_leading();
        assert_eq!(leading.num_terms(), 2);
        assert_eq!(leading.uniform_sign(), Some(Sign::Negative));
        assert_eq!(
            p.add(&ParamScalar::monomial(
                rat(9),
                &[(Var::Y, 1), (Var::R, 1), (Var::D, 1)]
            ))
            .rd_lex_leading()
            .uniform_sign(),
            None
        );
        assert_eq!(ParamScalar::zero().uniform_sign(), Some(Sign::Zero));
    }

    #[test]
    fn coefficient_extraction() {
        let p = ParamScalar::monomial(rat(7), &[(Var::R, 1), (Var::D, 3), (Var::Y, 2)]).add(
            &ParamScalar::monomial(rat(5), &[(Var::Chi, 1), (Var::D, 3)]),
        );
        let c = p.coefficient_of(&[(Var::R, 1), (Var::D, 3), (Var::Chi, 0)]);
        assert_eq!(c, ParamScalar::monomial(rat(7), &[(Var::Y, 2)]));
    }
}
