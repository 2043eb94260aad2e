//! Differential algebra of jet coordinates.
//!
//! Polynomials live in the variables `z_j^(lambda)` (jet coordinates, with
//! `'` marking the order) and opaque coefficient symbols `a_i` together
//! with their formal derivatives `a_i', a_i'', ...`. The total-derivative
//! operator `D` raises jet orders through the product rule and sends each
//! coefficient symbol to its next formal derivative; jet orders are capped
//! by a truncation bound and overflowing it is a domain error.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{rat, Rational};

/// One variable of the jet algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum JetVar {
    /// `z_j^(order)`; `j` is 1-based.
    Z { j: u8, order: u8 },
    /// Formal derivative `a_idx^(order)` of a coefficient symbol.
    Coeff { idx: u8, order: u8 },
}

impl JetVar {
    pub fn z(j: u8, order: u8) -> JetVar {
        JetVar::Z { j, order }
    }

    pub fn coeff(idx: u8, order: u8) -> JetVar {
        JetVar::Coeff { idx, order }
    }

    fn raised(self) -> JetVar {
        match self {
            JetVar::Z { j, order } => JetVar::Z { j, order: order + 1 },
            JetVar::Coeff { idx, order } => JetVar::Coeff {
                idx,
                order: order + 1,
            },
        }
    }
}

impl fmt::Display for JetVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (base, order) = match *self {
            JetVar::Z { j: 1, order } => ("z".to_string(), order),
            JetVar::Z { j, order } => (format!("z{j}"), order),
            JetVar::Coeff { idx, order } => (format!("a{idx}"), order),
        };
        write!(f, "{base}{}", "'".repeat(order as usize))
    }
}

type JetMono = BTreeMap<JetVar, u32>;

/// Sparse polynomial over the jet variables with exact rational
/// coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct JetPoly {
    terms: BTreeMap<JetMono, Rational>,
}

impl JetPoly {
    pub fn zero() -> Self {
        JetPoly::default()
    }

    pub fn one() -> Self {
        JetPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = JetPoly::zero();
        p.add_term(JetMono::new(), c);
        p
    }

    pub fn var(v: JetVar) -> Self {
        let mut mono = JetMono::new();
        mono.insert(v, 1);
        let mut p = JetPoly::zero();
        p.add_term(mono, Rational::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn add_term(&mut self, mono: JetMono, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
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
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        JetPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return JetPoly::zero();
        }
        JetPoly {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = JetPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let mut mono = m1.clone();
                for (v, e) in m2 {
                    *mono.entry(*v).or_insert(0) += e;
                }
                out.add_term(mono, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut result = JetPoly::one();
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

    /// Partial derivative with respect to a single variable.
    pub fn partial(&self, v: JetVar) -> Self {
        let mut out = JetPoly::zero();
        for (m, c) in &self.terms {
            let Some(&e) = m.get(&v) else { continue };
            let mut mono = m.clone();
            if e == 1 {
                mono.remove(&v);
            } else {
                mono.insert(v, e - 1);
            }
            out.add_term(mono, c * rat(e as i64));
        }
        out
    }

    /// Highest jet order appearing among the `z` variables.
    pub fn max_z_order(&self) -> Option<u8> {
        self.terms
            .keys()
            .flat_map(|m| m.keys())
            .filter_map(|v| match v {
                JetVar::Z { order, .. } => Some(*order),
                JetVar::Coeff { .. } => None,
            })
            .max()
    }

    /// The set of `j` indices of jet variables appearing.
    pub fn z_directions(&self) -> BTreeSet<u8> {
        self.terms
            .keys()
            .flat_map(|m| m.keys())
            .filter_map(|v| match v {
                JetVar::Z { j, .. } => Some(*j),
                JetVar::Coeff { .. } => None,
            })
            .collect()
    }
}

impl fmt::Display for JetPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let degree = |m: &JetMono| m.values().sum::<u32>();
        let mut entries: Vec<(&JetMono, &Rational)> = self.terms.iter().collect();
        entries.sort_by(|a, b| degree(b.0).cmp(&degree(a.0)).then_with(|| a.0.cmp(b.0)));
        for (idx, (mono, coeff)) in entries.into_iter().enumerate() {
            let negative = coeff.is_negative();
            let mag = coeff.abs();
            let mono_str = mono
                .iter()
                .map(|(v, &e)| {
                    if e == 1 {
                        v.to_string()
                    } else {
                        format!("{v}^{e}")
                    }
                })
                .collect::<Vec<_>>()
                .join("*");
            let body = if mono_str.is_empty() {
                mag.to_string()
            } else if mag.is_one() {
                mono_str
            } else {
                format!("{mag}*{mono_str}")
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

impl std::ops::Add for &JetPoly {
    type Output = JetPoly;
    fn add(self, rhs: Self) -> JetPoly {
        JetPoly::add(self, rhs)
    }
}

impl std::ops::Sub for &JetPoly {
    type Output = JetPoly;
    fn sub(self, rhs: Self) -> JetPoly {
        JetPoly::sub(self, rhs)
    }
}

impl std::ops::Mul for &JetPoly {
    type Output = JetPoly;
    fn mul(self, rhs: Self) -> JetPoly {
        JetPoly::mul(self, rhs)
    }
}

/// The total-derivative operator with a truncation cap on jet orders.
///
/// `apply` raises every `z_j^(lambda)` to `z_j^(lambda+1)` and every
/// coefficient symbol to its next formal derivative, via the product rule.
/// Inputs already touching the cap overflow.
#[derive(Debug, Clone, Copy)]
pub struct Derivation {
    cap: u8,
}

impl Derivation {
    pub fn new(cap: u8) -> Self {
        Derivation { cap }
    }

    /// Cap sized for order-`kappa` work: `kappa + 2`, the largest index
    /// the commutator identity produces.
    pub fn for_order(kappa: u8) -> Self {
        Derivation { cap: kappa + 2 }
    }

    pub fn cap(&self) -> u8 {
        self.cap
    }

    pub fn apply(&self, p: &JetPoly) -> Result<JetPoly> {
        if let Some(order) = p.max_z_order() {
            if order >= self.cap {
                return Err(Error::TruncationOverflow {
                    order: order as u32 + 1,
                    cap: self.cap as u32,
                });
            }
        }
        let mut out = JetPoly::zero();
        for (mono, coeff) in &p.terms {
            for (&v, &e) in mono.iter() {
                let mut m = mono.clone();
                if e == 1 {
                    m.remove(&v);
                } else {
                    m.insert(v, e - 1);
                }
                *m.entry(v.raised()).or_insert(0) += 1;
                out.add_term(m, coeff * rat(e as i64));
            }
        }
        Ok(out)
    }

    pub fn apply_n(&self, p: &JetPoly, times: u32) -> Result<JetPoly> {
        let mut out = p.clone();
        for _ in 0..times {
            out = self.apply(&out)?;
        }
        Ok(out)
    }
}

/// Determinant of a square matrix of jet polynomials, by minor expansion.
pub fn determinant(m: &[Vec<JetPoly>]) -> JetPoly {
    let size = m.len();
    debug_assert!(m.iter().all(|row| row.len() == size));
    if size == 0 {
        return JetPoly::one();
    }
    if size == 1 {
        return m[0][0].clone();
    }
    let mut acc = JetPoly::zero();
    for col in 0..size {
        if m[0][col].is_zero() {
            continue;
        }
        let minor: Vec<Vec<JetPoly>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != col)
                    .map(|(_, p)| p.clone())
                    .collect()
            })
            .collect();
        let cofactor = m[0][col].mul(&determinant(&minor));
        if col % 2 == 0 {
            acc = acc.add(&cofactor);
        } else {
            acc = acc.sub(&cofactor);
        }
    }
    acc
}

/// The matrix whose row `l` holds `D^l(z^j)` for `j = 0..=kappa`.
pub fn wronskian_matrix(kappa: u32) -> Result<Vec<Vec<JetPoly>>> {
    if kappa < 1 || kappa > 12 {
        return Err(Error::domain("wronskian order must be in 1..=12"));
    }
    let z = JetPoly::var(JetVar::z(1, 0));
    let derivation = Derivation::new(kappa as u8 + 1);
    let mut rows = Vec::with_capacity(kappa as usize + 1);
    let mut current: Vec<JetPoly> = (0..=kappa).map(|j| z.pow(j)).collect();
    for l in 0..=kappa {
        rows.push(current.clone());
        if l < kappa {
            current = current
                .iter()
                .map(|p| derivation.apply(p))
                .collect::<Result<_>>()?;
        }
    }
    Ok(rows)
}

/// `1! 2! ... kappa! * (z')^(kappa(kappa+1)/2)`.
pub fn wronskian_closed_form(kappa: u32) -> JetPoly {
    let mut factor = Rational::one();
    for i in 1..=kappa as i64 {
        for m in 1..=i {
            factor *= rat(m);
        }
    }
    JetPoly::var(JetVar::z(1, 1))
        .pow(kappa * (kappa + 1) / 2)
        .scale(&factor)
}

/// Fully expanded determinant of successive total derivatives of
/// `1, z, ..., z^kappa`; checked against the closed form before returning.
pub fn wronskian_det(kappa: u32) -> Result<JetPoly> {
    let expanded = determinant(&wronskian_matrix(kappa)?);
    if expanded != wronskian_closed_form(kappa) {
        return Err(Error::domain(
            "wronskian expansion disagrees with its closed form",
        ));
    }
    Ok(expanded)
}

/// A vector field with polynomial components, applied as a derivation.
struct VectorField {
    components: Vec<(JetVar, JetPoly)>,
}

impl VectorField {
    fn apply(&self, q: &JetPoly) -> JetPoly {
        let mut out = JetPoly::zero();
        for (v, coeff) in &self.components {
            out = out.add(&coeff.mul(&q.partial(*v)));
        }
        out
    }
}

fn splitmix(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e3779b97f4a7c15);
    let mut x = *state;
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d049bb133111eb);
    x ^ (x >> 31)
}

/// Verify the commutator identity for the vector field
/// `T = sum_i A_i d/da_i + sum_(l<=kappa) D^l(P) d/dz^(l)` (single jet
/// direction `z = z_1`):
///
/// `[T, D] = -sum_i D(A_i) d/da_i - D^(kappa+1)(P) d/dz^(kappa)`
///
/// Both sides are evaluated on every variable in range, on the coefficient
/// symbols, and on a deterministic batch of quadratics.
pub fn commutator_check(p: &JetPoly, a_list: &[JetPoly], kappa: u32) -> Result<bool> {
    if kappa < 1 || kappa > 120 {
        return Err(Error::domain("commutator check needs 1 <= kappa <= 120"));
    }
    let derivation = Derivation::for_order(kappa as u8);
    let mut t = VectorField {
        components: Vec::new(),
    };
    for (i, a) in a_list.iter().enumerate() {
        t.components.push((JetVar::coeff(i as u8, 0), a.clone()));
    }
    let mut p_derivs = vec![p.clone()];
    for _ in 0..=kappa {
        let next = derivation.apply(p_derivs.last().expect("nonempty"))?;
        p_derivs.push(next);
    }
    for (l, dp) in p_derivs.iter().enumerate().take(kappa as usize + 1) {
        t.components.push((JetVar::z(1, l as u8), dp.clone()));
    }

    let mut rhs = VectorField {
        components: Vec::new(),
    };
    for (i, a) in a_list.iter().enumerate() {
        rhs.components
            .push((JetVar::coeff(i as u8, 0), derivation.apply(a)?.neg()));
    }
    rhs.components.push((
        JetVar::z(1, kappa as u8),
        p_derivs[kappa as usize + 1].neg(),
    ));

    // Generating set: every jet variable in range, the coefficient
    // symbols, then quadratic probes.
    let mut probes: Vec<JetPoly> = Vec::new();
    let mut directions: BTreeSet<u8> = p.z_directions();
    directions.insert(1);
    for &j in &directions {
        for order in 0..=kappa as u8 {
            probes.push(JetPoly::var(JetVar::z(j, order)));
        }
    }
    for i in 0..a_list.len() {
        probes.push(JetPoly::var(JetVar::coeff(i as u8, 0)));
    }
    let vars: Vec<JetPoly> = probes.clone();
    for pair in vars.windows(2) {
        probes.push(pair[0].mul(&pair[1]));
    }
    let mut state = 0x5eed_cafe_u64;
    for _ in 0..4 {
        let mut q = JetPoly::zero();
        for v in &vars {
            let c = (splitmix(&mut state) % 7) as i64 - 3;
            q = q.add(&v.scale(&rat(c)));
        }
        probes.push(q.mul(&q));
    }

    for q in &probes {
        let lhs = t
            .apply(&derivation.apply(q)?)
            .sub(&derivation.apply(&t.apply(q))?);
        if lhs != rhs.apply(q) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Verify the expansion of an iterated derivative of `sum_i a_i z^(alpha_i)`
/// into the coefficient-derivative ladder:
///
/// `D^(l+1)(sum a z^alpha) = sum a (z^alpha)^(l+1) + sum a' (z^alpha)^(l)
///   + sum_(k=0..l-1) D^(l-k)(sum a' (z^alpha)^(k))`.
pub fn leibniz_check(alphas: &[Vec<u32>], l: u32) -> Result<bool> {
    if alphas.is_empty() {
        return Err(Error::domain("leibniz check needs at least one exponent"));
    }
    if l > 6 {
        return Err(Error::domain("leibniz check is a desk-scale identity, l <= 6"));
    }
    let derivation = Derivation::new(l as u8 + 2);
    let z_mono = |alpha: &Vec<u32>| -> JetPoly {
        alpha.iter().enumerate().fold(JetPoly::one(), |acc, (j, &e)| {
            acc.mul(&JetPoly::var(JetVar::z(j as u8 + 1, 0)).pow(e))
        })
    };
    let sum_with = |order: u8, derived: u32| -> Result<JetPoly> {
        let mut acc = JetPoly::zero();
        for (i, alpha) in alphas.iter().enumerate() {
            let a = JetPoly::var(JetVar::coeff(i as u8, order));
            acc = acc.add(&a.mul(&derivation.apply_n(&z_mono(alpha), derived)?));
        }
        Ok(acc)
    };

    let lhs = derivation.apply_n(&sum_with(0, 0)?, l + 1)?;
    let mut rhs = sum_with(0, l + 1)?.add(&sum_with(1, l)?);
    for k in 0..l {
        rhs = rhs.add(&derivation.apply_n(&sum_with(1, k)?, l - k)?);
    }
    Ok(lhs == rhs)
}

/// Twist degrees that make the constructed fields on the universal family
/// holomorphic: `kappa` for the jet-directional part and
/// `kappa^2 + 2*kappa` for the horizontal part solved through the linear
/// systems. Recorded constants, not derived quantities.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PoleOrders {
    pub vertical: u64,
    pub horizontal: u64,
}

pub fn pole_orders(kappa: u64) -> PoleOrders {
    PoleOrders {
        vertical: kappa,
        horizontal: kappa * kappa + 2 * kappa,
    }
}
