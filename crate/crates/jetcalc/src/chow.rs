//! Graded classes on the levels of a jet tower.
//!
//! Level `k` of the tower over a family of hypersurfaces in projective
//! `(n+1)`-space carries the generators
//!
//! * `b`  — pullback of the hyperplane class of the base curve,
//! * `a`  — pullback of the hyperplane class of the ambient projective space,
//! * `a1 ... ak` — the tautological classes of the successive
//!   projectivizations.
//!
//! The relations `b^2 = 0` and `a^(n+2) = 0` hold on every level and are
//! applied eagerly, as is truncation above the level dimension
//! `(k+1)n + 1`. Powers of the tautological classes are deliberately *not*
//! reduced; they are consumed by [`ChowClass::pushforward_once`], which
//! trades them for Segre classes of the relative bundles one level down.
//! At level 0 the only top intersection numbers are `a^(n+1) = r` and
//! `a^n*b = d`.

use std::collections::BTreeMap;
use std::fmt;



use crate::error::{Error, Result};
use crate::scalar::{ParamScalar, Rational, Var};
use crate::segre::SegreTable;

/// A generator of the level-`k` Chow group in degree one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gen {
    /// Base hyperplane class `b`.
    Beta,
    /// Ambient hyperplane class `a`.
    Alpha,
    /// Tautological class `a_j` of level `j >= 1`.
    Jet(u32),
}

impl Gen {
    fn slot(self) -> usize {
        match self {
            Gen::Beta => 0,
            Gen::Alpha => 1,
            Gen::Jet(j) => 1 + j as usize,
        }
    }
}

type Mono = Vec<u16>;

/// Immutable computation context: fiber dimension, tower depth and the
/// Segre classes of the relative bundles, built once per context.
#[derive(Debug, Clone)]
pub struct TowerContext {
    n: u32,
    depth: u32,
    segre: SegreTable,
}

impl TowerContext {
    pub fn new(n: u32, depth: u32) -> Result<Self> {
        if n < 1 {
            return Err(Error::domain("tower context needs n >= 1"));
        }
        Ok(TowerContext {
            n,
            depth,
            segre: SegreTable::build(n, depth),
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    /// Dimension of tower level `k`.
    pub fn dim(&self, level: u32) -> u32 {
        dim_of(self.n, level)
    }

    pub fn segre(&self) -> &SegreTable {
        &self.segre
    }
}

pub(crate) fn dim_of(n: u32, level: u32) -> u32 {
    (level + 1) * n + 1
}

/// Element of the Chow ring of one tower level: a sparse sum of monomials
/// in the generators with [`ParamScalar`] coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChowClass {
    n: u32,
    level: u32,
    terms: BTreeMap<Mono, ParamScalar>,
}

impl ChowClass {
    pub fn zero(n: u32, level: u32) -> Self {
        ChowClass {
            n,
            level,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: u32, level: u32) -> Self {
        ChowClass::scalar(n, level, ParamScalar::one())
    }

    /// Degree-zero class with the given coefficient.
    pub fn scalar(n: u32, level: u32, c: ParamScalar) -> Self {
        let mut out = ChowClass::zero(n, level);
        out.add_term(vec![0; level as usize + 2], c);
        out
    }

    pub fn generator(n: u32, level: u32, g: Gen) -> Result<Self> {
        if let Gen::Jet(j) = g {
            if j < 1 || j > level {
                return Err(Error::domain(format!(
                    "generator a{j} does not live on level {level}"
                )));
            }
        }
        let mut mono = vec![0u16; level as usize + 2];
        mono[g.slot()] = 1;
        let mut out = ChowClass::zero(n, level);
        out.add_term(mono, ParamScalar::one());
        Ok(out)
    }

    /// Single monomial `coeff * prod g^e`.
    pub fn monomial(n: u32, level: u32, gens: &[(Gen, u16)], coeff: ParamScalar) -> Result<Self> {
        let mut mono = vec![0u16; level as usize + 2];
        for &(g, e) in gens {
            if let Gen::Jet(j) = g {
                if j < 1 || j > level {
                    return Err(Error::domain(format!(
                        "generator a{j} does not live on level {level}"
                    )));
                }
            }
            mono[g.slot()] += e;
        }
        let mut out = ChowClass::zero(n, level);
        out.add_term(mono, coeff);
        Ok(out)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn dim(&self) -> u32 {
        dim_of(self.n, self.level)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &ParamScalar)> {
        self.terms.iter()
    }

    /// Coefficient of a single generator monomial (zero when absent).
    pub fn coefficient(&self, gens: &[(Gen, u16)]) -> ParamScalar {
        let mut mono = vec![0u16; self.level as usize + 2];
        for &(g, e) in gens {
            mono[g.slot()] += e;
        }
        self.terms.get(&mono).cloned().unwrap_or_default()
    }

    fn add_term(&mut self, mono: Mono, coeff: ParamScalar) {
        debug_assert_eq!(mono.len(), self.level as usize + 2);
        if coeff.is_zero() || !self.mono_survives(&mono) {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().add(&coeff);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    // b^2 = 0, a^(n+2) = 0 and dimension truncation, applied eagerly.
    fn mono_survives(&self, mono: &Mono) -> bool {
        mono[0] <= 1
            && mono[1] <= self.n as u16 + 1
            && mono.iter().map(|&e| e as u32).sum::<u32>() <= self.dim()
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.level != other.level {
            return Err(Error::LevelMismatch(self.level, other.level));
        }
        if self.n != other.n {
            return Err(Error::domain(format!(
                "fiber dimension mismatch: {} vs {}",
                self.n, other.n
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        ChowClass {
            n: self.n,
            level: self.level,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &ParamScalar) -> Self {
        if c.is_zero() {
            return ChowClass::zero(self.n, self.level);
        }
        let mut out = ChowClass::zero(self.n, self.level);
        for (m, k) in &self.terms {
            out.add_term(m.clone(), k.mul(c));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = ChowClass::zero(self.n, self.level);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let mono: Mono = m1.iter().zip(m2.iter()).map(|(a, b)| a + b).collect();
                if !out.mono_survives(&mono) {
                    continue;
                }
                out.add_term(mono, c1.mul(c2));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut result = ChowClass::one(self.n, self.level);
        let mut base = self.clone();
        let mut exp = e;
        while exp > 0 {
            if exp & 1 == 1 {
                result = result.mul(&base)?;
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(result)
    }

    /// Reinterpret on a higher level (pullback along the tower projections).
    pub fn pullback_to(&self, level: u32) -> Result<Self> {
        if level < self.level {
            return Err(Error::domain(format!(
                "cannot pull back from level {} to lower level {level}",
                self.level
            )));
        }
        let mut out = ChowClass::zero(self.n, level);
        for (m, c) in &self.terms {
            let mut mono = m.clone();
            mono.resize(level as usize + 2, 0);
            out.add_term(mono, c.clone());
        }
        Ok(out)
    }

    fn mono_degree(mono: &Mono) -> u32 {
        mono.iter().map(|&e| e as u32).sum()
    }

    /// The part of the class in the given degree.
    pub fn graded_part(&self, degree: u32) -> Self {
        ChowClass {
            n: self.n,
            level: self.level,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| ChowClass::mono_degree(m) == degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Some(degree) when all terms share one degree; the zero class reports
    /// Some(0). None for genuinely mixed classes.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(ChowClass::mono_degree);
        let Some(first) = degrees.next() else {
            return Some(0);
        };
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous_of(&self, degree: u32) -> bool {
        self.is_zero() || self.homogeneous_degree() == Some(degree)
    }

    /// Push one level down: each `a_j^e` (j = this level) maps to the Segre
    /// class `s_(e-n)` of the relative bundle of level `j-1`, with
    /// `s_0 = 1` and `s_i = 0` for `i < 0` or `i` above the lower level's
    /// dimension.
    pub fn pushforward_once(&self, ctx: &TowerContext) -> Result<Self> {
        if self.level < 1 {
            return Err(Error::domain("cannot push forward below level 0"));
        }
        if self.n != ctx.n() {
            return Err(Error::domain("class and context fiber dimensions differ"));
        }
        if self.level > ctx.depth() {
            return Err(Error::domain(format!(
                "class level {} exceeds context depth {}",
                self.level,
                ctx.depth()
            )));
        }
        let below = self.level - 1;
        let mut out = ChowClass::zero(self.n, below);
        for (mono, coeff) in &self.terms {
            let e = mono[self.level as usize + 1] as i64;
            let i = e - self.n as i64;
            if i < 0 {
                continue;
            }
            let Some(segre) = ctx.segre().class(below, i as u32) else {
                continue;
            };
            let base = ChowClass {
                n: self.n,
                level: below,
                terms: BTreeMap::from([(
                    mono[..self.level as usize + 1].to_vec(),
                    coeff.clone(),
                )]),
            };
            out = out.add(&base.mul(segre)?)?;
        }
        Ok(out)
    }

    /// Top intersection number: push down to level 0 and read off
    /// `a^(n+1) -> r`, `a^n*b -> d`. The class must be homogeneous of the
    /// level dimension.
    pub fn top_intersection(&self, ctx: &TowerContext) -> Result<ParamScalar> {
        let want = self.dim();
        if !self.is_homogeneous_of(want) {
            return Err(Error::DegreeMismatch {
                got: self.homogeneous_degree(),
                want,
            });
        }
        let mut current = self.clone();
        while current.level > 0 {
            current = current.pushforward_once(ctx)?;
        }
        let n = self.n as u16;
        let mut total = ParamScalar::zero();
        for (mono, coeff) in &current.terms {
            let value = if mono[1] == n + 1 && mono[0] == 0 {
                ParamScalar::var(Var::R)
            } else if mono[1] == n && mono[0] == 1 {
                ParamScalar::var(Var::D)
            } else {
                continue;
            };
            total = total.add(&coeff.mul(&value));
        }
        Ok(total)
    }
}

impl fmt::Display for ChowClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut entries: Vec<(&Mono, &ParamScalar)> = self.terms.iter().collect();
        entries.sort_by(|a, b| {
            ChowClass::mono_degree(b.0)
                .cmp(&ChowClass::mono_degree(a.0))
                .then_with(|| a.0.cmp(b.0))
        });
        for (idx, (mono, coeff)) in entries.into_iter().enumerate() {
            if idx > 0 {
                f.write_str(" + ")?;
            }
            let mut parts = Vec::new();
            for (slot, &e) in mono.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let name = match slot {
                    0 => "b".to_string(),
                    1 => "a".to_string(),
                    j => format!("a{}", j - 1),
                };
                if e == 1 {
                    parts.push(name);
                } else {
                    parts.push(format!("{name}^{e}"));
                }
            }
            let mono_str = parts.join("*");
            let single_positive_monomial = coeff.num_terms() == 1
                && coeff
                    .terms()
                    .next()
                    .map(|(_, c)| c > &Rational::from_integer(0.into()))
                    .unwrap_or(false);
            if mono_str.is_empty() {
                if single_positive_monomial {
                    write!(f, "{coeff}")?;
                } else {
                    write!(f, "({coeff})")?;
                }
            } else if coeff.is_one() {
                f.write_str(&mono_str)?;
            } else if single_positive_monomial {
                write!(f, "{coeff}*{mono_str}")?;
            } else {
                write!(f, "({coeff})*{mono_str}")?;
            }
        }
        Ok(())
    }
}

/// Weight vector of a line bundle on level `k`: base part, ambient part and
/// the tautological weights `m_1 ... m_k`. Entries are parameter
/// polynomials so that symbolic weights (`2+y`, `-eps*x`, ...) fit.
#[derive(Debug, Clone, PartialEq)]
pub struct BundleWeights {
    pub lambda_part: ParamScalar,
    pub d_part: ParamScalar,
    pub m: Vec<ParamScalar>,
}

impl BundleWeights {
    pub fn new(lambda_part: ParamScalar, d_part: ParamScalar, m: Vec<ParamScalar>) -> Self {
        BundleWeights {
            lambda_part,
            d_part,
            m,
        }
    }

    /// Level the bundle naturally lives on.
    pub fn level(&self) -> u32 {
        self.m.len() as u32
    }

    /// Sum of the ambient part and the tautological weights.
    pub fn total_degree(&self) -> ParamScalar {
        self.m
            .iter()
            .fold(self.d_part.clone(), |acc, w| acc.add(w))
    }

    /// Sum of the tautological weights only.
    pub fn jet_weight(&self) -> ParamScalar {
        self.m
            .iter()
            .fold(ParamScalar::zero(), |acc, w| acc.add(w))
    }
}

/// First Chern class of a weighted bundle, on level `len(m)`.
pub fn class_of(weights: &BundleWeights, ctx: &TowerContext) -> Result<ChowClass> {
    let level = weights.level();
    if level > ctx.depth() {
        return Err(Error::domain(format!(
            "weight vector of length {level} exceeds tower depth {}",
            ctx.depth()
        )));
    }
    let n = ctx.n();
    let mut class = ChowClass::generator(n, level, Gen::Beta)?.scale(&weights.lambda_part);
    class = class.add(&ChowClass::generator(n, level, Gen::Alpha)?.scale(&weights.d_part))?;
    for (j, w) in weights.m.iter().enumerate() {
        class = class.add(&ChowClass::generator(n, level, Gen::Jet(j as u32 + 1))?.scale(w))?;
    }
    Ok(class)
}

/// Class of the forbidden divisor of level `k`.
///
/// For `k >= 2` the divisor lies in the pencil spanned by consecutive
/// tautological classes, giving `a_k - a_(k-1)`. For `k = 1` the engine
/// uses `a_1 - chi*b`, the first Chern class of the twist of the relative
/// tautological bundle by the pulled-back tangent bundle of the base; the
/// sign convention on the `chi` term is this engine's reading and is
/// exercised nowhere else.
pub fn divisor_class(k: u32, ctx: &TowerContext) -> Result<ChowClass> {
    if k < 1 || k > ctx.depth() {
        return Err(Error::domain(format!(
            "divisor level {k} out of range 1..={}",
            ctx.depth()
        )));
    }
    let n = ctx.n();
    if k == 1 {
        let a1 = ChowClass::generator(n, 1, Gen::Jet(1))?;
        let chib = ChowClass::generator(n, 1, Gen::Beta)?.scale(&ParamScalar::var(Var::Chi));
        a1.sub(&chib)
    } else {
        let ak = ChowClass::generator(n, k, Gen::Jet(k))?;
        let prev = ChowClass::generator(n, k, Gen::Jet(k - 1))?;
        ak.sub(&prev)
    }
}
