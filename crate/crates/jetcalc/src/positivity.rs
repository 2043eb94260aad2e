//! Positivity machinery: the nef weight chain, cone bounds, section-count
//! lower bounds, Morse-type bigness certificates, the depth-`(n+1)`
//! certificate assembly, and the Schwarz / height bounds.

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::chow::{class_of, BundleWeights, ChowClass, Gen, TowerContext};
use crate::error::{Error, Result};
use crate::scalar::{rat, Assignment, ParamScalar, Rational, Sign, Var};
use crate::segre::binomial;

/// Weights of the nef bundle of level `k`: ambient part `2*3^(k-1)` and
/// tautological weights `(2*3^(k-2), ..., 6, 2, 1)`; the entries sum
/// to `3^k`.
pub fn nef_lk(k: u32) -> Result<BundleWeights> {
    if k < 1 {
        return Err(Error::domain("nef bundle chain starts at k = 1"));
    }
    let pow3 = |e: u32| BigInt::from(3).pow(e);
    let d_part = ParamScalar::constant(Rational::from_integer(2 * pow3(k - 1)));
    let m = (1..=k)
        .map(|j| {
            if j == k {
                ParamScalar::one()
            } else {
                ParamScalar::constant(Rational::from_integer(2 * pow3(k - 1 - j)))
            }
        })
        .collect();
    let w = BundleWeights::new(ParamScalar::zero(), d_part, m);
    debug_assert_eq!(
        w.total_degree(),
        ParamScalar::constant(Rational::from_integer(pow3(k)))
    );
    Ok(w)
}

/// Check that `curr` (level k) arises from `prev` (level k-1) by the step
/// `(3*prev_vector, 2)` on the non-tautological entries, with a fresh
/// trailing weight 1 — equivalently `2*(prev, 1) + (prev, 0)`.
pub fn weights_satisfy_recursion(curr: &BundleWeights, prev: &BundleWeights) -> bool {
    let k = curr.level() as usize;
    if k < 2 || prev.level() as usize != k - 1 {
        return false;
    }
    if !curr.lambda_part.is_zero() || !prev.lambda_part.is_zero() {
        return false;
    }
    // Vectors (d-part, m_1, ..., m_(level-1)) with the trailing 1 stripped.
    let head = |w: &BundleWeights| -> Vec<ParamScalar> {
        std::iter::once(w.d_part.clone())
            .chain(w.m[..w.m.len() - 1].iter().cloned())
            .collect()
    };
    if curr.m.last().map(|w| w.is_one()) != Some(true) {
        return false;
    }
    if prev.m.last().map(|w| w.is_one()) != Some(true) {
        return false;
    }
    let u = head(curr);
    let prev_head = head(prev);
    // (3*prev_head, 2)
    let mut tripled: Vec<ParamScalar> = prev_head.iter().map(|w| w.scale(&rat(3))).collect();
    tripled.push(ParamScalar::from_int(2));
    // 2*(prev_head, 1) + (prev_head, 0)
    let mut combined: Vec<ParamScalar> = prev_head
        .iter()
        .map(|w| w.scale(&rat(2)).add(w))
        .collect();
    combined.push(ParamScalar::from_int(2));
    u == tripled && u == combined
}

/// Verify the weight recursion for the built-in chain at level `k`.
pub fn nef_recursion_check(k: u32) -> Result<bool> {
    if k < 2 {
        return Err(Error::domain("recursion check needs k >= 2"));
    }
    Ok(weights_satisfy_recursion(&nef_lk(k)?, &nef_lk(k - 1)?))
}

/// Push `l_k^(n+1)` one level down, subtract the pulled-back `s_1` of
/// level 0, and return the leftover coefficients on
/// `(a_(k-1), ..., a_1, a)`.
///
/// Each coefficient is checked against its closed form: `(n+1)*2*3^(j-1) - n`
/// on `a_(k-j)` for `j < k` and `(n+1)*2*3^(k-1)` on `a`. All are positive,
/// which is what makes the chain of intersection estimates monotone.
pub fn pushforward_lk_expansion(k: u32, ctx: &TowerContext) -> Result<Vec<Rational>> {
    if k < 1 || k > ctx.depth() {
        return Err(Error::domain(format!(
            "level {k} out of range 1..={}",
            ctx.depth()
        )));
    }
    let n = ctx.n();
    let lk = class_of(&nef_lk(k)?, ctx)?;
    let pushed = lk.pow(n + 1)?.pushforward_once(ctx)?;
    let s1_pulled = ctx
        .segre()
        .class(0, 1)
        .expect("s_1 exists")
        .pullback_to(k - 1)?;
    let rest = pushed.sub(&s1_pulled)?;

    let mut coefficients = Vec::new();
    let mut accounted = ChowClass::zero(n, k - 1);
    for j in 1..=k {
        let (gen, want) = if j < k {
            (
                Gen::Jet(k - j),
                rat((n as i64 + 1) * 2 * 3i64.pow(j - 1) - n as i64),
            )
        } else {
            (Gen::Alpha, rat((n as i64 + 1) * 2 * 3i64.pow(k - 1)))
        };
        let coeff = rest.coefficient(&[(gen, 1)]);
        let Some(value) = coeff.as_constant() else {
            return Err(Error::domain(format!(
                "expansion coefficient on {gen:?} is not constant: {coeff}"
            )));
        };
        if value != want {
            return Err(Error::domain(format!(
                "expansion coefficient on {gen:?} is {value}, closed form says {want}"
            )));
        }
        if value.is_negative() {
            return Err(Error::domain("expansion coefficient went negative"));
        }
        accounted = accounted.add(
            &ChowClass::generator(n, k - 1, gen)?.scale(&ParamScalar::constant(value.clone())),
        )?;
        coefficients.push(value);
    }
    if !rest.sub(&accounted)?.is_zero() {
        return Err(Error::domain(
            "pushforward left terms outside the generator span",
        ));
    }
    Ok(coefficients)
}

/// Options for [`morse_certificate`].
#[derive(Debug, Clone, Default)]
pub struct MorseOptions {
    /// Substitute `eps -> r/((n+1)d)` in the difference before reporting.
    pub substitute_eps: Option<u32>,
    /// Evaluate the exact difference at this point for a sign verdict.
    pub sample: Option<Assignment>,
}

/// Result of a bigness certificate: the exact intersection difference
/// `A^D - D*A^(D-1)*B`, its dominant `(r, d)` part, the `r >> d >> 1`
/// reading, and optionally the exact sign at a sample point.
#[derive(Debug, Clone)]
pub struct MorseReport {
    pub dimension: u32,
    pub difference: ParamScalar,
    pub dominant: ParamScalar,
    /// Leading slice under `r >> d >> 1` (maximal r-degree, then d-degree).
    pub leading_rd: ParamScalar,
    /// Sign of the leading slice for positive weights, when unambiguous.
    pub asymptotic_verdict: Option<Sign>,
    pub sample_value: Option<Rational>,
    pub verdict: Option<Sign>,
}

/// Exact `A^D - D*A^(D-1)*B` for degree-one classes `A`, `B` on the top
/// level of the context. A positive value is the numerical input to the
/// algebraic Morse inequality; the multiplier threshold itself is not
/// computed, only the sign data.
pub fn morse_certificate(
    a: &ChowClass,
    b: &ChowClass,
    ctx: &TowerContext,
    opts: &MorseOptions,
) -> Result<MorseReport> {
    if a.level() != ctx.depth() || b.level() != ctx.depth() {
        return Err(Error::LevelMismatch(a.level().max(b.level()), ctx.depth()));
    }
    if !a.is_homogeneous_of(1) || !b.is_homogeneous_of(1) {
        return Err(Error::DegreeMismatch {
            got: if a.is_homogeneous_of(1) {
                b.homogeneous_degree()
            } else {
                a.homogeneous_degree()
            },
            want: 1,
        });
    }
    let dim = ctx.dim(ctx.depth());
    let a_pow = a.pow(dim - 1)?;
    let top_a = a_pow.mul(a)?.top_intersection(ctx)?;
    let top_ab = a_pow.mul(b)?.top_intersection(ctx)?;
    let mut difference = top_a.sub(&top_ab.scale(&rat(dim as i64)));
    if let Some(n) = opts.substitute_eps {
        difference = difference.substitute_eps(n)?;
    }
    let dominant = difference.dominant_term();
    let leading_rd = difference.rd_lex_leading();
    let asymptotic_verdict = leading_rd.uniform_sign();
    let (sample_value, verdict) = match &opts.sample {
        Some(at) => {
            let value = difference.evaluate(at)?;
            let sign = Sign::of(&value);
            (Some(value), Some(sign))
        }
        None => (None, None),
    };
    Ok(MorseReport {
        dimension: dim,
        difference,
        dominant,
        leading_rd,
        asymptotic_verdict,
        sample_value,
        verdict,
    })
}

/// Outcome of the depth-`(n+1)` certificate.
#[derive(Debug, Clone)]
pub struct FinalArgumentReport {
    pub morse: MorseReport,
    /// `(3^(n+1) - 1)/2`: total tautological weight of the nef chain.
    pub schwarz_factor: Rational,
    /// `schwarz_factor * ratio`, the strict lower bound the base twist must
    /// beat.
    pub schwarz_threshold: Rational,
    /// `r/((n+1)d)` at the sample, the base twist actually available.
    pub schwarz_rhs: Rational,
    pub side_condition_met: bool,
}

/// Assemble the certificate on level `n+1`: `A` is the product of the nef
/// chain with the ambient hyperplane twisted down the base by
/// `r/((n+1)d)`, and `B = (3^(n+1) + x) * a`. The sample must carry
/// positive `r`, `d`, `x`; `chi` defaults to 2 (base genus two) when
/// absent. `ratio` stands for the covering invariant `chi_rho/deg(rho)` in
/// the side condition.
pub fn final_argument(n: u32, sample: &Assignment, ratio: &Rational) -> Result<FinalArgumentReport> {
    if n < 1 {
        return Err(Error::domain("final argument needs n >= 1"));
    }
    let mut sample = sample.clone();
    if !sample.contains(Var::Chi) {
        sample.set(Var::Chi, rat(2));
    }
    for v in [Var::R, Var::D, Var::X] {
        let value = sample
            .get(v)
            .ok_or_else(|| Error::domain(format!("sample must assign {v}")))?;
        if !value.is_positive() {
            return Err(Error::domain(format!("sample value for {v} must be positive")));
        }
    }
    if ratio.is_negative() {
        return Err(Error::domain("covering ratio must be nonnegative"));
    }

    let kappa = n + 1;
    let ctx = TowerContext::new(n, kappa)?;
    let mut a = ChowClass::zero(n, kappa);
    for j in 1..=kappa {
        a = a.add(&class_of(&nef_lk(j)?, &ctx)?.pullback_to(kappa)?)?;
    }
    // a - r/((n+1)d) * b, the hyperplane class twisted down the base.
    let twist = ParamScalar::monomial(
        Rational::new(BigInt::from(-1), BigInt::from(n as i64 + 1)),
        &[(Var::R, 1), (Var::D, -1)],
    );
    a = a
        .add(&ChowClass::generator(n, kappa, Gen::Alpha)?)?
        .add(&ChowClass::generator(n, kappa, Gen::Beta)?.scale(&twist))?;

    let three_pow = BigInt::from(3).pow(kappa);
    let b_weight = ParamScalar::constant(Rational::from_integer(three_pow.clone()))
        .add(&ParamScalar::var(Var::X));
    let b = ChowClass::generator(n, kappa, Gen::Alpha)?.scale(&b_weight);

    let opts = MorseOptions {
        substitute_eps: None,
        sample: Some(sample.clone()),
    };
    let morse = morse_certificate(&a, &b, &ctx, &opts)?;

    let schwarz_factor = Rational::new(three_pow - BigInt::one(), BigInt::from(2));
    let schwarz_threshold = &schwarz_factor * ratio;
    let r = sample.get(Var::R).expect("checked above");
    let d = sample.get(Var::D).expect("checked above");
    let schwarz_rhs = r / (d * rat(n as i64 + 1));
    let side_condition_met = schwarz_threshold < schwarz_rhs;
    Ok(FinalArgumentReport {
        morse,
        schwarz_factor,
        schwarz_threshold,
        schwarz_rhs,
        side_condition_met,
    })
}

/// Strict lower bound on the base-twist degree needed to force vanishing:
/// `ratio * total_weight`, with `ratio = chi_rho/deg(rho)`.
pub fn schwarz_min_lambda(total_weight: &Rational, ratio: &Rational) -> Result<Rational> {
    if total_weight.is_negative() || ratio.is_negative() {
        return Err(Error::domain(
            "schwarz bound needs nonnegative weight and ratio",
        ));
    }
    Ok(total_weight * ratio)
}

/// Height bound `(3^(n+1) - 1)/(2x) * ratio` for sections whose top jet
/// avoids the certificate locus.
pub fn height_bound(n: u32, x: &Rational, ratio: &Rational) -> Result<Rational> {
    if !x.is_positive() {
        return Err(Error::domain("height bound needs x > 0"));
    }
    let numerator = BigInt::from(3).pow(n + 1) - BigInt::one();
    Ok(Rational::from_integer(numerator) / (rat(2) * x) * ratio)
}

/// The nested cone description on the total space: ample product cone
/// inside the nef cone inside the half-plane of slope
/// `-deg_lambda0 / ((n+1) d0)`, which in turn bounds the pseudo-effective
/// cone.
#[derive(Debug, Clone)]
pub struct ConeBounds {
    pub nef_lower_slope: Rational,
    pub sandwich: [String; 3],
}

pub fn nef_cone_bounds(n: u32, deg_lambda0: i64, d0: i64) -> Result<ConeBounds> {
    if d0 <= 0 {
        return Err(Error::domain("nef cone bounds need d0 > 0"));
    }
    if deg_lambda0 < 0 {
        return Err(Error::domain("nef cone bounds need deg_lambda0 >= 0"));
    }
    let slope = Rational::new(
        BigInt::from(-deg_lambda0),
        BigInt::from((n as i64 + 1) * d0),
    );
    let sandwich = [
        "{ (l, d) : d >= 0, l >= 0 }".to_string(),
        "Nef(total space)".to_string(),
        format!("{{ (l, d) : d >= 0, l >= {slope}*d }} (inside Eff)"),
    ];
    Ok(ConeBounds {
        nef_lower_slope: slope,
        sandwich,
    })
}

/// Exact lower bound for the section count of the `(lambda, d)` bundle:
/// `(deg_lambda + 1 - g) C(d+n+1, n+1) - (deg_lambda - deg_lambda0 + 1 - g) C(d-d0+n+1, n+1)`.
/// Negative values are meaningful (the bound is vacuous there).
pub fn h0_lower_bound(
    deg_lambda: i64,
    genus: i64,
    d: i64,
    d0: i64,
    deg_lambda0: i64,
    n: u32,
) -> Result<BigInt> {
    if d0 < 1 || d < d0 {
        return Err(Error::domain("h0 bound needs d >= d0 >= 1"));
    }
    let n = n as i64;
    let first = BigInt::from(deg_lambda + 1 - genus) * binomial(d + n + 1, n + 1);
    let second = BigInt::from(deg_lambda - deg_lambda0 + 1 - genus) * binomial(d - d0 + n + 1, n + 1);
    Ok(first - second)
}
