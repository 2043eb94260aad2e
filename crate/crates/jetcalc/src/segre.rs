//! Segre classes of the relative bundles along the jet tower.
//!
//! Level 0 carries the exact series
//! `s = (1 + chi*b) * (1 + a)^-(n+2) * (1 + d*a + r*b)`,
//! expanded under `b^2 = 0`, `a^(n+2) = 0`. Higher rows follow the
//! recursion
//!
//! `s_l(F_k) = sum_(a+b=l)  L(n+a, n+l) * pullback(s_a(F_(k-1))) * a_k^b`
//!
//! driven by the alternating binomial sums `L(e, f)`. The recursion is the
//! production path; the equivalent route through the defining short exact
//! sequences (twist by the tautological class, then multiply the two Segre
//! series) is kept as a test oracle.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::chow::{dim_of, ChowClass, Gen};
use crate::error::{Error, Result};
use crate::scalar::{ParamScalar, Rational, Var};

/// Exact binomial coefficient, zero outside `0 <= b <= a`.
pub fn binomial(a: i64, b: i64) -> BigInt {
    if b < 0 || b > a {
        return BigInt::zero();
    }
    let b = b.min(a - b);
    let mut acc = BigInt::one();
    for i in 1..=b {
        acc *= a - b + i;
        acc /= i;
    }
    acc
}

/// The alternating partial binomial sum `L(e, f) = sum_(i=0..f-e) (-1)^i C(e+i, e)`.
pub fn l_number(e: i64, f: i64) -> Result<BigInt> {
    if e < 0 || f < e {
        return Err(Error::domain(format!(
            "l_number needs 0 <= e <= f, got e={e}, f={f}"
        )));
    }
    let mut acc = BigInt::zero();
    for i in 0..=(f - e) {
        let term = binomial(e + i, e);
        if i % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(acc)
}

/// Memoized table of the `L(e, f)` numbers for `0 <= e <= f <= max_f`,
/// filled Pascal-style via `L(e, f) = L(e-1, f-1) - L(e, f-1)`.
#[derive(Debug, Clone)]
pub struct LTable {
    rows: Vec<Vec<BigInt>>,
}

impl LTable {
    pub fn build(max_f: u32) -> Self {
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(max_f as usize + 1);
        for f in 0..=max_f as usize {
            let mut row = Vec::with_capacity(f + 1);
            for e in 0..=f {
                let value = if e == f {
                    BigInt::one()
                } else if e == 0 {
                    // Alternating sum of f+1 ones.
                    if f % 2 == 0 {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                } else {
                    &rows[f - 1][e - 1] - &rows[f - 1][e]
                };
                row.push(value);
            }
            rows.push(row);
        }
        LTable { rows }
    }

    pub fn max_f(&self) -> u32 {
        self.rows.len() as u32 - 1
    }

    pub fn get(&self, e: u32, f: u32) -> Option<&BigInt> {
        self.rows.get(f as usize)?.get(e as usize)
    }

    pub fn row(&self, f: u32) -> Option<&[BigInt]> {
        self.rows.get(f as usize).map(|r| r.as_slice())
    }
}

/// Segre classes of the level-0 relative bundle, `s_0 .. s_(n+1)`.
pub fn segre_f0(n: u32) -> Vec<ChowClass> {
    let a = ChowClass::generator(n, 0, Gen::Alpha).expect("alpha on level 0");
    let b = ChowClass::generator(n, 0, Gen::Beta).expect("beta on level 0");

    // (1 + a)^-(n+2) = sum_i (-1)^i C(n+1+i, i) a^i, truncated at a^(n+1).
    let mut inverse = ChowClass::zero(n, 0);
    for i in 0..=(n as i64 + 1) {
        let mut c = binomial(n as i64 + 1 + i, i);
        if i % 2 == 1 {
            c = -c;
        }
        let term = a
            .pow(i as u32)
            .unwrap()
            .scale(&ParamScalar::constant(Rational::from_integer(c)));
        inverse = inverse.add(&term).unwrap();
    }

    let chi_beta = ChowClass::one(n, 0)
        .add(&b.scale(&ParamScalar::var(Var::Chi)))
        .unwrap();
    let linear = ChowClass::one(n, 0)
        .add(&a.scale(&ParamScalar::var(Var::D)))
        .unwrap()
        .add(&b.scale(&ParamScalar::var(Var::R)))
        .unwrap();

    let total = chi_beta.mul(&inverse).unwrap().mul(&linear).unwrap();
    (0..=n + 1).map(|i| total.graded_part(i)).collect()
}

/// Segre classes of a twist: `s_i(E (x) L) = sum_j C(rank-1+i, i-j) s_j(E) c1(L)^(i-j)`.
pub fn segre_twist(
    s: &[ChowClass],
    rank: u32,
    c1: &ChowClass,
    out_len: usize,
) -> Result<Vec<ChowClass>> {
    let Some(first) = s.first() else {
        return Err(Error::domain("segre_twist needs a nonempty Segre list"));
    };
    if rank < 1 {
        return Err(Error::domain("segre_twist needs rank >= 1"));
    }
    if !first.sub(&ChowClass::one(first.n(), first.level()))?.is_zero() {
        return Err(Error::domain("segre_twist needs s[0] = 1"));
    }
    for class in s {
        if class.level() != c1.level() || class.n() != c1.n() {
            return Err(Error::LevelMismatch(class.level(), c1.level()));
        }
    }
    let n = first.n();
    let level = first.level();
    let mut c1_pows = Vec::with_capacity(out_len);
    let mut p = ChowClass::one(n, level);
    for _ in 0..out_len {
        c1_pows.push(p.clone());
        p = p.mul(c1)?;
    }
    let mut out = Vec::with_capacity(out_len);
    for i in 0..out_len {
        let mut acc = ChowClass::zero(n, level);
        for (j, sj) in s.iter().enumerate().take(i + 1) {
            let c = binomial(rank as i64 - 1 + i as i64, (i - j) as i64);
            if c.is_zero() {
                continue;
            }
            let term = sj
                .mul(&c1_pows[i - j])?
                .scale(&ParamScalar::constant(Rational::from_integer(c)));
            acc = acc.add(&term)?;
        }
        out.push(acc);
    }
    Ok(out)
}

/// Rows of Segre classes, one per tower level: `rows[j][i] = s_i(F_j)`,
/// expressed in the generators of level `j`.
#[derive(Debug, Clone)]
pub struct SegreTable {
    n: u32,
    rows: Vec<Vec<ChowClass>>,
}

impl SegreTable {
    /// Build rows `0..=depth`. Row `k` needs row `k-1`, so construction is
    /// sequential; all reads afterwards are immutable.
    pub fn build(n: u32, depth: u32) -> Self {
        let max_f = n + dim_of(n, depth);
        let lnums = LTable::build(max_f);
        let mut rows = vec![segre_f0(n)];
        for k in 1..=depth {
            let dim = dim_of(n, k);
            let prev: Vec<ChowClass> = rows[k as usize - 1]
                .iter()
                .map(|c| c.pullback_to(k).expect("pullback to next level"))
                .collect();
            let alpha_k = ChowClass::generator(n, k, Gen::Jet(k)).expect("tautological class");
            let mut alpha_pows = Vec::with_capacity(dim as usize + 1);
            let mut p = ChowClass::one(n, k);
            for _ in 0..=dim {
                alpha_pows.push(p.clone());
                p = p.mul(&alpha_k).expect("same level");
            }
            let mut row = Vec::with_capacity(dim as usize + 1);
            for l in 0..=dim {
                let mut acc = ChowClass::zero(n, k);
                for a in 0..=l.min(prev.len() as u32 - 1) {
                    let coeff = lnums
                        .get(n + a, n + l)
                        .expect("L table large enough")
                        .clone();
                    if coeff.is_zero() {
                        continue;
                    }
                    let term = prev[a as usize]
                        .mul(&alpha_pows[(l - a) as usize])
                        .expect("same level")
                        .scale(&ParamScalar::constant(Rational::from_integer(coeff)));
                    acc = acc.add(&term).expect("same level");
                }
                row.push(acc);
            }
            rows.push(row);
        }
        SegreTable { n, rows }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn depth(&self) -> u32 {
        self.rows.len() as u32 - 1
    }

    /// `s_i(F_level)`, or None when `i` exceeds the level dimension.
    pub fn class(&self, level: u32, i: u32) -> Option<&ChowClass> {
        self.rows.get(level as usize)?.get(i as usize)
    }

    pub fn row(&self, level: u32) -> Option<&[ChowClass]> {
        self.rows.get(level as usize).map(|r| r.as_slice())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chow::TowerContext;
    use crate::scalar::rat;

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(4, 3), BigInt::from(4)); // C(d+n+1, n+1) at d=1, n=2
        assert_eq!(binomial(7, 0), BigInt::from(1));
        assert_eq!(binomial(3, 5), BigInt::zero());
        assert_eq!(binomial(3, -1), BigInt::zero());
    }

    #[test]
    fn l_number_values() {
        assert_eq!(l_number(2, 4).unwrap(), BigInt::from(4));
        assert_eq!(l_number(3, 6).unwrap(), BigInt::from(-13));
        for e in 0..6 {
            assert_eq!(l_number(e, e).unwrap(), BigInt::one());
        }
        assert_eq!(l_number(0, 9).unwrap(), BigInt::zero());
        assert!(l_number(5, 3).is_err());
        assert!(l_number(-1, 3).is_err());
    }

    #[test]
    fn l_table_matches_definition() {
        let table = LTable::build(12);
        for f in 0..=12 {
            for e in 0..=f {
                assert_eq!(
                    table.get(e, f).unwrap(),
                    &l_number(e as i64, f as i64).unwrap(),
                    "L({e}, {f})"
                );
            }
        }
    }

    #[test]
    fn l_recurrence() {
        let table = LTable::build(13);
        for f in 0..=12u32 {
            for e in 0..f {
                let lhs = table.get(e, f).unwrap() - table.get(e + 1, f).unwrap();
                assert_eq!(&lhs, table.get(e + 1, f + 1).unwrap());
            }
        }
    }

    #[test]
    fn level0_first_segre_class() {
        for n in 1..=5 {
            let row = segre_f0(n);
            let a = ChowClass::generator(n, 0, Gen::Alpha).unwrap();
            let b = ChowClass::generator(n, 0, Gen::Beta).unwrap();
            let want = a
                .scale(&ParamScalar::var(Var::D).sub(&ParamScalar::from_int(n as i64 + 2)))
                .add(&b.scale(&ParamScalar::var(Var::R).add(&ParamScalar::var(Var::Chi))))
                .unwrap();
            assert_eq!(row[1], want, "s_1 at n={n}");
            assert!(row[0].sub(&ChowClass::one(n, 0)).unwrap().is_zero());
        }
    }

    #[test]
    fn level0_second_segre_class_n2() {
        // s_2 = (10 - 4d) a^2 + (chi d - 4r - 4chi) a b
        let row = segre_f0(2);
        let a2 = ChowClass::monomial(
            2,
            0,
            &[(Gen::Alpha, 2)],
            ParamScalar::from_int(10)
                .sub(&ParamScalar::monomial(rat(4), &[(Var::D, 1)])),
        )
        .unwrap();
        let ab = ChowClass::monomial(
            2,
            0,
            &[(Gen::Alpha, 1), (Gen::Beta, 1)],
            ParamScalar::monomial(rat(1), &[(Var::Chi, 1), (Var::D, 1)])
                .sub(&ParamScalar::monomial(rat(4), &[(Var::R, 1)]))
                .sub(&ParamScalar::monomial(rat(4), &[(Var::Chi, 1)])),
        )
        .unwrap();
        assert_eq!(row[2], a2.add(&ab).unwrap());
    }

    #[test]
    fn segre_coefficients_linear_in_r_and_chi() {
        for n in 1..=3u32 {
            for class in segre_f0(n) {
                for (_, coeff) in class.terms() {
                    assert!(coeff.degree_in(Var::R).unwrap_or(0) <= 1);
                    assert!(coeff.degree_in(Var::Chi).unwrap_or(0) <= 1);
                }
            }
        }
    }

    #[test]
    fn recursion_row_structure() {
        // s_0 = 1 and s_1(F_k) = pullback s_1(F_0) - n (a_k + ... + a_1)
        for (n, depth) in [(1u32, 3u32), (2, 3)] {
            let table = SegreTable::build(n, depth);
            for k in 1..=depth {
                let row = table.row(k).unwrap();
                assert!(row[0].sub(&ChowClass::one(n, k)).unwrap().is_zero());
                let mut want = table.class(0, 1).unwrap().pullback_to(k).unwrap();
                for j in 1..=k {
                    let aj = ChowClass::generator(n, k, Gen::Jet(j)).unwrap();
                    want = want
                        .sub(&aj.scale(&ParamScalar::from_int(n as i64)))
                        .unwrap();
                }
                assert_eq!(row[1], want, "s_1 at n={n}, k={k}");
            }
        }
    }

    #[test]
    fn recursion_level1_degree2_n2() {
        // s_2(F_1) = 4 a1^2 - 3 pull(s_1) a1 + pull(s_2)
        let table = SegreTable::build(2, 1);
        let a1 = ChowClass::generator(2, 1, Gen::Jet(1)).unwrap();
        let s1 = table.class(0, 1).unwrap().pullback_to(1).unwrap();
        let s2 = table.class(0, 2).unwrap().pullback_to(1).unwrap();
        let want = a1
            .pow(2)
            .unwrap()
            .scale(&ParamScalar::from_int(4))
            .add(&s1.mul(&a1).unwrap().scale(&ParamScalar::from_int(-3)))
            .unwrap()
            .add(&s2)
            .unwrap();
        assert_eq!(table.class(1, 2).unwrap(), &want);
    }

    #[test]
    fn rows_are_homogeneous() {
        let table = SegreTable::build(2, 2);
        for level in 0..=2u32 {
            for (i, class) in table.row(level).unwrap().iter().enumerate() {
                assert!(class.is_homogeneous_of(i as u32), "level {level}, s_{i}");
            }
        }
    }

    #[test]
    fn twist_examples() {
        let n = 2;
        let table = SegreTable::build(n, 0);
        let s: Vec<ChowClass> = table.row(0).unwrap().to_vec();
        let a = ChowClass::generator(n, 0, Gen::Alpha).unwrap();

        // c1 = 0 acts as the identity
        let zero = ChowClass::zero(n, 0);
        let twisted = segre_twist(&s, n + 1, &zero, s.len()).unwrap();
        assert_eq!(twisted, s);

        // s_1(E (x) L) = s_1(E) + rank * c1(L)
        let twisted = segre_twist(&s, n + 1, &a, 2).unwrap();
        let want = s[1]
            .add(&a.scale(&ParamScalar::from_int(n as i64 + 1)))
            .unwrap();
        assert_eq!(twisted[1], want);

        // rank 1, s = (1): s_1 = c1
        let one = vec![ChowClass::one(n, 0)];
        let twisted = segre_twist(&one, 1, &a, 3).unwrap();
        assert_eq!(twisted[1], a);
        assert_eq!(twisted[2], a.pow(2).unwrap());

        // inconsistent levels are rejected
        let a1 = ChowClass::generator(n, 1, Gen::Alpha).unwrap();
        assert!(segre_twist(&s, n + 1, &a1, 2).is_err());
    }

    /// Independent route: multiply the Segre series of the tautological
    /// sub-line-bundle with the series of the twisted pullback bundle.
    fn row_via_sequences(table: &SegreTable, n: u32, k: u32) -> Vec<ChowClass> {
        let dim = dim_of(n, k);
        let prev: Vec<ChowClass> = table
            .row(k - 1)
            .unwrap()
            .iter()
            .map(|c| c.pullback_to(k).unwrap())
            .collect();
        let alpha_k = ChowClass::generator(n, k, Gen::Jet(k)).unwrap();
        let minus_alpha = alpha_k.neg();
        let twisted = segre_twist(&prev, n + 1, &minus_alpha, dim as usize + 1).unwrap();
        // s(O(1)) = sum_i a_k^i
        let mut line = ChowClass::zero(n, k);
        let mut p = ChowClass::one(n, k);
        for _ in 0..=dim {
            line = line.add(&p).unwrap();
            p = p.mul(&alpha_k).unwrap();
        }
        let total = twisted
            .iter()
            .fold(ChowClass::zero(n, k), |acc, c| acc.add(c).unwrap())
            .mul(&line)
            .unwrap();
        (0..=dim).map(|i| total.graded_part(i)).collect()
    }

    #[test]
    fn recursion_agrees_with_sequence_oracle_spot() {
        let n = 2;
        let table = SegreTable::build(n, 1);
        let oracle = row_via_sequences(&table, n, 1);
        for (i, want) in oracle.iter().enumerate() {
            assert_eq!(table.class(1, i as u32).unwrap(), want, "s_{i}");
        }
    }

    #[test]
    fn context_exposes_table() {
        let ctx = TowerContext::new(2, 2).unwrap();
        assert_eq!(ctx.segre().depth(), 2);
        assert_eq!(ctx.segre().row(2).unwrap().len() as u32, ctx.dim(2) + 1);
    }
}
