//! Golden reference values for the certificate computations on towers of
//! depth 1, 2 and 3 over families of surfaces (n = 2), plus the
//! alternating-binomial table. The entries are verbatim transcriptions of
//! independently computed tables, never recomputed by the engine; the
//! `appendix` command diffs engine output against them coefficient by
//! coefficient.

use jetcalc::{rat, ratio, ParamScalar, Var};

/// Rows `f = 0..=9` of the alternating binomial sums, columns `e = 0..=f`.
pub const LTABLE_ROWS: [&[i64]; 10] = [
    &[1],
    &[0, 1],
    &[1, -1, 1],
    &[0, 2, -2, 1],
    &[1, -2, 4, -3, 1],
    &[0, 3, -6, 7, -4, 1],
    &[1, -3, 9, -13, 11, -5, 1],
    &[0, 4, -12, 22, -24, 16, -6, 1],
    &[1, -4, 16, -34, 46, -40, 22, -7, 1],
    &[0, 5, -20, 50, -80, 86, -62, 29, -8, 1],
];

/// `sum_i coeffs[i] * v^i`.
pub fn poly_in(v: Var, coeffs: &[i64]) -> ParamScalar {
    coeffs
        .iter()
        .enumerate()
        .fold(ParamScalar::zero(), |acc, (i, &c)| {
            acc.add(&ParamScalar::monomial(rat(c), &[(v, i as i32)]))
        })
}

/// Bivariate table `(y_exp, z_exp) -> coeff`.
pub fn poly_in_yz(entries: &[(i32, i32, i64)]) -> ParamScalar {
    entries
        .iter()
        .fold(ParamScalar::zero(), |acc, &(ye, ze, c)| {
            acc.add(&ParamScalar::monomial(
                rat(c),
                &[(Var::Y, ye), (Var::Z, ze)],
            ))
        })
}

/// Depth-1 certificate: dominant part of `A^5 - 5 A^4 B` after
/// `eps -> r/(3d)`, namely `-4 chi d^2 - 20 (3 + 11/3 x + x^2) r d`.
pub fn x1_dominant() -> ParamScalar {
    ParamScalar::monomial(rat(-4), &[(Var::Chi, 1), (Var::D, 2)])
        .add(&ParamScalar::monomial(rat(-60), &[(Var::R, 1), (Var::D, 1)]))
        .add(&ParamScalar::monomial(
            ratio(-220, 3),
            &[(Var::X, 1), (Var::R, 1), (Var::D, 1)],
        ))
        .add(&ParamScalar::monomial(
            rat(-20),
            &[(Var::X, 2), (Var::R, 1), (Var::D, 1)],
        ))
}

/// Depth-2 certificate, `y`-polynomial on `(chi d^3 - 12 r d^2)`.
pub fn x2_q1() -> ParamScalar {
    poly_in(Var::Y, &[222, 518, 483, 210, 35])
}

/// Depth-2 certificate, `y`-polynomial on `-7 eps x d^3`.
pub fn x2_q2() -> ParamScalar {
    poly_in(Var::Y, &[51, 102, 75, 20])
}

/// Dominant part of `A^7 - 7 A^6 B` with `eps` kept symbolic:
/// `q1(y) (chi d^3 - 12 r d^2) - 7 eps x q2(y) d^3`.
pub fn x2_dominant() -> ParamScalar {
    let chid3 = ParamScalar::monomial(rat(1), &[(Var::Chi, 1), (Var::D, 3)])
        .sub(&ParamScalar::monomial(rat(12), &[(Var::R, 1), (Var::D, 2)]));
    let epsxd3 = ParamScalar::monomial(rat(7), &[(Var::Eps, 1), (Var::X, 1), (Var::D, 3)]);
    x2_q1().mul(&chid3).sub(&x2_q2().mul(&epsxd3))
}

/// After substituting the vanishing bound `eps x -> chi (3 + 2y)`:
/// `-(849 + ...) chi d^3 - (2664 + ...) r d^2`.
pub fn x2_bound_chi_poly() -> ParamScalar {
    poly_in(Var::Y, &[849, 2338, 2520, 1260, 245])
}

pub fn x2_bound_rd2_poly() -> ParamScalar {
    poly_in(Var::Y, &[2664, 6216, 5796, 2520, 420])
}

/// Depth-3 certificate: coefficient of `r d^3` in `A^9 - 9 A^8 B` with
/// `eps x -> chi (9 + 3z + y)`.
pub const X3_RD3: [(i32, i32, i64); 22] = [
    (3, 1, 34272),
    (0, 3, 3304896),
    (0, 6, 17136),
    (2, 4, 25200),
    (0, 0, 1332648),
    (1, 0, 906336),
    (0, 1, 3997944),
    (2, 1, 495936),
    (1, 5, 34272),
    (2, 3, 181440),
    (0, 5, 222768),
    (2, 0, 212544),
    (1, 1, 2416896),
    (1, 3, 1391040),
    (0, 4, 1189440),
    (0, 2, 5016096),
    (1, 4, 352800),
    (3, 0, 17136),
    (3, 2, 25200),
    (3, 3, 6720),
    (1, 2, 2613744),
    (2, 2, 450576),
];

/// Depth-3 certificate: the polynomial subtracted on `chi d^3`.
pub const X3_CHID3: [(i32, i32, i64); 30] = [
    (3, 1, 869904),
    (0, 3, 44108988),
    (0, 6, 559608),
    (4, 1, 32130),
    (2, 4, 772380),
    (0, 0, 16542612),
    (1, 0, 12428586),
    (0, 1, 49627836),
    (2, 1, 8196300),
    (4, 2, 18900),
    (1, 5, 1085616),
    (2, 3, 3507840),
    (4, 3, 3780),
    (0, 5, 4306554),
    (2, 0, 3512700),
    (0, 7, 30564),
    (1, 1, 33142896),
    (1, 3, 21170016),
    (4, 0, 19278),
    (0, 4, 18008802),
    (0, 2, 63329508),
    (1, 4, 6674220),
    (3, 0, 434952),
    (3, 2, 664020),
    (3, 3, 221760),
    (3, 4, 26460),
    (1, 2, 36642312),
    (2, 5, 65016),
    (2, 2, 7663572),
    (1, 6, 71316),
];
