//! Characters of integrable level-k affine sl2 modules, parafermion string
//! functions, and the character form of
//! `L(k,i) = sum_j V_{Z gamma + (i-2j) gamma/2k} x M^{i,j}`.

use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::fusion::topweight_para;
use crate::qseries::{euler_phi, lattice_coset_char, QSeries, QSeriesError, ZQSeries};
use crate::report::{Params, Report};
use crate::scalar::{ceil_exp, Exp, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CharacterError {
    #[error("bad label: level {k}, i = {i}")]
    BadLabel { k: i64, i: i64 },
    #[error(transparent)]
    Series(#[from] QSeriesError),
}

/// Conformal weight `i(i+2)/4(k+2)` of the top level of `L(k,i)`.
pub fn affine_top_weight(k: i64, i: i64) -> Exp {
    Exp::new(i * (i + 2), 4 * (k + 2))
}

fn check_label(k: i64, i: i64) -> Result<(), CharacterError> {
    if k < 1 || i < 0 || i > k {
        return Err(CharacterError::BadLabel { k, i });
    }
    Ok(())
}

/// Weyl character `(z^a - z^{-a})/(z - z^{-1})` of the `a`-dimensional
/// sl2 module (negative `a` gives minus the `|a|`-dimensional one).
fn weyl(a: i64) -> Vec<(i64, i64)> {
    let sign = a.signum();
    let a = a.abs();
    (0..a).map(|t| (a - 1 - 2 * t, sign)).collect()
}

/// `prod_{n>=1} 1/((1 - q^n)(1 - z^2 q^n)(1 - z^{-2} q^n))` below `q^top+1`.
fn affine_denominator_inverse<S: Scalar>(truncation: Exp) -> ZQSeries<S> {
    let top = ceil_exp(&truncation) - 1;
    let mut acc = ZQSeries::monomial(0, Exp::zero(), S::one(), truncation);
    for n in 1..=top.max(0) {
        for z in [0, 2, -2] {
            let mut geo = ZQSeries::zero(truncation);
            let mut m = 0;
            while m * n <= top {
                geo.add_term(z * m, Exp::from_integer(m * n), S::one());
                m += 1;
            }
            acc = acc.mul(&geo);
        }
    }
    acc
}

/// Character of `L(k,i)` graded by `h(0)` (power of `z`) and absolute
/// conformal weight, below `q^truncation`.
pub fn affine_sl2_char<S: Scalar>(k: i64, i: i64, truncation: Exp) -> Result<ZQSeries<S>, CharacterError> {
    check_label(k, i)?;
    let top = affine_top_weight(k, i);
    let rel = truncation - top;
    if rel <= Exp::zero() {
        return Ok(ZQSeries::zero(truncation));
    }
    let mut num = ZQSeries::zero(rel);
    let mut n = 0i64;
    loop {
        let mut any = false;
        for m in [n, -n - 1] {
            let e = (k + 2) * m * m + (i + 1) * m;
            if Exp::from_integer(e) < rel {
                any = true;
                for (z, c) in weyl(i + 1 + 2 * m * (k + 2)) {
                    num.add_term(z, Exp::from_integer(e), S::from_i64(c));
                }
            }
        }
        if !any {
            break;
        }
        n += 1;
    }
    Ok(num.mul(&affine_denominator_inverse(rel)).shift_q(top))
}

/// `h(0)` eigenvalue used for `M^{i,j}`: the representative of
/// `i - 2j mod 2k` in `(-k, k]`.
pub fn string_lambda(k: i64, i: i64, j: i64) -> i64 {
    let r = (i - 2 * j).rem_euclid(2 * k);
    if r > k {
        r - 2 * k
    } else {
        r
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StringFunction<S> {
    pub k: i64,
    pub i: i64,
    pub j: i64,
    pub lambda: i64,
    pub series: QSeries<S>,
}

/// Character of `M^{i,j}` in absolute weights: the `z^lambda` slice of
/// `ch L(k,i)` times `phi(q) q^{-lambda^2/4k}`, i.e. with the Heisenberg
/// Fock character of charge `lambda` divided out.
pub fn string_function<S: Scalar>(k: i64, i: i64, j: i64, truncation: Exp) -> Result<StringFunction<S>, CharacterError> {
    check_label(k, i)?;
    let j = j.rem_euclid(k);
    let lambda = string_lambda(k, i, j);
    let shift = Exp::new(lambda * lambda, 4 * k);
    let wide = truncation + shift;
    let slice = affine_sl2_char::<S>(k, i, wide)?.slice(lambda);
    let series = slice.mul(&euler_phi(wide)).shift(-shift);
    Ok(StringFunction {
        k,
        i,
        j,
        lambda,
        series,
    })
}

/// First exponent below the common truncation where two series differ.
pub fn first_difference<S: Scalar>(a: &QSeries<S>, b: &QSeries<S>) -> Option<(Exp, S, S)> {
    let t = a.truncation().min(b.truncation());
    let mut exps: Vec<Exp> = a.terms().chain(b.terms()).map(|(e, _)| *e).filter(|e| *e < t).collect();
    exps.sort();
    exps.dedup();
    exps.into_iter()
        .find(|e| a.coeff(e) != b.coeff(e))
        .map(|e| (e, a.coeff(&e), b.coeff(&e)))
}

/// `sum_j ch V_{Z gamma + (i-2j) gamma/2k} * components[j]`.
pub fn decomposition_rhs<S: Scalar>(
    k: i64,
    i: i64,
    truncation: Exp,
    components: &[(i64, QSeries<S>)],
) -> Result<QSeries<S>, CharacterError> {
    let mut rhs = QSeries::zero(truncation);
    for (j, ch) in components {
        let lattice = lattice_coset_char::<S>(k, (i - 2 * j).rem_euclid(2 * k), truncation)?;
        rhs = rhs.add(&lattice.mul(ch));
    }
    Ok(rhs.truncate(truncation))
}

/// String functions of `L(k,i)` for `j = 0..k-1`.
pub fn string_components<S: Scalar>(k: i64, i: i64, truncation: Exp) -> Result<Vec<(i64, QSeries<S>)>, CharacterError> {
    (0..k)
        .map(|j| Ok((j, string_function::<S>(k, i, j, truncation)?.series)))
        .collect()
}

/// Checks `ch L(k,i)|_{z=1} = sum_j ch V_{Z gamma + (i-2j) gamma/2k} ch M^{i,j}`
/// for the given components at all weights `<= max_weight`.
pub fn decomposition_check<S: Scalar>(
    k: i64,
    i: i64,
    max_weight: i64,
    components: &[(i64, QSeries<S>)],
) -> Result<Report, CharacterError> {
    let truncation = Exp::from_integer(max_weight + 1);
    let name = if i == 0 { "lk0-decomposition" } else { "lki-decomposition" };
    let mut report = Report::new(
        name,
        Params::k(k).with_i(i).with_max_weight(max_weight),
        "ch L(k,i) = sum_j ch V_{Z gamma + (i-2j) gamma/2k} * ch M^{i,j}",
    );
    let lhs = affine_sl2_char::<S>(k, i, truncation)?.at_z_one();
    let rhs = decomposition_rhs(k, i, truncation, components)?;
    match first_difference(&lhs, &rhs) {
        None => {
            report.item("series equality", true, format!("{} terms agree below q^{truncation}", lhs.len()));
        }
        Some((e, a, b)) => {
            report.item(
                "series equality",
                false,
                format!("first difference at q^{e}: affine {a}, decomposition {b}"),
            );
        }
    }
    let used: Vec<i64> = components.iter().map(|(j, _)| *j).collect();
    report.item(
        "components",
        true,
        format!("j in {used:?}"),
    );
    Ok(report.finish(false))
}

pub fn decomposition_check_lk0<S: Scalar>(k: i64, max_weight: i64) -> Result<Report, CharacterError> {
    decomposition_check_lki::<S>(k, 0, max_weight)
}

pub fn decomposition_check_lki<S: Scalar>(k: i64, i: i64, max_weight: i64) -> Result<Report, CharacterError> {
    let comps = string_components::<S>(k, i, Exp::from_integer(max_weight + 1))?;
    decomposition_check(k, i, max_weight, &comps)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StringTableRow {
    pub k: i64,
    pub i: i64,
    pub j: i64,
    pub top_weight: [i64; 2],
    /// Coefficients of `q^{top + n}`, `n = 0, 1, ...` below the truncation.
    pub coefficients: Vec<String>,
}

/// All string functions of level `k`, one row per `(i, j)`.
pub fn string_function_table<S: Scalar>(k: i64, truncation: Exp) -> Result<Vec<StringTableRow>, CharacterError> {
    let mut rows = Vec::new();
    for i in 0..=k {
        for j in 0..k {
            let sf = string_function::<S>(k, i, j, truncation)?;
            let top = topweight_para(k, i, j);
            rows.push(StringTableRow {
                k,
                i,
                j,
                top_weight: [*top.numer(), *top.denom()],
                coefficients: sf.series.coefficients_from(top).iter().map(|c| c.to_string()).collect(),
            });
        }
    }
    Ok(rows)
}
