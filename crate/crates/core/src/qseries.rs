//! Truncated formal series in `q` with exact rational exponents.
//!
//! A [`QSeries`] stores only the terms with exponent strictly below its
//! truncation. Binary operations truncate at the smaller of the two inputs.
//! [`ZQSeries`] adds an integer grading in a second variable `z`, used for
//! charge-graded affine characters.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::scalar::{ceil_exp, exp, Exp, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QSeriesError {
    #[error("series has no invertible constant term")]
    ZeroConstantTerm,
    #[error("residue {s} out of range 0..{} for level {k}", 2 * .k)]
    BadResidue { k: i64, s: i64 },
    #[error("malformed series: {0}")]
    Parse(String),
}

/// Truncated series `sum c_e q^e` with every stored `e < truncation`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QSeries<S> {
    terms: BTreeMap<Exp, S>,
    truncation: Exp,
}

impl<S: Scalar> QSeries<S> {
    pub fn zero(truncation: Exp) -> Self {
        QSeries {
            terms: BTreeMap::new(),
            truncation,
        }
    }

    pub fn one(truncation: Exp) -> Self {
        Self::monomial(Exp::zero(), S::one(), truncation)
    }

    pub fn monomial(e: Exp, c: S, truncation: Exp) -> Self {
        let mut s = Self::zero(truncation);
        s.add_term(e, c);
        s
    }

    /// Builds a series from `(exponent, coefficient)` pairs; repeated
    /// exponents are summed and terms at or beyond `truncation` dropped.
    pub fn from_terms<I>(terms: I, truncation: Exp) -> Self
    where
        I: IntoIterator<Item = (Exp, S)>,
    {
        let mut s = Self::zero(truncation);
        for (e, c) in terms {
            s.add_term(e, c);
        }
        s
    }

    /// Integer-exponent series from a dense coefficient list starting at `q^0`.
    pub fn from_coeffs(coeffs: &[i64], truncation: Exp) -> Self {
        Self::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(n, &c)| (Exp::from_integer(n as i64), S::from_i64(c))),
            truncation,
        )
    }

    pub fn truncation(&self) -> Exp {
        self.truncation
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &S)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &Exp) -> S {
        self.terms.get(e).cloned().unwrap_or_else(S::zero)
    }

    /// Lowest-exponent term, if any.
    pub fn leading(&self) -> Option<(Exp, S)> {
        self.terms.iter().next().map(|(e, c)| (*e, c.clone()))
    }

    pub fn add_term(&mut self, e: Exp, c: S) {
        if e >= self.truncation || c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(S::zero);
        *slot = slot.clone() + c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    /// Lowers the truncation to `t` (never raises it).
    pub fn truncate(&self, t: Exp) -> Self {
        let t = t.min(self.truncation);
        QSeries {
            terms: self
                .terms
                .range(..t)
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
            truncation: t,
        }
    }

    /// Multiplication by `q^e`; the truncation moves with the terms.
    pub fn shift(&self, e: Exp) -> Self {
        QSeries {
            terms: self.terms.iter().map(|(x, c)| (*x + e, c.clone())).collect(),
            truncation: self.truncation + e,
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero(self.truncation);
        }
        QSeries {
            terms: self
                .terms
                .iter()
                .map(|(e, x)| (*e, x.clone() * c.clone()))
                .collect(),
            truncation: self.truncation,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let t = self.truncation.min(other.truncation);
        let mut out = self.truncate(t);
        for (e, c) in other.terms.range(..t) {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-S::one())
    }

    /// Cauchy product truncated at the smaller truncation.
    pub fn mul(&self, other: &Self) -> Self {
        let t = self.truncation.min(other.truncation);
        let mut out = Self::zero(t);
        for (ea, ca) in &self.terms {
            if *ea >= t {
                break;
            }
            for (eb, cb) in &other.terms {
                let e = *ea + *eb;
                if e >= t {
                    break;
                }
                out.add_term(e, ca.clone() * cb.clone());
            }
        }
        out
    }

    /// Multiplicative inverse of a series whose lowest term is a nonzero
    /// constant.
    pub fn inv_unit(&self) -> Result<Self, QSeriesError> {
        let (e0, c0) = self.leading().ok_or(QSeriesError::ZeroConstantTerm)?;
        if !e0.is_zero() {
            return Err(QSeriesError::ZeroConstantTerm);
        }
        let t = self.truncation;
        let c0_inv = S::one() / c0.clone();
        // rest = (self - c0) / c0, all exponents positive
        let mut rest = self.clone();
        rest.terms.remove(&e0);
        let rest = rest.scale(&c0_inv);
        let step = match rest.leading() {
            None => return Ok(Self::monomial(Exp::zero(), c0_inv, t)),
            Some((e, _)) => e,
        };
        // 1/(1 + rest) = sum (-rest)^n; terms vanish once n * step >= t
        let rounds = ceil_exp(&(t / step)).max(0) as usize;
        let minus_rest = rest.neg();
        let mut acc = Self::one(t);
        let mut power = Self::one(t);
        for _ in 0..rounds {
            power = power.mul(&minus_rest);
            if power.is_zero() {
                break;
            }
            acc = acc.add(&power);
        }
        Ok(acc.scale(&c0_inv))
    }

    /// `self / other` where `other = q^e0 * unit`. The quotient is known up
    /// to `min(T_self, T_other) - e0`.
    pub fn div(&self, other: &Self) -> Result<Self, QSeriesError> {
        let (e0, _) = other.leading().ok_or(QSeriesError::ZeroConstantTerm)?;
        let unit = other.shift(-e0);
        let inv = unit.inv_unit()?;
        Ok(self.shift(-e0).mul(&inv))
    }

    /// Coefficients at `base + n` for `n = 0, 1, ...` below the truncation.
    pub fn coefficients_from(&self, base: Exp) -> Vec<S> {
        let mut out = Vec::new();
        let mut e = base;
        while e < self.truncation {
            out.push(self.coeff(&e));
            e += Exp::one();
        }
        out
    }
}

impl<S: Scalar> Add for &QSeries<S> {
    type Output = QSeries<S>;
    fn add(self, rhs: Self) -> QSeries<S> {
        QSeries::add(self, rhs)
    }
}

impl<S: Scalar> Sub for &QSeries<S> {
    type Output = QSeries<S>;
    fn sub(self, rhs: Self) -> QSeries<S> {
        QSeries::sub(self, rhs)
    }
}

impl<S: Scalar> Mul for &QSeries<S> {
    type Output = QSeries<S>;
    fn mul(self, rhs: Self) -> QSeries<S> {
        QSeries::mul(self, rhs)
    }
}

impl<S: Scalar> Neg for &QSeries<S> {
    type Output = QSeries<S>;
    fn neg(self) -> QSeries<S> {
        QSeries::neg(self)
    }
}

impl<S: Scalar> fmt::Display for QSeries<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            write!(f, "0")?;
        }
        for (n, (e, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            if e.is_zero() {
                write!(f, "{c}")?;
            } else {
                write!(f, "({c})q^{e}")?;
            }
        }
        write!(f, " + O(q^{})", self.truncation)
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesWire {
    truncation: [i64; 2],
    terms: Vec<(i64, i64, String)>,
}

impl<S: Scalar> Serialize for QSeries<S> {
    fn serialize<Z: Serializer>(&self, serializer: Z) -> Result<Z::Ok, Z::Error> {
        SeriesWire {
            truncation: [*self.truncation.numer(), *self.truncation.denom()],
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (*e.numer(), *e.denom(), c.to_string()))
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de, S: Scalar> Deserialize<'de> for QSeries<S> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let wire = SeriesWire::deserialize(deserializer)?;
        let [tn, td] = wire.truncation;
        if td <= 0 {
            return Err(D::Error::custom("non-positive truncation denominator"));
        }
        let mut out = QSeries::zero(exp(tn, td));
        for (n, d, c) in wire.terms {
            if d <= 0 {
                return Err(D::Error::custom("non-positive exponent denominator"));
            }
            let c: S = c
                .parse()
                .map_err(|_| D::Error::custom(format!("bad coefficient {c:?}")))?;
            let e = exp(n, d);
            if e >= out.truncation {
                return Err(D::Error::custom("term beyond truncation"));
            }
            out.add_term(e, c);
        }
        Ok(out)
    }
}

impl<S: Scalar> QSeries<S> {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("series serialization is infallible")
    }

    pub fn from_json(s: &str) -> Result<Self, QSeriesError> {
        serde_json::from_str(s).map_err(|e| QSeriesError::Parse(e.to_string()))
    }
}

/// Two-variable truncated series `sum c_{m,e} z^m q^e`, truncated in `q`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ZQSeries<S> {
    terms: BTreeMap<(i64, Exp), S>,
    truncation: Exp,
}

impl<S: Scalar> ZQSeries<S> {
    pub fn zero(truncation: Exp) -> Self {
        ZQSeries {
            terms: BTreeMap::new(),
            truncation,
        }
    }

    pub fn monomial(z: i64, e: Exp, c: S, truncation: Exp) -> Self {
        let mut s = Self::zero(truncation);
        s.add_term(z, e, c);
        s
    }

    pub fn truncation(&self) -> Exp {
        self.truncation
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i64, Exp), &S)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, z: i64, e: Exp, c: S) {
        if e >= self.truncation || c.is_zero() {
            return;
        }
        let slot = self.terms.entry((z, e)).or_insert_with(S::zero);
        *slot = slot.clone() + c;
        if slot.is_zero() {
            self.terms.remove(&(z, e));
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let t = self.truncation.min(other.truncation);
        let mut out = Self::zero(t);
        for ((z, e), c) in self.terms.iter().chain(other.terms.iter()) {
            out.add_term(*z, *e, c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let t = self.truncation.min(other.truncation);
        let mut out = Self::zero(t);
        for ((za, ea), ca) in &self.terms {
            for ((zb, eb), cb) in &other.terms {
                out.add_term(za + zb, *ea + *eb, ca.clone() * cb.clone());
            }
        }
        out
    }

    pub fn shift_q(&self, e: Exp) -> Self {
        ZQSeries {
            terms: self
                .terms
                .iter()
                .map(|((z, x), c)| ((*z, *x + e), c.clone()))
                .collect(),
            truncation: self.truncation + e,
        }
    }

    /// Coefficient series of `z^m`.
    pub fn slice(&self, m: i64) -> QSeries<S> {
        QSeries::from_terms(
            self.terms
                .iter()
                .filter(|((z, _), _)| *z == m)
                .map(|((_, e), c)| (*e, c.clone())),
            self.truncation,
        )
    }

    /// Sum of the `z^m` slices over all `m` congruent to `r` modulo `period`.
    pub fn residue_slice(&self, r: i64, period: i64) -> QSeries<S> {
        QSeries::from_terms(
            self.terms
                .iter()
                .filter(|((z, _), _)| (z - r).rem_euclid(period) == 0)
                .map(|((_, e), c)| (*e, c.clone())),
            self.truncation,
        )
    }

    /// Specialization `z = 1`.
    pub fn at_z_one(&self) -> QSeries<S> {
        QSeries::from_terms(
            self.terms.iter().map(|((_, e), c)| (*e, c.clone())),
            self.truncation,
        )
    }

    /// All `z` exponents carrying a nonzero term.
    pub fn charges(&self) -> Vec<i64> {
        let mut zs: Vec<i64> = self.terms.keys().map(|(z, _)| *z).collect();
        zs.sort_unstable();
        zs.dedup();
        zs
    }
}

fn max_integer_below(t: Exp) -> i64 {
    ceil_exp(&t) - 1
}

/// `prod_{n>=1} (1 - q^n)^{-rank}`: rank-coloured partition numbers.
pub fn heisenberg_char<S: Scalar>(rank: u32, truncation: Exp) -> QSeries<S> {
    let top = max_integer_below(truncation);
    if top < 0 {
        return QSeries::zero(truncation);
    }
    let top = top as usize;
    let mut c = vec![S::zero(); top + 1];
    c[0] = S::one();
    for n in 1..=top {
        for _ in 0..rank {
            for m in n..=top {
                let add = c[m - n].clone();
                c[m] = c[m].clone() + add;
            }
        }
    }
    QSeries::from_terms(
        c.into_iter()
            .enumerate()
            .map(|(m, x)| (Exp::from_integer(m as i64), x)),
        truncation,
    )
}

/// Euler function `prod_{n>=1} (1 - q^n)`.
pub fn euler_phi<S: Scalar>(truncation: Exp) -> QSeries<S> {
    let top = max_integer_below(truncation);
    let mut acc = QSeries::one(truncation);
    for n in 1..=top.max(0) {
        let factor = QSeries::from_terms(
            [
                (Exp::zero(), S::one()),
                (Exp::from_integer(n), -S::one()),
            ],
            truncation,
        );
        acc = acc.mul(&factor);
    }
    acc
}

/// Theta series `sum_{n in Z} q^{(2kn+s)^2/4k}` of the coset `Z gamma + s gamma/2k`
/// with `<gamma, gamma> = 2k`.
pub fn coset_theta<S: Scalar>(k: i64, s: i64, truncation: Exp) -> Result<QSeries<S>, QSeriesError> {
    if k <= 0 || s < 0 || s >= 2 * k {
        return Err(QSeriesError::BadResidue { k, s });
    }
    let mut out = QSeries::zero(truncation);
    // (2kn + s)^2 < 4kT bounds |2kn + s|
    let bound = 4 * k * ceil_exp(&truncation).max(0);
    let mut n = 0i64;
    loop {
        let mut any = false;
        for m in [n, -n - 1] {
            let x = 2 * k * m + s;
            if x * x < bound {
                any = true;
                out.add_term(exp(x * x, 4 * k), S::one());
            }
        }
        if !any {
            break;
        }
        n += 1;
    }
    Ok(out)
}

/// Character of the simple lattice module `V_{Z gamma + s gamma/2k}`.
pub fn lattice_coset_char<S: Scalar>(
    k: i64,
    s: i64,
    truncation: Exp,
) -> Result<QSeries<S>, QSeriesError> {
    Ok(coset_theta::<S>(k, s, truncation)?.mul(&heisenberg_char(1, truncation)))
}

/// Character of a vertex algebra freely generated in weights `2, 3, ..., k`:
/// `prod_{m=2}^{k} prod_{n>=0} (1 - q^{m+n})^{-1}`. Empty product for `k < 2`.
pub fn free_w_char<S: Scalar>(k: i64, truncation: Exp) -> QSeries<S> {
    let top = max_integer_below(truncation);
    if top < 0 {
        return QSeries::zero(truncation);
    }
    let top = top as usize;
    let mut c = vec![S::zero(); top + 1];
    c[0] = S::one();
    for m in 2..=k.max(1) as usize {
        for part in m..=top {
            for x in part..=top {
                let add = c[x - part].clone();
                c[x] = c[x].clone() + add;
            }
        }
    }
    QSeries::from_terms(
        c.into_iter()
            .enumerate()
            .map(|(m, x)| (Exp::from_integer(m as i64), x)),
        truncation,
    )
}
