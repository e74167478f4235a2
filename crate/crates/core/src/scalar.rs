//! Exact scalars of the form `r + Σ cᵢ·ln(xᵢ)` and their extension by `∞`.
//!
//! Measurements under the log-determinant parameter are logarithms of
//! rationals, so every pairing, wager and measurement built from them is a
//! rational linear combination of logarithms of positive rationals.  Keeping
//! that form symbolic makes identities between such values decidable: by
//! Baker's theorem a nonzero rational combination of logarithms of rationals
//! is transcendental, so `r + Σ cᵢ·ln(xᵢ) = 0` iff `r = 0` and `Π xᵢ^cᵢ = 1`.
//! The latter is checked over a pairwise-coprime basis of the integers
//! involved, so no exponentiation is needed.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::{format_rational, ln_rational, to_f64};
use crate::Rational;

#[derive(Clone, Debug, Default)]
pub struct Scalar {
    rational: Rational,
    // argument -> coefficient; arguments are positive and != 1, coefficients nonzero
    logs: BTreeMap<Rational, Rational>,
}

impl Scalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_rational(r: Rational) -> Self {
        Scalar {
            rational: r,
            logs: BTreeMap::new(),
        }
    }

    /// `coeff · ln(arg)`.
    pub fn log_term(coeff: Rational, arg: Rational) -> Self {
        assert!(arg.is_positive(), "logarithm of a non-positive rational");
        let mut s = Scalar::zero();
        s.push_log(coeff, arg);
        s
    }

    /// `-ln(x)`; the circuit measure `-ln(1 - w)` is `neg_ln(1 - w)`.
    pub fn neg_ln(x: Rational) -> Self {
        Self::log_term(-Rational::one(), x)
    }

    fn push_log(&mut self, coeff: Rational, arg: Rational) {
        if coeff.is_zero() || arg.is_one() {
            return;
        }
        let slot = self.logs.entry(arg).or_insert_with(Rational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.logs.retain(|_, c| !c.is_zero());
        }
    }

    pub fn rational_part(&self) -> &Rational {
        &self.rational
    }

    /// `(coeff, arg)` pairs.
    pub fn log_terms(&self) -> impl Iterator<Item = (&Rational, &Rational)> {
        self.logs.iter().map(|(a, c)| (c, a))
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        if self.log_part_vanishes() {
            Some(&self.rational)
        } else {
            None
        }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        if k.is_zero() {
            return Scalar::zero();
        }
        Scalar {
            rational: &self.rational * k,
            logs: self.logs.iter().map(|(a, c)| (a.clone(), c * k)).collect(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        to_f64(&self.rational)
            + self
                .logs
                .iter()
                .map(|(a, c)| to_f64(c) * ln_rational(a))
                .sum::<f64>()
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.log_part_vanishes()
    }

    fn log_part_vanishes(&self) -> bool {
        if self.logs.is_empty() {
            return true;
        }
        let mut basis: Vec<BigUint> = Vec::new();
        for arg in self.logs.keys() {
            refine_basis(&mut basis, arg.numer().magnitude().clone());
            refine_basis(&mut basis, arg.denom().magnitude().clone());
        }
        let mut totals = vec![Rational::zero(); basis.len()];
        for (arg, coeff) in &self.logs {
            for (b, total) in basis.iter().zip(totals.iter_mut()) {
                let e = valuation(arg.numer().magnitude(), b) as i64
                    - valuation(arg.denom().magnitude(), b) as i64;
                if e != 0 {
                    *total += coeff * Rational::from_integer(e.into());
                }
            }
        }
        totals.iter().all(Zero::is_zero)
    }
}

/// Refines `basis` (pairwise coprime, all > 1) so that `x` factors over it.
fn refine_basis(basis: &mut Vec<BigUint>, x: BigUint) {
    let mut pending = vec![x];
    while let Some(x) = pending.pop() {
        if x.is_one() || x.is_zero() {
            continue;
        }
        match basis.iter().position(|b| !b.gcd(&x).is_one()) {
            Some(i) => {
                let b = basis.swap_remove(i);
                let g = b.gcd(&x);
                pending.push(&b / &g);
                pending.push(&x / &g);
                pending.push(g);
            }
            None => basis.push(x),
        }
    }
}

fn valuation(n: &BigUint, b: &BigUint) -> u64 {
    let mut n = n.clone();
    let mut k = 0;
    while !n.is_zero() && (&n % b).is_zero() {
        n /= b;
        k += 1;
    }
    k
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        (self - other).is_zero()
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::from_rational(r)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        out.rational += &rhs.rational;
        for (a, c) in &rhs.logs {
            out.push_log(c.clone(), a.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.scale(&-Rational::one())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_rational(&self.rational))?;
        for (a, c) in &self.logs {
            write!(f, " + {}*ln({})", format_rational(c), format_rational(a))?;
        }
        Ok(())
    }
}

/// A value in `ℝ ∪ {∞}` where every sum or product containing `∞` is `∞`,
/// including `0·∞`.
#[derive(Clone, Debug, PartialEq)]
pub enum ExtReal {
    Finite(Scalar),
    Infinite,
}

impl ExtReal {
    pub fn zero() -> Self {
        ExtReal::Finite(Scalar::zero())
    }

    pub fn rational(r: Rational) -> Self {
        ExtReal::Finite(Scalar::from_rational(r))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtReal::Infinite)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ExtReal::Finite(s) if s.is_zero())
    }

    /// Neither `0` nor `∞`: the orthogonality condition.
    pub fn is_finite_nonzero(&self) -> bool {
        !self.is_infinite() && !self.is_zero()
    }

    pub fn finite(&self) -> Option<&Scalar> {
        match self {
            ExtReal::Finite(s) => Some(s),
            ExtReal::Infinite => None,
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.finite().and_then(Scalar::as_rational)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        match self {
            ExtReal::Finite(s) => ExtReal::Finite(s.scale(k)),
            ExtReal::Infinite => ExtReal::Infinite,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            ExtReal::Finite(s) => s.to_f64(),
            ExtReal::Infinite => f64::INFINITY,
        }
    }
}

impl From<Scalar> for ExtReal {
    fn from(s: Scalar) -> Self {
        ExtReal::Finite(s)
    }
}

impl From<Rational> for ExtReal {
    fn from(r: Rational) -> Self {
        ExtReal::rational(r)
    }
}

impl<'a> Add<&'a ExtReal> for &'a ExtReal {
    type Output = ExtReal;
    fn add(self, rhs: &ExtReal) -> ExtReal {
        match (self, rhs) {
            (ExtReal::Finite(a), ExtReal::Finite(b)) => ExtReal::Finite(a + b),
            _ => ExtReal::Infinite,
        }
    }
}

impl std::iter::Sum for ExtReal {
    fn sum<I: Iterator<Item = ExtReal>>(iter: I) -> Self {
        iter.fold(ExtReal::zero(), |acc, x| &acc + &x)
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtReal::Finite(s) => s.fmt(f),
            ExtReal::Infinite => f.write_str("inf"),
        }
    }
}
