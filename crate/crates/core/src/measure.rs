//! The measurement `⟦F,G⟧_m = Σ_{π ∈ 𝒞(F,G)} m(ω(π))` on graphs and sliced graphs.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::{Plugging, WeightedGraph};
use crate::matrix::logdet_measure;
use crate::project::SlicedGraph;
use crate::scalar::{ExtReal, Scalar};
use crate::Rational;

/// Which map `m : ]0,1] → ℝ≥0 ∪ {∞}` to measure circuits with, and how.
#[derive(Clone, Debug, PartialEq)]
pub enum MeasureParam {
    /// `m(x) = −log(1 − x)`, evaluated as `−log det(I − M_F̂ M_Ĝ)`.
    LogDet,
    /// `m ≡ ∞`.
    AlwaysInfinite,
    /// Partial sum over circuits of length at most `max_len`.
    Truncated { map: CircuitMap, max_len: usize },
}

#[derive(Clone, Debug, PartialEq)]
pub enum CircuitMap {
    NegLogOneMinus,
    Table(WeightTable),
}

/// A finitely supported map on circuit weights with an optional fallback.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct WeightTable {
    pub entries: BTreeMap<Rational, ExtReal>,
    pub default: Option<ExtReal>,
}

impl WeightTable {
    /// The constant map.
    pub fn constant(value: ExtReal) -> Self {
        WeightTable {
            entries: BTreeMap::new(),
            default: Some(value),
        }
    }

    pub fn get(&self, w: &Rational) -> Result<ExtReal> {
        self.entries
            .get(w)
            .or(self.default.as_ref())
            .cloned()
            .ok_or_else(|| Error::UnmappedWeight(w.clone()))
    }
}

impl CircuitMap {
    pub fn eval(&self, w: &Rational) -> Result<ExtReal> {
        match self {
            CircuitMap::NegLogOneMinus => {
                let rest = Rational::one() - w;
                Ok(if rest.is_zero() {
                    ExtReal::Infinite
                } else {
                    ExtReal::Finite(Scalar::neg_ln(rest))
                })
            }
            CircuitMap::Table(t) => t.get(w),
        }
    }
}

/// A measured value; `exact == false` marks a truncated lower bound.
#[derive(Clone, Debug, PartialEq)]
pub struct Measurement {
    pub value: ExtReal,
    pub exact: bool,
}

impl Measurement {
    pub fn exact(value: ExtReal) -> Self {
        Measurement { value, exact: true }
    }

    /// The value, refusing truncated sums that may be missing circuits.
    pub fn require_exact(self) -> Result<ExtReal> {
        if self.exact || self.value.is_infinite() {
            Ok(self.value)
        } else {
            Err(Error::InexactMeasure)
        }
    }
}

pub fn measure_graphs(f: &WeightedGraph, g: &WeightedGraph, p: &MeasureParam) -> Result<Measurement> {
    match p {
        MeasureParam::AlwaysInfinite => {
            let value = if Plugging::new(f, g).has_cycle() {
                ExtReal::Infinite
            } else {
                ExtReal::zero()
            };
            Ok(Measurement::exact(value))
        }
        MeasureParam::LogDet => Ok(Measurement::exact(logdet_measure(f, g))),
        MeasureParam::Truncated { map, max_len } => {
            let plug = Plugging::new(f, g);
            let mut value = ExtReal::zero();
            for c in plug.circuits_up_to(*max_len) {
                value = &value + &map.eval(&c.weight)?;
            }
            Ok(Measurement {
                value,
                exact: plug.circuits_complete(*max_len),
            })
        }
    }
}

/// `⟦Σ αᵢFᵢ, Σ βⱼGⱼ⟧ = Σ αᵢβⱼ⟦Fᵢ,Gⱼ⟧`, infinite as soon as one term is.
pub fn measure_sliced(a: &SlicedGraph, b: &SlicedGraph, p: &MeasureParam) -> Result<Measurement> {
    let mut total = ExtReal::zero();
    let mut exact = true;
    for (alpha, fa) in a.slices() {
        for (beta, gb) in b.slices() {
            let m = measure_graphs(fa, gb, p)?;
            exact &= m.exact;
            total = &total + &m.value.scale(&(alpha * beta));
        }
    }
    Ok(Measurement {
        exact: exact || total.is_infinite(),
        value: total,
    })
}
