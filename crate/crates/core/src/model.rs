//! Decision processes: truth tables, linear threshold units, and models with
//! point-wise exceptions. Also home of [`exists_flip`], the sufficiency
//! oracle every audit goes through.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::knowledge::ConstraintSet;
use crate::logic::{full_mask, subsets, table_index};
use crate::{Error, FeatureSpace, Individual, PartialAssignment, Result};

/// Binary decision; `1` is the favorable outcome.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Decision(bool);

impl Decision {
    pub const FAVORABLE: Decision = Decision(true);
    pub const UNFAVORABLE: Decision = Decision(false);

    pub const fn new(favorable: bool) -> Self {
        Decision(favorable)
    }

    pub const fn is_favorable(self) -> bool {
        self.0
    }

    pub const fn negate(self) -> Self {
        Decision(!self.0)
    }

    pub const fn as_u8(self) -> u8 {
        self.0 as u8
    }
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_u8())
    }
}

/// Anything that decides every individual of a fixed-size feature space.
pub trait Classifier {
    fn feature_count(&self) -> usize;

    /// `bits` must not mention features beyond `feature_count`.
    fn decide_bits(&self, bits: u32) -> Decision;

    fn decide(&self, x: &Individual) -> Result<Decision> {
        if x.len() != self.feature_count() {
            return Err(Error::DimensionMismatch {
                expected: self.feature_count(),
                actual: x.len(),
            });
        }
        Ok(self.decide_bits(x.bits()))
    }
}

impl<C: Classifier + ?Sized> Classifier for &C {
    fn feature_count(&self) -> usize {
        (**self).feature_count()
    }

    fn decide_bits(&self, bits: u32) -> Decision {
        (**self).decide_bits(bits)
    }
}

/// Exact decimal `mantissa * 10^-scale`, as written in model files.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Decimal {
    mantissa: i64,
    scale: u32,
}

impl Decimal {
    const MAX_SCALE: u32 = 12;

    pub const fn new(mantissa: i64, scale: u32) -> Self {
        Decimal { mantissa, scale }
    }

    pub const fn mantissa(&self) -> i64 {
        self.mantissa
    }

    pub const fn scale(&self) -> u32 {
        self.scale
    }

    fn rescaled(&self, scale: u32) -> i128 {
        self.mantissa as i128 * 10i128.pow(scale - self.scale)
    }
}

impl FromStr for Decimal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidDecimal(s.to_string());
        let t = s.trim();
        let (negative, digits) = match t.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, t.strip_prefix('+').unwrap_or(t)),
        };
        let (int, frac) = digits.split_once('.').unwrap_or((digits, ""));
        if int.is_empty() && frac.is_empty() {
            return Err(bad());
        }
        if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let scale = frac.len() as u32;
        if scale > Decimal::MAX_SCALE {
            return Err(bad());
        }
        let mut mantissa: i64 = 0;
        for c in int.chars().chain(frac.chars()) {
            mantissa = mantissa
                .checked_mul(10)
                .and_then(|m| m.checked_add((c as u8 - b'0') as i64))
                .ok_or_else(bad)?;
        }
        Ok(Decimal {
            mantissa: if negative { -mantissa } else { mantissa },
            scale,
        })
    }
}

impl fmt::Display for Decimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.mantissa < 0 { "-" } else { "" };
        let abs = self.mantissa.unsigned_abs();
        if self.scale == 0 {
            return write!(f, "{sign}{abs}");
        }
        let pow = 10u64.pow(self.scale);
        write!(
            f,
            "{sign}{}.{:0width$}",
            abs / pow,
            abs % pow,
            width = self.scale as usize
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruthTable {
    // bit `i` of the table is the decision at big-endian index `i`
    words: Vec<u64>,
    len: usize,
}

impl TruthTable {
    pub fn new(outputs: &[bool], len: usize) -> Result<Self> {
        let expected = 1usize << len;
        if outputs.len() != expected {
            return Err(Error::TableLength {
                expected,
                actual: outputs.len(),
            });
        }
        let mut words = vec![0u64; expected.div_ceil(64)];
        for (i, _) in outputs.iter().enumerate().filter(|(_, o)| **o) {
            words[i / 64] |= 1 << (i % 64);
        }
        Ok(TruthTable { words, len })
    }

    pub fn output(&self, index: u32) -> bool {
        let i = index as usize;
        self.words[i / 64] & (1 << (i % 64)) != 0
    }

    pub fn outputs(&self) -> impl Iterator<Item = bool> + '_ {
        (0..1u32 << self.len).map(|i| self.output(i))
    }
}

/// Decision `1` iff `sum w_i x_i + bias > 0`, in exact arithmetic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearThreshold {
    weights: Vec<Decimal>,
    bias: Decimal,
    scaled_weights: Vec<i128>,
    scaled_bias: i128,
}

impl LinearThreshold {
    /// Rejects models where some individual sums to exactly zero.
    pub fn new(weights: Vec<Decimal>, bias: Decimal) -> Result<Self> {
        let scale = weights
            .iter()
            .chain(core::iter::once(&bias))
            .map(|w| w.scale)
            .max()
            .unwrap_or(0);
        let scaled_weights: Vec<i128> = weights.iter().map(|w| w.rescaled(scale)).collect();
        let scaled_bias = bias.rescaled(scale);
        let model = LinearThreshold {
            weights,
            bias,
            scaled_weights,
            scaled_bias,
        };
        let len = model.weights.len();
        if len > crate::MAX_FEATURES {
            return Err(Error::TooManyFeatures {
                count: len,
                max: crate::MAX_FEATURES,
            });
        }
        if let Some(bits) = subsets(full_mask(len)).find(|&bits| model.score(bits) == 0) {
            return Err(Error::LinearTie(table_index(bits, len)));
        }
        Ok(model)
    }

    pub fn weights(&self) -> &[Decimal] {
        &self.weights
    }

    pub fn bias(&self) -> Decimal {
        self.bias
    }

    fn score(&self, bits: u32) -> i128 {
        self.scaled_weights
            .iter()
            .enumerate()
            .filter(|(i, _)| bits & (1 << i) != 0)
            .map(|(_, w)| *w)
            .sum::<i128>()
            + self.scaled_bias
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModelKind {
    TruthTable(TruthTable),
    LinearThreshold(LinearThreshold),
}

/// A total decision function over a named feature space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecisionModel {
    features: FeatureSpace,
    kind: ModelKind,
}

impl DecisionModel {
    /// `outputs[i]` is the decision at big-endian table index `i`.
    pub fn truth_table(features: FeatureSpace, outputs: &[bool]) -> Result<Self> {
        let table = TruthTable::new(outputs, features.len())?;
        Ok(DecisionModel {
            features,
            kind: ModelKind::TruthTable(table),
        })
    }

    /// Tabulates `f` over every individual.
    pub fn from_fn(features: FeatureSpace, f: impl Fn(&Individual) -> bool) -> Self {
        let outputs: Vec<bool> = Individual::all(features.len()).map(|x| f(&x)).collect();
        DecisionModel::truth_table(features, &outputs).expect("length matches by construction")
    }

    pub fn constant(features: FeatureSpace, decision: Decision) -> Self {
        DecisionModel::from_fn(features, |_| decision.is_favorable())
    }

    pub fn linear_threshold(
        features: FeatureSpace,
        weights: Vec<Decimal>,
        bias: Decimal,
    ) -> Result<Self> {
        if weights.len() != features.len() {
            return Err(Error::DimensionMismatch {
                expected: features.len(),
                actual: weights.len(),
            });
        }
        Ok(DecisionModel {
            features,
            kind: ModelKind::LinearThreshold(LinearThreshold::new(weights, bias)?),
        })
    }

    pub fn features(&self) -> &FeatureSpace {
        &self.features
    }

    pub fn kind(&self) -> &ModelKind {
        &self.kind
    }

    /// Pointwise negation, as a truth table.
    pub fn negated(&self) -> DecisionModel {
        DecisionModel::from_fn(self.features.clone(), |x| {
            !self.decide_bits(x.bits()).is_favorable()
        })
    }
}

impl Classifier for DecisionModel {
    fn feature_count(&self) -> usize {
        self.features.len()
    }

    fn decide_bits(&self, bits: u32) -> Decision {
        match &self.kind {
            ModelKind::TruthTable(t) => Decision(t.output(table_index(bits, self.features.len()))),
            ModelKind::LinearThreshold(l) => Decision(l.score(bits) > 0),
        }
    }
}

/// `base` with a finite set of individual decisions overridden.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelOverride<M = DecisionModel> {
    base: M,
    exceptions: BTreeMap<u32, Decision>,
}

impl<M: Classifier> ModelOverride<M> {
    pub fn new(base: M) -> Self {
        ModelOverride {
            base,
            exceptions: BTreeMap::new(),
        }
    }

    pub fn with_exception(mut self, x: Individual, decision: Decision) -> Result<Self> {
        if x.len() != self.base.feature_count() {
            return Err(Error::DimensionMismatch {
                expected: self.base.feature_count(),
                actual: x.len(),
            });
        }
        self.exceptions.insert(x.bits(), decision);
        Ok(self)
    }

    pub fn base(&self) -> &M {
        &self.base
    }

    pub fn exceptions(&self) -> impl Iterator<Item = (Individual, Decision)> + '_ {
        let len = self.base.feature_count();
        self.exceptions
            .iter()
            .map(move |(&bits, &d)| (Individual::from_bits_unchecked(bits, len), d))
    }
}

impl<M: Classifier> Classifier for ModelOverride<M> {
    fn feature_count(&self) -> usize {
        self.base.feature_count()
    }

    fn decide_bits(&self, bits: u32) -> Decision {
        match self.exceptions.get(&bits) {
            Some(d) => *d,
            None => self.base.decide_bits(bits),
        }
    }
}

/// Tabulates an arbitrary classifier (e.g. an override) as a plain model.
pub fn tabulate<C: Classifier + ?Sized>(m: &C, features: FeatureSpace) -> Result<DecisionModel> {
    if features.len() != m.feature_count() {
        return Err(Error::DimensionMismatch {
            expected: m.feature_count(),
            actual: features.len(),
        });
    }
    Ok(DecisionModel::from_fn(features, |x| {
        m.decide_bits(x.bits()).is_favorable()
    }))
}

/// Some individual extending `xp` (and satisfying `k`, when given) whose
/// decision differs from `d`. Extensions are scanned in increasing order of
/// the free bits.
pub fn find_flip<M: Classifier + ?Sized>(
    m: &M,
    xp: &PartialAssignment,
    d: Decision,
    k: Option<&ConstraintSet>,
) -> Option<Individual> {
    let len = m.feature_count();
    let all = full_mask(len);
    let fixed = xp.restrict(all);
    let free = all & !fixed.mask();
    subsets(free)
        .map(|sub| fixed.value_bits() | sub)
        .find(|&bits| m.decide_bits(bits) != d && k.is_none_or(|k| k.holds_bits(bits)))
        .map(|bits| Individual::from_bits_unchecked(bits, len))
}

/// `exists x' extending xp (with x' |= k) such that decide(x') != d`.
pub fn exists_flip<M: Classifier + ?Sized>(
    m: &M,
    xp: &PartialAssignment,
    d: Decision,
    k: Option<&ConstraintSet>,
) -> bool {
    find_flip(m, xp, d, k).is_some()
}

/// `m1` and `m2` agree on every real individual.
pub fn equiv_under_bk<A, B>(m1: &A, m2: &B, k: &ConstraintSet) -> Result<bool>
where
    A: Classifier + ?Sized,
    B: Classifier + ?Sized,
{
    if m1.feature_count() != m2.feature_count() || k.len() != m1.feature_count() {
        return Err(Error::DimensionMismatch {
            expected: m1.feature_count(),
            actual: if m1.feature_count() != m2.feature_count() {
                m2.feature_count()
            } else {
                k.len()
            },
        });
    }
    Ok(subsets(full_mask(m1.feature_count()))
        .filter(|&bits| k.holds_bits(bits))
        .all(|bits| m1.decide_bits(bits) == m2.decide_bits(bits)))
}

/// Display helper for truth tables: `0`/`1` per entry in index order.
pub fn table_string(t: &TruthTable) -> String {
    t.outputs().map(|o| if o { '1' } else { '0' }).collect()
}
