//! Propositional foundation: features, literals, (partial) assignments,
//! formulas, and the satisfiability/entailment oracle.
//!
//! Assignments are bitsets: bit `i` of a mask carries feature `i`. That is
//! also why the feature count is capped at [`MAX_FEATURES`].

use alloc::boxed::Box;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::{Error, Result};

/// Hard cap on the number of features. Every algorithm in this crate is
/// exponential in the feature count.
pub const MAX_FEATURES: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FeatureId(u8);

impl FeatureId {
    /// # Panics
    ///
    /// If `index >= MAX_FEATURES`.
    pub const fn new(index: usize) -> Self {
        assert!(index < MAX_FEATURES, "feature index above MAX_FEATURES");
        FeatureId(index as u8)
    }

    pub const fn index(self) -> usize {
        self.0 as usize
    }

    pub(crate) const fn bit(self) -> u32 {
        1 << self.0
    }
}

/// Iterates over the features whose bit is set in `mask`, lowest first.
pub(crate) fn features_of(mask: u32) -> impl Iterator<Item = FeatureId> {
    let mut rest = mask;
    core::iter::from_fn(move || {
        if rest == 0 {
            return None;
        }
        let i = rest.trailing_zeros();
        rest &= rest - 1;
        Some(FeatureId(i as u8))
    })
}

pub(crate) const fn full_mask(len: usize) -> u32 {
    if len >= 32 {
        u32::MAX
    } else {
        (1u32 << len) - 1
    }
}

/// Ordered, uniquely named feature set `V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeatureSpace {
    names: Vec<String>,
}

impl FeatureSpace {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.len() > MAX_FEATURES {
            return Err(Error::TooManyFeatures {
                count: names.len(),
                max: MAX_FEATURES,
            });
        }
        for (i, name) in names.iter().enumerate() {
            let valid =
                !name.is_empty() && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(Error::InvalidFeatureName(name.clone()));
            }
            if names[..i].contains(name) {
                return Err(Error::DuplicateFeature(name.clone()));
            }
        }
        Ok(FeatureSpace { names })
    }

    /// Anonymous space `x0, x1, ...`.
    pub fn anonymous(len: usize) -> Result<Self> {
        FeatureSpace::new((0..len).map(|i| alloc::format!("x{i}")))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, f: FeatureId) -> &str {
        &self.names[f.index()]
    }

    pub fn lookup(&self, name: &str) -> Result<FeatureId> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(FeatureId::new)
            .ok_or_else(|| Error::UnknownFeature(name.to_string()))
    }

    pub fn ids(&self) -> impl Iterator<Item = FeatureId> {
        (0..self.len()).map(FeatureId::new)
    }

    /// `NAME` or `!NAME`.
    pub fn literal_str(&self, lit: Literal) -> String {
        if lit.positive {
            self.name(lit.feature).to_string()
        } else {
            alloc::format!("!{}", self.name(lit.feature))
        }
    }

    /// Parses `NAME` or `!NAME`.
    pub fn parse_literal(&self, text: &str) -> Result<Literal> {
        let text = text.trim();
        match text.strip_prefix('!') {
            Some(name) => Ok(Literal::negative(self.lookup(name.trim())?)),
            None => Ok(Literal::positive(self.lookup(text)?)),
        }
    }

    /// Comma separated literals, e.g. `A, !S, P`.
    pub fn assignment_str(&self, pa: &PartialAssignment) -> String {
        let parts: Vec<String> = pa.literals().map(|l| self.literal_str(l)).collect();
        parts.join(", ")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub feature: FeatureId,
    pub positive: bool,
}

impl Literal {
    pub const fn new(feature: FeatureId, positive: bool) -> Self {
        Literal { feature, positive }
    }

    pub const fn positive(feature: FeatureId) -> Self {
        Literal::new(feature, true)
    }

    pub const fn negative(feature: FeatureId) -> Self {
        Literal::new(feature, false)
    }

    pub const fn negate(self) -> Self {
        Literal::new(self.feature, !self.positive)
    }

    pub fn holds_in(self, x: &Individual) -> bool {
        x.value(self.feature) == self.positive
    }
}

/// Total Boolean assignment over a feature space of `len` features.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Individual {
    bits: u32,
    len: u8,
}

impl Individual {
    pub fn from_bits(bits: u32, len: usize) -> Result<Self> {
        if len > MAX_FEATURES {
            return Err(Error::TooManyFeatures {
                count: len,
                max: MAX_FEATURES,
            });
        }
        Ok(Individual {
            bits: bits & full_mask(len),
            len: len as u8,
        })
    }

    pub(crate) const fn from_bits_unchecked(bits: u32, len: usize) -> Self {
        Individual {
            bits,
            len: len as u8,
        }
    }

    pub fn from_values(values: &[bool]) -> Result<Self> {
        let bits = values
            .iter()
            .enumerate()
            .filter(|(_, v)| **v)
            .fold(0u32, |acc, (i, _)| acc | (1 << i.min(31)));
        Individual::from_bits(bits, values.len())
    }

    /// Inverse of [`Individual::table_index`].
    pub fn from_table_index(index: u32, len: usize) -> Result<Self> {
        let bits = if len == 0 {
            0
        } else {
            index.reverse_bits() >> (32 - len)
        };
        Individual::from_bits(bits, len)
    }

    pub const fn bits(&self) -> u32 {
        self.bits
    }

    pub const fn len(&self) -> usize {
        self.len as usize
    }

    pub const fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn value(&self, f: FeatureId) -> bool {
        self.bits & f.bit() != 0
    }

    pub fn values(&self) -> Vec<bool> {
        (0..self.len()).map(|i| self.bits & (1 << i) != 0).collect()
    }

    pub fn with(mut self, f: FeatureId, value: bool) -> Self {
        if value {
            self.bits |= f.bit();
        } else {
            self.bits &= !f.bit();
        }
        self
    }

    pub fn flip(self, f: FeatureId) -> Self {
        Individual {
            bits: self.bits ^ f.bit(),
            len: self.len,
        }
    }

    /// Big-endian index: feature 0 is the most significant bit, so
    /// `[x1..xn]` maps to `sum x_i * 2^(n-i)`.
    pub fn table_index(&self) -> u32 {
        table_index(self.bits, self.len())
    }

    pub fn literals(&self) -> impl Iterator<Item = Literal> + '_ {
        (0..self.len()).map(|i| {
            let f = FeatureId::new(i);
            Literal::new(f, self.value(f))
        })
    }

    pub fn as_assignment(&self) -> PartialAssignment {
        PartialAssignment {
            mask: full_mask(self.len()),
            values: self.bits,
        }
    }

    /// `true` when every literal of `pa` holds in this individual.
    pub fn extends(&self, pa: &PartialAssignment) -> bool {
        self.bits & pa.mask == pa.values
    }

    /// Every individual of a space of `len` features, in table-index order.
    pub fn all(len: usize) -> impl Iterator<Item = Individual> {
        let count = 1u64 << len;
        (0..count).map(move |i| Individual::from_table_index(i as u32, len).expect("len checked"))
    }
}

pub(crate) fn table_index(bits: u32, len: usize) -> u32 {
    if len == 0 {
        0
    } else {
        bits.reverse_bits() >> (32 - len)
    }
}

/// Canonical (table-index) order, so `A=0,...` sorts before `A=1,...`.
impl Ord for Individual {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len
            .cmp(&other.len)
            .then_with(|| self.table_index().cmp(&other.table_index()))
    }
}

impl PartialOrd for Individual {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Consistent set of literals. Never holds a literal together with its
/// negation: each feature is either unset or carries one value.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct PartialAssignment {
    mask: u32,
    values: u32,
}

impl PartialAssignment {
    pub const fn empty() -> Self {
        PartialAssignment { mask: 0, values: 0 }
    }

    pub(crate) const fn from_raw(mask: u32, values: u32) -> Self {
        PartialAssignment {
            mask,
            values: values & mask,
        }
    }

    pub fn from_literals<I: IntoIterator<Item = Literal>>(lits: I) -> Result<Self> {
        let mut pa = PartialAssignment::empty();
        for lit in lits {
            pa.insert(lit)?;
        }
        Ok(pa)
    }

    pub const fn mask(&self) -> u32 {
        self.mask
    }

    pub const fn value_bits(&self) -> u32 {
        self.values
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn insert(&mut self, lit: Literal) -> Result<()> {
        let bit = lit.feature.bit();
        let value = if lit.positive { bit } else { 0 };
        if self.mask & bit != 0 && self.values & bit != value {
            return Err(Error::Inconsistent(lit.feature.index()));
        }
        self.mask |= bit;
        self.values |= value;
        Ok(())
    }

    pub fn with(mut self, lit: Literal) -> Result<Self> {
        self.insert(lit)?;
        Ok(self)
    }

    pub fn without(self, f: FeatureId) -> Self {
        PartialAssignment {
            mask: self.mask & !f.bit(),
            values: self.values & !f.bit(),
        }
    }

    pub fn value(&self, f: FeatureId) -> Option<bool> {
        (self.mask & f.bit() != 0).then_some(self.values & f.bit() != 0)
    }

    pub fn contains(&self, lit: Literal) -> bool {
        self.value(lit.feature) == Some(lit.positive)
    }

    pub fn mentions(&self, f: FeatureId) -> bool {
        self.mask & f.bit() != 0
    }

    /// `vars(.)`, lowest feature first.
    pub fn vars(&self) -> impl Iterator<Item = FeatureId> {
        features_of(self.mask)
    }

    pub fn literals(&self) -> impl Iterator<Item = Literal> + '_ {
        self.vars()
            .map(move |f| Literal::new(f, self.values & f.bit() != 0))
    }

    pub fn is_subset(&self, other: &PartialAssignment) -> bool {
        self.mask & !other.mask == 0 && other.values & self.mask == self.values
    }

    pub fn union(&self, other: &PartialAssignment) -> Result<Self> {
        let shared = self.mask & other.mask;
        if (self.values ^ other.values) & shared != 0 {
            let clash = (self.values ^ other.values) & shared;
            return Err(Error::Inconsistent(clash.trailing_zeros() as usize));
        }
        Ok(PartialAssignment {
            mask: self.mask | other.mask,
            values: self.values | other.values,
        })
    }

    /// Literals over the features in `mask` only.
    pub fn restrict(&self, mask: u32) -> Self {
        PartialAssignment::from_raw(self.mask & mask, self.values)
    }

    /// Conjunction of the literals as a formula.
    pub fn to_formula(&self) -> Formula {
        Formula::And(self.literals().map(Formula::Lit).collect())
    }
}

/// Lexicographic over the sorted literals (feature index, then polarity with
/// negative first); a proper prefix sorts first.
impl Ord for PartialAssignment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.literals().cmp(other.literals())
    }
}

impl PartialOrd for PartialAssignment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Propositional formula over features.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Const(bool),
    Lit(Literal),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Implies(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn lit(lit: Literal) -> Self {
        Formula::Lit(lit)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn implies(body: Formula, head: Formula) -> Self {
        Formula::Implies(Box::new(body), Box::new(head))
    }

    /// `!(l1 & ... & lk)`.
    pub fn forbid<I: IntoIterator<Item = Literal>>(lits: I) -> Self {
        Formula::not(Formula::And(lits.into_iter().map(Formula::Lit).collect()))
    }

    /// `l1 & ... & lk -> head`.
    pub fn rule<I: IntoIterator<Item = Literal>>(body: I, head: Literal) -> Self {
        Formula::implies(
            Formula::And(body.into_iter().map(Formula::Lit).collect()),
            Formula::Lit(head),
        )
    }

    /// Mask of the features mentioned syntactically.
    pub fn vars(&self) -> u32 {
        match self {
            Formula::Const(_) => 0,
            Formula::Lit(l) => l.feature.bit(),
            Formula::Not(f) => f.vars(),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().fold(0, |m, f| m | f.vars()),
            Formula::Implies(a, b) => a.vars() | b.vars(),
        }
    }

    pub fn check_vars(&self, len: usize) -> Result<()> {
        let outside = self.vars() & !full_mask(len);
        if outside != 0 {
            return Err(Error::FeatureOutOfRange {
                index: outside.trailing_zeros() as usize,
                len,
            });
        }
        Ok(())
    }

    pub fn evaluate(&self, x: &Individual) -> Result<bool> {
        self.check_vars(x.len())?;
        Ok(self.eval_bits(x.bits()))
    }

    pub(crate) fn eval_bits(&self, bits: u32) -> bool {
        match self {
            Formula::Const(b) => *b,
            Formula::Lit(l) => (bits & l.feature.bit() != 0) == l.positive,
            Formula::Not(f) => !f.eval_bits(bits),
            Formula::And(fs) => fs.iter().all(|f| f.eval_bits(bits)),
            Formula::Or(fs) => fs.iter().any(|f| f.eval_bits(bits)),
            Formula::Implies(a, b) => !a.eval_bits(bits) || b.eval_bits(bits),
        }
    }

    /// Three-valued evaluation: `None` when the unset features can still
    /// swing the result.
    pub fn eval_partial(&self, pa: &PartialAssignment) -> Option<bool> {
        match self {
            Formula::Const(b) => Some(*b),
            Formula::Lit(l) => pa.value(l.feature).map(|v| v == l.positive),
            Formula::Not(f) => f.eval_partial(pa).map(|v| !v),
            Formula::And(fs) => {
                let mut known = true;
                for f in fs {
                    match f.eval_partial(pa) {
                        Some(false) => return Some(false),
                        None => known = false,
                        Some(true) => {}
                    }
                }
                known.then_some(true)
            }
            Formula::Or(fs) => {
                let mut known = true;
                for f in fs {
                    match f.eval_partial(pa) {
                        Some(true) => return Some(true),
                        None => known = false,
                        Some(false) => {}
                    }
                }
                known.then_some(false)
            }
            Formula::Implies(a, b) => match (a.eval_partial(pa), b.eval_partial(pa)) {
                (Some(false), _) | (_, Some(true)) => Some(true),
                (Some(true), Some(false)) => Some(false),
                _ => None,
            },
        }
    }

    /// `f[v := value]`.
    pub fn substitute(&self, v: FeatureId, value: bool) -> Formula {
        match self {
            Formula::Lit(l) if l.feature == v => Formula::Const(l.positive == value),
            Formula::Const(_) | Formula::Lit(_) => self.clone(),
            Formula::Not(f) => Formula::not(f.substitute(v, value)),
            Formula::And(fs) => Formula::And(fs.iter().map(|f| f.substitute(v, value)).collect()),
            Formula::Or(fs) => Formula::Or(fs.iter().map(|f| f.substitute(v, value)).collect()),
            Formula::Implies(a, b) => {
                Formula::implies(a.substitute(v, value), b.substitute(v, value))
            }
        }
    }

    /// Existential quantification `exists v. f`, i.e. `f[v:=0] | f[v:=1]`.
    pub fn forget(&self, v: FeatureId) -> Formula {
        Formula::Or(alloc::vec![
            self.substitute(v, false),
            self.substitute(v, true)
        ])
    }

    /// `(exists v. f) == f`: flipping `v` never changes the value of `f`.
    /// Checked by enumeration over the variables of `f`.
    pub fn is_independent(&self, v: FeatureId) -> bool {
        let vars = self.vars();
        if vars & v.bit() == 0 {
            return true;
        }
        let rest = vars & !v.bit();
        subsets(rest).all(|bits| self.eval_bits(bits) == self.eval_bits(bits | v.bit()))
    }

    /// The clause this formula is equivalent to, for the shapes background
    /// knowledge uses: a literal, a disjunction of literals, a negated
    /// conjunction of literals, or a conjunction of literals implying a
    /// literal. `None` for anything else.
    pub fn as_clause(&self) -> Option<Clause> {
        fn negated_conjunction(f: &Formula) -> Option<Clause> {
            match f {
                Formula::Lit(l) => Some(Clause::from_literal(l.negate())),
                Formula::And(fs) => fs.iter().try_fold(Clause::EMPTY, |c, f| match f {
                    Formula::Lit(l) => Some(c.or(Clause::from_literal(l.negate()))),
                    _ => None,
                }),
                Formula::Const(true) => Some(Clause::EMPTY),
                _ => None,
            }
        }
        match self {
            Formula::Const(false) => Some(Clause::EMPTY),
            Formula::Lit(l) => Some(Clause::from_literal(*l)),
            Formula::Or(fs) => fs.iter().try_fold(Clause::EMPTY, |c, f| match f {
                Formula::Lit(l) => Some(c.or(Clause::from_literal(*l))),
                _ => None,
            }),
            Formula::Not(inner) => negated_conjunction(inner),
            Formula::Implies(body, head) => match head.as_ref() {
                Formula::Lit(h) => Some(negated_conjunction(body)?.or(Clause::from_literal(*h))),
                Formula::Const(false) => negated_conjunction(body),
                _ => None,
            },
            _ => None,
        }
    }

    /// Renders with feature names, e.g. `!(!G & P & M)`.
    pub fn display<'a>(&'a self, space: &'a FeatureSpace) -> impl fmt::Display + 'a {
        DisplayFormula(self, space)
    }
}

struct DisplayFormula<'a>(&'a Formula, &'a FeatureSpace);

impl fmt::Display for DisplayFormula<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let space = self.1;
        let join = |f: &mut fmt::Formatter<'_>, fs: &[Formula], op: &str| -> fmt::Result {
            f.write_str("(")?;
            for (i, g) in fs.iter().enumerate() {
                if i > 0 {
                    write!(f, " {op} ")?;
                }
                write!(f, "{}", DisplayFormula(g, space))?;
            }
            f.write_str(")")
        };
        match self.0 {
            Formula::Const(true) => f.write_str("TRUE"),
            Formula::Const(false) => f.write_str("FALSE"),
            Formula::Lit(l) => f.write_str(&space.literal_str(*l)),
            Formula::Not(g) => write!(f, "!{}", DisplayFormula(g, space)),
            Formula::And(fs) => join(f, fs, "&"),
            Formula::Or(fs) => join(f, fs, "|"),
            Formula::Implies(a, b) => {
                write!(
                    f,
                    "({} -> {})",
                    DisplayFormula(a, space),
                    DisplayFormula(b, space)
                )
            }
        }
    }
}

/// Every subset of `mask`, starting from the empty one.
pub(crate) fn subsets(mask: u32) -> impl Iterator<Item = u32> {
    let mut next = Some(0u32);
    core::iter::from_fn(move || {
        let sub = next?;
        next = if sub == mask {
            None
        } else {
            Some(sub.wrapping_sub(mask) & mask)
        };
        Some(sub)
    })
}

/// Disjunction of literals as two masks: satisfied when a `pos` feature is
/// set or a `neg` feature is clear.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Clause {
    pub pos: u32,
    pub neg: u32,
}

impl Clause {
    pub const EMPTY: Clause = Clause { pos: 0, neg: 0 };

    pub const fn from_literal(l: Literal) -> Self {
        if l.positive {
            Clause {
                pos: l.feature.bit(),
                neg: 0,
            }
        } else {
            Clause {
                pos: 0,
                neg: l.feature.bit(),
            }
        }
    }

    pub const fn or(self, other: Clause) -> Self {
        Clause {
            pos: self.pos | other.pos,
            neg: self.neg | other.neg,
        }
    }

    pub const fn is_tautology(&self) -> bool {
        self.pos & self.neg != 0
    }

    pub const fn holds(&self, bits: u32) -> bool {
        bits & self.pos != 0 || !bits & self.neg != 0
    }
}

/// Compiled formula set. Clause-shaped members go through unit propagation,
/// the rest through three-valued evaluation; unmentioned features are never
/// branched on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Theory {
    formulas: Vec<Formula>,
    clauses: Vec<Clause>,
    general: Vec<usize>,
    relevant: u32,
}

impl Theory {
    pub fn new(formulas: Vec<Formula>) -> Self {
        let mut clauses = Vec::new();
        let mut general = Vec::new();
        let mut relevant = 0;
        for (i, f) in formulas.iter().enumerate() {
            match f.as_clause() {
                Some(c) if c.is_tautology() => {}
                Some(c) => {
                    relevant |= c.pos | c.neg;
                    clauses.push(c);
                }
                None => {
                    relevant |= f.vars();
                    general.push(i);
                }
            }
        }
        Theory {
            formulas,
            clauses,
            general,
            relevant,
        }
    }

    pub fn formulas(&self) -> &[Formula] {
        &self.formulas
    }

    /// Features some member depends on syntactically (tautological clauses
    /// excluded).
    pub fn relevant(&self) -> u32 {
        self.relevant
    }

    pub fn holds_bits(&self, bits: u32) -> bool {
        self.clauses.iter().all(|c| c.holds(bits))
            && self
                .general
                .iter()
                .all(|&i| self.formulas[i].eval_bits(bits))
    }

    pub fn satisfiable(&self, fixed: &PartialAssignment) -> bool {
        self.search(fixed.mask(), fixed.value_bits())
    }

    pub fn entails(&self, assumptions: &PartialAssignment, goal: Literal) -> bool {
        match assumptions.with(goal.negate()) {
            Ok(pa) => !self.satisfiable(&pa),
            // assumptions already contain the goal
            Err(_) => true,
        }
    }

    fn search(&self, mut mask: u32, mut values: u32) -> bool {
        loop {
            let mut changed = false;
            for c in &self.clauses {
                if values & mask & c.pos != 0 || !values & mask & c.neg != 0 {
                    continue;
                }
                let open = (c.pos | c.neg) & !mask;
                if open == 0 {
                    return false;
                }
                if open & (open - 1) == 0 {
                    mask |= open;
                    if c.pos & open != 0 {
                        values |= open;
                    }
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let pa = PartialAssignment::from_raw(mask, values);
        let mut settled = true;
        for &i in &self.general {
            match self.formulas[i].eval_partial(&pa) {
                Some(false) => return false,
                None => settled = false,
                Some(true) => {}
            }
        }
        if settled
            && self
                .clauses
                .iter()
                .all(|c| values & mask & c.pos != 0 || !values & mask & c.neg != 0)
        {
            return true;
        }
        let open = self.relevant & !mask;
        if open == 0 {
            // everything relevant is assigned and nothing failed
            return true;
        }
        let bit = 1 << open.trailing_zeros();
        self.search(mask | bit, values | bit) || self.search(mask | bit, values & !bit)
    }
}

/// `true` iff some total assignment extends `fixed` and satisfies every
/// formula of `fs`.
pub fn satisfiable(fs: &[Formula], fixed: &PartialAssignment) -> bool {
    Theory::new(fs.to_vec()).satisfiable(fixed)
}

/// `fs, assumptions |= goal`, i.e. `!satisfiable(fs, assumptions + !goal)`.
pub fn entails(fs: &[Formula], assumptions: &PartialAssignment, goal: Literal) -> bool {
    Theory::new(fs.to_vec()).entails(assumptions, goal)
}

pub fn evaluate(f: &Formula, x: &Individual) -> Result<bool> {
    f.evaluate(x)
}

pub fn is_independent(f: &Formula, v: FeatureId) -> bool {
    f.is_independent(v)
}
