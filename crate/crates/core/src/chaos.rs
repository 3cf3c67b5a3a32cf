//! Chaotic iterations over a boolean cell system.
//!
//! At step `k` only the cell named by the `k`-th strategy term is updated,
//! receiving its own component of `f(x)`. Indices are 0-based; a 1-based
//! index `i` from the literature corresponds to term `i - 1` here.

use crate::error::{Error, Result};

/// Fixed-size boolean cell vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SystemState {
    cells: Vec<bool>,
}

impl SystemState {
    pub fn new(cells: Vec<bool>) -> Self {
        Self { cells }
    }

    pub fn zeros(size: usize) -> Self {
        Self {
            cells: vec![false; size],
        }
    }

    pub fn size(&self) -> usize {
        self.cells.len()
    }

    pub fn get(&self, i: usize) -> bool {
        self.cells[i]
    }

    pub fn cells(&self) -> &[bool] {
        &self.cells
    }

    pub fn into_cells(self) -> Vec<bool> {
        self.cells
    }

    pub fn count_ones(&self) -> usize {
        self.cells.iter().filter(|c| **c).count()
    }

    /// Number of cells where `self` and `other` differ.
    pub fn hamming(&self, other: &SystemState) -> usize {
        self.cells
            .iter()
            .zip(&other.cells)
            .filter(|(a, b)| a != b)
            .count()
    }
}

impl std::fmt::Display for SystemState {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for c in &self.cells {
            f.write_str(if *c { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// A finite, materialized strategy: a sequence of cell indices in `[0, domain)`.
///
/// Long strategies are normally consumed as iterators straight from the
/// key stream; this type is for the cases that need random access or the
/// shift/initial view.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Strategy {
    terms: Vec<usize>,
    domain: usize,
}

impl Strategy {
    pub fn new(terms: Vec<usize>, domain: usize) -> Result<Self> {
        if let Some((step, &term)) = terms.iter().enumerate().find(|(_, t)| **t >= domain) {
            return Err(Error::TermOutOfRange {
                step,
                term,
                size: domain,
            });
        }
        Ok(Self { terms, domain })
    }

    pub fn terms(&self) -> &[usize] {
        &self.terms
    }

    pub fn domain(&self) -> usize {
        self.domain
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Drops the first term.
    pub fn shift(&self) -> Result<Strategy> {
        if self.terms.is_empty() {
            return Err(Error::EmptyStrategy);
        }
        Ok(Strategy {
            terms: self.terms[1..].to_vec(),
            domain: self.domain,
        })
    }

    pub fn initial(&self) -> Result<usize> {
        self.terms.first().copied().ok_or(Error::EmptyStrategy)
    }
}

/// Iterate function `f: B^M -> B^M`.
///
/// Chaotic iterations only ever need one component of `f(x)` per step, so
/// implementations that can compute a single component cheaply should
/// override [`IterateFn::component`].
pub trait IterateFn {
    fn apply(&self, x: &SystemState) -> SystemState;

    fn component(&self, x: &SystemState, i: usize) -> bool {
        self.apply(x).get(i)
    }
}

/// Vectorial boolean negation.
#[derive(Debug, Clone, Copy, Default)]
pub struct Negation;

impl IterateFn for Negation {
    fn apply(&self, x: &SystemState) -> SystemState {
        negation(x)
    }

    fn component(&self, x: &SystemState, i: usize) -> bool {
        !x.get(i)
    }
}

impl<F> IterateFn for F
where
    F: Fn(&SystemState) -> SystemState,
{
    fn apply(&self, x: &SystemState) -> SystemState {
        self(x)
    }
}

pub fn negation(x: &SystemState) -> SystemState {
    SystemState {
        cells: x.cells.iter().map(|c| !c).collect(),
    }
}

/// Runs `steps` chaotic iterations of `f` from `x0`, driven by `strategy`.
pub fn iterate<S, F>(x0: &SystemState, strategy: S, f: &F, steps: usize) -> Result<SystemState>
where
    S: IntoIterator<Item = usize>,
    F: IterateFn + ?Sized,
{
    let mut x = x0.clone();
    iterate_in_place(&mut x, strategy, f, steps)?;
    Ok(x)
}

pub(crate) fn iterate_in_place<S, F>(
    x: &mut SystemState,
    strategy: S,
    f: &F,
    steps: usize,
) -> Result<()>
where
    S: IntoIterator<Item = usize>,
    F: IterateFn + ?Sized,
{
    let size = x.size();
    let mut terms = strategy.into_iter();
    for step in 0..steps {
        let term = terms.next().ok_or(Error::StrategyExhausted(step))?;
        if term >= size {
            return Err(Error::TermOutOfRange { step, term, size });
        }
        let value = f.component(x, term);
        x.cells[term] = value;
    }
    Ok(())
}

/// Checks that a general iterate function preserves the state size.
pub fn checked_apply<F: IterateFn + ?Sized>(f: &F, x: &SystemState) -> Result<SystemState> {
    let y = f.apply(x);
    if y.size() != x.size() {
        return Err(Error::DimensionMismatch {
            expected: x.size(),
            actual: y.size(),
        });
    }
    Ok(y)
}

/// [`iterate`] for arbitrary functions, validating the output dimension of
/// `f` at each step.
pub fn iterate_checked<S, F>(
    x0: &SystemState,
    strategy: S,
    f: &F,
    steps: usize,
) -> Result<SystemState>
where
    S: IntoIterator<Item = usize>,
    F: IterateFn + ?Sized,
{
    let size = x0.size();
    let mut x = x0.clone();
    let mut terms = strategy.into_iter();
    for step in 0..steps {
        let term = terms.next().ok_or(Error::StrategyExhausted(step))?;
        if term >= size {
            return Err(Error::TermOutOfRange { step, term, size });
        }
        let y = checked_apply(f, &x)?;
        x.cells[term] = y.get(term);
    }
    Ok(x)
}
