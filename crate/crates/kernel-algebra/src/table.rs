//! Dense tabular distributions over finitely-valued named variables.
//!
//! A [`TabularDist`] stores a nonnegative function of finitely many named
//! columns in row-major order (first column slowest). Operations align
//! columns by *name*: multiplying two tables joins them on shared columns,
//! and comparisons broadcast columns one side lacks.

use std::collections::BTreeMap;

use graph_core::{VertexId, VertexSet};

use crate::error::KernelError;

/// A dense nonnegative table over named finite columns.
#[derive(Debug, Clone, PartialEq)]
pub struct TabularDist {
    /// Ordered columns: (name, cardinality). Row-major, first column slowest.
    vars: Vec<(VertexId, usize)>,
    probs: Vec<f64>,
}

/// Iterate all assignments of the given cardinalities as index vectors.
pub(crate) struct Assignments {
    cards: Vec<usize>,
    current: Vec<usize>,
    done: bool,
}

impl Assignments {
    pub(crate) fn new(cards: Vec<usize>) -> Self {
        let done = cards.iter().any(|&c| c == 0);
        let current = vec![0; cards.len()];
        Assignments {
            cards,
            current,
            done,
        }
    }
}

impl Iterator for Assignments {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        // Odometer increment, last column fastest.
        let mut i = self.cards.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            self.current[i] += 1;
            if self.current[i] < self.cards[i] {
                break;
            }
            self.current[i] = 0;
        }
        Some(out)
    }
}

impl TabularDist {
    /// Build a table, validating entry count and nonnegativity.
    pub fn new(vars: Vec<(VertexId, usize)>, probs: Vec<f64>) -> Result<Self, KernelError> {
        let mut seen = VertexSet::new();
        for (v, card) in &vars {
            if *card == 0 {
                return Err(KernelError::Table(format!("column {v} has cardinality 0")));
            }
            if !seen.insert(v.clone()) {
                return Err(KernelError::Table(format!("duplicate column {v}")));
            }
        }
        let expected: usize = vars.iter().map(|(_, c)| c).product();
        if probs.len() != expected {
            return Err(KernelError::Table(format!(
                "expected {expected} entries for {} columns, got {}",
                vars.len(),
                probs.len()
            )));
        }
        if let Some(p) = probs.iter().find(|p| !p.is_finite() || **p < 0.0) {
            return Err(KernelError::Table(format!("entry {p} is not a finite nonnegative number")));
        }
        Ok(TabularDist { vars, probs })
    }

    /// The scalar table (no columns, single entry).
    pub fn scalar(value: f64) -> Self {
        TabularDist {
            vars: Vec::new(),
            probs: vec![value],
        }
    }

    pub fn vars(&self) -> &[(VertexId, usize)] {
        &self.vars
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn column_set(&self) -> VertexSet {
        self.vars.iter().map(|(v, _)| v.clone()).collect()
    }

    pub fn card(&self, v: &VertexId) -> Option<usize> {
        self.vars.iter().find(|(u, _)| u == v).map(|(_, c)| *c)
    }

    fn position(&self, v: &VertexId) -> Option<usize> {
        self.vars.iter().position(|(u, _)| u == v)
    }

    fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1; self.vars.len()];
        for i in (0..self.vars.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * self.vars[i + 1].1;
        }
        strides
    }

    fn offset(&self, assignment: &[usize], strides: &[usize]) -> usize {
        assignment
            .iter()
            .zip(strides)
            .map(|(a, s)| a * s)
            .sum()
    }

    /// Value at a full assignment given in column order.
    pub fn at(&self, assignment: &[usize]) -> f64 {
        let strides = self.strides();
        self.probs[self.offset(assignment, &strides)]
    }

    /// Iterate (assignment, value) pairs in row-major order.
    pub fn iter_assignments(&self) -> impl Iterator<Item = (Vec<usize>, f64)> + '_ {
        let cards: Vec<usize> = self.vars.iter().map(|(_, c)| *c).collect();
        Assignments::new(cards)
            .enumerate()
            .map(move |(i, a)| (a, self.probs[i]))
    }

    /// Sum of all entries.
    pub fn total(&self) -> f64 {
        self.probs.iter().sum()
    }

    /// Multiply every entry by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        TabularDist {
            vars: self.vars.clone(),
            probs: self.probs.iter().map(|p| p * factor).collect(),
        }
    }

    /// Sum out the named columns (all must be present).
    pub fn marginalize_out(&self, sum_out: &VertexSet) -> Result<Self, KernelError> {
        for v in sum_out {
            if self.position(v).is_none() {
                return Err(KernelError::Table(format!(
                    "cannot sum out {v}: no such column"
                )));
            }
        }
        let kept: Vec<usize> = (0..self.vars.len())
            .filter(|&i| !sum_out.contains(&self.vars[i].0))
            .collect();
        let new_vars: Vec<(VertexId, usize)> = kept.iter().map(|&i| self.vars[i].clone()).collect();
        let new_len: usize = new_vars.iter().map(|(_, c)| c).product();
        let mut probs = vec![0.0; new_len];
        let new_strides = {
            let mut s = vec![1; new_vars.len()];
            for i in (0..new_vars.len().saturating_sub(1)).rev() {
                s[i] = s[i + 1] * new_vars[i + 1].1;
            }
            s
        };
        let cards: Vec<usize> = self.vars.iter().map(|(_, c)| *c).collect();
        for (i, assignment) in Assignments::new(cards).enumerate() {
            let mut off = 0;
            for (j, &src) in kept.iter().enumerate() {
                off += assignment[src] * new_strides[j];
            }
            probs[off] += self.probs[i];
        }
        Ok(TabularDist {
            vars: new_vars,
            probs,
        })
    }

    /// Fix a column to one level and drop it. Absent columns are an error.
    pub fn slice(&self, v: &VertexId, level: usize) -> Result<Self, KernelError> {
        let pos = self
            .position(v)
            .ok_or_else(|| KernelError::Table(format!("cannot slice {v}: no such column")))?;
        let card = self.vars[pos].1;
        if level >= card {
            return Err(KernelError::Table(format!(
                "level {level} out of range for {v} (cardinality {card})"
            )));
        }
        let new_vars: Vec<(VertexId, usize)> = self
            .vars
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != pos)
            .map(|(_, vc)| vc.clone())
            .collect();
        let new_len: usize = new_vars.iter().map(|(_, c)| c).product();
        let mut probs = Vec::with_capacity(new_len);
        let cards: Vec<usize> = self.vars.iter().map(|(_, c)| *c).collect();
        for (i, assignment) in Assignments::new(cards).enumerate() {
            if assignment[pos] == level {
                probs.push(self.probs[i]);
            }
        }
        Ok(TabularDist {
            vars: new_vars,
            probs,
        })
    }

    /// Reorder columns to the given order (a permutation of the current set).
    pub fn reordered(&self, order: &[VertexId]) -> Result<Self, KernelError> {
        if order.len() != self.vars.len() {
            return Err(KernelError::Table(
                "reorder must list every column exactly once".into(),
            ));
        }
        let mut perm = Vec::with_capacity(order.len());
        for v in order {
            perm.push(self.position(v).ok_or_else(|| {
                KernelError::Table(format!("cannot reorder: no column {v}"))
            })?);
        }
        let new_vars: Vec<(VertexId, usize)> = perm.iter().map(|&i| self.vars[i].clone()).collect();
        let new_cards: Vec<usize> = new_vars.iter().map(|(_, c)| *c).collect();
        let strides = self.strides();
        let mut probs = Vec::with_capacity(self.probs.len());
        for assignment in Assignments::new(new_cards) {
            let mut off = 0;
            for (j, &src) in perm.iter().enumerate() {
                off += assignment[j] * strides[src];
            }
            probs.push(self.probs[off]);
        }
        Ok(TabularDist {
            vars: new_vars,
            probs,
        })
    }

    /// Check that shared columns of two tables agree on cardinality.
    fn check_shared_cards(a: &TabularDist, b: &TabularDist) -> Result<(), KernelError> {
        for (v, ca) in &a.vars {
            if let Some(cb) = b.card(v) {
                if *ca != cb {
                    return Err(KernelError::CardinalityMismatch {
                        vertex: v.clone(),
                        left: *ca,
                        right: cb,
                    });
                }
            }
        }
        Ok(())
    }

    /// Columns of the union of two tables, sorted by name.
    fn union_vars(a: &TabularDist, b: &TabularDist) -> Vec<(VertexId, usize)> {
        let mut map: BTreeMap<VertexId, usize> = BTreeMap::new();
        for (v, c) in a.vars.iter().chain(b.vars.iter()) {
            map.insert(v.clone(), *c);
        }
        map.into_iter().collect()
    }

    /// Project a union assignment down to this table's columns and look up.
    fn at_projected(
        &self,
        union_vars: &[(VertexId, usize)],
        assignment: &[usize],
        strides: &[usize],
    ) -> f64 {
        let mut off = 0;
        for (pos, (v, _)) in self.vars.iter().enumerate() {
            let src = union_vars
                .iter()
                .position(|(u, _)| u == v)
                .expect("union contains every column");
            off += assignment[src] * strides[pos];
        }
        self.probs[off]
    }

    /// Pointwise product, joining on shared columns by name.
    pub fn multiply(a: &TabularDist, b: &TabularDist) -> Result<TabularDist, KernelError> {
        Self::check_shared_cards(a, b)?;
        let vars = Self::union_vars(a, b);
        let cards: Vec<usize> = vars.iter().map(|(_, c)| *c).collect();
        let sa = a.strides();
        let sb = b.strides();
        let mut probs = Vec::with_capacity(cards.iter().product());
        for assignment in Assignments::new(cards) {
            let va = a.at_projected(&vars, &assignment, &sa);
            let vb = b.at_projected(&vars, &assignment, &sb);
            probs.push(va * vb);
        }
        Ok(TabularDist { vars, probs })
    }

    /// Pointwise ratio, joining on shared columns by name.
    ///
    /// `0/0` evaluates to 0 and sets the returned flag; a nonzero numerator
    /// over a zero denominator is a positivity error naming the offending
    /// slice of the denominator's columns.
    pub fn divide(
        num: &TabularDist,
        den: &TabularDist,
    ) -> Result<(TabularDist, bool), KernelError> {
        Self::check_shared_cards(num, den)?;
        let vars = Self::union_vars(num, den);
        let cards: Vec<usize> = vars.iter().map(|(_, c)| *c).collect();
        let sn = num.strides();
        let sd = den.strides();
        let mut probs = Vec::with_capacity(cards.iter().product());
        let mut zero_over_zero = false;
        for assignment in Assignments::new(cards) {
            let vn = num.at_projected(&vars, &assignment, &sn);
            let vd = den.at_projected(&vars, &assignment, &sd);
            if vd == 0.0 {
                if vn == 0.0 {
                    zero_over_zero = true;
                    probs.push(0.0);
                } else {
                    let slice = den
                        .vars
                        .iter()
                        .map(|(v, _)| {
                            let src = vars.iter().position(|(u, _)| u == v).expect("union");
                            format!("{v}={}", assignment[src])
                        })
                        .collect::<Vec<_>>()
                        .join(", ");
                    return Err(KernelError::Positivity { slice });
                }
            } else {
                probs.push(vn / vd);
            }
        }
        Ok((TabularDist { vars, probs }, zero_over_zero))
    }

    /// Largest absolute deviation between two tables, broadcasting columns
    /// either side lacks.
    pub fn max_broadcast_deviation(
        a: &TabularDist,
        b: &TabularDist,
    ) -> Result<f64, KernelError> {
        Self::check_shared_cards(a, b)?;
        let vars = Self::union_vars(a, b);
        let cards: Vec<usize> = vars.iter().map(|(_, c)| *c).collect();
        let sa = a.strides();
        let sb = b.strides();
        let mut worst: f64 = 0.0;
        for assignment in Assignments::new(cards) {
            let va = a.at_projected(&vars, &assignment, &sa);
            let vb = b.at_projected(&vars, &assignment, &sb);
            worst = worst.max((va - vb).abs());
        }
        Ok(worst)
    }

    /// Largest deviation from 1 of the sum over `outcomes`, across all
    /// assignments of the remaining (context) columns.
    pub fn max_normalization_deviation(&self, outcomes: &VertexSet) -> Result<f64, KernelError> {
        let context_sums = self.marginalize_out(outcomes)?;
        let mut worst: f64 = 0.0;
        for p in &context_sums.probs {
            worst = worst.max((p - 1.0).abs());
        }
        Ok(worst)
    }
}
