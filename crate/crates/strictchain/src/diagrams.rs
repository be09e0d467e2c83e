//! Strict partitions and their shifted Young diagrams.
//!
//! Row `i` of the shifted diagram of `λ` (1-based) occupies columns
//! `i..i+λ_i-1`, so the boxes of row `i` carry contents `0..λ_i-1`.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::par::Exec;

/// A partition with strictly decreasing positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct StrictPartition {
    parts: Vec<usize>,
}

impl TryFrom<Vec<usize>> for StrictPartition {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        StrictPartition::new(parts)
    }
}

impl From<StrictPartition> for Vec<usize> {
    fn from(p: StrictPartition) -> Self {
        p.parts
    }
}

impl fmt::Display for StrictPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

impl StrictPartition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.iter().any(|&p| p == 0) {
            return domain(format!("zero part in {parts:?}"));
        }
        if parts.windows(2).any(|w| w[0] <= w[1]) {
            return domain(format!("parts not strictly decreasing: {parts:?}"));
        }
        Ok(StrictPartition { parts })
    }

    pub fn empty() -> Self {
        StrictPartition { parts: Vec::new() }
    }

    /// Panics on invalid input; meant for literals in tests and examples.
    pub fn from_parts(parts: &[usize]) -> Self {
        Self::new(parts.to_vec()).expect("invalid strict partition literal")
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `μ ⊆ λ` as shifted diagrams.
    pub fn is_contained_in(&self, other: &StrictPartition) -> bool {
        self.len() <= other.len() && self.parts.iter().zip(&other.parts).all(|(a, b)| a <= b)
    }

    /// Contents `j - i` of all boxes, row by row.
    pub fn contents(&self) -> impl Iterator<Item = i64> + '_ {
        self.parts.iter().flat_map(|&p| 0..p as i64)
    }

    /// Contents of the boxes that can be added. `X(∅) = {0}`.
    pub fn addable_contents(&self) -> Vec<i64> {
        let mut xs = Vec::new();
        match self.parts.last() {
            None => xs.push(0),
            Some(&last) if last >= 2 => xs.push(0),
            _ => {}
        }
        for i in (0..self.parts.len()).rev() {
            if i == 0 || self.parts[i - 1] > self.parts[i] + 1 {
                xs.push(self.parts[i] as i64);
            }
        }
        xs
    }

    /// Contents of the boxes that can be removed. `Y(∅) = ∅`.
    pub fn removable_contents(&self) -> Vec<i64> {
        let l = self.parts.len();
        (0..l)
            .rev()
            .filter(|&i| i + 1 == l || self.parts[i] - 1 > self.parts[i + 1])
            .map(|i| self.parts[i] as i64 - 1)
            .collect()
    }

    /// `λ + □(x)`.
    pub fn add_box(&self, x: i64) -> Result<StrictPartition> {
        if !self.addable_contents().contains(&x) {
            return domain(format!("content {x} is not addable to {self}"));
        }
        let mut parts = self.parts.clone();
        if x == 0 {
            parts.push(1);
        } else {
            let i = parts.iter().position(|&p| p as i64 == x).expect("addable row");
            parts[i] += 1;
        }
        Ok(StrictPartition { parts })
    }

    /// `λ - □(y)`.
    pub fn remove_box(&self, y: i64) -> Result<StrictPartition> {
        if !self.removable_contents().contains(&y) {
            return domain(format!("content {y} is not removable from {self}"));
        }
        let mut parts = self.parts.clone();
        let i = parts.iter().position(|&p| p as i64 - 1 == y).expect("removable row");
        parts[i] -= 1;
        if parts[i] == 0 {
            parts.pop();
        }
        Ok(StrictPartition { parts })
    }

    /// Diagrams reachable by adding one box, paired with the added content.
    pub fn up_neighbors(&self) -> Vec<(i64, StrictPartition)> {
        self.addable_contents().into_iter().map(|x| (x, self.add_box(x).expect("addable"))).collect()
    }

    /// Diagrams reachable by removing one box, paired with the removed content.
    pub fn down_neighbors(&self) -> Vec<(i64, StrictPartition)> {
        self.removable_contents().into_iter().map(|y| (y, self.remove_box(y).expect("removable"))).collect()
    }

    pub fn kerov_coordinates(&self) -> KerovCoordinates {
        KerovCoordinates { x: self.addable_contents(), y: self.removable_contents() }
    }

    /// Modified Frobenius coordinates of the doubled ordinary diagram.
    pub fn double(&self) -> FrobeniusDouble {
        FrobeniusDouble {
            a2: self.parts.iter().map(|&p| 2 * p as i64 + 1).collect(),
            b2: self.parts.iter().map(|&p| 2 * p as i64 - 1).collect(),
        }
    }
}

/// Which of the two interlacing patterns a diagram follows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Interlacing {
    /// `0 = y₁ < x₁ < y₂ < … < y_d < x_d`: the diagram has a one-box row.
    OneBoxRow,
    /// `0 = x₀ < y₁ < x₁ < … < y_d < x_d`.
    NoOneBoxRow,
}

/// Addable contents `X` and removable contents `Y`, both ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct KerovCoordinates {
    #[serde(rename = "X")]
    pub x: Vec<i64>,
    #[serde(rename = "Y")]
    pub y: Vec<i64>,
}

impl KerovCoordinates {
    /// `X' = X \ {0}`.
    pub fn x_prime(&self) -> Vec<i64> {
        self.x.iter().copied().filter(|&x| x != 0).collect()
    }

    /// Checks the interlacing inequalities and reports the pattern.
    pub fn interlacing(&self) -> Result<Interlacing> {
        let strictly_up = |v: &[i64]| v.windows(2).all(|w| w[0] < w[1]);
        if !strictly_up(&self.x) || !strictly_up(&self.y) {
            return domain("Kerov coordinates must be strictly ascending");
        }
        let xp = self.x_prime();
        if xp.len() != self.y.len() {
            return domain(format!("|X'| = {} differs from |Y| = {}", xp.len(), self.y.len()));
        }
        let pattern = match (self.x.first(), self.y.first()) {
            (Some(0), y0) if y0 != Some(&0) => Interlacing::NoOneBoxRow,
            (x0, Some(0)) if x0 != Some(&0) => Interlacing::OneBoxRow,
            _ => return domain("exactly one of X, Y must contain 0"),
        };
        if let Interlacing::NoOneBoxRow = pattern {
            if self.y.first().is_some_and(|&y| y <= 0) {
                return domain("removable contents must be positive when 0 is addable");
            }
        }
        let mut merged = Vec::with_capacity(2 * xp.len());
        for (y, x) in self.y.iter().zip(&xp) {
            merged.push(*y);
            merged.push(*x);
        }
        if !strictly_up(&merged) {
            return domain(format!("X' = {xp:?} and Y = {:?} do not interlace", self.y));
        }
        Ok(pattern)
    }

    /// Rebuilds the diagram: parts are the runs `x_j, x_j - 1, …, y_j + 1`, largest run first.
    pub fn to_partition(&self) -> Result<StrictPartition> {
        self.interlacing()?;
        let xp = self.x_prime();
        let mut parts = Vec::new();
        for (x, y) in xp.iter().zip(&self.y).rev() {
            parts.extend((y + 1..=*x).rev().map(|p| p as usize));
        }
        let lambda = StrictPartition::new(parts)?;
        if lambda.kerov_coordinates() != *self {
            return domain(format!("{self:?} are not the coordinates of any diagram"));
        }
        Ok(lambda)
    }
}

pub fn from_kerov(k: &KerovCoordinates) -> Result<StrictPartition> {
    k.to_partition()
}

/// Frobenius coordinates `(a | b)` of the double, stored as twice their half-integer values.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FrobeniusDouble {
    pub a2: Vec<i64>,
    pub b2: Vec<i64>,
}

impl FrobeniusDouble {
    /// Weight of the doubled diagram, `Σ(a_i + b_i)`.
    pub fn weight(&self) -> i64 {
        (self.a2.iter().sum::<i64>() + self.b2.iter().sum::<i64>()) / 2
    }
}

impl fmt::Display for FrobeniusDouble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let half = |v: &[i64]| v.iter().map(|x| format!("{x}/2")).collect::<Vec<_>>().join(", ");
        if self.a2.is_empty() {
            write!(f, "(∅|∅)")
        } else {
            write!(f, "({} | {})", half(&self.a2), half(&self.b2))
        }
    }
}

/// Edge multiplicity κ(μ, λ) of the Schur graph.
pub fn edge_multiplicity(mu: &StrictPartition, lambda: &StrictPartition) -> u32 {
    if lambda.weight() != mu.weight() + 1 || !mu.is_contained_in(lambda) {
        return 0;
    }
    if lambda.len() == mu.len() {
        2
    } else {
        1
    }
}

fn extend_strict(n: usize, max_part: usize, prefix: &mut Vec<usize>, out: &mut Vec<StrictPartition>) {
    if n == 0 {
        out.push(StrictPartition { parts: prefix.clone() });
        return;
    }
    for first in (1..=n.min(max_part)).rev() {
        // the remaining n - first must fit into distinct parts below `first`
        if n - first > first * (first - 1) / 2 {
            break;
        }
        prefix.push(first);
        extend_strict(n - first, first - 1, prefix, out);
        prefix.pop();
    }
}

/// All strict partitions of `n`, lexicographically decreasing.
pub fn enumerate_strict(n: usize) -> Vec<StrictPartition> {
    let mut out = Vec::new();
    extend_strict(n, n, &mut Vec::new(), &mut out);
    out
}

/// Levels `0..=m`, one vector per weight, built in parallel by weight.
pub fn enumerate_strict_upto(m: usize, exec: Exec) -> Vec<Vec<StrictPartition>> {
    exec.map_range(0..m + 1, enumerate_strict)
}

/// Number of strict partitions of `n` via the product `Π(1 + tᵏ)`.
pub fn count_strict(n: usize) -> u64 {
    let mut c = vec![0u64; n + 1];
    c[0] = 1;
    for k in 1..=n {
        for w in (k..=n).rev() {
            c[w] += c[w - k];
        }
    }
    c[n]
}

/// The diagrams of one weight with an index lookup.
#[derive(Debug, Clone)]
pub struct Level {
    pub n: usize,
    pub states: Vec<StrictPartition>,
    index: HashMap<StrictPartition, usize>,
}

impl Level {
    pub fn new(n: usize) -> Self {
        Self::from_states(n, enumerate_strict(n))
    }

    pub fn shared(n: usize) -> Arc<Self> {
        Arc::new(Self::new(n))
    }

    fn from_states(n: usize, states: Vec<StrictPartition>) -> Self {
        let index = states.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        Level { n, states, index }
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn index_of(&self, lambda: &StrictPartition) -> Option<usize> {
        self.index.get(lambda).copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(p: &[usize]) -> StrictPartition {
        StrictPartition::from_parts(p)
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(enumerate_strict(0), vec![StrictPartition::empty()]);
        assert_eq!(enumerate_strict(3), vec![sp(&[3]), sp(&[2, 1])]);
        assert_eq!(enumerate_strict(9).len(), 8);
        let sizes: Vec<usize> = (0..=10).map(|n| enumerate_strict(n).len()).collect();
        assert_eq!(sizes, vec![1, 1, 1, 2, 2, 3, 4, 5, 6, 8, 10]);
        assert_eq!(enumerate_strict(20).len(), 64);
    }

    #[test]
    fn enumeration_matches_subset_oracle() {
        // strict partitions of n are subsets of {1..n} summing to n
        for n in 0..=16usize {
            let mut oracle: Vec<Vec<usize>> = Vec::new();
            for mask in 0u32..(1 << n) {
                let set: Vec<usize> = (1..=n).rev().filter(|k| mask >> (k - 1) & 1 == 1).collect();
                if set.iter().sum::<usize>() == n {
                    oracle.push(set);
                }
            }
            oracle.sort_by(|a, b| b.cmp(a));
            let got: Vec<Vec<usize>> = enumerate_strict(n).into_iter().map(Vec::from).collect();
            assert_eq!(got, oracle, "n = {n}");
            assert_eq!(count_strict(n), oracle.len() as u64);
        }
    }

    #[test]
    fn kerov_examples() {
        let k = sp(&[6, 5, 1]).kerov_coordinates();
        assert_eq!(k.x, vec![1, 6]);
        assert_eq!(k.y, vec![0, 4]);
        assert_eq!(sp(&[6, 5, 3]).removable_contents(), vec![2, 4]);
        assert_eq!(sp(&[6, 5, 3]).addable_contents(), vec![0, 3, 6]);
        assert_eq!(sp(&[2]).addable_contents(), vec![0, 2]);
        assert_eq!(sp(&[2, 1]).removable_contents(), vec![0]);
        assert_eq!(StrictPartition::empty().addable_contents(), vec![0]);
        assert!(StrictPartition::empty().removable_contents().is_empty());
        let rebuilt = from_kerov(&KerovCoordinates { x: vec![1, 6], y: vec![0, 4] }).unwrap();
        assert_eq!(rebuilt, sp(&[6, 5, 1]));
        assert_eq!(from_kerov(&KerovCoordinates { x: vec![0], y: vec![] }).unwrap(), StrictPartition::empty());
    }

    #[test]
    fn from_kerov_rejects_bad_input() {
        assert!(from_kerov(&KerovCoordinates { x: vec![2], y: vec![1] }).is_err());
        assert!(from_kerov(&KerovCoordinates { x: vec![0, 1], y: vec![2] }).is_err());
        assert!(from_kerov(&KerovCoordinates { x: vec![0, 3], y: vec![0] }).is_err());
        assert!(from_kerov(&KerovCoordinates { x: vec![6, 1], y: vec![0, 4] }).is_err());
    }

    #[test]
    fn box_moves() {
        assert_eq!(sp(&[2]).add_box(2).unwrap(), sp(&[3]));
        assert_eq!(sp(&[2]).add_box(0).unwrap(), sp(&[2, 1]));
        let err = sp(&[1]).add_box(0).unwrap_err();
        assert!(err.to_string().contains("content 0"));
        assert_eq!(sp(&[3]).remove_box(2).unwrap(), sp(&[2]));
        assert_eq!(sp(&[2, 1]).remove_box(0).unwrap(), sp(&[2]));
        assert!(sp(&[2, 1]).remove_box(1).is_err());
        assert!(StrictPartition::empty().remove_box(0).is_err());
    }

    #[test]
    fn multiplicities() {
        assert_eq!(edge_multiplicity(&sp(&[2]), &sp(&[3])), 2);
        assert_eq!(edge_multiplicity(&sp(&[2]), &sp(&[2, 1])), 1);
        assert_eq!(edge_multiplicity(&sp(&[2]), &sp(&[4])), 0);
        assert_eq!(edge_multiplicity(&StrictPartition::empty(), &sp(&[1])), 1);
        assert_eq!(edge_multiplicity(&sp(&[3]), &sp(&[2, 1])), 0);
    }

    #[test]
    fn doubles() {
        let d = StrictPartition::empty().double();
        assert!(d.a2.is_empty() && d.b2.is_empty());
        assert_eq!(sp(&[2]).double(), FrobeniusDouble { a2: vec![5], b2: vec![3] });
        let d = sp(&[3, 1]).double();
        assert_eq!(d, FrobeniusDouble { a2: vec![7, 3], b2: vec![5, 1] });
        assert_eq!(d.to_string(), "(7/2, 3/2 | 5/2, 1/2)");
        assert_eq!(d.weight(), 8);
    }

    #[test]
    fn serialization() {
        let p = sp(&[6, 5, 1]);
        assert_eq!(serde_json::to_string(&p).unwrap(), "[6,5,1]");
        assert_eq!(serde_json::from_str::<StrictPartition>("[6,5,1]").unwrap(), p);
        assert!(serde_json::from_str::<StrictPartition>("[1,1]").is_err());
        let k = serde_json::to_string(&p.kerov_coordinates()).unwrap();
        assert_eq!(k, r#"{"X":[1,6],"Y":[0,4]}"#);
    }
}
