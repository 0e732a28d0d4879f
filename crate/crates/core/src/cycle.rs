use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{parse_int_list, write_list, HJChain, SingularityType};

/// Cyclic sequence of self-intersection numbers: the dual graph of the
/// torus-invariant curves on a smooth complete toric surface.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct WeightedCycle(Vec<i64>);

impl WeightedCycle {
    pub fn new(weights: Vec<i64>) -> Result<WeightedCycle> {
        if weights.len() < 3 {
            return Err(Error::InvalidCycle(format!("length {} < 3", weights.len())));
        }
        Ok(WeightedCycle(weights))
    }

    pub fn weights(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> i64 {
        self.0[i % self.0.len()]
    }

    pub fn prev_index(&self, i: usize) -> usize {
        (i + self.0.len() - 1) % self.0.len()
    }

    pub fn next_index(&self, i: usize) -> usize {
        (i + 1) % self.0.len()
    }

    pub fn sum(&self) -> i64 {
        self.0.iter().sum()
    }

    /// `12 - 3n`, the weight sum of a smooth complete toric surface with `n` rays.
    pub fn expected_sum(&self) -> i64 {
        12 - 3 * self.0.len() as i64
    }

    pub fn satisfies_sum_rule(&self) -> bool {
        self.sum() == self.expected_sum()
    }

    /// Vertices of weight `>= -1`; on a valid cycle these are the triangle's rays.
    pub fn marked_count(&self) -> usize {
        self.0.iter().filter(|&&w| w >= -1).count()
    }

    /// Sum rule and exactly three marked vertices.
    pub fn is_valid(&self) -> bool {
        self.satisfies_sum_rule() && self.marked_count() == 3
    }

    pub fn validate(&self) -> Result<()> {
        if !self.satisfies_sum_rule() {
            return Err(Error::InvalidCycle(format!(
                "{self}: weight sum {} != 12 - 3*{} = {}",
                self.sum(),
                self.len(),
                self.expected_sum()
            )));
        }
        if self.marked_count() != 3 {
            return Err(Error::InvalidCycle(format!(
                "{self}: {} vertices of weight >= -1, expected 3",
                self.marked_count()
            )));
        }
        Ok(())
    }

    pub fn rotated(&self, k: usize) -> WeightedCycle {
        let mut w = self.0.clone();
        w.rotate_left(k % self.0.len());
        WeightedCycle(w)
    }

    pub fn reversed(&self) -> WeightedCycle {
        WeightedCycle(self.0.iter().rev().copied().collect())
    }

    /// Lexicographic minimum over all rotations of both orientations.
    pub fn canonical(&self) -> WeightedCycle {
        self.canonical_with_map().0
    }

    /// Canonical form plus the map from canonical positions to positions of `self`.
    pub fn canonical_with_map(&self) -> (WeightedCycle, Vec<usize>) {
        let n = self.0.len();
        let mut best: Option<(Vec<i64>, bool, usize)> = None;
        for reflect in [false, true] {
            for start in 0..n {
                let idx = |k: usize| {
                    if reflect {
                        (start + n - k) % n
                    } else {
                        (start + k) % n
                    }
                };
                let better = match &best {
                    None => true,
                    Some((b, _, _)) => (0..n).map(|k| self.0[idx(k)]).lt(b.iter().copied()),
                };
                if better {
                    best = Some(((0..n).map(|k| self.0[idx(k)]).collect(), reflect, start));
                }
            }
        }
        let (weights, reflect, start) = best.expect("cycle is nonempty");
        let map = (0..n)
            .map(|k| {
                if reflect {
                    (start + n - k) % n
                } else {
                    (start + k) % n
                }
            })
            .collect();
        (WeightedCycle(weights), map)
    }

    /// Equality up to rotation and reflection.
    pub fn equivalent(&self, other: &WeightedCycle) -> bool {
        self.len() == other.len() && self.canonical() == other.canonical()
    }

    /// Number of exceptional curves (weight `<= -2`).
    pub fn exceptional_count(&self) -> usize {
        self.0.iter().filter(|&&w| w <= -2).count()
    }

    /// Maximal cyclic runs of weights `<= -2`, each as `(start index, negated chain)`.
    pub fn exceptional_runs(&self) -> Vec<(usize, Vec<i64>)> {
        let n = self.0.len();
        let Some(anchor) = (0..n).find(|&i| self.0[i] > -2) else {
            return vec![(0, self.0.iter().map(|w| -w).collect())];
        };
        let mut runs = Vec::new();
        let mut current: Option<(usize, Vec<i64>)> = None;
        for k in 1..=n {
            let i = (anchor + k) % n;
            let w = self.0[i];
            if w <= -2 {
                current.get_or_insert_with(|| (i, Vec::new())).1.push(-w);
            } else if let Some(run) = current.take() {
                runs.push(run);
            }
        }
        runs
    }

    /// Canonical singularity types of the maximal exceptional runs.
    pub fn singular_chains(&self) -> Vec<SingularityType> {
        let mut out: Vec<SingularityType> = self
            .exceptional_runs()
            .into_iter()
            .map(|(_, chain)| {
                SingularityType::new(HJChain::new(chain).expect("runs have entries >= 2"))
                    .expect("chains with entries >= 2 evaluate")
            })
            .collect();
        out.sort();
        out
    }

    /// Minus the sum of the exceptional weights.
    pub fn trace(&self) -> i64 {
        -self.0.iter().filter(|&&w| w <= -2).sum::<i64>()
    }
}

impl TryFrom<Vec<i64>> for WeightedCycle {
    type Error = Error;
    fn try_from(v: Vec<i64>) -> Result<WeightedCycle> {
        WeightedCycle::new(v)
    }
}

impl From<WeightedCycle> for Vec<i64> {
    fn from(c: WeightedCycle) -> Vec<i64> {
        c.0
    }
}

impl fmt::Display for WeightedCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_list(f, &self.0)
    }
}

impl FromStr for WeightedCycle {
    type Err = Error;
    fn from_str(s: &str) -> Result<WeightedCycle> {
        WeightedCycle::new(parse_int_list(s)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(w: &[i64]) -> WeightedCycle {
        WeightedCycle::new(w.to_vec()).unwrap()
    }

    #[test]
    fn canonical_is_rotation_and_reflection_invariant() {
        let a = c(&[0, -2, -2, -1, -2, 1]);
        let b = c(&[1, -2, -1, -2, -2, 0]);
        assert!(a.equivalent(&b));
        assert_eq!(a.canonical().weights(), &[-2, -2, -1, -2, 1, 0]);
        let (canon, map) = a.canonical_with_map();
        for (k, &i) in map.iter().enumerate() {
            assert_eq!(canon.weights()[k], a.weights()[i]);
        }
    }

    #[test]
    fn runs_wrap_around() {
        let g = c(&[-2, -1, -3, -3, -1, -2, -2, -2, -1, -2, -2]);
        let runs = g.exceptional_runs();
        assert_eq!(runs.len(), 3);
        assert!(runs.contains(&(9, vec![2, 2, 2])));
        let sing = g.singular_chains();
        assert_eq!(sing, {
            let mut v = vec![
                SingularityType::a(3),
                SingularityType::a(3),
                "[3,3]".parse().unwrap(),
            ];
            v.sort();
            v
        });
        assert_eq!(g.trace(), 18);
        assert_eq!(g.exceptional_count(), 8);
    }

    #[test]
    fn validity() {
        assert!(c(&[1, 1, 1]).is_valid());
        assert!(c(&[0, -3, 0, 3]).is_valid());
        assert!(!c(&[0, -2, -2, -2, -2, 1]).is_valid());
        assert!(!c(&[-1, -1, -1, -1, -1, -1]).is_valid());
        assert!(WeightedCycle::new(vec![1, 1]).is_err());
        assert_eq!(
            "[0, -3, 0, 3]".parse::<WeightedCycle>().unwrap(),
            c(&[0, -3, 0, 3])
        );
    }
}
