//! Existence and naming of surfaces with prescribed singularities.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cascade::{run_cascade, BasicType};
use crate::cycle::WeightedCycle;
use crate::error::Result;
use crate::fan::{canonical_form, realize, resolve, FanoTriangle};
use crate::invariants::brauer_group;
use crate::lattice::{gcd, hj_eval, Rational, SingularityType};

/// Weights of the positive primitive ray relation plus the index of the ray sublattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WpsName {
    pub weights: [i64; 3],
    pub quotient_order: i64,
}

impl WpsName {
    /// Weights in ascending order.
    pub fn sorted_weights(&self) -> [i64; 3] {
        let mut w = self.weights;
        w.sort_unstable();
        w
    }

    pub fn is_weighted_projective_plane(&self) -> bool {
        self.quotient_order == 1
    }
}

impl fmt::Display for WpsName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.sorted_weights();
        write!(f, "P({a},{b},{c})")?;
        if self.quotient_order != 1 {
            write!(f, "/Z{}", self.quotient_order)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Solution {
    pub triangle: FanoTriangle,
    pub cycle: WeightedCycle,
    pub basic: BasicType,
    pub name: Option<WpsName>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", content = "solutions", rename_all = "snake_case")]
pub enum ClassifyResult {
    NotExists,
    Exists(Vec<Solution>),
}

impl ClassifyResult {
    pub fn exists(&self) -> bool {
        matches!(self, ClassifyResult::Exists(_))
    }

    pub fn solutions(&self) -> &[Solution] {
        match self {
            ClassifyResult::NotExists => &[],
            ClassifyResult::Exists(s) => s,
        }
    }

    pub fn contains(&self, t: &FanoTriangle) -> bool {
        self.solutions().iter().any(|s| &s.triangle == t)
    }
}

/// `a v1 + b v2 + c v3 = 0` with `(a, b, c)` positive and coprime.
pub fn recognize_wps(t: &FanoTriangle) -> Result<WpsName> {
    let [v1, v2, v3] = t.vertices();
    let raw = [v2.try_det(&v3)?, v3.try_det(&v1)?, v1.try_det(&v2)?];
    let g = gcd(gcd(raw[0], raw[1]), raw[2]);
    Ok(WpsName {
        weights: raw.map(|w| w / g),
        quotient_order: brauer_group(t)?,
    })
}

/// `P(1, q, (n-1)q + q1)` for a chain split `[n] ++ A` with `A ++ [1] ++ second` evaluating
/// to zero. Here `q/q1` is the value of `second` read from its far end, away from the (-1)-curve.
pub fn two_point_name(n: i64, second: &[i64]) -> Result<[i64; 3]> {
    let far: Vec<i64> = second.iter().rev().copied().collect();
    let v = hj_eval(&far)?;
    let (q, q1) = (v.numerator(), v.denominator());
    Ok([1, q, (n - 1) * q + q1])
}

fn negated(chain: &[i64]) -> impl Iterator<Item = i64> + '_ {
    chain.iter().map(|&b| -b)
}

fn orientations(s: &SingularityType) -> Vec<Vec<i64>> {
    let fwd = s.chain().entries().to_vec();
    let rev = s.chain().reversed().entries().to_vec();
    if fwd == rev {
        vec![fwd]
    } else {
        vec![fwd, rev]
    }
}

/// Appends the marked weight fixing the sum rule, for a cycle missing one vertex.
fn close_with_sum_rule(mut weights: Vec<i64>, insert_at: usize) -> Option<WeightedCycle> {
    let n = weights.len() as i64 + 1;
    let m = 12 - 3 * n - weights.iter().sum::<i64>();
    weights.insert(insert_at, m);
    WeightedCycle::new(weights).ok()
}

fn sorted(mut v: Vec<SingularityType>) -> Vec<SingularityType> {
    v.sort();
    v
}

/// Accepts a candidate cycle if it is realizable and carries exactly the requested singularities.
fn accept(
    c: &WeightedCycle,
    want: &[SingularityType],
    found: &mut BTreeMap<FanoTriangle, WeightedCycle>,
) -> Result<()> {
    if !c.is_valid() || c.singular_chains() != want {
        return Ok(());
    }
    let Ok(fan) = realize(c) else {
        return Ok(());
    };
    let t = canonical_form(&fan.triangle()?)?;
    found.entry(t).or_insert_with(|| c.clone());
    Ok(())
}

fn two_point_candidates(s1: &SingularityType, s2: &SingularityType) -> Vec<WeightedCycle> {
    let mut out = Vec::new();
    for (a, b) in [(s1, s2), (s2, s1)] {
        for c1 in orientations(a) {
            let (n, tail) = (c1[0], &c1[1..]);
            if tail.is_empty() {
                continue;
            }
            for c2 in orientations(b) {
                let probe: Vec<i64> = tail
                    .iter()
                    .copied()
                    .chain([1])
                    .chain(c2.iter().copied())
                    .collect();
                if hj_eval(&probe).map(|v| v.is_zero()) != Ok(true) {
                    continue;
                }
                debug_assert!(n >= 2);
                let weights: Vec<i64> = negated(&c1)
                    .chain([-1])
                    .chain(negated(&c2))
                    .chain([0])
                    .collect();
                let at = weights.len() - 1;
                out.extend(close_with_sum_rule(weights, at));
            }
        }
    }
    out
}

fn permutations3<T: Clone>(v: &[T]) -> Vec<[T; 3]> {
    const ORDERS: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    ORDERS.iter().map(|o| o.map(|i| v[i].clone())).collect()
}

fn three_point_candidates(sing: &[SingularityType]) -> Vec<WeightedCycle> {
    let mut out = Vec::new();
    for [a, b, c] in permutations3(sing) {
        for c1 in orientations(&a) {
            for c2 in orientations(&b) {
                for c3 in orientations(&c) {
                    let three_a2: Vec<i64> = negated(&c1)
                        .chain([-1])
                        .chain(negated(&c2))
                        .chain([-1])
                        .chain(negated(&c3))
                        .chain([-1])
                        .collect();
                    out.extend(WeightedCycle::new(three_a2).ok());
                    let std2: Vec<i64> = negated(&c1)
                        .chain([-1])
                        .chain(negated(&c2))
                        .chain(negated(&c3))
                        .chain([-1])
                        .collect();
                    let at = c1.len() + 1 + c2.len();
                    if let Some(cand) = close_with_sum_rule(std2, at) {
                        if cand.get(at) >= 0 {
                            out.push(cand);
                        }
                    }
                }
            }
        }
    }
    out
}

/// Decides whether a surface with exactly the given singularities exists, returning
/// every inequivalent solution in canonical-triangle order.
pub fn classify(input: &[SingularityType]) -> Result<ClassifyResult> {
    let want = sorted(input.to_vec());
    let candidates = match want.as_slice() {
        [] => vec![BasicType::P2.cycle()],
        [s] => match s.chain().entries() {
            &[n] => vec![BasicType::Std0(n).cycle()],
            _ => vec![],
        },
        [s1, s2] => two_point_candidates(s1, s2),
        [_, _, _] => three_point_candidates(&want),
        _ => vec![],
    };
    let mut found = BTreeMap::new();
    for c in &candidates {
        accept(c, &want, &mut found)?;
    }
    if found.is_empty() {
        return Ok(ClassifyResult::NotExists);
    }
    let mut solutions = Vec::with_capacity(found.len());
    for (triangle, _) in found {
        let cycle = resolve(&triangle)?.cycle().canonical();
        let basic = run_cascade(&cycle)?.basic;
        let name = Some(recognize_wps(&triangle)?);
        solutions.push(Solution {
            triangle,
            cycle,
            basic,
            name,
        });
    }
    Ok(ClassifyResult::Exists(solutions))
}

/// The literal two-point test: order the fractions `n_i/m_i` decreasingly and accept iff
/// `m_1 = n_2` and `(n_1 - m_1)/m_1` is a positive integer. `None` unless there are two points.
pub fn literal_step4_verdict(input: &[SingularityType]) -> Option<bool> {
    let [a, b] = input else {
        return None;
    };
    let key = |s: &SingularityType| {
        let f: Rational = s.fraction();
        (f.numerator(), f.denominator())
    };
    let (mut first, mut second) = (key(a), key(b));
    if second > first {
        std::mem::swap(&mut first, &mut second);
    }
    let ((n1, m1), (n2, _)) = (first, second);
    Some(m1 == n2 && (n1 - m1) > 0 && (n1 - m1) % m1 == 0)
}
