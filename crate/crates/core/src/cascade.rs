//! Blow-up/blow-down rewriting of weighted cycles and cascades to the five
//! basic surfaces.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

pub use crate::cycle::WeightedCycle;
use crate::error::{Error, Result};
use crate::fan::{canonical_form, realize, FanoTriangle};
use crate::lattice::hj_eval;

/// The five basic surfaces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasicType {
    P2,
    Std0(i64),
    Std1(i64),
    Std2(i64),
    ThreeA2,
}

impl BasicType {
    pub fn tag(&self) -> &'static str {
        match self {
            BasicType::P2 => "P2",
            BasicType::Std0(_) => "std0",
            BasicType::Std1(_) => "std1",
            BasicType::Std2(_) => "std2",
            BasicType::ThreeA2 => "3A2",
        }
    }

    pub fn n(&self) -> Option<i64> {
        match *self {
            BasicType::Std0(n) | BasicType::Std1(n) | BasicType::Std2(n) => Some(n),
            BasicType::P2 | BasicType::ThreeA2 => None,
        }
    }

    pub fn from_tag(tag: &str, n: Option<i64>) -> Result<BasicType> {
        let need_n = || match n {
            Some(n) if n >= 2 => Ok(n),
            _ => Err(Error::Parse(format!("basic type {tag} needs n >= 2"))),
        };
        match tag {
            "P2" => Ok(BasicType::P2),
            "std0" => Ok(BasicType::Std0(need_n()?)),
            "std1" => Ok(BasicType::Std1(need_n()?)),
            "std2" => Ok(BasicType::Std2(need_n()?)),
            "3A2" => Ok(BasicType::ThreeA2),
            other => Err(Error::Parse(format!("unknown basic type {other:?}"))),
        }
    }

    /// The basic dual graph.
    pub fn cycle(&self) -> WeightedCycle {
        let w = match *self {
            BasicType::P2 => vec![1, 1, 1],
            BasicType::Std0(n) => vec![0, -n, 0, n],
            BasicType::Std1(n) => vec![0, -n, -2, -1, -2, n - 1],
            BasicType::Std2(n) => vec![-2, -n, -2, -1, -2, n - 2, -2, -1],
            BasicType::ThreeA2 => vec![-1, -2, -2, -1, -2, -2, -1, -2, -2],
        };
        WeightedCycle::new(w).expect("basic graphs have length >= 3")
    }
}

impl fmt::Display for BasicType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.n() {
            Some(n) => write!(f, "{}({n})", self.tag()),
            None => f.write_str(self.tag()),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct BasicTypeRepr {
    #[serde(rename = "type")]
    tag: String,
    n: Option<i64>,
}

impl Serialize for BasicType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        BasicTypeRepr {
            tag: self.tag().to_string(),
            n: self.n(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BasicType {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = BasicTypeRepr::deserialize(d)?;
        BasicType::from_tag(&r.tag, r.n).map_err(serde::de::Error::custom)
    }
}

/// Removes the (-1)-vertex `i`, raising both neighbours by one.
pub fn blow_down(c: &WeightedCycle, i: usize) -> Result<WeightedCycle> {
    let n = c.len();
    if i >= n {
        return Err(Error::InvalidBlowDown(format!(
            "index {i} out of range for length {n}"
        )));
    }
    if c.get(i) != -1 {
        return Err(Error::InvalidBlowDown(format!(
            "vertex {i} has weight {}, not -1",
            c.get(i)
        )));
    }
    if n <= 3 {
        return Err(Error::InvalidBlowDown(
            "a cycle of length 3 cannot shrink".into(),
        ));
    }
    let mut w = c.weights().to_vec();
    w[c.prev_index(i)] += 1;
    w[c.next_index(i)] += 1;
    w.remove(i);
    WeightedCycle::new(w)
}

/// Blows up the point on edge `(i, i+1)`: inserts a (-1)-vertex at position `i+1`.
pub fn blow_up(c: &WeightedCycle, i: usize) -> Result<WeightedCycle> {
    let n = c.len();
    if i >= n {
        return Err(Error::InvalidCycle(format!(
            "edge {i} out of range for length {n}"
        )));
    }
    let mut w = c.weights().to_vec();
    w[i] -= 1;
    w[(i + 1) % n] -= 1;
    w.insert(i + 1, -1);
    WeightedCycle::new(w)
}

/// True iff every (-1)-vertex has both neighbours of weight `>= -2`.
pub fn is_basic(c: &WeightedCycle) -> bool {
    admissible_vertices(c).is_empty()
}

/// (-1)-vertices adjacent to a vertex of weight `<= -3`.
pub fn admissible_vertices(c: &WeightedCycle) -> Vec<usize> {
    (0..c.len())
        .filter(|&i| {
            c.get(i) == -1 && (c.get(c.prev_index(i)) <= -3 || c.get(c.next_index(i)) <= -3)
        })
        .collect()
}

/// Matches `c` against the five basic dual graphs up to rotation and reflection.
pub fn basic_type(c: &WeightedCycle) -> Result<BasicType> {
    let orientations = [c.clone(), c.reversed()];
    let candidates = orientations
        .iter()
        .flat_map(|o| (0..o.len()).map(move |k| o.rotated(k)));
    for r in candidates {
        let w = r.weights();
        let guess = match w.len() {
            3 => Some(BasicType::P2),
            4 if -w[1] >= 2 => Some(BasicType::Std0(-w[1])),
            6 if -w[1] >= 2 => Some(BasicType::Std1(-w[1])),
            8 if -w[1] >= 2 => Some(BasicType::Std2(-w[1])),
            9 => Some(BasicType::ThreeA2),
            _ => None,
        };
        if let Some(b) = guess {
            if b.cycle() == r {
                return Ok(b);
            }
        }
    }
    Err(Error::NotBasic)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StepOutcome {
    /// `index` refers to the canonical form of the input cycle.
    Stepped {
        cycle: WeightedCycle,
        index: usize,
    },
    AlreadyBasic,
}

/// Blows down `i` after checking that its other neighbour is a (-2)-vertex.
fn checked_blow_down(c: &WeightedCycle, i: usize) -> Result<WeightedCycle> {
    let (p, q) = (c.get(c.prev_index(i)), c.get(c.next_index(i)));
    let other = if p <= -3 { q } else { p };
    if other != -2 {
        return Err(Error::StructureViolation {
            index: i,
            detail: format!(
                "(-1)-vertex between {p} and {q} in {c}: expected the other neighbour to be -2"
            ),
        });
    }
    blow_down(c, i)
}

/// One blow-down of a (-1)-curve meeting a curve of self-intersection `<= -3`.
/// The lowest such vertex of the canonical rotation is chosen.
pub fn cascade_step(c: &WeightedCycle) -> Result<StepOutcome> {
    let canon = c.canonical();
    let Some(&i) = admissible_vertices(&canon).first() else {
        return Ok(StepOutcome::AlreadyBasic);
    };
    let next = checked_blow_down(&canon, i)?;
    Ok(StepOutcome::Stepped {
        cycle: next,
        index: i,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CascadeStep {
    pub step: usize,
    pub removed_index: usize,
    /// Canonical form of the cycle before the blow-down; `removed_index` points into it.
    pub cycle: WeightedCycle,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CascadeTrace {
    pub start: WeightedCycle,
    pub steps: Vec<CascadeStep>,
    pub end: WeightedCycle,
    pub basic: BasicType,
}

impl CascadeTrace {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

/// `(number of singular points, trace - 3L)`, both preserved by every cascade step.
pub fn cascade_invariants(c: &WeightedCycle) -> (usize, i64) {
    let runs = c.exceptional_runs().len();
    (runs, c.trace() - 3 * c.exceptional_count() as i64)
}

pub fn run_cascade(c: &WeightedCycle) -> Result<CascadeTrace> {
    c.validate()?;
    let start_inv = cascade_invariants(c);
    let mut current = c.clone();
    let mut steps = Vec::new();
    while let StepOutcome::Stepped { cycle, index } = cascade_step(&current)? {
        let inv = cascade_invariants(&cycle);
        if inv != start_inv {
            return Err(Error::StructureViolation {
                index,
                detail: format!(
                    "cascade invariants changed from {start_inv:?} to {inv:?} at {cycle}"
                ),
            });
        }
        steps.push(CascadeStep {
            step: steps.len(),
            removed_index: index,
            cycle: current.canonical(),
        });
        current = cycle;
    }
    let basic = basic_type(&current)?;
    Ok(CascadeTrace {
        start: c.clone(),
        steps,
        end: current,
        basic,
    })
}

/// Every basic type reachable by some sequence of admissible blow-downs.
pub fn reachable_basic_types(c: &WeightedCycle) -> Result<BTreeSet<BasicType>> {
    let mut memo = HashMap::new();
    explore(&c.canonical(), &mut memo)
}

fn explore(
    c: &WeightedCycle,
    memo: &mut HashMap<WeightedCycle, BTreeSet<BasicType>>,
) -> Result<BTreeSet<BasicType>> {
    if let Some(found) = memo.get(c) {
        return Ok(found.clone());
    }
    let choices = admissible_vertices(c);
    let result = if choices.is_empty() {
        BTreeSet::from([basic_type(c)?])
    } else {
        let mut acc = BTreeSet::new();
        for i in choices {
            let next = checked_blow_down(c, i)?.canonical();
            acc.extend(explore(&next, memo)?);
        }
        acc
    };
    memo.insert(c.clone(), result.clone());
    Ok(result)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FiberType {
    F0,
    I0,
    I,
    II0,
    II,
}

impl fmt::Display for FiberType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// `[[s1^2, F1, s2^2, F2]]`: two torus-invariant sections and the two
/// torus-invariant fibers between them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FibrationProfile {
    pub s1_weight: i64,
    pub fiber_a: FiberType,
    pub s2_weight: i64,
    pub fiber_b: FiberType,
}

impl fmt::Display for FibrationProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}, {}, {}]]",
            self.s1_weight, self.fiber_a, self.s2_weight, self.fiber_b
        )
    }
}

const I0_CHAIN: [i64; 3] = [-2, -1, -2];
const II0_CHAIN: [i64; 4] = [-1, -2, -2, -1];

/// Whether a linear chain can be blown down (any order of (-1)-curves) to exactly `target`.
fn contracts_to(chain: &[i64], target: &[i64]) -> bool {
    fn go(chain: Vec<i64>, target: &[i64], seen: &mut HashSet<Vec<i64>>) -> bool {
        if chain == target {
            return true;
        }
        if chain.len() <= target.len()
            || chain.iter().any(|&w| w >= 0)
            || !seen.insert(chain.clone())
        {
            return false;
        }
        (0..chain.len()).filter(|&k| chain[k] == -1).any(|k| {
            let mut next = chain.clone();
            if k > 0 {
                next[k - 1] += 1;
            }
            if k + 1 < next.len() {
                next[k + 1] += 1;
            }
            next.remove(k);
            go(next, target, seen)
        })
    }
    go(chain.to_vec(), target, &mut HashSet::new())
}

/// Every fiber blows down to a single 0-curve, so the negated chain evaluates to zero.
fn contracts_to_zero_curve(chain: &[i64]) -> bool {
    let negated: Vec<i64> = chain.iter().map(|w| -w).collect();
    hj_eval(&negated).is_ok_and(|v| v.is_zero())
}

/// Fiber type of a linear chain, or `None` if it is not a fiber of one of the five kinds.
pub fn fiber_type(chain: &[i64]) -> Option<FiberType> {
    if chain == [0] {
        Some(FiberType::F0)
    } else if chain == I0_CHAIN {
        Some(FiberType::I0)
    } else if chain == II0_CHAIN {
        Some(FiberType::II0)
    } else if !contracts_to_zero_curve(chain) {
        None
    } else if contracts_to(chain, &I0_CHAIN) {
        Some(FiberType::I)
    } else if contracts_to(chain, &II0_CHAIN) {
        Some(FiberType::II)
    } else {
        None
    }
}

fn fiber_family(f: FiberType) -> u8 {
    match f {
        FiberType::F0 => 0,
        FiberType::I0 | FiberType::I => 1,
        FiberType::II0 | FiberType::II => 2,
    }
}

type Shape = (u8, &'static [u8], Option<(i64, i64)>);

/// Theorem-level shape of the fibration for each basic type:
/// `(family of fiber_a, allowed families of fiber_b, expected (s1, s2) weights if fixed)`.
/// Over 3A2 the basic graph itself carries a type II fiber, its non-basic ascendants two of type I.
fn expected_shape(b: BasicType) -> Option<Shape> {
    match b {
        BasicType::P2 => None,
        BasicType::Std0(n) => Some((0, &[0], Some((-n, n)))),
        BasicType::Std1(n) => Some((1, &[0], Some((-n, n - 1)))),
        BasicType::Std2(n) => Some((1, &[1], Some((-n, n - 2)))),
        BasicType::ThreeA2 => Some((1, &[2, 1], None)),
    }
}

/// All section pairs of `c` whose two complementary arcs are fibers of a recognized type.
pub fn fibration_candidates(c: &WeightedCycle) -> Vec<FibrationProfile> {
    let n = c.len();
    let w = c.weights();
    let arc = |from: usize, to: usize| -> Vec<i64> {
        let mut out = Vec::new();
        let mut k = (from + 1) % n;
        while k != to {
            out.push(w[k]);
            k = (k + 1) % n;
        }
        out
    };
    let mut out = BTreeSet::new();
    for i in 0..n {
        for j in i + 2..n {
            if (j + 1) % n == i {
                continue;
            }
            let (Some(fa), Some(fb)) = (fiber_type(&arc(i, j)), fiber_type(&arc(j, i))) else {
                continue;
            };
            let (s1, s2) = (w[i].min(w[j]), w[i].max(w[j]));
            let (fa, fb) = if fiber_family(fa) <= fiber_family(fb) && fa != FiberType::F0
                || fb == FiberType::F0
            {
                (fa, fb)
            } else {
                (fb, fa)
            };
            out.insert(FibrationProfile {
                s1_weight: s1,
                fiber_a: fa,
                s2_weight: s2,
                fiber_b: fb,
            });
        }
    }
    out.into_iter().collect()
}

/// The P^1-fibration of the resolution whose shape matches basic type `b`.
pub fn fibration_profile(c: &WeightedCycle, b: BasicType) -> Result<FibrationProfile> {
    let (fa, fb, sections) = expected_shape(b).ok_or_else(|| Error::NoFibration(b.to_string()))?;
    let candidates = fibration_candidates(c);
    let shaped: Vec<FibrationProfile> = fb
        .iter()
        .flat_map(|&fb| {
            candidates
                .iter()
                .filter(move |p| fiber_family(p.fiber_a) == fa && fiber_family(p.fiber_b) == fb)
        })
        .copied()
        .collect();
    let preferred = shaped
        .iter()
        .find(|p| sections.is_none_or(|(s1, s2)| (p.s1_weight, p.s2_weight) == (s1, s2)))
        .or(shaped.first());
    preferred
        .copied()
        .ok_or_else(|| Error::NoFibration(format!("{c} with basic type {b}")))
}

/// Inverts the cascade from the basic 3A2 graph `n` times: each round blows up
/// the point where the first (-2)-curve of a fixed A2 chain meets its outer
/// (-1)-curve, then the point where the second one meets its outer (-1)-curve.
/// After round `k` the singularities are `2 A_{k+2} + [k+2, k+2]`.
pub fn brauer_family_cycle(n: usize) -> WeightedCycle {
    let mut c = BasicType::ThreeA2.cycle();
    // Positions in the growing vector: e1 - c1 - c2 - e2, with e1 = c1 - 1 and e2 = c2 + 1.
    let (mut c1, mut c2) = (1usize, 2usize);
    for _ in 0..n {
        c = blow_up(&c, c1 - 1).expect("edge in range");
        c1 += 1;
        c2 += 1;
        c = blow_up(&c, c2).expect("edge in range");
    }
    c
}

pub fn brauer_family(n: usize) -> Result<(WeightedCycle, FanoTriangle)> {
    let c = brauer_family_cycle(n);
    let t = canonical_form(&realize(&c)?.triangle()?)?;
    Ok((c, t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::SingularityType;

    fn cyc(w: &[i64]) -> WeightedCycle {
        WeightedCycle::new(w.to_vec()).unwrap()
    }

    #[test]
    fn blow_down_examples() {
        let c = cyc(&[0, -2, -2, -1, -2, 1]);
        assert_eq!(blow_down(&c, 3).unwrap(), cyc(&[0, -2, -1, -1, 1]));
        assert!(matches!(
            blow_down(&cyc(&[1, 1, 1]), 0),
            Err(Error::InvalidBlowDown(_))
        ));
        assert!(matches!(blow_down(&c, 0), Err(Error::InvalidBlowDown(_))));
        // I_0 contracts toward a smooth fiber.
        let i0 = cyc(&[-2, -1, -2, 0, 2, 0]);
        assert_eq!(blow_down(&i0, 1).unwrap(), cyc(&[-1, -1, 0, 2, 0]));
    }

    #[test]
    fn blow_up_examples() {
        let c = cyc(&[0, -2, -2, -1, -2, 1]);
        let up = blow_up(&c, 2).unwrap();
        assert_eq!(up, cyc(&[0, -2, -3, -1, -2, -2, 1]));
        assert_eq!(blow_down(&up, 3).unwrap(), c);
        let f1 = blow_up(&cyc(&[1, 1, 1]), 0).unwrap();
        assert!(f1.equivalent(&cyc(&[0, -1, 0, 1])));
        // Wrap-around edge.
        assert_eq!(blow_up(&cyc(&[1, 1, 1]), 2).unwrap(), cyc(&[0, 1, 0, -1]));
    }

    #[test]
    fn is_basic_examples() {
        assert!(is_basic(&BasicType::ThreeA2.cycle()));
        assert!(!is_basic(&cyc(&[0, -2, -3, -1, -2, -2, 1])));
        assert!(is_basic(&cyc(&[1, 1, 1])));
    }

    #[test]
    fn basic_type_examples() {
        assert_eq!(
            basic_type(&cyc(&[0, -5, 0, 5])).unwrap(),
            BasicType::Std0(5)
        );
        assert_eq!(
            basic_type(&cyc(&[-2, -4, -2, -1, -2, 2, -2, -1])).unwrap(),
            BasicType::Std2(4)
        );
        assert_eq!(basic_type(&cyc(&[0, -2, -1, -1, 1])), Err(Error::NotBasic));
        assert_eq!(
            basic_type(&cyc(&[-2, 1, 0, -2, -2, -1]).reversed()).unwrap(),
            BasicType::Std1(2)
        );
        for b in [
            BasicType::P2,
            BasicType::Std0(7),
            BasicType::Std1(3),
            BasicType::Std2(2),
            BasicType::ThreeA2,
        ] {
            let c = b.cycle();
            assert!(c.is_valid(), "{b}");
            assert!(is_basic(&c));
            assert_eq!(basic_type(&c.rotated(1).reversed()).unwrap(), b);
        }
    }

    #[test]
    fn cascade_step_examples() {
        let p135 = cyc(&[0, -2, -3, -1, -2, -2, 1]);
        let StepOutcome::Stepped { cycle, .. } = cascade_step(&p135).unwrap() else {
            panic!("expected a step");
        };
        assert!(cycle.equivalent(&cyc(&[0, -2, -2, -1, -2, 1])));
        assert_eq!(
            cascade_step(&BasicType::ThreeA2.cycle()).unwrap(),
            StepOutcome::AlreadyBasic
        );
    }

    #[test]
    fn cascade_step_rejects_structure_violations() {
        // (-1) between -3 and -1: not a minimal resolution of a Picard-one surface.
        let bad = cyc(&[-3, -1, -1, 0, 1]);
        assert!(matches!(
            cascade_step(&bad),
            Err(Error::StructureViolation { .. })
        ));
    }

    #[test]
    fn run_cascade_examples() {
        let t = run_cascade(&cyc(&[0, -2, -3, -1, -2, -2, 1])).unwrap();
        assert_eq!(t.basic, BasicType::Std1(2));
        assert_eq!(t.len(), 1);
        let t = run_cascade(&BasicType::Std2(7).cycle()).unwrap();
        assert_eq!((t.basic, t.len()), (BasicType::Std2(7), 0));
        let t = run_cascade(&brauer_family_cycle(1)).unwrap();
        assert_eq!((t.basic, t.len()), (BasicType::ThreeA2, 2));
        // Longer chain reduces stepwise, one vertex per step.
        let start = blow_up(&blow_up(&BasicType::Std1(3).cycle(), 2).unwrap(), 2).unwrap();
        let t = run_cascade(&start).unwrap();
        assert_eq!(t.basic, BasicType::Std1(3));
        for (k, s) in t.steps.iter().enumerate() {
            assert_eq!(s.cycle.len(), start.len() - k);
        }
    }

    #[test]
    fn singular_chain_examples() {
        let three = BasicType::ThreeA2.cycle().singular_chains();
        assert_eq!(three, vec![SingularityType::a(2); 3]);
        let p135 = cyc(&[0, -2, -3, -1, -2, -2, 1]).singular_chains();
        assert_eq!(
            p135.iter().map(|s| s.order()).collect::<Vec<_>>(),
            vec![3, 5]
        );
        assert_eq!(p135[1].chain().entries(), &[2, 3]);
        assert!(cyc(&[1, 1, 1]).singular_chains().is_empty());
    }

    #[test]
    fn fiber_types() {
        assert_eq!(fiber_type(&[0]), Some(FiberType::F0));
        assert_eq!(fiber_type(&[-2, -1, -2]), Some(FiberType::I0));
        assert_eq!(fiber_type(&[-3, -1, -2, -2]), Some(FiberType::I));
        assert_eq!(fiber_type(&[-1, -2, -2, -1]), Some(FiberType::II0));
        assert_eq!(fiber_type(&[-1, -2, -2, -2, -1]), Some(FiberType::II));
        assert_eq!(fiber_type(&[-1, -1]), None);
        assert_eq!(fiber_type(&[-2, -2]), None);
    }

    #[test]
    fn fibration_profile_examples() {
        let p = fibration_profile(&cyc(&[0, -2, -3, -1, -2, -2, 1]), BasicType::Std1(2)).unwrap();
        assert_eq!(p.to_string(), "[[-2, I, 1, F0]]");
        for n in 2..7 {
            let p = fibration_profile(&BasicType::Std2(n).cycle(), BasicType::Std2(n)).unwrap();
            let want = FibrationProfile {
                s1_weight: -n,
                fiber_a: FiberType::I0,
                s2_weight: n - 2,
                fiber_b: FiberType::I0,
            };
            assert_eq!(p, want);
        }
        let p = fibration_profile(&BasicType::ThreeA2.cycle(), BasicType::ThreeA2).unwrap();
        assert_eq!(p.to_string(), "[[-2, I0, -2, II0]]");
        let c = cyc(&[-1, -3, -2, -2, -1, -2, -3, -1, -2, -2, -3, -2]);
        assert_eq!(run_cascade(&c).unwrap().basic, BasicType::ThreeA2);
        let p = fibration_profile(&c, BasicType::ThreeA2).unwrap();
        assert_eq!((p.fiber_a, p.fiber_b), (FiberType::I0, FiberType::I));
        assert!(matches!(
            fibration_profile(&cyc(&[1, 1, 1]), BasicType::P2),
            Err(Error::NoFibration(_))
        ));
    }

    #[test]
    fn brauer_family_cycles() {
        assert_eq!(brauer_family_cycle(0), BasicType::ThreeA2.cycle());
        assert!(
            brauer_family_cycle(1).equivalent(&cyc(&[-2, -1, -3, -3, -1, -2, -2, -2, -1, -2, -2]))
        );
        for n in 0..8usize {
            let c = brauer_family_cycle(n);
            assert!(c.is_valid());
            let mut want = vec![
                SingularityType::a(n + 2),
                SingularityType::a(n + 2),
                SingularityType::new(crate::lattice::HJChain::new(vec![n as i64 + 2; 2]).unwrap())
                    .unwrap(),
            ];
            want.sort();
            assert_eq!(c.singular_chains(), want);
        }
    }

    #[test]
    fn reachable_types_of_a_blown_up_std1() {
        let start = blow_up(&blow_up(&BasicType::Std1(3).cycle(), 2).unwrap(), 2).unwrap();
        assert_eq!(
            reachable_basic_types(&start).unwrap(),
            BTreeSet::from([BasicType::Std1(3)])
        );
    }
}
