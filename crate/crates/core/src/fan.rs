//! Fano triangles, their minimal resolutions, and lattice-equivalence normal forms.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cycle::WeightedCycle;
use crate::error::{Error, NotRealizableReason, Result};
use crate::lattice::{
    cone_resolution_rays, parse_int_list, split_top_level, ConeType, LatticeVector, Rational,
    RationalPoint, UnimodularMap,
};

/// Three primitive lattice vectors in counterclockwise order with the origin
/// strictly inside their convex hull.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "[[i64; 2]; 3]", into = "[[i64; 2]; 3]")]
pub struct FanoTriangle {
    vertices: [LatticeVector; 3],
}

impl FanoTriangle {
    /// Accepts the vertices in either orientation; stores them counterclockwise.
    pub fn new(a: LatticeVector, b: LatticeVector, c: LatticeVector) -> Result<FanoTriangle> {
        for v in [a, b, c] {
            if !v.is_primitive() {
                return Err(Error::NonPrimitive(v.x, v.y));
            }
        }
        let dets = [a.try_det(&b)?, b.try_det(&c)?, c.try_det(&a)?];
        let vertices = if dets.iter().all(|&d| d > 0) {
            [a, b, c]
        } else if dets.iter().all(|&d| d < 0) {
            [a, c, b]
        } else {
            return Err(Error::InvalidTriangle(format!(
                "origin is not strictly inside {a}, {b}, {c}"
            )));
        };
        Ok(FanoTriangle { vertices })
    }

    pub fn from_coords(coords: [[i64; 2]; 3]) -> Result<FanoTriangle> {
        let [a, b, c] = coords.map(|[x, y]| LatticeVector::new(x, y));
        FanoTriangle::new(a, b, c)
    }

    pub fn vertices(&self) -> [LatticeVector; 3] {
        self.vertices
    }

    pub fn coords(&self) -> [[i64; 2]; 3] {
        self.vertices.map(|v| [v.x, v.y])
    }

    /// Determinants of the three cones, `det(v1,v2), det(v2,v3), det(v3,v1)`.
    pub fn cone_dets(&self) -> [i64; 3] {
        let [a, b, c] = self.vertices;
        [a.det(&b), b.det(&c), c.det(&a)]
    }

    pub fn transformed(&self, m: &UnimodularMap) -> Result<FanoTriangle> {
        let [a, b, c] = self.vertices;
        FanoTriangle::new(m.apply(a)?, m.apply(b)?, m.apply(c)?)
    }

    pub fn cones(&self) -> [(LatticeVector, LatticeVector); 3] {
        let [a, b, c] = self.vertices;
        [(a, b), (b, c), (c, a)]
    }

    pub fn cone_types(&self) -> Result<[ConeType; 3]> {
        let [(a, b), (c, d), (e, f)] = self.cones();
        Ok([
            crate::lattice::cone_singularity(a, b)?,
            crate::lattice::cone_singularity(c, d)?,
            crate::lattice::cone_singularity(e, f)?,
        ])
    }
}

impl TryFrom<[[i64; 2]; 3]> for FanoTriangle {
    type Error = Error;
    fn try_from(c: [[i64; 2]; 3]) -> Result<FanoTriangle> {
        FanoTriangle::from_coords(c)
    }
}

impl From<FanoTriangle> for [[i64; 2]; 3] {
    fn from(t: FanoTriangle) -> Self {
        t.coords()
    }
}

impl fmt::Display for FanoTriangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.vertices;
        write!(f, "[{a},{b},{c}]")
    }
}

impl FromStr for FanoTriangle {
    type Err = Error;

    /// `[[x1,y1],[x2,y2],[x3,y3]]`
    fn from_str(s: &str) -> Result<FanoTriangle> {
        let s = s.trim();
        let inner = s
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("expected [[x,y],[x,y],[x,y]], got {s:?}")))?;
        let parts = split_top_level(inner);
        if parts.len() != 3 {
            return Err(Error::Parse(format!(
                "expected three vertices, got {}",
                parts.len()
            )));
        }
        let mut coords = [[0i64; 2]; 3];
        for (slot, part) in coords.iter_mut().zip(&parts) {
            let xy = parse_int_list(part)?;
            *slot = xy
                .try_into()
                .map_err(|_| Error::Parse(format!("vertex {part:?} needs two coordinates")))?;
        }
        FanoTriangle::from_coords(coords)
    }
}

/// Smooth complete fan of the minimal resolution.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolvedFan {
    pub rays: Vec<LatticeVector>,
    pub weights: Vec<i64>,
    /// True for the three rays of the triangle.
    pub marked: Vec<bool>,
}

impl ResolvedFan {
    pub fn len(&self) -> usize {
        self.rays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rays.is_empty()
    }

    pub fn cycle(&self) -> WeightedCycle {
        WeightedCycle::new(self.weights.clone()).expect("a complete fan has at least three rays")
    }

    /// The marked rays as a triangle.
    pub fn triangle(&self) -> Result<FanoTriangle> {
        let marked: Vec<LatticeVector> = self
            .rays
            .iter()
            .zip(&self.marked)
            .filter_map(|(r, &m)| m.then_some(*r))
            .collect();
        match marked.as_slice() {
            &[a, b, c] => FanoTriangle::new(a, b, c),
            other => Err(Error::InvalidTriangle(format!(
                "{} marked rays",
                other.len()
            ))),
        }
    }

    /// Checks every structural invariant; returns the first violation.
    pub fn check_invariants(&self) -> Result<()> {
        let n = self.rays.len();
        let fail = |m: String| Err(Error::InvalidCycle(m));
        if n < 3 || self.weights.len() != n || self.marked.len() != n {
            return fail(format!(
                "inconsistent lengths {n}/{}/{}",
                self.weights.len(),
                self.marked.len()
            ));
        }
        for i in 0..n {
            let (prev, cur, next) = (
                self.rays[(i + n - 1) % n],
                self.rays[i],
                self.rays[(i + 1) % n],
            );
            if cur.try_det(&next)? != 1 {
                return fail(format!("rays {i},{} are not a lattice basis", (i + 1) % n));
            }
            let lhs = prev.checked_add(&next)?;
            let rhs = cur.checked_scale(-self.weights[i])?;
            if lhs != rhs {
                return fail(format!("wall relation fails at ray {i}"));
            }
            let w = self.weights[i];
            if self.marked[i] && w < -1 || !self.marked[i] && w > -2 {
                return fail(format!(
                    "ray {i} has weight {w} inconsistent with its marking"
                ));
            }
        }
        if self.marked.iter().filter(|&&m| m).count() != 3 {
            return fail("expected exactly 3 marked rays".into());
        }
        if winding_number(&self.rays) != 1 {
            return fail("rays do not wind once around the origin".into());
        }
        let cycle = self.cycle();
        if !cycle.satisfies_sum_rule() {
            return fail(format!(
                "weight sum {} != {}",
                cycle.sum(),
                cycle.expected_sum()
            ));
        }
        Ok(())
    }
}

/// Minimal resolution of the toric surface of `t`.
pub fn resolve(t: &FanoTriangle) -> Result<ResolvedFan> {
    let mut rays = Vec::new();
    let mut marked = Vec::new();
    for (u, w) in t.cones() {
        rays.push(u);
        marked.push(true);
        let inner = cone_resolution_rays(u, w)?;
        marked.extend(std::iter::repeat_n(false, inner.len()));
        rays.extend(inner);
    }
    let n = rays.len();
    // Consecutive rays form a basis, so prev + next = c * cur with c = det(prev, next).
    let weights = (0..n)
        .map(|i| {
            rays[(i + n - 1) % n]
                .try_det(&rays[(i + 1) % n])
                .map(|d| -d)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ResolvedFan {
        rays,
        weights,
        marked,
    })
}

pub fn cycle_of(t: &FanoTriangle) -> Result<WeightedCycle> {
    Ok(resolve(t)?.cycle())
}

fn above(p: &LatticeVector) -> bool {
    p.y > 0 || (p.y == 0 && p.x > 0)
}

/// Number of counterclockwise crossings of the positive x-axis along the cyclic ray sequence.
/// Each step must turn by less than a half-turn.
fn winding_number(rays: &[LatticeVector]) -> usize {
    let n = rays.len();
    (0..n)
        .filter(|&i| !above(&rays[i]) && above(&rays[(i + 1) % n]))
        .count()
}

/// Rebuilds the fan of a weighted cycle from the seed rays `(1,0), (0,1)`.
pub fn realize(c: &WeightedCycle) -> Result<ResolvedFan> {
    let w = c.weights();
    let n = w.len();
    let mut rays = Vec::with_capacity(n + 2);
    rays.push(LatticeVector::new(1, 0));
    rays.push(LatticeVector::new(0, 1));
    for i in 1..=n {
        let next = rays[i]
            .checked_scale(-w[i % n])?
            .checked_add(&-rays[i - 1])?;
        rays.push(next);
    }
    if rays[n] != rays[0] || rays[n + 1] != rays[1] {
        return Err(Error::NotRealizable(NotRealizableReason::NoClosure));
    }
    rays.truncate(n);
    if winding_number(&rays) != 1 {
        return Err(Error::NotRealizable(NotRealizableReason::WrongWinding));
    }
    if c.marked_count() != 3 {
        return Err(Error::NotRealizable(NotRealizableReason::WrongMarkedCount));
    }
    let marked = w.iter().map(|&x| x >= -1).collect();
    Ok(ResolvedFan {
        rays,
        weights: w.to_vec(),
        marked,
    })
}

fn lex_min_rotation(v: [LatticeVector; 3]) -> [LatticeVector; 3] {
    let rots = [v, [v[1], v[2], v[0]], [v[2], v[0], v[1]]];
    rots.into_iter().min().expect("three rotations")
}

/// Normal form under GL(2,Z): two triangles get the same output iff they are lattice equivalent.
pub fn canonical_form(t: &FanoTriangle) -> Result<FanoTriangle> {
    let fan = resolve(t)?;
    let n = fan.rays.len();
    let verts = t.vertices();
    let mut best: Option<[LatticeVector; 3]> = None;
    for i in 0..n {
        let (a, b) = (fan.rays[i], fan.rays[(i + 1) % n]);
        let m = UnimodularMap::to_standard_basis(a, b)?;
        let img = [m.apply(verts[0])?, m.apply(verts[1])?, m.apply(verts[2])?];
        // The orientation-reversing choice sends b to (1,0) and a to (0,1): swap coordinates,
        // then reverse the vertex order to stay counterclockwise.
        let swapped = img.map(|p| LatticeVector::new(p.y, p.x));
        let candidates = [img, [swapped[2], swapped[1], swapped[0]]];
        for cand in candidates {
            let cand = lex_min_rotation(cand);
            if best.is_none_or(|b| cand < b) {
                best = Some(cand);
            }
        }
    }
    let [a, b, c] = best.expect("a fan has at least three rays");
    FanoTriangle::new(a, b, c)
}

/// Vertex average `(v1 + v2 + v3) / 3`, which for a triangle is also its area centroid.
pub fn barycenter(t: &FanoTriangle) -> RationalPoint {
    let [a, b, c] = t.vertices();
    let third = |s: i64| Rational::new(s, 3).expect("nonzero denominator");
    RationalPoint {
        x: third(a.x + b.x + c.x),
        y: third(a.y + b.y + c.y),
    }
}

/// Vertices of the dual polygon `{y : <y, v_i> >= -1}`, counterclockwise.
pub fn dual_vertices(t: &FanoTriangle) -> Result<[RationalPoint; 3]> {
    let solve = |u: LatticeVector, w: LatticeVector| -> Result<RationalPoint> {
        // <y,u> = -1 and <y,w> = -1.
        let d = u.try_det(&w)?;
        Ok(RationalPoint {
            x: Rational::new(u.y - w.y, d)?,
            y: Rational::new(w.x - u.x, d)?,
        })
    };
    let [(a, b), (c, d), (e, f)] = t.cones();
    Ok([solve(a, b)?, solve(c, d)?, solve(e, f)?])
}

/// Area-weighted centroid of the dual polygon via the shoelace decomposition.
pub fn dual_barycenter(t: &FanoTriangle) -> Result<RationalPoint> {
    let p = dual_vertices(t)?;
    let mut area2 = Rational::ZERO;
    let mut cx = Rational::ZERO;
    let mut cy = Rational::ZERO;
    for i in 0..3 {
        let (a, b) = (p[i], p[(i + 1) % 3]);
        let cross = a.x.checked_mul(b.y)?.checked_sub(b.x.checked_mul(a.y)?)?;
        area2 = area2.checked_add(cross)?;
        cx = cx.checked_add(a.x.checked_add(b.x)?.checked_mul(cross)?)?;
        cy = cy.checked_add(a.y.checked_add(b.y)?.checked_mul(cross)?)?;
    }
    let denom = area2.checked_mul(Rational::integer(3))?;
    Ok(RationalPoint {
        x: cx.checked_div(denom)?,
        y: cy.checked_div(denom)?,
    })
}

/// Twice the area of the dual polygon (its normalized area).
pub fn dual_area2(t: &FanoTriangle) -> Result<Rational> {
    let p = dual_vertices(t)?;
    let mut area2 = Rational::ZERO;
    for i in 0..3 {
        let (a, b) = (p[i], p[(i + 1) % 3]);
        area2 = area2.checked_add(a.x.checked_mul(b.y)?.checked_sub(b.x.checked_mul(a.y)?)?)?;
    }
    Ok(area2.abs())
}
