//! Numerical invariants of a surface.

use serde::{Deserialize, Serialize};

use crate::cascade::{run_cascade, BasicType};
use crate::cycle::WeightedCycle;
use crate::error::{Error, Result};
use crate::fan::{barycenter, dual_barycenter, resolve, FanoTriangle, ResolvedFan};
use crate::lattice::{gcd, hj_eval, lcm, Rational, RationalPoint, SingularityType};
use crate::snf::invariant_factors;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceInvariants {
    pub n_rays: usize,
    #[serde(rename = "L")]
    pub exceptional_count: usize,
    pub trace: i64,
    pub k2: Rational,
    pub e_orb: Rational,
    pub brauer_order: i64,
    /// Full Smith normal form diagonal of the ray matrix.
    pub snf_diagonal: Vec<i64>,
    pub barycenter: RationalPoint,
    pub dual_barycenter: RationalPoint,
    pub gorenstein_index: i64,
    pub basic: BasicType,
    pub sing: Vec<SingularityType>,
}

/// Minus the sum of the exceptional self-intersections.
pub fn trace(c: &WeightedCycle) -> i64 {
    c.trace()
}

/// Solves the tridiagonal system of one exceptional chain `[b_1, ..., b_l]`:
/// `sum_i a_i (E_i . E_j) = b_j - 2` with `E_j^2 = -b_j`, `E_j . E_{j+1} = 1`.
fn chain_discrepancies(chain: &[i64]) -> Result<Vec<Rational>> {
    let l = chain.len();
    // Forward sweep of the Thomas algorithm.
    let mut diag = Vec::with_capacity(l);
    let mut rhs = Vec::with_capacity(l);
    for (j, &b) in chain.iter().enumerate() {
        let mut d = Rational::integer(-b);
        let mut r = Rational::integer(b - 2);
        if j > 0 {
            let factor = Rational::ONE.checked_div(diag[j - 1])?;
            d = d.checked_sub(factor)?;
            r = r.checked_sub(factor.checked_mul(rhs[j - 1])?)?;
        }
        if d.is_zero() {
            return Err(Error::SingularSystem);
        }
        diag.push(d);
        rhs.push(r);
    }
    let mut a = vec![Rational::ZERO; l];
    for j in (0..l).rev() {
        let mut r = rhs[j];
        if j + 1 < l {
            r = r.checked_sub(a[j + 1])?;
        }
        a[j] = r.checked_div(diag[j])?;
    }
    Ok(a)
}

/// Discrepancy of every exceptional vertex, indexed like the fan's rays
/// (`None` on the three marked rays).
pub fn discrepancies(f: &ResolvedFan) -> Result<Vec<Option<Rational>>> {
    let cycle = f.cycle();
    let n = cycle.len();
    let mut out = vec![None; n];
    for (start, chain) in cycle.exceptional_runs() {
        for (k, a) in chain_discrepancies(&chain)?.into_iter().enumerate() {
            out[(start + k) % n] = Some(a);
        }
    }
    Ok(out)
}

/// `K_S^2 = K_{S'}^2 - sum_j a_j (-2 - E_j^2)` with `K_{S'}^2 = 12 - n_rays`.
pub fn k_squared(f: &ResolvedFan) -> Result<Rational> {
    let mut k2 = Rational::integer(12 - f.len() as i64);
    for (a, &w) in discrepancies(f)?.iter().zip(&f.weights) {
        if let Some(a) = a {
            k2 = k2.checked_sub(a.checked_mul(Rational::integer(-2 - w))?)?;
        }
    }
    Ok(k2)
}

/// `3 - sum_p (1 - 1/r_p)` over the singular points.
pub fn e_orb(f: &ResolvedFan) -> Result<Rational> {
    let mut e = Rational::integer(3);
    for s in f.cycle().singular_chains() {
        let term = Rational::ONE.checked_sub(Rational::new(1, s.order())?)?;
        e = e.checked_sub(term)?;
    }
    Ok(e)
}

/// The barycenter criterion as applied to the Fano triangle itself.
pub fn is_ke_candidate(t: &FanoTriangle) -> bool {
    barycenter(t).is_origin()
}

/// Smith normal form diagonal of the 2x3 matrix of ray generators.
pub fn ray_matrix_snf(t: &FanoTriangle) -> Result<Vec<i64>> {
    let [a, b, c] = t.vertices();
    invariant_factors(&[vec![a.x, b.x, c.x], vec![a.y, b.y, c.y]])
}

/// Order of the cyclic group `N / N'`, `N'` spanned by the ray generators.
pub fn brauer_group(t: &FanoTriangle) -> Result<i64> {
    let d = ray_matrix_snf(t)?;
    match d.as_slice() {
        [1, k] => Ok(*k),
        other => Err(Error::InvalidTriangle(format!(
            "unexpected invariant factors {other:?}"
        ))),
    }
}

/// Least `l` with `lK` Cartier: lcm over singular points of `r / gcd(r, a + 1)`.
pub fn gorenstein_index(f: &ResolvedFan) -> Result<i64> {
    let mut index = 1;
    for (_, chain) in f.cycle().exceptional_runs() {
        let v = hj_eval(&chain)?;
        let (r, a) = (v.numerator(), v.denominator());
        index = lcm(index, r / gcd(r, a + 1))?;
    }
    Ok(index)
}

/// The trace predicted by the basic surface. For `P2` the tabulated value is `-3`
/// even though the empty exceptional sum is 0.
pub fn basic_trace_table(b: BasicType, exceptional_count: usize) -> i64 {
    let l3 = 3 * exceptional_count as i64;
    match b {
        BasicType::P2 => -3,
        BasicType::Std0(n) => n,
        BasicType::Std1(n) => l3 - 5 + n,
        BasicType::Std2(n) => l3 - 7 + n,
        BasicType::ThreeA2 => l3 - 6,
    }
}

/// Trace check against the table; `P2` is compared with the empty sum.
pub fn trace_matches_table(b: BasicType, c: &WeightedCycle) -> bool {
    match b {
        BasicType::P2 => c.trace() == 0,
        _ => c.trace() == basic_trace_table(b, c.exceptional_count()),
    }
}

pub fn surface_invariants(t: &FanoTriangle) -> Result<SurfaceInvariants> {
    let fan = resolve(t)?;
    let cycle = fan.cycle();
    let cascade = run_cascade(&cycle)?;
    let snf = ray_matrix_snf(t)?;
    Ok(SurfaceInvariants {
        n_rays: fan.len(),
        exceptional_count: cycle.exceptional_count(),
        trace: cycle.trace(),
        k2: k_squared(&fan)?,
        e_orb: e_orb(&fan)?,
        brauer_order: brauer_group(t)?,
        snf_diagonal: snf,
        barycenter: barycenter(t),
        dual_barycenter: dual_barycenter(t)?,
        gorenstein_index: gorenstein_index(&fan)?,
        basic: cascade.basic,
        sing: cycle.singular_chains(),
    })
}
