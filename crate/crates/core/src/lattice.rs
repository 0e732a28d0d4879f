//! Exact lattice primitives: vectors, rationals, unimodular maps and
//! Hirzebruch-Jung continued fractions.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Neg;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a as i64
}

pub fn lcm(a: i64, b: i64) -> Result<i64> {
    if a == 0 || b == 0 {
        return Ok(0);
    }
    (a / gcd(a, b))
        .checked_mul(b)
        .map(i64::abs)
        .ok_or(Error::Overflow("lcm"))
}

/// Returns `(g, s, t)` with `s*a + t*b = g = gcd(a, b) >= 0`.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut old_r, mut r) = (a as i128, b as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (old_r, old_s, old_t) = (-old_r, -old_s, -old_t);
    }
    (old_r as i64, old_s as i64, old_t as i64)
}

fn narrow(v: i128, what: &'static str) -> Result<i64> {
    i64::try_from(v).map_err(|_| Error::Overflow(what))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticeVector {
    pub x: i64,
    pub y: i64,
}

impl LatticeVector {
    pub const fn new(x: i64, y: i64) -> Self {
        LatticeVector { x, y }
    }

    pub fn is_zero(&self) -> bool {
        self.x == 0 && self.y == 0
    }

    pub fn is_primitive(&self) -> bool {
        gcd(self.x, self.y) == 1
    }

    /// Determinant of the 2x2 matrix with columns `self`, `other`.
    pub fn det(&self, other: &LatticeVector) -> i64 {
        self.try_det(other).expect("determinant overflow")
    }

    pub fn try_det(&self, other: &LatticeVector) -> Result<i64> {
        let d = self.x as i128 * other.y as i128 - self.y as i128 * other.x as i128;
        narrow(d, "determinant")
    }

    pub fn checked_add(&self, other: &LatticeVector) -> Result<LatticeVector> {
        Ok(LatticeVector {
            x: self
                .x
                .checked_add(other.x)
                .ok_or(Error::Overflow("vector add"))?,
            y: self
                .y
                .checked_add(other.y)
                .ok_or(Error::Overflow("vector add"))?,
        })
    }

    pub fn checked_scale(&self, k: i64) -> Result<LatticeVector> {
        Ok(LatticeVector {
            x: self
                .x
                .checked_mul(k)
                .ok_or(Error::Overflow("vector scale"))?,
            y: self
                .y
                .checked_mul(k)
                .ok_or(Error::Overflow("vector scale"))?,
        })
    }

    /// Some `e` with `det(self, e) = 1`. Requires a primitive vector.
    pub fn complement(&self) -> Result<LatticeVector> {
        let (g, s, t) = ext_gcd(self.x, self.y);
        if g != 1 {
            return Err(Error::NonPrimitive(self.x, self.y));
        }
        // x*s + y*t = 1, and det((x, y), (-t, s)) = x*s + y*t.
        Ok(LatticeVector::new(-t, s))
    }
}

impl Neg for LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> LatticeVector {
        LatticeVector::new(-self.x, -self.y)
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.x, self.y)
    }
}

/// A reduced fraction with positive denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rational {
    num: i64,
    den: i64,
}

impl Rational {
    pub const ZERO: Rational = Rational { num: 0, den: 1 };
    pub const ONE: Rational = Rational { num: 1, den: 1 };

    pub fn new(num: i64, den: i64) -> Result<Rational> {
        Self::from_wide(num as i128, den as i128)
    }

    pub const fn integer(n: i64) -> Rational {
        Rational { num: n, den: 1 }
    }

    fn from_wide(num: i128, den: i128) -> Result<Rational> {
        if den == 0 {
            return Err(Error::ZeroDenominator);
        }
        let g = gcd128(num, den);
        let (mut num, mut den) = (num / g, den / g);
        if den < 0 {
            num = -num;
            den = -den;
        }
        Ok(Rational {
            num: narrow(num, "rational")?,
            den: narrow(den, "rational")?,
        })
    }

    pub fn numerator(&self) -> i64 {
        self.num
    }

    pub fn denominator(&self) -> i64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    pub fn abs(self) -> Rational {
        Rational {
            num: self.num.abs(),
            den: self.den,
        }
    }

    pub fn checked_add(self, o: Rational) -> Result<Rational> {
        Self::from_wide(
            self.num as i128 * o.den as i128 + o.num as i128 * self.den as i128,
            self.den as i128 * o.den as i128,
        )
    }

    pub fn checked_sub(self, o: Rational) -> Result<Rational> {
        self.checked_add(-o)
    }

    pub fn checked_mul(self, o: Rational) -> Result<Rational> {
        Self::from_wide(
            self.num as i128 * o.num as i128,
            self.den as i128 * o.den as i128,
        )
    }

    pub fn checked_div(self, o: Rational) -> Result<Rational> {
        Self::from_wide(
            self.num as i128 * o.den as i128,
            self.den as i128 * o.num as i128,
        )
    }
}

fn gcd128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    if a == 0 {
        1
    } else {
        a as i128
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational {
            num: -self.num,
            den: self.den,
        }
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::integer(n)
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as i128 * other.den as i128).cmp(&(other.num as i128 * self.den as i128))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Rational> {
        let bad = || Error::Parse(format!("bad rational {s:?}"));
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                let n = n.trim().parse::<i64>().map_err(|_| bad())?;
                let d = d.trim().parse::<i64>().map_err(|_| bad())?;
                Rational::new(n, d)
            }
            None => Ok(Rational::integer(s.parse::<i64>().map_err(|_| bad())?)),
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Exact rational point in the plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RationalPoint {
    pub x: Rational,
    pub y: Rational,
}

impl RationalPoint {
    pub const ORIGIN: RationalPoint = RationalPoint {
        x: Rational::ZERO,
        y: Rational::ZERO,
    };

    pub fn is_origin(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Integer matrix `(a b; c d)` with determinant +-1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct UnimodularMap {
    a: i64,
    b: i64,
    c: i64,
    d: i64,
}

impl UnimodularMap {
    pub const IDENTITY: UnimodularMap = UnimodularMap {
        a: 1,
        b: 0,
        c: 0,
        d: 1,
    };

    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<UnimodularMap> {
        let det = a as i128 * d as i128 - b as i128 * c as i128;
        if det.abs() != 1 {
            return Err(Error::NotUnimodular(
                narrow(det, "determinant").unwrap_or(i64::MAX),
            ));
        }
        Ok(UnimodularMap { a, b, c, d })
    }

    /// The map sending `p` to `(1, 0)` and `q` to `(0, 1)`; needs `det(p, q) = +-1`.
    pub fn to_standard_basis(p: LatticeVector, q: LatticeVector) -> Result<UnimodularMap> {
        let det = p.try_det(&q)?;
        if det.abs() != 1 {
            return Err(Error::NotUnimodular(det));
        }
        // Inverse of the matrix with columns p, q.
        UnimodularMap::new(q.y * det, -q.x * det, -p.y * det, p.x * det)
    }

    pub fn det(&self) -> i64 {
        self.a * self.d - self.b * self.c
    }

    pub fn entries(&self) -> [i64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn apply(&self, v: LatticeVector) -> Result<LatticeVector> {
        let x = self.a as i128 * v.x as i128 + self.b as i128 * v.y as i128;
        let y = self.c as i128 * v.x as i128 + self.d as i128 * v.y as i128;
        Ok(LatticeVector::new(
            narrow(x, "map apply")?,
            narrow(y, "map apply")?,
        ))
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &UnimodularMap) -> Result<UnimodularMap> {
        let m = |x: i64, y: i64, z: i64, w: i64| {
            narrow(x as i128 * y as i128 + z as i128 * w as i128, "map compose")
        };
        UnimodularMap::new(
            m(self.a, other.a, self.b, other.c)?,
            m(self.a, other.b, self.b, other.d)?,
            m(self.c, other.a, self.d, other.c)?,
            m(self.c, other.b, self.d, other.d)?,
        )
    }

    pub fn inverse(&self) -> UnimodularMap {
        let det = self.det();
        UnimodularMap {
            a: self.d * det,
            b: -self.b * det,
            c: -self.c * det,
            d: self.a * det,
        }
    }
}

/// Evaluates `[n_1, ..., n_l] = n_1 - 1/(n_2 - 1/(... - 1/n_l))`.
///
/// Entries may be arbitrary integers. Evaluation runs right to left on the
/// projective line, so a vanishing tail turns the next level into infinity
/// and `1/inf = 0`; only an infinite final value is an error.
pub fn hj_eval(entries: &[i64]) -> Result<Rational> {
    let (num, den) = hj_eval_projective(entries)?;
    if den == 0 {
        return Err(Error::NotEvaluable);
    }
    Rational::new(num, den)
}

/// Projective value `(num : den)` of a continued fraction; `den = 0` is infinity.
fn hj_eval_projective(entries: &[i64]) -> Result<(i64, i64)> {
    let (&last, rest) = entries
        .split_last()
        .ok_or_else(|| Error::InvalidChain("empty chain".into()))?;
    let (mut num, mut den) = (last, 1i64);
    for &n in rest.iter().rev() {
        let next = (n as i128 * num as i128 - den as i128, num);
        num = narrow(next.0, "continued fraction")?;
        den = next.1;
    }
    Ok((num, den))
}

/// A chain of integers, each at least 2. Empty chains are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct HJChain(Vec<i64>);

impl HJChain {
    pub fn new(entries: Vec<i64>) -> Result<HJChain> {
        if let Some(bad) = entries.iter().find(|&&e| e < 2) {
            return Err(Error::InvalidChain(format!(
                "entry {bad} < 2 in {entries:?}"
            )));
        }
        Ok(HJChain(entries))
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reversed(&self) -> HJChain {
        HJChain(self.0.iter().rev().copied().collect())
    }

    pub fn value(&self) -> Result<Rational> {
        hj_eval(&self.0)
    }

    /// A chain of `len` entries equal to 2 (the `A_len` singularity).
    pub fn a_chain(len: usize) -> HJChain {
        HJChain(vec![2; len])
    }
}

impl TryFrom<Vec<i64>> for HJChain {
    type Error = Error;
    fn try_from(v: Vec<i64>) -> Result<HJChain> {
        HJChain::new(v)
    }
}

impl From<HJChain> for Vec<i64> {
    fn from(c: HJChain) -> Vec<i64> {
        c.0
    }
}

impl fmt::Display for HJChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_list(f, &self.0)
    }
}

pub(crate) fn write_list(f: &mut fmt::Formatter<'_>, xs: &[i64]) -> fmt::Result {
    f.write_str("[")?;
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    f.write_str("]")
}

/// Expands `r/a` (with `r > a >= 1`, coprime) into its unique chain with entries `>= 2`.
pub fn hj_expand(r: i64, a: i64) -> Result<HJChain> {
    if !(r > a && a >= 1) || gcd(r, a) != 1 {
        return Err(Error::InvalidFraction { r, a });
    }
    let (mut r, mut a) = (r, a);
    let mut out = Vec::new();
    loop {
        // ceil(r / a) >= 2 because r > a.
        let n = (r + a - 1) / a;
        out.push(n);
        let next = n * a - r;
        if next == 0 {
            break;
        }
        (r, a) = (a, next);
    }
    Ok(HJChain(out))
}

/// The chain `n` with `[n, 1, m] = 0`, i.e. `reverse(n)` expands `q/(q - q1)`
/// where `[m] = q/q1`.
pub fn zero_complement(m: &HJChain) -> Result<HJChain> {
    if m.is_empty() {
        return Err(Error::InvalidChain(
            "zero complement of an empty chain".into(),
        ));
    }
    let v = m.value()?;
    let (q, q1) = (v.numerator(), v.denominator());
    let mut n = hj_expand(q, q - q1)?;
    n.0.reverse();
    Ok(n)
}

/// Values `(r/a, r/a*)` of a chain and of its reversal; `a * a* = 1 (mod r)`.
pub fn chain_reversal_fraction(chain: &HJChain) -> Result<(Rational, Rational)> {
    if chain.is_empty() {
        return Err(Error::InvalidChain("empty chain".into()));
    }
    Ok((chain.value()?, chain.reversed().value()?))
}

/// A cyclic quotient singularity, identified by its resolution chain up to reversal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SingularityType {
    chain: HJChain,
    order: i64,
}

impl SingularityType {
    pub fn new(chain: HJChain) -> Result<SingularityType> {
        if chain.is_empty() {
            return Err(Error::InvalidChain(
                "a singularity needs a nonempty chain".into(),
            ));
        }
        let rev = chain.reversed();
        let chain = if rev < chain { rev } else { chain };
        let order = chain.value()?.numerator();
        Ok(SingularityType { chain, order })
    }

    pub fn from_fraction(r: i64, a: i64) -> Result<SingularityType> {
        SingularityType::new(hj_expand(r, a)?)
    }

    /// The `A_n` singularity, chain `[2; n]`.
    pub fn a(n: usize) -> SingularityType {
        SingularityType::new(HJChain::a_chain(n)).expect("A_n chains are valid")
    }

    pub fn chain(&self) -> &HJChain {
        &self.chain
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    /// `r/a` read in the canonical orientation.
    pub fn fraction(&self) -> Rational {
        self.chain.value().expect("validated at construction")
    }

    pub fn is_du_val(&self) -> bool {
        self.chain.entries().iter().all(|&e| e == 2)
    }
}

impl fmt::Display for SingularityType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.chain.fmt(f)
    }
}

impl FromStr for SingularityType {
    type Err = Error;

    /// Accepts `r/a` (expanded via [`hj_expand`]) or an explicit chain `[2,3,2]`.
    fn from_str(s: &str) -> Result<SingularityType> {
        let s = s.trim();
        if s.starts_with('[') {
            SingularityType::new(HJChain::new(parse_int_list(s)?)?)
        } else {
            let (r, a) = s
                .split_once('/')
                .ok_or_else(|| Error::Parse(format!("expected r/a or [..], got {s:?}")))?;
            let r = r
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
            let a = a
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
            SingularityType::from_fraction(r, a)
        }
    }
}

/// Parses `[a,b,c]` into integers.
pub fn parse_int_list(s: &str) -> Result<Vec<i64>> {
    let inner = s
        .trim()
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("expected [..], got {s:?}")))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|t| {
            let t = t.trim().replace('\u{2212}', "-");
            t.parse::<i64>()
                .map_err(|_| Error::Parse(format!("bad integer {t:?}")))
        })
        .collect()
}

/// Splits a comma separated list at top level, leaving bracketed groups intact.
pub fn split_top_level(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '[' => depth += 1,
            ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(std::mem::take(&mut cur).trim().to_string());
                continue;
            }
            _ => {}
        }
        cur.push(ch);
    }
    if !cur.trim().is_empty() {
        out.push(cur.trim().to_string());
    }
    out
}

/// Parses a singularity list such as `"3/2,2/1"` or `"[2,2],[3]"`.
pub fn parse_singularities(s: &str) -> Result<Vec<SingularityType>> {
    split_top_level(s).iter().map(|t| t.parse()).collect()
}

/// Outcome of resolving a two-dimensional cone.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ConeType {
    Smooth,
    Singular(SingularityType),
}

/// Rays strictly inside `cone(u, w)` added by its minimal resolution, in order from `u` to `w`.
pub fn cone_resolution_rays(u: LatticeVector, w: LatticeVector) -> Result<Vec<LatticeVector>> {
    for v in [u, w] {
        if !v.is_primitive() {
            return Err(Error::NonPrimitive(v.x, v.y));
        }
    }
    let d = u.try_det(&w)?;
    if d <= 0 {
        return Err(Error::BadCone(d));
    }
    let mut rays = Vec::new();
    let mut p = u;
    let mut r = d;
    while r > 1 {
        // w = alpha*p + r*e with det(p, e) = 1; the next hull vertex is e + t*p
        // for the least t keeping it inside the cone.
        let e = p.complement()?;
        let alpha = w.try_det(&e)?;
        let t = alpha.div_euclid(r) + 1;
        let next = e.checked_add(&p.checked_scale(t)?)?;
        r = next.try_det(&w)?;
        rays.push(next);
        p = next;
    }
    Ok(rays)
}

/// Resolution chain of `cone(u, w)` read from `u` to `w`; empty when smooth.
pub fn cone_chain(u: LatticeVector, w: LatticeVector) -> Result<Vec<i64>> {
    let inner = cone_resolution_rays(u, w)?;
    let mut all = Vec::with_capacity(inner.len() + 2);
    all.push(u);
    all.extend_from_slice(&inner);
    all.push(w);
    all.windows(3).map(|t| t[0].try_det(&t[2])).collect()
}

pub fn cone_singularity(u: LatticeVector, w: LatticeVector) -> Result<ConeType> {
    let chain = cone_chain(u, w)?;
    if chain.is_empty() {
        Ok(ConeType::Smooth)
    } else {
        Ok(ConeType::Singular(SingularityType::new(HJChain::new(
            chain,
        )?)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: i64, y: i64) -> LatticeVector {
        LatticeVector::new(x, y)
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn eval_examples() {
        assert_eq!(hj_eval(&[7]).unwrap(), q(7, 1));
        assert_eq!(hj_eval(&[2, 2]).unwrap(), q(3, 2));
        assert_eq!(hj_eval(&[2, 2, 1, 3]).unwrap(), Rational::ZERO);
        assert_eq!(hj_eval(&[2, 1, 2]).unwrap(), Rational::ZERO);
    }

    #[test]
    fn eval_through_infinity() {
        // [1, 1] = 1 - 1/1 = 0, so [x, 1, 1] = x - 1/0 is infinite ...
        assert_eq!(hj_eval(&[5, 1, 1]), Err(Error::NotEvaluable));
        // ... and one more level brings it back to 7 - 1/inf = 7.
        assert_eq!(hj_eval(&[7, 5, 1, 1]).unwrap(), q(7, 1));
        assert!(matches!(hj_eval(&[]), Err(Error::InvalidChain(_))));
    }

    #[test]
    fn expand_examples() {
        assert_eq!(hj_expand(9, 1).unwrap().entries(), &[9]);
        assert_eq!(hj_expand(3, 2).unwrap().entries(), &[2, 2]);
        assert_eq!(hj_expand(7, 3).unwrap().entries(), &[3, 2, 2]);
        assert!(hj_expand(3, 3).is_err());
        assert!(hj_expand(2, 3).is_err());
        assert!(hj_expand(6, 4).is_err());
        assert!(hj_expand(6, 0).is_err());
    }

    #[test]
    fn zero_complement_examples() {
        let zc = |m: &[i64]| zero_complement(&HJChain::new(m.to_vec()).unwrap()).unwrap();
        assert_eq!(zc(&[2]).entries(), &[2]);
        assert_eq!(zc(&[3]).entries(), &[2, 2]);
        assert_eq!(zc(&[2, 2]).entries(), &[3]);
    }

    #[test]
    fn reversal_fraction_examples() {
        let chain = HJChain::new(vec![3, 2]).unwrap();
        assert_eq!(chain_reversal_fraction(&chain).unwrap(), (q(5, 2), q(5, 3)));
        let chain = HJChain::new(vec![2, 2]).unwrap();
        assert_eq!(chain_reversal_fraction(&chain).unwrap(), (q(3, 2), q(3, 2)));
        for n in 2..10 {
            let chain = HJChain::new(vec![2, n, 2]).unwrap();
            let f = q(4 * n - 4, 2 * n - 1);
            assert_eq!(chain_reversal_fraction(&chain).unwrap(), (f, f));
        }
    }

    #[test]
    fn cone_examples() {
        assert_eq!(
            cone_singularity(v(1, 0), v(0, 1)).unwrap(),
            ConeType::Smooth
        );
        let ConeType::Singular(s) = cone_singularity(v(-2, 1), v(1, -2)).unwrap() else {
            panic!("expected singular cone");
        };
        assert_eq!(s.chain().entries(), &[2, 2]);
        assert_eq!(s.order(), 3);
        assert_eq!(
            cone_resolution_rays(v(-1, 0), v(1, -3)).unwrap(),
            vec![v(0, -1)]
        );
        let ConeType::Singular(s) = cone_singularity(v(-1, 0), v(1, -3)).unwrap() else {
            panic!("expected singular cone");
        };
        assert_eq!(s.chain().entries(), &[3]);
        assert_eq!(s.order(), 3);
    }

    #[test]
    fn cone_rejects_bad_input() {
        assert_eq!(cone_singularity(v(0, 1), v(1, 0)), Err(Error::BadCone(-1)));
        assert_eq!(cone_singularity(v(1, 0), v(-1, 0)), Err(Error::BadCone(0)));
        assert_eq!(
            cone_singularity(v(2, 0), v(0, 1)),
            Err(Error::NonPrimitive(2, 0))
        );
    }

    #[test]
    fn swapping_cone_sides_reverses_chain() {
        // Reflection (x, y) -> (y, x) swaps the roles of the two generators.
        let (u, w) = (v(1, 0), v(2, 5));
        let forward = cone_chain(u, w).unwrap();
        let back = cone_chain(v(w.y, w.x), v(u.y, u.x)).unwrap();
        let mut rev = forward.clone();
        rev.reverse();
        assert_eq!(back, rev);
        assert_eq!(forward, vec![2, 3]);
    }

    #[test]
    fn singularity_is_canonical_and_parses() {
        let s: SingularityType = "5/3".parse().unwrap();
        assert_eq!(s.chain().entries(), &[2, 3]);
        let t: SingularityType = "[3,2]".parse().unwrap();
        assert_eq!(s, t);
        assert_eq!(s.order(), 5);
        let list = parse_singularities("3/2, [2,3,2], 2/1").unwrap();
        assert_eq!(list.len(), 3);
        assert_eq!(list[1].chain().entries(), &[2, 3, 2]);
        assert!("[1,2]".parse::<SingularityType>().is_err());
        assert!("[]".parse::<SingularityType>().is_err());
        assert!("4/2".parse::<SingularityType>().is_err());
    }

    #[test]
    fn rational_arithmetic_is_reduced_and_checked() {
        assert_eq!(q(6, -4), q(-3, 2));
        assert_eq!(q(1, 3).checked_add(q(1, 6)).unwrap(), q(1, 2));
        assert_eq!(q(2, 3).checked_div(q(4, 9)).unwrap(), q(3, 2));
        assert_eq!(Rational::new(1, 0), Err(Error::ZeroDenominator));
        let big = Rational::integer(i64::MAX);
        assert!(matches!(big.checked_add(big), Err(Error::Overflow(_))));
        assert_eq!("-7/21".parse::<Rational>().unwrap(), q(-1, 3));
        assert_eq!(q(-1, 3).to_string(), "-1/3");
    }

    #[test]
    fn unimodular_maps() {
        let m = UnimodularMap::to_standard_basis(v(2, 1), v(1, 1)).unwrap();
        assert_eq!(m.apply(v(2, 1)).unwrap(), v(1, 0));
        assert_eq!(m.apply(v(1, 1)).unwrap(), v(0, 1));
        let r = UnimodularMap::to_standard_basis(v(1, 1), v(2, 1)).unwrap();
        assert_eq!(r.det(), -1);
        assert_eq!(r.compose(&r.inverse()).unwrap(), UnimodularMap::IDENTITY);
        assert!(UnimodularMap::new(2, 0, 0, 1).is_err());
    }
}
