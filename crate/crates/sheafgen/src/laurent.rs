//! Exact arithmetic in the ring of bivariate Laurent polynomials in `x`, `y`
//! with exponents in `(1/2)ℤ` and arbitrary-precision integer coefficients.
//!
//! This ring hosts every coefficient the engine produces: virtual Hodge
//! polynomials `e(Y) = Σ (−1)^{p+q} h^{p,q} x^p y^q` of smooth projective
//! varieties, the mixed factors of Göttsche-type infinite products, and the
//! half-integer monomials (like `(xy)^{1/2}`) that appear inside indefinite
//! theta sums before they cancel.
//!
//! Representation choices:
//!
//! * exponents are stored **doubled** ([`HalfExp`]), so `(xy)^{3/2}` is the
//!   key `(3, 3)` — a fixed denominator of 2 covers everything we need and
//!   keeps keys plain integers;
//! * coefficients are [`BigInt`] — products of many eta-like factors overflow
//!   64-bit integers long before interesting truncation orders;
//! * the term map is canonical: zero coefficients are never stored, so
//!   structural equality is ring equality, and the [`BTreeMap`] order is the
//!   ascending lexicographic `(x, y)` order used by the serializer.
//!
//! Division ([`LaurentPoly::exact_div`]) is exact or an error: the engine
//! divides only at aggregation levels where divisibility is a theorem, so
//! [`LaurentError::NotDivisible`] always means an upstream bug, never data.
//!
//! Post-processing of a polynomial that claims to be `e(M)` of a smooth
//! projective `M` lives in [`HodgeTable`]: the constructor re-derives the
//! Hodge numbers by flipping signs and *checks* symmetry, Poincaré duality,
//! nonnegativity and support bounds instead of trusting the caller.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// An exponent in `(1/2)ℤ`, stored as twice its value.
///
/// `HalfExp { doubled: 3 }` is the exponent `3/2`. Arithmetic is ordinary
/// integer arithmetic on the doubled representative, which is closed under
/// addition and negation; an exponent is *integral* exactly when `doubled`
/// is even.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct HalfExp {
    pub doubled: i64,
}

impl HalfExp {
    pub const ZERO: HalfExp = HalfExp { doubled: 0 };

    /// The integer exponent `n`.
    pub fn int(n: i64) -> Self {
        HalfExp { doubled: 2 * n }
    }

    /// The exponent `doubled / 2`.
    pub fn halves(doubled: i64) -> Self {
        HalfExp { doubled }
    }

    pub fn is_integral(self) -> bool {
        self.doubled % 2 == 0
    }
}

impl Add for HalfExp {
    type Output = HalfExp;
    fn add(self, rhs: HalfExp) -> HalfExp {
        HalfExp { doubled: self.doubled + rhs.doubled }
    }
}

impl Sub for HalfExp {
    type Output = HalfExp;
    fn sub(self, rhs: HalfExp) -> HalfExp {
        HalfExp { doubled: self.doubled - rhs.doubled }
    }
}

impl Neg for HalfExp {
    type Output = HalfExp;
    fn neg(self) -> HalfExp {
        HalfExp { doubled: -self.doubled }
    }
}

impl fmt::Display for HalfExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.doubled % 2 == 0 {
            write!(f, "{}", self.doubled / 2)
        } else {
            write!(f, "{}/2", self.doubled)
        }
    }
}

/// Errors from Laurent arithmetic and Hodge-table validation.
///
/// Every variant marks a *logic* failure: the series builders are arranged so
/// that a correct implementation never produces any of these on the inputs
/// the moduli identities feed them.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum LaurentError {
    /// `exact_div` was asked for a quotient that does not exist in the ring.
    NotDivisible,
    /// An operation requiring integral exponents (sign flip, Poincaré
    /// specialization) met a genuine half-integer exponent.
    FractionalExponent,
    /// A claimed Hodge number came out negative after the sign flip.
    NegativeHodgeNumber { p: i64, q: i64 },
    /// `h^{p,q} ≠ h^{q,p}`.
    AsymmetricHodge { p: usize, q: usize },
    /// `h^{p,q} ≠ h^{dim−p, dim−q}`.
    DualityViolation { p: usize, q: usize },
    /// A Hodge entry fell outside the square `[0, dim]²`.
    SupportOutOfRange { x_doubled: i64, y_doubled: i64, dim: usize },
}

impl fmt::Display for LaurentError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LaurentError::NotDivisible => write!(f, "polynomial division is not exact"),
            LaurentError::FractionalExponent => {
                write!(f, "operation requires integral exponents but found a half-integer")
            }
            LaurentError::NegativeHodgeNumber { p, q } => {
                write!(f, "negative Hodge number at (p, q) = ({p}, {q})")
            }
            LaurentError::AsymmetricHodge { p, q } => {
                write!(f, "Hodge symmetry h^{{{p},{q}}} = h^{{{q},{p}}} violated")
            }
            LaurentError::DualityViolation { p, q } => {
                write!(f, "Poincaré duality violated at (p, q) = ({p}, {q})")
            }
            LaurentError::SupportOutOfRange { x_doubled, y_doubled, dim } => write!(
                f,
                "exponent ({}/2, {}/2) outside the [0, {dim}]² Hodge square",
                x_doubled, y_doubled
            ),
        }
    }
}

impl std::error::Error for LaurentError {}

type Key = (HalfExp, HalfExp);

/// A bivariate Laurent polynomial with half-integer exponents.
///
/// Internally a canonical sparse map `(xExp, yExp) → coefficient`; zero
/// coefficients are dropped eagerly, so `==` is mathematical equality and
/// iteration order is ascending lex on `(x, y)`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<Key, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        LaurentPoly::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        LaurentPoly::monomial(c, HalfExp::ZERO, HalfExp::ZERO)
    }

    /// The single-term polynomial `c · x^{xe} y^{ye}` (zero `c` gives `0`).
    pub fn monomial(c: impl Into<BigInt>, xe: HalfExp, ye: HalfExp) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((xe, ye), c);
        }
        LaurentPoly { terms }
    }

    /// Build from `(xDoubled, yDoubled, coefficient)` triples; repeated keys
    /// accumulate. This is the constructor used for frozen expansions in
    /// tests and examples.
    pub fn from_doubled(terms: &[(i64, i64, i64)]) -> Self {
        let mut p = LaurentPoly::zero();
        for &(xd, yd, c) in terms {
            p.add_term((HalfExp::halves(xd), HalfExp::halves(yd)), BigInt::from(c));
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Iterate terms in ascending lex `(x, y)` order.
    pub fn terms(&self) -> impl Iterator<Item = (Key, &BigInt)> + '_ {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    /// The coefficient at `(xe, ye)`, zero if absent.
    pub fn coeff(&self, xe: HalfExp, ye: HalfExp) -> BigInt {
        self.terms.get(&(xe, ye)).cloned().unwrap_or_else(BigInt::zero)
    }

    fn add_term(&mut self, key: Key, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Multiply by the monomial `c · x^{kx} y^{ky}` (a ring unit when
    /// `c = ±1`).
    pub fn mul_monomial(&self, c: &BigInt, kx: HalfExp, ky: HalfExp) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        let terms = self
            .terms
            .iter()
            .map(|(&(a, b), v)| ((a + kx, b + ky), v * c))
            .collect();
        LaurentPoly { terms }
    }

    /// Exact quotient `self / divisor`, or [`LaurentError::NotDivisible`].
    ///
    /// Greedy division by the lex-leading term of the divisor. Termination
    /// is guaranteed by a Newton-box bound: when `self = divisor · q`, the
    /// exponent box of `q` is the componentwise difference of the boxes of
    /// `self` and `divisor`, so any quotient term escaping that box proves
    /// inexactness. Quotient keys strictly decrease in lex order, and only
    /// finitely many lattice points lie in the box.
    pub fn exact_div(&self, divisor: &LaurentPoly) -> Result<LaurentPoly, LaurentError> {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Ok(LaurentPoly::zero());
        }
        let (nmin, nmax) = self.support_box().expect("nonzero");
        let (dmin, dmax) = divisor.support_box().expect("nonzero");
        let qmin = (nmin.0 - dmin.0, nmin.1 - dmin.1);
        let qmax = (nmax.0 - dmax.0, nmax.1 - dmax.1);
        let (&dkey, dlead) = divisor.terms.last_key_value().expect("nonzero");
        let dlead = dlead.clone();

        let mut rem = self.clone();
        let mut quot = LaurentPoly::zero();
        loop {
            let (rkey, rlead) = match rem.terms.last_key_value() {
                None => break,
                Some((&k, c)) => (k, c.clone()),
            };
            let qkey = (rkey.0 - dkey.0, rkey.1 - dkey.1);
            if qkey.0 < qmin.0 || qkey.0 > qmax.0 || qkey.1 < qmin.1 || qkey.1 > qmax.1 {
                return Err(LaurentError::NotDivisible);
            }
            let (qc, r) = rlead.div_rem(&dlead);
            if !r.is_zero() {
                return Err(LaurentError::NotDivisible);
            }
            for (&(a, b), c) in &divisor.terms {
                rem.add_term((a + qkey.0, b + qkey.1), -(c * &qc));
            }
            quot.add_term(qkey, qc);
        }
        Ok(quot)
    }

    /// The componentwise exponent bounding box `((xmin, ymin), (xmax, ymax))`,
    /// `None` for the zero polynomial.
    pub fn support_box(&self) -> Option<(Key, Key)> {
        let mut keys = self.terms.keys();
        let &(x0, y0) = keys.next()?;
        let (mut bx, mut by) = ((x0, x0), (y0, y0));
        for &(a, b) in keys {
            bx = (bx.0.min(a), bx.1.max(a));
            by = (by.0.min(b), by.1.max(b));
        }
        Some(((bx.0, by.0), (bx.1, by.1)))
    }

    /// Exchange `x ↔ y`. An involution; e-polynomials of varieties are fixed
    /// by it (Hodge symmetry).
    pub fn swap_xy(&self) -> LaurentPoly {
        let terms = self.terms.iter().map(|(&(a, b), c)| ((b, a), c.clone())).collect();
        LaurentPoly { terms }
    }

    /// Substitute `x → x⁻¹, y → y⁻¹` and multiply by `(xy)^d`: the Poincaré
    /// dual of an e-polynomial of a `d`-dimensional variety. Applying `dual`
    /// twice with the same `d` is the identity.
    pub fn dual(&self, d: i64) -> LaurentPoly {
        let shift = HalfExp::int(d);
        let terms = self
            .terms
            .iter()
            .map(|(&(a, b), c)| ((shift - a, shift - b), c.clone()))
            .collect();
        LaurentPoly { terms }
    }

    /// Substitute `x → −x, y → −y`.
    ///
    /// On an e-polynomial this removes the `(−1)^{p+q}` signs and exposes
    /// the honest Hodge polynomial `Σ h^{p,q} x^p y^q`. Requires all
    /// exponents integral — `(−x)^{1/2}` is not a Laurent monomial.
    pub fn sign_flip(&self) -> Result<LaurentPoly, LaurentError> {
        let mut out = LaurentPoly::zero();
        for (&(a, b), c) in &self.terms {
            if !a.is_integral() || !b.is_integral() {
                return Err(LaurentError::FractionalExponent);
            }
            let sign = (a.doubled / 2 + b.doubled / 2).rem_euclid(2);
            let v = if sign == 0 { c.clone() } else { -c };
            out.add_term((a, b), v);
        }
        Ok(out)
    }

    /// The value at `x = y = 1`, i.e. the coefficient sum.
    ///
    /// For an e-polynomial this is `Σ (−1)^{p+q} h^{p,q}`, the alternating
    /// Betti sum — the topological Euler characteristic. (It agrees with the
    /// Poincaré polynomial evaluated at `t = −1`; the specialization that
    /// returns the *total* Betti number is `sign_flip` followed by this.)
    pub fn euler_number(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Sign-flip, then set `x = y = t`: the Poincaré polynomial as a map
    /// `degree → coefficient`. Errors on half-integer exponents.
    pub fn poincare(&self) -> Result<BTreeMap<i64, BigInt>, LaurentError> {
        let flipped = self.sign_flip()?;
        let mut out: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (&(a, b), c) in &flipped.terms {
            let deg = a.doubled / 2 + b.doubled / 2;
            let slot = out.entry(deg).or_insert_with(BigInt::zero);
            *slot += c;
            if slot.is_zero() {
                out.remove(&deg);
            }
        }
        Ok(out)
    }

    /// JSON form: the canonical list of `[xDoubled, yDoubled, "coefficient"]`
    /// triples (coefficients as decimal strings, exact at any size).
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms
                .iter()
                .map(|(&(a, b), c)| {
                    serde_json::json!([a.doubled, b.doubled, c.to_string()])
                })
                .collect(),
        )
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&k, c) in &rhs.terms {
            out.add_term(k, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&k, c) in &rhs.terms {
            out.add_term(k, -c);
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        let terms = self.terms.iter().map(|(&k, c)| (k, -c)).collect();
        LaurentPoly { terms }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        // Schoolbook product; supports stay in the low thousands at the
        // truncation orders this engine targets.
        let mut out = LaurentPoly::zero();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &rhs.terms {
                out.add_term((a1 + a2, b1 + b2), c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(a, b), c) in &self.terms {
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let is_const = a == HalfExp::ZERO && b == HalfExp::ZERO;
            let unit_mag = mag == BigInt::from(1);
            if !unit_mag || is_const {
                write!(f, "{mag}")?;
            }
            if !unit_mag && !is_const {
                write!(f, "*")?;
            }
            let mut sep = "";
            for (name, e) in [("x", a), ("y", b)] {
                if e != HalfExp::ZERO {
                    write!(f, "{sep}{name}")?;
                    if e != HalfExp::int(1) {
                        if e.is_integral() && e.doubled > 0 {
                            write!(f, "^{}", e)?;
                        } else {
                            write!(f, "^({})", e)?;
                        }
                    }
                    sep = "*";
                }
            }
        }
        Ok(())
    }
}

/// The validated Hodge data of one moduli coefficient.
///
/// Constructed from an e-polynomial and a claimed dimension by
/// [`HodgeTable::from_e_polynomial`]; construction *is* the validation, so a
/// value of this type certifies: integral exponents, support inside
/// `[0, dim]²`, `h^{p,q} ≥ 0`, `h^{p,q} = h^{q,p}`, and
/// `h^{p,q} = h^{dim−p, dim−q}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HodgeTable {
    pub dim: usize,
    /// `(p, q) → h^{p,q}`, nonzero entries only.
    pub hodge: BTreeMap<(usize, usize), u64>,
    /// `b_0 .. b_{2·dim}` with `b_k = Σ_{p+q=k} h^{p,q}`.
    pub betti: Vec<u64>,
    /// `Σ_k (−1)^k b_k`, the topological Euler number.
    pub euler: i64,
}

impl HodgeTable {
    /// Read Hodge numbers off `e = Σ (−1)^{p+q} h^{p,q} x^p y^q` and check
    /// every invariant a smooth projective variety of dimension `dim`
    /// imposes. Any failure signals an upstream series bug.
    pub fn from_e_polynomial(e: &LaurentPoly, dim: usize) -> Result<HodgeTable, LaurentError> {
        let flipped = e.sign_flip()?;
        let mut hodge: BTreeMap<(usize, usize), u64> = BTreeMap::new();
        for (&(a, b), c) in &flipped.terms {
            let (pd, qd) = (a.doubled / 2, b.doubled / 2);
            if pd < 0 || qd < 0 || pd as usize > dim || qd as usize > dim {
                return Err(LaurentError::SupportOutOfRange {
                    x_doubled: a.doubled,
                    y_doubled: b.doubled,
                    dim,
                });
            }
            if c.is_negative() {
                return Err(LaurentError::NegativeHodgeNumber { p: pd, q: qd });
            }
            let h = c.to_u64().expect("Hodge number exceeds u64 capacity");
            hodge.insert((pd as usize, qd as usize), h);
        }
        let h = |p: usize, q: usize| hodge.get(&(p, q)).copied().unwrap_or(0);
        for (&(p, q), &v) in &hodge {
            if h(q, p) != v {
                return Err(LaurentError::AsymmetricHodge { p, q });
            }
            if h(dim - p, dim - q) != v {
                return Err(LaurentError::DualityViolation { p, q });
            }
        }
        let mut betti = vec![0u64; 2 * dim + 1];
        for (&(p, q), &v) in &hodge {
            betti[p + q] += v;
        }
        let euler = betti
            .iter()
            .enumerate()
            .map(|(k, &b)| {
                let b = i64::try_from(b).expect("Betti number exceeds i64 capacity");
                if k % 2 == 0 { b } else { -b }
            })
            .sum();
        Ok(HodgeTable { dim, hodge, betti, euler })
    }

    pub fn h(&self, p: usize, q: usize) -> u64 {
        self.hodge.get(&(p, q)).copied().unwrap_or(0)
    }

    /// Total Betti number `Σ_k b_k`.
    pub fn total_betti(&self) -> u64 {
        self.betti.iter().sum()
    }

    /// JSON form: `{dim, hodge: [[p, q, h], …], betti: […], euler}`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "dim": self.dim,
            "hodge": self.hodge.iter()
                .map(|(&(p, q), &h)| serde_json::json!([p, q, h]))
                .collect::<Vec<_>>(),
            "betti": self.betti,
            "euler": self.euler,
        })
    }
}
