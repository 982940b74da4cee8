//! Truncated formal series in `q` with exponents in `(1/4)ℤ` and
//! coefficients in the Laurent ring of [`crate::laurent`].
//!
//! Every generating function in the engine lives here: Göttsche-type
//! infinite products, indefinite theta sums, eta quotients, and the moduli
//! series themselves. Exponents are stored **quadrupled** ([`QExp`]), so
//! `q^{3/4}` is the key `3`; a fixed denominator of 4 covers every displayed
//! series, while the `q^{1/8}` and `q^{1/24}` fragments of eta/theta
//! prefactors are accumulated symbolically inside [`eta_quotient`] and only
//! materialized when the combination lands back on the quarter grid.
//!
//! Truncation is carried per series and is **exclusive**: a [`FracSeries`]
//! with order `N` is exact at every exponent `< N` and says nothing beyond.
//! Binary operations return the minimum of the input orders, so precision
//! can never silently inflate. Equality is meaningful only up to an order —
//! use [`FracSeries::equal_to_order`], which reports the first mismatching
//! exponent instead of a bare boolean.
//!
//! The workhorses are the binomial routines [`FracSeries::mul_one_minus`]
//! and [`FracSeries::div_one_minus`]: every infinite product the engine
//! expands is a stream of `(1 − monomial·q^e)^{±1}` factors, and the
//! ascending-exponent recurrence keeps each factor application linear in the
//! number of stored slots.

use crate::laurent::{HalfExp, LaurentPoly};
use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

/// A `q`-exponent in `(1/4)ℤ`, stored as four times its value.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct QExp {
    pub quadrupled: i64,
}

impl QExp {
    pub const ZERO: QExp = QExp { quadrupled: 0 };

    /// The integer exponent `n`.
    pub fn int(n: i64) -> Self {
        QExp { quadrupled: 4 * n }
    }

    /// The exponent `quadrupled / 4`.
    pub fn quarters(quadrupled: i64) -> Self {
        QExp { quadrupled }
    }

    pub fn is_integral(self) -> bool {
        self.quadrupled % 4 == 0
    }
}

impl Add for QExp {
    type Output = QExp;
    fn add(self, rhs: QExp) -> QExp {
        QExp { quadrupled: self.quadrupled + rhs.quadrupled }
    }
}

impl Sub for QExp {
    type Output = QExp;
    fn sub(self, rhs: QExp) -> QExp {
        QExp { quadrupled: self.quadrupled - rhs.quadrupled }
    }
}

impl Neg for QExp {
    type Output = QExp;
    fn neg(self) -> QExp {
        QExp { quadrupled: -self.quadrupled }
    }
}

impl fmt::Display for QExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.quadrupled % 4 == 0 {
            write!(f, "{}", self.quadrupled / 4)
        } else if self.quadrupled % 2 == 0 {
            write!(f, "{}/2", self.quadrupled / 2)
        } else {
            write!(f, "{}/4", self.quadrupled)
        }
    }
}

/// Errors from series arithmetic.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum QSeriesError {
    /// Inversion needs a constant term that is `±` a single monomial.
    NonUnitConstantTerm,
    /// A factor stream consumed 10⁶ factors without its lead exponent
    /// reaching the truncation order — the stream is malformed.
    NonDivergingLeadExponent,
    /// A coefficient beyond the truncation order was requested.
    BeyondTruncation { requested: QExp, order: QExp },
    /// An eta/theta prefactor exponent left the quarter grid `(1/4)ℤ`.
    UnrepresentablePrefactor,
}

impl fmt::Display for QSeriesError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QSeriesError::NonUnitConstantTerm => {
                write!(f, "series inversion requires a ±monomial constant term")
            }
            QSeriesError::NonDivergingLeadExponent => {
                write!(f, "product stream lead exponents fail to diverge")
            }
            QSeriesError::BeyondTruncation { requested, order } => {
                write!(f, "coefficient of q^{requested} requested from a series of order {order}")
            }
            QSeriesError::UnrepresentablePrefactor => {
                write!(f, "prefactor exponent is not a multiple of 1/4")
            }
        }
    }
}

impl std::error::Error for QSeriesError {}

/// A truncated series `Σ c_e q^e` with Laurent-polynomial coefficients,
/// exact at every exponent below its (exclusive) order.
#[derive(Clone, Debug)]
pub struct FracSeries {
    order: QExp,
    terms: BTreeMap<QExp, LaurentPoly>,
}

impl FracSeries {
    /// The zero series at the given order.
    pub fn zero(order: QExp) -> Self {
        FracSeries { order, terms: BTreeMap::new() }
    }

    /// The constant series `1`.
    pub fn one(order: QExp) -> Self {
        FracSeries::monomial(order, QExp::ZERO, LaurentPoly::one())
    }

    /// The single-term series `c · q^e` (dropped if `e ≥ order`).
    pub fn monomial(order: QExp, e: QExp, c: LaurentPoly) -> Self {
        let mut s = FracSeries::zero(order);
        s.add_at(e, c);
        s
    }

    /// Accumulate a stream of `(exponent, coefficient)` contributions into a
    /// series; repeated exponents are summed, out-of-range ones dropped.
    pub fn from_terms(
        order: QExp,
        terms: impl IntoIterator<Item = (QExp, LaurentPoly)>,
    ) -> Self {
        let mut s = FracSeries::zero(order);
        for (e, c) in terms {
            s.add_at(e, c);
        }
        s
    }

    /// Apply a fallible transformation to every coefficient, failing fast;
    /// coefficients mapped to zero are dropped.
    pub fn map_coeffs<E>(
        &self,
        f: impl Fn(&LaurentPoly) -> Result<LaurentPoly, E>,
    ) -> Result<FracSeries, E> {
        let mut s = FracSeries::zero(self.order);
        for (&e, c) in &self.terms {
            s.add_at(e, f(c)?);
        }
        Ok(s)
    }

    pub fn order(&self) -> QExp {
        self.order
    }

    /// Iterate stored `(exponent, coefficient)` pairs in ascending order.
    pub fn terms(&self) -> impl Iterator<Item = (QExp, &LaurentPoly)> + '_ {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    /// The coefficient of `q^e`; zero for unpopulated exponents below the
    /// order, an error beyond it.
    pub fn coeff(&self, e: QExp) -> Result<LaurentPoly, QSeriesError> {
        if e >= self.order {
            return Err(QSeriesError::BeyondTruncation { requested: e, order: self.order });
        }
        Ok(self.terms.get(&e).cloned().unwrap_or_else(LaurentPoly::zero))
    }

    fn add_at(&mut self, e: QExp, c: LaurentPoly) {
        if e >= self.order || c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = &*o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, rhs: &FracSeries) -> FracSeries {
        let order = self.order.min(rhs.order);
        let mut out = FracSeries::zero(order);
        for (&e, c) in self.terms.iter().chain(rhs.terms.iter()) {
            out.add_at(e, c.clone());
        }
        out
    }

    pub fn neg(&self) -> FracSeries {
        let terms = self.terms.iter().map(|(&e, c)| (e, -c)).collect();
        FracSeries { order: self.order, terms }
    }

    pub fn sub(&self, rhs: &FracSeries) -> FracSeries {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &FracSeries) -> FracSeries {
        let order = self.order.min(rhs.order);
        let mut out = FracSeries::zero(order);
        for (&e1, c1) in &self.terms {
            if e1 >= order {
                break;
            }
            for (&e2, c2) in &rhs.terms {
                let e = e1 + e2;
                if e >= order {
                    break;
                }
                out.add_at(e, c1 * c2);
            }
        }
        out
    }

    /// Multiply every coefficient by a fixed Laurent polynomial.
    pub fn scale_poly(&self, p: &LaurentPoly) -> FracSeries {
        let mut out = FracSeries::zero(self.order);
        for (&e, c) in &self.terms {
            out.add_at(e, c * p);
        }
        out
    }

    /// Multiply by the binomial `1 − m · q^e`, `e > 0`.
    pub fn mul_one_minus(&self, m: &LaurentPoly, e: QExp) -> FracSeries {
        assert!(e.quadrupled > 0, "binomial factor needs a positive q-exponent");
        let mut out = self.clone();
        for (&k, c) in &self.terms {
            out.add_at(k + e, -&(c * m));
        }
        out
    }

    /// Multiply by the geometric inverse `(1 − m · q^e)⁻¹`, `e > 0`, via the
    /// ascending recurrence `r_k = a_k + m · r_{k−e}`.
    pub fn div_one_minus(&self, m: &LaurentPoly, e: QExp) -> FracSeries {
        assert!(e.quadrupled > 0, "geometric factor needs a positive q-exponent");
        let mut out = self.clone();
        let start = match out.terms.keys().next() {
            Some(k) => k.quadrupled + e.quadrupled,
            None => return out,
        };
        for k in start..out.order.quadrupled {
            let src = match out.terms.get(&QExp::quarters(k - e.quadrupled)) {
                Some(p) => p * m,
                None => continue,
            };
            out.add_at(QExp::quarters(k), src);
        }
        out
    }

    /// Invert a unit series: the constant term must be `±` a single monomial
    /// and no exponent may be negative.
    pub fn invert(&self) -> Result<FracSeries, QSeriesError> {
        if self.terms.keys().next().is_some_and(|k| k.quadrupled < 0) {
            return Err(QSeriesError::NonUnitConstantTerm);
        }
        let c0 = self.terms.get(&QExp::ZERO).ok_or(QSeriesError::NonUnitConstantTerm)?;
        let c0_inv = monomial_inverse(c0).ok_or(QSeriesError::NonUnitConstantTerm)?;
        let mut out = FracSeries::monomial(self.order, QExp::ZERO, c0_inv.clone());
        for k in 1..self.order.quadrupled {
            let e = QExp::quarters(k);
            let mut conv = LaurentPoly::zero();
            for (&f, af) in self.terms.range(QExp::quarters(1)..=e) {
                if let Some(b) = out.terms.get(&(e - f)) {
                    conv = &conv + &(af * b);
                }
            }
            if !conv.is_zero() {
                out.add_at(e, -&(&c0_inv * &conv));
            }
        }
        Ok(out)
    }

    /// Multiply by `q^d`: exponents and order both shift by `d`.
    pub fn shift(&self, d: QExp) -> FracSeries {
        let terms = self.terms.iter().map(|(&e, c)| (e + d, c.clone())).collect();
        FracSeries { order: self.order + d, terms }
    }

    /// Restrict to a smaller order, discarding higher slots.
    pub fn truncate(&self, order: QExp) -> FracSeries {
        assert!(order <= self.order, "cannot extend a truncated series");
        let terms = self.terms.range(..order).map(|(&e, c)| (e, c.clone())).collect();
        FracSeries { order, terms }
    }

    /// Specialize every coefficient at `x = y = 1` (per-coefficient Euler
    /// numbers); zero values are dropped.
    pub fn specialize_ones(&self) -> BTreeMap<QExp, BigInt> {
        self.terms
            .iter()
            .filter_map(|(&e, c)| {
                let v = c.euler_number();
                (!v.is_zero()).then_some((e, v))
            })
            .collect()
    }

    /// Compare against `rhs` at every exponent below `order`, which must not
    /// exceed either operand's own order.
    pub fn equal_to_order(&self, rhs: &FracSeries, order: QExp) -> EqualityReport {
        assert!(
            order <= self.order && order <= rhs.order,
            "comparison order exceeds the exactness of an operand"
        );
        let keys: std::collections::BTreeSet<QExp> = self
            .terms
            .range(..order)
            .chain(rhs.terms.range(..order))
            .map(|(&e, _)| e)
            .collect();
        for e in keys {
            let lhs = self.terms.get(&e).cloned().unwrap_or_else(LaurentPoly::zero);
            let rhs_c = rhs.terms.get(&e).cloned().unwrap_or_else(LaurentPoly::zero);
            if lhs != rhs_c {
                return EqualityReport { order, first_mismatch: Some(Mismatch { exp: e, lhs, rhs: rhs_c }) };
            }
        }
        EqualityReport { order, first_mismatch: None }
    }

    /// JSON form: `{orderQuadrupled, terms: [[expQuadrupled, coeff], …]}` in
    /// ascending exponent order.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "orderQuadrupled": self.order.quadrupled,
            "terms": self.terms.iter()
                .map(|(&e, c)| serde_json::json!([e.quadrupled, c.to_json()]))
                .collect::<Vec<_>>(),
        })
    }
}

/// The inverse of `±x^a y^b`, `None` for anything else.
fn monomial_inverse(p: &LaurentPoly) -> Option<LaurentPoly> {
    if p.num_terms() != 1 {
        return None;
    }
    let ((a, b), c) = p.terms().next().expect("single term");
    if c == &BigInt::from(1) || c == &BigInt::from(-1) {
        Some(LaurentPoly::monomial(c.clone(), -a, -b))
    } else {
        None
    }
}

/// The first coefficient mismatch found by [`FracSeries::equal_to_order`].
#[derive(Clone, Debug)]
pub struct Mismatch {
    pub exp: QExp,
    pub lhs: LaurentPoly,
    pub rhs: LaurentPoly,
}

/// Outcome of a coefficientwise comparison up to an order.
#[derive(Clone, Debug)]
pub struct EqualityReport {
    pub order: QExp,
    pub first_mismatch: Option<Mismatch>,
}

impl EqualityReport {
    pub fn passed(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

/// One factor of an infinite product: a unit series together with its lead
/// exponent (the smallest positive exponent of `factor − 1`). Streams of
/// factors must present nondecreasing leads diverging to infinity, so a
/// truncated product needs only finitely many of them.
#[derive(Clone, Debug)]
pub struct ProductFactor {
    pub lead_exp: QExp,
    pub series: FracSeries,
}

impl ProductFactor {
    pub fn new(lead_exp: QExp, series: FracSeries) -> Self {
        ProductFactor { lead_exp, series }
    }

    /// The binomial factor `1 − m · q^e` at the given order.
    pub fn one_minus(m: LaurentPoly, e: QExp, order: QExp) -> Self {
        let one = FracSeries::one(order);
        ProductFactor { lead_exp: e, series: one.mul_one_minus(&m, e).truncate(order) }
    }
}

/// Multiply out a factor stream, truncated at `order`. Factors whose lead
/// exponent has reached the order are provably `1` below it, so the stream
/// is abandoned at the first such factor; a guard errors out if 10⁶ factors
/// pass without that happening.
pub fn product(
    factors: impl IntoIterator<Item = ProductFactor>,
    order: QExp,
) -> Result<FracSeries, QSeriesError> {
    let mut acc = FracSeries::one(order);
    let mut consumed: u32 = 0;
    for f in factors {
        if f.lead_exp >= order {
            return Ok(acc);
        }
        consumed += 1;
        if consumed > 1_000_000 {
            return Err(QSeriesError::NonDivergingLeadExponent);
        }
        debug_assert!(f.series.order >= order, "factor series is too coarse for this product");
        acc = acc.mul(&f.series);
    }
    Ok(acc)
}

/// The eta quotient `∏ᵢ η(q^{sᵢ})^{kᵢ}` with `η(q) = q^{1/24} ∏ (1 − qⁿ)`,
/// times an optional extra twist `q^{extra_eighths/8}`.
///
/// The fractional `1/24`- and `1/8`-exponents are accumulated exactly (in
/// units of `1/24` of a quarter step) and materialized only when the total
/// lands on the quarter grid; otherwise [`QSeriesError::UnrepresentablePrefactor`].
/// With `include_prefactor = false` only the products are expanded and the
/// twist is ignored.
pub fn eta_quotient(
    factors: &[(QExp, i64)],
    include_prefactor: bool,
    extra_eighths: i64,
    order: QExp,
) -> Result<FracSeries, QSeriesError> {
    let one = LaurentPoly::one();
    let mut s = FracSeries::one(order);
    for &(scale, k) in factors {
        assert!(scale.quadrupled > 0, "eta scale must be a positive exponent");
        let mut n: i64 = 1;
        while scale.quadrupled * n < order.quadrupled {
            let e = QExp::quarters(scale.quadrupled * n);
            for _ in 0..k.unsigned_abs() {
                s = if k > 0 { s.mul_one_minus(&one, e) } else { s.div_one_minus(&one, e) };
            }
            n += 1;
        }
    }
    if include_prefactor {
        // In 1/24-quarter units: η(q^s)^k contributes s·k, and q^{1/8} is 12.
        let total: i64 =
            factors.iter().map(|&(sc, k)| sc.quadrupled * k).sum::<i64>() + 12 * extra_eighths;
        if total % 24 != 0 {
            return Err(QSeriesError::UnrepresentablePrefactor);
        }
        s = s.shift(QExp::quarters(total / 24));
    }
    Ok(s)
}

/// The classical theta series exposed by the engine. The auxiliary variable
/// `t` is packed into the `x`-slot of the Laurent coefficients (half-integer
/// exponents allowed, `y` unused).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ThetaKind {
    /// `θ₀₁ = Σ_n (−1)ⁿ q^{n²/2} tⁿ`.
    Theta01,
    /// `θ₁₁`; its `q^{1/8}` prefactor leaves the quarter grid, so the raw
    /// series is not representable here — see [`theta11_normalized`].
    Theta11,
}

/// The theta series of the given kind, truncated at `order`.
pub fn theta(kind: ThetaKind, order: QExp) -> Result<FracSeries, QSeriesError> {
    match kind {
        ThetaKind::Theta01 => {
            let mut s = FracSeries::zero(order);
            let mut n: i64 = 0;
            loop {
                let e = QExp::quarters(2 * n * n);
                if e >= order {
                    break;
                }
                let sign = if n % 2 == 0 { 1 } else { -1 };
                for m in [n, -n] {
                    s.add_at(e, LaurentPoly::monomial(sign, HalfExp::int(m), HalfExp::ZERO));
                    if n == 0 {
                        break;
                    }
                }
                n += 1;
            }
            Ok(s)
        }
        ThetaKind::Theta11 => Err(QSeriesError::UnrepresentablePrefactor),
    }
}

/// `q^{−1/8} θ₁₁ = Σ_n (−1)ⁿ q^{n(n+1)/2} t^{n+1/2}`, the representative of
/// `θ₁₁` on the quarter grid.
///
/// Sign convention: the `n = 0` term is `+t^{1/2}`, which makes the series
/// odd under `t ↦ t⁻¹` (the `n ↦ −1−n` symmetry of the exponent).
pub fn theta11_normalized(order: QExp) -> FracSeries {
    let mut s = FracSeries::zero(order);
    let mut n: i64 = 0;
    loop {
        let e = QExp::quarters(2 * n * (n + 1));
        if e >= order {
            break;
        }
        let sign = if n % 2 == 0 { 1 } else { -1 };
        // The summands n and −1−n share a q-exponent and carry opposite
        // signs on mirrored t-powers, so each n ≥ 0 contributes a pair.
        s.add_at(e, LaurentPoly::monomial(sign, HalfExp::halves(2 * n + 1), HalfExp::ZERO));
        s.add_at(e, LaurentPoly::monomial(-sign, HalfExp::halves(-(2 * n + 1)), HalfExp::ZERO));
        n += 1;
    }
    s
}
