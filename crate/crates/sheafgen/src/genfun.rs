//! The engine's catalog of generating functions, the identity-verification
//! drivers, and Hodge-table extraction.
//!
//! Everything here is built from a handful of ingredients:
//!
//! * the Göttsche-type factor [`z_factor`] and the Hilbert-scheme product
//!   [`hilb_series`] it generates;
//! * *cone sums*: indefinite double sums over two opposite lattice cones
//!   with opposite signs ([`one_dim_sum`], [`rank2_series`],
//!   [`rank2_combined`], [`e0_case2`]), which share one pipeline — bracket
//!   enumeration, the `(x−1)²(y−1)²` prefactor, a squared product of
//!   `z`-factors, and a per-coefficient exact division by `xy − 1`;
//! * an indefinite theta function in `(q, t)` with equal sum and product
//!   forms ([`indefinite_theta`]), whose substitution `t ↦ xy`,
//!   `q ↦ x²y²q` turns the cone sum into the factored infinite product
//!   [`one_dim_product`]; the intermediate rewriting steps are materialized
//!   by [`proof_chain`].
//!
//! The coefficient of `q^{(ξ²)/4}` in the one-dimensional series — and of
//! the analogous slots of the two `e = 0` series — is the virtual Hodge
//! polynomial of a moduli space of dimension `(ξ²) + 1`; [`moduli_table`]
//! extracts those coefficients and validates each one as a full Hodge table
//! (symmetry, duality, nonnegativity, `h^{0,0} = 1`). The `xy − 1` division
//! failing, or any table validation failing, signals an enumeration bug and
//! is surfaced as a hard error rather than silently absorbed.

use crate::laurent::{HalfExp, HodgeTable, LaurentError, LaurentPoly};
use crate::qseries::{
    eta_quotient, product, FracSeries, Mismatch, ProductFactor, QExp, QSeriesError,
};
use crate::surface::{RankReduction, SurfaceError, SurfaceModel};
use std::fmt;
use std::time::Instant;

/// Errors from series construction and table extraction.
#[derive(Clone, PartialEq, Debug)]
pub enum GenError {
    Laurent(LaurentError),
    Series(QSeriesError),
    Surface(SurfaceError),
    /// A moduli coefficient whose constant Hodge number is not 1; the
    /// extracted polynomial cannot belong to an irreducible moduli space.
    LeadingHodgeNumberNotOne { q_exp_quadrupled: i64 },
}

impl fmt::Display for GenError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenError::Laurent(e) => write!(f, "coefficient arithmetic failed: {e}"),
            GenError::Series(e) => write!(f, "series arithmetic failed: {e}"),
            GenError::Surface(e) => write!(f, "lattice arithmetic failed: {e}"),
            GenError::LeadingHodgeNumberNotOne { q_exp_quadrupled } => write!(
                f,
                "coefficient at quadrupled exponent {q_exp_quadrupled} has h^(0,0) != 1"
            ),
        }
    }
}

impl std::error::Error for GenError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            GenError::Laurent(e) => Some(e),
            GenError::Series(e) => Some(e),
            GenError::Surface(e) => Some(e),
            GenError::LeadingHodgeNumberNotOne { .. } => None,
        }
    }
}

impl From<LaurentError> for GenError {
    fn from(e: LaurentError) -> Self {
        GenError::Laurent(e)
    }
}

impl From<QSeriesError> for GenError {
    fn from(e: QSeriesError) -> Self {
        GenError::Series(e)
    }
}

impl From<SurfaceError> for GenError {
    fn from(e: SurfaceError) -> Self {
        GenError::Surface(e)
    }
}

/// `c · x^{x_doubled/2} y^{y_doubled/2}`.
fn mono(c: i64, x_doubled: i64, y_doubled: i64) -> LaurentPoly {
    LaurentPoly::monomial(c, HalfExp { doubled: x_doubled }, HalfExp { doubled: y_doubled })
}

/// `(xy)^k`.
fn xy_pow(k: i64) -> LaurentPoly {
    mono(1, 2 * k, 2 * k)
}

/// The virtual Hodge polynomial of an elliptic curve, `(1 − x)(1 − y)`.
pub fn curve_e_poly() -> LaurentPoly {
    LaurentPoly::from_doubled(&[(0, 0, 1), (2, 0, -1), (0, 2, -1), (2, 2, 1)])
}

/// The virtual Hodge polynomial of the surface, `(1 + xy)(1 − x)(1 − y)`.
pub fn surface_e_poly() -> LaurentPoly {
    &LaurentPoly::from_doubled(&[(0, 0, 1), (2, 2, 1)]) * &curve_e_poly()
}

/// `(x − 1)²(y − 1)²`, the universal prefactor of the cone series — also the
/// leading moduli coefficient itself.
fn prefactor_squared() -> LaurentPoly {
    &curve_e_poly() * &curve_e_poly()
}

fn xy_minus_one() -> LaurentPoly {
    LaurentPoly::from_doubled(&[(2, 2, 1), (0, 0, -1)])
}

/// The rational factor
/// `Z(u) = (1−xu)(1−yu)(1−x²yu)(1−xy²u) / [(1−u)(1−xyu)²(1−x²y²u)]`
/// expanded at `u = u_xy · q^{u_q}`, `u_q > 0`. Its linear coefficient is
/// the surface polynomial `(1 + xy)(1 − x)(1 − y)`, and it collapses to the
/// constant 1 at `x = y = 1`.
pub fn z_factor(u_xy: &LaurentPoly, u_q: QExp, order: QExp) -> FracSeries {
    assert!(u_q.quadrupled > 0, "the expansion variable needs a positive q-exponent");
    let f = |a: i64, b: i64| u_xy * &mono(1, 2 * a, 2 * b);
    FracSeries::one(order)
        .mul_one_minus(&f(1, 0), u_q)
        .mul_one_minus(&f(0, 1), u_q)
        .mul_one_minus(&f(2, 1), u_q)
        .mul_one_minus(&f(1, 2), u_q)
        .div_one_minus(&f(0, 0), u_q)
        .div_one_minus(&f(1, 1), u_q)
        .div_one_minus(&f(1, 1), u_q)
        .div_one_minus(&f(2, 2), u_q)
}

/// The exponent step of the Hilbert-scheme series: `qⁿ` or `q^{n/2}`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum QStep {
    Whole,
    Half,
}

impl QStep {
    pub fn quadrupled(self) -> i64 {
        match self {
            QStep::Whole => 4,
            QStep::Half => 2,
        }
    }
}

/// The Hilbert-scheme series `Σ_n e(Hilbⁿ) q^{n·step}`, realized as the
/// infinite product `∏_{a>0} Z((xy)^{a−1} · q^{a·step})`.
pub fn hilb_series(order: QExp, step: QStep) -> FracSeries {
    let sq = step.quadrupled();
    let factors = (1i64..).map(|a| {
        let e = QExp::quarters(a * sq);
        ProductFactor::new(e, z_factor(&xy_pow(a - 1), e, order))
    });
    product(factors, order).expect("factor leads grow linearly, so the stream diverges")
}

/// The squared tail `∏_{a≥1} Z((xy)^{2a−1} · qᵃ)²` shared by every cone
/// series.
fn z_product_squared(order: QExp) -> FracSeries {
    let factors = (1i64..).map(|a| {
        let e = QExp::int(a);
        let z = z_factor(&xy_pow(2 * a - 1), e, order);
        ProductFactor::new(e, z.mul(&z))
    });
    product(factors, order).expect("factor leads grow linearly, so the stream diverges")
}

/// The five cone brackets. Every term has the shape
/// `± q^{uv/4} (xy)^{(uv+u)/2}` with `v` odd ranging over `±(2a+1)`; the
/// kinds differ only in which arithmetic progression `u` runs through.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum ConeKind {
    /// `u` over all odd values; the one-dimensional moduli series.
    OneDim,
    /// Same index set as `OneDim`, but enumerated through the combined
    /// rank-two parametrization; kept as a separate loop so their equality
    /// is verified rather than structural.
    Rank2Combined,
    /// `u ≡ ±3 (mod 4)` tied to the parity of `a`; determinant `C₀`.
    Rank2C0,
    /// `u ≡ ±1 (mod 4)` tied to the parity of `a`; determinant `C₀ − g`.
    Rank2C0MinusG,
    /// `u` over nonzero multiples of 4; the second `e = 0` family.
    E0Case2,
}

impl ConeKind {
    /// The smallest |u| the kind can emit; bounds the `a` loop.
    fn min_abs_u(self) -> i64 {
        match self {
            ConeKind::E0Case2 => 4,
            _ => 1,
        }
    }

    /// `(start, step)` of the ascending `u`-progression in the cone with
    /// both factors positive, for `v = 2a + 1`, `a ≥ 0`.
    fn positive_u(self, a: i64) -> (i64, i64) {
        match self {
            ConeKind::OneDim | ConeKind::Rank2Combined => (1, 2),
            // u = 2n+1 over n ≥ 0 with n ≡ a (mod 2)
            ConeKind::Rank2C0MinusG => (2 * (a % 2) + 1, 4),
            // u = 2m+1 over m ≥ 0 with m ≢ a (mod 2)
            ConeKind::Rank2C0 => (2 * ((a + 1) % 2) + 1, 4),
            ConeKind::E0Case2 => (4, 4),
        }
    }

    /// `(start, step)` of the descending `u`-progression in the mirrored
    /// cone, for `v = 2a + 1`, `a ≤ −1`.
    fn negative_u(self, a: i64) -> (i64, i64) {
        match self {
            ConeKind::OneDim | ConeKind::Rank2Combined => (-1, -2),
            // u = 2n+1 over n ≤ −1 with n ≡ a (mod 2)
            ConeKind::Rank2C0MinusG => {
                if a.rem_euclid(2) == 1 {
                    (-1, -4)
                } else {
                    (-3, -4)
                }
            }
            // u = 2m+1 over m ≤ −1 with m ≢ a (mod 2)
            ConeKind::Rank2C0 => {
                if a.rem_euclid(2) == 0 {
                    (-1, -4)
                } else {
                    (-3, -4)
                }
            }
            ConeKind::E0Case2 => (-4, -4),
        }
    }
}

/// Enumerate one cone bracket: the positive-cone terms with sign `+`, the
/// mirrored-cone terms with sign `−`. Both cones produce strictly positive
/// q-exponents `uv/4`, and `uv + u = u(v+1)` is always even, so every
/// coefficient is an integral power of `xy`.
fn cone_bracket(kind: ConeKind, order: QExp) -> FracSeries {
    let oq = order.quadrupled;
    let mut terms: Vec<(QExp, LaurentPoly)> = Vec::new();
    let mut push = |sign: i64, u: i64, v: i64| {
        let w = u * v + u;
        terms.push((QExp::quarters(u * v), mono(sign, w, w)));
    };
    let mut a = 0i64;
    loop {
        let v = 2 * a + 1;
        if v * kind.min_abs_u() >= oq {
            break;
        }
        let (mut u, step) = kind.positive_u(a);
        while u * v < oq {
            push(1, u, v);
            u += step;
        }
        a += 1;
    }
    let mut a = -1i64;
    loop {
        let v = 2 * a + 1;
        if -v * kind.min_abs_u() >= oq {
            break;
        }
        let (mut u, step) = kind.negative_u(a);
        while u * v < oq {
            push(-1, u, v);
            u += step;
        }
        a -= 1;
    }
    FracSeries::from_terms(order, terms)
}

/// The shared cone pipeline: bracket × `(x−1)²(y−1)²` × `∏ Z²`, then an
/// exact per-coefficient division by `xy − 1`. The bracket alone is not
/// divisible; divisibility of the aggregate is what makes each coefficient
/// a genuine Hodge polynomial, so a failure here means an enumeration bug.
fn cone_series(kind: ConeKind, order: QExp) -> Result<FracSeries, GenError> {
    let with_pref = cone_bracket(kind, order).scale_poly(&prefactor_squared());
    let full = with_pref.mul(&z_product_squared(order));
    let d = xy_minus_one();
    Ok(full.map_coeffs(|c| c.exact_div(&d))?)
}

/// The one-dimensional moduli series `Σ e(M(0,ξ,χ)) q^{(ξ²)/4}` over classes
/// with `(ξ·f₀) = 1`, in its cone-sum form.
pub fn one_dim_sum(order: QExp) -> Result<FracSeries, GenError> {
    cone_series(ConeKind::OneDim, order)
}

/// Which rank-two determinant a [`rank2_series`] carries.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Rank2Variant {
    /// `Σ e(M(2, C₀, n)) q^{−n+3/4}`.
    C0,
    /// `Σ e(M(2, C₀−g, n)) q^{−n+1/4}`.
    C0MinusG,
}

/// One of the two rank-two moduli series.
pub fn rank2_series(variant: Rank2Variant, order: QExp) -> Result<FracSeries, GenError> {
    cone_series(
        match variant {
            Rank2Variant::C0 => ConeKind::Rank2C0,
            Rank2Variant::C0MinusG => ConeKind::Rank2C0MinusG,
        },
        order,
    )
}

/// The sum of the two rank-two series, written as a single cone sum; equals
/// `rank2_series(C0) + rank2_series(C0MinusG)` coefficient by coefficient.
pub fn rank2_combined(order: QExp) -> Result<FracSeries, GenError> {
    cone_series(ConeKind::Rank2Combined, order)
}

/// The second `e = 0` family, `Σ e(M(0, 2g+nC₀, 3)) qⁿ`, as a cone sum over
/// integer q-exponents.
pub fn e0_case2(order: QExp) -> Result<FracSeries, GenError> {
    cone_series(ConeKind::E0Case2, order)
}

/// The one-dimensional moduli series in its factored product form:
/// `(x−1)²(y−1)² q^{1/4} ∏_{n>0} (1−x^{−1}Vⁿ)²(1−y^{−1}Vⁿ)²(1−xVⁿ)²(1−yVⁿ)²
/// / [(1−(xy)^{−1}V^{n/2})(1−V^{n/2})²(1−xyV^{n/2})]` with `V = x²y²q`.
pub fn one_dim_product(order: QExp) -> FracSeries {
    let inner = order - QExp::quarters(1);
    if inner.quadrupled <= 0 {
        return FracSeries::zero(order);
    }
    let mut s = FracSeries::monomial(inner, QExp::ZERO, prefactor_squared());
    let mut n = 1i64;
    while 2 * n < inner.quadrupled {
        let full = QExp::int(n);
        let half = QExp::quarters(2 * n);
        for (dx, dy) in [(-1, 0), (0, -1), (1, 0), (0, 1)] {
            let m = mono(1, 4 * n + 2 * dx, 4 * n + 2 * dy);
            s = s.mul_one_minus(&m, full).mul_one_minus(&m, full);
        }
        s = s
            .div_one_minus(&xy_pow(n - 1), half)
            .div_one_minus(&xy_pow(n), half)
            .div_one_minus(&xy_pow(n), half)
            .div_one_minus(&xy_pow(n + 1), half);
        n += 1;
    }
    s.shift(QExp::quarters(1))
}

/// One materialized line of the rewriting chain that turns the cone sum
/// into the factored product.
#[derive(Clone, Debug)]
pub struct ChainLine {
    pub label: &'static str,
    pub series: FracSeries,
}

/// The two middle lines of the chain: the substituted theta product, first
/// still carrying the `1/(xy−1)` normalization, then with it cancelled.
fn chain_product_line(order: QExp, carry_normalization: bool) -> Result<FracSeries, GenError> {
    let inner = order - QExp::quarters(1);
    if inner.quadrupled <= 0 {
        return Ok(FracSeries::zero(order));
    }
    let seed = if carry_normalization {
        // ((xy)^{1/2} − (xy)^{−1/2}) times the (xy)^{1/2} content of the
        // leading (x²y²q)^{1/4} multiplies out to exactly xy − 1; the
        // 1/(xy−1) itself is divided back out per coefficient at the end.
        &prefactor_squared() * &xy_minus_one()
    } else {
        prefactor_squared()
    };
    let mut s = FracSeries::monomial(inner, QExp::ZERO, seed);
    let mut n = 1i64;
    while 2 * n < inner.quadrupled {
        let full = QExp::int(n);
        let half = QExp::quarters(2 * n);
        let between = QExp::quarters(4 * n - 2);
        for _ in 0..4 {
            s = s.mul_one_minus(&xy_pow(2 * n), full);
        }
        for _ in 0..2 {
            s = s.div_one_minus(&xy_pow(n), half);
        }
        s = s
            .mul_one_minus(&xy_pow(2 * n + 1), full)
            .mul_one_minus(&xy_pow(2 * n - 1), full)
            .div_one_minus(&xy_pow(2 * n), between)
            .div_one_minus(&xy_pow(2 * n - 2), between);
        n += 1;
    }
    s = s.mul(&z_product_squared(inner));
    if carry_normalization {
        let d = xy_minus_one();
        s = s.map_coeffs(|c| c.exact_div(&d))?;
    }
    Ok(s.shift(QExp::quarters(1)))
}

/// The four lines of the sum-to-product rewriting, each materialized from
/// its own displayed expression; consecutive lines are equal as series.
pub fn proof_chain(order: QExp) -> Result<Vec<ChainLine>, GenError> {
    Ok(vec![
        ChainLine { label: "cone sum", series: one_dim_sum(order)? },
        ChainLine {
            label: "theta product, normalized",
            series: chain_product_line(order, true)?,
        },
        ChainLine { label: "theta product, reduced", series: chain_product_line(order, false)? },
        ChainLine { label: "split product", series: one_dim_product(order) },
    ])
}

/// The two sides of the indefinite theta identity.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ThetaSide {
    /// `Σ_{n,m≥0} q^{(n+1/2)(m+1/2)} t^{n+1/2} − Σ_{n,m<0} (same)`.
    Sum,
    /// `η(q)⁴/η(q^{1/2})² · q^{1/8} · (t^{1/2}−t^{−1/2}) ·
    /// ∏_{n>0} (1−qⁿt)(1−qⁿt⁻¹) / [(1−q^{n−1/2}t)(1−q^{n−1/2}t⁻¹)]`.
    Product,
}

/// The indefinite theta function in `(q, t)`, with `t` packed into the
/// `x`-slot of the coefficients (half-integer exponents, `y` unused).
pub fn indefinite_theta(side: ThetaSide, order: QExp) -> FracSeries {
    match side {
        ThetaSide::Sum => {
            let oq = order.quadrupled;
            let mut terms = Vec::new();
            // u = 2n+1, v = 2m+1: exponent uv/4, t-power u/2
            let mut u = 1i64;
            while u < oq {
                let mut v = 1i64;
                while u * v < oq {
                    terms.push((
                        QExp::quarters(u * v),
                        LaurentPoly::monomial(1, HalfExp::halves(u), HalfExp::ZERO),
                    ));
                    v += 2;
                }
                u += 2;
            }
            let mut u = -1i64;
            while -u < oq {
                let mut v = -1i64;
                while u * v < oq {
                    terms.push((
                        QExp::quarters(u * v),
                        LaurentPoly::monomial(-1, HalfExp::halves(u), HalfExp::ZERO),
                    ));
                    v -= 2;
                }
                u -= 2;
            }
            FracSeries::from_terms(order, terms)
        }
        ThetaSide::Product => {
            let mut s = eta_quotient(&[(QExp::int(1), 4), (QExp::quarters(2), -2)], true, 1, order)
                .expect("the combined prefactor lands on the quarter grid");
            let t = |k: i64| LaurentPoly::monomial(1, HalfExp::int(k), HalfExp::ZERO);
            let mut n = 1i64;
            while 4 * n - 2 < order.quadrupled {
                let full = QExp::int(n);
                let half = QExp::quarters(4 * n - 2);
                s = s
                    .mul_one_minus(&t(1), full)
                    .mul_one_minus(&t(-1), full)
                    .div_one_minus(&t(1), half)
                    .div_one_minus(&t(-1), half);
                n += 1;
            }
            let zero_factor = LaurentPoly::from_doubled(&[(1, 0, 1), (-1, 0, -1)]);
            s.scale_poly(&zero_factor).truncate(order)
        }
    }
}

/// The two forms of the first `e = 0` family.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum E0Case1Side {
    /// `(x−1)(y−1) · Σ e(Hilbⁿ) q^{n/2}`, the defining sum.
    SumDefinition,
    /// `(x−1)(y−1)` times the displayed half-step product.
    Product,
}

/// The first `e = 0` family, `Σ e(M(0, g+nC₀, 1)) q^{n/2}`.
pub fn e0_case1(side: E0Case1Side, order: QExp) -> FracSeries {
    match side {
        E0Case1Side::SumDefinition => {
            hilb_series(order, QStep::Half).scale_poly(&curve_e_poly())
        }
        E0Case1Side::Product => {
            let mut s = FracSeries::one(order);
            let mut n = 1i64;
            while 2 * n < order.quadrupled {
                let e = QExp::quarters(2 * n);
                s = s
                    .mul_one_minus(&mono(1, 2 * n - 2, 2 * n), e)
                    .mul_one_minus(&mono(1, 2 * n, 2 * n - 2), e)
                    .mul_one_minus(&mono(1, 2 * n + 2, 2 * n), e)
                    .mul_one_minus(&mono(1, 2 * n, 2 * n + 2), e)
                    .div_one_minus(&xy_pow(n - 1), e)
                    .div_one_minus(&xy_pow(n), e)
                    .div_one_minus(&xy_pow(n), e)
                    .div_one_minus(&xy_pow(n + 1), e);
                n += 1;
            }
            s.scale_poly(&curve_e_poly())
        }
    }
}

/// The moduli families with tabulated Hodge data.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TableFamily {
    /// One-dimensional sheaves on the `e = −1` surface; rows at odd
    /// quadrupled exponents `(ξ²)`.
    OneDimensional,
    /// `M(0, g+nC₀, 1)` on the `e = 0` surface; rows at `q^{n/2}`.
    E0Case1,
    /// `M(0, 2g+nC₀, 3)` on the `e = 0` surface; rows at integer `qⁿ`.
    E0Case2,
}

/// One extracted moduli coefficient: its lattice invariant, its virtual
/// Hodge polynomial, and the validated Hodge table at dimension `(ξ²)+1`.
#[derive(Clone, Debug)]
pub struct ModuliTableRow {
    /// `(ξ²)`, which is also the quadrupled q-exponent of the row.
    pub xi_sq: i64,
    pub e_poly: LaurentPoly,
    pub hodge: HodgeTable,
}

impl ModuliTableRow {
    pub fn q_exp_quadrupled(&self) -> i64 {
        self.xi_sq
    }

    pub fn dim(&self) -> usize {
        self.hodge.dim
    }
}

/// Extract one row per populated q-exponent of the family's product form,
/// validating every coefficient as the Hodge table of a smooth projective
/// variety of dimension `(ξ²) + 1` with `h^{0,0} = 1`.
pub fn moduli_table(family: TableFamily, max_dim: i64) -> Result<Vec<ModuliTableRow>, GenError> {
    assert!(max_dim >= 1, "table extraction needs a positive dimension bound");
    let order = QExp::quarters(max_dim);
    let series = match family {
        TableFamily::OneDimensional => one_dim_product(order),
        TableFamily::E0Case1 => e0_case1(E0Case1Side::Product, order),
        TableFamily::E0Case2 => e0_case2(order)?,
    };
    let mut rows = Vec::new();
    for (e, c) in series.terms() {
        let dim = usize::try_from(e.quadrupled + 1).expect("family exponents are nonnegative");
        let hodge = HodgeTable::from_e_polynomial(c, dim)?;
        if hodge.h(0, 0) != 1 {
            return Err(GenError::LeadingHodgeNumberNotOne { q_exp_quadrupled: e.quadrupled });
        }
        rows.push(ModuliTableRow { xi_sq: e.quadrupled, e_poly: c.clone(), hodge });
    }
    Ok(rows)
}

/// One resolved higher-rank class: its reduction descriptor and the virtual
/// Hodge polynomial looked up through it.
#[derive(Clone, Debug)]
pub struct RankReductionRow {
    pub chi: i64,
    pub reduction: RankReduction,
    pub e_poly: LaurentPoly,
}

/// Resolve `M(r, d1·C₀ + d2·g, χ)` on the `e = −1` surface for each `χ`:
/// even rank reads the one-dimensional series at `q^{(ξ'²)/4}`, odd rank
/// multiplies the Hilbert-scheme coefficient by the curve polynomial. A
/// negative reduced invariant means the moduli space is empty (zero
/// polynomial); an invariant at or beyond the truncation order is an error.
pub fn rank_reduction_table(
    r: i64,
    d1: i64,
    d2: i64,
    chis: &[i64],
    order: QExp,
) -> Result<Vec<RankReductionRow>, GenError> {
    let x = SurfaceModel::new(-1).expect("e = -1 is a supported invariant");
    let one_dim = one_dim_product(order);
    let hilb = hilb_series(order, QStep::Whole);
    let curve = curve_e_poly();
    chis.iter()
        .map(|&chi| {
            let reduction = x.reduce_rank(r, d1, d2, chi)?;
            let e_poly = match reduction {
                RankReduction::OneDimensional { xi_sq, .. } => {
                    if xi_sq < 0 {
                        LaurentPoly::zero()
                    } else {
                        one_dim.coeff(QExp::quarters(xi_sq))?
                    }
                }
                RankReduction::HilbTimesJacobian { n } => {
                    if n < 0 {
                        LaurentPoly::zero()
                    } else {
                        &hilb.coeff(QExp::int(n))? * &curve
                    }
                }
            };
            Ok(RankReductionRow { chi, reduction, e_poly })
        })
        .collect()
}

/// The verifiable series identities.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Identity {
    /// Cone sum = factored product for the one-dimensional series.
    Main,
    /// Indefinite theta: lattice sum = eta/theta product.
    Theta,
    /// The combined rank-two cone = the sum of its two variants.
    R2,
    /// First `e = 0` family: defining sum = displayed product.
    E0,
    /// Every consecutive pair of [`proof_chain`] lines.
    Chain,
}

impl Identity {
    pub const ALL: [Identity; 5] =
        [Identity::Main, Identity::Theta, Identity::R2, Identity::E0, Identity::Chain];

    pub fn name(self) -> &'static str {
        match self {
            Identity::Main => "main",
            Identity::Theta => "theta",
            Identity::R2 => "r2",
            Identity::E0 => "e0",
            Identity::Chain => "chain",
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Outcome of one identity verification.
#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub identity: Identity,
    pub order: QExp,
    pub first_mismatch: Option<Mismatch>,
    pub wall_time_ms: u64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.first_mismatch.is_none()
    }

    /// JSON form:
    /// `{identity, order, status, firstMismatch?, wallTimeMs}`.
    pub fn to_json(&self) -> serde_json::Value {
        let mut v = serde_json::json!({
            "identity": self.identity.name(),
            "order": self.order.to_string(),
            "status": if self.passed() { "PASS" } else { "FAIL" },
            "wallTimeMs": self.wall_time_ms,
        });
        if let Some(m) = &self.first_mismatch {
            v["firstMismatch"] = serde_json::json!({
                "expQuadrupled": m.exp.quadrupled,
                "lhs": m.lhs.to_json(),
                "rhs": m.rhs.to_json(),
            });
        }
        v
    }
}

/// Verify one identity coefficient-by-coefficient below `order`.
pub fn verify(identity: Identity, order: QExp) -> Result<VerificationReport, GenError> {
    let start = Instant::now();
    let first_mismatch = match identity {
        Identity::Main => one_dim_sum(order)?
            .equal_to_order(&one_dim_product(order), order)
            .first_mismatch,
        Identity::Theta => indefinite_theta(ThetaSide::Sum, order)
            .equal_to_order(&indefinite_theta(ThetaSide::Product, order), order)
            .first_mismatch,
        Identity::R2 => {
            let split = rank2_series(Rank2Variant::C0, order)?
                .add(&rank2_series(Rank2Variant::C0MinusG, order)?);
            rank2_combined(order)?.equal_to_order(&split, order).first_mismatch
        }
        Identity::E0 => e0_case1(E0Case1Side::SumDefinition, order)
            .equal_to_order(&e0_case1(E0Case1Side::Product, order), order)
            .first_mismatch,
        Identity::Chain => {
            let lines = proof_chain(order)?;
            lines
                .windows(2)
                .find_map(|w| w[0].series.equal_to_order(&w[1].series, order).first_mismatch)
        }
    };
    Ok(VerificationReport {
        identity,
        order,
        first_mismatch,
        wall_time_ms: u64::try_from(start.elapsed().as_millis()).unwrap_or(u64::MAX),
    })
}
