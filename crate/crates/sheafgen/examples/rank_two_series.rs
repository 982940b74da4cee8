//! The two rank-two moduli series and their combined cone.
//!
//! `Σ e(M(2, C₀, n)) q^{−n+3/4}` and `Σ e(M(2, C₀−g, n)) q^{−n+1/4}` are
//! each an indefinite cone sum; interleaving their index sets gives a
//! single cone that is also the one-dimensional series under a different
//! parametrization. Both facts are checked here coefficient by
//! coefficient.
//!
//! ```text
//! cargo run --example rank_two_series
//! ```

use sheafgen::genfun::{one_dim_sum, rank2_combined, rank2_series, Rank2Variant};
use sheafgen::qseries::QExp;

fn main() {
    let order = QExp::int(6);

    let c0 = rank2_series(Rank2Variant::C0, order).unwrap();
    let c0mg = rank2_series(Rank2Variant::C0MinusG, order).unwrap();
    let combined = rank2_combined(order).unwrap();

    // the two determinants populate disjoint slots: (xi^2) = 3 mod 4 for
    // C0, and 1 mod 4 for C0 - g
    let slots = |s: &sheafgen::qseries::FracSeries| -> Vec<i64> {
        s.terms().map(|(e, _)| e.quadrupled).collect()
    };
    println!("C0      slots: {:?}", slots(&c0));
    println!("C0 - g  slots: {:?}", slots(&c0mg));

    let split = c0.add(&c0mg);
    let report = combined.equal_to_order(&split, order);
    assert!(report.first_mismatch.is_none());
    println!("\ncombined cone = C0 series + (C0 - g) series below q^{order}");

    let one_dim = one_dim_sum(order).unwrap();
    let report = combined.equal_to_order(&one_dim, order);
    assert!(report.first_mismatch.is_none());
    println!("combined cone = one-dimensional series below q^{order}");

    // dimension-4 spot check: the coefficient at (xi^2) = 3 is shared
    let a = c0.coeff(QExp::quarters(3)).unwrap();
    let b = one_dim.coeff(QExp::quarters(3)).unwrap();
    assert_eq!(a, b);
    println!("\nshared dim-4 coefficient:\n  {a}");
}
