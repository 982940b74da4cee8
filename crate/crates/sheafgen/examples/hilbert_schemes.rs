//! Expand the Hilbert-scheme generating function and inspect its
//! coefficients.
//!
//! The series `Σ_n e(Hilbⁿ) qⁿ` is an infinite product of rational factors,
//! one per `a ≥ 1`. Its coefficients are the virtual Hodge polynomials of
//! the Hilbert schemes of points of the surface; since the surface fibers
//! over an elliptic curve, every one of them vanishes at `x = y = 1`.
//!
//! ```text
//! cargo run --example hilbert_schemes
//! ```

use sheafgen::genfun::{hilb_series, QStep};
use sheafgen::qseries::QExp;

fn main() {
    let order = QExp::int(5);
    let series = hilb_series(order, QStep::Whole);

    println!("e(Hilb^n) for n < 5:\n");
    for (e, poly) in series.terms() {
        println!("  n = {e}: {} terms", poly.num_terms());
        println!("    {poly}");
        println!("    euler number: {}", poly.euler_number());
    }

    // the whole series collapses to the constant 1 at x = y = 1
    let collapsed = series.specialize_ones();
    print!("\nat x = y = 1 the series is:");
    for (e, v) in &collapsed {
        print!(" {v}*q^{e}");
    }
    println!();

    // the same coefficients reappear on the half-integer grid when the
    // exponent step is halved
    let half = hilb_series(QExp::int(3), QStep::Half);
    println!("\nhalf-step slots below q^3:");
    for (e, poly) in half.terms() {
        println!("  q^{e}: {} terms", poly.num_terms());
    }
}
