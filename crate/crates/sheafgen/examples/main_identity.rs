//! Verify the engine's central identity: the cone sum over lattice points
//! equals the factored infinite product, coefficient by coefficient.
//!
//! The series `Σ e(M(0, ξ, χ)) q^{(ξ²)/4}` collects the virtual Hodge
//! polynomials of moduli of one-dimensional sheaves on the `e = −1`
//! surface. It has two very different presentations — an indefinite double
//! sum over two opposite cones, and an eta/theta-style product — and the
//! point of the engine is that it can check their equality exactly rather
//! than take it on faith.
//!
//! ```text
//! cargo run --example main_identity
//! ```

use sheafgen::genfun::{one_dim_product, one_dim_sum, verify, Identity};
use sheafgen::qseries::QExp;

fn main() {
    let order = QExp::int(6);

    let sum = one_dim_sum(order).expect("the cone pipeline divides exactly");
    let product = one_dim_product(order);

    let report = sum.equal_to_order(&product, order);
    match report.first_mismatch {
        None => println!("sum and product agree on every coefficient below q^{order}"),
        Some(m) => {
            println!("MISMATCH at q^{}:\n  sum     = {}\n  product = {}", m.exp, m.lhs, m.rhs);
            return;
        }
    }

    // the coefficient at q^{(ξ²)/4} is the e-polynomial of a moduli space
    // of dimension (ξ²) + 1
    println!("\nfirst few moduli coefficients:");
    for (e, poly) in product.terms().take(3) {
        println!("  (xi^2) = {}: dim {}, {} terms", e.quadrupled, e.quadrupled + 1, poly.num_terms());
        println!("    {poly}");
    }

    // the same comparison is packaged as a driver that times itself and
    // serializes to JSON
    let packaged = verify(Identity::Main, order).expect("driver runs");
    println!("\ndriver report: {}", packaged.to_json());
}
