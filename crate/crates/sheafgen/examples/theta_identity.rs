//! The indefinite theta function in `(q, t)` and its product form.
//!
//! The sum side runs over pairs of odd positive (resp. odd negative)
//! integers `(u, v)`, contributing `± q^{uv/4} t^{u/2}`; the product side
//! is an eta quotient times four families of binomial factors and the zero
//! factor `t^{1/2} − t^{−1/2}`. Substituting `t ↦ xy`, `q ↦ x²y²q` turns
//! this identity into the sum-to-product rewriting of the main series —
//! see the `rewriting_chain` example.
//!
//! ```text
//! cargo run --example theta_identity
//! ```

use sheafgen::genfun::{indefinite_theta, ThetaSide};
use sheafgen::qseries::QExp;

fn main() {
    let order = QExp::int(5);
    let sum = indefinite_theta(ThetaSide::Sum, order);
    let product = indefinite_theta(ThetaSide::Product, order);

    println!("lattice-sum coefficients below q^2 (t packed into the x slot):");
    for (e, poly) in sum.terms().take_while(|(e, _)| e.quadrupled < 8) {
        println!("  q^{e}: {poly}");
    }

    let report = sum.equal_to_order(&product, order);
    match report.first_mismatch {
        None => println!("\nsum and product agree on every coefficient below q^{order}"),
        Some(m) => println!(
            "\nMISMATCH at q^{}:\n  sum     = {}\n  product = {}",
            m.exp, m.lhs, m.rhs
        ),
    }

    // every populated exponent uv/4 has odd uv, so the quarter-grid slots
    // with even numerator stay empty
    let populated: Vec<i64> = sum.terms().map(|(e, _)| e.quadrupled).collect();
    println!("\npopulated quadrupled exponents: {populated:?}");
}
