//! Materialize every line of the sum-to-product rewriting and check each
//! equality separately.
//!
//! The chain has four lines: the cone sum; the substituted theta product
//! still carrying its `1/(xy−1)` normalization; the same product with the
//! normalization cancelled; and the fully split product. Each line is
//! built from its own expression — no line reuses the previous line's
//! series — so each pairwise comparison is a genuine check of one
//! rewriting step.
//!
//! ```text
//! cargo run --example rewriting_chain
//! ```

use sheafgen::genfun::proof_chain;
use sheafgen::qseries::QExp;

fn main() {
    let order = QExp::int(6);
    let lines = proof_chain(order).expect("all lines materialize");

    println!("chain lines (order q^{order}):");
    for line in &lines {
        let slots = line.series.terms().count();
        println!("  {:<26} {} populated coefficients", line.label, slots);
    }

    println!();
    for pair in lines.windows(2) {
        let report = pair[0].series.equal_to_order(&pair[1].series, order);
        match report.first_mismatch {
            None => println!("  '{}' == '{}'", pair[0].label, pair[1].label),
            Some(m) => {
                println!(
                    "  '{}' != '{}' at q^{}:\n    lhs = {}\n    rhs = {}",
                    pair[0].label, pair[1].label, m.exp, m.lhs, m.rhs
                );
                return;
            }
        }
    }
    println!("\nevery rewriting step checks out below q^{order}");
}
