//! Extract validated Hodge tables from all three moduli families.
//!
//! Each populated q-exponent of a family's series is the virtual Hodge
//! polynomial of a moduli space of dimension `(ξ²) + 1`. Extraction
//! validates every coefficient — integral exponents, support inside
//! `[0, dim]²`, nonnegative Hodge numbers after the sign flip, `p ↔ q`
//! symmetry, Poincaré duality, `h^{0,0} = 1` — so holding a table row is
//! already a proof that the coefficient looks like honest geometry.
//!
//! ```text
//! cargo run --example hodge_tables
//! ```

use sheafgen::genfun::{moduli_table, TableFamily};

fn diamond(row: &sheafgen::genfun::ModuliTableRow) {
    let dim = row.hodge.dim;
    let rows: Vec<String> = (0..=2 * dim)
        .map(|k| {
            let lo = k.saturating_sub(dim);
            let hi = k.min(dim);
            let cells: Vec<String> =
                (lo..=hi).map(|p| row.hodge.h(p, k - p).to_string()).collect();
            cells.join("  ")
        })
        .collect();
    let width = rows.iter().map(String::len).max().unwrap_or(0);
    for line in rows {
        let pad = (width - line.len()) / 2;
        println!("    {:pad$}{line}", "");
    }
}

fn main() {
    for family in [TableFamily::OneDimensional, TableFamily::E0Case1, TableFamily::E0Case2] {
        let rows = moduli_table(family, 10).expect("all coefficients validate");
        println!("{family:?}: {} rows with dim <= 10", rows.len());
        for row in &rows {
            let betti: Vec<String> = row.hodge.betti.iter().map(u64::to_string).collect();
            println!(
                "  (xi^2) = {:>2}  dim {:>2}  euler {:>2}  betti {}",
                row.xi_sq,
                row.hodge.dim,
                row.hodge.euler,
                betti.join(" ")
            );
        }
        println!();
    }

    // one full diamond, rows indexed by p+q
    let rows = moduli_table(TableFamily::OneDimensional, 4).unwrap();
    let row = &rows[1];
    println!("h^(p,q) of the dim-{} one-dimensional moduli space:", row.hodge.dim);
    diamond(row);
}
