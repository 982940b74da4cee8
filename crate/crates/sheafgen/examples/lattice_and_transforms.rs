//! Work with the Néron–Severi lattice: intersection numbers, moduli
//! dimensions, the derived transform on Chern vectors, and rank reduction.
//!
//! ```text
//! cargo run --example lattice_and_transforms
//! ```

use sheafgen::genfun::rank_reduction_table;
use sheafgen::qseries::QExp;
use sheafgen::surface::{ChernVector, DivisorClass, ModuliClass, SurfaceModel};

fn main() {
    let surface = SurfaceModel::new(-1).unwrap();

    // intersection numbers in the (C0, g) basis
    let c0 = DivisorClass::new(1, 0);
    let g = DivisorClass::new(0, 1);
    let k = surface.canonical_class();
    println!("(C0^2) = {}", surface.intersect(c0, c0));
    println!("(C0.g) = {}", surface.intersect(c0, g));
    println!("(K^2)  = {}, K = {}", surface.intersect(k, k), k);

    // the dimension formula for a one-dimensional class
    let class = ModuliClass { r: 0, xi: c0, chi: 1 };
    println!("\ndim M(0, C0, 1) = {}", surface.dim_moduli(&class).unwrap());

    // the transform preserves the canonical pairing of every integral vector
    let v = ChernVector::new(2, 1, -1, 3);
    let image = surface.fourier_mukai(v).unwrap();
    let (before, after) = surface.fm_canonical_invariance(v).unwrap();
    println!("\ntransform: {v} -> {image}   (c1.K): {before} -> {after}");

    // a vector that is not an integral Chern character is rejected
    let bad = ChernVector::new(1, 1, 0, 0);
    println!("non-integral {bad}: {:?}", surface.fourier_mukai(bad).unwrap_err());

    // rank reduction: a rank-2 class with coprime leading degree reads its
    // e-polynomial off the one-dimensional series; odd rank falls back to
    // Hilbert schemes times the Jacobian
    println!("\nrank-2 classes M(2, C0, chi):");
    let rows = rank_reduction_table(2, 1, 0, &[0, -1, -2], QExp::int(8)).unwrap();
    for row in &rows {
        println!("  chi = {:>2}: {:?}, {} terms", row.chi, row.reduction, row.e_poly.num_terms());
    }

    println!("\nrank-1 classes M(1, C0 + d*g, chi):");
    let rows = rank_reduction_table(1, 1, 0, &[1, 0, -1], QExp::int(8)).unwrap();
    for row in &rows {
        println!("  chi = {:>2}: {:?}, {} terms", row.chi, row.reduction, row.e_poly.num_terms());
    }
}
