//! Exact generating functions for Hodge, Betti, and Euler numbers of moduli
//! spaces of semistable sheaves on elliptic ruled surfaces.
//!
//! Everything is exact: coefficients are arbitrary-precision integers,
//! exponents live on fixed denominators (halves for the Hodge variables
//! `x, y`, quarters for `q`), and every claimed identity between a lattice
//! sum and an infinite product is *checked* coefficient by coefficient
//! rather than assumed. There is no floating point anywhere.
//!
//! The layers, bottom to top:
//!
//! * [`laurent`] — bivariate Laurent polynomials in `(x, y)` with
//!   half-integer exponents, and validated Hodge tables built from them;
//! * [`qseries`] — truncated series in `q^{1/4}` over those polynomials:
//!   binomial/geometric factors, infinite products, eta quotients, thetas;
//! * [`surface`] — the Néron–Severi lattice of the two surfaces
//!   (`e = −1` and `e = 0`), the moduli dimension formula, the derived
//!   lattice transform, and rank-reduction maps;
//! * [`genfun`] — the generating functions themselves, the identity
//!   verification drivers, and Hodge-table extraction;
//! * [`cli`] — the `sheafgen` binary: `table`, `verify`, `dim`, `fm`,
//!   `hilb`.
//!
//! The `examples/` directory is the front door: each example is a runnable
//! walkthrough of one capability, from expanding Hilbert-scheme series to
//! replicating the sum-to-product rewriting line by line.

pub mod cli;
pub mod genfun;
pub mod laurent;
pub mod qseries;
pub mod surface;
