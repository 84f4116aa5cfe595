//! Ready-made example specifications used by the test suites, the docs,
//! and the bundled CLI spec files.

use crate::hyperfunc::HyperExpSpec;
use crate::num::big::BigComplex;
use crate::num::poly::CPoly;

/// `f = exp(1/z)`: one essential singularity, the minimal example.
pub fn exp_inv_z(prec: u32) -> HyperExpSpec {
    HyperExpSpec::new(
        CPoly::from_i64s(prec, &[1]),
        CPoly::from_i64s(prec, &[1]),
        CPoly::from_i64s(prec, &[1]),
        CPoly::from_i64s(prec, &[0, 1]),
    )
}

/// `f = exp(1/z)/(z - 1)`: one essential singularity and one pole.
pub fn exp_inv_z_over_zm1(prec: u32) -> HyperExpSpec {
    HyperExpSpec::new(
        CPoly::from_i64s(prec, &[1]),
        CPoly::from_i64s(prec, &[-1, 1]),
        CPoly::from_i64s(prec, &[1]),
        CPoly::from_i64s(prec, &[0, 1]),
    )
}

/// `f = z exp(1/z)`: degree regime switch at n = 2 (p > q).
pub fn z_exp_inv_z(prec: u32) -> HyperExpSpec {
    HyperExpSpec::new(
        CPoly::from_i64s(prec, &[0, 1]),
        CPoly::from_i64s(prec, &[1]),
        CPoly::from_i64s(prec, &[1]),
        CPoly::from_i64s(prec, &[0, 1]),
    )
}

/// `f = exp(z + 1/z)` via `S = z^2 + 1`, `T = z`: nonconstant polynomial
/// exponent part (h = 1), escaping zero mass 1/2.
pub fn exp_z_plus_inv_z(prec: u32) -> HyperExpSpec {
    HyperExpSpec::new(
        CPoly::from_i64s(prec, &[1]),
        CPoly::from_i64s(prec, &[1]),
        CPoly::from_i64s(prec, &[1, 0, 1]),
        CPoly::from_i64s(prec, &[0, 1]),
    )
}

/// The five-site example
/// `f = exp((3-i)/2/(z+2-3i/2)^2 + (-1-i)/(z-1+i)) / ((z+5/2)(z-2i)(z-5/2))`:
/// an order-2 and an order-1 essential singularity plus three poles.
pub fn five_sites(prec: u32) -> HyperExpSpec {
    let c1 = BigComplex::from_f64s(prec, -2.0, 1.5);
    let c2 = BigComplex::from_f64s(prec, 1.0, -1.0);
    let lam = BigComplex::from_f64s(prec, 1.5, -0.5);
    let mu = BigComplex::from_f64s(prec, -1.0, -1.0);
    let t = CPoly::from_roots(prec, &[c1.clone(), c1.clone(), c2.clone()]);
    let s = CPoly::from_roots(prec, &[c2])
        .scale(&lam)
        .add(&CPoly::from_roots(prec, &[c1.clone(), c1]).scale(&mu));
    let q = CPoly::from_roots(
        prec,
        &[
            BigComplex::from_f64s(prec, -2.5, 0.0),
            BigComplex::from_f64s(prec, 0.0, 2.0),
            BigComplex::from_f64s(prec, 2.5, 0.0),
        ],
    );
    HyperExpSpec::new(CPoly::from_i64s(prec, &[1]), q, s, t)
}
