//! The four cross-interface kernel pairings and their calibrated constants.
//!
//! All families share the same-side constants `c_pp = 3 kappa_p / (2
//! delta_p^3)` — the unique scaling for which the nonlocal operator matches
//! `kappa_p u''` on each side — and differ only in how points on opposite
//! sides of the interface are paired.

use nonlocal_interface::{make_kernel, DomainLayout, KernelFamily, Material};

fn main() {
    let layout = DomainLayout::centered_unit(0.03125, 0.0625).expect("valid layout");
    let material = Material::new(1.0, 3.0).expect("positive coefficients");

    println!(
        "configuration: kappa = ({}, {}), delta = (2^-5, 2^-4)\n",
        material.kappa1, material.kappa2
    );
    println!("family    c11          c12          c21          c22        symmetric");
    for family in [
        KernelFamily::K1,
        KernelFamily::K2,
        KernelFamily::K3,
        KernelFamily::K4,
    ] {
        let k = make_kernel(family, &material, &layout);
        println!(
            "  {family}   {:10.1}   {:10.1}   {:10.1}   {:10.1}      {}",
            k.c11,
            k.c12,
            k.c21,
            k.c22,
            if k.has_symmetric_amplitudes() { "yes" } else { "no" }
        );
    }

    println!("\nhow the families pair cross-interface interactions:");
    println!("  k1: borrow the *other* side's coefficient with our own horizon");
    println!("  k2: keep our own coefficient and horizon (one-sided view)");
    println!("  k3: average the two one-sided kernels (symmetric pairing)");
    println!("  k4: average the coefficients, keep side-local horizons");

    // pointwise evaluation: gamma(x, y) uses the constants of x's side and
    // vanishes outside the interaction ball |x - y| <= delta_p
    let k1 = make_kernel(KernelFamily::K1, &material, &layout);
    println!("\npointwise values of the k1 kernel:");
    for (x, y) in [(-0.01, 0.005), (0.005, -0.01), (-0.2, -0.19), (-0.2, 0.2)] {
        let value = k1.eval(x, y).expect("points inside the domain");
        println!("  gamma({x:6.3}, {y:6.3}) = {value:10.1}");
    }
    println!("\nnote gamma(x, y) != gamma(y, x) for k1: the pairing is not symmetric");
}
