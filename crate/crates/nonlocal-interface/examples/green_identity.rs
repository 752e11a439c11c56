//! Discrete integration by parts (a nonlocal Green's first identity).
//!
//! For a *symmetric* kernel the continuous identity
//!   int_Omega v Lu = -B(u, v) - int_Gamma v Lu
//! (with B the energy bilinear form and Gamma the constraint region) has an
//! exact discrete counterpart: the per-element quadrature is exact, so the
//! identity holds to roundoff for arbitrary nodal vectors. Asymmetric
//! pairings (like k1 with distinct materials) satisfy no such identity —
//! the residual stays O(1).

use nonlocal_interface::analysis::green_identity_parts;
use nonlocal_interface::rng::SplitMix64;
use nonlocal_interface::{build_mesh, make_kernel, DomainLayout, KernelFamily, Material};

fn random_pair(mesh: &nonlocal_interface::Mesh1D, rng: &mut SplitMix64) -> (Vec<f64>, Vec<f64>) {
    let u: Vec<f64> = (0..mesh.dof_count()).map(|_| rng.symmetric()).collect();
    let v: Vec<f64> = (0..mesh.dof_count())
        .map(|d| if mesh.is_constrained_dof(d) { 0.0 } else { rng.symmetric() })
        .collect();
    (u, v)
}

fn main() {
    let h = 0.015625; // 2^-6

    // symmetric configuration: one material, equal horizons, averaged pairing
    let layout = DomainLayout::centered_unit(0.0625, 0.0625).expect("valid layout");
    let material = Material::new(1.0, 1.0).expect("positive coefficients");
    let kernel = make_kernel(KernelFamily::K3, &material, &layout);
    let mesh = build_mesh(&layout, h).expect("commensurate mesh");

    let mut rng = SplitMix64::new(7);
    println!("symmetric kernel (k3, single material), h = 2^-6:");
    println!("      interior part      boundary+energy part   relative residual");
    let mut worst = 0.0f64;
    for _ in 0..8 {
        let (u, v) = random_pair(&mesh, &mut rng);
        let parts = green_identity_parts(&u, &v, &mesh, &kernel).expect("identity parts");
        worst = worst.max(parts.relative_residual());
        println!(
            "    {:15.8e}    {:15.8e}      {:9.3e}",
            parts.lhs,
            parts.rhs,
            parts.relative_residual()
        );
    }
    println!("  max over 8 random pairs: {worst:.3e} (roundoff)");

    // asymmetric configuration: the identity genuinely fails
    let layout2 = DomainLayout::centered_unit(0.03125, 0.0625).expect("valid layout");
    let material2 = Material::new(1.0, 3.0).expect("positive coefficients");
    let kernel2 = make_kernel(KernelFamily::K1, &material2, &layout2);
    let mesh2 = build_mesh(&layout2, h).expect("commensurate mesh");
    let mut worst2 = 0.0f64;
    for _ in 0..8 {
        let (u, v) = random_pair(&mesh2, &mut rng);
        let parts = green_identity_parts(&u, &v, &mesh2, &kernel2).expect("identity parts");
        worst2 = worst2.max(parts.relative_residual());
    }
    println!("\nasymmetric kernel (k1, kappa = (1, 3), distinct horizons):");
    println!("  max relative residual over 8 random pairs: {worst2:.3e}");
    println!("  integration by parts needs gamma(x, y) = gamma(y, x)");
}
