//! Solve the benchmark two-material problem and inspect the solution near
//! the interface.
//!
//! The nonlocal solution is continuous in the energy space but develops a
//! jump across the interface collocation point, which the double node makes
//! visible: `u(0-)` and `u(0+)` are separate degrees of freedom.
//!
//! Run with `cargo run --example solve_interface [h]`.

use nonlocal_interface::geometry::Side;
use nonlocal_interface::InterfaceProblem;

fn main() {
    let h: f64 = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("h must be a number"))
        .unwrap_or(0.00390625); // 2^-8

    let problem = InterfaceProblem::benchmark();
    let solution = problem.solve(h).expect("benchmark solve");
    let local = problem.local_solution();
    let mesh = solution.mesh();

    println!(
        "mesh: {} elements on [{:.5}, {:.5}], {} dofs ({} constrained)",
        mesh.element_count(),
        mesh.layout().left_extent(),
        mesh.layout().right_extent(),
        mesh.dof_count(),
        mesh.constrained_dofs().len()
    );

    let (ul, ur) = solution.interface_values();
    println!("\ninterface values at x = 0:");
    println!("  nonlocal: u(0-) = {ul:.8e}, u(0+) = {ur:.8e}");
    println!("  jump     |u(0+) - u(0-)| = {:.4e}", (ur - ul).abs());
    println!("  local reference: u0(0) = {:.8e}", local.eval(0.0, Side::Left));

    println!("\n       x        u_nonlocal     u_local      difference");
    for k in -5..=5 {
        let x = 0.1 * k as f64;
        let side = if x < 0.0 { Side::Left } else { Side::Right };
        let u = solution.eval(x, side).expect("x inside the domain");
        let u0 = local.eval(x, side);
        println!("  {x:8.2}  {u:13.6e}  {u0:13.6e}  {:10.3e}", u - u0);
    }
    println!("\nthe largest deviation from the local solution sits at the interface");
}
