//! Nonlocal finite element assembly and volume-constraint elimination.
//!
//! The bilinear form acts on pairs of hat functions through a double
//! integral over the whole computational domain (subdomains plus constraint
//! regions):
//!
//! ```text
//! A[i][j] = int int gamma(x, y) (phi_j(x) - phi_j(y)) (phi_i(x) - phi_i(y)) dy dx
//! ```
//!
//! The outer integral is evaluated with a 3-point Gauss rule per element; the
//! inner integral is split at every element boundary and at the interaction
//! ball endpoints `x ± delta`, again with a 3-point Gauss rule per piece.
//! With interface-fitted meshes the integrand is polynomial on each piece
//! (quadratic in `y`, cubic in the outer variable after integration), so the
//! composite rule is **exact** and the assembled matrix carries only roundoff
//! error. Constant functions are therefore reproduced to machine precision:
//! every row of `A` sums to zero.
//!
//! The matrices are symmetric with a narrow band (hat functions interact only
//! within the larger horizon plus one element on each side), stored as a
//! banded lower triangle. Volume constraints are imposed by elimination,
//! producing a reduced system over the free degrees of freedom.

// Indexed loops here pair positions in one array with offsets into another
// (band slots, free/global dof maps); iterator rewrites would hide that.
#![allow(clippy::needless_range_loop)]

use crate::geometry::{Mesh1D, Side};
use crate::kernels::Kernel;
use crate::quadrature::gauss3;
use crate::{Error, Result};
use std::io::{self, Write};

/// Symmetric banded matrix, storing the lower triangle row by row.
///
/// Row `i` owns `half_bandwidth + 1` slots holding `A[i][i - off]` for
/// `off = 0..=half_bandwidth`; entries outside the band are implicitly zero.
#[derive(Debug, Clone, PartialEq)]
pub struct BandedSymmetricMatrix {
    dim: usize,
    half_bandwidth: usize,
    data: Vec<f64>,
}

impl BandedSymmetricMatrix {
    /// Zero matrix of size `dim` with the given half bandwidth (clamped to
    /// `dim - 1`).
    pub fn new(dim: usize, half_bandwidth: usize) -> Self {
        let hb = half_bandwidth.min(dim.saturating_sub(1));
        BandedSymmetricMatrix {
            dim,
            half_bandwidth: hb,
            data: vec![0.0; dim * (hb + 1)],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn half_bandwidth(&self) -> usize {
        self.half_bandwidth
    }

    #[inline]
    fn slot(&self, row: usize, off: usize) -> usize {
        row * (self.half_bandwidth + 1) + off
    }

    /// Add `value` to the symmetric entry `(i, j)`. Panics (debug) if the
    /// entry lies outside the band.
    #[inline]
    pub fn add(&mut self, i: usize, j: usize, value: f64) {
        let (row, col) = if i >= j { (i, j) } else { (j, i) };
        let off = row - col;
        debug_assert!(
            off <= self.half_bandwidth,
            "entry ({i}, {j}) outside band of half width {}",
            self.half_bandwidth
        );
        let s = self.slot(row, off);
        self.data[s] += value;
    }

    /// Symmetric read; entries outside the band are zero.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        let (row, col) = if i >= j { (i, j) } else { (j, i) };
        let off = row - col;
        if off > self.half_bandwidth {
            0.0
        } else {
            self.data[self.slot(row, off)]
        }
    }

    /// Maximum absolute row sum of the full symmetric matrix.
    pub fn infinity_norm(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.dim {
            let lo = i.saturating_sub(self.half_bandwidth);
            let hi = (i + self.half_bandwidth).min(self.dim - 1);
            let row_sum: f64 = (lo..=hi).map(|j| self.get(i, j).abs()).sum();
            worst = worst.max(row_sum);
        }
        worst
    }

    /// Matrix-vector product `A x` using the symmetric band.
    pub fn mul_vec(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: x.len(),
            });
        }
        let mut y = vec![0.0; self.dim];
        for i in 0..self.dim {
            let lo = i.saturating_sub(self.half_bandwidth);
            let hi = (i + self.half_bandwidth).min(self.dim - 1);
            let mut acc = 0.0;
            for j in lo..=hi {
                acc += self.get(i, j) * x[j];
            }
            y[i] = acc;
        }
        Ok(y)
    }

    /// Write every stored lower-triangle slot as `i j value` lines (0-based
    /// indices, full precision).
    pub fn write_coordinate(&self, w: &mut impl Write) -> io::Result<()> {
        for i in 0..self.dim {
            for j in i.saturating_sub(self.half_bandwidth)..=i {
                writeln!(w, "{} {} {:.16e}", i, j, self.get(i, j))?;
            }
        }
        Ok(())
    }
}

/// Piecewise-constant source term, one value per side of the interface.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SourceTerm {
    pub left: f64,
    pub right: f64,
}

impl SourceTerm {
    /// The same constant on both sides.
    pub fn constant(f: f64) -> Self {
        SourceTerm { left: f, right: f }
    }

    pub fn new(left: f64, right: f64) -> Self {
        SourceTerm { left, right }
    }

    pub fn value(&self, side: Side) -> f64 {
        match side {
            Side::Left => self.left,
            Side::Right => self.right,
        }
    }
}

/// Quadratic polynomial `c0 + c1 x + c2 x^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraticPoly {
    pub c0: f64,
    pub c1: f64,
    pub c2: f64,
}

impl QuadraticPoly {
    pub fn new(c0: f64, c1: f64, c2: f64) -> Self {
        QuadraticPoly { c0, c1, c2 }
    }

    pub fn from_coeffs(coeffs: [f64; 3]) -> Self {
        QuadraticPoly {
            c0: coeffs[0],
            c1: coeffs[1],
            c2: coeffs[2],
        }
    }

    #[inline]
    pub fn eval(&self, x: f64) -> f64 {
        self.c0 + (self.c1 + self.c2 * x) * x
    }

    /// Second derivative (constant).
    pub fn second_derivative(&self) -> f64 {
        2.0 * self.c2
    }
}

/// Volume-constraint data: one quadratic per constraint region.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstraintData {
    pub g1: QuadraticPoly,
    pub g2: QuadraticPoly,
}

impl ConstraintData {
    pub fn new(g1: QuadraticPoly, g2: QuadraticPoly) -> Self {
        ConstraintData { g1, g2 }
    }

    /// Constraint value at `x` on the given side.
    pub fn value(&self, x: f64, side: Side) -> f64 {
        match side {
            Side::Left => self.g1.eval(x),
            Side::Right => self.g2.eval(x),
        }
    }
}

/// Assemble the nonlocal stiffness matrix on `mesh` for `kernel`.
pub fn assemble_stiffness(mesh: &Mesh1D, kernel: &Kernel) -> BandedSymmetricMatrix {
    let h = mesh.h();
    let delta_max = kernel.delta1.max(kernel.delta2);
    let hb = mesh.coupling_half_bandwidth(delta_max);
    let mut matrix = BandedSymmetricMatrix::new(mesh.dof_count(), hb);
    let n_el = mesh.element_count();

    for ko in 0..n_el {
        let outer = mesh.element(ko);
        let p = outer.side();
        let radius = kernel.horizon(p);
        // Elements possibly intersecting the interaction ball of any point in
        // `outer`; the extra +1 absorbs roundoff, empty overlaps are skipped.
        let reach = (radius / h).round() as usize + 1;
        let lo_el = ko.saturating_sub(reach);
        let hi_el = (ko + reach).min(n_el - 1);

        for (x, wx) in gauss3(outer.lo, outer.hi) {
            let shape_x = outer.shape_values(x);
            let ball_lo = x - radius;
            let ball_hi = x + radius;

            for ki in lo_el..=hi_el {
                let inner = mesh.element(ki);
                let seg_lo = inner.lo.max(ball_lo);
                let seg_hi = inner.hi.min(ball_hi);
                if seg_hi <= seg_lo {
                    continue;
                }
                let amplitude = kernel.amplitude(p, inner.side());

                for (y, wy) in gauss3(seg_lo, seg_hi) {
                    let shape_y = inner.shape_values(y);
                    // Merge the (at most four) involved dofs, recording each
                    // hat's value at x and at y.
                    let mut dofs = [0usize; 4];
                    let mut at_x = [0.0f64; 4];
                    let mut at_y = [0.0f64; 4];
                    let mut m = 0;
                    for k in 0..2 {
                        dofs[m] = outer.dofs[k];
                        at_x[m] = shape_x[k];
                        m += 1;
                    }
                    for k in 0..2 {
                        let d = inner.dofs[k];
                        if let Some(pos) = dofs[..m].iter().position(|&q| q == d) {
                            at_y[pos] += shape_y[k];
                        } else {
                            dofs[m] = d;
                            at_y[m] = shape_y[k];
                            m += 1;
                        }
                    }
                    let coeff = wx * wy * amplitude;
                    let mut diff = [0.0f64; 4];
                    for k in 0..m {
                        diff[k] = at_x[k] - at_y[k];
                    }
                    for k in 0..m {
                        let dk = coeff * diff[k];
                        if dk == 0.0 {
                            continue;
                        }
                        for l in 0..=k {
                            if diff[l] != 0.0 {
                                matrix.add(dofs[k], dofs[l], dk * diff[l]);
                            }
                        }
                    }
                }
            }
        }
    }
    matrix
}

/// Assemble the load vector `f_i = int_{subdomains} f phi_i dx`. Constraint
/// regions do not contribute.
pub fn assemble_load(mesh: &Mesh1D, source: &SourceTerm) -> Vec<f64> {
    let mut load = vec![0.0; mesh.dof_count()];
    for el in mesh.elements() {
        if el.region.is_constraint() {
            continue;
        }
        let f = source.value(el.side());
        for (x, w) in gauss3(el.lo, el.hi) {
            let shape = el.shape_values(x);
            for k in 0..2 {
                load[el.dofs[k]] += w * f * shape[k];
            }
        }
    }
    load
}

/// The reduced linear system after eliminating constrained degrees of
/// freedom.
#[derive(Debug, Clone)]
pub struct ConstrainedSystem {
    /// Stiffness restricted to free degrees of freedom.
    pub matrix: BandedSymmetricMatrix,
    /// Load with constraint values moved to the right-hand side.
    pub rhs: Vec<f64>,
    /// Eliminated degrees of freedom and their prescribed values.
    pub constrained: Vec<(usize, f64)>,
    /// Global index of each free degree of freedom, ascending.
    pub free_to_global: Vec<usize>,
}

impl ConstrainedSystem {
    /// Scatter a free-dof solution back to the full dof vector, filling in
    /// the prescribed values.
    pub fn expand(&self, u_free: &[f64]) -> Vec<f64> {
        let dim = self.free_to_global.len() + self.constrained.len();
        let mut full = vec![0.0; dim];
        for (&g, &v) in self.free_to_global.iter().zip(u_free) {
            full[g] = v;
        }
        for &(g, v) in &self.constrained {
            full[g] = v;
        }
        full
    }
}

/// Eliminate the volume-constrained degrees of freedom of `matrix`,
/// prescribing `constraints` evaluated at the dof coordinates.
pub fn apply_constraints(
    matrix: &BandedSymmetricMatrix,
    load: &[f64],
    mesh: &Mesh1D,
    constraints: &ConstraintData,
) -> Result<ConstrainedSystem> {
    if load.len() != matrix.dim() || matrix.dim() != mesh.dof_count() {
        return Err(Error::DimensionMismatch {
            expected: mesh.dof_count(),
            found: load.len().min(matrix.dim()),
        });
    }
    let free_to_global = mesh.free_dofs();
    if free_to_global.is_empty() {
        return Err(Error::SingularSystem);
    }
    let constrained: Vec<(usize, f64)> = mesh
        .constrained_dofs()
        .into_iter()
        .map(|d| {
            let x = mesh.dof_coordinate(d);
            (d, constraints.value(x, mesh.dof_side(d)))
        })
        .collect();

    let n_free = free_to_global.len();
    let mut global_to_free = vec![usize::MAX; matrix.dim()];
    for (f, &g) in free_to_global.iter().enumerate() {
        global_to_free[g] = f;
    }

    let hb = matrix.half_bandwidth().min(n_free.saturating_sub(1));
    let mut reduced = BandedSymmetricMatrix::new(n_free, hb);
    for (fi, &gi) in free_to_global.iter().enumerate() {
        for fj in fi.saturating_sub(hb)..=fi {
            let gj = free_to_global[fj];
            let v = matrix.get(gi, gj);
            if v != 0.0 {
                reduced.add(fi, fj, v);
            }
        }
    }

    let mut rhs: Vec<f64> = free_to_global.iter().map(|&g| load[g]).collect();
    for &(gc, value) in &constrained {
        if value == 0.0 {
            continue;
        }
        let lo = gc.saturating_sub(matrix.half_bandwidth());
        let hi = (gc + matrix.half_bandwidth()).min(matrix.dim() - 1);
        for gi in lo..=hi {
            let f = global_to_free[gi];
            if f != usize::MAX {
                rhs[f] -= matrix.get(gi, gc) * value;
            }
        }
    }

    Ok(ConstrainedSystem {
        matrix: reduced,
        rhs,
        constrained,
        free_to_global,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{build_mesh, DomainLayout};
    use crate::kernels::{make_kernel, KernelFamily, Material};
    use crate::rng::SplitMix64;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn reference_setup() -> (Mesh1D, Kernel) {
        let layout = DomainLayout::centered_unit(2f64.powi(-5), 2f64.powi(-4)).unwrap();
        let mesh = build_mesh(&layout, 2f64.powi(-5)).unwrap();
        let material = Material::new(1.0, 3.0).unwrap();
        let kernel = make_kernel(KernelFamily::K1, &material, &layout);
        (mesh, kernel)
    }

    #[test]
    fn banded_storage_is_symmetric_and_zero_outside_band() {
        let mut m = BandedSymmetricMatrix::new(6, 2);
        m.add(1, 3, 4.5);
        m.add(3, 1, 0.5);
        assert_eq!(m.get(1, 3), 5.0);
        assert_eq!(m.get(3, 1), 5.0);
        assert_eq!(m.get(0, 5), 0.0);
        assert_eq!(m.get(5, 0), 0.0);
        // half bandwidth is clamped to dim - 1
        let wide = BandedSymmetricMatrix::new(3, 10);
        assert_eq!(wide.half_bandwidth(), 2);
    }

    #[test]
    fn mul_vec_matches_dense_product() {
        let mut rng = SplitMix64::new(11);
        let n = 12;
        let hb = 3;
        let mut banded = BandedSymmetricMatrix::new(n, hb);
        let mut dense = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in i.saturating_sub(hb)..=i {
                let v = rng.symmetric();
                banded.add(i, j, v);
                dense[i][j] += v;
                if i != j {
                    dense[j][i] += v;
                }
            }
        }
        let x: Vec<f64> = (0..n).map(|_| rng.symmetric()).collect();
        let y = banded.mul_vec(&x).unwrap();
        for i in 0..n {
            let expect: f64 = (0..n).map(|j| dense[i][j] * x[j]).sum();
            assert_abs_diff_eq!(y[i], expect, epsilon = 1e-14);
        }
        let norm_dense = dense
            .iter()
            .map(|row| row.iter().map(|v| v.abs()).sum::<f64>())
            .fold(0.0f64, f64::max);
        assert_abs_diff_eq!(banded.infinity_norm(), norm_dense, epsilon = 1e-14);
        assert!(matches!(
            banded.mul_vec(&x[..5]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn stiffness_entries_match_hand_integrated_values() {
        // Reference configuration: kappa = (1, 3), delta = (2^-5, 2^-4),
        // h = 2^-5, family K1. Entries follow from integrating the piecewise
        // polynomial integrand in closed form.
        let (mesh, kernel) = reference_setup();
        let a = assemble_stiffness(&mesh, &kernel);
        assert_eq!(a.dim(), 37);
        let checks = [
            (17usize, 18usize, -31.5), // coupling of the two interface dofs
            (17, 17, 55.5),
            (18, 18, 57.5),
            (16, 17, 1.5),
            (18, 19, 10.5),
            (10, 10, 40.0), // deep in the left bulk
            (28, 28, 60.0), // deep in the right bulk
            (28, 29, -10.5),
            (28, 30, -18.0),
            (0, 0, 16.0), // leftmost constraint dof
        ];
        for (i, j, expect) in checks {
            assert_relative_eq!(a.get(i, j), expect, max_relative = 1e-12);
        }
    }

    #[test]
    fn stiffness_annihilates_constants() {
        let (mesh, kernel) = reference_setup();
        let a = assemble_stiffness(&mesh, &kernel);
        let ones = vec![1.0; a.dim()];
        let r = a.mul_vec(&ones).unwrap();
        let max = r.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
        assert!(
            max <= 1e-12 * a.infinity_norm(),
            "row sums {max:.3e} exceed roundoff for norm {:.3e}",
            a.infinity_norm()
        );
    }

    #[test]
    fn stiffness_band_is_wide_enough_for_all_couplings() {
        // every analytically nonzero coupling fits the declared band
        let layout = DomainLayout::centered_unit(2f64.powi(-4), 2f64.powi(-3)).unwrap();
        let mesh = build_mesh(&layout, 2f64.powi(-6)).unwrap();
        let material = Material::new(2.0, 0.5).unwrap();
        let kernel = make_kernel(KernelFamily::K4, &material, &layout);
        let a = assemble_stiffness(&mesh, &kernel);
        // dofs further apart than delta_max + 2h can never interact
        let delta_max = kernel.delta1.max(kernel.delta2);
        for i in 0..a.dim() {
            for j in i.saturating_sub(a.half_bandwidth())..=i {
                let gap = (mesh.dof_coordinate(i) - mesh.dof_coordinate(j)).abs();
                if gap > delta_max + 2.0 * mesh.h() + 1e-12 {
                    assert_eq!(a.get(i, j), 0.0, "unexpected coupling at ({i}, {j})");
                }
            }
        }
    }

    #[test]
    fn load_vector_for_unit_source() {
        let (mesh, _) = reference_setup();
        let h = mesh.h();
        let load = assemble_load(&mesh, &SourceTerm::constant(1.0));
        // hats fully inside a subdomain integrate to h, half hats to h/2,
        // hats supported only in constraint regions to 0
        assert_abs_diff_eq!(load[0], 0.0);
        assert_abs_diff_eq!(load[1], 0.5 * h, epsilon = 1e-15);
        assert_abs_diff_eq!(load[2], h, epsilon = 1e-15);
        assert_abs_diff_eq!(load[17], 0.5 * h, epsilon = 1e-15);
        assert_abs_diff_eq!(load[18], 0.5 * h, epsilon = 1e-15);
        assert_abs_diff_eq!(load[34], 0.5 * h, epsilon = 1e-15);
        assert_abs_diff_eq!(load[35], 0.0);
        assert_abs_diff_eq!(load[36], 0.0);
        // total mass equals the subdomain length
        let total: f64 = load.iter().sum();
        assert_abs_diff_eq!(total, 1.0, epsilon = 1e-14);
    }

    #[test]
    fn per_side_load_uses_the_element_side() {
        let (mesh, _) = reference_setup();
        let load = assemble_load(&mesh, &SourceTerm::new(2.0, -1.0));
        let total: f64 = load.iter().sum();
        // 2 * |left subdomain| - 1 * |right subdomain| = 2 * 0.5 - 0.5
        assert_abs_diff_eq!(total, 0.5, epsilon = 1e-14);
        // the two interface dofs pick up their own side's source
        assert_abs_diff_eq!(load[17], 2.0 * 0.5 * mesh.h(), epsilon = 1e-15);
        assert_abs_diff_eq!(load[18], -0.5 * mesh.h(), epsilon = 1e-15);
    }

    #[test]
    fn constraint_elimination_shapes_and_values() {
        let (mesh, kernel) = reference_setup();
        let a = assemble_stiffness(&mesh, &kernel);
        let load = assemble_load(&mesh, &SourceTerm::constant(1.0));
        let g1 = QuadraticPoly::from_coeffs([1.0 / 16.0, -1.0 / 8.0, -0.5]);
        let g2 = QuadraticPoly::from_coeffs([1.0 / 16.0, -1.0 / 24.0, -1.0 / 6.0]);
        let system = apply_constraints(&a, &load, &mesh, &ConstraintData::new(g1, g2)).unwrap();

        assert_eq!(system.free_to_global.len(), 32);
        assert_eq!(system.constrained.len(), 5);
        // free dofs are the contiguous run between the constraint regions
        for (k, w) in system.free_to_global.windows(2).enumerate() {
            assert_eq!(w[1], w[0] + 1, "free dofs not contiguous at {k}");
        }
        // prescribed values are the constraint quadratics at the dof coordinates
        for &(g, v) in &system.constrained {
            let x = mesh.dof_coordinate(g);
            let expect = if x <= mesh.layout().a {
                g1.eval(x)
            } else {
                g2.eval(x)
            };
            assert_abs_diff_eq!(v, expect);
        }
        // expand() scatters both parts back
        let fake: Vec<f64> = (0..32).map(|k| k as f64).collect();
        let full = system.expand(&fake);
        assert_eq!(full.len(), 37);
        assert_eq!(full[system.free_to_global[0]], 0.0);
        assert_eq!(full[system.free_to_global[31]], 31.0);
        for &(g, v) in &system.constrained {
            assert_eq!(full[g], v);
        }
    }

    #[test]
    fn elimination_matches_dense_reduction() {
        // reduced rhs must equal f_free - A_fc * g_c computed densely
        let (mesh, kernel) = reference_setup();
        let a = assemble_stiffness(&mesh, &kernel);
        let load = assemble_load(&mesh, &SourceTerm::constant(1.0));
        let g1 = QuadraticPoly::from_coeffs([1.0 / 16.0, -1.0 / 8.0, -0.5]);
        let g2 = QuadraticPoly::from_coeffs([1.0 / 16.0, -1.0 / 24.0, -1.0 / 6.0]);
        let system = apply_constraints(&a, &load, &mesh, &ConstraintData::new(g1, g2)).unwrap();

        for (fi, &gi) in system.free_to_global.iter().enumerate() {
            let mut expect = load[gi];
            for &(gc, v) in &system.constrained {
                expect -= a.get(gi, gc) * v;
            }
            assert_abs_diff_eq!(system.rhs[fi], expect, epsilon = 1e-12);
            for (fj, &gj) in system.free_to_global.iter().enumerate() {
                assert_eq!(system.matrix.get(fi, fj), a.get(gi, gj));
            }
        }
    }

    #[test]
    fn coordinate_dump_lists_every_band_slot() {
        let mut m = BandedSymmetricMatrix::new(3, 1);
        m.add(0, 0, 1.0);
        m.add(1, 0, -2.0);
        m.add(2, 2, 0.25);
        let mut buf = Vec::new();
        m.write_coordinate(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        // rows 0,1,2 with min(i, hb)+1 slots each: 1 + 2 + 2
        assert_eq!(lines.len(), 5);
        assert_eq!(lines[0], format!("0 0 {:.16e}", 1.0));
        assert_eq!(lines[1], format!("1 0 {:.16e}", -2.0));
        assert_eq!(lines[2], format!("1 1 {:.16e}", 0.0));
        assert_eq!(lines[4], format!("2 2 {:.16e}", 0.25));
    }
}
