//! High-level description and solution of the nonlocal interface problem.
//!
//! An [`InterfaceProblem`] bundles the domain layout, the two materials, the
//! kernel family, the source term, and the volume-constraint data. Solving it
//! on a given mesh spacing runs the full pipeline: mesh construction,
//! stiffness and load assembly, constraint elimination, and a banded Cholesky
//! solve.

use crate::assembly::{
    apply_constraints, assemble_load, assemble_stiffness, ConstraintData, SourceTerm,
};
use crate::geometry::{build_mesh, DomainLayout, Mesh1D, Side};
use crate::kernels::{make_kernel, Kernel, KernelFamily, Material};
use crate::local::{local_exact, LocalSolution};
use crate::solver::{factor, solve};
use crate::Result;

/// A fully specified nonlocal two-material interface problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterfaceProblem {
    pub layout: DomainLayout,
    pub material: Material,
    pub family: KernelFamily,
    pub source: SourceTerm,
    pub constraints: ConstraintData,
}

impl InterfaceProblem {
    /// Problem with volume constraints taken from the closed-form local
    /// solution — the configuration in which the nonlocal solution converges
    /// to the local one as the horizons shrink.
    pub fn from_parts(
        layout: DomainLayout,
        material: Material,
        family: KernelFamily,
        source: SourceTerm,
    ) -> Self {
        let local = local_exact(&material, &source, layout.a, layout.x_interface, layout.b);
        InterfaceProblem {
            layout,
            material,
            family,
            source,
            constraints: local.constraints(),
        }
    }

    /// Problem with explicitly prescribed constraint data.
    pub fn with_constraints(
        layout: DomainLayout,
        material: Material,
        family: KernelFamily,
        source: SourceTerm,
        constraints: ConstraintData,
    ) -> Self {
        InterfaceProblem {
            layout,
            material,
            family,
            source,
            constraints,
        }
    }

    /// The benchmark configuration: unit domain with the interface at the
    /// origin, `kappa = (1, 3)`, horizons `(2^-5, 2^-4)`, family `K1`, unit
    /// source, and the local solution as constraint data.
    pub fn benchmark() -> Self {
        let layout = DomainLayout::centered_unit(2f64.powi(-5), 2f64.powi(-4))
            .expect("benchmark layout is valid");
        let material = Material::new(1.0, 3.0).expect("benchmark material is valid");
        InterfaceProblem::from_parts(layout, material, KernelFamily::K1, SourceTerm::constant(1.0))
    }

    /// Same problem with different horizons; the constraint data is kept
    /// (the quadratics extend to any horizon).
    pub fn with_horizons(&self, delta1: f64, delta2: f64) -> Result<Self> {
        let mut p = *self;
        p.layout = self.layout.with_horizons(delta1, delta2)?;
        Ok(p)
    }

    /// Same problem with a different kernel family.
    pub fn with_family(&self, family: KernelFamily) -> Self {
        let mut p = *self;
        p.family = family;
        p
    }

    /// The kernel induced by family, materials, and layout.
    pub fn kernel(&self) -> Kernel {
        make_kernel(self.family, &self.material, &self.layout)
    }

    /// Closed-form solution of the corresponding local interface problem.
    pub fn local_solution(&self) -> LocalSolution {
        local_exact(
            &self.material,
            &self.source,
            self.layout.a,
            self.layout.x_interface,
            self.layout.b,
        )
    }

    /// Assemble and solve on a mesh with spacing `h`.
    pub fn solve(&self, h: f64) -> Result<NonlocalSolution> {
        let mesh = build_mesh(&self.layout, h)?;
        let kernel = self.kernel();
        let stiffness = assemble_stiffness(&mesh, &kernel);
        let load = assemble_load(&mesh, &self.source);
        let system = apply_constraints(&stiffness, &load, &mesh, &self.constraints)?;
        let chol = factor(&system.matrix)?;
        let u_free = solve(&chol, &system.rhs)?;
        let values = system.expand(&u_free);
        Ok(NonlocalSolution { mesh, values })
    }
}

impl Default for InterfaceProblem {
    fn default() -> Self {
        InterfaceProblem::benchmark()
    }
}

/// A discrete nonlocal solution: mesh plus one value per degree of freedom.
#[derive(Debug, Clone, PartialEq)]
pub struct NonlocalSolution {
    mesh: Mesh1D,
    values: Vec<f64>,
}

impl NonlocalSolution {
    pub fn mesh(&self) -> &Mesh1D {
        &self.mesh
    }

    /// Values per degree of freedom (the doubled interface node appears
    /// twice: left dof immediately before right dof).
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// The one-sided interface values `(u(0^-), u(0^+))`.
    pub fn interface_values(&self) -> (f64, f64) {
        (
            self.values[self.mesh.interface_dof_left()],
            self.values[self.mesh.interface_dof_right()],
        )
    }

    /// Piecewise-linear evaluation inside element `k`.
    pub fn eval_in_element(&self, k: usize, x: f64) -> f64 {
        let el = self.mesh.element(k);
        let s = el.shape_values(x);
        self.values[el.dofs[0]] * s[0] + self.values[el.dofs[1]] * s[1]
    }

    /// Evaluate at `x`; exactly at the interface the `side` argument selects
    /// the one-sided limit.
    pub fn eval(&self, x: f64, side: Side) -> Result<f64> {
        let k = if x == self.mesh.layout().x_interface && side == Side::Left {
            self.mesh.interface_node() - 1
        } else {
            self.mesh.element_containing(x)?
        };
        Ok(self.eval_in_element(k, x))
    }
}
