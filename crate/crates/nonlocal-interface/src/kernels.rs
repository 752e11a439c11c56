//! Piecewise-constant interface kernels.
//!
//! The nonlocal diffusion operator is driven by a kernel
//! `gamma(x, y) = c(x, y) * chi(|x - y| <= delta(x))`, where the interaction
//! radius `delta(x)` and the amplitude `c(x, y)` depend only on the sides of
//! the interface that `x` and `y` lie on. The same-side amplitudes are fixed
//! by requiring the operator to reproduce the classical diffusion coefficient
//! of each material in the local limit:
//!
//! ```text
//! c11 = (3/2) kappa1 / delta1^3        c22 = (3/2) kappa2 / delta2^3
//! ```
//!
//! The four families differ only in the cross-interface amplitudes `c12`
//! (points in material 1 reaching into material 2) and `c21`:
//!
//! * `K1` — the reaching point adopts the *other* material's coefficient:
//!   `c12 = (3/2) kappa2 / delta1^3`, `c21 = (3/2) kappa1 / delta2^3`.
//! * `K2` — the reaching point keeps its *own* coefficient:
//!   `c12 = (3/2) kappa1 / delta1^3`, `c21 = (3/2) kappa2 / delta2^3`.
//! * `K3` — both directions use the average of the one-sided amplitudes:
//!   `c12 = c21 = (3/4) (kappa1/delta1^3 + kappa2/delta2^3)`. This is the
//!   only family whose kernel is symmetric in `(x, y)` when the horizons
//!   differ.
//! * `K4` — the coefficients are averaged but each direction keeps its own
//!   horizon scaling: `c12 = (3/4)(kappa1 + kappa2)/delta1^3`,
//!   `c21 = (3/4)(kappa1 + kappa2)/delta2^3`.

use crate::geometry::{DomainLayout, Side};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Diffusion coefficients of the two materials.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Material {
    pub kappa1: f64,
    pub kappa2: f64,
}

impl Material {
    /// Validated constructor: both coefficients positive and finite.
    pub fn new(kappa1: f64, kappa2: f64) -> Result<Self> {
        if !kappa1.is_finite() || kappa1 <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "kappa1",
                value: kappa1,
                requirement: "diffusion coefficient must be positive and finite",
            });
        }
        if !kappa2.is_finite() || kappa2 <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "kappa2",
                value: kappa2,
                requirement: "diffusion coefficient must be positive and finite",
            });
        }
        Ok(Material { kappa1, kappa2 })
    }

    /// Coefficient by side of the interface.
    pub fn kappa(&self, side: Side) -> f64 {
        match side {
            Side::Left => self.kappa1,
            Side::Right => self.kappa2,
        }
    }
}

/// The four cross-interface amplitude choices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KernelFamily {
    K1,
    K2,
    K3,
    K4,
}

impl KernelFamily {
    pub const ALL: [KernelFamily; 4] = [
        KernelFamily::K1,
        KernelFamily::K2,
        KernelFamily::K3,
        KernelFamily::K4,
    ];
}

impl fmt::Display for KernelFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            KernelFamily::K1 => "k1",
            KernelFamily::K2 => "k2",
            KernelFamily::K3 => "k3",
            KernelFamily::K4 => "k4",
        };
        f.write_str(name)
    }
}

impl FromStr for KernelFamily {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "k1" => Ok(KernelFamily::K1),
            "k2" => Ok(KernelFamily::K2),
            "k3" => Ok(KernelFamily::K3),
            "k4" => Ok(KernelFamily::K4),
            other => Err(format!("unknown kernel family `{other}` (expected k1, k2, k3, or k4)")),
        }
    }
}

/// A fully specified piecewise-constant kernel on a given domain layout.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Kernel {
    pub c11: f64,
    pub c12: f64,
    pub c21: f64,
    pub c22: f64,
    pub delta1: f64,
    pub delta2: f64,
    layout: DomainLayout,
}

/// Build the kernel of a family for given materials and layout.
pub fn make_kernel(family: KernelFamily, material: &Material, layout: &DomainLayout) -> Kernel {
    let d1 = layout.delta1;
    let d2 = layout.delta2;
    let k1 = material.kappa1;
    let k2 = material.kappa2;
    let c11 = 1.5 * k1 / d1.powi(3);
    let c22 = 1.5 * k2 / d2.powi(3);
    let (c12, c21) = match family {
        KernelFamily::K1 => (1.5 * k2 / d1.powi(3), 1.5 * k1 / d2.powi(3)),
        KernelFamily::K2 => (1.5 * k1 / d1.powi(3), 1.5 * k2 / d2.powi(3)),
        KernelFamily::K3 => {
            let avg = 0.75 * (k1 / d1.powi(3) + k2 / d2.powi(3));
            (avg, avg)
        }
        KernelFamily::K4 => (
            0.75 * (k1 + k2) / d1.powi(3),
            0.75 * (k1 + k2) / d2.powi(3),
        ),
    };
    Kernel {
        c11,
        c12,
        c21,
        c22,
        delta1: d1,
        delta2: d2,
        layout: *layout,
    }
}

impl Kernel {
    /// Amplitude for a point on side `p` interacting with a point on side `q`.
    #[inline]
    pub fn amplitude(&self, p: Side, q: Side) -> f64 {
        match (p, q) {
            (Side::Left, Side::Left) => self.c11,
            (Side::Left, Side::Right) => self.c12,
            (Side::Right, Side::Left) => self.c21,
            (Side::Right, Side::Right) => self.c22,
        }
    }

    /// Interaction radius seen from side `p`.
    #[inline]
    pub fn horizon(&self, p: Side) -> f64 {
        match p {
            Side::Left => self.delta1,
            Side::Right => self.delta2,
        }
    }

    pub fn layout(&self) -> &DomainLayout {
        &self.layout
    }

    /// Point evaluation `gamma(x, y)`. The interaction ball is closed; points
    /// exactly at the interface count as left-side. Both arguments must lie in
    /// the closed computational domain.
    pub fn eval(&self, x: f64, y: f64) -> Result<f64> {
        let p = self.layout.classify(x, Side::Left)?.side();
        let q = self.layout.classify(y, Side::Left)?.side();
        if (x - y).abs() <= self.horizon(p) {
            Ok(self.amplitude(p, q))
        } else {
            Ok(0.0)
        }
    }

    /// Whether the kernel is symmetric under swapping `x` and `y`, which
    /// requires matching cross amplitudes scaled to a common horizon — true
    /// for equal horizons, and for `K3` always in amplitude.
    pub fn has_symmetric_amplitudes(&self) -> bool {
        self.c12 == self.c21
    }
}

/// Amplitude constants for the planar analogue of the kernel, used to verify
/// the local diffusion limit in two dimensions. Same-side amplitudes are
/// `4 kappa / (pi delta^4)`; cross amplitudes are written as
/// `C~ * delta^beta` with `beta = -4`, so the moment condition
/// `pi * C~ * delta^beta * int_0^delta rho^3 drho = kappa` recovers the
/// matched coefficient exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelConstants2D {
    pub c11: f64,
    pub c22: f64,
    pub c_tilde12: f64,
    pub c_tilde21: f64,
    pub beta: i32,
}

/// Planar kernel constants for given materials and horizons.
pub fn kernel_constants_2d(material: &Material, delta1: f64, delta2: f64) -> KernelConstants2D {
    let pi = std::f64::consts::PI;
    KernelConstants2D {
        c11: 4.0 * material.kappa1 / (pi * delta1.powi(4)),
        c22: 4.0 * material.kappa2 / (pi * delta2.powi(4)),
        c_tilde12: 4.0 * material.kappa2 / pi,
        c_tilde21: 4.0 * material.kappa1 / pi,
        beta: -4,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn benchmark() -> (Material, DomainLayout) {
        (
            Material::new(1.0, 3.0).unwrap(),
            DomainLayout::centered_unit(2f64.powi(-5), 2f64.powi(-4)).unwrap(),
        )
    }

    #[test]
    fn same_side_amplitudes_are_family_independent() {
        let (mat, layout) = benchmark();
        for family in KernelFamily::ALL {
            let k = make_kernel(family, &mat, &layout);
            // 1.5 * 1 / 2^-15 and 1.5 * 3 / 2^-12
            assert_eq!(k.c11, 49152.0);
            assert_eq!(k.c22, 18432.0);
        }
    }

    #[test]
    fn cross_amplitudes_per_family() {
        let (mat, layout) = benchmark();
        let k1 = make_kernel(KernelFamily::K1, &mat, &layout);
        assert_eq!(k1.c12, 147456.0); // 1.5 * 3 / 2^-15
        assert_eq!(k1.c21, 6144.0); // 1.5 * 1 / 2^-12

        let k2 = make_kernel(KernelFamily::K2, &mat, &layout);
        assert_eq!(k2.c12, 49152.0);
        assert_eq!(k2.c21, 18432.0);

        let k3 = make_kernel(KernelFamily::K3, &mat, &layout);
        let avg = 0.75 * (1.0 / 2f64.powi(-15) + 3.0 / 2f64.powi(-12));
        assert_eq!(k3.c12, avg);
        assert_eq!(k3.c21, avg);
        assert!(k3.has_symmetric_amplitudes());

        let k4 = make_kernel(KernelFamily::K4, &mat, &layout);
        assert_eq!(k4.c12, 3.0 / 2f64.powi(-15));
        assert_eq!(k4.c21, 3.0 / 2f64.powi(-12));
        assert!(!k4.has_symmetric_amplitudes());
    }

    #[test]
    fn amplitudes_scale_linearly_in_kappa() {
        let layout = DomainLayout::centered_unit(2f64.powi(-5), 2f64.powi(-4)).unwrap();
        let base = Material::new(1.0, 3.0).unwrap();
        let scaled = Material::new(2.5, 7.5).unwrap();
        for family in KernelFamily::ALL {
            let k = make_kernel(family, &base, &layout);
            let s = make_kernel(family, &scaled, &layout);
            assert_relative_eq!(s.c11, 2.5 * k.c11, max_relative = 1e-15);
            assert_relative_eq!(s.c12, 2.5 * k.c12, max_relative = 1e-15);
            assert_relative_eq!(s.c21, 2.5 * k.c21, max_relative = 1e-15);
            assert_relative_eq!(s.c22, 2.5 * k.c22, max_relative = 1e-15);
        }
    }

    #[test]
    fn equal_materials_and_horizons_collapse_the_families() {
        let mat = Material::new(2.0, 2.0).unwrap();
        let layout = DomainLayout::centered_unit(0.125, 0.125).unwrap();
        let reference = make_kernel(KernelFamily::K1, &mat, &layout);
        for family in KernelFamily::ALL {
            let k = make_kernel(family, &mat, &layout);
            assert_eq!(k.c12, reference.c11);
            assert_eq!(k.c21, reference.c11);
        }
    }

    #[test]
    fn eval_uses_closed_ball_and_side_of_x() {
        let (mat, layout) = benchmark();
        let k = make_kernel(KernelFamily::K1, &mat, &layout);
        let d1 = 2f64.powi(-5);
        // x on the left reaching exactly delta1 to the right: inside closed ball
        assert_eq!(k.eval(-0.25, -0.25 + d1).unwrap(), 49152.0);
        assert_eq!(k.eval(-0.25, -0.25 + 1.01 * d1).unwrap(), 0.0);
        // cross-interface pair within reach of the left horizon
        assert_eq!(k.eval(-0.01, 0.01).unwrap(), 147456.0);
        // seen from the right the radius is delta2 and the amplitude c21
        assert_eq!(k.eval(0.01, -0.01).unwrap(), 6144.0);
        // the interface point itself counts as left
        assert_eq!(k.eval(0.0, 0.01).unwrap(), 147456.0);
        // out-of-domain arguments are rejected
        assert!(k.eval(-0.6, 0.0).is_err());
        assert!(k.eval(0.0, 0.7).is_err());
    }

    #[test]
    fn family_names_round_trip() {
        for family in KernelFamily::ALL {
            let name = family.to_string();
            assert_eq!(name.parse::<KernelFamily>().unwrap(), family);
        }
        assert_eq!("K2".parse::<KernelFamily>().unwrap(), KernelFamily::K2);
        assert!("k5".parse::<KernelFamily>().is_err());
        // serde uses the same lowercase names
        assert_eq!(serde_json::to_string(&KernelFamily::K3).unwrap(), "\"k3\"");
        let parsed: KernelFamily = serde_json::from_str("\"k4\"").unwrap();
        assert_eq!(parsed, KernelFamily::K4);
    }

    #[test]
    fn planar_constants_match_matched_coefficients() {
        let mat = Material::new(1.0, 3.0).unwrap();
        let c = kernel_constants_2d(&mat, 0.125, 0.25);
        let pi = std::f64::consts::PI;
        assert_relative_eq!(c.c11, 4.0 / (pi * 0.125f64.powi(4)), max_relative = 1e-15);
        assert_relative_eq!(c.c22, 12.0 / (pi * 0.25f64.powi(4)), max_relative = 1e-15);
        assert_eq!(c.beta, -4);
        // moment condition: pi * c_tilde * delta^beta * delta^4/4 = kappa
        for (c_tilde, kappa) in [(c.c_tilde12, mat.kappa2), (c.c_tilde21, mat.kappa1)] {
            for delta in [0.125f64, 0.25, 0.5] {
                let moment = pi * c_tilde * delta.powi(c.beta) * delta.powi(4) / 4.0;
                assert_relative_eq!(moment, kappa, max_relative = 1e-14);
            }
        }
    }
}
