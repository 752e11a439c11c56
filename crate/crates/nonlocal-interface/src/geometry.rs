//! Domain layout, interaction regions, and interface-fitted meshes.
//!
//! The computational domain is the interval `(a, b)` split by an interface at
//! `x_interface` into a left and a right subdomain, padded by two constraint
//! regions: `[a - delta1, a]` on the left and `[b, b + delta2]` on the right.
//! Nonlocal problems impose their boundary data on these regions of positive
//! width (volume constraints), not on the endpoints alone.
//!
//! Meshes are uniform and interface-fitted: `a`, `x_interface`, `b`, and the
//! two outer edges all coincide with nodes, which requires every region width
//! to be an integer multiple of `h`. The interface node carries **two**
//! degrees of freedom — one whose hat function lives on the element to its
//! left and one living on the element to its right — so the discrete solution
//! may jump across the interface. Elements never straddle a region boundary,
//! and each element knows which side of the interface it belongs to.

use crate::{Error, Result};

/// Side of the interface. The left side carries `kappa1`/`delta1`, the right
/// side `kappa2`/`delta2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    /// The opposite side.
    pub fn other(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// Which of the four regions a point (or element) belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    /// Left constraint region `[a - delta1, a]` (closed).
    ConstraintLeft,
    /// Left subdomain `(a, x_interface)` (open).
    InteriorLeft,
    /// Right subdomain `(x_interface, b)` (open).
    InteriorRight,
    /// Right constraint region `[b, b + delta2]` (closed).
    ConstraintRight,
}

impl Region {
    /// The side of the interface this region lies on.
    pub fn side(self) -> Side {
        match self {
            Region::ConstraintLeft | Region::InteriorLeft => Side::Left,
            Region::InteriorRight | Region::ConstraintRight => Side::Right,
        }
    }

    /// Whether the region carries volume-constraint data.
    pub fn is_constraint(self) -> bool {
        matches!(self, Region::ConstraintLeft | Region::ConstraintRight)
    }
}

/// An open interval, possibly empty.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        Interval { lo, hi }
    }

    /// Width of the interval; zero when empty.
    pub fn width(&self) -> f64 {
        (self.hi - self.lo).max(0.0)
    }

    pub fn is_empty(&self) -> bool {
        self.hi <= self.lo
    }

    /// Membership in the open interval.
    pub fn contains(&self, x: f64) -> bool {
        self.lo < x && x < self.hi
    }

    /// Whether `self` is contained in `other` (empty intervals are contained
    /// in everything).
    pub fn is_subset_of(&self, other: &Interval) -> bool {
        self.is_empty() || (other.lo <= self.lo && self.hi <= other.hi)
    }
}

/// Geometry of the two-material domain: subdomain endpoints, interface
/// position, and the two horizons.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DomainLayout {
    pub a: f64,
    pub x_interface: f64,
    pub b: f64,
    pub delta1: f64,
    pub delta2: f64,
}

impl DomainLayout {
    /// Validated constructor: `a < x_interface < b` and positive horizons.
    pub fn new(a: f64, x_interface: f64, b: f64, delta1: f64, delta2: f64) -> Result<Self> {
        if !(a.is_finite() && x_interface.is_finite() && b.is_finite()) || a >= x_interface || x_interface >= b {
            return Err(Error::InvalidParameter {
                name: "x_interface",
                value: x_interface,
                requirement: "a < x_interface < b with finite endpoints",
            });
        }
        if !delta1.is_finite() || delta1 <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "delta1",
                value: delta1,
                requirement: "horizon must be positive and finite",
            });
        }
        if !delta2.is_finite() || delta2 <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "delta2",
                value: delta2,
                requirement: "horizon must be positive and finite",
            });
        }
        Ok(DomainLayout {
            a,
            x_interface,
            b,
            delta1,
            delta2,
        })
    }

    /// The benchmark geometry: unit interval `(-1/2, 1/2)` with the interface
    /// at the origin.
    pub fn centered_unit(delta1: f64, delta2: f64) -> Result<Self> {
        DomainLayout::new(-0.5, 0.0, 0.5, delta1, delta2)
    }

    /// Same subdomains with different horizons.
    pub fn with_horizons(&self, delta1: f64, delta2: f64) -> Result<Self> {
        DomainLayout::new(self.a, self.x_interface, self.b, delta1, delta2)
    }

    /// Left edge of the computational domain including the constraint region.
    pub fn left_extent(&self) -> f64 {
        self.a - self.delta1
    }

    /// Right edge of the computational domain including the constraint region.
    pub fn right_extent(&self) -> f64 {
        self.b + self.delta2
    }

    /// Classify a coordinate. Constraint regions are closed, subdomains open;
    /// a point exactly at the interface is attributed to `at_interface`.
    pub fn classify(&self, x: f64, at_interface: Side) -> Result<Region> {
        if x < self.left_extent() || x > self.right_extent() {
            return Err(Error::OutOfDomain {
                x,
                lo: self.left_extent(),
                hi: self.right_extent(),
            });
        }
        if x == self.x_interface {
            return Ok(match at_interface {
                Side::Left => Region::InteriorLeft,
                Side::Right => Region::InteriorRight,
            });
        }
        Ok(if x <= self.a {
            Region::ConstraintLeft
        } else if x < self.x_interface {
            Region::InteriorLeft
        } else if x < self.b {
            Region::InteriorRight
        } else {
            Region::ConstraintRight
        })
    }

    /// The interaction strips around the interface. Each strip is clipped to
    /// its host subdomain.
    pub fn interaction_regions(&self) -> RegionSet {
        let xg = self.x_interface;
        let clip_left = |lo: f64| lo.max(self.a);
        let clip_right = |hi: f64| hi.min(self.b);
        let delta_max = self.delta1.max(self.delta2);
        RegionSet {
            gamma12: Interval::new(xg, clip_right(xg + self.delta1)),
            gamma21: Interval::new(clip_left(xg - self.delta2), xg),
            under_gamma12: Interval::new(xg, clip_right(xg + self.delta2)),
            under_gamma21: Interval::new(clip_left(xg - self.delta1), xg),
            gamma_star: Interval::new(clip_left(xg - delta_max), clip_right(xg + delta_max)),
        }
    }
}

/// Interaction strips induced by the two horizons around the interface.
///
/// `gamma12` is the part of the right subdomain that points of the left side
/// can reach (radius `delta1`); `gamma21` mirrors it on the left (radius
/// `delta2`). The `under_` strips swap the radii: `under_gamma12` is the part
/// of the right subdomain reached by the *right* horizon from the left side,
/// `under_gamma21` its mirror. `gamma_star` is the larger-horizon union on
/// both sides of the interface (minus the interface point itself).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionSet {
    pub gamma12: Interval,
    pub gamma21: Interval,
    pub under_gamma12: Interval,
    pub under_gamma21: Interval,
    pub gamma_star: Interval,
}

/// Relative tolerance for deciding that a length ratio is an integer.
const COMMENSURATE_REL_TOL: f64 = 1e-9;

/// Check that `length/h` is a positive integer (within a small relative
/// tolerance) and return it.
pub(crate) fn commensurate(quantity: &'static str, length: f64, h: f64) -> Result<usize> {
    let ratio = length / h;
    let rounded = ratio.round();
    if rounded.is_nan() || rounded < 1.0 || (ratio - rounded).abs() > COMMENSURATE_REL_TOL * ratio.max(1.0) {
        return Err(Error::NonCommensurate { quantity, ratio });
    }
    Ok(rounded as usize)
}

/// One element of an interface-fitted mesh.
#[derive(Debug, Clone, Copy)]
pub struct Element {
    pub index: usize,
    pub lo: f64,
    pub hi: f64,
    pub region: Region,
    /// Global indices of the two degrees of freedom whose hat functions are
    /// supported here: `dofs[0]` is 1 at `lo`, `dofs[1]` is 1 at `hi`.
    pub dofs: [usize; 2],
}

impl Element {
    /// Values of the two local shape functions at `x`.
    #[inline]
    pub fn shape_values(&self, x: f64) -> [f64; 2] {
        let t = (x - self.lo) / (self.hi - self.lo);
        [1.0 - t, t]
    }

    /// The side of the interface this element lies on.
    #[inline]
    pub fn side(&self) -> Side {
        self.region.side()
    }
}

/// A uniform, interface-fitted mesh over `[a - delta1, b + delta2]` with a
/// double node at the interface.
#[derive(Debug, Clone, PartialEq)]
pub struct Mesh1D {
    layout: DomainLayout,
    h: f64,
    nodes: Vec<f64>,
    /// Node index of the interface (also the global index of the left
    /// interface degree of freedom).
    interface_node: usize,
    /// Elements per region: constraint-left, interior-left, interior-right,
    /// constraint-right.
    counts: [usize; 4],
}

/// Build a uniform interface-fitted mesh with spacing `h`.
///
/// Every region width must be an integer multiple of `h`; otherwise
/// [`Error::NonCommensurate`] names the offending ratio. The mesh has one
/// more degree of freedom than it has nodes: the interface node is doubled.
pub fn build_mesh(layout: &DomainLayout, h: f64) -> Result<Mesh1D> {
    if !h.is_finite() || h <= 0.0 {
        return Err(Error::InvalidParameter {
            name: "h",
            value: h,
            requirement: "mesh spacing must be positive and finite",
        });
    }
    let n1 = commensurate("delta1/h", layout.delta1, h)?;
    let n2 = commensurate("(x_interface - a)/h", layout.x_interface - layout.a, h)?;
    let n3 = commensurate("(b - x_interface)/h", layout.b - layout.x_interface, h)?;
    let n4 = commensurate("delta2/h", layout.delta2, h)?;
    let n = n1 + n2 + n3 + n4;

    let mut nodes: Vec<f64> = (0..=n).map(|i| layout.left_extent() + i as f64 * h).collect();
    // Pin the region boundaries exactly; for exactly commensurate input
    // (dyadic h and widths) these writes are no-ops.
    nodes[0] = layout.left_extent();
    nodes[n1] = layout.a;
    nodes[n1 + n2] = layout.x_interface;
    nodes[n1 + n2 + n3] = layout.b;
    nodes[n] = layout.right_extent();

    Ok(Mesh1D {
        layout: *layout,
        h,
        nodes,
        interface_node: n1 + n2,
        counts: [n1, n2, n3, n4],
    })
}

impl Mesh1D {
    pub fn layout(&self) -> &DomainLayout {
        &self.layout
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn element_count(&self) -> usize {
        self.nodes.len() - 1
    }

    /// Degrees of freedom: one per node, plus one for the doubled interface.
    pub fn dof_count(&self) -> usize {
        self.nodes.len() + 1
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// Node index of the interface.
    pub fn interface_node(&self) -> usize {
        self.interface_node
    }

    /// Degree of freedom supported on the element left of the interface.
    pub fn interface_dof_left(&self) -> usize {
        self.interface_node
    }

    /// Degree of freedom supported on the element right of the interface.
    pub fn interface_dof_right(&self) -> usize {
        self.interface_node + 1
    }

    /// Global degree of freedom sitting at node `i`; the doubled interface
    /// node maps to its **left** degree of freedom.
    pub fn dof_of_node(&self, node: usize) -> usize {
        if node <= self.interface_node {
            node
        } else {
            node + 1
        }
    }

    /// Node index under a degree of freedom (both interface dofs map to the
    /// interface node).
    pub fn node_of_dof(&self, dof: usize) -> usize {
        if dof <= self.interface_node + 1 {
            dof.min(self.interface_node)
        } else {
            dof - 1
        }
    }

    /// Coordinate of a degree of freedom.
    pub fn dof_coordinate(&self, dof: usize) -> f64 {
        self.nodes[self.node_of_dof(dof)]
    }

    /// The side whose material a degree of freedom belongs to; the two
    /// interface dofs split left/right.
    pub fn dof_side(&self, dof: usize) -> Side {
        if dof <= self.interface_dof_left() {
            Side::Left
        } else {
            Side::Right
        }
    }

    /// Region of element `k`, determined from the region element counts (no
    /// floating-point comparisons).
    fn element_region(&self, k: usize) -> Region {
        let [n1, n2, n3, _] = self.counts;
        if k < n1 {
            Region::ConstraintLeft
        } else if k < n1 + n2 {
            Region::InteriorLeft
        } else if k < n1 + n2 + n3 {
            Region::InteriorRight
        } else {
            Region::ConstraintRight
        }
    }

    /// Element `k`, with its region label and global dof pair.
    pub fn element(&self, k: usize) -> Element {
        let ig = self.interface_node;
        let left_node = k;
        let right_node = k + 1;
        let dl = if left_node == ig {
            self.interface_dof_right()
        } else {
            self.dof_of_node(left_node)
        };
        let dr = if right_node == ig {
            self.interface_dof_left()
        } else {
            self.dof_of_node(right_node)
        };
        Element {
            index: k,
            lo: self.nodes[k],
            hi: self.nodes[k + 1],
            region: self.element_region(k),
            dofs: [dl, dr],
        }
    }

    /// Iterator over all elements in ascending order.
    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.element_count()).map(move |k| self.element(k))
    }

    /// Index of the element containing `x` (boundary points resolve to the
    /// element on their right, except at the very last node).
    pub fn element_containing(&self, x: f64) -> Result<usize> {
        let lo = self.layout.left_extent();
        let hi = self.layout.right_extent();
        if !(x >= lo && x <= hi) {
            return Err(Error::OutOfDomain { x, lo, hi });
        }
        let k = ((x - lo) / self.h).floor() as usize;
        Ok(k.min(self.element_count() - 1))
    }

    /// Whether a degree of freedom sits in a closed constraint region.
    pub fn is_constrained_dof(&self, dof: usize) -> bool {
        let [n1, n2, n3, _] = self.counts;
        let node = self.node_of_dof(dof);
        node <= n1 || node >= n1 + n2 + n3
    }

    /// All constrained degrees of freedom, ascending.
    pub fn constrained_dofs(&self) -> Vec<usize> {
        (0..self.dof_count()).filter(|&d| self.is_constrained_dof(d)).collect()
    }

    /// All free degrees of freedom, ascending.
    pub fn free_dofs(&self) -> Vec<usize> {
        (0..self.dof_count()).filter(|&d| !self.is_constrained_dof(d)).collect()
    }

    /// A band half-width that certainly covers every nonzero stiffness entry:
    /// hat functions are coupled only within the larger horizon plus one
    /// element on each side, shifted by one extra index by the double node.
    pub fn coupling_half_bandwidth(&self, delta_max: f64) -> usize {
        (delta_max / self.h).ceil() as usize + 3
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn benchmark_layout() -> DomainLayout {
        DomainLayout::centered_unit(2f64.powi(-5), 2f64.powi(-4)).unwrap()
    }

    #[test]
    fn benchmark_mesh_counts() {
        // Region element counts 1 + 16 + 16 + 2 by hand.
        let mesh = build_mesh(&benchmark_layout(), 2f64.powi(-5)).unwrap();
        assert_eq!(mesh.element_count(), 35);
        assert_eq!(mesh.node_count(), 36);
        assert_eq!(mesh.dof_count(), 37);
        assert_eq!(mesh.interface_node(), 17);
        assert_eq!(mesh.counts, [1, 16, 16, 2]);
    }

    #[test]
    fn region_boundaries_are_nodes_and_spacing_is_uniform() {
        let layout = benchmark_layout();
        let mesh = build_mesh(&layout, 2f64.powi(-5)).unwrap();
        let nodes = mesh.nodes();
        for anchor in [
            layout.left_extent(),
            layout.a,
            layout.x_interface,
            layout.b,
            layout.right_extent(),
        ] {
            assert!(
                nodes.contains(&anchor),
                "anchor {anchor} missing from nodes"
            );
        }
        for w in nodes.windows(2) {
            assert_abs_diff_eq!(w[1] - w[0], mesh.h(), epsilon = 1e-12 * mesh.h());
        }
    }

    #[test]
    fn non_commensurate_spacing_is_rejected() {
        // delta1/h = 1.5
        let layout = DomainLayout::centered_unit(1.5 * 2f64.powi(-5), 2f64.powi(-4)).unwrap();
        match build_mesh(&layout, 2f64.powi(-5)) {
            Err(Error::NonCommensurate { quantity, ratio }) => {
                assert_eq!(quantity, "delta1/h");
                assert_abs_diff_eq!(ratio, 1.5, epsilon = 1e-12);
            }
            other => panic!("expected NonCommensurate, got {other:?}"),
        }
    }

    #[test]
    fn horizon_smaller_than_h_is_rejected() {
        let layout = DomainLayout::centered_unit(2f64.powi(-7), 2f64.powi(-4)).unwrap();
        assert!(matches!(
            build_mesh(&layout, 2f64.powi(-5)),
            Err(Error::NonCommensurate { .. })
        ));
    }

    #[test]
    fn refinement_doubles_elements_and_keeps_anchors() {
        let layout = benchmark_layout();
        let coarse = build_mesh(&layout, 2f64.powi(-5)).unwrap();
        let fine = build_mesh(&layout, 2f64.powi(-6)).unwrap();
        assert_eq!(fine.element_count(), 2 * coarse.element_count());
        for &x in coarse.nodes() {
            assert!(fine.nodes().contains(&x), "coarse node {x} lost on refinement");
        }
    }

    #[test]
    fn classification_follows_closed_constraint_open_interior() {
        let layout = benchmark_layout();
        assert_eq!(layout.classify(-0.5, Side::Left).unwrap(), Region::ConstraintLeft);
        assert_eq!(layout.classify(0.5, Side::Left).unwrap(), Region::ConstraintRight);
        assert_eq!(layout.classify(-0.25, Side::Left).unwrap(), Region::InteriorLeft);
        assert_eq!(layout.classify(0.25, Side::Left).unwrap(), Region::InteriorRight);
        assert_eq!(layout.classify(-0.51, Side::Left).unwrap(), Region::ConstraintLeft);
        assert_eq!(layout.classify(0.55, Side::Left).unwrap(), Region::ConstraintRight);
        assert_eq!(layout.classify(0.0, Side::Left).unwrap(), Region::InteriorLeft);
        assert_eq!(layout.classify(0.0, Side::Right).unwrap(), Region::InteriorRight);
        assert!(matches!(
            layout.classify(-0.54, Side::Left),
            Err(Error::OutOfDomain { .. })
        ));
        assert!(matches!(
            layout.classify(0.57, Side::Left),
            Err(Error::OutOfDomain { .. })
        ));
    }

    #[test]
    fn interaction_regions_for_benchmark_horizons() {
        // delta1 = 2^-5, delta2 = 2^-4: strips derived by interval arithmetic.
        let rs = benchmark_layout().interaction_regions();
        let d1 = 2f64.powi(-5);
        let d2 = 2f64.powi(-4);
        assert_abs_diff_eq!(rs.gamma12.lo, 0.0);
        assert_abs_diff_eq!(rs.gamma12.hi, d1);
        assert_abs_diff_eq!(rs.gamma21.lo, -d2);
        assert_abs_diff_eq!(rs.gamma21.hi, 0.0);
        assert_abs_diff_eq!(rs.under_gamma12.lo, 0.0);
        assert_abs_diff_eq!(rs.under_gamma12.hi, d2);
        assert_abs_diff_eq!(rs.under_gamma21.lo, -d1);
        assert_abs_diff_eq!(rs.under_gamma21.hi, 0.0);
        assert_abs_diff_eq!(rs.gamma_star.lo, -d2);
        assert_abs_diff_eq!(rs.gamma_star.hi, d2);
    }

    #[test]
    fn interaction_regions_clip_to_subdomains() {
        // Horizons wider than the subdomains: strips saturate at a and b.
        let layout = DomainLayout::centered_unit(0.7, 0.9).unwrap();
        let rs = layout.interaction_regions();
        assert_abs_diff_eq!(rs.gamma12.hi, 0.5);
        assert_abs_diff_eq!(rs.gamma21.lo, -0.5);
        assert_abs_diff_eq!(rs.gamma_star.lo, -0.5);
        assert_abs_diff_eq!(rs.gamma_star.hi, 0.5);
    }

    #[test]
    fn interaction_regions_shrink_monotonically_with_horizons() {
        let mut previous: Option<RegionSet> = None;
        for k in 1..8 {
            let delta = 2f64.powi(-k);
            let rs = DomainLayout::centered_unit(delta, delta).unwrap().interaction_regions();
            if let Some(p) = previous {
                assert!(rs.gamma12.is_subset_of(&p.gamma12));
                assert!(rs.gamma21.is_subset_of(&p.gamma21));
                assert!(rs.under_gamma12.is_subset_of(&p.under_gamma12));
                assert!(rs.under_gamma21.is_subset_of(&p.under_gamma21));
                assert!(rs.gamma_star.is_subset_of(&p.gamma_star));
            }
            previous = Some(rs);
        }
    }

    #[test]
    fn double_node_shares_coordinate_and_splits_supports() {
        let mesh = build_mesh(&benchmark_layout(), 2f64.powi(-5)).unwrap();
        let dl = mesh.interface_dof_left();
        let dr = mesh.interface_dof_right();
        assert_eq!(dr, dl + 1);
        assert_eq!(mesh.dof_coordinate(dl), mesh.dof_coordinate(dr));
        assert_eq!(mesh.dof_coordinate(dl), 0.0);
        // exactly two dofs share the interface coordinate
        let at_interface = (0..mesh.dof_count())
            .filter(|&d| mesh.dof_coordinate(d) == 0.0)
            .count();
        assert_eq!(at_interface, 2);
        // the left dof appears only in the element left of the interface
        let left_el = mesh.element(mesh.interface_node() - 1);
        let right_el = mesh.element(mesh.interface_node());
        assert_eq!(left_el.dofs[1], dl);
        assert_eq!(right_el.dofs[0], dr);
        assert_eq!(left_el.region, Region::InteriorLeft);
        assert_eq!(right_el.region, Region::InteriorRight);
    }

    #[test]
    fn dof_node_maps_are_mutually_inverse() {
        let mesh = build_mesh(&benchmark_layout(), 2f64.powi(-5)).unwrap();
        for node in 0..mesh.node_count() {
            assert_eq!(mesh.node_of_dof(mesh.dof_of_node(node)), node);
        }
        for dof in 0..mesh.dof_count() {
            let node = mesh.node_of_dof(dof);
            let back = mesh.dof_of_node(node);
            if dof == mesh.interface_dof_right() {
                assert_eq!(back, mesh.interface_dof_left());
            } else {
                assert_eq!(back, dof);
            }
        }
    }

    #[test]
    fn constrained_dof_count_matches_region_widths() {
        // (delta1/h + 1) + (delta2/h + 1) constrained dofs
        let mesh = build_mesh(&benchmark_layout(), 2f64.powi(-5)).unwrap();
        assert_eq!(mesh.constrained_dofs().len(), (1 + 1) + (2 + 1));
        assert_eq!(mesh.free_dofs().len(), 32);
        let fine = build_mesh(&benchmark_layout(), 2f64.powi(-8)).unwrap();
        assert_eq!(fine.constrained_dofs().len(), (8 + 1) + (16 + 1));
        assert_eq!(fine.free_dofs().len(), 256);
    }

    #[test]
    fn element_containing_locates_interior_points() {
        let mesh = build_mesh(&benchmark_layout(), 2f64.powi(-5)).unwrap();
        for k in 0..mesh.element_count() {
            let el = mesh.element(k);
            let mid = 0.5 * (el.lo + el.hi);
            assert_eq!(mesh.element_containing(mid).unwrap(), k);
        }
        assert!(mesh.element_containing(1.0).is_err());
    }
}
