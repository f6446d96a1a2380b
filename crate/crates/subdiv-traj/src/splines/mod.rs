//! Composite Bezier trajectory representation: single pieces, De Casteljau
//! subdivision, derivative stencils, C^k continuity elimination, and the
//! subdivision history that the solver refines.

mod composite;
mod history;
mod stencils;

pub use composite::{build_composite, CompositeBasis, CompositeParams, CompositeTrajectory, PieceMap};
pub use history::{HistoryEntry, SubdivisionHistory};
pub use stencils::{binomial, derivative_stencil, stencils, SubdivisionStencils};

use nalgebra::Point3;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SplineError {
    #[error("curve parameter {0} outside [0, 1]")]
    ParamOutOfRange(f64),
    #[error("degree {degree} too low: need at least {required} for C^{continuity} continuity")]
    DegreeTooLow { degree: usize, required: usize, continuity: usize },
    #[error("derivative order {order} exceeds degree {degree}")]
    OrderExceedsDegree { order: usize, degree: usize },
    #[error("need at least one piece")]
    NoPieces,
    #[error("piece {piece} has {got} control points, expected {expected}")]
    ControlCountMismatch { piece: usize, got: usize, expected: usize },
    #[error("degenerate waypoints: points {0} and {1} coincide")]
    DegenerateWaypoints(usize, usize),
}

/// One polynomial piece of a composite curve, stored by its control points.
#[derive(Debug, Clone, PartialEq)]
pub struct BezierPiece {
    points: Vec<Point3<f64>>,
}

impl BezierPiece {
    pub fn new(points: Vec<Point3<f64>>) -> Self {
        assert!(!points.is_empty(), "a Bezier piece needs control points");
        BezierPiece { points }
    }

    pub fn degree(&self) -> usize {
        self.points.len() - 1
    }

    pub fn control_points(&self) -> &[Point3<f64>] {
        &self.points
    }

    /// Evaluate the curve at `s` in [0, 1] by De Casteljau recursion.
    pub fn evaluate(&self, s: f64) -> Result<Point3<f64>, SplineError> {
        if !(0.0..=1.0).contains(&s) {
            return Err(SplineError::ParamOutOfRange(s));
        }
        let mut tmp: Vec<Point3<f64>> = self.points.clone();
        let m = self.degree();
        for r in 1..=m {
            for j in 0..=(m - r) {
                tmp[j] = Point3::from(tmp[j].coords.lerp(&tmp[j + 1].coords, s));
            }
        }
        Ok(tmp[0])
    }

    /// Split at s = 1/2. The two children reparametrize the parent exactly:
    /// left(s) = parent(s/2) and right(s) = parent((s+1)/2).
    pub fn subdivide(&self) -> (BezierPiece, BezierPiece) {
        let st = stencils(self.degree());
        (self.apply_map(&st.d1), self.apply_map(&st.d2))
    }

    /// Control points of the `order`-th s-derivative curve (degree M-order).
    pub fn derivative_controls(&self, order: usize) -> Result<BezierPiece, SplineError> {
        let m = self.degree();
        if order > m {
            return Err(SplineError::OrderExceedsDegree { order, degree: m });
        }
        let stencil = derivative_stencil(m, order);
        Ok(self.apply_map(&stencil))
    }

    /// Maximum pairwise distance among control points: the diameter of
    /// their convex hull.
    pub fn hull_diameter(&self) -> f64 {
        let mut best = 0.0f64;
        for i in 0..self.points.len() {
            for j in (i + 1)..self.points.len() {
                best = best.max((self.points[i] - self.points[j]).norm());
            }
        }
        best
    }

    /// Total length of the control polygon; an upper bound on arc length.
    pub fn control_polygon_length(&self) -> f64 {
        self.points.windows(2).map(|w| (w[1] - w[0]).norm()).sum()
    }

    fn apply_map(&self, m: &nalgebra::DMatrix<f64>) -> BezierPiece {
        let mut out = vec![Point3::origin(); m.nrows()];
        for (i, p) in out.iter_mut().enumerate() {
            let mut acc = nalgebra::Vector3::zeros();
            for j in 0..m.ncols() {
                acc += self.points[j].coords * m[(i, j)];
            }
            *p = Point3::from(acc);
        }
        BezierPiece { points: out }
    }
}
