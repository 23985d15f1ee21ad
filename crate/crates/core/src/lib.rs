//! Equal-area convex fan partitions of convex polygons and the search for
//! fans whose pieces have nearly equal perimeters.
//!
//! Everything is generic over the scalar type; the aliases below fix `f64`,
//! with `*32` variants for `f32`.

pub mod fairness;
pub mod geometry;
pub mod optimize;
pub mod partition;
pub mod scalar;
pub mod search;
pub mod shapes;

pub use fairness::{FairnessValue, ThetaMode};
pub use geometry::PointClass;
pub use scalar::Scalar;

pub type Point = geometry::Point<f64>;
pub type Polygon = geometry::ConvexPolygon<f64>;
pub type Fan = partition::Fan<f64>;
pub type FanPartition = partition::FanPartition<f64>;
pub type Fractions = partition::Fractions<f64>;
pub type Fairness = fairness::FairnessValue<f64>;
pub type Terrain = search::Terrain<f64>;
pub type Minimum = search::Minimum<f64>;
pub type CandidateSet = search::CandidateSet<f64>;

pub type Point32 = geometry::Point<f32>;
pub type Polygon32 = geometry::ConvexPolygon<f32>;
pub type Terrain32 = search::Terrain<f32>;
