use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("configuration is not convex with bodies 1,2 on one diagonal")]
    NotConvex,
    #[error("degenerate configuration: smallest triangle area {area:e} below {threshold:e}")]
    Degenerate { area: f64, threshold: f64 },
    #[error("distances are not planar: |S| = {value:e} exceeds {threshold:e}")]
    NotPlanar { value: f64, threshold: f64 },
    #[error("face triangle {face:?} violates the triangle inequality")]
    NotRealizable { face: [usize; 3] },
    #[error("bodies {0} and {1} collide")]
    Collision(usize, usize),
    #[error("invalid body indices {0:?}")]
    Index(Vec<usize>),
    #[error("no convergence after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },
    #[error("iterate left the convex region after {iterations} iterations")]
    LeftConvexRegion { iterations: usize },
    #[error("singular Jacobian at iteration {iterations}")]
    SingularJacobian { iterations: usize },
    #[error("io error on {path}: {message}")]
    Io { path: String, message: String },
}
