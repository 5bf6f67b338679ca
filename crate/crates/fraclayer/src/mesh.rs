//! Meshes on [0, L]: uniform, or graded toward one or both ends.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MeshError {
    #[error("mesh needs at least one interval, got n = {n}")]
    TooFew { n: usize },
    #[error("mesh length must be positive, got {length}")]
    BadLength { length: f64 },
    #[error("grading exponent must be >= 1, got r = {r}")]
    BadGrading { r: f64 },
    #[error("graded(both) requires an even interval count, got n = {n}")]
    OddBoth { n: usize },
    #[error("node sequence is not strictly increasing near index {index}")]
    NotMonotone { index: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GradeSide {
    Left,
    Right,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MeshKind {
    Uniform,
    Graded { r: f64, side: GradeSide },
    /// Explicit node list (e.g. piecewise-uniform Shishkin meshes).
    Custom,
}

/// Strictly increasing nodes `x_0 = 0 < x_1 < ... < x_N = L`.
#[derive(Debug, Clone)]
pub struct Mesh {
    nodes: Vec<f64>,
    kind: MeshKind,
}

impl Mesh {
    pub fn uniform(n: usize, length: f64) -> Result<Mesh, MeshError> {
        validate(n, length)?;
        let nodes = (0..=n).map(|i| length * i as f64 / n as f64).collect();
        finish(nodes, MeshKind::Uniform)
    }

    /// Graded mesh `x_i = L (i/N)^r` (grading toward x = 0), its mirror, or
    /// the two glued at L/2.
    pub fn graded(n: usize, length: f64, r: f64, side: GradeSide) -> Result<Mesh, MeshError> {
        validate(n, length)?;
        if !(r >= 1.0) {
            return Err(MeshError::BadGrading { r });
        }
        let nodes: Vec<f64> = match side {
            GradeSide::Left => (0..=n)
                .map(|i| length * (i as f64 / n as f64).powf(r))
                .collect(),
            GradeSide::Right => (0..=n)
                .map(|i| length * (1.0 - ((n - i) as f64 / n as f64).powf(r)))
                .collect(),
            GradeSide::Both => {
                if n % 2 != 0 {
                    return Err(MeshError::OddBoth { n });
                }
                let half = length / 2.0;
                (0..=n)
                    .map(|i| {
                        if i <= n / 2 {
                            half * (2.0 * i as f64 / n as f64).powf(r)
                        } else {
                            length - half * (2.0 * (n - i) as f64 / n as f64).powf(r)
                        }
                    })
                    .collect()
            }
        };
        finish(nodes, MeshKind::Graded { r, side })
    }

    /// Mesh from an explicit strictly increasing node list starting at 0.
    pub fn from_nodes(nodes: Vec<f64>) -> Result<Mesh, MeshError> {
        if nodes.len() < 2 {
            return Err(MeshError::TooFew { n: 0 });
        }
        if nodes[0] != 0.0 {
            return Err(MeshError::NotMonotone { index: 0 });
        }
        finish(nodes, MeshKind::Custom)
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn kind(&self) -> MeshKind {
        self.kind
    }

    /// Interval count N.
    pub fn n_intervals(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn length(&self) -> f64 {
        *self.nodes.last().unwrap()
    }

    /// Rebuilds the same family with a different interval count; custom
    /// meshes have no family to rebuild.
    pub fn refined(&self, n: usize) -> Result<Mesh, MeshError> {
        match self.kind {
            MeshKind::Uniform => Mesh::uniform(n, self.length()),
            MeshKind::Graded { r, side } => Mesh::graded(n, self.length(), r, side),
            MeshKind::Custom => Err(MeshError::TooFew { n }),
        }
    }
}

fn validate(n: usize, length: f64) -> Result<(), MeshError> {
    if n == 0 {
        return Err(MeshError::TooFew { n });
    }
    if !(length > 0.0) || !length.is_finite() {
        return Err(MeshError::BadLength { length });
    }
    Ok(())
}

fn finish(nodes: Vec<f64>, kind: MeshKind) -> Result<Mesh, MeshError> {
    for i in 0..nodes.len() - 1 {
        if !(nodes[i + 1] > nodes[i]) {
            return Err(MeshError::NotMonotone { index: i });
        }
    }
    Ok(Mesh { nodes, kind })
}
