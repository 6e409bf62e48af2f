//! Finite pseudometric spaces, indexed families, quotients by finite
//! isometry groups, and the disjointness/boundedness predicates the
//! decomposition machinery is built from.

mod action;
mod components;
mod window;

pub use action::{quotient, quotient_by_subgroup, GroupAction};
pub use components::{
    is_r_disjoint, r_components, semi_bounded, uniform_bound, DisjointnessCheck, Partition,
    SemiBounded,
};
pub use window::{
    ball_space, conjugation_isometry_check, generate_subgroup, grid_space, left_mult_action,
    saturate_window, space_from_elements, BallWindow, ConjugationReport, GridMetric,
};

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dist::Dist;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpaceError {
    #[error("distance matrix must be square, got {0} entries for {1} points")]
    NotSquare(usize, usize),
    #[error("asymmetric distances between points {0} and {1}")]
    Asymmetric(usize, usize),
    #[error("nonzero self-distance at point {0}")]
    NonzeroDiagonal(usize),
    #[error("triangle inequality fails on points ({0},{1},{2})")]
    TriangleViolation(usize, usize, usize),
    #[error("point id {0} out of range (space has {1} points)")]
    PointOutOfRange(usize, usize),
    #[error("window cap exceeded: {size} points > cap {cap}")]
    CapExceeded { size: usize, cap: usize },
    #[error("metric family must be nonempty")]
    EmptyFamily,
    #[error("parse error at line {line}: {msg}")]
    BadFormat { line: usize, msg: String },
    #[error("map is not a permutation of the point set")]
    NotPermutation,
    #[error("action is not isometric: d({0},{1}) changes under a group element")]
    NotIsometric(usize, usize),
    #[error("action is not closed under composition/inverse")]
    NotClosed,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Algebra(#[from] crate::algebra::AlgebraError),
}

/// A finite pseudometric space with extended nonnegative integer
/// distances. Points are the ids 0..n; labels are optional decoration.
/// Grid coordinates, when present, record that the space was built as a
/// window onto a lattice (brick covers use them).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FinSpace {
    n: usize,
    dist: Vec<Dist>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    labels: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    coords: Option<Vec<Vec<i64>>>,
}

impl FinSpace {
    /// Fully validated constructor: symmetry, zero diagonal and the
    /// triangle inequality (infinity absorbs) are all checked.
    pub fn new(n: usize, dist: Vec<Dist>) -> Result<FinSpace, SpaceError> {
        let space = FinSpace::new_pseudometric_unchecked(n, dist)?;
        space.check_triangle()?;
        Ok(space)
    }

    /// Checks symmetry and the diagonal but skips the cubic triangle
    /// check; for matrices computed from a length function, where
    /// subadditivity guarantees the triangle inequality.
    pub fn new_pseudometric_unchecked(n: usize, dist: Vec<Dist>) -> Result<FinSpace, SpaceError> {
        if dist.len() != n * n {
            return Err(SpaceError::NotSquare(dist.len(), n));
        }
        for i in 0..n {
            if dist[i * n + i] != Dist::ZERO {
                return Err(SpaceError::NonzeroDiagonal(i));
            }
            for j in 0..i {
                if dist[i * n + j] != dist[j * n + i] {
                    return Err(SpaceError::Asymmetric(i, j));
                }
            }
        }
        Ok(FinSpace {
            n,
            dist,
            labels: None,
            coords: None,
        })
    }

    /// Single-point space.
    pub fn singleton() -> FinSpace {
        FinSpace {
            n: 1,
            dist: vec![Dist::ZERO],
            labels: None,
            coords: None,
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> FinSpace {
        assert_eq!(labels.len(), self.n);
        self.labels = Some(labels);
        self
    }

    pub fn with_coords(mut self, coords: Vec<Vec<i64>>) -> FinSpace {
        assert_eq!(coords.len(), self.n);
        self.coords = Some(coords);
        self
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn dist(&self, i: usize, j: usize) -> Dist {
        self.dist[i * self.n + j]
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn coords(&self) -> Option<&[Vec<i64>]> {
        self.coords.as_deref()
    }

    pub fn check_triangle(&self) -> Result<(), SpaceError> {
        let n = self.n;
        for i in 0..n {
            for j in 0..n {
                let dij = self.dist(i, j);
                for k in 0..n {
                    if dij > self.dist(i, k) + self.dist(k, j) {
                        return Err(SpaceError::TriangleViolation(i, k, j));
                    }
                }
            }
        }
        Ok(())
    }

    /// Largest pairwise distance; Fin(0) for empty or singleton spaces.
    pub fn diameter(&self) -> Dist {
        let mut best = Dist::ZERO;
        for i in 0..self.n {
            for j in 0..i {
                best = best.max(self.dist(i, j));
            }
        }
        best
    }

    /// Diameter of a subset of points.
    pub fn subset_diameter(&self, pts: &[usize]) -> Dist {
        let mut best = Dist::ZERO;
        for (a, &i) in pts.iter().enumerate() {
            for &j in &pts[..a] {
                best = best.max(self.dist(i, j));
            }
        }
        best
    }

    /// Set distance: min over cross pairs; Inf when either side is empty.
    pub fn set_distance(&self, a: &[usize], b: &[usize]) -> Dist {
        let mut best = Dist::Inf;
        for &i in a {
            for &j in b {
                best = best.min(self.dist(i, j));
            }
        }
        best
    }

    /// Induced subspace on the given points (in the given order).
    /// Point k of the result corresponds to pts[k].
    pub fn restrict(&self, pts: &[usize]) -> Result<FinSpace, SpaceError> {
        for &p in pts {
            if p >= self.n {
                return Err(SpaceError::PointOutOfRange(p, self.n));
            }
        }
        let m = pts.len();
        let mut dist = vec![Dist::ZERO; m * m];
        for (a, &i) in pts.iter().enumerate() {
            for (b, &j) in pts.iter().enumerate() {
                dist[a * m + b] = self.dist(i, j);
            }
        }
        let labels = self
            .labels
            .as_ref()
            .map(|ls| pts.iter().map(|&i| ls[i].clone()).collect());
        let coords = self
            .coords
            .as_ref()
            .map(|cs| pts.iter().map(|&i| cs[i].clone()).collect());
        Ok(FinSpace {
            n: m,
            dist,
            labels,
            coords,
        })
    }

    /// Pointwise max(1, d) off the diagonal: turns a pseudometric into a
    /// genuine metric without changing any coarse structure.
    pub fn metricize(&self) -> FinSpace {
        let mut out = self.clone();
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j {
                    out.dist[i * self.n + j] = crate::norms::metricize(self.dist(i, j), true);
                }
            }
        }
        out
    }

    /// Plain-text serialization: point count, then the strict lower
    /// triangle row by row, INF for infinity.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.n);
        for i in 1..self.n {
            let row: Vec<String> = (0..i).map(|j| self.dist(i, j).to_string()).collect();
            let _ = writeln!(out, "{}", row.join(" "));
        }
        out
    }

    /// Parses the `to_text` format. Lines starting with '#' are comments.
    pub fn from_text(text: &str) -> Result<FinSpace, SpaceError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (line_no, header) = lines.next().ok_or(SpaceError::BadFormat {
            line: 0,
            msg: "empty input".into(),
        })?;
        let n: usize = header.parse().map_err(|_| SpaceError::BadFormat {
            line: line_no,
            msg: format!("expected point count, got {header:?}"),
        })?;
        let mut dist = vec![Dist::ZERO; n * n];
        for i in 1..n {
            let (line_no, row) = lines.next().ok_or(SpaceError::BadFormat {
                line: 0,
                msg: format!("missing row {i} of the distance triangle"),
            })?;
            let toks: Vec<&str> = row.split_whitespace().collect();
            if toks.len() != i {
                return Err(SpaceError::BadFormat {
                    line: line_no,
                    msg: format!("row {i} must contain {i} entries, got {}", toks.len()),
                });
            }
            for (j, tok) in toks.iter().enumerate() {
                let d: Dist = tok.parse().map_err(|_| SpaceError::BadFormat {
                    line: line_no,
                    msg: format!("bad distance token {tok:?}"),
                })?;
                dist[i * n + j] = d;
                dist[j * n + i] = d;
            }
        }
        FinSpace::new(n, dist)
    }
}

/// A finite indexed collection of finite pseudometric spaces. All
/// decomposition statements quantify over the members uniformly.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MetricFamily {
    pub label: String,
    members: Vec<FinSpace>,
}

impl MetricFamily {
    pub fn new(label: impl Into<String>, members: Vec<FinSpace>) -> Result<MetricFamily, SpaceError> {
        if members.is_empty() {
            return Err(SpaceError::EmptyFamily);
        }
        Ok(MetricFamily {
            label: label.into(),
            members,
        })
    }

    pub fn of_one(label: impl Into<String>, space: FinSpace) -> MetricFamily {
        MetricFamily {
            label: label.into(),
            members: vec![space],
        }
    }

    pub fn members(&self) -> &[FinSpace] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}
