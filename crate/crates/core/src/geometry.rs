//! Axis-parallel covering problems in the plane.
//!
//! * Covering colored points by few lines is colorful vertex cover: lines are
//!   vertices and a point is an edge between the (at most one horizontal and
//!   one vertical) lines through it. A point on a single line becomes a
//!   pendant edge.
//! * Hitting colored lines by few points is colorful edge cover: a point on
//!   two lines is an edge between them; a point on one line is an edge to a
//!   fresh dummy vertex whose color has requirement zero.
//!
//! Points on no line can never be covered and are dropped (and reported).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{
    Color, CoverageRequirements, CvcEdge, CvcInstance, EdgeEnds, EdgeId, EdgeSet,
    VertexColoredGraph, VertexId, VertexSet,
};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Orientation {
    /// `y = c`.
    Horizontal,
    /// `x = c`.
    Vertical,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AxisLine<T> {
    pub orientation: Orientation,
    pub coordinate: T,
    pub color: Option<Color>,
}

impl<T: Scalar> AxisLine<T> {
    pub fn horizontal(y: T) -> Self {
        AxisLine {
            orientation: Orientation::Horizontal,
            coordinate: y,
            color: None,
        }
    }

    pub fn vertical(x: T) -> Self {
        AxisLine {
            orientation: Orientation::Vertical,
            coordinate: x,
            color: None,
        }
    }

    pub fn with_color(self, color: Color) -> Self {
        AxisLine {
            color: Some(color),
            ..self
        }
    }

    pub fn contains(&self, p: &ColoredPoint<T>) -> bool {
        match self.orientation {
            Orientation::Horizontal => p.y == self.coordinate,
            Orientation::Vertical => p.x == self.coordinate,
        }
    }
}

impl<T: fmt::Display> fmt::Display for AxisLine<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.orientation {
            Orientation::Horizontal => write!(f, "y={}", self.coordinate),
            Orientation::Vertical => write!(f, "x={}", self.coordinate),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ColoredPoint<T> {
    pub x: T,
    pub y: T,
    pub color: Option<Color>,
}

impl<T: Scalar> ColoredPoint<T> {
    pub fn new(x: T, y: T) -> Self {
        ColoredPoint { x, y, color: None }
    }

    pub fn with_color(self, color: Color) -> Self {
        ColoredPoint {
            color: Some(color),
            ..self
        }
    }
}

impl<T: fmt::Display> fmt::Display for ColoredPoint<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Which of the two covering problems an instance poses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GeometryKind {
    /// Choose lines covering `r_t` points of each point color `t`.
    CoverPoints,
    /// Choose points hitting `r_x` lines of each line color `x`.
    HitLines,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeometryInstance<T> {
    pub kind: GeometryKind,
    pub lines: Vec<AxisLine<T>>,
    pub points: Vec<ColoredPoint<T>>,
    pub requirements: CoverageRequirements,
}

fn check_distinct_lines<T: Scalar>(lines: &[AxisLine<T>]) -> Result<()> {
    let mut seen = BTreeSet::new();
    for line in lines {
        if !seen.insert((line.orientation, &line.coordinate)) {
            return Err(Error::InvalidInstance(format!("duplicate line {line}")));
        }
    }
    Ok(())
}

fn required_color(color: Option<Color>, what: &str, colors: usize) -> Result<Color> {
    let color = color.ok_or_else(|| Error::InvalidInstance(format!("{what} without a color")))?;
    if color.0 == 0 || color.index() >= colors {
        return Err(Error::ColorOutOfRange {
            color: color.0,
            count: colors,
        });
    }
    Ok(color)
}

/// Indices of the horizontal and vertical line through each point.
struct Incidence {
    lines: Vec<(Option<usize>, Option<usize>)>,
}

impl Incidence {
    fn new<T: Scalar>(lines: &[AxisLine<T>], points: &[ColoredPoint<T>]) -> Self {
        let mut horizontal = BTreeMap::new();
        let mut vertical = BTreeMap::new();
        for (i, line) in lines.iter().enumerate() {
            match line.orientation {
                Orientation::Horizontal => horizontal.insert(&line.coordinate, i),
                Orientation::Vertical => vertical.insert(&line.coordinate, i),
            };
        }
        let lines = points
            .iter()
            .map(|p| (horizontal.get(&p.y).copied(), vertical.get(&p.x).copied()))
            .collect();
        Incidence { lines }
    }
}

/// Back-map of [`points_lines_to_cvc`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CvcGeometryMap<T> {
    lines: Vec<AxisLine<T>>,
    edge_points: Vec<usize>,
    dropped: Vec<usize>,
}

impl<T: Scalar> CvcGeometryMap<T> {
    /// Indices of input points lying on no line.
    pub fn dropped_points(&self) -> &[usize] {
        &self.dropped
    }

    /// Input point behind each edge.
    pub fn edge_point(&self, e: EdgeId) -> usize {
        self.edge_points[e.index()]
    }
}

/// Covering colored points by lines as colorful vertex cover.
///
/// Vertex `i` is line `i`. Duplicate points stay as parallel edges since each
/// copy counts toward its color's requirement.
pub fn points_lines_to_cvc<T: Scalar>(
    lines: &[AxisLine<T>],
    points: &[ColoredPoint<T>],
    req: &CoverageRequirements,
) -> Result<(CvcInstance, CvcGeometryMap<T>)> {
    check_distinct_lines(lines)?;
    let colors = req.len();
    let incidence = Incidence::new(lines, points);
    let mut edges = Vec::new();
    let mut edge_points = Vec::new();
    let mut dropped = Vec::new();
    for (k, p) in points.iter().enumerate() {
        let color = required_color(p.color, "point", colors)?;
        let v = |i: usize| VertexId::from_index(i);
        let ends = match incidence.lines[k] {
            (Some(h), Some(w)) => EdgeEnds::Pair(v(h.min(w)), v(h.max(w))),
            (Some(only), None) | (None, Some(only)) => EdgeEnds::Pendant(v(only)),
            (None, None) => {
                dropped.push(k);
                continue;
            }
        };
        edges.push(CvcEdge { ends, color });
        edge_points.push(k);
    }
    let inst = CvcInstance::new(lines.len(), colors, edges, req.clone())?;
    let map = CvcGeometryMap {
        lines: lines.to_vec(),
        edge_points,
        dropped,
    };
    Ok((inst, map))
}

/// The lines chosen by a vertex set, in vertex order.
pub fn lift_cvc_solution<T: Scalar>(
    chosen: &VertexSet,
    map: &CvcGeometryMap<T>,
) -> Result<Vec<AxisLine<T>>> {
    chosen
        .iter()
        .map(|v| {
            map.lines
                .get(v.index())
                .cloned()
                .ok_or(Error::VertexOutOfRange {
                    id: v.0,
                    count: map.lines.len(),
                })
        })
        .collect()
}

/// Back-map of [`lines_points_to_cec`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CecGeometryMap<T> {
    points: Vec<ColoredPoint<T>>,
    line_count: usize,
    edge_points: Vec<usize>,
    dropped: Vec<usize>,
    duplicates: Vec<usize>,
}

impl<T: Scalar> CecGeometryMap<T> {
    /// Indices of input points lying on no line.
    pub fn dropped_points(&self) -> &[usize] {
        &self.dropped
    }

    /// Indices of input points repeating an earlier location.
    pub fn duplicate_points(&self) -> &[usize] {
        &self.duplicates
    }

    /// Input point behind each edge.
    pub fn edge_point(&self, e: EdgeId) -> usize {
        self.edge_points[e.index()]
    }

    /// True for the dummy endpoints of single-line points.
    pub fn is_dummy(&self, v: VertexId) -> bool {
        v.index() >= self.line_count
    }

    /// Color reserved for dummy vertices.
    pub fn dummy_color(&self, colors: usize) -> Color {
        Color::from_index(colors)
    }
}

/// Hitting colored lines by points as colorful edge cover.
///
/// Vertices `1..=L` are the lines; each single-line point adds one dummy
/// vertex after them. The graph has one extra color for the dummies, with
/// requirement zero.
pub fn lines_points_to_cec<T: Scalar>(
    lines: &[AxisLine<T>],
    points: &[ColoredPoint<T>],
    req: &CoverageRequirements,
) -> Result<(VertexColoredGraph, CoverageRequirements, CecGeometryMap<T>)> {
    check_distinct_lines(lines)?;
    let colors = req.len();
    let mut vertex_colors = lines
        .iter()
        .map(|l| required_color(l.color, "line", colors))
        .collect::<Result<Vec<_>>>()?;
    let dummy_color = Color::from_index(colors);
    let incidence = Incidence::new(lines, points);
    let mut seen = BTreeSet::new();
    let mut edges = Vec::new();
    let mut edge_points = Vec::new();
    let mut dropped = Vec::new();
    let mut duplicates = Vec::new();
    for (k, p) in points.iter().enumerate() {
        if !seen.insert((&p.x, &p.y)) {
            duplicates.push(k);
            continue;
        }
        let v = |i: usize| VertexId::from_index(i);
        let edge = match incidence.lines[k] {
            (Some(h), Some(w)) => (v(h), v(w)),
            (Some(only), None) | (None, Some(only)) => {
                vertex_colors.push(dummy_color);
                (v(only), v(vertex_colors.len() - 1))
            }
            (None, None) => {
                dropped.push(k);
                continue;
            }
        };
        edges.push(edge);
        edge_points.push(k);
    }
    let g = VertexColoredGraph::new(colors + 1, vertex_colors, edges)?;
    let mut targets = req.as_slice().to_vec();
    targets.push(0);
    let map = CecGeometryMap {
        points: points.to_vec(),
        line_count: lines.len(),
        edge_points,
        dropped,
        duplicates,
    };
    Ok((g, CoverageRequirements::new(targets), map))
}

/// The points chosen by an edge set, in edge order.
pub fn lift_cec_solution<T: Scalar>(
    chosen: &EdgeSet,
    map: &CecGeometryMap<T>,
) -> Result<Vec<ColoredPoint<T>>> {
    chosen
        .iter()
        .map(|e| {
            map.edge_points
                .get(e.index())
                .map(|&k| map.points[k].clone())
                .ok_or(Error::EdgeOutOfRange {
                    id: e.0,
                    count: map.edge_points.len(),
                })
        })
        .collect()
}

/// Per-color number of points lying on some chosen line.
pub fn points_covered<T: Scalar>(
    chosen: &[AxisLine<T>],
    points: &[ColoredPoint<T>],
    colors: usize,
) -> Vec<u64> {
    let mut counts = vec![0; colors];
    for p in points {
        if let Some(c) = p.color {
            if c.index() < colors && chosen.iter().any(|l| l.contains(p)) {
                counts[c.index()] += 1;
            }
        }
    }
    counts
}

/// Per-color number of lines through some chosen point.
pub fn lines_hit<T: Scalar>(
    lines: &[AxisLine<T>],
    chosen: &[ColoredPoint<T>],
    colors: usize,
) -> Vec<u64> {
    let mut counts = vec![0; colors];
    for l in lines {
        if let Some(c) = l.color {
            if c.index() < colors && chosen.iter().any(|p| l.contains(p)) {
                counts[c.index()] += 1;
            }
        }
    }
    counts
}
