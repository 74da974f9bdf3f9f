//! Line-oriented instance files.
//!
//! ```text
//! # colorful vertex cover
//! problem cvc
//! vertices 3
//! colors 2
//! require 1 1
//! edge 1 2 1
//! edge 3 - 2
//! ```
//!
//! Edge-cover files use `problem cec`, one `vcolor <v> <c>` per vertex and
//! uncolored `edge <u> <v>` lines. Geometric files use `problem cover-points`
//! or `problem hit-lines` with `line h|v <coord> [color]`,
//! `point <x> <y> [color]` and `require`; the number of colors is the arity of
//! `require`. Coordinates are integers or `p/q` rationals.

use std::fmt::Write as _;

use faircover::geometry::{GeometryInstance, GeometryKind, Orientation};
use faircover::{
    AxisLine, Color, ColoredPoint, CoverageRequirements, CvcEdge, CvcInstance, EdgeEnds, Rational,
    VertexColoredGraph, VertexId,
};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Instance {
    Cvc(CvcInstance),
    Cec {
        graph: VertexColoredGraph,
        requirements: CoverageRequirements,
    },
    Geometry(GeometryInstance<Rational>),
}

impl Instance {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Instance::Cvc(_) => "cvc",
            Instance::Cec { .. } => "cec",
            Instance::Geometry(g) => match g.kind {
                GeometryKind::CoverPoints => "cover-points",
                GeometryKind::HitLines => "hit-lines",
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    At { line: usize, message: String },
    #[error("{0}")]
    File(String),
}

fn at(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::At {
        line,
        message: message.into(),
    }
}

struct Field<T> {
    value: Option<(usize, T)>,
    name: &'static str,
}

impl<T> Field<T> {
    fn new(name: &'static str) -> Self {
        Field { value: None, name }
    }

    fn set(&mut self, line: usize, value: T) -> Result<(), ParseError> {
        if let Some((first, _)) = self.value {
            return Err(at(
                line,
                format!("second `{}` line (first on line {first})", self.name),
            ));
        }
        self.value = Some((line, value));
        Ok(())
    }

    fn get(self) -> Result<(usize, T), ParseError> {
        self.value
            .ok_or_else(|| ParseError::File(format!("missing `{}` line", self.name)))
    }
}

fn number<T: std::str::FromStr>(line: usize, token: &str, what: &str) -> Result<T, ParseError> {
    token
        .parse()
        .map_err(|_| at(line, format!("expected {what}, found `{token}`")))
}

fn coordinate(line: usize, token: &str) -> Result<Rational, ParseError> {
    let valid = token
        .split_once('/')
        .is_none_or(|(_, q)| q.trim_start_matches(['+', '-']).chars().any(|c| c != '0'));
    if !valid {
        return Err(at(line, format!("zero denominator in `{token}`")));
    }
    number(line, token, "a coordinate")
}

fn color(line: usize, token: &str, colors: usize) -> Result<Color, ParseError> {
    let c: u32 = number(line, token, "a color")?;
    if c == 0 || c as usize > colors {
        return Err(at(line, format!("color {c} out of range 1..={colors}")));
    }
    Ok(Color(c))
}

fn vertex(line: usize, token: &str, n: usize) -> Result<VertexId, ParseError> {
    let v: usize = number(line, token, "a vertex id")?;
    if v == 0 || v > n {
        return Err(at(line, format!("vertex {v} out of range 1..={n}")));
    }
    Ok(VertexId(v))
}

fn arity(
    line: usize,
    args: &[&str],
    expected: std::ops::RangeInclusive<usize>,
    keyword: &str,
) -> Result<(), ParseError> {
    if !expected.contains(&args.len()) {
        let want = if expected.start() == expected.end() {
            expected.start().to_string()
        } else {
            format!("{} to {}", expected.start(), expected.end())
        };
        return Err(at(
            line,
            format!("`{keyword}` takes {want} arguments, found {}", args.len()),
        ));
    }
    Ok(())
}

/// Parses an instance file.
pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let lines: Vec<(usize, Vec<&str>)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| {
            (
                i + 1,
                l.split('#')
                    .next()
                    .unwrap_or("")
                    .split_whitespace()
                    .collect::<Vec<_>>(),
            )
        })
        .filter(|(_, tokens)| !tokens.is_empty())
        .collect();
    let Some((header_line, header)) = lines.first() else {
        return Err(ParseError::File("missing problem header".into()));
    };
    if header[0] != "problem" {
        return Err(at(*header_line, "missing problem header"));
    }
    arity(*header_line, &header[1..], 1..=1, "problem")?;
    let body = &lines[1..];
    match header[1] {
        "cvc" => parse_cvc(body).map(Instance::Cvc),
        "cec" => parse_cec(body),
        "cover-points" => parse_geometry(body, GeometryKind::CoverPoints),
        "hit-lines" => parse_geometry(body, GeometryKind::HitLines),
        other => Err(at(*header_line, format!("unknown problem `{other}`"))),
    }
}

/// The `vertices`, `colors` and `require` lines shared by the graph formats.
struct Preamble {
    vertices: Field<usize>,
    colors: Field<usize>,
    require: Field<Vec<u64>>,
}

impl Preamble {
    fn new() -> Self {
        Preamble {
            vertices: Field::new("vertices"),
            colors: Field::new("colors"),
            require: Field::new("require"),
        }
    }

    /// Consumes the line if it belongs to the preamble.
    fn take(&mut self, line: usize, keyword: &str, args: &[&str]) -> Result<bool, ParseError> {
        match keyword {
            "vertices" => {
                arity(line, args, 1..=1, keyword)?;
                self.vertices
                    .set(line, number(line, args[0], "a vertex count")?)?;
            }
            "colors" => {
                arity(line, args, 1..=1, keyword)?;
                self.colors
                    .set(line, number(line, args[0], "a color count")?)?;
            }
            "require" => {
                let targets = args
                    .iter()
                    .map(|t| number(line, t, "a requirement"))
                    .collect::<Result<_, _>>()?;
                self.require.set(line, targets)?;
            }
            _ => return Ok(false),
        }
        Ok(true)
    }

    fn finish(self) -> Result<(usize, usize, CoverageRequirements), ParseError> {
        let (_, n) = self.vertices.get()?;
        let (_, colors) = self.colors.get()?;
        let (line, targets) = self.require.get()?;
        if targets.len() != colors {
            return Err(at(
                line,
                format!(
                    "`require` lists {} values for {colors} colors",
                    targets.len()
                ),
            ));
        }
        Ok((n, colors, CoverageRequirements::new(targets)))
    }
}

fn unknown(line: usize, keyword: &str) -> ParseError {
    at(line, format!("unknown keyword `{keyword}`"))
}

fn parse_cvc(body: &[(usize, Vec<&str>)]) -> Result<CvcInstance, ParseError> {
    let mut pre = Preamble::new();
    let mut raw_edges = Vec::new();
    for (line, tokens) in body {
        let (keyword, args) = (tokens[0], &tokens[1..]);
        if pre.take(*line, keyword, args)? {
            continue;
        }
        match keyword {
            "edge" => {
                arity(*line, args, 3..=3, keyword)?;
                raw_edges.push((*line, args.to_vec()));
            }
            _ => return Err(unknown(*line, keyword)),
        }
    }
    let (n, colors, req) = pre.finish()?;
    let mut edges = Vec::with_capacity(raw_edges.len());
    for (line, args) in raw_edges {
        let u = vertex(line, args[0], n)?;
        let ends = if args[1] == "-" {
            EdgeEnds::Pendant(u)
        } else {
            let v = vertex(line, args[1], n)?;
            if u == v {
                return Err(at(
                    line,
                    format!("self-loop at vertex {u}; write `edge {u} - <color>`"),
                ));
            }
            EdgeEnds::Pair(u.min(v), u.max(v))
        };
        edges.push(CvcEdge {
            ends,
            color: color(line, args[2], colors)?,
        });
    }
    CvcInstance::new(n, colors, edges, req).map_err(|e| ParseError::File(e.to_string()))
}

fn parse_cec(body: &[(usize, Vec<&str>)]) -> Result<Instance, ParseError> {
    let mut pre = Preamble::new();
    let mut raw_colors = Vec::new();
    let mut raw_edges = Vec::new();
    for (line, tokens) in body {
        let (keyword, args) = (tokens[0], &tokens[1..]);
        if pre.take(*line, keyword, args)? {
            continue;
        }
        match keyword {
            "vcolor" => {
                arity(*line, args, 2..=2, keyword)?;
                raw_colors.push((*line, args.to_vec()));
            }
            "edge" => {
                arity(*line, args, 2..=2, keyword)?;
                raw_edges.push((*line, args.to_vec()));
            }
            _ => return Err(unknown(*line, keyword)),
        }
    }
    let (n, colors, requirements) = pre.finish()?;
    let mut vertex_colors: Vec<Option<Color>> = vec![None; n];
    for (line, args) in raw_colors {
        let v = vertex(line, args[0], n)?;
        if vertex_colors[v.index()].is_some() {
            return Err(at(line, format!("second `vcolor` for vertex {v}")));
        }
        vertex_colors[v.index()] = Some(color(line, args[1], colors)?);
    }
    let vertex_colors = vertex_colors
        .into_iter()
        .enumerate()
        .map(|(i, c)| {
            c.ok_or_else(|| ParseError::File(format!("vertex {} has no `vcolor` line", i + 1)))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut edges = Vec::with_capacity(raw_edges.len());
    let mut seen = std::collections::HashMap::new();
    for (line, args) in raw_edges {
        let u = vertex(line, args[0], n)?;
        let v = vertex(line, args[1], n)?;
        if u == v {
            return Err(at(line, format!("self-loop at vertex {u}")));
        }
        if let Some(first) = seen.insert((u.min(v), u.max(v)), line) {
            return Err(at(line, format!("duplicate edge (first on line {first})")));
        }
        edges.push((u, v));
    }
    let graph = VertexColoredGraph::new(colors, vertex_colors, edges)
        .map_err(|e| ParseError::File(e.to_string()))?;
    Ok(Instance::Cec {
        graph,
        requirements,
    })
}

fn parse_geometry(body: &[(usize, Vec<&str>)], kind: GeometryKind) -> Result<Instance, ParseError> {
    let mut require: Field<Vec<u64>> = Field::new("require");
    let mut raw_lines = Vec::new();
    let mut raw_points = Vec::new();
    for (line, tokens) in body {
        let (keyword, args) = (tokens[0], &tokens[1..]);
        match keyword {
            "require" => {
                let targets = args
                    .iter()
                    .map(|t| number(*line, t, "a requirement"))
                    .collect::<Result<_, _>>()?;
                require.set(*line, targets)?;
            }
            "line" => {
                arity(*line, args, 2..=3, keyword)?;
                raw_lines.push((*line, args.to_vec()));
            }
            "point" => {
                arity(*line, args, 2..=3, keyword)?;
                raw_points.push((*line, args.to_vec()));
            }
            _ => return Err(unknown(*line, keyword)),
        }
    }
    let (_, targets) = require.get()?;
    let colors = targets.len();
    let optional_color = |line: usize,
                          args: &[&str],
                          needed: bool,
                          what: &str|
     -> Result<Option<Color>, ParseError> {
        match args.get(2) {
            Some(token) => color(line, token, colors).map(Some),
            None if needed => Err(at(line, format!("{what} needs a color"))),
            None => Ok(None),
        }
    };
    let mut lines = Vec::with_capacity(raw_lines.len());
    let mut seen = std::collections::BTreeMap::new();
    for (line, args) in raw_lines {
        let orientation = match args[0] {
            "h" => Orientation::Horizontal,
            "v" => Orientation::Vertical,
            other => return Err(at(line, format!("expected `h` or `v`, found `{other}`"))),
        };
        let c = coordinate(line, args[1])?;
        if let Some(first) = seen.insert((orientation, c.clone()), line) {
            return Err(at(line, format!("duplicate line (first on line {first})")));
        }
        lines.push(AxisLine {
            orientation,
            coordinate: c,
            color: optional_color(line, &args, kind == GeometryKind::HitLines, "line")?,
        });
    }
    let mut points = Vec::with_capacity(raw_points.len());
    for (line, args) in raw_points {
        points.push(ColoredPoint {
            x: coordinate(line, args[0])?,
            y: coordinate(line, args[1])?,
            color: optional_color(line, &args, kind == GeometryKind::CoverPoints, "point")?,
        });
    }
    Ok(Instance::Geometry(GeometryInstance {
        kind,
        lines,
        points,
        requirements: CoverageRequirements::new(targets),
    }))
}

fn require_line(out: &mut String, req: &CoverageRequirements) {
    out.push_str("require");
    for r in req.as_slice() {
        write!(out, " {r}").unwrap();
    }
    out.push('\n');
}

/// Writes an instance in the file format; [`parse_instance`] reads it back unchanged.
pub fn serialize(inst: &Instance) -> String {
    let mut out = String::new();
    writeln!(out, "problem {}", inst.kind_name()).unwrap();
    match inst {
        Instance::Cvc(cvc) => {
            writeln!(out, "vertices {}", cvc.num_vertices()).unwrap();
            writeln!(out, "colors {}", cvc.num_colors()).unwrap();
            require_line(&mut out, cvc.requirements());
            for e in cvc.edges() {
                match e.ends {
                    EdgeEnds::Pair(u, v) => writeln!(out, "edge {u} {v} {}", e.color),
                    EdgeEnds::Pendant(u) => writeln!(out, "edge {u} - {}", e.color),
                }
                .unwrap();
            }
        }
        Instance::Cec {
            graph,
            requirements,
        } => {
            writeln!(out, "vertices {}", graph.num_vertices()).unwrap();
            writeln!(out, "colors {}", graph.num_colors()).unwrap();
            require_line(&mut out, requirements);
            for v in graph.vertex_ids() {
                writeln!(out, "vcolor {v} {}", graph.color_of(v)).unwrap();
            }
            for (u, v) in graph.edges() {
                writeln!(out, "edge {u} {v}").unwrap();
            }
        }
        Instance::Geometry(geo) => {
            require_line(&mut out, &geo.requirements);
            for l in &geo.lines {
                let o = match l.orientation {
                    Orientation::Horizontal => "h",
                    Orientation::Vertical => "v",
                };
                write!(out, "line {o} {}", l.coordinate).unwrap();
                if let Some(c) = l.color {
                    write!(out, " {c}").unwrap();
                }
                out.push('\n');
            }
            for p in &geo.points {
                write!(out, "point {} {}", p.x, p.y).unwrap();
                if let Some(c) = p.color {
                    write!(out, " {c}").unwrap();
                }
                out.push('\n');
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_cvc() {
        let text = "problem cvc\nvertices 2\ncolors 1\nrequire 1\nedge 1 2 1\n";
        let Instance::Cvc(inst) = parse_instance(text).unwrap() else {
            panic!("expected a cvc instance");
        };
        assert_eq!(inst.num_vertices(), 2);
        assert_eq!(inst.num_edges(), 1);
        assert_eq!(serialize(&Instance::Cvc(inst)), text);
    }

    #[test]
    fn require_arity_names_the_line() {
        let text = "problem cvc\nvertices 2\ncolors 2\n\nrequire 1\nedge 1 2 1\n";
        let err = parse_instance(text).unwrap_err();
        assert_eq!(err, at(5, "`require` lists 1 values for 2 colors"));
    }

    #[test]
    fn comment_only_file() {
        let err = parse_instance("# nothing here\n\n   # still nothing\n").unwrap_err();
        assert_eq!(err.to_string(), "missing problem header");
    }

    #[test]
    fn syntax_errors_carry_line_numbers() {
        let cases = [
            ("problem cvc\nvertices x\n", 2),
            (
                "problem cvc\nvertices 2\ncolors 1\nrequire 0\nedge 1 3 1\n",
                5,
            ),
            ("problem cvc\nvertices 2\nvertices 3\n", 3),
            (
                "problem cec\nvertices 1\ncolors 1\nrequire 0\nvcolor 1 2\n",
                5,
            ),
            ("problem hit-lines\nrequire 1\nline h 1/0 1\n", 3),
            ("problem hit-lines\nrequire 1\nline h 1\n", 3),
            ("vertices 2\n", 1),
            ("problem foo\n", 1),
        ];
        for (text, line) in cases {
            match parse_instance(text) {
                Err(ParseError::At { line: got, .. }) => assert_eq!(got, line, "{text:?}"),
                other => panic!("{text:?} gave {other:?}"),
            }
        }
    }

    #[test]
    fn geometry_round_trip() {
        let text = "problem cover-points\nrequire 2 0\nline h 1/2\nline v -3\npoint -3 1/2 1\npoint 7 1/2 2\n";
        let inst = parse_instance(text).unwrap();
        assert_eq!(serialize(&inst), text);
        assert_eq!(parse_instance(&serialize(&inst)).unwrap(), inst);
    }

    #[test]
    fn cec_round_trip() {
        let text = "problem cec\nvertices 3\ncolors 2\nrequire 1 1\nvcolor 1 1\nvcolor 2 2\nvcolor 3 2\nedge 1 2\nedge 2 3\n";
        let inst = parse_instance(text).unwrap();
        assert_eq!(serialize(&inst), text);
    }
}
