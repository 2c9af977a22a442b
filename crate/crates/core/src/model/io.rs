use std::path::Path;

use super::{
    default_penalty, encode_maxcut, encode_tsp, qubo_to_ising, IsingModel, MaxCutInstance,
    TspInstance,
};
use crate::error::{Error, Result};

/// Instance file layouts. Blank lines and lines starting with `#` are ignored.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InstanceFormat {
    /// `N M`, then `M` lines `u v [w]` (0-based, weight defaults to 1.0).
    EdgeList,
    /// `n`, then `n` rows of `n` distances.
    TspMatrix,
    /// `n`, then `n` lines `x y`; `round` selects nearest-integer distances.
    TspCoords { round: bool },
    /// Picks matrix or coordinates from the row width.
    TspAuto { round: bool },
}

#[derive(Debug, Clone, PartialEq)]
pub enum Instance {
    MaxCut(MaxCutInstance),
    Tsp(TspInstance),
}

impl Instance {
    /// Ising form: MaxCut directly, TSP through the one-hot QUBO with the
    /// default penalty.
    pub fn to_ising(&self) -> Result<IsingModel> {
        match self {
            Instance::MaxCut(g) => encode_maxcut(g),
            Instance::Tsp(t) => qubo_to_ising(&encode_tsp(t, default_penalty(t))?),
        }
    }
}

pub fn load_instance(path: impl AsRef<Path>, format: InstanceFormat) -> Result<Instance> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_instance(&text, format, &path.display().to_string())
}

struct Lines<'a> {
    origin: &'a str,
    rows: Vec<(usize, Vec<&'a str>)>,
    next: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str, origin: &'a str) -> Self {
        let rows = text
            .lines()
            .enumerate()
            .map(|(k, l)| (k + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
            .map(|(k, l)| (k, l.split_whitespace().collect()))
            .collect();
        Lines {
            origin,
            rows,
            next: 0,
        }
    }

    fn err(&self, line: usize, message: impl Into<String>) -> Error {
        Error::Parse {
            path: self.origin.to_string(),
            line,
            message: message.into(),
        }
    }

    fn row(&mut self, what: &str) -> Result<(usize, Vec<&'a str>)> {
        match self.rows.get(self.next) {
            Some(r) => {
                self.next += 1;
                Ok(r.clone())
            }
            None => {
                let last = self.rows.last().map_or(0, |r| r.0);
                Err(self.err(last + 1, format!("unexpected end of file, expected {what}")))
            }
        }
    }

    fn finish(&self) -> Result<()> {
        match self.rows.get(self.next) {
            Some((line, _)) => Err(self.err(*line, "unexpected trailing data")),
            None => Ok(()),
        }
    }

    fn peek_width(&self) -> Option<usize> {
        self.rows.get(self.next).map(|r| r.1.len())
    }

    fn int(&self, line: usize, tok: &str, what: &str) -> Result<usize> {
        tok.parse().map_err(|_| {
            self.err(
                line,
                format!("{what}: {tok:?} is not a nonnegative integer"),
            )
        })
    }

    fn real(&self, line: usize, tok: &str, what: &str) -> Result<f64> {
        let v: f64 = tok
            .parse()
            .map_err(|_| self.err(line, format!("{what}: {tok:?} is not a number")))?;
        if !v.is_finite() {
            return Err(self.err(line, format!("{what}: {tok:?} is not finite")));
        }
        Ok(v)
    }
}

/// Parses instance text; `origin` labels diagnostics.
pub fn parse_instance(text: &str, format: InstanceFormat, origin: &str) -> Result<Instance> {
    let mut lines = Lines::new(text, origin);
    let instance = match format {
        InstanceFormat::EdgeList => Instance::MaxCut(parse_edge_list(&mut lines)?),
        InstanceFormat::TspMatrix => Instance::Tsp(parse_tsp(&mut lines, Some(false), true)?),
        InstanceFormat::TspCoords { round } => {
            Instance::Tsp(parse_tsp(&mut lines, Some(true), round)?)
        }
        InstanceFormat::TspAuto { round } => Instance::Tsp(parse_tsp(&mut lines, None, round)?),
    };
    lines.finish()?;
    Ok(instance)
}

fn parse_edge_list(lines: &mut Lines<'_>) -> Result<MaxCutInstance> {
    let (line, header) = lines.row("header \"N M\"")?;
    if header.len() != 2 {
        return Err(lines.err(line, "header must be \"N M\""));
    }
    let n = lines.int(line, header[0], "node count")?;
    let m = lines.int(line, header[1], "edge count")?;
    if n == 0 {
        return Err(lines.err(line, "node count must be positive"));
    }
    let mut edges = Vec::with_capacity(m);
    let mut seen = std::collections::BTreeSet::new();
    for _ in 0..m {
        let (line, row) = lines.row("edge line \"u v [w]\"")?;
        if !(2..=3).contains(&row.len()) {
            return Err(lines.err(line, "edge line must be \"u v [w]\""));
        }
        let u = lines.int(line, row[0], "node")?;
        let v = lines.int(line, row[1], "node")?;
        let w = match row.get(2) {
            Some(tok) => lines.real(line, tok, "weight")?,
            None => 1.0,
        };
        if u >= n || v >= n {
            return Err(lines.err(line, format!("edge ({u}, {v}) out of range for {n} nodes")));
        }
        if u == v {
            return Err(lines.err(line, format!("loop on node {u}")));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(lines.err(line, format!("duplicate edge ({u}, {v})")));
        }
        edges.push((u, v, w));
    }
    MaxCutInstance::new(n, edges)
}

fn parse_tsp(lines: &mut Lines<'_>, coords: Option<bool>, round: bool) -> Result<TspInstance> {
    let (line, header) = lines.row("city count")?;
    if header.len() != 1 {
        return Err(lines.err(line, "header must be the city count"));
    }
    let n = lines.int(line, header[0], "city count")?;
    if n == 0 {
        return Err(lines.err(line, "city count must be positive"));
    }
    let coords = coords.unwrap_or_else(|| lines.peek_width() == Some(2) && n != 2);
    let width = if coords { 2 } else { n };
    let mut rows = Vec::with_capacity(n);
    for _ in 0..n {
        let (line, row) = lines.row(if coords {
            "coordinate line \"x y\""
        } else {
            "matrix row"
        })?;
        if row.len() != width {
            return Err(lines.err(
                line,
                format!("expected {width} values, found {}", row.len()),
            ));
        }
        let vals = row
            .iter()
            .map(|t| lines.real(line, t, if coords { "coordinate" } else { "distance" }))
            .collect::<Result<Vec<f64>>>()?;
        if !coords {
            let i = rows.len();
            if let Some((j, d)) = vals.iter().enumerate().find(|(_, d)| **d < 0.0) {
                return Err(lines.err(line, format!("negative distance d[{i}][{j}] = {d}")));
            }
            if vals[i] != 0.0 {
                return Err(lines.err(line, format!("nonzero diagonal d[{i}][{i}]")));
            }
        }
        rows.push(vals);
    }
    if coords {
        let pts: Vec<(f64, f64)> = rows.iter().map(|r| (r[0], r[1])).collect();
        TspInstance::from_coordinates(&pts, round)
    } else {
        TspInstance::new(rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str, format: InstanceFormat) -> Result<Instance> {
        parse_instance(text, format, "mem")
    }

    #[test]
    fn edge_list_with_default_weight() {
        let Instance::MaxCut(g) = parse("3 2\n0 1 1.0\n1 2 2.0", InstanceFormat::EdgeList).unwrap()
        else {
            panic!("expected maxcut")
        };
        assert_eq!(g.num_nodes(), 3);
        assert_eq!(g.edges(), &[(0, 1, 1.0), (1, 2, 2.0)]);
        let Instance::MaxCut(g) = parse("# c\n2 1\n\n0 1\n", InstanceFormat::EdgeList).unwrap()
        else {
            panic!("expected maxcut")
        };
        assert_eq!(g.edges(), &[(0, 1, 1.0)]);
    }

    #[test]
    fn edge_list_errors_carry_line_numbers() {
        let cases = [
            ("3 2\n0 1\n", 3, "end of file"),
            ("3 1\n0 5 1.0\n", 2, "out of range"),
            ("3 1\n0 1 nan\n", 2, "not finite"),
            ("3\n", 1, "header"),
            ("3 1\n0 1 x\n", 2, "not a number"),
            ("3 2\n0 1\n\n1 0\n", 4, "duplicate"),
            ("3 1\n0 1\n1 2\n", 3, "trailing"),
        ];
        for (text, line, needle) in cases {
            match parse(text, InstanceFormat::EdgeList) {
                Err(Error::Parse {
                    line: l, message, ..
                }) => {
                    assert_eq!(l, line, "{text:?}: {message}");
                    assert!(message.contains(needle), "{text:?}: {message}");
                }
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn coincident_points_have_zero_distance() {
        let Instance::Tsp(t) = parse(
            "2\n1.5 2.5\n1.5 2.5\n",
            InstanceFormat::TspCoords { round: true },
        )
        .unwrap() else {
            panic!("expected tsp")
        };
        assert_eq!(t.distance(0, 1), 0.0);
    }

    #[test]
    fn unit_square_rounds_diagonals_down() {
        let text = "4\n0 0\n1 0\n1 1\n0 1\n";
        let Instance::Tsp(t) = parse(text, InstanceFormat::TspAuto { round: true }).unwrap() else {
            panic!("expected tsp")
        };
        let expected = [
            [0.0, 1.0, 1.0, 1.0],
            [1.0, 0.0, 1.0, 1.0],
            [1.0, 1.0, 0.0, 1.0],
            [1.0, 1.0, 1.0, 0.0],
        ];
        for i in 0..4 {
            assert_eq!(t.distances()[i], expected[i]);
        }
        let Instance::Tsp(raw) = parse(text, InstanceFormat::TspCoords { round: false }).unwrap()
        else {
            panic!("expected tsp")
        };
        assert!((raw.distance(0, 2) - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn matrix_format_and_its_errors() {
        let Instance::Tsp(t) =
            parse("2\n0 5\n5 0\n", InstanceFormat::TspAuto { round: true }).unwrap()
        else {
            panic!("expected tsp")
        };
        assert_eq!(t.distance(1, 0), 5.0);
        assert!(matches!(
            parse("2\n0 -5\n5 0\n", InstanceFormat::TspMatrix),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse("3\n0 1 2\n1 0\n", InstanceFormat::TspMatrix),
            Err(Error::Parse { line: 3, .. })
        ));
    }
}
