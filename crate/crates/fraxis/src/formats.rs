//! Plain-text file formats.
//!
//! All formats are line oriented; `#` starts a comment and blank lines are
//! ignored. Floats are written with Rust's shortest round-trip formatting, so
//! writing and re-reading reproduces values bit for bit.
//!
//! * Pauli sum: `coefficient LETTERS`, one term per line, the leftmost letter
//!   acting on qubit 0. An optional `qubits N` header fixes the width, which is
//!   required for a file with no terms.
//! * Graph: `vertices N` then one `u v` edge per line.
//! * Vertex labels: `vertex qubit letter`, one line per vertex.
//! * Circuit: `qubits N` then `param q nx ny nz theta`, `fixed q H|X|SX`,
//!   `cx control target` or `cz control target` per slot.

use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use fraxis_core::circuit::{Circuit, FixedGate, GateSlot};
use fraxis_core::expressibility::FidelityHistogram;
use fraxis_core::hamiltonian::{Graph, Pauli, PauliString, PauliSum, VertexLabel};
use fraxis_core::optimizers::Trajectory;
use fraxis_core::statevector::{Axis, TwoQubitKind};

use crate::error::{CliError, Result};

/// Header of per-trial trajectory CSV files.
pub const TRAJECTORY_HEADER: &str = "sweep,slot,method,energy,nx,ny,nz,theta,evals";
/// Header of histogram CSV files.
pub const HISTOGRAM_HEADER: &str = "bin_lower,count";

/// Non-empty, comment-stripped lines with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("");
        let fields: Vec<&str> = line.split_whitespace().collect();
        (!fields.is_empty()).then_some((i + 1, fields))
    })
}

fn parse_field<T: std::str::FromStr>(line: usize, field: &str, what: &str) -> Result<T> {
    field
        .parse()
        .map_err(|_| CliError::parse(line, format!("invalid {what} '{field}'")))
}

fn expect_len(line: usize, fields: &[&str], n: usize, shape: &str) -> Result<()> {
    if fields.len() != n {
        return Err(CliError::parse(
            line,
            format!("expected '{shape}', found {} fields", fields.len()),
        ));
    }
    Ok(())
}

pub fn read_to_string(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::from(e).in_file(path))
}

fn with_path<T>(path: &Path, r: Result<T>) -> Result<T> {
    r.map_err(|e| e.in_file(path))
}

pub fn parse_pauli_sum(text: &str) -> Result<PauliSum> {
    let mut width: Option<usize> = None;
    let mut terms: Vec<(f64, PauliString)> = Vec::new();
    for (line, fields) in content_lines(text) {
        if fields[0] == "qubits" {
            expect_len(line, &fields, 2, "qubits N")?;
            if width.is_some() || !terms.is_empty() {
                return Err(CliError::parse(line, "the qubits header must come first"));
            }
            width = Some(parse_field(line, fields[1], "qubit count")?);
            continue;
        }
        expect_len(line, &fields, 2, "coefficient LETTERS")?;
        let coeff: f64 = parse_field(line, fields[0], "coefficient")?;
        if !coeff.is_finite() {
            return Err(CliError::parse(line, "coefficient must be finite"));
        }
        let letters = fields[1]
            .chars()
            .map(|c| {
                Pauli::from_char(c)
                    .ok_or_else(|| CliError::parse(line, format!("invalid Pauli letter '{c}'")))
            })
            .collect::<Result<Vec<_>>>()?;
        match width {
            Some(w) if w != letters.len() => {
                return Err(CliError::parse(
                    line,
                    format!("term has {} letters, expected {w}", letters.len()),
                ));
            }
            None => width = Some(letters.len()),
            _ => {}
        }
        terms.push((coeff, PauliString::new(letters)));
    }
    let n = width.ok_or_else(|| CliError::parse(0, "no terms and no 'qubits N' header"))?;
    if terms.is_empty() {
        return Ok(PauliSum::new(n)?);
    }
    Ok(PauliSum::from_terms(n, terms)?)
}

pub fn format_pauli_sum(m: &PauliSum) -> String {
    let mut out = format!("qubits {}\n", m.n_qubits());
    for (c, p) in m.terms() {
        let _ = writeln!(out, "{c} {p}");
    }
    out
}

pub fn load_pauli_sum(path: &Path) -> Result<PauliSum> {
    with_path(path, parse_pauli_sum(&read_to_string(path)?))
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = content_lines(text);
    let (line, fields) = lines
        .next()
        .ok_or_else(|| CliError::parse(0, "empty graph file"))?;
    if fields[0] != "vertices" || fields.len() != 2 {
        return Err(CliError::parse(line, "expected 'vertices N' header"));
    }
    let n: usize = parse_field(line, fields[1], "vertex count")?;
    let mut edges = Vec::new();
    for (line, fields) in lines {
        expect_len(line, &fields, 2, "u v")?;
        let u: usize = parse_field(line, fields[0], "vertex")?;
        let v: usize = parse_field(line, fields[1], "vertex")?;
        // Validate per edge so errors carry the line number.
        Graph::new(n, [(u, v)]).map_err(|e| CliError::parse(line, e.to_string()))?;
        edges.push((line, (u, v)));
    }
    Graph::new(n, edges.iter().map(|&(_, e)| e)).map_err(|e| {
        let line = edges.last().map_or(1, |&(l, _)| l);
        CliError::parse(line, e.to_string())
    })
}

pub fn format_graph(g: &Graph) -> String {
    let mut out = format!("vertices {}\n", g.n_vertices());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn load_graph(path: &Path) -> Result<Graph> {
    with_path(path, parse_graph(&read_to_string(path)?))
}

pub fn parse_labels(text: &str) -> Result<Vec<VertexLabel>> {
    let mut entries: Vec<(usize, usize, VertexLabel)> = Vec::new();
    for (line, fields) in content_lines(text) {
        expect_len(line, &fields, 3, "vertex qubit letter")?;
        let vertex: usize = parse_field(line, fields[0], "vertex")?;
        let qubit: usize = parse_field(line, fields[1], "qubit")?;
        let mut chars = fields[2].chars();
        let pauli = match (chars.next().and_then(Pauli::from_char), chars.next()) {
            (Some(p), None) if p != Pauli::I => p,
            _ => {
                return Err(CliError::parse(
                    line,
                    format!("invalid label letter '{}'", fields[2]),
                ))
            }
        };
        if entries.iter().any(|&(_, v, _)| v == vertex) {
            return Err(CliError::parse(
                line,
                format!("vertex {vertex} labeled twice"),
            ));
        }
        entries.push((line, vertex, VertexLabel { qubit, pauli }));
    }
    entries.sort_by_key(|&(_, v, _)| v);
    for (i, &(line, v, _)) in entries.iter().enumerate() {
        if v != i {
            return Err(CliError::parse(line, format!("vertex {i} has no label")));
        }
    }
    Ok(entries.into_iter().map(|(_, _, l)| l).collect())
}

pub fn format_labels(labels: &[VertexLabel]) -> String {
    let mut out = String::new();
    for (v, l) in labels.iter().enumerate() {
        let _ = writeln!(out, "{v} {} {}", l.qubit, l.pauli.as_char());
    }
    out
}

pub fn load_labels(path: &Path) -> Result<Vec<VertexLabel>> {
    with_path(path, parse_labels(&read_to_string(path)?))
}

pub fn parse_circuit(text: &str) -> Result<Circuit> {
    let mut lines = content_lines(text);
    let (line, fields) = lines
        .next()
        .ok_or_else(|| CliError::parse(0, "empty circuit file"))?;
    if fields[0] != "qubits" || fields.len() != 2 {
        return Err(CliError::parse(line, "expected 'qubits N' header"));
    }
    let n: usize = parse_field(line, fields[1], "qubit count")?;
    let mut c = Circuit::new(n).map_err(|e| CliError::parse(line, e.to_string()))?;
    for (line, fields) in lines {
        let slot = match fields[0] {
            "param" => {
                expect_len(line, &fields, 6, "param q nx ny nz theta")?;
                let qubit = parse_field(line, fields[1], "qubit")?;
                let v: Vec<f64> = fields[2..6]
                    .iter()
                    .map(|f| parse_field(line, f, "number"))
                    .collect::<Result<_>>()?;
                let axis = Axis::new(v[0], v[1], v[2])
                    .or_else(|_| Axis::normalized(v[0], v[1], v[2]))
                    .map_err(|e| CliError::parse(line, e.to_string()))?;
                GateSlot::Param {
                    qubit,
                    axis,
                    theta: v[3],
                }
            }
            "fixed" => {
                expect_len(line, &fields, 3, "fixed q H|X|SX")?;
                let gate = match fields[2] {
                    "H" => FixedGate::H,
                    "X" => FixedGate::X,
                    "SX" => FixedGate::SX,
                    other => {
                        return Err(CliError::parse(
                            line,
                            format!("unknown fixed gate '{other}'"),
                        ))
                    }
                };
                GateSlot::Fixed {
                    qubit: parse_field(line, fields[1], "qubit")?,
                    gate,
                }
            }
            kind @ ("cx" | "cz") => {
                expect_len(line, &fields, 3, "cx|cz control target")?;
                GateSlot::Entangler {
                    kind: if kind == "cx" {
                        TwoQubitKind::Cx
                    } else {
                        TwoQubitKind::Cz
                    },
                    control: parse_field(line, fields[1], "qubit")?,
                    target: parse_field(line, fields[2], "qubit")?,
                }
            }
            other => {
                return Err(CliError::parse(
                    line,
                    format!("unknown slot kind '{other}'"),
                ))
            }
        };
        c.push(slot)
            .map_err(|e| CliError::parse(line, e.to_string()))?;
    }
    Ok(c)
}

pub fn format_circuit(c: &Circuit) -> String {
    let mut out = format!("qubits {}\n", c.n_qubits());
    for slot in c.slots() {
        let _ = match *slot {
            GateSlot::Param { qubit, axis, theta } => {
                writeln!(
                    out,
                    "param {qubit} {} {} {} {theta}",
                    axis.x(),
                    axis.y(),
                    axis.z()
                )
            }
            GateSlot::Fixed { qubit, gate } => {
                let name = match gate {
                    FixedGate::H => "H",
                    FixedGate::X => "X",
                    FixedGate::SX => "SX",
                };
                writeln!(out, "fixed {qubit} {name}")
            }
            GateSlot::Entangler {
                kind,
                control,
                target,
            } => {
                let name = match kind {
                    TwoQubitKind::Cx => "cx",
                    TwoQubitKind::Cz => "cz",
                };
                writeln!(out, "{name} {control} {target}")
            }
        };
    }
    out
}

pub fn load_circuit(path: &Path) -> Result<Circuit> {
    with_path(path, parse_circuit(&read_to_string(path)?))
}

pub fn write_trajectory_csv<W: Write>(mut w: W, t: &Trajectory) -> std::io::Result<()> {
    writeln!(w, "{TRAJECTORY_HEADER}")?;
    for r in &t.records {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{}",
            r.sweep,
            r.slot,
            r.method.name(),
            r.energy,
            r.axis.x(),
            r.axis.y(),
            r.axis.z(),
            r.theta,
            r.evaluations
        )?;
    }
    Ok(())
}

pub fn write_histogram_csv<W: Write>(mut w: W, h: &FidelityHistogram) -> std::io::Result<()> {
    writeln!(w, "{HISTOGRAM_HEADER}")?;
    for (i, count) in h.counts().iter().enumerate() {
        writeln!(w, "{},{count}", h.bin_lower(i))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use fraxis_core::circuit::{circuit_b, two_qubit_ansatz};
    use fraxis_core::hamiltonian::{heisenberg_1d, petersen, petersen_relax_labels};

    #[test]
    fn pauli_sum_round_trip() {
        let m = heisenberg_1d(4, 0.7, -0.13, true).unwrap();
        assert_eq!(parse_pauli_sum(&format_pauli_sum(&m)).unwrap(), m);
    }

    #[test]
    fn pauli_sum_leftmost_letter_is_qubit_zero() {
        let m = parse_pauli_sum("# comment\n0.5 ZI  # trailing\n\n-1e-2 IY\n").unwrap();
        assert_eq!(m.n_qubits(), 2);
        assert_eq!(m.terms()[0].1.letters(), &[Pauli::Z, Pauli::I]);
        assert_eq!(m.terms()[1].0, -0.01);
    }

    #[test]
    fn pauli_sum_errors_carry_line_numbers() {
        let err = parse_pauli_sum("1.0 XX\n\n2.0 XQ\n").unwrap_err();
        assert!(matches!(err, CliError::Parse { line: 3, .. }), "{err}");
        let err = parse_pauli_sum("1.0 XX\n2.0 XXX\n").unwrap_err();
        assert!(matches!(err, CliError::Parse { line: 2, .. }));
        assert!(matches!(
            parse_pauli_sum("abc XX").unwrap_err(),
            CliError::Parse { line: 1, .. }
        ));
        assert!(matches!(
            parse_pauli_sum("inf XX").unwrap_err(),
            CliError::Parse { line: 1, .. }
        ));
        assert!(parse_pauli_sum("# nothing").is_err());
        assert_eq!(parse_pauli_sum("qubits 3").unwrap().n_qubits(), 3);
    }

    #[test]
    fn graph_round_trip_and_errors() {
        let g = petersen();
        assert_eq!(parse_graph(&format_graph(&g)).unwrap(), g);
        assert!(matches!(
            parse_graph("vertices 3\n0 1\n1 1\n").unwrap_err(),
            CliError::Parse { line: 3, .. }
        ));
        assert!(matches!(
            parse_graph("vertices 3\n0 1\n0 7\n").unwrap_err(),
            CliError::Parse { line: 3, .. }
        ));
        assert!(matches!(
            parse_graph("vertices 3\n0 1\n1 0\n").unwrap_err(),
            CliError::Parse { line: 3, .. }
        ));
        assert!(parse_graph("0 1\n").is_err());
    }

    #[test]
    fn labels_round_trip_and_errors() {
        let l = petersen_relax_labels();
        assert_eq!(parse_labels(&format_labels(&l)).unwrap(), l);
        assert!(matches!(
            parse_labels("0 0 X\n0 1 Y\n").unwrap_err(),
            CliError::Parse { line: 2, .. }
        ));
        assert!(matches!(
            parse_labels("0 0 X\n2 1 Y\n").unwrap_err(),
            CliError::Parse { line: 2, .. }
        ));
        assert!(matches!(
            parse_labels("0 0 I\n").unwrap_err(),
            CliError::Parse { line: 1, .. }
        ));
    }

    #[test]
    fn circuit_round_trip() {
        let mut c = circuit_b(2).unwrap();
        c.set_param(
            c.param_slots()[3],
            Axis::normalized(0.1, -0.7, 0.3).unwrap(),
            -2.25,
        )
        .unwrap();
        assert_eq!(parse_circuit(&format_circuit(&c)).unwrap(), c);
        let t = two_qubit_ansatz();
        assert_eq!(parse_circuit(&format_circuit(&t)).unwrap(), t);
        let sx = parse_circuit("qubits 1\nfixed 0 SX\nparam 0 1 1 0 0.5\n").unwrap();
        assert_eq!(
            sx.param(1).unwrap().1,
            Axis::normalized(1.0, 1.0, 0.0).unwrap()
        );
    }

    #[test]
    fn circuit_errors() {
        assert!(matches!(
            parse_circuit("qubits 2\ncx 0 0\n").unwrap_err(),
            CliError::Parse { line: 2, .. }
        ));
        assert!(matches!(
            parse_circuit("qubits 2\nfixed 0 T\n").unwrap_err(),
            CliError::Parse { line: 2, .. }
        ));
        assert!(matches!(
            parse_circuit("qubits 2\nparam 5 0 0 1 0\n").unwrap_err(),
            CliError::Parse { line: 2, .. }
        ));
        assert!(matches!(
            parse_circuit("qubits 2\nparam 0 0 0 0 0\n").unwrap_err(),
            CliError::Parse { line: 2, .. }
        ));
        assert!(parse_circuit("param 0 0 0 1 0\n").is_err());
    }
}
