//! JSON encodings of the library objects.
//!
//! Vertex labels in every format are 1-based. Parse failures carry a short
//! machine-readable code (see [`FormatError::code`]).

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::Error;
use crate::frames::FrameSystem;
use crate::seidel::{pair_count, Digraph, SeidelMatrix, SimpleGraph};
use crate::twograph::{triple_count, triple_rank, triples, TwoGraphData};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormatError {
    code: &'static str,
    message: String,
}

impl FormatError {
    pub fn new(code: &'static str, message: impl Into<String>) -> Self {
        FormatError { code, message: message.into() }
    }

    pub fn code(&self) -> &'static str {
        self.code
    }

    pub fn message(&self) -> &str {
        &self.message
    }
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.code, self.message)
    }
}

impl std::error::Error for FormatError {}

impl From<serde_json::Error> for FormatError {
    fn from(e: serde_json::Error) -> Self {
        let code = match e.classify() {
            serde_json::error::Category::Data => "schema",
            _ => "invalid-json",
        };
        FormatError::new(code, e.to_string())
    }
}

impl From<Error> for FormatError {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::InvalidOrder(_) => "invalid-order",
            Error::DimensionMismatch { .. } => "dimension-mismatch",
            Error::ExponentOutOfRange { .. } => "exponent-out-of-range",
            Error::InvalidEdge(..) => "invalid-edge",
            Error::VertexOutOfRange { .. } => "vertex-out-of-range",
            _ => "invalid-value",
        };
        FormatError::new(code, e.to_string())
    }
}

type Parsed<T> = std::result::Result<T, FormatError>;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SeidelJson {
    m: u32,
    n: usize,
    upper: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphJson {
    n: usize,
    edges: Vec<[usize; 2]>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DigraphJson {
    n: usize,
    arcs: Vec<[usize; 2]>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TripleJson {
    t: [usize; 3],
    c: u32,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TwoGraphJson {
    m: u32,
    n: usize,
    classes: Vec<TripleJson>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FrameJson {
    k: usize,
    n: usize,
    alpha: f64,
    vectors: Vec<Vec<[f64; 2]>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMatrixJson {
    m: u32,
    #[serde(default)]
    n: Option<usize>,
    matrix: Vec<Vec<[f64; 2]>>,
}

fn to_line<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("plain data serializes")
}

fn zero_based(label: usize, n: usize) -> Parsed<usize> {
    if label == 0 || label > n {
        return Err(FormatError::new("vertex-out-of-range", format!("vertex {label} not in 1..={n}")));
    }
    Ok(label - 1)
}

pub fn seidel_to_value(s: &SeidelMatrix) -> Value {
    serde_json::to_value(SeidelJson { m: s.order(), n: s.dim(), upper: s.upper().to_vec() }).unwrap()
}

pub fn seidel_to_json(s: &SeidelMatrix) -> String {
    to_line(&seidel_to_value(s))
}

pub fn seidel_from_json(text: &str) -> Parsed<SeidelMatrix> {
    let j: SeidelJson = serde_json::from_str(text)?;
    if j.upper.len() != pair_count(j.n) {
        return Err(FormatError::new(
            "dimension-mismatch",
            format!("n={} needs {} upper entries, found {}", j.n, pair_count(j.n), j.upper.len()),
        ));
    }
    Ok(SeidelMatrix::new(j.m, j.n, j.upper)?)
}

pub fn graph_to_json(g: &SimpleGraph) -> String {
    let edges = g.edges().iter().map(|&(a, b)| [a + 1, b + 1]).collect();
    to_line(&GraphJson { n: g.order(), edges })
}

pub fn graph_from_json(text: &str) -> Parsed<SimpleGraph> {
    let j: GraphJson = serde_json::from_str(text)?;
    let edges =
        j.edges.iter().map(|&[a, b]| Ok((zero_based(a, j.n)?, zero_based(b, j.n)?))).collect::<Parsed<Vec<_>>>()?;
    Ok(SimpleGraph::new(j.n, edges)?)
}

pub fn digraph_to_json(g: &Digraph) -> String {
    let arcs = g.arcs().iter().map(|&(a, b)| [a + 1, b + 1]).collect();
    to_line(&DigraphJson { n: g.order(), arcs })
}

pub fn digraph_from_json(text: &str) -> Parsed<Digraph> {
    let j: DigraphJson = serde_json::from_str(text)?;
    let arcs =
        j.arcs.iter().map(|&[a, b]| Ok((zero_based(a, j.n)?, zero_based(b, j.n)?))).collect::<Parsed<Vec<_>>>()?;
    Ok(Digraph::new(j.n, arcs)?)
}

pub fn twograph_to_json(t: &TwoGraphData) -> String {
    let classes = triples(t.dim()).zip(t.classes()).map(|(tr, &c)| TripleJson { t: tr.map(|x| x + 1), c }).collect();
    to_line(&TwoGraphJson { m: t.order(), n: t.dim(), classes })
}

pub fn twograph_from_json(text: &str) -> Parsed<TwoGraphData> {
    let j: TwoGraphJson = serde_json::from_str(text)?;
    if j.m == 0 {
        return Err(FormatError::new("invalid-order", "m must be positive"));
    }
    let mut classes: Vec<Option<u32>> = vec![None; triple_count(j.n)];
    for entry in &j.classes {
        let [a, b, c] = entry.t;
        let (a, b, c) = (zero_based(a, j.n)?, zero_based(b, j.n)?, zero_based(c, j.n)?);
        if !(a < b && b < c) {
            return Err(FormatError::new("unsorted-triple", format!("triple {:?} is not ascending", entry.t)));
        }
        if entry.c >= j.m {
            return Err(FormatError::new(
                "exponent-out-of-range",
                format!("class {} of {:?} not below m={}", entry.c, entry.t, j.m),
            ));
        }
        let slot = &mut classes[triple_rank(j.n, a, b, c)];
        if slot.replace(entry.c).is_some() {
            return Err(FormatError::new("duplicate-triple", format!("triple {:?} listed twice", entry.t)));
        }
    }
    let classes = triples(j.n)
        .zip(classes)
        .map(|(t, c)| {
            c.ok_or_else(|| FormatError::new("missing-triple", format!("no class for {:?}", t.map(|x| x + 1))))
        })
        .collect::<Parsed<Vec<u32>>>()?;
    Ok(TwoGraphData::new(j.m, j.n, classes)?)
}

pub fn frame_to_json(f: &FrameSystem) -> String {
    let vectors = f.vectors.iter().map(|v| v.iter().map(|z| [z.re, z.im]).collect()).collect();
    to_line(&FrameJson { k: f.k, n: f.len(), alpha: f.alpha, vectors })
}

pub fn frame_from_json(text: &str) -> Parsed<FrameSystem> {
    let j: FrameJson = serde_json::from_str(text)?;
    if j.vectors.len() != j.n {
        return Err(FormatError::new("dimension-mismatch", format!("n={} but {} vectors given", j.n, j.vectors.len())));
    }
    let vectors =
        j.vectors.into_iter().map(|v| v.into_iter().map(|[re, im]| Complex64::new(re, im)).collect()).collect();
    Ok(FrameSystem::new(j.k, j.alpha, vectors)?)
}

/// A complex matrix given entrywise, as accepted by the validation gateway:
/// `{"m":3,"matrix":[[[re,im],...],...]}`.
#[derive(Clone, Debug, PartialEq)]
pub struct RawMatrix {
    pub m: u32,
    pub rows: Vec<Vec<Complex64>>,
}

pub fn raw_matrix_from_json(text: &str) -> Parsed<RawMatrix> {
    let j: RawMatrixJson = serde_json::from_str(text)?;
    if let Some(n) = j.n {
        if n != j.matrix.len() {
            return Err(FormatError::new("dimension-mismatch", format!("n={n} but {} rows", j.matrix.len())));
        }
    }
    let rows = j.matrix.into_iter().map(|r| r.into_iter().map(|[re, im]| Complex64::new(re, im)).collect()).collect();
    Ok(RawMatrix { m: j.m, rows })
}

pub fn raw_matrix_to_json(m: u32, rows: &[Vec<Complex64>]) -> String {
    let matrix = rows.iter().map(|r| r.iter().map(|z| [z.re, z.im]).collect()).collect();
    to_line(&RawMatrixJson { m, n: Some(rows.len()), matrix })
}

/// Either a Seidel file or a raw complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub enum MatrixInput {
    Seidel(SeidelMatrix),
    Raw(RawMatrix),
}

pub fn matrix_input_from_json(text: &str) -> Parsed<MatrixInput> {
    let value: Value = serde_json::from_str(text)?;
    if value.get("matrix").is_some() {
        raw_matrix_from_json(text).map(MatrixInput::Raw)
    } else {
        seidel_from_json(text).map(MatrixInput::Seidel)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data;

    #[test]
    fn seidel_round_trip() {
        let s = data::etf96_matrix();
        assert_eq!(seidel_from_json(&seidel_to_json(&s)).unwrap(), s);
        let s = seidel_from_json(r#"{"m":3,"n":4,"upper":[0,1,2,0,1,2]}"#).unwrap();
        assert_eq!(s.exponent(0, 2), 1);
    }

    #[test]
    fn seidel_rejections_carry_codes() {
        let code = |t: &str| seidel_from_json(t).unwrap_err().code();
        assert_eq!(code("{"), "invalid-json");
        assert_eq!(code(r#"{"m":3,"n":3}"#), "schema");
        assert_eq!(code(r#"{"m":3,"n":3,"upper":[0,1]}"#), "dimension-mismatch");
        assert_eq!(code(r#"{"m":3,"n":2,"upper":[3]}"#), "exponent-out-of-range");
        assert_eq!(code(r#"{"m":0,"n":2,"upper":[0]}"#), "invalid-order");
        assert_eq!(code(r#"{"m":3,"n":2,"upper":[0],"x":1}"#), "schema");
    }

    #[test]
    fn graph_formats() {
        let g = data::star_graph();
        let text = graph_to_json(&g);
        assert_eq!(text, r#"{"n":6,"edges":[[1,3],[1,5],[2,5],[2,6],[3,6]]}"#);
        assert_eq!(graph_from_json(&text).unwrap(), g);
        assert_eq!(graph_from_json(r#"{"n":3,"edges":[[1,4]]}"#).unwrap_err().code(), "vertex-out-of-range");
        assert_eq!(graph_from_json(r#"{"n":3,"edges":[[1,1]]}"#).unwrap_err().code(), "invalid-edge");
        let d = data::dsrg8();
        assert_eq!(digraph_from_json(&digraph_to_json(&d)).unwrap(), d);
    }

    #[test]
    fn twograph_formats() {
        let t = TwoGraphData::from_seidel(&data::etf96_matrix());
        assert_eq!(twograph_from_json(&twograph_to_json(&t)).unwrap(), t);
        let missing = r#"{"m":3,"n":4,"classes":[{"t":[1,2,3],"c":0}]}"#;
        assert_eq!(twograph_from_json(missing).unwrap_err().code(), "missing-triple");
        let dup = r#"{"m":3,"n":3,"classes":[{"t":[1,2,3],"c":0},{"t":[1,2,3],"c":1}]}"#;
        assert_eq!(twograph_from_json(dup).unwrap_err().code(), "duplicate-triple");
        let bad = r#"{"m":3,"n":3,"classes":[{"t":[1,2,3],"c":3}]}"#;
        assert_eq!(twograph_from_json(bad).unwrap_err().code(), "exponent-out-of-range");
        let unsorted = r#"{"m":3,"n":3,"classes":[{"t":[2,1,3],"c":0}]}"#;
        assert_eq!(twograph_from_json(unsorted).unwrap_err().code(), "unsorted-triple");
    }

    #[test]
    fn raw_and_frame_formats() {
        let s = data::etf96_matrix();
        let raw = raw_matrix_to_json(3, &s.to_complex().rows());
        match matrix_input_from_json(&raw).unwrap() {
            MatrixInput::Raw(r) => assert_eq!(r.rows.len(), 9),
            other => panic!("{other:?}"),
        }
        assert!(matches!(matrix_input_from_json(&seidel_to_json(&s)).unwrap(), MatrixInput::Seidel(_)));
        let f = FrameSystem::new(1, 1.0, vec![vec![Complex64::new(1.0, 0.0)]; 2]).unwrap();
        assert_eq!(frame_from_json(&frame_to_json(&f)).unwrap(), f);
        let short = r#"{"k":2,"n":1,"alpha":0,"vectors":[[[1,0]]]}"#;
        assert_eq!(frame_from_json(short).unwrap_err().code(), "dimension-mismatch");
    }
}
