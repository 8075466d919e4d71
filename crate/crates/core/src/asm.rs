//! Alternating sign matrices, their generating polynomial and the six-vertex DWBC bijection.

use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::exec::Exec;
use crate::field::rat::int;
use crate::field::{FieldError, HalfPowerPoly, Rat, Scalar};
use crate::params::Deformation;

pub const MAX_N: usize = 7;

#[derive(Debug, Error, PartialEq)]
pub enum AsmError {
    #[error("size {0} exceeds the enumeration limit {MAX_N}")]
    SizeLimitExceeded(usize),
    #[error("size must be positive")]
    Empty,
    #[error("not an alternating sign matrix: {0}")]
    InvalidAsm(String),
    #[error("invalid vertex configuration: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

fn guard(n: usize) -> Result<(), AsmError> {
    match n {
        0 => Err(AsmError::Empty),
        n if n > MAX_N => Err(AsmError::SizeLimitExceeded(n)),
        _ => Ok(()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Asm {
    rows: Vec<Vec<i8>>,
}

impl Asm {
    pub fn new(rows: Vec<Vec<i8>>) -> Result<Self, AsmError> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(AsmError::InvalidAsm("not square".into()));
        }
        let line_ok = |line: &mut dyn Iterator<Item = i8>| {
            let mut acc = 0i8;
            for v in line {
                if !(-1..=1).contains(&v) {
                    return false;
                }
                acc += v;
                if !(0..=1).contains(&acc) {
                    return false;
                }
            }
            acc == 1
        };
        for j in 0..n {
            if !line_ok(&mut rows[j].iter().copied()) {
                return Err(AsmError::InvalidAsm(format!("row {}", j + 1)));
            }
            if !line_ok(&mut rows.iter().map(|r| r[j])) {
                return Err(AsmError::InvalidAsm(format!("column {}", j + 1)));
            }
        }
        Ok(Asm { rows })
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<i8>] {
        &self.rows
    }

    pub fn get(&self, j: usize, k: usize) -> i8 {
        self.rows[j][k]
    }

    /// Number of `−1` entries.
    pub fn minus_ones(&self) -> usize {
        self.rows.iter().flatten().filter(|&&v| v == -1).count()
    }

    pub fn identity(n: usize) -> Self {
        Asm {
            rows: (0..n)
                .map(|j| (0..n).map(|k| i8::from(j == k)).collect())
                .collect(),
        }
    }
}

impl Serialize for Asm {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.rows.serialize(s)
    }
}

impl fmt::Display for Asm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:>2}")).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Rows compatible with a given set of columns whose partial sum is already 1.
fn rows_for(n: usize, mask: u32) -> Vec<(Vec<i8>, u32)> {
    fn go(n: usize, mask: u32, k: usize, r: i8, row: &mut Vec<i8>, out: &mut Vec<(Vec<i8>, u32)>) {
        if k == n {
            if r == 1 {
                let next = row
                    .iter()
                    .enumerate()
                    .fold(mask, |m, (k, &v)| match v {
                        1 => m | (1 << k),
                        -1 => m & !(1 << k),
                        _ => m,
                    });
                out.push((row.clone(), next));
            }
            return;
        }
        let c = ((mask >> k) & 1) as i8;
        for v in [-1i8, 0, 1] {
            if (0..=1).contains(&(c + v)) && (0..=1).contains(&(r + v)) {
                row.push(v);
                go(n, mask, k + 1, r + v, row, out);
                row.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(n, mask, 0, 0, &mut Vec::with_capacity(n), &mut out);
    out
}

/// Lazy enumeration of all `n × n` ASMs in lexicographic row order.
pub struct AsmStream {
    n: usize,
    options: Vec<Vec<(Vec<i8>, u32)>>,
    stack: Vec<(u32, usize)>,
    current: Vec<Vec<i8>>,
}

impl Iterator for AsmStream {
    type Item = Asm;

    fn next(&mut self) -> Option<Asm> {
        loop {
            let (mask, idx) = self.stack.last_mut()?;
            let opts = &self.options[*mask as usize];
            if *idx == opts.len() {
                self.stack.pop();
                self.current.pop();
                continue;
            }
            let (row, next) = opts[*idx].clone();
            *idx += 1;
            self.current.push(row);
            if self.current.len() == self.n {
                let asm = Asm {
                    rows: self.current.clone(),
                };
                self.current.pop();
                return Some(asm);
            }
            self.stack.push((next, 0));
        }
    }
}

pub fn generate_asms(n: usize) -> Result<AsmStream, AsmError> {
    guard(n)?;
    Ok(AsmStream {
        n,
        options: (0..1u32 << n).map(|m| rows_for(n, m)).collect(),
        stack: vec![(0, 0)],
        current: Vec::with_capacity(n),
    })
}

/// Independent enumeration through monotone triangles, built from the top row down.
pub fn monotone_triangle_asms(n: usize) -> Result<Vec<Asm>, AsmError> {
    guard(n)?;
    fn extend(n: usize, rows: &mut Vec<Vec<usize>>, out: &mut Vec<Asm>) {
        let k = rows.len();
        if k == n {
            let mut m = vec![vec![0i8; n]; n];
            let mut prev: Vec<usize> = Vec::new();
            for (j, row) in rows.iter().enumerate() {
                for &c in row {
                    m[j][c - 1] += 1;
                }
                for &c in &prev {
                    m[j][c - 1] -= 1;
                }
                prev = row.clone();
            }
            out.push(Asm { rows: m });
            return;
        }
        // next row b has k+1 entries with b_1 ≤ a_1 ≤ b_2 ≤ … ≤ a_k ≤ b_{k+1}, strictly increasing
        let above = rows.last().cloned().unwrap_or_default();
        let mut b = Vec::with_capacity(k + 1);
        fn pick(
            n: usize,
            above: &[usize],
            i: usize,
            b: &mut Vec<usize>,
            rows: &mut Vec<Vec<usize>>,
            out: &mut Vec<Asm>,
        ) {
            if i == above.len() + 1 {
                rows.push(b.clone());
                extend(n, rows, out);
                rows.pop();
                return;
            }
            let lo = if i == 0 { 1 } else { above[i - 1].max(b[i - 1] + 1) };
            let hi = if i == above.len() { n } else { above[i] };
            for v in lo..=hi {
                b.push(v);
                pick(n, above, i + 1, b, rows, out);
                b.pop();
            }
        }
        pick(n, &above, 0, &mut b, rows, out);
    }
    let mut out = Vec::new();
    extend(n, &mut Vec::new(), &mut out);
    Ok(out)
}

/// Coefficients of `A_n(t) = Σ_k c_k t^k`, `c_k` counting ASMs with `k` entries `−1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenPoly {
    pub n: usize,
    pub coeffs: Vec<u64>,
}

impl GenPoly {
    pub fn from_asms<'a>(n: usize, asms: impl IntoIterator<Item = &'a Asm>) -> Self {
        let mut coeffs = Vec::new();
        for a in asms {
            let k = a.minus_ones();
            if coeffs.len() <= k {
                coeffs.resize(k + 1, 0);
            }
            coeffs[k] += 1;
        }
        GenPoly { n, coeffs }
    }

    pub fn total(&self) -> u64 {
        self.coeffs.iter().sum()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn evaluate(&self, t: &Rat) -> Rat {
        self.coeffs
            .iter()
            .rev()
            .fold(int(0), |acc, &c| acc * t + int(c as i64))
    }

    /// `A_n(x²)` as a polynomial in `y = x^{1/2}`.
    pub fn at_x_squared(&self) -> HalfPowerPoly {
        let mut xs = vec![int(0); 2 * self.coeffs.len()];
        for (k, &c) in self.coeffs.iter().enumerate() {
            xs[2 * k] = int(c as i64);
        }
        HalfPowerPoly::from_x_coeffs(&xs)
    }
}

/// Renders `6+t`, `42+42t+14t^2+t^3`.
impl fmt::Display for GenPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            terms.push(match (k, c) {
                (0, _) => c.to_string(),
                (1, 1) => "t".to_string(),
                (1, _) => format!("{c}t"),
                (_, 1) => format!("t^{k}"),
                _ => format!("{c}t^{k}"),
            });
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", terms.join("+"))
    }
}

pub fn gen_poly(n: usize) -> Result<GenPoly, AsmError> {
    let asms: Vec<Asm> = generate_asms(n)?.collect();
    Ok(GenPoly::from_asms(n, &asms))
}

pub fn asm_count(n: usize) -> Result<u64, AsmError> {
    Ok(generate_asms(n)?.count() as u64)
}

/// Vertex types 1–6; types 1, 2 carry `𝔞`, types 3, 4 carry `𝔟`, types 5, 6 carry `𝔠`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Vertex(u8);

/// Edge flags `(up, left, down, right)`: vertical 0 = arrow up, 1 = down;
/// horizontal 0 = arrow right, 1 = left.
const EDGES: [(u8, u8, u8, u8); 6] = [
    (0, 0, 0, 0),
    (1, 1, 1, 1),
    (0, 1, 0, 1),
    (1, 0, 1, 0),
    (0, 0, 1, 1),
    (1, 1, 0, 0),
];

impl Vertex {
    pub fn new(t: u8) -> Option<Self> {
        (1..=6).contains(&t).then_some(Vertex(t))
    }

    pub fn kind(self) -> u8 {
        self.0
    }

    fn edges(self) -> (u8, u8, u8, u8) {
        EDGES[self.0 as usize - 1]
    }

    fn from_edges(up: u8, left: u8, down: u8, right: u8) -> Option<Self> {
        EDGES
            .iter()
            .position(|&e| e == (up, left, down, right))
            .map(|i| Vertex(i as u8 + 1))
    }
}

/// Six-vertex configuration on the `n × n` grid with domain-wall boundaries:
/// outgoing arrows at top and bottom, incoming at left and right.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DwbcConfig {
    vertices: Vec<Vec<Vertex>>,
}

impl DwbcConfig {
    pub fn new(vertices: Vec<Vec<Vertex>>) -> Result<Self, AsmError> {
        let n = vertices.len();
        if n == 0 || vertices.iter().any(|r| r.len() != n) {
            return Err(AsmError::InvalidConfig("not square".into()));
        }
        for j in 0..n {
            for k in 0..n {
                let (up, left, down, right) = vertices[j][k].edges();
                let at = |what: &str| AsmError::InvalidConfig(format!("{what} at ({}, {})", j + 1, k + 1));
                if j == 0 && up != 0 {
                    return Err(at("top boundary"));
                }
                if j == n - 1 && down != 1 {
                    return Err(at("bottom boundary"));
                }
                if k == 0 && left != 0 {
                    return Err(at("left boundary"));
                }
                if k == n - 1 && right != 1 {
                    return Err(at("right boundary"));
                }
                if j + 1 < n && vertices[j + 1][k].edges().0 != down {
                    return Err(at("vertical edge"));
                }
                if k + 1 < n && vertices[j][k + 1].edges().1 != right {
                    return Err(at("horizontal edge"));
                }
            }
        }
        Ok(DwbcConfig { vertices })
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn get(&self, j: usize, k: usize) -> Vertex {
        self.vertices[j][k]
    }

    pub fn types(&self) -> Vec<Vec<u8>> {
        self.vertices
            .iter()
            .map(|r| r.iter().map(|v| v.kind()).collect())
            .collect()
    }
}

pub fn asm_to_dwbc(a: &Asm) -> DwbcConfig {
    let n = a.n();
    let mut col = vec![0i8; n];
    let mut vertices = Vec::with_capacity(n);
    for j in 0..n {
        let mut r = 0i8;
        let mut row = Vec::with_capacity(n);
        for (k, c) in col.iter_mut().enumerate() {
            let v = a.get(j, k);
            let vx = Vertex::from_edges(*c as u8, r as u8, (*c + v) as u8, (r + v) as u8)
                .expect("ASM partial sums are 0 or 1");
            *c += v;
            r += v;
            row.push(vx);
        }
        vertices.push(row);
    }
    DwbcConfig { vertices }
}

pub fn dwbc_to_asm(c: &DwbcConfig) -> Result<Asm, AsmError> {
    let checked = DwbcConfig::new(c.vertices.clone())?;
    let rows = checked
        .vertices
        .iter()
        .map(|r| {
            r.iter()
                .map(|v| match v.kind() {
                    5 => 1,
                    6 => -1,
                    _ => 0,
                })
                .collect()
        })
        .collect();
    Asm::new(rows)
}

/// `(k, fives, others)`: number of `−1` entries, of type-5 vertices, and of types 1–4.
pub fn vertex_count_audit(a: &Asm) -> (usize, usize, usize) {
    let config = asm_to_dwbc(a);
    let mut fives = 0;
    let mut others = 0;
    for row in &config.vertices {
        for v in row {
            match v.kind() {
                5 => fives += 1,
                6 => {}
                _ => others += 1,
            }
        }
    }
    (a.minus_ones(), fives, others)
}

fn config_weight(
    a: &Asm,
    zeta: &[Scalar],
    w: &[Scalar],
    def: &Deformation,
) -> Result<Scalar, FieldError> {
    let config = asm_to_dwbc(a);
    let mut acc = Scalar::one();
    for (j, row) in config.vertices.iter().enumerate() {
        for (k, v) in row.iter().enumerate() {
            let z = zeta[j].try_div(&w[k])?;
            let f = match v.kind() {
                1 | 2 => def.br(1, &z)?,
                3 | 4 => def.br(1, &z.inverse()?)?,
                _ => def.bq2().clone(),
            };
            acc = acc.try_mul(&f)?;
        }
    }
    Ok(acc)
}

/// DWBC partition function as an explicit sum over configurations.
pub fn dwbc_partition_brute(
    zeta: &[Scalar],
    w: &[Scalar],
    def: &Deformation,
    exec: Exec,
) -> Result<Scalar, AsmError> {
    let n = zeta.len();
    if w.len() != n {
        return Err(AsmError::InvalidConfig(format!(
            "{} row and {} column parameters",
            n,
            w.len()
        )));
    }
    let asms: Vec<Asm> = generate_asms(n)?.collect();
    let total = exec.map_reduce(
        asms,
        |a| config_weight(&a, zeta, w, def),
        || Ok(Scalar::zero()),
        |x, y| x?.try_add(&y?),
    )?;
    Ok(total)
}
