//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

/// A finite cellular chain complex over `Z`: `cells[d]` counts `d`-cells and
/// `boundary[d]` is the matrix of `∂_d : C_d → C_{d-1}` (rows index
/// `(d-1)`-cells).
#[derive(Debug, Clone)]
pub struct CellComplex {
    pub cells: Vec<usize>,
    pub boundary: Vec<Vec<Vec<i64>>>,
}

impl CellComplex {
    pub fn point() -> Self {
        CellComplex {
            cells: vec![1],
            boundary: vec![vec![]],
        }
    }

    /// `e^0 ∪ e^{n-1} ∪_k e^n`.
    pub fn moore(n: usize, k: i64) -> Self {
        let mut cells = vec![0; n + 1];
        cells[0] = 1;
        cells[n - 1] = 1;
        cells[n] = 1;
        let mut c = CellComplex::with_cells(cells);
        c.boundary[n] = vec![vec![k]];
        c
    }

    pub fn sphere(n: usize) -> Self {
        let mut cells = vec![0; n + 1];
        cells[0] = 1;
        cells[n] = 1;
        CellComplex::with_cells(cells)
    }

    fn with_cells(cells: Vec<usize>) -> Self {
        let boundary = (0..cells.len())
            .map(|d| if d == 0 { vec![] } else { vec![vec![0; cells[d]]; cells[d - 1]] })
            .collect();
        CellComplex { cells, boundary }
    }

    pub fn dim(&self) -> usize {
        self.cells.len() - 1
    }

    /// Product cell structure with `∂(x × y) = ∂x × y + (-1)^{|x|} x × ∂y`.
    pub fn product(&self, other: &CellComplex) -> CellComplex {
        let dim = self.dim() + other.dim();
        // index of cell (i, a, j, b) inside C_{i+j}
        let mut index: BTreeMap<(usize, usize, usize, usize), usize> = BTreeMap::new();
        let mut cells = vec![0; dim + 1];
        for i in 0..=self.dim() {
            for j in 0..=other.dim() {
                for a in 0..self.cells[i] {
                    for b in 0..other.cells[j] {
                        index.insert((i, a, j, b), cells[i + j]);
                        cells[i + j] += 1;
                    }
                }
            }
        }
        let mut out = CellComplex::with_cells(cells);
        for (&(i, a, j, b), &col) in &index {
            let d = i + j;
            if d == 0 {
                continue;
            }
            if i > 0 {
                for (row_a, r) in self.boundary[i].iter().enumerate() {
                    let c = r[a];
                    if c != 0 {
                        out.boundary[d][index[&(i - 1, row_a, j, b)]][col] += c;
                    }
                }
            }
            if j > 0 {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                for (row_b, r) in other.boundary[j].iter().enumerate() {
                    let c = r[b];
                    if c != 0 {
                        out.boundary[d][index[&(i, a, j - 1, row_b)]][col] += sign * c;
                    }
                }
            }
        }
        out
    }

    /// `(free rank, torsion orders)` of `H_d` for every degree.
    pub fn homology(&self) -> Vec<(usize, Vec<i64>)> {
        let diag: Vec<Vec<i64>> = (0..=self.dim() + 1)
            .map(|d| if d == 0 || d > self.dim() { vec![] } else { diagonal(&self.boundary[d]) })
            .collect();
        (0..=self.dim())
            .map(|d| {
                let rank_out = diag[d].len();
                let rank_in = diag[d + 1].len();
                let free = self.cells[d] - rank_out - rank_in;
                let torsion = diag[d + 1].iter().map(|x| x.abs()).filter(|&x| x > 1).collect();
                (free, torsion)
            })
            .collect()
    }
}

/// Nonzero entries of a diagonal form of an integer matrix, by repeated
/// row and column reduction (not normalized to divisibility order).
pub fn diagonal(m: &[Vec<i64>]) -> Vec<i64> {
    let mut a: Vec<Vec<i64>> = m.to_vec();
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut out = Vec::new();
    let mut r0 = 0;
    let mut c0 = 0;
    while r0 < rows && c0 < cols {
        // smallest nonzero entry in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in r0..rows {
            for j in c0..cols {
                if a[i][j] != 0 && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(r0, pi);
        for row in a.iter_mut() {
            row.swap(c0, pj);
        }
        let mut clean = true;
        for i in r0 + 1..rows {
            let q = a[i][c0] / a[r0][c0];
            for j in c0..cols {
                a[i][j] -= q * a[r0][j];
            }
            clean &= a[i][c0] == 0;
        }
        for j in c0 + 1..cols {
            let q = a[r0][j] / a[r0][c0];
            for i in r0..rows {
                a[i][j] -= q * a[i][c0];
            }
            clean &= a[r0][j] == 0;
        }
        if clean {
            out.push(a[r0][c0]);
            r0 += 1;
            c0 += 1;
        }
    }
    out
}

/// Canonical text of a homology list in the calculator's format.
pub fn homology_text(h: &[(usize, Vec<i64>)]) -> String {
    let mut lines = Vec::new();
    for (d, (free, torsion)) in h.iter().enumerate() {
        let mut parts = Vec::new();
        match free {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        // ordered by prime, then by exponent
        let mut qs: Vec<(u64, u64)> = torsion.iter().flat_map(|t| prime_powers(*t as u64)).collect();
        qs.sort();
        parts.extend(qs.iter().map(|(_, q)| format!("Z/{q}")));
        if !parts.is_empty() {
            lines.push(format!("{d}: {}", parts.join(" + ")));
        }
    }
    lines.join("\n")
}

/// `(p, p^e)` for each prime power exactly dividing `n`.
fn prime_powers(mut n: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut q = 1;
        while n % p == 0 {
            n /= p;
            q *= p;
        }
        if q > 1 {
            out.push((p, q));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, n));
    }
    out
}

/// Coefficients of `Π 1/(1 - t^{d_i})` by direct counting of monomials.
pub fn polynomial_ring_dims(degrees: &[usize], n: usize) -> Vec<u64> {
    let mut c = vec![0u64; n + 1];
    c[0] = 1;
    for &d in degrees {
        for i in d..=n {
            c[i] += c[i - d];
        }
    }
    c
}

/// Number of words in generators of the given degrees with total degree `d`.
pub fn word_counts(degrees: &[usize], n: usize) -> Vec<u64> {
    let mut c = vec![0u64; n + 1];
    c[0] = 1;
    for i in 1..=n {
        c[i] = degrees.iter().filter(|&&d| d <= i).map(|&d| c[i - d]).sum();
    }
    c
}
