//! Sparse exact matrices and Gaussian elimination over `GaussRat`.
//!
//! Rows are stored as sorted `(column, value)` lists. Elimination processes
//! rows top to bottom and pivots on the leftmost nonzero entry of each reduced
//! row, keeping the accepted pivot rows in reduced row echelon form.

use std::collections::BTreeMap;

use super::scalar::GaussRat;

pub type SparseRow = Vec<(usize, GaussRat)>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// `a += c * b` on sparse rows.
pub fn axpy(a: &SparseRow, c: &GaussRat, b: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i >= a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, c * &b[j].1));
            j += 1;
        } else {
            let v = &a[i].1 + &(c * &b[j].1);
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn scale_row(r: &SparseRow, c: &GaussRat) -> SparseRow {
    r.iter().map(|(k, v)| (*k, v * c)).collect()
}

/// Sorts and merges an unordered list of entries, dropping zeros.
pub fn normalize_row(entries: impl IntoIterator<Item = (usize, GaussRat)>) -> SparseRow {
    let mut acc: BTreeMap<usize, GaussRat> = BTreeMap::new();
    for (k, v) in entries {
        if v.is_zero() {
            continue;
        }
        let e = acc.entry(k).or_insert_with(GaussRat::zero);
        *e += &v;
    }
    acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseRow>,
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
}

fn default_labels(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            data: vec![Vec::new(); rows],
            row_labels: default_labels("r", rows),
            col_labels: default_labels("c", cols),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ExactMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i].push((i, GaussRat::one()));
        }
        m
    }

    pub fn from_dense(rows: Vec<Vec<GaussRat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |v| v.len());
        let mut m = ExactMatrix::zeros(r, c);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), c, "ragged dense matrix");
            m.data[i] = row
                .into_iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .collect();
        }
        m
    }

    pub fn from_sparse_rows(cols: usize, data: Vec<SparseRow>) -> Self {
        let rows = data.len();
        let mut m = ExactMatrix::zeros(rows, cols);
        for (i, r) in data.into_iter().enumerate() {
            debug_assert!(r.iter().all(|(c, _)| *c < cols));
            m.data[i] = normalize_row(r);
        }
        m
    }

    pub fn with_labels(mut self, row_labels: Vec<String>, col_labels: Vec<String>) -> Self {
        assert_eq!(row_labels.len(), self.rows);
        assert_eq!(col_labels.len(), self.cols);
        self.row_labels = row_labels;
        self.col_labels = col_labels;
        self
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &SparseRow {
        &self.data[i]
    }

    pub fn get(&self, r: usize, c: usize) -> GaussRat {
        match self.data[r].binary_search_by_key(&c, |(k, _)| *k) {
            Ok(p) => self.data[r][p].1.clone(),
            Err(_) => GaussRat::zero(),
        }
    }

    pub fn set(&mut self, r: usize, c: usize, v: GaussRat) {
        let row = &mut self.data[r];
        match row.binary_search_by_key(&c, |(k, _)| *k) {
            Ok(p) => {
                if v.is_zero() {
                    row.remove(p);
                } else {
                    row[p].1 = v;
                }
            }
            Err(p) => {
                if !v.is_zero() {
                    row.insert(p, (c, v));
                }
            }
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<GaussRat>> {
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.get(r, c)).collect())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_empty())
    }

    /// Equality of shape and entries, ignoring labels.
    pub fn same_entries(&self, o: &ExactMatrix) -> bool {
        self.rows == o.rows && self.cols == o.cols && self.data == o.data
    }

    pub fn transpose(&self) -> Self {
        let mut t = vec![Vec::new(); self.cols];
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row {
                t[*c].push((r, v.clone()));
            }
        }
        ExactMatrix {
            rows: self.cols,
            cols: self.rows,
            data: t,
            row_labels: self.col_labels.clone(),
            col_labels: self.row_labels.clone(),
        }
    }

    pub fn mul_vec(&self, v: &[GaussRat]) -> Result<Vec<GaussRat>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        Ok(self
            .data
            .iter()
            .map(|row| {
                let mut acc = GaussRat::zero();
                for (c, x) in row {
                    if !v[*c].is_zero() {
                        acc += &(x * &v[*c]);
                    }
                }
                acc
            })
            .collect())
    }

    pub fn mul(&self, other: &ExactMatrix) -> Result<ExactMatrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                got: other.rows,
            });
        }
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut acc: SparseRow = Vec::new();
                for (k, v) in row {
                    acc = axpy(&acc, v, &other.data[*k]);
                }
                acc
            })
            .collect();
        Ok(ExactMatrix {
            rows: self.rows,
            cols: other.cols,
            data,
            row_labels: self.row_labels.clone(),
            col_labels: other.col_labels.clone(),
        })
    }

    pub fn add(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| axpy(a, &GaussRat::one(), b))
            .collect();
        ExactMatrix {
            data,
            ..self.clone()
        }
    }

    pub fn scale(&self, c: &GaussRat) -> ExactMatrix {
        let data = if c.is_zero() {
            vec![Vec::new(); self.rows]
        } else {
            self.data.iter().map(|r| scale_row(r, c)).collect()
        };
        ExactMatrix {
            data,
            ..self.clone()
        }
    }

    pub fn rref(&self) -> Rref {
        let mut e = Rref::new(self.cols);
        for row in &self.data {
            e.push(row.clone());
        }
        e
    }
}

/// Incrementally built reduced row echelon form.
#[derive(Debug, Clone)]
pub struct Rref {
    cols: usize,
    /// Pivot rows, each normalized to 1 at its pivot column.
    pivots: BTreeMap<usize, SparseRow>,
}

impl Rref {
    pub fn new(cols: usize) -> Self {
        Rref {
            cols,
            pivots: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn pivot_cols(&self) -> impl Iterator<Item = &usize> {
        self.pivots.keys()
    }

    pub fn pivot_rows(&self) -> impl Iterator<Item = (&usize, &SparseRow)> {
        self.pivots.iter()
    }

    /// Reduces `row` against the current pivots.
    pub fn reduce(&self, row: &SparseRow) -> SparseRow {
        let mut r = row.clone();
        let hits: Vec<(usize, GaussRat)> = row
            .iter()
            .filter(|(c, _)| self.pivots.contains_key(c))
            .cloned()
            .collect();
        for (c, v) in hits {
            r = axpy(&r, &(-&v), &self.pivots[&c]);
        }
        r
    }

    /// Adds a row; returns `true` if it increased the rank.
    pub fn push(&mut self, row: SparseRow) -> bool {
        let r = self.reduce(&row);
        let Some((p, lead)) = r.first().cloned() else {
            return false;
        };
        let r = scale_row(&r, &lead.inv());
        let mut updated = BTreeMap::new();
        for (c, prow) in &self.pivots {
            if let Ok(pos) = prow.binary_search_by_key(&p, |(k, _)| *k) {
                let v = prow[pos].1.clone();
                updated.insert(*c, axpy(prow, &(-&v), &r));
            }
        }
        self.pivots.extend(updated);
        self.pivots.insert(p, r);
        true
    }

    pub fn contains(&self, row: &SparseRow) -> bool {
        self.reduce(row).is_empty()
    }

    /// Null space basis: one vector per free column, free variable set to 1.
    pub fn kernel_basis(&self) -> Vec<Vec<GaussRat>> {
        let mut out = Vec::new();
        for free in 0..self.cols {
            if self.pivots.contains_key(&free) {
                continue;
            }
            let mut v = vec![GaussRat::zero(); self.cols];
            v[free] = GaussRat::one();
            for (p, row) in &self.pivots {
                if let Ok(pos) = row.binary_search_by_key(&free, |(k, _)| *k) {
                    v[*p] = -&row[pos].1;
                }
            }
            out.push(v);
        }
        out
    }
}

pub fn rank(m: &ExactMatrix) -> usize {
    m.rref().rank()
}

pub fn kernel_basis(m: &ExactMatrix) -> Vec<Vec<GaussRat>> {
    m.rref().kernel_basis()
}

/// Solves `M x = b`; `Ok(None)` when the system is inconsistent. Free
/// variables are set to zero.
pub fn solve(m: &ExactMatrix, b: &[GaussRat]) -> Result<Option<Vec<GaussRat>>, LinalgError> {
    if b.len() != m.rows() {
        return Err(LinalgError::DimensionMismatch {
            expected: m.rows(),
            got: b.len(),
        });
    }
    let n = m.cols();
    let mut e = Rref::new(n + 1);
    for (i, row) in m.data.iter().enumerate() {
        let mut r = row.clone();
        if !b[i].is_zero() {
            r.push((n, b[i].clone()));
        }
        e.push(r);
    }
    if e.pivots.contains_key(&n) {
        return Ok(None);
    }
    let mut x = vec![GaussRat::zero(); n];
    for (p, row) in &e.pivots {
        if let Some((c, v)) = row.last() {
            if *c == n {
                x[*p] = v.clone();
            }
        }
    }
    Ok(Some(x))
}

/// Rank of the span of a list of dense vectors.
pub fn span_rank(vectors: &[Vec<GaussRat>]) -> usize {
    let Some(first) = vectors.first() else {
        return 0;
    };
    let mut e = Rref::new(first.len());
    for v in vectors {
        e.push(dense_to_sparse(v));
    }
    e.rank()
}

pub fn dense_to_sparse(v: &[GaussRat]) -> SparseRow {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(re: i64, im: i64) -> GaussRat {
        GaussRat::new(re.into(), im.into())
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&ExactMatrix::identity(3)), 3);
        assert_eq!(rank(&ExactMatrix::zeros(3, 4)), 0);
        let m = ExactMatrix::from_dense(vec![vec![g(1, 0), g(0, 1)], vec![g(0, -1), g(1, 0)]]);
        assert_eq!(rank(&m), 1);
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&ExactMatrix::identity(3)).is_empty());
        assert_eq!(kernel_basis(&ExactMatrix::zeros(2, 2)).len(), 2);
        let m = ExactMatrix::from_dense(vec![vec![g(1, 0), g(0, 1)], vec![g(0, -1), g(1, 0)]]);
        let k = kernel_basis(&m);
        assert_eq!(k.len(), 1);
        assert!(m.mul_vec(&k[0]).unwrap().iter().all(|x| x.is_zero()));
        // (i, -1) up to scale
        let ratio = &k[0][0] / &k[0][1];
        assert_eq!(ratio, g(0, -1));
    }

    #[test]
    fn solve_examples() {
        let m = ExactMatrix::identity(2);
        assert_eq!(
            solve(&m, &[g(1, 0), g(2, 0)]).unwrap(),
            Some(vec![g(1, 0), g(2, 0)])
        );
        let z = ExactMatrix::zeros(1, 1);
        assert_eq!(solve(&z, &[g(1, 0)]).unwrap(), None);
        assert!(solve(&m, &[g(1, 0)]).is_err());
    }
}
