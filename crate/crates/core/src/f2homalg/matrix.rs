use std::fmt;

/// Rows above this fill ratio are eliminated as dense bit rows.
const DENSE_FILL: f64 = 1.0 / 32.0;

/// A matrix over F2 stored as sorted column positions per row.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct SparseMatrixF2 {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<usize>>,
}

impl SparseMatrixF2 {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: vec![Vec::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        Self { rows: n, cols: n, entries: (0..n).map(|i| vec![i]).collect() }
    }

    /// Builds from `(row, col)` positions. A position listed twice cancels,
    /// matching addition over F2. Panics on out-of-bounds positions.
    pub fn from_entries(rows: usize, cols: usize, positions: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut entries = vec![Vec::new(); rows];
        for (r, c) in positions {
            assert!(r < rows && c < cols, "entry ({r}, {c}) outside {rows}x{cols}");
            entries[r].push(c);
        }
        for row in &mut entries {
            row.sort_unstable();
            dedup_mod2(row);
        }
        Self { rows, cols, entries }
    }

    pub fn from_dense(rows: &[Vec<u8>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_entries(
            rows.len(),
            cols,
            rows.iter()
                .enumerate()
                .flat_map(|(r, row)| row.iter().enumerate().filter(|(_, &v)| v & 1 == 1).map(move |(c, _)| (r, c))),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[usize] {
        &self.entries[r]
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.entries[r].binary_search(&c).is_ok()
    }

    pub fn nnz(&self) -> usize {
        self.entries.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Vec::is_empty)
    }

    pub fn positions(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.entries.iter().enumerate().flat_map(|(r, row)| row.iter().map(move |&c| (r, c)))
    }

    pub fn transpose(&self) -> Self {
        Self::from_entries(self.cols, self.rows, self.positions().map(|(r, c)| (c, r)))
    }

    /// `self * other`.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let entries = self
            .entries
            .iter()
            .map(|row| {
                let mut acc = Vec::new();
                for &k in row {
                    acc = xor_sorted(&acc, &other.entries[k]);
                }
                acc
            })
            .collect();
        Self { rows: self.rows, cols: other.cols, entries }
    }

    /// Rank over F2 by Gaussian elimination.
    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        let fill = self.nnz() as f64 / (self.rows as f64 * self.cols as f64);
        if fill >= DENSE_FILL || self.cols <= 128 {
            dense_rank(self.cols, self.entries.iter().map(|r| r.as_slice()))
        } else {
            sparse_rank(&self.entries)
        }
    }
}

impl fmt::Debug for SparseMatrixF2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SparseMatrixF2 {}x{}", self.rows, self.cols)?;
        for row in &self.entries {
            let line: String = (0..self.cols).map(|c| if row.binary_search(&c).is_ok() { '1' } else { '.' }).collect();
            writeln!(f, "  {line}")?;
        }
        Ok(())
    }
}

fn dedup_mod2(row: &mut Vec<usize>) {
    let mut out = Vec::with_capacity(row.len());
    let mut i = 0;
    while i < row.len() {
        let mut j = i;
        while j < row.len() && row[j] == row[i] {
            j += 1;
        }
        if (j - i) % 2 == 1 {
            out.push(row[i]);
        }
        i = j;
    }
    *row = out;
}

/// Symmetric difference of two sorted position lists.
pub(crate) fn xor_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

fn dense_rank<'a>(cols: usize, rows: impl Iterator<Item = &'a [usize]>) -> usize {
    let words = cols.div_ceil(64);
    let mut m: Vec<Vec<u64>> = rows
        .map(|r| {
            let mut bits = vec![0u64; words];
            for &c in r {
                bits[c / 64] |= 1 << (c % 64);
            }
            bits
        })
        .collect();
    let mut rank = 0;
    for c in 0..cols {
        let (w, b) = (c / 64, 1u64 << (c % 64));
        let Some(p) = (rank..m.len()).find(|&r| m[r][w] & b != 0) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && row[w] & b != 0 {
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

fn sparse_rank(rows: &[Vec<usize>]) -> usize {
    // Pivot rows keyed by their leading column.
    let mut pivots: std::collections::HashMap<usize, Vec<usize>> = std::collections::HashMap::new();
    let mut rank = 0;
    for row in rows {
        let mut r = row.clone();
        while let Some(&lead) = r.first() {
            match pivots.get(&lead) {
                Some(p) => r = xor_sorted(&r, p),
                None => {
                    pivots.insert(lead, r);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_examples() {
        assert_eq!(SparseMatrixF2::zeros(3, 4).rank(), 0);
        assert_eq!(SparseMatrixF2::identity(2).rank(), 2);
        assert_eq!(SparseMatrixF2::from_dense(&[vec![1, 1], vec![1, 1]]).rank(), 1);
        assert_eq!(SparseMatrixF2::zeros(0, 5).rank(), 0);
    }

    #[test]
    fn duplicate_positions_cancel() {
        let m = SparseMatrixF2::from_entries(2, 2, [(0, 0), (0, 0), (1, 1)]);
        assert!(!m.get(0, 0));
        assert!(m.get(1, 1));
        assert_eq!(m.nnz(), 1);
    }

    #[test]
    fn sparse_and_dense_paths_agree() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..40 {
            let rows = rng.gen_range(1..300);
            let cols = rng.gen_range(130..400);
            let nnz = rng.gen_range(0..rows * 3);
            let m = SparseMatrixF2::from_entries(
                rows,
                cols,
                (0..nnz).map(|_| (rng.gen_range(0..rows), rng.gen_range(0..cols))),
            );
            assert_eq!(sparse_rank(&m.entries), dense_rank(cols, m.entries.iter().map(|r| r.as_slice())));
        }
    }

    #[test]
    fn product_and_transpose() {
        let a = SparseMatrixF2::from_dense(&[vec![1, 1, 0], vec![0, 1, 1]]);
        let at = a.transpose();
        assert_eq!(at.rows(), 3);
        let p = a.mul(&at);
        assert_eq!(p, SparseMatrixF2::from_dense(&[vec![0, 1], vec![1, 0]]));
        assert_eq!(a.mul(&SparseMatrixF2::identity(3)), a);
    }
}
