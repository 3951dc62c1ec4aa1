use super::field::Fp;

/// Dense row-major matrix over F_p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    p: u32,
    data: Vec<u32>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize, p: u32) -> Self {
        Matrix { rows, cols, p, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize, p: u32) -> Self {
        let mut m = Matrix::zeros(n, n, p);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Fp>], cols: usize, p: u32) -> Self {
        let mut m = Matrix::zeros(rows.len(), cols, p);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged row");
            for (j, a) in r.iter().enumerate() {
                m.data[i * cols + j] = a.value();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn get(&self, i: usize, j: usize) -> Fp {
        Fp::from_u64(self.data[i * self.cols + j] as u64, self.p)
    }

    pub fn set(&mut self, i: usize, j: usize, a: Fp) {
        self.data[i * self.cols + j] = a.value();
    }

    pub fn row(&self, i: usize) -> Vec<Fp> {
        (0..self.cols).map(|j| self.get(i, j)).collect()
    }

    pub fn push_row(&mut self, r: &[Fp]) {
        assert_eq!(r.len(), self.cols);
        self.data.extend(r.iter().map(|a| a.value()));
        self.rows += 1;
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows, self.p);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Fp]) -> Vec<Fp> {
        assert_eq!(v.len(), self.cols);
        let p = self.p as u64;
        (0..self.rows)
            .map(|i| {
                let mut acc = 0u64;
                for j in 0..self.cols {
                    acc = (acc + self.data[i * self.cols + j] as u64 * v[j].value() as u64) % p;
                }
                Fp::from_u64(acc, self.p)
            })
            .collect()
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    ///
    /// Pivots are the first nonzero entry found scanning down each column,
    /// so the result is deterministic.
    pub fn rref(&mut self) -> Vec<usize> {
        let p = self.p as u64;
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| self.data[i * cols + c] != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..cols {
                    self.data.swap(pr * cols + j, r * cols + j);
                }
            }
            let inv = Fp::from_u64(self.data[r * cols + c] as u64, self.p).inv().unwrap().value() as u64;
            for j in c..cols {
                let idx = r * cols + j;
                self.data[idx] = ((self.data[idx] as u64 * inv) % p) as u32;
            }
            let (before, rest) = self.data.split_at_mut(r * cols);
            let (pivot_row, after) = rest.split_at_mut(cols);
            let eliminate = |row: &mut [u32]| {
                let f = row[c] as u64;
                if f == 0 {
                    return;
                }
                let nf = p - f;
                for j in c..cols {
                    if pivot_row[j] != 0 {
                        row[j] = ((row[j] as u64 + nf * pivot_row[j] as u64) % p) as u32;
                    }
                }
            };
            for row in before.chunks_mut(cols) {
                eliminate(row);
            }
            for row in after.chunks_mut(cols) {
                eliminate(row);
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Rank together with a basis of the right nullspace `{v : M v = 0}`.
    pub fn rank_and_nullspace(&self) -> (usize, Vec<Vec<Fp>>) {
        let mut m = self.clone();
        let pivots = m.rref();
        let cols = self.cols;
        let mut is_pivot = vec![false; cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in (0..cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Fp::zero(self.p); cols];
            v[free] = Fp::one(self.p);
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m.get(r, free);
            }
            basis.push(v);
        }
        (pivots.len(), basis)
    }
}

/// Rank and nullspace of a matrix; thin wrapper kept for call-site symmetry.
pub fn rank_and_nullspace(m: &Matrix) -> (usize, Vec<Vec<Fp>>) {
    m.rank_and_nullspace()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_and_zero() {
        let (r, ns) = Matrix::identity(3, 7).rank_and_nullspace();
        assert_eq!((r, ns.len()), (3, 0));
        let (r, ns) = Matrix::zeros(2, 5, 7).rank_and_nullspace();
        assert_eq!((r, ns.len()), (0, 5));
    }

    #[test]
    fn nullspace_vectors_annihilate() {
        let p = 101;
        let rows: Vec<Vec<Fp>> = (0..4)
            .map(|i| (0..7).map(|j| Fp::new((i * 7 + j * j * 3 + 1) as i64, p)).collect())
            .collect();
        let m = Matrix::from_rows(&rows, 7, p);
        let (r, ns) = m.rank_and_nullspace();
        assert_eq!(r + ns.len(), 7);
        for v in ns {
            assert!(m.mul_vec(&v).iter().all(|a| a.is_zero()));
        }
    }
}
