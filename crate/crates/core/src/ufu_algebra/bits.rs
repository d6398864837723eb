//! Dense bit matrices over F₂, the substrate for all monomial-matrix
//! arithmetic. Rows are packed into u64 words.

/// A dense matrix over F₂ with word-packed rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(64);
        BitMatrix {
            rows,
            cols,
            words,
            data: vec![0; rows * words],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = BitMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        debug_assert!(r < self.rows && c < self.cols);
        self.data[r * self.words + c / 64] >> (c % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        debug_assert!(r < self.rows && c < self.cols);
        let w = &mut self.data[r * self.words + c / 64];
        if v {
            *w |= 1 << (c % 64);
        } else {
            *w &= !(1 << (c % 64));
        }
    }

    #[inline]
    pub fn flip(&mut self, r: usize, c: usize) {
        self.data[r * self.words + c / 64] ^= 1 << (c % 64);
    }

    pub fn row_is_zero(&self, r: usize) -> bool {
        self.data[r * self.words..(r + 1) * self.words]
            .iter()
            .all(|&w| w == 0)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    /// row `dst` ^= row `src`.
    pub fn xor_row(&mut self, dst: usize, src: usize) {
        debug_assert_ne!(dst, src);
        let (d, s) = (dst * self.words, src * self.words);
        for k in 0..self.words {
            let v = self.data[s + k];
            self.data[d + k] ^= v;
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for k in 0..self.words {
            self.data.swap(a * self.words + k, b * self.words + k);
        }
    }

    /// col `dst` ^= col `src`.
    pub fn xor_col(&mut self, dst: usize, src: usize) {
        debug_assert_ne!(dst, src);
        for r in 0..self.rows {
            if self.get(r, src) {
                self.flip(r, dst);
            }
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            let (va, vb) = (self.get(r, a), self.get(r, b));
            self.set(r, a, vb);
            self.set(r, b, va);
        }
    }

    /// self ^= other, elementwise (shapes must agree).
    pub fn xor_in(&mut self, other: &BitMatrix) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a ^= b;
        }
    }

    /// Matrix product over F₂ (self · rhs).
    pub fn mul(&self, rhs: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, rhs.rows, "bit matrix product shape mismatch");
        let mut out = BitMatrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            let base = r * self.words;
            let out_base = r * out.words;
            for k in 0..self.cols {
                if self.data[base + k / 64] >> (k % 64) & 1 == 1 {
                    let rhs_base = k * rhs.words;
                    for w in 0..rhs.words {
                        out.data[out_base + w] ^= rhs.data[rhs_base + w];
                    }
                }
            }
        }
        out
    }

    /// Sum over F₂.
    pub fn add(&self, rhs: &BitMatrix) -> BitMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&rhs.data) {
            *a ^= b;
        }
        out
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut out = BitMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    out.set(c, r, true);
                }
            }
        }
        out
    }

    /// Rank over F₂ (non-destructive).
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for c in 0..m.cols {
            let pivot = (rank..m.rows).find(|&r| m.get(r, c));
            if let Some(p) = pivot {
                m.swap_rows(rank, p);
                for r in 0..m.rows {
                    if r != rank && m.get(r, c) {
                        m.xor_row(r, rank);
                    }
                }
                rank += 1;
                if rank == m.rows {
                    break;
                }
            }
        }
        rank
    }

    /// A basis of {x : self · x = 0}, one inner Vec<bool> per basis vector.
    pub fn kernel(&self) -> Vec<Vec<bool>> {
        let mut m = self.clone();
        let mut pivot_col_of_row: Vec<usize> = Vec::new();
        let mut pivot_cols: Vec<usize> = Vec::new();
        let mut rank = 0;
        for c in 0..m.cols {
            if let Some(p) = (rank..m.rows).find(|&r| m.get(r, c)) {
                m.swap_rows(rank, p);
                for r in 0..m.rows {
                    if r != rank && m.get(r, c) {
                        m.xor_row(r, rank);
                    }
                }
                pivot_col_of_row.push(c);
                pivot_cols.push(c);
                rank += 1;
            }
        }
        let mut basis = Vec::new();
        for free_c in 0..m.cols {
            if pivot_cols.binary_search(&free_c).is_ok() {
                continue;
            }
            let mut v = vec![false; m.cols];
            v[free_c] = true;
            for (row, &pc) in pivot_col_of_row.iter().enumerate() {
                if m.get(row, free_c) {
                    v[pc] = true;
                }
            }
            basis.push(v);
        }
        basis
    }

    /// One solution of self · x = b, if any.
    pub fn solve(&self, b: &[bool]) -> Option<Vec<bool>> {
        assert_eq!(b.len(), self.rows);
        let mut m = self.clone();
        let mut rhs: Vec<bool> = b.to_vec();
        let mut pivot_col_of_row: Vec<usize> = Vec::new();
        let mut rank = 0;
        for c in 0..m.cols {
            if let Some(p) = (rank..m.rows).find(|&r| m.get(r, c)) {
                m.swap_rows(rank, p);
                rhs.swap(rank, p);
                for r in 0..m.rows {
                    if r != rank && m.get(r, c) {
                        m.xor_row(r, rank);
                        rhs[r] ^= rhs[rank];
                    }
                }
                pivot_col_of_row.push(c);
                rank += 1;
            }
        }
        for r in rank..m.rows {
            if rhs[r] {
                return None;
            }
        }
        let mut x = vec![false; self.cols];
        for (row, &pc) in pivot_col_of_row.iter().enumerate() {
            x[pc] = rhs[row];
        }
        Some(x)
    }
}

impl std::fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for r in 0..self.rows {
            for c in 0..self.cols {
                write!(f, "{}", if self.get(r, c) { '1' } else { '.' })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_kernel() {
        let mut m = BitMatrix::zeros(2, 3);
        m.set(0, 0, true);
        m.set(0, 1, true);
        m.set(1, 2, true);
        assert_eq!(m.rank(), 2);
        let ker = m.kernel();
        assert_eq!(ker.len(), 1);
        let v = &ker[0];
        assert_eq!(v, &vec![true, true, false]);
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let mut m = BitMatrix::zeros(3, 2);
        m.set(0, 0, true);
        m.set(1, 1, true);
        m.set(2, 0, true);
        m.set(2, 1, true);
        let x = m.solve(&[true, false, true]).unwrap();
        assert_eq!(x, vec![true, false]);
        assert!(m.solve(&[true, false, false]).is_none());
    }

    #[test]
    fn product_matches_hand_example() {
        let mut a = BitMatrix::zeros(2, 2);
        a.set(0, 0, true);
        a.set(0, 1, true);
        a.set(1, 1, true);
        let prod = a.mul(&a);
        assert!(prod.get(0, 0));
        assert!(!prod.get(0, 1));
        assert!(prod.get(1, 1));
    }
}
