//! Dense bit matrices over F2, enough for rank computations.

/// A dense matrix over the two-element field, rows packed into 64-bit words.
#[derive(Clone, Debug)]
pub struct BitMatrix {
    rows: Vec<Vec<u64>>,
    ncols: usize,
}

impl BitMatrix {
    pub fn zero(nrows: usize, ncols: usize) -> Self {
        let words = ncols.div_ceil(64);
        BitMatrix {
            rows: vec![vec![0u64; words]; nrows],
            ncols,
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        debug_assert!(c < self.ncols);
        let (w, b) = (c / 64, c % 64);
        if value {
            self.rows[r][w] |= 1 << b;
        } else {
            self.rows[r][w] &= !(1 << b);
        }
    }

    pub fn flip(&mut self, r: usize, c: usize) {
        debug_assert!(c < self.ncols);
        self.rows[r][c / 64] ^= 1 << (c % 64);
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        (self.rows[r][c / 64] >> (c % 64)) & 1 == 1
    }

    pub fn push_row(&mut self, bits: Vec<u64>) {
        debug_assert_eq!(bits.len(), self.ncols.div_ceil(64));
        self.rows.push(bits);
    }

    /// Rank by in-place Gaussian elimination.
    pub fn rank(mut self) -> usize {
        let words = self.ncols.div_ceil(64);
        let mut rank = 0;
        for col in 0..self.ncols {
            let (w, b) = (col / 64, col % 64);
            let mut pivot = None;
            for r in rank..self.rows.len() {
                if (self.rows[r][w] >> b) & 1 == 1 {
                    pivot = Some(r);
                    break;
                }
            }
            let Some(p) = pivot else { continue };
            self.rows.swap(rank, p);
            let (head, tail) = self.rows.split_at_mut(rank + 1);
            let pivot_row = &head[rank];
            for row in tail.iter_mut() {
                if (row[w] >> b) & 1 == 1 {
                    for k in w..words {
                        row[k] ^= pivot_row[k];
                    }
                }
            }
            rank += 1;
            if rank == self.rows.len() {
                break;
            }
        }
        rank
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_of_small_matrices() {
        let mut m = BitMatrix::zero(3, 3);
        m.set(0, 0, true);
        m.set(1, 1, true);
        m.set(2, 0, true);
        m.set(2, 1, true);
        // Third row is the sum of the first two.
        assert_eq!(m.clone().rank(), 2);

        let mut id = BitMatrix::zero(4, 4);
        for i in 0..4 {
            id.set(i, i, true);
        }
        assert_eq!(id.rank(), 4);

        assert_eq!(BitMatrix::zero(5, 7).rank(), 0);
    }

    #[test]
    fn rank_across_word_boundaries() {
        let n = 130;
        let mut m = BitMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, true);
            if i + 1 < n {
                m.set(i, i + 1, true);
            }
        }
        assert_eq!(m.rank(), n);
    }
}
