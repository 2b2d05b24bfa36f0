//! Linear algebra over `F_p`.

use std::collections::BTreeMap;

use crate::grpoly::Fp;

/// Sparse vector: column index to nonzero entry.
pub type SparseVec = BTreeMap<usize, u32>;

fn axpy(fp: Fp, y: &mut SparseVec, a: u32, x: &SparseVec) {
    if a == 0 {
        return;
    }
    for (&k, &v) in x {
        let e = y.entry(k).or_insert(0);
        *e = fp.add(*e, fp.mul(a, v));
        if *e == 0 {
            y.remove(&k);
        }
    }
}

/// Row echelon form built one vector at a time, remembering how each stored
/// row was combined from the inserted vectors.
pub struct Echelon<K> {
    fp: Fp,
    // pivot column, row (pivot entry 1), combination over label indices
    rows: Vec<(usize, SparseVec, SparseVec)>,
    labels: Vec<K>,
}

impl<K: Clone> Echelon<K> {
    pub fn new(fp: Fp) -> Self {
        Echelon {
            fp,
            rows: Vec::new(),
            labels: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn labels(&self) -> &[K] {
        &self.labels
    }

    /// Reduces `v` against the stored rows. Returns the residual and the
    /// combination `c` of labels with `v = residual + Σ c_k · label_k`.
    pub fn reduce(&self, v: &SparseVec) -> (SparseVec, SparseVec) {
        let fp = self.fp;
        let mut r = v.clone();
        let mut comb = SparseVec::new();
        for (piv, row, c) in &self.rows {
            let a = r.get(piv).copied().unwrap_or(0);
            if a != 0 {
                axpy(fp, &mut r, fp.neg(a), row);
                axpy(fp, &mut comb, a, c);
            }
        }
        (r, comb)
    }

    /// Inserts `v` under `label`; returns false (and stores nothing) when `v`
    /// already lies in the span.
    pub fn insert(&mut self, label: K, v: &SparseVec) -> bool {
        let fp = self.fp;
        let (r, comb) = self.reduce(v);
        let Some((&piv, &a)) = r.iter().next() else {
            return false;
        };
        let idx = self.labels.len();
        self.labels.push(label);
        let inv = fp.inv(a);
        // r = v - comb, so r/a = (e_idx - comb)/a
        let mut c = SparseVec::new();
        c.insert(idx, 1);
        axpy(fp, &mut c, fp.neg(1), &comb);
        let scale = |x: &SparseVec| -> SparseVec {
            x.iter().map(|(&k, &e)| (k, fp.mul(e, inv))).collect()
        };
        let row = scale(&r);
        let c = scale(&c);
        // keep the rows fully reduced with respect to the new pivot
        for (_, other, oc) in self.rows.iter_mut() {
            let b = other.get(&piv).copied().unwrap_or(0);
            if b != 0 {
                axpy(fp, other, fp.neg(b), &row);
                axpy(fp, oc, fp.neg(b), &c);
            }
        }
        self.rows.push((piv, row, c));
        true
    }

    /// Coordinates of `v` in terms of the inserted labels, if it is in the span.
    pub fn express(&self, v: &SparseVec) -> Option<Vec<(K, u32)>> {
        let (r, comb) = self.reduce(v);
        if !r.is_empty() {
            return None;
        }
        Some(
            comb.into_iter()
                .map(|(k, c)| (self.labels[k].clone(), c))
                .collect(),
        )
    }
}

/// Dense matrix in row-major order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u32>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, fp: Fp, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows);
        let mut out = Matrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..o.cols {
                    let v = fp.add(out.get(i, j), fp.mul(a, o.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self, fp: Fp) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(src) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if src != r {
                for j in 0..self.cols {
                    self.data.swap(src * self.cols + j, r * self.cols + j);
                }
            }
            let inv = fp.inv(self.get(r, c));
            for j in 0..self.cols {
                let v = fp.mul(self.get(r, j), inv);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c);
                if f == 0 {
                    continue;
                }
                for j in 0..self.cols {
                    let v = fp.sub(self.get(i, j), fp.mul(f, self.get(r, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self, fp: Fp) -> usize {
        self.clone().rref(fp).len()
    }

    /// Basis of the right null space `{x : Ax = 0}`.
    pub fn kernel(&self, fp: Fp) -> Vec<Vec<u32>> {
        let mut m = self.clone();
        let pivots = m.rref(fp);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![0; self.cols];
                x[f] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    x[pc] = fp.neg(m.get(r, f));
                }
                x
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(entries: &[(usize, u32)]) -> SparseVec {
        entries.iter().copied().collect()
    }

    #[test]
    fn echelon_expresses_combinations() {
        let fp = Fp::new(5).unwrap();
        let mut e = Echelon::new(fp);
        assert!(e.insert("a", &sv(&[(0, 1), (1, 2)])));
        assert!(e.insert("b", &sv(&[(1, 1), (2, 3)])));
        assert!(!e.insert("c", &sv(&[(0, 2), (1, 4)])));
        // 3a + 4b = (3, 6+4, 12) = (3, 0, 2)
        let mut coords = e.express(&sv(&[(0, 3), (2, 2)])).unwrap();
        coords.sort();
        assert_eq!(coords, vec![("a", 3), ("b", 4)]);
        assert!(e.express(&sv(&[(3, 1)])).is_none());
    }

    #[test]
    fn kernel_is_annihilated() {
        let fp = Fp::new(3).unwrap();
        let mut a = Matrix::zeros(2, 4);
        for (i, row) in [[1, 2, 0, 1], [0, 1, 1, 2]].iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                a.set(i, j, v);
            }
        }
        let k = a.kernel(fp);
        assert_eq!(k.len(), 2);
        for x in k {
            let mut col = Matrix::zeros(4, 1);
            for (i, v) in x.into_iter().enumerate() {
                col.set(i, 0, v);
            }
            assert!(a.mul(fp, &col).is_zero());
        }
    }
}
