//! Dense matrices over any `Scalar` domain.

use std::fmt;

use super::scalar::Scalar;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq)]
pub struct Mat<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
    zero: S,
}

impl<S: Scalar> fmt::Debug for Mat<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{:?}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}

/// `[[a, b], [c, d]]`
impl<S: Scalar + fmt::Display> fmt::Display for Mat<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl<S: Scalar> Mat<S> {
    pub fn from_fn(rows: usize, cols: usize, zero: &S, mut f: impl FnMut(usize, usize) -> S) -> Mat<S> {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data, zero: zero.zero_like() }
    }
    pub fn zeros(rows: usize, cols: usize, zero: &S) -> Mat<S> {
        Mat::from_fn(rows, cols, zero, |_, _| zero.zero_like())
    }
    pub fn identity(n: usize, zero: &S) -> Mat<S> {
        Mat::from_fn(n, n, zero, |i, j| if i == j { zero.one_like() } else { zero.zero_like() })
    }
    pub fn scalar(n: usize, s: &S) -> Mat<S> {
        Mat::from_fn(n, n, s, |i, j| if i == j { s.clone() } else { s.zero_like() })
    }
    /// Build from rows; every row must have the same length.
    pub fn from_rows(rows: Vec<Vec<S>>, zero: &S) -> Result<Mat<S>> {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::SizeMismatch("ragged matrix rows".into()));
        }
        Ok(Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect(), zero: zero.zero_like() })
    }
    /// The (i,j) unit matrix epsilon_ij (0-based indices).
    pub fn unit(n: usize, i: usize, j: usize, zero: &S) -> Mat<S> {
        Mat::from_fn(n, n, zero, |a, b| if a == i && b == j { zero.one_like() } else { zero.zero_like() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }
    pub fn zero_elem(&self) -> &S {
        &self.zero
    }
    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.cols + j]
    }
    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.data[i * self.cols + j] = v;
    }
    pub fn row(&self, i: usize) -> Vec<S> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }
    pub fn col(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }
    pub fn to_rows(&self) -> Vec<Vec<S>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }
    pub fn entries(&self) -> impl Iterator<Item = &S> {
        self.data.iter()
    }

    pub fn map<R: Scalar>(&self, zero: &R, f: impl Fn(&S) -> R) -> Mat<R> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect(), zero: zero.zero_like() }
    }
    pub fn try_map<R: Scalar>(&self, zero: &R, f: impl Fn(&S) -> Result<R>) -> Result<Mat<R>> {
        let data = self.data.iter().map(f).collect::<Result<Vec<R>>>()?;
        Ok(Mat { rows: self.rows, cols: self.cols, data, zero: zero.zero_like() })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }
    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> Mat<S> {
        Mat::from_fn(self.cols, self.rows, &self.zero, |i, j| self.get(j, i).clone())
    }
    pub fn add(&self, o: &Mat<S>) -> Mat<S> {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch in add");
        Mat::from_fn(self.rows, self.cols, &self.zero, |i, j| self.get(i, j).plus(o.get(i, j)))
    }
    pub fn sub(&self, o: &Mat<S>) -> Mat<S> {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch in sub");
        Mat::from_fn(self.rows, self.cols, &self.zero, |i, j| self.get(i, j).minus(o.get(i, j)))
    }
    pub fn neg(&self) -> Mat<S> {
        self.map(&self.zero, |x| x.negate())
    }
    pub fn scale(&self, s: &S) -> Mat<S> {
        self.map(&self.zero, |x| s.times(x))
    }
    pub fn mul(&self, o: &Mat<S>) -> Mat<S> {
        assert_eq!(self.cols, o.rows, "shape mismatch in mul");
        Mat::from_fn(self.rows, o.cols, &self.zero, |i, j| {
            let mut acc = self.zero.zero_like();
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                let b = o.get(k, j);
                if b.is_zero() {
                    continue;
                }
                acc = acc.plus(&a.times(b));
            }
            acc
        })
    }
    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        (0..self.rows)
            .map(|i| {
                let mut acc = self.zero.zero_like();
                for (k, x) in v.iter().enumerate() {
                    acc = acc.plus(&self.get(i, k).times(x));
                }
                acc
            })
            .collect()
    }
    /// Entrywise Frobenius twist.
    pub fn twist(&self, k: u32) -> Mat<S> {
        self.map(&self.zero, |x| x.twist(k))
    }
    pub fn pow(&self, e: u32) -> Mat<S> {
        let mut acc = Mat::identity(self.rows, &self.zero);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Kronecker product, row index (i1, i2) -> i1 * rows2 + i2.
    pub fn kron(&self, o: &Mat<S>) -> Mat<S> {
        Mat::from_fn(self.rows * o.rows, self.cols * o.cols, &self.zero, |i, j| {
            self.get(i / o.rows, j / o.cols).times(o.get(i % o.rows, j % o.cols))
        })
    }
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Mat<S> {
        Mat::from_fn(rows.len(), cols.len(), &self.zero, |i, j| self.get(rows[i], cols[j]).clone())
    }
    pub fn block(&self, r0: usize, c0: usize, r: usize, c: usize) -> Mat<S> {
        Mat::from_fn(r, c, &self.zero, |i, j| self.get(r0 + i, c0 + j).clone())
    }
    /// Assemble from a grid of blocks with consistent shapes.
    pub fn from_blocks(blocks: &[Vec<Mat<S>>], zero: &S) -> Mat<S> {
        let heights: Vec<usize> = blocks.iter().map(|row| row[0].rows).collect();
        let widths: Vec<usize> = blocks[0].iter().map(|b| b.cols).collect();
        let (h, w) = (heights.iter().sum(), widths.iter().sum());
        let mut m = Mat::zeros(h, w, zero);
        let mut r0 = 0;
        for (bi, row) in blocks.iter().enumerate() {
            let mut c0 = 0;
            for (bj, b) in row.iter().enumerate() {
                for i in 0..b.rows {
                    for j in 0..b.cols {
                        m.set(r0 + i, c0 + j, b.get(i, j).clone());
                    }
                }
                c0 += widths[bj];
            }
            r0 += heights[bi];
        }
        m
    }
    pub fn direct_sum(&self, o: &Mat<S>) -> Mat<S> {
        let z1 = Mat::zeros(self.rows, o.cols, &self.zero);
        let z2 = Mat::zeros(o.rows, self.cols, &self.zero);
        Mat::from_blocks(&[vec![self.clone(), z1], vec![z2, o.clone()]], &self.zero)
    }

    /// Determinant using only ring operations (dynamic programming over column subsets).
    pub fn det_ring(&self) -> S {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return self.zero.one_like();
        }
        let mut dp: Vec<Option<S>> = vec![None; 1 << n];
        dp[0] = Some(self.zero.one_like());
        for mask in 0usize..(1 << n) {
            let cur = match dp[mask].take() {
                Some(c) => c,
                None => continue,
            };
            if mask == (1 << n) - 1 {
                dp[mask] = Some(cur);
                continue;
            }
            let i = mask.count_ones() as usize;
            for j in 0..n {
                if mask & (1 << j) != 0 {
                    continue;
                }
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                let above = (mask >> (j + 1)).count_ones();
                let mut term = cur.times(a);
                if above % 2 == 1 {
                    term = term.negate();
                }
                let nm = mask | (1 << j);
                dp[nm] = Some(match dp[nm].take() {
                    Some(x) => x.plus(&term),
                    None => term,
                });
            }
        }
        dp[(1 << n) - 1].take().unwrap_or_else(|| self.zero.zero_like())
    }

    fn pivot_row(&self, col: usize, from: usize) -> Option<usize> {
        let mut best: Option<(usize, i128)> = None;
        for i in from..self.rows {
            let x = self.get(i, col);
            if x.is_zero() {
                continue;
            }
            let k = x.pivot_key();
            if best.map(|(_, bk)| k > bk).unwrap_or(true) {
                best = Some((i, k));
            }
        }
        best.map(|(i, _)| i)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Row echelon form by Gaussian elimination over a field. Returns (echelon, pivot columns, sign).
    pub fn echelon(&self) -> Result<(Mat<S>, Vec<usize>, bool)> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut neg = false;
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let p = match m.pivot_row(c, r) {
                Some(p) => p,
                None => continue,
            };
            if p != r {
                m.swap_rows(p, r);
                neg = !neg;
            }
            let inv = m.get(r, c).recip()?;
            for i in r + 1..m.rows {
                let f = m.get(i, c).times(&inv);
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = m.get(i, j).minus(&f.times(m.get(r, j)));
                    m.set(i, j, v);
                }
                m.set(i, c, m.zero.zero_like());
            }
            pivots.push(c);
            r += 1;
        }
        Ok((m, pivots, neg))
    }

    /// Determinant over a field by elimination.
    pub fn det(&self) -> Result<S> {
        if !self.is_square() {
            return Err(Error::SizeMismatch("determinant of a non-square matrix".into()));
        }
        let (m, pivots, neg) = self.echelon()?;
        if pivots.len() < self.rows {
            return Ok(self.zero.zero_like());
        }
        let mut d = self.zero.one_like();
        for i in 0..self.rows {
            d = d.times(m.get(i, i));
        }
        Ok(if neg { d.negate() } else { d })
    }

    pub fn rank(&self) -> Result<usize> {
        Ok(self.echelon()?.1.len())
    }

    /// Inverse over a field by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<Mat<S>> {
        if !self.is_square() {
            return Err(Error::SizeMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut b = Mat::identity(n, &self.zero);
        for c in 0..n {
            let p = a.pivot_row(c, c).ok_or(Error::Singular)?;
            a.swap_rows(p, c);
            b.swap_rows(p, c);
            let inv = a.get(c, c).recip()?;
            for j in 0..n {
                a.set(c, j, a.get(c, j).times(&inv));
                b.set(c, j, b.get(c, j).times(&inv));
            }
            for i in 0..n {
                if i == c {
                    continue;
                }
                let f = a.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let va = a.get(i, j).minus(&f.times(a.get(c, j)));
                    a.set(i, j, va);
                    let vb = b.get(i, j).minus(&f.times(b.get(c, j)));
                    b.set(i, j, vb);
                }
            }
        }
        Ok(b)
    }

    /// One solution x of self * x = b over a field, or None when b is not in the image.
    pub fn solve(&self, b: &[S]) -> Result<Option<Vec<S>>> {
        if b.len() != self.rows {
            return Err(Error::SizeMismatch("right-hand side length".into()));
        }
        let aug = Mat::from_fn(self.rows, self.cols + 1, &self.zero, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                b[i].clone()
            }
        });
        let (m, pivots, _) = aug.echelon()?;
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![self.zero.zero_like(); self.cols];
        for (r, &c) in pivots.iter().enumerate().rev() {
            let mut acc = m.get(r, self.cols).clone();
            for j in c + 1..self.cols {
                acc = acc.minus(&m.get(r, j).times(&x[j]));
            }
            x[c] = acc.times(&m.get(r, c).recip()?);
        }
        Ok(Some(x))
    }

    /// Transposed cofactor matrix, computed with ring determinants.
    pub fn adjugate(&self) -> Mat<S> {
        let n = self.rows;
        if n == 1 {
            return Mat::identity(1, &self.zero);
        }
        Mat::from_fn(n, n, &self.zero, |i, j| {
            let rs: Vec<usize> = (0..n).filter(|&r| r != j).collect();
            let cs: Vec<usize> = (0..n).filter(|&c| c != i).collect();
            let d = self.submatrix(&rs, &cs).det_ring();
            if (i + j) % 2 == 1 {
                d.negate()
            } else {
                d
            }
        })
    }

    /// k x k minors in lexicographic order of row and column subsets.
    pub fn compound(&self, k: usize) -> Mat<S> {
        let rs = subsets(self.rows, k);
        let cs = subsets(self.cols, k);
        Mat::from_fn(rs.len(), cs.len(), &self.zero, |i, j| self.submatrix(&rs[i], &cs[j]).det_ring())
    }
}

/// All k-element subsets of 0..n in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut r = 1usize;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base_arith::rat::ThetaRat;
    use crate::base_arith::spec::FieldSpec;

    fn t3() -> ThetaRat {
        ThetaRat::theta(FieldSpec::prime(3).fq())
    }

    #[test]
    fn det_ring_matches_elimination() {
        let t = t3();
        let one = t.one_like();
        let m = Mat::from_rows(
            vec![
                vec![t.clone(), one.clone(), t.pow(2)],
                vec![one.clone(), t.plus(&one), t.zero_like()],
                vec![t.pow(3), one.clone(), one.negate()],
            ],
            &t,
        )
        .unwrap();
        assert_eq!(m.det_ring(), m.det().unwrap());
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
    }

    #[test]
    fn compound_of_identity() {
        let t = t3();
        let id = Mat::identity(4, &t);
        assert!(id.compound(2).is_identity());
        assert_eq!(id.compound(2).rows(), 6);
    }
}
