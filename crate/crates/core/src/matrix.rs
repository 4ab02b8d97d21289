//! Small dense integer matrices. Weyl group actions are integral in the bases
//! used by this crate, so group elements can be stored and compared exactly.

use crate::rational::Rat;
use num_bigint::BigInt;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IntMat {
    n: usize,
    data: Vec<i64>,
}

impl IntMat {
    pub fn identity(n: usize) -> Self {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        IntMat { n, data }
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "square matrix required");
        IntMat {
            n,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.n + j] = v;
    }

    pub fn mul(&self, rhs: &IntMat) -> IntMat {
        let n = self.n;
        assert_eq!(n, rhs.n);
        let mut out = vec![0i64; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        IntMat { n, data: out }
    }

    /// Matrix times column vector, exactly.
    pub fn apply(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.n);
        self.data
            .chunks_exact(self.n)
            .map(|row| {
                let mut acc = Rat::from_integer(0.into());
                for (&a, x) in row.iter().zip(v) {
                    if a != 0 {
                        acc += x.clone() * Rat::from_integer(BigInt::from(a));
                    }
                }
                acc
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_int;

    #[test]
    fn identity_and_product() {
        let id = IntMat::identity(3);
        let m = IntMat::from_rows(vec![vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]]);
        assert_eq!(id.mul(&m), m);
        assert_eq!(m.mul(&m), id);
        let v = vec![rat_int(2), rat_int(5), rat_int(7)];
        assert_eq!(m.apply(&v), vec![rat_int(5), rat_int(2), rat_int(7)]);
    }
}
