//! Dense `n^rank` index arrays.

use super::backend::Scalar;

#[derive(Clone, Debug)]
pub struct Arr<S> {
    n: usize,
    rank: usize,
    data: Vec<S>,
}

impl<S> Arr<S> {
    /// Fill in lexicographic index order.
    pub fn from_fn(n: usize, rank: usize, mut f: impl FnMut(&[usize]) -> S) -> Self {
        let total = n.pow(rank as u32);
        let mut data = Vec::with_capacity(total);
        let mut idx = vec![0; rank];
        for _ in 0..total {
            data.push(f(&idx));
            for p in (0..rank).rev() {
                idx[p] += 1;
                if idx[p] < n {
                    break;
                }
                idx[p] = 0;
            }
        }
        Arr { n, rank, data }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    fn offset(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.rank);
        idx.iter().fold(0, |acc, &i| acc * self.n + i)
    }

    /// Entries in lexicographic index order.
    pub fn iter(&self) -> std::slice::Iter<'_, S> {
        self.data.iter()
    }

    pub fn get(&self, idx: &[usize]) -> &S {
        &self.data[self.offset(idx)]
    }

    pub fn at3(&self, i: usize, j: usize, k: usize) -> &S {
        &self.data[(i * self.n + j) * self.n + k]
    }

    /// Entries with their (0-based) index tuples, in lexicographic order.
    pub fn indexed(&self) -> impl Iterator<Item = (Vec<usize>, &S)> {
        let n = self.n;
        let rank = self.rank;
        self.data.iter().enumerate().map(move |(mut off, v)| {
            let mut idx = vec![0; rank];
            for p in (0..rank).rev() {
                idx[p] = off % n;
                off /= n;
            }
            (idx, v)
        })
    }

    pub fn map<T>(&self, f: impl FnMut(&S) -> T) -> Arr<T> {
        Arr { n: self.n, rank: self.rank, data: self.data.iter().map(f).collect() }
    }

    pub fn values(&self) -> &[S] {
        &self.data
    }
}

/// Lexicographically first nonzero entry, with 1-based indices.
pub fn first_nonzero<S: Scalar>(a: &Arr<S>) -> Option<(Vec<usize>, String)> {
    a.indexed()
        .find(|(_, v)| !v.is_zero())
        .map(|(idx, v)| (idx.iter().map(|i| i + 1).collect(), v.describe()))
}
