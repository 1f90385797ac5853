//! Square boolean matrix stored as packed rows.

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct BitMatrix {
    n: usize,
    words: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub(crate) fn new(n: usize) -> Self {
        let words = n.div_ceil(64);
        BitMatrix {
            n,
            words,
            data: vec![0; n * words],
        }
    }

    #[cfg(test)]
    pub(crate) fn size(&self) -> usize {
        self.n
    }

    pub(crate) fn get(&self, i: usize, j: usize) -> bool {
        self.data[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    pub(crate) fn set(&mut self, i: usize, j: usize) {
        self.data[i * self.words + j / 64] |= 1 << (j % 64);
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.words..(i + 1) * self.words]
    }

    pub(crate) fn row_iter(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&j| self.get(i, j))
    }

    pub(crate) fn iter_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |i| self.row_iter(i).map(move |j| (i, j)))
    }

    /// Number of `i` with `(i, j)` set.
    pub(crate) fn column_count(&self, j: usize) -> usize {
        (0..self.n).filter(|&i| self.get(i, j)).count()
    }

    /// Some `(x, y, z)` with `x R y`, `y R z` but not `x R z`.
    pub(crate) fn transitivity_violation(&self) -> Option<(usize, usize, usize)> {
        for x in 0..self.n {
            for y in self.row_iter(x) {
                let (rx, ry) = (self.row(x), self.row(y));
                if let Some(w) = (0..self.words).find(|&w| ry[w] & !rx[w] != 0) {
                    let z = w * 64 + (ry[w] & !rx[w]).trailing_zeros() as usize;
                    return Some((x, y, z));
                }
            }
        }
        None
    }

    /// Warshall's algorithm on packed rows.
    pub(crate) fn transitive_close(&mut self) {
        for k in 0..self.n {
            let rk: Vec<u64> = self.row(k).to_vec();
            for i in 0..self.n {
                if self.get(i, k) {
                    let base = i * self.words;
                    for (w, bits) in rk.iter().enumerate() {
                        self.data[base + w] |= bits;
                    }
                }
            }
        }
    }

    pub(crate) fn reflexive_close(&mut self) {
        for i in 0..self.n {
            self.set(i, i);
        }
    }
}
