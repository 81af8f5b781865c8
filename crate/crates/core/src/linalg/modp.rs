//! Word-size modular elimination for primes below `2^31`.
//!
//! These routines back both the prime-field mode and the modular images
//! used to certify ranks over the rationals.

/// Incrementally maintained row-echelon basis modulo `p`.
///
/// Each stored row has a leading 1 at its pivot column. Rows are not
/// reduced against later pivots, so this is an echelon form, not an RREF.
#[derive(Debug, Clone)]
pub struct IncrementalEchelon {
    p: u64,
    cols: usize,
    rows: Vec<Vec<u64>>,
    pivot_row: Vec<Option<usize>>,
}

impl IncrementalEchelon {
    pub fn new(cols: usize, p: u64) -> Self {
        IncrementalEchelon {
            p,
            cols,
            rows: Vec::new(),
            pivot_row: vec![None; cols],
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.cols
    }

    /// Reduces `row` in place against the current basis and returns the
    /// column of its leading entry, if any remains.
    fn reduce(&self, row: &mut [u64]) -> Option<usize> {
        let p = self.p;
        let mut c = 0;
        while c < self.cols {
            if row[c] == 0 {
                c += 1;
                continue;
            }
            match self.pivot_row[c] {
                Some(r) => {
                    let f = p - row[c];
                    let piv = &self.rows[r];
                    for j in c..self.cols {
                        if piv[j] != 0 {
                            row[j] = (row[j] + f * piv[j]) % p;
                        }
                    }
                    c += 1;
                }
                None => return Some(c),
            }
        }
        None
    }

    /// Adds a row; returns true if the rank grew.
    pub fn insert(&mut self, mut row: Vec<u64>) -> bool {
        debug_assert_eq!(row.len(), self.cols);
        match self.reduce(&mut row) {
            Some(c) => {
                let inv = crate::field::inv_mod(row[c], self.p);
                for x in row.iter_mut().skip(c) {
                    *x = *x * inv % self.p;
                }
                self.pivot_row[c] = Some(self.rows.len());
                self.rows.push(row);
                true
            }
            None => false,
        }
    }

    pub fn contains(&self, row: &[u64]) -> bool {
        let mut r = row.to_vec();
        self.reduce(&mut r).is_none()
    }

    /// Back-substitutes into the canonical RREF.
    pub fn into_rref(self) -> (Vec<Vec<u64>>, Vec<usize>) {
        let p = self.p;
        let cols = self.cols;
        let mut order: Vec<(usize, usize)> = self
            .pivot_row
            .iter()
            .enumerate()
            .filter_map(|(c, r)| r.map(|r| (c, r)))
            .collect();
        order.sort_unstable();
        let mut rows = self.rows;
        // Clear entries above each pivot, working from the last pivot up.
        for idx in (0..order.len()).rev() {
            let (c, r) = order[idx];
            let piv = rows[r].clone();
            for &(_, other) in &order[..idx] {
                let row = &mut rows[other];
                if row[c] != 0 {
                    let f = p - row[c];
                    for j in c..cols {
                        if piv[j] != 0 {
                            row[j] = (row[j] + f * piv[j]) % p;
                        }
                    }
                }
            }
        }
        let pivots: Vec<usize> = order.iter().map(|&(c, _)| c).collect();
        let mut slots: Vec<Option<Vec<u64>>> = rows.into_iter().map(Some).collect();
        let out = order
            .iter()
            .map(|&(_, r)| slots[r].take().expect("each row used once"))
            .collect();
        (out, pivots)
    }
}

/// Canonical RREF modulo `p` with its pivot columns.
pub fn rref(rows: Vec<Vec<u64>>, cols: usize, p: u64) -> (Vec<Vec<u64>>, Vec<usize>) {
    let mut ech = IncrementalEchelon::new(cols, p);
    for r in rows {
        if ech.is_full() {
            break;
        }
        ech.insert(r);
    }
    ech.into_rref()
}

/// Rank modulo `p`, stopping early once the rank is maximal.
pub fn rank(rows: Vec<Vec<u64>>, cols: usize, p: u64) -> usize {
    let cap = cols.min(rows.len());
    let mut ech = IncrementalEchelon::new(cols, p);
    for r in rows {
        if ech.rank() == cap {
            break;
        }
        ech.insert(r);
    }
    ech.rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_small_example() {
        // [[2,4],[1,3]] mod 7 has full rank; RREF is the identity.
        let (r, piv) = rref(vec![vec![2, 4], vec![1, 3]], 2, 7);
        assert_eq!(piv, vec![0, 1]);
        assert_eq!(r, vec![vec![1, 0], vec![0, 1]]);
    }

    #[test]
    fn dependent_rows_do_not_raise_rank() {
        let rows = vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]];
        assert_eq!(rank(rows.clone(), 3, 101), 2);
        let (r, piv) = rref(rows, 3, 101);
        assert_eq!(piv, vec![0, 1]);
        assert_eq!(r[0], vec![1, 0, 1]);
        assert_eq!(r[1], vec![0, 1, 1]);
    }

    #[test]
    fn pivot_order_independent_of_insertion_order() {
        let a = vec![vec![0, 1, 5], vec![1, 0, 2], vec![1, 1, 0]];
        let mut b = a.clone();
        b.reverse();
        assert_eq!(rref(a, 3, 11), rref(b, 3, 11));
    }
}
