//! Lexicographic k-subset enumeration by index.

/// Iterates all k-element index subsets of 0..n in lexicographic order.
pub struct Combinations {
    n: usize,
    k: usize,
    next: Option<Vec<usize>>,
}

pub fn combinations(n: usize, k: usize) -> Combinations {
    let next = if k <= n { Some((0..k).collect()) } else { None };
    Combinations { n, k, next }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.next.clone()?;
        // Advance the odometer: bump the rightmost index that still has room.
        let mut idx = current.clone();
        let mut i = self.k;
        loop {
            if i == 0 {
                self.next = None;
                break;
            }
            i -= 1;
            if idx[i] < self.n - (self.k - i) {
                idx[i] += 1;
                for j in i + 1..self.k {
                    idx[j] = idx[j - 1] + 1;
                }
                self.next = Some(idx);
                break;
            }
        }
        Some(current)
    }
}

/// Materializes the items selected by an index subset.
pub fn pick<T: Clone>(items: &[T], idx: &[usize]) -> Vec<T> {
    idx.iter().map(|&i| items[i].clone()).collect()
}
