use crate::error::{Error, Result};

/// Largest basis the operators will build.
pub const MAX_BASIS_DIM: usize = 1 << 22;

/// Mixed-radix indexing of edge labellings: edge 0 is the least significant
/// digit, and each digit is a label index.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Basis {
    n_labels: usize,
    n_edges: usize,
    dim: usize,
}

impl Basis {
    pub fn new(n_labels: usize, n_edges: usize) -> Result<Self> {
        let dim = (0..n_edges).try_fold(1usize, |acc, _| acc.checked_mul(n_labels));
        match dim {
            Some(dim) if dim <= MAX_BASIS_DIM => Ok(Basis { n_labels, n_edges, dim }),
            _ => Err(Error::Precondition(format!(
                "basis of {n_labels}^{n_edges} states exceeds the limit of {MAX_BASIS_DIM}"
            ))),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn edge_count(&self) -> usize {
        self.n_edges
    }

    pub fn stride(&self, e: usize) -> usize {
        self.n_labels.pow(e as u32)
    }

    pub fn digit(&self, index: usize, e: usize) -> usize {
        (index / self.stride(e)) % self.n_labels
    }

    pub fn decode(&self, mut index: usize) -> Vec<usize> {
        let mut out = vec![0; self.n_edges];
        for x in out.iter_mut() {
            *x = index % self.n_labels;
            index /= self.n_labels;
        }
        out
    }

    pub fn encode(&self, labels: &[usize]) -> usize {
        labels.iter().rev().fold(0, |acc, &x| acc * self.n_labels + x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn encode_decode() {
        let b = Basis::new(3, 4).unwrap();
        assert_eq!(b.dim(), 81);
        assert_eq!(b.encode(&[1, 0, 0, 0]), 1);
        assert_eq!(b.encode(&[0, 1, 0, 0]), 3);
        for i in 0..b.dim() {
            assert_eq!(b.encode(&b.decode(i)), i);
            assert_eq!(b.digit(i, 2), b.decode(i)[2]);
        }
        assert!(Basis::new(16, 40).is_err());
    }
}
