//! The discrete return lattice `{-q/100, ..., q/100}`.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Return lattice for a market with a `±q%` daily price limit.
///
/// Lattice points are addressed by their signed index `n ∈ -q..=q`; the
/// corresponding return fraction is `n/100`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GridSpec {
    q: usize,
}

impl GridSpec {
    pub fn new(q: usize) -> Result<Self> {
        if q == 0 {
            return Err(Error::InvalidArgument("price limit q must be at least 1".into()));
        }
        Ok(Self { q })
    }

    /// Builds a grid from a possibly negative integer, as read from user input.
    pub fn from_signed(q: i64) -> Result<Self> {
        if q < 1 {
            return Err(Error::InvalidArgument(format!(
                "price limit q must be at least 1, got {q}"
            )));
        }
        Self::new(q as usize)
    }

    pub fn q(&self) -> usize {
        self.q
    }

    /// Hilbert space dimension `d = 2q + 1`.
    pub fn dim(&self) -> usize {
        2 * self.q + 1
    }

    pub fn min_index(&self) -> i64 {
        -(self.q as i64)
    }

    pub fn max_index(&self) -> i64 {
        self.q as i64
    }

    /// Signed lattice indices in storage order.
    pub fn indices(&self) -> impl DoubleEndedIterator<Item = i64> + Clone {
        self.min_index()..=self.max_index()
    }

    pub fn contains(&self, n: i64) -> bool {
        n.unsigned_abs() as usize <= self.q
    }

    /// Storage offset of the signed index `n`.
    pub fn offset(&self, n: i64) -> Result<usize> {
        if self.contains(n) {
            Ok((n + self.q as i64) as usize)
        } else {
            Err(Error::InvalidArgument(format!(
                "lattice index {n} outside -{q}..={q}",
                q = self.q
            )))
        }
    }

    /// Signed index stored at `offset`.
    pub fn index_at(&self, offset: usize) -> i64 {
        debug_assert!(offset < self.dim());
        offset as i64 - self.q as i64
    }

    /// Return fraction `n/100` at lattice index `n`.
    pub fn value<T: Real>(&self, n: i64) -> T {
        T::from_index(n) / T::lit(100.0)
    }

    /// All lattice values in storage order.
    pub fn values<T: Real>(&self) -> Vec<T> {
        self.indices().map(|n| self.value(n)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q10_lattice() {
        let g = GridSpec::new(10).unwrap();
        assert_eq!(g.dim(), 21);
        let v: Vec<f64> = g.values();
        assert_eq!(v.len(), 21);
        assert!((v[0] + 0.10).abs() < 1e-15);
        assert!((v[1] + 0.09).abs() < 1e-15);
        assert_eq!(v[10], 0.0);
        assert!((v[20] - 0.10).abs() < 1e-15);
    }

    #[test]
    fn smallest_grid() {
        let g = GridSpec::new(1).unwrap();
        assert_eq!(g.dim(), 3);
        assert_eq!(g.values::<f64>(), vec![-0.01, 0.0, 0.01]);
    }

    #[test]
    fn q50_dimension() {
        assert_eq!(GridSpec::new(50).unwrap().dim(), 101);
    }

    #[test]
    fn rejects_non_positive_q() {
        assert!(matches!(GridSpec::new(0), Err(Error::InvalidArgument(_))));
        assert!(matches!(GridSpec::from_signed(-3), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn values_are_odd() {
        let g = GridSpec::new(25).unwrap();
        for n in g.indices() {
            assert_eq!(g.value::<f64>(-n), -g.value::<f64>(n));
        }
        assert_eq!(g.value::<f64>(0), 0.0);
    }

    #[test]
    fn offsets_round_trip() {
        let g = GridSpec::new(4).unwrap();
        for (i, n) in g.indices().enumerate() {
            assert_eq!(g.offset(n).unwrap(), i);
            assert_eq!(g.index_at(i), n);
        }
        assert!(g.offset(5).is_err());
        assert!(g.offset(-5).is_err());
    }
}
