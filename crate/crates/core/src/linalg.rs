//! Exact sparse linear algebra over the rationals.
//!
//! [`EchelonBasis`] keeps an incremental row-echelon form of inserted vectors,
//! each row tagged with its expression in terms of the inputs. Rows are keyed
//! by their largest coordinate key, which is also their pivot.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::Coeff;

/// A sparse vector: coordinate key to nonzero coefficient.
pub type SparseVec<K> = BTreeMap<K, Coeff>;

/// `acc += c · v`, pruning zeros.
pub fn axpy<K: Ord + Clone>(acc: &mut SparseVec<K>, c: &Coeff, v: &SparseVec<K>) {
    if c.is_zero() {
        return;
    }
    for (k, x) in v {
        let delta = c * x;
        match acc.get_mut(k) {
            Some(slot) => {
                *slot += delta;
                if slot.is_zero() {
                    acc.remove(k);
                }
            }
            None => {
                acc.insert(k.clone(), delta);
            }
        }
    }
}

struct PivotRow<K> {
    row: SparseVec<K>,
    // row = Σ combination[i] · input_i
    combination: SparseVec<usize>,
}

/// Incremental echelon form with input-combination tracking.
pub struct EchelonBasis<K: Ord + Clone> {
    pivots: BTreeMap<K, PivotRow<K>>,
    inserted: usize,
}

impl<K: Ord + Clone> Default for EchelonBasis<K> {
    fn default() -> Self {
        Self::new()
    }
}

impl<K: Ord + Clone> EchelonBasis<K> {
    pub fn new() -> Self {
        EchelonBasis {
            pivots: BTreeMap::new(),
            inserted: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Number of vectors offered so far, dependent ones included.
    pub fn inserted(&self) -> usize {
        self.inserted
    }

    /// Leading-term reduction. Returns the residual and the combination of
    /// inputs that was subtracted.
    fn reduce(&self, v: &SparseVec<K>) -> (SparseVec<K>, SparseVec<usize>) {
        let mut residual = v.clone();
        let mut subtracted: SparseVec<usize> = BTreeMap::new();
        while let Some((lead, c)) = residual.last_key_value() {
            let Some(pivot) = self.pivots.get(lead) else {
                break;
            };
            let c = c.clone();
            axpy(&mut residual, &-&c, &pivot.row);
            axpy(&mut subtracted, &c, &pivot.combination);
        }
        (residual, subtracted)
    }

    /// Inserts `v` as input number `inserted()`; returns whether it was
    /// independent of the earlier inputs.
    pub fn insert(&mut self, v: &SparseVec<K>) -> bool {
        let index = self.inserted;
        self.inserted += 1;
        let (residual, subtracted) = self.reduce(v);
        let Some((lead, lead_coeff)) = residual.last_key_value() else {
            return false;
        };
        let lead = lead.clone();
        let inv = Coeff::one() / lead_coeff;
        let mut combination: SparseVec<usize> = BTreeMap::new();
        combination.insert(index, Coeff::one());
        axpy(&mut combination, &-Coeff::one(), &subtracted);
        let row = residual.into_iter().map(|(k, x)| (k, x * &inv)).collect();
        let combination = combination.into_iter().map(|(k, x)| (k, x * &inv)).collect();
        self.pivots.insert(lead, PivotRow { row, combination });
        true
    }

    /// Coefficients `c_i` with `v = Σ c_i · input_i`, if `v` is in the span.
    pub fn coordinates(&self, v: &SparseVec<K>) -> Option<SparseVec<usize>> {
        let (residual, subtracted) = self.reduce(v);
        residual.is_empty().then_some(subtracted)
    }

    pub fn contains(&self, v: &SparseVec<K>) -> bool {
        self.reduce(v).0.is_empty()
    }
}

/// Rank of a family of sparse vectors.
pub fn rank<K: Ord + Clone>(vectors: &[SparseVec<K>]) -> usize {
    let mut basis = EchelonBasis::new();
    for v in vectors {
        basis.insert(v);
    }
    basis.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn vec_of(entries: &[(u32, i64)]) -> SparseVec<u32> {
        entries.iter().map(|&(k, c)| (k, int(c))).collect()
    }

    #[test]
    fn rank_and_dependence() {
        let a = vec_of(&[(0, 1), (1, 2)]);
        let b = vec_of(&[(1, 1), (2, 1)]);
        let mut c = a.clone();
        axpy(&mut c, &int(3), &b);
        let mut basis = EchelonBasis::new();
        assert!(basis.insert(&a));
        assert!(basis.insert(&b));
        assert!(!basis.insert(&c));
        assert_eq!(basis.rank(), 2);
        assert_eq!(basis.inserted(), 3);
        assert_eq!(rank(&[a, b, c]), 2);
    }

    #[test]
    fn coordinates_reconstruct() {
        let inputs = [
            vec_of(&[(0, 2), (3, 1)]),
            vec_of(&[(1, 1), (3, -1)]),
            vec_of(&[(0, 1), (1, 1), (2, 5)]),
        ];
        let mut basis = EchelonBasis::new();
        for v in &inputs {
            assert!(basis.insert(v));
        }
        let mut target = SparseVec::new();
        axpy(&mut target, &frac(1, 2), &inputs[0]);
        axpy(&mut target, &int(-4), &inputs[2]);
        let coords = basis.coordinates(&target).unwrap();
        assert_eq!(coords.get(&0), Some(&frac(1, 2)));
        assert_eq!(coords.get(&1), None);
        assert_eq!(coords.get(&2), Some(&int(-4)));
        assert!(basis.coordinates(&vec_of(&[(7, 1)])).is_none());
    }

    #[test]
    fn zero_vector_is_dependent() {
        let mut basis: EchelonBasis<u32> = EchelonBasis::new();
        assert!(!basis.insert(&SparseVec::new()));
        assert_eq!(basis.coordinates(&SparseVec::new()), Some(SparseVec::new()));
    }
}
