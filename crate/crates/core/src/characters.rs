//! Irreducible characters of the symmetric group `S_h`.
//!
//! Two conventions live here. [`character_std`] is the textbook one, where the
//! one-row shape `(h)` labels the trivial character. The tableau algebra of this
//! crate attaches the trivial character to the column `(1^h)` and the sign
//! character to the row `(h)`; [`character_swapped`] is that convention and is
//! what every immanant uses.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use crate::combinatorics::{Partition, Permutation};
use crate::{Error, Result};

/// Cycle lengths of a permutation, as a partition of its degree.
pub type CycleType = Partition;

type Memo = RwLock<HashMap<(Partition, Partition), i64>>;

fn memo() -> &'static Memo {
    static MEMO: OnceLock<Memo> = OnceLock::new();
    MEMO.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Standard-convention character value `χ^λ(ρ)` by the Murnaghan–Nakayama rule.
pub fn character_std(shape: &Partition, cycle_type: &CycleType) -> Result<i64> {
    if shape.weight() != cycle_type.weight() {
        return Err(Error::WeightMismatch {
            left: shape.weight(),
            right: cycle_type.weight(),
        });
    }
    let key = (shape.clone(), cycle_type.clone());
    if let Some(&v) = memo().read().expect("character memo poisoned").get(&key) {
        return Ok(v);
    }
    let beta = beta_set(shape);
    let value = murnaghan_nakayama(&beta, cycle_type.parts());
    memo()
        .write()
        .expect("character memo poisoned")
        .insert(key, value);
    Ok(value)
}

/// First-column hook lengths `λ_i + (ℓ - i)`, strictly decreasing.
fn beta_set(shape: &Partition) -> Vec<usize> {
    let len = shape.len();
    shape
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &p)| p + len - 1 - i)
        .collect()
}

fn murnaghan_nakayama(beta: &[usize], cycles: &[usize]) -> i64 {
    let Some((&r, rest)) = cycles.split_first() else {
        return 1;
    };
    let mut total = 0;
    for (idx, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let target = b - r;
        // leg length = number of beads strictly between target and b
        let leg = beta.iter().filter(|&&x| x > target && x < b).count();
        let mut next: Vec<usize> = beta.to_vec();
        next[idx] = target;
        next.sort_unstable_by(|a, b| b.cmp(a));
        let sign = if leg % 2 == 0 { 1 } else { -1 };
        total += sign * murnaghan_nakayama(&next, rest);
    }
    total
}

/// Character value in the row/column-swapped convention:
/// `χ_std(λ̃, cycle_type(σ))`.
pub fn character_swapped(shape: &Partition, sigma: &Permutation) -> Result<i64> {
    if shape.weight() != sigma.degree() {
        return Err(Error::WeightMismatch {
            left: shape.weight(),
            right: sigma.degree(),
        });
    }
    character_std(&shape.conjugate(), &sigma.cycle_type())
}

/// `h! / H(λ)`.
pub fn dim_irrep(shape: &Partition) -> u64 {
    let h = shape.weight() as u64;
    (1..=h).product::<u64>() / shape.hook_number()
}

/// Character values of `shape` (swapped convention) for every permutation in
/// `perms`, computed once per cycle type.
pub fn character_table_row(shape: &Partition, perms: &[Permutation]) -> Result<Vec<i64>> {
    let mut by_class: HashMap<Partition, i64> = HashMap::new();
    perms
        .iter()
        .map(|p| {
            let ct = p.cycle_type();
            if let Some(&v) = by_class.get(&ct) {
                return Ok(v);
            }
            let v = character_swapped(shape, p)?;
            by_class.insert(ct, v);
            Ok(v)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(p: &[usize]) -> Partition {
        Partition::new(p.to_vec()).unwrap()
    }

    #[test]
    fn standard_convention_values() {
        for ct in Partition::all(4) {
            assert_eq!(character_std(&part(&[4]), &ct).unwrap(), 1);
        }
        assert_eq!(character_std(&part(&[1, 1, 1]), &part(&[2, 1])).unwrap(), -1);
        assert_eq!(character_std(&part(&[2, 1]), &part(&[1, 1, 1])).unwrap(), 2);
        assert_eq!(character_std(&part(&[2, 1]), &part(&[2, 1])).unwrap(), 0);
        assert_eq!(character_std(&part(&[2, 1]), &part(&[3])).unwrap(), -1);
        assert!(character_std(&part(&[2]), &part(&[1])).is_err());
    }

    #[test]
    fn swapped_convention() {
        let shape = part(&[2, 1]);
        for p in Permutation::all(3) {
            let expected = match p.cycle_type().parts() {
                [1, 1, 1] => 2,
                [2, 1] => 0,
                _ => -1,
            };
            assert_eq!(character_swapped(&shape, &p).unwrap(), expected);
        }
        for p in Permutation::all(4) {
            assert_eq!(character_swapped(&Partition::column(4), &p).unwrap(), 1);
            assert_eq!(character_swapped(&Partition::row(4), &p).unwrap(), p.sign());
        }
    }

    #[test]
    fn dimensions() {
        assert_eq!(dim_irrep(&part(&[2, 1])), 2);
        assert_eq!(dim_irrep(&part(&[1])), 1);
        assert_eq!(dim_irrep(&part(&[2, 2])), 2);
        assert_eq!(dim_irrep(&Partition::empty()), 1);
        for shape in Partition::all(4) {
            let id = Permutation::identity(4);
            assert_eq!(character_swapped(&shape, &id).unwrap() as u64, dim_irrep(&shape));
        }
    }
}
