//! Sparse reduced row echelon form over `pi`-free scalars.

use std::collections::BTreeMap;

use crate::scalars::Scalar;

type Vector<K> = BTreeMap<K, Scalar>;

/// Reduced echelon basis of a span. Each row is normalized to pivot
/// coefficient 1 and has zeros at every other pivot. Rows optionally carry
/// the combination of inserted vectors that produced them.
#[derive(Clone, Debug)]
pub struct Echelon<K: Ord + Clone> {
    rows: Vec<(Vector<K>, BTreeMap<usize, Scalar>)>,
    pivots: BTreeMap<K, usize>,
    inserted: usize,
}

impl<K: Ord + Clone> Default for Echelon<K> {
    fn default() -> Self {
        Echelon { rows: Vec::new(), pivots: BTreeMap::new(), inserted: 0 }
    }
}

fn axpy<K: Ord + Clone>(y: &mut Vector<K>, a: &Scalar, x: &Vector<K>) {
    for (k, v) in x {
        let d = a * v;
        match y.get_mut(k) {
            Some(e) => {
                *e -= &d;
                if e.is_zero() {
                    y.remove(k);
                }
            }
            None => {
                y.insert(k.clone(), -d);
            }
        }
    }
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> impl Iterator<Item = &Vector<K>> {
        self.rows.iter().map(|(v, _)| v)
    }

    /// Coefficients of `v` at the pivots and the remainder after reduction.
    pub fn reduce(&self, v: &Vector<K>) -> (Vec<(usize, Scalar)>, Vector<K>) {
        let mut coeffs = Vec::new();
        let mut rem = v.clone();
        for (k, c) in v {
            if let Some(&r) = self.pivots.get(k) {
                coeffs.push((r, c.clone()));
            }
        }
        for (r, c) in &coeffs {
            axpy(&mut rem, c, &self.rows[*r].0);
        }
        (coeffs, rem)
    }

    pub fn contains(&self, v: &Vector<K>) -> bool {
        self.reduce(v).1.is_empty()
    }

    /// Inserts `v`; returns whether the rank grew. The inserted vector is
    /// numbered by insertion order for [`Echelon::solve`].
    pub fn insert(&mut self, v: &Vector<K>) -> bool {
        let id = self.inserted;
        self.inserted += 1;
        let (coeffs, mut rem) = self.reduce(v);
        if rem.is_empty() {
            return false;
        }
        let mut combo: BTreeMap<usize, Scalar> = BTreeMap::from([(id, Scalar::one())]);
        for (r, c) in &coeffs {
            axpy(&mut combo, c, &self.rows[*r].1);
        }
        let (pk, pc) = rem.iter().next().map(|(k, c)| (k.clone(), c.clone())).expect("nonzero");
        let inv = pc.inv().expect("pivot of a pi-free vector is invertible");
        for x in rem.values_mut() {
            *x = &*x * &inv;
        }
        for x in combo.values_mut() {
            *x = &*x * &inv;
        }
        for (row, rc) in self.rows.iter_mut() {
            if let Some(c) = row.get(&pk).cloned() {
                axpy(row, &c, &rem);
                axpy(rc, &c, &combo);
            }
        }
        self.pivots.insert(pk, self.rows.len());
        self.rows.push((rem, combo));
        true
    }

    /// Expresses `v` as a combination of the inserted vectors, keyed by
    /// insertion number, or `None` when `v` is outside the span.
    pub fn solve(&self, v: &Vector<K>) -> Option<BTreeMap<usize, Scalar>> {
        let (coeffs, rem) = self.reduce(v);
        if !rem.is_empty() {
            return None;
        }
        let mut out = BTreeMap::new();
        for (r, c) in &coeffs {
            axpy(&mut out, &-c, &self.rows[*r].1);
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(entries: &[(u32, i64)]) -> Vector<u32> {
        entries.iter().map(|&(k, c)| (k, Scalar::from_int(c))).filter(|(_, c)| !c.is_zero()).collect()
    }

    #[test]
    fn rank_and_solve() {
        let mut e = Echelon::new();
        assert!(e.insert(&v(&[(0, 1), (1, 2)])));
        assert!(e.insert(&v(&[(1, 1), (2, 1)])));
        assert!(!e.insert(&v(&[(0, 1), (1, 3), (2, 1)])));
        assert_eq!(e.rank(), 2);
        let target = v(&[(0, 2), (1, 1), (2, -3)]);
        let sol = e.solve(&target).unwrap();
        // 2*(1,2,0) - 3*(0,1,1) = (2,1,-3)
        assert_eq!(sol.get(&0), Some(&Scalar::from_int(2)));
        assert_eq!(sol.get(&1), Some(&Scalar::from_int(-3)));
        assert!(e.solve(&v(&[(3, 1)])).is_none());
    }
}
