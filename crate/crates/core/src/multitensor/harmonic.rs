//! Tensor subspaces, Schur images and the harmonic projection.
//!
//! `H` is the projection of `T^k(V)` onto the joint kernel of all
//! contractions along the span `E^k` of all metric insertions.

use std::collections::BTreeMap;

use super::linalg::Echelon;
use super::{MultiIndex, SparseTensor, Space};
use crate::error::{Error, Result};
use crate::scalars::Scalar;
use crate::tableaux::Filling;

/// Subspace of `T^k` held as a reduced echelon basis.
#[derive(Clone, Debug)]
pub struct TensorSubspace {
    space: Space,
    degree: usize,
    basis: Echelon<MultiIndex>,
}

impl TensorSubspace {
    pub fn new(space: Space, degree: usize) -> Self {
        TensorSubspace { space, degree, basis: Echelon::new() }
    }

    pub fn spanned_by<'a>(space: Space, degree: usize, vectors: impl IntoIterator<Item = &'a SparseTensor>) -> Self {
        let mut s = Self::new(space, degree);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn insert(&mut self, v: &SparseTensor) -> bool {
        debug_assert_eq!(v.degree(), self.degree);
        self.basis.insert(v.terms())
    }

    pub fn dim(&self) -> usize {
        self.basis.rank()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn contains(&self, v: &SparseTensor) -> bool {
        self.basis.contains(v.terms())
    }

    pub fn basis(&self) -> Vec<SparseTensor> {
        self.basis
            .rows()
            .map(|r| {
                let mut t = SparseTensor::zero(self.space, self.degree);
                for (i, c) in r {
                    t.add_term(*i, c);
                }
                t
            })
            .collect()
    }

    /// Equality of subspaces.
    pub fn same_as(&self, o: &TensorSubspace) -> bool {
        self.dim() == o.dim() && o.basis().iter().all(|v| self.contains(v))
    }
}

/// `s(A) T^k` for `T^k` over `space`.
pub fn schur_image(filling: &Filling, space: Space) -> TensorSubspace {
    let k = filling.size();
    let s = filling.symmetrizer(false);
    let mut out = TensorSubspace::new(space, k);
    // s(A) commutes with GL, so images of one basis tensor per weight orbit
    // would suffice; at the sizes in scope the full sweep is cheap.
    for idx in MultiIndex::all(space.dim(), k) {
        let img = s.apply(&SparseTensor::from_index(space, idx)).expect("degree matches");
        if !img.is_zero() {
            out.insert(&img);
        }
    }
    out
}

/// `H(s(A) T^k(V))`; empty exactly when the first two columns of the
/// shape exceed `dim V`.
pub fn harmonic_schur_image(filling: &Filling, space: Space) -> Result<TensorSubspace> {
    let proj = HarmonicProjector::new(space, filling.size())?;
    let img = schur_image(filling, space);
    let mut out = TensorSubspace::new(space, filling.size());
    for b in img.basis() {
        let h = proj.project(&b)?;
        if !h.is_zero() {
            out.insert(&h);
        }
    }
    Ok(out)
}

/// Precomputed data for `H` on `T^k(V)`.
#[derive(Clone, Debug)]
pub struct HarmonicProjector {
    space: Space,
    degree: usize,
    insertion_basis: Vec<SparseTensor>,
    contraction_solver: Echelon<(usize, MultiIndex)>,
}

fn stacked_contractions(t: &SparseTensor) -> BTreeMap<(usize, MultiIndex), Scalar> {
    let mut out = BTreeMap::new();
    for (slot, c) in t.all_contractions().into_iter().enumerate() {
        for (i, v) in c.terms() {
            out.insert((slot, *i), v.clone());
        }
    }
    out
}

impl HarmonicProjector {
    pub fn new(space: Space, degree: usize) -> Result<Self> {
        if !matches!(space, Space::Quad { .. }) {
            return Err(Error::SpaceMismatch(format!("harmonic projection needs a quadratic space, got {space}")));
        }
        let mut span = Echelon::new();
        if degree >= 2 {
            for idx in MultiIndex::all(space.dim(), degree - 2) {
                let base = SparseTensor::from_index(space, idx);
                for i in 0..degree {
                    for j in i + 1..degree {
                        span.insert(base.insert_metric(i, j)?.terms());
                    }
                }
            }
        }
        let insertion_basis: Vec<SparseTensor> = span
            .rows()
            .map(|r| {
                let mut t = SparseTensor::zero(space, degree);
                for (i, c) in r {
                    t.add_term(*i, c);
                }
                t
            })
            .collect();
        let mut contraction_solver = Echelon::new();
        for b in &insertion_basis {
            if !contraction_solver.insert(&stacked_contractions(b)) {
                return Err(Error::DegenerateDecomposition(format!(
                    "insertion span meets the harmonic tensors in degree {degree} over {space}"
                )));
            }
        }
        Ok(HarmonicProjector { space, degree, insertion_basis, contraction_solver })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Dimension of the insertion span.
    pub fn insertion_dim(&self) -> usize {
        self.insertion_basis.len()
    }

    /// `H(t)`: subtracts the unique `e` in the insertion span with the same
    /// contractions as `t`.
    pub fn project(&self, t: &SparseTensor) -> Result<SparseTensor> {
        if t.degree() != self.degree {
            return Err(Error::DegreeMismatch { expected: self.degree, found: t.degree() });
        }
        if t.space() != self.space {
            return Err(Error::SpaceMismatch(format!("{} vs {}", t.space(), self.space)));
        }
        if self.degree < 2 {
            return Ok(t.clone());
        }
        let target = stacked_contractions(t);
        let sol = self.contraction_solver.solve(&target).ok_or_else(|| {
            Error::DegenerateDecomposition("contractions not attained by the insertion span".into())
        })?;
        let mut e = SparseTensor::zero(self.space, self.degree);
        for (id, c) in sol {
            e.add_assign(&self.insertion_basis[id].scale(&c));
        }
        Ok(t.sub(&e))
    }
}
