//! Sparse tensors over labeled bases.
//!
//! A [`Space`] is either a quadratic space of signature `(p, q)` with
//! orthogonal basis `e_1..e_m` (`(e_a, e_a) = +1` for `a <= p`, `-1` above),
//! or `C^n` with its standard basis. Basis labels are 1-based. Tensor
//! positions in this API are 0-based.

mod harmonic;
mod linalg;

pub use harmonic::{harmonic_schur_image, schur_image, HarmonicProjector, TensorSubspace};
pub use linalg::Echelon;

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalars::Scalar;
use crate::tableaux::Permutation;

/// Maximum tensor degree of a packed multi-index.
pub const MAX_DEGREE: usize = 16;

/// Sequence of at most 16 labels in `1..=15`, packed four bits each.
/// Comparison is lexicographic on the label sequence for equal lengths.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct MultiIndex {
    len: u8,
    bits: u64,
}

impl MultiIndex {
    pub fn empty() -> Self {
        MultiIndex::default()
    }

    pub fn new(labels: &[u8]) -> Self {
        assert!(labels.len() <= MAX_DEGREE, "multi-index longer than {MAX_DEGREE}");
        let mut m = MultiIndex { len: labels.len() as u8, bits: 0 };
        for (i, &l) in labels.iter().enumerate() {
            m.set(i, l);
        }
        m
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> u8 {
        debug_assert!(i < self.len());
        ((self.bits >> (60 - 4 * i)) & 0xf) as u8
    }

    pub fn set(&mut self, i: usize, l: u8) {
        assert!(l <= 15, "label {l} does not fit in a packed multi-index");
        let sh = 60 - 4 * i;
        self.bits = (self.bits & !(0xf << sh)) | ((l as u64) << sh);
    }

    pub fn to_vec(&self) -> Vec<u8> {
        (0..self.len()).map(|i| self.get(i)).collect()
    }

    /// Concatenation.
    pub fn concat(&self, o: &MultiIndex) -> MultiIndex {
        assert!(self.len() + o.len() <= MAX_DEGREE);
        MultiIndex { len: self.len + o.len, bits: self.bits | (o.bits >> (4 * self.len())) }
    }

    /// Split at position `k`.
    pub fn split(&self, k: usize) -> (MultiIndex, MultiIndex) {
        let v = self.to_vec();
        (MultiIndex::new(&v[..k]), MultiIndex::new(&v[k..]))
    }

    /// Image under a position permutation: the label at `i` moves to `sigma(i)`.
    pub fn permute(&self, sigma: &Permutation) -> MultiIndex {
        let mut out = MultiIndex { len: self.len, bits: 0 };
        for i in 0..self.len() {
            out.set(sigma.apply(i), self.get(i));
        }
        out
    }

    /// Removes positions `i < j`.
    pub fn remove_pair(&self, i: usize, j: usize) -> MultiIndex {
        let v: Vec<u8> = self.to_vec().into_iter().enumerate().filter(|(k, _)| *k != i && *k != j).map(|(_, l)| l).collect();
        MultiIndex::new(&v)
    }

    /// Inserts label `a` at positions `i < j` of the result.
    pub fn insert_pair(&self, i: usize, j: usize, a: u8) -> MultiIndex {
        let mut v = self.to_vec();
        v.insert(i, a);
        v.insert(j, a);
        MultiIndex::new(&v)
    }

    /// Adds `d` to every label.
    pub fn shift(&self, d: i32) -> MultiIndex {
        let v: Vec<u8> = self.to_vec().iter().map(|&l| (l as i32 + d) as u8).collect();
        MultiIndex::new(&v)
    }

    /// All multi-indices of length `k` with labels in `1..=m`, lexicographic.
    pub fn all(m: usize, k: usize) -> Vec<MultiIndex> {
        let mut out = vec![MultiIndex::empty()];
        for _ in 0..k {
            let mut next = Vec::with_capacity(out.len() * m);
            for idx in &out {
                for a in 1..=m {
                    next.push(idx.concat(&MultiIndex::new(&[a as u8])));
                }
            }
            out = next;
        }
        out
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_vec())
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.to_vec().iter().map(|l| l.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

impl serde::Serialize for MultiIndex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// The vector space a tensor lives over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Space {
    /// Quadratic space with `p` positive and `q` negative basis vectors.
    Quad { p: usize, q: usize },
    /// `C^n` paired with its dual by the Kronecker pairing.
    Cn { n: usize },
}

impl Space {
    pub fn dim(&self) -> usize {
        match *self {
            Space::Quad { p, q } => p + q,
            Space::Cn { n } => n,
        }
    }

    /// `(e_a, e_a)` for a 1-based label.
    pub fn sign(&self, a: u8) -> i64 {
        match *self {
            Space::Quad { p, .. } if a as usize > p => -1,
            _ => 1,
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Space::Quad { p, q } => write!(f, "V({p},{q})"),
            Space::Cn { n } => write!(f, "C^{n}"),
        }
    }
}

/// Finitely supported tensor of fixed degree.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SparseTensor {
    space: Space,
    degree: usize,
    terms: BTreeMap<MultiIndex, Scalar>,
}

impl SparseTensor {
    pub fn zero(space: Space, degree: usize) -> Self {
        SparseTensor { space, degree, terms: BTreeMap::new() }
    }

    /// The basis tensor `e_{l_1} x ... x e_{l_k}`.
    pub fn basis(space: Space, labels: &[u8]) -> Self {
        Self::from_index(space, MultiIndex::new(labels))
    }

    pub fn from_index(space: Space, idx: MultiIndex) -> Self {
        let mut t = Self::zero(space, idx.len());
        t.terms.insert(idx, Scalar::one());
        t
    }

    /// The degree-0 tensor `c`.
    pub fn scalar(space: Space, c: Scalar) -> Self {
        let mut t = Self::zero(space, 0);
        t.add_term(MultiIndex::empty(), &c);
        t
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<MultiIndex, Scalar> {
        &self.terms
    }

    pub fn coeff(&self, idx: &MultiIndex) -> Scalar {
        self.terms.get(idx).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, idx: MultiIndex, c: &Scalar) {
        debug_assert_eq!(idx.len(), self.degree);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(idx) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, o: &SparseTensor) -> SparseTensor {
        let mut out = self.clone();
        out.add_assign(o);
        out
    }

    pub fn add_assign(&mut self, o: &SparseTensor) {
        for (i, c) in &o.terms {
            self.add_term(*i, c);
        }
    }

    pub fn sub(&self, o: &SparseTensor) -> SparseTensor {
        self.add(&o.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> SparseTensor {
        let mut out = Self::zero(self.space, self.degree);
        if !c.is_zero() {
            out.terms = self.terms.iter().map(|(i, v)| (*i, v * c)).collect();
        }
        out
    }

    /// Tensor product `self x o`.
    pub fn tensor(&self, o: &SparseTensor) -> SparseTensor {
        let mut out = Self::zero(self.space, self.degree + o.degree);
        for (i, a) in &self.terms {
            for (j, b) in &o.terms {
                out.add_term(i.concat(j), &(a * b));
            }
        }
        out
    }

    pub fn permute(&self, sigma: &Permutation) -> SparseTensor {
        let mut out = Self::zero(self.space, self.degree);
        for (i, c) in &self.terms {
            out.terms.insert(i.permute(sigma), c.clone());
        }
        out
    }

    fn check_positions(&self, k: usize, i: usize, j: usize) -> Result<()> {
        if i >= j || j >= k {
            return Err(Error::PositionOutOfRange(format!("({i},{j}) in degree {k}")));
        }
        Ok(())
    }

    /// `C_ij(t)`: pairs the factors at positions `i < j` with the form.
    pub fn contract(&self, i: usize, j: usize) -> Result<SparseTensor> {
        self.check_positions(self.degree, i, j)?;
        let mut out = Self::zero(self.space, self.degree - 2);
        for (idx, c) in &self.terms {
            let (a, b) = (idx.get(i), idx.get(j));
            if a == b {
                let v = if self.space.sign(a) < 0 { -c } else { c.clone() };
                out.add_term(idx.remove_pair(i, j), &v);
            }
        }
        Ok(out)
    }

    /// `E_ij(g*)(t)`: inserts `g* = sum_a (e_a, e_a) e_a x e_a` at positions
    /// `i < j` of the degree `k + 2` result.
    pub fn insert_metric(&self, i: usize, j: usize) -> Result<SparseTensor> {
        self.check_positions(self.degree + 2, i, j)?;
        let mut out = Self::zero(self.space, self.degree + 2);
        for (idx, c) in &self.terms {
            for a in 1..=self.space.dim() as u8 {
                let v = if self.space.sign(a) < 0 { -c } else { c.clone() };
                out.add_term(idx.insert_pair(i, j, a), &v);
            }
        }
        Ok(out)
    }

    /// All contractions `C_ij`, `i < j`, in lexicographic order of `(i, j)`.
    pub fn all_contractions(&self) -> Vec<SparseTensor> {
        let k = self.degree;
        let mut out = Vec::new();
        for i in 0..k {
            for j in i + 1..k {
                out.push(self.contract(i, j).expect("positions in range"));
            }
        }
        out
    }
}

/// The tensor extension of the form (quadratic spaces) or the Kronecker
/// pairing (`C^n` against its dual).
pub fn pair(s: &SparseTensor, t: &SparseTensor) -> Result<Scalar> {
    if s.degree != t.degree {
        return Err(Error::DegreeMismatch { expected: s.degree, found: t.degree });
    }
    if s.space != t.space {
        return Err(Error::SpaceMismatch(format!("{} vs {}", s.space, t.space)));
    }
    let (small, large) = if s.len() <= t.len() { (s, t) } else { (t, s) };
    let mut acc = Scalar::zero();
    for (idx, a) in &small.terms {
        if let Some(b) = large.terms.get(idx) {
            let sign: i64 = idx.to_vec().iter().map(|&l| s.space.sign(l)).product();
            let v = a * b;
            acc += if sign < 0 { -v } else { v };
        }
    }
    Ok(acc)
}

impl fmt::Display for SparseTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(i, c)| format!("({c})e{i}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}
