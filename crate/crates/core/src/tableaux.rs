//! Young diagrams, standard fillings and Young symmetrizers.
//!
//! Permutations act on tensor positions: `sigma(v_1 x ... x v_k)` places the
//! factor from position `i` at position `sigma(i)`. Products in the group
//! algebra compose as functions, `(sigma tau)(i) = sigma(tau(i))`, so the
//! action is a left action.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::multitensor::SparseTensor;
use crate::scalars::Scalar;

/// Weakly decreasing sequence of positive parts.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidFilling(format!("{parts:?} is not a partition")));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// The `n x l` rectangle `(l, ..., l)` with `n` rows.
    pub fn rectangle(n: usize, l: usize) -> Self {
        if l == 0 {
            return Self::empty();
        }
        Partition { parts: vec![l; n] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn rows(&self) -> usize {
        self.parts.len()
    }

    /// Column lengths (the conjugate partition).
    pub fn conjugate(&self) -> Partition {
        let w = self.parts.first().copied().unwrap_or(0);
        Partition { parts: (0..w).map(|c| self.parts.iter().filter(|&&r| r > c).count()).collect() }
    }

    pub fn hook(&self, row: usize, col: usize) -> usize {
        let conj = self.conjugate();
        (self.parts[row] - col - 1) + (conj.parts[col] - row - 1) + 1
    }

    /// Product of hook lengths.
    pub fn hook_product(&self) -> BigInt {
        let mut h = BigInt::one();
        for (r, &len) in self.parts.iter().enumerate() {
            for c in 0..len {
                h *= self.hook(r, c);
            }
        }
        h
    }

    /// Number of standard fillings, `k! / h`.
    pub fn num_standard(&self) -> BigInt {
        factorial(self.size()) / self.hook_product()
    }

    /// Dimension of the Schur module `S_lambda(C^n)` by the hook-content formula.
    pub fn gl_dimension(&self, n: usize) -> BigInt {
        let mut num = BigInt::one();
        for (r, &len) in self.parts.iter().enumerate() {
            for c in 0..len {
                let v = n as i64 + c as i64 - r as i64;
                if v <= 0 {
                    return BigInt::from(0);
                }
                num *= v;
            }
        }
        num / self.hook_product()
    }

    /// All partitions of `k`, in reverse lexicographic order.
    pub fn all_of(k: usize) -> Vec<Partition> {
        fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rem == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for p in (1..=rem.min(max)).rev() {
                cur.push(p);
                rec(rem - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(k, k, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, b| a * b)
}

/// A standard filling of a Young diagram by `1..=k`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Filling {
    shape: Partition,
    rows: Vec<Vec<usize>>,
}

impl Filling {
    /// Validates shape, standardness and bijectivity.
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        let shape = Partition::new(rows.iter().map(Vec::len).collect())?;
        if shape.rows() != rows.iter().filter(|r| !r.is_empty()).count() {
            return Err(Error::InvalidFilling("empty row".into()));
        }
        let rows: Vec<Vec<usize>> = rows.into_iter().filter(|r| !r.is_empty()).collect();
        let k = shape.size();
        let mut seen = vec![false; k + 1];
        for &e in rows.iter().flatten() {
            if e == 0 || e > k || seen[e] {
                return Err(Error::InvalidFilling(format!("entries of {rows:?} are not a bijection onto 1..{k}")));
            }
            seen[e] = true;
        }
        for (r, row) in rows.iter().enumerate() {
            for c in 0..row.len() {
                if c + 1 < row.len() && row[c] >= row[c + 1] {
                    return Err(Error::InvalidFilling(format!("row {} of {rows:?} not increasing", r + 1)));
                }
                if r + 1 < rows.len() && c < rows[r + 1].len() && row[c] >= rows[r + 1][c] {
                    return Err(Error::InvalidFilling(format!("column {} of {rows:?} not increasing", c + 1)));
                }
            }
        }
        Ok(Filling { shape, rows })
    }

    /// The canonical filling: rows filled in order from the top.
    pub fn canonical(shape: &Partition) -> Self {
        let mut next = 1;
        let rows = shape
            .parts()
            .iter()
            .map(|&len| {
                let r: Vec<usize> = (next..next + len).collect();
                next += len;
                r
            })
            .collect();
        Filling { shape: shape.clone(), rows }
    }

    /// The canonical filling `B_{n,l}` of the rectangle with `n` rows of length `l`.
    pub fn rectangle(n: usize, l: usize) -> Self {
        Self::canonical(&Partition::rectangle(n, l))
    }

    pub fn empty() -> Self {
        Self::canonical(&Partition::empty())
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn size(&self) -> usize {
        self.shape.size()
    }

    pub fn columns(&self) -> Vec<Vec<usize>> {
        let w = self.rows.first().map_or(0, Vec::len);
        (0..w).map(|c| self.rows.iter().filter_map(|r| r.get(c).copied()).collect()).collect()
    }

    /// Row index (0-based) of each entry, indexed by `entry - 1`.
    pub fn row_of_entries(&self) -> Vec<usize> {
        let mut out = vec![0; self.size()];
        for (r, row) in self.rows.iter().enumerate() {
            for &e in row {
                out[e - 1] = r;
            }
        }
        out
    }

    pub fn hook_product(&self) -> BigInt {
        self.shape.hook_product()
    }

    /// `|R(A)|`, the product of the factorials of the row lengths.
    pub fn row_group_order(&self) -> BigInt {
        self.shape.parts().iter().map(|&l| factorial(l)).product()
    }

    /// All standard fillings of a shape.
    pub fn all_standard(shape: &Partition) -> Vec<Filling> {
        let k = shape.size();
        let mut out = Vec::new();
        let mut rows: Vec<Vec<usize>> = vec![Vec::new(); shape.rows()];
        fn rec(e: usize, k: usize, shape: &[usize], rows: &mut Vec<Vec<usize>>, out: &mut Vec<Filling>) {
            if e > k {
                out.push(Filling { shape: Partition { parts: shape.to_vec() }, rows: rows.clone() });
                return;
            }
            for r in 0..shape.len() {
                let len = rows[r].len();
                if len < shape[r] && (r == 0 || rows[r - 1].len() > len) {
                    rows[r].push(e);
                    rec(e + 1, k, shape, rows, out);
                    rows[r].pop();
                }
            }
        }
        rec(1, k, shape.parts(), &mut rows, &mut out);
        out
    }

    /// All standard fillings with at most `max` boxes, the empty one included.
    pub fn all_standard_up_to(max: usize) -> Vec<Filling> {
        (0..=max)
            .flat_map(Partition::all_of)
            .flat_map(|s| Filling::all_standard(&s))
            .collect()
    }

    /// `B|A`: `B`'s rows followed by `A`'s rows shifted by `|B|`.
    /// `B` must be a rectangle with at least as many rows as `A`.
    pub fn abut(b: &Filling, a: &Filling) -> Result<Filling> {
        let bp = b.shape.parts();
        if bp.windows(2).any(|w| w[0] != w[1]) {
            return Err(Error::ShapeMismatch(format!("{b} is not rectangular")));
        }
        if a.shape.rows() > b.shape.rows() {
            return Err(Error::ShapeMismatch(format!("{a} has more rows than {b}")));
        }
        let shift = b.size();
        let rows = b
            .rows
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let mut r = row.clone();
                if let Some(ar) = a.rows.get(i) {
                    r.extend(ar.iter().map(|e| e + shift));
                }
                r
            })
            .collect();
        Filling::new(rows)
    }

    /// `c(A, B) = h(B|A) |R(B)| |R(A)| / (h(B) h(A) |R(B|A)|)`.
    pub fn abut_constant(a: &Filling, b: &Filling) -> Result<Scalar> {
        let ba = Filling::abut(b, a)?;
        let num = ba.hook_product() * b.row_group_order() * a.row_group_order();
        let den = b.hook_product() * a.hook_product() * ba.row_group_order();
        Ok(Scalar::from_ratio(BigRational::new(num, den)))
    }

    /// `r(A)`, the sum over the row group.
    pub fn row_sum(&self) -> GroupAlgebraElement {
        GroupAlgebraElement::subgroup_sum(self.size(), &self.rows, false)
    }

    /// `c(A)`, the signed sum over the column group.
    pub fn column_sum(&self) -> GroupAlgebraElement {
        GroupAlgebraElement::subgroup_sum(self.size(), &self.columns(), true)
    }

    /// `s(A) = c(A) r(A) / h(A)`, or `s(A)* = r(A) c(A) / h(A)` when `dual`.
    pub fn symmetrizer(&self, dual: bool) -> GroupAlgebraElement {
        let (r, c) = (self.row_sum(), self.column_sum());
        let prod = if dual { r.mul(&c) } else { c.mul(&r) };
        let inv_h = Scalar::from_ratio(BigRational::new(BigInt::one(), self.hook_product()));
        prod.scale(&inv_h)
    }

    /// `e_A`: the basis tensor with `row(i) + 1` at position `i`.
    pub fn epsilon(&self, n: usize) -> SparseTensor {
        let idx: Vec<u8> = self.row_of_entries().iter().map(|&r| (r + 1) as u8).collect();
        SparseTensor::basis(crate::multitensor::Space::Cn { n }, &idx)
    }
}

impl fmt::Display for Filling {
    /// Row-major bracket form, e.g. `[[1,2],[3]]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| format!("[{}]", r.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

/// Bijection of `0..k`, stored as its image list.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || seen[i] {
                return Err(Error::InvalidParameters(format!("{images:?} is not a permutation")));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(k: usize) -> Self {
        Permutation { images: (0..k).collect() }
    }

    /// Transposition of positions `a` and `b` (0-based).
    pub fn transposition(k: usize, a: usize, b: usize) -> Self {
        let mut images: Vec<usize> = (0..k).collect();
        images.swap(a, b);
        Permutation { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    /// `self . other`, i.e. `i -> self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation { images: other.images.iter().map(|&i| self.images[i]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { images: inv }
    }

    pub fn sign(&self) -> i64 {
        let mut seen = vec![false; self.images.len()];
        let mut s = 1;
        for i in 0..self.images.len() {
            if seen[i] {
                continue;
            }
            let mut j = i;
            let mut len = 0;
            while !seen[j] {
                seen[j] = true;
                j = self.images[j];
                len += 1;
            }
            if len % 2 == 0 {
                s = -s;
            }
        }
        s
    }

    /// All permutations of `0..k` (Heap-free lexicographic enumeration).
    pub fn all(k: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(k);
        let mut used = vec![false; k];
        fn rec(k: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Permutation>) {
            if cur.len() == k {
                out.push(Permutation { images: cur.clone() });
                return;
            }
            for i in 0..k {
                if !used[i] {
                    used[i] = true;
                    cur.push(i);
                    rec(k, cur, used, out);
                    cur.pop();
                    used[i] = false;
                }
            }
        }
        rec(k, &mut cur, &mut used, &mut out);
        out
    }
}

/// Finitely supported element of the group algebra of `S_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAlgebraElement {
    degree: usize,
    terms: BTreeMap<Permutation, Scalar>,
}

impl GroupAlgebraElement {
    pub fn zero(degree: usize) -> Self {
        GroupAlgebraElement { degree, terms: BTreeMap::new() }
    }

    pub fn from_perm(p: Permutation) -> Self {
        let degree = p.degree();
        GroupAlgebraElement { degree, terms: BTreeMap::from([(p, Scalar::one())]) }
    }

    pub fn identity(k: usize) -> Self {
        Self::from_perm(Permutation::identity(k))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Permutation, Scalar> {
        &self.terms
    }

    pub fn add_term(&mut self, p: Permutation, c: &Scalar) {
        let e = self.terms.entry(p).or_insert_with(Scalar::zero);
        *e += c;
        if e.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    /// Sum over the product of symmetric groups on the given blocks of entries
    /// (1-based), signed when `signed`.
    fn subgroup_sum(k: usize, blocks: &[Vec<usize>], signed: bool) -> Self {
        let mut perms = vec![Permutation::identity(k)];
        for block in blocks {
            let local = Permutation::all(block.len());
            let mut next = Vec::with_capacity(perms.len() * local.len());
            for p in &perms {
                for l in &local {
                    let mut images = p.images.clone();
                    for (a, &b) in l.images.iter().enumerate() {
                        images[block[a] - 1] = block[b] - 1;
                    }
                    next.push(Permutation { images });
                }
            }
            perms = next;
        }
        let terms = perms
            .into_iter()
            .map(|p| {
                let s = if signed { p.sign() } else { 1 };
                (p, Scalar::from_int(s))
            })
            .collect();
        GroupAlgebraElement { degree: k, terms }
    }

    pub fn mul(&self, o: &GroupAlgebraElement) -> GroupAlgebraElement {
        let mut out = GroupAlgebraElement::zero(self.degree);
        let mut acc: BTreeMap<Permutation, Scalar> = BTreeMap::new();
        for (p, a) in &self.terms {
            for (q, b) in &o.terms {
                let e = acc.entry(p.compose(q)).or_insert_with(Scalar::zero);
                *e += a * b;
            }
        }
        acc.retain(|_, v| !v.is_zero());
        out.terms = acc;
        out
    }

    pub fn add(&self, o: &GroupAlgebraElement) -> GroupAlgebraElement {
        let mut out = self.clone();
        for (p, c) in &o.terms {
            out.add_term(p.clone(), c);
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> GroupAlgebraElement {
        let mut out = GroupAlgebraElement::zero(self.degree);
        if !c.is_zero() {
            out.terms = self.terms.iter().map(|(p, v)| (p.clone(), v * c)).collect();
        }
        out
    }

    /// Linear extension of the position action to a tensor of degree `k`.
    pub fn apply(&self, t: &SparseTensor) -> Result<SparseTensor> {
        if t.degree() != self.degree {
            return Err(Error::DegreeMismatch { expected: self.degree, found: t.degree() });
        }
        let mut out = SparseTensor::zero(t.space(), t.degree());
        for (p, c) in &self.terms {
            for (idx, v) in t.terms() {
                out.add_term(idx.permute(p), &(c * v));
            }
        }
        Ok(out)
    }
}
