//! Sparse elements of tensor products and the flat-index convention.
//!
//! A basis tuple `(i_0, …, i_{k-1})` of `V_0 ⊗ … ⊗ V_{k-1}` has flat index
//! `Σ_j i_j · Π_{l>j} dim V_l` (leftmost factor most significant). Every
//! matrix in this crate that acts on or produces a tensor power uses this
//! ordering for its rows and columns.
//!
//! [`Tensor`] is how identities written in Sweedler notation get evaluated:
//! start from a basis tuple, push it through coproducts, coactions, products
//! and functionals one factor at a time, and compare the resulting sparse
//! expansions.

use std::collections::BTreeMap;
use std::fmt;

use super::matrix::Matrix;
use super::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("tensor index {index} at position {position} is out of range for dimension {dim}")]
pub struct IndexOutOfRange {
    pub position: usize,
    pub index: usize,
    pub dim: usize,
}

/// Flat index of a basis tuple of `H^{⊗k}` with `dim H = n`.
pub fn tensor_index(indices: &[usize], n: usize) -> Result<usize, IndexOutOfRange> {
    let mut flat = 0usize;
    for (position, &index) in indices.iter().enumerate() {
        if index >= n {
            return Err(IndexOutOfRange { position, index, dim: n });
        }
        flat = flat * n + index;
    }
    Ok(flat)
}

/// Inverse of [`tensor_index`] for a tuple of length `k`.
pub fn tensor_coords(mut flat: usize, n: usize, k: usize) -> Vec<usize> {
    let mut out = vec![0; k];
    for slot in out.iter_mut().rev() {
        *slot = flat % n;
        flat /= n;
    }
    out
}

pub(crate) fn mixed_index(indices: &[usize], dims: &[usize]) -> usize {
    indices.iter().zip(dims).fold(0, |acc, (&i, &d)| acc * d + i)
}

pub(crate) fn mixed_coords(mut flat: usize, dims: &[usize], out: &mut Vec<usize>) {
    let start = out.len();
    out.resize(start + dims.len(), 0);
    for (slot, &d) in out[start..].iter_mut().zip(dims).rev() {
        *slot = flat % d;
        flat /= d;
    }
}

/// All basis tuples of a tensor product with the given factor dimensions, in
/// lexicographic order.
pub fn basis_tuples(dims: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    let total: usize = dims.iter().product();
    (0..total).map(move |flat| {
        let mut v = Vec::with_capacity(dims.len());
        mixed_coords(flat, dims, &mut v);
        v
    })
}

/// A matrix viewed as a linear map between tensor products.
#[derive(Clone)]
pub struct TensorMap<'a> {
    pub matrix: &'a Matrix,
    pub source: Vec<usize>,
    pub target: Vec<usize>,
}

impl<'a> TensorMap<'a> {
    pub fn new(matrix: &'a Matrix, source: &[usize], target: &[usize]) -> Self {
        debug_assert_eq!(matrix.cols(), source.iter().product::<usize>());
        debug_assert_eq!(matrix.rows(), target.iter().product::<usize>());
        TensorMap { matrix, source: source.to_vec(), target: target.to_vec() }
    }
}

/// Sparse element of `V_0 ⊗ … ⊗ V_{k-1}`.
#[derive(Clone, Debug)]
pub struct Tensor {
    dims: Vec<usize>,
    terms: BTreeMap<Vec<usize>, Scalar>,
}

impl Tensor {
    pub fn zero(dims: &[usize]) -> Self {
        Tensor { dims: dims.to_vec(), terms: BTreeMap::new() }
    }

    /// The scalar `c` as an element of the empty tensor product.
    pub fn scalar(c: Scalar) -> Self {
        let mut t = Tensor::zero(&[]);
        if !c.is_zero() {
            t.terms.insert(Vec::new(), c);
        }
        t
    }

    pub fn basis(dims: &[usize], indices: &[usize]) -> Self {
        assert_eq!(dims.len(), indices.len());
        debug_assert!(indices.iter().zip(dims).all(|(i, d)| i < d));
        let mut t = Tensor::zero(dims);
        t.terms.insert(indices.to_vec(), Scalar::one());
        t
    }

    /// A vector of a single space given by its coordinates.
    pub fn from_vector(v: &[Scalar]) -> Self {
        Self::from_dense(&[v.len()], v)
    }

    /// An element given by its dense coordinate vector in flat-index order.
    pub fn from_dense(dims: &[usize], v: &[Scalar]) -> Self {
        assert_eq!(v.len(), dims.iter().product::<usize>());
        let mut t = Tensor::zero(dims);
        for (flat, c) in v.iter().enumerate() {
            if !c.is_zero() {
                let mut idx = Vec::with_capacity(dims.len());
                mixed_coords(flat, dims, &mut idx);
                t.terms.insert(idx, c.clone());
            }
        }
        t
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[usize], &Scalar)> {
        self.terms.iter().map(|(k, v)| (k.as_slice(), v))
    }

    pub fn to_dense(&self) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dims.iter().product()];
        for (idx, c) in &self.terms {
            out[mixed_index(idx, &self.dims)] = c.clone();
        }
        out
    }

    /// Value of a tensor with no factors.
    pub fn as_scalar(&self) -> Scalar {
        assert!(self.dims.is_empty(), "tensor still has {} factors", self.dims.len());
        self.terms.get(&Vec::new()).cloned().unwrap_or_else(Scalar::zero)
    }

    fn accumulate(terms: &mut BTreeMap<Vec<usize>, Scalar>, idx: Vec<usize>, c: Scalar) {
        match terms.entry(idx) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
            }
        }
    }

    fn pruned(dims: Vec<usize>, mut terms: BTreeMap<Vec<usize>, Scalar>) -> Self {
        terms.retain(|_, c| !c.is_zero());
        Tensor { dims, terms }
    }

    /// Applies `map` to the factors `at .. at + map.source.len()`, replacing
    /// them by `map.target`. A map with empty source inserts factors; one with
    /// empty target (a functional) removes them.
    pub fn apply(&self, at: usize, map: &TensorMap<'_>) -> Tensor {
        let k = map.source.len();
        assert!(at + k <= self.dims.len(), "map applied past the last factor");
        assert_eq!(&self.dims[at..at + k], map.source.as_slice(), "factor dimensions do not match the map's source");
        let mut dims = self.dims[..at].to_vec();
        dims.extend_from_slice(&map.target);
        dims.extend_from_slice(&self.dims[at + k..]);
        let mut terms = BTreeMap::new();
        for (idx, c) in &self.terms {
            let col = mixed_index(&idx[at..at + k], &map.source);
            for (row, v) in map.matrix.column_nonzeros(col) {
                let mut out = Vec::with_capacity(dims.len());
                out.extend_from_slice(&idx[..at]);
                mixed_coords(row, &map.target, &mut out);
                out.extend_from_slice(&idx[at + k..]);
                Self::accumulate(&mut terms, out, c * v);
            }
        }
        Self::pruned(dims, terms)
    }

    /// Reorders factors: factor `i` of the result is factor `order[i]` of `self`.
    pub fn permute(&self, order: &[usize]) -> Tensor {
        assert_eq!(order.len(), self.dims.len());
        let dims = order.iter().map(|&o| self.dims[o]).collect();
        let terms = self
            .terms
            .iter()
            .map(|(idx, c)| (order.iter().map(|&o| idx[o]).collect(), c.clone()))
            .collect();
        Tensor { dims, terms }
    }

    /// Applies a linear map that depends on the position of the term, by
    /// replacing factor `at` with the image of each basis vector under `f`.
    pub fn map_factor(&self, at: usize, target_dim: usize, f: impl Fn(usize) -> Vec<Scalar>) -> Tensor {
        let mut dims = self.dims.clone();
        dims[at] = target_dim;
        let mut terms = BTreeMap::new();
        for (idx, c) in &self.terms {
            for (j, v) in f(idx[at]).iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                let mut out = idx.clone();
                out[at] = j;
                Self::accumulate(&mut terms, out, c * v);
            }
        }
        Self::pruned(dims, terms)
    }

    pub fn tensor(&self, rhs: &Tensor) -> Tensor {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&rhs.dims);
        let mut terms = BTreeMap::new();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                let mut idx = a.clone();
                idx.extend_from_slice(b);
                terms.insert(idx, x * y);
            }
        }
        Self::pruned(dims, terms)
    }

    pub fn scale(&self, c: &Scalar) -> Tensor {
        let terms = self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect();
        Self::pruned(self.dims.clone(), terms)
    }

    pub fn add(&self, rhs: &Tensor) -> Tensor {
        assert_eq!(self.dims, rhs.dims, "adding tensors of different shapes");
        let mut terms = self.terms.clone();
        for (k, v) in &rhs.terms {
            Self::accumulate(&mut terms, k.clone(), v.clone());
        }
        Self::pruned(self.dims.clone(), terms)
    }

    pub fn sub(&self, rhs: &Tensor) -> Tensor {
        self.add(&rhs.scale(&Scalar::from_int(-1)))
    }
}

impl PartialEq for Tensor {
    fn eq(&self, other: &Self) -> bool {
        self.dims == other.dims && self.terms == other.terms
    }
}

impl Eq for Tensor {}

impl fmt::Display for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        if self.dims.is_empty() {
            return write!(f, "{}", self.as_scalar());
        }
        let mut first = true;
        for (idx, c) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let label: Vec<String> = idx.iter().map(ToString::to_string).collect();
            if c.is_one() {
                write!(f, "e[{}]", label.join(","))?;
            } else {
                write!(f, "({c})e[{}]", label.join(","))?;
            }
        }
        Ok(())
    }
}
