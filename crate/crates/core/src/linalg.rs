//! Exact sparse linear algebra over `Q(q)` on finite coordinate frames.
//!
//! Subspaces are kept in reduced row-echelon form, which is canonical: two
//! subspaces of the same frame are equal iff their stored rows coincide.

use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;

use thiserror::Error;

use crate::scalar::{RatFunc, Rational, ScalarError};
use crate::tensor::{Key, TensorElement};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum LinalgError {
    #[error("vector has a coordinate outside the frame")]
    VectorOutsideFrame,
    #[error("subspaces live in different frames ({0} vs {1} coordinates)")]
    FrameMismatch(usize, usize),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Sparse row: `(column, nonzero value)` pairs with increasing columns.
pub type Row = Vec<(usize, RatFunc)>;

/// Ordered coordinate keys of a finite-dimensional component.
#[derive(Debug, Clone)]
pub struct Frame<K> {
    keys: Vec<K>,
    index: HashMap<K, usize>,
}

impl<K: Ord + Hash + Clone> Frame<K> {
    /// Sorted, deduplicated keys; order is therefore reproducible.
    pub fn from_keys<I: IntoIterator<Item = K>>(keys: I) -> Self {
        let mut keys: Vec<K> = keys.into_iter().collect();
        keys.sort();
        keys.dedup();
        let index = keys.iter().enumerate().map(|(i, k)| (k.clone(), i)).collect();
        Frame { keys, index }
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn keys(&self) -> &[K] {
        &self.keys
    }

    pub fn index_of(&self, k: &K) -> Option<usize> {
        self.index.get(k).copied()
    }
}

impl Frame<Key> {
    /// Coordinates of a tensor element (its numerator) in this frame.
    pub fn coordinates(&self, v: &TensorElement) -> Result<Row, LinalgError> {
        let mut row: Row = v
            .terms()
            .iter()
            .map(|(k, c)| self.index_of(k).map(|i| (i, c.clone())).ok_or(LinalgError::VectorOutsideFrame))
            .collect::<Result<_, _>>()?;
        row.sort_by_key(|e| e.0);
        Ok(row)
    }
}

/// Raises a family of tensor elements to common denominators so that their
/// numerators can be compared linearly.
pub fn align(elems: &[TensorElement]) -> Vec<TensorElement> {
    let Some(first) = elems.first() else { return Vec::new() };
    let mut e: Vec<u32> = first.exps().to_vec();
    for x in elems {
        for (a, b) in e.iter_mut().zip(x.exps()) {
            *a = (*a).max(*b);
        }
    }
    elems.iter().map(|x| if x.exps() == e.as_slice() { x.clone() } else { x.raise_to(&e) }).collect()
}

/// Coefficient mode for elimination.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Specialization {
    Symbolic,
    /// Evaluate every coefficient at `q = q0` first (advisory only).
    At(Rational),
}

impl Specialization {
    pub fn apply(&self, row: Row) -> Result<Row, LinalgError> {
        match self {
            Specialization::Symbolic => Ok(row),
            Specialization::At(q0) => {
                let mut out = Vec::with_capacity(row.len());
                for (i, c) in row {
                    let v = c.eval_at(q0)?;
                    if !num_traits::Zero::is_zero(&v) {
                        out.push((i, RatFunc::from_rational(v)));
                    }
                }
                Ok(out)
            }
        }
    }
}

/// `a - c * b`.
fn sub_scaled(a: &[(usize, RatFunc)], b: &[(usize, RatFunc)], c: &RatFunc) -> Row {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        match (a.get(i), b.get(j)) {
            (Some(x), Some(y)) if x.0 == y.0 => {
                let v = &x.1 - &(c * &y.1);
                if !v.is_zero() {
                    out.push((x.0, v));
                }
                i += 1;
                j += 1;
            }
            (Some(x), Some(y)) if x.0 < y.0 => {
                out.push(x.clone());
                i += 1;
            }
            (Some(x), None) => {
                out.push(x.clone());
                i += 1;
            }
            (_, Some(y)) => {
                out.push((y.0, -&(c * &y.1)));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

/// Incremental row echelon form; every stored row has leading entry 1.
#[derive(Default, Debug, Clone)]
struct Echelon {
    rows: BTreeMap<usize, Row>,
}

impl Echelon {
    fn reduce(&self, mut v: Row) -> Row {
        let mut cursor = 0;
        while cursor < v.len() {
            let (col, c) = (v[cursor].0, v[cursor].1.clone());
            match self.rows.get(&col) {
                Some(p) => {
                    // Entries of `p` lie at columns >= col, so the prefix is untouched.
                    let tail = sub_scaled(&v[cursor..], p, &c);
                    v.truncate(cursor);
                    v.extend(tail);
                }
                None => cursor += 1,
            }
        }
        v
    }

    /// Inserts a vector; returns false when it was already in the span.
    fn insert(&mut self, v: Row) -> bool {
        let v = self.reduce(v);
        let Some((pivot, lead)) = v.first().cloned() else { return false };
        let inv = lead.inv().expect("nonzero leading entry");
        let v = v.into_iter().map(|(i, c)| (i, &c * &inv)).collect();
        self.rows.insert(pivot, v);
        true
    }

    /// Back substitution to reduced echelon form.
    fn into_reduced(mut self) -> Vec<Row> {
        let pivots: Vec<usize> = self.rows.keys().rev().copied().collect();
        for p in pivots {
            let mut row = self.rows.remove(&p).unwrap();
            let mut k = 1;
            while k < row.len() {
                let col = row[k].0;
                match self.rows.get(&col) {
                    Some(q) => {
                        let c = row[k].1.clone();
                        let tail = sub_scaled(&row[k..], q, &c);
                        row.truncate(k);
                        row.extend(tail);
                    }
                    None => k += 1,
                }
            }
            self.rows.insert(p, row);
        }
        self.rows.into_values().collect()
    }
}

/// Subspace of `K^ambient` in canonical reduced row-echelon form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    rows: Vec<Row>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, rows: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace { ambient, rows: (0..ambient).map(|i| vec![(i, RatFunc::one())]).collect() }
    }

    pub fn span<I: IntoIterator<Item = Row>>(ambient: usize, vectors: I) -> Result<Self, LinalgError> {
        let mut ech = Echelon::default();
        for v in vectors {
            if v.iter().any(|e| e.0 >= ambient) {
                return Err(LinalgError::VectorOutsideFrame);
            }
            ech.insert(v);
        }
        Ok(Subspace { ambient, rows: ech.into_reduced() })
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r[0].0).collect()
    }

    fn echelon(&self) -> Echelon {
        Echelon { rows: self.rows.iter().map(|r| (r[0].0, r.clone())).collect() }
    }

    pub fn contains(&self, v: &Row) -> Result<bool, LinalgError> {
        if v.iter().any(|e| e.0 >= self.ambient) {
            return Err(LinalgError::VectorOutsideFrame);
        }
        Ok(self.echelon().reduce(v.clone()).is_empty())
    }

    fn check_frame(&self, other: &Self) -> Result<(), LinalgError> {
        if self.ambient != other.ambient {
            return Err(LinalgError::FrameMismatch(self.ambient, other.ambient));
        }
        Ok(())
    }

    pub fn equal(&self, other: &Self) -> Result<bool, LinalgError> {
        self.check_frame(other)?;
        Ok(self.rows == other.rows)
    }

    /// A basis vector of `self` outside `other`, if any.
    pub fn witness_not_in(&self, other: &Self) -> Result<Option<Row>, LinalgError> {
        self.check_frame(other)?;
        for r in &self.rows {
            if !other.contains(r)? {
                return Ok(Some(r.clone()));
            }
        }
        Ok(None)
    }

    pub fn sum(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_frame(other)?;
        Subspace::span(self.ambient, self.rows.iter().chain(&other.rows).cloned())
    }

    /// Zassenhaus: rows `[a | a]` and `[b | 0]`; echelon rows starting in the
    /// right half span the intersection.
    pub fn intersect(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_frame(other)?;
        let n = self.ambient;
        let mut ech = Echelon::default();
        for a in &self.rows {
            let mut v = a.clone();
            v.extend(a.iter().map(|(i, c)| (i + n, c.clone())));
            ech.insert(v);
        }
        for b in &other.rows {
            ech.insert(b.clone());
        }
        let rows = ech
            .rows
            .into_iter()
            .filter(|(p, _)| *p >= n)
            .map(|(_, r)| r.into_iter().map(|(i, c)| (i - n, c)).collect());
        Subspace::span(n, rows)
    }
}

/// Kernel of the linear map sending basis vector `i` to `images[i]` (rows in
/// a codomain frame of size `codim`), via elimination on `[f(e_i) | e_i]`.
pub fn kernel_of(images: &[Row], codim: usize) -> Result<Subspace, LinalgError> {
    let dim = images.len();
    let mut ech = Echelon::default();
    for (i, img) in images.iter().enumerate() {
        if img.iter().any(|e| e.0 >= codim) {
            return Err(LinalgError::VectorOutsideFrame);
        }
        let mut v = img.clone();
        v.push((codim + i, RatFunc::one()));
        ech.insert(v);
    }
    let rows = ech
        .rows
        .into_iter()
        .filter(|(p, _)| *p >= codim)
        .map(|(_, r)| r.into_iter().map(|(i, c)| (i - codim, c)).collect());
    Subspace::span(dim, rows)
}

/// Rank of a family of rows.
pub fn rank(rows: &[Row]) -> usize {
    let mut ech = Echelon::default();
    rows.iter().filter(|r| ech.insert((*r).clone())).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(entries: &[(usize, i64)]) -> Row {
        entries.iter().map(|&(i, c)| (i, RatFunc::from_int(c))).collect()
    }

    #[test]
    fn spans() {
        assert_eq!(Subspace::span(3, vec![r(&[(0, 1)]), r(&[(1, 1)])]).unwrap().dim(), 2);
        let v = r(&[(0, 1), (2, 3)]);
        let qv: Row = v.iter().map(|(i, c)| (*i, c * &RatFunc::q())).collect();
        assert_eq!(Subspace::span(3, vec![v.clone(), qv]).unwrap().dim(), 1);
        assert_eq!(Subspace::span(3, Vec::<Row>::new()).unwrap().dim(), 0);
        assert_eq!(Subspace::span(2, vec![r(&[(2, 1)])]), Err(LinalgError::VectorOutsideFrame));
    }

    #[test]
    fn kernels() {
        let id: Vec<Row> = (0..3).map(|i| r(&[(i, 1)])).collect();
        assert_eq!(kernel_of(&id, 3).unwrap().dim(), 0);
        let zero: Vec<Row> = vec![Vec::new(); 3];
        assert!(kernel_of(&zero, 2).unwrap().equal(&Subspace::full(3)).unwrap());
    }

    #[test]
    fn intersections() {
        let a = Subspace::span(4, vec![r(&[(0, 1), (1, 2)]), r(&[(2, 1)])]).unwrap();
        assert!(a.intersect(&a).unwrap().equal(&a).unwrap());
        let e0 = Subspace::span(2, vec![r(&[(0, 1)])]).unwrap();
        let e1 = Subspace::span(2, vec![r(&[(1, 1)])]).unwrap();
        assert_eq!(e0.intersect(&e1).unwrap().dim(), 0);
        let v = r(&[(0, 1), (1, 2)]);
        let q2v: Row = v.iter().map(|(i, c)| (*i, c * &RatFunc::q_pow(2))).collect();
        assert!(a.contains(&q2v).unwrap());
        assert!(a.equal(&e0).is_err());
    }
}
