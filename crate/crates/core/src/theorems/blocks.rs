//! Coordinate spaces for single multigrading blocks.

use std::collections::BTreeMap;

use crate::linalg::{align, kernel_of, Frame, Specialization, Subspace};
use crate::qalgebra::{graded_component_basis, multidegree, Monomial, Shape};
use crate::scalar::RatFunc;
use crate::tensor::{Factor, Key, TensorElement};

use super::report::Tally;
use super::SuiteError;

/// A block of a graded component with a fixed monomial basis.
pub(crate) struct BlockSpace {
    pub frame: Frame<Key>,
    pub factors: Vec<Factor>,
}

impl BlockSpace {
    pub fn new(factors: Vec<Factor>, keys: impl IntoIterator<Item = Key>) -> Self {
        BlockSpace { frame: Frame::from_keys(keys), factors }
    }

    pub fn dim(&self) -> usize {
        self.frame.len()
    }

    pub fn basis_vector(&self, k: &Key) -> TensorElement {
        TensorElement::pure(self.factors.clone(), k.clone(), RatFunc::one())
    }

    /// Span of numerators (all vectors must lie in the block).
    pub fn span(&self, vs: &[TensorElement], spec: &Specialization) -> Result<Subspace, SuiteError> {
        let rows = vs
            .iter()
            .filter(|v| !v.is_zero())
            .map(|v| Ok(spec.apply(self.frame.coordinates(v)?)?))
            .collect::<Result<Vec<_>, SuiteError>>()?;
        Ok(Subspace::span(self.dim(), rows)?)
    }

    /// Kernel of the linear map sending each basis key `k` to `f(k)`.
    pub fn kernel(
        &self,
        f: impl Fn(&Key) -> TensorElement,
        spec: &Specialization,
    ) -> Result<Subspace, SuiteError> {
        let images = align(&self.frame.keys().iter().map(f).collect::<Vec<_>>());
        let codomain = Frame::from_keys(images.iter().flat_map(|v| v.terms().keys().cloned()));
        let rows = images
            .iter()
            .map(|v| Ok(spec.apply(codomain.coordinates(v)?)?))
            .collect::<Result<Vec<_>, SuiteError>>()?;
        Ok(kernel_of(&rows, codomain.len())?)
    }

    pub fn render(&self, row: &[(usize, RatFunc)]) -> String {
        let mut acc = TensorElement::zero(self.factors.clone());
        for (i, c) in row {
            acc = &acc + &TensorElement::pure(self.factors.clone(), self.frame.keys()[*i].clone(), c.clone());
        }
        acc.to_string()
    }

    /// Records `lhs == rhs` in the tally, with a witness on failure.
    #[allow(clippy::too_many_arguments)]
    pub fn compare(
        &self,
        tally: &mut Tally,
        block: &str,
        lhs_name: &str,
        lhs: &Subspace,
        rhs_name: &str,
        rhs: &Subspace,
        basis: Option<&mut Vec<String>>,
    ) -> Result<(), SuiteError> {
        tally.add_dim(lhs_name, lhs.dim());
        tally.add_dim(rhs_name, rhs.dim());
        if let Some(out) = basis {
            out.extend(lhs.rows().iter().map(|r| self.render(r)));
        }
        if lhs.equal(rhs)? {
            tally.record(block, true, None);
            return Ok(());
        }
        let witness = match lhs.witness_not_in(rhs)? {
            Some(r) => format!("{} in {lhs_name} but not in {rhs_name}", self.render(&r)),
            None => match rhs.witness_not_in(lhs)? {
                Some(r) => format!("{} in {rhs_name} but not in {lhs_name}", self.render(&r)),
                None => String::from("subspaces differ"),
            },
        };
        tally.record(block, false, Some(witness));
        Ok(())
    }
}

/// Monomials of a given degree grouped by their row-count vector.
pub(crate) fn by_rows(shape: &Shape, degree: usize) -> BTreeMap<Vec<u32>, Vec<Monomial>> {
    let mut out: BTreeMap<Vec<u32>, Vec<Monomial>> = BTreeMap::new();
    for m in graded_component_basis(shape, degree) {
        out.entry(multidegree(shape, &m).rows).or_default().push(m);
    }
    out
}

/// Monomials of a given degree grouped by their column-count vector.
pub(crate) fn by_cols(shape: &Shape, degree: usize) -> BTreeMap<Vec<u32>, Vec<Monomial>> {
    let mut out: BTreeMap<Vec<u32>, Vec<Monomial>> = BTreeMap::new();
    for m in graded_component_basis(shape, degree) {
        out.entry(multidegree(shape, &m).cols).or_default().push(m);
    }
    out
}

/// `a - b` componentwise, if nonnegative.
pub(crate) fn sub_vec(a: &[u32], b: &[u32]) -> Option<Vec<u32>> {
    a.iter().zip(b).map(|(x, y)| x.checked_sub(*y)).collect()
}

pub(crate) fn indicator(len: u8, set: impl IntoIterator<Item = u8>) -> Vec<u32> {
    let mut v = vec![0; len as usize];
    for i in set {
        v[i as usize - 1] += 1;
    }
    v
}

pub(crate) fn scaled(v: &[u32], s: u32) -> Vec<u32> {
    v.iter().map(|x| x * s).collect()
}

pub(crate) fn fmt_vec(v: &[u32]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

/// Row and column counts of a two-factor key `a ⊗ b`: rows of `a`, columns of `b`.
pub(crate) fn v_block_of(y: &Shape, z: &Shape, k: &Key) -> (Vec<u32>, Vec<u32>) {
    (multidegree(y, &k[0]).rows, multidegree(z, &k[1]).cols)
}
