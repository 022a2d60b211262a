//! Second fundamental theorem: `ker θ* = I_{t+1}` on each graded component.

use std::collections::{BTreeMap, HashMap};
use std::time::Instant;

use rayon::prelude::*;
use serde_json::json;
use smallvec::smallvec;

use crate::linalg::{Frame, Specialization, Subspace};
use crate::qalgebra::{all_minors, component_blocks, multidegree, quantum_minor, Element, MultiDegree, Shape};
use crate::setting::Setting;
use crate::tensor::TensorElement;

use super::blocks::{fmt_vec, BlockSpace};
use super::report::Tally;
use super::{params, SuiteError, SuiteOptions, VerificationReport};

pub(crate) type IdealLevel = BTreeMap<MultiDegree, Vec<Element>>;

pub(crate) fn block_label(md: &MultiDegree) -> String {
    format!("rows {} cols {}", fmt_vec(&md.rows), fmt_vec(&md.cols))
}

/// Reduced basis of `span(vs)` inside the block spanned by `monos`.
fn reduce_in_block(shape: Shape, monos: &[crate::qalgebra::Monomial], vs: &[Element], spec: &Specialization) -> Result<Vec<Element>, SuiteError> {
    let frame = Frame::from_keys(monos.iter().cloned());
    let mut rows = Vec::with_capacity(vs.len());
    for v in vs {
        let mut row = Vec::with_capacity(v.len());
        for (m, c) in v.terms() {
            let i = frame.index_of(m).ok_or(crate::linalg::LinalgError::VectorOutsideFrame)?;
            row.push((i, c.clone()));
        }
        row.sort_by_key(|e| e.0);
        rows.push(spec.apply(row)?);
    }
    let sub = Subspace::span(frame.len(), rows)?;
    Ok(sub
        .rows()
        .iter()
        .map(|r| Element::from_words(shape, r.iter().map(|(i, c)| (frame.keys()[*i].to_vec(), c.clone()))))
        .collect())
}

/// Components `I_d` of the two-sided ideal generated by all `size × size`
/// minors, per multidegree, for `d ≤ max_deg`.
pub(crate) fn ideal_tower(shape: Shape, size: usize, max_deg: usize, spec: &Specialization) -> Result<Vec<IdealLevel>, SuiteError> {
    if size > shape.rows.min(shape.cols) as usize {
        return Ok(vec![BTreeMap::new(); max_deg + 1]);
    }
    let minors = all_minors(&shape, size).iter().map(|idx| quantum_minor(shape, idx).expect("minor fits")).collect();
    ideal_from_seeds(shape, minors, max_deg, spec)
}

/// Components of the two-sided ideal generated by `seeds`, which must be
/// nonzero and homogeneous of one common total degree (and each of a single
/// multidegree).
pub(crate) fn ideal_from_seeds(shape: Shape, seeds: Vec<Element>, max_deg: usize, spec: &Specialization) -> Result<Vec<IdealLevel>, SuiteError> {
    let mut levels: Vec<IdealLevel> = vec![BTreeMap::new(); max_deg + 1];
    let Some(size) = seeds.first().and_then(|e| e.degree()) else { return Ok(levels) };
    if size > max_deg {
        return Ok(levels);
    }
    let mut grouped: IdealLevel = BTreeMap::new();
    for e in seeds {
        let md = multidegree(&shape, e.terms().next().expect("seeds are nonzero").0);
        grouped.entry(md).or_default().push(e);
    }
    let blocks = component_blocks(&shape, size);
    let mut first = BTreeMap::new();
    for (md, vs) in grouped {
        first.insert(md.clone(), reduce_in_block(shape, &blocks[&md], &vs, spec)?);
    }
    levels[size] = first;
    for d in size + 1..=max_deg {
        let prev = &levels[d - 1];
        let blocks = component_blocks(&shape, d);
        let next: Vec<(MultiDegree, Vec<Element>)> = blocks
            .par_iter()
            .map(|(md, monos)| {
                let mut cands = Vec::new();
                for g in 0..shape.num_gens() as u8 {
                    let (r, c) = shape.pos(g);
                    let (r, c) = (r as usize - 1, c as usize - 1);
                    if md.rows[r] == 0 || md.cols[c] == 0 {
                        continue;
                    }
                    let mut below = md.clone();
                    below.rows[r] -= 1;
                    below.cols[c] -= 1;
                    if let Some(basis) = prev.get(&below) {
                        let gen = Element::monomial(shape, smallvec![g], crate::scalar::RatFunc::one());
                        for b in basis {
                            cands.push(&gen * b);
                            cands.push(b.mul_gen(g));
                        }
                    }
                }
                Ok((md.clone(), reduce_in_block(shape, monos, &cands, spec)?))
            })
            .collect::<Result<_, SuiteError>>()?;
        levels[d] = next.into_iter().filter(|(_, v)| !v.is_empty()).collect();
    }
    Ok(levels)
}

/// Compares `ker θ*` with `I_{t+1}` on `O_q(M_{m,n})_d` for `d ≤ max_deg`.
pub fn verify_sft(setting: &Setting, max_deg: usize, opts: &SuiteOptions) -> Result<VerificationReport, SuiteError> {
    let start = Instant::now();
    let shape = setting.x_shape();
    let xf = setting.x_factor();
    let theta = setting.theta();
    let ideals = ideal_tower(shape, setting.t as usize + 1, max_deg, &opts.spec)?;
    let shapes = format!("m={},t={},n={}", setting.m, setting.t, setting.n);
    let mut components = Vec::new();
    for (d, ideal) in ideals.iter().enumerate() {
        let index = format!("d={d}");
        let record = opts.component("sft", &shapes, &index, |want_basis| {
            let blocks = component_blocks(&shape, d);
            let computed = blocks
                .par_iter()
                .map(|(md, monos)| {
                    let space = BlockSpace::new(vec![xf.clone()], monos.iter().map(|m| smallvec![m.clone()]));
                    let images: HashMap<_, _> = monos.iter().cloned().zip(theta.images(monos)).collect();
                    let ker = space.kernel(|k| images[&k[0]].clone(), &opts.spec)?;
                    let gens: Vec<TensorElement> = ideal
                        .get(md)
                        .map(|v| v.iter().map(|e| TensorElement::from_element(xf.clone(), e)).collect())
                        .unwrap_or_default();
                    let ideal = space.span(&gens, &opts.spec)?;
                    Ok((block_label(md), space, ker, ideal))
                })
                .collect::<Result<Vec<_>, SuiteError>>()?;
            let mut tally = Tally::new();
            let mut basis = Vec::new();
            tally.add_dim("component", 0);
            for (label, space, ker, ideal) in &computed {
                tally.add_dim("component", space.dim());
                space.compare(&mut tally, label, "ker", ker, "ideal", ideal, want_basis.then_some(&mut basis))?;
            }
            Ok((tally.finish(index.clone()), basis))
        })?;
        components.push(record);
    }
    let p = params(&[
        ("m", json!(setting.m)),
        ("t", json!(setting.t)),
        ("n", json!(setting.n)),
        ("max_degree", json!(max_deg)),
    ]);
    Ok(opts.report("sft", p, components, start))
}
