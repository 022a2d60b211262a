//! First fundamental theorems: `γ*`-coinvariants of `O_q(V)` are the image
//! of `θ*`, and `O_q(SL_t)`-coinvariants are generated over it by the
//! `t × t` minors of `Y` and of `Z`.

use std::collections::BTreeMap;
use std::time::Instant;

use itertools::Itertools;
use rayon::prelude::*;
use serde_json::json;
use smallvec::smallvec;

use crate::comodule::GammaCache;
use crate::hopf::{d_t_power, gl_one};
use crate::linalg::Subspace;
use crate::qalgebra::{all_minors, component_blocks, graded_component_basis, quantum_minor, Element, MultiDegree};
use crate::setting::Setting;
use crate::tensor::{Key, TensorElement};

use super::blocks::{by_cols, by_rows, fmt_vec, v_block_of, BlockSpace};
use super::report::Tally;
use super::{params, ComponentRecord, SuiteError, SuiteOptions, VerificationReport};

type VBlock = (Vec<u32>, Vec<u32>);

fn v_label(b: &VBlock) -> String {
    format!("Y rows {} Z cols {}", fmt_vec(&b.0), fmt_vec(&b.1))
}

/// The blocks of `O_q(V)_{i,j}`, each with its basis keys.
fn v_blocks(setting: &Setting, i: usize, j: usize) -> Vec<(VBlock, Vec<Key>)> {
    let ys = by_rows(&setting.y_shape(), i);
    let zs = by_cols(&setting.z_shape(), j);
    let mut out = Vec::new();
    for (r, a_list) in &ys {
        for (c, b_list) in &zs {
            let keys = a_list.iter().cartesian_product(b_list).map(|(a, b)| smallvec![a.clone(), b.clone()]).collect();
            out.push(((r.clone(), c.clone()), keys));
        }
    }
    out
}

/// `{v : γ*(v) = d_T^{-s} ⊗ v}` on one block.
fn semi_kernel(space: &BlockSpace, gamma: &GammaCache, s: i32, opts: &SuiteOptions) -> Result<Subspace, SuiteError> {
    let t = space.factors[0].shape.cols;
    let left = d_t_power(t, -s);
    space.kernel(
        |k| {
            let v = space.basis_vector(k);
            &gamma.pure(&k[0], &k[1]) - &left.outer(&v)
        },
        &opts.spec,
    )
}

fn shapes_tag(setting: &Setting) -> String {
    format!("m={},t={},n={}", setting.m, setting.t, setting.n)
}

fn bidegree_param(bidegrees: &[(usize, usize)]) -> serde_json::Value {
    json!(bidegrees.iter().map(|(i, j)| [i, j]).collect::<Vec<_>>())
}

/// `θ*` images of the monomials of `O_q(M_{m,n})_d`, by multidegree.
fn theta_blocks(setting: &Setting, d: usize) -> BTreeMap<MultiDegree, Vec<TensorElement>> {
    let theta = setting.theta();
    component_blocks(&setting.x_shape(), d)
        .into_iter()
        .map(|(md, monos)| (md, theta.images(&monos)))
        .collect()
}

/// Compares the `γ*`-coinvariants of `O_q(V)_{i,j}` with `θ*(O_q(M_{m,n})_i)`
/// (for `i = j`) or with zero (for `i ≠ j`).
pub fn verify_fft(setting: &Setting, bidegrees: &[(usize, usize)], opts: &SuiteOptions) -> Result<VerificationReport, SuiteError> {
    let start = Instant::now();
    let gamma = GammaCache::new(setting.y_factor(false), setting.z_factor(false));
    let one = gl_one(setting.t);
    let mut components = Vec::new();
    for &(i, j) in bidegrees {
        let index = format!("({i},{j})");
        let record = opts.component("fft", &shapes_tag(setting), &index, |want_basis| {
            let images = if i == j { theta_blocks(setting, i) } else { BTreeMap::new() };
            let computed = v_blocks(setting, i, j)
                .into_par_iter()
                .map(|(block, keys)| {
                    let space = BlockSpace::new(setting.v_factors(false), keys);
                    let coinv = space.kernel(
                        |k| &gamma.pure(&k[0], &k[1]) - &one.outer(&space.basis_vector(k)),
                        &opts.spec,
                    )?;
                    let md = MultiDegree { rows: block.0.clone(), cols: block.1.clone() };
                    let rhs = space.span(images.get(&md).map(Vec::as_slice).unwrap_or(&[]), &opts.spec)?;
                    Ok((v_label(&block), space, coinv, rhs))
                })
                .collect::<Result<Vec<_>, SuiteError>>()?;
            let mut tally = Tally::new();
            let mut basis = Vec::new();
            tally.add_dim("component", 0);
            for (label, space, coinv, rhs) in &computed {
                tally.add_dim("component", space.dim());
                space.compare(&mut tally, label, "coinvariants", coinv, "image", rhs, want_basis.then_some(&mut basis))?;
            }
            Ok((tally.finish(index.clone()), basis))
        })?;
        components.push(record);
    }
    let p = params(&[
        ("m", json!(setting.m)),
        ("t", json!(setting.t)),
        ("n", json!(setting.n)),
        ("bidegrees", bidegree_param(bidegrees)),
    ]);
    Ok(opts.report("fft", p, components, start))
}

/// All ordered products of `len` factors drawn from `minors`.
fn minor_products(minors: &[Element], len: usize, one: Element) -> Vec<Element> {
    let mut out = vec![one];
    for _ in 0..len {
        out = out.iter().cartesian_product(minors).map(|(p, m)| p * m).collect();
    }
    out
}

/// Generators of the right-hand side of the `O_q(SL_t)` theorem in `O_q(V)_{i,j}`:
/// `(A_1^a ⊗ A_2^b) · θ*(O_q(M_{m,n})_d)` with `i = ta + d`, `j = tb + d`.
fn sl_generators(setting: &Setting, i: usize, j: usize) -> BTreeMap<VBlock, Vec<TensorElement>> {
    let t = setting.t as usize;
    let (ys, zs) = (setting.y_shape(), setting.z_shape());
    let y_minors: Vec<Element> = all_minors(&ys, t).iter().map(|idx| quantum_minor(ys, idx).expect("fits")).collect();
    let z_minors: Vec<Element> = all_minors(&zs, t).iter().map(|idx| quantum_minor(zs, idx).expect("fits")).collect();
    let mut out: BTreeMap<VBlock, Vec<TensorElement>> = BTreeMap::new();
    for a in 0..=i / t {
        let d = i - t * a;
        if d > j || (j - d) % t != 0 {
            continue;
        }
        let b = (j - d) / t;
        let ya = minor_products(&y_minors, a, Element::one(ys));
        let zb = minor_products(&z_minors, b, Element::one(zs));
        let theta = setting.theta();
        let xs = theta.images(&graded_component_basis(&setting.x_shape(), d));
        for (p, q) in ya.iter().cartesian_product(&zb) {
            let left = setting.v_element(p, q);
            for x in &xs {
                let v = &left * x;
                if let Some(k) = v.terms().keys().next() {
                    out.entry(v_block_of(&ys, &zs, k)).or_default().push(v);
                }
            }
        }
    }
    out
}

/// Compares semi-coinvariants of weight `s = (i - j)/t` with the span of
/// minor products times the `θ*`-image. When `t ∤ i - j` both neighbouring
/// weights are tested and must give zero.
pub fn verify_sl_fft(setting: &Setting, bidegrees: &[(usize, usize)], opts: &SuiteOptions) -> Result<VerificationReport, SuiteError> {
    let start = Instant::now();
    let t = setting.t as i64;
    let gamma = GammaCache::new(setting.y_factor(false), setting.z_factor(false));
    let mut components = Vec::new();
    for &(i, j) in bidegrees {
        let index = format!("({i},{j})");
        let diff = i as i64 - j as i64;
        let weights: Vec<i32> = if diff % t == 0 {
            vec![(diff / t) as i32]
        } else {
            let fl = diff.div_euclid(t) as i32;
            vec![fl, fl + 1]
        };
        let record: ComponentRecord = opts.component("slfft", &shapes_tag(setting), &index, |want_basis| {
            let gens = sl_generators(setting, i, j);
            let computed = v_blocks(setting, i, j)
                .into_par_iter()
                .map(|(block, keys)| {
                    let space = BlockSpace::new(setting.v_factors(false), keys);
                    let mut lhs = Subspace::zero(space.dim());
                    let mut per_weight = Vec::new();
                    for &s in &weights {
                        let k = semi_kernel(&space, &gamma, s, opts)?;
                        per_weight.push((s, k.dim()));
                        lhs = lhs.sum(&k)?;
                    }
                    let rhs = space.span(gens.get(&block).map(Vec::as_slice).unwrap_or(&[]), &opts.spec)?;
                    Ok((v_label(&block), space, lhs, rhs, per_weight))
                })
                .collect::<Result<Vec<_>, SuiteError>>()?;
            let mut tally = Tally::new();
            let mut basis = Vec::new();
            tally.add_dim("component", 0);
            for (label, space, lhs, rhs, per_weight) in &computed {
                tally.add_dim("component", space.dim());
                for (s, dim) in per_weight {
                    tally.add_dim(&format!("semi[s={s}]"), *dim);
                }
                space.compare(&mut tally, label, "semi", lhs, "generated", rhs, want_basis.then_some(&mut basis))?;
            }
            Ok((tally.finish(index.clone()), basis))
        })?;
        components.push(record);
    }
    let p = params(&[
        ("m", json!(setting.m)),
        ("t", json!(setting.t)),
        ("n", json!(setting.n)),
        ("bidegrees", bidegree_param(bidegrees)),
    ]);
    Ok(opts.report("slfft", p, components, start))
}
