//! Preimages under `θ*` of the ideals `⟨d_Y ⊗ d_Z⟩`, `⟨d_Y^s ⊗ 1⟩` and `⟨1 ⊗ d_Z^s⟩`
//! of `O_q(V)`, in the square case `m = n > t`.

use std::time::Instant;

use itertools::Itertools;
use rayon::prelude::*;
use serde_json::json;
use smallvec::smallvec;

use crate::qalgebra::{component_blocks, multidegree, quantum_minor, Element, MinorIndex, Monomial, MultiDegree, Shape};
use crate::setting::Setting;
use crate::tensor::TensorElement;

use super::blocks::{by_cols, by_rows, indicator, scaled, sub_vec, BlockSpace};
use super::report::Tally;
use super::sft::block_label;
use super::{params, SuiteError, SuiteOptions, VerificationReport};

fn square_setting(n: u8, t: u8) -> Result<Setting, SuiteError> {
    if n <= t || t == 0 {
        return Err(SuiteError::Precondition(format!("need n > t >= 1, got n={n}, t={t}")));
    }
    Ok(Setting::new(n, t, n))
}

fn minor(shape: Shape, idx: &MinorIndex) -> Element {
    quantum_minor(shape, idx).expect("index fits")
}

fn md_sub(a: &MultiDegree, b: &MultiDegree) -> Option<MultiDegree> {
    Some(MultiDegree { rows: sub_vec(&a.rows, &b.rows)?, cols: sub_vec(&a.cols, &b.cols)? })
}

/// One ideal `d_left A ⊗ d_right B` of `O_q(V)` together with the
/// generators of its expected preimage, a right ideal of `O_q(M_n)`.
struct IdealSide {
    /// `(element, its row counts, its degree)` multiplying the `Y` factor.
    left: (Element, Vec<u32>, usize),
    right: (Element, Vec<u32>, usize),
    /// Left factors `p` of the preimage generators `p · x`.
    preimage: Vec<Element>,
}

/// `θ*(O_q(M_n)) ∩ ideal` against `θ*(preimage)`, block by block, for `d ≤ max_deg`.
fn run_side(setting: &Setting, side: &IdealSide, tag: &str, max_deg: usize, opts: &SuiteOptions, suite: &str) -> Result<Vec<super::ComponentRecord>, SuiteError> {
    let (xs, ys, zs) = (setting.x_shape(), setting.y_shape(), setting.z_shape());
    let theta = setting.theta();
    let pre: Vec<(MultiDegree, usize, &Element)> = side
        .preimage
        .iter()
        .map(|p| {
            let m = p.terms().next().expect("nonzero").0;
            (multidegree(&xs, m), m.len(), p)
        })
        .collect();
    let shapes = format!("n={},t={}", setting.n, setting.t);
    let mut out = Vec::new();
    for d in 0..=max_deg {
        let index = format!("{tag} d={d}");
        let record = opts.component(suite, &shapes, &index, |want_basis| {
            let y_full = by_rows(&ys, d);
            let z_full = by_cols(&zs, d);
            let y_low = d.checked_sub(side.left.2).map(|e| by_rows(&ys, e)).unwrap_or_default();
            let z_low = d.checked_sub(side.right.2).map(|e| by_cols(&zs, e)).unwrap_or_default();
            let computed = component_blocks(&xs, d)
                .into_par_iter()
                .map(|(md, monos)| {
                    let (r, c) = (&md.rows, &md.cols);
                    let keys = y_full[r]
                        .iter()
                        .cartesian_product(&z_full[c])
                        .map(|(a, b)| smallvec![a.clone(), b.clone()]);
                    let space = BlockSpace::new(setting.v_factors(false), keys);
                    let image = space.span(&theta.images(&monos), &opts.spec)?;
                    let mut ideal_vecs = Vec::new();
                    let a_rows = sub_vec(r, &side.left.1);
                    let b_cols = sub_vec(c, &side.right.1);
                    if let (Some(ar), Some(bc)) = (a_rows, b_cols) {
                        let empty: Vec<Monomial> = Vec::new();
                        let a_list = y_low.get(&ar).unwrap_or(&empty);
                        let b_list = z_low.get(&bc).unwrap_or(&empty);
                        for (a, b) in a_list.iter().cartesian_product(b_list) {
                            let a = &side.left.0 * &Element::monomial(ys, a.clone(), crate::RatFunc::one());
                            let b = &side.right.0 * &Element::monomial(zs, b.clone(), crate::RatFunc::one());
                            ideal_vecs.push(setting.v_element(&a, &b));
                        }
                    }
                    let ideal = space.span(&ideal_vecs, &opts.spec)?;
                    let lhs = image.intersect(&ideal)?;
                    let mut rhs_vecs: Vec<TensorElement> = Vec::new();
                    for (pmd, pdeg, p) in &pre {
                        let Some(rest) = md_sub(&md, pmd) else { continue };
                        let Some(low) = d.checked_sub(*pdeg) else { continue };
                        let blocks = component_blocks(&xs, low);
                        for x in blocks.get(&rest).into_iter().flatten() {
                            let px = *p * &Element::monomial(xs, x.clone(), crate::RatFunc::one());
                            rhs_vecs.push(setting.theta_star(&px));
                        }
                    }
                    let rhs = space.span(&rhs_vecs, &opts.spec)?;
                    Ok((block_label(&md), space, image.dim(), ideal.dim(), lhs, rhs))
                })
                .collect::<Result<Vec<_>, SuiteError>>()?;
            let mut tally = Tally::new();
            let mut basis = Vec::new();
            for key in ["component", "image", "ideal", "intersection", "preimage"] {
                tally.add_dim(key, 0);
            }
            for (label, space, im, id, lhs, rhs) in &computed {
                tally.add_dim("component", space.dim());
                tally.add_dim("image", *im);
                tally.add_dim("ideal", *id);
                space.compare(&mut tally, label, "intersection", lhs, "preimage", rhs, want_basis.then_some(&mut basis))?;
            }
            Ok((tally.finish(index.clone()), basis))
        })?;
        out.push(record);
    }
    Ok(out)
}

/// `θ*(O_q(M_n)_d) ∩ (d_Y A ⊗ d_Z B) = θ*(d_X O_q(M_n))_d` for `d ≤ max_deg`.
pub fn verify_preimage_dx(n: u8, t: u8, max_deg: usize, opts: &SuiteOptions) -> Result<VerificationReport, SuiteError> {
    let start = Instant::now();
    let setting = square_setting(n, t)?;
    let (xs, ys, zs) = (setting.x_shape(), setting.y_shape(), setting.z_shape());
    let low = n - t + 1..=n;
    let side = IdealSide {
        left: (minor(ys, &setting.lower_left(n)), indicator(n, low.clone()), t as usize),
        right: (minor(zs, &MinorIndex::solid(1..=t, 1..=t)), indicator(n, 1..=t), t as usize),
        preimage: vec![minor(xs, &setting.lower_left(n))],
    };
    let components = run_side(&setting, &side, "dX", max_deg, opts, "preimage-dx")?;
    let p = params(&[("n", json!(n)), ("t", json!(t)), ("max_degree", json!(max_deg))]);
    Ok(opts.report("preimage-dx", p, components, start))
}

/// Ordered products of `s` minors picked from `minors`.
fn products(minors: &[Element], s: u32, one: Element) -> Vec<Element> {
    let mut out = vec![one];
    for _ in 0..s {
        out = out.iter().cartesian_product(minors).map(|(a, b)| a * b).collect();
    }
    out
}

/// `θ*^{-1}(⟨d_Y^s ⊗ 1⟩) = P_1^s` and `θ*^{-1}(⟨1 ⊗ d_Z^s⟩) = P_2^s` for `d ≤ max_deg`,
/// with `P_1` generated by the minors `[Ĩ|J]` on the last `t` rows and `P_2`
/// by the minors `[I|J̃]` on the first `t` columns.
pub fn verify_preimage_p(n: u8, t: u8, s: u32, max_deg: usize, opts: &SuiteOptions) -> Result<VerificationReport, SuiteError> {
    let start = Instant::now();
    let setting = square_setting(n, t)?;
    let (xs, ys, zs) = (setting.x_shape(), setting.y_shape(), setting.z_shape());
    let subsets: Vec<Vec<u8>> = (1..=n).combinations(t as usize).collect();
    let last_rows: Vec<u8> = (n - t + 1..=n).collect();
    let first_cols: Vec<u8> = (1..=t).collect();
    let p1: Vec<Element> =
        subsets.iter().map(|j| minor(xs, &MinorIndex::new(last_rows.clone(), j.clone()))).collect();
    let p2: Vec<Element> =
        subsets.iter().map(|i| minor(xs, &MinorIndex::new(i.clone(), first_cols.clone()))).collect();
    let d_y = minor(ys, &setting.lower_left(n));
    let d_z = minor(zs, &MinorIndex::solid(1..=t, 1..=t));
    let st = (s * t as u32) as usize;
    let sides = [
        (
            "P1",
            IdealSide {
                left: (d_y.pow(s), scaled(&indicator(n, last_rows.iter().copied()), s), st),
                right: (Element::one(zs), vec![0; n as usize], 0),
                preimage: products(&p1, s, Element::one(xs)),
            },
        ),
        (
            "P2",
            IdealSide {
                left: (Element::one(ys), vec![0; n as usize], 0),
                right: (d_z.pow(s), scaled(&indicator(n, first_cols.iter().copied()), s), st),
                preimage: products(&p2, s, Element::one(xs)),
            },
        ),
    ];
    let mut components = Vec::new();
    for (tag, side) in &sides {
        components.extend(run_side(&setting, side, &format!("{tag}^{s}"), max_deg, opts, "preimage-p")?);
    }
    let p = params(&[("n", json!(n)), ("t", json!(t)), ("s", json!(s)), ("max_degree", json!(max_deg))]);
    Ok(opts.report("preimage-p", p, components, start))
}
