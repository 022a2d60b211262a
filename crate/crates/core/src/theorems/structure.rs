//! Structural identities: Hopf axioms, minor identities, normality of the
//! distinguished minors, comodule laws, and the identities relating the
//! localized coactions.
//!
//! Each group returns one record per property with the number of cases
//! checked and, on failure, the first offending case.

use std::time::Instant;

use itertools::Itertools;
use num_integer::binomial;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;
use smallvec::smallvec;

use crate::comodule::{gamma_star, is_coinvariant, is_semi_coinvariant, is_sl_coinvariant, is_xi_coinvariant, lambda_map, rho_map, torus_weight, xi_star, GammaCache};
use crate::hopf::*;
use crate::linalg::{rank, Frame};
use crate::localization::normal_minor;
use crate::qalgebra::*;
use crate::scalar::RatFunc;
use crate::setting::Setting;
use crate::tensor::{AlgMap, Factor, TensorElement};

use super::blocks::BlockSpace;
use super::report::ComponentRecord;
use super::sft::ideal_from_seeds;
use super::{params, SuiteError, SuiteOptions, VerificationReport};

/// Counts cases and keeps the first failure.
struct Probe {
    checked: usize,
    witness: Option<String>,
}

impl Probe {
    fn new() -> Self {
        Probe { checked: 0, witness: None }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.witness.is_none() {
            self.witness = Some(what());
        }
    }

    fn merge(&mut self, other: Probe) {
        self.checked += other.checked;
        if self.witness.is_none() {
            self.witness = other.witness;
        }
    }

    fn finish(self, index: impl Into<String>) -> ComponentRecord {
        let mut rec = ComponentRecord::check(index, self.witness.is_none(), self.witness);
        rec.dims.insert("checked".into(), self.checked);
        rec
    }
}

/// Runs `f` on every sample in parallel and folds the probes in order.
fn probe_all<T: Sync>(samples: &[T], f: impl Fn(&T, &mut Probe) + Sync) -> Probe {
    let parts: Vec<Probe> = samples
        .par_iter()
        .map(|s| {
            let mut p = Probe::new();
            f(s, &mut p);
            p
        })
        .collect();
    let mut out = Probe::new();
    for p in parts {
        out.merge(p);
    }
    out
}

/// Seeded generator, decorrelated per property by a stable tag hash.
fn rng_for(seed: u64, tag: &str) -> ChaCha8Rng {
    let h = tag.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3));
    ChaCha8Rng::seed_from_u64(seed ^ h)
}

fn random_monomial(shape: &Shape, degree: usize, rng: &mut ChaCha8Rng) -> Monomial {
    let mut m: Vec<u8> = (0..degree).map(|_| rng.gen_range(0..shape.num_gens()) as u8).collect();
    m.sort_unstable();
    Monomial::from_vec(m)
}

fn random_coeff(rng: &mut ChaCha8Rng) -> RatFunc {
    let mut c = 0;
    while c == 0 {
        c = rng.gen_range(-3i64..=3);
    }
    RatFunc::from_int(c) * RatFunc::q_pow(rng.gen_range(-1..=1))
}

/// A random element with up to `terms` monomials of degree `≤ max_deg`.
fn random_element(shape: Shape, max_deg: usize, terms: usize, rng: &mut ChaCha8Rng) -> Element {
    let mut acc = Element::zero(shape);
    for _ in 0..terms {
        let d = rng.gen_range(0..=max_deg);
        acc = &acc + &Element::monomial(shape, random_monomial(&shape, d, rng), random_coeff(rng));
    }
    acc
}

fn monomials_up_to(shape: &Shape, max_deg: usize) -> Vec<Monomial> {
    (0..=max_deg).flat_map(|d| graded_component_basis(shape, d)).collect()
}

/// Hopf-algebra laws of `O_q(GL_t)` on `1`, the generators, `d_T^{±1}` and all
/// monomials of degree `≤ 2`.
pub fn hopf_axioms(t: u8) -> Vec<ComponentRecord> {
    let shape = gl_shape(t);
    let mut samples: Vec<GLElement> = monomials_up_to(&shape, 2)
        .into_iter()
        .map(|m| gl_element(t, &Element::monomial(shape, m, RatFunc::one()), 0))
        .collect();
    samples.push(d_t_power(t, 1));
    samples.push(d_t_power(t, -1));
    let delta = comultiply_map(t);
    let counit = counit_map(t);
    let s = antipode_map(t);
    let s_inv = antipode_inverse_map(t);
    let pi = torus_map(t);
    let torus_delta = comultiply_map(1);
    let one = gl_one(t);
    let tag = |law: &str| format!("hopf t={t}: {law}");

    let coassoc = probe_all(&samples, |h, p| {
        let d = h.apply_factor_map(0, &delta);
        let l = d.apply_factor_map(0, &delta);
        let r = d.apply_factor_map(1, &delta);
        p.check(l.equals(&r), || format!("(Δ⊗id)Δ ≠ (id⊗Δ)Δ on {h}"));
    });
    let counit_law = probe_all(&samples, |h, p| {
        let d = h.apply_factor_map(0, &delta);
        p.check(d.apply_factor_map(0, &counit).equals(h), || format!("(ε⊗id)Δ ≠ id on {h}"));
        p.check(d.apply_factor_map(1, &counit).equals(h), || format!("(id⊗ε)Δ ≠ id on {h}"));
    });
    let antipode_law = probe_all(&samples, |h, p| {
        let d = h.apply_factor_map(0, &delta);
        let e = one.scale(&gl_counit(h));
        let l = d.apply_factor_map(0, &s).multiply_factors(0, 1).expect("same factor");
        let r = d.apply_factor_map(1, &s).multiply_factors(0, 1).expect("same factor");
        p.check(l.equals(&e), || format!("m(S⊗id)Δ ≠ ε on {h}: {l}"));
        p.check(r.equals(&e), || format!("m(id⊗S)Δ ≠ ε on {h}: {r}"));
    });
    let inverse = probe_all(&samples, |h, p| {
        let a = h.apply_factor_map(0, &s_inv).apply_factor_map(0, &s);
        let b = h.apply_factor_map(0, &s).apply_factor_map(0, &s_inv);
        p.check(a.equals(h), || format!("S∘S^-1 ≠ id on {h}"));
        p.check(b.equals(h), || format!("S^-1∘S ≠ id on {h}"));
    });
    let twisted = probe_all(&samples, |h, p| {
        let d = h.apply_factor_map(0, &delta).apply_factor_map(1, &s_inv);
        let l = d.multiply_factors(1, 0).expect("same factor");
        p.check(l.equals(&one.scale(&gl_counit(h))), || format!("Σ S^-1(h_2)h_1 ≠ ε(h) on {h}"));
    });
    let projection = probe_all(&samples, |h, p| {
        let l = h.apply_factor_map(0, &delta).apply_factor_map(0, &pi).apply_factor_map(1, &pi);
        let r = h.apply_factor_map(0, &pi).apply_factor_map(0, &torus_delta);
        p.check(l.equals(&r), || format!("π' is not comultiplicative on {h}"));
        for g in samples.iter().take(1 + shape.num_gens()) {
            let prod = (h * g).apply_factor_map(0, &pi);
            let sep = &h.apply_factor_map(0, &pi) * &g.apply_factor_map(0, &pi);
            p.check(prod.equals(&sep), || format!("π' is not multiplicative on {h} · {g}"));
        }
    });
    let central = {
        let mut p = Probe::new();
        let d = d_t_power(t, 1);
        for g in samples.iter().take(1 + shape.num_gens()) {
            p.check((&d * g).equals(&(g * &d)), || format!("d_T does not commute with {g}"));
        }
        p
    };
    vec![
        coassoc.finish(tag("coassociativity")),
        counit_law.finish(tag("counit")),
        antipode_law.finish(tag("antipode")),
        inverse.finish(tag("S∘S^-1 = id")),
        twisted.finish(tag("Σ S^-1(h_2)h_1 = ε(h)")),
        projection.finish(tag("π' bialgebra morphism")),
        central.finish(tag("d_T central")),
    ]
}

/// `Δ[I|J] = Σ_L [I|L] ⊗ [L|J]` for every minor of `O_q(M_t)`.
pub fn minor_comultiplication(t: u8) -> ComponentRecord {
    let shape = gl_shape(t);
    let minors: Vec<MinorIndex> = (1..=t as usize).flat_map(|k| all_minors(&shape, k)).collect();
    let probe = probe_all(&minors, |idx, p| {
        let el = |i: &MinorIndex| gl_element(t, &quantum_minor(shape, i).expect("fits"), 0);
        let lhs = gl_comultiply(&el(idx));
        let mut rhs = TensorElement::zero(vec![gl_factor(t), gl_factor(t)]);
        for l in (1..=t).combinations(idx.size()) {
            let a = el(&MinorIndex::new(idx.rows.clone(), l.clone()));
            let b = el(&MinorIndex::new(l, idx.cols.clone()));
            rhs = &rhs + &a.outer(&b);
        }
        p.check(lhs.equals(&rhs), || format!("Δ[{:?}|{:?}] mismatch", idx.rows, idx.cols));
    });
    probe.finish(format!("minor comultiplication in M_{t}"))
}

/// Permutation expansion against first-row expansion for every minor of
/// every shape `r × c` with `r, c ≤ max`.
pub fn laplace_agreement(max: u8) -> ComponentRecord {
    let cases: Vec<(Shape, MinorIndex)> = (1..=max)
        .cartesian_product(1..=max)
        .flat_map(|(r, c)| {
            let s = Shape::new(Family::X, r, c);
            (1..=r.min(c) as usize).flat_map(move |k| all_minors(&s, k).into_iter().map(move |i| (s, i)))
        })
        .collect();
    let probe = probe_all(&cases, |(s, idx), p| {
        let a = quantum_minor(*s, idx).expect("fits");
        let b = laplace_minor(*s, idx).expect("fits");
        p.check(a == b, || format!("[{:?}|{:?}] in {s}: {a} vs {b}", idx.rows, idx.cols));
    });
    probe.finish(format!("quantum minor = Laplace expansion, shapes ≤ {max}x{max}"))
}

/// Associativity, multidegree additivity, retraction and determinant centrality.
pub fn algebra_properties(max: u8, samples: usize, seed: u64) -> Vec<ComponentRecord> {
    let shapes: Vec<Shape> = (1..=max).cartesian_product(1..=max).map(|(r, c)| Shape::new(Family::X, r, c)).collect();
    let mut rng = rng_for(seed, "algebra");
    let triples: Vec<(Shape, Element, Element, Element)> = (0..samples)
        .map(|i| {
            let s = shapes[i % shapes.len()];
            let a = random_element(s, 3, 2, &mut rng);
            let b = random_element(s, 3, 2, &mut rng);
            let c = random_element(s, 3, 2, &mut rng);
            (s, a, b, c)
        })
        .collect();
    let assoc = probe_all(&triples, |(_, a, b, c), p| {
        p.check(&(a * b) * c == a * &(b * c), || format!("(ab)c ≠ a(bc) for a={a}, b={b}, c={c}"));
    });
    let additive = probe_all(&triples, |(s, _, _, _), p| {
        for (ma, mb) in graded_component_basis(s, 1).iter().cartesian_product(graded_component_basis(s, 2).iter()) {
            let prod = mono_product(s, ma, mb);
            let expected = multidegree(s, ma).add(&multidegree(s, mb));
            p.check(prod.iter().all(|(m, _)| multidegree(s, m) == expected), || format!("degree not additive on {ma:?}·{mb:?}"));
        }
    });
    let retraction = probe_all(&triples, |(s, a, b, _), p| {
        for (r, c) in (1..=s.rows).cartesian_product(1..=s.cols) {
            let lhs = retract(&(a * b), r, c).expect("fits");
            let rhs = &retract(a, r, c).expect("fits") * &retract(b, r, c).expect("fits");
            p.check(lhs == rhs, || format!("retraction to {r}x{c} not multiplicative on {a}, {b}"));
        }
    });
    let minors_retract = {
        let mut p = Probe::new();
        let big = Shape::new(Family::X, max, max);
        for k in 1..=max as usize {
            for idx in all_minors(&big, k) {
                for (r, c) in (1..=max).cartesian_product(1..=max) {
                    let got = retract(&quantum_minor(big, &idx).unwrap(), r, c).unwrap();
                    let fits = idx.rows.iter().all(|&i| i <= r) && idx.cols.iter().all(|&j| j <= c);
                    let want = if fits { quantum_minor(Shape::new(Family::X, r, c), &idx).unwrap() } else { Element::zero(Shape::new(Family::X, r, c)) };
                    p.check(got == want, || format!("retract of [{:?}|{:?}] to {r}x{c}", idx.rows, idx.cols));
                }
            }
        }
        p
    };
    let centrality = {
        let mut p = Probe::new();
        for n in 1..=max {
            let s = Shape::new(Family::X, n, n);
            let d = quantum_minor(s, &MinorIndex::solid(1..=n, 1..=n)).unwrap();
            for g in 0..s.num_gens() as u8 {
                let x = Element::monomial(s, smallvec![g], RatFunc::one());
                p.check(&d * &x == &x * &d, || format!("det of M_{n} does not commute with {x}"));
            }
        }
        p
    };
    vec![
        assoc.finish("associativity"),
        additive.finish("multidegree additivity"),
        retraction.finish("retraction is multiplicative"),
        minors_retract.finish("retraction of minors"),
        centrality.finish("quantum determinant central"),
    ]
}

/// The distinguished minors `d_X, d_Y, d_Z, d_T` are normal with a diagonal
/// table, re-verified by `d·g = c_g·g·d`, for `m, n ≤ max_mn` and `t ≤ max_t`.
pub fn normality(max_mn: u8, max_t: u8) -> ComponentRecord {
    let mut cases: Vec<(Shape, MinorIndex)> = Vec::new();
    for t in 1..=max_t {
        cases.push((gl_shape(t), MinorIndex::solid(1..=t, 1..=t)));
        for (m, n) in (1..=max_mn).cartesian_product(1..=max_mn) {
            if t > m.min(n) {
                continue;
            }
            let s = Setting::new(m, t, n);
            cases.push((s.x_shape(), s.lower_left(m)));
            cases.push((s.y_shape(), s.lower_left(m)));
            cases.push((s.z_shape(), MinorIndex::solid(1..=t, 1..=t)));
        }
    }
    cases.sort_by_key(|(s, i)| (s.to_string(), i.rows.clone(), i.cols.clone()));
    cases.dedup_by(|a, b| a.0 == b.0 && a.1 == b.1);
    let probe = probe_all(&cases, |(s, idx), p| match normal_minor(*s, idx) {
        Err(e) => p.check(false, || format!("{s} [{:?}|{:?}]: {e}", idx.rows, idx.cols)),
        Ok(d) => {
            p.check(d.verify(), || format!("{} fails its own table", d.name()));
            let el = d.element();
            for g in 0..s.num_gens() as u8 {
                let x = Element::monomial(*s, smallvec![g], RatFunc::one());
                let c = d.scalar(g);
                p.check(el * &x == (&x * el).scale(&c), || format!("{}: d·g ≠ c·g·d for {x}", d.name()));
            }
        }
    });
    probe.finish(format!("normal minors, m,n ≤ {max_mn}, t ≤ {max_t}"))
}

fn is_scalar(h: &TensorElement) -> bool {
    h.exps().iter().all(|&e| e == 0) && h.terms().keys().all(|k| k.iter().all(|m| m.is_empty()))
}

fn pure(factors: Vec<Factor>, key: smallvec::SmallVec<[Monomial; 3]>) -> TensorElement {
    TensorElement::pure(factors, key, RatFunc::one())
}

/// Comodule laws and coinvariance facts in `O_q(V)` for one setting.
pub fn comodule_properties(setting: &Setting, degree: usize, samples: usize, seed: u64) -> Vec<ComponentRecord> {
    let t = setting.t;
    let (xs, ys, zs) = (setting.x_shape(), setting.y_shape(), setting.z_shape());
    let (yf, zf) = (setting.y_factor(false), setting.z_factor(false));
    let gamma = GammaCache::new(yf.clone(), zf.clone());
    let delta = comultiply_map(t);
    let counit = counit_map(t);
    let rho = rho_map(yf.clone(), t);
    let lambda = lambda_map(zf.clone(), t);
    let tag = |p: &str| format!("{p} ({},{},{})", setting.m, setting.t, setting.n);

    let xs_basis = monomials_up_to(&xs, degree);
    let image = probe_all(&xs_basis, |m, p| {
        let v = setting.theta_star(&Element::monomial(xs, m.clone(), RatFunc::one()));
        p.check(is_coinvariant(&v), || format!("θ*({m:?}) is not coinvariant"));
    });

    let a_list = monomials_up_to(&ys, degree);
    let b_list = monomials_up_to(&zs, degree);
    let rho_laws = probe_all(&a_list, |a, p| {
        let r = pure(vec![yf.clone()], smallvec![a.clone()]).apply_factor_map(0, &rho);
        let l1 = r.apply_factor_map(1, &delta);
        let l2 = r.apply_factor_map(0, &rho);
        p.check(l1.equals(&l2), || format!("ρ* not coassociative on {a:?}"));
        p.check(r.apply_factor_map(1, &counit).equals(&pure(vec![yf.clone()], smallvec![a.clone()])), || format!("ρ* counit fails on {a:?}"));
    });
    let lambda_laws = probe_all(&b_list, |b, p| {
        let r = pure(vec![zf.clone()], smallvec![b.clone()]).apply_factor_map(0, &lambda);
        let l1 = r.apply_factor_map(0, &delta);
        let l2 = r.apply_factor_map(1, &lambda);
        p.check(l1.equals(&l2), || format!("λ* not coassociative on {b:?}"));
        p.check(r.apply_factor_map(0, &counit).equals(&pure(vec![zf.clone()], smallvec![b.clone()])), || format!("λ* counit fails on {b:?}"));
    });
    let pairs: Vec<(Monomial, Monomial)> = a_list
        .iter()
        .cartesian_product(&b_list)
        .filter(|(a, b)| a.len() + b.len() <= degree)
        .map(|(a, b)| (a.clone(), b.clone()))
        .collect();
    let gamma_laws = probe_all(&pairs, |(a, b), p| {
        let g = gamma.pure(a, b);
        let l = g.apply_factor_map(0, &delta);
        let mut r = TensorElement::zero(l.factors().to_vec());
        for (k, c) in g.terms() {
            let h = TensorElement::pure(vec![gl_factor(t)], smallvec![k[0].clone()], c.clone()).with_denominator(0, g.exps()[0]);
            r = &r + &h.outer(&gamma.pure(&k[1], &k[2]));
        }
        p.check(l.equals(&r), || format!("γ* not coassociative on {a:?} ⊗ {b:?}"));
        let v = pure(vec![yf.clone(), zf.clone()], smallvec![a.clone(), b.clone()]);
        p.check(g.apply_factor_map(0, &counit).equals(&v), || format!("γ* counit fails on {a:?} ⊗ {b:?}"));
    });

    // Multiplicativity of γ* against a semi-coinvariant with central coefficient.
    let d_y = setting.v_element(&quantum_minor(ys, &setting.lower_left(setting.m)).unwrap(), &Element::one(zs));
    let d_z = setting.v_element(&Element::one(ys), &quantum_minor(zs, &MinorIndex::solid(1..=t, 1..=t)).unwrap());
    let mut semi = Probe::new();
    if t <= setting.m {
        semi.check(is_semi_coinvariant(&d_y, 1), || "d_Y ⊗ 1 is not semi-coinvariant of weight 1".into());
        semi.check(is_sl_coinvariant(&d_y), || "d_Y ⊗ 1 is not SL-coinvariant".into());
    }
    if t <= setting.n {
        semi.check(is_semi_coinvariant(&d_z, -1), || "1 ⊗ d_Z is not semi-coinvariant of weight -1".into());
    }
    if t >= 2 {
        let y11 = setting.v_element(&Element::generator(ys, 1, 1).unwrap(), &Element::one(zs));
        semi.check(!is_sl_coinvariant(&y11), || "Y[1,1] ⊗ 1 reported SL-coinvariant".into());
    }
    let mut rng = rng_for(seed, &tag("multiplicativity"));
    let ws: Vec<TensorElement> = (0..samples)
        .map(|_| setting.v_element(&random_element(ys, 2, 2, &mut rng), &random_element(zs, 2, 2, &mut rng)))
        .collect();
    let mult = probe_all(&ws, |w, p| {
        for z in [&d_y, &d_z] {
            if z.is_zero() {
                continue;
            }
            let lhs = gamma.apply(&(z * w));
            let rhs = &gamma.apply(z) * &gamma.apply(w);
            p.check(lhs.equals(&rhs), || format!("γ*(z w) ≠ γ*(z)γ*(w) for w = {w}"));
        }
    });
    let weight_mult = probe_all(&ws.iter().tuple_windows().map(|(a, b)| (a.clone(), b.clone())).collect::<Vec<_>>(), |(v, w), p| {
        let pi = torus_map(t);
        let g = |x: &TensorElement| gamma.apply(x).apply_factor_map(0, &pi);
        p.check(g(&(v * w)).equals(&(&g(v) * &g(w))), || format!("(π'⊗id)γ* not multiplicative on {v}, {w}"));
    });
    vec![
        image.finish(tag("image of θ* is coinvariant")),
        rho_laws.finish(tag("ρ* comodule laws")),
        lambda_laws.finish(tag("λ* comodule laws")),
        gamma_laws.finish(tag("γ* comodule laws")),
        semi.finish(tag("semi-coinvariant minors")),
        mult.finish(tag("γ* multiplicative at semi-coinvariants")),
        weight_mult.finish(tag("(π'⊗id)γ* multiplicative")),
    ]
}

/// Products of coinvariant basis vectors of `O_q(V)_{i,i}` and `O_q(V)_{k,k}`
/// with `i + k ≤ bound` are coinvariant.
pub fn coinvariant_closure(setting: &Setting, bound: usize, opts: &SuiteOptions) -> Result<ComponentRecord, SuiteError> {
    let gamma = GammaCache::new(setting.y_factor(false), setting.z_factor(false));
    let one = gl_one(setting.t);
    let mut bases: Vec<Vec<TensorElement>> = Vec::new();
    for i in 0..=bound {
        let ys = graded_component_basis(&setting.y_shape(), i);
        let zs = graded_component_basis(&setting.z_shape(), i);
        let space = BlockSpace::new(
            setting.v_factors(false),
            ys.iter().cartesian_product(&zs).map(|(a, b)| smallvec![a.clone(), b.clone()]),
        );
        let ker = space.kernel(|k| &gamma.pure(&k[0], &k[1]) - &one.outer(&space.basis_vector(k)), &opts.spec)?;
        let vecs = ker
            .rows()
            .iter()
            .map(|r| {
                let mut acc = TensorElement::zero(setting.v_factors(false));
                for (c, val) in r {
                    acc = &acc + &space.basis_vector(&space.frame.keys()[*c]).scale(val);
                }
                acc
            })
            .collect();
        bases.push(vecs);
    }
    let mut pairs = Vec::new();
    for i in 1..=bound {
        for k in 1..=bound - i {
            for a in &bases[i] {
                for b in &bases[k] {
                    pairs.push((a.clone(), b.clone()));
                }
            }
        }
    }
    let probe = probe_all(&pairs, |(a, b), p| {
        let prod = a * b;
        p.check(gamma.apply(&prod).equals(&one.outer(&prod)), || format!("product of coinvariants {a} · {b} is not coinvariant"));
    });
    let mut rec = probe.finish(format!("products of coinvariants ({},{},{}), i+k ≤ {bound}", setting.m, setting.t, setting.n));
    for (i, b) in bases.iter().enumerate() {
        rec.dims.insert(format!("basis({i},{i})"), b.len());
    }
    Ok(rec)
}

/// `(π'⊗id)γ*(v) = T^{j-i} ⊗ v` on random basis tensors.
pub fn torus_weights(settings: &[Setting], samples: usize, max_deg: usize, seed: u64) -> ComponentRecord {
    let mut rng = rng_for(seed, "torus weights");
    let cases: Vec<(Setting, TensorElement, (usize, usize))> = (0..samples)
        .map(|k| {
            let s = settings[k % settings.len()];
            let (i, j) = (rng.gen_range(0..=max_deg), rng.gen_range(0..=max_deg));
            let a = random_monomial(&s.y_shape(), i, &mut rng);
            let b = random_monomial(&s.z_shape(), j, &mut rng);
            (s, pure(s.v_factors(false), smallvec![a, b]), (i, j))
        })
        .collect();
    let probe = probe_all(&cases, |(_, v, bd), p| {
        p.check(torus_weight(v, *bd).unwrap_or(false), || format!("weight of {v} is not T^{}", bd.1 as i64 - bd.0 as i64));
    });
    probe.finish("torus weights")
}

fn loc_inj_square(
    p: &mut Probe,
    what: &str,
    x: &TensorElement,
    left: &[&AlgMap],
    right: &[(usize, &AlgMap)],
) {
    let mut l = x.clone();
    for m in left {
        l = l.apply_factor_map(0, m);
    }
    let mut r = x.clone();
    for (k, m) in right {
        r = r.apply_factor_map(*k, m);
    }
    p.check(l.equals(&r), || format!("{what} fails on {x}: {l} vs {r}"));
}

/// Identities around `O_q(V°)`, the localized image and the maps `i*`, `j*`.
pub fn localization_properties(n: u8, t: u8, samples: usize, seed: u64) -> Result<Vec<ComponentRecord>, SuiteError> {
    let s = Setting::new(n, t, n);
    let (ys, zs) = (s.y_shape(), s.z_shape());
    let (yf, zf, xf) = (s.y_factor(true), s.z_factor(true), s.x_loc());
    let gl = gl_factor(t);
    let tag = |p: &str| format!("{p} (n={n}, t={t})");
    let one_y = Element::one(ys);
    let one_z = Element::one(zs);

    // Inverse powers of d_Y ⊗ d_Z are coinvariant.
    let mut inv = Probe::new();
    for r in 1..=2 {
        let v = s.v_loc_element(&one_y, &one_z, r, r);
        inv.check(is_coinvariant(&v), || format!("(d_Y ⊗ d_Z)^-{r} is not coinvariant"));
    }

    // i* ∘ j* = id.
    let mut gens = vec![
        s.v_loc_element(&one_y, &one_z, 1, 0),
        s.v_loc_element(&one_y, &one_z, 0, 1),
        s.v_loc_element(&one_y, &one_z, 1, 1),
    ];
    for g in 0..ys.num_gens() as u8 {
        gens.push(s.v_loc_element(&Element::monomial(ys, smallvec![g], RatFunc::one()), &one_z, 0, 0));
    }
    for g in 0..zs.num_gens() as u8 {
        gens.push(s.v_loc_element(&one_y, &Element::monomial(zs, smallvec![g], RatFunc::one()), 0, 0));
    }
    let mut rng = rng_for(seed, &tag("i*j*"));
    let mut random = Vec::new();
    for _ in 0..samples {
        let mut acc = TensorElement::zero(s.v_factors(true));
        for _ in 0..2 {
            let da = rng.gen_range(0..=2usize);
            let db = rng.gen_range(0..=2 - da);
            let a = Element::monomial(ys, random_monomial(&ys, da, &mut rng), random_coeff(&mut rng));
            let b = Element::monomial(zs, random_monomial(&zs, db, &mut rng), RatFunc::one());
            acc = &acc + &s.v_loc_element(&a, &b, rng.gen_range(0..=1), rng.gen_range(0..=1));
        }
        random.push(acc);
    }
    let ij = |vs: &[TensorElement]| {
        probe_all(vs, |v, p| match s.j_star(v).and_then(|j| s.i_star(&j)) {
            Ok(back) => p.check(back.equals(v), || format!("i*(j*({v})) = {back}")),
            Err(e) => p.check(false, || format!("i*∘j* failed on {v}: {e}")),
        })
    };
    let ij_gens = ij(&gens);
    let ij_random = ij(&random);

    // j* sends coinvariants to ξ*-coinvariants and intertwines the coactions.
    let mu = s.mu_star_circ();
    let mut coinvs: Vec<TensorElement> = (0..s.x_shape().num_gens() as u8)
        .map(|g| TensorElement::from_element(xf.clone(), &Element::monomial(s.x_shape(), smallvec![g], RatFunc::one())).apply_factor_map(0, &mu))
        .collect();
    coinvs.push(s.v_loc_element(&one_y, &one_z, 1, 1));
    let c2 = &coinvs[0] * &coinvs[coinvs.len() - 1];
    coinvs.push(c2);
    let j_coinv = probe_all(&coinvs, |c, p| match s.j_star(c).map_err(SuiteError::from).and_then(|j| Ok((is_xi_coinvariant(&j).unwrap_or(false), j))) {
        Ok((ok, j)) => p.check(ok, || format!("j*({c}) = {j} is not ξ*-coinvariant")),
        Err(e) => p.check(false, || format!("j* failed on {c}: {e}")),
    });
    let intertwine = probe_all(&gens, |v, p| {
        let run = || -> Result<bool, SuiteError> {
            let g = gamma_star(v);
            let mut lhs = TensorElement::zero(vec![gl.clone(), xf.clone(), gl.clone()]);
            for (k, c) in g.terms() {
                let h = TensorElement::pure(vec![gl.clone()], smallvec![k[0].clone()], c.clone()).with_denominator(0, g.exps()[0]);
                let rest = pure(s.v_factors(true), smallvec![k[1].clone(), k[2].clone()])
                    .with_denominator(0, g.exps()[1])
                    .with_denominator(1, g.exps()[2]);
                lhs = &lhs + &h.outer(&s.j_star(&rest)?);
            }
            let rhs = xi_star(&s.j_star(v)?).map_err(|e| SuiteError::Precondition(e.to_string()))?;
            Ok(lhs.equals(&rhs))
        };
        match run() {
            Ok(ok) => p.check(ok, || format!("(id⊗j*)γ* ≠ ξ* j* on {v}")),
            Err(e) => p.check(false, || format!("{v}: {e}")),
        }
    });

    // Compatibility of the embeddings with the coactions.
    let rho = rho_map(yf.clone(), t);
    let lambda = lambda_map(zf.clone(), t);
    let delta = comultiply_map(t);
    let (inj_y, inj_z, inj_gl, gl_z, gl_y) =
        (s.inj_y_to_locimage(), s.inj_z_to_locimage(), s.inj_gl_to_locimage(), s.inj_gl_to_z(), s.inj_gl_to_y());
    let mut squares = Probe::new();
    let mut y_cases: Vec<TensorElement> = (0..ys.num_gens() as u8).map(|g| pure(vec![yf.clone()], smallvec![smallvec![g]])).collect();
    y_cases.push(TensorElement::from_element(yf.clone(), s.d_y()?.element()));
    y_cases.push(TensorElement::one(vec![yf.clone()]).with_denominator(0, 1));
    for x in &y_cases {
        loc_inj_square(&mut squares, "μ*°∘inj = (id⊗inj)∘ρ*°", x, &[&inj_y, &mu], &[(0, &rho), (1, &gl_z)]);
    }
    let mut z_cases: Vec<TensorElement> = (0..zs.num_gens() as u8).map(|g| pure(vec![zf.clone()], smallvec![smallvec![g]])).collect();
    z_cases.push(TensorElement::from_element(zf.clone(), s.d_z()?.element()));
    z_cases.push(TensorElement::one(vec![zf.clone()]).with_denominator(0, 1));
    for x in &z_cases {
        loc_inj_square(&mut squares, "μ*°∘inj = (inj⊗id)∘λ*°", x, &[&inj_z, &mu], &[(0, &lambda), (0, &gl_y)]);
    }
    let mut gl_cases: Vec<TensorElement> = (0..gl.shape.num_gens() as u8).map(|g| pure(vec![gl.clone()], smallvec![smallvec![g]])).collect();
    gl_cases.push(d_t_power(t, -1));
    for x in &gl_cases {
        loc_inj_square(&mut squares, "μ*°∘inj∘inj = (inj⊗inj)∘Δ", x, &[&inj_gl, &mu], &[(0, &delta), (0, &gl_y), (1, &gl_z)]);
        loc_inj_square(&mut squares, "λ*°∘inj = (id⊗inj)∘Δ", x, &[&gl_z, &lambda], &[(0, &delta), (1, &gl_z)]);
    }

    // Ore arithmetic in O_q(M°_{n,t}).
    let mut rng = rng_for(seed, &tag("ore"));
    let triples: Vec<[TensorElement; 3]> = (0..samples)
        .map(|_| {
            std::array::from_fn(|_| {
                TensorElement::from_element(yf.clone(), &random_element(ys, 2, 2, &mut rng)).with_denominator(0, rng.gen_range(0..=2))
            })
        })
        .collect();
    let ore = probe_all(&triples, |[a, b, c], p| {
        p.check((&(a * b) * c).equals(&(a * &(b * c))), || format!("localized product not associative on {a}, {b}, {c}"));
    });
    let mut rng = rng_for(seed, &tag("ore embedding"));
    let pairs: Vec<(Element, Element)> =
        (0..samples).map(|_| (random_element(ys, 2, 2, &mut rng), random_element(ys, 2, 2, &mut rng))).collect();
    let embed = probe_all(&pairs, |(a, b), p| {
        let l = &TensorElement::from_element(yf.clone(), a) * &TensorElement::from_element(yf.clone(), b);
        let r = TensorElement::from_element(yf.clone(), &(a * b));
        p.check(l.equals(&r), || format!("embedding not multiplicative on {a}, {b}"));
    });

    Ok(vec![
        inv.finish(tag("inverse powers of d_Y⊗d_Z coinvariant")),
        ij_gens.finish(tag("i*∘j* = id on generators")),
        ij_random.finish(tag("i*∘j* = id on random elements")),
        j_coinv.finish(tag("j* of coinvariants is ξ*-coinvariant")),
        intertwine.finish(tag("(id⊗j*)γ* = ξ*j*")),
        squares.finish(tag("embedding squares")),
        ore.finish(tag("localized product associative")),
        embed.finish(tag("localization embedding multiplicative")),
    ])
}

/// `x ⊗ 1` is `ξ*`-coinvariant and `x ⊗ (h - ε(h))` is not, for random
/// `x` in the localized image and nonscalar `h` in `O_q(GL_t)`.
pub fn xi_coinvariants(n: u8, t: u8, xi_samples: usize, seed: u64) -> ComponentRecord {
    let s = Setting::new(n, t, n);
    let xf = s.x_loc();
    let gl = gl_factor(t);
    let tag = |p: &str| format!("{p} (n={n}, t={t})");
    let mut rng = rng_for(seed, &tag("xi"));
    let xi_cases: Vec<(TensorElement, TensorElement)> = (0..xi_samples)
        .map(|_| {
            let d = rng.gen_range(0..=2);
            let x = pure(vec![xf.clone()], smallvec![random_monomial(&s.x_shape(), d, &mut rng)]).with_denominator(0, rng.gen_range(0..=1));
            loop {
                let hd = rng.gen_range(1..=2);
                let h = gl_element(t, &Element::monomial(gl.shape, random_monomial(&gl.shape, hd, &mut rng), RatFunc::one()), rng.gen_range(0..=1));
                let h = (&h - &gl_one(t).scale(&gl_counit(&h))).strip();
                if !is_scalar(&h) {
                    break (x, h);
                }
            }
        })
        .collect();
    let xi = probe_all(&xi_cases, |(x, h), p| {
        let trivial = x.outer(&gl_one(t));
        p.check(is_xi_coinvariant(&trivial).unwrap_or(false), || format!("{trivial} is not ξ*-coinvariant"));
        let other = x.outer(h);
        p.check(!is_xi_coinvariant(&other).unwrap_or(true), || format!("{other} reported ξ*-coinvariant"));
    });

    xi.finish(tag("ξ*-coinvariants are M⊗1"))
}

/// Dimension checks for the ideals generated by powers of the distinguished
/// minors: `dim ⟨d_Y^s⟩_i = dim O_q(M_{n,t})_{i-st}`, the same for `d_Z`, and
/// `dim θ*(⟨d_X⟩)_d = dim θ*(O_q(M_n))_{d-t}`.
pub fn ideal_dimensions(n: u8, t: u8, max_deg: usize, opts: &SuiteOptions) -> Result<Vec<ComponentRecord>, SuiteError> {
    let s = Setting::new(n, t, n);
    let count = |gens: usize, d: usize| binomial(gens + d - 1, d);
    let mut out = Vec::new();
    for (label, shape, minor) in [
        ("d_Y", s.y_shape(), s.lower_left(n)),
        ("d_Z", s.z_shape(), MinorIndex::solid(1..=t, 1..=t)),
    ] {
        let d = quantum_minor(shape, &minor).expect("fits");
        for power in 1..=2u32 {
            let tower = ideal_from_seeds(shape, vec![d.pow(power)], max_deg, &opts.spec)?;
            let mut rec = ComponentRecord::check(format!("dim ⟨{label}^{power}⟩ (n={n}, t={t})"), true, None);
            let mut ok = true;
            let mut witness = None;
            for (deg, level) in tower.iter().enumerate() {
                let got: usize = level.values().map(Vec::len).sum();
                let shift = power as usize * t as usize;
                let want = if deg >= shift { count(shape.num_gens(), deg - shift) } else { 0 };
                rec.dims.insert(format!("d={deg}"), got);
                if got != want && witness.is_none() {
                    ok = false;
                    witness = Some(format!("degree {deg}: dim {got}, expected {want}"));
                }
            }
            rec.verdict = super::Verdict::from_bool(ok);
            rec.witness = witness;
            out.push(rec);
        }
    }
    let theta = s.theta();
    let xs = s.x_shape();
    let d_x = quantum_minor(xs, &s.lower_left(n)).expect("fits");
    let tower = ideal_from_seeds(xs, vec![d_x], max_deg, &opts.spec)?;
    let image_rank = |vs: Vec<TensorElement>| -> Result<usize, SuiteError> {
        let frame = Frame::from_keys(vs.iter().flat_map(|v| v.terms().keys().cloned()));
        let rows = vs.iter().map(|v| Ok(opts.spec.apply(frame.coordinates(v)?)?)).collect::<Result<Vec<_>, SuiteError>>()?;
        Ok(rank(&rows))
    };
    let mut rec = ComponentRecord::check(format!("dim θ*⟨d_X⟩ (n={n}, t={t})"), true, None);
    let mut ok = true;
    for (deg, level) in tower.iter().enumerate() {
        let mut got = 0;
        for es in level.values() {
            got += image_rank(es.iter().map(|e| s.theta_star(e)).collect())?;
        }
        let mut want = 0;
        if deg >= t as usize {
            for monos in component_blocks(&xs, deg - t as usize).values() {
                want += image_rank(theta.images(monos))?;
            }
        }
        rec.dims.insert(format!("d={deg}"), got);
        if got != want && rec.witness.is_none() {
            ok = false;
            rec.witness = Some(format!("degree {deg}: dim {got}, expected {want}"));
        }
    }
    rec.verdict = super::Verdict::from_bool(ok);
    out.push(rec);
    Ok(out)
}

/// Which structural groups to run, and at what size.
#[derive(Debug, Clone)]
pub struct StructureConfig {
    pub hopf_ranks: Vec<u8>,
    pub comultiplication_rank: u8,
    pub minor_bound: u8,
    pub algebra_bound: u8,
    pub algebra_samples: usize,
    pub normal_bound: (u8, u8),
    /// Settings for the comodule laws, with the degree bound used there and
    /// for the closure of coinvariants.
    pub comodule_settings: Vec<(Setting, usize)>,
    pub torus_samples: usize,
    pub localization: Vec<(u8, u8)>,
    pub localization_samples: usize,
    pub xi_samples: usize,
    pub ideal_degree: usize,
}

impl StructureConfig {
    /// The full battery at desk scale.
    pub fn standard() -> Self {
        StructureConfig {
            hopf_ranks: vec![1, 2, 3],
            comultiplication_rank: 3,
            minor_bound: 3,
            algebra_bound: 3,
            algebra_samples: 24,
            normal_bound: (3, 2),
            comodule_settings: vec![(Setting::new(2, 1, 2), 3), (Setting::new(2, 1, 3), 2), (Setting::new(3, 2, 2), 2)],
            torus_samples: 100,
            localization: vec![(2, 1), (3, 2)],
            localization_samples: 20,
            xi_samples: 50,
            ideal_degree: 4,
        }
    }

    /// A battery sized to one setting.
    pub fn for_setting(s: &Setting, degree: usize) -> Self {
        let k = s.m.max(s.n).min(3);
        let square = s.m == s.n && s.n > s.t;
        StructureConfig {
            hopf_ranks: (1..=s.t.min(3)).collect(),
            comultiplication_rank: s.t.min(3),
            minor_bound: k,
            algebra_bound: k,
            algebra_samples: 12,
            normal_bound: (k, s.t.min(2)),
            comodule_settings: vec![(*s, degree.clamp(1, 3))],
            torus_samples: 100,
            localization: if square { vec![(s.n, s.t)] } else { Vec::new() },
            localization_samples: 20,
            xi_samples: 50,
            ideal_degree: degree.min(4),
        }
    }
}

/// Runs every structural group of `config`.
pub fn verify_structure_suite(config: &StructureConfig, opts: &SuiteOptions) -> Result<VerificationReport, SuiteError> {
    let start = Instant::now();
    let seed = opts.seed;
    let mut components = Vec::new();
    for &t in &config.hopf_ranks {
        components.extend(hopf_axioms(t));
    }
    components.push(minor_comultiplication(config.comultiplication_rank));
    components.push(laplace_agreement(config.minor_bound));
    components.extend(algebra_properties(config.algebra_bound, config.algebra_samples, seed));
    components.push(normality(config.normal_bound.0, config.normal_bound.1));
    for (s, d) in &config.comodule_settings {
        components.extend(comodule_properties(s, *d, 10, seed));
        components.push(coinvariant_closure(s, *d, opts)?);
    }
    let settings: Vec<Setting> = config.comodule_settings.iter().map(|p| p.0).collect();
    if !settings.is_empty() {
        components.push(torus_weights(&settings, config.torus_samples, 2, seed));
    }
    for &(n, t) in &config.localization {
        components.extend(localization_properties(n, t, config.localization_samples, seed)?);
        components.push(xi_coinvariants(n, t, config.xi_samples, seed));
        components.extend(ideal_dimensions(n, t, config.ideal_degree, opts)?);
    }
    let p = params(&[
        ("hopf_ranks", json!(config.hopf_ranks)),
        ("comodule_settings", json!(config.comodule_settings.iter().map(|(s, d)| json!([s.m, s.t, s.n, d])).collect::<Vec<_>>())),
        ("localization", json!(config.localization)),
        ("seed", json!(seed)),
    ]);
    Ok(opts.report("structure", p, components, start))
}
