//! Coactions on `O_q(V) = O_q(M_{m,t}) ⊗ O_q(M_{t,n})` and the comparison map
//! `θ*` (the faithful model of `μ*`).

use std::collections::HashMap;
use std::sync::Mutex;

use thiserror::Error;

use crate::hopf::{antipode_map, comultiply_map, d_t_power, gl_factor, gl_generator, gl_one, torus_map, torus_power};
use crate::qalgebra::{Element, Monomial};
use crate::scalar::RatFunc;
use crate::setting::Setting;
use crate::tensor::{AlgMap, Factor, Key, TensorElement};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ComoduleError {
    #[error("element is not homogeneous of bidegree ({0}, {1})")]
    NotHomogeneous(usize, usize),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
}

fn generator(f: &Factor, i: u8, j: u8) -> TensorElement {
    TensorElement::from_element(f.clone(), &Element::generator(f.shape, i, j).unwrap())
}

fn inverse_pair(target: &[Factor]) -> Option<TensorElement> {
    if target.iter().all(|f| f.normal.is_some()) {
        let mut one = TensorElement::one(target.to_vec());
        for k in 0..target.len() {
            one = one.with_denominator(k, 1);
        }
        Some(one)
    } else {
        None
    }
}

/// `θ*(X_ij) = Σ_k Y_ik ⊗ Z_kj`; on a localized domain `d_X^{-1} -> d_Y^{-1} ⊗ d_Z^{-1}`.
pub fn theta_map(s: &Setting, x: Factor, y: Factor, z: Factor) -> AlgMap {
    let target = vec![y.clone(), z.clone()];
    let mut gens = Vec::new();
    for g in 0..x.shape.num_gens() as u8 {
        let (i, j) = x.shape.pos(g);
        let mut acc = TensorElement::zero(target.clone());
        for k in 1..=s.t {
            acc = &acc + &generator(&y, i, k).outer(&generator(&z, k, j));
        }
        gens.push(acc);
    }
    let dinv = x.normal.as_ref().and_then(|_| inverse_pair(&target));
    AlgMap { domain: x, target, gens, dinv, anti: false }
}

/// `ρ*(Y_ij) = Σ_k Y_ik ⊗ T_kj`, with `ρ*°(d_Y^{-1}) = d_Y^{-1} ⊗ d_T^{-1}`.
pub fn rho_map(y: Factor, t: u8) -> AlgMap {
    let target = vec![y.clone(), gl_factor(t)];
    let gens = (0..y.shape.num_gens() as u8)
        .map(|g| {
            let (i, j) = y.shape.pos(g);
            let mut acc = TensorElement::zero(target.clone());
            for k in 1..=t {
                acc = &acc + &generator(&y, i, k).outer(&gl_generator(t, k, j));
            }
            acc
        })
        .collect();
    let dinv = y.normal.as_ref().and_then(|_| inverse_pair(&target));
    AlgMap { domain: y, target, gens, dinv, anti: false }
}

/// `λ*(Z_ij) = Σ_k T_ik ⊗ Z_kj`, with `λ*°(d_Z^{-1}) = d_T^{-1} ⊗ d_Z^{-1}`.
pub fn lambda_map(z: Factor, t: u8) -> AlgMap {
    let target = vec![gl_factor(t), z.clone()];
    let gens = (0..z.shape.num_gens() as u8)
        .map(|g| {
            let (i, j) = z.shape.pos(g);
            let mut acc = TensorElement::zero(target.clone());
            for k in 1..=t {
                acc = &acc + &gl_generator(t, i, k).outer(&generator(&z, k, j));
            }
            acc
        })
        .collect();
    let dinv = z.normal.as_ref().and_then(|_| inverse_pair(&target));
    AlgMap { domain: z, target, gens, dinv, anti: false }
}

impl Setting {
    pub fn theta(&self) -> AlgMap {
        theta_map(self, self.x_factor(), self.y_factor(false), self.z_factor(false))
    }

    /// `θ*(x)` for `x` in `O_q(M_{m,n})`.
    pub fn theta_star(&self, x: &Element) -> TensorElement {
        TensorElement::from_element(self.x_factor(), x).apply_factor_map(0, &self.theta())
    }

    /// `a ⊗ b` in `O_q(V)`.
    pub fn v_element(&self, a: &Element, b: &Element) -> TensorElement {
        TensorElement::tensor(self.v_factors(false), &[a, b])
    }
}

fn rank_of(v: &TensorElement) -> u8 {
    v.factors()[0].shape.cols
}

/// `γ*(a ⊗ b) = Σ S(a_1) b_{-1} ⊗ a_0 ⊗ b_0` on `O_q(V)` or `O_q(V°)`.
pub fn gamma_star(v: &TensorElement) -> TensorElement {
    assert_eq!(v.factors().len(), 2, "γ* acts on a two-factor tensor");
    let t = rank_of(v);
    let x = v.apply_factor_map(0, &rho_map(v.factors()[0].clone(), t));
    let x = x.apply_factor_map(2, &lambda_map(v.factors()[1].clone(), t));
    let x = x.apply_factor_map(1, &antipode_map(t));
    let x = x.permute(&[1, 2, 0, 3]);
    x.multiply_factors(0, 1).expect("both factors are O_q(GL_t)")
}

/// `γ*` on pure basis tensors `a ⊗ b` of `O_q(V)`, memoizing the one-sided
/// pieces `(id ⊗ S)ρ*(a)` and `λ*(b)`.
pub struct GammaCache {
    y: Factor,
    z: Factor,
    rho: AlgMap,
    lambda: AlgMap,
    left: Mutex<HashMap<Monomial, TensorElement>>,
    right: Mutex<HashMap<Monomial, TensorElement>>,
}

impl GammaCache {
    pub fn new(y: Factor, z: Factor) -> Self {
        let t = y.shape.cols;
        GammaCache {
            rho: rho_map(y.clone(), t),
            lambda: lambda_map(z.clone(), t),
            y,
            z,
            left: Mutex::new(HashMap::new()),
            right: Mutex::new(HashMap::new()),
        }
    }

    fn left(&self, a: &Monomial) -> TensorElement {
        if let Some(v) = self.left.lock().unwrap().get(a) {
            return v.clone();
        }
        let t = self.y.shape.cols;
        let x = TensorElement::pure(vec![self.y.clone()], smallvec::smallvec![a.clone()], RatFunc::one());
        let v = x.apply_factor_map(0, &self.rho).apply_factor_map(1, &antipode_map(t));
        self.left.lock().unwrap().insert(a.clone(), v.clone());
        v
    }

    fn right(&self, b: &Monomial) -> TensorElement {
        if let Some(v) = self.right.lock().unwrap().get(b) {
            return v.clone();
        }
        let x = TensorElement::pure(vec![self.z.clone()], smallvec::smallvec![b.clone()], RatFunc::one());
        let v = x.apply_factor_map(0, &self.lambda);
        self.right.lock().unwrap().insert(b.clone(), v.clone());
        v
    }

    /// `γ*(a ⊗ b)` for monomials `a`, `b`.
    pub fn pure(&self, a: &Monomial, b: &Monomial) -> TensorElement {
        let x = self.left(a).outer(&self.right(b)).permute(&[1, 2, 0, 3]);
        x.multiply_factors(0, 1).expect("both factors are O_q(GL_t)")
    }

    /// `γ*(v)` for an element of `O_q(V)` without denominators.
    pub fn apply(&self, v: &TensorElement) -> TensorElement {
        assert!(v.exps().iter().all(|&e| e == 0));
        let t = self.y.shape.cols;
        let mut parts: Vec<TensorElement> = Vec::new();
        for (k, c) in v.terms() {
            parts.push(self.pure(&k[0], &k[1]).scale(c));
        }
        let mut acc = TensorElement::zero(vec![crate::hopf::gl_factor(t), self.y.clone(), self.z.clone()]);
        for p in &parts {
            acc = &acc + p;
        }
        acc
    }
}

/// `ρ*` applied to the first factor of an element of `O_q(M_{m,t})`.
pub fn rho_star(a: &TensorElement) -> TensorElement {
    let t = a.factors()[0].shape.cols;
    a.apply_factor_map(0, &rho_map(a.factors()[0].clone(), t))
}

/// `λ*` applied to an element of `O_q(M_{t,n})`.
pub fn lambda_star(b: &TensorElement) -> TensorElement {
    let t = b.factors()[0].shape.rows;
    b.apply_factor_map(0, &lambda_map(b.factors()[0].clone(), t))
}

pub fn is_coinvariant(v: &TensorElement) -> bool {
    gamma_star(v).equals(&gl_one(rank_of(v)).outer(v))
}

/// `γ*(v) = d_T^{-s} ⊗ v`.
pub fn is_semi_coinvariant(v: &TensorElement, s: i32) -> bool {
    gamma_star(v).equals(&d_t_power(rank_of(v), -s).outer(v))
}

pub fn bidegree(k: &Key) -> (usize, usize) {
    (k[0].len(), k[1].len())
}

/// Coinvariance under `O_q(SL_t)`: every bidegree component `(i, j)` needs
/// `t | i - j` and semi-coinvariance with `s = (i - j)/t`.
pub fn is_sl_coinvariant(v: &TensorElement) -> bool {
    let t = rank_of(v) as i64;
    v.split_by(bidegree).into_iter().all(|((i, j), w)| {
        let diff = i as i64 - j as i64;
        diff % t == 0 && is_semi_coinvariant(&w, (diff / t) as i32)
    })
}

/// `(π' ⊗ id) γ*(v) = T^{j-i} ⊗ v` for `v` homogeneous of bidegree `(i, j)`.
pub fn torus_weight(v: &TensorElement, expected: (usize, usize)) -> Result<bool, ComoduleError> {
    if v.terms().keys().any(|k| bidegree(k) != expected) {
        return Err(ComoduleError::NotHomogeneous(expected.0, expected.1));
    }
    let t = rank_of(v);
    let lhs = gamma_star(v).apply_factor_map(0, &torus_map(t));
    let w = expected.1 as i32 - expected.0 as i32;
    Ok(lhs.equals(&torus_power(w).outer(v)))
}

/// `ξ*(x ⊗ h) = Σ h_1 ⊗ x ⊗ h_2` on `M ⊗ O_q(GL_t)`.
pub fn xi_star(v: &TensorElement) -> Result<TensorElement, ComoduleError> {
    if v.factors().len() != 2 || v.factors()[1].shape.family != crate::qalgebra::Family::T {
        return Err(ComoduleError::ShapeMismatch(v.describe_factors()));
    }
    let t = v.factors()[1].shape.rows;
    Ok(v.apply_factor_map(1, &comultiply_map(t)).permute(&[1, 0, 2]))
}

pub fn is_xi_coinvariant(v: &TensorElement) -> Result<bool, ComoduleError> {
    let t = v.factors()[1].shape.rows;
    Ok(xi_star(v)?.equals(&gl_one(t).outer(v)))
}
