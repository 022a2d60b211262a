//! The Hopf algebra `O_q(GL_t) = O_q(M_t)[d_T^{-1}]` and the torus `O_q(K^×)`.
//!
//! Elements are single-factor [`TensorElement`]s over [`gl_factor`]; `d_T` is
//! central, so denominators never twist.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::localization::normal_minor;
use crate::qalgebra::{quantum_minor, Element, Family, MinorIndex, Shape};
use crate::scalar::RatFunc;
use crate::tensor::{AlgMap, Factor, TensorElement};

pub type GLElement = TensorElement;
pub type TorusElement = TensorElement;

pub fn gl_shape(t: u8) -> Shape {
    Shape::new(Family::T, t, t)
}

/// `O_q(GL_t)` as a tensor factor localized at `d_T`.
pub fn gl_factor(t: u8) -> Factor {
    Factor::localized(normal_minor(gl_shape(t), &MinorIndex::solid(1..=t, 1..=t)).expect("d_T is central"))
}

/// `x · d_T^{-s}`.
pub fn gl_element(t: u8, x: &Element, s: u32) -> GLElement {
    TensorElement::from_element(gl_factor(t), x).with_denominator(0, s)
}

pub fn gl_generator(t: u8, i: u8, j: u8) -> GLElement {
    gl_element(t, &Element::generator(gl_shape(t), i, j).unwrap(), 0)
}

pub fn gl_one(t: u8) -> GLElement {
    TensorElement::one(vec![gl_factor(t)])
}

pub fn d_t(t: u8) -> Element {
    quantum_minor(gl_shape(t), &MinorIndex::solid(1..=t, 1..=t)).unwrap()
}

/// `d_T^{k}` for any integer `k`.
pub fn d_t_power(t: u8, k: i32) -> GLElement {
    if k >= 0 {
        gl_element(t, &d_t(t).pow(k as u32), 0)
    } else {
        gl_one(t).with_denominator(0, (-k) as u32)
    }
}

/// `T^k` in `O_q(K^×) = K[T^{±1}]`, modelled as `O_q(GL_1)`.
pub fn torus_power(k: i32) -> TorusElement {
    d_t_power(1, k)
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum MapKind {
    Delta,
    Counit,
    Antipode,
    AntipodeInverse,
    Torus,
}

fn cached(kind: MapKind, t: u8, build: impl FnOnce() -> AlgMap) -> Arc<AlgMap> {
    static MAPS: OnceLock<Mutex<HashMap<(MapKind, u8), Arc<AlgMap>>>> = OnceLock::new();
    let maps = MAPS.get_or_init(Default::default);
    if let Some(m) = maps.lock().unwrap().get(&(kind, t)) {
        return m.clone();
    }
    let m = Arc::new(build());
    maps.lock().unwrap().insert((kind, t), m.clone());
    m
}

fn gens_of(t: u8) -> impl Iterator<Item = (u8, u8)> {
    let s = gl_shape(t);
    (0..s.num_gens() as u8).map(move |g| s.pos(g))
}

/// `Δ(T_ij) = Σ_k T_ik ⊗ T_kj`, `Δ(d_T^{-1}) = d_T^{-1} ⊗ d_T^{-1}`.
pub fn comultiply_map(t: u8) -> Arc<AlgMap> {
    cached(MapKind::Delta, t, || {
        let f = gl_factor(t);
        let target = vec![f.clone(), f.clone()];
        let gens = gens_of(t)
            .map(|(i, j)| {
                let mut acc = TensorElement::zero(target.clone());
                for k in 1..=t {
                    acc = &acc + &gl_generator(t, i, k).outer(&gl_generator(t, k, j));
                }
                acc
            })
            .collect();
        let dinv = TensorElement::one(target.clone()).with_denominator(0, 1).with_denominator(1, 1);
        AlgMap { domain: f, target, gens, dinv: Some(dinv), anti: false }
    })
}

/// `ε(T_ij) = δ_ij`, `ε(d_T^{-1}) = 1`.
pub fn counit_map(t: u8) -> Arc<AlgMap> {
    cached(MapKind::Counit, t, || {
        let gens = gens_of(t)
            .map(|(i, j)| TensorElement::scalar(vec![], if i == j { RatFunc::one() } else { RatFunc::zero() }))
            .collect();
        AlgMap { domain: gl_factor(t), target: vec![], gens, dinv: Some(TensorElement::one(vec![])), anti: false }
    })
}

/// Cofactor `A_jk`: the minor deleting row `j` and column `k` (1 when `t = 1`).
fn cofactor(t: u8, j: u8, k: u8) -> Element {
    if t == 1 {
        return Element::one(gl_shape(1));
    }
    let rows = (1..=t).filter(|&r| r != j).collect();
    let cols = (1..=t).filter(|&c| c != k).collect();
    quantum_minor(gl_shape(t), &MinorIndex::new(rows, cols)).unwrap()
}

fn antipode_gen(t: u8, k: u8, j: u8) -> GLElement {
    let c = RatFunc::neg_q_pow(k as i32 - j as i32);
    gl_element(t, &cofactor(t, j, k).scale(&c), 1)
}

/// Anti-morphism with `S(T_kj) = (-q)^{k-j} A_jk d_T^{-1}` and `S(d_T^{-1}) = d_T`.
pub fn antipode_map(t: u8) -> Arc<AlgMap> {
    cached(MapKind::Antipode, t, || {
        let gens = gens_of(t).map(|(k, j)| antipode_gen(t, k, j)).collect();
        let dinv = gl_element(t, &d_t(t), 0);
        AlgMap { domain: gl_factor(t), target: vec![gl_factor(t)], gens, dinv: Some(dinv), anti: true }
    })
}

/// `S^{-1}(T_ij) = q^{2(j-i)} S(T_ij)`, again an anti-morphism.
pub fn antipode_inverse_map(t: u8) -> Arc<AlgMap> {
    cached(MapKind::AntipodeInverse, t, || {
        let gens = gens_of(t)
            .map(|(i, j)| antipode_gen(t, i, j).scale(&RatFunc::q_pow(2 * (j as i32 - i as i32))))
            .collect();
        let dinv = gl_element(t, &d_t(t), 0);
        AlgMap { domain: gl_factor(t), target: vec![gl_factor(t)], gens, dinv: Some(dinv), anti: true }
    })
}

/// `π'`: `T_ii -> T`, `T_ij -> 0`, `d_T^{-1} -> T^{-t}`.
pub fn torus_map(t: u8) -> Arc<AlgMap> {
    cached(MapKind::Torus, t, || {
        let target = vec![gl_factor(1)];
        let gens = gens_of(t)
            .map(|(i, j)| if i == j { torus_power(1) } else { TensorElement::zero(target.clone()) })
            .collect();
        AlgMap { domain: gl_factor(t), target, gens, dinv: Some(torus_power(-(t as i32))), anti: false }
    })
}

fn gl_rank(x: &GLElement) -> u8 {
    assert_eq!(x.factors().len(), 1, "expected an O_q(GL_t) element");
    x.factors()[0].shape.rows
}

pub fn gl_comultiply(x: &GLElement) -> TensorElement {
    x.apply_factor_map(0, &comultiply_map(gl_rank(x)))
}

pub fn gl_counit(x: &GLElement) -> RatFunc {
    x.apply_factor_map(0, &counit_map(gl_rank(x))).as_scalar()
}

pub fn antipode(x: &GLElement) -> GLElement {
    x.apply_factor_map(0, &antipode_map(gl_rank(x)))
}

pub fn antipode_inverse(x: &GLElement) -> GLElement {
    x.apply_factor_map(0, &antipode_inverse_map(gl_rank(x)))
}

pub fn torus_project(x: &GLElement) -> TorusElement {
    x.apply_factor_map(0, &torus_map(gl_rank(x)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coproduct_of_generator() {
        let d = gl_comultiply(&gl_generator(2, 1, 1));
        let expected = &gl_generator(2, 1, 1).outer(&gl_generator(2, 1, 1))
            + &gl_generator(2, 1, 2).outer(&gl_generator(2, 2, 1));
        assert!(d.equals(&expected));
        let one = gl_one(2);
        assert!(gl_comultiply(&one).equals(&one.outer(&one)));
    }

    #[test]
    fn determinant_is_grouplike() {
        for t in 1..=3 {
            let d = d_t_power(t, 1);
            assert!(gl_comultiply(&d).equals(&d.outer(&d)));
            assert!(gl_counit(&d).is_one());
        }
    }

    #[test]
    fn counit_values() {
        assert!(gl_counit(&gl_generator(2, 1, 2)).is_zero());
        assert!(gl_counit(&gl_one(3)).is_one());
    }

    #[test]
    fn antipode_values() {
        assert!(antipode(&gl_generator(1, 1, 1)).equals(&d_t_power(1, -1)));
        for t in 1..=3 {
            assert!(antipode(&d_t_power(t, 1)).equals(&d_t_power(t, -1)));
            assert!(antipode_inverse(&d_t_power(t, 1)).equals(&d_t_power(t, -1)));
        }
        let s12 = antipode(&gl_generator(2, 1, 2));
        let expected = gl_generator(2, 1, 2).scale(&-RatFunc::q_pow(-1)).with_denominator(0, 1);
        assert!(s12.equals(&expected));
        assert!(antipode_inverse(&gl_generator(1, 1, 1)).equals(&d_t_power(1, -1)));
        assert!(antipode_inverse(&s12).equals(&gl_generator(2, 1, 2)));
    }

    #[test]
    fn torus_projection() {
        assert!(torus_project(&gl_generator(2, 1, 1)).equals(&torus_power(1)));
        assert!(torus_project(&gl_generator(2, 1, 2)).is_zero());
        for t in 1..=3 {
            assert!(torus_project(&d_t_power(t, 1)).equals(&torus_power(t as i32)));
        }
    }
}
