//! Normal elements, Ore localizations at their powers, the `inj` embeddings
//! and the maps `μ*°`, `i*`, `j*`.
//!
//! Elements of `O_q(M^{≤t,∘}_n)` are represented by witnesses in
//! `O_q(M_n)[d_X^{-1}]`: the quotient by `I_{t+1}` is the kernel of `θ*`, so
//! every identity is decided after applying `μ*°`, where it is exact.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use thiserror::Error;

use crate::comodule::{lambda_map, rho_map, theta_map};
use crate::hopf::{antipode_inverse_map, antipode_map, comultiply_map, gl_factor};
use crate::qalgebra::{quantum_minor, AlgebraError, Element, Family, MinorIndex, Monomial, Shape};
use crate::scalar::{RatFunc, Rational};
use crate::setting::Setting;
use crate::tensor::{AlgMap, Factor, TensorElement, TensorError};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum LocalizationError {
    #[error("element is not normal: no scalar for generator {0}")]
    NotNormal(String),
    #[error("element is zero")]
    Zero,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Tensor(#[from] TensorError),
}

/// A normal element `d` with its diagonal commutation table `d g = c_g g d`.
#[derive(Debug)]
pub struct NormalElement {
    name: String,
    element: Element,
    scalars: Vec<(Rational, i32)>,
    powers: Mutex<HashMap<u32, Element>>,
}

impl NormalElement {
    /// Computes `d g` and `g d` for every generator and extracts the ratio.
    pub fn discover(name: impl Into<String>, d: Element) -> Result<Self, LocalizationError> {
        if d.is_zero() {
            return Err(LocalizationError::Zero);
        }
        let shape = d.shape();
        let mut scalars = Vec::with_capacity(shape.num_gens());
        for g in 0..shape.num_gens() as u8 {
            let gen = Element::monomial(shape, smallvec::smallvec![g], RatFunc::one());
            let dg = &d * &gen;
            let gd = &gen * &d;
            let (m, c) = gd.leading_term().expect("product of nonzero elements is nonzero");
            let ratio = &dg.coeff(m) / c;
            let (r, c) = shape.pos(g);
            let label = format!("{}[{r},{c}]", shape.family);
            if dg != gd.scale(&ratio) {
                return Err(LocalizationError::NotNormal(label));
            }
            let unit = ratio.as_unit_monomial().ok_or(LocalizationError::NotNormal(label))?;
            scalars.push(unit);
        }
        Ok(NormalElement { name: name.into(), element: d, scalars, powers: Mutex::new(HashMap::new()) })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn shape(&self) -> Shape {
        self.element.shape()
    }

    pub fn element(&self) -> &Element {
        &self.element
    }

    /// `c_g` with `d g = c_g g d`.
    pub fn scalar(&self, g: u8) -> RatFunc {
        let (r, k) = &self.scalars[g as usize];
        RatFunc::q_pow(*k).scale(r)
    }

    /// The full table, generator by generator.
    pub fn table(&self) -> Vec<RatFunc> {
        (0..self.scalars.len() as u8).map(|g| self.scalar(g)).collect()
    }

    /// Coefficient of `τ^{-s}(m)`, i.e. `prod_{g in m} c_g^{-s}`.
    pub fn twist_inverse(&self, m: &Monomial, s: u32) -> RatFunc {
        let mut r = Rational::from_integer(1.into());
        let mut k: i64 = 0;
        for &g in m {
            let (cr, ck) = &self.scalars[g as usize];
            if !num_traits::One::is_one(cr) {
                r *= num_traits::pow(cr.recip(), s as usize);
            }
            k -= *ck as i64 * s as i64;
        }
        RatFunc::q_pow(k as i32).scale(&r)
    }

    /// Re-verifies `d g = c_g g d` for every generator.
    pub fn verify(&self) -> bool {
        let shape = self.shape();
        (0..shape.num_gens() as u8).all(|g| {
            let gen = Element::monomial(shape, smallvec::smallvec![g], RatFunc::one());
            &self.element * &gen == (&gen * &self.element).scale(&self.scalar(g))
        })
    }

    /// `d^e` in normal form (memoized).
    pub fn power(&self, e: u32) -> Element {
        if let Some(p) = self.powers.lock().unwrap().get(&e) {
            return p.clone();
        }
        let p = if e == 0 { Element::one(self.shape()) } else { &self.power(e - 1) * &self.element };
        self.powers.lock().unwrap().insert(e, p.clone());
        p
    }
}

/// Registered normal minor `[rows|cols]` of a shape (memoized process-wide).
pub fn normal_minor(shape: Shape, idx: &MinorIndex) -> Result<Arc<NormalElement>, LocalizationError> {
    type Registry = Mutex<HashMap<(Shape, MinorIndex), Arc<NormalElement>>>;
    static REGISTRY: OnceLock<Registry> = OnceLock::new();
    let reg = REGISTRY.get_or_init(Default::default);
    if let Some(n) = reg.lock().unwrap().get(&(shape, idx.clone())) {
        return Ok(n.clone());
    }
    let fmt = |v: &[u8]| v.iter().map(u8::to_string).collect::<Vec<_>>().join(",");
    let name = format!("{}:[{}|{}]", shape, fmt(&idx.rows), fmt(&idx.cols));
    let n = Arc::new(NormalElement::discover(name, quantum_minor(shape, idx)?)?);
    reg.lock().unwrap().insert((shape, idx.clone()), n.clone());
    Ok(n)
}

/// Free-standing form of [`NormalElement::discover`].
pub fn discover_commutation(d: &Element) -> Result<NormalElement, LocalizationError> {
    NormalElement::discover(format!("{}", d), d.clone())
}

/// `(a d^{-s}) (b d^{-r}) = a τ^{-s}(b) d^{-(s+r)}`.
pub fn loc_multiply(u: &TensorElement, v: &TensorElement) -> Result<TensorElement, LocalizationError> {
    Ok(u.try_mul(v)?)
}

/// Map sending generator `g` to `targets[g]` (a generator of the target factor).
fn generator_embedding(domain: Factor, target: Factor, images: Vec<(u8, u8)>) -> AlgMap {
    let gens = images
        .into_iter()
        .map(|(r, c)| {
            TensorElement::from_element(target.clone(), &Element::generator(target.shape, r, c).unwrap())
        })
        .collect();
    let dinv = target.normal.as_ref().map(|_| TensorElement::one(vec![target.clone()]).with_denominator(0, 1));
    AlgMap { domain, target: vec![target], gens, dinv, anti: false }
}

fn positions(shape: Shape) -> impl Iterator<Item = (u8, u8)> {
    (0..shape.num_gens() as u8).map(move |g| shape.pos(g))
}

impl Setting {
    /// `O_q(M_n)[d_X^{-1}]`, the witness model of the localized image.
    pub fn x_loc(&self) -> Factor {
        Factor::localized(self.d_x().expect("d_X is normal"))
    }

    /// `inj: O_q(M°_{n,t}) -> X°`, `Y[i,j] -> X[i,j]`.
    pub fn inj_y_to_locimage(&self) -> AlgMap {
        let y = self.y_factor(true);
        generator_embedding(y.clone(), self.x_loc(), positions(y.shape).collect())
    }

    /// `inj: O_q(M°_{t,n}) -> X°`, `Z[i,j] -> X[n-t+i,j]`.
    pub fn inj_z_to_locimage(&self) -> AlgMap {
        let z = self.z_factor(true);
        let off = self.m - self.t;
        generator_embedding(z.clone(), self.x_loc(), positions(z.shape).map(|(i, j)| (off + i, j)).collect())
    }

    /// `O_q(GL_t) -> X°`, `T[i,j] -> X[n-t+i,j]`, `d_T^{-1} -> d_X^{-1}`.
    pub fn inj_gl_to_locimage(&self) -> AlgMap {
        let g = gl_factor(self.t);
        let off = self.m - self.t;
        generator_embedding(g.clone(), self.x_loc(), positions(g.shape).map(|(i, j)| (off + i, j)).collect())
    }

    /// `inj: O_q(GL_t) -> O_q(M°_{t,n})`, `T[i,j] -> Z[i,j]`.
    pub fn inj_gl_to_z(&self) -> AlgMap {
        let g = gl_factor(self.t);
        generator_embedding(g.clone(), self.z_factor(true), positions(g.shape).collect())
    }

    /// `inj: O_q(GL_t) -> O_q(M°_{n,t})`, `T[i,j] -> Y[n-t+i,j]`.
    pub fn inj_gl_to_y(&self) -> AlgMap {
        let g = gl_factor(self.t);
        let off = self.m - self.t;
        generator_embedding(g.clone(), self.y_factor(true), positions(g.shape).map(|(i, j)| (off + i, j)).collect())
    }

    /// `μ*°`: `θ*` extended by `d_X^{-1} -> d_Y^{-1} ⊗ d_Z^{-1}`.
    pub fn mu_star_circ(&self) -> AlgMap {
        theta_map(self, self.x_loc(), self.y_factor(true), self.z_factor(true))
    }

    /// `i*(w ⊗ h) = μ*°(w) · (1 ⊗ inj(h))` on `X° ⊗ O_q(GL_t)`.
    pub fn i_star(&self, w: &TensorElement) -> Result<TensorElement, LocalizationError> {
        let v = w.apply_factor_map(0, &self.mu_star_circ());
        let v = v.apply_factor_map(2, &self.inj_gl_to_z());
        Ok(v.multiply_factors(1, 2)?)
    }

    /// `j*(a ⊗ b) = Σ b_0 S^{-1}(b_{-1}) a_0 ⊗ S(a_1) b_{-2}` on `O_q(V°)`.
    pub fn j_star(&self, v: &TensorElement) -> Result<TensorElement, LocalizationError> {
        let t = self.t;
        let x = v.apply_factor_map(0, &rho_map(self.y_factor(true), t));
        let x = x.apply_factor_map(2, &lambda_map(self.z_factor(true), t));
        let x = x.apply_factor_map(2, &comultiply_map(t));
        // [a0, a1, b-2, b-1, b0]
        let x = x.apply_factor_map(3, &antipode_inverse_map(t).then_on(0, &self.inj_gl_to_locimage()));
        let x = x.apply_factor_map(4, &self.inj_z_to_locimage());
        let x = x.apply_factor_map(1, &antipode_map(t));
        let x = x.apply_factor_map(0, &self.inj_y_to_locimage());
        let x = x.permute(&[4, 3, 0, 1, 2]);
        let x = x.multiply_factors(0, 1)?;
        let x = x.multiply_factors(0, 1)?;
        Ok(x.multiply_factors(1, 2)?)
    }

    /// Elements of `O_q(V°)` as numerator tensors `a ⊗ b` over `d_Y^{-s} ⊗ d_Z^{-r}`.
    pub fn v_loc_element(&self, a: &Element, b: &Element, s: u32, r: u32) -> TensorElement {
        TensorElement::tensor(self.v_factors(true), &[a, b]).with_denominator(0, s).with_denominator(1, r)
    }
}

/// True when `[rows|cols]` of the shape is normal with a unit commutation table.
pub fn is_normal_minor(shape: Shape, idx: &MinorIndex) -> bool {
    normal_minor(shape, idx).is_ok()
}

/// Family-tagged shape helper.
pub fn shape(family: Family, rows: u8, cols: u8) -> Shape {
    Shape::new(family, rows, cols)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lower_left_generator_table() {
        let y = Shape::new(Family::Y, 2, 1);
        let d = normal_minor(y, &MinorIndex::new(vec![2], vec![1])).unwrap();
        assert_eq!(d.scalar(y.gen(1, 1)), RatFunc::q_pow(-1));
        assert_eq!(d.scalar(y.gen(2, 1)), RatFunc::one());
    }

    #[test]
    fn determinant_is_central() {
        for t in 1..=3u8 {
            let s = Shape::new(Family::T, t, t);
            let d = normal_minor(s, &MinorIndex::solid(1..=t, 1..=t)).unwrap();
            assert!(d.table().iter().all(RatFunc::is_one));
        }
    }

    #[test]
    fn non_normal_generator_is_rejected() {
        let s = Shape::new(Family::X, 2, 2);
        let g = Element::generator(s, 1, 1).unwrap();
        assert!(matches!(discover_commutation(&g), Err(LocalizationError::NotNormal(_))));
    }

    #[test]
    fn ore_products() {
        let y = Shape::new(Family::Y, 2, 1);
        let d = normal_minor(y, &MinorIndex::new(vec![2], vec![1])).unwrap();
        let f = Factor::localized(d.clone());
        let y11 = TensorElement::from_element(f.clone(), &Element::generator(y, 1, 1).unwrap());
        let inv = TensorElement::one(vec![f.clone()]).with_denominator(0, 1);
        let prod = loc_multiply(&inv, &y11).unwrap();
        let expected = y11.scale(&RatFunc::q()).with_denominator(0, 1);
        assert_eq!(prod.exps(), &[1]);
        assert_eq!(prod.terms(), expected.terms());
        let dd = TensorElement::from_element(f.clone(), d.element());
        let cancel = loc_multiply(&dd.clone().with_denominator(0, 1), &dd).unwrap();
        assert!(cancel.equals(&dd));
        assert_eq!(cancel.strip().exps(), &[0]);
    }
}
