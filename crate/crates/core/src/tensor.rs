//! Tensor products of (localized) quantum matrix algebras.
//!
//! A [`TensorElement`] is `N · (d_1^{-e_1} ⊗ ... ⊗ d_k^{-e_k})`: a numerator
//! `N` in the plain tensor product of the factor algebras, followed on the
//! right by powers of the inverted normal element of each localized factor.
//! Localized elements, `O_q(GL_t)` elements and elements of `O_q(V)` are all
//! special cases. Multiplication is factorwise with the commutation twist
//! `d^{-s} b = τ^{-s}(b) d^{-s}`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;
use thiserror::Error;

use crate::localization::NormalElement;
use crate::qalgebra::{mono_product, Element, Monomial, Shape};
use crate::scalar::RatFunc;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum TensorError {
    #[error("factor mismatch: {0}")]
    FactorMismatch(String),
    #[error("host mismatch: {0} vs {1}")]
    HostMismatch(String, String),
}

/// One tensor factor: an algebra, optionally localized at a normal element.
#[derive(Clone, Debug)]
pub struct Factor {
    pub shape: Shape,
    pub normal: Option<Arc<NormalElement>>,
}

impl Factor {
    pub fn plain(shape: Shape) -> Self {
        Factor { shape, normal: None }
    }

    pub fn localized(normal: Arc<NormalElement>) -> Self {
        Factor { shape: normal.shape(), normal: Some(normal) }
    }

    pub fn host(&self) -> Option<&str> {
        self.normal.as_ref().map(|n| n.name())
    }

    pub fn describe(&self) -> String {
        match self.host() {
            Some(h) => format!("{}[{}^-1]", self.shape, h),
            None => self.shape.to_string(),
        }
    }
}

impl PartialEq for Factor {
    fn eq(&self, other: &Self) -> bool {
        self.shape == other.shape && self.host() == other.host()
    }
}

impl Eq for Factor {}

pub type Key = SmallVec<[Monomial; 3]>;
pub type Exps = SmallVec<[u32; 4]>;

#[derive(Clone, Debug)]
pub struct TensorElement {
    factors: Vec<Factor>,
    terms: BTreeMap<Key, RatFunc>,
    exps: Exps,
}

fn add_term(terms: &mut BTreeMap<Key, RatFunc>, k: Key, c: RatFunc) {
    use std::collections::btree_map::Entry;
    if c.is_zero() {
        return;
    }
    match terms.entry(k) {
        Entry::Vacant(e) => {
            e.insert(c);
        }
        Entry::Occupied(mut e) => {
            let s = &*e.get() + &c;
            if s.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
    }
}

impl TensorElement {
    pub fn zero(factors: Vec<Factor>) -> Self {
        let exps = smallvec::smallvec![0; factors.len()];
        TensorElement { factors, terms: BTreeMap::new(), exps }
    }

    pub fn scalar(factors: Vec<Factor>, c: RatFunc) -> Self {
        let key: Key = factors.iter().map(|_| Monomial::new()).collect();
        Self::pure(factors, key, c)
    }

    pub fn one(factors: Vec<Factor>) -> Self {
        Self::scalar(factors, RatFunc::one())
    }

    pub fn pure(factors: Vec<Factor>, key: Key, c: RatFunc) -> Self {
        assert_eq!(key.len(), factors.len());
        let mut t = Self::zero(factors);
        add_term(&mut t.terms, key, c);
        t
    }

    /// `e` viewed in a single (possibly localized) factor.
    pub fn from_element(factor: Factor, e: &Element) -> Self {
        assert!(factor.shape.same_algebra(&e.shape()), "element outside factor");
        let mut t = Self::zero(vec![factor]);
        for (m, c) in e.terms() {
            t.terms.insert(smallvec::smallvec![m.clone()], c.clone());
        }
        t
    }

    /// `e_1 ⊗ ... ⊗ e_k`.
    pub fn tensor(factors: Vec<Factor>, parts: &[&Element]) -> Self {
        assert_eq!(factors.len(), parts.len());
        let mut t = Self::zero(factors);
        for combo in parts.iter().map(|e| e.terms().collect_vec()).multi_cartesian_product() {
            let key: Key = combo.iter().map(|(m, _)| (*m).clone()).collect();
            let c = combo.iter().fold(RatFunc::one(), |acc, (_, c)| &acc * c);
            add_term(&mut t.terms, key, c);
        }
        if parts.is_empty() {
            t.terms.insert(Key::new(), RatFunc::one());
        }
        t
    }

    /// Concatenation `self ⊗ other` of two tensor elements.
    pub fn outer(&self, other: &TensorElement) -> TensorElement {
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        let mut exps = self.exps.clone();
        exps.extend(other.exps.iter().copied());
        let mut terms = BTreeMap::new();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                let mut k = ka.clone();
                k.extend(kb.iter().cloned());
                add_term(&mut terms, k, ca * cb);
            }
        }
        TensorElement { factors, terms, exps }
    }

    /// Same numerator with `d_k^{-e_k}` appended on the right of factor `k`.
    pub fn with_denominator(mut self, k: usize, e: u32) -> Self {
        assert!(e == 0 || self.factors[k].normal.is_some(), "factor is not localized");
        self.exps[k] += e;
        self
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn terms(&self) -> &BTreeMap<Key, RatFunc> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Single-factor numerator as an [`Element`].
    pub fn numerator_element(&self) -> Element {
        assert_eq!(self.factors.len(), 1);
        let mut out = Element::zero(self.factors[0].shape);
        for (k, c) in &self.terms {
            out = &out + &Element::monomial(self.factors[0].shape, k[0].clone(), c.clone());
        }
        out
    }

    /// Value of a zero-factor tensor.
    pub fn as_scalar(&self) -> RatFunc {
        assert!(self.factors.is_empty());
        self.terms.get(&Key::new()).cloned().unwrap_or_else(RatFunc::zero)
    }

    fn check_same(&self, other: &Self) -> Result<(), TensorError> {
        if self.factors != other.factors {
            return Err(TensorError::FactorMismatch(format!(
                "{} vs {}",
                self.describe_factors(),
                other.describe_factors()
            )));
        }
        Ok(())
    }

    pub fn describe_factors(&self) -> String {
        self.factors.iter().map(Factor::describe).join(" ⊗ ")
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        let mut out = Self::zero(self.factors.clone());
        out.exps = self.exps.clone();
        if !c.is_zero() {
            out.terms = self.terms.iter().map(|(k, x)| (k.clone(), x * c)).collect();
        }
        out
    }

    /// Applies `f` to every coefficient (used for specialization).
    pub fn map_coeffs(&self, mut f: impl FnMut(&RatFunc) -> RatFunc) -> Self {
        let mut out = Self::zero(self.factors.clone());
        out.exps = self.exps.clone();
        for (k, c) in &self.terms {
            add_term(&mut out.terms, k.clone(), f(c));
        }
        out
    }

    /// Rewrites the numerator so that the denominators become `target`.
    pub fn raise_to(&self, target: &[u32]) -> Self {
        let mut cur = self.clone();
        for j in 0..cur.factors.len() {
            assert!(target[j] >= cur.exps[j], "cannot lower denominators by raising");
            let delta = target[j] - cur.exps[j];
            if delta == 0 || cur.terms.is_empty() {
                cur.exps[j] = target[j];
                continue;
            }
            let normal = cur.factors[j].normal.clone().expect("raised factor must be localized");
            let dpow = normal.power(delta);
            let shape = cur.factors[j].shape;
            let mut terms = BTreeMap::new();
            for (k, c) in &cur.terms {
                for (dm, dc) in dpow.terms() {
                    let cdc = c * dc;
                    for (m, pc) in mono_product(&shape, &k[j], dm).iter() {
                        let mut nk = k.clone();
                        nk[j] = m.clone();
                        add_term(&mut terms, nk, &cdc * pc);
                    }
                }
            }
            cur.terms = terms;
            cur.exps[j] = target[j];
        }
        cur
    }

    fn common_exps(&self, other: &Self) -> Exps {
        self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect()
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, TensorError> {
        self.check_same(other)?;
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        let e = self.common_exps(other);
        let mut a = if self.exps == e { self.clone() } else { self.raise_to(&e) };
        let b = if other.exps == e { std::borrow::Cow::Borrowed(other) } else { std::borrow::Cow::Owned(other.raise_to(&e)) };
        for (k, c) in &b.terms {
            add_term(&mut a.terms, k.clone(), c.clone());
        }
        Ok(a)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, TensorError> {
        self.try_add(&other.scale(&-RatFunc::one()))
    }

    /// Exact equality of the represented (localized) values.
    pub fn equals(&self, other: &Self) -> bool {
        match self.try_sub(other) {
            Ok(d) => d.is_zero(),
            Err(_) => false,
        }
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, TensorError> {
        self.check_same(other)?;
        let nf = self.factors.len();
        let mut out = Self::zero(self.factors.clone());
        out.exps = self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                let mut c = ca * cb;
                for j in 0..nf {
                    if self.exps[j] > 0 {
                        let n = self.factors[j].normal.as_ref().unwrap();
                        c = &c * &n.twist_inverse(&kb[j], self.exps[j]);
                    }
                }
                let parts: Vec<_> = (0..nf).map(|j| mono_product(&self.factors[j].shape, &ka[j], &kb[j])).collect();
                if nf == 0 {
                    add_term(&mut out.terms, Key::new(), c);
                    continue;
                }
                for combo in parts.iter().map(|p| p.iter()).multi_cartesian_product() {
                    let key: Key = combo.iter().map(|(m, _)| m.clone()).collect();
                    let cc = combo.iter().fold(c.clone(), |acc, (_, x)| &acc * x);
                    add_term(&mut out.terms, key, cc);
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.factors.clone());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Removes common right factors `d_k` from the numerator where possible.
    pub fn strip(&self) -> Self {
        let mut cur = self.clone();
        for j in 0..cur.factors.len() {
            while cur.exps[j] > 0 {
                match cur.divide_factor_right(j) {
                    Some(next) => cur = next,
                    None => break,
                }
            }
        }
        cur
    }

    fn divide_factor_right(&self, j: usize) -> Option<Self> {
        let normal = self.factors[j].normal.as_ref()?;
        let shape = self.factors[j].shape;
        let mut groups: BTreeMap<Key, Element> = BTreeMap::new();
        for (k, c) in &self.terms {
            let mut rest = k.clone();
            let m = rest.remove(j);
            let e = groups.entry(rest).or_insert_with(|| Element::zero(shape));
            *e = &*e + &Element::monomial(shape, m, c.clone());
        }
        let mut out = Self::zero(self.factors.clone());
        out.exps = self.exps.clone();
        out.exps[j] -= 1;
        for (rest, e) in groups {
            let g = e.divide_right(normal.element())?;
            for (m, c) in g.terms() {
                let mut k = rest.clone();
                k.insert(j, m.clone());
                out.terms.insert(k, c.clone());
            }
        }
        Some(out)
    }

    /// Reorders factors: output factor `i` is input factor `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.factors.len());
        let factors = perm.iter().map(|&p| self.factors[p].clone()).collect();
        let exps = perm.iter().map(|&p| self.exps[p]).collect();
        let terms = self
            .terms
            .iter()
            .map(|(k, c)| (perm.iter().map(|&p| k[p].clone()).collect(), c.clone()))
            .collect();
        TensorElement { factors, terms, exps }
    }

    /// Multiplies factor `k` by factor `l` (in that order) into one factor
    /// placed at position `min(k, l)`.
    pub fn multiply_factors(&self, k: usize, l: usize) -> Result<Self, TensorError> {
        assert_ne!(k, l);
        if self.factors[k] != self.factors[l] {
            return Err(TensorError::FactorMismatch(format!(
                "{} vs {}",
                self.factors[k].describe(),
                self.factors[l].describe()
            )));
        }
        let pos = k.min(l);
        let drop = k.max(l);
        let shape = self.factors[k].shape;
        let mut factors = self.factors.clone();
        factors.remove(drop);
        let mut exps = self.exps.clone();
        exps[pos] = self.exps[k] + self.exps[l];
        exps.remove(drop);
        let mut out = TensorElement { factors, terms: BTreeMap::new(), exps };
        let ek = self.exps[k];
        for (key, c) in &self.terms {
            let mut c = c.clone();
            if ek > 0 {
                c = &c * &self.factors[k].normal.as_ref().unwrap().twist_inverse(&key[l], ek);
            }
            for (m, pc) in mono_product(&shape, &key[k], &key[l]).iter() {
                let mut nk = key.clone();
                nk[pos] = m.clone();
                nk.remove(drop);
                add_term(&mut out.terms, nk, &c * pc);
            }
        }
        Ok(out)
    }

    /// Applies an algebra (anti-)morphism to factor `k`, splicing its target
    /// factors in place.
    pub fn apply_factor_map(&self, k: usize, map: &AlgMap) -> Self {
        assert!(
            self.factors[k].shape.same_algebra(&map.domain.shape),
            "map domain {} does not match factor {}",
            map.domain.describe(),
            self.factors[k].describe()
        );
        let e = self.exps[k];
        let mut cache = MonoImages::new(map);
        let dinv_pow = if e > 0 {
            let dinv = map.dinv.as_ref().expect("map has no image for the inverted element");
            Some(dinv.pow(e))
        } else {
            None
        };
        let mut images: HashMap<Monomial, TensorElement> = HashMap::new();
        for key in self.terms.keys() {
            if !images.contains_key(&key[k]) {
                let mut img = cache.image(&key[k]);
                if let Some(dp) = &dinv_pow {
                    img = if map.anti { dp * &img } else { &img * dp };
                }
                images.insert(key[k].clone(), img);
            }
        }
        let width = map.target.len();
        let mut mid_exps: Exps = smallvec::smallvec![0; width];
        for img in images.values() {
            for (a, b) in mid_exps.iter_mut().zip(img.exps.iter()) {
                *a = (*a).max(*b);
            }
        }
        for img in images.values_mut() {
            if img.exps != mid_exps {
                *img = img.raise_to(&mid_exps);
            }
        }
        let mut factors = self.factors[..k].to_vec();
        factors.extend(map.target.iter().cloned());
        factors.extend(self.factors[k + 1..].iter().cloned());
        let mut exps: Exps = self.exps[..k].iter().copied().collect();
        exps.extend(mid_exps.iter().copied());
        exps.extend(self.exps[k + 1..].iter().copied());
        let mut out = TensorElement { factors, terms: BTreeMap::new(), exps };
        for (key, c) in &self.terms {
            let img = &images[&key[k]];
            for (ik, ic) in &img.terms {
                let mut nk: Key = key[..k].iter().cloned().collect();
                nk.extend(ik.iter().cloned());
                nk.extend(key[k + 1..].iter().cloned());
                add_term(&mut out.terms, nk, c * ic);
            }
        }
        out
    }

    /// Terms grouped by arbitrary key function (e.g. bidegree).
    pub fn split_by<K: Ord>(&self, mut f: impl FnMut(&Key) -> K) -> BTreeMap<K, TensorElement> {
        let mut out: BTreeMap<K, TensorElement> = BTreeMap::new();
        for (k, c) in &self.terms {
            out.entry(f(k))
                .or_insert_with(|| {
                    let mut z = Self::zero(self.factors.clone());
                    z.exps = self.exps.clone();
                    z
                })
                .terms
                .insert(k.clone(), c.clone());
        }
        out
    }
}

struct MonoImages<'a> {
    map: &'a AlgMap,
    memo: HashMap<Monomial, TensorElement>,
}

impl<'a> MonoImages<'a> {
    fn new(map: &'a AlgMap) -> Self {
        MonoImages { map, memo: HashMap::new() }
    }

    fn image(&mut self, m: &Monomial) -> TensorElement {
        if m.is_empty() {
            return TensorElement::one(self.map.target.clone());
        }
        if let Some(v) = self.memo.get(m) {
            return v.clone();
        }
        let mut prefix = m.clone();
        let last = prefix.pop().unwrap();
        let head = self.image(&prefix);
        let g = &self.map.gens[last as usize];
        let img = if self.map.anti { g * &head } else { &head * g };
        self.memo.insert(m.clone(), img.clone());
        img
    }
}

/// An algebra morphism (or anti-morphism) out of one factor, given on
/// generators and, for localized domains, on the inverted element.
#[derive(Clone, Debug)]
pub struct AlgMap {
    pub domain: Factor,
    pub target: Vec<Factor>,
    pub gens: Vec<TensorElement>,
    pub dinv: Option<TensorElement>,
    pub anti: bool,
}

impl AlgMap {
    /// Images of numerator monomials, sharing one prefix memo.
    pub fn images(&self, ms: &[Monomial]) -> Vec<TensorElement> {
        let mut cache = MonoImages::new(self);
        ms.iter().map(|m| cache.image(m)).collect()
    }

    /// Image of an element of the domain (as a single-factor tensor).
    pub fn apply(&self, x: &TensorElement) -> TensorElement {
        assert_eq!(x.factors().len(), 1);
        x.apply_factor_map(0, self)
    }

    /// `other ∘ self` applied to target factor `k` of `self`'s images.
    pub fn then_on(&self, k: usize, other: &AlgMap) -> AlgMap {
        assert!(!other.anti || self.target.len() == 1, "anti-morphism composed on one factor of a tensor");
        let gens = self.gens.iter().map(|g| g.apply_factor_map(k, other)).collect();
        let dinv = self.dinv.as_ref().map(|d| d.apply_factor_map(k, other));
        let mut target = self.target[..k].to_vec();
        target.extend(other.target.iter().cloned());
        target.extend(self.target[k + 1..].iter().cloned());
        AlgMap { domain: self.domain.clone(), target, gens, dinv, anti: self.anti != other.anti }
    }
}

impl PartialEq for TensorElement {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other)
    }
}

impl std::ops::Add for &TensorElement {
    type Output = TensorElement;
    fn add(self, rhs: &TensorElement) -> TensorElement {
        self.try_add(rhs).expect("tensor factor mismatch")
    }
}

impl std::ops::Sub for &TensorElement {
    type Output = TensorElement;
    fn sub(self, rhs: &TensorElement) -> TensorElement {
        self.try_sub(rhs).expect("tensor factor mismatch")
    }
}

impl std::ops::Mul for &TensorElement {
    type Output = TensorElement;
    fn mul(self, rhs: &TensorElement) -> TensorElement {
        self.try_mul(rhs).expect("tensor factor mismatch")
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let body = self
            .terms
            .iter()
            .map(|(k, c)| {
                let parts = k
                    .iter()
                    .zip(&self.factors)
                    .map(|(m, fa)| {
                        let e = Element::monomial(fa.shape, m.clone(), RatFunc::one());
                        e.to_string()
                    })
                    .join(" ⊗ ");
                if c.is_one() {
                    parts
                } else {
                    format!("({c})*{parts}")
                }
            })
            .join(" + ");
        let dens: Vec<String> = self
            .factors
            .iter()
            .zip(&self.exps)
            .filter(|(_, &e)| e > 0)
            .map(|(fa, e)| format!("{}^-{e}", fa.host().unwrap()))
            .collect();
        if dens.is_empty() {
            f.write_str(&body)
        } else {
            write!(f, "[{body}] * {}", dens.join(" * "))
        }
    }
}

#[derive(Serialize, Deserialize)]
pub struct TensorRepr {
    pub factors: Vec<FactorRepr>,
    pub denominators: Vec<u32>,
    pub terms: Vec<(Vec<Vec<(u8, u8)>>, RatFunc)>,
}

#[derive(Serialize, Deserialize)]
pub struct FactorRepr {
    pub shape: Shape,
    pub host: Option<String>,
}

impl TensorElement {
    /// Serializable view: factors with their hosts, denominator exponents,
    /// and `(monomial tuple, scalar)` pairs.
    pub fn to_repr(&self) -> TensorRepr {
        TensorRepr {
            factors: self
                .factors
                .iter()
                .map(|f| FactorRepr { shape: f.shape, host: f.host().map(str::to_string) })
                .collect(),
            denominators: self.exps.to_vec(),
            terms: self
                .terms
                .iter()
                .map(|(k, c)| {
                    let k = k
                        .iter()
                        .zip(&self.factors)
                        .map(|(m, fa)| m.iter().map(|&g| fa.shape.pos(g)).collect())
                        .collect();
                    (k, c.clone())
                })
                .collect(),
        }
    }
}

impl Serialize for TensorElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_repr().serialize(s)
    }
}
