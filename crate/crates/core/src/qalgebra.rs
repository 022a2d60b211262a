//! Quantum matrix algebras `O_q(M_{m,n})` in PBW normal form.
//!
//! Generators are numbered row-major, `X[i,j] -> (i-1)*cols + (j-1)`, and a
//! monomial is the non-decreasing list of its generator numbers. Products are
//! straightened with the rewrite rules below; results are memoized per shape.
//!
//! For an out-of-order adjacent pair `X[k,l] X[i,j]` (with `(k,l) > (i,j)`):
//!
//! * same row or same column: `X[k,l] X[i,j] = q^-1 X[i,j] X[k,l]`
//! * `k > i, l < j`: the generators commute
//! * `k > i, l > j`: `X[k,l] X[i,j] = X[i,j] X[k,l] - (q - q^-1) X[i,l] X[k,j]`

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;
use thiserror::Error;

use crate::scalar::RatFunc;

/// Text of the rewrite rules; hashed into report fingerprints.
pub const RELATIONS: &str = "order=row-major(row,col); \
same-row: X[i,l]X[i,j] = q^-1 X[i,j]X[i,l] (j<l); \
same-col: X[k,j]X[i,j] = q^-1 X[i,j]X[k,j] (i<k); \
anti-diagonal: X[k,l]X[i,j] = X[i,j]X[k,l] (i<k, l<j); \
diagonal: X[k,l]X[i,j] = X[i,j]X[k,l] - (q - q^-1) X[i,l]X[k,j] (i<k, j<l)";

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("shape mismatch: {0} vs {1}")]
    ShapeMismatch(Shape, Shape),
    #[error("index out of shape {0}")]
    IndexOutOfShape(Shape),
}

/// Generator family, used only for naming.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    X,
    Y,
    Z,
    T,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Family::X => "X",
            Family::Y => "Y",
            Family::Z => "Z",
            Family::T => "T",
        };
        f.write_str(c)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Shape {
    pub rows: u8,
    pub cols: u8,
    pub family: Family,
}

impl Shape {
    pub fn new(family: Family, rows: u8, cols: u8) -> Self {
        assert!(rows >= 1 && cols >= 1, "shape must be at least 1x1");
        assert!((rows as usize) * (cols as usize) <= 255, "shape too large");
        Shape { rows, cols, family }
    }

    pub fn num_gens(&self) -> usize {
        self.rows as usize * self.cols as usize
    }

    /// Generator number of `X[row, col]` (1-based indices).
    pub fn gen(&self, row: u8, col: u8) -> u8 {
        debug_assert!(row >= 1 && row <= self.rows && col >= 1 && col <= self.cols);
        (row - 1) * self.cols + (col - 1)
    }

    /// `(row, col)` of a generator number (1-based).
    pub fn pos(&self, g: u8) -> (u8, u8) {
        (g / self.cols + 1, g % self.cols + 1)
    }

    /// Same algebra, ignoring the family label.
    pub fn same_algebra(&self, other: &Shape) -> bool {
        self.rows == other.rows && self.cols == other.cols
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({}x{})", self.family, self.rows, self.cols)
    }
}

/// PBW monomial: non-decreasing generator numbers.
pub type Monomial = SmallVec<[u8; 12]>;

/// Merge two sorted monomials (the commutative product of exponents).
pub fn merge_monomials(a: &[u8], b: &[u8]) -> Monomial {
    let mut out = Monomial::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if a[i] <= b[j] {
            out.push(a[i]);
            i += 1;
        } else {
            out.push(b[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// `a - b` as multisets, if `b` is contained in `a`.
pub fn monomial_quotient(a: &[u8], b: &[u8]) -> Option<Monomial> {
    let mut out = Monomial::new();
    let mut j = 0;
    for &g in a {
        if j < b.len() && b[j] == g {
            j += 1;
        } else if j < b.len() && b[j] < g {
            return None;
        } else {
            out.push(g);
        }
    }
    (j == b.len()).then_some(out)
}

/// Weight `sum row*col`; every correction term of a rewrite lowers it.
pub fn monomial_weight(shape: &Shape, m: &[u8]) -> u32 {
    m.iter()
        .map(|&g| {
            let (r, c) = shape.pos(g);
            r as u32 * c as u32
        })
        .sum()
}

/// Total order compatible with multiplication: weight first, then the
/// exponent vector lexicographically (more of a smaller generator is larger).
pub fn leading_cmp(shape: &Shape, a: &[u8], b: &[u8]) -> std::cmp::Ordering {
    monomial_weight(shape, a)
        .cmp(&monomial_weight(shape, b))
        .then_with(|| a.len().cmp(&b.len()))
        .then_with(|| b.cmp(a))
}

type Terms = Arc<Vec<(Monomial, RatFunc)>>;

#[derive(Default)]
struct Straightener {
    by_gen: RwLock<HashMap<(Monomial, u8), Terms>>,
    by_mono: RwLock<HashMap<(Monomial, Monomial), Terms>>,
}

fn straightener(rows: u8, cols: u8) -> Arc<Straightener> {
    static TABLES: OnceLock<RwLock<HashMap<(u8, u8), Arc<Straightener>>>> = OnceLock::new();
    let tables = TABLES.get_or_init(Default::default);
    if let Some(s) = tables.read().unwrap().get(&(rows, cols)) {
        return s.clone();
    }
    tables.write().unwrap().entry((rows, cols)).or_default().clone()
}

const MAX_DEPTH: usize = 4096;

/// Rewrites `x * g` with `x > g` into ordered pairs `(u, v, coeff)`.
fn rewrite_pair(shape: &Shape, x: u8, g: u8) -> SmallVec<[(u8, u8, RatFunc); 2]> {
    let (i, j) = shape.pos(g);
    let (k, l) = shape.pos(x);
    let mut out = SmallVec::new();
    if i == k || j == l {
        out.push((g, x, RatFunc::q_pow(-1)));
    } else if l < j {
        out.push((g, x, RatFunc::one()));
    } else {
        out.push((g, x, RatFunc::one()));
        out.push((shape.gen(i, l), shape.gen(k, j), -RatFunc::q_minus_q_inv()));
    }
    out
}

fn accumulate(acc: &mut BTreeMap<Monomial, RatFunc>, m: Monomial, c: RatFunc) {
    use std::collections::btree_map::Entry;
    match acc.entry(m) {
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

fn mono_times_gen(shape: &Shape, st: &Straightener, m: &[u8], g: u8, depth: usize) -> Terms {
    if m.last().is_none_or(|&x| x <= g) {
        let mut out: Monomial = m.into();
        out.push(g);
        return Arc::new(vec![(out, RatFunc::one())]);
    }
    assert!(depth < MAX_DEPTH, "internal error: straightening exceeded its depth budget");
    let key = (Monomial::from_slice(m), g);
    if let Some(t) = st.by_gen.read().unwrap().get(&key) {
        return t.clone();
    }
    let (rest, x) = (&m[..m.len() - 1], m[m.len() - 1]);
    let mut acc = BTreeMap::new();
    for (u, v, c) in rewrite_pair(shape, x, g) {
        for (mu, cu) in mono_times_gen(shape, st, rest, u, depth + 1).iter() {
            let cu = &c * cu;
            for (mv, cv) in mono_times_gen(shape, st, mu, v, depth + 1).iter() {
                accumulate(&mut acc, mv.clone(), &cu * cv);
            }
        }
    }
    let terms: Terms = Arc::new(acc.into_iter().collect());
    st.by_gen.write().unwrap().insert(key, terms.clone());
    terms
}

/// Normal form of the product of two PBW monomials.
pub fn mono_product(shape: &Shape, a: &[u8], b: &[u8]) -> Terms {
    if b.is_empty() || a.is_empty() || a.last() <= b.first() {
        let mut out: Monomial = a.into();
        out.extend_from_slice(b);
        return Arc::new(vec![(out, RatFunc::one())]);
    }
    let st = straightener(shape.rows, shape.cols);
    let key = (Monomial::from_slice(a), Monomial::from_slice(b));
    if let Some(t) = st.by_mono.read().unwrap().get(&key) {
        return t.clone();
    }
    let mut cur: BTreeMap<Monomial, RatFunc> = BTreeMap::new();
    cur.insert(key.0.clone(), RatFunc::one());
    for &g in b {
        let mut next = BTreeMap::new();
        for (m, c) in &cur {
            for (mg, cg) in mono_times_gen(shape, &st, m, g, 0).iter() {
                accumulate(&mut next, mg.clone(), c * cg);
            }
        }
        cur = next;
    }
    let terms: Terms = Arc::new(cur.into_iter().collect());
    st.by_mono.write().unwrap().insert(key, terms.clone());
    terms
}

/// Element of `O_q(M_{rows,cols})`: sparse combination of PBW monomials.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Element {
    shape: Shape,
    terms: BTreeMap<Monomial, RatFunc>,
}

impl Element {
    pub fn zero(shape: Shape) -> Self {
        Element { shape, terms: BTreeMap::new() }
    }

    pub fn one(shape: Shape) -> Self {
        Self::scalar(shape, RatFunc::one())
    }

    pub fn scalar(shape: Shape, c: RatFunc) -> Self {
        Self::monomial(shape, Monomial::new(), c)
    }

    /// The generator `X[row, col]` (1-based).
    pub fn generator(shape: Shape, row: u8, col: u8) -> Result<Self, AlgebraError> {
        if row < 1 || row > shape.rows || col < 1 || col > shape.cols {
            return Err(AlgebraError::IndexOutOfShape(shape));
        }
        Ok(Self::monomial(shape, smallvec::smallvec![shape.gen(row, col)], RatFunc::one()))
    }

    /// `c` times a monomial, which must already be sorted.
    pub fn monomial(shape: Shape, m: Monomial, c: RatFunc) -> Self {
        debug_assert!(m.windows(2).all(|w| w[0] <= w[1]));
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Element { shape, terms }
    }

    /// Builds from arbitrary (possibly unsorted) generator words.
    pub fn from_words<I: IntoIterator<Item = (Vec<u8>, RatFunc)>>(shape: Shape, words: I) -> Self {
        let mut out = Self::zero(shape);
        for (w, c) in words {
            let mut e = Self::scalar(shape, c);
            for g in w {
                e = e.mul_gen(g);
            }
            out = &out + &e;
        }
        out
    }

    pub(crate) fn from_terms(shape: Shape, terms: BTreeMap<Monomial, RatFunc>) -> Self {
        Element { shape, terms }
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn with_family(mut self, family: Family) -> Self {
        self.shape.family = family;
        self
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &RatFunc)> {
        self.terms.iter()
    }

    pub fn term_map(&self) -> &BTreeMap<Monomial, RatFunc> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &[u8]) -> RatFunc {
        self.terms.get(m).cloned().unwrap_or_else(RatFunc::zero)
    }

    /// Total degree if homogeneous (None for zero or mixed degree).
    pub fn degree(&self) -> Option<usize> {
        let mut degs = self.terms.keys().map(|m| m.len());
        let d = degs.next()?;
        degs.all(|e| e == d).then_some(d)
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        if c.is_zero() {
            return Self::zero(self.shape);
        }
        Element { shape: self.shape, terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    /// Applies `f` to every coefficient, dropping zeros.
    pub fn map_coeffs(&self, mut f: impl FnMut(&Monomial, &RatFunc) -> RatFunc) -> Self {
        let terms = self
            .terms
            .iter()
            .filter_map(|(m, c)| {
                let v = f(m, c);
                (!v.is_zero()).then(|| (m.clone(), v))
            })
            .collect();
        Element { shape: self.shape, terms }
    }

    pub fn try_mul(&self, rhs: &Element) -> Result<Element, AlgebraError> {
        if !self.shape.same_algebra(&rhs.shape) {
            return Err(AlgebraError::ShapeMismatch(self.shape, rhs.shape));
        }
        let mut acc = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let cab = ca * cb;
                for (m, c) in mono_product(&self.shape, ma, mb).iter() {
                    accumulate(&mut acc, m.clone(), &cab * c);
                }
            }
        }
        Ok(Element { shape: self.shape, terms: acc })
    }

    /// Right multiplication by a single generator.
    pub fn mul_gen(&self, g: u8) -> Element {
        let st = straightener(self.shape.rows, self.shape.cols);
        let mut acc = BTreeMap::new();
        for (m, c) in &self.terms {
            for (mg, cg) in mono_times_gen(&self.shape, &st, m, g, 0).iter() {
                accumulate(&mut acc, mg.clone(), c * cg);
            }
        }
        Element { shape: self.shape, terms: acc }
    }

    pub fn pow(&self, e: u32) -> Element {
        let mut acc = Element::one(self.shape);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Leading monomial and coefficient under [`leading_cmp`].
    pub fn leading_term(&self) -> Option<(&Monomial, &RatFunc)> {
        self.terms.iter().max_by(|a, b| leading_cmp(&self.shape, a.0, b.0))
    }

    /// Exact `g` with `self = g * d`, if it exists.
    pub fn divide_right(&self, d: &Element) -> Option<Element> {
        self.divide(d, true)
    }

    /// Exact `g` with `self = d * g`, if it exists.
    pub fn divide_left(&self, d: &Element) -> Option<Element> {
        self.divide(d, false)
    }

    fn divide(&self, d: &Element, right: bool) -> Option<Element> {
        let (lm_d, _) = d.leading_term()?;
        let lm_d = lm_d.clone();
        let mut rem = self.clone();
        let mut quot = Element::zero(self.shape);
        while let Some((lm, lc)) = rem.leading_term() {
            let g = monomial_quotient(lm, &lm_d)?;
            let gm = Element::monomial(self.shape, g.clone(), RatFunc::one());
            let prod = if right { &gm * d } else { d * &gm };
            let top = prod.coeff(lm);
            debug_assert!(!top.is_zero());
            let c = lc / &top;
            rem = &rem - &prod.scale(&c);
            quot = &quot + &Element::monomial(self.shape, g, c);
        }
        Some(quot)
    }

    pub fn display_with(&self, name: &str) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(m, c)| {
                let word = m
                    .iter()
                    .map(|&g| {
                        let (r, c) = self.shape.pos(g);
                        format!("{name}[{r},{c}]")
                    })
                    .join("*");
                match (word.is_empty(), c.is_one()) {
                    (true, _) => c.to_string(),
                    (false, true) => word,
                    (false, false) => format!("{c}*{word}"),
                }
            })
            .join(" + ")
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&self.shape.family.to_string()))
    }
}

impl std::ops::Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        assert!(self.shape.same_algebra(&rhs.shape), "shape mismatch in addition");
        let mut terms = self.terms.clone();
        for (m, c) in &rhs.terms {
            accumulate(&mut terms, m.clone(), c.clone());
        }
        Element { shape: self.shape, terms }
    }
}

impl std::ops::Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        self + &(-rhs)
    }
}

impl std::ops::Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element { shape: self.shape, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl std::ops::Mul for &Element {
    type Output = Element;
    /// Panics on shape mismatch; see [`Element::try_mul`].
    fn mul(self, rhs: &Element) -> Element {
        self.try_mul(rhs).expect("shape mismatch in multiplication")
    }
}

#[derive(Serialize, Deserialize)]
struct ElementRepr {
    shape: Shape,
    terms: Vec<(Vec<(u8, u8)>, RatFunc)>,
}

impl Serialize for Element {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.iter().map(|&g| self.shape.pos(g)).collect(), c.clone()))
            .collect();
        ElementRepr { shape: self.shape, terms }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Element {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = ElementRepr::deserialize(d)?;
        let shape = repr.shape;
        let mut terms = BTreeMap::new();
        for (word, c) in repr.terms {
            let mut m = Monomial::new();
            for (r, col) in word {
                if r < 1 || r > shape.rows || col < 1 || col > shape.cols {
                    return Err(serde::de::Error::custom("generator outside shape"));
                }
                m.push(shape.gen(r, col));
            }
            if !m.windows(2).all(|w| w[0] <= w[1]) {
                return Err(serde::de::Error::custom("monomial not in normal form"));
            }
            accumulate(&mut terms, m, c);
        }
        Ok(Element { shape, terms })
    }
}

/// Row and column index sets of a minor, strictly increasing, 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MinorIndex {
    pub rows: Vec<u8>,
    pub cols: Vec<u8>,
}

impl MinorIndex {
    pub fn new(rows: Vec<u8>, cols: Vec<u8>) -> Self {
        MinorIndex { rows, cols }
    }

    /// `[lo..=hi | lo'..=hi']`.
    pub fn solid(rows: std::ops::RangeInclusive<u8>, cols: std::ops::RangeInclusive<u8>) -> Self {
        MinorIndex { rows: rows.collect(), cols: cols.collect() }
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    fn check(&self, shape: &Shape) -> Result<(), AlgebraError> {
        let inc = |v: &[u8], hi: u8| v.windows(2).all(|w| w[0] < w[1]) && v.iter().all(|&x| x >= 1 && x <= hi);
        if self.rows.len() != self.cols.len()
            || self.rows.is_empty()
            || !inc(&self.rows, shape.rows)
            || !inc(&self.cols, shape.cols)
        {
            return Err(AlgebraError::IndexOutOfShape(*shape));
        }
        Ok(())
    }
}

/// All minors of a given size in a shape, in lexicographic order of (rows, cols).
pub fn all_minors(shape: &Shape, size: usize) -> Vec<MinorIndex> {
    let rows: Vec<Vec<u8>> = (1..=shape.rows).combinations(size).collect();
    let cols: Vec<Vec<u8>> = (1..=shape.cols).combinations(size).collect();
    rows.iter()
        .cartesian_product(cols.iter())
        .map(|(r, c)| MinorIndex::new(r.clone(), c.clone()))
        .collect()
}

fn inversions(p: &[usize]) -> i32 {
    let mut n = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                n += 1;
            }
        }
    }
    n
}

/// `[R|C] = sum_sigma (-q)^{inv(sigma)} X[r_1, c_sigma(1)] ... X[r_l, c_sigma(l)]`.
pub fn quantum_minor(shape: Shape, idx: &MinorIndex) -> Result<Element, AlgebraError> {
    idx.check(&shape)?;
    let l = idx.size();
    let words = (0..l).permutations(l).map(|p| {
        let word = (0..l).map(|a| shape.gen(idx.rows[a], idx.cols[p[a]])).collect();
        (word, RatFunc::neg_q_pow(inversions(&p)))
    });
    Ok(Element::from_words(shape, words))
}

/// The same minor by first-row Laplace expansion.
pub fn laplace_minor(shape: Shape, idx: &MinorIndex) -> Result<Element, AlgebraError> {
    idx.check(&shape)?;
    let r1 = idx.rows[0];
    if idx.size() == 1 {
        return Element::generator(shape, r1, idx.cols[0]);
    }
    let mut out = Element::zero(shape);
    for k in 0..idx.size() {
        let sub = MinorIndex::new(
            idx.rows[1..].to_vec(),
            idx.cols.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, &c)| c).collect(),
        );
        let term = &Element::generator(shape, r1, idx.cols[k])? * &laplace_minor(shape, &sub)?;
        out = &out + &term.scale(&RatFunc::neg_q_pow(k as i32));
    }
    Ok(out)
}

/// All PBW monomials of a total degree, in lexicographic order.
pub fn graded_component_basis(shape: &Shape, degree: usize) -> Vec<Monomial> {
    (0..shape.num_gens() as u8)
        .combinations_with_replacement(degree)
        .map(Monomial::from_vec)
        .collect()
}

/// Row and column exponent counts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MultiDegree {
    pub rows: Vec<u32>,
    pub cols: Vec<u32>,
}

impl MultiDegree {
    pub fn zero(shape: &Shape) -> Self {
        MultiDegree { rows: vec![0; shape.rows as usize], cols: vec![0; shape.cols as usize] }
    }

    pub fn total(&self) -> u32 {
        self.rows.iter().sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        MultiDegree {
            rows: self.rows.iter().zip(&other.rows).map(|(a, b)| a + b).collect(),
            cols: self.cols.iter().zip(&other.cols).map(|(a, b)| a + b).collect(),
        }
    }
}

pub fn multidegree(shape: &Shape, m: &[u8]) -> MultiDegree {
    let mut d = MultiDegree::zero(shape);
    for &g in m {
        let (r, c) = shape.pos(g);
        d.rows[r as usize - 1] += 1;
        d.cols[c as usize - 1] += 1;
    }
    d
}

/// All multidegrees of monomials of a given total degree, each with its monomials.
pub fn component_blocks(shape: &Shape, degree: usize) -> BTreeMap<MultiDegree, Vec<Monomial>> {
    let mut blocks: BTreeMap<MultiDegree, Vec<Monomial>> = BTreeMap::new();
    for m in graded_component_basis(shape, degree) {
        blocks.entry(multidegree(shape, &m)).or_default().push(m);
    }
    blocks
}

/// Retraction `O_q(M_{m',n'}) -> O_q(M_{m,n})` killing generators outside the corner.
pub fn retract(x: &Element, rows: u8, cols: u8) -> Result<Element, AlgebraError> {
    let src = x.shape();
    let target = Shape::new(src.family, rows, cols);
    if rows > src.rows || cols > src.cols {
        return Err(AlgebraError::ShapeMismatch(src, target));
    }
    let mut terms = BTreeMap::new();
    'terms: for (m, c) in x.terms() {
        let mut out = Monomial::new();
        for &g in m {
            let (r, col) = src.pos(g);
            if r > rows || col > cols {
                continue 'terms;
            }
            out.push(target.gen(r, col));
        }
        terms.insert(out, c.clone());
    }
    Ok(Element::from_terms(target, terms))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(shape: Shape, r: u8, c: u8) -> Element {
        Element::generator(shape, r, c).unwrap()
    }

    #[test]
    fn same_row_rule() {
        let s = Shape::new(Family::X, 2, 2);
        let lhs = &x(s, 1, 2) * &x(s, 1, 1);
        assert_eq!(lhs, (&x(s, 1, 1) * &x(s, 1, 2)).scale(&RatFunc::q_pow(-1)));
    }

    #[test]
    fn ordered_product_is_untouched() {
        let s = Shape::new(Family::X, 2, 2);
        let sq = &x(s, 1, 1) * &x(s, 1, 1);
        assert_eq!(sq.len(), 1);
        assert_eq!(sq.coeff(&[0, 0]), RatFunc::one());
    }

    #[test]
    fn diagonal_rule() {
        let s = Shape::new(Family::X, 2, 2);
        let lhs = &x(s, 2, 2) * &x(s, 1, 1);
        let expected = &Element::monomial(s, smallvec::smallvec![0, 3], RatFunc::one())
            - &Element::monomial(s, smallvec::smallvec![1, 2], RatFunc::q_minus_q_inv());
        assert_eq!(lhs, expected);
    }

    #[test]
    fn two_by_two_minor() {
        let s = Shape::new(Family::X, 2, 2);
        let d = quantum_minor(s, &MinorIndex::solid(1..=2, 1..=2)).unwrap();
        let expected = &Element::monomial(s, smallvec::smallvec![0, 3], RatFunc::one())
            - &Element::monomial(s, smallvec::smallvec![1, 2], RatFunc::q());
        assert_eq!(d, expected);
        assert_eq!(laplace_minor(s, &MinorIndex::solid(1..=2, 1..=2)).unwrap(), expected);
    }

    #[test]
    fn one_by_one_minors() {
        let s = Shape::new(Family::Y, 2, 1);
        assert_eq!(quantum_minor(s, &MinorIndex::new(vec![2], vec![1])).unwrap(), x(s, 2, 1));
        let t = Shape::new(Family::T, 1, 1);
        assert_eq!(quantum_minor(t, &MinorIndex::solid(1..=1, 1..=1)).unwrap(), x(t, 1, 1));
    }

    #[test]
    fn bad_minor_index() {
        let s = Shape::new(Family::X, 2, 2);
        assert!(quantum_minor(s, &MinorIndex::new(vec![1, 3], vec![1, 2])).is_err());
        assert!(quantum_minor(s, &MinorIndex::new(vec![2, 1], vec![1, 2])).is_err());
    }

    #[test]
    fn component_sizes() {
        let y = Shape::new(Family::Y, 2, 1);
        let b = graded_component_basis(&y, 2);
        assert_eq!(b, vec![Monomial::from_slice(&[0, 0]), Monomial::from_slice(&[0, 1]), Monomial::from_slice(&[1, 1])]);
        assert_eq!(graded_component_basis(&Shape::new(Family::X, 3, 3), 0).len(), 1);
        assert_eq!(graded_component_basis(&Shape::new(Family::X, 2, 2), 2).len(), 10);
    }

    #[test]
    fn multidegrees() {
        let y = Shape::new(Family::Y, 2, 1);
        assert_eq!(multidegree(&y, &[0, 1]), MultiDegree { rows: vec![1, 1], cols: vec![2] });
        assert_eq!(multidegree(&y, &[]), MultiDegree { rows: vec![0, 0], cols: vec![0] });
        let s = Shape::new(Family::X, 2, 2);
        assert_eq!(multidegree(&s, &[1, 1]), MultiDegree { rows: vec![2, 0], cols: vec![0, 2] });
    }

    #[test]
    fn retraction_examples() {
        let s = Shape::new(Family::X, 3, 3);
        let m = &x(s, 1, 1) * &x(s, 3, 3);
        assert!(retract(&m, 2, 2).unwrap().is_zero());
        assert!(retract(&Element::one(s), 2, 2).unwrap() == Element::one(Shape::new(Family::X, 2, 2)));
        let idx = MinorIndex::solid(1..=2, 1..=2);
        let small = Shape::new(Family::X, 2, 2);
        assert_eq!(
            retract(&quantum_minor(s, &idx).unwrap(), 2, 2).unwrap(),
            quantum_minor(small, &idx).unwrap()
        );
    }

    #[test]
    fn division_recovers_factor() {
        let s = Shape::new(Family::X, 3, 3);
        let d = quantum_minor(s, &MinorIndex::solid(2..=3, 1..=2)).unwrap();
        let a = &(&x(s, 1, 3) * &x(s, 2, 2)) + &x(s, 3, 1).scale(&RatFunc::q());
        assert_eq!((&a * &d).divide_right(&d).unwrap(), a);
        assert_eq!((&d * &a).divide_left(&d).unwrap(), a);
        assert!(x(s, 1, 1).divide_right(&d).is_none());
    }

    #[test]
    fn serde_round_trip() {
        let s = Shape::new(Family::X, 2, 2);
        let d = quantum_minor(s, &MinorIndex::solid(1..=2, 1..=2)).unwrap();
        let json = serde_json::to_string(&d).unwrap();
        assert_eq!(serde_json::from_str::<Element>(&json).unwrap(), d);
        assert_eq!(d.to_string(), "X[1,1]*X[2,2] + -q*X[1,2]*X[2,1]");
    }
}
