//! Sparse polynomial rings in `(z, zbar)`, `(z, w)` and `(z, zbar, u)`.
//!
//! Three term-map types cover everything the tangency computation needs:
//!
//! * [`RealPoly`] — real-valued polynomials `P(z, zbar)`; the coefficient map
//!   satisfies the reality constraint `A[alpha,beta] = conj(A[beta,alpha])`.
//!   Defining polynomials of models live here.
//! * [`HoloPoly`] — holomorphic polynomials in `(z, w)`; vector field
//!   coefficients live here.
//! * [`MixedPoly`] — general complex-coefficient polynomials in
//!   `(z, zbar, u)`; tangency residues after restricting to the hypersurface
//!   (`w = u + iP`) live here.
//!
//! Zero coefficients are never stored, terms are kept in a graded
//! lexicographic order (total degree, then holomorphic, conjugate and `u`/`w`
//! exponents), and equality is structural. All operations are exact.

use crate::arith::{
    format_gauss, gauss, gauss_i, pair_weighted_length, weighted_length, ArithError, GaussRat,
    MultiIndex, Rat,
};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RingError {
    #[error("dimension mismatch: expected {expected} variables, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("reality violated at term (alpha={alpha:?}, beta={beta:?})")]
    RealityViolation { alpha: Vec<u32>, beta: Vec<u32> },
    #[error("polynomial is not expressible through Re z_{l} alone")]
    NotXlExpressible { l: usize },
    #[error("variable index {j} out of range 1..={n}")]
    VariableOutOfRange { j: usize, n: usize },
    #[error("invalid weights: {0}")]
    InvalidWeights(String),
}

fn dim_check(expected: usize, got: usize) -> Result<(), RingError> {
    if expected != got {
        Err(RingError::DimensionMismatch { expected, got })
    } else {
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Term keys with graded-lex ordering
// ---------------------------------------------------------------------------

/// Key of a `z^alpha zbar^beta` term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReKey {
    pub alpha: MultiIndex,
    pub beta: MultiIndex,
}

impl ReKey {
    fn total(&self) -> u32 {
        self.alpha.total() + self.beta.total()
    }
}

impl Ord for ReKey {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.total(), &self.alpha, &self.beta).cmp(&(other.total(), &other.alpha, &other.beta))
    }
}

impl PartialOrd for ReKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Key of a `z^alpha w^m` term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HoloKey {
    pub alpha: MultiIndex,
    pub w: u32,
}

impl HoloKey {
    fn total(&self) -> u32 {
        self.alpha.total() + self.w
    }
}

impl Ord for HoloKey {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.total(), &self.alpha, self.w).cmp(&(other.total(), &other.alpha, other.w))
    }
}

impl PartialOrd for HoloKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Key of a `z^alpha zbar^beta u^k` term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixKey {
    pub alpha: MultiIndex,
    pub beta: MultiIndex,
    pub u: u32,
}

impl MixKey {
    fn total(&self) -> u32 {
        self.alpha.total() + self.beta.total() + self.u
    }

    /// Key of the conjugate monomial (swap `alpha` and `beta`; `u` is real).
    pub fn conjugate(&self) -> MixKey {
        MixKey {
            alpha: self.beta.clone(),
            beta: self.alpha.clone(),
            u: self.u,
        }
    }
}

impl Ord for MixKey {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.total(), &self.alpha, &self.beta, self.u).cmp(&(
            other.total(),
            &other.alpha,
            &other.beta,
            other.u,
        ))
    }
}

impl PartialOrd for MixKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn insert_term<K: Ord>(terms: &mut BTreeMap<K, GaussRat>, key: K, coeff: GaussRat) {
    if coeff.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match terms.entry(key) {
        Entry::Vacant(e) => {
            e.insert(coeff);
        }
        Entry::Occupied(mut e) => {
            let sum = e.get().clone() + coeff;
            if sum.is_zero() {
                e.remove();
            } else {
                e.insert(sum);
            }
        }
    }
}

fn mono_text(vars: &[(String, u32)]) -> String {
    let mut parts = Vec::new();
    for (name, e) in vars {
        match e {
            0 => {}
            1 => parts.push(name.clone()),
            _ => parts.push(format!("{}^{}", name, e)),
        }
    }
    parts.join(" ")
}

fn term_text(coeff: &GaussRat, vars: &[(String, u32)]) -> String {
    let m = mono_text(vars);
    if m.is_empty() {
        format!("({})", format_gauss(coeff))
    } else {
        format!("({}) {}", format_gauss(coeff), m)
    }
}

fn z_var_names(alpha: &MultiIndex, beta: Option<&MultiIndex>) -> Vec<(String, u32)> {
    let mut out = Vec::new();
    for (j, e) in alpha.exponents().iter().enumerate() {
        out.push((format!("z{}", j + 1), *e));
    }
    if let Some(b) = beta {
        for (j, e) in b.exponents().iter().enumerate() {
            out.push((format!("zb{}", j + 1), *e));
        }
    }
    out
}

fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().expect("rational out of f64 range")
}

fn gauss_to_c64(c: &GaussRat) -> Complex64 {
    Complex64::new(rat_to_f64(&c.re), rat_to_f64(&c.im))
}

// ---------------------------------------------------------------------------
// WeightVector
// ---------------------------------------------------------------------------

/// Multitype weights `mu_1 >= ... >= mu_n` with `0 < mu_j <= 1/2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightVector {
    mu: Vec<Rat>,
}

impl WeightVector {
    pub fn new(mu: Vec<Rat>) -> Result<Self, RingError> {
        if mu.is_empty() {
            return Err(RingError::InvalidWeights("empty weight vector".into()));
        }
        let half = Rat::new(BigInt::one(), BigInt::from(2));
        for (j, m) in mu.iter().enumerate() {
            if !m.is_positive() || m > &half {
                return Err(RingError::InvalidWeights(format!(
                    "mu_{} = {} outside (0, 1/2]",
                    j + 1,
                    m
                )));
            }
        }
        if mu.windows(2).any(|w| w[0] < w[1]) {
            return Err(RingError::InvalidWeights(
                "weights must be nonincreasing".into(),
            ));
        }
        Ok(WeightVector { mu })
    }

    pub fn n(&self) -> usize {
        self.mu.len()
    }

    pub fn mu(&self) -> &[Rat] {
        &self.mu
    }

    pub fn get(&self, j: usize) -> &Rat {
        &self.mu[j]
    }

    /// Number of weights equal to 1/2.
    pub fn kappa(&self) -> usize {
        let half = Rat::new(BigInt::one(), BigInt::from(2));
        self.mu.iter().filter(|m| **m == half).count()
    }

    /// All exponent vectors `alpha` with weighted length exactly `target`.
    /// Finite because every weight is positive; returned in lexicographic
    /// order.
    pub fn exponents_of_weight(&self, target: &Rat) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        if target.is_negative() {
            return out;
        }
        let mut current = vec![0u32; self.n()];
        self.enum_rec(0, target.clone(), &mut current, &mut out);
        out
    }

    fn enum_rec(
        &self,
        j: usize,
        remaining: Rat,
        current: &mut Vec<u32>,
        out: &mut Vec<MultiIndex>,
    ) {
        if j == self.n() {
            if remaining.is_zero() {
                out.push(MultiIndex::new(current.clone()));
            }
            return;
        }
        let max = (remaining.clone() / self.mu[j].clone()).floor();
        let max = max.to_integer().to_u32().unwrap_or(0);
        for e in 0..=max {
            current[j] = e;
            let used = self.mu[j].clone() * Rat::from_integer(BigInt::from(e));
            self.enum_rec(j + 1, remaining.clone() - used, current, out);
        }
        current[j] = 0;
    }
}

// ---------------------------------------------------------------------------
// RealPoly
// ---------------------------------------------------------------------------

/// Real-valued polynomial in `(z, zbar)` with Gaussian-rational coefficients.
///
/// Reality means `A[alpha,beta] = conj(A[beta,alpha])` for every stored term;
/// constructors reject maps violating it, and ring operations preserve it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealPoly {
    n: usize,
    terms: BTreeMap<ReKey, GaussRat>,
}

impl RealPoly {
    pub fn zero(n: usize) -> Self {
        RealPoly {
            n,
            terms: BTreeMap::new(),
        }
    }

    /// Builds a polynomial from raw terms, checking dimensions and reality.
    pub fn from_terms(
        n: usize,
        raw: Vec<(MultiIndex, MultiIndex, GaussRat)>,
    ) -> Result<Self, RingError> {
        let mut terms = BTreeMap::new();
        for (alpha, beta, c) in raw {
            dim_check(n, alpha.len())?;
            dim_check(n, beta.len())?;
            insert_term(&mut terms, ReKey { alpha, beta }, c);
        }
        let p = RealPoly { n, terms };
        p.check_reality()?;
        Ok(p)
    }

    fn check_reality(&self) -> Result<(), RingError> {
        for (k, c) in &self.terms {
            let mirror = ReKey {
                alpha: k.beta.clone(),
                beta: k.alpha.clone(),
            };
            let other = self
                .terms
                .get(&mirror)
                .cloned()
                .unwrap_or_else(GaussRat::zero);
            if other.conj() != *c {
                return Err(RingError::RealityViolation {
                    alpha: k.alpha.exponents().to_vec(),
                    beta: k.beta.exponents().to_vec(),
                });
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ReKey, &GaussRat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, alpha: &MultiIndex, beta: &MultiIndex) -> GaussRat {
        self.terms
            .get(&ReKey {
                alpha: alpha.clone(),
                beta: beta.clone(),
            })
            .cloned()
            .unwrap_or_else(GaussRat::zero)
    }

    pub fn add(&self, other: &RealPoly) -> Result<RealPoly, RingError> {
        dim_check(self.n, other.n)?;
        let mut terms = self.terms.clone();
        for (k, c) in &other.terms {
            insert_term(&mut terms, k.clone(), c.clone());
        }
        Ok(RealPoly { n: self.n, terms })
    }

    pub fn sub(&self, other: &RealPoly) -> Result<RealPoly, RingError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RealPoly {
        RealPoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.clone(), -c.clone()))
                .collect(),
        }
    }

    /// Scalar multiple by a real rational (keeps reality).
    pub fn scale(&self, s: &Rat) -> RealPoly {
        if s.is_zero() {
            return RealPoly::zero(self.n);
        }
        let sc = gauss(s.clone(), Rat::zero());
        RealPoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.clone(), c.clone() * sc.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &RealPoly) -> Result<RealPoly, RingError> {
        dim_check(self.n, other.n)?;
        let mut terms = BTreeMap::new();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                let key = ReKey {
                    alpha: ka.alpha.add(&kb.alpha).expect("same dimension"),
                    beta: ka.beta.add(&kb.beta).expect("same dimension"),
                };
                insert_term(&mut terms, key, ca.clone() * cb.clone());
            }
        }
        Ok(RealPoly { n: self.n, terms })
    }

    /// True when no stored term is purely holomorphic or purely
    /// antiholomorphic.
    pub fn is_pluriharmonic_free(&self) -> bool {
        self.terms
            .keys()
            .all(|k| !k.alpha.is_zero() && !k.beta.is_zero())
    }

    /// Splits into weighted homogeneous parts keyed by degree. The parts sum
    /// back to the polynomial and have pairwise disjoint term sets.
    pub fn weighted_degree_terms(&self, mu: &WeightVector) -> BTreeMap<Rat, RealPoly> {
        let mut out: BTreeMap<Rat, RealPoly> = BTreeMap::new();
        for (k, c) in &self.terms {
            let d = pair_weighted_length(&k.alpha, &k.beta, mu.mu()).expect("dimension");
            out.entry(d)
                .or_insert_with(|| RealPoly::zero(self.n))
                .terms
                .insert(k.clone(), c.clone());
        }
        out
    }

    /// `Some(l)` when all terms share weighted degree `l`; `None` for zero or
    /// mixed-degree polynomials.
    pub fn homogeneous_degree(&self, mu: &WeightVector) -> Option<Rat> {
        let mut degree = None;
        for k in self.terms.keys() {
            let d = pair_weighted_length(&k.alpha, &k.beta, mu.mu()).ok()?;
            match &degree {
                None => degree = Some(d),
                Some(prev) if *prev != d => return None,
                _ => {}
            }
        }
        degree
    }

    /// Formal Wirtinger derivative with respect to `z_j` (or `zbar_j`).
    /// The result is a general complex polynomial, so it is returned as a
    /// (`u`-free) [`MixedPoly`].
    pub fn wirtinger(&self, j: usize, conjugated: bool) -> Result<MixedPoly, RingError> {
        if j == 0 || j > self.n {
            return Err(RingError::VariableOutOfRange { j, n: self.n });
        }
        self.to_mixed().wirtinger(j, conjugated)
    }

    pub fn to_mixed(&self) -> MixedPoly {
        MixedPoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| {
                    (
                        MixKey {
                            alpha: k.alpha.clone(),
                            beta: k.beta.clone(),
                            u: 0,
                        },
                        c.clone(),
                    )
                })
                .collect(),
        }
    }

    /// Writes `P = sum_j (Re z_l)^j P_j(z', zbar')` and returns
    /// `[P_0, ..., P_m]` in the remaining variables, with `P_m != 0`.
    /// Fails when `P` depends on `z_l` other than through `Re z_l`.
    pub fn xl_decompose(&self, l: usize) -> Result<Vec<RealPoly>, RingError> {
        if l == 0 || l > self.n {
            return Err(RingError::VariableOutOfRange { j: l, n: self.n });
        }
        let li = l - 1;
        if self.is_zero() {
            return Ok(Vec::new());
        }
        // Group coefficients by the (z_l, zbar_l) bidegree (p, q).
        let mut by_bidegree: BTreeMap<(u32, u32), BTreeMap<ReKey, GaussRat>> = BTreeMap::new();
        let mut max_t = 0;
        for (k, c) in &self.terms {
            let p = k.alpha.get(li);
            let q = k.beta.get(li);
            max_t = max_t.max(p + q);
            let reduced = ReKey {
                alpha: k.alpha.drop_var(li),
                beta: k.beta.drop_var(li),
            };
            insert_term(by_bidegree.entry((p, q)).or_default(), reduced, c.clone());
        }
        // x_l^t = 2^{-t} sum_p C(t,p) z_l^p zbar_l^{t-p}, so the coefficient
        // polynomial at bidegree (p, q) must equal P_{p+q} 2^{-(p+q)} C(p+q, p).
        let mut parts: Vec<RealPoly> = Vec::new();
        for t in 0..=max_t {
            let pure = by_bidegree.get(&(t, 0)).cloned().unwrap_or_default();
            let two_t = Rat::from_integer(BigInt::from(2).pow(t));
            let p_t = RealPoly {
                n: self.n - 1,
                terms: pure
                    .iter()
                    .map(|(k, c)| (k.clone(), c.clone() * gauss(two_t.clone(), Rat::zero())))
                    .collect(),
            };
            for p in 0..=t {
                let q = t - p;
                let expected_scale = Rat::new(binom(t, p), BigInt::from(2).pow(t));
                let expected: BTreeMap<ReKey, GaussRat> = p_t
                    .terms
                    .iter()
                    .map(|(k, c)| {
                        (
                            k.clone(),
                            c.clone() * gauss(expected_scale.clone(), Rat::zero()),
                        )
                    })
                    .collect();
                let actual = by_bidegree.get(&(p, q)).cloned().unwrap_or_default();
                if expected != actual {
                    return Err(RingError::NotXlExpressible { l });
                }
            }
            p_t.check_reality().expect("reality inherited from P");
            parts.push(p_t);
        }
        while parts.last().is_some_and(|p| p.is_zero()) {
            parts.pop();
        }
        Ok(parts)
    }

    /// Exact evaluation; `zbar` is taken as the conjugate of `z`.
    pub fn eval_gauss(&self, z: &[GaussRat]) -> GaussRat {
        self.to_mixed().eval_gauss(z, &Rat::zero())
    }

    pub fn eval_f64(&self, z: &[Complex64]) -> Complex64 {
        self.to_mixed().eval_f64(z, 0.0)
    }

    /// Canonical text form, e.g. `(1/2) z1 z2 zb2 + (1/2) z2 zb1 zb2`.
    pub fn text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.terms
            .iter()
            .map(|(k, c)| term_text(c, &z_var_names(&k.alpha, Some(&k.beta))))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

fn binom(t: u32, p: u32) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..p {
        acc = acc * BigInt::from(t - i) / BigInt::from(i + 1);
    }
    acc
}

// ---------------------------------------------------------------------------
// HoloPoly
// ---------------------------------------------------------------------------

/// Holomorphic polynomial in `(z, w)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HoloPoly {
    n: usize,
    terms: BTreeMap<HoloKey, GaussRat>,
}

impl HoloPoly {
    pub fn zero(n: usize) -> Self {
        HoloPoly {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(n, MultiIndex::zeros(n), 0, GaussRat::one())
    }

    pub fn monomial(n: usize, alpha: MultiIndex, w: u32, coeff: GaussRat) -> Self {
        assert_eq!(alpha.len(), n, "monomial dimension");
        let mut terms = BTreeMap::new();
        insert_term(&mut terms, HoloKey { alpha, w }, coeff);
        HoloPoly { n, terms }
    }

    pub fn var(n: usize, j: usize) -> Self {
        Self::monomial(n, MultiIndex::unit(n, j), 0, GaussRat::one())
    }

    pub fn w(n: usize) -> Self {
        Self::monomial(n, MultiIndex::zeros(n), 1, GaussRat::one())
    }

    pub fn from_terms(n: usize, raw: Vec<(MultiIndex, u32, GaussRat)>) -> Result<Self, RingError> {
        let mut terms = BTreeMap::new();
        for (alpha, w, c) in raw {
            dim_check(n, alpha.len())?;
            insert_term(&mut terms, HoloKey { alpha, w }, c);
        }
        Ok(HoloPoly { n, terms })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&HoloKey, &GaussRat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, alpha: &MultiIndex, w: u32) -> GaussRat {
        self.terms
            .get(&HoloKey {
                alpha: alpha.clone(),
                w,
            })
            .cloned()
            .unwrap_or_else(GaussRat::zero)
    }

    /// True when no term involves `w`.
    pub fn is_w_free(&self) -> bool {
        self.terms.keys().all(|k| k.w == 0)
    }

    pub fn add(&self, other: &HoloPoly) -> Result<HoloPoly, RingError> {
        dim_check(self.n, other.n)?;
        let mut terms = self.terms.clone();
        for (k, c) in &other.terms {
            insert_term(&mut terms, k.clone(), c.clone());
        }
        Ok(HoloPoly { n: self.n, terms })
    }

    pub fn sub(&self, other: &HoloPoly) -> Result<HoloPoly, RingError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> HoloPoly {
        HoloPoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, s: &GaussRat) -> HoloPoly {
        if s.is_zero() {
            return HoloPoly::zero(self.n);
        }
        HoloPoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.clone(), c.clone() * s.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &HoloPoly) -> Result<HoloPoly, RingError> {
        dim_check(self.n, other.n)?;
        let mut terms = BTreeMap::new();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                let key = HoloKey {
                    alpha: ka.alpha.add(&kb.alpha).expect("same dimension"),
                    w: ka.w + kb.w,
                };
                insert_term(&mut terms, key, ca.clone() * cb.clone());
            }
        }
        Ok(HoloPoly { n: self.n, terms })
    }

    /// Formal derivative with respect to `z_j` (1-based).
    pub fn d_z(&self, j: usize) -> Result<HoloPoly, RingError> {
        if j == 0 || j > self.n {
            return Err(RingError::VariableOutOfRange { j, n: self.n });
        }
        let ji = j - 1;
        let mut terms = BTreeMap::new();
        for (k, c) in &self.terms {
            let e = k.alpha.get(ji);
            if e == 0 {
                continue;
            }
            let mut exps = k.alpha.exponents().to_vec();
            exps[ji] -= 1;
            let key = HoloKey {
                alpha: MultiIndex::new(exps),
                w: k.w,
            };
            let factor = gauss(Rat::from_integer(BigInt::from(e)), Rat::zero());
            insert_term(&mut terms, key, c.clone() * factor);
        }
        Ok(HoloPoly { n: self.n, terms })
    }

    /// Formal derivative with respect to `w`.
    pub fn d_w(&self) -> HoloPoly {
        let mut terms = BTreeMap::new();
        for (k, c) in &self.terms {
            if k.w == 0 {
                continue;
            }
            let key = HoloKey {
                alpha: k.alpha.clone(),
                w: k.w - 1,
            };
            let factor = gauss(Rat::from_integer(BigInt::from(k.w)), Rat::zero());
            insert_term(&mut terms, key, c.clone() * factor);
        }
        HoloPoly { n: self.n, terms }
    }

    /// Weighted degree of a term under `(mu, 1)`: `|alpha|_mu + m`.
    pub fn term_weight(key: &HoloKey, mu: &WeightVector) -> Result<Rat, ArithError> {
        Ok(weighted_length(&key.alpha, mu.mu())? + Rat::from_integer(BigInt::from(key.w)))
    }

    /// `Some(l)` when all terms share `(mu,1)`-weight `l`; `None` for zero or
    /// mixed polynomials.
    pub fn homogeneous_weight(&self, mu: &WeightVector) -> Option<Rat> {
        let mut degree = None;
        for k in self.terms.keys() {
            let d = Self::term_weight(k, mu).ok()?;
            match &degree {
                None => degree = Some(d),
                Some(prev) if *prev != d => return None,
                _ => {}
            }
        }
        degree
    }

    /// Restriction to the hypersurface: replaces each `w^m` by
    /// `(u + i P(z, zbar))^m` and expands exactly.
    pub fn substitute_w(&self, p: &RealPoly) -> Result<MixedPoly, RingError> {
        dim_check(self.n, p.n())?;
        let max_m = self.terms.keys().map(|k| k.w).max().unwrap_or(0);
        // powers[m] = (u + iP)^m
        let u_plus_ip = {
            let mut m = p.to_mixed().scale(&gauss_i());
            insert_term(
                &mut m.terms,
                MixKey {
                    alpha: MultiIndex::zeros(self.n),
                    beta: MultiIndex::zeros(self.n),
                    u: 1,
                },
                GaussRat::one(),
            );
            m
        };
        let mut powers = Vec::with_capacity(max_m as usize + 1);
        powers.push(MixedPoly::constant(self.n, GaussRat::one()));
        for m in 1..=max_m {
            let next = powers[(m - 1) as usize].mul(&u_plus_ip)?;
            powers.push(next);
        }
        let mut out = MixedPoly::zero(self.n);
        for (k, c) in &self.terms {
            let z_mono = MixedPoly::monomial(
                self.n,
                k.alpha.clone(),
                MultiIndex::zeros(self.n),
                0,
                c.clone(),
            );
            out = out.add(&z_mono.mul(&powers[k.w as usize])?)?;
        }
        Ok(out)
    }

    pub fn eval_gauss(&self, z: &[GaussRat], w: &GaussRat) -> GaussRat {
        let mut acc = GaussRat::zero();
        for (k, c) in &self.terms {
            let mut t = c.clone();
            for (j, e) in k.alpha.exponents().iter().enumerate() {
                for _ in 0..*e {
                    t *= z[j].clone();
                }
            }
            for _ in 0..k.w {
                t *= w.clone();
            }
            acc += t;
        }
        acc
    }

    pub fn eval_f64(&self, z: &[Complex64], w: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, c) in &self.terms {
            let mut t = gauss_to_c64(c);
            for (j, e) in k.alpha.exponents().iter().enumerate() {
                t *= z[j].powi(*e as i32);
            }
            t *= w.powi(k.w as i32);
            acc += t;
        }
        acc
    }

    pub fn text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.terms
            .iter()
            .map(|(k, c)| {
                let mut vars = z_var_names(&k.alpha, None);
                vars.push(("w".to_string(), k.w));
                term_text(c, &vars)
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

// ---------------------------------------------------------------------------
// MixedPoly
// ---------------------------------------------------------------------------

/// Complex-coefficient polynomial in `(z, zbar, u)`. Tangency residues live
/// here after the substitution `w = u + iP`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedPoly {
    n: usize,
    terms: BTreeMap<MixKey, GaussRat>,
}

impl MixedPoly {
    pub fn zero(n: usize) -> Self {
        MixedPoly {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: GaussRat) -> Self {
        let mut terms = BTreeMap::new();
        insert_term(
            &mut terms,
            MixKey {
                alpha: MultiIndex::zeros(n),
                beta: MultiIndex::zeros(n),
                u: 0,
            },
            c,
        );
        MixedPoly { n, terms }
    }

    pub fn monomial(
        n: usize,
        alpha: MultiIndex,
        beta: MultiIndex,
        u: u32,
        coeff: GaussRat,
    ) -> Self {
        assert_eq!(alpha.len(), n);
        assert_eq!(beta.len(), n);
        let mut terms = BTreeMap::new();
        insert_term(&mut terms, MixKey { alpha, beta, u }, coeff);
        MixedPoly { n, terms }
    }

    pub fn from_terms(
        n: usize,
        raw: Vec<(MultiIndex, MultiIndex, u32, GaussRat)>,
    ) -> Result<Self, RingError> {
        let mut terms = BTreeMap::new();
        for (alpha, beta, u, c) in raw {
            dim_check(n, alpha.len())?;
            dim_check(n, beta.len())?;
            insert_term(&mut terms, MixKey { alpha, beta, u }, c);
        }
        Ok(MixedPoly { n, terms })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MixKey, &GaussRat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, key: &MixKey) -> GaussRat {
        self.terms.get(key).cloned().unwrap_or_else(GaussRat::zero)
    }

    pub fn is_u_free(&self) -> bool {
        self.terms.keys().all(|k| k.u == 0)
    }

    pub fn add(&self, other: &MixedPoly) -> Result<MixedPoly, RingError> {
        dim_check(self.n, other.n)?;
        let mut terms = self.terms.clone();
        for (k, c) in &other.terms {
            insert_term(&mut terms, k.clone(), c.clone());
        }
        Ok(MixedPoly { n: self.n, terms })
    }

    pub fn sub(&self, other: &MixedPoly) -> Result<MixedPoly, RingError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> MixedPoly {
        MixedPoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, s: &GaussRat) -> MixedPoly {
        if s.is_zero() {
            return MixedPoly::zero(self.n);
        }
        MixedPoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.clone(), c.clone() * s.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &MixedPoly) -> Result<MixedPoly, RingError> {
        dim_check(self.n, other.n)?;
        let mut terms = BTreeMap::new();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                let key = MixKey {
                    alpha: ka.alpha.add(&kb.alpha).expect("same dimension"),
                    beta: ka.beta.add(&kb.beta).expect("same dimension"),
                    u: ka.u + kb.u,
                };
                insert_term(&mut terms, key, ca.clone() * cb.clone());
            }
        }
        Ok(MixedPoly { n: self.n, terms })
    }

    /// Complex conjugate: coefficients conjugated, `alpha` and `beta`
    /// swapped (`u` is a real variable).
    pub fn conj(&self) -> MixedPoly {
        MixedPoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.conjugate(), c.conj()))
                .collect(),
        }
    }

    /// True when the polynomial is real-valued, i.e. equals its own
    /// conjugate.
    pub fn is_real_valued(&self) -> bool {
        *self == self.conj()
    }

    /// Formal Wirtinger derivative with respect to `z_j` or `zbar_j`
    /// (1-based `j`).
    pub fn wirtinger(&self, j: usize, conjugated: bool) -> Result<MixedPoly, RingError> {
        if j == 0 || j > self.n {
            return Err(RingError::VariableOutOfRange { j, n: self.n });
        }
        let ji = j - 1;
        let mut terms = BTreeMap::new();
        for (k, c) in &self.terms {
            let side = if conjugated { &k.beta } else { &k.alpha };
            let e = side.get(ji);
            if e == 0 {
                continue;
            }
            let mut exps = side.exponents().to_vec();
            exps[ji] -= 1;
            let reduced = MultiIndex::new(exps);
            let key = if conjugated {
                MixKey {
                    alpha: k.alpha.clone(),
                    beta: reduced,
                    u: k.u,
                }
            } else {
                MixKey {
                    alpha: reduced,
                    beta: k.beta.clone(),
                    u: k.u,
                }
            };
            let factor = gauss(Rat::from_integer(BigInt::from(e)), Rat::zero());
            insert_term(&mut terms, key, c.clone() * factor);
        }
        Ok(MixedPoly { n: self.n, terms })
    }

    /// Exact evaluation with `zbar_j = conj(z_j)` and real `u`.
    pub fn eval_gauss(&self, z: &[GaussRat], u: &Rat) -> GaussRat {
        let zc: Vec<GaussRat> = z.iter().map(|c| c.conj()).collect();
        let ug = gauss(u.clone(), Rat::zero());
        let mut acc = GaussRat::zero();
        for (k, c) in &self.terms {
            let mut t = c.clone();
            for (j, e) in k.alpha.exponents().iter().enumerate() {
                for _ in 0..*e {
                    t *= z[j].clone();
                }
            }
            for (j, e) in k.beta.exponents().iter().enumerate() {
                for _ in 0..*e {
                    t *= zc[j].clone();
                }
            }
            for _ in 0..k.u {
                t *= ug.clone();
            }
            acc += t;
        }
        acc
    }

    pub fn eval_f64(&self, z: &[Complex64], u: f64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, c) in &self.terms {
            let mut t = gauss_to_c64(c);
            for (j, e) in k.alpha.exponents().iter().enumerate() {
                t *= z[j].powi(*e as i32);
            }
            for (j, e) in k.beta.exponents().iter().enumerate() {
                t *= z[j].conj().powi(*e as i32);
            }
            t *= Complex64::new(u, 0.0).powi(k.u as i32);
            acc += t;
        }
        acc
    }

    pub fn text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.terms
            .iter()
            .map(|(k, c)| {
                let mut vars = z_var_names(&k.alpha, Some(&k.beta));
                vars.push(("u".to_string(), k.u));
                term_text(c, &vars)
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{gauss_int, rat, rat_int};

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex::new(v.to_vec())
    }

    /// |z1|^2 in n variables.
    fn abs_z1_sq(n: usize) -> RealPoly {
        RealPoly::from_terms(
            n,
            vec![(
                MultiIndex::unit(n, 0),
                MultiIndex::unit(n, 0),
                gauss_int(1, 0),
            )],
        )
        .unwrap()
    }

    /// |z1|^4 in one variable.
    fn abs_z1_quartic() -> RealPoly {
        RealPoly::from_terms(1, vec![(mi(&[2]), mi(&[2]), gauss_int(1, 0))]).unwrap()
    }

    /// x1 |z2|^2 = (1/2) z1 z2 zb2 + (1/2) zb1 z2 zb2.
    fn tube_poly() -> RealPoly {
        RealPoly::from_terms(
            2,
            vec![
                (mi(&[1, 1]), mi(&[0, 1]), gauss(rat(1, 2), rat_int(0))),
                (mi(&[0, 1]), mi(&[1, 1]), gauss(rat(1, 2), rat_int(0))),
            ],
        )
        .unwrap()
    }

    #[test]
    fn real_arith_examples() {
        let p = abs_z1_sq(1);
        let two_p = p.add(&p).unwrap();
        assert_eq!(two_p.coeff(&mi(&[1]), &mi(&[1])), gauss_int(2, 0));
        let p4 = p.mul(&p).unwrap();
        assert_eq!(p4, abs_z1_quartic());
        assert!(p.add(&p.scale(&rat_int(-1))).unwrap().is_zero());
    }

    #[test]
    fn reality_rejected() {
        let r = RealPoly::from_terms(1, vec![(mi(&[1]), mi(&[0]), gauss_int(1, 0))]);
        assert!(matches!(r, Err(RingError::RealityViolation { .. })));
        // i|z1|^2 is not real-valued either: A[(1),(1)] = i != conj(i).
        let r2 = RealPoly::from_terms(1, vec![(mi(&[1]), mi(&[1]), gauss_int(0, 1))]);
        assert!(matches!(r2, Err(RingError::RealityViolation { .. })));
    }

    #[test]
    fn weighted_degree_terms_examples() {
        let mu = WeightVector::new(vec![rat(1, 2)]).unwrap();
        let p = abs_z1_sq(1).add(&abs_z1_quartic()).unwrap();
        let parts = p.weighted_degree_terms(&mu);
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[&rat_int(1)], abs_z1_sq(1));
        assert_eq!(parts[&rat_int(2)], abs_z1_quartic());
        // parts sum back to p
        let mut sum = RealPoly::zero(1);
        for q in parts.values() {
            sum = sum.add(q).unwrap();
        }
        assert_eq!(sum, p);
        // homogeneous input -> single entry; zero -> empty
        assert_eq!(abs_z1_sq(1).weighted_degree_terms(&mu).len(), 1);
        assert!(RealPoly::zero(1).weighted_degree_terms(&mu).is_empty());
    }

    #[test]
    fn pluriharmonic_examples() {
        assert!(abs_z1_sq(1).is_pluriharmonic_free());
        let zsq = RealPoly::from_terms(
            1,
            vec![
                (mi(&[2]), mi(&[0]), gauss_int(1, 0)),
                (mi(&[0]), mi(&[2]), gauss_int(1, 0)),
            ],
        )
        .unwrap();
        assert!(!zsq.is_pluriharmonic_free());
        assert!(tube_poly().is_pluriharmonic_free());
    }

    #[test]
    fn wirtinger_examples() {
        // d/dz1 |z1|^2 = zb1
        let d = abs_z1_sq(1).wirtinger(1, false).unwrap();
        assert_eq!(
            d,
            MixedPoly::monomial(1, mi(&[0]), mi(&[1]), 0, gauss_int(1, 0))
        );
        // d/dzb1 |z1|^4 = 2 z1^2 zb1
        let d2 = abs_z1_quartic().wirtinger(1, true).unwrap();
        assert_eq!(
            d2,
            MixedPoly::monomial(1, mi(&[2]), mi(&[1]), 0, gauss_int(2, 0))
        );
        // d/dz2 |z1|^2 = 0
        assert!(abs_z1_sq(2).wirtinger(2, false).unwrap().is_zero());
    }

    #[test]
    fn wirtinger_commutes() {
        let p = tube_poly().mul(&tube_poly()).unwrap();
        for j in 1..=2 {
            for k in 1..=2 {
                let a = p.wirtinger(j, false).unwrap().wirtinger(k, true).unwrap();
                let b = p.wirtinger(k, true).unwrap().wirtinger(j, false).unwrap();
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn substitute_w_examples() {
        let p = abs_z1_sq(1);
        // w -> u + i z zb
        let w = HoloPoly::w(1);
        let s = w.substitute_w(&p).unwrap();
        let expected = MixedPoly::from_terms(
            1,
            vec![
                (mi(&[0]), mi(&[0]), 1, gauss_int(1, 0)),
                (mi(&[1]), mi(&[1]), 0, gauss_int(0, 1)),
            ],
        )
        .unwrap();
        assert_eq!(s, expected);
        // z1 (no w) passes through unchanged
        let z = HoloPoly::var(1, 0);
        assert_eq!(
            z.substitute_w(&p).unwrap(),
            MixedPoly::monomial(1, mi(&[1]), mi(&[0]), 0, gauss_int(1, 0))
        );
    }

    /// Independent brute-force oracle for the `w^2` substitution example:
    /// expand `(u + i z zb)^2` by naive term-pair convolution over raw tuples,
    /// bypassing `MixedPoly::mul`.
    #[test]
    fn substitute_w_squared_against_oracle() {
        let p = abs_z1_sq(1);
        let w2 = HoloPoly::monomial(1, mi(&[0]), 2, gauss_int(1, 0));
        let got = w2.substitute_w(&p).unwrap();

        // raw representation of u + i z zb: (a, b, k, coeff)
        let base: Vec<(u32, u32, u32, GaussRat)> =
            vec![(0, 0, 1, gauss_int(1, 0)), (1, 1, 0, gauss_int(0, 1))];
        let mut products: BTreeMap<(u32, u32, u32), GaussRat> = BTreeMap::new();
        for (a1, b1, k1, c1) in &base {
            for (a2, b2, k2, c2) in &base {
                let key = (a1 + a2, b1 + b2, k1 + k2);
                let e = products.entry(key).or_insert_with(GaussRat::zero);
                *e += c1.clone() * c2.clone();
            }
        }
        let oracle = MixedPoly::from_terms(
            1,
            products
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|((a, b, k), c)| (mi(&[a]), mi(&[b]), k, c))
                .collect(),
        )
        .unwrap();
        // oracle = u^2 + 2i u z zb - z^2 zb^2
        assert_eq!(
            oracle.coeff(&MixKey {
                alpha: mi(&[0]),
                beta: mi(&[0]),
                u: 2
            }),
            gauss_int(1, 0)
        );
        assert_eq!(
            oracle.coeff(&MixKey {
                alpha: mi(&[1]),
                beta: mi(&[1]),
                u: 1
            }),
            gauss_int(0, 2)
        );
        assert_eq!(
            oracle.coeff(&MixKey {
                alpha: mi(&[2]),
                beta: mi(&[2]),
                u: 0
            }),
            gauss_int(-1, 0)
        );
        assert_eq!(got, oracle);
    }

    #[test]
    fn substitute_w_is_ring_homomorphism() {
        let p = tube_poly();
        let mut state = 0x5eed_1234_u64;
        let mut next = move || {
            // splitmix64
            state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
            let mut z = state;
            z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
            z ^ (z >> 31)
        };
        let mut rand_holo = |n: usize| {
            let mut terms = Vec::new();
            for _ in 0..3 {
                let a = mi(&[(next() % 3) as u32, (next() % 2) as u32]);
                let w = (next() % 2) as u32;
                let c = gauss_int((next() % 7) as i64 - 3, (next() % 7) as i64 - 3);
                terms.push((a, w, c));
            }
            HoloPoly::from_terms(n, terms).unwrap()
        };
        for _ in 0..10 {
            let h1 = rand_holo(2);
            let h2 = rand_holo(2);
            let lhs = h1.mul(&h2).unwrap().substitute_w(&p).unwrap();
            let rhs = h1
                .substitute_w(&p)
                .unwrap()
                .mul(&h2.substitute_w(&p).unwrap())
                .unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn euler_identity_weighted_degree_one() {
        // For P homogeneous of weighted degree 1:
        // sum_j mu_j z_j dP/dz_j + sum_j mu_j zb_j dP/dzb_j = P.
        let cases: Vec<(RealPoly, WeightVector)> = vec![
            (abs_z1_sq(1), WeightVector::new(vec![rat(1, 2)]).unwrap()),
            (
                abs_z1_quartic(),
                WeightVector::new(vec![rat(1, 4)]).unwrap(),
            ),
            (
                tube_poly(),
                WeightVector::new(vec![rat(1, 2), rat(1, 4)]).unwrap(),
            ),
        ];
        for (p, mu) in cases {
            assert_eq!(p.homogeneous_degree(&mu), Some(rat_int(1)));
            let mut acc = MixedPoly::zero(p.n());
            for j in 1..=p.n() {
                let zj = MixedPoly::monomial(
                    p.n(),
                    MultiIndex::unit(p.n(), j - 1),
                    MultiIndex::zeros(p.n()),
                    0,
                    gauss(mu.get(j - 1).clone(), rat_int(0)),
                );
                let zbj = MixedPoly::monomial(
                    p.n(),
                    MultiIndex::zeros(p.n()),
                    MultiIndex::unit(p.n(), j - 1),
                    0,
                    gauss(mu.get(j - 1).clone(), rat_int(0)),
                );
                acc = acc
                    .add(&zj.mul(&p.wirtinger(j, false).unwrap()).unwrap())
                    .unwrap();
                acc = acc
                    .add(&zbj.mul(&p.wirtinger(j, true).unwrap()).unwrap())
                    .unwrap();
            }
            assert_eq!(acc, p.to_mixed());
        }
    }

    #[test]
    fn xl_decompose_examples() {
        // x1 |z2|^2 -> [0, |z2|^2]
        let parts = tube_poly().xl_decompose(1).unwrap();
        assert_eq!(parts.len(), 2);
        assert!(parts[0].is_zero());
        // the remaining variable z2 is reindexed to z1
        assert_eq!(parts[1], abs_z1_sq(1));
        // |z2|^4 (no z1 dependence) -> [|z2|^4]
        let q = RealPoly::from_terms(2, vec![(mi(&[0, 2]), mi(&[0, 2]), gauss_int(1, 0))]).unwrap();
        let parts = q.xl_decompose(1).unwrap();
        assert_eq!(parts.len(), 1);
        assert_eq!(
            parts[0],
            RealPoly::from_terms(1, vec![(mi(&[2]), mi(&[2]), gauss_int(1, 0))]).unwrap()
        );
        // |z1|^2 depends on z1 beyond Re z1 -> error
        assert!(matches!(
            abs_z1_sq(1).xl_decompose(1),
            Err(RingError::NotXlExpressible { l: 1 })
        ));
        // zero polynomial -> empty list
        assert!(RealPoly::zero(2).xl_decompose(1).unwrap().is_empty());
    }

    #[test]
    fn xl_decompose_reconstructs() {
        // P = x1^2 |z2|^2, legitimately m = 2.
        let x1sq_z2 = RealPoly::from_terms(
            2,
            vec![
                (mi(&[2, 1]), mi(&[0, 1]), gauss(rat(1, 4), rat_int(0))),
                (mi(&[1, 1]), mi(&[1, 1]), gauss(rat(1, 2), rat_int(0))),
                (mi(&[0, 1]), mi(&[2, 1]), gauss(rat(1, 4), rat_int(0))),
            ],
        )
        .unwrap();
        let parts = x1sq_z2.xl_decompose(1).unwrap();
        assert_eq!(parts.len(), 3);
        assert!(parts[0].is_zero());
        assert!(parts[1].is_zero());
        assert_eq!(parts[2], abs_z1_sq(1));
    }

    #[test]
    fn exponents_of_weight() {
        let mu = WeightVector::new(vec![rat(1, 2), rat(1, 4)]).unwrap();
        let exps = mu.exponents_of_weight(&rat(1, 2));
        assert_eq!(exps, vec![mi(&[0, 2]), mi(&[1, 0])]);
        assert!(mu.exponents_of_weight(&rat(-1, 2)).is_empty());
        assert_eq!(mu.exponents_of_weight(&rat_int(0)), vec![mi(&[0, 0])]);
    }

    #[test]
    fn weight_vector_validation() {
        assert!(WeightVector::new(vec![rat(1, 2), rat(1, 4)]).is_ok());
        assert!(WeightVector::new(vec![rat(1, 4), rat(1, 2)]).is_err());
        assert!(WeightVector::new(vec![rat(2, 3)]).is_err());
        assert!(WeightVector::new(vec![rat_int(0)]).is_err());
        assert!(WeightVector::new(vec![]).is_err());
    }

    #[test]
    fn text_forms() {
        assert_eq!(tube_poly().text(), "(1/2) z2 zb1 zb2 + (1/2) z1 z2 zb2");
        let h = HoloPoly::from_terms(
            1,
            vec![
                (mi(&[1]), 1, gauss(rat(1, 2), rat_int(0))),
                (mi(&[0]), 2, gauss_int(0, 1)),
            ],
        )
        .unwrap();
        assert_eq!(h.text(), "(i) w^2 + (1/2) z1 w");
    }
}
