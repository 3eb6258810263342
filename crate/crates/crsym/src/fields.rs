//! Holomorphic vector fields, the tangency operator, Lie brackets, and the
//! explicit symmetry constructors.
//!
//! A field `X = sum_j f_j(z, w) d/dz_j + g(z, w) d/dw` acts on the defining
//! function `Im w - P(z, zbar)` through its real part `X + conj(X)`. With the
//! conventions
//!
//! * real field of `X` is `X + conj(X)` (twice the real part),
//! * `Im w = (w - wbar) / 2i`,
//!
//! the restriction of `(X + conj X)(Im w - P)` to `M_P` (where `w = u + iP`)
//! equals `T + conj(T)` for
//!
//! ```text
//!     T = [ g / 2i - sum_j f_j dP/dz_j ]  at  w = u + i P(z, zbar).
//! ```
//!
//! `X` is an infinitesimal automorphism exactly when this residue is the zero
//! polynomial; [`tangency`] computes it. [`holo_tangency`] returns `T` itself,
//! the full complex condition used by the holomorphic-degeneracy search.

use crate::arith::{gauss, gauss_int, rat, rat_int, GaussRat, MultiIndex, Rat};
use crate::ring::{HoloKey, HoloPoly, MixedPoly, RealPoly, RingError, WeightVector};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("zero field has no weighted degree")]
    ZeroField,
    #[error("inhomogeneous field: distinct weighted degrees {0:?}")]
    Inhomogeneous(Vec<String>),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// Holomorphic vector field with polynomial coefficients:
/// `f[0] d/dz1 + ... + f[n-1] d/dzn + g d/dw`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VField {
    n: usize,
    f: Vec<HoloPoly>,
    g: HoloPoly,
}

impl VField {
    pub fn new(f: Vec<HoloPoly>, g: HoloPoly) -> Result<Self, RingError> {
        let n = f.len();
        for fj in &f {
            if fj.n() != n {
                return Err(RingError::DimensionMismatch {
                    expected: n,
                    got: fj.n(),
                });
            }
        }
        if g.n() != n {
            return Err(RingError::DimensionMismatch {
                expected: n,
                got: g.n(),
            });
        }
        Ok(VField { n, f, g })
    }

    pub fn zero(n: usize) -> Self {
        VField {
            n,
            f: (0..n).map(|_| HoloPoly::zero(n)).collect(),
            g: HoloPoly::zero(n),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Coefficient of `d/dz_j` (zero-based `j`).
    pub fn f(&self, j: usize) -> &HoloPoly {
        &self.f[j]
    }

    /// Coefficient of `d/dw`.
    pub fn g(&self) -> &HoloPoly {
        &self.g
    }

    pub fn is_zero(&self) -> bool {
        self.f.iter().all(|p| p.is_zero()) && self.g.is_zero()
    }

    pub fn add(&self, other: &VField) -> Result<VField, RingError> {
        if self.n != other.n {
            return Err(RingError::DimensionMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        let f = self
            .f
            .iter()
            .zip(&other.f)
            .map(|(a, b)| a.add(b))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(VField {
            n: self.n,
            f,
            g: self.g.add(&other.g)?,
        })
    }

    pub fn sub(&self, other: &VField) -> Result<VField, RingError> {
        self.add(&other.scale(&gauss_int(-1, 0)))
    }

    pub fn scale(&self, s: &GaussRat) -> VField {
        VField {
            n: self.n,
            f: self.f.iter().map(|p| p.scale(s)).collect(),
            g: self.g.scale(s),
        }
    }

    pub fn scale_rat(&self, s: &Rat) -> VField {
        self.scale(&gauss(s.clone(), Rat::zero()))
    }

    /// True when no coefficient involves `w`, equivalently `[X, d/dw] = 0`.
    pub fn is_rigid(&self) -> bool {
        self.f.iter().all(|p| p.is_w_free()) && self.g.is_w_free()
    }

    /// Weighted degree when every coefficient monomial is consistent with a
    /// single degree `l` (each `f_j` of `(mu,1)`-weight `l + mu_j`, `g` of
    /// weight `l + 1`).
    pub fn graded_degree(&self, mu: &WeightVector) -> Result<Rat, FieldError> {
        let mut degrees: Vec<Rat> = Vec::new();
        let mut push = |d: Rat| {
            if !degrees.contains(&d) {
                degrees.push(d);
            }
        };
        for (j, fj) in self.f.iter().enumerate() {
            for (key, _) in fj.terms() {
                let w = HoloPoly::term_weight(key, mu).expect("dimension");
                push(w - mu.get(j).clone());
            }
        }
        for (key, _) in self.g.terms() {
            let w = HoloPoly::term_weight(key, mu).expect("dimension");
            push(w - rat_int(1));
        }
        match degrees.len() {
            0 => Err(FieldError::ZeroField),
            1 => Ok(degrees.pop().unwrap()),
            _ => {
                degrees.sort();
                Err(FieldError::Inhomogeneous(
                    degrees.iter().map(crate::arith::format_rat).collect(),
                ))
            }
        }
    }

    /// Lie bracket of holomorphic fields, exact.
    pub fn bracket(&self, other: &VField) -> Result<VField, RingError> {
        if self.n != other.n {
            return Err(RingError::DimensionMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        let n = self.n;
        // derivative of a coefficient along a field: sum_j f_j d/dz_j + g d/dw
        let apply = |x: &VField, coeff: &HoloPoly| -> Result<HoloPoly, RingError> {
            let mut acc = HoloPoly::zero(n);
            for j in 0..n {
                acc = acc.add(&x.f[j].mul(&coeff.d_z(j + 1)?)?)?;
            }
            acc.add(&x.g.mul(&coeff.d_w())?)
        };
        let mut f = Vec::with_capacity(n);
        for k in 0..n {
            f.push(apply(self, &other.f[k])?.sub(&apply(other, &self.f[k])?)?);
        }
        let g = apply(self, &other.g)?.sub(&apply(other, &self.g)?)?;
        Ok(VField { n, f, g })
    }

    /// Canonical text form, e.g. `(1) d/dz1 + (2i) z1 d/dw`.
    pub fn text(&self) -> String {
        let mut parts = Vec::new();
        for (j, fj) in self.f.iter().enumerate() {
            for (key, c) in fj.terms() {
                parts.push(format!("{} d/dz{}", super_term_text(key, c), j + 1));
            }
        }
        for (key, c) in self.g.terms() {
            parts.push(format!("{} d/dw", super_term_text(key, c)));
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

fn super_term_text(key: &HoloKey, c: &GaussRat) -> String {
    let single = HoloPoly::monomial(key.alpha.len(), key.alpha.clone(), key.w, c.clone());
    single.text()
}

// ---------------------------------------------------------------------------
// Tangency
// ---------------------------------------------------------------------------

/// `T = [g/2i - sum_j f_j dP/dz_j]` restricted to the hypersurface
/// (`w = u + iP`). This is the full complex condition; it is C-linear in the
/// coefficients of `X`.
pub fn holo_tangency(x: &VField, p: &RealPoly) -> Result<MixedPoly, RingError> {
    if x.n() != p.n() {
        return Err(RingError::DimensionMismatch {
            expected: p.n(),
            got: x.n(),
        });
    }
    // 1/(2i) = -i/2
    let half_over_i = gauss(Rat::zero(), rat(-1, 2));
    let mut t = x.g.substitute_w(p)?.scale(&half_over_i);
    for j in 0..x.n() {
        let fj = x.f[j].substitute_w(p)?;
        let dp = p.wirtinger(j + 1, false)?;
        t = t.sub(&fj.mul(&dp)?)?;
    }
    Ok(t)
}

/// Tangency residue `(X + conj X)(Im w - P)` restricted to `M_P`, computed as
/// `T + conj(T)`. `X` is an infinitesimal automorphism iff the result is the
/// zero polynomial. The output is always real-valued by construction.
pub fn tangency(x: &VField, p: &RealPoly) -> Result<MixedPoly, RingError> {
    let t = holo_tangency(x, p)?;
    t.add(&t.conj())
}

/// Numeric cross-check of the tangency residue at a point of `M_P`: evaluates
/// `2 Re[ g(z,w)/2i - sum_j f_j(z,w) dP/dz_j(z,zbar) ]` in floating point with
/// `w = u + i P(z, zbar)`, bypassing the exact substitution machinery.
pub fn tangency_residual_f64(x: &VField, p: &RealPoly, z: &[Complex64], u: f64) -> f64 {
    let pv = p.eval_f64(z);
    let w = Complex64::new(u, pv.re);
    let mut t = x.g.eval_f64(z, w) * Complex64::new(0.0, -0.5);
    for j in 0..x.n() {
        let dp = p
            .wirtinger(j + 1, false)
            .expect("in range")
            .eval_f64(z, 0.0);
        t -= x.f[j].eval_f64(z, w) * dp;
    }
    2.0 * t.re
}

// ---------------------------------------------------------------------------
// Graded fields
// ---------------------------------------------------------------------------

/// A vector field together with its weighted degree; construction checks the
/// homogeneity of every coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedVField {
    pub field: VField,
    pub degree: Rat,
}

impl GradedVField {
    pub fn new(field: VField, degree: Rat, mu: &WeightVector) -> Result<Self, FieldError> {
        for (j, fj) in field.f.iter().enumerate() {
            if !fj.is_zero() {
                let expect = degree.clone() + mu.get(j).clone();
                if fj.homogeneous_weight(mu) != Some(expect) {
                    return Err(FieldError::Inhomogeneous(vec![format!("f{}", j + 1)]));
                }
            }
        }
        if !field.g.is_zero() {
            let expect = degree.clone() + rat_int(1);
            if field.g.homogeneous_weight(mu) != Some(expect) {
                return Err(FieldError::Inhomogeneous(vec!["g".to_string()]));
            }
        }
        Ok(GradedVField { field, degree })
    }
}

// ---------------------------------------------------------------------------
// Explicit symmetry constructors
// ---------------------------------------------------------------------------

/// A constructor-produced field with a display name and its weighted degree.
#[derive(Debug, Clone)]
pub struct NamedField {
    pub name: String,
    pub field: VField,
    pub degree: Rat,
}

/// `W = d/dw`, the first symmetry; weighted degree -1.
pub fn w_field(n: usize) -> VField {
    let mut x = VField::zero(n);
    x.g = HoloPoly::one(n);
    x
}

/// Euler field `E = w d/dw + sum_j mu_j z_j d/dz_j`; the grading element and
/// the second symmetry.
pub fn euler(mu: &WeightVector) -> VField {
    let n = mu.n();
    let f = (0..n)
        .map(|j| HoloPoly::var(n, j).scale(&gauss(mu.get(j).clone(), Rat::zero())))
        .collect();
    VField {
        n,
        f,
        g: HoloPoly::w(n),
    }
}

/// Imaginary Euler field `i sum_j mu_j z_j d/dz_j`; a symmetry exactly on
/// balanced models.
pub fn imaginary_euler(mu: &WeightVector) -> VField {
    let n = mu.n();
    let f = (0..n)
        .map(|j| HoloPoly::var(n, j).scale(&gauss(Rat::zero(), mu.get(j).clone())))
        .collect();
    VField {
        n,
        f,
        g: HoloPoly::zero(n),
    }
}

/// Third symmetry `G1 = (1/2) w^2 d/dw + sum_j mu_j w z_j d/dz_j`; weighted
/// degree 1, tangent exactly on balanced models, and `[W, G1] = E`.
pub fn third_symmetry(mu: &WeightVector) -> VField {
    let n = mu.n();
    let f = (0..n)
        .map(|j| {
            HoloPoly::monomial(
                n,
                MultiIndex::unit(n, j),
                1,
                gauss(mu.get(j).clone(), Rat::zero()),
            )
        })
        .collect();
    let g = HoloPoly::monomial(n, MultiIndex::zeros(n), 2, gauss(rat(1, 2), Rat::zero()));
    VField { n, f, g }
}

/// Half-weight pair `a d/dz_j + 2i conj(a) z_j d/dw` for `a in {1, i}`
/// (1-based `j` with `mu_j = 1/2`); weighted degree -1/2.
pub fn half_weight_pair(n: usize, j: usize) -> [VField; 2] {
    let ji = j - 1;
    let mk = |a: GaussRat| {
        let mut x = VField::zero(n);
        x.f[ji] = HoloPoly::monomial(n, MultiIndex::zeros(n), 0, a.clone());
        let two_i_abar = gauss_int(0, 2) * a.conj();
        x.g = HoloPoly::monomial(n, MultiIndex::unit(n, ji), 0, two_i_abar);
        x
    };
    [mk(gauss_int(1, 0)), mk(gauss_int(0, 1))]
}

/// Integrated partners of the half-weight pair:
/// `a w d/dz_j + 4i conj(a) z_j sum_k mu_k z_k d/dz_k + 2i conj(a) z_j w d/dw`
/// for `a in {1, i}`; weighted degree 1/2.
pub fn integrated_half_pair(mu: &WeightVector, j: usize) -> [VField; 2] {
    let n = mu.n();
    let ji = j - 1;
    let mk = |a: GaussRat| {
        let abar = a.conj();
        let mut f: Vec<HoloPoly> = (0..n)
            .map(|k| {
                // 4i abar mu_k z_j z_k
                let coeff = gauss_int(0, 4) * abar.clone() * gauss(mu.get(k).clone(), Rat::zero());
                let alpha = MultiIndex::unit(n, ji)
                    .add(&MultiIndex::unit(n, k))
                    .unwrap();
                HoloPoly::monomial(n, alpha, 0, coeff)
            })
            .collect();
        f[ji] = f[ji]
            .add(&HoloPoly::monomial(n, MultiIndex::zeros(n), 1, a.clone()))
            .unwrap();
        let g = HoloPoly::monomial(n, MultiIndex::unit(n, ji), 1, gauss_int(0, 2) * abar);
        VField { n, f, g }
    };
    [mk(gauss_int(1, 0)), mk(gauss_int(0, 1))]
}

/// True when `z_j` (1-based) enters `P` only through a unit `|z_j|^2` term,
/// i.e. the model has the leading block form in the given coordinates.
pub fn has_leading_block(p: &RealPoly, j: usize) -> bool {
    let n = p.n();
    let ji = j - 1;
    let ej = MultiIndex::unit(n, ji);
    if p.coeff(&ej, &ej) != gauss_int(1, 0) {
        return false;
    }
    p.terms().all(|(k, _)| {
        (k.alpha == ej && k.beta == ej) || (k.alpha.get(ji) == 0 && k.beta.get(ji) == 0)
    })
}

/// All explicit symmetry constructors instantiated for the given weights and
/// defining polynomial: `W`, `E`, the imaginary Euler field, the third
/// symmetry, and — for every `j` with `mu_j = 1/2` whose `|z_j|^2` block is
/// leading — the half-weight pairs and their integrated partners with
/// `a in {1, i}`.
pub fn known_fields(mu: &WeightVector, p: &RealPoly) -> Vec<NamedField> {
    let n = mu.n();
    let half = rat(1, 2);
    let mut out = vec![
        NamedField {
            name: "W".into(),
            field: w_field(n),
            degree: rat_int(-1),
        },
        NamedField {
            name: "E".into(),
            field: euler(mu),
            degree: rat_int(0),
        },
        NamedField {
            name: "Etilde".into(),
            field: imaginary_euler(mu),
            degree: rat_int(0),
        },
        NamedField {
            name: "G1".into(),
            field: third_symmetry(mu),
            degree: rat_int(1),
        },
    ];
    for j in 1..=n {
        if *mu.get(j - 1) == half && has_leading_block(p, j) {
            let [a1, ai] = half_weight_pair(n, j);
            out.push(NamedField {
                name: format!("half_z{}_1", j),
                field: a1,
                degree: -half.clone(),
            });
            out.push(NamedField {
                name: format!("half_z{}_i", j),
                field: ai,
                degree: -half.clone(),
            });
            let [b1, bi] = integrated_half_pair(mu, j);
            out.push(NamedField {
                name: format!("int_z{}_1", j),
                field: b1,
                degree: half.clone(),
            });
            out.push(NamedField {
                name: format!("int_z{}_i", j),
                field: bi,
                degree: half.clone(),
            });
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Ansatz spaces
// ---------------------------------------------------------------------------

/// The finite-dimensional space of candidate graded fields at a fixed
/// weighted degree: for each `d/dz_j` slot all monomials `z^alpha w^m` with
/// `|alpha|_mu + m = d + mu_j`, and for the `d/dw` slot those of weight
/// `d + 1`. One complex unknown per monomial; the real unknown vector
/// interleaves `(Re c_0, Im c_0, Re c_1, ...)`.
#[derive(Debug, Clone)]
pub struct Ansatz {
    n: usize,
    degree: Rat,
    /// `slots[j]` for `j < n` backs `d/dz_{j+1}`; `slots[n]` backs `d/dw`.
    slots: Vec<Vec<HoloKey>>,
}

impl Ansatz {
    pub fn new(mu: &WeightVector, degree: &Rat) -> Ansatz {
        let n = mu.n();
        let mut slots = Vec::with_capacity(n + 1);
        for j in 0..=n {
            let target = if j < n {
                degree.clone() + mu.get(j).clone()
            } else {
                degree.clone() + rat_int(1)
            };
            slots.push(Self::monomials_of_weight(mu, &target));
        }
        Ansatz {
            n,
            degree: degree.clone(),
            slots,
        }
    }

    fn monomials_of_weight(mu: &WeightVector, target: &Rat) -> Vec<HoloKey> {
        let mut out = Vec::new();
        if target.is_negative() {
            return out;
        }
        let m_max = target.floor().to_integer().to_u32().unwrap_or(0);
        for m in 0..=m_max {
            let z_weight = target.clone() - Rat::from_integer(BigInt::from(m));
            for alpha in mu.exponents_of_weight(&z_weight) {
                out.push(HoloKey { alpha, w: m });
            }
        }
        out.sort();
        out
    }

    pub fn degree(&self) -> &Rat {
        &self.degree
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn slots(&self) -> &[Vec<HoloKey>] {
        &self.slots
    }

    /// Number of complex unknowns.
    pub fn unknown_count(&self) -> usize {
        self.slots.iter().map(|s| s.len()).sum()
    }

    /// Number of real unknowns (two per complex one).
    pub fn real_dim(&self) -> usize {
        2 * self.unknown_count()
    }

    pub fn is_empty(&self) -> bool {
        self.unknown_count() == 0
    }

    /// `(slot, monomial)` of complex unknown `t`; `slot == n` is the `d/dw`
    /// slot.
    pub fn unknown(&self, t: usize) -> (usize, &HoloKey) {
        let mut t = t;
        for (j, slot) in self.slots.iter().enumerate() {
            if t < slot.len() {
                return (j, &slot[t]);
            }
            t -= slot.len();
        }
        panic!("unknown index out of range");
    }

    /// Indices of complex unknowns whose monomial involves `w`.
    pub fn w_unknowns(&self) -> Vec<usize> {
        (0..self.unknown_count())
            .filter(|&t| self.unknown(t).1.w > 0)
            .collect()
    }

    /// The field with a single unit coefficient on complex unknown `t`.
    pub fn unit_field(&self, t: usize) -> VField {
        let mut coeffs = vec![GaussRat::zero(); self.unknown_count()];
        coeffs[t] = GaussRat::one();
        self.field_from_gauss(&coeffs)
    }

    pub fn field_from_gauss(&self, coeffs: &[GaussRat]) -> VField {
        assert_eq!(coeffs.len(), self.unknown_count());
        let mut x = VField::zero(self.n);
        let mut t = 0;
        for (j, slot) in self.slots.iter().enumerate() {
            for key in slot {
                let c = coeffs[t].clone();
                t += 1;
                if c.is_zero() {
                    continue;
                }
                let mono = HoloPoly::monomial(self.n, key.alpha.clone(), key.w, c);
                if j < self.n {
                    x.f[j] = x.f[j].add(&mono).unwrap();
                } else {
                    x.g = x.g.add(&mono).unwrap();
                }
            }
        }
        x
    }

    /// Reconstructs a field from the interleaved real coordinate vector.
    pub fn field_from_real(&self, v: &[Rat]) -> VField {
        assert_eq!(v.len(), self.real_dim());
        let coeffs: Vec<GaussRat> = (0..self.unknown_count())
            .map(|t| gauss(v[2 * t].clone(), v[2 * t + 1].clone()))
            .collect();
        self.field_from_gauss(&coeffs)
    }

    /// Complex coordinates of a field in this ansatz, or `None` when the
    /// field has a monomial outside the space.
    pub fn coordinates_of(&self, x: &VField) -> Option<Vec<GaussRat>> {
        if x.n() != self.n {
            return None;
        }
        let mut coeffs = vec![GaussRat::zero(); self.unknown_count()];
        let mut base = 0;
        for (j, slot) in self.slots.iter().enumerate() {
            let poly = if j < self.n { &x.f[j] } else { &x.g };
            for (key, c) in poly.terms() {
                {
                    let idx = slot.iter().position(|k| k == key)?;
                    coeffs[base + idx] = c.clone()
                }
            }
            base += slot.len();
        }
        Some(coeffs)
    }

    /// Interleaved real coordinates of a field, when it lies in the space.
    pub fn real_coordinates_of(&self, x: &VField) -> Option<Vec<Rat>> {
        let coeffs = self.coordinates_of(x)?;
        let mut v = Vec::with_capacity(2 * coeffs.len());
        for c in coeffs {
            v.push(c.re);
            v.push(c.im);
        }
        Some(v)
    }
}
