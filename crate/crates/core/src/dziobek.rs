//! Dziobek coordinates and the algebra built on them.
//!
//! The six unknowns are the squared mutual distances
//! `a = r12², b = r13², c = r14², d = r23², e = r24², f = r34²`.
//! A convex configuration is a central configuration iff, for every pair,
//!
//! ```text
//! ψ'(r_ij²) = ν/(m_i m_j) · Δ_i Δ_j + ξ
//! ```
//!
//! together with planarity `S = 0`, where `ψ(s) = s^{-1/2}`, `Δ_i` are the
//! oriented areas and `ν, ξ` are Lagrange multipliers.

use crate::error::{Error, Result};
use crate::geometry::OrientedAreas;
use serde::{Deserialize, Serialize};

/// Pair index order used everywhere a six-vector appears: `12, 13, 14, 23, 24, 34`.
pub const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Position of pair `(i, j)` in [`PAIRS`].
pub fn pair_index(i: usize, j: usize) -> Option<usize> {
    let (lo, hi) = if i < j { (i, j) } else { (j, i) };
    PAIRS.iter().position(|&p| p == (lo, hi))
}

/// Masses `(δ, δ, α, β)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MassVector {
    pub delta: f64,
    pub alpha: f64,
    pub beta: f64,
}

impl MassVector {
    /// Masses `(1, 1, α, β)`.
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        Self::with_delta(1.0, alpha, beta)
    }

    pub fn with_delta(delta: f64, alpha: f64, beta: f64) -> Result<Self> {
        for (name, m) in [("delta", delta), ("alpha", alpha), ("beta", beta)] {
            if !(m > 0.0 && m.is_finite()) {
                return Err(Error::Domain(format!("mass {name} must be positive, got {m}")));
            }
        }
        Ok(Self { delta, alpha, beta })
    }

    /// The four equal masses `(1, 1, 1, 1)`.
    pub fn equal() -> Self {
        Self {
            delta: 1.0,
            alpha: 1.0,
            beta: 1.0,
        }
    }

    pub fn masses(&self) -> [f64; 4] {
        [self.delta, self.delta, self.alpha, self.beta]
    }

    /// Total mass `m'`.
    pub fn mprime(&self) -> f64 {
        2.0 * self.delta + self.alpha + self.beta
    }

    pub fn pair_product(&self, i: usize, j: usize) -> f64 {
        let m = self.masses();
        m[i] * m[j]
    }

    /// Every mass divided by `eta`.
    pub fn scaled(&self, eta: f64) -> Self {
        Self {
            delta: self.delta / eta,
            alpha: self.alpha / eta,
            beta: self.beta / eta,
        }
    }

    /// Whether at most one of `α, β` exceeds `δ`, the kite theorem's hypothesis.
    pub fn within_kite_hypothesis(&self) -> bool {
        self.alpha <= self.delta || self.beta <= self.delta
    }
}

/// The six squared mutual distances.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 6]", into = "[f64; 6]")]
pub struct SquaredDistances {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub e: f64,
    pub f: f64,
}

impl SquaredDistances {
    pub fn new(a: f64, b: f64, c: f64, d: f64, e: f64, f: f64) -> Result<Self> {
        Self::from_array([a, b, c, d, e, f])
    }

    pub fn from_array(v: [f64; 6]) -> Result<Self> {
        if let Some(x) = v.iter().find(|x| !(**x > 0.0 && x.is_finite())) {
            return Err(Error::Domain(format!(
                "squared distances must be positive, got {x}"
            )));
        }
        Ok(Self::from_array_unchecked(v))
    }

    pub(crate) fn from_array_unchecked(v: [f64; 6]) -> Self {
        Self {
            a: v[0],
            b: v[1],
            c: v[2],
            d: v[3],
            e: v[4],
            f: v[5],
        }
    }

    pub fn as_array(&self) -> [f64; 6] {
        [self.a, self.b, self.c, self.d, self.e, self.f]
    }

    /// `r_ij²` for body indices in `0..4`; zero on the diagonal.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        match pair_index(i, j) {
            Some(k) if i != j => self.as_array()[k],
            _ => 0.0,
        }
    }

    /// Mean squared distance; the square of the length scale used by every
    /// scale-relative tolerance.
    pub fn scale2(&self) -> f64 {
        self.as_array().iter().sum::<f64>() / 6.0
    }

    /// Every entry multiplied by `k`.
    pub fn scaled(&self, k: f64) -> Self {
        Self::from_array_unchecked(self.as_array().map(|x| x * k))
    }

    /// Moment of inertia `I = (1/m') Σ m_i m_j r_ij²`.
    pub fn inertia(&self, m: &MassVector) -> f64 {
        let v = self.as_array();
        PAIRS
            .iter()
            .zip(v)
            .map(|(&(i, j), r2)| m.pair_product(i, j) * r2)
            .sum::<f64>()
            / m.mprime()
    }
}

impl TryFrom<[f64; 6]> for SquaredDistances {
    type Error = Error;
    fn try_from(v: [f64; 6]) -> Result<Self> {
        Self::from_array(v)
    }
}

impl From<SquaredDistances> for [f64; 6] {
    fn from(sq: SquaredDistances) -> Self {
        sq.as_array()
    }
}

pub fn psi(s: f64) -> Result<f64> {
    if s > 0.0 {
        Ok(1.0 / s.sqrt())
    } else {
        Err(Error::Domain(format!("psi needs s > 0, got {s}")))
    }
}

/// `ψ'(s) = -½ s^{-3/2}`.
pub fn psi_prime(s: f64) -> Result<f64> {
    if s > 0.0 {
        Ok(psi_prime_unchecked(s))
    } else {
        Err(Error::Domain(format!("psi' needs s > 0, got {s}")))
    }
}

#[inline]
pub(crate) fn psi_prime_unchecked(s: f64) -> f64 {
    -0.5 / (s * s.sqrt())
}

/// `ψ'` evaluated at each squared distance: `A..F`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PsiValues {
    pub values: [f64; 6],
}

impl PsiValues {
    pub fn from_distances(sq: &SquaredDistances) -> Self {
        Self {
            values: sq.as_array().map(psi_prime_unchecked),
        }
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        pair_index(i, j).map_or(0.0, |k| self.values[k])
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }
}

/// A point of the Dziobek system: distances, areas and both multipliers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DziobekState {
    pub sq: SquaredDistances,
    pub areas: OrientedAreas,
    pub nu: f64,
    pub xi: f64,
}

impl DziobekState {
    /// Build a state from distances alone: areas by Heron, multipliers by a
    /// least-squares fit of the six equations.
    pub fn from_distances(sq: SquaredDistances, m: &MassVector) -> Result<Self> {
        let areas = heron_areas(&sq)?;
        let (nu, xi) = fit_multipliers(&sq, &areas, m);
        Ok(Self { sq, areas, nu, xi })
    }

    /// Dziobek's multiplier on `S`, `ν / 32`.
    pub fn lambda_dz(&self) -> f64 {
        self.nu / 32.0
    }

    /// Multiplier on the moment of inertia, `μ = ξ m'`.
    pub fn mu(&self, m: &MassVector) -> f64 {
        self.xi * m.mprime()
    }

    /// Dilation multiplying every squared distance by `k`. Solutions map to
    /// solutions: areas scale by `k`, `ν` by `k^{-7/2}`, `ξ` by `k^{-3/2}`.
    pub fn dilate(&self, k: f64) -> Self {
        Self {
            sq: self.sq.scaled(k),
            areas: self.areas.scaled(k),
            nu: self.nu * k.powf(-3.5),
            xi: self.xi * k.powf(-1.5),
        }
    }
}

/// Residuals of the whole Dziobek system at a state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResidualVector {
    /// One entry per pair in [`PAIRS`] order.
    pub cc: [f64; 6],
    pub planarity: f64,
    pub t_spread: f64,
}

impl ResidualVector {
    pub fn evaluate(st: &DziobekState, m: &MassVector) -> Result<Self> {
        let cc = cc_residuals(st, m)?;
        let t = t_values(&st.sq, &st.areas);
        let (lo, hi) = t
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| {
                (lo.min(x), hi.max(x))
            });
        Ok(Self {
            cc,
            planarity: cayley(&st.sq),
            t_spread: hi - lo,
        })
    }

    /// Max-norm with each block made scale free: `cc` relative to `max|ψ'|`,
    /// `S` relative to `L⁶` and the `t` spread relative to `L⁴`, where `L²` is
    /// the mean squared distance.
    pub fn scaled_max(&self, sq: &SquaredDistances) -> f64 {
        let l2 = sq.scale2();
        let psi_scale = PsiValues::from_distances(sq).max_abs();
        let cc = self.cc.iter().fold(0.0_f64, |m, r| m.max(r.abs())) / psi_scale;
        cc.max(self.planarity.abs() / l2.powi(3))
            .max(self.t_spread.abs() / (l2 * l2))
    }

    pub fn scaled_cc_max(&self, sq: &SquaredDistances) -> f64 {
        let psi_scale = PsiValues::from_distances(sq).max_abs();
        self.cc.iter().fold(0.0_f64, |m, r| m.max(r.abs())) / psi_scale
    }
}

/// Standard symmetric Cayley–Menger determinant of the four points,
/// `288 V²` for a tetrahedron of volume `V`; zero exactly for planar sets.
pub fn cayley(sq: &SquaredDistances) -> f64 {
    let SquaredDistances { a, b, c, d, e, f } = *sq;
    2.0 * (a * f * (b + c + d + e - a - f)
        + b * e * (a + c + d + f - b - e)
        + c * d * (a + b + e + f - c - d)
        - (a * b * d + a * c * e + b * c * f + d * e * f))
}

/// Analytic partial derivatives of [`cayley`] with respect to `a..f`.
///
/// On planar data these equal `-32 Δ_i Δ_j` for the corresponding pair.
pub fn cayley_gradient(sq: &SquaredDistances) -> Result<[f64; 6]> {
    let s = cayley(sq);
    let threshold = PLANARITY_TOL * sq.scale2().powi(3);
    if s.abs() > threshold {
        return Err(Error::NotPlanar {
            value: s,
            threshold,
        });
    }
    Ok(cayley_gradient_unchecked(sq))
}

pub(crate) fn cayley_gradient_unchecked(sq: &SquaredDistances) -> [f64; 6] {
    let SquaredDistances { a, b, c, d, e, f } = *sq;
    [
        2.0 * (f * (b + c + d + e - 2.0 * a - f) + b * e + c * d - b * d - c * e),
        2.0 * (a * f + e * (a + c + d + f - 2.0 * b - e) + c * d - a * d - c * f),
        2.0 * (a * f + b * e + d * (a + b + e + f - 2.0 * c - d) - a * e - b * f),
        2.0 * (a * f + b * e + c * (a + b + e + f - c - 2.0 * d) - a * b - e * f),
        2.0 * (a * f + b * (a + c + d + f - b - 2.0 * e) + c * d - a * c - d * f),
        2.0 * (a * (b + c + d + e - a - 2.0 * f) + b * e + c * d - b * c - d * e),
    ]
}

/// Central finite differences of [`cayley`] with step `1e-6 · L²`.
pub fn cayley_gradient_fd(sq: &SquaredDistances) -> [f64; 6] {
    let h = 1e-6 * sq.scale2();
    let base = sq.as_array();
    std::array::from_fn(|k| {
        let mut plus = base;
        let mut minus = base;
        plus[k] += h;
        minus[k] -= h;
        (cayley(&SquaredDistances::from_array_unchecked(plus))
            - cayley(&SquaredDistances::from_array_unchecked(minus)))
            / (2.0 * h)
    })
}

/// Relative planarity tolerance: `|S| ≤ 1e-8 · L⁶`.
pub const PLANARITY_TOL: f64 = 1e-8;

/// `16 · area²` of a triangle from its squared side lengths.
#[inline]
pub(crate) fn heron16(x: f64, y: f64, z: f64) -> f64 {
    4.0 * x * y - (x + y - z) * (x + y - z)
}

/// Oriented face areas computed from the distances alone, signed for the
/// convex arrangement with bodies 1,2 on one diagonal:
/// `Δ1 = -|234|, Δ2 = -|134|, Δ3 = |124|, Δ4 = |123|`.
///
/// Defined off the planar set too, which is what the Newton iteration needs.
pub fn heron_areas(sq: &SquaredDistances) -> Result<OrientedAreas> {
    let SquaredDistances { a, b, c, d, e, f } = *sq;
    let faces = [
        ([1, 2, 3], heron16(d, e, f), -1.0),
        ([0, 2, 3], heron16(b, c, f), -1.0),
        ([0, 1, 3], heron16(a, c, e), 1.0),
        ([0, 1, 2], heron16(a, b, d), 1.0),
    ];
    let mut out = [0.0; 4];
    for (k, (face, h, sign)) in faces.into_iter().enumerate() {
        if !(h > 0.0) {
            return Err(Error::NotRealizable { face });
        }
        out[k] = sign * 0.25 * h.sqrt();
    }
    Ok(OrientedAreas::new(out))
}

/// Least-squares `(ν, ξ)` for fixed distances and areas: the six equations
/// are linear in the multipliers.
pub fn fit_multipliers(sq: &SquaredDistances, areas: &OrientedAreas, m: &MassVector) -> (f64, f64) {
    let psi = PsiValues::from_distances(sq);
    let dl = areas.values();
    let (mut sww, mut sw, mut swy, mut sy) = (0.0, 0.0, 0.0, 0.0);
    for (k, &(i, j)) in PAIRS.iter().enumerate() {
        let w = dl[i] * dl[j] / m.pair_product(i, j);
        let y = psi.values[k];
        sww += w * w;
        sw += w;
        swy += w * y;
        sy += y;
    }
    let n = 6.0;
    let det = n * sww - sw * sw;
    let nu = (n * swy - sw * sy) / det;
    let xi = (sy - nu * sw) / n;
    (nu, xi)
}

/// `ψ'(r_ij²) − ν/(m_i m_j) Δ_i Δ_j − ξ` for each pair.
pub fn cc_residuals(st: &DziobekState, m: &MassVector) -> Result<[f64; 6]> {
    let sq = st.sq.as_array();
    let dl = st.areas.values();
    let mut out = [0.0; 6];
    for (k, &(i, j)) in PAIRS.iter().enumerate() {
        out[k] = psi_prime(sq[k])? - st.nu / m.pair_product(i, j) * dl[i] * dl[j] - st.xi;
    }
    Ok(out)
}

/// `t_k = Σ_i Δ_i r_ik²`. All four agree for any planar convex configuration.
pub fn t_values(sq: &SquaredDistances, areas: &OrientedAreas) -> [f64; 4] {
    let dl = areas.values();
    std::array::from_fn(|k| (0..4).map(|i| dl[i] * sq.get(i, k)).sum())
}

/// 3×3 determinant with rows `(1,1,1)`, `(u,v,w)`, `(U,V,W)`.
pub fn sign_det(u: f64, v: f64, w: f64, uu: f64, vv: f64, ww: f64) -> f64 {
    (v * ww - w * vv) - (u * ww - w * uu) + (u * vv - v * uu)
}

/// Value at `v` of the chord through `(u, U)` and `(w, W)`.
pub fn chord_value(u: f64, v: f64, w: f64, uu: f64, ww: f64) -> f64 {
    ((v - w) * uu + (u - v) * ww) / (u - w)
}

/// `Q_ijk`: determinant with rows `(1,1,1)`, `(t_i,t_j,t_k)`, `(Δ_i/m_i, ...)`.
pub fn q_identity(
    i: usize,
    j: usize,
    k: usize,
    t: &[f64; 4],
    areas: &OrientedAreas,
    m: &MassVector,
) -> Result<f64> {
    if i >= 4 || j >= 4 || k >= 4 || i == j || j == k || i == k {
        return Err(Error::Index(vec![i, j, k]));
    }
    let dl = areas.values();
    let mm = m.masses();
    let x = |n: usize| dl[n] / mm[n];
    Ok(sign_det(t[i], t[j], t[k], x(i), x(j), x(k)))
}

/// Written forms of the balanced-configuration identities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BalancedForm {
    /// `±ν Q_ijk` expanded through the central-configuration equations;
    /// the reference form.
    QExpansion,
    /// The four determinant equations in their first written form (with the
    /// `(a − c − e)` entry in the third).
    Expanded,
    /// First alternative family, with `(1−α)` and `(β−α)` correction terms.
    Appendix1,
    /// Second alternative family; its last two members are the rearranged
    /// identities used to rule out asymmetric configurations.
    Appendix2,
}

impl BalancedForm {
    pub const ALL: [BalancedForm; 4] = [
        BalancedForm::QExpansion,
        BalancedForm::Expanded,
        BalancedForm::Appendix1,
        BalancedForm::Appendix2,
    ];
}

fn det3(r1: [f64; 3], r2: [f64; 3]) -> f64 {
    sign_det(r1[0], r1[1], r1[2], r2[0], r2[1], r2[2])
}

/// `ν t_p Δ_q / m_q` with every product `ν Δ_l Δ_q` replaced by
/// `m_l m_q ψ'(r_lq²)`, using `Δ_q² = −Σ_{l≠q} Δ_l Δ_q`. The `ξ` part cancels
/// in every `Q_ijk`, so it is dropped.
fn nu_t_over_mass(sq: &SquaredDistances, psi: &PsiValues, m: &MassVector, p: usize, q: usize) -> f64 {
    let mm = m.masses();
    let prod = |l: usize| mm[l] * mm[q] * psi.get(l, q);
    let mut s = 0.0;
    for l in 0..4 {
        let r2 = sq.get(l, p);
        if l == q {
            s -= r2 * (0..4).filter(|&n| n != q).map(prod).sum::<f64>();
        } else {
            s += r2 * prod(l);
        }
    }
    s / mm[q]
}

fn nu_q(sq: &SquaredDistances, psi: &PsiValues, m: &MassVector, i: usize, j: usize, k: usize) -> f64 {
    let g = |p, q| nu_t_over_mass(sq, psi, m, p, q);
    g(j, k) - g(k, j) - g(i, k) + g(k, i) + g(i, j) - g(j, i)
}

/// Left-minus-right of the four balanced-configuration identities.
///
/// Entry `n` of every form is the same polynomial: `[−νQ_234, νQ_134,
/// −νQ_124, νQ_123]`. All vanish at a central configuration. The written
/// forms assume `δ = 1`.
pub fn balanced_residuals(
    sq: &SquaredDistances,
    psi: &PsiValues,
    m: &MassVector,
    form: BalancedForm,
) -> [f64; 4] {
    match form {
        BalancedForm::QExpansion => [
            -nu_q(sq, psi, m, 1, 2, 3),
            nu_q(sq, psi, m, 0, 2, 3),
            -nu_q(sq, psi, m, 0, 1, 3),
            nu_q(sq, psi, m, 0, 1, 2),
        ],
        BalancedForm::Expanded => expanded(sq, psi, m),
        BalancedForm::Appendix1 => appendix1(sq, psi, m),
        BalancedForm::Appendix2 => appendix2(sq, psi, m),
    }
}

fn unpack(sq: &SquaredDistances, psi: &PsiValues) -> ([f64; 6], [f64; 6]) {
    (sq.as_array(), psi.values)
}

fn expanded(sq: &SquaredDistances, psi: &PsiValues, m: &MassVector) -> [f64; 4] {
    let ([a, b, c, d, e, f], [aa, bb, cc, dd, ee, ff]) = unpack(sq, psi);
    let (al, be) = (m.alpha, m.beta);
    let sums = [a + f, b + e, c + d];
    [
        det3([f - e - d, al * (e - d - f), be * (d - f - e)], [ff, ee, dd])
            - det3(sums, [aa, bb, cc]),
        det3([f - c - b, be * (b - f - c), al * (c - b - f)], [ff, bb, cc])
            - det3(sums, [aa, ee, dd]),
        det3([be * (a - c - e), e - c - a, c - a - e], [aa, ee, cc])
            - al * det3(sums, [ff, bb, dd]),
        det3([al * (a - d - b), b - a - d, d - b - a], [aa, bb, dd])
            - be * det3(sums, [ff, ee, cc]),
    ]
}

fn appendix1(sq: &SquaredDistances, psi: &PsiValues, m: &MassVector) -> [f64; 4] {
    let ([a, b, c, d, e, f], [aa, bb, cc, dd, ee, ff]) = unpack(sq, psi);
    let (al, be) = (m.alpha, m.beta);
    [
        -(1.0 - al) * (f - e - d) * (dd - ee) + (be - al) * (d - f - e) * (ff - ee)
            + 2.0 * al * det3([f, e, d], [ff, ee, dd])
            - det3([a, b, c], [aa, bb, cc])
            - det3([f, e, d], [aa, bb, cc]),
        -(1.0 - al) * (f - c - b) * (cc - bb) + (be - al) * (b - f - c) * (cc - ff)
            + 2.0 * al * det3([f, b, c], [ff, bb, cc])
            - det3([a, e, d], [aa, ee, dd])
            - det3([f, b, c], [aa, ee, dd]),
        -(be - 1.0) * (a - e - c) * (cc - ee) + 2.0 * det3([a, e, c], [aa, ee, cc])
            - al * det3([a, e, c], [ff, bb, dd])
            - al * det3([f, b, d], [ff, bb, dd]),
        -(al - 1.0) * (a - d - b) * (dd - bb) + 2.0 * det3([a, b, d], [aa, bb, dd])
            - be * det3([f, e, c], [ff, ee, cc])
            - be * det3([a, b, d], [ff, ee, cc]),
    ]
}

fn appendix2(sq: &SquaredDistances, psi: &PsiValues, m: &MassVector) -> [f64; 4] {
    let ([a, b, c, d, e, f], [aa, bb, cc, dd, ee, ff]) = unpack(sq, psi);
    let (al, be) = (m.alpha, m.beta);
    [
        (1.0 + be) * det3([f, e, d], [ff, ee, dd])
            - (1.0 - al) * (ff * (d - e) + e * ee - d * dd)
            - (be - al) * (dd * (e - f) + f * ff - e * ee)
            - det3([a, b, c], [aa, bb, cc])
            - det3([f, e, d], [aa, bb, cc]),
        (be + 1.0) * det3([f, b, c], [ff, bb, cc])
            - (1.0 - al) * (ff * (c - b) + b * bb - c * cc)
            - (be - al) * (bb * (f - c) + c * cc - f * ff)
            - det3([a, e, d], [aa, ee, dd])
            - det3([f, b, c], [aa, ee, dd]),
        rearranged_third(sq, psi, m),
        rearranged_fourth(sq, psi, m),
    ]
}

/// `(β+1)|a e c; A E C| − (β−1)[A(c−e) + eE − cC] − α|a e c; F B D| − α|f b d; F B D|`.
pub fn rearranged_third(sq: &SquaredDistances, psi: &PsiValues, m: &MassVector) -> f64 {
    let ([a, b, c, d, e, f], [aa, bb, cc, dd, ee, ff]) = unpack(sq, psi);
    let (al, be) = (m.alpha, m.beta);
    (be + 1.0) * det3([a, e, c], [aa, ee, cc])
        - (be - 1.0) * (aa * (c - e) + e * ee - c * cc)
        - al * det3([a, e, c], [ff, bb, dd])
        - al * det3([f, b, d], [ff, bb, dd])
}

/// `(α+1)|a b d; A B D| − (α−1)[A(d−b) + bB − dD] − β|f e c; F E C| − β|a b d; F E C|`.
pub fn rearranged_fourth(sq: &SquaredDistances, psi: &PsiValues, m: &MassVector) -> f64 {
    let ([a, b, c, d, e, f], [aa, bb, cc, dd, ee, ff]) = unpack(sq, psi);
    let (al, be) = (m.alpha, m.beta);
    (al + 1.0) * det3([a, b, d], [aa, bb, dd])
        - (al - 1.0) * (aa * (d - b) + b * bb - d * dd)
        - be * det3([f, e, c], [ff, ee, cc])
        - be * det3([a, b, d], [ff, ee, cc])
}

/// Residuals of two readings of the written identities that are *not*
/// identities: the first equation with its `ψ'` row in `(D, E, F)` order and
/// the third with the `(a − e − e)` entry. Reported in verbose output only.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RejectedReadings {
    pub first_def_order: f64,
    pub third_a_minus_2e: f64,
}

pub fn rejected_readings(sq: &SquaredDistances, psi: &PsiValues, m: &MassVector) -> RejectedReadings {
    let ([a, b, c, d, e, f], [aa, bb, cc, dd, ee, ff]) = unpack(sq, psi);
    let (al, be) = (m.alpha, m.beta);
    let sums = [a + f, b + e, c + d];
    RejectedReadings {
        first_def_order: det3([f - e - d, al * (e - d - f), be * (d - f - e)], [dd, ee, ff])
            - det3(sums, [aa, bb, cc]),
        third_a_minus_2e: det3([be * (a - e - e), e - c - a, c - a - e], [aa, ee, cc])
            - al * det3(sums, [ff, bb, dd]),
    }
}

/// Magnitude that makes balanced residuals scale free: `L² · max|ψ'| · max m`.
pub fn balanced_scale(sq: &SquaredDistances, psi: &PsiValues, m: &MassVector) -> f64 {
    let mmax = m.masses().into_iter().fold(0.0_f64, f64::max);
    sq.scale2() * psi.max_abs() * mmax
}

/// Same central configuration for masses divided by `eta`: positions shrink by
/// `eta^{1/3}`, so squared distances and areas scale by `eta^{-2/3}`,
/// `ν` by `eta^{1/3}` and `ξ` by `eta`. The Newtonian multiplier is unchanged.
pub fn scaling_transform(
    st: &DziobekState,
    m: &MassVector,
    eta: f64,
) -> Result<(DziobekState, MassVector)> {
    if !(eta > 0.0 && eta.is_finite()) {
        return Err(Error::Domain(format!("scaling factor must be positive, got {eta}")));
    }
    let k = eta.powf(-2.0 / 3.0);
    let out = DziobekState {
        sq: st.sq.scaled(k),
        areas: st.areas.scaled(k),
        nu: st.nu * eta.cbrt(),
        xi: st.xi * eta,
    };
    Ok((out, m.scaled(eta)))
}
