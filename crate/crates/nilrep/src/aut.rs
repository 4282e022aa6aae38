//! The automorphism group of N that fixes the center pointwise.
//!
//! Such automorphisms are exactly the invertible matrices k on the
//! algebra with k[u,v] = [ku, kv] and k e4 = e4. They form the family
//!
//! ```text
//! [ r    a      0        0 ]
//! [ 0    r^-1/2 0        0 ]        r > 0
//! [ d    b      r^1/2    0 ]
//! [ e    c      -d r^-1/2 1 ]
//! ```
//!
//! which splits as A x| M: a dilation part A = diag(r, r^-1/2, r^1/2, 1)
//! and a unipotent part M parametrized by (a, b, c, d, e). M itself is a
//! semidirect product H x| R^3 with H = {(d, e)}. The subgroup K is the
//! (b, c) = (k1, k2) slice of M; it is abelian and plays the role of the
//! twisting group for the representation theory.
//!
//! To keep the dilation block rational, A-elements are built from a
//! parameter rho > 0 with r = rho^2, so the matrix is
//! diag(rho^2, 1/rho, rho, 1).
//!
//! A bracket automorphism acts on the group through the exponential
//! coordinates: `apply_aut` computes exp(k log n), which is a group
//! homomorphism for every family member. On K and A elements this
//! coincides with the plain matrix action on coordinates; in particular
//! k = (k1, k2) sends (s, x, y, t) to (s, x, y + k1 x, t + k2 x).

use std::fmt;

use crate::lie::{bracket, exp_vector, log_point, NPoint, NVector};
use crate::linalg::Mat4;
use crate::scalar::Scalar;
use crate::Error;

/// An element of K: the pair (k1, k2).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct KParams {
    pub k1: Scalar,
    pub k2: Scalar,
}

impl KParams {
    pub fn new(k1: impl Into<Scalar>, k2: impl Into<Scalar>) -> Self {
        KParams {
            k1: k1.into(),
            k2: k2.into(),
        }
    }

    pub fn zero() -> Self {
        KParams::new(0, 0)
    }
}

impl fmt::Display for KParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.k1, self.k2)
    }
}

/// An element of the unipotent part M: parameters (a, b, c, d, e).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MParams {
    pub a: Scalar,
    pub b: Scalar,
    pub c: Scalar,
    pub d: Scalar,
    pub e: Scalar,
}

impl MParams {
    pub fn new(
        a: impl Into<Scalar>,
        b: impl Into<Scalar>,
        c: impl Into<Scalar>,
        d: impl Into<Scalar>,
        e: impl Into<Scalar>,
    ) -> Self {
        MParams {
            a: a.into(),
            b: b.into(),
            c: c.into(),
            d: d.into(),
            e: e.into(),
        }
    }

    pub fn identity() -> Self {
        MParams::new(0, 0, 0, 0, 0)
    }
}

impl fmt::Display for MParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {}, {}, {})",
            self.a, self.b, self.c, self.d, self.e
        )
    }
}

/// An element of the dilation part A, stored through rho with r = rho^2.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AParams {
    rho: Scalar,
}

impl AParams {
    /// Requires rho > 0.
    pub fn new(rho: Scalar) -> Result<Self, Error> {
        if rho.is_positive() {
            Ok(AParams { rho })
        } else {
            Err(Error::NonPositiveScale)
        }
    }

    pub fn identity() -> Self {
        AParams { rho: Scalar::one() }
    }

    pub fn rho(&self) -> &Scalar {
        &self.rho
    }

    /// The dilation ratio r = rho^2.
    pub fn r(&self) -> Scalar {
        &self.rho * &self.rho
    }
}

impl fmt::Display for AParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A(r = {})", self.r())
    }
}

/// The (d, e) part of M, a copy of a polarized Heisenberg plane.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HParams {
    pub d: Scalar,
    pub e: Scalar,
}

/// The normal (a, b, c) part of M.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct R3Params {
    pub a: Scalar,
    pub b: Scalar,
    pub c: Scalar,
}

/// A 4x4 matrix acting on the algebra, candidate automorphism.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AutMatrix(Mat4);

impl AutMatrix {
    pub fn from_mat(m: Mat4) -> Self {
        AutMatrix(m)
    }

    pub fn identity() -> Self {
        AutMatrix(Mat4::identity())
    }

    pub fn matrix(&self) -> &Mat4 {
        &self.0
    }

    pub fn mul(&self, other: &AutMatrix) -> AutMatrix {
        AutMatrix(self.0.mul(&other.0))
    }

    /// Linear action on an algebra vector.
    pub fn apply_vector(&self, v: &NVector) -> NVector {
        NVector::from_row(&self.0.apply(&v.to_row()))
    }
}

impl fmt::Display for AutMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

/// Matrix of k = (k1, k2): identity except y += k1 x, t += k2 x.
pub fn k_element(k: &KParams) -> AutMatrix {
    let mut m = Mat4::identity();
    m[(2, 1)] = k.k1.clone();
    m[(3, 1)] = k.k2.clone();
    AutMatrix(m)
}

/// Matrix of the dilation diag(rho^2, 1/rho, rho, 1).
pub fn a_element(a: &AParams) -> AutMatrix {
    let mut m = Mat4::identity();
    m[(0, 0)] = a.r();
    m[(1, 1)] = Scalar::one() / a.rho.clone();
    m[(2, 2)] = a.rho.clone();
    AutMatrix(m)
}

/// Matrix of an M-element.
pub fn m_element(p: &MParams) -> AutMatrix {
    let mut m = Mat4::identity();
    m[(0, 1)] = p.a.clone();
    m[(2, 0)] = p.d.clone();
    m[(2, 1)] = p.b.clone();
    m[(3, 0)] = p.e.clone();
    m[(3, 1)] = p.c.clone();
    m[(3, 2)] = -&p.d;
    AutMatrix(m)
}

/// The product a_element(a) * m_element(m); every automorphism fixing
/// the center factors uniquely this way.
pub fn aut0_element(a: &AParams, m: &MParams) -> AutMatrix {
    a_element(a).mul(&m_element(m))
}

/// The family matrix with raw entries (r = rho^2 on the diagonal, the
/// remaining parameters placed directly):
///
/// ```text
/// [ rho^2  a     0       0 ]
/// [ 0      1/rho 0       0 ]
/// [ d      b     rho     0 ]
/// [ e      c     -d/rho  1 ]
/// ```
pub fn aut0_family(
    rho: Scalar,
    a: Scalar,
    b: Scalar,
    c: Scalar,
    d: Scalar,
    e: Scalar,
) -> Result<AutMatrix, Error> {
    if !rho.is_positive() {
        return Err(Error::NonPositiveScale);
    }
    let mut m = Mat4::identity();
    m[(0, 0)] = &rho * &rho;
    m[(0, 1)] = a;
    m[(1, 1)] = Scalar::one() / rho.clone();
    m[(2, 0)] = d.clone();
    m[(2, 1)] = b;
    m[(2, 2)] = rho.clone();
    m[(3, 0)] = e;
    m[(3, 1)] = c;
    m[(3, 2)] = -&d / &rho;
    Ok(AutMatrix(m))
}

/// True iff k is an invertible bracket automorphism fixing the center:
/// k[e_i, e_j] = [k e_i, k e_j] for all basis pairs and k e4 = e4.
pub fn is_automorphism(k: &AutMatrix) -> Result<bool, Error> {
    if !k.matrix().is_invertible() {
        return Err(Error::SingularMatrix);
    }
    let basis = NVector::basis();
    if k.apply_vector(&basis[3]) != basis[3] {
        return Ok(false);
    }
    for i in 0..4 {
        for j in (i + 1)..4 {
            let lhs = k.apply_vector(&bracket(&basis[i], &basis[j]));
            let rhs = bracket(&k.apply_vector(&basis[i]), &k.apply_vector(&basis[j]));
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The group automorphism induced by the algebra automorphism k:
/// n -> exp(k log n). Errors if k is not an automorphism.
///
/// For k in K this is (s, x, y, t) -> (s, x, y + k1 x, t + k2 x).
pub fn apply_aut(k: &AutMatrix, n: &NPoint) -> Result<NPoint, Error> {
    if !is_automorphism(k)? {
        return Err(Error::NotAutomorphism);
    }
    Ok(exp_vector(&k.apply_vector(&log_point(n))))
}

/// Product in M-parameters:
/// (a,b,c,d,e)(a',b',c',d',e') =
/// (a+a', b+b'+da', c+c'+ea'-db', d+d', e+e'-dd').
pub fn m_mul(p: &MParams, q: &MParams) -> MParams {
    MParams {
        a: &p.a + &q.a,
        b: &p.b + &q.b + &p.d * &q.a,
        c: &p.c + &q.c + &p.e * &q.a - &p.d * &q.b,
        d: &p.d + &q.d,
        e: &p.e + &q.e - &p.d * &q.d,
    }
}

/// Product in H-parameters: (d,e)(d',e') = (d+d', e+e'-dd').
pub fn h_mul(p: &HParams, q: &HParams) -> HParams {
    HParams {
        d: &p.d + &q.d,
        e: &p.e + &q.e - &p.d * &q.d,
    }
}

pub fn embed_h(h: &HParams) -> MParams {
    MParams::new(0, 0, 0, h.d.clone(), h.e.clone())
}

pub fn embed_r3(v: &R3Params) -> MParams {
    MParams::new(v.a.clone(), v.b.clone(), v.c.clone(), 0, 0)
}

/// Factors m = embed_h(h) * embed_r3(v): the H x| R^3 splitting of M.
pub fn m_as_semidirect(m: &MParams) -> (HParams, R3Params) {
    let h = HParams {
        d: m.d.clone(),
        e: m.e.clone(),
    };
    // Solve (0,0,0,d,e)(a',b',c',0,0) = (a, b, c, d, e).
    let b = &m.b - &(&m.d * &m.a);
    let c = &m.c - &(&m.e * &m.a) + &m.d * &b;
    let v = R3Params {
        a: m.a.clone(),
        b,
        c,
    };
    (h, v)
}

/// Reads the (AParams, MParams) factorization off a family matrix.
/// Errors if the matrix does not lie in the parametrized family.
pub fn decompose_aut0(k: &AutMatrix) -> Result<(AParams, MParams), Error> {
    let m = k.matrix();
    let zero_slots = [(0, 2), (0, 3), (1, 0), (1, 2), (1, 3), (2, 3)];
    for (i, j) in zero_slots {
        if !m[(i, j)].is_zero() {
            return Err(Error::OutsideFamily(format!(
                "entry ({}, {}) must be 0, found {}",
                i + 1,
                j + 1,
                m[(i, j)]
            )));
        }
    }
    if !m[(3, 3)].is_one() {
        return Err(Error::OutsideFamily(format!(
            "entry (4, 4) must be 1, found {}",
            m[(3, 3)]
        )));
    }
    let rho = m[(2, 2)].clone();
    if !rho.is_positive() {
        return Err(Error::OutsideFamily(format!(
            "entry (3, 3) must be a positive scale, found {}",
            rho
        )));
    }
    if m[(0, 0)] != &rho * &rho {
        return Err(Error::OutsideFamily(format!(
            "entry (1, 1) must equal the square of entry (3, 3); found {} with scale {}",
            m[(0, 0)],
            rho
        )));
    }
    if &m[(1, 1)] * &rho != Scalar::one() {
        return Err(Error::OutsideFamily(format!(
            "entry (2, 2) must be the reciprocal of entry (3, 3); found {}",
            m[(1, 1)]
        )));
    }
    if &m[(3, 2)] * &rho != -&m[(2, 0)] {
        return Err(Error::OutsideFamily(format!(
            "entry (4, 3) must equal -(3, 1)/(3, 3); found {}",
            m[(3, 2)]
        )));
    }
    let a = AParams::new(rho.clone())?;
    let params = MParams {
        a: &m[(0, 1)] / &(&rho * &rho),
        b: &m[(2, 1)] / &rho,
        c: m[(3, 1)].clone(),
        d: &m[(2, 0)] / &rho,
        e: m[(3, 0)].clone(),
    };
    debug_assert_eq!(aut0_element(&a, &params), *k);
    Ok((a, params))
}

/// Float dilation matrix diag(r, r^-1/2, r^1/2, 1) for demo use with
/// irrational square roots; the exact layer handles r = rho^2 only.
pub fn a_element_f64(r: f64) -> [[f64; 4]; 4] {
    let mut m = [[0.0; 4]; 4];
    m[0][0] = r;
    m[1][1] = r.powf(-0.5);
    m[2][2] = r.sqrt();
    m[3][3] = 1.0;
    m
}

/// Largest residual of the automorphism identities for a float matrix:
/// max over basis pairs of |k[e_i,e_j] - [k e_i, k e_j]| plus the defect
/// of k e4 = e4.
pub fn automorphism_defect_f64(k: &[[f64; 4]; 4]) -> f64 {
    fn bracket_f(u: [f64; 4], v: [f64; 4]) -> [f64; 4] {
        [0.0, 0.0, u[0] * v[1] - v[0] * u[1], u[1] * v[2] - v[1] * u[2]]
    }
    fn col(k: &[[f64; 4]; 4], j: usize) -> [f64; 4] {
        [k[0][j], k[1][j], k[2][j], k[3][j]]
    }
    fn apply(k: &[[f64; 4]; 4], v: [f64; 4]) -> [f64; 4] {
        let mut out = [0.0; 4];
        for i in 0..4 {
            out[i] = (0..4).map(|j| k[i][j] * v[j]).sum();
        }
        out
    }
    let mut defect: f64 = 0.0;
    let e4 = col(k, 3);
    for (i, want) in [0.0, 0.0, 0.0, 1.0].iter().enumerate() {
        defect = defect.max((e4[i] - want).abs());
    }
    let mut basis = [[0.0; 4]; 4];
    for (i, row) in basis.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    for i in 0..4 {
        for j in (i + 1)..4 {
            let lhs = apply(k, bracket_f(basis[i], basis[j]));
            let rhs = bracket_f(apply(k, basis[i]), apply(k, basis[j]));
            for c in 0..4 {
                defect = defect.max((lhs[c] - rhs[c]).abs());
            }
        }
    }
    defect
}
