//! The 3-step nilpotent Lie group N and its Lie algebra n.
//!
//! N is the semidirect product of a one-parameter dilation group S with
//! the Heisenberg group H1, written in global coordinates (s, x, y, t)
//! with multiplication
//!
//! ```text
//! (s,x,y,t)(s',x',y',t') = (s+s', x+x', sx'+y+y', t+t' + (y'x + sxx' - x'y)/2)
//! ```
//!
//! The Lie bracket on coordinates is
//!
//! ```text
//! [(s,x,y,t), (s',x',y',t')] = (0, 0, sx'-s'x, xy'-x'y)
//! ```
//!
//! so with basis e1..e4 the only nonzero basis brackets are
//! [e1,e2] = e3 and [e2,e3] = e4. The lower central series has
//! dimensions 4, 2, 1, 0 and the center is the line through e4.
//!
//! The group coordinates are adapted to the semidirect product: they are
//! not first-kind exponential coordinates. The exponential map of the
//! algebra onto the group is the explicit polynomial correction
//! `exp(s,x,y,t) = (s, x, y + sx/2, t + sx^2/12)`, which restricts to the
//! identity whenever s = 0 or x = 0. `adjoint` routes through it so that
//! Ad is the genuine conjugation action: a group homomorphism that
//! preserves the bracket, with Ad(exp u) = I + ad u + (ad u)^2/2 + ...

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::linalg::{self, Mat4, Row};
use crate::scalar::Scalar;

/// An element of the Lie algebra n, in coordinates (s, x, y, t).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NVector {
    pub s: Scalar,
    pub x: Scalar,
    pub y: Scalar,
    pub t: Scalar,
}

/// A group element of N, in coordinates (s, x, y, t).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NPoint {
    pub s: Scalar,
    pub x: Scalar,
    pub y: Scalar,
    pub t: Scalar,
}

/// A point of the Heisenberg group H1 in coordinates (x, y, t).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct H1Point {
    pub x: Scalar,
    pub y: Scalar,
    pub t: Scalar,
}

macro_rules! coords4 {
    ($ty:ident) => {
        impl $ty {
            pub fn new(
                s: impl Into<Scalar>,
                x: impl Into<Scalar>,
                y: impl Into<Scalar>,
                t: impl Into<Scalar>,
            ) -> Self {
                $ty {
                    s: s.into(),
                    x: x.into(),
                    y: y.into(),
                    t: t.into(),
                }
            }

            pub fn zero() -> Self {
                $ty::new(0, 0, 0, 0)
            }

            pub fn is_zero(&self) -> bool {
                self.s.is_zero() && self.x.is_zero() && self.y.is_zero() && self.t.is_zero()
            }

            pub fn to_row(&self) -> Row {
                [
                    self.s.clone(),
                    self.x.clone(),
                    self.y.clone(),
                    self.t.clone(),
                ]
            }

            pub fn from_row(r: &Row) -> Self {
                $ty {
                    s: r[0].clone(),
                    x: r[1].clone(),
                    y: r[2].clone(),
                    t: r[3].clone(),
                }
            }
        }

        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "({}, {}, {}, {})", self.s, self.x, self.y, self.t)
            }
        }
    };
}

coords4!(NVector);
coords4!(NPoint);

impl NVector {
    /// The standard basis e1, e2, e3, e4.
    pub fn basis() -> [NVector; 4] {
        [
            NVector::new(1, 0, 0, 0),
            NVector::new(0, 1, 0, 0),
            NVector::new(0, 0, 1, 0),
            NVector::new(0, 0, 0, 1),
        ]
    }
}

impl Add for &NVector {
    type Output = NVector;
    fn add(self, rhs: &NVector) -> NVector {
        NVector {
            s: &self.s + &rhs.s,
            x: &self.x + &rhs.x,
            y: &self.y + &rhs.y,
            t: &self.t + &rhs.t,
        }
    }
}

impl Sub for &NVector {
    type Output = NVector;
    fn sub(self, rhs: &NVector) -> NVector {
        NVector {
            s: &self.s - &rhs.s,
            x: &self.x - &rhs.x,
            y: &self.y - &rhs.y,
            t: &self.t - &rhs.t,
        }
    }
}

impl Neg for &NVector {
    type Output = NVector;
    fn neg(self) -> NVector {
        NVector {
            s: -&self.s,
            x: -&self.x,
            y: -&self.y,
            t: -&self.t,
        }
    }
}

impl Mul<&Scalar> for &NVector {
    type Output = NVector;
    fn mul(self, c: &Scalar) -> NVector {
        NVector {
            s: &self.s * c,
            x: &self.x * c,
            y: &self.y * c,
            t: &self.t * c,
        }
    }
}

impl H1Point {
    pub fn new(x: impl Into<Scalar>, y: impl Into<Scalar>, t: impl Into<Scalar>) -> Self {
        H1Point {
            x: x.into(),
            y: y.into(),
            t: t.into(),
        }
    }
}

impl fmt::Display for H1Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.t)
    }
}

/// Lie bracket [u, v] = (0, 0, s x' - s' x, x y' - x' y).
pub fn bracket(u: &NVector, v: &NVector) -> NVector {
    NVector {
        s: Scalar::zero(),
        x: Scalar::zero(),
        y: &u.s * &v.x - &v.s * &u.x,
        t: &u.x * &v.y - &v.x * &u.y,
    }
}

/// [u,[v,w]] + [v,[w,u]] + [w,[u,v]]; identically zero on a Lie algebra.
pub fn jacobi_defect(u: &NVector, v: &NVector, w: &NVector) -> NVector {
    let a = bracket(u, &bracket(v, w));
    let b = bracket(v, &bracket(w, u));
    let c = bracket(w, &bracket(u, v));
    &(&a + &b) + &c
}

/// Group multiplication of N.
pub fn group_mul(a: &NPoint, b: &NPoint) -> NPoint {
    let two = Scalar::from_int(2);
    NPoint {
        s: &a.s + &b.s,
        x: &a.x + &b.x,
        y: &a.s * &b.x + &a.y + &b.y,
        t: &a.t + &b.t + (&b.y * &a.x + &a.s * &a.x * &b.x - &b.x * &a.y) / two,
    }
}

/// Group inverse: (s,x,y,t)^{-1} = (-s, -x, sx - y, -t).
pub fn group_inv(n: &NPoint) -> NPoint {
    NPoint {
        s: -&n.s,
        x: -&n.x,
        y: &n.s * &n.x - &n.y,
        t: -&n.t,
    }
}

/// The dilation action of S on H1: s . (x, y, t) = (x, sx + y, t).
pub fn s_action(s: &Scalar, h: &H1Point) -> H1Point {
    H1Point {
        x: h.x.clone(),
        y: s * &h.x + &h.y,
        t: h.t.clone(),
    }
}

/// Heisenberg multiplication (x,y,t)(x',y',t') = (x+x', y+y', t+t'+(xy'-yx')/2).
pub fn h1_mul(a: &H1Point, b: &H1Point) -> H1Point {
    let two = Scalar::from_int(2);
    H1Point {
        x: &a.x + &b.x,
        y: &a.y + &b.y,
        t: &a.t + &b.t + (&a.x * &b.y - &a.y * &b.x) / two,
    }
}

/// Heisenberg bracket [(x,y,t),(x',y',t')] = (0, 0, xy' - yx').
pub fn h1_bracket(a: &H1Point, b: &H1Point) -> H1Point {
    H1Point {
        x: Scalar::zero(),
        y: Scalar::zero(),
        t: &a.x * &b.y - &a.y * &b.x,
    }
}

/// The matrix of ad(u) = [u, .] in the basis e1..e4.
pub fn ad_matrix(u: &NVector) -> Mat4 {
    let mut m = Mat4::zero();
    m[(2, 0)] = -&u.x;
    m[(2, 1)] = u.s.clone();
    m[(3, 1)] = -&u.y;
    m[(3, 2)] = u.x.clone();
    m
}

/// exp(ad u) as the exact finite sum I + ad u + (ad u)^2/2 + (ad u)^3/6;
/// (ad u)^4 = 0 because the algebra is 3-step nilpotent.
pub fn exp_ad(u: &NVector) -> Mat4 {
    let a = ad_matrix(u);
    let a2 = a.mul(&a);
    let a3 = a2.mul(&a);
    Mat4::identity()
        .add(&a)
        .add(&a2.scale(&Scalar::new(1, 2)))
        .add(&a3.scale(&Scalar::new(1, 6)))
}

/// Exponential map of the algebra onto the group in these coordinates:
/// exp(s,x,y,t) = (s, x, y + sx/2, t + sx^2/12). It linearizes the
/// one-parameter subgroups: exp(a u) exp(b u) = exp((a+b) u).
pub fn exp_vector(u: &NVector) -> NPoint {
    NPoint {
        s: u.s.clone(),
        x: u.x.clone(),
        y: &u.y + &(&u.s * &u.x * Scalar::new(1, 2)),
        t: &u.t + &(&u.s * &u.x * &u.x * Scalar::new(1, 12)),
    }
}

/// Inverse of [`exp_vector`]: log(s,x,y,t) = (s, x, y - sx/2, t - sx^2/12).
pub fn log_point(n: &NPoint) -> NVector {
    NVector {
        s: n.s.clone(),
        x: n.x.clone(),
        y: &n.y - &(&n.s * &n.x * Scalar::new(1, 2)),
        t: &n.t - &(&n.s * &n.x * &n.x * Scalar::new(1, 12)),
    }
}

/// The adjoint action Ad(n) of the group on its algebra, as a matrix.
/// Computed as exp(ad(log n)), which equals the derivative of
/// conjugation by n; it is a group homomorphism in n and a bracket
/// automorphism, both exactly.
pub fn adjoint(n: &NPoint) -> Mat4 {
    exp_ad(&log_point(n))
}

/// A linear subspace of n, stored as a canonical echelon basis so that
/// equal subspaces compare equal.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    basis: Vec<NVector>,
}

impl Subspace {
    pub fn span(generators: &[NVector]) -> Subspace {
        let rows: Vec<Row> = generators.iter().map(NVector::to_row).collect();
        Subspace {
            basis: linalg::rref(rows).iter().map(NVector::from_row).collect(),
        }
    }

    pub fn trivial() -> Subspace {
        Subspace { basis: Vec::new() }
    }

    pub fn full() -> Subspace {
        Subspace::span(&NVector::basis())
    }

    pub fn from_rows(rows: Vec<Row>) -> Subspace {
        Subspace {
            basis: linalg::rref(rows).iter().map(NVector::from_row).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[NVector] {
        &self.basis
    }

    pub fn contains(&self, v: &NVector) -> bool {
        let mut rows: Vec<Row> = self.basis.iter().map(NVector::to_row).collect();
        rows.push(v.to_row());
        linalg::rref(rows).len() == self.dim()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    /// True iff [v, w] stays in the subspace for all basis pairs.
    pub fn is_bracket_closed(&self) -> bool {
        self.basis
            .iter()
            .flat_map(|v| self.basis.iter().map(move |w| bracket(v, w)))
            .all(|b| self.contains(&b))
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.basis.is_empty() {
            return write!(f, "0");
        }
        let items: Vec<String> = self.basis.iter().map(|v| v.to_string()).collect();
        write!(f, "span{{{}}}", items.join(", "))
    }
}

/// Lower central series n^1 = [n, n], n^2 = [n, n^1], n^3 = [n, n^2].
/// Returns the three terms; their dimensions are 2, 1, 0.
pub fn lower_central_series() -> Vec<Subspace> {
    let basis = NVector::basis();
    let mut series = Vec::new();
    let mut current = Subspace::full();
    for _ in 0..3 {
        let mut gens = Vec::new();
        for e in &basis {
            for w in current.basis() {
                gens.push(bracket(e, w));
            }
        }
        current = Subspace::span(&gens);
        series.push(current.clone());
    }
    series
}

/// The center {v : [v, e_i] = 0 for all i}, computed as the null space
/// of the stacked constraint rows. Equals the line through e4.
pub fn center() -> Subspace {
    let basis = NVector::basis();
    let mut constraints: Vec<Row> = Vec::new();
    // Row r of the constraint block for e_i sends v to coordinate r of
    // [v, e_i]; columns are the coefficients of v in the standard basis.
    for e in &basis {
        for coord in 0..4 {
            let mut row = linalg::zero_row();
            for (col, b) in basis.iter().enumerate() {
                row[col] = bracket(b, e).to_row()[coord].clone();
            }
            constraints.push(row);
        }
    }
    Subspace::from_rows(linalg::kernel(&constraints))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn e(i: usize) -> NVector {
        NVector::basis()[i - 1].clone()
    }

    #[test]
    fn basis_brackets() {
        assert_eq!(bracket(&e(1), &e(2)), e(3));
        assert_eq!(bracket(&e(2), &e(3)), e(4));
        assert_eq!(bracket(&e(2), &e(1)), -&e(3));
        for i in 1..=4 {
            assert!(bracket(&e(i), &e(i)).is_zero());
            assert!(bracket(&e(i), &e(4)).is_zero());
        }
        assert!(bracket(&e(1), &e(3)).is_zero());
    }

    #[test]
    fn jacobi_on_basis_triples() {
        let b = NVector::basis();
        for u in &b {
            for v in &b {
                for w in &b {
                    assert!(jacobi_defect(u, v, w).is_zero());
                }
            }
        }
    }

    #[test]
    fn group_mul_worked_example() {
        // (1,2,3,4)(5,6,7,8): y = 1*6 + 3 + 7 = 16,
        // t = 4 + 8 + (7*2 + 1*2*6 - 6*3)/2 = 12 + 4 = 16.
        let p = group_mul(&NPoint::new(1, 2, 3, 4), &NPoint::new(5, 6, 7, 8));
        assert_eq!(p, NPoint::new(6, 8, 16, 16));
    }

    #[test]
    fn group_identity_and_inverse_example() {
        let n = NPoint::new(1, 2, 3, 4);
        assert_eq!(group_mul(&n, &NPoint::zero()), n);
        assert_eq!(group_mul(&NPoint::zero(), &n), n);
        // (1,2,3,4)^{-1} = (-1, -2, 1*2-3, -4) = (-1, -2, -1, -4).
        let inv = group_inv(&n);
        assert_eq!(inv, NPoint::new(-1, -2, -1, -4));
        assert_eq!(group_mul(&n, &inv), NPoint::zero());
        assert_eq!(group_mul(&inv, &n), NPoint::zero());
    }

    #[test]
    fn normal_factorization() {
        // (s,x,y,t) = (0,x,0,0) (s,0,y,t - xy/2), with (s,0,y,t') in the
        // abelian subgroup {x = 0}.
        let mut rng = ChaCha8Rng::seed_from_u64(101);
        for _ in 0..200 {
            let n = sample::npoint(&mut rng);
            let left = NPoint::new(0, n.x.clone(), 0, 0);
            let right = NPoint::new(
                n.s.clone(),
                0,
                n.y.clone(),
                &n.t - &(&n.x * &n.y * Scalar::new(1, 2)),
            );
            assert_eq!(group_mul(&left, &right), n);
        }
    }

    #[test]
    fn s_action_is_h1_automorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(102);
        for _ in 0..200 {
            let s = sample::rational(&mut rng);
            let a = sample::h1point(&mut rng);
            let b = sample::h1point(&mut rng);
            assert_eq!(
                s_action(&s, &h1_mul(&a, &b)),
                h1_mul(&s_action(&s, &a), &s_action(&s, &b))
            );
        }
        // (x, y, t) with s = 2: (1, 5, 0) -> (1, 7, 0).
        assert_eq!(
            s_action(&Scalar::from_int(2), &H1Point::new(1, 5, 0)),
            H1Point::new(1, 7, 0)
        );
    }

    #[test]
    fn h1_bracket_matches_group_commutator_direction() {
        assert_eq!(
            h1_bracket(&H1Point::new(1, 0, 0), &H1Point::new(0, 1, 0)),
            H1Point::new(0, 0, 1)
        );
    }

    #[test]
    fn ad_matrix_on_basis() {
        let u = e(1);
        let m = ad_matrix(&u);
        assert_eq!(NVector::from_row(&m.apply(&e(2).to_row())), e(3));
        let m2 = ad_matrix(&e(2));
        assert_eq!(NVector::from_row(&m2.apply(&e(3).to_row())), e(4));
    }

    #[test]
    fn ad_powers_vanish() {
        let mut rng = ChaCha8Rng::seed_from_u64(103);
        for _ in 0..100 {
            let u = sample::nvector(&mut rng);
            let a = ad_matrix(&u);
            let a4 = a.mul(&a).mul(&a).mul(&a);
            assert_eq!(a4, Mat4::zero());
        }
    }

    #[test]
    fn adjoint_of_identity() {
        assert_eq!(adjoint(&NPoint::zero()), Mat4::identity());
    }

    #[test]
    fn adjoint_composes_with_exp() {
        // Ad(exp u) = exp(ad u).
        let mut rng = ChaCha8Rng::seed_from_u64(104);
        for _ in 0..200 {
            let u = sample::nvector(&mut rng);
            assert_eq!(adjoint(&exp_vector(&u)), exp_ad(&u));
        }
    }

    #[test]
    fn adjoint_is_group_homomorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(105);
        for _ in 0..200 {
            let a = sample::npoint(&mut rng);
            let b = sample::npoint(&mut rng);
            assert_eq!(adjoint(&group_mul(&a, &b)), adjoint(&a).mul(&adjoint(&b)));
        }
    }

    #[test]
    fn adjoint_preserves_bracket() {
        let mut rng = ChaCha8Rng::seed_from_u64(106);
        for _ in 0..200 {
            let n = sample::npoint(&mut rng);
            let u = sample::nvector(&mut rng);
            let v = sample::nvector(&mut rng);
            let m = adjoint(&n);
            let lhs = NVector::from_row(&m.apply(&bracket(&u, &v).to_row()));
            let rhs = bracket(
                &NVector::from_row(&m.apply(&u.to_row())),
                &NVector::from_row(&m.apply(&v.to_row())),
            );
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn exp_log_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(107);
        for _ in 0..200 {
            let u = sample::nvector(&mut rng);
            assert_eq!(log_point(&exp_vector(&u)), u);
            let n = sample::npoint(&mut rng);
            assert_eq!(exp_vector(&log_point(&n)), n);
        }
    }

    #[test]
    fn exp_linearizes_one_parameter_subgroups() {
        let mut rng = ChaCha8Rng::seed_from_u64(108);
        for _ in 0..100 {
            let u = sample::nvector(&mut rng);
            let a = sample::rational(&mut rng);
            let b = sample::rational(&mut rng);
            let lhs = group_mul(&exp_vector(&(&u * &a)), &exp_vector(&(&u * &b)));
            let rhs = exp_vector(&(&u * &(&a + &b)));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn lower_central_series_shape() {
        let series = lower_central_series();
        let dims: Vec<usize> = series.iter().map(Subspace::dim).collect();
        assert_eq!(dims, vec![2, 1, 0]);
        assert_eq!(series[0], Subspace::span(&[e(3), e(4)]));
        assert_eq!(series[1], Subspace::span(&[e(4)]));
        assert_eq!(series[2], Subspace::trivial());
    }

    #[test]
    fn center_is_e4_line() {
        let z = center();
        assert_eq!(z, Subspace::span(&[e(4)]));
        assert!(z.contains(&(&e(4) * &Scalar::new(-7, 3))));
        assert!(!z.contains(&e(3)));
    }

    #[test]
    fn subspace_membership_and_closure() {
        let w = Subspace::span(&[e(1), e(3), e(4)]);
        assert_eq!(w.dim(), 3);
        assert!(w.contains(&(&e(1) + &(&e(4) * &Scalar::new(5, 2)))));
        assert!(!w.contains(&e(2)));
        assert!(w.is_bracket_closed());
        let not_closed = Subspace::span(&[e(1), e(2)]);
        assert!(!not_closed.is_bracket_closed());
    }

    proptest! {
        #[test]
        fn prop_group_associative(
            a in sample::strategy_npoint(),
            b in sample::strategy_npoint(),
            c in sample::strategy_npoint(),
        ) {
            prop_assert_eq!(
                group_mul(&group_mul(&a, &b), &c),
                group_mul(&a, &group_mul(&b, &c))
            );
        }

        #[test]
        fn prop_bracket_antisymmetric(
            u in sample::strategy_nvector(),
            v in sample::strategy_nvector(),
        ) {
            prop_assert_eq!(bracket(&u, &v), -&bracket(&v, &u));
        }

        #[test]
        fn prop_jacobi_holds(
            u in sample::strategy_nvector(),
            v in sample::strategy_nvector(),
            w in sample::strategy_nvector(),
        ) {
            prop_assert!(jacobi_defect(&u, &v, &w).is_zero());
        }
    }
}
