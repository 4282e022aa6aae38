//! Covectors, the coadjoint action, orbit classification, and the
//! skew form B(u, v) = L([u, v]) with its radicals and polarizations.
//!
//! A covector L = (alpha, mu, nu, lambda) pairs with (s, x, y, t) as
//! alpha s + mu x + nu y + lambda t. The coadjoint action of n is
//! precomposition with Ad(n^-1); in coordinates, n = (s, x, y, t) sends
//! (alpha, mu, nu, lambda) to
//!
//! ```text
//! alpha' = alpha + x nu - x^2 lambda / 2
//! mu'    = mu - s nu + y lambda
//! nu'    = nu - x lambda
//! lambda' = lambda
//! ```
//!
//! Orbits come in three shapes. With lambda != 0 the quantity
//! alpha + nu^2 / (2 lambda) is invariant and together with lambda
//! labels a 2-dimensional generic orbit. With lambda = 0 and nu != 0
//! the orbit is the flat 2-plane of all (.., .., nu, 0). With
//! nu = lambda = 0 the action is trivial and each covector is its own
//! point orbit.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::lie::{bracket, NPoint, NVector, Subspace};
use crate::linalg::Mat4;
use crate::scalar::Scalar;
use crate::aut::KParams;

/// A linear functional on the algebra, stored by its basis values.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Covector {
    pub alpha: Scalar,
    pub mu: Scalar,
    pub nu: Scalar,
    pub lambda: Scalar,
}

impl Covector {
    pub fn new(
        alpha: impl Into<Scalar>,
        mu: impl Into<Scalar>,
        nu: impl Into<Scalar>,
        lambda: impl Into<Scalar>,
    ) -> Self {
        Covector {
            alpha: alpha.into(),
            mu: mu.into(),
            nu: nu.into(),
            lambda: lambda.into(),
        }
    }

    pub fn zero() -> Self {
        Covector::new(0, 0, 0, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.alpha.is_zero() && self.mu.is_zero() && self.nu.is_zero() && self.lambda.is_zero()
    }

    /// The pairing <L, v>.
    pub fn pairing(&self, v: &NVector) -> Scalar {
        &self.alpha * &v.s + &self.mu * &v.x + &self.nu * &v.y + &self.lambda * &v.t
    }
}

impl fmt::Display for Covector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {}, {})",
            self.alpha, self.mu, self.nu, self.lambda
        )
    }
}

/// Which coadjoint orbit a covector belongs to.
///
/// `NonGeneric` covers the whole lambda = 0 stratum: flat 2-plane
/// orbits when nu != 0, and fixed points when nu = 0. The
/// `point_orbit` flag marks the latter; the id does not retain the
/// (alpha, mu) position of a point orbit, so two distinct fixed points
/// share an id. `orbit_contains` therefore answers "same stratum and
/// same invariants", which is orbit membership in every non-point case.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum OrbitId {
    Generic { alpha: Scalar, lambda: Scalar },
    NonGeneric { nu: Scalar, point_orbit: bool },
    Zero,
}

impl fmt::Display for OrbitId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrbitId::Generic { alpha, lambda } => write!(f, "O_{{{},{}}}", alpha, lambda),
            OrbitId::NonGeneric {
                nu,
                point_orbit: false,
            } => write!(f, "O_{{{}}}", nu),
            OrbitId::NonGeneric {
                point_orbit: true, ..
            } => write!(f, "point orbit (nu = lambda = 0)"),
            OrbitId::Zero => write!(f, "zero orbit {{0}}"),
        }
    }
}

/// Coadjoint action of the group point n on the covector.
pub fn coadjoint_action(n: &NPoint, lam: &Covector) -> Covector {
    let x2 = &n.x * &n.x;
    let half = Scalar::new(1, 2);
    Covector {
        alpha: &lam.alpha + &n.x * &lam.nu - &half * &(&x2 * &lam.lambda),
        mu: &lam.mu - &n.s * &lam.nu + &n.y * &lam.lambda,
        nu: &lam.nu - &n.x * &lam.lambda,
        lambda: lam.lambda.clone(),
    }
}

/// The orbit invariants of a covector.
pub fn classify_orbit(lam: &Covector) -> OrbitId {
    if !lam.lambda.is_zero() {
        let two_lambda = Scalar::from_int(2) * lam.lambda.clone();
        OrbitId::Generic {
            alpha: &lam.alpha + &(&(&lam.nu * &lam.nu) / &two_lambda),
            lambda: lam.lambda.clone(),
        }
    } else if !lam.nu.is_zero() {
        OrbitId::NonGeneric {
            nu: lam.nu.clone(),
            point_orbit: false,
        }
    } else if lam.is_zero() {
        OrbitId::Zero
    } else {
        OrbitId::NonGeneric {
            nu: Scalar::zero(),
            point_orbit: true,
        }
    }
}

/// Whether the covector's invariants match the given orbit id.
pub fn orbit_contains(orbit: &OrbitId, lam: &Covector) -> bool {
    classify_orbit(lam) == *orbit
}

/// The skew form B(u, v) = L([u, v]) on the algebra.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SkewForm {
    matrix: Mat4,
}

impl SkewForm {
    pub fn matrix(&self) -> &Mat4 {
        &self.matrix
    }

    pub fn evaluate(&self, u: &NVector, v: &NVector) -> Scalar {
        let bv = self.matrix.apply(&v.to_row());
        let u = u.to_row();
        let mut acc = Scalar::zero();
        for i in 0..4 {
            acc = acc + &u[i] * &bv[i];
        }
        acc
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    /// The kernel {u : B(u, .) = 0}.
    pub fn radical(&self) -> Subspace {
        let rows: Vec<_> = (0..4).map(|i| self.matrix.row(i).clone()).collect();
        Subspace::from_rows(crate::linalg::kernel(&rows))
    }
}

/// B for the covector: entries B[i][j] = L([e_i, e_j]); only the
/// (1,2) slot nu and the (2,3) slot lambda are nonzero up to sign.
pub fn b_lambda(lam: &Covector) -> SkewForm {
    let basis = NVector::basis();
    let mut m = Mat4::zero();
    for i in 0..4 {
        for j in 0..4 {
            m[(i, j)] = lam.pairing(&bracket(&basis[i], &basis[j]));
        }
    }
    SkewForm { matrix: m }
}

/// Greedy maximal isotropic subspace for B: start from the radical and
/// adjoin basis vectors that keep all pairings zero. The result has
/// dimension dim radical + rank B / 2, the largest possible.
pub fn maximal_isotropic(lam: &Covector) -> Subspace {
    let b = b_lambda(lam);
    let mut vectors: Vec<NVector> = b.radical().basis().to_vec();
    for e in NVector::basis() {
        let span = Subspace::span(&vectors);
        if span.contains(&e) {
            continue;
        }
        if vectors.iter().all(|v| b.evaluate(&e, v).is_zero()) {
            vectors.push(e);
        }
    }
    Subspace::span(&vectors)
}

/// span{e1, e3, e4}: isotropic for B and a subalgebra for every
/// covector, and a polarization whenever rank B = 2.
pub fn standard_polarization() -> Subspace {
    let [e1, _, e3, e4] = NVector::basis();
    Subspace::span(&[e1, e3, e4])
}

/// A polarization at L is a subalgebra that is isotropic for B and of
/// the maximal dimension dim radical + rank B / 2.
pub fn verify_polarization(sub: &Subspace, lam: &Covector) -> bool {
    let b = b_lambda(lam);
    let basis = sub.basis();
    for (i, u) in basis.iter().enumerate() {
        for v in &basis[i + 1..] {
            if !b.evaluate(u, v).is_zero() {
                return false;
            }
        }
    }
    sub.dim() == b.radical().dim() + b.rank() / 2 && sub.is_bracket_closed()
}

/// Dual action of k in K on a covector: precompose with the matrix of
/// k. Only mu moves: mu' = mu + k1 nu + k2 lambda.
pub fn k_dual_action(k: &KParams, lam: &Covector) -> Covector {
    Covector {
        alpha: lam.alpha.clone(),
        mu: &lam.mu + &k.k1 * &lam.nu + &k.k2 * &lam.lambda,
        nu: lam.nu.clone(),
        lambda: lam.lambda.clone(),
    }
}

/// Whether k stabilizes the orbit of the covector. The dual action
/// moves only mu, which no orbit invariant depends on, so this holds
/// for every pair: the stabilizer of each orbit is all of K.
pub fn stabilizer_check(lam: &Covector, k: &KParams) -> bool {
    classify_orbit(&k_dual_action(k, lam)) == classify_orbit(lam)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{adjoint, group_inv, group_mul};
    use crate::sample;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn action_worked_example() {
        // exp(e2) = (0, 1, 0, 0) acting on (0, 0, 0, 1).
        let lam = Covector::new(0, 0, 0, 1);
        let n = NPoint::new(0, 1, 0, 0);
        let moved = coadjoint_action(&n, &lam);
        assert_eq!(moved, Covector::new(Scalar::new(-1, 2), 0, -1, 1));
        assert_eq!(
            classify_orbit(&moved),
            OrbitId::Generic {
                alpha: Scalar::zero(),
                lambda: Scalar::one()
            }
        );
    }

    #[test]
    fn action_is_dual_to_adjoint_of_inverse() {
        let mut rng = ChaCha8Rng::seed_from_u64(301);
        for _ in 0..200 {
            let n = sample::npoint(&mut rng);
            let lam = sample::covector(&mut rng);
            let v = sample::nvector(&mut rng);
            let moved = coadjoint_action(&n, &lam);
            let pulled = adjoint(&group_inv(&n)).apply(&v.to_row());
            assert_eq!(moved.pairing(&v), lam.pairing(&NVector::from_row(&pulled)));
        }
    }

    #[test]
    fn action_is_group_homomorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(302);
        for _ in 0..200 {
            let n1 = sample::npoint(&mut rng);
            let n2 = sample::npoint(&mut rng);
            let lam = sample::covector(&mut rng);
            let lhs = coadjoint_action(&group_mul(&n1, &n2), &lam);
            let rhs = coadjoint_action(&n1, &coadjoint_action(&n2, &lam));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn classify_worked_example() {
        let lam = Covector::new(3, 7, 2, 1);
        assert_eq!(
            classify_orbit(&lam),
            OrbitId::Generic {
                alpha: Scalar::from_int(5),
                lambda: Scalar::one()
            }
        );
    }

    #[test]
    fn generic_orbit_membership_example() {
        let orbit = OrbitId::Generic {
            alpha: Scalar::zero(),
            lambda: Scalar::one(),
        };
        assert!(orbit_contains(&orbit, &Covector::new(-2, 5, 2, 1)));
        assert!(!orbit_contains(&orbit, &Covector::new(1, 5, 2, 1)));
    }

    #[test]
    fn classification_is_orbit_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(303);
        for _ in 0..300 {
            let n = sample::npoint(&mut rng);
            let lam = sample::covector(&mut rng);
            assert_eq!(classify_orbit(&coadjoint_action(&n, &lam)), classify_orbit(&lam));
        }
    }

    #[test]
    fn lambda_zero_strata() {
        let flat = Covector::new(4, -3, 2, 0);
        assert_eq!(
            classify_orbit(&flat),
            OrbitId::NonGeneric {
                nu: Scalar::from_int(2),
                point_orbit: false
            }
        );
        let point = Covector::new(4, -3, 0, 0);
        assert_eq!(
            classify_orbit(&point),
            OrbitId::NonGeneric {
                nu: Scalar::zero(),
                point_orbit: true
            }
        );
        assert_eq!(classify_orbit(&Covector::zero()), OrbitId::Zero);
    }

    #[test]
    fn point_orbits_are_fixed() {
        let mut rng = ChaCha8Rng::seed_from_u64(304);
        let lam = Covector::new(4, -3, 0, 0);
        for _ in 0..50 {
            let n = sample::npoint(&mut rng);
            assert_eq!(coadjoint_action(&n, &lam), lam);
        }
    }

    #[test]
    fn skew_form_entries_and_antisymmetry() {
        let lam = Covector::new(9, 8, 7, 6);
        let b = b_lambda(&lam);
        assert_eq!(b.matrix()[(0, 1)], Scalar::from_int(7));
        assert_eq!(b.matrix()[(1, 0)], Scalar::from_int(-7));
        assert_eq!(b.matrix()[(1, 2)], Scalar::from_int(6));
        assert_eq!(b.matrix()[(2, 1)], Scalar::from_int(-6));
        let mut rng = ChaCha8Rng::seed_from_u64(305);
        for _ in 0..100 {
            let u = sample::nvector(&mut rng);
            let v = sample::nvector(&mut rng);
            assert_eq!(b.evaluate(&u, &v), -b.evaluate(&v, &u));
            assert_eq!(b.evaluate(&u, &v), lam.pairing(&bracket(&u, &v)));
        }
    }

    #[test]
    fn radical_by_stratum() {
        let [e1, e2, e3, e4] = NVector::basis();
        // nu = 0, lambda != 0.
        let rad = b_lambda(&Covector::new(1, 2, 0, 3)).radical();
        assert_eq!(rad, Subspace::span(&[e1.clone(), e4.clone()]));
        // nu != 0, lambda = 0.
        let rad = b_lambda(&Covector::new(1, 2, 3, 0)).radical();
        assert_eq!(rad, Subspace::span(&[e3.clone(), e4.clone()]));
        // Both nonzero: span{e1 + (nu/lambda) e3, e4}.
        let rad = b_lambda(&Covector::new(0, 0, 6, 2)).radical();
        let slant = NVector::new(1, 0, 3, 0);
        assert_eq!(rad, Subspace::span(&[slant, e4.clone()]));
        // Both zero: everything.
        let rad = b_lambda(&Covector::new(5, -5, 0, 0)).radical();
        assert_eq!(rad.dim(), 4);
        let _ = (e2, e3);
    }

    #[test]
    fn maximal_isotropic_has_maximal_dimension() {
        let mut rng = ChaCha8Rng::seed_from_u64(306);
        for _ in 0..200 {
            let lam = sample::covector(&mut rng);
            let b = b_lambda(&lam);
            let iso = maximal_isotropic(&lam);
            assert_eq!(iso.dim(), b.radical().dim() + b.rank() / 2);
            let basis = iso.basis();
            for u in basis {
                for v in basis {
                    assert!(b.evaluate(u, v).is_zero());
                }
            }
        }
    }

    #[test]
    fn standard_polarization_verifies_on_rank_two_strata() {
        assert!(verify_polarization(
            &standard_polarization(),
            &Covector::new(3, 7, 2, 1)
        ));
        assert!(verify_polarization(
            &standard_polarization(),
            &Covector::new(3, 7, 2, 0)
        ));
        // Rank 0: the subspace is still isotropic and closed but no
        // longer of maximal dimension.
        assert!(!verify_polarization(
            &standard_polarization(),
            &Covector::new(3, 7, 0, 0)
        ));
    }

    #[test]
    fn isotropy_alone_is_not_a_polarization() {
        // span{e1, e2, e4} is maximal isotropic when nu = 0 but not a
        // subalgebra: [e1, e2] = e3 falls outside.
        let [e1, e2, _, e4] = NVector::basis();
        let sub = Subspace::span(&[e1, e2, e4]);
        let lam = Covector::new(0, 0, 0, 1);
        let b = b_lambda(&lam);
        assert_eq!(sub.dim(), b.radical().dim() + b.rank() / 2);
        assert!(!sub.is_bracket_closed());
        assert!(!verify_polarization(&sub, &lam));
    }

    #[test]
    fn k_stabilizes_every_orbit() {
        let mut rng = ChaCha8Rng::seed_from_u64(307);
        for _ in 0..300 {
            let lam = sample::covector(&mut rng);
            let k = sample::kparams(&mut rng);
            assert!(stabilizer_check(&lam, &k));
        }
        // The dual action genuinely moves mu.
        let lam = Covector::new(0, 0, 1, 2);
        let k = KParams::new(3, 4);
        assert_eq!(k_dual_action(&k, &lam), Covector::new(0, 11, 1, 2));
    }
}
