//! Randomized verifier for the multiplicity-free decomposition.
//!
//! `verify_theorem` replays the algebraic identities the decomposition
//! rests on, in dependency order: group and algebra structure, the
//! automorphism family, coadjoint orbit invariants, then for each
//! configured representation the homomorphism law, the twisting
//! operators, the intertwining relation, and finally the character
//! computation whose injectivity is the multiplicity-free statement.
//! All inputs are drawn from a seeded generator and all arithmetic is
//! exact, so a report is reproducible byte for byte from its config.
//!
//! Every check can actually fail: five fault injections each flip one
//! sign or drop one term deep in the chain, and the report then
//! carries a concrete witness (inputs plus both sides) for at least
//! one named check.

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::aut::{
    aut0_element, aut0_family, decompose_aut0, is_automorphism, m_element, m_mul, AParams,
    KParams,
};
use crate::coadjoint::{
    b_lambda, classify_orbit, coadjoint_action, k_dual_action, maximal_isotropic,
    stabilizer_check, standard_polarization, verify_polarization, Covector, OrbitId,
};
use crate::lie::{
    ad_matrix, adjoint, bracket, center, group_inv, group_mul, jacobi_defect,
    lower_central_series, NPoint, NVector,
};
use crate::rep::{omega, rho, PhaseShiftOp, RepCase};
use crate::sample;
use crate::scalar::Scalar;
use crate::Error;

/// A character of K evaluated from a spectral point: k -> exp(i(a k1 + b k2)).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct KCharacter {
    pub a: Scalar,
    pub b: Scalar,
}

impl KCharacter {
    /// The phase a k1 + b k2.
    pub fn phase(&self, k: &KParams) -> Scalar {
        &self.a * &k.k1 + &self.b * &k.k2
    }
}

impl fmt::Display for KCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k -> e^{{i({} k1 + {} k2)}}", self.a, self.b)
    }
}

/// The character by which omega(k) acts at the spectral point u:
/// omega(k) multiplies a function supported at u by exp(i chi_u(k)).
pub fn character_at(case: &RepCase, u: &Scalar) -> KCharacter {
    match case {
        RepCase::Generic { lambda, .. } => KCharacter {
            a: -&(&Scalar::new(1, 2) * &(lambda * &(u * u))),
            b: lambda * u,
        },
        RepCase::NonGeneric { nu } => KCharacter {
            a: nu * u,
            b: Scalar::zero(),
        },
        RepCase::Trivial => KCharacter {
            a: Scalar::zero(),
            b: Scalar::zero(),
        },
    }
}

/// omega(k) must act pointwise: no shift part, and its phase at u must
/// equal the character phase.
pub fn character_consistency(case: &RepCase, k: &KParams, u: &Scalar) -> bool {
    let op = omega(case, k);
    op.shift.is_zero() && op.phase.eval(u) == character_at(case, u).phase(k)
}

/// Outcome of decomposing one representation under the characters of K.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DecompositionReport {
    pub case: RepCase,
    pub sample_count: usize,
    /// Distinct sample points received distinct characters.
    pub injective: bool,
    /// All sample points share one character and the twisting
    /// operators are genuinely trivial for this case.
    pub single_character: bool,
    pub multiplicity_free: bool,
    /// A colliding pair of sample points when not multiplicity-free.
    pub witness: Option<(Scalar, Scalar)>,
}

/// Whether omega(., k) is the identity for every k in this case.
fn twist_is_trivial(case: &RepCase) -> bool {
    match case {
        RepCase::Generic { .. } => false,
        RepCase::NonGeneric { nu } => nu.is_zero(),
        RepCase::Trivial => true,
    }
}

fn decompose_with(
    case: &RepCase,
    samples: &[Scalar],
    char_at: impl Fn(&RepCase, &Scalar) -> KCharacter,
) -> Result<DecompositionReport, Error> {
    if samples.is_empty() {
        return Err(Error::EmptySample);
    }
    if let RepCase::Generic { lambda, .. } = case {
        if lambda.is_zero() {
            return Err(Error::ZeroLambda);
        }
    }
    for (i, u) in samples.iter().enumerate() {
        if samples[i + 1..].contains(u) {
            return Err(Error::DuplicateSample(u.to_string()));
        }
    }
    let characters: Vec<KCharacter> = samples.iter().map(|u| char_at(case, u)).collect();
    let mut collision = None;
    'outer: for i in 0..characters.len() {
        for j in (i + 1)..characters.len() {
            if characters[i] == characters[j] {
                collision = Some((samples[i].clone(), samples[j].clone()));
                break 'outer;
            }
        }
    }
    let injective = collision.is_none();
    let all_equal = characters.windows(2).all(|w| w[0] == w[1]);
    let single_character = all_equal && twist_is_trivial(case);
    let multiplicity_free = injective || single_character;
    Ok(DecompositionReport {
        case: case.clone(),
        sample_count: samples.len(),
        injective,
        single_character,
        multiplicity_free,
        witness: if multiplicity_free { None } else { collision },
    })
}

/// Decompose the case over the sample points: multiplicity-free means
/// the character map u -> chi_u is injective, except in the cases
/// whose twisting action is trivial, where a single shared character
/// is the whole (one-line) decomposition.
pub fn multiplicity_free(
    case: &RepCase,
    samples: &[Scalar],
) -> Result<DecompositionReport, Error> {
    decompose_with(case, samples, |c, u| character_at(c, u))
}

/// Evenly spaced sample points centered at 0 with spacing 1/2.
pub fn sample_points(count: usize) -> Vec<Scalar> {
    (0..count)
        .map(|j| Scalar::new(2 * j as i64 - (count as i64 - 1), 4))
        .collect()
}

/// The default covector and twisting-parameter grids for the
/// stabilizer claim: small integers covering every orbit stratum,
/// including the zero covector.
pub fn default_stabilizer_samples() -> (Vec<Covector>, Vec<KParams>) {
    let mut covectors = Vec::new();
    for lambda in [0i64, 1, -1, 2, -2] {
        for alpha in [0i64, 1, -1] {
            for nu in [0i64, 1, -1, 3, -3] {
                covectors.push(Covector::new(alpha, 0, nu, lambda));
            }
        }
    }
    let mut ks = Vec::new();
    for k1 in -2..=2 {
        for k2 in -2..=2 {
            ks.push(KParams::new(k1, k2));
        }
    }
    (covectors, ks)
}

/// True when every sampled twisting parameter fixes the orbit of
/// every sampled covector, so each orbit's stabilizer inside K is all
/// of K.
pub fn stabilizer_is_k(covectors: &[Covector], ks: &[KParams]) -> bool {
    covectors
        .iter()
        .all(|lam| ks.iter().all(|k| stabilizer_check(lam, k)))
}

/// One deliberately wrong primitive, for demonstrating that the
/// verifier's checks have teeth.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FaultMode {
    /// Negate the phase of every twisting operator omega(k).
    OmegaSign,
    /// Drop the phase cross-term of rho (the x y term in the generic
    /// case, the s x term in the non-generic case).
    RhoPhaseDrop,
    /// Flip the sign of the nu^2/(2 lambda) part of the generic orbit
    /// invariant.
    OrbitInvariantSign,
    /// Pretend the group inverse is plain coordinate negation.
    InverseSign,
    /// Zero one component of every character, collapsing distinct
    /// spectral points onto one character.
    CharacterCollision,
}

impl FaultMode {
    pub const ALL: [FaultMode; 5] = [
        FaultMode::OmegaSign,
        FaultMode::RhoPhaseDrop,
        FaultMode::OrbitInvariantSign,
        FaultMode::InverseSign,
        FaultMode::CharacterCollision,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FaultMode::OmegaSign => "omega-sign",
            FaultMode::RhoPhaseDrop => "rho-phase-drop",
            FaultMode::OrbitInvariantSign => "orbit-invariant-sign",
            FaultMode::InverseSign => "inverse-sign",
            FaultMode::CharacterCollision => "character-collision",
        }
    }
}

impl fmt::Display for FaultMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FaultMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FaultMode::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = FaultMode::ALL.iter().map(|m| m.name()).collect();
                format!("unknown fault mode {s:?}; expected one of {}", names.join(", "))
            })
    }
}

/// What to verify and how hard to try.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub seed: u64,
    pub cases: Vec<RepCase>,
    pub trials_algebra: usize,
    pub trials_homomorphism: usize,
    pub trials_true_rep: usize,
    pub trials_intertwine: usize,
    pub trials_character: usize,
    pub trials_orbit: usize,
    pub u_sample_count: usize,
    pub fault: Option<FaultMode>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 7,
            cases: default_cases(),
            trials_algebra: 1000,
            trials_homomorphism: 500,
            trials_true_rep: 200,
            trials_intertwine: 300,
            trials_character: 300,
            trials_orbit: 500,
            u_sample_count: 101,
            fault: None,
        }
    }
}

/// A spread of orbit representatives covering all three shapes.
pub fn default_cases() -> Vec<RepCase> {
    vec![
        RepCase::generic(0, 1).unwrap(),
        RepCase::generic(1, 1).unwrap(),
        RepCase::generic(Scalar::new(-1, 2), 2).unwrap(),
        RepCase::generic(3, -1).unwrap(),
        RepCase::non_generic(1),
        RepCase::non_generic(-2),
        RepCase::non_generic(3),
        RepCase::non_generic(0),
        RepCase::trivial(),
    ]
}

/// Inputs and both sides of a failed identity, rendered exactly.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Witness {
    pub inputs: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    /// Trials actually executed; stops at the first failure.
    pub trials: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CaseReport {
    pub case: String,
    pub checks: Vec<CheckResult>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        })
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct TheoremReport {
    pub version: u32,
    pub config: VerifyConfig,
    pub cases: Vec<CaseReport>,
    pub verdict: Verdict,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn failed_checks(&self) -> Vec<(&str, &CheckResult)> {
        self.cases
            .iter()
            .flat_map(|c| {
                c.checks
                    .iter()
                    .filter(|ch| !ch.passed)
                    .map(move |ch| (c.case.as_str(), ch))
            })
            .collect()
    }

    /// Human-oriented rendering, one line per check.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for case in &self.cases {
            out.push_str(&format!("[{}]\n", case.case));
            for check in &case.checks {
                let mark = if check.passed { "ok  " } else { "FAIL" };
                out.push_str(&format!(
                    "  {} {} ({} trials)\n",
                    mark, check.name, check.trials
                ));
                if let Some(w) = &check.witness {
                    out.push_str(&format!("       inputs: {}\n", w.inputs));
                    out.push_str(&format!("       lhs:    {}\n", w.lhs));
                    out.push_str(&format!("       rhs:    {}\n", w.rhs));
                }
            }
        }
        out.push_str(&format!("verdict: {}\n", self.verdict));
        out
    }
}

// Fault-aware primitives. Every internal use of these five operations
// goes through this layer, so an injected fault surfaces wherever the
// mathematics actually depends on the flipped term.

fn group_inv_f(fault: Option<FaultMode>, n: &NPoint) -> NPoint {
    if fault == Some(FaultMode::InverseSign) {
        NPoint {
            s: -&n.s,
            x: -&n.x,
            y: -&n.y,
            t: -&n.t,
        }
    } else {
        group_inv(n)
    }
}

fn classify_f(fault: Option<FaultMode>, lam: &Covector) -> OrbitId {
    if fault == Some(FaultMode::OrbitInvariantSign) && !lam.lambda.is_zero() {
        let two_lambda = Scalar::from_int(2) * lam.lambda.clone();
        return OrbitId::Generic {
            alpha: &lam.alpha - &(&(&lam.nu * &lam.nu) / &two_lambda),
            lambda: lam.lambda.clone(),
        };
    }
    classify_orbit(lam)
}

fn rho_f(fault: Option<FaultMode>, case: &RepCase, n: &NPoint) -> PhaseShiftOp {
    let mut op = rho(case, n);
    if fault == Some(FaultMode::RhoPhaseDrop) {
        let half = Scalar::new(1, 2);
        match case {
            RepCase::Generic { lambda, .. } => {
                op.phase.c0 = &op.phase.c0 - &(&half * &(lambda * &(&n.x * &n.y)));
            }
            RepCase::NonGeneric { nu } => {
                op.phase.c0 = &op.phase.c0 + &(nu * &(&n.s * &n.x));
            }
            RepCase::Trivial => {}
        }
    }
    op
}

fn omega_f(fault: Option<FaultMode>, case: &RepCase, k: &KParams) -> PhaseShiftOp {
    let mut op = omega(case, k);
    if fault == Some(FaultMode::OmegaSign) {
        op.phase = op.phase.neg();
    }
    op
}

fn character_at_f(fault: Option<FaultMode>, case: &RepCase, u: &Scalar) -> KCharacter {
    let mut chi = character_at(case, u);
    if fault == Some(FaultMode::CharacterCollision) {
        match case {
            RepCase::Generic { .. } => chi.b = Scalar::zero(),
            RepCase::NonGeneric { .. } => chi.a = Scalar::zero(),
            RepCase::Trivial => {}
        }
    }
    chi
}

fn rho_twisted_f(
    fault: Option<FaultMode>,
    case: &RepCase,
    k: &KParams,
    n: &NPoint,
) -> PhaseShiftOp {
    let moved = NPoint {
        s: n.s.clone(),
        x: n.x.clone(),
        y: &n.y + &k.k1 * &n.x,
        t: &n.t + &k.k2 * &n.x,
    };
    rho_f(fault, case, &moved)
}

struct Checker {
    name: &'static str,
    trials: usize,
    witness: Option<Witness>,
}

impl Checker {
    fn new(name: &'static str) -> Self {
        Checker {
            name,
            trials: 0,
            witness: None,
        }
    }

    /// Records one trial; on the first discrepancy captures a witness
    /// and reports false so the caller can stop early.
    fn trial<L: fmt::Display, R: fmt::Display>(
        &mut self,
        inputs: impl FnOnce() -> String,
        lhs: L,
        rhs: R,
        equal: bool,
    ) -> bool {
        self.trials += 1;
        if !equal && self.witness.is_none() {
            self.witness = Some(Witness {
                inputs: inputs(),
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            });
        }
        self.witness.is_none()
    }

    fn finish(self) -> CheckResult {
        CheckResult {
            name: self.name.to_string(),
            passed: self.witness.is_none(),
            trials: self.trials,
            witness: self.witness,
        }
    }
}

fn check_loop(
    name: &'static str,
    trials: usize,
    mut body: impl FnMut(&mut Checker) -> bool,
) -> CheckResult {
    let mut checker = Checker::new(name);
    for _ in 0..trials {
        if !body(&mut checker) {
            break;
        }
    }
    checker.finish()
}

fn structure_checks(config: &VerifyConfig, rng: &mut ChaCha8Rng) -> CaseReport {
    let fault = config.fault;
    let mut checks = Vec::new();

    checks.push(check_loop(
        "group_associativity",
        config.trials_algebra,
        |c| {
            let (a, b, d) = (sample::npoint(rng), sample::npoint(rng), sample::npoint(rng));
            let lhs = group_mul(&group_mul(&a, &b), &d);
            let rhs = group_mul(&a, &group_mul(&b, &d));
            let ok = lhs == rhs;
            c.trial(|| format!("a = {a}, b = {b}, c = {d}"), &lhs, &rhs, ok)
        },
    ));

    checks.push(check_loop("group_inverse", config.trials_algebra, |c| {
        let n = sample::npoint(rng);
        let inv = group_inv_f(fault, &n);
        let lhs = group_mul(&n, &inv);
        let rhs = group_mul(&inv, &n);
        let ok = lhs.is_zero() && rhs.is_zero();
        c.trial(
            || format!("n = {n}, claimed inverse = {inv}"),
            format!("n n^-1 = {lhs}"),
            format!("n^-1 n = {rhs}"),
            ok,
        )
    }));

    checks.push(check_loop(
        "bracket_antisymmetry",
        config.trials_algebra,
        |c| {
            let (u, v) = (sample::nvector(rng), sample::nvector(rng));
            let lhs = bracket(&u, &v);
            let rhs = -&bracket(&v, &u);
            let ok = lhs == rhs;
            c.trial(|| format!("u = {u}, v = {v}"), &lhs, &rhs, ok)
        },
    ));

    checks.push(check_loop("jacobi_identity", config.trials_algebra, |c| {
        let (u, v, w) = (sample::nvector(rng), sample::nvector(rng), sample::nvector(rng));
        let defect = jacobi_defect(&u, &v, &w);
        let ok = defect.is_zero();
        c.trial(
            || format!("u = {u}, v = {v}, w = {w}"),
            &defect,
            "0",
            ok,
        )
    }));

    checks.push(check_loop("ad_homomorphism", config.trials_algebra, |c| {
        let (m, n) = (sample::npoint(rng), sample::npoint(rng));
        let lhs = adjoint(&group_mul(&m, &n));
        let rhs = adjoint(&m).mul(&adjoint(&n));
        let ok = lhs == rhs;
        c.trial(|| format!("m = {m}, n = {n}"), &lhs, &rhs, ok)
    }));

    checks.push(check_loop(
        "ad_bracket_preservation",
        config.trials_algebra,
        |c| {
            let n = sample::npoint(rng);
            let (u, v) = (sample::nvector(rng), sample::nvector(rng));
            let ad = adjoint(&n);
            let lhs = NVector::from_row(&ad.apply(&bracket(&u, &v).to_row()));
            let rhs = bracket(
                &NVector::from_row(&ad.apply(&u.to_row())),
                &NVector::from_row(&ad.apply(&v.to_row())),
            );
            let ok = lhs == rhs;
            c.trial(|| format!("n = {n}, u = {u}, v = {v}"), &lhs, &rhs, ok)
        },
    ));

    checks.push(check_loop(
        "nilpotency_structure",
        config.trials_algebra,
        |c| {
            let series = lower_central_series();
            let dims: Vec<usize> = series.iter().map(|s| s.dim()).collect();
            let central = center();
            let u = sample::nvector(rng);
            let ad = ad_matrix(&u);
            let cube = ad.mul(&ad).mul(&ad);
            let ok = dims == [2, 1, 0]
                && central.dim() == 1
                && central.contains(&NVector::basis()[3])
                && cube == crate::linalg::Mat4::zero();
            c.trial(
                || format!("u = {u}"),
                format!("series dims {:?}, center dim {}", dims, central.dim()),
                "dims [2, 1, 0], center dim 1, (ad u)^3 = 0",
                ok,
            )
        },
    ));

    checks.push(check_loop(
        "aut0_family_automorphisms",
        config.trials_algebra,
        |c| {
            let rho_param = sample::positive_rational(rng);
            let m = sample::mparams(rng);
            let a = AParams::new(rho_param).unwrap();
            let k = aut0_element(&a, &m);
            let auto = is_automorphism(&k).unwrap_or(false);
            let round_trip = decompose_aut0(&k)
                .map(|(a2, m2)| a2 == a && m2 == m)
                .unwrap_or(false);
            let ok = auto && round_trip;
            c.trial(
                || format!("a = {a}, m = {m}"),
                format!("automorphism: {auto}, decompose round-trip: {round_trip}"),
                "automorphism: true, decompose round-trip: true",
                ok,
            )
        },
    ));

    checks.push(check_loop(
        "m_product_matrix_agreement",
        config.trials_algebra,
        |c| {
            let (p, q) = (sample::mparams(rng), sample::mparams(rng));
            let lhs = m_element(&m_mul(&p, &q));
            let rhs = m_element(&p).mul(&m_element(&q));
            let ok = lhs == rhs;
            c.trial(|| format!("p = {p}, q = {q}"), &lhs, &rhs, ok)
        },
    ));

    checks.push(check_loop(
        "apply_aut_homomorphism",
        config.trials_algebra,
        |c| {
            let k = aut0_family(
                sample::positive_rational(rng),
                sample::rational(rng),
                sample::rational(rng),
                sample::rational(rng),
                sample::rational(rng),
                sample::rational(rng),
            )
            .unwrap();
            let (n1, n2) = (sample::npoint(rng), sample::npoint(rng));
            let lhs = crate::aut::apply_aut(&k, &group_mul(&n1, &n2)).unwrap();
            let rhs = group_mul(
                &crate::aut::apply_aut(&k, &n1).unwrap(),
                &crate::aut::apply_aut(&k, &n2).unwrap(),
            );
            let ok = lhs == rhs;
            c.trial(
                || format!("k =\n{k}\nn1 = {n1}, n2 = {n2}"),
                &lhs,
                &rhs,
                ok,
            )
        },
    ));

    checks.push(check_loop("orbit_invariance", config.trials_orbit, |c| {
        let n = sample::npoint(rng);
        let lam = sample::covector(rng);
        let lhs = classify_f(fault, &coadjoint_action(&n, &lam));
        let rhs = classify_f(fault, &lam);
        let ok = lhs == rhs;
        c.trial(|| format!("n = {n}, covector = {lam}"), &lhs, &rhs, ok)
    }));

    {
        let mut checker = Checker::new("stabilizer_k_full");
        let (covectors, ks) = default_stabilizer_samples();
        'grid: for lam in &covectors {
            for k in &ks {
                let lhs = classify_f(fault, &k_dual_action(k, lam));
                let rhs = classify_f(fault, lam);
                let ok = lhs == rhs;
                if !checker.trial(|| format!("covector = {lam}, k = {k}"), &lhs, &rhs, ok) {
                    break 'grid;
                }
            }
        }
        checks.push(checker.finish());
    }

    checks.push(check_loop(
        "polarization_m_lambda",
        config.trials_orbit,
        |c| {
            let lam = sample::covector(rng);
            let b = b_lambda(&lam);
            let want_dim = b.radical().dim() + b.rank() / 2;
            let iso = maximal_isotropic(&lam);
            let iso_ok = iso.dim() == want_dim
                && iso
                    .basis()
                    .iter()
                    .all(|u| iso.basis().iter().all(|v| b.evaluate(u, v).is_zero()));
            // The standard subalgebra span{e1, e3, e4} must be a
            // polarization exactly on the rank-2 strata.
            let standard_ok =
                verify_polarization(&standard_polarization(), &lam) == (b.rank() == 2);
            let ok = iso_ok && standard_ok;
            c.trial(
                || format!("covector = {lam}"),
                format!(
                    "isotropic dim {} (max {want_dim}), standard polarization valid: {}",
                    iso.dim(),
                    verify_polarization(&standard_polarization(), &lam)
                ),
                format!(
                    "isotropic dim {want_dim}, standard polarization valid: {}",
                    b.rank() == 2
                ),
                ok,
            )
        },
    ));

    CaseReport {
        case: "structure".to_string(),
        checks,
    }
}

fn case_checks(
    config: &VerifyConfig,
    case: &RepCase,
    samples: &[Scalar],
    rng: &mut ChaCha8Rng,
) -> Result<CaseReport, Error> {
    let fault = config.fault;
    let mut checks = Vec::new();

    checks.push(check_loop(
        "representation_homomorphism",
        config.trials_homomorphism,
        |c| {
            let (n1, n2) = (sample::npoint(rng), sample::npoint(rng));
            let lhs = rho_f(fault, case, &group_mul(&n1, &n2));
            let rhs = rho_f(fault, case, &n1).compose(&rho_f(fault, case, &n2));
            let ok = lhs == rhs;
            c.trial(|| format!("n1 = {n1}, n2 = {n2}"), &lhs, &rhs, ok)
        },
    ));

    checks.push(check_loop(
        "omega_true_representation",
        config.trials_true_rep,
        |c| {
            let (p, q) = (sample::kparams(rng), sample::kparams(rng));
            let sum = KParams::new(&p.k1 + &q.k1, &p.k2 + &q.k2);
            let lhs = omega_f(fault, case, &p).compose(&omega_f(fault, case, &q));
            let rhs = omega_f(fault, case, &sum);
            let ok = lhs == rhs && omega_f(fault, case, &KParams::zero()).is_identity();
            c.trial(|| format!("k = {p}, k' = {q}"), &lhs, &rhs, ok)
        },
    ));

    checks.push(check_loop(
        "intertwining_generators",
        config.trials_intertwine,
        |c| {
            let k = sample::kparams(rng);
            let v = sample::rational(rng);
            let generators = [
                NPoint::new(v.clone(), 0, 0, 0),
                NPoint::new(0, v.clone(), 0, 0),
                NPoint::new(0, 0, v.clone(), 0),
                NPoint::new(0, 0, 0, v.clone()),
            ];
            for n in generators {
                let lhs = rho_twisted_f(fault, case, &k, &n).compose(&omega_f(fault, case, &k));
                let rhs = omega_f(fault, case, &k).compose(&rho_f(fault, case, &n));
                let ok = lhs == rhs;
                if !c.trial(|| format!("generator n = {n}, k = {k}"), &lhs, &rhs, ok) {
                    return false;
                }
            }
            true
        },
    ));

    checks.push(check_loop(
        "intertwining_general",
        config.trials_intertwine,
        |c| {
            let k = sample::kparams(rng);
            let n = sample::npoint(rng);
            let lhs = rho_twisted_f(fault, case, &k, &n).compose(&omega_f(fault, case, &k));
            let rhs = omega_f(fault, case, &k).compose(&rho_f(fault, case, &n));
            let ok = lhs == rhs;
            c.trial(|| format!("n = {n}, k = {k}"), &lhs, &rhs, ok)
        },
    ));

    checks.push(check_loop(
        "character_consistency",
        config.trials_character,
        |c| {
            let k = sample::kparams(rng);
            for u in samples {
                let op = omega_f(fault, case, &k);
                let lhs = op.phase.eval(u);
                let rhs = character_at_f(fault, case, u).phase(&k);
                let ok = op.shift.is_zero() && lhs == rhs;
                if !c.trial(
                    || format!("u = {u}, k = {k}"),
                    format!("omega phase at u: {lhs}"),
                    format!("character phase: {rhs}"),
                    ok,
                ) {
                    return false;
                }
            }
            true
        },
    ));

    {
        let mut checker = Checker::new("multiplicity_free");
        let report = decompose_with(case, samples, |c, u| character_at_f(fault, c, u))?;
        let ok = report.multiplicity_free;
        checker.trial(
            || match &report.witness {
                Some((u, v)) => format!(
                    "sample points u = {u}, v = {v} share character {}",
                    character_at_f(fault, case, u)
                ),
                None => format!("{} sample points", report.sample_count),
            },
            format!(
                "injective: {}, single character: {}",
                report.injective, report.single_character
            ),
            "injective or single character",
            ok,
        );
        checker.trials = report.sample_count;
        checks.push(checker.finish());
    }

    Ok(CaseReport {
        case: case.label(),
        checks,
    })
}

/// Run every check under the given configuration.
pub fn verify_theorem(config: &VerifyConfig) -> Result<TheoremReport, Error> {
    if config.cases.is_empty() {
        return Err(Error::EmptyCases);
    }
    for case in &config.cases {
        if let RepCase::Generic { lambda, .. } = case {
            if lambda.is_zero() {
                return Err(Error::ZeroLambda);
            }
        }
    }
    if config.u_sample_count == 0 {
        return Err(Error::EmptySample);
    }
    let samples = sample_points(config.u_sample_count);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut cases = vec![structure_checks(config, &mut rng)];
    for case in &config.cases {
        cases.push(case_checks(config, case, &samples, &mut rng)?);
    }
    let verdict = if cases.iter().all(|c| c.checks.iter().all(|ch| ch.passed)) {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(TheoremReport {
        version: 1,
        config: config.clone(),
        cases,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick_config() -> VerifyConfig {
        VerifyConfig {
            trials_algebra: 60,
            trials_homomorphism: 40,
            trials_true_rep: 30,
            trials_intertwine: 30,
            trials_character: 20,
            trials_orbit: 60,
            u_sample_count: 21,
            ..VerifyConfig::default()
        }
    }

    #[test]
    fn character_worked_examples() {
        let case = RepCase::generic(0, 1).unwrap();
        let chi = character_at(&case, &Scalar::from_int(2));
        assert_eq!(chi.a, Scalar::from_int(-2));
        assert_eq!(chi.b, Scalar::from_int(2));
        let case = RepCase::non_generic(3);
        let chi = character_at(&case, &Scalar::one());
        assert_eq!(chi.a, Scalar::from_int(3));
        assert_eq!(chi.b, Scalar::zero());
    }

    #[test]
    fn characters_agree_with_omega() {
        use rand::SeedableRng;
        let mut rng = ChaCha8Rng::seed_from_u64(601);
        for case in default_cases() {
            for _ in 0..50 {
                let k = sample::kparams(&mut rng);
                let u = sample::rational(&mut rng);
                assert!(character_consistency(&case, &k, &u));
            }
        }
    }

    #[test]
    fn decomposition_outcomes() {
        let samples = sample_points(11);
        let report = multiplicity_free(&RepCase::generic(2, 3).unwrap(), &samples).unwrap();
        assert!(report.injective && report.multiplicity_free);
        assert!(!report.single_character);
        assert!(report.witness.is_none());

        let report = multiplicity_free(&RepCase::non_generic(5), &samples).unwrap();
        assert!(report.injective && report.multiplicity_free);

        let report = multiplicity_free(&RepCase::non_generic(0), &samples).unwrap();
        assert!(!report.injective);
        assert!(report.single_character && report.multiplicity_free);

        let report = multiplicity_free(&RepCase::trivial(), &samples).unwrap();
        assert!(report.single_character && report.multiplicity_free);
    }

    #[test]
    fn decomposition_verdict_ignores_alpha() {
        // The characters of a generic case depend only on lambda, so
        // the verdict must not move when alpha does.
        let samples = sample_points(11);
        for lambda in [Scalar::one(), Scalar::from_int(-2), Scalar::new(1, 3)] {
            let verdicts: Vec<(bool, bool, bool)> = [
                Scalar::zero(),
                Scalar::one(),
                Scalar::new(-1, 2),
                Scalar::from_int(3),
            ]
            .into_iter()
            .map(|alpha| {
                let case = RepCase::generic(alpha, lambda.clone()).unwrap();
                let r = multiplicity_free(&case, &samples).unwrap();
                (r.injective, r.single_character, r.multiplicity_free)
            })
            .collect();
            assert!(verdicts.windows(2).all(|w| w[0] == w[1]));
        }
    }

    #[test]
    fn stabilizer_grid_covers_all_strata_and_passes() {
        let (covectors, ks) = default_stabilizer_samples();
        assert!(covectors.len() * ks.len() >= 200);
        let strata: Vec<OrbitId> = covectors.iter().map(classify_orbit).collect();
        assert!(strata
            .iter()
            .any(|o| matches!(o, OrbitId::Generic { .. })));
        assert!(strata.iter().any(
            |o| matches!(o, OrbitId::NonGeneric { point_orbit, .. } if !point_orbit)
        ));
        assert!(strata.iter().any(
            |o| matches!(o, OrbitId::NonGeneric { point_orbit, .. } if *point_orbit)
        ));
        assert!(strata.iter().any(|o| matches!(o, OrbitId::Zero)));
        assert!(stabilizer_is_k(&covectors, &ks));
    }

    #[test]
    fn stabilizer_single_pair_examples() {
        let lam = Covector::new(0, 0, 0, 1);
        let k = KParams::new(7, -7);
        assert_eq!(k_dual_action(&k, &lam), Covector::new(0, -7, 0, 1));
        assert!(stabilizer_is_k(&[lam], &[k]));
        assert!(stabilizer_is_k(
            &[Covector::zero()],
            &default_stabilizer_samples().1
        ));
    }

    #[test]
    fn degenerate_sample_sets_are_errors() {
        let case = RepCase::generic(0, 1).unwrap();
        assert!(matches!(
            multiplicity_free(&case, &[]),
            Err(Error::EmptySample)
        ));
        let dup = [Scalar::one(), Scalar::from_int(2), Scalar::one()];
        assert!(matches!(
            multiplicity_free(&case, &dup),
            Err(Error::DuplicateSample(_))
        ));
        let degenerate = RepCase::Generic {
            alpha: Scalar::zero(),
            lambda: Scalar::zero(),
        };
        assert!(matches!(
            multiplicity_free(&degenerate, &sample_points(3)),
            Err(Error::ZeroLambda)
        ));
    }

    #[test]
    fn sample_points_are_half_integer_grid() {
        let pts = sample_points(101);
        assert_eq!(pts.len(), 101);
        assert_eq!(pts[0], Scalar::new(-25, 1));
        assert_eq!(pts[50], Scalar::zero());
        assert_eq!(pts[100], Scalar::from_int(25));
        assert_eq!(&pts[1] - &pts[0], Scalar::new(1, 2));
    }

    #[test]
    fn fault_mode_names_round_trip() {
        for mode in FaultMode::ALL {
            assert_eq!(mode.name().parse::<FaultMode>().unwrap(), mode);
            let json = serde_json::to_string(&mode).unwrap();
            assert_eq!(json, format!("\"{}\"", mode.name()));
            assert_eq!(serde_json::from_str::<FaultMode>(&json).unwrap(), mode);
        }
        assert!("bogus".parse::<FaultMode>().is_err());
    }

    #[test]
    fn default_verification_passes() {
        let report = verify_theorem(&quick_config()).unwrap();
        assert!(report.passed(), "{}", report.render_text());
        assert_eq!(report.cases[0].case, "structure");
        assert_eq!(report.cases.len(), 1 + default_cases().len());
        let names: Vec<_> = report.cases[0]
            .checks
            .iter()
            .map(|c| c.name.as_str())
            .collect();
        assert_eq!(
            names,
            [
                "group_associativity",
                "group_inverse",
                "bracket_antisymmetry",
                "jacobi_identity",
                "ad_homomorphism",
                "ad_bracket_preservation",
                "nilpotency_structure",
                "aut0_family_automorphisms",
                "m_product_matrix_agreement",
                "apply_aut_homomorphism",
                "orbit_invariance",
                "stabilizer_k_full",
                "polarization_m_lambda",
            ]
        );
        for case in &report.cases[1..] {
            let names: Vec<_> = case.checks.iter().map(|c| c.name.as_str()).collect();
            assert_eq!(
                names,
                [
                    "representation_homomorphism",
                    "omega_true_representation",
                    "intertwining_generators",
                    "intertwining_general",
                    "character_consistency",
                    "multiplicity_free",
                ]
            );
        }
    }

    #[test]
    fn reports_are_deterministic_and_serializable() {
        let config = quick_config();
        let a = verify_theorem(&config).unwrap();
        let b = verify_theorem(&config).unwrap();
        assert_eq!(a, b);
        let ja = serde_json::to_string_pretty(&a).unwrap();
        let jb = serde_json::to_string_pretty(&b).unwrap();
        assert_eq!(ja, jb);
        let back: TheoremReport = serde_json::from_str(&ja).unwrap();
        assert_eq!(back, a);
        let other = verify_theorem(&VerifyConfig {
            seed: 8,
            ..quick_config()
        })
        .unwrap();
        assert!(other.passed());
    }

    fn failing_names(fault: FaultMode) -> Vec<(String, String)> {
        let report = verify_theorem(&VerifyConfig {
            fault: Some(fault),
            ..quick_config()
        })
        .unwrap();
        assert!(!report.passed(), "fault {fault} went undetected");
        for (_, check) in report.failed_checks() {
            let w = check.witness.as_ref().expect("failed check without witness");
            assert!(!w.inputs.is_empty() && !w.lhs.is_empty() && !w.rhs.is_empty());
        }
        report
            .failed_checks()
            .into_iter()
            .map(|(case, check)| (case.to_string(), check.name.clone()))
            .collect()
    }

    #[test]
    fn each_fault_is_caught_by_the_right_check() {
        let failed = failing_names(FaultMode::OmegaSign);
        assert!(failed.iter().any(|(_, n)| n == "intertwining_general"));
        assert!(failed.iter().all(|(case, _)| case != "structure"));

        let failed = failing_names(FaultMode::RhoPhaseDrop);
        assert!(failed
            .iter()
            .any(|(_, n)| n == "representation_homomorphism"));

        let failed = failing_names(FaultMode::OrbitInvariantSign);
        assert!(failed
            .iter()
            .any(|(case, n)| case == "structure" && n == "orbit_invariance"));
        // The stabilizer grid moves only mu, which even the faulted
        // invariant ignores.
        assert!(failed.iter().all(|(_, n)| n != "stabilizer_k_full"));

        let failed = failing_names(FaultMode::InverseSign);
        assert!(failed
            .iter()
            .any(|(case, n)| case == "structure" && n == "group_inverse"));

        let failed = failing_names(FaultMode::CharacterCollision);
        assert!(failed.iter().any(|(_, n)| n == "multiplicity_free"));
        assert!(failed.iter().any(|(_, n)| n == "character_consistency"));
    }

    #[test]
    fn bad_configs_are_errors() {
        let empty = VerifyConfig {
            cases: vec![],
            ..quick_config()
        };
        assert!(matches!(verify_theorem(&empty), Err(Error::EmptyCases)));
        let zero_lambda = VerifyConfig {
            cases: vec![RepCase::Generic {
                alpha: Scalar::zero(),
                lambda: Scalar::zero(),
            }],
            ..quick_config()
        };
        assert!(matches!(
            verify_theorem(&zero_lambda),
            Err(Error::ZeroLambda)
        ));
        let no_samples = VerifyConfig {
            u_sample_count: 0,
            ..quick_config()
        };
        assert!(matches!(
            verify_theorem(&no_samples),
            Err(Error::EmptySample)
        ));
    }

    #[test]
    fn text_rendering_mentions_failures() {
        let report = verify_theorem(&VerifyConfig {
            fault: Some(FaultMode::InverseSign),
            ..quick_config()
        })
        .unwrap();
        let text = report.render_text();
        assert!(text.contains("FAIL group_inverse"));
        assert!(text.contains("verdict: fail"));
        assert!(text.contains("inputs:"));
    }
}
