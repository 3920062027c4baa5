//! The operators `T`, `N`, `j_x`, `j'_x`, `h_x`, `h'_x` over any
//! [`CyclicRing`], plus exact checkers for the identities they satisfy.
//!
//! Every checker runs both in the universal free ring (where a pass is a
//! proof for all rings, since any instance is a specialization) and in
//! concrete finite rings (where it is a brute-force verification).

use serde::Serialize;

use crate::cyclic::CyclicRing;
use crate::error::{Error, Result};
use crate::free_ring::{FreePoly, UniversalRing};

/// `T(a) = t(a) - a`.
pub fn t_op<R: CyclicRing>(r: &R, a: &R::Elem) -> R::Elem {
    r.sub(&r.shift(a), a)
}

/// The norm map `N(a) = a + t(a) + ... + t^{n-1}(a)`.
pub fn norm<R: CyclicRing>(r: &R, a: &R::Elem) -> R::Elem {
    let mut acc = a.clone();
    let mut cur = a.clone();
    for _ in 1..r.order() {
        cur = r.shift(&cur);
        acc = r.add(&acc, &cur);
    }
    acc
}

/// The truncated norm `(id + t + ... + t^{i-1})(a)`; `i = 0` is the empty
/// sum and `i = n` is the full norm.
pub fn partial_sum<R: CyclicRing>(r: &R, i: u32, a: &R::Elem) -> Result<R::Elem> {
    if i > r.order() {
        return Err(Error::Range(format!(
            "partial sum index {i} exceeds n = {}",
            r.order()
        )));
    }
    let mut acc = r.zero();
    let mut cur = a.clone();
    for j in 0..i {
        if j > 0 {
            cur = r.shift(&cur);
        }
        acc = r.add(&acc, &cur);
    }
    Ok(acc)
}

/// `j_x(a) = x a`.
pub fn j_x<R: CyclicRing>(r: &R, x: &R::Elem, a: &R::Elem) -> R::Elem {
    r.mul(x, a)
}

/// `j'_x(a) = x t(a)`.
pub fn j_prime_x<R: CyclicRing>(r: &R, x: &R::Elem, a: &R::Elem) -> R::Elem {
    r.mul(x, &r.shift(a))
}

/// `h_x(a) = - sum_{i=1}^{n-1} t^i(x) (id + t + ... + t^{i-1})(a)`.
pub fn h_x<R: CyclicRing>(r: &R, x: &R::Elem, a: &R::Elem) -> R::Elem {
    let n = r.order();
    let mut acc = r.zero();
    let mut tx = x.clone();
    for i in 1..n {
        tx = r.shift(&tx);
        let ps = partial_sum(r, i, a).expect("i < n");
        acc = r.add(&acc, &r.mul(&tx, &ps));
    }
    r.neg(&acc)
}

/// `h'_x(a) = sum_{i=1}^{n-1} (id + t + ... + t^{i-1})(x t^{-i}(a))`,
/// with `t^{-i}` realized as `t^{n-i}` (legal because `t^n = id`).
pub fn h_prime_x<R: CyclicRing>(r: &R, x: &R::Elem, a: &R::Elem) -> R::Elem {
    let n = r.order();
    let mut acc = r.zero();
    for i in 1..n {
        let inner = r.mul(x, &r.shift_pow(a, n - i));
        let ps = partial_sum(r, i, &inner).expect("i < n");
        acc = r.add(&acc, &ps);
    }
    acc
}

/// Closed form of `h_x` when `n` is invertible and `x = u = n^{-1}`:
/// `h_u(a) = -u * sum_j (n-1-j) t^j(a)`.
pub fn h_special<R: CyclicRing>(r: &R, u: &R::Elem, a: &R::Elem) -> R::Elem {
    let n = r.order();
    let mut sum = r.zero();
    let mut cur = a.clone();
    for j in 0..n {
        if j > 0 {
            cur = r.shift(&cur);
        }
        sum = r.add(&sum, &r.int_mul(i64::from(n - 1 - j), &cur));
    }
    r.neg(&r.mul(u, &sum))
}

/// Closed form of `h'_x` at `x = u = n^{-1}`: `h'_u(a) = u * sum_j j t^j(a)`.
pub fn h_prime_special<R: CyclicRing>(r: &R, u: &R::Elem, a: &R::Elem) -> R::Elem {
    let n = r.order();
    let mut sum = r.zero();
    let mut cur = a.clone();
    for j in 0..n {
        if j > 0 {
            cur = r.shift(&cur);
        }
        sum = r.add(&sum, &r.int_mul(i64::from(j), &cur));
    }
    r.mul(u, &sum)
}

/// The individual identities the checkers verify. Each one has a left and a
/// right side evaluable at a fixed `(x, a)` pair; for the `Special*` entries
/// the `x` argument plays the role of `u = n^{-1}`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum IdentityId {
    // (1)
    TAfterNorm,
    NormAfterT,
    TDiffAfterNorm,
    NormAfterTDiff,
    // Lemma: pointwise differences
    JDiff,
    HDiff,
    // Corollary of the lemma: operator equalities
    JNormEqual,
    THEqual,
    MixedEqual,
    // Multiplication by N(x) as four operator sums: (2)-(5)
    NormTimesA2,
    NormTimesA3,
    NormTimesA4,
    NormTimesA5,
    // Homotopy formulas when N(x) = 1: the four sums are the identity map
    Homotopy2,
    Homotopy3,
    Homotopy4,
    Homotopy5,
    // Closed forms at x = n^{-1}
    SpecialH,
    SpecialHPrime,
}

impl IdentityId {
    pub const EQ1: [IdentityId; 4] = [
        IdentityId::TAfterNorm,
        IdentityId::NormAfterT,
        IdentityId::TDiffAfterNorm,
        IdentityId::NormAfterTDiff,
    ];
    pub const LEMMA1: [IdentityId; 2] = [IdentityId::JDiff, IdentityId::HDiff];
    pub const COROLLARY1: [IdentityId; 3] = [
        IdentityId::JNormEqual,
        IdentityId::THEqual,
        IdentityId::MixedEqual,
    ];
    pub const PROPOSITION: [IdentityId; 4] = [
        IdentityId::NormTimesA2,
        IdentityId::NormTimesA3,
        IdentityId::NormTimesA4,
        IdentityId::NormTimesA5,
    ];
    pub const HOMOTOPY: [IdentityId; 4] = [
        IdentityId::Homotopy2,
        IdentityId::Homotopy3,
        IdentityId::Homotopy4,
        IdentityId::Homotopy5,
    ];
    pub const SPECIAL: [IdentityId; 2] = [IdentityId::SpecialH, IdentityId::SpecialHPrime];

    pub fn label(self) -> &'static str {
        match self {
            IdentityId::TAfterNorm => "t.N = N",
            IdentityId::NormAfterT => "N.t = N",
            IdentityId::TDiffAfterNorm => "T.N = 0",
            IdentityId::NormAfterTDiff => "N.T = 0",
            IdentityId::JDiff => "j'_x(a) - j_x(a) = x T(a)",
            IdentityId::HDiff => "h'_x(a) - h_x(a) = N(x)N(a) - N(xa)",
            IdentityId::JNormEqual => "j_x.N = j'_x.N",
            IdentityId::THEqual => "T.h_x = T.h'_x",
            IdentityId::MixedEqual => "N.j_x + h_x.T = N.j'_x + h'_x.T",
            IdentityId::NormTimesA2 => "N(x)a = (N.j_x + h_x.T)(a)",
            IdentityId::NormTimesA3 => "N(x)a = (j_x.N + T.h_x)(a)",
            IdentityId::NormTimesA4 => "N(x)a = (N.j'_x + h'_x.T)(a)",
            IdentityId::NormTimesA5 => "N(x)a = (j'_x.N + T.h'_x)(a)",
            IdentityId::Homotopy2 => "(N.j_x + h_x.T)(a) = a",
            IdentityId::Homotopy3 => "(j_x.N + T.h_x)(a) = a",
            IdentityId::Homotopy4 => "(N.j'_x + h'_x.T)(a) = a",
            IdentityId::Homotopy5 => "(j'_x.N + T.h'_x)(a) = a",
            IdentityId::SpecialH => "h_u(a) = -u sum (n-1-j) t^j(a)",
            IdentityId::SpecialHPrime => "h'_u(a) = u sum j t^j(a)",
        }
    }
}

/// Both sides of an identity, evaluated at `(x, a)`.
pub fn identity_sides<R: CyclicRing>(
    r: &R,
    id: IdentityId,
    x: &R::Elem,
    a: &R::Elem,
) -> (R::Elem, R::Elem) {
    match id {
        IdentityId::TAfterNorm => (r.shift(&norm(r, a)), norm(r, a)),
        IdentityId::NormAfterT => (norm(r, &r.shift(a)), norm(r, a)),
        IdentityId::TDiffAfterNorm => (t_op(r, &norm(r, a)), r.zero()),
        IdentityId::NormAfterTDiff => (norm(r, &t_op(r, a)), r.zero()),
        IdentityId::JDiff => (
            r.sub(&j_prime_x(r, x, a), &j_x(r, x, a)),
            r.mul(x, &t_op(r, a)),
        ),
        IdentityId::HDiff => (
            r.sub(&h_prime_x(r, x, a), &h_x(r, x, a)),
            r.sub(
                &r.mul(&norm(r, x), &norm(r, a)),
                &norm(r, &r.mul(x, a)),
            ),
        ),
        IdentityId::JNormEqual => {
            let na = norm(r, a);
            (j_x(r, x, &na), j_prime_x(r, x, &na))
        }
        IdentityId::THEqual => (t_op(r, &h_x(r, x, a)), t_op(r, &h_prime_x(r, x, a))),
        IdentityId::MixedEqual => {
            let ta = t_op(r, a);
            (
                r.add(&norm(r, &j_x(r, x, a)), &h_x(r, x, &ta)),
                r.add(&norm(r, &j_prime_x(r, x, a)), &h_prime_x(r, x, &ta)),
            )
        }
        IdentityId::NormTimesA2 | IdentityId::Homotopy2 => {
            let lhs = r.add(&norm(r, &j_x(r, x, a)), &h_x(r, x, &t_op(r, a)));
            let rhs = if id == IdentityId::Homotopy2 {
                a.clone()
            } else {
                r.mul(&norm(r, x), a)
            };
            (lhs, rhs)
        }
        IdentityId::NormTimesA3 | IdentityId::Homotopy3 => {
            let lhs = r.add(&j_x(r, x, &norm(r, a)), &t_op(r, &h_x(r, x, a)));
            let rhs = if id == IdentityId::Homotopy3 {
                a.clone()
            } else {
                r.mul(&norm(r, x), a)
            };
            (lhs, rhs)
        }
        IdentityId::NormTimesA4 | IdentityId::Homotopy4 => {
            let lhs = r.add(&norm(r, &j_prime_x(r, x, a)), &h_prime_x(r, x, &t_op(r, a)));
            let rhs = if id == IdentityId::Homotopy4 {
                a.clone()
            } else {
                r.mul(&norm(r, x), a)
            };
            (lhs, rhs)
        }
        IdentityId::NormTimesA5 | IdentityId::Homotopy5 => {
            let lhs = r.add(&j_prime_x(r, x, &norm(r, a)), &t_op(r, &h_prime_x(r, x, a)));
            let rhs = if id == IdentityId::Homotopy5 {
                a.clone()
            } else {
                r.mul(&norm(r, x), a)
            };
            (lhs, rhs)
        }
        IdentityId::SpecialH => (h_special(r, x, a), h_x(r, x, a)),
        IdentityId::SpecialHPrime => (h_prime_special(r, x, a), h_prime_x(r, x, a)),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Witness {
    pub identity: String,
    pub inputs: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub witness: Option<Witness>,
}

impl CheckResult {
    pub fn passed(name: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            pass: true,
            witness: None,
        }
    }

    pub fn failed(name: impl Into<String>, witness: Witness) -> Self {
        CheckResult {
            name: name.into(),
            pass: false,
            witness: Some(witness),
        }
    }

    /// Fold per-sample results into one; the first failure (in sample order)
    /// supplies the witness.
    pub fn merge(name: impl Into<String>, results: impl IntoIterator<Item = CheckResult>) -> Self {
        let name = name.into();
        for r in results {
            if !r.pass {
                return CheckResult { name, ..r };
            }
        }
        CheckResult::passed(name)
    }
}

fn run_identities<R: CyclicRing>(
    r: &R,
    name: &str,
    ids: &[IdentityId],
    x: Option<&R::Elem>,
    samples: &[R::Elem],
) -> CheckResult {
    let zero = r.zero();
    let x = x.unwrap_or(&zero);
    for a in samples {
        for &id in ids {
            let (lhs, rhs) = identity_sides(r, id, x, a);
            if lhs != rhs {
                return CheckResult::failed(
                    name,
                    Witness {
                        identity: id.label().to_string(),
                        inputs: format!("x = {}, a = {}", r.fmt_elem(x), r.fmt_elem(a)),
                        lhs: r.fmt_elem(&lhs),
                        rhs: r.fmt_elem(&rhs),
                    },
                );
            }
        }
    }
    CheckResult::passed(name)
}

/// The four composites `t.N = N`, `N.t = N`, `T.N = 0`, `N.T = 0`.
pub fn check_eq1<R: CyclicRing>(r: &R, samples: &[R::Elem]) -> CheckResult {
    run_identities(r, "eq1", &IdentityId::EQ1, None, samples)
}

/// Both pointwise difference identities at a fixed `(x, a)`.
pub fn check_lemma1<R: CyclicRing>(r: &R, x: &R::Elem, a: &R::Elem) -> CheckResult {
    run_identities(
        r,
        "lemma1",
        &IdentityId::LEMMA1,
        Some(x),
        std::slice::from_ref(a),
    )
}

/// The three operator equalities, at fixed `x` over the samples `a`.
pub fn check_corollary1<R: CyclicRing>(r: &R, x: &R::Elem, samples: &[R::Elem]) -> CheckResult {
    run_identities(r, "corollary1", &IdentityId::COROLLARY1, Some(x), samples)
}

/// The four expressions of left multiplication by `N(x)`.
pub fn check_proposition<R: CyclicRing>(r: &R, x: &R::Elem, samples: &[R::Elem]) -> CheckResult {
    run_identities(r, "proposition", &IdentityId::PROPOSITION, Some(x), samples)
}

/// The four homotopy sums equal the identity map; requires `N(x) = 1`.
pub fn check_homotopy<R: CyclicRing>(
    r: &R,
    x: &R::Elem,
    samples: &[R::Elem],
) -> Result<CheckResult> {
    let nx = norm(r, x);
    if nx != r.one() {
        return Err(Error::Precondition(format!(
            "N(x) = {}, expected 1 (x = {})",
            r.fmt_elem(&nx),
            r.fmt_elem(x)
        )));
    }
    Ok(run_identities(
        r,
        "homotopy",
        &IdentityId::HOMOTOPY,
        Some(x),
        samples,
    ))
}

/// Agreement of the closed forms with the general operators at `x = u`,
/// where `n * u = 1`.
pub fn check_special_case<R: CyclicRing>(r: &R, u: &R::Elem, samples: &[R::Elem]) -> CheckResult {
    run_identities(r, "special-case", &IdentityId::SPECIAL, Some(u), samples)
}

/// The identity families provable in the universal ring.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum UniversalCheck {
    Eq1,
    Lemma1,
    Corollary1,
    Proposition,
}

impl UniversalCheck {
    pub const ALL: [UniversalCheck; 4] = [
        UniversalCheck::Eq1,
        UniversalCheck::Lemma1,
        UniversalCheck::Corollary1,
        UniversalCheck::Proposition,
    ];

    pub fn name(self) -> &'static str {
        match self {
            UniversalCheck::Eq1 => "eq1",
            UniversalCheck::Lemma1 => "lemma1",
            UniversalCheck::Corollary1 => "corollary1",
            UniversalCheck::Proposition => "proposition",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "eq1" => Some(UniversalCheck::Eq1),
            "lemma1" => Some(UniversalCheck::Lemma1),
            "corollary1" => Some(UniversalCheck::Corollary1),
            "proposition" => Some(UniversalCheck::Proposition),
            _ => None,
        }
    }

    pub fn identities(self) -> &'static [IdentityId] {
        match self {
            UniversalCheck::Eq1 => &IdentityId::EQ1,
            UniversalCheck::Lemma1 => &IdentityId::LEMMA1,
            UniversalCheck::Corollary1 => &IdentityId::COROLLARY1,
            UniversalCheck::Proposition => &IdentityId::PROPOSITION,
        }
    }
}

/// Run one identity family in `U_n` with generic `x = X`, `a = A`. A pass is
/// a machine proof of the family for every ring with a `Z/n`-action.
pub fn check_universal(n: u32, check: UniversalCheck) -> Result<CheckResult> {
    let u = UniversalRing::new(n)?;
    let x = u.generic_x();
    let a = u.generic_a();
    Ok(run_identities(
        &u,
        check.name(),
        check.identities(),
        Some(&x),
        std::slice::from_ref(&a),
    ))
}

/// The two canonical polynomials of the second lemma identity in `U_n`,
/// used by the CLI to echo both sides.
pub fn lemma1_sides(n: u32) -> Result<(FreePoly, FreePoly)> {
    let u = UniversalRing::new(n)?;
    let x = u.generic_x();
    let a = u.generic_a();
    Ok(identity_sides(&u, IdentityId::HDiff, &x, &a))
}
