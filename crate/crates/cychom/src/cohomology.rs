//! The two-periodic complex `... -> R -T-> R -N-> R -T-> ...` over a finite
//! ring: kernels and images of `T` and `N` as finite abelian groups, the two
//! alternating quotients with an element-order census, and the effective
//! preimage formulas for invariant and norm-killed elements.
//!
//! The two positive-degree (co)homology groups of the complex are reported
//! by parity position (even: `ker T / im N`, odd: `ker N / im T`) without
//! assigning degree numbers. Degree-0 data (invariants, coinvariants) is
//! informational only.

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use serde::Serialize;

use crate::cyclic::CyclicRing;
use crate::error::{Error, Result};
use crate::linalg;
use crate::operators;
use crate::rings::{RingElement, RingInstance};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AddOp {
    T,
    N,
}

impl AddOp {
    pub fn label(self) -> &'static str {
        match self {
            AddOp::T => "T",
            AddOp::N => "N",
        }
    }

    pub fn apply(self, ring: &RingInstance, a: &RingElement) -> RingElement {
        match self {
            AddOp::T => operators::t_op(ring, a),
            AddOp::N => operators::norm(ring, a),
        }
    }
}

/// An additive subgroup of a finite ring, held as its full sorted member set.
#[derive(Clone, Debug)]
pub struct SubgroupDescriptor {
    pub order: usize,
    pub members: Vec<RingElement>,
}

impl SubgroupDescriptor {
    fn from_set(set: BTreeSet<RingElement>) -> Self {
        SubgroupDescriptor {
            order: set.len(),
            members: set.into_iter().collect(),
        }
    }

    pub fn contains(&self, e: &RingElement) -> bool {
        self.members.binary_search(e).is_ok()
    }
}

fn closure(ring: &RingInstance, gens: &[RingElement], cap: usize) -> Result<BTreeSet<RingElement>> {
    let mut set = BTreeSet::new();
    set.insert(ring.zero());
    let mut stack = vec![ring.zero()];
    while let Some(v) = stack.pop() {
        for g in gens {
            let w = ring.add(&v, g);
            if set.insert(w.clone()) {
                if set.len() > cap {
                    return Err(Error::TooLarge {
                        size: ring.size(),
                        cap,
                    });
                }
                stack.push(w);
            }
        }
    }
    Ok(set)
}

/// Kernel of `T` or `N`: linear algebra over `Z/m` for module-structured
/// kinds, enumeration for table rings.
pub fn kernel(ring: &RingInstance, op: AddOp, cap: usize) -> Result<SubgroupDescriptor> {
    if let Some((m, _)) = ring.module_params() {
        let matrix = ring
            .additive_matrix(|a| op.apply(ring, a))
            .expect("module backend");
        let gens: Vec<RingElement> = linalg::kernel_gens_mod(&matrix, m)
            .into_iter()
            .map(RingElement::Coords)
            .collect();
        Ok(SubgroupDescriptor::from_set(closure(ring, &gens, cap)?))
    } else {
        kernel_enumerated(ring, op, cap)
    }
}

/// Image of `T` or `N`, by the same dual strategy.
pub fn image(ring: &RingInstance, op: AddOp, cap: usize) -> Result<SubgroupDescriptor> {
    if let Some((_, dim)) = ring.module_params() {
        let gens: Vec<RingElement> = (0..dim)
            .map(|i| {
                let mut basis = vec![0u64; dim];
                basis[i] = 1;
                op.apply(ring, &RingElement::Coords(basis))
            })
            .collect();
        Ok(SubgroupDescriptor::from_set(closure(ring, &gens, cap)?))
    } else {
        image_enumerated(ring, op, cap)
    }
}

/// Enumeration path; also the oracle the linear path is checked against.
pub fn kernel_enumerated(
    ring: &RingInstance,
    op: AddOp,
    cap: usize,
) -> Result<SubgroupDescriptor> {
    let zero = ring.zero();
    let set: BTreeSet<RingElement> = ring
        .enumerate(cap)?
        .into_iter()
        .filter(|a| op.apply(ring, a) == zero)
        .collect();
    Ok(SubgroupDescriptor::from_set(set))
}

pub fn image_enumerated(ring: &RingInstance, op: AddOp, cap: usize) -> Result<SubgroupDescriptor> {
    let set: BTreeSet<RingElement> = ring
        .enumerate(cap)?
        .into_iter()
        .map(|a| op.apply(ring, &a))
        .collect();
    Ok(SubgroupDescriptor::from_set(set))
}

/// Order and element-order census of one quotient `ker / im`.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct QuotientInfo {
    pub order: usize,
    /// coset order -> number of cosets of that order
    pub census: BTreeMap<u64, usize>,
}

fn quotient_info(
    ring: &RingInstance,
    ker: &SubgroupDescriptor,
    im: &SubgroupDescriptor,
    what: &str,
) -> Result<QuotientInfo> {
    for e in &im.members {
        if !ker.contains(e) {
            return Err(Error::Inconsistency(format!(
                "{what}: image element {} is not in the kernel (complex property violated)",
                ring.fmt_elem(e)
            )));
        }
    }
    let im_set: BTreeSet<&RingElement> = im.members.iter().collect();
    let mut covered: BTreeSet<RingElement> = BTreeSet::new();
    let mut census: BTreeMap<u64, usize> = BTreeMap::new();
    let mut order = 0usize;
    for k in &ker.members {
        if covered.contains(k) {
            continue;
        }
        order += 1;
        for i in &im.members {
            covered.insert(ring.add(k, i));
        }
        // additive order of the coset of k
        let mut acc = k.clone();
        let mut e: u64 = 1;
        while !im_set.contains(&acc) {
            acc = ring.add(&acc, k);
            e += 1;
        }
        *census.entry(e).or_insert(0) += 1;
    }
    Ok(QuotientInfo { order, census })
}

/// The periodic-complex report for one finite ring.
#[derive(Clone, Debug)]
pub struct TateReport {
    /// `ker T / im N`
    pub even_quotient: QuotientInfo,
    /// `ker N / im T`
    pub odd_quotient: QuotientInfo,
    pub norm_one: Option<RingElement>,
    /// `|ker T|` (the invariant subring), informational
    pub invariants_order: usize,
    /// `|R| / |im T|` (coinvariants), informational
    pub coinvariants_order: usize,
}

pub fn tate_quotients(ring: &RingInstance, cap: usize) -> Result<TateReport> {
    let ker_t = kernel(ring, AddOp::T, cap)?;
    let im_n = image(ring, AddOp::N, cap)?;
    let ker_n = kernel(ring, AddOp::N, cap)?;
    let im_t = image(ring, AddOp::T, cap)?;
    let even_quotient = quotient_info(ring, &ker_t, &im_n, "ker T / im N")?;
    let odd_quotient = quotient_info(ring, &ker_n, &im_t, "ker N / im T")?;
    let size = ring.size() as usize;
    Ok(TateReport {
        even_quotient,
        odd_quotient,
        norm_one: ring.find_norm_one(),
        invariants_order: ker_t.order,
        coinvariants_order: size / im_t.order,
    })
}

/// Effective norm preimage: for `N(x) = 1` and invariant `a`, the element
/// `xa` satisfies `N(xa) = a`. The defining equation is re-verified before
/// returning.
pub fn norm_preimage(
    ring: &RingInstance,
    x: &RingElement,
    a: &RingElement,
) -> Result<RingElement> {
    require_norm_one(ring, x)?;
    let ta = operators::t_op(ring, a);
    if !ring.is_zero(&ta) {
        return Err(Error::Precondition(format!(
            "a = {} is not t-invariant: T(a) = {}",
            ring.fmt_elem(a),
            ring.fmt_elem(&ta)
        )));
    }
    let preimage = ring.mul(x, a);
    let back = operators::norm(ring, &preimage);
    if back != *a {
        return Err(Error::Inconsistency(format!(
            "N({}) = {} differs from a = {}",
            ring.fmt_elem(&preimage),
            ring.fmt_elem(&back),
            ring.fmt_elem(a)
        )));
    }
    Ok(preimage)
}

/// Effective `T`-preimages: for `N(x) = 1` and `N(a) = 0`, both `h_x(a)` and
/// `h'_x(a)` map to `a` under `T`. Both are returned (they generally differ
/// as elements) and both are re-verified.
pub fn t_preimage(
    ring: &RingInstance,
    x: &RingElement,
    a: &RingElement,
) -> Result<(RingElement, RingElement)> {
    require_norm_one(ring, x)?;
    let na = operators::norm(ring, a);
    if !ring.is_zero(&na) {
        return Err(Error::Precondition(format!(
            "a = {} is not killed by the norm: N(a) = {}",
            ring.fmt_elem(a),
            ring.fmt_elem(&na)
        )));
    }
    let first = operators::h_x(ring, x, a);
    let second = operators::h_prime_x(ring, x, a);
    for cand in [&first, &second] {
        let back = operators::t_op(ring, cand);
        if back != *a {
            return Err(Error::Inconsistency(format!(
                "T({}) = {} differs from a = {}",
                ring.fmt_elem(cand),
                ring.fmt_elem(&back),
                ring.fmt_elem(a)
            )));
        }
    }
    Ok((first, second))
}

fn require_norm_one(ring: &RingInstance, x: &RingElement) -> Result<()> {
    let nx = operators::norm(ring, x);
    if nx != ring.one() {
        return Err(Error::Precondition(format!(
            "N(x) = {}, expected 1 (x = {})",
            ring.fmt_elem(&nx),
            ring.fmt_elem(x)
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::{build_ring, RingSpec};

    const CAP: usize = 65536;

    fn modular(m: u64, n: u32) -> RingInstance {
        build_ring(RingSpec::ModularTrivial { m, n }).unwrap()
    }

    fn product(m: u64, k: u32) -> RingInstance {
        build_ring(RingSpec::CyclicProduct { m, k, n: k }).unwrap()
    }

    fn shown(ring: &RingInstance, g: &SubgroupDescriptor) -> Vec<String> {
        g.members.iter().map(|e| ring.fmt_elem(e)).collect()
    }

    #[test]
    fn z4_trivial_kernels_and_images() {
        let r = modular(4, 2);
        assert_eq!(shown(&r, &kernel(&r, AddOp::T, CAP).unwrap()), ["0", "1", "2", "3"]);
        assert_eq!(shown(&r, &kernel(&r, AddOp::N, CAP).unwrap()), ["0", "2"]);
        assert_eq!(shown(&r, &image(&r, AddOp::N, CAP).unwrap()), ["0", "2"]);
        assert_eq!(shown(&r, &image(&r, AddOp::T, CAP).unwrap()), ["0"]);
    }

    #[test]
    fn z2_squared_swap_kernels_and_images() {
        let r = product(2, 2);
        assert_eq!(
            shown(&r, &kernel(&r, AddOp::T, CAP).unwrap()),
            ["(0,0)", "(1,1)"]
        );
        assert_eq!(
            shown(&r, &image(&r, AddOp::N, CAP).unwrap()),
            ["(0,0)", "(1,1)"]
        );
    }

    #[test]
    fn linear_and_enumerated_paths_agree() {
        let specs = vec![
            RingSpec::ModularTrivial { m: 4, n: 2 },
            RingSpec::ModularTrivial { m: 12, n: 4 },
            RingSpec::CyclicProduct { m: 3, k: 3, n: 3 },
            RingSpec::CyclicProduct { m: 4, k: 2, n: 2 },
            RingSpec::GaussianConj { m: 5, n: 2 },
            RingSpec::GaussianConj { m: 4, n: 2 },
            RingSpec::MatrixPermConj {
                m: 2,
                k: 2,
                sigma: vec![1, 0],
                n: 2,
            },
        ];
        for spec in specs {
            let r = build_ring(spec).unwrap();
            for op in [AddOp::T, AddOp::N] {
                let lin_k = kernel(&r, op, CAP).unwrap();
                let enu_k = kernel_enumerated(&r, op, CAP).unwrap();
                assert_eq!(lin_k.members, enu_k.members, "kernel {op:?} {}", r.describe());
                let lin_i = image(&r, op, CAP).unwrap();
                let enu_i = image_enumerated(&r, op, CAP).unwrap();
                assert_eq!(lin_i.members, enu_i.members, "image {op:?} {}", r.describe());
            }
        }
    }

    #[test]
    fn z4_trivial_nonvanishing_negative_control() {
        let r = modular(4, 2);
        let report = tate_quotients(&r, CAP).unwrap();
        assert_eq!(report.even_quotient.order, 2);
        assert_eq!(report.odd_quotient.order, 2);
        assert!(report.norm_one.is_none());
        assert_eq!(report.invariants_order, 4);
        assert_eq!(report.coinvariants_order, 4);
    }

    #[test]
    fn z2_squared_swap_vanishes() {
        let r = product(2, 2);
        let report = tate_quotients(&r, CAP).unwrap();
        assert_eq!(report.even_quotient.order, 1);
        assert_eq!(report.odd_quotient.order, 1);
        let x = report.norm_one.expect("x = (1,0)");
        assert_eq!(operators::norm(&r, &x), r.one());
    }

    #[test]
    fn z5_trivial_vanishes_with_witness_3() {
        let r = modular(5, 2);
        let report = tate_quotients(&r, CAP).unwrap();
        assert_eq!(report.even_quotient.order, 1);
        assert_eq!(report.odd_quotient.order, 1);
        assert_eq!(r.fmt_elem(&report.norm_one.unwrap()), "3");
    }

    #[test]
    fn census_sums_to_order() {
        let r = modular(12, 4); // T = 0, N = 4x mod 12: quotients are nontrivial
        let report = tate_quotients(&r, CAP).unwrap();
        for q in [&report.even_quotient, &report.odd_quotient] {
            assert_eq!(q.census.values().sum::<usize>(), q.order);
        }
    }

    #[test]
    fn norm_preimage_examples() {
        let r = product(2, 2);
        let x = r.parse_element("(1,0)").unwrap();
        let a = r.parse_element("(1,1)").unwrap();
        let pre = norm_preimage(&r, &x, &a).unwrap();
        assert_eq!(r.fmt_elem(&pre), "(1,0)");

        let r5 = modular(5, 2);
        let x5 = r5.parse_element("3").unwrap();
        let a5 = r5.parse_element("2").unwrap();
        let pre5 = norm_preimage(&r5, &x5, &a5).unwrap();
        assert_eq!(r5.fmt_elem(&pre5), "1");
    }

    #[test]
    fn norm_preimage_rejects_non_invariant_a() {
        let r = product(2, 2);
        let x = r.parse_element("(1,0)").unwrap();
        let a = r.parse_element("(1,0)").unwrap(); // not invariant under swap
        assert!(matches!(
            norm_preimage(&r, &x, &a),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn t_preimage_example() {
        let r = product(2, 2);
        let x = r.parse_element("(1,0)").unwrap();
        let a = r.parse_element("(1,1)").unwrap(); // N(a) = (0,0)
        let (h, hp) = t_preimage(&r, &x, &a).unwrap();
        assert_eq!(r.fmt_elem(&h), "(0,1)");
        assert_eq!(operators::t_op(&r, &h), a);
        assert_eq!(operators::t_op(&r, &hp), a);
    }

    #[test]
    fn t_preimage_rejects_non_norm_killed_a() {
        let r = product(2, 2);
        let x = r.parse_element("(1,0)").unwrap();
        let a = r.parse_element("(1,0)").unwrap(); // N(a) = (1,1) != 0
        assert!(matches!(
            t_preimage(&r, &x, &a),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn t_preimage_components_can_differ() {
        // Exhaustive scan on (Z/3)^3 finds a with h_x(a) != h'_x(a),
        // while both are preimages of a under T.
        let r = product(3, 3);
        let x = r.find_norm_one().unwrap();
        let zero = r.zero();
        let mut found_differing = false;
        for a in r.enumerate(CAP).unwrap() {
            if operators::norm(&r, &a) != zero {
                continue;
            }
            let (h, hp) = t_preimage(&r, &x, &a).unwrap();
            if h != hp {
                found_differing = true;
            }
        }
        assert!(found_differing);
    }
}
