use std::fmt::Debug;

/// A ring together with a ring automorphism `t` satisfying `t^n = id`,
/// for a fixed `n >= 2`.
///
/// Everything in [`crate::operators`] is written against this trait, so the
/// same code path runs both in the universal free ring and in concrete
/// finite rings.
pub trait CyclicRing {
    type Elem: Clone + Eq + Debug;

    /// The order bound `n` of the action (`t^n = id`).
    fn order(&self) -> u32;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// The automorphism `t`.
    fn shift(&self, a: &Self::Elem) -> Self::Elem;
    fn fmt_elem(&self, a: &Self::Elem) -> String;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    /// `t^k`, with `k` reduced modulo `n`.
    fn shift_pow(&self, a: &Self::Elem, k: u32) -> Self::Elem {
        let k = k % self.order();
        let mut out = a.clone();
        for _ in 0..k {
            out = self.shift(&out);
        }
        out
    }

    /// `k * a` as repeated addition (double-and-add).
    fn int_mul(&self, k: i64, a: &Self::Elem) -> Self::Elem {
        let negate = k < 0;
        let mut k = k.unsigned_abs();
        let mut base = a.clone();
        let mut acc = self.zero();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.add(&base, &base);
            }
        }
        if negate {
            self.neg(&acc)
        } else {
            acc
        }
    }
}
