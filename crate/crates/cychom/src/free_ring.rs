//! The free noncommutative ring over `Z` on shift-indexed generators.
//!
//! Generators come in two families: `X0..X{n-1}` (the orbit of a generic ring
//! element `X` under the shift) and `A0..A{n-1}` (the orbit of a second
//! generic element `A`, so identities quantified over both `x` and `a` become
//! polynomial identities). The shift automorphism sends index `i` to `i+1`
//! modulo `n`. Specializing `X` and `A` into any ring with a `Z/n`-action is
//! a ring homomorphism commuting with the automorphisms, so a polynomial that
//! vanishes here vanishes everywhere.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::cyclic::CyclicRing;
use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum GenFamily {
    X,
    A,
}

impl GenFamily {
    pub fn symbol(self) -> char {
        match self {
            GenFamily::X => 'X',
            GenFamily::A => 'A',
        }
    }
}

/// A single generator letter; the index is always kept reduced modulo `n`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct GenLetter {
    pub family: GenFamily,
    pub index: u32,
}

impl GenLetter {
    pub fn new(family: GenFamily, index: i64, n: u32) -> Self {
        GenLetter {
            family,
            index: index.rem_euclid(i64::from(n)) as u32,
        }
    }
}

/// A monomial: a finite product of letters. The empty word is the unit.
#[derive(Clone, PartialEq, Eq, Debug, Hash, Default)]
pub struct Word(pub Vec<GenLetter>);

impl Word {
    pub fn unit() -> Self {
        Word(Vec::new())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }
}

// Length-lexicographic, with X0 < ... < X{n-1} < A0 < ... < A{n-1}.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for letter in &self.0 {
            if !first {
                write!(f, ".")?;
            }
            first = false;
            write!(f, "{}{}", letter.family.symbol(), letter.index)?;
        }
        Ok(())
    }
}

/// Exact noncommutative polynomial with arbitrary-precision integer
/// coefficients, in normal form: no stored coefficient is zero, terms are
/// keyed by [`Word`] in canonical order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FreePoly {
    n: u32,
    terms: BTreeMap<Word, BigInt>,
}

impl FreePoly {
    pub fn zero(n: u32) -> Self {
        FreePoly {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: u32) -> Self {
        Self::scalar(n, BigInt::one())
    }

    pub fn scalar(n: u32, c: BigInt) -> Self {
        let mut p = Self::zero(n);
        p.insert_term(Word::unit(), c);
        p
    }

    pub fn generator(family: GenFamily, index: i64, n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidModulus(n));
        }
        let mut p = Self::zero(n);
        p.insert_term(Word(vec![GenLetter::new(family, index, n)]), BigInt::one());
        Ok(p)
    }

    pub fn modulus(&self) -> u32 {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> &BTreeMap<Word, BigInt> {
        &self.terms
    }

    fn insert_term(&mut self, word: Word, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(word);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn checked_add(&self, other: &FreePoly) -> Result<FreePoly> {
        if self.n != other.n {
            return Err(Error::ModulusMismatch(self.n, other.n));
        }
        let mut out = self.clone();
        for (word, coeff) in &other.terms {
            out.insert_term(word.clone(), coeff.clone());
        }
        Ok(out)
    }

    pub fn negated(&self) -> FreePoly {
        FreePoly {
            n: self.n,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }

    pub fn checked_sub(&self, other: &FreePoly) -> Result<FreePoly> {
        self.checked_add(&other.negated())
    }

    pub fn checked_mul(&self, other: &FreePoly) -> Result<FreePoly> {
        if self.n != other.n {
            return Err(Error::ModulusMismatch(self.n, other.n));
        }
        let mut out = FreePoly::zero(self.n);
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                out.insert_term(wa.concat(wb), ca * cb);
            }
        }
        Ok(out)
    }

    /// Apply `t^k`: every letter index `i` becomes `(i + k) mod n`.
    /// A ring automorphism, since it permutes the generators.
    pub fn shifted(&self, k: i64) -> FreePoly {
        let n = i64::from(self.n);
        let k = k.rem_euclid(n);
        FreePoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(w, c)| {
                    let letters = w
                        .0
                        .iter()
                        .map(|l| GenLetter::new(l.family, i64::from(l.index) + k, self.n))
                        .collect();
                    (Word(letters), c.clone())
                })
                .collect(),
        }
    }

    /// Parse the canonical text form, e.g. `1*X0.A1 + -1*X1.A0`; the unit
    /// word prints (and parses) as `1`, the zero polynomial as `0`.
    pub fn parse(input: &str, n: u32) -> Result<FreePoly> {
        if n < 2 {
            return Err(Error::InvalidModulus(n));
        }
        let s = input.trim();
        if s == "0" {
            return Ok(FreePoly::zero(n));
        }
        let mut out = FreePoly::zero(n);
        for term in s.split(" + ") {
            let (coeff_str, word_str) = term
                .split_once('*')
                .ok_or_else(|| Error::Parse(format!("term `{term}` lacks `coeff*word`")))?;
            let coeff: BigInt = coeff_str
                .parse()
                .map_err(|_| Error::Parse(format!("bad coefficient `{coeff_str}`")))?;
            let word = if word_str == "1" {
                Word::unit()
            } else {
                let mut letters = Vec::new();
                for part in word_str.split('.') {
                    let mut chars = part.chars();
                    let family = match chars.next() {
                        Some('X') => GenFamily::X,
                        Some('A') => GenFamily::A,
                        _ => return Err(Error::Parse(format!("bad letter `{part}`"))),
                    };
                    let index: u32 = chars
                        .as_str()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad letter index in `{part}`")))?;
                    if index >= n {
                        return Err(Error::Parse(format!(
                            "letter index {index} out of range for n = {n}"
                        )));
                    }
                    letters.push(GenLetter { family, index });
                }
                Word(letters)
            };
            out.insert_term(word, coeff);
        }
        Ok(out)
    }

    /// The universal specialization: letter `(X, i)` maps to `t^i(x_val)`,
    /// `(A, i)` to `t^i(a_val)`; words to ordered products, coefficients to
    /// integer multiples. Requires `t^n = id` on the specialized values.
    pub fn specialize<R: CyclicRing>(
        &self,
        ring: &R,
        x_val: &R::Elem,
        a_val: &R::Elem,
    ) -> Result<R::Elem> {
        let t_n = |e: &R::Elem| {
            let mut v = e.clone();
            for _ in 0..self.n {
                v = ring.shift(&v);
            }
            v
        };
        let one = ring.one();
        if t_n(x_val) != *x_val || t_n(a_val) != *a_val || t_n(&one) != one {
            return Err(Error::IncompatibleAction(format!(
                "t^{} is not the identity on the target values",
                self.n
            )));
        }
        let mut acc = ring.zero();
        for (word, coeff) in &self.terms {
            let mut prod = ring.one();
            for letter in &word.0 {
                let base = match letter.family {
                    GenFamily::X => x_val,
                    GenFamily::A => a_val,
                };
                let mut value = base.clone();
                for _ in 0..letter.index {
                    value = ring.shift(&value);
                }
                prod = ring.mul(&prod, &value);
            }
            acc = ring.add(&acc, &bigint_mul(ring, coeff, &prod));
        }
        Ok(acc)
    }
}

fn bigint_mul<R: CyclicRing>(ring: &R, c: &BigInt, a: &R::Elem) -> R::Elem {
    let mag = c.magnitude();
    let bits = mag.bits();
    let mut acc = ring.zero();
    let mut base = a.clone();
    for i in 0..bits {
        if mag.bit(i) {
            acc = ring.add(&acc, &base);
        }
        if i + 1 < bits {
            base = ring.add(&base, &base);
        }
    }
    if c.is_negative() {
        ring.neg(&acc)
    } else {
        acc
    }
}

impl fmt::Display for FreePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (word, coeff) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{coeff}*{word}")?;
        }
        Ok(())
    }
}

/// The universal ring `U_n`: the free ring on `X0..X{n-1}, A0..A{n-1}` with
/// the index-shift automorphism. The generic `x` is `X0`, the generic `a`
/// is `A0`.
#[derive(Clone, Copy, Debug)]
pub struct UniversalRing {
    n: u32,
}

impl UniversalRing {
    pub fn new(n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidModulus(n));
        }
        Ok(UniversalRing { n })
    }

    pub fn generic_x(&self) -> FreePoly {
        FreePoly::generator(GenFamily::X, 0, self.n).expect("n validated")
    }

    pub fn generic_a(&self) -> FreePoly {
        FreePoly::generator(GenFamily::A, 0, self.n).expect("n validated")
    }

    pub fn gen(&self, family: GenFamily, index: i64) -> FreePoly {
        FreePoly::generator(family, index, self.n).expect("n validated")
    }
}

impl CyclicRing for UniversalRing {
    type Elem = FreePoly;

    fn order(&self) -> u32 {
        self.n
    }

    fn zero(&self) -> FreePoly {
        FreePoly::zero(self.n)
    }

    fn one(&self) -> FreePoly {
        FreePoly::one(self.n)
    }

    fn add(&self, a: &FreePoly, b: &FreePoly) -> FreePoly {
        a.checked_add(b).expect("same modulus inside UniversalRing")
    }

    fn neg(&self, a: &FreePoly) -> FreePoly {
        a.negated()
    }

    fn mul(&self, a: &FreePoly, b: &FreePoly) -> FreePoly {
        a.checked_mul(b).expect("same modulus inside UniversalRing")
    }

    fn shift(&self, a: &FreePoly) -> FreePoly {
        a.shifted(1)
    }

    fn fmt_elem(&self, a: &FreePoly) -> String {
        a.to_string()
    }
}
