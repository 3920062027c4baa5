//! Concrete finite rings with order-`n` automorphisms.
//!
//! Structured kinds (modular, cyclic product, Gaussian quotient, matrix with
//! permutation conjugation) carry a free `Z/m`-module structure, so additive
//! endomorphisms like `T` and `N` reduce to integer matrices and norm-one
//! search becomes a linear solve. Table rings are fully user-defined and
//! validated law by law on load.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cyclic::CyclicRing;
use crate::error::{Error, Result};
use crate::linalg;
use crate::operators;

/// Exhaustive checking threshold: rings at most this large are verified on
/// every element (or every pair, subject to [`PAIR_EVAL_CAP`]).
pub const EXHAUSTIVE_CAP: u128 = 4096;
/// Default enumeration cap for kernel/image and zoo computations.
pub const DEFAULT_ENUMERATE_CAP: usize = 65536;
/// Fixed default seed for the sampling generator (reports record it).
pub const DEFAULT_SEED: u64 = 0x5EED;
/// Sample count used when a ring is too large to enumerate.
pub const SAMPLE_COUNT: usize = 1000;
/// Cap on exhaustive pair checks.
pub const PAIR_EVAL_CAP: u128 = 1_000_000;
/// Table rings up to this many elements are validated on all triples.
pub const TOTAL_VALIDATION_CAP: u128 = 64;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum RingSpec {
    /// `Z/m` with the trivial action, any `n >= 2`.
    ModularTrivial { m: u64, n: u32 },
    /// `(Z/m)^k` with componentwise operations and the cyclic coordinate
    /// shift; `k` must divide `n`.
    CyclicProduct { m: u64, k: u32, n: u32 },
    /// `Z[i]/m` with complex conjugation; `n` must be even.
    GaussianConj { m: u64, n: u32 },
    /// `k x k` matrices over `Z/m` with conjugation by the permutation
    /// matrix of `sigma`; the order of `sigma` must divide `n`.
    MatrixPermConj {
        m: u64,
        k: u32,
        sigma: Vec<usize>,
        n: u32,
    },
    /// Fully tabulated ring: element names, addition and multiplication
    /// tables, and the automorphism as an index permutation.
    Table {
        n: u32,
        elements: Vec<String>,
        add: Vec<Vec<usize>>,
        mul: Vec<Vec<usize>>,
        t: Vec<usize>,
    },
}

impl RingSpec {
    pub fn describe(&self) -> String {
        match self {
            RingSpec::ModularTrivial { m, n } => format!("modular_trivial m={m} n={n}"),
            RingSpec::CyclicProduct { m, k, n } => format!("cyclic_product m={m} k={k} n={n}"),
            RingSpec::GaussianConj { m, n } => format!("gaussian_conj m={m} n={n}"),
            RingSpec::MatrixPermConj { m, k, sigma, n } => {
                format!("matrix_perm_conj m={m} k={k} sigma={sigma:?} n={n}")
            }
            RingSpec::Table { n, elements, .. } => {
                format!("table |R|={} n={n}", elements.len())
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum ModuleOp {
    Trivial,
    Shift,
    Gaussian,
    Matrix,
}

#[derive(Clone, Debug)]
enum Backend {
    Module {
        m: u64,
        dim: usize,
        op: ModuleOp,
        /// Matrix side length (Matrix kind) or arity (Shift kind); 0 otherwise.
        k: usize,
        sigma_inv: Vec<usize>,
    },
    Table {
        names: Vec<String>,
        add: Vec<Vec<usize>>,
        mul: Vec<Vec<usize>>,
        neg: Vec<usize>,
        taut: Vec<usize>,
        zero: usize,
        one: usize,
    },
}

/// A ring element; comparison order is the canonical enumeration order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum RingElement {
    Coords(Vec<u64>),
    Table(usize),
}

#[derive(Clone, Debug)]
pub struct RingInstance {
    spec: RingSpec,
    n: u32,
    backend: Backend,
}

fn permutation_order(sigma: &[usize]) -> u64 {
    let mut seen = vec![false; sigma.len()];
    let mut order: u64 = 1;
    for start in 0..sigma.len() {
        if seen[start] {
            continue;
        }
        let mut len: u64 = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = sigma[i];
            len += 1;
        }
        order = num_integer::lcm(order, len);
    }
    order
}

fn check_permutation(sigma: &[usize], len: usize, what: &str) -> Result<()> {
    if sigma.len() != len {
        return Err(Error::SpecValidation(format!(
            "{what} has length {}, expected {len}",
            sigma.len()
        )));
    }
    let mut seen = vec![false; len];
    for &v in sigma {
        if v >= len || seen[v] {
            return Err(Error::SpecValidation(format!(
                "{what} is not a permutation of 0..{len}"
            )));
        }
        seen[v] = true;
    }
    Ok(())
}

fn invert_permutation(sigma: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; sigma.len()];
    for (i, &v) in sigma.iter().enumerate() {
        inv[v] = i;
    }
    inv
}

/// Build a ring and validate ring/automorphism laws on a deterministic
/// sample (total up to [`TOTAL_VALIDATION_CAP`] elements).
pub fn build_ring(spec: RingSpec) -> Result<RingInstance> {
    let ring = build_ring_unchecked(spec)?;
    ring.validate()?;
    Ok(ring)
}

/// Structural assembly only — no law validation. Exists so tests can build
/// deliberately broken table rings as negative controls.
pub fn build_ring_unchecked(spec: RingSpec) -> Result<RingInstance> {
    let backend = match &spec {
        RingSpec::ModularTrivial { m, n } => {
            check_params(*m, *n)?;
            Backend::Module {
                m: *m,
                dim: 1,
                op: ModuleOp::Trivial,
                k: 0,
                sigma_inv: vec![],
            }
        }
        RingSpec::CyclicProduct { m, k, n } => {
            check_params(*m, *n)?;
            if *k == 0 || n % k != 0 {
                return Err(Error::SpecValidation(format!(
                    "cyclic_product arity k={k} must divide n={n}"
                )));
            }
            Backend::Module {
                m: *m,
                dim: *k as usize,
                op: ModuleOp::Shift,
                k: *k as usize,
                sigma_inv: vec![],
            }
        }
        RingSpec::GaussianConj { m, n } => {
            check_params(*m, *n)?;
            if n % 2 != 0 {
                return Err(Error::SpecValidation(format!(
                    "gaussian_conj needs even n, got n={n}"
                )));
            }
            Backend::Module {
                m: *m,
                dim: 2,
                op: ModuleOp::Gaussian,
                k: 0,
                sigma_inv: vec![],
            }
        }
        RingSpec::MatrixPermConj { m, k, sigma, n } => {
            check_params(*m, *n)?;
            let k = *k as usize;
            check_permutation(sigma, k, "sigma")?;
            let order = permutation_order(sigma);
            if u64::from(*n) % order != 0 {
                return Err(Error::SpecValidation(format!(
                    "sigma has order {order}, which does not divide n={n}"
                )));
            }
            Backend::Module {
                m: *m,
                dim: k * k,
                op: ModuleOp::Matrix,
                k,
                sigma_inv: invert_permutation(sigma),
            }
        }
        RingSpec::Table {
            n,
            elements,
            add,
            mul,
            t,
        } => {
            if *n < 2 {
                return Err(Error::InvalidModulus(*n));
            }
            let size = elements.len();
            if size == 0 {
                return Err(Error::SpecValidation("empty element list".into()));
            }
            let check_table = |tbl: &Vec<Vec<usize>>, what: &str| -> Result<()> {
                if tbl.len() != size || tbl.iter().any(|row| row.len() != size) {
                    return Err(Error::SpecValidation(format!(
                        "{what} table is not {size}x{size}"
                    )));
                }
                if tbl.iter().flatten().any(|&v| v >= size) {
                    return Err(Error::SpecValidation(format!(
                        "{what} table has an index out of range"
                    )));
                }
                Ok(())
            };
            check_table(add, "add")?;
            check_table(mul, "mul")?;
            check_permutation(t, size, "t")?;
            let zero = (0..size)
                .find(|&z| (0..size).all(|x| add[z][x] == x && add[x][z] == x))
                .ok_or_else(|| Error::SpecValidation("no additive identity".into()))?;
            let one = (0..size)
                .find(|&u| (0..size).all(|x| mul[u][x] == x && mul[x][u] == x))
                .ok_or_else(|| Error::SpecValidation("no multiplicative identity".into()))?;
            let neg = (0..size)
                .map(|x| {
                    (0..size)
                        .find(|&y| add[x][y] == zero)
                        .ok_or_else(|| {
                            Error::SpecValidation(format!(
                                "element {} has no additive inverse",
                                elements[x]
                            ))
                        })
                })
                .collect::<Result<Vec<_>>>()?;
            Backend::Table {
                names: elements.clone(),
                add: add.clone(),
                mul: mul.clone(),
                neg,
                taut: t.clone(),
                zero,
                one,
            }
        }
    };
    let n = match &spec {
        RingSpec::ModularTrivial { n, .. }
        | RingSpec::CyclicProduct { n, .. }
        | RingSpec::GaussianConj { n, .. }
        | RingSpec::MatrixPermConj { n, .. }
        | RingSpec::Table { n, .. } => *n,
    };
    Ok(RingInstance { spec, n, backend })
}

fn check_params(m: u64, n: u32) -> Result<()> {
    if m < 2 {
        return Err(Error::SpecValidation(format!("modulus m={m} must be >= 2")));
    }
    if m > (1 << 31) {
        return Err(Error::SpecValidation(format!(
            "modulus m={m} exceeds the supported bound 2^31"
        )));
    }
    if n < 2 {
        return Err(Error::InvalidModulus(n));
    }
    Ok(())
}

pub fn load_spec(path: &std::path::Path) -> Result<RingSpec> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

impl RingInstance {
    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }

    pub fn describe(&self) -> String {
        self.spec.describe()
    }

    pub fn size(&self) -> u128 {
        match &self.backend {
            Backend::Module { m, dim, .. } => u128::from(*m).pow(*dim as u32),
            Backend::Table { names, .. } => names.len() as u128,
        }
    }

    pub fn module_params(&self) -> Option<(u64, usize)> {
        match &self.backend {
            Backend::Module { m, dim, .. } => Some((*m, *dim)),
            Backend::Table { .. } => None,
        }
    }

    fn element_at(&self, idx: u128) -> RingElement {
        match &self.backend {
            Backend::Module { m, dim, .. } => {
                let mut coords = vec![0u64; *dim];
                let mut rest = idx;
                for c in coords.iter_mut().rev() {
                    *c = (rest % u128::from(*m)) as u64;
                    rest /= u128::from(*m);
                }
                RingElement::Coords(coords)
            }
            Backend::Table { .. } => RingElement::Table(idx as usize),
        }
    }

    /// Every element exactly once, in canonical (lexicographic) order.
    pub fn enumerate(&self, cap: usize) -> Result<Vec<RingElement>> {
        let size = self.size();
        if size > cap as u128 {
            return Err(Error::TooLarge { size, cap });
        }
        Ok((0..size).map(|i| self.element_at(i)).collect())
    }

    pub fn random_element(&self, rng: &mut impl Rng) -> RingElement {
        match &self.backend {
            Backend::Module { m, dim, .. } => {
                RingElement::Coords((0..*dim).map(|_| rng.gen_range(0..*m)).collect())
            }
            Backend::Table { names, .. } => RingElement::Table(rng.gen_range(0..names.len())),
        }
    }

    fn coords<'a>(&self, e: &'a RingElement) -> &'a [u64] {
        match e {
            RingElement::Coords(v) => v,
            RingElement::Table(_) => panic!("table element in module ring"),
        }
    }

    /// Matrix of an additive endomorphism in the standard `Z/m`-module
    /// basis (columns are images of basis vectors). `None` for table rings.
    pub fn additive_matrix(
        &self,
        f: impl Fn(&RingElement) -> RingElement,
    ) -> Option<Vec<Vec<i128>>> {
        let (_, dim) = self.module_params()?;
        let mut cols = Vec::with_capacity(dim);
        for i in 0..dim {
            let mut basis = vec![0u64; dim];
            basis[i] = 1;
            let image = f(&RingElement::Coords(basis));
            cols.push(self.coords(&image).to_vec());
        }
        Some(
            (0..dim)
                .map(|r| (0..dim).map(|c| i128::from(cols[c][r])).collect())
                .collect(),
        )
    }

    /// Some `x` with `N(x) = 1`, or `None` if provably none exists.
    /// Linear solve for module-structured kinds, exhaustive search for
    /// table rings.
    pub fn find_norm_one(&self) -> Option<RingElement> {
        match &self.backend {
            Backend::Module { m, .. } => {
                let matrix = self
                    .additive_matrix(|a| operators::norm(self, a))
                    .expect("module backend");
                let one = self.one();
                let target: Vec<i128> =
                    self.coords(&one).iter().map(|&v| i128::from(v)).collect();
                let x = linalg::solve_mod(&matrix, &target, *m)?;
                let candidate = RingElement::Coords(x);
                debug_assert_eq!(operators::norm(self, &candidate), one);
                Some(candidate)
            }
            Backend::Table { names, .. } => {
                let one = self.one();
                (0..names.len())
                    .map(RingElement::Table)
                    .find(|x| operators::norm(self, x) == one)
            }
        }
    }

    /// Exhaustive search for a norm-one element; the oracle the linear path
    /// is cross-checked against.
    pub fn find_norm_one_exhaustive(&self, cap: usize) -> Result<Option<RingElement>> {
        let one = self.one();
        Ok(self
            .enumerate(cap)?
            .into_iter()
            .find(|x| operators::norm(self, x) == one))
    }

    /// The element `u` with `n * u = 1`, if `n` is invertible in the ring.
    pub fn find_n_inverse(&self) -> Option<RingElement> {
        let n = i64::from(self.n);
        match &self.backend {
            Backend::Module { m, .. } => {
                let matrix = self
                    .additive_matrix(|a| self.int_mul(n, a))
                    .expect("module backend");
                let one = self.one();
                let target: Vec<i128> =
                    self.coords(&one).iter().map(|&v| i128::from(v)).collect();
                let u = linalg::solve_mod(&matrix, &target, *m)?;
                Some(RingElement::Coords(u))
            }
            Backend::Table { names, .. } => {
                let one = self.one();
                (0..names.len())
                    .map(RingElement::Table)
                    .find(|u| self.int_mul(n, u) == one)
            }
        }
    }

    pub fn parse_element(&self, s: &str) -> Result<RingElement> {
        let s = s.trim();
        match &self.backend {
            Backend::Module { m, dim, op, k, .. } => {
                let parse_res = |txt: &str| -> Result<u64> {
                    txt.trim()
                        .parse::<u64>()
                        .map(|v| v % m)
                        .map_err(|_| Error::Parse(format!("bad residue `{txt}`")))
                };
                match op {
                    ModuleOp::Trivial => Ok(RingElement::Coords(vec![parse_res(s)?])),
                    ModuleOp::Shift => {
                        let inner = s
                            .strip_prefix('(')
                            .and_then(|r| r.strip_suffix(')'))
                            .ok_or_else(|| {
                                Error::Parse(format!("expected `(c0,...,c{})`", dim - 1))
                            })?;
                        let coords = inner
                            .split(',')
                            .map(parse_res)
                            .collect::<Result<Vec<_>>>()?;
                        if coords.len() != *dim {
                            return Err(Error::Parse(format!(
                                "expected {dim} coordinates, got {}",
                                coords.len()
                            )));
                        }
                        Ok(RingElement::Coords(coords))
                    }
                    ModuleOp::Gaussian => {
                        // `a` or `a+bi`
                        if let Some(re) = s.strip_suffix('i') {
                            let (a, b) = re.rsplit_once('+').ok_or_else(|| {
                                Error::Parse(format!("expected `a+bi`, got `{s}`"))
                            })?;
                            Ok(RingElement::Coords(vec![parse_res(a)?, parse_res(b)?]))
                        } else {
                            Ok(RingElement::Coords(vec![parse_res(s)?, 0]))
                        }
                    }
                    ModuleOp::Matrix => {
                        let rows: Vec<Vec<u64>> = serde_json::from_str(s).map_err(|_| {
                            Error::Parse(format!("expected `[[..],..]` matrix, got `{s}`"))
                        })?;
                        if rows.len() != *k || rows.iter().any(|r| r.len() != *k) {
                            return Err(Error::Parse(format!("expected a {k}x{k} matrix")));
                        }
                        Ok(RingElement::Coords(
                            rows.into_iter().flatten().map(|v| v % m).collect(),
                        ))
                    }
                }
            }
            Backend::Table { names, .. } => names
                .iter()
                .position(|name| name == s)
                .map(RingElement::Table)
                .ok_or_else(|| Error::Parse(format!("unknown table element `{s}`"))),
        }
    }

    /// Deterministic sample per the fixed policy: exhaustive at or below
    /// [`EXHAUSTIVE_CAP`], otherwise seeded random draws.
    pub fn sample_elements(&self, policy: SamplePolicy) -> Vec<RingElement> {
        match policy {
            SamplePolicy::Exhaustive => self
                .enumerate(EXHAUSTIVE_CAP as usize)
                .expect("policy picked exhaustively only under the cap"),
            SamplePolicy::Random { seed, count } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                (0..count).map(|_| self.random_element(&mut rng)).collect()
            }
        }
    }

    pub fn sample_pairs(&self, policy: SamplePolicy) -> Vec<(RingElement, RingElement)> {
        match policy {
            SamplePolicy::Exhaustive => {
                let elems = self.sample_elements(policy);
                elems
                    .iter()
                    .flat_map(|x| elems.iter().map(move |a| (x.clone(), a.clone())))
                    .collect()
            }
            SamplePolicy::Random { seed, count } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                (0..count)
                    .map(|_| (self.random_element(&mut rng), self.random_element(&mut rng)))
                    .collect()
            }
        }
    }

    /// Law validation: automorphism order on the whole element sample, ring
    /// axioms and multiplicativity of `t` totally for small rings, on seeded
    /// samples beyond.
    pub fn validate(&self) -> Result<()> {
        let size = self.size();
        let elems: Vec<RingElement> = if size <= EXHAUSTIVE_CAP {
            self.enumerate(EXHAUSTIVE_CAP as usize)?
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
            (0..SAMPLE_COUNT)
                .map(|_| self.random_element(&mut rng))
                .collect()
        };
        for a in &elems {
            if self.shift_pow(a, 0) != *a || self.shift_pow_exact(a, self.n) != *a {
                return Err(Error::SpecValidation(format!(
                    "t^{} is not the identity at {}",
                    self.n,
                    self.fmt_elem(a)
                )));
            }
        }
        let zero = self.zero();
        let one = self.one();
        if self.shift(&zero) != zero || self.shift(&one) != one {
            return Err(Error::SpecValidation("t does not fix 0 and 1".into()));
        }

        let triples: Vec<(RingElement, RingElement, RingElement)> = if size
            <= TOTAL_VALIDATION_CAP
        {
            let mut all = Vec::with_capacity(elems.len().pow(3));
            for a in &elems {
                for b in &elems {
                    for c in &elems {
                        all.push((a.clone(), b.clone(), c.clone()));
                    }
                }
            }
            all
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED ^ 1);
            (0..SAMPLE_COUNT)
                .map(|_| {
                    (
                        self.random_element(&mut rng),
                        self.random_element(&mut rng),
                        self.random_element(&mut rng),
                    )
                })
                .collect()
        };
        for (a, b, c) in &triples {
            let law_failed = |law: &str| {
                Err(Error::SpecValidation(format!(
                    "{law} fails at a={}, b={}, c={}",
                    self.fmt_elem(a),
                    self.fmt_elem(b),
                    self.fmt_elem(c)
                )))
            };
            if self.add(&self.add(a, b), c) != self.add(a, &self.add(b, c)) {
                return law_failed("additive associativity");
            }
            if self.add(a, b) != self.add(b, a) {
                return law_failed("additive commutativity");
            }
            if self.add(a, &self.neg(a)) != zero {
                return law_failed("additive inverse");
            }
            if self.mul(&self.mul(a, b), c) != self.mul(a, &self.mul(b, c)) {
                return law_failed("multiplicative associativity");
            }
            if self.mul(a, &self.add(b, c)) != self.add(&self.mul(a, b), &self.mul(a, c)) {
                return law_failed("left distributivity");
            }
            if self.mul(&self.add(a, b), c) != self.add(&self.mul(a, c), &self.mul(b, c)) {
                return law_failed("right distributivity");
            }
            if self.mul(a, &one) != *a || self.mul(&one, a) != *a {
                return law_failed("unit law");
            }
            if self.shift(&self.add(a, b)) != self.add(&self.shift(a), &self.shift(b)) {
                return law_failed("t additivity");
            }
            if self.shift(&self.mul(a, b)) != self.mul(&self.shift(a), &self.shift(b)) {
                return law_failed("t multiplicativity");
            }
        }
        Ok(())
    }

    // t applied literally `k` times (no reduction mod n); validation needs
    // the unreduced composite.
    fn shift_pow_exact(&self, a: &RingElement, k: u32) -> RingElement {
        let mut out = a.clone();
        for _ in 0..k {
            out = self.shift(&out);
        }
        out
    }
}

impl CyclicRing for RingInstance {
    type Elem = RingElement;

    fn order(&self) -> u32 {
        self.n
    }

    fn zero(&self) -> RingElement {
        match &self.backend {
            Backend::Module { dim, .. } => RingElement::Coords(vec![0; *dim]),
            Backend::Table { zero, .. } => RingElement::Table(*zero),
        }
    }

    fn one(&self) -> RingElement {
        match &self.backend {
            Backend::Module { dim, op, k, .. } => {
                let coords = match op {
                    ModuleOp::Trivial => vec![1],
                    ModuleOp::Shift => vec![1; *dim],
                    ModuleOp::Gaussian => vec![1, 0],
                    ModuleOp::Matrix => {
                        let mut id = vec![0; *dim];
                        for i in 0..*k {
                            id[i * k + i] = 1;
                        }
                        id
                    }
                };
                RingElement::Coords(coords)
            }
            Backend::Table { one, .. } => RingElement::Table(*one),
        }
    }

    fn add(&self, a: &RingElement, b: &RingElement) -> RingElement {
        match (&self.backend, a, b) {
            (Backend::Module { m, .. }, RingElement::Coords(x), RingElement::Coords(y)) => {
                RingElement::Coords(x.iter().zip(y).map(|(&u, &v)| (u + v) % m).collect())
            }
            (Backend::Table { add, .. }, RingElement::Table(i), RingElement::Table(j)) => {
                RingElement::Table(add[*i][*j])
            }
            _ => panic!("element kind does not match ring backend"),
        }
    }

    fn neg(&self, a: &RingElement) -> RingElement {
        match (&self.backend, a) {
            (Backend::Module { m, .. }, RingElement::Coords(x)) => {
                RingElement::Coords(x.iter().map(|&u| (m - u) % m).collect())
            }
            (Backend::Table { neg, .. }, RingElement::Table(i)) => RingElement::Table(neg[*i]),
            _ => panic!("element kind does not match ring backend"),
        }
    }

    fn mul(&self, a: &RingElement, b: &RingElement) -> RingElement {
        match (&self.backend, a, b) {
            (Backend::Module { m, op, k, .. }, RingElement::Coords(x), RingElement::Coords(y)) => {
                let coords = match op {
                    ModuleOp::Trivial | ModuleOp::Shift => {
                        x.iter().zip(y).map(|(&u, &v)| u * v % m).collect()
                    }
                    ModuleOp::Gaussian => {
                        // (a + bi)(c + di) = (ac - bd) + (ad + bc)i
                        let (a0, b0, c0, d0) = (x[0], x[1], y[0], y[1]);
                        vec![
                            (a0 * c0 % m + (m - b0 * d0 % m)) % m,
                            (a0 * d0 + b0 * c0) % m,
                        ]
                    }
                    ModuleOp::Matrix => {
                        let k = *k;
                        let mut out = vec![0u64; k * k];
                        for i in 0..k {
                            for j in 0..k {
                                let mut acc = 0u64;
                                for l in 0..k {
                                    acc = (acc + x[i * k + l] * y[l * k + j]) % m;
                                }
                                out[i * k + j] = acc;
                            }
                        }
                        out
                    }
                };
                RingElement::Coords(coords)
            }
            (Backend::Table { mul, .. }, RingElement::Table(i), RingElement::Table(j)) => {
                RingElement::Table(mul[*i][*j])
            }
            _ => panic!("element kind does not match ring backend"),
        }
    }

    fn shift(&self, a: &RingElement) -> RingElement {
        match (&self.backend, a) {
            (
                Backend::Module {
                    m,
                    dim,
                    op,
                    k,
                    sigma_inv,
                    ..
                },
                RingElement::Coords(x),
            ) => {
                let coords = match op {
                    ModuleOp::Trivial => x.clone(),
                    ModuleOp::Shift => (0..*dim).map(|i| x[(i + dim - 1) % dim]).collect(),
                    ModuleOp::Gaussian => vec![x[0], (m - x[1]) % m],
                    ModuleOp::Matrix => {
                        // conjugation by the permutation matrix of sigma
                        let k = *k;
                        (0..k * k)
                            .map(|pos| {
                                let (i, j) = (pos / k, pos % k);
                                x[sigma_inv[i] * k + sigma_inv[j]]
                            })
                            .collect()
                    }
                };
                RingElement::Coords(coords)
            }
            (Backend::Table { taut, .. }, RingElement::Table(i)) => RingElement::Table(taut[*i]),
            _ => panic!("element kind does not match ring backend"),
        }
    }

    fn fmt_elem(&self, a: &RingElement) -> String {
        match (&self.backend, a) {
            (Backend::Module { op, k, .. }, RingElement::Coords(x)) => match op {
                ModuleOp::Trivial => x[0].to_string(),
                ModuleOp::Shift => {
                    let mut s = String::from("(");
                    for (i, v) in x.iter().enumerate() {
                        if i > 0 {
                            s.push(',');
                        }
                        let _ = write!(s, "{v}");
                    }
                    s.push(')');
                    s
                }
                ModuleOp::Gaussian => {
                    if x[1] == 0 {
                        x[0].to_string()
                    } else {
                        format!("{}+{}i", x[0], x[1])
                    }
                }
                ModuleOp::Matrix => {
                    let rows: Vec<Vec<u64>> =
                        x.chunks(*k).map(|row| row.to_vec()).collect();
                    serde_json::to_string(&rows).expect("matrix serializes")
                }
            },
            (Backend::Table { names, .. }, RingElement::Table(i)) => names[*i].clone(),
            _ => panic!("element kind does not match ring backend"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SamplePolicy {
    Exhaustive,
    Random { seed: u64, count: usize },
}

impl SamplePolicy {
    pub fn describe(&self) -> String {
        match self {
            SamplePolicy::Exhaustive => "exhaustive".to_string(),
            SamplePolicy::Random { seed, count } => {
                format!("random count={count} seed={seed}")
            }
        }
    }
}

/// Element policy: exhaustive at or below the cap, seeded sampling beyond.
pub fn element_policy(ring: &RingInstance, seed: u64) -> SamplePolicy {
    if ring.size() <= EXHAUSTIVE_CAP {
        SamplePolicy::Exhaustive
    } else {
        SamplePolicy::Random {
            seed,
            count: SAMPLE_COUNT,
        }
    }
}

/// Pair policy: exhaustive pairs only while the evaluation count stays under
/// [`PAIR_EVAL_CAP`].
pub fn pair_policy(ring: &RingInstance, seed: u64) -> SamplePolicy {
    let size = ring.size();
    if size <= EXHAUSTIVE_CAP && size * size <= PAIR_EVAL_CAP {
        SamplePolicy::Exhaustive
    } else {
        SamplePolicy::Random {
            seed,
            count: SAMPLE_COUNT,
        }
    }
}
