//! Sparse multivariate polynomials over `F_p`, derivations, division by a
//! single polynomial, and dense linear algebra over `F_p`.
//!
//! Terms are ordered graded-lexicographically with the variables in the
//! order they were declared (first variable largest).

mod linalg;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use thiserror::Error;

pub use linalg::FpMatrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("modulus {0} is not a prime below 65536")]
    InvalidModulus(u64),
    #[error("polynomials live in different rings")]
    RingMismatch,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("exponent exceeds {}", u16::MAX)]
    ExponentOverflow,
    #[error("expected {expected} entries, got {got}")]
    Arity { expected: usize, got: usize },
}

/// `a^-1 mod p` for `a != 0`.
pub fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(a % p != 0);
    pow_mod(a, p - 2, p)
}

pub fn pow_mod(a: u32, mut e: u32, p: u32) -> u32 {
    let (mut base, mut acc, p) = (a as u64 % p as u64, 1u64, p as u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc as u32
}

/// Reduces a signed integer into `0..p`.
pub fn reduce_i64(c: i64, p: u32) -> u32 {
    c.rem_euclid(p as i64) as u32
}

/// Variables and characteristic of a polynomial ring `F_p[x_1, ..., x_n]`.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    p: u32,
    names: Vec<String>,
}

impl PolyRing {
    pub fn new(p: u64, names: Vec<String>) -> Result<Arc<Self>, PolyError> {
        if p >= 1 << 16 || !crate::is_prime(p) {
            return Err(PolyError::InvalidModulus(p));
        }
        Ok(Arc::new(Self { p: p as u32, names }))
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// Exponent vector with cached total degree. The derived order compares the
/// degree first and then the exponents lexicographically, which is grlex.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    deg: u32,
    exps: Vec<u16>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Self { deg: 0, exps: vec![0; nvars] }
    }

    pub fn new(exps: Vec<u16>) -> Self {
        let deg = exps.iter().map(|&e| e as u32).sum();
        Self { deg, exps }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Self { deg: 1, exps }
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn exps(&self) -> &[u16] {
        &self.exps
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial, PolyError> {
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(&a, &b)| a.checked_add(b).ok_or(PolyError::ExponentOverflow))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Monomial { deg: self.deg + other.deg, exps })
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial { deg: other.deg - self.deg, exps: other.exps.iter().zip(&self.exps).map(|(a, b)| a - b).collect() }
    }

    fn render(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| if e == 1 { names[i].clone() } else { format!("{}^{e}", names[i]) })
            .collect();
        parts.join("*")
    }
}

/// Polynomial over `F_p` with no zero coefficients stored.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    ring: Arc<PolyRing>,
    terms: BTreeMap<Monomial, u32>,
}

impl Poly {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Self { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(ring: &Arc<PolyRing>, c: i64) -> Self {
        let mut f = Self::zero(ring);
        let c = reduce_i64(c, ring.p);
        if c != 0 {
            f.terms.insert(Monomial::one(ring.nvars()), c);
        }
        f
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        Self::constant(ring, 1)
    }

    pub fn var(ring: &Arc<PolyRing>, i: usize) -> Self {
        assert!(i < ring.nvars(), "variable index {i} out of range");
        let mut f = Self::zero(ring);
        f.terms.insert(Monomial::var(ring.nvars(), i), 1);
        f
    }

    /// Builds `sum c * x^e`; coefficients are reduced mod `p` and like terms
    /// are combined.
    pub fn from_terms(
        ring: &Arc<PolyRing>,
        terms: impl IntoIterator<Item = (Vec<u16>, i64)>,
    ) -> Result<Self, PolyError> {
        let mut f = Self::zero(ring);
        for (exps, c) in terms {
            if exps.len() != ring.nvars() {
                return Err(PolyError::Arity { expected: ring.nvars(), got: exps.len() });
            }
            f.add_term(Monomial::new(exps), reduce_i64(c, ring.p));
        }
        Ok(f)
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn p(&self) -> u32 {
        self.ring.p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in increasing grlex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, u32)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn coeff(&self, m: &Monomial) -> u32 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, u32)> {
        self.terms.iter().next_back().map(|(m, &c)| (m, c))
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Total degree in the variables `vars` jointly.
    pub fn degree_in(&self, vars: &[usize]) -> Option<u32> {
        self.terms.keys().map(|m| vars.iter().map(|&v| m.exps[v] as u32).sum()).max()
    }

    fn add_term(&mut self, m: Monomial, c: u32) {
        if c == 0 {
            return;
        }
        let p = self.ring.p;
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = (*e.get() + c) % p;
                if s == 0 {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    fn same_ring(&self, other: &Poly) -> Result<(), PolyError> {
        if Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring {
            Ok(())
        } else {
            Err(PolyError::RingMismatch)
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.same_ring(other)?;
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.same_ring(other)?;
        let p = self.ring.p as u64;
        let mut acc: HashMap<Monomial, u64> = HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (a, &ca) in &self.terms {
            for (b, &cb) in &other.terms {
                let m = a.checked_mul(b)?;
                let e = acc.entry(m).or_insert(0);
                *e = (*e + ca as u64 * cb as u64) % p;
            }
        }
        let terms = acc.into_iter().filter(|&(_, c)| c != 0).map(|(m, c)| (m, c as u32)).collect();
        Ok(Poly { ring: self.ring.clone(), terms })
    }

    pub fn scale(&self, c: i64) -> Poly {
        let p = self.ring.p as u64;
        let c = reduce_i64(c, self.ring.p) as u64;
        if c == 0 {
            return Poly::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|(m, &a)| (m.clone(), (a as u64 * c % p) as u32)).collect();
        Poly { ring: self.ring.clone(), terms }
    }

    /// Multiplies by `c * m`.
    pub fn mul_term(&self, m: &Monomial, c: u32) -> Result<Poly, PolyError> {
        let p = self.ring.p as u64;
        if c % self.ring.p == 0 {
            return Ok(Poly::zero(&self.ring));
        }
        let mut terms = BTreeMap::new();
        for (a, &ca) in &self.terms {
            terms.insert(a.checked_mul(m)?, (ca as u64 * c as u64 % p) as u32);
        }
        Ok(Poly { ring: self.ring.clone(), terms })
    }

    pub fn checked_pow(&self, mut e: u32) -> Result<Poly, PolyError> {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.checked_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.checked_mul(&base)?;
            }
        }
        Ok(acc)
    }

    pub fn pow(&self, e: u32) -> Poly {
        self.checked_pow(e).expect("exponent overflow")
    }

    /// `d f / d x_i`.
    pub fn partial(&self, i: usize) -> Poly {
        let p = self.ring.p as u64;
        let mut out = Poly::zero(&self.ring);
        for (m, &c) in &self.terms {
            let e = m.exps[i];
            if e == 0 {
                continue;
            }
            let mut q = m.clone();
            q.exps[i] -= 1;
            q.deg -= 1;
            out.add_term(q, (c as u64 * (e as u64 % p) % p) as u32);
        }
        out
    }

    /// Value at a point of `F_p^n`.
    pub fn eval(&self, point: &[u32]) -> u32 {
        assert_eq!(point.len(), self.ring.nvars());
        let p = self.ring.p;
        let mut acc = 0u64;
        for (m, &c) in &self.terms {
            let mut t = c as u64;
            for (&x, &e) in point.iter().zip(&m.exps) {
                if e > 0 {
                    t = t * pow_mod(x, e as u32, p) as u64 % p as u64;
                }
            }
            acc = (acc + t) % p as u64;
        }
        acc as u32
    }

    /// `f(g_1, ..., g_n)` with every `g_i` in `target`.
    pub fn compose(&self, images: &[Poly], target: &Arc<PolyRing>) -> Result<Poly, PolyError> {
        if images.len() != self.ring.nvars() {
            return Err(PolyError::Arity { expected: self.ring.nvars(), got: images.len() });
        }
        for g in images {
            if g.ring != *target {
                return Err(PolyError::RingMismatch);
            }
        }
        let mut powers: Vec<Vec<Poly>> = images.iter().map(|g| vec![Poly::one(target), g.clone()]).collect();
        let mut out = Poly::zero(target);
        for (m, &c) in &self.terms {
            let mut t = Poly::constant(target, c as i64);
            for (i, &e) in m.exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().checked_mul(&images[i])?;
                    powers[i].push(next);
                }
                t = t.checked_mul(&powers[i][e as usize])?;
            }
            out = out.checked_add(&t)?;
        }
        Ok(out)
    }

    /// Division by a single divisor: `f = q g + r` with no term of `r`
    /// divisible by the leading monomial of `g`.
    pub fn divide(&self, g: &Poly) -> Result<(Poly, Poly), PolyError> {
        self.same_ring(g)?;
        let (lm, lc) = match g.leading_term() {
            Some((m, c)) => (m.clone(), c),
            None => return Err(PolyError::DivisionByZero),
        };
        let p = self.ring.p as u64;
        let lc_inv = inv_mod(lc, self.ring.p) as u64;
        let tail: Vec<(Monomial, u32)> =
            g.terms.iter().filter(|(m, _)| **m != lm).map(|(m, &c)| (m.clone(), c)).collect();
        let mut work = self.clone();
        let mut q = Poly::zero(&self.ring);
        let mut r = Poly::zero(&self.ring);
        while let Some((m, c)) = work.terms.pop_last() {
            if lm.divides(&m) {
                let qm = lm.quotient_of(&m);
                let qc = (c as u64 * lc_inv % p) as u32;
                // work -= qc * qm * (g - lt(g))
                for (tm, tc) in &tail {
                    let neg = (p - (qc as u64 * *tc as u64 % p)) % p;
                    work.add_term(tm.checked_mul(&qm)?, neg as u32);
                }
                q.add_term(qm, qc);
            } else {
                r.terms.insert(m, c);
            }
        }
        Ok((q, r))
    }

    /// Remainder of [`Poly::divide`].
    pub fn normal_form(&self, g: &Poly) -> Result<Poly, PolyError> {
        Ok(self.divide(g)?.1)
    }
}

impl fmt::Display for Poly {
    /// Terms in decreasing grlex order, e.g. `2*x11^2*x22 + x12 + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(m, &c)| {
                let mono = m.render(&self.ring.names);
                match (mono.is_empty(), c) {
                    (true, _) => c.to_string(),
                    (false, 1) => mono,
                    (false, _) => format!("{c}*{mono}"),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[F_{}]({self})", self.ring.p)
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        let p = self.ring.p;
        let terms = self.terms.iter().map(|(m, &c)| (m.clone(), p - c)).collect();
        Poly { ring: self.ring.clone(), terms }
    }
}

impl Add for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        self.checked_add(rhs).expect("ring mismatch")
    }
}

impl Sub for &Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        self.checked_sub(rhs).expect("ring mismatch")
    }
}

impl Mul for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        self.checked_mul(rhs).expect("ring mismatch or exponent overflow")
    }
}

/// A derivation of `F_p[x_1..x_n]`, given by the images of the variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    images: Vec<Poly>,
}

impl Derivation {
    pub fn new(images: Vec<Poly>) -> Result<Self, PolyError> {
        if let Some(first) = images.first() {
            if images.len() != first.ring.nvars() {
                return Err(PolyError::Arity { expected: first.ring.nvars(), got: images.len() });
            }
            for g in &images {
                first.same_ring(g)?;
            }
        }
        Ok(Self { images })
    }

    pub fn image(&self, i: usize) -> &Poly {
        &self.images[i]
    }

    /// `D(f) = sum_i (df/dx_i) D(x_i)`.
    pub fn apply(&self, f: &Poly) -> Result<Poly, PolyError> {
        if self.images.is_empty() {
            return Ok(Poly::zero(&f.ring));
        }
        f.same_ring(&self.images[0])?;
        let mut out = Poly::zero(&f.ring);
        for (i, img) in self.images.iter().enumerate() {
            if img.is_zero() {
                continue;
            }
            let d = f.partial(i);
            if !d.is_zero() {
                out = out.checked_add(&d.checked_mul(img)?)?;
            }
        }
        Ok(out)
    }
}
