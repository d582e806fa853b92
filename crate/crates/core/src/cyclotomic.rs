//! Exact arithmetic in `Z[ζ_e]` and the prime fields used to compute
//! character tables modulo `q`.
//!
//! A [`CycInt`] is a residue of `Z[x]` modulo the `e`-th cyclotomic
//! polynomial `Φ_e`, kept fully reduced so that equality and the zero test
//! are plain coefficient comparisons.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::group::{is_prime, isqrt, prime_factors};

/// Coefficients of `Φ_e`, constant term first.
///
/// Computed as `(x^e − 1) / Π_{d | e, d < e} Φ_d(x)` by exact division.
pub fn cyclotomic_polynomial(e: u32) -> Vec<i64> {
    assert!(e >= 1, "cyclotomic polynomial needs e >= 1");
    let mut num = vec![0i64; e as usize + 1];
    num[0] = -1;
    num[e as usize] = 1;
    for d in 1..e {
        if e % d == 0 {
            num = div_exact(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

/// Exact division by a monic polynomial.
fn div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dd = den.len() - 1;
    debug_assert_eq!(den[dd], 1);
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; num.len() - dd];
    for k in (dd..num.len()).rev() {
        let c = rem[k];
        if c != 0 {
            quot[k - dd] = c;
            for (i, &d) in den.iter().enumerate() {
                rem[k - dd + i] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "division not exact");
    quot
}

/// `Φ_e` plus the data needed to reduce modulo it.
#[derive(Debug)]
pub struct CycRing {
    e: u32,
    phi: Vec<i64>,
    /// Non-zero `(i, c)` with `i < deg`, used to reduce `x^deg`.
    tail: Vec<(usize, i64)>,
}

impl CycRing {
    pub fn get(e: u32) -> Arc<CycRing> {
        static CACHE: OnceLock<Mutex<HashMap<u32, Arc<CycRing>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        let mut map = cache.lock().unwrap();
        map.entry(e)
            .or_insert_with(|| {
                let phi = cyclotomic_polynomial(e);
                let deg = phi.len() - 1;
                let tail = phi[..deg].iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (i, c)).collect();
                Arc::new(CycRing { e, phi, tail })
            })
            .clone()
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }

    pub fn phi(&self) -> &[i64] {
        &self.phi
    }

    /// Reduces a coefficient vector (any length) modulo `Φ_e` in place and
    /// truncates it to `degree()` entries.
    fn reduce_big(&self, coeffs: &mut Vec<BigInt>) {
        let deg = self.degree();
        for k in (deg..coeffs.len()).rev() {
            if coeffs[k].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut coeffs[k]);
            for &(i, t) in &self.tail {
                coeffs[k - deg + i] -= &c * t;
            }
        }
        coeffs.resize(deg, BigInt::zero());
    }

    /// Same reduction with checked `i128` arithmetic; `None` on overflow.
    pub fn reduce_i128(&self, mut coeffs: Vec<i128>) -> Option<Vec<i128>> {
        let deg = self.degree();
        for k in (deg..coeffs.len()).rev() {
            let c = coeffs[k];
            if c == 0 {
                continue;
            }
            coeffs[k] = 0;
            for &(i, t) in &self.tail {
                let slot = &mut coeffs[k - deg + i];
                *slot = slot.checked_sub(c.checked_mul(t as i128)?)?;
            }
        }
        coeffs.resize(deg, 0);
        Some(coeffs)
    }
}

/// An element of `Z[ζ_e]`.
#[derive(Clone)]
pub struct CycInt {
    ring: Arc<CycRing>,
    coeffs: Vec<BigInt>,
}

impl CycInt {
    pub fn zero(e: u32) -> Self {
        let ring = CycRing::get(e);
        let coeffs = vec![BigInt::zero(); ring.degree()];
        CycInt { ring, coeffs }
    }

    pub fn from_int(e: u32, n: i64) -> Self {
        let mut z = Self::zero(e);
        z.coeffs[0] = BigInt::from(n);
        z
    }

    pub fn one(e: u32) -> Self {
        Self::from_int(e, 1)
    }

    /// `Σ_j m_j ζ_e^j`, where `m` has length `e`.
    pub fn from_multiplicities(m: &[u64], e: u32) -> Self {
        assert_eq!(m.len(), e as usize, "multiplicity vector must have length e");
        Self::from_terms(e, m.iter().enumerate().map(|(j, &c)| (j as u32, BigInt::from(c))))
    }

    /// `Σ c ζ_e^j` over `(j, c)` pairs; exponents are taken mod `e`.
    pub fn from_terms(e: u32, terms: impl IntoIterator<Item = (u32, BigInt)>) -> Self {
        let ring = CycRing::get(e);
        let mut coeffs = vec![BigInt::zero(); e as usize];
        for (j, c) in terms {
            coeffs[(j % e) as usize] += c;
        }
        ring.reduce_big(&mut coeffs);
        CycInt { ring, coeffs }
    }

    /// Element of `Z[x]/(x^e − 1)` pushed into `Z[ζ_e]`.
    pub fn from_group_ring_i128(e: u32, v: Vec<i128>) -> Self {
        let ring = CycRing::get(e);
        let coeffs = match ring.reduce_i128(v.clone()) {
            Some(r) => r.into_iter().map(BigInt::from).collect(),
            None => {
                let mut big: Vec<BigInt> = v.into_iter().map(BigInt::from).collect();
                ring.reduce_big(&mut big);
                big
            }
        };
        CycInt { ring, coeffs }
    }

    pub fn e(&self) -> u32 {
        self.ring.e
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// `Some(n)` when the value is the rational integer `n`.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.coeffs[1..].iter().all(Zero::is_zero).then(|| self.coeffs[0].clone())
    }

    /// Complex conjugate, `ζ^j ↦ ζ^{−j}`.
    pub fn conj(&self) -> Self {
        let e = self.e();
        Self::from_terms(e, self.coeffs.iter().enumerate().map(|(j, c)| ((e - j as u32) % e, c.clone())))
    }

    /// Image in `F_q` under `ζ_e ↦ ω`.
    pub fn image_mod(&self, field: &ModField) -> u64 {
        assert_eq!(field.e, self.e(), "field built for a different root order");
        let q = BigInt::from(field.q);
        let mut acc = 0u64;
        let mut w = 1u64;
        for c in &self.coeffs {
            let r = c.mod_floor_u64(&q);
            acc = field.add(acc, field.mul(r, w));
            w = field.mul(w, field.omega);
        }
        acc
    }

    fn check_ring(&self, other: &Self) {
        assert_eq!(self.e(), other.e(), "cyclotomic elements from different rings");
    }
}

trait ModFloor {
    fn mod_floor_u64(&self, q: &BigInt) -> u64;
}

impl ModFloor for BigInt {
    fn mod_floor_u64(&self, q: &BigInt) -> u64 {
        let r = self % q;
        let r = if r.is_negative() { r + q } else { r };
        r.to_u64().unwrap()
    }
}

impl PartialEq for CycInt {
    fn eq(&self, other: &Self) -> bool {
        self.e() == other.e() && self.coeffs == other.coeffs
    }
}

impl Eq for CycInt {}

impl fmt::Debug for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycInt(e={}, {:?})", self.e(), self.coeffs.iter().map(ToString::to_string).collect::<Vec<_>>())
    }
}

impl Add for &CycInt {
    type Output = CycInt;
    fn add(self, rhs: &CycInt) -> CycInt {
        self.check_ring(rhs);
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect();
        CycInt { ring: self.ring.clone(), coeffs }
    }
}

impl Sub for &CycInt {
    type Output = CycInt;
    fn sub(self, rhs: &CycInt) -> CycInt {
        self.check_ring(rhs);
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect();
        CycInt { ring: self.ring.clone(), coeffs }
    }
}

impl Neg for &CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        CycInt { ring: self.ring.clone(), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &CycInt {
    type Output = CycInt;
    fn mul(self, rhs: &CycInt) -> CycInt {
        self.check_ring(rhs);
        let d = self.coeffs.len();
        let mut prod = vec![BigInt::zero(); (2 * d).saturating_sub(1).max(1)];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        self.ring.reduce_big(&mut prod);
        CycInt { ring: self.ring.clone(), coeffs: prod }
    }
}

impl Serialize for CycInt {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        // integers that fit in i64 are written as numbers, larger ones as strings
        let coeffs: Vec<serde_json::Value> = self
            .coeffs
            .iter()
            .map(|c| match c.to_i64() {
                Some(v) => serde_json::Value::from(v),
                None => serde_json::Value::from(c.to_string()),
            })
            .collect();
        let mut s = serializer.serialize_struct("CycInt", 2)?;
        s.serialize_field("e", &self.e())?;
        s.serialize_field("coeffs", &coeffs)?;
        s.end()
    }
}

/// The prime field `F_q` with a fixed element `ω` of exact order `e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ModField {
    pub q: u64,
    pub omega: u64,
    pub e: u32,
}

impl ModField {
    /// `F_q` with the smallest-found element of exact order `e`; `None` if
    /// `q` is not a prime `≡ 1 (mod e)`.
    pub fn new(q: u64, e: u32) -> Option<Self> {
        if !is_prime(q) || (q - 1) % e as u64 != 0 {
            return None;
        }
        let cofactor = (q - 1) / e as u64;
        let ell = prime_factors(e as u64);
        for x in 1..q {
            let w = pow_mod(x, cofactor, q);
            if ell.iter().all(|&l| pow_mod(w, e as u64 / l, q) != 1) {
                return Some(ModField { q, omega: w, e });
            }
        }
        None
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.q {
            s - self.q
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.q - b
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.q
    }

    pub fn pow(&self, a: u64, k: u64) -> u64 {
        pow_mod(a, k, self.q)
    }

    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(a % self.q != 0, "inverse of zero");
        pow_mod(a, self.q - 2, self.q)
    }

    pub fn reduce(&self, n: u64) -> u64 {
        n % self.q
    }

    /// `ω^j` for `j in 0..e`.
    pub fn omega_powers(&self) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.e as usize);
        let mut w = 1;
        for _ in 0..self.e {
            out.push(w);
            w = self.mul(w, self.omega);
        }
        out
    }

    /// Sum of `m_j ω^j`.
    pub fn eval_multiplicities(&self, m: &[u64]) -> u64 {
        let pw = self.omega_powers();
        m.iter().zip(&pw).fold(0, |acc, (&c, &w)| self.add(acc, self.mul(c % self.q, w)))
    }
}

fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    let mut b = base % m;
    let mut acc = 1 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc
}

/// Smallest prime `q ≡ 1 (mod e)` with `q > 2·√group_order` and
/// `q ∤ group_order`, with an element of exact order `e`.
pub fn choose_field(group_order: u64, e: u32) -> ModField {
    first_field_after(group_order, e, 0)
}

/// Next admissible field strictly above `after`.
pub fn first_field_after(group_order: u64, e: u32, after: u64) -> ModField {
    let e64 = e as u64;
    // q > 2√n  ⇔  q² > 4n
    let floor = (2 * isqrt(group_order)).max(after);
    let mut q = floor - floor % e64 + 1;
    loop {
        if q > floor && q * q > 4 * group_order && group_order % q != 0 {
            if let Some(f) = ModField::new(q, e) {
                return f;
            }
        }
        q += e64;
    }
}
