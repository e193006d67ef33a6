//! Exact arithmetic in finite fields GF(p^k).
//!
//! A [`Field`] is an immutable, shareable description of GF(p^k): the prime
//! `p`, the extension degree `k`, and a monic irreducible modulus in the
//! generator `u`. Elements are coefficient vectors of length `k` (ascending
//! degree in `u`), always kept reduced. Prime fields use the modulus `u`.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Hard bound on field size: p^k must stay below 2^20.
pub const MAX_FIELD_SIZE: u64 = 1 << 20;

type Coeffs = SmallVec<[u64; 2]>;

#[derive(Debug, PartialEq, Eq)]
struct FieldInner {
    p: u64,
    k: usize,
    /// Monic irreducible over GF(p), ascending coefficients, length k+1.
    modulus: Vec<u64>,
    /// p^k.
    order: u64,
    /// Whether `modulus` is the default one for (p, k).
    default_modulus: bool,
}

/// A finite field GF(p^k). Cheap to clone; elements hold a reference to it.
#[derive(Clone)]
pub struct Field(Arc<FieldInner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}
impl Eq for Field {}

impl Hash for Field {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.p.hash(state);
        self.0.k.hash(state);
        self.0.modulus.hash(state);
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.k == 1 {
            write!(f, "GF({})", self.0.p)?;
        } else {
            write!(f, "GF({}^{})", self.0.p, self.0.k)?;
        }
        if !self.0.default_modulus {
            write!(f, ";mod=[")?;
            for (i, c) in self.0.modulus.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{c}")?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

// ---------------------------------------------------------------------------
// Raw polynomial arithmetic over Z/p, used only to validate and search for
// field moduli (the public Polynomial type lives in `poly` and needs a Field).
// Coefficients ascend; a slice is normalized when its last entry is nonzero.

fn raw_trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn raw_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    debug_assert!(!b.is_empty());
    let mut r: Vec<u64> = a.to_vec();
    raw_trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = mod_inv(b[db], p);
    while r.len() > db {
        let dr = r.len() - 1;
        let c = (r[dr] * lead_inv) % p;
        if c != 0 {
            for j in 0..=db {
                let idx = dr - db + j;
                r[idx] = (r[idx] + (p - (c * b[j]) % p)) % p;
            }
        }
        r.pop();
        raw_trim(&mut r);
        if r.is_empty() {
            break;
        }
    }
    r
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // Fermat; p is prime and a is nonzero mod p.
    mod_pow(a % p, p - 2, p)
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Advance `counters` (entries mod p) one step in lexicographic order where
/// index 0 is the most significant slot. Returns false once all wrapped.
fn lex_advance(counters: &mut [u64], p: u64) -> bool {
    let mut i = counters.len();
    while i > 0 {
        i -= 1;
        counters[i] += 1;
        if counters[i] < p {
            return true;
        }
        counters[i] = 0;
    }
    false
}

/// Irreducibility over GF(p) by trial division against every monic
/// polynomial of degree at most deg/2.
fn raw_is_irreducible(f: &[u64], p: u64) -> bool {
    let deg = f.len() - 1;
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        let mut counters = vec![0u64; d];
        loop {
            let mut g = counters.clone();
            g.push(1);
            if raw_rem(f, &g, p).is_empty() {
                return false;
            }
            if !lex_advance(&mut counters, p) {
                break;
            }
        }
    }
    true
}

/// Lexicographically smallest monic irreducible of degree k over GF(p),
/// coefficients compared ascending from the constant term.
fn default_modulus(p: u64, k: usize) -> Vec<u64> {
    if k == 1 {
        return vec![0, 1]; // u
    }
    let mut counters = vec![0u64; k];
    loop {
        let mut coeffs = counters.clone();
        coeffs.push(1);
        if raw_is_irreducible(&coeffs, p) {
            return coeffs;
        }
        assert!(lex_advance(&mut counters, p), "no irreducible of degree {k} over GF({p})");
    }
}

impl Field {
    /// GF(p^k) with the default modulus (the lexicographically smallest monic
    /// irreducible of degree k, coefficients compared from the constant term).
    pub fn new(p: u64, k: usize) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::BadModulus("extension degree must be at least 1".into()));
        }
        check_size(p, k)?;
        let modulus = default_modulus(p, k);
        Ok(Field(Arc::new(FieldInner {
            p,
            k,
            modulus,
            order: p.pow(k as u32),
            default_modulus: true,
        })))
    }

    /// GF(p) for prime p.
    pub fn prime(p: u64) -> Result<Field> {
        Field::new(p, 1)
    }

    /// GF(p^k) with an explicit modulus (ascending coefficients, length k+1).
    pub fn with_modulus(p: u64, k: usize, modulus: &[u64]) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::BadModulus("extension degree must be at least 1".into()));
        }
        check_size(p, k)?;
        let reduced: Vec<u64> = modulus.iter().map(|c| c % p).collect();
        if reduced.len() != k + 1 || reduced[k] != 1 {
            return Err(Error::BadModulus(format!(
                "expected a monic polynomial of degree {k}"
            )));
        }
        if k == 1 {
            if reduced != [0, 1] {
                return Err(Error::BadModulus("prime field modulus must be u".into()));
            }
        } else if !raw_is_irreducible(&reduced, p) {
            return Err(Error::BadModulus("modulus is reducible".into()));
        }
        let default = reduced == default_modulus(p, k);
        Ok(Field(Arc::new(FieldInner {
            p,
            k,
            modulus: reduced,
            order: p.pow(k as u32),
            default_modulus: default,
        })))
    }

    pub fn characteristic(&self) -> u64 {
        self.0.p
    }

    pub fn is_char_two(&self) -> bool {
        self.0.p == 2
    }

    pub fn degree(&self) -> usize {
        self.0.k
    }

    /// Number of elements, p^k.
    pub fn order(&self) -> u64 {
        self.0.order
    }

    /// Modulus coefficients (ascending, length k+1, entries in GF(p)).
    pub fn modulus_coeffs(&self) -> &[u64] {
        &self.0.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            field: self.clone(),
            coeffs: SmallVec::from_elem(0, self.0.k),
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    /// Embed an integer via its residue mod p.
    pub fn from_int(&self, v: i64) -> FieldElement {
        let p = self.0.p as i64;
        let r = v.rem_euclid(p) as u64;
        let mut coeffs = SmallVec::from_elem(0, self.0.k);
        coeffs[0] = r;
        FieldElement { field: self.clone(), coeffs }
    }

    /// Element from residue coefficients (ascending in u, length at most k).
    pub fn element(&self, coeffs: &[u64]) -> Result<FieldElement> {
        if coeffs.len() > self.0.k {
            return Err(Error::Parse(format!(
                "element needs at most {} coefficients, got {}",
                self.0.k,
                coeffs.len()
            )));
        }
        let mut c = SmallVec::from_elem(0, self.0.k);
        for (i, &v) in coeffs.iter().enumerate() {
            c[i] = v % self.0.p;
        }
        Ok(FieldElement { field: self.clone(), coeffs: c })
    }

    /// The generator u of the extension (equals 0 for prime fields only when k=1: u ≡ 0).
    pub fn generator(&self) -> FieldElement {
        if self.0.k == 1 {
            return self.zero();
        }
        let mut coeffs = SmallVec::from_elem(0, self.0.k);
        coeffs[1] = 1;
        FieldElement { field: self.clone(), coeffs }
    }

    /// All p^k elements in lexicographic order on the coefficient vector,
    /// compared ascending from the constant term.
    pub fn elements(&self) -> Vec<FieldElement> {
        (0..self.0.order).map(|i| self.element_from_index(i)).collect()
    }

    /// Position of an element in the [`Field::elements`] order.
    pub fn index_of(&self, e: &FieldElement) -> u64 {
        assert!(self == &e.field, "element from a different field");
        let mut idx = 0u64;
        for &c in e.coeffs.iter() {
            idx = idx * self.0.p + c;
        }
        idx
    }

    /// Inverse of [`Field::index_of`].
    pub fn element_from_index(&self, mut idx: u64) -> FieldElement {
        assert!(idx < self.0.order, "element index out of range");
        let k = self.0.k;
        let mut coeffs = SmallVec::from_elem(0, k);
        for i in (0..k).rev() {
            coeffs[i] = idx % self.0.p;
            idx /= self.0.p;
        }
        FieldElement { field: self.clone(), coeffs }
    }
}

fn check_size(p: u64, k: usize) -> Result<()> {
    let mut size = 1u64;
    for _ in 0..k {
        size = size.saturating_mul(p);
        if size > MAX_FIELD_SIZE {
            return Err(Error::FieldTooLarge(size, MAX_FIELD_SIZE));
        }
    }
    Ok(())
}

/// An element of a [`Field`]: a reduced coefficient vector of length k.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    field: Field,
    coeffs: Coeffs,
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Coefficients ascending in u, length k.
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    fn same_field(&self, other: &FieldElement) {
        assert!(
            self.field == other.field,
            "mixing elements of {} and {}",
            self.field,
            other.field
        );
    }

    pub fn add(&self, other: &FieldElement) -> FieldElement {
        self.same_field(other);
        let p = self.field.0.p;
        let coeffs = self
            .coeffs
            .iter()
            .zip(other.coeffs.iter())
            .map(|(&a, &b)| (a + b) % p)
            .collect();
        FieldElement { field: self.field.clone(), coeffs }
    }

    pub fn sub(&self, other: &FieldElement) -> FieldElement {
        self.same_field(other);
        let p = self.field.0.p;
        let coeffs = self
            .coeffs
            .iter()
            .zip(other.coeffs.iter())
            .map(|(&a, &b)| (a + p - b) % p)
            .collect();
        FieldElement { field: self.field.clone(), coeffs }
    }

    pub fn neg(&self) -> FieldElement {
        let p = self.field.0.p;
        let coeffs = self.coeffs.iter().map(|&a| (p - a) % p).collect();
        FieldElement { field: self.field.clone(), coeffs }
    }

    pub fn mul(&self, other: &FieldElement) -> FieldElement {
        self.same_field(other);
        let p = self.field.0.p;
        let k = self.field.0.k;
        if k == 1 {
            let mut coeffs = SmallVec::from_elem(0, 1);
            coeffs[0] = self.coeffs[0] * other.coeffs[0] % p;
            return FieldElement { field: self.field.clone(), coeffs };
        }
        // Schoolbook product, then reduction by the monic modulus.
        let mut tmp = vec![0u64; 2 * k - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                tmp[i + j] = (tmp[i + j] + a * b) % p;
            }
        }
        let m = &self.field.0.modulus;
        for i in (k..tmp.len()).rev() {
            let c = tmp[i];
            if c != 0 {
                tmp[i] = 0;
                for j in 0..k {
                    let idx = i - k + j;
                    tmp[idx] = (tmp[idx] + (p - m[j]) * c) % p;
                }
            }
        }
        let coeffs = tmp[..k].iter().copied().collect();
        FieldElement { field: self.field.clone(), coeffs }
    }

    pub fn square(&self) -> FieldElement {
        self.mul(self)
    }

    pub fn pow(&self, mut e: u64) -> FieldElement {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.square();
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; errors on zero.
    pub fn inv(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(self.field.0.order - 2))
    }

    pub fn div(&self, other: &FieldElement) -> Result<FieldElement> {
        Ok(self.mul(&other.inv()?))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.0.k == 1 {
            write!(f, "{}", self.coeffs[0])
        } else {
            write!(f, "[")?;
            for (i, c) in self.coeffs.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{c}")?;
            }
            write!(f, "]")
        }
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
