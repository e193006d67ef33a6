//! Univariate polynomials over a finite field: ring arithmetic, reciprocal
//! polynomials, and factorization into powers of monic irreducibles.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};

/// A polynomial with ascending coefficients and no trailing zeros.
/// The zero polynomial has an empty coefficient vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    field: Field,
    coeffs: Vec<FieldElement>,
}

impl Polynomial {
    pub fn new(field: Field, mut coeffs: Vec<FieldElement>) -> Polynomial {
        for c in &coeffs {
            assert!(c.field() == &field, "coefficient from a different field");
        }
        while coeffs.last().is_some_and(FieldElement::is_zero) {
            coeffs.pop();
        }
        Polynomial { field, coeffs }
    }

    /// Build from integer coefficients (ascending), reduced into the field.
    pub fn from_ints(field: &Field, coeffs: &[i64]) -> Polynomial {
        let cs = coeffs.iter().map(|&c| field.from_int(c)).collect();
        Polynomial::new(field.clone(), cs)
    }

    pub fn zero(field: &Field) -> Polynomial {
        Polynomial { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &Field) -> Polynomial {
        Polynomial::constant(field.one())
    }

    pub fn constant(c: FieldElement) -> Polynomial {
        Polynomial::new(c.field().clone(), vec![c])
    }

    /// The monomial x.
    pub fn x(field: &Field) -> Polynomial {
        Polynomial::from_ints(field, &[0, 1])
    }

    pub fn monomial(c: FieldElement, degree: usize) -> Polynomial {
        let field = c.field().clone();
        let mut coeffs = vec![field.zero(); degree + 1];
        coeffs[degree] = c;
        Polynomial::new(field, coeffs)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    /// Coefficient of x^i (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&FieldElement> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(FieldElement::is_one)
    }

    /// Divide out the leading coefficient; errors on the zero polynomial.
    pub fn make_monic(&self) -> Result<Polynomial> {
        let lead = self.leading().ok_or(Error::ZeroPolynomial)?;
        if lead.is_one() {
            return Ok(self.clone());
        }
        let inv = lead.inv()?;
        Ok(self.scale(&inv))
    }

    pub fn scale(&self, c: &FieldElement) -> Polynomial {
        let coeffs = self.coeffs.iter().map(|a| a.mul(c)).collect();
        Polynomial::new(self.field.clone(), coeffs)
    }

    fn same_field(&self, other: &Polynomial) {
        assert!(
            self.field == other.field,
            "mixing polynomials over {} and {}",
            self.field,
            other.field
        );
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.same_field(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i).add(&other.coeff(i))).collect();
        Polynomial::new(self.field.clone(), coeffs)
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.same_field(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i).sub(&other.coeff(i))).collect();
        Polynomial::new(self.field.clone(), coeffs)
    }

    pub fn neg(&self) -> Polynomial {
        let coeffs = self.coeffs.iter().map(FieldElement::neg).collect();
        Polynomial::new(self.field.clone(), coeffs)
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        self.same_field(other);
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.field);
        }
        let mut coeffs = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        Polynomial::new(self.field.clone(), coeffs)
    }

    pub fn pow(&self, e: usize) -> Polynomial {
        let mut acc = Polynomial::one(&self.field);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Quotient and remainder; errors when the divisor is zero.
    pub fn divmod(&self, divisor: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        self.same_field(divisor);
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = divisor.leading().unwrap().inv()?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![self.field.zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let dr = rem.len() - 1;
            let c = rem[dr].mul(&lead_inv);
            if !c.is_zero() {
                quot[dr - dd] = c.clone();
                for (j, b) in divisor.coeffs.iter().enumerate() {
                    rem[dr - dd + j] = rem[dr - dd + j].sub(&c.mul(b));
                }
            }
            rem.pop();
            while rem.last().is_some_and(FieldElement::is_zero) {
                rem.pop();
            }
        }
        Ok((
            Polynomial::new(self.field.clone(), quot),
            Polynomial::new(self.field.clone(), rem),
        ))
    }

    pub fn rem(&self, divisor: &Polynomial) -> Result<Polynomial> {
        Ok(self.divmod(divisor)?.1)
    }

    pub fn divides(&self, other: &Polynomial) -> bool {
        match other.rem(self) {
            Ok(r) => r.is_zero(),
            Err(_) => false,
        }
    }

    /// Monic greatest common divisor; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.make_monic().expect("nonzero")
        }
    }

    pub fn eval(&self, at: &FieldElement) -> FieldElement {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(at).add(c);
        }
        acc
    }

    pub fn derivative(&self) -> Polynomial {
        if self.coeffs.len() <= 1 {
            return Polynomial::zero(&self.field);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.mul(&self.field.from_int(i as i64)))
            .collect();
        Polynomial::new(self.field.clone(), coeffs)
    }

    /// The reciprocal a0^{-1} x^n f(1/x) of a monic f with f(0) != 0: its
    /// roots are the inverses of the roots of f.
    pub fn reciprocal(&self) -> Result<Polynomial> {
        if !self.is_monic() {
            return Err(Error::NotMonic);
        }
        let a0 = self.coeff(0);
        if a0.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let a0_inv = a0.inv()?;
        let n = self.degree().unwrap();
        let coeffs = (0..=n).map(|i| self.coeff(n - i).mul(&a0_inv)).collect();
        Ok(Polynomial::new(self.field.clone(), coeffs))
    }

    /// f equals its own reciprocal, i.e. a0^2 = 1 and a_{n-k} = a0^{-1} a_k.
    pub fn is_self_reciprocal(&self) -> Result<bool> {
        if !self.is_monic() {
            return Err(Error::NotMonic);
        }
        let a0 = self.coeff(0);
        if a0.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        if !a0.square().is_one() {
            return Ok(false);
        }
        let a0_inv = a0.inv()?;
        let n = self.degree().unwrap();
        for k in 1..n {
            if self.coeff(n - k) != a0_inv.mul(&self.coeff(k)) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// True when f is f0^k for a single self-reciprocal monic irreducible f0.
    pub fn is_power_of_self_reciprocal_irreducible(&self) -> Result<bool> {
        if !self.is_monic() {
            return Err(Error::NotMonic);
        }
        if self.coeff(0).is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let f = self.factor()?;
        if f.factors.len() != 1 {
            return Ok(false);
        }
        f.factors[0].0.is_self_reciprocal()
    }

    /// Irreducibility over the coefficient field (degree >= 1 required; units
    /// and the zero polynomial are not irreducible).
    pub fn is_irreducible(&self) -> Result<bool> {
        let deg = self.degree().ok_or(Error::ZeroPolynomial)?;
        if deg == 0 {
            return Ok(false);
        }
        let monic = self.make_monic()?;
        for d in 1..=deg / 2 {
            for g in monic_irreducibles(&self.field, d) {
                if g.divides(&monic) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Complete factorization into monic irreducible powers times a unit, by
    /// trial division against recursively generated irreducibles.
    pub fn factor(&self) -> Result<Factorization> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let unit = self.leading().unwrap().clone();
        let mut rest = self.make_monic()?;
        let mut factors: Vec<(Polynomial, usize)> = Vec::new();

        // Powers of x first.
        let x = Polynomial::x(&self.field);
        let mut xmult = 0;
        while rest.degree().is_some_and(|d| d >= 1) && rest.coeff(0).is_zero() {
            rest = rest.divmod(&x)?.0;
            xmult += 1;
        }
        if xmult > 0 {
            factors.push((x.clone(), xmult));
        }

        let mut d = 1;
        while rest.degree().is_some_and(|deg| deg >= 2 * d) {
            for g in monic_irreducibles(&self.field, d) {
                let mut mult = 0;
                loop {
                    let (q, r) = rest.divmod(&g)?;
                    if !r.is_zero() {
                        break;
                    }
                    rest = q;
                    mult += 1;
                }
                if mult > 0 {
                    factors.push((g, mult));
                }
            }
            d += 1;
        }
        if rest.degree().is_some_and(|deg| deg >= 1) {
            // No divisor of degree <= deg/2 remains, so this is irreducible.
            factors.push((rest, 1));
        }
        factors.sort_by(|a, b| poly_sort_key(&a.0).cmp(&poly_sort_key(&b.0)));
        Ok(Factorization { unit, factors })
    }
}

/// All monic irreducibles of exact degree `d`, in lexicographic order
/// (coefficients compared ascending from the constant term). Generated by
/// sieving every monic polynomial of degree `d` against the irreducibles of
/// degree at most d/2.
pub fn monic_irreducibles(field: &Field, d: usize) -> Vec<Polynomial> {
    assert!(d >= 1);
    let lower: Vec<Polynomial> = (1..=d / 2).flat_map(|e| monic_irreducibles(field, e)).collect();
    let mut out = Vec::new();
    for cand in monic_polynomials(field, d) {
        if cand.degree() == Some(1) || lower.iter().all(|g| !g.divides(&cand)) {
            out.push(cand);
        }
    }
    out
}

/// All monic polynomials of exact degree `d` in lexicographic order.
pub fn monic_polynomials(field: &Field, d: usize) -> Vec<Polynomial> {
    let elems = field.elements();
    let q = elems.len() as u64;
    let mut counters = vec![0u64; d];
    let mut out = Vec::new();
    loop {
        let mut coeffs: Vec<FieldElement> =
            counters.iter().map(|&i| elems[i as usize].clone()).collect();
        coeffs.push(field.one());
        out.push(Polynomial::new(field.clone(), coeffs));
        let mut i = d;
        let mut carried = true;
        while i > 0 {
            i -= 1;
            counters[i] += 1;
            if counters[i] < q {
                carried = false;
                break;
            }
            counters[i] = 0;
        }
        if carried {
            return out;
        }
    }
}

/// Deterministic ordering key: degree, then coefficient indices from the
/// constant term up.
pub fn poly_sort_key(p: &Polynomial) -> (usize, Vec<u64>) {
    let deg = p.degree().map_or(0, |d| d + 1);
    let key = p.coeffs().iter().map(|c| p.field().index_of(c)).collect();
    (deg, key)
}

/// A factorization unit * prod factor_i^mult_i with distinct monic
/// irreducible factors in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: FieldElement,
    pub factors: Vec<(Polynomial, usize)>,
}

impl Factorization {
    /// Multiply the factorization back out.
    pub fn product(&self) -> Polynomial {
        let mut acc = Polynomial::constant(self.unit.clone());
        for (f, m) in &self.factors {
            acc = acc.mul(&f.pow(*m));
        }
        acc
    }
}

impl fmt::Display for Polynomial {
    /// Pretty form, e.g. `x^2+3x+2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            let show_coeff = i == 0 || !c.is_one();
            if show_coeff {
                write!(f, "{c}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Canonical text form, e.g. `poly[2,3,1]` for x^2+3x+2.
pub fn poly_to_text(p: &Polynomial) -> String {
    let mut s = String::from("poly[");
    for (i, c) in p.coeffs().iter().enumerate() {
        if i > 0 {
            s.push(',');
        }
        s.push_str(&c.to_string());
    }
    s.push(']');
    s
}
