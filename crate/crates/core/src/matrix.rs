//! Dense square matrices over a finite field, with the constructors used
//! throughout the crate: companion matrices and their closed-form inverses,
//! the anti-diagonal involution, unit matrices, and direct sums. Exact
//! determinant, inverse, rank, characteristic and minimal polynomials.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::poly::{poly_sort_key, Polynomial};

/// An n-by-n matrix with row-major entries.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    n: usize,
    entries: Vec<FieldElement>,
}

impl Matrix {
    pub fn zero(field: &Field, n: usize) -> Matrix {
        assert!(n >= 1, "dimension must be at least 1");
        Matrix {
            field: field.clone(),
            n,
            entries: vec![field.zero(); n * n],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zero(field, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Unit matrix with a single 1 in position (i, j), zero-based.
    pub fn unit(field: &Field, n: usize, i: usize, j: usize) -> Matrix {
        let mut m = Matrix::zero(field, n);
        m.set(i, j, field.one());
        m
    }

    /// Scalar matrix c*I.
    pub fn scalar(c: &FieldElement, n: usize) -> Matrix {
        let mut m = Matrix::zero(c.field(), n);
        for i in 0..n {
            m.set(i, i, c.clone());
        }
        m
    }

    pub fn diagonal(field: &Field, entries: &[FieldElement]) -> Matrix {
        let mut m = Matrix::zero(field, entries.len());
        for (i, c) in entries.iter().enumerate() {
            m.set(i, i, c.clone());
        }
        m
    }

    /// The anti-diagonal involution: 1 in positions (i, j) with i + j = n - 1.
    pub fn tau(field: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zero(field, n);
        for i in 0..n {
            m.set(i, n - 1 - i, field.one());
        }
        m
    }

    pub fn from_rows(field: &Field, rows: Vec<Vec<FieldElement>>) -> Matrix {
        let n = rows.len();
        assert!(n >= 1 && rows.iter().all(|r| r.len() == n), "rows must form a square matrix");
        let entries = rows.into_iter().flatten().collect();
        let m = Matrix { field: field.clone(), n, entries };
        for e in &m.entries {
            assert!(e.field() == field, "entry from a different field");
        }
        m
    }

    /// Build from integer entries (row-major rows), reduced into the field.
    pub fn from_ints(field: &Field, rows: &[&[i64]]) -> Matrix {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.from_int(v)).collect())
            .collect();
        Matrix::from_rows(field, rows)
    }

    /// Companion matrix of a monic polynomial of degree >= 1: ones on the
    /// subdiagonal and -a_i down the last column.
    pub fn companion(f: &Polynomial) -> Result<Matrix> {
        if !f.is_monic() {
            return Err(Error::NotMonic);
        }
        let n = f.degree().unwrap();
        if n == 0 {
            return Err(Error::Precondition("companion needs degree >= 1".into()));
        }
        let field = f.field();
        let mut m = Matrix::zero(field, n);
        for i in 0..n - 1 {
            m.set(i + 1, i, field.one());
        }
        for i in 0..n {
            m.set(i, n - 1, f.coeff(i).neg());
        }
        Ok(m)
    }

    /// The closed-form inverse of a companion matrix: -a0^{-1} a_{i+1} down
    /// the first column and ones on the superdiagonal. Requires f(0) != 0.
    pub fn companion_inverse_formula(f: &Polynomial) -> Result<Matrix> {
        if !f.is_monic() {
            return Err(Error::NotMonic);
        }
        let n = f.degree().unwrap();
        if n == 0 {
            return Err(Error::Precondition("companion needs degree >= 1".into()));
        }
        let a0 = f.coeff(0);
        if a0.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let field = f.field();
        let a0_inv_neg = a0.inv()?.neg();
        let mut m = Matrix::zero(field, n);
        for i in 0..n - 1 {
            m.set(i, i + 1, field.one());
            m.set(i, 0, a0_inv_neg.mul(&f.coeff(i + 1)));
        }
        m.set(n - 1, 0, a0_inv_neg);
        Ok(m)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElement {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElement) {
        assert!(v.field() == &self.field, "entry from a different field");
        self.entries[i * self.n + j] = v;
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.entries
    }

    fn same_shape(&self, other: &Matrix) {
        assert!(self.field == other.field, "matrices over different fields");
        assert!(self.n == other.n, "dimension mismatch: {} vs {}", self.n, other.n);
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        self.same_shape(other);
        let entries = self
            .entries
            .iter()
            .zip(other.entries.iter())
            .map(|(a, b)| a.add(b))
            .collect();
        Matrix { field: self.field.clone(), n: self.n, entries }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.same_shape(other);
        let entries = self
            .entries
            .iter()
            .zip(other.entries.iter())
            .map(|(a, b)| a.sub(b))
            .collect();
        Matrix { field: self.field.clone(), n: self.n, entries }
    }

    pub fn neg(&self) -> Matrix {
        let entries = self.entries.iter().map(FieldElement::neg).collect();
        Matrix { field: self.field.clone(), n: self.n, entries }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        self.same_shape(other);
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = self.field.zero();
                for l in 0..n {
                    let a = self.get(i, l);
                    if !a.is_zero() {
                        acc = acc.add(&a.mul(other.get(l, j)));
                    }
                }
                entries.push(acc);
            }
        }
        Matrix { field: self.field.clone(), n, entries }
    }

    pub fn scalar_mul(&self, c: &FieldElement) -> Matrix {
        let entries = self.entries.iter().map(|a| a.mul(c)).collect();
        Matrix { field: self.field.clone(), n: self.n, entries }
    }

    pub fn pow(&self, e: u64) -> Matrix {
        let mut acc = Matrix::identity(&self.field, self.n);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn transpose(&self) -> Matrix {
        let n = self.n;
        let mut m = self.clone();
        for i in 0..n {
            for j in 0..n {
                m.entries[j * n + i] = self.entries[i * n + j].clone();
            }
        }
        m
    }

    pub fn trace(&self) -> FieldElement {
        let mut acc = self.field.zero();
        for i in 0..self.n {
            acc = acc.add(self.get(i, i));
        }
        acc
    }

    pub fn direct_sum(&self, other: &Matrix) -> Matrix {
        assert!(self.field == other.field, "matrices over different fields");
        let n = self.n + other.n;
        let mut m = Matrix::zero(&self.field, n);
        for i in 0..self.n {
            for j in 0..self.n {
                m.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.n {
            for j in 0..other.n {
                m.set(self.n + i, self.n + j, other.get(i, j).clone());
            }
        }
        m
    }

    pub fn is_identity(&self) -> bool {
        self == &Matrix::identity(&self.field, self.n)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(FieldElement::is_zero)
    }

    pub fn is_scalar(&self) -> bool {
        let c = self.get(0, 0);
        for i in 0..self.n {
            for j in 0..self.n {
                let e = self.get(i, j);
                if i == j {
                    if e != c {
                        return false;
                    }
                } else if !e.is_zero() {
                    return false;
                }
            }
        }
        true
    }

    pub fn det(&self) -> FieldElement {
        let mut work = self.entries.clone();
        let n = self.n;
        let mut det = self.field.one();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !work[r * n + col].is_zero());
            let Some(pr) = pivot else {
                return self.field.zero();
            };
            if pr != col {
                for j in 0..n {
                    work.swap(pr * n + j, col * n + j);
                }
                det = det.neg();
            }
            let pv = work[col * n + col].clone();
            det = det.mul(&pv);
            let pv_inv = pv.inv().expect("pivot is nonzero");
            for r in col + 1..n {
                let factor = work[r * n + col].mul(&pv_inv);
                if factor.is_zero() {
                    continue;
                }
                for j in col..n {
                    let v = work[col * n + j].mul(&factor);
                    work[r * n + j] = work[r * n + j].sub(&v);
                }
            }
        }
        det
    }

    pub fn rank(&self) -> usize {
        let mut work = self.entries.clone();
        let n = self.n;
        let mut rank = 0;
        let mut row = 0;
        for col in 0..n {
            let pivot = (row..n).find(|&r| !work[r * n + col].is_zero());
            let Some(pr) = pivot else { continue };
            if pr != row {
                for j in 0..n {
                    work.swap(pr * n + j, row * n + j);
                }
            }
            let pv_inv = work[row * n + col].inv().expect("pivot is nonzero");
            for r in row + 1..n {
                let factor = work[r * n + col].mul(&pv_inv);
                if factor.is_zero() {
                    continue;
                }
                for j in col..n {
                    let v = work[row * n + j].mul(&factor);
                    work[r * n + j] = work[r * n + j].sub(&v);
                }
            }
            rank += 1;
            row += 1;
        }
        rank
    }

    /// Inverse by Gauss-Jordan elimination; errors when singular.
    pub fn inverse(&self) -> Result<Matrix> {
        let n = self.n;
        let mut work = self.entries.clone();
        let mut inv = Matrix::identity(&self.field, n).entries;
        for col in 0..n {
            let pivot = (col..n).find(|&r| !work[r * n + col].is_zero());
            let Some(pr) = pivot else {
                return Err(Error::Singular);
            };
            if pr != col {
                for j in 0..n {
                    work.swap(pr * n + j, col * n + j);
                    inv.swap(pr * n + j, col * n + j);
                }
            }
            let pv_inv = work[col * n + col].inv()?;
            for j in 0..n {
                work[col * n + j] = work[col * n + j].mul(&pv_inv);
                inv[col * n + j] = inv[col * n + j].mul(&pv_inv);
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = work[r * n + col].clone();
                if factor.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let v = work[col * n + j].mul(&factor);
                    work[r * n + j] = work[r * n + j].sub(&v);
                    let v = inv[col * n + j].mul(&factor);
                    inv[r * n + j] = inv[r * n + j].sub(&v);
                }
            }
        }
        Ok(Matrix { field: self.field.clone(), n, entries: inv })
    }

    /// P A P^{-1}; errors when P is singular.
    pub fn conjugate(&self, p: &Matrix) -> Result<Matrix> {
        self.same_shape(p);
        Ok(p.mul(self).mul(&p.inverse()?))
    }

    /// det(x I - A), computed exactly over F[x].
    pub fn charpoly(&self) -> Polynomial {
        let x = Polynomial::x(&self.field);
        let entries: Vec<Polynomial> = (0..self.n * self.n)
            .map(|idx| {
                let (i, j) = (idx / self.n, idx % self.n);
                let c = Polynomial::constant(self.get(i, j).neg());
                if i == j {
                    x.add(&c)
                } else {
                    c
                }
            })
            .collect();
        poly_mat_det(&self.field, &entries, self.n)
    }

    /// Smallest-degree monic polynomial annihilating the matrix; found by
    /// testing the divisors of the characteristic polynomial.
    pub fn minpoly(&self) -> Polynomial {
        let ch = self.charpoly();
        let fac = ch.factor().expect("charpoly is nonzero");
        let mut candidates = vec![Polynomial::one(&self.field)];
        for (base, mult) in &fac.factors {
            let mut next = Vec::new();
            for c in &candidates {
                for e in 0..=*mult {
                    next.push(c.mul(&base.pow(e)));
                }
            }
            candidates = next;
        }
        candidates.sort_by_key(poly_sort_key);
        for cand in candidates {
            if cand.degree() == Some(0) {
                continue;
            }
            if self.eval_poly(&cand).is_zero() {
                return cand;
            }
        }
        unreachable!("the characteristic polynomial annihilates the matrix")
    }

    /// p(A) by Horner evaluation.
    pub fn eval_poly(&self, p: &Polynomial) -> Matrix {
        let mut acc = Matrix::zero(&self.field, self.n);
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(self);
            for i in 0..self.n {
                acc.set(i, i, acc.get(i, i).add(c));
            }
        }
        acc
    }

    pub fn is_involution(&self) -> bool {
        self.mul(self).is_identity()
    }

    /// Nilpotency via the characteristic polynomial: A is nilpotent exactly
    /// when charpoly(A) = x^n, independent of the field size.
    pub fn is_nilpotent(&self) -> bool {
        self.charpoly() == Polynomial::monomial(self.field.one(), self.n)
    }

    /// det(I + t A) as a polynomial in t.
    pub fn pencil_det(&self) -> Polynomial {
        let entries: Vec<Polynomial> = (0..self.n * self.n)
            .map(|idx| {
                let (i, j) = (idx / self.n, idx % self.n);
                let lin = Polynomial::monomial(self.get(i, j).clone(), 1);
                if i == j {
                    lin.add(&Polynomial::one(&self.field))
                } else {
                    lin
                }
            })
            .collect();
        poly_mat_det(&self.field, &entries, self.n)
    }
}

/// Determinant of a matrix with polynomial entries, by Laplace expansion
/// memoized over column subsets. Exact in any characteristic.
pub(crate) fn poly_mat_det(field: &Field, entries: &[Polynomial], n: usize) -> Polynomial {
    assert!(n <= 16, "polynomial determinant expansion capped at n = 16");
    let full = (1u32 << n) - 1;
    let mut memo: Vec<Option<Polynomial>> = vec![None; 1 << n];
    memo[0] = Some(Polynomial::one(field));
    det_rec(field, entries, n, full, &mut memo)
}

fn det_rec(
    field: &Field,
    entries: &[Polynomial],
    n: usize,
    mask: u32,
    memo: &mut Vec<Option<Polynomial>>,
) -> Polynomial {
    if let Some(v) = &memo[mask as usize] {
        return v.clone();
    }
    let cols = mask.count_ones() as usize;
    let row = n - cols;
    let mut acc = Polynomial::zero(field);
    let mut sign_flip = false;
    for j in 0..n {
        if mask & (1 << j) == 0 {
            continue;
        }
        let e = &entries[row * n + j];
        if !e.is_zero() {
            let sub = det_rec(field, entries, n, mask & !(1 << j), memo);
            let term = e.mul(&sub);
            acc = if sign_flip { acc.sub(&term) } else { acc.add(&term) };
        }
        sign_flip = !sign_flip;
    }
    memo[mask as usize] = Some(acc.clone());
    acc
}

impl fmt::Display for Matrix {
    /// Canonical text form `GF(q):[[a,b],[c,d]]`; round-trips through parsing.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:[", self.field)?;
        for i in 0..self.n {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for j in 0..self.n {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
