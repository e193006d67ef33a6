//! Rational canonical form in elementary-divisor shape, with an explicit
//! conjugator, and the similarity tests built on it.
//!
//! The decomposition is computed through the Smith normal form of xI - A
//! over F[x]. Tracking the inverse of the accumulated row operations yields
//! cyclic generators for the invariant factors; splitting each invariant
//! factor into prime powers with cofactor evaluation gives one generator per
//! elementary divisor, and the resulting basis conjugates A exactly onto the
//! block-diagonal sum of companion matrices.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::matrix::Matrix;
use crate::poly::{poly_sort_key, poly_to_text, Polynomial};

/// A positive power of a monic irreducible polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementaryDivisor {
    pub base: Polynomial,
    pub exponent: usize,
}

impl ElementaryDivisor {
    pub fn value(&self) -> Polynomial {
        self.base.pow(self.exponent)
    }

    pub fn degree(&self) -> usize {
        self.base.degree().expect("irreducible base") * self.exponent
    }
}

/// The multiset of elementary divisors of a matrix, canonically sorted.
/// Two matrices are similar exactly when their forms are equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    field: Field,
    n: usize,
    divisors: Vec<ElementaryDivisor>,
}

impl CanonicalForm {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn divisors(&self) -> &[ElementaryDivisor] {
        &self.divisors
    }

    /// Block-diagonal direct sum of the companion matrices of the divisors,
    /// in canonical order.
    pub fn assembly(&self) -> Matrix {
        let mut blocks = self
            .divisors
            .iter()
            .map(|d| Matrix::companion(&d.value()).expect("divisor is monic of degree >= 1"));
        let first = blocks.next().expect("at least one divisor");
        blocks.fold(first, |acc, b| acc.direct_sum(&b))
    }
}

impl fmt::Display for CanonicalForm {
    /// Text form `rcf{poly[...]^e, ...}` with the base-power split explicit.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rcf{{")?;
        for (i, d) in self.divisors.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}^{}", poly_to_text(&d.base), d.exponent)?;
        }
        write!(f, "}}")
    }
}

fn mat_vec(m: &Matrix, v: &[FieldElement]) -> Vec<FieldElement> {
    let n = m.dim();
    (0..n)
        .map(|i| {
            let mut acc = m.field().zero();
            for j in 0..n {
                let a = m.get(i, j);
                if !a.is_zero() {
                    acc = acc.add(&a.mul(&v[j]));
                }
            }
            acc
        })
        .collect()
}

/// Rational canonical form of `a` together with an invertible conjugator P
/// satisfying P a P^{-1} = form.assembly(). The identity is re-checked
/// before returning.
pub fn rcf(a: &Matrix) -> (CanonicalForm, Matrix) {
    let n = a.dim();
    let field = a.field().clone();
    let idx = |i: usize, j: usize| i * n + j;

    // m = xI - a; w tracks the inverse of the accumulated row operations.
    let x = Polynomial::x(&field);
    let mut m: Vec<Polynomial> = (0..n * n)
        .map(|t| {
            let (i, j) = (t / n, t % n);
            let c = Polynomial::constant(a.get(i, j).neg());
            if i == j {
                x.add(&c)
            } else {
                c
            }
        })
        .collect();
    let mut w: Vec<Polynomial> = (0..n * n)
        .map(|t| {
            if t / n == t % n {
                Polynomial::one(&field)
            } else {
                Polynomial::zero(&field)
            }
        })
        .collect();

    for t in 0..n {
        'outer: loop {
            // Minimal-degree nonzero pivot in the trailing block.
            let mut best: Option<(usize, usize, usize)> = None;
            for i in t..n {
                for j in t..n {
                    if let Some(d) = m[idx(i, j)].degree() {
                        if best.is_none_or(|(bd, _, _)| d < bd) {
                            best = Some((d, i, j));
                        }
                    }
                }
            }
            let Some((_, pi, pj)) = best else { break };
            if pi != t {
                for j in 0..n {
                    m.swap(idx(pi, j), idx(t, j));
                }
                for r in 0..n {
                    w.swap(idx(r, pi), idx(r, t));
                }
            }
            if pj != t {
                for i in 0..n {
                    m.swap(idx(i, pj), idx(i, t));
                }
            }

            let mut dirty = false;
            for i in t + 1..n {
                if m[idx(i, t)].is_zero() {
                    continue;
                }
                let (q, r) = m[idx(i, t)].divmod(&m[idx(t, t)]).expect("pivot nonzero");
                for j in t..n {
                    m[idx(i, j)] = m[idx(i, j)].sub(&q.mul(&m[idx(t, j)]));
                }
                for rr in 0..n {
                    w[idx(rr, t)] = w[idx(rr, t)].add(&q.mul(&w[idx(rr, i)]));
                }
                if !r.is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..n {
                if m[idx(t, j)].is_zero() {
                    continue;
                }
                let (q, r) = m[idx(t, j)].divmod(&m[idx(t, t)]).expect("pivot nonzero");
                for i in t..n {
                    m[idx(i, j)] = m[idx(i, j)].sub(&q.mul(&m[idx(i, t)]));
                }
                if !r.is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }

            // The pivot must divide the whole trailing block.
            for i in t + 1..n {
                for j in t + 1..n {
                    if !m[idx(t, t)].divides(&m[idx(i, j)]) {
                        for jj in t..n {
                            m[idx(t, jj)] = m[idx(t, jj)].add(&m[idx(i, jj)]);
                        }
                        for rr in 0..n {
                            w[idx(rr, i)] = w[idx(rr, i)].sub(&w[idx(rr, t)]);
                        }
                        continue 'outer;
                    }
                }
            }
            break;
        }

        // Normalize the pivot to be monic.
        if let Some(lead) = m[idx(t, t)].leading().cloned() {
            if !lead.is_one() {
                let inv = lead.inv().expect("leading coefficient nonzero");
                m[idx(t, t)] = m[idx(t, t)].scale(&inv);
                for r in 0..n {
                    w[idx(r, t)] = w[idx(r, t)].scale(&lead);
                }
            }
        }
    }

    // Cyclic generators for the nontrivial invariant factors.
    let max_deg = w.iter().filter_map(|p| p.degree()).max().unwrap_or(0);
    let mut powers = Vec::with_capacity(max_deg + 1);
    powers.push(Matrix::identity(&field, n));
    for _ in 0..max_deg {
        powers.push(powers.last().unwrap().mul(a));
    }

    let mut blocks: Vec<(ElementaryDivisor, Vec<FieldElement>)> = Vec::new();
    for t in 0..n {
        let d = m[idx(t, t)].clone();
        if d.degree().is_none_or(|deg| deg == 0) {
            continue;
        }
        // v = sum_j w[j][t](A) e_j
        let mut v = vec![field.zero(); n];
        for j in 0..n {
            let poly = &w[idx(j, t)];
            for (deg, c) in poly.coeffs().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for (row, entry) in v.iter_mut().enumerate() {
                    *entry = entry.add(&powers[deg].get(row, j).mul(c));
                }
            }
        }
        // Split the cyclic module along the prime powers of its annihilator.
        let fac = d.factor().expect("invariant factor is nonzero");
        for (base, mult) in fac.factors {
            let divisor = ElementaryDivisor { base, exponent: mult };
            let cofactor = d.divmod(&divisor.value()).expect("divides").0;
            let gen = mat_vec(&cofactor_matrix(a, &cofactor), &v);
            blocks.push((divisor, gen));
        }
    }

    blocks.sort_by(|x, y| {
        (poly_sort_key(&x.0.base), x.0.exponent).cmp(&(poly_sort_key(&y.0.base), y.0.exponent))
    });

    let total: usize = blocks.iter().map(|(d, _)| d.degree()).sum();
    assert_eq!(total, n, "elementary divisor degrees must sum to the dimension");

    // Basis: per block, the Krylov vectors of its generator.
    let mut basis = Matrix::zero(&field, n);
    let mut col = 0;
    for (div, gen) in &blocks {
        let mut v = gen.clone();
        for _ in 0..div.degree() {
            for (row, entry) in v.iter().enumerate() {
                basis.set(row, col, entry.clone());
            }
            v = mat_vec(a, &v);
            col += 1;
        }
    }

    let conjugator = basis
        .inverse()
        .expect("cyclic decomposition yields an invertible basis");
    let form = CanonicalForm {
        field,
        n,
        divisors: blocks.into_iter().map(|(d, _)| d).collect(),
    };
    assert_eq!(
        a.conjugate(&conjugator).expect("conjugator is invertible"),
        form.assembly(),
        "conjugation identity failed"
    );
    (form, conjugator)
}

fn cofactor_matrix(a: &Matrix, cofactor: &Polynomial) -> Matrix {
    a.eval_poly(cofactor)
}

/// Similarity via equality of canonical forms.
pub fn similar(a: &Matrix, b: &Matrix) -> bool {
    assert!(a.field() == b.field() && a.dim() == b.dim(), "shape mismatch");
    rcf(a).0 == rcf(b).0
}

/// When a ~ b, an invertible P with a = P b P^{-1}.
pub fn conjugator_between(a: &Matrix, b: &Matrix) -> Option<Matrix> {
    let (fa, pa) = rcf(a);
    let (fb, pb) = rcf(b);
    if fa != fb {
        return None;
    }
    let p = pa.inverse().expect("conjugator invertible").mul(&pb);
    debug_assert_eq!(&b.conjugate(&p).expect("invertible"), a);
    Some(p)
}

/// Whether an invertible matrix is similar to its own inverse.
pub fn similar_to_inverse(a: &Matrix) -> Result<bool> {
    if a.det().is_zero() {
        return Err(Error::Singular);
    }
    Ok(similar(a, &a.inverse()?))
}
