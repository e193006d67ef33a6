//! Brute-force enumeration kernels: involution enumeration, product
//! closures for the two/three/four-involution sets, full-space scans, and
//! the left-multiplier census.
//!
//! The kernels run on index-packed matrices with precomputed field tables;
//! everything exposed converts back to exact [`Matrix`] values. A
//! [`CensusCap`] gates both the field size and the scan space q^(n^2).

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::involution::SetId;
use crate::matrix::Matrix;

/// Bounds under which exhaustive enumeration is permitted.
#[derive(Clone, Copy, Debug)]
pub struct CensusCap {
    /// Largest field size usable in enumeration-based operations.
    pub max_field_size: u64,
    /// Largest full matrix space q^(n^2) for scans and product closures.
    pub max_space: u64,
}

impl Default for CensusCap {
    fn default() -> Self {
        CensusCap {
            max_field_size: 11,
            max_space: 20_000_000,
        }
    }
}

impl CensusCap {
    pub fn with_field_cap(max_field_size: u64) -> Self {
        CensusCap { max_field_size, ..Default::default() }
    }
}

/// Field tables plus packing helpers for n-by-n matrices with entries
/// indexed in the canonical element order.
pub struct Scan {
    field: Field,
    n: usize,
    q: usize,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
    elems: Vec<FieldElement>,
}

impl Scan {
    pub fn new(field: &Field, n: usize, cap: &CensusCap) -> Result<Scan> {
        let q = field.order();
        if q > cap.max_field_size {
            return Err(Error::CapExceeded(format!(
                "field size {q} exceeds the census cap {}",
                cap.max_field_size
            )));
        }
        if q > 256 {
            return Err(Error::CapExceeded(format!("field size {q} too large for scan tables")));
        }
        let elems = field.elements();
        let qu = q as usize;
        let mut add = vec![0u16; qu * qu];
        let mut mul = vec![0u16; qu * qu];
        let mut neg = vec![0u16; qu];
        let mut inv = vec![0u16; qu];
        for (i, a) in elems.iter().enumerate() {
            neg[i] = field.index_of(&a.neg()) as u16;
            if !a.is_zero() {
                inv[i] = field.index_of(&a.inv().expect("nonzero")) as u16;
            }
            for (j, b) in elems.iter().enumerate() {
                add[i * qu + j] = field.index_of(&a.add(b)) as u16;
                mul[i * qu + j] = field.index_of(&a.mul(b)) as u16;
            }
        }
        Ok(Scan { field: field.clone(), n, q: qu, add, mul, neg, inv, elems })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> usize {
        self.q
    }

    /// q^(n^2), saturating.
    pub fn space(&self) -> u64 {
        let mut s = 1u64;
        for _ in 0..self.n * self.n {
            s = s.saturating_mul(self.q as u64);
        }
        s
    }

    pub fn check_space(&self, cap: &CensusCap) -> Result<()> {
        if self.space() > cap.max_space {
            return Err(Error::CapExceeded(format!(
                "scan space {} exceeds the census cap {}",
                self.space(),
                cap.max_space
            )));
        }
        Ok(())
    }

    #[inline]
    pub fn addi(&self, a: u16, b: u16) -> u16 {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn muli(&self, a: u16, b: u16) -> u16 {
        self.mul[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn negi(&self, a: u16) -> u16 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn invi(&self, a: u16) -> u16 {
        self.inv[a as usize]
    }

    /// Row-major entry indices → base-q key. Keys enumerate the whole
    /// matrix space as 0..space().
    pub fn key_of_slice(&self, e: &[u16]) -> u64 {
        let mut key = 0u64;
        for &v in e.iter().rev() {
            key = key * self.q as u64 + v as u64;
        }
        key
    }

    pub fn slice_of_key(&self, mut key: u64, out: &mut [u16]) {
        for v in out.iter_mut() {
            *v = (key % self.q as u64) as u16;
            key /= self.q as u64;
        }
    }

    pub fn pack(&self, m: &Matrix) -> Vec<u16> {
        assert!(m.field() == &self.field && m.dim() == self.n, "shape mismatch");
        m.entries().iter().map(|e| self.field.index_of(e) as u16).collect()
    }

    pub fn key_of(&self, m: &Matrix) -> u64 {
        self.key_of_slice(&self.pack(m))
    }

    pub fn unpack(&self, e: &[u16]) -> Matrix {
        let mut m = Matrix::zero(&self.field, self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                m.set(i, j, self.elems[e[i * self.n + j] as usize].clone());
            }
        }
        m
    }

    pub fn matrix_of_key(&self, key: u64) -> Matrix {
        let mut e = vec![0u16; self.n * self.n];
        self.slice_of_key(key, &mut e);
        self.unpack(&e)
    }

    pub fn mat_mul(&self, a: &[u16], b: &[u16], out: &mut [u16]) {
        let n = self.n;
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0u16;
                for l in 0..n {
                    acc = self.addi(acc, self.muli(a[i * n + l], b[l * n + j]));
                }
                out[i * n + j] = acc;
            }
        }
    }

    /// Determinant index by in-place elimination on a scratch copy.
    pub fn det(&self, m: &[u16]) -> u16 {
        let n = self.n;
        let mut w = m.to_vec();
        let one = self.field.index_of(&self.field.one()) as u16;
        let mut det = one;
        for col in 0..n {
            let Some(pr) = (col..n).find(|&r| w[r * n + col] != 0) else {
                return 0;
            };
            if pr != col {
                for j in 0..n {
                    w.swap(pr * n + j, col * n + j);
                }
                det = self.muli(det, self.negi(one));
            }
            let pv = w[col * n + col];
            det = self.muli(det, pv);
            let pv_inv = self.invi(pv);
            for r in col + 1..n {
                let factor = self.muli(w[r * n + col], pv_inv);
                if factor == 0 {
                    continue;
                }
                for j in col..n {
                    let sub = self.negi(self.muli(w[col * n + j], factor));
                    w[r * n + j] = self.addi(w[r * n + j], sub);
                }
            }
        }
        det
    }

    pub fn identity_slice(&self) -> Vec<u16> {
        let one = self.field.index_of(&self.field.one()) as u16;
        let mut e = vec![0u16; self.n * self.n];
        for i in 0..self.n {
            e[i * self.n + i] = one;
        }
        e
    }
}

// ---------------------------------------------------------------------------
// Involution enumeration

/// All J with J^2 = I, duplicate-free, in a deterministic order.
///
/// In odd characteristic an involution is determined by its pair of
/// complementary +1/-1 eigenspaces, so the list is generated from subspace
/// pairs (the conjugacy orbits of the diag(+-1) representatives). In
/// characteristic two J = I + K with K^2 = 0, enumerated by a filtered
/// exhaustive scan.
pub fn enumerate_involutions(field: &Field, n: usize, cap: &CensusCap) -> Result<Vec<Matrix>> {
    let scan = Scan::new(field, n, cap)?;
    if field.is_char_two() {
        scan.check_space(cap)?;
        let mut out = Vec::new();
        let mut e = vec![0u16; n * n];
        let mut sq = vec![0u16; n * n];
        let ident = scan.identity_slice();
        for key in 0..scan.space() {
            scan.slice_of_key(key, &mut e);
            scan.mat_mul(&e, &e, &mut sq);
            if sq == ident {
                out.push(scan.unpack(&e));
            }
        }
        Ok(out)
    } else {
        // Work bound: the number of subspace pairs examined.
        let mut work = 0u64;
        let counts: Vec<u64> = (0..=n).map(|k| subspace_count(field.order(), n, k)).collect();
        for k in 0..=n {
            work = work.saturating_add(counts[k].saturating_mul(counts[n - k]));
        }
        if work > cap.max_space {
            return Err(Error::CapExceeded(format!(
                "involution enumeration would examine {work} subspace pairs"
            )));
        }
        let mut out = Vec::new();
        for k in 0..=n {
            let plus = subspace_bases(field, n, k);
            let minus = subspace_bases(field, n, n - k);
            for vp in &plus {
                for vm in &minus {
                    if let Some(j) = involution_from_eigenspaces(field, n, vp, vm) {
                        out.push(j);
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Gaussian binomial: the number of k-dimensional subspaces of F_q^n.
pub fn subspace_count(q: u64, n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let mut num = 1u64;
    let mut den = 1u64;
    for i in 0..k {
        num *= q.pow((n - i) as u32) - 1;
        den *= q.pow((i + 1) as u32) - 1;
    }
    num / den
}

/// All k-dimensional subspaces as reduced row-echelon bases (k rows of
/// length n), enumerated deterministically.
pub fn subspace_bases(field: &Field, n: usize, k: usize) -> Vec<Vec<Vec<FieldElement>>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    // Pivot column sets in increasing bitmask order.
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != k {
            continue;
        }
        let pivots: Vec<usize> = (0..n).filter(|&c| mask & (1 << c) != 0).collect();
        // Free cells: (row r, col c) with c > pivots[r] and c not a pivot.
        let mut free: Vec<(usize, usize)> = Vec::new();
        for (r, &pc) in pivots.iter().enumerate() {
            for c in pc + 1..n {
                if mask & (1 << c) == 0 {
                    free.push((r, c));
                }
            }
        }
        let q = field.order();
        let mut counters = vec![0u64; free.len()];
        loop {
            let mut rows = vec![vec![field.zero(); n]; k];
            for (r, &pc) in pivots.iter().enumerate() {
                rows[r][pc] = field.one();
            }
            for (t, &(r, c)) in free.iter().enumerate() {
                rows[r][c] = field.element_from_index(counters[t]);
            }
            out.push(rows);
            let mut i = free.len();
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
                break;
            }
        }
    }
    out
}

/// The involution with +1-eigenspace spanned by `plus` and -1-eigenspace
/// spanned by `minus`, or None when the subspaces are not complementary.
fn involution_from_eigenspaces(
    field: &Field,
    n: usize,
    plus: &[Vec<FieldElement>],
    minus: &[Vec<FieldElement>],
) -> Option<Matrix> {
    let k = plus.len();
    debug_assert_eq!(k + minus.len(), n);
    let mut m = Matrix::zero(field, n);
    for (col, row) in plus.iter().chain(minus.iter()).enumerate() {
        for (r, v) in row.iter().enumerate() {
            m.set(r, col, v.clone());
        }
    }
    let m_inv = m.inverse().ok()?;
    let mut d = Matrix::identity(field, n);
    for i in k..n {
        d.set(i, i, field.one().neg());
    }
    Some(m.mul(&d).mul(&m_inv))
}

// ---------------------------------------------------------------------------
// Product closures

/// The exact sets of products of two, three, and four involutions, obtained
/// by closing the involution list under products.
pub struct ProductClosure {
    scan: Scan,
    involutions: Vec<Vec<u16>>,
    b: HashSet<u64>,
    c: HashSet<u64>,
    d: HashSet<u64>,
}

impl ProductClosure {
    pub fn scan(&self) -> &Scan {
        &self.scan
    }

    pub fn involution_count(&self) -> usize {
        self.involutions.len()
    }

    fn set(&self, id: SetId) -> &HashSet<u64> {
        match id {
            SetId::B => &self.b,
            SetId::C => &self.c,
            SetId::D => &self.d,
        }
    }

    pub fn len(&self, id: SetId) -> usize {
        self.set(id).len()
    }

    pub fn contains_key(&self, id: SetId, key: u64) -> bool {
        self.set(id).contains(&key)
    }

    pub fn contains(&self, id: SetId, m: &Matrix) -> bool {
        self.contains_key(id, self.scan.key_of(m))
    }

    pub fn sorted_keys(&self, id: SetId) -> Vec<u64> {
        let mut keys: Vec<u64> = self.set(id).iter().copied().collect();
        keys.sort_unstable();
        keys
    }

    pub fn sets_equal(&self, a: SetId, b: SetId) -> bool {
        self.set(a) == self.set(b)
    }

    pub fn matrices(&self, id: SetId) -> Vec<Matrix> {
        self.sorted_keys(id)
            .into_iter()
            .map(|k| self.scan.matrix_of_key(k))
            .collect()
    }
}

/// Build the B/C/D product closures over GF(q) at dimension n.
pub fn product_closure(field: &Field, n: usize, cap: &CensusCap) -> Result<ProductClosure> {
    let scan = Scan::new(field, n, cap)?;
    scan.check_space(cap)?;
    let involutions: Vec<Vec<u16>> = enumerate_involutions(field, n, cap)?
        .iter()
        .map(|m| scan.pack(m))
        .collect();

    let nn = n * n;
    let mut out = vec![0u16; nn];

    let mut b: HashSet<u64> = HashSet::new();
    for x in &involutions {
        for y in &involutions {
            scan.mat_mul(x, y, &mut out);
            b.insert(scan.key_of_slice(&out));
        }
    }

    let b_mats: Vec<Vec<u16>> = sorted_slices(&scan, &b);
    let mut c: HashSet<u64> = HashSet::new();
    for x in &involutions {
        for y in &b_mats {
            scan.mat_mul(x, y, &mut out);
            c.insert(scan.key_of_slice(&out));
        }
    }

    let c_mats: Vec<Vec<u16>> = sorted_slices(&scan, &c);
    let mut d: HashSet<u64> = HashSet::new();
    for x in &involutions {
        for y in &c_mats {
            scan.mat_mul(x, y, &mut out);
            d.insert(scan.key_of_slice(&out));
        }
    }

    Ok(ProductClosure { scan, involutions, b, c, d })
}

fn sorted_slices(scan: &Scan, keys: &HashSet<u64>) -> Vec<Vec<u16>> {
    let mut sorted: Vec<u64> = keys.iter().copied().collect();
    sorted.sort_unstable();
    sorted
        .into_iter()
        .map(|k| {
            let mut e = vec![0u16; scan.dim() * scan.dim()];
            scan.slice_of_key(k, &mut e);
            e
        })
        .collect()
}

/// The full left-multiplier census: all P with P * X in the three-involution
/// set for every X there. Exact; requires the product closure to fit the cap.
pub fn lambda_census(field: &Field, n: usize, cap: &CensusCap) -> Result<Vec<Matrix>> {
    let closure = product_closure(field, n, cap)?;
    let scan = closure.scan();
    let c_mats = sorted_slices(scan, &closure.c);
    let nn = n * n;
    let mut out = vec![0u16; nn];
    let mut members = Vec::new();
    // P * I must stay in the set, so candidates are confined to it.
    for p in &c_mats {
        let ok = c_mats.iter().all(|x| {
            scan.mat_mul(p, x, &mut out);
            closure.c.contains(&scan.key_of_slice(&out))
        });
        if ok {
            members.push(scan.unpack(p));
        }
    }
    Ok(members)
}

/// Keys of every matrix with det^2 = 1, by scanning the full space.
pub fn det_pm1_keys(scan: &Scan, cap: &CensusCap) -> Result<Vec<u64>> {
    scan.check_space(cap)?;
    let one = scan.field().index_of(&scan.field().one()) as u16;
    let minus_one = scan.negi(one);
    let mut e = vec![0u16; scan.dim() * scan.dim()];
    let mut keys = Vec::new();
    for key in 0..scan.space() {
        scan.slice_of_key(key, &mut e);
        let d = scan.det(&e);
        if d == one || d == minus_one {
            keys.push(key);
        }
    }
    Ok(keys)
}

/// Keys of every invertible matrix, by scanning the full space.
pub fn invertible_keys(scan: &Scan, cap: &CensusCap) -> Result<Vec<u64>> {
    scan.check_space(cap)?;
    let mut e = vec![0u16; scan.dim() * scan.dim()];
    let mut keys = Vec::new();
    for key in 0..scan.space() {
        scan.slice_of_key(key, &mut e);
        if scan.det(&e) != 0 {
            keys.push(key);
        }
    }
    Ok(keys)
}
