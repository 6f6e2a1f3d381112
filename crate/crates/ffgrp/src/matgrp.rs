//! Matrices over `F_q`, projective canonical forms, and element-order
//! computation: the structured algorithm that factors the minimal
//! polynomial into irreducible blocks, and a naive repeated-multiplication
//! oracle to check it against.

use std::fmt;

use crate::arith::{divisors, factor, lcm_u128};
use crate::error::Error;
use crate::gf::{Field, FieldElem};
use crate::polyring::{factorize, poly_lcm, poly_xgcd, Poly};
use crate::Result;

/// Dense `n x n` matrix over a [`Field`], row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    field: Field,
    n: usize,
    entries: Vec<FieldElem>,
}

impl std::hash::Hash for Mat {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.field.hash(state);
        self.n.hash(state);
        for e in &self.entries {
            e.coeffs().hash(state);
        }
    }
}

impl Mat {
    pub fn from_entries(field: &Field, n: usize, entries: Vec<FieldElem>) -> Mat {
        assert_eq!(entries.len(), n * n);
        Mat {
            field: field.clone(),
            n,
            entries,
        }
    }

    /// Rows of prime-subfield integers (negative values reduce mod p).
    pub fn from_int_rows(field: &Field, rows: &[Vec<i64>]) -> Mat {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            assert_eq!(row.len(), n, "matrix must be square");
            entries.extend(row.iter().map(|&v| field.from_i64(v)));
        }
        Mat::from_entries(field, n, entries)
    }

    pub fn identity(field: &Field, n: usize) -> Mat {
        let mut entries = vec![field.zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = field.one();
        }
        Mat::from_entries(field, n, entries)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElem {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElem) {
        self.entries[i * self.n + j] = v;
    }

    pub fn mul(&self, rhs: &Mat) -> Mat {
        debug_assert_eq!(self.n, rhs.n);
        let n = self.n;
        let k = self.field.k() as usize;
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = vec![0u64; k];
                for l in 0..n {
                    crate::gf::raw_mul_add(
                        &self.field,
                        self.entries[i * n + l].coeffs(),
                        rhs.entries[l * n + j].coeffs(),
                        &mut acc,
                    );
                }
                out.push(crate::gf::elem_from_reduced(&self.field, acc));
            }
        }
        Mat {
            field: self.field.clone(),
            n,
            entries: out,
        }
    }

    pub fn mul_vec(&self, v: &[FieldElem]) -> Vec<FieldElem> {
        let n = self.n;
        let k = self.field.k() as usize;
        (0..n)
            .map(|i| {
                let mut acc = vec![0u64; k];
                for (a, vj) in self.entries[i * n..(i + 1) * n].iter().zip(v) {
                    crate::gf::raw_mul_add(&self.field, a.coeffs(), vj.coeffs(), &mut acc);
                }
                crate::gf::elem_from_reduced(&self.field, acc)
            })
            .collect()
    }

    pub fn scale(&self, c: &FieldElem) -> Mat {
        let k = self.field.k() as usize;
        let entries = self
            .entries
            .iter()
            .map(|e| {
                let mut acc = vec![0u64; k];
                crate::gf::raw_mul_add(&self.field, e.coeffs(), c.coeffs(), &mut acc);
                crate::gf::elem_from_reduced(&self.field, acc)
            })
            .collect();
        Mat {
            field: self.field.clone(),
            n: self.n,
            entries,
        }
    }

    pub fn add(&self, rhs: &Mat) -> Mat {
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a.add(b))
            .collect();
        Mat::from_entries(&self.field, self.n, entries)
    }

    pub fn pow(&self, mut e: u64) -> Mat {
        let mut acc = Mat::identity(&self.field, self.n);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        *self == Mat::identity(&self.field, self.n)
    }

    pub fn det(&self) -> FieldElem {
        let n = self.n;
        let mut a = self.entries.clone();
        let mut det = self.field.one();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r * n + col].is_zero());
            let Some(pivot) = pivot else {
                return self.field.zero();
            };
            if pivot != col {
                for j in 0..n {
                    a.swap(pivot * n + j, col * n + j);
                }
                det = det.neg();
            }
            let pv = a[col * n + col].clone();
            det = det.mul(&pv);
            let pv_inv = pv.inv();
            for r in col + 1..n {
                let factor = a[r * n + col].mul(&pv_inv);
                if factor.is_zero() {
                    continue;
                }
                for j in col..n {
                    let t = a[col * n + j].mul(&factor);
                    a[r * n + j] = a[r * n + j].sub(&t);
                }
            }
        }
        det
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self) -> Result<Mat> {
        let n = self.n;
        let mut a = self.entries.clone();
        let mut b = Mat::identity(&self.field, n).entries;
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a[r * n + col].is_zero())
                .ok_or(Error::NotInvertible)?;
            if pivot != col {
                for j in 0..n {
                    a.swap(pivot * n + j, col * n + j);
                    b.swap(pivot * n + j, col * n + j);
                }
            }
            let inv = a[col * n + col].inv();
            for j in 0..n {
                a[col * n + j] = a[col * n + j].mul(&inv);
                b[col * n + j] = b[col * n + j].mul(&inv);
            }
            for r in 0..n {
                if r == col || a[r * n + col].is_zero() {
                    continue;
                }
                let f = a[r * n + col].clone();
                for j in 0..n {
                    let ta = a[col * n + j].mul(&f);
                    a[r * n + j] = a[r * n + j].sub(&ta);
                    let tb = b[col * n + j].mul(&f);
                    b[r * n + j] = b[r * n + j].sub(&tb);
                }
            }
        }
        Ok(Mat::from_entries(&self.field, n, b))
    }
}

impl fmt::Display for Mat {
    /// Matrix literal format: rows separated by `;`, entries by `,`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            if i > 0 {
                write!(f, ";")?;
            }
            for j in 0..self.n {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat({self})")
    }
}

/// Parses the matrix literal format: rows split on `;`, entries on `,`;
/// an entry is a (possibly negative) integer, or a bracketed
/// coefficient vector like `[1 0 2]` for extension fields.
pub fn parse_mat(field: &Field, s: &str) -> Result<Mat> {
    let rows: Vec<&str> = s.split(';').collect();
    let n = rows.len();
    let mut entries = Vec::with_capacity(n * n);
    for row in &rows {
        let cells = split_row(row)?;
        if cells.len() != n {
            return Err(Error::Parse(format!(
                "expected {n} entries per row, got {}",
                cells.len()
            )));
        }
        for cell in cells {
            entries.push(parse_entry(field, &cell)?);
        }
    }
    Ok(Mat::from_entries(field, n, entries))
}

/// Splits a row on commas that are not inside brackets.
fn split_row(row: &str) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut depth = 0i32;
    for ch in row.chars() {
        match ch {
            '[' => {
                depth += 1;
                cur.push(ch);
            }
            ']' => {
                depth -= 1;
                if depth < 0 {
                    return Err(Error::Parse("unbalanced brackets".into()));
                }
                cur.push(ch);
            }
            ',' if depth == 0 => {
                out.push(cur.trim().to_string());
                cur = String::new();
            }
            _ => cur.push(ch),
        }
    }
    if depth != 0 {
        return Err(Error::Parse("unbalanced brackets".into()));
    }
    out.push(cur.trim().to_string());
    Ok(out)
}

fn parse_entry(field: &Field, cell: &str) -> Result<FieldElem> {
    let cell = cell.trim();
    if let Some(inner) = cell.strip_prefix('[').and_then(|c| c.strip_suffix(']')) {
        let p = field.p() as i64;
        let coeffs: Vec<u64> = inner
            .split([' ', ','])
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map(|v| v.rem_euclid(p) as u64)
                    .map_err(|_| Error::Parse(format!("bad coefficient {t:?}")))
            })
            .collect::<Result<_>>()?;
        if coeffs.len() > field.k() as usize {
            return Err(Error::Parse(format!(
                "entry has {} coefficients but k = {}",
                coeffs.len(),
                field.k()
            )));
        }
        Ok(field.from_coeffs(&coeffs))
    } else {
        let v: i64 = cell
            .parse()
            .map_err(|_| Error::Parse(format!("bad entry {cell:?}")))?;
        Ok(field.from_i64(v))
    }
}

// ---------------------------------------------------------------------------
// Projective matrices
// ---------------------------------------------------------------------------

/// Element of `PGL_n(F_q)` as a canonicalized matrix: the first nonzero
/// entry in row-major order is scaled to 1, so projective equality is
/// value equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ProjMat {
    rep: Mat,
}

impl ProjMat {
    pub fn new(m: Mat) -> ProjMat {
        let lead = m
            .entries
            .iter()
            .find(|e| !e.is_zero())
            .expect("zero matrix has no projective class")
            .clone();
        let rep = if lead.is_one() { m } else { m.scale(&lead.inv()) };
        ProjMat { rep }
    }

    pub fn rep(&self) -> &Mat {
        &self.rep
    }

    pub fn mul(&self, rhs: &ProjMat) -> ProjMat {
        ProjMat::new(self.rep.mul(&rhs.rep))
    }

    pub fn inverse(&self) -> Result<ProjMat> {
        Ok(ProjMat::new(self.rep.inverse()?))
    }

    pub fn is_identity(&self) -> bool {
        self.rep.is_identity()
    }
}

impl fmt::Display for ProjMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rep)
    }
}

impl fmt::Debug for ProjMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ProjMat({})", self.rep)
    }
}

/// True iff `m` is a nonzero scalar multiple of the identity.
pub fn is_scalar(m: &Mat) -> bool {
    let lambda = m.get(0, 0);
    if lambda.is_zero() {
        return false;
    }
    for i in 0..m.n {
        for j in 0..m.n {
            let e = m.get(i, j);
            if i == j {
                if e != lambda {
                    return false;
                }
            } else if !e.is_zero() {
                return false;
            }
        }
    }
    true
}

// ---------------------------------------------------------------------------
// Minimal polynomial and element order
// ---------------------------------------------------------------------------

/// Monic polynomial of least degree with `mu(m) = 0`, computed from
/// Krylov linear dependencies: the lcm of the annihilators of the
/// standard basis vectors.
pub fn minimal_polynomial(m: &Mat) -> Poly {
    let field = m.field.clone();
    let n = m.n;
    let mut mu = Poly::one(&field);
    for i in 0..n {
        let mut e = vec![field.zero(); n];
        e[i] = field.one();
        if poly_apply_vec(&mu, m, &e).iter().all(|c| c.is_zero()) {
            continue;
        }
        let ann = annihilator(m, &e);
        mu = poly_lcm(&mu, &ann).expect("nonzero annihilators");
        if mu.deg() == n {
            break;
        }
    }
    mu
}

/// Horner evaluation of `p(m) * v` without forming `p(m)`.
fn poly_apply_vec(p: &Poly, m: &Mat, v: &[FieldElem]) -> Vec<FieldElem> {
    let field = m.field.clone();
    let mut acc = vec![field.zero(); m.n];
    for c in p.coeffs().iter().rev() {
        acc = m.mul_vec(&acc);
        if !c.is_zero() {
            for (a, vi) in acc.iter_mut().zip(v) {
                *a = a.add(&c.mul(vi));
            }
        }
    }
    acc
}

/// Least-degree monic annihilator of the Krylov sequence v, m v, m^2 v, ...
fn annihilator(m: &Mat, start: &[FieldElem]) -> Poly {
    let field = m.field.clone();
    let n = m.n;
    // echelon rows with the combination over sequence indices that produced them
    let mut rows: Vec<(Vec<FieldElem>, usize, Vec<FieldElem>)> = Vec::new();
    let mut cur = start.to_vec();
    let mut t = 0usize;
    loop {
        let mut vec = cur.clone();
        let mut combo = vec![field.zero(); t + 1];
        combo[t] = field.one();
        for (rvec, rpiv, rcombo) in &rows {
            let c = vec[*rpiv].clone();
            if c.is_zero() {
                continue;
            }
            for (v, rv) in vec.iter_mut().zip(rvec) {
                *v = v.sub(&c.mul(rv));
            }
            for (i, rc) in rcombo.iter().enumerate() {
                combo[i] = combo[i].sub(&c.mul(rc));
            }
        }
        match vec.iter().position(|x| !x.is_zero()) {
            None => return Poly::new(&field, combo), // monic by construction
            Some(piv) => {
                let inv = vec[piv].inv();
                for v in vec.iter_mut() {
                    *v = v.mul(&inv);
                }
                for c in combo.iter_mut() {
                    *c = c.mul(&inv);
                }
                rows.push((vec, piv, combo));
            }
        }
        cur = m.mul_vec(&cur);
        t += 1;
        assert!(t <= n, "Krylov sequence dependent by step n");
    }
}

/// One irreducible block of the order decomposition.
#[derive(Clone, Debug)]
pub struct OrderBlock {
    /// Irreducible factor of the minimal polynomial.
    pub factor: Poly,
    pub degree: usize,
    /// Multiplicative order of a root: divides `q^degree - 1`.
    pub block_order: u64,
}

/// Block data extracted from the minimal polynomial, from which the
/// element order is assembled as `p^s * lcm(block orders)`.
#[derive(Clone, Debug)]
pub struct OrderDecomposition {
    pub blocks: Vec<OrderBlock>,
    /// `p^s` where `s = ceil(log_p(max multiplicity))`; 1 for semisimple input.
    pub unipotent_exponent: u64,
    pub total_order: u64,
}

impl OrderDecomposition {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "order": self.total_order,
            "unipotent_exponent": self.unipotent_exponent,
            "blocks": self.blocks.iter().map(|b| serde_json::json!({
                "factor": b.factor.to_string(),
                "factor_coeffs": b.factor.to_json(),
                "degree": b.degree,
                "block_order": b.block_order,
            })).collect::<Vec<_>>(),
        })
    }
}

/// Companion matrix of a monic polynomial of positive degree.
pub fn companion(f: &Poly) -> Mat {
    assert!(f.is_monic() && f.deg() >= 1);
    let field = f.field();
    let n = f.deg();
    let mut m = Mat::from_entries(field, n, vec![field.zero(); n * n]);
    for i in 1..n {
        m.set(i, i - 1, field.one());
    }
    for i in 0..n {
        m.set(i, n - 1, f.coeff(i).neg());
    }
    m
}

/// Multiplicative order of (the class of) x in `F_q[x]/(mu)` for an
/// irreducible `mu` not equal to x, i.e. the common order of the roots.
pub(crate) fn root_order(mu: &Poly) -> Result<u64> {
    let field = mu.field();
    let d = mu.deg() as u32;
    let qd = (field.q() as u128)
        .checked_pow(d)
        .filter(|&v| v <= u64::MAX as u128)
        .ok_or_else(|| Error::CapExceeded(format!("q^{d} overflows the order computation")))?;
    let mut t = qd as u64 - 1;
    let x = Poly::x(field);
    let one = Poly::one(field);
    for (r, _) in factor(t) {
        while t.is_multiple_of(r) && x.pow_mod_u64(t / r, mu) == one {
            t /= r;
        }
    }
    Ok(t)
}

/// Exact order of an invertible matrix together with its block
/// decomposition. The semisimple part contributes `lcm` of the block
/// orders; a non-semisimple input additionally contributes the smallest
/// `p^s` at least the maximal multiplicity in the minimal polynomial.
pub fn element_order_gl(m: &Mat) -> Result<(u64, OrderDecomposition)> {
    if m.det().is_zero() {
        return Err(Error::NotInvertible);
    }
    let field = m.field();
    let mu = minimal_polynomial(m);
    let fac = factorize(&mu)?;
    let max_mult = fac.factors.iter().map(|(_, e)| *e).max().unwrap_or(1);
    let mut unipotent_exponent = 1u64;
    while unipotent_exponent < max_mult as u64 {
        unipotent_exponent *= field.p();
    }
    let mut blocks = Vec::new();
    let mut semisimple = 1u128;
    for (mu_i, _) in &fac.factors {
        let block_order = root_order(mu_i)?;
        semisimple = lcm_u128(semisimple, block_order as u128);
        blocks.push(OrderBlock {
            factor: mu_i.clone(),
            degree: mu_i.deg(),
            block_order,
        });
    }
    let total = semisimple
        .checked_mul(unipotent_exponent as u128)
        .filter(|&v| v <= u64::MAX as u128)
        .ok_or_else(|| Error::CapExceeded("element order overflows u64".into()))?;
    Ok((
        total as u64,
        OrderDecomposition {
            blocks,
            unipotent_exponent,
            total_order: total as u64,
        },
    ))
}

/// Order by repeated multiplication; the oracle for [`element_order_gl`].
pub fn element_order_naive(m: &Mat, cap: u64) -> Result<u64> {
    if m.det().is_zero() {
        return Err(Error::NotInvertible);
    }
    let mut cur = m.clone();
    let mut t = 1u64;
    while !cur.is_identity() {
        cur = cur.mul(m);
        t += 1;
        if t > cap {
            return Err(Error::CapExceeded(format!(
                "order exceeds naive cap {cap}"
            )));
        }
    }
    Ok(t)
}

/// Least `t` with `m^t` scalar: the smallest divisor of the affine order
/// whose power lands in the center.
pub fn projective_order(m: &ProjMat) -> Result<u64> {
    let (affine, _) = element_order_gl(&m.rep)?;
    for d in divisors(affine) {
        if is_scalar(&m.rep.pow(d)) {
            return Ok(d);
        }
    }
    unreachable!("the affine order itself always yields a scalar power");
}

/// CRT idempotents `h_i` for the coprime factors of a squarefree minimal
/// polynomial, evaluated at `m`: orthogonal projectors onto the invariant
/// blocks, summing to the identity.
pub fn crt_projectors(m: &Mat, mu: &Poly, factors: &[Poly]) -> Vec<Mat> {
    factors
        .iter()
        .map(|mu_i| {
            let mu_i_prime = mu.div_exact(mu_i);
            // a * mu_i' + b * mu_i = 1, so h_i = (a * mu_i')(m)
            let (d, a, _) = poly_xgcd(&mu_i_prime, mu_i).expect("coprime factors");
            debug_assert_eq!(d, Poly::one(mu.field()));
            poly_at_matrix(&a.mul(&mu_i_prime), m)
        })
        .collect()
}

/// Evaluate a polynomial at a matrix.
pub fn poly_at_matrix(p: &Poly, m: &Mat) -> Mat {
    let field = m.field().clone();
    let n = m.n();
    let mut acc = Mat::from_entries(&field, n, vec![field.zero(); n * n]);
    for c in p.coeffs().iter().rev() {
        acc = m.mul(&acc);
        if !c.is_zero() {
            let scaled = Mat::identity(&field, n).scale(c);
            acc = acc.add(&scaled);
        }
    }
    acc
}
