//! Univariate polynomial arithmetic over a [`Field`]: gcd and Bezout data,
//! squarefree decomposition, irreducibility testing, full factorization,
//! and deterministic search for irreducibles.

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::arith::{factor, Lcg};
use crate::error::Error;
use crate::gf::{Field, FieldElem};
use crate::Result;

/// Dense univariate polynomial, constant term first, no trailing zeros.
/// The zero polynomial has an empty coefficient vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: Field,
    coeffs: Vec<FieldElem>,
}

impl Poly {
    pub fn new(field: &Field, mut coeffs: Vec<FieldElem>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn zero(field: &Field) -> Poly {
        Poly::new(field, vec![])
    }

    pub fn one(field: &Field) -> Poly {
        Poly::new(field, vec![field.one()])
    }

    pub fn constant(c: FieldElem) -> Poly {
        let field = c.field().clone();
        Poly::new(&field, vec![c])
    }

    /// The monomial `x`.
    pub fn x(field: &Field) -> Poly {
        Poly::new(field, vec![field.zero(), field.one()])
    }

    /// Coefficients from prime-subfield integers, constant first.
    pub fn from_ints(field: &Field, ints: &[i64]) -> Poly {
        Poly::new(field, ints.iter().map(|&v| field.from_i64(v)).collect())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of a nonzero polynomial; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn deg(&self) -> usize {
        self.degree().expect("degree of the zero polynomial")
    }

    /// Leading coefficient; panics on zero.
    pub fn lc(&self) -> &FieldElem {
        self.coeffs.last().expect("leading coefficient of zero")
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn coeff(&self, i: usize) -> FieldElem {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn add(&self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i).add(&rhs.coeff(i))).collect();
        Poly::new(&self.field, coeffs)
    }

    pub fn sub(&self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i).sub(&rhs.coeff(i))).collect();
        Poly::new(&self.field, coeffs)
    }

    pub fn neg(&self) -> Poly {
        Poly::new(&self.field, self.coeffs.iter().map(|c| c.neg()).collect())
    }

    pub fn mul(&self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(&self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Poly::new(&self.field, out)
    }

    pub fn scale(&self, c: &FieldElem) -> Poly {
        Poly::new(&self.field, self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        self.scale(&self.lc().inv())
    }

    /// Euclidean division; panics if the divisor is zero.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.is_zero() || self.deg() < d.deg() {
            return (Poly::zero(&self.field), self.clone());
        }
        let lead_inv = d.lc().inv();
        let mut rem = self.coeffs.clone();
        let mut quo = vec![self.field.zero(); self.deg() - d.deg() + 1];
        for i in (d.deg()..=self.deg()).rev() {
            let c = rem[i].mul(&lead_inv);
            if c.is_zero() {
                continue;
            }
            quo[i - d.deg()] = c.clone();
            for (j, dj) in d.coeffs.iter().enumerate() {
                let idx = i - d.deg() + j;
                rem[idx] = rem[idx].sub(&c.mul(dj));
            }
        }
        (Poly::new(&self.field, quo), Poly::new(&self.field, rem))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.div_rem(d).1
    }

    pub fn div_exact(&self, d: &Poly) -> Poly {
        let (q, r) = self.div_rem(d);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn eval(&self, at: &FieldElem) -> FieldElem {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(at).add(c);
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero(&self.field);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.mul(&self.field.from_u64(i as u64)))
            .collect();
        Poly::new(&self.field, coeffs)
    }

    pub fn pow_mod_u64(&self, e: u64, m: &Poly) -> Poly {
        self.pow_mod(&BigUint::from(e), m)
    }

    pub fn pow_mod(&self, e: &BigUint, m: &Poly) -> Poly {
        let mut acc = Poly::one(&self.field);
        let mut base = self.rem(m);
        for i in 0..e.bits() {
            if e.bit(i) {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
        }
        acc
    }

    /// Stable sort/seed key: degree then coefficient encodings.
    fn key(&self) -> Vec<u64> {
        let p = self.field.p();
        let mut k = vec![self.coeffs.len() as u64];
        for c in &self.coeffs {
            k.push(c.coeffs().iter().rev().fold(0, |acc, &d| acc * p + d));
        }
        k
    }

    /// Coefficient array, constant first; each element as its residue
    /// vector.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.coeffs
                .iter()
                .map(|c| serde_json::json!(c.coeffs()))
                .collect(),
        )
    }
}

impl fmt::Display for Poly {
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
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                _ => {
                    if !c.is_one() {
                        write!(f, "{c}*")?;
                    }
                    if i == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Monic gcd; both arguments zero is an error.
pub fn poly_gcd(f: &Poly, g: &Poly) -> Result<Poly> {
    if f.is_zero() && g.is_zero() {
        return Err(Error::UndefinedGcd);
    }
    let (mut a, mut b) = (f.clone(), g.clone());
    while !b.is_zero() {
        let r = a.rem(&b);
        a = b;
        b = r;
    }
    Ok(a.monic())
}

/// Monic lcm.
pub fn poly_lcm(f: &Poly, g: &Poly) -> Result<Poly> {
    let d = poly_gcd(f, g)?;
    Ok(f.mul(g).div_exact(&d).monic())
}

/// Extended Euclid: returns `(d, u, v)` with `d = gcd(f, g)` monic and
/// `u*f + v*g = d`.
pub fn poly_xgcd(f: &Poly, g: &Poly) -> Result<(Poly, Poly, Poly)> {
    if f.is_zero() && g.is_zero() {
        return Err(Error::UndefinedGcd);
    }
    let field = f.field().clone();
    let (mut r0, mut r1) = (f.clone(), g.clone());
    let (mut s0, mut s1) = (Poly::one(&field), Poly::zero(&field));
    let (mut t0, mut t1) = (Poly::zero(&field), Poly::one(&field));
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1);
        (r0, r1) = (r1, r);
        (s0, s1) = (s1.clone(), s0.sub(&q.mul(&s1)));
        (t0, t1) = (t1.clone(), t0.sub(&q.mul(&t1)));
    }
    let c = r0.lc().inv();
    Ok((r0.scale(&c), s0.scale(&c), t0.scale(&c)))
}

/// Complete factorization into monic irreducibles with multiplicities.
#[derive(Clone, Debug)]
pub struct Factorization {
    pub unit: FieldElem,
    /// Pairwise distinct monic irreducibles, sorted by (degree, encoding).
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    /// `unit * prod factor^mult`.
    pub fn expand(&self) -> Poly {
        let mut acc = Poly::constant(self.unit.clone());
        for (f, m) in &self.factors {
            for _ in 0..*m {
                acc = acc.mul(f);
            }
        }
        acc
    }
}

/// Squarefree decomposition: pairwise coprime monic squarefree `g_i` with
/// `f = lc(f) * prod g_i^i` (only nontrivial `g_i` are listed).
pub fn squarefree_decomposition(f: &Poly) -> Vec<(Poly, u32)> {
    let mut out = Vec::new();
    sff_into(&f.monic(), 1, &mut out);
    out.sort_by_key(|(g, m)| (*m, g.key()));
    out
}

fn sff_into(f: &Poly, stride: u32, out: &mut Vec<(Poly, u32)>) {
    if f.degree() == Some(0) {
        return;
    }
    let p = f.field().p() as u32;
    let fp = f.derivative();
    if fp.is_zero() {
        // f is a p-th power: recurse on its p-th root
        sff_into(&pth_root(f), stride * p, out);
        return;
    }
    let mut c = poly_gcd(f, &fp).expect("nonzero inputs");
    let mut w = f.div_exact(&c);
    let mut i = 1u32;
    while w.degree() != Some(0) {
        let y = poly_gcd(&w, &c).expect("nonzero inputs");
        let fac = w.div_exact(&y);
        if fac.degree() != Some(0) {
            out.push((fac.monic(), i * stride));
        }
        w = y;
        c = c.div_exact(&w);
        i += 1;
    }
    if c.degree() != Some(0) {
        sff_into(&pth_root(&c), stride * p, out);
    }
}

/// For `f = g(x^p)`, recover `g` by taking p-th roots of coefficients.
fn pth_root(f: &Poly) -> Poly {
    let field = f.field();
    let p = field.p() as usize;
    // inverse Frobenius: c -> c^(p^(k-1))
    let e = field.p().pow(field.k() - 1);
    let coeffs = f
        .coeffs()
        .iter()
        .step_by(p)
        .map(|c| c.pow(e))
        .collect();
    Poly::new(field, coeffs)
}

/// Distinct-degree splitting of a squarefree monic polynomial: returns
/// `(product of irreducible factors of degree d, d)` pairs.
fn distinct_degree(f: &Poly) -> Vec<(Poly, usize)> {
    let field = f.field();
    let q = field.q();
    let x = Poly::x(field);
    let mut out = Vec::new();
    let mut g = f.clone();
    let mut h = x.rem(&g);
    let mut d = 0usize;
    while g.deg() >= 2 * (d + 1) {
        d += 1;
        h = h.pow_mod_u64(q, &g);
        let part = poly_gcd(&h.sub(&x), &g).expect("nonzero inputs");
        if part.degree() != Some(0) {
            out.push((part.clone(), d));
            g = g.div_exact(&part);
            h = h.rem(&g);
        }
    }
    if g.degree() != Some(0) {
        let d = g.deg();
        out.push((g, d));
    }
    out
}

/// Equal-degree splitting (Cantor-Zassenhaus) of a monic squarefree product
/// of degree-d irreducibles. Trial elements come from a fixed
/// linear-congruential sequence seeded by the input polynomial, so the
/// factor list is reproducible.
fn equal_degree(f: &Poly, d: usize, out: &mut Vec<Poly>) {
    if f.deg() == d {
        out.push(f.monic());
        return;
    }
    let field = f.field();
    let q = field.q();
    let mut lcg = Lcg::from_bytes(f.key());
    for _ in 0..10_000 {
        let deg_a = f.deg() - 1;
        let coeffs: Vec<FieldElem> = (0..=deg_a)
            .map(|_| {
                let enc = lcg.below(q);
                let mut t = enc;
                let mut cs = Vec::with_capacity(field.k() as usize);
                for _ in 0..field.k() {
                    cs.push(t % field.p());
                    t /= field.p();
                }
                field.from_coeffs(&cs)
            })
            .collect();
        let a = Poly::new(field, coeffs);
        if a.degree().is_none() || a.degree() == Some(0) {
            continue;
        }
        let s = if field.p() == 2 {
            // char 2: additive trace map onto F_2
            let reps = (d as u32) * field.k();
            let mut cur = a.rem(f);
            let mut acc = cur.clone();
            for _ in 1..reps {
                cur = cur.mul(&cur).rem(f);
                acc = acc.add(&cur);
            }
            poly_gcd(&acc, f).expect("nonzero inputs")
        } else {
            let e = (BigUint::from(q).pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
            let b = a.pow_mod(&e, f);
            poly_gcd(&b.sub(&Poly::one(field)), f).expect("nonzero inputs")
        };
        if let Some(sd) = s.degree() {
            if sd > 0 && sd < f.deg() {
                equal_degree(&s, d, out);
                equal_degree(&f.div_exact(&s), d, out);
                return;
            }
        }
    }
    unreachable!("equal-degree splitting failed to converge");
}

/// Complete factorization of a nonzero polynomial.
pub fn factorize(f: &Poly) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let unit = f.lc().clone();
    let mut factors: Vec<(Poly, u32)> = Vec::new();
    for (g, mult) in squarefree_decomposition(f) {
        for (part, d) in distinct_degree(&g) {
            let mut irr = Vec::new();
            equal_degree(&part, d, &mut irr);
            for h in irr {
                factors.push((h, mult));
            }
        }
    }
    factors.sort_by_key(|(g, _)| g.key());
    Ok(Factorization { unit, factors })
}

/// Irreducibility test (Rabin): distinct-degree sieve without splitting.
pub fn is_irreducible(f: &Poly) -> Result<bool> {
    match f.degree() {
        None | Some(0) => return Err(Error::NotAPolynomialOfPositiveDegree),
        Some(1) => return Ok(true),
        _ => {}
    }
    let field = f.field();
    let q = field.q();
    let n = f.deg();
    let x = Poly::x(field);
    let milestones: Vec<usize> = factor(n as u64).iter().map(|&(t, _)| n / t as usize).collect();
    let mut h = x.rem(f);
    for i in 1..=n {
        h = h.pow_mod_u64(q, f);
        if milestones.contains(&i) {
            let g = poly_gcd(&h.sub(&x), f).expect("nonzero inputs");
            if g.degree() != Some(0) {
                return Ok(false);
            }
        }
    }
    Ok(h == x.rem(f))
}

/// The smallest (encoding order) monic irreducible of degree `d`.
pub fn irreducible_of_degree(field: &Field, d: usize) -> Poly {
    assert!(d >= 1, "degree must be positive");
    let q = field.q();
    let mut v = 0u64;
    loop {
        let mut coeffs = Vec::with_capacity(d + 1);
        let mut t = v;
        for _ in 0..d {
            let enc = t % q;
            t /= q;
            let mut cs = Vec::with_capacity(field.k() as usize);
            let mut e = enc;
            for _ in 0..field.k() {
                cs.push(e % field.p());
                e /= field.p();
            }
            coeffs.push(field.from_coeffs(&cs));
        }
        coeffs.push(field.one());
        let cand = Poly::new(field, coeffs);
        if is_irreducible(&cand).expect("positive degree") {
            return cand;
        }
        v += 1;
    }
}
