//! Exact arithmetic in prime fields `F_p` and extension fields `F_{p^k}`.
//!
//! A field is constructed deterministically from `(p, k)`: the modulus is
//! the smallest monic irreducible of degree `k` over `F_p`, where
//! polynomials are ordered by their coefficient vector encoded as a base-p
//! integer with the constant term as the least significant digit. Elements
//! are coefficient vectors in the basis `1, x, ..., x^{k-1}`.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::arith::{self, factor};
use crate::error::Error;
use crate::Result;

/// Default magnitude cap on `q = p^k`.
pub const DEFAULT_CAP: u64 = 1 << 20;

/// Fields up to this size get exp/log tables for O(1) multiplication.
const TABLE_CAP: u64 = 1 << 16;

/// The field `F_{p^k}` with its deterministic modulus polynomial.
#[derive(Debug)]
pub struct FieldSpec {
    p: u64,
    k: u32,
    q: u64,
    /// Monic irreducible of degree `k` over `F_p`, constant term first.
    modulus: Vec<u64>,
    tables: Option<Tables>,
    primitive: OnceLock<Vec<u64>>,
}

#[derive(Debug)]
struct Tables {
    /// `exp[i]` = encoding of `g^i` for the canonical generator `g`.
    exp: Vec<u32>,
    /// `log[enc(a)]` for nonzero `a`; `log[0]` is unused.
    log: Vec<u32>,
}

/// Shared handle to a [`FieldSpec`]; all element operations go through it.
#[derive(Clone)]
pub struct Field(Arc<FieldSpec>);

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.0.q)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.0.p == other.0.p && self.0.k == other.0.k
    }
}
impl Eq for Field {}

impl std::hash::Hash for Field {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.p.hash(state);
        self.0.k.hash(state);
    }
}

impl std::ops::Deref for Field {
    type Target = FieldSpec;
    fn deref(&self) -> &FieldSpec {
        &self.0
    }
}

impl FieldSpec {
    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn k(&self) -> u32 {
        self.k
    }
    pub fn q(&self) -> u64 {
        self.q
    }
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "p": self.p, "k": self.k, "modulus": self.modulus })
    }
}

/// Constructs `F_{p^k}` with the deterministic smallest modulus.
pub fn construct_field(p: u64, k: u32) -> Result<Field> {
    construct_field_capped(p, k, DEFAULT_CAP)
}

/// As [`construct_field`] with an explicit magnitude cap on `q`.
pub fn construct_field_capped(p: u64, k: u32, cap: u64) -> Result<Field> {
    assert!(k >= 1, "extension degree must be positive");
    if p >= 1 << 32 || !arith::is_prime(p) {
        return Err(Error::InvalidPrime(p));
    }
    let q = p
        .checked_pow(k)
        .filter(|&q| q <= cap)
        .ok_or_else(|| Error::CapExceeded(format!("q = {p}^{k} exceeds cap {cap}")))?;

    let modulus = smallest_irreducible(p, k);
    let mut spec = FieldSpec {
        p,
        k,
        q,
        modulus,
        tables: None,
        primitive: OnceLock::new(),
    };
    if q <= TABLE_CAP {
        build_tables(&mut spec);
    }
    Ok(Field(Arc::new(spec)))
}

/// Scans monic degree-k candidates in encoding order and returns the first
/// irreducible one. Candidates with zero constant term (other than `x`
/// itself for k = 1) are reducible, so the scan skips nothing essential.
fn smallest_irreducible(p: u64, k: u32) -> Vec<u64> {
    let mut cand = vec![0u64; k as usize + 1];
    cand[k as usize] = 1;
    let mut v: u64 = 0;
    loop {
        let mut t = v;
        for c in cand.iter_mut().take(k as usize) {
            *c = t % p;
            t /= p;
        }
        if rp_is_irreducible(p, &cand) {
            return cand;
        }
        v += 1;
    }
}

fn build_tables(spec: &mut FieldSpec) {
    let q = spec.q as usize;
    // Find the canonical generator first (smallest element of order q-1 in
    // tuple order); its powers then fill the exp table.
    let gen = (0..spec.q)
        .map(|v| tuple_order_coeffs(spec.p, spec.k, v))
        .filter(|c| c.iter().any(|&x| x != 0))
        .find(|c| raw_order(spec, c) == spec.q - 1)
        .expect("F_q* is cyclic; a generator exists");
    let mut exp = Vec::with_capacity(q - 1);
    let mut log = vec![0u32; q];
    let mut cur = vec![0u64; spec.k as usize];
    cur[0] = 1;
    for i in 0..spec.q - 1 {
        let enc = encode(spec.p, &cur);
        exp.push(enc as u32);
        log[enc as usize] = i as u32;
        cur = raw_mul(spec, &cur, &gen);
    }
    spec.primitive.set(gen).unwrap();
    spec.tables = Some(Tables { exp, log });
}

/// Coefficients of the v-th element in tuple order (lexicographic on
/// `(coeffs[0], ..., coeffs[k-1])`), i.e. the last coefficient varies
/// fastest.
fn tuple_order_coeffs(p: u64, k: u32, mut v: u64) -> Vec<u64> {
    let mut c = vec![0u64; k as usize];
    for i in (0..k as usize).rev() {
        c[i] = v % p;
        v /= p;
    }
    c
}

fn encode(p: u64, coeffs: &[u64]) -> u64 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn decode(p: u64, k: u32, mut enc: u64) -> Vec<u64> {
    let mut c = vec![0u64; k as usize];
    for slot in c.iter_mut() {
        *slot = enc % p;
        enc /= p;
    }
    c
}

// ---------------------------------------------------------------------------
// Raw coefficient-vector arithmetic (len == k, entries mod p).
// ---------------------------------------------------------------------------

fn raw_mul(spec: &FieldSpec, a: &[u64], b: &[u64]) -> Vec<u64> {
    let k = spec.k as usize;
    let p = spec.p;
    if let Some(t) = &spec.tables {
        let (ea, eb) = (encode(p, a), encode(p, b));
        if ea == 0 || eb == 0 {
            return vec![0; k];
        }
        let la = t.log[ea as usize] as u64;
        let lb = t.log[eb as usize] as u64;
        let enc = t.exp[((la + lb) % (spec.q - 1)) as usize] as u64;
        return decode(p, spec.k, enc);
    }
    // schoolbook product then reduction by the monic modulus
    let mut tmp = vec![0u128; 2 * k - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            tmp[i + j] += ai as u128 * bj as u128;
        }
    }
    let mut red: Vec<u64> = tmp.iter().map(|&c| (c % p as u128) as u64).collect();
    for i in (k..2 * k - 1).rev() {
        let c = red[i];
        red[i] = 0;
        if c == 0 {
            continue;
        }
        for (j, &mj) in spec.modulus.iter().enumerate().take(k) {
            let sub = (c as u128 * mj as u128 % p as u128) as u64;
            let idx = i - k + j;
            red[idx] = (red[idx] + p - sub) % p;
        }
    }
    red.truncate(k);
    red
}

/// `acc += a * b` on reduced coefficient slices, avoiding allocation on
/// the table path. The inner loop of matrix multiplication.
pub(crate) fn raw_mul_add(spec: &FieldSpec, a: &[u64], b: &[u64], acc: &mut [u64]) {
    let p = spec.p;
    if let Some(t) = &spec.tables {
        let (ea, eb) = (encode(p, a), encode(p, b));
        if ea == 0 || eb == 0 {
            return;
        }
        let la = t.log[ea as usize] as u64;
        let lb = t.log[eb as usize] as u64;
        let mut enc = t.exp[((la + lb) % (spec.q - 1)) as usize] as u64;
        for slot in acc.iter_mut() {
            *slot = (*slot + enc % p) % p;
            enc /= p;
        }
        return;
    }
    let prod = raw_mul(spec, a, b);
    for (slot, v) in acc.iter_mut().zip(prod) {
        *slot = (*slot + v) % p;
    }
}

/// Wraps already-reduced coefficients without re-reduction.
pub(crate) fn elem_from_reduced(field: &Field, coeffs: Vec<u64>) -> FieldElem {
    debug_assert_eq!(coeffs.len(), field.k as usize);
    debug_assert!(coeffs.iter().all(|&c| c < field.p));
    FieldElem {
        field: field.clone(),
        coeffs,
    }
}

fn raw_pow(spec: &FieldSpec, a: &[u64], mut e: u64) -> Vec<u64> {
    let k = spec.k as usize;
    let mut acc = vec![0u64; k];
    acc[0] = 1;
    let mut base = a.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = raw_mul(spec, &acc, &base);
        }
        base = raw_mul(spec, &base, &base);
        e >>= 1;
    }
    acc
}

/// Least `m >= 1` with `a^m = 1`, by factoring `q - 1` and descending
/// through its prime divisors.
fn raw_order(spec: &FieldSpec, a: &[u64]) -> u64 {
    let mut m = spec.q - 1;
    for (r, _) in factor(spec.q - 1) {
        while m.is_multiple_of(r) {
            let candidate = raw_pow(spec, a, m / r);
            if is_raw_one(&candidate) {
                m /= r;
            } else {
                break;
            }
        }
    }
    m
}

fn is_raw_one(c: &[u64]) -> bool {
    c[0] == 1 && c[1..].iter().all(|&x| x == 0)
}

// ---------------------------------------------------------------------------
// FieldElem
// ---------------------------------------------------------------------------

/// An element of `F_{p^k}`: `k` residues mod `p` in the basis
/// `1, x, ..., x^{k-1}`, fully reduced.
#[derive(Clone)]
pub struct FieldElem {
    field: Field,
    coeffs: Vec<u64>,
}

impl FieldElem {
    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
    pub fn is_one(&self) -> bool {
        is_raw_one(&self.coeffs)
    }

    pub fn add(&self, rhs: &FieldElem) -> FieldElem {
        self.check(rhs);
        let p = self.field.p;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(&a, &b)| (a + b) % p)
            .collect();
        FieldElem { field: self.field.clone(), coeffs }
    }

    pub fn sub(&self, rhs: &FieldElem) -> FieldElem {
        self.check(rhs);
        let p = self.field.p;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(&a, &b)| (a + p - b) % p)
            .collect();
        FieldElem { field: self.field.clone(), coeffs }
    }

    pub fn neg(&self) -> FieldElem {
        let p = self.field.p;
        let coeffs = self.coeffs.iter().map(|&a| (p - a) % p).collect();
        FieldElem { field: self.field.clone(), coeffs }
    }

    pub fn mul(&self, rhs: &FieldElem) -> FieldElem {
        self.check(rhs);
        FieldElem {
            field: self.field.clone(),
            coeffs: raw_mul(&self.field, &self.coeffs, &rhs.coeffs),
        }
    }

    pub fn pow(&self, e: u64) -> FieldElem {
        FieldElem {
            field: self.field.clone(),
            coeffs: raw_pow(&self.field, &self.coeffs, e),
        }
    }

    /// Multiplicative inverse; panics on zero (division by zero is a
    /// programming error, not a domain error).
    pub fn inv(&self) -> FieldElem {
        assert!(!self.is_zero(), "inverse of zero");
        if let Some(t) = &self.field.tables {
            let q1 = self.field.q - 1;
            let l = t.log[encode(self.field.p, &self.coeffs) as usize] as u64;
            let enc = t.exp[((q1 - l) % q1) as usize] as u64;
            return FieldElem {
                field: self.field.clone(),
                coeffs: decode(self.field.p, self.field.k, enc),
            };
        }
        self.pow(self.field.q - 2)
    }

    fn check(&self, rhs: &FieldElem) {
        debug_assert!(self.field == rhs.field, "mixed-field arithmetic");
    }
}

impl PartialEq for FieldElem {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.coeffs == other.coeffs
    }
}
impl Eq for FieldElem {}

impl std::hash::Hash for FieldElem {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.field.p.hash(state);
        self.field.k.hash(state);
        self.coeffs.hash(state);
    }
}

impl PartialOrd for FieldElem {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Tuple order on `(coeffs[0], ..., coeffs[k-1])`.
impl Ord for FieldElem {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.coeffs.cmp(&other.coeffs)
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.k == 1 {
            write!(f, "{}", self.coeffs[0])
        } else {
            write!(f, "[")?;
            for (i, c) in self.coeffs.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{c}")?;
            }
            write!(f, "]")
        }
    }
}

impl Field {
    pub fn zero(&self) -> FieldElem {
        FieldElem {
            field: self.clone(),
            coeffs: vec![0; self.k as usize],
        }
    }

    pub fn one(&self) -> FieldElem {
        self.from_u64(1)
    }

    /// Element of the prime subfield.
    pub fn from_u64(&self, v: u64) -> FieldElem {
        let mut coeffs = vec![0; self.k as usize];
        coeffs[0] = v % self.p;
        FieldElem { field: self.clone(), coeffs }
    }

    /// Signed integer reduced into the prime subfield.
    pub fn from_i64(&self, v: i64) -> FieldElem {
        let p = self.p as i64;
        self.from_u64(v.rem_euclid(p) as u64)
    }

    /// Element from explicit coefficients (constant first, reduced mod p,
    /// padded with zeros up to degree k-1).
    pub fn from_coeffs(&self, coeffs: &[u64]) -> FieldElem {
        assert!(coeffs.len() <= self.k as usize, "too many coefficients");
        let mut c = vec![0; self.k as usize];
        for (slot, &v) in c.iter_mut().zip(coeffs) {
            *slot = v % self.p;
        }
        FieldElem { field: self.clone(), coeffs: c }
    }

    /// The class of `x` (only meaningful for k >= 2; for k = 1 this is 0).
    pub fn gen(&self) -> FieldElem {
        let mut coeffs = vec![0; self.k as usize];
        if self.k >= 2 {
            coeffs[1] = 1;
        }
        FieldElem { field: self.clone(), coeffs }
    }

    /// All `q` elements in tuple order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        (0..self.q).map(move |v| FieldElem {
            field: self.clone(),
            coeffs: tuple_order_coeffs(self.p, self.k, v),
        })
    }
}

// ---------------------------------------------------------------------------
// Spec operations
// ---------------------------------------------------------------------------

/// Least `m >= 1` with `a^m = 1`.
pub fn multiplicative_order(a: &FieldElem) -> Result<u64> {
    if a.is_zero() {
        return Err(Error::ZeroElement);
    }
    Ok(raw_order(&a.field, &a.coeffs))
}

/// The smallest element (tuple order) of multiplicative order `q - 1`.
pub fn primitive_element(field: &Field) -> FieldElem {
    let coeffs = field
        .0
        .primitive
        .get_or_init(|| {
            (0..field.q)
                .map(|v| tuple_order_coeffs(field.p, field.k, v))
                .filter(|c| c.iter().any(|&x| x != 0))
                .find(|c| raw_order(field, c) == field.q - 1)
                .expect("F_q* is cyclic; a generator exists")
        })
        .clone();
    FieldElem { field: field.clone(), coeffs }
}

/// `a^(p^base_power)`; periodic in `base_power` with period `k`.
pub fn frobenius(a: &FieldElem, base_power: u32) -> FieldElem {
    let e = a.field.p.pow(base_power % a.field.k);
    a.pow(e)
}

/// Field homomorphism `F_{p^k} -> F_{p^l}` (k | l) fixing the prime field,
/// determined by sending `x` to the smallest root of the source modulus in
/// the target field.
pub struct SubfieldEmbedding {
    source: Field,
    target: Field,
    beta_powers: Vec<FieldElem>,
}

impl SubfieldEmbedding {
    pub fn new(source: &Field, target: &Field) -> Result<Self> {
        if source.p != target.p || !target.k.is_multiple_of(source.k) {
            return Err(Error::NoEmbedding {
                p: source.p,
                k: source.k,
                p2: target.p,
                l: target.k,
            });
        }
        let beta = target
            .elements()
            .find(|b| rp_eval_in_field(&source.modulus, b).is_zero())
            .expect("source modulus splits in the target field");
        let mut beta_powers = Vec::with_capacity(source.k as usize);
        let mut cur = target.one();
        for _ in 0..source.k {
            beta_powers.push(cur.clone());
            cur = cur.mul(&beta);
        }
        Ok(SubfieldEmbedding {
            source: source.clone(),
            target: target.clone(),
            beta_powers,
        })
    }

    pub fn embed(&self, a: &FieldElem) -> FieldElem {
        assert!(a.field == self.source, "element not in the source field");
        let mut acc = self.target.zero();
        for (c, bp) in a.coeffs.iter().zip(&self.beta_powers) {
            if *c != 0 {
                acc = acc.add(&bp.mul(&self.target.from_u64(*c)));
            }
        }
        acc
    }
}

/// Evaluate a raw prime-field polynomial at a field element.
fn rp_eval_in_field(poly: &[u64], at: &FieldElem) -> FieldElem {
    let field = at.field();
    let mut acc = field.zero();
    for &c in poly.iter().rev() {
        acc = acc.mul(at).add(&field.from_u64(c));
    }
    acc
}

/// One-shot embedding of a single element; see [`SubfieldEmbedding`].
pub fn subfield_embed(a: &FieldElem, target: &Field) -> Result<FieldElem> {
    Ok(SubfieldEmbedding::new(a.field(), target)?.embed(a))
}

// ---------------------------------------------------------------------------
// Raw F_p[x] polynomial arithmetic for modulus construction. Vectors are
// constant-first with no trailing zeros.
// ---------------------------------------------------------------------------

fn rp_trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn rp_mul(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u128; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + ai as u128 * bj as u128) % p as u128;
        }
    }
    let mut out: Vec<u64> = out.into_iter().map(|c| c as u64).collect();
    rp_trim(&mut out);
    out
}

fn rp_rem(p: u64, a: &[u64], m: &[u64]) -> Vec<u64> {
    let mut r: Vec<u64> = a.to_vec();
    rp_trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = mod_inv(m[dm], p);
    while r.len() > dm {
        let c = (r.last().copied().unwrap() as u128 * lead_inv as u128 % p as u128) as u64;
        let shift = r.len() - 1 - dm;
        for (j, &mj) in m.iter().enumerate() {
            let idx = shift + j;
            let sub = (c as u128 * mj as u128) % p as u128;
            r[idx] = ((r[idx] as u128 + p as u128 - sub) % p as u128) as u64;
        }
        rp_trim(&mut r);
    }
    r
}

fn rp_pow_mod(p: u64, base: &[u64], mut e: u64, m: &[u64]) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = rp_rem(p, base, m);
    while e > 0 {
        if e & 1 == 1 {
            acc = rp_rem(p, &rp_mul(p, &acc, &b), m);
        }
        b = rp_rem(p, &rp_mul(p, &b, &b), m);
        e >>= 1;
    }
    acc
}

fn rp_gcd(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    rp_trim(&mut a);
    rp_trim(&mut b);
    while !b.is_empty() {
        let r = rp_rem(p, &a, &b);
        a = b;
        b = r;
    }
    a
}

fn rp_sub(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; a.len().max(b.len())];
    for (i, slot) in out.iter_mut().enumerate() {
        let av = a.get(i).copied().unwrap_or(0);
        let bv = b.get(i).copied().unwrap_or(0);
        *slot = (av + p - bv) % p;
    }
    rp_trim(&mut out);
    out
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // p prime
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = (result as u128 * base as u128 % p as u128) as u64;
        }
        base = (base as u128 * base as u128 % p as u128) as u64;
        e >>= 1;
    }
    result
}

/// Rabin irreducibility: `f` of degree k is irreducible over `F_p` iff
/// `x^(p^k) = x (mod f)` and `gcd(x^(p^(k/t)) - x, f) = 1` for every
/// prime `t | k`.
fn rp_is_irreducible(p: u64, f: &[u64]) -> bool {
    let k = (f.len() - 1) as u32;
    let milestones: Vec<u32> = factor(k as u64)
        .iter()
        .map(|&(t, _)| k / t as u32)
        .collect();
    let x = vec![0u64, 1];
    let mut h = rp_rem(p, &x, f);
    for i in 1..=k {
        h = rp_pow_mod(p, &h, p, f);
        if milestones.contains(&i) {
            let g = rp_gcd(p, &rp_sub(p, &h, &x), f);
            if g.len() > 1 {
                return false;
            }
        }
    }
    h == rp_rem(p, &x, f)
}
