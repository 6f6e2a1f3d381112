//! Constructors for the named groups: GL/SL/PGL/PSL from transvections,
//! dihedral groups inside `PGL_2`, the special unitary group over `F_4`,
//! the automorphism group of a product of two projective lines, and the
//! unipotent coordinate-change groups.

use std::str::FromStr;

use crate::arith::prime_power;
use crate::error::Error;
use crate::gf::{construct_field, primitive_element, Field, FieldElem};
use crate::matgrp::{Mat, ProjMat};
use crate::Result;

use super::{generate_group, ConjClassSet, FinGroup, JordanReport, NormalLattice};

/// Parsed group specification string, e.g. `pgl:3:2`, `dihedral:6`,
/// `su4f2`, `unip:3:2`, `p1xp1:2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Gl { n: u32, q: u64 },
    Sl { n: u32, q: u64 },
    Pgl { n: u32, q: u64 },
    Psl { n: u32, q: u64 },
    Dihedral { m: u64 },
    Su4F2,
    P1xP1 { q: u64 },
    Unip { n: u32, q: u64 },
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<GroupSpec> {
        let parts: Vec<&str> = s.split(':').collect();
        let bad = || Error::UnknownGroup(s.to_string());
        let num = |t: &str| t.parse::<u64>().map_err(|_| bad());
        match parts.as_slice() {
            ["su4f2"] => Ok(GroupSpec::Su4F2),
            ["dihedral", m] => Ok(GroupSpec::Dihedral { m: num(m)? }),
            ["p1xp1", q] => Ok(GroupSpec::P1xP1 { q: num(q)? }),
            [kind, n, q] => {
                let n = num(n)? as u32;
                let q = num(q)?;
                match *kind {
                    "gl" => Ok(GroupSpec::Gl { n, q }),
                    "sl" => Ok(GroupSpec::Sl { n, q }),
                    "pgl" => Ok(GroupSpec::Pgl { n, q }),
                    "psl" => Ok(GroupSpec::Psl { n, q }),
                    "unip" => Ok(GroupSpec::Unip { n, q }),
                    _ => Err(bad()),
                }
            }
            _ => Err(bad()),
        }
    }
}

/// A fully enumerated group of either linear or projective matrices.
pub enum AnyGroup {
    Lin(FinGroup<Mat>),
    Proj(FinGroup<ProjMat>),
}

macro_rules! delegate {
    ($self:ident, $g:ident => $body:expr) => {
        match $self {
            AnyGroup::Lin($g) => $body,
            AnyGroup::Proj($g) => $body,
        }
    };
}

impl AnyGroup {
    pub fn order(&self) -> u64 {
        delegate!(self, g => g.order())
    }

    pub fn jordan_constant(&self) -> Result<JordanReport> {
        delegate!(self, g => g.jordan_constant())
    }

    pub fn normal_subgroup_lattice(&self) -> Result<NormalLattice> {
        delegate!(self, g => g.normal_subgroup_lattice())
    }

    pub fn conjugacy_classes(&self) -> ConjClassSet {
        delegate!(self, g => g.conjugacy_classes())
    }

    pub fn is_abelian(&self) -> bool {
        delegate!(self, g => g.is_abelian())
    }

    pub fn element_orders(&self) -> Vec<u64> {
        delegate!(self, g => g.element_orders())
    }
}

fn field_for(q: u64) -> Result<Field> {
    let (p, k) = prime_power(q).ok_or(Error::InvalidQ(q))?;
    construct_field(p, k)
}

/// Builds the named group; `cap` bounds the breadth-first closure.
pub fn special_group(spec: &GroupSpec, cap: usize) -> Result<AnyGroup> {
    match spec {
        GroupSpec::Gl { n, q } => Ok(AnyGroup::Lin(gl_group(&field_for(*q)?, *n, cap)?)),
        GroupSpec::Sl { n, q } => Ok(AnyGroup::Lin(sl_group(&field_for(*q)?, *n, cap)?)),
        GroupSpec::Pgl { n, q } => Ok(AnyGroup::Proj(pgl_group(&field_for(*q)?, *n, cap)?)),
        GroupSpec::Psl { n, q } => Ok(AnyGroup::Proj(psl_group(&field_for(*q)?, *n, cap)?)),
        GroupSpec::Dihedral { m } => Ok(AnyGroup::Proj(dihedral_group(*m, cap)?)),
        GroupSpec::Su4F2 => Ok(AnyGroup::Lin(su4_f2_group(cap)?)),
        GroupSpec::P1xP1 { q } => Ok(AnyGroup::Proj(p1xp1_group(&field_for(*q)?, cap)?)),
        GroupSpec::Unip { n, q } => Ok(AnyGroup::Lin(unipotent_polynomial_group(
            &field_for(*q)?,
            *n,
            cap,
        )?)),
    }
}

/// Elementary transvection `I + b E_{ij}`.
fn transvection(field: &Field, n: u32, i: usize, j: usize, b: &FieldElem) -> Mat {
    let mut m = Mat::identity(field, n as usize);
    m.set(i, j, b.clone());
    m
}

/// Transvection generators of `SL_n(F_q)`: adjacent `E_{i,i+1}(b)` and
/// `E_{i+1,i}(b)` with `b` running over an `F_p`-basis of the field.
fn sl_generators(field: &Field, n: u32) -> Vec<Mat> {
    assert!(n >= 2, "SL_n needs n >= 2");
    let mut basis = Vec::new();
    for t in 0..field.k() {
        let mut coeffs = vec![0u64; field.k() as usize];
        coeffs[t as usize] = 1;
        basis.push(field.from_coeffs(&coeffs));
    }
    let mut gens = Vec::new();
    for i in 0..(n as usize - 1) {
        for b in &basis {
            gens.push(transvection(field, n, i, i + 1, b));
            gens.push(transvection(field, n, i + 1, i, b));
        }
    }
    gens
}

/// `diag(z, 1, ..., 1)` with `z` the canonical primitive element.
fn primitive_diag(field: &Field, n: u32) -> Mat {
    let mut m = Mat::identity(field, n as usize);
    m.set(0, 0, primitive_element(field));
    m
}

pub fn sl_group(field: &Field, n: u32, cap: usize) -> Result<FinGroup<Mat>> {
    generate_group(&sl_generators(field, n), cap)
}

pub fn gl_group(field: &Field, n: u32, cap: usize) -> Result<FinGroup<Mat>> {
    if n == 1 {
        return generate_group(&[primitive_diag(field, 1)], cap);
    }
    let mut gens = sl_generators(field, n);
    gens.push(primitive_diag(field, n));
    generate_group(&gens, cap)
}

pub fn psl_group(field: &Field, n: u32, cap: usize) -> Result<FinGroup<ProjMat>> {
    let gens: Vec<ProjMat> = sl_generators(field, n).into_iter().map(ProjMat::new).collect();
    generate_group(&gens, cap)
}

pub fn pgl_group(field: &Field, n: u32, cap: usize) -> Result<FinGroup<ProjMat>> {
    if n == 1 {
        return generate_group(&[ProjMat::new(Mat::identity(field, 1))], cap);
    }
    let mut gens = sl_generators(field, n);
    gens.push(primitive_diag(field, n));
    let gens: Vec<ProjMat> = gens.into_iter().map(ProjMat::new).collect();
    generate_group(&gens, cap)
}

/// Dihedral group of order `2m` realized inside `PGL_2(F_q)` for the
/// smallest prime power `q` with `m | q - 1`: a diagonal rotation of
/// projective order `m` plus the flip that inverts it.
pub fn dihedral_group(m: u64, cap: usize) -> Result<FinGroup<ProjMat>> {
    assert!(m >= 1);
    let q = (3..)
        .find(|&q| prime_power(q).is_some() && (q - 1) % m == 0)
        .expect("a prime power q = 1 mod m exists");
    let field = field_for(q)?;
    let zeta_m = primitive_element(&field).pow((q - 1) / m);
    let mut rot = Mat::identity(&field, 2);
    rot.set(0, 0, zeta_m);
    let flip = Mat::from_int_rows(&field, &[vec![0, 1], vec![1, 0]]);
    generate_group(&[ProjMat::new(rot), ProjMat::new(flip)], cap)
}

/// Hermitian form `h(x, y) = sum x_i y_i^2` on `F_4^4` (the Galois
/// involution of `F_4` is squaring).
fn hermitian(x: &[FieldElem], y: &[FieldElem]) -> FieldElem {
    let field = x[0].field().clone();
    let mut acc = field.zero();
    for (a, b) in x.iter().zip(y) {
        acc = acc.add(&a.mul(&b.pow(2)));
    }
    acc
}

/// Unitary transvection `x -> x + h(x, v) v` for an isotropic vector `v`,
/// as the matrix `I + v w^T` with `w_i = v_i^2`.
fn unitary_transvection(field: &Field, v: &[FieldElem]) -> Mat {
    let n = v.len();
    let mut m = Mat::identity(field, n);
    for i in 0..n {
        for j in 0..n {
            if v[i].is_zero() {
                continue;
            }
            let add = v[i].mul(&v[j].pow(2));
            let cur = m.get(i, j).clone();
            m.set(i, j, cur.add(&add));
        }
    }
    m
}

/// The simple group of order 25 920 preserving the Hermitian form on
/// `F_4^4`, generated by unitary transvections found by a deterministic
/// scan over normalized isotropic vectors.
pub fn su4_f2_group(cap: usize) -> Result<FinGroup<Mat>> {
    const TARGET: u64 = 25_920;
    let field = construct_field(2, 2)?;
    let elems: Vec<FieldElem> = field.elements().collect();
    let mut gens: Vec<Mat> = Vec::new();
    let mut current: Option<FinGroup<Mat>> = None;
    // lexicographic scan over coordinate encodings
    for e0 in 0..4u64 {
        for e1 in 0..4u64 {
            for e2 in 0..4u64 {
                for e3 in 0..4u64 {
                    let v = vec![
                        elems[e0 as usize].clone(),
                        elems[e1 as usize].clone(),
                        elems[e2 as usize].clone(),
                        elems[e3 as usize].clone(),
                    ];
                    let Some(first) = v.iter().find(|c| !c.is_zero()) else {
                        continue;
                    };
                    if !first.is_one() {
                        continue; // scalar multiples give the same transvection
                    }
                    if !hermitian(&v, &v).is_zero() {
                        continue;
                    }
                    let t = unitary_transvection(&field, &v);
                    if let Some(g) = &current {
                        if g.id_of(&t).is_some() {
                            continue;
                        }
                    }
                    gens.push(t);
                    let g = generate_group(&gens, cap)?;
                    if g.order() == TARGET {
                        return Ok(g);
                    }
                    current = Some(g);
                }
            }
        }
    }
    panic!("unitary transvection scan failed to reach order 25920");
}

/// Kronecker product of two 2x2 matrices: the action of a pair of
/// projective-line maps on the ambient space of the product embedding.
fn kron(a: &Mat, b: &Mat) -> Mat {
    let field = a.field().clone();
    let n = a.n() * b.n();
    let mut m = Mat::from_entries(&field, n, vec![field.zero(); n * n]);
    for i in 0..a.n() {
        for j in 0..a.n() {
            for k in 0..b.n() {
                for l in 0..b.n() {
                    m.set(i * b.n() + k, j * b.n() + l, a.get(i, j).mul(b.get(k, l)));
                }
            }
        }
    }
    m
}

/// `(PGL_2(F_q) x PGL_2(F_q)) : Z/2` acting on pairs of points: Kronecker
/// images `A (x) I`, `I (x) A` of the `GL_2` generators plus the
/// coordinate swap, as 4x4 projective matrices.
pub fn p1xp1_group(field: &Field, cap: usize) -> Result<FinGroup<ProjMat>> {
    let id2 = Mat::identity(field, 2);
    let mut gl2 = sl_generators(field, 2);
    gl2.push(primitive_diag(field, 2));
    let mut gens = Vec::new();
    for g in &gl2 {
        gens.push(ProjMat::new(kron(g, &id2)));
        gens.push(ProjMat::new(kron(&id2, g)));
    }
    // the factor swap: (z00, z01, z10, z11) -> (z00, z10, z01, z11)
    let mut swap = Mat::from_entries(field, 4, vec![field.zero(); 16]);
    swap.set(0, 0, field.one());
    swap.set(1, 2, field.one());
    swap.set(2, 1, field.one());
    swap.set(3, 3, field.one());
    gens.push(ProjMat::new(swap));
    generate_group(&gens, cap)
}

/// The abelian group of coordinate changes adding a degree-n binary form:
/// coefficient vectors of length n+1 under addition, represented as
/// matrices `[[1, v], [0, I]]`. Order `q^(n+1)`, exponent p.
pub fn unipotent_polynomial_group(field: &Field, n: u32, cap: usize) -> Result<FinGroup<Mat>> {
    let dim = n as usize + 2;
    let mut gens = Vec::new();
    for j in 0..=n as usize {
        for t in 0..field.k() {
            let mut coeffs = vec![0u64; field.k() as usize];
            coeffs[t as usize] = 1;
            let mut m = Mat::identity(field, dim);
            m.set(0, j + 1, field.from_coeffs(&coeffs));
            gens.push(m);
        }
    }
    generate_group(&gens, cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grpenum::DEFAULT_BFS_CAP;

    fn order_gl(n: u32, q: u64) -> u64 {
        (0..n).map(|i| q.pow(n) - q.pow(i)).product()
    }

    #[test]
    fn group_spec_parsing() {
        assert_eq!(
            "pgl:3:2".parse::<GroupSpec>().unwrap(),
            GroupSpec::Pgl { n: 3, q: 2 }
        );
        assert_eq!("su4f2".parse::<GroupSpec>().unwrap(), GroupSpec::Su4F2);
        assert_eq!(
            "dihedral:6".parse::<GroupSpec>().unwrap(),
            GroupSpec::Dihedral { m: 6 }
        );
        assert_eq!(
            "unip:3:2".parse::<GroupSpec>().unwrap(),
            GroupSpec::Unip { n: 3, q: 2 }
        );
        assert!("frobnicate:1".parse::<GroupSpec>().is_err());
        assert!("pgl:3".parse::<GroupSpec>().is_err());
    }

    #[test]
    fn linear_group_orders() {
        let f2 = construct_field(2, 1).unwrap();
        let f3 = construct_field(3, 1).unwrap();
        let f4 = construct_field(2, 2).unwrap();
        assert_eq!(gl_group(&f2, 2, DEFAULT_BFS_CAP).unwrap().order(), order_gl(2, 2)); // 6
        assert_eq!(gl_group(&f3, 2, DEFAULT_BFS_CAP).unwrap().order(), order_gl(2, 3)); // 48
        assert_eq!(
            sl_group(&f3, 2, DEFAULT_BFS_CAP).unwrap().order(),
            order_gl(2, 3) / 2
        ); // 24
        assert_eq!(
            pgl_group(&f4, 2, DEFAULT_BFS_CAP).unwrap().order(),
            order_gl(2, 4) / 3
        ); // 60
        assert_eq!(
            psl_group(&f3, 2, DEFAULT_BFS_CAP).unwrap().order(),
            12
        );
    }

    #[test]
    fn pgl3_orders_match_formula() {
        // q^3 (q^2 - 1)(q^3 - 1)
        let f2 = construct_field(2, 1).unwrap();
        let g = pgl_group(&f2, 3, DEFAULT_BFS_CAP).unwrap();
        assert_eq!(g.order(), 168);
        let f3 = construct_field(3, 1).unwrap();
        let g = pgl_group(&f3, 3, DEFAULT_BFS_CAP).unwrap();
        assert_eq!(g.order(), 27 * 8 * 26); // 5616
    }

    #[test]
    fn dihedral_orders() {
        for m in [1u64, 2, 3, 4, 5, 6, 12] {
            let g = dihedral_group(m, DEFAULT_BFS_CAP).unwrap();
            assert_eq!(g.order(), 2 * m, "dihedral({m})");
        }
        // the Klein group case is abelian; larger ones are not
        assert!(dihedral_group(2, DEFAULT_BFS_CAP).unwrap().is_abelian());
        assert!(!dihedral_group(3, DEFAULT_BFS_CAP).unwrap().is_abelian());
    }

    #[test]
    fn p1xp1_order_formula() {
        // 2 q^2 (q^2 - 1)^2
        let f2 = construct_field(2, 1).unwrap();
        assert_eq!(p1xp1_group(&f2, DEFAULT_BFS_CAP).unwrap().order(), 72);
    }

    #[test]
    fn unipotent_groups() {
        let f2 = construct_field(2, 1).unwrap();
        let g = unipotent_polynomial_group(&f2, 1, DEFAULT_BFS_CAP).unwrap();
        assert_eq!(g.order(), 4);
        assert!(g.is_abelian());
        assert!(g.element_orders().iter().all(|&o| o == 1 || o == 2));

        let f3 = construct_field(3, 1).unwrap();
        let g = unipotent_polynomial_group(&f3, 2, DEFAULT_BFS_CAP).unwrap();
        assert_eq!(g.order(), 27);
        assert!(g.is_abelian());

        let g = unipotent_polynomial_group(&f2, 0, DEFAULT_BFS_CAP).unwrap();
        assert_eq!(g.order(), 2); // constants only
    }

    #[test]
    fn unitary_generators_preserve_form() {
        // M^T sigma(M) = I for the transvection generators
        let field = construct_field(2, 2).unwrap();
        let elems: Vec<FieldElem> = field.elements().collect();
        let mut checked = 0;
        for e0 in 0..4u64 {
            for e1 in 0..4u64 {
                for e2 in 0..4u64 {
                    for e3 in 0..4u64 {
                        let v = vec![
                            elems[e0 as usize].clone(),
                            elems[e1 as usize].clone(),
                            elems[e2 as usize].clone(),
                            elems[e3 as usize].clone(),
                        ];
                        if v.iter().all(|c| c.is_zero()) || !hermitian(&v, &v).is_zero() {
                            continue;
                        }
                        let m = unitary_transvection(&field, &v);
                        assert!(m.det().is_one());
                        // gram check: h(M e_a, M e_b) = delta_ab
                        for a in 0..4 {
                            for b in 0..4 {
                                let col_a: Vec<FieldElem> =
                                    (0..4).map(|i| m.get(i, a).clone()).collect();
                                let col_b: Vec<FieldElem> =
                                    (0..4).map(|i| m.get(i, b).clone()).collect();
                                let h = hermitian(&col_a, &col_b);
                                if a == b {
                                    assert!(h.is_one());
                                } else {
                                    assert!(h.is_zero());
                                }
                            }
                        }
                        checked += 1;
                    }
                }
            }
        }
        assert!(checked > 40); // 45 normalized isotropic vectors plus scalar multiples
    }
}
