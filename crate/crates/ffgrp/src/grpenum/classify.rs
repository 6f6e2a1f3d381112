//! Classification of finite subgroups of `PGL_2`: every subgroup is
//! dihedral, one of A4/S4/A5, a `PSL_2` or `PGL_2` over a subfield, or a
//! unipotent group extended by a coprime cyclic group. The conic-bound
//! verifier runs the Jordan-constant inequality over every subgroup class.

use std::fmt;

use crate::error::Error;
use crate::gf::Field;
use crate::Result;

use super::special::pgl_group;
use super::{FinGroup, GroupElem};

/// A classification label with its parameters. A subgroup can carry
/// several labels when exceptional isomorphisms apply.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubgroupLabel {
    /// `G_p : Z/m` with `G_p` the unique (elementary abelian) Sylow-p
    /// subgroup and a cyclic complement of coprime order m.
    Type5 { unipotent_order: u64, m: u64 },
    /// Dihedral of order `2m`.
    Dihedral { m: u64 },
    Alt4,
    Sym4,
    Alt5,
    Psl2 { p: u64, r: u32 },
    Pgl2 { p: u64, r: u32 },
}

impl fmt::Display for SubgroupLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubgroupLabel::Type5 { unipotent_order, m } => {
                write!(f, "Gp({unipotent_order}):Z/{m}")
            }
            SubgroupLabel::Dihedral { m } => write!(f, "Dih({m})"),
            SubgroupLabel::Alt4 => write!(f, "A4"),
            SubgroupLabel::Sym4 => write!(f, "S4"),
            SubgroupLabel::Alt5 => write!(f, "A5"),
            SubgroupLabel::Psl2 { p, r } => write!(f, "PSL(2,{})", p.pow(*r)),
            SubgroupLabel::Pgl2 { p, r } => write!(f, "PGL(2,{})", p.pow(*r)),
        }
    }
}

fn p_part(mut n: u64, p: u64) -> u64 {
    let mut out = 1;
    while n.is_multiple_of(p) {
        out *= p;
        n /= p;
    }
    out
}

fn is_simple<E: GroupElem>(h: &FinGroup<E>) -> Result<bool> {
    if h.order() == 1 {
        return Ok(false);
    }
    Ok(h.normal_subgroup_lattice()?.subgroups.len() == 2)
}

/// Dihedral detection: a cyclic subgroup of index 2 inverted by an
/// outside involution.
fn is_dihedral<E: GroupElem>(h: &FinGroup<E>, orders: &[u64]) -> bool {
    let n = h.order();
    if n < 4 || !n.is_multiple_of(2) {
        return false;
    }
    let m = n / 2;
    for (x, &ox) in orders.iter().enumerate() {
        if ox != m {
            continue;
        }
        let x = x as u32;
        let cyc = h.subgroup_closure(&[x]);
        for (t, &ot) in orders.iter().enumerate() {
            let t = t as u32;
            if ot != 2 || cyc.binary_search(&t).is_ok() {
                continue;
            }
            if h.mul_ids(h.mul_ids(t, x), t) == h.inv_id(x) {
                return true;
            }
        }
    }
    false
}

fn alt4_fingerprint(order: u64, sizes: &[usize]) -> bool {
    order == 12 && sizes == [1, 3, 4, 4]
}

fn sym4_fingerprint(order: u64, sizes: &[usize]) -> bool {
    order == 24 && sizes == [1, 3, 6, 6, 8]
}

fn alt5_fingerprint(order: u64, sizes: &[usize]) -> bool {
    order == 60 && sizes == [1, 12, 12, 15, 20]
}

fn psl2_fingerprint<E: GroupElem>(
    h: &FinGroup<E>,
    q_r: u64,
    sizes: &[usize],
    orders: &[u64],
) -> Result<bool> {
    Ok(match q_r {
        2 => h.order() == 6 && is_dihedral(h, orders), // PSL_2(F_2) = S_3
        3 => alt4_fingerprint(h.order(), sizes),       // PSL_2(F_3) = A_4
        _ => is_simple(h)?,
    })
}

fn pgl2_fingerprint<E: GroupElem>(
    h: &FinGroup<E>,
    p: u64,
    q_r: u64,
    sizes: &[usize],
    orders: &[u64],
) -> Result<bool> {
    if p == 2 {
        // PGL_2 = PSL_2 in characteristic 2
        return psl2_fingerprint(h, q_r, sizes, orders);
    }
    Ok(match q_r {
        3 => sym4_fingerprint(h.order(), sizes), // PGL_2(F_3) = S_4
        _ => {
            // simple derived subgroup of index 2
            let d = h.derived_subgroup();
            d.len() as u64 == h.order() / 2 && is_simple(&h.subgroup_as_group(&d)?)?
        }
    })
}

/// Returns every label of the classification theorem matched by `h`
/// inside an ambient `PGL_2` of characteristic `p`. A subgroup matching
/// no label is a contradiction with the theorem and reports
/// [`Error::ClassificationGap`].
pub fn classify_pgl2_subgroup<E: GroupElem>(
    h: &FinGroup<E>,
    p: u64,
) -> Result<Vec<SubgroupLabel>> {
    let n = h.order();
    let orders = h.element_orders();
    let sizes = h.conjugacy_classes().sizes();
    let mut labels = Vec::new();

    // type (5): unique Sylow-p (possibly trivial) with a cyclic
    // complement of coprime order
    let pp = p_part(n, p);
    let p_subset: Vec<u32> = orders
        .iter()
        .enumerate()
        .filter(|(_, &o)| o == 1 || p_part(o, p) == o)
        .map(|(i, _)| i as u32)
        .collect();
    if p_subset.len() as u64 == pp
        && h.subgroup_closure(&p_subset).len() as u64 == pp
        && p_subset.iter().all(|&i| {
            let o = orders[i as usize];
            o == 1 || o == p
        })
        && h.is_abelian_subset(&p_subset)
    {
        let m = n / pp;
        if orders.contains(&m) {
            labels.push(SubgroupLabel::Type5 {
                unipotent_order: pp,
                m,
            });
        }
    }

    if is_dihedral(h, &orders) {
        labels.push(SubgroupLabel::Dihedral { m: n / 2 });
    }
    if alt4_fingerprint(n, &sizes) {
        labels.push(SubgroupLabel::Alt4);
    }
    if sym4_fingerprint(n, &sizes) {
        labels.push(SubgroupLabel::Sym4);
    }
    if alt5_fingerprint(n, &sizes) {
        labels.push(SubgroupLabel::Alt5);
    }

    let mut r = 1u32;
    while let Some(pgl_ord) = p.checked_pow(r).and_then(|q_r| {
        q_r.checked_mul(q_r)
            .map(|q2| q2 - 1)
            .and_then(|q2m1| q_r.checked_mul(q2m1))
    }) {
        let q_r = p.pow(r);
        let psl_ord = if p == 2 { pgl_ord } else { pgl_ord / 2 };
        if psl_ord > n {
            break;
        }
        if psl_ord == n && psl2_fingerprint(h, q_r, &sizes, &orders)? {
            labels.push(SubgroupLabel::Psl2 { p, r });
        }
        if pgl_ord == n && pgl2_fingerprint(h, p, q_r, &sizes, &orders)? {
            labels.push(SubgroupLabel::Pgl2 { p, r });
        }
        r += 1;
    }

    if labels.is_empty() {
        return Err(Error::ClassificationGap(n));
    }
    Ok(labels)
}

/// How the extremal abelian subgroup was certified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// The witness is the only subgroup of its order, hence characteristic.
    UniqueOfItsOrder,
    /// The witness is the unique Sylow-p subgroup, hence characteristic.
    UniqueSylow,
    /// Only normality (via the lattice) is certified.
    NormalAbelianOnly,
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::UniqueOfItsOrder => write!(f, "characteristic(unique-order)"),
            Certificate::UniqueSylow => write!(f, "characteristic(unique-sylow)"),
            Certificate::NormalAbelianOnly => write!(f, "normal-abelian"),
        }
    }
}

/// One subgroup class of `PGL_2(F_q)` in the conic-bound report.
#[derive(Clone, Debug)]
pub struct ConicBoundRow {
    pub order: u64,
    pub jordan_constant: u64,
    pub witness_order: u64,
    pub certificate: Certificate,
}

/// Result of checking `jordan_constant(H) <= max(q(q^2-1), 60)` over
/// every subgroup class of `PGL_2(F_q)`.
#[derive(Debug)]
pub struct ConicBoundReport {
    pub q: u64,
    pub bound: u64,
    pub rows: Vec<ConicBoundRow>,
    pub max_jordan: u64,
}

/// Verifies the index bound for every subgroup class of `PGL_2(F_q)` and
/// certifies a characteristic abelian subgroup where a uniqueness
/// certificate applies.
pub fn verify_conic_bound(field: &Field, cap: usize) -> Result<ConicBoundReport> {
    let q = field.q();
    let p = field.p();
    let bound = (q * (q * q - 1)).max(60);
    let g = pgl_group(field, 2, cap)?;
    let classes = g.subgroups_up_to_conjugacy(g.order())?;
    let mut rows = Vec::new();
    let mut max_jordan = 0u64;
    for h in &classes {
        let jr = h.jordan_constant()?;
        if jr.jordan_constant > bound {
            return Err(Error::BoundViolation(format!(
                "subgroup of order {} has jordan constant {} > {} in PGL_2(F_{q})",
                h.order(),
                jr.jordan_constant,
                bound
            )));
        }
        max_jordan = max_jordan.max(jr.jordan_constant);
        let certificate = certify(h, &jr.witness_ids, p)?;
        rows.push(ConicBoundRow {
            order: h.order(),
            jordan_constant: jr.jordan_constant,
            witness_order: jr.witness_order,
            certificate,
        });
    }
    Ok(ConicBoundReport {
        q,
        bound,
        rows,
        max_jordan,
    })
}

fn certify<E: GroupElem>(
    h: &FinGroup<E>,
    witness_ids: &[u32],
    p: u64,
) -> Result<Certificate> {
    let a_order = witness_ids.len() as u64;
    // the witness is the full (hence unique, hence characteristic)
    // Sylow-p subgroup when it consists of every p-element
    let orders = h.element_orders();
    let p_elements: Vec<u32> = orders
        .iter()
        .enumerate()
        .filter(|(_, &o)| o > 1 && p_part(o, p) == o)
        .map(|(i, _)| i as u32)
        .collect();
    if a_order > 1
        && a_order == p_part(h.order(), p)
        && p_elements.len() as u64 == a_order - 1
        && p_elements.iter().all(|i| witness_ids.contains(i))
    {
        return Ok(Certificate::UniqueSylow);
    }
    let subs = h.all_subgroups(h.order())?;
    let same_order = subs
        .iter()
        .filter(|r| r.ids.len() as u64 == a_order)
        .count();
    if same_order == 1 {
        return Ok(Certificate::UniqueOfItsOrder);
    }
    Ok(Certificate::NormalAbelianOnly)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::construct_field;
    use crate::grpenum::special::{dihedral_group, psl_group};
    use crate::grpenum::{generate_group, DEFAULT_BFS_CAP};
    use crate::matgrp::ProjMat;
    use crate::maxorder::singer_pgl;

    #[test]
    fn classify_singer_c5_in_pgl2_f4() {
        let f4 = construct_field(2, 2).unwrap();
        let s = singer_pgl(&f4, 2).unwrap();
        let c5 = generate_group(&[s], DEFAULT_BFS_CAP).unwrap();
        assert_eq!(c5.order(), 5);
        let labels = classify_pgl2_subgroup(&c5, 2).unwrap();
        assert_eq!(
            labels,
            vec![SubgroupLabel::Type5 {
                unipotent_order: 1,
                m: 5
            }]
        );
    }

    #[test]
    fn classify_psl2_f5() {
        let f5 = construct_field(5, 1).unwrap();
        let g = psl_group(&f5, 2, DEFAULT_BFS_CAP).unwrap();
        assert_eq!(g.order(), 60);
        let labels = classify_pgl2_subgroup(&g, 5).unwrap();
        assert!(labels.contains(&SubgroupLabel::Psl2 { p: 5, r: 1 }));
        assert!(labels.contains(&SubgroupLabel::Alt5));
    }

    #[test]
    fn classify_full_pgl2_f3() {
        let f3 = construct_field(3, 1).unwrap();
        let g = pgl_group(&f3, 2, DEFAULT_BFS_CAP).unwrap();
        let labels = classify_pgl2_subgroup(&g, 3).unwrap();
        assert!(labels.contains(&SubgroupLabel::Pgl2 { p: 3, r: 1 }));
        assert!(labels.contains(&SubgroupLabel::Sym4));
    }

    #[test]
    fn classify_dihedral_and_type5() {
        // D_6 inside some PGL_2; classified relative to characteristic 5
        let d6 = dihedral_group(6, DEFAULT_BFS_CAP).unwrap();
        let labels = classify_pgl2_subgroup(&d6, 5).unwrap();
        assert!(labels.contains(&SubgroupLabel::Dihedral { m: 6 }));

        // Klein four group: dihedral with m = 2, and also elementary
        // abelian in characteristic 2
        let v4 = dihedral_group(2, DEFAULT_BFS_CAP).unwrap();
        let labels = classify_pgl2_subgroup(&v4, 2).unwrap();
        assert!(labels.contains(&SubgroupLabel::Dihedral { m: 2 }));
        assert!(labels.contains(&SubgroupLabel::Type5 {
            unipotent_order: 4,
            m: 1
        }));
    }

    #[test]
    fn every_subgroup_class_of_small_pgl2_labeled() {
        for q in [2u64, 3, 4] {
            let (p, k) = crate::arith::prime_power(q).unwrap();
            let field = construct_field(p, k).unwrap();
            let g = pgl_group(&field, 2, DEFAULT_BFS_CAP).unwrap();
            for h in g.subgroups_up_to_conjugacy(g.order()).unwrap() {
                let labels = classify_pgl2_subgroup(&h, p).unwrap();
                assert!(!labels.is_empty(), "unlabeled subgroup of order {}", h.order());
            }
        }
    }

    #[test]
    fn conic_bound_small_q() {
        // q = 2: every subgroup of S_3 has jordan constant <= 2 <= 60
        let f2 = construct_field(2, 1).unwrap();
        let report = verify_conic_bound(&f2, DEFAULT_BFS_CAP).unwrap();
        assert_eq!(report.bound, 60);
        assert!(report.max_jordan <= 2);

        // q = 4: the extremal subgroup is PGL_2(F_4) = A_5 itself at 60
        let f4 = construct_field(2, 2).unwrap();
        let report = verify_conic_bound(&f4, DEFAULT_BFS_CAP).unwrap();
        assert_eq!(report.bound, 60);
        assert_eq!(report.max_jordan, 60);
    }

    #[test]
    fn certificates_cover_all_strengths() {
        // q = 5: the Sylow-5 certificate appears (e.g. F_20 with witness
        // C_5), and S_4's witness V_4 is neither unique of its order nor
        // Sylow, so the weaker normal-abelian certificate is reported
        let f5 = construct_field(5, 1).unwrap();
        let report = verify_conic_bound(&f5, DEFAULT_BFS_CAP).unwrap();
        let kinds: Vec<&Certificate> = report.rows.iter().map(|r| &r.certificate).collect();
        assert!(kinds.contains(&&Certificate::UniqueOfItsOrder));
        assert!(kinds.contains(&&Certificate::UniqueSylow));
        assert!(kinds.contains(&&Certificate::NormalAbelianOnly));
        let s4_row = report
            .rows
            .iter()
            .find(|r| r.order == 24 && r.witness_order == 4)
            .expect("S_4 class present");
        assert_eq!(s4_row.certificate, Certificate::NormalAbelianOnly);
        assert_eq!(s4_row.jordan_constant, 6);
    }

    #[test]
    fn trivial_subgroup_is_type5() {
        let f2 = construct_field(2, 1).unwrap();
        let id = ProjMat::new(crate::matgrp::Mat::identity(&f2, 2));
        let g = generate_group(&[id], DEFAULT_BFS_CAP).unwrap();
        let labels = classify_pgl2_subgroup(&g, 2).unwrap();
        assert_eq!(
            labels,
            vec![SubgroupLabel::Type5 {
                unipotent_order: 1,
                m: 1
            }]
        );
    }
}
