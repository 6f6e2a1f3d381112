//! Finite-group engine: breadth-first enumeration from matrix generators,
//! conjugacy classes, the normal-subgroup lattice via class-closure joins,
//! Jordan constants, and exhaustive subgroup enumeration up to conjugacy.

use std::collections::HashMap;
use std::fmt;

use crate::arith::Lcg;
use crate::error::Error;
use crate::matgrp::{Mat, ProjMat};
use crate::Result;

mod classify;
mod special;

pub use classify::{
    classify_pgl2_subgroup, verify_conic_bound, Certificate, ConicBoundReport, ConicBoundRow,
    SubgroupLabel,
};
pub use special::{
    dihedral_group, gl_group, p1xp1_group, pgl_group, psl_group, sl_group, special_group,
    su4_f2_group, unipotent_polynomial_group, AnyGroup, GroupSpec,
};

/// Default cap on breadth-first group enumeration.
pub const DEFAULT_BFS_CAP: usize = 500_000;
/// Cap on exhaustive subgroup enumeration.
pub const SUBGROUP_ENUM_CAP: usize = 10_000;
/// Conjugacy-class bound for normal-lattice enumeration.
pub const LATTICE_CLASS_CAP: usize = 64;
/// Groups up to this order cache a full Cayley table.
const CAYLEY_CAP: usize = 2048;

/// A group element with value semantics: canonical representation,
/// multiplication and inversion.
pub trait GroupElem: Clone + Eq + std::hash::Hash + fmt::Display {
    fn op(&self, rhs: &Self) -> Self;
    fn try_inv(&self) -> Result<Self>;
}

impl GroupElem for Mat {
    fn op(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }
    fn try_inv(&self) -> Result<Self> {
        self.inverse()
    }
}

impl GroupElem for ProjMat {
    fn op(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }
    fn try_inv(&self) -> Result<Self> {
        self.inverse()
    }
}

/// Fully enumerated finite group. Element ids follow breadth-first
/// discovery order, so every derived structure is deterministic.
pub struct FinGroup<E: GroupElem> {
    elements: Vec<E>,
    index: HashMap<E, u32>,
    gens: Vec<u32>,
    identity: u32,
    inverses: Vec<u32>,
    cayley: Option<Vec<u32>>,
}

/// Breadth-first closure of the generating set under multiplication.
pub fn generate_group<E: GroupElem>(gens: &[E], cap: usize) -> Result<FinGroup<E>> {
    assert!(!gens.is_empty(), "generator list must be nonempty");
    let identity = gens[0].op(&gens[0].try_inv()?);
    let mut elements = vec![identity.clone()];
    let mut index: HashMap<E, u32> = HashMap::new();
    index.insert(identity, 0);
    let mut gen_ids = Vec::new();
    for g in gens {
        let id = match index.get(g) {
            Some(&id) => id,
            None => {
                let id = elements.len() as u32;
                index.insert(g.clone(), id);
                elements.push(g.clone());
                id
            }
        };
        gen_ids.push(id);
    }
    let mut head = 0usize;
    while head < elements.len() {
        let cur = elements[head].clone();
        for &g in &gen_ids {
            let next = cur.op(&elements[g as usize]);
            if let std::collections::hash_map::Entry::Vacant(slot) = index.entry(next) {
                if elements.len() >= cap {
                    return Err(Error::CapExceeded(format!(
                        "group closure exceeds {cap} elements"
                    )));
                }
                elements.push(slot.key().clone());
                slot.insert(elements.len() as u32 - 1);
            }
        }
        head += 1;
    }
    FinGroup::finish(elements, index, gen_ids, 0)
}

impl<E: GroupElem> FinGroup<E> {
    fn finish(
        elements: Vec<E>,
        index: HashMap<E, u32>,
        gens: Vec<u32>,
        identity: u32,
    ) -> Result<FinGroup<E>> {
        let mut inverses = vec![u32::MAX; elements.len()];
        for (i, e) in elements.iter().enumerate() {
            if inverses[i] != u32::MAX {
                continue;
            }
            let inv = e.try_inv()?;
            let j = *index.get(&inv).expect("closed under inversion");
            inverses[i] = j;
            inverses[j as usize] = i as u32;
        }
        let mut group = FinGroup {
            elements,
            index,
            gens,
            identity,
            inverses,
            cayley: None,
        };
        if group.order() as usize <= CAYLEY_CAP {
            let n = group.order() as usize;
            let mut table = vec![0u32; n * n];
            for i in 0..n {
                for j in 0..n {
                    let prod = group.elements[i].op(&group.elements[j]);
                    table[i * n + j] = group.index[&prod];
                }
            }
            group.cayley = Some(table);
        }
        Ok(group)
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn elements(&self) -> &[E] {
        &self.elements
    }

    pub fn element(&self, id: u32) -> &E {
        &self.elements[id as usize]
    }

    pub fn identity_id(&self) -> u32 {
        self.identity
    }

    pub fn generator_ids(&self) -> &[u32] {
        &self.gens
    }

    pub fn id_of(&self, e: &E) -> Option<u32> {
        self.index.get(e).copied()
    }

    pub fn mul_ids(&self, a: u32, b: u32) -> u32 {
        match &self.cayley {
            Some(t) => t[a as usize * self.elements.len() + b as usize],
            None => {
                let prod = self.elements[a as usize].op(&self.elements[b as usize]);
                self.index[&prod]
            }
        }
    }

    pub fn inv_id(&self, a: u32) -> u32 {
        self.inverses[a as usize]
    }

    /// `g x g^-1`.
    pub fn conj_ids(&self, g: u32, x: u32) -> u32 {
        self.mul_ids(self.mul_ids(g, x), self.inv_id(g))
    }

    /// Order of a single element by repeated multiplication.
    pub fn order_of_id(&self, x: u32) -> u64 {
        let mut cur = x;
        let mut t = 1u64;
        while cur != self.identity {
            cur = self.mul_ids(cur, x);
            t += 1;
        }
        t
    }

    /// Sorted id set of the subgroup generated by the seed ids; seeds
    /// already inside the running closure contribute no work.
    pub fn subgroup_closure(&self, seeds: &[u32]) -> Vec<u32> {
        let mut have = vec![false; self.elements.len()];
        have[self.identity as usize] = true;
        let mut members = vec![self.identity];
        let mut gens: Vec<u32> = Vec::new();
        for &s in seeds {
            if have[s as usize] {
                continue;
            }
            gens.push(s);
            // re-close from scratch with the enlarged generator set
            have.iter_mut().for_each(|b| *b = false);
            have[self.identity as usize] = true;
            members = vec![self.identity];
            let mut head = 0;
            while head < members.len() {
                let cur = members[head];
                for &g in &gens {
                    let next = self.mul_ids(cur, g);
                    if !have[next as usize] {
                        have[next as usize] = true;
                        members.push(next);
                    }
                }
                head += 1;
            }
        }
        members.sort_unstable();
        members
    }

    /// Greedy minimal generating ids for a closed subgroup id set.
    pub fn minimal_generators(&self, ids: &[u32]) -> Vec<u32> {
        let mut gens = Vec::new();
        let mut closure = vec![self.identity];
        for &x in ids {
            if closure.binary_search(&x).is_err() {
                gens.push(x);
                closure = self.subgroup_closure(&gens);
                if closure.len() == ids.len() {
                    break;
                }
            }
        }
        gens
    }

    /// Re-packages a closed subgroup id set as a standalone group.
    pub fn subgroup_as_group(&self, ids: &[u32]) -> Result<FinGroup<E>> {
        let elements: Vec<E> = ids
            .iter()
            .map(|&i| self.elements[i as usize].clone())
            .collect();
        let index: HashMap<E, u32> = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i as u32))
            .collect();
        let identity = index[&self.elements[self.identity as usize]];
        let gens = self
            .minimal_generators(ids)
            .iter()
            .map(|&g| index[&self.elements[g as usize]])
            .collect::<Vec<u32>>();
        let gens = if gens.is_empty() { vec![identity] } else { gens };
        FinGroup::finish(elements, index, gens, identity)
    }

    /// Early-exit pairwise commutativity test over an id set.
    pub fn is_abelian_subset(&self, ids: &[u32]) -> bool {
        for (i, &a) in ids.iter().enumerate() {
            for &b in ids.iter().skip(i + 1) {
                if self.mul_ids(a, b) != self.mul_ids(b, a) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_abelian(&self) -> bool {
        let all: Vec<u32> = (0..self.elements.len() as u32).collect();
        self.is_abelian_subset(&all)
    }

    /// Conjugation-stability and closure check, used as an independent
    /// normality certificate in tests.
    pub fn is_normal(&self, ids: &[u32], trials: usize) -> bool {
        let sorted: Vec<u32> = {
            let mut s = ids.to_vec();
            s.sort_unstable();
            s
        };
        let inside = |x: u32| sorted.binary_search(&x).is_ok();
        for &a in &sorted {
            for &b in &sorted {
                if !inside(self.mul_ids(a, b)) {
                    return false;
                }
            }
        }
        let mut lcg = Lcg::new(self.order() ^ 0x5eed);
        for _ in 0..trials {
            let g = lcg.below(self.order()) as u32;
            for &x in &sorted {
                if !inside(self.conj_ids(g, x)) {
                    return false;
                }
            }
        }
        true
    }

    /// Partition into conjugacy classes: orbit closure under conjugation
    /// by the generators.
    pub fn conjugacy_classes(&self) -> ConjClassSet {
        let n = self.elements.len();
        let mut class_of = vec![u32::MAX; n];
        let mut classes: Vec<Vec<u32>> = Vec::new();
        for start in 0..n as u32 {
            if class_of[start as usize] != u32::MAX {
                continue;
            }
            let cid = classes.len() as u32;
            let mut orbit = vec![start];
            class_of[start as usize] = cid;
            let mut head = 0;
            while head < orbit.len() {
                let x = orbit[head];
                for &g in &self.gens {
                    let y = self.conj_ids(g, x);
                    if class_of[y as usize] == u32::MAX {
                        class_of[y as usize] = cid;
                        orbit.push(y);
                    }
                }
                head += 1;
            }
            orbit.sort_unstable();
            classes.push(orbit);
        }
        ConjClassSet { classes, class_of }
    }

    /// The full normal-subgroup lattice. Atoms are the subgroup closures
    /// of single conjugacy classes; every normal subgroup is a join of
    /// such atoms, so the pairwise-join fixpoint is the whole lattice.
    pub fn normal_subgroup_lattice(&self) -> Result<NormalLattice> {
        self.normal_subgroup_lattice_with_cap(LATTICE_CLASS_CAP)
    }

    pub fn normal_subgroup_lattice_with_cap(&self, class_cap: usize) -> Result<NormalLattice> {
        let classes = self.conjugacy_classes();
        if classes.classes.len() > class_cap {
            return Err(Error::TooManyClasses(classes.classes.len()));
        }
        let mut seen: HashMap<Vec<u32>, ()> = HashMap::new();
        let mut sets: Vec<Vec<u32>> = Vec::new();
        let push =
            |set: Vec<u32>, sets: &mut Vec<Vec<u32>>, seen: &mut HashMap<Vec<u32>, ()>| {
                if !seen.contains_key(&set) {
                    seen.insert(set.clone(), ());
                    sets.push(set);
                }
            };
        push(vec![self.identity], &mut sets, &mut seen);
        for class in &classes.classes {
            if class == &[self.identity] {
                continue;
            }
            push(self.subgroup_closure(class), &mut sets, &mut seen);
        }
        // join fixpoint
        let mut i = 0;
        while i < sets.len() {
            let mut j = 0;
            while j < i {
                let mut seeds = sets[i].clone();
                seeds.extend_from_slice(&sets[j]);
                let join = self.subgroup_closure(&seeds);
                push(join, &mut sets, &mut seen);
                j += 1;
            }
            i += 1;
        }
        let mut subgroups: Vec<NormalSubgroup> = sets
            .into_iter()
            .map(|ids| NormalSubgroup {
                order: ids.len() as u64,
                is_abelian: self.is_abelian_subset(&ids),
                ids,
            })
            .collect();
        subgroups.sort_by(|a, b| (a.order, &a.ids).cmp(&(b.order, &b.ids)));
        Ok(NormalLattice { subgroups })
    }

    /// Jordan constant: group order over the order of the largest abelian
    /// member of the normal lattice.
    pub fn jordan_constant(&self) -> Result<JordanReport> {
        let lattice = self.normal_subgroup_lattice()?;
        let best = lattice
            .subgroups
            .iter()
            .filter(|s| s.is_abelian)
            .max_by_key(|s| s.order)
            .expect("the trivial subgroup is always present and abelian");
        let witness_gens = self
            .minimal_generators(&best.ids)
            .iter()
            .map(|&g| self.elements[g as usize].to_string())
            .collect();
        Ok(JordanReport {
            group_order: self.order(),
            witness_ids: best.ids.clone(),
            witness_order: best.order,
            witness_generators: witness_gens,
            jordan_constant: self.order() / best.order,
        })
    }

    /// Every subgroup, by incremental generator growth to fixpoint.
    /// Discovery order is deterministic.
    pub fn all_subgroups(&self, order_cap: u64) -> Result<Vec<SubgroupRec>> {
        if self.order() as usize > SUBGROUP_ENUM_CAP {
            return Err(Error::CapExceeded(format!(
                "subgroup enumeration limited to groups of order <= {SUBGROUP_ENUM_CAP}"
            )));
        }
        let mut seen: HashMap<Vec<u32>, ()> = HashMap::new();
        let mut list: Vec<SubgroupRec> = Vec::new();
        let trivial = SubgroupRec {
            ids: vec![self.identity],
            gens: vec![],
        };
        seen.insert(trivial.ids.clone(), ());
        list.push(trivial);
        let mut head = 0;
        while head < list.len() {
            let rec = list[head].clone();
            for x in 0..self.elements.len() as u32 {
                if rec.ids.binary_search(&x).is_ok() {
                    continue;
                }
                let mut gens = rec.gens.clone();
                gens.push(x);
                let mut seeds = rec.ids.clone();
                seeds.push(x);
                let ids = self.subgroup_closure(&seeds);
                if ids.len() as u64 > order_cap {
                    continue;
                }
                if !seen.contains_key(&ids) {
                    seen.insert(ids.clone(), ());
                    list.push(SubgroupRec { ids, gens });
                }
            }
            head += 1;
        }
        Ok(list)
    }

    /// Conjugacy classes of subgroups: canonical representative is the
    /// lexicographically smallest id set in the conjugation orbit.
    pub fn subgroup_classes(&self, order_cap: u64) -> Result<Vec<SubgroupClassRec>> {
        let all = self.all_subgroups(order_cap)?;
        let mut by_canonical: HashMap<Vec<u32>, SubgroupClassRec> = HashMap::new();
        let mut order: Vec<Vec<u32>> = Vec::new();
        for rec in all {
            let orbit = self.conjugation_orbit(&rec.ids);
            let canonical = orbit.first().unwrap().clone();
            if !by_canonical.contains_key(&canonical) {
                order.push(canonical.clone());
                by_canonical.insert(
                    canonical.clone(),
                    SubgroupClassRec {
                        rep: canonical,
                        orbit,
                    },
                );
            }
        }
        let mut out: Vec<SubgroupClassRec> = order
            .into_iter()
            .map(|k| by_canonical.remove(&k).unwrap())
            .collect();
        out.sort_by(|a, b| (a.rep.len(), &a.rep).cmp(&(b.rep.len(), &b.rep)));
        Ok(out)
    }

    /// All subgroups conjugate to the given id set (including itself),
    /// sorted lexicographically.
    fn conjugation_orbit(&self, ids: &[u32]) -> Vec<Vec<u32>> {
        let mut seen: HashMap<Vec<u32>, ()> = HashMap::new();
        let start = ids.to_vec();
        let mut orbit = vec![start.clone()];
        seen.insert(start, ());
        let mut head = 0;
        while head < orbit.len() {
            let cur = orbit[head].clone();
            for &g in &self.gens {
                let mut img: Vec<u32> = cur.iter().map(|&x| self.conj_ids(g, x)).collect();
                img.sort_unstable();
                if !seen.contains_key(&img) {
                    seen.insert(img.clone(), ());
                    orbit.push(img);
                }
            }
            head += 1;
        }
        orbit.sort();
        orbit
    }

    /// Subgroup classes re-packaged as standalone groups, sorted by
    /// (order, representative).
    pub fn subgroups_up_to_conjugacy(&self, order_cap: u64) -> Result<Vec<FinGroup<E>>> {
        self.subgroup_classes(order_cap)?
            .iter()
            .map(|c| self.subgroup_as_group(&c.rep))
            .collect()
    }

    /// Derived subgroup: closure of all commutators.
    pub fn derived_subgroup(&self) -> Vec<u32> {
        let n = self.elements.len() as u32;
        let mut comms = Vec::new();
        for a in 0..n {
            for b in 0..n {
                let c = self.mul_ids(
                    self.mul_ids(a, b),
                    self.mul_ids(self.inv_id(a), self.inv_id(b)),
                );
                comms.push(c);
            }
        }
        comms.sort_unstable();
        comms.dedup();
        self.subgroup_closure(&comms)
    }

    /// Element orders for the whole group.
    pub fn element_orders(&self) -> Vec<u64> {
        (0..self.elements.len() as u32)
            .map(|i| self.order_of_id(i))
            .collect()
    }
}

/// Partition of element ids into conjugacy classes.
pub struct ConjClassSet {
    /// Classes in order of their smallest member; each class sorted.
    pub classes: Vec<Vec<u32>>,
    pub class_of: Vec<u32>,
}

impl ConjClassSet {
    /// Class sizes in ascending order.
    pub fn sizes(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.classes.iter().map(|c| c.len()).collect();
        s.sort_unstable();
        s
    }
}

/// One member of the normal lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalSubgroup {
    pub ids: Vec<u32>,
    pub order: u64,
    pub is_abelian: bool,
}

/// All normal subgroups, sorted by (order, id set).
pub struct NormalLattice {
    pub subgroups: Vec<NormalSubgroup>,
}

impl NormalLattice {
    pub fn orders(&self) -> Vec<u64> {
        self.subgroups.iter().map(|s| s.order).collect()
    }
}

/// Jordan constant together with its witness subgroup.
#[derive(Clone, Debug)]
pub struct JordanReport {
    pub group_order: u64,
    pub witness_ids: Vec<u32>,
    pub witness_order: u64,
    pub witness_generators: Vec<String>,
    pub jordan_constant: u64,
}

impl JordanReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "order": self.group_order,
            "jordan_constant": self.jordan_constant,
            "witness_order": self.witness_order,
            "witness_generators": self.witness_generators,
        })
    }
}

/// A subgroup with the generator ids that produced it.
#[derive(Clone, Debug)]
pub struct SubgroupRec {
    pub ids: Vec<u32>,
    pub gens: Vec<u32>,
}

/// A conjugacy class of subgroups.
#[derive(Clone, Debug)]
pub struct SubgroupClassRec {
    /// Lexicographically smallest member of the orbit.
    pub rep: Vec<u32>,
    pub orbit: Vec<Vec<u32>>,
}
