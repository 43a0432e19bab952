//! Conjugacy classes and the subgroup machinery built around them: center,
//! derived subgroup, normal closure, quotients and class counts over subsets.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use crate::error::{GroupError, Result};
use crate::perm::{Group, Permutation};

#[derive(Clone, Debug)]
pub struct ConjugacyClass {
    pub representative: Permutation,
    pub size: usize,
    pub element_order: u64,
    pub is_central: bool,
    /// Sorted indices into the group's element list.
    pub members: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct ClassDecomposition {
    group: Group,
    classes: Vec<ConjugacyClass>,
    class_of: Vec<usize>,
    element_orders: Vec<u64>,
    center_size: usize,
}

/// Order, sorted class sizes and spectrum; used wherever groups are compared.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Fingerprint {
    pub order: usize,
    pub class_sizes: Vec<usize>,
    pub spectrum: Vec<u64>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GzClass {
    Abelian,
    /// G'Z(G) is a proper subgroup.
    Proper,
    /// G'Z(G) = G.
    Full,
}

/// Orbits of the conjugation action, found by conjugating with generators only.
pub fn decompose(group: &Group) -> ClassDecomposition {
    let n = group.order();
    let gens: Vec<(Permutation, Permutation)> = group
        .generators()
        .iter()
        .map(|g| (g.clone(), g.inverse()))
        .collect();
    let element_orders: Vec<u64> = group.elements().iter().map(Permutation::order).collect();
    let mut class_of = vec![usize::MAX; n];
    let mut raw: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        if class_of[start] != usize::MAX {
            continue;
        }
        let id = raw.len();
        class_of[start] = id;
        let mut orbit = vec![start];
        let mut head = 0;
        while head < orbit.len() {
            let x = group.element(orbit[head]);
            for (g, g_inv) in &gens {
                let y = g.mul(x).mul(g_inv);
                let j = group
                    .index_of(&y)
                    .expect("group is closed under conjugation");
                if class_of[j] == usize::MAX {
                    class_of[j] = id;
                    orbit.push(j);
                }
            }
            head += 1;
        }
        orbit.sort_unstable();
        raw.push(orbit);
    }

    let mut classes: Vec<ConjugacyClass> = raw
        .into_iter()
        .map(|members| {
            let rep_idx = *members
                .iter()
                .min_by(|&&a, &&b| group.element(a).cmp(group.element(b)))
                .expect("orbits are non-empty");
            ConjugacyClass {
                representative: group.element(rep_idx).clone(),
                size: members.len(),
                element_order: element_orders[rep_idx],
                is_central: members.len() == 1,
                members,
            }
        })
        .collect();
    classes.sort_by(|a, b| {
        (a.element_order, a.size, &a.representative).cmp(&(
            b.element_order,
            b.size,
            &b.representative,
        ))
    });
    for (id, class) in classes.iter().enumerate() {
        for &m in &class.members {
            class_of[m] = id;
        }
    }
    let center_size = classes.iter().filter(|c| c.is_central).count();
    ClassDecomposition {
        group: group.clone(),
        classes,
        class_of,
        element_orders,
        center_size,
    }
}

impl ClassDecomposition {
    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    pub fn class(&self, i: usize) -> &ConjugacyClass {
        &self.classes[i]
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn center_size(&self) -> usize {
        self.center_size
    }

    /// Class index of the element at `element_index`.
    pub fn class_of(&self, element_index: usize) -> usize {
        self.class_of[element_index]
    }

    pub fn element_order(&self, element_index: usize) -> u64 {
        self.element_orders[element_index]
    }

    pub fn non_central(&self) -> impl Iterator<Item = (usize, &ConjugacyClass)> {
        self.classes
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_central)
    }

    /// |C_G(x)| for `x` in class `i`, by orbit-stabilizer.
    pub fn centralizer_order(&self, i: usize) -> usize {
        self.group.order() / self.classes[i].size
    }

    pub fn spectrum(&self) -> BTreeSet<u64> {
        self.element_orders.iter().copied().collect()
    }

    pub fn center_elements(&self) -> Vec<Permutation> {
        self.classes
            .iter()
            .filter(|c| c.is_central)
            .map(|c| c.representative.clone())
            .collect()
    }

    pub fn center(&self) -> Group {
        self.group
            .subgroup(self.center_elements())
            .expect("center elements are members")
    }

    /// Number of classes whose element order is exactly `order`.
    pub fn classes_of_order(&self, order: u64) -> usize {
        self.classes
            .iter()
            .filter(|c| c.element_order == order)
            .count()
    }

    /// Number of involution classes.
    pub fn involution_classes(&self) -> usize {
        self.classes_of_order(2)
    }

    /// Number of classes meeting the given set of element indices.
    pub fn kg_count(&self, subset: &[usize]) -> usize {
        subset
            .iter()
            .map(|&i| self.class_of[i])
            .collect::<BTreeSet<_>>()
            .len()
    }

    pub fn fingerprint(&self) -> Fingerprint {
        let mut class_sizes: Vec<usize> = self.classes.iter().map(|c| c.size).collect();
        class_sizes.sort_unstable();
        Fingerprint {
            order: self.group.order(),
            class_sizes,
            spectrum: self.spectrum().into_iter().collect(),
        }
    }

    /// Counts of classes by element order.
    pub fn order_profile(&self) -> BTreeMap<u64, usize> {
        let mut out = BTreeMap::new();
        for c in &self.classes {
            *out.entry(c.element_order).or_insert(0) += 1;
        }
        out
    }
}

pub fn centralizer_order(d: &ClassDecomposition, class_index: usize) -> usize {
    d.centralizer_order(class_index)
}

pub fn spectrum(group: &Group) -> BTreeSet<u64> {
    group.elements().iter().map(Permutation::order).collect()
}

pub fn kg_count(d: &ClassDecomposition, subset: &[usize]) -> usize {
    d.kg_count(subset)
}

/// Commutator `a b a⁻¹ b⁻¹`.
pub fn commutator(a: &Permutation, b: &Permutation) -> Permutation {
    a.mul(b).mul(&a.inverse()).mul(&b.inverse())
}

/// Smallest normal subgroup of `group` containing `seed`.
pub fn normal_closure(group: &Group, seed: &[Permutation]) -> Result<Group> {
    if seed.iter().any(|s| !group.contains(s)) {
        return Err(GroupError::NotAMember);
    }
    let mut gens: Vec<Permutation> = seed.iter().filter(|s| !s.is_identity()).cloned().collect();
    let mut sub = group.subgroup(gens.clone())?;
    loop {
        let mut extra = None;
        'search: for h in &gens {
            for g in group.generators() {
                let c = h.conjugate_by(g);
                if !sub.contains(&c) {
                    extra = Some(c);
                    break 'search;
                }
            }
        }
        match extra {
            Some(c) => {
                gens.push(c);
                sub = group.subgroup(gens.clone())?;
            }
            None => return Ok(sub),
        }
    }
}

/// G' as the normal closure of the commutators of generator pairs.
pub fn derived_subgroup(group: &Group) -> Group {
    let gens = group.generators();
    let mut seeds = Vec::new();
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            let c = commutator(a, b);
            if !c.is_identity() {
                seeds.push(c);
            }
        }
    }
    normal_closure(group, &seeds).expect("commutators of generators are members")
}

pub fn gz_classification(group: &Group) -> GzClass {
    if group.is_abelian() {
        return GzClass::Abelian;
    }
    let d = decompose(group);
    gz_classification_with(&d)
}

pub fn gz_classification_with(d: &ClassDecomposition) -> GzClass {
    let group = d.group();
    if group.is_abelian() {
        return GzClass::Abelian;
    }
    let derived = derived_subgroup(group);
    let mut gens: Vec<Permutation> = derived.generators().to_vec();
    gens.extend(d.center_elements());
    let gz = group.subgroup(gens).expect("members");
    if gz.order() == group.order() {
        GzClass::Full
    } else {
        GzClass::Proper
    }
}

/// True when conjugating `sub` by each generator of `group` stays inside `sub`.
pub fn is_normal(group: &Group, sub: &Group) -> bool {
    group.contains_group(sub)
        && sub.generators().iter().all(|h| {
            group
                .generators()
                .iter()
                .all(|g| sub.contains(&h.conjugate_by(g)))
        })
}

/// `G/N` realized by the action of `G` on the left cosets of `N`.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: Group,
    /// For each element index of `G`, the index of its image in `group`.
    pub projection: Vec<usize>,
}

pub fn quotient(group: &Group, normal: &Group) -> Result<Quotient> {
    if !group.contains_group(normal) {
        return Err(GroupError::NotASubgroup);
    }
    if !is_normal(group, normal) {
        return Err(GroupError::NotNormal);
    }
    let n = group.order();
    let mut coset_of = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for i in 0..n {
        if coset_of[i] != usize::MAX {
            continue;
        }
        let id = reps.len();
        let x = group.element(i);
        for h in normal.elements() {
            let j = group.index_of(&x.mul(h)).expect("closed");
            coset_of[j] = id;
        }
        reps.push(i);
    }
    let degree = reps.len();
    let action = |g: &Permutation| -> Permutation {
        let images = reps
            .iter()
            .map(|&r| {
                let j = group.index_of(&g.mul(group.element(r))).expect("closed");
                coset_of[j] as u32
            })
            .collect();
        Permutation::from_images_unchecked(images)
    };
    let gens: Vec<Permutation> = group.generators().iter().map(action).collect();
    let image =
        Group::generate(gens, degree.max(1))?.named(format!("{}/{}", group.name(), normal.name()));
    if image.order() != degree {
        return Err(GroupError::ConstructionInvariantViolated(format!(
            "quotient has order {} but index is {degree}",
            image.order()
        )));
    }
    let mut memo: HashMap<usize, usize> = HashMap::new();
    let projection = (0..n)
        .map(|i| {
            // elements in the same coset share an image
            let c = coset_of[i];
            *memo.entry(c).or_insert_with(|| {
                image
                    .index_of(&action(group.element(i)))
                    .expect("image lies in the quotient")
            })
        })
        .collect();
    Ok(Quotient {
        group: image,
        projection,
    })
}
