//! Permutations on `{0..n-1}` and groups enumerated by closure.
//!
//! Composition convention: `compose(a, b)` applies `b` first, then `a`, so
//! `compose(a, b).apply(i) == a.apply(b.apply(i))`.

use std::collections::HashMap;
use std::fmt;

use crate::error::{GroupError, Result};
use crate::numbers::lcm;

/// Element limit used when the caller does not supply one.
pub const DEFAULT_CAP: usize = 1_000_000;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Box<[u32]>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(GroupError::NotAPermutation(n));
            }
            seen[x] = true;
        }
        Ok(Permutation {
            images: images.into_boxed_slice(),
        })
    }

    /// Builds a permutation from disjoint cycles, e.g. `&[&[0, 1, 2]]`.
    pub fn from_cycles(degree: usize, cycles: &[&[u32]]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                let x_us = x as usize;
                if x_us >= degree || touched[x_us] {
                    return Err(GroupError::NotAPermutation(degree));
                }
                touched[x_us] = true;
                images[x_us] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Permutation {
            images: images.into_boxed_slice(),
        })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Permutation::from_images(images.clone()).is_ok());
        Permutation {
            images: images.into_boxed_slice(),
        }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn apply(&self, point: u32) -> u32 {
        self.images[point as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// `self ∘ other`, panicking on a degree mismatch. Internal fast path.
    pub(crate) fn mul(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree());
        Permutation {
            images: other
                .images
                .iter()
                .map(|&i| self.images[i as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation {
            images: inv.into_boxed_slice(),
        }
    }

    /// `g ∘ self ∘ g⁻¹`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        g.mul(self).mul(&g.inverse())
    }

    pub fn pow(&self, mut k: u64) -> Permutation {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    /// Non-trivial cycles, each starting at its least point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start as u32];
            seen[start] = true;
            let mut x = self.images[start] as usize;
            while x != start {
                seen[x] = true;
                cycle.push(x as u32);
                x = self.images[x] as usize;
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Order as the lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1, |acc, c| lcm(acc, c.len() as u64))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

pub fn compose(a: &Permutation, b: &Permutation) -> Result<Permutation> {
    if a.degree() != b.degree() {
        return Err(GroupError::DegreeMismatch {
            left: a.degree(),
            right: b.degree(),
        });
    }
    Ok(a.mul(b))
}

pub fn element_order(p: &Permutation) -> u64 {
    p.order()
}

/// A finite permutation group with every element enumerated.
#[derive(Clone)]
pub struct Group {
    name: String,
    provenance: String,
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
}

impl Group {
    /// Breadth-first closure from the identity. Element order is the discovery
    /// order, so it depends only on the generator list.
    pub fn generate(gens: Vec<Permutation>, cap: usize) -> Result<Group> {
        let first = gens.first().ok_or(GroupError::EmptyGenerators)?;
        let degree = first.degree();
        if let Some(bad) = gens.iter().find(|g| g.degree() != degree) {
            return Err(GroupError::DegreeMismatch {
                left: degree,
                right: bad.degree(),
            });
        }
        let identity = Permutation::identity(degree);
        let mut elements = vec![identity.clone()];
        let mut index = HashMap::new();
        index.insert(identity, 0);
        let mut head = 0;
        while head < elements.len() {
            for g in &gens {
                let p = g.mul(&elements[head]);
                if !index.contains_key(&p) {
                    if elements.len() >= cap {
                        return Err(GroupError::GroupTooLarge(cap));
                    }
                    index.insert(p.clone(), elements.len());
                    elements.push(p);
                }
            }
            head += 1;
        }
        Ok(Group {
            name: String::new(),
            provenance: String::new(),
            degree,
            generators: gens,
            elements,
            index,
        })
    }

    pub fn trivial(degree: usize) -> Group {
        Group::generate(vec![Permutation::identity(degree.max(1))], 1)
            .expect("trivial group always fits")
    }

    pub fn named(mut self, name: impl Into<String>) -> Group {
        self.name = name.into();
        self
    }

    pub fn with_provenance(mut self, provenance: impl Into<String>) -> Group {
        self.provenance = provenance.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn identity(&self) -> &Permutation {
        &self.elements[0]
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.index.contains_key(p)
    }

    pub fn is_abelian(&self) -> bool {
        self.generators.iter().enumerate().all(|(i, a)| {
            self.generators[i + 1..]
                .iter()
                .all(|b| a.mul(b) == b.mul(a))
        })
    }

    /// Subgroup generated by `gens`, which must be members of `self`.
    pub fn subgroup(&self, gens: Vec<Permutation>) -> Result<Group> {
        if gens.iter().any(|g| !self.contains(g)) {
            return Err(GroupError::NotAMember);
        }
        let gens = if gens.is_empty() {
            vec![self.identity().clone()]
        } else {
            gens
        };
        Group::generate(gens, self.order())
    }

    /// True when every element of `other` lies in `self`.
    pub fn contains_group(&self, other: &Group) -> bool {
        other.degree == self.degree && other.generators.iter().all(|g| self.contains(g))
    }
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Group")
            .field("name", &self.name)
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}
