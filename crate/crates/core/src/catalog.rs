//! The classified P_4 groups, the counterexample suite and the probe entries.

use std::fmt;

use serde::Serialize;

use crate::constructors::{Builder, GroupExpr};
use crate::error::Result;
use crate::numbers::{euler_phi, gcd, multiplicative_order};
use crate::perm::Group;

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Clause {
    I,
    Ii,
    Iii,
    Iv,
    V,
    Vi,
    Vii,
    Counterexample,
    Probe,
}

impl Clause {
    pub const THEOREM: [Clause; 7] = [
        Clause::I,
        Clause::Ii,
        Clause::Iii,
        Clause::Iv,
        Clause::V,
        Clause::Vi,
        Clause::Vii,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Clause::I => "i",
            Clause::Ii => "ii",
            Clause::Iii => "iii",
            Clause::Iv => "iv",
            Clause::V => "v",
            Clause::Vi => "vi",
            Clause::Vii => "vii",
            Clause::Counterexample => "counterexample",
            Clause::Probe => "probe",
        }
    }

    pub fn is_theorem_clause(self) -> bool {
        !matches!(self, Clause::Counterexample | Clause::Probe)
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub id: String,
    pub description: String,
    pub clause: Clause,
    /// How to build the group; `None` when no such group exists.
    pub recipe: Option<GroupExpr>,
    /// Why the entry could not be realized, when `recipe` is `None`.
    pub reason: Option<String>,
}

impl CatalogEntry {
    fn new(id: &str, clause: Clause, description: &str, recipe: GroupExpr) -> Self {
        CatalogEntry {
            id: id.to_string(),
            description: description.to_string(),
            clause,
            recipe: Some(recipe),
            reason: None,
        }
    }

    pub fn constructible(&self) -> bool {
        self.recipe.is_some()
    }

    pub fn build(&self, builder: &Builder) -> Option<Result<Group>> {
        self.recipe.as_ref().map(|r| r.build(builder))
    }
}

/// Least `g` giving a fixed-point-free action of `C_k` on `C_m`, if any.
pub fn frobenius_multiplier(m: u64, k: u64) -> Option<u64> {
    (1..m.max(2)).find(|&g| {
        multiplicative_order(g, m) == Some(k) && {
            let mut power = 1;
            (1..k).all(|_| {
                power = power * g % m;
                gcd((power + m - 1) % m, m) == 1
            })
        }
    })
}

fn frobenius_cyclic(id: &str, clause: Clause, m: u64, k: u64) -> CatalogEntry {
    let description = format!("Frobenius group with kernel C_{m} and complement of order {k}");
    match frobenius_multiplier(m, k) {
        Some(g) => CatalogEntry::new(
            id,
            clause,
            &description,
            GroupExpr::SemidirectCyclic { m, k, g },
        ),
        None => {
            let units = euler_phi(m);
            let reason = if !units.is_multiple_of(k) {
                format!(
                    "no order-{k} fixed-point-free action on C_{m} exists (φ({m})={units}, not divisible by {k})"
                )
            } else {
                format!("no order-{k} fixed-point-free action on C_{m} exists")
            };
            CatalogEntry {
                id: id.to_string(),
                description,
                clause,
                recipe: None,
                reason: Some(reason),
            }
        }
    }
}

/// Entries for every clause of the classification, in clause order.
pub fn theorem_a_entries() -> Vec<CatalogEntry> {
    use Clause::*;
    use GroupExpr as E;
    vec![
        CatalogEntry::new("i-C1", I, "trivial group", E::Cyclic(1)),
        CatalogEntry::new("i-C2", I, "cyclic group of order 2", E::Cyclic(2)),
        CatalogEntry::new("i-C12", I, "cyclic group of order 12", E::Cyclic(12)),
        CatalogEntry::new(
            "i-C2xC4",
            I,
            "abelian group C_2 x C_4",
            E::Abelian(vec![2, 4]),
        ),
        CatalogEntry::new(
            "ii-D6",
            Ii,
            "Frobenius group with kernel C_3 and complement of order 2",
            E::Dihedral(3),
        ),
        CatalogEntry::new(
            "ii-D10",
            Ii,
            "Frobenius group with kernel C_5 and complement of order 2",
            E::Dihedral(5),
        ),
        CatalogEntry::new(
            "ii-D14",
            Ii,
            "Frobenius group with kernel C_7 and complement of order 2",
            E::Dihedral(7),
        ),
        CatalogEntry::new(
            "iii-A4",
            Iii,
            "Frobenius group with kernel (C_2)^2 and complement of order 3",
            E::ElementarySemidirect {
                p: 2,
                d: 2,
                action: vec![vec![0, 1], vec![1, 1]],
                k: 3,
            },
        ),
        frobenius_cyclic("iii-C7:C3", Iii, 7, 3),
        CatalogEntry::new(
            "iv-S3xC2",
            Iv,
            "S_3 x C_2",
            E::Product(Box::new(E::Symmetric(3)), Box::new(E::Cyclic(2))),
        ),
        CatalogEntry::new(
            "iv-Dic3",
            Iv,
            "<x, y | x^3 = y^4 = 1, xy = yx^-1>",
            E::Dicyclic(3),
        ),
        CatalogEntry::new("v-D8", V, "dihedral group of order 8", E::Dihedral(4)),
        CatalogEntry::new("v-Q8", V, "quaternion group of order 8", E::Dicyclic(2)),
        frobenius_cyclic("vi-C5:C4", Vi, 5, 4),
        frobenius_cyclic("vi-C9:C4", Vi, 9, 4),
        CatalogEntry::new(
            "vi-C3^2:C4",
            Vi,
            "Frobenius group with kernel (C_3)^2 and complement of order 4",
            E::ElementarySemidirect {
                p: 3,
                d: 2,
                action: vec![vec![0, 2], vec![1, 0]],
                k: 4,
            },
        ),
        frobenius_cyclic("vi-C13:C4", Vi, 13, 4),
        CatalogEntry::new("vii-L2(5)", Vii, "PSL(2,5)", E::Psl2(5)),
        CatalogEntry::new("vii-L2(7)", Vii, "PSL(2,7)", E::Psl2(7)),
        CatalogEntry::new("vii-L2(9)", Vii, "PSL(2,9)", E::Psl2(9)),
        CatalogEntry::new("vii-L2(11)", Vii, "PSL(2,11)", E::Psl2(11)),
        CatalogEntry::new("vii-L2(13)", Vii, "PSL(2,13)", E::Psl2(13)),
        CatalogEntry::new("vii-A7", Vii, "alternating group A_7", E::Alternating(7)),
        CatalogEntry::new("vii-Sz8", Vii, "Suzuki group Sz(8)", E::Suzuki8),
    ]
}

/// Groups expected to violate P_4. The large simple member is A_8 when it fits
/// under `cap`, otherwise S_6.
pub fn counterexample_entries(cap: usize) -> Vec<CatalogEntry> {
    use Clause::Counterexample as X;
    use GroupExpr as E;
    let large = if 20160 <= cap {
        CatalogEntry::new("x-A8", X, "alternating group A_8", E::Alternating(8))
    } else {
        CatalogEntry::new("x-S6", X, "symmetric group S_6", E::Symmetric(6))
    };
    vec![
        CatalogEntry::new("x-S5", X, "symmetric group S_5", E::Symmetric(5)),
        large,
        CatalogEntry::new(
            "x-SL2(5)",
            X,
            "SL(2,5), nontrivial center over A_5",
            E::Sl2(5),
        ),
        CatalogEntry::new(
            "x-C4xS3",
            X,
            "C_4 x S_3, abelian direct factor",
            E::Product(Box::new(E::Cyclic(4)), Box::new(E::Symmetric(3))),
        ),
        CatalogEntry::new("x-S7", X, "symmetric group S_7", E::Symmetric(7)),
    ]
}

/// Groups outside the classification whose P_4 status is reported as computed.
pub fn probe_entries() -> Vec<CatalogEntry> {
    vec![CatalogEntry::new(
        "probe-S4",
        Clause::Probe,
        "symmetric group S_4",
        GroupExpr::Symmetric(4),
    )]
}

/// Every entry the verifier runs: classification, counterexamples, probes.
pub fn all_entries(cap: usize) -> Vec<CatalogEntry> {
    let mut v = theorem_a_entries();
    v.extend(counterexample_entries(cap));
    v.extend(probe_entries());
    v
}

/// The classification entries with their groups built.
pub fn theorem_a_catalog() -> Result<Vec<(CatalogEntry, Option<Group>)>> {
    let builder = Builder::default();
    theorem_a_entries()
        .into_iter()
        .map(|e| {
            let g = e.build(&builder).transpose()?;
            Ok((e, g))
        })
        .collect()
}
