//! Permutation models of the groups the catalog needs.
//!
//! Every constructor returns a fully enumerated [`Group`]. Abelian and dicyclic
//! groups use regular representations, semidirect products use affine actions,
//! and the linear groups are built from matrices over [`FiniteField`] and
//! converted to permutations.

use std::fmt;

use crate::error::{GroupError, Result};
use crate::galois::FiniteField;
use crate::linear::{self, Matrix};
use crate::numbers::{gcd, multiplicative_order};
use crate::perm::{Group, Permutation, DEFAULT_CAP};

/// A semidirect product together with whether its complement acts
/// fixed-point-freely on the kernel (that is, whether it is a Frobenius group).
#[derive(Clone, Debug)]
pub struct SemidirectProduct {
    pub group: Group,
    pub fixed_point_free: bool,
}

/// Constructors bounded by an element cap.
#[derive(Copy, Clone, Debug)]
pub struct Builder {
    cap: usize,
}

impl Default for Builder {
    fn default() -> Self {
        Builder { cap: DEFAULT_CAP }
    }
}

fn cycle_perm(degree: usize, cycle: &[u32]) -> Permutation {
    Permutation::from_cycles(degree, &[cycle]).expect("valid cycle")
}

fn perm_from_fn(degree: usize, f: impl Fn(u32) -> u32) -> Permutation {
    Permutation::from_images_unchecked((0..degree as u32).map(f).collect())
}

impl Builder {
    pub fn with_cap(cap: usize) -> Builder {
        Builder { cap }
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    fn check_order(&self, order: u128) -> Result<()> {
        if order > self.cap as u128 {
            return Err(GroupError::GroupTooLarge(self.cap));
        }
        Ok(())
    }

    pub fn cyclic(&self, n: u64) -> Result<Group> {
        self.abelian(&[n])
    }

    /// Regular representation of `C_{n_1} x ... x C_{n_k}` on `prod n_i` points,
    /// with points encoded in mixed radix (first factor least significant).
    pub fn abelian(&self, factors: &[u64]) -> Result<Group> {
        if factors.is_empty() || factors.contains(&0) {
            return Err(GroupError::InvalidArgument(
                "cyclic factors must be positive".into(),
            ));
        }
        let order: u128 = factors.iter().map(|&n| n as u128).product();
        self.check_order(order)?;
        let degree = order as usize;
        let mut gens = Vec::new();
        let mut stride = 1u64;
        for &n in factors {
            let s = stride;
            gens.push(perm_from_fn(degree, |pt| {
                let pt = pt as u64;
                let digit = (pt / s) % n;
                let next = (digit + 1) % n;
                (pt - digit * s + next * s) as u32
            }));
            stride *= n;
        }
        Group::generate(gens, self.cap)
    }

    /// Dihedral group of order `2n`: natural action on an `n`-gon for `n >= 3`,
    /// and the Klein four-group on 4 points for `n = 2`.
    pub fn dihedral(&self, n: u64) -> Result<Group> {
        if n < 2 {
            return Err(GroupError::InvalidArgument(
                "dihedral(n) needs n >= 2".into(),
            ));
        }
        self.check_order(2 * n as u128)?;
        if n == 2 {
            let gens = vec![cycle_perm(4, &[0, 1]), cycle_perm(4, &[2, 3])];
            return Group::generate(gens, self.cap);
        }
        let deg = n as usize;
        let rot = perm_from_fn(deg, |i| ((i as u64 + 1) % n) as u32);
        let refl = perm_from_fn(deg, |i| ((n - i as u64) % n) as u32);
        Group::generate(vec![rot, refl], self.cap)
    }

    /// Dicyclic group of order `4n` in its left regular representation.
    /// Elements `x^i y^j` with `i < 2n`, `j < 2` are encoded as `i + 2n*j`.
    pub fn dicyclic(&self, n: u64) -> Result<Group> {
        if n < 2 {
            return Err(GroupError::InvalidArgument(
                "dicyclic(n) needs n >= 2".into(),
            ));
        }
        self.check_order(4 * n as u128)?;
        let two_n = 2 * n;
        let degree = (4 * n) as usize;
        let decode = |pt: u32| (pt as u64 % two_n, pt as u64 / two_n);
        let encode = |i: u64, j: u64| (i % two_n + two_n * j) as u32;
        // x * x^i y^j = x^(i+1) y^j
        let x = perm_from_fn(degree, |pt| {
            let (i, j) = decode(pt);
            encode(i + 1, j)
        });
        // y * x^i = x^-i y,  y * x^i y = x^(n-i)
        let y = perm_from_fn(degree, |pt| {
            let (i, j) = decode(pt);
            if j == 0 {
                encode(two_n - i, 1)
            } else {
                encode(n + two_n - i, 0)
            }
        });
        Group::generate(vec![x, y], self.cap)
    }

    pub fn symmetric(&self, n: u64) -> Result<Group> {
        if n == 0 {
            return Err(GroupError::InvalidArgument(
                "symmetric(n) needs n >= 1".into(),
            ));
        }
        self.check_order((1..=n as u128).product())?;
        let deg = n as usize;
        if n == 1 {
            return Ok(Group::trivial(1));
        }
        let full: Vec<u32> = (0..n as u32).collect();
        Group::generate(
            vec![cycle_perm(deg, &[0, 1]), cycle_perm(deg, &full)],
            self.cap,
        )
    }

    pub fn alternating(&self, n: u64) -> Result<Group> {
        if n == 0 {
            return Err(GroupError::InvalidArgument(
                "alternating(n) needs n >= 1".into(),
            ));
        }
        self.check_order(((1..=n as u128).product::<u128>() / 2).max(1))?;
        let deg = n as usize;
        if n < 3 {
            return Ok(Group::trivial(deg));
        }
        let gens = (2..n as u32).map(|k| cycle_perm(deg, &[0, 1, k])).collect();
        Group::generate(gens, self.cap)
    }

    /// Action on the disjoint union of both point sets, `g`'s points first.
    pub fn direct_product(&self, g: &Group, h: &Group) -> Result<Group> {
        self.check_order(g.order() as u128 * h.order() as u128)?;
        let (dg, dh) = (g.degree(), h.degree());
        let shift = dg as u32;
        let mut gens = Vec::new();
        for a in g.generators() {
            let mut images = a.images().to_vec();
            images.extend((0..dh as u32).map(|i| i + shift));
            gens.push(Permutation::from_images_unchecked(images));
        }
        for b in h.generators() {
            let mut images: Vec<u32> = (0..shift).collect();
            images.extend(b.images().iter().map(|&i| i + shift));
            gens.push(Permutation::from_images_unchecked(images));
        }
        Group::generate(gens, self.cap)
    }

    /// `C_m ⋊ C_k` with the complement generator acting as `x -> x^g`, realized as
    /// the affine maps `i -> g^j i + t` on `Z/m`.
    pub fn semidirect_cyclic(&self, m: u64, k: u64, g: u64) -> Result<SemidirectProduct> {
        let no_action = GroupError::NoValidAction { m, k, g };
        if m == 0 || k == 0 {
            return Err(no_action);
        }
        match multiplicative_order(g, m) {
            Some(ord) if ord == k => {}
            _ => return Err(no_action),
        }
        self.check_order(m as u128 * k as u128)?;
        let deg = m as usize;
        let translate = perm_from_fn(deg, |i| ((i as u64 + 1) % m) as u32);
        let scale = perm_from_fn(deg, |i| ((i as u64 * g) % m) as u32);
        let group = Group::generate(vec![translate, scale], self.cap)?;
        // g^j - 1 must be a unit mod m for every 1 <= j < k
        let mut power = 1u64;
        let mut fixed_point_free = true;
        for _ in 1..k {
            power = power * g % m;
            if gcd((power + m - 1) % m, m) != 1 {
                fixed_point_free = false;
            }
        }
        Ok(SemidirectProduct {
            group,
            fixed_point_free,
        })
    }

    /// `(C_p)^d ⋊ C_k` with a generator acting by the matrix `action` (rows, entries
    /// reduced mod `p`), realized as affine maps on `GF(p)^d`.
    pub fn elementary_semidirect(
        &self,
        p: u64,
        d: usize,
        action: &[Vec<u64>],
        k: u64,
    ) -> Result<SemidirectProduct> {
        let field = FiniteField::new(p as u32, 1)?;
        if d == 0 || action.len() != d || action.iter().any(|r| r.len() != d) {
            return Err(GroupError::InvalidArgument(format!(
                "action must be a {d}x{d} matrix"
            )));
        }
        let mat = Matrix::from_rows(
            action
                .iter()
                .map(|r| r.iter().map(|&x| field.from_int(x as i64)).collect())
                .collect(),
        );
        if mat.determinant(&field).is_zero() {
            return Err(GroupError::NotInvertible);
        }
        let size = (p as u128).pow(d as u32);
        self.check_order(size * k as u128)?;
        if mat.order(&field, k) != Some(k) {
            return Err(GroupError::WrongMatrixOrder(k));
        }
        let vectors = linear::all_vectors(&field, d);
        let deg = vectors.len();
        let mut gens = Vec::new();
        for axis in 0..d {
            let mut shift = vec![field.zero(); d];
            shift[axis] = field.one();
            let images = vectors
                .iter()
                .map(|v| {
                    let w: Vec<_> = v
                        .iter()
                        .zip(&shift)
                        .map(|(&a, &b)| field.add(a, b))
                        .collect();
                    encode_vector(&field, &w)
                })
                .collect();
            gens.push(Permutation::from_images_unchecked(images));
        }
        let linear_part = linear::induced_permutation(&field, &mat, &vectors, false)
            .ok_or(GroupError::NotInvertible)?;
        gens.push(linear_part);
        debug_assert!(gens.iter().all(|g| g.degree() == deg));
        let group = Group::generate(gens, self.cap)?;
        let mut fixed_point_free = true;
        let mut power = mat.clone();
        for _ in 1..k {
            let fixes = vectors.iter().skip(1).any(|v| power.apply(&field, v) == *v);
            if fixes {
                fixed_point_free = false;
            }
            power = power.mul(&field, &mat);
        }
        Ok(SemidirectProduct {
            group,
            fixed_point_free,
        })
    }

    /// PSL(2, q) as the image of SL(2, q) on the `q + 1` points of the projective line.
    pub fn psl2(&self, q: u64) -> Result<Group> {
        let field = FiniteField::of_order(q)?;
        let expected = q as u128 * (q as u128 * q as u128 - 1) / gcd(2, q - 1) as u128;
        self.check_order(expected)?;
        let points = linear::projective_points(&field, 2);
        let gens = sl2_generators(&field)
            .iter()
            .map(|m| linear::induced_permutation(&field, m, &points, true))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| invariant("SL(2,q) generator left the projective line"))?;
        let group = Group::generate(gens, self.cap)?;
        if group.order() as u128 != expected {
            return Err(invariant(&format!(
                "PSL(2,{q}) has order {} instead of {expected}",
                group.order()
            )));
        }
        Ok(group)
    }

    /// SL(2, q) acting on the `q^2 - 1` nonzero vectors of `GF(q)^2`.
    pub fn sl2(&self, q: u64) -> Result<Group> {
        let field = FiniteField::of_order(q)?;
        let expected = q as u128 * (q as u128 * q as u128 - 1);
        self.check_order(expected)?;
        let vectors: Vec<_> = linear::all_vectors(&field, 2).into_iter().skip(1).collect();
        let gens = sl2_generators(&field)
            .iter()
            .map(|m| linear::induced_permutation(&field, m, &vectors, false))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| invariant("SL(2,q) generator is singular"))?;
        let group = Group::generate(gens, self.cap)?;
        if group.order() as u128 != expected {
            return Err(invariant(&format!(
                "SL(2,{q}) has order {} instead of {expected}",
                group.order()
            )));
        }
        Ok(group)
    }

    /// The Suzuki group Sz(8) acting on the 65 points of its ovoid in PG(3, 8).
    pub fn suzuki8(&self) -> Result<Group> {
        const ORDER: u128 = 64 * 65 * 7;
        self.check_order(ORDER)?;
        let field = FiniteField::new(2, 3)?;
        let mats = suzuki_generators(&field)?;
        let mut start = vec![field.zero(); 4];
        start[3] = field.one();
        let ovoid = linear::projective_orbit(&field, &mats, start);
        if ovoid.len() != 65 {
            return Err(invariant(&format!(
                "Suzuki orbit has {} points instead of 65",
                ovoid.len()
            )));
        }
        let gens = mats
            .iter()
            .map(|m| linear::induced_permutation(&field, m, &ovoid, true))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| invariant("Suzuki generator does not preserve the ovoid"))?;
        let group = Group::generate(gens, self.cap)?;
        if group.order() as u128 != ORDER {
            return Err(invariant(&format!(
                "Sz(8) has order {} instead of {ORDER}",
                group.order()
            )));
        }
        Ok(group)
    }
}

fn invariant(msg: &str) -> GroupError {
    GroupError::ConstructionInvariantViolated(msg.to_string())
}

fn encode_vector(field: &FiniteField, v: &[crate::galois::FieldElement]) -> u32 {
    let q = field.size();
    v.iter().rev().fold(0, |acc, e| acc * q + e.code())
}

/// Upper unipotents `[[1,1],[0,1]]` and `[[1,w],[0,1]]`, the torus element
/// `diag(w, 1/w)` and the Weyl element `[[0,-1],[1,0]]`, with `w` primitive.
fn sl2_generators(field: &FiniteField) -> Vec<Matrix> {
    let (zero, one) = (field.zero(), field.one());
    let w = field.primitive_element();
    let w_inv = field.inv(w).expect("primitive element is nonzero");
    vec![
        Matrix::from_rows(vec![vec![one, one], vec![zero, one]]),
        Matrix::from_rows(vec![vec![one, w], vec![zero, one]]),
        Matrix::from_rows(vec![vec![w, zero], vec![zero, w_inv]]),
        Matrix::from_rows(vec![vec![zero, field.neg(one)], vec![one, zero]]),
    ]
}

/// The lower unitriangular Suzuki matrix `S(a, b)` for `θ` the Tits endomorphism.
pub(crate) fn suzuki_unipotent(
    field: &FiniteField,
    a: crate::galois::FieldElement,
    b: crate::galois::FieldElement,
) -> Result<Matrix> {
    let (zero, one) = (field.zero(), field.one());
    let a_t = field.tits_power(a)?;
    let b_t = field.tits_power(b)?;
    let a2 = field.mul(a, a);
    let bottom_left = field.add(field.add(field.mul(a2, a_t), field.mul(a, b)), b_t);
    let bottom_second = field.add(field.mul(a, a_t), b);
    Ok(Matrix::from_rows(vec![
        vec![one, zero, zero, zero],
        vec![a, one, zero, zero],
        vec![b, a_t, one, zero],
        vec![bottom_left, bottom_second, a, one],
    ]))
}

fn suzuki_generators(field: &FiniteField) -> Result<Vec<Matrix>> {
    let (zero, one) = (field.zero(), field.one());
    let t = field.primitive_element();
    let t_t = field.tits_power(t)?;
    // diag(1, t, t^(1+θ), t^(2+θ)) normalizes the unipotent group; projectively
    // this is the torus element of order q - 1
    let d2 = t;
    let d3 = field.mul(t, t_t);
    let d4 = field.mul(d3, t);
    let torus = Matrix::from_rows(vec![
        vec![one, zero, zero, zero],
        vec![zero, d2, zero, zero],
        vec![zero, zero, d3, zero],
        vec![zero, zero, zero, d4],
    ]);
    let weyl = Matrix::from_rows(vec![
        vec![zero, zero, zero, one],
        vec![zero, zero, one, zero],
        vec![zero, one, zero, zero],
        vec![one, zero, zero, zero],
    ]);
    Ok(vec![
        suzuki_unipotent(field, one, zero)?,
        suzuki_unipotent(field, zero, one)?,
        torus,
        weyl,
    ])
}

/// A group constructor call; the canonical text form is the CLI group-spec syntax.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupExpr {
    Cyclic(u64),
    Abelian(Vec<u64>),
    Dihedral(u64),
    Dicyclic(u64),
    Symmetric(u64),
    Alternating(u64),
    Psl2(u64),
    Sl2(u64),
    Suzuki8,
    SemidirectCyclic {
        m: u64,
        k: u64,
        g: u64,
    },
    ElementarySemidirect {
        p: u64,
        d: usize,
        action: Vec<Vec<u64>>,
        k: u64,
    },
    Product(Box<GroupExpr>, Box<GroupExpr>),
}

impl GroupExpr {
    pub fn build(&self, builder: &Builder) -> Result<Group> {
        let group = match self {
            GroupExpr::Cyclic(n) => builder.cyclic(*n)?,
            GroupExpr::Abelian(ns) => builder.abelian(ns)?,
            GroupExpr::Dihedral(n) => builder.dihedral(*n)?,
            GroupExpr::Dicyclic(n) => builder.dicyclic(*n)?,
            GroupExpr::Symmetric(n) => builder.symmetric(*n)?,
            GroupExpr::Alternating(n) => builder.alternating(*n)?,
            GroupExpr::Psl2(q) => builder.psl2(*q)?,
            GroupExpr::Sl2(q) => builder.sl2(*q)?,
            GroupExpr::Suzuki8 => builder.suzuki8()?,
            GroupExpr::SemidirectCyclic { m, k, g } => builder.semidirect_cyclic(*m, *k, *g)?.group,
            GroupExpr::ElementarySemidirect { p, d, action, k } => {
                builder.elementary_semidirect(*p, *d, action, *k)?.group
            }
            GroupExpr::Product(a, b) => {
                let ga = a.build(builder)?;
                let gb = b.build(builder)?;
                builder.direct_product(&ga, &gb)?
            }
        };
        Ok(group.named(self.to_string()))
    }
}

impl fmt::Display for GroupExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupExpr::Cyclic(n) => write!(f, "C{n}"),
            GroupExpr::Abelian(ns) => {
                let parts: Vec<String> = ns.iter().map(|n| format!("C{n}")).collect();
                write!(f, "{}", parts.join(" x "))
            }
            GroupExpr::Dihedral(n) => write!(f, "D({n})"),
            GroupExpr::Dicyclic(n) => write!(f, "Dic({n})"),
            GroupExpr::Symmetric(n) => write!(f, "S{n}"),
            GroupExpr::Alternating(n) => write!(f, "A{n}"),
            GroupExpr::Psl2(q) => write!(f, "PSL2({q})"),
            GroupExpr::Sl2(q) => write!(f, "SL2({q})"),
            GroupExpr::Suzuki8 => write!(f, "Sz8"),
            GroupExpr::SemidirectCyclic { m, k, g } => write!(f, "SD({m},{k},{g})"),
            GroupExpr::ElementarySemidirect { p, d, action, k } => {
                let rows: Vec<String> = action
                    .iter()
                    .map(|r| {
                        let cells: Vec<String> = r.iter().map(u64::to_string).collect();
                        format!("[{}]", cells.join(","))
                    })
                    .collect();
                write!(f, "ESD({p},{d};[{}];{k})", rows.join(","))
            }
            GroupExpr::Product(a, b) => write!(f, "{a} x {b}"),
        }
    }
}

pub fn cyclic(n: u64) -> Result<Group> {
    Builder::default().cyclic(n)
}

pub fn abelian(factors: &[u64]) -> Result<Group> {
    Builder::default().abelian(factors)
}

pub fn dihedral(n: u64) -> Result<Group> {
    Builder::default().dihedral(n)
}

pub fn dicyclic(n: u64) -> Result<Group> {
    Builder::default().dicyclic(n)
}

pub fn symmetric(n: u64) -> Result<Group> {
    Builder::default().symmetric(n)
}

pub fn alternating(n: u64) -> Result<Group> {
    Builder::default().alternating(n)
}

pub fn direct_product(g: &Group, h: &Group) -> Result<Group> {
    Builder::default().direct_product(g, h)
}

pub fn semidirect_cyclic(m: u64, k: u64, g: u64) -> Result<SemidirectProduct> {
    Builder::default().semidirect_cyclic(m, k, g)
}

pub fn elementary_semidirect(
    p: u64,
    d: usize,
    action: &[Vec<u64>],
    k: u64,
) -> Result<SemidirectProduct> {
    Builder::default().elementary_semidirect(p, d, action, k)
}

pub fn psl2(q: u64) -> Result<Group> {
    Builder::default().psl2(q)
}

pub fn sl2(q: u64) -> Result<Group> {
    Builder::default().sl2(q)
}

pub fn suzuki8() -> Result<Group> {
    Builder::default().suzuki8()
}
