//! Arithmetic in GF(p^f) for small fields.
//!
//! Elements are encoded as integers `0..p^f` whose base-`p` digits are the
//! polynomial coefficients, lowest degree first. So in GF(8) the element `x`
//! is encoded as `2` and `x + 1` as `3`.

use std::fmt;

use crate::error::{GroupError, Result};
use crate::numbers::is_prime;

pub const MAX_FIELD_SIZE: u64 = 16384;

/// Fixed moduli, coefficients lowest degree first. These are the Conway
/// polynomials for the listed fields; other shapes fall back to the least
/// monic irreducible polynomial in coefficient order.
const MODULI: &[(u32, u32, &[u32])] = &[
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (2, 5, &[1, 0, 1, 0, 0, 1]),
    (2, 6, &[1, 1, 0, 1, 1, 0, 1]),
    (2, 7, &[1, 1, 0, 0, 0, 0, 0, 1]),
    (2, 8, &[1, 0, 1, 1, 1, 0, 0, 0, 1]),
    (3, 2, &[2, 2, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (3, 4, &[2, 0, 0, 2, 1]),
    (5, 2, &[2, 4, 1]),
    (5, 3, &[3, 3, 0, 1]),
    (7, 2, &[3, 6, 1]),
];

#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct FieldElement(u32);

impl FieldElement {
    pub fn code(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Mul,
    Inv,
    Pow(u64),
}

#[derive(Clone, PartialEq, Eq)]
pub struct FiniteField {
    p: u32,
    f: u32,
    modulus: Vec<u32>,
    size: u32,
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.p, self.f)
    }
}

impl FiniteField {
    pub fn new(p: u32, f: u32) -> Result<FiniteField> {
        if !is_prime(p as u64) {
            return Err(GroupError::NotPrime(p as u64));
        }
        if f == 0 {
            return Err(GroupError::InvalidArgument(
                "extension degree must be >= 1".into(),
            ));
        }
        let size = (p as u64).checked_pow(f).unwrap_or(u64::MAX);
        if size > MAX_FIELD_SIZE {
            return Err(GroupError::FieldTooLarge(size));
        }
        let modulus = if f == 1 {
            vec![0, 1]
        } else if let Some((_, _, m)) = MODULI.iter().find(|(mp, mf, _)| *mp == p && *mf == f) {
            m.to_vec()
        } else {
            least_irreducible(p, f)
        };
        if !is_irreducible(&modulus, p) {
            return Err(GroupError::ConstructionInvariantViolated(format!(
                "modulus for GF({p}^{f}) is reducible"
            )));
        }
        Ok(FiniteField {
            p,
            f,
            modulus,
            size: size as u32,
        })
    }

    /// Field of order `q`, which must be a prime power.
    pub fn of_order(q: u64) -> Result<FiniteField> {
        if q < 2 {
            return Err(GroupError::NotPrime(q));
        }
        let p = crate::numbers::prime_divisors(q)[0];
        let mut f = 0;
        let mut r = q;
        while r.is_multiple_of(p) {
            r /= p;
            f += 1;
        }
        if r != 1 {
            return Err(GroupError::NotPrime(q));
        }
        if q > MAX_FIELD_SIZE {
            return Err(GroupError::FieldTooLarge(q));
        }
        FiniteField::new(p as u32, f)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.f
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement(0)
    }

    pub fn one(&self) -> FieldElement {
        FieldElement(1)
    }

    /// The residue class of `x`. Prime fields use the modulus `x`, so this is zero there.
    pub fn x(&self) -> FieldElement {
        FieldElement(self.p % self.size)
    }

    pub fn element(&self, code: u32) -> FieldElement {
        assert!(code < self.size, "element code {code} out of range");
        FieldElement(code)
    }

    pub fn from_int(&self, n: i64) -> FieldElement {
        FieldElement(n.rem_euclid(self.p as i64) as u32)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.size).map(FieldElement)
    }

    fn digits(&self, a: FieldElement) -> Vec<u32> {
        let mut v = Vec::with_capacity(self.f as usize);
        let mut c = a.0;
        for _ in 0..self.f {
            v.push(c % self.p);
            c /= self.p;
        }
        v
    }

    fn encode(&self, digits: &[u32]) -> FieldElement {
        FieldElement(digits.iter().rev().fold(0, |acc, &d| acc * self.p + d))
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let (da, db) = (self.digits(a), self.digits(b));
        let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        self.encode(&sum)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        let d: Vec<u32> = self
            .digits(a)
            .iter()
            .map(|x| (self.p - x) % self.p)
            .collect();
        self.encode(&d)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let p = self.p as u64;
        let f = self.f as usize;
        let (da, db) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u64; 2 * f];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        // reduce by the monic modulus from the top down
        for deg in (f..2 * f).rev() {
            let c = prod[deg];
            if c == 0 {
                continue;
            }
            prod[deg] = 0;
            for (k, &m) in self.modulus[..f].iter().enumerate() {
                let idx = deg - f + k;
                prod[idx] = (prod[idx] + (p - c) * m as u64) % p;
            }
        }
        let out: Vec<u32> = prod[..f].iter().map(|&x| x as u32).collect();
        self.encode(&out)
    }

    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(GroupError::DivisionByZero);
        }
        Ok(self.pow(a, self.size as u64 - 2))
    }

    /// Binary arithmetic dispatch; `b` is ignored by `Inv` and `Pow`.
    pub fn arith(&self, a: FieldElement, b: FieldElement, op: FieldOp) -> Result<FieldElement> {
        match op {
            FieldOp::Add => Ok(self.add(a, b)),
            FieldOp::Mul => Ok(self.mul(a, b)),
            FieldOp::Inv => self.inv(a),
            FieldOp::Pow(e) => Ok(self.pow(a, e)),
        }
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, a: FieldElement) -> Result<u64> {
        if a.is_zero() {
            return Err(GroupError::DivisionByZero);
        }
        let mut x = a;
        let mut k = 1;
        while x != self.one() {
            x = self.mul(x, a);
            k += 1;
        }
        Ok(k)
    }

    /// Least element (by encoding) generating the multiplicative group.
    pub fn primitive_element(&self) -> FieldElement {
        let target = self.size as u64 - 1;
        self.elements()
            .skip(1)
            .find(|&a| self.mult_order(a).ok() == Some(target))
            .expect("multiplicative group of a finite field is cyclic")
    }

    /// The Tits endomorphism `a -> a^(2^(m+1))` on GF(2^(2m+1)); it squares to Frobenius.
    pub fn tits_power(&self, a: FieldElement) -> Result<FieldElement> {
        if self.p != 2 || self.f.is_multiple_of(2) {
            return Err(GroupError::UnsupportedField(format!(
                "Tits endomorphism needs GF(2^(2m+1)), got {self:?}"
            )));
        }
        let m = (self.f - 1) / 2;
        Ok(self.pow(a, 1u64 << (m + 1)))
    }
}

fn poly_rem(mut a: Vec<u32>, b: &[u32], p: u32) -> Vec<u32> {
    let db = b.len() - 1;
    let lead_inv = mod_inv(b[db], p);
    while a.len() > db {
        let c = *a.last().unwrap();
        if c != 0 {
            let factor = (c as u64 * lead_inv as u64 % p as u64) as u32;
            let shift = a.len() - 1 - db;
            for (k, &bk) in b.iter().enumerate() {
                let idx = shift + k;
                a[idx] = ((a[idx] as u64 + (p - factor) as u64 * bk as u64) % p as u64) as u32;
            }
        }
        a.pop();
    }
    a
}

fn mod_inv(a: u32, p: u32) -> u32 {
    (1..p)
        .find(|&x| (a as u64 * x as u64) % p as u64 == 1)
        .expect("unit")
}

/// Trial division by every monic polynomial of degree 1..=deg/2.
pub fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let deg = poly.len() - 1;
    if deg <= 1 {
        return deg == 1;
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for code in 0..count {
            let mut divisor = Vec::with_capacity(d + 1);
            let mut c = code;
            for _ in 0..d {
                divisor.push((c % p as u64) as u32);
                c /= p as u64;
            }
            divisor.push(1);
            if poly_rem(poly.to_vec(), &divisor, p).iter().all(|&x| x == 0) {
                return false;
            }
        }
    }
    true
}

fn least_irreducible(p: u32, f: u32) -> Vec<u32> {
    let count = (p as u64).pow(f);
    (0..count)
        .map(|code| {
            let mut poly = Vec::with_capacity(f as usize + 1);
            let mut c = code;
            for _ in 0..f {
                poly.push((c % p as u64) as u32);
                c /= p as u64;
            }
            poly.push(1);
            poly
        })
        .find(|poly| is_irreducible(poly, p))
        .expect("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field() {
        let f = FiniteField::new(7, 1).unwrap();
        assert_eq!(f.size(), 7);
        let a = f.element(3);
        let b = f.element(5);
        assert_eq!(f.add(a, b), f.element(1));
        assert_eq!(f.mul(a, b), f.element(1));
        assert_eq!(f.inv(a).unwrap(), b);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(FiniteField::new(6, 1).unwrap_err(), GroupError::NotPrime(6));
        assert_eq!(
            FiniteField::new(2, 15).unwrap_err(),
            GroupError::FieldTooLarge(32768)
        );
        assert!(FiniteField::new(2, 14).is_ok());
        assert!(FiniteField::of_order(12).is_err());
        assert_eq!(FiniteField::of_order(9).unwrap().degree(), 2);
    }

    #[test]
    fn gf8_reduction() {
        let f = FiniteField::new(2, 3).unwrap();
        let x = f.x();
        let x2 = f.mul(x, x);
        let x3 = f.mul(x, x2);
        // x^3 = x + 1 under x^3 + x + 1
        assert_eq!(x3, f.add(x, f.one()));
        assert_eq!(x3.code(), 0b011);
    }

    #[test]
    fn gf8_inverses_exhaustive() {
        let f = FiniteField::new(2, 3).unwrap();
        for a in f.elements().skip(1) {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
        }
        assert_eq!(f.inv(f.zero()).unwrap_err(), GroupError::DivisionByZero);
        assert_eq!(f.add(f.element(5), f.zero()), f.element(5));
    }

    #[test]
    fn gf9_generator_order() {
        let f = FiniteField::new(3, 2).unwrap();
        let g = f.primitive_element();
        let mut seen = std::collections::HashSet::new();
        let mut x = f.one();
        for _ in 0..8 {
            seen.insert(x);
            x = f.mul(x, g);
        }
        assert_eq!(seen.len(), 8);
        assert_eq!(f.mult_order(g).unwrap(), 8);
        // x itself is primitive for a Conway modulus
        assert_eq!(f.mult_order(f.x()).unwrap(), 8);
    }

    fn check_axioms(f: &FiniteField) {
        let els: Vec<_> = f.elements().collect();
        for &a in &els {
            for &b in &els {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for &c in &els {
                    assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }

    #[test]
    fn field_axioms_gf8_gf9() {
        check_axioms(&FiniteField::new(2, 3).unwrap());
        check_axioms(&FiniteField::new(3, 2).unwrap());
    }

    #[test]
    fn table_moduli_irreducible_and_primitive() {
        for &(p, f, _) in MODULI {
            let field = FiniteField::new(p, f).unwrap();
            assert!(is_irreducible(field.modulus(), p));
            assert_eq!(
                field.mult_order(field.x()).unwrap(),
                field.size() as u64 - 1,
                "x not primitive in GF({p}^{f})"
            );
        }
    }

    #[test]
    fn fallback_modulus_is_irreducible() {
        let f = FiniteField::new(11, 2).unwrap();
        assert!(is_irreducible(f.modulus(), 11));
        assert!(!is_irreducible(&[1, 0, 1], 2)); // x^2 + 1 = (x + 1)^2
    }

    #[test]
    fn element_orders_divide_group_order() {
        for (p, deg) in [(2, 3), (3, 2), (2, 4), (13, 1)] {
            let f = FiniteField::new(p, deg).unwrap();
            let n = f.size() as u64 - 1;
            for a in f.elements().skip(1) {
                assert_eq!(n % f.mult_order(a).unwrap(), 0);
            }
        }
    }

    #[test]
    fn tits_endomorphism_gf8() {
        let f = FiniteField::new(2, 3).unwrap();
        assert_eq!(f.tits_power(f.zero()).unwrap(), f.zero());
        assert_eq!(f.tits_power(f.one()).unwrap(), f.one());
        for a in f.elements() {
            let t = f.tits_power(a).unwrap();
            assert_eq!(f.tits_power(t).unwrap(), f.mul(a, a));
        }
        let g = f.primitive_element();
        let g4 = f.mul(f.mul(g, g), f.mul(g, g));
        assert_eq!(f.tits_power(g).unwrap(), g4);
        assert!(FiniteField::new(2, 2).unwrap().tits_power(f.one()).is_err());
        assert!(FiniteField::new(3, 1).unwrap().tits_power(f.one()).is_err());
    }

    #[test]
    fn arith_dispatch() {
        let f = FiniteField::new(2, 3).unwrap();
        let x = f.x();
        let x2 = f.arith(x, x, FieldOp::Mul).unwrap();
        assert_eq!(f.arith(x, x2, FieldOp::Mul).unwrap(), f.element(0b011));
        assert_eq!(f.arith(x, x, FieldOp::Pow(7)).unwrap(), f.one());
        assert!(f.arith(f.zero(), x, FieldOp::Inv).is_err());
    }
}
