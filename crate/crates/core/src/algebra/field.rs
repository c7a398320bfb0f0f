//! Arithmetic in GF(p^e) for field sizes up to 2^16.
//!
//! Elements are indices in `0..q`: the base-p digits of the index are the
//! polynomial-basis coordinates, constant term least significant. The
//! defining polynomial is the smallest monic irreducible of degree `e` when
//! coefficient tuples `(c0, c1, .., c_{e-1})` are compared lexicographically
//! starting from the constant term.

use std::fmt;

use crate::error::{Error, Result};

pub const MAX_FIELD_SIZE: u32 = 1 << 16;
const TABLE_LIMIT: u32 = 1 << 12;

/// An element of a [`FiniteField`], stored as its index.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElement(pub u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    #[inline]
    pub fn index(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Inv,
    Neg,
}

struct Tables {
    log: Vec<u32>,
    // exp has length 2(q-1) so that log a + log b never needs a reduction.
    exp: Vec<u32>,
}

pub struct FiniteField {
    p: u32,
    e: u32,
    q: u32,
    /// Coefficients c0..c_{e-1} of the monic modulus (leading 1 implicit).
    modulus: Vec<u32>,
    tables: Option<Tables>,
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteField")
            .field("p", &self.p)
            .field("e", &self.e)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q && self.modulus == other.modulus
    }
}
impl Eq for FiniteField {}

/// Split `q` into `(p, e)` with `q = p^e`, or `None` if `q` is not a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q && q % p != 0 {
        p += 1;
    }
    if q % p != 0 {
        p = q;
    }
    let (mut r, mut e) = (q, 0);
    while r % p == 0 {
        r /= p;
        e += 1;
    }
    (r == 1).then_some((p, e))
}

impl FiniteField {
    pub fn new(q: u32) -> Result<Self> {
        if q > MAX_FIELD_SIZE {
            return Err(Error::domain(format!("field size {q} exceeds 2^16")));
        }
        let (p, e) = prime_power(q).ok_or_else(|| Error::domain(format!("{q} is not a prime power")))?;
        let modulus = if e == 1 {
            vec![0]
        } else {
            smallest_irreducible(p, e)
        };
        let mut field = FiniteField {
            p,
            e,
            q,
            modulus,
            tables: None,
        };
        if q <= TABLE_LIMIT {
            field.tables = Some(field.build_tables());
        }
        Ok(field)
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }
    #[inline]
    pub fn e(&self) -> u32 {
        self.e
    }
    #[inline]
    pub fn q(&self) -> u32 {
        self.q
    }

    /// Modulus coefficients `c0..c_{e-1}`; the polynomial is `x^e + Σ c_i x^i`.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn element(&self, index: u32) -> Result<FieldElement> {
        if index < self.q {
            Ok(FieldElement(index))
        } else {
            Err(Error::domain(format!("index {index} out of range for GF({})", self.q)))
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q).map(FieldElement)
    }

    /// The element `x` of the polynomial basis (equal to the generator `p` index), or 1 for prime fields.
    pub fn basis_element(&self, i: u32) -> FieldElement {
        FieldElement(self.p.pow(i))
    }

    pub fn apply(&self, op: FieldOp, a: FieldElement, b: Option<FieldElement>) -> Result<FieldElement> {
        let need_b = || b.ok_or_else(|| Error::domain(format!("{op:?} needs two operands")));
        match op {
            FieldOp::Add => Ok(self.add(a, need_b()?)),
            FieldOp::Sub => Ok(self.sub(a, need_b()?)),
            FieldOp::Mul => Ok(self.mul(a, need_b()?)),
            FieldOp::Neg => Ok(self.neg(a)),
            FieldOp::Inv => self.inv(a),
        }
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.p == 2 {
            FieldElement(a.0 ^ b.0)
        } else if self.e == 1 {
            let s = a.0 + b.0;
            FieldElement(if s >= self.p { s - self.p } else { s })
        } else {
            self.digitwise(a.0, b.0, |x, y| (x + y) % self.p)
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if self.p == 2 || a.0 == 0 {
            a
        } else if self.e == 1 {
            FieldElement(self.p - a.0)
        } else {
            self.digitwise(a.0, 0, |x, _| (self.p - x) % self.p)
        }
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        match &self.tables {
            Some(t) => FieldElement(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize]),
            None => FieldElement(self.poly_mul(a.0, b.0)),
        }
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.0 == 0 {
            return Err(Error::domain("inverse of zero"));
        }
        Ok(match &self.tables {
            Some(t) => FieldElement(t.exp[((self.q - 1 - t.log[a.0 as usize]) % (self.q - 1)) as usize]),
            None => self.pow(a, (self.q - 2) as u64),
        })
    }

    pub fn pow(&self, a: FieldElement, mut k: u64) -> FieldElement {
        let mut base = a;
        let mut acc = FieldElement::ONE;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// A generator of the multiplicative group.
    pub fn primitive_element(&self) -> FieldElement {
        match &self.tables {
            Some(t) => FieldElement(t.exp[1 % t.exp.len().max(1)]),
            None => FieldElement(self.find_primitive()),
        }
    }

    fn digitwise(&self, mut a: u32, mut b: u32, f: impl Fn(u32, u32) -> u32) -> FieldElement {
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.e {
            out += f(a % self.p, b % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        FieldElement(out)
    }

    fn digits(&self, mut a: u32) -> Vec<u32> {
        (0..self.e)
            .map(|_| {
                let d = a % self.p;
                a /= self.p;
                d
            })
            .collect()
    }

    fn poly_mul(&self, a: u32, b: u32) -> u32 {
        let p = self.p as u64;
        if self.e == 1 {
            return ((a as u64 * b as u64) % p) as u32;
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let e = self.e as usize;
        let mut prod = vec![0u64; 2 * e - 1];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        // x^e = -Σ c_i x^i
        for deg in (e..prod.len()).rev() {
            let c = prod[deg];
            if c == 0 {
                continue;
            }
            prod[deg] = 0;
            for (i, &m) in self.modulus.iter().enumerate() {
                let idx = deg - e + i;
                prod[idx] = (prod[idx] + (p - c) * m as u64) % p;
            }
        }
        prod[..e].iter().rev().fold(0u64, |acc, &d| acc * p + d) as u32
    }

    fn find_primitive(&self) -> u32 {
        if self.q == 2 {
            return 1;
        }
        let order = self.q - 1;
        let primes = prime_factors(order);
        (2..self.q)
            .find(|&g| {
                primes
                    .iter()
                    .all(|&r| self.pow(FieldElement(g), (order / r) as u64) != FieldElement::ONE)
            })
            .expect("multiplicative group of a finite field is cyclic")
    }

    fn build_tables(&self) -> Tables {
        let q = self.q as usize;
        let g = self.find_primitive();
        let mut log = vec![0u32; q];
        let mut exp = vec![0u32; 2 * (q - 1).max(1)];
        let mut x = 1u32;
        for i in 0..q - 1 {
            exp[i] = x;
            log[x as usize] = i as u32;
            x = self.poly_mul(x, g);
        }
        for i in q - 1..exp.len() {
            exp[i] = exp[i - (q - 1)];
        }
        Tables { log, exp }
    }
}

fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Remainder of monic-or-not `num` modulo monic `den` over GF(p); coefficients low to high.
fn poly_rem(num: &[u32], den: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u64> = num.iter().map(|&c| c as u64).collect();
    let dl = den.len();
    let p = p as u64;
    while r.len() >= dl {
        let lead = *r.last().unwrap();
        let shift = r.len() - dl;
        if lead != 0 {
            for (i, &d) in den.iter().enumerate() {
                r[shift + i] = (r[shift + i] + (p - lead) * d as u64 % p) % p;
            }
        }
        r.pop();
    }
    r.into_iter().map(|c| c as u32).collect()
}

fn is_irreducible(coeffs: &[u32], p: u32) -> bool {
    // coeffs: full monic polynomial, low to high.
    let deg = coeffs.len() - 1;
    for d in 1..=deg / 2 {
        for idx in 0..p.pow(d as u32) {
            let mut divisor: Vec<u32> = (0..d).map(|i| (idx / p.pow(i as u32)) % p).collect();
            divisor.push(1);
            if poly_rem(coeffs, &divisor, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn smallest_irreducible(p: u32, e: u32) -> Vec<u32> {
    let count = p.pow(e);
    for rank in 0..count {
        // c0 is the most significant digit of the rank, so ranks enumerate
        // coefficient tuples in lexicographic order from the constant term up.
        let mut coeffs = vec![0u32; e as usize + 1];
        let mut r = rank;
        for i in (0..e as usize).rev() {
            coeffs[i] = r % p;
            r /= p;
        }
        coeffs[e as usize] = 1;
        if coeffs[0] != 0 && is_irreducible(&coeffs, p) {
            coeffs.pop();
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn fe(x: u32) -> FieldElement {
        FieldElement(x)
    }

    #[test]
    fn prime_field_examples() {
        let f = FiniteField::new(5).unwrap();
        assert_eq!(f.apply(FieldOp::Add, fe(3), Some(fe(4))).unwrap(), fe(2));
        assert_eq!(f.apply(FieldOp::Inv, fe(2), None).unwrap(), fe(3));
        assert_eq!(f.apply(FieldOp::Neg, fe(2), None).unwrap(), fe(3));
        assert_eq!(f.apply(FieldOp::Sub, fe(1), Some(fe(3))).unwrap(), fe(3));
    }

    #[test]
    fn gf4_t_squared() {
        let f = FiniteField::new(4).unwrap();
        assert_eq!(f.modulus(), &[1, 1]);
        assert_eq!(f.mul(fe(2), fe(2)), fe(3));
    }

    #[test]
    fn modulus_choice() {
        // (c0, c1, c2) = (1, 0, 1) precedes (1, 1, 0).
        assert_eq!(FiniteField::new(8).unwrap().modulus(), &[1, 0, 1]);
        // x^2 + 1 over GF(3) is irreducible and is the first candidate with c0 != 0.
        assert_eq!(FiniteField::new(9).unwrap().modulus(), &[1, 0]);
        assert_eq!(FiniteField::new(16).unwrap().modulus(), &[1, 0, 0, 1]);
    }

    #[test]
    fn inverse_of_zero_is_domain_error() {
        let f = FiniteField::new(7).unwrap();
        assert!(matches!(f.inv(fe(0)), Err(Error::Domain(_))));
        assert!(f.apply(FieldOp::Add, fe(1), None).is_err());
    }

    #[test]
    fn rejects_bad_sizes() {
        assert!(FiniteField::new(6).is_err());
        assert!(FiniteField::new(1).is_err());
        assert!(FiniteField::new(1 << 17).is_err());
        assert_eq!(prime_power(49), Some((7, 2)));
        assert_eq!(prime_power(65536), Some((2, 16)));
        assert_eq!(prime_power(12), None);
    }

    #[test]
    fn tables_agree_with_polynomial_arithmetic() {
        for q in [4, 8, 9, 25, 27, 64, 243] {
            let f = FiniteField::new(q).unwrap();
            for a in 0..q {
                for b in 0..q {
                    let expected = if a == 0 || b == 0 { 0 } else { f.poly_mul(a, b) };
                    assert_eq!(f.mul(fe(a), fe(b)).0, expected, "q={q} a={a} b={b}");
                }
            }
        }
    }

    #[test]
    fn field_axioms_on_random_triples() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for q in [2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 49, 81, 121, 128, 256, 4096, 8192, 65521, 65536, 3u32.pow(10)] {
            let f = FiniteField::new(q).unwrap();
            for _ in 0..10_000 {
                let (a, b, c) = (fe(rng.gen_range(0..q)), fe(rng.gen_range(0..q)), fe(rng.gen_range(0..q)));
                assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)), "q={q}");
                assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)), "q={q}");
                assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)), "q={q}");
                assert_eq!(f.add(a, f.neg(a)), FieldElement::ZERO);
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElement::ONE, "q={q} a={a}");
                }
            }
        }
    }

    #[test]
    fn primitive_element_has_full_order() {
        for q in [2, 3, 4, 13, 16, 9, 5000 - 3] {
            let Ok(f) = FiniteField::new(q) else { continue };
            let g = f.primitive_element();
            let mut x = g;
            let mut order = 1;
            while x != FieldElement::ONE {
                x = f.mul(x, g);
                order += 1;
            }
            assert_eq!(order, q - 1);
        }
    }
}
