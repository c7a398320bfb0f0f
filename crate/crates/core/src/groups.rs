//! Group families, exact orders, uniform sampling, canonical encodings and
//! enumeration of small groups.
//!
//! Group multiplication is written left to right in the order of
//! application: `mul(a, b)` applies `a` first, then `b`. For permutations
//! this is [`Permutation::compose`]; for matrices acting on column vectors it
//! is the product `b·a`.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rand::seq::SliceRandom;
use rand::Rng;

use crate::algebra::matrix::{self, EchelonSpan, Matrix, Vector};
use crate::algebra::{BilinearForm, FieldElement, FiniteField, Permutation};
use crate::error::{Error, Result};

const RETRY_CAP: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Sym,
    Alt,
    GL,
    SL,
    Sp,
}

impl Family {
    pub fn is_matrix(self) -> bool {
        matches!(self, Family::GL | Family::SL | Family::Sp)
    }

    fn tag(self) -> &'static str {
        match self {
            Family::Sym => "sym",
            Family::Alt => "alt",
            Family::GL => "gl",
            Family::SL => "sl",
            Family::Sp => "sp",
        }
    }
}

/// A group family member such as `S_5`, `SL_4(2)` or `Sp_4(3)`.
///
/// Text form (used on the command line): `sym:n`, `alt:n`, `gl:n:q`, `sl:n:q`, `sp:n:q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupSpec {
    pub family: Family,
    pub n: usize,
    pub q: Option<u32>,
}

impl GroupSpec {
    pub fn sym(n: usize) -> Self {
        GroupSpec { family: Family::Sym, n, q: None }
    }
    pub fn alt(n: usize) -> Self {
        GroupSpec { family: Family::Alt, n, q: None }
    }
    pub fn gl(n: usize, q: u32) -> Self {
        GroupSpec { family: Family::GL, n, q: Some(q) }
    }
    pub fn sl(n: usize, q: u32) -> Self {
        GroupSpec { family: Family::SL, n, q: Some(q) }
    }
    pub fn sp(n: usize, q: u32) -> Self {
        GroupSpec { family: Family::Sp, n, q: Some(q) }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::domain("degree must be at least 1"));
        }
        match self.family {
            Family::Sym => {}
            Family::Alt if self.n < 2 => return Err(Error::domain("alt needs n >= 2")),
            Family::Alt => {}
            _ => {
                let q = self.q.ok_or_else(|| Error::domain("matrix family needs a field size"))?;
                if crate::algebra::field::prime_power(q).is_none() || q > crate::algebra::field::MAX_FIELD_SIZE {
                    return Err(Error::domain(format!("{q} is not a supported prime power")));
                }
                if self.family == Family::Sp && self.n % 2 != 0 {
                    return Err(Error::domain("sp needs even n"));
                }
            }
        }
        if matches!(self.family, Family::Sym | Family::Alt) && self.q.is_some() {
            return Err(Error::domain("permutation families take no field size"));
        }
        if self.n > Permutation::MAX_DEGREE {
            return Err(Error::domain("degree too large"));
        }
        Ok(())
    }

    /// Effective field size in the trajectory bounds (Q = q for every implemented family).
    pub fn effective_q(&self) -> Option<u32> {
        self.q
    }

    pub fn order(&self) -> BigUint {
        let n = self.n as u32;
        match self.family {
            Family::Sym => factorial(n),
            Family::Alt => factorial(n) / 2u32,
            Family::GL => gl_order(n, self.q.unwrap()),
            Family::SL => gl_order(n, self.q.unwrap()) / (self.q.unwrap() - 1),
            Family::Sp => {
                let q = BigUint::from(self.q.unwrap());
                let m = n / 2;
                let mut order = q.pow(m * m);
                for i in 1..=m {
                    order *= q.pow(2 * i) - 1u32;
                }
                order
            }
        }
    }

    pub fn ln_order(&self) -> f64 {
        big_ln(&self.order())
    }

    pub fn log2_order(&self) -> f64 {
        self.ln_order() / std::f64::consts::LN_2
    }

    pub fn log10_order(&self) -> f64 {
        self.ln_order() / std::f64::consts::LN_10
    }
}

fn factorial(n: u32) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

fn gl_order(n: u32, q: u32) -> BigUint {
    let q = BigUint::from(q);
    let qn = q.pow(n);
    (0..n).fold(BigUint::one(), |acc, i| acc * (&qn - q.pow(i)))
}

/// Natural log of an arbitrary-precision integer.
pub fn big_ln(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits == 0 {
        return f64::NEG_INFINITY;
    }
    let shift = bits.saturating_sub(64);
    let top = (x >> shift).to_u64().expect("at most 64 bits") as f64;
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.q {
            Some(q) => write!(f, "{}:{}:{}", self.family.tag(), self.n, q),
            None => write!(f, "{}:{}", self.family.tag(), self.n),
        }
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        let num = |idx: usize| -> Result<u64> {
            let text = parts[idx];
            text.parse::<u64>().map_err(|_| {
                let pos = parts[..idx].iter().map(|p| p.len() + 1).sum();
                Error::parse(pos, format!("expected a positive integer, found {text:?}"))
            })
        };
        let family = match parts[0].to_ascii_lowercase().as_str() {
            "sym" => Family::Sym,
            "alt" => Family::Alt,
            "gl" => Family::GL,
            "sl" => Family::SL,
            "sp" => Family::Sp,
            other => return Err(Error::parse(0, format!("unknown group family {other:?}"))),
        };
        let spec = match (family.is_matrix(), parts.len()) {
            (false, 2) => GroupSpec { family, n: num(1)? as usize, q: None },
            (true, 3) => GroupSpec {
                family,
                n: num(1)? as usize,
                q: Some(u32::try_from(num(2)?).map_err(|_| Error::parse(0, "field size too large"))?),
            },
            _ => return Err(Error::parse(0, format!("malformed group spec {s:?}"))),
        };
        spec.validate().map_err(|e| Error::parse(0, e.to_string()))?;
        Ok(spec)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum GroupElement {
    Perm(Permutation),
    Mat(Matrix),
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Perm(p) => write!(f, "{p}"),
            GroupElement::Mat(m) => write!(f, "{m:?}"),
        }
    }
}

impl GroupElement {
    pub fn as_perm(&self) -> Option<&Permutation> {
        match self {
            GroupElement::Perm(p) => Some(p),
            GroupElement::Mat(_) => None,
        }
    }

    pub fn as_matrix(&self) -> Option<&Matrix> {
        match self {
            GroupElement::Mat(m) => Some(m),
            GroupElement::Perm(_) => None,
        }
    }
}

/// `k` elements of one group, substituted for `x_1, .., x_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorTuple {
    pub elems: Vec<GroupElement>,
    pub seed: Option<u64>,
}

impl GeneratorTuple {
    pub fn new(elems: Vec<GroupElement>) -> Self {
        GeneratorTuple { elems, seed: None }
    }

    pub fn k(&self) -> usize {
        self.elems.len()
    }
}

/// A concrete group: its spec together with the field and form it needs.
#[derive(Clone, Debug)]
pub struct Group {
    spec: GroupSpec,
    field: Option<Arc<FiniteField>>,
    form: Option<BilinearForm>,
}

impl Group {
    pub fn new(spec: GroupSpec) -> Result<Self> {
        spec.validate()?;
        let field = match spec.q {
            Some(q) => Some(Arc::new(FiniteField::new(q)?)),
            None => None,
        };
        let form = match (spec.family, &field) {
            (Family::Sp, Some(f)) => Some(BilinearForm::standard_symplectic(f, spec.n)?),
            _ => None,
        };
        Ok(Group { spec, field, form })
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn field(&self) -> Option<&FiniteField> {
        self.field.as_deref()
    }

    /// The preserved form, for symplectic groups.
    pub fn form(&self) -> Option<&BilinearForm> {
        self.form.as_ref()
    }

    pub fn order(&self) -> BigUint {
        self.spec.order()
    }

    fn f(&self) -> &FiniteField {
        self.field.as_deref().expect("matrix group has a field")
    }

    pub fn identity(&self) -> GroupElement {
        if self.spec.family.is_matrix() {
            GroupElement::Mat(Matrix::identity(self.spec.n))
        } else {
            GroupElement::Perm(Permutation::identity(self.spec.n))
        }
    }

    /// Applies `a`, then `b`.
    pub fn mul(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        match (a, b) {
            (GroupElement::Perm(x), GroupElement::Perm(y)) => GroupElement::Perm(x.compose_unchecked(y)),
            (GroupElement::Mat(x), GroupElement::Mat(y)) => {
                GroupElement::Mat(matrix::matmul(self.f(), y, x).expect("elements of one group share a dimension"))
            }
            _ => panic!("cannot multiply a permutation with a matrix"),
        }
    }

    pub fn inv(&self, a: &GroupElement) -> GroupElement {
        match a {
            GroupElement::Perm(p) => GroupElement::Perm(p.inverse()),
            GroupElement::Mat(m) => GroupElement::Mat(matrix::inverse(self.f(), m).expect("group elements are invertible")),
        }
    }

    pub fn is_identity(&self, a: &GroupElement) -> bool {
        match a {
            GroupElement::Perm(p) => p.is_identity(),
            GroupElement::Mat(m) => m.is_identity(),
        }
    }

    /// Membership test for the group's defining conditions.
    pub fn contains(&self, a: &GroupElement) -> bool {
        let n = self.spec.n;
        match (self.spec.family, a) {
            (Family::Sym, GroupElement::Perm(p)) => p.degree() == n,
            (Family::Alt, GroupElement::Perm(p)) => p.degree() == n && p.is_even(),
            (Family::GL, GroupElement::Mat(m)) => m.n() == n && !matrix::det(self.f(), m).is_zero(),
            (Family::SL, GroupElement::Mat(m)) => m.n() == n && matrix::det(self.f(), m) == FieldElement::ONE,
            (Family::Sp, GroupElement::Mat(m)) => m.n() == n && self.form.as_ref().unwrap().preserved_by(self.f(), m),
            _ => false,
        }
    }

    /// An exactly uniform random element.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<GroupElement> {
        let n = self.spec.n;
        Ok(match self.spec.family {
            Family::Sym => GroupElement::Perm(random_perm(n, rng)),
            Family::Alt => {
                let p = random_perm(n, rng);
                if p.is_even() {
                    GroupElement::Perm(p)
                } else {
                    let t = Permutation::from_cycles(n, &[&[1, 2]])?;
                    GroupElement::Perm(p.compose_unchecked(&t))
                }
            }
            Family::GL => GroupElement::Mat(self.sample_gl(rng)?),
            Family::SL => {
                let mut m = self.sample_gl(rng)?;
                let f = self.f();
                let d = matrix::det(f, &m);
                m.scale_row(f, n - 1, f.inv(d)?);
                GroupElement::Mat(m)
            }
            Family::Sp => GroupElement::Mat(self.sample_sp(rng)?),
        })
    }

    pub fn sample_tuple<R: Rng + ?Sized>(&self, k: usize, rng: &mut R) -> Result<GeneratorTuple> {
        let elems = (0..k).map(|_| self.sample(rng)).collect::<Result<_>>()?;
        Ok(GeneratorTuple::new(elems))
    }

    fn sample_gl<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Matrix> {
        let f = self.f();
        let n = self.spec.n;
        let mut span = EchelonSpan::new(n);
        let mut rows = Vec::with_capacity(n);
        for _ in 0..n {
            let row = (0..RETRY_CAP)
                .map(|_| matrix::random_vector(f, n, rng))
                .find(|v| !span.contains(f, v).unwrap_or(true))
                .ok_or_else(|| Error::Internal("GL row rejection exceeded its retry cap".into()))?;
            span.insert(f, &row)?;
            rows.push(row);
        }
        Matrix::from_rows(&rows)
    }

    /// Chooses the images of the hyperbolic basis pairs one at a time: the image
    /// of `e_i` uniformly among nonzero vectors orthogonal to all earlier images,
    /// the image of `f_i` uniformly among those vectors `x` with `<u_i, x> = 1`.
    fn sample_sp<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Matrix> {
        let f = self.f();
        let form = self.form.as_ref().unwrap();
        let n = self.spec.n;
        let mut images: Vec<Vector> = Vec::with_capacity(n);
        let mut constraints: Vec<Vector> = Vec::with_capacity(n);
        for _ in 0..n / 2 {
            let zeros = vec![FieldElement::ZERO; constraints.len()];
            let perp = matrix::solve_affine(f, &constraints, &zeros, n)?
                .ok_or_else(|| Error::Internal("homogeneous system inconsistent".into()))?;
            let u = (0..RETRY_CAP)
                .map(|_| perp.sample(f, rng))
                .find(|v| v.iter().any(|x| !x.is_zero()))
                .ok_or_else(|| Error::Internal("symplectic sampler exceeded its retry cap".into()))?;
            let mut rows = constraints.clone();
            rows.push(form.functional(f, &u));
            let mut rhs = zeros;
            rhs.push(FieldElement::ONE);
            let partners = matrix::solve_affine(f, &rows, &rhs, n)?
                .ok_or_else(|| Error::Internal("no hyperbolic partner exists".into()))?;
            let v = partners.sample(f, rng);
            constraints.push(form.functional(f, &u));
            constraints.push(form.functional(f, &v));
            images.push(u);
            images.push(v);
        }
        Matrix::from_columns(&images)
    }

    /// Bytes per encoded field entry.
    fn entry_width(&self) -> usize {
        if self.spec.q.unwrap_or(0) <= 256 {
            1
        } else {
            2
        }
    }

    pub fn encoded_len(&self) -> usize {
        let n = self.spec.n;
        if self.spec.family.is_matrix() {
            n * n * self.entry_width()
        } else {
            2 * n
        }
    }

    /// Canonical fixed-length encoding: permutation images as little-endian
    /// u16; matrix entries row-major as 1-byte (q ≤ 256) or little-endian
    /// 2-byte field indices.
    pub fn encode(&self, a: &GroupElement) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.encoded_len());
        self.encode_into(a, &mut out);
        out
    }

    pub fn encode_into(&self, a: &GroupElement, out: &mut Vec<u8>) {
        match a {
            GroupElement::Perm(p) => {
                for &i in p.images() {
                    out.extend_from_slice(&i.to_le_bytes());
                }
            }
            GroupElement::Mat(m) => {
                if self.entry_width() == 1 {
                    out.extend(m.entries().iter().map(|x| x.0 as u8));
                } else {
                    for x in m.entries() {
                        out.extend_from_slice(&(x.0 as u16).to_le_bytes());
                    }
                }
            }
        }
    }

    pub fn decode(&self, bytes: &[u8]) -> Result<GroupElement> {
        if bytes.len() != self.encoded_len() {
            return Err(Error::Decode(format!("expected {} bytes, got {}", self.encoded_len(), bytes.len())));
        }
        let el = if self.spec.family.is_matrix() {
            let f = self.f();
            let indices: Vec<u32> = if self.entry_width() == 1 {
                bytes.iter().map(|&b| b as u32).collect()
            } else {
                bytes.chunks_exact(2).map(|c| u16::from_le_bytes([c[0], c[1]]) as u32).collect()
            };
            let m = Matrix::from_indices(f, self.spec.n, &indices).map_err(|e| Error::Decode(e.to_string()))?;
            GroupElement::Mat(m)
        } else {
            let images = bytes
                .chunks_exact(2)
                .map(|c| u16::from_le_bytes([c[0], c[1]]) as usize)
                .collect();
            GroupElement::Perm(Permutation::from_images(images).map_err(|e| Error::Decode(e.to_string()))?)
        };
        if !self.contains(&el) {
            return Err(Error::Decode(format!("decoded element is not in {}", self.spec)));
        }
        Ok(el)
    }

    /// Every element exactly once. Permutation groups stream in lexicographic
    /// order of images; matrix groups are closed under a standard generating set.
    pub fn enumerate(&self, cap: u64) -> Result<Box<dyn Iterator<Item = GroupElement> + Send + '_>> {
        let order = self.order();
        if order > BigUint::from(cap) {
            return Err(Error::Capacity(format!("|{}| = {order} exceeds the enumeration cap {cap}", self.spec)));
        }
        let n = self.spec.n;
        match self.spec.family {
            Family::Sym => Ok(Box::new(LexPerms::new(n).map(GroupElement::Perm))),
            Family::Alt => Ok(Box::new(LexPerms::new(n).filter(|p| p.is_even()).map(GroupElement::Perm))),
            _ => {
                let elems = self.closure(&self.standard_generators()?)?;
                if BigUint::from(elems.len()) != order {
                    return Err(Error::Internal(format!(
                        "closure of the standard generators has {} elements, expected {order}",
                        elems.len()
                    )));
                }
                Ok(Box::new(elems.into_iter()))
            }
        }
    }

    /// Elementary transvections (SL, GL) plus a primitive diagonal (GL), or
    /// symplectic transvections `x ↦ x + λ<x, v>v` (Sp). The scalars `λ` run
    /// over an additive basis of the field.
    pub fn standard_generators(&self) -> Result<Vec<GroupElement>> {
        let n = self.spec.n;
        if !self.spec.family.is_matrix() {
            return Err(Error::domain("standard generators are defined for matrix groups"));
        }
        let f = self.f();
        let scalars: Vec<FieldElement> = (0..f.e()).map(|i| f.basis_element(i)).collect();
        let mut gens = Vec::new();
        match self.spec.family {
            Family::GL | Family::SL => {
                for i in 0..n {
                    for j in 0..n {
                        if i == j {
                            continue;
                        }
                        for &s in &scalars {
                            let mut m = Matrix::identity(n);
                            m.set(i, j, s);
                            gens.push(GroupElement::Mat(m));
                        }
                    }
                }
                if self.spec.family == Family::GL {
                    let mut d = Matrix::identity(n);
                    d.set(0, 0, f.primitive_element());
                    gens.push(GroupElement::Mat(d));
                }
            }
            Family::Sp => {
                let form = self.form.as_ref().unwrap();
                let unit = |i: usize| {
                    let mut v = vec![FieldElement::ZERO; n];
                    v[i] = FieldElement::ONE;
                    v
                };
                let mut vs: Vec<Vector> = (0..n).map(unit).collect();
                for a in (0..n).step_by(2) {
                    for b in 0..n {
                        if b / 2 != a / 2 {
                            let mut v = unit(a);
                            v[b] = FieldElement::ONE;
                            vs.push(v);
                        }
                    }
                }
                for v in &vs {
                    let jv = form.functional(f, v);
                    for &s in &scalars {
                        let mut m = Matrix::identity(n);
                        for r in 0..n {
                            for c in 0..n {
                                let x = f.add(m.get(r, c), f.mul(s, f.mul(v[r], jv[c])));
                                m.set(r, c, x);
                            }
                        }
                        gens.push(GroupElement::Mat(m));
                    }
                }
            }
            _ => unreachable!(),
        }
        Ok(gens)
    }

    fn closure(&self, gens: &[GroupElement]) -> Result<Vec<GroupElement>> {
        let id = self.identity();
        let mut seen: HashSet<Vec<u8>> = HashSet::new();
        seen.insert(self.encode(&id));
        let mut queue = VecDeque::from([id.clone()]);
        let mut out = vec![id];
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = self.mul(&x, g);
                if seen.insert(self.encode(&y)) {
                    if !self.contains(&y) {
                        return Err(Error::Internal(format!("generator closure left {}", self.spec)));
                    }
                    out.push(y.clone());
                    queue.push_back(y);
                }
            }
        }
        Ok(out)
    }

    /// `m·v` for matrix elements.
    pub fn act(&self, a: &GroupElement, v: &[FieldElement]) -> Result<Vector> {
        match a {
            GroupElement::Mat(m) => matrix::apply(self.f(), m, v),
            GroupElement::Perm(_) => Err(Error::domain("permutations do not act on vectors")),
        }
    }
}

fn random_perm<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Permutation {
    let mut images: Vec<usize> = (0..n).collect();
    images.shuffle(rng);
    Permutation::from_images(images).expect("shuffle of the identity is a permutation")
}

/// Lexicographic permutation stream.
struct LexPerms {
    next: Option<Vec<usize>>,
}

impl LexPerms {
    fn new(n: usize) -> Self {
        LexPerms { next: Some((0..n).collect()) }
    }
}

impl Iterator for LexPerms {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let cur = self.next.take()?;
        let mut a = cur.clone();
        // standard next-permutation step
        if let Some(i) = (1..a.len()).rev().find(|&i| a[i - 1] < a[i]) {
            let j = (i..a.len()).rev().find(|&j| a[j] > a[i - 1]).unwrap();
            a.swap(i - 1, j);
            a[i..].reverse();
            self.next = Some(a);
        }
        Some(Permutation::from_images(cur).expect("valid permutation"))
    }
}
