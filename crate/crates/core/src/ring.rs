//! Exact arithmetic in `Z/p^h` and in the Galois ring `GR(p^h, 2)`.
//!
//! Elements of `GR(p^h, 2)` are stored in coordinate form `c0 + c1·ω` over
//! `Z/p^h`, where `ω` is the class of `x` modulo a monic quadratic whose
//! reduction mod `p` is irreducible. The Teichmüller set, the `p`-adic digit
//! expansion, the Frobenius automorphism and the trace down to `Z/p^h` are all
//! computed exactly on this representation.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

/// Largest admissible `q = p^h`; keeps every product of two residues in `u64`.
pub const MAX_MODULUS: u64 = 1 << 31;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("exponent h must be at least 1")]
    ZeroExponent,
    #[error("p^h = {p}^{h} exceeds the exact-integer range (p^h must stay below 2^31)")]
    TooLarge { p: u64, h: u32 },
    #[error("elements belong to different rings: GR({0}^{1}, 2) vs GR({2}^{3}, 2)", .lhs.0, .lhs.1, .rhs.0, .rhs.1)]
    MixedRings { lhs: (u64, u32), rhs: (u64, u32) },
    #[error("trace of {0} has a nonzero ω-coordinate; Frobenius is inconsistent")]
    BrokenFrobenius(GrElem),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

/// Identifies the ring an element was created in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RingTag {
    pub p: u64,
    pub h: u32,
}

/// Residue in `Z/p^h`, always kept in `[0, p^h)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
#[repr(transparent)]
pub struct Zq(pub u64);

impl Zq {
    pub fn value(self) -> u64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Zq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Element `c0 + c1·ω` of `GR(p^h, 2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GrElem {
    pub c0: Zq,
    pub c1: Zq,
    tag: RingTag,
}

impl GrElem {
    pub fn tag(&self) -> RingTag {
        self.tag
    }

    pub fn coords(&self) -> (u64, u64) {
        (self.c0.0, self.c1.0)
    }
}

impl fmt::Display for GrElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}ω", self.c0, self.c1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GrOp {
    Add,
    Sub,
    Mul,
    Pow(u64),
}

/// Quadratic-extension arithmetic over `Z/modulus` with `ω² = -f1·ω - f0`.
///
/// Shared by the full ring and by its residue field, so both reduce modulo
/// the same lifted polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct QuadArith {
    pub q: u64,
    pub f0: u64,
    pub f1: u64,
}

impl QuadArith {
    #[inline]
    pub fn add(&self, a: (u64, u64), b: (u64, u64)) -> (u64, u64) {
        ((a.0 + b.0) % self.q, (a.1 + b.1) % self.q)
    }

    #[inline]
    pub fn sub(&self, a: (u64, u64), b: (u64, u64)) -> (u64, u64) {
        ((a.0 + self.q - b.0) % self.q, (a.1 + self.q - b.1) % self.q)
    }

    #[inline]
    pub fn mul(&self, a: (u64, u64), b: (u64, u64)) -> (u64, u64) {
        let q = self.q;
        let lo = a.0 * b.0 % q;
        let mid = (a.0 * b.1 % q + a.1 * b.0 % q) % q;
        let hi = a.1 * b.1 % q;
        // hi·ω² = -hi·f1·ω - hi·f0
        let c0 = (lo + q - hi * self.f0 % q) % q;
        let c1 = (mid + q - hi * self.f1 % q) % q;
        (c0, c1)
    }

    pub fn pow(&self, mut base: (u64, u64), mut exp: u64) -> (u64, u64) {
        let mut acc = (1 % self.q, 0);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2u64;
    while k * k <= n {
        if n % k == 0 {
            return false;
        }
        k += 1;
    }
    true
}

/// Distinct prime divisors of `n`, ascending.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut k = 2u64;
    while k * k <= n {
        if n % k == 0 {
            out.push(k);
            while n % k == 0 {
                n /= k;
            }
        }
        k += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Immutable description of `GR(p^h, 2)` together with its Teichmüller data.
#[derive(Debug, Clone)]
pub struct GaloisRing {
    p: u64,
    h: u32,
    q: u64,
    arith: QuadArith,
    residue: QuadArith,
    xi: GrElem,
    experimental: bool,
    /// `teich[0] = 0`, `teich[i] = ξ^i` for `1 <= i <= p²-1`.
    teich: Vec<GrElem>,
    log: HashMap<(u64, u64), u64>,
}

impl GaloisRing {
    /// Builds `GR(p^h, 2)`.
    ///
    /// The modulus is the smallest monic irreducible quadratic `x² + a·x + b`
    /// over `F_p`, ordered by `(a, b)`. `ξ` is the Teichmüller lift of the
    /// first residue-field generator in the order `c1·p + c0`.
    pub fn new(p: u64, h: u32) -> Result<Self, RingError> {
        if !is_prime(p) {
            return Err(RingError::NotPrime(p));
        }
        if h == 0 {
            return Err(RingError::ZeroExponent);
        }
        let q = (0..h)
            .try_fold(1u64, |acc, _| acc.checked_mul(p).filter(|v| *v < MAX_MODULUS))
            .ok_or(RingError::TooLarge { p, h })?;

        let (f1, f0) = smallest_irreducible_quadratic(p);
        let arith = QuadArith { q, f0, f1 };
        let residue = QuadArith { q: p, f0, f1 };
        let tag = RingTag { p, h };
        let order = p * p - 1;

        let gen = residue_generator(&residue, order)
            .ok_or_else(|| RingError::Invariant("residue field has no generator".into()))?;

        let mut ring = GaloisRing {
            p,
            h,
            q,
            arith,
            residue,
            xi: GrElem { c0: Zq(0), c1: Zq(0), tag },
            experimental: p == 2,
            teich: Vec::new(),
            log: HashMap::new(),
        };
        let xi = ring.teichmuller_lift(ring.elem(gen.0, gen.1));
        ring.xi = xi;

        let mut teich = Vec::with_capacity((order + 1) as usize);
        teich.push(ring.zero());
        let mut log = HashMap::with_capacity(order as usize);
        let mut cur = ring.one();
        for i in 1..=order {
            cur = ring.mul(cur, xi);
            teich.push(cur);
            log.insert(cur.coords(), i % order);
        }
        ring.teich = teich;
        ring.log = log;
        ring.check_invariants()?;
        Ok(ring)
    }

    fn check_invariants(&self) -> Result<(), RingError> {
        let order = self.unit_order();
        if self.pow(self.xi, order) != self.one() {
            return Err(RingError::Invariant(format!("ξ^{order} != 1")));
        }
        for r in prime_factors(order) {
            if self.pow(self.xi, order / r) == self.one() {
                return Err(RingError::Invariant(format!("ξ has order dividing {}", order / r)));
            }
        }
        if self.log.len() as u64 != order {
            return Err(RingError::Invariant("Teichmüller units are not distinct".into()));
        }
        Ok(())
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn h(&self) -> u32 {
        self.h
    }

    /// `p^h`, the modulus of the base ring.
    pub fn q(&self) -> u64 {
        self.q
    }

    /// Number of elements, `p^{2h}`.
    pub fn size(&self) -> u64 {
        self.q * self.q
    }

    /// `p² - 1`, the order of the Teichmüller unit group.
    pub fn unit_order(&self) -> u64 {
        self.p * self.p - 1
    }

    pub fn tag(&self) -> RingTag {
        RingTag { p: self.p, h: self.h }
    }

    /// Coefficients `(a, b)` of the modulus polynomial `x² + a·x + b`.
    pub fn modulus_poly(&self) -> (u64, u64) {
        (self.arith.f1, self.arith.f0)
    }

    pub fn xi(&self) -> GrElem {
        self.xi
    }

    /// `p = 2` is outside the odd-prime setting; results are still exact.
    pub fn is_experimental(&self) -> bool {
        self.experimental
    }

    pub fn teich_table(&self) -> &[GrElem] {
        &self.teich
    }

    /// `ξ^k` for any `k`, read from the Teichmüller table.
    pub fn xi_pow(&self, k: u64) -> GrElem {
        let order = self.unit_order();
        let e = k % order;
        if e == 0 {
            self.one()
        } else {
            self.teich[e as usize]
        }
    }

    /// Discrete log base `ξ` of a Teichmüller unit.
    pub fn teich_log(&self, t: GrElem) -> Option<u64> {
        self.log.get(&t.coords()).copied()
    }

    pub(crate) fn arith(&self) -> QuadArith {
        self.arith
    }

    pub fn zq(&self, v: u64) -> Zq {
        Zq(v % self.q)
    }

    pub fn elem(&self, c0: u64, c1: u64) -> GrElem {
        GrElem { c0: Zq(c0 % self.q), c1: Zq(c1 % self.q), tag: self.tag() }
    }

    pub fn from_scalar(&self, v: Zq) -> GrElem {
        self.elem(v.0, 0)
    }

    pub fn zero(&self) -> GrElem {
        self.elem(0, 0)
    }

    pub fn one(&self) -> GrElem {
        self.elem(1, 0)
    }

    /// Deterministic index `c1·q + c0` in `[0, q²)`.
    pub fn index_of(&self, z: GrElem) -> u64 {
        z.c1.0 * self.q + z.c0.0
    }

    pub fn from_index(&self, idx: u64) -> GrElem {
        self.elem(idx % self.q, idx / self.q)
    }

    /// All `p^{2h}` elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = GrElem> + '_ {
        (0..self.size()).map(move |i| self.from_index(i))
    }

    #[inline]
    fn wrap(&self, c: (u64, u64)) -> GrElem {
        GrElem { c0: Zq(c.0), c1: Zq(c.1), tag: self.tag() }
    }

    pub fn add(&self, a: GrElem, b: GrElem) -> GrElem {
        self.wrap(self.arith.add(a.coords(), b.coords()))
    }

    pub fn sub(&self, a: GrElem, b: GrElem) -> GrElem {
        self.wrap(self.arith.sub(a.coords(), b.coords()))
    }

    pub fn neg(&self, a: GrElem) -> GrElem {
        self.sub(self.zero(), a)
    }

    pub fn mul(&self, a: GrElem, b: GrElem) -> GrElem {
        self.wrap(self.arith.mul(a.coords(), b.coords()))
    }

    pub fn pow(&self, a: GrElem, exp: u64) -> GrElem {
        self.wrap(self.arith.pow(a.coords(), exp))
    }

    pub fn scale(&self, u: Zq, a: GrElem) -> GrElem {
        self.elem(u.0 * a.c0.0 % self.q, u.0 * a.c1.0 % self.q)
    }

    /// Checked ring operation; rejects operands from a different ring.
    pub fn apply(&self, a: GrElem, b: GrElem, op: GrOp) -> Result<GrElem, RingError> {
        let tag = self.tag();
        for x in [a, b] {
            if x.tag != tag {
                return Err(RingError::MixedRings { lhs: (tag.p, tag.h), rhs: (x.tag.p, x.tag.h) });
            }
        }
        Ok(match op {
            GrOp::Add => self.add(a, b),
            GrOp::Sub => self.sub(a, b),
            GrOp::Mul => self.mul(a, b),
            GrOp::Pow(e) => self.pow(a, e),
        })
    }

    pub fn zq_add(&self, a: Zq, b: Zq) -> Zq {
        Zq((a.0 + b.0) % self.q)
    }

    pub fn zq_mul(&self, a: Zq, b: Zq) -> Zq {
        Zq(a.0 * b.0 % self.q)
    }

    pub fn zq_is_unit(&self, a: Zq) -> bool {
        a.0 % self.p != 0
    }

    /// Units of `Z/p^h` in increasing order.
    pub fn zq_units(&self) -> impl Iterator<Item = Zq> + '_ {
        (1..self.q).filter(move |v| v % self.p != 0).map(Zq)
    }

    /// An element is a unit iff its reduction mod `p` is nonzero.
    pub fn is_unit(&self, z: GrElem) -> bool {
        z.c0.0 % self.p != 0 || z.c1.0 % self.p != 0
    }

    pub fn reduce_mod_p(&self, z: GrElem) -> (u64, u64) {
        (z.c0.0 % self.p, z.c1.0 % self.p)
    }

    /// Multiplicative order of `z` in the residue field, `None` for zero.
    pub fn residue_order(&self, z: GrElem) -> Option<u64> {
        let r = self.reduce_mod_p(z);
        if r == (0, 0) {
            return None;
        }
        let n = self.unit_order();
        let mut ord = n;
        for f in prime_factors(n) {
            while ord % f == 0 && self.residue.pow(r, ord / f) == (1, 0) {
                ord /= f;
            }
        }
        Some(ord)
    }

    pub fn is_teichmuller(&self, z: GrElem) -> bool {
        self.pow(z, self.p * self.p) == z
    }

    /// The unique Teichmüller element congruent to `z` mod `p`.
    ///
    /// Iterates `w ↦ w^{p²}` to its fixed point; non-units go to zero.
    pub fn teichmuller_lift(&self, z: GrElem) -> GrElem {
        let e = self.p * self.p;
        let mut w = z;
        loop {
            let next = self.pow(w, e);
            if next == w {
                return w;
            }
            w = next;
        }
    }

    /// `p`-adic digits `(t_0, …, t_{h-1})` with `z = Σ p^i t_i`, `t_i ∈ T`.
    pub fn teich_digits(&self, z: GrElem) -> Vec<GrElem> {
        let mut digits = Vec::with_capacity(self.h as usize);
        let mut rest = z;
        for _ in 0..self.h {
            let t = self.teichmuller_lift(rest);
            digits.push(t);
            let diff = self.sub(rest, t);
            debug_assert!(diff.c0.0 % self.p == 0 && diff.c1.0 % self.p == 0);
            rest = self.elem(diff.c0.0 / self.p, diff.c1.0 / self.p);
        }
        digits
    }

    /// `Σ p^i t_i`.
    pub fn recompose(&self, digits: &[GrElem]) -> GrElem {
        let mut acc = self.zero();
        let mut scale = 1 % self.q;
        for &t in digits {
            acc = self.add(acc, self.scale(Zq(scale), t));
            scale = scale * self.p % self.q;
        }
        acc
    }

    /// Frobenius: `Σ p^i t_i ↦ Σ p^i t_i^p` on the digit expansion.
    pub fn frobenius(&self, z: GrElem) -> GrElem {
        let conj: Vec<GrElem> =
            self.teich_digits(z).into_iter().map(|t| self.pow(t, self.p)).collect();
        self.recompose(&conj)
    }

    /// `Tr(z) = z + F(z)`, returned as an element of `Z/p^h`.
    pub fn trace(&self, z: GrElem) -> Result<Zq, RingError> {
        let s = self.add(z, self.frobenius(z));
        if s.c1.0 != 0 {
            return Err(RingError::BrokenFrobenius(z));
        }
        Ok(s.c0)
    }

    /// Whether `-1` lies in the Teichmüller set (true for odd `p`).
    pub fn minus_one_is_teichmuller(&self) -> bool {
        self.is_teichmuller(self.neg(self.one()))
    }

    /// Writes `z = a + b·ξ` with `a, b ∈ Z/p^h`.
    pub fn xi_coordinates(&self, z: GrElem) -> (Zq, Zq) {
        let (x0, x1) = self.xi.coords();
        let inv = zq_inverse(x1, self.q).expect("ω-coordinate of ξ is a unit");
        let b = z.c1.0 * inv % self.q;
        let a = (z.c0.0 + self.q - b * x0 % self.q) % self.q;
        (Zq(a), Zq(b))
    }
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn zq_inverse(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let k = r0 / r1;
        (r0, r1) = (r1, r0 - k * r1);
        (t0, t1) = (t1, t0 - k * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(m as i128) as u64)
}

/// `(a, b)` for the smallest monic irreducible `x² + a·x + b` mod `p`.
fn smallest_irreducible_quadratic(p: u64) -> (u64, u64) {
    for a in 0..p {
        for b in 0..p {
            if (0..p).all(|x| (x * x + a * x + b) % p != 0) {
                return (a, b);
            }
        }
    }
    unreachable!("every prime field has an irreducible quadratic")
}

fn residue_generator(res: &QuadArith, order: u64) -> Option<(u64, u64)> {
    let p = res.q;
    let factors = prime_factors(order);
    (1..p * p)
        .map(|i| (i % p, i / p))
        .find(|&g| factors.iter().all(|&r| res.pow(g, order / r) != (1, 0)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_field() {
        let r = GaloisRing::new(3, 1).unwrap();
        assert_eq!(r.size(), 9);
        assert_eq!(r.modulus_poly(), (0, 1));
        assert_eq!(r.pow(r.xi(), 8), r.one());
        assert_ne!(r.pow(r.xi(), 4), r.one());
        assert_eq!(r.teich_table().len(), 9);
    }

    #[test]
    fn xi_fourth_power_is_minus_one() {
        let r = GaloisRing::new(3, 2).unwrap();
        assert_eq!(r.pow(r.xi(), 8), r.one());
        assert_eq!(r.pow(r.xi(), 4), r.neg(r.one()));
    }

    #[test]
    fn teichmuller_table_fixed() {
        let r = GaloisRing::new(5, 3).unwrap();
        assert_eq!(r.teich_table().len(), 25);
        for &t in r.teich_table() {
            assert_eq!(r.pow(t, 25), t);
        }
    }

    #[test]
    fn modulus_choices() {
        assert_eq!(GaloisRing::new(2, 1).unwrap().modulus_poly(), (1, 1));
        assert_eq!(GaloisRing::new(5, 1).unwrap().modulus_poly(), (0, 2));
        assert_eq!(GaloisRing::new(7, 1).unwrap().modulus_poly(), (0, 1));
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(GaloisRing::new(9, 2).unwrap_err(), RingError::NotPrime(9));
        assert_eq!(GaloisRing::new(1, 2).unwrap_err(), RingError::NotPrime(1));
        assert_eq!(GaloisRing::new(3, 0).unwrap_err(), RingError::ZeroExponent);
        assert!(matches!(GaloisRing::new(3, 40), Err(RingError::TooLarge { .. })));
        assert!(GaloisRing::new(2, 3).unwrap().is_experimental());
    }

    #[test]
    fn mixed_rings_rejected() {
        let a = GaloisRing::new(3, 2).unwrap();
        let b = GaloisRing::new(3, 3).unwrap();
        let err = a.apply(a.one(), b.one(), GrOp::Mul).unwrap_err();
        assert!(matches!(err, RingError::MixedRings { .. }));
        assert_eq!(a.apply(a.one(), a.xi(), GrOp::Mul).unwrap(), a.xi());
    }

    #[test]
    fn distributivity_example() {
        let r = GaloisRing::new(5, 2).unwrap();
        let x = r.xi();
        let lhs = r.mul(r.add(x, r.one()), r.sub(x, r.one()));
        let rhs = r.sub(r.mul(x, x), r.one());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn trace_basics() {
        let r = GaloisRing::new(7, 2).unwrap();
        assert_eq!(r.trace(r.zero()).unwrap(), Zq(0));
        assert_eq!(r.trace(r.one()).unwrap(), Zq(2));
        assert_eq!(r.frobenius(r.one()), r.one());
        assert_eq!(r.frobenius(r.xi()), r.pow(r.xi(), 7));
    }

    #[test]
    fn minus_one_teichmuller() {
        for (p, h) in [(3, 2), (5, 3), (7, 1)] {
            assert!(GaloisRing::new(p, h).unwrap().minus_one_is_teichmuller());
        }
        assert!(GaloisRing::new(2, 1).unwrap().minus_one_is_teichmuller());
        for h in 2..=4 {
            assert!(!GaloisRing::new(2, h).unwrap().minus_one_is_teichmuller());
        }
    }

    #[test]
    fn xi_coordinates_roundtrip() {
        let r = GaloisRing::new(3, 2).unwrap();
        for z in r.elements() {
            let (a, b) = r.xi_coordinates(z);
            assert_eq!(r.add(r.from_scalar(a), r.scale(b, r.xi())), z);
        }
    }

    #[test]
    fn inverse_mod() {
        assert_eq!(zq_inverse(2, 9), Some(5));
        assert_eq!(zq_inverse(3, 9), None);
    }
}
