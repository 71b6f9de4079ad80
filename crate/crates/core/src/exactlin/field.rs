//! Finite fields F_{p^k} for odd p.
//!
//! An element is stored as the integer `c_0 + c_1 p + ... + c_{k-1} p^{k-1}`
//! encoding its coefficient vector modulo the context's modulus. The prime
//! subfield therefore sits on the encodings `0..p`.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An element of a [`FieldCtx`], by encoding.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fq(pub u16);

impl Fq {
    pub const ZERO: Fq = Fq(0);
    pub const ONE: Fq = Fq(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

pub type Field = Arc<FieldCtx>;

/// Header recorded alongside every serialized matrix or algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldHeader {
    pub p: u32,
    pub k: u32,
    pub modulus: Vec<u32>,
}

const TABLE_LIMIT: u32 = 256;

pub struct FieldCtx {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    exp: Vec<u16>,
    log: Vec<u32>,
    add_tab: Vec<u16>,
    mul_tab: Vec<u16>,
    neg_tab: Vec<u16>,
    inv_tab: Vec<u16>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{} mod {:?}", self.p, self.k, self.modulus)
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.modulus == other.modulus
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
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

// Dense polynomial helpers over F_p used only while bootstrapping a context.
mod prime_poly {
    pub fn trim(mut a: Vec<u32>) -> Vec<u32> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    fn inv(a: u32, p: u32) -> u32 {
        let mut r = 1u64;
        let mut b = a as u64;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p as u64;
            }
            b = b * b % p as u64;
            e >>= 1;
        }
        r as u32
    }

    pub fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut r = trim(a.to_vec());
        let dm = m.len() - 1;
        let lead_inv = inv(m[dm], p);
        while r.len() > dm {
            let top = r.len() - 1;
            let c = r[top] as u64 * lead_inv as u64 % p as u64;
            let shift = top - dm;
            for (i, &mi) in m.iter().enumerate() {
                let sub = c * mi as u64 % p as u64;
                r[shift + i] = ((r[shift + i] as u64 + p as u64 - sub) % p as u64) as u32;
            }
            r = trim(r);
        }
        r
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        trim(out.into_iter().map(|x| x as u32).collect())
    }

    pub fn sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let n = a.len().max(b.len());
        let mut out = vec![0u32; n];
        for (i, o) in out.iter_mut().enumerate() {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            *o = (x + p - y) % p;
        }
        trim(out)
    }

    pub fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut a = trim(a.to_vec());
        let mut b = trim(b.to_vec());
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    pub fn powmod(base: &[u32], mut e: u64, m: &[u32], p: u32) -> Vec<u32> {
        let mut result = vec![1];
        let mut b = rem(base, m, p);
        while e > 0 {
            if e & 1 == 1 {
                result = rem(&mul(&result, &b, p), m, p);
            }
            b = rem(&mul(&b, &b, p), m, p);
            e >>= 1;
        }
        result
    }

    /// All monic polynomials of the given degree, as coefficient lists.
    pub fn monics(deg: usize, p: u32) -> impl Iterator<Item = Vec<u32>> {
        let count = (p as u64).pow(deg as u32);
        (0..count).map(move |mut idx| {
            let mut v = Vec::with_capacity(deg + 1);
            for _ in 0..deg {
                v.push((idx % p as u64) as u32);
                idx /= p as u64;
            }
            v.push(1);
            v
        })
    }

    /// Irreducibility by trial division against every monic polynomial of
    /// degree at most deg/2.
    pub fn irreducible_exhaustive(f: &[u32], p: u32) -> bool {
        let deg = f.len() - 1;
        for d in 1..=deg / 2 {
            for g in monics(d, p) {
                if rem(f, &g, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    /// Rabin's test: f | x^{p^k} - x and gcd(x^{p^{k/r}} - x, f) = 1 for every
    /// prime r dividing k.
    pub fn irreducible_rabin(f: &[u32], p: u32) -> bool {
        let k = f.len() - 1;
        let x = vec![0, 1];
        let mut frob = x.clone();
        let mut powers = vec![x.clone()];
        for _ in 0..k {
            frob = powmod(&frob, p as u64, f, p);
            powers.push(frob.clone());
        }
        if !sub(&powers[k], &x, p).is_empty() && !rem(&sub(&powers[k], &x, p), f, p).is_empty() {
            return false;
        }
        for r in super::prime_factors(k as u64) {
            let h = sub(&powers[k / r as usize], &x, p);
            let g = gcd(f, &h, p);
            if g.len() > 1 {
                return false;
            }
        }
        true
    }
}

impl FieldCtx {
    /// Builds F_{p^k} with a modulus chosen by seeded random search.
    pub fn new(p: u32, k: u32) -> Result<Field> {
        Self::validate(p, k)?;
        if k == 1 {
            return Self::with_modulus(p, vec![0, 1]);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x6d6f_6473 ^ ((p as u64) << 8) ^ k as u64);
        loop {
            let mut f: Vec<u32> = (0..k).map(|_| rng.gen_range(0..p)).collect();
            f.push(1);
            if f[0] == 0 {
                continue;
            }
            if Self::modulus_is_irreducible(&f, p) {
                return Self::with_modulus(p, f);
            }
        }
    }

    fn validate(p: u32, k: u32) -> Result<()> {
        if p < 3 || !is_prime(p) {
            return Err(Error::Usage(format!("p = {p} must be an odd prime")));
        }
        if k == 0 {
            return Err(Error::Usage("extension degree must be at least 1".into()));
        }
        let q = (p as u64).checked_pow(k).unwrap_or(u64::MAX);
        if q > u16::MAX as u64 {
            return Err(Error::Usage(format!("field of order {p}^{k} is too large")));
        }
        Ok(())
    }

    fn modulus_is_irreducible(f: &[u32], p: u32) -> bool {
        let k = f.len() - 1;
        if k <= 4 {
            prime_poly::irreducible_exhaustive(f, p)
        } else {
            prime_poly::irreducible_rabin(f, p)
        }
    }

    /// Builds F_{p^k} from an explicit monic modulus of degree k.
    pub fn with_modulus(p: u32, modulus: Vec<u32>) -> Result<Field> {
        if modulus.len() < 2 || *modulus.last().unwrap() != 1 {
            return Err(Error::Usage("modulus must be monic of degree >= 1".into()));
        }
        let k = (modulus.len() - 1) as u32;
        Self::validate(p, k)?;
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::Usage("modulus coefficients must lie in [0, p)".into()));
        }
        if !Self::modulus_is_irreducible(&modulus, p) {
            return Err(Error::Usage(format!("modulus {modulus:?} is reducible over F_{p}")));
        }
        let q = p.pow(k);
        let mut ctx = FieldCtx {
            p,
            k,
            q,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
            add_tab: Vec::new(),
            mul_tab: Vec::new(),
            neg_tab: Vec::new(),
            inv_tab: Vec::new(),
        };
        ctx.build_tables();
        Ok(Arc::new(ctx))
    }

    fn decode(&self, a: u32) -> Vec<u32> {
        let mut v = Vec::with_capacity(self.k as usize);
        let mut a = a;
        for _ in 0..self.k {
            v.push(a % self.p);
            a /= self.p;
        }
        v
    }

    fn encode(&self, v: &[u32]) -> u32 {
        let mut a = 0u32;
        for &c in v.iter().rev() {
            a = a * self.p + c % self.p;
        }
        a
    }

    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        let prod = prime_poly::mul(&self.decode(a), &self.decode(b), self.p);
        self.encode(&prime_poly::rem(&prod, &self.modulus, self.p))
    }

    fn add_digits(&self, a: u32, b: u32) -> u32 {
        let (mut a, mut b) = (a, b);
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.k {
            let d = (a % self.p + b % self.p) % self.p;
            out += d * place;
            place *= self.p;
            a /= self.p;
            b /= self.p;
        }
        out
    }

    fn build_tables(&mut self) {
        let q = self.q;
        let order = (q - 1) as u64;
        let factors = prime_factors(order);
        let pow_slow = |ctx: &FieldCtx, g: u32, mut e: u64| {
            let mut r = 1u32;
            let mut b = g;
            while e > 0 {
                if e & 1 == 1 {
                    r = ctx.mul_slow(r, b);
                }
                b = ctx.mul_slow(b, b);
                e >>= 1;
            }
            r
        };
        let gen = (1..q)
            .find(|&g| factors.iter().all(|&r| pow_slow(self, g, order / r) != 1))
            .expect("multiplicative group of a finite field is cyclic");
        let mut exp = vec![0u16; 2 * order as usize];
        let mut log = vec![0u32; q as usize];
        let mut cur = 1u32;
        for i in 0..order as usize {
            exp[i] = cur as u16;
            exp[i + order as usize] = cur as u16;
            log[cur as usize] = i as u32;
            cur = self.mul_slow(cur, gen);
        }
        self.exp = exp;
        self.log = log;
        self.neg_tab = (0..q).map(|a| self.encode(&self.decode(a).iter().map(|&c| (self.p - c) % self.p).collect::<Vec<_>>()) as u16).collect();
        self.inv_tab = (0..q)
            .map(|a| if a == 0 { 0 } else { self.exp[((order - self.log[a as usize] as u64) % order) as usize] })
            .collect();
        if q <= TABLE_LIMIT && self.k > 1 {
            let mut add_tab = vec![0u16; (q * q) as usize];
            let mut mul_tab = vec![0u16; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    add_tab[(a * q + b) as usize] = self.add_digits(a, b) as u16;
                    mul_tab[(a * q + b) as usize] = if a == 0 || b == 0 {
                        0
                    } else {
                        self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
                    };
                }
            }
            self.add_tab = add_tab;
            self.mul_tab = mul_tab;
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn header(&self) -> FieldHeader {
        FieldHeader { p: self.p, k: self.k, modulus: self.modulus.clone() }
    }

    pub fn coeffs(&self, a: Fq) -> Vec<u32> {
        self.decode(a.0 as u32)
    }

    pub fn from_coeffs(&self, v: &[u32]) -> Result<Fq> {
        if v.len() != self.k as usize || v.iter().any(|&c| c >= self.p) {
            return Err(Error::Format(format!("bad coefficient vector {v:?}")));
        }
        Ok(Fq(self.encode(v) as u16))
    }

    /// Image of an integer in the prime subfield.
    pub fn from_i64(&self, n: i64) -> Fq {
        Fq(n.rem_euclid(self.p as i64) as u16)
    }

    /// The integer in `0..p` representing a prime-subfield element.
    pub fn to_prime(&self, a: Fq) -> Option<u32> {
        if (a.0 as u32) < self.p {
            Some(a.0 as u32)
        } else {
            None
        }
    }

    pub fn in_prime_field(&self, a: Fq) -> bool {
        (a.0 as u32) < self.p
    }

    /// The class of x modulo the modulus; generates the field over F_p.
    pub fn generator(&self) -> Fq {
        if self.k == 1 {
            Fq(0)
        } else {
            Fq(self.p as u16)
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Fq> {
        (0..self.q).map(|a| Fq(a as u16))
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Fq {
        Fq(rng.gen_range(0..self.q) as u16)
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Fq {
        Fq(rng.gen_range(1..self.q) as u16)
    }

    #[inline]
    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        if self.k == 1 {
            let s = a.0 as u32 + b.0 as u32;
            Fq(if s >= self.p { s - self.p } else { s } as u16)
        } else if !self.add_tab.is_empty() {
            Fq(self.add_tab[a.0 as usize * self.q as usize + b.0 as usize])
        } else {
            Fq(self.add_digits(a.0 as u32, b.0 as u32) as u16)
        }
    }

    #[inline]
    pub fn neg(&self, a: Fq) -> Fq {
        Fq(self.neg_tab[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        if a.0 == 0 || b.0 == 0 {
            return Fq::ZERO;
        }
        if self.k == 1 {
            Fq(((a.0 as u32 * b.0 as u32) % self.p) as u16)
        } else if !self.mul_tab.is_empty() {
            Fq(self.mul_tab[a.0 as usize * self.q as usize + b.0 as usize])
        } else {
            Fq(self.exp[(self.log[a.0 as usize] + self.log[b.0 as usize]) as usize])
        }
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: Fq) -> Option<Fq> {
        if a.0 == 0 {
            None
        } else {
            Some(Fq(self.inv_tab[a.0 as usize]))
        }
    }

    pub fn div(&self, a: Fq, b: Fq) -> Option<Fq> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    pub fn pow(&self, a: Fq, e: u64) -> Fq {
        if e == 0 {
            return Fq::ONE;
        }
        if a.0 == 0 {
            return Fq::ZERO;
        }
        let order = (self.q - 1) as u64;
        let l = (self.log[a.0 as usize] as u64 * (e % order)) % order;
        Fq(self.exp[l as usize])
    }

    pub fn frobenius(&self, a: Fq) -> Fq {
        self.pow(a, self.p as u64)
    }

    /// The unique b with b^p = a.
    pub fn frobenius_root(&self, a: Fq) -> Fq {
        self.pow(a, (self.p as u64).pow(self.k - 1))
    }

    /// Some square root of `a`, if one exists in the field.
    pub fn sqrt(&self, a: Fq) -> Option<Fq> {
        if a.0 == 0 {
            return Some(Fq::ZERO);
        }
        let l = self.log[a.0 as usize];
        if l % 2 == 1 {
            return None;
        }
        Some(Fq(self.exp[(l / 2) as usize]))
    }

    /// `dst += c * src`, entrywise.
    #[inline]
    pub fn axpy(&self, dst: &mut [Fq], c: Fq, src: &[Fq]) {
        if c.0 == 0 {
            return;
        }
        if self.k == 1 {
            let p = self.p;
            let c = c.0 as u32;
            for (d, s) in dst.iter_mut().zip(src) {
                if s.0 != 0 {
                    *d = Fq(((d.0 as u32 + c * s.0 as u32) % p) as u16);
                }
            }
        } else if !self.mul_tab.is_empty() {
            let q = self.q as usize;
            let row = &self.mul_tab[c.0 as usize * q..(c.0 as usize + 1) * q];
            for (d, s) in dst.iter_mut().zip(src) {
                if s.0 != 0 {
                    *d = Fq(self.add_tab[d.0 as usize * q + row[s.0 as usize] as usize]);
                }
            }
        } else {
            for (d, s) in dst.iter_mut().zip(src) {
                if s.0 != 0 {
                    *d = self.add(*d, self.mul(c, *s));
                }
            }
        }
    }

    #[inline]
    pub fn scale(&self, v: &mut [Fq], c: Fq) {
        for x in v.iter_mut() {
            *x = self.mul(*x, c);
        }
    }

    pub fn dot(&self, a: &[Fq], b: &[Fq]) -> Fq {
        if self.k == 1 {
            let mut acc = 0u64;
            for (x, y) in a.iter().zip(b) {
                acc += x.0 as u64 * y.0 as u64;
            }
            Fq((acc % self.p as u64) as u16)
        } else {
            let mut acc = Fq::ZERO;
            for (x, y) in a.iter().zip(b) {
                acc = self.add(acc, self.mul(*x, *y));
            }
            acc
        }
    }

    /// True when `k == 1`, enabling integer accumulation in hot loops.
    #[inline]
    pub fn is_prime_field(&self) -> bool {
        self.k == 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_basics() {
        let f = FieldCtx::new(5, 1).unwrap();
        assert_eq!(f.order(), 5);
        assert_eq!(f.add(Fq(3), Fq(4)), Fq(2));
        assert_eq!(f.mul(Fq(3), Fq(4)), Fq(2));
        assert_eq!(f.inv(Fq(2)), Some(Fq(3)));
        assert_eq!(f.neg(Fq(1)), Fq(4));
        assert_eq!(f.from_i64(-7), Fq(3));
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(FieldCtx::new(2, 1).is_err());
        assert!(FieldCtx::new(9, 1).is_err());
        assert!(FieldCtx::with_modulus(3, vec![1, 0, 1]).is_ok());
        assert!(FieldCtx::with_modulus(3, vec![2, 0, 1]).is_err());
    }

    #[test]
    fn extension_field_axioms() {
        for (p, k) in [(3, 2), (5, 2), (3, 3), (7, 2), (3, 5)] {
            let f = FieldCtx::new(p, k).unwrap();
            let q = f.order();
            assert_eq!(q, p.pow(k));
            // Multiplication table agrees with slow polynomial multiplication.
            for a in (0..q).step_by(((q / 30) as usize).max(1)) {
                for b in (0..q).step_by(((q / 30) as usize).max(1)) {
                    let fast = f.mul(Fq(a as u16), Fq(b as u16));
                    assert_eq!(fast.0 as u32, f.mul_slow(a, b));
                }
                if a != 0 {
                    let ai = f.inv(Fq(a as u16)).unwrap();
                    assert_eq!(f.mul(Fq(a as u16), ai), Fq::ONE);
                }
            }
        }
    }

    #[test]
    fn frobenius_root_matches_exhaustive_search() {
        let f = FieldCtx::new(3, 2).unwrap();
        for a in f.elements() {
            let found: Vec<Fq> = f.elements().filter(|&b| f.pow(b, 3) == a).collect();
            assert_eq!(found.len(), 1);
            assert_eq!(f.frobenius_root(a), found[0]);
        }
        assert_eq!(f.frobenius_root(Fq::ZERO), Fq::ZERO);
        assert_eq!(f.frobenius_root(Fq::ONE), Fq::ONE);
    }

    #[test]
    fn frobenius_root_round_trip_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for p in [3, 5, 7] {
            for k in [1, 2] {
                let f = FieldCtx::new(p, k).unwrap();
                for _ in 0..1000 {
                    let a = f.random(&mut rng);
                    assert_eq!(f.pow(f.frobenius_root(a), p as u64), a);
                    assert_eq!(f.frobenius_root(f.frobenius(a)), a);
                }
            }
        }
    }

    #[test]
    fn sqrt_is_a_root() {
        let f = FieldCtx::new(5, 2).unwrap();
        for a in f.elements() {
            if let Some(r) = f.sqrt(a) {
                assert_eq!(f.mul(r, r), a);
            }
        }
        let f3 = FieldCtx::new(3, 1).unwrap();
        assert_eq!(f3.sqrt(Fq(2)), None);
    }

    #[test]
    fn coefficient_round_trip() {
        let f = FieldCtx::new(7, 2).unwrap();
        for a in f.elements() {
            assert_eq!(f.from_coeffs(&f.coeffs(a)).unwrap(), a);
        }
    }
}
