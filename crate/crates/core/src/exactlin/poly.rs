//! Univariate polynomials over a [`FieldCtx`], coefficients lowest degree first.

use rand::Rng;

use super::field::{FieldCtx, Fq};

pub type Poly = Vec<Fq>;

pub fn trim(mut a: Poly) -> Poly {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

/// Degree, with the zero polynomial reported as `None`.
pub fn degree(a: &[Fq]) -> Option<usize> {
    a.iter().rposition(|c| !c.is_zero())
}

pub fn is_one(a: &[Fq]) -> bool {
    degree(a) == Some(0) && a[0] == Fq::ONE
}

pub fn monomial(deg: usize) -> Poly {
    let mut v = vec![Fq::ZERO; deg + 1];
    v[deg] = Fq::ONE;
    v
}

pub fn add(f: &FieldCtx, a: &[Fq], b: &[Fq]) -> Poly {
    let n = a.len().max(b.len());
    let mut out = vec![Fq::ZERO; n];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(Fq::ZERO);
        let y = b.get(i).copied().unwrap_or(Fq::ZERO);
        *o = f.add(x, y);
    }
    trim(out)
}

pub fn sub(f: &FieldCtx, a: &[Fq], b: &[Fq]) -> Poly {
    let n = a.len().max(b.len());
    let mut out = vec![Fq::ZERO; n];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(Fq::ZERO);
        let y = b.get(i).copied().unwrap_or(Fq::ZERO);
        *o = f.sub(x, y);
    }
    trim(out)
}

pub fn mul(f: &FieldCtx, a: &[Fq], b: &[Fq]) -> Poly {
    let (Some(da), Some(db)) = (degree(a), degree(b)) else {
        return Vec::new();
    };
    let mut out = vec![Fq::ZERO; da + db + 1];
    for i in 0..=da {
        if !a[i].is_zero() {
            f.axpy(&mut out[i..=i + db], a[i], &b[..=db]);
        }
    }
    trim(out)
}

pub fn scale(f: &FieldCtx, a: &[Fq], c: Fq) -> Poly {
    trim(a.iter().map(|&x| f.mul(x, c)).collect())
}

/// Quotient and remainder. Panics on division by zero.
pub fn divrem(f: &FieldCtx, a: &[Fq], b: &[Fq]) -> (Poly, Poly) {
    let db = degree(b).expect("division by the zero polynomial");
    let lead_inv = f.inv(b[db]).unwrap();
    let mut r = trim(a.to_vec());
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![Fq::ZERO; r.len() - db];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = f.mul(r[dr], lead_inv);
        let shift = dr - db;
        q[shift] = c;
        let negc = f.neg(c);
        f.axpy(&mut r[shift..=dr], negc, &b[..=db]);
        r.truncate(dr);
        r = trim(r);
    }
    (trim(q), r)
}

pub fn rem(f: &FieldCtx, a: &[Fq], b: &[Fq]) -> Poly {
    divrem(f, a, b).1
}

pub fn make_monic(f: &FieldCtx, a: &[Fq]) -> Poly {
    match degree(a) {
        None => Vec::new(),
        Some(d) => {
            let inv = f.inv(a[d]).unwrap();
            scale(f, a, inv)
        }
    }
}

/// Monic greatest common divisor.
pub fn gcd(f: &FieldCtx, a: &[Fq], b: &[Fq]) -> Poly {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while degree(&b).is_some() {
        let r = rem(f, &a, &b);
        a = b;
        b = r;
    }
    make_monic(f, &a)
}

pub fn derivative(f: &FieldCtx, a: &[Fq]) -> Poly {
    trim(a.iter().enumerate().skip(1).map(|(i, &c)| f.mul(c, f.from_i64(i as i64))).collect())
}

pub fn eval(f: &FieldCtx, a: &[Fq], x: Fq) -> Fq {
    let mut acc = Fq::ZERO;
    for &c in a.iter().rev() {
        acc = f.add(f.mul(acc, x), c);
    }
    acc
}

pub fn powmod(f: &FieldCtx, base: &[Fq], mut e: u64, m: &[Fq]) -> Poly {
    let mut result = rem(f, &[Fq::ONE], m);
    let mut b = rem(f, base, m);
    while e > 0 {
        if e & 1 == 1 {
            result = rem(f, &mul(f, &result, &b), m);
        }
        e >>= 1;
        if e > 0 {
            b = rem(f, &mul(f, &b, &b), m);
        }
    }
    result
}

/// p-th root of a polynomial whose derivative vanishes.
fn pth_root(f: &FieldCtx, a: &[Fq]) -> Poly {
    let p = f.p() as usize;
    trim(a.iter().step_by(p).map(|&c| f.frobenius_root(c)).collect())
}

/// Square-free factorization of a monic polynomial: pairs (g, m) with
/// a = Π g^m and each g square-free, pairwise coprime.
pub fn squarefree(f: &FieldCtx, a: &[Fq]) -> Vec<(Poly, usize)> {
    let a = make_monic(f, a);
    let mut out = Vec::new();
    if degree(&a).unwrap_or(0) == 0 {
        return out;
    }
    let da = derivative(f, &a);
    if degree(&da).is_none() {
        for (g, m) in squarefree(f, &pth_root(f, &a)) {
            out.push((g, m * f.p() as usize));
        }
        return out;
    }
    let mut c = gcd(f, &a, &da);
    let mut w = divrem(f, &a, &c).0;
    let mut i = 1;
    while !is_one(&w) {
        let y = gcd(f, &w, &c);
        let fac = divrem(f, &w, &y).0;
        if !is_one(&fac) {
            out.push((make_monic(f, &fac), i));
        }
        w = y;
        c = divrem(f, &c, &w).0;
        i += 1;
    }
    if !is_one(&c) {
        for (g, m) in squarefree(f, &pth_root(f, &c)) {
            out.push((g, m * f.p() as usize));
        }
    }
    out
}

/// Square-free part (radical) of a polynomial, monic.
pub fn radical(f: &FieldCtx, a: &[Fq]) -> Poly {
    let mut r = vec![Fq::ONE];
    for (g, _) in squarefree(f, a) {
        r = mul(f, &r, &g);
    }
    r
}

/// x^{q^d} mod m via repeated q-th powering.
fn frobenius_power_of_x(f: &FieldCtx, m: &[Fq], d: usize) -> Poly {
    let mut h = rem(f, &monomial(1), m);
    for _ in 0..d {
        h = powmod(f, &h, f.order() as u64, m);
    }
    h
}

/// Distinct-degree factorization of a monic square-free polynomial.
pub fn distinct_degree(f: &FieldCtx, a: &[Fq]) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    let mut rest = make_monic(f, a);
    let x = monomial(1);
    let mut h = rem(f, &x, &rest);
    let mut d = 0;
    while degree(&rest).unwrap_or(0) >= 2 * (d + 1) {
        d += 1;
        h = powmod(f, &h, f.order() as u64, &rest);
        let g = gcd(f, &sub(f, &h, &x), &rest);
        if !is_one(&g) {
            rest = divrem(f, &rest, &g).0;
            h = rem(f, &h, &rest);
            out.push((g, d));
        }
    }
    if degree(&rest).unwrap_or(0) > 0 {
        let dr = degree(&rest).unwrap();
        out.push((rest, dr));
    }
    out
}

/// Cantor–Zassenhaus splitting of a product of distinct irreducibles of degree d.
pub fn equal_degree<R: Rng + ?Sized>(f: &FieldCtx, a: &[Fq], d: usize, rng: &mut R) -> Vec<Poly> {
    let n = degree(a).unwrap_or(0);
    if n <= d {
        return vec![make_monic(f, a)];
    }
    let q = f.order() as u64;
    loop {
        let r: Poly = trim((0..n).map(|_| f.random(rng)).collect());
        if degree(&r).unwrap_or(0) == 0 {
            continue;
        }
        // r^{(q^d - 1)/2} = (r * r^q * ... * r^{q^{d-1}})^{(q-1)/2}
        let mut t = rem(f, &r, a);
        let mut cur = t.clone();
        for _ in 1..d {
            cur = powmod(f, &cur, q, a);
            t = rem(f, &mul(f, &t, &cur), a);
        }
        let b = powmod(f, &t, (q - 1) / 2, a);
        let g = gcd(f, &sub(f, &b, &[Fq::ONE]), a);
        let dg = degree(&g).unwrap_or(0);
        if dg > 0 && dg < n {
            let h = divrem(f, a, &g).0;
            let mut out = equal_degree(f, &g, d, rng);
            out.extend(equal_degree(f, &h, d, rng));
            return out;
        }
    }
}

/// Complete factorization into monic irreducibles with multiplicities,
/// sorted by (degree, coefficients).
pub fn factor<R: Rng + ?Sized>(f: &FieldCtx, a: &[Fq], rng: &mut R) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    for (g, m) in squarefree(f, a) {
        for (h, d) in distinct_degree(f, &g) {
            for irr in equal_degree(f, &h, d, rng) {
                out.push((irr, m));
            }
        }
    }
    out.sort_by(|x, y| (x.0.len(), &x.0).cmp(&(y.0.len(), &y.0)));
    out
}

/// Rabin's irreducibility test.
pub fn is_irreducible(f: &FieldCtx, a: &[Fq]) -> bool {
    let Some(n) = degree(a) else { return false };
    if n == 0 {
        return false;
    }
    let a = make_monic(f, a);
    let x = monomial(1);
    let h = frobenius_power_of_x(f, &a, n);
    if degree(&rem(f, &sub(f, &h, &x), &a)).is_some() {
        return false;
    }
    let mut m = n;
    let mut primes = Vec::new();
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            primes.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        primes.push(m);
    }
    primes.into_iter().all(|r| {
        let h = frobenius_power_of_x(f, &a, n / r);
        is_one(&gcd(f, &a, &sub(f, &h, &x)))
    })
}

/// Roots in the field, by exhaustive evaluation.
pub fn roots(f: &FieldCtx, a: &[Fq]) -> Vec<Fq> {
    f.elements().filter(|&x| eval(f, a, x).is_zero()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::field::FieldCtx;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn from_ints(f: &FieldCtx, v: &[i64]) -> Poly {
        trim(v.iter().map(|&x| f.from_i64(x)).collect())
    }

    #[test]
    fn division_identity() {
        let f = FieldCtx::new(5, 1).unwrap();
        let a = from_ints(&f, &[1, 2, 3, 4, 1]);
        let b = from_ints(&f, &[2, 0, 1]);
        let (q, r) = divrem(&f, &a, &b);
        assert_eq!(add(&f, &mul(&f, &q, &b), &r), a);
        assert!(r.len() < b.len());
    }

    #[test]
    fn factorization_reconstructs() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for (p, k) in [(3, 1), (5, 1), (3, 2), (7, 1)] {
            let f = FieldCtx::new(p, k).unwrap();
            for _ in 0..20 {
                let n = rng.gen_range(1..12);
                let mut a: Poly = (0..n).map(|_| f.random(&mut rng)).collect();
                a.push(Fq::ONE);
                // Force repeated and p-th power factors sometimes.
                let a = if rng.gen_bool(0.5) { mul(&f, &a, &a) } else { a };
                let facs = factor(&f, &a, &mut rng);
                let mut prod = vec![Fq::ONE];
                for (g, m) in &facs {
                    assert!(is_irreducible(&f, g), "{g:?} not irreducible");
                    for _ in 0..*m {
                        prod = mul(&f, &prod, g);
                    }
                }
                assert_eq!(prod, make_monic(&f, &a));
            }
        }
    }

    #[test]
    fn pth_power_squarefree() {
        let f = FieldCtx::new(3, 1).unwrap();
        // (x+1)^3 (x+2) has derivative with a p-th power part.
        let xp1 = from_ints(&f, &[1, 1]);
        let xp2 = from_ints(&f, &[2, 1]);
        let a = mul(&f, &mul(&f, &mul(&f, &xp1, &xp1), &xp1), &xp2);
        let sq = squarefree(&f, &a);
        assert!(sq.contains(&(xp1.clone(), 3)));
        assert!(sq.contains(&(xp2.clone(), 1)));
        assert_eq!(radical(&f, &a), mul(&f, &xp1, &xp2));
    }

    #[test]
    fn irreducibility_agrees_with_root_search_in_low_degree() {
        let f = FieldCtx::new(5, 1).unwrap();
        for c0 in 0..5 {
            for c1 in 0..5 {
                let a = from_ints(&f, &[c0, c1, 1]);
                assert_eq!(is_irreducible(&f, &a), roots(&f, &a).is_empty());
            }
        }
    }
}
