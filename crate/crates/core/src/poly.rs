//! Dense univariate polynomials over ℚ and ℤ with irreducible factorization
//! over ℚ (Zassenhaus: factor modulo a prime, Hensel-lift, recombine).

use crate::numbers::Rational;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt;

/// Polynomial with rational coefficients, lowest degree first, no trailing
/// zeros. The zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QPoly {
    coeffs: Vec<Rational>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(
            c.iter()
                .map(|&x| Rational::from_integer(x.into()))
                .collect(),
        )
    }

    pub fn from_bigints(c: &[BigInt]) -> Self {
        Self::new(
            c.iter()
                .map(|x| Rational::from_integer(x.clone()))
                .collect(),
        )
    }

    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `x`.
    pub fn x() -> Self {
        Self::from_ints(&[0, 1])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lc = d.leading();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![Rational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] / &lc;
            if !c.is_zero() {
                for (j, b) in d.coeffs.iter().enumerate() {
                    r[k + j] -= &c * b;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    pub fn divides(&self, f: &Self) -> bool {
        f.div_rem(self).1.is_zero()
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let lc = self.leading();
        self.scale(&(Rational::one() / lc))
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(i.into()))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// `(c, g)` with `self = c·g`, `g` integral, primitive, positive leading
    /// coefficient.
    pub fn primitive_part(&self) -> (Rational, Vec<BigInt>) {
        if self.is_zero() {
            return (Rational::zero(), Vec::new());
        }
        let den = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(den.clone())).to_integer())
            .collect();
        let mut g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if ints.last().unwrap().is_negative() {
            g = -g;
        }
        let prim: Vec<BigInt> = ints.iter().map(|c| c / &g).collect();
        (Rational::new(g, den), prim)
    }

    /// Yun's squarefree decomposition: monic `a_i` with `self = lc·Π a_i^i`.
    pub fn squarefree_decomposition(&self) -> Vec<(QPoly, usize)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.div_rem(&a0).0;
        let mut c = df.div_rem(&a0).0;
        let mut d = c.sub(&b.derivative());
        let mut i = 1;
        while b.degree().unwrap_or(0) > 0 {
            let a = b.gcd(&d);
            b = b.div_rem(&a).0;
            c = d.div_rem(&a).0;
            if a.degree().unwrap_or(0) > 0 {
                out.push((a, i));
            }
            d = c.sub(&b.derivative());
            i += 1;
        }
        out
    }

    /// Irreducible factors over ℚ as primitive integer polynomials with
    /// positive leading coefficient, with multiplicities, sorted; plus the
    /// constant `c` making the product equal to `self`.
    pub fn factor(&self) -> (Rational, Vec<(Vec<BigInt>, usize)>) {
        if self.is_zero() {
            return (Rational::zero(), Vec::new());
        }
        let mut factors = Vec::new();
        for (part, mult) in self.squarefree_decomposition() {
            let (_, prim) = part.primitive_part();
            for g in factor_squarefree(&prim) {
                factors.push((g, mult));
            }
        }
        factors.sort_by(|a, b| (a.0.len(), &a.0, a.1).cmp(&(b.0.len(), &b.0, b.1)));
        let mut prod = QPoly::one();
        for (g, m) in &factors {
            prod = prod.mul(&QPoly::from_bigints(g).pow(*m));
        }
        let c = self.leading() / prod.leading();
        (c, factors)
    }

    /// Rational roots, each once, sorted.
    pub fn rational_roots(&self) -> Vec<Rational> {
        let mut roots: Vec<Rational> = self
            .factor()
            .1
            .into_iter()
            .filter(|(g, _)| g.len() == 2)
            .map(|(g, _)| Rational::new(-g[0].clone(), g[1].clone()))
            .collect();
        roots.sort();
        roots
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Irreducible factors of a squarefree primitive integer polynomial of
/// positive degree, each with positive leading coefficient.
fn factor_squarefree(f: &[BigInt]) -> Vec<Vec<BigInt>> {
    let n = f.len() - 1;
    if n == 1 {
        return vec![f.to_vec()];
    }
    let p = choose_prime(f);
    let fp = zp::reduce(f, p);
    let lc_inv = zp::inv(fp[n], p);
    let fp_monic = zp::scale(&fp, lc_inv, p);
    let modular = zp::factor_monic(&fp_monic, p);
    if modular.len() == 1 {
        return vec![f.to_vec()];
    }
    let bound = coefficient_bound(f);
    let pb = BigInt::from(p);
    let mut modulus = pb.clone();
    let mut k = 1;
    while modulus <= bound {
        modulus *= &pb;
        k += 1;
    }
    let lifted = hensel_lift_all(f, &modular, p, k);
    recombine(f, lifted, &modulus)
}

fn choose_prime(f: &[BigInt]) -> u64 {
    let n = f.len() - 1;
    let mut p = 3u64;
    loop {
        if is_prime(p) && !(&f[n] % BigInt::from(p)).is_zero() {
            let fp = zp::reduce(f, p);
            let d = zp::derivative(&fp, p);
            if zp::degree(&zp::gcd(&fp, &d, p)) == Some(0) {
                return p;
            }
        }
        p += 2;
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Twice a Mignotte-type bound on coefficients of `lc·g` for factors `g`.
fn coefficient_bound(f: &[BigInt]) -> BigInt {
    let n = f.len() - 1;
    let norm_sq: BigInt = f.iter().map(|c| c * c).sum();
    let norm = norm_sq.sqrt() + 1;
    let lc = f[n].abs();
    BigInt::from(2) * (BigInt::one() << n) * norm * lc
}

/// Lifts the monic factorization `lc⁻¹ f ≡ Π g_i (mod p)` to `mod p^k`.
fn hensel_lift_all(f: &[BigInt], factors: &[Vec<u64>], p: u64, k: u32) -> Vec<Vec<BigInt>> {
    let modulus = BigInt::from(p).pow(k);
    let n = f.len() - 1;
    let lc_inv = f[n].extended_gcd(&modulus).x.mod_floor(&modulus);
    let mut target: Vec<BigInt> = f
        .iter()
        .map(|c| (c * &lc_inv).mod_floor(&modulus))
        .collect();
    let mut out = Vec::new();
    let mut rest: Vec<Vec<u64>> = factors.to_vec();
    while rest.len() > 1 {
        let g0 = rest.remove(0);
        let h0 = rest.iter().fold(vec![1u64], |acc, h| zp::mul(&acc, h, p));
        let (g, h) = hensel_lift_pair(&target, &g0, &h0, p, k);
        out.push(g);
        target = h;
    }
    out.push(target);
    out
}

/// Linear Hensel lifting of `f ≡ g·h (mod p)` with `f, g, h` monic.
fn hensel_lift_pair(
    f: &[BigInt],
    g0: &[u64],
    h0: &[u64],
    p: u64,
    k: u32,
) -> (Vec<BigInt>, Vec<BigInt>) {
    let (s, t) = zp::bezout(g0, h0, p);
    let mut g: Vec<BigInt> = g0.iter().map(|&c| BigInt::from(c)).collect();
    let mut h: Vec<BigInt> = h0.iter().map(|&c| BigInt::from(c)).collect();
    let pb = BigInt::from(p);
    let mut pj = pb.clone();
    for _ in 1..k {
        let gh = zmul(&g, &h);
        let diff: Vec<BigInt> = (0..f.len())
            .map(|i| f.get(i).cloned().unwrap_or_default() - gh.get(i).cloned().unwrap_or_default())
            .collect();
        let e: Vec<u64> = zp::trim(
            diff.iter()
                .map(|c| (c / &pj).mod_floor(&pb).to_u64().unwrap())
                .collect(),
        );
        let es = zp::mul(&e, &s, p);
        let (q, dh) = zp::div_rem(&es, h0, p);
        let dg = zp::add(&zp::mul(&e, &t, p), &zp::mul(&q, g0, p), p);
        for (i, c) in dg.iter().enumerate() {
            g[i] += &pj * c;
        }
        for (i, c) in dh.iter().enumerate() {
            h[i] += &pj * c;
        }
        pj *= &pb;
    }
    let m = pj;
    let g = g.into_iter().map(|c| c.mod_floor(&m)).collect();
    let h = h.into_iter().map(|c| c.mod_floor(&m)).collect();
    (g, h)
}

fn zmul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn symmetric(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

fn recombine(f: &[BigInt], mut lifted: Vec<Vec<BigInt>>, m: &BigInt) -> Vec<Vec<BigInt>> {
    let mut out = Vec::new();
    let mut current = QPoly::from_bigints(f);
    let mut size = 1;
    while 2 * size <= lifted.len() {
        let mut found = false;
        for subset in itertools::Itertools::combinations(0..lifted.len(), size) {
            let lc_cur = current.primitive_part().1.last().cloned().unwrap();
            let mut g = vec![lc_cur.clone()];
            for &i in &subset {
                g = zmul(&g, &lifted[i])
                    .iter()
                    .map(|c| c.mod_floor(m))
                    .collect();
            }
            let g: Vec<BigInt> = g.iter().map(|c| symmetric(c, m)).collect();
            let (_, prim) = QPoly::from_bigints(&g).primitive_part();
            let cand = QPoly::from_bigints(&prim);
            if cand.degree().unwrap_or(0) > 0 && cand.divides(&current) {
                out.push(prim);
                current = current.div_rem(&cand).0;
                let mut keep = Vec::new();
                for (i, l) in lifted.into_iter().enumerate() {
                    if !subset.contains(&i) {
                        keep.push(l);
                    }
                }
                lifted = keep;
                found = true;
                break;
            }
        }
        if !found {
            size += 1;
        }
    }
    let (_, rest) = current.primitive_part();
    if rest.len() > 1 {
        out.push(rest);
    }
    out
}

/// Arithmetic in `F_p[x]`, coefficient vectors lowest degree first.
mod zp {
    use super::*;

    pub fn trim(mut v: Vec<u64>) -> Vec<u64> {
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }

    pub fn degree(a: &[u64]) -> Option<usize> {
        a.len().checked_sub(1)
    }

    pub fn reduce(f: &[BigInt], p: u64) -> Vec<u64> {
        let pb = BigInt::from(p);
        trim(
            f.iter()
                .map(|c| c.mod_floor(&pb).to_u64().unwrap())
                .collect(),
        )
    }

    pub fn inv(a: u64, p: u64) -> u64 {
        pow_mod(a, p - 2, p)
    }

    fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
        let mut r = 1u64;
        a %= p;
        while e > 0 {
            if e & 1 == 1 {
                r = r * a % p;
            }
            a = a * a % p;
            e >>= 1;
        }
        r
    }

    pub fn scale(a: &[u64], c: u64, p: u64) -> Vec<u64> {
        trim(a.iter().map(|x| x * c % p).collect())
    }

    pub fn add(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        trim(
            (0..n)
                .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p)
                .collect(),
        )
    }

    pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        trim(
            (0..n)
                .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p)
                .collect(),
        )
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        trim(out)
    }

    pub fn div_rem(a: &[u64], d: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
        let dd = d.len() - 1;
        let li = inv(d[dd], p);
        let mut r = a.to_vec();
        if r.len() <= dd {
            return (Vec::new(), trim(r));
        }
        let mut q = vec![0u64; r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = r[k + dd] * li % p;
            if c != 0 {
                for (j, b) in d.iter().enumerate() {
                    r[k + j] = (r[k + j] + p - c * b % p) % p;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (trim(q), trim(r))
    }

    pub fn monic(a: &[u64], p: u64) -> Vec<u64> {
        match a.last() {
            None => Vec::new(),
            Some(&l) => scale(a, inv(l, p), p),
        }
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
        while !b.is_empty() {
            let r = div_rem(&a, &b, p).1;
            a = b;
            b = r;
        }
        monic(&a, p)
    }

    /// `(s, t)` with `s·g + t·h = 1` for coprime `g, h`.
    pub fn bezout(g: &[u64], h: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
        let (mut r0, mut r1) = (g.to_vec(), h.to_vec());
        let (mut s0, mut s1) = (vec![1u64], Vec::new());
        let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
        while !r1.is_empty() {
            let (q, r) = div_rem(&r0, &r1, p);
            let s2 = sub(&s0, &mul(&q, &s1, p), p);
            let t2 = sub(&t0, &mul(&q, &t1, p), p);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
            t0 = t1;
            t1 = t2;
        }
        let c = inv(r0[0], p);
        (scale(&s0, c, p), scale(&t0, c, p))
    }

    pub fn derivative(a: &[u64], p: u64) -> Vec<u64> {
        trim(
            a.iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| (i as u64 % p) * c % p)
                .collect(),
        )
    }

    fn pow_poly(base: &[u64], e: &BigInt, m: &[u64], p: u64) -> Vec<u64> {
        let mut result = vec![1u64];
        let mut b = div_rem(base, m, p).1;
        let bits = e.bits();
        for i in 0..bits {
            if e.bit(i) {
                result = div_rem(&mul(&result, &b, p), m, p).1;
            }
            b = div_rem(&mul(&b, &b, p), m, p).1;
        }
        result
    }

    /// Monic irreducible factors of a monic squarefree polynomial, sorted.
    pub fn factor_monic(f: &[u64], p: u64) -> Vec<Vec<u64>> {
        let mut out = Vec::new();
        let mut rest = f.to_vec();
        let x = vec![0u64, 1];
        let mut h = x.clone();
        let mut d = 1usize;
        let pb = BigInt::from(p);
        while degree(&rest).unwrap_or(0) >= 2 * d {
            h = pow_poly(&h, &pb, &rest, p);
            let g = gcd(&sub(&h, &x, p), &rest, p);
            if degree(&g).unwrap_or(0) > 0 {
                out.extend(equal_degree(&g, d, p));
                rest = div_rem(&rest, &g, p).0;
                h = div_rem(&h, &rest, p).1;
            }
            d += 1;
        }
        if degree(&rest).unwrap_or(0) > 0 {
            out.push(rest);
        }
        out.sort();
        out
    }

    fn equal_degree(f: &[u64], d: usize, p: u64) -> Vec<Vec<u64>> {
        let n = degree(f).unwrap();
        if n == d {
            return vec![f.to_vec()];
        }
        let mut rng = ChaCha8Rng::seed_from_u64(p ^ (n as u64) << 32);
        let e = (BigInt::from(p).pow(d as u32) - 1) / 2;
        loop {
            let a: Vec<u64> = trim((0..n).map(|_| rng.random_range(0..p)).collect());
            if degree(&a).unwrap_or(0) == 0 {
                continue;
            }
            let b = sub(&pow_poly(&a, &e, f, p), &[1], p);
            let g = gcd(&b, f, p);
            let dg = degree(&g).unwrap_or(0);
            if dg > 0 && dg < n {
                let mut out = equal_degree(&g, d, p);
                out.extend(equal_degree(&div_rem(f, &g, p).0, d, p));
                return out;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::{ivec, rat};
    use proptest::prelude::*;

    fn expand(c: &Rational, factors: &[(Vec<BigInt>, usize)]) -> QPoly {
        factors
            .iter()
            .fold(QPoly::constant(c.clone()), |acc, (g, m)| {
                acc.mul(&QPoly::from_bigints(g).pow(*m))
            })
    }

    #[test]
    fn arithmetic() {
        let f = QPoly::from_ints(&[-1, 0, 1]);
        let g = QPoly::from_ints(&[1, 1]);
        let (q, r) = f.div_rem(&g);
        assert_eq!(q, QPoly::from_ints(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(f.gcd(&QPoly::from_ints(&[1, 2, 1])), g);
        assert_eq!(f.eval(&rat(1, 2)), rat(-3, 4));
        assert_eq!(QPoly::from_ints(&[0, 0, 0]).degree(), None);
    }

    #[test]
    fn squarefree() {
        let f = QPoly::from_ints(&[1, 1])
            .pow(3)
            .mul(&QPoly::from_ints(&[-2, 1]));
        let sq = f.squarefree_decomposition();
        assert_eq!(
            sq,
            vec![
                (QPoly::from_ints(&[-2, 1]), 1),
                (QPoly::from_ints(&[1, 1]), 3)
            ]
        );
    }

    #[test]
    fn factor_examples() {
        let f = QPoly::from_ints(&[-1, 0, 0, 0, 1]);
        let (c, fs) = f.factor();
        assert_eq!(c, rat(1, 1));
        assert_eq!(
            fs,
            vec![
                (ivec(&[-1, 1]), 1),
                (ivec(&[1, 1]), 1),
                (ivec(&[1, 0, 1]), 1)
            ]
        );

        let swinnerton_dyer = QPoly::from_ints(&[1, 0, -10, 0, 1]);
        assert_eq!(swinnerton_dyer.factor().1.len(), 1);

        let g = QPoly::from_ints(&[3, 0, -2])
            .mul(&QPoly::from_ints(&[-1, 0, 0, 2]))
            .scale(&rat(5, 7));
        let (c, fs) = g.factor();
        assert_eq!(fs.len(), 2);
        assert_eq!(expand(&c, &fs), g);

        let h = QPoly::from_ints(&[1, 0, 0, 0, 1])
            .mul(&QPoly::from_ints(&[-2, 0, 1]))
            .mul(&QPoly::from_ints(&[1, 3]))
            .mul(&QPoly::from_ints(&[7, 0, 0, 1]));
        let (c, fs) = h.factor();
        let degrees: Vec<usize> = fs.iter().map(|(g, _)| g.len() - 1).collect();
        assert_eq!(degrees, vec![1, 2, 3, 4]);
        assert_eq!(expand(&c, &fs), h);

        assert_eq!(
            QPoly::from_ints(&[6, -5, 1]).rational_roots(),
            vec![rat(2, 1), rat(3, 1)]
        );
        assert_eq!(QPoly::from_ints(&[-1, 2]).rational_roots(), vec![rat(1, 2)]);
    }

    /// Rational roots with multiplicity by the rational root theorem.
    fn brute_force_root_count(f: &QPoly) -> usize {
        let (_, g) = f.primitive_part();
        let mut g = QPoly::from_bigints(&g);
        let mut count = 0;
        while g.coeff(0).is_zero() && !g.is_zero() {
            g = g.div_rem(&QPoly::x()).0;
            count += 1;
        }
        let (_, ints) = g.primitive_part();
        let a0 = ints[0].abs();
        let an = ints.last().unwrap().abs();
        let divisors = |n: &BigInt| -> Vec<BigInt> {
            let n = n.to_i64().unwrap();
            (1..=n).filter(|d| n % d == 0).map(BigInt::from).collect()
        };
        for p in divisors(&a0) {
            for q in divisors(&an) {
                if !p.gcd(&q).is_one() {
                    continue;
                }
                for sign in [1, -1] {
                    let r = Rational::new(&p * sign, q.clone());
                    let lin = QPoly::new(vec![-r.clone(), Rational::one()]);
                    while lin.divides(&g) {
                        g = g.div_rem(&lin).0;
                        count += 1;
                    }
                }
            }
        }
        count
    }

    proptest! {
        #[test]
        fn factorization_matches_root_oracle(
            roots in proptest::collection::vec((-6i64..6, 1i64..4), 0..4),
            quad in proptest::collection::vec((1i64..5, -3i64..3), 0..2),
            lead in 1i64..5,
        ) {
            let mut f = QPoly::constant(rat(lead, 1));
            for (a, b) in &roots {
                f = f.mul(&QPoly::from_ints(&[-a, *b]));
            }
            for (a, b) in &quad {
                f = f.mul(&QPoly::from_ints(&[*a, *b, 1]).mul(&QPoly::from_ints(&[*a, -*b, 1])));
            }
            let (c, fs) = f.factor();
            prop_assert_eq!(expand(&c, &fs), f.clone());
            let linear: usize = fs.iter().filter(|(g, _)| g.len() == 2).map(|(_, m)| m).sum();
            prop_assert_eq!(linear, brute_force_root_count(&f));
            for (g, _) in &fs {
                prop_assert!(g.last().unwrap().is_positive());
                if g.len() == 3 {
                    let disc = &g[1] * &g[1] - BigInt::from(4) * &g[0] * &g[2];
                    prop_assert!(disc.is_negative() || disc.sqrt().pow(2) != disc);
                }
            }
        }
    }
}
