//! Deterministic construction of GF(p^f) with dense exp/dlog tables.
//!
//! Elements are stored as packed base-`p` codes: the element
//! `c0 + c1*x + ... + c_{f-1}*x^{f-1}` (mod the modulus polynomial) has code
//! `c0 + c1*p + ... + c_{f-1}*p^{f-1}`.  The modulus is the lexicographically
//! smallest monic polynomial (coefficients compared low-degree-first) that is
//! irreducible and whose root `x` generates the multiplicative group; that
//! root is the canonical primitive element `omega`.

use crate::error::{Error, Result};

/// Table budget: fields larger than this are rejected.
pub const MAX_Q: u64 = 1 << 26;

/// Packed element code. Zero is the field zero.
pub type Elem = u32;

/// Validated field parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FieldParams {
    pub p: u64,
    pub f: u32,
    pub q: u64,
}

impl FieldParams {
    pub fn new(p: u64, f: u32) -> Result<Self> {
        if p < 3 || !is_prime(p) {
            return Err(Error::NotAnOddPrime(p));
        }
        let mut q: u64 = 1;
        for _ in 0..f {
            q = q.checked_mul(p).ok_or(Error::FieldTooLarge { q: u64::MAX })?;
            if q > MAX_Q {
                return Err(Error::FieldTooLarge { q });
            }
        }
        if f == 0 {
            return Err(Error::Hypothesis("f must be positive".into()));
        }
        Ok(FieldParams { p, f, q })
    }
}

/// A fully materialized GF(p^f).
pub struct FieldCtx {
    pub params: FieldParams,
    /// Monic modulus polynomial, length `f + 1`, low-degree-first.
    pub modulus: Vec<u64>,
    /// The canonical primitive element (a root of the modulus).
    pub omega: Elem,
    exp: Vec<Elem>,
    dlog: Vec<u32>,
}

const DLOG_NONE: u32 = u32::MAX;

impl FieldCtx {
    /// Builds the deterministic field model for the given parameters.
    pub fn build(params: FieldParams) -> Result<Self> {
        let (p, f, q) = (params.p, params.f, params.q);
        if f == 1 {
            // Modulus x + c; the root is -c, which must be a primitive root mod p.
            for c in 0..p {
                let g = (p - c) % p;
                if g == 0 || !is_primitive_root(g, p) {
                    continue;
                }
                let (exp, dlog) = prime_field_tables(g, p);
                return Ok(FieldCtx {
                    params,
                    modulus: vec![c, 1],
                    omega: g as Elem,
                    exp,
                    dlog,
                });
            }
            unreachable!("every prime field has a primitive root");
        }
        let factors_q1 = prime_factors(q - 1);
        let factors_f = prime_factors(f as u64);
        // Lexicographic scan over (c0, c1, ..., c_{f-1}), c0 most significant.
        let mut coeffs = vec![0u64; f as usize];
        loop {
            let mut modulus = coeffs.clone();
            modulus.push(1);
            if poly_is_irreducible(&modulus, p, f, &factors_f)
                && root_is_primitive(&modulus, p, q, &factors_q1)
            {
                let (exp, dlog) = extension_field_tables(&modulus, p, f, q);
                let omega = exp[1];
                return Ok(FieldCtx {
                    params,
                    modulus,
                    omega,
                    exp,
                    dlog,
                });
            }
            // Increment the tuple: the last coordinate varies fastest.
            let mut i = f as usize;
            loop {
                if i == 0 {
                    return Err(Error::Hypothesis(
                        "no primitive irreducible polynomial found".into(),
                    ));
                }
                i -= 1;
                coeffs[i] += 1;
                if coeffs[i] < p {
                    break;
                }
                coeffs[i] = 0;
            }
        }
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.params.p
    }

    #[inline]
    pub fn q(&self) -> u64 {
        self.params.q
    }

    /// omega^k for 0 <= k < q-1 (k reduced mod q-1).
    #[inline]
    pub fn exp(&self, k: u64) -> Elem {
        self.exp[(k % (self.q() - 1)) as usize]
    }

    /// Discrete log of a nonzero element.
    #[inline]
    pub fn dlog(&self, x: Elem) -> Result<u64> {
        let d = self.dlog[x as usize];
        if d == DLOG_NONE {
            Err(Error::DlogOfZero)
        } else {
            Ok(d as u64)
        }
    }

    /// Packs coefficient vector (low-degree-first, length f) into a code.
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Elem {
        let p = self.p();
        let mut code: u64 = 0;
        for &c in coeffs.iter().rev() {
            code = code * p + c % p;
        }
        code as Elem
    }

    /// Unpacks a code into its coefficient vector (length f).
    pub fn coeffs(&self, x: Elem) -> Vec<u64> {
        let p = self.p();
        let mut code = x as u64;
        (0..self.params.f)
            .map(|_| {
                let c = code % p;
                code /= p;
                c
            })
            .collect()
    }

    /// Embeds a prime-subfield scalar as a constant polynomial.
    #[inline]
    pub fn embed_scalar(&self, c: u64) -> Elem {
        (c % self.p()) as Elem
    }

    #[inline]
    pub fn add(&self, x: Elem, y: Elem) -> Elem {
        let p = self.p();
        let (mut a, mut b) = (x as u64, y as u64);
        let mut out: u64 = 0;
        let mut place: u64 = 1;
        for _ in 0..self.params.f {
            out += (a % p + b % p) % p * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out as Elem
    }

    #[inline]
    pub fn neg(&self, x: Elem) -> Elem {
        let p = self.p();
        let mut a = x as u64;
        let mut out: u64 = 0;
        let mut place: u64 = 1;
        for _ in 0..self.params.f {
            out += (p - a % p) % p * place;
            a /= p;
            place *= p;
        }
        out as Elem
    }

    #[inline]
    pub fn sub(&self, x: Elem, y: Elem) -> Elem {
        self.add(x, self.neg(y))
    }

    /// Multiplies by a prime-subfield scalar.
    #[inline]
    pub fn scale(&self, x: Elem, c: u64) -> Elem {
        let p = self.p();
        let c = c % p;
        let mut a = x as u64;
        let mut out: u64 = 0;
        let mut place: u64 = 1;
        for _ in 0..self.params.f {
            out += a % p * c % p * place;
            a /= p;
            place *= p;
        }
        out as Elem
    }

    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        if x == 0 || y == 0 {
            return 0;
        }
        let k = self.dlog[x as usize] as u64 + self.dlog[y as usize] as u64;
        self.exp(k)
    }

    pub fn inv(&self, x: Elem) -> Result<Elem> {
        if x == 0 {
            return Err(Error::InverseOfZero);
        }
        let k = self.dlog[x as usize] as u64;
        Ok(self.exp(((self.q() - 1) - k) % (self.q() - 1)))
    }

    pub fn pow(&self, x: Elem, e: u64) -> Elem {
        if x == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let k = self.dlog[x as usize] as u64;
        // k * e can overflow u64 for large e; reduce via u128.
        let k = ((k as u128 * e as u128) % (self.q() - 1) as u128) as u64;
        self.exp(k)
    }

    /// Tr_{q/p}(x) = sum of x^{p^j} over 0 <= j < f, as a residue mod p.
    pub fn trace_to_prime(&self, x: Elem) -> u64 {
        if x == 0 {
            return 0;
        }
        let (p, q1) = (self.p(), self.q() - 1);
        let k = self.dlog[x as usize] as u64;
        let mut acc: Elem = 0;
        let mut pj: u64 = 1;
        for _ in 0..self.params.f {
            acc = self.add(acc, self.exp(((k as u128 * pj as u128) % q1 as u128) as u64));
            pj = pj * p % q1;
        }
        let coeffs = self.coeffs(acc);
        debug_assert!(coeffs[1..].iter().all(|&c| c == 0), "trace must be scalar");
        coeffs[0]
    }

    /// Norm from this field down to a subfield of degree dividing ours,
    /// under the embedding small_omega = big_omega^((q_big-1)/(q_small-1)).
    pub fn norm_to_subfield(&self, small: &FieldCtx, x: Elem) -> Result<Elem> {
        if self.p() != small.p() || self.params.f % small.params.f != 0 {
            return Err(Error::IncompatibleDegrees {
                small: small.params.f,
                big: self.params.f,
            });
        }
        if x == 0 {
            return Ok(0);
        }
        let s_idx = (self.q() - 1) / (small.q() - 1);
        let k = self.dlog[x as usize] as u64;
        let kn = ((k as u128 * s_idx as u128) % (self.q() - 1) as u128) as u64;
        debug_assert_eq!(kn % s_idx, 0);
        Ok(small.exp(kn / s_idx))
    }

    /// Rebuilds the context on the same modulus with primitive element
    /// omega^u (requires gcd(u, q-1) = 1): the table relabeling that models
    /// an alternative choice of primitive element.
    pub fn rebase(&self, u: u64) -> Result<FieldCtx> {
        let q1 = self.q() - 1;
        if gcd(u % q1, q1) != 1 {
            return Err(Error::NotCoprime { a: u % q1, n: q1 });
        }
        let mut exp = vec![0 as Elem; q1 as usize];
        let mut dlog = vec![DLOG_NONE; self.q() as usize];
        for k in 0..q1 {
            let x = self.exp(((k as u128 * u as u128) % q1 as u128) as u64);
            exp[k as usize] = x;
            dlog[x as usize] = k as u32;
        }
        Ok(FieldCtx {
            params: self.params,
            modulus: self.modulus.clone(),
            omega: exp[1],
            exp,
            dlog,
        })
    }

    /// All nonzero elements in exponent order.
    pub fn nonzero_elements(&self) -> &[Elem] {
        &self.exp
    }
}

fn prime_field_tables(g: u64, p: u64) -> (Vec<Elem>, Vec<u32>) {
    let mut exp = vec![0 as Elem; (p - 1) as usize];
    let mut dlog = vec![DLOG_NONE; p as usize];
    let mut cur: u64 = 1;
    for k in 0..(p - 1) {
        exp[k as usize] = cur as Elem;
        dlog[cur as usize] = k as u32;
        cur = cur * g % p;
    }
    (exp, dlog)
}

fn extension_field_tables(modulus: &[u64], p: u64, f: u32, q: u64) -> (Vec<Elem>, Vec<u32>) {
    let mut exp = vec![0 as Elem; (q - 1) as usize];
    let mut dlog = vec![DLOG_NONE; q as usize];
    let mut cur = vec![0u64; f as usize];
    cur[0] = 1;
    for k in 0..(q - 1) {
        let mut code: u64 = 0;
        for &c in cur.iter().rev() {
            code = code * p + c;
        }
        exp[k as usize] = code as Elem;
        dlog[code as usize] = k as u32;
        // Multiply by x modulo the modulus.
        let top = cur[f as usize - 1];
        for i in (1..f as usize).rev() {
            cur[i] = cur[i - 1];
        }
        cur[0] = 0;
        if top != 0 {
            for i in 0..f as usize {
                cur[i] = (cur[i] + (p - top * modulus[i] % p)) % p;
            }
        }
    }
    (exp, dlog)
}

// ----- polynomial arithmetic over Z/p (low-degree-first vectors) -----

fn poly_mul_mod(a: &[u64], b: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
    let f = modulus.len() - 1;
    let mut res = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            res[i + j] = (res[i + j] + ai * bj) % p;
        }
    }
    for i in (f..res.len()).rev() {
        let c = res[i];
        if c != 0 {
            res[i] = 0;
            for j in 0..f {
                res[i - f + j] = (res[i - f + j] + (p - c * modulus[j] % p) % p) % p;
            }
        }
    }
    res.truncate(f);
    res.resize(f, 0);
    res
}

/// x^e mod (modulus) over Z/p.
fn poly_pow_x(e: u64, modulus: &[u64], p: u64) -> Vec<u64> {
    let f = modulus.len() - 1;
    let mut result = vec![0u64; f];
    result[0] = 1;
    let mut base = vec![0u64; f];
    if f >= 2 {
        base[1] = 1;
    } else {
        base[0] = (p - modulus[0] % p) % p;
    }
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            result = poly_mul_mod(&result, &base, modulus, p);
        }
        base = poly_mul_mod(&base, &base, modulus, p);
        e >>= 1;
    }
    result
}

fn poly_deg(v: &[u64]) -> Option<usize> {
    v.iter().rposition(|&c| c != 0)
}

fn poly_gcd(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    loop {
        let Some(db) = poly_deg(&b) else { return a };
        let da = match poly_deg(&a) {
            Some(d) if d >= db => d,
            _ => {
                std::mem::swap(&mut a, &mut b);
                continue;
            }
        };
        let inv = mod_pow(b[db], p - 2, p);
        let c = a[da] * inv % p;
        for j in 0..=db {
            a[da - db + j] = (a[da - db + j] + (p - c * b[j] % p) % p) % p;
        }
    }
}

/// Irreducibility over Z/p: x^{p^f} = x mod poly, and
/// gcd(x^{p^{f/r}} - x, poly) = 1 for every prime r | f.
///
/// The gcd step is essential: the weaker test x^{p^{f/r}} != x admits
/// composites whose factor degrees all divide f (e.g. degrees {1,2,3} at f=6).
fn poly_is_irreducible(modulus: &[u64], p: u64, f: u32, factors_f: &[u64]) -> bool {
    if modulus[0] == 0 {
        return false; // divisible by x
    }
    let xq = poly_pow_x(pow_u64(p, f), modulus, p);
    let deg = modulus.len() - 1;
    let mut x_poly = vec![0u64; deg];
    if deg >= 2 {
        x_poly[1] = 1;
    } else {
        x_poly[0] = (p - modulus[0] % p) % p;
    }
    if xq != x_poly {
        return false;
    }
    for &r in factors_f {
        let xd = poly_pow_x(pow_u64(p, f / r as u32), modulus, p);
        let diff: Vec<u64> = xd
            .iter()
            .zip(&x_poly)
            .map(|(&a, &b)| (a + p - b) % p)
            .collect();
        let g = poly_gcd(modulus.to_vec(), diff, p);
        if poly_deg(&g) != Some(0) {
            return false;
        }
    }
    true
}

/// Checks that the root x of the (irreducible) modulus has order q - 1.
fn root_is_primitive(modulus: &[u64], p: u64, q: u64, factors_q1: &[u64]) -> bool {
    let f = modulus.len() - 1;
    let mut one = vec![0u64; f];
    one[0] = 1;
    factors_q1
        .iter()
        .all(|&r| poly_pow_x((q - 1) / r, modulus, p) != one)
}

// ----- integer helpers -----

pub fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn mod_pow(mut base: u64, mut e: u64, m: u64) -> u64 {
    let mut acc: u64 = 1 % m;
    base %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * base as u128 % m as u128) as u64;
        }
        base = (base as u128 * base as u128 % m as u128) as u64;
        e >>= 1;
    }
    acc
}

pub fn mod_inv(a: u64, m: u64) -> Result<u64> {
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let quot = old_r / r;
        (old_r, r) = (r, old_r - quot * r);
        (old_s, s) = (s, old_s - quot * s);
    }
    if old_r.abs() != 1 {
        return Err(Error::NotCoprime { a: a % m, n: m });
    }
    let inv = old_s * old_r.signum();
    Ok(inv.rem_euclid(m as i128) as u64)
}

fn pow_u64(p: u64, f: u32) -> u64 {
    (0..f).fold(1u64, |acc, _| acc * p)
}

pub fn is_prime(n: u64) -> bool {
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

/// Distinct prime factors, ascending.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
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

fn is_primitive_root(g: u64, p: u64) -> bool {
    prime_factors(p - 1)
        .iter()
        .all(|&r| mod_pow(g, (p - 1) / r, p) != 1)
}
