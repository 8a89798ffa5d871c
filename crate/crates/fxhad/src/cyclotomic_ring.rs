//! Exact arithmetic in Z[zeta_n] and (Z/mZ)[zeta_n].
//!
//! Elements are vectors of length phi(n) in the power basis
//! 1, zeta, ..., zeta^{phi(n)-1}, reduced by the n-th cyclotomic polynomial.
//! The power basis is an integral basis of Z[zeta_n], which makes
//! coefficient-wise divisibility tests sound.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A cyclotomic ring: conductor, coefficient mode, and reduction tables.
#[derive(Debug, Clone)]
pub struct RingSpec {
    pub n: usize,
    pub phi: usize,
    /// Coefficients of the n-th cyclotomic polynomial, low-degree-first, monic.
    pub cyclo: Vec<BigInt>,
    /// `None` for exact integers, `Some(m)` for residues mod m.
    pub modulus: Option<BigInt>,
    /// Basis expansion of zeta^k for 0 <= k < max(n, 2*phi - 1).
    pow_basis: Vec<Vec<BigInt>>,
}

/// An element of the ring, always exactly `phi` coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycInt {
    pub coeffs: Vec<BigInt>,
}

impl RingSpec {
    /// Exact-integer ring of conductor n.
    pub fn new(n: usize) -> Self {
        Self::build(n, None)
    }

    /// Residue ring (Z/mZ)[zeta_n].
    pub fn new_mod(n: usize, m: u64) -> Result<Self> {
        if m < 2 {
            return Err(Error::BadRingModulus);
        }
        Ok(Self::build(n, Some(BigInt::from(m))))
    }

    /// Same conductor, coefficients reduced mod m.
    pub fn with_modulus(&self, m: u64) -> Result<Self> {
        if m < 2 {
            return Err(Error::BadRingModulus);
        }
        let mut spec = self.clone();
        spec.modulus = Some(BigInt::from(m));
        Ok(spec)
    }

    fn build(n: usize, modulus: Option<BigInt>) -> Self {
        assert!(n >= 1);
        let cyclo = cyclotomic_polynomial(n);
        let phi = cyclo.len() - 1;
        let rows = n.max(2 * phi).max(1);
        let mut pow_basis = Vec::with_capacity(rows);
        let mut cur = vec![BigInt::zero(); phi.max(1)];
        if phi == 0 {
            // n = 1: the ring is Z itself; keep a single dummy basis slot.
            pow_basis.push(vec![BigInt::one()]);
        } else {
            cur[0] = BigInt::one();
            for _ in 0..rows {
                pow_basis.push(cur.clone());
                // Multiply by zeta: shift up and reduce zeta^phi.
                let top = cur[phi - 1].clone();
                for i in (1..phi).rev() {
                    cur[i] = cur[i - 1].clone();
                }
                cur[0] = BigInt::zero();
                if !top.is_zero() {
                    for i in 0..phi {
                        cur[i] -= &top * &cyclo[i];
                    }
                }
            }
        }
        RingSpec {
            n,
            phi: phi.max(1),
            cyclo,
            modulus,
            pow_basis,
        }
    }

    fn normalize(&self, mut coeffs: Vec<BigInt>) -> CycInt {
        if let Some(m) = &self.modulus {
            for c in coeffs.iter_mut() {
                *c = ((&*c % m) + m) % m;
            }
        }
        CycInt { coeffs }
    }

    pub fn zero(&self) -> CycInt {
        CycInt {
            coeffs: vec![BigInt::zero(); self.phi],
        }
    }

    pub fn one(&self) -> CycInt {
        self.from_int(BigInt::one())
    }

    pub fn from_int(&self, v: BigInt) -> CycInt {
        let mut coeffs = vec![BigInt::zero(); self.phi];
        coeffs[0] = v;
        self.normalize(coeffs)
    }

    /// The basis expansion of zeta_n^k (k taken mod n).
    pub fn zeta(&self, k: i64) -> CycInt {
        let k = k.rem_euclid(self.n as i64) as usize;
        self.normalize(self.pow_basis[k].clone())
    }

    pub fn add(&self, x: &CycInt, y: &CycInt) -> CycInt {
        let coeffs = x
            .coeffs
            .iter()
            .zip(&y.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        self.normalize(coeffs)
    }

    pub fn sub(&self, x: &CycInt, y: &CycInt) -> CycInt {
        let coeffs = x
            .coeffs
            .iter()
            .zip(&y.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        self.normalize(coeffs)
    }

    pub fn neg(&self, x: &CycInt) -> CycInt {
        self.normalize(x.coeffs.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, x: &CycInt, c: &BigInt) -> CycInt {
        self.normalize(x.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, x: &CycInt, y: &CycInt) -> CycInt {
        let phi = self.phi;
        let mut prod = vec![BigInt::zero(); 2 * phi - 1];
        for (i, a) in x.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let mut out = vec![BigInt::zero(); phi];
        for (k, c) in prod.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if k < phi {
                out[k] += c;
            } else {
                for (i, b) in self.pow_basis[k].iter().enumerate() {
                    out[i] += &c * b;
                }
            }
        }
        self.normalize(out)
    }

    pub fn pow(&self, x: &CycInt, e: u64) -> CycInt {
        let mut acc = self.one();
        let mut base = x.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Accumulates sum_k hist[k] * zeta^k for an exponent histogram with
    /// indices already reduced mod n (hist.len() <= n).
    pub fn from_hist(&self, hist: &[i64]) -> CycInt {
        let mut out = vec![BigInt::zero(); self.phi];
        for (k, &c) in hist.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (i, b) in self.pow_basis[k].iter().enumerate() {
                out[i] += b * c;
            }
        }
        self.normalize(out)
    }

    /// The ring automorphism zeta -> zeta^a (gcd(a, n) = 1); a = -1 is
    /// complex conjugation.
    pub fn galois(&self, x: &CycInt, a: i64) -> Result<CycInt> {
        let n = self.n as i64;
        let ar = a.rem_euclid(n);
        if crate::finite_field::gcd(ar as u64, self.n as u64) != 1 {
            return Err(Error::BadGaloisExponent { a, n: self.n });
        }
        let mut out = vec![BigInt::zero(); self.phi];
        for (i, c) in x.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let k = (i as i64 * ar).rem_euclid(n) as usize;
            for (j, b) in self.pow_basis[k].iter().enumerate() {
                out[j] += c * b;
            }
        }
        Ok(self.normalize(out))
    }

    pub fn conj(&self, x: &CycInt) -> CycInt {
        self.galois(x, -1).expect("-1 is always coprime to n")
    }

    /// Extracts the value if all higher basis coefficients vanish.
    pub fn as_rational_integer(&self, x: &CycInt) -> Result<BigInt> {
        let x = self.normalize(x.coeffs.clone());
        if x.coeffs[1..].iter().all(|c| c.is_zero()) {
            Ok(x.coeffs[0].clone())
        } else {
            Err(Error::NotRationalInteger)
        }
    }

    /// True iff every power-basis coefficient is divisible by p
    /// (sound because the power basis is an integral basis).
    pub fn divisible_by_prime(&self, x: &CycInt, p: u64) -> Result<bool> {
        if self.modulus.is_some() {
            return Err(Error::RequiresExactMode);
        }
        let p = BigInt::from(p);
        Ok(x.coeffs.iter().all(|c| (c % &p).is_zero()))
    }

    /// Divides every coefficient exactly by d, failing if any is not divisible.
    pub fn div_exact(&self, x: &CycInt, d: &BigInt) -> Result<CycInt> {
        if self.modulus.is_some() {
            return Err(Error::RequiresExactMode);
        }
        let mut out = Vec::with_capacity(self.phi);
        for c in &x.coeffs {
            if !(c % d).is_zero() {
                return Err(Error::NotRationalInteger);
            }
            out.push(c / d);
        }
        Ok(CycInt { coeffs: out })
    }

    /// Numerical evaluation at zeta = exp(2*pi*i*k/n); used only for
    /// archimedean bound checks, never for exact results.
    pub fn complex_embedding(&self, x: &CycInt, k: usize) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (i, c) in x.coeffs.iter().enumerate() {
            let c = bigint_to_f64(c);
            let theta = 2.0 * std::f64::consts::PI * ((i * k) % self.n) as f64 / self.n as f64;
            re += c * theta.cos();
            im += c * theta.sin();
        }
        (re, im)
    }
}

/// Coefficient-wise reduction of an exact element into a modular ring of the
/// same conductor.
pub fn reduce_mod(x: &CycInt, dst: &RingSpec) -> Result<CycInt> {
    if dst.modulus.is_none() {
        return Err(Error::BadRingModulus);
    }
    Ok(dst.normalize(x.coeffs.clone()))
}

/// Conductor embedding: zeta_{n1} = zeta_{n2}^{n2/n1}, requires n1 | n2.
/// Both specs must share the coefficient mode.
pub fn embed(x: &CycInt, src: &RingSpec, dst: &RingSpec) -> Result<CycInt> {
    if dst.n % src.n != 0 {
        return Err(Error::ConductorMismatch { src: src.n, dst: dst.n });
    }
    let s = dst.n / src.n;
    let mut acc = dst.zero();
    for (i, c) in x.coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let term = dst.scale(&dst.zeta((i * s) as i64), c);
        acc = dst.add(&acc, &term);
    }
    Ok(acc)
}

fn bigint_to_f64(c: &BigInt) -> f64 {
    // num-bigint's ToPrimitive covers the magnitudes used here.
    use num_traits::ToPrimitive;
    c.to_f64().unwrap_or(if c.is_negative() {
        f64::NEG_INFINITY
    } else {
        f64::INFINITY
    })
}

/// The n-th cyclotomic polynomial, low-degree-first, computed by dividing
/// x^n - 1 by the cyclotomic polynomials of the proper divisors of n.
pub fn cyclotomic_polynomial(n: usize) -> Vec<BigInt> {
    assert!(n >= 1);
    let mut num = vec![BigInt::zero(); n + 1];
    num[0] = -BigInt::one();
    num[n] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            let phi_d = cyclotomic_polynomial(d);
            num = poly_div_exact(&num, &phi_d);
        }
    }
    num
}

/// Exact division of polynomials with BigInt coefficients (monic divisor).
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = num.len() - 1;
    let dd = den.len() - 1;
    assert!(den[dd].is_one(), "divisor must be monic");
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); dn - dd + 1];
    for i in (0..=dn - dd).rev() {
        let c = rem[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        quot[i] = c.clone();
        for j in 0..=dd {
            rem[i + j] -= &c * &den[j];
        }
    }
    assert!(rem.iter().all(|c| c.is_zero()), "division must be exact");
    quot
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![big(-1), big(1)]);
        assert_eq!(cyclotomic_polynomial(2), vec![big(1), big(1)]);
        assert_eq!(
            cyclotomic_polynomial(4),
            vec![big(1), big(0), big(1)] // x^2 + 1
        );
        // Phi_14 = x^6 - x^5 + x^4 - x^3 + x^2 - x + 1
        assert_eq!(
            cyclotomic_polynomial(14),
            vec![big(1), big(-1), big(1), big(-1), big(1), big(-1), big(1)]
        );
        assert_eq!(cyclotomic_polynomial(154).len() - 1, 60);
    }

    #[test]
    fn zeta_powers_reduce() {
        let r = RingSpec::new(14);
        assert_eq!(r.zeta(0), r.one());
        assert_eq!(r.zeta(7), r.from_int(big(-1))); // zeta_14^7 = -1
        let r4 = RingSpec::new(4);
        assert_eq!(r4.mul(&r4.zeta(1), &r4.zeta(1)), r4.from_int(big(-1)));
        // Sum of all p-th roots of unity vanishes.
        let rp = RingSpec::new(7);
        let mut acc = rp.zero();
        for k in 0..7 {
            acc = rp.add(&acc, &rp.zeta(k));
        }
        assert_eq!(acc, rp.zero());
    }

    #[test]
    fn phi_n_annihilates_zeta() {
        for n in [2usize, 7, 11, 14, 22, 33, 66, 77, 154] {
            let r = RingSpec::new(n);
            let mut acc = r.zero();
            for (k, c) in r.cyclo.clone().into_iter().enumerate() {
                acc = r.add(&acc, &r.scale(&r.zeta(k as i64), &c));
            }
            assert_eq!(acc, r.zero(), "Phi_{n} must annihilate zeta_{n}");
        }
    }

    #[test]
    fn mul_matches_exponent_addition() {
        let r = RingSpec::new(14);
        for a in 0..14i64 {
            for b in 0..14i64 {
                assert_eq!(r.mul(&r.zeta(a), &r.zeta(b)), r.zeta(a + b));
            }
        }
    }

    #[test]
    fn galois_action() {
        let r = RingSpec::new(14);
        let x = r.add(&r.scale(&r.zeta(3), &big(5)), &r.from_int(big(-2)));
        assert_eq!(r.galois(&x, 1).unwrap(), x);
        assert_eq!(r.conj(&r.conj(&x)), x);
        assert!(r.galois(&x, 7).is_err());
        // Homomorphism on a pair.
        let y = r.sub(&r.zeta(5), &r.zeta(1));
        assert_eq!(
            r.galois(&r.mul(&x, &y), 3).unwrap(),
            r.mul(&r.galois(&x, 3).unwrap(), &r.galois(&y, 3).unwrap())
        );
    }

    #[test]
    fn rational_integer_extraction() {
        let r = RingSpec::new(14);
        let z = r.zeta(1);
        assert!(r.as_rational_integer(&z).is_err());
        assert_eq!(
            r.as_rational_integer(&r.mul(&z, &r.conj(&z))).unwrap(),
            big(1)
        );
        // Real under conjugation but still irrational: zeta + zeta^{-1}.
        let real = r.add(&r.zeta(1), &r.zeta(-1));
        assert_eq!(r.conj(&real), real);
        assert!(r.as_rational_integer(&real).is_err());
    }

    #[test]
    fn divisibility_and_exact_division() {
        let r = RingSpec::new(14);
        let x = r.add(&r.scale(&r.zeta(2), &big(33)), &r.from_int(big(-11)));
        assert!(r.divisible_by_prime(&x, 11).unwrap());
        assert!(!r.divisible_by_prime(&r.one(), 11).unwrap());
        assert_eq!(
            r.div_exact(&x, &big(11)).unwrap(),
            r.add(&r.scale(&r.zeta(2), &big(3)), &r.from_int(big(-1)))
        );
        assert!(r.div_exact(&r.one(), &big(2)).is_err());
    }

    #[test]
    fn modular_mode() {
        let exact = RingSpec::new(14);
        let m3 = RingSpec::new_mod(14, 3).unwrap();
        let x = exact.scale(&exact.zeta(2), &big(7));
        let y = exact.add(&exact.zeta(1), &exact.from_int(big(5)));
        let xm = reduce_mod(&x, &m3).unwrap();
        let ym = reduce_mod(&y, &m3).unwrap();
        // reduce is a ring homomorphism.
        assert_eq!(reduce_mod(&exact.mul(&x, &y), &m3).unwrap(), m3.mul(&xm, &ym));
        assert_eq!(
            reduce_mod(&exact.scale(&x, &big(3)), &m3).unwrap(),
            m3.zero()
        );
        assert!(m3.divisible_by_prime(&xm, 3).is_err());
        assert!(RingSpec::new_mod(14, 1).is_err());
    }

    #[test]
    fn conductor_embedding() {
        let small = RingSpec::new(14);
        let bigr = RingSpec::new(154);
        let x = small.add(&small.zeta(3), &small.scale(&small.zeta(9), &big(4)));
        let y = small.mul(&x, &x);
        let xe = embed(&x, &small, &bigr).unwrap();
        assert_eq!(embed(&y, &small, &bigr).unwrap(), bigr.mul(&xe, &xe));
        assert!(embed(&x, &small, &RingSpec::new(21)).is_err());
    }

    #[test]
    fn complex_embedding_consistency() {
        let r = RingSpec::new(14);
        let x = r.add(&r.zeta(1), &r.zeta(-1)); // 2*cos(2*pi/14)
        let (re, im) = r.complex_embedding(&x, 1);
        assert!((re - 2.0 * (2.0 * std::f64::consts::PI / 14.0).cos()).abs() < 1e-12);
        assert!(im.abs() < 1e-12);
    }
}
