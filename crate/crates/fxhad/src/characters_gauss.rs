//! Multiplicative characters, exact Gauss and Jacobi sums, and the
//! closed-form evaluations (quadratic case, index-2 case, Davenport-Hasse
//! lifting and product identities).
//!
//! Conductor convention: a Gauss sum of an order-N character of F_{p^f}
//! lives in Z[zeta_L] with L = p*N, where zeta_p := zeta_L^N and
//! zeta_N := zeta_L^p.  Under the standard complex embedding
//! zeta_L = exp(2*pi*i/L) these are exactly exp(2*pi*i/p) and
//! exp(2*pi*i/N), so conductor embeddings compose consistently.

use num_bigint::BigInt;
use num_traits::One;

use crate::cyclotomic_ring::{embed, CycInt, RingSpec};
use crate::error::{Error, Result};
use crate::finite_field::{gcd, is_prime, mod_inv, mod_pow, Elem, FieldCtx};

/// The character chi_N^j of a field, with chi_N(omega) = zeta_N.
#[derive(Clone, Copy)]
pub struct CharSpec<'a> {
    pub ctx: &'a FieldCtx,
    pub order: u64,
    pub j: u64,
}

impl<'a> CharSpec<'a> {
    pub fn new(ctx: &'a FieldCtx, order: u64, j: u64) -> Result<Self> {
        let group = ctx.q() - 1;
        if order == 0 || group % order != 0 {
            return Err(Error::OrderDoesNotDivide { order, group });
        }
        Ok(CharSpec { ctx, order, j: j % order })
    }

    pub fn is_trivial(&self) -> bool {
        self.j == 0
    }

    /// chi(x) = zeta_N^{j*dlog(x)} for x != 0, and 0 for x = 0.
    pub fn eval(&self, x: Elem, ring: &RingSpec) -> CycInt {
        debug_assert_eq!(ring.n as u64, self.order);
        match self.ctx.dlog(x) {
            Ok(k) => ring.zeta(((self.j % self.order) * (k % self.order) % self.order) as i64),
            Err(_) => ring.zero(),
        }
    }

    /// chi(-1) as a sign (every multiplicative character is +-1 at -1).
    pub fn sign_at_minus_one(&self) -> i64 {
        let k = self
            .ctx
            .dlog(self.ctx.neg(1))
            .expect("-1 is nonzero");
        if self.j * (k % self.order) % self.order == 0 {
            1
        } else {
            -1
        }
    }
}

/// G_q(chi) = sum over nonzero x of chi(x) * zeta_p^{trace(x)}, exact, in
/// the conductor-(p*order) ring.
pub fn gauss_sum(chi: &CharSpec, ring: &RingSpec) -> CycInt {
    let ctx = chi.ctx;
    let (p, n) = (ctx.p(), chi.order);
    let l = (p * n) as usize;
    debug_assert_eq!(ring.n, l);
    let mut hist = vec![0i64; l];
    for k in 0..(ctx.q() - 1) {
        let x = ctx.exp(k);
        let e = (p * (chi.j * k % n) + n * ctx.trace_to_prime(x)) % (l as u64);
        hist[e as usize] += 1;
    }
    ring.from_hist(&hist)
}

/// J(chi1, chi2) = sum over x != 0, 1 of chi1(x) * chi2(1 - x), exact, in
/// the conductor-N ring.
pub fn jacobi_sum(chi1: &CharSpec, chi2: &CharSpec, ring: &RingSpec) -> CycInt {
    assert!(std::ptr::eq(chi1.ctx, chi2.ctx) && chi1.order == chi2.order,
        "Jacobi sum requires characters on a common field and order");
    let ctx = chi1.ctx;
    let n = chi1.order;
    debug_assert_eq!(ring.n as u64, n);
    let mut hist = vec![0i64; n as usize];
    for k in 0..(ctx.q() - 1) {
        let x = ctx.exp(k);
        let y = ctx.sub(1, x);
        let Ok(ky) = ctx.dlog(y) else { continue };
        let e = (chi1.j * k % n + chi2.j * ky % n) % n;
        hist[e as usize] += 1;
    }
    ring.from_hist(&hist)
}

/// Full N x N table of Jacobi sums J(chi_N^{j1}, chi_N^{j2}) from a single
/// O(q) joint-histogram pass.
pub fn jacobi_table(ctx: &FieldCtx, n: u64, ring: &RingSpec) -> Result<Vec<Vec<CycInt>>> {
    let group = ctx.q() - 1;
    if group % n != 0 {
        return Err(Error::OrderDoesNotDivide { order: n, group });
    }
    debug_assert_eq!(ring.n as u64, n);
    let nn = n as usize;
    let mut joint = vec![0i64; nn * nn];
    for k in 0..group {
        let x = ctx.exp(k);
        let y = ctx.sub(1, x);
        let Ok(ky) = ctx.dlog(y) else { continue };
        joint[(k % n) as usize * nn + (ky % n) as usize] += 1;
    }
    let mut table = Vec::with_capacity(nn);
    for j1 in 0..n {
        let mut row = Vec::with_capacity(nn);
        for j2 in 0..n {
            let mut hist = vec![0i64; nn];
            for r1 in 0..n {
                for r2 in 0..n {
                    let c = joint[r1 as usize * nn + r2 as usize];
                    if c != 0 {
                        hist[((j1 * r1 + j2 * r2) % n) as usize] += c;
                    }
                }
            }
            row.push(ring.from_hist(&hist));
        }
        table.push(row);
    }
    Ok(table)
}

/// The prime-field quadratic Gauss sum G_p(eta_p) in Z[zeta_p]; the exact
/// representation of sqrt(p*) with p* = (-1)^{(p-1)/2} p.
pub fn prime_quadratic_gauss(p: u64, ring: &RingSpec) -> CycInt {
    debug_assert_eq!(ring.n as u64, p);
    let mut hist = vec![0i64; p as usize];
    for x in 1..p {
        hist[x as usize] += if mod_pow(x, (p - 1) / 2, p) == 1 { 1 } else { -1 };
    }
    ring.from_hist(&hist)
}

/// Closed form for the quadratic (order-2) Gauss sum of F_{p^f}:
/// (-1)^{f-1} * (sqrt(p*))^f, as an element of Z[zeta_p].
pub fn quadratic_gauss_closed_form(p: u64, f: u32, ring: &RingSpec) -> CycInt {
    let sq = prime_quadratic_gauss(p, ring);
    let v = ring.pow(&sq, f as u64);
    if f % 2 == 0 {
        ring.neg(&v)
    } else {
        v
    }
}

/// Class number of Q(sqrt(-p1)) for p1 = 3 (mod 4), p1 > 3, by counting
/// reduced primitive binary quadratic forms (a, b, c) of discriminant -p1:
/// b^2 - 4ac = -p1, |b| <= a <= c, with b >= 0 whenever |b| = a or a = c.
pub fn class_number(p1: u64) -> Result<u64> {
    if p1 <= 3 || p1 % 4 != 3 || !is_prime(p1) {
        return Err(Error::Hypothesis(format!(
            "class_number requires a prime p1 > 3 with p1 = 3 (mod 4), got {p1}"
        )));
    }
    let mut h = 0u64;
    let mut a: i64 = 1;
    let p1 = p1 as i64;
    while 4 * a * a <= 3 * p1 + a * a {
        // reduced => b^2 <= a^2 <= ac, so p1 = 4ac - b^2 >= 3a^2
        for b in -a..=a {
            let num = b * b + p1;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a {
                continue;
            }
            if b < 0 && (-b == a || a == c) {
                continue;
            }
            let g = gcd(gcd(a as u64, b.unsigned_abs()), c as u64);
            if g != 1 {
                continue;
            }
            h += 1;
        }
        a += 1;
    }
    Ok(h)
}

/// Parameters of the index-2 Gauss sum closed form: 4 p^h = b^2 + p1 c^2
/// with b * p^{(f-h)/2} = -2 (mod p1).  The statement determines b but not
/// the sign of c (the two signs give Galois-conjugate values); `solve`
/// returns both candidates and `resolve_c_sign` picks the one matching the
/// direct Gauss sum of chi^2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Index2Params {
    pub p: u64,
    pub f: u32,
    pub p1: u64,
    pub m: u32,
    pub h: u64,
    pub b: i64,
    pub c: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Index2Form {
    /// G_q(chi^{p1^t})
    P1PowT(u32),
    /// G_q(chi^{2 p1^t})
    TwoP1PowT(u32),
    /// G_q(chi^{p1^m})
    P1PowM,
}

impl Index2Params {
    /// N = 2 p1^m.
    pub fn n(&self) -> u64 {
        2 * self.p1.pow(self.m)
    }

    /// Conductor of the closed-form values: 2 * p * p1^m.
    pub fn conductor(&self) -> usize {
        (2 * self.p * self.p1.pow(self.m)) as usize
    }

    /// Checks the index-2 hypothesis and solves for (h, b, +-c).
    pub fn solve(p: u64, f: u32, p1: u64, m: u32) -> Result<[Index2Params; 2]> {
        let n = 2 * p1.pow(m);
        let phi_n = p1.pow(m - 1) * (p1 - 1);
        if f as u64 != phi_n / 2 || multiplicative_order(p % n, n)? != f as u64 {
            return Err(Error::Hypothesis(format!(
                "<{p}> must have index 2 in (Z/{n}Z)*"
            )));
        }
        let h = class_number(p1)?;
        let target = 4 * pow_u64(p, h as u32) as i64;
        let mut c: i64 = 1;
        while c * c * (p1 as i64) <= target {
            let bb = target - c * c * p1 as i64;
            let b0 = integer_sqrt(bb as u64) as i64;
            if b0 * b0 == bb {
                // Pick the sign of b from the congruence b p^{(f-h)/2} = -2 (mod p1).
                let scale = mod_pow(p, (f as u64 - h) / 2, p1);
                for b in [b0, -b0] {
                    let lhs = (b.rem_euclid(p1 as i64) as u64) * scale % p1;
                    if lhs == (p1 - 2) % p1 {
                        let base = Index2Params { p, f, p1, m, h, b, c };
                        return Ok([base, Index2Params { c: -c, ..base }]);
                    }
                }
            }
            c += 1;
        }
        Err(Error::NoIndex2Solution)
    }

    /// Resolves the sign of c by comparing the chi^{2 p1^{m-1}} closed form
    /// against the direct Gauss sum.
    pub fn resolve_c_sign(ctx: &FieldCtx, p1: u64, m: u32) -> Result<Index2Params> {
        let f = ctx.params.f;
        let candidates = Self::solve(ctx.p(), f, p1, m)?;
        let n = candidates[0].n();
        let ring = RingSpec::new(candidates[0].conductor());
        let chi = CharSpec::new(ctx, n, 2 * p1.pow(m - 1))?;
        let ring_direct = RingSpec::new((ctx.p() * n) as usize);
        let direct = embed(&gauss_sum(&chi, &ring_direct), &ring_direct, &ring)?;
        for cand in candidates {
            let closed = index2_gauss_closed_form(&cand, Index2Form::TwoP1PowT(m - 1), &ring)?;
            if closed == direct {
                return Ok(cand);
            }
        }
        Err(Error::NoIndex2Solution)
    }
}

/// The index-2 closed forms, as exact elements of Z[zeta_{2 p p1^m}], with
/// sqrt(p*) := G_p(eta_p) and sqrt(-p1) := G_{p1}(eta_{p1}).
///
/// For the p1 = 3 (mod 8) branch of the chi^{p1^t} form, the overall sign
/// is (-1)^{((p-1)/2)((f-1)/2)} — fixed empirically against the direct
/// Gauss sum and frozen by the regression tests; statements of this branch
/// in the literature differ in sign conventions.
pub fn index2_gauss_closed_form(
    params: &Index2Params,
    form: Index2Form,
    ring: &RingSpec,
) -> Result<CycInt> {
    let &Index2Params { p, f, p1, m, h, b, c } = params;
    let l = params.conductor();
    debug_assert_eq!(ring.n, l);
    // sqrt(p*) embedded via zeta_p = zeta_L^{L/p}.
    let ring_p = RingSpec::new(p as usize);
    let sqrt_p_star = embed(&prime_quadratic_gauss(p, &ring_p), &ring_p, ring)?;
    // sqrt(-p1) embedded via zeta_{p1} = zeta_L^{L/p1}.
    let ring_p1 = RingSpec::new(p1 as usize);
    let sqrt_m_p1 = embed(&prime_quadratic_gauss(p1, &ring_p1), &ring_p1, ring)?;
    // (b + c*sqrt(-p1)) / 2, an algebraic integer since -p1 = 1 (mod 4)
    // forces b, c to share parity; powers divide exactly by 2^e.
    let bracket_num = ring.add(
        &ring.from_int(BigInt::from(b)),
        &ring.scale(&sqrt_m_p1, &BigInt::from(c)),
    );
    let half_pow = |e: u64| -> Result<CycInt> {
        let num = ring.pow(&bracket_num, e);
        ring.div_exact(&num, &BigInt::from(2).pow(e as u32))
    };
    let sign = |exponent: u64| -> BigInt {
        if exponent % 2 == 0 {
            BigInt::one()
        } else {
            -BigInt::one()
        }
    };
    let p_big = BigInt::from(p);
    match form {
        Index2Form::P1PowM => {
            let s = sign((p - 1) / 2 * ((f as u64 - 1) / 2));
            let scalar = s * p_big.pow((f - 1) / 2);
            Ok(ring.scale(&sqrt_p_star, &scalar))
        }
        Index2Form::P1PowT(t) => {
            if t >= m {
                return Err(Error::Hypothesis("require 0 <= t <= m-1".into()));
            }
            if p1 % 8 == 7 {
                let s = sign((p - 1) / 2 * ((f as u64 - 1) / 2));
                let scalar = s * p_big.pow((f - 1) / 2);
                Ok(ring.scale(&sqrt_p_star, &scalar))
            } else {
                // p1 = 3 (mod 8); sign fixed empirically (see above).
                let s = sign((p - 1) / 2 * ((f as u64 - 1) / 2));
                let e = (f as u64 - 1) / 2 - h * pow_u64(p1, t) as u64;
                let scalar = s * p_big.pow(e as u32);
                let bracket = half_pow(2 * pow_u64(p1, t) as u64)?;
                Ok(ring.scale(&ring.mul(&sqrt_p_star, &bracket), &scalar))
            }
        }
        Index2Form::TwoP1PowT(t) => {
            if t >= m {
                return Err(Error::Hypothesis("require 0 <= t <= m-1".into()));
            }
            let p1t = pow_u64(p1, t) as u64;
            let scalar = p_big.pow(((f as u64 - p1t * h) / 2) as u32);
            let bracket = half_pow(p1t)?;
            Ok(ring.scale(&bracket, &scalar))
        }
    }
}

/// Checks G_{q^s}(chi') = (-1)^{s-1} G_q(chi)^s for the norm-composed lift
/// chi' of chi; with the embedding small_omega = big_omega^{(q^s-1)/(q-1)},
/// the lift of the canonical order-N character is the big field's canonical
/// order-N character.
pub fn davenport_hasse_lift_check(
    small: &FieldCtx,
    big: &FieldCtx,
    order: u64,
    j: u64,
) -> Result<bool> {
    if small.p() != big.p() || big.params.f % small.params.f != 0 {
        return Err(Error::IncompatibleDegrees {
            small: small.params.f,
            big: big.params.f,
        });
    }
    let s = (big.params.f / small.params.f) as u64;
    let ring = RingSpec::new((small.p() * order) as usize);
    let g_small = gauss_sum(&CharSpec::new(small, order, j)?, &ring);
    let g_big = gauss_sum(&CharSpec::new(big, order, j)?, &ring);
    let mut rhs = ring.pow(&g_small, s);
    if s % 2 == 0 {
        rhs = ring.neg(&rhs);
    }
    Ok(g_big == rhs)
}

/// Outcome of the Gauss-sum product identity check for N = 2 p1^m.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProductFormulaReport {
    /// G(chi_N) * chi_{p1^m}(2) * G(chi_{p1^m}^{2^{-1}}) = G(chi_{p1^m}) * G(chi_2).
    pub identity_holds: bool,
    /// When 2 is in <p> mod p1^m and gcd(p1, p-1) = 1: G(chi_N) = G(chi_2).
    /// `None` if those hypotheses fail.
    pub reduces_to_quadratic: Option<bool>,
}

pub fn product_formula_check(ctx: &FieldCtx, p1: u64, m: u32) -> Result<ProductFormulaReport> {
    if m == 0 {
        return Err(Error::Hypothesis("product formula requires m >= 1".into()));
    }
    let p1m = pow_u64(p1, m) as u64;
    let n = 2 * p1m;
    let group = ctx.q() - 1;
    if group % n != 0 {
        return Err(Error::OrderDoesNotDivide { order: n, group });
    }
    let p = ctx.p();
    let ring = RingSpec::new((p * n) as usize);
    let ring_odd = RingSpec::new((p * p1m) as usize);
    let ring_two = RingSpec::new((2 * p) as usize);

    let g_n = gauss_sum(&CharSpec::new(ctx, n, 1)?, &ring);
    let g_odd = embed(
        &gauss_sum(&CharSpec::new(ctx, p1m, 1)?, &ring_odd),
        &ring_odd,
        &ring,
    )?;
    let inv2 = mod_inv(2, p1m)?;
    let g_odd_inv2 = embed(
        &gauss_sum(&CharSpec::new(ctx, p1m, inv2)?, &ring_odd),
        &ring_odd,
        &ring,
    )?;
    let g_two = embed(
        &gauss_sum(&CharSpec::new(ctx, 2, 1)?, &ring_two),
        &ring_two,
        &ring,
    )?;
    // chi_{p1^m}(2) embedded: zeta_{p1^m} = zeta_{pN}^{2p}.
    let d2 = ctx.dlog(ctx.embed_scalar(2))?;
    let chi_at_2 = ring.zeta((2 * p * (d2 % p1m)) as i64);

    let lhs = ring.mul(&ring.mul(&g_n, &chi_at_2), &g_odd_inv2);
    let rhs = ring.mul(&g_odd, &g_two);
    let identity_holds = lhs == rhs;

    let two_in_p = {
        let mut seen = false;
        let mut x = 1u64;
        loop {
            x = x * (p % p1m) % p1m;
            if x == 2 % p1m {
                seen = true;
            }
            if x == 1 {
                break;
            }
        }
        seen
    };
    let reduces_to_quadratic = if two_in_p && gcd(p1, p - 1) == 1 {
        Some(g_n == g_two)
    } else {
        None
    };
    Ok(ProductFormulaReport {
        identity_holds,
        reduces_to_quadratic,
    })
}

/// sigma_{a,b}: zeta_N -> zeta_N^a, zeta_p -> zeta_p^b on the conductor-pN
/// ring, realized as a single Galois exponent via CRT.
pub fn sigma_ab(ring: &RingSpec, x: &CycInt, a: i64, b: i64, n: u64, p: u64) -> Result<CycInt> {
    let an = a.rem_euclid(n as i64) as u64;
    let bp = b.rem_euclid(p as i64) as u64;
    // u = a (mod N), u = b (mod p).
    let u = crt(an, n, bp, p)?;
    ring.galois(x, u as i64)
}

fn crt(a: u64, n: u64, b: u64, p: u64) -> Result<u64> {
    let n_inv = mod_inv(n % p, p)?;
    let t = (b + p - a % p) % p * n_inv % p;
    Ok((a + n * t) % (n * p))
}

pub fn multiplicative_order(a: u64, n: u64) -> Result<u64> {
    if gcd(a % n, n) != 1 {
        return Err(Error::NotCoprime { a: a % n, n });
    }
    let mut x = a % n;
    let mut k = 1u64;
    while x != 1 {
        x = x * a % n;
        k += 1;
    }
    Ok(k)
}

pub fn integer_sqrt(v: u64) -> u64 {
    if v == 0 {
        return 0;
    }
    let mut x = (v as f64).sqrt() as u64 + 2;
    while x * x > v {
        x -= 1;
    }
    x
}

fn pow_u64(p: u64, e: u32) -> u64 {
    (0..e).fold(1u64, |acc, _| acc * p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_field::FieldParams;

    fn field(p: u64, f: u32) -> FieldCtx {
        FieldCtx::build(FieldParams::new(p, f).unwrap()).unwrap()
    }

    #[test]
    fn char_eval_basics() {
        let ctx = field(11, 3);
        let ring = RingSpec::new(14);
        let chi = CharSpec::new(&ctx, 14, 1).unwrap();
        assert_eq!(chi.eval(ctx.omega, &ring), ring.zeta(1));
        assert_eq!(chi.eval(0, &ring), ring.zero());
        // Any element of the coset with dlog = i (mod 14) maps to zeta^i.
        for k in [3u64, 17, 31] {
            assert_eq!(chi.eval(ctx.exp(k), &ring), ring.zeta((k % 14) as i64));
        }
        // Quadratic character of the prime field at a non-square.
        let fp = field(11, 1);
        let eta = CharSpec::new(&fp, 2, 1).unwrap();
        let r2 = RingSpec::new(2);
        // 2 is a non-square mod 11.
        assert_eq!(eta.eval(2, &r2), r2.from_int(BigInt::from(-1)));
        assert!(CharSpec::new(&ctx, 13, 1).is_err());
    }

    #[test]
    fn gauss_sum_trivial_and_norm() {
        let ctx = field(11, 3);
        let ring = RingSpec::new(154);
        let trivial = gauss_sum(&CharSpec::new(&ctx, 14, 0).unwrap(), &ring);
        assert_eq!(trivial, ring.from_int(BigInt::from(-1)));
        let g = gauss_sum(&CharSpec::new(&ctx, 14, 1).unwrap(), &ring);
        let norm = ring.mul(&g, &ring.conj(&g));
        assert_eq!(ring.as_rational_integer(&norm).unwrap(), BigInt::from(1331));
    }

    #[test]
    fn gauss_sum_frobenius_invariance() {
        let ctx = field(11, 3);
        let ring = RingSpec::new(154);
        for j in [1u64, 2, 3, 5] {
            let g = gauss_sum(&CharSpec::new(&ctx, 14, j).unwrap(), &ring);
            let gp = gauss_sum(&CharSpec::new(&ctx, 14, j * 11 % 14).unwrap(), &ring);
            assert_eq!(g, gp);
        }
    }

    #[test]
    fn jacobi_gauss_relation() {
        let ctx = field(11, 3);
        let ring_n = RingSpec::new(14);
        let ring_l = RingSpec::new(154);
        for (j1, j2) in [(1u64, 2u64), (3, 5), (1, 1), (9, 3)] {
            if (j1 + j2) % 14 == 0 {
                continue;
            }
            let c1 = CharSpec::new(&ctx, 14, j1).unwrap();
            let c2 = CharSpec::new(&ctx, 14, j2).unwrap();
            let c12 = CharSpec::new(&ctx, 14, (j1 + j2) % 14).unwrap();
            let j = embed(&jacobi_sum(&c1, &c2, &ring_n), &ring_n, &ring_l).unwrap();
            let lhs = ring_l.mul(&j, &gauss_sum(&c12, &ring_l));
            let rhs = ring_l.mul(&gauss_sum(&c1, &ring_l), &gauss_sum(&c2, &ring_l));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn jacobi_degenerate_cases() {
        let ctx = field(11, 3);
        let ring = RingSpec::new(14);
        // chi1 * chi2 trivial, chi1 nontrivial: J = -chi1(-1).
        for j in [1u64, 3, 5, 6] {
            let c1 = CharSpec::new(&ctx, 14, j).unwrap();
            let c2 = CharSpec::new(&ctx, 14, 14 - j).unwrap();
            let jac = jacobi_sum(&c1, &c2, &ring);
            let expect = ring.from_int(BigInt::from(-c1.sign_at_minus_one()));
            assert_eq!(jac, expect);
        }
        // Both trivial: q - 2 terms of 1.
        let triv = CharSpec::new(&ctx, 14, 0).unwrap();
        assert_eq!(
            jacobi_sum(&triv, &triv, &ring),
            ring.from_int(BigInt::from(1329))
        );
    }

    #[test]
    fn jacobi_table_matches_pointwise() {
        let ctx = field(11, 3);
        let ring = RingSpec::new(14);
        let table = jacobi_table(&ctx, 14, &ring).unwrap();
        for (j1, j2) in [(0u64, 0u64), (1, 2), (5, 9), (13, 13)] {
            let c1 = CharSpec::new(&ctx, 14, j1).unwrap();
            let c2 = CharSpec::new(&ctx, 14, j2).unwrap();
            assert_eq!(table[j1 as usize][j2 as usize], jacobi_sum(&c1, &c2, &ring));
        }
    }

    #[test]
    fn quadratic_closed_form_suite() {
        for (p, f) in [(3u64, 1u32), (3, 2), (3, 3), (7, 1), (7, 2), (11, 1), (11, 2), (11, 3), (23, 1)] {
            let ctx = field(p, f);
            let ring_l = RingSpec::new((2 * p) as usize);
            let direct = gauss_sum(&CharSpec::new(&ctx, 2, 1).unwrap(), &ring_l);
            let ring_p = RingSpec::new(p as usize);
            let closed = embed(
                &quadratic_gauss_closed_form(p, f, &ring_p),
                &ring_p,
                &ring_l,
            )
            .unwrap();
            assert_eq!(direct, closed, "quadratic closed form at ({p},{f})");
        }
        // p=3, f=2: -(sqrt(-3))^2 = 3, a rational integer.
        let ring3 = RingSpec::new(3);
        let v = quadratic_gauss_closed_form(3, 2, &ring3);
        assert_eq!(ring3.as_rational_integer(&v).unwrap(), BigInt::from(3));
    }

    #[test]
    fn class_numbers() {
        assert_eq!(class_number(7).unwrap(), 1);
        assert_eq!(class_number(11).unwrap(), 1);
        assert_eq!(class_number(23).unwrap(), 3);
        assert_eq!(class_number(47).unwrap(), 5);
        assert!(class_number(13).is_err());
        assert!(class_number(3).is_err());
    }

    #[test]
    fn index2_parameters_11_7() {
        let cands = Index2Params::solve(11, 3, 7, 1).unwrap();
        assert_eq!(cands[0].h, 1);
        assert_eq!(cands[0].b, -4); // (-4)*11 = -44 = -2 (mod 7)
        assert_eq!(cands[0].c.abs(), 2);
        let ctx = field(11, 3);
        let resolved = Index2Params::resolve_c_sign(&ctx, 7, 1).unwrap();
        assert_eq!((resolved.b, resolved.c), (-4, -2));
    }

    #[test]
    fn index2_parameters_3_11() {
        let cands = Index2Params::solve(3, 5, 11, 1).unwrap();
        assert_eq!(cands[0].h, 1);
        assert_eq!(cands[0].b, 1); // 1*9 = -2 (mod 11)
        assert_eq!(cands[0].c.abs(), 1);
        let ctx = field(3, 5);
        let resolved = Index2Params::resolve_c_sign(&ctx, 11, 1).unwrap();
        assert_eq!((resolved.b, resolved.c), (1, -1));
    }

    #[test]
    fn index2_closed_forms_match_direct() {
        // p1 = 7 (mod 8) branch over F_1331.
        let ctx = field(11, 3);
        let params = Index2Params::resolve_c_sign(&ctx, 7, 1).unwrap();
        let ring = RingSpec::new(params.conductor());
        let direct_ring = RingSpec::new(154);
        for (j, form) in [
            (1u64, Index2Form::P1PowT(0)),
            (2, Index2Form::TwoP1PowT(0)),
            (7, Index2Form::P1PowM),
        ] {
            let g = gauss_sum(&CharSpec::new(&ctx, 14, j).unwrap(), &direct_ring);
            let g = embed(&g, &direct_ring, &ring).unwrap();
            let closed = index2_gauss_closed_form(&params, form, &ring).unwrap();
            assert_eq!(g, closed, "form for chi^{j} over F_1331");
        }
        // p1 = 3 (mod 8) branch over F_243.
        let ctx = field(3, 5);
        let params = Index2Params::resolve_c_sign(&ctx, 11, 1).unwrap();
        let ring = RingSpec::new(params.conductor());
        let direct_ring = RingSpec::new(66);
        for (j, form) in [
            (1u64, Index2Form::P1PowT(0)),
            (2, Index2Form::TwoP1PowT(0)),
            (11, Index2Form::P1PowM),
        ] {
            let g = gauss_sum(&CharSpec::new(&ctx, 22, j).unwrap(), &direct_ring);
            let g = embed(&g, &direct_ring, &ring).unwrap();
            let closed = index2_gauss_closed_form(&params, form, &ring).unwrap();
            assert_eq!(g, closed, "form for chi^{j} over F_243");
        }
    }

    #[test]
    fn davenport_hasse_lift() {
        let s3 = field(3, 1);
        let b3 = field(3, 3);
        assert!(davenport_hasse_lift_check(&s3, &b3, 2, 1).unwrap());
        let s11 = field(11, 1);
        let b11 = field(11, 3);
        assert!(davenport_hasse_lift_check(&s11, &b11, 2, 1).unwrap());
        // s = 1 degenerates to the identity.
        assert!(davenport_hasse_lift_check(&s11, &s11, 2, 1).unwrap());
        // A higher-order character: N = 10 from F_11 to F_1331.
        assert!(davenport_hasse_lift_check(&s11, &b11, 10, 1).unwrap());
        assert!(davenport_hasse_lift_check(&s3, &b11, 2, 1).is_err());
    }

    #[test]
    fn product_formula() {
        let ctx = field(11, 3);
        let rep = product_formula_check(&ctx, 7, 1).unwrap();
        assert!(rep.identity_holds);
        assert_eq!(rep.reduces_to_quadratic, Some(true));
        let ctx3 = field(3, 5);
        let rep3 = product_formula_check(&ctx3, 11, 1).unwrap();
        assert!(rep3.identity_holds);
        // 2 is not in <3> mod 11, so the reduction hypothesis fails.
        assert_eq!(rep3.reduces_to_quadratic, None);
        assert!(product_formula_check(&ctx, 7, 0).is_err());
    }

    #[test]
    fn gauss_property_v_sigma_action() {
        // sigma_{a,b}(G(chi_N)) = chi_N^{-a}(b) * G(chi_N^a).
        let ctx = field(11, 3);
        let ring = RingSpec::new(154);
        let g1 = gauss_sum(&CharSpec::new(&ctx, 14, 1).unwrap(), &ring);
        for a in [1i64, 3, 5, 9] {
            for b in [1i64, 2, 7] {
                let lhs = sigma_ab(&ring, &g1, a, b, 14, 11).unwrap();
                let ga = gauss_sum(&CharSpec::new(&ctx, 14, a as u64).unwrap(), &ring);
                let k = ctx.dlog(ctx.embed_scalar(b as u64)).unwrap();
                let chi_pow = ring.zeta((11 * (((-a).rem_euclid(14) as u64) * k % 14)) as i64);
                assert_eq!(lhs, ring.mul(&chi_pow, &ga));
            }
        }
    }

    #[test]
    fn gauss_property_iii_conjugation() {
        // G(chi^{-1}) = chi(-1) * conj(G(chi)).
        let ctx = field(11, 3);
        let ring = RingSpec::new(154);
        for j in 1..14u64 {
            let chi = CharSpec::new(&ctx, 14, j).unwrap();
            let ginv = gauss_sum(&CharSpec::new(&ctx, 14, 14 - j).unwrap(), &ring);
            let mut rhs = ring.conj(&gauss_sum(&chi, &ring));
            if chi.sign_at_minus_one() < 0 {
                rhs = ring.neg(&rhs);
            }
            assert_eq!(ginv, rhs);
        }
    }
}
