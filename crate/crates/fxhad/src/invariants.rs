//! Triple intersection numbers T_{omega^ell, a}(D) computed three ways
//! (direct bitmap count, exact character-sum formula, and mod-m in lifted
//! fields via the Weil-root Newton recurrence), residue invariants n_t, and
//! the inequivalence-to-Paley decision engine.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::characters_gauss::{jacobi_table, CharSpec};
use crate::cyclotomic_ring::{reduce_mod, CycInt, RingSpec};
use crate::diffsets::{transformed_diffset, DiffSetSpec};
use crate::error::{Error, Result};
use crate::finite_field::{gcd, mod_inv, mod_pow, Elem, FieldCtx};

/// The shift/offset pair of a triple intersection number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleSpec {
    /// Shift class, matters only mod N.
    pub ell: u64,
    /// Prime-subfield offset, a not in {0, 1}.
    pub a: u64,
}

impl TripleSpec {
    pub fn validate(&self, p: u64) -> Result<()> {
        if self.a % p == 0 || self.a % p == 1 {
            return Err(Error::BadTripleShift);
        }
        Ok(())
    }
}

/// T_{omega^ell, a}(D) = |D ∩ (D - omega^ell) ∩ (D - a*omega^ell)| by
/// exact bitmap counting.
pub fn triple_direct(ctx: &FieldCtx, d: &DiffSetSpec, spec: TripleSpec) -> Result<u64> {
    spec.validate(ctx.p())?;
    let w = ctx.exp(spec.ell);
    let aw = ctx.scale(w, spec.a);
    let mut count = 0u64;
    for &x in ctx.nonzero_elements() {
        if d.contains(x) && d.contains(ctx.add(x, w)) && d.contains(ctx.add(x, aw)) {
            count += 1;
        }
    }
    Ok(count)
}

/// The sorted set of distinct T values over ell = 0..N-1.
pub fn t_value_set(ctx: &FieldCtx, d: &DiffSetSpec, a: u64) -> Result<Vec<u64>> {
    let mut set = BTreeSet::new();
    for ell in 0..d.n {
        set.insert(triple_direct(ctx, d, TripleSpec { ell, a })?);
    }
    Ok(set.into_iter().collect())
}

/// Exact sum over x in F_q of chi^{i1}(x) chi^{i2}(x+1) chi^{i3}(x+a) in
/// Z[zeta_N], with the chi(0) = 0 convention.
pub fn char_sum_triple(
    ctx: &FieldCtx,
    n: u64,
    i: (u64, u64, u64),
    a: u64,
    ring: &RingSpec,
) -> Result<CycInt> {
    let group = ctx.q() - 1;
    if group % n != 0 {
        return Err(Error::OrderDoesNotDivide { order: n, group });
    }
    let a_elem = ctx.embed_scalar(a);
    let mut hist = vec![0i64; n as usize];
    for &x in ctx.nonzero_elements() {
        let Ok(d1) = ctx.dlog(x) else { continue };
        let Ok(d2) = ctx.dlog(ctx.add(x, 1)) else { continue };
        let Ok(d3) = ctx.dlog(ctx.add(x, a_elem)) else { continue };
        let e = (i.0 % n * (d1 % n) + i.1 % n * (d2 % n) + i.2 % n * (d3 % n)) % n;
        hist[e as usize] += 1;
    }
    Ok(ring.from_hist(&hist))
}

/// The elementary symmetric data (e1, e2) of the two Weil roots of a triple
/// character sum: e1 = w1 + w2 = -(base sum), e2 = w1 * w2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeilPair {
    pub e1: CycInt,
    pub e2: CycInt,
    pub triple: (u64, u64, u64),
    pub a: u64,
}

/// Precomputed per-(field, N, a) data shared by the formula and the lift
/// engine: all odd-exponent base character sums, the Jacobi table, and the
/// Weil pairs.
pub struct BaseData {
    pub n: u64,
    pub a: u64,
    pub ring: RingSpec,
    /// Odd residues 1, 3, ..., N-1 in order.
    pub odd: Vec<u64>,
    /// base_sums[idx(i1,i2,i3)] = sum_x chi^{i1}(x) chi^{i2}(x+1) chi^{i3}(x+a).
    pub base_sums: Vec<CycInt>,
    /// pairs[idx] = (e1, e2) for the same triple.
    pub pairs: Vec<(CycInt, CycInt)>,
}

impl BaseData {
    pub fn build(ctx: &FieldCtx, n: u64, a: u64) -> Result<Self> {
        TripleSpec { ell: 0, a }.validate(ctx.p())?;
        let group = ctx.q() - 1;
        if group % n != 0 {
            return Err(Error::OrderDoesNotDivide { order: n, group });
        }
        let ring = RingSpec::new(n as usize);
        let nn = n as usize;
        // One O(q) pass: joint histogram of (dlog x, dlog x+1, dlog x+a) mod N.
        let a_elem = ctx.embed_scalar(a);
        let mut joint = vec![0i64; nn * nn * nn];
        for &x in ctx.nonzero_elements() {
            let Ok(d1) = ctx.dlog(x) else { continue };
            let Ok(d2) = ctx.dlog(ctx.add(x, 1)) else { continue };
            let Ok(d3) = ctx.dlog(ctx.add(x, a_elem)) else { continue };
            joint[((d1 % n) as usize * nn + (d2 % n) as usize) * nn + (d3 % n) as usize] += 1;
        }
        let odd: Vec<u64> = (0..n / 2).map(|j| 2 * j + 1).collect();
        let m = odd.len();
        let jac = jacobi_table(ctx, n, &ring)?;
        let mut base_sums = Vec::with_capacity(m * m * m);
        let mut pairs = Vec::with_capacity(m * m * m);
        for &i1 in &odd {
            for &i2 in &odd {
                for &i3 in &odd {
                    let mut hist = vec![0i64; nn];
                    for r1 in 0..n {
                        for r2 in 0..n {
                            let row = ((r1 as usize) * nn + r2 as usize) * nn;
                            let base_e = i1 * r1 + i2 * r2;
                            for r3 in 0..n {
                                let c = joint[row + r3 as usize];
                                if c != 0 {
                                    hist[((base_e + i3 * r3) % n) as usize] += c;
                                }
                            }
                        }
                    }
                    let s = ring.from_hist(&hist);
                    let e1 = ring.neg(&s);
                    let e2 = e2_from_jacobi(ctx, n, (i1, i2, i3), a, &ring, &jac)?;
                    base_sums.push(s);
                    pairs.push((e1, e2));
                }
            }
        }
        Ok(BaseData {
            n,
            a,
            ring,
            odd,
            base_sums,
            pairs,
        })
    }

    #[inline]
    pub fn idx(&self, i1: u64, i2: u64, i3: u64) -> usize {
        let m = self.odd.len();
        ((i1 / 2) as usize * m + (i2 / 2) as usize) * m + (i3 / 2) as usize
    }
}

/// e2 = w1 * w2 from the Jacobi-sum closed form (never the O(q^2)
/// enumeration): for chi^{i2+i3} trivial, chi^{i1}(a) chi^{-i2}(a) q;
/// otherwise chi^{-i2}(-a) chi^{i2+i3}(a^2-a) chi^{i1}(a)
/// J(chi^{i2}, chi^{i3}) J(chi^{i1}, chi^{i2+i3}).
fn e2_from_jacobi(
    ctx: &FieldCtx,
    n: u64,
    i: (u64, u64, u64),
    a: u64,
    ring: &RingSpec,
    jac: &[Vec<CycInt>],
) -> Result<CycInt> {
    let (i1, i2, i3) = (i.0 % n, i.1 % n, i.2 % n);
    if i1 == 0 || i2 == 0 || i3 == 0 {
        return Err(Error::Hypothesis(
            "Weil-pair exponents must be nonzero mod N".into(),
        ));
    }
    let a_elem = ctx.embed_scalar(a);
    let da = ctx.dlog(a_elem)?;
    let chi = |j: u64, d: u64| -> CycInt { ring.zeta((j % n * (d % n) % n) as i64) };
    let i23 = (i2 + i3) % n;
    if i23 == 0 {
        let phase = chi((i1 + n - i2) % n, da);
        return Ok(ring.scale(&phase, &BigInt::from(ctx.q())));
    }
    let dna = ctx.dlog(ctx.neg(a_elem))?;
    let daa = ctx.dlog(ctx.sub(ctx.mul(a_elem, a_elem), a_elem))?;
    let mut phase = chi(n - i2, dna);
    phase = ring.mul(&phase, &chi(i23, daa));
    phase = ring.mul(&phase, &chi(i1, da));
    let j1 = &jac[i2 as usize][i3 as usize];
    let j2 = &jac[i1 as usize][i23 as usize];
    Ok(ring.mul(&ring.mul(&phase, j1), j2))
}

/// Standalone closed-form e2 (computes its own Jacobi sums).
pub fn weil_e2_closed_form(
    ctx: &FieldCtx,
    n: u64,
    i: (u64, u64, u64),
    a: u64,
    ring: &RingSpec,
) -> Result<CycInt> {
    let (i1, i2, i3) = (i.0 % n, i.1 % n, i.2 % n);
    if i1 == 0 || i2 == 0 || i3 == 0 {
        return Err(Error::Hypothesis(
            "Weil-pair exponents must be nonzero mod N".into(),
        ));
    }
    let i23 = (i2 + i3) % n;
    if i23 == 0 {
        let da = ctx.dlog(ctx.embed_scalar(a))?;
        let phase = ring.zeta(((i1 + n - i2) % n * (da % n) % n) as i64);
        return Ok(ring.scale(&phase, &BigInt::from(ctx.q())));
    }
    let c1 = CharSpec::new(ctx, n, i1)?;
    let c2 = CharSpec::new(ctx, n, i2)?;
    let c3 = CharSpec::new(ctx, n, i3)?;
    let c23 = CharSpec::new(ctx, n, i23)?;
    let j1 = crate::characters_gauss::jacobi_sum(&c2, &c3, ring);
    let j2 = crate::characters_gauss::jacobi_sum(&c1, &c23, ring);
    let a_elem = ctx.embed_scalar(a);
    let da = ctx.dlog(a_elem)?;
    let dna = ctx.dlog(ctx.neg(a_elem))?;
    let daa = ctx.dlog(ctx.sub(ctx.mul(a_elem, a_elem), a_elem))?;
    let chi = |j: u64, d: u64| -> CycInt { ring.zeta((j % n * (d % n) % n) as i64) };
    let mut phase = chi(n - i2, dna);
    phase = ring.mul(&phase, &chi(i23, daa));
    phase = ring.mul(&phase, &chi(i1, da));
    Ok(ring.mul(&ring.mul(&phase, &j1), &j2))
}

/// Budget for the O(q^2) brute-force enumeration.
pub const BRUTEFORCE_MAX_Q: u64 = 20_000;

/// e2 by exhaustive enumeration of monic quadratics g(X) = X^2 + uX + v:
/// sum of chi^{i1}(g(0)) chi^{i2}(g(-1)) chi^{i3}(g(-a)).  Test oracle only.
pub fn weil_e2_bruteforce(
    ctx: &FieldCtx,
    n: u64,
    i: (u64, u64, u64),
    a: u64,
    ring: &RingSpec,
) -> Result<CycInt> {
    if ctx.q() > BRUTEFORCE_MAX_Q {
        return Err(Error::BudgetExceeded { q: ctx.q() });
    }
    let (i1, i2, i3) = (i.0 % n, i.1 % n, i.2 % n);
    let a_elem = ctx.embed_scalar(a);
    let roots = [0 as Elem, ctx.neg(1), ctx.neg(a_elem)];
    let mut hist = vec![0i64; n as usize];
    let mut all_codes: Vec<Elem> = vec![0];
    all_codes.extend_from_slice(ctx.nonzero_elements());
    for &u in &all_codes {
        for &v in &all_codes {
            let mut e: u64 = 0;
            let mut vanishes = false;
            for (x0, ii) in roots.iter().zip([i1, i2, i3]) {
                let g = ctx.add(ctx.add(ctx.mul(*x0, *x0), ctx.mul(u, *x0)), v);
                match ctx.dlog(g) {
                    Ok(d) => e = (e + ii * (d % n)) % n,
                    Err(_) => {
                        vanishes = true;
                        break;
                    }
                }
            }
            if !vanishes {
                hist[e as usize] += 1;
            }
        }
    }
    Ok(ring.from_hist(&hist))
}

/// The lifted sum over F_{q^t}: -s_t with s_0 = 2, s_1 = e1,
/// s_k = e1 s_{k-1} - e2 s_{k-2}.  Works in any coefficient mode of `ring`
/// (reduce e1, e2 first for mod-m operation); never enumerates F_{q^t}.
pub fn lifted_char_sum(ring: &RingSpec, e1: &CycInt, e2: &CycInt, t: u64) -> CycInt {
    if t == 0 {
        return ring.from_int(BigInt::from(-2));
    }
    let mut prev = ring.from_int(BigInt::from(2));
    let mut cur = e1.clone();
    for _ in 1..t {
        let next = ring.sub(&ring.mul(e1, &cur), &ring.mul(e2, &prev));
        prev = cur;
        cur = next;
    }
    ring.neg(&cur)
}

/// T_{omega^ell, a}(D) assembled from the exact character-sum identity:
/// N^3 T = sum over odd (i1,i2,i3) of the prefactor times the base sum,
/// plus (q-3)M^3 + 3MN^2(q-3)/4 - 3M^3(q-2)
/// - M (eta(a) + eta(1-a) + eta(a^2-a)) p1^{2m}, with M = N/2.
pub fn triple_formula(
    ctx: &FieldCtx,
    d: &DiffSetSpec,
    spec: TripleSpec,
    base: &BaseData,
) -> Result<u64> {
    let fx = d.fx.ok_or_else(|| {
        Error::Hypothesis("the character-sum formula requires N = 2 p1^m (not Paley)".into())
    })?;
    spec.validate(ctx.p())?;
    let n = d.n;
    assert_eq!(base.n, n);
    assert_eq!(base.a, spec.a);
    let ring = &base.ring;
    let acc = formula_sum_term(d, spec.ell, base, ring, |idx| base.base_sums[idx].clone());
    let q = BigInt::from(ctx.q());
    let constant = formula_constant(ctx, d, &fx, spec.a, &q);
    let total = ring.add(&acc, &ring.from_int(constant));
    let total = ring.as_rational_integer(&total)?;
    let n3 = BigInt::from(n).pow(3);
    if (&total % &n3) != BigInt::zero() {
        return Err(Error::NotRationalInteger);
    }
    let t = &total / &n3;
    t.to_u64().ok_or(Error::NotRationalInteger)
}

/// The sum over odd (i1, i2, i3) of
/// u_{i1} u_{i2} u_{i3} zeta^{ell(i1+i2+i3)} * kernel(idx), where
/// u_i = sum over h in I of zeta^{-i h}.
fn formula_sum_term<F>(
    d: &DiffSetSpec,
    ell: u64,
    base: &BaseData,
    ring: &RingSpec,
    kernel: F,
) -> CycInt
where
    F: Fn(usize) -> CycInt,
{
    let n = d.n;
    let u: Vec<CycInt> = base
        .odd
        .iter()
        .map(|&i| {
            let mut hist = vec![0i64; n as usize];
            for &h in &d.index_set {
                hist[((n - i % n) * h % n % n) as usize] += 1;
            }
            ring.from_hist(&hist)
        })
        .collect();
    let mut acc = ring.zero();
    for (a1, &i1) in base.odd.iter().enumerate() {
        for (a2, &i2) in base.odd.iter().enumerate() {
            let u12 = ring.mul(&u[a1], &u[a2]);
            for (a3, &i3) in base.odd.iter().enumerate() {
                let idx = base.idx(i1, i2, i3);
                let phase = ring.zeta((ell % n * ((i1 + i2 + i3) % n) % n) as i64);
                let mut term = ring.mul(&u12, &u[a3]);
                term = ring.mul(&term, &phase);
                term = ring.mul(&term, &kernel(idx));
                acc = ring.add(&acc, &term);
            }
        }
    }
    acc
}

/// The constant (non-character) part of the identity, with q replaced by
/// the order of the relevant field (q or q^t for lifts; odd extension
/// degrees leave the quadratic-character values unchanged).
fn formula_constant(
    ctx: &FieldCtx,
    d: &DiffSetSpec,
    fx: &crate::diffsets::FXParams,
    a: u64,
    q: &BigInt,
) -> BigInt {
    let n = BigInt::from(d.n);
    let m = BigInt::from(d.n / 2);
    let p1m = BigInt::from(fx.p1m());
    let eta = |x: Elem| -> BigInt {
        let k = ctx.dlog(x).expect("eta argument must be nonzero");
        if k % 2 == 0 {
            BigInt::from(1)
        } else {
            BigInt::from(-1)
        }
    };
    let a_elem = ctx.embed_scalar(a);
    let eta_sum = eta(a_elem)
        + eta(ctx.sub(1, a_elem))
        + eta(ctx.sub(ctx.mul(a_elem, a_elem), a_elem));
    let three = BigInt::from(3);
    let m3 = &m * &m * &m;
    (q - &three) * &m3 + &three * &m * &n * &n * (q - &three) / BigInt::from(4)
        - &three * &m3 * (q - BigInt::from(2))
        - &m * eta_sum * &p1m * &p1m
}

/// T_{gamma^ell, a}(D') mod m for the lift D' of D to F_{q^t}, assembled
/// from mod-m Newton recurrences on the Weil pairs.  Requires t odd and
/// gcd(m, 2 p1) = 1 so that 4 and N^3 are invertible mod m.
pub fn lifted_triple_mod(
    ctx: &FieldCtx,
    d: &DiffSetSpec,
    spec: TripleSpec,
    t: u64,
    m: u64,
    base: &BaseData,
) -> Result<u64> {
    let fx = d.fx.ok_or_else(|| {
        Error::Hypothesis("the lifted formula requires N = 2 p1^m (not Paley)".into())
    })?;
    spec.validate(ctx.p())?;
    if t % 2 == 0 {
        return Err(Error::Hypothesis(format!("lift degree t = {t} must be odd")));
    }
    if m < 3 || m % 2 == 0 || gcd(m, 2 * fx.p1) != 1 {
        return Err(Error::BadLiftModulus { m });
    }
    let ring_m = base.ring.with_modulus(m)?;
    let acc = formula_sum_term(d, spec.ell, base, &ring_m, |idx| {
        let (e1, e2) = &base.pairs[idx];
        let e1m = reduce_mod(e1, &ring_m).expect("modular ring");
        let e2m = reduce_mod(e2, &ring_m).expect("modular ring");
        lifted_char_sum(&ring_m, &e1m, &e2m, t)
    });
    let qt = BigInt::from(mod_pow(ctx.q() % m, t, m));
    // (q^t - 3)/4 becomes (q^t - 3) * inv(4) mod m; fold inv(4) into q
    // replacement only for that term by computing the constant with exact
    // division replaced by modular inverse.
    let inv4 = BigInt::from(mod_inv(4, m)?);
    let n = BigInt::from(d.n);
    let mm = BigInt::from(d.n / 2);
    let p1m = BigInt::from(fx.p1m());
    let eta = |x: Elem| -> BigInt {
        let k = ctx.dlog(x).expect("eta argument must be nonzero");
        if k % 2 == 0 {
            BigInt::from(1)
        } else {
            BigInt::from(-1)
        }
    };
    let a_elem = ctx.embed_scalar(spec.a);
    let eta_sum = eta(a_elem)
        + eta(ctx.sub(1, a_elem))
        + eta(ctx.sub(ctx.mul(a_elem, a_elem), a_elem));
    let three = BigInt::from(3);
    let m3 = &mm * &mm * &mm;
    let constant = (&qt - &three) * &m3
        + &three * &mm * &n * &n * (&qt - &three) * &inv4
        - &three * &m3 * (&qt - BigInt::from(2))
        - &mm * eta_sum * &p1m * &p1m;
    let total = ring_m.add(&acc, &ring_m.from_int(constant));
    let total = ring_m.as_rational_integer(&total)?;
    let n3 = d.n % m * (d.n % m) % m * (d.n % m) % m;
    let inv_n3 = mod_inv(n3, m)?;
    let residue = total.to_u64().expect("normalized residue fits u64") % m * inv_n3 % m;
    Ok(residue)
}

/// The residue set {T_{gamma^ell, a}(D') mod m : 0 <= ell < N} of the lift.
pub fn lifted_residue_set(
    ctx: &FieldCtx,
    d: &DiffSetSpec,
    a: u64,
    t: u64,
    m: u64,
    base: &BaseData,
) -> Result<Vec<u64>> {
    let mut set = BTreeSet::new();
    for ell in 0..d.n {
        set.insert(lifted_triple_mod(ctx, d, TripleSpec { ell, a }, t, m, base)?);
    }
    Ok(set.into_iter().collect())
}

/// n_t = |{T_{omega^ell, a}(D^{(t^{-1} mod N)}) mod t}|; requires
/// gcd(t, N) = 1.
pub fn n_t(ctx: &FieldCtx, d: &DiffSetSpec, a: u64, t: u64) -> Result<u64> {
    let s = mod_inv(t % d.n, d.n)?;
    let dt = transformed_diffset(ctx, d, s)?;
    let values = t_value_set(ctx, &dt, a)?;
    let residues: BTreeSet<u64> = values.iter().map(|v| v % t).collect();
    Ok(residues.len() as u64)
}

/// Iterated p-adic digit sum: e(t) repeated until the value is at most
/// p - 2.  For odd t and odd p the result stays odd.
pub fn digit_sum_reduce(t: u64, p: u64) -> u64 {
    let mut t = t;
    while t > p - 2 {
        let mut s = 0u64;
        let mut v = t;
        while v > 0 {
            s += v % p;
            v /= p;
        }
        t = s;
    }
    t
}

/// ceil(4 N^3 sqrt(q)) by integer square root; the threshold above which
/// an odd prime modulus preserves all distinctions among T values.
pub fn corollary_bound(n: u64, q: u64) -> u64 {
    let k = 4u128 * (n as u128).pow(3);
    let v = k * k * q as u128;
    let s = isqrt_u128(v);
    let s = if s * s == v { s } else { s + 1 };
    u64::try_from(s).expect("bound fits u64 for supported parameters")
}

fn isqrt_u128(v: u128) -> u128 {
    if v == 0 {
        return 0;
    }
    let mut x = (v as f64).sqrt() as u128 + 2;
    while x * x > v {
        x -= 1;
    }
    x
}

// ---------------------------------------------------------------------------
// Subfield views: oracle machinery for validating the Newton lift against
// direct enumeration in a concretely materialized extension field.
// ---------------------------------------------------------------------------

/// The subfield of order q_small inside a materialized big field, under the
/// embedding small_omega = big_omega^{(q_big - 1)/(q_small - 1)}.
pub struct SubfieldView<'a> {
    pub big: &'a FieldCtx,
    pub s_idx: u64,
    pub q_small: u64,
}

impl<'a> SubfieldView<'a> {
    pub fn new(big: &'a FieldCtx, f_small: u32) -> Result<Self> {
        if big.params.f % f_small != 0 {
            return Err(Error::IncompatibleDegrees {
                small: f_small,
                big: big.params.f,
            });
        }
        let q_small = big.p().pow(f_small);
        let s_idx = (big.q() - 1) / (q_small - 1);
        Ok(SubfieldView {
            big,
            s_idx,
            q_small,
        })
    }

    /// Nonzero subfield elements as big-field codes, in subfield-exponent order.
    pub fn nonzero_elements(&self) -> Vec<Elem> {
        (0..self.q_small - 1)
            .map(|k| self.big.exp(k * self.s_idx))
            .collect()
    }

    /// Discrete log within the subfield (with respect to the induced
    /// generator big_omega^{s_idx}).
    pub fn dlog(&self, x: Elem) -> Result<u64> {
        let k = self.big.dlog(x)?;
        debug_assert_eq!(k % self.s_idx, 0, "element must lie in the subfield");
        Ok(k / self.s_idx)
    }
}

/// The Weil pair of a triple character sum computed entirely inside a
/// concrete subfield: e1 from the direct sum, e2 from the monic-quadratic
/// enumeration.  This is the oracle counterpart of `BaseData::pairs`.
pub fn subfield_weil_pair(
    view: &SubfieldView,
    n: u64,
    i: (u64, u64, u64),
    a: u64,
    ring: &RingSpec,
) -> Result<WeilPair> {
    if (view.q_small - 1) % n != 0 {
        return Err(Error::OrderDoesNotDivide {
            order: n,
            group: view.q_small - 1,
        });
    }
    let big = view.big;
    let a_elem = big.embed_scalar(a);
    let elements = view.nonzero_elements();
    // e1 = -(sum over subfield x of chi^{i1}(x) chi^{i2}(x+1) chi^{i3}(x+a)).
    let mut hist = vec![0i64; n as usize];
    for &x in &elements {
        let Ok(d1) = view.dlog(x) else { continue };
        let Ok(d2) = view.dlog(big.add(x, 1)) else { continue };
        let Ok(d3) = view.dlog(big.add(x, a_elem)) else { continue };
        let e = (i.0 % n * (d1 % n) + i.1 % n * (d2 % n) + i.2 % n * (d3 % n)) % n;
        hist[e as usize] += 1;
    }
    let e1 = ring.neg(&ring.from_hist(&hist));
    // e2 over monic quadratics with subfield coefficients.
    let roots = [0 as Elem, big.neg(1), big.neg(a_elem)];
    let mut hist2 = vec![0i64; n as usize];
    let mut with_zero = vec![0 as Elem];
    with_zero.extend_from_slice(&elements);
    for &u in &with_zero {
        for &v in &with_zero {
            let mut e: u64 = 0;
            let mut vanishes = false;
            for (x0, ii) in roots.iter().zip([i.0, i.1, i.2]) {
                let g = big.add(big.add(big.mul(*x0, *x0), big.mul(u, *x0)), v);
                match view.dlog(g) {
                    Ok(d) => e = (e + ii % n * (d % n)) % n,
                    Err(_) => {
                        vanishes = true;
                        break;
                    }
                }
            }
            if !vanishes {
                hist2[e as usize] += 1;
            }
        }
    }
    let e2 = ring.from_hist(&hist2);
    Ok(WeilPair {
        e1,
        e2,
        triple: i,
        a,
    })
}

/// Direct enumeration of the norm-composed character sum over the whole big
/// field: sum over x of chi'^{i1}(x) chi'^{i2}(x+1) chi'^{i3}(x+a) where
/// chi' has order n dividing q_small - 1.  Oracle for `lifted_char_sum`.
pub fn direct_lifted_sum(
    big: &FieldCtx,
    n: u64,
    i: (u64, u64, u64),
    a: u64,
    ring: &RingSpec,
) -> CycInt {
    let a_elem = big.embed_scalar(a);
    let mut hist = vec![0i64; n as usize];
    for &x in big.nonzero_elements() {
        let Ok(d1) = big.dlog(x) else { continue };
        let Ok(d2) = big.dlog(big.add(x, 1)) else { continue };
        let Ok(d3) = big.dlog(big.add(x, a_elem)) else { continue };
        let e = (i.0 % n * (d1 % n) + i.1 % n * (d2 % n) + i.2 % n * (d3 % n)) % n;
        hist[e as usize] += 1;
    }
    ring.from_hist(&hist)
}

// ---------------------------------------------------------------------------
// Invariant report
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct Verdict {
    pub claim: String,
    pub justification: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct InvariantReport {
    pub p: u64,
    pub f: u32,
    pub q: u64,
    pub n: u64,
    pub index_set: Vec<u64>,
    pub a: u64,
    /// Sorted distinct T values of the base set.
    pub t_set: Vec<u64>,
    /// n_t per requested odd t; `None` when gcd(t, N) != 1.
    pub n_t: BTreeMap<u64, Option<u64>>,
    pub verdicts: Vec<Verdict>,
    /// Extension degrees certified inequivalent to Paley (1 = base set).
    pub coverage: Vec<u64>,
}

/// Builds the full invariant report: T-set (direct, cross-checked against
/// the character-sum formula when N > 2 and the field is small enough),
/// n_t values, inequivalence verdicts, and covered extension degrees.
pub fn invariant_report(
    ctx: &FieldCtx,
    d: &DiffSetSpec,
    a: u64,
    t_list: &[u64],
) -> Result<InvariantReport> {
    let t_set = t_value_set(ctx, d, a)?;
    if d.fx.is_some() && ctx.q() <= BRUTEFORCE_MAX_Q {
        let base = BaseData::build(ctx, d.n, a)?;
        for ell in 0..d.n {
            let direct = triple_direct(ctx, d, TripleSpec { ell, a })?;
            let formula = triple_formula(ctx, d, TripleSpec { ell, a }, &base)?;
            if direct != formula {
                return Err(Error::Hypothesis(format!(
                    "formula/direct mismatch at ell = {ell}: {formula} != {direct}"
                )));
            }
        }
    }
    let mut nt_map = BTreeMap::new();
    let mut verdicts = Vec::new();
    let mut coverage = BTreeSet::new();
    let p1 = d.fx.map(|fx| fx.p1);
    if t_set.len() >= 3 {
        verdicts.push(Verdict {
            claim: "base set inequivalent to Paley".into(),
            justification: format!(
                "the triple intersection numbers take {} >= 3 distinct values",
                t_set.len()
            ),
        });
        coverage.insert(1);
    }
    for &t in t_list {
        if t % 2 == 0 {
            return Err(Error::Hypothesis(format!("t = {t} must be odd")));
        }
        let value = if gcd(t, d.n) == 1 {
            Some(n_t(ctx, d, a, t)?)
        } else {
            None
        };
        nt_map.insert(t, value);
        // Residue certificate for prime lift degrees coprime to p1.
        if let (Some(v), Some(p1)) = (value, p1) {
            if v >= 3 && crate::finite_field::is_prime(t) && gcd(t, p1) != p1 {
                verdicts.push(Verdict {
                    claim: format!("lift to F_q^{t} inequivalent to Paley"),
                    justification: format!(
                        "the lifted triple intersection numbers take {v} >= 3 distinct residues mod {t}"
                    ),
                });
                coverage.insert(t);
                // Recursive closure: the lift of a Feng-Xiang set is again
                // Feng-Xiang, so prime powers t^h inherit the certificate.
                let mut th = t;
                while th < 50 {
                    coverage.insert(th);
                    th *= t;
                }
            }
        }
    }
    // Digit-sum certificates: t covers whenever its iterated p-adic digit
    // sum t' has a lift whose residues mod p take >= 3 values.
    if d.fx.is_some() {
        let base = BaseData::build(ctx, d.n, a)?;
        let p = ctx.p();
        let mut reduced_ok: BTreeMap<u64, bool> = BTreeMap::new();
        for &t in t_list {
            let tp = digit_sum_reduce(t, p);
            let ok = *match reduced_ok.entry(tp) {
                std::collections::btree_map::Entry::Occupied(e) => e.into_mut(),
                std::collections::btree_map::Entry::Vacant(slot) => {
                    let residues = lifted_residue_set(ctx, d, a, tp, p, &base)?;
                    slot.insert(residues.len() >= 3)
                }
            };
            if ok {
                verdicts.push(Verdict {
                    claim: format!("lift to F_q^{t} inequivalent to Paley"),
                    justification: format!(
                        "iterated {p}-adic digit sum reduces {t} to {tp}, whose lift has >= 3 distinct triple residues mod {p}"
                    ),
                });
                coverage.insert(t);
            }
        }
    }
    Ok(InvariantReport {
        p: ctx.p(),
        f: ctx.params.f,
        q: ctx.q(),
        n: d.n,
        index_set: d.index_set.clone(),
        a,
        t_set,
        n_t: nt_map,
        verdicts,
        coverage: coverage.into_iter().collect(),
    })
}

/// True when two index sets have provably mutually inequivalent lifts for
/// all sufficiently large odd primes t: their T-value sets differ, and the
/// differences survive reduction for every prime above the bound.
pub fn distinct_t_sets(a: &[u64], b: &[u64]) -> bool {
    a != b
}
