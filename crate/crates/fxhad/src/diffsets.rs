//! Cyclotomic classes, the Feng-Xiang construction (classic and
//! generalized), the Paley baseline, skew Hadamard verification, and
//! index-set transforms.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finite_field::{gcd, mod_inv, Elem, FieldCtx};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FXVariant {
    Classic,
    Generalized,
}

/// Parameters of a Feng-Xiang family: N = 2 p1^m.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FXParams {
    pub p1: u64,
    pub m: u32,
    pub variant: FXVariant,
    /// Odd lift multiplicity of the generalized variant (default 1).
    #[serde(default = "default_s")]
    pub s: u32,
}

fn default_s() -> u32 {
    1
}

impl FXParams {
    pub fn n(&self) -> u64 {
        2 * self.p1.pow(self.m)
    }

    pub fn p1m(&self) -> u64 {
        self.p1.pow(self.m)
    }
}

/// A materialized difference set: union of cyclotomic classes of order N.
#[derive(Debug, Clone)]
pub struct DiffSetSpec {
    pub p: u64,
    pub f: u32,
    pub q: u64,
    pub n: u64,
    /// `None` marks the Paley set (N = 2, I = {0}).
    pub fx: Option<FXParams>,
    /// Sorted residues mod N.
    pub index_set: Vec<u64>,
    /// Membership bitmap over field-element codes.
    bitmap: Vec<u64>,
}

impl DiffSetSpec {
    #[inline]
    pub fn contains(&self, x: Elem) -> bool {
        self.bitmap[(x >> 6) as usize] >> (x & 63) & 1 == 1
    }

    pub fn size(&self) -> u64 {
        self.bitmap.iter().map(|w| w.count_ones() as u64).sum()
    }

    fn materialize(ctx: &FieldCtx, n: u64, index_set: &[u64], fx: Option<FXParams>) -> Self {
        let q = ctx.q();
        let mut in_i = vec![false; n as usize];
        for &i in index_set {
            in_i[(i % n) as usize] = true;
        }
        let code_space = (ctx.nonzero_elements().iter().map(|&x| x as u64).max().unwrap() + 1)
            .max(q) as usize;
        let mut bitmap = vec![0u64; code_space.div_ceil(64)];
        for k in 0..(q - 1) {
            if in_i[(k % n) as usize] {
                let x = ctx.exp(k);
                bitmap[(x >> 6) as usize] |= 1u64 << (x & 63);
            }
        }
        let mut index_set: Vec<u64> = index_set.iter().map(|&i| i % n).collect();
        index_set.sort_unstable();
        index_set.dedup();
        DiffSetSpec {
            p: ctx.p(),
            f: ctx.params.f,
            q,
            n,
            fx,
            index_set,
            bitmap,
        }
    }
}

/// The cyclotomic class C_i^{(N,q)} = { x != 0 : dlog(x) = i (mod N) }.
pub fn cyclotomic_class(ctx: &FieldCtx, n: u64, i: u64) -> Result<Vec<Elem>> {
    let group = ctx.q() - 1;
    if group % n != 0 {
        return Err(Error::OrderDoesNotDivide { order: n, group });
    }
    let i = i % n;
    Ok((0..group / n)
        .map(|j| ctx.exp(i + j * n))
        .collect())
}

/// Validates every hypothesis of the chosen Feng-Xiang variant and the
/// covering condition on I, then materializes D = union of C_i, i in I.
pub fn build_fx_diffset(ctx: &FieldCtx, fx: FXParams, index_set: &[u64]) -> Result<DiffSetSpec> {
    let mut violations = Vec::new();
    let n = fx.n();
    let p1m = fx.p1m();
    let p = ctx.p();
    let f_total = ctx.params.f as u64;
    if !crate::finite_field::is_prime(fx.p1) {
        violations.push(format!("p1 = {} is not prime", fx.p1));
    }
    if ctx.q() % 4 != 3 {
        violations.push(format!("q = {} is not 3 (mod 4)", ctx.q()));
    }
    if (ctx.q() - 1) % n != 0 {
        violations.push(format!("N = {n} does not divide q - 1 = {}", ctx.q() - 1));
    } else {
        match fx.variant {
            FXVariant::Classic => {
                if fx.p1 % 8 != 7 {
                    violations.push(format!("p1 = {} is not 7 (mod 8)", fx.p1));
                }
                if p % 4 != 3 {
                    violations.push(format!("p = {p} is not 3 (mod 4)"));
                }
                let ord = crate::characters_gauss::multiplicative_order(p % n, n)?;
                // phi(N)/2 = p1^{m-1} (p1 - 1) / 2.
                let expect = fx.p1.pow(fx.m - 1) * (fx.p1 - 1) / 2;
                if ord != expect {
                    violations.push(format!("ord_N(p) = {ord}, expected phi(N)/2 = {expect}"));
                }
                if f_total % ord != 0 || (f_total / ord) % 2 == 0 {
                    violations.push(format!(
                        "f = {f_total} is not an odd multiple of ord_N(p) = {ord}"
                    ));
                }
            }
            FXVariant::Generalized => {
                if p % 4 != 3 {
                    violations.push(format!("p = {p} is not 3 (mod 4)"));
                }
                if gcd(fx.p1, p - 1) != 1 {
                    violations.push(format!("gcd(p1, p - 1) = {} != 1", gcd(fx.p1, p - 1)));
                }
                let ord = crate::characters_gauss::multiplicative_order(p % n, n)?;
                if ord % 2 == 0 {
                    violations.push(format!("ord_N(p) = {ord} is even"));
                }
                if !subgroup_contains(p, 2, p1m) {
                    violations.push("2 is not in <p> (mod p1^m)".into());
                }
                if fx.s % 2 == 0 {
                    violations.push(format!("s = {} is even", fx.s));
                }
                if f_total != ord * fx.s as u64 {
                    violations.push(format!(
                        "f = {f_total} is not ord_N(p) * s = {}",
                        ord * fx.s as u64
                    ));
                }
            }
        }
    }
    // Covering condition: {i mod p1^m} = Z/p1^m Z.
    let mut covered = vec![false; p1m as usize];
    for &i in index_set {
        covered[((i % n) % p1m) as usize] = true;
    }
    if !covered.iter().all(|&c| c) {
        violations.push("index set does not cover Z/p1^m Z".into());
    }
    if !violations.is_empty() {
        return Err(Error::Hypotheses(violations));
    }
    let d = DiffSetSpec::materialize(ctx, n, index_set, Some(fx));
    debug_assert_eq!(d.size(), (ctx.q() - 1) / 2);
    Ok(d)
}

fn subgroup_contains(p: u64, target: u64, modulus: u64) -> bool {
    if modulus == 1 {
        return true;
    }
    let mut x = 1u64;
    loop {
        x = x * (p % modulus) % modulus;
        if x == target % modulus {
            return true;
        }
        if x == 1 {
            return false;
        }
    }
}

/// The Paley difference set: nonzero squares of F_q, q = 3 (mod 4).
pub fn paley_diffset(ctx: &FieldCtx) -> Result<DiffSetSpec> {
    if ctx.q() % 4 != 3 {
        return Err(Error::NotThreeModFour { q: ctx.q() });
    }
    Ok(DiffSetSpec::materialize(ctx, 2, &[0], None))
}

/// {s * i mod N : i in I}, requires gcd(s, N) = 1.
pub fn transform_index_set(index_set: &[u64], s: u64, n: u64) -> Result<Vec<u64>> {
    if gcd(s % n, n) != 1 {
        return Err(Error::NotCoprime { a: s % n, n });
    }
    let mut out: Vec<u64> = index_set.iter().map(|&i| s % n * (i % n) % n).collect();
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// |D intersect (D + x)| by bitmap scan, x != 0.
pub fn pairwise_intersection(ctx: &FieldCtx, d: &DiffSetSpec, x: Elem) -> Result<u64> {
    if x == 0 {
        return Err(Error::ZeroShift);
    }
    let mut count = 0u64;
    for &y in ctx.nonzero_elements() {
        if d.contains(y) && d.contains(ctx.add(y, x)) {
            count += 1;
        }
    }
    Ok(count)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum VerifyMode {
    /// Disjoint union + every nonzero shift.
    Exact,
    /// Disjoint union exactly + at least this many random shifts.
    Sampled { samples: u64, seed: u64 },
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct SkewReport {
    pub disjoint_union_ok: bool,
    pub lambda_expected: u64,
    pub shifts_checked: u64,
    /// Shifts x (as codes) where |D intersect (D+x)| missed lambda.
    pub failures: Vec<u32>,
    pub pass: bool,
}

/// Checks G = D + (-D) + {0} (disjoint) and |D intersect (D+x)| = (q-3)/4.
pub fn verify_skew_hadamard(ctx: &FieldCtx, d: &DiffSetSpec, mode: VerifyMode) -> SkewReport {
    let q = ctx.q();
    let lambda = (q - 3) / 4;
    let mut disjoint = !d.contains(0);
    for &x in ctx.nonzero_elements() {
        if d.contains(x) == d.contains(ctx.neg(x)) {
            disjoint = false;
            break;
        }
    }
    let mut failures = Vec::new();
    let mut checked = 0u64;
    let mut check = |x: Elem| {
        let c = pairwise_intersection(ctx, d, x).expect("x != 0");
        if c != lambda {
            failures.push(x);
        }
    };
    match mode {
        VerifyMode::Exact => {
            for &x in ctx.nonzero_elements() {
                check(x);
                checked += 1;
            }
        }
        VerifyMode::Sampled { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..samples {
                let k = rng.gen_range(0..q - 1);
                check(ctx.exp(k));
                checked += 1;
            }
        }
    }
    let pass = disjoint && failures.is_empty();
    SkewReport {
        disjoint_union_ok: disjoint,
        lambda_expected: lambda,
        shifts_checked: checked,
        failures,
        pass,
    }
}

/// Builds the transformed set D^{(s)} on the index set s * I.
pub fn transformed_diffset(ctx: &FieldCtx, d: &DiffSetSpec, s: u64) -> Result<DiffSetSpec> {
    let index_set = transform_index_set(&d.index_set, s, d.n)?;
    Ok(DiffSetSpec::materialize(ctx, d.n, &index_set, d.fx))
}

/// The inverse transform exponent: t^{-1} mod N.
pub fn inverse_transform_exponent(t: u64, n: u64) -> Result<u64> {
    mod_inv(t % n, n)
}

/// Parses an index set given either as explicit residues or as a generator
/// expression such as `⟨p⟩ ∪ −2⟨p⟩ ∪ {0}` (ASCII `<p> u -2<p> u {0}` is
/// also accepted).  Each term is a scalar multiple of the subgroup
/// generated by `p` mod N, or an explicit residue list in braces.
pub fn parse_index_set_expr(expr: &str, p: u64, n: u64) -> Result<Vec<u64>> {
    let normalized: String = expr
        .replace('\u{27E8}', "<")
        .replace('\u{27E9}', ">")
        .replace('\u{222A}', "u")
        .replace('\u{2212}', "-")
        .replace('\u{2229}', "&"); // reject intersections below
    let mut out: Vec<u64> = Vec::new();
    for term in normalized.split(['u', 'U']) {
        let term = term.trim();
        if term.is_empty() {
            return Err(Error::IndexSetParse(format!("empty term in {expr:?}")));
        }
        if let Some(rest) = term.strip_prefix('{') {
            let inner = rest
                .strip_suffix('}')
                .ok_or_else(|| Error::IndexSetParse(format!("unclosed brace in {expr:?}")))?;
            for tok in inner.split(',') {
                let tok = tok.trim();
                if tok.is_empty() {
                    continue;
                }
                let v: i64 = tok
                    .parse()
                    .map_err(|_| Error::IndexSetParse(format!("bad residue {tok:?}")))?;
                out.push(v.rem_euclid(n as i64) as u64);
            }
        } else if let Some(open) = term.find('<') {
            let close = term
                .find('>')
                .ok_or_else(|| Error::IndexSetParse(format!("unclosed ⟨⟩ in {expr:?}")))?;
            let gen_tok = term[open + 1..close].trim();
            let generator: u64 = if gen_tok == "p" {
                p
            } else {
                gen_tok
                    .parse()
                    .map_err(|_| Error::IndexSetParse(format!("bad generator {gen_tok:?}")))?
            };
            let coeff_tok = term[..open].trim();
            let coeff: i64 = if coeff_tok.is_empty() {
                1
            } else {
                coeff_tok
                    .parse()
                    .map_err(|_| Error::IndexSetParse(format!("bad coefficient {coeff_tok:?}")))?
            };
            if gcd(generator % n, n) != 1 {
                return Err(Error::IndexSetParse(format!(
                    "generator {generator} is not a unit mod {n}"
                )));
            }
            let coeff = coeff.rem_euclid(n as i64) as u64;
            let mut x = 1u64;
            loop {
                out.push(coeff * x % n);
                x = x * (generator % n) % n;
                if x == 1 {
                    break;
                }
            }
        } else {
            return Err(Error::IndexSetParse(format!("unrecognized term {term:?}")));
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_field::FieldParams;

    fn field(p: u64, f: u32) -> FieldCtx {
        FieldCtx::build(FieldParams::new(p, f).unwrap()).unwrap()
    }

    fn fx14() -> FXParams {
        FXParams {
            p1: 7,
            m: 1,
            variant: FXVariant::Classic,
            s: 1,
        }
    }

    #[test]
    fn cyclotomic_classes_partition() {
        let ctx = field(11, 3);
        let mut seen = vec![false; 1331];
        for i in 0..14 {
            let class = cyclotomic_class(&ctx, 14, i).unwrap();
            assert_eq!(class.len(), 95);
            for x in class {
                assert!(!seen[x as usize]);
                seen[x as usize] = true;
            }
        }
        assert_eq!(seen.iter().filter(|&&b| b).count(), 1330);
        // C_0 is the subgroup generated by omega^14: closed under product.
        let c0 = cyclotomic_class(&ctx, 14, 0).unwrap();
        let set: std::collections::HashSet<_> = c0.iter().copied().collect();
        for &x in c0.iter().take(10) {
            for &y in c0.iter().take(10) {
                assert!(set.contains(&ctx.mul(x, y)));
            }
        }
        assert!(cyclotomic_class(&ctx, 13, 0).is_err());
    }

    #[test]
    fn fx_construction_valid_sets() {
        let ctx = field(11, 3);
        let d = build_fx_diffset(&ctx, fx14(), &[0, 1, 6, 9, 10, 11, 12]).unwrap();
        assert_eq!(d.size(), 665);
        let d2 = build_fx_diffset(&ctx, fx14(), &[0, 1, 2, 3, 4, 5, 6]).unwrap();
        assert_eq!(d2.size(), 665);
        assert_eq!(d2.index_set, vec![0, 1, 2, 3, 4, 5, 6]);
    }

    #[test]
    fn fx_covering_condition_violation() {
        let ctx = field(11, 3);
        // {0,1,2,3,4,5,5} deduplicates to six residues and misses 6 mod 7.
        let err = build_fx_diffset(&ctx, fx14(), &[0, 1, 2, 3, 4, 5, 5]).unwrap_err();
        match err {
            Error::Hypotheses(v) => {
                assert!(v.iter().any(|s| s.contains("cover")), "{v:?}");
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn paley_basics() {
        let f7 = field(7, 1);
        let d = paley_diffset(&f7).unwrap();
        let members: Vec<u32> = (1..7).filter(|&x| d.contains(x)).collect();
        assert_eq!(members, vec![1, 2, 4]);
        assert_eq!(pairwise_intersection(&f7, &d, 1).unwrap(), 1);
        let f11 = field(11, 3);
        assert_eq!(paley_diffset(&f11).unwrap().size(), 665);
        let f13 = field(13, 1);
        assert!(paley_diffset(&f13).is_err());
    }

    #[test]
    fn skew_hadamard_verification() {
        let ctx = field(11, 3);
        let d = build_fx_diffset(&ctx, fx14(), &[0, 1, 6, 9, 10, 11, 12]).unwrap();
        let rep = verify_skew_hadamard(&ctx, &d, VerifyMode::Exact);
        assert!(rep.pass);
        assert_eq!(rep.lambda_expected, 332);
        assert_eq!(rep.shifts_checked, 1330);

        // Mutating one element breaks the property with a witness.
        let mut broken = d.clone();
        let inside = (1u32..).find(|&x| broken.contains(x)).unwrap();
        let outside = (1u32..).find(|&x| !broken.contains(x) && x as u64 != 0).unwrap();
        broken.bitmap[(inside >> 6) as usize] ^= 1u64 << (inside & 63);
        broken.bitmap[(outside >> 6) as usize] ^= 1u64 << (outside & 63);
        let rep2 = verify_skew_hadamard(&ctx, &broken, VerifyMode::Exact);
        assert!(!rep2.pass);
        assert!(!rep2.disjoint_union_ok || !rep2.failures.is_empty());
    }

    #[test]
    fn sampled_verification_is_deterministic() {
        let ctx = field(11, 3);
        let d = paley_diffset(&ctx).unwrap();
        let mode = VerifyMode::Sampled {
            samples: 100,
            seed: 7,
        };
        let a = verify_skew_hadamard(&ctx, &d, mode);
        let b = verify_skew_hadamard(&ctx, &d, mode);
        assert!(a.pass);
        assert_eq!(a, b);
    }

    #[test]
    fn partition_identity() {
        // |D ∩ (D+x)| + |D ∩ (-D+x)| + [x in D] = |D|.
        let ctx = field(11, 3);
        let d = build_fx_diffset(&ctx, fx14(), &[0, 1, 2, 3, 4, 5, 6]).unwrap();
        for k in [1u64, 17, 333] {
            let x = ctx.exp(k);
            let a = pairwise_intersection(&ctx, &d, x).unwrap();
            let mut b = 0u64;
            for &y in ctx.nonzero_elements() {
                if d.contains(y) && d.contains(ctx.sub(x, y)) {
                    b += 1;
                }
            }
            let ind = if d.contains(x) { 1 } else { 0 };
            assert_eq!(a + b + ind, d.size());
        }
    }

    #[test]
    fn index_set_transforms() {
        let i = vec![0u64, 1, 6, 9, 10, 11, 12];
        assert_eq!(transform_index_set(&i, 1, 14).unwrap(), i);
        let t = transform_index_set(&i, 5, 14).unwrap();
        assert_eq!(t, vec![0, 2, 3, 4, 5, 8, 13]);
        let back = transform_index_set(&t, 3, 14).unwrap(); // 3 = 5^{-1} mod 14
        assert_eq!(back, i);
        assert!(transform_index_set(&i, 7, 14).is_err());
        assert_eq!(inverse_transform_exponent(3, 14).unwrap(), 5);
    }

    #[test]
    fn generator_expression_parser() {
        // <11> mod 14 = {1, 11, 9}; -2<11> = {12, 6, 10}.
        let parsed = parse_index_set_expr("⟨p⟩ ∪ −2⟨p⟩ ∪ {0}", 11, 14).unwrap();
        assert_eq!(parsed, vec![0, 1, 6, 9, 10, 11, 12]);
        let ascii = parse_index_set_expr("<p> u -2<p> u {0}", 11, 14).unwrap();
        assert_eq!(ascii, parsed);
        let explicit = parse_index_set_expr("{0, 1, 2, 3, 4, 6, 12}", 11, 14).unwrap();
        assert_eq!(explicit, vec![0, 1, 2, 3, 4, 6, 12]);
        assert!(parse_index_set_expr("<7> u {0}", 11, 14).is_err());
        assert!(parse_index_set_expr("junk", 11, 14).is_err());
    }

    #[test]
    fn generalized_variant_hypotheses() {
        // (p, p1, f) = (3, 5, 5): ord_10(3) = 4 is even -> rejected.
        let ctx = field(3, 5);
        let fx = FXParams {
            p1: 5,
            m: 1,
            variant: FXVariant::Generalized,
            s: 1,
        };
        let err = build_fx_diffset(&ctx, fx, &[0, 1, 2, 3, 4]).unwrap_err();
        match err {
            Error::Hypotheses(v) => assert!(!v.is_empty()),
            other => panic!("unexpected error {other:?}"),
        }
    }
}
