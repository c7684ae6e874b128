//! Additive characters, quadratic Gauss sums, the Weil sums
//! `S(alpha, beta) = sum_x zeta^{Tr(alpha x^{p^k+1} + beta x)}`, and the
//! affine equation `f_a(X) = a^{p^k} X^{p^{2k}} + a X = -b^{p^k}` that
//! governs them.
//!
//! Every sum has two routes: direct summation over the field (the oracle)
//! and the closed form valid when `e/d` is even. Both are exact; the
//! direct route only relies on trace tables.

use std::sync::Arc;

use crate::cyclotomic::CycInt;
use crate::galois::{FieldCtx, FpElem, FqElem};
use crate::Error;

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Parameters of the Weil sum family: the field, the exponent parameter
/// `k`, and the derived quantities `d = gcd(k, e)`, `m = e/2`, `s = m/d`.
///
/// Construction enforces the standing hypothesis that `e` is even and
/// `e/d` is even (equivalently `d | m`).
#[derive(Debug, Clone)]
pub struct WeilParams {
    ctx: Arc<FieldCtx>,
    k: u32,
    d: u32,
    m: u32,
    s: u32,
}

impl WeilParams {
    pub fn new(ctx: Arc<FieldCtx>, k: u32) -> Result<WeilParams, Error> {
        let e = ctx.e();
        if k == 0 {
            return Err(Error::BadDegree);
        }
        if e % 2 != 0 {
            return Err(Error::OddE(e));
        }
        let d = gcd(k as u64, e as u64) as u32;
        let m = e / 2;
        if m % d != 0 {
            // e/d = 2m/d is odd exactly when d does not divide m
            return Err(Error::OddEOverD { e, k, d });
        }
        Ok(WeilParams {
            ctx,
            k,
            d,
            m,
            s: m / d,
        })
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn ctx_arc(&self) -> Arc<FieldCtx> {
        Arc::clone(&self.ctx)
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    /// `(-1)^s` materialised as a field element.
    pub fn minus_one_pow_s(&self) -> FqElem {
        if self.s % 2 == 1 {
            self.ctx.embed(FpElem(self.ctx.p() - 1))
        } else {
            self.ctx.one()
        }
    }

    /// Whether `alpha^{(q-1)/(p^d+1)} = (-1)^s`, the branch predicate of
    /// every closed form below. Evaluated by exact exponentiation.
    pub fn condition_holds(&self, alpha: &FqElem) -> bool {
        assert!(!alpha.is_zero());
        let pd = self.ctx.p().pow(self.d);
        let exp = (self.ctx.q() - 1) / (pd + 1);
        debug_assert_eq!((self.ctx.q() - 1) % (pd + 1), 0);
        self.ctx.pow(alpha, exp) == self.minus_one_pow_s()
    }

    /// Exponent `p^k + 1` of the monomial inside the sum.
    pub fn monomial_exp(&self) -> u64 {
        self.ctx.p().pow(self.k) + 1
    }
}

/// `chi_b(x) = zeta_p^{Tr(bx)}`.
pub fn additive_char(ctx: &FieldCtx, b: &FqElem, x: &FqElem) -> CycInt {
    CycInt::root(ctx.p(), ctx.trace(&ctx.mul(b, x)).0)
}

/// The quadratic Gauss sum `G_e = sum_{x != 0} eta_e(x) chi_1(x)`, by
/// direct summation over the multiplicative group.
pub fn gauss_sum_q(ctx: &FieldCtx) -> CycInt {
    let t = ctx.tables();
    let mut acc = CycInt::zero(ctx.p());
    for (i, &code) in t.pow.iter().enumerate() {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        acc.add_root(t.trace[code as usize] as u64, sign);
    }
    acc
}

/// `S(alpha, beta)` summed directly over all q field elements.
pub fn weil_sum_direct(wp: &WeilParams, alpha: &FqElem, beta: &FqElem) -> CycInt {
    let ctx = wp.ctx();
    let t = ctx.tables();
    let qm1 = ctx.q() - 1;
    let exp = wp.monomial_exp();
    let la = (!alpha.is_zero()).then(|| t.log[ctx.code_of(alpha) as usize] as u64);
    let lb = (!beta.is_zero()).then(|| t.log[ctx.code_of(beta) as usize] as u64);
    let mut acc = CycInt::from_int(ctx.p(), 1); // x = 0 contributes 1
    for i in 0..qm1 {
        let mut tr = 0u64;
        if let Some(la) = la {
            tr += t.trace[t.pow[((i * exp + la) % qm1) as usize] as usize] as u64;
        }
        if let Some(lb) = lb {
            tr += t.trace[t.pow[((i + lb) % qm1) as usize] as usize] as u64;
        }
        acc.add_root(tr % ctx.p(), 1);
    }
    acc
}

/// Closed form of `S(alpha, 0)` for nonzero `alpha`:
/// `(-1)^s p^m` off the special coset, `(-1)^{s+1} p^{m+d}` on it.
pub fn weil_sum_alpha0_closed(wp: &WeilParams, alpha: &FqElem) -> Result<i64, Error> {
    if alpha.is_zero() {
        return Err(Error::ZeroA);
    }
    let sign = if wp.s() % 2 == 0 { 1i64 } else { -1 };
    if !wp.condition_holds(alpha) {
        Ok(sign * (wp.ctx().p() as i64).pow(wp.m()))
    } else {
        Ok(-sign * (wp.ctx().p() as i64).pow(wp.m() + wp.d()))
    }
}

/// Complete solution set of `f_alpha(X) = alpha^{p^k} X^{p^{2k}} + alpha X
/// = -beta^{p^k}`, via the F_p-linearity of `f_alpha`.
///
/// The solution count is 0, 1 or `p^{2d}`.
pub fn solve_affine(wp: &WeilParams, alpha: &FqElem, beta: &FqElem) -> Vec<FqElem> {
    assert!(!alpha.is_zero());
    let ctx = wp.ctx();
    let p = ctx.p();
    let e = ctx.e() as usize;
    let pk = p.pow(wp.k());
    let p2k_pow = |x: &FqElem| {
        // X^{p^{2k}} with the exponent reduced as an automorphism power
        let mut y = x.clone();
        for _ in 0..(2 * wp.k() % ctx.e()).max(0) {
            y = ctx.frobenius(&y);
        }
        y
    };
    let a_pk = ctx.pow(alpha, pk);

    // Column j of the matrix is f_alpha(X^j) in the polynomial basis.
    let mut mat = vec![vec![0u64; e]; e];
    for j in 0..e {
        let mut basis = vec![0u64; e];
        basis[j] = 1;
        let xj = ctx.from_coeffs(&basis).unwrap();
        let img = ctx.add(&ctx.mul(&a_pk, &p2k_pow(&xj)), &ctx.mul(alpha, &xj));
        for (i, &c) in img.coeffs().iter().enumerate() {
            mat[i][j] = c;
        }
    }
    let rhs = ctx.neg(&ctx.pow(beta, pk));
    let rhs: Vec<u64> = rhs.coeffs().to_vec();

    match solve_linear_system(&mat, &rhs, p) {
        None => Vec::new(),
        Some((particular, kernel)) => {
            let mut out = Vec::with_capacity(p.pow(kernel.len() as u32) as usize);
            let mut combo = vec![0u64; kernel.len()];
            loop {
                let mut sol = particular.clone();
                for (c, kv) in combo.iter().zip(&kernel) {
                    for (s, k) in sol.iter_mut().zip(kv) {
                        *s = (*s + c * k) % p;
                    }
                }
                out.push(ctx.from_coeffs(&sol).unwrap());
                // odometer over F_p^dim
                let mut idx = 0;
                loop {
                    if idx == combo.len() {
                        return out;
                    }
                    combo[idx] += 1;
                    if combo[idx] < p {
                        break;
                    }
                    combo[idx] = 0;
                    idx += 1;
                }
            }
        }
    }
}

/// Gaussian elimination over F_p. Returns a particular solution and a
/// kernel basis, or `None` when inconsistent.
fn solve_linear_system(
    mat: &[Vec<u64>],
    rhs: &[u64],
    p: u64,
) -> Option<(Vec<u64>, Vec<Vec<u64>>)> {
    let rows = mat.len();
    let cols = mat[0].len();
    let mut aug: Vec<Vec<u64>> = mat
        .iter()
        .zip(rhs)
        .map(|(r, &b)| {
            let mut row = r.clone();
            row.push(b);
            row
        })
        .collect();

    let inv = |x: u64| -> u64 {
        // Fermat inverse; p is prime and x != 0
        let mut acc = 1u64;
        let mut base = x % p;
        let mut exp = p - 2;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            exp >>= 1;
        }
        acc
    };

    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| aug[i][c] != 0) else {
            continue;
        };
        aug.swap(r, pr);
        let iv = inv(aug[r][c]);
        for v in aug[r].iter_mut() {
            *v = *v * iv % p;
        }
        for i in 0..rows {
            if i != r && aug[i][c] != 0 {
                let f = aug[i][c];
                for j in 0..=cols {
                    let sub = f * aug[r][j] % p;
                    aug[i][j] = (aug[i][j] + p - sub) % p;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    // Inconsistent if any zero row has nonzero rhs.
    for row in aug.iter().skip(r) {
        if row[cols] != 0 {
            return None;
        }
    }
    let mut particular = vec![0u64; cols];
    for (i, &c) in pivot_cols.iter().enumerate() {
        particular[c] = aug[i][cols];
    }
    let mut kernel = Vec::new();
    for free in (0..cols).filter(|c| !pivot_cols.contains(c)) {
        let mut v = vec![0u64; cols];
        v[free] = 1;
        for (i, &c) in pivot_cols.iter().enumerate() {
            v[c] = (p - aug[i][free] % p) % p;
        }
        kernel.push(v);
    }
    Some((particular, kernel))
}

/// Closed form of `S(alpha, beta)` for `alpha, beta != 0`: zero when the
/// affine equation has no solution, otherwise the stated multiple of
/// `chi_1(-alpha x0^{p^k+1})` for any solution `x0`.
pub fn weil_sum_closed(wp: &WeilParams, alpha: &FqElem, beta: &FqElem) -> Result<CycInt, Error> {
    if alpha.is_zero() {
        return Err(Error::ZeroA);
    }
    let ctx = wp.ctx();
    let sols = solve_affine(wp, alpha, beta);
    if sols.is_empty() {
        return Ok(CycInt::zero(ctx.p()));
    }
    let chi_exp = |x0: &FqElem| {
        ctx.trace(&ctx.neg(&ctx.mul(alpha, &ctx.pow(x0, wp.monomial_exp()))))
            .0
    };
    let tr = chi_exp(&sols[0]);
    debug_assert!(
        sols.iter().all(|s| chi_exp(s) == tr),
        "character exponent must not depend on the solution choice"
    );
    let sign = if wp.s() % 2 == 0 { 1i64 } else { -1 };
    let scale = if !wp.condition_holds(alpha) {
        sign * (ctx.p() as i64).pow(wp.m())
    } else {
        -sign * (ctx.p() as i64).pow(wp.m() + wp.d())
    };
    Ok(CycInt::root(ctx.p(), tr).scale(scale))
}

/// Number of `b in F_q` for which `f_alpha(X) = -b^{p^k}` is solvable:
/// `p^{e-2d}` on the special coset, `p^e` (all of them) otherwise.
pub fn solvable_b_count(wp: &WeilParams, alpha: &FqElem) -> u64 {
    if !wp.condition_holds(alpha) {
        return wp.ctx().q();
    }
    solvable_b_map(wp, alpha).iter().filter(|&&s| s).count() as u64
}

/// Indicator, indexed by element code, of `{ b : f_alpha(X) = -b^{p^k}
/// solvable }`, computed by imaging `f_alpha` over the whole field.
pub fn solvable_b_map(wp: &WeilParams, alpha: &FqElem) -> Vec<bool> {
    let ctx = wp.ctx();
    let q = ctx.q();
    let t = ctx.tables();
    let qm1 = q - 1;
    let pk = ctx.p().pow(wp.k());
    let p2k = pk as u128 * pk as u128 % qm1 as u128;
    let la_pk = {
        let la = t.log[ctx.code_of(alpha) as usize] as u64;
        la as u128 * pk as u128 % qm1 as u128
    } as u64;
    let la = t.log[ctx.code_of(alpha) as usize] as u64;

    let mut image = vec![false; q as usize];
    image[0] = true; // f(0) = 0
    for i in 0..qm1 {
        // f(theta^i) = alpha^{p^k} theta^{i p^{2k}} + alpha theta^i
        let u = t.pow[((i as u128 * p2k + la_pk as u128) % qm1 as u128) as usize];
        let v = t.pow[((i + la) % qm1) as usize];
        let sum = ctx.add(
            &ctx.element_from_code(u as u64),
            &ctx.element_from_code(v as u64),
        );
        image[ctx.code_of(&sum) as usize] = true;
    }
    let half = qm1 / 2; // log of -1
    let mut out = vec![false; q as usize];
    out[0] = true; // b = 0 maps to 0, which is in the image
    for j in 0..qm1 {
        // -b^{p^k} for b = theta^j
        let code = t.pow[((j as u128 * pk as u128 + half as u128) % qm1 as u128) as usize];
        out[t.pow[j as usize] as usize] = image[code as usize];
    }
    out
}

/// Closed form of `sum_x zeta^{Tr(a2 x^2 + a1 x + a0)}` in terms of the
/// directly computed Gauss sum.
pub fn quad_sum_closed(
    ctx: &FieldCtx,
    a2: &FqElem,
    a1: &FqElem,
    a0: &FqElem,
) -> Result<CycInt, Error> {
    if a2.is_zero() {
        return Err(Error::ZeroA);
    }
    let four = ctx.embed(FpElem(4 % ctx.p()));
    let inv4a2 = ctx.inv(&ctx.mul(&four, a2))?;
    let shift = ctx.sub(a0, &ctx.mul(&ctx.mul(a1, a1), &inv4a2));
    let g = gauss_sum_q(ctx);
    Ok(CycInt::root(ctx.p(), ctx.trace(&shift).0).mul(&g.scale(ctx.eta_q(a2) as i64)))
}

/// Closed form of `sum_x eta_e(a2 x^2 + a1 x + a0)`.
pub fn eta_sum_closed(ctx: &FieldCtx, a2: &FqElem, a1: &FqElem, a0: &FqElem) -> Result<i64, Error> {
    if a2.is_zero() {
        return Err(Error::ZeroA);
    }
    let disc = ctx.sub(
        &ctx.mul(a1, a1),
        &ctx.mul(&ctx.embed(FpElem(4 % ctx.p())), &ctx.mul(a0, a2)),
    );
    let eta = ctx.eta_q(a2) as i64;
    if disc.is_zero() {
        Ok((ctx.q() as i64 - 1) * eta)
    } else {
        Ok(-eta)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::build_field;

    fn wp(p: u64, e: u32, k: u32) -> WeilParams {
        WeilParams::new(Arc::new(build_field(p, e).unwrap()), k).unwrap()
    }

    /// Table-free direct Weil sum; the oracle for the table-based path.
    fn weil_naive(wp: &WeilParams, alpha: &FqElem, beta: &FqElem) -> CycInt {
        let ctx = wp.ctx();
        let mut acc = CycInt::zero(ctx.p());
        for x in ctx.elements() {
            let inner = ctx.add(
                &ctx.mul(alpha, &ctx.pow(&x, wp.monomial_exp())),
                &ctx.mul(beta, &x),
            );
            acc.add_root(ctx.trace(&inner).0, 1);
        }
        acc
    }

    #[test]
    fn rejects_odd_e_over_d() {
        let ctx = Arc::new(build_field(3, 6).unwrap());
        assert!(WeilParams::new(Arc::clone(&ctx), 1).is_ok());
        assert_eq!(
            WeilParams::new(Arc::clone(&ctx), 2).unwrap_err(),
            Error::OddEOverD { e: 6, k: 2, d: 2 }
        );
        assert!(WeilParams::new(ctx, 3).is_ok());
    }

    #[test]
    fn additive_char_basics() {
        let ctx = build_field(3, 2).unwrap();
        let b = ctx.theta_pow(3);
        assert_eq!(
            additive_char(&ctx, &b, &ctx.zero()),
            CycInt::from_int(3, 1)
        );
        assert_eq!(
            additive_char(&ctx, &ctx.zero(), &b),
            CycInt::from_int(3, 1)
        );
        // find x with Tr(x) = 2 via the Frobenius oracle and pin chi_1(x)
        let x = ctx
            .elements()
            .find(|x| {
                let conj = ctx.frobenius(x);
                ctx.add(x, &conj) == ctx.embed(FpElem(2))
            })
            .unwrap();
        assert_eq!(additive_char(&ctx, &ctx.one(), &x), CycInt::root(3, 2));
    }

    #[test]
    fn gauss_sum_square_identities() {
        for (p, e) in [(3u64, 1u32), (3, 2), (5, 1), (5, 2), (7, 1)] {
            let ctx = build_field(p, e).unwrap();
            let g = gauss_sum_q(&ctx);
            let eta_m1 = ctx.eta_q(&ctx.embed(FpElem(p - 1))) as i64;
            let expected = CycInt::from_int(p, eta_m1 * ctx.q() as i64);
            assert_eq!(g.mul(&g), expected, "p={p} e={e}");
        }
        // frozen values: G^2 = -3 for p=3 and G^2 = 5 for p=5 over the prime field
        let g3 = gauss_sum_q(&build_field(3, 1).unwrap());
        assert_eq!(g3.mul(&g3), CycInt::from_int(3, -3));
        let g5 = gauss_sum_q(&build_field(5, 1).unwrap());
        assert_eq!(g5.mul(&g5), CycInt::from_int(5, 5));
    }

    #[test]
    fn weil_trivial_values() {
        let wp34 = wp(3, 4, 1);
        let ctx = wp34.ctx();
        assert_eq!(
            weil_sum_direct(&wp34, &ctx.zero(), &ctx.zero()),
            CycInt::from_int(3, 81)
        );
        for j in [0u64, 1, 7] {
            let beta = ctx.theta_pow(j);
            assert!(weil_sum_direct(&wp34, &ctx.zero(), &beta).is_zero());
        }
    }

    #[test]
    fn weil_direct_matches_naive() {
        let wp34 = wp(3, 4, 1);
        let ctx = wp34.ctx();
        for ai in [0u64, 1, 2, 5] {
            for bi in [0u64, 1, 3] {
                let alpha = if ai == 0 { ctx.zero() } else { ctx.theta_pow(ai) };
                let beta = if bi == 0 { ctx.zero() } else { ctx.theta_pow(bi) };
                assert_eq!(
                    weil_sum_direct(&wp34, &alpha, &beta),
                    weil_naive(&wp34, &alpha, &beta)
                );
            }
        }
    }

    #[test]
    fn weil_alpha0_closed_matches_direct_exhaustively() {
        for (p, e, k) in [(3u64, 2u32, 1u32), (3, 4, 1), (3, 4, 2), (3, 6, 1), (3, 6, 3)] {
            let w = wp(p, e, k);
            let ctx = w.ctx();
            for i in 0..ctx.q() - 1 {
                let alpha = ctx.theta_pow(i);
                let closed = weil_sum_alpha0_closed(&w, &alpha).unwrap();
                let direct = weil_sum_direct(&w, &alpha, &ctx.zero());
                assert_eq!(direct.as_rational_integer(), Some(closed), "p={p} e={e} k={k} i={i}");
            }
        }
    }

    #[test]
    fn weil_closed_frozen_examples() {
        // p=3, e=6, k=1: alpha = theta fails the coset condition
        let w = wp(3, 6, 1);
        let ctx = w.ctx();
        let alpha = ctx.theta_pow(1);
        assert!(!w.condition_holds(&alpha));
        assert_eq!(weil_sum_alpha0_closed(&w, &alpha).unwrap(), -27);
        assert_eq!(
            weil_sum_direct(&w, &alpha, &ctx.zero()).as_rational_integer(),
            Some(-27)
        );
        // alpha = theta^2 satisfies it (theta^364 = -1 = (-1)^3)
        let alpha2 = ctx.theta_pow(2);
        assert!(w.condition_holds(&alpha2));
        assert_eq!(weil_sum_alpha0_closed(&w, &alpha2).unwrap(), 81);

        // p=5, e=4, k=1: alpha = theta^3 fails (theta^312 = -1 != 1)
        let w54 = wp(5, 4, 1);
        let ctx54 = w54.ctx();
        let alpha3 = ctx54.theta_pow(3);
        assert!(!w54.condition_holds(&alpha3));
        assert_eq!(weil_sum_alpha0_closed(&w54, &alpha3).unwrap(), 25);
    }

    #[test]
    fn prime_subfield_elements_fail_only_by_sign() {
        // lambda^{(q-1)/(p^d+1)} = 1 for lambda in F_p^*, so the branch
        // is decided by (-1)^s alone.
        for (p, e, k) in [(3u64, 4u32, 1u32), (5, 4, 1), (3, 6, 1)] {
            let w = wp(p, e, k);
            let ctx = w.ctx();
            let pd = p.pow(w.d());
            let exp = (ctx.q() - 1) / (pd + 1);
            for lam in 1..p {
                let l = ctx.embed(FpElem(lam));
                assert_eq!(ctx.pow(&l, exp), ctx.one(), "p={p} e={e} lam={lam}");
                assert_eq!(w.condition_holds(&l), w.s() % 2 == 0);
            }
        }
    }

    #[test]
    fn solve_affine_solution_counts() {
        let w = wp(3, 4, 1);
        let ctx = w.ctx();
        // oracle: exhaustive solvability scan
        let check_exhaustive = |alpha: &FqElem, beta: &FqElem, sols: &[FqElem]| {
            let pk = 3u64.pow(w.k());
            let rhs = ctx.neg(&ctx.pow(beta, pk));
            let f = |x: &FqElem| {
                ctx.add(
                    &ctx.mul(&ctx.pow(alpha, pk), &ctx.pow(x, pk * pk)),
                    &ctx.mul(alpha, x),
                )
            };
            let brute: Vec<FqElem> = ctx.elements().filter(|x| f(x) == rhs).collect();
            let mut got = sols.to_vec();
            let mut want = brute;
            got.sort();
            want.sort();
            assert_eq!(got, want);
        };

        for ai in 0..8u64 {
            let alpha = ctx.theta_pow(ai);
            let holds = w.condition_holds(&alpha);
            let mut total = 0usize;
            for x in ctx.elements() {
                let sols = solve_affine(&w, &alpha, &x);
                assert!(sols.len() == 0 || sols.len() == 1 || sols.len() == 9);
                if x.is_zero() {
                    assert!(sols.contains(&ctx.zero()));
                }
                if !holds {
                    assert_eq!(sols.len(), 1, "permutation case must be uniquely solvable");
                }
                total += sols.len();
                if ai < 3 {
                    check_exhaustive(&alpha, &x, &sols);
                }
            }
            // nonempty fibers partition F_q
            assert_eq!(total, 81);
        }
    }

    #[test]
    fn weil_closed_matches_direct_at_3_4() {
        let w = wp(3, 4, 1);
        let ctx = w.ctx();
        for ai in 0..80u64 {
            let alpha = ctx.theta_pow(ai);
            for bi in 0..80u64 {
                let beta = ctx.theta_pow(bi);
                let closed = weil_sum_closed(&w, &alpha, &beta).unwrap();
                let direct = weil_sum_direct(&w, &alpha, &beta);
                assert_eq!(closed, direct, "ai={ai} bi={bi}");
            }
        }
    }

    #[test]
    fn solution_choice_does_not_matter() {
        let w = wp(3, 4, 1);
        let ctx = w.ctx();
        let alpha = (0..80)
            .map(|i| ctx.theta_pow(i))
            .find(|a| w.condition_holds(a))
            .unwrap();
        let mut checked = 0;
        for bi in 0..80u64 {
            let beta = ctx.theta_pow(bi);
            let sols = solve_affine(&w, &alpha, &beta);
            if sols.len() > 1 {
                let exps: std::collections::HashSet<u64> = sols
                    .iter()
                    .map(|x0| {
                        ctx.trace(&ctx.neg(&ctx.mul(&alpha, &ctx.pow(x0, w.monomial_exp()))))
                            .0
                    })
                    .collect();
                assert_eq!(exps.len(), 1);
                checked += 1;
            }
        }
        assert!(checked > 0);
    }

    #[test]
    fn solvable_counts() {
        // p=3, e=6, k=1, a=theta^2: condition holds, #S = 3^4
        let w = wp(3, 6, 1);
        let a = w.ctx().theta_pow(2);
        assert!(w.condition_holds(&a));
        assert_eq!(solvable_b_count(&w, &a), 81);

        // p=5, e=4, k=1, a=theta^3: condition fails, every b is solvable
        let w54 = wp(5, 4, 1);
        let a3 = w54.ctx().theta_pow(3);
        assert_eq!(solvable_b_count(&w54, &a3), 625);

        // p=3, e=4, k=1, a=1: 1^{20} = 1 = (-1)^2, condition holds
        let w34 = wp(3, 4, 1);
        let one = w34.ctx().one();
        assert!(w34.condition_holds(&one));
        assert_eq!(solvable_b_count(&w34, &one), 9);
        // oracle: exhaustive solvability scan
        let brute = w34
            .ctx()
            .elements()
            .filter(|b| !solve_affine(&w34, &one, b).is_empty())
            .count() as u64;
        assert_eq!(brute, 9);
    }

    #[test]
    fn quad_sum_closed_matches_direct() {
        let ctx = build_field(3, 2).unwrap();
        let direct = |a2: &FqElem, a1: &FqElem, a0: &FqElem| {
            let mut acc = CycInt::zero(3);
            for x in ctx.elements() {
                let fx = ctx.add(&ctx.add(&ctx.mul(a2, &ctx.mul(&x, &x)), &ctx.mul(a1, &x)), a0);
                acc.add_root(ctx.trace(&fx).0, 1);
            }
            acc
        };
        let zero = ctx.zero();
        for a2i in 0..8u64 {
            let a2 = ctx.theta_pow(a2i);
            for a1 in ctx.elements() {
                assert_eq!(
                    quad_sum_closed(&ctx, &a2, &a1, &zero).unwrap(),
                    direct(&a2, &a1, &zero)
                );
            }
        }
        // substitution sanity: a2=1, a1=0, a0=0 gives eta(1) G = G
        assert_eq!(
            quad_sum_closed(&ctx, &ctx.one(), &zero, &zero).unwrap(),
            gauss_sum_q(&ctx)
        );
        // a0 shift multiplies by zeta^{Tr(delta)}
        let delta = ctx.theta_pow(5);
        let shifted = quad_sum_closed(&ctx, &ctx.one(), &zero, &delta).unwrap();
        let base = quad_sum_closed(&ctx, &ctx.one(), &zero, &zero).unwrap();
        assert_eq!(shifted, base.mul(&CycInt::root(3, ctx.trace(&delta).0)));
    }

    #[test]
    fn eta_sum_closed_matches_direct() {
        let ctx = build_field(3, 2).unwrap();
        let direct = |a2: &FqElem, a1: &FqElem, a0: &FqElem| {
            ctx.elements()
                .map(|x| {
                    let fx =
                        ctx.add(&ctx.add(&ctx.mul(a2, &ctx.mul(&x, &x)), &ctx.mul(a1, &x)), a0);
                    ctx.eta_q(&fx) as i64
                })
                .sum::<i64>()
        };
        for a2i in 0..8u64 {
            let a2 = ctx.theta_pow(a2i);
            for a1 in ctx.elements() {
                for a0i in [0u64, 1, 4] {
                    let a0 = if a0i == 0 { ctx.zero() } else { ctx.theta_pow(a0i) };
                    assert_eq!(
                        eta_sum_closed(&ctx, &a2, &a1, &a0).unwrap(),
                        direct(&a2, &a1, &a0),
                        "a2i={a2i} a0i={a0i}"
                    );
                }
            }
        }
        // frozen endpoints
        assert_eq!(
            eta_sum_closed(&ctx, &ctx.one(), &ctx.zero(), &ctx.zero()).unwrap(),
            8
        );
        let ctx5 = build_field(5, 1).unwrap();
        let m1 = ctx5.embed(FpElem(4));
        assert_eq!(
            eta_sum_closed(&ctx5, &ctx5.one(), &ctx5.zero(), &m1).unwrap(),
            -1
        );
    }
}
