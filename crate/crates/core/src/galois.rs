//! Exact arithmetic in `F_p` and `F_{p^e}`: deterministic field
//! construction, trace maps and quadratic characters.
//!
//! A field is modelled as `F_p[X]/(f)` where `f` is the lexicographically
//! least monic primitive polynomial of degree `e` (coefficients compared
//! low-degree-first). The class of `X` is then a generator of the
//! multiplicative group, written `theta` throughout. Elements carry no
//! back-reference to their field; every operation takes the [`FieldCtx`]
//! explicitly.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::Error;

/// An element of the prime field `F_p`, held reduced to `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FpElem(pub u64);

impl FpElem {
    pub fn reduce(v: i64, p: u64) -> FpElem {
        FpElem(v.rem_euclid(p as i64) as u64)
    }

    pub fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

/// An element of `F_{p^e}` as coefficients of `1, X, ..., X^{e-1}`,
/// each reduced to `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FqElem {
    coeffs: Vec<u64>,
}

impl FqElem {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

/// Lookup tables for a constructed field, built lazily on first use.
///
/// `pow[i]` is the code of `theta^i`, `log` inverts it (`log[0]` is a
/// sentinel), and `trace` maps every element code to its absolute trace.
/// Codes are little-endian base-p digit packings of the coefficient vector.
pub struct FieldTables {
    pub pow: Vec<u32>,
    pub log: Vec<u32>,
    pub trace: Vec<u8>,
}

pub const LOG_ZERO: u32 = u32::MAX;

/// A constructed extension field `F_{p^e}` with its modulus polynomial,
/// canonical generator `theta`, and cached basis traces.
///
/// Immutable after construction and safe to share across threads.
pub struct FieldCtx {
    p: u64,
    e: u32,
    q: u64,
    /// Monic modulus, `modulus[j]` = coefficient of `X^j`, length `e + 1`.
    modulus: Vec<u64>,
    theta: FqElem,
    /// `Tr(X^j)` for `j = 0..e`.
    basis_traces: Vec<u64>,
    tables: OnceLock<FieldTables>,
}

impl std::fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p)
            .field("e", &self.e)
            .field("modulus", &self.modulus)
            .finish()
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime factors of `n` by trial division.
fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn mod_pow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = (acc as u128 * base as u128 % m as u128) as u64;
        }
        base = (base as u128 * base as u128 % m as u128) as u64;
        exp >>= 1;
    }
    acc
}

/// Quadratic character of `F_p` extended by zero: `1` on nonzero squares,
/// `-1` on non-squares, `0` at zero.
pub fn eta_p(p: u64, x: FpElem) -> i32 {
    debug_assert!(x.0 < p);
    if x.0 == 0 {
        return 0;
    }
    if mod_pow(x.0, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// Least primitive root modulo the odd prime `p`.
pub fn prime_generator(p: u64) -> FpElem {
    let factors = prime_factors(p - 1);
    for g in 2..p {
        if factors.iter().all(|&r| mod_pow(g, (p - 1) / r, p) != 1) {
            return FpElem(g);
        }
    }
    unreachable!("every prime has a primitive root")
}

/// Multiply two coefficient vectors modulo `modulus` over `F_p`.
/// `modulus` is monic of degree `e`; inputs have length `e`.
fn poly_mul_mod(a: &[u64], b: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
    let e = a.len();
    let mut prod = vec![0u64; 2 * e - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ai * bj) % p;
        }
    }
    // X^e = -(modulus[0..e]); fold down from the top.
    for i in (e..2 * e - 1).rev() {
        let c = prod[i];
        if c == 0 {
            continue;
        }
        prod[i] = 0;
        for j in 0..e {
            if modulus[j] != 0 {
                let sub = c * modulus[j] % p;
                prod[i - e + j] = (prod[i - e + j] + p - sub) % p;
            }
        }
    }
    prod.truncate(e);
    prod
}

fn poly_pow_mod(base: &[u64], mut exp: u64, modulus: &[u64], p: u64) -> Vec<u64> {
    let e = base.len();
    let mut acc = vec![0u64; e];
    acc[0] = 1;
    let mut b = base.to_vec();
    while exp > 0 {
        if exp & 1 == 1 {
            acc = poly_mul_mod(&acc, &b, modulus, p);
        }
        b = poly_mul_mod(&b, &b, modulus, p);
        exp >>= 1;
    }
    acc
}

fn is_one(v: &[u64]) -> bool {
    v[0] == 1 && v[1..].iter().all(|&c| c == 0)
}

/// Build `F_{p^e}` deterministically.
///
/// The modulus is the lexicographically least monic primitive polynomial
/// of degree `e` over `F_p` (coefficient tuples compared low-degree-first),
/// so the class of `X` generates the multiplicative group.
pub fn build_field(p: u64, e: u32) -> Result<FieldCtx, Error> {
    if p < 3 || p % 2 == 0 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    if e == 0 {
        return Err(Error::BadDegree);
    }
    let q = p
        .checked_pow(e)
        .filter(|&q| q - 1 <= u32::MAX as u64)
        .ok_or(Error::FieldTooLarge)?;
    let factors = prime_factors(q - 1);

    let ed = e as usize;
    let mut modulus = None;
    // Candidate tuples (c_0, ..., c_{e-1}) in lexicographic order: c_0 is
    // the most significant digit of the scan counter.
    't: for n in 0..q {
        let mut cand = vec![0u64; ed + 1];
        cand[ed] = 1;
        let mut rem = n;
        for j in (0..ed).rev() {
            // digit for coefficient index (ed - 1 - j) varies fastest
            cand[ed - 1 - j] = rem / p.pow(j as u32);
            rem %= p.pow(j as u32);
        }
        // X must have multiplicative order exactly q - 1 in F_p[X]/(cand);
        // that forces the quotient to be a field, so irreducibility comes free.
        let mut x = vec![0u64; ed];
        if ed == 1 {
            x[0] = (p - cand[0]) % p;
        } else {
            x[1] = 1;
        }
        if !is_one(&poly_pow_mod(&x, q - 1, &cand, p)) {
            continue 't;
        }
        for &r in &factors {
            if is_one(&poly_pow_mod(&x, (q - 1) / r, &cand, p)) {
                continue 't;
            }
        }
        modulus = Some((cand, FqElem { coeffs: x }));
        break;
    }
    let (modulus, theta) =
        modulus.expect("a primitive polynomial of every degree exists over F_p");

    let mut ctx = FieldCtx {
        p,
        e,
        q,
        modulus,
        theta,
        basis_traces: Vec::new(),
        tables: OnceLock::new(),
    };
    let mut basis_traces = Vec::with_capacity(ed);
    for j in 0..ed {
        let mut b = vec![0u64; ed];
        b[j] = 1;
        basis_traces.push(ctx.trace_by_frobenius(&FqElem { coeffs: b }).0);
    }
    ctx.basis_traces = basis_traces;
    Ok(ctx)
}

impl FieldCtx {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn theta(&self) -> &FqElem {
        &self.theta
    }

    pub fn zero(&self) -> FqElem {
        FqElem {
            coeffs: vec![0; self.e as usize],
        }
    }

    pub fn one(&self) -> FqElem {
        self.embed(FpElem(1))
    }

    /// The scalar `v` viewed as a constant polynomial.
    pub fn embed(&self, v: FpElem) -> FqElem {
        let mut coeffs = vec![0; self.e as usize];
        coeffs[0] = v.0 % self.p;
        FqElem { coeffs }
    }

    /// Build an element from raw coefficients (reduced mod p).
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<FqElem, Error> {
        if coeffs.len() != self.e as usize {
            return Err(Error::WrongField { expected: self.e });
        }
        Ok(FqElem {
            coeffs: coeffs.iter().map(|&c| c % self.p).collect(),
        })
    }

    /// `theta^t` for `t` reduced modulo `q - 1`.
    pub fn theta_pow(&self, t: u64) -> FqElem {
        self.pow(&self.theta, t % (self.q - 1))
    }

    /// Little-endian base-p packing of the coefficient vector.
    pub fn code_of(&self, x: &FqElem) -> u64 {
        let mut code = 0u64;
        for &c in x.coeffs.iter().rev() {
            code = code * self.p + c;
        }
        code
    }

    pub fn element_from_code(&self, mut code: u64) -> FqElem {
        let mut coeffs = vec![0u64; self.e as usize];
        for c in coeffs.iter_mut() {
            *c = code % self.p;
            code /= self.p;
        }
        debug_assert_eq!(code, 0);
        FqElem { coeffs }
    }

    pub fn add(&self, a: &FqElem, b: &FqElem) -> FqElem {
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| (x + y) % self.p)
            .collect();
        FqElem { coeffs }
    }

    pub fn sub(&self, a: &FqElem, b: &FqElem) -> FqElem {
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| (x + self.p - y) % self.p)
            .collect();
        FqElem { coeffs }
    }

    pub fn neg(&self, a: &FqElem) -> FqElem {
        let coeffs = a.coeffs.iter().map(|&x| (self.p - x) % self.p).collect();
        FqElem { coeffs }
    }

    pub fn scale(&self, a: &FqElem, s: FpElem) -> FqElem {
        let coeffs = a.coeffs.iter().map(|&x| x * s.0 % self.p).collect();
        FqElem { coeffs }
    }

    pub fn mul(&self, a: &FqElem, b: &FqElem) -> FqElem {
        FqElem {
            coeffs: poly_mul_mod(&a.coeffs, &b.coeffs, &self.modulus, self.p),
        }
    }

    pub fn pow(&self, a: &FqElem, exp: u64) -> FqElem {
        FqElem {
            coeffs: poly_pow_mod(&a.coeffs, exp, &self.modulus, self.p),
        }
    }

    pub fn inv(&self, a: &FqElem) -> Result<FqElem, Error> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.q - 2))
    }

    pub fn frobenius(&self, a: &FqElem) -> FqElem {
        self.pow(a, self.p)
    }

    fn trace_by_frobenius(&self, x: &FqElem) -> FpElem {
        let mut acc = x.clone();
        let mut conj = x.clone();
        for _ in 1..self.e {
            conj = self.frobenius(&conj);
            acc = self.add(&acc, &conj);
        }
        debug_assert!(
            acc.coeffs[1..].iter().all(|&c| c == 0),
            "trace must land in the prime field"
        );
        FpElem(acc.coeffs[0])
    }

    /// Absolute trace `Tr(x) = x + x^p + ... + x^{p^{e-1}}` into `F_p`.
    pub fn trace(&self, x: &FqElem) -> FpElem {
        if self.basis_traces.is_empty() {
            return self.trace_by_frobenius(x);
        }
        // Linearity over the cached basis traces.
        let mut acc = 0u64;
        for (c, t) in x.coeffs.iter().zip(&self.basis_traces) {
            acc = (acc + c * t) % self.p;
        }
        FpElem(acc)
    }

    /// Quadratic character of `F_q` extended by `eta_e(0) = 0`.
    pub fn eta_q(&self, x: &FqElem) -> i32 {
        if x.is_zero() {
            return 0;
        }
        if let Some(t) = self.tables.get() {
            let lg = t.log[self.code_of(x) as usize];
            return if lg % 2 == 0 { 1 } else { -1 };
        }
        let half = self.pow(x, (self.q - 1) / 2);
        if is_one(&half.coeffs) {
            1
        } else {
            debug_assert_eq!(half, self.embed(FpElem(self.p - 1)));
            -1
        }
    }

    /// Discrete-log, power and trace tables; built once on first use.
    pub fn tables(&self) -> &FieldTables {
        self.tables.get_or_init(|| {
            assert!(self.p < 256, "trace table packs traces into u8");
            let q = self.q as usize;
            let mut pow = Vec::with_capacity(q - 1);
            let mut log = vec![LOG_ZERO; q];
            let mut x = self.one();
            for i in 0..(q as u64 - 1) {
                let code = self.code_of(&x);
                pow.push(code as u32);
                debug_assert_eq!(log[code as usize], LOG_ZERO, "theta order too small");
                log[code as usize] = i as u32;
                x = self.mul(&x, &self.theta);
            }
            debug_assert!(is_one(&x.coeffs), "theta must have order q - 1");
            let mut trace = vec![0u8; q];
            for (code, slot) in trace.iter_mut().enumerate() {
                let mut rem = code as u64;
                let mut acc = 0u64;
                for &bt in &self.basis_traces {
                    acc += (rem % self.p) * bt;
                    rem /= self.p;
                }
                *slot = (acc % self.p) as u8;
            }
            FieldTables { pow, log, trace }
        })
    }

    /// All field elements in canonical order: `0, theta^0, theta^1, ...`.
    pub fn elements(&self) -> impl Iterator<Item = FqElem> + '_ {
        let t = self.tables();
        std::iter::once(self.zero())
            .chain(t.pow.iter().map(|&c| self.element_from_code(c as u64)))
    }
}
