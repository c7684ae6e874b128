//! Construction of the code `C_{D_c}` from its trace defining set and
//! exact enumeration of its weight enumerator and complete weight
//! enumerator over all `p^e` codewords.
//!
//! Enumeration is the ground truth everything else is checked against.
//! For speed it runs as a radix-p counting transform over `F_p^e`
//! ([`pairing_histograms`]): for every `u` the histogram of
//! `sum_j u_j x_j` over the member set is produced by pure integer
//! counting. Because `(u, x) -> sum u_j x_j` is a non-degenerate bilinear
//! pairing, `u -> <u, .>` runs over every `F_p`-linear functional exactly
//! once, just as `b -> Tr(b .)` does, so the multiset of histograms is
//! exactly the multiset of codeword symbol compositions. Per-codeword
//! routes ([`symbol_counts`], [`full_fiber_counts`]) stay as the plain
//! counting loops.

use std::collections::BTreeMap;
use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::charsums::WeilParams;
use crate::galois::{FieldCtx, FpElem, FqElem};
use crate::Error;

/// Full parameter tuple of a code: a [`WeilParams`] plus the defining
/// element `a != 0` and the trace value `c`.
#[derive(Clone)]
pub struct CodeParams {
    wp: WeilParams,
    a: FqElem,
    c: FpElem,
    condition_holds: bool,
}

impl CodeParams {
    pub fn new(wp: WeilParams, a: FqElem, c: FpElem) -> Result<CodeParams, Error> {
        if a.is_zero() {
            return Err(Error::ZeroA);
        }
        let c = FpElem(c.0 % wp.ctx().p());
        let condition_holds = wp.condition_holds(&a);
        Ok(CodeParams {
            wp,
            a,
            c,
            condition_holds,
        })
    }

    pub fn wp(&self) -> &WeilParams {
        &self.wp
    }

    pub fn ctx(&self) -> &FieldCtx {
        self.wp.ctx()
    }

    pub fn p(&self) -> u64 {
        self.ctx().p()
    }

    pub fn q(&self) -> u64 {
        self.ctx().q()
    }

    pub fn e(&self) -> u32 {
        self.ctx().e()
    }

    pub fn k(&self) -> u32 {
        self.wp.k()
    }

    pub fn d(&self) -> u32 {
        self.wp.d()
    }

    pub fn m(&self) -> u32 {
        self.wp.m()
    }

    pub fn s(&self) -> u32 {
        self.wp.s()
    }

    pub fn a(&self) -> &FqElem {
        &self.a
    }

    pub fn c(&self) -> FpElem {
        self.c
    }

    /// Whether `a^{(q-1)/(p^d+1)} = (-1)^s` (cached at construction).
    pub fn condition_holds(&self) -> bool {
        self.condition_holds
    }

    pub fn descriptor(&self) -> ParamsDescriptor {
        let t = self.ctx().tables();
        let a_theta_power = t.log[self.ctx().code_of(&self.a) as usize] as u64;
        ParamsDescriptor {
            p: self.p(),
            e: self.e(),
            k: self.k(),
            d: self.d(),
            m: self.m(),
            s: self.s(),
            a_coeffs: self.a.coeffs().to_vec(),
            a_theta_power,
            c: self.c.0,
            condition_holds: self.condition_holds,
        }
    }
}

/// Serializable echo of the parameters of a built code.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamsDescriptor {
    pub p: u64,
    pub e: u32,
    pub k: u32,
    pub d: u32,
    pub m: u32,
    pub s: u32,
    pub a_coeffs: Vec<u64>,
    pub a_theta_power: u64,
    pub c: u64,
    pub condition_holds: bool,
}

/// The defining set `D_c = { x in F_q^* : Tr(a x^{p^k+1}) = c }` in
/// canonical field order (`theta`-power order).
#[derive(Debug, Clone)]
pub struct DefiningSet {
    elements: Vec<FqElem>,
    c: FpElem,
}

impl DefiningSet {
    pub fn elements(&self) -> &[FqElem] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn c(&self) -> FpElem {
        self.c
    }
}

/// Exact map weight -> codeword frequency, including weight 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightEnumerator {
    pub counts: BTreeMap<u64, u64>,
}

impl WeightEnumerator {
    pub fn from_pairs(pairs: impl IntoIterator<Item = (u64, u64)>) -> WeightEnumerator {
        let mut counts = BTreeMap::new();
        for (w, f) in pairs {
            if f > 0 {
                *counts.entry(w).or_insert(0) += f;
            }
        }
        WeightEnumerator { counts }
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn min_nonzero_weight(&self) -> Option<u64> {
        self.counts.keys().find(|&&w| w > 0).copied()
    }

    pub fn max_weight(&self) -> Option<u64> {
        self.counts.keys().next_back().copied()
    }

    /// Frequency mass of nonzero weights.
    pub fn nonzero_total(&self) -> u64 {
        self.counts.iter().filter(|(&w, _)| w > 0).map(|(_, &f)| f).sum()
    }

    /// `sum_w w * A_w` over all weights.
    pub fn weighted_sum(&self) -> u128 {
        self.counts
            .iter()
            .map(|(&w, &f)| w as u128 * f as u128)
            .sum()
    }

    /// Render as `1 + 32z^162 + ...` in ascending weight order.
    pub fn polynomial_string(&self) -> String {
        let mut parts = Vec::new();
        for (&w, &f) in &self.counts {
            if w == 0 {
                parts.push(format!("{f}"));
            } else {
                parts.push(format!("{f}z^{w}"));
            }
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

/// Exact map from symbol-composition vector `(k_0, ..., k_{p-1})` to
/// codeword frequency.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompleteWeightEnumerator {
    pub counts: BTreeMap<Vec<u64>, u64>,
}

#[derive(Serialize, Deserialize)]
struct CweEntry {
    composition: Vec<u64>,
    frequency: u64,
}

impl Serialize for CompleteWeightEnumerator {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let entries: Vec<CweEntry> = self
            .counts
            .iter()
            .map(|(k, &v)| CweEntry {
                composition: k.clone(),
                frequency: v,
            })
            .collect();
        entries.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CompleteWeightEnumerator {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let entries = Vec::<CweEntry>::deserialize(d)?;
        Ok(CompleteWeightEnumerator {
            counts: entries
                .into_iter()
                .map(|e| (e.composition, e.frequency))
                .collect(),
        })
    }
}

impl CompleteWeightEnumerator {
    pub fn from_pairs(
        pairs: impl IntoIterator<Item = (Vec<u64>, u64)>,
    ) -> CompleteWeightEnumerator {
        let mut counts = BTreeMap::new();
        for (k, f) in pairs {
            if f > 0 {
                *counts.entry(k).or_insert(0) += f;
            }
        }
        CompleteWeightEnumerator { counts }
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    /// Project composition `(k_0, ..., k_{p-1})` to weight `n - k_0`.
    pub fn project_to_we(&self) -> WeightEnumerator {
        WeightEnumerator::from_pairs(self.counts.iter().map(|(k, &f)| {
            let n: u64 = k.iter().sum();
            (n - k[0], f)
        }))
    }
}

/// Everything the enumeration pass learns about one code.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CodeSummary {
    pub params: ParamsDescriptor,
    pub length: u64,
    pub dimension: u32,
    pub min_distance: u64,
    /// Number of `b` values mapping to each distinct codeword.
    pub multiplicity: u64,
    pub we: WeightEnumerator,
    pub cwe: CompleteWeightEnumerator,
}

/// All nonzero `x` with `Tr(a x^{p^k+1}) = c`, in canonical order.
pub fn defining_set(params: &CodeParams) -> Result<DefiningSet, Error> {
    let ctx = params.ctx();
    let t = ctx.tables();
    let qm1 = ctx.q() - 1;
    let exp = params.wp().monomial_exp();
    let la = t.log[ctx.code_of(params.a()) as usize] as u64;
    let want = params.c().0 as u8;
    let mut elements = Vec::new();
    for i in 0..qm1 {
        let tr = t.trace[t.pow[((i as u128 * exp as u128 + la as u128) % qm1 as u128) as usize]
            as usize];
        if tr == want {
            elements.push(ctx.element_from_code(t.pow[i as usize] as u64));
        }
    }
    if elements.is_empty() {
        return Err(Error::EmptyDefiningSet);
    }
    Ok(DefiningSet {
        elements,
        c: params.c(),
    })
}

/// Direct count of `{ x in F_q : Tr(a x^{p^k+1}) = c' }` (includes `x = 0`
/// when `c' = 0`).
pub fn count_fiber(params: &CodeParams, c: FpElem) -> u64 {
    let ctx = params.ctx();
    let t = ctx.tables();
    let qm1 = ctx.q() - 1;
    let exp = params.wp().monomial_exp();
    let la = t.log[ctx.code_of(params.a()) as usize] as u64;
    let want = (c.0 % ctx.p()) as u8;
    let mut count = if want == 0 { 1u64 } else { 0 };
    for i in 0..qm1 {
        let tr = t.trace[t.pow[((i as u128 * exp as u128 + la as u128) % qm1 as u128) as usize]
            as usize];
        if tr == want {
            count += 1;
        }
    }
    count
}

/// `n_c` for the code's own `c`.
pub fn count_nc(params: &CodeParams) -> u64 {
    count_fiber(params, params.c())
}

/// Symbol composition of the codeword indexed by `b` over the defining
/// set: entry `rho` counts coordinates with `Tr(bx) = rho`.
pub fn symbol_counts(params: &CodeParams, d: &DefiningSet, b: &FqElem) -> Vec<u64> {
    let ctx = params.ctx();
    let p = ctx.p() as usize;
    let mut counts = vec![0u64; p];
    if b.is_zero() {
        counts[0] = d.len() as u64;
        return counts;
    }
    let t = ctx.tables();
    let qm1 = ctx.q() - 1;
    let lb = t.log[ctx.code_of(b) as usize] as u64;
    for x in d.elements() {
        let lx = t.log[ctx.code_of(x) as usize] as u64;
        let tr = t.trace[t.pow[((lx + lb) % qm1) as usize] as usize];
        counts[tr as usize] += 1;
    }
    counts
}

/// Full-fiber count `N_rho(b, c) = #{ x in F_q : Tr(a x^{p^k+1}) = c and
/// Tr(bx) = rho }`, enumerating all of `F_q` (so `x = 0` is included when
/// `c = 0`). Entry `rho` of the returned vector.
pub fn full_fiber_counts(params: &CodeParams, b: &FqElem) -> Vec<u64> {
    let ctx = params.ctx();
    let p = ctx.p() as usize;
    let t = ctx.tables();
    let qm1 = ctx.q() - 1;
    let exp = params.wp().monomial_exp();
    let la = t.log[ctx.code_of(params.a()) as usize] as u64;
    let want = params.c().0 as u8;
    let lb = (!b.is_zero()).then(|| t.log[ctx.code_of(b) as usize] as u64);
    let mut counts = vec![0u64; p];
    if want == 0 {
        counts[0] += 1; // x = 0
    }
    for i in 0..qm1 {
        let tr_def = t.trace
            [t.pow[((i as u128 * exp as u128 + la as u128) % qm1 as u128) as usize] as usize];
        if tr_def != want {
            continue;
        }
        let rho = match lb {
            Some(lb) => t.trace[t.pow[((i + lb) % qm1) as usize] as usize],
            None => 0,
        };
        counts[rho as usize] += 1;
    }
    counts
}

/// Radix-p counting transform over `F_p^e`.
///
/// Input: the member set as element codes. Output, flattened as
/// `hist[u * p + t]`: for every `u` the count of members `x` with
/// `sum_j u_j x_j = t (mod p)`, where `u_j`, `x_j` are base-p digits.
/// Plain integer counting, one axis at a time.
fn pairing_histograms(p: u64, e: u32, q: u64, member_codes: &[u32]) -> Vec<u32> {
    let pu = p as usize;
    let qu = q as usize;
    let mut v = vec![0u32; qu * pu];
    for &code in member_codes {
        v[code as usize * pu] = 1;
    }
    let mut tmp = vec![0u32; pu * pu];
    let mut stride = 1usize;
    for _ in 0..e {
        let block = stride * pu;
        let mut base = 0usize;
        while base < qu {
            for lo in 0..stride {
                let start = base + lo;
                for vdig in 0..pu {
                    let src = (start + vdig * stride) * pu;
                    tmp[vdig * pu..(vdig + 1) * pu].copy_from_slice(&v[src..src + pu]);
                }
                // new[w][t] = sum_v old[v][t - w*v mod p]
                for w in 0..pu {
                    let dst = (start + w * stride) * pu;
                    let out = &mut v[dst..dst + pu];
                    out.fill(0);
                    for (vdig, old) in tmp.chunks_exact(pu).enumerate() {
                        let shift = (w * vdig) % pu;
                        for (j, &o) in old.iter().enumerate() {
                            let idx = j + shift;
                            out[if idx >= pu { idx - pu } else { idx }] += o;
                        }
                    }
                }
            }
            base += block;
        }
        stride *= pu;
    }
    v
}

/// Enumerate all `p^e` codewords of `C_{D_c}` and aggregate the exact
/// weight enumerator and complete weight enumerator.
///
/// The dimension is `log_p` of the number of distinct codewords; repeated
/// codewords are preserved through `multiplicity`.
pub fn build_code(params: &CodeParams) -> Result<CodeSummary, Error> {
    let d = defining_set(params)?;
    build_code_with(params, &d)
}

/// Same as [`build_code`] with a pre-built defining set.
pub fn build_code_with(params: &CodeParams, d: &DefiningSet) -> Result<CodeSummary, Error> {
    let ctx = params.ctx();
    let p = ctx.p();
    let q = ctx.q();
    let n = d.len() as u64;
    let member_codes: Vec<u32> = d
        .elements()
        .iter()
        .map(|x| ctx.code_of(x) as u32)
        .collect();
    let hist = pairing_histograms(p, ctx.e(), q, &member_codes);

    let pu = p as usize;
    let mut weight_counts = vec![0u64; n as usize + 1];
    let mut comp_counts: HashMap<Vec<u32>, u64> = HashMap::new();
    for u in 0..q as usize {
        let h = &hist[u * pu..(u + 1) * pu];
        debug_assert_eq!(h.iter().map(|&x| x as u64).sum::<u64>(), n);
        let weight = n - h[0] as u64;
        weight_counts[weight as usize] += 1;
        if let Some(f) = comp_counts.get_mut(h) {
            *f += 1;
        } else {
            comp_counts.insert(h.to_vec(), 1);
        }
    }

    let we = WeightEnumerator::from_pairs(
        weight_counts
            .iter()
            .enumerate()
            .filter(|(_, &f)| f > 0)
            .map(|(w, &f)| (w as u64, f)),
    );
    let cwe = CompleteWeightEnumerator::from_pairs(
        comp_counts
            .into_iter()
            .map(|(k, f)| (k.into_iter().map(|x| x as u64).collect(), f)),
    );

    let multiplicity = we.counts.get(&0).copied().unwrap_or(0);
    debug_assert!(multiplicity >= 1);
    debug_assert_eq!(q % multiplicity, 0);
    let distinct = q / multiplicity;
    let mut dimension = 0u32;
    let mut acc = 1u64;
    while acc < distinct {
        acc *= p;
        dimension += 1;
    }
    debug_assert_eq!(acc, distinct, "codeword count must be a power of p");
    let min_distance = we.min_nonzero_weight().unwrap_or(0);

    Ok(CodeSummary {
        params: params.descriptor(),
        length: n,
        dimension,
        min_distance,
        multiplicity,
        we,
        cwe,
    })
}
