//! Exact arithmetic in the cyclotomic integer ring `Z[zeta_p]`, the value
//! domain of every character sum in this crate.
//!
//! An element is a length-p vector of signed coefficients of
//! `1, zeta, ..., zeta^{p-1}`; the single relation
//! `1 + zeta + ... + zeta^{p-1} = 0` is applied so the top coefficient is
//! always zero. With that normalisation, equality is coefficient-wise.
//! Coefficients are 64-bit with checked arithmetic; an overflow aborts
//! loudly rather than wrapping.

/// An element of `Z[zeta_p]` in canonical form (top coefficient zero).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycInt {
    p: u64,
    coeffs: Vec<i64>,
}

fn checked_add(a: i64, b: i64) -> i64 {
    a.checked_add(b).expect("cyclotomic coefficient overflow")
}

fn checked_mul(a: i64, b: i64) -> i64 {
    a.checked_mul(b).expect("cyclotomic coefficient overflow")
}

impl CycInt {
    /// Canonicalise in place: subtract `c_{p-1} * (1 + zeta + ... + zeta^{p-1})`.
    fn reduce(mut self) -> CycInt {
        let top = self.coeffs[self.p as usize - 1];
        if top != 0 {
            for c in self.coeffs.iter_mut() {
                *c = checked_add(*c, -top);
            }
        }
        self
    }

    pub fn zero(p: u64) -> CycInt {
        CycInt {
            p,
            coeffs: vec![0; p as usize],
        }
    }

    pub fn from_int(p: u64, n: i64) -> CycInt {
        let mut out = CycInt::zero(p);
        out.coeffs[0] = n;
        out
    }

    /// `zeta_p^t`, exponent reduced mod p.
    pub fn root(p: u64, t: u64) -> CycInt {
        let mut out = CycInt::zero(p);
        out.coeffs[(t % p) as usize] = 1;
        out.reduce()
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Canonical coefficients of `1, zeta, ..., zeta^{p-1}` (last always 0).
    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &CycInt) -> CycInt {
        assert_eq!(self.p, other.p, "mixed cyclotomic orders");
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| checked_add(a, b))
            .collect();
        CycInt { p: self.p, coeffs }
    }

    pub fn neg(&self) -> CycInt {
        CycInt {
            p: self.p,
            coeffs: self.coeffs.iter().map(|&a| -a).collect(),
        }
    }

    pub fn sub(&self, other: &CycInt) -> CycInt {
        self.add(&other.neg())
    }

    pub fn scale(&self, n: i64) -> CycInt {
        CycInt {
            p: self.p,
            coeffs: self.coeffs.iter().map(|&a| checked_mul(a, n)).collect(),
        }
    }

    pub fn mul(&self, other: &CycInt) -> CycInt {
        assert_eq!(self.p, other.p, "mixed cyclotomic orders");
        let p = self.p as usize;
        let mut coeffs = vec![0i64; p];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let k = (i + j) % p;
                coeffs[k] = checked_add(coeffs[k], checked_mul(a, b));
            }
        }
        CycInt { p: self.p, coeffs }.reduce()
    }

    /// Add `n * zeta^t` in place; the workhorse of summation loops.
    pub fn add_root(&mut self, t: u64, n: i64) {
        let idx = (t % self.p) as usize;
        self.coeffs[idx] = checked_add(self.coeffs[idx], n);
        if idx == self.p as usize - 1 {
            let top = self.coeffs[idx];
            if top != 0 {
                for c in self.coeffs.iter_mut() {
                    *c = checked_add(*c, -top);
                }
            }
        }
    }

    /// Image under the Galois automorphism `zeta -> zeta^t`, `gcd(t, p) = 1`.
    pub fn galois(&self, t: u64) -> CycInt {
        assert!(t % self.p != 0, "not an automorphism");
        let p = self.p as usize;
        let mut coeffs = vec![0i64; p];
        for (i, &a) in self.coeffs.iter().enumerate() {
            let k = (i as u64 * t % self.p) as usize;
            coeffs[k] = checked_add(coeffs[k], a);
        }
        CycInt { p: self.p, coeffs }.reduce()
    }

    /// `Some(n)` iff the canonical form is the rational integer `n`.
    pub fn as_rational_integer(&self) -> Option<i64> {
        if self.coeffs[1..].iter().all(|&c| c == 0) {
            Some(self.coeffs[0])
        } else {
            None
        }
    }
}

impl std::fmt::Display for CycInt {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " {} ", if c < 0 { "-" } else { "+" })?;
            } else if c < 0 {
                write!(f, "-")?;
            }
            let a = c.unsigned_abs();
            match i {
                0 => write!(f, "{a}")?,
                _ => {
                    if a != 1 {
                        write!(f, "{a}*")?;
                    }
                    write!(f, "z^{i}")?;
                }
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
