//! Arithmetic in GF(p^e).
//!
//! Elements are indexed `0..q`: the index of `c_0 + c_1 x + ... + c_{e-1} x^{e-1}`
//! is `c_0 + c_1 p + ... + c_{e-1} p^{e-1}`, so 0 and 1 are the additive and
//! multiplicative identities. The reduction polynomial is the least monic
//! irreducible of degree `e` when its non-leading coefficients are compared
//! lexicographically from `x^{e-1}` down to the constant term.
//!
//! Fields with `q <= 256` carry full addition, multiplication and inverse
//! tables; larger fields (up to 2^16) compute on the coefficient vectors.

use crate::error::{Error, Result};

pub const MAX_ORDER: u32 = 1 << 16;
const TABLE_LIMIT: u32 = 256;

pub type Element = u32;

#[derive(Clone)]
pub struct FieldSpec {
    p: u32,
    e: u32,
    q: u32,
    /// Low-order coefficients of the monic reduction polynomial (length e).
    modulus: Vec<u32>,
    tables: Option<Tables>,
}

#[derive(Clone)]
struct Tables {
    add: Vec<u16>,
    mul: Vec<u16>,
    inv: Vec<u16>,
}

impl std::fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GF({}^{}) mod {:?}", self.p, self.e, self.reduction_polynomial())
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime-power factorization, ascending by prime.
pub fn factorize(mut n: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    let mut d = 2u32;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// `Some((p, e))` when `q = p^e` for a prime `p`.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    match factorize(q).as_slice() {
        [(p, e)] => Some((*p, *e)),
        _ => None,
    }
}

impl FieldSpec {
    pub fn new(p: u32, e: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if e == 0 {
            return Err(Error::ZeroExponent);
        }
        let q = (p as u64).checked_pow(e).filter(|&q| q <= MAX_ORDER as u64);
        let Some(q) = q else {
            return Err(Error::FieldTooLarge { p, e });
        };
        let q = q as u32;
        let modulus = least_irreducible(p, e);
        let mut field = FieldSpec {
            p,
            e,
            q,
            modulus,
            tables: None,
        };
        if q <= TABLE_LIMIT {
            field.tables = Some(field.build_tables());
        }
        Ok(field)
    }

    /// Field of order `q`, which must be a prime power.
    pub fn with_order(q: u32) -> Result<Self> {
        let (p, e) = prime_power(q).ok_or_else(|| {
            Error::InvalidParameter(format!("field order {q} is not a prime power"))
        })?;
        FieldSpec::new(p, e)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn elements(&self) -> std::ops::Range<Element> {
        0..self.q
    }

    /// Full monic reduction polynomial, constant term first.
    pub fn reduction_polynomial(&self) -> Vec<u32> {
        let mut v = self.modulus.clone();
        v.push(1);
        v
    }

    fn check(&self, a: Element) -> Result<()> {
        if a < self.q {
            Ok(())
        } else {
            Err(Error::NotAnElement(a))
        }
    }

    fn digits(&self, mut a: Element) -> Vec<u32> {
        let mut d = vec![0; self.e as usize];
        for c in d.iter_mut() {
            *c = a % self.p;
            a /= self.p;
        }
        d
    }

    fn undigits(&self, d: &[u32]) -> Element {
        d.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    fn add_slow(&self, a: Element, b: Element) -> Element {
        if self.e == 1 {
            return (a + b) % self.p;
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        self.undigits(&s)
    }

    fn mul_slow(&self, a: Element, b: Element) -> Element {
        if self.e == 1 {
            return ((a as u64 * b as u64) % self.p as u64) as u32;
        }
        let p = self.p as u64;
        let e = self.e as usize;
        let (da, db) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u64; 2 * e - 1];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        // reduce: x^e = -(modulus)
        for k in (e..prod.len()).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for (i, &m) in self.modulus.iter().enumerate() {
                let sub = c * m as u64 % p;
                prod[k - e + i] = (prod[k - e + i] + p - sub) % p;
            }
        }
        let d: Vec<u32> = prod[..e].iter().map(|&c| c as u32).collect();
        self.undigits(&d)
    }

    fn pow_slow(&self, mut a: Element, mut k: u32) -> Element {
        let mut acc = 1;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul_slow(acc, a);
            }
            a = self.mul_slow(a, a);
            k >>= 1;
        }
        acc
    }

    fn build_tables(&self) -> Tables {
        let q = self.q as usize;
        let mut add = vec![0u16; q * q];
        let mut mul = vec![0u16; q * q];
        let mut inv = vec![0u16; q];
        for a in 0..q {
            for b in 0..q {
                add[a * q + b] = self.add_slow(a as u32, b as u32) as u16;
                let m = self.mul_slow(a as u32, b as u32);
                mul[a * q + b] = m as u16;
                if m == 1 {
                    inv[a] = b as u16;
                }
            }
        }
        Tables { add, mul, inv }
    }

    pub fn add(&self, a: Element, b: Element) -> Element {
        debug_assert!(a < self.q && b < self.q);
        match &self.tables {
            Some(t) => t.add[(a * self.q + b) as usize] as u32,
            None => self.add_slow(a, b),
        }
    }

    pub fn neg(&self, a: Element) -> Element {
        if self.e == 1 {
            return (self.p - a) % self.p;
        }
        let d: Vec<u32> = self.digits(a).iter().map(|&c| (self.p - c) % self.p).collect();
        self.undigits(&d)
    }

    pub fn sub(&self, a: Element, b: Element) -> Element {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Element, b: Element) -> Element {
        debug_assert!(a < self.q && b < self.q);
        match &self.tables {
            Some(t) => t.mul[(a * self.q + b) as usize] as u32,
            None => self.mul_slow(a, b),
        }
    }

    pub fn inv(&self, a: Element) -> Result<Element> {
        self.check(a)?;
        if a == 0 {
            return Err(Error::InverseOfZero);
        }
        Ok(match &self.tables {
            Some(t) => t.inv[a as usize] as u32,
            None => self.pow_slow(a, self.q - 2),
        })
    }

    /// Checked addition for externally supplied indices.
    pub fn try_add(&self, a: Element, b: Element) -> Result<Element> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.add(a, b))
    }

    pub fn try_mul(&self, a: Element, b: Element) -> Result<Element> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul(a, b))
    }

    /// `sum_i coeffs[i] x^i`, evaluated in Horner order.
    pub fn poly_eval(&self, coeffs: &[Element], x: Element) -> Element {
        coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| self.add(self.mul(acc, x), c))
    }
}

/// Trial division over GF(p): is the monic polynomial (constant term first,
/// leading 1 implied) irreducible?
fn is_irreducible(p: u32, low: &[u32]) -> bool {
    let e = low.len();
    let mut f: Vec<u32> = low.to_vec();
    f.push(1);
    for deg in 1..=e / 2 {
        // all monic divisors of degree `deg`
        let count = (p as u64).pow(deg as u32);
        for idx in 0..count {
            let mut g = Vec::with_capacity(deg + 1);
            let mut t = idx;
            for _ in 0..deg {
                g.push((t % p as u64) as u32);
                t /= p as u64;
            }
            g.push(1);
            if poly_rem_is_zero(p, &f, &g) {
                return false;
            }
        }
    }
    true
}

fn poly_rem_is_zero(p: u32, f: &[u32], g: &[u32]) -> bool {
    let p64 = p as u64;
    let mut r: Vec<u64> = f.iter().map(|&c| c as u64).collect();
    let dg = g.len() - 1;
    for k in (dg..r.len()).rev() {
        let c = r[k];
        if c == 0 {
            continue;
        }
        for (i, &gi) in g.iter().enumerate() {
            let sub = c * gi as u64 % p64;
            r[k - dg + i] = (r[k - dg + i] + p64 - sub) % p64;
        }
    }
    r[..dg].iter().all(|&c| c == 0)
}

fn least_irreducible(p: u32, e: u32) -> Vec<u32> {
    let e = e as usize;
    let total = (p as u64).pow(e as u32);
    // `idx` enumerates (c_{e-1}, ..., c_0) lexicographically, c_{e-1} most significant
    for idx in 0..total {
        let mut low = vec![0u32; e];
        let mut t = idx;
        for c in low.iter_mut() {
            *c = (t % p as u64) as u32;
            t /= p as u64;
        }
        if is_irreducible(p, &low) {
            return low;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists over GF(p)")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn exhaustive_axioms(f: &FieldSpec) {
        let q = f.order();
        for a in 0..q {
            assert_eq!(f.add(a, 0), a);
            assert_eq!(f.mul(a, 1), a);
            assert_eq!(f.add(a, f.neg(a)), 0);
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            }
            for b in 0..q {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for c in 0..q {
                    assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                    assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }

    #[test]
    fn prime_field_is_modular() {
        let f = FieldSpec::new(5, 1).unwrap();
        for a in 0..5 {
            for b in 0..5 {
                assert_eq!(f.add(a, b), (a + b) % 5);
                assert_eq!(f.mul(a, b), (a * b) % 5);
            }
        }
        assert_eq!(f.inv(2).unwrap(), 3);
    }

    #[test]
    fn gf4_uses_x2_x_1() {
        let f = FieldSpec::new(2, 2).unwrap();
        assert_eq!(f.reduction_polynomial(), vec![1, 1, 1]);
        // a = x has index 2; a^2 = a + 1 = index 3
        assert_eq!(f.mul(2, 2), 3);
        exhaustive_axioms(&f);
    }

    #[test]
    fn small_fields_satisfy_axioms_exhaustively() {
        for q in [2, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
            exhaustive_axioms(&FieldSpec::with_order(q).unwrap());
        }
    }

    #[test]
    fn inverses_exhaustive_up_to_256() {
        for q in [27, 32, 49, 64, 81, 121, 125, 128, 169, 243, 256] {
            let f = FieldSpec::with_order(q).unwrap();
            for a in 1..q {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1, "q={q} a={a}");
            }
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(FieldSpec::new(4, 1).unwrap_err(), Error::NotPrime(4));
        assert_eq!(FieldSpec::new(3, 0).unwrap_err(), Error::ZeroExponent);
        assert!(matches!(FieldSpec::new(2, 17), Err(Error::FieldTooLarge { .. })));
        let f = FieldSpec::new(5, 1).unwrap();
        assert_eq!(f.inv(0).unwrap_err(), Error::InverseOfZero);
        assert_eq!(f.inv(9).unwrap_err(), Error::NotAnElement(9));
    }

    #[test]
    fn irreducible_choice_is_lexicographically_least() {
        // GF(8): x^3 + x + 1 precedes x^3 + x^2 + 1
        assert_eq!(FieldSpec::new(2, 3).unwrap().reduction_polynomial(), vec![1, 1, 0, 1]);
        // GF(9): x^2 + 1 is irreducible over GF(3) and is the first candidate with c1 = 0
        assert_eq!(FieldSpec::new(3, 2).unwrap().reduction_polynomial(), vec![1, 0, 1]);
    }

    #[test]
    fn horner_evaluation() {
        let f = FieldSpec::new(7, 1).unwrap();
        // 3 + 2x + x^2 at x = 4: 3 + 8 + 16 = 27 = 6 mod 7
        assert_eq!(f.poly_eval(&[3, 2, 1], 4), 6);
        assert_eq!(f.poly_eval(&[], 4), 0);
    }

    #[test]
    fn factorization_helpers() {
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(prime_power(49), Some((7, 2)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(1), None);
    }

    proptest! {
        #[test]
        fn large_field_axioms_sampled(a in 0u32..65536, b in 0u32..65536, c in 0u32..65536) {
            let f = FieldSpec::new(2, 16).unwrap();
            prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
            if a != 0 {
                prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            }
        }

        #[test]
        fn odd_extension_field_sampled(a in 0u32..2401, b in 0u32..2401, c in 0u32..2401) {
            let f = FieldSpec::new(7, 4).unwrap();
            prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            prop_assert_eq!(f.add(f.sub(a, b), b), a);
            if a != 0 {
                prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            }
        }
    }
}
