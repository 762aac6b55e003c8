//! Tabulated arithmetic in GF(p^f).
//!
//! Elements are stored by their position in the canonical enumeration
//! `0, ω^0, ω^1, …, ω^(q-2)`, so an element index is its discrete log plus one.
//! Multiplication is exponent arithmetic; addition goes through a Zech table
//! (`1 + ω^n` for every `n`).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u32 = 1 << 16;

/// A field element, identified by its index in the canonical enumeration.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Fe(pub u16);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Squares and non-squares of GF(q)* for odd q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareClasses {
    pub q_plus: Vec<Fe>,
    pub q_minus: Vec<Fe>,
}

impl SquareClasses {
    /// The class with the given sign: `+1` for squares, `-1` for non-squares.
    pub fn class(&self, sign: i8) -> &[Fe] {
        if sign > 0 {
            &self.q_plus
        } else {
            &self.q_minus
        }
    }
}

#[derive(Clone, Debug)]
pub struct FieldCtx {
    p: u32,
    f: u32,
    q: u32,
    /// Low-degree-first coefficients, leading 1 included.
    modulus: Vec<u32>,
    /// Integer encoding (base-p digits of the coefficient vector) of ω^i.
    exp_int: Vec<u32>,
    int_to_elem: Vec<u16>,
    /// `zech[n]` is the element `1 + ω^n`.
    zech: Vec<Fe>,
    char_table: Vec<i8>,
}

/// Parameters recorded in report headers so a run can be reproduced.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldHeader {
    pub p: u32,
    pub f: u32,
    pub modulus: Vec<u32>,
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

/// Splits `q = p^f` with `p` prime, or `None` when `q` is not a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while !q.is_multiple_of(p) {
        p += 1;
    }
    let mut f = 0;
    let mut rest = q;
    while rest.is_multiple_of(p) {
        rest /= p;
        f += 1;
    }
    (rest == 1).then_some((p, f))
}

fn digits(mut n: u32, p: u32, len: usize) -> Vec<u32> {
    let mut out = vec![0; len];
    for d in out.iter_mut() {
        *d = n % p;
        n /= p;
    }
    out
}

fn undigits(ds: &[u32], p: u32) -> u32 {
    ds.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// Powers of x modulo `modulus`, as integer encodings, until the sequence
/// returns to 1 or `limit` steps pass. Returns the encodings of x^0..x^(n-1).
fn power_cycle(modulus: &[u32], p: u32, limit: usize) -> Vec<u32> {
    let f = modulus.len() - 1;
    let mut cur = vec![0u32; f];
    cur[0] = 1;
    let mut out = Vec::with_capacity(limit);
    for _ in 0..limit {
        out.push(undigits(&cur, p));
        let lead = cur[f - 1];
        for i in (1..f).rev() {
            cur[i] = (cur[i - 1] + p * p - (lead * modulus[i]) % p) % p;
        }
        cur[0] = (p * p - (lead * modulus[0]) % p) % p;
        if cur[0] == 1 && cur[1..].iter().all(|&c| c == 0) {
            return out;
        }
    }
    out.push(u32::MAX);
    out
}

fn poly_rem(mut num: Vec<u32>, den: &[u32], p: u32) -> Vec<u32> {
    let dd = den.len() - 1;
    let lead_inv = inv_mod(den[dd], p);
    while num.len() > dd {
        let top = *num.last().unwrap();
        if top != 0 {
            let factor = top * lead_inv % p;
            let shift = num.len() - 1 - dd;
            for (i, &c) in den.iter().enumerate() {
                num[shift + i] = (num[shift + i] + p - factor * c % p) % p;
            }
        }
        num.pop();
    }
    num
}

fn inv_mod(a: u32, p: u32) -> u32 {
    (1..p).find(|&x| a * x % p == 1).unwrap_or(0)
}

fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let f = modulus.len() - 1;
    for deg in 1..=f / 2 {
        for low in 0..p.pow(deg as u32) {
            let mut cand = digits(low, p, deg);
            cand.push(1);
            if poly_rem(modulus.to_vec(), &cand, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl FieldCtx {
    /// Builds GF(p^f). Without an override the modulus is the primitive monic
    /// polynomial whose lower coefficients, read as a base-p integer with the
    /// constant term least significant, are smallest.
    pub fn new(p: u32, f: u32, modulus_override: Option<&[u32]>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Field(format!("{p} is not prime")));
        }
        if f == 0 {
            return Err(Error::Field("exponent must be at least 1".into()));
        }
        let q = p
            .checked_pow(f)
            .filter(|&q| q <= MAX_ORDER)
            .ok_or_else(|| Error::Field(format!("{p}^{f} exceeds the order cap {MAX_ORDER}")))?;
        let n = (q - 1) as usize;

        let (modulus, exp_int) = match modulus_override {
            Some(m) => {
                if m.len() != f as usize + 1 || m[f as usize] != 1 || m.iter().any(|&c| c >= p) {
                    return Err(Error::Field(format!(
                        "override must be monic of degree {f} with coefficients below {p}"
                    )));
                }
                if !is_irreducible(m, p) {
                    return Err(Error::Field("override modulus is reducible".into()));
                }
                let cycle = power_cycle(m, p, n);
                if cycle.len() != n || (m[0] == 0) {
                    return Err(Error::Field("override modulus is not primitive".into()));
                }
                (m.to_vec(), cycle)
            }
            None => {
                let mut found = None;
                for low in 0..p.pow(f) {
                    let mut m = digits(low, p, f as usize);
                    if m[0] == 0 {
                        continue;
                    }
                    m.push(1);
                    let cycle = power_cycle(&m, p, n);
                    if cycle.len() == n {
                        found = Some((m, cycle));
                        break;
                    }
                }
                found.ok_or_else(|| Error::Field(format!("no primitive polynomial for {p}^{f}")))?
            }
        };

        let mut int_to_elem = vec![0u16; q as usize];
        for (i, &v) in exp_int.iter().enumerate() {
            int_to_elem[v as usize] = (i + 1) as u16;
        }
        let zech = exp_int
            .iter()
            .map(|&v| {
                let mut ds = digits(v, p, f as usize);
                ds[0] = (ds[0] + 1) % p;
                Fe(int_to_elem[undigits(&ds, p) as usize])
            })
            .collect();
        let char_table = (0..q)
            .map(|i| match i {
                0 => 0,
                _ if p == 2 || (i - 1) % 2 == 0 => 1,
                _ => -1,
            })
            .collect();

        Ok(FieldCtx { p, f, q, modulus, exp_int, int_to_elem, zech, char_table })
    }

    /// GF(q) for a prime power q with the default modulus.
    pub fn of_order(q: u32) -> Result<Self> {
        let (p, f) = prime_power(q).ok_or_else(|| Error::Field(format!("{q} is not a prime power")))?;
        Self::new(p, f, None)
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn f(&self) -> u32 {
        self.f
    }
    pub fn q(&self) -> u32 {
        self.q
    }
    pub fn is_odd(&self) -> bool {
        self.p != 2
    }
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }
    pub fn header(&self) -> FieldHeader {
        FieldHeader { p: self.p, f: self.f, modulus: self.modulus.clone() }
    }

    /// The primitive element ω.
    pub fn omega(&self) -> Fe {
        self.exp(1)
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> + Clone {
        (0..self.q).map(|i| Fe(i as u16))
    }

    pub fn nonzero(&self) -> impl Iterator<Item = Fe> + Clone {
        (1..self.q).map(|i| Fe(i as u16))
    }

    /// ω^e for any integer exponent.
    #[inline]
    pub fn exp(&self, e: i64) -> Fe {
        let n = (self.q - 1) as i64;
        Fe((e.rem_euclid(n) + 1) as u16)
    }

    /// Discrete log base ω; `None` for zero.
    #[inline]
    pub fn log(&self, a: Fe) -> Option<u32> {
        (!a.is_zero()).then(|| a.0 as u32 - 1)
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.is_zero() || b.is_zero() {
            return Fe::ZERO;
        }
        let n = self.q - 1;
        let s = (a.0 as u32 - 1) + (b.0 as u32 - 1);
        Fe((if s >= n { s - n } else { s } + 1) as u16)
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        let n = self.q - 1;
        let la = a.0 as u32 - 1;
        let lb = b.0 as u32 - 1;
        let d = if lb >= la { lb - la } else { lb + n - la };
        let z = self.zech[d as usize];
        self.mul(a, z)
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        if self.p == 2 || a.is_zero() {
            return a;
        }
        self.mul(a, self.exp(((self.q - 1) / 2) as i64))
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    /// Multiplicative inverse; zero maps to zero.
    #[inline]
    pub fn inv(&self, a: Fe) -> Fe {
        match self.log(a) {
            None => Fe::ZERO,
            Some(l) => self.exp(-(l as i64)),
        }
    }

    #[inline]
    pub fn div(&self, a: Fe, b: Fe) -> Fe {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: Fe, e: i64) -> Fe {
        match self.log(a) {
            None if e == 0 => Fe::ONE,
            None => Fe::ZERO,
            Some(l) => self.exp(l as i64 * e),
        }
    }

    /// The Frobenius power a ↦ a^(p^m).
    pub fn frobenius(&self, a: Fe, m: u32) -> Fe {
        self.pow(a, self.p.pow(m % self.f) as i64)
    }

    /// Embeds an integer (mod p) as a field element.
    pub fn from_u32(&self, n: u32) -> Fe {
        self.from_int(n % self.p)
    }

    /// The element whose coefficient vector has base-p encoding `n`.
    pub fn from_int(&self, n: u32) -> Fe {
        Fe(self.int_to_elem[n as usize])
    }

    /// Base-p encoding of the coefficient vector of `a`; for prime fields
    /// this is the residue in `0..p`.
    pub fn to_int(&self, a: Fe) -> u32 {
        match self.log(a) {
            None => 0,
            Some(l) => self.exp_int[l as usize],
        }
    }

    /// Quadratic character: 0, +1 on nonzero squares, -1 otherwise.
    #[inline]
    pub fn chi(&self, a: Fe) -> i8 {
        self.char_table[a.index()]
    }

    /// A square root, when one exists. Of the two roots (odd q) the one with
    /// the smaller discrete log is returned.
    pub fn sqrt(&self, a: Fe) -> Option<Fe> {
        let l = match self.log(a) {
            None => return Some(Fe::ZERO),
            Some(l) => l,
        };
        let n = self.q - 1;
        if l % 2 == 0 {
            Some(self.exp((l / 2) as i64))
        } else if n % 2 == 1 {
            Some(self.exp(((l + n) / 2) as i64))
        } else {
            None
        }
    }

    pub fn square_classes(&self) -> Result<SquareClasses> {
        if !self.is_odd() {
            return Err(Error::Precondition(format!("square classes are only defined for odd q (q = {})", self.q)));
        }
        let (q_plus, q_minus) = self.nonzero().partition(|&a| self.chi(a) > 0);
        Ok(SquareClasses { q_plus, q_minus })
    }

    /// |(1 + Q_shift) ∩ Q_target| by direct enumeration.
    pub fn shifted_class_count(&self, shift_class: i8, target_class: i8) -> Result<usize> {
        if !self.is_odd() {
            return Err(Error::Precondition(format!("shifted class counts need odd q (q = {})", self.q)));
        }
        let count = self
            .nonzero()
            .filter(|&s| self.chi(s) == shift_class.signum())
            .map(|s| self.add(Fe::ONE, s))
            .filter(|&x| self.chi(x) == target_class.signum())
            .count();
        Ok(count)
    }

    /// Format an element for humans: residues for prime fields, `w^k` otherwise.
    pub fn display(&self, a: Fe) -> String {
        if self.f == 1 {
            self.to_int(a).to_string()
        } else {
            match self.log(a) {
                None => "0".into(),
                Some(0) => "1".into(),
                Some(l) => format!("w^{l}"),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf2_has_omega_one() {
        let k = FieldCtx::new(2, 1, None).unwrap();
        assert_eq!(k.q(), 2);
        assert_eq!(k.omega(), Fe::ONE);
        assert_eq!(k.add(Fe::ONE, Fe::ONE), Fe::ZERO);
    }

    #[test]
    fn gf9_omega_has_order_8() {
        let k = FieldCtx::new(3, 2, None).unwrap();
        assert_eq!(k.elements().count(), 9);
        let w = k.omega();
        let order = (1..=8).find(|&e| k.pow(w, e) == Fe::ONE).unwrap();
        assert_eq!(order, 8);
    }

    #[test]
    fn gf8_default_modulus_is_x3_x_1() {
        let k = FieldCtx::new(2, 3, None).unwrap();
        assert_eq!(k.modulus(), &[1, 1, 0, 1]);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(FieldCtx::new(4, 1, None).is_err());
        assert!(FieldCtx::new(2, 17, None).is_err());
        assert!(FieldCtx::new(2, 0, None).is_err());
        // x^2 + 1 = (x + 1)^2 over GF(2)
        assert!(matches!(FieldCtx::new(2, 2, Some(&[1, 0, 1])), Err(Error::Field(m)) if m.contains("reducible")));
        // x^4 + x^3 + x^2 + x + 1 is irreducible but x has order 5
        assert!(matches!(FieldCtx::new(2, 4, Some(&[1, 1, 1, 1, 1])), Err(Error::Field(m)) if m.contains("primitive")));
        assert!(FieldCtx::new(2, 3, Some(&[1, 0, 1, 1])).is_ok());
    }

    #[test]
    fn chi_on_gf7() {
        let k = FieldCtx::of_order(7).unwrap();
        assert_eq!(k.chi(k.from_int(0)), 0);
        assert_eq!(k.chi(k.from_int(1)), 1);
        assert_eq!(k.chi(k.from_int(3)), -1);
        let squares: Vec<u32> = (1..7).filter(|&n| k.chi(k.from_int(n)) == 1).collect();
        assert_eq!(squares, vec![1, 2, 4]);
    }

    #[test]
    fn square_classes_small_fields() {
        let k5 = FieldCtx::of_order(5).unwrap();
        let sc = k5.square_classes().unwrap();
        let mut plus: Vec<u32> = sc.q_plus.iter().map(|&a| k5.to_int(a)).collect();
        let mut minus: Vec<u32> = sc.q_minus.iter().map(|&a| k5.to_int(a)).collect();
        plus.sort();
        minus.sort();
        assert_eq!(plus, vec![1, 4]);
        assert_eq!(minus, vec![2, 3]);

        let k13 = FieldCtx::of_order(13).unwrap();
        assert_eq!(k13.square_classes().unwrap().q_plus.len(), 6);

        let k3 = FieldCtx::of_order(3).unwrap();
        let sc3 = k3.square_classes().unwrap();
        assert_eq!(sc3.q_plus.iter().map(|&a| k3.to_int(a)).collect::<Vec<_>>(), vec![1]);
        assert_eq!(sc3.q_minus.iter().map(|&a| k3.to_int(a)).collect::<Vec<_>>(), vec![2]);

        assert!(FieldCtx::of_order(8).unwrap().square_classes().is_err());
    }

    #[test]
    fn shifted_counts_examples() {
        let k11 = FieldCtx::of_order(11).unwrap();
        assert_eq!(k11.shifted_class_count(1, 1).unwrap(), 2);
        assert_eq!(k11.shifted_class_count(1, -1).unwrap(), 3);
        let k13 = FieldCtx::of_order(13).unwrap();
        assert_eq!(k13.shifted_class_count(-1, -1).unwrap(), 3);
        assert!(FieldCtx::of_order(16).unwrap().shifted_class_count(1, 1).is_err());
    }

    #[test]
    fn prime_field_arithmetic_matches_integers() {
        for p in [2u32, 3, 5, 7, 11, 13] {
            let k = FieldCtx::new(p, 1, None).unwrap();
            for a in 0..p {
                for b in 0..p {
                    let (x, y) = (k.from_int(a), k.from_int(b));
                    assert_eq!(k.to_int(k.add(x, y)), (a + b) % p);
                    assert_eq!(k.to_int(k.mul(x, y)), (a * b) % p);
                    assert_eq!(k.to_int(k.sub(x, y)), (a + p - b) % p);
                }
            }
        }
    }

    #[test]
    fn sqrt_and_frobenius() {
        let k = FieldCtx::of_order(25).unwrap();
        for a in k.elements() {
            match k.sqrt(a) {
                Some(r) => assert_eq!(k.mul(r, r), a),
                None => assert_eq!(k.chi(a), -1),
            }
            assert_eq!(k.frobenius(a, 1), k.pow(a, 5));
            assert_eq!(k.frobenius(k.frobenius(a, 1), 1), a);
        }
        let k8 = FieldCtx::of_order(8).unwrap();
        assert!(k8.elements().all(|a| k8.sqrt(a).map(|r| k8.mul(r, r)) == Some(a)));
    }

    #[test]
    fn prime_power_split() {
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(32), Some((2, 5)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(1), None);
        assert_eq!(prime_power(121), Some((11, 2)));
    }
}
