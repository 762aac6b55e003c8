use fgdt_core::field::{prime_power, Fe, FieldCtx};
use proptest::prelude::*;

const ORDERS: [u32; 14] = [2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 32, 49, 64, 121];

// Schoolbook arithmetic on base-p coefficient vectors, reduced by the
// field's own modulus. Nothing here touches the log tables.
struct Poly {
    p: u32,
    modulus: Vec<u32>,
}

impl Poly {
    fn of(k: &FieldCtx) -> Self {
        Poly { p: k.p(), modulus: k.modulus().to_vec() }
    }

    fn f(&self) -> usize {
        self.modulus.len() - 1
    }

    fn digits(&self, mut n: u32) -> Vec<u32> {
        (0..self.f())
            .map(|_| {
                let d = n % self.p;
                n /= self.p;
                d
            })
            .collect()
    }

    fn encode(&self, ds: &[u32]) -> u32 {
        ds.iter().rev().fold(0, |acc, &d| acc * self.p + d)
    }

    fn add(&self, a: u32, b: u32) -> u32 {
        let (x, y) = (self.digits(a), self.digits(b));
        self.encode(&x.iter().zip(&y).map(|(u, v)| (u + v) % self.p).collect::<Vec<_>>())
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        let (x, y, f, p) = (self.digits(a), self.digits(b), self.f(), self.p);
        let mut prod = vec![0u32; 2 * f];
        for (i, u) in x.iter().enumerate() {
            for (j, v) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + u * v) % p;
            }
        }
        for d in (f..2 * f).rev() {
            let top = prod[d];
            for (i, c) in self.modulus.iter().enumerate() {
                prod[d - f + i] = (prod[d - f + i] + p * p - top * c % p) % p;
            }
        }
        self.encode(&prod[..f])
    }
}

fn field(idx: usize) -> FieldCtx {
    FieldCtx::of_order(ORDERS[idx % ORDERS.len()]).unwrap()
}

#[test]
fn prime_power_decomposition_matches_trial_products() {
    for q in 2..=200u32 {
        let brute = (2..=q)
            .filter(|p| (2..*p).all(|d| p % d != 0))
            .find_map(|p| (1..=8).find(|&f| p.checked_pow(f) == Some(q)).map(|f| (p, f)));
        assert_eq!(prime_power(q), brute, "q={q}");
    }
}

#[test]
fn addition_and_multiplication_match_polynomial_arithmetic() {
    for q in ORDERS {
        let k = FieldCtx::of_order(q).unwrap();
        let poly = Poly::of(&k);
        for a in 0..q {
            for b in 0..q {
                let (x, y) = (k.from_int(a), k.from_int(b));
                assert_eq!(k.to_int(k.add(x, y)), poly.add(a, b), "q={q} {a}+{b}");
                assert_eq!(k.to_int(k.mul(x, y)), poly.mul(a, b), "q={q} {a}*{b}");
            }
        }
    }
}

#[test]
fn omega_is_primitive_and_the_modulus_is_monic() {
    for q in ORDERS {
        let k = FieldCtx::of_order(q).unwrap();
        assert_eq!(*k.modulus().last().unwrap(), 1);
        let w = k.omega();
        let mut seen = std::collections::BTreeSet::new();
        let mut x = Fe::ONE;
        for _ in 0..q - 1 {
            seen.insert(x);
            x = k.mul(x, w);
        }
        assert_eq!(x, Fe::ONE);
        assert_eq!(seen.len(), q as usize - 1);
    }
}

#[test]
fn quadratic_character_counts_squares() {
    for q in ORDERS {
        let k = FieldCtx::of_order(q).unwrap();
        let squares: std::collections::BTreeSet<Fe> = k.nonzero().map(|a| k.mul(a, a)).collect();
        for a in k.nonzero() {
            assert_eq!(k.chi(a) == 1, squares.contains(&a), "q={q}");
            if let Some(r) = k.sqrt(a) {
                assert_eq!(k.mul(r, r), a);
            } else {
                assert!(!squares.contains(&a));
            }
        }
        assert_eq!(k.chi(Fe::ZERO), 0);
    }
}

#[test]
fn non_prime_powers_and_oversized_orders_are_rejected() {
    for q in [0, 1, 6, 10, 12, 100] {
        assert!(FieldCtx::of_order(q).is_err(), "q={q}");
    }
    assert!(FieldCtx::new(2, 3, Some(&[1, 1, 1, 1])).is_err());
    assert!(FieldCtx::new(2, 3, Some(&[1, 0, 1, 1])).is_ok());
}

proptest! {
    #[test]
    fn ring_axioms(idx in 0usize..14, a in 0u32..1000, b in 0u32..1000, c in 0u32..1000) {
        let k = field(idx);
        let q = k.q();
        let (a, b, c) = (k.from_int(a % q), k.from_int(b % q), k.from_int(c % q));
        prop_assert_eq!(k.mul(a, k.add(b, c)), k.add(k.mul(a, b), k.mul(a, c)));
        prop_assert_eq!(k.add(a, k.add(b, c)), k.add(k.add(a, b), c));
        prop_assert_eq!(k.mul(a, k.mul(b, c)), k.mul(k.mul(a, b), c));
        prop_assert_eq!(k.add(a, k.neg(a)), Fe::ZERO);
        prop_assert_eq!(k.sub(k.add(a, b), b), a);
        if !a.is_zero() {
            prop_assert_eq!(k.mul(a, k.inv(a)), Fe::ONE);
            prop_assert_eq!(k.div(k.mul(b, a), a), b);
        }
    }

    #[test]
    fn frobenius_is_an_automorphism(idx in 0usize..14, a in 0u32..1000, b in 0u32..1000, m in 0u32..8) {
        let k = field(idx);
        let q = k.q();
        let (a, b) = (k.from_int(a % q), k.from_int(b % q));
        prop_assert_eq!(k.frobenius(k.add(a, b), m), k.add(k.frobenius(a, m), k.frobenius(b, m)));
        prop_assert_eq!(k.frobenius(k.mul(a, b), m), k.mul(k.frobenius(a, m), k.frobenius(b, m)));
        prop_assert_eq!(k.frobenius(a, k.f()), a);
    }

    #[test]
    fn character_is_multiplicative(idx in 0usize..14, a in 1u32..1000, b in 1u32..1000) {
        let k = field(idx);
        let q = k.q();
        let (a, b) = (k.from_int(1 + a % (q - 1)), k.from_int(1 + b % (q - 1)));
        prop_assert_eq!(k.chi(k.mul(a, b)), k.chi(a) * k.chi(b));
    }

    #[test]
    fn log_inverts_exp(idx in 0usize..14, e in -500i64..500) {
        let k = field(idx);
        let x = k.exp(e);
        let n = k.q() as i64 - 1;
        prop_assert_eq!(k.log(x).map(i64::from), Some(e.rem_euclid(n)));
        prop_assert_eq!(k.pow(k.omega(), e), x);
    }
}
