//! Prime fields GF(p) for p < 256.
//!
//! All arithmetic is exact. Elements are canonical residues in [0, p),
//! stored as `u8`. The field value itself is a copyable token carried by
//! vectors, matrices, and subspaces so that cross-field mixing is caught
//! at operation boundaries.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Field {
    p: u8,
}

impl Field {
    /// GF(2), the field every caching computation lives in.
    pub const GF2: Field = Field { p: 2 };

    pub fn new(p: u32) -> Result<Field> {
        if p >= 256 {
            return Err(Error::FieldTooLarge(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Field { p: p as u8 })
    }

    pub fn p(&self) -> u8 {
        self.p
    }

    pub fn is_gf2(&self) -> bool {
        self.p == 2
    }

    /// Reduce an arbitrary unsigned value into the field.
    pub fn reduce(&self, v: u32) -> u8 {
        (v % self.p as u32) as u8
    }

    pub fn add(&self, a: u8, b: u8) -> u8 {
        let s = a as u16 + b as u16;
        let p = self.p as u16;
        (if s >= p { s - p } else { s }) as u8
    }

    pub fn sub(&self, a: u8, b: u8) -> u8 {
        let p = self.p as u16;
        ((a as u16 + p - b as u16) % p) as u8
    }

    pub fn neg(&self, a: u8) -> u8 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn mul(&self, a: u8, b: u8) -> u8 {
        ((a as u16 * b as u16) % self.p as u16) as u8
    }

    /// Multiplicative inverse of a nonzero element, via Fermat's little
    /// theorem (p is prime, so a^(p-2) inverts a).
    pub fn inv(&self, a: u8) -> u8 {
        debug_assert!(a != 0, "inverse of zero");
        let mut result: u8 = 1;
        let mut base = a;
        let mut exp = self.p as u32 - 2;
        while exp > 0 {
            if exp & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        result
    }

    /// Checks that a digit character belongs to this field's alphabet
    /// ('0'..'9' then 'a'.. for residues ≥ 10) and returns its value.
    pub fn digit(&self, ch: char) -> Option<u8> {
        let v = ch.to_digit(36)? as u8;
        if v < self.p {
            Some(v)
        } else {
            None
        }
    }

    /// The character for a residue, inverse of `digit`.
    pub fn digit_char(&self, v: u8) -> char {
        debug_assert!(v < self.p);
        std::char::from_digit(v as u32, 36).unwrap()
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_small_primes() {
        for p in [2u32, 3, 5, 7, 11, 251] {
            assert_eq!(Field::new(p).unwrap().p() as u32, p);
        }
    }

    #[test]
    fn rejects_composites_and_large_moduli() {
        for p in [0u32, 1, 4, 6, 9, 255] {
            assert_eq!(Field::new(p), Err(Error::NotPrime(p)));
        }
        assert_eq!(Field::new(256), Err(Error::FieldTooLarge(256)));
        assert_eq!(Field::new(257), Err(Error::FieldTooLarge(257)));
    }

    #[test]
    fn arithmetic_tables_are_consistent() {
        for p in [2u32, 3, 5, 7] {
            let f = Field::new(p).unwrap();
            let p = p as u8;
            for a in 0..p {
                for b in 0..p {
                    assert_eq!(f.add(a, b), (a as u16 + b as u16).rem_euclid(p as u16) as u8);
                    assert_eq!(f.sub(f.add(a, b), b), a);
                    assert_eq!(f.mul(a, b), (a as u16 * b as u16 % p as u16) as u8);
                }
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1, "inv failed for {a} mod {p}");
                }
            }
        }
    }

    #[test]
    fn digit_round_trip() {
        let f = Field::new(7).unwrap();
        for v in 0..7 {
            assert_eq!(f.digit(f.digit_char(v)), Some(v));
        }
        assert_eq!(f.digit('7'), None);
        assert_eq!(f.digit('x'), None);
    }
}
