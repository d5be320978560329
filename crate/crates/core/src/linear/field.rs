//! Prime fields `F_p` with `p < 256`.

use std::fmt;

use crate::error::{Error, Result};

/// The prime field `F_p`; elements are `u8` residues.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Field {
    p: u8,
}

impl Field {
    pub fn new(p: u64) -> Result<Field> {
        if !(2..256).contains(&p) || !is_prime(p) {
            return Err(Error::Invalid(format!("field size {p} is not a prime below 256")));
        }
        Ok(Field { p: p as u8 })
    }

    pub fn order(self) -> u8 {
        self.p
    }

    pub fn add(self, a: u8, b: u8) -> u8 {
        ((a as u16 + b as u16) % self.p as u16) as u8
    }

    pub fn sub(self, a: u8, b: u8) -> u8 {
        ((a as u16 + self.p as u16 - b as u16) % self.p as u16) as u8
    }

    pub fn neg(self, a: u8) -> u8 {
        self.sub(0, a)
    }

    pub fn mul(self, a: u8, b: u8) -> u8 {
        ((a as u16 * b as u16) % self.p as u16) as u8
    }

    /// Multiplicative inverse of a nonzero element.
    pub fn inv(self, a: u8) -> u8 {
        assert!(!a.is_multiple_of(self.p), "zero has no inverse");
        let mut r = 1u8;
        let mut base = a % self.p;
        let mut e = self.p - 2;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        r
    }

    pub fn contains(self, a: u8) -> bool {
        a < self.p
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composites() {
        assert!(Field::new(4).is_err());
        assert!(Field::new(1).is_err());
        assert!(Field::new(257).is_err());
        assert!(Field::new(251).is_ok());
    }

    #[test]
    fn inverses() {
        for p in [2u64, 3, 5, 7, 251] {
            let f = Field::new(p).unwrap();
            for a in 1..p as u8 {
                assert_eq!(f.mul(a, f.inv(a)), 1);
            }
            for a in 0..p as u8 {
                assert_eq!(f.add(a, f.neg(a)), 0);
            }
        }
    }
}
