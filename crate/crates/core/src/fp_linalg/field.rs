use crate::error::{Error, Result};

/// Largest supported prime. Chain sizes of p-fold products grow like `(2^p)^m`,
/// so anything beyond this is out of reach anyway.
pub const MAX_PRIME: u32 = 13;

/// The prime field F_p for a small prime p.
///
/// Residues are stored as `u8` in `0..p`. The inverse table is built once
/// so that elimination never calls into modular exponentiation.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u8,
    inv: [u8; 16],
}

impl std::fmt::Debug for PrimeField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidPrime(p, "not a prime"));
        }
        if p > MAX_PRIME {
            return Err(Error::InvalidPrime(p, "exceeds the supported maximum of 13"));
        }
        let mut inv = [0u8; 16];
        for a in 1..p {
            let b = (1..p).find(|b| (a * b) % p == 1).unwrap();
            inv[a as usize] = b as u8;
        }
        Ok(Self { p: p as u8, inv })
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p as u32
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        let s = a as u32 + b as u32;
        (s % self.p as u32) as u8
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        let s = a as u32 + self.p as u32 - b as u32;
        (s % self.p as u32) as u8
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        ((a as u32 * b as u32) % self.p as u32) as u8
    }

    /// Multiplicative inverse. Panics on zero.
    #[inline]
    pub fn inv(&self, a: u8) -> u8 {
        assert!(a != 0, "inverse of zero in {:?}", self);
        self.inv[a as usize]
    }

    pub fn pow(&self, a: u8, mut e: u64) -> u8 {
        let mut base = a % self.p;
        let mut acc = 1u8 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Reduce an arbitrary integer into `0..p`.
    #[inline]
    pub fn reduce(&self, x: i64) -> u8 {
        x.rem_euclid(self.p as i64) as u8
    }

    /// `(-1)^e` as a residue.
    #[inline]
    pub fn sign(&self, e: usize) -> u8 {
        if e.is_multiple_of(2) {
            1 % self.p
        } else {
            self.neg(1)
        }
    }

    /// Lift a residue to the symmetric range, e.g. `2 -> -1` in F_3.
    pub fn centered(&self, a: u8) -> i64 {
        let a = a as i64;
        let p = self.p as i64;
        if a > p / 2 {
            a - p
        } else {
            a
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composites_and_large_primes() {
        assert!(PrimeField::new(4).is_err());
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(17).is_err());
        for p in [2, 3, 5, 7, 11, 13] {
            assert!(PrimeField::new(p).is_ok());
        }
    }

    #[test]
    fn inverses() {
        for p in [2, 3, 5, 7, 11, 13] {
            let f = PrimeField::new(p).unwrap();
            for a in 1..p as u8 {
                assert_eq!(f.mul(a, f.inv(a)), 1);
            }
        }
    }

    #[test]
    fn reduce_and_sign() {
        let f = PrimeField::new(3).unwrap();
        assert_eq!(f.reduce(-1), 2);
        assert_eq!(f.reduce(7), 1);
        assert_eq!(f.sign(3), 2);
        assert_eq!(f.centered(2), -1);
        let f2 = PrimeField::new(2).unwrap();
        assert_eq!(f2.sign(1), 1);
        assert_eq!(f2.pow(1, 10), 1);
    }
}
