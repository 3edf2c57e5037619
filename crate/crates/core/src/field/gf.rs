//! Arithmetic tables for GF(q), q a prime power up to 9.
//!
//! Elements are encoded as 0..q via base-p digits of polynomials over GF(p);
//! prime-power fields use a fixed irreducible polynomial. Tables are tiny, so
//! everything is precomputed on construction.

use crate::{Error, Result};

/// Field arithmetic for one GF(q).
#[derive(Debug, Clone)]
pub struct Gf {
    q: u8,
    add: Vec<u8>,
    mul: Vec<u8>,
    inv: Vec<u8>,
    neg: Vec<u8>,
}

/// (p, k, irreducible polynomial coefficients low-to-high, excluding x^k)
/// for each supported prime power.
fn field_params(q: u8) -> Option<(u8, u8, &'static [u8])> {
    match q {
        2 => Some((2, 1, &[])),
        3 => Some((3, 1, &[])),
        4 => Some((2, 2, &[1, 1])),       // x^2 + x + 1
        5 => Some((5, 1, &[])),
        7 => Some((7, 1, &[])),
        8 => Some((2, 3, &[1, 1, 0])),    // x^3 + x + 1
        9 => Some((3, 2, &[1, 0])),       // x^2 + 1
        _ => None,
    }
}

fn digits(mut e: u8, p: u8, k: u8) -> Vec<u8> {
    let mut out = Vec::with_capacity(k as usize);
    for _ in 0..k {
        out.push(e % p);
        e /= p;
    }
    out
}

fn undigits(d: &[u8], p: u8) -> u8 {
    d.iter().rev().fold(0u8, |acc, &x| acc * p + x)
}

impl Gf {
    /// Builds GF(q). Errors if q is not a prime power at most 9.
    pub fn new(q: u8) -> Result<Gf> {
        let (p, k, irred) = field_params(q)
            .ok_or_else(|| Error::InvalidInput(format!("{q} is not a prime power <= 9")))?;
        let qs = q as usize;
        let mut add = vec![0u8; qs * qs];
        let mut mul = vec![0u8; qs * qs];
        let mut neg = vec![0u8; qs];
        for a in 0..q {
            let da = digits(a, p, k);
            let dn: Vec<u8> = da.iter().map(|&x| (p - x) % p).collect();
            neg[a as usize] = undigits(&dn, p);
            for b in 0..q {
                let db = digits(b, p, k);
                let ds: Vec<u8> = da.iter().zip(&db).map(|(&x, &y)| (x + y) % p).collect();
                add[a as usize * qs + b as usize] = undigits(&ds, p);

                // polynomial product reduced by the irreducible
                let mut prod = vec![0u16; 2 * k as usize];
                for (i, &x) in da.iter().enumerate() {
                    for (j, &y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x as u16 * y as u16) % p as u16;
                    }
                }
                for deg in (k as usize..2 * k as usize).rev() {
                    let c = prod[deg] % p as u16;
                    if c != 0 {
                        prod[deg] = 0;
                        // x^k = -irred (mod p)
                        for (i, &ic) in irred.iter().enumerate() {
                            let sub = (c * ic as u16) % p as u16;
                            let pos = deg - k as usize + i;
                            prod[pos] = (prod[pos] + p as u16 - sub) % p as u16;
                        }
                    }
                }
                let dm: Vec<u8> = (0..k as usize).map(|i| prod[i] as u8).collect();
                mul[a as usize * qs + b as usize] = undigits(&dm, p);
            }
        }
        let mut inv = vec![0u8; qs];
        for a in 1..q {
            let found = (1..q).find(|&b| mul[a as usize * qs + b as usize] == 1);
            inv[a as usize] =
                found.ok_or_else(|| Error::InvalidInput(format!("no inverse for {a} in GF({q})")))?;
        }
        Ok(Gf { q, add, mul, inv, neg })
    }

    pub fn q(&self) -> u8 {
        self.q
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn inv(&self, a: u8) -> u8 {
        debug_assert!(a != 0, "zero has no inverse");
        self.inv[a as usize]
    }
}
