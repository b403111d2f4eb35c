//! Finite commutative rings with single-valued operations, used as inputs
//! to the quotient construction and as singleton-sum hyperrings.

use crate::carrier::{ElementIndex, SubsetMask, MAX_CARRIER};
use crate::error::{Error, Result};

/// A finite commutative ring on `{0, .., n-1}` with `0` the zero and `1`
/// the identity. Tables are row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteRing {
    n: usize,
    add: Vec<ElementIndex>,
    mul: Vec<ElementIndex>,
    neg: Vec<ElementIndex>,
    name: String,
}

impl FiniteRing {
    /// Builds a ring from row-major tables and checks the ring axioms.
    pub fn new(n: usize, add: Vec<ElementIndex>, mul: Vec<ElementIndex>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyCarrier);
        }
        if n > MAX_CARRIER {
            return Err(Error::CarrierTooLarge { size: n, cap: MAX_CARRIER });
        }
        for (table, t) in [("add", &add), ("mul", &mul)] {
            if t.len() != n * n {
                return Err(Error::TableShape { table, expected: n * n, found: t.len() });
            }
            if let Some(&bad) = t.iter().find(|&&x| x >= n) {
                return Err(Error::IndexOutOfRange { table, index: bad, size: n });
            }
        }
        let mut neg = vec![0; n];
        for a in 0..n {
            let inv: Vec<_> = (0..n).filter(|&x| add[a * n + x] == 0).collect();
            if inv.len() != 1 {
                return Err(Error::NoUniqueInverse { elem: a, count: inv.len() });
            }
            neg[a] = inv[0];
        }
        let ring = Self { n, add, mul, neg, name: format!("ring{n}") };
        ring.verify()?;
        Ok(ring)
    }

    fn verify(&self) -> Result<()> {
        let n = self.n;
        let one = self.one();
        for a in 0..n {
            if self.add(a, 0) != a || self.mul(a, one) != a || self.mul(a, 0) != 0 {
                return Err(Error::InvalidArgument(format!("identity law fails at {a}")));
            }
            for b in 0..n {
                if self.add(a, b) != self.add(b, a) || self.mul(a, b) != self.mul(b, a) {
                    return Err(Error::InvalidArgument(format!("not commutative at ({a},{b})")));
                }
                for c in 0..n {
                    let ok = self.add(self.add(a, b), c) == self.add(a, self.add(b, c))
                        && self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c))
                        && self.mul(a, self.add(b, c)) == self.add(self.mul(a, b), self.mul(a, c));
                    if !ok {
                        return Err(Error::InvalidArgument(format!(
                            "ring axioms fail at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// `Z/nZ` with element `i` at index `i`.
    pub fn zmod(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyCarrier);
        }
        let add = (0..n * n).map(|k| (k / n + k % n) % n).collect();
        let mul = (0..n * n).map(|k| (k / n) * (k % n) % n).collect();
        Ok(Self::new(n, add, mul)?.named(format!("Z/{n}")))
    }

    /// The finite field with `q` elements for `q` in {2,3,4,5,7,8,9}.
    ///
    /// Prime fields use `i` for the residue `i`. Extension fields encode a
    /// polynomial `c_0 + c_1 x + ..` as the base-`p` number `c_0 + c_1 p + ..`,
    /// reduced modulo x^2+x+1 (q=4), x^3+x+1 (q=8) or x^2+1 (q=9).
    pub fn gf(q: usize) -> Result<Self> {
        let (p, k, modulus): (usize, usize, &[usize]) = match q {
            2 | 3 | 5 | 7 => (q, 1, &[]),
            4 => (2, 2, &[1, 1]),
            8 => (2, 3, &[1, 1, 0]),
            9 => (3, 2, &[1, 0]),
            _ => {
                return Err(Error::InvalidArgument(format!(
                    "GF({q}) is not available; supported orders are 2,3,4,5,7,8,9"
                )))
            }
        };
        if k == 1 {
            return Ok(Self::zmod(q)?.named(format!("GF({q})")));
        }
        let digits = |mut x: usize| -> Vec<usize> {
            (0..k)
                .map(|_| {
                    let d = x % p;
                    x /= p;
                    d
                })
                .collect()
        };
        let encode = |ds: &[usize]| ds.iter().rev().fold(0, |acc, &d| acc * p + d);
        let mut add = vec![0; q * q];
        let mut mul = vec![0; q * q];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let s: Vec<_> = (0..k).map(|i| (da[i] + db[i]) % p).collect();
                add[a * q + b] = encode(&s);
                // schoolbook product, then reduce x^k = -(modulus)
                let mut prod = vec![0usize; 2 * k - 1];
                for i in 0..k {
                    for j in 0..k {
                        prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
                    }
                }
                for deg in (k..2 * k - 1).rev() {
                    let c = prod[deg];
                    if c == 0 {
                        continue;
                    }
                    prod[deg] = 0;
                    for (i, &m) in modulus.iter().enumerate() {
                        let t = deg - k + i;
                        prod[t] = (prod[t] + (p - c) * m) % p;
                    }
                }
                mul[a * q + b] = encode(&prod[..k]);
            }
        }
        Ok(Self::new(q, add, mul)?.named(format!("GF({q})")))
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn one(&self) -> ElementIndex {
        if self.n == 1 {
            0
        } else {
            1
        }
    }

    #[inline]
    pub fn add(&self, a: ElementIndex, b: ElementIndex) -> ElementIndex {
        self.add[a * self.n + b]
    }

    #[inline]
    pub fn mul(&self, a: ElementIndex, b: ElementIndex) -> ElementIndex {
        self.mul[a * self.n + b]
    }

    #[inline]
    pub fn neg(&self, a: ElementIndex) -> ElementIndex {
        self.neg[a]
    }

    pub fn add_table(&self) -> &[ElementIndex] {
        &self.add
    }

    pub fn mul_table(&self) -> &[ElementIndex] {
        &self.mul
    }

    pub fn units(&self) -> SubsetMask {
        let one = self.one();
        (0..self.n)
            .filter(|&a| (0..self.n).any(|b| self.mul(a, b) == one))
            .collect()
    }

    /// Every multiplicative subgroup of the unit group, as masks, ascending.
    pub fn unit_subgroups(&self) -> Vec<SubsetMask> {
        let units = self.units().to_vec();
        let mut found = std::collections::BTreeSet::new();
        // Every subgroup of a finite group is generated by at most log2|G|
        // elements; closing each subset of generators is cheap at these sizes.
        let gens = units.len();
        assert!(gens <= 20, "unit group too large for subgroup enumeration");
        for pick in 0u32..(1u32 << gens) {
            let mut h = SubsetMask::singleton(self.one());
            for (i, &u) in units.iter().enumerate() {
                if pick >> i & 1 == 1 {
                    h = h.with(u);
                }
            }
            loop {
                let mut next = h;
                for a in h {
                    for b in h {
                        next = next.with(self.mul(a, b));
                    }
                }
                if next == h {
                    break;
                }
                h = next;
            }
            found.insert(h);
        }
        found.into_iter().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_supported_fields_are_fields() {
        for q in [2, 3, 4, 5, 7, 8, 9] {
            let f = FiniteRing::gf(q).unwrap();
            assert_eq!(f.units().len(), q - 1, "GF({q})");
        }
        assert!(FiniteRing::gf(6).is_err());
    }

    #[test]
    fn gf4_frobenius_is_a_ring_map() {
        let f = FiniteRing::gf(4).unwrap();
        let frob: Vec<_> = (0..4).map(|a| f.mul(a, a)).collect();
        assert_eq!(frob[0], 0);
        assert_eq!(frob[1], 1);
        assert_ne!(frob, vec![0, 1, 2, 3]);
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(frob[f.add(a, b)], f.add(frob[a], frob[b]));
                assert_eq!(frob[f.mul(a, b)], f.mul(frob[a], frob[b]));
            }
        }
    }

    #[test]
    fn subgroups_of_gf7() {
        let f = FiniteRing::gf(7).unwrap();
        let sizes: Vec<_> = f.unit_subgroups().iter().map(|h| h.len()).collect();
        let mut sorted = sizes.clone();
        sorted.sort();
        assert_eq!(sorted, vec![1, 2, 3, 6]);
    }

    #[test]
    fn zmod_rejects_bad_tables() {
        assert!(FiniteRing::new(2, vec![0, 1, 1, 1], vec![0, 0, 0, 1]).is_err());
        assert!(FiniteRing::new(2, vec![0, 1, 1], vec![0, 0, 0, 1]).is_err());
    }
}
