//! Fully enumerated finite groups with index-based Cayley tables.
//!
//! Every group is stored as a dense multiplication table over element
//! indices `0..order`, with index 0 the identity. Construction enumerates
//! the closure of the generators breadth-first, so element indices are
//! reproducible from the `GroupSpec` alone.

mod classes;
mod lattice;
mod spec;
mod structure;
mod subgroup;

use std::sync::atomic::{AtomicU64, Ordering};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

pub use classes::{conjugacy_classes, ConjClass, ConjClassSet};
pub use lattice::{normal_subgroups, normal_subgroups_from_kernels, normal_subgroups_oracle};
pub use spec::{build_group, build_group_with_cap, GroupSpec, DEFAULT_ELEMENT_CAP};
pub use structure::{
    abelian_type, abelian_type_of_group, center, centralizer_order, derived_subgroup,
    exponent_of, exponent_of_subgroup, is_elementary_abelian, nilpotency_class, quotient_group, upper_central_series,
    Quotient,
};
pub use subgroup::{intersect, Subgroup};

static NEXT_GROUP_ID: AtomicU64 = AtomicU64::new(1);

fn fresh_id() -> u64 {
    NEXT_GROUP_ID.fetch_add(1, Ordering::Relaxed)
}

/// Concrete elements behind the indices, when the group came from matrices
/// or permutations. Used to export subgroups back out as generator specs.
#[derive(Clone, Debug)]
pub enum Realization {
    Matrix {
        modulus: u64,
        dim: usize,
        elements: Vec<Vec<u32>>,
    },
    Permutation {
        degree: usize,
        elements: Vec<Vec<u32>>,
    },
    Abstract,
}

#[derive(Clone, Debug)]
pub struct Group {
    id: u64,
    order: usize,
    table: Vec<u32>,
    inv: Vec<u32>,
    generators: Vec<u32>,
    realization: Realization,
}

impl Group {
    /// Builds a group from a full Cayley table (`table[a * n + b] = a * b`).
    ///
    /// Index 0 must be the identity. The table is checked for identity and
    /// inverse laws; associativity is left to [`Group::check_laws`].
    pub fn from_table(order: usize, table: Vec<u32>, generators: Vec<u32>) -> Result<Self> {
        Self::from_parts(order, table, generators, Realization::Abstract)
    }

    pub(crate) fn from_parts(
        order: usize,
        table: Vec<u32>,
        generators: Vec<u32>,
        realization: Realization,
    ) -> Result<Self> {
        if order == 0 || table.len() != order * order {
            return Err(Error::SpecInvalid("table shape does not match order".into()));
        }
        let mut inv = vec![u32::MAX; order];
        for a in 0..order {
            let row = &table[a * order..(a + 1) * order];
            if row[0] as usize != a || table[a] as usize != a {
                return Err(Error::SpecInvalid("index 0 is not the identity".into()));
            }
            let Some(b) = row.iter().position(|&x| x == 0) else {
                return Err(Error::SpecInvalid(format!("element {a} has no inverse")));
            };
            inv[a] = b as u32;
        }
        let mut gens = Vec::new();
        for g in generators {
            if g as usize >= order {
                return Err(Error::SpecInvalid(format!("generator index {g} out of range")));
            }
            if g != 0 && !gens.contains(&g) {
                gens.push(g);
            }
        }
        Ok(Group {
            id: fresh_id(),
            order,
            table,
            inv,
            generators: gens,
            realization,
        })
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.table[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    pub fn identity(&self) -> u32 {
        0
    }

    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    pub fn realization(&self) -> &Realization {
        &self.realization
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.order as u32
    }

    /// `a^k` for non-negative `k`.
    pub fn pow(&self, a: u32, mut k: u64) -> u32 {
        let mut base = a;
        let mut acc = 0;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn element_order(&self, a: u32) -> u64 {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// `[a, b] = a⁻¹ b⁻¹ a b`.
    #[inline]
    pub fn commutator(&self, a: u32, b: u32) -> u32 {
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        self.mul(self.inv(ba), ab)
    }

    /// `x⁻¹ g x`.
    #[inline]
    pub fn conjugate(&self, g: u32, x: u32) -> u32 {
        self.mul(self.mul(self.inv(x), g), x)
    }

    pub fn is_abelian(&self) -> bool {
        let gens = &self.generators;
        gens.iter()
            .enumerate()
            .all(|(i, &a)| gens[i + 1..].iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// `Some((p, n))` when the order is `p^n` with `n ≥ 1`.
    pub fn prime_power(&self) -> Option<(u64, u32)> {
        prime_power(self.order as u64)
    }

    /// Checks associativity, identity and inverse laws. Exhaustive up to
    /// 256 elements, otherwise on 10⁴ seeded random triples.
    pub fn check_laws(&self) -> bool {
        let n = self.order as u32;
        for a in 0..n {
            if self.mul(a, 0) != a || self.mul(0, a) != a {
                return false;
            }
            if self.mul(a, self.inv(a)) != 0 || self.mul(self.inv(a), a) != 0 {
                return false;
            }
        }
        let assoc = |a, b, c| self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c));
        if self.order <= 256 {
            (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| assoc(a, b, c))))
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            (0..10_000).all(|_| {
                assoc(rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n))
            })
        }
    }
}

pub(crate) fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let p = smallest_prime_factor(n);
    let mut m = n;
    let mut k = 0;
    while m % p == 0 {
        m /= p;
        k += 1;
    }
    (m == 1).then_some((p, k))
}

pub(crate) fn smallest_prime_factor(n: u64) -> u64 {
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return d;
        }
        d += 1;
    }
    n
}

pub(crate) fn is_prime(n: u64) -> bool {
    n >= 2 && smallest_prime_factor(n) == n
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    while n > 1 {
        let p = smallest_prime_factor(n);
        out.push(p);
        while n % p == 0 {
            n /= p;
        }
    }
    out
}

/// Exact log base `p`, if `n` is a power of `p`.
pub fn exact_log(n: u64, p: u64) -> Option<u32> {
    if n == 0 || p < 2 {
        return None;
    }
    let (mut m, mut k) = (n, 0);
    while m % p == 0 {
        m /= p;
        k += 1;
    }
    (m == 1).then_some(k)
}

pub(crate) fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_power_detection() {
        assert_eq!(prime_power(81), Some((3, 4)));
        assert_eq!(prime_power(625), Some((5, 4)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
        assert_eq!(exact_log(27, 3), Some(3));
        assert_eq!(exact_log(18, 3), None);
    }

    #[test]
    fn from_table_rejects_bad_identity() {
        // Z/2 with identity at index 1.
        let err = Group::from_table(2, vec![1, 0, 0, 1], vec![]).unwrap_err();
        assert!(matches!(err, Error::SpecInvalid(_)));
    }

    #[test]
    fn pow_and_order_in_cyclic() {
        let g = build_group(&GroupSpec::Cyclic { order: 9 }).unwrap();
        let x = g.generators()[0];
        assert_eq!(g.element_order(x), 9);
        assert_eq!(g.pow(x, 9), 0);
        assert_eq!(g.element_order(g.pow(x, 3)), 3);
        assert!(g.is_abelian());
        assert!(g.check_laws());
    }
}
