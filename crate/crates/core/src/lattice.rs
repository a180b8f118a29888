//! Full-rank sublattices of `Z^2` in Hermite normal form.

use std::fmt;

use num_bigint::BigInt;
use num_integer::{ExtendedGcd, Integer};
use num_traits::{One, Signed, Zero};

/// Basis `v1 = (s1, c1)`, `v2 = (0, c2)` with `s1 > 0`, `c2 > 0`, `0 <= c1 < c2`.
///
/// Every full-rank sublattice of `Z^2` has exactly one such basis, so two
/// lattices are equal iff their bases are.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticeBasis {
    s1: BigInt,
    c1: BigInt,
    c2: BigInt,
}

impl LatticeBasis {
    /// All of `Z^2`.
    pub fn full() -> Self {
        LatticeBasis {
            s1: BigInt::one(),
            c1: BigInt::zero(),
            c2: BigInt::one(),
        }
    }

    /// Builds the basis from raw HNF entries, checking the normal-form invariants.
    pub fn from_hnf(s1: BigInt, c1: BigInt, c2: BigInt) -> Option<Self> {
        if s1.is_positive() && c2.is_positive() && !c1.is_negative() && c1 < c2 {
            Some(LatticeBasis { s1, c1, c2 })
        } else {
            None
        }
    }

    /// Column reduction of a generating set. Returns `None` when the
    /// generators do not span a rank-2 lattice.
    pub fn from_generators<'a, I>(gens: I) -> Option<Self>
    where
        I: IntoIterator<Item = &'a (BigInt, BigInt)>,
    {
        let mut pivot: Option<(BigInt, BigInt)> = None;
        let mut h = BigInt::zero();
        for (a, b) in gens {
            match pivot.take() {
                None if a.is_zero() => h = h.gcd(b),
                None => pivot = Some((a.clone(), b.clone())),
                Some((pa, pb)) => {
                    if a.is_zero() {
                        h = h.gcd(b);
                        pivot = Some((pa, pb));
                        continue;
                    }
                    let ExtendedGcd {
                        gcd: g, x: s, y: t, ..
                    } = pa.extended_gcd(a);
                    let new_pivot = (&s * &pa + &t * a, &s * &pb + &t * b);
                    let residual = (a / &g) * &pb - (&pa / &g) * b;
                    h = h.gcd(&residual);
                    pivot = Some(new_pivot);
                }
            }
        }
        let (mut s1, mut c1) = pivot?;
        if h.is_zero() {
            return None;
        }
        if s1.is_negative() {
            s1 = -s1;
            c1 = -c1;
        }
        let c1 = c1.mod_floor(&h);
        Some(LatticeBasis { s1, c1, c2: h })
    }

    pub fn v1(&self) -> (BigInt, BigInt) {
        (self.s1.clone(), self.c1.clone())
    }

    pub fn v2(&self) -> (BigInt, BigInt) {
        (BigInt::zero(), self.c2.clone())
    }

    pub fn s1(&self) -> &BigInt {
        &self.s1
    }

    pub fn c1(&self) -> &BigInt {
        &self.c1
    }

    pub fn c2(&self) -> &BigInt {
        &self.c2
    }

    /// gcd of the first coordinates over the lattice.
    pub fn first_gcd(&self) -> BigInt {
        self.s1.clone()
    }

    /// gcd of the second coordinates over the lattice.
    pub fn second_gcd(&self) -> BigInt {
        self.c1.gcd(&self.c2)
    }

    /// Index of the lattice in `Z^2`.
    pub fn determinant(&self) -> BigInt {
        &self.s1 * &self.c2
    }

    pub fn contains(&self, a: &BigInt, b: &BigInt) -> bool {
        if !a.is_multiple_of(&self.s1) {
            return false;
        }
        let m = a / &self.s1;
        (b - m * &self.c1).is_multiple_of(&self.c2)
    }

    /// Sublattice of points with `p * a + q * b = 0 (mod d)`.
    pub fn intersect_congruence(&self, p: &BigInt, q: &BigInt, d: &BigInt) -> Self {
        assert!(d.is_positive(), "congruence modulus must be positive");
        let f1 = (p * &self.s1 + q * &self.c1).mod_floor(d);
        let f2 = (q * &self.c2).mod_floor(d);
        // kernel of (u, w) -> u f1 + w f2 (mod d) is spanned by (a0, b0), (0, d/g2)
        let g2 = f2.gcd(d);
        let dd = d / &g2;
        let a0 = &g2 / g2.gcd(&f1);
        let b0 = if dd.is_one() {
            BigInt::zero()
        } else {
            let rhs = -(&a0 * &f1) / &g2;
            let inv = (&f2 / &g2).extended_gcd(&dd).x;
            (rhs * inv).mod_floor(&dd)
        };
        let w1 = (&a0 * &self.s1, &a0 * &self.c1 + &b0 * &self.c2);
        let w2 = (BigInt::zero(), &dd * &self.c2);
        LatticeBasis::from_generators(&[w1, w2]).expect("finite-index sublattice has full rank")
    }
}

impl fmt::Display for LatticeBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}), (0, {})", self.s1, self.c1, self.c2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn gens(v: &[(i64, i64)]) -> Vec<(BigInt, BigInt)> {
        v.iter().map(|&(x, y)| (b(x), b(y))).collect()
    }

    #[test]
    fn hnf_of_generators() {
        let l = LatticeBasis::from_generators(&gens(&[(2, 6), (0, 48)])).unwrap();
        assert_eq!(l.v1(), (b(2), b(6)));
        assert_eq!(l.v2(), (b(0), b(48)));
        let l2 = LatticeBasis::from_generators(&gens(&[(-4, 60), (6, 0), (2, 54)])).unwrap();
        // brute-force comparison over a window
        for x in -30..=30 {
            for y in -60..=60 {
                let direct = (-30i64..=30).any(|u| {
                    (-30i64..=30).any(|v| {
                        let w = x - (-4 * u + 6 * v);
                        w % 2 == 0 && {
                            let t = w / 2;
                            y == 60 * u + 54 * t
                        }
                    })
                });
                assert_eq!(l2.contains(&b(x), &b(y)), direct, "({x},{y})");
            }
        }
        assert!(LatticeBasis::from_generators(&gens(&[(1, 2), (2, 4)])).is_none());
        assert!(LatticeBasis::from_generators(&gens(&[(0, 3)])).is_none());
    }

    #[test]
    fn congruence_intersection_matches_window() {
        let cong = [(b(1), b(0), b(2)), (b(0), b(1), b(6)), (b(3), b(-1), b(48))];
        let mut l = LatticeBasis::full();
        for (p, q, d) in &cong {
            l = l.intersect_congruence(p, q, d);
        }
        assert_eq!(l, LatticeBasis::from_hnf(b(2), b(6), b(48)).unwrap());
        for s in -100..=100i64 {
            for c in -100..=100i64 {
                let expect = s % 2 == 0 && c % 6 == 0 && (3 * s - c) % 48 == 0;
                assert_eq!(l.contains(&b(s), &b(c)), expect);
            }
        }
        assert_eq!(l.determinant(), b(96));
        assert_eq!(l.second_gcd(), b(6));
    }

    #[test]
    fn from_hnf_checks_invariants() {
        assert!(LatticeBasis::from_hnf(b(1), b(3), b(2)).is_none());
        assert!(LatticeBasis::from_hnf(b(0), b(0), b(2)).is_none());
        assert!(LatticeBasis::from_hnf(b(1), b(0), b(1)).is_some());
    }
}
