//! Realizability verdicts for `(n, sigma, chi)`, the congruence lattice of all
//! realizable pairs, and the 2-adic divisibility bounds.
//!
//! The signature equation has a nonzero `x` coefficient in every dimension, so
//! it pins `x = <c_K^2, mu>` to a single rational value and no search is
//! needed. Everything except the side conditions `a >= 0`, `b >= 0`,
//! `a + b >= 1` is then a congruence on `(sigma, chi)`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::lattice::LatticeBasis;
use crate::numtheory::{binary_weight, common_denominator, factorial, two_adic_order};
use crate::relations::{relation_set, RelationSet};
use crate::{Error, ExactInt, ExactRational, MiddleIndex, Result};

pub const X_INTEGRAL: &str = "x_integral";
pub const PARITY: &str = "parity";
pub const A_NONNEGATIVE: &str = "a_nonnegative";
pub const B_NONNEGATIVE: &str = "b_nonnegative";
pub const MIDDLE_BETTI_POSITIVE: &str = "middle_betti_positive";

pub const SIDE_CONDITIONS: &str =
    "a = (chi + sigma - 2)/2 >= 0, b = (chi - sigma - 2)/2 >= 0, a + b >= 1 (chi >= 3)";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub realizable: bool,
    /// The value of `<c_K^2, mu>` forced by the signature equation.
    pub x: ExactRational,
    pub a: ExactRational,
    pub b: ExactRational,
    pub obstructions: Vec<&'static str>,
}

/// `p * sigma + q * chi = 0 (mod d)` with `gcd(p, q, d) = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Congruence {
    pub p: ExactInt,
    pub q: ExactInt,
    pub d: ExactInt,
}

impl Congruence {
    /// Normalizes to symmetric residues and removes common factors.
    pub fn new(p: ExactInt, q: ExactInt, d: ExactInt) -> Result<Self> {
        if !d.is_positive() {
            return Err(Error::InvalidArgument(format!(
                "congruence modulus must be positive, got {d}"
            )));
        }
        let sym = |v: &BigInt| {
            let r = v.mod_floor(&d);
            if &r * 2 > d {
                r - &d
            } else {
                r
            }
        };
        let (p, q) = (sym(&p), sym(&q));
        let g = p.gcd(&q).gcd(&d);
        Ok(Congruence {
            p: p / &g,
            q: q / &g,
            d: d / g,
        })
    }

    /// `r_sigma * sigma + r_chi * chi` must be an integer.
    fn from_rational_form(r_sigma: &ExactRational, r_chi: &ExactRational) -> Result<Self> {
        let den = common_denominator([r_sigma, r_chi]);
        let d = BigRational::from_integer(den.clone());
        Congruence::new((r_sigma * &d).to_integer(), (r_chi * &d).to_integer(), den)
    }

    pub fn is_trivial(&self) -> bool {
        self.d.is_one()
    }

    pub fn holds(&self, sigma: &BigInt, chi: &BigInt) -> bool {
        (&self.p * sigma + &self.q * chi).is_multiple_of(&self.d)
    }
}

impl fmt::Display for Congruence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*sigma + {}*chi = 0 mod {}", self.p, self.q, self.d)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterizationReport {
    pub n: u64,
    /// HNF basis in `(sigma, chi)` coordinates.
    pub basis: LatticeBasis,
    pub sigma_gcd: ExactInt,
    pub chi_gcd: ExactInt,
    pub congruences: Vec<Congruence>,
    pub determinant: ExactInt,
    pub side_conditions: String,
}

impl CharacterizationReport {
    /// Lattice membership, without the side conditions.
    pub fn contains(&self, sigma: &BigInt, chi: &BigInt) -> bool {
        self.basis.contains(sigma, chi)
    }
}

fn rational(v: &BigInt) -> ExactRational {
    BigRational::from_integer(v.clone())
}

fn forced_x(rs: &RelationSet, sigma: &ExactRational, chi: &ExactRational) -> Result<ExactRational> {
    let form = &rs.signature_form;
    if form.ax.is_zero() {
        return Err(Error::Internal(format!(
            "signature equation has no x term in dimension {}",
            rs.n
        )));
    }
    Ok((sigma - &form.ay * chi) / &form.ax)
}

/// Verdict for a prebuilt relation set; avoids recomputing the coefficients in sweeps.
pub fn check_with(rs: &RelationSet, sigma: &BigInt, chi: &BigInt) -> Result<Verdict> {
    let (s, c) = (rational(sigma), rational(chi));
    let x = forced_x(rs, &s, &c)?;
    let two = BigRational::from_integer(BigInt::from(2));
    let a = (&c + &s - &two) / &two;
    let b = (&c - &s - &two) / &two;

    let mut obstructions = Vec::new();
    if !x.is_integer() {
        obstructions.push(X_INTEGRAL);
    }
    for cond in &rs.conditions {
        if !cond.holds(&x, &c) {
            obstructions.push(cond.label);
        }
    }
    if (sigma + chi).is_odd() {
        obstructions.push(PARITY);
    }
    if a.is_negative() {
        obstructions.push(A_NONNEGATIVE);
    }
    if b.is_negative() {
        obstructions.push(B_NONNEGATIVE);
    }
    if &a + &b < BigRational::one() {
        obstructions.push(MIDDLE_BETTI_POSITIVE);
    }
    Ok(Verdict {
        realizable: obstructions.is_empty(),
        x,
        a,
        b,
        obstructions,
    })
}

/// Decides whether `(sigma, chi)` is realized in dimension `n`.
pub fn check(n: u64, sigma: &BigInt, chi: &BigInt) -> Result<Verdict> {
    check_with(&relation_set(n)?, sigma, chi)
}

/// The congruences cutting out the lattice, for a prebuilt relation set.
pub fn congruences(rs: &RelationSet) -> Result<Vec<Congruence>> {
    let form = &rs.signature_form;
    let zero = ExactRational::zero();
    let one = ExactRational::one();
    // x = x_sigma * sigma + x_chi * chi
    let x_sigma = forced_x(rs, &one, &zero)?;
    let x_chi = forced_x(rs, &zero, &one)?;
    debug_assert_eq!(x_sigma, one.clone() / &form.ax);

    let mut out = vec![Congruence::from_rational_form(&x_sigma, &x_chi)?];
    for cond in &rs.conditions {
        let m = BigRational::from_integer(BigInt::from(cond.modulus));
        let r_sigma = &cond.form.ax * &x_sigma / &m;
        let r_chi = (&cond.form.ax * &x_chi + &cond.form.ay) / &m;
        out.push(Congruence::from_rational_form(&r_sigma, &r_chi)?);
    }
    out.push(Congruence::new(
        BigInt::one(),
        BigInt::one(),
        BigInt::from(2),
    )?);
    out.retain(|c| !c.is_trivial());
    Ok(out)
}

/// Lattice of `(sigma, chi)` pairs passing every congruence condition.
pub fn characterize(n: u64) -> Result<CharacterizationReport> {
    let rs = relation_set(n)?;
    let congruences = congruences(&rs)?;
    let basis = congruences.iter().fold(LatticeBasis::full(), |l, c| {
        l.intersect_congruence(&c.p, &c.q, &c.d)
    });
    Ok(CharacterizationReport {
        n,
        sigma_gcd: basis.first_gcd(),
        chi_gcd: basis.second_gcd(),
        determinant: basis.determinant(),
        basis,
        congruences,
        side_conditions: SIDE_CONDITIONS.to_string(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Realization {
    pub chi: ExactInt,
    pub sigma: ExactInt,
    pub x: ExactInt,
    pub a: ExactInt,
    pub b: ExactInt,
}

/// All realizable pairs with `3 <= chi <= chi_max`, sorted by `(chi, sigma)`.
pub fn enumerate(n: u64, chi_max: &BigInt) -> Result<Vec<Realization>> {
    let rs = relation_set(n)?;
    let report = characterize(n)?;
    let basis = &report.basis;
    let s1 = basis.s1();
    let mut rows = Vec::new();
    let mut chi = BigInt::from(3);
    while &chi <= chi_max {
        // |sigma| <= chi - 2 and sigma = m * s1
        let bound: BigInt = &chi - 2;
        let m_max = bound.div_floor(s1);
        let mut m = -m_max.clone();
        while m <= m_max {
            let sigma = &m * s1;
            if (&chi - &m * basis.c1()).is_multiple_of(basis.c2()) {
                let v = check_with(&rs, &sigma, &chi)?;
                if !v.realizable {
                    return Err(Error::Internal(format!(
                        "lattice point ({sigma}, {chi}) fails check: {:?}",
                        v.obstructions
                    )));
                }
                rows.push(Realization {
                    chi: chi.clone(),
                    sigma,
                    x: v.x.to_integer(),
                    a: v.a.to_integer(),
                    b: v.b.to_integer(),
                });
            }
            m += 1;
        }
        chi += 1;
    }
    Ok(rows)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisibilityBounds {
    pub n: u64,
    pub nu2_sigma_min: i64,
    pub nu2_chi_min: i64,
    pub sigma_modulus: Option<ExactInt>,
    pub chi_modulus: Option<ExactInt>,
}

/// Lower bounds on the 2-adic orders of `sigma` and `chi`, and for
/// `n = 4 mod 8` the moduli they must be divisible by.
pub fn divisibility_bounds(n: u64) -> Result<DivisibilityBounds> {
    let k_mid = MiddleIndex::from_dim(n)?;
    let kk = k_mid.get();
    if kk % 2 == 0 {
        // n = 8k
        let k = (kk / 2) as i64;
        let nu_k = two_adic_order(&k)?;
        let wt = binary_weight(k as u64) as i64;
        Ok(DivisibilityBounds {
            n,
            nu2_sigma_min: 4 * k - 2 * nu_k - 3,
            nu2_chi_min: 4 * k - 2 * nu_k - 2 * wt - 2,
            sigma_modulus: None,
            chi_modulus: None,
        })
    } else {
        // n = 8k + 4
        let k = (kk - 1) / 2;
        let wt = binary_weight(k as u64) as i64;
        let one = BigInt::one();
        let sigma_modulus = (&one << (4 * k + 4) as usize) * ((&one << (4 * k + 1) as usize) - 1);
        let f = factorial(2 * k);
        let k = k as i64;
        Ok(DivisibilityBounds {
            n,
            nu2_sigma_min: 4 * k + 4,
            nu2_chi_min: 4 * k - 2 * wt,
            sigma_modulus: Some(sigma_modulus),
            chi_modulus: Some(&f * &f),
        })
    }
}

/// Confirms the divisibility bounds against the computed lattice.
pub fn verify_divisibility(n: u64) -> Result<bool> {
    let bounds = divisibility_bounds(n)?;
    let report = characterize(n)?;
    let mut ok = two_adic_order(&report.sigma_gcd)? >= bounds.nu2_sigma_min
        && two_adic_order(&report.chi_gcd)? >= bounds.nu2_chi_min;
    if let Some(m) = &bounds.sigma_modulus {
        ok &= report.sigma_gcd.is_multiple_of(m);
    }
    if let Some(m) = &bounds.chi_modulus {
        ok &= report.chi_gcd.is_multiple_of(m);
    }
    Ok(ok)
}

/// Whether every lattice point has even `sigma` and even `chi`.
pub fn parity_check(n: u64) -> Result<bool> {
    let report = characterize(n)?;
    let b = &report.basis;
    Ok([b.s1(), b.c1(), b.c2()].iter().all(|v| v.is_even()))
}
