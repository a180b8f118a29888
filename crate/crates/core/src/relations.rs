//! Closed-form signature equation and Riemann-Roch divisibility conditions,
//! parameterized throughout by the middle index `K = n/4`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::graded::{self, chern_e_all, genus_class, Genus, MiddleIndex};
use crate::lattice::LatticeBasis;
use crate::numtheory::{bernoulli, coeff_m, common_denominator, factorial};
use crate::{Error, ExactRational, GradedClass, PairingForm, Result};

pub const TODD: &str = "todd";
pub const E1_TODD: &str = "e1_todd";
pub const E1E1_TODD: &str = "e1e1_todd";

/// `form(x, y)` must lie in `modulus * Z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisibilityCondition {
    pub form: PairingForm,
    pub modulus: u32,
    pub label: &'static str,
}

impl DivisibilityCondition {
    pub fn holds(&self, x: &ExactRational, y: &ExactRational) -> bool {
        let v = self.form.eval(x, y) / rational(self.modulus as i64);
        v.is_integer()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationSet {
    pub n: u64,
    pub k: MiddleIndex,
    /// `signature_form(x, chi) = sigma`
    pub signature_form: PairingForm,
    pub conditions: Vec<DivisibilityCondition>,
    pub delta: u32,
}

fn rational(n: i64) -> ExactRational {
    BigRational::from_integer(BigInt::from(n))
}

fn fact(m: u32) -> ExactRational {
    BigRational::from_integer(factorial(m))
}

fn pow2(e: u32) -> ExactRational {
    BigRational::from_integer(BigInt::one() << e as usize)
}

/// `t_m = B_m / m!`.
pub fn todd_coefficient(m: u32) -> ExactRational {
    bernoulli(m) / fact(m)
}

/// `s_j = 2^{2j} (2^{2j-1} - 1) |B_{2j}| / (2j)!`.
pub fn l_coefficient(j: u32) -> ExactRational {
    let two_j = 2 * j;
    pow2(two_j) * (pow2(two_j - 1) - ExactRational::one()) * bernoulli(two_j).abs() / fact(two_j)
}

/// `delta_K`: 1 in dimension 8, 2 above.
pub fn delta(k: MiddleIndex) -> u32 {
    if k.get() == 2 {
        1
    } else {
        2
    }
}

/// Coefficients of the signature equation `a_x x + a_y y = sigma`.
pub fn signature_form(k: MiddleIndex) -> PairingForm {
    let kk = k.get();
    let s_k = l_coefficient(kk);
    if kk.is_multiple_of(2) {
        let s_half = l_coefficient(kk / 2);
        PairingForm::new(rational(2) * &s_half * &s_half - &s_k, rational(2) * s_k)
    } else {
        PairingForm::new(s_k.clone(), -rational(2) * s_k)
    }
}

/// The three sub-relations equivalent to the U-cobordism integrality
/// relations: `<Td>` in Z, `<e_1 Td>` in Z, `<e_1 e_1 Td>` in `delta_K Z`.
pub fn u_subrelations(k: MiddleIndex) -> Vec<DivisibilityCondition> {
    let kk = k.get();
    let t_k = todd_coefficient(kk);
    let t_2k = todd_coefficient(2 * kk);
    let f_k1 = fact(kk - 1);
    let f_2k1 = fact(2 * kk - 1);
    let sign = if kk % 2 == 1 {
        rational(1)
    } else {
        rational(-1)
    };

    let todd = PairingForm::new((&t_k * &t_k - &t_2k) / rational(2), t_2k);
    let e1 = PairingForm::new(
        sign * &t_k / &f_k1 + ExactRational::one() / (rational(2) * &f_2k1),
        -ExactRational::one() / &f_2k1,
    );
    let e1e1 = PairingForm::new(
        ExactRational::one() / (&f_k1 * &f_k1),
        ExactRational::zero(),
    );
    vec![
        DivisibilityCondition {
            form: todd,
            modulus: 1,
            label: TODD,
        },
        DivisibilityCondition {
            form: e1,
            modulus: 1,
            label: E1_TODD,
        },
        DivisibilityCondition {
            form: e1e1,
            modulus: delta(k),
            label: E1E1_TODD,
        },
    ]
}

/// Additional SU relations for odd `K` (dimension `4 mod 8`).
pub fn su_subrelations(k: MiddleIndex) -> Result<Vec<DivisibilityCondition>> {
    if !k.is_odd() {
        return Err(Error::EvenMiddleIndex(k.get() as u64));
    }
    let kk = k.get();
    let t_2k = todd_coefficient(2 * kk);
    let f_2k1 = fact(2 * kk - 1);
    Ok(vec![
        DivisibilityCondition {
            form: PairingForm::new(-&t_2k / rational(2), t_2k),
            modulus: 2,
            label: TODD,
        },
        DivisibilityCondition {
            form: PairingForm::new(
                ExactRational::one() / (rational(2) * &f_2k1),
                -ExactRational::one() / f_2k1,
            ),
            modulus: 1,
            label: E1_TODD,
        },
    ])
}

/// Signature equation and divisibility conditions for dimension `n`.
pub fn relation_set(n: u64) -> Result<RelationSet> {
    let k = MiddleIndex::from_dim(n)?;
    let mut conditions = u_subrelations(k);
    if k.is_odd() {
        // U and SU relations together: the Todd genus must be even
        conditions[0].modulus = 2;
    }
    Ok(RelationSet {
        n,
        k,
        signature_form: signature_form(k),
        conditions,
        delta: delta(k),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleReport {
    pub k: MiddleIndex,
    pub details: Vec<(String, bool)>,
    pub all_equal: bool,
}

/// Compares every closed form against the graded-ring computation.
pub fn verify_against_oracle(k: MiddleIndex) -> OracleReport {
    let mut details = Vec::new();
    let mut record = |name: &str, ok: bool| details.push((name.to_string(), ok));

    let td = genus_class::<ExactRational>(Genus::Todd, k);
    let l = genus_class::<ExactRational>(Genus::L, k);
    let e1 = graded::chern_e::<ExactRational>(1, k);
    let e1_td: GradedClass = &e1 * &td;
    let e1e1_td: GradedClass = &(&e1 * &e1) * &td;
    let u = u_subrelations(k);

    record("signature", l.pair() == signature_form(k));
    record(TODD, td.pair() == u[0].form);
    record(E1_TODD, e1_td.pair() == u[1].form);
    record(E1E1_TODD, e1e1_td.pair() == u[2].form);

    let kk = k.get();
    let bridge =
        pow2(2 * kk) * (pow2(2 * kk - 1) - ExactRational::one()) * todd_coefficient(2 * kk);
    let bridge = if kk.is_multiple_of(2) {
        -bridge
    } else {
        bridge
    };
    record("bridge_s_t", l_coefficient(kk) == bridge);

    if let Ok(su) = su_subrelations(k) {
        let ahat = genus_class::<ExactRational>(Genus::Ahat, k);
        record("su_todd_is_ahat", ahat.pair() == su[0].form);
        record("su_e1_todd", e1_td.pair() == su[1].form);
        let e1_td_pair = e1_td.pair();
        let su_ok = (1..=2 * kk).all(|li| {
            let Ok(ep) = graded::pontryagin_e::<ExactRational>(li, k) else {
                return false;
            };
            let m = BigRational::new(coeff_m(li, kk), BigInt::from(li));
            let sign = if li % 2 == 1 {
                rational(2)
            } else {
                rational(-2)
            };
            m.is_integer() && (&ep * &td).pair() == e1_td_pair.scale(&(sign * m))
        });
        record("su_pontryagin_e", su_ok);
    }

    let all_equal = details.iter().all(|(_, ok)| *ok);
    OracleReport {
        k,
        details,
        all_equal,
    }
}

/// Whether the three sub-relations force `<e_l Td>` and `<e_l e_m Td>` to be
/// integers for all `l, m <= lmax`.
///
/// The points satisfying the sub-relations form a lattice whose dual is spanned
/// by the Todd form, the `e_1 Td` form and `1/delta_K` times the `e_1 e_1 Td`
/// form; each target form must lie in that span with integer coefficients.
pub fn higher_relations_span(k: MiddleIndex, lmax: u32) -> Result<bool> {
    if lmax < 2 || lmax > 2 * k.get() {
        return Err(Error::InvalidArgument(format!(
            "lmax must lie in 2..={} for K = {}, got {lmax}",
            2 * k.get(),
            k
        )));
    }
    let u = u_subrelations(k);
    let generators = [
        u[0].form.clone(),
        u[1].form.clone(),
        u[2].form
            .scale(&(ExactRational::one() / rational(delta(k) as i64))),
    ];

    let td = genus_class::<ExactRational>(Genus::Todd, k);
    let e = chern_e_all::<ExactRational>(lmax, k);
    let mut targets: Vec<PairingForm> = e.iter().map(|el| (el * &td).pair()).collect();
    for (i, el) in e.iter().enumerate() {
        for em in &e[i..] {
            targets.push((&(el * em) * &td).pair());
        }
    }

    let denom = common_denominator(
        generators
            .iter()
            .chain(&targets)
            .flat_map(|f| [&f.ax, &f.ay]),
    );
    let scale = |f: &PairingForm| -> (BigInt, BigInt) {
        let d = BigRational::from_integer(denom.clone());
        ((&f.ax * &d).to_integer(), (&f.ay * &d).to_integer())
    };
    let gens: Vec<(BigInt, BigInt)> = generators.iter().map(scale).collect();
    let lattice = LatticeBasis::from_generators(&gens)
        .ok_or_else(|| Error::Internal(format!("sub-relation forms are degenerate at K = {k}")))?;
    Ok(targets.iter().all(|f| {
        let (a, b) = scale(f);
        lattice.contains(&a, &b)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> ExactRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn mi(k: u32) -> MiddleIndex {
        MiddleIndex::new(k).unwrap()
    }

    fn pf(ax: ExactRational, ay: ExactRational) -> PairingForm {
        PairingForm::new(ax, ay)
    }

    #[test]
    fn todd_coefficients() {
        assert_eq!(todd_coefficient(2), q(1, 12));
        assert_eq!(todd_coefficient(6), q(1, 30240));
        assert_eq!(todd_coefficient(3), q(0, 1));
        assert_eq!(todd_coefficient(4), q(-1, 720));
    }

    #[test]
    fn l_coefficients() {
        assert_eq!(l_coefficient(1), q(1, 3));
        assert_eq!(l_coefficient(2), q(7, 45));
        assert_eq!(l_coefficient(3), q(62, 945));
        let s1 = l_coefficient(1);
        assert_eq!(q(2, 1) * &s1 * &s1 - l_coefficient(2), q(3, 45));
    }

    #[test]
    fn signature_forms() {
        assert_eq!(signature_form(mi(2)), pf(q(3, 45), q(14, 45)));
        assert_eq!(signature_form(mi(4)), pf(q(305, 14175), q(762, 14175)));
        assert_eq!(signature_form(mi(3)), pf(q(62, 945), q(-124, 945)));
        for kk in 2..=12 {
            assert!(!signature_form(mi(kk)).ax.is_zero(), "K={kk}");
        }
    }

    #[test]
    fn u_subrelation_forms() {
        let u = u_subrelations(mi(2));
        assert_eq!(u[0].form, pf(q(3, 720), q(-1, 720)));
        assert_eq!(u[1].form, pf(q(0, 1), q(-1, 6)));
        assert_eq!((u[2].form.clone(), u[2].modulus), (pf(q(1, 1), q(0, 1)), 1));

        let u = u_subrelations(mi(4));
        assert_eq!(u[0].form, pf(q(5, 3628800), q(-3, 3628800)));
        assert_eq!(u[1].form, pf(q(5, 15120), q(-3, 15120)));
        assert_eq!(
            (u[2].form.clone(), u[2].modulus),
            (pf(q(1, 36), q(0, 1)), 2)
        );

        let u = u_subrelations(mi(3));
        assert_eq!((u[2].form.clone(), u[2].modulus), (pf(q(1, 4), q(0, 1)), 2));
    }

    #[test]
    fn su_subrelation_forms() {
        let su = su_subrelations(mi(3)).unwrap();
        assert_eq!(
            (su[0].form.clone(), su[0].modulus),
            (pf(q(-1, 60480), q(2, 60480)), 2)
        );
        assert_eq!(
            (su[1].form.clone(), su[1].modulus),
            (pf(q(1, 240), q(-2, 240)), 1)
        );
        let su5 = su_subrelations(mi(5)).unwrap();
        assert_eq!(su5[1].form, pf(q(1, 2 * 362880), q(-1, 362880)));
        assert_eq!(su_subrelations(mi(4)), Err(Error::EvenMiddleIndex(4)));
    }

    #[test]
    fn su_and_u_forms_agree_for_odd_k() {
        for kk in [3u32, 5, 7, 9] {
            let u = u_subrelations(mi(kk));
            let su = su_subrelations(mi(kk)).unwrap();
            assert_eq!(u[0].form, su[0].form);
            assert_eq!((u[0].modulus, su[0].modulus), (1, 2));
            assert_eq!(u[1].form, su[1].form);
        }
    }

    #[test]
    fn relation_sets() {
        let r8 = relation_set(8).unwrap();
        assert_eq!(r8.delta, 1);
        assert_eq!(r8.signature_form, pf(q(3, 45), q(14, 45)));
        let moduli: Vec<u32> = r8.conditions.iter().map(|c| c.modulus).collect();
        assert_eq!(moduli, vec![1, 1, 1]);

        let r12 = relation_set(12).unwrap();
        assert_eq!(r12.k.get(), 3);
        let forms: Vec<(PairingForm, u32)> = r12
            .conditions
            .iter()
            .map(|c| (c.form.clone(), c.modulus))
            .collect();
        assert_eq!(
            forms,
            vec![
                (pf(q(-1, 60480), q(2, 60480)), 2),
                (pf(q(1, 240), q(-2, 240)), 1),
                (pf(q(1, 4), q(0, 1)), 2),
            ]
        );

        let r16 = relation_set(16).unwrap();
        assert_eq!(r16.signature_form, pf(q(305, 14175), q(762, 14175)));
        assert_eq!(r16.conditions[2].modulus, 2);

        assert_eq!(relation_set(4), Err(Error::InvalidDimension(4)));
        assert_eq!(relation_set(10), Err(Error::InvalidDimension(10)));
    }

    #[test]
    fn divisibility_condition_holds() {
        let c = &relation_set(8).unwrap().conditions[0];
        assert!(c.holds(&q(2, 1), &q(6, 1)));
        assert!(!c.holds(&q(-28, 1), &q(6, 1)));
    }

    #[test]
    fn oracle_small_k() {
        for kk in [2u32, 3, 4, 5] {
            let r = verify_against_oracle(mi(kk));
            assert!(r.all_equal, "K={kk}: {:?}", r.details);
        }
    }

    #[test]
    fn higher_relations_small_k() {
        assert!(higher_relations_span(mi(2), 4).unwrap());
        assert!(higher_relations_span(mi(3), 6).unwrap());
        assert!(higher_relations_span(mi(3), 7).is_err());
        assert!(higher_relations_span(mi(3), 1).is_err());
    }
}
