//! Exact integer and rational helpers: factorials, 2-adic orders, Bernoulli
//! numbers and the alternating binomial sums behind the relation coefficients.

use std::sync::RwLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

pub fn factorial(m: u32) -> BigInt {
    (2..=m).fold(BigInt::one(), |acc, i| acc * i)
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Values with a 2-adic order.
pub trait TwoAdicOrder {
    /// Largest `e` such that `2^e` divides `self`, negative when a rational has
    /// an even denominator. Zero has no order.
    fn two_adic_order(&self) -> Result<i64>;
}

impl TwoAdicOrder for BigInt {
    fn two_adic_order(&self) -> Result<i64> {
        self.trailing_zeros()
            .map(|e| e as i64)
            .ok_or(Error::UndefinedValuation)
    }
}

impl TwoAdicOrder for BigRational {
    fn two_adic_order(&self) -> Result<i64> {
        // reduced form: at most one of numer/denom is even
        Ok(self.numer().two_adic_order()? - self.denom().two_adic_order()?)
    }
}

impl TwoAdicOrder for i64 {
    fn two_adic_order(&self) -> Result<i64> {
        if *self == 0 {
            Err(Error::UndefinedValuation)
        } else {
            Ok(self.trailing_zeros() as i64)
        }
    }
}

pub fn two_adic_order<V: TwoAdicOrder + ?Sized>(v: &V) -> Result<i64> {
    v.two_adic_order()
}

pub fn binary_weight(m: u64) -> u32 {
    m.count_ones()
}

// Bernoulli numbers with the B_1 = -1/2 convention, as produced by the
// recurrence; the public accessor flips B_1.
static BERNOULLI_MINUS: RwLock<Vec<BigRational>> = RwLock::new(Vec::new());

/// Signed Bernoulli number `B_m` with `B_1 = +1/2`.
pub fn bernoulli(m: u32) -> BigRational {
    if m == 1 {
        return BigRational::new(BigInt::one(), BigInt::from(2));
    }
    if m > 1 && m % 2 == 1 {
        return BigRational::zero();
    }
    let idx = m as usize;
    if let Some(b) = BERNOULLI_MINUS
        .read()
        .ok()
        .and_then(|t| t.get(idx).cloned())
    {
        return b;
    }
    let mut table = match BERNOULLI_MINUS.write() {
        Ok(t) => t,
        Err(poisoned) => poisoned.into_inner(),
    };
    while table.len() <= idx {
        let n = table.len() as u32;
        let next = if n == 0 {
            BigRational::one()
        } else {
            // sum_{j=0}^{n} C(n+1, j) B_j = 0
            let mut acc = BigRational::zero();
            let mut c = BigInt::one();
            for (j, b) in table.iter().enumerate() {
                if !b.is_zero() {
                    acc += b * BigRational::from_integer(c.clone());
                }
                let j = j as u32;
                c = c * (n + 1 - j) / (j + 1);
            }
            -acc / BigRational::from_integer(BigInt::from(n + 1))
        };
        table.push(next);
    }
    table[idx].clone()
}

fn is_prime(p: u64) -> bool {
    p >= 2
        && (2..)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

/// Checks `B_m + sum_{p prime, (p-1) | m} 1/p` is an integer.
pub fn von_staudt_clausen_check(m: u32) -> Result<bool> {
    if m < 2 || m % 2 == 1 {
        return Err(Error::InvalidArgument(format!(
            "von Staudt-Clausen check needs an even index >= 2, got {m}"
        )));
    }
    let m = m as u64;
    let correction: BigRational = (1..=m)
        .filter(|d| m.is_multiple_of(*d) && is_prime(d + 1))
        .map(|d| BigRational::new(BigInt::one(), BigInt::from(d + 1)))
        .sum();
    Ok((bernoulli(m as u32) + correction).is_integer())
}

/// `C_l(m) = sum_{j=0}^{l-1} (-1)^j C(l, j) (l-j)^m`, which equals `l! S(m, l)`.
pub fn stirling_c(l: u32, m: u32) -> BigInt {
    let mut acc = BigInt::zero();
    for j in 0..l {
        let term = binomial(l, j) * BigInt::from(l - j).pow(m);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// `M_l(k) = sum_{j=0}^{l-1} (-1)^j C(2l, j) (l-j)^{2k}`; always divisible by `l`.
pub fn coeff_m(l: u32, k: u32) -> BigInt {
    let mut acc = BigInt::zero();
    for j in 0..l {
        let term = binomial(2 * l, j) * BigInt::from(l - j).pow(2 * k);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Nu2Identities {
    /// `nu_2(|B_{2k}| / 2k)`
    pub nu_b: i64,
    /// `nu_2((2k-1)!)`
    pub nu_f1: i64,
    /// `nu_2((4k-1)!)`
    pub nu_f2: i64,
    pub all_match: bool,
}

/// Evaluates the three 2-adic identities used in the divisibility bounds for
/// dimension `8k` and reports whether each matches its closed form.
pub fn nu2_identities(k: u32) -> Result<Nu2Identities> {
    if k == 0 {
        return Err(Error::InvalidArgument("nu2 identities need k >= 1".into()));
    }
    let nu_k = two_adic_order(&(k as i64))?;
    let wt = binary_weight(k as u64) as i64;
    let k_i = k as i64;

    let b_over = bernoulli(2 * k).abs() / BigRational::from_integer(BigInt::from(2 * k));
    let nu_b = b_over.two_adic_order()?;
    let nu_f1 = factorial(2 * k - 1).two_adic_order()?;
    let nu_f2 = factorial(4 * k - 1).two_adic_order()?;

    let all_match =
        nu_b == -(nu_k + 2) && nu_f1 == 2 * k_i - nu_k - wt - 1 && nu_f2 == 4 * k_i - nu_k - wt - 2;
    Ok(Nu2Identities {
        nu_b,
        nu_f1,
        nu_f2,
        all_match,
    })
}

/// Least common multiple of the denominators of `values`.
pub(crate) fn common_denominator<'a>(values: impl IntoIterator<Item = &'a BigRational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}
