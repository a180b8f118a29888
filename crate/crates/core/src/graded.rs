//! The truncated graded ring `Q[c_K, c_{2K}] / (degree > 2K)` with basis
//! `{1, c_K, c_K^2, c_{2K}}`, and the characteristic classes built in it.
//!
//! Every multiplicative genus is evaluated through power sums of the Chern
//! roots: `prod_i Q(x_i) = exp(sum_m a_m S_m)` where `a_m` are the coefficients
//! of `log Q`. With only `c_K` and `c_{2K}` nonzero, `S_m` vanishes unless
//! `m` is `K` or `2K`, so the exponential truncates after the square term.
//! This route is independent of the closed forms in [`crate::relations`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;

use crate::numtheory::{coeff_m, factorial, stirling_c};
use crate::{Error, Result, Scalar};

/// The index `K = n/4`: `c_K` sits in the middle degree, `c_{2K}` on top.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MiddleIndex(u32);

impl MiddleIndex {
    pub fn new(k: u32) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidMiddleIndex(k as u64));
        }
        Ok(MiddleIndex(k))
    }

    /// `K = n/4` for a dimension `n = 0 mod 4`, `n >= 8`.
    pub fn from_dim(n: u64) -> Result<Self> {
        if !n.is_multiple_of(4) || n < 8 || n / 4 > u32::MAX as u64 {
            return Err(Error::InvalidDimension(n));
        }
        Ok(MiddleIndex((n / 4) as u32))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    pub fn dim(self) -> u64 {
        4 * self.0 as u64
    }

    pub fn is_odd(self) -> bool {
        self.0 % 2 == 1
    }
}

impl fmt::Display for MiddleIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// `u0 + uk c_K + ukk c_K^2 + u2k c_{2K}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graded<T> {
    pub u0: T,
    pub uk: T,
    pub ukk: T,
    pub u2k: T,
}

impl<T: Scalar> Graded<T> {
    pub fn new(u0: T, uk: T, ukk: T, u2k: T) -> Self {
        Graded { u0, uk, ukk, u2k }
    }

    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero(), T::zero(), T::zero())
    }

    pub fn one() -> Self {
        Self::new(T::one(), T::zero(), T::zero(), T::zero())
    }

    pub fn c_k() -> Self {
        Self::new(T::zero(), T::one(), T::zero(), T::zero())
    }

    pub fn c_k_squared() -> Self {
        Self::new(T::zero(), T::zero(), T::one(), T::zero())
    }

    pub fn c_2k() -> Self {
        Self::new(T::zero(), T::zero(), T::zero(), T::one())
    }

    pub fn is_zero(&self) -> bool {
        self.u0.is_zero() && self.uk.is_zero() && self.ukk.is_zero() && self.u2k.is_zero()
    }

    pub fn scale(&self, r: &T) -> Self {
        Self::new(
            self.u0.clone() * r.clone(),
            self.uk.clone() * r.clone(),
            self.ukk.clone() * r.clone(),
            self.u2k.clone() * r.clone(),
        )
    }

    pub fn pair(&self) -> Pairing<T> {
        pair(self)
    }

    pub fn map<U, F: Fn(&T) -> U>(&self, f: F) -> Graded<U> {
        Graded {
            u0: f(&self.u0),
            uk: f(&self.uk),
            ukk: f(&self.ukk),
            u2k: f(&self.u2k),
        }
    }
}

/// Truncated product; anything of degree above `2K` (in Chern-class degree) is dropped.
pub fn graded_mul<T: Scalar>(u: &Graded<T>, v: &Graded<T>) -> Graded<T> {
    let c = |a: &T, b: &T| a.clone() * b.clone();
    Graded {
        u0: c(&u.u0, &v.u0),
        uk: c(&u.u0, &v.uk) + c(&u.uk, &v.u0),
        ukk: c(&u.u0, &v.ukk) + c(&u.uk, &v.uk) + c(&u.ukk, &v.u0),
        u2k: c(&u.u0, &v.u2k) + c(&u.u2k, &v.u0),
    }
}

impl<T: Scalar> Add for &Graded<T> {
    type Output = Graded<T>;
    fn add(self, rhs: &Graded<T>) -> Graded<T> {
        Graded {
            u0: self.u0.clone() + rhs.u0.clone(),
            uk: self.uk.clone() + rhs.uk.clone(),
            ukk: self.ukk.clone() + rhs.ukk.clone(),
            u2k: self.u2k.clone() + rhs.u2k.clone(),
        }
    }
}

impl<T: Scalar> Sub for &Graded<T> {
    type Output = Graded<T>;
    fn sub(self, rhs: &Graded<T>) -> Graded<T> {
        self + &(-rhs)
    }
}

impl<T: Scalar> Neg for &Graded<T> {
    type Output = Graded<T>;
    fn neg(self) -> Graded<T> {
        self.map(|v| -v.clone())
    }
}

impl<T: Scalar> Mul for &Graded<T> {
    type Output = Graded<T>;
    fn mul(self, rhs: &Graded<T>) -> Graded<T> {
        graded_mul(self, rhs)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<T: Scalar> $tr for Graded<T> {
            type Output = Graded<T>;
            fn $m(self, rhs: Graded<T>) -> Graded<T> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<T: Scalar> Neg for Graded<T> {
    type Output = Graded<T>;
    fn neg(self) -> Graded<T> {
        -&self
    }
}

/// Linear form `ax * x + ay * y` with `x = <c_K^2, mu>`, `y = <c_{2K}, mu>`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Pairing<T> {
    pub ax: T,
    pub ay: T,
}

impl<T: Scalar> Pairing<T> {
    pub fn new(ax: T, ay: T) -> Self {
        Pairing { ax, ay }
    }

    pub fn eval(&self, x: &T, y: &T) -> T {
        self.ax.clone() * x.clone() + self.ay.clone() * y.clone()
    }

    pub fn scale(&self, r: &T) -> Self {
        Pairing::new(self.ax.clone() * r.clone(), self.ay.clone() * r.clone())
    }
}

impl<T: Scalar> Add for &Pairing<T> {
    type Output = Pairing<T>;
    fn add(self, rhs: &Pairing<T>) -> Pairing<T> {
        Pairing::new(
            self.ax.clone() + rhs.ax.clone(),
            self.ay.clone() + rhs.ay.clone(),
        )
    }
}

impl<T: Scalar> Sub for &Pairing<T> {
    type Output = Pairing<T>;
    fn sub(self, rhs: &Pairing<T>) -> Pairing<T> {
        Pairing::new(
            self.ax.clone() - rhs.ax.clone(),
            self.ay.clone() - rhs.ay.clone(),
        )
    }
}

impl fmt::Display for Pairing<BigRational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})x + ({})y", self.ax, self.ay)
    }
}

/// Evaluation on the fundamental class: only the top-degree part survives.
pub fn pair<T: Scalar>(u: &Graded<T>) -> Pairing<T> {
    Pairing::new(u.ukk.clone(), u.u2k.clone())
}

/// Power sum `S_m` of the Chern roots when only `c_K` and `c_{2K}` are nonzero.
pub fn power_sum<T: Scalar>(m: u32, k: MiddleIndex) -> Graded<T> {
    let kk = k.get();
    let kt = T::from_int(kk as i64);
    if m == kk {
        let sign = if kk % 2 == 1 { T::one() } else { -T::one() };
        Graded::c_k().scale(&(sign * kt))
    } else if m == 2 * kk {
        Graded::new(T::zero(), T::zero(), kt.clone(), -(T::from_int(2) * kt))
    } else {
        Graded::zero()
    }
}

/// Coefficients `a_1..a_order` of `log Q(x)` for `Q(x) = 1 + q_1 x + q_2 x^2 + ...`.
///
/// `q[0]` is `q_1`; missing trailing coefficients are zero.
pub fn series_log<T: Scalar>(q: &[T], order: usize) -> Vec<T> {
    let qc = |m: usize| -> T {
        if m == 0 {
            T::one()
        } else {
            q.get(m - 1).cloned().unwrap_or_else(T::zero)
        }
    };
    // Q' = Q L'  =>  m q_m = sum_{j=1}^{m} j a_j q_{m-j}
    let mut a: Vec<T> = Vec::with_capacity(order);
    for m in 1..=order {
        let mut acc = T::from_int(m as i64) * qc(m);
        for j in 1..m {
            acc = acc - T::from_int(j as i64) * a[j - 1].clone() * qc(m - j);
        }
        a.push(acc / T::from_int(m as i64));
    }
    a
}

/// Reciprocal of a power series with constant term one, to `order`.
fn series_inverse<T: Scalar>(d: &[T], order: usize) -> Vec<T> {
    assert!(
        d.first().is_some_and(|c| c.is_one()),
        "series inverse needs constant term 1"
    );
    let dc = |m: usize| d.get(m).cloned().unwrap_or_else(T::zero);
    let mut inv = vec![T::one()];
    for m in 1..=order {
        let mut acc = T::zero();
        for j in 1..=m {
            acc = acc - dc(j) * inv[m - j].clone();
        }
        inv.push(acc);
    }
    inv
}

fn series_mul<T: Scalar>(a: &[T], b: &[T], order: usize) -> Vec<T> {
    (0..=order)
        .map(|m| {
            (0..=m).fold(T::zero(), |acc, j| match (a.get(j), b.get(m - j)) {
                (Some(x), Some(y)) => acc + x.clone() * y.clone(),
                _ => acc,
            })
        })
        .collect()
}

fn inv_factorial<T: Scalar>(m: u32) -> T {
    T::one() / T::from_bigint(&factorial(m))
}

/// Multiplicative sequences evaluated on Chern roots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Genus {
    /// `x / (1 - e^{-x})`
    Todd,
    /// `(x/2) / sinh(x/2)`
    Ahat,
    /// `x / tanh(x)`
    L,
}

/// Power series coefficients of the characteristic series, degrees `0..=order`.
pub fn characteristic_series<T: Scalar>(kind: Genus, order: usize) -> Vec<T> {
    match kind {
        Genus::Todd => {
            // (1 - e^{-x}) / x = sum (-1)^m x^m / (m+1)!
            let d: Vec<T> = (0..=order as u32)
                .map(|m| {
                    let c = inv_factorial::<T>(m + 1);
                    if m % 2 == 0 {
                        c
                    } else {
                        -c
                    }
                })
                .collect();
            series_inverse(&d, order)
        }
        Genus::Ahat => {
            // sinh(x/2) / (x/2) = sum x^{2m} / (4^m (2m+1)!)
            let d: Vec<T> = (0..=order as u32)
                .map(|m| {
                    if m % 2 == 1 {
                        T::zero()
                    } else {
                        let quarter = T::one() / T::from_int(4);
                        let mut c = inv_factorial::<T>(m + 1);
                        for _ in 0..m / 2 {
                            c = c * quarter.clone();
                        }
                        c
                    }
                })
                .collect();
            series_inverse(&d, order)
        }
        Genus::L => {
            let even = |shift: u32| -> Vec<T> {
                (0..=order as u32)
                    .map(|m| {
                        if m % 2 == 1 {
                            T::zero()
                        } else {
                            inv_factorial(m + shift)
                        }
                    })
                    .collect()
            };
            let cosh = even(0);
            let sinh_over_x = even(1);
            series_mul(&cosh, &series_inverse(&sinh_over_x, order), order)
        }
    }
}

/// `exp(a)` for `a` with zero constant term; `a^3` vanishes in the truncated ring.
fn exp_nilpotent<T: Scalar>(a: &Graded<T>) -> Graded<T> {
    assert!(a.u0.is_zero(), "exponential needs zero constant term");
    let half = T::one() / T::from_int(2);
    &(&Graded::one() + a) + &graded_mul(a, a).scale(&half)
}

/// Total genus class `prod_i Q(x_i)` for the given characteristic series.
pub fn genus_class<T: Scalar>(kind: Genus, k: MiddleIndex) -> Graded<T> {
    let order = 2 * k.get() as usize;
    let q = characteristic_series::<T>(kind, order);
    let a = series_log(&q[1..], order);
    let kk = k.get() as usize;
    let exponent = &power_sum::<T>(k.get(), k).scale(&a[kk - 1])
        + &power_sum::<T>(2 * k.get(), k).scale(&a[2 * kk - 1]);
    exp_nilpotent(&exponent)
}

/// Newton's identities `l e_l = sum_{i=1}^{l} (-1)^{i-1} e_{l-i} S_i`, returning
/// `e_1..e_lmax`. `s[0]` is `S_1`; missing power sums are zero.
pub fn elementary_from_power_sums<T: Scalar>(s: &[Graded<T>], lmax: usize) -> Vec<Graded<T>> {
    let mut e: Vec<Graded<T>> = vec![Graded::one()];
    for l in 1..=lmax {
        let mut acc = Graded::zero();
        for i in 1..=l {
            let Some(si) = s.get(i - 1) else { continue };
            let term = graded_mul(&e[l - i], si);
            acc = if i % 2 == 1 {
                &acc + &term
            } else {
                &acc - &term
            };
        }
        e.push(acc.scale(&(T::one() / T::from_int(l as i64))));
    }
    e.remove(0);
    e
}

/// Power sums `S_l^c` of the variables `e^{x_i} - 1`, for `l = 1..=lmax`.
pub fn chern_power_sums<T: Scalar>(lmax: u32, k: MiddleIndex) -> Vec<Graded<T>> {
    let kk = k.get();
    let e1_k = power_sum::<T>(kk, k).scale(&inv_factorial(kk));
    let e1_2k = power_sum::<T>(2 * kk, k).scale(&inv_factorial(2 * kk));
    (1..=lmax)
        .map(|l| {
            &e1_k.scale(&T::from_bigint(&stirling_c(l, kk)))
                + &e1_2k.scale(&T::from_bigint(&stirling_c(l, 2 * kk)))
        })
        .collect()
}

/// `e_1^c .. e_lmax^c`: elementary symmetric polynomials of `e^{x_i} - 1`.
pub fn chern_e_all<T: Scalar>(lmax: u32, k: MiddleIndex) -> Vec<Graded<T>> {
    elementary_from_power_sums(&chern_power_sums(lmax, k), lmax as usize)
}

/// `e_l^c`; `e_0^c` is the unit.
pub fn chern_e<T: Scalar>(l: u32, k: MiddleIndex) -> Graded<T> {
    if l == 0 {
        return Graded::one();
    }
    chern_e_all(l, k).pop().unwrap_or_else(Graded::zero)
}

/// `e_1^{p(c)} = (2 / (2K)!) S_{2K}`, the degree-`2K` part of `e^{x} + e^{-x} - 2` summed.
pub fn pontryagin_e1<T: Scalar>(k: MiddleIndex) -> Graded<T> {
    power_sum::<T>(2 * k.get(), k).scale(&(T::from_int(2) * inv_factorial(2 * k.get())))
}

/// `e_l^{p(c)}`: elementary symmetric polynomials of `e^{x_i} + e^{-x_i} - 2`,
/// only defined here for odd `K`.
pub fn pontryagin_e<T: Scalar>(l: u32, k: MiddleIndex) -> Result<Graded<T>> {
    if !k.is_odd() {
        return Err(Error::EvenMiddleIndex(k.get() as u64));
    }
    if l == 0 {
        return Ok(Graded::one());
    }
    let e1 = pontryagin_e1::<T>(k);
    let s: Vec<Graded<T>> = (1..=l)
        .map(|i| e1.scale(&T::from_bigint(&coeff_m(i, k.get()))))
        .collect();
    Ok(elementary_from_power_sums(&s, l as usize)
        .pop()
        .unwrap_or_else(Graded::zero))
}
