//! Cyclotomic polynomials and binomial factorization.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::poly::Poly;
use crate::var::Monomial;

/// Coefficients of the `d`-th cyclotomic polynomial, lowest degree first.
pub fn cyclotomic(d: u32) -> Arc<Vec<i64>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(c) = cache.lock().unwrap().get(&d) {
        return c.clone();
    }
    assert!(d >= 1, "cyclotomic index must be positive");
    // x^d - 1 divided by every Φ_e with e a proper divisor of d
    let mut num = vec![0i64; d as usize + 1];
    num[0] = -1;
    num[d as usize] = 1;
    for e in 1..d {
        if d.is_multiple_of(e) {
            num = div_univariate(&num, &cyclotomic(e));
        }
    }
    let out = Arc::new(num);
    cache.lock().unwrap().insert(d, out.clone());
    out
}

fn div_univariate(a: &[i64], b: &[i64]) -> Vec<i64> {
    let db = b.len() - 1;
    assert_eq!(b[db], 1, "monic divisor expected");
    let mut r = a.to_vec();
    let mut q = vec![0i64; a.len() - db];
    for i in (0..q.len()).rev() {
        let c = r[i + db];
        q[i] = c;
        for (j, bj) in b.iter().enumerate() {
            r[i + j] -= c * bj;
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0));
    q
}

pub fn euler_phi(d: u32) -> u32 {
    cyclotomic(d).len() as u32 - 1
}

/// `Φ_d(y)` as a Laurent polynomial.
pub fn cyclotomic_poly(d: u32, y: Monomial) -> Poly {
    let c = cyclotomic(d);
    Poly::from_terms(
        c.iter()
            .enumerate()
            .filter(|(_, &k)| k != 0)
            .map(|(e, &k)| (y.powi(e as i32), BigInt::from(k))),
    )
}

pub fn divisors(k: u32) -> impl Iterator<Item = u32> {
    (1..=k).filter(move |d| k.is_multiple_of(*d))
}

fn prime_factors(mut k: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= k {
        if k.is_multiple_of(p) {
            out.push(p);
            while k.is_multiple_of(p) {
                k /= p;
            }
        }
        p += 1;
    }
    if k > 1 {
        out.push(k);
    }
    out
}

/// Factor `Φ_d(y^g)` into cyclotomic polynomials in `y`.
pub fn cyclotomic_of_power(d: u32, g: u32) -> Vec<u32> {
    let mut orders = vec![d];
    let mut rest = g;
    for p in prime_factors(g) {
        while rest.is_multiple_of(p) {
            rest /= p;
            orders = orders
                .into_iter()
                .flat_map(|e| if e % p == 0 { vec![e * p] } else { vec![e * p, e] })
                .collect();
        }
    }
    orders
}

/// A unit `c * m` of the Laurent ring together with cyclotomic factors:
/// the polynomial equals `c * m * ∏ Φ_d(base)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycloSplit {
    pub coeff: BigInt,
    pub unit: Monomial,
    pub factors: Vec<(Monomial, u32)>,
}

/// Decompose `1 + c*m` with `c = ±1` and `m ≠ 1` into cyclotomic factors
/// of a primitive, positively oriented base.
pub fn split_one_plus(c_is_minus: bool, m: Monomial) -> CycloSplit {
    debug_assert!(!m.is_one());
    let mut coeff = BigInt::one();
    let mut unit = Monomial::ONE;
    let mut y = m;
    if !y.is_oriented() {
        // 1 - m = -m (1 - m^-1),  1 + m = m (1 + m^-1)
        if c_is_minus {
            coeff = -coeff;
        }
        unit = m;
        y = m.inv();
    }
    let g = y.content();
    let base = y.root(g);
    let factors = if c_is_minus {
        // 1 - y^g = -(y^g - 1) = -∏_{d | g} Φ_d(y)
        coeff = -coeff;
        divisors(g).map(|d| (base, d)).collect()
    } else {
        // 1 + y^g = ∏_{d | 2g, d ∤ g} Φ_d(y)
        divisors(2 * g)
            .filter(|d| !g.is_multiple_of(*d))
            .map(|d| (base, d))
            .collect()
    };
    CycloSplit { coeff, unit, factors }
}

/// Recognize `p` as `a*m1 + b*m2` with `|a| = |b|` and split it.
pub fn split_binomial(p: &Poly) -> Option<CycloSplit> {
    if p.len() != 2 {
        return None;
    }
    let (m1, a) = &p.terms()[0];
    let (m2, b) = &p.terms()[1];
    if a.clone() != b.clone() && a.clone() != -b.clone() {
        return None;
    }
    let minus = a.clone() == -b.clone();
    let mut s = split_one_plus(minus, *m2 / *m1);
    s.coeff *= a;
    s.unit = s.unit * *m1;
    Some(s)
}

/// `Φ_d(y)` after a monomial substitution sends `y` to `image`.
///
/// Returns `None` when the image vanishes identically (only `Φ_1(1)`).
pub fn substitute_cyclotomic(d: u32, image: Monomial) -> Option<CycloSplit> {
    if image.is_one() {
        let value = cyclotomic(d).iter().sum::<i64>();
        if value == 0 {
            return None;
        }
        return Some(CycloSplit {
            coeff: BigInt::from(value),
            unit: Monomial::ONE,
            factors: Vec::new(),
        });
    }
    let mut coeff = BigInt::one();
    let mut unit = Monomial::ONE;
    let mut y = image;
    if !y.is_oriented() {
        // Φ_1(y^-1) = -y^-1 Φ_1(y);  Φ_d(y^-1) = y^-φ(d) Φ_d(y) for d > 1
        if d == 1 {
            coeff = -coeff;
            unit = y;
        } else {
            unit = y.powi(euler_phi(d) as i32);
        }
        y = y.inv();
    }
    let g = y.content();
    let base = y.root(g);
    let factors = cyclotomic_of_power(d, g).into_iter().map(|e| (base, e)).collect();
    Some(CycloSplit { coeff, unit, factors })
}

/// Evaluate `Φ_d` at a rational point by Horner's rule.
pub fn eval_cyclotomic(d: u32, y: &num_rational::BigRational) -> num_rational::BigRational {
    let c = cyclotomic(d);
    let mut acc = num_rational::BigRational::zero();
    for &k in c.iter().rev() {
        acc = acc * y + num_rational::BigRational::from_integer(BigInt::from(k));
    }
    acc
}
