//! Multivariate polynomial gcd over the integers (primitive remainder sequences).

use crate::poly::Poly;
use crate::var::{Monomial, Var, NVARS};
use num_bigint::BigInt;

/// Primitive gcd of two Laurent polynomials, normalized to have no monomial
/// factor, content 1 and positive leading coefficient. `gcd(0, 0) = 0`.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    match (a.is_zero(), b.is_zero()) {
        (true, true) => Poly::zero(),
        (true, false) => normalize(b),
        (false, true) => normalize(a),
        (false, false) => {
            let a = a.mul_monomial(a.monomial_content().inv());
            let b = b.mul_monomial(b.monomial_content().inv());
            normalize(&gcd_rec(&a, &b))
        }
    }
}

fn normalize(p: &Poly) -> Poly {
    if p.is_zero() {
        return Poly::zero();
    }
    p.split_units().2
}

fn main_var(a: &Poly, b: &Poly) -> Option<Var> {
    (0..NVARS)
        .rev()
        .map(Var::from_slot)
        .find(|&v| a.involves(v) || b.involves(v))
}

/// Coefficients of `p` viewed as a polynomial in `v`, indexed by degree.
fn coefficients(p: &Poly, v: Var) -> Vec<Poly> {
    let groups = p.collect_in(v);
    let top = groups.last().map_or(0, |(e, _)| *e as usize);
    let mut out = vec![Poly::zero(); top + 1];
    for (e, c) in groups {
        out[e as usize] = c;
    }
    out
}

fn assemble(coeffs: &[Poly], v: Var) -> Poly {
    let mut out = Poly::zero();
    for (e, c) in coeffs.iter().enumerate() {
        if !c.is_zero() {
            out = out.add(&c.mul_monomial(Monomial::pow(v, e as i32)));
        }
    }
    out
}

fn content_in(p: &Poly, v: Var) -> Poly {
    coefficients(p, v)
        .iter()
        .filter(|c| !c.is_zero())
        .fold(
            Poly::zero(),
            |g, c| if g.is_zero() { normalize(c) } else { gcd_rec(&g, c) },
        )
}

fn primitive_in(p: &Poly, v: Var) -> Poly {
    let c = content_in(p, v);
    let q = p.div_exact(&c).expect("content divides polynomial");
    normalize(&q)
}

fn degree(coeffs: &[Poly]) -> Option<usize> {
    coeffs.iter().rposition(|c| !c.is_zero())
}

/// Pseudo-remainder of `a` by `b` as univariate polynomials.
fn prem(a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    let db = degree(b).expect("nonzero divisor");
    let lb = &b[db];
    let mut r = a.to_vec();
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c = c.mul(lb);
        }
        for (i, bc) in b.iter().enumerate() {
            r[i + shift] = r[i + shift].sub(&bc.mul(&lr));
        }
        r.truncate(dr);
    }
    r
}

const PRIME: u64 = (1 << 61) - 1;

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a);
        }
        a = mul_mod(a, a);
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64) -> u64 {
    pow_mod(a, PRIME - 2)
}

/// Image of `p` in `F_p[v]` after sending every other variable to `point`.
fn image_mod(p: &Poly, v: Var, point: &[u64; NVARS]) -> Vec<u64> {
    let mut out: Vec<u64> = Vec::new();
    let big = BigInt::from(PRIME);
    for (m, c) in p.terms() {
        let x = (c % &big + &big) % &big;
        let mut val: u64 = x.iter_u64_digits().next().unwrap_or(0);
        for (w, e) in m.iter() {
            if w != v {
                val = mul_mod(val, pow_mod(point[w.slot()], e as u64));
            }
        }
        let k = m.exp(v) as usize;
        if out.len() <= k {
            out.resize(k + 1, 0);
        }
        out[k] = (out[k] + val) % PRIME;
    }
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

fn gcd_degree_mod(mut a: Vec<u64>, mut b: Vec<u64>) -> usize {
    while !b.is_empty() {
        // a mod b
        let lb = inv_mod(*b.last().unwrap());
        while a.len() >= b.len() {
            let q = mul_mod(*a.last().unwrap(), lb);
            let shift = a.len() - b.len();
            for (i, &bc) in b.iter().enumerate() {
                a[i + shift] = (a[i + shift] + PRIME - mul_mod(q, bc)) % PRIME;
            }
            while a.last() == Some(&0) {
                a.pop();
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// Proves that `a` and `b` share no factor involving `v`: the gcd keeps its
/// `v`-degree at any point where the leading coefficient of `a` survives.
fn coprime_in(a: &Poly, b: &Poly, v: Var) -> bool {
    for seed in 1..=4u64 {
        let mut point = [0u64; NVARS];
        for (i, x) in point.iter_mut().enumerate() {
            *x = pow_mod(3 + seed, (7 * i as u64 + 13 * seed) | 1);
        }
        let ia = image_mod(a, v, &point);
        let ib = image_mod(b, v, &point);
        let da = a.degree_range(v).map_or(0, |(_, hi)| hi as usize);
        let db = b.degree_range(v).map_or(0, |(_, hi)| hi as usize);
        if ia.len() != da + 1 || ib.len() != db + 1 {
            continue;
        }
        return gcd_degree_mod(ia, ib) == 0;
    }
    false
}

fn gcd_rec(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return normalize(b);
    }
    if b.is_zero() {
        return normalize(a);
    }
    let Some(v) = main_var(a, b) else {
        return Poly::one();
    };
    if !a.involves(v) {
        return gcd_rec(a, &content_in(b, v));
    }
    if !b.involves(v) {
        return gcd_rec(&content_in(a, v), b);
    }
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let c = gcd_rec(&ca, &cb);
    if coprime_in(a, b, v) {
        return c;
    }
    let mut x = coefficients(&a.div_exact(&ca).expect("content"), v);
    let mut y = coefficients(&b.div_exact(&cb).expect("content"), v);
    if degree(&x) < degree(&y) {
        std::mem::swap(&mut x, &mut y);
    }
    loop {
        let r = prem(&x, &y);
        if degree(&r).is_none() {
            break;
        }
        x = y;
        let rp = primitive_in(&assemble(&r, v), v);
        if !rp.involves(v) {
            return c;
        }
        y = coefficients(&rp, v);
    }
    let g = primitive_in(&assemble(&y, v), v);
    normalize(&g.mul(&c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn p(terms: &[(i32, i32, i64)]) -> Poly {
        // (exp of t1, exp of v, coeff)
        Poly::from_terms(
            terms
                .iter()
                .map(|&(a, b, c)| (Monomial::pow(Var::t(1), a) * Monomial::pow(Var::V, b), BigInt::from(c))),
        )
    }

    #[test]
    fn gcd_of_products_recovers_common_factor() {
        let f = p(&[(1, 0, 1), (0, 1, 1), (0, 0, 1)]); // t1 + v + 1
        let g = p(&[(1, 1, 2), (0, 0, -3)]); // 2 t1 v - 3
        let h = p(&[(2, 0, 1), (0, 2, -1)]); // t1^2 - v^2
        let a = f.mul(&g);
        let b = f.mul(&h);
        assert_eq!(gcd(&a, &b), f);
    }

    #[test]
    fn coprime_gives_one() {
        let f = p(&[(1, 0, 1), (0, 0, 1)]);
        let g = p(&[(0, 1, 1), (0, 0, 1)]);
        assert!(gcd(&f, &g).is_one());
    }

    #[test]
    fn ignores_integer_content_and_monomials() {
        let f = p(&[(1, 0, 1), (0, 0, -1)]);
        let a = f.scale(&BigInt::from(6)).mul_monomial(Monomial::pow(Var::V, -2));
        let b = f.mul(&p(&[(0, 1, 1), (0, 0, 1)])).scale(&BigInt::from(4));
        assert_eq!(gcd(&a, &b), f);
    }
}
