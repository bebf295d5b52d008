//! Independent inertia computation: characteristic polynomial and Sturm
//! sequences, all over exact rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::seifert::Inertia;

type Poly = Vec<BigRational>;

fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn degree(p: &Poly) -> Option<usize> {
    if p.is_empty() {
        None
    } else {
        Some(p.len() - 1)
    }
}

fn derivative(p: &Poly) -> Poly {
    trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
            .collect(),
    )
}

fn sub(a: &Poly, b: &Poly) -> Poly {
    let n = a.len().max(b.len());
    let z = BigRational::zero();
    trim(
        (0..n)
            .map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z))
            .collect(),
    )
}

/// Quotient and remainder of polynomial division.
fn divmod(a: &Poly, b: &Poly) -> (Poly, Poly) {
    let db = degree(b).expect("division by zero polynomial");
    let mut r = a.clone();
    let mut q = vec![BigRational::zero(); a.len().saturating_sub(db).max(1)];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let coef = &r[dr] / &b[db];
        let shift = dr - db;
        q[shift] = coef.clone();
        let mut t = vec![BigRational::zero(); shift];
        t.extend(b.iter().map(|c| c * &coef));
        r = sub(&r, &t);
    }
    (trim(q), r)
}

fn monic(p: Poly) -> Poly {
    let lc = p.last().cloned().unwrap();
    p.into_iter().map(|c| c / &lc).collect()
}

fn gcd(a: &Poly, b: &Poly) -> Poly {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_empty() {
        let (_, r) = divmod(&x, &y);
        x = y;
        y = r;
    }
    if x.is_empty() {
        x
    } else {
        monic(x)
    }
}

/// Yun's algorithm: factors `f_i` with `p = c * prod f_i^i`, each squarefree.
fn squarefree(p: &Poly) -> Vec<(usize, Poly)> {
    let mut out = vec![];
    let dp = derivative(p);
    let a0 = gcd(p, &dp);
    let mut b = divmod(p, &a0).0;
    let mut c = divmod(&dp, &a0).0;
    let mut d = sub(&c, &derivative(&b));
    let mut i = 1;
    while degree(&b).unwrap_or(0) > 0 {
        let a = gcd(&b, &d);
        if degree(&a).unwrap_or(0) > 0 {
            out.push((i, a.clone()));
        }
        b = divmod(&b, &a).0;
        c = divmod(&d, &a).0;
        d = sub(&c, &derivative(&b));
        i += 1;
    }
    out
}

fn sturm_chain(f: &Poly) -> Vec<Poly> {
    let mut chain = vec![f.clone(), derivative(f)];
    while !chain.last().unwrap().is_empty() {
        let n = chain.len();
        let (_, r) = divmod(&chain[n - 2], &chain[n - 1]);
        chain.push(r.into_iter().map(|c| -c).collect());
    }
    chain.pop();
    chain
}

fn sign_changes(signs: impl Iterator<Item = i32>) -> usize {
    let mut last = 0;
    let mut n = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            n += 1;
        }
        last = s;
    }
    n
}

fn sgn(x: &BigRational) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Distinct roots of a squarefree `f` with `f(0) != 0`: `(positive, negative)`.
fn count_signed_roots(f: &Poly) -> (usize, usize) {
    let chain = sturm_chain(f);
    let at_zero = sign_changes(chain.iter().map(|p| sgn(&p[0])));
    let at_pos = sign_changes(chain.iter().map(|p| sgn(p.last().unwrap())));
    let at_neg = sign_changes(chain.iter().map(|p| {
        let s = sgn(p.last().unwrap());
        if (p.len() - 1) % 2 == 1 {
            -s
        } else {
            s
        }
    }));
    (at_zero - at_pos, at_neg - at_zero)
}

/// Coefficients of `det(xI - m)`, constant term first.
pub fn characteristic_polynomial(m: &[Vec<i64>]) -> Vec<BigRational> {
    let n = m.len();
    let a: Vec<Vec<BigRational>> = m
        .iter()
        .map(|r| {
            r.iter()
                .map(|&x| BigRational::from_integer(BigInt::from(x)))
                .collect()
        })
        .collect();
    let mut coeffs = vec![BigRational::zero(); n + 1];
    coeffs[n] = BigRational::one();
    let mut mk = vec![vec![BigRational::zero(); n]; n];
    for k in 1..=n {
        let mut next = vec![vec![BigRational::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = BigRational::zero();
                for l in 0..n {
                    s += &a[i][l] * &mk[l][j];
                }
                if i == j {
                    s += &coeffs[n - k + 1];
                }
                next[i][j] = s;
            }
        }
        let mut tr = BigRational::zero();
        for i in 0..n {
            for l in 0..n {
                tr += &a[i][l] * &next[l][i];
            }
        }
        coeffs[n - k] = -tr / BigRational::from_integer(BigInt::from(k));
        mk = next;
    }
    coeffs
}

/// Inertia from the characteristic polynomial. Also checks that its
/// constant term agrees with `det`.
pub fn inertia_by_sturm(m: &[Vec<i64>], det: &BigInt) -> Result<Inertia> {
    let n = m.len();
    let p = characteristic_polynomial(m);
    let expected = if n.is_multiple_of(2) {
        p[0].clone()
    } else {
        -p[0].clone()
    };
    if expected != BigRational::from_integer(det.clone()) {
        return Err(Error::Structure(format!(
            "characteristic polynomial gives det {expected}, elimination gives {det}"
        )));
    }
    let zero = p.iter().position(|c| !c.is_zero()).unwrap_or(n);
    let reduced = trim(p[zero..].to_vec());
    let mut inertia = Inertia {
        plus: 0,
        zero,
        minus: 0,
    };
    if degree(&reduced).unwrap_or(0) > 0 {
        for (mult, f) in squarefree(&reduced) {
            let (pos, neg) = count_signed_roots(&f);
            inertia.plus += mult * pos;
            inertia.minus += mult * neg;
        }
    }
    if inertia.plus + inertia.zero + inertia.minus != n {
        return Err(Error::Structure(
            "characteristic polynomial has non-real roots".into(),
        ));
    }
    Ok(inertia)
}
