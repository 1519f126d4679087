//! Dense univariate polynomials over a `FieldOps` context.
//!
//! Coefficients are stored low degree first; the zero polynomial is the
//! empty vector and every returned polynomial is trimmed.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::exactalg::ops::{ExtField, FieldOps, FiniteFieldOps, Gf, PrimeField};

pub fn trim<F: FieldOps>(f: &F, mut a: Vec<F::E>) -> Vec<F::E> {
    while a.last().is_some_and(|c| f.is_zero(c)) {
        a.pop();
    }
    a
}

/// Degree, or None for the zero polynomial.
pub fn degree<F: FieldOps>(a: &[F::E]) -> Option<usize> {
    if a.is_empty() {
        None
    } else {
        Some(a.len() - 1)
    }
}

pub fn add<F: FieldOps>(f: &F, a: &[F::E], b: &[F::E]) -> Vec<F::E> {
    let n = a.len().max(b.len());
    let z = f.zero();
    let out = (0..n)
        .map(|i| f.add(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
        .collect();
    trim(f, out)
}

pub fn sub<F: FieldOps>(f: &F, a: &[F::E], b: &[F::E]) -> Vec<F::E> {
    let n = a.len().max(b.len());
    let z = f.zero();
    let out = (0..n)
        .map(|i| f.sub(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
        .collect();
    trim(f, out)
}

pub fn scale<F: FieldOps>(f: &F, a: &[F::E], c: &F::E) -> Vec<F::E> {
    trim(f, a.iter().map(|x| f.mul(x, c)).collect())
}

pub fn mul<F: FieldOps>(f: &F, a: &[F::E], b: &[F::E]) -> Vec<F::E> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = f.add(&out[i + j], &f.mul(x, y));
        }
    }
    trim(f, out)
}

/// Quotient and remainder; panics on division by the zero polynomial.
pub fn divrem<F: FieldOps>(f: &F, a: &[F::E], b: &[F::E]) -> (Vec<F::E>, Vec<F::E>) {
    let db = degree::<F>(b).expect("division by zero polynomial");
    let lead_inv = f.inv(&b[db]).expect("nonzero leading coefficient");
    let mut r = a.to_vec();
    if r.len() <= db {
        return (Vec::new(), trim(f, r));
    }
    let mut q = vec![f.zero(); r.len() - db];
    for k in (db..r.len()).rev() {
        let c = f.mul(&r[k], &lead_inv);
        if f.is_zero(&c) {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            r[k - db + j] = f.sub(&r[k - db + j], &f.mul(&c, bj));
        }
        q[k - db] = c;
    }
    r.truncate(db);
    (trim(f, q), trim(f, r))
}

pub fn rem<F: FieldOps>(f: &F, a: &[F::E], b: &[F::E]) -> Vec<F::E> {
    divrem(f, a, b).1
}

pub fn monic<F: FieldOps>(f: &F, a: &[F::E]) -> Vec<F::E> {
    match a.last() {
        None => Vec::new(),
        Some(l) => {
            let li = f.inv(l).expect("trimmed polynomial");
            scale(f, a, &li)
        }
    }
}

/// Monic gcd (zero if both inputs are zero).
pub fn gcd<F: FieldOps>(f: &F, a: &[F::E], b: &[F::E]) -> Vec<F::E> {
    let mut x = trim(f, a.to_vec());
    let mut y = trim(f, b.to_vec());
    while !y.is_empty() {
        let r = rem(f, &x, &y);
        x = y;
        y = r;
    }
    monic(f, &x)
}

pub fn eval<F: FieldOps>(f: &F, a: &[F::E], x: &F::E) -> F::E {
    a.iter()
        .rev()
        .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
}

pub fn derivative<F: FieldOps>(f: &F, a: &[F::E]) -> Vec<F::E> {
    let out = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| f.mul(c, &f.from_i64(i as i64)))
        .collect();
    trim(f, out)
}

/// base^e mod m
pub fn powmod<F: FieldOps>(f: &F, base: &[F::E], mut e: u128, m: &[F::E]) -> Vec<F::E> {
    let mut acc = rem(f, &[f.one()], m);
    let mut b = rem(f, base, m);
    while e > 0 {
        if e & 1 == 1 {
            acc = rem(f, &mul(f, &acc, &b), m);
        }
        b = rem(f, &mul(f, &b, &b), m);
        e >>= 1;
    }
    acc
}

/// Newton interpolation through (xs[i], ys[i]); the xs must be distinct.
pub fn interpolate<F: FieldOps>(f: &F, xs: &[F::E], ys: &[F::E]) -> Vec<F::E> {
    let n = xs.len();
    let mut coef: Vec<F::E> = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = f.sub(&coef[i], &coef[i - 1]);
            let den = f.sub(&xs[i], &xs[i - j]);
            coef[i] = f.div(&num, &den).expect("distinct interpolation nodes");
        }
    }
    let mut out: Vec<F::E> = Vec::new();
    for i in (0..n).rev() {
        // out = out * (x - xs[i]) + coef[i]
        let shifted = mul(f, &out, &[f.neg(&xs[i]), f.one()]);
        out = add(f, &shifted, &[coef[i].clone()]);
    }
    out
}

/// Multiplicity of `r` as a root of the nonzero polynomial `a`.
pub fn root_multiplicity<F: FieldOps>(f: &F, a: &[F::E], r: &F::E) -> usize {
    let lin = [f.neg(r), f.one()];
    let mut cur = trim(f, a.to_vec());
    let mut m = 0;
    while !cur.is_empty() {
        let (q, rm) = divrem(f, &cur, &lin);
        if !rm.is_empty() {
            break;
        }
        cur = q;
        m += 1;
    }
    m
}

/// Distinct roots of `a` in the finite field `f`, by equal-degree
/// splitting with a fixed-seed generator so results are reproducible.
pub fn finite_field_roots<F: FiniteFieldOps>(f: &F, a: &[F::E]) -> Vec<F::E> {
    let a = trim(f, a.to_vec());
    if degree::<F>(&a).unwrap_or(0) == 0 {
        return Vec::new();
    }
    let x = vec![f.zero(), f.one()];
    let xq = powmod(f, &x, f.order(), &a);
    let g = gcd(f, &a, &sub(f, &xq, &x));
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    split_linear(f, &g, &mut rng, &mut out);
    out
}

/// Roots in `ext` of a polynomial with coefficients in its prime field.
///
/// The product of the linear and low-degree factors is isolated over the
/// prime field first, which keeps the expensive splitting step small.
pub fn roots_in_extension(ext: &ExtField, a: &[u64]) -> Vec<Gf> {
    let fp = *ext.base();
    let a = trim(&fp, a.to_vec());
    if degree::<PrimeField>(&a).unwrap_or(0) == 0 {
        return Vec::new();
    }
    let x = vec![0u64, 1];
    let xq = powmod(&fp, &x, ext.order(), &a);
    let g = gcd(&fp, &a, &sub(&fp, &xq, &x));
    let lifted: Vec<Gf> = g.iter().map(|&c| ext.embed(c)).collect();
    finite_field_roots(ext, &lifted)
}

fn split_linear<F: FiniteFieldOps>(f: &F, g: &[F::E], rng: &mut ChaCha8Rng, out: &mut Vec<F::E>) {
    let d = match degree::<F>(g) {
        None | Some(0) => return,
        Some(d) => d,
    };
    if d == 1 {
        let g = monic(f, g);
        out.push(f.neg(&g[0]));
        return;
    }
    let q = f.order();
    loop {
        let lin = vec![f.random(rng), f.one()];
        let h = powmod(f, &lin, (q - 1) / 2, g);
        let cand = gcd(f, g, &sub(f, &h, &[f.one()]));
        let dc = degree::<F>(&cand).unwrap_or(0);
        if dc > 0 && dc < d {
            let (other, _) = divrem(f, g, &cand);
            split_linear(f, &cand, rng, out);
            split_linear(f, &other, rng, out);
            return;
        }
    }
}

/// Rabin's irreducibility test over a prime field.
pub fn is_irreducible(fp: &PrimeField, m: &[u64]) -> bool {
    let n = m.len() - 1;
    let p = fp.modulus() as u128;
    let x = vec![0u64, 1];
    // X^(p^n) == X mod m
    let mut xp = x.clone();
    for _ in 0..n {
        xp = powmod(fp, &xp, p, m);
    }
    if trim(fp, sub(fp, &xp, &x)) != Vec::<u64>::new() {
        return false;
    }
    let mut primes = Vec::new();
    let mut k = n;
    let mut q = 2;
    while k > 1 {
        if k.is_multiple_of(q) {
            primes.push(q);
            while k.is_multiple_of(q) {
                k /= q;
            }
        }
        q += 1;
    }
    for r in primes {
        let mut xp = x.clone();
        for _ in 0..(n / r) {
            xp = powmod(fp, &xp, p, m);
        }
        let g = gcd(fp, m, &sub(fp, &xp, &x));
        if g.len() != 1 {
            return false;
        }
    }
    true
}

// ---------------------------------------------------------------------------
// Rational root finding

fn factor_biguint(n: &BigUint) -> Vec<BigUint> {
    let mut primes = Vec::new();
    let mut m = n.clone();
    if m.is_zero() {
        return primes;
    }
    let mut d = 2u64;
    while d < 10_000 {
        let bd = BigUint::from(d);
        if &bd * &bd > m {
            break;
        }
        if (&m % &bd).is_zero() {
            primes.push(bd.clone());
            while (&m % &bd).is_zero() {
                m /= &bd;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    let mut stack = vec![m];
    while let Some(c) = stack.pop() {
        if c.is_one() {
            continue;
        }
        if is_probable_prime(&c) {
            if !primes.contains(&c) {
                primes.push(c);
            }
            continue;
        }
        let f = pollard_rho(&c);
        let other = &c / &f;
        stack.push(f);
        stack.push(other);
    }
    primes.sort();
    primes.dedup();
    primes
}

fn is_probable_prime(n: &BigUint) -> bool {
    if let Some(v) = n.to_u64() {
        return is_prime_small(v);
    }
    let one = BigUint::one();
    let nm1 = n - &one;
    let mut d = nm1.clone();
    let mut r = 0;
    while d.is_even() {
        d >>= 1;
        r += 1;
    }
    'w: for a in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41] {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..r {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'w;
            }
        }
        return false;
    }
    true
}

fn is_prime_small(v: u64) -> bool {
    v == 2 || (v > 2 && crate::exactalg::ops::is_prime(v))
}

fn pollard_rho(n: &BigUint) -> BigUint {
    if n.is_even() {
        return BigUint::from(2u32);
    }
    let mut c = BigUint::one();
    loop {
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut x = BigUint::from(2u32);
        let mut y = x.clone();
        let mut d = BigUint::one();
        while d.is_one() {
            x = f(&x);
            y = f(&f(&y));
            let diff = if x > y { &x - &y } else { &y - &x };
            d = diff.gcd(n);
        }
        if &d != n {
            return d;
        }
        c += 1u32;
    }
}

fn divisors(n: &BigUint) -> Vec<BigUint> {
    let primes = factor_biguint(n);
    let mut divs = vec![BigUint::one()];
    for p in primes {
        let mut e = 0;
        let mut m = n.clone();
        while (&m % &p).is_zero() {
            m /= &p;
            e += 1;
        }
        let mut next = Vec::with_capacity(divs.len() * (e + 1));
        for d in &divs {
            let mut pk = BigUint::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    divs
}

/// Distinct rational roots of a nonzero rational polynomial.
pub fn rational_roots(a: &[BigRational]) -> Vec<BigRational> {
    let f = crate::exactalg::ops::Rationals;
    let a = trim(&f, a.to_vec());
    if a.len() <= 1 {
        return Vec::new();
    }
    let mut out = Vec::new();
    // strip factors of x
    let low = a.iter().position(|c| !c.is_zero()).unwrap_or(0);
    if low > 0 {
        out.push(BigRational::zero());
    }
    let a = &a[low..];
    if a.len() <= 1 {
        return out;
    }
    let lcm = a
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = a.iter().map(|c| (c * &lcm).to_integer()).collect();
    let c0 = ints[0].abs().to_biguint().unwrap();
    let cn = ints[ints.len() - 1].abs().to_biguint().unwrap();
    let nums = divisors(&c0);
    let dens = divisors(&cn);
    for p in &nums {
        for q in &dens {
            if !p.gcd(q).is_one() {
                continue;
            }
            for sign in [1i32, -1] {
                let num = BigInt::from(p.clone()) * sign;
                let r = BigRational::new(num, BigInt::from(q.clone()));
                if eval(&f, a, &r).is_zero() && !out.contains(&r) {
                    out.push(r);
                }
            }
        }
    }
    out.sort();
    out
}

pub fn lcm<F: FieldOps>(f: &F, a: &[F::E], b: &[F::E]) -> Vec<F::E> {
    let g = gcd(f, a, b);
    monic(f, &divrem(f, &mul(f, a, b), &g).0)
}

/// Recovers n/d with deg n + deg d < xs.len() from its values at the
/// distinct points xs, by the extended Euclidean algorithm on the
/// interpolant and prod (X - x_i). The denominator is returned monic.
/// None if no such fraction is consistent with the data.
pub fn rational_reconstruct<F: FieldOps>(f: &F, xs: &[F::E], ys: &[F::E]) -> Option<(Vec<F::E>, Vec<F::E>)> {
    let n = xs.len();
    let mut modulus = vec![f.one()];
    for x in xs {
        modulus = mul(f, &modulus, &[f.neg(x), f.one()]);
    }
    let mut r0 = modulus;
    let mut r1 = interpolate(f, xs, ys);
    let mut t0: Vec<F::E> = Vec::new();
    let mut t1 = vec![f.one()];
    while r1.len() > n / 2 {
        let (q, r) = divrem(f, &r0, &r1);
        let t = sub(f, &t0, &mul(f, &q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        t0 = std::mem::replace(&mut t1, t);
    }
    let lead = t1.last()?.clone();
    let inv = f.inv(&lead)?;
    let num = scale(f, &r1, &inv);
    let den = scale(f, &t1, &inv);
    if xs.iter().any(|x| f.is_zero(&eval(f, &den, x))) {
        return None;
    }
    Some((num, den))
}

/// An embedding of `from` into `to`, which must have a degree divisible
/// by that of `from`; it sends the generator to a root of its modulus.
pub fn embedding<'a>(from: &ExtField, to: &'a ExtField) -> Option<impl Fn(&Gf) -> Gf + 'a> {
    use crate::exactalg::ops::FiniteFieldOps as _;
    if from.base() != to.base() || !to.degree().is_multiple_of(from.degree()) {
        return None;
    }
    let zeta = if from.degree() == 1 {
        to.zero()
    } else {
        roots_in_extension(to, from.modulus_poly()).into_iter().min()?
    };
    let powers: Vec<Gf> = (0..from.degree()).map(|i| to.pow(&zeta, i as u128)).collect();
    let m = from.degree();
    Some(move |a: &Gf| {
        (0..m).fold(to.zero(), |acc, i| {
            if a.0[i] == 0 {
                acc
            } else {
                to.add(&acc, &to.mul(&to.embed(a.0[i]), &powers[i]))
            }
        })
    })
}
