//! Dense polynomials over a prime field `F_p`.
//!
//! Coefficients are stored ascending from the constant term. Every function
//! returns trimmed vectors (no trailing zeros); the zero polynomial is `[]`.

pub(crate) fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors of `n`, ascending.
pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[inline]
pub(crate) fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

pub(crate) fn inv_mod(a: u32, p: u32) -> Option<u32> {
    if a.is_multiple_of(p) {
        return None;
    }
    // extended Euclid on i64
    let (mut r0, mut r1) = (p as i64, (a % p) as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    Some(t0.rem_euclid(p as i64) as u32)
}

pub(crate) fn trim(mut v: Vec<u32>) -> Vec<u32> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

pub(crate) fn degree(a: &[u32]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub(crate) fn sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let len = a.len().max(b.len());
    let out = (0..len)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(out)
}

pub(crate) fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let pm = p as u64;
    let mut acc = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            acc[i + j] = (acc[i + j] + x as u64 * y as u64) % pm;
        }
    }
    trim(acc.into_iter().map(|c| c as u32).collect())
}

/// Remainder of `a` modulo `m` (any nonzero `m`).
pub(crate) fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let dm = degree(m).expect("division by the zero polynomial");
    let lead_inv = inv_mod(m[dm], p).expect("leading coefficient is a unit");
    let mut r = trim(a.to_vec());
    while let Some(dr) = degree(&r) {
        if dr < dm {
            break;
        }
        let factor = mul_mod(r[dr], lead_inv, p);
        let shift = dr - dm;
        for (i, &c) in m.iter().enumerate() {
            let t = mul_mod(factor, c, p);
            r[shift + i] = (r[shift + i] + p - t) % p;
        }
        r = trim(r);
    }
    r
}

pub(crate) fn mul_rem(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    rem(&mul(a, b, p), m, p)
}

pub(crate) fn pow_rem(base: &[u32], mut exp: u128, m: &[u32], p: u32) -> Vec<u32> {
    let mut result = rem(&[1], m, p);
    let mut b = rem(base, m, p);
    while exp > 0 {
        if exp & 1 == 1 {
            result = mul_rem(&result, &b, m, p);
        }
        exp >>= 1;
        if exp > 0 {
            b = mul_rem(&b, &b, m, p);
        }
    }
    result
}

/// Monic gcd.
pub(crate) fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    if let Some(d) = degree(&x) {
        let inv = inv_mod(x[d], p).unwrap();
        x.iter_mut().for_each(|c| *c = mul_mod(*c, inv, p));
    }
    x
}

/// Inverse of `a` modulo the irreducible `m`, via the extended Euclidean algorithm.
pub(crate) fn inv_rem(a: &[u32], m: &[u32], p: u32) -> Option<Vec<u32>> {
    let a = rem(a, m, p);
    if a.is_empty() {
        return None;
    }
    let (mut r0, mut r1) = (m.to_vec(), a);
    let (mut t0, mut t1): (Vec<u32>, Vec<u32>) = (Vec::new(), vec![1]);
    while !r1.is_empty() {
        let (q, r) = divmod(&r0, &r1, p);
        let t2 = sub(&t0, &mul(&q, &t1, p), p);
        r0 = r1;
        r1 = r;
        t0 = t1;
        t1 = t2;
    }
    // r0 is a nonzero constant when gcd = 1
    if degree(&r0) != Some(0) {
        return None;
    }
    let c = inv_mod(r0[0], p)?;
    Some(rem(&t0.iter().map(|&x| mul_mod(x, c, p)).collect::<Vec<_>>(), m, p))
}

fn divmod(a: &[u32], m: &[u32], p: u32) -> (Vec<u32>, Vec<u32>) {
    let dm = degree(m).expect("division by the zero polynomial");
    let lead_inv = inv_mod(m[dm], p).unwrap();
    let mut r = trim(a.to_vec());
    let mut q = vec![0u32; r.len().saturating_sub(dm).max(1)];
    while let Some(dr) = degree(&r) {
        if dr < dm {
            break;
        }
        let factor = mul_mod(r[dr], lead_inv, p);
        let shift = dr - dm;
        q[shift] = factor;
        for (i, &c) in m.iter().enumerate() {
            let t = mul_mod(factor, c, p);
            r[shift + i] = (r[shift + i] + p - t) % p;
        }
        r = trim(r);
    }
    (trim(q), r)
}

/// Rabin's irreducibility test for a monic `f` of degree `k ≥ 1`.
pub(crate) fn is_irreducible(f: &[u32], p: u32) -> bool {
    let Some(k) = degree(f) else { return false };
    if k == 0 {
        return false;
    }
    if k == 1 {
        return true;
    }
    let x = vec![0, 1];
    // frob[i] = x^(p^i) mod f
    let mut frob = Vec::with_capacity(k + 1);
    frob.push(rem(&x, f, p));
    for i in 1..=k {
        let next = pow_rem(&frob[i - 1], p as u128, f, p);
        frob.push(next);
    }
    if frob[k] != rem(&x, f, p) {
        return false;
    }
    prime_factors(k as u64).into_iter().all(|r| {
        let h = sub(&frob[k / r as usize], &x, p);
        degree(&gcd(&h, f, p)) == Some(0)
    })
}

/// Lexicographically smallest monic irreducible of degree `k`, comparing
/// coefficient vectors from the constant term upward.
pub(crate) fn smallest_irreducible(p: u32, k: usize) -> Vec<u32> {
    // counter over (a_0, …, a_{k-1}) with a_0 the most significant digit
    let mut digits = vec![0u32; k];
    if k > 1 {
        // x divides everything with zero constant term
        digits[0] = 1;
    }
    loop {
        let mut f = digits.clone();
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
        let mut pos = k;
        loop {
            if pos == 0 {
                unreachable!("an irreducible polynomial exists in every degree");
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < p {
                break;
            }
            digits[pos] = 0;
        }
    }
}
