//! Prime-field helpers: primality, factorization and the irreducibility
//! test used to pick the defining polynomial of `F_{q^2}`.

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Trial-division factorization. Inputs here are at most a few times 2^32.
pub(crate) fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut k = 0;
            while n.is_multiple_of(d) {
                n /= d;
                k += 1;
            }
            out.push((d, k));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Merge factorizations of several coprime-or-not pieces into one.
pub(crate) fn merge_factors(parts: &[u64]) -> Vec<(u128, u32)> {
    let mut acc: Vec<(u128, u32)> = Vec::new();
    for &part in parts {
        for (r, k) in factor_u64(part) {
            match acc.iter_mut().find(|(s, _)| *s == r as u128) {
                Some(entry) => entry.1 += k,
                None => acc.push((r as u128, k)),
            }
        }
    }
    acc.sort();
    acc
}

/// Dense polynomial over F_p, coefficients low to high.
pub(crate) type FpPoly = Vec<u64>;

fn trim(f: &mut FpPoly) {
    while f.last() == Some(&0) {
        f.pop();
    }
}

fn fp_inv(a: u64, p: u64) -> u64 {
    // p is prime, a != 0
    let mut r = 1u64;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn rem(f: &FpPoly, g: &FpPoly, p: u64) -> FpPoly {
    let mut r = f.clone();
    trim(&mut r);
    let dg = g.len() - 1;
    let lead_inv = fp_inv(g[dg], p);
    while r.len() > dg {
        let top = r.len() - 1;
        let c = r[top] * lead_inv % p;
        if c != 0 {
            for i in 0..=dg {
                let t = c * g[i] % p;
                r[top - dg + i] = (r[top - dg + i] + p - t) % p;
            }
        }
        r.pop();
        trim(&mut r);
    }
    r
}

fn mulmod(a: &FpPoly, b: &FpPoly, m: &FpPoly, p: u64) -> FpPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    rem(&out, m, p)
}

fn powmod(base: &FpPoly, mut e: u64, m: &FpPoly, p: u64) -> FpPoly {
    let mut acc = vec![1u64];
    let mut b = rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(&acc, &b, m, p);
        }
        b = mulmod(&b, &b, m, p);
        e >>= 1;
    }
    acc
}

fn gcd(a: &FpPoly, b: &FpPoly, p: u64) -> FpPoly {
    let mut x = a.clone();
    let mut y = b.clone();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

/// `x^{p^k} mod f`.
fn frobenius_power(f: &FpPoly, k: usize, p: u64) -> FpPoly {
    let mut t = vec![0u64, 1];
    for _ in 0..k {
        t = powmod(&t, p, f, p);
    }
    t
}

/// Rabin's irreducibility test for a monic `f` of degree `n` over F_p.
pub(crate) fn is_irreducible(f: &FpPoly, p: u64) -> bool {
    let n = f.len() - 1;
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let x = vec![0u64, 1];
    let xpn = frobenius_power(f, n, p);
    if rem(&x, f, p) != xpn {
        return false;
    }
    for (r, _) in factor_u64(n as u64) {
        let mut h = frobenius_power(f, n / r as usize, p);
        // h - x
        if h.len() < 2 {
            h.resize(2, 0);
        }
        h[1] = (h[1] + p - 1) % p;
        trim(&mut h);
        let g = gcd(f, &h, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

/// Least monic irreducible polynomial of degree `n` over F_p, comparing
/// coefficient tuples `(c_0, c_1, …, c_{n-1})` lexicographically.
pub(crate) fn least_irreducible(n: usize, p: u64) -> Option<FpPoly> {
    let total = (p as u128).checked_pow(n as u32)?;
    let mut digits = vec![0u64; n];
    // a zero constant term means x divides f
    let mut skipped = 0;
    if n >= 2 {
        digits[0] = 1;
        skipped = total / p as u128;
    }
    for _ in skipped..total {
        let mut f = digits.clone();
        f.push(1);
        if is_irreducible(&f, p) {
            return Some(f);
        }
        // increment with c_{n-1} as the least significant digit
        for i in (0..n).rev() {
            digits[i] += 1;
            if digits[i] < p {
                break;
            }
            digits[i] = 0;
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        let ps: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn factorization() {
        assert_eq!(factor_u64(63), vec![(3, 2), (7, 1)]);
        assert_eq!(factor_u64(1), vec![]);
        assert_eq!(factor_u64(4294967295), vec![(3, 1), (5, 1), (17, 1), (257, 1), (65537, 1)]);
    }

    #[test]
    fn least_irreducibles_small() {
        assert_eq!(least_irreducible(2, 2), Some(vec![1, 1, 1]));
        // x^2 + 1 splits mod 5, x^2 + x + 1 does not
        assert_eq!(least_irreducible(2, 5), Some(vec![1, 1, 1]));
        // over F_3, x^2 + 1 is irreducible
        assert_eq!(least_irreducible(2, 3), Some(vec![1, 0, 1]));
        // degree 6 over F_2: first tuple in (c0, ..., c5) order
        let f = least_irreducible(6, 2).unwrap();
        assert_eq!(f.len(), 7);
        assert!(is_irreducible(&f, 2));
    }

    #[test]
    fn reducible_rejected() {
        // x^4 + x^2 + 1 = (x^2 + x + 1)^2 over F_2
        assert!(!is_irreducible(&vec![1, 0, 1, 0, 1], 2));
        assert!(is_irreducible(&vec![1, 1, 0, 0, 1], 2));
    }
}
