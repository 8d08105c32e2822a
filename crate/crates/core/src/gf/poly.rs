//! Dense univariate polynomials over a [`Field`], coefficients low to high,
//! and root finding for degree at most three.

use super::{Field, GfError};

/// Scan bound for [`RootStrategy::Auto`].
pub const SCAN_LIMIT: u128 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootStrategy {
    /// Evaluate at every field element.
    Scan,
    /// `gcd(f, x^Q - x)` followed by equal-degree splitting.
    Gcd,
    /// `Scan` when the field has at most `SCAN_LIMIT` elements.
    Auto,
}

pub fn poly_trim<F: Field>(field: &F, f: &mut Vec<F::Elem>) {
    while let Some(&c) = f.last() {
        if field.is_zero(c) {
            f.pop();
        } else {
            break;
        }
    }
}

pub fn poly_eval<F: Field>(field: &F, f: &[F::Elem], x: F::Elem) -> F::Elem {
    f.iter()
        .rev()
        .fold(field.zero(), |acc, &c| field.add(field.mul(acc, x), c))
}

pub fn poly_add<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let n = a.len().max(b.len());
    let mut out: Vec<F::Elem> = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or_else(|| field.zero());
            let y = b.get(i).copied().unwrap_or_else(|| field.zero());
            field.add(x, y)
        })
        .collect();
    poly_trim(field, &mut out);
    out
}

pub fn poly_sub<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let n = a.len().max(b.len());
    let mut out: Vec<F::Elem> = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or_else(|| field.zero());
            let y = b.get(i).copied().unwrap_or_else(|| field.zero());
            field.sub(x, y)
        })
        .collect();
    poly_trim(field, &mut out);
    out
}

pub fn poly_mul<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![field.zero(); a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if field.is_zero(x) {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = field.add(out[i + j], field.mul(x, y));
        }
    }
    poly_trim(field, &mut out);
    out
}

/// Quotient and remainder; `b` must be nonzero.
pub fn poly_divrem<F: Field>(
    field: &F,
    a: &[F::Elem],
    b: &[F::Elem],
) -> (Vec<F::Elem>, Vec<F::Elem>) {
    let mut r = a.to_vec();
    poly_trim(field, &mut r);
    let db = b.len() - 1;
    let lead_inv = field.inv(b[db]).expect("divisor must be nonzero");
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut quot = vec![field.zero(); r.len() - db];
    while r.len() > db {
        let top = r.len() - 1;
        let c = field.mul(r[top], lead_inv);
        quot[top - db] = c;
        for i in 0..=db {
            r[top - db + i] = field.sub(r[top - db + i], field.mul(c, b[i]));
        }
        r.pop();
        poly_trim(field, &mut r);
    }
    (quot, r)
}

pub fn poly_rem<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    poly_divrem(field, a, b).1
}

fn make_monic<F: Field>(field: &F, f: &mut [F::Elem]) {
    if let Some(&lead) = f.last() {
        let inv = field.inv(lead).expect("trimmed polynomial has a nonzero lead");
        for c in f.iter_mut() {
            *c = field.mul(*c, inv);
        }
    }
}

/// Monic greatest common divisor.
pub fn poly_gcd<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    poly_trim(field, &mut x);
    poly_trim(field, &mut y);
    while !y.is_empty() {
        let r = poly_rem(field, &x, &y);
        x = y;
        y = r;
    }
    make_monic(field, &mut x);
    x
}

pub fn poly_powmod<F: Field>(field: &F, base: &[F::Elem], mut e: u128, m: &[F::Elem]) -> Vec<F::Elem> {
    let mut acc = poly_rem(field, &[field.one()], m);
    let mut b = poly_rem(field, base, m);
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_rem(field, &poly_mul(field, &acc, &b), m);
        }
        b = poly_rem(field, &poly_mul(field, &b, &b), m);
        e >>= 1;
    }
    acc
}

/// `x^e mod m` by square-and-multiply.
pub fn poly_powmod_x<F: Field>(field: &F, e: u128, m: &[F::Elem]) -> Vec<F::Elem> {
    poly_powmod(field, &[field.zero(), field.one()], e, m)
}

/// Roots of `coeffs` (low to high) in `field`, each with its multiplicity,
/// sorted by the field's element order.
pub fn poly_roots_in_field<F: Field>(
    field: &F,
    coeffs: &[F::Elem],
    strategy: RootStrategy,
) -> Result<Vec<(F::Elem, u32)>, GfError> {
    let mut f = coeffs.to_vec();
    poly_trim(field, &mut f);
    if f.is_empty() {
        return Err(GfError::ZeroPolynomial);
    }
    if f.len() > 4 {
        return Err(GfError::DegreeTooLarge(f.len() - 1));
    }
    let scan = match strategy {
        RootStrategy::Scan => true,
        RootStrategy::Gcd => false,
        RootStrategy::Auto => field.size() <= SCAN_LIMIT,
    };
    let mut roots = if f.len() == 1 {
        Vec::new()
    } else if scan {
        field
            .elements()
            .filter(|&x| field.is_zero(poly_eval(field, &f, x)))
            .collect()
    } else {
        split_roots(field, &f)
    };
    roots.sort();
    Ok(roots
        .into_iter()
        .map(|r| (r, multiplicity(field, &f, r)))
        .collect())
}

fn multiplicity<F: Field>(field: &F, f: &[F::Elem], r: F::Elem) -> u32 {
    let lin = [field.neg(r), field.one()];
    let mut g = f.to_vec();
    let mut k = 0;
    loop {
        let (quot, rem) = poly_divrem(field, &g, &lin);
        if !rem.is_empty() {
            return k;
        }
        g = quot;
        k += 1;
    }
}

fn split_roots<F: Field>(field: &F, f: &[F::Elem]) -> Vec<F::Elem> {
    let mut h = poly_powmod_x(field, field.size(), f);
    h = poly_sub(field, &h, &[field.zero(), field.one()]);
    let g = poly_gcd(field, f, &h);
    let mut out = Vec::new();
    equal_degree_split(field, g, &mut out);
    out
}

/// Splits a monic product of distinct linear factors.
fn equal_degree_split<F: Field>(field: &F, g: Vec<F::Elem>, out: &mut Vec<F::Elem>) {
    match g.len() {
        0 | 1 => {}
        2 => out.push(field.neg(g[0])),
        _ => {
            let size = field.size();
            let odd = field.characteristic() != 2;
            // in characteristic 2 an F_2-basis already separates any two roots
            let dim = field.fp_dim();
            let basis = (0..dim).filter(|_| !odd).map(|j| {
                let mut c = vec![0; dim];
                c[j] = 1;
                field.from_fp_coords(&c)
            });
            for r in basis.chain((0..size).map(|idx| field.element(idx))) {
                let probe = if odd {
                    let h = poly_powmod(field, &[r, field.one()], (size - 1) / 2, &g);
                    poly_sub(field, &h, &[field.one()])
                } else {
                    trace_poly(field, r, &g)
                };
                let d = poly_gcd(field, &g, &probe);
                if d.len() > 1 && d.len() < g.len() {
                    let (other, _) = poly_divrem(field, &g, &d);
                    let mut other = other;
                    make_monic(field, &mut other);
                    equal_degree_split(field, d, out);
                    equal_degree_split(field, other, out);
                    return;
                }
            }
            unreachable!("distinct linear factors always separate")
        }
    }
}

/// `Σ_{i<k} (r x)^{2^i} mod g` where the field has `2^k` elements.
fn trace_poly<F: Field>(field: &F, r: F::Elem, g: &[F::Elem]) -> Vec<F::Elem> {
    let k = field.size().trailing_zeros();
    let mut term = poly_rem(field, &[field.zero(), r], g);
    let mut acc = term.clone();
    for _ in 1..k {
        term = poly_rem(field, &poly_mul(field, &term, &term), g);
        acc = poly_add(field, &acc, &term);
    }
    acc
}
