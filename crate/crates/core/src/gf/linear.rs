//! The `F_p`-linear map `y ↦ y^q + y` and its preimages.

use super::Field;

/// Row-reduced form of `y ↦ y^q + y` in `F_p` coordinates, computed once
/// per field level.
#[derive(Debug, Clone)]
pub struct AdditiveSolver<E> {
    p: u32,
    n: usize,
    /// `transform · M = rref`
    transform: Vec<Vec<u32>>,
    pivots: Vec<usize>,
    kernel: Vec<E>,
}

fn inv_mod(a: u32, p: u32) -> u32 {
    let (mut r, mut b, mut e) = (1u64, a as u64 % p as u64, p as u64 - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    r as u32
}

impl<E: Copy + Ord> AdditiveSolver<E> {
    pub fn new<F: Field<Elem = E>>(field: &F) -> Self {
        let p = field.characteristic() as u32;
        let n = field.fp_dim();
        let pp = p as u64;
        // column j = coordinates of L(e_j)
        let mut m = vec![vec![0u32; n]; n];
        for j in 0..n {
            let mut unit = vec![0u32; n];
            unit[j] = 1;
            let e = field.from_fp_coords(&unit);
            let img = field.add(field.frob_q(e), e);
            for (i, c) in field.fp_coords(img).into_iter().enumerate() {
                m[i][j] = c;
            }
        }
        let mut t: Vec<Vec<u32>> = (0..n)
            .map(|i| (0..n).map(|j| u32::from(i == j)).collect())
            .collect();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..n {
            let Some(piv) = (row..n).find(|&r| m[r][col] != 0) else {
                continue;
            };
            m.swap(row, piv);
            t.swap(row, piv);
            let s = inv_mod(m[row][col], p) as u64;
            for k in 0..n {
                m[row][k] = (m[row][k] as u64 * s % pp) as u32;
                t[row][k] = (t[row][k] as u64 * s % pp) as u32;
            }
            for r in 0..n {
                if r == row || m[r][col] == 0 {
                    continue;
                }
                let f = m[r][col] as u64;
                for k in 0..n {
                    m[r][k] = ((m[r][k] as u64 + (pp - f) * m[row][k] as u64) % pp) as u32;
                    t[r][k] = ((t[r][k] as u64 + (pp - f) * t[row][k] as u64) % pp) as u32;
                }
            }
            pivots.push(col);
            row += 1;
        }
        // kernel basis from free columns
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        let basis: Vec<Vec<u32>> = free
            .iter()
            .map(|&fc| {
                let mut v = vec![0u32; n];
                v[fc] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = (p - m[r][fc] % p) % p;
                }
                v
            })
            .collect();
        let mut kernel = Vec::new();
        let total = (p as u64).pow(basis.len() as u32);
        for idx in 0..total {
            let mut v = vec![0u64; n];
            let mut k = idx;
            for b in &basis {
                let c = k % pp;
                k /= pp;
                for (vi, &bi) in v.iter_mut().zip(b) {
                    *vi = (*vi + c * bi as u64) % pp;
                }
            }
            let coords: Vec<u32> = v.into_iter().map(|c| c as u32).collect();
            kernel.push(field.from_fp_coords(&coords));
        }
        kernel.sort();
        AdditiveSolver { p, n, transform: t, pivots, kernel }
    }

    /// Elements `y` with `y^q + y = 0`, sorted.
    pub fn kernel(&self) -> &[E] {
        &self.kernel
    }

    /// One `y` with `y^q + y = r`, if any.
    pub fn particular<F: Field<Elem = E>>(&self, field: &F, r: E) -> Option<E> {
        let pp = self.p as u64;
        let rc = field.fp_coords(r);
        let tr: Vec<u32> = self
            .transform
            .iter()
            .map(|row| {
                (row.iter().zip(&rc).map(|(&a, &b)| a as u64 * b as u64).sum::<u64>() % pp) as u32
            })
            .collect();
        if tr[self.pivots.len()..].iter().any(|&c| c != 0) {
            return None;
        }
        let mut y = vec![0u32; self.n];
        for (r, &pc) in self.pivots.iter().enumerate() {
            y[pc] = tr[r];
        }
        Some(field.from_fp_coords(&y))
    }

    /// All `y` with `y^q + y = r`, sorted.
    pub fn solve<F: Field<Elem = E>>(&self, field: &F, r: E) -> Vec<E> {
        match self.particular(field, r) {
            None => Vec::new(),
            Some(y0) => {
                let mut out: Vec<E> = self.kernel.iter().map(|&k| field.add(y0, k)).collect();
                out.sort();
                out
            }
        }
    }
}

/// All `y` in `field` with `y^q + y = alpha^{q+1}`.
pub fn solve_additive<F: Field>(field: &F, alpha: F::Elem) -> Vec<F::Elem> {
    let solver = AdditiveSolver::new(field);
    let r = field.mul(field.frob_q(alpha), alpha);
    solver.solve(field, r)
}

/// Basis of `{v : M v = 0}` for a matrix given by rows.
pub fn nullspace<F: Field>(field: &F, rows: &[Vec<F::Elem>], ncols: usize) -> Vec<Vec<F::Elem>> {
    let mut m: Vec<Vec<F::Elem>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(k) = (r..m.len()).find(|&k| !field.is_zero(m[k][c])) else {
            continue;
        };
        m.swap(r, k);
        let inv = field.inv(m[r][c]).expect("nonzero pivot");
        for x in m[r].iter_mut() {
            *x = field.mul(*x, inv);
        }
        for k in 0..m.len() {
            if k != r && !field.is_zero(m[k][c]) {
                let s = m[k][c];
                for j in 0..ncols {
                    let v = field.mul(s, m[r][j]);
                    m[k][j] = field.sub(m[k][j], v);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![field.zero(); ncols];
        v[free] = field.one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = field.neg(m[row][free]);
        }
        basis.push(v);
    }
    basis
}
