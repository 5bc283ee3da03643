#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};
use walgebra::algebra::{Algebra, AlgebraElement, GenIdx, HbarPoly, Q};
use walgebra::pyramid::Pyramid;

/// Tensor with legs `(E_{a,b}, E_{c,d})` and polynomial coefficients in `(x21, x11)`.
pub type Tensor = BTreeMap<((usize, usize), (usize, usize)), BTreeMap<(u32, u32), Q>>;

pub fn e(alg: &Arc<Algebra>, i: usize, j: usize) -> AlgebraElement {
    AlgebraElement::generator(alg, i, j).unwrap()
}

pub fn int(k: i64) -> Q {
    Q::from_integer(k.into())
}

/// `Ẽ_{h,k} = (−1)^{col(k)−col(h)} (E_{h,k} + δ_{hk} ℏ ρ_{col(h)})`, with
/// `ρ_c = rows − Σ_{c' ≥ c} heights_{c'}`.
pub fn tilde_e(p: &Pyramid, alg: &Arc<Algebra>, h: usize, k: usize) -> AlgebraElement {
    let mut x = e(alg, h, k);
    if h == k {
        let c = p.col(h);
        let rho = p.n_rows() as i64 - p.heights()[c - 1..].iter().sum::<usize>() as i64;
        x = &x + &AlgebraElement::hbar(alg).scale(&HbarPoly::int(rho));
    }
    if (p.col(k) as i64 - p.col(h) as i64) % 2 != 0 {
        x = -&x;
    }
    x
}

/// Sum of `Ẽ_{h,k}` over blocks in rows `i`, `j` of one column.
pub fn degree_one_oracle(p: &Pyramid, alg: &Arc<Algebra>, i: usize, j: usize) -> AlgebraElement {
    let mut out = AlgebraElement::zero(alg);
    for h in 1..=p.n_blocks() {
        for k in 1..=p.n_blocks() {
            if p.col(h) == p.col(k) && p.row(h) == i && p.row(k) == j {
                out = &out + &tilde_e(p, alg, h, k);
            }
        }
    }
    out
}

fn add(t: &mut Tensor, a: (usize, usize), b: (usize, usize), x21: u32, x11: u32, c: Q) {
    let p = t.entry((a, b)).or_default();
    let v = p.entry((x21, x11)).or_insert_with(Q::zero);
    *v += c;
    if v.is_zero() {
        p.remove(&(x21, x11));
    }
    if p.is_empty() {
        t.remove(&(a, b));
    }
}

fn sign(k: usize) -> Q {
    if k % 2 == 0 {
        Q::one()
    } else {
        -Q::one()
    }
}

pub fn jc_oracle(n: usize) -> Tensor {
    let mut t = Tensor::new();
    for j in 2..n {
        for i in j + 1..=n {
            for l in 2..=j {
                add(&mut t, (l, l + i - j - 1), (i, j), 0, 0, Q::one());
            }
        }
    }
    for i in 3..=n {
        add(&mut t, (1, i - 1), (i, 1), 0, 0, Q::one());
    }
    t
}

/// `j_c` plus the two dynamical sums; `proof` selects the second variant of the
/// `E_{i,1}` family.
pub fn semiclassical_oracle(n: usize, proof: bool) -> Tensor {
    let mut t = jc_oracle(n);
    for j in 2..n.saturating_sub(1) {
        for i in j + 2..=n {
            for r in 2..=i - j {
                let k = i - j - r;
                add(&mut t, (1, r), (i, j), 1, k as u32, sign(k));
            }
        }
    }
    for i in 4..=n {
        let top = if proof { i - 1 } else { i - 2 };
        for r in 2..=top {
            let ex = if proof { i - r } else { i - r - 1 };
            add(&mut t, (1, r), (i, 1), 0, ex as u32, sign(i - r));
        }
    }
    t
}

/// `Tr(e [E_{a,b}, E_{c,d}])` with `e = Σ_{k=2}^{N−1} E_{k,k+1}`, by explicit matrices.
pub fn omega_oracle(n: usize, x: (usize, usize), y: (usize, usize)) -> i64 {
    let unit = |(a, b): (usize, usize)| {
        let mut m = vec![vec![0i64; n]; n];
        m[a - 1][b - 1] = 1;
        m
    };
    let mul = |p: &Vec<Vec<i64>>, q: &Vec<Vec<i64>>| {
        let mut r = vec![vec![0i64; n]; n];
        for i in 0..n {
            for k in 0..n {
                if p[i][k] != 0 {
                    for j in 0..n {
                        r[i][j] += p[i][k] * q[k][j];
                    }
                }
            }
        }
        r
    };
    let mut em = vec![vec![0i64; n]; n];
    for k in 2..n {
        em[k - 1][k] = 1;
    }
    let (xm, ym) = (unit(x), unit(y));
    let xy = mul(&xm, &ym);
    let yx = mul(&ym, &xm);
    let br: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| xy[i][j] - yx[i][j]).collect())
        .collect();
    let prod = mul(&em, &br);
    (0..n).map(|i| prod[i][i]).sum()
}

/// Rank of a rational matrix by Gaussian elimination.
pub fn rank(mut m: Vec<Vec<Q>>) -> usize {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = &m[i][c] / &m[r][c];
                for k in c..cols {
                    let d = &f * &m[r][k];
                    m[i][k] -= d;
                }
            }
        }
        r += 1;
    }
    r
}

/// `m` and `b` of the subregular pyramid, enumerated directly.
pub fn m_gens(n: usize) -> Vec<(usize, usize)> {
    (3..=n).flat_map(|i| (1..i).map(move |j| (i, j))).collect()
}

pub fn b_gens(n: usize) -> Vec<(usize, usize)> {
    (1..n)
        .flat_map(|k| (k.max(2)..n).map(move |l| (k, l)))
        .collect()
}

pub fn gen(i: usize, j: usize) -> GenIdx {
    GenIdx::new(i, j)
}
