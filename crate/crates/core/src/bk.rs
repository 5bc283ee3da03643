//! Brundan–Kleshchev elements `T_{ij;x}^{(r)}` and their truncations `ₖT_{ij;x}^{(r)}`.

use std::sync::Arc;

use dashmap::DashMap;
use rayon::prelude::*;

use crate::algebra::{Algebra, AlgebraElement, GeneratorOrder, HbarPoly};
use crate::error::{Error, Result};
use crate::pyramid::Pyramid;

/// A computed `ₖT_{ij;x}^{(r)}` together with its labels.
#[derive(Clone, Debug)]
pub struct TGenerator {
    pub i: usize,
    pub j: usize,
    pub x: usize,
    pub r: usize,
    pub truncation: usize,
    pub value: AlgebraElement,
    /// Kazhdan degree in the full pyramid, `None` for zero.
    pub degree: Option<i64>,
}

impl TGenerator {
    pub fn label(&self) -> String {
        let k = if self.truncation > 0 {
            format!("{}", self.truncation)
        } else {
            String::new()
        };
        format!("{k}T_{{{}{};{}}}^({})", self.i, self.j, self.x, self.r)
    }
}

type Key = (usize, usize, usize, usize, usize);

/// Computes and memoizes T-elements of one pyramid inside a fixed ambient algebra.
pub struct BkContext {
    pyramid: Pyramid,
    alg: Arc<Algebra>,
    memo: DashMap<Key, AlgebraElement>,
}

impl BkContext {
    pub fn new(pyramid: Pyramid, order: GeneratorOrder) -> Result<Self> {
        Self::with_algebra(pyramid, Algebra::new(order))
    }

    /// Shares an existing ambient algebra (and its product cache).
    pub fn with_algebra(pyramid: Pyramid, alg: Arc<Algebra>) -> Result<Self> {
        if alg.n() != pyramid.n_blocks() {
            return Err(Error::Structural(format!(
                "algebra is gl_{}, pyramid has {} blocks",
                alg.n(),
                pyramid.n_blocks()
            )));
        }
        Ok(Self {
            pyramid,
            alg,
            memo: DashMap::new(),
        })
    }

    /// Uses [`Pyramid::default_order`].
    pub fn with_default_order(pyramid: Pyramid) -> Result<Self> {
        let order = pyramid.default_order();
        Self::new(pyramid, order)
    }

    pub fn pyramid(&self) -> &Pyramid {
        &self.pyramid
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn t_element(&self, i: usize, j: usize, x: usize, r: usize) -> Result<TGenerator> {
        self.truncated_t(0, i, j, x, r)
    }

    /// `ₖT_{ij;x}^{(r)}`: enumerated in the truncated pyramid, with each `ₖẼ_{a,b}`
    /// replaced by the full pyramid's `Ẽ_{a,b}`.
    pub fn truncated_t(&self, k: usize, i: usize, j: usize, x: usize, r: usize) -> Result<TGenerator> {
        let small = self.pyramid.truncate(k)?;
        let n = small.n_rows();
        if i == 0 || j == 0 || i > n || j > n {
            return Err(Error::Validation(format!("row indices ({i},{j}) outside 1..={n}")));
        }
        if x > n {
            return Err(Error::Validation(format!("sign cutoff x={x} exceeds {n}")));
        }
        let key = (k, i, j, x, r);
        let value = match self.memo.get(&key).map(|v| v.clone()) {
            Some(v) => v,
            None => {
                let v = self.enumerate(&small, i, j, x, r);
                self.memo.insert(key, v.clone());
                v
            }
        };
        Ok(TGenerator {
            i,
            j,
            x,
            r,
            truncation: k,
            degree: self.pyramid.kazhdan_degree(&value),
            value,
        })
    }

    fn enumerate(&self, small: &Pyramid, i: usize, j: usize, x: usize, r: usize) -> AlgebraElement {
        let alg = &self.alg;
        let sigma_minus = |row: usize| row <= x;
        if r == 0 {
            return match (i == j, sigma_minus(i)) {
                (false, _) => AlgebraElement::zero(alg),
                (true, true) => AlgebraElement::scalar(alg, HbarPoly::int(-1)),
                (true, false) => AlgebraElement::one(alg),
            };
        }
        let blocks = small.n_blocks();
        let first: Vec<(usize, usize)> = (1..=blocks)
            .filter(|&a| small.row(a) == i)
            .flat_map(|a| (1..=blocks).map(move |b| (a, b)))
            .filter(|&(a, b)| small.col(a) <= small.col(b))
            .filter(|&(a, b)| small.col(b) - small.col(a) < r)
            .collect();
        let walk = Walk {
            small,
            full: &self.pyramid,
            alg,
            j,
            x,
        };
        first
            .par_iter()
            .map(|&(a, b)| {
                let mut acc = AlgebraElement::zero(alg);
                let prefix = self.pyramid.modified_gen_unchecked(alg, a, b);
                let used = small.col(b) - small.col(a) + 1;
                walk.extend(&prefix, b, r - used, false, &mut acc);
                acc
            })
            .reduce(|| AlgebraElement::zero(alg), |a, b| a + b)
    }

    /// The degree-one closed form: `Σ Ẽ_{h,k}` over `col(h) = col(k)`, `row(h) = i`, `row(k) = j`.
    pub fn t1_closed_form(&self, i: usize, j: usize) -> AlgebraElement {
        let p = &self.pyramid;
        let mut acc = AlgebraElement::zero(&self.alg);
        for h in 1..=p.n_blocks() {
            for k in 1..=p.n_blocks() {
                if p.col(h) == p.col(k) && p.row(h) == i && p.row(k) == j {
                    acc = acc + p.modified_gen_unchecked(&self.alg, h, k);
                }
            }
        }
        acc
    }

    /// `T_{11;0}^{(1)}, T_{21;1}^{(1)}, T_{12;1}^{(N−1)}` and `T_{22;1}^{(r)}` for `1 ≤ r ≤ N−1`.
    pub fn subregular_w_generators(&self) -> Result<Vec<TGenerator>> {
        if !self.pyramid.is_subregular() {
            return Err(Error::Unsupported("W-generator list is for subregular pyramids".into()));
        }
        let n = self.pyramid.n_blocks();
        let mut out = vec![
            self.t_element(1, 1, 0, 1)?,
            self.t_element(2, 1, 1, 1)?,
            self.t_element(1, 2, 1, n - 1)?,
        ];
        for r in 1..n {
            out.push(self.t_element(2, 2, 1, r)?);
        }
        Ok(out)
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }
}

struct Walk<'a> {
    small: &'a Pyramid,
    full: &'a Pyramid,
    alg: &'a Arc<Algebra>,
    j: usize,
    x: usize,
}

impl Walk<'_> {
    /// `prefix` ends in a factor with column index block `last_j`; `budget` is the
    /// Kazhdan degree still to be spent; `negative` is the accumulated sign.
    fn extend(
        &self,
        prefix: &AlgebraElement,
        last_j: usize,
        budget: usize,
        negative: bool,
        acc: &mut AlgebraElement,
    ) {
        let s = self.small;
        if budget == 0 {
            if s.row(last_j) == self.j {
                *acc = if negative { &*acc - prefix } else { &*acc + prefix };
            }
            return;
        }
        let row = s.row(last_j);
        let minus = row <= self.x;
        let negative = negative ^ minus;
        let cj = s.col(last_j);
        for a in s.blocks_in_row(row) {
            let ca = s.col(a);
            if (minus && ca > cj) || (!minus && ca <= cj) {
                continue;
            }
            for b in 1..=s.n_blocks() {
                let cb = s.col(b);
                if cb < ca || cb - ca + 1 > budget {
                    continue;
                }
                let next = prefix * &self.full.modified_gen_unchecked(self.alg, a, b);
                self.extend(&next, b, budget - (cb - ca + 1), negative, acc);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::GenIdx;

    fn e(ctx: &BkContext, i: usize, j: usize) -> AlgebraElement {
        AlgebraElement::gen(ctx.algebra(), GenIdx::new(i, j))
    }

    #[test]
    fn degree_zero() {
        let ctx = BkContext::with_default_order(Pyramid::subregular(4).unwrap()).unwrap();
        assert_eq!(ctx.t_element(1, 1, 1, 0).unwrap().value, AlgebraElement::scalar(ctx.algebra(), HbarPoly::int(-1)));
        assert!(ctx.t_element(1, 1, 0, 0).unwrap().value.is_one_like());
        assert!(ctx.t_element(1, 2, 1, 0).unwrap().value.is_zero());
    }

    #[test]
    fn t11_subregular() {
        for n in 3..=6 {
            let ctx = BkContext::with_default_order(Pyramid::subregular(n).unwrap()).unwrap();
            let t = ctx.t_element(1, 1, 0, 1).unwrap();
            let want = e(&ctx, 1, 1)
                - AlgebraElement::scalar(ctx.algebra(), HbarPoly::monomial(crate::algebra::q(n as i64 - 2), 1));
            assert_eq!(t.value, want);
        }
    }

    #[test]
    fn degree_one_matches_closed_form_small() {
        let ctx = BkContext::with_default_order("1,3,2,1".parse().unwrap()).unwrap();
        for i in 1..=3 {
            for j in 1..=3 {
                for x in 0..=3 {
                    assert_eq!(ctx.t_element(i, j, x, 1).unwrap().value, ctx.t1_closed_form(i, j));
                }
            }
        }
    }

    #[test]
    fn out_of_range() {
        let ctx = BkContext::with_default_order(Pyramid::subregular(4).unwrap()).unwrap();
        assert!(ctx.t_element(3, 1, 0, 1).is_err());
        assert!(ctx.t_element(1, 1, 3, 1).is_err());
        assert!(ctx.truncated_t(3, 1, 1, 0, 1).is_err());
    }
}
