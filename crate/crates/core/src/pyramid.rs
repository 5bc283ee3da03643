//! Pyramids, their row/column maps and the data they determine: the grading
//! subalgebras `m ⊂ g` and `p`, the nilpotent `e`, the character `ψ` and the
//! ρ-shifted generators `Ẽ_{i,j}`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::Zero;

use crate::algebra::{Algebra, AlgebraElement, GenIdx, GeneratorOrder, HbarPoly, Q};
use crate::error::{Error, Result};

/// A unimodal sequence of column heights, blocks bottom-aligned and numbered
/// column by column from the left, top to bottom within a column.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Pyramid {
    heights: Vec<usize>,
    total: usize,
    height: usize,
    row: Vec<usize>,
    col: Vec<usize>,
}

impl Pyramid {
    pub fn new(heights: &[usize]) -> Result<Self> {
        if heights.is_empty() || heights.iter().any(|&h| h == 0) {
            return Err(Error::Validation(format!(
                "pyramid heights must be positive and non-empty: {heights:?}"
            )));
        }
        let peak = heights
            .windows(2)
            .position(|w| w[1] < w[0])
            .unwrap_or(heights.len() - 1);
        if heights[peak..].windows(2).any(|w| w[1] > w[0]) {
            return Err(Error::Validation(format!("pyramid heights not unimodal: {heights:?}")));
        }
        let height = *heights.iter().max().unwrap();
        let mut row = Vec::new();
        let mut col = Vec::new();
        for (c, &h) in heights.iter().enumerate() {
            for r in (height - h + 1)..=height {
                row.push(r);
                col.push(c + 1);
            }
        }
        Ok(Self {
            heights: heights.to_vec(),
            total: row.len(),
            height,
            row,
            col,
        })
    }

    /// The subregular pyramid `(2, 1, …, 1)` with `N` blocks.
    pub fn subregular(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Validation("subregular pyramid needs N >= 2".into()));
        }
        let mut h = vec![2];
        h.extend(std::iter::repeat(1).take(n - 2));
        Self::new(&h)
    }

    /// Number of blocks, the `N` of `gl_N`.
    pub fn n_blocks(&self) -> usize {
        self.total
    }

    /// Number of rows (the tallest column).
    pub fn n_rows(&self) -> usize {
        self.height
    }

    pub fn n_cols(&self) -> usize {
        self.heights.len()
    }

    pub fn heights(&self) -> &[usize] {
        &self.heights
    }

    pub fn row(&self, block: usize) -> usize {
        self.row[block - 1]
    }

    pub fn col(&self, block: usize) -> usize {
        self.col[block - 1]
    }

    pub fn is_subregular(&self) -> bool {
        self.heights[0] == 2 && self.heights[1..].iter().all(|&h| h == 1) && self.total >= 2
    }

    /// Blocks lying in the given row, left to right.
    pub fn blocks_in_row(&self, r: usize) -> Vec<usize> {
        (1..=self.total).filter(|&b| self.row(b) == r).collect()
    }

    /// Kazhdan degree of `E_{i,j}`: `col(j) − col(i) + 1`.
    pub fn gen_degree(&self, g: GenIdx) -> i64 {
        self.col(g.j) as i64 - self.col(g.i) as i64 + 1
    }

    /// `ρ_r = n − Σ_{k ≥ r} q_k`.
    pub fn rho(&self, r: usize) -> i64 {
        self.height as i64 - self.heights[r - 1..].iter().sum::<usize>() as i64
    }

    pub fn in_m(&self, g: GenIdx) -> bool {
        self.col(g.j) < self.col(g.i)
    }

    /// Basis of `m`, lexicographic.
    pub fn m_basis(&self) -> Vec<GenIdx> {
        self.all_gens().filter(|&g| self.in_m(g)).collect()
    }

    /// Basis of `p`, lexicographic.
    pub fn p_basis(&self) -> Vec<GenIdx> {
        self.all_gens().filter(|&g| !self.in_m(g)).collect()
    }

    fn all_gens(&self) -> impl Iterator<Item = GenIdx> + '_ {
        let n = self.total;
        (1..=n).flat_map(move |i| (1..=n).map(move |j| GenIdx::new(i, j)))
    }

    /// Matrix units of `e`: horizontally adjacent blocks in the same row.
    pub fn e_support(&self) -> Vec<GenIdx> {
        self.all_gens()
            .filter(|g| self.row(g.i) == self.row(g.j) && self.col(g.i) + 1 == self.col(g.j))
            .collect()
    }

    pub fn nilpotent_e(&self, alg: &Arc<Algebra>) -> Result<AlgebraElement> {
        self.check_alg(alg)?;
        Ok(self
            .e_support()
            .into_iter()
            .fold(AlgebraElement::zero(alg), |acc, g| acc + AlgebraElement::gen(alg, g)))
    }

    pub fn psi(&self) -> CharacterPsi {
        let e = self.e_support();
        CharacterPsi {
            values: self
                .m_basis()
                .into_iter()
                .map(|g| {
                    let v = if e.contains(&GenIdx::new(g.j, g.i)) { 1 } else { 0 };
                    (g, Q::from_integer(v.into()))
                })
                .collect(),
        }
    }

    /// `Ẽ_{i,j} = (−1)^{col(j)−col(i)} (E_{i,j} + δ_{ij} ℏ ρ_{col(i)})`.
    pub fn modified_gen(&self, alg: &Arc<Algebra>, i: usize, j: usize) -> Result<AlgebraElement> {
        self.check_alg(alg)?;
        self.check_block(i)?;
        self.check_block(j)?;
        Ok(self.modified_gen_unchecked(alg, i, j))
    }

    pub(crate) fn modified_gen_unchecked(&self, alg: &Arc<Algebra>, i: usize, j: usize) -> AlgebraElement {
        let mut x = AlgebraElement::generator(alg, i, j).expect("block in range");
        if i == j {
            let shift = HbarPoly::monomial(Q::from_integer(self.rho(self.col(i)).into()), 1);
            x = x + AlgebraElement::scalar(alg, shift);
        }
        if (self.col(j) as i64 - self.col(i) as i64) % 2 != 0 {
            -x
        } else {
            x
        }
    }

    /// Canonical order for subregular pyramids, otherwise `p` then `m`, each lexicographic.
    /// Either way every `m`-generator ranks above every `p`-generator.
    pub fn default_order(&self) -> GeneratorOrder {
        if self.is_subregular() {
            GeneratorOrder::canonical_subregular(self.total).expect("N >= 2")
        } else {
            let mut seq = self.p_basis();
            seq.extend(self.m_basis());
            GeneratorOrder::from_sequence(self.total, seq).expect("p and m partition gl_N")
        }
    }

    /// Drops the `k` rightmost columns; block numbers of the survivors are unchanged.
    pub fn truncate(&self, k: usize) -> Result<Self> {
        if k >= self.n_cols() {
            return Err(Error::Validation(format!(
                "cannot drop {k} of {} columns",
                self.n_cols()
            )));
        }
        Self::new(&self.heights[..self.n_cols() - k])
    }

    /// Kazhdan degree of an element, `None` for zero.
    pub fn kazhdan_degree(&self, a: &AlgebraElement) -> Option<i64> {
        a.terms()
            .iter()
            .map(|(m, c)| {
                let d: i64 = a
                    .factors(m)
                    .iter()
                    .map(|&(g, e)| self.gen_degree(g) * e as i64)
                    .sum();
                d + c.degree().expect("stored coefficients are nonzero") as i64
            })
            .max()
    }

    /// The part of `a` of exact Kazhdan degree `d`.
    pub fn graded_component(&self, a: &AlgebraElement, d: i64) -> AlgebraElement {
        let alg = a.algebra();
        AlgebraElement::from_terms(
            alg,
            a.terms().iter().filter_map(|(m, c)| {
                let md: i64 = a
                    .factors(m)
                    .iter()
                    .map(|&(g, e)| self.gen_degree(g) * e as i64)
                    .sum();
                let k = d - md;
                if k < 0 {
                    return None;
                }
                let part = c.take(k as usize);
                (!part.is_zero()).then(|| (m.clone(), part.shift(0)))
            }),
        )
    }

    fn check_block(&self, b: usize) -> Result<()> {
        if b == 0 || b > self.total {
            Err(Error::Validation(format!("block {b} outside 1..={}", self.total)))
        } else {
            Ok(())
        }
    }

    fn check_alg(&self, alg: &Algebra) -> Result<()> {
        if alg.n() != self.total {
            Err(Error::Structural(format!(
                "pyramid has {} blocks, algebra is gl_{}",
                self.total,
                alg.n()
            )))
        } else {
            Ok(())
        }
    }

    /// `subreg:N` or a comma separated height list.
    pub fn literal(&self) -> String {
        if self.is_subregular() && self.total >= 3 {
            format!("subreg:{}", self.total)
        } else {
            self.heights
                .iter()
                .map(|h| h.to_string())
                .collect::<Vec<_>>()
                .join(",")
        }
    }
}

impl FromStr for Pyramid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(n) = s.strip_prefix("subreg:") {
            let n: usize = n
                .trim()
                .parse()
                .map_err(|_| Error::Validation(format!("bad pyramid literal {s:?}")))?;
            return Self::subregular(n);
        }
        let heights = s
            .split(',')
            .map(|h| h.trim().parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::Validation(format!("bad pyramid literal {s:?}")))?;
        Self::new(&heights)
    }
}

impl fmt::Display for Pyramid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.literal())
    }
}

/// The character `ψ(x) = Tr(e x)` on `m`, stored only on the `m`-basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterPsi {
    values: BTreeMap<GenIdx, Q>,
}

impl CharacterPsi {
    /// Errors on generators outside `m`.
    pub fn value(&self, g: GenIdx) -> Result<&Q> {
        self.values
            .get(&g)
            .ok_or_else(|| Error::Validation(format!("ψ is defined on m only, got {g}")))
    }

    pub fn support(&self) -> impl Iterator<Item = GenIdx> + '_ {
        self.values.iter().filter(|(_, v)| !v.is_zero()).map(|(g, _)| *g)
    }

    pub fn domain(&self) -> impl Iterator<Item = GenIdx> + '_ {
        self.values.keys().copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pictured_numbering() {
        let p: Pyramid = "1,3,2,1".parse().unwrap();
        assert_eq!((p.n_blocks(), p.n_rows(), p.n_cols()), (7, 3, 4));
        let rows: Vec<_> = (1..=7).map(|b| p.row(b)).collect();
        let cols: Vec<_> = (1..=7).map(|b| p.col(b)).collect();
        assert_eq!(rows, vec![3, 1, 2, 3, 2, 3, 3]);
        assert_eq!(cols, vec![1, 2, 2, 2, 3, 3, 4]);
        let mut e = p.e_support();
        e.sort();
        let mut want = vec![
            GenIdx::new(3, 5),
            GenIdx::new(1, 4),
            GenIdx::new(4, 6),
            GenIdx::new(6, 7),
        ];
        want.sort();
        assert_eq!(e, want);
    }

    #[test]
    fn subregular_maps() {
        let p = Pyramid::subregular(5).unwrap();
        assert_eq!(p.heights(), &[2, 1, 1, 1]);
        assert_eq!((p.row(1), p.col(1)), (1, 1));
        for i in 2..=5 {
            assert_eq!((p.row(i), p.col(i)), (2, i - 1));
        }
        assert_eq!(p.rho(1), -3);
        assert_eq!(p.rho(4), 1);
        assert_eq!(p.psi().support().count(), 3);
    }

    #[test]
    fn rejects_bad_heights() {
        assert!(Pyramid::new(&[2, 1, 2]).is_err());
        assert!(Pyramid::new(&[1, 0]).is_err());
        assert!(Pyramid::new(&[]).is_err());
        assert!("1,x".parse::<Pyramid>().is_err());
        assert!(Pyramid::new(&[1, 2, 2, 1]).is_ok());
    }

    #[test]
    fn psi_rejects_non_m() {
        let p = Pyramid::subregular(3).unwrap();
        let psi = p.psi();
        assert!(psi.value(GenIdx::new(1, 2)).is_err());
        assert_eq!(psi.value(GenIdx::new(3, 2)).unwrap(), &Q::from_integer(1.into()));
        assert!(psi.value(GenIdx::new(3, 1)).unwrap().is_zero());
    }

    #[test]
    fn truncation() {
        let p: Pyramid = "1,3,2,1".parse().unwrap();
        assert_eq!(p.truncate(1).unwrap().heights(), &[1, 3, 2]);
        assert_eq!(p.truncate(0).unwrap(), p);
        assert!(p.truncate(4).is_err());
        assert_eq!(
            Pyramid::subregular(6).unwrap().truncate(1).unwrap(),
            Pyramid::subregular(5).unwrap()
        );
    }
}
