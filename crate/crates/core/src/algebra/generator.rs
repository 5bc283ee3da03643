use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// Matrix unit `E_{i,j}` of `gl_N`, 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GenIdx {
    pub i: usize,
    pub j: usize,
}

impl GenIdx {
    pub const fn new(i: usize, j: usize) -> Self {
        Self { i, j }
    }

    pub(crate) fn id(self, n: usize) -> u16 {
        ((self.i - 1) * n + (self.j - 1)) as u16
    }

    pub(crate) fn from_id(id: u16, n: usize) -> Self {
        let id = id as usize;
        Self::new(id / n + 1, id % n + 1)
    }

    /// `[E_{i,j}, E_{k,l}] = δ_{jk} E_{i,l} − δ_{li} E_{k,j}` as at most two signed terms.
    pub fn bracket(self, other: GenIdx) -> Vec<(GenIdx, i64)> {
        let mut out = Vec::with_capacity(2);
        if self.j == other.i {
            out.push((GenIdx::new(self.i, other.j), 1));
        }
        if other.j == self.i {
            let g = GenIdx::new(other.i, self.j);
            match out.iter().position(|(h, _)| *h == g) {
                Some(p) => {
                    out.remove(p);
                }
                None => out.push((g, -1)),
            }
        }
        out
    }
}

impl fmt::Display for GenIdx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "E_{{{},{}}}", self.i, self.j)
    }
}

/// A total order on the matrix units, stored as a rank per generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeneratorOrder {
    n: usize,
    rank: Vec<u32>,
    by_rank: Vec<GenIdx>,
}

impl GeneratorOrder {
    /// Lexicographic order on `(i, j)`.
    pub fn lex(n: usize) -> Self {
        let seq = (1..=n)
            .flat_map(|i| (1..=n).map(move |j| GenIdx::new(i, j)))
            .collect();
        Self::from_sequence(n, seq).expect("lex order is a bijection")
    }

    /// Generators listed from smallest to largest.
    pub fn from_sequence(n: usize, seq: Vec<GenIdx>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Validation("N must be positive".into()));
        }
        if seq.len() != n * n {
            return Err(Error::Validation(format!(
                "order lists {} generators, expected {}",
                seq.len(),
                n * n
            )));
        }
        let mut rank = vec![u32::MAX; n * n];
        for (r, g) in seq.iter().enumerate() {
            if g.i == 0 || g.j == 0 || g.i > n || g.j > n {
                return Err(Error::Validation(format!("{g} out of range for N={n}")));
            }
            let id = g.id(n) as usize;
            if rank[id] != u32::MAX {
                return Err(Error::Validation(format!("{g} listed twice")));
            }
            rank[id] = r as u32;
        }
        Ok(Self { n, rank, by_rank: seq })
    }

    /// Rank array indexed by `(i−1)·N + (j−1)`; must be a bijection onto `0..N²`.
    pub fn from_ranks(n: usize, ranks: &[u32]) -> Result<Self> {
        if ranks.len() != n * n {
            return Err(Error::Validation("rank array has wrong length".into()));
        }
        let mut seq = vec![None; n * n];
        for (id, &r) in ranks.iter().enumerate() {
            let slot = seq
                .get_mut(r as usize)
                .ok_or_else(|| Error::Validation(format!("rank {r} out of range")))?;
            if slot.is_some() {
                return Err(Error::Validation(format!("rank {r} used twice")));
            }
            *slot = Some(GenIdx::from_id(id as u16, n));
        }
        Self::from_sequence(n, seq.into_iter().map(Option::unwrap).collect())
    }

    /// The order used for subregular work: `b`, then `l = {E_{2,1}, E_{1,1}}`,
    /// then the last column `E_{1,N}, …, E_{N,N}`, then `m`; lexicographic within blocks.
    pub fn canonical_subregular(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Validation("subregular order needs N >= 2".into()));
        }
        let mut seq = Vec::with_capacity(n * n);
        seq.extend(subregular_b(n));
        seq.push(GenIdx::new(2, 1));
        seq.push(GenIdx::new(1, 1));
        seq.extend((1..=n).map(|i| GenIdx::new(i, n)));
        seq.extend(subregular_m(n));
        Self::from_sequence(n, seq)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self, g: GenIdx) -> u32 {
        self.rank[g.id(self.n) as usize]
    }

    pub(crate) fn rank_id(&self, id: u16) -> u32 {
        self.rank[id as usize]
    }

    pub fn ranks(&self) -> &[u32] {
        &self.rank
    }

    /// Generators from smallest to largest.
    pub fn sequence(&self) -> &[GenIdx] {
        &self.by_rank
    }

    /// Short stable digest of the rank array.
    pub fn fingerprint(&self) -> String {
        let mut h = Sha256::new();
        h.update((self.n as u64).to_le_bytes());
        for r in &self.rank {
            h.update(r.to_le_bytes());
        }
        h.finalize()[..8].iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// `b = span(E_{k,l} | 1 ≤ k ≤ l ≤ N−1, 2 ≤ l)`, lexicographic.
pub fn subregular_b(n: usize) -> Vec<GenIdx> {
    let mut out = Vec::new();
    for k in 1..n {
        for l in k.max(2)..n {
            out.push(GenIdx::new(k, l));
        }
    }
    out
}

/// `m = span(E_{i,j} | 3 ≤ i ≤ N, j < i)`, lexicographic.
pub fn subregular_m(n: usize) -> Vec<GenIdx> {
    let mut out = Vec::new();
    for i in 3..=n {
        for j in 1..i {
            out.push(GenIdx::new(i, j));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bracket_structure_constants() {
        let e12 = GenIdx::new(1, 2);
        let e21 = GenIdx::new(2, 1);
        assert_eq!(
            e12.bracket(e21),
            vec![(GenIdx::new(1, 1), 1), (GenIdx::new(2, 2), -1)]
        );
        assert!(GenIdx::new(1, 1).bracket(GenIdx::new(2, 3)).is_empty());
        assert!(e12.bracket(e12).is_empty());
        // [E11, E12] = E12, and [E11, E11] cancels.
        assert_eq!(GenIdx::new(1, 1).bracket(e12), vec![(e12, 1)]);
        assert!(GenIdx::new(1, 1).bracket(GenIdx::new(1, 1)).is_empty());
    }

    #[test]
    fn canonical_order_partitions_all_units() {
        for n in 2..=8 {
            let o = GeneratorOrder::canonical_subregular(n).unwrap();
            assert_eq!(o.sequence().len(), n * n);
            let b = subregular_b(n).len();
            let m = subregular_m(n).len();
            // p = b ⊕ l ⊕ col_N has dimension (N² + N + 2)/2
            assert_eq!(b + 2 + n, (n * n + n + 2) / 2);
            assert_eq!(b + 2 + n + m, n * n);
        }
    }

    #[test]
    fn ranks_round_trip_and_reject_non_bijections() {
        let o = GeneratorOrder::canonical_subregular(4).unwrap();
        let back = GeneratorOrder::from_ranks(4, o.ranks()).unwrap();
        assert_eq!(o, back);
        let mut bad = o.ranks().to_vec();
        bad[0] = bad[1];
        assert!(GeneratorOrder::from_ranks(4, &bad).is_err());
        assert_ne!(o.fingerprint(), GeneratorOrder::lex(4).fingerprint());
    }
}
