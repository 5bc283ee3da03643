//! The subregular wonderbolic subspace `w = m ⊕ b`, the form `ω(x, y) = Tr(e[x, y])`
//! and the constant r-matrix part `j_c`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::{subregular_b, subregular_m, GenIdx, Q};
use crate::error::{Error, Result};

/// Ordered basis of `w`: the `m`-basis followed by the `b`-basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WonderbolicBasis {
    pub n: usize,
    pub m_basis: Vec<GenIdx>,
    pub b_basis: Vec<GenIdx>,
}

impl WonderbolicBasis {
    pub fn new(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::Validation(format!("wonderbolic data needs N >= 3, got {n}")));
        }
        Ok(Self {
            n,
            m_basis: subregular_m(n),
            b_basis: subregular_b(n),
        })
    }

    pub fn w_basis(&self) -> Vec<GenIdx> {
        self.m_basis.iter().chain(&self.b_basis).copied().collect()
    }

    pub fn dim(&self) -> usize {
        self.m_basis.len() + self.b_basis.len()
    }

    /// Whether a linear combination of matrix units lies in `w`.
    pub fn contains(&self, support: &[GenIdx]) -> bool {
        let w = self.w_basis();
        support.iter().all(|g| w.contains(g))
    }

    /// Matrix units of the subregular `e = E_{2,3} + … + E_{N−1,N}`.
    pub fn e_support(&self) -> Vec<GenIdx> {
        (2..self.n).map(|k| GenIdx::new(k, k + 1)).collect()
    }
}

/// `Tr(e · E_{a,b})` for the subregular `e`.
fn trace_e(n: usize, g: GenIdx) -> i64 {
    i64::from(g.i == g.j + 1 && g.j >= 2 && g.j < n)
}

/// `ω(x, y) = Tr(e [x, y])` on matrix units.
pub fn omega(n: usize, x: GenIdx, y: GenIdx) -> i64 {
    x.bracket(y).into_iter().map(|(g, c)| c * trace_e(n, g)).sum()
}

/// The Gram matrix of `ω` on the `w`-basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaMatrix {
    pub basis: WonderbolicBasis,
    pub entries: Vec<Vec<Q>>,
}

pub fn omega_matrix(n: usize) -> Result<OmegaMatrix> {
    let basis = WonderbolicBasis::new(n)?;
    let w = basis.w_basis();
    let entries = w
        .iter()
        .map(|&x| w.iter().map(|&y| Q::from_integer(omega(n, x, y).into())).collect())
        .collect();
    Ok(OmegaMatrix { basis, entries })
}

impl OmegaMatrix {
    pub fn is_antisymmetric(&self) -> bool {
        let d = self.entries.len();
        (0..d).all(|a| (0..d).all(|b| self.entries[a][b] == -self.entries[b][a].clone()))
    }

    /// Both `m × m` and `b × b` blocks vanish.
    pub fn isotropy(&self) -> (bool, bool) {
        let k = self.basis.m_basis.len();
        let d = self.entries.len();
        let zero_block =
            |r: std::ops::Range<usize>| r.clone().all(|a| r.clone().all(|b| self.entries[a][b].is_zero()));
        (zero_block(0..k), zero_block(k..d))
    }

    pub fn determinant(&self) -> Q {
        determinant(self.entries.clone())
    }
}

/// Exact determinant by Gaussian elimination.
pub fn determinant(mut a: Vec<Vec<Q>>) -> Q {
    let d = a.len();
    let mut det = Q::one();
    for col in 0..d {
        let Some(p) = (col..d).find(|&r| !a[r][col].is_zero()) else {
            return Q::zero();
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        let pivot = a[col][col].clone();
        det *= &pivot;
        for r in col + 1..d {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &pivot;
            for c in col..d {
                let v = &a[col][c] * &f;
                a[r][c] -= v;
            }
        }
    }
    det
}

/// A finite sum `Σ c · A ⊗ B` of tensor pairs of matrix units.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RMatrixElement {
    pub terms: BTreeMap<(GenIdx, GenIdx), Q>,
}

impl RMatrixElement {
    pub fn add(&mut self, a: GenIdx, b: GenIdx, c: Q) {
        let e = self.terms.entry((a, b)).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(a, b));
        }
    }

    pub fn flip(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(&(a, b), c)| ((b, a), c.clone())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(a, b), c) in &other.terms {
            out.add(a, b, -c.clone());
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Renders as `c·E_{a,b}⊗E_{c,d} + …`.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|((a, b), c)| {
                if c.is_one() {
                    format!("{a}⊗{b}")
                } else {
                    format!("({c})·{a}⊗{b}")
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// `j_c^{21}(E_{i,j}^*)` as a combination of `b`-units.
fn jc21_of(i: usize, j: usize) -> BTreeMap<GenIdx, Q> {
    let mut out = BTreeMap::new();
    if j <= 2 {
        if i > 2 {
            out.insert(GenIdx::new(j, i - 1), Q::one());
        }
        return out;
    }
    out.insert(GenIdx::new(j, i - 1), Q::one());
    for (g, c) in jc21_of(i - 1, j - 1) {
        let e = out.entry(g).or_insert_with(Q::zero);
        *e -= c;
        if e.is_zero() {
            out.remove(&g);
        }
    }
    out
}

/// `j_c = Σ_{E_{i,j} ∈ m} j_c^{21}(E_{i,j}^*) ⊗ E_{i,j}` from the recursion for `j_c^{21}`.
pub fn jc_recursive(n: usize) -> Result<RMatrixElement> {
    WonderbolicBasis::new(n)?;
    let mut r = RMatrixElement::default();
    for g in subregular_m(n) {
        for (b, c) in jc21_of(g.i, g.j) {
            r.add(b, g, c);
        }
    }
    Ok(r)
}

/// `Σ_{j=2}^{N−1} Σ_{i=j+1}^{N} (Σ_{l=2}^{j} E_{l,l+i−j−1}) ⊗ E_{i,j} + Σ_{i=3}^{N} E_{1,i−1} ⊗ E_{i,1}`.
pub fn jc_closed_form(n: usize) -> Result<RMatrixElement> {
    WonderbolicBasis::new(n)?;
    let mut r = RMatrixElement::default();
    for j in 2..n {
        for i in j + 1..=n {
            for l in 2..=j {
                r.add(GenIdx::new(l, l + i - j - 1), GenIdx::new(i, j), Q::one());
            }
        }
    }
    for i in 3..=n {
        r.add(GenIdx::new(1, i - 1), GenIdx::new(i, 1), Q::one());
    }
    Ok(r)
}

/// Results of the wonderbolic checks for one `N`.
#[derive(Clone, Debug, Serialize)]
pub struct InverseReport {
    pub n: usize,
    pub dim_w: usize,
    pub dim_m: usize,
    pub dim_b: usize,
    pub antisymmetric: bool,
    pub determinant: String,
    pub nondegenerate: bool,
    pub m_isotropic: bool,
    pub b_isotropic: bool,
    pub e_outside_w: bool,
    pub recursive_equals_closed: bool,
    /// Terms of `recursive − closed`, empty when they agree.
    pub jc_diff: Vec<String>,
    /// `Ω·R = I` with `R` built from the recursive `j_c`.
    pub inverse_ok_recursive: bool,
    /// `Ω·R = I` with `R` built from the closed-form `j_c`.
    pub inverse_ok_closed: bool,
    /// Nonzero entries of `Ω·R − I` for the recursive `j_c`, as `(row, col, value)`.
    pub defects_recursive: Vec<(String, String, String)>,
    pub defects_closed: Vec<(String, String, String)>,
}

impl InverseReport {
    pub fn passed(&self) -> bool {
        self.antisymmetric
            && self.nondegenerate
            && self.m_isotropic
            && self.b_isotropic
            && self.e_outside_w
            && self.recursive_equals_closed
            && self.inverse_ok_recursive
            && self.inverse_ok_closed
            && self.dim_m == self.dim_b
    }
}

/// Nonzero entries of `Ω R − I`, where `r_w = j_c − j_c^{21} = Σ R_{cb} w_c ⊗ w_b` acts by
/// `r_w(φ) = Σ R_{cb} φ(w_c) w_b`; `Ω R = I` says `x ↦ r_w(ω(x, ·))` is the identity on `w`.
/// `None` if `r_w` leaves `w ⊗ w`.
pub fn inverse_defects(om: &OmegaMatrix, jc: &RMatrixElement) -> Option<Vec<(String, String, String)>> {
    let w = om.basis.w_basis();
    let d = w.len();
    let r = jc.sub(&jc.flip());
    let pos = |g: &GenIdx| w.iter().position(|h| h == g);
    let mut rm = vec![vec![Q::zero(); d]; d];
    for (&(a, b), c) in &r.terms {
        rm[pos(&a)?][pos(&b)?] += c;
    }
    let mut defects = Vec::new();
    for a in 0..d {
        for b in 0..d {
            let mut s = Q::zero();
            for c in 0..d {
                if !om.entries[a][c].is_zero() && !rm[c][b].is_zero() {
                    s += &om.entries[a][c] * &rm[c][b];
                }
            }
            if a == b {
                s -= Q::one();
            }
            if !s.is_zero() {
                defects.push((w[a].to_string(), w[b].to_string(), s.to_string()));
            }
        }
    }
    Some(defects)
}

/// Runs every wonderbolic check for one `N`, testing both descriptions of `j_c` as inverses.
pub fn verify_inverse(n: usize) -> Result<InverseReport> {
    let om = omega_matrix(n)?;
    let basis = &om.basis;
    let (m_iso, b_iso) = om.isotropy();
    let det = om.determinant();
    let rec = jc_recursive(n)?;
    let closed = jc_closed_form(n)?;
    let diff = rec.sub(&closed);
    let outside = || vec![("r_w".to_string(), "w⊗w".to_string(), "leaves".to_string())];
    let defects_recursive = inverse_defects(&om, &rec).unwrap_or_else(outside);
    let defects_closed = inverse_defects(&om, &closed).unwrap_or_else(outside);
    Ok(InverseReport {
        n,
        dim_w: basis.dim(),
        dim_m: basis.m_basis.len(),
        dim_b: basis.b_basis.len(),
        antisymmetric: om.is_antisymmetric(),
        nondegenerate: !det.is_zero(),
        determinant: det.to_string(),
        m_isotropic: m_iso,
        b_isotropic: b_iso,
        e_outside_w: !basis.contains(&basis.e_support()),
        recursive_equals_closed: diff.is_zero(),
        jc_diff: diff
            .terms
            .iter()
            .map(|((a, b), c)| format!("({c})·{a}⊗{b}"))
            .collect(),
        inverse_ok_recursive: defects_recursive.is_empty(),
        inverse_ok_closed: defects_closed.is_empty(),
        defects_recursive,
        defects_closed,
    })
}
