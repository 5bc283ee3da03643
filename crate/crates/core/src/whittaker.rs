//! Whittaker vectors of `U_ℏ(g) ⊗ C^N / m^ψ` for the subregular pyramid: the explicit
//! vectors `ṽ_i` built from truncated T-elements, and their canonical form `v_i^ψ`
//! whose non-leading coefficients lie in `b·U_ℏ(g)`.

use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{subregular_b, Algebra, AlgebraElement, GenIdx, GeneratorOrder, HbarPoly};
use crate::bk::{BkContext, TGenerator};
use crate::error::{Error, Result};
use crate::pyramid::Pyramid;
use crate::quotient::{ModuleElement, QuotientSpace};

const E21: GenIdx = GenIdx::new(2, 1);
const E11: GenIdx = GenIdx::new(1, 1);

/// Which superscript the `T_{12}` family of `ṽ_1` uses: `N−i−2` or `N−i−1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum T12Exponent {
    #[serde(rename = "N-i-2")]
    NMinusIMinus2,
    #[serde(rename = "N-i-1")]
    NMinusIMinus1,
}

impl T12Exponent {
    pub fn exponent(self, n: usize, i: usize) -> usize {
        match self {
            Self::NMinusIMinus2 => n - i - 2,
            Self::NMinusIMinus1 => n - i - 1,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Self::NMinusIMinus2 => "N-i-2",
            Self::NMinusIMinus1 => "N-i-1",
        }
    }
}

/// `N` rank-one Whittaker vectors, `vectors[i-1]` leading with `1 ⊗ v_i`.
#[derive(Clone, Debug)]
pub struct WhittakerBasis {
    pub n: usize,
    pub vectors: Vec<ModuleElement>,
    pub canonical: bool,
    pub t12: T12Exponent,
}

impl WhittakerBasis {
    pub fn vector(&self, i: usize) -> &ModuleElement {
        &self.vectors[i - 1]
    }

    /// The coefficient `x_i^j` of `v_j` in vector `i`.
    pub fn coefficient(&self, i: usize, j: usize) -> AlgebraElement {
        self.vectors[i - 1].coefficient(&[j])
    }
}

/// Change of basis from `ṽ` to `v^ψ`: `ṽ_t = v_t^ψ + Σ_{s>t} v_s^ψ · c[t][s]`.
#[derive(Clone, Debug)]
pub struct Transition {
    pub entries: Vec<Vec<AlgebraElement>>,
}

/// Everything needed for subregular computations at a fixed `N`: the quotient space
/// (canonical generator order) and a T-element cache on the same algebra.
pub struct Subregular {
    n: usize,
    space: Arc<QuotientSpace>,
    bk: BkContext,
}

impl Subregular {
    pub fn new(n: usize) -> Result<Self> {
        let pyramid = Pyramid::subregular(n)?;
        let alg = Algebra::new(GeneratorOrder::canonical_subregular(n)?);
        let space = QuotientSpace::with_algebra(pyramid.clone(), alg.clone())?;
        let bk = BkContext::with_algebra(pyramid, alg)?;
        Ok(Self { n, space, bk })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn space(&self) -> &Arc<QuotientSpace> {
        &self.space
    }

    pub fn bk(&self) -> &BkContext {
        &self.bk
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        self.space.algebra()
    }

    /// `ṽ_{N−j}` for `N − j ≠ 1`:
    /// `1 ⊗ v_{N−j} + Σ_{i<j} (−1)^{j−i} ₍i+1₎T_{22;1}^{(j−i)} ⊗ v_{N−i}`.
    pub fn tilde_v(&self, j: usize) -> Result<ModuleElement> {
        let n = self.n;
        if j + 1 >= n {
            return Err(Error::Validation(format!(
                "ṽ_{{N-j}} needs 0 <= j <= N-2 here (N={n}, j={j})"
            )));
        }
        let mut v = self.space.vector(&[n - j])?;
        for i in 0..j {
            let t = self.bk.truncated_t(i + 1, 2, 2, 1, j - i)?;
            let sign = if (j - i) % 2 == 0 { 1 } else { -1 };
            let term = self.space.element(&t.value.scale(&HbarPoly::int(sign)), &[n - i])?;
            v = v.try_add(&term)?;
        }
        Ok(v)
    }

    /// `ṽ_1 = 1 ⊗ v_1 + Σ_{i=0}^{N−3} (−1)^{e_i} ₍i+1₎T_{12;1}^{(e_i)} ⊗ v_{N−i}`.
    pub fn tilde_v1(&self, convention: T12Exponent) -> Result<ModuleElement> {
        let n = self.n;
        let mut v = self.space.vector(&[1])?;
        for i in 0..n.saturating_sub(2) {
            let e = convention.exponent(n, i);
            let t = self.bk.truncated_t(i + 1, 1, 2, 1, e)?;
            let sign = if e % 2 == 0 { 1 } else { -1 };
            let term = self.space.element(&t.value.scale(&HbarPoly::int(sign)), &[n - i])?;
            v = v.try_add(&term)?;
        }
        Ok(v)
    }

    /// Tries both exponent conventions for `ṽ_1` and returns them with their
    /// Whittaker verdicts, the statement's `N−i−2` first.
    pub fn t12_candidates(&self) -> Result<Vec<(T12Exponent, bool)>> {
        [T12Exponent::NMinusIMinus2, T12Exponent::NMinusIMinus1]
            .into_iter()
            .map(|c| {
                let v = self.tilde_v1(c)?;
                Ok((c, self.space.is_whittaker(&v)?.passed()))
            })
            .collect()
    }

    /// The first convention whose `ṽ_1` is Whittaker.
    pub fn resolve_t12(&self) -> Result<T12Exponent> {
        self.t12_candidates()?
            .into_iter()
            .find(|(_, ok)| *ok)
            .map(|(c, _)| c)
            .ok_or_else(|| Error::NotWhittaker {
                generator: "m".into(),
                residue: "ṽ_1 fails under both T_12 exponent conventions".into(),
            })
    }

    /// `ṽ_{N−j}` with the Whittaker gate applied.
    pub fn build_tilde_v(&self, j: usize, t12: T12Exponent) -> Result<ModuleElement> {
        let n = self.n;
        if j >= n {
            return Err(Error::Validation(format!("j={j} outside 0..N={n}")));
        }
        let v = if n - j == 1 && n > 1 {
            self.tilde_v1(t12)?
        } else {
            self.tilde_v(j)?
        };
        self.space.is_whittaker(&v)?.into_result()?;
        Ok(v)
    }

    /// All `ṽ_i`, checked.
    pub fn tilde_basis(&self) -> Result<WhittakerBasis> {
        let t12 = if self.n > 2 {
            self.resolve_t12()?
        } else {
            T12Exponent::NMinusIMinus2
        };
        let n = self.n;
        let mut vectors: Vec<ModuleElement> = (1..=n)
            .into_par_iter()
            .map(|i| self.build_tilde_v(n - i, t12))
            .collect::<Result<_>>()?;
        vectors.shrink_to_fit();
        Ok(WhittakerBasis {
            n,
            vectors,
            canonical: false,
            t12,
        })
    }

    /// Removes ℓ-constant parts of the non-leading coefficients, working down from `v_N`.
    pub fn canonicalize(&self, basis: &WhittakerBasis) -> Result<(WhittakerBasis, Transition)> {
        let n = self.n;
        let alg = self.algebra();
        let mut out: Vec<ModuleElement> = basis.vectors.clone();
        let mut trans = vec![vec![AlgebraElement::zero(alg); n + 1]; n + 1];
        for t in (1..=n).rev() {
            let mut v = out[t - 1].clone();
            for _round in 0..=n {
                let mut changed = false;
                for s in t + 1..=n {
                    let c = l_constant_part(&v.coefficient(&[s]));
                    if c.is_zero() {
                        continue;
                    }
                    changed = true;
                    v = v.try_sub(&self.space.right_act(&out[s - 1], &c)?)?;
                    trans[t][s] = &trans[t][s] + &c;
                }
                if !changed {
                    break;
                }
            }
            for s in t + 1..=n {
                let x = v.coefficient(&[s]);
                if !l_constant_part(&x).is_zero() || !self.in_b_left_ideal(&x, &subregular_b(n))? {
                    return Err(Error::Consistency(format!(
                        "canonical coefficient x_{t}^{s} = {x} is not in b·U"
                    )));
                }
            }
            out[t - 1] = v;
        }
        Ok((
            WhittakerBasis {
                n,
                vectors: out,
                canonical: true,
                t12: basis.t12,
            },
            Transition { entries: trans },
        ))
    }

    pub fn canonical_basis(&self) -> Result<WhittakerBasis> {
        Ok(self.canonicalize(&self.tilde_basis()?)?.0)
    }

    /// Membership of `x` in the left ideal generated by `gens`, which must span a
    /// subalgebra: re-express `x` with `gens` ranked first and check that every
    /// monomial starts with one of them.
    pub fn in_b_left_ideal(&self, x: &AlgebraElement, gens: &[GenIdx]) -> Result<bool> {
        if x.is_zero() {
            return Ok(true);
        }
        let n = self.n;
        let mut seq: Vec<GenIdx> = gens.to_vec();
        seq.extend(
            self.algebra()
                .order()
                .sequence()
                .iter()
                .filter(|g| !gens.contains(g)),
        );
        let alg = Algebra::new(GeneratorOrder::from_sequence(n, seq)?);
        let y = x.convert(&alg)?;
        Ok(y.terms().keys().all(|m| {
            y.factors(m)
                .first()
                .is_some_and(|(g, _)| gens.contains(g))
        }))
    }

    /// For each non-leading coefficient `x_i^j` of a canonical basis, whether it lies in the
    /// left ideal generated by `truncated_borel(j − 1 + shift)`.
    pub fn truncated_support(
        &self,
        basis: &WhittakerBasis,
        shift: usize,
    ) -> Result<Vec<((usize, usize), bool)>> {
        let n = self.n;
        let mut out = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                let x = basis.coefficient(i, j);
                let gens = truncated_borel(j - 1 + shift);
                out.push(((i, j), self.in_b_left_ideal(&x, &gens)?));
            }
        }
        Ok(out)
    }

    /// Checks the canonical shape: leading `1 ⊗ v_i`, nothing below, and every
    /// higher coefficient with zero ℓ-constant part and zero `b`-reduction.
    pub fn is_canonical(&self, basis: &WhittakerBasis) -> Result<bool> {
        let n = self.n;
        for i in 1..=n {
            let v = basis.vector(i);
            if v.rank() != 1 || !basis.coefficient(i, i).is_one_like() {
                return Ok(false);
            }
            for s in v.slot_support() {
                let k = s[0];
                if k < i {
                    return Ok(false);
                }
                if k > i {
                    let x = basis.coefficient(i, k);
                    if !l_constant_part(&x).is_zero() {
                        return Ok(false);
                    }
                    let red = self.space.reduce_mod_b_left(&self.space.element(&x, &[k])?)?;
                    if !red.is_zero() {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }
}

/// Outcome of the two truncation identities for one `(i, r)`.
#[derive(Clone, Debug, Serialize)]
pub struct RecursionCheck {
    pub i: usize,
    pub r: usize,
    /// `₁T_{i2;1}^{(r)} = ₂T^{(r)} + ₂T^{(r−1)} Ẽ_{N−1,N−1} + [₂T^{(r−1)}, Ẽ_{N−2,N−1}]` in `Q`.
    pub relation: bool,
    /// `[E_{N,N−1}, ₁T_{i2;1}^{(r)}] = ₂T_{i2;1}^{(r−1)}` in `Q`.
    pub ecommute: bool,
}

impl Subregular {
    /// Both truncation identities for `i = 1, 2` and `1 ≤ r ≤ N − 1`; needs `N ≥ 4`.
    pub fn recursion_checks(&self) -> Result<Vec<RecursionCheck>> {
        let n = self.n;
        if n < 4 {
            return Err(Error::Validation(format!("the truncation identities need N >= 4, got {n}")));
        }
        let alg = self.algebra();
        let p = self.bk.pyramid();
        let e_last = p.modified_gen(alg, n - 1, n - 1)?;
        let e_up = p.modified_gen(alg, n - 2, n - 1)?;
        let cases: Vec<(usize, usize)> = (1..=2).flat_map(|i| (1..n).map(move |r| (i, r))).collect();
        cases
            .into_par_iter()
            .map(|(i, r)| {
                let t1 = self.bk.truncated_t(1, i, 2, 1, r)?.value;
                let t2 = self.bk.truncated_t(2, i, 2, 1, r)?.value;
                let t2m = self.bk.truncated_t(2, i, 2, 1, r - 1)?.value;
                let rhs = t2.try_add(&t2m.try_mul(&e_last)?)?.try_add(&t2m.commutator(&e_up)?)?;
                let relation = self.space.element(&t1.try_sub(&rhs)?, &[])?.is_zero();
                let ad = self
                    .space
                    .ad_action(GenIdx::new(n, n - 1), &self.space.element(&t1, &[])?)?;
                let ecommute = ad.try_sub(&self.space.element(&t2m, &[])?)?.is_zero();
                Ok(RecursionCheck { i, r, relation, ecommute })
            })
            .collect()
    }

    /// Every `ₖT` with `r ≥ 1` that enters the vectors `ṽ_i` or the truncation identities.
    pub fn t_elements_in_use(&self, t12: T12Exponent) -> Result<Vec<TGenerator>> {
        let n = self.n;
        let mut keys = Vec::new();
        for j in 1..n.saturating_sub(1) {
            for i in 0..j {
                keys.push((i + 1, 2, j - i));
            }
        }
        for i in 0..n.saturating_sub(2) {
            let e = t12.exponent(n, i);
            if e > 0 {
                keys.push((i + 1, 1, e));
            }
        }
        if n >= 4 {
            for i in 1..=2 {
                for r in 1..n {
                    keys.push((1, i, r));
                    keys.push((2, i, r));
                }
            }
        }
        keys.sort_unstable();
        keys.dedup();
        keys.into_iter()
            .map(|(k, i, r)| self.bk.truncated_t(k, i, 2, 1, r))
            .collect()
    }
}

/// `b_M ⊂ gl_M` for the subregular pyramid with `M` blocks, embedded in `gl_N`.
pub fn truncated_borel(m: usize) -> Vec<GenIdx> {
    if m < 2 {
        return Vec::new();
    }
    subregular_b(m)
}

fn is_l(g: GenIdx) -> bool {
    g == E21 || g == E11
}

/// Terms whose monomial uses only `E_{2,1}` and `E_{1,1}` (the unit included).
pub fn l_constant_part(x: &AlgebraElement) -> AlgebraElement {
    x.filter_terms(|m| x.factors(m).iter().all(|(g, _)| is_l(*g)))
}

/// `(asymptotically linear part, asymptotically ℓ-linear part)` of `x`: the ℏ-constant
/// terms of PBW degree one, and the ℏ-constant terms `y·u` with `y ∈ b` a single
/// generator and `u` a nonempty monomial in `E_{2,1}, E_{1,1}`.
pub fn asymptotic_parts(x: &AlgebraElement) -> (AlgebraElement, AlgebraElement) {
    let n = x.n();
    let b = subregular_b(n);
    let flat = x.hbar_coefficient(0);
    let linear = flat.filter_terms(|m| m.pbw_degree() == 1);
    let l_linear = flat.filter_terms(|m| {
        let f = x.factors(m);
        f.len() >= 2 && f[0].1 == 1 && b.contains(&f[0].0) && f[1..].iter().all(|(g, _)| is_l(*g))
    });
    (linear, l_linear)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_vectors() {
        let s = Subregular::new(3).unwrap();
        let alg = s.algebra().clone();
        let e = |i, j| AlgebraElement::generator(&alg, i, j).unwrap();
        let v2 = s.build_tilde_v(1, T12Exponent::NMinusIMinus2).unwrap();
        let want = s
            .space()
            .vector(&[2])
            .unwrap()
            .try_sub(
                &s.space()
                    .element(&(e(2, 2) - AlgebraElement::hbar(&alg)), &[3])
                    .unwrap(),
            )
            .unwrap();
        assert_eq!(v2, want);
        assert_eq!(s.resolve_t12().unwrap(), T12Exponent::NMinusIMinus2);
        let v1 = s.tilde_v1(T12Exponent::NMinusIMinus2).unwrap();
        let want = s
            .space()
            .vector(&[1])
            .unwrap()
            .try_sub(&s.space().element(&e(1, 2), &[3]).unwrap())
            .unwrap();
        assert_eq!(v1, want);
    }

    #[test]
    fn canonical_n3() {
        let s = Subregular::new(3).unwrap();
        let tilde = s.tilde_basis().unwrap();
        assert!(!s.is_canonical(&tilde).unwrap());
        let (can, _) = s.canonicalize(&tilde).unwrap();
        assert!(s.is_canonical(&can).unwrap());
        let alg = s.algebra();
        assert_eq!(
            can.coefficient(2, 3),
            -AlgebraElement::generator(alg, 2, 2).unwrap()
        );
        let (again, tr) = s.canonicalize(&can).unwrap();
        assert_eq!(again.vectors, can.vectors);
        assert!(tr.entries.iter().flatten().all(AlgebraElement::is_zero));
    }

    #[test]
    fn filters() {
        let alg = Algebra::new(GeneratorOrder::canonical_subregular(4).unwrap());
        let e = |i, j| AlgebraElement::generator(&alg, i, j).unwrap();
        let x = &(&e(2, 1) * &e(1, 1)) + &e(1, 2);
        assert_eq!(l_constant_part(&x), &e(2, 1) * &e(1, 1));
        let h = AlgebraElement::hbar(&alg);
        assert_eq!(l_constant_part(&h), h);
        let (lin, llin) = asymptotic_parts(&(&h * &e(1, 2)));
        assert!(lin.is_zero() && llin.is_zero());
        let y = &(&e(1, 3) * &e(2, 1)) + &e(2, 4);
        let (lin, llin) = asymptotic_parts(&y);
        assert_eq!(lin, e(2, 4));
        assert_eq!(llin, &e(1, 3) * &e(2, 1));
    }
}
