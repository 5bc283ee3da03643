//! The quotients `X/m^ψ` for `X = U_ℏ(g) ⊗ (C^N)^{⊗t}`, in reduced form, together with
//! the left `g`-action, the adjoint `m`-action, the left `b`-quotient and fusion.
//!
//! A reduced element stores pairs `(u, (k_1, …, k_t))` meaning `u ⊗ v_{k_1} ⊗ … ⊗ v_{k_t}`
//! with `u` a PBW monomial free of `m`-generators.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::algebra::json::{mono_from_json, mono_to_json, poly_from_json, poly_to_json};
use crate::algebra::{add_into, Algebra, AlgebraElement, GenIdx, HbarPoly, Monomial, Q};
use crate::error::{Error, Result};
use crate::pyramid::Pyramid;

pub type Slots = SmallVec<[u8; 4]>;
type Key = (Monomial, Slots);
type Raw = HashMap<Key, HbarPoly>;

const TERM_BUDGET: u64 = 10_000_000;

/// Order in which `m`-tails are peeled during reduction. Both give the same result.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Rewrite every reducible term once per round, merging between rounds.
    Rounds,
    /// Fully reduce one term before looking at the next.
    DepthFirst,
}

/// `U_ℏ(g)/m^ψ` data for one pyramid: the ambient algebra (with `m` ranked last),
/// `ψ` by generator and, for subregular pyramids, membership in `b`.
pub struct QuotientSpace {
    pyramid: Pyramid,
    alg: Arc<Algebra>,
    psi: Vec<Option<Q>>,
    in_b: Option<Vec<bool>>,
}

impl fmt::Debug for QuotientSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuotientSpace({})", self.pyramid)
    }
}

impl QuotientSpace {
    pub fn new(pyramid: Pyramid) -> Result<Arc<Self>> {
        let alg = Algebra::new(pyramid.default_order());
        Self::with_algebra(pyramid, alg)
    }

    pub fn with_algebra(pyramid: Pyramid, alg: Arc<Algebra>) -> Result<Arc<Self>> {
        let n = pyramid.n_blocks();
        if alg.n() != n {
            return Err(Error::Structural(format!("gl_{} vs {n} blocks", alg.n())));
        }
        let order = alg.order();
        let max_p = pyramid.p_basis().iter().map(|&g| order.rank(g)).max();
        let min_m = pyramid.m_basis().iter().map(|&g| order.rank(g)).min();
        if let (Some(p), Some(m)) = (max_p, min_m) {
            if p > m {
                return Err(Error::Structural(
                    "reduction needs every m-generator ranked after p".into(),
                ));
            }
        }
        let psi_map = pyramid.psi();
        let mut psi = vec![None; n * n];
        for g in psi_map.domain() {
            psi[alg_id(g, n)] = Some(psi_map.value(g)?.clone());
        }
        let in_b = if pyramid.is_subregular() {
            check_subregular_decomposition(&pyramid)?;
            let mut v = vec![false; n * n];
            for g in crate::algebra::subregular_b(n) {
                v[alg_id(g, n)] = true;
            }
            let b_max = crate::algebra::subregular_b(n).iter().map(|&g| order.rank(g)).max();
            let rest_min = pyramid
                .p_basis()
                .into_iter()
                .filter(|&g| !v[alg_id(g, n)])
                .map(|g| order.rank(g))
                .min();
            if let (Some(b), Some(r)) = (b_max, rest_min) {
                if b > r {
                    return Err(Error::Structural("b-quotient needs b ranked first".into()));
                }
            }
            Some(v)
        } else {
            None
        };
        Ok(Arc::new(Self {
            pyramid,
            alg,
            psi,
            in_b,
        }))
    }

    pub fn pyramid(&self) -> &Pyramid {
        &self.pyramid
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn n(&self) -> usize {
        self.alg.n()
    }

    fn psi_id(&self, id: u16) -> Option<&Q> {
        self.psi[id as usize].as_ref()
    }

    /// Applies `E_{p,q}` to slot `a`: `E_{p,q} v_k = δ_{qk} v_p`.
    fn slot_action(g: GenIdx, slots: &Slots, a: usize) -> Option<Slots> {
        (slots[a] as usize == g.j).then(|| {
            let mut s = slots.clone();
            s[a] = g.i as u8;
            s
        })
    }

    fn check_slots(&self, slots: &[usize]) -> Result<Slots> {
        let n = self.n();
        slots
            .iter()
            .map(|&k| {
                if k == 0 || k > n {
                    Err(Error::Validation(format!("slot index {k} outside 1..={n}")))
                } else {
                    Ok(k as u8)
                }
            })
            .collect()
    }

    /// `1 ⊗ v_{k_1} ⊗ … ⊗ v_{k_t}`.
    pub fn vector(self: &Arc<Self>, slots: &[usize]) -> Result<ModuleElement> {
        let s = self.check_slots(slots)?;
        let mut terms = BTreeMap::new();
        terms.insert((Monomial::unit(), s), HbarPoly::one());
        Ok(ModuleElement {
            space: self.clone(),
            t: slots.len(),
            b_reduced: false,
            terms,
        })
    }

    /// `x ⊗ v_{k_1} ⊗ … ⊗ v_{k_t}`, reduced.
    pub fn element(self: &Arc<Self>, x: &AlgebraElement, slots: &[usize]) -> Result<ModuleElement> {
        self.check_alg(x)?;
        let s = self.check_slots(slots)?;
        let raw = x
            .terms()
            .iter()
            .map(|(m, c)| ((m.clone(), s.clone()), c.clone()));
        self.reduce_raw(slots.len(), raw)
    }

    fn check_alg(&self, x: &AlgebraElement) -> Result<()> {
        if self.alg.compatible(x.algebra()) {
            Ok(())
        } else {
            Err(Error::Structural("element from a different ambient algebra".into()))
        }
    }

    /// Reduces an arbitrary combination of `u ⊗ v` modulo `X·m^ψ`.
    pub fn reduce_raw(
        self: &Arc<Self>,
        t: usize,
        raw: impl IntoIterator<Item = (Key, HbarPoly)>,
    ) -> Result<ModuleElement> {
        self.reduce_raw_with(t, raw, Strategy::Rounds)
    }

    pub fn reduce_raw_with(
        self: &Arc<Self>,
        t: usize,
        raw: impl IntoIterator<Item = (Key, HbarPoly)>,
        strategy: Strategy,
    ) -> Result<ModuleElement> {
        let mut work: Raw = HashMap::new();
        for (k, c) in raw {
            if k.1.len() != t {
                return Err(Error::Structural(format!("tensor rank {} vs {t}", k.1.len())));
            }
            add_into(&mut work, k, &c);
        }
        let m_count = work
            .keys()
            .map(|(m, _)| {
                m.ids()
                    .filter(|&(g, _)| self.psi_id(g).is_some())
                    .map(|(_, e)| e as u64)
                    .sum::<u64>()
            })
            .max()
            .unwrap_or(0);
        let budget = (m_count + 1) * TERM_BUDGET;
        let mut steps = 0u64;
        let mut done: Raw = HashMap::new();
        match strategy {
            Strategy::Rounds => {
                while !work.is_empty() {
                    let mut next: Raw = HashMap::new();
                    for (key, c) in work {
                        match self.peel(&key) {
                            None => add_into(&mut done, key, &c),
                            Some(out) => {
                                steps += 1;
                                if steps > budget {
                                    return Err(Error::ReductionBudget(steps));
                                }
                                for (k2, c2) in out {
                                    add_into(&mut next, k2, &(&c * &c2));
                                }
                            }
                        }
                    }
                    work = next;
                }
            }
            Strategy::DepthFirst => {
                let mut stack: Vec<(Key, HbarPoly)> = work.into_iter().collect();
                stack.sort_by(|a, b| b.0.cmp(&a.0));
                while let Some((key, c)) = stack.pop() {
                    match self.peel(&key) {
                        None => add_into(&mut done, key, &c),
                        Some(out) => {
                            steps += 1;
                            if steps > budget {
                                return Err(Error::ReductionBudget(steps));
                            }
                            for (k2, c2) in out {
                                stack.push((k2, &c * &c2));
                            }
                        }
                    }
                }
            }
        }
        Ok(ModuleElement {
            space: self.clone(),
            t,
            b_reduced: false,
            terms: done.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        })
    }

    /// One rewrite `(uξ) ⊗ v → ψ(ξ) u ⊗ v + ℏ Σ_a u ⊗ (ξ on slot a)`, or `None` if
    /// the monomial has no trailing `m`-generator.
    fn peel(&self, key: &Key) -> Option<Vec<(Key, HbarPoly)>> {
        let (m, slots) = key;
        let last = m.last_id()?;
        let psi = self.psi_id(last)?;
        let (u, _) = m.pop_last();
        let g = GenIdx::from_id(last, self.n());
        let mut out = Vec::new();
        if !psi.is_zero() {
            out.push(((u.clone(), slots.clone()), HbarPoly::constant(psi.clone())));
        }
        for a in 0..slots.len() {
            if let Some(s) = Self::slot_action(g, slots, a) {
                out.push(((u.clone(), s), HbarPoly::hbar()));
            }
        }
        Some(out)
    }

    /// Left multiplication by `x`, then reduction.
    pub fn act_left(self: &Arc<Self>, x: &AlgebraElement, v: &ModuleElement) -> Result<ModuleElement> {
        self.check_alg(x)?;
        self.check_elem(v)?;
        let mut raw: Raw = HashMap::new();
        for (xm, xc) in x.terms() {
            for ((u, s), c) in &v.terms {
                let c = xc * c;
                for (m, c2) in self.alg.mono_mul(xm, u) {
                    add_into(&mut raw, (m, s.clone()), &(&c * &c2));
                }
            }
        }
        self.reduce_raw(v.t, raw)
    }

    /// `ad_ξ` for `ξ ∈ m`: `[ξ, u] ⊗ v + u ⊗ ξ·v`, reduced.
    pub fn ad_action(self: &Arc<Self>, xi: GenIdx, v: &ModuleElement) -> Result<ModuleElement> {
        self.check_elem(v)?;
        let n = self.n();
        if xi.i == 0 || xi.j == 0 || xi.i > n || xi.j > n || !self.pyramid.in_m(xi) {
            return Err(Error::Validation(format!("{xi} is not in m")));
        }
        let x = AlgebraElement::generator(&self.alg, xi.i, xi.j)?;
        let mut raw: Raw = HashMap::new();
        for ((u, s), c) in &v.terms {
            let um = AlgebraElement::from_terms(&self.alg, [(u.clone(), HbarPoly::one())]);
            for (m, c2) in x.commutator(&um)?.into_terms() {
                add_into(&mut raw, (m, s.clone()), &(c * &c2));
            }
            for a in 0..s.len() {
                if let Some(s2) = Self::slot_action(xi, s, a) {
                    add_into(&mut raw, (u.clone(), s2), c);
                }
            }
        }
        self.reduce_raw(v.t, raw)
    }

    /// Checks `ad_ξ v = 0` for every basis `ξ ∈ m`.
    pub fn is_whittaker(self: &Arc<Self>, v: &ModuleElement) -> Result<WhittakerCheck> {
        let basis = self.pyramid.m_basis();
        let results: Vec<(GenIdx, ModuleElement)> = basis
            .par_iter()
            .map(|&xi| self.ad_action(xi, v).map(|r| (xi, r)))
            .collect::<Result<_>>()?;
        let per_generator = results.iter().map(|(g, r)| (*g, r.is_zero())).collect();
        let witness = results.into_iter().find(|(_, r)| !r.is_zero());
        Ok(WhittakerCheck {
            per_generator,
            witness,
        })
    }

    /// Deletes every term whose monomial starts with a `b`-generator.
    pub fn reduce_mod_b_left(&self, v: &ModuleElement) -> Result<ModuleElement> {
        let in_b = self
            .in_b
            .as_ref()
            .ok_or_else(|| Error::Unsupported("b-quotient is defined for subregular pyramids".into()))?;
        let mut out = v.clone();
        out.terms
            .retain(|(m, _), _| m.first_id().map_or(true, |g| !in_b[g as usize]));
        out.b_reduced = true;
        Ok(out)
    }

    pub fn in_b(&self, g: GenIdx) -> bool {
        self.in_b
            .as_ref()
            .is_some_and(|v| v[alg_id(g, self.n())])
    }

    /// Right action of `y`: `(u ⊗ v)·E = uE ⊗ v − ℏ Σ_a u ⊗ (E on slot a)`, applied
    /// letter by letter on the raw representative, reduced at the end.
    pub fn right_act(self: &Arc<Self>, v: &ModuleElement, y: &AlgebraElement) -> Result<ModuleElement> {
        self.check_alg(y)?;
        self.check_elem(v)?;
        let raw = self.transport(v, y, &Slots::new());
        self.reduce_raw(v.t, raw)
    }

    fn transport(&self, v: &ModuleElement, y: &AlgebraElement, tail: &Slots) -> Raw {
        let mut acc: Raw = HashMap::new();
        let n = self.n();
        for (ym, yc) in y.terms() {
            let mut cur: Raw = v.terms.iter().map(|(k, c)| (k.clone(), c * yc)).collect();
            for g in ym.letters() {
                let gi = GenIdx::from_id(g, n);
                let mut next: Raw = HashMap::new();
                for ((u, s), c) in &cur {
                    for (m, c2) in self.alg.mono_gen(u, g).iter() {
                        add_into(&mut next, (m.clone(), s.clone()), &(c * c2));
                    }
                    let mc = -&(c * &HbarPoly::hbar());
                    for a in 0..s.len() {
                        if let Some(s2) = Self::slot_action(gi, s, a) {
                            add_into(&mut next, (u.clone(), s2), &mc);
                        }
                    }
                }
                cur = next;
            }
            for ((u, mut s), c) in cur {
                s.extend_from_slice(tail);
                add_into(&mut acc, (u, s), &c);
            }
        }
        acc
    }

    /// `[x] ⊗ [y] ↦ [x ⊗ y]`: the `U`-part of each term of `b` is transported through
    /// the slots of `a`, slot lists are concatenated. `b` should be Whittaker.
    pub fn fuse(self: &Arc<Self>, a: &ModuleElement, b: &ModuleElement) -> Result<ModuleElement> {
        self.check_elem(a)?;
        self.check_elem(b)?;
        let parts: Vec<Raw> = b
            .terms
            .par_iter()
            .map(|((y, w), c)| {
                let ye = AlgebraElement::from_terms(&self.alg, [(y.clone(), c.clone())]);
                self.transport(a, &ye, w)
            })
            .collect();
        let mut raw: Raw = HashMap::new();
        for p in parts {
            for (k, c) in p {
                add_into(&mut raw, k, &c);
            }
        }
        self.reduce_raw(a.t + b.t, raw)
    }

    fn check_elem(&self, v: &ModuleElement) -> Result<()> {
        if std::ptr::eq(self, &*v.space) || self.alg.compatible(&v.space.alg) {
            Ok(())
        } else {
            Err(Error::Structural("module element from a different quotient".into()))
        }
    }

    pub fn from_json(self: &Arc<Self>, j: &ModuleJson) -> Result<ModuleElement> {
        if j.n != self.n() {
            return Err(Error::Structural(format!("N={} vs {}", j.n, self.n())));
        }
        let mut raw: Raw = HashMap::new();
        for term in &j.terms {
            if term.slots.len() != j.t {
                return Err(Error::Validation("slot list length differs from t".into()));
            }
            let s = self.check_slots(&term.slots)?;
            let c = poly_from_json(&term.coeff)?;
            for (m, c2) in mono_from_json(&self.alg, &term.mono)?.into_terms() {
                add_into(&mut raw, (m, s.clone()), &(&c * &c2));
            }
        }
        self.reduce_raw(j.t, raw)
    }
}

fn alg_id(g: GenIdx, n: usize) -> usize {
    (g.i - 1) * n + (g.j - 1)
}

/// `b`, `l` and the last column must split a basis of `p`.
fn check_subregular_decomposition(p: &Pyramid) -> Result<()> {
    let n = p.n_blocks();
    let mut parts: Vec<GenIdx> = crate::algebra::subregular_b(n);
    parts.push(GenIdx::new(2, 1));
    parts.push(GenIdx::new(1, 1));
    parts.extend((1..=n).map(|i| GenIdx::new(i, n)));
    let mut sorted = parts.clone();
    sorted.sort();
    sorted.dedup();
    let mut pb = p.p_basis();
    pb.sort();
    if sorted.len() != parts.len() || sorted != pb || pb.len() != (n * n + n + 2) / 2 {
        return Err(Error::Consistency(format!(
            "b + l + last column does not split p for N={n}"
        )));
    }
    Ok(())
}

/// Outcome of a Whittaker test.
#[derive(Clone, Debug)]
pub struct WhittakerCheck {
    pub per_generator: Vec<(GenIdx, bool)>,
    /// First generator with a nonzero residue, if any.
    pub witness: Option<(GenIdx, ModuleElement)>,
}

impl WhittakerCheck {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }

    pub fn into_result(self) -> Result<()> {
        match self.witness {
            None => Ok(()),
            Some((g, r)) => Err(Error::NotWhittaker {
                generator: g.to_string(),
                residue: r.to_string(),
            }),
        }
    }
}

/// An element of `X/m^ψ` in reduced form (optionally also reduced modulo left `b`).
#[derive(Clone)]
pub struct ModuleElement {
    space: Arc<QuotientSpace>,
    t: usize,
    b_reduced: bool,
    terms: BTreeMap<Key, HbarPoly>,
}

impl ModuleElement {
    pub fn zero(space: &Arc<QuotientSpace>, t: usize) -> Self {
        Self {
            space: space.clone(),
            t,
            b_reduced: false,
            terms: BTreeMap::new(),
        }
    }

    pub fn space(&self) -> &Arc<QuotientSpace> {
        &self.space
    }

    pub fn rank(&self) -> usize {
        self.t
    }

    pub fn is_b_reduced(&self) -> bool {
        self.b_reduced
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

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &[u8], &HbarPoly)> {
        self.terms.iter().map(|((m, s), c)| (m, s.as_slice(), c))
    }

    /// The `U`-coefficient of `v_{k_1} ⊗ … ⊗ v_{k_t}`.
    pub fn coefficient(&self, slots: &[usize]) -> AlgebraElement {
        let alg = self.space.algebra();
        AlgebraElement::from_terms(
            alg,
            self.terms
                .iter()
                .filter(|((_, s), _)| s.iter().map(|&k| k as usize).eq(slots.iter().copied()))
                .map(|((m, _), c)| (m.clone(), c.clone())),
        )
    }

    /// Distinct slot tuples carrying a nonzero coefficient.
    pub fn slot_support(&self) -> Vec<Vec<usize>> {
        let mut v: Vec<Vec<usize>> = self
            .terms
            .keys()
            .map(|(_, s)| s.iter().map(|&k| k as usize).collect())
            .collect();
        v.sort();
        v.dedup();
        v
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.t != other.t {
            return Err(Error::Structural(format!("tensor ranks {} and {}", self.t, other.t)));
        }
        if !self.space.alg.compatible(&other.space.alg) {
            return Err(Error::Structural("different quotients".into()));
        }
        Ok(())
    }

    fn combine(&self, other: &Self, sign: i64) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        out.b_reduced = self.b_reduced && other.b_reduced;
        let s = HbarPoly::int(sign);
        for (k, c) in &other.terms {
            let c = c * &s;
            match out.terms.get_mut(k) {
                Some(x) => {
                    *x += &c;
                    if x.is_zero() {
                        out.terms.remove(k);
                    }
                }
                None => {
                    out.terms.insert(k.clone(), c);
                }
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.combine(other, 1)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, -1)
    }

    pub fn scale(&self, c: &HbarPoly) -> Self {
        let mut out = self.clone();
        out.terms = self
            .terms
            .iter()
            .map(|(k, x)| (k.clone(), x * c))
            .filter(|(_, x)| !x.is_zero())
            .collect();
        out
    }

    /// Substitutes a value for ℏ.
    pub fn eval_hbar(&self, at: &Q) -> Self {
        let mut out = self.clone();
        out.terms = self
            .terms
            .iter()
            .map(|(k, c)| (k.clone(), HbarPoly::constant(c.eval(at))))
            .filter(|(_, x)| !x.is_zero())
            .collect();
        out
    }

    pub fn to_json(&self) -> ModuleJson {
        ModuleJson {
            n: self.space.n(),
            t: self.t,
            terms: self
                .terms
                .iter()
                .map(|((m, s), c)| ModuleTermJson {
                    mono: mono_to_json(self.space.algebra(), m),
                    slots: s.iter().map(|&k| k as usize).collect(),
                    coeff: poly_to_json(c),
                })
                .collect(),
        }
    }
}

impl PartialEq for ModuleElement {
    fn eq(&self, other: &Self) -> bool {
        self.t == other.t
            && self.space.alg.compatible(&other.space.alg)
            && self.terms == other.terms
    }
}

impl fmt::Debug for ModuleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModuleElement(t={}, {})", self.t, self)
    }
}

impl fmt::Display for ModuleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let alg = self.space.algebra();
        for (k, ((m, s), c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let u = AlgebraElement::from_terms(alg, [(m.clone(), c.clone())]);
            write!(f, "{u}")?;
            for slot in s {
                write!(f, "⊗v{slot}")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleTermJson {
    pub mono: Vec<[usize; 3]>,
    pub slots: Vec<usize>,
    pub coeff: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleJson {
    #[serde(rename = "N")]
    pub n: usize,
    pub t: usize,
    pub terms: Vec<ModuleTermJson>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space(n: usize) -> Arc<QuotientSpace> {
        QuotientSpace::new(Pyramid::subregular(n).unwrap()).unwrap()
    }

    fn gen(sp: &Arc<QuotientSpace>, i: usize, j: usize) -> AlgebraElement {
        AlgebraElement::generator(sp.algebra(), i, j).unwrap()
    }

    #[test]
    fn basic_rewrites() {
        let sp = space(3);
        let v1 = sp.vector(&[1]).unwrap();
        assert_eq!(sp.element(&gen(&sp, 3, 2), &[1]).unwrap(), v1);
        let r = sp.element(&gen(&sp, 3, 1), &[1]).unwrap();
        assert_eq!(r, sp.vector(&[3]).unwrap().scale(&HbarPoly::hbar()));
        let left = sp.act_left(&gen(&sp, 3, 2), &sp.vector(&[2]).unwrap()).unwrap();
        let want = sp
            .vector(&[2])
            .unwrap()
            .try_add(&sp.vector(&[3]).unwrap().scale(&HbarPoly::hbar()))
            .unwrap();
        assert_eq!(left, want);
    }

    #[test]
    fn whittaker_witness() {
        let sp = space(3);
        let v1 = sp.vector(&[1]).unwrap();
        assert_eq!(sp.ad_action(GenIdx::new(3, 1), &v1).unwrap(), sp.vector(&[3]).unwrap());
        let check = sp.is_whittaker(&v1).unwrap();
        assert!(!check.passed());
        assert_eq!(check.witness.unwrap().0, GenIdx::new(3, 1));
        for n in 2..=6 {
            let sp = space(n);
            assert!(sp.is_whittaker(&sp.vector(&[n]).unwrap()).unwrap().passed());
        }
        assert!(sp.ad_action(GenIdx::new(1, 2), &v1).is_err());
    }

    #[test]
    fn b_reduction() {
        let sp = space(4);
        let x = &gen(&sp, 1, 2) * &gen(&sp, 3, 4);
        let m = sp.element(&x, &[]).unwrap();
        assert!(sp.reduce_mod_b_left(&m).unwrap().is_zero());
        let y = sp.element(&(&gen(&sp, 2, 1) + &gen(&sp, 2, 3)), &[2]).unwrap();
        let once = sp.reduce_mod_b_left(&y).unwrap();
        assert_eq!(sp.reduce_mod_b_left(&once).unwrap(), once);
        assert_eq!(once, sp.element(&gen(&sp, 2, 1), &[2]).unwrap());
        let general = QuotientSpace::new("1,2".parse().unwrap()).unwrap();
        assert!(general.reduce_mod_b_left(&general.vector(&[1]).unwrap()).is_err());
    }

    #[test]
    fn transport_one_step() {
        let sp = space(3);
        // (E_{2,2} ⊗ v_1)·E_{2,1} = E_{2,2}E_{2,1} ⊗ v_1 − ℏ E_{2,2} ⊗ v_2
        let x = sp.element(&gen(&sp, 2, 2), &[1]).unwrap();
        let got = sp.right_act(&x, &gen(&sp, 2, 1)).unwrap();
        let want = sp
            .element(&(&gen(&sp, 2, 2) * &gen(&sp, 2, 1)), &[1])
            .unwrap()
            .try_sub(&sp.element(&gen(&sp, 2, 2), &[2]).unwrap().scale(&HbarPoly::hbar()))
            .unwrap();
        assert_eq!(got, want);
        let f = sp.fuse(&sp.vector(&[1]).unwrap(), &sp.vector(&[2]).unwrap()).unwrap();
        assert_eq!(f, sp.vector(&[1, 2]).unwrap());
    }

    #[test]
    fn strategies_agree() {
        let sp = space(4);
        let x = AlgebraElement::word(
            sp.algebra(),
            &[GenIdx::new(4, 1), GenIdx::new(2, 2), GenIdx::new(4, 3), GenIdx::new(3, 2)],
        );
        let raw: Vec<_> = x
            .terms()
            .iter()
            .map(|(m, c)| ((m.clone(), Slots::from_slice(&[1, 2])), c.clone()))
            .collect();
        let a = sp.reduce_raw_with(2, raw.clone(), Strategy::Rounds).unwrap();
        let b = sp.reduce_raw_with(2, raw, Strategy::DepthFirst).unwrap();
        assert_eq!(a, b);
    }
}
