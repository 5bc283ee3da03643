use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use dashmap::DashMap;
use num_traits::One;

use super::generator::{GenIdx, GeneratorOrder};
use super::hbar::{HbarPoly, Q};
use super::monomial::Monomial;
use crate::error::{Error, Result};

type Product = Arc<[(Monomial, HbarPoly)]>;

/// The ambient algebra `U_ℏ(gl_N)` with a fixed PBW generator order.
///
/// Holds a memo table for `monomial · generator` normal forms; it is safe to
/// share across threads.
pub struct Algebra {
    n: usize,
    order: GeneratorOrder,
    cache: DashMap<(Monomial, u16), Product>,
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Algebra")
            .field("n", &self.n)
            .field("order", &self.order.fingerprint())
            .finish()
    }
}

impl Algebra {
    pub fn new(order: GeneratorOrder) -> Arc<Self> {
        Arc::new(Self {
            n: order.n(),
            order,
            cache: DashMap::new(),
        })
    }

    pub fn lex(n: usize) -> Arc<Self> {
        Self::new(GeneratorOrder::lex(n))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> &GeneratorOrder {
        &self.order
    }

    pub fn compatible(&self, other: &Algebra) -> bool {
        std::ptr::eq(self, other) || (self.n == other.n && self.order == other.order)
    }

    pub(crate) fn id(&self, g: GenIdx) -> u16 {
        g.id(self.n)
    }

    pub(crate) fn gen_of(&self, id: u16) -> GenIdx {
        GenIdx::from_id(id, self.n)
    }

    pub fn factors(&self, m: &Monomial) -> Vec<(GenIdx, u32)> {
        m.ids().map(|(g, e)| (self.gen_of(g), e as u32)).collect()
    }

    /// Builds the normal-ordered monomial from `(generator, exponent)` pairs given in
    /// ambient order. Returns `None` if the factors are not strictly increasing.
    pub fn monomial(&self, factors: &[(GenIdx, u32)]) -> Option<Monomial> {
        let mut out = Monomial::unit();
        let mut last: Option<u32> = None;
        for &(g, e) in factors {
            if g.i == 0 || g.j == 0 || g.i > self.n || g.j > self.n || e == 0 {
                return None;
            }
            let r = self.order.rank(g);
            if last.is_some_and(|l| l >= r) {
                return None;
            }
            last = Some(r);
            out.0.push((self.id(g), e as u16));
        }
        Some(out)
    }

    /// Normal form of `m · g`.
    pub(crate) fn mono_gen(&self, m: &Monomial, g: u16) -> Product {
        let rg = self.order.rank_id(g);
        match m.last_id() {
            None => return Arc::from(vec![(Monomial::single(g), HbarPoly::one())]),
            Some(last) if self.order.rank_id(last) <= rg => {
                return Arc::from(vec![(m.push_sorted(g), HbarPoly::one())]);
            }
            _ => {}
        }
        let key = (m.clone(), g);
        if let Some(hit) = self.cache.get(&key).map(|v| v.clone()) {
            return hit;
        }
        // m = m' x with x > g:  m' x g = (m' g) x + ℏ m' [x, g]
        let (rest, x) = m.pop_last();
        let mut acc: HashMap<Monomial, HbarPoly> = HashMap::new();
        for (mono, c) in self.mono_gen(&rest, g).iter() {
            for (mono2, c2) in self.mono_gen(mono, x).iter() {
                add_into(&mut acc, mono2.clone(), &(c * c2));
            }
        }
        let gx = self.gen_of(x);
        let gg = self.gen_of(g);
        for (h, s) in gx.bracket(gg) {
            let coef = HbarPoly::monomial(super::hbar::q(s), 1);
            for (mono, c) in self.mono_gen(&rest, self.id(h)).iter() {
                add_into(&mut acc, mono.clone(), &(c * &coef));
            }
        }
        let mut v: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        let out: Product = Arc::from(v);
        self.cache.insert(key, out.clone());
        out
    }

    /// Normal form of `a · b` for two monomials.
    pub(crate) fn mono_mul(&self, a: &Monomial, b: &Monomial) -> Vec<(Monomial, HbarPoly)> {
        let mut cur: Vec<(Monomial, HbarPoly)> = vec![(a.clone(), HbarPoly::one())];
        for g in b.letters() {
            let mut next: HashMap<Monomial, HbarPoly> = HashMap::new();
            for (mono, c) in &cur {
                for (m2, c2) in self.mono_gen(mono, g).iter() {
                    add_into(&mut next, m2.clone(), &(c * c2));
                }
            }
            cur = next.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        }
        cur
    }

    /// Normal form of a word of generators (in any order).
    pub(crate) fn word(&self, letters: &[u16]) -> Vec<(Monomial, HbarPoly)> {
        let mut cur: Vec<(Monomial, HbarPoly)> = vec![(Monomial::unit(), HbarPoly::one())];
        for &g in letters {
            let mut next: HashMap<Monomial, HbarPoly> = HashMap::new();
            for (mono, c) in &cur {
                for (m2, c2) in self.mono_gen(mono, g).iter() {
                    add_into(&mut next, m2.clone(), &(c * c2));
                }
            }
            cur = next.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        }
        cur
    }

    pub fn cache_len(&self) -> usize {
        self.cache.len()
    }
}

pub(crate) fn add_into<K: std::hash::Hash + Eq>(
    acc: &mut HashMap<K, HbarPoly>,
    key: K,
    c: &HbarPoly,
) {
    if c.is_zero() {
        return;
    }
    match acc.entry(key) {
        std::collections::hash_map::Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
        std::collections::hash_map::Entry::Vacant(e) => {
            e.insert(c.clone());
        }
    }
}

fn add_into_btree(acc: &mut BTreeMap<Monomial, HbarPoly>, key: Monomial, c: &HbarPoly) {
    if c.is_zero() {
        return;
    }
    match acc.entry(key) {
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c.clone());
        }
    }
}

/// An element of `U_ℏ(gl_N)` in PBW normal form: a finite map from ordered
/// monomials to nonzero ℏ-polynomials.
#[derive(Clone)]
pub struct AlgebraElement {
    alg: Arc<Algebra>,
    terms: BTreeMap<Monomial, HbarPoly>,
}

impl AlgebraElement {
    pub fn zero(alg: &Arc<Algebra>) -> Self {
        Self {
            alg: alg.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(alg: &Arc<Algebra>) -> Self {
        Self::scalar(alg, HbarPoly::one())
    }

    pub fn scalar(alg: &Arc<Algebra>, c: HbarPoly) -> Self {
        let mut e = Self::zero(alg);
        add_into_btree(&mut e.terms, Monomial::unit(), &c);
        e
    }

    pub fn hbar(alg: &Arc<Algebra>) -> Self {
        Self::scalar(alg, HbarPoly::hbar())
    }

    /// The generator `E_{i,j}`.
    pub fn generator(alg: &Arc<Algebra>, i: usize, j: usize) -> Result<Self> {
        let n = alg.n();
        if i == 0 || j == 0 || i > n || j > n {
            return Err(Error::Validation(format!("E_{{{i},{j}}} out of range for N={n}")));
        }
        let mut e = Self::zero(alg);
        e.terms
            .insert(Monomial::single(alg.id(GenIdx::new(i, j))), HbarPoly::one());
        Ok(e)
    }

    pub(crate) fn gen(alg: &Arc<Algebra>, g: GenIdx) -> Self {
        Self::generator(alg, g.i, g.j).expect("generator in range")
    }

    /// Collects terms, merging duplicates and dropping zeros.
    pub fn from_terms(
        alg: &Arc<Algebra>,
        terms: impl IntoIterator<Item = (Monomial, HbarPoly)>,
    ) -> Self {
        let mut e = Self::zero(alg);
        for (m, c) in terms {
            add_into_btree(&mut e.terms, m, &c);
        }
        e
    }

    /// Product of generators in the given (arbitrary) order, normal-ordered.
    pub fn word(alg: &Arc<Algebra>, letters: &[GenIdx]) -> Self {
        let ids: Vec<u16> = letters.iter().map(|&g| alg.id(g)).collect();
        Self::from_terms(alg, alg.word(&ids))
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn n(&self) -> usize {
        self.alg.n()
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, HbarPoly> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, HbarPoly> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True for the unit element `1`.
    pub fn is_one_like(&self) -> bool {
        self.terms.len() == 1 && self.constant_term().is_one()
    }

    pub fn coeff(&self, m: &Monomial) -> HbarPoly {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Coefficient of the unit monomial.
    pub fn constant_term(&self) -> HbarPoly {
        self.coeff(&Monomial::unit())
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.alg.compatible(&other.alg) {
            Ok(())
        } else {
            Err(Error::Structural(format!(
                "operands from different algebras (N={} order {}, N={} order {})",
                self.alg.n(),
                self.alg.order().fingerprint(),
                other.alg.n(),
                other.alg.order().fingerprint()
            )))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            add_into_btree(&mut out.terms, m.clone(), c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            add_into_btree(&mut out.terms, m.clone(), &-c);
        }
        Ok(out)
    }

    /// PBW normal form of `self · other`.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut acc: HashMap<Monomial, HbarPoly> = HashMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let cab = ca * cb;
                for (m, c) in self.alg.mono_mul(ma, mb) {
                    add_into(&mut acc, m, &(&c * &cab));
                }
            }
        }
        Ok(Self::from_terms(&self.alg, acc))
    }

    /// Asymptotic commutator `(ab − ba)/ℏ`. A nonzero ℏ-constant part in `ab − ba`
    /// means the rewrite engine is broken and is reported as a consistency error.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        let diff = self.try_mul(other)?.try_sub(&other.try_mul(self)?)?;
        diff.div_hbar().ok_or_else(|| {
            Error::Consistency("ab − ba has a nonzero ℏ-constant part".into())
        })
    }

    /// Exact division by ℏ, `None` if some coefficient has a constant term.
    pub fn div_hbar(&self) -> Option<Self> {
        let mut out = Self::zero(&self.alg);
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), c.div_hbar()?);
        }
        Some(out)
    }

    pub fn scale(&self, c: &HbarPoly) -> Self {
        Self::from_terms(&self.alg, self.terms.iter().map(|(m, x)| (m.clone(), x * c)))
    }

    pub fn scale_q(&self, c: &Q) -> Self {
        self.scale(&HbarPoly::constant(c.clone()))
    }

    /// Substitutes a value for ℏ in every coefficient.
    pub fn eval_hbar(&self, at: &Q) -> Self {
        Self::from_terms(
            &self.alg,
            self.terms
                .iter()
                .map(|(m, c)| (m.clone(), HbarPoly::constant(c.eval(at)))),
        )
    }

    /// Keeps only the `ℏ^k` part of each coefficient (as a constant).
    pub fn hbar_coefficient(&self, k: usize) -> Self {
        Self::from_terms(
            &self.alg,
            self.terms.iter().map(|(m, c)| (m.clone(), c.take(k))),
        )
    }

    /// Keeps the terms whose monomial satisfies `keep`.
    pub fn filter_terms(&self, mut keep: impl FnMut(&Monomial) -> bool) -> Self {
        Self {
            alg: self.alg.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Re-expresses this element in the PBW basis of another generator order.
    pub fn convert(&self, target: &Arc<Algebra>) -> Result<Self> {
        if target.n() != self.n() {
            return Err(Error::Structural("order change between different N".into()));
        }
        let mut acc: HashMap<Monomial, HbarPoly> = HashMap::new();
        for (m, c) in &self.terms {
            let letters: Vec<u16> = m.letters().collect();
            for (m2, c2) in target.word(&letters) {
                add_into(&mut acc, m2, &(c * &c2));
            }
        }
        Ok(Self::from_terms(target, acc))
    }

    /// Largest PBW degree among stored monomials.
    pub fn pbw_degree(&self) -> Option<usize> {
        self.terms.keys().map(Monomial::pbw_degree).max()
    }

    /// Generators appearing in any monomial.
    pub fn support(&self) -> Vec<GenIdx> {
        let mut ids: Vec<u16> = self
            .terms
            .keys()
            .flat_map(|m| m.ids().map(|(g, _)| g))
            .collect();
        ids.sort_unstable();
        ids.dedup();
        ids.into_iter().map(|g| self.alg.gen_of(g)).collect()
    }

    pub fn factors(&self, m: &Monomial) -> Vec<(GenIdx, u32)> {
        self.alg.factors(m)
    }
}

impl PartialEq for AlgebraElement {
    fn eq(&self, other: &Self) -> bool {
        self.alg.compatible(&other.alg) && self.terms == other.terms
    }
}

impl Eq for AlgebraElement {}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgebraElement(N={}, {})", self.n(), self)
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let mono: String = self
                .alg
                .factors(m)
                .iter()
                .map(|(g, e)| {
                    if *e == 1 {
                        format!("{g}")
                    } else {
                        format!("{g}^{e}")
                    }
                })
                .collect();
            match (m.is_unit(), c.is_one()) {
                (true, _) => write!(f, "({c})")?,
                (false, true) => write!(f, "{mono}")?,
                (false, false) => write!(f, "({c}){mono}")?,
            }
        }
        Ok(())
    }
}

macro_rules! panicking_op {
    ($tr:ident, $method:ident, $imp:ident) => {
        impl $tr for &AlgebraElement {
            type Output = AlgebraElement;
            /// Panics on operands from incompatible algebras; use the `try_` form to recover.
            fn $method(self, rhs: &AlgebraElement) -> AlgebraElement {
                self.$imp(rhs).expect("incompatible algebras")
            }
        }
        impl $tr for AlgebraElement {
            type Output = AlgebraElement;
            fn $method(self, rhs: AlgebraElement) -> AlgebraElement {
                (&self).$imp(&rhs).expect("incompatible algebras")
            }
        }
    };
}

panicking_op!(Add, add, try_add);
panicking_op!(Sub, sub, try_sub);
panicking_op!(Mul, mul, try_mul);

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        self.scale_q(&-Q::one())
    }
}

impl Neg for AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::hbar::q;

    fn e(alg: &Arc<Algebra>, i: usize, j: usize) -> AlgebraElement {
        AlgebraElement::generator(alg, i, j).unwrap()
    }

    #[test]
    fn sorted_product_is_fixed() {
        let alg = Algebra::lex(2);
        let p = &e(&alg, 1, 2) * &e(&alg, 2, 1);
        assert_eq!(p.len(), 1);
        assert_eq!(format!("{p}"), "E_{1,2}E_{2,1}");
    }

    #[test]
    fn single_swap_picks_up_hbar_bracket() {
        let alg = Algebra::lex(2);
        let p = &e(&alg, 2, 1) * &e(&alg, 1, 2);
        let expected = &(&e(&alg, 1, 2) * &e(&alg, 2, 1))
            + &(&e(&alg, 2, 2) - &e(&alg, 1, 1)).scale(&HbarPoly::hbar());
        assert_eq!(p, expected);
    }

    #[test]
    fn commutators_of_generators() {
        let alg = Algebra::lex(3);
        assert_eq!(
            e(&alg, 1, 2).commutator(&e(&alg, 2, 1)).unwrap(),
            &e(&alg, 1, 1) - &e(&alg, 2, 2)
        );
        assert!(e(&alg, 1, 1).commutator(&e(&alg, 2, 3)).unwrap().is_zero());
        let a = &(&e(&alg, 3, 1) * &e(&alg, 1, 2)) + &e(&alg, 2, 2);
        assert!(a.commutator(&a).unwrap().is_zero());
    }

    #[test]
    fn mismatched_orders_are_rejected() {
        let a = Algebra::lex(3);
        let b = Algebra::new(GeneratorOrder::canonical_subregular(3).unwrap());
        let c = Algebra::lex(4);
        assert!(e(&a, 1, 2).try_mul(&e(&b, 2, 1)).is_err());
        assert!(e(&a, 1, 2).try_mul(&e(&c, 2, 1)).is_err());
        // a separately built algebra with the same order is compatible
        let a2 = Algebra::lex(3);
        assert!(e(&a, 1, 2).try_mul(&e(&a2, 2, 1)).is_ok());
    }

    #[test]
    fn order_conversion_preserves_products() {
        let lex = Algebra::lex(3);
        let can = Algebra::new(GeneratorOrder::canonical_subregular(3).unwrap());
        let x = &(&e(&lex, 3, 1) * &e(&lex, 2, 2)) * &e(&lex, 1, 3);
        let y = &e(&lex, 2, 1) - &e(&lex, 1, 2).scale(&HbarPoly::int(3));
        let via_lex = (&x * &y).convert(&can).unwrap();
        let via_can = &x.convert(&can).unwrap() * &y.convert(&can).unwrap();
        assert_eq!(via_lex, via_can);
        assert_eq!(via_can.convert(&lex).unwrap(), &x * &y);
    }

    #[test]
    fn hbar_evaluation() {
        let alg = Algebra::lex(2);
        let p = &e(&alg, 2, 1) * &e(&alg, 1, 2);
        let at0 = p.eval_hbar(&q(0));
        assert_eq!(at0, &e(&alg, 1, 2) * &e(&alg, 2, 1));
    }
}
