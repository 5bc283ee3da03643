//! The monoidal matrix `J` on `C^N ⊗ C^N` for the subregular W-algebra and its
//! semi-classical limit `j = (J − id)/ℏ |_{ℏ=0}`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::json::{rational_from_str, rational_to_string, ElementJson};
use crate::algebra::{Algebra, AlgebraElement, GenIdx, HbarPoly, Q};
use crate::error::{Error, Result};
use crate::geometry::jc_closed_form;
use crate::quotient::ModuleElement;
use crate::whittaker::{asymptotic_parts, l_constant_part, Subregular, WhittakerBasis};

/// A pair of slot indices `(a, l)` standing for `v_a ⊗ v_l`.
pub type Pair = (usize, usize);

const E21: GenIdx = GenIdx::new(2, 1);
const E11: GenIdx = GenIdx::new(1, 1);

/// `J − id`: entry `((a, l), (i, j))` is `c_{ij}^{al} ∈ U_ℏ(l)`, the coefficient with
/// `v_i^ψ ⊗ v_j^ψ = (v_i ⊗ v_j)^ψ + Σ (v_a ⊗ v_l)^ψ · c_{ij}^{al}`.
#[derive(Clone, Debug)]
pub struct JMatrix {
    pub n: usize,
    pub entries: BTreeMap<(Pair, Pair), AlgebraElement>,
}

/// Canonical generators `(v_i ⊗ v_j)^ψ` and the matrix relating them to fused pairs.
pub struct JComputation {
    pub j: JMatrix,
    pub generators: BTreeMap<Pair, ModuleElement>,
}

/// Fuses canonical generators pairwise and reduces each fusion to canonical form by
/// subtracting already-known pair generators, working down from the largest second index.
pub fn compute_j(sub: &Subregular, basis: &WhittakerBasis) -> Result<JComputation> {
    if !basis.canonical {
        return Err(Error::Validation("J needs the canonical Whittaker basis".into()));
    }
    let n = sub.n();
    let space = sub.space();
    let mut gens: BTreeMap<Pair, ModuleElement> = BTreeMap::new();
    let mut entries = BTreeMap::new();
    for j in (1..=n).rev() {
        let level: Vec<(usize, ModuleElement, BTreeMap<Pair, AlgebraElement>)> = (1..=n)
            .into_par_iter()
            .map(|i| {
                let fused = space.fuse(basis.vector(i), basis.vector(j))?;
                let (g, c) = reduce_to_canonical(sub, fused, (i, j), &gens)?;
                Ok((i, g, c))
            })
            .collect::<Result<_>>()?;
        for (i, g, c) in level {
            for (al, y) in c {
                entries.insert((al, (i, j)), y);
            }
            gens.insert((i, j), g);
        }
    }
    Ok(JComputation {
        j: JMatrix { n, entries },
        generators: gens,
    })
}

fn reduce_to_canonical(
    sub: &Subregular,
    mut r: ModuleElement,
    target: Pair,
    gens: &BTreeMap<Pair, ModuleElement>,
) -> Result<(ModuleElement, BTreeMap<Pair, AlgebraElement>)> {
    let space = sub.space();
    let n = sub.n();
    let mut c: BTreeMap<Pair, AlgebraElement> = BTreeMap::new();
    let limit = 4 * n * n * n + 16;
    for _ in 0..limit {
        let beta = space.reduce_mod_b_left(&r)?;
        let next = beta
            .slot_support()
            .into_iter()
            .map(|s| (s[0], s[1]))
            .filter(|&p| p != target)
            .min_by_key(|&(a, l)| (l, a));
        let Some((a, l)) = next else {
            let lead = beta.coefficient(&[target.0, target.1]);
            if !lead.is_one_like() {
                return Err(Error::Consistency(format!(
                    "fusion for {target:?} has leading coefficient {lead}"
                )));
            }
            return Ok((r, c));
        };
        let y = beta.coefficient(&[a, l]);
        if l_constant_part(&y) != y {
            return Err(Error::Consistency(format!(
                "coefficient of v{a}⊗v{l} in the fusion for {target:?} is not in U(l): {y}"
            )));
        }
        let g = gens.get(&(a, l)).ok_or_else(|| {
            Error::Consistency(format!(
                "fusion for {target:?} needs (v{a}⊗v{l})^ψ, which is not yet available"
            ))
        })?;
        r = r.try_sub(&space.right_act(g, &y)?)?;
        let e = c.entry((a, l)).or_insert_with(|| AlgebraElement::zero(sub.algebra()));
        *e = &*e + &y;
        if e.is_zero() {
            c.remove(&(a, l));
        }
    }
    Err(Error::Consistency(format!("fusion for {target:?} did not stabilize")))
}

/// Structural facts about a computed `J`.
#[derive(Clone, Debug, Serialize)]
pub struct JStructure {
    pub n: usize,
    pub nonzero_entries: usize,
    pub diagonal_free: bool,
    /// Every entry sits at `a ≤ i`, `l > j`.
    pub triangular: bool,
    pub divisible_by_hbar: bool,
    pub entries_in_ul: bool,
    pub violations: Vec<String>,
}

impl JStructure {
    pub fn passed(&self) -> bool {
        self.diagonal_free && self.triangular && self.divisible_by_hbar && self.entries_in_ul
    }
}

impl JMatrix {
    pub fn structure(&self) -> JStructure {
        let mut v = Vec::new();
        let mut diag = true;
        let mut tri = true;
        let mut div = true;
        let mut inl = true;
        for (&((a, l), (i, j)), y) in &self.entries {
            if (a, l) == (i, j) {
                diag = false;
                v.push(format!("diagonal entry at {:?}", (i, j)));
            }
            if !(a <= i && l > j) {
                tri = false;
                v.push(format!("entry outside a<=i, l>j at ({a},{l}),({i},{j})"));
            }
            if y.div_hbar().is_none() {
                div = false;
                v.push(format!("entry ({a},{l}),({i},{j}) = {y} not divisible by ℏ"));
            }
            if l_constant_part(y) != *y {
                inl = false;
                v.push(format!("entry ({a},{l}),({i},{j}) = {y} leaves U(l)"));
            }
        }
        JStructure {
            n: self.n,
            nonzero_entries: self.entries.len(),
            diagonal_free: diag,
            triangular: tri,
            divisible_by_hbar: div,
            entries_in_ul: inl,
            violations: v,
        }
    }

    /// Entry of `J` itself (the identity included).
    pub fn entry(&self, al: Pair, ij: Pair) -> Option<AlgebraElement> {
        self.entries.get(&(al, ij)).cloned()
    }
}

/// One nonzero entry of `J − id` in JSON form.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JEntryJson {
    pub al: [usize; 2],
    pub ij: [usize; 2],
    pub value: ElementJson,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JMatrixJson {
    #[serde(rename = "N")]
    pub n: usize,
    pub entries: Vec<JEntryJson>,
}

impl JMatrix {
    pub fn to_json(&self) -> JMatrixJson {
        JMatrixJson {
            n: self.n,
            entries: self
                .entries
                .iter()
                .map(|(&((a, l), (i, j)), y)| JEntryJson {
                    al: [a, l],
                    ij: [i, j],
                    value: y.to_json(),
                })
                .collect(),
        }
    }

    pub fn from_json(alg: &Arc<Algebra>, j: &JMatrixJson) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for e in &j.entries {
            let y = AlgebraElement::from_json(alg, &e.value)?;
            entries.insert(((e.al[0], e.al[1]), (e.ij[0], e.ij[1])), y);
        }
        Ok(JMatrix { n: j.n, entries })
    }
}

/// A commutative polynomial in `x21, x11`: `(a, b) ↦ coefficient of x21^a x11^b`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct XPoly(pub BTreeMap<(u32, u32), Q>);

impl XPoly {
    pub fn constant(c: Q) -> Self {
        let mut p = Self::default();
        p.add(0, 0, c);
        p
    }

    pub fn monomial(a: u32, b: u32, c: Q) -> Self {
        let mut p = Self::default();
        p.add(a, b, c);
        p
    }

    pub fn add(&mut self, a: u32, b: u32, c: Q) {
        let e = self.0.entry((a, b)).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.0.remove(&(a, b));
        }
    }

    pub fn add_poly(&mut self, other: &XPoly) {
        for (&(a, b), c) in &other.0 {
            self.add(a, b, c.clone());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.keys().map(|(a, b)| a + b).max().unwrap_or(0)
    }

    pub fn constant_part(&self) -> Q {
        self.0.get(&(0, 0)).cloned().unwrap_or_else(Q::zero)
    }

    pub fn without_constant(&self) -> XPoly {
        XPoly(self.0.iter().filter(|(k, _)| **k != (0, 0)).map(|(k, c)| (*k, c.clone())).collect())
    }
}

impl fmt::Display for XPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(&(a, b), c)| {
                let mut m = String::new();
                if a > 0 {
                    m += &if a == 1 { "x21".to_string() } else { format!("x21^{a}") };
                }
                if b > 0 {
                    m += &if b == 1 { "x11".to_string() } else { format!("x11^{b}") };
                }
                match (m.is_empty(), c.is_one()) {
                    (true, _) => format!("{c}"),
                    (false, true) => m,
                    (false, false) => format!("{c}·{m}"),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `j = Σ p(x21, x11) · A ⊗ B` keyed by the tensor legs `(A, B)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SemiclassicalJ {
    pub n: usize,
    pub entries: BTreeMap<(GenIdx, GenIdx), XPoly>,
}

impl SemiclassicalJ {
    fn add(&mut self, a: GenIdx, b: GenIdx, p: &XPoly) {
        let e = self.entries.entry((a, b)).or_default();
        e.add_poly(p);
        if e.is_zero() {
            self.entries.remove(&(a, b));
        }
    }

    /// The x-independent part, as a tensor with rational coefficients.
    pub fn constant_part(&self) -> BTreeMap<(GenIdx, GenIdx), Q> {
        self.entries
            .iter()
            .map(|(k, p)| (*k, p.constant_part()))
            .filter(|(_, c)| !c.is_zero())
            .collect()
    }

    pub fn dynamical_part(&self) -> SemiclassicalJ {
        SemiclassicalJ {
            n: self.n,
            entries: self
                .entries
                .iter()
                .map(|(k, p)| (*k, p.without_constant()))
                .filter(|(_, p)| !p.is_zero())
                .collect(),
        }
    }

    pub fn max_degree(&self) -> u32 {
        self.entries.values().map(XPoly::degree).max().unwrap_or(0)
    }

    pub fn render(&self) -> String {
        if self.entries.is_empty() {
            return "0".into();
        }
        self.entries
            .iter()
            .map(|((a, b), p)| format!("({p})·{a}⊗{b}"))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// `[[left_i, left_j], [right_i, right_j], [[a, b, "c"], ...]]` per tensor position, with
/// `(a, b, c)` standing for `c · x21^a x11^b`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SemiclassicalJson {
    #[serde(rename = "N")]
    pub n: usize,
    pub entries: Vec<([usize; 2], [usize; 2], Vec<(u32, u32, String)>)>,
}

impl SemiclassicalJ {
    pub fn to_json(&self) -> SemiclassicalJson {
        SemiclassicalJson {
            n: self.n,
            entries: self
                .entries
                .iter()
                .map(|((a, b), p)| {
                    (
                        [a.i, a.j],
                        [b.i, b.j],
                        p.0.iter().map(|(&(x, y), c)| (x, y, rational_to_string(c))).collect(),
                    )
                })
                .collect(),
        }
    }

    pub fn from_json(j: &SemiclassicalJson) -> Result<Self> {
        let mut out = SemiclassicalJ {
            n: j.n,
            ..Default::default()
        };
        for (a, b, terms) in &j.entries {
            let mut p = XPoly::default();
            for (x, y, c) in terms {
                p.add(*x, *y, rational_from_str(c)?);
            }
            out.add(GenIdx::new(a[0], a[1]), GenIdx::new(b[0], b[1]), &p);
        }
        Ok(out)
    }
}

/// Reads an element of `U_ℏ(l)` at `ℏ = 0` as a polynomial in `x21, x11`.
fn to_xpoly(y: &AlgebraElement) -> Result<XPoly> {
    let mut p = XPoly::default();
    for (m, c) in y.hbar_coefficient(0).terms() {
        let (mut a, mut b) = (0, 0);
        for (g, e) in y.factors(m) {
            match g {
                E21 => a += e,
                E11 => b += e,
                _ => return Err(Error::Consistency(format!("{g} outside l in a J entry"))),
            }
        }
        p.add(a, b, c.coeff(0));
    }
    Ok(p)
}

/// `(J − id)/ℏ` at `ℏ = 0`, entry `((a,l),(i,j))` placed on `E_{a,i} ⊗ E_{l,j}`.
pub fn semiclassical_limit(j: &JMatrix) -> Result<SemiclassicalJ> {
    let mut out = SemiclassicalJ {
        n: j.n,
        ..Default::default()
    };
    for (&((a, l), (i, jj)), y) in &j.entries {
        let y1 = y.div_hbar().ok_or_else(|| {
            Error::Consistency(format!("J − id entry ({a},{l}),({i},{jj}) = {y} not divisible by ℏ"))
        })?;
        out.add(GenIdx::new(a, i), GenIdx::new(l, jj), &to_xpoly(&y1)?);
    }
    Ok(out)
}

/// Recomputes `j` from the asymptotically linear and ℓ-linear parts of the canonical
/// coefficients alone: each term `c · E_{p,q} u` of `x_j^l` contributes
/// `−c · u(x) · E_{p,q} ⊗ E_{l,j}`.
pub fn semiclassical_from_asymptotic_parts(basis: &WhittakerBasis) -> Result<SemiclassicalJ> {
    let n = basis.n;
    let mut out = SemiclassicalJ {
        n,
        ..Default::default()
    };
    for j in 1..=n {
        for l in j + 1..=n {
            let (lin, llin) = asymptotic_parts(&basis.coefficient(j, l));
            for part in [lin, llin] {
                for (m, c) in part.terms() {
                    let f = part.factors(m);
                    let (y, _) = f[0];
                    let rest = AlgebraElement::from_terms(
                        part.algebra(),
                        [(
                            part.algebra()
                                .monomial(&f[1..])
                                .expect("suffix of a normal monomial"),
                            HbarPoly::one(),
                        )],
                    );
                    let mut p = to_xpoly(&rest)?;
                    p = XPoly(p.0.into_iter().map(|(k, v)| (k, -(v * c.coeff(0)))).collect());
                    out.add(y, GenIdx::new(l, j), &p);
                }
            }
        }
    }
    Ok(out)
}

/// The two reference versions of the `E_{i,1}` dynamical family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Convention {
    /// `Σ_{i=4}^{N} Σ_{r=2}^{i−2} (−1)^{i−r} x11^{i−r−1} E_{1,r} ⊗ E_{i,1}`
    Statement,
    /// `Σ_{i=4}^{N} Σ_{r=2}^{i−1} (−1)^{i−r} x11^{i−r} E_{1,r} ⊗ E_{i,1}`
    Proof,
}

fn sign(k: usize) -> Q {
    if k % 2 == 0 {
        Q::one()
    } else {
        -Q::one()
    }
}

/// `Σ_{j=2}^{N−2} Σ_{i=j+2}^{N} Σ_{r=2}^{i−j} (−1)^{i−j−r} x21 x11^{i−j−r} E_{1,r} ⊗ E_{i,j}`.
pub fn first_dynamical_family(n: usize) -> SemiclassicalJ {
    let mut out = SemiclassicalJ {
        n,
        ..Default::default()
    };
    for j in 2..n.saturating_sub(1) {
        for i in j + 2..=n {
            for r in 2..=i - j {
                let k = i - j - r;
                out.add(
                    GenIdx::new(1, r),
                    GenIdx::new(i, j),
                    &XPoly::monomial(1, k as u32, sign(k)),
                );
            }
        }
    }
    out
}

pub fn second_dynamical_family(n: usize, conv: Convention) -> SemiclassicalJ {
    let mut out = SemiclassicalJ {
        n,
        ..Default::default()
    };
    for i in 4..=n {
        let top = match conv {
            Convention::Statement => i - 2,
            Convention::Proof => i - 1,
        };
        for r in 2..=top {
            let e = match conv {
                Convention::Statement => i - r - 1,
                Convention::Proof => i - r,
            };
            out.add(
                GenIdx::new(1, r),
                GenIdx::new(i, 1),
                &XPoly::monomial(0, e as u32, sign(i - r)),
            );
        }
    }
    out
}

/// `j_c` plus both dynamical families, for the given convention.
pub fn semiclassical_closed_form(n: usize, conv: Convention) -> Result<SemiclassicalJ> {
    let mut out = SemiclassicalJ {
        n,
        ..Default::default()
    };
    for (&(a, b), c) in &jc_closed_form(n)?.terms {
        out.add(a, b, &XPoly::constant(c.clone()));
    }
    for fam in [first_dynamical_family(n), second_dynamical_family(n, conv)] {
        for ((a, b), p) in &fam.entries {
            out.add(*a, *b, p);
        }
    }
    Ok(out)
}

/// One differing tensor position.
#[derive(Clone, Debug, Serialize)]
pub struct EntryDiff {
    pub legs: String,
    pub computed: String,
    pub statement: String,
    pub proof: String,
}

/// Entry-by-entry comparison of a computed `j` with the reference closed forms.
#[derive(Clone, Debug, Serialize)]
pub struct Comparison {
    pub n: usize,
    pub constant_part_matches_jc: bool,
    pub matches_statement: bool,
    pub matches_proof: bool,
    /// `"statement"`, `"proof"`, `"both"` or `"neither"`.
    pub matched: String,
    pub first_family_matches: bool,
    pub diffs: Vec<EntryDiff>,
}

impl Comparison {
    pub fn passed(&self) -> bool {
        self.constant_part_matches_jc && (self.matches_statement || self.matches_proof)
    }
}

pub fn compare_semiclassical(computed: &SemiclassicalJ) -> Result<Comparison> {
    let n = computed.n;
    let st = semiclassical_closed_form(n, Convention::Statement)?;
    let pr = semiclassical_closed_form(n, Convention::Proof)?;
    let jc: BTreeMap<(GenIdx, GenIdx), Q> = jc_closed_form(n)?.terms;
    let mut keys: Vec<(GenIdx, GenIdx)> = computed
        .entries
        .keys()
        .chain(st.entries.keys())
        .chain(pr.entries.keys())
        .copied()
        .collect();
    keys.sort();
    keys.dedup();
    let get = |j: &SemiclassicalJ, k| j.entries.get(&k).cloned().unwrap_or_default();
    let mut diffs = Vec::new();
    for k in keys {
        let (c, s, p) = (get(computed, k), get(&st, k), get(&pr, k));
        if c != s || c != p {
            diffs.push(EntryDiff {
                legs: format!("{}⊗{}", k.0, k.1),
                computed: c.to_string(),
                statement: s.to_string(),
                proof: p.to_string(),
            });
        }
    }
    let dyn_c = computed.dynamical_part();
    let first = first_dynamical_family(n);
    let first_ok = first.entries.iter().all(|(k, p)| {
        dyn_c
            .entries
            .get(k)
            .map(|q| q.0.iter().filter(|((a, _), _)| *a == 1).map(|(k, v)| (*k, v.clone())).collect::<BTreeMap<_, _>>())
            == Some(p.0.clone())
    }) && dyn_c
        .entries
        .iter()
        .all(|(k, q)| q.0.keys().all(|(a, _)| *a == 0) || first.entries.contains_key(k));
    let ms = *computed == st;
    let mp = *computed == pr;
    Ok(Comparison {
        n,
        constant_part_matches_jc: computed.constant_part() == jc,
        matches_statement: ms,
        matches_proof: mp,
        matched: match (ms, mp) {
            (true, true) => "both",
            (true, false) => "statement",
            (false, true) => "proof",
            (false, false) => "neither",
        }
        .into(),
        first_family_matches: first_ok,
        diffs,
    })
}

/// Associativity of fusion on a list of index triples.
#[derive(Clone, Debug, Serialize)]
pub struct FusionReport {
    pub n: usize,
    pub triples: Vec<(usize, usize, usize)>,
    pub failures: Vec<(usize, usize, usize)>,
}

pub fn fuse_power_j(
    sub: &Subregular,
    basis: &WhittakerBasis,
    triples: &[(usize, usize, usize)],
) -> Result<FusionReport> {
    let space = sub.space();
    let cache: HashMap<usize, &ModuleElement> = (1..=basis.n).map(|i| (i, basis.vector(i))).collect();
    let outcomes: Vec<((usize, usize, usize), bool)> = triples
        .par_iter()
        .map(|&(a, b, c)| {
            let (va, vb, vc) = (cache[&a], cache[&b], cache[&c]);
            let left = space.fuse(&space.fuse(va, vb)?, vc)?;
            let right = space.fuse(va, &space.fuse(vb, vc)?)?;
            Ok(((a, b, c), left == right))
        })
        .collect::<Result<_>>()?;
    Ok(FusionReport {
        n: basis.n,
        triples: triples.to_vec(),
        failures: outcomes.into_iter().filter(|(_, ok)| !ok).map(|(t, _)| t).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_n4() {
        let f = first_dynamical_family(4);
        assert_eq!(f.render(), "(x21)·E_{1,2}⊗E_{4,2}");
        let s = second_dynamical_family(4, Convention::Statement);
        assert_eq!(s.render(), "(x11)·E_{1,2}⊗E_{4,1}");
        let p = second_dynamical_family(4, Convention::Proof);
        assert_eq!(p.render(), "(x11^2)·E_{1,2}⊗E_{4,1} + (-1·x11)·E_{1,3}⊗E_{4,1}");
        assert!(first_dynamical_family(3).entries.is_empty());
        assert!(second_dynamical_family(3, Convention::Statement).entries.is_empty());
    }
}
