use smallvec::SmallVec;

/// An ordered PBW monomial: generator ids with positive exponents, strictly
/// increasing under the ambient [`GeneratorOrder`](super::GeneratorOrder).
/// The empty monomial is the unit.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub(crate) SmallVec<[(u16, u16); 4]>);

impl Monomial {
    pub fn unit() -> Self {
        Self::default()
    }

    pub(crate) fn single(id: u16) -> Self {
        let mut v = SmallVec::new();
        v.push((id, 1));
        Self(v)
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    /// Total number of generator factors counted with multiplicity.
    pub fn pbw_degree(&self) -> usize {
        self.0.iter().map(|&(_, e)| e as usize).sum()
    }

    pub(crate) fn last_id(&self) -> Option<u16> {
        self.0.last().map(|&(g, _)| g)
    }

    pub(crate) fn first_id(&self) -> Option<u16> {
        self.0.first().map(|&(g, _)| g)
    }

    /// Removes one copy of the last factor.
    pub(crate) fn pop_last(&self) -> (Self, u16) {
        let mut v = self.0.clone();
        let last = v.last_mut().expect("pop on unit monomial");
        let g = last.0;
        if last.1 == 1 {
            v.pop();
        } else {
            last.1 -= 1;
        }
        (Self(v), g)
    }

    /// Appends `g`, which must rank at or above the current last factor.
    pub(crate) fn push_sorted(&self, g: u16) -> Self {
        let mut v = self.0.clone();
        match v.last_mut() {
            Some(last) if last.0 == g => last.1 += 1,
            _ => v.push((g, 1)),
        }
        Self(v)
    }

    /// Factors expanded one letter at a time.
    pub(crate) fn letters(&self) -> impl Iterator<Item = u16> + '_ {
        self.0
            .iter()
            .flat_map(|&(g, e)| std::iter::repeat(g).take(e as usize))
    }

    pub(crate) fn ids(&self) -> impl Iterator<Item = (u16, u16)> + '_ {
        self.0.iter().copied()
    }
}
