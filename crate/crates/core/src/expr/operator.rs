use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::monomial::{canonicalize, Monomial};
use super::symbol::{Chirality, DeltaFactor, FieldSymbol, FlavorIndex};
use super::ExprError;
use crate::scalars::{RatN, Rational};

/// A finite sum of canonical monomials with `RatN` coefficients. Zero
/// coefficients are never stored, so equality is term-map equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct OperatorExpr {
    terms: BTreeMap<Monomial, RatN>,
}

impl OperatorExpr {
    pub fn zero() -> Self {
        OperatorExpr::default()
    }

    pub fn identity() -> Self {
        OperatorExpr::scalar(RatN::one())
    }

    pub fn scalar(c: RatN) -> Self {
        let mut e = OperatorExpr::zero();
        e.add_canonical(Monomial::identity(), c);
        e
    }

    /// A single field.
    pub fn field(f: FieldSymbol) -> Self {
        OperatorExpr::product(vec![f], vec![], RatN::one()).expect("one field is well formed")
    }

    /// `coeff * :f₁ f₂ …: * δ…`, canonicalized.
    pub fn product(factors: Vec<FieldSymbol>, deltas: Vec<DeltaFactor>, coeff: RatN) -> Result<Self, ExprError> {
        let mut e = OperatorExpr::zero();
        e.add_raw(factors, deltas, coeff)?;
        Ok(e)
    }

    /// Adds a not-yet-canonical product.
    pub fn add_raw(
        &mut self,
        factors: Vec<FieldSymbol>,
        deltas: Vec<DeltaFactor>,
        coeff: RatN,
    ) -> Result<(), ExprError> {
        if let Some((m, c)) = canonicalize(factors, deltas, coeff)? {
            self.add_canonical(m, c);
        }
        Ok(())
    }

    pub(crate) fn add_canonical(&mut self, m: Monomial, c: RatN) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &RatN)> {
        self.terms.iter()
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

    pub fn coefficient(&self, m: &Monomial) -> RatN {
        self.terms.get(m).cloned().unwrap_or_else(RatN::zero)
    }

    /// Coefficient of the identity operator.
    pub fn scalar_part(&self) -> RatN {
        self.coefficient(&Monomial::identity())
    }

    /// Everything except the identity component.
    pub fn operator_part(&self) -> OperatorExpr {
        OperatorExpr {
            terms: self.terms.iter().filter(|(m, _)| !m.is_identity()).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    pub fn add(&self, other: &OperatorExpr) -> OperatorExpr {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &OperatorExpr) {
        for (m, c) in &other.terms {
            self.add_canonical(m.clone(), c.clone());
        }
    }

    pub fn sub(&self, other: &OperatorExpr) -> OperatorExpr {
        self.add(&other.scale(&-RatN::one()))
    }

    pub fn scale(&self, c: &RatN) -> OperatorExpr {
        if c.is_zero() {
            return OperatorExpr::zero();
        }
        OperatorExpr { terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    pub fn neg(&self) -> OperatorExpr {
        self.scale(&-RatN::one())
    }

    /// Formal normal-ordered juxtaposition `:a b:` with no contractions.
    /// Summed indices on either side are renamed apart from the other side;
    /// a free name shared by both becomes summed.
    pub fn mul_formal(&self, other: &OperatorExpr) -> Result<OperatorExpr, ExprError> {
        let mut out = OperatorExpr::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let ((mut factors, mut deltas), (fb, db)) = rename_pair_apart(ma, mb);
                factors.extend(fb);
                deltas.extend(db);
                out.add_raw(factors, deltas, ca * cb)?;
            }
        }
        Ok(out)
    }

    /// Flips the chirality of every field, `∂_z ↔ ∂_z̄`.
    pub fn mirror(&self) -> OperatorExpr {
        let mut out = OperatorExpr::zero();
        for (m, c) in &self.terms {
            let factors = m.factors().iter().map(FieldSymbol::mirror).collect();
            out.add_raw(factors, m.deltas().to_vec(), c.clone()).expect("mirror preserves index structure");
        }
        out
    }

    /// `∂_z` (for `Holo`) or `∂_z̄` (for `Anti`) by the Leibniz rule.
    pub fn derivative(&self, chirality: Chirality) -> OperatorExpr {
        let mut out = OperatorExpr::zero();
        for (m, c) in &self.terms {
            for k in 0..m.factors().len() {
                if m.factors()[k].chirality != chirality {
                    continue;
                }
                let mut factors = m.factors().to_vec();
                factors[k].deriv += 1;
                out.add_raw(factors, m.deltas().to_vec(), c.clone()).expect("derivative preserves index structure");
            }
        }
        out
    }

    pub fn derivative_n(&self, chirality: Chirality, n: u32) -> OperatorExpr {
        (0..n).fold(self.clone(), |acc, _| acc.derivative(chirality))
    }

    /// Applies `f` to every coefficient; terms mapped to zero are dropped.
    pub fn map_coefficients<E>(&self, mut f: impl FnMut(&RatN) -> Result<RatN, E>) -> Result<OperatorExpr, E> {
        let mut out = OperatorExpr::zero();
        for (m, c) in &self.terms {
            out.add_canonical(m.clone(), f(c)?);
        }
        Ok(out)
    }

    /// Evaluates every coefficient at `N = n`.
    pub fn eval_coefficients(&self, n: &Rational) -> Result<OperatorExpr, crate::scalars::ScalarError> {
        self.map_coefficients(|c| c.eval(n).map(RatN::from_rational))
    }

    /// Renames a free index.
    pub fn rename_free(&self, from: &str, to: impl Into<FlavorIndex>) -> Result<OperatorExpr, ExprError> {
        let to = to.into();
        let mut out = OperatorExpr::zero();
        for (m, c) in &self.terms {
            let mut factors = m.factors().to_vec();
            let mut deltas = m.deltas().to_vec();
            if m.free_indices().contains(from) {
                for f in factors.iter_mut() {
                    if f.index.name() == Some(from) {
                        f.index = to.clone();
                    }
                }
                for d in deltas.iter_mut() {
                    for i in [&mut d.left, &mut d.right] {
                        if i.name() == Some(from) {
                            *i = to.clone();
                        }
                    }
                }
            }
            out.add_raw(factors, deltas, c.clone())?;
        }
        Ok(out)
    }

    /// Union of the free index names over all terms.
    pub fn free_indices(&self) -> BTreeSet<String> {
        self.terms.keys().flat_map(|m| m.free_indices()).collect()
    }

    pub fn is_holomorphic(&self) -> bool {
        self.terms.keys().all(|m| m.factors().iter().all(|f| f.chirality == Chirality::Holo))
    }

    /// True when every term has the given Grassmann parity (the identity
    /// counts as even).
    pub fn has_parity(&self, odd: bool) -> bool {
        self.terms.keys().all(|m| m.is_odd() == odd)
    }

    /// Largest number of fields in a single term.
    pub fn max_fields(&self) -> usize {
        self.terms.keys().map(|m| m.factors().len()).max().unwrap_or(0)
    }

    /// `max Σ (deriv + 1)` over terms: no OPE with an operator of bound `b`
    /// has a pole above order `self.pole_bound() + b`.
    pub fn pole_bound(&self) -> u32 {
        self.terms.keys().map(|m| m.factors().iter().map(|f| f.deriv + 1).sum()).max().unwrap_or(0)
    }
}

type Parts = (Vec<FieldSymbol>, Vec<DeltaFactor>);

/// Both factors of a product with their summed indices renamed so that
/// neither captures an index of the other.
pub(crate) fn rename_pair_apart(a: &Monomial, b: &Monomial) -> (Parts, Parts) {
    let (fa, da) = rename_dummies_apart(a, &b.index_names());
    let mut a_names = b.index_names();
    a_names.extend(fa.iter().filter_map(|f| f.index.name().map(str::to_owned)));
    a_names.extend(da.iter().flat_map(|d| [&d.left, &d.right]).filter_map(|i| i.name().map(str::to_owned)));
    let (fb, db) = rename_dummies_apart(b, &a_names);
    ((fa, da), (fb, db))
}

/// Renames the summed indices of `m` to fresh names not in `taken`.
fn rename_dummies_apart(m: &Monomial, taken: &BTreeSet<String>) -> (Vec<FieldSymbol>, Vec<DeltaFactor>) {
    let own = m.index_names();
    let dummies = m.dummy_indices();
    let (mut factors, mut deltas) = m.clone().into_parts();
    if dummies.iter().all(|d| !taken.contains(d)) {
        return (factors, deltas);
    }
    let mut fresh = (0..).map(|k| format!("_{k}")).filter(|n| !taken.contains(n) && !own.contains(n));
    let map: Vec<(String, FlavorIndex)> =
        dummies.into_iter().map(|d| (d, FlavorIndex::Abstract(fresh.next().expect("infinite")))).collect();
    let rename = |idx: &mut FlavorIndex| {
        if let Some((_, to)) = map.iter().find(|(from, _)| idx.name() == Some(from.as_str())) {
            *idx = to.clone();
        }
    };
    factors.iter_mut().for_each(|f| rename(&mut f.index));
    for d in deltas.iter_mut() {
        rename(&mut d.left);
        rename(&mut d.right);
    }
    (factors, deltas)
}

impl fmt::Display for OperatorExpr {
    /// Renders in the expression DSL; `parse(render(e)) == e`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative_leading();
            let mag = if negative { -c } else { c.clone() };
            if k == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if negative { " - " } else { " + " })?;
            }
            let mag_s = mag.to_string();
            let atomic = mag_s.chars().all(|ch| ch.is_ascii_digit());
            if m.is_identity() {
                if atomic {
                    write!(f, "{mag_s}")?;
                } else {
                    write!(f, "({mag_s})")?;
                }
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else if atomic {
                write!(f, "{mag_s}*{m}")?;
            } else {
                write!(f, "({mag_s})*{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse;

    #[test]
    fn products_sum_shared_names() {
        let a = parse("no(psi(+,i), psi(-,i))").unwrap();
        let sq = a.mul_formal(&a).unwrap();
        assert_eq!(sq, parse("no(psi(+,i), psi(-,i), psi(+,j), psi(-,j))").unwrap());
        assert!(!sq.is_zero());
    }

    #[test]
    fn renaming_avoids_capture() {
        let a = parse("no(psi(+,i), psi(-,i))").unwrap();
        let b = parse("beta(+,i)").unwrap();
        let (ma, _) = a.terms().next().unwrap();
        let (mb, _) = b.terms().next().unwrap();
        let ((fa, _), (fb, _)) = rename_pair_apart(ma, mb);
        assert_ne!(fa[0].index, fb[0].index);
        assert_eq!(fb[0].index.name(), Some("i"));
    }

    #[test]
    fn linear_structure() {
        let a = parse("2*psi(+,i) - N*beta(-,i)").unwrap();
        assert!(a.sub(&a).is_zero());
        assert_eq!(a.neg().neg(), a);
        assert_eq!(a.mirror().mirror(), a);
        assert!(a.is_holomorphic() && !a.mirror().is_holomorphic());
        assert_eq!(parse("d(psi(+,i))").unwrap(), parse("psi(+,i)").unwrap().derivative(Chirality::Holo));
        assert_eq!(parse("no(d(psi(+,i)), d(psi(-,i)))").unwrap().pole_bound(), 4);
        assert_eq!(parse("3 + psi(+,i)").unwrap().scalar_part(), RatN::from_int(3));
    }
}
