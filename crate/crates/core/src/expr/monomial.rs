use std::collections::{BTreeSet, HashMap};
use std::fmt;

use super::symbol::{DeltaFactor, FieldSymbol, FlavorIndex};
use super::ExprError;
use crate::scalars::RatN;

/// A normal-ordered product of fields times Kronecker deltas, in canonical
/// form. Instances are only produced by [`canonicalize`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial {
    factors: Vec<FieldSymbol>,
    deltas: Vec<DeltaFactor>,
}

impl Monomial {
    /// The identity operator.
    pub fn identity() -> Self {
        Monomial::default()
    }

    pub fn factors(&self) -> &[FieldSymbol] {
        &self.factors
    }

    pub fn deltas(&self) -> &[DeltaFactor] {
        &self.deltas
    }

    pub fn is_identity(&self) -> bool {
        self.factors.is_empty() && self.deltas.is_empty()
    }

    /// Grassmann parity: true for an odd number of fermions.
    pub fn is_odd(&self) -> bool {
        self.factors.iter().filter(|f| f.is_odd()).count() % 2 == 1
    }

    /// Every abstract index name occurring in the monomial.
    pub fn index_names(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for f in &self.factors {
            if let Some(n) = f.index.name() {
                out.insert(n.to_string());
            }
        }
        for d in &self.deltas {
            for i in [&d.left, &d.right] {
                if let Some(n) = i.name() {
                    out.insert(n.to_string());
                }
            }
        }
        out
    }

    /// Names occurring exactly once.
    pub fn free_indices(&self) -> BTreeSet<String> {
        let counts = index_counts(&self.factors, &self.deltas);
        counts.into_iter().filter(|(_, c)| *c == 1).map(|(n, _)| n).collect()
    }

    /// Names occurring twice (summed).
    pub fn dummy_indices(&self) -> BTreeSet<String> {
        let counts = index_counts(&self.factors, &self.deltas);
        counts.into_iter().filter(|(_, c)| *c == 2).map(|(n, _)| n).collect()
    }

    pub(crate) fn into_parts(self) -> (Vec<FieldSymbol>, Vec<DeltaFactor>) {
        (self.factors, self.deltas)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.factors.len() {
            0 => {}
            1 => parts.push(self.factors[0].to_string()),
            _ => {
                parts.push(format!("no({})", self.factors.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(", ")))
            }
        }
        parts.extend(self.deltas.iter().map(|d| d.to_string()));
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

fn index_counts(factors: &[FieldSymbol], deltas: &[DeltaFactor]) -> HashMap<String, usize> {
    let mut counts: HashMap<String, usize> = HashMap::new();
    let all = factors.iter().map(|f| &f.index).chain(deltas.iter().flat_map(|d| [&d.left, &d.right]));
    for idx in all {
        if let FlavorIndex::Abstract(n) = idx {
            *counts.entry(n.clone()).or_default() += 1;
        }
    }
    counts
}

const DUMMY_BASE: [&str; 12] = ["i", "j", "k", "l", "m", "p", "q", "r", "s", "t", "u", "v"];

/// The canonical dummy name sequence `i, j, k, l, m, p, ..., v, i1, j1, ...`.
pub fn dummy_name(n: usize) -> String {
    let base = DUMMY_BASE[n % DUMMY_BASE.len()];
    match n / DUMMY_BASE.len() {
        0 => base.to_string(),
        r => format!("{base}{r}"),
    }
}

fn replace_index(idx: &mut FlavorIndex, from: &str, to: &FlavorIndex) -> bool {
    if idx.name() == Some(from) {
        *idx = to.clone();
        true
    } else {
        false
    }
}

/// Brings a product into canonical form.
///
/// Deltas are applied (`δ(i,j) ψʲ → ψⁱ`, closed loops give powers of `N`),
/// fields are sorted with a sign for every exchange of two fermions, and
/// summed indices are renamed so that the result is the minimum over all
/// dummy relabelings. Returns `None` when the product vanishes: two identical
/// fermions, a relabeling symmetry that flips the sign, or `δ` between
/// distinct concrete values.
pub fn canonicalize(
    factors: Vec<FieldSymbol>,
    deltas: Vec<DeltaFactor>,
    coeff: RatN,
) -> Result<Option<(Monomial, RatN)>, ExprError> {
    if coeff.is_zero() {
        return Ok(None);
    }
    let mut factors = factors;
    let mut counts = index_counts(&factors, &deltas);
    if let Some((name, &count)) = counts.iter().find(|(_, c)| **c > 2) {
        return Err(ExprError::MalformedIndex { name: name.clone(), count });
    }

    // Resolve deltas to a fixpoint.
    let mut n_power = 0u32;
    let mut pending = deltas;
    loop {
        let mut changed = false;
        let mut kept: Vec<DeltaFactor> = Vec::new();
        while let Some(d) = pending.pop() {
            match (&d.left, &d.right) {
                (FlavorIndex::Concrete(a), FlavorIndex::Concrete(b)) => {
                    if a != b {
                        return Ok(None);
                    }
                    changed = true;
                }
                (FlavorIndex::Abstract(x), FlavorIndex::Abstract(y)) if x == y => {
                    n_power += 1;
                    counts.remove(x);
                    changed = true;
                }
                _ => {
                    let summed = |i: &FlavorIndex| i.name().is_some_and(|n| counts.get(n) == Some(&2));
                    let (from, to) = if summed(&d.left) {
                        (d.left.clone(), d.right.clone())
                    } else if summed(&d.right) {
                        (d.right.clone(), d.left.clone())
                    } else {
                        kept.push(d);
                        continue;
                    };
                    let from = from.name().expect("abstract").to_string();
                    let mut done = false;
                    for f in factors.iter_mut() {
                        if !done && replace_index(&mut f.index, &from, &to) {
                            done = true;
                        }
                    }
                    for e in pending.iter_mut().chain(kept.iter_mut()) {
                        if done {
                            break;
                        }
                        done = replace_index(&mut e.left, &from, &to) || replace_index(&mut e.right, &from, &to);
                    }
                    debug_assert!(done, "summed index without partner");
                    counts.remove(&from);
                    changed = true;
                }
            }
        }
        pending = kept;
        if !changed {
            break;
        }
    }
    let mut deltas: Vec<DeltaFactor> = pending.into_iter().map(DeltaFactor::oriented).collect();
    deltas.sort();

    let mut coeff = coeff;
    if n_power > 0 {
        coeff = &coeff * &RatN::n().pow(n_power);
    }

    let counts = index_counts(&factors, &deltas);
    let mut dummies: Vec<String> = counts.iter().filter(|(_, c)| **c == 2).map(|(n, _)| n.clone()).collect();
    dummies.sort();
    let free: BTreeSet<&String> = counts.iter().filter(|(_, c)| **c == 1).map(|(n, _)| n).collect();
    let mut slot_names = Vec::with_capacity(dummies.len());
    let mut k = 0;
    while slot_names.len() < dummies.len() {
        let name = dummy_name(k);
        if !free.contains(&name) {
            slot_names.push(FlavorIndex::Abstract(name));
        }
        k += 1;
    }

    // Position of each dummy occurrence, so relabelings do not rescan names.
    let dummy_of: Vec<Option<usize>> =
        factors.iter().map(|f| f.index.name().and_then(|n| dummies.iter().position(|d| d == n))).collect();

    let mut best: Option<(Vec<FieldSymbol>, bool)> = None;
    let mut vanishes = false;
    let mut perm: Vec<usize> = (0..dummies.len()).collect();
    loop {
        for (f, d) in factors.iter_mut().zip(&dummy_of) {
            if let Some(d) = d {
                f.index = slot_names[perm[*d]].clone();
            }
        }
        match sorted_with_sign(&factors) {
            None => return Ok(None),
            Some((sorted, negative)) => match &best {
                Some((b, bneg)) if *b == sorted => {
                    if *bneg != negative {
                        vanishes = true;
                    }
                }
                Some((b, _)) if *b < sorted => {}
                _ => {
                    best = Some((sorted, negative));
                    vanishes = false;
                }
            },
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    if vanishes {
        return Ok(None);
    }
    let (factors, negative) = best.expect("at least one relabeling");
    if negative {
        coeff = -coeff;
    }
    Ok(Some((Monomial { factors, deltas }, coeff)))
}

/// Stable sort; the flag reports an odd number of fermion exchanges. `None`
/// when two identical fermions meet.
fn sorted_with_sign(factors: &[FieldSymbol]) -> Option<(Vec<FieldSymbol>, bool)> {
    let mut order: Vec<usize> = (0..factors.len()).collect();
    order.sort_by(|&a, &b| factors[a].cmp(&factors[b]));
    let odd_positions: Vec<usize> = order.iter().copied().filter(|&i| factors[i].is_odd()).collect();
    let mut inversions = 0usize;
    for a in 0..odd_positions.len() {
        for b in a + 1..odd_positions.len() {
            if odd_positions[a] > odd_positions[b] {
                inversions += 1;
            }
        }
    }
    let sorted: Vec<FieldSymbol> = order.iter().map(|&i| factors[i].clone()).collect();
    if sorted.windows(2).any(|w| w[0].is_odd() && w[0] == w[1]) {
        return None;
    }
    Some((sorted, inversions % 2 == 1))
}

/// Lexicographic successor; false after the last permutation.
fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::symbol::Charge::{Minus, Plus};

    fn psi(c: super::super::symbol::Charge, i: &str) -> FieldSymbol {
        FieldSymbol::psi(c, i)
    }
    fn beta(c: super::super::symbol::Charge, i: &str) -> FieldSymbol {
        FieldSymbol::beta(c, i)
    }

    #[test]
    fn grassmann_swap_absorbs_sign() {
        let a = canonicalize(vec![psi(Minus, "i"), psi(Plus, "i")], vec![], RatN::one()).unwrap();
        let b = canonicalize(vec![psi(Plus, "i"), psi(Minus, "i")], vec![], -RatN::one()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn delta_chain_and_trace() {
        let (m, c) = canonicalize(vec![], vec![DeltaFactor::new("i", "j"), DeltaFactor::new("j", "k")], RatN::one())
            .unwrap()
            .unwrap();
        assert_eq!(m.deltas(), &[DeltaFactor::new("i", "k")]);
        assert!(c.is_one());
        let (m, c) = canonicalize(vec![], vec![DeltaFactor::new("i", "i")], RatN::one()).unwrap().unwrap();
        assert!(m.is_identity());
        assert_eq!(c, RatN::n());
    }

    #[test]
    fn delta_moves_index_onto_field() {
        let (m, _) =
            canonicalize(vec![psi(Plus, "j")], vec![DeltaFactor::new("i", "j")], RatN::one()).unwrap().unwrap();
        assert_eq!(m.factors(), &[psi(Plus, "i")]);
        assert!(m.deltas().is_empty());
    }

    #[test]
    fn repeated_fermion_vanishes() {
        // (psi+^i psi+^i)(psi-^j psi-^j)
        let r =
            canonicalize(vec![psi(Plus, "a"), psi(Plus, "a"), psi(Minus, "b"), psi(Minus, "b")], vec![], RatN::one())
                .unwrap();
        assert!(r.is_none());
        // the ghost analogue survives
        let r = canonicalize(
            vec![beta(Plus, "a"), beta(Plus, "a"), beta(Minus, "b"), beta(Minus, "b")],
            vec![],
            RatN::one(),
        )
        .unwrap();
        assert!(r.is_some());
    }

    #[test]
    fn relabeling_invariance() {
        let a =
            canonicalize(vec![psi(Plus, "x"), psi(Minus, "x"), beta(Plus, "y"), beta(Minus, "y")], vec![], RatN::one())
                .unwrap();
        let b = canonicalize(
            vec![beta(Minus, "p"), psi(Minus, "q"), beta(Plus, "p"), psi(Plus, "q")],
            vec![],
            -RatN::one(),
        )
        .unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn triple_index_is_malformed() {
        let r = canonicalize(vec![psi(Plus, "i"), psi(Plus, "i"), psi(Minus, "i")], vec![], RatN::one());
        assert!(matches!(r, Err(ExprError::MalformedIndex { count: 3, .. })));
    }

    #[test]
    fn distinct_concrete_delta_vanishes() {
        let r = canonicalize(vec![], vec![DeltaFactor::new(1u32, 2u32)], RatN::one()).unwrap();
        assert!(r.is_none());
        let r = canonicalize(vec![psi(Plus, "i")], vec![DeltaFactor::new("i", 2u32)], RatN::one()).unwrap();
        assert_eq!(r.unwrap().0.factors(), &[FieldSymbol::psi(Plus, 2u32)]);
    }

    #[test]
    fn antisymmetric_relabeling_vanishes() {
        // psi+^i psi+^j delta-free, contracted against a symmetric ghost pair:
        // psi+^i psi+^j beta-^i beta-^j = -(same) under i <-> j.
        let r =
            canonicalize(vec![psi(Plus, "i"), psi(Plus, "j"), beta(Minus, "i"), beta(Minus, "j")], vec![], RatN::one())
                .unwrap();
        assert!(r.is_none());
    }
}
