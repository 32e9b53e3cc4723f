//! Operator product expansions of free-field composites by Wick's theorem.
//!
//! `A(z, z̄) B(w, w̄)` is expanded as a sum over every set of pairings between
//! a field of `A` and a field of `B`. Each pairing contributes a propagator,
//! uncontracted fields of `A` are Taylor-expanded about `w`, and the result
//! is collected by the pole orders in `z - w` and `z̄ - w̄`.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::expr::{
    rename_pair_apart, Charge, Chirality, DeltaFactor, ExprError, FieldSymbol, Monomial, OperatorExpr, Species,
};
use crate::scalars::{RatN, Rational};

/// Bi-graded Laurent expansion. Entry `(p, q)` multiplies
/// `(z-w)^-p (z̄-w̄)^-q`; `(0, 0)` is the regular (normal-ordered) part.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LaurentOPE {
    entries: BTreeMap<(u32, u32), OperatorExpr>,
    depth: u32,
}

impl LaurentOPE {
    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn entries(&self) -> impl DoubleEndedIterator<Item = (&(u32, u32), &OperatorExpr)> {
        self.entries.iter()
    }

    pub fn get(&self, p: u32, q: u32) -> OperatorExpr {
        self.entries.get(&(p, q)).cloned().unwrap_or_default()
    }

    /// Highest holomorphic pole order with a nonzero entry.
    pub fn max_pole(&self) -> (u32, u32) {
        let p = self.entries.keys().map(|k| k.0).max().unwrap_or(0);
        let q = self.entries.keys().map(|k| k.1).max().unwrap_or(0);
        (p, q)
    }

    /// True when every entry other than `(0, 0)` vanishes.
    pub fn is_regular(&self) -> bool {
        self.entries.keys().all(|&k| k == (0, 0))
    }

    pub fn add_assign(&mut self, other: &LaurentOPE) {
        for (k, e) in &other.entries {
            self.insert_sum(*k, e);
        }
    }

    pub fn scale(&self, c: &RatN) -> LaurentOPE {
        let mut out = LaurentOPE { entries: BTreeMap::new(), depth: self.depth };
        for (k, e) in &self.entries {
            out.insert_sum(*k, &e.scale(c));
        }
        out
    }

    fn insert_sum(&mut self, key: (u32, u32), e: &OperatorExpr) {
        let slot = self.entries.entry(key).or_default();
        slot.add_assign(e);
        if slot.is_zero() {
            self.entries.remove(&key);
        }
    }
}

/// Propagator `⟨x(z) y(w)⟩` for fields carrying derivatives: the sign and
/// magnitude multiplying `δ / (z-w)^pole`, or `None` when the pair does not
/// contract.
///
/// Base pairings: `⟨ψ₋ψ₊⟩ = ⟨ψ₊ψ₋⟩ = 1/(z-w)`, `⟨β₊β₋⟩ = -⟨β₋β₊⟩ = 1/(z-w)`.
/// Derivatives act as `∂_z^m ∂_w^n (z-w)^-1 = (-1)^m (m+n)! (z-w)^-(m+n+1)`.
pub fn propagator(x: &FieldSymbol, y: &FieldSymbol) -> Option<(i64, u32)> {
    if x.chirality != y.chirality || x.species != y.species || x.charge == y.charge {
        return None;
    }
    let base: i64 = match (x.species, x.charge) {
        (Species::Psi, _) => 1,
        (Species::Beta, Charge::Plus) => 1,
        (Species::Beta, Charge::Minus) => -1,
    };
    let m = x.deriv;
    let total = x.deriv + y.deriv;
    let fact: i64 = (1..=total as i64).product();
    let sign = if m.is_multiple_of(2) { 1 } else { -1 };
    Some((base * sign * fact, total + 1))
}

/// Every partial matching between `s` left and `t` right positions, each as
/// `(left, right)` pairs sorted by left position. There are
/// `Σ_k C(s,k) C(t,k) k!` of them.
pub fn contraction_patterns(s: usize, t: usize) -> Vec<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    let mut used = vec![false; t];
    let mut cur = Vec::new();
    enumerate_patterns(0, s, &mut used, &mut cur, &mut |_, _| true, &mut out);
    out
}

fn enumerate_patterns(
    a: usize,
    s: usize,
    used: &mut Vec<bool>,
    cur: &mut Vec<(usize, usize)>,
    allowed: &mut dyn FnMut(usize, usize) -> bool,
    out: &mut Vec<Vec<(usize, usize)>>,
) {
    if a == s {
        out.push(cur.clone());
        return;
    }
    enumerate_patterns(a + 1, s, used, cur, allowed, out);
    for b in 0..used.len() {
        if !used[b] && allowed(a, b) {
            used[b] = true;
            cur.push((a, b));
            enumerate_patterns(a + 1, s, used, cur, allowed, out);
            cur.pop();
            used[b] = false;
        }
    }
}

/// All ways of writing `total` as an ordered sum of `parts` nonnegative
/// integers.
fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    if parts == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn factorial(n: u32) -> Rational {
    Rational::from_integer((1..=n as u64).product::<u64>().into())
}

type Emitted = Vec<((u32, u32), Monomial, RatN)>;

fn ope_monomials(ma: &Monomial, ca: &RatN, mb: &Monomial, cb: &RatN, depth: u32) -> Result<Emitted, ExprError> {
    // Summed indices on either side must not capture a free index of the other.
    let ((fa, da), (fb, db)) = rename_pair_apart(ma, mb);
    let fa = &fa[..];
    let s = fa.len();
    let t = fb.len();
    let coeff_ab = ca * cb;

    let mut patterns = Vec::new();
    let mut used = vec![false; t];
    let mut cur = Vec::new();
    enumerate_patterns(0, s, &mut used, &mut cur, &mut |a, b| propagator(&fa[a], &fb[b]).is_some(), &mut patterns);

    let mut out = Vec::new();
    for pattern in patterns {
        // Reorder to [a₁ b₁ a₂ b₂ … rest_a rest_b] and count fermion exchanges.
        let mut order: Vec<usize> = Vec::with_capacity(s + t);
        for &(a, b) in &pattern {
            order.push(a);
            order.push(s + b);
        }
        let rest_a: Vec<usize> = (0..s).filter(|a| !pattern.iter().any(|p| p.0 == *a)).collect();
        let rest_b: Vec<usize> = (0..t).filter(|b| !pattern.iter().any(|p| p.1 == *b)).collect();
        order.extend(rest_a.iter().copied());
        order.extend(rest_b.iter().map(|b| s + b));
        let is_odd = |pos: usize| if pos < s { fa[pos].is_odd() } else { fb[pos - s].is_odd() };
        let odd: Vec<usize> = order.iter().copied().filter(|&p| is_odd(p)).collect();
        let mut inversions = 0;
        for i in 0..odd.len() {
            for j in i + 1..odd.len() {
                if odd[i] > odd[j] {
                    inversions += 1;
                }
            }
        }

        let mut num: i64 = if inversions % 2 == 0 { 1 } else { -1 };
        let mut pole = [0u32; 2];
        let mut deltas: Vec<DeltaFactor> = da.clone();
        deltas.extend(db.iter().cloned());
        for &(a, b) in &pattern {
            let (c, p) = propagator(&fa[a], &fb[b]).expect("filtered");
            num *= c;
            pole[chir_slot(fa[a].chirality)] += p;
            deltas.push(DeltaFactor { left: fa[a].index.clone(), right: fb[b].index.clone() });
        }
        let base = coeff_ab.scale(&Rational::from_integer(num.into()));

        let holo: Vec<usize> = rest_a.iter().copied().filter(|&a| fa[a].chirality == Chirality::Holo).collect();
        let anti: Vec<usize> = rest_a.iter().copied().filter(|&a| fa[a].chirality == Chirality::Anti).collect();
        let kmax_h = if holo.is_empty() { 0 } else { pole[0].min(depth) };
        let kmax_a = if anti.is_empty() { 0 } else { pole[1].min(depth) };
        for kh in 0..=kmax_h {
            for comp_h in compositions(kh, holo.len()) {
                for ka in 0..=kmax_a {
                    for comp_a in compositions(ka, anti.len()) {
                        let mut factors: Vec<FieldSymbol> = Vec::with_capacity(rest_a.len() + rest_b.len());
                        let mut weight = Rational::from_integer(1.into());
                        for &a in &rest_a {
                            let mut f = fa[a].clone();
                            let shift = if let Some(k) = holo.iter().position(|&h| h == a) {
                                comp_h[k]
                            } else {
                                comp_a[anti.iter().position(|&h| h == a).expect("anti")]
                            };
                            f.deriv += shift;
                            weight /= factorial(shift);
                            factors.push(f);
                        }
                        factors.extend(rest_b.iter().map(|&b| fb[b].clone()));
                        let key = (pole[0] - kh, pole[1] - ka);
                        if let Some((m, c)) = crate::expr::canonicalize(factors, deltas.clone(), base.scale(&weight))? {
                            out.push((key, m, c));
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

fn chir_slot(c: Chirality) -> usize {
    match c {
        Chirality::Holo => 0,
        Chirality::Anti => 1,
    }
}

/// The operator product expansion `a(z, z̄) b(w, w̄)`, bilinear in both
/// arguments, with every coefficient located at `(w, w̄)`.
///
/// `depth` caps the Taylor order of the uncontracted fields of `a`. Entry
/// `(p, q)` is complete whenever `depth` is at least the highest pole order
/// of the product minus `p` (and likewise for `q`); all pole entries of
/// bilinear products are complete from `depth = 1`.
pub fn ope(a: &OperatorExpr, b: &OperatorExpr, depth: u32) -> Result<LaurentOPE, ExprError> {
    let pairs: Vec<_> = a.terms().flat_map(|ta| b.terms().map(move |tb| (ta, tb))).collect();
    let emitted: Vec<Emitted> =
        pairs.par_iter().map(|((ma, ca), (mb, cb))| ope_monomials(ma, ca, mb, cb, depth)).collect::<Result<_, _>>()?;
    let mut acc: BTreeMap<(u32, u32), OperatorExpr> = BTreeMap::new();
    for batch in emitted {
        for (key, m, c) in batch {
            acc.entry(key).or_default().add_canonical(m, c);
        }
    }
    acc.retain(|_, e| !e.is_zero());
    Ok(LaurentOPE { entries: acc, depth })
}

/// Entry `(p, q)` of an expansion; empty if absent.
pub fn pole_coeff(l: &LaurentOPE, p: u32, q: u32) -> OperatorExpr {
    l.get(p, q)
}

/// Point-splitting normal product `(a b)(w) = lim [a(z) b(w) - poles]`, the
/// `(0, 0)` entry of the full expansion.
pub fn normal_product(a: &OperatorExpr, b: &OperatorExpr) -> Result<OperatorExpr, ExprError> {
    Ok(ope(a, b, u32::MAX)?.get(0, 0))
}

/// Checks `a(z) b(w) = (-1)^{|a||b|} b(w) a(z)` on every pole entry: the
/// expansion of `b a` is continued to `(w-z)` and its coefficients are
/// re-expanded about `w`. `depth` is raised to the highest possible pole
/// order so that every compared entry is complete.
pub fn graded_symmetry_check(a: &OperatorExpr, b: &OperatorExpr, depth: u32) -> Result<bool, ExprError> {
    let a_odd = a.has_parity(true);
    let b_odd = b.has_parity(true);
    assert!(
        (a_odd || a.has_parity(false)) && (b_odd || b.has_parity(false)),
        "graded symmetry needs homogeneous parity"
    );
    let depth = depth.max(a.pole_bound() + b.pole_bound());
    let ab = ope(a, b, depth)?;
    let ba = ope(b, a, depth)?;
    let exchange = if a_odd && b_odd { -RatN::one() } else { RatN::one() };
    let (pa, qa) = ab.max_pole();
    let (pb, qb) = ba.max_pole();
    let (pmax, qmax) = (pa.max(pb), qa.max(qb));
    for p in 0..=pmax {
        for q in 0..=qmax {
            if p == 0 && q == 0 {
                continue;
            }
            let mut rhs = OperatorExpr::zero();
            for k in 0..=(pmax - p) {
                for l in 0..=(qmax - q) {
                    let c = ba.get(p + k, q + l);
                    if c.is_zero() {
                        continue;
                    }
                    let shifted = c.derivative_n(Chirality::Holo, k).derivative_n(Chirality::Anti, l);
                    let sign = if (p + k + q + l) % 2 == 0 { 1 } else { -1 };
                    let w = Rational::new(sign.into(), (factorial(k) * factorial(l)).to_integer());
                    rhs.add_assign(&shifted.scale(&RatN::from_rational(w)));
                }
            }
            if ab.get(p, q) != rhs.scale(&exchange) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::Charge::{Minus, Plus};
    use crate::expr::DeltaFactor;

    fn field(f: FieldSymbol) -> OperatorExpr {
        OperatorExpr::field(f)
    }

    #[test]
    fn fermion_pair_single_pole() {
        let l = ope(&field(FieldSymbol::psi(Minus, "i")), &field(FieldSymbol::psi(Plus, "j")), 2).unwrap();
        let expected = OperatorExpr::product(vec![], vec![DeltaFactor::new("i", "j")], RatN::one()).unwrap();
        assert_eq!(l.get(1, 0), expected);
        assert_eq!(l.max_pole(), (1, 0));
    }

    #[test]
    fn like_charges_do_not_contract() {
        let a = field(FieldSymbol::psi(Plus, "i"));
        let b = field(FieldSymbol::psi(Plus, "j"));
        let l = ope(&a, &b, 2).unwrap();
        assert!(l.is_regular());
        assert_eq!(l.get(0, 0), a.mul_formal(&b).unwrap());
        assert!(pole_coeff(&l, 1, 0).is_zero());
    }

    #[test]
    fn ghost_propagator_signs() {
        let bp = FieldSymbol::beta(Plus, 1u32);
        let bm = FieldSymbol::beta(Minus, 1u32);
        assert_eq!(propagator(&bp, &bm), Some((1, 1)));
        assert_eq!(propagator(&bm, &bp), Some((-1, 1)));
        assert_eq!(propagator(&FieldSymbol::psi(Minus, 1u32), &FieldSymbol::psi(Plus, 1u32)), Some((1, 1)));
        assert_eq!(propagator(&FieldSymbol::psi(Plus, 1u32), &FieldSymbol::psi(Minus, 1u32)), Some((1, 1)));
        assert_eq!(propagator(&bp, &bp), None);
        assert_eq!(propagator(&FieldSymbol::psi(Plus, 1u32), &bm), None);
        assert_eq!(propagator(&bp, &bm.mirror()), None);
    }

    #[test]
    fn derivative_raises_pole_with_sign() {
        let d = FieldSymbol::psi(Minus, "i").with_deriv(1);
        let l = ope(&field(d), &field(FieldSymbol::psi(Plus, "i")), 2).unwrap();
        assert_eq!(l.get(2, 0), OperatorExpr::scalar(-RatN::n()));
        assert_eq!(l.max_pole(), (2, 0));
    }

    #[test]
    fn pattern_count_formula() {
        for s in 0..5usize {
            for t in 0..5usize {
                let expected: usize =
                    (0..=s.min(t)).map(|k| binom(s, k) * binom(t, k) * (1..=k).product::<usize>()).sum();
                assert_eq!(contraction_patterns(s, t).len(), expected, "s={s} t={t}");
            }
        }
    }

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn identity_is_neutral_for_normal_product() {
        let a = OperatorExpr::product(
            vec![FieldSymbol::psi(Plus, "i"), FieldSymbol::beta(Minus, "i")],
            vec![],
            RatN::one(),
        )
        .unwrap();
        assert_eq!(normal_product(&OperatorExpr::identity(), &a).unwrap(), a);
        assert_eq!(normal_product(&a, &OperatorExpr::identity()).unwrap(), a);
    }

    #[test]
    fn concrete_two_field_normal_product() {
        // psi+^1(z) psi-^1(w) = 1/(z-w) + :psi+ psi-:(w) + O(z-w); the pole
        // has no operator remainder so the regular part is the formal product.
        let a = field(FieldSymbol::psi(Plus, 1u32));
        let b = field(FieldSymbol::psi(Minus, 1u32));
        let l = ope(&a, &b, 1).unwrap();
        assert_eq!(l.get(1, 0), OperatorExpr::identity());
        assert_eq!(l.get(0, 0), a.mul_formal(&b).unwrap());
    }

    #[test]
    fn fermion_pair_is_graded_symmetric() {
        let a = field(FieldSymbol::psi(Minus, "i"));
        let b = field(FieldSymbol::psi(Plus, "j"));
        assert!(graded_symmetry_check(&a, &b, 2).unwrap());
    }
}
