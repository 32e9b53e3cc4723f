//! Symmetry data: completeness relations for `su(N)` and `so(N)`, the
//! level-zero current bilocals built from them, and the `gl(1|1)` and
//! `osp(2|2)` current multiplets.

use std::fmt;

use crate::error::{Error, Result};
use crate::expr::{Charge, Chirality, DeltaFactor, FieldSymbol, FlavorIndex, OperatorExpr};
use crate::scalars::RatN;
use crate::wick::{normal_product, ope};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Su,
    So,
    Sp,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Su => "su",
            Family::So => "so",
            Family::Sp => "sp",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "su" => Ok(Family::Su),
            "so" => Ok(Family::So),
            "sp" => Ok(Family::Sp),
            other => Err(Error::Unsupported(format!("unknown family `{other}`"))),
        }
    }
}

/// Which delta pairing of `t^a_ij t^a_kl` a completeness term carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pairing {
    /// `δ_il δ_jk`
    IlJk,
    /// `δ_ij δ_kl`
    IjKl,
    /// `δ_ik δ_jl`
    IkJl,
}

impl Pairing {
    /// The two deltas for index slots `(i, j, k, l)`.
    pub fn deltas(self, idx: [&FlavorIndex; 4]) -> [DeltaFactor; 2] {
        let [i, j, k, l] = idx;
        let d = |a: &FlavorIndex, b: &FlavorIndex| DeltaFactor { left: a.clone(), right: b.clone() };
        match self {
            Pairing::IlJk => [d(i, l), d(j, k)],
            Pairing::IjKl => [d(i, j), d(k, l)],
            Pairing::IkJl => [d(i, k), d(j, l)],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompletenessTerm {
    pub coeff: RatN,
    pub pairing: Pairing,
}

/// A symmetry family packaged as its completeness relation and Casimir data
/// (normalization: longest root length squared equal to 2).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraSpec {
    pub family: Family,
    /// `Σ_a t^a_ij t^a_kl` as delta bilinears; `None` where the relation needs
    /// the symplectic form.
    pub completeness: Option<Vec<CompletenessTerm>>,
    /// `C(N)`: `tr(t^a t^b) = C(N) δ^{ab}`, the level of one fermion current.
    pub casimir_fund: RatN,
    /// `C₂(N)`: quadratic Casimir of the defining representation.
    pub casimir2_fund: RatN,
    /// `C₂(G)`: quadratic Casimir of the adjoint representation.
    pub casimir2_adjoint: RatN,
    /// Number of flavors the fields carry.
    pub flavors: RatN,
}

fn r(s: &str) -> RatN {
    s.parse().expect("static rational function")
}

impl AlgebraSpec {
    pub fn su() -> Self {
        let c2n = r("(N^2 - 1)/N");
        // C₂(N) N/(N²-1) (δ_il δ_jk - δ_ij δ_kl / N)
        let pref = &c2n * &r("N/(N^2 - 1)");
        AlgebraSpec {
            family: Family::Su,
            completeness: Some(vec![
                CompletenessTerm { coeff: pref.clone(), pairing: Pairing::IlJk },
                CompletenessTerm { coeff: -&(&pref * &r("1/N")), pairing: Pairing::IjKl },
            ]),
            casimir_fund: RatN::one(),
            casimir2_fund: c2n,
            casimir2_adjoint: r("2*N"),
            flavors: RatN::n(),
        }
    }

    pub fn so() -> Self {
        let c2n = r("N - 1");
        // C₂(N)/(N-1) (δ_il δ_jk - δ_ik δ_jl)
        let pref = &c2n * &r("1/(N - 1)");
        AlgebraSpec {
            family: Family::So,
            completeness: Some(vec![
                CompletenessTerm { coeff: pref.clone(), pairing: Pairing::IlJk },
                CompletenessTerm { coeff: -&pref, pairing: Pairing::IkJl },
            ]),
            casimir_fund: RatN::from_int(2),
            casimir2_fund: c2n,
            casimir2_adjoint: r("2*(N - 2)"),
            flavors: RatN::n(),
        }
    }

    /// `sp(2N)` with `2N` flavors. Only the constants are symbolic; the
    /// completeness relation involves the symplectic form and is handled by
    /// the explicit-matrix oracle.
    pub fn sp() -> Self {
        AlgebraSpec {
            family: Family::Sp,
            completeness: None,
            casimir_fund: RatN::one(),
            casimir2_fund: r("(2*N + 1)/2"),
            casimir2_adjoint: r("2*(N + 1)"),
            flavors: r("2*N"),
        }
    }

    pub fn for_family(family: Family) -> Self {
        match family {
            Family::Su => AlgebraSpec::su(),
            Family::So => AlgebraSpec::so(),
            Family::Sp => AlgebraSpec::sp(),
        }
    }

    pub fn completeness_terms(&self) -> Result<&[CompletenessTerm]> {
        self.completeness
            .as_deref()
            .ok_or_else(|| Error::Unsupported(format!("no symbolic completeness relation for {}", self.family)))
    }

    /// `Σ_a t^a_ij t^a_kl` as an expression in deltas with the given index
    /// slots.
    pub fn completeness_expr(&self, idx: [&FlavorIndex; 4]) -> Result<OperatorExpr> {
        let mut out = OperatorExpr::zero();
        for term in self.completeness_terms()? {
            out.add_raw(vec![], term.pairing.deltas(idx).to_vec(), term.coeff.clone())?;
        }
        Ok(out)
    }
}

/// Which fields enter the currents `ψ₋ t ψ₊ + β₋ t β₊`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpeciesSel {
    Fermion,
    Ghost,
    Both,
}

/// `ψ₋^i ψ₊^j + β₋^i β₊^j` (or one half of it), with `i`, `j` left free.
pub fn flavor_bilinear(i: impl Into<FlavorIndex>, j: impl Into<FlavorIndex>, species: SpeciesSel) -> OperatorExpr {
    let (i, j) = (i.into(), j.into());
    let mut out = OperatorExpr::zero();
    if species != SpeciesSel::Ghost {
        out.add_raw(
            vec![FieldSymbol::psi(Charge::Minus, i.clone()), FieldSymbol::psi(Charge::Plus, j.clone())],
            vec![],
            RatN::one(),
        )
        .expect("bilinear");
    }
    if species != SpeciesSel::Fermion {
        out.add_raw(vec![FieldSymbol::beta(Charge::Minus, i), FieldSymbol::beta(Charge::Plus, j)], vec![], RatN::one())
            .expect("bilinear");
    }
    out
}

/// `Σ_a L^a(z) L^a(w)` with the generator sum replaced by the completeness
/// relation: a list of `coeff * left(z) right(w)` whose flavor indices are
/// shared between the two sides.
#[derive(Clone, Debug)]
pub struct Bilocal {
    pub terms: Vec<(RatN, OperatorExpr, OperatorExpr)>,
}

impl Bilocal {
    /// Point-split normal product of the bilocal.
    pub fn normal_product(&self) -> Result<OperatorExpr> {
        let mut out = OperatorExpr::zero();
        for (c, left, right) in &self.terms {
            out.add_assign(&normal_product(left, right)?.scale(c));
        }
        Ok(out)
    }

    /// Full expansion of the bilocal as `z → w`.
    pub fn ope(&self, depth: u32) -> Result<crate::wick::LaurentOPE> {
        let mut out = crate::wick::LaurentOPE::default();
        for (c, left, right) in &self.terms {
            out.add_assign(&ope(left, right, depth)?.scale(c));
        }
        Ok(out)
    }

    /// `Σ_a L^a L̄^a`: the right-hand factor is mirrored and juxtaposed.
    pub fn left_right(&self) -> Result<OperatorExpr> {
        let mut out = OperatorExpr::zero();
        for (c, left, right) in &self.terms {
            out.add_assign(&left.mul_formal(&right.mirror())?.scale(c));
        }
        Ok(out)
    }
}

/// `Σ_a L^a(z) L^a(w)` for the given family and species.
pub fn casimir_bilocal(spec: &AlgebraSpec, species: SpeciesSel) -> Result<Bilocal> {
    let mut terms = Vec::new();
    for term in spec.completeness_terms()? {
        // t^a_ij t^a_kl O_ij(z) O_kl(w) with the deltas applied.
        let (left, right) = match term.pairing {
            Pairing::IlJk => (flavor_bilinear("i", "j", species), flavor_bilinear("j", "i", species)),
            Pairing::IjKl => (flavor_bilinear("i", "i", species), flavor_bilinear("j", "j", species)),
            Pairing::IkJl => (flavor_bilinear("i", "j", species), flavor_bilinear("i", "j", species)),
        };
        terms.push((term.coeff.clone(), left, right));
    }
    Ok(Bilocal { terms })
}

/// `Σ_a t^a_kl L^a`: the level-zero currents projected onto the algebra, with
/// `k`, `l` free. Every `L^a` is a combination of these.
pub fn projected_current(spec: &AlgebraSpec, species: SpeciesSel, k: &str, l: &str) -> Result<OperatorExpr> {
    let mut out = OperatorExpr::zero();
    for term in spec.completeness_terms()? {
        let piece = match term.pairing {
            Pairing::IlJk => flavor_bilinear(l, k, species),
            Pairing::IjKl => flavor_bilinear("i", "i", species).mul_formal(&OperatorExpr::product(
                vec![],
                vec![DeltaFactor::new(k, l)],
                RatN::one(),
            )?)?,
            Pairing::IkJl => flavor_bilinear(k, l, species),
        };
        out.add_assign(&piece.scale(&term.coeff));
    }
    Ok(out)
}

/// A named list of currents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurrentMultiplet {
    pub name: String,
    pub members: Vec<(String, OperatorExpr)>,
}

impl CurrentMultiplet {
    pub fn get(&self, name: &str) -> Option<&OperatorExpr> {
        self.members.iter().find(|(n, _)| n == name).map(|(_, e)| e)
    }

    /// Panics on an unknown member name.
    pub fn member(&self, name: &str) -> &OperatorExpr {
        self.get(name).unwrap_or_else(|| panic!("multiplet {} has no member {name}", self.name))
    }

    pub fn mirror(&self) -> CurrentMultiplet {
        CurrentMultiplet {
            name: format!("{}-bar", self.name),
            members: self.members.iter().map(|(n, e)| (n.clone(), e.mirror())).collect(),
        }
    }
}

fn pair(a: FieldSymbol, b: FieldSymbol, c: i64) -> OperatorExpr {
    OperatorExpr::product(vec![a, b], vec![], RatN::from_int(c)).expect("flavor singlet bilinear")
}

/// `H = ψ₊ψ₋`, `J = β₊β₋`, `S± = ±ψ±β∓`, summed over flavors.
pub fn gl11_multiplet() -> CurrentMultiplet {
    use Charge::{Minus, Plus};
    let (p, b) = (FieldSymbol::psi, FieldSymbol::beta);
    CurrentMultiplet {
        name: "gl(1|1)".into(),
        members: vec![
            ("H".into(), pair(p(Plus, "i"), p(Minus, "i"), 1)),
            ("J".into(), pair(b(Plus, "i"), b(Minus, "i"), 1)),
            ("S+".into(), pair(p(Plus, "i"), b(Minus, "i"), 1)),
            ("S-".into(), pair(p(Minus, "i"), b(Plus, "i"), -1)),
        ],
    }
}

/// The `gl(1|1)` currents plus `J± = β∓β∓` and `Ŝ± = ψ∓β∓`.
pub fn osp22_multiplet() -> CurrentMultiplet {
    use Charge::{Minus, Plus};
    let (p, b) = (FieldSymbol::psi, FieldSymbol::beta);
    let mut m = gl11_multiplet();
    m.name = "osp(2|2)".into();
    m.members.extend([
        ("J+".into(), pair(b(Minus, "i"), b(Minus, "i"), 1)),
        ("J-".into(), pair(b(Plus, "i"), b(Plus, "i"), 1)),
        ("Shat+".into(), pair(p(Minus, "i"), b(Minus, "i"), 1)),
        ("Shat-".into(), pair(p(Plus, "i"), b(Plus, "i"), 1)),
    ]);
    m
}

/// Multiplet member by its conventional symbol (`H`, `J`, `S+`, `S-`, `J+`,
/// `J-`, `Shat+`, `Shat-`).
pub fn named_current(name: &str) -> Option<OperatorExpr> {
    osp22_multiplet().get(name).cloned()
}

/// A multiplet member and its nonzero pole entries.
pub type PoleFailure = (String, Vec<((u32, u32), OperatorExpr)>);

/// Members of `k` whose OPE with the projected level-zero currents has a
/// nonzero pole, together with the offending expansion entries.
pub fn commutation_failures(spec: &AlgebraSpec, k: &CurrentMultiplet) -> Result<Vec<PoleFailure>> {
    let l = projected_current(spec, SpeciesSel::Both, "a", "b")?;
    let mut failures = Vec::new();
    for (name, member) in &k.members {
        let expansion = ope(&l, member, 1)?;
        let poles: Vec<_> =
            expansion.entries().filter(|(key, _)| **key != (0, 0)).map(|(key, e)| (*key, e.clone())).collect();
        if !poles.is_empty() {
            failures.push((name.clone(), poles));
        }
    }
    Ok(failures)
}

/// True iff every level-zero current `L^a` has a pole-free OPE with every
/// member of `k`.
pub fn check_mutual_commute(spec: &AlgebraSpec, k: &CurrentMultiplet) -> Result<bool> {
    Ok(commutation_failures(spec, k)?.is_empty())
}

/// Outcome of checking that each current is a weight-one primary.
#[derive(Clone, Debug, Default)]
pub struct WeightOneReport {
    /// Members failing the double- or single-pole test, or carrying operator
    /// content in a higher pole.
    pub failures: Vec<String>,
    /// Scalar third-order poles (anomaly terms), which do not spoil primarity
    /// of the current itself but are reported.
    pub third_order_scalars: Vec<(String, RatN)>,
}

impl WeightOneReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn weight_one_report(t: &OperatorExpr, k: &CurrentMultiplet) -> Result<WeightOneReport> {
    let mut report = WeightOneReport::default();
    for (name, member) in &k.members {
        let expansion = ope(t, member, 2)?;
        let mut ok = expansion.get(2, 0) == *member && expansion.get(1, 0) == member.derivative(Chirality::Holo);
        for (&(p, q), e) in expansion.entries() {
            if q > 0 || (p >= 3 && !e.operator_part().is_zero()) {
                ok = false;
            }
            if p == 3 && !e.scalar_part().is_zero() {
                report.third_order_scalars.push((name.clone(), e.scalar_part()));
            }
        }
        if !ok {
            report.failures.push(name.clone());
        }
    }
    Ok(report)
}

/// `T K_m ~ K_m/(z-w)² + ∂K_m/(z-w)` for every member.
pub fn weight_one_primary_check(t: &OperatorExpr, k: &CurrentMultiplet) -> Result<bool> {
    Ok(weight_one_report(t, k)?.passed())
}

/// True when `t(z) K_m(w)` is regular for every member.
pub fn all_poles_vanish(t: &OperatorExpr, k: &CurrentMultiplet) -> Result<bool> {
    for (_, member) in &k.members {
        if !ope(t, member, 2)?.is_regular() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn su_completeness_reduces_to_unit_prefactor() {
        let su = AlgebraSpec::su();
        let terms = su.completeness_terms().unwrap();
        assert!(terms[0].coeff.is_one());
        assert_eq!(terms[1].coeff, r("-1/N"));
    }

    #[test]
    fn completeness_traces() {
        let names = ["i", "j", "k", "l"].map(FlavorIndex::from);
        for spec in [AlgebraSpec::su(), AlgebraSpec::so()] {
            // contract j with k: C₂(N) δ_il
            let casimir = spec.completeness_expr([&names[0], &names[1], &names[1], &names[3]]).unwrap();
            let expected =
                OperatorExpr::product(vec![], vec![DeltaFactor::new("i", "l")], spec.casimir2_fund.clone()).unwrap();
            assert_eq!(casimir, expected, "{}", spec.family);
            // contract i with j: traceless / antisymmetric
            let trace = spec.completeness_expr([&names[0], &names[0], &names[2], &names[3]]).unwrap();
            assert!(trace.is_zero(), "{}", spec.family);
        }
    }

    #[test]
    fn sp_has_no_symbolic_bilocal() {
        assert!(matches!(casimir_bilocal(&AlgebraSpec::sp(), SpeciesSel::Both), Err(Error::Unsupported(_))));
    }

    #[test]
    fn named_currents() {
        for n in ["H", "J", "S+", "S-", "J+", "J-", "Shat+", "Shat-"] {
            assert!(named_current(n).is_some(), "{n}");
        }
        assert!(named_current("K").is_none());
    }
}
