//! Stress tensors of the free theory and of its current-algebra sectors,
//! together with the quantities read off from them: central charges,
//! conformal weights, the kinetic coefficient `κ`, density-of-states
//! exponents and one-loop beta functions.

use std::fmt;

use crate::algebras::{
    casimir_bilocal, gl11_multiplet, osp22_multiplet, AlgebraSpec, CurrentMultiplet, Family, SpeciesSel,
};
use crate::error::{Error, Result};
use crate::expr::{Charge, Chirality, FieldSymbol, FlavorIndex, OperatorExpr};
use crate::linalg::solve_in_span;
use crate::scalars::{RatN, Rational};
use crate::wick::{normal_product, ope};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StressLabel {
    Free,
    Su0,
    So0,
    Gl11,
    Osp22,
}

impl StressLabel {
    pub const ALL: [StressLabel; 5] =
        [StressLabel::Free, StressLabel::Su0, StressLabel::So0, StressLabel::Gl11, StressLabel::Osp22];

    pub fn name(self) -> &'static str {
        match self {
            StressLabel::Free => "free",
            StressLabel::Su0 => "su0",
            StressLabel::So0 => "so0",
            StressLabel::Gl11 => "gl11",
            StressLabel::Osp22 => "osp22",
        }
    }
}

impl fmt::Display for StressLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for StressLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        StressLabel::ALL
            .into_iter()
            .find(|l| l.name() == s)
            .ok_or_else(|| Error::Unsupported(format!("unknown stress tensor `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StressTensor {
    pub label: StressLabel,
    pub expr: OperatorExpr,
}

fn r(s: &str) -> RatN {
    s.parse().expect("static rational function")
}

fn field(species_beta: bool, charge: Charge, i: impl Into<FlavorIndex>, deriv: u32) -> FieldSymbol {
    let f = if species_beta { FieldSymbol::beta(charge, i) } else { FieldSymbol::psi(charge, i) };
    f.with_deriv(deriv)
}

/// The four kinetic bilinears with the signs of the free stress tensor,
/// `ψ₋∂ψ₊`, `ψ₊∂ψ₋`, `β₋∂β₊`, `-β₊∂β₋`.
fn kinetic_pieces() -> [OperatorExpr; 4] {
    kinetic_pieces_at(FlavorIndex::from("i"))
}

fn kinetic_pieces_at(i: FlavorIndex) -> [OperatorExpr; 4] {
    use Charge::{Minus, Plus};
    let piece = |beta: bool, a: Charge, b: Charge, sign: i64| {
        OperatorExpr::product(
            vec![field(beta, a, i.clone(), 0), field(beta, b, i.clone(), 1)],
            vec![],
            RatN::from_int(sign),
        )
        .expect("kinetic bilinear")
    };
    [
        piece(false, Minus, Plus, 1),
        piece(false, Plus, Minus, 1),
        piece(true, Minus, Plus, 1),
        piece(true, Plus, Minus, -1),
    ]
}

/// `ψ₋∂ψ₊ + ψ₊∂ψ₋ + β₋∂β₊ - β₊∂β₋`, summed over flavors.
pub fn kinetic_block() -> OperatorExpr {
    kinetic_pieces().iter().fold(OperatorExpr::zero(), |acc, p| acc.add(p))
}

fn np(a: &OperatorExpr, b: &OperatorExpr) -> Result<OperatorExpr> {
    Ok(normal_product(a, b)?)
}

/// `-1/(2N) (JJ - HH + S₊S₋ - S₋S₊) + 1/(2N²) (H-J)(H-J)`.
fn gl11_tensor(k: &CurrentMultiplet) -> Result<OperatorExpr> {
    let (h, j, sp, sm) = (k.member("H"), k.member("J"), k.member("S+"), k.member("S-"));
    let first = np(j, j)?.sub(&np(h, h)?).add(&np(sp, sm)?).sub(&np(sm, sp)?);
    let e = h.sub(j);
    Ok(first.scale(&r("-1/(2*N)")).add(&np(&e, &e)?.scale(&r("1/(2*N^2)"))))
}

/// `1/(2(2-N)) [JJ - HH - ½(J₊J₋ + J₋J₊) + (S₊S₋ - S₋S₊) + (Ŝ₋Ŝ₊ - Ŝ₊Ŝ₋)]`.
fn osp22_tensor(k: &CurrentMultiplet) -> Result<OperatorExpr> {
    let m = |n| k.member(n);
    let mut casimir = np(m("J"), m("J"))?.sub(&np(m("H"), m("H"))?);
    let jj = np(m("J+"), m("J-"))?.add(&np(m("J-"), m("J+"))?);
    casimir = casimir.sub(&jj.scale(&RatN::frac(1, 2)));
    casimir = casimir.add(&np(m("S+"), m("S-"))?).sub(&np(m("S-"), m("S+"))?);
    casimir = casimir.add(&np(m("Shat-"), m("Shat+"))?).sub(&np(m("Shat+"), m("Shat-"))?);
    Ok(casimir.scale(&r("1/(2*(2 - N))")))
}

/// `Σ_a :L^a L^a: / C₂(G)`.
fn level_zero_tensor(spec: &AlgebraSpec) -> Result<OperatorExpr> {
    let casimir = casimir_bilocal(spec, SpeciesSel::Both)?.normal_product()?;
    Ok(casimir.scale(&spec.casimir2_adjoint.recip()?))
}

pub fn build_t(label: StressLabel) -> Result<StressTensor> {
    let expr = match label {
        StressLabel::Free => kinetic_block().scale(&RatN::frac(-1, 2)),
        StressLabel::Su0 => level_zero_tensor(&AlgebraSpec::su())?,
        StressLabel::So0 => level_zero_tensor(&AlgebraSpec::so())?,
        StressLabel::Gl11 => gl11_tensor(&gl11_multiplet())?,
        StressLabel::Osp22 => osp22_tensor(&osp22_multiplet())?,
    };
    Ok(StressTensor { label, expr })
}

/// The super sector and level-zero sector splitting the free tensor.
pub fn decomposition_labels(family: Family) -> Result<(StressLabel, StressLabel)> {
    match family {
        Family::Su => Ok((StressLabel::Gl11, StressLabel::Su0)),
        Family::So => Ok((StressLabel::Osp22, StressLabel::So0)),
        Family::Sp => Err(Error::Unsupported("the sp decomposition is checked numerically".into())),
    }
}

/// `T_free - T_super - T_level0`; empty iff the decomposition holds.
pub fn decomposition_residual(family: Family) -> Result<OperatorExpr> {
    let (sup, bos) = decomposition_labels(family)?;
    Ok(build_t(StressLabel::Free)?.expr.sub(&build_t(sup)?.expr).sub(&build_t(bos)?.expr))
}

pub fn verify_decomposition(family: Family) -> Result<bool> {
    Ok(decomposition_residual(family)?.is_zero())
}

/// Twice the scalar part of the fourth-order pole of `T T`.
pub fn central_charge(t: &StressTensor) -> Result<RatN> {
    Ok(ope(&t.expr, &t.expr, 4)?.get(4, 0).scalar_part().scale(&Rational::from_integer(2.into())))
}

/// Coefficient `h` in `T(z) φ(w) ~ h φ(w)/(z-w)² + …`.
pub fn conformal_weight(t: &StressTensor, field: &OperatorExpr) -> Result<RatN> {
    let double = ope(&t.expr, field, 2)?.get(2, 0);
    let (m, c0) =
        field.terms().next().ok_or_else(|| Error::Unsupported("conformal weight of the zero operator".into()))?;
    let h = double.coefficient(m).checked_div(c0)?;
    if !double.sub(&field.scale(&h)).is_zero() {
        return Err(Error::NotPrimary { double_pole: double });
    }
    Ok(h)
}

/// `κ` in `T = -κ (ψ₋∂ψ₊ + ψ₊∂ψ₋ + β₋∂β₊ - β₊∂β₋) + quartic`.
pub fn kappa_kinetic(t: &StressTensor) -> Result<RatN> {
    kappa_of(&t.expr)
}

/// `κ` of a flavor-expanded tensor: the kinetic block must carry the same
/// coefficient for every flavor `1..=flavors`.
pub fn kappa_kinetic_of_concrete(t: &OperatorExpr, flavors: u32) -> Result<RatN> {
    let mut found = Vec::new();
    for i in 1..=flavors {
        found.extend(kinetic_coefficients(t, &kinetic_pieces_at(FlavorIndex::Concrete(i))));
    }
    consistent_kappa(found)
}

fn kappa_of(t: &OperatorExpr) -> Result<RatN> {
    consistent_kappa(kinetic_coefficients(t, &kinetic_pieces()))
}

fn consistent_kappa(found: Vec<RatN>) -> Result<RatN> {
    if found.iter().any(|k| k != &found[0]) {
        return Err(Error::InconsistentKinetic { found: found.iter().map(|k| k.to_string()).collect() });
    }
    Ok(found[0].clone())
}

fn kinetic_coefficients(t: &OperatorExpr, pieces: &[OperatorExpr; 4]) -> Vec<RatN> {
    pieces
        .iter()
        .map(|p| {
            let (m, s) = p.terms().next().expect("kinetic piece is one monomial");
            -&t.coefficient(m).checked_div(s).expect("nonzero sign")
        })
        .collect()
}

/// `T` minus its kinetic block.
pub fn quartic_part(t: &StressTensor) -> Result<OperatorExpr> {
    let kappa = kappa_kinetic(t)?;
    Ok(t.expr.add(&kinetic_block().scale(&kappa)))
}

/// `ρ = ψ̄₋ψ₊ + ψ₋ψ̄₊ + β̄₋β₊ + β₋β̄₊`, summed over flavors.
pub fn density_operator() -> OperatorExpr {
    use Charge::{Minus, Plus};
    let mut rho = OperatorExpr::zero();
    for beta in [false, true] {
        let f = |c| field(beta, c, "i", 0);
        let bar = |c| field(beta, c, "i", 0).mirror();
        rho.add_raw(vec![bar(Minus), f(Plus)], vec![], RatN::one()).expect("density bilinear");
        rho.add_raw(vec![f(Minus), bar(Plus)], vec![], RatN::one()).expect("density bilinear");
    }
    rho
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct DosResult {
    pub family: Family,
    pub kappa: RatN,
    pub gamma: RatN,
    pub nu: RatN,
}

impl DosResult {
    pub fn from_kappa(family: Family, kappa: RatN) -> Result<DosResult> {
        let gamma = &kappa * &RatN::from_int(2);
        let nu = gamma.checked_div(&(&RatN::from_int(2) - &gamma))?;
        Ok(DosResult { family, kappa, gamma, nu })
    }
}

/// The stress tensor of the supercurrent sector surviving the level-zero
/// sector: `gl(1|1)_N` for `su`, `osp(2|2)_N` for `so`.
pub fn super_sector(family: Family) -> Result<StressTensor> {
    match family {
        Family::Su => build_t(StressLabel::Gl11),
        Family::So | Family::Sp => build_t(StressLabel::Osp22),
    }
}

/// `Γ` and `ν` from the kinetic coefficient of the super sector. For `sp`
/// the `osp(2|2)` level continues from `N` to `-2N`.
pub fn dos_exponents(family: Family) -> Result<DosResult> {
    let kappa = kappa_kinetic(&super_sector(family)?)?;
    let kappa = match family {
        Family::Sp => kappa.substitute_linear(&Rational::from_integer((-2).into()), &Rational::from_integer(0.into())),
        _ => kappa,
    };
    DosResult::from_kappa(family, kappa)
}

/// `κ` read from `T(z) ρ(w, w̄) ~ κ ρ/(z-w)²` (holomorphic) or from the
/// mirrored tensor (antiholomorphic). Errors if the double pole is not
/// proportional to `ρ`.
pub fn kappa_from_density(t: &StressTensor, chirality: Chirality) -> Result<RatN> {
    let rho = density_operator();
    let double = match chirality {
        Chirality::Holo => ope(&t.expr, &rho, 2)?.get(2, 0),
        Chirality::Anti => ope(&t.expr.mirror(), &rho, 2)?.get(0, 2),
    };
    let (m, c0) = rho.terms().next().expect("ρ is nonzero");
    let kappa = double.coefficient(m).checked_div(c0)?;
    if !double.sub(&rho.scale(&kappa)).is_zero() {
        return Err(Error::NotPrimary { double_pole: double });
    }
    Ok(kappa)
}

/// One-loop couplings `β_k = -Σ_ij C^k_ij g_i g_j` for
/// `O_i(z, z̄) O_j(0) ~ C^k_ij O_k / (z z̄)`.
#[derive(Clone, Debug)]
pub struct BetaSystem {
    pub family: Family,
    pub couplings: Vec<String>,
    pub operators: Vec<OperatorExpr>,
    /// `coefficients[k][i][j] = C^k_ij`.
    pub coefficients: Vec<Vec<Vec<RatN>>>,
}

impl BetaSystem {
    pub fn index(&self, coupling: &str) -> Option<usize> {
        self.couplings.iter().position(|c| c == coupling)
    }

    pub fn structure_constant(&self, k: &str, i: &str, j: &str) -> RatN {
        let (k, i, j) = (self.index(k).unwrap(), self.index(i).unwrap(), self.index(j).unwrap());
        self.coefficients[k][i][j].clone()
    }

    /// Coefficients of `g_i g_j` (`i ≤ j`) in `β_k`, zero entries omitted.
    pub fn quadratic_terms(&self, k: usize) -> Vec<((usize, usize), RatN)> {
        let n = self.couplings.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i..n {
                let mut c = -&self.coefficients[k][i][j];
                if i != j {
                    c = &c - &self.coefficients[k][j][i];
                }
                if !c.is_zero() {
                    out.push(((i, j), c));
                }
            }
        }
        out
    }

    /// The coefficient of `g_i g_j` in `β_k`, by coupling name.
    pub fn beta_coefficient(&self, k: &str, i: &str, j: &str) -> RatN {
        let (k, i, j) = (self.index(k).unwrap(), self.index(i).unwrap(), self.index(j).unwrap());
        let (i, j) = (i.min(j), i.max(j));
        self.quadratic_terms(k).into_iter().find(|(p, _)| *p == (i, j)).map(|(_, c)| c).unwrap_or_else(RatN::zero)
    }

    pub fn render(&self) -> String {
        let mut lines = Vec::new();
        for k in 0..self.couplings.len() {
            let terms = self.quadratic_terms(k);
            let mut rhs = String::new();
            for (n, ((i, j), c)) in terms.iter().enumerate() {
                let mono = if i == j {
                    format!("{}^2", self.couplings[*i])
                } else {
                    format!("{}*{}", self.couplings[*i], self.couplings[*j])
                };
                let (neg, mag) = if c.is_negative_leading() { (true, -c) } else { (false, c.clone()) };
                let sep = match (n, neg) {
                    (0, false) => "",
                    (0, true) => "-",
                    (_, false) => " + ",
                    (_, true) => " - ",
                };
                let coeff = if mag.is_one() {
                    String::new()
                } else if mag.as_rational().is_some_and(|q| q.is_integer()) {
                    format!("{mag}*")
                } else {
                    format!("({mag})*")
                };
                rhs.push_str(&format!("{sep}{coeff}{mono}"));
            }
            if rhs.is_empty() {
                rhs.push('0');
            }
            lines.push(format!("beta_{} = {}", self.couplings[k], rhs));
        }
        lines.join("\n")
    }
}

impl fmt::Display for BetaSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// `Σ_m c_m A_m Ā_m'` as formal products of holomorphic currents with
/// mirrored ones.
fn left_right(pairs: &[(RatN, &OperatorExpr, &OperatorExpr)]) -> Result<OperatorExpr> {
    let mut out = OperatorExpr::zero();
    for (c, a, b) in pairs {
        out.add_assign(&a.mul_formal(&b.mirror())?.scale(c));
    }
    Ok(out)
}

/// The left-right perturbations `(name, operator)` for a family.
pub fn perturbations(family: Family) -> Result<Vec<(String, OperatorExpr)>> {
    let one = RatN::one;
    let neg = || -RatN::one();
    let g = casimir_bilocal(&AlgebraSpec::for_family(family), SpeciesSel::Both)?.left_right()?;
    match family {
        Family::Su => {
            let k = gl11_multiplet();
            let m = |n| k.member(n);
            let k1 = left_right(&[
                (one(), m("J"), m("J")),
                (neg(), m("H"), m("H")),
                (one(), m("S+"), m("S-")),
                (neg(), m("S-"), m("S+")),
            ])?;
            let e = m("H").sub(m("J"));
            let k2 = left_right(&[(neg(), &e, &e)])?;
            Ok(vec![("g".into(), g), ("g1'".into(), k1), ("g2'".into(), k2)])
        }
        Family::So => {
            let k = osp22_multiplet();
            let m = |n| k.member(n);
            let half = RatN::frac(1, 2);
            let kk = left_right(&[
                (one(), m("J"), m("J")),
                (neg(), m("H"), m("H")),
                (-&half, m("J+"), m("J-")),
                (-&half, m("J-"), m("J+")),
                (one(), m("S+"), m("S-")),
                (neg(), m("S-"), m("S+")),
                (one(), m("Shat-"), m("Shat+")),
                (neg(), m("Shat+"), m("Shat-")),
            ])?
            .neg();
            Ok(vec![("g".into(), g), ("g'".into(), kk)])
        }
        Family::Sp => Err(Error::Unsupported("no symbolic sp perturbation".into())),
    }
}

/// `C^k_ij` from the `1/(z z̄)` entries of the pairwise expansions, resolved
/// in the perturbation basis.
pub fn beta_one_loop(family: Family) -> Result<BetaSystem> {
    let ops = perturbations(family)?;
    let basis: Vec<OperatorExpr> = ops.iter().map(|(_, o)| o.clone()).collect();
    let n = ops.len();
    let mut coefficients = vec![vec![vec![RatN::zero(); n]; n]; n];
    for i in 0..n {
        for j in 0..n {
            let residue = ope(&basis[i], &basis[j], 1)?.get(1, 1).operator_part();
            let x = solve_in_span(&basis, &residue).ok_or(Error::OutsideBasis { residue })?;
            for (k, c) in x.into_iter().enumerate() {
                coefficients[k][i][j] = c;
            }
        }
    }
    Ok(BetaSystem {
        family,
        couplings: ops.into_iter().map(|(name, _)| name).collect(),
        operators: basis,
        coefficients,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras::weight_one_report;
    use crate::dsl::parse;

    const KINETIC: &str =
        "no(psi(-,i), d(psi(+,i))) + no(psi(+,i), d(psi(-,i))) + no(beta(-,i), d(beta(+,i))) - no(beta(+,i), d(beta(-,i)))";

    const SU_QUARTIC: &str = "(N - 1)*no(beta(+,i), beta(-,i), beta(+,j), beta(-,j)) \
        - (N + 1)*no(psi(+,i), psi(-,i), psi(+,j), psi(-,j)) \
        - 2*no(psi(-,i), psi(+,i), beta(-,j), beta(+,j)) \
        + 2*N*no(beta(+,i), psi(-,i), beta(-,j), psi(+,j))";

    const SO_QUARTIC: &str = "no(beta(+,i), beta(-,i), beta(+,j), beta(-,j)) \
        - no(beta(+,i), beta(+,i), beta(-,j), beta(-,j)) \
        - no(psi(+,i), psi(-,i), psi(+,j), psi(-,j)) \
        + 2*no(psi(-,i), beta(+,i), psi(+,j), beta(-,j)) \
        - 2*no(psi(-,i), beta(-,i), psi(+,j), beta(+,j))";

    fn explicit(kinetic: &str, quartic_prefactor: &str, quartic: &str) -> OperatorExpr {
        parse(&format!("({kinetic})*({KINETIC}) + ({quartic_prefactor})*({quartic})")).unwrap()
    }

    fn t(label: StressLabel) -> StressTensor {
        build_t(label).unwrap()
    }

    fn psi(c: Charge) -> OperatorExpr {
        OperatorExpr::field(FieldSymbol::psi(c, "i"))
    }

    #[test]
    fn free_tensor() {
        assert_eq!(t(StressLabel::Free).expr, parse(&format!("(-1/2)*({KINETIC})")).unwrap());
    }

    #[test]
    fn su_level_zero_matches_explicit_form() {
        assert_eq!(t(StressLabel::Su0).expr, explicit("(1 - N^2)/(2*N^2)", "1/(2*N^2)", SU_QUARTIC));
    }

    #[test]
    fn gl11_matches_explicit_form() {
        assert_eq!(t(StressLabel::Gl11).expr, explicit("-1/(2*N^2)", "-1/(2*N^2)", SU_QUARTIC));
    }

    #[test]
    fn so_level_zero_matches_explicit_form() {
        assert_eq!(t(StressLabel::So0).expr, explicit("(1 - N)/(2*(N - 2))", "1/(2*(N - 2))", SO_QUARTIC));
    }

    #[test]
    fn osp22_matches_explicit_form() {
        assert_eq!(t(StressLabel::Osp22).expr, explicit("1/(2*(N - 2))", "-1/(2*(N - 2))", SO_QUARTIC));
    }

    #[test]
    fn fermion_quartic_with_like_charges_vanishes() {
        assert!(parse("no(psi(+,i), psi(+,i), psi(-,j), psi(-,j))").unwrap().is_zero());
        assert!(!parse("no(beta(+,i), beta(+,i), beta(-,j), beta(-,j))").unwrap().is_zero());
    }

    #[test]
    fn decompositions_hold_and_mutation_is_caught() {
        for family in [Family::Su, Family::So] {
            assert!(verify_decomposition(family).unwrap());
        }
        let mut gl = t(StressLabel::Gl11).expr;
        gl.add_assign(&parse("(1/N)*no(psi(+,i), psi(-,i), beta(+,j), beta(-,j))").unwrap());
        let residual = t(StressLabel::Free).expr.sub(&gl).sub(&t(StressLabel::Su0).expr);
        assert_eq!(residual.len(), 1);
        assert!(verify_decomposition(Family::Sp).is_err());
    }

    #[test]
    fn central_charges_vanish() {
        for label in StressLabel::ALL {
            assert!(central_charge(&t(label)).unwrap().is_zero(), "{label}");
        }
    }

    #[test]
    fn weights() {
        let cases = [
            (StressLabel::Free, "1/2"),
            (StressLabel::Su0, "(N^2 - 1)/(2*N^2)"),
            (StressLabel::Gl11, "1/(2*N^2)"),
            (StressLabel::So0, "(N - 1)/(2*(N - 2))"),
            (StressLabel::Osp22, "1/(2*(2 - N))"),
        ];
        for (label, w) in cases {
            for c in [Charge::Plus, Charge::Minus] {
                assert_eq!(conformal_weight(&t(label), &psi(c)).unwrap(), r(w), "{label}");
            }
        }
        let beta = OperatorExpr::field(FieldSymbol::beta(Charge::Minus, "k"));
        assert_eq!(conformal_weight(&t(StressLabel::Gl11), &beta).unwrap(), r("1/(2*N^2)"));
    }

    #[test]
    fn composite_is_not_primary() {
        let h = parse("no(psi(+,i), psi(-,i))").unwrap();
        assert!(conformal_weight(&t(StressLabel::Su0), &parse("no(psi(+,i), d(psi(-,i)))").unwrap()).is_err());
        // H is a level-zero singlet
        assert!(conformal_weight(&t(StressLabel::Su0), &h).unwrap().is_zero());
    }

    #[test]
    fn kinetic_coefficients() {
        assert_eq!(kappa_kinetic(&t(StressLabel::Free)).unwrap(), RatN::frac(1, 2));
        assert_eq!(kappa_kinetic(&t(StressLabel::Gl11)).unwrap(), r("1/(2*N^2)"));
        assert_eq!(kappa_kinetic(&t(StressLabel::Osp22)).unwrap(), r("1/(2*(2 - N))"));
    }

    #[test]
    fn dos_rows() {
        let su = dos_exponents(Family::Su).unwrap();
        assert_eq!(su.gamma, r("1/N^2"));
        assert_eq!(su.nu.eval_int(2).unwrap(), crate::scalars::rat(1, 7));
        let so = dos_exponents(Family::So).unwrap();
        assert_eq!(so.nu, r("1/(3 - 2*N)"));
        assert_eq!(so.nu.eval_int(3).unwrap(), crate::scalars::rat(-1, 3));
        let sp = dos_exponents(Family::Sp).unwrap();
        assert_eq!(sp.gamma, r("1/(2*(N + 1))"));
        assert_eq!(sp.nu.eval_int(1).unwrap(), crate::scalars::rat(1, 7));
    }

    #[test]
    fn density_route_agrees_and_quartics_drop_out() {
        for label in [StressLabel::Gl11, StressLabel::Osp22, StressLabel::Free] {
            let tt = t(label);
            let k = kappa_kinetic(&tt).unwrap();
            assert_eq!(kappa_from_density(&tt, Chirality::Holo).unwrap(), k, "{label}");
            assert_eq!(kappa_from_density(&tt, Chirality::Anti).unwrap(), k, "{label}");
            let q = quartic_part(&tt).unwrap();
            assert!(ope(&q, &density_operator(), 2).unwrap().get(2, 0).is_zero());
        }
    }

    #[test]
    fn beta_systems() {
        let su = beta_one_loop(Family::Su).unwrap();
        assert_eq!(su.couplings, ["g", "g1'", "g2'"]);
        assert_eq!(su.beta_coefficient("g", "g", "g"), r("2*N"));
        assert!(su.quadratic_terms(1).is_empty());
        // The sign of this coefficient is discussed in the project notes.
        assert_eq!(su.beta_coefficient("g2'", "g1'", "g1'"), RatN::from_int(2));
        let so = beta_one_loop(Family::So).unwrap();
        assert_eq!(so.render(), "beta_g = (2*N - 4)*g^2\nbeta_g' = -4*g'^2");
    }

    #[test]
    fn multiplets_are_weight_one_primaries() {
        let gl = crate::algebras::gl11_multiplet();
        let osp = crate::algebras::osp22_multiplet();
        assert!(weight_one_report(&t(StressLabel::Free).expr, &gl).unwrap().passed());
        assert!(weight_one_report(&t(StressLabel::Gl11).expr, &gl).unwrap().passed());
        assert!(weight_one_report(&t(StressLabel::Osp22).expr, &osp).unwrap().passed());
        assert!(crate::algebras::all_poles_vanish(&t(StressLabel::Su0).expr, &gl).unwrap());
        assert!(crate::algebras::all_poles_vanish(&t(StressLabel::So0).expr, &osp).unwrap());
    }
}
