use crate::error::Result;
use crate::expr::{Charge, FieldSymbol, FlavorIndex, OperatorExpr};
use crate::scalars::{RatN, Rational};
use crate::wick::normal_product;

use super::basis::GeneratorBasis;

/// Replaces every summed flavor index by an explicit sum over `1..=flavors`
/// and evaluates coefficients at `N = n`. Free indices are kept.
pub fn expand_flavors(e: &OperatorExpr, n: i64, flavors: u32) -> Result<OperatorExpr> {
    let mut out = OperatorExpr::zero();
    for (m, c) in e.terms() {
        let value = RatN::from_rational(c.eval_int(n)?);
        let dummies: Vec<String> = m.dummy_indices().into_iter().collect();
        let mut assignment = vec![1u32; dummies.len()];
        loop {
            let subst = |idx: &FlavorIndex| match idx.name().and_then(|s| dummies.iter().position(|d| d == s)) {
                Some(p) => FlavorIndex::Concrete(assignment[p]),
                None => idx.clone(),
            };
            let factors = m.factors().iter().map(|f| FieldSymbol { index: subst(&f.index), ..f.clone() }).collect();
            let deltas = m
                .deltas()
                .iter()
                .map(|d| crate::expr::DeltaFactor { left: subst(&d.left), right: subst(&d.right) })
                .collect();
            out.add_raw(factors, deltas, value.clone())?;
            // odometer over the assignments
            let mut pos = 0;
            while pos < assignment.len() && assignment[pos] == flavors {
                assignment[pos] = 1;
                pos += 1;
            }
            if pos == assignment.len() {
                break;
            }
            assignment[pos] += 1;
        }
    }
    Ok(out)
}

/// An operator with complex coefficients, `re + i im`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ComplexExpr {
    pub re: OperatorExpr,
    pub im: OperatorExpr,
}

/// `ψ₋^i ψ₊^j + β₋^i β₊^j` at concrete one-based flavors.
pub fn concrete_bilinear(i: u32, j: u32) -> OperatorExpr {
    crate::algebras::flavor_bilinear(
        FlavorIndex::Concrete(i),
        FlavorIndex::Concrete(j),
        crate::algebras::SpeciesSel::Both,
    )
}

/// `L_a = Σ_ij (t_a)_ij (ψ₋^i ψ₊^j + β₋^i β₊^j)` for each basis element.
pub fn explicit_currents(basis: &GeneratorBasis) -> Vec<ComplexExpr> {
    let m = basis.size();
    basis
        .generators
        .iter()
        .map(|t| {
            let mut l = ComplexExpr::default();
            for i in 0..m {
                for j in 0..m {
                    let c = &t[(i, j)];
                    if c.is_zero() {
                        continue;
                    }
                    let o = concrete_bilinear(i as u32 + 1, j as u32 + 1);
                    l.re.add_assign(&o.scale(&RatN::from_rational(c.re.clone())));
                    l.im.add_assign(&o.scale(&RatN::from_rational(c.im.clone())));
                }
            }
            l
        })
        .collect()
}

fn weighted(w: &Rational) -> RatN {
    RatN::from_rational(w.clone())
}

/// `Σ_a :L^a L^a:` with the generator sum done explicitly. Returns the real
/// part and the imaginary part, which must vanish.
pub fn explicit_casimir(basis: &GeneratorBasis) -> Result<ComplexExpr> {
    let mut out = ComplexExpr::default();
    for (l, w) in explicit_currents(basis).iter().zip(&basis.weights) {
        let w = weighted(w);
        let re = normal_product(&l.re, &l.re)?.sub(&normal_product(&l.im, &l.im)?);
        let im = normal_product(&l.re, &l.im)?.add(&normal_product(&l.im, &l.re)?);
        out.re.add_assign(&re.scale(&w));
        out.im.add_assign(&im.scale(&w));
    }
    Ok(out)
}

/// `Σ_a L^a L̄^a` with the generator sum done explicitly.
pub fn explicit_left_right(basis: &GeneratorBasis) -> Result<ComplexExpr> {
    let mut out = ComplexExpr::default();
    for (l, w) in explicit_currents(basis).iter().zip(&basis.weights) {
        let w = weighted(w);
        let (rb, ib) = (l.re.mirror(), l.im.mirror());
        let re = l.re.mul_formal(&rb)?.sub(&l.im.mul_formal(&ib)?);
        let im = l.re.mul_formal(&ib)?.add(&l.im.mul_formal(&rb)?);
        out.re.add_assign(&re.scale(&w));
        out.im.add_assign(&im.scale(&w));
    }
    Ok(out)
}

/// A field `ψ₊^i` or `β₊^i` etc. at a concrete flavor.
pub fn concrete_field(beta: bool, charge: Charge, i: u32) -> FieldSymbol {
    if beta {
        FieldSymbol::beta(charge, FlavorIndex::Concrete(i))
    } else {
        FieldSymbol::psi(charge, FlavorIndex::Concrete(i))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse;

    #[test]
    fn summed_indices_become_explicit() {
        let e = parse("N*no(psi(+,i), psi(-,i))").unwrap();
        let x = expand_flavors(&e, 3, 2).unwrap();
        assert_eq!(x, parse("3*no(psi(+,1), psi(-,1)) + 3*no(psi(+,2), psi(-,2))").unwrap());
    }

    #[test]
    fn free_indices_survive() {
        let e = parse("no(psi(+,j), beta(-,i), beta(+,i))").unwrap();
        let x = expand_flavors(&e, 2, 2).unwrap();
        assert_eq!(x.len(), 2);
        assert_eq!(x.free_indices(), ["j".to_string()].into());
    }

    #[test]
    fn bilinear_has_both_species() {
        let b = concrete_bilinear(1, 2);
        assert_eq!(b, parse("no(psi(-,1), psi(+,2)) + no(beta(-,1), beta(+,2))").unwrap());
    }
}
