use num_traits::Zero;

use super::matrix::Matrix;
use crate::algebras::Family;
use crate::error::{Error, Result};
use crate::scalars::{GaussianRational, Rational};

/// Symplectic form `antidiag(1, …, 1, -1, …, -1)` of size `2n`.
pub fn symplectic_form(n: usize) -> Matrix {
    let size = 2 * n;
    Matrix::from_fn(size, |i, j| {
        if i + j + 1 == size {
            GaussianRational::from_int(if i < n { 1 } else { -1 })
        } else {
            GaussianRational::zero()
        }
    })
}

/// Matrix size of the defining representation.
pub fn defining_size(family: Family, n: usize) -> usize {
    match family {
        Family::Su | Family::So => n,
        Family::Sp => 2 * n,
    }
}

fn supported(family: Family, n: usize) -> bool {
    match family {
        Family::Su => (2..=4).contains(&n),
        Family::So => (2..=4).contains(&n),
        Family::Sp => (1..=2).contains(&n),
    }
}

/// Projection of an arbitrary complex matrix onto the complexified algebra.
fn project(family: Family, n: usize, y: &Matrix) -> Matrix {
    let half = Rational::new(1.into(), 2.into());
    match family {
        Family::Su => {
            let tr = y.trace().scale(&Rational::new(1.into(), (y.size() as i64).into()));
            y - &Matrix::identity(y.size()).scale(&tr)
        }
        Family::So => (y - &y.transpose()).scale_real(&half),
        Family::Sp => {
            // X ↦ (X - Ω⁻¹ Xᵀ Ω)/2 with Ω⁻¹ = -Ω
            let omega = symplectic_form(n);
            (y + &(&(&omega * &y.transpose()) * &omega)).scale_real(&half)
        }
    }
}

fn in_algebra(family: Family, n: usize, x: &Matrix) -> bool {
    match family {
        Family::Su => x.trace().is_zero(),
        Family::So => (x + &x.transpose()).is_zero(),
        Family::Sp => {
            let omega = symplectic_form(n);
            (&(&x.transpose() * &omega) + &(&omega * x)).is_zero()
        }
    }
}

/// An orthogonal Hermitian basis `t_a` of a compact classical algebra in its
/// defining representation. The generators are not unit-normalized; the
/// invariant metric is diagonal with entries `weights[a]`, so that
/// `Σ_a t^a ⊗ t^a = Σ_a weights[a] t_a ⊗ t_a` for an orthonormal basis
/// `t^a` with `tr(t^a t^b) = λ δ^{ab}`.
#[derive(Clone, Debug)]
pub struct GeneratorBasis {
    pub family: Family,
    pub n: usize,
    pub generators: Vec<Matrix>,
    pub weights: Vec<Rational>,
    /// `λ = tr(t^a t^a)` (no sum), fixed by `α² = 2` for the longest root.
    pub lambda: Rational,
}

/// Gram–Schmidt over the real trace form; linearly dependent candidates are
/// dropped.
fn orthogonalize(candidates: impl IntoIterator<Item = Matrix>) -> Vec<Matrix> {
    let mut basis: Vec<(Matrix, Rational)> = Vec::new();
    for mut c in candidates {
        for (b, norm) in &basis {
            let coeff = c.trace_form(b) / norm;
            if !coeff.is_zero() {
                c = &c - &b.scale_real(&coeff);
            }
        }
        let norm = c.trace_form(&c);
        if !norm.is_zero() {
            basis.push((c, norm));
        }
    }
    basis.into_iter().map(|(b, _)| b).collect()
}

/// A raising operator for a longest root of the family, at a size where it
/// exists.
fn long_root_vector(family: Family) -> (usize, Matrix) {
    match family {
        Family::Su => (2, Matrix::unit(2, 0, 1)),
        Family::Sp => (1, Matrix::unit(2, 0, 1)),
        Family::So => {
            // u vᵀ - v uᵀ with u = e₁ + i e₂, v = e₃ + i e₄ in so(4)
            let i = GaussianRational::i();
            let one = GaussianRational::one();
            let u = [one.clone(), i.clone(), GaussianRational::zero(), GaussianRational::zero()];
            let v = [GaussianRational::zero(), GaussianRational::zero(), one, i];
            (4, Matrix::from_fn(4, |a, b| &(&u[a] * &v[b]) - &(&v[a] * &u[b])))
        }
    }
}

/// `λ = tr(h²)/2` for the coroot `h` of a longest root, so that the
/// invariant form `tr(XY)/λ` gives that root length squared 2. Computed at a
/// reference size and used for the whole family (the defining
/// representations restrict to each other).
pub fn family_lambda(family: Family) -> Rational {
    let (n, e) = long_root_vector(family);
    assert!(in_algebra(family, n, &e), "root vector lies in the algebra");
    let f = e.dagger();
    let h = e.commutator(&f);
    let c = h.commutator(&e).ratio_to(&e).expect("e is a root vector");
    assert!(c.is_real() && !c.re.is_zero());
    let coroot = h.scale_real(&(Rational::from_integer(2.into()) / &c.re));
    (&coroot * &coroot).trace().re / Rational::from_integer(2.into())
}

pub fn generator_basis(family: Family, n: usize) -> Result<GeneratorBasis> {
    if !supported(family, n) {
        return Err(Error::Unsupported(format!("no explicit {family} basis for n = {n}")));
    }
    let size = defining_size(family, n);
    let mut candidates = Vec::new();
    for j in 0..size {
        for k in 0..size {
            let x = project(family, n, &Matrix::unit(size, j, k));
            candidates.push(&x + &x.dagger());
            candidates.push((&x - &x.dagger()).scale(&GaussianRational::i()));
        }
    }
    let generators = orthogonalize(candidates);
    debug_assert!(generators.iter().all(|g| g.is_hermitian() && in_algebra(family, n, g)));
    let lambda = family_lambda(family);
    let weights = generators.iter().map(|g| &lambda / g.trace_form(g)).collect();
    Ok(GeneratorBasis { family, n, generators, weights, lambda })
}

impl GeneratorBasis {
    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn size(&self) -> usize {
        defining_size(self.family, self.n)
    }

    /// `Σ_a t^a_ij t^a_kl` (zero-based indices).
    pub fn completeness(&self, i: usize, j: usize, k: usize, l: usize) -> GaussianRational {
        self.generators
            .iter()
            .zip(&self.weights)
            .fold(GaussianRational::zero(), |acc, (t, w)| &acc + &(&t[(i, j)] * &t[(k, l)]).scale(w))
    }

    /// The full completeness tensor, row-major in `(i, j, k, l)`.
    pub fn completeness_tensor(&self) -> Vec<GaussianRational> {
        let m = self.size();
        let mut out = Vec::with_capacity(m.pow(4));
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    for l in 0..m {
                        out.push(self.completeness(i, j, k, l));
                    }
                }
            }
        }
        out
    }

    /// `C(N)` from `tr(t^a t^b) = C(N) δ^{ab}`.
    pub fn index(&self) -> Rational {
        self.lambda.clone()
    }

    /// `C₂(N)` from `Σ_a t^a t^a = C₂(N) 1`; `None` if not proportional.
    pub fn casimir_fund(&self) -> Option<Rational> {
        let m = self.size();
        let sum = self
            .generators
            .iter()
            .zip(&self.weights)
            .fold(Matrix::zero(m), |acc, (t, w)| &acc + &(t * t).scale_real(w));
        let c = sum.ratio_to(&Matrix::identity(m))?;
        c.is_real().then_some(c.re)
    }

    /// `C₂(G)` from `Σ_a [t^a, [t^a, X]] = C₂(G) X` on every generator; `None`
    /// if the action is not a multiple of the identity. Zero for abelian
    /// algebras.
    pub fn casimir_adjoint(&self) -> Option<Rational> {
        let mut value: Option<Rational> = None;
        for x in &self.generators {
            let acted =
                self.generators.iter().zip(&self.weights).fold(Matrix::zero(self.size()), |acc, (t, w)| {
                    &acc + &t.commutator(&t.commutator(x)).scale_real(w)
                });
            let c = if acted.is_zero() { Rational::zero() } else { acted.ratio_to(x)?.re };
            match &value {
                Some(v) if *v != c => return None,
                _ => value = Some(c),
            }
        }
        value
    }

    /// `F_abc = -i tr([t_a, t_b] t_c)` in the unnormalized basis.
    pub fn structure_constants(&self) -> Vec<Vec<Vec<Rational>>> {
        let g = &self.generators;
        g.iter()
            .map(|ga| {
                g.iter()
                    .map(|gb| {
                        let comm = ga.commutator(gb);
                        g.iter()
                            .map(|t| {
                                let tr = (&comm * t).trace();
                                // -i (re + i im) = im - i re
                                debug_assert!(tr.re.is_zero());
                                tr.im
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect()
    }

    /// Total antisymmetry of `F_abc`.
    pub fn structure_constants_antisymmetric(&self) -> bool {
        let f = self.structure_constants();
        let d = self.len();
        (0..d).all(|a| (0..d).all(|b| (0..d).all(|c| f[a][b][c] == -&f[b][a][c] && f[a][b][c] == -&f[a][c][b])))
    }

    /// Checks `f^{acd} f^{bcd} = C₂(G) δ^{ab}` in the orthonormal basis,
    /// rewritten without square roots as
    /// `Σ_cd w_c w_d F_acd F_bcd = C₂(G) λ tr(t_a t_a) δ_ab`.
    pub fn killing_check(&self, c2g: &Rational) -> bool {
        let f = self.structure_constants();
        let d = self.len();
        let lambda_sq = &self.lambda * &self.lambda;
        (0..d).all(|a| {
            (0..d).all(|b| {
                let mut sum = Rational::zero();
                for ((fac, fbc), wc) in f[a].iter().zip(&f[b]).zip(&self.weights) {
                    for ((x, y), we) in fac.iter().zip(fbc).zip(&self.weights) {
                        sum += x * y * wc * we;
                    }
                }
                // orthonormal f^{abc} = s_a s_b s_c F_abc / λ with s² = w
                let expected = if a == b { c2g * &lambda_sq / &self.weights[a] } else { Rational::zero() };
                sum == expected
            })
        })
    }

    /// True iff every generator is Hermitian, lies in the algebra, and the
    /// generators are pairwise trace-orthogonal.
    pub fn well_formed(&self) -> bool {
        let orth = (0..self.len())
            .all(|a| (a + 1..self.len()).all(|b| self.generators[a].trace_form(&self.generators[b]).is_zero()));
        orth && self.generators.iter().all(|g| g.is_hermitian() && in_algebra(self.family, self.n, g))
    }

    /// Expected dimension of the algebra.
    pub fn expected_dim(family: Family, n: usize) -> usize {
        match family {
            Family::Su => n * n - 1,
            Family::So => n * (n - 1) / 2,
            Family::Sp => n * (2 * n + 1),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions_and_shape() {
        for (family, n, dim) in [
            (Family::Su, 2, 3),
            (Family::Su, 3, 8),
            (Family::So, 3, 3),
            (Family::So, 4, 6),
            (Family::Sp, 1, 3),
            (Family::Sp, 2, 10),
        ] {
            let b = generator_basis(family, n).unwrap();
            assert_eq!(b.len(), dim, "{family}({n})");
            assert_eq!(b.len(), GeneratorBasis::expected_dim(family, n));
            assert!(b.well_formed());
            assert!(b.structure_constants_antisymmetric());
        }
    }

    #[test]
    fn unsupported_ranks() {
        assert!(generator_basis(Family::Su, 9).is_err());
        assert!(generator_basis(Family::Sp, 3).is_err());
    }

    #[test]
    fn symplectic_form_squares_to_minus_one() {
        let w = symplectic_form(2);
        assert_eq!(&w * &w, Matrix::identity(4).scale(&GaussianRational::from_int(-1)));
        assert_eq!(w.transpose(), w.scale(&GaussianRational::from_int(-1)));
    }

    #[test]
    fn su2_casimirs() {
        let b = generator_basis(Family::Su, 2).unwrap();
        let q = |p: i64, d: i64| Rational::new(p.into(), d.into());
        assert_eq!(b.index(), q(1, 1));
        assert_eq!(b.casimir_fund(), Some(q(3, 2)));
        assert_eq!(b.casimir_adjoint(), Some(q(4, 1)));
        assert!(b.killing_check(&q(4, 1)));
        assert!(!b.killing_check(&q(5, 1)));
    }
}
