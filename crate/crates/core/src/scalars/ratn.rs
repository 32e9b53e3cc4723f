use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::poly::{render_int_poly, Poly};
use super::{Rational, ScalarError};

/// An exact rational function of the flavor rank `N`.
///
/// Always stored reduced: numerator and denominator are coprime and the
/// denominator is monic. Structural equality is therefore value equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatN {
    num: Poly,
    den: Poly,
}

impl RatN {
    pub fn zero() -> Self {
        RatN { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        RatN::from_rational(Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        RatN::from_rational(Rational::from_integer(n.into()))
    }

    pub fn frac(n: i64, d: i64) -> Self {
        RatN::from_rational(Rational::new(n.into(), d.into()))
    }

    pub fn from_rational(c: Rational) -> Self {
        RatN { num: Poly::constant(c), den: Poly::one() }
    }

    /// The symbol `N`.
    pub fn n() -> Self {
        RatN { num: Poly::var(), den: Poly::one() }
    }

    pub fn from_poly(p: Poly) -> Self {
        RatN { num: p, den: Poly::one() }
    }

    /// Builds `num/den`, reducing to canonical form.
    pub fn new(num: Poly, den: Poly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RatN::zero();
        }
        if den.is_constant() {
            let inv = den.constant_term().recip();
            return RatN { num: num.scale(&inv), den: Poly::one() };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_constant() { (num, den) } else { (num.div_rem(&g).0, den.div_rem(&g).0) };
        let lc_inv = den.leading().expect("nonzero denominator").recip();
        RatN { num: num.scale(&lc_inv), den: den.scale(&lc_inv) }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// The constant value, if this does not depend on `N`.
    pub fn as_rational(&self) -> Option<Rational> {
        (self.num.is_constant() && self.den.is_one()).then(|| self.num.constant_term())
    }

    /// Numerator and denominator with integer coefficients, fractions
    /// cleared across the bar.
    pub fn integer_parts(&self) -> (Vec<BigInt>, Vec<BigInt>) {
        if self.is_zero() {
            return (Vec::new(), vec![BigInt::one()]);
        }
        let (sn, num) = self.num.integer_content();
        let (sd, den) = self.den.integer_content();
        let ratio = sn / sd;
        let num = num.into_iter().map(|c| c * ratio.numer()).collect();
        let den = den.into_iter().map(|c| c * ratio.denom()).collect();
        (num, den)
    }

    pub fn recip(&self) -> Result<RatN, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(RatN::reduced(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &RatN) -> Result<RatN, ScalarError> {
        Ok(self * &rhs.recip()?)
    }

    /// Multiplies by a constant without re-reducing.
    pub fn scale(&self, c: &Rational) -> RatN {
        if c.is_zero() {
            return RatN::zero();
        }
        RatN { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn pow(&self, exp: u32) -> RatN {
        RatN { num: self.num.pow(exp), den: self.den.pow(exp) }
    }

    /// Substitutes `N := n`.
    pub fn eval(&self, n: &Rational) -> Result<Rational, ScalarError> {
        let d = self.den.eval(n);
        if d.is_zero() {
            return Err(ScalarError::Pole { at: n.clone() });
        }
        Ok(self.num.eval(n) / d)
    }

    pub fn eval_int(&self, n: i64) -> Result<Rational, ScalarError> {
        self.eval(&Rational::from_integer(n.into()))
    }

    /// Applies `N -> a*N + b`.
    pub fn substitute_linear(&self, a: &Rational, b: &Rational) -> RatN {
        let lin = Poly::from_coeffs(vec![b.clone(), a.clone()]);
        let compose =
            |p: &Poly| p.coeffs().iter().rev().fold(Poly::zero(), |acc, c| &(&acc * &lin) + &Poly::constant(c.clone()));
        RatN::reduced(compose(&self.num), compose(&self.den))
    }

    /// Sign of the leading behaviour, used only to order terms in renderings.
    fn sort_key(&self) -> (Vec<Rational>, Vec<Rational>) {
        (self.num.coeffs().to_vec(), self.den.coeffs().to_vec())
    }

    /// True when the rendering starts with a minus sign.
    pub fn is_negative_leading(&self) -> bool {
        self.num.leading().is_some_and(|c| c.is_negative())
    }
}

impl Default for RatN {
    fn default() -> Self {
        RatN::zero()
    }
}

impl PartialOrd for RatN {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// An arbitrary total order (not numeric), used for deterministic sorting.
impl Ord for RatN {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl fmt::Display for RatN {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let (num, den) = self.integer_parts();
        let nterms = num.iter().filter(|c| !c.is_zero()).count();
        let den_is_one = den.len() == 1 && den[0].is_one();
        let num_s = render_int_poly(&num, "N");
        if den_is_one {
            return write!(f, "{num_s}");
        }
        let den_s = render_int_poly(&den, "N");
        let den_terms = den.iter().filter(|c| !c.is_zero()).count();
        let den_atomic = den_terms == 1 && !den_s.contains('*');
        let num_s = if nterms > 1 { format!("({num_s})") } else { num_s };
        if den_atomic {
            write!(f, "{num_s}/{den_s}")
        } else {
            write!(f, "{num_s}/({den_s})")
        }
    }
}

impl FromStr for RatN {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser { src: s.as_bytes(), pos: 0 };
        let v = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.error("end of input"));
        }
        Ok(v)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, expected: &str) -> ScalarError {
        ScalarError::Parse { position: self.pos, expected: expected.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<RatN, ScalarError> {
        let mut acc = self.term()?;
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == b'+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatN, ScalarError> {
        let mut acc = self.unary()?;
        while let Some(op @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let rhs = self.unary()?;
            acc = if op == b'*' { &acc * &rhs } else { acc.checked_div(&rhs)? };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RatN, ScalarError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(-&self.unary()?);
        }
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.src.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
            let exp: u32 = std::str::from_utf8(&self.src[start..self.pos])
                .ok()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| self.error("exponent"))?;
            return Ok(base.pow(exp));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RatN, ScalarError> {
        match self.peek() {
            Some(b'N') => {
                self.pos += 1;
                Ok(RatN::n())
            }
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.src.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
                    self.pos += 1;
                }
                let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                let n: num_bigint::BigInt = digits.parse().expect("digits");
                Ok(RatN::from_rational(Rational::from_integer(n)))
            }
            _ => Err(self.error("number, 'N' or '('")),
        }
    }
}

impl<'a> Add<&'a RatN> for &'a RatN {
    type Output = RatN;
    fn add(self, rhs: &RatN) -> RatN {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatN::reduced(&self.num + &rhs.num, self.den.clone());
        }
        RatN::reduced(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den)
    }
}

impl<'a> Sub<&'a RatN> for &'a RatN {
    type Output = RatN;
    fn sub(self, rhs: &RatN) -> RatN {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RatN> for &'a RatN {
    type Output = RatN;
    fn mul(self, rhs: &RatN) -> RatN {
        if self.is_zero() || rhs.is_zero() {
            return RatN::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatN { num: &self.num * &rhs.num, den: Poly::one() };
        }
        RatN::reduced(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

/// Panics on division by zero; use [`RatN::checked_div`] for fallible division.
impl<'a> Div<&'a RatN> for &'a RatN {
    type Output = RatN;
    fn div(self, rhs: &RatN) -> RatN {
        self.checked_div(rhs).expect("division by the zero rational function")
    }
}

impl Neg for &RatN {
    type Output = RatN;
    fn neg(self) -> RatN {
        RatN { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RatN {
    type Output = RatN;
    fn neg(self) -> RatN {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<RatN> for RatN {
            type Output = RatN;
            fn $m(self, rhs: RatN) -> RatN { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a RatN> for RatN {
            type Output = RatN;
            fn $m(self, rhs: &RatN) -> RatN { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl AddAssign<&RatN> for RatN {
    fn add_assign(&mut self, rhs: &RatN) {
        *self = &*self + rhs;
    }
}

impl Sum for RatN {
    fn sum<I: Iterator<Item = RatN>>(iter: I) -> RatN {
        iter.fold(RatN::zero(), |acc, x| &acc + &x)
    }
}

impl From<i64> for RatN {
    fn from(n: i64) -> Self {
        RatN::from_int(n)
    }
}

impl serde::Serialize for RatN {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for RatN {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> RatN {
        s.parse().unwrap()
    }

    #[test]
    fn kinetic_prefactors_sum_to_one_half() {
        assert_eq!(r("1/(2*N^2)") + r("(N^2 - 1)/(2*N^2)"), RatN::frac(1, 2));
    }

    #[test]
    fn product_keeps_pole() {
        assert_eq!(r("1/(2*(N-2))") * r("N - 1"), r("(N-1)/(2*N - 4)"));
        assert_eq!((r("1/(2*(N-2))") * r("N - 1")).to_string(), "(N - 1)/(2*N - 4)");
    }

    #[test]
    fn gcd_reduction() {
        let v = r("(N-1)/(N^2-1)");
        assert_eq!(v, r("1/(N+1)"));
        assert_eq!(v.numer(), &Poly::one());
    }

    #[test]
    fn eval_examples() {
        assert_eq!(r("1/(2*N^2)").eval_int(2).unwrap(), Rational::new(1.into(), 8.into()));
        assert!(matches!(r("1/(2-N)").eval_int(2), Err(ScalarError::Pole { .. })));
        assert_eq!(r("1/(4*N+3)").eval_int(1).unwrap(), Rational::new(1.into(), 7.into()));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(RatN::one().checked_div(&RatN::zero()), Err(ScalarError::DivisionByZero));
        assert!("1/(N-N)".parse::<RatN>().is_err());
    }

    #[test]
    fn rendering_round_trips() {
        for s in ["(N^2 - 1)/(2*N^2)", "1/(4*N + 3)", "-1/(2*N^2)", "1/2", "(N - 1)/2", "2*N", "1/N^2", "N^3 - 2*N + 7"]
        {
            let v = r(s);
            assert_eq!(v.to_string(), s);
            assert_eq!(r(&v.to_string()), v);
        }
    }

    #[test]
    fn linear_substitution() {
        // kappa(N) = 1/(2(2-N)) under N -> -2N
        let k = r("1/(2*(2-N))");
        let sub = k.substitute_linear(&Rational::from_integer((-2).into()), &Rational::zero());
        assert_eq!(sub, r("1/(2*(2+2*N))"));
    }
}
