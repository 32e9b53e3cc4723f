//! Text syntax for operator expressions, and a LaTeX emitter.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | 'N' | '(' expr ')' | field | 'd(' expr ')' | 'db(' expr ')'
//!         | 'no(' expr (',' expr)* ')' | 'delta(' index ',' index ')'
//! field  := ('psi' | 'beta' | 'psib' | 'betab') '(' ('+' | '-') ',' index ')'
//! index  := identifier | integer
//! ```
//!
//! `*` and `no(...)` juxtapose their arguments as a normal-ordered product
//! of free fields; an index name occurring twice is summed. `/` and `^` only
//! accept scalars on the right and on the base respectively.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::Error;
use crate::expr::{Chirality, DeltaFactor, FieldSymbol, FlavorIndex, Monomial, OperatorExpr};
use crate::scalars::RatN;
use crate::wick::LaurentOPE;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at {position}: expected {}, found {found}", expected.join(" or "))]
    Syntax { position: usize, expected: Vec<String>, found: String },
    #[error("at {position}: {message}")]
    Semantic { position: usize, message: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(u64),
    Ident(String),
    Sym(char),
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Sym(c) => write!(f, "`{c}`"),
            Tok::End => write!(f, "end of input"),
        }
    }
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let (pos, c) = chars[k];
        if c.is_whitespace() {
            k += 1;
        } else if c.is_ascii_digit() {
            let start = k;
            while k < chars.len() && chars[k].1.is_ascii_digit() {
                k += 1;
            }
            let text: String = chars[start..k].iter().map(|x| x.1).collect();
            let n = text.parse().map_err(|_| ParseError::Semantic {
                position: pos,
                message: format!("integer `{text}` is too large"),
            })?;
            out.push((pos, Tok::Int(n)));
        } else if c.is_alphabetic() || c == '_' {
            let start = k;
            while k < chars.len() && (chars[k].1.is_alphanumeric() || chars[k].1 == '_') {
                k += 1;
            }
            out.push((pos, Tok::Ident(chars[start..k].iter().map(|x| x.1).collect())));
        } else if "+-*/^(),".contains(c) {
            out.push((pos, Tok::Sym(c)));
            k += 1;
        } else {
            return Err(ParseError::Syntax {
                position: pos,
                expected: vec!["an expression".into()],
                found: format!("`{c}`"),
            });
        }
    }
    out.push((src.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
}

type PResult<T> = Result<T, ParseError>;

/// A parsed value with the largest number of times each index name occurs
/// syntactically in one of its terms.
#[derive(Clone, Default)]
struct Val {
    e: OperatorExpr,
    counts: BTreeMap<String, usize>,
}

impl Val {
    fn plain(e: OperatorExpr) -> Val {
        Val { e, counts: BTreeMap::new() }
    }

    fn merge_max(mut self, other: &Val, e: OperatorExpr) -> Val {
        for (k, v) in &other.counts {
            let c = self.counts.entry(k.clone()).or_default();
            *c = (*c).max(*v);
        }
        self.e = e;
        self
    }
}

fn count_index(counts: &mut BTreeMap<String, usize>, i: &FlavorIndex) {
    if let FlavorIndex::Abstract(name) = i {
        *counts.entry(name.clone()).or_default() += 1;
    }
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if t != Tok::End {
            self.at += 1;
        }
        t
    }

    fn fail<T>(&self, expected: &[&str]) -> PResult<T> {
        Err(ParseError::Syntax {
            position: self.pos(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.peek().to_string(),
        })
    }

    fn semantic<T>(&self, position: usize, message: impl Into<String>) -> PResult<T> {
        Err(ParseError::Semantic { position, message: message.into() })
    }

    fn expect(&mut self, c: char) -> PResult<()> {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            Ok(())
        } else {
            self.fail(&[&format!("`{c}`")])
        }
    }

    fn expr(&mut self) -> PResult<Val> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Sym('+') => {
                    self.bump();
                    let rhs = self.term()?;
                    let e = acc.e.add(&rhs.e);
                    acc = acc.merge_max(&rhs, e);
                }
                Tok::Sym('-') => {
                    self.bump();
                    let rhs = self.term()?;
                    let e = acc.e.sub(&rhs.e);
                    acc = acc.merge_max(&rhs, e);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn product(&self, position: usize, a: &Val, b: &Val) -> PResult<Val> {
        let mut counts = a.counts.clone();
        for (k, v) in &b.counts {
            let c = counts.entry(k.clone()).or_default();
            *c += v;
            if *c > 2 {
                return self.semantic(position, format!("index `{k}` occurs {c} times in one product"));
            }
        }
        let e = a.e.mul_formal(&b.e).or_else(|e| self.semantic(position, e.to_string()))?;
        Ok(Val { e, counts })
    }

    fn term(&mut self) -> PResult<Val> {
        let mut acc = self.unary()?;
        loop {
            let position = self.pos();
            match self.peek() {
                Tok::Sym('*') => {
                    self.bump();
                    let rhs = self.unary()?;
                    acc = self.product(position, &acc, &rhs)?;
                }
                Tok::Sym('/') => {
                    self.bump();
                    let rhs = self.unary()?;
                    let Some(d) = as_scalar(&rhs.e) else {
                        return self.semantic(position, "division by an operator");
                    };
                    let inv = match d.recip() {
                        Ok(inv) => inv,
                        Err(_) => return self.semantic(position, "division by zero"),
                    };
                    acc.e = acc.e.scale(&inv);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> PResult<Val> {
        if *self.peek() == Tok::Sym('-') {
            self.bump();
            let mut v = self.unary()?;
            v.e = v.e.neg();
            return Ok(v);
        }
        let position = self.pos();
        let base = self.atom()?;
        if *self.peek() == Tok::Sym('^') {
            self.bump();
            let Tok::Int(e) = self.peek().clone() else { return self.fail(&["an integer exponent"]) };
            self.bump();
            let Some(s) = as_scalar(&base.e) else {
                return self.semantic(position, "only scalars can be raised to a power");
            };
            let Ok(e) = u32::try_from(e) else { return self.semantic(position, "exponent too large") };
            return Ok(Val::plain(OperatorExpr::scalar(s.pow(e))));
        }
        Ok(base)
    }

    fn index(&mut self) -> PResult<FlavorIndex> {
        match self.bump() {
            Tok::Ident(s) => Ok(FlavorIndex::Abstract(s)),
            Tok::Int(n) => match u32::try_from(n) {
                Ok(n) if n > 0 => Ok(FlavorIndex::Concrete(n)),
                _ => {
                    self.at -= 1;
                    self.semantic(self.pos(), "concrete flavors start at 1")
                }
            },
            _ => {
                self.at -= 1;
                self.fail(&["an index"])
            }
        }
    }

    fn args(&mut self) -> PResult<Vec<Val>> {
        self.expect('(')?;
        let mut out = vec![self.expr()?];
        while *self.peek() == Tok::Sym(',') {
            self.bump();
            out.push(self.expr()?);
        }
        if *self.peek() != Tok::Sym(')') {
            return self.fail(&["`,`", "`)`"]);
        }
        self.bump();
        Ok(out)
    }

    fn atom(&mut self) -> PResult<Val> {
        let position = self.pos();
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                let n = i64::try_from(n).or_else(|_| self.semantic(position, "integer too large"))?;
                Ok(Val::plain(OperatorExpr::scalar(RatN::from_int(n))))
            }
            Tok::Sym('(') => {
                self.bump();
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Ident(name) => {
                self.bump();
                match name.as_str() {
                    "N" => Ok(Val::plain(OperatorExpr::scalar(RatN::n()))),
                    "psi" | "beta" | "psib" | "betab" => {
                        self.expect('(')?;
                        let charge = match self.bump() {
                            Tok::Sym('+') => crate::expr::Charge::Plus,
                            Tok::Sym('-') => crate::expr::Charge::Minus,
                            _ => {
                                self.at -= 1;
                                return self.fail(&["`+`", "`-`"]);
                            }
                        };
                        self.expect(',')?;
                        let index = self.index()?;
                        self.expect(')')?;
                        let mut counts = BTreeMap::new();
                        count_index(&mut counts, &index);
                        let mut f = if name.starts_with("psi") {
                            FieldSymbol::psi(charge, index)
                        } else {
                            FieldSymbol::beta(charge, index)
                        };
                        if name.ends_with('b') {
                            f = f.mirror();
                        }
                        Ok(Val { e: OperatorExpr::field(f), counts })
                    }
                    "d" | "db" => {
                        self.expect('(')?;
                        let mut v = self.expr()?;
                        self.expect(')')?;
                        v.e = v.e.derivative(if name == "d" { Chirality::Holo } else { Chirality::Anti });
                        Ok(v)
                    }
                    "no" => {
                        let args = self.args()?;
                        let mut acc = Val::plain(OperatorExpr::identity());
                        for a in &args {
                            acc = self.product(position, &acc, a)?;
                        }
                        Ok(acc)
                    }
                    "delta" => {
                        self.expect('(')?;
                        let l = self.index()?;
                        self.expect(',')?;
                        let r = self.index()?;
                        self.expect(')')?;
                        let mut counts = BTreeMap::new();
                        count_index(&mut counts, &l);
                        count_index(&mut counts, &r);
                        let e = OperatorExpr::product(vec![], vec![DeltaFactor { left: l, right: r }], RatN::one())
                            .or_else(|e| self.semantic(position, e.to_string()))?;
                        Ok(Val { e, counts })
                    }
                    _ => {
                        self.at -= 1;
                        self.fail(&["`psi`", "`beta`", "`psib`", "`betab`", "`d`", "`db`", "`no`", "`delta`", "`N`"])
                    }
                }
            }
            _ => self.fail(&["an expression"]),
        }
    }
}

fn as_scalar(e: &OperatorExpr) -> Option<RatN> {
    e.operator_part().is_zero().then(|| e.scalar_part())
}

/// Parses an expression into canonical form.
pub fn parse(src: &str) -> Result<OperatorExpr, ParseError> {
    let mut p = Parser { toks: lex(src)?, at: 0 };
    let v = p.expr()?;
    if *p.peek() != Tok::End {
        return p.fail(&["an operator", "end of input"]);
    }
    Ok(v.e)
}

impl std::str::FromStr for OperatorExpr {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        Ok(parse(s)?)
    }
}

fn int_poly_latex(coeffs: &[num_bigint::BigInt]) -> String {
    let mut out = String::new();
    for (deg, c) in coeffs.iter().enumerate().rev() {
        if num_traits::Zero::is_zero(c) {
            continue;
        }
        let negative = num_traits::Signed::is_negative(c);
        let mag = num_traits::Signed::abs(c);
        out.push_str(match (out.is_empty(), negative) {
            (true, false) => "",
            (true, true) => "-",
            (false, false) => " + ",
            (false, true) => " - ",
        });
        let unit = num_traits::One::is_one(&mag);
        match deg {
            0 => out.push_str(&mag.to_string()),
            _ => {
                if !unit {
                    out.push_str(&mag.to_string());
                }
                out.push('N');
                if deg > 1 {
                    out.push_str(&format!("^{{{deg}}}"));
                }
            }
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

/// LaTeX for a rational function of `N`.
pub fn ratn_latex(c: &RatN) -> String {
    let (num, den) = c.integer_parts();
    let den_is_one = den.len() == 1 && num_traits::One::is_one(&den[0]);
    if den_is_one {
        return int_poly_latex(&num);
    }
    let leading_negative =
        num.iter().rev().find(|x| !num_traits::Zero::is_zero(*x)).is_some_and(num_traits::Signed::is_negative);
    if leading_negative {
        let flipped: Vec<_> = num.iter().map(|x| -x).collect();
        format!("-\\frac{{{}}}{{{}}}", int_poly_latex(&flipped), int_poly_latex(&den))
    } else {
        format!("\\frac{{{}}}{{{}}}", int_poly_latex(&num), int_poly_latex(&den))
    }
}

fn index_latex(i: &FlavorIndex) -> String {
    match i {
        FlavorIndex::Concrete(n) => n.to_string(),
        FlavorIndex::Abstract(s) => s.clone(),
    }
}

fn field_latex(f: &FieldSymbol) -> String {
    let name = match (f.species, f.chirality) {
        (crate::expr::Species::Psi, Chirality::Holo) => "\\psi",
        (crate::expr::Species::Psi, Chirality::Anti) => "\\overline{\\psi}",
        (crate::expr::Species::Beta, Chirality::Holo) => "\\beta",
        (crate::expr::Species::Beta, Chirality::Anti) => "\\overline{\\beta}",
    };
    let base = format!("{name}_{{{}}}^{{{}}}", f.charge.symbol(), index_latex(&f.index));
    let d = match f.chirality {
        Chirality::Holo => "\\partial_z",
        Chirality::Anti => "\\partial_{\\overline{z}}",
    };
    match f.deriv {
        0 => base,
        1 => format!("{d}{base}"),
        k => format!("{d}^{{{k}}}{base}"),
    }
}

fn monomial_latex(m: &Monomial) -> String {
    let mut parts = Vec::new();
    if !m.factors().is_empty() {
        let body: Vec<String> = m.factors().iter().map(field_latex).collect();
        if body.len() == 1 {
            parts.push(body[0].clone());
        } else {
            parts.push(format!("\\colon\\! {} \\!\\colon", body.join(" ")));
        }
    }
    for d in m.deltas() {
        parts.push(format!("\\delta_{{{}{}}}", index_latex(&d.left), index_latex(&d.right)));
    }
    parts.join(" ")
}

/// LaTeX in the usual notation: `ψ_±^i`, barred antiholomorphic fields,
/// normal-order colons.
pub fn to_latex(e: &OperatorExpr) -> String {
    if e.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (m, c)) in e.terms().enumerate() {
        let neg = c.is_negative_leading();
        let mag = if neg { -c } else { c.clone() };
        out.push_str(match (k, neg) {
            (0, false) => "",
            (0, true) => "-",
            (_, false) => " + ",
            (_, true) => " - ",
        });
        let coeff = ratn_latex(&mag);
        let compound =
            mag.denom().is_one() && mag.numer().coeffs().iter().filter(|x| !num_traits::Zero::is_zero(*x)).count() > 1;
        let coeff = if compound { format!("\\left({coeff}\\right)") } else { coeff };
        if m.is_identity() {
            out.push_str(&coeff);
        } else if mag.is_one() {
            out.push_str(&monomial_latex(m));
        } else {
            out.push_str(&format!("{coeff} {}", monomial_latex(m)));
        }
    }
    out
}

/// LaTeX for a Laurent expansion, one pole entry per summand.
pub fn ope_latex(l: &LaurentOPE) -> String {
    let mut parts = Vec::new();
    for (&(p, q), e) in l.entries().collect::<Vec<_>>().into_iter().rev() {
        let mut den = Vec::new();
        match p {
            0 => {}
            1 => den.push("(z-w)".to_string()),
            p => den.push(format!("(z-w)^{{{p}}}")),
        }
        match q {
            0 => {}
            1 => den.push("(\\overline{z}-\\overline{w})".to_string()),
            q => den.push(format!("(\\overline{{z}}-\\overline{{w}})^{{{q}}}")),
        }
        let body = to_latex(e);
        if den.is_empty() {
            parts.push(format!("\\left[{body}\\right]"));
        } else {
            parts.push(format!("\\frac{{{body}}}{{{}}}", den.join("")));
        }
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::Charge;

    #[test]
    fn bilinear() {
        let e = parse("no(psi(-,i), psi(+,i))").unwrap();
        let expected = OperatorExpr::product(
            vec![FieldSymbol::psi(Charge::Minus, "i"), FieldSymbol::psi(Charge::Plus, "i")],
            vec![],
            RatN::one(),
        )
        .unwrap();
        assert_eq!(e, expected);
    }

    #[test]
    fn coefficient_and_quartic() {
        let e = parse("(1/(2*N^2)) * no(beta(+,i),psi(-,i),beta(-,j),psi(+,j))").unwrap();
        use Charge::{Minus, Plus};
        let expected = OperatorExpr::product(
            vec![
                FieldSymbol::beta(Plus, "i"),
                FieldSymbol::psi(Minus, "i"),
                FieldSymbol::beta(Minus, "j"),
                FieldSymbol::psi(Plus, "j"),
            ],
            vec![],
            "1/(2*N^2)".parse().unwrap(),
        )
        .unwrap();
        assert_eq!(e, expected);
    }

    #[test]
    fn triple_index_is_semantic_error() {
        let err = parse("no(psi(+,i), psi(+,i), psi(+,i))").unwrap_err();
        assert!(matches!(err, ParseError::Semantic { .. }), "{err}");
    }

    #[test]
    fn syntax_error_position() {
        let err = parse("no(psi(+,i) psi(-,i))").unwrap_err();
        match err {
            ParseError::Syntax { position, expected, .. } => {
                assert_eq!(position, 12);
                assert_eq!(expected, ["`,`", "`)`"]);
            }
            other => panic!("{other}"),
        }
        assert!(matches!(parse("psi(*,i)"), Err(ParseError::Syntax { position: 4, .. })));
        assert!(matches!(parse("psi(+,i) / psi(-,i)"), Err(ParseError::Semantic { .. })));
    }

    #[test]
    fn round_trip_stress_tensor() {
        for label in crate::sugawara::StressLabel::ALL {
            let t = crate::sugawara::build_t(label).unwrap().expr;
            assert_eq!(parse(&t.to_string()).unwrap(), t, "{label}");
        }
        let rho = crate::sugawara::density_operator();
        assert_eq!(parse(&rho.to_string()).unwrap(), rho);
    }

    #[test]
    fn derivatives_and_deltas() {
        let e = parse("d(d(psi(+,i)))*delta(i,j) + db(betab(-,k))").unwrap();
        assert_eq!(parse(&e.to_string()).unwrap(), e);
        assert_eq!(parse("delta(i,i)").unwrap(), OperatorExpr::scalar(RatN::n()));
        assert_eq!(parse("psi(+,1)*delta(1,2)").unwrap(), OperatorExpr::zero());
    }

    #[test]
    fn latex_notation() {
        let t = crate::sugawara::build_t(crate::sugawara::StressLabel::Free).unwrap().expr;
        let s = to_latex(&t);
        assert!(s.contains("\\partial_z\\psi_{+}^{i}"), "{s}");
        assert!(s.contains("\\colon"), "{s}");
        assert_eq!(ratn_latex(&"(N^2 - 1)/(2*N^2)".parse().unwrap()), "\\frac{N^{2} - 1}{2N^{2}}");
    }
}
