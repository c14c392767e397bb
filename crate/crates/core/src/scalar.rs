//! Exact arithmetic in the field Q(√2, i).
//!
//! Every scalar is stored as four rationals `(a, b, c, d)` standing for
//! `a + b·√2 + i·(c + d·√2)`. Zero tests are exact component comparisons;
//! nothing in this crate ever rounds.

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = BigRational;

/// An element `a + b·√2 + i·(c + d·√2)` of Q(√2, i).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ExactScalar {
    a: Rational,
    b: Rational,
    c: Rational,
    d: Rational,
}

/// Element of the real subfield Q(√2) as a pair `(p, q)` meaning `p + q·√2`.
type RealPart = (Rational, Rational);

fn real_mul(x: &RealPart, y: &RealPart) -> RealPart {
    let two = Rational::from_integer(BigInt::from(2));
    (
        &x.0 * &y.0 + two * &x.1 * &y.1,
        &x.0 * &y.1 + &x.1 * &y.0,
    )
}

fn real_add(x: &RealPart, y: &RealPart) -> RealPart {
    (&x.0 + &y.0, &x.1 + &y.1)
}

fn real_sub(x: &RealPart, y: &RealPart) -> RealPart {
    (&x.0 - &y.0, &x.1 - &y.1)
}

fn real_inv(x: &RealPart) -> Option<RealPart> {
    let two = Rational::from_integer(BigInt::from(2));
    let norm = &x.0 * &x.0 - two * &x.1 * &x.1;
    if norm.is_zero() {
        return None;
    }
    Some((&x.0 / &norm, -(&x.1) / &norm))
}

fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

impl ExactScalar {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Self {
        ExactScalar { a, b, c, d }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    pub fn int(n: i64) -> Self {
        Self::rational(Rational::from_integer(BigInt::from(n)))
    }

    /// `p / q` as a rational scalar. Panics if `q == 0`.
    pub fn ratio(p: i64, q: i64) -> Self {
        Self::rational(Rational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn rational(a: Rational) -> Self {
        ExactScalar { a, ..Self::default() }
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        ExactScalar {
            c: Rational::one(),
            ..Self::default()
        }
    }

    pub fn sqrt2() -> Self {
        ExactScalar {
            b: Rational::one(),
            ..Self::default()
        }
    }

    /// `1/√2 = √2/2`.
    pub fn inv_sqrt2() -> Self {
        ExactScalar {
            b: Rational::new(BigInt::from(1), BigInt::from(2)),
            ..Self::default()
        }
    }

    pub fn components(&self) -> [&Rational; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.a)
    }

    /// The integer value, if this scalar is an integer.
    pub fn as_integer(&self) -> Option<i64> {
        let q = self.as_rational()?;
        if !q.is_integer() {
            return None;
        }
        i64::try_from(q.to_integer()).ok()
    }

    /// Complex conjugation `(a, b, c, d) ↦ (a, b, −c, −d)`.
    pub fn conj(&self) -> Self {
        ExactScalar {
            a: self.a.clone(),
            b: self.b.clone(),
            c: -&self.c,
            d: -&self.d,
        }
    }

    /// The Galois conjugation `√2 ↦ −√2`.
    pub fn sqrt2_conj(&self) -> Self {
        ExactScalar {
            a: self.a.clone(),
            b: -&self.b,
            c: self.c.clone(),
            d: -&self.d,
        }
    }

    fn re(&self) -> RealPart {
        (self.a.clone(), self.b.clone())
    }

    fn im(&self) -> RealPart {
        (self.c.clone(), self.d.clone())
    }

    fn from_parts(re: RealPart, im: RealPart) -> Self {
        ExactScalar {
            a: re.0,
            b: re.1,
            c: im.0,
            d: im.1,
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        let (x, y) = (self.re(), self.im());
        // x² + y² vanishes only at zero since x, y are real.
        let norm = real_add(&real_mul(&x, &x), &real_mul(&y, &y));
        let inv = real_inv(&norm)?;
        let neg_y = (-&y.0, -&y.1);
        Some(Self::from_parts(real_mul(&x, &inv), real_mul(&neg_y, &inv)))
    }

    /// A square root of a rational number, provided it lies in Q(√2, i).
    ///
    /// Succeeds when `|q|` is a rational square or twice a rational square.
    pub fn sqrt_of_rational(q: &Rational) -> Option<Self> {
        let abs = q.abs();
        let root = if let Some(r) = rational_sqrt(&abs) {
            ExactScalar::rational(r)
        } else {
            let half = &abs / Rational::from_integer(BigInt::from(2));
            let r = rational_sqrt(&half)?;
            ExactScalar {
                b: r,
                ..Self::default()
            }
        };
        if q.is_negative() {
            Some(root * ExactScalar::i())
        } else {
            Some(root)
        }
    }

    /// Short rendering that omits zero components, e.g. `-1`, `1/2*r2`, `(1 + 1*i)`.
    pub fn compact(&self) -> String {
        let parts: Vec<String> = [
            (&self.a, ""),
            (&self.b, "*r2"),
            (&self.c, "*i"),
            (&self.d, "*r2*i"),
        ]
        .iter()
        .filter(|(q, _)| !q.is_zero())
        .map(|(q, suffix)| format!("{q}{suffix}"))
        .collect();
        match parts.len() {
            0 => "0".into(),
            1 => parts.into_iter().next().unwrap(),
            _ => format!("({})", parts.join(" + ")),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(ExactScalar::one(), |acc, _| acc * self)
    }
}

impl fmt::Display for ExactScalar {
    /// Canonical rendering `a + b*r2 + i*(c + d*r2)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}*r2 + i*({} + {}*r2)", self.a, self.b, self.c, self.d)
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self)
    }
}

impl From<i64> for ExactScalar {
    fn from(n: i64) -> Self {
        ExactScalar::int(n)
    }
}

impl From<Rational> for ExactScalar {
    fn from(q: Rational) -> Self {
        ExactScalar::rational(q)
    }
}

impl Zero for ExactScalar {
    fn zero() -> Self {
        ExactScalar::default()
    }
    fn is_zero(&self) -> bool {
        ExactScalar::is_zero(self)
    }
}

impl One for ExactScalar {
    fn one() -> Self {
        ExactScalar::int(1)
    }
}

impl<'a> Add<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn add(self, rhs: &ExactScalar) -> ExactScalar {
        ExactScalar {
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
            c: &self.c + &rhs.c,
            d: &self.d + &rhs.d,
        }
    }
}

impl<'a> Sub<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn sub(self, rhs: &ExactScalar) -> ExactScalar {
        ExactScalar {
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
            c: &self.c - &rhs.c,
            d: &self.d - &rhs.d,
        }
    }
}

impl<'a> Mul<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: &ExactScalar) -> ExactScalar {
        // Fast path: rational times anything.
        if self.is_rational() {
            return ExactScalar {
                a: &self.a * &rhs.a,
                b: &self.a * &rhs.b,
                c: &self.a * &rhs.c,
                d: &self.a * &rhs.d,
            };
        }
        if rhs.is_rational() {
            return rhs * self;
        }
        let (x, y) = (self.re(), self.im());
        let (u, v) = (rhs.re(), rhs.im());
        let re = real_sub(&real_mul(&x, &u), &real_mul(&y, &v));
        let im = real_add(&real_mul(&x, &v), &real_mul(&y, &u));
        ExactScalar::from_parts(re, im)
    }
}

impl<'a> Div<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    /// Panics on division by zero.
    fn div(self, rhs: &ExactScalar) -> ExactScalar {
        let inv = rhs.inv().expect("division by zero in Q(√2, i)");
        self * &inv
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar {
            a: -&self.a,
            b: -&self.b,
            c: -&self.c,
            d: -&self.d,
        }
    }
}

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        -&self
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: ExactScalar) -> ExactScalar {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: &ExactScalar) -> ExactScalar {
                (&self).$method(rhs)
            }
        }
        impl<'a> $tr<ExactScalar> for &'a ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: ExactScalar) -> ExactScalar {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl AddAssign<&ExactScalar> for ExactScalar {
    fn add_assign(&mut self, rhs: &ExactScalar) {
        self.a += &rhs.a;
        self.b += &rhs.b;
        self.c += &rhs.c;
        self.d += &rhs.d;
    }
}

impl AddAssign for ExactScalar {
    fn add_assign(&mut self, rhs: ExactScalar) {
        *self += &rhs;
    }
}

impl SubAssign<&ExactScalar> for ExactScalar {
    fn sub_assign(&mut self, rhs: &ExactScalar) {
        self.a -= &rhs.a;
        self.b -= &rhs.b;
        self.c -= &rhs.c;
        self.d -= &rhs.d;
    }
}

impl MulAssign<&ExactScalar> for ExactScalar {
    fn mul_assign(&mut self, rhs: &ExactScalar) {
        *self = &*self * rhs;
    }
}

impl Sum for ExactScalar {
    fn sum<I: Iterator<Item = ExactScalar>>(iter: I) -> Self {
        iter.fold(ExactScalar::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a ExactScalar> for ExactScalar {
    fn sum<I: Iterator<Item = &'a ExactScalar>>(iter: I) -> Self {
        iter.fold(ExactScalar::zero(), |acc, x| acc + x)
    }
}

impl Product for ExactScalar {
    fn product<I: Iterator<Item = ExactScalar>>(iter: I) -> Self {
        iter.fold(ExactScalar::one(), |acc, x| acc * x)
    }
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

/// Parses scalar expressions built from integers, `r2` (√2), `i`, `+ - * /`
/// and parentheses. The canonical rendering parses back to the same value.
impl FromStr for ExactScalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = ScalarParser {
            src: s,
            chars: s.char_indices().peekable(),
        };
        let value = p.expr()?;
        p.skip_ws();
        if let Some(&(pos, ch)) = p.chars.peek() {
            return Err(p.error(format!("unexpected '{ch}' at offset {pos}")));
        }
        Ok(value)
    }
}

struct ScalarParser<'a> {
    src: &'a str,
    chars: std::iter::Peekable<std::str::CharIndices<'a>>,
}

impl ScalarParser<'_> {
    fn error(&self, msg: String) -> Error {
        Error::Parse(format!("scalar '{}': {msg}", self.src))
    }

    fn skip_ws(&mut self) {
        while matches!(self.chars.peek(), Some((_, c)) if c.is_whitespace()) {
            self.chars.next();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.peek().map(|&(_, c)| c)
    }

    fn expr(&mut self) -> Result<ExactScalar> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some('+') => {
                    self.chars.next();
                    acc = acc + self.term()?;
                }
                Some('-') => {
                    self.chars.next();
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<ExactScalar> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.chars.next();
                    acc = acc * self.unary()?;
                }
                Some('/') => {
                    self.chars.next();
                    let rhs = self.unary()?;
                    let inv = rhs
                        .inv()
                        .ok_or_else(|| self.error("division by zero".into()))?;
                    acc = acc * inv;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<ExactScalar> {
        match self.peek() {
            Some('-') => {
                self.chars.next();
                Ok(-self.unary()?)
            }
            Some('+') => {
                self.chars.next();
                self.unary()
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<ExactScalar> {
        match self.peek() {
            Some('(') => {
                self.chars.next();
                let v = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.error("missing ')'".into()));
                }
                self.chars.next();
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let mut digits = String::new();
                while let Some(&(_, c)) = self.chars.peek() {
                    if c.is_ascii_digit() {
                        digits.push(c);
                        self.chars.next();
                    } else {
                        break;
                    }
                }
                let n: BigInt = digits
                    .parse()
                    .map_err(|_| self.error(format!("bad integer '{digits}'")))?;
                Ok(ExactScalar::rational(Rational::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let mut ident = String::new();
                while let Some(&(_, c)) = self.chars.peek() {
                    if c.is_ascii_alphanumeric() {
                        ident.push(c);
                        self.chars.next();
                    } else {
                        break;
                    }
                }
                match ident.as_str() {
                    "i" => Ok(ExactScalar::i()),
                    "r2" => Ok(ExactScalar::sqrt2()),
                    other => Err(self.error(format!(
                        "unsupported symbol '{other}': only r2 and i are in the scalar field"
                    ))),
                }
            }
            Some(c) => Err(self.error(format!("unexpected '{c}'"))),
            None => Err(self.error("unexpected end of input".into())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(text: &str) -> ExactScalar {
        text.parse().unwrap()
    }

    #[test]
    fn inverse_sqrt2_squared_is_half() {
        let x = ExactScalar::inv_sqrt2();
        assert_eq!(&x * &x, ExactScalar::ratio(1, 2));
    }

    #[test]
    fn i_over_sqrt2_squared_is_minus_half() {
        let x = ExactScalar::i() * ExactScalar::inv_sqrt2();
        assert_eq!(&x * &x, ExactScalar::ratio(-1, 2));
    }

    #[test]
    fn two_times_i_half_times_i_over_sqrt2() {
        // 2 · (i/2) · (i/√2): componentwise, i·i = −1 leaves −√2/2 = −1/√2.
        let lhs = ExactScalar::int(2)
            * (ExactScalar::i() * ExactScalar::ratio(1, 2))
            * (ExactScalar::i() * ExactScalar::inv_sqrt2());
        let expected = ExactScalar::new(
            Rational::zero(),
            Rational::new(BigInt::from(-1), BigInt::from(2)),
            Rational::zero(),
            Rational::zero(),
        );
        assert_eq!(lhs, expected);
        assert_eq!(lhs, -ExactScalar::inv_sqrt2());
    }

    #[test]
    fn conjugations() {
        let x = s("1 + 2*r2 + i*(3 + 4*r2)");
        assert_eq!(x.conj(), s("1 + 2*r2 - i*(3 + 4*r2)"));
        assert_eq!(x.sqrt2_conj(), s("1 - 2*r2 + i*(3 - 4*r2)"));
    }

    #[test]
    fn canonical_rendering() {
        assert_eq!(
            ExactScalar::inv_sqrt2().to_string(),
            "0 + 1/2*r2 + i*(0 + 0*r2)"
        );
        let z = s("-1/3 + i*r2");
        assert_eq!(z.to_string(), "-1/3 + 0*r2 + i*(0 + 1*r2)");
    }

    #[test]
    fn parser_rejects_other_towers() {
        assert!("r3".parse::<ExactScalar>().is_err());
        assert!("1/0".parse::<ExactScalar>().is_err());
        assert!("(1 + i".parse::<ExactScalar>().is_err());
    }

    #[test]
    fn square_roots_in_field() {
        let half = Rational::new(BigInt::from(1), BigInt::from(2));
        let r = ExactScalar::sqrt_of_rational(&half).unwrap();
        assert_eq!(r, ExactScalar::inv_sqrt2());
        let four = Rational::from_integer(BigInt::from(-4));
        assert_eq!(
            ExactScalar::sqrt_of_rational(&four).unwrap(),
            ExactScalar::int(2) * ExactScalar::i()
        );
        let three = Rational::from_integer(BigInt::from(3));
        assert!(ExactScalar::sqrt_of_rational(&three).is_none());
    }

    pub(crate) fn arb_rational() -> impl Strategy<Value = Rational> {
        (-20i64..=20, 1i64..=9).prop_map(|(p, q)| Rational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub(crate) fn arb_scalar() -> impl Strategy<Value = ExactScalar> {
        (arb_rational(), arb_rational(), arb_rational(), arb_rational())
            .prop_map(|(a, b, c, d)| ExactScalar::new(a, b, c, d))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn field_axioms(x in arb_scalar(), y in arb_scalar(), z in arb_scalar()) {
            prop_assert_eq!((&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!((&x + &y) * &z, &x * &z + &y * &z);
            prop_assert_eq!(&x * &y, &y * &x);
            if !x.is_zero() {
                prop_assert!((&x * &x.inv().unwrap()).is_one());
            }
        }

        #[test]
        fn canonical_text_round_trips(x in arb_scalar()) {
            prop_assert_eq!(x.to_string().parse::<ExactScalar>().unwrap(), x.clone());
            prop_assert_eq!(x.compact().parse::<ExactScalar>().unwrap(), x);
        }
    }
}
