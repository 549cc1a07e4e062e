//! Exact arithmetic in the field `Q(v)` of rational functions in one
//! variable `v` with rational coefficients.
//!
//! Every scalar is stored as a reduced fraction of two integer-coefficient
//! polynomials in `v`.  Laurent polynomials (negative powers of `v`) are
//! representable because the denominator may be a power of `v`.  The
//! normal form is unique:
//!
//! * numerator and denominator have no common polynomial factor,
//! * the pair of integer contents is coprime,
//! * the leading coefficient of the denominator is positive,
//! * the zero scalar is `0/1`.
//!
//! Equality of normal forms is therefore structural equality, which gives
//! the exact zero test every higher layer relies on.
//!
//! The deformation parameter of the algebra is `q = v^2`, so that `q^(1/2)
//! = v` is available exactly.  All exponents of `q` that occur are integers
//! or half-integers and are passed around as integer exponents of `v`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use thiserror::Error;

/// Error produced when parsing the textual form of a [`Scalar`].
#[derive(Debug, Error)]
pub enum ParseScalarError {
    #[error("unexpected character {0:?} at byte {1}")]
    UnexpectedChar(char, usize),
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("division by zero in scalar literal")]
    DivisionByZero,
    #[error("malformed expression near byte {0}")]
    Malformed(usize),
}

/// A dense integer-coefficient polynomial in `v`; `coeffs[k]` is the
/// coefficient of `v^k`.  Invariant: no trailing zero coefficients (the
/// zero polynomial is the empty vector).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        if c.is_zero() {
            IntPoly::zero()
        } else {
            IntPoly { coeffs: vec![c] }
        }
    }

    /// The monomial `c * v^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        if c.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        IntPoly { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the polynomial; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Multiplicity of the root `v = 0`, i.e. the lowest exponent with a
    /// nonzero coefficient.  Zero polynomial reports `None`.
    pub fn low_order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) + other.coeff(k));
        }
        IntPoly::from_coeffs(out)
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) - other.coeff(k));
        }
        IntPoly::from_coeffs(out)
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(out)
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        if c.is_zero() {
            return IntPoly::zero();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// GCD of the absolute values of all coefficients (0 for the zero
    /// polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divide every coefficient by `d`, which must divide the content.
    fn div_exact_scalar(&self, d: &BigInt) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| c / d).collect(),
        }
    }

    /// Exact polynomial division; panics if `other` does not divide `self`
    /// (only used internally after a gcd computation).
    fn div_exact(&self, other: &IntPoly) -> IntPoly {
        assert!(!other.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return IntPoly::zero();
        }
        let dn = self.coeffs.len();
        let dd = other.coeffs.len();
        assert!(dn >= dd, "inexact polynomial division");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); dn - dd + 1];
        let lc = other.coeffs.last().unwrap();
        for k in (0..quot.len()).rev() {
            let top = rem[k + dd - 1].clone();
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lc);
            assert!(r.is_zero(), "inexact polynomial division");
            quot[k] = q.clone();
            for (j, b) in other.coeffs.iter().enumerate() {
                rem[k + j] -= &q * b;
            }
        }
        assert!(rem.iter().all(|c| c.is_zero()), "inexact polynomial division");
        IntPoly::from_coeffs(quot)
    }

    /// Primitive part: the polynomial divided by its content, with the
    /// sign chosen so the leading coefficient is positive.
    fn primitive_part(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut c = self.content();
        if self.leading_coeff().unwrap().is_negative() {
            c = -c;
        }
        self.div_exact_scalar(&c)
    }

    /// Pseudo-remainder of `self` by `other` (`other` nonzero,
    /// `deg self >= deg other`).
    fn pseudo_rem(&self, other: &IntPoly) -> IntPoly {
        let mut rem = self.clone();
        let d = other.coeffs.len() - 1;
        let lc = other.leading_coeff().unwrap().clone();
        while !rem.is_zero() && rem.coeffs.len() - 1 >= d {
            let k = rem.coeffs.len() - 1 - d;
            let top = rem.leading_coeff().unwrap().clone();
            let shifted = IntPoly::monomial(top, k).mul(other);
            rem = rem.scale(&lc).sub(&shifted);
        }
        rem
    }

    /// Polynomial GCD over the integers, returned as a primitive
    /// polynomial with positive leading coefficient, scaled by the gcd of
    /// the two contents.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() {
            return other.primitive_part().scale(&other.content());
        }
        if other.is_zero() {
            return self.primitive_part().scale(&self.content());
        }
        let content = self.content().gcd(&other.content());
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.coeffs.len() < b.coeffs.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        a.scale(&content)
    }

    /// Evaluate at an exact rational point `num/den`, returning
    /// `(value_num, value_den)` unreduced.  Used by tests as an
    /// independent cross-check of the symbolic arithmetic.
    pub fn eval_rational(&self, num: &BigInt, den: &BigInt) -> (BigInt, BigInt) {
        // Horner over Q: value = sum c_k (num/den)^k = (sum c_k num^k den^(d-k)) / den^d
        let d = match self.degree() {
            None => return (BigInt::zero(), BigInt::one()),
            Some(d) => d,
        };
        let mut acc = BigInt::zero();
        for k in (0..=d).rev() {
            acc = acc * num + &self.coeffs[k] * den.pow((d - k) as u32);
        }
        (acc, den.pow(d as u32))
    }
}

/// An element of `Q(v)`, kept in the unique reduced normal form described
/// in the module documentation.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Scalar {
    num: IntPoly,
    den: IntPoly,
}

impl Scalar {
    fn reduce(num: IntPoly, den: IntPoly) -> Scalar {
        assert!(!den.is_zero(), "scalar with zero denominator");
        if num.is_zero() {
            return Scalar {
                num: IntPoly::zero(),
                den: IntPoly::one(),
            };
        }
        let g = num.gcd(&den);
        let mut num = num.div_exact(&g);
        let mut den = den.div_exact(&g);
        if den.leading_coeff().unwrap().is_negative() {
            num = num.neg();
            den = den.neg();
        }
        Scalar { num, den }
    }

    pub fn zero() -> Scalar {
        Scalar {
            num: IntPoly::zero(),
            den: IntPoly::one(),
        }
    }

    pub fn one() -> Scalar {
        Scalar {
            num: IntPoly::one(),
            den: IntPoly::one(),
        }
    }

    pub fn from_int(n: i64) -> Scalar {
        Scalar {
            num: IntPoly::constant(BigInt::from(n)),
            den: IntPoly::one(),
        }
    }

    pub fn from_bigint(n: BigInt) -> Scalar {
        Scalar {
            num: IntPoly::constant(n),
            den: IntPoly::one(),
        }
    }

    /// The monomial `v^e`, with `e` of either sign.
    pub fn v_pow(e: i64) -> Scalar {
        if e >= 0 {
            Scalar {
                num: IntPoly::monomial(BigInt::one(), e as usize),
                den: IntPoly::one(),
            }
        } else {
            Scalar {
                num: IntPoly::one(),
                den: IntPoly::monomial(BigInt::one(), (-e) as usize),
            }
        }
    }

    /// `q^e` where `q = v^2` and `e` is an integer.
    pub fn q_pow(e: i64) -> Scalar {
        Scalar::v_pow(2 * e)
    }

    /// `q^(e/2) = v^e`; the argument is the exponent of `v`, allowing
    /// half-integer powers of `q`.
    pub fn q_half_pow(e_of_v: i64) -> Scalar {
        Scalar::v_pow(e_of_v)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == IntPoly::one() && self.den == IntPoly::one()
    }

    pub fn numerator(&self) -> &IntPoly {
        &self.num
    }

    pub fn denominator(&self) -> &IntPoly {
        &self.den
    }

    pub fn inv(&self) -> Scalar {
        assert!(!self.is_zero(), "inverse of zero scalar");
        Scalar::reduce(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: i64) -> Scalar {
        if e == 0 {
            return Scalar::one();
        }
        let base = if e < 0 { self.inv() } else { self.clone() };
        let mut acc = Scalar::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        acc
    }

    /// Substitute `v -> v^(-1)`.  This is the bar-type field automorphism
    /// that sends `q` to `q^(-1)`; it underpins the algebra
    /// anti-automorphism on elements.
    pub fn bar(&self) -> Scalar {
        // num(1/v)/den(1/v) = (v^dd * rev(num)) / (v^dn * rev(den))
        let dn = self.num.degree().unwrap_or(0);
        let dd = self.den.degree().unwrap_or(0);
        let rev = |p: &IntPoly, d: usize| {
            let mut coeffs = vec![BigInt::zero(); d + 1];
            for k in 0..=d {
                coeffs[d - k] = p.coeff(k);
            }
            IntPoly::from_coeffs(coeffs)
        };
        if self.is_zero() {
            return Scalar::zero();
        }
        let num = rev(&self.num, dn).mul(&IntPoly::monomial(BigInt::one(), dd));
        let den = rev(&self.den, dd).mul(&IntPoly::monomial(BigInt::one(), dn));
        Scalar::reduce(num, den)
    }

    /// Evaluate at an exact rational point `v = num/den`, as a reduced
    /// big-rational pair.  Denominator must not vanish at the point.
    pub fn eval_rational(&self, vnum: &BigInt, vden: &BigInt) -> (BigInt, BigInt) {
        let (nn, nd) = self.num.eval_rational(vnum, vden);
        let (dn, dd) = self.den.eval_rational(vnum, vden);
        assert!(!dn.is_zero(), "denominator vanishes at evaluation point");
        let mut rn = nn * dd;
        let mut rd = nd * dn;
        let g = rn.gcd(&rd);
        if !g.is_zero() {
            rn /= &g;
            rd /= &g;
        }
        if rd.is_negative() {
            rn = -rn;
            rd = -rd;
        }
        (rn, rd)
    }

    /// The symmetric `q`-integer `[a]_t = (v^(t a) - v^(-t a)) / (v^t -
    /// v^(-t))`, where `v^t` plays the role of `q_i`.  `t` is the exponent
    /// of `v` realizing `q_i` (e.g. `t = 2` for `q_i = q`).
    pub fn q_integer(a: i64, t: i64) -> Scalar {
        assert!(t != 0, "q-integer with q_i = 1");
        if a == 0 {
            return Scalar::zero();
        }
        // [a] = sign(a) * (v^(t(|a|-1)) + v^(t(|a|-3)) + ... + v^(-t(|a|-1)))
        let s = a.signum();
        let a = a.abs();
        let mut acc = Scalar::zero();
        let mut e = t * (a - 1);
        for _ in 0..a {
            acc = &acc + &Scalar::v_pow(e);
            e -= 2 * t;
        }
        if s < 0 {
            acc = -&acc;
        }
        acc
    }

    /// The `q`-factorial `[a]_t!`.
    pub fn q_factorial(a: u32, t: i64) -> Scalar {
        let mut acc = Scalar::one();
        for k in 1..=a as i64 {
            acc = &acc * &Scalar::q_integer(k, t);
        }
        acc
    }

    /// Parse the textual form produced by [`fmt::Display`], accepting the
    /// mildly larger grammar of sums/differences/products/quotients of
    /// integer literals and powers of `v`.
    pub fn parse(input: &str) -> Result<Scalar, ParseScalarError> {
        let mut p = Parser {
            bytes: input.as_bytes(),
            pos: 0,
        };
        let s = p.parse_expr()?;
        p.skip_ws();
        if p.pos != p.bytes.len() {
            return Err(ParseScalarError::Malformed(p.pos));
        }
        Ok(s)
    }
}

// ---------------------------------------------------------------------------
// Operator impls (by reference; owned variants forward to these).
// ---------------------------------------------------------------------------

impl<'b> Add<&'b Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'b Scalar) -> Scalar {
        let num = self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den));
        let den = self.den.mul(&rhs.den);
        Scalar::reduce(num, den)
    }
}

impl<'b> Sub<&'b Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'b Scalar) -> Scalar {
        let num = self.num.mul(&rhs.den).sub(&rhs.num.mul(&self.den));
        let den = self.den.mul(&rhs.den);
        Scalar::reduce(num, den)
    }
}

impl<'b> Mul<&'b Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'b Scalar) -> Scalar {
        Scalar::reduce(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }
}

impl<'b> Div<&'b Scalar> for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &'b Scalar) -> Scalar {
        assert!(!rhs.is_zero(), "division by zero scalar");
        Scalar::reduce(self.num.mul(&rhs.den), self.den.mul(&rhs.num))
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Div for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        &self / &rhs
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

// ---------------------------------------------------------------------------
// Display / parsing
// ---------------------------------------------------------------------------

fn fmt_poly(p: &IntPoly, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if p.is_zero() {
        return write!(f, "0");
    }
    let d = p.degree().unwrap();
    let mut first = true;
    for k in (0..=d).rev() {
        let c = p.coeff(k);
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if first {
            if c.is_negative() {
                write!(f, "-")?;
            }
            first = false;
        } else if c.is_negative() {
            write!(f, "-")?;
        } else {
            write!(f, "+")?;
        }
        match (k, mag.is_one()) {
            (0, _) => write!(f, "{mag}")?,
            (1, true) => write!(f, "v")?,
            (1, false) => write!(f, "{mag}*v")?,
            (_, true) => write!(f, "v^{k}")?,
            (_, false) => write!(f, "{mag}*v^{k}")?,
        }
    }
    Ok(())
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        fmt_poly(&self.num, f)?;
        write!(f, ")")?;
        if self.den != IntPoly::one() {
            write!(f, "/(")?;
            fmt_poly(&self.den, f)?;
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_poly(self, f)
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    /// expr := term (('+'|'-') term)*
    fn parse_expr(&mut self) -> Result<Scalar, ParseScalarError> {
        let mut acc = self.parse_term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    let t = self.parse_term()?;
                    acc = &acc + &t;
                }
                b'-' => {
                    self.pos += 1;
                    let t = self.parse_term()?;
                    acc = &acc - &t;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    /// term := factor (('*'|'/') factor | factor-without-operator)*
    ///
    /// Juxtaposition with an explicit sign is not allowed, but `2v^3`
    /// style implicit products are not produced by Display, so only
    /// explicit `*` and `/` are accepted here.
    fn parse_term(&mut self) -> Result<Scalar, ParseScalarError> {
        let mut acc = self.parse_factor()?;
        while let Some(c) = self.peek() {
            match c {
                b'*' => {
                    self.pos += 1;
                    let t = self.parse_factor()?;
                    acc = &acc * &t;
                }
                b'/' => {
                    self.pos += 1;
                    let t = self.parse_factor()?;
                    if t.is_zero() {
                        return Err(ParseScalarError::DivisionByZero);
                    }
                    acc = &acc / &t;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    /// factor := ['-'] atom ['^' int]
    fn parse_factor(&mut self) -> Result<Scalar, ParseScalarError> {
        let mut neg = false;
        while let Some(c) = self.peek() {
            match c {
                b'-' => {
                    neg = !neg;
                    self.pos += 1;
                }
                b'+' => {
                    self.pos += 1;
                }
                _ => break,
            }
        }
        let base = self.parse_atom()?;
        let mut out = base;
        if let Some(b'^') = self.peek() {
            self.pos += 1;
            let e = self.parse_int()?;
            if out.is_zero() && e < 0 {
                return Err(ParseScalarError::DivisionByZero);
            }
            out = out.pow(e);
        }
        if neg {
            out = -&out;
        }
        Ok(out)
    }

    /// atom := 'v' | integer | '(' expr ')'
    fn parse_atom(&mut self) -> Result<Scalar, ParseScalarError> {
        match self.peek() {
            None => Err(ParseScalarError::UnexpectedEnd),
            Some(b'v') => {
                self.pos += 1;
                Ok(Scalar::v_pow(1))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.parse_expr()?;
                match self.peek() {
                    Some(b')') => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    Some(c) => Err(ParseScalarError::UnexpectedChar(c as char, self.pos)),
                    None => Err(ParseScalarError::UnexpectedEnd),
                }
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.parse_int()?;
                Ok(Scalar::from_int(n))
            }
            Some(c) => Err(ParseScalarError::UnexpectedChar(c as char, self.pos)),
        }
    }

    fn parse_int(&mut self) -> Result<i64, ParseScalarError> {
        self.skip_ws();
        let start = self.pos;
        let mut neg = false;
        if let Some(&c) = self.bytes.get(self.pos) {
            if c == b'-' {
                neg = true;
                self.pos += 1;
            } else if c == b'+' {
                self.pos += 1;
            }
        }
        let digits_start = self.pos;
        while self
            .bytes
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_digit())
        {
            self.pos += 1;
        }
        if self.pos == digits_start {
            return Err(ParseScalarError::Malformed(start));
        }
        let s = std::str::from_utf8(&self.bytes[digits_start..self.pos]).unwrap();
        let mut n: i64 = s.parse().map_err(|_| ParseScalarError::Malformed(start))?;
        if neg {
            n = -n;
        }
        Ok(n)
    }
}

/// Total order on scalars used only for deterministic serialization
/// ordering; it compares the printed forms and has no algebraic meaning.
impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        self.to_string().cmp(&other.to_string())
    }
}


impl IntPoly {
    /// Exact polynomial square root: returns `q` with `q^2 == self`, with
    /// a non-negative leading coefficient, or `None`.
    pub fn sqrt_exact(&self) -> Option<IntPoly> {
        use num_traits::Zero as _;
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        let n = self.degree()?;
        if n % 2 != 0 {
            return None;
        }
        let h = n / 2;
        let lead = self.coeff(n);
        if lead.sign() == num_bigint::Sign::Minus {
            return None;
        }
        let qh = lead.sqrt();
        if &qh * &qh != lead {
            return None;
        }
        let mut q = vec![BigInt::zero(); h + 1];
        q[h] = qh.clone();
        for k in (0..h).rev() {
            // Coefficient of x^(h+k) in q^2 is 2*q_h*q_k plus the cross
            // terms with both indices strictly between k and h.
            let mut cross = BigInt::zero();
            for i in (k + 1)..h {
                let j = h + k - i;
                if j > k && j < h && j + i == h + k && i >= j {
                    // count each unordered pair once, doubled; the i == j
                    // case contributes a single square
                    if i == j {
                        cross += &q[i] * &q[j];
                    } else {
                        cross += 2 * (&q[i] * &q[j]);
                    }
                }
            }
            let num = self.coeff(h + k) - cross;
            let den = 2 * &qh;
            if (&num % &den) != BigInt::zero() {
                return None;
            }
            q[k] = num / den;
        }
        let cand = IntPoly::from_coeffs(q);
        if cand.mul(&cand) == *self {
            Some(cand)
        } else {
            None
        }
    }
}

impl Scalar {
    /// Exact square root in `Q(v)` with a non-negative leading numerator
    /// coefficient, or `None` if the value is not a perfect square.
    pub fn sqrt_exact(&self) -> Option<Scalar> {
        let num = self.numerator().sqrt_exact()?;
        let den = self.denominator().sqrt_exact()?;
        Some(Scalar::reduce(num, den))
    }
}
