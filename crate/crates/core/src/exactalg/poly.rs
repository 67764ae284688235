//! Dense univariate polynomials over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use super::rat::Rat;
use super::AlgebraError;

/// Degree of a polynomial. The zero polynomial has degree `NegInfinity`,
/// which orders below every finite degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Coefficient `i` multiplies `x^i`. The highest stored coefficient is never
/// zero; the zero polynomial stores nothing.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rat::one())
    }

    pub fn x() -> Self {
        Poly::monomial(Rat::one(), 1)
    }

    pub fn constant(c: Rat) -> Self {
        Poly::from_coeffs(vec![c])
    }

    pub fn monomial(c: Rat, exp: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rat::zero(); exp + 1];
        coeffs[exp] = c;
        Poly { coeffs }
    }

    /// `x - root`.
    pub fn linear(root: &Rat) -> Self {
        Poly::from_coeffs(vec![-root, Rat::one()])
    }

    /// Ascending coefficients; trailing zeros are trimmed.
    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Rat::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Poly::from_coeffs(coeffs.iter().map(|&c| Rat::from(c)).collect())
    }

    /// `∏ (x - root)` over the given roots.
    pub fn from_roots<'a>(roots: impl IntoIterator<Item = &'a Rat>) -> Self {
        roots
            .into_iter()
            .fold(Poly::one(), |acc, r| &acc * &Poly::linear(r))
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rat> {
        self.coeffs
    }

    /// Coefficient of `x^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInfinity,
            n => Degree::Finite(n - 1),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// True for the zero polynomial and nonzero constants alike.
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading_coeff(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn eval(&self, at: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * at + c;
        }
        acc
    }

    /// Sign of the value at `at`.
    pub fn sign_at(&self, at: &Rat) -> i8 {
        self.eval(at).signum()
    }

    /// Sign of the value as `x -> +inf` (or `-inf` when `at_neg` is set).
    pub fn sign_at_infinity(&self, at_neg: bool) -> i8 {
        match self.leading_coeff() {
            None => 0,
            Some(lc) => {
                let s = lc.signum();
                if at_neg && self.coeffs.len().is_multiple_of(2) {
                    -s
                } else {
                    s
                }
            }
        }
    }

    pub fn derivative(&self) -> Poly {
        Poly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rat::from(i as i64))
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Poly {
        let mut result = Poly::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Integer power with a signed exponent; negative exponents are rejected.
    pub fn checked_pow(&self, exp: i64) -> Result<Poly, AlgebraError> {
        let e = u32::try_from(exp).map_err(|_| AlgebraError::NegativeExponent(exp))?;
        Ok(self.pow(e))
    }

    /// Scales to leading coefficient one. The zero polynomial is returned as is.
    pub fn monic(&self) -> Poly {
        match self.leading_coeff() {
            None => Poly::zero(),
            Some(lc) => self.scale(&lc.recip().expect("nonzero leading coefficient")),
        }
    }

    /// Long division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn divrem(&self, divisor: &Poly) -> Result<(Poly, Poly), AlgebraError> {
        let dlc = divisor
            .leading_coeff()
            .ok_or(AlgebraError::DivisionByZero)?;
        let dlen = divisor.coeffs.len();
        if self.coeffs.len() < dlen {
            return Ok((Poly::zero(), self.clone()));
        }
        let inv = dlc.recip().expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rat::zero(); rem.len() - dlen + 1];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dlen - 1] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &c * d;
            }
            quot[k] = c;
        }
        rem.truncate(dlen - 1);
        Ok((Poly::from_coeffs(quot), Poly::from_coeffs(rem)))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly, AlgebraError> {
        self.divrem(divisor).map(|(_, r)| r)
    }

    /// True when `divisor` divides `self` with zero remainder.
    pub fn is_divisible_by(&self, divisor: &Poly) -> Result<bool, AlgebraError> {
        Ok(self.rem(divisor)?.is_zero())
    }

    /// Quotient of an exact division; `None` when the remainder is nonzero.
    pub fn exact_div(&self, divisor: &Poly) -> Result<Option<Poly>, AlgebraError> {
        let (q, r) = self.divrem(divisor)?;
        Ok(r.is_zero().then_some(q))
    }

    /// `(d, n)` with `self = n / d` coefficientwise, `d` the lcm of the
    /// denominators.
    fn scaled_numerators(&self) -> (BigInt, Vec<BigInt>) {
        let d = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let n = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&d / c.denom()))
            .collect();
        (d, n)
    }

    /// Splits off the content: returns `(content, p)` with `self = content * p`,
    /// `p` having coprime integer coefficients and positive leading coefficient.
    /// The zero polynomial yields `(0, 0)`.
    pub fn primitive_part(&self) -> (Rat, Poly) {
        let Some(lc) = self.leading_coeff() else {
            return (Rat::zero(), Poly::zero());
        };
        let (denom_lcm, ints) = self.scaled_numerators();
        let mut g = ints.iter().fold(BigInt::zero(), |acc, n| acc.gcd(n));
        if lc.is_negative() {
            g = -g;
        }
        let content = Rat::new(g.clone(), denom_lcm).expect("nonzero");
        let prim = Poly::from_coeffs(ints.into_iter().map(|n| Rat::from(n / &g)).collect());
        (content, prim)
    }

    /// Monic greatest common divisor. Euclid's algorithm with primitive
    /// remainders to hold coefficient growth down.
    pub fn gcd(&self, other: &Poly) -> Result<Poly, AlgebraError> {
        if self.is_zero() && other.is_zero() {
            return Err(AlgebraError::GcdOfZeros);
        }
        let (mut a, mut b) = (self.primitive_part().1, other.primitive_part().1);
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r.primitive_part().1;
        }
        Ok(a.monic())
    }

    /// `self^exp mod modulus`, by repeated squaring.
    pub fn pow_mod(&self, exp: &BigUint, modulus: &Poly) -> Result<Poly, AlgebraError> {
        if modulus.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let mut result = Poly::one().rem(modulus)?;
        let base = self.rem(modulus)?;
        for i in (0..exp.bits()).rev() {
            result = (&result * &result).rem(modulus)?;
            if exp.bit(i) {
                result = (&result * &base).rem(modulus)?;
            }
        }
        Ok(result)
    }

    /// Multiplicity of `root` as a root of `self`; zero for the zero polynomial.
    pub fn root_multiplicity(&self, root: &Rat) -> usize {
        let lin = Poly::linear(root);
        let mut p = self.clone();
        let mut mult = 0;
        while !p.is_zero() {
            match p.exact_div(&lin).expect("nonzero divisor") {
                Some(q) => {
                    p = q;
                    mult += 1;
                }
                None => break,
            }
        }
        mult
    }

    /// `self(x)` with `x` replaced by `-x`.
    pub fn reflect(&self) -> Poly {
        Poly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// Bit length of the largest numerator or denominator among the coefficients.
    pub fn height_bits(&self) -> u64 {
        self.coeffs
            .iter()
            .map(|c| c.numer().bits().max(c.denom().bits()))
            .max()
            .unwrap_or(0)
    }

    fn combine(&self, other: &Poly, op: impl Fn(&Rat, &Rat) -> Rat) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = Rat::zero();
        Poly::from_coeffs(
            (0..n)
                .map(|i| {
                    op(
                        self.coeffs.get(i).unwrap_or(&zero),
                        other.coeffs.get(i).unwrap_or(&zero),
                    )
                })
                .collect(),
        )
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{:?}", self.coeffs)
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &'a Poly) -> Poly {
        self.combine(rhs, |a, b| a + b)
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &'a Poly) -> Poly {
        self.combine(rhs, |a, b| a - b)
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &'a Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        // Multiply over the integers and normalize each output once.
        let (da, a) = self.scaled_numerators();
        let (db, b) = rhs.scaled_numerators();
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        let d = da * db;
        Poly::from_coeffs(
            out.into_iter()
                .map(|n| Rat::new(n, d.clone()).expect("nonzero denominator"))
                .collect(),
        )
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

/// A polynomial that splits over the rationals, kept as sorted
/// `(root, multiplicity)` pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredSplit {
    factors: Vec<(Rat, BigUint)>,
}

impl FactoredSplit {
    /// Sorts the factors; rejects repeated roots and zero multiplicities.
    pub fn new(mut factors: Vec<(Rat, BigUint)>) -> Result<Self, AlgebraError> {
        factors.sort_by(|a, b| a.0.cmp(&b.0));
        if factors.iter().any(|(_, m)| m.is_zero()) {
            return Err(AlgebraError::ZeroMultiplicity);
        }
        if factors.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(AlgebraError::RepeatedRoot);
        }
        Ok(FactoredSplit { factors })
    }

    pub fn factors(&self) -> &[(Rat, BigUint)] {
        &self.factors
    }

    pub fn degree(&self) -> BigUint {
        self.factors.iter().map(|(_, m)| m).sum()
    }

    /// Dense expansion, or `None` when the degree exceeds `max_degree`.
    pub fn expand(&self, max_degree: usize) -> Option<Poly> {
        if self.degree() > BigUint::from(max_degree) {
            return None;
        }
        Some(self.factors.iter().fold(Poly::one(), |acc, (r, m)| {
            let m = u32::try_from(m).expect("bounded by max_degree");
            &acc * &Poly::linear(r).pow(m)
        }))
    }
}
