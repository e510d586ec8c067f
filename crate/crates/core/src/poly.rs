//! Sparse multivariate polynomials over the seven rate indeterminates.
//!
//! The variable order is fixed once and for all as
//! `(alpha, beta, gamma, delta, q, u, z)`; monomials are exponent tuples in
//! that order and the canonical term order is lexicographic descending on
//! the tuple. Coefficients are arbitrary-precision rationals. Polynomials
//! are kept in canonical form: no explicit zero coefficients, so structural
//! equality is mathematical equality.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num::{BigInt, BigRational, One, Signed, Zero};
use serde_json::{json, Value};

use crate::ParseError;

/// Number of indeterminates.
pub const NUM_VARS: usize = 7;

/// The seven indeterminates, in canonical order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Var {
    Alpha,
    Beta,
    Gamma,
    Delta,
    Q,
    U,
    Z,
}

impl Var {
    pub const ALL: [Var; NUM_VARS] = [
        Var::Alpha,
        Var::Beta,
        Var::Gamma,
        Var::Delta,
        Var::Q,
        Var::U,
        Var::Z,
    ];

    pub fn index(self) -> usize {
        match self {
            Var::Alpha => 0,
            Var::Beta => 1,
            Var::Gamma => 2,
            Var::Delta => 3,
            Var::Q => 4,
            Var::U => 5,
            Var::Z => 6,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::Alpha => "alpha",
            Var::Beta => "beta",
            Var::Gamma => "gamma",
            Var::Delta => "delta",
            Var::Q => "q",
            Var::U => "u",
            Var::Z => "z",
        }
    }

    pub fn from_name(name: &str) -> Option<Var> {
        Var::ALL.iter().copied().find(|v| v.name() == name)
    }
}

/// A power product of the seven variables, stored as an exponent tuple.
///
/// `Ord` on the underlying array is lexicographic in variable order, which
/// is exactly the canonical monomial order (ascending); serialization
/// iterates in reverse for the descending canonical form.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Monomial([u32; NUM_VARS]);

impl Monomial {
    /// The empty power product (constant 1).
    pub fn one() -> Monomial {
        Monomial([0; NUM_VARS])
    }

    pub fn var(v: Var, exp: u32) -> Monomial {
        Monomial::one().times(v, exp)
    }

    /// Multiplies by `v^exp`.
    pub fn times(mut self, v: Var, exp: u32) -> Monomial {
        self.0[v.index()] = self.0[v.index()]
            .checked_add(exp)
            .expect("monomial exponent overflow");
        self
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0[v.index()]
    }

    pub fn exponents(&self) -> &[u32; NUM_VARS] {
        &self.0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for (e, o) in out.0.iter_mut().zip(other.0.iter()) {
            *e = e.checked_add(*o).expect("monomial exponent overflow");
        }
        out
    }

    /// Total degree (sum of all exponents).
    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| u64::from(e)).sum()
    }

    /// Total degree with one variable's exponent excluded.
    pub fn degree_ignoring(&self, v: Var) -> u64 {
        self.degree() - u64::from(self.0[v.index()])
    }
}

/// A sparse polynomial with exact rational coefficients, in canonical form.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, BigRational>,
}

impl Polynomial {
    pub fn zero() -> Polynomial {
        Polynomial::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn one() -> Polynomial {
        Polynomial::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Polynomial {
        Polynomial::monomial(Monomial::one(), c)
    }

    pub fn from_int(n: i64) -> Polynomial {
        Polynomial::constant(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn var(v: Var) -> Polynomial {
        Polynomial::monomial(Monomial::var(v, 1), BigRational::one())
    }

    /// Single-term polynomial `c * m`; the zero coefficient gives zero.
    pub fn monomial(m: Monomial, c: BigRational) -> Polynomial {
        let mut p = Polynomial::zero();
        p.add_term(m, &c);
        p
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Maximum total degree over all terms; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u64> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Terms in ascending lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    /// Terms in the canonical (descending lexicographic) order.
    pub fn terms_canonical(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter().rev()
    }

    /// Adds `c * m`, dropping the entry if the coefficient cancels.
    pub fn add_term(&mut self, m: Monomial, c: &BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        let mut out = Polynomial::zero();
        for (m, coeff) in self.terms() {
            out.terms.insert(*m, coeff * c);
        }
        out
    }

    /// Multiplies by a single power product.
    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (mono, coeff) in self.terms() {
            out.terms.insert(mono.mul(m), coeff.clone());
        }
        out
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut out = Polynomial::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Evaluates at a full assignment of all seven variables.
    pub fn eval(&self, pt: &ParamPoint) -> BigRational {
        let mut total = BigRational::zero();
        for (m, c) in self.terms() {
            let mut val = c.clone();
            for v in Var::ALL {
                let e = m.exponent(v);
                if e > 0 {
                    val *= rational_pow(pt.get(v), e);
                }
            }
            total += val;
        }
        total
    }

    /// Substitutes exact values for a subset of the variables, leaving the
    /// rest symbolic.
    pub fn substitute(&self, assignments: &[(Var, BigRational)]) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in self.terms() {
            let mut coeff = c.clone();
            let mut mono = *m;
            for (v, val) in assignments {
                let e = mono.exponent(*v);
                if e > 0 {
                    coeff *= rational_pow(val, e);
                }
                mono.0[v.index()] = 0;
            }
            out.add_term(mono, &coeff);
        }
        out
    }

    /// If the polynomial has exactly one term, returns it.
    pub fn as_monomial(&self) -> Option<(&Monomial, &BigRational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// Serializes to the interchange form: variable list plus terms in
    /// canonical order with exact coefficient strings.
    pub fn to_json(&self) -> Value {
        let vars: Vec<Value> = Var::ALL.iter().map(|v| json!(v.name())).collect();
        let terms: Vec<Value> = self
            .terms_canonical()
            .map(|(m, c)| {
                json!({
                    "coeff": rational_str(c),
                    "exp": m.exponents().to_vec(),
                })
            })
            .collect();
        json!({ "vars": vars, "terms": terms })
    }

    pub fn from_json(v: &Value) -> Result<Polynomial, ParseError> {
        let obj = v
            .as_object()
            .ok_or_else(|| ParseError("polynomial JSON must be an object".into()))?;
        let vars = obj
            .get("vars")
            .and_then(Value::as_array)
            .ok_or_else(|| ParseError("missing \"vars\" array".into()))?;
        let expected: Vec<&str> = Var::ALL.iter().map(|v| v.name()).collect();
        let got: Vec<&str> = vars.iter().filter_map(Value::as_str).collect();
        if got != expected {
            return Err(ParseError(format!(
                "variable list must be {expected:?}, got {got:?}"
            )));
        }
        let terms = obj
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| ParseError("missing \"terms\" array".into()))?;
        let mut out = Polynomial::zero();
        for t in terms {
            let coeff = t
                .get("coeff")
                .and_then(Value::as_str)
                .ok_or_else(|| ParseError("term missing \"coeff\" string".into()))?;
            let coeff = parse_rational(coeff)?;
            let exp = t
                .get("exp")
                .and_then(Value::as_array)
                .ok_or_else(|| ParseError("term missing \"exp\" array".into()))?;
            if exp.len() != NUM_VARS {
                return Err(ParseError(format!(
                    "exponent tuple must have {NUM_VARS} entries, got {}",
                    exp.len()
                )));
            }
            let mut mono = Monomial::one();
            for (i, e) in exp.iter().enumerate() {
                let e = e
                    .as_u64()
                    .ok_or_else(|| ParseError("exponents must be non-negative integers".into()))?;
                let e = u32::try_from(e)
                    .map_err(|_| ParseError("exponent too large".into()))?;
                mono.0[i] = e;
            }
            out.add_term(mono, &coeff);
        }
        Ok(out)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms_canonical().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let abs = c.abs();
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.degree() == 0 {
                factors.push(rational_str(&abs));
            }
            for v in Var::ALL {
                match m.exponent(v) {
                    0 => {}
                    1 => factors.push(v.name().to_string()),
                    e => factors.push(format!("{}^{}", v.name(), e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in rhs.terms() {
            self.add_term(*m, c);
        }
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in rhs.terms() {
            out.add_term(*m, &-c.clone());
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        &Polynomial::zero() - self
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (ma, ca) in self.terms() {
            for (mb, cb) in rhs.terms() {
                out.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        out
    }
}

/// An exact assignment of rational values to all seven variables.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ParamPoint {
    values: [BigRational; NUM_VARS],
}

impl ParamPoint {
    pub fn new(values: [BigRational; NUM_VARS]) -> ParamPoint {
        ParamPoint { values }
    }

    /// Builds a point from the six rates, with `z = 1`.
    pub fn six(
        alpha: BigRational,
        beta: BigRational,
        gamma: BigRational,
        delta: BigRational,
        q: BigRational,
        u: BigRational,
    ) -> ParamPoint {
        ParamPoint::new([alpha, beta, gamma, delta, q, u, BigRational::one()])
    }

    /// All seven variables set to 1.
    pub fn all_ones() -> ParamPoint {
        ParamPoint::new(std::array::from_fn(|_| BigRational::one()))
    }

    /// The TASEP specialization: `alpha = beta = u = 1`, `gamma = delta = q = 0`.
    pub fn tasep() -> ParamPoint {
        ParamPoint::six(
            BigRational::one(),
            BigRational::one(),
            BigRational::zero(),
            BigRational::zero(),
            BigRational::zero(),
            BigRational::one(),
        )
    }

    pub fn get(&self, v: Var) -> &BigRational {
        &self.values[v.index()]
    }

    pub fn with(mut self, v: Var, value: BigRational) -> ParamPoint {
        self.values[v.index()] = value;
        self
    }

    /// A copy with the listed variable pairs exchanged.
    pub fn swapped(&self, pairs: &[(Var, Var)]) -> ParamPoint {
        let mut out = self.clone();
        for &(a, b) in pairs {
            out.values.swap(a.index(), b.index());
        }
        out
    }

    /// Whether the six rate variables (everything except `z`) lie in `[0, 1]`.
    pub fn rates_in_unit_interval(&self) -> bool {
        [Var::Alpha, Var::Beta, Var::Gamma, Var::Delta, Var::Q, Var::U]
            .iter()
            .all(|&v| {
                let r = self.get(v);
                !r.is_negative() && *r <= BigRational::one()
            })
    }
}

fn rational_pow(base: &BigRational, exp: u32) -> BigRational {
    BigRational::new(base.numer().pow(exp), base.denom().pow(exp))
}

/// Formats a rational as `"n"` or `"n/d"`.
pub fn rational_str(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `"3"`, `"-1/2"`, or an exact decimal such as `"0.25"`.
pub fn parse_rational(s: &str) -> Result<BigRational, ParseError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(ParseError("empty rational".into()));
    }
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num
            .trim()
            .parse()
            .map_err(|_| ParseError(format!("bad numerator in {s:?}")))?;
        let den: BigInt = den
            .trim()
            .parse()
            .map_err(|_| ParseError(format!("bad denominator in {s:?}")))?;
        if den.is_zero() {
            return Err(ParseError(format!("zero denominator in {s:?}")));
        }
        return Ok(BigRational::new(num, den));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let sign = if int_part.trim_start().starts_with('-') {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        let int_part: BigInt = if int_part.is_empty() || int_part == "-" || int_part == "+" {
            BigInt::zero()
        } else {
            int_part
                .parse()
                .map_err(|_| ParseError(format!("bad decimal in {s:?}")))?
        };
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(ParseError(format!("bad decimal in {s:?}")));
        }
        let frac: BigInt = frac_part
            .parse()
            .map_err(|_| ParseError(format!("bad decimal in {s:?}")))?;
        let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
        return Ok(BigRational::new(int_part.abs() * &scale + frac, scale) * BigRational::from_integer(sign));
    }
    let n: BigInt = s
        .parse()
        .map_err(|_| ParseError(format!("bad rational {s:?}")))?;
    Ok(BigRational::from_integer(n))
}

/// Convenience: an integer as a rational.
pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}
