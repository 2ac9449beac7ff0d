//! Exact multivariate polynomials and truncated power series.
//!
//! Coefficients are arbitrary-precision rationals. Exponents are signed so
//! that Laurent monomials in `N` can appear as intermediate values; every
//! public routine that needs a true polynomial checks for that explicitly.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("denominator has zero constant term")]
    ZeroConstantTerm,
    #[error("constant term is not an invertible scalar")]
    NonScalarConstantTerm,
    #[error("series has the wrong constant term for {0}")]
    BadConstantTerm(&'static str),
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
    #[error("unknown variable name `{0}`")]
    UnknownVariable(String),
}

/// Interned variable. The declaration order is the variable id order used
/// for monomial sorting.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    C,
    T,
    X,
    S,
    U,
    N,
    Z,
    C1,
    C2,
    /// Casimir `C_k` of gl(N).
    Cas(u16),
    /// Projected Casimir `C̃_k` of sl(N).
    CasT(u16),
    Q(u16),
    P(u16),
}

impl Var {
    pub fn name(&self) -> String {
        match self {
            Var::C => "c".into(),
            Var::T => "t".into(),
            Var::X => "x".into(),
            Var::S => "s".into(),
            Var::U => "u".into(),
            Var::N => "N".into(),
            Var::Z => "z".into(),
            Var::C1 => "c1".into(),
            Var::C2 => "c2".into(),
            Var::Cas(k) => format!("C_{k}"),
            Var::CasT(k) => format!("Ct_{k}"),
            Var::Q(k) => format!("q_{k}"),
            Var::P(k) => format!("p_{k}"),
        }
    }

    pub fn parse(s: &str) -> Result<Var, PolyError> {
        let indexed = |prefix: &str| -> Option<u16> {
            s.strip_prefix(prefix).and_then(|r| r.parse::<u16>().ok())
        };
        Ok(match s {
            "c" => Var::C,
            "t" => Var::T,
            "x" => Var::X,
            "s" => Var::S,
            "u" => Var::U,
            "N" => Var::N,
            "z" => Var::Z,
            "c1" => Var::C1,
            "c2" => Var::C2,
            _ => {
                if let Some(k) = indexed("Ct_") {
                    Var::CasT(k)
                } else if let Some(k) = indexed("C_") {
                    Var::Cas(k)
                } else if let Some(k) = indexed("q_") {
                    Var::Q(k)
                } else if let Some(k) = indexed("p_") {
                    Var::P(k)
                } else {
                    return Err(PolyError::UnknownVariable(s.into()));
                }
            }
        })
    }
}

/// Sorted list of (variable, nonzero exponent).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Var, i32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var, e: i32) -> Self {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(v, e)])
        }
    }

    pub fn from_pairs(mut pairs: Vec<(Var, i32)>) -> Self {
        pairs.sort_by_key(|p| p.0);
        let mut out: Vec<(Var, i32)> = Vec::with_capacity(pairs.len());
        for (v, e) in pairs {
            match out.last_mut() {
                Some(last) if last.0 == v => last.1 += e,
                _ => out.push((v, e)),
            }
        }
        out.retain(|p| p.1 != 0);
        Monomial(out)
    }

    pub fn pairs(&self) -> &[(Var, i32)] {
        &self.0
    }

    pub fn degree(&self) -> i32 {
        self.0.iter().map(|p| p.1).sum()
    }

    pub fn exp(&self, v: Var) -> i32 {
        self.0
            .iter()
            .find(|p| p.0 == v)
            .map(|p| p.1)
            .unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    let e = a[i].1 + b[j].1;
                    if e != 0 {
                        out.push((a[i].0, e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// Monomial with `v` removed.
    pub fn without(&self, v: Var) -> Monomial {
        Monomial(self.0.iter().copied().filter(|p| p.0 != v).collect())
    }

    pub fn has_negative(&self) -> bool {
        self.0.iter().any(|p| p.1 < 0)
    }
}

/// Graded lexicographic order by variable id.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        let (a, b) = (&self.0, &other.0);
        let mut i = 0;
        loop {
            match (a.get(i), b.get(i)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(x), Some(y)) => {
                    if x.0 != y.0 {
                        // the side carrying the earlier variable has a larger
                        // exponent there
                        return if x.0 < y.0 {
                            if x.1 > 0 {
                                Ordering::Greater
                            } else {
                                Ordering::Less
                            }
                        } else if y.1 > 0 {
                            Ordering::Less
                        } else {
                            Ordering::Greater
                        };
                    }
                    match x.1.cmp(&y.1) {
                        Ordering::Equal => i += 1,
                        o => return o,
                    }
                }
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct MPoly {
    terms: BTreeMap<Monomial, Rat>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly::default()
    }

    pub fn one() -> Self {
        MPoly::constant(Rat::one())
    }

    pub fn constant(r: Rat) -> Self {
        let mut p = MPoly::zero();
        p.add_term(Monomial::one(), r);
        p
    }

    pub fn int(n: i64) -> Self {
        MPoly::constant(rat(n))
    }

    pub fn var(v: Var) -> Self {
        MPoly::monomial(Monomial::var(v, 1), Rat::one())
    }

    pub fn var_pow(v: Var, e: i32) -> Self {
        MPoly::monomial(Monomial::var(v, e), Rat::one())
    }

    pub fn monomial(m: Monomial, r: Rat) -> Self {
        let mut p = MPoly::zero();
        p.add_term(m, r);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, m: Monomial, r: Rat) {
        if r.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(r);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += r;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn coeff(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    /// Constant term, if the polynomial is a scalar.
    pub fn as_constant(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn constant_term(&self) -> Rat {
        self.coeff(&Monomial::one())
    }

    pub fn total_degree(&self) -> Option<i32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn degree_in(&self, v: Var) -> Option<i32> {
        self.terms.keys().map(|m| m.exp(v)).max()
    }

    pub fn min_degree_in(&self, v: Var) -> Option<i32> {
        self.terms.keys().map(|m| m.exp(v)).min()
    }

    pub fn variables(&self) -> Vec<Var> {
        let mut vs: Vec<Var> = self
            .terms
            .keys()
            .flat_map(|m| m.0.iter().map(|p| p.0))
            .collect();
        vs.sort();
        vs.dedup();
        vs
    }

    pub fn has_negative_exponents(&self) -> bool {
        self.terms.keys().any(|m| m.has_negative())
    }

    /// Coefficient of `v^k` as a polynomial in the remaining variables.
    pub fn coeff_of(&self, v: Var, k: i32) -> MPoly {
        let mut out = MPoly::zero();
        for (m, r) in &self.terms {
            if m.exp(v) == k {
                out.add_term(m.without(v), r.clone());
            }
        }
        out
    }

    /// Split by powers of `v`: entry `k` is the coefficient of `v^k`.
    pub fn split_by(&self, v: Var) -> Vec<MPoly> {
        let deg = self.degree_in(v).unwrap_or(0).max(0) as usize;
        let mut out = vec![MPoly::zero(); deg + 1];
        for (m, r) in &self.terms {
            let e = m.exp(v);
            assert!(e >= 0, "negative power in split_by");
            out[e as usize].add_term(m.without(v), r.clone());
        }
        out
    }

    pub fn scale(&self, r: &Rat) -> MPoly {
        if r.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c * r))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, mono: &Monomial) -> MPoly {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            out.add_term(m.mul(mono), c.clone());
        }
        out
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut acc = MPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Ring homomorphism sending each variable in `map` to its image.
    pub fn substitute(&self, map: &BTreeMap<Var, MPoly>) -> MPoly {
        let mut out = MPoly::zero();
        let mut powers: BTreeMap<(Var, i32), MPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut kept = Vec::new();
            let mut factor = MPoly::constant(c.clone());
            for &(v, e) in &m.0 {
                if let Some(img) = map.get(&v) {
                    assert!(e >= 0, "substitution into a negative power");
                    let pw = powers
                        .entry((v, e))
                        .or_insert_with(|| img.pow(e as u32))
                        .clone();
                    factor = &factor * &pw;
                } else {
                    kept.push((v, e));
                }
            }
            out += &factor.mul_monomial(&Monomial(kept));
        }
        out
    }

    pub fn subst1(&self, v: Var, img: &MPoly) -> MPoly {
        let mut map = BTreeMap::new();
        map.insert(v, img.clone());
        self.substitute(&map)
    }

    /// Evaluate every variable at a rational value.
    pub fn eval(&self, values: &BTreeMap<Var, Rat>) -> Option<Rat> {
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in &m.0 {
                let x = values.get(&v)?;
                t *= pow_rat(x, e);
            }
            acc += t;
        }
        Some(acc)
    }

    /// Partial derivative.
    pub fn derivative(&self, v: Var) -> MPoly {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exp(v);
            if e != 0 {
                out.add_term(m.mul(&Monomial::var(v, -1)), c * rat(e as i64));
            }
        }
        out
    }

    /// Keep the terms whose weighted degree is at most `max`.
    pub fn truncate_weight<W: Fn(Var) -> i32>(&self, weight: W, max: i32) -> MPoly {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            if m.pairs().iter().map(|&(v, e)| weight(v) * e).sum::<i32>() <= max {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }

    /// Multiply by a monomial power of one variable (negative powers allowed).
    pub fn shift_var(&self, v: Var, e: i32) -> MPoly {
        self.mul_monomial(&Monomial::var(v, e))
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("polynomial serializes")
    }

    /// Human-readable form, highest monomials first.
    pub fn pretty(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = m
                .0
                .iter()
                .map(|(v, e)| {
                    if *e == 1 {
                        v.name()
                    } else {
                        format!("{}^{}", v.name(), e)
                    }
                })
                .collect::<Vec<_>>()
                .join("*");
            if mono.is_empty() {
                s.push_str(&a.to_string());
            } else if a.is_one() {
                s.push_str(&mono);
            } else {
                s.push_str(&format!("{a}*{mono}"));
            }
        }
        s
    }
}

pub fn pow_rat(x: &Rat, e: i32) -> Rat {
    if e >= 0 {
        num_traits::pow(x.clone(), e as usize)
    } else {
        num_traits::pow(x.recip(), (-e) as usize)
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty())
    }
}

impl std::ops::AddAssign<&MPoly> for MPoly {
    fn add_assign(&mut self, rhs: &MPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl std::ops::SubAssign<&MPoly> for MPoly {
    fn sub_assign(&mut self, rhs: &MPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl std::ops::Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl std::ops::Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl std::ops::Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.scale(&rat(-1))
    }
}

impl std::ops::Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

macro_rules! owned_ops {
    ($tr:ident, $f:ident) => {
        impl std::ops::$tr for MPoly {
            type Output = MPoly;
            fn $f(self, rhs: MPoly) -> MPoly {
                std::ops::$tr::$f(&self, &rhs)
            }
        }
        impl std::ops::$tr<&MPoly> for MPoly {
            type Output = MPoly;
            fn $f(self, rhs: &MPoly) -> MPoly {
                std::ops::$tr::$f(&self, rhs)
            }
        }
        impl std::ops::$tr<MPoly> for &MPoly {
            type Output = MPoly;
            fn $f(self, rhs: MPoly) -> MPoly {
                std::ops::$tr::$f(self, &rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl std::ops::Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

impl std::iter::Sum for MPoly {
    fn sum<I: Iterator<Item = MPoly>>(iter: I) -> MPoly {
        let mut acc = MPoly::zero();
        for p in iter {
            acc += &p;
        }
        acc
    }
}

#[derive(Serialize, Deserialize)]
struct JsonTerm {
    coeff: String,
    mono: BTreeMap<String, i32>,
}

impl Serialize for MPoly {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<JsonTerm> = self
            .terms
            .iter()
            .map(|(m, c)| JsonTerm {
                coeff: c.to_string(),
                mono: m.0.iter().map(|(v, e)| (v.name(), *e)).collect(),
            })
            .collect();
        terms.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for MPoly {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let terms: Vec<JsonTerm> = Vec::deserialize(de)?;
        let mut p = MPoly::zero();
        for t in terms {
            let c: Rat = t.coeff.parse().map_err(D::Error::custom)?;
            let mut pairs = Vec::new();
            for (name, e) in t.mono {
                pairs.push((Var::parse(&name).map_err(D::Error::custom)?, e));
            }
            p.add_term(Monomial::from_pairs(pairs), c);
        }
        Ok(p)
    }
}

// ---------------------------------------------------------------------------
// Parsing of the compact infix notation used in tables:
//   3 C_1^4 - 4 C_1^3 + (6 C_2^2 - x) N + p_1*p_2/2
// Juxtaposition means multiplication.

pub fn parse_poly(src: &str) -> Result<MPoly, PolyError> {
    let toks = tokenize(src)?;
    let mut p = Parser { toks, pos: 0 };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(PolyError::Parse(format!("trailing input in `{src}`")));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(src: &str) -> Result<Vec<Tok>, PolyError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let ch = chars[i];
        if ch.is_whitespace() {
            i += 1;
        } else if ch.is_ascii_digit() {
            let st = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[st..i].iter().collect();
            out.push(Tok::Num(s.parse().unwrap()));
        } else if ch.is_ascii_alphabetic() {
            // letter runs split into single-letter names; `Ct_k`, `X_k` and
            // `c1`/`c2` are read whole
            let st = i;
            while i < chars.len() && chars[i].is_ascii_alphabetic() {
                i += 1;
            }
            let run: String = chars[st..i].iter().collect();
            let mut names: Vec<String> = if run == "Ct" {
                vec![run]
            } else {
                run.chars().map(|c| c.to_string()).collect()
            };
            let last = names.last_mut().unwrap();
            if i < chars.len() && chars[i] == '_' {
                let d0 = i + 1;
                let mut j = d0;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                if j == d0 {
                    return Err(PolyError::Parse("missing index after `_`".into()));
                }
                last.push_str(&chars[i..j].iter().collect::<String>());
                i = j;
            } else if last == "c"
                && i < chars.len()
                && (chars[i] == '1' || chars[i] == '2')
                && !chars.get(i + 1).is_some_and(|c| c.is_ascii_digit())
            {
                last.push(chars[i]);
                i += 1;
            }
            out.extend(names.into_iter().map(Tok::Ident));
        } else if "+-*/^()".contains(ch) {
            out.push(Tok::Op(ch));
            i += 1;
        } else {
            return Err(PolyError::Parse(format!("unexpected `{ch}`")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn expr(&mut self) -> Result<MPoly, PolyError> {
        let mut acc = MPoly::zero();
        let mut sign = 1;
        if let Some(Tok::Op(c @ ('+' | '-'))) = self.peek() {
            sign = if *c == '-' { -1 } else { 1 };
            self.pos += 1;
        }
        loop {
            let t = self.term()?;
            if sign < 0 {
                acc -= &t;
            } else {
                acc += &t;
            }
            match self.peek() {
                Some(Tok::Op('+')) => sign = 1,
                Some(Tok::Op('-')) => sign = -1,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<MPoly, PolyError> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Tok::Op('*')) => {
                    self.pos += 1;
                    acc = &acc * &self.power()?;
                }
                Some(Tok::Op('/')) => {
                    self.pos += 1;
                    let d = self.power()?;
                    let r = d
                        .as_constant()
                        .filter(|r| !r.is_zero())
                        .ok_or_else(|| PolyError::Parse("division by non-scalar".into()))?;
                    acc = acc.scale(&r.recip());
                }
                Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::Op('(')) => {
                    acc = &acc * &self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<MPoly, PolyError> {
        let base = self.atom()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.pos += 1;
            match self.toks.get(self.pos).cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let e = n
                        .to_u32()
                        .ok_or_else(|| PolyError::Parse("exponent too large".into()))?;
                    return Ok(base.pow(e));
                }
                _ => return Err(PolyError::Parse("expected exponent".into())),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MPoly, PolyError> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(MPoly::constant(Rat::from_integer(n)))
            }
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                Ok(MPoly::var(Var::parse(&s)?))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(&Tok::Op(')')) {
                    return Err(PolyError::Parse("missing `)`".into()));
                }
                self.pos += 1;
                Ok(e)
            }
            other => Err(PolyError::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

// ---------------------------------------------------------------------------

/// Power series in one distinguished variable, exact through `order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeries {
    pub var: Var,
    pub coeffs: Vec<MPoly>,
}

impl TruncSeries {
    pub fn zero(var: Var, order: usize) -> Self {
        TruncSeries {
            var,
            coeffs: vec![MPoly::zero(); order + 1],
        }
    }

    pub fn one(var: Var, order: usize) -> Self {
        let mut s = TruncSeries::zero(var, order);
        s.coeffs[0] = MPoly::one();
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn from_coeffs(var: Var, coeffs: Vec<MPoly>, order: usize) -> Self {
        let mut s = TruncSeries::zero(var, order);
        for (i, c) in coeffs.into_iter().enumerate().take(order + 1) {
            s.coeffs[i] = c;
        }
        s
    }

    /// Expand a polynomial in `var` into a series.
    pub fn from_poly(p: &MPoly, var: Var, order: usize) -> Self {
        TruncSeries::from_coeffs(var, p.split_by(var), order)
    }

    pub fn coeff(&self, n: usize) -> &MPoly {
        &self.coeffs[n]
    }

    pub fn add(&self, o: &TruncSeries) -> TruncSeries {
        let order = self.order().min(o.order());
        TruncSeries {
            var: self.var,
            coeffs: (0..=order).map(|i| &self.coeffs[i] + &o.coeffs[i]).collect(),
        }
    }

    pub fn sub(&self, o: &TruncSeries) -> TruncSeries {
        let order = self.order().min(o.order());
        TruncSeries {
            var: self.var,
            coeffs: (0..=order).map(|i| &self.coeffs[i] - &o.coeffs[i]).collect(),
        }
    }

    pub fn scale_poly(&self, p: &MPoly) -> TruncSeries {
        TruncSeries {
            var: self.var,
            coeffs: self.coeffs.iter().map(|c| c * p).collect(),
        }
    }

    pub fn mul(&self, o: &TruncSeries) -> TruncSeries {
        let order = self.order().min(o.order());
        let mut out = TruncSeries::zero(self.var, order);
        for i in 0..=order {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(order - i) {
                if !o.coeffs[j].is_zero() {
                    out.coeffs[i + j] += &(&self.coeffs[i] * &o.coeffs[j]);
                }
            }
        }
        out
    }

    /// Multiply by `var^k`, keeping the order.
    pub fn shift(&self, k: usize) -> TruncSeries {
        let order = self.order();
        let mut out = TruncSeries::zero(self.var, order);
        for i in 0..=order {
            if i + k <= order {
                out.coeffs[i + k] = self.coeffs[i].clone();
            }
        }
        out
    }

    pub fn inverse(&self) -> Result<TruncSeries, PolyError> {
        let c0 = self.coeffs[0]
            .as_constant()
            .ok_or(PolyError::NonScalarConstantTerm)?;
        if c0.is_zero() {
            return Err(PolyError::ZeroConstantTerm);
        }
        let inv0 = c0.recip();
        let order = self.order();
        let mut out = TruncSeries::zero(self.var, order);
        out.coeffs[0] = MPoly::constant(inv0.clone());
        for n in 1..=order {
            let mut acc = MPoly::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    acc += &(&self.coeffs[k] * &out.coeffs[n - k]);
                }
            }
            out.coeffs[n] = acc.scale(&(-inv0.clone()));
        }
        Ok(out)
    }

    pub fn exp(&self) -> Result<TruncSeries, PolyError> {
        if !self.coeffs[0].is_zero() {
            return Err(PolyError::BadConstantTerm("exp"));
        }
        // f' = g' f, so n f_n = sum k g_k f_{n-k}
        let order = self.order();
        let mut out = TruncSeries::zero(self.var, order);
        out.coeffs[0] = MPoly::one();
        for n in 1..=order {
            let mut acc = MPoly::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    acc += &(&self.coeffs[k] * &out.coeffs[n - k]).scale(&rat(k as i64));
                }
            }
            out.coeffs[n] = acc.scale(&ratio(1, n as i64));
        }
        Ok(out)
    }

    pub fn log(&self) -> Result<TruncSeries, PolyError> {
        if self.coeffs[0] != MPoly::one() {
            return Err(PolyError::BadConstantTerm("log"));
        }
        // n g_n = n f_n - sum_{k<n} k g_k f_{n-k}
        let order = self.order();
        let mut out = TruncSeries::zero(self.var, order);
        for n in 1..=order {
            let mut acc = self.coeffs[n].scale(&rat(n as i64));
            for k in 1..n {
                if !out.coeffs[k].is_zero() && !self.coeffs[n - k].is_zero() {
                    acc -= &(&out.coeffs[k] * &self.coeffs[n - k]).scale(&rat(k as i64));
                }
            }
            out.coeffs[n] = acc.scale(&ratio(1, n as i64));
        }
        Ok(out)
    }

    pub fn to_poly(&self) -> MPoly {
        let mut out = MPoly::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            out += &c.mul_monomial(&Monomial::var(self.var, i as i32));
        }
        out
    }
}

/// Expand `num/den` as a series in `var`.
pub fn rational_to_series(
    num: &MPoly,
    den: &MPoly,
    var: Var,
    order: usize,
) -> Result<TruncSeries, PolyError> {
    let d = TruncSeries::from_poly(den, var, order);
    if d.coeffs[0].is_zero() {
        return Err(PolyError::ZeroConstantTerm);
    }
    let n = TruncSeries::from_poly(num, var, order);
    Ok(n.mul(&d.inverse()?))
}

/// `1/(1 + a_0 t + b_1 t^2/(1 + a_1 t + b_2 t^2/(…)))`, exact through `order`.
pub fn continued_fraction_series<A, B>(a: A, b: B, order: usize) -> TruncSeries
where
    A: Fn(usize) -> MPoly,
    B: Fn(usize) -> MPoly,
{
    let depth = order.div_ceil(2) + 1;
    let t = Var::T;
    let mut tail = TruncSeries::zero(t, order);
    for m in (0..depth).rev() {
        let mut den = TruncSeries::one(t, order);
        if order >= 1 {
            den.coeffs[1] = a(m);
        }
        if m + 1 < depth {
            let bt = tail.scale_poly(&b(m + 1)).shift(2);
            den = den.add(&bt);
        }
        tail = den.inverse().expect("continued fraction levels have unit constant term");
    }
    tail
}

/// One-part Schur polynomial: coefficient of z^n in exp(Σ p_k z^k / k).
pub fn schur_one_part(n: usize) -> MPoly {
    let mut g = TruncSeries::zero(Var::Z, n);
    for k in 1..=n {
        g.coeffs[k] = MPoly::var(Var::P(k as u16)).scale(&ratio(1, k as i64));
    }
    g.exp().expect("zero constant term").coeffs[n].clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> MPoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn distributes() {
        assert_eq!(&p("c") * &p("c-1"), p("c^2-c"));
    }

    #[test]
    fn substitution_examples() {
        let e = p("p_1^2-p_2").subst1(Var::P(1), &p("-q_1"));
        assert_eq!(e, p("q_1^2-p_2"));
        let e = p("C_1^2+C_2^2-N C_2").subst1(Var::Cas(1), &MPoly::zero());
        assert_eq!(e, p("C_2^2-N C_2"));
    }

    #[test]
    fn geometric_series() {
        let s = rational_to_series(&MPoly::one(), &p("1-c t"), Var::T, 3).unwrap();
        assert_eq!(s.to_poly(), p("1+c t+c^2 t^2+c^3 t^3"));
        let s = rational_to_series(&p("c"), &p("1-(c-1)t"), Var::T, 2).unwrap();
        assert_eq!(s.to_poly(), p("c+c(c-1)t+c(c-1)^2 t^2"));
        let s = rational_to_series(&p("1+t"), &p("1+t"), Var::T, 5).unwrap();
        assert_eq!(s.to_poly(), MPoly::one());
        assert_eq!(
            rational_to_series(&MPoly::one(), &p("t"), Var::T, 2),
            Err(PolyError::ZeroConstantTerm)
        );
    }

    #[test]
    fn continued_fractions() {
        let za = continued_fraction_series(
            |m| {
                let m = m as i64;
                &p("-c") + &MPoly::int(m * (m + 1))
            },
            |m| {
                let m = m as i64;
                &p("c").scale(&rat(m * m)) - &MPoly::constant(ratio(m * m * (m * m - 1), 4))
            },
            4,
        );
        assert_eq!(
            za.to_poly(),
            p("1+c t+c(c-1)t^2+c(c-1)(c-2)t^3+c(c^3-6c^2+13c-7)t^4")
        );
        let ch = continued_fraction_series(
            |m| &p("-c") + &MPoly::int(2 * m as i64),
            |m| {
                let m = m as i64;
                &p("c").scale(&rat(m)) - &MPoly::int(m * (m - 1))
            },
            3,
        );
        assert_eq!(ch.to_poly(), p("1+c t+c(c-1)t^2+c(c-1)(c-2)t^3"));
        let g = continued_fraction_series(
            |m| if m == 0 { p("-c") } else { MPoly::zero() },
            |_| MPoly::zero(),
            2,
        );
        assert_eq!(g.to_poly(), p("1+c t+c^2t^2"));
    }

    #[test]
    fn exp_and_log() {
        let s = TruncSeries::from_poly(&p("1+t"), Var::T, 3);
        assert_eq!(s.log().unwrap().to_poly(), p("t-t^2/2+t^3/3"));
        let s = TruncSeries::from_poly(&p("c t"), Var::T, 2);
        assert_eq!(s.exp().unwrap().to_poly(), p("1+c t+c^2t^2/2"));
        assert!(TruncSeries::from_poly(&p("2+t"), Var::T, 2).log().is_err());
        assert!(TruncSeries::from_poly(&p("1+t"), Var::T, 2).exp().is_err());
    }

    #[test]
    fn schur() {
        assert_eq!(schur_one_part(0), MPoly::one());
        assert_eq!(schur_one_part(2), p("p_1^2/2+p_2/2"));
        assert_eq!(schur_one_part(3), p("p_1^3/6+p_1 p_2/2+p_3/3"));
    }

    #[test]
    fn json_roundtrip_and_order() {
        let a = p("3 C_1^4 - 4 C_1^3 + (6 C_2^2 - x) N + 7");
        let js = serde_json::to_string(&a).unwrap();
        let b: MPoly = serde_json::from_str(&js).unwrap();
        assert_eq!(a, b);
        let v: Vec<serde_json::Value> = serde_json::from_str(&js).unwrap();
        assert_eq!(v[0]["mono"], serde_json::json!({}));
        assert_eq!(v[0]["coeff"], "7");
    }

    #[test]
    fn grlex_order() {
        let ct = Monomial::from_pairs(vec![(Var::C, 1), (Var::T, 1)]);
        let t2 = Monomial::var(Var::T, 2);
        let c2 = Monomial::var(Var::C, 2);
        assert!(ct > t2);
        assert!(c2 > ct);
        assert!(Monomial::var(Var::C, 3) > c2);
    }

    #[test]
    fn pretty_form() {
        assert_eq!(p("c^4-6c^3+13c^2-7c").pretty(), "c^4 - 6*c^3 + 13*c^2 - 7*c");
    }
}
