//! Homogeneous polynomials in x, y, z over Q, binary forms, and the graded
//! monomial bases that turn polynomial maps into matrices.
//!
//! Monomials of degree k are ordered graded-lexicographically with
//! x > y > z, so `x^k` has index 0 and `z^k` has the last index.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::exact::{kernel_basis, rat, QMatrix, Rat, clear_denominators};

pub type Exp = [u32; 3];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    X,
    Y,
    Z,
}

impl Var {
    fn index(self) -> usize {
        match self {
            Var::X => 0,
            Var::Y => 1,
            Var::Z => 2,
        }
    }
}

/// Dimension of S_k.
pub fn dim_s(k: i64) -> usize {
    if k < 0 {
        0
    } else {
        let k = k as usize;
        (k + 1) * (k + 2) / 2
    }
}

pub fn monomial_basis(k: i64) -> Vec<Exp> {
    if k < 0 {
        return Vec::new();
    }
    let k = k as u32;
    let mut out = Vec::with_capacity(dim_s(k as i64));
    for a in (0..=k).rev() {
        for b in (0..=k - a).rev() {
            out.push([a, b, k - a - b]);
        }
    }
    out
}

/// Position of a monomial in `monomial_basis(a + b + c)`.
pub fn monomial_index(e: Exp) -> usize {
    let k = (e[0] + e[1] + e[2]) as usize;
    let s = k - e[0] as usize;
    s * (s + 1) / 2 + e[2] as usize
}

/// Homogeneous polynomial with exact rational coefficients.
///
/// The empty polynomial (degree -1) is what differentiating a constant
/// produces; every other value has a nonnegative degree and only nonzero
/// coefficients stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HomPoly {
    degree: i32,
    terms: BTreeMap<Exp, Rat>,
}

impl HomPoly {
    pub fn zero(degree: u32) -> Self {
        HomPoly {
            degree: degree as i32,
            terms: BTreeMap::new(),
        }
    }

    pub fn empty() -> Self {
        HomPoly {
            degree: -1,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Rat) -> Self {
        Self::monomial(c, [0, 0, 0])
    }

    pub fn monomial(c: Rat, e: Exp) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        HomPoly {
            degree: (e[0] + e[1] + e[2]) as i32,
            terms,
        }
    }

    pub fn var(v: Var) -> Self {
        let mut e = [0; 3];
        e[v.index()] = 1;
        Self::monomial(Rat::one(), e)
    }

    pub fn x() -> Self {
        Self::var(Var::X)
    }

    pub fn y() -> Self {
        Self::var(Var::Y)
    }

    pub fn z() -> Self {
        Self::var(Var::Z)
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, summing
    /// repeated exponents. All exponents must have total degree `degree`.
    pub fn from_terms<I>(degree: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exp, Rat)>,
    {
        let mut map: BTreeMap<Exp, Rat> = BTreeMap::new();
        for (e, c) in terms {
            let d = e[0] + e[1] + e[2];
            if d != degree {
                return Err(Error::NonHomogeneous(degree, d));
            }
            *map.entry(e).or_insert_with(Rat::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        Ok(HomPoly {
            degree: degree as i32,
            terms: map,
        })
    }

    /// Coefficient vector in the basis of S_degree.
    pub fn from_vector(degree: u32, v: &[Rat]) -> Result<Self> {
        let basis = monomial_basis(degree as i64);
        if basis.len() != v.len() {
            return Err(Error::DimensionMismatch {
                expected: basis.len(),
                got: v.len(),
            });
        }
        Self::from_terms(degree, basis.into_iter().zip(v.iter().cloned()))
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn is_empty(&self) -> bool {
        self.degree < 0
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &Rat)> {
        self.terms.iter()
    }

    /// Terms in graded lexicographic order (largest monomial first).
    pub fn terms_grlex(&self) -> impl Iterator<Item = (&Exp, &Rat)> {
        self.terms.iter().rev()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: Exp) -> Rat {
        self.terms.get(&e).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn to_vector(&self) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); dim_s(self.degree as i64)];
        for (e, c) in &self.terms {
            v[monomial_index(*e)] = c.clone();
        }
        v
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return HomPoly {
                degree: self.degree,
                terms: BTreeMap::new(),
            };
        }
        HomPoly {
            degree: self.degree,
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    /// Same polynomial scaled to primitive integer coefficients.
    pub fn primitive_integer_coeffs(&self) -> BTreeMap<Exp, BigInt> {
        let (exps, coeffs): (Vec<Exp>, Vec<Rat>) =
            self.terms.iter().map(|(e, c)| (*e, c.clone())).unzip();
        exps.into_iter().zip(clear_denominators(&coeffs)).collect()
    }

    pub fn partial(&self, v: Var) -> HomPoly {
        if self.degree <= 0 {
            return HomPoly::empty();
        }
        let i = v.index();
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut ne = *e;
            ne[i] -= 1;
            terms.insert(ne, c * rat(e[i] as i64));
        }
        HomPoly {
            degree: self.degree - 1,
            terms,
        }
    }

    pub fn eval(&self, p: &[Rat; 3]) -> Rat {
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for i in 0..3 {
                for _ in 0..e[i] {
                    t *= &p[i];
                }
            }
            acc += t;
        }
        acc
    }

    pub fn pow(&self, n: u32) -> HomPoly {
        let mut out = HomPoly::constant(Rat::one());
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    pub fn checked_add(&self, other: &HomPoly) -> Result<HomPoly> {
        if self.degree != other.degree {
            if self.is_zero() && !other.is_empty() {
                return Ok(other.clone());
            }
            if other.is_zero() && !self.is_empty() {
                return Ok(self.clone());
            }
            return Err(Error::NonHomogeneous(
                self.degree.max(0) as u32,
                other.degree.max(0) as u32,
            ));
        }
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            let entry = terms.entry(*e).or_insert_with(Rat::zero);
            *entry += c;
            if entry.is_zero() {
                terms.remove(e);
            }
        }
        Ok(HomPoly {
            degree: self.degree,
            terms,
        })
    }
}

impl Add for &HomPoly {
    type Output = HomPoly;
    fn add(self, rhs: &HomPoly) -> HomPoly {
        self.checked_add(rhs).expect("adding polynomials of different degrees")
    }
}

impl Neg for &HomPoly {
    type Output = HomPoly;
    fn neg(self) -> HomPoly {
        self.scale(&rat(-1))
    }
}

impl Sub for &HomPoly {
    type Output = HomPoly;
    fn sub(self, rhs: &HomPoly) -> HomPoly {
        self + &(-rhs)
    }
}

impl Mul for &HomPoly {
    type Output = HomPoly;
    fn mul(self, rhs: &HomPoly) -> HomPoly {
        if self.is_empty() || rhs.is_empty() {
            return HomPoly::empty();
        }
        let mut terms: BTreeMap<Exp, Rat> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]];
                *terms.entry(e).or_insert_with(Rat::zero) += ca * cb;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        HomPoly {
            degree: self.degree + rhs.degree,
            terms,
        }
    }
}

fn fmt_rat_coeff(c: &Rat) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Canonical text form, accepted back by the expression parser.
impl fmt::Display for HomPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms_grlex() {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let mut factors = Vec::new();
            if !a.is_one() || e.iter().all(|&x| x == 0) {
                factors.push(fmt_rat_coeff(&a));
            }
            for (name, &p) in ["x", "y", "z"].iter().zip(e) {
                match p {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    _ => factors.push(format!("{name}^{p}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for HomPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HomPoly(deg {}: {})", self.degree, self)
    }
}

/// Matrix of `h -> g*h` from S_k to S_{k+deg g}.
pub fn mult_map(g: &HomPoly, k: i64) -> QMatrix {
    let e = g.degree().max(0) as i64;
    let cols = monomial_basis(k);
    let mut m = QMatrix::zeros(dim_s(k + e), cols.len());
    for (j, mono) in cols.iter().enumerate() {
        for (ge, c) in g.terms() {
            let p = [ge[0] + mono[0], ge[1] + mono[1], ge[2] + mono[2]];
            m.set(monomial_index(p), j, c.clone());
        }
    }
    m
}

/// A nonzero linear form `a x + b y + c z`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinForm([Rat; 3]);

impl LinForm {
    pub fn new(a: Rat, b: Rat, c: Rat) -> Result<Self> {
        if a.is_zero() && b.is_zero() && c.is_zero() {
            return Err(Error::OutOfRange("linear form is identically zero".into()));
        }
        Ok(LinForm([a, b, c]))
    }

    pub fn from_ints(a: i64, b: i64, c: i64) -> Result<Self> {
        Self::new(rat(a), rat(b), rat(c))
    }

    pub fn coeffs(&self) -> &[Rat; 3] {
        &self.0
    }

    pub fn to_poly(&self) -> HomPoly {
        HomPoly::from_terms(
            1,
            [
                ([1, 0, 0], self.0[0].clone()),
                ([0, 1, 0], self.0[1].clone()),
                ([0, 0, 1], self.0[2].clone()),
            ],
        )
        .expect("degree one terms")
    }

    pub fn eval(&self, p: &[Rat; 3]) -> Rat {
        self.0.iter().zip(p).map(|(a, b)| a * b).sum()
    }

    pub fn is_proportional(&self, other: &LinForm) -> bool {
        cross(&self.0, &other.0).iter().all(Zero::is_zero)
    }

    /// Scaled so that the first nonzero coefficient is 1.
    pub fn normalized(&self) -> LinForm {
        let lead = self.0.iter().find(|c| !c.is_zero()).expect("nonzero form").clone();
        LinForm(self.0.clone().map(|c| c / &lead))
    }

    /// The two points of the line read off the reduced echelon form of
    /// the coefficient row; they span the plane `a x + b y + c z = 0`.
    pub fn canonical_points(&self) -> [[Rat; 3]; 2] {
        let m = QMatrix::from_rows(vec![self.0.to_vec()]).expect("1x3");
        let k = kernel_basis(&m);
        let b = k.basis();
        let to_pt = |v: &Vec<Rat>| [v[0].clone(), v[1].clone(), v[2].clone()];
        [to_pt(&b[0]), to_pt(&b[1])]
    }
}

impl fmt::Display for LinForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

impl fmt::Debug for LinForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinForm({})", self)
    }
}

pub fn cross(u: &[Rat; 3], v: &[Rat; 3]) -> [Rat; 3] {
    [
        &u[1] * &v[2] - &u[2] * &v[1],
        &u[2] * &v[0] - &u[0] * &v[2],
        &u[0] * &v[1] - &u[1] * &v[0],
    ]
}

/// Uniformly random integer line in the box `[-bound, bound]^3`.
pub fn random_line<R: Rng>(rng: &mut R, bound: i64) -> LinForm {
    loop {
        let a = rng.gen_range(-bound..=bound);
        let b = rng.gen_range(-bound..=bound);
        let c = rng.gen_range(-bound..=bound);
        if let Ok(l) = LinForm::from_ints(a, b, c) {
            return l;
        }
    }
}

/// Substitute `(x, y, z) -> M (x, y, z)`: the new polynomial is `f(M v)`.
pub fn change_coords(f: &HomPoly, m: &QMatrix) -> Result<HomPoly> {
    if m.rows() != 3 || m.cols() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            got: m.rows(),
        });
    }
    if m.determinant()?.is_zero() {
        return Err(Error::SingularMatrix);
    }
    if f.is_empty() {
        return Ok(f.clone());
    }
    let images: Vec<HomPoly> = (0..3)
        .map(|i| {
            LinForm::new(m.get(i, 0).clone(), m.get(i, 1).clone(), m.get(i, 2).clone())
                .map(|l| l.to_poly())
        })
        .collect::<Result<_>>()?;
    let d = f.degree() as u32;
    let powers: Vec<Vec<HomPoly>> = images
        .iter()
        .map(|l| {
            let mut ps = vec![HomPoly::constant(Rat::one())];
            for _ in 0..d {
                let next = &ps[ps.len() - 1] * l;
                ps.push(next);
            }
            ps
        })
        .collect();
    let mut out = HomPoly::zero(d);
    for (e, c) in f.terms() {
        let t = &(&powers[0][e[0] as usize] * &powers[1][e[1] as usize]) * &powers[2][e[2] as usize];
        out = &out + &t.scale(c);
    }
    Ok(out)
}

/// Binary form `sum_i c_i s^(d-i) t^i`.
#[derive(Clone, PartialEq, Eq)]
pub struct BinForm {
    coeffs: Vec<Rat>,
}

impl BinForm {
    pub fn new(coeffs: Vec<Rat>) -> Self {
        assert!(!coeffs.is_empty(), "binary form needs a degree");
        BinForm { coeffs }
    }

    /// `a s + b t`.
    pub fn linear(a: Rat, b: Rat) -> Self {
        BinForm { coeffs: vec![a, b] }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &BinForm) -> BinForm {
        let mut c = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        BinForm { coeffs: c }
    }

    pub fn pow(&self, n: usize) -> BinForm {
        let mut out = BinForm::new(vec![Rat::one()]);
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    pub fn add(&self, other: &BinForm) -> BinForm {
        assert_eq!(self.degree(), other.degree());
        BinForm {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> BinForm {
        BinForm {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Scaled so that the first nonzero coefficient is 1.
    pub fn normalized(&self) -> BinForm {
        match self.coeffs.iter().find(|c| !c.is_zero()) {
            Some(lead) => {
                let lead = lead.clone();
                self.scale(&(Rat::one() / lead))
            }
            None => self.clone(),
        }
    }

    /// Whether the form has no repeated linear factor. The zero form is
    /// not squarefree.
    pub fn is_squarefree(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        let d = self.degree();
        // t^2 | F  iff  the coefficients of s^d and s^(d-1) t both vanish
        if d >= 2 && self.coeffs[0].is_zero() && self.coeffs[1].is_zero() {
            return false;
        }
        // F(s, 1) in ascending powers of s
        let p: Vec<Rat> = self.coeffs.iter().rev().cloned().collect();
        let p = trim(p);
        let dp = derivative(&p);
        upoly_gcd(p, dp).len() <= 1
    }
}

impl BinForm {
    /// Factorization into rational linear forms `(factor, multiplicity)`,
    /// or `None` if some irreducible factor has degree at least 2 (or the
    /// coefficients are too large to search for rational roots).
    pub fn linear_factors(&self) -> Option<Vec<(BinForm, u32)>> {
        if self.is_zero() {
            return None;
        }
        let d = self.degree();
        let mut out = Vec::new();
        let k = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if k > 0 {
            out.push((BinForm::linear(Rat::zero(), Rat::one()), k as u32));
        }
        // P(u) = F(u, 1) in ascending powers, degree d - k
        let mut p: Vec<Rat> = self.coeffs[k..].iter().rev().cloned().collect();
        debug_assert_eq!(p.len(), d - k + 1);
        let z = p.iter().take_while(|c| c.is_zero()).count();
        if z > 0 {
            out.push((BinForm::linear(Rat::one(), Rat::zero()), z as u32));
            p.drain(..z);
        }
        while p.len() > 1 {
            let ints = crate::exact::clear_denominators(&p);
            let c0 = ints[0].abs();
            let cn = ints[ints.len() - 1].abs();
            let nums = small_divisors(&c0)?;
            let dens = small_divisors(&cn)?;
            let mut found = None;
            'search: for a in &nums {
                for b in &dens {
                    for sign in [1i64, -1] {
                        let r = Rat::new(a * BigInt::from(sign), b.clone());
                        if upoly_eval(&p, &r).is_zero() {
                            found = Some(r);
                            break 'search;
                        }
                    }
                }
            }
            let r = found?;
            let mut mult = 0;
            while p.len() > 1 && upoly_eval(&p, &r).is_zero() {
                p = upoly_div_root(&p, &r);
                mult += 1;
            }
            out.push((BinForm::linear(Rat::one(), -r), mult));
        }
        Some(out)
    }
}

fn upoly_eval(p: &[Rat], x: &Rat) -> Rat {
    p.iter().rev().fold(Rat::zero(), |acc, c| acc * x + c)
}

/// Quotient of `p` by `u - r`, assuming `p(r) = 0`.
fn upoly_div_root(p: &[Rat], r: &Rat) -> Vec<Rat> {
    let n = p.len() - 1;
    let mut q = vec![Rat::zero(); n];
    let mut carry = Rat::zero();
    for i in (0..n).rev() {
        carry = &p[i + 1] + &carry * r;
        q[i] = carry.clone();
    }
    q
}

/// Positive divisors of `n`, or `None` when `n` is too large to factor by
/// trial division.
fn small_divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    use num_traits::ToPrimitive;
    let n = n.to_u64().filter(|&n| n > 0 && n < 1 << 40)?;
    let mut out = Vec::new();
    let mut i = 1u64;
    while i * i <= n {
        if n % i == 0 {
            out.push(BigInt::from(i));
            if i * i != n {
                out.push(BigInt::from(n / i));
            }
        }
        i += 1;
    }
    out.sort();
    Some(out)
}

impl fmt::Debug for BinForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.degree();
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("({c})s^{}t^{i}", d - i))
            .collect();
        write!(f, "BinForm[{}]", parts.join(" + "))
    }
}

fn trim(mut p: Vec<Rat>) -> Vec<Rat> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn derivative(p: &[Rat]) -> Vec<Rat> {
    trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * rat(i as i64))
            .collect(),
    )
}

fn upoly_rem(mut a: Vec<Rat>, b: &[Rat]) -> Vec<Rat> {
    let lb = b.last().expect("nonzero divisor").clone();
    while a.len() >= b.len() {
        let q = a.last().unwrap() / &lb;
        let shift = a.len() - b.len();
        for (i, c) in b.iter().enumerate() {
            a[shift + i] -= &q * c;
        }
        a.pop();
        a = trim(a);
    }
    a
}

/// Monic gcd of univariate polynomials given in ascending powers.
fn upoly_gcd(mut a: Vec<Rat>, mut b: Vec<Rat>) -> Vec<Rat> {
    while !b.is_empty() {
        let r = upoly_rem(a, &b);
        a = b;
        b = r;
    }
    if let Some(l) = a.last().cloned() {
        for c in a.iter_mut() {
            *c /= &l;
        }
    }
    a
}

/// `f` pulled back along `(s, t) -> s P + t Q` for the canonical points
/// `P, Q` of `line`.
pub fn restrict_to_line(f: &HomPoly, line: &LinForm) -> BinForm {
    let [p, q] = line.canonical_points();
    restrict_along(f, &p, &q)
}

/// `f(s P + t Q)` as a binary form of degree `deg f`.
pub fn restrict_along(f: &HomPoly, p: &[Rat; 3], q: &[Rat; 3]) -> BinForm {
    let d = f.degree().max(0) as usize;
    let coords: Vec<BinForm> = (0..3)
        .map(|i| BinForm::linear(p[i].clone(), q[i].clone()))
        .collect();
    let powers: Vec<Vec<BinForm>> = coords
        .iter()
        .map(|l| {
            let mut ps = vec![BinForm::new(vec![Rat::one()])];
            for _ in 0..d {
                let next = ps[ps.len() - 1].mul(l);
                ps.push(next);
            }
            ps
        })
        .collect();
    let mut out = BinForm::new(vec![Rat::zero(); d + 1]);
    for (e, c) in f.terms() {
        let t = powers[0][e[0] as usize]
            .mul(&powers[1][e[1] as usize])
            .mul(&powers[2][e[2] as usize]);
        out = out.add(&t.scale(c));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rank;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn lin(a: i64, b: i64, c: i64) -> HomPoly {
        LinForm::from_ints(a, b, c).unwrap().to_poly()
    }

    fn product(fs: &[HomPoly]) -> HomPoly {
        fs.iter()
            .fold(HomPoly::constant(Rat::one()), |acc, f| &acc * f)
    }

    fn nearly_free_quintic() -> HomPoly {
        product(&[lin(1, 0, 0), lin(0, 1, 0), lin(0, 0, 1), lin(0, 1, -1), lin(1, 2, 3)])
    }

    #[test]
    fn basis_sizes() {
        assert_eq!(monomial_basis(0), vec![[0, 0, 0]]);
        assert_eq!(monomial_basis(3).len(), 10);
        assert!(monomial_basis(-2).is_empty());
        for k in 0..=30 {
            let b = monomial_basis(k);
            assert_eq!(b.len(), dim_s(k));
            for (i, e) in b.iter().enumerate() {
                assert_eq!(monomial_index(*e), i);
            }
        }
        assert_eq!(monomial_basis(2), vec![[2, 0, 0], [1, 1, 0], [1, 0, 1], [0, 2, 0], [0, 1, 1], [0, 0, 2]]);
    }

    #[test]
    fn partial_examples() {
        let xyz = product(&[HomPoly::x(), HomPoly::y(), HomPoly::z()]);
        assert_eq!(xyz.partial(Var::X), &HomPoly::y() * &HomPoly::z());
        let x3 = HomPoly::x().pow(3);
        let dz = x3.partial(Var::Z);
        assert!(dz.is_zero());
        assert_eq!(dz.degree(), 2);
        assert!(HomPoly::constant(rat(3)).partial(Var::X).is_empty());
    }

    #[test]
    fn euler_identity_on_quintic() {
        let f = nearly_free_quintic();
        let lhs = &(&(&HomPoly::x() * &f.partial(Var::X)) + &(&HomPoly::y() * &f.partial(Var::Y)))
            + &(&HomPoly::z() * &f.partial(Var::Z));
        assert_eq!(lhs, f.scale(&rat(5)));
    }

    #[test]
    fn mult_map_examples() {
        let m = mult_map(&HomPoly::x(), 1);
        assert_eq!((m.rows(), m.cols()), (6, 3));
        assert_eq!(rank(&m), 3);
        assert_eq!(rank(&mult_map(&HomPoly::zero(2), 2)), 0);
        let xyz = product(&[HomPoly::x(), HomPoly::y(), HomPoly::z()]);
        let m = mult_map(&xyz.partial(Var::X), 0);
        assert_eq!((m.rows(), m.cols()), (6, 1));
        // yz sits at index 4 of the degree-2 basis
        let col = m.column(0);
        for (i, c) in col.iter().enumerate() {
            assert_eq!(*c, rat(if i == 4 { 1 } else { 0 }));
        }
    }

    #[test]
    fn mult_map_composes() {
        let g = &lin(1, 2, 0) * &lin(0, 1, -3);
        let h = lin(2, 0, 1);
        for k in 0..4 {
            let lhs = mult_map(&(&g * &h), k);
            let rhs = mult_map(&g, k + 1).mul(&mult_map(&h, k)).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn change_coords_examples() {
        let f = nearly_free_quintic();
        assert_eq!(change_coords(&f, &QMatrix::identity(3)).unwrap(), f);
        let swap = QMatrix::from_i64(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
        let x2z = &HomPoly::x().pow(2) * &HomPoly::z();
        let y2z = &HomPoly::y().pow(2) * &HomPoly::z();
        assert_eq!(change_coords(&x2z, &swap).unwrap(), y2z);
        let sing = QMatrix::from_i64(&[&[1, 1, 0], &[1, 1, 0], &[0, 0, 1]]);
        assert_eq!(change_coords(&f, &sing), Err(Error::SingularMatrix));
    }

    #[test]
    fn restriction_examples() {
        let z = LinForm::from_ints(0, 0, 1).unwrap();
        assert!(restrict_to_line(&HomPoly::z(), &z).is_zero());
        let f = &HomPoly::x().pow(2) + &(&HomPoly::y() * &HomPoly::z());
        let r = restrict_to_line(&f, &z);
        assert_eq!(r.coeffs(), &[rat(1), rat(0), rat(0)]);
    }

    #[test]
    fn quintic_restriction_is_squarefree() {
        let f = nearly_free_quintic();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..5 {
            let l = random_line(&mut rng, 97);
            assert!(restrict_to_line(&f, &l).is_squarefree());
        }
        let doubled = &f * &HomPoly::x();
        let l = random_line(&mut rng, 97);
        assert!(!restrict_to_line(&doubled, &l).is_squarefree());
    }

    #[test]
    fn squarefree_at_infinity() {
        // s t^2 has a double root at (1:0)
        assert!(!BinForm::new(vec![rat(0), rat(0), rat(1), rat(0)]).is_squarefree());
        assert!(BinForm::new(vec![rat(0), rat(1), rat(1)]).is_squarefree());
        assert!(!BinForm::new(vec![rat(1), rat(2), rat(1)]).is_squarefree());
    }

    #[test]
    fn display_is_grlex() {
        let f = &(&HomPoly::x().pow(2) - &(&HomPoly::y() * &HomPoly::z()).scale(&rat_frac(3, 2)))
            + &HomPoly::z().pow(2);
        assert_eq!(f.to_string(), "x^2 - 3/2*y*z + z^2");
    }

    use crate::exact::rat_frac;

    fn small_poly() -> impl Strategy<Value = HomPoly> {
        (1u32..4, proptest::collection::vec(-5i64..=5, 15)).prop_map(|(d, cs)| {
            let basis = monomial_basis(d as i64);
            let terms = basis.into_iter().zip(cs).map(|(e, c)| (e, rat(c)));
            HomPoly::from_terms(d, terms).unwrap()
        })
    }

    fn unimodular() -> impl Strategy<Value = QMatrix> {
        // product of elementary matrices stays unimodular
        proptest::collection::vec((0usize..3, 0usize..3, -3i64..=3), 1..6).prop_map(|ops| {
            let mut m = QMatrix::identity(3);
            for (i, j, c) in ops {
                if i == j {
                    continue;
                }
                let mut e = QMatrix::identity(3);
                e.set(i, j, rat(c));
                m = m.mul(&e).unwrap();
            }
            m
        })
    }

    proptest! {
        #[test]
        fn change_coords_round_trip(f in small_poly(), m in unimodular()) {
            let g = change_coords(&f, &m).unwrap();
            prop_assert_eq!(g.degree(), f.degree());
            let back = change_coords(&g, &m.inverse().unwrap()).unwrap();
            prop_assert_eq!(back, f);
        }

        #[test]
        fn change_coords_is_multiplicative(f in small_poly(), g in small_poly(), m in unimodular()) {
            let lhs = change_coords(&(&f * &g), &m).unwrap();
            let rhs = &change_coords(&f, &m).unwrap() * &change_coords(&g, &m).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn restriction_vanishes_iff_divisible(f in small_poly(), a in -3i64..=3, b in -3i64..=3, c in 1i64..=3) {
            let l = LinForm::from_ints(a, b, c).unwrap();
            // build g = l * f and a perturbation that is generally not divisible
            let g = &l.to_poly() * &f;
            prop_assert!(restrict_to_line(&g, &l).is_zero());
            let d = g.degree() as i64;
            let image = crate::exact::Subspace::span(
                dim_s(d),
                &mult_map(&l.to_poly(), d - 1).columns(),
            ).unwrap();
            let h = &g + &HomPoly::x().pow(d as u32);
            let divisible = image.contains(&h.to_vector()).unwrap();
            prop_assert_eq!(restrict_to_line(&h, &l).is_zero(), divisible);
        }
    }
}
