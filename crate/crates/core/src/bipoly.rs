use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;
use crate::strands::{StrandLabel, StrandMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BiDegree {
    pub a1: i64,
    pub a2: i64,
}

pub const fn bd(a1: i64, a2: i64) -> BiDegree {
    BiDegree { a1, a2 }
}

impl BiDegree {
    pub const ZERO: BiDegree = bd(0, 0);
    pub const E1: BiDegree = bd(1, 0);
    pub const E2: BiDegree = bd(0, 1);

    pub fn is_nonneg(self) -> bool {
        self.a1 >= 0 && self.a2 >= 0
    }

    /// Componentwise order.
    pub fn le(self, o: BiDegree) -> bool {
        self.a1 <= o.a1 && self.a2 <= o.a2
    }

    pub fn swap(self) -> BiDegree {
        bd(self.a2, self.a1)
    }

    /// All b with 0 <= b <= self, a1 outer.
    pub fn box_points(self) -> Vec<BiDegree> {
        let mut v = Vec::new();
        for a1 in 0..=self.a1.max(-1) {
            for a2 in 0..=self.a2.max(-1) {
                v.push(bd(a1, a2));
            }
        }
        v
    }
}

impl fmt::Display for BiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a1, self.a2)
    }
}

impl Add for BiDegree {
    type Output = BiDegree;
    fn add(self, o: BiDegree) -> BiDegree {
        bd(self.a1 + o.a1, self.a2 + o.a2)
    }
}

impl Sub for BiDegree {
    type Output = BiDegree;
    fn sub(self, o: BiDegree) -> BiDegree {
        bd(self.a1 - o.a1, self.a2 - o.a2)
    }
}

impl Mul<BiDegree> for i64 {
    type Output = BiDegree;
    fn mul(self, o: BiDegree) -> BiDegree {
        bd(self * o.a1, self * o.a2)
    }
}

/// dim R_a
pub fn dim_r(a: BiDegree) -> usize {
    if a.is_nonneg() {
        ((a.a1 + 1) * (a.a2 + 1)) as usize
    } else {
        0
    }
}

/// Exponents (e_s, e_t, e_u, e_v).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub [u32; 4]);

impl Monomial {
    pub fn degree(&self) -> BiDegree {
        let [s, t, u, v] = self.0;
        bd((s + t) as i64, (u + v) as i64)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = ["s", "t", "u", "v"]
            .iter()
            .zip(self.0)
            .map(|(x, e)| if e == 1 { x.to_string() } else { format!("{x}^{e}") })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Position of s^i t^(a1-i) u^j v^(a2-j) in the strand order of R_a.
#[inline]
pub fn monomial_index(a: BiDegree, i: i64, j: i64) -> usize {
    ((a.a1 - i) * (a.a2 + 1) + (a.a2 - j)) as usize
}

/// Monomials of R_a, s-power descending then u-power descending.
pub fn strand_basis(a: BiDegree) -> Vec<Monomial> {
    let mut out = Vec::with_capacity(dim_r(a));
    if !a.is_nonneg() {
        return out;
    }
    for i in (0..=a.a1).rev() {
        for j in (0..=a.a2).rev() {
            out.push(Monomial([
                i as u32,
                (a.a1 - i) as u32,
                j as u32,
                (a.a2 - j) as u32,
            ]));
        }
    }
    out
}

/// Bihomogeneous polynomial stored densely in the strand order of its degree.
#[derive(Clone, Debug, PartialEq)]
pub struct BiPoly<F> {
    degree: BiDegree,
    coeffs: Vec<F>,
}

impl<F: Field> BiPoly<F> {
    pub fn zero(degree: BiDegree) -> Self {
        BiPoly {
            degree,
            coeffs: vec![F::zero(); dim_r(degree)],
        }
    }

    pub fn from_coeffs(degree: BiDegree, coeffs: Vec<F>) -> Result<Self> {
        if coeffs.len() != dim_r(degree) {
            return Err(Error::Dimension {
                expected: dim_r(degree),
                got: coeffs.len(),
            });
        }
        Ok(BiPoly { degree, coeffs })
    }

    pub fn from_terms(degree: BiDegree, terms: &[(F, [u32; 4])]) -> Result<Self> {
        let mut p = Self::zero(degree);
        for (c, e) in terms {
            let m = Monomial(*e);
            if m.degree() != degree {
                return Err(Error::Degree(format!(
                    "monomial {m} is not of bidegree {degree}"
                )));
            }
            let k = monomial_index(degree, e[0] as i64, e[2] as i64);
            p.coeffs[k] = p.coeffs[k].clone() + c.clone();
        }
        Ok(p)
    }

    pub fn monomial(c: F, e: [u32; 4]) -> Self {
        let m = Monomial(e);
        Self::from_terms(m.degree(), &[(c, e)]).expect("degree matches")
    }

    pub fn var(name: char) -> Self {
        let e = match name {
            's' => [1, 0, 0, 0],
            't' => [0, 1, 0, 0],
            'u' => [0, 0, 1, 0],
            'v' => [0, 0, 0, 1],
            _ => panic!("unknown variable {name}"),
        };
        Self::monomial(F::one(), e)
    }

    pub fn constant(c: F) -> Self {
        Self::monomial(c, [0; 4])
    }

    /// s·p + t·q for binary forms p, q of equal degree.
    pub fn from_st(p: &BinaryForm<F>, q: &BinaryForm<F>) -> Self {
        assert_eq!(p.degree(), q.degree());
        let s = Self::var('s');
        let t = Self::var('t');
        &(&s * &p.to_bipoly()) + &(&t * &q.to_bipoly())
    }

    pub fn degree(&self) -> BiDegree {
        self.degree
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    /// Coefficient of s^i t^(a1-i) u^j v^(a2-j).
    pub fn coeff(&self, i: i64, j: i64) -> F {
        if i < 0 || j < 0 || i > self.degree.a1 || j > self.degree.a2 {
            return F::zero();
        }
        self.coeffs[monomial_index(self.degree, i, j)].clone()
    }

    pub fn set_coeff(&mut self, i: i64, j: i64, c: F) {
        let k = monomial_index(self.degree, i, j);
        self.coeffs[k] = c;
    }

    /// Nonzero terms as (s-exponent, u-exponent, coefficient).
    pub fn terms(&self) -> Vec<(i64, i64, F)> {
        let a = self.degree;
        let mut out = Vec::new();
        if !a.is_nonneg() {
            return out;
        }
        let mut k = 0;
        for i in (0..=a.a1).rev() {
            for j in (0..=a.a2).rev() {
                if !self.coeffs[k].is_zero() {
                    out.push((i, j, self.coeffs[k].clone()));
                }
                k += 1;
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn scale(&self, c: &F) -> Self {
        BiPoly {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|x| x.clone() * c.clone()).collect(),
        }
    }

    /// Exchange the factors: s <-> u, t <-> v.
    pub fn swap_factors(&self) -> Self {
        let mut out = Self::zero(self.degree.swap());
        for (i, j, c) in self.terms() {
            out.set_coeff(j, i, c);
        }
        out
    }

    pub fn eval(&self, s: &F, t: &F, u: &F, v: &F) -> F {
        let a = self.degree;
        let mut acc = F::zero();
        for (i, j, c) in self.terms() {
            acc = acc
                + c * pow(s, i)
                    * pow(t, a.a1 - i)
                    * pow(u, j)
                    * pow(v, a.a2 - j);
        }
        acc
    }

    /// s,t-coefficient of s^i t^(a1-i) as a binary form in u,v.
    pub fn st_coefficient(&self, i: i64) -> BinaryForm<F> {
        let n = self.degree.a2.max(0) as usize;
        BinaryForm::new((0..=n as i64).map(|j| self.coeff(i, j)).collect())
    }

    pub fn render(&self) -> String {
        let terms = self.terms();
        if terms.is_empty() {
            return "0".to_string();
        }
        let a = self.degree;
        join_terms(terms.iter().map(|(i, j, c)| {
            (
                c.to_string(),
                Monomial([*i as u32, (a.a1 - i) as u32, *j as u32, (a.a2 - j) as u32]).to_string(),
            )
        }))
    }
}

/// "c*m" terms joined with signs; unit coefficients are dropped.
fn join_terms(terms: impl Iterator<Item = (String, String)>) -> String {
    let mut out = String::new();
    for (c, m) in terms {
        let (neg, mag) = match c.strip_prefix('-') {
            Some(r) => (true, r.to_string()),
            None => (false, c),
        };
        let mono = m;
        let body = match mag.as_str() {
            "1" => mono,
            m if m.contains('/') => format!("({m})*{mono}"),
            m => format!("{m}*{mono}"),
        };
        match (out.is_empty(), neg) {
            (true, false) => out.push_str(&body),
            (true, true) => out.push_str(&format!("-{body}")),
            (false, false) => out.push_str(&format!(" + {body}")),
            (false, true) => out.push_str(&format!(" - {body}")),
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

fn pow<F: Field>(x: &F, e: i64) -> F {
    let mut acc = F::one();
    for _ in 0..e {
        acc = acc * x.clone();
    }
    acc
}

impl<F: Field> fmt::Display for BiPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

fn combine<F: Field>(a: &BiPoly<F>, b: &BiPoly<F>, sign: &F) -> BiPoly<F> {
    if a.degree != b.degree {
        if b.is_zero() {
            return a.clone();
        }
        if a.is_zero() {
            return b.scale(sign);
        }
        panic!("adding polynomials of degrees {} and {}", a.degree, b.degree);
    }
    let mut out = a.clone();
    let neg = -sign.clone();
    F::sub_mul_slice(&mut out.coeffs, &neg, &b.coeffs);
    out
}

impl<F: Field> Add for &BiPoly<F> {
    type Output = BiPoly<F>;
    fn add(self, o: &BiPoly<F>) -> BiPoly<F> {
        combine(self, o, &F::one())
    }
}

impl<F: Field> Sub for &BiPoly<F> {
    type Output = BiPoly<F>;
    fn sub(self, o: &BiPoly<F>) -> BiPoly<F> {
        combine(self, o, &-F::one())
    }
}

impl<F: Field> Neg for &BiPoly<F> {
    type Output = BiPoly<F>;
    fn neg(self) -> BiPoly<F> {
        self.scale(&-F::one())
    }
}

impl<F: Field> Mul for &BiPoly<F> {
    type Output = BiPoly<F>;
    fn mul(self, o: &BiPoly<F>) -> BiPoly<F> {
        let deg = self.degree + o.degree;
        let mut out = BiPoly::zero(deg);
        if !self.degree.is_nonneg() || !o.degree.is_nonneg() {
            return out;
        }
        let rt = o.terms();
        for (i1, j1, c1) in self.terms() {
            for (i2, j2, c2) in &rt {
                let k = monomial_index(deg, i1 + i2, j1 + j2);
                out.coeffs[k] = out.coeffs[k].clone() + c1.clone() * c2.clone();
            }
        }
        out
    }
}

/// Matrix of multiplication by g from R_b to R_{b+deg g} in strand order.
pub fn mul_matrix<F: Field>(g: &BiPoly<F>, b: BiDegree) -> StrandMap<F> {
    let target = b + g.degree();
    let mut m = Matrix::<F>::zeros(dim_r(target), dim_r(b));
    if b.is_nonneg() && target.is_nonneg() {
        let terms = g.terms();
        let mut col = 0;
        for i in (0..=b.a1).rev() {
            for j in (0..=b.a2).rev() {
                for (ei, ej, c) in &terms {
                    let row = monomial_index(target, i + ei, j + ej);
                    m[(row, col)] = m[(row, col)].clone() + c.clone();
                }
                col += 1;
            }
        }
    }
    StrandMap {
        matrix: m,
        domain: StrandLabel::Plain { degree: b, copies: 1 },
        codomain: StrandLabel::Plain {
            degree: target,
            copies: 1,
        },
    }
}

/// Form in k[u,v]; `coeffs[j]` is the coefficient of u^j v^(deg-j).
#[derive(Clone, Debug, PartialEq)]
pub struct BinaryForm<F> {
    coeffs: Vec<F>,
}

impl<F: Field> BinaryForm<F> {
    pub fn new(coeffs: Vec<F>) -> Self {
        assert!(!coeffs.is_empty(), "a binary form needs degree >= 0");
        BinaryForm { coeffs }
    }

    pub fn zero(degree: usize) -> Self {
        BinaryForm {
            coeffs: vec![F::zero(); degree + 1],
        }
    }

    /// c·u^j v^(n-j)
    pub fn monomial(c: F, j: usize, n: usize) -> Self {
        let mut f = Self::zero(n);
        f.coeffs[j] = c;
        f
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| F::from_i64(c)).collect())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> F {
        self.coeffs.get(j).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn scale(&self, c: &F) -> Self {
        BinaryForm {
            coeffs: self.coeffs.iter().map(|x| x.clone() * c.clone()).collect(),
        }
    }

    pub fn eval(&self, u: &F, v: &F) -> F {
        let n = self.degree() as i64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .fold(F::zero(), |acc, (j, c)| {
                acc + c.clone() * pow(u, j as i64) * pow(v, n - j as i64)
            })
    }

    pub fn to_bipoly(&self) -> BiPoly<F> {
        let n = self.degree() as i64;
        let mut p = BiPoly::zero(bd(0, n));
        for (j, c) in self.coeffs.iter().enumerate() {
            p.set_coeff(0, j as i64, c.clone());
        }
        p
    }

    pub fn from_bipoly(p: &BiPoly<F>) -> Result<Self> {
        if p.degree().a1 != 0 || p.degree().a2 < 0 {
            return Err(Error::Degree(format!(
                "expected bidegree (0,n), got {}",
                p.degree()
            )));
        }
        Ok(p.st_coefficient(0))
    }

    /// Power of v dividing the form; None for the zero form.
    pub fn v_valuation(&self) -> Option<usize> {
        let top = self.coeffs.iter().rposition(|c| !c.is_zero())?;
        Some(self.degree() - top)
    }

    /// Exact quotient self / d.
    pub fn div_exact(&self, d: &BinaryForm<F>) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if d.degree() > self.degree() {
            return Err(Error::Degree("divisor of larger degree".into()));
        }
        let (q, r) = uni_divrem(&self.coeffs, &d.coeffs);
        let n = self.degree() - d.degree();
        if r.iter().any(|c| !c.is_zero()) || q.len() > n + 1 {
            return Err(Error::Degree("division is not exact".into()));
        }
        let mut c = q;
        c.resize(n + 1, F::zero());
        Ok(BinaryForm { coeffs: c })
    }

    pub fn render(&self) -> String {
        let n = self.degree();
        join_terms(
            self.coeffs
                .iter()
                .enumerate()
                .rev()
                .filter(|(_, c)| !c.is_zero())
                .map(|(j, c)| {
                    let (u, v) = (j, n - j);
                    let p = |x: &str, e: usize| if e == 1 { x.to_string() } else { format!("{x}^{e}") };
                    (c.to_string(), format!("{}*{}", p("u", u), p("v", v)))
                }),
        )
    }
}

impl<F: Field> fmt::Display for BinaryForm<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

fn binary_combine<F: Field>(a: &BinaryForm<F>, b: &BinaryForm<F>, sign: &F) -> BinaryForm<F> {
    if a.degree() != b.degree() {
        if b.is_zero() {
            return a.clone();
        }
        if a.is_zero() {
            return b.scale(sign);
        }
        panic!("adding forms of degrees {} and {}", a.degree(), b.degree());
    }
    let mut out = a.clone();
    F::sub_mul_slice(&mut out.coeffs, &-sign.clone(), &b.coeffs);
    out
}

impl<F: Field> Add for &BinaryForm<F> {
    type Output = BinaryForm<F>;
    fn add(self, o: &BinaryForm<F>) -> BinaryForm<F> {
        binary_combine(self, o, &F::one())
    }
}

impl<F: Field> Sub for &BinaryForm<F> {
    type Output = BinaryForm<F>;
    fn sub(self, o: &BinaryForm<F>) -> BinaryForm<F> {
        binary_combine(self, o, &-F::one())
    }
}

impl<F: Field> Neg for &BinaryForm<F> {
    type Output = BinaryForm<F>;
    fn neg(self) -> BinaryForm<F> {
        self.scale(&-F::one())
    }
}

impl<F: Field> Mul for &BinaryForm<F> {
    type Output = BinaryForm<F>;
    fn mul(self, o: &BinaryForm<F>) -> BinaryForm<F> {
        let mut out = vec![F::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        BinaryForm { coeffs: out }
    }
}

/// (p, q) with f = s·p + t·q.
pub fn split_st<F: Field>(f: &BiPoly<F>) -> Result<(BinaryForm<F>, BinaryForm<F>)> {
    if f.degree().a1 != 1 || f.degree().a2 < 0 {
        return Err(Error::Degree(format!(
            "split_st needs bidegree (1,n), got {}",
            f.degree()
        )));
    }
    Ok((f.st_coefficient(1), f.st_coefficient(0)))
}

fn uni_trim<F: Field>(v: &mut Vec<F>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

/// Univariate division in u (index = power).
fn uni_divrem<F: Field>(a: &[F], b: &[F]) -> (Vec<F>, Vec<F>) {
    let mut r = a.to_vec();
    uni_trim(&mut r);
    let mut bt = b.to_vec();
    uni_trim(&mut bt);
    let db = bt.len() - 1;
    let lead_inv = bt[db].inv().expect("nonzero leading coefficient");
    if r.len() < bt.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![F::zero(); r.len() - db];
    while r.len() >= bt.len() {
        let k = r.len() - 1 - db;
        let c = r[r.len() - 1].clone() * lead_inv.clone();
        F::sub_mul_slice(&mut r[k..], &c, &bt);
        q[k] = c;
        r.pop();
        uni_trim(&mut r);
    }
    (q, r)
}

fn uni_gcd<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    uni_trim(&mut x);
    uni_trim(&mut y);
    while !y.is_empty() {
        let (_, r) = uni_divrem(&x, &y);
        x = y;
        y = r;
    }
    if let Some(l) = x.last() {
        let inv = l.inv().expect("nonzero");
        F::scale_slice(&mut x, &inv);
    }
    x
}

/// Monic gcd in k[u,v]. Works on the dehomogenization v = 1 and restores
/// the common power of v separately.
pub fn gcd_binary<F: Field>(p: &BinaryForm<F>, q: &BinaryForm<F>) -> Result<BinaryForm<F>> {
    let vp = p.v_valuation();
    let vq = q.v_valuation();
    let vmin = match (vp, vq) {
        (None, None) => return Err(Error::ZeroGcd),
        (Some(a), None) | (None, Some(a)) => a,
        (Some(a), Some(b)) => a.min(b),
    };
    let g = uni_gcd(&p.coeffs, &q.coeffs);
    let du = g.len() - 1;
    let mut coeffs = vec![F::zero(); du + vmin + 1];
    for (j, c) in g.into_iter().enumerate() {
        coeffs[j] = c;
    }
    Ok(BinaryForm { coeffs })
}

/// gcd of a list of forms, skipping zeros.
pub fn gcd_all<F: Field>(forms: &[BinaryForm<F>]) -> Result<BinaryForm<F>> {
    let mut acc: Option<BinaryForm<F>> = None;
    for f in forms {
        if f.is_zero() {
            continue;
        }
        acc = Some(match acc {
            None => gcd_binary(f, f)?,
            Some(g) => gcd_binary(&g, f)?,
        });
    }
    acc.ok_or(Error::ZeroGcd)
}
