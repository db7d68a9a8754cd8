//! Exact arithmetic in cyclotomic fields `Q(zeta_n)`.
//!
//! Elements are stored as rational coefficient vectors reduced modulo the
//! n-th cyclotomic polynomial, so equality is coefficient equality. Values
//! of different orders can be mixed: they are embedded into the field of the
//! lcm of both orders. Rational values are always normalised to order 1.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, LazyLock, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Signed;

use crate::error::{Error, Result};

/// Field operations needed by the linear algebra and rewriting kernels.
pub trait Scalar: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse. Panics on zero; callers check `is_zero` first.
    fn inv(&self) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
    fn from_i64(v: i64) -> Self;
}

impl Scalar for BigRational {
    fn zero() -> Self {
        num_traits::Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        self.recip()
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
}

/// Static data for one cyclotomic field.
#[derive(Debug)]
pub struct CycloField {
    order: u32,
    degree: usize,
    /// Integer coefficients of the cyclotomic polynomial, low degree first.
    phi: Vec<i64>,
    /// `reduce[k]` = x^k mod Phi_n, for k < 2 * degree.
    reduce: Vec<Vec<i64>>,
}

static FIELDS: LazyLock<Mutex<HashMap<u32, Arc<CycloField>>>> = LazyLock::new(|| Mutex::new(HashMap::new()));

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    // den is monic
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    if rem.len() < den.len() {
        return vec![0];
    }
    let mut quot = vec![0i64; rem.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        if c != 0 {
            for (t, &d) in den.iter().enumerate() {
                rem[k + t] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

fn cyclotomic_poly(n: u32) -> Vec<i64> {
    // x^n - 1 divided by Phi_d for every proper divisor d
    let mut p = vec![0i64; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            p = poly_div_exact(&p, &cyclotomic_poly(d));
        }
    }
    p
}

impl CycloField {
    pub fn get(order: u32) -> Arc<CycloField> {
        assert!(order >= 1, "cyclotomic order must be positive");
        let mut guard = FIELDS.lock().expect("cyclotomic field cache poisoned");
        guard
            .entry(order)
            .or_insert_with(|| Arc::new(CycloField::build(order)))
            .clone()
    }

    fn build(order: u32) -> CycloField {
        let phi = cyclotomic_poly(order);
        let degree = phi.len() - 1;
        let mut reduce = Vec::with_capacity(2 * degree);
        let mut cur = vec![0i64; degree];
        cur[0] = 1;
        for _ in 0..(2 * degree).max(1) {
            reduce.push(cur.clone());
            // multiply by x and reduce
            let top = cur[degree - 1];
            let mut next = vec![0i64; degree];
            for k in (1..degree).rev() {
                next[k] = cur[k - 1];
            }
            for (k, slot) in next.iter_mut().enumerate() {
                *slot -= top * phi[k];
            }
            cur = next;
        }
        CycloField { order, degree, phi, reduce }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Degree of the field over Q (Euler phi of the order).
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn cyclotomic_polynomial(&self) -> &[i64] {
        &self.phi
    }

    /// x^k mod Phi_n for arbitrary k >= 0.
    fn power_of_generator(&self, k: u64) -> Vec<i64> {
        let k = (k % self.order as u64) as usize;
        if k < self.reduce.len() {
            return self.reduce[k].clone();
        }
        // k < order; step up from the last precomputed power
        let mut cur = self.reduce[self.reduce.len() - 1].clone();
        for _ in self.reduce.len() - 1..k {
            let top = cur[self.degree - 1];
            let mut next = vec![0i64; self.degree];
            for t in (1..self.degree).rev() {
                next[t] = cur[t - 1];
            }
            for (t, slot) in next.iter_mut().enumerate() {
                *slot -= top * self.phi[t];
            }
            cur = next;
        }
        cur
    }
}

/// An element of `Q(zeta_n)` in canonical form.
#[derive(Clone)]
pub struct CycNumber {
    field: Arc<CycloField>,
    coeffs: Vec<BigRational>,
}

fn big(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

impl CycNumber {
    fn from_parts(field: Arc<CycloField>, coeffs: Vec<BigRational>) -> CycNumber {
        let mut z = CycNumber { field, coeffs };
        z.normalize();
        z
    }

    fn normalize(&mut self) {
        if self.field.order != 1 && self.coeffs[1..].iter().all(|c| c.is_zero()) {
            let c = self.coeffs[0].clone();
            self.field = CycloField::get(1);
            self.coeffs = vec![c];
        }
    }

    /// `zeta_n^exponent`.
    pub fn root_of_unity(order: u32, exponent: i64) -> CycNumber {
        let field = CycloField::get(order);
        let k = exponent.rem_euclid(order as i64) as u64;
        let coeffs = field.power_of_generator(k).into_iter().map(big).collect();
        CycNumber::from_parts(field, coeffs)
    }

    pub fn rational(r: BigRational) -> CycNumber {
        CycNumber { field: CycloField::get(1), coeffs: vec![r] }
    }

    pub fn from_ratio(num: i64, den: i64) -> CycNumber {
        CycNumber::rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn integer(v: i64) -> CycNumber {
        CycNumber::rational(big(v))
    }

    /// Order of the field the element currently lives in (1 for rationals).
    pub fn field_order(&self) -> u32 {
        self.field.order
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_rational(&self) -> bool {
        self.field.order == 1
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }

    /// Re-expresses the element in `Q(zeta_m)`; `m` must be a multiple of the current order.
    pub fn embed(&self, m: u32) -> CycNumber {
        let n = self.field.order;
        assert!(m.is_multiple_of(n), "cannot embed Q(zeta_{n}) into Q(zeta_{m})");
        let target = CycloField::get(m);
        let step = (m / n) as u64;
        let mut out = vec![BigRational::zero(); target.degree];
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let row = target.power_of_generator(step * k as u64);
            for (slot, r) in out.iter_mut().zip(row) {
                if r != 0 {
                    *slot += c * big(r);
                }
            }
        }
        CycNumber { field: target, coeffs: out }
    }

    fn aligned(a: &CycNumber, b: &CycNumber) -> (CycNumber, CycNumber) {
        let m = (a.field.order as u64).lcm(&(b.field.order as u64)) as u32;
        (a.embed(m), b.embed(m))
    }

    fn scale(&self, r: &BigRational) -> CycNumber {
        if r.is_zero() {
            return CycNumber::integer(0);
        }
        CycNumber { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| c * r).collect() }
    }

    pub fn pow(&self, k: i64) -> CycNumber {
        if k < 0 {
            return self.inv().pow(-k);
        }
        let mut result = CycNumber::integer(1);
        let mut base = self.clone();
        let mut e = k as u64;
        while e > 0 {
            if e & 1 == 1 {
                result = Scalar::mul(&result, &base);
            }
            e >>= 1;
            if e > 0 {
                base = Scalar::mul(&base, &base);
            }
        }
        result
    }

    pub fn checked_inv(&self) -> Result<CycNumber> {
        if Scalar::is_zero(self) {
            return Err(Error::DivisionByZero);
        }
        Ok(self.inv_nonzero())
    }

    fn inv_nonzero(&self) -> CycNumber {
        if self.is_rational() {
            return CycNumber::rational(self.coeffs[0].recip());
        }
        // Solve (multiplication by self) * v = 1 in the power basis.
        let d = self.field.degree;
        let mut mat: Vec<Vec<BigRational>> = (0..d)
            .map(|col| {
                let mut e = vec![BigRational::zero(); d];
                e[col] = BigRational::one();
                let basis = CycNumber { field: self.field.clone(), coeffs: e };
                let prod = Scalar::mul(self, &basis).embed(self.field.order);
                prod.coeffs
            })
            .collect();
        // mat[col][row]; transpose into augmented rows
        let mut rows: Vec<Vec<BigRational>> = (0..d)
            .map(|r| {
                let mut row: Vec<BigRational> = (0..d).map(|c| mat[c][r].clone()).collect();
                row.push(if r == 0 { BigRational::one() } else { BigRational::zero() });
                row
            })
            .collect();
        mat.clear();
        for col in 0..d {
            let piv = (col..d).find(|&r| !rows[r][col].is_zero()).expect("nonzero element is invertible");
            rows.swap(col, piv);
            let inv = rows[col][col].recip();
            for v in rows[col].iter_mut() {
                *v = &*v * &inv;
            }
            for r in 0..d {
                if r != col && !rows[r][col].is_zero() {
                    let f = rows[r][col].clone();
                    for c in col..=d {
                        let sub = &rows[col][c] * &f;
                        rows[r][c] -= sub;
                    }
                }
            }
        }
        let coeffs = rows.into_iter().map(|mut r| r.pop().unwrap()).collect();
        CycNumber::from_parts(self.field.clone(), coeffs)
    }

    /// Smallest `N >= 1` with `z^N = 1`, or `None` when `z` is not a root of unity.
    pub fn order(&self) -> Result<Option<u64>> {
        if Scalar::is_zero(self) {
            return Err(Error::ZeroInput("cyc_order"));
        }
        // roots of unity in Q(zeta_n) are +-zeta_n^k, so the order divides lcm(2, n)
        let n = self.field.order as u64;
        let bound = n.lcm(&2);
        if !self.pow(bound as i64).is_one() {
            return Ok(None);
        }
        let mut divisors: Vec<u64> = (1..=bound).filter(|d| bound.is_multiple_of(*d)).collect();
        divisors.sort_unstable();
        Ok(divisors.into_iter().find(|&d| self.pow(d as i64).is_one()))
    }

    /// Membership in the set of primitive N-th roots of unity.
    pub fn is_primitive_root(&self, n: u64) -> bool {
        !Scalar::is_zero(self) && matches!(self.order(), Ok(Some(o)) if o == n)
    }

    /// `(m)_q = 1 + q + ... + q^(m-1)`.
    pub fn q_integer(&self, m: u32) -> CycNumber {
        let mut acc = CycNumber::integer(0);
        let mut p = CycNumber::integer(1);
        for _ in 0..m {
            acc = Scalar::add(&acc, &p);
            p = Scalar::mul(&p, self);
        }
        acc
    }

    /// `(m)_q! = (1)_q (2)_q ... (m)_q`.
    pub fn q_factorial(&self, m: u32) -> CycNumber {
        (1..=m).fold(CycNumber::integer(1), |acc, k| Scalar::mul(&acc, &self.q_integer(k)))
    }
}

impl Scalar for CycNumber {
    fn zero() -> Self {
        CycNumber::integer(0)
    }
    fn one() -> Self {
        CycNumber::integer(1)
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
    fn add(&self, other: &Self) -> Self {
        if self.field.order == other.field.order {
            let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
            return CycNumber::from_parts(self.field.clone(), coeffs);
        }
        if other.is_rational() {
            let mut c = self.coeffs.clone();
            c[0] += &other.coeffs[0];
            return CycNumber::from_parts(self.field.clone(), c);
        }
        if self.is_rational() {
            return other.add(self);
        }
        let (a, b) = CycNumber::aligned(self, other);
        a.add(&b)
    }
    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
    fn mul(&self, other: &Self) -> Self {
        if other.is_rational() {
            return self.scale(&other.coeffs[0]);
        }
        if self.is_rational() {
            return other.scale(&self.coeffs[0]);
        }
        if self.field.order != other.field.order {
            let (a, b) = CycNumber::aligned(self, other);
            return a.mul(&b);
        }
        let d = self.field.degree;
        let mut prod = vec![BigRational::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let mut out = vec![BigRational::zero(); d];
        for (k, c) in prod.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if k < d {
                out[k] += c;
            } else {
                for (slot, &r) in out.iter_mut().zip(&self.field.reduce[k]) {
                    if r != 0 {
                        *slot += &c * big(r);
                    }
                }
            }
        }
        CycNumber::from_parts(self.field.clone(), out)
    }
    fn neg(&self) -> Self {
        CycNumber { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
    fn inv(&self) -> Self {
        self.checked_inv().expect("inverse of zero")
    }
    fn from_i64(v: i64) -> Self {
        CycNumber::integer(v)
    }
}

impl PartialEq for CycNumber {
    fn eq(&self, other: &Self) -> bool {
        if self.field.order == other.field.order {
            return self.coeffs == other.coeffs;
        }
        if self.is_rational() || other.is_rational() {
            // normalised: a non-rational element never equals a rational one
            return false;
        }
        let (a, b) = CycNumber::aligned(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CycNumber {}

impl fmt::Debug for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", self.coeffs[0]);
        }
        if let Ok(Some(m)) = self.order() {
            let k = (1..m as i64).find(|&k| CycNumber::root_of_unity(m as u32, k) == *self).expect("a power of a primitive root");
            return if k == 1 { write!(f, "zeta{m}") } else { write!(f, "zeta{m}^{k}") };
        }
        let n = self.field.order;
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if k == 0 {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "zeta{n}^{k}")?;
            } else {
                write!(f, "{c}*zeta{n}^{k}")?;
            }
        }
        Ok(())
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    if let Some((a, b)) = s.split_once('/') {
        let a = BigInt::from_str(a.trim()).ok()?;
        let b = BigInt::from_str(b.trim()).ok()?;
        if num_traits::Zero::is_zero(&b) {
            return None;
        }
        Some(BigRational::new(a, b))
    } else {
        BigInt::from_str(s.trim()).ok().map(BigRational::from_integer)
    }
}

fn parse_term(term: &str) -> Option<CycNumber> {
    let term = term.trim();
    let (neg, body) = match term.strip_prefix('-') {
        Some(rest) => (true, rest.trim()),
        None => (false, term),
    };
    let value = if let Some(pos) = body.find("zeta") {
        let coeff = body[..pos].trim().trim_end_matches('*').trim();
        let coeff = if coeff.is_empty() { BigRational::one() } else { parse_rational(coeff)? };
        let root = &body[pos + 4..];
        let (n, k) = match root.split_once('^') {
            Some((n, k)) => (n.trim().parse::<u32>().ok()?, k.trim().parse::<i64>().ok()?),
            None => (root.trim().parse::<u32>().ok()?, 1),
        };
        if n == 0 {
            return None;
        }
        CycNumber::root_of_unity(n, k).scale(&coeff)
    } else {
        CycNumber::rational(parse_rational(body)?)
    };
    Some(if neg { value.neg() } else { value })
}

impl FromStr for CycNumber {
    type Err = Error;

    /// Accepts sums of terms `c`, `zeta{n}^{k}` and `c*zeta{n}^{k}`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("invalid cyclotomic literal `{s}`"));
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(bad());
        }
        // split into signed terms; a '-' after '^' or '/' or '*' belongs to a number
        let mut terms = Vec::new();
        let mut cur = String::new();
        let mut prev: Option<char> = None;
        for ch in cleaned.chars() {
            let starts_term = match ch {
                '+' => true,
                '-' => prev.is_some() && !matches!(prev, Some('^') | Some('/') | Some('*') | Some('+')),
                _ => false,
            };
            if starts_term {
                if !cur.is_empty() {
                    terms.push(std::mem::take(&mut cur));
                }
                if ch == '-' {
                    cur.push('-');
                }
            } else {
                cur.push(ch);
            }
            prev = Some(ch);
        }
        if !cur.is_empty() {
            terms.push(cur);
        }
        let mut acc = CycNumber::integer(0);
        for t in terms {
            acc = acc.add(&parse_term(&t).ok_or_else(bad)?);
        }
        Ok(acc)
    }
}

impl serde::Serialize for CycNumber {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// Greatest common divisor helper shared by the modules that work with orders.
pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// `|r|` for a rational, used in pretty printing.
pub fn abs_rational(r: &BigRational) -> BigRational {
    r.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u32, k: i64) -> CycNumber {
        CycNumber::root_of_unity(n, k)
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_poly(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_poly(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(CycloField::get(9).degree(), 6);
    }

    #[test]
    fn defining_properties() {
        let i = z(4, 1);
        assert_eq!(i.mul(&i), CycNumber::integer(-1));
        assert_eq!(z(1, 0), CycNumber::one());
        assert_eq!(z(3, 1).add(&z(3, 2)), CycNumber::integer(-1));
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(z(8, 1).inv(), z(8, 7));
        assert!(z(5, 1).pow(5).is_one());
        let a = CycNumber::one().add(&z(3, 1));
        let b = CycNumber::one().add(&z(3, 2));
        assert!(a.mul(&b).is_one());
        assert!(CycNumber::zero().checked_inv().is_err());
    }

    #[test]
    fn orders() {
        assert_eq!(z(12, 4).order().unwrap(), Some(3));
        assert_eq!(CycNumber::one().order().unwrap(), Some(1));
        assert_eq!(CycNumber::integer(2).order().unwrap(), None);
        assert_eq!(z(3, 1).neg().order().unwrap(), Some(6));
        assert!(CycNumber::zero().order().is_err());
        for k in 0..24 {
            assert_eq!(z(24, k).order().unwrap(), Some(24 / gcd_u64(24, k as u64)));
        }
    }

    #[test]
    fn mixed_orders_embed() {
        assert_eq!(z(8, 2), z(4, 1));
        assert_eq!(z(4, 1).mul(&z(3, 1)), z(12, 7));
        assert_eq!(z(2, 1), CycNumber::integer(-1));
        assert!(z(6, 3).is_rational());
    }

    #[test]
    fn parse_and_format() {
        let x: CycNumber = "zeta3^2".parse().unwrap();
        assert_eq!(x, z(3, 2));
        let y: CycNumber = "1/2 - 3*zeta12^5 + zeta12".parse().unwrap();
        assert_eq!(y.to_string().parse::<CycNumber>().unwrap(), y);
        let w: CycNumber = "zeta3^-1".parse().unwrap();
        assert_eq!(w, z(3, 2));
        assert_eq!("-1".parse::<CycNumber>().unwrap(), CycNumber::integer(-1));
        assert!("zeta0^1".parse::<CycNumber>().is_err());
        assert!("abc".parse::<CycNumber>().is_err());
    }

    #[test]
    fn q_numbers() {
        let q = z(3, 1);
        assert!(q.q_integer(3).is_zero());
        assert!(!q.q_factorial(2).is_zero());
        assert!(q.q_factorial(3).is_zero());
        assert!(CycNumber::integer(-1).q_integer(2).is_zero());
    }
}
