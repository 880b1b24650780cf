//! Exact arithmetic for dense complex matrices over dyadic Gaussian
//! rationals, i.e. numbers of the form `(a + b·i) / 2^s` with integer `a`,
//! `b`.
//!
//! This carrier is closed under addition, multiplication, complex
//! conjugation and halving, which is everything the generator constructions
//! and symmetry checks need; every comparison in the crate is an exact
//! equality of canonical forms, never a float tolerance.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::de::{self, SeqAccess, Visitor};
use serde::ser::{SerializeMap, SerializeSeq};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// `(re_num + i·im_num) / 2^shift`, kept canonical: `shift == 0`, or at
/// least one numerator is odd.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Dyadic {
    re_num: i64,
    im_num: i64,
    shift: u32,
}

const OVERFLOW_MSG: &str =
    "dyadic integer overflow: value exceeds the supported 64-bit numerator range";

fn narrow(v: i128) -> i64 {
    i64::try_from(v).expect(OVERFLOW_MSG)
}

impl Dyadic {
    /// Canonicalizing constructor.
    pub fn new(re_num: i64, im_num: i64, shift: u32) -> Self {
        Dyadic { re_num, im_num, shift }.canonical()
    }

    /// A Gaussian integer `re + i·im`.
    pub fn gauss(re: i64, im: i64) -> Self {
        Dyadic { re_num: re, im_num: im, shift: 0 }
    }

    pub fn integer(n: i64) -> Self {
        Self::gauss(n, 0)
    }

    pub fn zero() -> Self {
        Self::gauss(0, 0)
    }

    pub fn one() -> Self {
        Self::gauss(1, 0)
    }

    pub fn i() -> Self {
        Self::gauss(0, 1)
    }

    /// 1/2, the only denominator the table formulas ever introduce.
    pub fn half() -> Self {
        Dyadic { re_num: 1, im_num: 0, shift: 1 }
    }

    pub fn re_num(&self) -> i64 {
        self.re_num
    }

    pub fn im_num(&self) -> i64 {
        self.im_num
    }

    pub fn shift(&self) -> u32 {
        self.shift
    }

    pub fn is_zero(&self) -> bool {
        self.re_num == 0 && self.im_num == 0
    }

    pub fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// Canonical form: divide out common factors of 2 (zero has shift 0).
    pub fn canonical(mut self) -> Self {
        if self.re_num == 0 && self.im_num == 0 {
            self.shift = 0;
            return self;
        }
        while self.shift > 0 && self.re_num % 2 == 0 && self.im_num % 2 == 0 {
            self.re_num /= 2;
            self.im_num /= 2;
            self.shift -= 1;
        }
        self
    }

    pub fn conj(self) -> Self {
        Dyadic { re_num: self.re_num, im_num: -self.im_num, shift: self.shift }
    }

    /// Multiplication by the imaginary unit.
    pub fn mul_i(self) -> Self {
        Dyadic { re_num: -self.im_num, im_num: self.re_num, shift: self.shift }
    }

    /// Division by `2^k` (the only division supported).
    pub fn div_pow2(self, k: u32) -> Self {
        Dyadic { re_num: self.re_num, im_num: self.im_num, shift: self.shift + k }.canonical()
    }

    pub fn to_complex(self) -> Complex64 {
        let scale = (self.shift as f64).exp2().recip();
        Complex64::new(self.re_num as f64 * scale, self.im_num as f64 * scale)
    }
}

impl Add for Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: Dyadic) -> Dyadic {
        let shift = self.shift.max(rhs.shift);
        let (la, lb) = (1i128 << (shift - self.shift), 1i128 << (shift - rhs.shift));
        Dyadic {
            re_num: narrow(self.re_num as i128 * la + rhs.re_num as i128 * lb),
            im_num: narrow(self.im_num as i128 * la + rhs.im_num as i128 * lb),
            shift,
        }
        .canonical()
    }
}

impl Sub for Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: Dyadic) -> Dyadic {
        self + (-rhs)
    }
}

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic { re_num: -self.re_num, im_num: -self.im_num, shift: self.shift }
    }
}

impl Mul for Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: Dyadic) -> Dyadic {
        let (a, b) = (self.re_num as i128, self.im_num as i128);
        let (c, d) = (rhs.re_num as i128, rhs.im_num as i128);
        Dyadic {
            re_num: narrow(a * c - b * d),
            im_num: narrow(a * d + b * c),
            shift: self.shift.checked_add(rhs.shift).expect(OVERFLOW_MSG),
        }
        .canonical()
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let num = match (self.re_num, self.im_num) {
            (re, 0) => format!("{re}"),
            (0, 1) => "i".to_string(),
            (0, -1) => "-i".to_string(),
            (0, im) => format!("{im}i"),
            (re, im) if im < 0 => format!("({re}{im}i)"),
            (re, im) => format!("({re}+{im}i)"),
        };
        if self.shift == 0 {
            write!(f, "{num}")
        } else {
            write!(f, "{num}/{}", 1i64 << self.shift)
        }
    }
}

/// JSON encoding of an entry: `[re_num, im_num]`, or `[re_num, im_num,
/// shift]` when the shift is nonzero. Round trips are bit-exact.
impl Serialize for Dyadic {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let len = if self.shift == 0 { 2 } else { 3 };
        let mut seq = serializer.serialize_seq(Some(len))?;
        seq.serialize_element(&self.re_num)?;
        seq.serialize_element(&self.im_num)?;
        if self.shift != 0 {
            seq.serialize_element(&self.shift)?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Dyadic {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = Dyadic;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                write!(f, "an array [re_num, im_num] or [re_num, im_num, shift]")
            }
            fn visit_seq<A: SeqAccess<'de>>(
                self,
                mut seq: A,
            ) -> std::result::Result<Dyadic, A::Error> {
                let re: i64 =
                    seq.next_element()?.ok_or_else(|| de::Error::invalid_length(0, &self))?;
                let im: i64 =
                    seq.next_element()?.ok_or_else(|| de::Error::invalid_length(1, &self))?;
                let shift: Option<u32> = seq.next_element()?;
                if seq.next_element::<serde_json::Value>()?.is_some() {
                    return Err(de::Error::custom("entry has more than 3 components"));
                }
                Ok(Dyadic::new(re, im, shift.unwrap_or(0)))
            }
        }
        deserializer.deserialize_seq(V)
    }
}

/// Dense square matrix with [`Dyadic`] entries; value-semantic and immutable
/// after construction. Equality is entrywise exact equality.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExactMatrix {
    n: usize,
    data: Vec<Dyadic>,
}

impl ExactMatrix {
    pub fn zeros(n: usize) -> Self {
        assert!(n > 0, "matrix size must be positive");
        ExactMatrix { n, data: vec![Dyadic::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, Dyadic::one());
        }
        m
    }

    /// `c · I_n`.
    pub fn scalar(n: usize, c: Dyadic) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, c);
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Dyadic) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Dyadic>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::dim("matrix rows must form a nonempty square grid"));
        }
        Ok(ExactMatrix { n, data: rows.into_iter().flatten().collect() })
    }

    /// Literal constructor for small fixtures, entries as Gaussian integers.
    pub fn from_gauss<const N: usize>(rows: [[(i64, i64); N]; N]) -> Self {
        Self::from_fn(N, |i, j| Dyadic::gauss(rows[i][j].0, rows[i][j].1))
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Dyadic {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Dyadic) {
        self.data[i * self.n + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Dyadic::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }

    fn check_same_size(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::dim(format!("matrix sizes differ: {} vs {}", self.n, other.n)));
        }
        Ok(())
    }

    /// Exact matrix product. Structural zeros are skipped, which makes
    /// products of monomial matrices (all the Clifford generators) O(n^2).
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same_size(other)?;
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for l in 0..n {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(l, j);
                    if b.is_zero() {
                        continue;
                    }
                    out.set(i, j, out.get(i, j) + a * b);
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_size(other)?;
        Ok(ExactMatrix {
            n: self.n,
            data: self.data.iter().zip(&other.data).map(|(a, b)| *a + *b).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_size(other)?;
        Ok(ExactMatrix {
            n: self.n,
            data: self.data.iter().zip(&other.data).map(|(a, b)| *a - *b).collect(),
        })
    }

    pub fn neg(&self) -> Self {
        ExactMatrix { n: self.n, data: self.data.iter().map(|a| -*a).collect() }
    }

    pub fn scale(&self, c: Dyadic) -> Self {
        ExactMatrix { n: self.n, data: self.data.iter().map(|a| *a * c).collect() }
    }

    /// Entrywise division by 2 (exact; this is where dyadic shifts arise).
    pub fn halve(&self) -> Self {
        ExactMatrix { n: self.n, data: self.data.iter().map(|a| a.div_pow2(1)).collect() }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i))
    }

    pub fn conj(&self) -> Self {
        ExactMatrix { n: self.n, data: self.data.iter().map(|a| a.conj()).collect() }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i).conj())
    }

    /// Assemble `[[a, b], [c, d]]` from four equally sized blocks.
    pub fn from_blocks2(a: &Self, b: &Self, c: &Self, d: &Self) -> Result<Self> {
        let n = a.n;
        if b.n != n || c.n != n || d.n != n {
            return Err(Error::dim("block assembly requires four blocks of one size".to_string()));
        }
        Ok(Self::from_fn(2 * n, |i, j| match (i < n, j < n) {
            (true, true) => a.get(i, j),
            (true, false) => b.get(i, j - n),
            (false, true) => c.get(i - n, j),
            (false, false) => d.get(i - n, j - n),
        }))
    }

    pub fn block_diag(&self, other: &Self) -> Self {
        let n = self.n + other.n;
        Self::from_fn(n, |i, j| {
            if i < self.n && j < self.n {
                self.get(i, j)
            } else if i >= self.n && j >= self.n {
                other.get(i - self.n, j - self.n)
            } else {
                Dyadic::zero()
            }
        })
    }

    /// Kronecker product, row-major block layout: block (i,j) is
    /// `self[i][j] * other`.
    pub fn kron(&self, other: &Self) -> Self {
        let m = other.n;
        Self::from_fn(self.n * m, |i, j| self.get(i / m, j / m) * other.get(i % m, j % m))
    }

    /// Exact unitarity test `A·A* = I` (inversion is never used).
    pub fn is_unitary(&self) -> bool {
        self.mul(&self.adjoint()).map(|p| p.is_identity()).unwrap_or(false)
    }

    pub fn is_self_adjoint(&self) -> bool {
        *self == self.adjoint()
    }

    pub fn to_complex(&self) -> crate::cmat::CMat {
        crate::cmat::CMat::from_fn(self.n, |i, j| self.get(i, j).to_complex())
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[ {} ]", row.join("  "))?;
        }
        Ok(())
    }
}

/// JSON encoding: `{ "n": int, "rows": [[entry, ...], ...] }`.
impl Serialize for ExactMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(2))?;
        map.serialize_entry("n", &self.n)?;
        let rows: Vec<Vec<Dyadic>> =
            (0..self.n).map(|i| (0..self.n).map(|j| self.get(i, j)).collect()).collect();
        map.serialize_entry("rows", &rows)?;
        map.end()
    }
}

impl<'de> Deserialize<'de> for ExactMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            n: usize,
            rows: Vec<Vec<Dyadic>>,
        }
        let raw = Raw::deserialize(deserializer)?;
        if raw.rows.len() != raw.n || raw.rows.iter().any(|r| r.len() != raw.n) {
            return Err(de::Error::custom(format!(
                "matrix declares n = {} but rows do not form an {0}x{0} grid",
                raw.n
            )));
        }
        ExactMatrix::from_rows(raw.rows).map_err(de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(re: i64, im: i64) -> Dyadic {
        Dyadic::gauss(re, im)
    }

    #[test]
    fn canonical_form_is_idempotent_and_minimal() {
        let x = Dyadic::new(4, 8, 3);
        assert_eq!((x.re_num(), x.im_num(), x.shift()), (1, 2, 1));
        assert_eq!(x.canonical(), x);
        assert_eq!(Dyadic::new(0, 0, 7), Dyadic::zero());
    }

    #[test]
    fn arithmetic_matches_hand_values() {
        // (1+i)/2 * (1-i)/2 = 2/4 = 1/2
        let h = Dyadic::new(1, 1, 1) * Dyadic::new(1, -1, 1);
        assert_eq!(h, Dyadic::half());
        assert_eq!(d(0, 1) * d(0, 1), d(-1, 0));
        assert_eq!(Dyadic::half() + Dyadic::half(), Dyadic::one());
        assert_eq!(d(3, -2).conj(), d(3, 2));
        assert_eq!(d(1, 0).mul_i(), d(0, 1));
    }

    #[test]
    #[should_panic(expected = "dyadic integer overflow")]
    fn overflow_is_a_hard_error() {
        let big = Dyadic::integer(i64::MAX);
        let _ = big * big;
    }

    #[test]
    fn identity_multiplication() {
        let i2 = ExactMatrix::identity(2);
        assert_eq!(i2.mul(&i2).unwrap(), i2);
    }

    #[test]
    fn adjoint_of_i_times_identity() {
        let m = ExactMatrix::scalar(2, Dyadic::i());
        assert_eq!(m.adjoint(), ExactMatrix::scalar(2, -Dyadic::i()));
    }

    #[test]
    fn block_diag_layout() {
        // diag(1,-1) ++ I_2 = diag(1,-1,1,1)
        let a = ExactMatrix::from_gauss([[(1, 0), (0, 0)], [(0, 0), (-1, 0)]]);
        let b = ExactMatrix::identity(2);
        let c = a.block_diag(&b);
        let expected = ExactMatrix::from_fn(4, |i, j| {
            if i != j {
                Dyadic::zero()
            } else {
                Dyadic::integer(if i == 1 { -1 } else { 1 })
            }
        });
        assert_eq!(c, expected);
    }

    #[test]
    fn kron_against_hand_value() {
        let w = ExactMatrix::from_gauss([[(0, 0), (1, 0)], [(-1, 0), (0, 0)]]);
        let k = ExactMatrix::identity(2).kron(&w);
        assert_eq!(k, w.block_diag(&w));
    }

    #[test]
    fn mismatched_sizes_are_dimension_errors() {
        let a = ExactMatrix::identity(2);
        let b = ExactMatrix::identity(3);
        assert!(matches!(a.mul(&b), Err(Error::Dimension(_))));
        assert!(matches!(a.add(&b), Err(Error::Dimension(_))));
    }

    #[test]
    fn json_round_trip_is_bit_exact() {
        let m = ExactMatrix::from_rows(vec![
            vec![Dyadic::new(1, -1, 1), Dyadic::zero()],
            vec![Dyadic::i(), Dyadic::new(-3, 5, 2)],
        ])
        .unwrap();
        let text = serde_json::to_string(&m).unwrap();
        let back: ExactMatrix = serde_json::from_str(&text).unwrap();
        assert_eq!(back, m);
        assert_eq!(serde_json::to_string(&back).unwrap(), text);
        // shift omitted means 0
        let short: ExactMatrix = serde_json::from_str(r#"{"n":1,"rows":[[[2,3]]]}"#).unwrap();
        assert_eq!(short.get(0, 0), Dyadic::gauss(2, 3));
    }
}
