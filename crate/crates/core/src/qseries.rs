//! Power series in `q` with exact integer coefficients, known up to and
//! including `q^N`, and the products and sums around Gordon's identities.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::{check_ri, enumerate_class, in_residue_set, Interpretation, Partition, PartitionClass};

/// Coefficients `c_0..=c_N` of a series known modulo `q^{N+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TruncatedSeries {
    trunc: usize,
    #[serde(serialize_with = "ser_coeffs", deserialize_with = "de_coeffs")]
    coeffs: Vec<BigInt>,
}

/// A `BigInt` that serialises as a JSON integer when it fits in `i64` and
/// as a decimal string otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct JsonInt(pub BigInt);

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(v) => Ok(JsonInt(BigInt::from(v))),
            Raw::Text(t) => t.parse::<BigInt>().map(JsonInt).map_err(de::Error::custom),
        }
    }
}

fn ser_coeffs<S: Serializer>(coeffs: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(coeffs.iter().map(|c| JsonInt(c.clone())))
}

fn de_coeffs<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<BigInt>, D::Error> {
    Ok(Vec::<JsonInt>::deserialize(d)?.into_iter().map(|c| c.0).collect())
}

impl TruncatedSeries {
    pub fn zero(trunc: usize) -> Self {
        Self { trunc, coeffs: vec![BigInt::zero(); trunc + 1] }
    }

    pub fn one(trunc: usize) -> Self {
        Self::monomial(0, BigInt::one(), trunc)
    }

    /// `c · q^exp`, which is zero when `exp > trunc`.
    pub fn monomial(exp: usize, c: BigInt, trunc: usize) -> Self {
        let mut s = Self::zero(trunc);
        if exp <= trunc {
            s.coeffs[exp] = c;
        }
        s
    }

    /// Series with the given coefficients; the truncation order is
    /// `coeffs.len() - 1`.
    ///
    /// # Panics
    /// Panics on an empty coefficient list.
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series needs at least c_0");
        Self { trunc: coeffs.len() - 1, coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Checks that `coeffs.len() == trunc + 1` after deserialisation.
    pub fn validate(&self) -> Result<()> {
        if self.coeffs.len() != self.trunc + 1 {
            return Err(Error::InvalidArgument(format!(
                "series with trunc {} must carry {} coefficients, found {}",
                self.trunc,
                self.trunc + 1,
                self.coeffs.len()
            )));
        }
        Ok(())
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// `[q^n]`; panics if `n > trunc`.
    pub fn coeff(&self, n: usize) -> &BigInt {
        assert!(n <= self.trunc, "coefficient q^{n} is beyond the truncation order {}", self.trunc);
        &self.coeffs[n]
    }

    /// The same series known only up to `q^trunc` (`trunc <= self.trunc`).
    pub fn restrict(&self, trunc: usize) -> Self {
        let trunc = trunc.min(self.trunc);
        Self { trunc, coeffs: self.coeffs[..=trunc].to_vec() }
    }

    /// Multiplies in place by `(1 - q^k)`.
    pub fn mul_one_minus_qk_assign(&mut self, k: usize) {
        assert!(k >= 1, "k must be positive");
        for n in (k..=self.trunc).rev() {
            let prev = self.coeffs[n - k].clone();
            self.coeffs[n] -= prev;
        }
    }

    /// Divides in place by `(1 - q^k)`: a prefix sum with stride `k`.
    pub fn mul_inv_one_minus_qk_assign(&mut self, k: usize) {
        assert!(k >= 1, "k must be positive");
        for n in k..=self.trunc {
            let prev = self.coeffs[n - k].clone();
            self.coeffs[n] += prev;
        }
    }

    pub fn mul_one_minus_qk(mut self, k: usize) -> Self {
        self.mul_one_minus_qk_assign(k);
        self
    }

    pub fn mul_inv_one_minus_qk(mut self, k: usize) -> Self {
        self.mul_inv_one_minus_qk_assign(k);
        self
    }

    /// Index of the first differing coefficient over the common range.
    pub fn first_difference(&self, other: &Self) -> Option<usize> {
        let n = self.trunc.min(other.trunc);
        (0..=n).find(|&k| self.coeffs[k] != other.coeffs[k])
    }

    /// CSV with a header row `n,coefficient`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,coefficient\n");
        for (n, c) in self.coeffs.iter().enumerate() {
            out.push_str(&format!("{n},{c}\n"));
        }
        out
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c < &BigInt::zero() { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (n, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => f.write_str("q")?,
                (1, false) => write!(f, "{mag}q")?,
                (_, true) => write!(f, "q^{n}")?,
                (_, false) => write!(f, "{mag}q^{n}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(q^{})", self.trunc + 1)
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn add(self, rhs: Self) -> TruncatedSeries {
        let trunc = self.trunc.min(rhs.trunc);
        let coeffs = (0..=trunc).map(|n| &self.coeffs[n] + &rhs.coeffs[n]).collect();
        TruncatedSeries { trunc, coeffs }
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn sub(self, rhs: Self) -> TruncatedSeries {
        let trunc = self.trunc.min(rhs.trunc);
        let coeffs = (0..=trunc).map(|n| &self.coeffs[n] - &rhs.coeffs[n]).collect();
        TruncatedSeries { trunc, coeffs }
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn neg(self) -> TruncatedSeries {
        TruncatedSeries { trunc: self.trunc, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn mul(self, rhs: Self) -> TruncatedSeries {
        let trunc = self.trunc.min(rhs.trunc);
        let mut out = TruncatedSeries::zero(trunc);
        for (a, ca) in self.coeffs.iter().enumerate().take(trunc + 1) {
            if ca.is_zero() {
                continue;
            }
            for (b, cb) in rhs.coeffs.iter().enumerate().take(trunc + 1 - a) {
                out.coeffs[a + b] += ca * cb;
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for TruncatedSeries {
            type Output = TruncatedSeries;
            fn $m(self, rhs: Self) -> TruncatedSeries {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// `∏_{1 <= j <= N, j ≡ 0, ±i (mod 2r+1)} (1 - q^j)`.
pub fn product_side(r: usize, i: usize, trunc: usize) -> Result<TruncatedSeries> {
    check_ri(r, i)?;
    let mut s = TruncatedSeries::one(trunc);
    for j in (1..=trunc).filter(|&j| in_residue_set(j, r, i)) {
        s.mul_one_minus_qk_assign(j);
    }
    Ok(s)
}

fn check_ag(r: usize, i: usize) -> Result<()> {
    if r < 2 {
        return Err(Error::InvalidParameters { r, i, reason: "Andrews-Gordon needs r >= 2" });
    }
    check_ri(r, i)
}

/// The multisum side of the Andrews–Gordon identity,
/// `Σ q^{N_1²+…+N_{r-1}² + N_i+…+N_{r-1}} / ((q)_{n_1}…(q)_{n_{r-1}})`
/// with `N_j = n_j + … + n_{r-1}`.
///
/// Tuples are walked as `N_1 >= N_2 >= … >= N_{r-1} >= 0` and pruned as soon
/// as the partial exponent exceeds `N`.
pub fn andrews_gordon_sum_side(r: usize, i: usize, trunc: usize) -> Result<TruncatedSeries> {
    check_ag(r, i)?;
    let depth = r - 1;
    let mut total = TruncatedSeries::zero(trunc);
    // big_n[j] holds N_{j+1}
    let mut big_n = vec![0usize; depth];

    fn exponent_part(j: usize, value: usize, i: usize) -> usize {
        // contribution of N_{j+1}: its square, plus N_{j+1} itself when j+1 >= i
        value * value + if j + 1 >= i { value } else { 0 }
    }

    // walk from N_{r-1} (innermost, smallest) outward so that the bound
    // N_j >= N_{j+1} can be applied while descending
    fn walk(
        j: usize,
        big_n: &mut Vec<usize>,
        exp_so_far: usize,
        i: usize,
        trunc: usize,
        total: &mut TruncatedSeries,
    ) {
        let lower = if j + 1 < big_n.len() { big_n[j + 1] } else { 0 };
        let mut value = lower;
        loop {
            let e = exp_so_far + exponent_part(j, value, i);
            if e > trunc {
                break;
            }
            big_n[j] = value;
            if j == 0 {
                let mut term = TruncatedSeries::monomial(e, BigInt::one(), trunc);
                for k in 0..big_n.len() {
                    let next = if k + 1 < big_n.len() { big_n[k + 1] } else { 0 };
                    for m in 1..=(big_n[k] - next) {
                        term.mul_inv_one_minus_qk_assign(m);
                    }
                }
                *total = &*total + &term;
            } else {
                walk(j - 1, big_n, e, i, trunc, total);
            }
            value += 1;
        }
    }

    walk(depth - 1, &mut big_n, 0, i, trunc, &mut total);
    Ok(total)
}

/// `∏_{n <= N, n ≢ 0, ±i (mod 2r+1)} 1/(1 - q^n)`, the product side of the
/// Andrews–Gordon identity after cancelling the numerator.
pub fn andrews_gordon_product_side(r: usize, i: usize, trunc: usize) -> Result<TruncatedSeries> {
    check_ag(r, i)?;
    let mut s = TruncatedSeries::one(trunc);
    for n in (1..=trunc).filter(|&n| !in_residue_set(n, r, i)) {
        s.mul_inv_one_minus_qk_assign(n);
    }
    Ok(s)
}

/// `∏_{n <= N} 1/(1 - q^n)`, the partition generating function.
pub fn euler_partition_series(trunc: usize) -> TruncatedSeries {
    let mut s = TruncatedSeries::one(trunc);
    for n in 1..=trunc {
        s.mul_inv_one_minus_qk_assign(n);
    }
    s
}

/// Counting (`|class(n)|`) or signed (`Σ (-1)^{ℓ(λ)}`) generating series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ClassWeighting {
    #[default]
    Count,
    Signed,
}

/// Generating series of a partition class, by enumeration.
pub fn class_series(
    class: PartitionClass,
    trunc: usize,
    interp: Interpretation,
    weighting: ClassWeighting,
) -> Result<TruncatedSeries> {
    class.validate()?;
    let coeffs = (0..=trunc)
        .map(|n| {
            let members = enumerate_class(n, class, interp)?;
            Ok(match weighting {
                ClassWeighting::Count => BigInt::from(members.len()),
                ClassWeighting::Signed => BigInt::from(members.iter().map(Partition::sign).sum::<i64>()),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TruncatedSeries::from_coeffs(coeffs))
}
