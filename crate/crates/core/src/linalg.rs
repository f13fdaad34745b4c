//! Exact rank of sparse integer matrices over `Q` or `F_p`.
//!
//! Over `Q` the elimination is fraction-free: a row is reduced against a
//! pivot row by `row <- a*row - b*pivot` and then divided by the gcd of its
//! entries. Entries are `i128` with checked arithmetic; on overflow the
//! whole computation is redone with arbitrary-precision integers.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// The coefficient field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rationals,
    Prime(u32),
}

impl Field {
    pub const F2: Field = Field::Prime(2);

    pub fn prime(p: u32) -> Result<Field> {
        if p < 2 || (2..p).take_while(|d| d * d <= p).any(|d| p % d == 0) {
            return Err(Error::Input(format!("{p} is not prime")));
        }
        Ok(Field::Prime(p))
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "q"),
            Field::Prime(p) => write!(f, "f{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "q" | "Q" => Ok(Field::Rationals),
            _ => {
                let p = s
                    .strip_prefix(['f', 'F'])
                    .and_then(|p| p.parse::<u32>().ok())
                    .ok_or_else(|| Error::Parse(format!("unknown field `{s}` (expected q or f<prime>)")))?;
                Field::prime(p).map_err(|e| Error::Parse(e.to_string()))
            }
        }
    }
}

impl Serialize for Field {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// A sparse row: `(column, value)` pairs with strictly increasing columns
/// and nonzero values.
pub type SparseRow = Vec<(usize, i64)>;

/// Rank of the matrix whose rows are `rows`.
pub fn rank(rows: &[SparseRow], field: Field) -> usize {
    match field {
        Field::Prime(p) => rank_mod_p(rows, p as u64),
        Field::Rationals => rank_over_q::<i128>(rows)
            .unwrap_or_else(|| rank_over_q::<BigInt>(rows).expect("arbitrary precision cannot overflow")),
    }
}

fn rank_mod_p(rows: &[SparseRow], p: u64) -> usize {
    let inv = |a: u64| -> u64 {
        // Fermat; p is prime.
        let (mut base, mut exp, mut acc) = (a % p, p - 2, 1u64);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            exp >>= 1;
        }
        acc
    };
    let mut pivots: HashMap<usize, Vec<(usize, u64)>> = HashMap::new();
    let mut rank = 0;
    for row in rows {
        let mut cur: Vec<(usize, u64)> =
            row.iter().map(|&(c, v)| (c, v.rem_euclid(p as i64) as u64)).filter(|&(_, v)| v != 0).collect();
        while let Some(&(lead, lv)) = cur.first() {
            match pivots.get(&lead) {
                None => {
                    let scale = inv(lv);
                    for e in cur.iter_mut() {
                        e.1 = e.1 * scale % p;
                    }
                    pivots.insert(lead, cur);
                    rank += 1;
                    break;
                }
                Some(piv) => {
                    // piv has leading entry 1
                    cur = merge(&cur, piv, |x, y| (x + (p - lv) * y % p) % p, |v| *v == 0);
                }
            }
        }
    }
    rank
}

/// `out[c] = f(a[c], b[c])` over the union of supports, dropping zeros.
fn merge<T: Clone + Default>(
    a: &[(usize, T)],
    b: &[(usize, T)],
    mut f: impl FnMut(T, T) -> T,
    is_zero: impl Fn(&T) -> bool,
) -> Vec<(usize, T)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let (col, val) = if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
            i += 1;
            (a[i - 1].0, f(a[i - 1].1.clone(), T::default()))
        } else if i >= a.len() || b[j].0 < a[i].0 {
            j += 1;
            (b[j - 1].0, f(T::default(), b[j - 1].1.clone()))
        } else {
            i += 1;
            j += 1;
            (a[i - 1].0, f(a[i - 1].1.clone(), b[j - 1].1.clone()))
        };
        if !is_zero(&val) {
            out.push((col, val));
        }
    }
    out
}

trait ExactInt: Clone + Default + PartialEq {
    fn from_i64(v: i64) -> Self;
    /// `a*x - b*y`, or `None` on overflow.
    fn mul_sub(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self>;
    fn gcd(&self, other: &Self) -> Self;
    fn div_exact(&self, d: &Self) -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
}

impl ExactInt for i128 {
    fn from_i64(v: i64) -> Self {
        v as i128
    }
    fn mul_sub(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        a.checked_mul(*x)?.checked_sub(b.checked_mul(*y)?)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_one(&self) -> bool {
        *self == 1
    }
}

impl ExactInt for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn mul_sub(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        Some(a * x - b * y)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        self.abs() == BigInt::from(1)
    }
}

fn rank_over_q<T: ExactInt>(rows: &[SparseRow]) -> Option<usize> {
    let mut pivots: HashMap<usize, Vec<(usize, T)>> = HashMap::new();
    let mut rank = 0;
    for row in rows {
        let mut cur: Vec<(usize, T)> = row.iter().filter(|e| e.1 != 0).map(|&(c, v)| (c, T::from_i64(v))).collect();
        while let Some((lead, lv)) = cur.first().cloned() {
            let Some(piv) = pivots.get(&lead) else {
                pivots.insert(lead, cur);
                rank += 1;
                break;
            };
            let pv = piv[0].1.clone();
            let g = pv.gcd(&lv);
            let (a, b) = (pv.div_exact(&g), lv.div_exact(&g));
            let mut overflow = false;
            let next = merge(
                &cur,
                piv,
                |x, y| match T::mul_sub(&a, &x, &b, &y) {
                    Some(v) => v,
                    None => {
                        overflow = true;
                        T::default()
                    }
                },
                ExactInt::is_zero,
            );
            if overflow {
                return None;
            }
            cur = remove_content(next);
        }
    }
    Some(rank)
}

fn remove_content<T: ExactInt>(row: Vec<(usize, T)>) -> Vec<(usize, T)> {
    let mut g = T::default();
    for (_, v) in &row {
        g = g.gcd(v);
        if g.is_one() {
            return row;
        }
    }
    if g.is_zero() {
        return row;
    }
    row.into_iter().map(|(c, v)| (c, v.div_exact(&g))).collect()
}
