//! Exact integer linear algebra: Smith normal form and abelian invariants.
//!
//! Everything is generic over [`IntRing`], so the same code runs on machine
//! integers and on arbitrary-precision [`BigInt`]. Presentations are always
//! abelianized over `BigInt`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, ToPrimitive};
use serde::Serialize;

use crate::presentation::FPresentation;

/// Exact integer scalar: machine integers or `BigInt`.
pub trait IntRing:
    Clone + fmt::Debug + fmt::Display + Integer + Signed + FromPrimitive + ToPrimitive
{
}

impl<T> IntRing for T where
    T: Clone + fmt::Debug + fmt::Display + Integer + Signed + FromPrimitive + ToPrimitive
{
}

/// Dense row-major integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: IntRing> IntMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = T::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        IntMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| T::from_i64(x).expect("fits")).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        self.data[i * self.cols + j] = value;
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a.clone() * other.get(k, j).clone();
                    let idx = i * out.cols + j;
                    out.data[idx] = out.data[idx].clone() + prod;
                }
            }
        }
        out
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn diagonal(&self) -> Vec<T> {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i).clone())
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += factor * row[src]
    fn add_row(&mut self, dst: usize, src: usize, factor: &T) {
        if factor.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = self.get(src, j).clone();
            if !v.is_zero() {
                let idx = dst * self.cols + j;
                self.data[idx] = self.data[idx].clone() + factor.clone() * v;
            }
        }
    }

    /// col[dst] += factor * col[src]
    fn add_col(&mut self, dst: usize, src: usize, factor: &T) {
        if factor.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = self.get(i, src).clone();
            if !v.is_zero() {
                let idx = i * self.cols + dst;
                self.data[idx] = self.data[idx].clone() + factor.clone() * v;
            }
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let idx = r * self.cols + j;
            self.data[idx] = -self.data[idx].clone();
        }
    }
}

/// `U * A * V = D` with `U`, `V` unimodular and `D` diagonal, each diagonal entry dividing the next.
#[derive(Clone, Debug)]
pub struct Snf<T> {
    pub u: IntMatrix<T>,
    pub d: IntMatrix<T>,
    pub v: IntMatrix<T>,
}

/// Quotient rounded to nearest, so remainders stay at most half the divisor.
fn round_div<T: IntRing>(a: &T, b: &T) -> T {
    let (q, r) = a.div_mod_floor(b);
    let two = T::one() + T::one();
    // r has the sign of b, so one more multiple of b brings it back under |b|/2
    if (r.clone() * two).abs() > b.abs() {
        q + T::one()
    } else {
        q
    }
}

struct Reducer<T> {
    a: IntMatrix<T>,
    u: Option<IntMatrix<T>>,
    v: Option<IntMatrix<T>>,
}

impl<T: IntRing> Reducer<T> {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        if let Some(u) = &mut self.u {
            u.swap_rows(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        if let Some(v) = &mut self.v {
            v.swap_cols(i, j);
        }
    }

    fn add_row(&mut self, dst: usize, src: usize, f: &T) {
        self.a.add_row(dst, src, f);
        if let Some(u) = &mut self.u {
            u.add_row(dst, src, f);
        }
    }

    fn add_col(&mut self, dst: usize, src: usize, f: &T) {
        self.a.add_col(dst, src, f);
        if let Some(v) = &mut self.v {
            v.add_col(dst, src, f);
        }
    }

    fn negate_row(&mut self, r: usize) {
        self.a.negate_row(r);
        if let Some(u) = &mut self.u {
            u.negate_row(r);
        }
    }

    /// Pivot: least absolute nonzero entry of the trailing block, ties by position.
    fn find_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(T, usize, usize)> = None;
        for i in t..self.a.rows {
            for j in t..self.a.cols {
                let x = self.a.get(i, j);
                if x.is_zero() {
                    continue;
                }
                let ax = x.abs();
                if best.as_ref().is_none_or(|(b, _, _)| ax < *b) {
                    best = Some((ax, i, j));
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }

    fn run(&mut self) {
        let n = self.a.rows.min(self.a.cols);
        for t in 0..n {
            loop {
                let Some((pi, pj)) = self.find_pivot(t) else {
                    return;
                };
                self.swap_rows(t, pi);
                self.swap_cols(t, pj);
                let p = self.a.get(t, t).clone();
                let mut clean = true;
                for i in t + 1..self.a.rows {
                    let x = self.a.get(i, t).clone();
                    if !x.is_zero() {
                        let q = round_div(&x, &p);
                        self.add_row(i, t, &-q);
                        clean &= self.a.get(i, t).is_zero();
                    }
                }
                for j in t + 1..self.a.cols {
                    let x = self.a.get(t, j).clone();
                    if !x.is_zero() {
                        let q = round_div(&x, &p);
                        self.add_col(j, t, &-q);
                        clean &= self.a.get(t, j).is_zero();
                    }
                }
                if !clean {
                    continue;
                }
                // divisibility: fold any offending row into the pivot row and retry
                let bad = (t + 1..self.a.rows)
                    .find(|&i| (t + 1..self.a.cols).any(|j| !self.a.get(i, j).is_multiple_of(&p)));
                match bad {
                    Some(i) => self.add_row(t, i, &T::one()),
                    None => break,
                }
            }
            if self.a.get(t, t).is_negative() {
                self.negate_row(t);
            }
        }
    }
}

pub fn smith_normal_form<T: IntRing>(a: &IntMatrix<T>) -> Snf<T> {
    let mut r = Reducer {
        a: a.clone(),
        u: Some(IntMatrix::identity(a.rows)),
        v: Some(IntMatrix::identity(a.cols)),
    };
    r.run();
    Snf {
        u: r.u.expect("tracked"),
        d: r.a,
        v: r.v.expect("tracked"),
    }
}

/// Diagonal of the Smith normal form without tracking the transforms.
pub fn invariant_factors<T: IntRing>(a: &IntMatrix<T>) -> Vec<T> {
    let mut r = Reducer {
        a: a.clone(),
        u: None,
        v: None,
    };
    r.run();
    r.a.diagonal()
}

/// `Z^free_rank ⊕ Z_{t_1} ⊕ ... ⊕ Z_{t_k}` with `t_i | t_{i+1}` and every `t_i ≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianInvariants {
    pub fn trivial() -> Self {
        AbelianInvariants {
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn new(free_rank: usize, torsion: &[u64]) -> Self {
        AbelianInvariants {
            free_rank,
            torsion: torsion.iter().map(|&t| BigInt::from(t)).collect(),
        }
    }

    /// `Z^r ⊕ Z_2^s`.
    pub fn tori_klein(r: usize, s: usize) -> Self {
        Self::new(r, &vec![2; s])
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// From the diagonal of a Smith form of an `rows x ngens` relation matrix.
    pub fn from_diagonal<T: IntRing>(diagonal: &[T], ngens: usize) -> Self {
        let nonzero: Vec<&T> = diagonal.iter().filter(|d| !d.is_zero()).collect();
        let torsion = nonzero
            .iter()
            .filter(|d| !d.abs().is_one())
            .map(|d| {
                BigInt::from_i128(d.abs().to_i128().expect("invariant fits i128")).expect("i128")
            })
            .collect();
        AbelianInvariants {
            free_rank: ngens - nonzero.len(),
            torsion,
        }
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        let mut i = 0;
        while i < self.torsion.len() {
            let t = &self.torsion[i];
            let run = self.torsion[i..].iter().take_while(|x| *x == t).count();
            parts.push(if run == 1 {
                format!("Z_{t}")
            } else {
                format!("Z_{t}^{run}")
            });
            i += run;
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl Serialize for AbelianInvariants {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            free_rank: usize,
            torsion: Vec<String>,
            group: String,
        }
        Repr {
            free_rank: self.free_rank,
            torsion: self.torsion.iter().map(|t| t.to_string()).collect(),
            group: self.to_string(),
        }
        .serialize(serializer)
    }
}

/// Exponent-sum matrix: one row per relator, one column per generator.
pub fn relation_matrix<T: IntRing>(p: &FPresentation) -> IntMatrix<T> {
    let mut m = IntMatrix::<T>::zeros(p.relators().len(), p.ngens());
    for (i, r) in p.relators().iter().enumerate() {
        for l in r.letters() {
            let cur = m.get(i, l.gen()).clone();
            let delta = if l.is_inverse() { -T::one() } else { T::one() };
            m.set(i, l.gen(), cur + delta);
        }
    }
    m
}

/// Abelianization computed over the integer type `T`.
pub fn abelianization_with<T: IntRing>(p: &FPresentation) -> AbelianInvariants {
    if p.relators().is_empty() {
        return AbelianInvariants {
            free_rank: p.ngens(),
            torsion: Vec::new(),
        };
    }
    let m = relation_matrix::<T>(p);
    AbelianInvariants::from_diagonal(&invariant_factors(&m), p.ngens())
}

/// Abelianization (first homology) of a finitely presented group.
pub fn abelianization(p: &FPresentation) -> AbelianInvariants {
    abelianization_with::<BigInt>(p)
}

/// Solves `M x = y` over the integers, where the columns of `M` span a lattice.
pub fn lattice_contains<T: IntRing>(generators: &IntMatrix<T>, y: &[T]) -> bool {
    assert_eq!(generators.rows(), y.len());
    let snf = smith_normal_form(generators);
    let uy: Vec<T> = (0..snf.u.rows())
        .map(|i| {
            (0..y.len()).fold(T::zero(), |acc, k| {
                acc + snf.u.get(i, k).clone() * y[k].clone()
            })
        })
        .collect();
    let diag = snf.d.diagonal();
    uy.iter().enumerate().all(|(i, val)| match diag.get(i) {
        Some(d) if !d.is_zero() => val.is_multiple_of(d),
        _ => val.is_zero(),
    })
}
