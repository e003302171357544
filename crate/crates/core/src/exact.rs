//! Exact linear algebra over the rationals.
//!
//! Every rank and kernel computation in the crate funnels through the
//! integer echelon routine in this module. Rows are cleared of denominators
//! and eliminated fraction-free; after each elimination step a row is divided
//! by the gcd of its entries so coefficients stay primitive.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint, Sign};
use rug::integer::Order;
use rug::{Assign, Integer as Gmp};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Dense row-major matrix of rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rat>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            entries: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut entries = Vec::with_capacity(nrows * ncols);
        for r in rows {
            if r.len() != ncols {
                return Err(Error::DimensionMismatch {
                    expected: ncols,
                    got: r.len(),
                });
            }
            entries.extend(r);
        }
        Ok(QMatrix {
            rows: nrows,
            cols: ncols,
            entries,
        })
    }

    /// Convenience constructor for integer matrices; panics on ragged input.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let v = rows
            .iter()
            .map(|r| r.iter().map(|&x| rat(x)).collect())
            .collect();
        Self::from_rows(v).expect("ragged integer matrix")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rat {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rat] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Rat> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> QMatrix {
        let mut t = QMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Result<Vec<Rat>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rat::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    pub fn mul(&self, other: &QMatrix) -> Result<QMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: other.rows,
            });
        }
        let mut out = QMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        let idx = r * out.cols + c;
                        out.entries[idx] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Concatenate blocks side by side; all blocks need the same row count.
    pub fn hstack(blocks: &[QMatrix]) -> Result<QMatrix> {
        let rows = blocks.first().map_or(0, |b| b.rows);
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = QMatrix::zeros(rows, cols);
        let mut off = 0;
        for b in blocks {
            if b.rows != rows {
                return Err(Error::DimensionMismatch {
                    expected: rows,
                    got: b.rows,
                });
            }
            for r in 0..rows {
                for c in 0..b.cols {
                    out.set(r, off + c, b.get(r, c).clone());
                }
            }
            off += b.cols;
        }
        Ok(out)
    }

    /// Columns as vectors. Used to hand images of basis vectors to the
    /// echelon routine.
    pub fn columns(&self) -> Vec<Vec<Rat>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn determinant(&self) -> Result<Rat> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                got: self.cols,
            });
        }
        let n = self.rows;
        let mut a: Vec<Vec<Rat>> = (0..n).map(|r| self.row(r).to_vec()).collect();
        let mut det = Rat::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
                return Ok(Rat::zero());
            };
            if p != c {
                a.swap(p, c);
                det = -det;
            }
            let piv = a[c][c].clone();
            det *= &piv;
            for r in c + 1..n {
                if a[r][c].is_zero() {
                    continue;
                }
                let f = &a[r][c] / &piv;
                for k in c..n {
                    let t = &f * &a[c][k];
                    a[r][k] -= t;
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<QMatrix> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                got: self.cols,
            });
        }
        let n = self.rows;
        let mut a: Vec<Vec<Rat>> = (0..n)
            .map(|r| {
                let mut row = self.row(r).to_vec();
                row.extend((0..n).map(|c| if c == r { Rat::one() } else { Rat::zero() }));
                row
            })
            .collect();
        for c in 0..n {
            let p = (c..n)
                .find(|&r| !a[r][c].is_zero())
                .ok_or(Error::SingularMatrix)?;
            a.swap(p, c);
            let piv = a[c][c].clone();
            for v in a[c].iter_mut() {
                *v /= &piv;
            }
            for r in 0..n {
                if r != c && !a[r][c].is_zero() {
                    let f = a[r][c].clone();
                    for k in 0..2 * n {
                        let t = &f * &a[c][k];
                        a[r][k] -= t;
                    }
                }
            }
        }
        QMatrix::from_rows(a.into_iter().map(|r| r[n..].to_vec()).collect())
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// A linear subspace of Q^n in reduced row echelon form.
///
/// Rows are kept as primitive integer vectors with positive pivot entries;
/// pivot columns are strictly increasing and zero in every other row. This
/// form is canonical, so two subspaces are equal iff their rows are. The
/// rational basis (pivots scaled to 1) is built on first use.
pub struct Subspace {
    ambient_dim: usize,
    rows: Vec<Vec<Gmp>>,
    pivots: Vec<usize>,
    basis: OnceLock<Vec<Vec<Rat>>>,
}

impl Clone for Subspace {
    fn clone(&self) -> Self {
        Subspace {
            ambient_dim: self.ambient_dim,
            rows: self.rows.clone(),
            pivots: self.pivots.clone(),
            basis: self.basis.clone(),
        }
    }
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_dim == other.ambient_dim
            && self.pivots == other.pivots
            && self.rows == other.rows
    }
}

impl Eq for Subspace {}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subspace")
            .field("ambient_dim", &self.ambient_dim)
            .field("pivots", &self.pivots)
            .field("rows", &self.rows)
            .finish()
    }
}

impl Subspace {
    fn from_parts(ambient_dim: usize, rows: Vec<Vec<Gmp>>, pivots: Vec<usize>) -> Self {
        Subspace {
            ambient_dim,
            rows,
            pivots,
            basis: OnceLock::new(),
        }
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Subspace::from_parts(ambient_dim, Vec::new(), Vec::new())
    }

    pub fn full(ambient_dim: usize) -> Self {
        let rows = (0..ambient_dim)
            .map(|i| {
                (0..ambient_dim)
                    .map(|j| Gmp::from(u8::from(i == j)))
                    .collect()
            })
            .collect();
        Subspace::from_parts(ambient_dim, rows, (0..ambient_dim).collect())
    }

    /// Span of arbitrary (possibly dependent) vectors.
    pub fn span(ambient_dim: usize, vectors: &[Vec<Rat>]) -> Result<Self> {
        for v in vectors {
            check_len(v, ambient_dim)?;
        }
        let rows = vectors.iter().map(|v| rat_row_to_gmp(v)).collect();
        Ok(Echelon::build(rows, ambient_dim).into_subspace())
    }

    pub fn span_int(ambient_dim: usize, rows: Vec<Vec<BigInt>>) -> Result<Self> {
        for v in &rows {
            if v.len() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: ambient_dim,
                    got: v.len(),
                });
            }
        }
        Ok(Echelon::build(int_rows_to_gmp(&rows), ambient_dim).into_subspace())
    }

    pub(crate) fn span_gmp(ambient_dim: usize, rows: Vec<Vec<Gmp>>) -> Self {
        debug_assert!(rows.iter().all(|r| r.len() == ambient_dim));
        Echelon::build(rows, ambient_dim).into_subspace()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Basis with every pivot entry equal to 1.
    pub fn basis(&self) -> &[Vec<Rat>] {
        self.basis.get_or_init(|| {
            self.rows
                .iter()
                .zip(&self.pivots)
                .map(|(r, &pc)| {
                    let p = from_gmp(&r[pc]);
                    r.iter()
                        .map(|x| {
                            if *x == 0 {
                                Rat::zero()
                            } else {
                                Rat::new(from_gmp(x), p.clone())
                            }
                        })
                        .collect()
                })
                .collect()
        })
    }

    /// Basis rows as primitive integer vectors.
    pub fn int_basis(&self) -> Vec<Vec<BigInt>> {
        self.rows.iter().map(|r| r.iter().map(from_gmp).collect()).collect()
    }

    pub(crate) fn gmp_rows(&self) -> &[Vec<Gmp>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn contains(&self, v: &[Rat]) -> Result<bool> {
        check_len(v, self.ambient_dim)?;
        let mut r = rat_row_to_gmp(v);
        self.residue_gmp(&mut r);
        Ok(r.iter().all(|x| x.cmp0().is_eq()))
    }

    /// Remainder of `v` after subtracting the basis rows at their pivots.
    /// Zero iff `v` lies in the subspace.
    pub fn reduce(&self, v: &[Rat]) -> Vec<Rat> {
        let mut r = v.to_vec();
        for (row, &p) in self.basis().iter().zip(&self.pivots) {
            if r[p].is_zero() {
                continue;
            }
            let f = r[p].clone();
            for (x, b) in r.iter_mut().zip(row) {
                if !b.is_zero() {
                    *x -= &f * b;
                }
            }
        }
        r
    }

    /// Replace `v` by a primitive integer multiple of its remainder.
    pub(crate) fn residue_gmp(&self, v: &mut [Gmp]) {
        let mut w = Scratch::default();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p] != 0 {
                eliminate_into(v, row, p, 0, &mut w);
            }
        }
    }

    pub(crate) fn contains_gmp(&self, v: &[Gmp]) -> bool {
        let mut r = v.to_vec();
        self.residue_gmp(&mut r);
        r.iter().all(|x| x.cmp0().is_eq())
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: other.ambient_dim,
                got: self.ambient_dim,
            });
        }
        Ok(self.rows.iter().all(|r| other.contains_gmp(r)))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                got: other.ambient_dim,
            });
        }
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Ok(Subspace::span_gmp(self.ambient_dim, rows))
    }

    /// Linear functionals vanishing on the subspace, one per non-pivot
    /// column `j`: `v -> v[j] - sum_r basis[r][j] * v[pivot_r]`.
    pub fn annihilator(&self) -> Vec<Vec<Rat>> {
        self.annihilator_gmp()
            .iter()
            .map(|f| {
                let j = self.free_column(f);
                let s = from_gmp(&f[j]);
                f.iter()
                    .map(|x| {
                        if *x == 0 {
                            Rat::zero()
                        } else {
                            Rat::new(from_gmp(x), s.clone())
                        }
                    })
                    .collect()
            })
            .collect()
    }

    fn free_column(&self, f: &[Gmp]) -> usize {
        (0..self.ambient_dim)
            .find(|j| f[*j] != 0 && self.pivots.binary_search(j).is_err())
            .expect("annihilator row has a free entry")
    }

    /// Integer multiples of the rows of [`Subspace::annihilator`].
    pub(crate) fn annihilator_gmp(&self) -> Vec<Vec<Gmp>> {
        let n = self.ambient_dim;
        let mut is_pivot = vec![false; n];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let mut l = Gmp::new();
        let mut q = Gmp::new();
        (0..n)
            .filter(|&j| !is_pivot[j])
            .map(|j| {
                l.assign(1);
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    if row[j] != 0 {
                        l.lcm_mut(&row[p]);
                    }
                }
                let mut f = vec![Gmp::new(); n];
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    if row[j] != 0 {
                        q.assign(l.div_exact_ref(&row[p]));
                        f[p].assign(&row[j] * &q);
                        f[p] = -std::mem::take(&mut f[p]);
                    }
                }
                f[j].assign(&l);
                f
            })
            .collect()
    }
}

fn check_len(v: &[Rat], n: usize) -> Result<()> {
    if v.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: v.len(),
        });
    }
    Ok(())
}

/// Scale a rational vector to a primitive integer vector with the same span.
pub fn clear_denominators(v: &[Rat]) -> Vec<BigInt> {
    let l = v
        .iter()
        .filter(|x| !x.is_zero())
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut out: Vec<BigInt> = v
        .iter()
        .map(|x| {
            if x.is_zero() {
                BigInt::zero()
            } else {
                x.numer() * (&l / x.denom())
            }
        })
        .collect();
    make_primitive(&mut out);
    out
}

fn make_primitive(row: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for x in row.iter() {
        if !x.is_zero() {
            g = g.gcd(x);
            if g.is_one() {
                return;
            }
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for x in row.iter_mut() {
        if !x.is_zero() {
            *x /= &g;
        }
    }
}

/// Integer vector spanning the same line as `v`, not necessarily primitive.
fn rat_row_to_gmp(v: &[Rat]) -> Vec<Gmp> {
    if v.iter().all(|x| x.denom().is_one()) {
        return v.iter().map(|x| to_gmp(x.numer())).collect();
    }
    clear_denominators(v).iter().map(to_gmp).collect()
}

fn int_rows_to_gmp(rows: &[Vec<BigInt>]) -> Vec<Vec<Gmp>> {
    rows.iter().map(|r| r.iter().map(to_gmp).collect()).collect()
}

pub(crate) fn to_gmp(x: &BigInt) -> Gmp {
    let (sign, digits) = x.to_u64_digits();
    let v = Gmp::from_digits(&digits, Order::Lsf);
    if sign == Sign::Minus {
        -v
    } else {
        v
    }
}

pub(crate) fn from_gmp(x: &Gmp) -> BigInt {
    let mag = BigInt::from_biguint(Sign::Plus, BigUint::new(x.to_digits::<u32>(Order::Lsf)));
    if *x < 0 {
        -mag
    } else {
        mag
    }
}

fn leading(row: &[Gmp]) -> Option<usize> {
    row.iter().position(|x| !x.cmp0().is_eq())
}

fn gmp_primitive(row: &mut [Gmp], g: &mut Gmp) {
    // gcd seeded with the smallest entry
    let Some(small) = row
        .iter()
        .filter(|x| !x.cmp0().is_eq())
        .min_by_key(|x| x.significant_bits())
    else {
        return;
    };
    g.assign(small.abs_ref());
    for x in row.iter() {
        if *g == 1 {
            return;
        }
        if !x.cmp0().is_eq() {
            g.gcd_mut(x);
        }
    }
    if *g == 1 {
        return;
    }
    for x in row.iter_mut() {
        if !x.cmp0().is_eq() {
            x.div_exact_mut(g);
        }
    }
}

/// Scratch space for row operations.
#[derive(Default)]
struct Scratch {
    g: Gmp,
    a: Gmp,
    b: Gmp,
}

/// `r <- a*r - b*p` on columns `from..`, choosing `a, b` so that column
/// `at` cancels, then divide out the content. Entries of `r` before `from`
/// must be zero.
fn eliminate_into(r: &mut [Gmp], p: &[Gmp], at: usize, from: usize, w: &mut Scratch) {
    w.g.assign(p[at].gcd_ref(&r[at]));
    w.a.assign(p[at].div_exact_ref(&w.g));
    w.b.assign(r[at].div_exact_ref(&w.g));
    if w.a < 0 {
        w.a = -std::mem::take(&mut w.a);
        w.b = -std::mem::take(&mut w.b);
    }
    let scale = w.a != 1;
    for (rk, pk) in r[from..].iter_mut().zip(&p[from..]) {
        if scale && !rk.cmp0().is_eq() {
            *rk *= &w.a;
        }
        if !pk.cmp0().is_eq() {
            *rk -= &w.b * pk;
        }
    }
    gmp_primitive(r, &mut w.g);
}

/// Gmp row echelon form, rows primitive, pivots strictly increasing.
struct Echelon {
    ncols: usize,
    rows: Vec<Vec<Gmp>>,
    pivots: Vec<usize>,
}

impl Echelon {
    /// Column-by-column elimination. At each column the pivot is the
    /// candidate row with the smallest pivot entry, then fewest nonzeros.
    fn build(rows: Vec<Vec<Gmp>>, ncols: usize) -> Echelon {
        let mut w = Scratch::default();
        let mut active: Vec<Vec<Gmp>> = rows.into_iter().filter(|r| leading(r).is_some()).collect();
        for r in active.iter_mut() {
            gmp_primitive(r, &mut w.g);
        }
        let mut done_rows = Vec::new();
        let mut pivots = Vec::new();
        let mut col = 0;
        while !active.is_empty() && col < ncols {
            let mut best: Option<(usize, u32, usize)> = None;
            for (i, r) in active.iter().enumerate() {
                if r[col].cmp0().is_eq() {
                    continue;
                }
                let bits = r[col].significant_bits();
                let nnz = r[col..].iter().filter(|x| !x.cmp0().is_eq()).count();
                if best.is_none_or(|(_, b, n)| (bits, nnz) < (b, n)) {
                    best = Some((i, bits, nnz));
                }
            }
            let Some((pi, _, _)) = best else {
                col += 1;
                continue;
            };
            let mut prow = active.swap_remove(pi);
            if prow[col] < 0 {
                for x in prow.iter_mut() {
                    *x = -std::mem::take(x);
                }
            }
            for r in active.iter_mut() {
                if !r[col].cmp0().is_eq() {
                    eliminate_into(r, &prow, col, col, &mut w);
                }
            }
            active.retain(|r| leading(r).is_some());
            done_rows.push(prow);
            pivots.push(col);
            col += 1;
        }
        Echelon {
            ncols,
            rows: done_rows,
            pivots,
        }
    }

    fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Back-substitute to reduced form.
    fn into_subspace(mut self) -> Subspace {
        let mut w = Scratch::default();
        let n = self.rows.len();
        for i in (0..n).rev() {
            let pc = self.pivots[i];
            let (upper, lower) = self.rows.split_at_mut(i);
            let prow = &lower[0];
            for (r, &rc) in upper.iter_mut().zip(&self.pivots) {
                if !r[pc].cmp0().is_eq() {
                    eliminate_into(r, prow, pc, rc, &mut w);
                }
            }
        }
        Subspace::from_parts(self.ncols, self.rows, self.pivots)
    }
}

pub fn rank(m: &QMatrix) -> usize {
    let rows = (0..m.rows()).map(|r| rat_row_to_gmp(m.row(r))).collect();
    Echelon::build(rows, m.cols()).rank()
}

/// Rank of a family of integer vectors of common length `ncols`.
pub fn rank_int(rows: Vec<Vec<BigInt>>, ncols: usize) -> usize {
    Echelon::build(int_rows_to_gmp(&rows), ncols).rank()
}

pub(crate) fn rank_gmp(rows: Vec<Vec<Gmp>>, ncols: usize) -> usize {
    Echelon::build(rows, ncols).rank()
}

/// Canonical basis of `{v : M v = 0}`.
pub fn kernel_basis(m: &QMatrix) -> Subspace {
    let rows = (0..m.rows()).map(|r| rat_row_to_gmp(m.row(r))).collect();
    kernel_gmp(rows, m.cols())
}

/// Canonical basis of the common null space of integer rows of length `ncols`.
pub(crate) fn kernel_gmp(rows: Vec<Vec<Gmp>>, ncols: usize) -> Subspace {
    kernel_from_rref(&Echelon::build(rows, ncols).into_subspace())
}

/// Null space of the row space described by `rref`.
pub fn kernel_from_rref(rref: &Subspace) -> Subspace {
    Subspace::span_gmp(rref.ambient_dim(), rref.annihilator_gmp())
}

pub fn membership(v: &[Rat], w: &Subspace) -> Result<bool> {
    w.contains(v)
}

/// Kernel dimension of the map `dom_sub/dom_quot_by -> cod_sub/cod_quot_by`
/// induced by `m`.
pub fn induced_kernel_dim(
    m: &QMatrix,
    dom_sub: &Subspace,
    dom_quot_by: &Subspace,
    cod_sub: &Subspace,
    cod_quot_by: &Subspace,
) -> Result<usize> {
    if dom_sub.ambient_dim() != m.cols() || dom_quot_by.ambient_dim() != m.cols() {
        return Err(Error::DimensionMismatch {
            expected: m.cols(),
            got: dom_sub.ambient_dim(),
        });
    }
    if cod_sub.ambient_dim() != m.rows() || cod_quot_by.ambient_dim() != m.rows() {
        return Err(Error::DimensionMismatch {
            expected: m.rows(),
            got: cod_sub.ambient_dim(),
        });
    }
    if !dom_quot_by.is_subspace_of(dom_sub)? {
        return Err(Error::Containment("domain quotient is not inside the domain".into()));
    }
    if !cod_quot_by.is_subspace_of(cod_sub)? {
        return Err(Error::Containment(
            "codomain quotient is not inside the codomain".into(),
        ));
    }
    let images: Vec<Vec<Rat>> = dom_sub
        .basis()
        .iter()
        .map(|b| m.mul_vec(b))
        .collect::<Result<_>>()?;
    for v in &images {
        if !cod_sub.contains(v)? {
            return Err(Error::Containment("map does not send domain into codomain".into()));
        }
    }
    for b in dom_quot_by.basis() {
        if !cod_quot_by.contains(&m.mul_vec(b)?)? {
            return Err(Error::Containment(
                "map does not send the domain quotient into the codomain quotient".into(),
            ));
        }
    }
    let mut vs = cod_quot_by.basis().to_vec();
    vs.extend(images);
    let joint = Subspace::span(m.rows(), &vs)?.dim();
    let image_rank = joint - cod_quot_by.dim();
    let lifted_kernel = dom_sub.dim() - image_rank;
    Ok(lifted_kernel - dom_quot_by.dim())
}
