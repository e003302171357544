//! Line arrangements: intersection lattice, characteristic polynomial,
//! Ziegler restrictions and the freeness criteria built on them.

use std::collections::HashMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{rank, QMatrix, Rat};
use crate::jacobian::{classify, CurveInput, JacobianProfile};
use crate::poly::{cross, mult_map, restrict_to_line, BinForm, HomPoly, LinForm};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    lines: Vec<LinForm>,
}

impl Arrangement {
    pub fn new(lines: Vec<LinForm>) -> Result<Self> {
        if lines.is_empty() {
            return Err(Error::OutOfRange("an arrangement needs at least one line".into()));
        }
        for i in 0..lines.len() {
            for j in i + 1..lines.len() {
                if lines[i].is_proportional(&lines[j]) {
                    return Err(Error::ProportionalLines(i, j));
                }
            }
        }
        Ok(Arrangement { lines })
    }

    pub fn from_ints(rows: &[(i64, i64, i64)]) -> Result<Self> {
        let lines = rows
            .iter()
            .map(|&(a, b, c)| LinForm::from_ints(a, b, c))
            .collect::<Result<_>>()?;
        Self::new(lines)
    }

    pub fn lines(&self) -> &[LinForm] {
        &self.lines
    }

    pub fn n(&self) -> usize {
        self.lines.len()
    }

    /// Q(A), the product of the defining forms.
    pub fn polynomial(&self) -> HomPoly {
        self.lines
            .iter()
            .fold(HomPoly::constant(Rat::one()), |acc, l| &acc * &l.to_poly())
    }

    pub fn with_line(&self, l: LinForm) -> Result<Arrangement> {
        let mut lines = self.lines.clone();
        lines.push(l);
        Arrangement::new(lines)
    }

    /// A minus its `h`-th line.
    pub fn deletion(&self, h: usize) -> Result<Arrangement> {
        self.check_index(h)?;
        let mut lines = self.lines.clone();
        lines.remove(h);
        Arrangement::new(lines)
    }

    fn check_index(&self, h: usize) -> Result<()> {
        if h >= self.n() {
            return Err(Error::OutOfRange(format!(
                "line index {h} out of range for {} lines",
                self.n()
            )));
        }
        Ok(())
    }
}

/// Scale so that the first nonzero coordinate is 1.
pub fn canonical_point(p: &[Rat; 3]) -> [Rat; 3] {
    let lead = p
        .iter()
        .find(|c| !c.is_zero())
        .expect("projective point is nonzero")
        .clone();
    [&p[0] / &lead, &p[1] / &lead, &p[2] / &lead]
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flat {
    pub point: [Rat; 3],
    pub incident: Vec<usize>,
}

impl Flat {
    pub fn mult(&self) -> usize {
        self.incident.len()
    }
}

/// Intersection points with their incident lines, in order of discovery.
pub fn lattice(a: &Arrangement) -> Vec<Flat> {
    let n = a.n();
    let mut flats: Vec<Flat> = Vec::new();
    let mut index: HashMap<[Rat; 3], usize> = HashMap::new();
    for i in 0..n {
        for j in i + 1..n {
            let p = canonical_point(&cross(a.lines[i].coeffs(), a.lines[j].coeffs()));
            let k = *index.entry(p.clone()).or_insert_with(|| {
                flats.push(Flat {
                    point: p,
                    incident: Vec::new(),
                });
                flats.len() - 1
            });
            for l in [i, j] {
                if !flats[k].incident.contains(&l) {
                    flats[k].incident.push(l);
                }
            }
        }
    }
    for f in flats.iter_mut() {
        f.incident.sort_unstable();
    }
    flats
}

/// χ(A; t) = t^2 - b1 t + b2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CharPoly {
    pub b1: i64,
    pub b2: i64,
}

impl CharPoly {
    pub fn eval(&self, t: i64) -> i64 {
        t * t - self.b1 * t + self.b2
    }

    /// Roots `a <= b` of χ(t) - 1 when they are integers.
    pub fn nearly_free_roots(&self) -> Option<(i64, i64)> {
        integer_roots(self.b1, self.b2 - 1)
    }

    /// Roots of χ itself when they are integers.
    pub fn free_roots(&self) -> Option<(i64, i64)> {
        integer_roots(self.b1, self.b2)
    }

    pub fn is_perfect_square(&self) -> bool {
        self.b1 * self.b1 == 4 * self.b2
    }
}

impl std::fmt::Display for CharPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "t^2 - {}t + {}", self.b1, self.b2)
    }
}

/// Integer roots `a <= b` of `t^2 - s t + p`.
pub fn integer_roots(s: i64, p: i64) -> Option<(i64, i64)> {
    let disc = s * s - 4 * p;
    if disc < 0 {
        return None;
    }
    let r = disc.isqrt();
    if r * r != disc || (s - r) % 2 != 0 {
        return None;
    }
    Some(((s - r) / 2, (s + r) / 2))
}

pub fn tau_lattice(a: &Arrangement) -> u64 {
    lattice(a)
        .iter()
        .map(|f| ((f.mult() - 1) * (f.mult() - 1)) as u64)
        .sum()
}

pub fn char_poly(a: &Arrangement) -> Result<CharPoly> {
    let n = a.n() as i64;
    let flats = lattice(a);
    let pairs: usize = flats.iter().map(|f| f.mult() * (f.mult() - 1) / 2).sum();
    if pairs as i64 != n * (n - 1) / 2 {
        return Err(Error::Invariant(format!(
            "lattice accounts for {pairs} pairs of lines, expected {}",
            n * (n - 1) / 2
        )));
    }
    let b1 = n - 1;
    let b2 = flats.iter().map(|f| f.mult() as i64 - 1).sum::<i64>() - (n - 1);
    let via_tau = (n - 1) * (n - 1) - tau_lattice(a) as i64;
    if b2 != via_tau {
        return Err(Error::Invariant(format!(
            "b2 = {b2} but (n-1)^2 - tau = {via_tau}"
        )));
    }
    Ok(CharPoly { b1, b2 })
}

/// A multiarrangement of points on P^1: pairwise non-proportional linear
/// binary forms with positive multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multi2D {
    forms: Vec<BinForm>,
    mults: Vec<u32>,
}

impl Multi2D {
    pub fn new(forms: Vec<BinForm>, mults: Vec<u32>) -> Result<Self> {
        if forms.len() != mults.len() {
            return Err(Error::DimensionMismatch {
                expected: forms.len(),
                got: mults.len(),
            });
        }
        for f in &forms {
            if f.degree() != 1 || f.is_zero() {
                return Err(Error::OutOfRange("multiarrangement forms must be linear".into()));
            }
        }
        if mults.contains(&0) {
            return Err(Error::OutOfRange("multiplicities must be positive".into()));
        }
        let normed: Vec<BinForm> = forms.iter().map(BinForm::normalized).collect();
        for i in 0..normed.len() {
            for j in i + 1..normed.len() {
                if normed[i] == normed[j] {
                    return Err(Error::ProportionalLines(i, j));
                }
            }
        }
        Ok(Multi2D {
            forms: normed,
            mults,
        })
    }

    /// Points given by `(a, b)` meaning the form `a s + b t`.
    pub fn from_ints(points: &[((i64, i64), u32)]) -> Result<Self> {
        let forms = points
            .iter()
            .map(|&((a, b), _)| BinForm::linear(Rat::from_integer(a.into()), Rat::from_integer(b.into())))
            .collect();
        Self::new(forms, points.iter().map(|p| p.1).collect())
    }

    /// Group linear forms into proportionality classes, counting repeats.
    pub fn from_forms(forms: &[BinForm]) -> Result<Self> {
        let mut classes: Vec<BinForm> = Vec::new();
        let mut mults: Vec<u32> = Vec::new();
        for f in forms {
            let g = f.normalized();
            match classes.iter().position(|c| *c == g) {
                Some(i) => mults[i] += 1,
                None => {
                    classes.push(g);
                    mults.push(1);
                }
            }
        }
        Self::new(classes, mults)
    }

    /// The multiarrangement cut out on P^1 by a binary form that splits
    /// into rational linear factors.
    pub fn from_binary_form(g: &BinForm) -> Result<Self> {
        let factors = g.linear_factors().ok_or_else(|| {
            Error::OutOfRange("restriction does not split into rational linear factors".into())
        })?;
        let (forms, mults) = factors.into_iter().unzip();
        Self::new(forms, mults)
    }

    pub fn forms(&self) -> &[BinForm] {
        &self.forms
    }

    pub fn mults(&self) -> &[u32] {
        &self.mults
    }

    pub fn total(&self) -> u32 {
        self.mults.iter().sum()
    }

    pub fn num_points(&self) -> usize {
        self.forms.len()
    }

    /// Multiplicity increased by one at point `i`.
    pub fn bumped(&self, i: usize) -> Multi2D {
        let mut m = self.clone();
        m.mults[i] += 1;
        m
    }
}

/// Ziegler restriction of A onto its `h`-th line.
pub fn ziegler_restriction(a: &Arrangement, h: usize) -> Result<Multi2D> {
    a.check_index(h)?;
    let [p, q] = a.lines[h].canonical_points();
    let forms: Vec<BinForm> = a
        .lines
        .iter()
        .enumerate()
        .filter(|(j, _)| *j != h)
        .map(|(_, l)| BinForm::linear(l.eval(&p), l.eval(&q)))
        .collect();
    Multi2D::from_forms(&forms)
}

/// Ziegler restriction of a curve onto a line component `h`: the points
/// of `(f / alpha_H)|_H` with multiplicity.
pub fn curve_ziegler_restriction(f: &HomPoly, h: &LinForm) -> Result<Multi2D> {
    if !restrict_to_line(f, h).is_zero() {
        return Err(Error::OutOfRange(format!("{h} is not a component of the curve")));
    }
    let g = divide_by_linear(f, h)?;
    Multi2D::from_binary_form(&restrict_to_line(&g, h))
}

/// Exact quotient `f / l`.
fn divide_by_linear(f: &HomPoly, l: &LinForm) -> Result<HomPoly> {
    let d = f.degree();
    if d < 1 {
        return Err(Error::OutOfRange("cannot divide a constant by a line".into()));
    }
    let m = mult_map(&l.to_poly(), d as i64 - 1);
    let target = f.to_vector();
    let sol = solve(&m, &target)?;
    if m.mul_vec(&sol)? != target {
        return Err(Error::OutOfRange(format!("{l} does not divide the curve")));
    }
    HomPoly::from_vector(d as u32 - 1, &sol)
}

/// One solution of `m x = b` for a consistent system.
fn solve(m: &QMatrix, b: &[Rat]) -> Result<Vec<Rat>> {
    let mut rows: Vec<Vec<Rat>> = (0..m.rows())
        .map(|r| {
            let mut v = m.row(r).to_vec();
            v.push(b[r].clone());
            v
        })
        .collect();
    let ncols = m.cols();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Rat::one() / &rows[r][c];
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for k in c..=ncols {
                    let v = &rows[r][k] * &f;
                    rows[i][k] -= v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let mut x = vec![Rat::zero(); ncols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = rows[i][ncols].clone();
    }
    Ok(x)
}

/// dim D(M)_k: pairs `(a, b)` of degree-k binary forms with
/// `alpha_X^m(X) | a p_X + b q_X` for every point `X : p_X s + q_X t`.
pub fn multi_der_dim(m: &Multi2D, k: i64) -> usize {
    if k < 0 {
        return 0;
    }
    let k = k as usize;
    let unknowns = 2 * (k + 1);
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for (form, &mult) in m.forms.iter().zip(&m.mults) {
        let (p, q) = (&form.coeffs()[0], &form.coeffs()[1]);
        // (s, t) = u (q, -p) + v w with alpha_X(w) != 0, so alpha_X is a
        // multiple of v
        let w = if !p.is_zero() {
            (Rat::one(), Rat::zero())
        } else {
            (Rat::zero(), Rat::one())
        };
        let s_sub = BinForm::linear(q.clone(), w.0.clone());
        let t_sub = BinForm::linear(-p.clone(), w.1.clone());
        let images: Vec<BinForm> = (0..=k)
            .map(|i| s_sub.pow(k - i).mul(&t_sub.pow(i)))
            .collect();
        let n_cons = (mult as usize).min(k + 1);
        for c in 0..n_cons {
            let mut row = vec![Rat::zero(); unknowns];
            for (j, img) in images.iter().enumerate() {
                let v = &img.coeffs()[c];
                if v.is_zero() {
                    continue;
                }
                row[j] = v * p;
                row[k + 1 + j] = v * q;
            }
            rows.push(row);
        }
    }
    if rows.is_empty() {
        return unknowns;
    }
    let mat = QMatrix::from_rows(rows).expect("rectangular");
    unknowns - rank(&mat)
}

/// Exponents `(e1, e2)` of the free module D(M).
pub fn multi_exponents(m: &Multi2D) -> Result<(u32, u32)> {
    let total = m.total();
    if total == 0 {
        return Err(Error::OutOfRange("empty multiarrangement".into()));
    }
    let e1 = (0..=total as i64)
        .find(|&k| multi_der_dim(m, k) > 0)
        .ok_or_else(|| Error::Invariant("no derivations up to the total multiplicity".into()))?;
    let e1u = e1 as u32;
    let (e1u, e2u) = if multi_der_dim(m, e1) >= 2 {
        (e1u, e1u)
    } else {
        (e1u, total - e1u)
    };
    if e1u + e2u != total || e1u > e2u {
        return Err(Error::Invariant(format!(
            "exponents ({e1u},{e2u}) of a multiarrangement with total multiplicity {total}"
        )));
    }
    for k in 0..=e2u as i64 + 1 {
        let want = (k - e1u as i64 + 1).max(0) + (k - e2u as i64 + 1).max(0);
        let got = multi_der_dim(m, k) as i64;
        if got != want {
            return Err(Error::Invariant(format!(
                "dim D_{k} = {got}, exponents ({e1u},{e2u}) predict {want}"
            )));
        }
    }
    Ok((e1u, e2u))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Yoshinaga {
    pub exponents: (u32, u32),
    pub diff: i64,
    pub free: bool,
}

/// Yoshinaga's test at H given b2 = χ(A; 0).
pub fn yoshinaga_from(m: &Multi2D, b2: i64) -> Result<Yoshinaga> {
    let (e1, e2) = multi_exponents(m)?;
    let diff = b2 - e1 as i64 * e2 as i64;
    if diff < 0 {
        return Err(Error::Invariant(format!(
            "b2 = {b2} below the Ziegler product {}",
            e1 * e2
        )));
    }
    Ok(Yoshinaga {
        exponents: (e1, e2),
        diff,
        free: diff == 0,
    })
}

pub fn yoshinaga_test(a: &Arrangement, h: usize) -> Result<Yoshinaga> {
    yoshinaga_from(&ziegler_restriction(a, h)?, char_poly(a)?.b2)
}

pub fn nearfree_test(a: &Arrangement, h: usize) -> Result<bool> {
    Ok(yoshinaga_test(a, h)?.diff == 1)
}

/// |A^H|, the number of intersection points on the `h`-th line.
pub fn restriction_count(a: &Arrangement, h: usize) -> Result<usize> {
    Ok(ziegler_restriction(a, h)?.num_points())
}

/// Free/nearly free status used by the addition-deletion ledgers. A
/// pencil is free with exponents (0, d-1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Status {
    pub nu: u64,
    pub exponents: Option<(u32, u32)>,
}

impl Status {
    pub fn of(p: &JacobianProfile) -> Self {
        Status {
            nu: p.nu,
            exponents: p.exponents,
        }
    }

    pub fn free_with(&self, e: (u32, u32)) -> bool {
        self.nu == 0 && self.exponents == Some(e)
    }

    pub fn nearly_free_with(&self, e: (u32, u32)) -> bool {
        self.nu == 1 && self.exponents == Some(e)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremRecord {
    pub theorem: String,
    pub parameters: Option<(u32, u32)>,
    pub hypotheses_hold: bool,
    pub conclusion_holds: bool,
    pub implication_respected: bool,
}

impl TheoremRecord {
    fn implication(name: &str, params: Option<(u32, u32)>, hyp: bool, concl: bool) -> Self {
        TheoremRecord {
            theorem: name.to_string(),
            parameters: params,
            hypotheses_hold: hyp,
            conclusion_holds: concl,
            implication_respected: !hyp || concl,
        }
    }

    /// "Two of the three conditions imply the third."
    fn two_of_three(name: &str, params: (u32, u32), c: [bool; 3]) -> Self {
        let count = c.iter().filter(|&&b| b).count();
        TheoremRecord {
            theorem: name.to_string(),
            parameters: Some(params),
            hypotheses_hold: count >= 2,
            conclusion_holds: count == 3,
            implication_respected: count < 2 || count == 3,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AdditionReport {
    pub h_index: usize,
    pub restriction_count: usize,
    pub a: Status,
    pub b: Status,
    pub records: Vec<TheoremRecord>,
}

impl AdditionReport {
    pub fn all_respected(&self) -> bool {
        self.records.iter().all(|r| r.implication_respected)
    }
}

/// Evaluate the addition-deletion theorems for `A` and `B = A \ {H}`.
pub fn addition_deletion(a: &Arrangement, h: usize, seed: u64) -> Result<AdditionReport> {
    if a.n() < 2 {
        return Err(Error::OutOfRange("deletion needs at least two lines".into()));
    }
    let b = a.deletion(h)?;
    let pa = classify(&CurveInput::new(a.polynomial(), seed)?)?;
    let pb = classify(&CurveInput::new(b.polynomial(), seed)?)?;
    addition_deletion_with(a, h, &pa, &pb)
}

/// As [`addition_deletion`] with precomputed profiles of A and B.
pub fn addition_deletion_with(
    a: &Arrangement,
    h: usize,
    pa: &JacobianProfile,
    pb: &JacobianProfile,
) -> Result<AdditionReport> {
    let cnt = restriction_count(a, h)? as i64;
    let sa = Status::of(pa);
    let sb = Status::of(pb);
    let mut records = Vec::new();

    // addition2 (1): B free (d1, d2) and |A^H| = d2 + 2  =>  A nearly free
    match (sb.nu, sb.exponents) {
        (0, Some((d1, d2))) => records.push(TheoremRecord::implication(
            "addition2_1",
            Some((d1, d2)),
            cnt == d2 as i64 + 2,
            sa.nu == 1,
        )),
        _ => records.push(TheoremRecord::implication("addition2_1", None, false, sa.nu == 1)),
    }
    // addition2 (2): A free (d1, d2) and |A^H| = d1  =>  B nearly free
    match (sa.nu, sa.exponents) {
        (0, Some((d1, d2))) => records.push(TheoremRecord::implication(
            "addition2_2",
            Some((d1, d2)),
            cnt == d1 as i64,
            sb.nu == 1,
        )),
        _ => records.push(TheoremRecord::implication("addition2_2", None, false, sb.nu == 1)),
    }
    // sing: χ(A;t) = (t-a)(t-b) + 1 with |A^H| = b + 1, or |A^H| = a + 1
    // and b != a + 2  =>  A nearly free
    let cp = char_poly(a)?;
    records.push(sing_record(&cp, cnt, sa.nu == 1));

    // addition3: (1) A nearly free (d1+1, d2+1), (2) B free (d1, d2),
    // (3) |A^H| = d2 + 2
    let mut cands = Vec::new();
    if let (0, Some(e)) = (sb.nu, sb.exponents) {
        cands.push(e);
    }
    if let (1, Some((e1, e2))) = (sa.nu, sa.exponents) {
        if e1 >= 1 {
            cands.push((e1 - 1, e2 - 1));
        }
    }
    cands.dedup();
    for (d1, d2) in cands {
        records.push(TheoremRecord::two_of_three(
            "addition3",
            (d1, d2),
            [
                sa.nearly_free_with((d1 + 1, d2 + 1)),
                sb.free_with((d1, d2)),
                cnt == d2 as i64 + 2,
            ],
        ));
    }
    // addition4: (1) A free (d1, d2), (2) B nearly free (d1, d2),
    // (3) |A^H| = d1
    let mut cands = Vec::new();
    if let (0, Some(e)) = (sa.nu, sa.exponents) {
        cands.push(e);
    }
    if let (1, Some(e)) = (sb.nu, sb.exponents) {
        cands.push(e);
    }
    cands.dedup();
    for (d1, d2) in cands {
        records.push(TheoremRecord::two_of_three(
            "addition4",
            (d1, d2),
            [
                sa.free_with((d1, d2)),
                sb.nearly_free_with((d1, d2)),
                cnt == d1 as i64,
            ],
        ));
    }
    Ok(AdditionReport {
        h_index: h,
        restriction_count: cnt as usize,
        a: sa,
        b: sb,
        records,
    })
}

/// Near-freeness from a root of chi - 1 at a line with `cnt` intersection points.
pub fn sing_record(cp: &CharPoly, cnt: i64, nearly_free: bool) -> TheoremRecord {
    // a, b are the roots of t^2 - b1 t + (b2 - 1); the hypotheses force
    // the relevant root to be the integer cnt - 1
    let r = cnt - 1;
    let is_root = r * r - cp.b1 * r + cp.b2 - 1 == 0;
    let hyp_b = is_root && 2 * r >= cp.b1;
    let hyp_a = is_root && 2 * r <= cp.b1 && cp.b1 - r != r + 2;
    let params = cp
        .nearly_free_roots()
        .map(|(a, b)| (a.max(0) as u32, b.max(0) as u32));
    TheoremRecord::implication("sing", params, hyp_b || hyp_a, nearly_free)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Free,
    NearlyFree,
    Neither,
    Indeterminate,
}

impl Verdict {
    fn from_diff(diff: i64) -> Self {
        match diff {
            0 => Verdict::Free,
            1 => Verdict::NearlyFree,
            _ => Verdict::Neither,
        }
    }

    fn agrees_with(&self, nu: u64) -> bool {
        match self {
            Verdict::Free => nu == 0,
            Verdict::NearlyFree => nu == 1,
            Verdict::Neither => nu >= 2,
            Verdict::Indeterminate => true,
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Free => "free",
            Verdict::NearlyFree => "nearly_free",
            Verdict::Neither => "neither",
            Verdict::Indeterminate => "indeterminate",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Theorem456 {
    pub applicable: bool,
    #[serde(rename = "witness_H")]
    pub witness_h: Option<usize>,
    pub verdict: Verdict,
    pub exponents: Option<(u32, u32)>,
    pub chi_perfect_square: bool,
}

/// Decide freeness from χ(A; t) and one Ziegler restriction, for a line H
/// with at most 4 points none of multiplicity >= n/2.
pub fn theorem456_decide(a: &Arrangement, nu: u64) -> Result<Theorem456> {
    let n = a.n();
    let cp = char_poly(a)?;
    let flats = lattice(a);
    let mut first_applicable = None;
    for h in 0..n {
        let on_h: Vec<&Flat> = flats.iter().filter(|f| f.incident.contains(&h)).collect();
        let max_mult = on_h.iter().map(|f| f.mult()).max().unwrap_or(0);
        if on_h.len() > 4 || 2 * max_mult >= n {
            continue;
        }
        first_applicable.get_or_insert(h);
        let y = yoshinaga_from(&ziegler_restriction(a, h)?, cp.b2)?;
        let (e1, e2) = y.exponents;
        let verdict = match e2 - e1 {
            0 | 1 => Verdict::from_diff(y.diff),
            // (d-1, d+1) against a generic (d, d)
            2 => match y.diff {
                0 => Verdict::Free,
                1 | 2 => Verdict::NearlyFree,
                _ => Verdict::Neither,
            },
            gap => {
                return Err(Error::Invariant(format!(
                    "Ziegler exponents ({e1},{e2}) at line {h} have gap {gap} > 2"
                )))
            }
        };
        if !verdict.agrees_with(nu) {
            return Err(Error::Invariant(format!(
                "restriction verdict {verdict} at line {h} disagrees with nu = {nu}"
            )));
        }
        return Ok(Theorem456 {
            applicable: true,
            witness_h: Some(h),
            verdict,
            exponents: Some(y.exponents),
            chi_perfect_square: cp.is_perfect_square(),
        });
    }
    Ok(Theorem456 {
        applicable: first_applicable.is_some(),
        witness_h: first_applicable,
        verdict: Verdict::Indeterminate,
        exponents: None,
        chi_perfect_square: cp.is_perfect_square(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Balanced {
    pub h_index: usize,
    pub balanced: bool,
    pub verdict_if_unbalanced: Option<Verdict>,
    pub exponents: Option<(u32, u32)>,
}

/// The unbalanced-multiplicity shortcut at line `h`.
pub fn balanced_check(a: &Arrangement, h: usize, nu: u64) -> Result<Balanced> {
    let m = ziegler_restriction(a, h)?;
    let total = m.total();
    let heavy = m.mults().iter().copied().filter(|&x| 2 * x >= total).max();
    let Some(big) = heavy else {
        return Ok(Balanced {
            h_index: h,
            balanced: true,
            verdict_if_unbalanced: None,
            exponents: None,
        });
    };
    let e = (total - big, big);
    let e = (e.0.min(e.1), e.0.max(e.1));
    let computed = multi_exponents(&m)?;
    if computed != e {
        return Err(Error::Invariant(format!(
            "unbalanced restriction at line {h}: exponents {computed:?}, expected {e:?}"
        )));
    }
    let b2 = char_poly(a)?.b2;
    let verdict = Verdict::from_diff(b2 - e.0 as i64 * e.1 as i64);
    if !verdict.agrees_with(nu) {
        return Err(Error::Invariant(format!(
            "unbalanced verdict {verdict} at line {h} disagrees with nu = {nu}"
        )));
    }
    Ok(Balanced {
        h_index: h,
        balanced: false,
        verdict_if_unbalanced: Some(verdict),
        exponents: Some(e),
    })
}

/// For a nearly free arrangement with exponents `(d1, d2)`: the first line
/// whose Ziegler exponents are `(d1, d2 - 1)`, if any.
pub fn jumping_free_line(a: &Arrangement, nexp: (u32, u32)) -> Result<Option<usize>> {
    let want = (nexp.0.min(nexp.1 - 1), nexp.0.max(nexp.1 - 1));
    for h in 0..a.n() {
        if multi_exponents(&ziegler_restriction(a, h)?)? == want {
            return Ok(Some(h));
        }
    }
    Ok(None)
}
