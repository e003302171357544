//! Splitting types of the bundle E_C along lines.
//!
//! For a line `L : alpha = 0` the restriction `E_C|_L` splits as
//! `O(-d1) + O(-d2)`. The pair is read off the dimensions
//! `h0(k) = dim H^0(L, E_C(k)|_L)`, which the exact sequence of
//! multiplication by `alpha` expresses through AR(f) and N(f):
//!
//! `h0(k) = dim AR_k - dim AR_{k-1} + dim ker(alpha : N_{k+d-2} -> N_{k+d-1})`.

use std::collections::BTreeSet;
use std::fmt;

use rand::Rng;
use serde::ser::SerializeTuple;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::jacobian::{ar_dim, n_dim, n_mult_kernel_dim, CurveInput, JacobianProfile};
use crate::poly::{random_line, restrict_to_line, LinForm};

/// Number of random lines sampled for the genericity certificate.
pub const GENERIC_RETRIES: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SplitType {
    pub d1: u32,
    pub d2: u32,
}

impl SplitType {
    pub fn new(a: u32, b: u32) -> Self {
        SplitType {
            d1: a.min(b),
            d2: a.max(b),
        }
    }

    pub fn product(&self) -> i64 {
        self.d1 as i64 * self.d2 as i64
    }

    /// h0 of `O(k-d1) + O(k-d2)` on a line.
    pub fn h0(&self, k: i64) -> usize {
        let part = |e: u32| (k - e as i64 + 1).max(0) as usize;
        part(self.d1) + part(self.d2)
    }
}

impl fmt::Display for SplitType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.d1, self.d2)
    }
}

impl Serialize for SplitType {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut t = s.serialize_tuple(2)?;
        t.serialize_element(&self.d1)?;
        t.serialize_element(&self.d2)?;
        t.end()
    }
}

/// dim H^0(L, E_C(k)|_L).
pub fn h0_line(c: &CurveInput, line: &LinForm, k: i64) -> Result<usize> {
    if k < 0 {
        return Ok(0);
    }
    let d = c.degree() as i64;
    let ar = ar_dim(c, k) - ar_dim(c, k - 1);
    let m = k + d - 2;
    let ker = if n_dim(c, m)? == 0 {
        0
    } else {
        n_mult_kernel_dim(c, line, m)?
    };
    Ok(ar + ker)
}

pub fn splitting_type(c: &CurveInput, line: &LinForm) -> Result<SplitType> {
    let d = c.degree();
    if ar_dim(c, 0) > 0 {
        return Err(Error::Pencil);
    }
    let top = (d - 1) / 2;
    let mut seen = Vec::new();
    let mut d1 = None;
    for k in 0..=top as i64 {
        let h = h0_line(c, line, k)?;
        seen.push(h);
        if h > 0 {
            d1 = Some(k as u32);
            break;
        }
    }
    let Some(d1) = d1 else {
        return Err(Error::Invariant(format!(
            "no sections of E_C|_L up to degree {top} along {line}: {seen:?}"
        )));
    };
    let st = SplitType::new(d1, d - 1 - d1);
    for k in 0..=st.d2 as i64 + 1 {
        let h = match seen.get(k as usize) {
            Some(&h) => h,
            None => h0_line(c, line, k)?,
        };
        if h != st.h0(k) {
            return Err(Error::Invariant(format!(
                "h0 along {line} in degree {k} is {h}, splitting type {st} predicts {}",
                st.h0(k)
            )));
        }
    }
    Ok(st)
}

/// I(C, L) = (d-1)^2 - d1^L d2^L.
pub fn defect_i(d: u32, st: SplitType) -> i64 {
    let e = d as i64 - 1;
    e * e - st.product()
}

/// Generic splitting type predicted by `d1 + d2 = d - 1`,
/// `d1 d2 = c2 - nu`.
pub fn predicted_generic(p: &JacobianProfile) -> Result<SplitType> {
    let s = p.d as i64 - 1;
    let prod = p.chern.1 - p.nu as i64;
    let disc = s * s - 4 * prod;
    if disc < 0 {
        return Err(Error::Invariant(format!(
            "generic splitting quadratic t^2 - {s} t + {prod} has no real roots"
        )));
    }
    let r = disc.isqrt();
    if r * r != disc || (s - r) % 2 != 0 || s - r < 0 {
        return Err(Error::Invariant(format!(
            "generic splitting quadratic t^2 - {s} t + {prod} has no integer roots"
        )));
    }
    Ok(SplitType::new(((s - r) / 2) as u32, ((s + r) / 2) as u32))
}

/// Draws per sampled line before giving up on the box.
pub const SAMPLE_ATTEMPTS: usize = 256;

/// A random line not contained in C.
pub fn sample_line<R: Rng>(c: &CurveInput, rng: &mut R, coeff_box: i64) -> Result<LinForm> {
    for _ in 0..SAMPLE_ATTEMPTS {
        let l = random_line(rng, coeff_box);
        if !restrict_to_line(c.poly(), &l).is_zero() {
            return Ok(l);
        }
    }
    Err(Error::GenericityExhausted {
        retries: SAMPLE_ATTEMPTS,
        coeff_box,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineSplitting {
    pub line: LinForm,
    pub split: SplitType,
    pub defect: i64,
    /// Whether the line was drawn at random rather than supplied.
    pub sampled: bool,
}

/// Generic splitting type certified by a sampled line. Returns the
/// certified type and every line sampled along the way.
pub fn generic_splitting<R: Rng>(
    c: &CurveInput,
    p: &JacobianProfile,
    rng: &mut R,
    coeff_box: i64,
) -> Result<(SplitType, Vec<LineSplitting>)> {
    let predicted = predicted_generic(p)?;
    let mut sampled = Vec::new();
    for _ in 0..GENERIC_RETRIES {
        let line = sample_line(c, rng, coeff_box)?;
        let split = splitting_type(c, &line)?;
        sampled.push(LineSplitting {
            line,
            split,
            defect: defect_i(p.d, split),
            sampled: true,
        });
        if split == predicted {
            return Ok((predicted, sampled));
        }
    }
    Err(Error::GenericityExhausted {
        retries: GENERIC_RETRIES,
        coeff_box,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub witness: String,
}

impl Check {
    pub fn new(name: &str, pass: bool, witness: String) -> Self {
        Check {
            name: name.to_string(),
            pass,
            witness,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SplittingReport {
    pub generic: SplitType,
    pub per_line: Vec<LineSplitting>,
    pub image: BTreeSet<SplitType>,
    pub s_c: usize,
    pub checks: Vec<Check>,
}

/// Minimum number of random lines in a report.
pub const MIN_SAMPLED: usize = 3;

/// Splitting types along `lines` and along random lines, with the theorem
/// checks evaluated on the result.
pub fn splitting_report<R: Rng>(
    c: &CurveInput,
    p: &JacobianProfile,
    lines: &[LinForm],
    rng: &mut R,
    coeff_box: i64,
) -> Result<SplittingReport> {
    if p.mdr == 0 {
        return Err(Error::Pencil);
    }
    let (generic, mut sampled) = generic_splitting(c, p, rng, coeff_box)?;
    while sampled.len() < MIN_SAMPLED {
        let line = sample_line(c, rng, coeff_box)?;
        let split = splitting_type(c, &line)?;
        sampled.push(LineSplitting {
            line,
            split,
            defect: defect_i(p.d, split),
            sampled: true,
        });
    }
    let mut per_line = Vec::new();
    for l in lines {
        let split = splitting_type(c, l)?;
        per_line.push(LineSplitting {
            line: l.clone(),
            split,
            defect: defect_i(p.d, split),
            sampled: false,
        });
    }
    per_line.extend(sampled);
    let image: BTreeSet<SplitType> = per_line.iter().map(|l| l.split).collect();
    let s_c = image.len();
    let mut report = SplittingReport {
        generic,
        per_line,
        image,
        s_c,
        checks: Vec::new(),
    };
    report.checks = verify_theorems(c, p, &report)?;
    Ok(report)
}

fn fmt_lines(bad: &[&LineSplitting]) -> String {
    bad.iter()
        .map(|l| format!("{} -> {}", l.line, l.split))
        .collect::<Vec<_>>()
        .join("; ")
}

/// Evaluate the splitting-type theorems on a populated report.
pub fn verify_theorems(
    c: &CurveInput,
    p: &JacobianProfile,
    r: &SplittingReport,
) -> Result<Vec<Check>> {
    let d = p.d as i64;
    let tau = p.tau as i64;
    let nu = p.nu as i64;
    let mdr = p.mdr as i64;
    let c2 = p.chern.1;
    let g = r.generic;
    let a = g.d1 as i64;
    let half = (d - 1) / 2;
    let mut out = Vec::new();

    let sums_ok = r.per_line.iter().all(|l| l.split.d1 + l.split.d2 == p.d - 1);
    out.push(Check::new(
        "p1_sum",
        sums_ok,
        format!("d1^L + d2^L = {} on {} lines", d - 1, r.per_line.len()),
    ));

    // window for the smaller exponent
    let lo = (mdr - nu).max(0);
    let hi = mdr.min(half);
    let bad: Vec<_> = r
        .per_line
        .iter()
        .filter(|l| {
            let x = l.split.d1 as i64;
            x < lo || x > a
        })
        .collect();
    let pass = bad.is_empty() && lo <= a && a <= hi;
    out.push(Check::new(
        "thm1_window",
        pass,
        if bad.is_empty() {
            format!("{lo} <= d1^L <= d1^L0 = {a} <= {hi}")
        } else {
            format!("outside [{lo}, {a}]: {}", fmt_lines(&bad))
        },
    ));

    // defect of the generic line is minimal
    let i0 = defect_i(p.d, g);
    let bad: Vec<_> = r.per_line.iter().filter(|l| l.defect < i0).collect();
    out.push(Check::new(
        "thm1_defect",
        bad.is_empty() && i0 == tau + nu,
        format!(
            "I(C,L0) = {i0}, tau + nu = {}; min I over lines = {}",
            tau + nu,
            r.per_line.iter().map(|l| l.defect).min().unwrap_or(i0)
        ),
    ));

    // lower bound through dim N at mdr + d - 3
    let nr = n_dim(c, mdr + d - 3)? as i64;
    let lo2 = (mdr - nr).max(0);
    let bad: Vec<_> = r
        .per_line
        .iter()
        .filter(|l| (l.split.d1 as i64) < lo2 || l.split.d1 as i64 > mdr)
        .collect();
    out.push(Check::new(
        "p2_1",
        bad.is_empty(),
        format!("max(mdr - dim N_(mdr+d-3), 0) = {lo2} <= d1^L <= mdr = {mdr}"),
    ));

    // c2 against the generic product, and the exceptional lines
    let c2_ok = c2 - g.product() == nu;
    let exists0 = r.per_line.iter().any(|l| c2 - l.split.product() == 0);
    let exists1 = r.per_line.iter().any(|l| c2 - l.split.product() == 1);
    let main_ok = c2_ok && exists0 == (nu == 0) && exists1 == (nu == 1);
    out.push(Check::new(
        "main_ag",
        main_ok,
        format!(
            "c2 - d1^L0 d2^L0 = {c2} - {} = {}, nu = {nu}",
            g.product(),
            c2 - g.product()
        ),
    ));

    // tau <= I(C, L), equality exactly for free curves
    let bad: Vec<_> = r.per_line.iter().filter(|l| tau > l.defect).collect();
    let eq: Vec<_> = r.per_line.iter().filter(|l| tau == l.defect).collect();
    let pass = bad.is_empty()
        && if nu == 0 {
            eq.len() == r.per_line.len()
        } else {
            eq.is_empty()
        };
    out.push(Check::new(
        "cor_ctc",
        pass,
        format!(
            "tau = {tau}; equality on {} of {} lines",
            eq.len(),
            r.per_line.len()
        ),
    ));

    // nonnegative discriminant and its equivalents
    let disc = p.chern_discriminant();
    let e1 = disc >= 0;
    let e2 = 4 * tau >= 3 * (d - 1) * (d - 1);
    let gap = d - 1 - 2 * a;
    let e3 = gap >= 0 && gap * gap >= 4 * nu;
    let mut pass = e1 == e2 && e2 == e3;
    if e1 {
        pass &= mdr == a;
    }
    if 4 * mdr < d {
        pass &= e1;
    }
    let mgap = d - 1 - 2 * mdr;
    if mgap >= 0 && mgap * mgap >= 4 * nu {
        pass &= e1;
    }
    out.push(Check::new(
        "thm_mdr",
        pass,
        format!(
            "disc = {disc}, 4 tau = {} vs 3(d-1)^2 = {}, (d-1-2 d1^L0)^2 = {} vs 4 nu = {}, mdr = {mdr}, d1^L0 = {a}",
            4 * tau,
            3 * (d - 1) * (d - 1),
            gap * gap,
            4 * nu
        ),
    ));

    // generic type when 2 d1 >= d - 2
    let pass = if 2 * a < d - 2 {
        mdr == a
    } else if d % 2 == 0 {
        let m = d / 2;
        (g.d1 as i64, g.d2 as i64) == (m - 1, m)
    } else {
        let m = (d - 1) / 2;
        (g.d1 as i64, g.d2 as i64) == (m, m)
    };
    out.push(Check::new(
        "p2_2",
        pass,
        format!("d1^L0 = {a}, (d-2)/2 = {}/2, mdr = {mdr}", d - 2),
    ));

    // image of the splitting map
    let r0 = mdr.min(half);
    let r0p = (mdr - nu).max(0);
    let in_window = r
        .image
        .iter()
        .all(|s| (s.d1 as i64) >= r0p && (s.d1 as i64) <= r0);
    let mut pass = in_window && (r.s_c as i64) <= r0 - r0p + 1 && r0 - r0p <= nu;
    if let (true, Some((n1, n2))) = (p.is_nearly_free(), p.exponents) {
        let allowed = [SplitType::new(n1 - 1, n2), SplitType::new(n1, n2 - 1)];
        pass &= r.image.iter().all(|s| allowed.contains(s));
    }
    out.push(Check::new(
        "keycor",
        pass,
        format!(
            "image {} within d1 in [{r0p}, {r0}]",
            fmt_image(&r.image)
        ),
    ));

    // per-line types against (d1-1, d2) and (d1, d2-1)
    let (pass, witness) = match (p.is_nearly_free(), p.exponents) {
        (true, Some((n1, n2))) if n1 == n2 => {
            let want = SplitType::new(n1 - 1, n2);
            (
                r.image.iter().all(|s| *s == want),
                format!("d1 = d2 = {n1}: image {} must be {{{want}}}", fmt_image(&r.image)),
            )
        }
        (true, Some((n1, n2))) => {
            let both: BTreeSet<_> = [SplitType::new(n1 - 1, n2), SplitType::new(n1, n2 - 1)]
                .into_iter()
                .collect();
            let sub = r.image.is_subset(&both);
            let attained = r.image == both;
            (
                sub && r.image.contains(&SplitType::new(n1, n2 - 1)),
                format!(
                    "image {} within {}; {}",
                    fmt_image(&r.image),
                    fmt_image(&both),
                    if attained {
                        "both values attained"
                    } else {
                        "jumping value not among the evaluated lines"
                    }
                ),
            )
        }
        _ => (true, "not nearly free: vacuous".to_string()),
    };
    out.push(Check::new("splittingtype", pass, witness));

    // discriminant bound
    let (pass, witness) = if disc >= 0 {
        let lhs = r.s_c as i64 - 1;
        (
            lhs <= nu && 4 * nu <= mgap * mgap,
            format!(
                "s_C - 1 = {lhs} <= nu = {nu}, 4 nu = {} <= (d-1-2 mdr)^2 = {}",
                4 * nu,
                mgap * mgap
            ),
        )
    } else {
        (true, format!("discriminant {disc} < 0: vacuous"))
    };
    out.push(Check::new("ineq", pass, witness));

    // Tjurina number bounds
    let (lo, hi) = p.dpw;
    out.push(Check::new(
        "dpw_bounds",
        lo <= tau && tau <= hi,
        format!("{lo} <= tau = {tau} <= {hi}"),
    ));
    Ok(out)
}

pub fn fmt_image(s: &BTreeSet<SplitType>) -> String {
    let parts: Vec<String> = s.iter().map(|t| t.to_string()).collect();
    format!("{{{}}}", parts.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::jacobian::classify;
    use crate::poly::HomPoly;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn product(lines: &[(i64, i64, i64)]) -> HomPoly {
        lines.iter().fold(HomPoly::constant(rat(1)), |acc, &(a, b, c)| {
            &acc * &LinForm::from_ints(a, b, c).unwrap().to_poly()
        })
    }

    fn quintic() -> CurveInput {
        CurveInput::new(
            product(&[(1, 0, 0), (0, 1, 0), (0, 0, 1), (0, 1, -1), (1, 2, 3)]),
            7,
        )
        .unwrap()
    }

    #[test]
    fn h0_triangle() {
        let c = CurveInput::new(product(&[(1, 0, 0), (0, 1, 0), (0, 0, 1)]), 1).unwrap();
        let l = LinForm::from_ints(3, -5, 7).unwrap();
        assert_eq!(h0_line(&c, &l, 0).unwrap(), 0);
        assert_eq!(h0_line(&c, &l, 1).unwrap(), 2);
        assert_eq!(splitting_type(&c, &l).unwrap(), SplitType::new(1, 1));
    }

    #[test]
    fn quintic_lines() {
        let c = quintic();
        let z = LinForm::from_ints(0, 0, 1).unwrap();
        let l = LinForm::from_ints(1, 2, 3).unwrap();
        assert_eq!(splitting_type(&c, &z).unwrap(), SplitType::new(2, 2));
        assert_eq!(splitting_type(&c, &l).unwrap(), SplitType::new(1, 3));
        assert_eq!(defect_i(5, SplitType::new(1, 3)), 13);
    }

    #[test]
    fn quintic_report() {
        let c = quintic();
        let p = classify(&c).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let lines = [LinForm::from_ints(1, 2, 3).unwrap()];
        let r = splitting_report(&c, &p, &lines, &mut rng, 97).unwrap();
        assert_eq!(r.generic, SplitType::new(2, 2));
        assert_eq!(
            r.image,
            [SplitType::new(1, 3), SplitType::new(2, 2)].into_iter().collect()
        );
        for ch in &r.checks {
            assert!(ch.pass, "{}: {}", ch.name, ch.witness);
        }
    }

    #[test]
    fn pencil_rejected() {
        let c = CurveInput::new(product(&[(1, 0, 0), (0, 1, 0), (1, -1, 0), (1, 1, 0)]), 1)
            .unwrap();
        let l = LinForm::from_ints(1, 1, 1).unwrap();
        assert_eq!(splitting_type(&c, &l), Err(Error::Pencil));
    }

    #[test]
    fn split_type_h0() {
        let s = SplitType::new(3, 1);
        assert_eq!((s.d1, s.d2), (1, 3));
        assert_eq!(s.h0(0), 0);
        assert_eq!(s.h0(1), 1);
        assert_eq!(s.h0(3), 4);
    }
}
