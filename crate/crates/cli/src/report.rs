//! Full analysis reports and their text and JSON renderings.

use std::fmt::Write as _;

use logsplit::arrangement::{
    balanced_check, char_poly, curve_ziegler_restriction, jumping_free_line, lattice,
    multi_exponents, tau_lattice, theorem456_decide, yoshinaga_from, ziegler_restriction,
    Arrangement, Balanced, Theorem456,
};
use logsplit::exact::Rat;
use logsplit::jacobian::{classify, classify_with_kmax, Classification, CurveInput, JacobianProfile};
use logsplit::poly::{restrict_to_line, HomPoly, LinForm};
use logsplit::splitting::{splitting_report, Check, SplitType};
use logsplit::{Error, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Clone, Debug)]
pub enum Source {
    Curve(HomPoly),
    Arrangement(Arrangement),
}

impl Source {
    pub fn polynomial(&self) -> HomPoly {
        match self {
            Source::Curve(f) => f.clone(),
            Source::Arrangement(a) => a.polynomial(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Options {
    pub seed: u64,
    pub kmax: Option<i64>,
    pub coeff_box: i64,
    /// Extra lines to evaluate besides the sampled ones.
    pub lines: Vec<LinForm>,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            seed: 0,
            kmax: None,
            coeff_box: logsplit::jacobian::DEFAULT_COEFF_BOX,
            lines: Vec::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Dpw {
    pub min: i64,
    pub max: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LineEntry {
    pub line: [String; 3],
    pub splitting: SplitType,
    #[serde(rename = "I")]
    pub i: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointEntry {
    pub coords: [String; 3],
    pub mult: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZieglerEntry {
    pub h_index: usize,
    pub exponents: (u32, u32),
    pub b2_diff: i64,
    pub nearfree_test: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ArrangementSection {
    pub n: usize,
    pub char_poly: (i64, i64),
    pub points: Vec<PointEntry>,
    pub ziegler: Vec<ZieglerEntry>,
    pub theorem456: Theorem456,
    pub balanced: Vec<Balanced>,
}

/// Field order is the JSON key order.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub degree: u32,
    pub tau: u64,
    pub mdr: u32,
    pub nu: u64,
    pub chern: (i64, i64),
    pub classification: Classification,
    pub exponents: Option<(u32, u32)>,
    pub generic_splitting: Option<SplitType>,
    pub dpw: Dpw,
    pub lines: Vec<LineEntry>,
    pub arrangement: Option<ArrangementSection>,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

pub fn rat_str(r: &Rat) -> String {
    r.to_string()
}

pub fn coords(c: &[Rat; 3]) -> [String; 3] {
    [rat_str(&c[0]), rat_str(&c[1]), rat_str(&c[2])]
}

pub fn curve_input(f: HomPoly, opts: &Options) -> Result<CurveInput> {
    if opts.coeff_box < 1 {
        return Err(Error::OutOfRange("coefficient box must be at least 1".into()));
    }
    CurveInput::with_coeff_box(f, opts.seed, opts.coeff_box)
}

pub fn profile(c: &CurveInput, opts: &Options) -> Result<JacobianProfile> {
    match opts.kmax {
        Some(k) => classify_with_kmax(c, k),
        None => classify(c),
    }
}

pub fn build_report(src: &Source, opts: &Options) -> Result<Report> {
    let c = curve_input(src.polynomial(), opts)?;
    let p = profile(&c, opts)?;
    let mut given = opts.lines.clone();
    if let Source::Arrangement(a) = src {
        given.extend(a.lines().iter().cloned());
    }

    let (generic, lines, mut checks, per_line) = if p.mdr == 0 {
        let check = Check::new(
            "pencil",
            true,
            format!("mdr = 0: free with exponents (0,{}), splitting analysis skipped", p.d - 1),
        );
        (None, Vec::new(), vec![check], Vec::new())
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let sr = splitting_report(&c, &p, &given, &mut rng, opts.coeff_box)?;
        let lines = sr
            .per_line
            .iter()
            .map(|l| LineEntry {
                line: coords(l.line.coeffs()),
                splitting: l.split,
                i: l.defect,
            })
            .collect();
        let per_line: Vec<(LinForm, SplitType)> =
            sr.per_line.iter().map(|l| (l.line.clone(), l.split)).collect();
        (Some(sr.generic), lines, sr.checks, per_line)
    };

    let arrangement = match src {
        Source::Arrangement(a) => {
            let (section, more) = arrangement_section(a, &p, &per_line)?;
            checks.extend(more);
            Some(section)
        }
        Source::Curve(f) => {
            checks.extend(curve_component_checks(f, &p, &per_line)?);
            None
        }
    };

    Ok(Report {
        degree: p.d,
        tau: p.tau,
        mdr: p.mdr,
        nu: p.nu,
        chern: p.chern,
        classification: p.classification,
        exponents: p.exponents,
        generic_splitting: generic,
        dpw: Dpw {
            min: p.dpw.0,
            max: p.dpw.1,
        },
        lines,
        arrangement,
        checks,
    })
}

fn split_of(per_line: &[(LinForm, SplitType)], l: &LinForm) -> Option<SplitType> {
    per_line
        .iter()
        .find(|(m, _)| m.is_proportional(l))
        .map(|(_, s)| *s)
}

/// Allowed Ziegler exponents of a nearly free arrangement.
fn nearly_free_window(p: &JacobianProfile) -> Option<[(u32, u32); 2]> {
    match (p.is_nearly_free(), p.exponents) {
        (true, Some((d1, d2))) if d1 >= 1 => {
            let a = SplitType::new(d1 - 1, d2);
            let b = SplitType::new(d1, d2 - 1);
            Some([(a.d1, a.d2), (b.d1, b.d2)])
        }
        _ => None,
    }
}

fn arrangement_section(
    a: &Arrangement,
    p: &JacobianProfile,
    per_line: &[(LinForm, SplitType)],
) -> Result<(ArrangementSection, Vec<Check>)> {
    let cp = char_poly(a)?;
    let flats = lattice(a);
    let points = flats
        .iter()
        .map(|f| PointEntry {
            coords: coords(&f.point),
            mult: f.mult(),
        })
        .collect();
    let mut ziegler = Vec::new();
    for h in 0..a.n() {
        let y = yoshinaga_from(&ziegler_restriction(a, h)?, cp.b2)?;
        ziegler.push(ZieglerEntry {
            h_index: h,
            exponents: y.exponents,
            b2_diff: y.diff,
            nearfree_test: y.diff == 1,
        });
    }
    let t456 = theorem456_decide(a, p.nu)?;
    let balanced = (0..a.n())
        .map(|h| balanced_check(a, h, p.nu))
        .collect::<Result<Vec<_>>>()?;

    let mut checks = Vec::new();
    let tl = tau_lattice(a);
    checks.push(Check::new(
        "tau_lattice",
        tl == p.tau,
        format!("sum (m_p - 1)^2 = {tl}, tau = {}", p.tau),
    ));
    let (c1, c2) = p.chern;
    checks.push(Check::new(
        "char_poly_chern",
        cp.b1 == -c1 && cp.b2 == c2,
        format!("chi = {cp}, chern = (c1, c2) = ({c1}, {c2})"),
    ));
    let (pass, witness) = match (p.classification, p.exponents) {
        (Classification::Free | Classification::Pencil, Some((d1, d2))) => (
            cp.b1 == (d1 + d2) as i64 && cp.b2 == (d1 * d2) as i64,
            format!("chi = {cp} vs (t-{d1})(t-{d2})"),
        ),
        (Classification::NearlyFree, Some((d1, d2))) => (
            cp.b1 == (d1 + d2 - 1) as i64 && cp.b2 == (d1 * (d2 - 1) + 1) as i64,
            format!("chi = {cp} vs (t-{d1})(t-{})+1", d2 - 1),
        ),
        _ => (true, "neither free nor nearly free: vacuous".to_string()),
    };
    checks.push(Check::new("factorization", pass, witness));

    let mut mismatches = Vec::new();
    for (h, z) in ziegler.iter().enumerate() {
        if let Some(s) = split_of(per_line, &a.lines()[h]) {
            if (s.d1, s.d2) != z.exponents {
                mismatches.push(format!("H{h}: splitting {s}, Ziegler {:?}", z.exponents));
            }
        }
    }
    checks.push(Check::new(
        "ziegler_splitting",
        mismatches.is_empty(),
        if mismatches.is_empty() {
            format!("splitting type equals Ziegler exponents on all {} lines", a.n())
        } else {
            mismatches.join("; ")
        },
    ));

    let diffs: Vec<i64> = ziegler.iter().map(|z| z.b2_diff).collect();
    let nonneg = diffs.iter().all(|&x| x >= 0);
    let free_ok = (p.nu == 0) == diffs.iter().all(|&x| x == 0)
        && (p.nu == 0) == diffs.iter().any(|&x| x == 0);
    checks.push(Check::new(
        "yoshinaga",
        nonneg && free_ok,
        format!("b2 - e1 e2 per line: {diffs:?}, nu = {}", p.nu),
    ));
    let hits = diffs.iter().filter(|&&x| x == 1).count();
    checks.push(Check::new(
        "nearfree_criterion",
        hits == 0 || p.nu == 1,
        format!("diff 1 at {hits} lines, nu = {}", p.nu),
    ));
    let (pass, witness) = match nearly_free_window(p) {
        Some(allowed) => {
            let bad: Vec<usize> = ziegler
                .iter()
                .filter(|z| !allowed.contains(&z.exponents))
                .map(|z| z.h_index)
                .collect();
            (
                bad.is_empty(),
                format!("Ziegler exponents within {allowed:?}; outside at {bad:?}"),
            )
        }
        None => (true, "not nearly free: vacuous".to_string()),
    };
    checks.push(Check::new("main2", pass, witness));
    checks.push(Check::new(
        "theorem456",
        true,
        match (t456.verdict, t456.witness_h) {
            (v, Some(h)) if t456.applicable => format!("{v} at H{h}, agrees with nu"),
            _ => "no line meets the hypotheses".to_string(),
        },
    ));
    let unbalanced: Vec<String> = balanced
        .iter()
        .filter(|b| !b.balanced)
        .map(|b| {
            format!(
                "H{}: {}",
                b.h_index,
                b.verdict_if_unbalanced.expect("unbalanced verdict")
            )
        })
        .collect();
    checks.push(Check::new(
        "balanced",
        true,
        if unbalanced.is_empty() {
            "all restrictions balanced".to_string()
        } else {
            format!("unbalanced verdicts agree with nu: {}", unbalanced.join(", "))
        },
    ));
    if let (true, Some(nexp)) = (p.is_nearly_free(), p.exponents) {
        let h = jumping_free_line(a, nexp)?;
        checks.push(Check::new(
            "open_question",
            true,
            match h {
                Some(h) => format!(
                    "H{h} has Ziegler exponents ({}, {})",
                    nexp.0,
                    nexp.1 - 1
                ),
                None => format!("no H with Ziegler exponents ({}, {})", nexp.0, nexp.1 - 1),
            },
        ));
    }

    let section = ArrangementSection {
        n: a.n(),
        char_poly: (cp.b1, cp.b2),
        points,
        ziegler,
        theorem456: t456,
        balanced,
    };
    Ok((section, checks))
}

/// For supplied lines that are components of a curve: Ziegler exponents of
/// the rational restriction against the splitting type.
fn curve_component_checks(
    f: &HomPoly,
    p: &JacobianProfile,
    per_line: &[(LinForm, SplitType)],
) -> Result<Vec<Check>> {
    let mut rows = Vec::new();
    let mut pass = true;
    for (l, s) in per_line {
        if !restrict_to_line(f, l).is_zero() {
            continue;
        }
        let Ok(m) = curve_ziegler_restriction(f, l) else {
            continue;
        };
        let e = multi_exponents(&m)?;
        let diff = p.chern.1 - (e.0 * e.1) as i64;
        pass &= (s.d1, s.d2) == e && diff >= 0 && (diff != 1 || p.nu == 1);
        if let Some(allowed) = nearly_free_window(p) {
            pass &= allowed.contains(&e);
        }
        rows.push(format!("{l}: Ziegler {e:?}, splitting {s}, c2 - e1 e2 = {diff}"));
    }
    if rows.is_empty() {
        return Ok(Vec::new());
    }
    Ok(vec![Check::new("ziegler_splitting", pass, rows.join("; "))])
}

pub fn render_text(src: &Source, r: &Report) -> String {
    let mut s = String::new();
    let name = match src {
        Source::Curve(f) => format!("curve {f}"),
        Source::Arrangement(a) => format!("arrangement of {} lines", a.n()),
    };
    let _ = writeln!(s, "{name}");
    let _ = writeln!(s, "degree             {}", r.degree);
    let _ = writeln!(s, "tau                {}", r.tau);
    let _ = writeln!(s, "mdr                {}", r.mdr);
    let _ = writeln!(s, "nu                 {}", r.nu);
    let _ = writeln!(s, "chern (c1, c2)     ({}, {})", r.chern.0, r.chern.1);
    let cls = serde_json::to_value(r.classification).expect("serializes");
    let _ = writeln!(s, "classification     {}", cls.as_str().unwrap_or("?"));
    if let Some((a, b)) = r.exponents {
        let _ = writeln!(s, "exponents          ({a},{b})");
    }
    if let Some(g) = r.generic_splitting {
        let _ = writeln!(s, "generic splitting  {g}");
    }
    let _ = writeln!(s, "dpw bounds         [{}, {}]", r.dpw.min, r.dpw.max);
    if !r.lines.is_empty() {
        let _ = writeln!(s, "lines:");
        for l in &r.lines {
            let _ = writeln!(
                s,
                "  [{}, {}, {}]  {}  I = {}",
                l.line[0], l.line[1], l.line[2], l.splitting, l.i
            );
        }
    }
    if let Some(a) = &r.arrangement {
        let _ = writeln!(s, "char poly          t^2 - {}t + {}", a.char_poly.0, a.char_poly.1);
        let mut mults: Vec<usize> = a.points.iter().map(|p| p.mult).collect();
        mults.sort_unstable_by(|x, y| y.cmp(x));
        let _ = writeln!(s, "points             {} with multiplicities {mults:?}", a.points.len());
        let _ = writeln!(s, "ziegler:");
        for z in &a.ziegler {
            let _ = writeln!(
                s,
                "  H{}  exp ({},{})  b2 - e1 e2 = {}{}",
                z.h_index,
                z.exponents.0,
                z.exponents.1,
                z.b2_diff,
                if z.nearfree_test { "  nearly free test" } else { "" }
            );
        }
        let t = &a.theorem456;
        let _ = writeln!(
            s,
            "theorem456         {}{}",
            t.verdict,
            t.witness_h.map(|h| format!(" (H{h})")).unwrap_or_default()
        );
    }
    let _ = writeln!(s, "checks:");
    for c in &r.checks {
        let _ = writeln!(
            s,
            "  {} {:<20} {}",
            if c.pass { "ok  " } else { "FAIL" },
            c.name,
            c.witness
        );
    }
    s
}
