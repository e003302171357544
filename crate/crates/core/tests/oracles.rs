use logsplit::arrangement::{
    char_poly, lattice, multi_exponents, tau_lattice, theorem456_decide, ziegler_restriction,
    Arrangement, Verdict,
};
use logsplit::jacobian::{classify, n_dim, Classification, CurveInput};
use logsplit::poly::{HomPoly, LinForm};
use logsplit::splitting::{splitting_type, SplitType};

fn arr(rows: &[(i64, i64, i64)]) -> Arrangement {
    Arrangement::from_ints(rows).unwrap()
}

fn curve(a: &Arrangement) -> CurveInput {
    CurveInput::new(a.polynomial(), 7).unwrap()
}

const TRIANGLE: &[(i64, i64, i64)] = &[(1, 0, 0), (0, 1, 0), (0, 0, 1)];
const BRAID: &[(i64, i64, i64)] = &[(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, -1, 0), (1, 0, -1), (0, 1, -1)];
const QUINTIC: &[(i64, i64, i64)] = &[(1, 0, 0), (0, 1, 0), (0, 0, 1), (0, 1, -1), (1, 2, 3)];
const NONIC: &[(i64, i64, i64)] = &[
    (1, 0, 0),
    (0, 1, 0),
    (0, 0, 1),
    (1, 0, -1),
    (1, 0, 1),
    (0, 1, -1),
    (0, 1, 1),
    (1, -1, 1),
    (1, -1, -1),
];

#[test]
fn free_and_nearly_free_table() {
    let mut braid_plus = BRAID.to_vec();
    braid_plus.push((1, -1, 2));
    let mut triangle_plus = TRIANGLE.to_vec();
    triangle_plus.push((1, 2, 3));
    let table: [(&[(i64, i64, i64)], u64, Classification, (u32, u32)); 6] = [
        (TRIANGLE, 3, Classification::Free, (1, 1)),
        (BRAID, 19, Classification::Free, (2, 3)),
        (&braid_plus, 0, Classification::NearlyFree, (3, 4)),
        (&triangle_plus, 0, Classification::NearlyFree, (2, 2)),
        (QUINTIC, 11, Classification::NearlyFree, (2, 3)),
        (NONIC, 47, Classification::NearlyFree, (4, 5)),
    ];
    for (rows, tau, class, exps) in table {
        let a = arr(rows);
        let p = classify(&curve(&a)).unwrap();
        if tau > 0 {
            assert_eq!(p.tau, tau, "{rows:?}");
        }
        assert_eq!(p.tau, tau_lattice(&a));
        assert_eq!(p.classification, class, "{rows:?}");
        assert_eq!(p.exponents, Some(exps), "{rows:?}");
    }
}

#[test]
fn char_polys() {
    let cp = char_poly(&arr(QUINTIC)).unwrap();
    assert_eq!((cp.b1, cp.b2), (4, 5));
    let cp = char_poly(&arr(NONIC)).unwrap();
    assert_eq!((cp.b1, cp.b2), (8, 17));
    let cp = char_poly(&arr(BRAID)).unwrap();
    assert_eq!(cp.free_roots(), Some((2, 3)));
}

#[test]
fn braid_lattice() {
    let flats = lattice(&arr(BRAID));
    let mut mults: Vec<usize> = flats.iter().map(|f| f.mult()).collect();
    mults.sort();
    assert_eq!(mults, vec![2, 2, 2, 3, 3, 3, 3]);
}

#[test]
fn quintic_restrictions() {
    let a = arr(QUINTIC);
    let c = curve(&a);
    let expect = [(1, 3), (2, 2), (2, 2), (2, 2), (1, 3)];
    for (h, e) in expect.iter().enumerate() {
        let z = multi_exponents(&ziegler_restriction(&a, h).unwrap()).unwrap();
        assert_eq!(z, *e, "H{h}");
        let s = splitting_type(&c, &a.lines()[h]).unwrap();
        assert_eq!(s, SplitType::new(e.0, e.1));
    }
    let t = theorem456_decide(&a, 1).unwrap();
    assert_eq!(t.verdict, Verdict::NearlyFree);
    assert_eq!(t.witness_h, Some(0));
}

#[test]
fn smooth_cubic_is_not_nearly_free() {
    let f = HomPoly::x()
        .pow(3)
        .checked_add(&HomPoly::y().pow(3))
        .unwrap()
        .checked_add(&HomPoly::z().pow(3))
        .unwrap();
    let c = CurveInput::new(f, 1).unwrap();
    let dims: Vec<usize> = (0..=3).map(|k| n_dim(&c, k).unwrap()).collect();
    assert_eq!(dims, vec![1, 3, 3, 1]);
    let p = classify(&c).unwrap();
    assert_eq!((p.tau, p.nu, p.mdr), (0, 3, 2));
    assert_eq!(p.classification, Classification::Other);
    let s = splitting_type(&c, &LinForm::from_ints(1, 1, 1).unwrap()).unwrap();
    assert_eq!(s, SplitType::new(1, 1));
}

#[test]
fn pencil_is_free_with_zero_exponent() {
    let a = arr(&[(1, 0, 0), (0, 1, 0), (1, 1, 0), (1, 2, 0)]);
    let p = classify(&curve(&a)).unwrap();
    assert_eq!(p.mdr, 0);
    assert_eq!(p.classification, Classification::Pencil);
    assert_eq!(p.exponents, Some((0, 3)));
}
