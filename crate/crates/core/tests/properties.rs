use logsplit::arrangement::{
    char_poly, lattice, multi_der_dim, multi_exponents, tau_lattice, Arrangement, Multi2D,
};
use logsplit::exact::{kernel_basis, rank, rat, QMatrix, Rat, Subspace};
use logsplit::jacobian::{classify, CurveInput};
use logsplit::splitting::splitting_type;
use num_traits::Zero;
use proptest::prelude::*;

fn vectors(n: usize, max: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, n), 0..=max)
}

fn to_rat(rows: &[Vec<i64>]) -> Vec<Vec<Rat>> {
    rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()
}

fn arrangement() -> impl Strategy<Value = Arrangement> {
    prop::collection::vec((-2i64..=2, -2i64..=2, -2i64..=2), 3..=6).prop_filter_map(
        "distinct nonzero lines",
        |rows| Arrangement::from_ints(&rows).ok(),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn span_is_canonical(rows in vectors(5, 6), scale in 1i64..=5) {
        let vs = to_rat(&rows);
        let a = Subspace::span(5, &vs).unwrap();
        let mut shuffled: Vec<Vec<Rat>> = vs
            .iter()
            .rev()
            .map(|v| v.iter().map(|x| x * rat(-scale)).collect())
            .collect();
        shuffled.extend(a.basis().iter().cloned());
        prop_assert_eq!(&a, &Subspace::span(5, &shuffled).unwrap());
        for v in &vs {
            prop_assert!(a.contains(v).unwrap());
        }
        prop_assert_eq!(a.dim(), rank(&QMatrix::from_rows(vs.clone()).unwrap_or(QMatrix::zeros(0, 5))));
    }

    #[test]
    fn kernel_and_annihilator(rows in vectors(6, 5)) {
        prop_assume!(!rows.is_empty());
        let m = QMatrix::from_rows(to_rat(&rows)).unwrap();
        let k = kernel_basis(&m);
        prop_assert_eq!(k.dim() + rank(&m), 6);
        for v in k.basis() {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(Zero::is_zero));
        }
        let row_space = Subspace::span(6, &to_rat(&rows)).unwrap();
        let ann = Subspace::span(6, &row_space.annihilator()).unwrap();
        prop_assert_eq!(ann, k);
    }

    #[test]
    fn reduce_is_exact_remainder(rows in vectors(4, 3), v in prop::collection::vec(-4i64..=4, 4)) {
        let s = Subspace::span(4, &to_rat(&rows)).unwrap();
        let v: Vec<Rat> = v.iter().map(|&x| rat(x)).collect();
        let r = s.reduce(&v);
        for &p in s.pivots() {
            prop_assert!(r[p].is_zero());
        }
        let diff: Vec<Rat> = v.iter().zip(&r).map(|(a, b)| a - b).collect();
        prop_assert!(s.contains(&diff).unwrap());
    }

    #[test]
    fn lattice_counts(a in arrangement()) {
        let n = a.n();
        let pairs: usize = lattice(&a).iter().map(|f| f.mult() * (f.mult() - 1) / 2).sum();
        prop_assert_eq!(pairs, n * (n - 1) / 2);
        let cp = char_poly(&a).unwrap();
        prop_assert_eq!(cp.b1, n as i64 - 1);
        prop_assert_eq!(cp.b2, ((n - 1) * (n - 1)) as i64 - tau_lattice(&a) as i64);
    }

    #[test]
    fn multiarrangement_exponents(pts in prop::collection::btree_map(-5i64..=5, 1u32..=4, 1..=5)) {
        let points: Vec<((i64, i64), u32)> = pts.iter().map(|(&s, &m)| ((1, s), m)).collect();
        let m = Multi2D::from_ints(&points).unwrap();
        let (e1, e2) = multi_exponents(&m).unwrap();
        prop_assert!(e1 <= e2);
        prop_assert_eq!(e1 + e2, m.total());
        for k in 0..=(m.total() as i64 + 1) {
            let expect = (k - e1 as i64 + 1).max(0) + (k - e2 as i64 + 1).max(0);
            prop_assert_eq!(multi_der_dim(&m, k) as i64, expect);
        }
        for i in 0..m.num_points() {
            let (f1, f2) = multi_exponents(&m.bumped(i)).unwrap();
            let up = ((e1 + 1).min(e2), (e1 + 1).max(e2));
            prop_assert!((f1, f2) == up || (f1, f2) == (e1, e2 + 1));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn lattice_tau_and_ziegler_agree(a in arrangement()) {
        let c = CurveInput::new(a.polynomial(), 3).unwrap();
        let p = classify(&c).unwrap();
        prop_assert_eq!(p.tau, tau_lattice(&a));
        prop_assume!(p.mdr > 0);
        for h in 0..a.n() {
            let z = multi_exponents(&logsplit::arrangement::ziegler_restriction(&a, h).unwrap()).unwrap();
            let s = splitting_type(&c, &a.lines()[h]).unwrap();
            prop_assert_eq!((s.d1, s.d2), z);
            prop_assert_eq!(s.d1 + s.d2, p.d - 1);
        }
    }
}
