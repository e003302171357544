use logsplit::arrangement::Arrangement;
use logsplit::poly::{HomPoly, LinForm};
use logsplit_cli::parse::{parse_arrangement, parse_poly};
use proptest::prelude::*;

fn form() -> impl Strategy<Value = (i64, i64, i64)> {
    (-9i64..=9, -9i64..=9, -9i64..=9).prop_filter("nonzero", |&(a, b, c)| (a, b, c) != (0, 0, 0))
}

fn term(c: i64, v: &str) -> String {
    match c {
        0 => String::new(),
        1 => format!("+{v}"),
        -1 => format!("-{v}"),
        c if c > 0 => format!("+{c}*{v}"),
        c => format!("{c}*{v}"),
    }
}

fn linear_text((a, b, c): (i64, i64, i64)) -> String {
    let s = format!("{}{}{}", term(a, "x"), term(b, "y"), term(c, "z"));
    s.strip_prefix('+').map(str::to_string).unwrap_or(s)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn products_of_linear_forms(forms in prop::collection::vec(form(), 1..=6)) {
        let text = forms.iter().map(|&f| format!("({})", linear_text(f))).collect::<Vec<_>>().join("*");
        let expect = forms.iter().fold(None::<HomPoly>, |acc, &(a, b, c)| {
            let l = LinForm::from_ints(a, b, c).unwrap().to_poly();
            Some(match acc { None => l, Some(p) => &p * &l })
        }).unwrap();
        prop_assert_eq!(parse_poly(&text).unwrap(), expect.clone());
        let printed = expect.to_string();
        prop_assert_eq!(parse_poly(&printed).unwrap(), expect);
    }

    #[test]
    fn arrangement_files(forms in prop::collection::vec(form(), 1..=6)) {
        let text: String = forms.iter().map(|(a, b, c)| format!("{a} {b} {c}  # row\n")).collect();
        match Arrangement::from_ints(&forms) {
            Ok(a) => {
                let parsed = parse_arrangement(&text).unwrap();
                prop_assert_eq!(parsed.lines(), a.lines());
            }
            Err(e) => prop_assert_eq!(parse_arrangement(&text).unwrap_err(), e),
        }
    }
}
