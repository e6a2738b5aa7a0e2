use proptest::prelude::*;

use matpoly_core::catalog::random_connected_graph;
use matpoly_core::io::{format_matroid, format_weights, parse_matroid, parse_weights};
use matpoly_core::oracles::all_bases;
use matpoly_core::{Caps, Error, Matroid, WeightMatrix};

fn matroid() -> impl Strategy<Value = Matroid> {
    let uniform = (2usize..=9).prop_flat_map(|n| (Just(n), 0..=n)).prop_filter_map("valid rank", |(n, r)| Matroid::uniform(n, r).ok());
    let vector = (1usize..=3, 1usize..=6)
        .prop_flat_map(|(r, c)| proptest::collection::vec(proptest::collection::vec(-3i64..=3, c), r))
        .prop_filter_map("nonzero", |rows| Matroid::vector_i64(&rows).ok());
    let graph = (any::<u64>(), 2usize..=6, 0.0f64..1.0).prop_map(|(s, v, p)| random_connected_graph(s, v, p));
    prop_oneof![uniform, vector, graph]
}

proptest! {
    #[test]
    fn matroid_text_round_trips(m in matroid()) {
        let text = format_matroid(&m);
        let back = parse_matroid(&text).unwrap();
        prop_assert_eq!(format_matroid(&back), text);
        let caps = Caps::default();
        prop_assert_eq!(all_bases(&back, &caps).unwrap(), all_bases(&m, &caps).unwrap());
    }

    #[test]
    fn weight_text_round_trips(rows in proptest::collection::vec(proptest::collection::vec(-1000i64..=1000, 5), 1..=4)) {
        let w = WeightMatrix::new(rows).unwrap();
        prop_assert_eq!(parse_weights(&format_weights(&w)).unwrap(), w);
    }

    #[test]
    fn corrupted_entries_report_their_position(m in matroid(), seed in any::<usize>()) {
        let text = format_matroid(&m);
        let lines: Vec<&str> = text.lines().collect();
        prop_assume!(lines.len() > 1);
        let line = 1 + seed % (lines.len() - 1);
        let tokens: Vec<&str> = lines[line].split(' ').collect();
        let col_token = seed / 7 % tokens.len();
        let column = 1 + tokens[..col_token].iter().map(|t| t.len() + 1).sum::<usize>();
        let mut broken: Vec<String> = lines.iter().map(|s| s.to_string()).collect();
        let mut toks: Vec<String> = tokens.iter().map(|s| s.to_string()).collect();
        toks[col_token] = "z".into();
        broken[line] = toks.join(" ");
        match parse_matroid(&(broken.join("\n") + "\n")) {
            Err(Error::Parse { line: l, column: c, .. }) => {
                prop_assert_eq!(l, line + 1);
                prop_assert_eq!(c, column);
            }
            other => prop_assert!(false, "expected a parse error, got {:?}", other),
        }
    }
}
