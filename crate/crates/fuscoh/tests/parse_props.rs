use fuscoh::input::parse_cycles;
use proptest::prelude::*;

fn disjoint_cycles() -> impl Strategy<Value = Vec<Vec<u32>>> {
    (1usize..12).prop_flat_map(|n| {
        (Just((0..n as u32).collect::<Vec<_>>()).prop_shuffle(), proptest::collection::vec(1usize..5, 0..6)).prop_map(
            |(points, lens)| {
                let mut out = Vec::new();
                let mut at = 0;
                for len in lens {
                    if at + len > points.len() {
                        break;
                    }
                    out.push(points[at..at + len].to_vec());
                    at += len;
                }
                out
            },
        )
    })
}

fn render(cycles: &[Vec<u32>]) -> String {
    cycles
        .iter()
        .map(|c| format!("({})", c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")))
        .collect()
}

proptest! {
    #[test]
    fn cycles_round_trip(cycles in disjoint_cycles()) {
        prop_assert_eq!(parse_cycles(&render(&cycles), 1).unwrap(), cycles);
    }

    #[test]
    fn dropping_a_paren_is_an_error(cycles in disjoint_cycles().prop_filter("nonempty", |c| !c.is_empty())) {
        let text = render(&cycles);
        let cut = &text[..text.len() - 1];
        prop_assert!(parse_cycles(cut, 7).unwrap_err().line == 7);
    }
}
