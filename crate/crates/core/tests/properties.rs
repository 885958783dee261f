use proptest::prelude::*;

use lukas_core::fuzz::InferenceFuzzer;
use lukas_core::semantics::{forces, frame_valid, rooted_posets_of_size, Budget, Frame, KripkeModel};
use lukas_core::{apply_substitution, check_inference, match_instance, parse_formula, DeductiveSystem, Formula, Mode, Substitution};

fn formula(modal: bool) -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        Just(Formula::Bottom),
        prop::sample::select(vec!["p", "q", "r"]).prop_map(Formula::var),
    ];
    leaf.prop_recursive(4, 24, 2, move |inner| {
        let mut ops = vec![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)).boxed(),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)).boxed(),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)).boxed(),
        ];
        if modal {
            ops.push(inner.prop_map(Formula::boxed).boxed());
        }
        prop::strategy::Union::new(ops)
    })
}

fn frame() -> impl Strategy<Value = Frame> {
    (1usize..=3).prop_flat_map(|n| {
        let frames = rooted_posets_of_size(n);
        prop::sample::select(frames)
    })
}

// Brute force over every upward-closed valuation of p, q, r.
fn valid_by_enumeration(f: &Frame, a: &Formula) -> bool {
    let ups: Vec<u64> = (0..=f.all_worlds()).filter(|&m| m & !f.all_worlds() == 0 && f.is_upset(m)).collect();
    for &p in &ups {
        for &q in &ups {
            for &r in &ups {
                let mut m = KripkeModel::new(f.clone());
                m.set("p", p);
                m.set("q", q);
                m.set("r", r);
                if (0..f.len()).any(|w| !forces(&m, w, a)) {
                    return false;
                }
            }
        }
    }
    true
}

proptest! {
    #[test]
    fn display_parses_back(a in formula(true)) {
        prop_assert_eq!(parse_formula(&a.to_string(), Mode::K4).unwrap(), a);
    }

    #[test]
    fn match_finds_applied_substitution(a in formula(false), x in formula(false), y in formula(false)) {
        let s = Substitution::new().with("p", x).with("q", y);
        let target = apply_substitution(&s, &a);
        let found = match_instance(&a, &target).expect("instance must match");
        prop_assert_eq!(apply_substitution(&found, &a), target);
    }

    #[test]
    fn match_is_sound(a in formula(false), b in formula(false)) {
        if let Some(s) = match_instance(&a, &b) {
            prop_assert_eq!(apply_substitution(&s, &a), b);
        }
    }

    #[test]
    fn frame_validity_agrees_with_enumeration(f in frame(), a in formula(false)) {
        let fast = frame_valid(&f, &a, &Budget::new(3, 3)).unwrap();
        prop_assert_eq!(fast, valid_by_enumeration(&f, &a));
    }

    #[test]
    fn fuzzed_inferences_check(seed in any::<u64>(), k4 in any::<bool>()) {
        let mode = if k4 { Mode::K4 } else { Mode::Int };
        let ds = DeductiveSystem::base(mode);
        let mut fz = InferenceFuzzer::new(&ds, seed);
        let inf = fz.rich_inference(vec![], 12);
        prop_assert!(check_inference(&ds, &inf).is_ok());
    }
}
