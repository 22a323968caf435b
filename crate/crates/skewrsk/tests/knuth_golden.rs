use skewrsk::cylinder::ss_forward_general;
use skewrsk::knuth::{
    format_weighted_word, gen_dual_knuth_neighbors, gen_knuth_neighbors, invariance_suite, knuth_neighbors,
    parse_weighted_word, word_to_biword, WeightedLetter,
};
use skewrsk::run_dynamics;

fn w(s: &str) -> Vec<WeightedLetter> {
    parse_weighted_word(s).unwrap()
}

fn digits(x: &[u32]) -> String {
    x.iter().map(|d| d.to_string()).collect()
}

/// Every 3-letter word over {1,2,3} with a move, from an independent rewriting script.
const THREE_LETTER: &str = "121:211 131:311 132:312 211:121 212:221 213:231 221:212 231:213 232:322 311:131 312:132 313:331 322:232 323:332 331:313 332:323";

#[test]
fn classical_three_letter_words() {
    let mut got = Vec::new();
    for a in 1..=3 {
        for b in 1..=3 {
            for c in 1..=3 {
                let word = [a, b, c];
                let nb = knuth_neighbors(&word);
                if !nb.is_empty() {
                    let imgs: Vec<String> = nb.iter().map(|m| digits(&m.word)).collect();
                    got.push(format!("{}:{}", digits(&word), imgs.join(",")));
                }
            }
        }
    }
    assert_eq!(got.join(" "), THREE_LETTER);
    // x z y ⇌ z x y.
    assert!(knuth_neighbors(&[1, 3, 2]).iter().any(|m| m.word == vec![3, 1, 2] && m.kind == 1));
}

#[test]
fn zero_weights_are_classical() {
    let word = [2, 3, 1, 3, 2];
    let weighted: Vec<WeightedLetter> = word.iter().map(|&a| WeightedLetter::new(a, 0)).collect();
    let a: Vec<Vec<u32>> = knuth_neighbors(&word).into_iter().map(|m| m.word).collect();
    let b: Vec<Vec<u32>> =
        gen_knuth_neighbors(&weighted).into_iter().map(|m| m.word.iter().map(|l| l.a).collect()).collect();
    assert_eq!(a, b);
    assert!(gen_knuth_neighbors(&w("2^(1)")).is_empty());
}

#[test]
fn weighted_sample() {
    let moves = gen_knuth_neighbors(&w("2^(1) 1^(-1) 3^(0) 1^(0) 2^(1)"));
    assert_eq!(moves.len(), 1);
    assert_eq!(moves[0].kind, 1);
    assert_eq!(format_weighted_word(&moves[0].word), "1^(-1) 2^(1) 3^(0) 1^(0) 2^(1)");
    let rep = invariance_suite(&w("2^(1) 1^(-1) 3^(0) 1^(0) 2^(1)"), 3, false, None).unwrap();
    assert!(rep.ok());
}

#[test]
fn dual_moves() {
    let m = gen_dual_knuth_neighbors(&w("1 3 2")).unwrap();
    assert_eq!(m.len(), 1);
    assert_eq!(format_weighted_word(&m[0].word), "2^(0) 3^(0) 1^(0)");
    // The weight chain fails.
    assert!(gen_dual_knuth_neighbors(&w("1^(0) 2^(1) 3^(2)")).unwrap().is_empty());
    assert!(gen_dual_knuth_neighbors(&w("1^(0) 3^(1) 2^(2)")).unwrap().is_empty());
    let m = gen_dual_knuth_neighbors(&w("2^(2) 4^(1) 1^(1) 3^(0)")).unwrap();
    assert_eq!(m.iter().map(|x| x.kind).collect::<Vec<_>>(), vec![1, 2]);
    assert!(m.iter().all(|x| format_weighted_word(&x.word) == "3^(2) 4^(1) 1^(1) 2^(0)"));
    assert!(gen_dual_knuth_neighbors(&w("1 1 2")).is_err());
    assert!(gen_dual_knuth_neighbors(&w("2 1")).unwrap().is_empty());
    assert!(invariance_suite(&w("2^(2) 4^(1) 1^(1) 3^(0)"), 4, true, None).unwrap().ok());
}

fn p_at(word: &str, t: i64) -> skewrsk::SkewTableau {
    let m = word_to_biword(&w(word), 2).unwrap().to_matrix();
    run_dynamics(&ss_forward_general(&m).unwrap(), t).p
}

#[test]
fn equal_p_without_moves() {
    // Equal P at t = 0 but not connected by moves.
    assert_eq!(p_at("1^(1) 2^(0)", 0), p_at("2^(0) 1^(1)", 0));
    assert!(gen_knuth_neighbors(&w("1^(1) 2^(0)")).is_empty());
    // Equal P_t for every t, still not connected.
    for t in -4..=4 {
        assert_eq!(p_at("1^(2) 2^(0)", t), p_at("2^(0) 1^(2)", t));
    }
    // A swap that is not a move changes P.
    assert_ne!(p_at("1 2", 0), p_at("2 1", 0));
}

#[test]
fn neighbor_relation_is_symmetric() {
    for s in ["2^(1) 1^(-1) 3^(0) 1^(0) 2^(1)", "3^(0) 1^(1) 2^(1) 2^(0)", "1 3 2 2 1"] {
        for mv in gen_knuth_neighbors(&w(s)) {
            assert!(gen_knuth_neighbors(&mv.word).iter().any(|b| b.word == w(s)));
        }
    }
}
