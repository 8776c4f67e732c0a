//! Exhaustive checks against oracles that do not share code paths with the
//! implementation: Catalan recurrence, breadth-first search over the move
//! graph, and template substitution.

use std::collections::{HashMap, VecDeque};

use coherence::fgroup::{leaf_subtrees, substitute};
use coherence::normalize::rewrite_positive;
use coherence::{
    apply_alpha, apply_word, can_apply, canonical_iso, enumerate, free_reduce, from_word,
    generator_template, invert, multiply, normalize_word, reduce_pair, Expr, Letter, TreePair,
    Word,
};

fn p(s: &str) -> Expr {
    s.parse().unwrap()
}

fn w(s: &str) -> Word {
    s.parse().unwrap()
}

fn catalan(k: usize) -> usize {
    let mut c = vec![1usize];
    for m in 1..=k {
        c.push((0..m).map(|i| c[i] * c[m - 1 - i]).sum());
    }
    c[k]
}

/// Shortest positive move sequences from `e` to every reachable tree.
fn bfs_positive(e: &Expr) -> HashMap<Expr, Vec<Word>> {
    let n = e.leaf_count();
    let mut best: HashMap<Expr, Vec<Word>> = HashMap::new();
    let mut dist: HashMap<Expr, usize> = HashMap::new();
    best.insert(e.clone(), vec![Word::empty()]);
    dist.insert(e.clone(), 0);
    let mut queue = VecDeque::from([e.clone()]);
    while let Some(cur) = queue.pop_front() {
        let d = dist[&cur];
        let words = best[&cur].clone();
        for i in 0..n {
            let Ok(next) = apply_alpha(i, &cur) else {
                continue;
            };
            let extended: Vec<Word> = words
                .iter()
                .map(|w| {
                    let mut w = w.clone();
                    w.push(Letter::pos(i));
                    w
                })
                .collect();
            match dist.get(&next) {
                None => {
                    dist.insert(next.clone(), d + 1);
                    best.insert(next.clone(), extended);
                    queue.push_back(next);
                }
                Some(&dn) if dn == d + 1 => best.get_mut(&next).unwrap().extend(extended),
                _ => {}
            }
        }
    }
    best
}

#[test]
fn enumeration_matches_catalan_recurrence() {
    let expected = [1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862];
    for n in 1..=10 {
        let all = enumerate(n).unwrap();
        assert_eq!(all.len(), catalan(n - 1), "n = {n}");
        assert_eq!(all.len(), expected[n - 1]);
        let mut rendered: Vec<String> = all.iter().map(Expr::render).collect();
        let sorted = {
            let mut s = rendered.clone();
            s.sort();
            s
        };
        assert_eq!(rendered, sorted, "enumeration is sorted by text");
        rendered.dedup();
        assert_eq!(rendered.len(), all.len(), "no duplicates");
        for e in &all {
            assert_eq!(e.leaf_count(), n);
            assert_eq!(Expr::parse(&e.render()).unwrap(), *e);
        }
    }
}

#[test]
fn normalization_words_agree_with_search() {
    // every example is a shortest path, so breadth-first search must find it
    for (src, word) in [
        ("(x*(x*x))", "a0"),
        ("(x*((x*x)*x))", "a0 a1"),
        ("(x*(x*(x*(x*x))))", "a0 a0 a0"),
        ("((x*x)*x)", "-"),
    ] {
        let e = p(src);
        let comb = Expr::left_comb(e.leaf_count()).unwrap();
        let shortest = &bfs_positive(&e)[&comb];
        assert!(shortest.contains(&w(word)), "{src}: {shortest:?}");
        assert_eq!(normalize_word(&e), w(word));
    }
}

#[test]
fn normalization_reaches_left_comb_and_is_ordered() {
    for n in 1..=10 {
        let comb = Expr::left_comb(n).unwrap();
        for e in enumerate(n).unwrap() {
            let word = normalize_word(&e);
            assert_eq!(apply_word(&word, &e).unwrap(), comb, "{e}");
            assert!(coherence::is_canonical_word(&word), "{e}: {word}");
            assert!(word.len() <= e.right_depth_potential());
            assert!(word.len() <= n * (n - 1) / 2);
        }
    }
}

#[test]
fn canonical_iso_connects_all_pairs_up_to_six_leaves() {
    for n in 1..=6 {
        let all = enumerate(n).unwrap();
        for e in &all {
            for f in &all {
                let iso = canonical_iso(e, f).unwrap();
                assert_eq!(apply_word(&iso, e).unwrap(), *f, "{e} -> {f}");
                assert_eq!(apply_word(&free_reduce(&iso), e).unwrap(), *f);
                let pair = TreePair::new(e.clone(), f.clone()).unwrap();
                assert_eq!(from_word(&iso), reduce_pair(&pair));
            }
        }
    }
}

#[test]
fn canonical_iso_sampled_up_to_ten_leaves() {
    for n in 7..=10 {
        let all = enumerate(n).unwrap();
        let step = all.len() / 23 + 1;
        for e in all.iter().step_by(step) {
            for f in all.iter().rev().step_by(step + 1) {
                let iso = canonical_iso(e, f).unwrap();
                assert_eq!(apply_word(&iso, e).unwrap(), *f);
            }
        }
    }
}

#[test]
fn every_move_is_an_instance_of_its_template() {
    for n in 1..=9 {
        for e in enumerate(n).unwrap() {
            for i in 0..n {
                let (source, target) = generator_template(i);
                let via_template =
                    leaf_subtrees(&source, &e).map(|subs| substitute(&target, &subs));
                assert_eq!(apply_alpha(i, &e).ok(), via_template, "a{i} on {e}");
                if let Ok(t) = apply_alpha(i, &e) {
                    let pair = TreePair::new(e.clone(), t).unwrap();
                    assert_eq!(
                        reduce_pair(&pair),
                        TreePair::new(source, target).unwrap(),
                        "a{i} on {e}"
                    );
                }
            }
        }
    }
}

#[test]
fn restricted_graph_on_four_leaves_is_a_tree_and_five_has_parallel_paths() {
    let four = enumerate(4).unwrap();
    let edges: usize = four
        .iter()
        .map(|e| (0..4).filter(|&i| can_apply(i, e)).count())
        .sum();
    assert_eq!(edges, 4);
    for e in &four {
        // no two distinct paths between the same endpoints
        let mut count: HashMap<Expr, usize> = HashMap::new();
        fn walk(e: &Expr, count: &mut HashMap<Expr, usize>) {
            *count.entry(e.clone()).or_default() += 1;
            for i in 0..e.leaf_count() {
                if let Ok(t) = apply_alpha(i, e) {
                    walk(&t, count);
                }
            }
        }
        walk(e, &mut count);
        assert!(count.values().all(|&c| c == 1));
    }

    let e = p("((x*(x*x))*(x*x))");
    let comb = Expr::left_comb(5).unwrap();
    let route_a = apply_word(&w("a1 a0"), &e).unwrap();
    let route_b = apply_word(&w("a0 a2"), &e).unwrap();
    assert_eq!(route_a, comb);
    assert_eq!(route_b, comb);
    assert_eq!(rewrite_positive(&w("a1 a0")).unwrap(), w("a0 a2"));
}

#[test]
fn presentation_relations_hold_in_application_order() {
    for j in 1..=8 {
        for i in 0..j {
            let lhs = from_word(&Word::new(vec![Letter::pos(j), Letter::pos(i)]));
            let rhs = from_word(&Word::new(vec![Letter::pos(i), Letter::pos(j + 1)]));
            assert_eq!(lhs, rhs, "i={i} j={j}");
        }
    }
}

#[test]
fn conjugation_by_a0_shifts_the_index() {
    let a0 = from_word(&w("a0"));
    for j in 1..=8 {
        let aj = TreePair::generator(Letter::pos(j));
        let next = TreePair::generator(Letter::pos(j + 1));
        // apply A0, then a_j, then a0
        let conj = multiply(&multiply(&invert(&a0), &aj), &a0);
        assert_eq!(conj, next, "j={j}");
        // the opposite order is a different element
        let other = multiply(&multiply(&a0, &aj), &invert(&a0));
        assert_ne!(other, next, "j={j}");
    }
}

#[test]
fn product_of_a0_with_itself() {
    let a0 = from_word(&w("a0"));
    let sq = multiply(&a0, &a0);
    assert_eq!(sq.to_string(), "(x*(x*(x*x))) | (((x*x)*x)*x)");
    // the same element as the path along the right comb
    let e = Expr::right_comb(4).unwrap();
    let end = apply_word(&w("a0 a0"), &e).unwrap();
    assert_eq!(sq, reduce_pair(&TreePair::new(e, end).unwrap()));
}

#[test]
fn rewrite_positive_preserves_the_element() {
    let letters = [0usize, 1, 2, 3];
    let mut words = vec![Word::empty()];
    for _ in 0..4 {
        words = words
            .iter()
            .flat_map(|w| {
                letters.iter().map(move |&i| {
                    let mut next = w.clone();
                    next.push(Letter::pos(i));
                    next
                })
            })
            .collect();
        for word in &words {
            let sorted = rewrite_positive(word).unwrap();
            assert!(coherence::is_canonical_word(&sorted));
            assert_eq!(from_word(&sorted), from_word(word), "{word}");
        }
    }
}

#[test]
fn canonical_word_round_trips_on_small_pairs() {
    for n in 1..=6 {
        let all = enumerate(n).unwrap();
        for d in &all {
            for r in &all {
                let pair = reduce_pair(&TreePair::new(d.clone(), r.clone()).unwrap());
                let word = coherence::canonical_word(&pair);
                assert_eq!(from_word(&word), pair, "{pair}");
            }
        }
    }
}
