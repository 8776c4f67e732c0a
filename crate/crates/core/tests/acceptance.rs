//! Acceptance battery. Runs without the libtest harness so that every
//! criterion prints one PASS/FAIL line; exits non-zero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use coherence::verify::{
    check_lemma_uniqueness, check_observations, check_parallel_paths, check_pentagon,
    check_presentation, check_rectangle, Report,
};
use coherence::{
    apply_alpha, apply_word, canonical_iso, enumerate, generator_template, Expr, RotationGraph,
    SpineRotations, Verifier, Word,
};

const SEED: u64 = 20041;
const RANDOM_WORDS: usize = 1000;
const RANDOM_LEN: usize = 12;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    ok: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome {
        ok: true,
        detail: detail.into(),
    }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome {
        ok: false,
        detail: detail.into(),
    }
}

fn from_report(r: &Report, extra: &str) -> Outcome {
    let summary = format!(
        "{} over {}..={}: {} cases, {} violations{extra}",
        r.suite,
        r.n_range[0],
        r.n_range[1],
        r.cases_checked,
        r.violations.len()
    );
    if r.passed() {
        pass(summary)
    } else {
        let first = &r.violations[0];
        fail(format!("{summary}; first: {} {}", first.case, first.detail))
    }
}

fn e(s: &str) -> Expr {
    s.parse().expect("literal expression")
}

fn catalan(k: usize) -> usize {
    let mut c = vec![1usize];
    for m in 1..=k {
        c.push((0..m).map(|i| c[i] * c[m - 1 - i]).sum());
    }
    c[k]
}

fn observations() -> Outcome {
    let r = match check_observations(10) {
        Ok(r) => r,
        Err(err) => return fail(err.to_string()),
    };
    if !r.passed() {
        return from_report(&r, "");
    }
    let start = Instant::now();
    let r11 = match Verifier::default().check_observations(11) {
        Ok(r) => r,
        Err(err) => return fail(err.to_string()),
    };
    let took = start.elapsed();
    let at_11 = r11.cases_per_n.last().map(|[_, c]| *c).unwrap_or(0);
    if !r11.passed() {
        return from_report(&r11, "");
    }
    if at_11 != 16_796 || took > Duration::from_secs(60) {
        return fail(format!("n=11: {at_11} expressions in {took:?}"));
    }
    from_report(
        &r,
        &format!("; n=11 adds {at_11} expressions in {took:.2?}"),
    )
}

fn lemma() -> Outcome {
    let start = Instant::now();
    let r = match check_lemma_uniqueness(8) {
        Ok(r) => r,
        Err(err) => return fail(err.to_string()),
    };
    let took = start.elapsed();
    if r.cases_per_n.last() != Some(&[8, 429]) {
        return fail(format!(
            "expected 429 expressions at n=8, got {:?}",
            r.cases_per_n
        ));
    }
    if took > Duration::from_secs(30) {
        return fail(format!("took {took:?}"));
    }
    from_report(&r, &format!(" in {took:.2?}"))
}

fn rectangle() -> Outcome {
    let t = SpineRotations;
    let f = e("((x*(x*x))*(x*x))");
    let comb = Expr::left_comb(5).expect("n > 0");
    use coherence::MoveTable;
    let via_j = t.forward(1, &f).and_then(|g| t.forward(0, &g));
    let via_i = t.forward(0, &f).and_then(|f1| t.forward(2, &f1));
    if via_j.as_ref() != Ok(&comb) || via_i.as_ref() != Ok(&comb) {
        return fail(format!("five-leaf square: {via_j:?} vs {via_i:?}"));
    }
    match check_rectangle(9) {
        Ok(r) => from_report(&r, "; five-leaf square closes at I_5"),
        Err(err) => fail(err.to_string()),
    }
}

fn parallel_paths() -> Outcome {
    match check_parallel_paths(6) {
        Ok(r) => from_report(&r, ""),
        Err(err) => fail(err.to_string()),
    }
}

fn displayed_objects() -> Outcome {
    let cases = [
        (0, "(x*(x*x))", "((x*x)*x)"),
        (0, "((x*x)*(x*x))", "(((x*x)*x)*x)"),
        (0, "(x*((x*x)*x))", "((x*(x*x))*x)"),
        (1, "((x*(x*x))*x)", "(((x*x)*x)*x)"),
    ];
    for (i, src, dst) in cases {
        match apply_alpha(i, &e(src)) {
            Ok(t) if t.render() == dst => {}
            other => return fail(format!("a{i} on {src}: {other:?}, expected {dst}")),
        }
    }
    let (s, t) = generator_template(0);
    if (s.render().as_str(), t.render().as_str()) != ("(x*(x*x))", "((x*x)*x)") {
        return fail(format!("template 0 is ({s}, {t})"));
    }
    let (s, t) = generator_template(1);
    if (s.render().as_str(), t.render().as_str()) != ("((x*(x*x))*x)", "(((x*x)*x)*x)") {
        return fail(format!("template 1 is ({s}, {t})"));
    }
    pass("alpha_0, alpha', alpha'', alpha_1 and the generator pairs reproduce exactly")
}

fn presentation() -> Outcome {
    let r = check_presentation(8);
    let relations: usize = r
        .cases_per_n
        .iter()
        .map(|[j, c]| if *j == 0 { *c } else { c - 1 })
        .sum();
    let conjugations = r.cases_checked - relations;
    if relations != 36 || conjugations != 8 {
        return fail(format!(
            "{relations} relations, {conjugations} conjugations"
        ));
    }
    from_report(&r, " (36 relations, 8 conjugations)")
}

fn group_axioms() -> Outcome {
    let r = Verifier::default()
        .seed(SEED)
        .random_cases(RANDOM_WORDS, RANDOM_LEN)
        .check_group_axioms(4);
    from_report(&r, "")
}

fn path_oracle() -> Outcome {
    let r = Verifier::default()
        .seed(SEED)
        .random_cases(RANDOM_WORDS, RANDOM_LEN)
        .check_path_oracle(7);
    match r {
        Ok(r) => from_report(&r, ""),
        Err(err) => fail(err.to_string()),
    }
}

fn pentagon() -> Outcome {
    let t1 = e("(x*(x*(x*x)))");
    let t2 = e("(x*((x*x)*x))");
    let expected: Word = "a0 a0 A1 A0".parse().expect("literal word");
    match canonical_iso(&t1, &t2) {
        Ok(w) if w == expected => {}
        other => return fail(format!("canonical_iso(T1, T2) = {other:?}")),
    }
    if apply_word(&expected, &t1).as_ref() != Ok(&t2) {
        return fail("a0 a0 A1 A0 does not carry T1 to T2");
    }
    match check_pentagon(7) {
        Ok(r) => from_report(&r, "; T1 -> T2 is a0 a0 A1 A0"),
        Err(err) => fail(err.to_string()),
    }
}

fn structural_counts() -> Outcome {
    for n in 1..=10 {
        let got = enumerate(n).map(|v| v.len()).unwrap_or(0);
        if got != catalan(n - 1) {
            return fail(format!(
                "n={n}: {got} expressions, Catalan gives {}",
                catalan(n - 1)
            ));
        }
    }
    let restricted = RotationGraph::build(4, false, 12).map(|g| g.edges.len());
    let full = RotationGraph::build(4, true, 12).map(|g| g.edges.len());
    if restricted != Ok(4) || full != Ok(5) {
        return fail(format!(
            "n=4 edges: restricted {restricted:?}, full {full:?}"
        ));
    }
    pass("Catalan counts for n <= 10; n=4 graph has 4 restricted and 5 full edges")
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("A-observations, n <= 10 (and n = 11)", observations),
        ("ordered normalizing word is unique, n <= 8", lemma),
        ("rectangle commutes, n <= 9", rectangle),
        ("parallel positive paths agree, n <= 6", parallel_paths),
        ("displayed moves and generator pair", displayed_objects),
        ("presentation relations and conjugation", presentation),
        ("group laws and canonical-word round trips", group_axioms),
        ("path oracle, n <= 7", path_oracle),
        ("pentagon and general rotations, n <= 7", pentagon),
        ("structural counts", structural_counts),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let status = if outcome.ok { "PASS" } else { "FAIL" };
        if !outcome.ok {
            failed += 1;
        }
        println!(
            "criterion {:>2} {status}: {name} [{:.2?}] {}",
            k + 1,
            start.elapsed(),
            outcome.detail
        );
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
