//! Exhaustive and seeded checks of the whole system.
//!
//! Every suite runs against a [`MoveTable`], normally [`SpineRotations`].
//! Group-level comparisons always go through the tree-pair arithmetic in
//! [`crate::fgroup`], which never consults the table, so a wrong table shows
//! up as a disagreement between the two.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::expr::{enumerate_capped, Expr, DEFAULT_CAP};
use crate::fgroup::{
    canonical_word_in, from_word, invert, is_prefix_of, leaf_subtrees, multiply, substitute,
    TreePair,
};
use crate::moves::{generator_template, rotate_at, Letter, MoveTable, Sign, SpineRotations};
use crate::normalize::{
    apply_word_in, canonical_iso_in, normalize_word_in, rewrite_positive, Word,
};

static SPINE: SpineRotations = SpineRotations;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub case: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub suite: String,
    /// Inclusive bounds on the leaf count (or generator index for the
    /// presentation suite).
    pub n_range: [usize; 2],
    pub cases_checked: usize,
    /// `[n, cases]` for each `n` in the range.
    pub cases_per_n: Vec<[usize; 2]>,
    pub violations: Vec<Violation>,
    pub elapsed_ms: u64,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// Zeroes the wall-clock field so that reports compare byte for byte.
    pub fn without_timing(mut self) -> Self {
        self.elapsed_ms = 0;
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "suite: {}", self.suite)?;
        writeln!(f, "n_range: {}..={}", self.n_range[0], self.n_range[1])?;
        let per_n: Vec<String> = self
            .cases_per_n
            .iter()
            .map(|[n, c]| format!("{n}:{c}"))
            .collect();
        writeln!(
            f,
            "cases_checked: {} ({})",
            self.cases_checked,
            per_n.join(" ")
        )?;
        writeln!(f, "violations: {}", self.violations.len())?;
        for v in &self.violations {
            writeln!(f, "  {}: {}", v.case, v.detail)?;
        }
        writeln!(f, "elapsed_ms: {}", self.elapsed_ms)?;
        write!(f, "result: {}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Observations,
    Lemma,
    Rectangle,
    ParallelPaths,
    Pentagon,
    Presentation,
    PathOracle,
    GroupAxioms,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Observations,
        Suite::Lemma,
        Suite::Rectangle,
        Suite::ParallelPaths,
        Suite::Pentagon,
        Suite::Presentation,
        Suite::PathOracle,
        Suite::GroupAxioms,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Observations => "observations",
            Suite::Lemma => "lemma",
            Suite::Rectangle => "rectangle",
            Suite::ParallelPaths => "parallel",
            Suite::Pentagon => "pentagon",
            Suite::Presentation => "presentation",
            Suite::PathOracle => "paths",
            Suite::GroupAxioms => "group",
        }
    }

    /// Bound used when none is given: a leaf count, except for
    /// `presentation` (largest generator index) and `group` (word length).
    pub fn default_bound(self) -> usize {
        match self {
            Suite::Observations => 10,
            Suite::Lemma => 8,
            Suite::Rectangle => 9,
            Suite::ParallelPaths => 6,
            Suite::Pentagon => 7,
            Suite::Presentation => 8,
            Suite::PathOracle => 7,
            Suite::GroupAxioms => 4,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

/// Collects violations for one case.
struct Checker<'c> {
    case: &'c str,
    out: Vec<Violation>,
}

impl<'c> Checker<'c> {
    fn new(case: &'c str) -> Self {
        Checker {
            case,
            out: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        if !ok {
            self.fail(detail());
        }
    }

    fn fail(&mut self, detail: String) {
        self.out.push(Violation {
            case: self.case.to_string(),
            detail,
        });
    }
}

/// Result of checking one unit of work: how many cases it covered and what
/// went wrong.
type Outcome = (usize, Vec<Violation>);

pub struct Verifier<'t> {
    table: &'t dyn MoveTable,
    seed: u64,
    jobs: Option<usize>,
    cap: usize,
    walks: usize,
    walk_len: usize,
}

impl Default for Verifier<'static> {
    fn default() -> Self {
        Verifier::new(&SPINE)
    }
}

impl<'t> Verifier<'t> {
    pub fn new(table: &'t dyn MoveTable) -> Self {
        Verifier {
            table,
            seed: 0,
            jobs: None,
            cap: DEFAULT_CAP,
            walks: 1000,
            walk_len: 12,
        }
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    /// Worker threads; `None` lets rayon decide.
    pub fn jobs(mut self, jobs: Option<usize>) -> Self {
        self.jobs = jobs;
        self
    }

    pub fn cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    /// Random walks (path oracle) and random words (group axioms) to draw,
    /// and their maximal length.
    pub fn random_cases(mut self, count: usize, max_len: usize) -> Self {
        self.walks = count;
        self.walk_len = max_len;
        self
    }

    pub fn run(&self, suite: Suite, bound: Option<usize>) -> Result<Report> {
        let bound = bound.unwrap_or(suite.default_bound());
        match suite {
            Suite::Observations => self.check_observations(bound),
            Suite::Lemma => self.check_lemma_uniqueness(bound),
            Suite::Rectangle => self.check_rectangle(bound),
            Suite::ParallelPaths => self.check_parallel_paths(bound),
            Suite::Pentagon => self.check_pentagon(bound),
            Suite::Presentation => Ok(self.check_presentation(bound)),
            Suite::PathOracle => self.check_path_oracle(bound),
            Suite::GroupAxioms => Ok(self.check_group_axioms(bound)),
        }
    }

    fn in_pool<R: Send>(&self, work: impl FnOnce() -> R + Send) -> R {
        match self.jobs {
            Some(k) => rayon::ThreadPoolBuilder::new()
                .num_threads(k.max(1))
                .build()
                .expect("thread pool")
                .install(work),
            None => work(),
        }
    }

    /// Runs `check` on every expression with `1..=n_max` leaves, in
    /// parallel, and merges the outcomes in enumeration order.
    fn sweep<F>(&self, suite: Suite, n_max: usize, check: F) -> Result<Report>
    where
        F: Fn(&dyn MoveTable, usize, &Expr) -> Outcome + Sync,
    {
        let start = Instant::now();
        let mut per_n = Vec::new();
        let mut violations = Vec::new();
        let table = self.table;
        for n in 1..=n_max {
            let exprs = enumerate_capped(n, self.cap)?;
            let outcomes: Vec<Outcome> =
                self.in_pool(|| exprs.par_iter().map(|e| check(table, n, e)).collect());
            let mut cases = 0;
            for (c, v) in outcomes {
                cases += c;
                violations.extend(v);
            }
            per_n.push([n, cases]);
        }
        Ok(finish(suite, [1, n_max], per_n, violations, start))
    }

    /// The five observations about which moves apply and how they change
    /// normalization level and weight, plus the template-instance reading
    /// of each move.
    pub fn check_observations(&self, n_max: usize) -> Result<Report> {
        self.sweep(Suite::Observations, n_max, |table, n, e| {
            let case = e.render();
            let mut c = Checker::new(&case);
            let m = e.metrics();
            let normal = e.is_fully_normalized();
            c.check(n < 2 || m.level != n - 1, || {
                format!("level {} equals n - 1", m.level)
            });
            c.check((m.weight == 1) == normal, || {
                format!("weight {} but fully normalized = {normal}", m.weight)
            });
            c.check((m.level == n) == normal, || {
                format!("level {} but fully normalized = {normal}", m.level)
            });
            for i in 0..=n {
                let first = table.forward(i, e);
                let again = table.forward(i, e);
                c.check(first == again, || format!("a{i} is not deterministic"));
                // an instance of the template is exactly a tree having the
                // template's source as a caret-prefix
                let (source, target) = generator_template(i);
                let instance = leaf_subtrees(&source, e).map(|subs| substitute(&target, &subs));
                c.check(first.as_ref().ok() == instance.as_ref(), || {
                    format!(
                        "a{i}: table gives {:?}, template instance gives {:?}",
                        first.as_ref().ok().map(Expr::render),
                        instance.as_ref().map(Expr::render)
                    )
                });
                let Ok(t) = first else { continue };
                c.check(t.leaf_count() == n, || {
                    format!("a{i} changes the leaf count")
                });
                c.check(i + 3 <= n, || format!("a{i} applies on {n} leaves"));
                c.check(i >= m.level, || {
                    format!("a{i} applies below level {}", m.level)
                });
                if m.weight > 1 && i > m.level {
                    let mt = t.metrics();
                    c.check(mt == m, || {
                        format!("a{i} moves metrics {m:?} to {mt:?} ({})", t.render())
                    });
                }
            }
            if m.weight > 1 {
                match table.forward(m.level, e) {
                    Ok(t) => {
                        let mt = t.metrics();
                        c.check(
                            mt.level > m.level || (mt.level == m.level && mt.weight < m.weight),
                            || format!("a{} does not descend: {m:?} to {mt:?}", m.level),
                        );
                    }
                    Err(err) => c.fail(format!(
                        "a{} at the level is not applicable: {err}",
                        m.level
                    )),
                }
            }
            (1, c.out)
        })
    }

    /// Depth-first search over positive words with non-decreasing indices:
    /// exactly one reaches the left comb, and it is the normalizing word.
    pub fn check_lemma_uniqueness(&self, n_max: usize) -> Result<Report> {
        self.sweep(Suite::Lemma, n_max, |table, n, e| {
            let case = e.render();
            let mut c = Checker::new(&case);
            let comb = Expr::left_comb(n).expect("n >= 1");
            let mut found = Vec::new();
            let mut word = Word::empty();
            let depth_limit = n * (n - 1) / 2;
            let mut truncated = false;
            ordered_words(
                table,
                e,
                &comb,
                0,
                depth_limit,
                &mut word,
                &mut found,
                &mut truncated,
            );
            c.check(!truncated, || {
                format!("ordered words longer than {depth_limit} exist")
            });
            c.check(found.len() == 1, || {
                let shown: Vec<String> = found.iter().map(ToString::to_string).collect();
                format!(
                    "{} ordered words reach I_{n}: [{}]",
                    found.len(),
                    shown.join(", ")
                )
            });
            match normalize_word_in(table, e) {
                Ok(w) => {
                    c.check(found.first() == Some(&w), || {
                        format!("normalize_word gives {w}, search found {:?}", found.first())
                    });
                    c.check(w.len() <= e.right_depth_potential(), || {
                        format!("word {w} longer than the rotation potential")
                    });
                }
                Err(err) => c.fail(err.to_string()),
            }
            (1, c.out)
        })
    }

    /// For `i < j` with both moves defined, `α_j` then `α_i` equals `α_i`
    /// then `α_{j+1}`.
    pub fn check_rectangle(&self, n_max: usize) -> Result<Report> {
        self.sweep(Suite::Rectangle, n_max, |table, n, e| {
            let case = e.render();
            let mut c = Checker::new(&case);
            let level = e.metrics().level;
            let mut squares = 0;
            for i in 0..n {
                let Ok(f1) = table.forward(i, e) else { continue };
                for j in i + 1..n {
                    let Ok(g) = table.forward(j, e) else { continue };
                    squares += 1;
                    let down_right = table.forward(j + 1, &f1);
                    let right_down = table.forward(i, &g);
                    match (&down_right, &right_down) {
                        (Ok(a), Ok(b)) => c.check(a == b, || {
                            format!("i={i} j={j}: a{i},a{} gives {a}, a{j},a{i} gives {b}", j + 1)
                        }),
                        _ => c.fail(format!(
                            "i={i} j={j}: a{} after a{i} defined = {}, a{i} after a{j} defined = {}",
                            j + 1,
                            down_right.is_ok(),
                            right_down.is_ok()
                        )),
                    }
                    if i == level {
                        let lg = g.metrics().level;
                        c.check(lg == level, || {
                            format!("i={i} j={j}: a{j} moved the level to {lg}")
                        });
                    }
                }
            }
            (squares, c.out)
        })
    }

    /// All positive move paths out of each tree, grouped by endpoint: every
    /// group sorts to one word under the relations and maps to the reduced
    /// pair of its endpoints. Also requires the left comb to be reachable.
    pub fn check_parallel_paths(&self, n_max: usize) -> Result<Report> {
        self.sweep(Suite::ParallelPaths, n_max, |table, n, e| {
            let case = e.render();
            let mut c = Checker::new(&case);
            let mut paths: PathsByEnd = BTreeMap::new();
            let mut word = Word::empty();
            let mut truncated = false;
            all_positive_paths(
                table,
                e,
                n,
                n * (n - 1) / 2,
                &mut word,
                &TreePair::identity(),
                &mut paths,
                &mut truncated,
            );
            c.check(!truncated, || "positive paths do not terminate".into());
            let comb = Expr::left_comb(n).expect("n >= 1");
            c.check(paths.contains_key(&comb.render()), || {
                "left comb not reachable by positive moves".into()
            });
            for (key, (f, group)) in &paths {
                let expected = TreePair::new(e.clone(), f.clone())
                    .expect("moves keep the leaf count")
                    .reduced();
                let mut normal: Option<Word> = None;
                for (w, image) in group {
                    let nf = rewrite_positive(w).expect("positive");
                    match &normal {
                        None => normal = Some(nf),
                        Some(first) => c.check(*first == nf, || {
                            format!("to {key}: {w} sorts to {nf}, another path sorts to {first}")
                        }),
                    }
                    c.check(*image == expected, || {
                        format!("to {key}: {w} maps to {image}, expected {expected}")
                    });
                }
            }
            (paths.len(), c.out)
        })
    }

    /// Every rotation, spine or not, is expressed by the canonical
    /// isomorphism between its endpoints; on four leaves the right-child
    /// rotation gives `a0 a0 A1 A0`.
    pub fn check_pentagon(&self, n_max: usize) -> Result<Report> {
        let start = Instant::now();
        let table = self.table;
        let mut violations = Vec::new();
        {
            let t1 = Expr::right_comb(4).expect("n >= 1");
            let t2: Expr = "(x*((x*x)*x))".parse().expect("literal");
            let case = format!("{t1} -> {t2}");
            let mut c = Checker::new(&case);
            let expected: Word = "a0 a0 A1 A0".parse().expect("literal");
            match canonical_iso_in(table, &t1, &t2) {
                Ok(w) => {
                    c.check(w == expected, || format!("word {w}, expected {expected}"));
                    c.check(apply_word_in(table, &w, &t1).as_ref() == Ok(&t2), || {
                        format!("{w} does not carry T1 to T2")
                    });
                }
                Err(err) => c.fail(err.to_string()),
            }
            let pair = TreePair::new(t1, t2).expect("same leaves").reduced();
            c.check(from_word(&expected) == pair, || {
                format!(
                    "{expected} maps to {}, expected {pair}",
                    from_word(&expected)
                )
            });
            violations.extend(c.out);
        }
        let mut report = self.sweep(Suite::Pentagon, n_max, |table, _n, e| {
            let mut out = Vec::new();
            let mut rotations = 0;
            for address in e.internal_addresses() {
                let Ok(target) = rotate_at(e, &address) else {
                    continue;
                };
                rotations += 1;
                let case = format!("{e} @{address}");
                let mut c = Checker::new(&case);
                let pair = TreePair::new(e.clone(), target.clone())
                    .expect("same leaves")
                    .reduced();
                match canonical_iso_in(table, e, &target) {
                    Ok(w) => {
                        c.check(apply_word_in(table, &w, e).as_ref() == Ok(&target), || {
                            format!("{w} does not reach {target}")
                        });
                        let image = from_word(&w);
                        c.check(image == pair, || {
                            format!("{w} maps to {image}, expected {pair}")
                        });
                        if let Some(i) = address.spine_depth() {
                            let gen = TreePair::generator(Letter::pos(i));
                            c.check(image == gen, || format!("spine rotation is not a{i}"));
                        }
                    }
                    Err(err) => c.fail(err.to_string()),
                }
                out.extend(c.out);
            }
            (rotations, out)
        })?;
        violations.append(&mut report.violations);
        report.violations = violations;
        report.cases_checked += 1;
        report.elapsed_ms = start.elapsed().as_millis() as u64;
        Ok(report)
    }

    /// Relations `[a_j, a_i] = [a_i, a_{j+1}]` for `0 <= i < j <= i_max`
    /// and conjugation `A0 a_j a0 = a_{j+1}` for `1 <= j <= i_max`, with
    /// each generator taken as the table's move on its template source.
    pub fn check_presentation(&self, i_max: usize) -> Report {
        let start = Instant::now();
        let mut violations = Vec::new();
        let mut gens = Vec::new();
        for k in 0..=i_max + 1 {
            let (source, target) = generator_template(k);
            let case = format!("a{k}");
            let mut c = Checker::new(&case);
            match self.table.forward(k, &source) {
                Ok(t) => {
                    c.check(t == target, || {
                        format!("template maps to {t}, expected {target}")
                    });
                    gens.push(Some(
                        TreePair::new(source, t).expect("same leaves").reduced(),
                    ));
                }
                Err(err) => {
                    c.fail(format!("not defined on its template: {err}"));
                    gens.push(None);
                }
            }
            violations.extend(c.out);
        }
        let mut per_index = Vec::new();
        let mut cases = 0;
        for j in 0..=i_max {
            let mut here = 0;
            for i in 0..j {
                here += 1;
                let case = format!("a{j} a{i} = a{i} a{}", j + 1);
                let mut c = Checker::new(&case);
                if let (Some(gi), Some(gj), Some(gj1)) = (&gens[i], &gens[j], &gens[j + 1]) {
                    let lhs = multiply(gj, gi);
                    let rhs = multiply(gi, gj1);
                    c.check(lhs == rhs, || format!("{lhs} != {rhs}"));
                } else {
                    c.fail("generator missing".into());
                }
                violations.extend(c.out);
            }
            if j >= 1 {
                here += 1;
                let case = format!("A0 a{j} a0 = a{}", j + 1);
                let mut c = Checker::new(&case);
                if let (Some(g0), Some(gj), Some(gj1)) = (&gens[0], &gens[j], &gens[j + 1]) {
                    let conj = multiply(&multiply(&invert(g0), gj), g0);
                    c.check(conj == *gj1, || format!("{conj} != {gj1}"));
                } else {
                    c.fail("generator missing".into());
                }
                violations.extend(c.out);
            }
            cases += here;
            per_index.push([j, here]);
        }
        let mut report = finish(
            Suite::Presentation,
            [0, i_max],
            per_index,
            violations,
            start,
        );
        report.cases_checked = cases;
        report
    }

    /// Every single edge, then seeded random mixed-sign walks: the product
    /// of the letters' generator pairs equals the reduced pair of the
    /// endpoints.
    pub fn check_path_oracle(&self, n_max: usize) -> Result<Report> {
        let start = Instant::now();
        let mut report = self.sweep(Suite::PathOracle, n_max, |table, n, e| {
            let mut out = Vec::new();
            let mut edges = 0;
            for i in 0..=n {
                let (source, _) = generator_template(i);
                let case = format!("{e} a{i}");
                let mut c = Checker::new(&case);
                c.check(is_prefix_of(&source, e) == table.can_apply(i, e), || {
                    "applicability differs from the template".into()
                });
                out.extend(c.out);
                for letter in [Letter::pos(i), Letter::neg(i)] {
                    let Ok(t) = table.apply(letter, e) else {
                        continue;
                    };
                    edges += 1;
                    let case = format!("{e} {letter}");
                    let mut c = Checker::new(&case);
                    let image = TreePair::generator(letter);
                    let pair = TreePair::new(e.clone(), t).expect("same leaves").reduced();
                    c.check(image == pair, || {
                        format!("edge pair {pair}, generator {image}")
                    });
                    out.extend(c.out);
                }
            }
            (edges, out)
        })?;

        if n_max >= 3 {
            let pools: Vec<Vec<Expr>> = (3..=n_max)
                .map(|n| enumerate_capped(n, self.cap))
                .collect::<Result<_>>()?;
            let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
            let mut walks = Vec::with_capacity(self.walks);
            for _ in 0..self.walks {
                let pool = &pools[rng.random_range(0..pools.len())];
                let start_expr = pool[rng.random_range(0..pool.len())].clone();
                let len = rng.random_range(1..=self.walk_len.max(1));
                let n = start_expr.leaf_count();
                let mut cur = start_expr.clone();
                let mut word = Word::empty();
                for _ in 0..len {
                    let options: Vec<(Letter, Expr)> = (0..n)
                        .flat_map(|i| [Letter::pos(i), Letter::neg(i)])
                        .filter_map(|l| self.table.apply(l, &cur).ok().map(|t| (l, t)))
                        .collect();
                    if options.is_empty() {
                        break;
                    }
                    let (l, t) = options[rng.random_range(0..options.len())].clone();
                    word.push(l);
                    cur = t;
                }
                walks.push((start_expr, word, cur));
            }
            let found: Vec<Vec<Violation>> = self.in_pool(|| {
                walks
                    .par_iter()
                    .map(|(s, w, t)| {
                        let case = format!("{s} [{w}]");
                        let mut c = Checker::new(&case);
                        let image = from_word(w);
                        let pair = TreePair::new(s.clone(), t.clone())
                            .expect("same leaves")
                            .reduced();
                        c.check(image == pair, || {
                            format!("walk maps to {image}, expected {pair}")
                        });
                        c.out
                    })
                    .collect()
            });
            report.violations.extend(found.into_iter().flatten());
            report.cases_checked += walks.len();
        }
        report.elapsed_ms = start.elapsed().as_millis() as u64;
        Ok(report)
    }

    /// Group laws, inversion, canonical-word round trips and invariance of
    /// the canonical word under single relation rewrites, on every word of
    /// length `<= max_len` over `a0..a3, A0..A3` plus seeded random words.
    pub fn check_group_axioms(&self, max_len: usize) -> Report {
        let start = Instant::now();
        let alphabet: Vec<Letter> = (0..4)
            .flat_map(|i| [Letter::pos(i), Letter::neg(i)])
            .collect();
        let mut words = vec![Word::empty()];
        let mut layer = vec![Word::empty()];
        let mut per_len = vec![[0, 1]];
        for len in 1..=max_len {
            layer = layer
                .iter()
                .flat_map(|w| {
                    alphabet.iter().map(move |&l| {
                        let mut next = w.clone();
                        next.push(l);
                        next
                    })
                })
                .collect();
            per_len.push([len, layer.len()]);
            words.extend(layer.iter().cloned());
        }
        let enumerated = words.len();
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        for _ in 0..self.walks {
            let len = rng.random_range(0..=self.walk_len);
            let letters = (0..len)
                .map(|_| alphabet[rng.random_range(0..alphabet.len())])
                .collect::<Vec<_>>();
            words.push(Word::new(letters));
        }
        // partners for the associativity law
        let partners: Vec<(usize, usize)> = (0..words.len())
            .map(|_| {
                (
                    rng.random_range(0..words.len()),
                    rng.random_range(0..words.len()),
                )
            })
            .collect();

        let table = self.table;
        let elements: Vec<TreePair> = self.in_pool(|| words.par_iter().map(from_word).collect());
        let found: Vec<Vec<Violation>> = self.in_pool(|| {
            (0..words.len())
                .into_par_iter()
                .map(|k| {
                    let w = &words[k];
                    let case = format!("[{w}]");
                    let mut c = Checker::new(&case);
                    let g = &elements[k];
                    let id = TreePair::identity();
                    c.check(g.is_reduced(), || format!("{g} is not reduced"));
                    c.check(multiply(&id, g) == *g && multiply(g, &id) == *g, || {
                        "identity law fails".into()
                    });
                    let inv = invert(g);
                    c.check(multiply(g, &inv) == id && multiply(&inv, g) == id, || {
                        "inverse law fails".into()
                    });
                    c.check(from_word(&w.inverse()) == inv, || {
                        "inverse word does not map to the inverse".into()
                    });
                    let (u, v) = partners[k];
                    let (hu, hv) = (&elements[u], &elements[v]);
                    for (x, y, z) in [(g, hu, hv), (hu, g, hv), (hu, hv, g)] {
                        let left = multiply(&multiply(x, y), z);
                        let right = multiply(x, &multiply(y, z));
                        c.check(left == right, || {
                            format!("associativity fails with [{}] and [{}]", words[u], words[v])
                        });
                    }
                    match canonical_word_in(table, g) {
                        Ok(cw) => {
                            let back = from_word(&cw);
                            c.check(back == *g, || format!("canonical word {cw} maps to {back}"));
                            for variant in single_rewrites(w) {
                                let other = canonical_word_in(table, &from_word(&variant));
                                c.check(other.as_ref() == Ok(&cw), || {
                                    format!("rewrite [{variant}] changes the canonical word")
                                });
                            }
                        }
                        Err(err) => c.fail(err.to_string()),
                    }
                    c.out
                })
                .collect()
        });
        // associativity on every triple of single letters and the identity
        let short: Vec<usize> = (0..enumerated).filter(|&k| words[k].len() <= 1).collect();
        let mut triple_violations = Vec::new();
        for &x in &short {
            for &y in &short {
                for &z in &short {
                    let (gx, gy, gz) = (&elements[x], &elements[y], &elements[z]);
                    if multiply(&multiply(gx, gy), gz) != multiply(gx, &multiply(gy, gz)) {
                        triple_violations.push(Violation {
                            case: format!("[{}] [{}] [{}]", words[x], words[y], words[z]),
                            detail: "associativity fails".into(),
                        });
                    }
                }
            }
        }
        let mut report = finish(
            Suite::GroupAxioms,
            [0, max_len],
            per_len,
            found
                .into_iter()
                .flatten()
                .chain(triple_violations)
                .collect(),
            start,
        );
        report.cases_checked = words.len() + short.len().pow(3);
        report
    }
}

fn finish(
    suite: Suite,
    n_range: [usize; 2],
    cases_per_n: Vec<[usize; 2]>,
    violations: Vec<Violation>,
    start: Instant,
) -> Report {
    Report {
        suite: suite.name().to_string(),
        n_range,
        cases_checked: cases_per_n.iter().map(|[_, c]| c).sum(),
        cases_per_n,
        violations,
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}

#[allow(clippy::too_many_arguments)]
fn ordered_words(
    table: &dyn MoveTable,
    e: &Expr,
    goal: &Expr,
    min_index: usize,
    depth_left: usize,
    word: &mut Word,
    found: &mut Vec<Word>,
    truncated: &mut bool,
) {
    if e == goal {
        found.push(word.clone());
    }
    let n = e.leaf_count();
    for i in min_index..n {
        let Ok(t) = table.forward(i, e) else { continue };
        if depth_left == 0 {
            *truncated = true;
            return;
        }
        word.push(Letter::pos(i));
        ordered_words(table, &t, goal, i, depth_left - 1, word, found, truncated);
        word.pop();
    }
}

/// Paths grouped by endpoint text, each with its tree-pair image.
type PathsByEnd = BTreeMap<String, (Expr, Vec<(Word, TreePair)>)>;

#[allow(clippy::too_many_arguments)]
fn all_positive_paths(
    table: &dyn MoveTable,
    e: &Expr,
    n: usize,
    depth_left: usize,
    word: &mut Word,
    image: &TreePair,
    out: &mut PathsByEnd,
    truncated: &mut bool,
) {
    out.entry(e.render())
        .or_insert_with(|| (e.clone(), Vec::new()))
        .1
        .push((word.clone(), image.clone()));
    for i in 0..n {
        let Ok(t) = table.forward(i, e) else { continue };
        if depth_left == 0 {
            *truncated = true;
            return;
        }
        let letter = Letter::pos(i);
        word.push(letter);
        let next = multiply(image, &TreePair::generator(letter));
        all_positive_paths(table, &t, n, depth_left - 1, word, &next, out, truncated);
        word.pop();
    }
}

/// Words obtained from `w` by one application of a defining relation, in
/// either direction and for either sign, or by one free cancellation.
pub fn single_rewrites(w: &Word) -> Vec<Word> {
    let letters = w.letters();
    let mut out = Vec::new();
    for k in 0..letters.len().saturating_sub(1) {
        let (x, y) = (letters[k], letters[k + 1]);
        let replacement = match (x.sign, y.sign) {
            // [a_j, a_i] = [a_i, a_{j+1}] for i < j
            (Sign::Pos, Sign::Pos) if y.index < x.index => {
                Some([Letter::pos(y.index), Letter::pos(x.index + 1)])
            }
            (Sign::Pos, Sign::Pos) if y.index >= x.index + 2 => {
                Some([Letter::pos(y.index - 1), Letter::pos(x.index)])
            }
            // [A_i, A_j] = [A_{j+1}, A_i] for i < j
            (Sign::Neg, Sign::Neg) if x.index < y.index => {
                Some([Letter::neg(y.index + 1), Letter::neg(x.index)])
            }
            (Sign::Neg, Sign::Neg) if x.index >= y.index + 2 => {
                Some([Letter::neg(y.index), Letter::neg(x.index - 1)])
            }
            _ => None,
        };
        if let Some(pair) = replacement {
            let mut v = letters.to_vec();
            v[k] = pair[0];
            v[k + 1] = pair[1];
            out.push(Word::new(v));
        }
        if x == y.inverse() {
            let mut v = letters.to_vec();
            v.drain(k..k + 2);
            out.push(Word::new(v));
        }
    }
    out
}

pub fn check_observations(n_max: usize) -> Result<Report> {
    Verifier::default().check_observations(n_max)
}

pub fn check_lemma_uniqueness(n_max: usize) -> Result<Report> {
    Verifier::default().check_lemma_uniqueness(n_max)
}

pub fn check_rectangle(n_max: usize) -> Result<Report> {
    Verifier::default().check_rectangle(n_max)
}

pub fn check_parallel_paths(n_max: usize) -> Result<Report> {
    Verifier::default().check_parallel_paths(n_max)
}

pub fn check_pentagon(n_max: usize) -> Result<Report> {
    Verifier::default().check_pentagon(n_max)
}

pub fn check_presentation(i_max: usize) -> Report {
    Verifier::default().check_presentation(i_max)
}
