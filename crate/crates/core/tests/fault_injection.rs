//! Every suite must reject a wrong move table.

use coherence::verify::Suite;
use coherence::{rotate_at, rotate_inv_at, Error, Expr, MoveTable, NodeAddress, Step, Verifier};

/// Rotates along the right spine instead of the left one. Agrees with the
/// real table on index 0.
struct MirroredSpine;

impl MoveTable for MirroredSpine {
    fn forward(&self, index: usize, e: &Expr) -> Result<Expr, Error> {
        rotate_at(e, &NodeAddress::new(vec![Step::R; index]))
    }

    fn backward(&self, index: usize, e: &Expr) -> Result<Expr, Error> {
        rotate_inv_at(e, &NodeAddress::new(vec![Step::R; index]))
    }
}

/// Correct except that `α_2` and its inverse never apply.
struct MissingAlpha2;

impl MoveTable for MissingAlpha2 {
    fn forward(&self, index: usize, e: &Expr) -> Result<Expr, Error> {
        if index == 2 {
            return Err(missing("a2"));
        }
        coherence::apply_alpha(index, e)
    }

    fn backward(&self, index: usize, e: &Expr) -> Result<Expr, Error> {
        if index == 2 {
            return Err(missing("A2"));
        }
        coherence::apply_alpha_inv(index, e)
    }
}

fn missing(letter: &str) -> Error {
    Error::Inapplicable {
        letter: letter.into(),
        reason: coherence::Blocked::NoSuchNode,
    }
}

fn bound(suite: Suite) -> usize {
    match suite {
        Suite::Observations | Suite::Rectangle => 7,
        Suite::Lemma | Suite::PathOracle | Suite::Pentagon => 6,
        Suite::ParallelPaths => 5,
        Suite::Presentation => 4,
        Suite::GroupAxioms => 2,
    }
}

fn run_all(table: &dyn MoveTable, label: &str) {
    let verifier = Verifier::new(table).random_cases(200, 12);
    for suite in Suite::ALL {
        let report = verifier.run(suite, Some(bound(suite))).unwrap();
        assert!(
            !report.passed(),
            "{label}: suite {suite} accepted a broken table"
        );
    }
}

#[test]
fn mirrored_spine_is_rejected_everywhere() {
    run_all(&MirroredSpine, "mirrored spine");
}

#[test]
fn missing_generator_is_rejected_everywhere() {
    run_all(&MissingAlpha2, "missing a2");
}

#[test]
fn the_real_table_passes_at_the_same_bounds() {
    let table = coherence::SpineRotations;
    let verifier = Verifier::new(&table).random_cases(200, 12);
    for suite in Suite::ALL {
        let report = verifier.run(suite, Some(bound(suite))).unwrap();
        assert!(report.passed(), "{report}");
    }
}
