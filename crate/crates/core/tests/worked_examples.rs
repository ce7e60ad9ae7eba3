//! Hand-computed values, frozen.

use tbm_core::calculus::{self, ConditioningEvent, ConditioningMode};
use tbm_core::capacity::{self, MassFunction, PossibilityDistribution, Property, Strictness};
use tbm_core::decision::{self, DecisionProblem};
use tbm_core::moebius;
use tbm_core::oracle::{self, Family};
use tbm_core::pignistic::{self, gamma, Route};
use tbm_core::{Capacity, CapacityKind, Error, Frame, Subset};

fn abc() -> Frame {
    Frame::new(["a", "b", "c"]).unwrap()
}

fn s(f: &Frame, names: &[&str]) -> Subset {
    f.parse_subset(names).unwrap()
}

fn close(got: &[f64], want: &[f64], tol: f64) {
    assert_eq!(got.len(), want.len());
    for (i, (g, w)) in got.iter().zip(want).enumerate() {
        assert!((g - w).abs() <= tol, "index {i}: got {g}, want {w}");
    }
}

fn example_mass() -> MassFunction {
    let f = abc();
    MassFunction::from_focal(
        f.clone(),
        [
            (s(&f, &["a"]), 0.4),
            (s(&f, &["a", "b"]), 0.3),
            (f.full(), 0.3),
        ],
    )
    .unwrap()
}

#[test]
fn example_belief_table() {
    let bel = capacity::from_mass(&example_mass()).unwrap();
    // Order: {}, a, b, ab, c, ac, bc, abc.
    close(
        bel.values(),
        &[0.0, 0.4, 0.0, 0.7, 0.0, 0.4, 0.0, 1.0],
        1e-15,
    );
    let pl = capacity::plausibility_from_mass(&example_mass()).unwrap();
    close(
        pl.values(),
        &[0.0, 1.0, 0.6, 1.0, 0.3, 1.0, 0.6, 1.0],
        1e-15,
    );
}

#[test]
fn example_pignistic_every_route() {
    let bel = capacity::from_mass(&example_mass()).unwrap();
    for route in Route::ALL {
        close(
            gamma(&bel, route, false).unwrap().probabilities(),
            &[0.65, 0.25, 0.10],
            1e-12,
        );
    }
    let pl = capacity::plausibility_from_mass(&example_mass()).unwrap();
    for route in Route::ALL {
        close(
            gamma(&pl, route, false).unwrap().probabilities(),
            &[0.65, 0.25, 0.10],
            1e-12,
        );
    }
}

#[test]
fn closed_form_coefficients_n3() {
    close(
        &pignistic::closed_form_coefficients(3),
        &[1.0 / 3.0, 1.0 / 6.0, 1.0 / 3.0],
        1e-16,
    );
    close(&pignistic::closed_form_coefficients(1), &[1.0], 0.0);
}

#[test]
fn w_masses_of_example() {
    let bel = capacity::from_mass(&example_mass()).unwrap();
    let w = moebius::moebius_w(&bel);
    close(
        w.masses(),
        &[0.0, 1.0, 0.6, -0.6, 0.3, -0.3, -0.3, 0.3],
        1e-15,
    );
    let naive = oracle::naive_moebius_w(&bel).unwrap();
    close(w.masses(), naive.masses(), 1e-15);
}

#[test]
fn possibility_levels() {
    let f = abc();
    let pi = PossibilityDistribution::new(f, vec![1.0, 0.7, 0.2]).unwrap();
    let model = capacity::from_possibility(&pi);
    let m = model.masses.masses();
    let f = model.possibility.frame().clone();
    assert!((m[s(&f, &["a"]).index()] - 0.3).abs() < 1e-15);
    assert!((m[s(&f, &["a", "b"]).index()] - 0.5).abs() < 1e-15);
    assert!((m[f.full().index()] - 0.2).abs() < 1e-15);
    close(
        model.necessity.values(),
        &[0.0, 0.3, 0.0, 0.8, 0.0, 0.3, 0.0, 1.0],
        1e-15,
    );
    let p = gamma(&model.possibility, Route::Auto, false).unwrap();
    close(
        p.probabilities(),
        &[0.3 + 0.25 + 0.2 / 3.0, 0.25 + 0.2 / 3.0, 0.2 / 3.0],
        1e-12,
    );
}

#[test]
fn point_masses_combine_to_a_coin() {
    let f = Frame::new(["a", "b"]).unwrap();
    let g = Frame::new(["x", "y"]).unwrap();
    let one =
        capacity::from_mass(&MassFunction::from_focal(f.clone(), [(f.singleton(0), 1.0)]).unwrap())
            .unwrap();
    let two =
        capacity::from_mass(&MassFunction::from_focal(g.clone(), [(g.singleton(1), 1.0)]).unwrap())
            .unwrap();
    let mixed = calculus::alpha_combine(&one, &two, 0.5).unwrap();
    close(mixed.values(), &[0.0, 0.5, 0.5, 1.0], 0.0);
    assert_eq!(mixed.frame().atoms(), ["a~x", "b~y"]);
    close(
        gamma(&mixed, Route::Auto, false).unwrap().probabilities(),
        &[0.5, 0.5],
        1e-15,
    );
    assert_eq!(
        calculus::alpha_combine(&one, &capacity::from_mass(&example_mass()).unwrap(), 0.5),
        Err(Error::NotCombinable(2, 3))
    );
}

#[test]
fn conditioning_examples() {
    let f = abc();
    let m = MassFunction::from_focal(f.clone(), [(s(&f, &["a"]), 0.5), (s(&f, &["b", "c"]), 0.5)])
        .unwrap();
    let ev = ConditioningEvent::new(s(&f, &["a", "b"]), ConditioningMode::TransferOpen).unwrap();
    let c = calculus::condition(&m, &ev).unwrap();
    close(c.masses(), &[0.0, 0.5, 0.5, 0.0, 0.0, 0.0, 0.0, 0.0], 0.0);

    let r = calculus::two_level_vs_one_level(&m, &ev).unwrap();
    close(r.credal.probabilities(), &[0.5, 0.5, 0.0], 1e-15);
    close(
        r.bayesian.probabilities(),
        &[2.0 / 3.0, 1.0 / 3.0, 0.0],
        1e-15,
    );
    assert!((r.max_abs_diff - 1.0 / 6.0).abs() < 1e-12);

    let g = Frame::new(["a", "b"]).unwrap();
    let point = MassFunction::from_focal(g.clone(), [(g.singleton(0), 1.0)]).unwrap();
    let open = ConditioningEvent::new(g.singleton(1), ConditioningMode::TransferOpen).unwrap();
    assert_eq!(
        calculus::condition(&point, &open).unwrap().masses(),
        [1.0, 0.0, 0.0, 0.0]
    );
    let normalized =
        ConditioningEvent::new(g.singleton(1), ConditioningMode::TransferNormalized).unwrap();
    assert!(matches!(
        calculus::condition(&point, &normalized),
        Err(Error::TotalConflict(_))
    ));
}

#[test]
fn decision_example() {
    let dp = DecisionProblem::new(
        abc(),
        vec!["risky".into(), "safe".into()],
        vec![vec![10.0, 0.0, 0.0], vec![4.0, 4.0, 4.0]],
    )
    .unwrap();
    let bel = capacity::from_mass(&example_mass()).unwrap();
    let r = decision::decide(&bel, &dp, false).unwrap();
    close(&r.expected_utility, &[6.5, 4.0], 1e-12);
    assert_eq!(r.best_act(), "risky");
    assert_eq!(r.tied_acts(), ["risky"]);
}

#[test]
fn nonmonotone_capacity_is_reported() {
    let f = abc();
    let cr = Capacity::new(
        f.clone(),
        CapacityKind::GenericMonotone,
        vec![0.0, 0.5, 0.3, 0.4, 0.1, 0.6, 0.4, 1.0],
    )
    .unwrap();
    let report = capacity::validate(&cr, Strictness::Structural);
    assert!(report.has(Property::Monotonicity));
    let v = &report.violations[0];
    assert_eq!(v.subset, s(&f, &["a"]));
    assert_eq!(v.other, Some(s(&f, &["a", "b"])));
}

/// Guards the generators against silent changes: the corpus behind the
/// acceptance numbers must stay the same.
#[test]
fn corpus_is_frozen() {
    let frozen: [(Family, [f64; 4]); 4] = [
        (
            Family::Belief,
            [
                0.0,
                0.710502021191377,
                0.21157732294639817,
                0.9906995730077721,
            ],
        ),
        (
            Family::Probability,
            [0.0, 0.20884468954020555, 0.7911553104597945, 1.0],
        ),
        (Family::Possibility, [0.0, 1.0, 0.6971411911907498, 1.0]),
        (
            Family::MonotoneCapacity,
            [0.0, 0.8824346968657819, 0.5897523082924717, 1.0],
        ),
    ];
    for (family, values) in frozen {
        let corpus = oracle::random_instances(42, 2, 1, family).unwrap();
        close(corpus[0].values(), &values, 0.0);
    }
    assert_ne!(
        oracle::random_instances(43, 2, 3, Family::Belief).unwrap(),
        oracle::random_instances(42, 2, 3, Family::Belief).unwrap()
    );
}
