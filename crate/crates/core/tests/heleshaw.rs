use std::f64::consts::PI;

use harnack_lab::geometry::{make_ball, make_polygon};
use harnack_lab::heleshaw::{corner_angle, wets_corner, HeleShawProblem};

fn wet_radius(state: &harnack_lab::heleshaw::HeleShawState) -> f64 {
    let g = &*state.u.grid;
    (0..g.num_unknowns())
        .filter(|&u| state.wet_mask[u])
        .map(|u| {
            let x = g.point(u);
            x[0].hypot(x[1])
        })
        .fold(0.0, f64::max)
}

#[test]
fn radial_injection_fills_a_disk_of_the_injected_area() {
    let h = 1.0 / 64.0;
    let prob = HeleShawProblem::new(&make_ball(2, 1.0).unwrap(), &[0.0, 0.0], h).unwrap();
    let mut warm: Option<Vec<f64>> = None;
    for t in [0.2, 0.5, 1.0] {
        let s = prob.solve(t, warm.as_deref()).unwrap();
        let expected = ((s.initial_area() + t) / PI).sqrt();
        let r = wet_radius(&s);
        assert!((r - expected).abs() <= 2.0 * h, "t = {t}: wet radius {r}, expected {expected}");
        assert!(s.outflow.abs() < 1e-8, "no liquid reaches the rim yet");
        // cell counting misplaces at most a band of width h along the front
        assert!(s.volume_balance_error() <= 2.0 * PI * expected * h);
        warm = Some(s.u.values);
    }
}

#[test]
fn wet_set_grows_with_the_injected_volume() {
    let table = make_polygon(&[[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]).unwrap();
    let prob = HeleShawProblem::new(&table, &[0.5, 0.5], 1.0 / 32.0).unwrap();
    let mut prev: Option<Vec<bool>> = None;
    for t in [0.05, 0.1, 0.2, 0.4, 0.8] {
        let s = prob.solve(t, None).unwrap();
        if let Some(p) = &prev {
            assert!(p.iter().zip(&s.wet_mask).all(|(&a, &b)| !a || b), "wet set shrank at t = {t}");
        }
        prev = Some(s.wet_mask);
    }
}

#[test]
fn reentrant_corner_wets_and_the_report_is_consistent() {
    let table =
        make_polygon(&[[-1.0, -1.0], [1.0, -1.0], [1.0, 0.0], [0.0, 0.0], [0.0, 1.0], [-1.0, 1.0]]).unwrap();
    assert!((corner_angle(&table, &[0.0, 0.0]).unwrap() - 1.5 * PI).abs() < 1e-12);
    assert!((corner_angle(&table, &[1.0, -1.0]).unwrap() - 0.5 * PI).abs() < 1e-12);
    let h = 1.0 / 32.0;
    let rep = wets_corner(&table, &[0.0, 0.0], &[-0.5, -0.5], 8.0, 8, h).unwrap();
    assert!(rep.wet);
    let first = rep.first_wet_t.unwrap();
    assert!(first > 0.0 && first <= 8.0);
    assert_eq!(rep.t_schedule.len(), 8);
    assert!(rep.corner_wet_fraction.windows(2).all(|w| w[1] >= w[0]));
}

#[test]
fn source_too_close_to_the_rim_is_rejected() {
    let err = HeleShawProblem::new(&make_ball(2, 1.0).unwrap(), &[0.95, 0.0], 1.0 / 64.0).unwrap_err();
    assert!(matches!(err, harnack_lab::Error::InvalidArgument(_)));
}
