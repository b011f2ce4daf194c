use tenseig::oracle::{circle_critical_points, sphere_grid_search};
use tenseig::report::compare_with_circle;
use tenseig::{random_tensor, symmetric_eigenpairs, Config, Error, Shape, Tensor, Tensor32};

fn contains(haystack: &[Vec<f64>], needle: &[f64]) -> bool {
    haystack.iter().any(|h| h.iter().zip(needle).all(|(a, b)| (a - b).abs() < 1e-6))
}

#[test]
fn grid_search_and_solver_agree_on_the_sphere() {
    let mut agree = 0;
    let mut trials = 0;
    for seed in 0..50u64 {
        let t = random_tensor::<f64>(&Shape::square(3, 3).unwrap(), 500 + seed, true).unwrap();
        let Ok(grid) = sphere_grid_search(&t, 0.08) else { continue };
        let Ok(set) = symmetric_eigenpairs(&t, &Config::default().with_seed(seed)) else { continue };
        trials += 1;
        let solver: Vec<Vec<f64>> = set.pairs.iter().map(|p| p.vector.clone()).collect();
        let oracle: Vec<Vec<f64>> = grid.points.iter().map(|p| p.vector.clone()).collect();
        let solver_in_grid = solver.iter().all(|v| contains(&oracle, v));
        let grid_in_solver = oracle.iter().all(|v| contains(&solver, v));
        if solver_in_grid && grid_in_solver {
            agree += 1;
        }
    }
    assert!(trials >= 45, "only {trials} nondegenerate trials");
    assert!(agree * 100 >= 95 * trials, "{agree}/{trials} agree");
}

#[test]
fn circle_oracle_matches_solver_on_quartics() {
    for seed in 0..10u64 {
        let t = random_tensor::<f64>(&Shape::square(2, 4).unwrap(), 900 + seed, true).unwrap();
        if matches!(circle_critical_points(&t, 1e-3), Err(Error::Degenerate(_))) {
            continue;
        }
        let set = symmetric_eigenpairs(&t, &Config::default().with_seed(seed)).unwrap();
        let cmp = compare_with_circle(&t, &set.pairs).unwrap();
        assert!(cmp.agree, "seed {seed}: {cmp:?}");
    }
}

#[test]
fn single_precision_cubic() {
    let t = Tensor32::diagonal(&[1.0, 1.0], 3).unwrap();
    let set = symmetric_eigenpairs(&t, &tenseig::SolverConfig::<f32>::default().with_restarts(60)).unwrap();
    assert_eq!(set.pairs.len(), 6);
    let h = 0.5f32.sqrt();
    for (p, want) in set.pairs.iter().zip([1.0, 1.0, h, -h, -1.0, -1.0]) {
        assert!((p.value - want).abs() < 1e-5, "{} vs {want}", p.value);
    }
    let wide: Tensor = t.cast();
    assert_eq!(wide.entries()[0], 1.0);
}
