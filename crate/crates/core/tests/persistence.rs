mod common;

use rand::Rng;
use ripsmap::dataset::{distance_matrix, Metric, PointCloud};
use ripsmap::persistence::{
    betti_numbers, boundary_matrix, compute_persistence, persistence_diagram, reduce_with, ReductionStrategy,
};
use ripsmap::rips::build_rips;

fn euclidean(cloud: &PointCloud<f64>) -> ripsmap::DistanceMatrix<f64> {
    distance_matrix(cloud, Metric::Euclidean)
}

#[test]
fn betti_numbers_match_rank_nullity() {
    let mut rng = common::rng(11);
    for _ in 0..30 {
        let n = rng.gen_range(2..=9);
        let cloud = common::random_cloud(&mut rng, n, 2);
        let dist = euclidean(&cloud);
        let diagram = compute_persistence(&build_rips(&dist, 2, 1.5).unwrap()).unwrap();
        for step in 0..15 {
            let eps = step as f64 * 0.1;
            let got = betti_numbers(&diagram, eps);
            let want = common::brute_betti(&dist, 2, eps);
            // the top dimension counts cycles that would need 3-simplices to die
            assert_eq!(got[..2], want[..2], "eps {eps}");
        }
    }
}

#[test]
fn zero_dimensional_deaths_are_spanning_tree_edges() {
    let mut rng = common::rng(12);
    for _ in 0..20 {
        let n = rng.gen_range(1..=25);
        let cloud = common::random_cloud(&mut rng, n, 3);
        let dist = euclidean(&cloud);
        let diagram = compute_persistence(&build_rips(&dist, 1, 2.0).unwrap()).unwrap();
        let mut deaths: Vec<f64> = diagram
            .in_dimension(0)
            .filter(|p| !p.is_infinite())
            .map(|p| p.death)
            .collect();
        deaths.sort_by(f64::total_cmp);
        assert_eq!(deaths, common::kruskal_heights(&dist));
        assert_eq!(diagram.in_dimension(0).filter(|p| p.is_infinite()).count(), 1);
    }
}

#[test]
fn every_simplex_is_accounted_for_once() {
    let mut rng = common::rng(13);
    for _ in 0..20 {
        let n = rng.gen_range(1..=14);
        let cloud = common::random_cloud(&mut rng, n, 3);
        let f = build_rips(&euclidean(&cloud), 3, 0.7).unwrap();
        let r = reduce_with(&boundary_matrix(&f).unwrap(), ReductionStrategy::Twist);
        assert_eq!(2 * r.pairs.len() + r.essential.len(), f.len());

        let diagram = persistence_diagram(&r, &f);
        assert_eq!(diagram.in_dimension(0).count(), n);
        // finite pairs cancel in the alternating sum, so essential classes carry the
        // Euler characteristic of the final complex
        let euler: i64 = f
            .counts()
            .iter()
            .enumerate()
            .map(|(d, &c)| if d % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum();
        let essential: i64 = diagram
            .pairs
            .iter()
            .filter(|p| p.is_infinite())
            .map(|p| if p.dimension % 2 == 0 { 1 } else { -1 })
            .sum();
        assert_eq!(euler, essential);
    }
}

/// Whether the finite diagrams `a` and `b` are within bottleneck distance `t`: a perfect
/// matching exists where points pair within `t` in the max norm or go to the diagonal.
fn bottleneck_within(a: &[(f64, f64)], b: &[(f64, f64)], t: f64) -> bool {
    let (na, nb) = (a.len(), b.len());
    let to_diag = |p: &(f64, f64)| (p.1 - p.0) / 2.0 <= t;
    // left: a points then diagonal slots for b; right: b points then diagonal slots for a
    let size = na + nb;
    let adjacent = |l: usize, r: usize| match (l < na, r < nb) {
        (true, true) => (a[l].0 - b[r].0).abs().max((a[l].1 - b[r].1).abs()) <= t,
        (true, false) => r - nb == l && to_diag(&a[l]),
        (false, true) => l - na == r && to_diag(&b[r]),
        (false, false) => true,
    };
    fn augment(
        l: usize,
        size: usize,
        adj: &dyn Fn(usize, usize) -> bool,
        seen: &mut [bool],
        owner: &mut [usize],
    ) -> bool {
        for r in 0..size {
            if adj(l, r) && !seen[r] {
                seen[r] = true;
                if owner[r] == usize::MAX || augment(owner[r], size, adj, seen, owner) {
                    owner[r] = l;
                    return true;
                }
            }
        }
        false
    }
    let mut owner = vec![usize::MAX; size];
    (0..size).all(|l| augment(l, size, &adjacent, &mut vec![false; size], &mut owner))
}

#[test]
fn small_perturbations_move_the_diagram_little() {
    let delta = 1e-3;
    let mut rng = common::rng(14);
    for _ in 0..10 {
        let n = rng.gen_range(4..=16);
        let cloud = common::random_cloud(&mut rng, n, 2);
        let moved: Vec<Vec<f64>> = (0..n)
            .map(|i| {
                let angle = rng.gen::<f64>() * std::f64::consts::TAU;
                let r = rng.gen::<f64>() * delta;
                let p = cloud.point(i);
                vec![p[0] + r * angle.cos(), p[1] + r * angle.sin()]
            })
            .collect();
        let other = PointCloud::from_rows(&moved).unwrap();
        // threshold past both diameters: every H1 class dies, one H0 class survives
        let a = compute_persistence(&build_rips(&euclidean(&cloud), 2, 3.0).unwrap()).unwrap();
        let b = compute_persistence(&build_rips(&euclidean(&other), 2, 3.0).unwrap()).unwrap();
        for dim in 0..2 {
            let finite = |d: &ripsmap::PersistenceDiagram<f64>| -> Vec<(f64, f64)> {
                d.in_dimension(dim)
                    .filter(|p| !p.is_infinite())
                    .map(|p| (p.birth, p.death))
                    .collect()
            };
            assert!(
                bottleneck_within(&finite(&a), &finite(&b), 2.0 * delta + 1e-12),
                "dimension {dim}"
            );
        }
    }
}

#[test]
fn single_precision_agrees_on_the_unit_square() {
    let rows = [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]];
    let f32_cloud = PointCloud::<f32>::from_rows(&rows.map(|r| r.map(|x: f64| x as f32))).unwrap();
    let f64_cloud = PointCloud::<f64>::from_rows(&rows).unwrap();
    let single =
        compute_persistence(&build_rips(&distance_matrix(&f32_cloud, Metric::Euclidean), 2, 2.0).unwrap()).unwrap();
    let double = compute_persistence(&build_rips(&euclidean(&f64_cloud), 2, 2.0).unwrap()).unwrap();
    assert_eq!(single.pairs.len(), double.pairs.len());
    for (s, d) in single.pairs.iter().zip(&double.pairs) {
        assert_eq!(s.dimension, d.dimension);
        assert!((s.birth as f64 - d.birth).abs() < 1e-6);
        assert!(s.is_infinite() == d.is_infinite());
        if !d.is_infinite() {
            assert!((s.death as f64 - d.death).abs() < 1e-6);
        }
    }
}
