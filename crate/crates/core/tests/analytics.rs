mod common;

use common::*;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stab::analytics::*;
use stab::evolution::random_infinite_temperature_state;
use stab::measurement::{apply_projector, sample_axis};
use stab::spectral::*;
use stab::spin::{exact_spectrum, HamiltonianSpec};

const PAIRS: [(f64, f64); 3] = [(-0.9, 0.9), (-0.9, 0.0), (-0.9, -0.6)];

#[test]
fn z_only_monte_carlo_matches_binomial() {
    let options = McOptions { axes: AxisSet::ZOnly, sampling: Sampling::Uniform };
    for (e1, e2) in PAIRS {
        let params = CutModelParams::two_peak(e1, e2, -1.0, 1.0).unwrap();
        for n in 1..=10 {
            let (mean, se) = mc_avg_delta_g_two_peak(&params, n, 100_000, 7, options).unwrap();
            let want = binomial_avg_delta_g(n, z_outcome_probability(e1, -1.0, 1.0), z_outcome_probability(e2, -1.0, 1.0)).unwrap();
            assert!((mean - want).abs() <= 3.0 * se + 1e-12, "({e1},{e2}) n={n}: {mean} ± {se} vs {want}");
        }
    }
}

#[test]
fn born_weighted_agrees_with_uniform() {
    let params = CutModelParams::two_peak(-0.9, 0.0, -1.0, 1.0).unwrap();
    for n in [1, 4, 8] {
        let (a, sa) = mc_avg_delta_g_two_peak(&params, n, 200_000, 1, McOptions::default()).unwrap();
        let born = McOptions { sampling: Sampling::BornWeighted, ..McOptions::default() };
        let (b, sb) = mc_avg_delta_g_two_peak(&params, n, 200_000, 2, born).unwrap();
        assert!((a - b).abs() <= 4.0 * (sa * sa + sb * sb).sqrt(), "n={n}: {a} vs {b}");
        if n == 8 {
            assert!(sb < sa);
        }
    }
}

#[test]
fn small_n_matches_quadrature() {
    let params = CutModelParams::two_peak(-0.9, 0.9, -1.0, 1.0).unwrap();
    for n in 1..=3 {
        let q = quadrature_avg_delta_g_two_peak(&params, n, 64).unwrap();
        let (m, se) = mc_avg_delta_g_two_peak(&params, n, 200_000, 3, McOptions::default()).unwrap();
        assert!((m - q).abs() < 4.0 * se + 1e-4, "n={n}: {m} vs {q}");
    }
}

#[test]
fn averaged_difference_grows_with_measurements() {
    let options = McOptions { sampling: Sampling::BornWeighted, ..McOptions::default() };
    for (e1, e2) in PAIRS {
        let params = CutModelParams::two_peak(e1, e2, -1.0, 1.0).unwrap();
        let values: Vec<(f64, f64)> = (1..=20)
            .map(|n| mc_avg_delta_g_two_peak(&params, n, 50_000, 11, options).unwrap())
            .collect();
        for w in values.windows(2) {
            assert!(w[1].0 >= w[0].0 - 3.0 * (w[0].1 + w[1].1), "{values:?}");
        }
        assert!(values.iter().all(|(m, _)| (0.0..=1.0).contains(m)));
    }
}

#[test]
fn cut_preserves_normalization_and_reports_probability() {
    let grid = EnergyGrid::covering(-1.0, 1.0, 64).unwrap();
    let g = EnergyDistribution::gaussian(grid, -0.3, 0.2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..50 {
        let theta = rng.random_range(0.0..std::f64::consts::PI);
        let cut = cutting_function_field(theta, -1.0, 1.0).unwrap();
        let (kept, b) = apply_cut(&g, &cut).unwrap();
        let (other, b_other) = apply_cut(&g, &cut.complement()).unwrap();
        assert!((kept.total_mass() - 1.0).abs() < 1e-12);
        assert!((other.total_mass() - 1.0).abs() < 1e-12);
        assert!((b + b_other - 1.0).abs() < 1e-12);
    }
}

/// A single z measurement on a state spread uniformly inside each field
/// level is reproduced exactly by the field cut.
#[test]
fn field_cut_is_exact_for_level_uniform_states() {
    let n = 8;
    let spec = HamiltonianSpec::field(n, 1.0);
    let s = exact_spectrum(&spec, true).unwrap();
    // 64 bins across a span of 8 put every level on a bin centre
    let grid = EnergyGrid::covering(s.e_min, s.e_max, 64).unwrap();
    // amplitudes depend only on the number of down spins
    let weights = [0.3, 1.0, 0.2, 0.7, 0.5, 0.9, 0.1, 0.4, 0.6];
    let amps = (0..1usize << n).map(|i| Complex64::new(weights[i.count_ones() as usize], 0.0)).collect();
    let psi = stab::spin::SpinState::from_amplitudes(n, amps).unwrap().normalized();
    let g0 = exact_binned_g(&psi, &s, grid).unwrap();
    for theta in [0.0, std::f64::consts::PI] {
        let (after, p) = apply_projector(&psi, 3, theta, 0.0).unwrap();
        let cut = cutting_function_field(theta, s.e_min, s.e_max).unwrap();
        let (want, b) = apply_cut(&g0, &cut).unwrap();
        assert!((b - p).abs() < 1e-12);
        let got = exact_binned_g(&after, &s, grid).unwrap();
        for (x, y) in got.masses().iter().zip(want.masses()) {
            assert!((x - y).abs() < 1e-12);
        }
    }
}

#[test]
fn field_narrowing_follows_gaussian_update() {
    let grid = EnergyGrid::covering(-1.0, 1.0, 400).unwrap();
    let g0 = EnergyDistribution::gaussian(grid, 0.0, 0.1).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let runs = 200;
    let n_cuts = 20;
    let mut mean_inv = vec![0.0; n_cuts + 1];
    let mut u_sq = 0.0;
    for _ in 0..runs {
        let trace = simulate_field_narrowing(&g0, n_cuts, -1.0, 1.0, &mut rng).unwrap();
        for (m, v) in mean_inv.iter_mut().zip(&trace.inverse_width_sq) {
            *m += v / runs as f64;
        }
        u_sq += trace.slope_ratio_sq.iter().sum::<f64>() / (runs * n_cuts) as f64;
    }
    let x: Vec<f64> = (0..=n_cuts).map(|n| n as f64).collect();
    let (slope, _) = stab::stats::linear_fit(&x, &mean_inv);
    assert!((slope / u_sq - 1.0).abs() < 0.1, "slope {slope} vs u² {u_sq}");
}

#[test]
fn pair_cut_matches_dense_operator() {
    let n = 6;
    let spec = HamiltonianSpec::reference_xyz(n);
    let s = exact_spectrum(&spec, true).unwrap();
    let grid = EnergyGrid::covering(s.e_min, s.e_max, 32).unwrap();
    let h = dense_hamiltonian(&spec);
    let (values, vectors) = dense_eigen(&h);
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..5 {
        let sa = rng.random_range(0..n);
        let sb = (sa + 1 + rng.random_range(0..n - 1)) % n;
        let (ta, pa) = sample_axis(&mut rng);
        let (tb, pb) = sample_axis(&mut rng);
        let delay = rng.random_range(0.0..2.0);
        let a = LocalAxis { site: sa, theta: ta, phi: pa };
        let b = LocalAxis { site: sb, theta: tb, phi: pb };
        let cut = pair_cutting_function(&spec, a, b, delay, &s, grid).unwrap();
        let op = embed(&projector(tb, pb), sb, n) * dense_propagator(&h, delay) * embed(&projector(ta, pa), sa, n);
        let ata = op.adjoint() * op;
        let mut sums = vec![0.0; grid.n_bins];
        let mut counts = vec![0usize; grid.n_bins];
        for (k, e) in values.iter().enumerate() {
            let v = vectors.column(k);
            let bin = grid.clamped_bin(*e);
            sums[bin] += (v.adjoint() * &ata * v)[(0, 0)].re;
            counts[bin] += 1;
        }
        for bin in 0..grid.n_bins {
            assert_eq!(counts[bin], cut.counts[bin]);
            if counts[bin] > 0 {
                assert!((sums[bin] / counts[bin] as f64 - cut.values()[bin]).abs() < 1e-10);
            }
        }
    }
}

#[test]
fn distant_pairs_factorize_at_mid_spectrum() {
    let n = 8;
    let spec = HamiltonianSpec::reference_xyz(n);
    let s = exact_spectrum(&spec, true).unwrap();
    let grid = EnergyGrid::covering(s.e_min, s.e_max, 16).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..3 {
        let (ta, pa) = sample_axis(&mut rng);
        let (tb, pb) = sample_axis(&mut rng);
        let a = LocalAxis { site: 0, theta: ta, phi: pa };
        let b = LocalAxis { site: 4, theta: tb, phi: pb };
        let cut = pair_cutting_function(&spec, a, b, 0.5, &s, grid).unwrap();
        let mid = 0.5 * (s.e_min + s.e_max);
        let bin = grid.clamped_bin(mid);
        for k in bin - 2..=bin + 2 {
            assert!((cut.values()[k] - 0.25).abs() < 0.05);
        }
    }
}

#[test]
fn heating_drift_is_positive_for_cold_start() {
    let n = 8;
    let spec = HamiltonianSpec::reference_xyz(n);
    let s = exact_spectrum(&spec, true).unwrap();
    let grid = EnergyGrid::covering(s.e_min, s.e_max, 64).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let g0 = canonical_g(&s, 0.1, grid).unwrap();
    let mut drifts = Vec::new();
    for _ in 0..20 {
        let psi = stab::evolution::imaginary_time_prep(&spec, &random_infinite_temperature_state(n, rng.random()), 0.1).unwrap();
        let mut state = psi;
        for _ in 0..5 {
            let site = rng.random_range(0..n);
            let (theta, phi) = sample_axis(&mut rng);
            state = stab::measurement::measure_spin(&state, site, theta, phi, 0.0, &mut rng).unwrap().0;
        }
        drifts.push(heating_drift(&g0, &exact_binned_g(&state, &s, grid).unwrap(), s.e_min, s.e_max).unwrap());
    }
    let (mean, se) = stab::stats::mean_stderr(&drifts);
    assert!(mean > 3.0 * se, "{mean} ± {se}");
}

#[test]
fn pair_probability_dilute_limit() {
    let (exact, _) = pair_probability(2, 2, 24).unwrap();
    assert!((exact - (1.0 - 2.0 / 24.0)).abs() < 1e-15);
    // Π(1 - (k-1)r) ≈ e^{-r n(n-1)/2} for small r
    let (exact, approx) = pair_probability(5, 2, 10_000).unwrap();
    assert!((exact - (-2e-4 * 10.0f64).exp()).abs() < 1e-6);
    assert!(approx < exact);
}

#[test]
fn single_spin_term_is_small_in_bin_averages() {
    let n = 8;
    let spec = HamiltonianSpec::reference_xyz(n);
    let s = exact_spectrum(&spec, true).unwrap();
    let grid = EnergyGrid::covering(s.e_min, s.e_max, 16).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut worst: f64 = 0.0;
    for _ in 0..4 {
        let (ta, pa) = sample_axis(&mut rng);
        let (tb, pb) = sample_axis(&mut rng);
        let a = LocalAxis { site: 2, theta: ta, phi: pa };
        let b = LocalAxis { site: 3, theta: tb, phi: pb };
        let cut = pair_cutting_function(&spec, a, b, 1.0, &s, grid).unwrap();
        worst = cut.single_spin.iter().fold(worst, |m, v| m.max(v.abs()));
    }
    assert!(worst < 1e-10, "{worst}");
}
