use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;

use ginibre::cli::{format_float, parse_config, parse_csv, Cell, OutputRecord, Schema};
use ginibre::ensemble::{
    eigenvalues, ks_statistic, merge_results, run_experiment, sample_matrix, sample_stream, sector_counts_per_sample,
    spectrum_summary, EnsembleKind, ExperimentConfig, ExperimentResult, Histogram, Statistic,
};
use ginibre::fredholm::{
    composite_gauss_legendre, gumbel_reference, limit_law_real, pfaffian, GridParams, GumbelLaw, SquareMatrix,
};
use ginibre::kernels::{complex_offdiag_sn, finite_kernel_tn, limit_kernel_t};
use ginibre::specialfn::{erfc, erfcx, gaussian_cdf, reg_gamma, scaling_constants, trunc_exp_scaled};

fn antisymmetric(dim: usize, values: &[f64]) -> SquareMatrix {
    let mut k = SquareMatrix::zeros(dim);
    let mut it = values.iter().cycle();
    for i in 0..dim {
        for j in i + 1..dim {
            let v = *it.next().unwrap();
            k.entries[i * dim + j] = v;
            k.entries[j * dim + i] = -v;
        }
    }
    k
}

fn small_run(kind: EnsembleKind, n: usize, first: u64, samples: u64, seed: u64) -> ExperimentResult {
    let mut c = ExperimentConfig::new(kind, n, samples, seed)
        .with_statistics(&[Statistic::SpectralRadius, Statistic::LargestReal, Statistic::ScaledPoints]);
    c.first_index = first;
    run_experiment(&c, 1).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn quadrature_reproduces_low_degree_polynomials(a in -20.0f64..20.0, len in 0.1f64..30.0, panels in 1usize..8, m in 2usize..24) {
        let b = a + len;
        let g = composite_gauss_legendre(a, b, panels, m).unwrap();
        let total: f64 = g.weights.iter().sum();
        prop_assert!((total - len).abs() <= 1e-12 * len.max(1.0));
        prop_assert!(g.nodes.windows(2).all(|w| w[0] < w[1]));
        prop_assert!(g.nodes.iter().all(|&x| x > a && x < b));
        let cubic = g.integrate(|x| x * x * x);
        let exact = (b.powi(4) - a.powi(4)) / 4.0;
        prop_assert!((cubic - exact).abs() <= 1e-11 * (a.abs() + b.abs()).powi(4).max(1.0));
    }

    #[test]
    fn incomplete_gamma_halves_sum_to_one(a in 0.5f64..800.0, r in 0.0f64..3.0) {
        let (p, q) = reg_gamma(a, a * r).unwrap();
        prop_assert!((0.0..=1.0).contains(&p) && (0.0..=1.0).contains(&q));
        prop_assert!((p + q - 1.0).abs() <= 1e-14);
    }

    #[test]
    fn truncated_exponential_is_monotone(m in 0u64..400, x in 0.0f64..600.0, dx in 0.01f64..5.0) {
        let here = trunc_exp_scaled(m, x).unwrap();
        prop_assert!(trunc_exp_scaled(m, x + dx).unwrap() <= here);
        prop_assert!(trunc_exp_scaled(m + 1, x).unwrap() >= here);
    }

    #[test]
    fn erfc_reflection_and_scaling(x in -6.0f64..6.0) {
        prop_assert!((erfc(x) + erfc(-x) - 2.0).abs() <= 4e-16 * 2.0);
        let direct = erfcx(x) * (-x * x).exp();
        prop_assert!((direct - erfc(x)).abs() <= 1e-14 * erfc(x).max(1e-300));
        prop_assert!((gaussian_cdf(x) + gaussian_cdf(-x) - 1.0).abs() <= 1e-15);
    }

    #[test]
    fn pfaffian_squares_to_determinant(half in 1usize..6, values in proptest::collection::vec(-3.0f64..3.0, 45)) {
        let dim = 2 * half;
        let k = antisymmetric(dim, &values);
        let pf = pfaffian(&k).unwrap();
        let det = k.determinant();
        prop_assert!((pf * pf - det).abs() <= 1e-10 * det.abs().max(1.0));
    }

    #[test]
    fn real_kernels_are_symmetric(x in -4.0f64..8.0, y in -4.0f64..8.0, n in 4u64..200) {
        prop_assert_eq!(limit_kernel_t(x, y), limit_kernel_t(y, x));
        let (u, v) = (x.abs() + 0.1, y.abs() + 0.1);
        prop_assert_eq!(finite_kernel_tn(n, u, v).unwrap(), finite_kernel_tn(n, v, u).unwrap());
    }

    #[test]
    fn complex_kernel_is_hermitian(r1 in 0.0f64..12.0, r2 in 0.0f64..12.0, a in 0.0f64..6.28, b in 0.0f64..6.28) {
        let z = Complex64::from_polar(r1, a);
        let w = Complex64::from_polar(r2, b);
        let zw = complex_offdiag_sn(50, z, w).unwrap();
        let wz = complex_offdiag_sn(50, w, z).unwrap();
        prop_assert!((zw - wz.conj()).norm() <= 1e-12 * zw.norm().max(1e-300));
    }

    #[test]
    fn gumbel_references_are_distributions(t in -10.0f64..30.0, dt in 0.0f64..3.0) {
        for law in [GumbelLaw::RealGinibreRadius, GumbelLaw::ComplexGinibreRadius] {
            let f = gumbel_reference(t, law);
            prop_assert!((0.0..=1.0).contains(&f));
            prop_assert!(gumbel_reference(t + dt, law) >= f);
        }
    }

    #[test]
    fn histogram_counts_everything(mut data in proptest::collection::vec(-50.0f64..50.0, 1..300), bins in 1usize..40) {
        data.sort_by(f64::total_cmp);
        let h = Histogram::from_sorted(&data, bins).unwrap();
        prop_assert_eq!(h.total(), data.len() as u64);
        if data[0] < data[data.len() - 1] {
            let mass: f64 = h.densities().iter().zip(h.edges.windows(2)).map(|(d, e)| d * (e[1] - e[0])).sum();
            prop_assert!((mass - 1.0).abs() <= 1e-9);
        }
    }

    #[test]
    fn ks_statistic_is_bounded(mut data in proptest::collection::vec(-5.0f64..5.0, 1..200)) {
        data.sort_by(f64::total_cmp);
        let d = ks_statistic(&data, gaussian_cdf).unwrap();
        prop_assert!((0.0..=1.0).contains(&d));
        prop_assert!(d >= 0.5 / data.len() as f64 - 1e-15);
    }

    #[test]
    fn csv_round_trip_is_bit_exact(values in proptest::collection::vec(any::<f64>().prop_filter("finite", |x| x.is_finite()), 0..30)) {
        let mut r = OutputRecord::new(Schema::DensityCurve, serde_json::json!({}));
        for &v in &values {
            r.rows.push(vec![Cell::Float(v), Cell::Float(v / 3.0)]);
        }
        let (header, rows) = parse_csv(&r.to_csv());
        prop_assert_eq!(header, vec!["t".to_string(), "density".to_string()]);
        prop_assert_eq!(rows.len(), values.len());
        for (row, &v) in rows.iter().zip(&values) {
            prop_assert_eq!(row[0].parse::<f64>().unwrap().to_bits(), v.to_bits());
            prop_assert_eq!(row[1].parse::<f64>().unwrap().to_bits(), (v / 3.0).to_bits());
        }
        prop_assert_eq!(format_float(1.0), "1.0000000000000000e0");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn spectrum_summary_invariants(n in 1usize..24, seed in any::<u64>(), complex in any::<bool>()) {
        let kind = if complex { EnsembleKind::Complex } else { EnsembleKind::Real };
        let mut rng = sample_stream(seed, 0);
        let m = sample_matrix(kind, n, &mut rng).unwrap();
        let eigs = eigenvalues(&m).unwrap();
        prop_assert_eq!(eigs.len(), n);
        let sc = scaling_constants(n.max(2) as u64).unwrap();
        let s = spectrum_summary(&eigs, &sc);
        let max_mod = eigs.iter().map(|z| z.norm()).fold(0.0, f64::max);
        prop_assert_eq!(s.spectral_radius, max_mod);
        if let Some(x) = s.largest_real {
            prop_assert!(x <= s.spectral_radius);
        }
        if let Some(r) = s.largest_complex_modulus {
            prop_assert!(r <= s.spectral_radius);
        }
        prop_assert!(s.scaled_upper_half_points.iter().all(|p| p.theta > 0.0 && p.theta < PI));
        if !complex {
            prop_assert_eq!(s.real_count % 2, n % 2);
            // Non-real eigenvalues of a real matrix come in conjugate pairs.
            let upper = eigs.iter().filter(|z| z.im > 0.0).count();
            let lower = eigs.iter().filter(|z| z.im < 0.0).count();
            prop_assert_eq!(upper, lower);
            prop_assert_eq!(s.scaled_upper_half_points.len(), upper);
        }
    }

    #[test]
    fn merge_is_associative(n in 2usize..10, a in 1u64..20, b in 1u64..20, c in 1u64..20, seed in any::<u64>()) {
        let ra = small_run(EnsembleKind::Real, n, 0, a, seed);
        let rb = small_run(EnsembleKind::Real, n, a, b, seed);
        let rc = small_run(EnsembleKind::Real, n, a + b, c, seed);
        let left = merge_results(&merge_results(&ra, &rb).unwrap(), &rc).unwrap();
        let right = merge_results(&ra, &merge_results(&rb, &rc).unwrap()).unwrap();
        let direct = small_run(EnsembleKind::Real, n, 0, a + b + c, seed);
        prop_assert_eq!(left.samples, a + b + c);
        prop_assert_eq!(left.real_count_sum, right.real_count_sum);
        prop_assert_eq!(left.largest_is_real, right.largest_is_real);
        prop_assert_eq!(&left.largest_real, &right.largest_real);
        prop_assert_eq!(&left.largest_real, &direct.largest_real);
        prop_assert_eq!(left.real_count_sum, direct.real_count_sum);
        prop_assert_eq!(left.parity_violations, 0);
    }

    #[test]
    fn sectors_are_additive(n in 4usize..30, seed in any::<u64>(), cut in 0.01f64..3.13, t in -4.0f64..2.0) {
        let r = small_run(EnsembleKind::Real, n, 0, 20, seed);
        let rows = sector_counts_per_sample(&r, t, &[(0.0, PI), (0.0, cut), (cut, PI)]).unwrap();
        prop_assert!(rows.iter().all(|c| c[0] == c[1] + c[2]));
    }

    #[test]
    fn config_flags_override_file(file_seed in 0u64..1000, flag_seed in 0u64..1000, file_n in 4u64..200) {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.conf");
        std::fs::write(&path, format!("# settings\nseed = {file_seed}\nn = {file_n}\nsamples = 77\n")).unwrap();
        let argv: Vec<String> = ["ginibre", "simulate", "--config", path.to_str().unwrap(), "--seed", &flag_seed.to_string()]
            .iter().map(|s| s.to_string()).collect();
        let config = parse_config(&argv).unwrap();
        prop_assert_eq!(config.seed, flag_seed);
        prop_assert_eq!(config.n, Some(file_n));
        prop_assert_eq!(config.samples, 77);
    }

    #[test]
    fn limit_law_is_monotone(t in -5.0f64..6.0, dt in 0.01f64..2.0) {
        let g = GridParams::default();
        let lo = limit_law_real(t, g).unwrap().probability;
        let hi = limit_law_real(t + dt, g).unwrap().probability;
        prop_assert!((0.0..=1.0).contains(&lo));
        prop_assert!(hi >= lo - 1e-12);
    }
}
