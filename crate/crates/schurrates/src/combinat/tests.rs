use proptest::prelude::*;

use super::*;

fn frame(rows: &[usize]) -> YoungFrame {
    YoungFrame::new(rows.to_vec()).unwrap()
}

fn freq(counts: &[usize]) -> Frequency {
    Frequency::new(counts.to_vec()).unwrap()
}

#[test]
fn entropy_examples() {
    assert_eq!(entropy(&[1.0, 0.0]), 0.0);
    assert!((entropy(&[0.5f64, 0.5]) - 1.0).abs() < 1e-15);
    let h = -(0.7f64 * 0.7f64.log2() + 0.3 * 0.3f64.log2());
    assert!((entropy(&[0.7, 0.3]) - h).abs() < 1e-15);
    assert!((entropy(&[0.7f64, 0.3]) - 0.881_290_899_230_218).abs() < 1e-12);
    assert!((entropy(&[0.7f32, 0.3]) - 0.881_290_9).abs() < 1e-6);
}

#[test]
fn kl_examples() {
    assert_eq!(kl(&[0.3, 0.7], &[0.3, 0.7]).unwrap(), 0.0);
    assert!((kl(&[1.0, 0.0], &[0.7, 0.3]).unwrap() - (1.0f64 / 0.7).log2()).abs() < 1e-15);
    assert_eq!(kl(&[0.5, 0.5], &[1.0, 0.0]).unwrap(), f64::INFINITY);
    assert!(kl(&[0.5, 0.5], &[1.5, -0.5]).is_err());
    // Unnormalized reference.
    assert!((kl(&[1.0f64, 0.0], &[0.5, 7.0]).unwrap() - 1.0).abs() < 1e-15);
}

#[test]
fn distribution_clamps_and_rejects() {
    let d = Distribution::<f64>::new(vec![1.0 + 5e-11, -5e-15]).unwrap();
    assert_eq!(d.probs(), &[1.0, 0.0]);
    assert!(Distribution::<f64>::new(vec![0.5, 0.6]).is_err());
    assert!(Distribution::<f64>::new(vec![1.1, -0.1]).is_err());
}

#[test]
fn type_class_examples() {
    assert_eq!(type_class_size(&freq(&[1, 1])), 2);
    assert_eq!(type_class_size(&freq(&[2, 1])), 3);
    let size = type_class_size(&freq(&[3, 3])) as f64;
    assert_eq!(size, 20.0);
    assert!(2f64.powi(6) / 49.0 <= size && size <= 2f64.powi(6));
}

#[test]
fn type_class_enumeration() {
    assert_eq!(enumerate_type_class(&freq(&[1, 1]), 10).unwrap(), vec![vec![0, 1], vec![1, 0]]);
    assert_eq!(enumerate_type_class(&freq(&[2, 0]), 10).unwrap(), vec![vec![0, 0]]);
    let strings = enumerate_type_class(&freq(&[2, 1]), 10).unwrap();
    assert_eq!(strings.len(), 3);
    for s in &strings {
        assert_eq!(Frequency::of_string(s, 2), freq(&[2, 1]));
    }
    assert!(strings.windows(2).all(|w| w[0] < w[1]));
    assert!(matches!(
        enumerate_type_class(&freq(&[10, 10]), 1000),
        Err(crate::Error::CapExceeded { .. })
    ));
}

#[test]
fn type_class_sizes_sum_to_d_pow_n() {
    for d in 1..=4usize {
        for n in 0..=7usize {
            let total: u128 = Frequency::all(n, d).iter().map(type_class_size).sum();
            assert_eq!(total, (d as u128).pow(n as u32));
        }
    }
}

#[test]
fn type_class_entropy_bounds() {
    for n in 1..=12usize {
        for f in Frequency::all(n, 3) {
            let size = type_class_size(&f) as f64;
            let h = entropy(&f.normalized());
            let upper = 2f64.powf(n as f64 * h);
            let lower = upper / ((n + 1) as f64).powi(3);
            assert!(lower <= size * (1.0 + 1e-12) && size <= upper * (1.0 + 1e-12), "{f}");
        }
    }
}

#[test]
fn dim_irrep_examples() {
    assert_eq!(dim_irrep(&frame(&[5])), 1);
    assert_eq!(dim_irrep(&frame(&[1, 1])), 1);
    assert_eq!(dim_irrep(&frame(&[2, 1])), 2);
    assert_eq!(dim_irrep(&frame(&[3, 2])), 5);
    assert_eq!(dim_irrep(&frame(&[4, 2, 1])), 35);
}

#[test]
fn dim_irrep_squares_sum_to_factorial() {
    for n in 1..=10 {
        let total: u128 = YoungFrame::all(n, n).iter().map(|l| dim_irrep(l).pow(2)).sum();
        assert_eq!(total, factorial(n));
    }
}

#[test]
fn dim_irrep_entropy_bounds() {
    for n in 1..=14usize {
        for lambda in YoungFrame::all(n, 3) {
            let dim = dim_irrep(&lambda) as f64;
            let h = entropy(&lambda.normalized(3));
            assert!(dim <= 2f64.powf(n as f64 * h) * (1.0 + 1e-12));
            let slack = 2.0 * 3f64.powi(6) / n as f64 * (2.0 * n as f64).log2();
            assert!(dim >= 2f64.powf(n as f64 * (h - slack)));
        }
    }
}

#[test]
fn kostka_examples() {
    assert_eq!(kostka(&frame(&[3, 1]), &freq(&[3, 1])), 1);
    assert_eq!(kostka(&frame(&[2, 1]), &freq(&[1, 1, 1])), 2);
    assert_eq!(kostka(&frame(&[1, 1]), &freq(&[2, 0])), 0);
    assert_eq!(kostka(&frame(&[3, 2, 1]), &freq(&[2, 2, 2])), 2);
    assert_eq!(kostka(&frame(&[2, 2]), &freq(&[1, 1, 1, 1])), 2);
}

#[test]
fn kostka_positive_iff_majorization() {
    for n in 1..=8usize {
        for d in 1..=3usize {
            for lambda in YoungFrame::all(n, d) {
                for f in Frequency::all(n, d) {
                    let sorted = f.sorted_frame();
                    let lam = lambda.normalized(d);
                    let fs = sorted.normalized(d);
                    assert_eq!(kostka(&lambda, &f) > 0, majorizes(&lam, &fs), "{lambda} {f}");
                }
            }
        }
    }
}

#[test]
fn kostka_symmetric_in_content_order() {
    let lambda = frame(&[4, 2, 1]);
    assert_eq!(kostka(&lambda, &freq(&[3, 2, 2])), kostka(&lambda, &freq(&[2, 3, 2])));
    assert_eq!(kostka(&lambda, &freq(&[3, 2, 2])), kostka(&lambda, &freq(&[2, 2, 3])));
}

#[test]
fn schur_weyl_dimension_count() {
    for n in 1..=6usize {
        for d in 1..=3usize {
            let total: u128 = YoungFrame::all(n, d)
                .iter()
                .map(|l| {
                    let ssyt: u128 = Frequency::all(n, d).iter().map(|f| kostka(l, f) as u128).sum();
                    dim_irrep(l) * ssyt
                })
                .sum();
            assert_eq!(total, (d as u128).pow(n as u32));
        }
    }
}

#[test]
fn character_examples() {
    for mu in YoungFrame::all(5, 5) {
        assert_eq!(character(&frame(&[5]), &mu), 1);
        let sign = if (5 - mu.len()) % 2 == 0 { 1 } else { -1 };
        assert_eq!(character(&frame(&[1, 1, 1, 1, 1]), &mu), sign);
    }
    assert_eq!(character(&frame(&[2, 1]), &frame(&[1, 1, 1])), 2);
    assert_eq!(character(&frame(&[2, 1]), &frame(&[2, 1])), 0);
    assert_eq!(character(&frame(&[2, 1]), &frame(&[3])), -1);
}

#[test]
fn character_orthogonality() {
    for n in 1..=7 {
        let frames = YoungFrame::all(n, n);
        for a in &frames {
            for b in &frames {
                let inner: i128 = frames
                    .iter()
                    .map(|mu| class_size(mu) as i128 * (character(a, mu) * character(b, mu)) as i128)
                    .sum();
                let expected = if a == b { factorial(n) as i128 } else { 0 };
                assert_eq!(inner, expected);
            }
            assert_eq!(character(a, &frame(&vec![1; n])) as u128, dim_irrep(a));
        }
    }
}

#[test]
fn characters_agree_across_threads() {
    let frames = YoungFrame::all(8, 8);
    let reference: Vec<i64> = frames.iter().map(|l| character(l, &frame(&[3, 3, 2]))).collect();
    std::thread::scope(|s| {
        for _ in 0..4 {
            s.spawn(|| {
                let got: Vec<i64> = frames.iter().map(|l| character(l, &frame(&[3, 3, 2]))).collect();
                assert_eq!(got, reference);
            });
        }
    });
}

#[test]
fn class_sizes_sum() {
    for n in 1..=8 {
        let total: u128 = YoungFrame::all(n, n).iter().map(class_size).sum();
        assert_eq!(total, factorial(n));
    }
    assert_eq!(cycle_type_of(&[1, 0, 2]), frame(&[2, 1]));
}

#[test]
fn majorization_examples() {
    assert!(majorizes(&[0.6, 0.4], &[0.6, 0.4]));
    assert!(majorizes(&[1.0, 0.0], &[0.5, 0.5]));
    assert!(!majorizes(&[0.5, 0.5], &[0.6, 0.4]));
}

#[test]
fn s_hat_examples() {
    let sh = |s: &[f64]| s_hat(&Distribution::<f64>::from_f64(s).unwrap()).unwrap().probs().to_vec();
    assert_eq!(sh(&[1.0, 0.0]), vec![1.0, 0.0]);
    assert_eq!(sh(&[0.5, 0.5]), vec![0.0, 1.0]);
    let v = sh(&[0.7, 0.3]);
    assert!((v[0] - 0.4).abs() < 1e-15 && (v[1] - 0.6).abs() < 1e-15);
    assert!(s_hat(&Distribution::<f64>::from_f64(&[0.3, 0.7]).unwrap()).is_err());
}

#[test]
fn channel_application() {
    let w = Channel::new(vec![vec![0.9f64, 0.2], vec![0.1, 0.8]]).unwrap();
    let out = w.apply(&[0.5, 0.5]).unwrap();
    assert!((out[0] - 0.55).abs() < 1e-15);
    assert!(Channel::new(vec![vec![0.9, 0.2], vec![0.2, 0.8]]).is_err());
}

proptest! {
    #[test]
    fn s_hat_sums_to_one(raw in prop::collection::vec(0.01f64..1.0, 1..7)) {
        let total: f64 = raw.iter().sum();
        let mut s: Vec<f64> = raw.iter().map(|x| x / total).collect();
        s.sort_by(|a, b| b.partial_cmp(a).unwrap());
        let sh = s_hat(&Distribution::new(s).unwrap()).unwrap();
        prop_assert!((sh.probs().iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn entropy_continuity(raw in prop::collection::vec(0.0f64..1.0, 4), noise in prop::collection::vec(-1.0f64..1.0, 4), scale in 0.0f64..0.5) {
        let total: f64 = raw.iter().sum::<f64>() + 1e-9;
        let p: Vec<f64> = raw.iter().map(|x| (x + 1e-9 / 4.0) / total).collect();
        // Perturb along a zero-sum direction that keeps q inside the simplex.
        let mean = noise.iter().sum::<f64>() / 4.0;
        let dir: Vec<f64> = noise.iter().map(|x| x - mean).collect();
        let mut step = scale;
        for (a, b) in p.iter().zip(&dir) {
            if *b < 0.0 { step = step.min(a / -b); }
        }
        let q: Vec<f64> = p.iter().zip(&dir).map(|(a, b)| (a + step * b).max(0.0)).collect();
        let theta: f64 = p.iter().zip(&q).map(|(a, b)| (a - b).abs()).sum();
        prop_assume!(theta > 0.0 && theta <= 0.5);
        let bound = -theta * (theta / 4.0).log2();
        prop_assert!((entropy(&p) - entropy(&q)).abs() <= bound + 1e-9);
    }
}
