use num_complex::Complex;

use super::*;
use crate::combinat::{dim_irrep, kostka, majorizes, type_class_size, Frequency, YoungFrame};
use crate::divergences::{phi_closed, quantum_relative_entropy};
use crate::matcore::{haar_unitary, leading_principal_minor, random_density, tensor_power_apply};
use crate::schur_weyl::{antisym_vector, projector_f_lambda, string_index, Block, ProjectorMethod, SchurWeylCaps};
use crate::{ComplexMatrix, Dist, State, C64};

fn caps() -> SchurWeylCaps {
    SchurWeylCaps::default()
}

fn frame(rows: &[usize]) -> YoungFrame {
    YoungFrame::new(rows.to_vec()).unwrap()
}

fn freq(counts: &[usize]) -> Frequency {
    Frequency::new(counts.to_vec()).unwrap()
}

fn dist(p: &[f64]) -> Dist {
    Dist::from_f64(p).unwrap()
}

fn sigma_example() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[&[0.7, 0.1], &[0.1, 0.3]]).unwrap()
}

#[test]
fn trace_state_examples() {
    let s = sigma_example();
    let t = trace_state(&freq(&[1, 1]), &frame(&[1, 1]), &s, &caps()).unwrap();
    assert!((t - 0.20).abs() < 1e-14);
    let t = trace_state(&freq(&[1, 1]), &frame(&[2]), &s, &caps()).unwrap();
    assert!((t - 0.22).abs() < 1e-14);
    for d in [2, 3] {
        let mixed = ComplexMatrix::identity(d).scale(1.0 / d as f64);
        for f in Frequency::all(4, d) {
            for l in YoungFrame::all(4, d) {
                let t = trace_state(&f, &l, &mixed, &caps()).unwrap();
                let expected = (kostka(&l, &f) as u128 * dim_irrep(&l)) as f64 / (d as f64).powi(4);
                assert!((t - expected).abs() < 1e-13);
            }
        }
    }
}

#[test]
fn exact_trace_identity() {
    for (d, max_n) in [(2usize, 8usize), (3, 6)] {
        for seed in 0..4 {
            let sigma = random_density::<f64>(d, 1000 + seed, d).unwrap();
            let minors: Vec<f64> = (1..=d).map(|k| leading_principal_minor(sigma.matrix(), k).unwrap().re).collect();
            for n in 2..=max_n {
                for l in YoungFrame::all(n, d) {
                    let rows = l.padded(d).unwrap();
                    let f = Frequency::new(rows.clone()).unwrap();
                    let t = trace_state(&f, &l, sigma.matrix(), &caps()).unwrap();
                    let mut expected = dim_irrep(&l) as f64;
                    for j in 0..d {
                        let next = if j + 1 < d { rows[j + 1] } else { 0 };
                        expected *= minors[j].powi((rows[j] - next) as i32);
                    }
                    assert!(((t - expected) / expected).abs() < 1e-9, "{l}: {t} vs {expected}");
                }
            }
        }
    }
}

#[test]
fn trace_conjugated_examples() {
    let id = ComplexMatrix::identity(2);
    let f = freq(&[2, 1]);
    let l = frame(&[2, 1]);
    let p = projector_f_lambda(&f, &l, ProjectorMethod::ClassSums, &caps()).unwrap();
    let t = trace_conjugated(&f, &l, &f, &id, &caps()).unwrap();
    assert!((t - p.trace()).abs() < 1e-12);
    assert_eq!(trace_conjugated(&f, &l, &freq(&[1, 2]), &id, &caps()).unwrap(), 0.0);
    for seed in 0..5 {
        let u = haar_unitary::<f64>(2, seed);
        let t = trace_conjugated(&freq(&[1, 1]), &frame(&[1, 1]), &freq(&[1, 1]), u.matrix(), &caps()).unwrap();
        assert!((t - 1.0).abs() < 1e-12);
    }
}

#[test]
fn selection_rule_and_symmetry() {
    let caps = caps();
    for seed in 0..3 {
        let u = haar_unitary::<f64>(3, 40 + seed);
        let n = 4;
        let frames = YoungFrame::all(n, 3);
        for f in Frequency::all(n, 3) {
            for l in &frames {
                if kostka(l, &f) == 0 {
                    continue;
                }
                let tr_p = (kostka(l, &f) as u128 * dim_irrep(l)) as f64;
                let mut total = 0.0;
                for g in Frequency::all(n, 3) {
                    let t = trace_conjugated(&f, l, &g, u.matrix(), &caps).unwrap();
                    let back = trace_conjugated(&g, l, &f, &u.matrix().adjoint(), &caps).unwrap();
                    assert!((t - back).abs() < 1e-10);
                    total += t;
                    for mu in &frames {
                        if mu != l {
                            assert_eq!(trace_conjugated_frames(&f, l, &g, mu, u.matrix(), &caps).unwrap(), 0.0);
                            let raw = trace_conjugated_unchecked(&f, l, &g, mu, u.matrix(), &caps).unwrap();
                            assert!(raw.abs() < 1e-10);
                        }
                    }
                }
                assert!((total - tr_p).abs() < 1e-9, "{f} {l}: {total} vs {tr_p}");
            }
        }
    }
}

#[test]
fn overlap_examples() {
    let diag = ComplexMatrix::from_diag(&[0.6, 0.4]);
    assert!((overlap_vf(&freq(&[5, 0]), &diag).unwrap() - 0.6f64.powi(5)).abs() < 1e-15);
    assert!((overlap_vf(&freq(&[1, 1]), &sigma_example()).unwrap() - 0.22).abs() < 1e-14);
    let half = ComplexMatrix::identity(2).scale(0.5);
    assert!((overlap_vf(&freq(&[1, 1]), &half).unwrap() - 0.25).abs() < 1e-15);
}

fn brute_theta1(a: &ComplexMatrix, f: &Frequency, g: &Frequency) -> f64 {
    let n = f.n();
    let block = Block::type_class(f, 1 << 20).unwrap();
    let mut v = vec![Complex::new(0.0, 0.0); 1 << n];
    let amp = 1.0 / (block.len() as f64).sqrt();
    for x in block.strings() {
        v[string_index(x, 2)] = Complex::new(amp, 0.0);
    }
    let w = tensor_power_apply(&a.adjoint(), n, &v).unwrap();
    Block::type_class(g, 1 << 20).unwrap().strings().iter().map(|y| w[string_index(y, 2)].norm_sqr()).sum()
}

#[test]
fn theta1_overlap_matches_brute_force() {
    for seed in 0..5 {
        let a = haar_unitary::<f64>(2, 300 + seed).into_matrix();
        let b = crate::matcore::ginibre::<f64, _>(2, 2, &mut crate::matcore::seeded_rng(seed));
        for m in [&a, &b] {
            for n in 1..=7 {
                for f in Frequency::all(n, 2) {
                    for g in Frequency::all(n, 2) {
                        let fast = theta1_overlap(m, &f, &g).unwrap();
                        let slow = brute_theta1(m, &f, &g);
                        assert!((fast - slow).abs() < 1e-12 * slow.max(1.0), "{f} {g}: {fast} {slow}");
                    }
                }
            }
        }
    }
}

#[test]
fn theta2_overlap_matches_brute_force() {
    let v2 = antisym_vector(2, 2).unwrap();
    for seed in 0..4 {
        let a = crate::matcore::ginibre::<f64, _>(2, 2, &mut crate::matcore::seeded_rng(50 + seed));
        for pairs in 1..=5 {
            let mut v = v2.clone();
            for _ in 1..pairs {
                v = v.tensor(&v2).unwrap();
            }
            let w = tensor_power_apply(&a.adjoint(), 2 * pairs, v.amps()).unwrap();
            for g in Frequency::all(2 * pairs, 2) {
                let slow: f64 = Block::type_class(&g, 1 << 20)
                    .unwrap()
                    .strings()
                    .iter()
                    .map(|y| w[string_index(y, 2)].norm_sqr())
                    .sum();
                let fast = theta2_overlap(&a, &g).unwrap();
                assert!((fast - slow).abs() < 1e-12 * slow.max(1.0));
            }
        }
    }
}

#[test]
fn rounding_examples() {
    let (f, l) = frame_rounding(&dist(&[0.5, 0.5]), &dist(&[0.5, 0.5]), 4).unwrap();
    assert_eq!((f.counts(), l.rows()), (&[2usize, 2][..], &[2usize, 2][..]));
    let (f, l) = frame_rounding(&dist(&[0.5, 0.5]), &dist(&[0.75, 0.25]), 4).unwrap();
    assert_eq!((f.counts(), l.rows()), (&[2usize, 2][..], &[3usize, 1][..]));
    assert!(matches!(
        frame_rounding(&dist(&[0.9, 0.1]), &dist(&[0.6, 0.4]), 10),
        Err(crate::Error::Infeasible(_))
    ));
    assert_eq!(largest_remainder(&[0.5, 0.5], 3), vec![2, 1]);
}

#[test]
fn rounding_properties() {
    for seed in 0..200u64 {
        let d = 2 + (seed % 3) as usize;
        let rho = random_density::<f64>(d, 7000 + seed, d).unwrap();
        let u = haar_unitary::<f64>(d, 9000 + seed);
        let s = dist(&rho.spectrum().unwrap());
        let p = dist(&rho.conjugate(&u).pinching());
        for n in [1, 2, 3, 5, 8, 13, 40] {
            let (f, l) = frame_rounding(&p, &s, n).unwrap();
            assert_eq!(f.n(), n);
            assert_eq!(l.n(), n);
            assert!(kostka(&l, &f) > 0);
            let rows = l.padded(d).unwrap();
            let lf: Vec<f64> = rows.iter().map(|&r| r as f64).collect();
            let ff: Vec<f64> = f.sorted_frame().padded(d).unwrap().iter().map(|&r| r as f64).collect();
            assert!(majorizes(&lf, &ff));
            let tv_f: f64 = f.normalized().iter().zip(p.probs()).map(|(a, b)| (a - b).abs()).sum::<f64>() / 2.0;
            let tv_l: f64 = rows.iter().zip(s.probs()).map(|(&a, b)| (a as f64 / n as f64 - b).abs()).sum::<f64>() / 2.0;
            assert!(tv_f <= d as f64 / n as f64 + 1e-12 && tv_l <= d as f64 / n as f64 + 1e-12);
        }
    }
}

#[test]
fn fit_recovers_model() {
    let ns: Vec<usize> = (2..=12).collect();
    let rates: Vec<f64> = ns.iter().map(|&n| 0.3 + 0.7 * (n as f64).log2() / n as f64 - 0.2 / n as f64).collect();
    let fit = fit_rate(&ns, &rates).unwrap();
    assert!((fit.limit - 0.3).abs() < 1e-10 && fit.residual < 1e-12);
}

#[test]
fn phi_series_zero_rate() {
    let rho = State::new(ComplexMatrix::from_diag(&[0.7, 0.3])).unwrap();
    let series = rate_series(&SeriesTarget::Phi { rho: rho.clone(), sigma: rho }, &(2..=10).collect::<Vec<_>>(), &caps()).unwrap();
    assert!(series.limit.abs() <= 0.02, "{}", series.limit);
    assert!(series.skipped.is_empty());
}

#[test]
fn lambda_series_matches_relative_entropy() {
    let sigma = State::new(ComplexMatrix::from_diag(&[0.35, 0.65])).unwrap();
    for seed in 0..3 {
        let rho = random_density::<f64>(2, 500 + seed, 2).unwrap();
        let d = quantum_relative_entropy(&rho, &sigma).unwrap().value;
        let series = rate_series(&SeriesTarget::Lambda { rho, sigma: sigma.clone() }, &(2..=10).collect::<Vec<_>>(), &caps()).unwrap();
        assert!((series.limit - d).abs() <= 0.05, "{} vs {d}", series.limit);
    }
}

#[test]
fn phi_series_matches_closed_form() {
    for seed in 0..3 {
        let rho = random_density::<f64>(2, 600 + 2 * seed, 2).unwrap();
        let sigma = random_density::<f64>(2, 601 + 2 * seed, 2).unwrap();
        let phi = phi_closed(&rho, &sigma).unwrap().value;
        let series = rate_series(&SeriesTarget::Phi { rho, sigma }, &(2..=10).collect::<Vec<_>>(), &caps()).unwrap();
        assert!((series.limit - phi).abs() <= 0.05, "{} vs {phi}", series.limit);
        let gaps: Vec<f64> = series.smoothed.iter().map(|r| (r - phi).abs()).collect();
        for w in gaps.windows(2) {
            assert!(w[1] <= w[0] + 0.02, "{gaps:?}");
        }
    }
}

#[test]
fn series_reports_infeasible_targets() {
    let a = ComplexMatrix::identity(2);
    let target = SeriesTarget::Delta { p: dist(&[0.9, 0.1]), s: dist(&[0.6, 0.4]), sigma: a.scale(0.5), a };
    assert!(matches!(rate_series(&target, &[4], &caps()), Err(crate::Error::Infeasible(_))));
}

#[test]
fn quantity_names_round_trip() {
    for q in Quantity::ALL {
        assert_eq!(q.name().parse::<Quantity>().unwrap(), q);
    }
    assert!("gamma".parse::<Quantity>().is_err());
    let _ = type_class_size(&freq(&[1]));
    let _: C64 = Complex::new(0.0, 0.0);
}
