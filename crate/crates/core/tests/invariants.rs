use std::f64::consts::{FRAC_PI_2, PI};

use proptest::prelude::*;
use qpd::equilibrium::{best_response, quadratic_form, ResponseConfig};
use qpd::linalg::{identity2, jacobi_eigs, unitary_from_su2, ComplexScalar};
use qpd::strategy::{catalog_lookup, canonical_sign};
use qpd::{ComplexMatrix, Game, Space, StrategyPoint};

fn unit4() -> impl Strategy<Value = [f64; 4]> {
    prop::array::uniform4(-1.0f64..1.0)
        .prop_filter("non-degenerate", |v| v.iter().map(|x| x * x).sum::<f64>() > 1e-2)
        .prop_map(|v| {
            let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            v.map(|x| x / n)
        })
}

fn game(players: usize, gamma: f64) -> Game {
    if players == 2 { Game::pd2(gamma) } else { Game::pd3(gamma) }.unwrap()
}

fn su2(v: [f64; 4]) -> ComplexMatrix {
    unitary_from_su2(v).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn probabilities_sum_to_one(gamma in 0.0..=FRAC_PI_2, a in unit4(), b in unit4(), c in unit4(), three in any::<bool>()) {
        let g = game(if three { 3 } else { 2 }, gamma);
        let profile: Vec<ComplexMatrix> = [a, b, c][..g.players()].iter().map(|v| su2(*v)).collect();
        let p = g.outcome_probabilities(&profile).unwrap();
        prop_assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        prop_assert!(p.iter().all(|x| *x >= -1e-15));
        let report = g.final_state(&profile).unwrap();
        prop_assert!((report.state.norm_sqr() - 1.0).abs() < 1e-12);
        for (x, y) in report.outcome_probabilities.iter().zip(&p) {
            prop_assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn global_phase_and_sign_do_not_matter(gamma in 0.0..=FRAC_PI_2, a in unit4(), b in unit4(), c in unit4(), alpha in 0.0..std::f64::consts::TAU) {
        let g = game(3, gamma);
        let base = g.payoffs(&[su2(a), su2(b), su2(c)]).unwrap();
        let phased = g.payoffs(&[su2(a).scale(ComplexScalar::from_polar(1.0, alpha)), su2(b), su2(c)]).unwrap();
        let signed = g.payoffs(&[su2(a.map(|x| -x)), su2(b), su2(c)]).unwrap();
        prop_assert!(base.max_abs_diff(&phased) < 1e-12);
        prop_assert!(base.max_abs_diff(&signed) < 1e-12);
        prop_assert_eq!(canonical_sign(a.map(|x| -x)), canonical_sign(a));
    }

    #[test]
    fn quadratic_form_reproduces_payoffs(gamma in 0.0..=FRAC_PI_2, v in unit4(), b in unit4(), c in unit4(), player in 0usize..3) {
        let g = game(3, gamma);
        let others = vec![su2(b), su2(c)];
        let m = quadratic_form(&g, player, &others).unwrap();
        let mut profile = others.clone();
        profile.insert(player, su2(v));
        let direct = g.payoffs(&profile).unwrap()[player];
        prop_assert!((m.quad(&v) - direct).abs() < 1e-10);
    }

    #[test]
    fn eigen_best_response_dominates_samples(gamma in 0.0..=FRAC_PI_2, b in unit4(), samples in prop::collection::vec(unit4(), 32)) {
        let g = game(2, gamma);
        let br = best_response(&g, 0, &[su2(b)], Space::Su2, &ResponseConfig::default()).unwrap();
        let m = quadratic_form(&g, 0, &[su2(b)]).unwrap();
        prop_assert!((br.value - jacobi_eigs(&m).unwrap().max_eigenvalue()).abs() < 1e-12);
        for v in samples {
            prop_assert!(g.payoffs(&[su2(v), su2(b)]).unwrap()[0] <= br.value + 1e-10);
        }
        let StrategyPoint::Su2(top) = br.argmax[0] else { panic!("su2 argmax") };
        prop_assert!((g.payoffs(&[su2(top), su2(b)]).unwrap()[0] - br.value).abs() < 1e-9);
    }

    #[test]
    fn permuting_players_permutes_payoffs(gamma in 0.0..=FRAC_PI_2, a in unit4(), b in unit4(), c in unit4()) {
        let g = game(3, gamma);
        let p = g.payoffs(&[su2(a), su2(b), su2(c)]).unwrap();
        let q = g.payoffs(&[su2(c), su2(a), su2(b)]).unwrap();
        prop_assert!((q[0] - p[2]).abs() < 1e-12 && (q[1] - p[0]).abs() < 1e-12 && (q[2] - p[1]).abs() < 1e-12);
        let g2 = game(2, gamma);
        let p = g2.payoffs(&[su2(a), su2(b)]).unwrap();
        let q = g2.payoffs(&[su2(b), su2(a)]).unwrap();
        prop_assert!((q[0] - p[1]).abs() < 1e-12 && (q[1] - p[0]).abs() < 1e-12);
    }

    #[test]
    fn closed_form_against_two_flips(gamma in 0.0..=FRAC_PI_2, theta in 0.0..=PI, phi in 0.0..=FRAC_PI_2) {
        let g = game(3, gamma);
        let isy = catalog_lookup::<f64>("iSy").unwrap().to_unitary();
        let u = StrategyPoint::two_param_offdiag(theta, phi).unwrap().to_unitary();
        let alice = g.payoffs(&[u, isy.clone(), isy]).unwrap()[0];
        let want = (1.0 + 2.0 * phi.cos().powi(2) * gamma.sin().powi(2)) * (theta / 2.0).sin().powi(2);
        prop_assert!((alice - want).abs() < 1e-10);
    }

    #[test]
    fn classical_profiles_ignore_entanglement(gamma in 0.0..=FRAC_PI_2, code in 0usize..8) {
        let isx = catalog_lookup::<f64>("iSx").unwrap().to_unitary();
        let ops: Vec<ComplexMatrix> = (0..3).map(|k| if (code >> (2 - k)) & 1 == 1 { isx.clone() } else { identity2() }).collect();
        let entangled = game(3, gamma).payoffs(&ops).unwrap();
        let plain = game(3, 0.0).payoffs(&ops).unwrap();
        prop_assert!(entangled.max_abs_diff(&plain) < 1e-12);
        let row = game(3, 0.0).table().entries().nth(code).unwrap().1.to_vec();
        prop_assert!(entangled.as_slice().iter().zip(&row).all(|(x, y)| (x - y).abs() < 1e-12));
    }

    #[test]
    fn jacobi_reconstructs(rows in prop::array::uniform4(prop::array::uniform4(-5.0f64..5.0))) {
        let m = qpd::SymmetricMatrix4::from_upper(|i, j| rows[i.min(j)][i.max(j)]);
        let eig = jacobi_eigs(&m).unwrap();
        prop_assert!(eig.reconstruct().max_abs_diff(&m) < 1e-10);
        prop_assert!((eig.eigenvalues.iter().sum::<f64>() - m.trace()).abs() < 1e-10);
    }
}

#[test]
fn single_precision_payoffs_agree() {
    let g32 = qpd::game::GameDefinition::<f32>::pd2(0.9).unwrap();
    let g64 = Game::pd2(0.9).unwrap();
    let q32 = qpd::named_in_space::<f32>("Q", Space::TwoParamDiag).unwrap().to_unitary();
    let d32 = qpd::named_in_space::<f32>("D", Space::TwoParamDiag).unwrap().to_unitary();
    let q64 = qpd::named_in_space::<f64>("Q", Space::TwoParamDiag).unwrap().to_unitary();
    let d64 = qpd::named_in_space::<f64>("D", Space::TwoParamDiag).unwrap().to_unitary();
    let p32 = g32.payoffs(&[q32, d32]).unwrap();
    let p64 = g64.payoffs(&[q64, d64]).unwrap();
    for k in 0..2 {
        assert!((p32[k] as f64 - p64[k]).abs() < 1e-5);
    }
}
