mod common;

use common::*;
use phi4_standing::coeff_algebra::{diagonal_residuals, diagonal_residuals_unscaled};
use phi4_standing::elliptic::*;
use phi4_standing::galerkin::eliminate_comega;
use phi4_standing::{Exec, Precision, Real};
use proptest::prelude::*;

fn solved() -> ClosedForm {
    closed_form_params(prec()).unwrap()
}

#[test]
fn published_parameters() {
    let cf = solved();
    let pr = &cf.params;
    assert!(close(&pr.q, &r(REF_Q), 1e-12));
    for (got, want) in [
        (&pr.k, REF_K),
        (&pr.gamma, REF_GAMMA),
        (&pr.alpha, REF_ALPHA),
        (&cf.omega1_coeff, REF_OMEGA1),
        (&cf.omega2_coeff, REF_OMEGA2),
    ] {
        assert!(close(got, &r(want), 1e-9), "{got} vs {want}");
    }
    assert!(close(&(&pr.alpha * &pr.gamma), &Real::from_i64(prec(), 4), 1e-35));
    pr.check().unwrap();
}

#[test]
fn frozen_high_precision_nome() {
    // 40-digit reference, stable under a 60-digit rerun
    let cf = solved();
    assert_eq!(cf.params.q.to_sci(30), "1.42142623201676999650094430870e-2");
    let hi = closed_form_params(Precision::from_digits(60)).unwrap();
    assert!(close(&hi.params.q, &cf.params.q, 1e-38));
}

#[test]
fn nome_residual_at_printed_value() {
    let q = r(REF_Q);
    let res = nome_equation_residual(&q, series_terms(&q));
    assert!(res.abs() < 1e-12);
    let half = r("0.5");
    assert!(nome_equation_residual(&half, series_terms(&half)) > 0.0);
}

#[test]
fn solve_with_loose_tolerance() {
    let s = solve_nome(prec(), &r("1e-13")).unwrap();
    assert!(close(&s.q, &r(REF_Q), 1e-13));
    assert_eq!(s.sign_changes, 1);
}

#[test]
fn modulus_from_printed_nome() {
    let k = modulus_from_nome(&r(REF_Q)).unwrap();
    assert!(close(&k, &r(REF_K), 1e-10));
    let kk = agm_elliptic_k(&r(REF_K)).unwrap();
    let gamma = Real::pi(prec()) * 2 / kk;
    assert!(close(&gamma, &r(REF_GAMMA), 1e-9));
}

#[test]
fn f_ratios_at_printed_nome() {
    let f = f_sequence(&r(REF_Q), 23).unwrap();
    let d3 = f.at(3).unwrap() / f.at(1).unwrap();
    assert!(close(&d3, &r("1.44162661711e-2"), 1e-12));
    let d45 = f.at(45).unwrap() / f.at(1).unwrap();
    assert!(rel_close(&d45, &r("2.32308384477e-41"), 1e-9));
}

/// The printed column rounds exactly from the root of the nome equation with
/// seven-term sums; the converged root sits ~1e-15 lower.
#[test]
fn d_column_to_printed_digits() {
    let p = prec();
    let q7 = solve_nome_with_terms(p, &p.epsilon(5), Some(TABLE_SERIES_TERMS)).unwrap().q;
    let d7 = d_sequence(&q7, 23).unwrap();
    for (h, s) in TABLE_D {
        let got = d7.at(h).unwrap();
        assert!(close(got, &r(s), half_ulp(s).to_f64()), "d_{h}: {got} vs {s}");
    }
}

#[test]
fn d_column_at_converged_nome() {
    let d = d_sequence(&solved().params.q, 23).unwrap();
    for (h, s) in TABLE_D {
        let got = d.at(h).unwrap();
        assert!(close(got, &r(s), 1e-11), "d_{h}");
        assert!(rel_close(got, &r(s), 4e-12), "d_{h}");
    }
}

#[test]
fn d_column_residuals() {
    let d = d_sequence(&solved().params.q, 23).unwrap();
    let w = eliminate_comega(&d).unwrap();
    let res = diagonal_residuals(&d, &w).unwrap();
    for (h, x) in res.harmonics().take_while(|(h, _)| *h <= 47) {
        assert!(x.abs() < 1e-12, "harmonic {h}: {x}");
    }
    assert!(close(&w, &r(REF_C_OMEGA), 1e-10));
}

#[test]
fn profile_residuals_vanish_in_f_normalization() {
    let cf = solved();
    let f = f_sequence(&cf.params.q, 30).unwrap();
    let res = diagonal_residuals_unscaled(&f, &cf.omega1_f_normalized);
    assert!(res.max_abs() < 1e-25, "{}", res.max_abs());
    assert!(cf.sum_f_squared_defect() < 1e-25);
}

#[test]
fn proportionality_identity() {
    let pr = solved().params;
    let rep = verify_proportionality(&pr, 30, 25).unwrap();
    assert!(rep.max_relative_defect < 1e-15);
    assert!(rep.rows[0].3 < 1e-20);
    let broken = verify_proportionality(&pr, 2, 5).unwrap();
    assert!(broken.max_relative_defect > 1e-6);
}

#[test]
fn cn_against_landen_and_ode() {
    let pr = solved().params;
    let series = CnSeries::new(&pr).unwrap();
    let period = &pr.big_k * 4;
    for i in 0..64 {
        let z = &period * (2 * i + 1) / 128 - &pr.big_k;
        assert!(close(&series.eval(&z), &cn_landen(&z, &pr.k), 1e-25), "sample {i}");
    }
    let z = r("0.3");
    assert!(close(&cn_eval(&z, &pr).unwrap(), &cn_landen(&z, &pr.k), 1e-25));
    assert!(close(&cn_eval(&pr.big_k, &pr).unwrap(), &Real::zero(prec()), 1e-35));
    assert!(verify_cn_ode(&pr, 64, None, Exec::default()).unwrap() < 1e-20);
}

#[test]
fn amplitude_conversion() {
    let cf = solved();
    let lhs = r(REF_C_OMEGA) * cf.amplitude_ratio.square();
    assert!(close(&lhs, &cf.omega1_coeff, 1e-8));
    assert_eq!(cf.amplitude_ratio.to_sci(12), "1.97117328960");
}

#[test]
fn params_json_roundtrip() {
    let pr = solved().params;
    let json = serde_json::to_string(&pr.to_record()).unwrap();
    let back = EllipticParams::from_record(&serde_json::from_str(&json).unwrap()).unwrap();
    assert_eq!(back.q, pr.q);
    assert_eq!(back.big_kprime, pr.big_kprime);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn nome_roundtrip(k in 0.05f64..0.95) {
        let k = Real::from_f64(prec(), k);
        let q = nome(&k).unwrap();
        let back = modulus_from_nome(&q).unwrap();
        prop_assert!(close(&back, &k, 1e-35));
    }

    #[test]
    fn params_invariants(q in 1e-3f64..0.3) {
        let pr = EllipticParams::from_nome(&Real::from_f64(prec(), q)).unwrap();
        prop_assert!(pr.invariant_defect() < 1e-35);
    }

    #[test]
    fn f_positive_decreasing(q in 1e-4f64..0.9, n in 1usize..30) {
        let f = f_sequence(&Real::from_f64(prec(), q), n).unwrap();
        let c = f.coeffs();
        prop_assert!(c.iter().all(|x| *x > 0.0));
        prop_assert!(c.windows(2).all(|w| w[1] < w[0]));
    }
}
