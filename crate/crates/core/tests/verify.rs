use shi_basis::derivation::{basis, Derivation};
use shi_basis::poly::{rat, Monomial, Poly, Rational};
use shi_basis::rootsystem::shi_cone;
use shi_basis::verifier::{check_membership, full_verify, saito_check, verify_basis, SaitoMode};
use shi_basis::Family;

/// Saito constants measured once with the exact path and frozen. Rank 1 was
/// also derived by hand from the 2×2 determinants.
const FIXTURES: &[(Family, usize, i64, i64)] = &[
    (Family::B, 1, 1, 1),
    (Family::B, 2, -1, 3),
    (Family::B, 3, -1, 15),
    (Family::C, 1, 1, 2),
    (Family::C, 2, -1, 12),
    (Family::C, 3, -1, 120),
];

#[test]
fn saito_constants_are_stable() {
    for &(family, rank, n, d) in FIXTURES {
        let cert = full_verify(family, rank, SaitoMode::Exact).unwrap();
        assert!(cert.passed(), "{cert}");
        assert_eq!(cert.constant_c(), Some(&rat(n, d)), "{family}{rank}");
        let saito = cert.saito.as_ref().unwrap();
        let det = saito.determinant.as_ref().unwrap();
        let q = saito.q.as_ref().unwrap();
        assert_eq!(*det, q.scale(&saito.constant_c));
        assert_eq!(saito.degree_q, (2 * rank * rank + 1) as u32);
    }
}

#[test]
fn probabilistic_agrees_with_exact() {
    for family in Family::ALL {
        for rank in 1..=3 {
            let a = shi_cone(family, rank).unwrap();
            let b = basis(family, rank).unwrap();
            let exact = saito_check(&b, &a, SaitoMode::Exact).unwrap();
            for seed in [0, 7, 12345] {
                let prob = saito_check(&b, &a, SaitoMode::Probabilistic { seed, trials: 8 }).unwrap();
                assert_eq!(prob.constant_c, exact.constant_c, "{family}{rank} seed {seed}");
                assert!(prob.determinant.is_none());
            }
        }
    }
}

#[test]
fn membership_holds_through_rank_three() {
    for family in Family::ALL {
        for rank in 1..=3 {
            let a = shi_cone(family, rank).unwrap();
            for d in basis(family, rank).unwrap() {
                let report = check_membership(&d, &a).unwrap();
                assert!(report.passed(), "{}", d.label);
                assert_eq!(report.checks.len(), 2 * rank * rank + 1);
                for check in &report.checks {
                    let f = check.form.to_poly();
                    assert_eq!(&check.witness * &f, d.apply(&f));
                }
            }
        }
    }
}

#[test]
fn swapping_basis_rows_flips_the_sign_of_c() {
    let a = shi_cone(Family::B, 2).unwrap();
    let mut b = basis(Family::B, 2).unwrap();
    let c = saito_check(&b, &a, SaitoMode::Exact).unwrap().constant_c;
    b.swap(1, 2);
    let swapped = saito_check(&b, &a, SaitoMode::Exact).unwrap().constant_c;
    assert_eq!(swapped, -c);
}

fn perturb(b: &[Derivation], j: usize, i: usize, m: Monomial) -> Vec<Derivation> {
    let mut out = b.to_vec();
    let nvars = out[j].nvars();
    let bump = Poly::monomial(nvars, m, Rational::from_integer(1.into()));
    out[j].x_coeffs[i] = &out[j].x_coeffs[i] + &bump;
    out
}

#[test]
fn perturbed_basis_is_rejected() {
    let b = basis(Family::C, 2).unwrap();
    // Bump an existing term and a fresh monomial of the right degree.
    let existing = *b[1].x_coeffs[0].leading_term().unwrap().0;
    let fresh = Monomial::from_exponents(&[1, 1, 2]);
    for m in [existing, fresh] {
        let cert = verify_basis(Family::C, 2, &perturb(&b, 1, 0, m), SaitoMode::Exact).unwrap();
        assert!(!cert.passed(), "{cert}");
        assert_eq!(cert.to_json().status, "FAIL");
    }
}

#[test]
fn certificate_json_shape() {
    let cert = full_verify(Family::B, 1, SaitoMode::Exact).unwrap();
    let v = serde_json::to_value(cert.to_json()).unwrap();
    assert_eq!(v["family"], "B");
    assert_eq!(v["rank"], 1);
    assert_eq!(v["saito"]["mode"], "exact");
    assert_eq!(v["saito"]["c"], "1");
    assert_eq!(v["saito"]["degree_det"], 3);
    assert_eq!(v["saito"]["degree_q"], 3);
    assert_eq!(v["restriction_identity"], true);
    assert_eq!(v["status"], "PASS");
    assert_eq!(v["membership"].as_array().unwrap().len(), 2);
    assert_eq!(v["membership"][1]["checks"][2]["form"], serde_json::json!(["1", "-1"]));

    let prob = full_verify(Family::C, 2, SaitoMode::Probabilistic { seed: 3, trials: 4 }).unwrap();
    let v = serde_json::to_value(prob.to_json()).unwrap();
    assert_eq!(v["saito"]["mode"], "probabilistic");
    assert_eq!(v["saito"]["trials"], 4);
    assert_eq!(v["saito"]["seed"], 3);
    assert_eq!(v["saito"]["c"], "-1/12");
}
