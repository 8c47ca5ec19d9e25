//! Acceptance suite. Runs without the libtest harness so that each criterion
//! prints exactly one PASS/FAIL line with its runtime.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use shi_basis::bernoulli::{bernoulli, homogenize, rhs, BernoulliKey};
use shi_basis::derivation::{basis, phi, phi_by_generating_function, Derivation};
use shi_basis::poly::{int, rat, Monomial, Poly, Rational, UniPoly};
use shi_basis::rootsystem::shi_cone;
use shi_basis::verifier::{check_membership, congruence_sweep, saito_check, verify_basis, SaitoMode};
use shi_basis::Family;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn keys(max_r: u32, max_s: u32) -> Vec<BernoulliKey> {
    let mut out = Vec::new();
    for family in Family::ALL {
        for r in 1..=max_r {
            for s in 0..=max_s {
                out.push(BernoulliKey::new(family, r, s).unwrap());
            }
        }
    }
    out
}

fn difference_equation() -> Outcome {
    let keys = keys(13, 6);
    for &key in &keys {
        let b = bernoulli(key);
        ensure(b.reflect() == b.scale(&int(-1)), || format!("{key:?} is not odd"))?;
        ensure(b.shift_by_one().sub(&b).sub(&rhs(key)).is_zero(), || format!("{key:?} residual nonzero"))?;
        let want = if key.r() % 2 == 1 { key.r() + 2 * key.s() } else { key.r() + 2 * key.s() - 1 };
        ensure(b.degree() == Some(want as usize), || format!("{key:?} has degree {:?}, want {want}", b.degree()))?;
    }
    Ok(format!("{} keys", keys.len()))
}

fn closed_form_fixtures() -> Outcome {
    let cases = [
        (Family::B, 3, 0, UniPoly::new(vec![rat(0, 1), rat(2, 3), rat(0, 1), rat(1, 3)])),
        (Family::B, 1, 1, UniPoly::new(vec![rat(0, 1), rat(1, 3), rat(0, 1), rat(-1, 3)])),
        (Family::C, 3, 0, UniPoly::new(vec![rat(0, 1), rat(1, 3), rat(0, 1), rat(2, 3)])),
    ];
    for (family, r, s, want) in cases {
        let oracle = common::telescoping_oracle(family, r, s);
        ensure(oracle == want, || format!("oracle disagrees with fixture for {family} ({r},{s})"))?;
        let got = bernoulli(BernoulliKey::new(family, r, s).unwrap());
        ensure(*got == want, || format!("{family} ({r},{s}) = {got}, want {want}"))?;
    }
    Ok("3 fixtures".into())
}

fn restriction_at_zero() -> Outcome {
    let mut count = 0;
    for r in 1..=13u32 {
        for s in 0..=6u32 {
            let w = r + 2 * s;
            let mut coeffs = vec![Rational::zero(); w as usize + 1];
            if r % 2 == 1 {
                let sign = if s % 2 == 0 { 1 } else { -1 };
                coeffs[w as usize] = rat(sign, w as i64);
            }
            let b_form = UniPoly::new(coeffs).embed(2, 0);
            let at_zero = |family| {
                homogenize(BernoulliKey::new(family, r, s).unwrap(), 2, 0)
                    .substitute_var(1, &Poly::zero(2))
                    .unwrap()
            };
            let b = at_zero(Family::B);
            let c = at_zero(Family::C);
            ensure(b == b_form, || format!("B ({r},{s}) at z=0 is {b}"))?;
            ensure(c == b.scale(&int(2)), || format!("C ({r},{s}) at z=0 is not twice B"))?;
            count += 1;
        }
    }
    Ok(format!("{count} (r,s) pairs"))
}

fn membership() -> Outcome {
    let mut checks = 0;
    for family in Family::ALL {
        for rank in 1..=4 {
            let a = shi_cone(family, rank).unwrap();
            ensure(a.forms().len() == 2 * rank * rank + 1, || format!("{family}{rank} form count"))?;
            for d in basis(family, rank).unwrap() {
                let report = check_membership(&d, &a).unwrap();
                ensure(report.passed(), || format!("{} fails membership", d.label))?;
                checks += report.checks.len();
            }
        }
    }
    Ok(format!("{checks} form checks"))
}

fn saito_exact() -> Outcome {
    let mut constants = Vec::new();
    for family in Family::ALL {
        for rank in 1..=4 {
            let a = shi_cone(family, rank).unwrap();
            let cert = saito_check(&basis(family, rank).unwrap(), &a, SaitoMode::Exact)
                .map_err(|e| format!("{family}{rank}: {e}"))?;
            ensure(!cert.constant_c.is_zero(), || format!("{family}{rank}: c = 0"))?;
            let det = cert.determinant.as_ref().unwrap();
            let q = a.forms().iter().fold(Poly::one(rank + 1), |acc, f| &acc * &f.to_poly());
            ensure(*det == q.scale(&cert.constant_c), || format!("{family}{rank}: det != c*Q"))?;
            constants.push(format!("{family}{rank}:{}", cert.constant_c));
        }
    }
    let fixtures = [(Family::B, rat(1, 1)), (Family::C, rat(1, 2))];
    for (family, want) in fixtures {
        let a = shi_cone(family, 1).unwrap();
        let c = saito_check(&basis(family, 1).unwrap(), &a, SaitoMode::Exact).unwrap().constant_c;
        ensure(c == want, || format!("{family}1: c = {c}, want {want}"))?;
    }
    Ok(format!("c = {}", constants.join(" ")))
}

fn saito_rank_five() -> Outcome {
    let mut constants = Vec::new();
    for family in Family::ALL {
        let a = shi_cone(family, 5).unwrap();
        let mode = SaitoMode::Probabilistic { seed: 0, trials: 8 };
        let cert = saito_check(&basis(family, 5).unwrap(), &a, mode).map_err(|e| format!("{family}5: {e}"))?;
        ensure(!cert.constant_c.is_zero(), || format!("{family}5: c = 0"))?;
        constants.push(format!("{family}5:{}", cert.constant_c));
    }
    Ok(format!("8 trials, seed 0, c = {}", constants.join(" ")))
}

/// Subsets of size `k` of `items`, multiplied out and summed.
fn elementary(k: usize, items: &[Poly], nvars: usize) -> Poly {
    if k == 0 {
        return Poly::one(nvars);
    }
    if items.len() < k {
        return Poly::zero(nvars);
    }
    let (first, rest) = items.split_first().unwrap();
    &(first * &elementary(k - 1, rest, nvars)) + &elementary(k, rest, nvars)
}

/// `x_j Σ_k (-1)^k σ_k(x_t² : t ≠ j) Σ_i x_i^{2l-2k-1}/(2l-2k-1) ∂_i`, built
/// here from scratch.
fn restriction_closed_form(j: usize, rank: usize) -> Vec<Poly> {
    let nvars = rank + 1;
    let x = |i: usize| Poly::var(nvars, i);
    let squares: Vec<Poly> = (0..rank).filter(|&t| t != j - 1).map(|t| &x(t) * &x(t)).collect();
    let mut coeffs = vec![Poly::zero(nvars); rank];
    for k in 0..rank {
        let sigma = elementary(k, &squares, nvars);
        let e = 2 * rank - 2 * k - 1;
        let sign = if k % 2 == 0 { 1 } else { -1 };
        for (i, c) in coeffs.iter_mut().enumerate() {
            let term = (&x(j - 1) * &sigma) * x(i).pow(e as u32).scale(&rat(sign, e as i64));
            *c = &*c + &term;
        }
    }
    coeffs
}

fn restriction_identity() -> Outcome {
    let mut count = 0;
    for rank in 1..=4 {
        for j in 1..=rank {
            let want = restriction_closed_form(j, rank);
            for (family, factor) in [(Family::B, 1), (Family::C, 2)] {
                let got = phi(family, j, rank).unwrap().restrict_z0();
                ensure(got.z_coeff.is_zero(), || format!("{family} phi_{j} (l={rank}) keeps a z-part"))?;
                let scaled: Vec<Poly> = want.iter().map(|p| p.scale(&int(factor))).collect();
                ensure(got.x_coeffs == scaled, || format!("{family} phi_{j} (l={rank}) at z=0 differs"))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} derivations"))
}

fn congruences() -> Outcome {
    let rank = 4;
    let mut total = 0;
    for family in Family::ALL {
        let (checked, failures) = congruence_sweep(family, rank, 2 * rank as u32 + 2, rank as u32).unwrap();
        ensure(failures.is_empty(), || format!("{family}: {} failures, first {:?}", failures.len(), failures[0]))?;
        total += checked;
    }
    Ok(format!("{total} identities"))
}

fn homogeneity() -> Outcome {
    let mut count = 0;
    for family in Family::ALL {
        for rank in 1..=5 {
            let h = 2 * rank as u32;
            for j in 1..=rank {
                let d = phi(family, j, rank).unwrap();
                for c in std::iter::once(&d.z_coeff).chain(&d.x_coeffs) {
                    ensure(c.is_zero() || c.is_homogeneous(h), || format!("{} not of degree {h}", d.label))?;
                }
                ensure(d.degree() == Some(h), || format!("{} is zero", d.label))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} derivations"))
}

fn mutation_sensitivity() -> Outcome {
    let rank = 2;
    let nvars = rank + 1;
    let h = 2 * rank;
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut caught = 0;
    let total = 20;
    for _ in 0..total {
        let family = Family::ALL[rng.gen_range(0..2)];
        let j = rng.gen_range(1..=rank);
        let slot = rng.gen_range(0..=rank);
        let mut exps = vec![0u32; nvars];
        for _ in 0..h {
            exps[rng.gen_range(0..nvars)] += 1;
        }
        let coeff = loop {
            let n: i64 = rng.gen_range(-5..=5);
            if n != 0 {
                break int(n);
            }
        };
        let bump = Poly::monomial(nvars, Monomial::from_exponents(&exps), coeff);
        let mut b: Vec<Derivation> = basis(family, rank).unwrap();
        let target = if slot == 0 { &mut b[j].z_coeff } else { &mut b[j].x_coeffs[slot - 1] };
        *target = &*target + &bump;
        let cert = verify_basis(family, rank, &b, SaitoMode::Exact).unwrap();
        if !cert.passed() {
            caught += 1;
        }
    }
    ensure(caught == total, || format!("{caught}/{total} mutations rejected"))?;
    Ok(format!("{caught}/{total} mutations rejected"))
}

fn oracle_equivalence() -> Outcome {
    let mut count = 0;
    for family in Family::ALL {
        for rank in 1..=4 {
            for j in 1..=rank {
                let direct = phi(family, j, rank).unwrap();
                let grouped = phi_by_generating_function(family, j, rank).unwrap();
                ensure(
                    direct.z_coeff == grouped.z_coeff && direct.x_coeffs == grouped.x_coeffs,
                    || format!("{family} phi_{j} (l={rank}) routes disagree"),
                )?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} derivations"))
}

fn main() -> ExitCode {
    let criteria: [(&str, &str, Option<Duration>, fn() -> Outcome); 11] = [
        ("1", "difference equation, r<=13, s<=6", Some(Duration::from_secs(5)), difference_equation),
        ("2", "closed-form fixtures", None, closed_form_fixtures),
        ("3", "restriction at z=0, r<=13, s<=6", None, restriction_at_zero),
        ("4", "membership, l=1..4", Some(Duration::from_secs(60)), membership),
        ("5", "exact Saito, l=1..4", Some(Duration::from_secs(300)), saito_exact),
        ("5b", "probabilistic Saito, l=5", Some(Duration::from_secs(60)), saito_rank_five),
        ("6", "restriction identity, l=1..4", None, restriction_identity),
        ("7", "congruence sweep, l=4", Some(Duration::from_secs(30)), congruences),
        ("8", "homogeneity, l=1..5", None, homogeneity),
        ("9", "mutation sensitivity, l=2", None, mutation_sensitivity),
        ("10", "direct vs generating function, l<=4", None, oracle_equivalence),
    ];
    let mut failed = 0;
    for (id, name, budget, run) in criteria {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let result = match (result, budget) {
            (Ok(_), Some(limit)) if elapsed > limit => Err(format!("took {elapsed:.2?}, limit {limit:?}")),
            (r, _) => r,
        };
        match result {
            Ok(detail) => println!("PASS [{id:>2}] {name} ({elapsed:.2?}): {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL [{id:>2}] {name} ({elapsed:.2?}): {detail}");
            }
        }
    }
    if failed == 0 {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} criteria failed");
        ExitCode::FAILURE
    }
}
