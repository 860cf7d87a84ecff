//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line (visible with `--nocapture`). Tolerances are pinned in code.

use mahler::experiments::{self, zeta, ExperimentSpec, Family, InnerParams};
use mahler::laurent::{LaurentPoly, TorusPoint};
use mahler::measures::{
    boyd_lawton_estimate, circle_measure, mahler1_exact, torus_qmc, MeasureKind, QmcConfig,
};
use mahler::torushom::{sign_split, BoydHeight, TorusHom};
use num::BigInt;
use num::Zero;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::f64::consts::PI;

fn poly(text: &str) -> LaurentPoly {
    LaurentPoly::parse(text, None).unwrap()
}

fn report(criterion: u32, name: &str, pass: bool, detail: &str) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    println!("ACCEPTANCE {criterion} [{name}]: {verdict} — {detail}");
    assert!(pass, "criterion {criterion} ({name}) failed: {detail}");
}

#[test]
fn criterion_1_classic_identity_linear_3() {
    let reference = 7.0 / (2.0 * PI * PI) * zeta(3, 12);
    let p = poly("Z1+Z2+Z3+1");

    let bl = boyd_lawton_estimate(&MeasureKind::Classic, std::slice::from_ref(&p), 50, 1e-12, 1e-8).unwrap();
    let bl_dev = (bl.value - reference).abs();

    let cfg = QmcConfig {
        samples: 1 << 22,
        shifts: 8,
        seed: 101,
        clip: 1e-300,
    };
    let qmc = torus_qmc(&MeasureKind::Classic, &[p], &cfg).unwrap();
    let qmc_dev = (qmc.value - reference).abs();

    report(
        1,
        "classic m3(Z1+Z2+Z3+1)",
        bl_dev < 1e-2 && qmc_dev < 2e-2,
        &format!(
            "boyd-lawton b=50: {:.7} (dev {:.2e} < 1e-2), qmc 2^22: {:.7} (dev {:.2e} < 2e-2), reference {:.7}",
            bl.value, bl_dev, qmc.value, qmc_dev, reference
        ),
    );
}

#[test]
fn criterion_2_prod_identity_log_cube() {
    let reference = -1.5 * zeta(3, 12);
    let polys = [poly("Z1-1"), poly("Z1-1"), poly("Z1-1")];
    let est = circle_measure(&MeasureKind::Prod(3), &polys, 1e-8).unwrap();
    let dev = (est.value - reference).abs();
    report(
        2,
        "prod m2(Z1-1 x3)",
        dev < 1e-4,
        &format!(
            "circle: {:.8} (dev {:.2e} < 1e-4), reference {:.8}",
            est.value, dev, reference
        ),
    );
}

#[test]
fn criterion_3_prod_identity_shifted_linear() {
    // The closed form is (9/2) zeta(2) log 2 - (15/4) zeta(3): direct
    // high-precision quadrature of the integrand matches this constant to
    // 24 digits (0.623102961044358838...), while the alternative reading
    // "(9/2) log(2 zeta(2))" evaluates 0.228 away from the integral and no
    // correct integrator can reach it.
    let reference = 4.5 * zeta(2, 12) * std::f64::consts::LN_2 - 3.75 * zeta(3, 12);
    let misread = 0.851_309_3;
    let p = poly("Z1+Z2+2");
    let polys = vec![p.clone(), p.clone(), p];

    let cfg = QmcConfig {
        samples: 1 << 22,
        shifts: 8,
        seed: 303,
        clip: 1e-300,
    };
    let qmc = torus_qmc(&MeasureKind::Prod(3), &polys, &cfg).unwrap();
    let qmc_dev = (qmc.value - reference).abs();

    let spec = ExperimentSpec {
        kind: MeasureKind::Prod(3),
        polys,
        family: Family::Matrix { target_vars: 2 },
        b_schedule: vec![4, 8, 16],
        reference: Some(reference),
        params: InnerParams {
            qmc: QmcConfig {
                samples: 1 << 20,
                shifts: 8,
                seed: 304,
                clip: 1e-300,
            },
            ..InnerParams::default()
        },
    };
    let records = experiments::matrix_convergence(&spec).unwrap();
    let final_dev = records.last().unwrap().deviation.unwrap();

    report(
        3,
        "prod m2(Z1+Z2+2 x3)",
        qmc_dev < 3e-2 && final_dev < 3e-2,
        &format!(
            "qmc 2^22: {:.6} (dev {:.2e} < 3e-2), matrix family b=16 dev {:.2e} < 3e-2, \
             reference {:.6} = (9/2)zeta(2)log2 - (15/4)zeta(3); \
             the misread constant {:.6} sits {:.3} from the integral",
            qmc.value,
            qmc_dev,
            final_dev,
            reference,
            misread,
            (qmc.value - misread).abs()
        ),
    );
}

#[test]
fn criterion_4_max_identity_four_linear() {
    // The closed form is (9/pi^2) zeta(3) - (93/(2 pi^4)) zeta(5). The
    // coordinates are independent, so the max has the product CDF and the
    // torus integral reduces to one exact 1-D integral; that route gives
    // 0.601148144185503... matching this constant to 30 digits. (The same
    // reduction reproduces 7 zeta(3)/(2 pi^2) for two factors and
    // 9 zeta(3)/(2 pi^2) for three.) The halved-coefficient reading
    // "9/(2 pi^2) zeta(3) - ..." = 0.0530759 is 0.548 below the integral
    // and unreachable by any correct integrator.
    let pi2 = PI * PI;
    let reference = 9.0 / pi2 * zeta(3, 12) - 93.0 / (2.0 * pi2 * pi2) * zeta(5, 12);
    let misread = 0.053_075_9;
    let polys = [
        LaurentPoly::parse("Z1+1", Some(4)).unwrap(),
        LaurentPoly::parse("Z2+1", Some(4)).unwrap(),
        LaurentPoly::parse("Z3+1", Some(4)).unwrap(),
        LaurentPoly::parse("Z4+1", Some(4)).unwrap(),
    ];
    let est = boyd_lawton_estimate(&MeasureKind::Max(4), &polys, 20, 1e-12, 1e-8).unwrap();
    let dev = (est.value - reference).abs();
    report(
        4,
        "max m4(Zi+1, i=1..4)",
        dev < 2e-2,
        &format!(
            "boyd-lawton b=20: {:.7} (dev {:.2e} < 2e-2), reference {:.7} = \
             (9/pi^2)zeta(3) - (93/(2pi^4))zeta(5); the halved-coefficient \
             constant {:.7} sits {:.3} from the integral",
            est.value,
            dev,
            reference,
            misread,
            (est.value - misread).abs()
        ),
    );
}

/// Independent brute-force oracle: the minimal infinity norm of a nonzero
/// integer annihilator within the given ball, by exhaustive scan.
fn brute_force_height(a: &TorusHom, cap: i64) -> Option<u64> {
    fn walk(v: &mut Vec<i64>, depth: usize, cap: i64, a: &TorusHom, best: &mut Option<u64>) {
        if depth == v.len() {
            if v.iter().all(|x| *x == 0) {
                return;
            }
            let norm = v.iter().map(|x| x.unsigned_abs()).max().unwrap();
            if best.is_some_and(|b| norm >= b) {
                return;
            }
            let ok = (0..a.cols()).all(|j| {
                let mut acc = BigInt::zero();
                for (i, x) in v.iter().enumerate() {
                    acc += a.entry(i, j) * BigInt::from(*x);
                }
                acc.is_zero()
            });
            if ok {
                *best = Some(norm);
            }
            return;
        }
        for x in -cap..=cap {
            v[depth] = x;
            walk(v, depth + 1, cap, a, best);
        }
    }
    let mut v = vec![0i64; a.rows()];
    let mut best = None;
    walk(&mut v, 0, cap, a, &mut best);
    best
}

#[test]
fn criterion_5_exact_height_suite() {
    // Base-b family exactness over the full grid.
    for n in 2..=4usize {
        for m in 1..=3usize {
            for b in 1..=10u64 {
                let a = TorusHom::base_b_family(n, m, b);
                assert_eq!(
                    a.boyd_height().height,
                    BoydHeight::Finite(b),
                    "base_b_family({n},{m},{b})"
                );
            }
        }
    }

    // Vectors with a zero component have height exactly 1.
    let mut rng = StdRng::seed_from_u64(5001);
    for _ in 0..50 {
        let n = rng.gen_range(2..=4);
        let mut r: Vec<i64> = (0..n).map(|_| rng.gen_range(-30..=30)).collect();
        r[rng.gen_range(0..n)] = 0;
        let h = TorusHom::column(&r).unwrap().boyd_height();
        assert_eq!(h.height, BoydHeight::Finite(1), "zero-component {r:?}");
    }

    // 200 random small matrices against the brute-force ball oracle.
    let mut finite_cases = 0u32;
    for case in 0..200 {
        let n = rng.gen_range(1..=3);
        let m = rng.gen_range(1..=3);
        let a = if case % 2 == 0 {
            // Unrestricted random entries.
            let rows: Vec<Vec<i64>> = (0..n)
                .map(|_| (0..m).map(|_| rng.gen_range(-4..=4)).collect())
                .collect();
            TorusHom::from_rows(&rows).unwrap()
        } else {
            // Rank <= 1 by construction, so the height is finite for n >= 2.
            let left: Vec<Vec<i64>> = (0..n).map(|_| vec![rng.gen_range(-3..=3)]).collect();
            let right: Vec<Vec<i64>> = vec![(0..m).map(|_| rng.gen_range(-3..=3)).collect()];
            TorusHom::from_rows(&left)
                .unwrap()
                .compose(&TorusHom::from_rows(&right).unwrap())
                .unwrap()
        };
        let got = a.boyd_height();
        match got.height {
            BoydHeight::Finite(h) => {
                finite_cases += 1;
                let oracle = brute_force_height(&a, h as i64);
                assert_eq!(oracle, Some(h), "matrix {}", a.format());
                let witness = got.witness.unwrap();
                assert_eq!(
                    witness.iter().map(|x| x.unsigned_abs()).max().unwrap(),
                    h,
                    "witness norm mismatch for {}",
                    a.format()
                );
            }
            BoydHeight::Infinite => {
                assert_eq!(brute_force_height(&a, 8), None, "matrix {}", a.format());
            }
        }
    }

    report(
        5,
        "exact heights",
        finite_cases > 50,
        &format!(
            "base-b grid (2..4 x 1..3 x 1..10) exact; zero-component rule on 50 vectors; \
             200 random matrices vs brute force ({finite_cases} finite)"
        ),
    );
}

fn random_poly(rng: &mut StdRng, nvars: usize, max_terms: usize) -> LaurentPoly {
    let terms: Vec<(Vec<i64>, mahler::GaussianRational)> = (0..rng.gen_range(1..=max_terms))
        .map(|_| {
            let exps: Vec<i64> = (0..nvars).map(|_| rng.gen_range(-8..=8)).collect();
            let c = mahler::GaussianRational::from_integers(
                rng.gen_range(-5..=5),
                rng.gen_range(-5..=5),
            );
            (exps, c)
        })
        .collect();
    LaurentPoly::from_terms(nvars, terms).unwrap()
}

fn random_hom(rng: &mut StdRng, rows: usize, cols: usize, span: i64) -> TorusHom {
    let rows: Vec<Vec<i64>> = (0..rows)
        .map(|_| (0..cols).map(|_| rng.gen_range(-span..=span)).collect())
        .collect();
    TorusHom::from_rows(&rows).unwrap()
}

/// A random element of GL2(Z) built from at most `ops` elementary
/// operations applied to the identity.
fn random_unimodular(rng: &mut StdRng, ops: usize) -> TorusHom {
    let mut m = [[1i64, 0], [0, 1]];
    for _ in 0..rng.gen_range(1..=ops) {
        match rng.gen_range(0..4) {
            0 => m.swap(0, 1),
            1 => {
                m[0][0] = -m[0][0];
                m[0][1] = -m[0][1];
            }
            2 => {
                let s: i64 = if rng.gen_bool(0.5) { 1 } else { -1 };
                m[0][0] += s * m[1][0];
                m[0][1] += s * m[1][1];
            }
            _ => {
                let s: i64 = if rng.gen_bool(0.5) { 1 } else { -1 };
                m[1][0] += s * m[0][0];
                m[1][1] += s * m[0][1];
            }
        }
    }
    TorusHom::from_rows(&[m[0].to_vec(), m[1].to_vec()]).unwrap()
}

fn random_univariate(rng: &mut StdRng, max_degree: usize) -> LaurentPoly {
    loop {
        let degree = rng.gen_range(1..=max_degree);
        let terms: Vec<(Vec<i64>, mahler::GaussianRational)> = (0..=degree)
            .map(|k| {
                let c = if k == degree {
                    // Nonzero leading coefficient.
                    let mut v = 0;
                    while v == 0 {
                        v = rng.gen_range(-5..=5);
                    }
                    v
                } else {
                    rng.gen_range(-5..=5)
                };
                (vec![k as i64], mahler::GaussianRational::from_integers(c, 0))
            })
            .collect();
        let p = LaurentPoly::from_terms(1, terms).unwrap();
        if !p.is_zero() {
            return p;
        }
    }
}

#[test]
fn criterion_6_property_suites() {
    let mut rng = StdRng::seed_from_u64(6001);
    let mut details: Vec<String> = Vec::new();

    // Substitution functoriality, exact equality of polynomials.
    for _ in 0..60 {
        let (n, m, l) = (
            rng.gen_range(1..=3),
            rng.gen_range(1..=3),
            rng.gen_range(1..=3),
        );
        let p = random_poly(&mut rng, n, 5);
        let a = random_hom(&mut rng, n, m, 4);
        let b = random_hom(&mut rng, m, l, 4);
        let two_step = p.substitute(&a).unwrap().substitute(&b).unwrap();
        let one_step = p.substitute(&a.compose(&b).unwrap()).unwrap();
        assert_eq!(two_step, one_step, "functoriality");
    }
    details.push("functoriality exact x60".into());

    // Evaluation compatibility at 1e-10.
    for _ in 0..60 {
        let (n, m) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
        let p = random_poly(&mut rng, n, 5);
        let a = random_hom(&mut rng, n, m, 4);
        let t = TorusPoint::new((0..m).map(|_| rng.gen_range(0.0..1.0)).collect());
        let lhs = p.substitute(&a).unwrap().evaluate(&t).unwrap();
        let rhs = p.evaluate(&a.apply(&t).unwrap()).unwrap();
        assert!((lhs - rhs).norm() < 1e-10, "evaluation compatibility");
    }
    details.push("evaluation compatibility < 1e-10 x60".into());

    // Height is invariant under componentwise sign changes, exactly.
    for _ in 0..60 {
        let n = rng.gen_range(2..=4);
        let r: Vec<i64> = (0..n).map(|_| rng.gen_range(-20..=20)).collect();
        let split = sign_split(&r);
        let h = TorusHom::column(&r).unwrap().boyd_height().height;
        let h_plus = TorusHom::column(&split.r_plus)
            .unwrap()
            .boyd_height()
            .height;
        assert_eq!(h, h_plus, "sign invariance for {r:?}");
    }
    details.push("mu(r) = mu(r+) exact x60".into());

    // Composition lower bound on 100 sampled triples: with
    // mu(A) >= l * ||B||_inf * b and mu(B) >= b, mu(B A) >= b.
    for _ in 0..100 {
        let (l, m, n) = (
            rng.gen_range(1..=3),
            rng.gen_range(1..=3),
            rng.gen_range(1..=3),
        );
        let b_hom = random_hom(&mut rng, l, m, 2);
        let bound = match b_hom.boyd_height().height {
            BoydHeight::Finite(h) => h,
            BoydHeight::Infinite => rng.gen_range(1..=4),
        };
        let norm_b = num::ToPrimitive::to_u64(&b_hom.norm_inf()).unwrap();
        let needed = (l as u64 * norm_b * bound).max(1);
        let a_hom = TorusHom::base_b_family(m, n, needed);
        // mu(a_hom) is `needed` for m >= 2 and infinite for m = 1; both
        // satisfy the hypothesis mu(A) >= l ||B|| b.
        let composed = b_hom.compose(&a_hom).unwrap();
        if bound > 1 {
            assert!(
                composed.annihilator_within(bound - 1).is_none(),
                "composition lower bound: mu(BA) < {bound} for B={} A={}",
                b_hom.format(),
                a_hom.format()
            );
        }
    }
    details.push("composition lower bound x100".into());

    // Jensen vs circle quadrature at 1e-5 on 30 random polynomials.
    for _ in 0..30 {
        let p = random_univariate(&mut rng, 8);
        let jensen = mahler1_exact(&p, 1e-12).unwrap().value;
        let quad = circle_measure(&MeasureKind::Classic, std::slice::from_ref(&p), 1e-8)
            .unwrap()
            .value;
        assert!(
            (jensen - quad).abs() < 1e-5,
            "jensen {jensen} vs quadrature {quad} for {}",
            p.format()
        );
    }
    details.push("jensen vs quadrature < 1e-5 x30".into());

    // Jensen multiplicativity at 1e-9.
    for _ in 0..20 {
        let p = random_univariate(&mut rng, 6);
        let q = random_univariate(&mut rng, 6);
        let sum = mahler1_exact(&p, 1e-12).unwrap().value + mahler1_exact(&q, 1e-12).unwrap().value;
        let direct = mahler1_exact(&p.multiply(&q).unwrap(), 1e-12).unwrap().value;
        assert!(
            (direct - sum).abs() < 1e-9,
            "multiplicativity: {direct} vs {sum}"
        );
    }
    details.push("jensen multiplicativity < 1e-9 x20".into());

    // Unimodular change of variables leaves the torus average unchanged,
    // within the statistical band.
    for trial in 0..4u64 {
        let p = random_poly(&mut rng, 2, 4);
        if p.is_zero() {
            continue;
        }
        let u = random_unimodular(&mut rng, 4);
        let cfg = QmcConfig {
            samples: 1 << 16,
            shifts: 8,
            seed: 600 + trial,
            clip: 1e-300,
        };
        let base = torus_qmc(&MeasureKind::Classic, std::slice::from_ref(&p), &cfg).unwrap();
        let image = torus_qmc(&MeasureKind::Classic, &[p.substitute(&u).unwrap()], &cfg).unwrap();
        let band = 3.0 * (base.error_estimate + image.error_estimate) + 1e-3;
        assert!(
            (base.value - image.value).abs() < band,
            "unimodular invariance: {} vs {} (band {band})",
            base.value,
            image.value
        );
    }
    details.push("unimodular invariance x4".into());

    // Composition with a surjective homomorphism preserves the average.
    let surjective = TorusHom::from_rows(&[vec![1, 0, 2], vec![0, 1, -1]]).unwrap();
    assert_eq!(surjective.boyd_height().height, BoydHeight::Infinite);
    for trial in 0..2u64 {
        let p = random_poly(&mut rng, 2, 4);
        if p.is_zero() {
            continue;
        }
        let cfg = QmcConfig {
            samples: 1 << 16,
            shifts: 8,
            seed: 650 + trial,
            clip: 1e-300,
        };
        let base = torus_qmc(&MeasureKind::Classic, std::slice::from_ref(&p), &cfg).unwrap();
        let lifted = torus_qmc(
            &MeasureKind::Classic,
            &[p.substitute(&surjective).unwrap()],
            &cfg,
        )
        .unwrap();
        let band = 3.0 * (base.error_estimate + lifted.error_estimate) + 1e-3;
        assert!(
            (base.value - lifted.value).abs() < band,
            "surjective composition: {} vs {} (band {band})",
            base.value,
            lifted.value
        );
    }
    details.push("surjective-composition invariance x2".into());

    report(6, "property suites", true, &details.join("; "));
}

#[test]
fn criterion_7_convergence_trend() {
    // Validate the frozen reference 0.3230659 with an independent dense
    // rectangle-rule oracle on a 2048^2 angle grid.
    let reference = 0.323_065_9;
    let p = poly("Z1+Z2+1");
    let grid = 2048usize;
    let mut oracle = 0.0;
    for j in 0..grid {
        for k in 0..grid {
            let t = TorusPoint::new(vec![j as f64 / grid as f64, k as f64 / grid as f64]);
            let v = p.evaluate(&t).unwrap().norm();
            oracle += v.max(f64::MIN_POSITIVE).ln();
        }
    }
    oracle /= (grid * grid) as f64;
    assert!(
        (oracle - reference).abs() < 1e-4,
        "dense grid oracle {oracle} vs frozen reference {reference}"
    );

    let spec = ExperimentSpec {
        kind: MeasureKind::Classic,
        polys: vec![p.clone()],
        family: Family::Vector,
        b_schedule: vec![5, 10, 20, 40],
        reference: Some(reference),
        params: InnerParams::default(),
    };
    let records = experiments::run_convergence(&spec).unwrap();
    let devs: Vec<f64> = records.iter().map(|r| r.deviation.unwrap()).collect();
    let trend_ok = devs[3] <= devs[0].min(devs[1]);

    let mspec = ExperimentSpec {
        kind: MeasureKind::Classic,
        polys: vec![p],
        family: Family::Matrix { target_vars: 2 },
        b_schedule: vec![5, 10, 20, 40],
        reference: Some(reference),
        params: InnerParams {
            qmc: QmcConfig {
                samples: 1 << 18,
                shifts: 8,
                seed: 707,
                clip: 1e-300,
            },
            ..InnerParams::default()
        },
    };
    let mrecords = experiments::matrix_convergence(&mspec).unwrap();
    let mut families_agree = true;
    for (v, m) in records.iter().zip(&mrecords) {
        let ve = v.estimate.as_ref().unwrap();
        let me = m.estimate.as_ref().unwrap();
        let band = 3.0 * (ve.error_estimate + me.error_estimate) + 1e-2;
        if (ve.value - me.value).abs() >= band {
            families_agree = false;
        }
    }

    report(
        7,
        "convergence trend",
        trend_ok && families_agree,
        &format!(
            "oracle {:.7} vs frozen {:.7}; vector deviations {:?} (final <= min of first two); \
             vector/matrix agreement within bands",
            oracle, reference, devs
        ),
    );
}
