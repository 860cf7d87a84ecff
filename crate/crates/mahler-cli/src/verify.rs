//! The verification suite behind `mahler verify`: closed-form identities
//! plus exact property checks, all with fixed inputs so that identical
//! invocations produce byte-identical reports.

use mahler::experiments::{identity_cases, identity_suite, run_identity_case, IdentityOutcome};
use mahler::laurent::LaurentPoly;
use mahler::measures::mahler1_exact;
use mahler::torushom::{sign_split, BoydHeight, TorusHom};

pub struct Row {
    pub name: String,
    pub computed: f64,
    pub reference: f64,
    pub tolerance: f64,
    pub error_estimate: f64,
    pub pass: bool,
}

impl From<IdentityOutcome> for Row {
    fn from(outcome: IdentityOutcome) -> Self {
        Row {
            name: outcome.name,
            computed: outcome.computed,
            reference: outcome.reference,
            tolerance: outcome.tolerance,
            error_estimate: outcome.error_estimate,
            pass: outcome.passed,
        }
    }
}

pub fn run(full: bool) -> Result<Vec<Row>, mahler::Error> {
    let mut rows: Vec<Row> = if full {
        identity_suite()?.into_iter().map(Row::from).collect()
    } else {
        identity_cases()
            .iter()
            .filter(|case| case.fast)
            .map(run_identity_case)
            .collect::<Result<Vec<_>, _>>()?
            .into_iter()
            .map(Row::from)
            .collect()
    };

    rows.push(base_b_grid());
    rows.push(zero_component_rule());
    rows.push(sign_invariance());
    rows.push(functoriality());
    rows.push(multiplicativity());
    Ok(rows)
}

/// Counts failures of mu(base_b_family(n, m, b)) = Finite(b) over the grid.
fn base_b_grid() -> Row {
    let mut failures = 0u32;
    for n in 2..=4usize {
        for m in 1..=3usize {
            for b in 1..=10u64 {
                let got = TorusHom::base_b_family(n, m, b).boyd_height().height;
                if got != BoydHeight::Finite(b) {
                    failures += 1;
                }
            }
        }
    }
    exact_row("heights-base-b-grid", failures)
}

fn zero_component_rule() -> Row {
    let vectors: [&[i64]; 6] = [
        &[0, 7],
        &[4, 0, -9],
        &[0, 0, 3, 5],
        &[12, -7, 0],
        &[0, 1],
        &[-30, 0, 17, -2],
    ];
    let failures = vectors
        .iter()
        .filter(|r| {
            TorusHom::column(r).unwrap().boyd_height().height != BoydHeight::Finite(1)
        })
        .count() as u32;
    exact_row("heights-zero-component", failures)
}

fn sign_invariance() -> Row {
    let vectors: [&[i64]; 8] = [
        &[1, 2],
        &[-7, 11],
        &[3, -4, 5],
        &[-2, -3, -5, 7],
        &[9, -9],
        &[-20, 13, 6],
        &[5, -17, 12, -8],
        &[-1, -1, -1],
    ];
    let failures = vectors
        .iter()
        .filter(|r| {
            let plus = sign_split(r).r_plus;
            let h = TorusHom::column(r).unwrap().boyd_height().height;
            let hp = TorusHom::column(&plus).unwrap().boyd_height().height;
            h != hp
        })
        .count() as u32;
    exact_row("height-sign-invariance", failures)
}

type RowsPair = (&'static [&'static [i64]], &'static [&'static [i64]]);

fn functoriality() -> Row {
    let polys = ["Z1+Z2+1", "Z1^2-Z2^-1+3", "2*Z1*Z2-Z2^3"];
    let pairs: [RowsPair; 3] = [
        (&[&[1], &[1]], &[&[2, -1]]),
        (&[&[1, 0], &[1, 1]], &[&[0, 2], &[-1, 3]]),
        (&[&[2, 1, 0], &[0, -1, 1]], &[&[1], &[1], &[-2]]),
    ];
    let mut failures = 0u32;
    for text in polys {
        let p = LaurentPoly::parse(text, Some(2)).unwrap();
        for (a_rows, b_rows) in &pairs {
            let a = TorusHom::from_rows(&a_rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
                .unwrap();
            let b = TorusHom::from_rows(&b_rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
                .unwrap();
            let two_step = p.substitute(&a).unwrap().substitute(&b).unwrap();
            let one_step = p.substitute(&a.compose(&b).unwrap()).unwrap();
            if two_step != one_step {
                failures += 1;
            }
        }
    }
    exact_row("substitution-functoriality", failures)
}

fn multiplicativity() -> Row {
    let pairs = [
        ("Z1^2-2", "3*Z1+5"),
        ("Z1^3+Z1+7", "2*Z1^2-Z1+1"),
        ("Z1^4-Z1^2+1", "Z1-3"),
    ];
    let mut worst = 0.0f64;
    for (a, b) in pairs {
        let pa = LaurentPoly::parse(a, None).unwrap();
        let pb = LaurentPoly::parse(b, None).unwrap();
        let sum = mahler1_exact(&pa, 1e-12).unwrap().value
            + mahler1_exact(&pb, 1e-12).unwrap().value;
        let direct = mahler1_exact(&pa.multiply(&pb).unwrap(), 1e-12)
            .unwrap()
            .value;
        worst = worst.max((direct - sum).abs());
    }
    Row {
        name: "jensen-multiplicativity".into(),
        computed: worst,
        reference: 0.0,
        tolerance: 1e-9,
        error_estimate: 0.0,
        pass: worst <= 1e-9,
    }
}

fn exact_row(name: &str, failures: u32) -> Row {
    Row {
        name: name.into(),
        computed: failures as f64,
        reference: 0.0,
        tolerance: 0.0,
        error_estimate: 0.0,
        pass: failures == 0,
    }
}
