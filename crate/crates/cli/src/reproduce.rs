//! Reference examples recomputed from scratch, one row per check.

use std::time::Instant;

use kron_core::bounds::{compare_bounds, LABEL_FACTORIAL, LABEL_N_ONLY, LABEL_PP1, LABEL_PP2};
use kron_core::engine::{build_sigma_poset, feasible_sigma_set};
use kron_core::stability::{stable_mu_nu, verify_rank_condition};
use kron_core::vanishing::ressayre_check;
use kron_core::vpf::vpf_polynomial_degree;
use kron_core::{build_matrix, parse_partition, KronEngine, PartitionTriple, Permutation};
use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct Row {
    pub name: String,
    pub expected: String,
    pub found: String,
    pub pass: bool,
    pub wall_ms: u64,
}

type Check = (&'static str, &'static str, bool, fn() -> Result<String, String>);

fn t(m: usize, n: usize, l: &str, mu: &str, nu: &str) -> Result<PartitionTriple, String> {
    PartitionTriple::parse(m, n, l, mu, nu).map_err(|e| e.to_string())
}

fn g(m: usize, n: usize, l: &str, mu: &str, nu: &str) -> Result<String, String> {
    let e = KronEngine::new(m, n).map_err(|e| e.to_string())?;
    Ok(e.kronecker(&t(m, n, l, mu, nu)?).map_err(|e| e.to_string())?.g.to_string())
}

fn atomic(m: usize, n: usize, l: &str, mu: &str, nu: &str) -> Result<String, String> {
    let e = KronEngine::new(m, n).map_err(|e| e.to_string())?;
    Ok(e.atomic(&t(m, n, l, mu, nu)?).map_err(|e| e.to_string())?.to_string())
}

fn trimmed(parts: &[u32]) -> String {
    parts.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

fn shape(m: usize, n: usize) -> Result<String, String> {
    let a = build_matrix(m, n).map_err(|e| e.to_string())?;
    Ok(format!("{}x{}", a.rows(), a.cols()))
}

fn bound(label: &str) -> Result<String, String> {
    let r = compare_bounds(&t(3, 3, "15,15,15,10,10,10,10,10,5", "35,35,30", "40,30,30")?)
        .map_err(|e| e.to_string())?;
    Ok(r.entries
        .iter()
        .find(|e| e.label == label)
        .map(|e| e.display.clone())
        .unwrap_or_default())
}

const CHECKS: &[Check] = &[
    ("g (1,1),(1,1),(1,1)", "0", false, || g(2, 2, "1,1", "1,1", "1,1")),
    ("g (2,2),(2,2),(2,2)", "1", false, || g(2, 2, "2,2", "2,2", "2,2")),
    ("g (6,4,4,1),(12,3),(5,4,3,3)", "4", false, || g(2, 4, "6,4,4,1", "12,3", "5,4,3,3")),
    ("g (57^3,33^3,10),(140^2),(70^4)", "391", true, || {
        g(2, 4, "57,57,57,33,33,33,10", "140,140", "70,70,70,70")
    }),
    ("g (1^4),(2,2),(2,2) at (2,4)", "1", false, || g(2, 4, "1,1,1,1", "2,2", "2,2")),
    ("atomic (12,7,4,1),(12,12),(12,12) at (2,2)", "32", false, || {
        atomic(2, 2, "12,7,4,1", "12,12", "12,12")
    }),
    ("atomic (12,7,4,1),(12,12),(12,12) at (2,3)", "8793", false, || {
        atomic(2, 3, "12,7,4,1", "12,12", "12,12")
    }),
    ("nonzero terms (87,87,24),(99,99),(66,66,66)", "288", true, || {
        let e = KronEngine::new(2, 3).map_err(|e| e.to_string())?;
        let r = e
            .kronecker(&t(2, 3, "87,87,24", "99,99", "66,66,66")?)
            .map_err(|e| e.to_string())?;
        Ok(r.nonzero_terms.to_string())
    }),
    ("matrix (2,3)", "3x11", false, || shape(2, 3)),
    ("matrix (2,4)", "4x21", false, || shape(2, 4)),
    ("matrix (3,3)", "4x30", false, || shape(3, 3)),
    ("degree of p_A at (2,3)", "8", false, || {
        Ok(vpf_polynomial_degree(&build_matrix(2, 3).map_err(|e| e.to_string())?).to_string())
    }),
    ("degree of p_A at (2,4)", "17", false, || {
        Ok(vpf_polynomial_degree(&build_matrix(2, 4).map_err(|e| e.to_string())?).to_string())
    }),
    ("stable (mu, nu) for (10,8,5,3,2,2)", "18,12 | 18,7,5", false, || {
        let l = parse_partition("10,8,5,3,2,2", 6).map_err(|e| e.to_string())?;
        let (mu, nu) = stable_mu_nu(&l, 2, 3).map_err(|e| e.to_string())?;
        Ok(format!("{} | {}", trimmed(mu.nonzero()), trimmed(nu.nonzero())))
    }),
    ("stability sequence k = 0..6", "2566,18028,36174,43896,44638,44713,44729", true, || {
        let e = KronEngine::new(2, 3).map_err(|e| e.to_string())?;
        let seq = e
            .stability_sequence(
                &t(2, 3, "34,27,20,12,4,3", "70,30", "43,39,18")?,
                &t(2, 3, "10,8,5,3,2,2", "18,12", "18,7,5")?,
                6,
            )
            .map_err(|e| e.to_string())?;
        Ok(seq.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","))
    }),
    ("rank condition at (2,2), (2,3), (3,3)", "true", false, || {
        Ok((verify_rank_condition(2, 2) && verify_rank_condition(2, 3) && verify_rank_condition(3, 3))
            .to_string())
    }),
    ("Ressayre (1,3) predicts zero, g is", "1", false, || {
        let x = t(2, 4, "1,1,1,1", "2,2", "2,2")?;
        let r = ressayre_check(&x.lambda, &x.mu, &x.nu, 1, 3);
        if !r.predicts_zero {
            return Ok("no prediction".into());
        }
        g(2, 4, "1,1,1,1", "2,2", "2,2")
    }),
    ("bound factorial-binomial", "1.42e16", false, || bound(LABEL_FACTORIAL)),
    ("bound size-only", "5.38e45", false, || bound(LABEL_N_ONLY)),
    ("bound pak-panova-1", "2.84e27", false, || bound(LABEL_PP1)),
    ("bound pak-panova-2", "1.13e54", false, || bound(LABEL_PP2)),
    ("smallest bound", LABEL_FACTORIAL, false, || {
        let r = compare_bounds(&t(3, 3, "15,15,15,10,10,10,10,10,5", "35,35,30", "40,30,30")?)
            .map_err(|e| e.to_string())?;
        Ok(r.best)
    }),
    ("feasible set (2,2) contains the 7 contributing terms", "true", false, || {
        let set = feasible_sigma_set(2, 2, true).map_err(|e| e.to_string())?;
        let names: Vec<String> = set.iter().map(Permutation::to_string).collect();
        Ok(SEVEN.iter().all(|p| names.iter().any(|q| q == p)).to_string())
    }),
    ("feasible set (2,3) with size equality", "482", true, || {
        Ok(feasible_sigma_set(2, 3, true).map_err(|e| e.to_string())?.len().to_string())
    }),
    ("poset (2,2): elements covered by 1234", "1243,1324,2134", false, || {
        let perms: Vec<Permutation> = SEVEN
            .iter()
            .map(|p| Permutation::parse(p))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        let poset = build_sigma_poset(2, 2, Some(&perms)).map_err(|e| e.to_string())?;
        Ok(poset.covered_by(&Permutation::identity(4)).join(","))
    }),
];

const SEVEN: [&str; 7] = ["1234", "1324", "2134", "1243", "1342", "2143", "3124"];

pub fn run_all(quick: bool) -> Vec<Row> {
    CHECKS
        .iter()
        .filter(|(_, _, slow, _)| !(quick && *slow))
        .map(|(name, expected, _, f)| {
            let start = Instant::now();
            let found = f().unwrap_or_else(|e| format!("error: {e}"));
            Row {
                name: name.to_string(),
                expected: expected.to_string(),
                pass: found == *expected,
                found,
                wall_ms: start.elapsed().as_millis() as u64,
            }
        })
        .collect()
}

pub fn render(rows: &[Row]) -> String {
    let w = rows.iter().map(|r| r.name.len()).max().unwrap_or(0);
    let mut out = String::new();
    for r in rows {
        let status = if r.pass { "PASS" } else { "FAIL" };
        out.push_str(&format!("{status}  {:<w$}  expected {}  found {}\n", r.name, r.expected, r.found));
    }
    let passed = rows.iter().filter(|r| r.pass).count();
    out.push_str(&format!("{passed}/{} checks passed\n", rows.len()));
    out
}
